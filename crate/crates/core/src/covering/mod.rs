//! Covering numbers and nilpotent coverings.
//!
//! A covering member can always be enlarged to a maximal (resp. maximal nilpotent)
//! subgroup without losing coverage, so optimal coverings are searched among the
//! conjugates of those classes only. An element lies in a subgroup iff some generator of
//! a maximal cyclic subgroup above it does, so only one generator per maximal cyclic
//! subgroup has to be covered.

mod certificate;
mod setcover;

use std::sync::Arc;

pub use certificate::{verify_certificate, CertificateDocument, CoveringCertificate, MemberDocument};
pub use setcover::min_set_cover;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::numtheory::prime_divisors;
use crate::perm::{PermGroup, Permutation, SubgroupHandle, ELEMENT_LIMIT};
use crate::structure::{cmp_sets, subgroup_set, Analyzer, Ctx, ElemSet, LatticeKind, SubgroupClassList};

/// Least-index generators of the maximal cyclic subgroups, in table order.
pub(crate) fn essential_indices(ctx: &Ctx) -> Vec<usize> {
    let t = &ctx.t;
    let n = ctx.n();
    // Each cyclic subgroup is named by its least-index generator.
    let mut name = vec![usize::MAX; n];
    for x in 0..n {
        if name[x] != usize::MAX {
            continue;
        }
        let ord = t.order_of(x) as u64;
        for (k, y) in t.cyclic(x).into_iter().enumerate() {
            if crate::numtheory::gcd(k as u64, ord) == 1 {
                name[y] = x;
            }
        }
    }
    let mut below_other = vec![false; n];
    for y in 0..n {
        if name[y] != y {
            continue;
        }
        for r in prime_divisors(t.order_of(y) as u128) {
            below_other[name[t.pow(y, r as u64)]] = true;
        }
    }
    (0..n).filter(|&x| name[x] == x && !below_other[x]).collect()
}

/// One generator for each maximal cyclic subgroup of `g`.
pub fn essential_elements(g: &Arc<PermGroup>) -> Result<Vec<Permutation>> {
    let ctx = Ctx::new(g, ELEMENT_LIMIT, "essential elements")?;
    Ok(essential_indices(&ctx).into_iter().map(|x| ctx.t.perm(x)).collect())
}

fn check_noncyclic(g: &PermGroup) -> Result<()> {
    if g.is_cyclic()? {
        return Err(Error::CyclicGroup);
    }
    Ok(())
}

/// Minimum cover of the essential elements by conjugates of the classes in `pool`.
fn solve(pool: &SubgroupClassList) -> Result<Vec<ElemSet>> {
    let ctx = &pool.ctx;
    let universe = essential_indices(ctx);
    let mut candidates: Vec<ElemSet> = Vec::new();
    for i in 0..pool.len() {
        candidates.extend(pool.conjugate_sets(i));
    }
    let coverage: Vec<FixedBitSet> = candidates
        .iter()
        .map(|c| {
            let mut b = FixedBitSet::with_capacity(universe.len());
            for (j, &x) in universe.iter().enumerate() {
                if c.contains(x) {
                    b.insert(j);
                }
            }
            b
        })
        .collect();
    let picked = min_set_cover(universe.len(), &coverage)
        .ok_or_else(|| Error::Unsupported("candidate pool does not cover the group".into()))?;
    let mut members: Vec<ElemSet> = picked.into_iter().map(|i| candidates[i].clone()).collect();
    members.sort_by(|a, b| {
        a.count_ones(..)
            .cmp(&b.count_ones(..))
            .then_with(|| cmp_sets(a, b))
    });
    Ok(members)
}

fn certificate(ctx: &Ctx, members: &[ElemSet], minimal: bool) -> CoveringCertificate {
    CoveringCertificate {
        group: ctx.group.clone(),
        members: members.iter().map(|s| ctx.handle(s)).collect(),
        size: members.len(),
        all_nilpotent: members.iter().all(|s| ctx.is_nilpotent_set(s)),
        minimal,
    }
}

/// `σ(G)` with a witnessing minimal covering.
pub fn sigma(g: &Arc<PermGroup>) -> Result<(usize, CoveringCertificate)> {
    sigma_with(&Analyzer::new(), g)
}

pub fn sigma_with(an: &Analyzer, g: &Arc<PermGroup>) -> Result<(usize, CoveringCertificate)> {
    check_noncyclic(g)?;
    let pool = an.maximal_subgroups(g)?;
    let members = solve(&pool)?;
    Ok((members.len(), certificate(&pool.ctx, &members, true)))
}

fn nilpotent_pool(an: &Analyzer, g: &Arc<PermGroup>) -> Result<SubgroupClassList> {
    let ctx = Ctx::new(g, an.max_order(), "subgroup lattice")?;
    if ctx.is_nilpotent_set(&ctx.whole()) {
        an.maximal_subgroups(g)
    } else {
        Ok(an.lattice(g, LatticeKind::Nilpotent)?.maximal())
    }
}

/// Smallest covering all of whose members are nilpotent. The certificate is not flagged
/// minimal; see [`has_nilpotent_minimal_covering`].
pub fn min_nilpotent_cover(g: &Arc<PermGroup>) -> Result<(usize, CoveringCertificate)> {
    min_nilpotent_cover_with(&Analyzer::new(), g)
}

pub fn min_nilpotent_cover_with(
    an: &Analyzer,
    g: &Arc<PermGroup>,
) -> Result<(usize, CoveringCertificate)> {
    check_noncyclic(g)?;
    let pool = nilpotent_pool(an, g)?;
    let members = solve(&pool)?;
    Ok((members.len(), certificate(&pool.ctx, &members, false)))
}

/// Both optima and the comparison between them.
#[derive(Clone, Debug)]
pub struct NilpotentVerdict {
    pub sigma: CoveringCertificate,
    pub nilpotent: CoveringCertificate,
}

impl NilpotentVerdict {
    pub fn has_nilpotent_minimal_covering(&self) -> bool {
        self.sigma.size == self.nilpotent.size
    }

    /// The nilpotent optimum, flagged minimal, when it is a minimal covering.
    pub fn witness(&self) -> Option<CoveringCertificate> {
        self.has_nilpotent_minimal_covering().then(|| CoveringCertificate {
            minimal: true,
            ..self.nilpotent.clone()
        })
    }
}

pub fn nilpotent_verdict_with(an: &Analyzer, g: &Arc<PermGroup>) -> Result<NilpotentVerdict> {
    let (_, sigma) = sigma_with(an, g)?;
    let (_, nilpotent) = min_nilpotent_cover_with(an, g)?;
    Ok(NilpotentVerdict { sigma, nilpotent })
}

/// Whether some minimal covering of `g` consists of nilpotent subgroups, with one when so.
pub fn has_nilpotent_minimal_covering(
    g: &Arc<PermGroup>,
) -> Result<(bool, Option<CoveringCertificate>)> {
    let v = nilpotent_verdict_with(&Analyzer::new(), g)?;
    Ok((v.has_nilpotent_minimal_covering(), v.witness()))
}

/// True iff the union of all conjugates of the proper subgroup `h` misses some element.
pub fn conjugate_union_is_proper(g: &Arc<PermGroup>, h: &SubgroupHandle) -> Result<bool> {
    let ctx = Ctx::new(g, ELEMENT_LIMIT, "conjugate union")?;
    let (set, _) = subgroup_set(&ctx, h.group())?;
    if set.count_ones(..) == ctx.n() {
        return Err(Error::NotProper);
    }
    let mut union = ctx.empty();
    for c in ctx.conjugates(&set) {
        union.union_with(&c);
    }
    Ok(union.count_ones(..) < ctx.n())
}
