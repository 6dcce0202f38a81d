use std::sync::Arc;

use super::ctx::{Ctx, ElemSet};
use crate::error::{Error, Result};
use crate::numtheory::{p_part, prime_divisors};
use crate::perm::{PermGroup, Permutation, SubgroupHandle, ELEMENT_LIMIT};

/// Largest order for which centralizers and normalizers are found by filtering every element.
pub const FILTER_LIMIT: u128 = 100_000;

fn filter_ctx(g: &Arc<PermGroup>, what: &'static str) -> Result<Ctx> {
    Ctx::new(g, FILTER_LIMIT, what)
}

/// Elements of `sub` as a set over `ctx`'s table; errors if `sub` is not inside it.
pub(crate) fn subgroup_set(ctx: &Ctx, sub: &PermGroup) -> Result<(ElemSet, Vec<usize>)> {
    let gens = ctx.indices(sub.generators())?;
    Ok((ctx.closure(&gens), gens))
}

/// `C_G(g)`.
pub fn centralizer(g: &Arc<PermGroup>, x: &Permutation) -> Result<SubgroupHandle> {
    g.check_degree(x)?;
    let ctx = filter_ctx(g, "centralizer")?;
    let a = ctx.index(x)?;
    Ok(ctx.handle(&ctx.centralizer_set(a)))
}

/// `N_G(H)`; `H` must lie in `G`.
pub fn normalizer(g: &Arc<PermGroup>, h: &SubgroupHandle) -> Result<SubgroupHandle> {
    let ctx = filter_ctx(g, "normalizer")?;
    let (set, gens) = subgroup_set(&ctx, h.group())?;
    Ok(ctx.handle(&ctx.normalizer_set(&set, &gens)))
}

/// A Sylow `p`-subgroup grown from the trivial group: at each step some `p`-element of the
/// normalizer outside the current `p`-subgroup is adjoined (the least by table index).
pub(crate) fn sylow_set(ctx: &Ctx, p: u128) -> ElemSet {
    let target = p_part(ctx.n() as u128, p) as usize;
    let mut set = ctx.empty();
    set.insert(0);
    let mut gens: Vec<usize> = Vec::new();
    while set.count_ones(..) < target {
        let norm = ctx.normalizer_set(&set, &gens);
        let x = norm
            .ones()
            .find(|&x| !set.contains(x) && ctx.is_p_element(x, p))
            .expect("a p-subgroup below the Sylow order has a p-element in its normalizer");
        set = ctx
            .extend_bounded(&set, &gens, &[x], usize::MAX, |_| true)
            .expect("unbounded");
        gens.push(x);
    }
    set
}

pub fn sylow(g: &Arc<PermGroup>, p: u64) -> Result<SubgroupHandle> {
    let ctx = filter_ctx(g, "sylow subgroup")?;
    Ok(ctx.handle(&sylow_set(&ctx, p as u128)))
}

/// Number of Sylow `p`-subgroups, `|G : N_G(P)|`.
pub fn sylow_count(g: &Arc<PermGroup>, p: u64) -> Result<u128> {
    let ctx = filter_ctx(g, "sylow count")?;
    Ok(sylow_count_in(&ctx, p as u128))
}

pub(crate) fn sylow_count_in(ctx: &Ctx, p: u128) -> u128 {
    let set = sylow_set(ctx, p);
    let gens = ctx.greedy_gens(&set);
    let norm = ctx.normalizer_set(&set, &gens);
    (ctx.n() / norm.count_ones(..)) as u128
}

/// True iff every Sylow subgroup of `h` is normal in `h`.
pub fn is_nilpotent(h: &SubgroupHandle) -> Result<bool> {
    group_is_nilpotent(h.group())
}

pub fn group_is_nilpotent(g: &Arc<PermGroup>) -> Result<bool> {
    let ctx = Ctx::new(g, ELEMENT_LIMIT, "nilpotency test")?;
    Ok(ctx.is_nilpotent_set(&ctx.whole()))
}

/// `[a, b] = a⁻¹ b⁻¹ a b`.
fn commutator(a: &Permutation, b: &Permutation) -> Permutation {
    a.inverse().compose(&b.inverse()).compose(a).compose(b)
}

/// Normal closure of `elems` in the group generated by `ambient`.
fn normal_closure(degree: usize, ambient: &[Permutation], elems: Vec<Permutation>) -> PermGroup {
    let mut gens: Vec<Permutation> = elems.into_iter().filter(|g| !g.is_identity()).collect();
    let mut group = PermGroup::new(degree, gens.clone()).expect("degree checked");
    let mut i = 0;
    while i < gens.len() {
        for s in ambient {
            let c = gens[i].conjugate_by(s);
            if !group.contains_unchecked(&c) {
                gens.push(c);
                group = PermGroup::new(degree, gens.clone()).expect("degree checked");
            }
        }
        i += 1;
    }
    group
}

/// The commutator subgroup `[G, G]`.
pub fn derived_subgroup(g: &PermGroup) -> PermGroup {
    let gens = g.generators();
    let mut comms = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            comms.push(commutator(a, b));
        }
    }
    normal_closure(g.degree(), gens, comms)
}

/// True iff the derived series reaches the trivial group.
pub fn is_solvable(g: &PermGroup) -> Result<bool> {
    let mut cur = g.clone();
    let mut order = cur.try_order()?;
    while order > 1 {
        let next = derived_subgroup(&cur);
        let next_order = next.try_order()?;
        if next_order == order {
            return Ok(false);
        }
        cur = next;
        order = next_order;
    }
    Ok(true)
}

/// Nontrivial `p`-elements lying in exactly one Sylow `p`-subgroup, in table order,
/// at most `cap` of them.
pub fn unisylow_elements_capped(
    g: &Arc<PermGroup>,
    p: u64,
    cap: usize,
) -> Result<Vec<Permutation>> {
    let ctx = filter_ctx(g, "unisylow elements")?;
    let p = p as u128;
    if p_part(ctx.n() as u128, p) == 1 {
        return Ok(Vec::new());
    }
    let sylows = ctx.conjugates(&sylow_set(&ctx, p));
    let mut count = vec![0u32; ctx.n()];
    for s in &sylows {
        for x in s.ones() {
            count[x] += 1;
        }
    }
    Ok((1..ctx.n())
        .filter(|&x| count[x] == 1)
        .take(cap)
        .map(|x| ctx.t.perm(x))
        .collect())
}

pub fn unisylow_elements(g: &Arc<PermGroup>, p: u64) -> Result<Vec<Permutation>> {
    unisylow_elements_capped(g, p, usize::MAX)
}

/// Unisylow `p`-elements lying outside the derived subgroup `[U, U]` of their Sylow
/// subgroup `U`, in table order.
///
/// Lying in a unique Sylow subgroup does not single out the regular unipotent elements
/// when Sylow subgroups intersect trivially (as in `PSU(3, q)`, where the centre of `U`
/// qualifies too). For groups of twisted rank one the regular unipotent elements of `U`
/// are exactly those outside `[U, U]`.
pub fn regular_unipotent_elements(g: &Arc<PermGroup>, p: u64) -> Result<Vec<Permutation>> {
    let ctx = filter_ctx(g, "regular unipotent elements")?;
    let p = p as u128;
    if p_part(ctx.n() as u128, p) == 1 {
        return Ok(Vec::new());
    }
    let sylows = ctx.conjugates(&sylow_set(&ctx, p));
    let mut count = vec![0u32; ctx.n()];
    for s in &sylows {
        for x in s.ones() {
            count[x] += 1;
        }
    }
    let mut keep = ctx.empty();
    for s in &sylows {
        let u = ctx.handle(s);
        let derived = derived_subgroup(u.group());
        let (dset, _) = subgroup_set(&ctx, &derived)?;
        for x in s.ones() {
            if count[x] == 1 && !dset.contains(x) {
                keep.insert(x);
            }
        }
    }
    Ok(keep.ones().map(|x| ctx.t.perm(x)).collect())
}

/// Number of Sylow `p`-subgroups of `g` containing `x`.
pub fn sylows_containing(g: &Arc<PermGroup>, p: u64, x: &Permutation) -> Result<usize> {
    let ctx = filter_ctx(g, "sylow subgroups")?;
    let a = ctx.index(x)?;
    Ok(ctx
        .conjugates(&sylow_set(&ctx, p as u128))
        .iter()
        .filter(|s| s.contains(a))
        .count())
}

/// Maximality of `h` in `g` by generation: `h` is maximal iff `⟨h, x⟩ = g` for one `x`
/// from every right coset `hx ≠ h`. Needs no subgroup lattice.
pub fn is_maximal(g: &Arc<PermGroup>, h: &SubgroupHandle) -> Result<bool> {
    let order = g.try_order()?;
    let ctx = Ctx::new(g, ELEMENT_LIMIT, "maximality test")?;
    let (set, _) = subgroup_set(&ctx, h.group())?;
    let hs: Vec<usize> = set.ones().collect();
    if hs.len() as u128 == order {
        return Err(Error::NotProper);
    }
    let mut seen = set.clone();
    for x in 0..ctx.n() {
        if seen.contains(x) {
            continue;
        }
        let mut gens = h.generators().to_vec();
        gens.push(ctx.t.perm(x));
        if PermGroup::new(g.degree(), gens)?.try_order()? != order {
            return Ok(false);
        }
        for &y in &hs {
            seen.insert(ctx.t.mul(y, x));
        }
    }
    Ok(true)
}

/// Primes dividing `|G|`.
pub fn order_primes(g: &PermGroup) -> Result<Vec<u64>> {
    Ok(prime_divisors(g.try_order()?)
        .into_iter()
        .map(|p| p as u64)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{abelian, alternating, cyclic, symmetric};
    use crate::lie::{construct, extend, parse_spec, ExtensionKind};
    use crate::perm::perm_from_cycles;

    fn p(text: &str, n: usize) -> Permutation {
        perm_from_cycles(text, n).unwrap()
    }

    #[test]
    fn centralizer_examples() {
        let s5 = symmetric(5);
        let a5 = alternating(5);
        let c = centralizer(&s5, &p("(0,1,2,3,4)", 5)).unwrap();
        assert_eq!(c.order(), 5);
        assert!(c.generators().iter().all(|g| a5.contains(g).unwrap()));
        assert_eq!(centralizer(&a5, &Permutation::identity(5)).unwrap().order(), 60);
        assert_eq!(centralizer(&a5, &p("(0,1)(2,3)", 5)).unwrap().order(), 4);
        assert!(centralizer(&a5, &p("(0,1)", 5)).is_err());
    }

    #[test]
    fn normalizer_examples() {
        let a5 = alternating(5);
        let p5 = sylow(&a5, 5).unwrap();
        assert_eq!(normalizer(&a5, &p5).unwrap().order(), 10);
        assert_eq!(normalizer(&a5, &SubgroupHandle::whole(&a5)).unwrap().order(), 60);
        let l2_7 = construct(&parse_spec("psl2:7").unwrap()).unwrap();
        let p7 = sylow(&l2_7, 7).unwrap();
        assert_eq!(normalizer(&l2_7, &p7).unwrap().order(), 21);
    }

    #[test]
    fn sylow_orders_and_counts() {
        let a5 = alternating(5);
        assert_eq!(sylow(&a5, 5).unwrap().order(), 5);
        assert_eq!(sylow(&a5, 2).unwrap().order(), 4);
        assert_eq!(sylow(&a5, 7).unwrap().order(), 1);
        assert_eq!(sylow_count(&a5, 5).unwrap(), 6);
        assert_eq!(sylow_count(&a5, 2).unwrap(), 5);
        let u = construct(&parse_spec("psu3:3").unwrap()).unwrap();
        assert_eq!(sylow(&u, 3).unwrap().order(), 27);
    }

    #[test]
    fn nilpotency_examples() {
        assert!(group_is_nilpotent(&cyclic(12)).unwrap());
        assert!(!group_is_nilpotent(&symmetric(3)).unwrap());
        let s7 = symmetric(7);
        let h = SubgroupHandle::generated(&s7, vec![p("(0,1,2)", 7), p("(3,4,5,6)", 7)]).unwrap();
        assert!(is_nilpotent(&h).unwrap());
    }

    #[test]
    fn solvability_examples() {
        assert!(is_solvable(&symmetric(4)).unwrap());
        assert!(!is_solvable(&alternating(5)).unwrap());
        assert!(!is_solvable(&construct(&parse_spec("psl2:7").unwrap()).unwrap()).unwrap());
        assert!(is_solvable(&abelian(&[2, 6]).unwrap()).unwrap());
        assert_eq!(derived_subgroup(&symmetric(5)).order(), 60);
    }

    #[test]
    fn unisylow_examples() {
        let a5 = alternating(5);
        assert_eq!(unisylow_elements(&a5, 5).unwrap().len(), 24);
        let c6 = cyclic(6);
        let inv = unisylow_elements(&c6, 2).unwrap();
        assert_eq!(inv.len(), 1);
        assert_eq!(inv[0].order(), 2);
    }

    #[test]
    fn trivial_intersection_sylows_admit_central_unisylow_elements() {
        // Every nontrivial 3-element of PSU(3,3) lies in exactly one Sylow 3-subgroup,
        // including the centre of U, whose centralizer has order 108.
        let u = construct(&parse_spec("psu3:3").unwrap()).unwrap();
        let els = unisylow_elements(&u, 3).unwrap();
        assert_eq!(els.len(), 28 * 26);
        let orders: std::collections::BTreeSet<u128> = els
            .iter()
            .map(|x| centralizer(&u, x).unwrap().order())
            .collect();
        assert_eq!(orders.into_iter().collect::<Vec<_>>(), vec![9, 108]);
    }

    #[test]
    fn regular_unipotent_centralizers_are_p_groups() {
        for (spec, p, count) in [("psu3:3", 3u64, 28 * 24), ("psl2:7", 7, 48), ("psl2:4", 2, 15)] {
            let s = construct(&parse_spec(spec).unwrap()).unwrap();
            let els = regular_unipotent_elements(&s, p).unwrap();
            assert_eq!(els.len(), count, "{spec}");
            for x in &els {
                assert_eq!(sylows_containing(&s, p, x).unwrap(), 1);
                let c = centralizer(&s, x).unwrap().order();
                assert_eq!(p_part(c, p as u128), c, "{spec}: {x}");
            }
        }
    }

    #[test]
    fn maximality_by_generation() {
        let l = construct(&parse_spec("psl2:7").unwrap()).unwrap();
        let b = normalizer(&l, &sylow(&l, 7).unwrap()).unwrap();
        assert!(is_maximal(&l, &b).unwrap());
        let l3 = construct(&parse_spec("psl3:2").unwrap()).unwrap();
        let p2 = sylow(&l3, 2).unwrap();
        let b = normalizer(&l3, &p2).unwrap();
        assert_eq!(b.order(), 8);
        assert!(!is_maximal(&l3, &b).unwrap());
        let g = extend(&parse_spec("psl3:2").unwrap(), ExtensionKind::Graph).unwrap();
        let p2 = sylow(&g.socle, 2).unwrap();
        let p2 = SubgroupHandle::generated(&g.group, p2.generators().to_vec()).unwrap();
        let b = normalizer(&g.group, &p2).unwrap();
        assert_eq!(b.order(), 16);
        assert!(is_maximal(&g.group, &b).unwrap());
        let v4 = abelian(&[2, 2]).unwrap();
        assert!(!is_maximal(&symmetric(4), &SubgroupHandle::trivial(&symmetric(4))).unwrap());
        assert!(is_maximal(&v4, &SubgroupHandle::generated(&v4, vec![v4.generators()[0].clone()]).unwrap()).unwrap());
        assert_eq!(is_maximal(&v4, &SubgroupHandle::whole(&v4)), Err(Error::NotProper));
    }
}
