//! Conjugacy classes of subgroups.
//!
//! Every subgroup is generated by the cyclic subgroups of prime-power order it contains,
//! so joining known class representatives with one such cyclic subgroup at a time,
//! starting from the trivial group, reaches every class. Only one cyclic subgroup per
//! orbit of the representative's normalizer needs to be tried. Restricting the joins to
//! nilpotent results enumerates the nilpotent subgroups alone, since every intermediate
//! join inside a nilpotent group is again nilpotent.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::ctx::{cmp_sets, Ctx, ElemSet};
use crate::error::{Error, Result};
use crate::numtheory::{is_prime_power_of, p_part, prime_divisors};
use crate::perm::{PermGroup, Permutation, SubgroupHandle};

/// Default largest group order for lattice enumeration.
pub const LATTICE_BOUND: u128 = 20_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LatticeKind {
    /// Every subgroup.
    All,
    /// Nilpotent subgroups only.
    Nilpotent,
}

impl LatticeKind {
    pub fn tag(self) -> &'static str {
        match self {
            LatticeKind::All => "lattice",
            LatticeKind::Nilpotent => "nilpotent-lattice",
        }
    }
}

/// One conjugacy class of subgroups.
#[derive(Clone, Debug)]
pub struct SubgroupClass {
    /// The conjugate whose sorted element-index list is lexicographically least.
    pub representative: SubgroupHandle,
    pub order: u128,
    /// Number of conjugates.
    pub size: u128,
    /// For [`LatticeKind::All`]: a maximal subgroup. For [`LatticeKind::Nilpotent`]:
    /// maximal among nilpotent subgroups.
    pub maximal: bool,
    pub(crate) elements: ElemSet,
}

/// Conjugacy classes of subgroups of `parent`, ordered by (order, least element list).
#[derive(Clone)]
pub struct SubgroupClassList {
    pub(crate) ctx: Ctx,
    kind: LatticeKind,
    classes: Vec<SubgroupClass>,
}

impl SubgroupClassList {
    pub fn parent(&self) -> &Arc<PermGroup> {
        &self.ctx.group
    }

    pub fn kind(&self) -> LatticeKind {
        self.kind
    }

    pub fn classes(&self) -> &[SubgroupClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn orders(&self) -> Vec<u128> {
        self.classes.iter().map(|c| c.order).collect()
    }

    /// Total number of subgroups in all listed classes.
    pub fn subgroup_count(&self) -> u128 {
        self.classes.iter().map(|c| c.size).sum()
    }

    /// The classes flagged maximal, excluding the whole group for [`LatticeKind::All`].
    pub fn maximal(&self) -> SubgroupClassList {
        let n = self.ctx.n() as u128;
        let classes = self
            .classes
            .iter()
            .filter(|c| c.maximal && (self.kind == LatticeKind::Nilpotent || c.order < n))
            .cloned()
            .collect();
        SubgroupClassList {
            ctx: self.ctx.clone(),
            kind: self.kind,
            classes,
        }
    }

    pub(crate) fn conjugate_sets(&self, class: usize) -> Vec<ElemSet> {
        let mut cs = self.ctx.conjugates(&self.classes[class].elements);
        cs.sort_by(cmp_sets);
        cs
    }

    /// Every conjugate of class `class`, in order of their sorted element lists.
    pub fn conjugates(&self, class: usize) -> Vec<SubgroupHandle> {
        self.conjugate_sets(class)
            .iter()
            .map(|s| self.ctx.handle(s))
            .collect()
    }

    /// Index of the class containing a conjugate of `h`, if any.
    pub fn class_of(&self, h: &SubgroupHandle) -> Result<Option<usize>> {
        let gens = self.ctx.indices(h.generators())?;
        let set = self.ctx.closure(&gens);
        let order = set.count_ones(..) as u128;
        for (i, c) in self.classes.iter().enumerate() {
            if c.order == order && self.ctx.conjugates(&c.elements).contains(&set) {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    fn to_cache(&self) -> CachedLattice {
        CachedLattice {
            version: CACHE_VERSION,
            kind: self.kind,
            classes: self
                .classes
                .iter()
                .map(|c| CachedClass {
                    generators: c
                        .representative
                        .generators()
                        .iter()
                        .map(|g| g.to_string())
                        .collect(),
                    order: c.order,
                    size: c.size,
                    maximal: c.maximal,
                })
                .collect(),
        }
    }

    fn from_cache(ctx: &Ctx, kind: LatticeKind, cached: CachedLattice) -> Result<Self> {
        let bad = |why: &str| Error::GroupFile(format!("cached lattice rejected: {why}"));
        if cached.version != CACHE_VERSION || cached.kind != kind {
            return Err(bad("version or kind mismatch"));
        }
        let mut classes = Vec::with_capacity(cached.classes.len());
        for c in cached.classes {
            let gens = c
                .generators
                .iter()
                .map(|g| Permutation::from_cycles(g, ctx.group.degree()))
                .collect::<Result<Vec<_>>>()?;
            let idx = ctx.indices(&gens)?;
            let elements = ctx.closure(&idx);
            if elements.count_ones(..) as u128 != c.order {
                return Err(bad("representative order mismatch"));
            }
            classes.push(SubgroupClass {
                representative: ctx.handle(&elements),
                order: c.order,
                size: c.size,
                maximal: c.maximal,
                elements,
            });
        }
        Ok(Self {
            ctx: ctx.clone(),
            kind,
            classes,
        })
    }
}

impl std::fmt::Debug for SubgroupClassList {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SubgroupClassList")
            .field("kind", &self.kind)
            .field("orders", &self.orders())
            .finish()
    }
}

const CACHE_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct CachedLattice {
    version: u32,
    kind: LatticeKind,
    classes: Vec<CachedClass>,
}

#[derive(Serialize, Deserialize)]
struct CachedClass {
    generators: Vec<String>,
    order: u128,
    size: u128,
    maximal: bool,
}

/// Cyclic subgroups of prime-power order > 1, each named by its least-index generator.
struct Zuppos {
    gens: Vec<usize>,
    /// Element → zuppo it generates, `usize::MAX` for elements of non-prime-power order.
    of: Vec<usize>,
}

impl Zuppos {
    fn new(ctx: &Ctx) -> Self {
        let t = &ctx.t;
        let mut of = vec![usize::MAX; ctx.n()];
        let mut gens = Vec::new();
        for x in 1..ctx.n() {
            let ord = t.order_of(x) as u128;
            if of[x] != usize::MAX || prime_divisors(ord).len() != 1 {
                continue;
            }
            let id = gens.len();
            gens.push(x);
            for (k, y) in t.cyclic(x).into_iter().enumerate() {
                if !(k as u128).is_multiple_of(prime_divisors(ord)[0]) {
                    of[y] = id;
                }
            }
        }
        Self { gens, of }
    }

    /// One zuppo per orbit of `⟨acting⟩`, skipping those inside `inside`.
    fn orbit_reps(&self, ctx: &Ctx, acting: &[usize], inside: &ElemSet) -> Vec<usize> {
        let mut done = vec![false; self.gens.len()];
        let mut reps = Vec::new();
        for z in 0..self.gens.len() {
            if done[z] {
                continue;
            }
            done[z] = true;
            let mut stack = vec![z];
            while let Some(y) = stack.pop() {
                for &a in acting {
                    let w = self.of[ctx.t.conj(self.gens[y], a)];
                    if !done[w] {
                        done[w] = true;
                        stack.push(w);
                    }
                }
            }
            if !inside.contains(self.gens[z]) {
                reps.push(z);
            }
        }
        reps
    }
}

struct Builder<'a> {
    ctx: &'a Ctx,
    kind: LatticeKind,
    zuppos: Zuppos,
    seen: HashMap<ElemSet, usize>,
    /// (elements, generators, class size, maximal)
    found: Vec<(ElemSet, Vec<usize>, u128, bool)>,
}

impl Builder<'_> {
    fn register(&mut self, set: ElemSet, gens: Vec<usize>) {
        let conjugates = self.ctx.conjugates(&set);
        let size = conjugates.len() as u128;
        let id = self.found.len();
        let least = conjugates
            .iter()
            .min_by(|a, b| cmp_sets(a, b))
            .expect("nonempty")
            .clone();
        for c in conjugates {
            self.seen.insert(c, id);
        }
        let gens = if least == set {
            gens
        } else {
            self.ctx.greedy_gens(&least)
        };
        self.found.push((least, gens, size, true));
    }

    fn join_all(&self, set: &ElemSet, gens: &[usize], z: usize) -> Option<ElemSet> {
        self.ctx
            .extend_bounded(set, gens, &[z], usize::MAX, |_| true)
    }

    /// `⟨H, z⟩` if it is nilpotent, for nilpotent `H` and a `p`-element `z`: `z` must
    /// centralize the `p'`-part of `H` and generate a `p`-group with the `p`-part.
    fn join_nilpotent(&self, set: &ElemSet, z: usize) -> Option<ElemSet> {
        let ctx = self.ctx;
        let t = &ctx.t;
        let p = prime_divisors(t.order_of(z) as u128)[0];
        let hp: Vec<usize> = set.ones().filter(|&x| ctx.is_p_element(x, p)).collect();
        let hq: Vec<usize> = set
            .ones()
            .filter(|&x| !(t.order_of(x) as u128).is_multiple_of(p))
            .collect();
        if !hq.iter().all(|&x| t.commute(x, z)) {
            return None;
        }
        let mut pset = ctx.empty();
        hp.iter().for_each(|&x| pset.insert(x));
        let pgens = ctx.greedy_gens(&pset);
        let bound = p_part(ctx.n() as u128, p) as usize;
        let p_join = ctx.extend_bounded(&pset, &pgens, &[z], bound, |x| {
            is_prime_power_of(t.order_of(x) as u128, p)
        })?;
        let mut out = ctx.empty();
        for a in p_join.ones() {
            for &b in &hq {
                out.insert(t.mul(a, b));
            }
        }
        Some(out)
    }

    fn run(mut self) -> Vec<(ElemSet, Vec<usize>, u128, bool)> {
        let mut trivial = self.ctx.empty();
        trivial.insert(0);
        self.register(trivial, Vec::new());
        let mut i = 0;
        while i < self.found.len() {
            let (set, gens) = (self.found[i].0.clone(), self.found[i].1.clone());
            let norm = self.ctx.normalizer_set(&set, &gens);
            let norm_gens = self.ctx.greedy_gens(&norm);
            let mut maximal = true;
            for z in self.zuppos.orbit_reps(self.ctx, &norm_gens, &set) {
                let zg = self.zuppos.gens[z];
                let joined = match self.kind {
                    LatticeKind::All => self.join_all(&set, &gens, zg),
                    LatticeKind::Nilpotent => self.join_nilpotent(&set, zg),
                };
                let Some(joined) = joined else { continue };
                if self.kind == LatticeKind::All && joined.count_ones(..) < self.ctx.n() {
                    maximal = false;
                }
                if self.kind == LatticeKind::Nilpotent {
                    maximal = false;
                }
                if !self.seen.contains_key(&joined) {
                    let mut jg = gens.clone();
                    jg.push(zg);
                    let jg = if self.kind == LatticeKind::All {
                        jg
                    } else {
                        self.ctx.greedy_gens(&joined)
                    };
                    self.register(joined, jg);
                }
            }
            self.found[i].3 = maximal;
            i += 1;
        }
        self.found
    }
}

fn build(ctx: &Ctx, kind: LatticeKind) -> SubgroupClassList {
    let builder = Builder {
        ctx,
        kind,
        zuppos: Zuppos::new(ctx),
        seen: HashMap::new(),
        found: Vec::new(),
    };
    let mut found = builder.run();
    found.sort_by(|a, b| {
        a.0.count_ones(..)
            .cmp(&b.0.count_ones(..))
            .then_with(|| cmp_sets(&a.0, &b.0))
    });
    let classes = found
        .into_iter()
        .map(|(elements, _, size, maximal)| SubgroupClass {
            representative: ctx.handle(&elements),
            order: elements.count_ones(..) as u128,
            size,
            maximal,
            elements,
        })
        .collect();
    SubgroupClassList {
        ctx: ctx.clone(),
        kind,
        classes,
    }
}

/// Key under which a lattice is cached: the group's degree and generators plus a tag.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticeKey {
    pub degree: usize,
    pub generators: Vec<String>,
    pub tag: String,
}

/// Persistent storage for computed lattices. Payloads are opaque JSON strings.
pub trait LatticeStore: Send + Sync {
    fn load(&self, key: &LatticeKey) -> Option<String>;
    fn save(&self, key: &LatticeKey, payload: &str);
}

/// Memoizing front end for lattice computations, optionally backed by a [`LatticeStore`].
pub struct Analyzer {
    max_order: u128,
    store: Option<Arc<dyn LatticeStore>>,
    memo: std::sync::Mutex<HashMap<(String, LatticeKind), Arc<SubgroupClassList>>>,
}

impl Default for Analyzer {
    fn default() -> Self {
        Self::new()
    }
}

impl Analyzer {
    pub fn new() -> Self {
        Self {
            max_order: LATTICE_BOUND,
            store: None,
            memo: Default::default(),
        }
    }

    pub fn with_store(mut self, store: Arc<dyn LatticeStore>) -> Self {
        self.store = Some(store);
        self
    }

    pub fn with_max_order(mut self, max_order: u128) -> Self {
        self.max_order = max_order;
        self
    }

    pub fn max_order(&self) -> u128 {
        self.max_order
    }

    pub fn lattice(&self, g: &Arc<PermGroup>, kind: LatticeKind) -> Result<Arc<SubgroupClassList>> {
        let memo_key = (g.to_file_string(), kind);
        if let Some(l) = self.memo.lock().expect("memo lock").get(&memo_key) {
            return Ok(l.clone());
        }
        let ctx = Ctx::new(g, self.max_order, "subgroup lattice")?;
        let key = LatticeKey {
            degree: g.degree(),
            generators: g.generators().iter().map(|x| x.to_string()).collect(),
            tag: kind.tag().to_string(),
        };
        let cached = self.store.as_ref().and_then(|s| s.load(&key)).and_then(|payload| {
            let parsed: CachedLattice = serde_json::from_str(&payload).ok()?;
            SubgroupClassList::from_cache(&ctx, kind, parsed).ok()
        });
        let list = match cached {
            Some(l) => l,
            None => {
                let l = build(&ctx, kind);
                if let Some(store) = &self.store {
                    let payload = serde_json::to_string(&l.to_cache()).expect("serializable");
                    store.save(&key, &payload);
                }
                l
            }
        };
        let list = Arc::new(list);
        self.memo
            .lock()
            .expect("memo lock")
            .insert(memo_key, list.clone());
        Ok(list)
    }

    pub fn subgroups_up_to_conjugacy(&self, g: &Arc<PermGroup>) -> Result<Arc<SubgroupClassList>> {
        self.lattice(g, LatticeKind::All)
    }

    pub fn maximal_subgroups(&self, g: &Arc<PermGroup>) -> Result<SubgroupClassList> {
        Ok(self.lattice(g, LatticeKind::All)?.maximal())
    }

    pub fn maximal_nilpotent_subgroups(&self, g: &Arc<PermGroup>) -> Result<SubgroupClassList> {
        Ok(self.lattice(g, LatticeKind::Nilpotent)?.maximal())
    }
}

pub fn subgroups_up_to_conjugacy(g: &Arc<PermGroup>) -> Result<SubgroupClassList> {
    let ctx = Ctx::new(g, LATTICE_BOUND, "subgroup lattice")?;
    Ok(build(&ctx, LatticeKind::All))
}

pub fn maximal_subgroups(g: &Arc<PermGroup>) -> Result<SubgroupClassList> {
    Ok(subgroups_up_to_conjugacy(g)?.maximal())
}

pub fn nilpotent_subgroups_up_to_conjugacy(g: &Arc<PermGroup>) -> Result<SubgroupClassList> {
    let ctx = Ctx::new(g, LATTICE_BOUND, "subgroup lattice")?;
    Ok(build(&ctx, LatticeKind::Nilpotent))
}

pub fn maximal_nilpotent_subgroups(g: &Arc<PermGroup>) -> Result<SubgroupClassList> {
    Ok(nilpotent_subgroups_up_to_conjugacy(g)?.maximal())
}
