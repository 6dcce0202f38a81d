use std::fmt;
use std::sync::{Arc, OnceLock};

use super::chain::StabChain;
use super::table::ElementTable;
use super::Permutation;
use crate::error::{Error, Result};

/// Largest supported permutation degree.
pub const DEGREE_CAP: usize = 256;
/// Largest group order for which elements are listed explicitly.
pub const ELEMENT_LIMIT: u128 = 1_000_000;

/// A permutation group given by generators. The stabilizer chain and the element table
/// are built on first use and never change afterwards.
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: OnceLock<StabChain>,
    table: OnceLock<Arc<ElementTable>>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if degree > DEGREE_CAP {
            return Err(Error::DegreeTooLarge {
                degree,
                cap: DEGREE_CAP,
            });
        }
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch {
                expected: degree,
                found: g.degree(),
            });
        }
        Ok(Self {
            degree,
            generators,
            chain: OnceLock::new(),
            table: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        Self::new(degree, Vec::new()).expect("empty generator list")
    }

    /// Parses a group file: a `degree N` line followed by one generator per line in cycle
    /// notation. Blank lines and lines starting with `#` are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| Error::GroupFile("missing degree line".into()))?;
        let degree: usize = header
            .strip_prefix("degree")
            .map(str::trim)
            .and_then(|n| n.parse().ok())
            .ok_or_else(|| Error::GroupFile(format!("bad degree line {header:?}")))?;
        let gens = lines
            .map(|l| Permutation::from_cycles(l, degree))
            .collect::<Result<Vec<_>>>()?;
        Self::new(degree, gens)
    }

    /// Renders the group in the group-file format read by [`PermGroup::parse`].
    pub fn to_file_string(&self) -> String {
        let mut out = format!("degree {}\n", self.degree);
        for g in &self.generators {
            out.push_str(&g.to_string());
            out.push('\n');
        }
        out
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub fn chain(&self) -> &StabChain {
        self.chain
            .get_or_init(|| StabChain::build(self.degree, &self.generators))
    }

    pub fn try_order(&self) -> Result<u128> {
        self.chain().order()
    }

    /// Exact group order.
    ///
    /// Panics if the order does not fit in 128 bits (symmetric groups of degree above 34);
    /// use [`PermGroup::try_order`] for such inputs.
    pub fn order(&self) -> u128 {
        self.try_order().expect("group order overflows u128")
    }

    pub fn contains(&self, g: &Permutation) -> Result<bool> {
        self.check_degree(g)?;
        Ok(self.chain().contains(g))
    }

    pub(crate) fn contains_unchecked(&self, g: &Permutation) -> bool {
        self.chain().contains(g)
    }

    pub(crate) fn check_degree(&self, g: &Permutation) -> Result<()> {
        if g.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: g.degree(),
            });
        }
        Ok(())
    }

    /// Indexed element table under the default listing bound, built once.
    pub fn table(&self) -> Result<&Arc<ElementTable>> {
        if let Some(t) = self.table.get() {
            return Ok(t);
        }
        let order = self.try_order()?;
        if order > ELEMENT_LIMIT {
            return Err(Error::BoundExceeded {
                what: "element listing",
                order,
                bound: ELEMENT_LIMIT,
            });
        }
        Ok(self
            .table
            .get_or_init(|| Arc::new(ElementTable::new(self.chain()))))
    }

    /// Every element exactly once, in the chain's mixed-radix order (identity first).
    pub fn elements(&self) -> Result<impl Iterator<Item = Permutation> + '_> {
        self.elements_with_limit(ELEMENT_LIMIT)
    }

    pub fn elements_with_limit(
        &self,
        limit: u128,
    ) -> Result<impl Iterator<Item = Permutation> + '_> {
        let order = self.try_order()?;
        if order > limit {
            return Err(Error::BoundExceeded {
                what: "element listing",
                order,
                bound: limit,
            });
        }
        let chain = self.chain();
        Ok((0..order as usize).map(move |i| ElementTable::element_from_chain(chain, i)))
    }

    /// True when every generator of `self` lies in `other`.
    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree
            && self.generators.iter().all(|g| other.contains_unchecked(g))
    }

    /// Subgroup identity by element set: mutual containment of generators.
    pub fn same_elements(&self, other: &PermGroup) -> bool {
        self.is_subgroup_of(other) && other.is_subgroup_of(self)
    }

    pub fn is_cyclic(&self) -> Result<bool> {
        let order = self.try_order()?;
        if order == 1 {
            return Ok(true);
        }
        if self.generators.len() == 1 {
            return Ok(true);
        }
        let table = self.table()?;
        Ok((0..table.len()).any(|i| table.order_of(i) as u128 == order))
    }
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        let chain = OnceLock::new();
        if let Some(c) = self.chain.get() {
            let _ = chain.set(c.clone());
        }
        let table = OnceLock::new();
        if let Some(t) = self.table.get() {
            let _ = table.set(t.clone());
        }
        Self {
            degree: self.degree,
            generators: self.generators.clone(),
            chain,
            table,
        }
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("generators", &self.generators)
            .finish()
    }
}

/// A subgroup of a fixed parent, carried by its own generators.
#[derive(Clone)]
pub struct SubgroupHandle {
    parent: Arc<PermGroup>,
    group: Arc<PermGroup>,
}

impl SubgroupHandle {
    /// The closure of `elems` inside `parent`.
    pub fn generated(parent: &Arc<PermGroup>, elems: Vec<Permutation>) -> Result<Self> {
        for g in &elems {
            if !parent.contains(g)? {
                return Err(Error::NotInGroup(g.to_string()));
            }
        }
        let group = PermGroup::new(parent.degree(), elems)?;
        group.chain();
        Ok(Self {
            parent: parent.clone(),
            group: Arc::new(group),
        })
    }

    pub(crate) fn from_trusted(parent: &Arc<PermGroup>, elems: Vec<Permutation>) -> Self {
        let group = PermGroup::new(parent.degree(), elems).expect("degree checked");
        Self {
            parent: parent.clone(),
            group: Arc::new(group),
        }
    }

    pub fn whole(parent: &Arc<PermGroup>) -> Self {
        Self {
            parent: parent.clone(),
            group: parent.clone(),
        }
    }

    pub fn trivial(parent: &Arc<PermGroup>) -> Self {
        Self::from_trusted(parent, Vec::new())
    }

    pub fn parent(&self) -> &Arc<PermGroup> {
        &self.parent
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn generators(&self) -> &[Permutation] {
        self.group.generators()
    }

    pub fn order(&self) -> u128 {
        self.group.order()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.group.degree() && self.group.contains_unchecked(g)
    }

    pub fn is_proper(&self) -> bool {
        self.order() < self.parent.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    /// `g⁻¹ H g`.
    pub fn conjugate(&self, g: &Permutation) -> Result<Self> {
        if !self.parent.contains(g)? {
            return Err(Error::NotInGroup(g.to_string()));
        }
        let gens = self.generators().iter().map(|h| h.conjugate_by(g)).collect();
        Ok(Self::from_trusted(&self.parent, gens))
    }

    pub fn same_subgroup(&self, other: &SubgroupHandle) -> bool {
        self.group.same_elements(&other.group)
    }

    pub fn contains_subgroup(&self, other: &SubgroupHandle) -> bool {
        other.generators().iter().all(|g| self.contains(g))
    }
}

impl fmt::Debug for SubgroupHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SubgroupHandle")
            .field("order", &self.order())
            .field("generators", &self.generators())
            .finish()
    }
}

/// `⟨elems⟩` as a subgroup handle of `parent`.
pub fn generated_subgroup(
    parent: &Arc<PermGroup>,
    elems: Vec<Permutation>,
) -> Result<SubgroupHandle> {
    SubgroupHandle::generated(parent, elems)
}
