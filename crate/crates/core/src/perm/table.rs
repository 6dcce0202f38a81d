use super::chain::StabChain;
use super::Permutation;

const MAX_BASE: usize = 32;

/// All elements of a group, indexed by their mixed-radix position in the stabilizer chain.
///
/// Index arithmetic only touches base images, so `mul` costs a few table lookups rather
/// than a full composition and hash.
pub struct ElementTable {
    degree: usize,
    len: usize,
    base: Vec<usize>,
    stride: Vec<usize>,
    /// Per level: point → orbit position, `u32::MAX` off the orbit.
    pos: Vec<Vec<u32>>,
    /// Per level: inverse transversal images, flattened as `[position * degree + point]`.
    inv_rep: Vec<Vec<u8>>,
    images: Vec<u8>,
    inverse: Vec<u32>,
    orders: Vec<u32>,
}

impl ElementTable {
    pub(crate) fn new(chain: &StabChain) -> Self {
        let degree = chain.degree();
        assert!(degree <= 256, "element tables store points as bytes");
        let levels = &chain.levels;
        assert!(levels.len() <= MAX_BASE);
        let len = levels.iter().map(|l| l.orbit.len()).product::<usize>();
        let mut stride = vec![1usize; levels.len()];
        for l in (0..levels.len().saturating_sub(1)).rev() {
            stride[l] = stride[l + 1] * levels[l + 1].orbit.len();
        }
        let pos = levels
            .iter()
            .map(|l| {
                let mut v = vec![u32::MAX; degree];
                for (i, &p) in l.orbit.iter().enumerate() {
                    v[p] = i as u32;
                }
                v
            })
            .collect();
        let inv_rep = levels
            .iter()
            .map(|l| {
                l.orbit
                    .iter()
                    .flat_map(|&p| {
                        l.inv_reps[p]
                            .as_ref()
                            .unwrap()
                            .images()
                            .iter()
                            .map(|&x| x as u8)
                            .collect::<Vec<_>>()
                    })
                    .collect()
            })
            .collect();
        let mut table = ElementTable {
            degree,
            len,
            base: chain.base(),
            stride,
            pos,
            inv_rep,
            images: Vec::with_capacity(len * degree),
            inverse: Vec::new(),
            orders: Vec::new(),
        };
        for i in 0..len {
            let g = Self::element_from_chain(chain, i);
            table.images.extend(g.images().iter().map(|&x| x as u8));
        }
        table.inverse = (0..len)
            .map(|i| table.index_of_unchecked(&table.perm(i).inverse()) as u32)
            .collect();
        table.orders = (0..len).map(|i| table.perm(i).order() as u32).collect();
        table
    }

    pub(crate) fn element_from_chain(chain: &StabChain, index: usize) -> Permutation {
        let levels = &chain.levels;
        let mut rem = index;
        let mut digits = vec![0usize; levels.len()];
        for l in (0..levels.len()).rev() {
            let r = levels[l].orbit.len();
            digits[l] = rem % r;
            rem /= r;
        }
        let mut acc = Permutation::identity(chain.degree());
        for l in (0..levels.len()).rev() {
            let p = levels[l].orbit[digits[l]];
            acc = acc.compose(levels[l].reps[p].as_ref().unwrap());
        }
        acc
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    #[inline]
    pub fn images(&self, i: usize) -> &[u8] {
        &self.images[i * self.degree..(i + 1) * self.degree]
    }

    pub fn perm(&self, i: usize) -> Permutation {
        Permutation::from_images_unchecked(self.images(i).iter().map(|&x| x as u32).collect())
    }

    #[inline]
    fn index_from_base_images(&self, cur: &mut [u32]) -> Option<usize> {
        let k = self.base.len();
        let mut idx = 0usize;
        for l in 0..k {
            let d = self.pos[l][cur[l] as usize];
            if d == u32::MAX {
                return None;
            }
            idx += d as usize * self.stride[l];
            let inv = &self.inv_rep[l][d as usize * self.degree..(d as usize + 1) * self.degree];
            for c in cur.iter_mut().take(k).skip(l + 1) {
                *c = inv[*c as usize] as u32;
            }
        }
        Some(idx)
    }

    fn index_of_unchecked(&self, g: &Permutation) -> usize {
        let mut cur = [0u32; MAX_BASE];
        for (c, &b) in cur.iter_mut().zip(&self.base) {
            *c = g.image(b) as u32;
        }
        self.index_from_base_images(&mut cur).expect("member")
    }

    /// Index of `g`, or `None` when `g` is not an element.
    pub fn index_of(&self, g: &Permutation) -> Option<usize> {
        if g.degree() != self.degree {
            return None;
        }
        let mut cur = [0u32; MAX_BASE];
        for (c, &b) in cur.iter_mut().zip(&self.base) {
            *c = g.image(b) as u32;
        }
        let idx = self.index_from_base_images(&mut cur)?;
        self.images(idx)
            .iter()
            .zip(g.images())
            .all(|(&a, &b)| a as u32 == b)
            .then_some(idx)
    }

    /// Index of `a · b` (apply `a`, then `b`).
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        let ia = self.images(a);
        let ib = self.images(b);
        let mut cur = [0u32; MAX_BASE];
        for (c, &beta) in cur.iter_mut().zip(&self.base) {
            *c = ib[ia[beta] as usize] as u32;
        }
        self.index_from_base_images(&mut cur).expect("closed")
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    /// Index of `g⁻¹ a g`.
    #[inline]
    pub fn conj(&self, a: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), a), g)
    }

    pub fn pow(&self, a: usize, e: u64) -> usize {
        let mut acc = 0;
        let mut sq = a;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, sq);
            }
            sq = self.mul(sq, sq);
            e >>= 1;
        }
        acc
    }

    #[inline]
    pub fn order_of(&self, a: usize) -> u32 {
        self.orders[a]
    }

    pub fn commute(&self, a: usize, b: usize) -> bool {
        let ia = self.images(a);
        let ib = self.images(b);
        ia.iter()
            .zip(ib)
            .all(|(&x, &y)| ib[x as usize] == ia[y as usize])
    }

    /// Elements of `⟨a⟩` in power order, starting from the identity.
    pub fn cyclic(&self, a: usize) -> Vec<usize> {
        let mut out = vec![0];
        let mut x = a;
        while x != 0 {
            out.push(x);
            x = self.mul(x, a);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::PermGroup;

    #[test]
    fn index_arithmetic_matches_composition() {
        let n = 7;
        let gens = vec![
            Permutation::from_cycles("(0,1,2,3,4,5,6)", n).unwrap(),
            Permutation::from_cycles("(0,1)(2,5)", n).unwrap(),
        ];
        let g = PermGroup::new(n, gens).unwrap();
        let t = g.table().unwrap();
        assert_eq!(t.len() as u128, g.order());
        assert!(t.perm(0).is_identity());
        for a in (0..t.len()).step_by(37) {
            assert_eq!(t.index_of(&t.perm(a)), Some(a));
            assert_eq!(t.mul(a, t.inv(a)), 0);
            for b in (0..t.len()).step_by(53) {
                let ab = t.perm(a).compose(&t.perm(b));
                assert_eq!(t.perm(t.mul(a, b)), ab);
                assert_eq!(t.commute(a, b), t.perm(a).commutes_with(&t.perm(b)));
            }
            assert_eq!(t.cyclic(a).len() as u32, t.order_of(a));
        }
        let odd = Permutation::from_cycles("(0,1)", n).unwrap();
        assert_eq!(t.index_of(&odd), None);
    }
}
