use std::fmt;

use crate::error::{Error, Result};
use crate::numtheory::lcm;

/// A bijection on the points `0..degree`, stored as a dense image array.
///
/// Products act on the right: `a.compose(&b)` applies `a` first, then `b`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Self {
            images: (0..degree as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let degree = images.len();
        let mut seen = vec![false; degree];
        for &p in &images {
            let p = p as usize;
            if p >= degree {
                return Err(Error::PointOutOfRange { point: p, degree });
            }
            if seen[p] {
                return Err(Error::RepeatedPoint(p));
            }
            seen[p] = true;
        }
        Ok(Self { images })
    }

    /// Caller guarantees `images` is a bijection.
    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Self::from_images(images.clone()).is_ok());
        Self { images }
    }

    /// Parses a product of disjoint cycles such as `(0,1,2)(3,4)`. Whitespace is ignored;
    /// the empty string and `()` both denote the identity.
    pub fn from_cycles(text: &str, degree: usize) -> Result<Self> {
        let malformed = |reason: &str| Error::MalformedPermutation {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| malformed("expected '('"))?;
            let close = body.find(')').ok_or_else(|| malformed("unclosed cycle"))?;
            let (inner, tail) = body.split_at(close);
            rest = &tail[1..];
            if inner.is_empty() {
                continue;
            }
            let mut cycle = Vec::new();
            for tok in inner.split(',') {
                let point: usize = tok
                    .parse()
                    .map_err(|_| malformed(&format!("bad point {tok:?}")))?;
                if point >= degree {
                    return Err(Error::PointOutOfRange { point, degree });
                }
                if used[point] {
                    return Err(Error::RepeatedPoint(point));
                }
                used[point] = true;
                cycle.push(point);
            }
            for (i, &p) in cycle.iter().enumerate() {
                images[p] = cycle[(i + 1) % cycle.len()] as u32;
            }
        }
        Ok(Self { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &p)| i as u32 == p)
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&p| other.images[p as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.images.len()];
        for (i, &p) in self.images.iter().enumerate() {
            images[p as usize] = i as u32;
        }
        Permutation { images }
    }

    pub fn pow(&self, exp: i64) -> Permutation {
        let base = if exp < 0 { self.inverse() } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&sq);
            }
            sq = sq.compose(&sq);
            e >>= 1;
        }
        acc
    }

    /// `g⁻¹ · self · g`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        let mut images = vec![0u32; self.images.len()];
        for (i, &p) in self.images.iter().enumerate() {
            images[g.images[i] as usize] = g.images[p as usize];
        }
        Permutation { images }
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        self.images
            .iter()
            .zip(other.images.iter())
            .all(|(&a, &b)| other.images[a as usize] == self.images[b as usize])
    }

    /// Smallest point not fixed, if any.
    pub fn first_moved(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|&(i, &p)| i as u32 != p)
            .map(|(i, _)| i)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.image(start) == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p);
                p = self.image(p);
            }
            out.push(cycle);
        }
        out
    }

    /// Least `k ≥ 1` with `self^k = 1`, the lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| lcm(acc, c.len() as u64))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (i, p) in c.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{p}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{{{}; {}}}", self.degree(), self)
    }
}

impl std::ops::Mul for &Permutation {
    type Output = Permutation;

    fn mul(self, rhs: &Permutation) -> Permutation {
        self.compose(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(text: &str, n: usize) -> Permutation {
        Permutation::from_cycles(text, n).unwrap()
    }

    #[test]
    fn transposition_images() {
        assert_eq!(p("(0,1)", 3).images(), &[1, 0, 2]);
    }

    #[test]
    fn empty_text_is_identity() {
        assert!(p("", 4).is_identity());
        assert!(p("()", 4).is_identity());
        assert_eq!(p("", 4).degree(), 4);
    }

    #[test]
    fn five_cycle_order() {
        assert_eq!(p("(0,1,2,3,4)", 5).order(), 5);
    }

    #[test]
    fn element_orders() {
        assert_eq!(Permutation::identity(7).order(), 1);
        assert_eq!(p("(0,1,2)(3,4)", 5).order(), 6);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            Permutation::from_cycles("(0,1", 3),
            Err(Error::MalformedPermutation { .. })
        ));
        assert!(matches!(
            Permutation::from_cycles("0,1)", 3),
            Err(Error::MalformedPermutation { .. })
        ));
        assert!(matches!(
            Permutation::from_cycles("(0,a)", 3),
            Err(Error::MalformedPermutation { .. })
        ));
        assert_eq!(
            Permutation::from_cycles("(0,1)(1,2)", 3),
            Err(Error::RepeatedPoint(1))
        );
        assert_eq!(
            Permutation::from_cycles("(0,3)", 3),
            Err(Error::PointOutOfRange { point: 3, degree: 3 })
        );
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
    }

    #[test]
    fn composition_acts_on_the_right() {
        let a = p("(0,1)", 3);
        let b = p("(1,2)", 3);
        // 0 -> 1 under a, then 1 -> 2 under b
        assert_eq!(a.compose(&b).image(0), 2);
        assert_eq!(&a * &b, a.compose(&b));
    }

    #[test]
    fn conjugation_relabels_cycles() {
        let h = p("(0,1,2)", 5);
        let g = p("(2,3,4)", 5);
        assert_eq!(h.conjugate_by(&g), p("(0,1,3)", 5));
        assert_eq!(h.conjugate_by(&g), g.inverse().compose(&h).compose(&g));
    }

    fn arb_perm(max_degree: usize) -> impl Strategy<Value = Permutation> {
        (1..=max_degree)
            .prop_flat_map(|n| Just((0..n as u32).collect::<Vec<_>>()).prop_shuffle())
            .prop_map(Permutation::from_images_unchecked)
    }

    proptest! {
        #[test]
        fn display_round_trips(g in arb_perm(40)) {
            let text = g.to_string();
            prop_assert_eq!(Permutation::from_cycles(&text, g.degree()).unwrap(), g);
        }

        #[test]
        fn inverse_cancels(g in arb_perm(40)) {
            prop_assert!(g.compose(&g.inverse()).is_identity());
            prop_assert!(g.inverse().compose(&g).is_identity());
        }

        #[test]
        fn order_annihilates(g in arb_perm(30)) {
            let k = g.order() as i64;
            prop_assert!(g.pow(k).is_identity());
            for d in 1..k.min(200) {
                if k % d == 0 && d < k {
                    prop_assert!(!g.pow(d).is_identity());
                }
            }
        }

        #[test]
        fn composition_is_associative(
            (a, b, c) in (1usize..20).prop_flat_map(|n| {
                let s = Just((0..n as u32).collect::<Vec<_>>()).prop_shuffle()
                    .prop_map(Permutation::from_images_unchecked);
                (s.clone(), s.clone(), s)
            })
        ) {
            prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
        }
    }
}
