//! Small named permutation groups used as test and roster instances.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};

fn cycle_on(points: &[usize], degree: usize) -> Permutation {
    let mut images: Vec<u32> = (0..degree as u32).collect();
    for (i, &p) in points.iter().enumerate() {
        images[p] = points[(i + 1) % points.len()] as u32;
    }
    Permutation::from_images(images).expect("cycle")
}

pub fn symmetric(n: usize) -> Arc<PermGroup> {
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(cycle_on(&(0..n).collect::<Vec<_>>(), n));
        gens.push(cycle_on(&[0, 1], n));
    }
    Arc::new(PermGroup::new(n.max(1), gens).expect("valid"))
}

pub fn alternating(n: usize) -> Arc<PermGroup> {
    let mut gens = Vec::new();
    if n >= 3 {
        // (0,1,2) with an (n-1)- or n-cycle, whichever is even.
        let long: Vec<usize> = if n % 2 == 1 { (0..n).collect() } else { (1..n).collect() };
        gens.push(cycle_on(&long, n));
        gens.push(cycle_on(&[0, 1, 2], n));
    }
    Arc::new(PermGroup::new(n.max(1), gens).expect("valid"))
}

pub fn cyclic(n: usize) -> Arc<PermGroup> {
    let gens = if n >= 2 { vec![cycle_on(&(0..n).collect::<Vec<_>>(), n)] } else { vec![] };
    Arc::new(PermGroup::new(n.max(1), gens).expect("valid"))
}

/// Dihedral group of the given order (`2m`), acting on `m` points.
pub fn dihedral(order: usize) -> Result<Arc<PermGroup>> {
    if order < 4 || order % 2 == 1 {
        return Err(Error::InvalidInstance {
            text: format!("dihedral:{order}"),
            reason: "order must be even and at least 4".into(),
        });
    }
    let m = order / 2;
    let rot = cycle_on(&(0..m).collect::<Vec<_>>(), m);
    let refl = Permutation::from_images((0..m).map(|i| ((m - i) % m) as u32).collect())?;
    Ok(Arc::new(PermGroup::new(m, vec![rot, refl])?))
}

/// Quaternion group of order 8 in its regular action on 8 points.
pub fn quaternion() -> Arc<PermGroup> {
    let i = Permutation::from_cycles("(0,2,1,3)(4,6,5,7)", 8).expect("valid");
    let j = Permutation::from_cycles("(0,4,1,5)(2,7,3,6)", 8).expect("valid");
    Arc::new(PermGroup::new(8, vec![i, j]).expect("valid"))
}

/// Direct product of cyclic groups of the given orders on disjoint point sets.
pub fn abelian(orders: &[usize]) -> Result<Arc<PermGroup>> {
    if orders.contains(&0) {
        return Err(Error::InvalidInstance {
            text: format!("{orders:?}"),
            reason: "factor orders must be positive".into(),
        });
    }
    let degree: usize = orders.iter().sum::<usize>().max(1);
    let mut gens = Vec::new();
    let mut start = 0;
    for &o in orders {
        if o >= 2 {
            gens.push(cycle_on(&(start..start + o).collect::<Vec<_>>(), degree));
        }
        start += o;
    }
    Ok(Arc::new(PermGroup::new(degree, gens)?))
}
