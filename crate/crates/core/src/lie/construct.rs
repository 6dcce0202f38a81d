use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::field::FiniteField;
use super::spec::{parse_spec, LieFamily, LieFamilySpec};
use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};

const SZ8_DATA: &str = include_str!("../../data/sz8.grp");
const PSU3_3_DATA: &str = include_str!("../../data/psu3_3.grp");

/// Automorphism layers that can be adjoined to a simple group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExtensionKind {
    /// Diagonal automorphisms (`PGL`).
    Diagonal,
    /// Field automorphisms.
    Field,
    /// The inverse-transpose graph automorphism of `PSL(3, q)`.
    Graph,
    /// The product of a diagonal and a field automorphism as a single generator.
    DiagonalField,
    /// Diagonal and field automorphisms together (`PΓL`).
    Full,
}

impl ExtensionKind {
    pub fn suffix(self) -> &'static str {
        match self {
            ExtensionKind::Diagonal => "pgl",
            ExtensionKind::Field => "field",
            ExtensionKind::Graph => "graph",
            ExtensionKind::DiagonalField => "diagfield",
            ExtensionKind::Full => "pgammal",
        }
    }
}

impl FromStr for ExtensionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "pgl" | "diagonal" => ExtensionKind::Diagonal,
            "field" => ExtensionKind::Field,
            "graph" => ExtensionKind::Graph,
            "diagfield" | "diagonal+field" => ExtensionKind::DiagonalField,
            "pgammal" | "full" => ExtensionKind::Full,
            other => return Err(Error::Unsupported(format!("extension kind {other:?}"))),
        })
    }
}

impl fmt::Display for ExtensionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.suffix())
    }
}

/// A group `G` with simple normal subgroup `socle`, both acting on the same points.
#[derive(Clone, Debug)]
pub struct AlmostSimple {
    pub name: String,
    pub spec: LieFamilySpec,
    pub extension: Option<ExtensionKind>,
    pub group: Arc<PermGroup>,
    pub socle: Arc<PermGroup>,
}

impl AlmostSimple {
    pub fn index(&self) -> u128 {
        self.group.order() / self.socle.order()
    }
}

/// Permutation model of the simple group named by `spec`.
pub fn construct(spec: &LieFamilySpec) -> Result<Arc<PermGroup>> {
    let unsupported = || Error::Unsupported(format!("no permutation model for {}", spec.name()));
    let group = match spec.family {
        LieFamily::Psl2 if spec.q <= 32 => {
            let lg = ProjectiveLine::new(spec.q)?;
            PermGroup::new(lg.degree(), lg.psl_generators())?
        }
        LieFamily::Psl3 if spec.q <= 4 => {
            let plane = ProjectivePlane::new(spec.q)?;
            PermGroup::new(plane.points.len(), plane.sl_generators(false))?
        }
        LieFamily::Psu3 if spec.q == 3 => PermGroup::parse(PSU3_3_DATA)?,
        LieFamily::Suzuki if spec.q == 8 => PermGroup::parse(SZ8_DATA)?,
        _ => return Err(unsupported()),
    };
    check_order(&group, spec.group_order()?, &spec.name())?;
    Ok(Arc::new(group))
}

/// `construct(spec)` extended by the automorphisms of `kind`, acting on a common domain.
pub fn extend(spec: &LieFamilySpec, kind: ExtensionKind) -> Result<AlmostSimple> {
    let unsupported = || {
        Error::Unsupported(format!(
            "extension {kind} of {} is not available",
            spec.name()
        ))
    };
    let (socle, group, index) = match spec.family {
        LieFamily::Psl2 if spec.q <= 32 => {
            let line = ProjectiveLine::new(spec.q)?;
            let socle_gens = line.psl_generators();
            let extra = match kind {
                ExtensionKind::Diagonal if spec.d == 2 => vec![line.diagonal()],
                ExtensionKind::Field if spec.f > 1 => vec![line.frobenius()],
                ExtensionKind::DiagonalField if spec.d == 2 && spec.f > 1 => {
                    vec![line.diagonal().compose(&line.frobenius())]
                }
                ExtensionKind::Full if spec.d == 2 || spec.f > 1 => {
                    vec![line.diagonal(), line.frobenius()]
                }
                _ => return Err(unsupported()),
            };
            let index = match kind {
                ExtensionKind::Diagonal => spec.d,
                ExtensionKind::Field => spec.f as u64,
                ExtensionKind::DiagonalField => 2,
                _ => spec.d * spec.f as u64,
            };
            let mut gens = socle_gens.clone();
            gens.extend(extra);
            (
                PermGroup::new(line.degree(), socle_gens)?,
                PermGroup::new(line.degree(), gens)?,
                index,
            )
        }
        LieFamily::Psl3 if spec.q <= 4 && kind == ExtensionKind::Graph => {
            let plane = ProjectivePlane::new(spec.q)?;
            let socle_gens = plane.sl_generators(true);
            let mut gens = socle_gens.clone();
            gens.push(plane.duality());
            let degree = 2 * plane.points.len();
            (
                PermGroup::new(degree, socle_gens)?,
                PermGroup::new(degree, gens)?,
                2,
            )
        }
        _ => return Err(unsupported()),
    };
    let name = format!("{}.{}", spec.name(), kind.suffix());
    let simple_order = spec.group_order()?;
    check_order(&socle, simple_order, &spec.name())?;
    check_order(&group, simple_order * index as u128, &name)?;
    Ok(AlmostSimple {
        name,
        spec: *spec,
        extension: Some(kind),
        group: Arc::new(group),
        socle: Arc::new(socle),
    })
}

/// Parses `family:q` with an optional `.kind` suffix, e.g. `psl2:9.pgammal` or
/// `psl3:2.graph`.
pub fn build_instance(text: &str) -> Result<AlmostSimple> {
    let text = text.trim();
    let (base, suffix) = match text.split_once('.') {
        Some((b, s)) => (b, Some(s)),
        None => (text, None),
    };
    let spec = parse_spec(base)?;
    match suffix {
        Some(s) => extend(&spec, s.parse()?),
        None => {
            let g = construct(&spec)?;
            Ok(AlmostSimple {
                name: spec.name(),
                spec,
                extension: None,
                group: g.clone(),
                socle: g,
            })
        }
    }
}

fn check_order(group: &PermGroup, expected: u128, name: &str) -> Result<()> {
    let found = group.try_order()?;
    if found != expected {
        return Err(Error::GroupFile(format!(
            "model of {name} has order {found}, expected {expected}"
        )));
    }
    Ok(())
}

/// `GF(q)` acting on the projective line; point `x` is `(1 : x)` and point `q` is `∞`.
struct ProjectiveLine {
    field: FiniteField,
}

impl ProjectiveLine {
    fn new(q: u64) -> Result<Self> {
        Ok(Self {
            field: FiniteField::new(q as u32)?,
        })
    }

    fn degree(&self) -> usize {
        self.field.order() as usize + 1
    }

    /// Action of the row-vector map `v ↦ vM` for `M = [[a, b], [c, d]]`.
    fn matrix(&self, [a, b, c, d]: [u32; 4]) -> Permutation {
        let k = &self.field;
        let inf = k.order();
        let point = |x: u32, y: u32| if x == 0 { inf } else { k.mul(y, k.inv(x)) };
        let mut images: Vec<u32> = (0..inf)
            .map(|x| point(k.add(a, k.mul(x, c)), k.add(b, k.mul(x, d))))
            .collect();
        images.push(point(c, d));
        Permutation::from_images(images).expect("invertible matrix")
    }

    fn psl_generators(&self) -> Vec<Permutation> {
        let k = &self.field;
        let w = k.primitive();
        let mut gens: Vec<Permutation> = k.basis().into_iter().map(|t| self.matrix([1, t, 0, 1])).collect();
        gens.push(self.matrix([w, 0, 0, k.inv(w)]));
        gens.push(self.matrix([0, 1, k.neg(1), 0]));
        gens.retain(|g| !g.is_identity());
        gens
    }

    fn diagonal(&self) -> Permutation {
        self.matrix([self.field.primitive(), 0, 0, 1])
    }

    fn frobenius(&self) -> Permutation {
        let k = &self.field;
        let mut images: Vec<u32> = (0..k.order()).map(|x| k.frobenius(x)).collect();
        images.push(k.order());
        Permutation::from_images(images).expect("field automorphism")
    }
}

/// Points of `PG(2, q)` as normalized row vectors (first nonzero coordinate 1).
struct ProjectivePlane {
    field: FiniteField,
    points: Vec<[u32; 3]>,
    index: HashMap<[u32; 3], usize>,
}

impl ProjectivePlane {
    fn new(q: u64) -> Result<Self> {
        let field = FiniteField::new(q as u32)?;
        let q = q as u32;
        let mut points = Vec::new();
        for a in 0..q {
            for b in 0..q {
                points.push([1, a, b]);
            }
        }
        for b in 0..q {
            points.push([0, 1, b]);
        }
        points.push([0, 0, 1]);
        let index = points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        Ok(Self {
            field,
            points,
            index,
        })
    }

    fn normalize(&self, v: [u32; 3]) -> usize {
        let k = &self.field;
        let lead = *v.iter().find(|&&x| x != 0).expect("nonzero vector");
        let s = k.inv(lead);
        self.index[&v.map(|x| k.mul(x, s))]
    }

    fn dot(&self, u: &[u32; 3], v: &[u32; 3]) -> u32 {
        let k = &self.field;
        (0..3).fold(0, |acc, i| k.add(acc, k.mul(u[i], v[i])))
    }

    /// Point action of `v ↦ vM`; with `lines`, also the induced action on lines, line `i`
    /// being the set of points orthogonal to point `i`'s vector.
    fn matrix(&self, m: &[[u32; 3]; 3], lines: bool) -> Permutation {
        let k = &self.field;
        let n = self.points.len();
        let pt: Vec<usize> = self
            .points
            .iter()
            .map(|v| {
                let mut w = [0u32; 3];
                for (j, wj) in w.iter_mut().enumerate() {
                    *wj = (0..3).fold(0, |acc, i| k.add(acc, k.mul(v[i], m[i][j])));
                }
                self.normalize(w)
            })
            .collect();
        let mut images: Vec<u32> = pt.iter().map(|&x| x as u32).collect();
        if lines {
            let line_of: HashMap<Vec<usize>, usize> =
                (0..n).map(|l| (self.line_points(l), l)).collect();
            for l in 0..n {
                let mut img: Vec<usize> = self.line_points(l).iter().map(|&x| pt[x]).collect();
                img.sort_unstable();
                images.push((n + line_of[&img]) as u32);
            }
        }
        Permutation::from_images(images).expect("invertible matrix")
    }

    fn line_points(&self, l: usize) -> Vec<usize> {
        let u = &self.points[l];
        (0..self.points.len())
            .filter(|&x| self.dot(u, &self.points[x]) == 0)
            .collect()
    }

    /// Elementary transvections `I + a·E_ij`, `a` running over an additive basis.
    fn sl_generators(&self, lines: bool) -> Vec<Permutation> {
        let mut gens = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                if i == j {
                    continue;
                }
                for a in self.field.basis() {
                    let mut m = [[0u32; 3]; 3];
                    for (t, row) in m.iter_mut().enumerate() {
                        row[t] = 1;
                    }
                    m[i][j] = a;
                    gens.push(self.matrix(&m, lines));
                }
            }
        }
        gens
    }

    /// Swaps point `i` with line `i`: the polarity induced by the standard dot product.
    fn duality(&self) -> Permutation {
        let n = self.points.len() as u32;
        let images = (0..n).map(|i| i + n).chain(0..n).collect();
        Permutation::from_images(images).expect("involution")
    }
}
