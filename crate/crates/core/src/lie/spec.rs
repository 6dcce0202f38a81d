use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numtheory::{gcd, prime_power};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LieFamily {
    Psl2,
    Psl3,
    Psu3,
    Suzuki,
    Ree,
    Sp4,
    G2,
}

impl LieFamily {
    pub fn key(self) -> &'static str {
        match self {
            LieFamily::Psl2 => "psl2",
            LieFamily::Psl3 => "psl3",
            LieFamily::Psu3 => "psu3",
            LieFamily::Suzuki => "sz",
            LieFamily::Ree => "ree",
            LieFamily::Sp4 => "sp4",
            LieFamily::G2 => "g2",
        }
    }

    /// `(z, m)`: the exponent whose primitive prime divisors live in a cyclic maximal
    /// torus, and the dimension of the projective embedding carrying the Frobenius map.
    pub fn torus_exponents(self) -> Option<(u32, u32)> {
        match self {
            LieFamily::Psl2 => Some((2, 2)),
            LieFamily::Psu3 => Some((3, 3)),
            LieFamily::Suzuki => Some((4, 4)),
            LieFamily::Ree => Some((6, 8)),
            _ => None,
        }
    }
}

impl FromStr for LieFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "psl2" => LieFamily::Psl2,
            "psl3" => LieFamily::Psl3,
            "psu3" => LieFamily::Psu3,
            "sz" | "suzuki" => LieFamily::Suzuki,
            "ree" => LieFamily::Ree,
            "sp4" => LieFamily::Sp4,
            "g2" => LieFamily::G2,
            other => {
                return Err(Error::InvalidSpec {
                    text: s.to_string(),
                    reason: format!("unknown family {other:?}"),
                })
            }
        })
    }
}

impl fmt::Display for LieFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

/// A simple group of Lie type named by family and field size, with its derived constants.
///
/// For `Psu3` the field of definition has order `q² = p^f`; for the other families
/// `q = p^f`. Suzuki and Ree groups are written over the full field (`sz:8`, `ree:27`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LieFamilySpec {
    pub family: LieFamily,
    pub p: u64,
    pub f: u32,
    pub q: u64,
    pub d: u64,
    pub z: Option<u32>,
    pub m: Option<u32>,
}

impl LieFamilySpec {
    /// Derived constants for `family` over `q`, without the simplicity checks of
    /// [`parse_spec`]. Used by formula sweeps that range over every prime power.
    pub fn from_field_size(family: LieFamily, q: u64) -> Result<Self> {
        let (p, e) = prime_power(q).ok_or_else(|| Error::InvalidSpec {
            text: format!("{family}:{q}"),
            reason: format!("{q} is not a prime power"),
        })?;
        let f = if family == LieFamily::Psu3 { 2 * e } else { e };
        let d = match family {
            LieFamily::Psl2 | LieFamily::Sp4 => gcd(2, q - 1),
            LieFamily::Psl3 => gcd(3, q - 1),
            LieFamily::Psu3 => gcd(3, q + 1),
            LieFamily::Suzuki | LieFamily::Ree | LieFamily::G2 => 1,
        };
        let (z, m) = family.torus_exponents().unzip();
        Ok(Self {
            family,
            p,
            f,
            q,
            d,
            z,
            m,
        })
    }

    /// `"psl2:7"`-style name.
    pub fn name(&self) -> String {
        format!("{}:{}", self.family, self.q)
    }

    /// Number of Sylow `p`-subgroups in defining characteristic.
    pub fn np_count(&self) -> Result<u128> {
        let q = self.q as u128;
        match self.family {
            LieFamily::Psl2 => Ok(q + 1),
            LieFamily::Psl3 => Ok((q + 1) * (q * q + q + 1)),
            LieFamily::Psu3 => Ok(q * q * q + 1),
            other => Err(Error::Unsupported(format!(
                "no Sylow-count formula for family {other}"
            ))),
        }
    }

    pub fn out_order(&self) -> Result<u128> {
        let (d, f) = (self.d as u128, self.f as u128);
        match self.family {
            LieFamily::Psl2 | LieFamily::Psu3 => Ok(d * f),
            LieFamily::Psl3 => Ok(2 * d * f),
            LieFamily::Suzuki | LieFamily::Ree => Ok(f),
            other => Err(Error::Unsupported(format!(
                "no outer-automorphism formula for family {other}"
            ))),
        }
    }

    /// Orders of the cyclic maximal tori whose generators carry primitive prime divisors.
    pub fn torus_orders(&self) -> Result<Vec<u128>> {
        let (q, d) = (self.q as u128, self.d as u128);
        match self.family {
            LieFamily::Psl2 => Ok(vec![(q + 1) / d]),
            LieFamily::Psu3 => Ok(vec![(q * q - q + 1) / d]),
            LieFamily::Suzuki => {
                let r = isqrt(2 * q);
                Ok(vec![q + r + 1, q - r + 1])
            }
            LieFamily::Ree => {
                let r = isqrt(3 * q);
                Ok(vec![q + r + 1, q - r + 1])
            }
            other => Err(Error::Unsupported(format!(
                "no torus data for family {other}"
            ))),
        }
    }

    /// Order of the simple group.
    pub fn group_order(&self) -> Result<u128> {
        let q = self.q as u128;
        let d = self.d as u128;
        Ok(match self.family {
            LieFamily::Psl2 => q * (q * q - 1) / d,
            LieFamily::Psl3 => q.pow(3) * (q * q - 1) * (q.pow(3) - 1) / d,
            LieFamily::Psu3 => q.pow(3) * (q * q - 1) * (q.pow(3) + 1) / d,
            LieFamily::Suzuki => q * q * (q * q + 1) * (q - 1),
            LieFamily::Ree => q.pow(3) * (q.pow(3) + 1) * (q - 1),
            LieFamily::Sp4 => q.pow(4) * (q * q - 1) * (q.pow(4) - 1) / d,
            LieFamily::G2 => q.pow(6) * (q.pow(6) - 1) * (q * q - 1),
        })
    }
}

impl fmt::Display for LieFamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

fn isqrt(n: u128) -> u128 {
    let mut r = (n as f64).sqrt() as u128;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Parses `"family:q"` (e.g. `psl2:7`, `psu3:3`, `sz:8`, `ree:27`) and rejects field sizes
/// for which the group is not simple or the family is undefined.
pub fn parse_spec(text: &str) -> Result<LieFamilySpec> {
    let invalid = |reason: String| Error::InvalidSpec {
        text: text.to_string(),
        reason,
    };
    let (fam, q) = text
        .trim()
        .split_once(':')
        .ok_or_else(|| invalid("expected family:q".into()))?;
    let family: LieFamily = fam.parse()?;
    let q: u64 = q
        .parse()
        .map_err(|_| invalid(format!("bad field size {q:?}")))?;
    let spec = LieFamilySpec::from_field_size(family, q).map_err(|_| {
        invalid(format!("{q} is not a prime power"))
    })?;
    let not_simple = || invalid(format!("{} is not simple", spec.name()));
    match family {
        LieFamily::Psl2 if q < 4 => return Err(not_simple()),
        LieFamily::Psu3 if q < 3 => return Err(not_simple()),
        LieFamily::Suzuki => {
            if spec.p != 2 {
                return Err(invalid("Suzuki groups need q = 2^f".into()));
            }
            if spec.f % 2 == 0 {
                return Err(invalid("Suzuki groups need f odd".into()));
            }
            if spec.f < 3 {
                return Err(not_simple());
            }
        }
        LieFamily::Ree => {
            if spec.p != 3 {
                return Err(invalid("Ree groups need q = 3^f".into()));
            }
            if spec.f % 2 == 0 {
                return Err(invalid("Ree groups need f odd".into()));
            }
            if spec.f < 3 {
                return Err(not_simple());
            }
        }
        LieFamily::Sp4 => {
            if spec.p != 2 {
                return Err(invalid("only the characteristic-2 family sp4:2^f is supported".into()));
            }
            if spec.f < 2 {
                return Err(not_simple());
            }
        }
        LieFamily::G2 if q < 3 => return Err(not_simple()),
        _ => {}
    }
    Ok(spec)
}
