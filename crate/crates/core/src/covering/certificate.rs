use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::essential_elements;
use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation, SubgroupHandle};
use crate::structure::group_is_nilpotent;

/// A claimed covering of `group` by proper subgroups.
#[derive(Clone, Debug)]
pub struct CoveringCertificate {
    pub group: Arc<PermGroup>,
    pub members: Vec<SubgroupHandle>,
    pub size: usize,
    pub all_nilpotent: bool,
    /// Claims `size = σ(group)`; verification then checks pairwise generation.
    pub minimal: bool,
}

/// Serializable form of a [`CoveringCertificate`]; permutations in cycle notation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDocument {
    pub degree: usize,
    pub group: Vec<String>,
    pub size: usize,
    pub all_nilpotent: bool,
    pub minimal: bool,
    pub members: Vec<MemberDocument>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MemberDocument {
    pub order: u128,
    pub generators: Vec<String>,
}

fn strings(gs: &[Permutation]) -> Vec<String> {
    gs.iter().map(|g| g.to_string()).collect()
}

impl CoveringCertificate {
    pub fn to_document(&self) -> CertificateDocument {
        CertificateDocument {
            degree: self.group.degree(),
            group: strings(self.group.generators()),
            size: self.size,
            all_nilpotent: self.all_nilpotent,
            minimal: self.minimal,
            members: self
                .members
                .iter()
                .map(|m| MemberDocument {
                    order: m.order(),
                    generators: strings(m.generators()),
                })
                .collect(),
        }
    }

    /// Rebuilds a certificate; member generators must lie in the group.
    pub fn from_document(doc: &CertificateDocument) -> Result<Self> {
        let parse = |gs: &[String]| {
            gs.iter()
                .map(|g| Permutation::from_cycles(g, doc.degree))
                .collect::<Result<Vec<_>>>()
        };
        let group = Arc::new(PermGroup::new(doc.degree, parse(&doc.group)?)?);
        let members = doc
            .members
            .iter()
            .map(|m| SubgroupHandle::generated(&group, parse(&m.generators)?))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            group,
            members,
            size: doc.size,
            all_nilpotent: doc.all_nilpotent,
            minimal: doc.minimal,
        })
    }
}

/// Checks that every member is a proper subgroup of `g`, that the members cover `g`, that
/// the size and nilpotency flags are accurate, and, for a certificate claiming
/// minimality, that any two members generate `g`.
pub fn verify_certificate(g: &Arc<PermGroup>, cert: &CoveringCertificate) -> Result<bool> {
    let order = g.try_order()?;
    for m in &cert.members {
        for x in m.generators() {
            if !g.contains(x)? {
                return Err(Error::NotInGroup(x.to_string()));
            }
        }
    }
    if cert.size != cert.members.len() || cert.members.iter().any(|m| m.order() >= order) {
        return Ok(false);
    }
    let covered = essential_elements(g)?
        .iter()
        .all(|x| cert.members.iter().any(|m| m.contains(x)));
    if !covered {
        return Ok(false);
    }
    let mut all_nilpotent = true;
    for m in &cert.members {
        all_nilpotent &= group_is_nilpotent(m.group())?;
    }
    if all_nilpotent != cert.all_nilpotent {
        return Ok(false);
    }
    if cert.minimal {
        for (i, a) in cert.members.iter().enumerate() {
            for b in &cert.members[i + 1..] {
                let mut gens = a.generators().to_vec();
                gens.extend_from_slice(b.generators());
                if PermGroup::new(g.degree(), gens)?.try_order()? != order {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
