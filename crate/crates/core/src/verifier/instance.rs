use std::path::Path;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groups;
use crate::lie::{build_instance, LieFamilySpec};
use crate::perm::PermGroup;

/// A group named by a roster descriptor, with its simple socle when one is known.
#[derive(Clone, Debug)]
pub struct Instance {
    pub name: String,
    pub group: Arc<PermGroup>,
    pub socle: Option<Arc<PermGroup>>,
    pub spec: Option<LieFamilySpec>,
}

impl Instance {
    fn plain(name: &str, group: Arc<PermGroup>) -> Self {
        Self {
            name: name.to_string(),
            group,
            socle: None,
            spec: None,
        }
    }
}

/// Parses a descriptor: `sym:N`, `alt:N`, `cyclic:N`, `dihedral:ORDER`, `q8`,
/// `abelian:A,B,...`, a Lie-type spec such as `psl2:9.pgammal`, or `file:PATH` (relative
/// paths resolve against `base`).
pub fn parse_instance(text: &str, base: Option<&Path>) -> Result<Instance> {
    let text = text.trim();
    let invalid = |reason: &str| Error::InvalidInstance {
        text: text.to_string(),
        reason: reason.to_string(),
    };
    let (kind, arg) = text.split_once(':').unwrap_or((text, ""));
    let number = || -> Result<usize> { arg.parse().map_err(|_| invalid("expected a number")) };
    Ok(match kind {
        "sym" => {
            let n = number()?;
            Instance {
                socle: (n >= 3).then(|| groups::alternating(n)),
                ..Instance::plain(text, groups::symmetric(n))
            }
        }
        "alt" => {
            let g = groups::alternating(number()?);
            Instance {
                socle: Some(g.clone()),
                ..Instance::plain(text, g)
            }
        }
        "cyclic" => Instance::plain(text, groups::cyclic(number()?)),
        "dihedral" => Instance::plain(text, groups::dihedral(number()?)?),
        "q8" if arg.is_empty() => Instance::plain(text, groups::quaternion()),
        "abelian" => {
            let orders = arg
                .split(',')
                .map(|x| x.trim().parse::<usize>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| invalid("expected comma-separated orders"))?;
            Instance::plain(text, groups::abelian(&orders)?)
        }
        "file" => {
            let path = Path::new(arg);
            let path = match base {
                Some(b) if path.is_relative() => b.join(path),
                _ => path.to_path_buf(),
            };
            let body = std::fs::read_to_string(&path)
                .map_err(|e| invalid(&format!("cannot read {}: {e}", path.display())))?;
            Instance::plain(text, Arc::new(PermGroup::parse(&body)?))
        }
        _ => {
            let a = build_instance(text)?;
            Instance {
                name: a.name,
                group: a.group,
                socle: Some(a.socle),
                spec: Some(a.spec),
            }
        }
    })
}
