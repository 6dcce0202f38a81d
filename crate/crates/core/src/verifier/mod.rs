//! Instance checks driven by a TOML manifest.

mod checks;
mod instance;
mod report;

use std::path::PathBuf;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::lie::LieFamily;
use crate::structure::Analyzer;

pub use checks::*;
pub use instance::{parse_instance, Instance};
pub use report::{computed, formula, Verdict, VerificationReport};

/// One `[[check]]` table.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckEntry {
    pub id: String,
    pub instance: Option<String>,
    pub p: Option<u64>,
    pub expected: Option<bool>,
    pub family: Option<String>,
    pub q_bound: Option<u64>,
    /// Socle descriptor for instances that do not carry one.
    pub socle: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    #[serde(default)]
    pub check: Vec<CheckEntry>,
}

impl Manifest {
    pub fn parse(text: &str) -> Result<Self> {
        let m: Manifest = toml::from_str(text).map_err(|e| Error::Manifest(e.to_string()))?;
        for c in &m.check {
            if !CHECK_IDS.contains(&c.id.as_str()) {
                return Err(Error::Manifest(format!("unknown check id {:?}", c.id)));
            }
        }
        Ok(m)
    }
}

pub struct SuiteConfig {
    pub manifest: Manifest,
    /// Restricts the run to these check ids; empty runs everything.
    pub only: Vec<String>,
    pub analyzer: Analyzer,
    /// Directory against which `file:` descriptors resolve.
    pub base_dir: Option<PathBuf>,
}

impl SuiteConfig {
    pub fn new(manifest: Manifest) -> Self {
        Self {
            manifest,
            only: Vec::new(),
            analyzer: Analyzer::new(),
            base_dir: None,
        }
    }
}

/// Runs every selected entry in manifest order.
pub fn run_suite(config: &SuiteConfig) -> Vec<VerificationReport> {
    config
        .manifest
        .check
        .iter()
        .filter(|c| config.only.is_empty() || config.only.contains(&c.id))
        .map(|c| run_entry(config, c))
        .collect()
}

fn run_entry(config: &SuiteConfig, c: &CheckEntry) -> VerificationReport {
    let label = c
        .instance
        .clone()
        .or_else(|| c.family.as_ref().map(|f| format!("{f} q<={}", c.q_bound.unwrap_or(0))))
        .unwrap_or_default();
    match dispatch(config, c) {
        Ok(r) => r,
        Err(e) => VerificationReport::from_result(&c.id, &label, Err(e)),
    }
}

fn missing(id: &str, field: &str) -> Error {
    Error::Manifest(format!("check {id:?} needs `{field}`"))
}

fn dispatch(config: &SuiteConfig, c: &CheckEntry) -> Result<VerificationReport> {
    let id = c.id.as_str();
    let an = &config.analyzer;
    if id == NP_VS_OUT || id == ZSIGMONDY_TORUS {
        let family: LieFamily = c.family.as_deref().ok_or_else(|| missing(id, "family"))?.parse()?;
        let bound = c.q_bound.ok_or_else(|| missing(id, "q_bound"))?;
        return Ok(if id == NP_VS_OUT {
            check_np_exceeds_out(family, bound)
        } else {
            check_zsigmondy_torus(family, bound)
        });
    }
    let text = c.instance.as_deref().ok_or_else(|| missing(id, "instance"))?;
    let inst = parse_instance(text, config.base_dir.as_deref())?;
    let socle = match &c.socle {
        Some(s) => Some(parse_instance(s, config.base_dir.as_deref())?.group),
        None => inst.socle.clone(),
    };
    let spec = || {
        inst.spec
            .filter(|_| socle.as_ref().is_some_and(|s| s.same_elements(&inst.group)))
            .ok_or_else(|| Error::Manifest(format!("check {id:?} needs a simple Lie-type instance")))
    };
    let socle = || socle.clone().ok_or_else(|| missing(id, "socle"));
    Ok(match id {
        PAIRWISE_GENERATION => check_pairwise_generation(an, &inst.group, &inst.name),
        SIGMA_BOUND => check_sigma_bound(an, &spec()?),
        BOREL_MAXIMALITY => {
            let p = c.p.or(inst.spec.map(|s| s.p)).ok_or_else(|| missing(id, "p"))?;
            let expected = c.expected.ok_or_else(|| missing(id, "expected"))?;
            check_borel_maximality(&inst.group, &socle()?, p, expected, &inst.name)
        }
        CENTRALIZER_WITNESS => find_centralizer_witness(&inst.group, &socle()?, &inst.name),
        NO_NILPOTENT_MINIMAL_COVER => check_no_nilpotent_minimal_cover(an, &inst.group, &inst.name),
        UNISYLOW_CENTRALIZER => check_unisylow_centralizer(&spec()?),
        NP_FORMULA => check_np_formula(&spec()?),
        KANTOR => check_kantor(an, &inst.group, &inst.name),
        other => return Err(Error::Manifest(format!("unknown check id {other:?}"))),
    })
}
