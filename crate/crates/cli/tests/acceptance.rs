//! End-to-end acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::path::Path;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use nilcover::covering::{conjugate_union_is_proper, has_nilpotent_minimal_covering, sigma};
use nilcover::groups::{abelian, alternating, dihedral, quaternion, symmetric};
use nilcover::lie::{build_instance, parse_spec, zsigmondy, LieFamily};
use nilcover::numtheory::{factorize, gcd};
use nilcover::structure::{centralizer, is_maximal, is_solvable, maximal_subgroups, Analyzer};
use nilcover::verifier::{
    check_borel_maximality, check_np_exceeds_out, check_np_formula, check_sigma_bound,
    check_unisylow_centralizer, find_centralizer_witness, VerificationReport,
};
use nilcover::{PermGroup, Permutation, SubgroupHandle};
use serde_json::Value;

const CORPUS_LIMIT: Duration = Duration::from_secs(60);
const NONSOLVABLE_LIMIT: Duration = Duration::from_secs(300);
const BOREL_LIMIT: Duration = Duration::from_secs(120);
const SWEEP_LIMIT: Duration = Duration::from_secs(10);
const ZSIGMONDY_LIMIT: Duration = Duration::from_secs(1);
const WITNESS_LIMIT: Duration = Duration::from_secs(300);

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn corpus() -> Vec<(&'static str, Arc<PermGroup>)> {
    vec![
        ("C2xC2", abelian(&[2, 2]).unwrap()),
        ("C3xC3", abelian(&[3, 3]).unwrap()),
        ("S3", symmetric(3)),
        ("D8", dihedral(8).unwrap()),
        ("Q8", quaternion()),
        ("A4", alternating(4)),
        ("S4", symmetric(4)),
        ("A5", alternating(5)),
        ("S5", symmetric(5)),
        ("C2xC2xC2", abelian(&[2, 2, 2]).unwrap()),
    ]
}

fn nonsolvable_instances() -> Vec<(&'static str, Arc<PermGroup>)> {
    let lie = |s: &str| build_instance(s).unwrap().group;
    vec![
        ("A5", alternating(5)),
        ("S5", symmetric(5)),
        ("A6", alternating(6)),
        ("PSL(2,7)", lie("psl2:7")),
        ("PGL(2,7)", lie("psl2:7.pgl")),
        ("PSL(3,2):2", lie("psl3:2.graph")),
        ("PSL(2,8)", lie("psl2:8")),
        ("PSL(2,11)", lie("psl2:11")),
    ]
}

fn timed<T>(limit: Duration, what: &str, f: impl FnOnce() -> T) -> Result<T, String> {
    let start = Instant::now();
    let out = f();
    let took = start.elapsed();
    if took > limit {
        return Err(format!("{what} took {took:?}, limit {limit:?}"));
    }
    Ok(out)
}

fn expect_pass(r: &VerificationReport) -> Result<(), String> {
    if r.passed() {
        Ok(())
    } else {
        Err(format!("{} on {}: {:?} {}", r.claim_id, r.instance, r.verdict, r.witness))
    }
}

fn value(v: &Value) -> u64 {
    v["value"].as_u64().expect("numeric witness value")
}

fn oracle_equivalence() -> Outcome {
    let mut parts = Vec::new();
    timed(CORPUS_LIMIT, "corpus", || -> Result<(), String> {
        for (name, g) in corpus() {
            let want = common::oracle(&g, false).sigma.ok_or(format!("{name}: oracle found no covering"))?;
            let (got, _) = sigma(&g).map_err(|e| format!("{name}: {e}"))?;
            if got != want {
                return Err(format!("{name}: solver {got}, oracle {want}"));
            }
            parts.push(format!("{name}={got}"));
        }
        Ok(())
    })??;
    Ok(parts.join(" "))
}

fn no_nilpotent_minimal_cover() -> Outcome {
    let mut parts = Vec::new();
    for (name, g) in nonsolvable_instances() {
        let (has, _) = timed(NONSOLVABLE_LIMIT, name, || has_nilpotent_minimal_covering(&g))?
            .map_err(|e| format!("{name}: {e}"))?;
        if has {
            return Err(format!("{name} has a nilpotent minimal covering"));
        }
        parts.push(name);
    }
    Ok(format!("none of {}", parts.join(", ")))
}

fn solvability_direction() -> Outcome {
    let mut positive = Vec::new();
    for (name, g) in corpus().into_iter().chain(nonsolvable_instances()) {
        let (has, _) = has_nilpotent_minimal_covering(&g).map_err(|e| format!("{name}: {e}"))?;
        if has {
            if !is_solvable(&g).unwrap() {
                return Err(format!("{name} is not solvable"));
            }
            positive.push(name);
        }
    }
    Ok(format!("{} positive, all solvable: {}", positive.len(), positive.join(", ")))
}

fn sigma_bound() -> Outcome {
    let an = Analyzer::new();
    let mut parts = Vec::new();
    for s in ["psl2:4", "psl2:5", "psl2:7", "psl2:8", "psl2:11", "psu3:3"] {
        let r = check_sigma_bound(&an, &parse_spec(s).unwrap());
        expect_pass(&r)?;
        parts.push(format!(
            "{s} {}>{}",
            value(&r.witness["min_nilpotent_cover"]),
            value(&r.witness["sylow_count"])
        ));
    }
    Ok(parts.join(", "))
}

fn borel_dichotomy() -> Outcome {
    let mut cases: Vec<(&str, bool)> = ["psl2:4", "psl2:5", "psl2:7", "psl2:8", "psl2:9", "psl2:11"]
        .into_iter()
        .map(|s| (s, true))
        .collect();
    cases.extend([
        ("psl3:2", false),
        ("psl3:3", false),
        ("psl3:2.graph", true),
        ("psl3:3.graph", true),
        ("sz:8", true),
    ]);
    for (text, expected) in &cases {
        let a = build_instance(text).unwrap();
        let r = timed(BOREL_LIMIT, text, || {
            check_borel_maximality(&a.group, &a.socle, a.spec.p, *expected, text)
        })?;
        expect_pass(&r)?;
    }
    Ok(format!("{}/{} verdicts agree", cases.len(), cases.len()))
}

fn np_sweep() -> Outcome {
    let reports = timed(SWEEP_LIMIT, "sweeps", || {
        [LieFamily::Psl2, LieFamily::Psl3, LieFamily::Psu3].map(|f| check_np_exceeds_out(f, 1_000_000))
    })?;
    let mut parts = Vec::new();
    for r in &reports {
        expect_pass(r)?;
        parts.push(format!("{}: {} cases", r.instance, r.witness["cases"]));
    }
    let m = &reports[0].witness["min_margin"];
    if (m["q"].as_u64(), value(&m["np"]), value(&m["out"])) != (Some(4), 5, 2) {
        return Err(format!("PSL2 minimum margin {m}"));
    }
    Ok(format!("{}; PSL2 minimum at q=4 (5 vs 2)", parts.join(", ")))
}

fn formula_layer() -> Outcome {
    let specs = ["psl2:4", "psl2:5", "psl2:7", "psl2:8", "psl2:9", "psl2:11", "psl3:2", "psl3:3", "psu3:3"];
    for s in specs {
        expect_pass(&check_np_formula(&parse_spec(s).unwrap()))?;
    }
    Ok(format!("{} specs", specs.len()))
}

/// Least primitive prime divisor straight from the definition.
fn brute_zsigmondy(p: u128, n: u32) -> Option<u128> {
    let mut primes = factorize(p.pow(n) - 1);
    primes.sort_unstable();
    primes.dedup();
    primes.into_iter().find(|&r| (1..n).all(|k| (p.pow(k) - 1) % r != 0))
}

fn zsigmondy_table() -> Outcome {
    let mut absent = Vec::new();
    timed(ZSIGMONDY_LIMIT, "table", || -> Result<(), String> {
        for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29] {
            for n in 2..=20 {
                let got = zsigmondy(p, n);
                if got != brute_zsigmondy(p as u128, n) {
                    return Err(format!("({p}, {n}): {got:?}"));
                }
                let exceptional = (p, n) == (2, 6) || (n == 2 && (p + 1).is_power_of_two());
                if got.is_none() != exceptional {
                    return Err(format!("({p}, {n}): absence {}", got.is_none()));
                }
                if got.is_none() {
                    absent.push(format!("({p},{n})"));
                }
            }
        }
        Ok(())
    })??;
    Ok(format!("190 pairs, absent exactly at {}", absent.join(" ")))
}

fn torus_table() -> Outcome {
    let cases: [(&str, &[u128]); 4] = [("sz:8", &[13, 5]), ("ree:27", &[37, 19]), ("psu3:3", &[7]), ("psl2:7", &[4])];
    for (s, want) in cases {
        let got = parse_spec(s).unwrap().torus_orders().unwrap();
        if got != want {
            return Err(format!("{s}: {got:?}"));
        }
    }
    Ok("sz:8 [13,5], ree:27 [37,19], psu3:3 [7], psl2:7 [4]".into())
}

/// Rebuilds `s`, `K` and `C_G(s)` from the witness and checks both conditions directly.
fn revalidate_witness(g: &Arc<PermGroup>, socle: &PermGroup, w: &Value) -> Result<u64, String> {
    let degree = g.degree();
    let s = Permutation::from_cycles(w["s"].as_str().unwrap(), degree).unwrap();
    let k_gens: Vec<Permutation> = w["k_generators"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| Permutation::from_cycles(x.as_str().unwrap(), degree).unwrap())
        .collect();
    let k = SubgroupHandle::generated(g, k_gens).map_err(|e| e.to_string())?;
    if !socle.contains(&s).unwrap() || !socle.generators().iter().all(|x| k.contains(x)) {
        return Err("S is not inside K or s is not in S".into());
    }
    if !is_maximal(g, &k).map_err(|e| e.to_string())? {
        return Err("K is not maximal".into());
    }
    let index = (g.order() / k.order()) as u64;
    if gcd(s.order(), index) != 1 {
        return Err(format!("gcd(|s|, |G:K|) = gcd({}, {index})", s.order()));
    }
    let c = centralizer(g, &s).map_err(|e| e.to_string())?;
    let meet = c.group().elements().unwrap().filter(|x| k.contains(x)).count() as u128;
    if k.order() * c.order() / meet >= g.order() {
        return Err("K C_G(s) = G".into());
    }
    Ok(s.order())
}

fn centralizer_witnesses() -> Outcome {
    let mut cases: Vec<(String, Arc<PermGroup>, Arc<PermGroup>)> =
        vec![("S5".into(), symmetric(5), alternating(5))];
    for text in ["psl2:7.pgl", "psl2:9.pgl", "psl2:9.diagfield", "psl2:9.pgammal"] {
        let a = build_instance(text).unwrap();
        cases.push((a.name, a.group, a.socle));
    }
    let mut parts = Vec::new();
    for (name, g, s) in &cases {
        let r = timed(WITNESS_LIMIT, name, || find_centralizer_witness(g, s, name))?;
        expect_pass(&r)?;
        let order = revalidate_witness(g, s, &r.witness).map_err(|e| format!("{name}: {e}"))?;
        parts.push(format!("{name} |s|={order}"));
    }
    Ok(parts.join(", "))
}

fn unisylow_centralizers() -> Outcome {
    for s in ["psu3:3", "psl2:7", "psl2:4"] {
        expect_pass(&check_unisylow_centralizer(&parse_spec(s).unwrap()))?;
    }
    Ok("psu3:3, psl2:7, psl2:4".into())
}

fn kantor_property() -> Outcome {
    let mut classes = 0;
    for (name, g) in corpus() {
        for c in maximal_subgroups(&g).unwrap().classes() {
            if !conjugate_union_is_proper(&g, &c.representative).unwrap() {
                return Err(format!("{name}: class of order {} covers", c.order));
            }
            classes += 1;
        }
    }
    Ok(format!("{classes} maximal classes, zero exceptions"))
}

fn determinism() -> Outcome {
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../default.toml");
    let cache = tempfile::tempdir().map_err(|e| e.to_string())?;
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_nilcover"))
            .arg("verify")
            .arg("--manifest")
            .arg(&manifest)
            .env("NILCOVER_CACHE", cache.path())
            .output()
            .expect("binary runs")
    };
    let cold = run();
    let warm = run();
    if !cold.status.success() || !warm.status.success() {
        return Err(format!("exit codes {:?} {:?}", cold.status.code(), warm.status.code()));
    }
    if cold.stdout != warm.stdout {
        return Err("cold and warm reports differ".into());
    }
    let last = String::from_utf8_lossy(&cold.stdout).lines().last().unwrap_or("").to_string();
    Ok(format!("{} bytes identical; {last}", cold.stdout.len()))
}

fn main() {
    let criteria: [Criterion; 13] = [
        ("oracle equivalence", oracle_equivalence),
        ("no nilpotent minimal covering", no_nilpotent_minimal_cover),
        ("solvability direction", solvability_direction),
        ("nilpotent cover exceeds n_p", sigma_bound),
        ("Borel normalizer maximality", borel_dichotomy),
        ("n_p exceeds |Out|", np_sweep),
        ("formula layer", formula_layer),
        ("Zsigmondy", zsigmondy_table),
        ("torus orders", torus_table),
        ("centralizer witnesses", centralizer_witnesses),
        ("regular unipotent centralizers", unisylow_centralizers),
        ("conjugate unions", kantor_property),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
