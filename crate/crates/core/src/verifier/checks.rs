use std::collections::BTreeSet;
use std::sync::Arc;

use serde_json::json;

use super::report::{computed, formula, VerificationReport};
use crate::covering::{
    conjugate_union_is_proper, nilpotent_verdict_with, sigma_with, verify_certificate,
    min_nilpotent_cover_with,
};
use crate::error::{Error, Result};
use crate::lie::{construct, primitive_part, zsigmondy, LieFamily, LieFamilySpec};
use crate::numtheory::{gcd, gcd128, p_part, primes_up_to};
use crate::perm::{PermGroup, SubgroupHandle};
use crate::structure::{
    centralizer, is_maximal, is_solvable, normalizer, regular_unipotent_elements, subgroup_set,
    sylow, sylow_count, unisylow_elements, Analyzer, Ctx, FILTER_LIMIT,
};

pub const PAIRWISE_GENERATION: &str = "pairwise-generation";
pub const SIGMA_BOUND: &str = "sigma-bound";
pub const BOREL_MAXIMALITY: &str = "borel-maximality";
pub const NP_VS_OUT: &str = "np-vs-out";
pub const CENTRALIZER_WITNESS: &str = "centralizer-witness";
pub const NO_NILPOTENT_MINIMAL_COVER: &str = "no-nilpotent-minimal-cover";
pub const UNISYLOW_CENTRALIZER: &str = "unisylow-centralizer";
pub const NP_FORMULA: &str = "np-formula";
pub const KANTOR: &str = "kantor";
pub const ZSIGMONDY_TORUS: &str = "zsigmondy-torus";

pub const CHECK_IDS: [&str; 10] = [
    PAIRWISE_GENERATION,
    SIGMA_BOUND,
    BOREL_MAXIMALITY,
    NP_VS_OUT,
    CENTRALIZER_WITNESS,
    NO_NILPOTENT_MINIMAL_COVER,
    UNISYLOW_CENTRALIZER,
    NP_FORMULA,
    KANTOR,
    ZSIGMONDY_TORUS,
];

/// Every pair of members of a computed minimal covering generates the group.
pub fn check_pairwise_generation(an: &Analyzer, g: &Arc<PermGroup>, name: &str) -> VerificationReport {
    VerificationReport::from_result(PAIRWISE_GENERATION, name, (|| {
        let order = g.try_order()?;
        let (size, cert) = sigma_with(an, g)?;
        for (i, a) in cert.members.iter().enumerate() {
            for (j, b) in cert.members.iter().enumerate().skip(i + 1) {
                let mut gens = a.generators().to_vec();
                gens.extend_from_slice(b.generators());
                let joined = PermGroup::new(g.degree(), gens)?.try_order()?;
                if joined != order {
                    return Ok((false, json!({
                        "sigma": computed(size),
                        "pair": [i, j],
                        "orders": [a.order(), b.order()],
                        "generated_order": joined,
                    })));
                }
            }
        }
        Ok((true, json!({
            "sigma": computed(size),
            "pairs": size * (size - 1) / 2,
            "member_orders": cert.members.iter().map(|m| m.order()).collect::<Vec<_>>(),
        })))
    })())
}

/// The smallest nilpotent covering of `S` is larger than the number of Sylow
/// `p`-subgroups in defining characteristic.
pub fn check_sigma_bound(an: &Analyzer, spec: &LieFamilySpec) -> VerificationReport {
    VerificationReport::from_result(SIGMA_BOUND, &spec.name(), (|| {
        let s = construct(spec)?;
        let (nil, _) = min_nilpotent_cover_with(an, &s)?;
        let np = sylow_count(&s, spec.p)?;
        let mut witness = json!({
            "p": spec.p,
            "min_nilpotent_cover": computed(nil),
            "sylow_count": computed(np),
        });
        if let Ok(f) = spec.np_count() {
            witness["np_formula"] = formula(f);
        }
        Ok((nil as u128 > np, witness))
    })())
}

/// `N_G(U)` for a Sylow `p`-subgroup `U` of `S` is maximal in `G` exactly when expected.
pub fn check_borel_maximality(
    g: &Arc<PermGroup>,
    s: &Arc<PermGroup>,
    p: u64,
    expected: bool,
    name: &str,
) -> VerificationReport {
    VerificationReport::from_result(BOREL_MAXIMALITY, name, (|| {
        let u = sylow(s, p)?;
        let u = SubgroupHandle::generated(g, u.generators().to_vec())?;
        let n = normalizer(g, &u)?;
        let maximal = is_maximal(g, &n)?;
        let mut witness = json!({
            "p": p,
            "sylow_order": computed(u.order()),
            "normalizer_order": computed(n.order()),
            "group_order": g.try_order()?,
            "maximal": computed(maximal),
            "expected": expected,
        });
        if !maximal {
            if let Some((x, order)) = maximality_obstruction(g, &n)? {
                witness["obstruction"] = json!({
                    "element": x,
                    "overgroup_order": computed(order),
                });
            }
        }
        Ok((maximal == expected, witness))
    })())
}

/// An element `x` with `N < ⟨N, x⟩ < G`, and the order of that overgroup.
fn maximality_obstruction(g: &Arc<PermGroup>, h: &SubgroupHandle) -> Result<Option<(String, u128)>> {
    let order = g.try_order()?;
    for x in g.elements()? {
        if h.contains(&x) {
            continue;
        }
        let mut gens = h.generators().to_vec();
        gens.push(x.clone());
        let k = PermGroup::new(g.degree(), gens)?.try_order()?;
        if k < order {
            return Ok(Some((x.to_string(), k)));
        }
    }
    Ok(None)
}

/// Prime powers `q ≤ bound` in increasing order.
fn prime_powers(bound: u64) -> Vec<u64> {
    let mut out = Vec::new();
    for p in primes_up_to(bound as usize) {
        let mut q = p as u64;
        while q <= bound {
            out.push(q);
            q = match q.checked_mul(p as u64) {
                Some(x) => x,
                None => break,
            };
        }
    }
    out.sort_unstable();
    out
}

/// Smallest `q` for which the family is simple.
fn simple_from(family: LieFamily) -> u64 {
    match family {
        LieFamily::Psl2 => 4,
        LieFamily::Psu3 => 3,
        _ => 2,
    }
}

/// `n_p(S) > |Out(S)|` over every prime power `q ≤ q_bound` for which the family is simple.
pub fn check_np_exceeds_out(family: LieFamily, q_bound: u64) -> VerificationReport {
    let name = format!("{family} q<={q_bound}");
    VerificationReport::from_result(NP_VS_OUT, &name, (|| {
        if !matches!(family, LieFamily::Psl2 | LieFamily::Psl3 | LieFamily::Psu3) {
            return Err(Error::Manifest(format!("no n_p formula for {family}")));
        }
        let mut checked = 0u64;
        let mut min: Option<(i128, u64, u128, u128)> = None;
        let mut violations = Vec::new();
        for q in prime_powers(q_bound) {
            if q < simple_from(family) {
                continue;
            }
            let spec = LieFamilySpec::from_field_size(family, q)?;
            let (np, out) = (spec.np_count()?, spec.out_order()?);
            let margin = np as i128 - out as i128;
            checked += 1;
            if min.is_none_or(|m| margin < m.0) {
                min = Some((margin, q, np, out));
            }
            if margin <= 0 && violations.len() < 10 {
                violations.push(json!({ "q": q, "np": np, "out": out }));
            }
        }
        let (margin, q, np, out) = min.ok_or_else(|| Error::Manifest(format!("no simple {family} with q <= {q_bound}")))?;
        Ok((violations.is_empty(), json!({
            "cases": checked,
            "min_margin": { "q": q, "np": formula(np), "out": formula(out), "margin": margin },
            "violations": violations,
        })))
    })())
}

/// Subgroups `K` with `S ≤ K < G` that are maximal in `G`, taken among `S` and its joins
/// with one or two coset representatives. This sees every overgroup when all subgroups
/// of `G/S` are 2-generated.
fn maximal_overgroups(ctx: &Ctx, s: &crate::structure::ElemSet, s_gens: &[usize]) -> Vec<crate::structure::ElemSet> {
    let t = &ctx.t;
    let s_elems: Vec<usize> = s.ones().collect();
    let mut seen = s.clone();
    let mut reps = Vec::new();
    for x in 0..ctx.n() {
        if seen.contains(x) {
            continue;
        }
        reps.push(x);
        for &h in &s_elems {
            seen.insert(t.mul(h, x));
        }
    }
    let mut found: Vec<crate::structure::ElemSet> = vec![s.clone()];
    let mut push = |k: crate::structure::ElemSet| {
        if k.count_ones(..) < ctx.n() && !found.contains(&k) {
            found.push(k);
        }
    };
    for (i, &a) in reps.iter().enumerate() {
        push(ctx.extend_bounded(s, s_gens, &[a], usize::MAX, |_| true).expect("unbounded"));
        for &b in &reps[i + 1..] {
            push(ctx.extend_bounded(s, s_gens, &[a, b], usize::MAX, |_| true).expect("unbounded"));
        }
    }
    let mut maximal: Vec<_> = found
        .iter()
        .filter(|k| !found.iter().any(|l| l != *k && k.is_subset(l)))
        .cloned()
        .collect();
    maximal.sort_by(|a, b| {
        b.count_ones(..)
            .cmp(&a.count_ones(..))
            .then_with(|| crate::structure::cmp_sets(a, b))
    });
    maximal
}

/// Searches `s ∈ S` (by decreasing order, then table index) and maximal `K ≥ S` with
/// `gcd(|s|, |G:K|) = 1` and `K·C_G(s) ≠ G`.
pub fn find_centralizer_witness(g: &Arc<PermGroup>, s: &Arc<PermGroup>, name: &str) -> VerificationReport {
    VerificationReport::from_result(CENTRALIZER_WITNESS, name, (|| {
        let ctx = Ctx::new(g, FILTER_LIMIT, "centralizer witness")?;
        let (sset, s_gens) = subgroup_set(&ctx, s)?;
        let n = ctx.n();
        if sset.count_ones(..) == n {
            return Err(Error::NotProper);
        }
        let ks = maximal_overgroups(&ctx, &sset, &s_gens);
        let mut order: Vec<usize> = sset.ones().collect();
        order.sort_by_key(|&x| (std::cmp::Reverse(ctx.t.order_of(x)), x));
        for x in order {
            let c = ctx.centralizer_set(x);
            let c_len = c.count_ones(..);
            for k in &ks {
                let k_len = k.count_ones(..);
                let index = n / k_len;
                let ord = ctx.t.order_of(x) as u64;
                if gcd(ord, index as u64) != 1 {
                    continue;
                }
                let meet = k.intersection_count(&c);
                let product = k_len * c_len / meet;
                if product < n {
                    let kh = ctx.handle(k);
                    return Ok((true, json!({
                        "s": ctx.t.perm(x).to_string(),
                        "s_order": computed(ord),
                        "k_generators": kh.generators().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
                        "k_order": computed(k_len),
                        "k_index": computed(index),
                        "centralizer_order": computed(c_len),
                        "k_meet_centralizer": computed(meet),
                        "kc_size": computed(product),
                        "group_order": n,
                    })));
                }
            }
        }
        Ok((false, json!({ "searched": sset.count_ones(..), "overgroups": ks.len() })))
    })())
}

/// No minimal covering of a non-solvable group is nilpotent; for solvable groups the
/// verdict is recorded and only a nilpotent minimal covering of a non-solvable group fails.
pub fn check_no_nilpotent_minimal_cover(an: &Analyzer, g: &Arc<PermGroup>, name: &str) -> VerificationReport {
    VerificationReport::from_result(NO_NILPOTENT_MINIMAL_COVER, name, (|| {
        let v = nilpotent_verdict_with(an, g)?;
        let solvable = is_solvable(g)?;
        let has = v.has_nilpotent_minimal_covering();
        let mut witness = json!({
            "sigma": computed(v.sigma.size),
            "min_nilpotent_cover": computed(v.nilpotent.size),
            "has_nilpotent_minimal_covering": computed(has),
            "solvable": computed(solvable),
            "certificates_verified": computed(
                verify_certificate(g, &v.sigma)? && verify_certificate(g, &v.nilpotent)?
            ),
        });
        if let Some(w) = v.witness() {
            witness["witness_member_orders"] =
                json!(w.members.iter().map(|m| m.order()).collect::<Vec<_>>());
        }
        let ok = witness["certificates_verified"]["value"] == json!(true) && (solvable || !has);
        Ok((ok, witness))
    })())
}

/// Centralizers of regular unipotent elements of `S` are `p`-groups.
pub fn check_unisylow_centralizer(spec: &LieFamilySpec) -> VerificationReport {
    VerificationReport::from_result(UNISYLOW_CENTRALIZER, &spec.name(), (|| {
        if !matches!(
            spec.family,
            LieFamily::Psl2 | LieFamily::Psu3 | LieFamily::Suzuki | LieFamily::Ree
        ) {
            return Err(Error::Manifest(format!(
                "regular unipotent selection needs a rank-one family, not {}",
                spec.family
            )));
        }
        let s = construct(spec)?;
        let p = spec.p;
        let unisylow = unisylow_elements(&s, p)?.len();
        let regular = regular_unipotent_elements(&s, p)?;
        let mut orders = BTreeSet::new();
        for u in &regular {
            orders.insert(centralizer(&s, u)?.order());
        }
        let bad: Vec<u128> = orders
            .iter()
            .copied()
            .filter(|&c| p_part(c, p as u128) != c)
            .collect();
        Ok((!regular.is_empty() && bad.is_empty(), json!({
            "p": p,
            "unisylow_elements": computed(unisylow),
            "regular_unipotent_elements": computed(regular.len()),
            "centralizer_orders": computed(orders.into_iter().collect::<Vec<_>>()),
            "non_p_centralizers": bad,
        })))
    })())
}

/// The computed number of Sylow `p`-subgroups equals the closed form.
pub fn check_np_formula(spec: &LieFamilySpec) -> VerificationReport {
    VerificationReport::from_result(NP_FORMULA, &spec.name(), (|| {
        let f = spec.np_count()?;
        let s = construct(spec)?;
        let c = sylow_count(&s, spec.p)?;
        Ok((c == f, json!({ "p": spec.p, "np_formula": formula(f), "sylow_count": computed(c) })))
    })())
}

/// No maximal subgroup class covers the group by its conjugates alone.
pub fn check_kantor(an: &Analyzer, g: &Arc<PermGroup>, name: &str) -> VerificationReport {
    VerificationReport::from_result(KANTOR, name, (|| {
        let max = an.maximal_subgroups(g)?;
        let mut failures = Vec::new();
        for (i, c) in max.classes().iter().enumerate() {
            if !conjugate_union_is_proper(g, &c.representative)? {
                failures.push(json!({ "class": i, "order": c.order }));
            }
        }
        Ok((failures.is_empty(), json!({
            "maximal_classes": computed(max.len()),
            "class_orders": max.orders(),
            "failures": failures,
        })))
    })())
}

/// For every `q ≤ q_bound` in a torus-table family, a primitive prime divisor of
/// `p^(zf) − 1` exists outside the two exceptional situations, and each one divides `d·|T|`
/// for some listed torus `T`.
pub fn check_zsigmondy_torus(family: LieFamily, q_bound: u64) -> VerificationReport {
    let name = format!("{family} q<={q_bound}");
    VerificationReport::from_result(ZSIGMONDY_TORUS, &name, (|| {
        let z = family
            .torus_exponents()
            .ok_or_else(|| Error::Manifest(format!("{family} is not in the torus table")))?
            .0;
        let mut checked = 0u64;
        let mut exceptions = Vec::new();
        let mut failures = Vec::new();
        for q in prime_powers(q_bound) {
            let spec = match crate::lie::parse_spec(&format!("{}:{q}", family.key())) {
                Ok(s) => s,
                Err(_) => continue,
            };
            checked += 1;
            let n = z * spec.f;
            let part = primitive_part(spec.p, n);
            let exceptional = (spec.p, n) == (2, 6) || (n == 2 && (spec.p + 1).is_power_of_two());
            if part == 1 {
                if exceptional {
                    exceptions.push(json!({ "q": q, "p": spec.p, "n": n }));
                } else {
                    failures.push(json!({ "q": q, "reason": "no primitive prime divisor" }));
                }
                continue;
            }
            if exceptional {
                failures.push(json!({ "q": q, "reason": "exceptional pair has a primitive divisor" }));
            }
            // Strip every prime shared with some `d·|T|`; a remainder is a primitive
            // prime divisor lying in no listed torus.
            let mut rest = part;
            for t in spec.torus_orders()? {
                let dt = t * spec.d as u128;
                loop {
                    let g = gcd128(rest, dt);
                    if g == 1 {
                        break;
                    }
                    rest /= g;
                }
            }
            if rest != 1 {
                failures.push(json!({ "q": q, "reason": "primitive divisors outside the tori" }));
            }
        }
        let least = |q: u64| -> Option<String> {
            let spec = crate::lie::parse_spec(&format!("{}:{q}", family.key())).ok()?;
            zsigmondy(spec.p, z * spec.f).map(|r| r.to_string())
        };
        Ok((failures.is_empty(), json!({
            "cases": checked,
            "exceptions": exceptions,
            "failures": failures,
            "least_primitive_divisor_at_smallest_q": prime_powers(q_bound)
                .into_iter()
                .find_map(|q| least(q).map(|r| json!({ "q": q, "r": formula(r) }))),
        })))
    })())
}
