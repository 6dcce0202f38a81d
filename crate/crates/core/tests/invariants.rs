mod common;

use std::sync::Arc;

use nilcover::covering::{essential_elements, min_nilpotent_cover, sigma, verify_certificate};
use nilcover::groups::{abelian, alternating, dihedral, quaternion, symmetric};
use nilcover::lie::{build_instance, construct, parse_spec};
use nilcover::numtheory::{p_part, prime_divisors};
use nilcover::perm::{conjugate_subgroup, group_from_generators};
use nilcover::structure::{
    centralizer, is_nilpotent, maximal_nilpotent_subgroups, maximal_subgroups, normalizer,
    subgroups_up_to_conjugacy, sylow, sylow_count, sylows_containing, unisylow_elements,
};
use nilcover::{PermGroup, Permutation, SubgroupHandle};
use proptest::prelude::*;

use common::Cayley;

fn perm(degree: usize) -> impl Strategy<Value = Permutation> {
    Just((0..degree as u32).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

/// A degree and one to three random permutations of it.
fn generators(max_degree: usize) -> impl Strategy<Value = (usize, Vec<Permutation>)> {
    (2..=max_degree).prop_flat_map(|n| (Just(n), prop::collection::vec(perm(n), 1..=3)))
}

fn small_groups() -> Vec<(&'static str, Arc<PermGroup>)> {
    vec![
        ("S4", symmetric(4)),
        ("A5", alternating(5)),
        ("D12", dihedral(12).unwrap()),
        ("C2xC4", abelian(&[2, 4]).unwrap()),
        ("Q8", quaternion()),
        ("S5", symmetric(5)),
        ("PSL(2,7)", construct(&parse_spec("psl2:7").unwrap()).unwrap()),
        ("PSL(3,2):2", build_instance("psl3:2.graph").unwrap().group),
        ("A6", alternating(6)),
    ]
}

/// Normal closure of `x` in `g` by conjugating with the generators until stable.
fn normal_closure(g: &PermGroup, x: &Permutation) -> PermGroup {
    let mut gens = vec![x.clone()];
    let mut n = PermGroup::new(g.degree(), gens.clone()).unwrap();
    loop {
        let extra: Vec<Permutation> = n
            .generators()
            .iter()
            .flat_map(|h| g.generators().iter().map(move |s| h.conjugate_by(s)))
            .filter(|c| !n.contains(c).unwrap())
            .collect();
        if extra.is_empty() {
            return n;
        }
        gens.extend(extra);
        n = PermGroup::new(g.degree(), gens.clone()).unwrap();
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn order_ignores_generator_order_and_repeats((n, gens) in generators(7), seed in any::<u64>()) {
        let g = PermGroup::new(n, gens.clone()).unwrap();
        let mut shuffled = gens.clone();
        shuffled.rotate_left(seed as usize % gens.len());
        shuffled.push(gens[0].clone());
        let h = PermGroup::new(n, shuffled).unwrap();
        prop_assert_eq!(g.order(), h.order());
        prop_assert_eq!(g.chain().summary(), PermGroup::new(n, gens).unwrap().chain().summary());
    }

    #[test]
    fn membership_is_closed((n, gens) in generators(7), word in prop::collection::vec(0usize..3, 1..8)) {
        let g = group_from_generators(n, gens.clone()).unwrap();
        let mut x = Permutation::identity(n);
        for &i in &word {
            x = x.compose(&gens[i % gens.len()]);
        }
        let y = gens[word[0] % gens.len()].inverse();
        prop_assert!(g.contains(&x).unwrap());
        prop_assert!(g.contains(&x.compose(&y)).unwrap());
        prop_assert!(g.contains(&x.inverse()).unwrap());
        let h = SubgroupHandle::generated(&g, vec![x.clone()]).unwrap();
        prop_assert_eq!(g.order() % h.order(), 0);
        prop_assert_eq!(h.order(), x.order() as u128);
    }

    #[test]
    fn sylow_counts_satisfy_the_congruences((n, gens) in generators(6)) {
        let g = group_from_generators(n, gens).unwrap();
        let order = g.order();
        for p in prime_divisors(order) {
            let np = sylow_count(&g, p as u64).unwrap();
            prop_assert_eq!(np % p, 1);
            prop_assert_eq!((order / p_part(order, p)) % np, 0);
            prop_assert_eq!(sylow(&g, p as u64).unwrap().order(), p_part(order, p));
        }
    }

    #[test]
    fn normalizers_and_centralizers_contain_their_arguments(gi in 0usize..9, xi in 0usize..720, yi in 0usize..720) {
        let (_, g) = &small_groups()[gi];
        let elems: Vec<Permutation> = g.elements().unwrap().collect();
        let x = &elems[xi % elems.len()];
        let y = &elems[yi % elems.len()];
        let c = centralizer(g, x).unwrap();
        prop_assert!(c.contains(x));
        prop_assert_eq!(c.contains(y), x.commutes_with(y));
        let h = SubgroupHandle::generated(g, vec![x.clone(), y.clone()]).unwrap();
        let nh = normalizer(g, &h).unwrap();
        prop_assert!(nh.contains_subgroup(&h));
        prop_assert_eq!(g.order() % nh.order(), 0);
        for a in nh.generators() {
            prop_assert!(h.generators().iter().all(|b| h.contains(&b.conjugate_by(a))));
        }
    }

    #[test]
    fn coverings_are_sound((n, gens) in generators(6)) {
        let g = group_from_generators(n, gens).unwrap();
        prop_assume!(!g.is_cyclic().unwrap());
        let (s, cert) = sigma(&g).unwrap();
        prop_assert!(s >= 3);
        prop_assert!(verify_certificate(&g, &cert).unwrap());
        let essential = essential_elements(&g).unwrap();
        for skip in 0..cert.members.len() {
            let others = cert.members.iter().enumerate().filter(|&(i, _)| i != skip);
            let uncovered = essential.iter().any(|e| !others.clone().any(|(_, m)| m.contains(e)));
            prop_assert!(uncovered, "member {} is redundant", skip);
        }
        let (k, ncert) = min_nilpotent_cover(&g).unwrap();
        prop_assert!(k >= s);
        prop_assert!(verify_certificate(&g, &ncert).unwrap());
    }

    #[test]
    fn lie_models_are_simple(
        si in 0usize..10,
        word in prop::collection::vec(0usize..4, 1..6),
    ) {
        let specs = ["psl2:4", "psl2:7", "psl2:8", "psl2:9", "psl2:16", "psl2:25", "psl2:27", "psl3:3", "psu3:3", "sz:8"];
        let s = construct(&parse_spec(specs[si]).unwrap()).unwrap();
        let gens = s.generators();
        let mut x = Permutation::identity(s.degree());
        for &i in &word {
            x = x.compose(&gens[i % gens.len()]);
        }
        prop_assume!(!x.is_identity());
        prop_assert_eq!(normal_closure(&s, &x).order(), s.order());
    }
}

#[test]
fn nilpotency_agrees_with_the_central_series() {
    for (name, g) in small_groups() {
        let cayley = Cayley::new(&g);
        let lattice = subgroups_up_to_conjugacy(&g).unwrap();
        for class in lattice.classes() {
            let h = &class.representative;
            let idx: Vec<usize> = {
                let elems: Vec<Permutation> = h.group().elements().unwrap().collect();
                let mut v: Vec<usize> = elems
                    .iter()
                    .map(|e| cayley.elements.iter().position(|c| c == e).unwrap())
                    .collect();
                v.sort_unstable();
                v
            };
            let sylows_normal = prime_divisors(h.order()).into_iter().all(|p| {
                sylow_count(h.group(), p as u64).unwrap() == 1
            });
            let lib = is_nilpotent(h).unwrap();
            assert_eq!(lib, cayley.is_nilpotent(&idx), "{name}: class of order {}", h.order());
            assert_eq!(lib, sylows_normal, "{name}: class of order {}", h.order());
        }
    }
}

#[test]
fn every_subgroup_lies_under_a_maximal_class() {
    for (name, g) in small_groups() {
        let lattice = subgroups_up_to_conjugacy(&g).unwrap();
        let maximal = maximal_subgroups(&g).unwrap();
        let max_conj: Vec<SubgroupHandle> =
            (0..maximal.len()).flat_map(|i| maximal.conjugates(i)).collect();
        let nil = maximal_nilpotent_subgroups(&g).unwrap();
        let nil_conj: Vec<SubgroupHandle> = (0..nil.len()).flat_map(|i| nil.conjugates(i)).collect();
        for (i, class) in lattice.classes().iter().enumerate() {
            let h = &class.representative;
            if h.order() < g.order() {
                assert!(max_conj.iter().any(|m| m.contains_subgroup(h)), "{name}: class {i}");
            }
            if is_nilpotent(h).unwrap() {
                for c in lattice.conjugates(i) {
                    assert!(nil_conj.iter().any(|m| m.contains_subgroup(&c)), "{name}: class {i}");
                }
            }
        }
        // Conjugating a representative stays inside the class.
        let x = g.generators()[0].clone();
        for (i, class) in lattice.classes().iter().enumerate() {
            let c = conjugate_subgroup(&class.representative, &x).unwrap();
            assert_eq!(lattice.class_of(&c).unwrap(), Some(i));
        }
    }
}

#[test]
fn unisylow_elements_lie_in_one_sylow() {
    for (spec, p) in [("psl2:7", 7), ("psl2:4", 2), ("psl2:9", 3), ("psu3:3", 3)] {
        let s = construct(&parse_spec(spec).unwrap()).unwrap();
        let us = unisylow_elements(&s, p).unwrap();
        assert!(!us.is_empty());
        for u in us.iter().step_by(7) {
            assert_eq!(sylows_containing(&s, p, u).unwrap(), 1, "{spec}: {u}");
        }
    }
}

#[test]
fn extensions_contain_the_socle_as_a_normal_subgroup() {
    use nilcover::lie::ExtensionKind::*;
    let mut checked = 0;
    for spec in ["psl2:4", "psl2:5", "psl2:7", "psl2:8", "psl2:9", "psl2:11", "psl2:16", "psl2:25", "psl2:27", "psl3:2", "psl3:3", "psl3:4"] {
        for kind in [Diagonal, Field, Graph, DiagonalField, Full] {
            let Ok(a) = build_instance(&format!("{spec}.{kind}")) else { continue };
            let sp = a.spec;
            let lcm = |a: u64, b: u64| a / nilcover::numtheory::gcd(a, b) * b;
            let expected = match kind {
                Diagonal => sp.d,
                Field => sp.f as u64,
                Graph => 2,
                DiagonalField => lcm(sp.d, sp.f as u64),
                Full => sp.d * sp.f as u64,
            } as u128;
            assert_eq!(a.index(), expected, "{spec}.{kind}");
            assert!(a.socle.is_subgroup_of(&a.group));
            for g in a.group.generators() {
                for s in a.socle.generators() {
                    assert!(a.socle.contains(&s.conjugate_by(g)).unwrap(), "{spec}.{kind}");
                }
            }
            checked += 1;
        }
    }
    assert!(checked >= 15, "{checked}");
}
