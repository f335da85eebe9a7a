use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use gentle_core::derived::{Disk, GradedArc};
use gentle_core::linalg::complex::homotopy_hom_dim;
use gentle_core::linalg::rep::{ext_dim, Representation};
use gentle_core::linalg::Field;
use gentle_core::module_dct::{ar_quiver_module, classify_weakly_drf, search_dct_module, IndecCatalog};
use gentle_core::quiver::{make_a_n_mod_j2, make_tilde_a_n_mod_j2, Shape};
use gentle_core::string::{enumerate_strings, overlap_extension_exists};
use gentle_core::surface::{algebra_from_dissection, disk_model, random_dissection, Dissection};
use gentle_core::BoundQuiverAlgebra;

fn disk(n: usize) -> Disk {
    Disk::new(&disk_model(n).unwrap()).unwrap()
}

fn nakayama() -> impl Strategy<Value = BoundQuiverAlgebra> {
    prop_oneof![
        (1usize..=6).prop_map(|n| make_a_n_mod_j2(n).unwrap()),
        (1usize..=5).prop_map(|n| make_tilde_a_n_mod_j2(n).unwrap()),
    ]
}

fn arc_on(n: usize) -> impl Strategy<Value = GradedArc> {
    (0..=n, 0..=n, -4i32..=4).prop_filter_map("distinct endpoints", move |(a, b, base)| {
        (a != b).then(|| disk(n).arc(a, b, base).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn quiver_text_round_trips(n in 1usize..12, cyclic in any::<bool>()) {
        let alg = if cyclic { make_tilde_a_n_mod_j2(n) } else { make_a_n_mod_j2(n) }.unwrap();
        prop_assert!(alg.is_gentle().gentle);
        let text = alg.serialize();
        let again = BoundQuiverAlgebra::parse(&text).unwrap();
        prop_assert_eq!(&again, &alg);
        prop_assert_eq!(again.serialize(), text);
    }

    #[test]
    fn random_dissections_are_gentle_and_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = random_dissection(&mut rng, 8);
        let alg = algebra_from_dissection(&d).unwrap();
        prop_assert!(alg.is_gentle().gentle);
        prop_assert_eq!(alg.vertex_count(), d.edges().len());
        for v in 0..alg.vertex_count() {
            prop_assert!(alg.out_arrows(v).count() <= 2 && alg.in_arrows(v).count() <= 2);
        }
        let text = d.serialize();
        let again = Dissection::parse(&text).unwrap();
        prop_assert_eq!(again.serialize(), text);
    }

    #[test]
    fn nakayama_string_count(alg in nakayama()) {
        let e = enumerate_strings(&alg, 8);
        let want = match alg.shape() {
            Shape::LinearNakayama(n) => 2 * n - 1,
            Shape::CyclicNakayama(n) => 2 * (n + 1),
            other => panic!("unexpected shape {other:?}"),
        };
        prop_assert_eq!(e.strings.len(), want);
    }

    #[test]
    fn search_agrees_with_classification(alg in nakayama(), d in 2usize..=5) {
        let cat = IndecCatalog::new(&alg, Field::default(), 16, d - 1).unwrap();
        let found = search_dct_module(&cat, d).unwrap();
        prop_assert_eq!(!found.is_empty(), classify_weakly_drf(&alg).unwrap().contains(d));
        for u in &found {
            for &x in u.members() {
                for &y in u.members() {
                    for i in 1..d {
                        prop_assert_eq!(cat.ext(x, y, i), 0);
                    }
                }
            }
        }
    }

    #[test]
    fn ar_meshes_are_exact(alg in nakayama()) {
        let cat = IndecCatalog::new(&alg, Field::default(), 16, 1).unwrap();
        let q = ar_quiver_module(&cat).unwrap();
        for &(x, tx) in &q.tau {
            let into: Vec<usize> = q.arrows_into(x).into_iter().map(|a| a.0).collect();
            let out: Vec<usize> = q.arrows_out_of(tx).into_iter().map(|a| a.0).collect();
            prop_assert_eq!(into, out);
        }
    }

    #[test]
    fn hom_is_shift_invariant(n in 1usize..=4, seed in any::<u64>(), j in -3i32..=3) {
        let k = disk(n);
        let arcs = k.universe(2);
        let x = arcs[(seed as usize) % arcs.len()];
        let y = arcs[(seed >> 32) as usize % arcs.len()];
        for i in -3..=3 {
            prop_assert_eq!(k.hom_dim(&x, &y, i), k.hom_dim(&x.shifted(-j), &y.shifted(i - j), 0));
        }
        let f = Field::default();
        let (cx, cy) = (k.arc_to_complex(&x, f).unwrap(), k.arc_to_complex(&y, f).unwrap());
        let a = homotopy_hom_dim(k.algebra(), f, &cx, &cy, 1).unwrap();
        let b = homotopy_hom_dim(k.algebra(), f, &cx.shifted(-j), &cy.shifted(1 - j), 0).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn serre_identity(x in arc_on(4), y in arc_on(4), i in -3i32..=3) {
        let k = disk(4);
        let tx = k.tau(&x).unwrap();
        prop_assert_eq!(k.hom_dim(&y, &tx, 1 + i), k.hom_dim(&x, &y, -i));
    }

    #[test]
    fn translate_self_hom_vanishes_only_on_minimal_arcs(n in 1usize..=6, a in 0usize..7, b in 0usize..7) {
        prop_assume!(a != b && a <= n && b <= n);
        let k = disk(n);
        let x = k.arc(a, b, 0).unwrap();
        prop_assert_eq!(k.hom_tau_self(&x).unwrap() == 0, k.is_minimal(&x));
    }

    #[test]
    fn searched_subcategories_are_shift_periodic(n in 3usize..=5) {
        let k = disk(n);
        let d = n - 1;
        for u in k.search_dct_derived(d, k.default_window(d)).unwrap() {
            for x in k.universe(3) {
                for j in -4i32..=4 {
                    if u.contains(&x) {
                        prop_assert_eq!(u.contains(&x.shifted(j)), j.rem_euclid(d as i32) == 0);
                    }
                }
            }
        }
    }
}

#[test]
fn derived_search_is_nonempty_only_one_below_the_rank() {
    for n in 2..=6 {
        let k = disk(n);
        for d in 2..=6 {
            let found = k.search_dct_derived(d, k.default_window(d)).unwrap();
            assert_eq!(!found.is_empty(), d + 1 == n, "n={n} d={d}");
        }
    }
}

#[test]
fn overlap_implies_extension_on_the_corpus() {
    let f = Field::default();
    for alg in gentle_core::corpus::gentle_corpus(4, 5).unwrap() {
        for x in 0..alg.vertex_count() {
            if overlap_extension_exists(&alg, x).unwrap() {
                let inj = Representation::injective(&alg, f, x).unwrap();
                let proj = Representation::projective(&alg, f, x).unwrap();
                assert!(ext_dim(&alg, &inj, &proj, 1).unwrap() >= 1, "{}", alg.serialize());
            }
        }
    }
}

#[test]
fn minimal_arcs_sharing_an_endpoint_join_exactly_when_compatible() {
    for n in 3..=5 {
        let k = disk(n);
        let d = n - 1;
        for u in k.search_dct_derived(d, k.default_window(d)).unwrap() {
            for c in &u.classes {
                let x = c.arc;
                for y in k.universe(d as i32 + 1).into_iter().filter(|y| k.is_minimal(y)) {
                    for m in [x.a, x.b] {
                        if y.has_endpoint(m) && y != x {
                            let compatible = k.d_compatible(&x, &y, m, d).unwrap();
                            assert_eq!(u.contains(&y), compatible, "n={n} {x} {y}");
                        }
                    }
                }
            }
        }
    }
}
