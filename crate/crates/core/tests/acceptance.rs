//! End-to-end acceptance checks. Each check runs against its own time budget
//! and prints a single PASS/FAIL line.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use gentle_core::corpus::gentle_corpus;
use gentle_core::derived::{DerivedSubcat, Disk, GradedArc};
use gentle_core::linalg::complex::homotopy_hom_dim;
use gentle_core::linalg::rep::{ext_dim, Representation};
use gentle_core::linalg::Field;
use gentle_core::module_dct::{ar_quiver_module, classify_weakly_drf, search_dct_module, IndecCatalog};
use gentle_core::quiver::{make_a_n_mod_j2, make_tilde_a_n_mod_j2, Shape};
use gentle_core::string::find_obstruction_vertex;
use gentle_core::surface::{algebra_from_dissection, disk_model, random_dissection};
use gentle_core::BoundQuiverAlgebra;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn disk(n: usize) -> Result<Disk, String> {
    let diss = disk_model(n).map_err(|e| e.to_string())?;
    Disk::new(&diss).map_err(|e| e.to_string())
}

fn is_rad2_nakayama(alg: &BoundQuiverAlgebra) -> bool {
    alg.is_radical_square_zero() && matches!(alg.shape(), Shape::LinearNakayama(_) | Shape::CyclicNakayama(_))
}

fn three_vertex_line() -> Outcome {
    let alg = make_a_n_mod_j2(3).map_err(|e| e.to_string())?;
    let cat = IndecCatalog::new(&alg, Field::default(), 16, 2).map_err(|e| e.to_string())?;
    ensure(cat.len() == 5, || format!("{} indecomposables", cat.len()))?;
    let found = search_dct_module(&cat, 2).map_err(|e| e.to_string())?;
    ensure(found.len() == 1, || format!("{} subcategories", found.len()))?;
    let mut labels: Vec<String> = found[0].members().iter().map(|&i| cat.label(i)).collect();
    labels.sort();
    ensure(labels == ["I_1", "P_1", "P_2", "P_3"], || format!("members {labels:?}"))?;

    let q = ar_quiver_module(&cat).map_err(|e| e.to_string())?;
    let idx = |name: &str| (0..cat.len()).find(|&i| cat.label(i) == name);
    let s2 = (0..cat.len())
        .find(|&i| !["P_1", "P_2", "P_3", "I_1"].contains(&cat.label(i).as_str()))
        .ok_or("no simple at the middle vertex")?;
    let (p1, p2, p3, i1) = (idx("P_1").unwrap(), idx("P_2").unwrap(), idx("P_3").unwrap(), idx("I_1").unwrap());
    let mut arrows: Vec<(usize, usize)> = q.arrows.iter().map(|&(a, b, _)| (a, b)).collect();
    arrows.sort();
    let mut want = vec![(p3, p2), (p2, s2), (s2, p1), (p1, i1)];
    want.sort();
    ensure(arrows == want && q.arrows.iter().all(|a| a.2 == 1), || format!("arrows {:?}", q.arrows))?;
    let mut tau = q.tau.clone();
    tau.sort();
    let mut want_tau = vec![(s2, p3), (i1, s2)];
    want_tau.sort();
    ensure(tau == want_tau, || format!("translate {:?}", q.tau))?;
    Ok(format!("5 indecomposables, add{{{}}}", labels.join(",")))
}

fn nakayama_formulas() -> Outcome {
    let mut checked = 0;
    let mut cases: Vec<(BoundQuiverAlgebra, Box<dyn Fn(usize) -> bool>)> = Vec::new();
    for n in 1..=6 {
        cases.push((make_a_n_mod_j2(n).unwrap(), Box::new(move |d| (n - 1) % d == 0)));
    }
    for n in 1..=5 {
        cases.push((make_tilde_a_n_mod_j2(n).unwrap(), Box::new(move |d| (n + 1) % d == 0)));
    }
    for (alg, formula) in &cases {
        let cat = IndecCatalog::new(alg, Field::default(), 16, 4).map_err(|e| e.to_string())?;
        let classified = classify_weakly_drf(alg).map_err(|e| e.to_string())?;
        for d in 2..=5 {
            let found = !search_dct_module(&cat, d).map_err(|e| e.to_string())?.is_empty();
            ensure(found == formula(d), || format!("{:?} d={d}: search says {found}", alg.shape()))?;
            ensure(classified.contains(d) == found, || format!("{:?} d={d}: classifier disagrees", alg.shape()))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (algebra, d) pairs"))
}

fn corpus_dichotomy() -> Outcome {
    let corpus = gentle_corpus(4, 5).map_err(|e| e.to_string())?;
    let results: Vec<Result<bool, String>> = corpus
        .par_iter()
        .map(|alg| {
            let f = Field::default();
            let nakayama = is_rad2_nakayama(alg);
            let mut skipped = false;
            match IndecCatalog::new(alg, f, 40, 3) {
                Ok(cat) => {
                    for d in 2..=4 {
                        let found = !search_dct_module(&cat, d).map_err(|e| e.to_string())?.is_empty();
                        ensure(!found || nakayama, || format!("{}: {d}-cluster tilting but not Nakayama", alg.serialize()))?;
                    }
                }
                Err(_) => skipped = true,
            }
            if !nakayama {
                let obs = find_obstruction_vertex(alg).map_err(|e| e.to_string())?;
                let obs = obs.ok_or_else(|| format!("{}: no obstruction vertex", alg.serialize()))?;
                let x = obs.vertex;
                let inj = Representation::injective(alg, f, x).map_err(|e| e.to_string())?;
                let proj = Representation::projective(alg, f, x).map_err(|e| e.to_string())?;
                let e = ext_dim(alg, &inj, &proj, 1).map_err(|e| e.to_string())?;
                ensure(e >= 1, || format!("{}: Ext^1(I_x, P_x) = 0 at obstruction", alg.serialize()))?;
            }
            Ok(skipped)
        })
        .collect();
    let mut skipped = 0;
    for r in results {
        skipped += usize::from(r?);
    }
    Ok(format!("{} algebras, {skipped} with bands skipped in the search", corpus.len()))
}

fn worked_arc() -> Outcome {
    let k = disk(3)?;
    let f = Field::default();
    let x = k.parse_arc("arc(1,4)@0").map_err(|e| e.to_string())?;
    let c = k.arc_to_complex(&x, f).map_err(|e| e.to_string())?;
    let terms: Vec<(i32, Vec<usize>)> = c.terms().iter().map(|(&k, v)| (k, v.clone())).collect();
    ensure(terms == vec![(-2, vec![2]), (-1, vec![1]), (0, vec![0])], || format!("terms {terms:?}"))?;
    let p3 = k.parse_arc("arc(3,4)@0").map_err(|e| e.to_string())?;
    let geo = k.hom_dim(&x, &p3, 2);
    let pc = k.arc_to_complex(&p3, f).map_err(|e| e.to_string())?;
    let alg_dim = homotopy_hom_dim(k.algebra(), f, &c, &pc, 2).map_err(|e| e.to_string())?;
    ensure(geo == 1 && alg_dim == 1, || format!("geometric {geo}, homotopy {alg_dim}"))?;
    Ok("P_3 -> P_2 -> P_1 in degrees -2..0, Hom = 1".into())
}

fn geometric_hom_oracle() -> Outcome {
    let f = Field::default();
    let mut compared = 0usize;
    for n in 2..=4 {
        let k = disk(n)?;
        let w = n as i32 + 1;
        let arcs = k.universe(w);
        let complexes = arcs.iter().map(|x| k.arc_to_complex(x, f)).collect::<Result<Vec<_>, _>>().map_err(|e| e.to_string())?;
        let mismatches: Vec<String> = (0..arcs.len())
            .into_par_iter()
            .flat_map_iter(|i| {
                let (k, arcs, complexes) = (&k, &arcs, &complexes);
                (0..arcs.len()).flat_map(move |j| {
                    (-w..=w).filter_map(move |s| {
                        let got = k.hom_dim(&arcs[i], &arcs[j], s);
                        match homotopy_hom_dim(k.algebra(), f, &complexes[i], &complexes[j], s) {
                            Ok(want) if want == got => None,
                            Ok(want) => Some(format!("n={n} {} -> {} [{s}]: {got} vs {want}", arcs[i], arcs[j])),
                            Err(e) => Some(format!("n={n} {} -> {} [{s}]: {e}", arcs[i], arcs[j])),
                        }
                    })
                })
            })
            .collect();
        ensure(mismatches.is_empty(), || format!("{} mismatches, first {}", mismatches.len(), mismatches[0]))?;
        compared += arcs.len() * arcs.len() * (2 * w as usize + 1);
    }
    Ok(format!("{compared} comparisons, 0 mismatches"))
}

fn translate_dichotomy() -> Outcome {
    let mut arcs_checked = 0;
    for n in 1..=6 {
        let k = disk(n)?;
        for x in k.universe(0) {
            let h = k.hom_tau_self(&x).map_err(|e| e.to_string())?;
            if k.is_minimal(&x) {
                ensure(h == 0, || format!("n={n} minimal {x}: {h}"))?;
            } else {
                let (_, middle) = k.ar_triangle(&x).map_err(|e| e.to_string())?;
                ensure(h >= 1 && middle.len() == 2, || format!("n={n} {x}: hom {h}, {} middle terms", middle.len()))?;
            }
            arcs_checked += 1;
        }
    }
    Ok(format!("{arcs_checked} arcs"))
}

fn matches_boundary_walk(k: &Disk, u: &DerivedSubcat, universe: &[GradedArc]) -> Result<bool, String> {
    for x in universe.iter().filter(|x| k.is_minimal(x)) {
        let v = k.v_x_d(x, u.d).map_err(|e| e.to_string())?;
        if (0..u.d as i32).any(|j| v.shifted(j) == *u) {
            return Ok(true);
        }
    }
    Ok(false)
}

fn derived_classification() -> Outcome {
    let mut hits = Vec::new();
    for n in 2..=5 {
        let k = disk(n)?;
        for d in 2..=5 {
            let window = k.default_window(d);
            let found = k.search_dct_derived(d, window).map_err(|e| e.to_string())?;
            let expected = n >= 3 && d == n - 1;
            ensure(found.is_empty() != expected, || format!("n={n} d={d}: {} results", found.len()))?;
            if expected {
                ensure(found.len() == d, || format!("n={n} d={d}: {} results, expected {d}", found.len()))?;
                let universe = k.universe(1);
                for u in &found {
                    ensure(matches_boundary_walk(&k, u, &universe)?, || format!("n={n} d={d}: stray result"))?;
                }
                hits.push(format!("({n},{d})"));
            }
        }
    }
    Ok(format!("nonempty exactly at {}", hits.join(" ")))
}

fn serre_identity() -> Outcome {
    let mut checked = 0;
    for n in 1..=4 {
        let k = disk(n)?;
        let arcs = k.universe(n as i32 + 1);
        for x in &arcs {
            let tx = k.tau(x).map_err(|e| e.to_string())?;
            for y in &arcs {
                for i in -2..=2 {
                    let lhs = k.hom_dim(y, &tx, 1 + i);
                    let rhs = k.hom_dim(x, y, -i);
                    ensure(lhs == rhs, || format!("n={n} X={x} Y={y} i={i}: {lhs} vs {rhs}"))?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} triples, 0 violations"))
}

fn dissection_models() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for s in 0..200 {
        let d = random_dissection(&mut rng, 8);
        ensure(d.polygons().len() <= 8, || format!("sample {s}: {} polygons", d.polygons().len()))?;
        let alg = algebra_from_dissection(&d).map_err(|e| format!("sample {s}: {e}"))?;
        let report = alg.is_gentle();
        ensure(report.gentle, || format!("sample {s}: {:?}", report.violations))?;
    }
    for n in 1..=10 {
        let alg = algebra_from_dissection(&disk_model(n).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        ensure(alg == make_a_n_mod_j2(n).unwrap(), || format!("disk model {n}: {}", alg.serialize()))?;
    }
    Ok("200 random dissections gentle, disk models 1..10 exact".into())
}

fn main() -> ExitCode {
    let checks: [(u32, &str, u64, fn() -> Outcome); 9] = [
        (1, "three-vertex line modulo radical square", 1, three_vertex_line),
        (2, "Nakayama brute force against formulas", 30, nakayama_formulas),
        (3, "small gentle corpus dichotomy", 120, corpus_dichotomy),
        (4, "worked arc complex and Hom", 1, worked_arc),
        (5, "geometric Hom against homotopy oracle", 120, geometric_hom_oracle),
        (6, "translate self-Hom dichotomy", 30, translate_dichotomy),
        (7, "derived cluster tilting classification", 300, derived_classification),
        (8, "Serre duality identity", 60, serre_identity),
        (9, "dissections give gentle algebras", 60, dissection_models),
    ];
    let mut failed = 0;
    for (id, name, limit, run) in checks {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let over = took > Duration::from_secs(limit);
        let (verdict, detail) = match (&outcome, over) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("{d}; over the {limit}s limit")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if verdict == "FAIL" {
            failed += 1;
        }
        println!("criterion {id}: {verdict} [{name}] {:.2}s (limit {limit}s): {detail}", took.as_secs_f64());
    }
    println!("{} of 9 criteria passed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
