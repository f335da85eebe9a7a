//! Exhaustive list of small connected gentle algebras up to isomorphism.

use rayon::prelude::*;
use std::collections::{BTreeMap, BTreeSet};

use crate::error::Result;
use crate::quiver::{arrow_name, Arrow, BoundQuiverAlgebra};

/// All connected gentle algebras with at most `max_vertices` vertices and
/// `max_arrows` arrows, one per isomorphism class, ordered by size.
pub fn gentle_corpus(max_vertices: usize, max_arrows: usize) -> Result<Vec<BoundQuiverAlgebra>> {
    let mut quivers = Vec::new();
    for n in 1..=max_vertices {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|s| (0..n).map(move |t| (s, t))).collect();
        let mut chosen = Vec::new();
        arrow_multisets(&pairs, 0, max_arrows, &mut chosen, &mut |arrows| {
            if degrees_ok(n, arrows) && connected(n, arrows) {
                quivers.push((n, arrows.to_vec()));
            }
        });
    }
    let per_quiver: Vec<Vec<BoundQuiverAlgebra>> = quivers
        .into_par_iter()
        .map(|(n, arrows)| gentle_bindings(n, &arrows))
        .collect::<Result<_>>()?;

    let mut buckets: BTreeMap<(usize, usize, String), Vec<BoundQuiverAlgebra>> = BTreeMap::new();
    for alg in per_quiver.into_iter().flatten() {
        let key = (alg.vertex_count(), alg.arrow_count(), alg.canonical_key());
        let bucket = buckets.entry(key).or_default();
        if !bucket.iter().any(|b| b.is_isomorphic(&alg)) {
            bucket.push(alg);
        }
    }
    Ok(buckets.into_values().flatten().collect())
}

/// Multisets of arrows (as vertex pairs) of size at most `left`, each pair
/// used at most twice since a gentle vertex has at most two outgoing arrows.
fn arrow_multisets(
    pairs: &[(usize, usize)],
    from: usize,
    left: usize,
    chosen: &mut Vec<(usize, usize)>,
    emit: &mut dyn FnMut(&[(usize, usize)]),
) {
    emit(chosen);
    if left == 0 {
        return;
    }
    for i in from..pairs.len() {
        let uses = chosen.iter().filter(|&&p| p == pairs[i]).count();
        if uses == 2 {
            continue;
        }
        chosen.push(pairs[i]);
        arrow_multisets(pairs, i, left - 1, chosen, emit);
        chosen.pop();
    }
}

fn degrees_ok(n: usize, arrows: &[(usize, usize)]) -> bool {
    (0..n).all(|v| {
        arrows.iter().filter(|a| a.0 == v).count() <= 2 && arrows.iter().filter(|a| a.1 == v).count() <= 2
    })
}

fn connected(n: usize, arrows: &[(usize, usize)]) -> bool {
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &(s, t) in arrows {
            for (x, y) in [(s, t), (t, s)] {
                if x == v && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Every relation set on the quiver that makes it gentle.
fn gentle_bindings(n: usize, pairs: &[(usize, usize)]) -> Result<Vec<BoundQuiverAlgebra>> {
    let vertices: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let arrows: Vec<Arrow> = pairs
        .iter()
        .enumerate()
        .map(|(i, &(source, target))| Arrow { name: arrow_name(i, pairs.len()), source, target })
        .collect();
    let composable: Vec<(usize, usize)> = (0..arrows.len())
        .flat_map(|a| (0..arrows.len()).map(move |b| (a, b)))
        .filter(|&(a, b)| arrows[a].target == arrows[b].source)
        .collect();
    let mut out = Vec::new();
    for mask in 0u64..(1 << composable.len()) {
        let rels: BTreeSet<(usize, usize)> =
            composable.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect();
        let alg = BoundQuiverAlgebra::from_indices(vertices.clone(), arrows.clone(), rels)?;
        if alg.is_gentle().gentle {
            out.push(alg);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{make_a_n, make_a_n_mod_j2, Shape};

    #[test]
    fn tiny_corpus() {
        // K, K[x]/x^2, KA_2
        let c = gentle_corpus(1, 1).unwrap();
        assert_eq!(c.len(), 2);
        let c = gentle_corpus(2, 1).unwrap();
        assert_eq!(c.len(), 3);
    }

    #[test]
    fn corpus_is_duplicate_free_and_contains_known_algebras() {
        let c = gentle_corpus(3, 3).unwrap();
        for (i, a) in c.iter().enumerate() {
            assert!(a.is_gentle().gentle && a.is_connected());
            for b in &c[i + 1..] {
                assert!(!a.is_isomorphic(b));
            }
        }
        for known in [make_a_n(3).unwrap(), make_a_n_mod_j2(3).unwrap()] {
            assert_eq!(c.iter().filter(|a| a.is_isomorphic(&known)).count(), 1);
        }
        assert!(c.iter().any(|a| a.shape() == Shape::CyclicNakayama(1) && a.is_radical_square_zero()));
    }
}
