//! Strings (reduced walks avoiding relations), string modules, and the
//! projective/injective strings used by the overlap-extension obstruction.

use serde::Serialize;
use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Representation};
use crate::quiver::BoundQuiverAlgebra;

/// An arrow or its formal inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub arrow: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn direct(arrow: usize) -> Self {
        Letter { arrow, inverse: false }
    }

    pub fn inv(arrow: usize) -> Self {
        Letter { arrow, inverse: true }
    }

    pub fn source(self, alg: &BoundQuiverAlgebra) -> usize {
        let a = &alg.arrows()[self.arrow];
        if self.inverse {
            a.target
        } else {
            a.source
        }
    }

    pub fn target(self, alg: &BoundQuiverAlgebra) -> usize {
        let a = &alg.arrows()[self.arrow];
        if self.inverse {
            a.source
        } else {
            a.target
        }
    }

    pub fn flipped(self) -> Self {
        Letter { arrow: self.arrow, inverse: !self.inverse }
    }
}

/// A walk; `base` is its start vertex (the only data of a trivial string).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StringWord {
    pub base: usize,
    pub letters: Vec<Letter>,
}

impl StringWord {
    pub fn trivial(v: usize) -> Self {
        StringWord { base: v, letters: Vec::new() }
    }

    pub fn from_letters(alg: &BoundQuiverAlgebra, letters: Vec<Letter>) -> Self {
        let base = letters.first().map_or(0, |l| l.source(alg));
        StringWord { base, letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn end(&self, alg: &BoundQuiverAlgebra) -> usize {
        self.letters.last().map_or(self.base, |l| l.target(alg))
    }

    pub fn inverse(&self, alg: &BoundQuiverAlgebra) -> Self {
        StringWord {
            base: self.end(alg),
            letters: self.letters.iter().rev().map(|l| l.flipped()).collect(),
        }
    }

    /// Vertices visited, in order (length + 1 entries).
    pub fn vertices(&self, alg: &BoundQuiverAlgebra) -> Vec<usize> {
        std::iter::once(self.base).chain(self.letters.iter().map(|l| l.target(alg))).collect()
    }

    /// The lexicographically smaller of w and w^-1.
    pub fn canonical(&self, alg: &BoundQuiverAlgebra) -> Self {
        let inv = self.inverse(alg);
        if self.letters.is_empty() || self.letters <= inv.letters {
            self.clone()
        } else {
            inv
        }
    }

    pub fn display(&self, alg: &BoundQuiverAlgebra) -> String {
        if self.letters.is_empty() {
            return format!("e({})", alg.vertices()[self.base]);
        }
        self.letters
            .iter()
            .map(|l| {
                let name = &alg.arrows()[l.arrow].name;
                if l.inverse {
                    format!("{name}^-1")
                } else {
                    name.clone()
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Parses `a b^-1 c` or `e(v)`.
    pub fn parse(alg: &BoundQuiverAlgebra, text: &str) -> Result<Self> {
        let t = text.trim();
        if let Some(v) = t.strip_prefix("e(").and_then(|s| s.strip_suffix(')')) {
            return Ok(StringWord::trivial(alg.vertex_index(v.trim())?));
        }
        let letters = t
            .split_whitespace()
            .map(|tok| match tok.strip_suffix("^-1") {
                Some(name) => alg.arrow_index(name).map(Letter::inv),
                None => alg.arrow_index(tok).map(Letter::direct),
            })
            .collect::<Result<Vec<_>>>()?;
        if letters.is_empty() {
            return Err(Error::NotAString("empty word without base vertex".into()));
        }
        Ok(StringWord::from_letters(alg, letters))
    }
}

/// Serializable view of a string: its printed form and dimension vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StringView {
    pub word: String,
    pub dims: Vec<usize>,
}

impl StringView {
    pub fn new(alg: &BoundQuiverAlgebra, w: &StringWord) -> Self {
        let mut dims = vec![0; alg.vertex_count()];
        for v in w.vertices(alg) {
            dims[v] += 1;
        }
        StringView { word: w.display(alg), dims }
    }
}

/// Whether `next` may follow `prev` in a string.
pub fn valid_pair(alg: &BoundQuiverAlgebra, prev: Letter, next: Letter) -> bool {
    if prev.target(alg) != next.source(alg) {
        return false;
    }
    if prev.arrow == next.arrow && prev.inverse != next.inverse {
        return false;
    }
    match (prev.inverse, next.inverse) {
        (false, false) => !alg.is_relation(prev.arrow, next.arrow),
        (true, true) => !alg.is_relation(next.arrow, prev.arrow),
        _ => true,
    }
}

/// Composability, reducedness and the relation-avoidance condition.
pub fn is_string(alg: &BoundQuiverAlgebra, w: &StringWord) -> bool {
    if let Some(first) = w.letters.first() {
        if first.source(alg) != w.base {
            return false;
        }
    } else if w.base >= alg.vertex_count() {
        return false;
    }
    w.letters.windows(2).all(|p| valid_pair(alg, p[0], p[1]))
}

pub fn all_letters(alg: &BoundQuiverAlgebra) -> Vec<Letter> {
    (0..alg.arrow_count()).flat_map(|a| [Letter::direct(a), Letter::inv(a)]).collect()
}

/// Length of the longest string, or `None` when arbitrarily long strings
/// exist (a cycle in the letter-transition graph, i.e. bands).
pub fn max_string_length(alg: &BoundQuiverAlgebra) -> Option<usize> {
    let letters = all_letters(alg);
    if letters.is_empty() {
        return Some(0);
    }
    let idx = |l: Letter| 2 * l.arrow + l.inverse as usize;
    // longest path (in letters) starting at each letter, via DFS with colours
    let n = letters.len();
    let mut state = vec![0u8; n];
    let mut longest = vec![0usize; n];
    fn visit(
        alg: &BoundQuiverAlgebra,
        letters: &[Letter],
        i: usize,
        state: &mut [u8],
        longest: &mut [usize],
        idx: &dyn Fn(Letter) -> usize,
    ) -> bool {
        state[i] = 1;
        let mut best = 1;
        for &next in letters {
            if !valid_pair(alg, letters[i], next) {
                continue;
            }
            let j = idx(next);
            match state[j] {
                1 => return false,
                0 => {
                    if !visit(alg, letters, j, state, longest, idx) {
                        return false;
                    }
                }
                _ => {}
            }
            best = best.max(1 + longest[j]);
        }
        longest[i] = best;
        state[i] = 2;
        true
    }
    for i in 0..n {
        if state[i] == 0 && !visit(alg, &letters, i, &mut state, &mut longest, &idx) {
            return None;
        }
    }
    longest.into_iter().max()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StringEnumeration {
    pub strings: Vec<StringWord>,
    /// Longer strings exist beyond `max_len`.
    pub truncated: bool,
}

/// All strings of length at most `max_len`, one per {w, w^-1}, trivial ones first.
pub fn enumerate_strings(alg: &BoundQuiverAlgebra, max_len: usize) -> StringEnumeration {
    let mut found: BTreeSet<(usize, StringWord)> = BTreeSet::new();
    for v in 0..alg.vertex_count() {
        found.insert((0, StringWord::trivial(v)));
    }
    let letters = all_letters(alg);
    let mut frontier: Vec<Vec<Letter>> = if max_len >= 1 { letters.iter().map(|&l| vec![l]).collect() } else { Vec::new() };
    let mut truncated = max_len == 0 && !letters.is_empty();
    let mut len = 1;
    while !frontier.is_empty() {
        for w in &frontier {
            let word = StringWord::from_letters(alg, w.clone()).canonical(alg);
            found.insert((len, word));
        }
        let next: Vec<Vec<Letter>> = frontier
            .iter()
            .flat_map(|w| {
                let last = *w.last().unwrap();
                letters.iter().filter(move |&&l| valid_pair(alg, last, l)).map(move |&l| {
                    let mut x = w.clone();
                    x.push(l);
                    x
                })
            })
            .collect();
        if len == max_len {
            truncated = !next.is_empty();
            break;
        }
        frontier = next;
        len += 1;
    }
    StringEnumeration { strings: found.into_iter().map(|(_, w)| w).collect(), truncated }
}

/// M(w): a copy of the field at each visited vertex, identities along letters.
pub fn string_module(alg: &BoundQuiverAlgebra, field: Field, w: &StringWord) -> Result<Representation> {
    if !is_string(alg, w) {
        return Err(Error::NotAString(w.display(alg)));
    }
    let verts = w.vertices(alg);
    let mut dims = vec![0; alg.vertex_count()];
    let local: Vec<usize> = verts
        .iter()
        .map(|&v| {
            dims[v] += 1;
            dims[v] - 1
        })
        .collect();
    let mut maps: Vec<Matrix> =
        alg.arrows().iter().map(|a| Matrix::zeros(dims[a.target], dims[a.source])).collect();
    for (i, l) in w.letters.iter().enumerate() {
        // basis element i sits before the letter, i + 1 after it
        let (from, to) = if l.inverse { (i + 1, i) } else { (i, i + 1) };
        maps[l.arrow].set(local[to], local[from], 1);
    }
    Representation::new(alg, field, dims, maps)
}

/// Maximal nonzero path starting with arrow `a`.
fn forward_path(alg: &BoundQuiverAlgebra, a: usize) -> Vec<usize> {
    let mut path = vec![a];
    loop {
        let last = *path.last().unwrap();
        match alg.successors(last).find(|&b| !alg.is_relation(last, b)) {
            Some(b) if path.len() <= alg.arrow_count() => path.push(b),
            _ => return path,
        }
    }
}

/// Maximal nonzero path ending with arrow `a`.
fn backward_path(alg: &BoundQuiverAlgebra, a: usize) -> Vec<usize> {
    let mut path = vec![a];
    loop {
        let first = path[0];
        let src = alg.arrows()[first].source;
        match alg.in_arrows(src).find(|&c| !alg.is_relation(c, first)) {
            Some(c) if path.len() <= alg.arrow_count() => path.insert(0, c),
            _ => return path,
        }
    }
}

fn two_sided(alg: &BoundQuiverAlgebra, x: usize, left: Vec<Letter>, right: Vec<Letter>) -> StringWord {
    let mut letters = left;
    letters.extend(right);
    if letters.is_empty() {
        StringWord::trivial(x)
    } else {
        StringWord::from_letters(alg, letters)
    }
}

/// String of P_x: the inverse of one maximal path out of x, then the other.
pub fn projective_string(alg: &BoundQuiverAlgebra, x: usize) -> Result<StringWord> {
    alg.require_gentle()?;
    let outs: Vec<usize> = alg.out_arrows(x).collect();
    let left: Vec<Letter> = outs
        .first()
        .map(|&g| forward_path(alg, g).into_iter().rev().map(Letter::inv).collect())
        .unwrap_or_default();
    let right: Vec<Letter> =
        outs.get(1).map(|&d| forward_path(alg, d).into_iter().map(Letter::direct).collect()).unwrap_or_default();
    Ok(two_sided(alg, x, left, right).canonical(alg))
}

/// String of I_x: one maximal path into x, then the inverse of the other.
pub fn injective_string(alg: &BoundQuiverAlgebra, x: usize) -> Result<StringWord> {
    alg.require_gentle()?;
    let ins: Vec<usize> = alg.in_arrows(x).collect();
    let left: Vec<Letter> =
        ins.first().map(|&a| backward_path(alg, a).into_iter().map(Letter::direct).collect()).unwrap_or_default();
    let right: Vec<Letter> = ins
        .get(1)
        .map(|&b| backward_path(alg, b).into_iter().rev().map(Letter::inv).collect())
        .unwrap_or_default();
    Ok(two_sided(alg, x, left, right).canonical(alg))
}

/// Arrows around a vertex placed in the four slots: in-arrows alpha, beta and
/// out-arrows gamma, delta with alpha gamma and beta delta relations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Labeling {
    pub alpha: Option<usize>,
    pub beta: Option<usize>,
    pub gamma: Option<usize>,
    pub delta: Option<usize>,
}

fn labelings(alg: &BoundQuiverAlgebra, x: usize) -> Vec<Labeling> {
    let ins: Vec<usize> = alg.in_arrows(x).collect();
    let outs: Vec<usize> = alg.out_arrows(x).collect();
    let slot_choices = |arrows: &[usize]| -> Vec<(Option<usize>, Option<usize>)> {
        match arrows {
            [] => vec![(None, None)],
            [a] => vec![(Some(*a), None), (None, Some(*a))],
            [a, b] => vec![(Some(*a), Some(*b)), (Some(*b), Some(*a))],
            _ => Vec::new(),
        }
    };
    let mut out = Vec::new();
    for (alpha, beta) in slot_choices(&ins) {
        for (gamma, delta) in slot_choices(&outs) {
            let rel = |p: Option<usize>, q: Option<usize>, want: bool| match (p, q) {
                (Some(p), Some(q)) => alg.is_relation(p, q) == want,
                _ => true,
            };
            if rel(alpha, gamma, true) && rel(beta, delta, true) && rel(alpha, delta, false) && rel(beta, gamma, false) {
                out.push(Labeling { alpha, beta, gamma, delta });
            }
        }
    }
    out
}

fn obstructing_labeling(alg: &BoundQuiverAlgebra, x: usize) -> Option<Labeling> {
    labelings(alg, x)
        .into_iter()
        .find(|l| (l.alpha.is_some() || l.gamma.is_some()) && (l.beta.is_some() || l.delta.is_some()))
}

/// The non-split sequence P_x -> middle -> I_x exists at x.
pub fn overlap_extension_exists(alg: &BoundQuiverAlgebra, x: usize) -> Result<bool> {
    alg.require_gentle()?;
    Ok(obstructing_labeling(alg, x).is_some())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Obstruction {
    pub vertex: usize,
    pub projective: StringWord,
    pub middle: [StringWord; 2],
    pub injective: StringWord,
}

#[derive(Serialize)]
pub struct ObstructionView {
    pub vertex: String,
    pub projective: String,
    pub middle: [String; 2],
    pub injective: String,
}

impl Obstruction {
    pub fn view(&self, alg: &BoundQuiverAlgebra) -> ObstructionView {
        ObstructionView {
            vertex: alg.vertices()[self.vertex].clone(),
            projective: self.projective.display(alg),
            middle: [self.middle[0].display(alg), self.middle[1].display(alg)],
            injective: self.injective.display(alg),
        }
    }
}

/// First vertex with an overlap extension, with the four strings of the sequence.
pub fn find_obstruction_vertex(alg: &BoundQuiverAlgebra) -> Result<Option<Obstruction>> {
    alg.require_gentle()?;
    for x in 0..alg.vertex_count() {
        let Some(l) = obstructing_labeling(alg, x) else { continue };
        let fwd = |a: Option<usize>| a.map(|a| forward_path(alg, a)).unwrap_or_default();
        let bwd = |a: Option<usize>| a.map(|a| backward_path(alg, a)).unwrap_or_default();
        let (pg, pd) = (fwd(l.gamma), fwd(l.delta));
        let (va, vb) = (bwd(l.alpha), bwd(l.beta));
        let projective = two_sided(
            alg,
            x,
            pg.iter().rev().map(|&a| Letter::inv(a)).collect(),
            pd.iter().map(|&a| Letter::direct(a)).collect(),
        );
        let injective = two_sided(
            alg,
            x,
            va.iter().map(|&a| Letter::direct(a)).collect(),
            vb.iter().rev().map(|&a| Letter::inv(a)).collect(),
        );
        let through = |left: &[usize], right: &[usize]| {
            two_sided(
                alg,
                x,
                left.iter().map(|&a| Letter::direct(a)).collect(),
                right.iter().map(|&a| Letter::direct(a)).collect(),
            )
        };
        let middle = [through(&va, &pd), through(&vb, &pg)];
        return Ok(Some(Obstruction { vertex: x, projective, middle, injective }));
    }
    Ok(None)
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.arrow, if self.inverse { "^-1" } else { "" })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rep::{ext_dim, hom_dim, is_isomorphic_indecomposable};
    use crate::quiver::{make_a_n, make_a_n_mod_j2, make_k33, make_tilde_a_n_mod_j2};

    #[test]
    fn string_validity_in_a3_mod_j2() {
        let alg = make_a_n_mod_j2(3).unwrap();
        let w = |s| StringWord::parse(&alg, s).unwrap();
        assert!(is_string(&alg, &w("a")));
        assert!(!is_string(&alg, &w("a b")));
        assert!(!is_string(&alg, &w("a a^-1")));
        assert!(is_string(&alg, &w("e(2)")));
        assert!(StringWord::parse(&alg, "z").is_err());
    }

    #[test]
    fn enumeration_counts() {
        let alg = make_a_n_mod_j2(3).unwrap();
        let e = enumerate_strings(&alg, 4);
        assert_eq!(e.strings.len(), 5);
        assert!(!e.truncated);
        let k = make_a_n_mod_j2(1).unwrap();
        assert_eq!(enumerate_strings(&k, 3).strings.len(), 1);
        let cyc = make_tilde_a_n_mod_j2(3).unwrap();
        let e = enumerate_strings(&cyc, 4);
        assert_eq!(e.strings.len(), 8);
        assert!(!e.truncated);
        assert!(enumerate_strings(&make_a_n(4).unwrap(), 1).truncated);
    }

    #[test]
    fn string_modules() {
        let alg = make_a_n_mod_j2(3).unwrap();
        let f = Field::default();
        let s2 = string_module(&alg, f, &StringWord::trivial(1)).unwrap();
        assert_eq!(s2.dims(), &[0, 1, 0]);
        let p1 = string_module(&alg, f, &StringWord::parse(&alg, "a").unwrap()).unwrap();
        assert_eq!(p1.dims(), &[1, 1, 0]);
        assert_eq!(hom_dim(&alg, &p1, &s2).unwrap(), 0);
    }

    #[test]
    fn projective_and_injective_strings() {
        let alg = make_a_n_mod_j2(3).unwrap();
        assert_eq!(projective_string(&alg, 0).unwrap().display(&alg), "a");
        assert_eq!(projective_string(&alg, 2).unwrap(), StringWord::trivial(2));
        assert_eq!(injective_string(&alg, 0).unwrap(), StringWord::trivial(0));
    }

    #[test]
    fn projective_strings_match_projectives_on_k33() {
        let alg = make_k33(21);
        let f = Field::default();
        for x in 0..alg.vertex_count() {
            let p = string_module(&alg, f, &projective_string(&alg, x).unwrap()).unwrap();
            let q = Representation::projective(&alg, f, x).unwrap();
            assert!(is_isomorphic_indecomposable(&alg, &p, &q).unwrap());
            let i = string_module(&alg, f, &injective_string(&alg, x).unwrap()).unwrap();
            let j = Representation::injective(&alg, f, x).unwrap();
            assert!(is_isomorphic_indecomposable(&alg, &i, &j).unwrap());
        }
    }

    #[test]
    fn obstruction_examples() {
        let f = Field::default();
        let a3 = make_a_n_mod_j2(3).unwrap();
        for x in 0..3 {
            assert!(!overlap_extension_exists(&a3, x).unwrap());
        }
        assert!(find_obstruction_vertex(&make_a_n_mod_j2(4).unwrap()).unwrap().is_none());
        assert!(find_obstruction_vertex(&make_a_n_mod_j2(1).unwrap()).unwrap().is_none());
        let h = make_a_n(3).unwrap();
        let ob = find_obstruction_vertex(&h).unwrap().expect("hereditary A3 is obstructed");
        let p = Representation::projective(&h, f, ob.vertex).unwrap();
        let i = Representation::injective(&h, f, ob.vertex).unwrap();
        assert!(ext_dim(&h, &i, &p, 1).unwrap() >= 1);
        let k33 = make_k33(0);
        assert!((0..15).any(|x| overlap_extension_exists(&k33, x).unwrap()));
    }

    #[test]
    fn non_gentle_is_rejected() {
        let alg = BoundQuiverAlgebra::parse(
            "vertex 1\nvertex 2\nvertex 3\nvertex 4\narrow g 1 2\narrow a 2 3\narrow b 2 4\n",
        )
        .unwrap();
        assert!(overlap_extension_exists(&alg, 1).is_err());
        assert!(projective_string(&alg, 0).is_err());
    }
}
