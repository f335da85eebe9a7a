//! Bounded complexes of indecomposable projectives and Hom in the homotopy
//! category.
//!
//! A map P_x -> P_y is left multiplication by a combination of paths from y
//! to x; following it by a map P_y -> P_z given by a path q from z to y gives
//! the path "q then p".

use serde::{Serialize, Serializer};
use std::collections::{BTreeMap, HashMap};

use super::matrix::{Field, Matrix};
use crate::error::{Error, Result};
use crate::quiver::{BoundQuiverAlgebra, Path};

/// A linear combination of nonzero paths.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PathCombo(pub BTreeMap<Path, u32>);

impl PathCombo {
    pub fn zero() -> Self {
        PathCombo(BTreeMap::new())
    }

    pub fn single(p: Path) -> Self {
        PathCombo(BTreeMap::from([(p, 1)]))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn add_term(&mut self, f: Field, p: Path, c: u32) {
        let entry = self.0.entry(p.clone()).or_insert(0);
        *entry = f.add(*entry, c);
        if *entry == 0 {
            self.0.remove(&p);
        }
    }

    /// `first` followed by `self` as maps of projectives: paths "self then first".
    fn after(&self, alg: &BoundQuiverAlgebra, f: Field, first: &PathCombo) -> PathCombo {
        let mut out = PathCombo::zero();
        for (q, &a) in &self.0 {
            for (p, &b) in &first.0 {
                if let Some(r) = alg.compose(q, p) {
                    out.add_term(f, r, f.mul(a, b));
                }
            }
        }
        out
    }

    pub fn display(&self, alg: &BoundQuiverAlgebra) -> String {
        if self.0.is_empty() {
            return "0".into();
        }
        self.0
            .iter()
            .map(|(p, &c)| {
                let name = path_text(alg, p);
                if c == 1 {
                    name
                } else {
                    format!("{c}*{name}")
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

fn path_text(alg: &BoundQuiverAlgebra, p: &Path) -> String {
    if p.is_trivial() {
        format!("e({})", alg.vertices()[p.source])
    } else {
        p.arrows.iter().map(|&a| alg.arrows()[a].name.as_str()).collect::<Vec<_>>().join(".")
    }
}

fn parse_path(alg: &BoundQuiverAlgebra, s: &str) -> Result<Path> {
    let s = s.trim();
    if let Some(v) = s.strip_prefix("e(").and_then(|x| x.strip_suffix(')')) {
        return Ok(Path::trivial(alg.vertex_index(v.trim())?));
    }
    let arrows = s.split('.').map(|a| alg.arrow_index(a.trim())).collect::<Result<Vec<_>>>()?;
    let mut p = Path {
        source: alg.arrows()[arrows[0]].source,
        target: alg.arrows()[arrows[0]].target,
        arrows: vec![arrows[0]],
    };
    for &a in &arrows[1..] {
        let q = Path { source: alg.arrows()[a].source, target: alg.arrows()[a].target, arrows: vec![a] };
        p = alg
            .compose(&p, &q)
            .ok_or_else(|| Error::InvalidComplex(format!("path `{s}` is zero or not composable")))?;
    }
    Ok(p)
}

/// Bounded complex of projectives: `terms[k]` lists the vertices x of the
/// summands P_x in degree k; `diffs[k]` has one row per summand of degree k+1
/// and one column per summand of degree k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjComplex {
    terms: BTreeMap<i32, Vec<usize>>,
    diffs: BTreeMap<i32, Vec<Vec<PathCombo>>>,
}

impl ProjComplex {
    pub fn new(
        alg: &BoundQuiverAlgebra,
        field: Field,
        terms: BTreeMap<i32, Vec<usize>>,
        diffs: BTreeMap<i32, Vec<Vec<PathCombo>>>,
    ) -> Result<Self> {
        let terms: BTreeMap<i32, Vec<usize>> = terms.into_iter().filter(|(_, v)| !v.is_empty()).collect();
        let c = ProjComplex { terms, diffs };
        c.validate(alg, field)?;
        Ok(c)
    }

    pub fn stalk(x: usize, degree: i32) -> Self {
        ProjComplex { terms: BTreeMap::from([(degree, vec![x])]), diffs: BTreeMap::new() }
    }

    pub fn terms(&self) -> &BTreeMap<i32, Vec<usize>> {
        &self.terms
    }

    pub fn term(&self, k: i32) -> &[usize] {
        self.terms.get(&k).map_or(&[], Vec::as_slice)
    }

    pub fn diff_entry(&self, k: i32, row: usize, col: usize) -> PathCombo {
        self.diffs
            .get(&k)
            .and_then(|m| m.get(row))
            .and_then(|r| r.get(col))
            .cloned()
            .unwrap_or_default()
    }

    fn degree_range(&self) -> Option<(i32, i32)> {
        Some((*self.terms.keys().next()?, *self.terms.keys().next_back()?))
    }

    /// X[i]: the term of degree k moves to degree k - i.
    pub fn shifted(&self, i: i32) -> Self {
        ProjComplex {
            terms: self.terms.iter().map(|(&k, v)| (k - i, v.clone())).collect(),
            diffs: self.diffs.iter().map(|(&k, v)| (k - i, v.clone())).collect(),
        }
    }

    fn validate(&self, alg: &BoundQuiverAlgebra, f: Field) -> Result<()> {
        for (&k, m) in &self.diffs {
            let (src, tgt) = (self.term(k), self.term(k + 1));
            if m.len() != tgt.len() || m.iter().any(|r| r.len() != src.len()) {
                return Err(Error::InvalidComplex(format!("differential in degree {k} has wrong shape")));
            }
            for (t, row) in m.iter().enumerate() {
                for (s, combo) in row.iter().enumerate() {
                    if combo.0.keys().any(|p| p.source != tgt[t] || p.target != src[s]) {
                        return Err(Error::InvalidComplex(format!(
                            "entry ({t},{s}) of d{k} has paths with wrong endpoints"
                        )));
                    }
                }
            }
        }
        for (&k, _) in &self.diffs {
            let (a, b, c) = (self.term(k), self.term(k + 1), self.term(k + 2));
            for z in 0..c.len() {
                for x in 0..a.len() {
                    let mut sum = PathCombo::zero();
                    for y in 0..b.len() {
                        let comp = self.diff_entry(k + 1, z, y).after(alg, f, &self.diff_entry(k, y, x));
                        for (p, c) in comp.0 {
                            sum.add_term(f, p, c);
                        }
                    }
                    if !sum.is_zero() {
                        return Err(Error::InvalidComplex(format!("d{} after d{} is nonzero", k + 1, k)));
                    }
                }
            }
        }
        Ok(())
    }

    /// Text format: `deg k: P_x P_y` lines, then `d k: [row; row]` with
    /// comma-separated entries such as `a.b + 2*e(1)`.
    pub fn to_text(&self, alg: &BoundQuiverAlgebra) -> String {
        let mut s = String::new();
        for (k, v) in &self.terms {
            let names: Vec<String> = v.iter().map(|&x| format!("P_{}", alg.vertices()[x])).collect();
            s.push_str(&format!("deg {k}: {}\n", names.join(" ")));
        }
        for (k, m) in &self.diffs {
            if m.iter().all(|r| r.iter().all(PathCombo::is_zero)) {
                continue;
            }
            let rows: Vec<String> = m
                .iter()
                .map(|r| r.iter().map(|c| c.display(alg)).collect::<Vec<_>>().join(", "))
                .collect();
            s.push_str(&format!("d {k}: [{}]\n", rows.join("; ")));
        }
        s
    }

    pub fn parse(alg: &BoundQuiverAlgebra, field: Field, text: &str) -> Result<Self> {
        let mut terms = BTreeMap::new();
        let mut diffs = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let syntax = |msg: &str| Error::Syntax { line: i + 1, msg: msg.to_string() };
            let (head, body) = line.split_once(':').ok_or_else(|| syntax("missing `:`"))?;
            let mut head = head.split_whitespace();
            let kind = head.next().unwrap_or("");
            let k: i32 = head
                .next()
                .and_then(|x| x.parse().ok())
                .ok_or_else(|| syntax("expected an integer degree"))?;
            match kind {
                "deg" => {
                    let vs = body
                        .split_whitespace()
                        .map(|t| {
                            t.strip_prefix("P_")
                                .ok_or_else(|| syntax("expected `P_<vertex>`"))
                                .and_then(|v| alg.vertex_index(v))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    terms.insert(k, vs);
                }
                "d" => {
                    let inner = body
                        .trim()
                        .strip_prefix('[')
                        .and_then(|x| x.strip_suffix(']'))
                        .ok_or_else(|| syntax("matrix must be in brackets"))?;
                    let mut rows = Vec::new();
                    for row in inner.split(';') {
                        let mut entries = Vec::new();
                        for entry in row.split(',') {
                            entries.push(parse_combo(alg, field, entry)?);
                        }
                        rows.push(entries);
                    }
                    diffs.insert(k, rows);
                }
                _ => return Err(syntax("expected `deg` or `d`")),
            }
        }
        ProjComplex::new(alg, field, terms, diffs)
    }
}

fn parse_combo(alg: &BoundQuiverAlgebra, f: Field, s: &str) -> Result<PathCombo> {
    let mut out = PathCombo::zero();
    let s = s.trim();
    if s == "0" {
        return Ok(out);
    }
    for term in s.split('+') {
        let (c, p) = match term.split_once('*') {
            Some((c, p)) => (
                c.trim().parse::<i64>().map_err(|_| Error::InvalidComplex(format!("bad coefficient `{c}`")))?,
                p,
            ),
            None => (1, term),
        };
        out.add_term(f, parse_path(alg, p)?, f.from_i64(c));
    }
    Ok(out)
}

#[derive(Serialize)]
struct ComplexJson {
    terms: BTreeMap<i32, Vec<String>>,
    differentials: BTreeMap<i32, Vec<Vec<String>>>,
}

/// JSON view of a complex (needs the algebra for names).
pub struct ComplexView<'a> {
    pub alg: &'a BoundQuiverAlgebra,
    pub complex: &'a ProjComplex,
}

impl Serialize for ComplexView<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let c = self.complex;
        ComplexJson {
            terms: c
                .terms
                .iter()
                .map(|(&k, v)| (k, v.iter().map(|&x| format!("P_{}", self.alg.vertices()[x])).collect()))
                .collect(),
            differentials: c
                .diffs
                .iter()
                .map(|(&k, m)| (k, m.iter().map(|r| r.iter().map(|e| e.display(self.alg)).collect()).collect()))
                .collect(),
        }
        .serialize(s)
    }
}

/// Index of the coordinates of maps between two complexes: for each degree k
/// and summand pair, one coordinate per nonzero path.
struct MapSpace {
    offsets: HashMap<(i32, usize, usize), usize>,
    size: usize,
}

fn paths_between(by_ends: &HashMap<(usize, usize), Vec<Path>>, y: usize, x: usize) -> &[Path] {
    by_ends.get(&(y, x)).map_or(&[], Vec::as_slice)
}

impl MapSpace {
    fn new(
        x: &ProjComplex,
        y: &ProjComplex,
        shift: i32,
        by_ends: &HashMap<(usize, usize), Vec<Path>>,
    ) -> Self {
        let mut offsets = HashMap::new();
        let mut size = 0;
        for (&k, xs) in &x.terms {
            let ys = y.term(k + shift);
            for (s, &xv) in xs.iter().enumerate() {
                for (t, &yv) in ys.iter().enumerate() {
                    offsets.insert((k, t, s), size);
                    size += paths_between(by_ends, yv, xv).len();
                }
            }
        }
        MapSpace { offsets, size }
    }
}

/// dim Hom_K(X, Y[i]) in the homotopy category of projectives.
pub fn homotopy_hom_dim(
    alg: &BoundQuiverAlgebra,
    field: Field,
    x: &ProjComplex,
    y: &ProjComplex,
    i: i32,
) -> Result<usize> {
    x.validate(alg, field)?;
    y.validate(alg, field)?;
    let (Some((xlo, xhi)), Some(_)) = (x.degree_range(), y.degree_range()) else {
        return Ok(0);
    };
    let f = field;
    let all_paths = alg.paths()?;
    let mut by_ends: HashMap<(usize, usize), Vec<Path>> = HashMap::new();
    for p in &all_paths {
        by_ends.entry((p.source, p.target)).or_default().push(p.clone());
    }
    let index_of = |p: &Path, y: usize, x: usize| -> usize {
        paths_between(&by_ends, y, x).iter().position(|q| q == p).expect("nonzero path")
    };

    // chain maps: f^k : X^k -> Y^{k+i}
    let fspace = MapSpace::new(x, y, i, &by_ends);
    // homotopies: h^k : X^k -> Y^{k+i-1}
    let hspace = MapSpace::new(x, y, i - 1, &by_ends);

    // chain condition rows: d_Y f^k - f^{k+1} d_X, as maps X^k -> Y^{k+i+1}
    let mut rows: Vec<Vec<(usize, u32)>> = Vec::new();
    for k in (xlo - 1)..=xhi {
        let xs = x.term(k);
        let ys_next = y.term(k + i + 1);
        for (s, &xv) in xs.iter().enumerate() {
            for (t2, &zv) in ys_next.iter().enumerate() {
                let targets = paths_between(&by_ends, zv, xv);
                let mut eqs: Vec<Vec<(usize, u32)>> = vec![Vec::new(); targets.len()];
                // d_Y^{k+i} f^k
                for (t, &yv) in y.term(k + i).iter().enumerate() {
                    let d = y.diff_entry(k + i, t2, t);
                    if d.is_zero() {
                        continue;
                    }
                    let base = fspace.offsets[&(k, t, s)];
                    for (pi, p) in paths_between(&by_ends, yv, xv).iter().enumerate() {
                        let comp = d.after(alg, f, &PathCombo::single(p.clone()));
                        for (r, c) in comp.0 {
                            eqs[index_of(&r, zv, xv)].push((base + pi, c));
                        }
                    }
                }
                // - f^{k+1} d_X^k
                for (u, &uv) in x.term(k + 1).iter().enumerate() {
                    let d = x.diff_entry(k, u, s);
                    if d.is_zero() {
                        continue;
                    }
                    let base = fspace.offsets[&(k + 1, t2, u)];
                    for (pi, p) in paths_between(&by_ends, zv, uv).iter().enumerate() {
                        let comp = PathCombo::single(p.clone()).after(alg, f, &d);
                        for (r, c) in comp.0 {
                            eqs[index_of(&r, zv, xv)].push((base + pi, f.neg(c)));
                        }
                    }
                }
                rows.extend(eqs);
            }
        }
    }
    let mut chain = Matrix::zeros(rows.len(), fspace.size);
    for (r, eq) in rows.iter().enumerate() {
        for &(c, v) in eq {
            chain.set(r, c, f.add(chain.get(r, c), v));
        }
    }
    let kernel_dim = chain.nullity(f);

    // homotopy image: f^k = d_Y^{k+i-1} h^k + h^{k+1} d_X^k
    let mut hmat = Matrix::zeros(fspace.size, hspace.size);
    for (&k, xs) in &x.terms {
        for (s, &xv) in xs.iter().enumerate() {
            for (t, &yv) in y.term(k + i).iter().enumerate() {
                let fbase = fspace.offsets[&(k, t, s)];
                // d_Y h^k
                for (w, &wv) in y.term(k + i - 1).iter().enumerate() {
                    let d = y.diff_entry(k + i - 1, t, w);
                    if d.is_zero() {
                        continue;
                    }
                    let hbase = hspace.offsets[&(k, w, s)];
                    for (pi, p) in paths_between(&by_ends, wv, xv).iter().enumerate() {
                        for (r, c) in d.after(alg, f, &PathCombo::single(p.clone())).0 {
                            let row = fbase + index_of(&r, yv, xv);
                            hmat.set(row, hbase + pi, f.add(hmat.get(row, hbase + pi), c));
                        }
                    }
                }
                // h^{k+1} d_X^k
                for (u, &uv) in x.term(k + 1).iter().enumerate() {
                    let d = x.diff_entry(k, u, s);
                    if d.is_zero() {
                        continue;
                    }
                    let hbase = hspace.offsets[&(k + 1, t, u)];
                    for (pi, p) in paths_between(&by_ends, yv, uv).iter().enumerate() {
                        for (r, c) in PathCombo::single(p.clone()).after(alg, f, &d).0 {
                            let row = fbase + index_of(&r, yv, xv);
                            hmat.set(row, hbase + pi, f.add(hmat.get(row, hbase + pi), c));
                        }
                    }
                }
            }
        }
    }
    Ok(kernel_dim - hmat.rank(f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::make_a_n_mod_j2;

    fn example_complex(alg: &BoundQuiverAlgebra) -> ProjComplex {
        ProjComplex::parse(
            alg,
            Field::default(),
            "deg -2: P_3\ndeg -1: P_2\ndeg 0: P_1\nd -2: [b]\nd -1: [a]\n",
        )
        .unwrap()
    }

    #[test]
    fn text_round_trip() {
        let alg = make_a_n_mod_j2(3).unwrap();
        let x = example_complex(&alg);
        let again = ProjComplex::parse(&alg, Field::default(), &x.to_text(&alg)).unwrap();
        assert_eq!(x, again);
    }

    #[test]
    fn nonzero_square_is_rejected() {
        let alg = crate::quiver::make_a_n(3).unwrap();
        let r = ProjComplex::parse(
            &alg,
            Field::default(),
            "deg -2: P_3\ndeg -1: P_2\ndeg 0: P_1\nd -2: [b]\nd -1: [a]\n",
        );
        assert!(matches!(r, Err(Error::InvalidComplex(_))));
    }

    #[test]
    fn stalk_homs() {
        let alg = make_a_n_mod_j2(3).unwrap();
        let f = Field::default();
        let p1 = ProjComplex::stalk(0, 0);
        let p3 = ProjComplex::stalk(2, 0);
        assert_eq!(homotopy_hom_dim(&alg, f, &p1, &p1, 0).unwrap(), 1);
        assert_eq!(homotopy_hom_dim(&alg, f, &p1, &p3, 0).unwrap(), 0);
        assert_eq!(homotopy_hom_dim(&alg, f, &p3, &p1, 0).unwrap(), 0);
        let p2 = ProjComplex::stalk(1, 0);
        assert_eq!(homotopy_hom_dim(&alg, f, &p2, &p1, 0).unwrap(), 1);
    }

    #[test]
    fn map_to_shifted_projective() {
        let alg = make_a_n_mod_j2(3).unwrap();
        let f = Field::default();
        let x = example_complex(&alg);
        // P_3 placed in degree -2
        let p3_2 = ProjComplex::stalk(2, -2);
        assert_eq!(homotopy_hom_dim(&alg, f, &x, &p3_2, 0).unwrap(), 1);
        assert_eq!(homotopy_hom_dim(&alg, f, &x, &x, 0).unwrap(), 1);
        for i in [-2, -1, 1, 2] {
            assert_eq!(homotopy_hom_dim(&alg, f, &x, &x, i).unwrap(), 0);
        }
    }
}
