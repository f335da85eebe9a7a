//! Bound quiver algebras KQ/I with quadratic monomial relations.
//!
//! Paths compose left to right: the relation `(a, b)` stands for the path
//! "a then b", so it requires `target(a) == source(b)`.

use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// Orders names so that embedded numbers compare numerically ("x2" < "x10").
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    fn chunks(s: &str) -> Vec<(bool, &str)> {
        let mut out = Vec::new();
        let mut start = 0;
        let bytes = s.as_bytes();
        for i in 1..=bytes.len() {
            if i == bytes.len() || bytes[i].is_ascii_digit() != bytes[start].is_ascii_digit() {
                out.push((bytes[start].is_ascii_digit(), &s[start..i]));
                start = i;
            }
        }
        out
    }
    let (ca, cb) = (chunks(a), chunks(b));
    for ((da, sa), (db, sb)) in ca.iter().zip(&cb) {
        let ord = match (da, db) {
            (true, true) => {
                let ta = sa.trim_start_matches('0');
                let tb = sb.trim_start_matches('0');
                ta.len().cmp(&tb.len()).then_with(|| ta.cmp(tb)).then_with(|| sa.len().cmp(&sb.len()))
            }
            _ => sa.cmp(sb),
        };
        if ord != Ordering::Equal {
            return ord;
        }
    }
    ca.len().cmp(&cb.len()).then_with(|| a.cmp(b))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A path of the quiver; `arrows` empty means the trivial path at `source`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path { source: v, target: v, arrows: Vec::new() }
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Shape {
    /// Linearly oriented A_n with n vertices.
    LinearNakayama(usize),
    /// Oriented cycle with n + 1 vertices.
    CyclicNakayama(usize),
    Tree,
    Other,
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::LinearNakayama(n) => write!(f, "LinearNakayama({n})"),
            Shape::CyclicNakayama(n) => write!(f, "CyclicNakayama({n})"),
            Shape::Tree => write!(f, "Tree"),
            Shape::Other => write!(f, "Other"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    /// Clause number of the gentleness definition (2, 3 or 4).
    pub clause: u8,
    pub message: String,
    pub witnesses: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GentleReport {
    pub gentle: bool,
    pub violations: Vec<Violation>,
}

/// A finite quiver with a set of length-two monomial relations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BoundQuiverAlgebra {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    relations: BTreeSet<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct ArrowJson {
    name: String,
    source: String,
    target: String,
}

#[derive(Serialize, Deserialize)]
struct AlgebraJson {
    vertices: Vec<String>,
    arrows: Vec<ArrowJson>,
    relations: Vec<[String; 2]>,
    connected: bool,
}

impl Serialize for BoundQuiverAlgebra {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        AlgebraJson {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| ArrowJson {
                    name: a.name.clone(),
                    source: self.vertices[a.source].clone(),
                    target: self.vertices[a.target].clone(),
                })
                .collect(),
            relations: self
                .relations
                .iter()
                .map(|&(a, b)| [self.arrows[a].name.clone(), self.arrows[b].name.clone()])
                .collect(),
            connected: self.is_connected(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BoundQuiverAlgebra {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = AlgebraJson::deserialize(d)?;
        BoundQuiverAlgebra::new(
            j.vertices,
            j.arrows.into_iter().map(|a| (a.name, a.source, a.target)).collect(),
            j.relations.into_iter().map(|[a, b]| (a, b)).collect(),
        )
        .map_err(serde::de::Error::custom)
    }
}

impl BoundQuiverAlgebra {
    /// Builds an algebra from names; vertices and arrows are put in canonical order.
    pub fn new(
        vertices: Vec<String>,
        arrows: Vec<(String, String, String)>,
        relations: Vec<(String, String)>,
    ) -> Result<Self> {
        let mut vs = vertices;
        vs.sort_by(|a, b| natural_cmp(a, b));
        for w in vs.windows(2) {
            if w[0] == w[1] {
                return Err(Error::Duplicate { kind: "vertex", name: w[0].clone() });
            }
        }
        let vindex: HashMap<&str, usize> =
            vs.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let mut arrs = Vec::with_capacity(arrows.len());
        for (name, s, t) in arrows {
            let source = *vindex
                .get(s.as_str())
                .ok_or_else(|| Error::DanglingEndpoint { arrow: name.clone(), vertex: s.clone() })?;
            let target = *vindex
                .get(t.as_str())
                .ok_or_else(|| Error::DanglingEndpoint { arrow: name.clone(), vertex: t.clone() })?;
            arrs.push(Arrow { name, source, target });
        }
        arrs.sort_by(|a, b| natural_cmp(&a.name, &b.name));
        for w in arrs.windows(2) {
            if w[0].name == w[1].name {
                return Err(Error::Duplicate { kind: "arrow", name: w[0].name.clone() });
            }
        }
        let aindex: HashMap<&str, usize> =
            arrs.iter().enumerate().map(|(i, a)| (a.name.as_str(), i)).collect();
        let mut rels = BTreeSet::new();
        for (a, b) in relations {
            let ia = *aindex.get(a.as_str()).ok_or_else(|| Error::UnknownArrow(a.clone()))?;
            let ib = *aindex.get(b.as_str()).ok_or_else(|| Error::UnknownArrow(b.clone()))?;
            if arrs[ia].target != arrs[ib].source {
                return Err(Error::NonComposable(a, b));
            }
            rels.insert((ia, ib));
        }
        Ok(BoundQuiverAlgebra { vertices: vs, arrows: arrs, relations: rels })
    }

    /// Index-based constructor used by generators; names are taken as given.
    pub(crate) fn from_indices(
        vertices: Vec<String>,
        arrows: Vec<Arrow>,
        relations: BTreeSet<(usize, usize)>,
    ) -> Result<Self> {
        let arrow_specs = arrows
            .iter()
            .map(|a| (a.name.clone(), vertices[a.source].clone(), vertices[a.target].clone()))
            .collect();
        let rel_specs = relations
            .iter()
            .map(|&(a, b)| (arrows[a].name.clone(), arrows[b].name.clone()))
            .collect();
        BoundQuiverAlgebra::new(vertices, arrow_specs, rel_specs)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn relations(&self) -> &BTreeSet<(usize, usize)> {
        &self.relations
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_index(&self, name: &str) -> Result<usize> {
        self.vertices
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn arrow_index(&self, name: &str) -> Result<usize> {
        self.arrows
            .iter()
            .position(|a| a.name == name)
            .ok_or_else(|| Error::UnknownArrow(name.to_string()))
    }

    pub fn is_relation(&self, a: usize, b: usize) -> bool {
        self.relations.contains(&(a, b))
    }

    pub fn out_arrows(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&i| self.arrows[i].source == v)
    }

    pub fn in_arrows(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&i| self.arrows[i].target == v)
    }

    /// Arrows `b` with `a` then `b` composable.
    pub fn successors(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        self.out_arrows(self.arrows[a].target)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for a in &self.arrows {
                let next = if a.source == v {
                    a.target
                } else if a.target == v {
                    a.source
                } else {
                    continue;
                };
                if !seen[next] {
                    seen[next] = true;
                    queue.push_back(next);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Every oriented cycle passes through a relation: the graph on arrows with
    /// an edge a -> b whenever "a then b" is a nonzero composition is acyclic.
    pub fn is_admissible(&self) -> bool {
        self.unrelated_cycle_witness().is_none()
    }

    fn unrelated_cycle_witness(&self) -> Option<usize> {
        let m = self.arrows.len();
        let mut indeg = vec![0usize; m];
        for a in 0..m {
            for b in self.successors(a) {
                if !self.is_relation(a, b) {
                    indeg[b] += 1;
                }
            }
        }
        let mut queue: VecDeque<usize> = (0..m).filter(|&a| indeg[a] == 0).collect();
        let mut removed = vec![false; m];
        while let Some(a) = queue.pop_front() {
            removed[a] = true;
            for b in self.successors(a).collect::<Vec<_>>() {
                if !self.is_relation(a, b) {
                    indeg[b] -= 1;
                    if indeg[b] == 0 {
                        queue.push_back(b);
                    }
                }
            }
        }
        (0..m).find(|&a| !removed[a])
    }

    pub fn require_admissible(&self) -> Result<()> {
        match self.unrelated_cycle_witness() {
            None => Ok(()),
            Some(a) => Err(Error::NotAdmissible(self.arrows[a].name.clone())),
        }
    }

    pub fn is_gentle(&self) -> GentleReport {
        let mut violations = Vec::new();
        let name = |a: usize| self.arrows[a].name.clone();
        for a in 0..self.arrows.len() {
            let succ: Vec<usize> = self.successors(a).collect();
            let pred: Vec<usize> = self.in_arrows(self.arrows[a].source).collect();
            let free_succ: Vec<usize> =
                succ.iter().copied().filter(|&b| !self.is_relation(a, b)).collect();
            let free_pred: Vec<usize> =
                pred.iter().copied().filter(|&c| !self.is_relation(c, a)).collect();
            let rel_succ: Vec<usize> =
                succ.iter().copied().filter(|&b| self.is_relation(a, b)).collect();
            let rel_pred: Vec<usize> =
                pred.iter().copied().filter(|&c| self.is_relation(c, a)).collect();
            if free_succ.len() > 1 {
                violations.push(Violation {
                    clause: 2,
                    message: format!("{} has {} nonzero successors", name(a), free_succ.len()),
                    witnesses: std::iter::once(name(a)).chain(free_succ.iter().map(|&b| name(b))).collect(),
                });
            }
            if free_pred.len() > 1 {
                violations.push(Violation {
                    clause: 2,
                    message: format!("{} has {} nonzero predecessors", name(a), free_pred.len()),
                    witnesses: std::iter::once(name(a)).chain(free_pred.iter().map(|&c| name(c))).collect(),
                });
            }
            if rel_succ.len() > 1 {
                violations.push(Violation {
                    clause: 3,
                    message: format!("{} starts {} relations", name(a), rel_succ.len()),
                    witnesses: std::iter::once(name(a)).chain(rel_succ.iter().map(|&b| name(b))).collect(),
                });
            }
            if rel_pred.len() > 1 {
                violations.push(Violation {
                    clause: 3,
                    message: format!("{} ends {} relations", name(a), rel_pred.len()),
                    witnesses: std::iter::once(name(a)).chain(rel_pred.iter().map(|&c| name(c))).collect(),
                });
            }
        }
        if let Some(a) = self.unrelated_cycle_witness() {
            violations.push(Violation {
                clause: 4,
                message: "oriented cycle without relations; ideal not admissible".into(),
                witnesses: vec![name(a)],
            });
        }
        GentleReport { gentle: violations.is_empty(), violations }
    }

    pub fn require_gentle(&self) -> Result<()> {
        let report = self.is_gentle();
        if report.gentle {
            Ok(())
        } else {
            let v = &report.violations[0];
            Err(Error::NotGentle(format!("clause ({}): {}", v.clause, v.message)))
        }
    }

    pub fn is_radical_square_zero(&self) -> bool {
        (0..self.arrows.len()).all(|a| self.successors(a).all(|b| self.is_relation(a, b)))
    }

    pub fn shape(&self) -> Shape {
        let n = self.vertices.len();
        let m = self.arrows.len();
        if n == 0 || !self.is_connected() {
            return Shape::Other;
        }
        let outdeg = |v| self.out_arrows(v).count();
        let indeg = |v| self.in_arrows(v).count();
        if m == n && (0..n).all(|v| outdeg(v) == 1 && indeg(v) == 1) {
            return Shape::CyclicNakayama(n - 1);
        }
        if m + 1 == n {
            if (0..n).all(|v| outdeg(v) <= 1 && indeg(v) <= 1) {
                return Shape::LinearNakayama(n);
            }
            // connected with n - 1 edges: a tree (no loops possible)
            return Shape::Tree;
        }
        Shape::Other
    }

    /// All nonzero paths, trivial ones included. Requires admissibility.
    pub fn paths(&self) -> Result<Vec<Path>> {
        self.require_admissible()?;
        let mut out: Vec<Path> = (0..self.vertices.len()).map(Path::trivial).collect();
        let mut frontier: Vec<Path> = (0..self.arrows.len())
            .map(|a| Path {
                source: self.arrows[a].source,
                target: self.arrows[a].target,
                arrows: vec![a],
            })
            .collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for p in &frontier {
                let last = *p.arrows.last().unwrap();
                for b in self.successors(last) {
                    if !self.is_relation(last, b) {
                        let mut arrows = p.arrows.clone();
                        arrows.push(b);
                        next.push(Path { source: p.source, target: self.arrows[b].target, arrows });
                    }
                }
            }
            out.append(&mut frontier);
            frontier = next;
        }
        Ok(out)
    }

    /// Concatenation "p then q" if nonzero.
    pub fn compose(&self, p: &Path, q: &Path) -> Option<Path> {
        if p.target != q.source {
            return None;
        }
        if let (Some(&a), Some(&b)) = (p.arrows.last(), q.arrows.first()) {
            if self.is_relation(a, b) {
                return None;
            }
        }
        let mut arrows = p.arrows.clone();
        arrows.extend_from_slice(&q.arrows);
        Some(Path { source: p.source, target: q.target, arrows })
    }

    pub fn path_name(&self, p: &Path) -> String {
        if p.is_trivial() {
            format!("e({})", self.vertices[p.source])
        } else {
            p.arrows.iter().map(|&a| self.arrows[a].name.as_str()).collect::<Vec<_>>().join("")
        }
    }

    /// Isomorphism of bound quivers (vertex and arrow bijection preserving relations).
    pub fn is_isomorphic(&self, other: &BoundQuiverAlgebra) -> bool {
        if self.vertices.len() != other.vertices.len()
            || self.arrows.len() != other.arrows.len()
            || self.relations.len() != other.relations.len()
        {
            return false;
        }
        let sig = |alg: &BoundQuiverAlgebra, v: usize| {
            (
                alg.in_arrows(v).count(),
                alg.out_arrows(v).count(),
                alg.arrows.iter().filter(|a| a.source == v && a.target == v).count(),
            )
        };
        let n = self.vertices.len();
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        fn rec(
            a: &BoundQuiverAlgebra,
            b: &BoundQuiverAlgebra,
            v: usize,
            map: &mut Vec<usize>,
            used: &mut Vec<bool>,
            sig: &dyn Fn(&BoundQuiverAlgebra, usize) -> (usize, usize, usize),
        ) -> bool {
            let n = a.vertices.len();
            if v == n {
                return arrows_match(a, b, map);
            }
            for w in 0..n {
                if used[w] || sig(a, v) != sig(b, w) {
                    continue;
                }
                // arrow counts between already-mapped vertices must agree
                let ok = (0..=v).all(|u| {
                    let mu = if u == v { w } else { map[u] };
                    let count = |alg: &BoundQuiverAlgebra, s: usize, t: usize| {
                        alg.arrows.iter().filter(|x| x.source == s && x.target == t).count()
                    };
                    count(a, u, v) == count(b, mu, w) && count(a, v, u) == count(b, w, mu)
                });
                if !ok {
                    continue;
                }
                map[v] = w;
                used[w] = true;
                if rec(a, b, v + 1, map, used, sig) {
                    return true;
                }
                used[w] = false;
                map[v] = usize::MAX;
            }
            false
        }
        rec(self, other, 0, &mut map, &mut used, &sig)
    }

    /// Human-readable quiver file; parse(serialize(x)) == x.
    pub fn serialize(&self) -> String {
        let mut s = String::new();
        for v in &self.vertices {
            s.push_str(&format!("vertex {v}\n"));
        }
        for a in &self.arrows {
            s.push_str(&format!(
                "arrow {} {} {}\n",
                a.name, self.vertices[a.source], self.vertices[a.target]
            ));
        }
        for &(a, b) in &self.relations {
            s.push_str(&format!("rel {} {}\n", self.arrows[a].name, self.arrows[b].name));
        }
        s
    }

    /// Parses the line-oriented quiver format (`vertex`, `arrow`, `rel`).
    pub fn parse(text: &str) -> Result<Self> {
        let mut vertices = Vec::new();
        let mut arrows = Vec::new();
        let mut relations = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            let syntax = |msg: &str| Error::Syntax { line: i + 1, msg: msg.to_string() };
            match toks[0] {
                "vertex" if toks.len() == 2 => vertices.push(toks[1].to_string()),
                "arrow" if toks.len() == 4 => {
                    arrows.push((toks[1].to_string(), toks[2].to_string(), toks[3].to_string()))
                }
                "rel" if toks.len() == 3 => relations.push((toks[1].to_string(), toks[2].to_string())),
                "vertex" => return Err(syntax("expected `vertex <id>`")),
                "arrow" => return Err(syntax("expected `arrow <name> <src> <tgt>`")),
                "rel" => return Err(syntax("expected `rel <arrow> <arrow>`")),
                other => return Err(syntax(&format!("unknown keyword `{other}`"))),
            }
        }
        BoundQuiverAlgebra::new(vertices, arrows, relations)
    }

    /// Relabels vertices by a permutation and returns a canonical serialization,
    /// minimized over all vertex permutations. Intended for small quivers.
    pub fn canonical_key(&self) -> String {
        let n = self.vertices.len();
        let mut best: Option<String> = None;
        let mut perm: Vec<usize> = (0..n).collect();
        permute(&mut perm, 0, &mut |p| {
            let key = self.key_under(p);
            if best.as_ref().is_none_or(|b| key < *b) {
                best = Some(key);
            }
        });
        best.unwrap_or_default()
    }

    fn key_under(&self, p: &[usize]) -> String {
        // arrows as (src, tgt) sorted, relations as pairs of arrow keys; parallel
        // arrows are disambiguated by the relation pattern they participate in.
        let mut arrow_keys: Vec<(usize, usize, usize)> = self
            .arrows
            .iter()
            .enumerate()
            .map(|(i, a)| (p[a.source], p[a.target], i))
            .collect();
        arrow_keys.sort();
        let mut rels: Vec<(usize, usize, usize, usize)> = self
            .relations
            .iter()
            .map(|&(a, b)| {
                let x = &self.arrows[a];
                let y = &self.arrows[b];
                (p[x.source], p[x.target], p[y.source], p[y.target])
            })
            .collect();
        rels.sort();
        let arrows: Vec<(usize, usize)> = arrow_keys.iter().map(|&(s, t, _)| (s, t)).collect();
        format!("{:?}|{:?}", arrows, rels)
    }

    /// Dimension vector helper: vertex names in order.
    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }
}

fn arrows_match(a: &BoundQuiverAlgebra, b: &BoundQuiverAlgebra, map: &[usize]) -> bool {
    // group arrows of `a` by (source, target); try bijections within groups
    let mut groups: BTreeMap<(usize, usize), (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for (i, x) in a.arrows.iter().enumerate() {
        groups.entry((map[x.source], map[x.target])).or_default().0.push(i);
    }
    for (j, y) in b.arrows.iter().enumerate() {
        match groups.get_mut(&(y.source, y.target)) {
            Some(g) => g.1.push(j),
            None => return false,
        }
    }
    let groups: Vec<(Vec<usize>, Vec<usize>)> = groups.into_values().collect();
    if groups.iter().any(|(x, y)| x.len() != y.len()) {
        return false;
    }
    let mut amap = vec![usize::MAX; a.arrows.len()];
    fn rec(
        gi: usize,
        groups: &[(Vec<usize>, Vec<usize>)],
        amap: &mut Vec<usize>,
        a: &BoundQuiverAlgebra,
        b: &BoundQuiverAlgebra,
    ) -> bool {
        if gi == groups.len() {
            return a.relations.iter().all(|&(x, y)| b.is_relation(amap[x], amap[y]));
        }
        let (src, tgt) = &groups[gi];
        let mut perm: Vec<usize> = (0..tgt.len()).collect();
        let mut found = false;
        permute(&mut perm, 0, &mut |p| {
            if found {
                return;
            }
            for (k, &i) in src.iter().enumerate() {
                amap[i] = tgt[p[k]];
            }
            if rec(gi + 1, groups, amap, a, b) {
                found = true;
            }
        });
        found
    }
    rec(0, &groups, &mut amap, a, b)
}

pub(crate) fn permute(v: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, f);
        v.swap(k, i);
    }
}

pub(crate) fn arrow_name(i: usize, total: usize) -> String {
    if total <= 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("x{}", i + 1)
    }
}

/// KA_n / J^2: vertices 1..n, arrows i -> i+1, all compositions zero.
pub fn make_a_n_mod_j2(n: usize) -> Result<BoundQuiverAlgebra> {
    if n < 1 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let vertices: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let arrows: Vec<Arrow> = (0..n - 1)
        .map(|i| Arrow { name: arrow_name(i, n - 1), source: i, target: i + 1 })
        .collect();
    let relations = (0..n.saturating_sub(2)).map(|i| (i, i + 1)).collect();
    BoundQuiverAlgebra::from_indices(vertices, arrows, relations)
}

/// Oriented cycle on vertices 0..n (n + 1 vertices) modulo J^2.
pub fn make_tilde_a_n_mod_j2(n: usize) -> Result<BoundQuiverAlgebra> {
    if n < 1 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let vertices: Vec<String> = (0..=n).map(|i| i.to_string()).collect();
    let arrows: Vec<Arrow> = (0..=n)
        .map(|i| Arrow { name: arrow_name(i, n + 1), source: i, target: (i + 1) % (n + 1) })
        .collect();
    let relations = (0..=n).map(|i| (i, (i + 1) % (n + 1))).collect();
    BoundQuiverAlgebra::from_indices(vertices, arrows, relations)
}

/// Path algebra of linearly oriented A_n without relations.
pub fn make_a_n(n: usize) -> Result<BoundQuiverAlgebra> {
    if n < 1 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let vertices: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let arrows: Vec<Arrow> = (0..n - 1)
        .map(|i| Arrow { name: arrow_name(i, n - 1), source: i, target: i + 1 })
        .collect();
    BoundQuiverAlgebra::from_indices(vertices, arrows, BTreeSet::new())
}

/// The 15-vertex quiver whose underlying graph subdivides K_{3,3}, with the
/// relation choice encoded by `choice` (6 bits, one per branch vertex).
pub fn make_k33(choice: u8) -> BoundQuiverAlgebra {
    // (name, source, target)
    let arrows: [(&str, &str, &str); 18] = [
        ("p1", "1a", "1"),
        ("q1", "1", "1b"),
        ("r1", "1", "1c"),
        ("p2", "2b", "2"),
        ("q2", "2", "2a"),
        ("r2", "2", "2c"),
        ("p3", "3c", "3"),
        ("q3", "3", "3a"),
        ("r3", "3", "3b"),
        ("pa", "1a", "a"),
        ("qa", "a", "2a"),
        ("ra", "a", "3a"),
        ("pb", "2b", "b"),
        ("qb", "b", "1b"),
        ("rb", "b", "3b"),
        ("pc", "3c", "c"),
        ("qc", "c", "1c"),
        ("rc", "c", "2c"),
    ];
    let vertices = [
        "1", "2", "3", "a", "b", "c", "1a", "1b", "1c", "2a", "2b", "2c", "3a", "3b", "3c",
    ];
    // each branch vertex has one incoming arrow p and two outgoing q, r; one of the
    // two compositions is a relation
    let branches = ["1", "2", "3", "a", "b", "c"];
    let relations = branches
        .iter()
        .enumerate()
        .map(|(k, v)| {
            let suffix = v.to_string();
            let out = if choice >> k & 1 == 0 { "q" } else { "r" };
            (format!("p{suffix}"), format!("{out}{suffix}"))
        })
        .collect();
    BoundQuiverAlgebra::new(
        vertices.iter().map(|s| s.to_string()).collect(),
        arrows.iter().map(|(n, s, t)| (n.to_string(), s.to_string(), t.to_string())).collect(),
        relations,
    )
    .expect("fixed quiver is well formed")
}
