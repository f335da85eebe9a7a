//! Graded arcs on a dissected disk as objects of the bounded derived
//! category, with morphisms counted from graded intersections.
//!
//! Marked points are numbered counterclockwise. An arc between two marked
//! points follows the unique path between them in the dissection (a tree on
//! a disk) and crosses the dual edge of every edge on that path. The grading
//! is the list of integers at those crossings; shifting by `[i]` subtracts
//! `i` from every entry, and a crossing graded `f` contributes a projective
//! in cohomological degree `f`.

use rayon::prelude::*;
use serde::{Serialize, Serializer};
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{Field, PathCombo, ProjComplex};
use crate::quiver::{BoundQuiverAlgebra, Path};
use crate::surface::{algebra_from_dissection, Dissection};

/// A dissected disk together with its algebra.
#[derive(Clone, Debug)]
pub struct Disk {
    diss: Dissection,
    alg: BoundQuiverAlgebra,
    /// neighbours[v] = (other endpoint, edge)
    neighbours: Vec<Vec<(usize, usize)>>,
    /// position[v][edge] of the edge among the ports at v; 0 is the boundary
    position: Vec<BTreeMap<usize, usize>>,
    /// algebra vertex of each dissection edge
    vertex_of_edge: Vec<usize>,
    /// algebra arrow between consecutive edges (source edge, target edge)
    arrow_between: BTreeMap<(usize, usize), usize>,
}

impl Disk {
    pub fn new(diss: &Dissection) -> Result<Self> {
        if !diss.is_disk() {
            return Err(Error::NotADisk);
        }
        let alg = algebra_from_dissection(diss)?;
        let t = diss.marked_point_count();
        let mut neighbours = vec![Vec::new(); t];
        for e in 0..diss.edges().len() {
            let (a, b) = diss.edge_endpoints(e);
            neighbours[a].push((b, e));
            neighbours[b].push((a, e));
        }
        let position = (0..t)
            .map(|v| {
                let edges = &diss.fan(v).edges;
                edges.iter().enumerate().map(|(j, &e)| (e, edges.len() - j)).collect()
            })
            .collect();
        let vertex_of_edge =
            diss.edges().iter().map(|name| alg.vertex_index(name)).collect::<Result<Vec<_>>>()?;
        let arrow_between = alg
            .arrows()
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let src = vertex_of_edge.iter().position(|&v| v == a.source).unwrap();
                let tgt = vertex_of_edge.iter().position(|&v| v == a.target).unwrap();
                ((src, tgt), i)
            })
            .collect();
        Ok(Disk { diss: diss.clone(), alg, neighbours, position, vertex_of_edge, arrow_between })
    }

    pub fn dissection(&self) -> &Dissection {
        &self.diss
    }

    pub fn algebra(&self) -> &BoundQuiverAlgebra {
        &self.alg
    }

    pub fn marked_points(&self) -> usize {
        self.diss.marked_point_count()
    }

    /// Number of dual edges, which is also the number of algebra vertices.
    pub fn edge_count(&self) -> usize {
        self.diss.edges().len()
    }

    fn succ(&self, v: usize) -> usize {
        self.diss.succ(v)
    }

    fn pred(&self, v: usize) -> usize {
        self.diss.pred(v)
    }

    /// Counterclockwise steps from `from` to `to`.
    fn ccw_distance(&self, from: usize, to: usize) -> usize {
        let mut d = 0;
        let mut cur = from;
        while cur != to {
            cur = self.succ(cur);
            d += 1;
        }
        d
    }

    /// Vertices and edges of the path from `a` to `b` in the dissection tree.
    fn tree_path(&self, a: usize, b: usize) -> (Vec<usize>, Vec<usize>) {
        let t = self.marked_points();
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; t];
        let mut seen = vec![false; t];
        seen[a] = true;
        let mut queue = VecDeque::from([a]);
        while let Some(u) = queue.pop_front() {
            for &(w, e) in &self.neighbours[u] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some((u, e));
                    queue.push_back(w);
                }
            }
        }
        let (mut vs, mut es) = (vec![b], Vec::new());
        let mut cur = b;
        while cur != a {
            let (p, e) = parent[cur].expect("disk dissections are connected trees");
            es.push(e);
            vs.push(p);
            cur = p;
        }
        vs.reverse();
        es.reverse();
        (vs, es)
    }

    /// Grading step when passing the polygon at `v` from edge `e1` to `e2`.
    fn step(&self, v: usize, e1: usize, e2: usize) -> i32 {
        if self.position[v][&e1] < self.position[v][&e2] {
            1
        } else {
            -1
        }
    }

    fn port(&self, v: usize, e: Option<usize>) -> usize {
        e.map_or(0, |e| self.position[v][&e])
    }

    pub fn parse_arc(&self, text: &str) -> Result<GradedArc> {
        let bad = || Error::InvalidArgument(format!("bad arc literal `{text}`, expected `arc(a,b)@base`"));
        let body = text.trim().strip_prefix("arc(").ok_or_else(bad)?;
        let (pts, base) = body.split_once(")@").ok_or_else(bad)?;
        let (a, b) = pts.split_once(',').ok_or_else(bad)?;
        let parse = |s: &str| s.trim().parse::<i64>().map_err(|_| bad());
        let (a, b, base) = (parse(a)?, parse(b)?, parse(base)?);
        let point = |x: i64| {
            if x >= 1 && (x as usize) <= self.marked_points() {
                Ok(x as usize - 1)
            } else {
                Err(Error::UnknownMarkedPoint(x.max(0) as usize))
            }
        };
        self.arc(point(a)?, point(b)?, base as i32)
    }

    /// The arc from marked point `a` to `b` (0-based) graded `base` at the
    /// crossing nearest `a`.
    pub fn arc(&self, a: usize, b: usize, base: i32) -> Result<GradedArc> {
        let t = self.marked_points();
        if a >= t {
            return Err(Error::UnknownMarkedPoint(a + 1));
        }
        if b >= t {
            return Err(Error::UnknownMarkedPoint(b + 1));
        }
        if a == b {
            return Err(Error::EqualEndpoints);
        }
        let grading = self.grading_from(a, b, base);
        Ok(if a < b {
            GradedArc { a, b, base }
        } else {
            GradedArc { a: b, b: a, base: *grading.last().unwrap() }
        })
    }

    fn grading_from(&self, a: usize, b: usize, base: i32) -> Vec<i32> {
        let (vs, es) = self.tree_path(a, b);
        let mut f = vec![base];
        for j in 1..es.len() {
            let prev = f[j - 1];
            f.push(prev + self.step(vs[j], es[j - 1], es[j]));
        }
        f
    }

    /// Crossed edges from `a` to `b` with their grading.
    pub fn crossings(&self, x: &GradedArc) -> Vec<(usize, i32)> {
        let (_, es) = self.tree_path(x.a, x.b);
        es.into_iter().zip(self.grading_from(x.a, x.b, x.base)).collect()
    }

    /// Grading vector, read from the smaller endpoint.
    pub fn grading(&self, x: &GradedArc) -> Vec<i32> {
        self.grading_from(x.a, x.b, x.base)
    }

    fn grading_at(&self, x: &GradedArc, edge: usize) -> i32 {
        self.crossings(x).into_iter().find(|&(e, _)| e == edge).expect("edge is crossed").1
    }

    /// Grading at the crossing closest to the endpoint `m`.
    fn grading_near(&self, x: &GradedArc, m: usize) -> i32 {
        let g = self.grading(x);
        if m == x.a {
            g[0]
        } else {
            *g.last().unwrap()
        }
    }

    /// Endpoints adjacent on the boundary.
    pub fn is_minimal(&self, x: &GradedArc) -> bool {
        self.succ(x.a) == x.b || self.succ(x.b) == x.a
    }

    /// The complex of projectives of the arc: one summand per crossing, in
    /// the degree given by the grading, joined by the arrows around the
    /// marked point between consecutive crossings.
    pub fn arc_to_complex(&self, x: &GradedArc, field: Field) -> Result<ProjComplex> {
        let (vs, es) = self.tree_path(x.a, x.b);
        let f = self.grading_from(x.a, x.b, x.base);
        let mut terms: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
        let mut slot = Vec::new();
        for (&e, &deg) in es.iter().zip(&f) {
            let list = terms.entry(deg).or_default();
            slot.push(list.len());
            list.push(self.vertex_of_edge[e]);
        }
        let mut entries: Vec<(i32, usize, usize, PathCombo)> = Vec::new();
        for j in 0..es.len().saturating_sub(1) {
            let (lo, hi) = if f[j] < f[j + 1] { (j, j + 1) } else { (j + 1, j) };
            let path = self.fan_path(vs[j + 1], es[hi], es[lo])?;
            entries.push((f[lo], slot[hi], slot[lo], PathCombo::single(path)));
        }
        let mut diffs: BTreeMap<i32, Vec<Vec<PathCombo>>> = BTreeMap::new();
        for (deg, row, col, combo) in entries {
            let m = diffs.entry(deg).or_insert_with(|| {
                vec![vec![PathCombo::zero(); terms[&deg].len()]; terms.get(&(deg + 1)).map_or(0, Vec::len)]
            });
            m[row][col] = combo;
        }
        ProjComplex::new(&self.alg, field, terms, diffs)
    }

    /// The path of consecutive arrows at `v` from edge `from` to edge `to`.
    fn fan_path(&self, v: usize, from: usize, to: usize) -> Result<Path> {
        let edges = &self.diss.fan(v).edges;
        let i = edges.iter().position(|&e| e == from).unwrap();
        let j = edges.iter().position(|&e| e == to).unwrap();
        if i >= j {
            return Err(Error::Internal("differential runs against the arrows".into()));
        }
        let mut path = Path::trivial(self.vertex_of_edge[from]);
        for k in i..j {
            let arrow = self.arrow_between[&(edges[k], edges[k + 1])];
            let a = &self.alg.arrows()[arrow];
            let step = Path { source: a.source, target: a.target, arrows: vec![arrow] };
            path = self
                .alg
                .compose(&path, &step)
                .ok_or_else(|| Error::Internal("arrows around a marked point compose to zero".into()))?;
        }
        Ok(path)
    }

    /// Every s with Hom(X, Y[s]) nonzero, one entry per graded intersection.
    pub fn hom_shifts(&self, x: &GradedArc, y: &GradedArc) -> Vec<i32> {
        let xs = [x.a, x.b];
        let ys = [y.a, y.b];
        if x.a == y.a && x.b == y.b {
            return vec![y.base - x.base];
        }
        if let Some(&m) = xs.iter().find(|m| ys.contains(m)) {
            let xo = if x.a == m { x.b } else { x.a };
            let yo = if y.a == m { y.b } else { y.a };
            return if self.ccw_distance(m, xo) < self.ccw_distance(m, yo) {
                vec![self.grading_near(y, m) - self.grading_near(x, m)]
            } else {
                Vec::new()
            };
        }
        if !chords_cross(self.marked_points(), (x.a, x.b), (y.a, y.b)) {
            return Vec::new();
        }
        self.crossing_shifts(x, y)
    }

    fn crossing_shifts(&self, x: &GradedArc, y: &GradedArc) -> Vec<i32> {
        let (xv, xe) = self.tree_path(x.a, x.b);
        let (yv, ye) = self.tree_path(y.a, y.b);
        let shared: Vec<usize> = xv.iter().copied().filter(|v| yv.contains(v)).collect();
        let Some(&v) = shared.last() else {
            return Vec::new();
        };
        // ports used by each arc in the polygon around v
        let ports = |vs: &[usize], es: &[usize]| -> [Option<usize>; 2] {
            let k = vs.iter().position(|&u| u == v).unwrap();
            let before = (k > 0).then(|| es[k - 1]);
            let after = (k < es.len()).then(|| es[k]);
            [before, after]
        };
        let xp = ports(&xv, &xe);
        let yp = ports(&yv, &ye);
        // (position, tie-break, owner is X, edge crossed)
        let mut best: Option<Vec<i32>> = None;
        for tie in [0, 1] {
            let mut slots: Vec<(usize, usize, bool, Option<usize>)> = Vec::new();
            for &e in &xp {
                slots.push((self.port(v, e), tie, true, e));
            }
            for &e in &yp {
                slots.push((self.port(v, e), 1 - tie, false, e));
            }
            slots.sort();
            let alternating = (0..4).all(|i| slots[i].2 != slots[(i + 1) % 4].2);
            if !alternating {
                continue;
            }
            let mut out = Vec::new();
            for i in 0..4 {
                let (from, to) = (slots[i], slots[(i + 1) % 4]);
                let wraps = i == 3;
                let touches_boundary = from.0 == 0 || to.0 == 0;
                if wraps || touches_boundary || !from.2 {
                    continue;
                }
                let fx = self.grading_at(x, from.3.unwrap());
                let fy = self.grading_at(y, to.3.unwrap());
                out.push(fy - fx);
            }
            best = Some(out);
            break;
        }
        best.unwrap_or_default()
    }

    pub fn hom_dim(&self, x: &GradedArc, y: &GradedArc, i: i32) -> usize {
        self.hom_shifts(x, y).into_iter().filter(|&s| s == i).count()
    }

    /// Rotates both endpoints one step clockwise (to their predecessors),
    /// graded so that Hom(X, tau X [1]) is nonzero.
    pub fn tau(&self, x: &GradedArc) -> Result<GradedArc> {
        let (a, b) = (self.pred(x.a), self.pred(x.b));
        if a == b {
            return Err(Error::Collapse);
        }
        let z = self.arc(a, b, 0)?;
        let s = *self
            .hom_shifts(x, &z)
            .first()
            .ok_or_else(|| Error::Internal("no connecting morphism for the translate".into()))?;
        Ok(z.shifted(s - 1))
    }

    /// The translate and the middle terms of the triangle ending in X:
    /// rotate one endpoint at a time, graded to map onto X.
    pub fn ar_triangle(&self, x: &GradedArc) -> Result<(GradedArc, Vec<GradedArc>)> {
        let tau = self.tau(x)?;
        let mut middle = Vec::new();
        for (a, b) in [(self.pred(x.a), x.b), (x.a, self.pred(x.b))] {
            if a == b {
                continue;
            }
            let y = self.arc(a, b, 0)?;
            let s = *self
                .hom_shifts(&y, x)
                .first()
                .ok_or_else(|| Error::Internal("middle term does not map to X".into()))?;
            middle.push(y.shifted(-s));
        }
        Ok((tau, middle))
    }

    /// dim Hom(tau X, X).
    pub fn hom_tau_self(&self, x: &GradedArc) -> Result<usize> {
        Ok(self.hom_dim(&self.tau(x)?, x, 0))
    }

    /// Gradings at the crossings nearest the shared endpoint `m` agree mod d.
    pub fn d_compatible(&self, x: &GradedArc, y: &GradedArc, m: usize, d: usize) -> Result<bool> {
        if !x.has_endpoint(m) || !y.has_endpoint(m) {
            return Err(Error::NoSharedEndpoint(m + 1));
        }
        Ok((self.grading_near(x, m) - self.grading_near(y, m)).rem_euclid(d as i32) == 0)
    }

    /// Walks the boundary from X, each minimal arc graded compatibly with
    /// the previous one at their common endpoint.
    pub fn v_x_d(&self, x: &GradedArc, d: usize) -> Result<DerivedSubcat> {
        check_d(d)?;
        if !self.is_minimal(x) {
            return Err(Error::NotMinimal);
        }
        let m1 = if self.pred(x.a) == x.b { x.a } else { x.b };
        let t = self.marked_points();
        let mut arcs = vec![*x];
        let mut prev = *x;
        let mut m = m1;
        for _ in 1..t {
            let next = self.succ(m);
            let raw = self.arc(m, next, 0)?;
            let target = self.grading_near(&prev, m);
            let fixed = raw.shifted(self.grading_near(&raw, m) - target);
            arcs.push(fixed);
            prev = fixed;
            m = next;
        }
        Ok(DerivedSubcat::new(d, arcs.iter().map(|a| ShiftClass::new(*a, d))))
    }

    /// All graded arcs with base in [-window, window].
    pub fn universe(&self, window: i32) -> Vec<GradedArc> {
        let t = self.marked_points();
        let mut out = Vec::new();
        for a in 0..t {
            for b in a + 1..t {
                for base in -window..=window {
                    out.push(GradedArc { a, b, base });
                }
            }
        }
        out
    }

    pub fn required_window(&self, d: usize) -> i32 {
        (self.edge_count() + d) as i32
    }

    pub fn default_window(&self, d: usize) -> i32 {
        self.required_window(d).max(2 * self.edge_count() as i32)
    }

    /// Checks that U is d-cluster tilting: every arc of the window lies in
    /// U exactly when it has no morphisms to or from U in degrees 1..d-1.
    pub fn is_dct_derived(&self, u: &DerivedSubcat, window: i32) -> Result<Option<DerivedWitness>> {
        let d = u.d;
        check_d(d)?;
        let required = self.required_window(d);
        if window < required {
            return Err(Error::WindowTooSmall { given: window, required });
        }
        let reps: Vec<GradedArc> = u.classes.iter().map(|c| c.arc).collect();
        let bad = |s: &i32| s.rem_euclid(d as i32) != 0;
        let verdicts: Vec<(GradedArc, bool, bool, bool)> = self
            .universe(window)
            .into_par_iter()
            .map(|y| {
                let inside = u.contains(&y);
                let right = reps.iter().all(|x| !self.hom_shifts(x, &y).iter().any(bad));
                let left = reps.iter().all(|x| !self.hom_shifts(&y, x).iter().any(bad));
                (y, inside, right, left)
            })
            .collect();
        for &(y, inside, right, left) in &verdicts {
            if !inside && right {
                return Ok(Some(DerivedWitness::InRightPerp(y)));
            }
            if !inside && left {
                return Ok(Some(DerivedWitness::InLeftPerp(y)));
            }
        }
        for &(y, inside, right, left) in &verdicts {
            if inside && !right {
                return Ok(Some(DerivedWitness::NotInRightPerp(y)));
            }
            if inside && !left {
                return Ok(Some(DerivedWitness::NotInLeftPerp(y)));
            }
        }
        Ok(None)
    }

    /// All d-cluster tilting subcategories closed under [d]: only arcs with
    /// Hom(tau X, X) = 0 can occur, and along the boundary a member forces
    /// its neighbour with a d-compatible grading, so candidates are residue
    /// assignments to those arcs; each candidate is then checked in full.
    pub fn search_dct_derived(&self, d: usize, window: i32) -> Result<Vec<DerivedSubcat>> {
        check_d(d)?;
        let required = self.required_window(d);
        if window < required {
            return Err(Error::WindowTooSmall { given: window, required });
        }
        let t = self.marked_points();
        let mut chords: Vec<GradedArc> = Vec::new();
        for a in 0..t {
            for b in a + 1..t {
                let x = self.arc(a, b, 0)?;
                if self.hom_tau_self(&x)? == 0 {
                    chords.push(x);
                }
            }
        }
        // order the surviving chords along the boundary
        let mut ring: Vec<(GradedArc, usize)> = Vec::new(); // (chord, shared point with the next)
        let mut m = 0;
        for _ in 0..t {
            let next = self.succ(m);
            if let Some(c) = chords.iter().find(|c| c.has_endpoint(m) && c.has_endpoint(next)) {
                if !ring.iter().any(|(r, _)| r == c) {
                    ring.push((*c, next));
                }
            }
            m = next;
        }
        let mut candidates: Vec<Vec<Option<GradedArc>>> = Vec::new();
        let mut current: Vec<Option<GradedArc>> = Vec::new();
        self.assign(&ring, d, &mut current, &mut candidates)?;
        let mut found: Vec<DerivedSubcat> = candidates
            .into_par_iter()
            .filter_map(|choice| {
                let arcs: Vec<GradedArc> = choice.into_iter().flatten().collect();
                if arcs.is_empty() {
                    return None;
                }
                let u = DerivedSubcat::new(d, arcs.into_iter().map(|a| ShiftClass::new(a, d)));
                match self.is_dct_derived(&u, window) {
                    Ok(None) => Some(Ok(u)),
                    Ok(Some(_)) => None,
                    Err(e) => Some(Err(e)),
                }
            })
            .collect::<Result<_>>()?;
        found.sort();
        found.dedup();
        Ok(found)
    }

    fn assign(
        &self,
        ring: &[(GradedArc, usize)],
        d: usize,
        current: &mut Vec<Option<GradedArc>>,
        out: &mut Vec<Vec<Option<GradedArc>>>,
    ) -> Result<()> {
        let k = current.len();
        let consistent = |a: &Option<GradedArc>, b: &Option<GradedArc>, m: usize| -> Result<bool> {
            match (a, b) {
                (None, None) => Ok(true),
                (Some(x), Some(y)) => self.d_compatible(x, y, m, d),
                _ => Ok(false),
            }
        };
        if k == ring.len() {
            if ring.len() > 1 {
                let (_, m) = ring[k - 1];
                if !consistent(&current[k - 1], &current[0], m)? {
                    return Ok(());
                }
            }
            out.push(current.clone());
            return Ok(());
        }
        let (chord, _) = ring[k];
        let mut options = vec![None];
        options.extend((0..d as i32).map(|r| Some(GradedArc { base: r, ..chord })));
        for opt in options {
            if k > 0 {
                let (_, m) = ring[k - 1];
                if !consistent(&current[k - 1], &opt, m)? {
                    continue;
                }
            }
            current.push(opt);
            self.assign(ring, d, current, out)?;
            current.pop();
        }
        Ok(())
    }

    /// No two arcs of U cross in the interior.
    pub fn no_interior_crossing_check(&self, u: &DerivedSubcat) -> bool {
        let arcs: Vec<&GradedArc> = u.classes.iter().map(|c| &c.arc).collect();
        arcs.iter().enumerate().all(|(i, x)| {
            arcs[i + 1..]
                .iter()
                .all(|y| !chords_cross(self.marked_points(), (x.a, x.b), (y.a, y.b)))
        })
    }

    /// Graded arcs whose whole grading lies in [-window, window], with the
    /// irreducible maps from the triangles and the translate.
    pub fn ar_quiver_derived(&self, window: i32) -> Result<DerivedArQuiver> {
        let mut nodes: Vec<GradedArc> = Vec::new();
        for x in self.universe(window) {
            if self.grading(&x).iter().all(|f| f.abs() <= window) {
                nodes.push(x);
            }
        }
        let index: BTreeMap<GradedArc, usize> = nodes.iter().enumerate().map(|(i, x)| (*x, i)).collect();
        let mut arrows = Vec::new();
        let mut tau = Vec::new();
        for (i, x) in nodes.iter().enumerate() {
            let (tx, middle) = self.ar_triangle(x)?;
            if let Some(&j) = index.get(&tx) {
                tau.push((i, j));
            }
            for y in middle {
                if let Some(&j) = index.get(&y) {
                    arrows.push((j, i));
                }
            }
        }
        arrows.sort();
        tau.sort();
        Ok(DerivedArQuiver { nodes, arrows, tau })
    }
}

fn check_d(d: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::InvalidArgument(format!("d must be at least 2, got {d}")));
    }
    Ok(())
}

/// Chords (a, b) and (c, d) on a circle of t points with four distinct
/// endpoints cross iff exactly one of c, d lies strictly between a and b.
pub fn chords_cross(t: usize, (a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
    let _ = t;
    if a == c || a == d || b == c || b == d {
        return false;
    }
    let (lo, hi) = (a.min(b), a.max(b));
    let inside = |x: usize| lo < x && x < hi;
    inside(c) != inside(d)
}

/// An arc between 0-based marked points `a < b`, graded `base` at the
/// crossing nearest `a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GradedArc {
    pub a: usize,
    pub b: usize,
    pub base: i32,
}

impl GradedArc {
    /// X[i]
    pub fn shifted(self, i: i32) -> Self {
        GradedArc { base: self.base - i, ..self }
    }

    pub fn has_endpoint(&self, m: usize) -> bool {
        self.a == m || self.b == m
    }
}

impl fmt::Display for GradedArc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "arc({},{})@{}", self.a + 1, self.b + 1, self.base)
    }
}

impl Serialize for GradedArc {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// The orbit {X[di]} of a graded arc, stored with base in 0..d.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ShiftClass {
    pub arc: GradedArc,
    pub d: usize,
}

impl ShiftClass {
    pub fn new(arc: GradedArc, d: usize) -> Self {
        ShiftClass { arc: GradedArc { base: arc.base.rem_euclid(d as i32), ..arc }, d }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct DerivedSubcat {
    pub d: usize,
    #[serde(serialize_with = "serialize_classes")]
    pub classes: BTreeSet<ShiftClass>,
}

fn serialize_classes<S: Serializer>(c: &BTreeSet<ShiftClass>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(c.iter().map(|x| x.arc))
}

impl DerivedSubcat {
    pub fn new(d: usize, classes: impl IntoIterator<Item = ShiftClass>) -> Self {
        DerivedSubcat { d, classes: classes.into_iter().collect() }
    }

    pub fn contains(&self, x: &GradedArc) -> bool {
        self.classes.contains(&ShiftClass::new(*x, self.d))
    }

    /// U[i]
    pub fn shifted(&self, i: i32) -> Self {
        DerivedSubcat::new(self.d, self.classes.iter().map(|c| ShiftClass::new(c.arc.shifted(i), self.d)))
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "arc", rename_all = "snake_case")]
pub enum DerivedWitness {
    InRightPerp(GradedArc),
    InLeftPerp(GradedArc),
    NotInRightPerp(GradedArc),
    NotInLeftPerp(GradedArc),
}

impl DerivedWitness {
    pub fn arc(&self) -> GradedArc {
        match *self {
            DerivedWitness::InRightPerp(a)
            | DerivedWitness::InLeftPerp(a)
            | DerivedWitness::NotInRightPerp(a)
            | DerivedWitness::NotInLeftPerp(a) => a,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DerivedArQuiver {
    pub nodes: Vec<GradedArc>,
    pub arrows: Vec<(usize, usize)>,
    pub tau: Vec<(usize, usize)>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::homotopy_hom_dim;
    use crate::surface::disk_model;

    fn disk(n: usize) -> Disk {
        Disk::new(&disk_model(n).unwrap()).unwrap()
    }

    #[test]
    fn example_grading_and_complex() {
        let k = disk(3);
        let x = k.parse_arc("arc(1,4)@0").unwrap();
        assert_eq!(k.grading(&x), vec![0, -1, -2]);
        let c = k.arc_to_complex(&x, Field::default()).unwrap();
        let text = c.to_text(k.algebra());
        assert_eq!(text, "deg -2: P_3\ndeg -1: P_2\ndeg 0: P_1\nd -2: [b]\nd -1: [a]\n");
    }

    #[test]
    fn minimal_arcs_are_stalks() {
        let k = disk(3);
        let g3 = k.parse_arc("arc(3,4)@2").unwrap();
        let c = k.arc_to_complex(&g3, Field::default()).unwrap();
        assert_eq!(c.to_text(k.algebra()), "deg 2: P_3\n");
        let g3 = k.parse_arc("arc(3,4)@-2").unwrap();
        let c = k.arc_to_complex(&g3, Field::default()).unwrap();
        assert_eq!(c, ProjComplex::stalk(2, -2));
    }

    #[test]
    fn map_to_shifted_projective() {
        let k = disk(3);
        let x = k.parse_arc("arc(1,4)@0").unwrap();
        let p3 = k.parse_arc("arc(3,4)@-2").unwrap();
        assert_eq!(k.hom_dim(&x, &p3, 0), 1);
        assert_eq!(k.hom_dim(&p3, &x, 0), 0);
    }

    #[test]
    fn reversed_endpoints_give_the_same_arc() {
        let k = disk(3);
        let x = k.arc(3, 0, -2).unwrap();
        assert_eq!(x, k.arc(0, 3, 0).unwrap());
        assert!(matches!(k.arc(1, 1, 0), Err(Error::EqualEndpoints)));
    }

    #[test]
    fn geometric_hom_matches_oracle_small() {
        let f = Field::default();
        for n in 2..=3 {
            let k = disk(n);
            let arcs = k.universe(2);
            let complexes: Vec<ProjComplex> = arcs.iter().map(|x| k.arc_to_complex(x, f).unwrap()).collect();
            for (i, x) in arcs.iter().enumerate() {
                for (j, y) in arcs.iter().enumerate() {
                    for s in -3..=3 {
                        let want = homotopy_hom_dim(k.algebra(), f, &complexes[i], &complexes[j], s).unwrap();
                        assert_eq!(k.hom_dim(x, y, s), want, "n={n} {x} -> {y} shift {s}");
                    }
                }
            }
        }
    }

    #[test]
    fn translate_rotates_clockwise() {
        let k = disk(3);
        let x = k.parse_arc("arc(2,4)@0").unwrap();
        let tx = k.tau(&x).unwrap();
        assert_eq!((tx.a, tx.b), (0, 2));
        assert_eq!(k.hom_dim(&x, &tx, 1), 1);
        let (_, middle) = k.ar_triangle(&x).unwrap();
        assert_eq!(middle.len(), 2);
        for y in &middle {
            assert_eq!(k.hom_dim(y, &x, 0), 1);
            assert_eq!(k.hom_dim(&tx, y, 0), 1);
        }
    }

    #[test]
    fn minimal_arcs_have_no_map_from_their_translate() {
        for n in 1..=5 {
            let k = disk(n);
            for x in k.universe(0) {
                let h = k.hom_tau_self(&x).unwrap();
                assert_eq!(h == 0, k.is_minimal(&x), "n={n} {x}");
            }
        }
    }

    #[test]
    fn serre_duality_small() {
        let k = disk(3);
        let u = k.universe(3);
        for x in &u {
            let tx = k.tau(x).unwrap();
            for y in &u {
                for i in -2..=2 {
                    assert_eq!(k.hom_dim(y, &tx, 1 + i), k.hom_dim(x, y, -i));
                }
            }
        }
    }

    #[test]
    fn search_matches_unpruned_enumeration() {
        let k = disk(3);
        let chords: Vec<GradedArc> = k.universe(0);
        for d in 2..=4 {
            let w = k.default_window(d);
            let mut brute = Vec::new();
            let options = d + 1;
            for code in 0..options.pow(chords.len() as u32) {
                let mut c = code;
                let mut classes = Vec::new();
                for x in &chords {
                    let r = c % options;
                    c /= options;
                    if r > 0 {
                        classes.push(ShiftClass::new(x.shifted(-(r as i32 - 1)), d));
                    }
                }
                if classes.is_empty() {
                    continue;
                }
                let u = DerivedSubcat::new(d, classes);
                if k.is_dct_derived(&u, w).unwrap().is_none() {
                    brute.push(u);
                }
            }
            brute.sort();
            assert_eq!(k.search_dct_derived(d, w).unwrap(), brute, "d={d}");
        }
    }

    #[test]
    fn boundary_walk_is_cluster_tilting_only_in_the_right_degree() {
        let k = disk(4);
        let x = k.parse_arc("arc(4,5)@0").unwrap();
        let u3 = k.v_x_d(&x, 3).unwrap();
        assert_eq!(u3.len(), 5);
        assert!(k.no_interior_crossing_check(&u3));
        assert_eq!(k.is_dct_derived(&u3, k.default_window(3)).unwrap(), None);

        let u2 = k.v_x_d(&x, 2).unwrap();
        let witness = k.is_dct_derived(&u2, k.default_window(2)).unwrap().unwrap();
        assert!(matches!(witness, DerivedWitness::InRightPerp(_) | DerivedWitness::InLeftPerp(_)));
        assert!(!k.is_minimal(&witness.arc()));
        assert_eq!(k.grading(&witness.arc()).len(), 3);
    }

    #[test]
    fn refusals() {
        let k = disk(4);
        let x = k.parse_arc("arc(1,3)@0").unwrap();
        assert!(matches!(k.v_x_d(&x, 3), Err(Error::NotMinimal)));
        let m = k.parse_arc("arc(1,2)@0").unwrap();
        let u = k.v_x_d(&m, 3).unwrap();
        assert!(matches!(
            k.is_dct_derived(&u, 5),
            Err(Error::WindowTooSmall { given: 5, required: 7 })
        ));
        assert!(matches!(k.d_compatible(&m, &x, 3, 2), Err(Error::NoSharedEndpoint(4))));
        assert!(k.parse_arc("arc(1,9)@0").is_err());
        assert!(k.parse_arc("arc 1,2").is_err());
        let annulus = Dissection::parse("polygon A: B1 x+ y-\npolygon B: B2 x- y+\n").unwrap();
        assert!(matches!(Disk::new(&annulus), Err(Error::NotADisk)));
    }

    #[test]
    fn single_edge_behaves_like_the_field() {
        let k = disk(1);
        for d in 2..=4 {
            let found = k.search_dct_derived(d, k.default_window(d)).unwrap();
            assert_eq!(found.len(), d, "d={d}");
        }
    }

    #[test]
    fn ar_meshes_close() {
        let k = disk(3);
        let q = k.ar_quiver_derived(4).unwrap();
        let into = |i: usize| q.arrows.iter().filter(|a| a.1 == i).count();
        let out_of = |i: usize| q.arrows.iter().filter(|a| a.0 == i).count();
        let inner = |i: usize| k.grading(&q.nodes[i]).iter().all(|f| f.abs() <= 2);
        let mut checked = 0;
        for &(x, tx) in &q.tau {
            if inner(x) && inner(tx) {
                assert_eq!(into(x), out_of(tx));
                checked += 1;
            }
        }
        assert!(checked > 0);
    }
}
