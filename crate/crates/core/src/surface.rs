//! Marked surfaces given as polygons glued along named edges.
//!
//! Every polygon lists its sides counterclockwise. A side is either an edge
//! of the dissection (`name+` or `name-`, each name used once with each sign)
//! or a boundary segment `B<k>` of boundary component `k`. Corner `j` of a
//! polygon is the end of side `j` and the start of side `j + 1`.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::quiver::{arrow_name, natural_cmp, Arrow, BoundQuiverAlgebra};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Edge { name: String, plus: bool },
    Boundary(u32),
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Edge { name, plus } => write!(f, "{name}{}", if *plus { '+' } else { '-' }),
            Side::Boundary(k) => write!(f, "B{k}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polygon {
    pub name: String,
    pub sides: Vec<Side>,
}

/// Polygon index and side (or corner) index.
pub type Slot = (usize, usize);

/// The edges of the dissection at one marked point, in the order in which
/// the arrows of the algebra run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    /// Corners around the point, starting after the incoming boundary segment.
    pub corners: Vec<Slot>,
    /// `edges[j]` is the edge between `corners[j]` and `corners[j + 1]`.
    pub edges: Vec<usize>,
    /// The side occurrence crossed when passing from `corners[j]` to `corners[j + 1]`.
    pub crossings: Vec<Slot>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceSummary {
    pub euler_characteristic: i64,
    pub genus: i64,
    pub boundary_components: usize,
    pub punctures: usize,
    pub marked_points: usize,
    pub edges: usize,
}

#[derive(Clone, Debug)]
pub struct Dissection {
    polygons: Vec<Polygon>,
    /// Edge names in natural order; index = vertex of the algebra.
    edges: Vec<String>,
    /// [plus occurrence, minus occurrence]
    occurrences: Vec<[Slot; 2]>,
    point_of_corner: Vec<Vec<usize>>,
    /// Boundary successor of each marked point.
    succ: Vec<usize>,
    component_of_point: Vec<usize>,
    component_labels: Vec<u32>,
    fans: Vec<Fan>,
    summary: SurfaceSummary,
}

impl PartialEq for Dissection {
    fn eq(&self, other: &Self) -> bool {
        self.polygons == other.polygons
    }
}

fn dissection_err(msg: impl Into<String>) -> Error {
    Error::Dissection(msg.into())
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra] = rb;
        }
    }
}

impl Dissection {
    pub fn new(polygons: Vec<Polygon>) -> Result<Self> {
        Self::build(polygons, false)
    }

    /// With `relabel`, boundary labels are ignored and reassigned as
    /// 1, 2, ... per boundary component.
    fn build(mut polygons: Vec<Polygon>, relabel: bool) -> Result<Self> {
        if polygons.is_empty() {
            return Err(dissection_err("no polygons"));
        }
        let mut names = BTreeSet::new();
        for p in &polygons {
            if !names.insert(p.name.clone()) {
                return Err(Error::Duplicate { kind: "polygon", name: p.name.clone() });
            }
            if p.sides.is_empty() {
                return Err(dissection_err(format!("polygon `{}` has no sides", p.name)));
            }
            let boundary = p.sides.iter().filter(|s| matches!(s, Side::Boundary(_))).count();
            if boundary > 1 {
                return Err(dissection_err(format!(
                    "polygon `{}` has {boundary} boundary segments; admissible polygons have at most one",
                    p.name
                )));
            }
            if boundary == p.sides.len() {
                return Err(dissection_err(format!("polygon `{}` has no edges", p.name)));
            }
        }

        // pair up edge occurrences
        let mut occ: BTreeMap<&str, (Vec<Slot>, Vec<Slot>)> = BTreeMap::new();
        for (pi, p) in polygons.iter().enumerate() {
            for (si, s) in p.sides.iter().enumerate() {
                if let Side::Edge { name, plus } = s {
                    let e = occ.entry(name.as_str()).or_default();
                    if *plus {
                        e.0.push((pi, si))
                    } else {
                        e.1.push((pi, si))
                    }
                }
            }
        }
        let mut edge_list: Vec<(&str, [Slot; 2])> = Vec::new();
        for (name, (plus, minus)) in occ {
            match (plus.len(), minus.len()) {
                (1, 1) => edge_list.push((name, [plus[0], minus[0]])),
                (p, m) if p + m != 2 => {
                    return Err(dissection_err(format!("edge `{name}` is used {} times, expected 2", p + m)))
                }
                _ => {
                    return Err(dissection_err(format!(
                        "edge `{name}` has inconsistent orientation: both occurrences carry the same sign"
                    )))
                }
            }
        }
        edge_list.sort_by(|a, b| natural_cmp(a.0, b.0));
        let edges: Vec<String> = edge_list.iter().map(|e| e.0.to_string()).collect();
        let occurrences: Vec<[Slot; 2]> = edge_list.iter().map(|e| e.1).collect();
        let mut edge_at: BTreeMap<Slot, usize> = BTreeMap::new();
        for (e, o) in occurrences.iter().enumerate() {
            edge_at.insert(o[0], e);
            edge_at.insert(o[1], e);
        }

        // glue corners
        let offsets: Vec<usize> = polygons
            .iter()
            .scan(0, |acc, p| {
                let o = *acc;
                *acc += p.sides.len();
                Some(o)
            })
            .collect();
        let total: usize = polygons.iter().map(|p| p.sides.len()).sum();
        let corner_id = |(p, j): Slot| offsets[p] + j;
        let len = |p: usize| polygons[p].sides.len();
        let start_corner = |(p, j): Slot| (p, (j + len(p) - 1) % len(p));
        let mut uf = UnionFind((0..total).collect());
        for o in &occurrences {
            let (a, b) = (o[0], o[1]);
            uf.union(corner_id(start_corner(a)), corner_id(b));
            uf.union(corner_id(a), corner_id(start_corner(b)));
        }
        let twin = |s: Slot| {
            let e = edge_at[&s];
            if occurrences[e][0] == s {
                occurrences[e][1]
            } else {
                occurrences[e][0]
            }
        };

        // links of marked points: chains of corners from boundary to boundary
        let mut visited = vec![false; total];
        let mut fans_by_class: BTreeMap<usize, Fan> = BTreeMap::new();
        for (pi, p) in polygons.iter().enumerate() {
            for j in 0..p.sides.len() {
                if !matches!(p.sides[j], Side::Boundary(_)) {
                    continue;
                }
                let mut fan = Fan { corners: Vec::new(), edges: Vec::new(), crossings: Vec::new() };
                let mut c = (pi, j);
                loop {
                    if visited[corner_id(c)] {
                        return Err(dissection_err("corner visited twice while walking around a marked point"));
                    }
                    visited[corner_id(c)] = true;
                    fan.corners.push(c);
                    let out = (c.0, (c.1 + 1) % len(c.0));
                    if matches!(polygons[out.0].sides[out.1], Side::Boundary(_)) {
                        break;
                    }
                    fan.edges.push(edge_at[&out]);
                    fan.crossings.push(out);
                    c = twin(out);
                }
                let class = uf.find(corner_id(fan.corners[0]));
                if fans_by_class.insert(class, fan).is_some() {
                    return Err(dissection_err(
                        "a marked point meets the boundary more than once (the gluing is not a surface)",
                    ));
                }
            }
        }
        if let Some(c) = visited.iter().position(|v| !v) {
            let p = offsets.iter().rposition(|&o| o <= c).unwrap();
            return Err(dissection_err(format!(
                "corner {} of polygon `{}` is an interior vertex; all vertices must lie on the boundary",
                c - offsets[p],
                polygons[p].name
            )));
        }

        // connectivity of the polygon complex
        let mut comp = UnionFind((0..polygons.len()).collect());
        for o in &occurrences {
            comp.union(o[0].0, o[1].0);
        }
        if (0..polygons.len()).any(|p| comp.find(p) != comp.find(0)) {
            return Err(dissection_err("the polygons do not glue to a connected surface"));
        }

        // label marked points: per boundary component in order of first
        // appearance, counterclockwise from the start of its first segment
        let mut class_succ: BTreeMap<usize, usize> = BTreeMap::new();
        for (pi, p) in polygons.iter().enumerate() {
            for (j, side) in p.sides.iter().enumerate() {
                if matches!(side, Side::Boundary(_)) {
                    let from = uf.find(corner_id(start_corner((pi, j))));
                    let to = uf.find(corner_id((pi, j)));
                    class_succ.insert(from, to);
                }
            }
        }
        let mut label_of_class: BTreeMap<usize, usize> = BTreeMap::new();
        let mut component_of_point = Vec::new();
        let mut component_labels = Vec::new();
        let mut succ_list: Vec<usize> = Vec::new();
        for (pi, p) in polygons.iter().enumerate() {
            for (j, s) in p.sides.iter().enumerate() {
                let Side::Boundary(k) = s else { continue };
                let first = uf.find(corner_id(start_corner((pi, j))));
                if label_of_class.contains_key(&first) {
                    continue;
                }
                let comp_idx = component_labels.len();
                let k = if relabel { comp_idx as u32 + 1 } else { *k };
                if component_labels.contains(&k) {
                    return Err(dissection_err(format!("boundary label B{k} is used on two boundary components")));
                }
                component_labels.push(k);
                let mut cur = first;
                let start_label = label_of_class.len();
                loop {
                    let label = label_of_class.len();
                    label_of_class.insert(cur, label);
                    component_of_point.push(comp_idx);
                    succ_list.push(label + 1);
                    cur = class_succ[&cur];
                    if cur == first {
                        *succ_list.last_mut().unwrap() = start_label;
                        break;
                    }
                }
            }
        }
        // boundary labels must agree along each component
        for (pi, p) in polygons.iter_mut().enumerate() {
            for (j, s) in p.sides.iter_mut().enumerate() {
                if let Side::Boundary(k) = s {
                    let pt = label_of_class[&uf.find(corner_id((pi, j)))];
                    if relabel {
                        *k = component_labels[component_of_point[pt]];
                    } else if component_labels[component_of_point[pt]] != *k {
                        return Err(dissection_err(format!(
                            "boundary segment B{k} in polygon `{}` lies on component B{}",
                            p.name,
                            component_labels[component_of_point[pt]]
                        )));
                    }
                }
            }
        }
        let point_of_corner: Vec<Vec<usize>> = polygons
            .iter()
            .enumerate()
            .map(|(pi, p)| (0..p.sides.len()).map(|j| label_of_class[&uf.find(corner_id((pi, j)))]).collect())
            .collect();
        let mut fans = vec![None; label_of_class.len()];
        for (class, fan) in fans_by_class {
            fans[label_of_class[&class]] = Some(fan);
        }
        let fans: Vec<Fan> = fans.into_iter().map(|f| f.expect("every point has a fan")).collect();

        let v = label_of_class.len() as i64;
        let boundary_segments = polygons
            .iter()
            .flat_map(|p| &p.sides)
            .filter(|s| matches!(s, Side::Boundary(_)))
            .count() as i64;
        let disk_faces = polygons.iter().filter(|p| p.sides.iter().any(|s| matches!(s, Side::Boundary(_)))).count();
        let punctures = polygons.len() - disk_faces;
        let euler = v - edges.len() as i64 - boundary_segments + disk_faces as i64;
        let b = (component_labels.len() + punctures) as i64;
        if (2 - b - euler) % 2 != 0 || 2 - b - euler < 0 {
            return Err(dissection_err(format!("inconsistent Euler characteristic {euler} with {b} boundary components")));
        }
        let summary = SurfaceSummary {
            euler_characteristic: euler,
            genus: (2 - b - euler) / 2,
            boundary_components: b as usize,
            punctures,
            marked_points: v as usize,
            edges: edges.len(),
        };
        Ok(Dissection {
            polygons,
            edges,
            occurrences,
            point_of_corner,
            succ: succ_list,
            component_of_point,
            component_labels,
            fans,
            summary,
        })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut polygons = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let syntax = |msg: String| Error::Syntax { line: i + 1, msg };
            let rest = line
                .strip_prefix("polygon")
                .filter(|r| r.starts_with(char::is_whitespace))
                .ok_or_else(|| syntax("expected `polygon <id>: <sides>`".into()))?;
            let (name, sides) = rest.split_once(':').ok_or_else(|| syntax("missing `:`".into()))?;
            let name = name.trim();
            if name.is_empty() || name.contains(char::is_whitespace) {
                return Err(syntax(format!("bad polygon id `{name}`")));
            }
            let sides = sides
                .split_whitespace()
                .map(|tok| {
                    if let Some(n) = tok.strip_suffix('+') {
                        Ok(Side::Edge { name: n.to_string(), plus: true })
                    } else if let Some(n) = tok.strip_suffix('-') {
                        Ok(Side::Edge { name: n.to_string(), plus: false })
                    } else if let Some(k) = tok.strip_prefix('B').and_then(|k| k.parse().ok()) {
                        Ok(Side::Boundary(k))
                    } else {
                        Err(syntax(format!("bad side `{tok}`: expected `<edge>+`, `<edge>-` or `B<k>`")))
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            if sides.iter().any(|s| matches!(s, Side::Edge { name, .. } if name.is_empty())) {
                return Err(syntax("empty edge name".into()));
            }
            polygons.push(Polygon { name: name.to_string(), sides });
        }
        Dissection::new(polygons)
    }

    pub fn serialize(&self) -> String {
        self.polygons
            .iter()
            .map(|p| {
                let sides: Vec<String> = p.sides.iter().map(Side::to_string).collect();
                format!("polygon {}: {}\n", p.name, sides.join(" "))
            })
            .collect()
    }

    pub fn polygons(&self) -> &[Polygon] {
        &self.polygons
    }

    pub fn edges(&self) -> &[String] {
        &self.edges
    }

    pub fn occurrences(&self, edge: usize) -> [Slot; 2] {
        self.occurrences[edge]
    }

    pub fn summary(&self) -> &SurfaceSummary {
        &self.summary
    }

    pub fn marked_point_count(&self) -> usize {
        self.succ.len()
    }

    /// Next marked point counterclockwise along the boundary.
    pub fn succ(&self, point: usize) -> usize {
        self.succ[point]
    }

    pub fn pred(&self, point: usize) -> usize {
        self.succ.iter().position(|&s| s == point).expect("succ is a permutation")
    }

    pub fn component_of(&self, point: usize) -> usize {
        self.component_of_point[point]
    }

    pub fn fan(&self, point: usize) -> &Fan {
        &self.fans[point]
    }

    pub fn corner_point(&self, (p, j): Slot) -> usize {
        self.point_of_corner[p][j]
    }

    /// Marked points at the start and end of an edge, following its `+` occurrence.
    pub fn edge_endpoints(&self, edge: usize) -> (usize, usize) {
        let (p, j) = self.occurrences[edge][0];
        let len = self.polygons[p].sides.len();
        (self.point_of_corner[p][(j + len - 1) % len], self.point_of_corner[p][j])
    }

    pub fn is_disk(&self) -> bool {
        let s = &self.summary;
        s.genus == 0 && s.boundary_components == 1 && s.punctures == 0
    }

    /// Arrows of the algebra as (corner, source edge, target edge), one per
    /// corner strictly inside a fan.
    pub fn corner_arrows(&self) -> Vec<(Slot, usize, usize)> {
        self.fans
            .iter()
            .flat_map(|fan| {
                (1..fan.corners.len().saturating_sub(1))
                    .map(move |j| (fan.corners[j], fan.edges[j - 1], fan.edges[j]))
            })
            .collect()
    }
}

/// The gentle algebra of the dissection. Arrows are named `a`, `b`, ... in
/// order of their (source, target) edges.
pub fn algebra_from_dissection(diss: &Dissection) -> Result<BoundQuiverAlgebra> {
    // per fan, arrow ids at consecutive interior corners
    let mut raw: Vec<(usize, usize, usize, usize)> = Vec::new(); // (src, tgt, fan, position)
    for (v, fan) in diss.fans.iter().enumerate() {
        for j in 1..fan.corners.len().saturating_sub(1) {
            raw.push((fan.edges[j - 1], fan.edges[j], v, j));
        }
    }
    let name_order = |a: usize, b: usize| natural_cmp(&diss.edges[a], &diss.edges[b]);
    let mut order: Vec<usize> = (0..raw.len()).collect();
    order.sort_by(|&x, &y| {
        name_order(raw[x].0, raw[y].0)
            .then_with(|| name_order(raw[x].1, raw[y].1))
            .then_with(|| (raw[x].2, raw[x].3).cmp(&(raw[y].2, raw[y].3)))
    });
    let mut id = vec![0; raw.len()];
    for (new, &old) in order.iter().enumerate() {
        id[old] = new;
    }
    let total = raw.len();
    let mut arrows = vec![None; total];
    for (k, &(s, t, _, _)) in raw.iter().enumerate() {
        arrows[id[k]] = Some(Arrow { name: arrow_name(id[k], total), source: s, target: t });
    }
    let arrows: Vec<Arrow> = arrows.into_iter().map(Option::unwrap).collect();
    let mut nonzero = BTreeSet::new();
    for (k, &(_, _, v, j)) in raw.iter().enumerate() {
        if let Some(next) = raw.iter().position(|&(_, _, v2, j2)| v2 == v && j2 == j + 1) {
            nonzero.insert((id[k], id[next]));
        }
    }
    let mut relations = BTreeSet::new();
    for (a, x) in arrows.iter().enumerate() {
        for (b, y) in arrows.iter().enumerate() {
            if x.target == y.source && !nonzero.contains(&(a, b)) {
                relations.insert((a, b));
            }
        }
    }
    BoundQuiverAlgebra::from_indices(diss.edges.clone(), arrows, relations)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualVertex {
    /// Polygon of the dissection that contains this vertex.
    pub polygon: String,
    pub puncture: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualEdge {
    /// The dissection edge crossed by this dual edge.
    pub crosses: String,
    pub ends: [usize; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualGraph {
    pub vertices: Vec<DualVertex>,
    pub edges: Vec<DualEdge>,
    pub punctureless: bool,
}

/// One dual vertex per polygon (on its boundary segment, or a puncture) and
/// one dual edge per dissection edge, joining the polygons on its two sides.
pub fn dual_graph(diss: &Dissection) -> DualGraph {
    let vertices: Vec<DualVertex> = diss
        .polygons
        .iter()
        .map(|p| DualVertex {
            polygon: p.name.clone(),
            puncture: !p.sides.iter().any(|s| matches!(s, Side::Boundary(_))),
        })
        .collect();
    let edges = diss
        .occurrences
        .iter()
        .enumerate()
        .map(|(e, o)| DualEdge { crosses: diss.edges[e].clone(), ends: [o[0].0, o[1].0] })
        .collect();
    let punctureless = vertices.iter().all(|v| !v.puncture);
    DualGraph { vertices, edges, punctureless }
}

/// The dual graph as a dissection in its own right: one polygon per marked
/// point, containing that point on its boundary segment. Dual edges keep the
/// names of the edges they cross.
pub fn dual_dissection(diss: &Dissection) -> Result<Dissection> {
    if diss.summary.punctures > 0 {
        return Err(dissection_err("the dual of a dissection with punctures is not supported"));
    }
    let polygons = (0..diss.marked_point_count())
        .map(|v| {
            let fan = &diss.fans[v];
            let mut sides = vec![Side::Boundary(diss.component_labels[diss.component_of_point[v]])];
            for &(p, j) in fan.crossings.iter().rev() {
                let Side::Edge { name, plus } = &diss.polygons[p].sides[j] else {
                    unreachable!("fan crossings are edges")
                };
                sides.push(Side::Edge { name: name.clone(), plus: !plus });
            }
            Polygon { name: format!("m{}", v + 1), sides }
        })
        .collect();
    Dissection::new(polygons)
}

/// Disk with n + 1 marked points cut by n edges, edge i joining the marked
/// points i and i + 1; its algebra is the linear radical square zero one.
pub fn disk_model(n: usize) -> Result<Dissection> {
    if n < 1 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let mut polygons: Vec<Polygon> = (1..=n)
        .map(|i| Polygon {
            name: format!("D{i}"),
            sides: vec![Side::Boundary(1), Side::Edge { name: i.to_string(), plus: false }],
        })
        .collect();
    let mut central: Vec<Side> = (1..=n).map(|i| Side::Edge { name: i.to_string(), plus: true }).collect();
    central.push(Side::Boundary(1));
    polygons.push(Polygon { name: "C".into(), sides: central });
    Dissection::new(polygons)
}

/// A random admissible dissection with at most `max_polygons` polygons,
/// found by rejection sampling over random edge pairings.
pub fn random_dissection<R: Rng>(rng: &mut R, max_polygons: usize) -> Dissection {
    let max_polygons = max_polygons.max(1);
    loop {
        let count = rng.gen_range(1..=max_polygons);
        let mut slots: Vec<usize> = Vec::new();
        let mut boundary = Vec::with_capacity(count);
        for p in 0..count {
            boundary.push(p == 0 || rng.gen_bool(0.85));
            for _ in 0..rng.gen_range(1..=4) {
                slots.push(p);
            }
        }
        if slots.len() % 2 == 1 {
            slots.push(rng.gen_range(0..count));
        }
        slots.shuffle(rng);
        let mut sides: Vec<Vec<Side>> = boundary
            .iter()
            .map(|&b| if b { vec![Side::Boundary(0)] } else { Vec::new() })
            .collect();
        for (k, pair) in slots.chunks(2).enumerate() {
            let name = format!("e{}", k + 1);
            sides[pair[0]].push(Side::Edge { name: name.clone(), plus: true });
            sides[pair[1]].push(Side::Edge { name, plus: false });
        }
        let polygons: Vec<Polygon> = sides
            .into_iter()
            .enumerate()
            .map(|(i, s)| Polygon { name: format!("P{}", i + 1), sides: s })
            .collect();
        if let Ok(d) = Dissection::build(polygons, true) {
            return d;
        }
    }
}
