//! DOT, TikZ and SVG output for AR quivers and dissected surfaces.

use std::collections::VecDeque;
use std::f64::consts::PI;
use std::fmt::Write;

use crate::derived::{DerivedArQuiver, DerivedSubcat, Disk};
use crate::module_dct::{ArQuiver, IndecCatalog, Subcat};
use crate::surface::{Dissection, Side};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub label: String,
    pub boxed: bool,
}

/// A quiver with solid irreducible maps and dashed translation edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    pub nodes: Vec<Node>,
    pub arrows: Vec<(usize, usize)>,
    pub tau: Vec<(usize, usize)>,
}

impl Diagram {
    pub fn from_module(cat: &IndecCatalog, q: &ArQuiver, members: Option<&Subcat>) -> Self {
        let nodes = (0..cat.len())
            .map(|i| Node { label: cat.label(i), boxed: members.is_some_and(|u| u.contains(i)) })
            .collect();
        let arrows = q.arrows.iter().flat_map(|&(a, b, m)| std::iter::repeat_n((a, b), m)).collect();
        Diagram { nodes, arrows, tau: q.tau.clone() }
    }

    pub fn from_derived(q: &DerivedArQuiver, members: Option<&DerivedSubcat>) -> Self {
        let nodes = q
            .nodes
            .iter()
            .map(|x| Node { label: x.to_string(), boxed: members.is_some_and(|u| u.contains(x)) })
            .collect();
        Diagram { nodes, arrows: q.arrows.clone(), tau: q.tau.clone() }
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph ar {\n  rankdir=LR;\n  node [shape=plaintext];\n");
        for (i, n) in self.nodes.iter().enumerate() {
            let shape = if n.boxed { ", shape=box" } else { "" };
            writeln!(s, "  n{i} [label=\"{}\"{shape}];", n.label).unwrap();
        }
        for &(a, b) in &self.arrows {
            writeln!(s, "  n{a} -> n{b};").unwrap();
        }
        for &(x, tx) in &self.tau {
            writeln!(s, "  n{x} -> n{tx} [style=dashed, arrowhead=none, constraint=false];").unwrap();
        }
        s.push_str("}\n");
        s
    }

    /// Columns by distance from the sources of the arrow graph.
    fn layout(&self) -> Vec<(usize, usize)> {
        let n = self.nodes.len();
        let mut column = vec![usize::MAX; n];
        let mut indeg = vec![0; n];
        for &(_, b) in &self.arrows {
            indeg[b] += 1;
        }
        let mut queue: VecDeque<usize> = VecDeque::new();
        loop {
            let start = (0..n).filter(|&v| column[v] == usize::MAX).min_by_key(|&v| (indeg[v], v));
            let Some(start) = start else { break };
            column[start] = 0;
            queue.push_back(start);
            while let Some(v) = queue.pop_front() {
                for &(a, b) in &self.arrows {
                    if a == v && column[b] == usize::MAX {
                        column[b] = column[v] + 1;
                        queue.push_back(b);
                    }
                }
            }
        }
        let mut used = vec![0; n + 1];
        column
            .into_iter()
            .map(|c| {
                let row = used[c];
                used[c] += 1;
                (c, row)
            })
            .collect()
    }

    pub fn to_tikz(&self) -> String {
        let pos = self.layout();
        let mut s = String::from("\\begin{tikzpicture}[x=2cm, y=1.2cm]\n");
        for (i, n) in self.nodes.iter().enumerate() {
            let style = if n.boxed { "[draw]" } else { "" };
            let (x, y) = pos[i];
            writeln!(s, "  \\node{style} (n{i}) at ({x},{}) {{${}$}};", -(y as i64), tex(&n.label)).unwrap();
        }
        for &(a, b) in &self.arrows {
            writeln!(s, "  \\draw[->] (n{a}) -- (n{b});").unwrap();
        }
        for &(x, tx) in &self.tau {
            writeln!(s, "  \\draw[dotted] (n{x}) -- (n{tx});").unwrap();
        }
        s.push_str("\\end{tikzpicture}\n");
        s
    }
}

fn tex(label: &str) -> String {
    label.replace('_', "\\_").replace('@', "{@}")
}

fn xml(label: &str) -> String {
    label.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Straight-line drawing: marked points on a circle for disks, otherwise
/// each polygon drawn as a regular polygon with labelled sides.
struct Sketch {
    points: Vec<(f64, f64, String)>,
    lines: Vec<(f64, f64, f64, f64, String, bool)>,
    width: f64,
    height: f64,
    circle: Option<(f64, f64, f64)>,
}

fn sketch(diss: &Dissection) -> Sketch {
    if diss.is_disk() {
        let t = diss.marked_point_count();
        let (cx, cy, r) = (150.0, 150.0, 110.0);
        let at = |v: usize| {
            let th = PI / 2.0 + 2.0 * PI * v as f64 / t as f64;
            (cx + r * th.cos(), cy - r * th.sin())
        };
        let points = (0..t)
            .map(|v| {
                let (x, y) = at(v);
                (x, y, format!("m{}", v + 1))
            })
            .collect();
        let lines = (0..diss.edges().len())
            .map(|e| {
                let (a, b) = diss.edge_endpoints(e);
                let ((x1, y1), (x2, y2)) = (at(a), at(b));
                (x1, y1, x2, y2, diss.edges()[e].clone(), false)
            })
            .collect();
        return Sketch { points, lines, width: 300.0, height: 300.0, circle: Some((cx, cy, r)) };
    }
    let mut lines = Vec::new();
    let r = 60.0;
    for (p, poly) in diss.polygons().iter().enumerate() {
        let k = poly.sides.len().max(2);
        let (cx, cy) = (80.0 + 160.0 * p as f64, 90.0);
        let corner = |j: usize| {
            let th = -PI / 2.0 + 2.0 * PI * j as f64 / k as f64;
            (cx + r * th.cos(), cy - r * th.sin())
        };
        for (j, side) in poly.sides.iter().enumerate() {
            let ((x1, y1), (x2, y2)) = (corner(j), corner(j + 1));
            let boundary = matches!(side, Side::Boundary(_));
            lines.push((x1, y1, x2, y2, side.to_string(), boundary));
        }
    }
    let width = 160.0 * diss.polygons().len() as f64;
    Sketch { points: Vec::new(), lines, width, height: 180.0, circle: None }
}

pub fn surface_svg(diss: &Dissection) -> String {
    let sk = sketch(diss);
    let mut s = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0}\" height=\"{:.0}\" font-family=\"sans-serif\" font-size=\"12\">\n",
        sk.width, sk.height
    );
    if let Some((cx, cy, r)) = sk.circle {
        writeln!(s, "  <circle cx=\"{cx:.1}\" cy=\"{cy:.1}\" r=\"{r:.1}\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>").unwrap();
    }
    for (x1, y1, x2, y2, label, boundary) in &sk.lines {
        let width = if *boundary { 3 } else { 1 };
        writeln!(
            s,
            "  <line x1=\"{x1:.1}\" y1=\"{y1:.1}\" x2=\"{x2:.1}\" y2=\"{y2:.1}\" stroke=\"black\" stroke-width=\"{width}\"/>"
        )
        .unwrap();
        let (mx, my) = ((x1 + x2) / 2.0, (y1 + y2) / 2.0);
        writeln!(s, "  <text x=\"{mx:.1}\" y=\"{my:.1}\" fill=\"blue\">{}</text>", xml(label)).unwrap();
    }
    for (x, y, label) in &sk.points {
        writeln!(s, "  <circle cx=\"{x:.1}\" cy=\"{y:.1}\" r=\"4\" fill=\"black\"/>").unwrap();
        writeln!(s, "  <text x=\"{:.1}\" y=\"{:.1}\">{label}</text>", x + 6.0, y - 6.0).unwrap();
    }
    s.push_str("</svg>\n");
    s
}

pub fn surface_tikz(diss: &Dissection) -> String {
    let sk = sketch(diss);
    let scale = |v: f64| v / 50.0;
    let mut s = String::from("\\begin{tikzpicture}[yscale=-1]\n");
    if let Some((cx, cy, r)) = sk.circle {
        writeln!(s, "  \\draw[thick] ({:.2},{:.2}) circle ({:.2});", scale(cx), scale(cy), scale(r)).unwrap();
    }
    for (x1, y1, x2, y2, label, boundary) in &sk.lines {
        let style = if *boundary { "very thick" } else { "" };
        writeln!(
            s,
            "  \\draw[{style}] ({:.2},{:.2}) -- node[blue, fill=white, inner sep=1pt] {{{}}} ({:.2},{:.2});",
            scale(*x1),
            scale(*y1),
            tex(label),
            scale(*x2),
            scale(*y2)
        )
        .unwrap();
    }
    for (x, y, label) in &sk.points {
        writeln!(s, "  \\fill ({:.2},{:.2}) circle (2pt) node[above right] {{${label}$}};", scale(*x), scale(*y))
            .unwrap();
    }
    s.push_str("\\end{tikzpicture}\n");
    s
}

/// Diagram of the derived AR quiver of a disk with an optional subcategory boxed.
pub fn derived_diagram(disk: &Disk, window: i32, members: Option<&DerivedSubcat>) -> crate::Result<Diagram> {
    Ok(Diagram::from_derived(&disk.ar_quiver_derived(window)?, members))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Field;
    use crate::module_dct::{ar_quiver_module, search_dct_module};
    use crate::quiver::make_a_n_mod_j2;
    use crate::surface::disk_model;

    #[test]
    fn module_quiver_dot_boxes_members() {
        let alg = make_a_n_mod_j2(3).unwrap();
        let cat = IndecCatalog::new(&alg, Field::default(), 10, 3).unwrap();
        let q = ar_quiver_module(&cat).unwrap();
        let u = search_dct_module(&cat, 2).unwrap().remove(0);
        let d = Diagram::from_module(&cat, &q, Some(&u));
        assert_eq!(d.nodes.iter().filter(|n| n.boxed).count(), 4);
        let dot = d.to_dot();
        assert_eq!(dot.matches("shape=box").count(), 4);
        assert_eq!(dot.matches("style=dashed").count(), 2);
        assert_eq!(dot.matches(" -> ").count(), 6);
        let tikz = d.to_tikz();
        assert_eq!(tikz.matches("[draw]").count(), 4);
        assert_eq!(tikz, d.to_tikz());
    }

    #[test]
    fn disk_drawing_has_points_and_chords() {
        let diss = disk_model(3).unwrap();
        let svg = surface_svg(&diss);
        assert_eq!(svg.matches("<line").count(), 3);
        assert_eq!(svg.matches("r=\"4\"").count(), 4);
        assert!(surface_tikz(&diss).contains("circle"));
        let annulus = Dissection::parse("polygon A: B1 x+ y-\npolygon B: B2 x- y+\n").unwrap();
        assert_eq!(surface_svg(&annulus).matches("<line").count(), 6);
    }
}
