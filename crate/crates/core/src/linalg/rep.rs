//! Quiver representations over GF(p) and the module-theoretic quantities
//! computed from them: Hom, projective covers, syzygies, Ext, global dimension.

use serde::{Deserialize, Serialize};

use super::matrix::{Field, Matrix};
use crate::error::{Error, Result};
use crate::quiver::{BoundQuiverAlgebra, Path};

/// A finite-dimensional representation: one space per vertex, one matrix per
/// arrow (target dim x source dim).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Representation {
    field: Field,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

/// A morphism of representations, one block per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepMap {
    pub blocks: Vec<Matrix>,
}

impl RepMap {
    pub fn zero(m: &Representation, n: &Representation) -> Self {
        RepMap { blocks: m.dims.iter().zip(&n.dims).map(|(&a, &b)| Matrix::zeros(b, a)).collect() }
    }

    pub fn identity(m: &Representation) -> Self {
        RepMap { blocks: m.dims.iter().map(|&d| Matrix::identity(d)).collect() }
    }

    /// `other` after `self`.
    pub fn then(&self, f: Field, other: &RepMap) -> RepMap {
        RepMap { blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| b.mul(f, a)).collect() }
    }

    pub fn add(&self, f: Field, other: &RepMap) -> RepMap {
        RepMap { blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.add(f, b)).collect() }
    }

    pub fn scale(&self, f: Field, s: u32) -> RepMap {
        RepMap { blocks: self.blocks.iter().map(|a| a.scale(f, s)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Matrix::is_zero)
    }

    pub fn is_invertible(&self, f: Field) -> bool {
        self.blocks.iter().all(|b| b.is_invertible(f))
    }

    pub fn flatten(&self) -> Vec<u32> {
        self.blocks.iter().flat_map(|b| (0..b.rows()).flat_map(move |r| b.row(r).to_vec())).collect()
    }

    fn from_flat(m: &Representation, n: &Representation, v: &[u32]) -> RepMap {
        let mut blocks = Vec::with_capacity(m.dims.len());
        let mut off = 0;
        for (&dm, &dn) in m.dims.iter().zip(&n.dims) {
            blocks.push(Matrix::from_rows(dn, dm, v[off..off + dn * dm].to_vec()));
            off += dn * dm;
        }
        RepMap { blocks }
    }

    fn is_nilpotent(&self, f: Field) -> bool {
        self.blocks.iter().all(|b| {
            let mut p = b.clone();
            for _ in 0..b.rows() {
                p = p.mul(f, b);
            }
            b.rows() == 0 || p.is_zero()
        })
    }
}

impl Representation {
    pub fn new(alg: &BoundQuiverAlgebra, field: Field, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Self> {
        if dims.len() != alg.vertex_count() || maps.len() != alg.arrow_count() {
            return Err(Error::InvalidArgument("representation does not match the quiver".into()));
        }
        for (a, m) in alg.arrows().iter().zip(&maps) {
            if m.rows() != dims[a.target] || m.cols() != dims[a.source] {
                return Err(Error::InvalidArgument(format!("matrix for {} has wrong size", a.name)));
            }
        }
        let rep = Representation { field, dims, maps };
        for &(a, b) in alg.relations() {
            if !rep.maps[b].mul(field, &rep.maps[a]).is_zero() {
                return Err(Error::InvalidArgument(format!(
                    "relation {}{} does not vanish",
                    alg.arrows()[a].name,
                    alg.arrows()[b].name
                )));
            }
        }
        Ok(rep)
    }

    pub fn zero(alg: &BoundQuiverAlgebra, field: Field) -> Self {
        let maps = alg.arrows().iter().map(|_| Matrix::zeros(0, 0)).collect();
        Representation { field, dims: vec![0; alg.vertex_count()], maps }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn map(&self, arrow: usize) -> &Matrix {
        &self.maps[arrow]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    fn check(&self, alg: &BoundQuiverAlgebra) -> Result<()> {
        if self.dims.len() != alg.vertex_count() || self.maps.len() != alg.arrow_count() {
            return Err(Error::InvalidArgument("representation over a different quiver".into()));
        }
        Ok(())
    }

    pub fn simple(alg: &BoundQuiverAlgebra, field: Field, v: usize) -> Self {
        let mut dims = vec![0; alg.vertex_count()];
        dims[v] = 1;
        let maps = alg
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(dims[a.target], dims[a.source]))
            .collect();
        Representation { field, dims, maps }
    }

    /// P_x: basis the nonzero paths starting at x; an arrow acts by appending.
    pub fn projective(alg: &BoundQuiverAlgebra, field: Field, x: usize) -> Result<Self> {
        let paths: Vec<Path> = alg.paths()?.into_iter().filter(|p| p.source == x).collect();
        Ok(Self::from_path_basis(alg, field, &paths, |p| p.target, |p, a| {
            alg.compose(p, &Path { source: alg.arrows()[a].source, target: alg.arrows()[a].target, arrows: vec![a] })
        }))
    }

    /// I_x: basis the nonzero paths ending at x; an arrow acts by removing it
    /// from the front.
    pub fn injective(alg: &BoundQuiverAlgebra, field: Field, x: usize) -> Result<Self> {
        let paths: Vec<Path> = alg.paths()?.into_iter().filter(|p| p.target == x).collect();
        Ok(Self::from_path_basis(alg, field, &paths, |p| p.source, |p, a| {
            if p.arrows.first() == Some(&a) {
                let rest = p.arrows[1..].to_vec();
                Some(Path { source: alg.arrows()[a].target, target: p.target, arrows: rest })
            } else {
                None
            }
        }))
    }

    fn from_path_basis(
        alg: &BoundQuiverAlgebra,
        field: Field,
        paths: &[Path],
        vertex_of: impl Fn(&Path) -> usize,
        act: impl Fn(&Path, usize) -> Option<Path>,
    ) -> Self {
        let n = alg.vertex_count();
        let mut dims = vec![0; n];
        let mut local = Vec::with_capacity(paths.len());
        for p in paths {
            let v = vertex_of(p);
            local.push(dims[v]);
            dims[v] += 1;
        }
        let mut maps: Vec<Matrix> =
            alg.arrows().iter().map(|a| Matrix::zeros(dims[a.target], dims[a.source])).collect();
        for (i, p) in paths.iter().enumerate() {
            for a in 0..alg.arrow_count() {
                if alg.arrows()[a].source != vertex_of(p) {
                    continue;
                }
                if let Some(q) = act(p, a) {
                    let j = paths.iter().position(|x| *x == q).expect("path basis closed");
                    maps[a].set(local[j], local[i], 1);
                }
            }
        }
        Representation { field, dims, maps }
    }

    pub fn direct_sum(&self, other: &Representation) -> Representation {
        let dims: Vec<usize> = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let maps = self
            .maps
            .iter()
            .zip(&other.maps)
            .map(|(a, b)| {
                let mut m = Matrix::zeros(a.rows() + b.rows(), a.cols() + b.cols());
                for r in 0..a.rows() {
                    for c in 0..a.cols() {
                        m.set(r, c, a.get(r, c));
                    }
                }
                for r in 0..b.rows() {
                    for c in 0..b.cols() {
                        m.set(a.rows() + r, a.cols() + c, b.get(r, c));
                    }
                }
                m
            })
            .collect();
        Representation { field: self.field, dims, maps }
    }

    /// Dimension vectors of the radical layers rad^j M / rad^{j+1} M.
    pub fn radical_layers(&self, alg: &BoundQuiverAlgebra) -> Vec<Vec<usize>> {
        let f = self.field;
        let n = self.dims.len();
        // current subspace per vertex, as column bases
        let mut cur: Vec<Vec<Vec<u32>>> = (0..n)
            .map(|v| (0..self.dims[v]).map(|i| unit(self.dims[v], i)).collect())
            .collect();
        let mut layers = Vec::new();
        loop {
            let mut next: Vec<Vec<Vec<u32>>> = vec![Vec::new(); n];
            for (a, arrow) in alg.arrows().iter().enumerate() {
                for v in &cur[arrow.source] {
                    next[arrow.target].push(self.maps[a].apply(f, v));
                }
            }
            let next: Vec<Vec<Vec<u32>>> = next
                .into_iter()
                .enumerate()
                .map(|(v, cols)| {
                    if cols.is_empty() {
                        Vec::new()
                    } else {
                        Matrix::from_columns(self.dims[v], &cols).column_space(f)
                    }
                })
                .collect();
            let layer: Vec<usize> = (0..n).map(|v| cur[v].len() - next[v].len()).collect();
            if cur.iter().all(|c| c.is_empty()) {
                break;
            }
            layers.push(layer);
            cur = next;
        }
        layers
    }
}

fn unit(n: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

fn check_pair(alg: &BoundQuiverAlgebra, m: &Representation, n: &Representation) -> Result<()> {
    m.check(alg)?;
    n.check(alg)?;
    if m.field != n.field {
        return Err(Error::InvalidArgument("representations over different fields".into()));
    }
    Ok(())
}

/// Linear system whose kernel is Hom(M, N).
fn hom_system(alg: &BoundQuiverAlgebra, m: &Representation, n: &Representation) -> Matrix {
    let f = m.field;
    let nv = alg.vertex_count();
    let mut offset = vec![0; nv + 1];
    for v in 0..nv {
        offset[v + 1] = offset[v] + n.dims[v] * m.dims[v];
    }
    let unknowns = offset[nv];
    let rows: usize = alg.arrows().iter().map(|a| n.dims[a.target] * m.dims[a.source]).sum();
    let mut sys = Matrix::zeros(rows, unknowns);
    let mut row = 0;
    for (ai, a) in alg.arrows().iter().enumerate() {
        let (s, t) = (a.source, a.target);
        let (ns, ms, nt, _mt) = (n.dims[s], m.dims[s], n.dims[t], m.dims[t]);
        let na = &n.maps[ai];
        let ma = &m.maps[ai];
        // (N(a) f_s - f_t M(a))_{ij}, i < nt, j < ms
        for i in 0..nt {
            for j in 0..ms {
                for k in 0..ns {
                    let c = na.get(i, k);
                    if c != 0 {
                        let col = offset[s] + k * ms + j;
                        sys.set(row, col, f.add(sys.get(row, col), c));
                    }
                }
                for k in 0..m.dims[t] {
                    let c = ma.get(k, j);
                    if c != 0 {
                        let col = offset[t] + i * m.dims[t] + k;
                        sys.set(row, col, f.sub(sys.get(row, col), c));
                    }
                }
                row += 1;
            }
        }
    }
    sys
}

pub fn hom_basis(alg: &BoundQuiverAlgebra, m: &Representation, n: &Representation) -> Result<Vec<RepMap>> {
    check_pair(alg, m, n)?;
    let sys = hom_system(alg, m, n);
    Ok(sys.kernel(m.field).iter().map(|v| RepMap::from_flat(m, n, v)).collect())
}

pub fn hom_dim(alg: &BoundQuiverAlgebra, m: &Representation, n: &Representation) -> Result<usize> {
    check_pair(alg, m, n)?;
    Ok(hom_system(alg, m, n).nullity(m.field))
}

/// Projective cover as a list of vertices (one per indecomposable summand)
/// together with the surjection P -> M.
pub struct ProjectiveCover {
    pub tops: Vec<usize>,
    pub module: Representation,
    pub surjection: RepMap,
}

pub fn projective_cover(alg: &BoundQuiverAlgebra, m: &Representation) -> Result<ProjectiveCover> {
    m.check(alg)?;
    let f = m.field;
    let paths = alg.paths()?;
    // generators: complement of the radical at each vertex
    let mut gens: Vec<(usize, Vec<u32>)> = Vec::new();
    for v in 0..alg.vertex_count() {
        let mut cols: Vec<Vec<u32>> = Vec::new();
        for a in alg.in_arrows(v) {
            let src = alg.arrows()[a].source;
            for i in 0..m.dims[src] {
                cols.push(m.maps[a].column(i));
            }
        }
        let mut basis: Vec<Vec<u32>> = if cols.is_empty() {
            Vec::new()
        } else {
            Matrix::from_columns(m.dims[v], &cols).column_space(f)
        };
        let mut rank = basis.len();
        for i in 0..m.dims[v] {
            let mut trial = basis.clone();
            trial.push(unit(m.dims[v], i));
            let r = Matrix::from_columns(m.dims[v], &trial).rank(f);
            if r > rank {
                basis = trial;
                rank = r;
                gens.push((v, unit(m.dims[v], i)));
            }
        }
    }
    let mut module = Representation::zero(alg, f);
    let mut blocks: Vec<Vec<Vec<u32>>> = vec![Vec::new(); alg.vertex_count()];
    let mut tops = Vec::new();
    for (v, vec) in &gens {
        let p = Representation::projective(alg, f, *v)?;
        // image of each path from v, in the same order as the projective's basis
        let mut images: Vec<Vec<Vec<u32>>> = vec![Vec::new(); alg.vertex_count()];
        for path in paths.iter().filter(|p| p.source == *v) {
            let mut w = vec.clone();
            for &a in &path.arrows {
                w = m.maps[a].apply(f, &w);
            }
            images[path.target].push(w);
        }
        for t in 0..alg.vertex_count() {
            blocks[t].extend(images[t].drain(..));
        }
        module = module.direct_sum(&p);
        tops.push(*v);
    }
    let surjection = RepMap {
        blocks: (0..alg.vertex_count())
            .map(|t| {
                if blocks[t].is_empty() {
                    Matrix::zeros(m.dims[t], 0)
                } else {
                    Matrix::from_columns(m.dims[t], &blocks[t])
                }
            })
            .collect(),
    };
    Ok(ProjectiveCover { tops, module, surjection })
}

/// Kernel of a morphism as a subrepresentation of its source.
pub fn kernel(alg: &BoundQuiverAlgebra, src: &Representation, map: &RepMap) -> Representation {
    let f = src.field;
    let bases: Vec<Vec<Vec<u32>>> = map.blocks.iter().map(|b| b.kernel(f)).collect();
    let dims: Vec<usize> = bases.iter().map(Vec::len).collect();
    let maps = alg
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            let mut out = Matrix::zeros(dims[a.target], dims[a.source]);
            if dims[a.target] == 0 || dims[a.source] == 0 {
                return out;
            }
            let target_basis = Matrix::from_columns(src.dims[a.target], &bases[a.target]);
            for (j, v) in bases[a.source].iter().enumerate() {
                let img = src.maps[ai].apply(f, v);
                let coords = target_basis.solve(f, &img).expect("kernel is a subrepresentation");
                for (i, c) in coords.into_iter().enumerate() {
                    out.set(i, j, c);
                }
            }
            out
        })
        .collect();
    Representation { field: f, dims, maps }
}

pub fn syzygy(alg: &BoundQuiverAlgebra, m: &Representation) -> Result<Representation> {
    let cover = projective_cover(alg, m)?;
    Ok(kernel(alg, &cover.module, &cover.surjection))
}

/// dim Hom(P_x, N) = dim N_x summed over the tops of a projective.
fn hom_from_projective(tops: &[usize], n: &Representation) -> usize {
    tops.iter().map(|&v| n.dims[v]).sum()
}

pub fn ext_dim(alg: &BoundQuiverAlgebra, m: &Representation, n: &Representation, i: usize) -> Result<usize> {
    check_pair(alg, m, n)?;
    if i == 0 {
        return Err(Error::InvalidArgument("Ext degree must be at least 1".into()));
    }
    let mut omega = m.clone();
    for _ in 0..i - 1 {
        omega = syzygy(alg, &omega)?;
        if omega.is_zero() {
            return Ok(0);
        }
    }
    let cover = projective_cover(alg, &omega)?;
    let next = kernel(alg, &cover.module, &cover.surjection);
    let hom_next = hom_dim(alg, &next, n)?;
    let hom_p = hom_from_projective(&cover.tops, n);
    let hom_prev = hom_dim(alg, &omega, n)?;
    Ok(hom_next + hom_prev - hom_p)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GlobalDimension {
    Finite(usize),
    Infinite,
    AboveCap,
}

impl std::fmt::Display for GlobalDimension {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GlobalDimension::Finite(g) => write!(f, "{g}"),
            GlobalDimension::Infinite => write!(f, "infinite"),
            GlobalDimension::AboveCap => write!(f, "above cap"),
        }
    }
}

/// Projective dimension of a module, with repeat detection on radical-layer
/// fingerprints of the syzygies.
pub fn projective_dimension(alg: &BoundQuiverAlgebra, m: &Representation, cap: usize) -> Result<GlobalDimension> {
    let mut seen: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut omega = m.clone();
    for k in 0..=cap {
        let next = syzygy(alg, &omega)?;
        if next.is_zero() {
            return Ok(GlobalDimension::Finite(k));
        }
        let fp = next.radical_layers(alg);
        if seen.contains(&fp) {
            return Ok(GlobalDimension::Infinite);
        }
        seen.push(fp);
        omega = next;
    }
    Ok(GlobalDimension::AboveCap)
}

pub fn global_dimension(alg: &BoundQuiverAlgebra, field: Field, cap: usize) -> Result<GlobalDimension> {
    if cap < 1 {
        return Err(Error::InvalidArgument("cap must be at least 1".into()));
    }
    let mut best = 0;
    let mut above = false;
    for v in 0..alg.vertex_count() {
        match projective_dimension(alg, &Representation::simple(alg, field, v), cap)? {
            GlobalDimension::Finite(g) => best = best.max(g),
            GlobalDimension::Infinite => return Ok(GlobalDimension::Infinite),
            GlobalDimension::AboveCap => above = true,
        }
    }
    Ok(if above { GlobalDimension::AboveCap } else { GlobalDimension::Finite(best) })
}

/// Basis of the nilpotent part of End(M) if End(M) = K id + N with N a
/// nilpotent ideal; `None` when that decomposition cannot be certified.
fn local_radical(alg: &BoundQuiverAlgebra, m: &Representation) -> Result<Option<Vec<RepMap>>> {
    let f = m.field;
    let basis = hom_basis(alg, m, m)?;
    let id = RepMap::identity(m);
    let mut rad = Vec::new();
    for b in &basis {
        let mut found = None;
        let total = m.total_dim() as u32;
        let candidates: Vec<u32> = if total % f.modulus() != 0 {
            let tr = b.blocks.iter().fold(0, |acc, blk| (0..blk.rows()).fold(acc, |a, i| f.add(a, blk.get(i, i))));
            vec![f.mul(tr, f.inv(total % f.modulus()))]
        } else {
            (0..f.modulus()).collect()
        };
        for lam in candidates {
            let shifted = b.add(f, &id.scale(f, f.neg(lam)));
            if shifted.is_nilpotent(f) {
                found = Some(shifted);
                break;
            }
        }
        match found {
            Some(n) => {
                if !n.is_zero() {
                    rad.push(n)
                }
            }
            None => return Ok(None),
        }
    }
    // span of the shifted elements must be a nilpotent ideal
    let span = |maps: &[RepMap]| -> Vec<Vec<u32>> {
        if maps.is_empty() {
            return Vec::new();
        }
        let cols: Vec<Vec<u32>> = maps.iter().map(RepMap::flatten).collect();
        Matrix::from_columns(cols[0].len(), &cols).column_space(f)
    };
    let rad_span = span(&rad);
    let as_maps: Vec<RepMap> = rad_span.iter().map(|v| RepMap::from_flat(m, m, v)).collect();
    let mut power = as_maps.clone();
    for _ in 0..=m.total_dim() {
        if power.is_empty() {
            return Ok(Some(as_maps));
        }
        let products: Vec<RepMap> = power
            .iter()
            .flat_map(|x| as_maps.iter().map(move |y| x.then(f, y)))
            .filter(|p| !p.is_zero())
            .collect();
        let next = span(&products);
        power = next.iter().map(|v| RepMap::from_flat(m, m, v)).collect();
    }
    Ok(None)
}

pub fn is_indecomposable(alg: &BoundQuiverAlgebra, m: &Representation) -> Result<bool> {
    if m.is_zero() {
        return Ok(false);
    }
    let basis = hom_basis(alg, m, m)?;
    if basis.len() == 1 {
        return Ok(true);
    }
    if local_radical(alg, m)?.is_some() {
        return Ok(true);
    }
    // exhaustive idempotent search when End is small enough
    let f = m.field;
    let k = basis.len() as u32;
    let count = (f.modulus() as u64).checked_pow(k).unwrap_or(u64::MAX);
    if count > 1 << 16 {
        return Ok(false);
    }
    let id = RepMap::identity(m);
    for idx in 1..count {
        let mut e = RepMap::zero(m, m);
        let mut r = idx;
        for b in &basis {
            let c = (r % f.modulus() as u64) as u32;
            r /= f.modulus() as u64;
            if c != 0 {
                e = e.add(f, &b.scale(f, c));
            }
        }
        if e != id && !e.is_zero() && e.then(f, &e) == e {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Isomorphism test for two indecomposable representations.
pub fn is_isomorphic_indecomposable(alg: &BoundQuiverAlgebra, m: &Representation, n: &Representation) -> Result<bool> {
    check_pair(alg, m, n)?;
    if m.dims != n.dims {
        return Ok(false);
    }
    let f = m.field;
    let fs = hom_basis(alg, m, n)?;
    let gs = hom_basis(alg, n, m)?;
    for x in &fs {
        for y in &gs {
            if x.then(f, y).is_invertible(f) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Radical morphisms between indecomposables: all of Hom(M, N) when M and N
/// are not isomorphic, otherwise the nilpotent endomorphisms.
pub fn radical_basis(alg: &BoundQuiverAlgebra, m: &Representation, n: &Representation, same: bool) -> Result<Vec<RepMap>> {
    if !same {
        return hom_basis(alg, m, n);
    }
    match local_radical(alg, m)? {
        Some(r) => Ok(r),
        None => Err(Error::Internal("endomorphism ring is not local".into())),
    }
}
