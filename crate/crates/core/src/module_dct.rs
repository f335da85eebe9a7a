//! Cluster tilting in module categories of representation-finite gentle
//! algebras: catalog of indecomposables, Ext tables, perpendicular
//! categories, exhaustive search and the AR quiver.

use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::linalg::rep::{global_dimension, hom_dim, projective_cover, radical_basis, syzygy};
use crate::linalg::{Field, GlobalDimension, Matrix, RepMap, Representation};
use crate::quiver::{BoundQuiverAlgebra, Shape};
use crate::string::{
    enumerate_strings, injective_string, max_string_length, projective_string, string_module, StringWord,
};

/// A set of catalog indices, sorted and deduplicated.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Subcat(Vec<usize>);

impl Subcat {
    pub fn new(items: impl IntoIterator<Item = usize>) -> Self {
        let set: BTreeSet<usize> = items.into_iter().collect();
        Subcat(set.into_iter().collect())
    }

    pub fn members(&self) -> &[usize] {
        &self.0
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub word: StringWord,
    pub module: Representation,
}

/// All indecomposable modules of a representation-finite gentle algebra with
/// Hom and Ext^i tables for 1 <= i <= `ext_depth`.
#[derive(Clone, Debug)]
pub struct IndecCatalog {
    alg: BoundQuiverAlgebra,
    field: Field,
    entries: Vec<CatalogEntry>,
    projectives: Vec<usize>,
    injectives: Vec<usize>,
    hom: Vec<Vec<usize>>,
    /// ext[i - 1][x][y] = dim Ext^i(x, y)
    ext: Vec<Vec<Vec<usize>>>,
}

impl IndecCatalog {
    pub fn new(alg: &BoundQuiverAlgebra, field: Field, max_len: usize, ext_depth: usize) -> Result<Self> {
        alg.require_gentle()?;
        let longest = max_string_length(alg).ok_or(Error::BandDetected)?;
        if longest > max_len {
            return Err(Error::Truncated(max_len));
        }
        let words = enumerate_strings(alg, max_len).strings;
        let entries = words
            .into_par_iter()
            .map(|word| {
                let module = string_module(alg, field, &word)?;
                Ok(CatalogEntry { word, module })
            })
            .collect::<Result<Vec<_>>>()?;
        let find = |w: StringWord| -> Result<usize> {
            let w = w.canonical(alg);
            entries
                .iter()
                .position(|e| e.word == w)
                .ok_or_else(|| Error::Internal(format!("string {} missing from catalog", w.display(alg))))
        };
        let projectives = (0..alg.vertex_count()).map(|x| find(projective_string(alg, x)?)).collect::<Result<_>>()?;
        let injectives = (0..alg.vertex_count()).map(|x| find(injective_string(alg, x)?)).collect::<Result<_>>()?;
        let mut cat = IndecCatalog {
            alg: alg.clone(),
            field,
            entries,
            projectives,
            injectives,
            hom: Vec::new(),
            ext: Vec::new(),
        };
        cat.fill_tables(ext_depth)?;
        Ok(cat)
    }

    fn fill_tables(&mut self, depth: usize) -> Result<()> {
        let alg = &self.alg;
        // syzygy chains: omega[k] and the tops of its projective cover
        let chains = self
            .entries
            .par_iter()
            .map(|e| {
                let mut omegas = vec![e.module.clone()];
                let mut tops = Vec::new();
                for _ in 0..depth {
                    let last = omegas.last().unwrap();
                    if last.is_zero() {
                        break;
                    }
                    tops.push(projective_cover(alg, last)?.tops);
                    omegas.push(syzygy(alg, last)?);
                }
                Ok((omegas, tops))
            })
            .collect::<Result<Vec<_>>>()?;
        let n = self.entries.len();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).collect();
        let rows = pairs
            .par_iter()
            .map(|&(x, y)| {
                let target = &self.entries[y].module;
                let (omegas, tops) = &chains[x];
                let homs = omegas.iter().map(|o| hom_dim(alg, o, target)).collect::<Result<Vec<_>>>()?;
                let exts: Vec<usize> = (1..=depth)
                    .map(|i| {
                        if i >= omegas.len() {
                            return 0;
                        }
                        let from_p: usize = tops[i - 1].iter().map(|&v| target.dims()[v]).sum();
                        homs[i] + homs[i - 1] - from_p
                    })
                    .collect();
                Ok((homs[0], exts))
            })
            .collect::<Result<Vec<_>>>()?;
        self.hom = vec![vec![0; n]; n];
        self.ext = vec![vec![vec![0; n]; n]; depth];
        for (&(x, y), (h, exts)) in pairs.iter().zip(rows) {
            self.hom[x][y] = h;
            for (i, e) in exts.into_iter().enumerate() {
                self.ext[i][x][y] = e;
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> &BoundQuiverAlgebra {
        &self.alg
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn projectives(&self) -> &[usize] {
        &self.projectives
    }

    pub fn injectives(&self) -> &[usize] {
        &self.injectives
    }

    pub fn ext_depth(&self) -> usize {
        self.ext.len()
    }

    pub fn hom(&self, x: usize, y: usize) -> usize {
        self.hom[x][y]
    }

    pub fn ext(&self, x: usize, y: usize, i: usize) -> usize {
        assert!(i >= 1 && i <= self.ext.len(), "Ext degree {i} outside the computed table");
        self.ext[i - 1][x][y]
    }

    /// Short name: `P_x`, `I_x` or `S_x` where it applies, else the string.
    pub fn label(&self, i: usize) -> String {
        let name = |x: usize| self.alg.vertices()[x].clone();
        if let Some(x) = self.projectives.iter().position(|&p| p == i) {
            return format!("P_{}", name(x));
        }
        if let Some(x) = self.injectives.iter().position(|&p| p == i) {
            return format!("I_{}", name(x));
        }
        let w = &self.entries[i].word;
        if w.is_empty() {
            return format!("S_{}", name(w.base));
        }
        w.display(&self.alg)
    }

    fn check_depth(&self, d: usize) -> Result<()> {
        if d < 2 {
            return Err(Error::InvalidArgument(format!("d must be at least 2, got {d}")));
        }
        if d - 1 > self.ext.len() {
            return Err(Error::InvalidArgument(format!(
                "Ext table has depth {}, d = {d} needs {}",
                self.ext.len(),
                d - 1
            )));
        }
        Ok(())
    }

    fn orthogonal(&self, x: usize, y: usize, d: usize) -> bool {
        (1..d).all(|i| self.ext[i - 1][x][y] == 0)
    }

    pub fn view(&self) -> CatalogView {
        CatalogView {
            objects: (0..self.len())
                .map(|i| CatalogObject {
                    label: self.label(i),
                    string: self.entries[i].word.display(&self.alg),
                    dims: self.entries[i].module.dims().to_vec(),
                })
                .collect(),
            hom: self.hom.clone(),
            ext: self.ext.clone(),
        }
    }
}

#[derive(Serialize)]
pub struct CatalogObject {
    pub label: String,
    pub string: String,
    pub dims: Vec<usize>,
}

#[derive(Serialize)]
pub struct CatalogView {
    pub objects: Vec<CatalogObject>,
    pub hom: Vec<Vec<usize>>,
    /// ext[i - 1][x][y] = dim Ext^i(x, y)
    pub ext: Vec<Vec<Vec<usize>>>,
}

/// {X : Ext^i(U, X) = 0 for 1 <= i <= d - 1}
pub fn perp_right(cat: &IndecCatalog, u: &Subcat, d: usize) -> Result<Subcat> {
    cat.check_depth(d)?;
    Ok(Subcat::new((0..cat.len()).filter(|&x| u.members().iter().all(|&m| cat.orthogonal(m, x, d)))))
}

/// {X : Ext^i(X, U) = 0 for 1 <= i <= d - 1}
pub fn perp_left(cat: &IndecCatalog, u: &Subcat, d: usize) -> Result<Subcat> {
    cat.check_depth(d)?;
    Ok(Subcat::new((0..cat.len()).filter(|&x| u.members().iter().all(|&m| cat.orthogonal(x, m, d)))))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModuleWitness {
    MissingProjective { object: usize },
    MissingInjective { object: usize },
    Extension { from: usize, to: usize, degree: usize },
    RightPerpNotInside { object: usize },
    LeftPerpNotInside { object: usize },
}

/// `Ok(None)` when U is d-cluster tilting, otherwise the first failure found.
pub fn is_dct_module(cat: &IndecCatalog, u: &Subcat, d: usize) -> Result<Option<ModuleWitness>> {
    cat.check_depth(d)?;
    if let Some(&p) = cat.projectives.iter().find(|&&p| !u.contains(p)) {
        return Ok(Some(ModuleWitness::MissingProjective { object: p }));
    }
    if let Some(&q) = cat.injectives.iter().find(|&&q| !u.contains(q)) {
        return Ok(Some(ModuleWitness::MissingInjective { object: q }));
    }
    for &x in u.members() {
        for &y in u.members() {
            if let Some(i) = (1..d).find(|&i| cat.ext(x, y, i) != 0) {
                return Ok(Some(ModuleWitness::Extension { from: x, to: y, degree: i }));
            }
        }
    }
    if let Some(&x) = perp_right(cat, u, d)?.members().iter().find(|&&x| !u.contains(x)) {
        return Ok(Some(ModuleWitness::RightPerpNotInside { object: x }));
    }
    if let Some(&x) = perp_left(cat, u, d)?.members().iter().find(|&&x| !u.contains(x)) {
        return Ok(Some(ModuleWitness::LeftPerpNotInside { object: x }));
    }
    Ok(None)
}

/// All d-cluster tilting subcategories. Each one is a maximal set of mutually
/// Ext-orthogonal objects containing the projectives and injectives, so the
/// search enumerates maximal cliques of the orthogonality graph and then
/// checks the perpendicular conditions.
pub fn search_dct_module(cat: &IndecCatalog, d: usize) -> Result<Vec<Subcat>> {
    cat.check_depth(d)?;
    let forced = Subcat::new(cat.projectives.iter().chain(&cat.injectives).copied());
    let n = cat.len();
    let compatible = |x: usize, y: usize| cat.orthogonal(x, y, d) && cat.orthogonal(y, x, d);
    if forced.members().iter().any(|&x| forced.members().iter().any(|&y| !compatible(x, y))) {
        return Ok(Vec::new());
    }
    let candidates: Vec<usize> = (0..n)
        .filter(|&x| !forced.contains(x))
        .filter(|&x| compatible(x, x))
        .filter(|&x| forced.members().iter().all(|&f| compatible(f, x)))
        .collect();
    let mut cliques = Vec::new();
    let adjacent = |x: usize, y: usize| x != y && compatible(x, y);
    bron_kerbosch(&adjacent, Vec::new(), candidates, Vec::new(), &mut cliques);
    let mut found: Vec<Subcat> = cliques
        .into_par_iter()
        .map(|c| Subcat::new(forced.members().iter().copied().chain(c)))
        .filter_map(|u| match is_dct_module(cat, &u, d) {
            Ok(None) => Some(Ok(u)),
            Ok(Some(_)) => None,
            Err(e) => Some(Err(e)),
        })
        .collect::<Result<_>>()?;
    found.sort();
    found.dedup();
    Ok(found)
}

fn bron_kerbosch(
    adj: &dyn Fn(usize, usize) -> bool,
    r: Vec<usize>,
    mut p: Vec<usize>,
    mut x: Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if p.is_empty() && x.is_empty() {
        out.push(r);
        return;
    }
    let pivot = p.iter().chain(&x).copied().max_by_key(|&u| p.iter().filter(|&&v| adj(u, v)).count());
    let branch: Vec<usize> = match pivot {
        Some(u) => p.iter().copied().filter(|&v| !adj(u, v)).collect(),
        None => p.clone(),
    };
    for v in branch {
        let mut r2 = r.clone();
        r2.push(v);
        let p2 = p.iter().copied().filter(|&w| w != v && adj(v, w)).collect();
        let x2 = x.iter().copied().filter(|&w| adj(v, w)).collect();
        bron_kerbosch(adj, r2, p2, x2, out);
        p.retain(|&w| w != v);
        x.push(v);
    }
}

/// Values of d >= 2 for which the algebra has a d-cluster tilting module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DrfSet {
    /// Every d >= 2 (the field itself).
    All,
    Values(BTreeSet<usize>),
}

impl DrfSet {
    pub fn contains(&self, d: usize) -> bool {
        match self {
            DrfSet::All => d >= 2,
            DrfSet::Values(v) => v.contains(&d),
        }
    }
}

impl std::fmt::Display for DrfSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DrfSet::All => write!(f, "all d >= 2"),
            DrfSet::Values(v) => {
                let items: Vec<String> = v.iter().map(usize::to_string).collect();
                write!(f, "{{{}}}", items.join(", "))
            }
        }
    }
}

fn divisors_from_two(m: usize) -> BTreeSet<usize> {
    (2..=m).filter(|d| m % d == 0).collect()
}

/// Weak d-representation-finiteness decided from the shape: the linear
/// radical square zero Nakayama algebra with n vertices qualifies iff
/// d divides n - 1, the cyclic one on n + 1 vertices iff d divides n + 1.
pub fn classify_weakly_drf(alg: &BoundQuiverAlgebra) -> Result<DrfSet> {
    alg.require_gentle()?;
    if !alg.is_radical_square_zero() {
        return Ok(DrfSet::Values(BTreeSet::new()));
    }
    Ok(match alg.shape() {
        Shape::LinearNakayama(1) => DrfSet::All,
        Shape::LinearNakayama(n) => DrfSet::Values(divisors_from_two(n - 1)),
        Shape::CyclicNakayama(n) => DrfSet::Values(divisors_from_two(n + 1)),
        _ => DrfSet::Values(BTreeSet::new()),
    })
}

/// `Some(d)` iff the algebra is d-representation finite d-hereditary, which
/// happens exactly for the linear radical square zero algebra on d + 1 vertices.
pub fn classify_drf_hereditary(alg: &BoundQuiverAlgebra) -> Result<Option<usize>> {
    alg.require_gentle()?;
    let Shape::LinearNakayama(n) = alg.shape() else {
        return Ok(None);
    };
    if !alg.is_radical_square_zero() || n < 3 {
        return Ok(None);
    }
    match global_dimension(alg, Field::default(), n + 1)? {
        GlobalDimension::Finite(g) if g == n - 1 => Ok(Some(g)),
        _ => Ok(None),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArQuiver {
    /// (from, to, multiplicity) of irreducible maps
    pub arrows: Vec<(usize, usize, usize)>,
    /// (x, tau x) for every non-projective x
    pub tau: Vec<(usize, usize)>,
}

impl ArQuiver {
    pub fn arrows_into(&self, x: usize) -> BTreeSet<(usize, usize)> {
        self.arrows.iter().filter(|a| a.1 == x).map(|a| (a.0, a.2)).collect()
    }

    pub fn arrows_out_of(&self, x: usize) -> BTreeSet<(usize, usize)> {
        self.arrows.iter().filter(|a| a.0 == x).map(|a| (a.1, a.2)).collect()
    }
}

/// Irreducible maps as rad / rad^2, and the translate by mesh completion.
pub fn ar_quiver_module(cat: &IndecCatalog) -> Result<ArQuiver> {
    let alg = &cat.alg;
    let f = cat.field;
    let n = cat.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).collect();
    let rad: Vec<Vec<RepMap>> = pairs
        .par_iter()
        .map(|&(x, y)| {
            if cat.hom[x][y] == 0 {
                return Ok(Vec::new());
            }
            radical_basis(alg, &cat.entries[x].module, &cat.entries[y].module, x == y)
        })
        .collect::<Result<_>>()?;
    let rad_at = |x: usize, y: usize| &rad[x * n + y];
    let arrows: Vec<(usize, usize, usize)> = pairs
        .par_iter()
        .filter_map(|&(x, y)| {
            let direct = rad_at(x, y);
            if direct.is_empty() {
                return None;
            }
            let mut squares: Vec<Vec<u32>> = Vec::new();
            for z in 0..n {
                for g in rad_at(x, z) {
                    for h in rad_at(z, y) {
                        let comp = g.then(f, h);
                        if !comp.is_zero() {
                            squares.push(comp.flatten());
                        }
                    }
                }
            }
            let square_dim = if squares.is_empty() {
                0
            } else {
                Matrix::from_columns(squares[0].len(), &squares).rank(f)
            };
            let irr = direct.len() - square_dim;
            (irr > 0).then_some((x, y, irr))
        })
        .collect();
    let mut quiver = ArQuiver { arrows, tau: Vec::new() };
    quiver.arrows.sort();
    for x in 0..n {
        if cat.projectives.contains(&x) {
            continue;
        }
        let into = quiver.arrows_into(x);
        let mut dim = vec![0i64; alg.vertex_count()];
        for &(y, m) in &into {
            for (v, &k) in cat.entries[y].module.dims().iter().enumerate() {
                dim[v] += (m * k) as i64;
            }
        }
        for (v, &k) in cat.entries[x].module.dims().iter().enumerate() {
            dim[v] -= k as i64;
        }
        let tau = (0..n).find(|&z| {
            !cat.injectives.contains(&z)
                && cat.entries[z].module.dims().iter().zip(&dim).all(|(&a, &b)| a as i64 == b)
                && quiver.arrows_out_of(z).iter().map(|&(t, m)| (t, m)).collect::<BTreeSet<_>>()
                    == into.iter().copied().collect()
        });
        match tau {
            Some(z) => quiver.tau.push((x, z)),
            None => return Err(Error::Internal(format!("no mesh closes at {}", cat.label(x)))),
        }
    }
    Ok(quiver)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{make_a_n, make_a_n_mod_j2, make_tilde_a_n_mod_j2};

    fn catalog(alg: &BoundQuiverAlgebra, depth: usize) -> IndecCatalog {
        IndecCatalog::new(alg, Field::default(), 64, depth).unwrap()
    }

    fn index(cat: &IndecCatalog, label: &str) -> usize {
        (0..cat.len()).find(|&i| cat.label(i) == label).unwrap()
    }

    #[test]
    fn catalog_sizes() {
        assert_eq!(catalog(&make_a_n_mod_j2(3).unwrap(), 2).len(), 5);
        assert_eq!(catalog(&make_tilde_a_n_mod_j2(3).unwrap(), 2).len(), 8);
        assert_eq!(catalog(&make_a_n_mod_j2(5).unwrap(), 2).len(), 9);
    }

    #[test]
    fn band_algebra_is_refused() {
        let text = "vertex 1\nvertex 2\narrow a 1 2\narrow b 1 2\n";
        let alg = BoundQuiverAlgebra::parse(text).unwrap();
        assert_eq!(IndecCatalog::new(&alg, Field::default(), 64, 1).unwrap_err(), Error::BandDetected);
    }

    #[test]
    fn a3_j2_has_one_two_cluster_tilting_subcategory() {
        let cat = catalog(&make_a_n_mod_j2(3).unwrap(), 2);
        let found = search_dct_module(&cat, 2).unwrap();
        assert_eq!(found.len(), 1);
        let labels: BTreeSet<String> = found[0].members().iter().map(|&i| cat.label(i)).collect();
        let expected: BTreeSet<String> = ["P_1", "P_2", "P_3", "I_1"].iter().map(|s| s.to_string()).collect();
        assert_eq!(labels, expected);
        assert!(search_dct_module(&cat, 3).unwrap().is_empty());
    }

    #[test]
    fn whole_catalog_is_not_cluster_tilting() {
        let cat = catalog(&make_a_n_mod_j2(3).unwrap(), 1);
        let all = Subcat::new(0..cat.len());
        let s2 = index(&cat, "S_2");
        assert!(matches!(is_dct_module(&cat, &all, 2).unwrap(), Some(ModuleWitness::Extension { .. })));
        assert!(!perp_right(&cat, &all, 2).unwrap().contains(s2));
        assert_eq!(perp_right(&cat, &Subcat::new([]), 2).unwrap().len(), cat.len());
    }

    #[test]
    fn cyclic_case_has_two_cluster_tilting() {
        let cat = catalog(&make_tilde_a_n_mod_j2(3).unwrap(), 3);
        assert_eq!(cat.ext_depth(), 3);
        // one choice of simples per residue class
        assert_eq!(search_dct_module(&cat, 2).unwrap().len(), 2);
        assert!(search_dct_module(&cat, 3).unwrap().is_empty());
    }

    #[test]
    fn classification_values() {
        let v = |xs: &[usize]| DrfSet::Values(xs.iter().copied().collect());
        assert_eq!(classify_weakly_drf(&make_a_n_mod_j2(5).unwrap()).unwrap(), v(&[2, 4]));
        assert_eq!(classify_weakly_drf(&make_a_n_mod_j2(4).unwrap()).unwrap(), v(&[3]));
        assert_eq!(classify_weakly_drf(&make_tilde_a_n_mod_j2(3).unwrap()).unwrap(), v(&[2, 4]));
        assert_eq!(classify_weakly_drf(&make_a_n_mod_j2(1).unwrap()).unwrap(), DrfSet::All);
        assert_eq!(classify_weakly_drf(&make_a_n(3).unwrap()).unwrap(), v(&[]));
        assert_eq!(classify_drf_hereditary(&make_a_n_mod_j2(3).unwrap()).unwrap(), Some(2));
        assert_eq!(classify_drf_hereditary(&make_a_n_mod_j2(4).unwrap()).unwrap(), Some(3));
        assert_eq!(classify_drf_hereditary(&make_a_n_mod_j2(5).unwrap()).unwrap(), Some(4));
        assert_eq!(classify_drf_hereditary(&make_tilde_a_n_mod_j2(3).unwrap()).unwrap(), None);
    }

    #[test]
    fn ar_quiver_of_a3_j2() {
        let cat = catalog(&make_a_n_mod_j2(3).unwrap(), 1);
        let q = ar_quiver_module(&cat).unwrap();
        let named = |x: usize, y: usize| (cat.label(x), cat.label(y));
        let arrows: BTreeSet<_> = q.arrows.iter().map(|&(x, y, m)| (named(x, y), m)).collect();
        let s = |a: &str, b: &str| ((a.to_string(), b.to_string()), 1);
        let expected: BTreeSet<_> =
            [s("P_3", "P_2"), s("P_2", "S_2"), s("S_2", "P_1"), s("P_1", "I_1")].into_iter().collect();
        assert_eq!(arrows, expected);
        let tau: BTreeSet<_> = q.tau.iter().map(|&(x, y)| named(x, y)).collect();
        let expected: BTreeSet<_> =
            [("S_2".to_string(), "P_3".to_string()), ("I_1".to_string(), "S_2".to_string())].into_iter().collect();
        assert_eq!(tau, expected);
    }

    #[test]
    fn ar_quiver_meshes_close() {
        let cat = catalog(&make_a_n_mod_j2(4).unwrap(), 1);
        let q = ar_quiver_module(&cat).unwrap();
        assert_eq!(cat.len(), 7);
        for &(x, t) in &q.tau {
            assert_eq!(q.arrows_into(x), q.arrows_out_of(t));
        }
    }
}
