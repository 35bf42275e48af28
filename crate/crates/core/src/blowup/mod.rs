//! Blown-up intersection cochains of a full filtered complex.
//!
//! A compatible family `(ω_σ)` over the regular simplices is determined by
//! one coefficient per face `(F, ε)` of a blow-up, and faces of different
//! blow-ups are identified exactly when they share `F`. The global complex
//! therefore has the basis of classes `(τ, ε)` with `τ` regular and `ε_i`
//! free for the singular levels met by `τ`.

mod local;

pub use local::{face_cup, BlownUpFace, DecomposedSimplex, LocalBlownUpComplex, PartFace};

use std::collections::HashMap;
use std::ops::Range;

use thiserror::Error;

use crate::algebra::{
    allowed_subcomplex_homology, allowed_subcomplex_lattices, equality_classes, AlgebraError, Coefficients,
    EuclideanRing, FreeComplex, HomologyResult, Integer, Integers, Lattice, SparseMatrix, SparseVec, Step,
};
use crate::chains::{ChainError, Perversity};
use crate::complex::{clots, join_complex, link, residual, ComplexError, FilteredComplex, Simplex};
use crate::extint::ExtInt;
use crate::with_ring;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BlowupError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("{0} is not a regular simplex")]
    NotRegular(String),
    #[error("{0} is not a clot")]
    NotAClot(String),
    #[error("contract violated: {0}")]
    Contract(String),
}

/// A basis class `1_{(τ, ε)}`: `eps` has bit `ℓ` set when `ε_ℓ = 1`, for
/// the singular levels `ℓ` met by `τ`; levels missed by `τ` carry the
/// virtual apex and are not recorded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Class {
    pub simplex: usize,
    pub eps: u64,
}

/// `Ñ*(K)` on the class basis, with its coboundary.
#[derive(Clone, Debug)]
pub struct BlowupComplex<'a> {
    pub complex: &'a FilteredComplex,
    classes: Vec<Class>,
    index: HashMap<Class, usize>,
    by_degree: Vec<Range<usize>>,
    coboundary: Vec<SparseMatrix<Integer>>,
}

/// Sizes `|τ_ℓ|` of the parts of simplex `i`.
pub(crate) fn part_sizes(k: &FilteredComplex, i: usize) -> Vec<usize> {
    let mut sizes = vec![0; k.n() + 1];
    for v in k.simplex(i).vertices() {
        sizes[k.vertex_level(*v).unwrap()] += 1;
    }
    sizes
}

/// `dim(τ_j, ε_j)` for each level `j`.
pub(crate) fn factor_dims(sizes: &[usize], eps: u64) -> Vec<usize> {
    let n = sizes.len() - 1;
    (0..=n)
        .map(|j| {
            if sizes[j] == 0 {
                0
            } else {
                sizes[j] - 1 + (j < n && eps >> j & 1 == 1) as usize
            }
        })
        .collect()
}

/// Bits of the singular levels met by a part-size vector.
fn free_levels(sizes: &[usize]) -> u64 {
    let n = sizes.len() - 1;
    (0..n).filter(|&l| sizes[l] > 0).fold(0, |m, l| m | 1 << l)
}

impl<'a> BlowupComplex<'a> {
    pub fn new(k: &'a FilteredComplex) -> Result<Self, BlowupError> {
        k.require_full()?;
        if k.n() >= 64 {
            return Err(BlowupError::Contract("formal dimension above 63".into()));
        }
        let n = k.n();
        let mut classes = Vec::new();
        for i in 0..k.len() {
            if k.level(i) != n {
                continue;
            }
            let free = free_levels(&part_sizes(k, i));
            // every submask of the free levels
            let mut m = free;
            loop {
                classes.push(Class { simplex: i, eps: m });
                if m == 0 {
                    break;
                }
                m = (m - 1) & free;
            }
        }
        let degree = |c: &Class| Self::degree_of(k, c);
        classes.sort_by(|a, b| degree(a).cmp(&degree(b)).then_with(|| a.cmp(b)));
        let top = classes.last().map_or(0, |c| degree(c) + 1);
        let mut by_degree = vec![0..0; top];
        let mut start = 0;
        for (d, r) in by_degree.iter_mut().enumerate() {
            let end = start + classes[start..].iter().take_while(|c| degree(c) == d).count();
            *r = start..end;
            start = end;
        }
        let index: HashMap<Class, usize> = classes.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        let mut up: Vec<Vec<usize>> = vec![Vec::new(); k.len()];
        for j in 0..k.len() {
            for &f in k.facets_of(j) {
                up[f].push(j);
            }
        }
        let mut bc = BlowupComplex { complex: k, classes, index, by_degree, coboundary: Vec::new() };
        bc.coboundary = (0..top)
            .map(|d| {
                let rows = bc.degree_range(d + 1).len();
                let target = bc.degree_range(d + 1).start;
                let cols = bc
                    .degree_range(d)
                    .map(|c| {
                        let mut col: Vec<(usize, Integer)> = bc
                            .class_coboundary(bc.classes[c], &up[bc.classes[c].simplex])
                            .into_iter()
                            .map(|(j, s)| (j - target, Integer::from(s)))
                            .collect();
                        col.sort_by_key(|e| e.0);
                        col
                    })
                    .collect();
                SparseMatrix::from_columns(rows, cols)
            })
            .collect();
        Ok(bc)
    }

    /// `Σ_j dim(τ_j, ε_j) = dim τ - |I_τ| + 1 + #ε`.
    pub fn degree_of(k: &FilteredComplex, c: &Class) -> usize {
        factor_dims(&part_sizes(k, c.simplex), c.eps).iter().sum()
    }

    fn class_coboundary(&self, c: Class, cofaces: &[usize]) -> Vec<(usize, i64)> {
        let k = self.complex;
        let n = k.n();
        let sizes = part_sizes(k, c.simplex);
        let dims = factor_dims(&sizes, c.eps);
        let before: Vec<usize> = dims.iter().scan(0, |acc, d| {
            let b = *acc;
            *acc += d;
            Some(b)
        }).collect();
        let tau = k.simplex(c.simplex);
        let mut out = Vec::new();
        for &j in cofaces {
            let x = *k.simplex(j).vertices().iter().find(|v| !tau.contains(**v)).expect("coface");
            let l = k.vertex_level(x).unwrap();
            let pos = tau.vertices().iter().filter(|w| **w < x && k.vertex_level(**w) == Some(l)).count();
            let eps = if l < n && sizes[l] == 0 { c.eps | 1 << l } else { c.eps };
            let sign = if (before[l] + pos) % 2 == 0 { 1 } else { -1 };
            out.push((self.index[&Class { simplex: j, eps }], sign));
        }
        for l in 0..n {
            if sizes[l] > 0 && c.eps >> l & 1 == 0 {
                let sign = if (before[l] + sizes[l]) % 2 == 0 { 1 } else { -1 };
                out.push((self.index[&Class { simplex: c.simplex, eps: c.eps | 1 << l }], sign));
            }
        }
        out
    }

    pub fn classes(&self) -> &[Class] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Number of degrees carrying classes.
    pub fn degrees(&self) -> usize {
        self.by_degree.len()
    }

    pub fn degree_range(&self, d: usize) -> Range<usize> {
        self.by_degree.get(d).cloned().unwrap_or(self.len()..self.len())
    }

    pub fn degree(&self, c: usize) -> usize {
        Self::degree_of(self.complex, &self.classes[c])
    }

    pub fn index_of(&self, c: &Class) -> Option<usize> {
        self.index.get(c).copied()
    }

    /// Position of class `c` inside its degree.
    pub fn position(&self, c: usize) -> usize {
        c - self.degree_range(self.degree(c)).start
    }

    /// The local face `(τ, ε)` in the blow-up of `τ` itself.
    pub fn face(&self, c: usize) -> BlownUpFace {
        let k = self.complex;
        let Class { simplex, eps } = self.classes[c];
        let d = k.decompose(simplex);
        let n = k.n();
        let parts = d
            .parts
            .into_iter()
            .enumerate()
            .map(|(l, vertices)| {
                let cone = l < n && (vertices.is_empty() || eps >> l & 1 == 1);
                PartFace { vertices, cone }
            })
            .collect();
        BlownUpFace { parts }
    }

    /// The class of the face `(F, ε)`, where `F` is the simplex `f`.
    pub fn class_of_face(&self, f: &BlownUpFace) -> Option<usize> {
        let s = Simplex::new(f.vertices()).ok()?;
        let i = self.complex.index_of(&s)?;
        let eps = f.parts.iter().enumerate().filter(|(_, p)| p.cone && !p.vertices.is_empty()).fold(0, |m, (l, _)| m | 1 << l);
        self.index_of(&Class { simplex: i, eps })
    }

    pub fn coboundary_matrices(&self) -> &[SparseMatrix<Integer>] {
        &self.coboundary
    }

    pub fn as_free_complex(&self) -> FreeComplex<Integer> {
        let dims = (0..self.degrees()).map(|d| self.degree_range(d).len()).collect();
        FreeComplex::new(Step::Up, dims, self.coboundary.clone()).expect("coboundary shapes")
    }

    /// `‖1_{(τ,ε)}‖_S` for the stratum `S` met by `τ` at level `l < n`;
    /// `-∞` when `τ` misses level `l` or `ε_l = 1`.
    pub fn perverse_degree(&self, c: usize, l: usize) -> ExtInt {
        let Class { simplex, eps } = self.classes[c];
        let sizes = part_sizes(self.complex, simplex);
        if l >= self.complex.n() || sizes[l] == 0 || eps >> l & 1 == 1 {
            return ExtInt::NegInf;
        }
        ExtInt::from(factor_dims(&sizes, eps)[l + 1..].iter().sum::<usize>())
    }

    /// `‖1_c‖_S` for a stratum index, as the supremum over regular
    /// simplices meeting `S` of the local perverse degree.
    pub fn stratum_perverse_degree(&self, c: usize, stratum: usize) -> ExtInt {
        let k = self.complex;
        let st = &k.strata()[stratum];
        if st.regular || k.stratum_at(self.classes[c].simplex, st.level) != Some(stratum) {
            return ExtInt::NegInf;
        }
        self.perverse_degree(c, st.level)
    }

    /// Whether class `c` is allowable for the per-stratum values `values`.
    pub fn is_allowable_with(&self, c: usize, values: &[ExtInt]) -> bool {
        let k = self.complex;
        let Class { simplex, eps } = self.classes[c];
        let sizes = part_sizes(k, simplex);
        let dims = factor_dims(&sizes, eps);
        (0..k.n()).all(|l| {
            if sizes[l] == 0 || eps >> l & 1 == 1 {
                return true;
            }
            let s = k.stratum_at(simplex, l).expect("full complex");
            ExtInt::from(dims[l + 1..].iter().sum::<usize>()) <= values[s]
        })
    }

    /// Allowability flags grouped by degree, optionally also requiring the
    /// simplex to satisfy `keep`.
    pub fn allowed_masks(&self, p: &Perversity, keep: impl Fn(usize) -> bool) -> Result<Vec<Vec<bool>>, BlowupError> {
        let values = p.values_on(self.complex)?;
        Ok((0..self.degrees())
            .map(|d| {
                self.degree_range(d)
                    .map(|c| keep(self.classes[c].simplex) && self.is_allowable_with(c, &values))
                    .collect()
            })
            .collect())
    }

    /// Bases of `Ñ^d_p̄(K)` in class coordinates.
    pub fn intersection_lattices(&self, p: &Perversity) -> Result<Vec<Lattice<Integers>>, BlowupError> {
        let masks = self.allowed_masks(p, |_| true)?;
        Ok(allowed_subcomplex_lattices(&Integers, &self.as_free_complex(), &masks))
    }

    /// The cochain as a vector over all classes, split by degree.
    pub fn split_by_degree(&self, v: &[(usize, Integer)]) -> Vec<SparseVec<Integer>> {
        let mut out = vec![Vec::new(); self.degrees()];
        for (c, x) in v {
            out[self.degree(*c)].push((self.position(*c), x.clone()));
        }
        out
    }
}

/// Checks the compatibility model: over every regular simplex `σ` and
/// every face of its blow-up, the equalities imposed by regular face
/// operators have exactly one equivalence class per `(τ, ε)`. Returns the
/// number of classes found.
pub fn compatibility_classes(k: &FilteredComplex) -> Result<usize, BlowupError> {
    let bc = BlowupComplex::new(k)?;
    let n = k.n();
    let mut ids: HashMap<(usize, BlownUpFace), usize> = HashMap::new();
    let mut locals = Vec::new();
    for i in 0..k.len() {
        if k.level(i) != n {
            continue;
        }
        let local = LocalBlownUpComplex::new(&DecomposedSimplex::of_simplex(k, i))?;
        for f in local.faces() {
            let id = ids.len();
            ids.insert((i, f.clone()), id);
        }
        locals.push((i, local));
    }
    let mut pairs = Vec::new();
    for (i, local) in &locals {
        for &j in k.facets_of(*i) {
            if k.level(j) != n {
                continue;
            }
            let face = k.simplex(j);
            for f in local.faces() {
                if f.vertices().iter().all(|v| face.contains(*v)) {
                    pairs.push((ids[&(*i, f.clone())], ids[&(j, f.clone())]));
                }
            }
        }
    }
    let (class_of, count) = equality_classes(ids.len(), pairs);
    // each equivalence class must contain the face sitting on its own simplex
    let mut rep: HashMap<usize, usize> = HashMap::new();
    for ((i, f), id) in &ids {
        let c = bc.class_of_face(f).ok_or_else(|| BlowupError::Contract("face without a class".into()))?;
        if let Some(old) = rep.insert(class_of[*id], c) {
            if old != c {
                return Err(BlowupError::Contract(format!("classes merged across simplices at {}", k.simplex(*i))));
            }
        }
    }
    if count != bc.len() {
        return Err(BlowupError::Contract(format!("{count} compatibility classes for {} basis classes", bc.len())));
    }
    Ok(count)
}

fn characteristic(c: Coefficients) -> u64 {
    match c {
        Coefficients::Integers => 0,
        Coefficients::Prime(f) => f.modulus(),
    }
}

fn cohomology_with_masks(bc: &BlowupComplex, masks: &[Vec<bool>], coeffs: Coefficients) -> Result<HomologyResult, BlowupError> {
    let c = bc.as_free_complex();
    with_ring!(coeffs, |r| {
        let cr = c.reduce(&r, |v| r.from_integer(v));
        Ok(allowed_subcomplex_homology(&r, &cr, masks)?)
    })
}

/// `ℋ*_p̄(K)`.
pub fn blown_up_cohomology(k: &FilteredComplex, p: &Perversity, coeffs: Coefficients) -> Result<HomologyResult, BlowupError> {
    let bc = BlowupComplex::new(k)?;
    if bc.is_empty() {
        return Ok(HomologyResult::zero(characteristic(coeffs)));
    }
    let masks = bc.allowed_masks(p, |_| true)?;
    cohomology_with_masks(&bc, &masks, coeffs)
}

/// `ℋ*_p̄(K, L)`: intersection cochains vanishing on the subcomplex `L`.
pub fn relative_blowup_cohomology(
    k: &FilteredComplex,
    l: &FilteredComplex,
    p: &Perversity,
    coeffs: Coefficients,
) -> Result<HomologyResult, BlowupError> {
    let mut in_l = vec![false; k.len()];
    for i in k.embed(l)? {
        in_l[i] = true;
    }
    let bc = BlowupComplex::new(k)?;
    if bc.is_empty() {
        return Ok(HomologyResult::zero(characteristic(coeffs)));
    }
    let masks = bc.allowed_masks(p, |i| !in_l[i])?;
    cohomology_with_masks(&bc, &masks, coeffs)
}

/// `ℋ*_p̄(K, 𝓛(K))`.
pub fn blowup_cohomology_rel_residual(k: &FilteredComplex, p: &Perversity, coeffs: Coefficients) -> Result<HomologyResult, BlowupError> {
    relative_blowup_cohomology(k, &residual(k)?, p, coeffs)
}

/// Verdict of the restriction `Ñ*_p̄(K) → Ñ*_p̄(𝓛(K))` in one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictionDegree {
    pub degree: usize,
    pub source_rank: usize,
    pub target_rank: usize,
    /// Rank of the image of the restriction.
    pub image_rank: usize,
    /// Whether the image is the whole target lattice.
    pub onto: bool,
    /// Whether every target basis cochain extended by zero is a
    /// `p̄`-intersection cochain of `K`.
    pub extension_by_zero: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictionReport {
    pub degrees: Vec<RestrictionDegree>,
}

impl RestrictionReport {
    pub fn surjective(&self) -> bool {
        self.degrees.iter().all(|d| d.onto && d.extension_by_zero)
    }
}

/// Checks that restriction to the residual complex is onto, degree by
/// degree, by comparing lattices and by extending target cochains by zero.
pub fn restriction_surjectivity(k: &FilteredComplex, p: &Perversity) -> Result<RestrictionReport, BlowupError> {
    let l = residual(k)?;
    let bk = BlowupComplex::new(k)?;
    let bl = BlowupComplex::new(&l)?;
    let pl = p.restrict(k, &l)?;
    let lk = bk.intersection_lattices(p)?;
    let ll = bl.intersection_lattices(&pl)?;
    let emb = k.embed(&l)?;
    // class of L ↦ class of K, and back
    let to_k: Vec<usize> = bl
        .classes()
        .iter()
        .map(|c| bk.index_of(&Class { simplex: emb[c.simplex], eps: c.eps }).expect("same levels"))
        .collect();
    let mut to_l: HashMap<usize, usize> = HashMap::new();
    for (cl, &ck) in to_k.iter().enumerate() {
        to_l.insert(ck, cl);
    }
    let degrees = bk.degrees().max(bl.degrees());
    let mut out = Vec::with_capacity(degrees);
    for d in 0..degrees {
        let src = lk.get(d);
        let tgt_dim = bl.degree_range(d).len();
        let projected: Vec<SparseVec<Integer>> = src
            .map(|lat| {
                lat.basis()
                    .iter()
                    .map(|v| {
                        let start = bk.degree_range(d).start;
                        let mut w: SparseVec<Integer> = v
                            .iter()
                            .filter_map(|(pos, x)| to_l.get(&(start + pos)).map(|&cl| (bl.position(cl), x.clone())))
                            .collect();
                        w.sort_by_key(|e| e.0);
                        w
                    })
                    .filter(|w| !w.is_empty())
                    .collect()
            })
            .unwrap_or_default();
        let image = Lattice::from_generators(Integers, tgt_dim, projected);
        let target = ll.get(d).cloned().unwrap_or_else(|| Lattice::zero(Integers, tgt_dim));
        let extension_by_zero = target.basis().iter().all(|v| {
            let start = bl.degree_range(d).start;
            let mut w: SparseVec<Integer> =
                v.iter().map(|(pos, x)| (bk.position(to_k[start + pos]), x.clone())).collect();
            w.sort_by_key(|e| e.0);
            src.is_some_and(|lat| lat.contains(&w))
        });
        out.push(RestrictionDegree {
            degree: d,
            source_rank: src.map_or(0, Lattice::rank),
            target_rank: target.rank(),
            image_rank: image.rank(),
            onto: image.same_as(&target),
            extension_by_zero,
        });
    }
    Ok(RestrictionReport { degrees: out })
}

/// `⊕_β ℋ*_p̄(β * L_β, 𝓛(β * L_β))`, each summand computed on the join
/// with the induced perversity.
pub fn relative_decomposition_sum(k: &FilteredComplex, p: &Perversity, coeffs: Coefficients) -> Result<HomologyResult, BlowupError> {
    let mut total = HomologyResult::zero(characteristic(coeffs));
    for bi in clots(k)? {
        let beta = k.simplex(bi);
        let star = join_complex(beta, k.level(bi), &link(k, beta)?)?;
        let ps = p.restrict(k, &star)?;
        total = total.direct_sum(&blowup_cohomology_rel_residual(&star, &ps, coeffs)?);
    }
    Ok(total)
}

fn require_clot(k: &FilteredComplex, beta: &Simplex) -> Result<usize, BlowupError> {
    let bi = k.index_of(beta).ok_or_else(|| BlowupError::NotAClot(beta.to_string()))?;
    if !clots(k)?.contains(&bi) {
        return Err(BlowupError::NotAClot(beta.to_string()));
    }
    Ok(bi)
}

/// Predicts `ℋ*_p̄(β * L_β)`: `ℋ*_p̄(L_β)` in degrees `≤ p̄(Q)` and zero
/// above, `Q` the stratum of the clot `β`.
pub fn join_cohomology_oracle(
    k: &FilteredComplex,
    beta: &Simplex,
    p: &Perversity,
    coeffs: Coefficients,
) -> Result<HomologyResult, BlowupError> {
    k.require_full()?;
    let bi = require_clot(k, beta)?;
    let ch = characteristic(coeffs);
    let q = k.stratum_of(bi);
    if k.strata()[q].regular {
        return Ok(HomologyResult::point(ch));
    }
    let l = link(k, beta)?;
    if l.is_empty() {
        return Ok(HomologyResult::zero(ch));
    }
    let h = blown_up_cohomology(&l, &p.restrict(k, &l)?, coeffs)?;
    Ok(match p.values_on(k)?[q] {
        ExtInt::PosInf => h,
        ExtInt::Finite(v) if v >= 0 => h.truncated(v as usize + 1),
        _ => HomologyResult::zero(ch),
    })
}

/// `ℋ*_p̄(β * L_β)` computed on the join with the induced perversity.
pub fn join_cohomology_direct(
    k: &FilteredComplex,
    beta: &Simplex,
    p: &Perversity,
    coeffs: Coefficients,
) -> Result<HomologyResult, BlowupError> {
    let bi = require_clot(k, beta)?;
    let star = join_complex(beta, k.level(bi), &link(k, beta)?)?;
    blown_up_cohomology(&star, &p.restrict(k, &star)?, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(ids: &[u32]) -> Simplex {
        Simplex::from_ids(ids).unwrap()
    }

    fn cone() -> FilteredComplex {
        FilteredComplex::from_vertex_levels(2, &[s(&[0, 1, 3]), s(&[1, 2, 3]), s(&[0, 2, 3])], |v| if v.0 == 3 { 0 } else { 2 })
            .unwrap()
    }

    #[test]
    fn coboundary_squares_to_zero() {
        let k = cone();
        let bc = BlowupComplex::new(&k).unwrap();
        bc.as_free_complex().check_square_zero(&Integers).unwrap();
    }

    #[test]
    fn cone_zero_perversity() {
        let k = cone();
        let h = blown_up_cohomology(&k, &Perversity::zero(2), Coefficients::Integers).unwrap();
        assert_eq!(h, HomologyResult::point(0));
    }

    #[test]
    fn compatibility_matches_classes() {
        let k = cone();
        assert_eq!(compatibility_classes(&k).unwrap(), BlowupComplex::new(&k).unwrap().len());
    }

    #[test]
    fn single_simplex_matches_local() {
        let d = DecomposedSimplex::from_sizes(&[1, 2, 1]).unwrap();
        let k = d.as_complex().unwrap();
        let bc = BlowupComplex::new(&k).unwrap();
        let top = k.len() - 1;
        let local = LocalBlownUpComplex::new(&DecomposedSimplex::of_simplex(&k, top)).unwrap();
        assert_eq!(bc.len(), local.len());
        for (i, f) in local.faces().iter().enumerate() {
            let c = bc.class_of_face(f).unwrap();
            assert_eq!(bc.face(c), *f);
            let mut lhs: Vec<(usize, i64)> = local.coboundary(i).into_iter().map(|(j, s)| (bc.class_of_face(&local.faces()[j]).unwrap(), s)).collect();
            lhs.sort_unstable();
            let d = bc.degree(c);
            let m = &bc.coboundary_matrices()[d];
            let start = bc.degree_range(d + 1).start;
            let rhs: Vec<(usize, i64)> =
                m.column(bc.position(c)).iter().map(|(r, v)| (start + r, v.to_i64().unwrap())).collect();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn trivial_filtration_gives_ordinary_cohomology() {
        let facets: Vec<Simplex> = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]].iter().map(|f| s(f)).collect();
        let k = FilteredComplex::from_vertex_levels(0, &facets, |_| 0).unwrap();
        let h = blown_up_cohomology(&k, &Perversity::zero(0), Coefficients::Integers).unwrap();
        assert_eq!(h, HomologyResult::from_ranks(0, &[1, 0, 1]));
    }

    #[test]
    fn cone_join_oracle() {
        let k = cone();
        let apex = s(&[3]);
        for p in [Perversity::zero(2), Perversity::constant("m", 2, ExtInt::from(-1)), Perversity::constant("inf", 2, ExtInt::PosInf)] {
            let o = join_cohomology_oracle(&k, &apex, &p, Coefficients::Integers).unwrap();
            assert_eq!(o, join_cohomology_direct(&k, &apex, &p, Coefficients::Integers).unwrap(), "{p}");
        }
    }
}
