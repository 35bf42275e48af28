//! Comparison maps between the blown-up cochains of `K` and of its
//! barycentric subdivision, and stability of the invariants along the
//! tower `sd^i K`.

use thiserror::Error;

use crate::algebra::{Coefficients, HomologyResult, Integer, Integers, Lattice, SparseVec};
use crate::blowup::{blown_up_cohomology, factor_dims, part_sizes, BlowupComplex, BlowupError, Class};
use crate::chains::{intersection_homology, ChainError, Perversity};
use crate::complex::{barycentric_subdivision, ComplexError, FilteredComplex, Simplex, Subdivided, VertexId};
use crate::products::{BlowupAlgebra, Cochain, CupAlgebra};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SubdivisionError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Blowup(#[from] BlowupError),
    #[error("subdivision level {level} is not full")]
    NotFull { level: usize },
}

/// Parity of the permutation sorting `v`.
fn permutation_sign<T: Ord>(v: &[T]) -> i64 {
    let mut inversions = 0;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if v[i] > v[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The vertex map `ν: sd K → K` sending the barycenter of `τ` to the
/// greatest vertex of `τ` in the stratum of its interior, which is the
/// greatest vertex of `τ` at the level of `τ`.
pub fn gm_vertex_map(k: &FilteredComplex, sd: &Subdivided) -> Vec<VertexId> {
    sd.barycenter_of
        .iter()
        .map(|&p| {
            let l = k.level(p);
            *k.simplex(p).vertices().iter().filter(|v| k.vertex_level(**v) == Some(l)).max().expect("a top vertex")
        })
        .collect()
}

/// A linear map between class bases: the image of each source class.
pub type ClassMap = Vec<Cochain>;

fn add(c: &mut Cochain, i: usize, x: i64) {
    let e = c.entry(i).or_insert(0);
    *e += x;
    if *e == 0 {
        c.remove(&i);
    }
}

fn apply(map: &ClassMap, a: &Cochain) -> Cochain {
    let mut out = Cochain::new();
    for (&i, &x) in a {
        for (&j, &y) in &map[i] {
            add(&mut out, j, x * y);
        }
    }
    out
}

/// The comparison maps `φ = ν*: Ñ*(K) → Ñ*(sd K)` and
/// `j: Ñ*(sd K) → Ñ*(K)`.
pub struct SubdivisionMaps<'a, 's> {
    pub base: &'a BlowupComplex<'a>,
    pub subdivided: &'s BlowupComplex<'s>,
    pub sd: &'s Subdivided,
    pub phi: ClassMap,
    pub j: ClassMap,
}

/// Verdict of the comparison maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubdivisionReport {
    pub phi_cochain_map: bool,
    pub j_cochain_map: bool,
    /// Degrees in which `j ∘ φ` fails to be the identity.
    pub j_phi_failures: Vec<usize>,
    /// For each perversity checked, whether both maps send intersection
    /// cochains to intersection cochains.
    pub allowable: Vec<(String, bool)>,
}

impl SubdivisionReport {
    pub fn passed(&self) -> bool {
        self.phi_cochain_map && self.j_cochain_map && self.j_phi_failures.is_empty() && self.allowable.iter().all(|a| a.1)
    }
}

/// Sign relating `1_{(σ', ε)}` and `1_{(σ, ε)}` once the orientations
/// agree with every cone set: turning on `ε_ℓ` at a level met by `σ'`
/// carries the sign `(-1)^{|·|_{<ℓ} + |σ_ℓ|}` in each blow-up, and the two
/// must match under `j`.
fn cone_correction(k: &FilteredComplex, carrier: usize, s: &FilteredComplex, class: &Class) -> i64 {
    let n = k.n();
    let fine = part_sizes(s, class.simplex);
    let coarse = part_sizes(k, carrier);
    let met = (0..n).filter(|&l| fine[l] > 0).fold(0u64, |m, l| m | 1 << l);
    let forced = (0..n).filter(|&l| coarse[l] > 0 && fine[l] == 0).fold(0u64, |m, l| m | 1 << l);
    let (mut ef, mut ec) = (class.eps, class.eps | forced);
    let mut e = 0;
    for l in 0..n {
        if met >> l & 1 == 0 || ef >> l & 1 == 1 {
            continue;
        }
        let bf: usize = factor_dims(&fine, ef)[..l].iter().sum();
        let bc: usize = factor_dims(&coarse, ec)[..l].iter().sum();
        e += bf + fine[l] + bc + coarse[l];
        ef |= 1 << l;
        ec |= 1 << l;
    }
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

impl<'a, 's> SubdivisionMaps<'a, 's> {
    pub fn new(base: &'a BlowupComplex<'a>, sd: &'s Subdivided, subdivided: &'s BlowupComplex<'s>) -> Self {
        let k = base.complex;
        let s = subdivided.complex;
        let nu = gm_vertex_map(k, sd);

        let mut phi = vec![Cochain::new(); base.len()];
        for (c, class) in subdivided.classes().iter().enumerate() {
            let verts = s.simplex(class.simplex).vertices();
            let images: Vec<VertexId> = verts.iter().map(|v| nu[v.0 as usize]).collect();
            let Ok(rho) = Simplex::new(images.clone()) else {
                continue;
            };
            if rho.len() != verts.len() {
                continue;
            }
            let r = k.index_of(&rho).expect("ν is simplicial");
            // sign of ν on each part, both parts listed by label
            let mut sign = 1;
            for l in 0..=k.n() {
                let part: Vec<VertexId> =
                    verts.iter().zip(&images).filter(|(v, _)| s.vertex_level(**v) == Some(l)).map(|(_, w)| *w).collect();
                sign *= permutation_sign(&part);
            }
            let src = base.index_of(&Class { simplex: r, eps: class.eps }).expect("ν preserves levels");
            add(&mut phi[src], c, sign);
        }

        let mut j = vec![Cochain::new(); subdivided.len()];
        for (c, class) in subdivided.classes().iter().enumerate() {
            let flag = sd.flag(class.simplex);
            let top = *flag.last().unwrap();
            if k.simplex(top).dim() != flag.len() - 1 {
                continue;
            }
            let met = flag.iter().fold(0u64, |m, &t| if k.level(t) < k.n() { m | 1 << k.level(t) } else { m });
            let carrier_levels = k
                .simplex(top)
                .vertices()
                .iter()
                .map(|v| k.vertex_level(*v).unwrap())
                .filter(|&l| l < k.n())
                .fold(0u64, |m, l| m | 1 << l);
            let eps = (class.eps & met) | (carrier_levels & !met);
            // vertices added along the flag, against the filtered order of the carrier
            let mut added = Vec::with_capacity(flag.len());
            let mut prev: Option<&Simplex> = None;
            for &t in &flag {
                let cur = k.simplex(t);
                let w = *cur.vertices().iter().find(|v| prev.is_none_or(|p| !p.contains(**v))).unwrap();
                added.push((k.vertex_level(w).unwrap(), w));
                prev = Some(cur);
            }
            let bary: Vec<(usize, VertexId)> =
                flag.iter().map(|&t| (k.level(t), sd.barycenter_id[t])).collect();
            let sign = permutation_sign(&added) * permutation_sign(&bary) * cone_correction(k, top, s, class);
            let dst = base.index_of(&Class { simplex: top, eps }).expect("carrier class");
            add(&mut j[c], dst, sign);
        }
        SubdivisionMaps { base, subdivided, sd, phi, j }
    }

    /// Indices `c` with `j(φ(1_c)) ≠ 1_c`, grouped by degree.
    pub fn j_phi_failures(&self) -> Vec<usize> {
        let mut bad: Vec<usize> = (0..self.base.len())
            .filter(|&c| apply(&self.j, &self.phi[c]) != Cochain::from([(c, 1)]))
            .map(|c| self.base.degree(c))
            .collect();
        bad.dedup();
        bad
    }

    fn commutes(map: &ClassMap, src: &BlowupComplex, dst: &BlowupComplex) -> bool {
        let (a, b) = (BlowupAlgebra::new(src), BlowupAlgebra::new(dst));
        (0..src.len()).all(|c| {
            let one = Cochain::from([(c, 1)]);
            apply(map, &a.coboundary(&one)) == b.coboundary(&map[c])
        })
    }

    pub fn phi_is_cochain_map(&self) -> bool {
        Self::commutes(&self.phi, self.base, self.subdivided)
    }

    pub fn j_is_cochain_map(&self) -> bool {
        Self::commutes(&self.j, self.subdivided, self.base)
    }

    /// Whether `map` sends every basis vector of `from` into `to`.
    fn maps_into(map: &ClassMap, src: &BlowupComplex, dst: &BlowupComplex, from: &[Lattice<Integers>], to: &[Lattice<Integers>]) -> bool {
        from.iter().enumerate().all(|(d, lat)| {
            let start = src.degree_range(d).start;
            lat.basis().iter().all(|v| {
                let a: Cochain = v.iter().map(|(i, x)| (start + i, x.to_i64().expect("small coefficients"))).collect();
                let img = apply(map, &a);
                if img.is_empty() {
                    return true;
                }
                let tstart = dst.degree_range(d).start;
                let w: SparseVec<Integer> = img.iter().map(|(&i, &x)| (i - tstart, Integer::from(x))).collect();
                to.get(d).is_some_and(|t| t.contains(&w))
            })
        })
    }

    /// Whether `φ` and `j` both preserve `p̄`-intersection cochains.
    pub fn preserves(&self, p: &Perversity) -> Result<bool, SubdivisionError> {
        let lk = self.base.intersection_lattices(p)?;
        let origin: Vec<usize> = (0..self.subdivided.complex.len()).map(|i| self.sd.carrier(i)).collect();
        let ps = p.pullback(self.base.complex, self.subdivided.complex, &origin)?;
        let ls = self.subdivided.intersection_lattices(&ps)?;
        Ok(Self::maps_into(&self.phi, self.base, self.subdivided, &lk, &ls)
            && Self::maps_into(&self.j, self.subdivided, self.base, &ls, &lk))
    }

    pub fn report(&self, perversities: &[Perversity]) -> Result<SubdivisionReport, SubdivisionError> {
        Ok(SubdivisionReport {
            phi_cochain_map: self.phi_is_cochain_map(),
            j_cochain_map: self.j_is_cochain_map(),
            j_phi_failures: self.j_phi_failures(),
            allowable: perversities.iter().map(|p| Ok((p.name.clone(), self.preserves(p)?))).collect::<Result<_, SubdivisionError>>()?,
        })
    }
}

/// Builds the comparison maps for `K` and checks them for the given
/// perversities.
pub fn comparison_check(k: &FilteredComplex, perversities: &[Perversity]) -> Result<SubdivisionReport, SubdivisionError> {
    let sd = barycentric_subdivision(k)?;
    if !sd.complex.is_full() {
        return Err(SubdivisionError::NotFull { level: 1 });
    }
    let base = BlowupComplex::new(k)?;
    let sub = BlowupComplex::new(&sd.complex)?;
    SubdivisionMaps::new(&base, &sd, &sub).report(perversities)
}

/// Invariants of one level of the tower.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerLevel {
    pub level: usize,
    pub simplices: usize,
    pub full: bool,
    /// `(perversity, H^p̄_*, ℋ*_p̄)`.
    pub invariants: Vec<(String, HomologyResult, HomologyResult)>,
}

/// `H^p̄_*(sd^i K)` and `ℋ*_p̄(sd^i K)` for `i = 0..=depth`.
pub fn tower(k: &FilteredComplex, perversities: &[Perversity], depth: usize, coeffs: Coefficients) -> Result<Vec<TowerLevel>, SubdivisionError> {
    let mut out = Vec::with_capacity(depth + 1);
    let mut cur = k.clone();
    // map from the simplices of sd^i K to the strata of K, via carriers
    let mut origin: Vec<usize> = (0..k.len()).collect();
    for level in 0..=depth {
        let full = cur.is_full();
        if !full {
            return Err(SubdivisionError::NotFull { level });
        }
        let mut invariants = Vec::with_capacity(perversities.len());
        for p in perversities {
            let q = p.pullback(k, &cur, &origin)?;
            invariants.push((
                p.name.clone(),
                intersection_homology(&cur, &q, coeffs)?,
                blown_up_cohomology(&cur, &q, coeffs)?,
            ));
        }
        out.push(TowerLevel { level, simplices: cur.len(), full, invariants });
        if level < depth {
            let sd = barycentric_subdivision(&cur)?;
            origin = (0..sd.complex.len()).map(|i| origin[sd.carrier(i)]).collect();
            cur = sd.complex;
        }
    }
    Ok(out)
}

/// Whether every level of the tower has the invariants of level 0.
pub fn tower_is_stable(levels: &[TowerLevel]) -> bool {
    levels.iter().all(|l| l.full && l.invariants == levels[0].invariants)
}
