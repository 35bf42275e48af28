//! Ordered simplicial cochains, cup products and the blow-up map `π*`.
//!
//! Every cochain algebra here has a basis indexed by `usize`; products of
//! basis elements are signed basis elements, and the algebra laws are
//! checked exhaustively on basis tuples.

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::algebra::{AlgebraError, Integer, Integers, Lattice, SparseVec};
use crate::blowup::{face_cup, BlowupComplex, BlowupError, BlownUpFace, DecomposedSimplex, LocalBlownUpComplex, PartFace};
use crate::complex::{order_vertices, ComplexError, FilteredComplex, Simplex, VertexId, VertexOrder};
use crate::extint::ExtInt;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProductError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Blowup(#[from] BlowupError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("vertex {0} is missing from the order")]
    Unordered(u32),
}

/// A finitely supported cochain on a basis.
pub type Cochain = BTreeMap<usize, i64>;

fn add(c: &mut Cochain, i: usize, x: i64) {
    if x == 0 {
        return;
    }
    let e = c.entry(i).or_insert(0);
    *e += x;
    if *e == 0 {
        c.remove(&i);
    }
}

fn sign(e: usize) -> i64 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

/// A graded cochain algebra on a finite basis.
pub trait CupAlgebra {
    fn basis_len(&self) -> usize;
    fn basis_degree(&self, i: usize) -> usize;
    fn basis_coboundary(&self, i: usize) -> Vec<(usize, i64)>;
    fn basis_cup(&self, i: usize, j: usize) -> Option<(usize, i64)>;
    /// The unit, as a sum of degree-0 basis elements.
    fn unit(&self) -> Vec<usize>;

    fn coboundary(&self, a: &Cochain) -> Cochain {
        let mut out = Cochain::new();
        for (&i, &x) in a {
            for (j, s) in self.basis_coboundary(i) {
                add(&mut out, j, x * s);
            }
        }
        out
    }

    fn cup(&self, a: &Cochain, b: &Cochain) -> Cochain {
        let mut out = Cochain::new();
        for (&i, &x) in a {
            for (&j, &y) in b {
                if let Some((k, s)) = self.basis_cup(i, j) {
                    add(&mut out, k, x * y * s);
                }
            }
        }
        out
    }
}

fn basis(i: usize) -> Cochain {
    Cochain::from([(i, 1)])
}

/// The first failure of an algebra law.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LawViolation {
    SquareZero(usize),
    Leibniz(usize, usize),
    Associativity(usize, usize, usize),
    Unit(usize),
}

/// `δδ = 0` on every basis element.
pub fn check_square_zero<A: CupAlgebra + ?Sized>(a: &A) -> Result<(), LawViolation> {
    (0..a.basis_len()).try_for_each(|i| {
        if a.coboundary(&a.coboundary(&basis(i))).is_empty() {
            Ok(())
        } else {
            Err(LawViolation::SquareZero(i))
        }
    })
}

/// `δ(x ⌣ y) = δx ⌣ y + (-1)^{|x|} x ⌣ δy` on every pair of basis elements.
pub fn check_leibniz<A: CupAlgebra + ?Sized>(a: &A) -> Result<(), LawViolation> {
    let d: Vec<Cochain> = (0..a.basis_len()).map(|i| a.coboundary(&basis(i))).collect();
    for i in 0..a.basis_len() {
        for j in 0..a.basis_len() {
            let lhs = a.coboundary(&a.cup(&basis(i), &basis(j)));
            let mut rhs = a.cup(&d[i], &basis(j));
            let s = sign(a.basis_degree(i));
            for (k, x) in a.cup(&basis(i), &d[j]) {
                add(&mut rhs, k, s * x);
            }
            if lhs != rhs {
                return Err(LawViolation::Leibniz(i, j));
            }
        }
    }
    Ok(())
}

/// `(x ⌣ y) ⌣ z = x ⌣ (y ⌣ z)` on every triple of basis elements.
pub fn check_associativity<A: CupAlgebra + ?Sized>(a: &A) -> Result<(), LawViolation> {
    let n = a.basis_len();
    for i in 0..n {
        for j in 0..n {
            let ij = a.basis_cup(i, j);
            for k in 0..n {
                let left = ij.map(|(m, s)| a.basis_cup(m, k).map(|(r, t)| (r, s * t))).unwrap_or(None);
                let right = a.basis_cup(j, k).and_then(|(m, s)| a.basis_cup(i, m).map(|(r, t)| (r, s * t)));
                if left != right {
                    return Err(LawViolation::Associativity(i, j, k));
                }
            }
        }
    }
    Ok(())
}

/// `1 ⌣ x = x = x ⌣ 1` on every basis element.
pub fn check_unit<A: CupAlgebra + ?Sized>(a: &A) -> Result<(), LawViolation> {
    let one: Cochain = a.unit().into_iter().map(|i| (i, 1)).collect();
    (0..a.basis_len()).try_for_each(|i| {
        let x = basis(i);
        if a.cup(&one, &x) == x && a.cup(&x, &one) == x {
            Ok(())
        } else {
            Err(LawViolation::Unit(i))
        }
    })
}

/// All four laws.
pub fn check_laws<A: CupAlgebra + ?Sized>(a: &A) -> Result<(), LawViolation> {
    check_square_zero(a)?;
    check_unit(a)?;
    check_leibniz(a)?;
    check_associativity(a)
}

/// `N*(K)`: simplicial cochains with basis `1_σ`, simplices oriented by a
/// vertex order, and the Alexander–Whitney cup product.
#[derive(Clone, Debug)]
pub struct OrderedCochains<'a> {
    pub complex: &'a FilteredComplex,
    pub order: VertexOrder,
    sorted: Vec<Vec<VertexId>>,
    up: Vec<Vec<usize>>,
}

impl<'a> OrderedCochains<'a> {
    pub fn new(k: &'a FilteredComplex, order: VertexOrder) -> Result<Self, ProductError> {
        if let Some(v) = k.vertices().into_iter().find(|v| order.position(*v).is_none()) {
            return Err(ProductError::Unordered(v.0));
        }
        let sorted = k.simplices().iter().map(|s| order.sort(s)).collect();
        let mut up = vec![Vec::new(); k.len()];
        for j in 0..k.len() {
            for &f in k.facets_of(j) {
                up[f].push(j);
            }
        }
        Ok(OrderedCochains { complex: k, order, sorted, up })
    }

    /// Cochains ordered by level and then label.
    pub fn filtered(k: &'a FilteredComplex) -> Self {
        Self::new(k, order_vertices(k)).expect("every vertex is ordered")
    }

    /// The vertices of simplex `i` in the chosen order.
    pub fn ordered(&self, i: usize) -> &[VertexId] {
        &self.sorted[i]
    }
}

impl CupAlgebra for OrderedCochains<'_> {
    fn basis_len(&self) -> usize {
        self.complex.len()
    }

    fn basis_degree(&self, i: usize) -> usize {
        self.complex.simplex(i).dim()
    }

    /// `δ1_σ = Σ_x (-1)^{#{v ∈ σ : v < x}} 1_{σ ∪ x}`.
    fn basis_coboundary(&self, i: usize) -> Vec<(usize, i64)> {
        let s = self.complex.simplex(i);
        let mut out: Vec<(usize, i64)> = self.up[i]
            .iter()
            .map(|&j| {
                let x = *self.complex.simplex(j).vertices().iter().find(|v| !s.contains(**v)).unwrap();
                let px = self.order.position(x).unwrap();
                let pos = s.vertices().iter().filter(|v| self.order.position(**v).unwrap() < px).count();
                (j, sign(pos))
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// `1_σ ⌣ 1_τ = 1_{σ ∪ τ}` when the last vertex of `σ` is the first of
    /// `τ` and `σ ∪ τ` is a simplex listing `σ` before `τ`.
    fn basis_cup(&self, i: usize, j: usize) -> Option<(usize, i64)> {
        let (a, b) = (&self.sorted[i], &self.sorted[j]);
        if a.last() != b.first() {
            return None;
        }
        let mut v = a.clone();
        v.extend_from_slice(&b[1..]);
        let s = Simplex::new(v.clone()).ok()?;
        let k = self.complex.index_of(&s)?;
        (self.sorted[k] == v).then_some((k, 1))
    }

    fn unit(&self) -> Vec<usize> {
        self.complex.dim_range(0).collect()
    }
}

impl CupAlgebra for LocalBlownUpComplex {
    fn basis_len(&self) -> usize {
        self.len()
    }

    fn basis_degree(&self, i: usize) -> usize {
        self.faces()[i].degree()
    }

    fn basis_coboundary(&self, i: usize) -> Vec<(usize, i64)> {
        self.coboundary(i)
    }

    fn basis_cup(&self, i: usize, j: usize) -> Option<(usize, i64)> {
        let (f, s) = face_cup(&self.faces()[i], &self.faces()[j])?;
        Some((self.index_of(&f).expect("products stay in the blow-up"), s))
    }

    fn unit(&self) -> Vec<usize> {
        self.degree_range(0).collect()
    }
}

/// The global blown-up cochains with the factorwise cup product.
pub struct BlowupAlgebra<'a, 'k> {
    pub complex: &'a BlowupComplex<'k>,
    faces: Vec<BlownUpFace>,
}

impl<'a, 'k> BlowupAlgebra<'a, 'k> {
    pub fn new(complex: &'a BlowupComplex<'k>) -> Self {
        let faces = (0..complex.len()).map(|c| complex.face(c)).collect();
        BlowupAlgebra { complex, faces }
    }
}

impl CupAlgebra for BlowupAlgebra<'_, '_> {
    fn basis_len(&self) -> usize {
        self.complex.len()
    }

    fn basis_degree(&self, i: usize) -> usize {
        self.complex.degree(i)
    }

    fn basis_coboundary(&self, i: usize) -> Vec<(usize, i64)> {
        let d = self.complex.degree(i);
        let Some(m) = self.complex.coboundary_matrices().get(d) else {
            return Vec::new();
        };
        let start = self.complex.degree_range(d + 1).start;
        m.column(self.complex.position(i))
            .iter()
            .map(|(r, x)| (start + r, x.to_i64().expect("unit coboundary entries")))
            .collect()
    }

    /// Local products of the two families; zero unless the union of the
    /// supports is a simplex.
    fn basis_cup(&self, i: usize, j: usize) -> Option<(usize, i64)> {
        let (f, s) = face_cup(&self.faces[i], &self.faces[j])?;
        Some((self.complex.class_of_face(&f)?, s))
    }

    fn unit(&self) -> Vec<usize> {
        self.complex.degree_range(0).collect()
    }
}

/// `π*(1_F)` on the blow-up of `Δ`; `F` lists its vertices.
///
/// With `k` the top level met by `F`, the image is
/// `1_{(F_0,1)} ⊗ … ⊗ 1_{(F_{k-1},1)} ⊗ 1_{(F_k,0)} ⊗ 1 ⊗ … ⊗ 1`.
/// With the apex last in every cone and Koszul signs in factor order,
/// inserting a vertex carries the same sign on both sides, so no further
/// sign is needed.
pub fn pi_star_face(delta: &DecomposedSimplex, f: &[VertexId]) -> Vec<(BlownUpFace, i64)> {
    let n = delta.n();
    let parts: Vec<Vec<VertexId>> =
        delta.parts.iter().map(|p| p.iter().copied().filter(|v| f.contains(v)).collect()).collect();
    let Some(k) = (0..=n).rev().find(|&j| !parts[j].is_empty()) else {
        return Vec::new();
    };
    let mut prefix: Vec<PartFace> = (0..k).map(|j| PartFace { vertices: parts[j].clone(), cone: true }).collect();
    prefix.push(PartFace { vertices: parts[k].clone(), cone: false });
    let mut terms = vec![prefix];
    for j in k + 1..=n {
        let mut options: Vec<PartFace> =
            delta.parts[j].iter().map(|v| PartFace { vertices: vec![*v], cone: false }).collect();
        if j < n {
            options.push(PartFace { vertices: Vec::new(), cone: true });
        }
        terms = terms
            .into_iter()
            .flat_map(|t| {
                options.iter().map(move |o| {
                    let mut t = t.clone();
                    t.push(o.clone());
                    t
                })
            })
            .collect();
    }
    terms.into_iter().map(|parts| (BlownUpFace { parts }, 1)).collect()
}

/// The local blow-up map `π*: N*(Δ) → Ñ*(Δ)` for a regular decomposed
/// simplex, with `Δ` ordered part by part.
pub struct LocalPiStar {
    pub delta: DecomposedSimplex,
    pub simplex: FilteredComplex,
    pub target: LocalBlownUpComplex,
}

/// Verdict of the local `π*` checks in one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiStarDegree {
    pub degree: usize,
    pub source_rank: usize,
    /// Rank of `Ñ^d_{0̄}(Δ)`.
    pub target_rank: usize,
    /// The image lies in `Ñ_{0̄}(Δ)`.
    pub contained: bool,
    pub determinant: Option<Integer>,
}

impl PiStarDegree {
    pub fn unimodular(&self) -> bool {
        self.contained && self.determinant.as_ref().is_some_and(Integer::is_unit)
    }
}

/// Verdict of all local `π*` checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiStarReport {
    pub sizes: Vec<usize>,
    pub cochain_map: bool,
    pub cup_preserving: bool,
    pub degrees: Vec<PiStarDegree>,
}

impl PiStarReport {
    pub fn passed(&self) -> bool {
        self.cochain_map && self.cup_preserving && self.degrees.iter().all(PiStarDegree::unimodular)
    }
}

impl LocalPiStar {
    pub fn new(delta: &DecomposedSimplex) -> Result<Self, ProductError> {
        Ok(LocalPiStar { delta: delta.clone(), simplex: delta.as_complex()?, target: LocalBlownUpComplex::new(delta)? })
    }

    pub fn source(&self) -> OrderedCochains<'_> {
        OrderedCochains::new(&self.simplex, VertexOrder::new(self.delta.vertices())).expect("all vertices ordered")
    }

    /// `π*(1_F)` for the source basis element `i`.
    pub fn image(&self, i: usize) -> Cochain {
        let mut out = Cochain::new();
        for (f, s) in pi_star_face(&self.delta, self.simplex.simplex(i).vertices()) {
            add(&mut out, self.target.index_of(&f).expect("image faces exist"), s);
        }
        out
    }

    pub fn apply(&self, a: &Cochain) -> Cochain {
        let mut out = Cochain::new();
        for (&i, &x) in a {
            for (j, y) in self.image(i) {
                add(&mut out, j, x * y);
            }
        }
        out
    }

    /// Cochain map, cup preservation on every pair, and unimodularity onto
    /// `Ñ_{0̄}(Δ)` in every degree.
    pub fn check(&self) -> PiStarReport {
        let src = self.source();
        let n = self.simplex.len();
        let images: Vec<Cochain> = (0..n).map(|i| self.image(i)).collect();
        let cochain_map =
            (0..n).all(|i| self.apply(&src.coboundary(&basis(i))) == CupAlgebra::coboundary(&self.target, &images[i]));
        let cup_preserving = (0..n).all(|i| {
            (0..n).all(|j| self.apply(&src.cup(&basis(i), &basis(j))) == self.target.cup(&images[i], &images[j]))
        });
        let lattices = self.target.intersection_lattices(|_| ExtInt::from(0i64));
        let top = self.simplex.dim().map_or(0, |d| d + 1);
        let degrees = (0..top.max(lattices.len()))
            .map(|d| {
                let start = self.target.degree_range(d).start;
                let gens: Vec<SparseVec<Integer>> = self
                    .simplex
                    .dim_range(d)
                    .map(|i| images[i].iter().map(|(&j, &x)| (j - start, Integer::from(x))).collect())
                    .collect();
                let lat = lattices
                    .get(d)
                    .cloned()
                    .unwrap_or_else(|| Lattice::zero(Integers, self.target.degree_range(d).len()));
                let coords = lat.coordinates(&gens);
                let determinant = match &coords {
                    Some(m) if gens.len() == lat.rank() => {
                        Some(m.to_dense(&Integers).determinant().expect("square matrix"))
                    }
                    _ => None,
                };
                PiStarDegree {
                    degree: d,
                    source_rank: gens.len(),
                    target_rank: lat.rank(),
                    contained: coords.is_some(),
                    determinant,
                }
            })
            .collect();
        PiStarReport { sizes: self.delta.parts.iter().map(Vec::len).collect(), cochain_map, cup_preserving, degrees }
    }
}

/// Every part-size vector with `n ≤ max_n`, a nonempty regular part, and
/// at most `max_vertices` vertices.
pub fn regular_size_vectors(max_vertices: usize, max_n: usize) -> Vec<Vec<usize>> {
    fn extend(prefix: &mut Vec<usize>, left: usize, parts: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() + 1 == parts {
            for last in 1..=left {
                let mut v = prefix.clone();
                v.push(last);
                out.push(v);
            }
            return;
        }
        for s in 0..=left {
            prefix.push(s);
            extend(prefix, left - s, parts, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    for n in 0..=max_n {
        extend(&mut Vec::new(), max_vertices, n + 1, &mut out);
    }
    out
}

/// The global blow-up map `N*(K) → Ñ*(K)`: the coefficient of `(τ, ε)` in
/// `π*(1_σ)` is that of the face `(τ, ε)` in the local `π*` over `τ`.
pub struct GlobalPiStar<'a, 'k> {
    pub source: OrderedCochains<'k>,
    pub target: &'a BlowupComplex<'k>,
    images: Vec<Cochain>,
}

impl<'a, 'k> GlobalPiStar<'a, 'k> {
    pub fn new(target: &'a BlowupComplex<'k>) -> Self {
        let k = target.complex;
        let source = OrderedCochains::filtered(k);
        let mut images = vec![Cochain::new(); k.len()];
        let mut local: HashMap<usize, DecomposedSimplex> = HashMap::new();
        for c in 0..target.len() {
            let tau = target.classes()[c].simplex;
            let delta = local.entry(tau).or_insert_with(|| DecomposedSimplex::of_simplex(k, tau)).clone();
            let face = target.face(c);
            let verts = k.simplex(tau).vertices();
            for mask in 1..1u64 << verts.len() {
                let f: Vec<VertexId> = (0..verts.len()).filter(|b| mask >> b & 1 == 1).map(|b| verts[b]).collect();
                let i = k.index_of(&Simplex::new(f.clone()).unwrap()).unwrap();
                for (g, s) in pi_star_face(&delta, &f) {
                    if g == face {
                        add(&mut images[i], c, s);
                    }
                }
            }
        }
        GlobalPiStar { source, target, images }
    }

    pub fn image(&self, i: usize) -> &Cochain {
        &self.images[i]
    }

    pub fn apply(&self, a: &Cochain) -> Cochain {
        let mut out = Cochain::new();
        for (&i, &x) in a {
            for (&j, &y) in &self.images[i] {
                add(&mut out, j, x * y);
            }
        }
        out
    }

    /// Whether `π*δ = δπ*` on every basis element.
    pub fn is_cochain_map(&self) -> bool {
        let alg = BlowupAlgebra::new(self.target);
        (0..self.source.basis_len())
            .all(|i| self.apply(&self.source.coboundary(&basis(i))) == alg.coboundary(&self.images[i]))
    }

    /// Whether `π*(a ⌣ b) = π*a ⌣ π*b` on every pair of basis elements.
    pub fn preserves_cup(&self) -> bool {
        let alg = BlowupAlgebra::new(self.target);
        let n = self.source.basis_len();
        (0..n).all(|i| {
            (0..n).all(|j| {
                self.apply(&self.source.cup(&basis(i), &basis(j))) == alg.cup(&self.images[i], &self.images[j])
            })
        })
    }
}
