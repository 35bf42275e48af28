use std::collections::HashMap;

use super::{ComplexError, FilteredComplex, Simplex, VertexId};
use crate::extint::ExtInt;

/// The pair `(a, b)`: `a` is the largest codimension of a nonempty level
/// `K_{n-a}` and `b = dim K_{n-a}`. Ordered lexicographically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Complexity {
    pub a: ExtInt,
    pub b: ExtInt,
}

impl Complexity {
    pub const EMPTY: Complexity = Complexity { a: ExtInt::NegInf, b: ExtInt::NegInf };
}

/// Lowest nonempty level and the largest dimension found there.
fn bottom(k: &FilteredComplex) -> Option<(usize, usize)> {
    let low = *k.levels().iter().min()?;
    let b = (0..k.len()).filter(|&i| k.level(i) == low).map(|i| k.simplex(i).dim()).max().unwrap();
    Some((low, b))
}

pub fn complexity(k: &FilteredComplex) -> Complexity {
    match bottom(k) {
        None => Complexity::EMPTY,
        Some((low, b)) => Complexity { a: ExtInt::from(k.n() - low), b: ExtInt::from(b) },
    }
}

/// Indices of the clots: the `b`-simplices of `K_{n-a}`.
pub fn clots(k: &FilteredComplex) -> Result<Vec<usize>, ComplexError> {
    let (low, b) = bottom(k).ok_or(ComplexError::Empty)?;
    Ok(k.dim_range(b).filter(|&i| k.level(i) == low).collect())
}

/// Flags the simplices of the residual complex: those meeting `K_{n-a}`
/// in dimension below `b`.
pub fn residual_mask(k: &FilteredComplex) -> Result<Vec<bool>, ComplexError> {
    let (low, b) = bottom(k).ok_or(ComplexError::Empty)?;
    let bottom_simplices: Vec<&Simplex> = (0..k.len()).filter(|&i| k.level(i) == low).map(|i| k.simplex(i)).collect();
    Ok((0..k.len())
        .map(|i| {
            let s = k.simplex(i);
            // largest face of σ lying in K_{n-a}
            let meet = bottom_simplices.iter().filter(|t| t.is_face_of(s)).map(|t| t.dim()).max();
            meet.is_none_or(|d| d < b)
        })
        .collect())
}

/// The residual complex `𝓛(K)` with the induced filtration.
pub fn residual(k: &FilteredComplex) -> Result<FilteredComplex, ComplexError> {
    let mask = residual_mask(k)?;
    k.subcomplex(|i| mask[i])
}

/// The link `L_β = {σ : σ ∩ β = ∅, β * σ ∈ K}` with the induced filtration.
pub fn link(k: &FilteredComplex, beta: &Simplex) -> Result<FilteredComplex, ComplexError> {
    let bi = k.index_of(beta).ok_or_else(|| ComplexError::Unknown(beta.clone()))?;
    let mut entries = Vec::new();
    for j in k.cofaces(bi) {
        let sigma = k.simplex(j).minus(beta).expect("proper coface");
        let l = k.level_of(&sigma).expect("faces are present");
        entries.push((sigma, l));
    }
    FilteredComplex::from_levels(k.n(), entries)
}

/// The join `β * L`, filtered so that the faces of `β` sit at
/// `beta_level` and every other simplex at the level of its part in `L`.
/// Requires every simplex of `L` to lie strictly above `beta_level`.
pub fn join_complex(beta: &Simplex, beta_level: usize, l: &FilteredComplex) -> Result<FilteredComplex, ComplexError> {
    if beta_level > l.n() {
        return Err(ComplexError::Join(format!("level {beta_level} above n = {}", l.n())));
    }
    let mut entries: Vec<(Simplex, usize)> = Vec::new();
    let bfaces = beta.faces();
    for f in &bfaces {
        entries.push((f.clone(), beta_level));
    }
    for (i, s) in l.simplices().iter().enumerate() {
        if s.intersects(beta) {
            return Err(ComplexError::Join(format!("{s} meets {beta}")));
        }
        let ls = l.level(i);
        if ls <= beta_level {
            return Err(ComplexError::Join(format!("{s} sits at level {ls}, not above {beta_level}")));
        }
        entries.push((s.clone(), ls));
        for f in &bfaces {
            entries.push((f.join(s).unwrap(), ls));
        }
    }
    FilteredComplex::from_levels(l.n(), entries)
}

/// Canonical decomposition `σ = σ_0 * … * σ_n`; `parts[ℓ]` is sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalDecomposition {
    pub parts: Vec<Vec<VertexId>>,
}

impl CanonicalDecomposition {
    pub fn n(&self) -> usize {
        self.parts.len() - 1
    }

    /// Levels `I_σ` with nonempty parts.
    pub fn level_set(&self) -> Vec<usize> {
        (0..self.parts.len()).filter(|&l| !self.parts[l].is_empty()).collect()
    }

    pub fn is_regular(&self) -> bool {
        !self.parts[self.n()].is_empty()
    }

    /// Extended dimension of `σ_0 * … * σ_ℓ`; `-∞` when empty.
    pub fn dim_up_to(&self, level: usize) -> ExtInt {
        let c: usize = self.parts[..=level].iter().map(Vec::len).sum();
        if c == 0 {
            ExtInt::NegInf
        } else {
            ExtInt::from(c - 1)
        }
    }

    /// Extended dimension of part `ℓ`.
    pub fn part_dim(&self, level: usize) -> ExtInt {
        match self.parts[level].len() {
            0 => ExtInt::NegInf,
            c => ExtInt::from(c - 1),
        }
    }
}

/// A total order on vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexOrder {
    order: Vec<VertexId>,
    position: HashMap<VertexId, usize>,
}

impl VertexOrder {
    pub fn new(order: Vec<VertexId>) -> Self {
        let position = order.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        VertexOrder { order, position }
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.order
    }

    pub fn position(&self, v: VertexId) -> Option<usize> {
        self.position.get(&v).copied()
    }

    /// The vertices of `s`, listed in this order.
    pub fn sort(&self, s: &Simplex) -> Vec<VertexId> {
        let mut v = s.vertices().to_vec();
        v.sort_by_key(|x| self.position[x]);
        v
    }

    /// Whether the order climbs the filtration inside every simplex, so
    /// that the ordered vertices of each simplex list `σ_0` first.
    pub fn is_compatible(&self, k: &FilteredComplex) -> bool {
        k.simplices().iter().all(|s| {
            if s.vertices().iter().any(|v| !self.position.contains_key(v)) {
                return false;
            }
            let lv: Vec<usize> = self.sort(s).iter().map(|v| k.vertex_level(*v).unwrap()).collect();
            lv.windows(2).all(|w| w[0] <= w[1])
        })
    }
}

/// Orders vertices by level and then by label.
pub fn order_vertices(k: &FilteredComplex) -> VertexOrder {
    let mut v = k.vertices();
    v.sort_by_key(|x| (k.vertex_level(*x).unwrap(), *x));
    VertexOrder::new(v)
}
