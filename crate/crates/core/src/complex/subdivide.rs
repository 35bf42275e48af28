use super::{ComplexError, FilteredComplex, Simplex, VertexId};

/// A barycentric subdivision with its bookkeeping.
#[derive(Clone, Debug)]
pub struct Subdivided {
    pub complex: FilteredComplex,
    /// For each new vertex id, the index of the simplex of the original
    /// complex whose barycenter it is.
    pub barycenter_of: Vec<usize>,
    /// For each original simplex index, the id of its barycenter.
    pub barycenter_id: Vec<VertexId>,
}

impl Subdivided {
    /// The original simplex whose interior contains the interior of the
    /// new simplex `i`: the top of its flag. Storage order is by dimension,
    /// so this is the largest index in the flag.
    pub fn carrier(&self, i: usize) -> usize {
        self.complex.simplex(i).vertices().iter().map(|v| self.barycenter_of[v.0 as usize]).max().unwrap()
    }

    /// The flag `τ_0 ⊂ … ⊂ τ_m` of original simplex indices.
    pub fn flag(&self, i: usize) -> Vec<usize> {
        let mut f: Vec<usize> = self.complex.simplex(i).vertices().iter().map(|v| self.barycenter_of[v.0 as usize]).collect();
        f.sort_unstable();
        f
    }
}

/// Barycentric subdivision: vertices are the simplices of `K`, numbered by
/// sorting them lexicographically, and simplices are flags. A flag sits at
/// the level of its largest member.
pub fn barycentric_subdivision(k: &FilteredComplex) -> Result<Subdivided, ComplexError> {
    let mut order: Vec<usize> = (0..k.len()).collect();
    order.sort_by(|&a, &b| k.simplex(a).cmp(k.simplex(b)));
    let mut barycenter_id = vec![VertexId(0); k.len()];
    for (rank, &p) in order.iter().enumerate() {
        barycenter_id[p] = VertexId(rank as u32);
    }
    let mut barycenter_of = vec![0; k.len()];
    for (p, id) in barycenter_id.iter().enumerate() {
        barycenter_of[id.0 as usize] = p;
    }
    // chains ending at each simplex; storage order is by dimension so faces come first
    let mut chains: Vec<Vec<Vec<VertexId>>> = Vec::with_capacity(k.len());
    let mut entries = Vec::new();
    for p in 0..k.len() {
        let s = k.simplex(p);
        let full = (1u64 << s.len()) - 1;
        let mut own: Vec<Vec<VertexId>> = vec![vec![barycenter_id[p]]];
        for mask in 1..full {
            let q = k.index_of(&s.sub_by_mask(mask)).expect("closed complex");
            for c in &chains[q] {
                let mut c = c.clone();
                c.push(barycenter_id[p]);
                own.push(c);
            }
        }
        for c in &own {
            entries.push((Simplex::new(c.clone())?, k.level(p)));
        }
        chains.push(own);
    }
    let complex = FilteredComplex::from_levels(k.n(), entries)?;
    Ok(Subdivided { complex, barycenter_of, barycenter_id })
}

/// The barycentric subdivision as a filtered complex.
pub fn barycentric_subdivide(k: &FilteredComplex) -> Result<FilteredComplex, ComplexError> {
    Ok(barycentric_subdivision(k)?.complex)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subdivided_triangle() {
        let t = FilteredComplex::from_vertex_levels(2, &[Simplex::from_ids(&[0, 1, 2]).unwrap()], |v| v.0 as usize).unwrap();
        let sd = barycentric_subdivision(&t).unwrap();
        assert_eq!(sd.complex.count_dim(0), 7);
        assert_eq!(sd.complex.count_dim(1), 12);
        assert_eq!(sd.complex.count_dim(2), 6);
        assert!(sd.complex.is_full());
        for i in 0..sd.complex.len() {
            assert_eq!(sd.complex.level(i), t.level(sd.carrier(i)));
        }
    }
}
