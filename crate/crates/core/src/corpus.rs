//! Built-in filtered complexes used by the tests and the command line.

use std::collections::BTreeMap;

use crate::complex::{FilteredComplex, Simplex};

fn s(ids: &[u32]) -> Simplex {
    Simplex::from_ids(ids).expect("corpus simplices are valid")
}

fn trivial(n: usize, facets: &[Simplex]) -> FilteredComplex {
    FilteredComplex::from_vertex_levels(n, facets, |_| n).expect("corpus complex")
}

/// The facets of `∂Δ^{d+1}` on vertices `0..=d+1`.
pub fn sphere_facets(d: usize) -> Vec<Simplex> {
    let all: Vec<u32> = (0..=(d as u32 + 1)).collect();
    (0..all.len())
        .map(|skip| Simplex::from_ids(&all.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, v)| *v).collect::<Vec<_>>()).unwrap())
        .collect()
}

/// The 7-vertex torus: triangles `{i, i+1, i+3}` and `{i, i+2, i+3}` mod 7.
pub fn torus_facets() -> Vec<Simplex> {
    (0..7u32).flat_map(|i| [s(&[i, (i + 1) % 7, (i + 3) % 7]), s(&[i, (i + 2) % 7, (i + 3) % 7])]).collect()
}

/// The 6-vertex real projective plane.
pub fn rp2_facets() -> Vec<Simplex> {
    [[0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 5, 1], [1, 2, 4], [2, 3, 5], [3, 4, 1], [4, 5, 2], [5, 1, 3]]
        .iter()
        .map(|f| s(f))
        .collect()
}

/// `∂Δ³` with the trivial filtration, `n = 2`.
pub fn sphere() -> FilteredComplex {
    trivial(2, &sphere_facets(2))
}

pub fn torus() -> FilteredComplex {
    trivial(2, &torus_facets())
}

pub fn rp2() -> FilteredComplex {
    trivial(2, &rp2_facets())
}

/// The cone on `∂Δ²` with singular apex `3` at level 0, `n = 2`.
pub fn cone() -> FilteredComplex {
    FilteredComplex::from_vertex_levels(2, &[s(&[0, 1, 3]), s(&[1, 2, 3]), s(&[0, 2, 3])], |v| if v.0 == 3 { 0 } else { 2 })
        .expect("corpus complex")
}

/// Suspension of `facets` on new poles, which sit at level 0; the rest
/// is regular at level `n`.
pub fn suspension_of(facets: &[Simplex], n: usize) -> FilteredComplex {
    let top = facets.iter().flat_map(|f| f.vertices()).map(|v| v.0).max().unwrap_or(0);
    let poles = [top + 1, top + 2];
    let mut out = Vec::new();
    for f in facets {
        for p in poles {
            let mut ids: Vec<u32> = f.vertices().iter().map(|v| v.0).collect();
            ids.push(p);
            out.push(s(&ids));
        }
    }
    FilteredComplex::from_vertex_levels(n, &out, |v| if v.0 > top { 0 } else { n }).expect("corpus complex")
}

/// The suspension of a triangle boundary with `K_0 = K_1` the two poles.
pub fn suspension() -> FilteredComplex {
    suspension_of(&[s(&[0, 1]), s(&[1, 2]), s(&[0, 2])], 2)
}

/// The suspension of the 7-vertex torus, a pseudomanifold with `n = 3`.
pub fn suspension_torus() -> FilteredComplex {
    suspension_of(&torus_facets(), 3)
}

/// A torus with one meridian collapsed to the singular point `0`: two
/// cylinders between the circles `1,2,3`, `4,5,6`, `7,8,9`, with both end
/// circles coned to `0`.
pub fn pinched_torus() -> FilteredComplex {
    let mut facets = Vec::new();
    let circles = [[1u32, 2, 3], [4, 5, 6], [7, 8, 9]];
    for (a, b) in [(0, 1), (1, 2)] {
        let (x, y) = (circles[a], circles[b]);
        for i in 0..3 {
            let j = (i + 1) % 3;
            facets.push(s(&[x[i], y[i], y[j]]));
            facets.push(s(&[x[i], x[j], y[j]]));
        }
    }
    for c in [circles[0], circles[2]] {
        for i in 0..3 {
            facets.push(s(&[0, c[i], c[(i + 1) % 3]]));
        }
    }
    FilteredComplex::from_vertex_levels(2, &facets, |v| if v.0 == 0 { 0 } else { 2 }).expect("corpus complex")
}

/// `Δ²` filtered by a flag of faces `[0] ⊂ [0,1] ⊂ Δ²`; full.
pub fn flag_simplex() -> FilteredComplex {
    FilteredComplex::from_vertex_levels(2, &[s(&[0, 1, 2])], |v| v.0 as usize).expect("corpus complex")
}

/// `Δ²` filtered by skeleta `K_ℓ = Δ^{(ℓ)}`; not full.
pub fn skeleton_simplex() -> FilteredComplex {
    let mut gens = BTreeMap::new();
    gens.insert(0, vec![s(&[0]), s(&[1]), s(&[2])]);
    gens.insert(1, vec![s(&[0, 1]), s(&[1, 2]), s(&[0, 2])]);
    FilteredComplex::from_generators(2, &[s(&[0, 1, 2])], &gens).expect("corpus complex")
}

/// The edge `[0, 1]` with `0` at level 0 and `1` at level 1, `n = 2`: no
/// regular stratum at all.
pub fn singular_edge() -> FilteredComplex {
    FilteredComplex::from_vertex_levels(2, &[s(&[0, 1])], |v| v.0 as usize).expect("corpus complex")
}

/// A named corpus member.
#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub complex: FilteredComplex,
}

/// Names accepted by [`by_name`].
pub const NAMES: [&str; 10] = [
    "sphere",
    "torus",
    "rp2",
    "cone",
    "suspension",
    "suspension-torus",
    "pinched-torus",
    "flag-simplex",
    "skeleton-simplex",
    "singular-edge",
];

pub fn by_name(name: &str) -> Option<FilteredComplex> {
    Some(match name {
        "sphere" => sphere(),
        "torus" => torus(),
        "rp2" => rp2(),
        "cone" => cone(),
        "suspension" => suspension(),
        "suspension-torus" => suspension_torus(),
        "pinched-torus" => pinched_torus(),
        "flag-simplex" => flag_simplex(),
        "skeleton-simplex" => skeleton_simplex(),
        "singular-edge" => singular_edge(),
        _ => return None,
    })
}

/// Every corpus member.
pub fn all() -> Vec<CorpusEntry> {
    NAMES.iter().map(|&name| CorpusEntry { name, complex: by_name(name).unwrap() }).collect()
}

/// The full members.
pub fn full() -> Vec<CorpusEntry> {
    all().into_iter().filter(|e| e.complex.is_full()).collect()
}


#[cfg(test)]
mod homology_tests {
    use super::*;
    use crate::algebra::{Coefficients, HomologyGroup, HomologyResult, Integer};
    use crate::chains::{intersection_homology, simplicial_homology, Perversity};

    #[test]
    fn ordinary_homology() {
        let z = Coefficients::Integers;
        assert_eq!(simplicial_homology(&sphere(), z).unwrap(), HomologyResult::from_ranks(0, &[1, 0, 1]));
        assert_eq!(simplicial_homology(&torus(), z).unwrap(), HomologyResult::from_ranks(0, &[1, 2, 1]));
        let rp = simplicial_homology(&rp2(), z).unwrap();
        assert_eq!(rp.group(0), HomologyGroup::free(1));
        assert_eq!(rp.group(1), HomologyGroup { free_rank: 0, torsion: vec![Integer::from(2i64)] });
        assert!(rp.group(2).is_zero());
        let f2 = Coefficients::prime(2).unwrap();
        assert_eq!(simplicial_homology(&rp2(), f2).unwrap(), HomologyResult::from_ranks(2, &[1, 1, 1]));
        assert_eq!(simplicial_homology(&pinched_torus(), z).unwrap(), HomologyResult::from_ranks(0, &[1, 1, 1]));
    }

    #[test]
    fn suspension_intersection_homology() {
        let z = Coefficients::Integers;
        let h = intersection_homology(&suspension(), &Perversity::zero(2), z).unwrap();
        assert_eq!(h, HomologyResult::from_ranks(0, &[1, 0, 1]));
        let t = suspension_torus();
        let m = intersection_homology(&t, &Perversity::lower_middle(3), z).unwrap();
        let u = intersection_homology(&t, &Perversity::top(3), z).unwrap();
        assert_eq!(m.ranks(), vec![1, 2, 0, 1]);
        assert_eq!(u.ranks(), vec![1, 0, 2, 1]);
    }
}
