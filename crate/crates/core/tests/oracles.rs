//! Frozen values for the corpus, each derived by hand: cone formulas for
//! isolated singularities, normalizations, and face counts.

use ihsimp::algebra::{Coefficients, HomologyResult};
use ihsimp::blowup::blown_up_cohomology;
use ihsimp::chains::{intersection_homology, simplicial_homology, Perversity};
use ihsimp::complex::{barycentric_subdivide, complexity, residual, Complexity};
use ihsimp::corpus;
use ihsimp::extint::ExtInt;

const Z: Coefficients = Coefficients::Integers;

fn ranks(v: &[usize]) -> HomologyResult {
    HomologyResult::from_ranks(0, v)
}

#[test]
fn corpus_sizes() {
    // ∂Δ³: 4 + 6 + 4; Σ(∂Δ²): 5 + 9 + 6; ΣT: 9 + 35 + 56 + 28
    let sizes: Vec<(&str, usize)> = corpus::all().iter().map(|e| (e.name, e.complex.len())).collect();
    assert_eq!(
        sizes,
        [
            ("sphere", 14),
            ("torus", 42),
            ("rp2", 31),
            ("cone", 13),
            ("suspension", 20),
            ("suspension-torus", 128),
            ("pinched-torus", 55),
            ("flag-simplex", 7),
            ("skeleton-simplex", 7),
            ("singular-edge", 3),
        ]
    );
}

#[test]
fn subdivision_face_counts() {
    // one vertex per simplex, and per triangle 6 edges and 6 triangles
    let sd = barycentric_subdivide(&corpus::sphere()).unwrap();
    assert_eq!(sd.len(), 14 + (6 * 2 + 4 * 6) + 4 * 6);
    assert!(sd.is_full());
}

#[test]
fn suspension_structure() {
    let k = corpus::suspension();
    assert_eq!(complexity(&k), Complexity { a: ExtInt::from(2i64), b: ExtInt::from(0i64) });
    // 𝓛(K) is the equator
    let l = residual(&k).unwrap();
    assert_eq!(l.len(), 6);
    assert_eq!(simplicial_homology(&l, Z).unwrap(), ranks(&[1, 1]));
}

#[test]
fn isolated_singularities_in_dimension_two() {
    // links are circles; 0̄ and t̄ agree in codimension 2, and both give the
    // homology of the normalization
    for p in [Perversity::zero(2), Perversity::top(2)] {
        assert_eq!(intersection_homology(&corpus::cone(), &p, Z).unwrap(), ranks(&[1]));
        assert_eq!(intersection_homology(&corpus::suspension(), &p, Z).unwrap(), ranks(&[1, 0, 1]));
        assert_eq!(intersection_homology(&corpus::pinched_torus(), &p, Z).unwrap(), ranks(&[1, 0, 1]));
        assert_eq!(blown_up_cohomology(&corpus::pinched_torus(), &p, Z).unwrap(), ranks(&[1, 0, 1]));
        assert_eq!(blown_up_cohomology(&corpus::cone(), &p, Z).unwrap(), ranks(&[1]));
    }
    // ordinary homology of the pinched torus sees the extra loop
    assert_eq!(simplicial_homology(&corpus::pinched_torus(), Z).unwrap(), ranks(&[1, 1, 1]));
}

#[test]
fn suspended_torus() {
    // cone formula on the two poles, link T with H = (1, 2, 1)
    let k = corpus::suspension_torus();
    let m = Perversity::lower_middle(3);
    let t = Perversity::top(3);
    assert_eq!(intersection_homology(&k, &m, Z).unwrap(), ranks(&[1, 2, 0, 1]));
    assert_eq!(intersection_homology(&k, &t, Z).unwrap(), ranks(&[1, 0, 2, 1]));
    assert_eq!(blown_up_cohomology(&k, &m, Z).unwrap(), ranks(&[1, 0, 2, 1]));
    assert_eq!(blown_up_cohomology(&k, &t, Z).unwrap(), ranks(&[1, 2, 0, 1]));
    assert_eq!(blown_up_cohomology(&k, &Perversity::zero(3), Z).unwrap(), ranks(&[1, 0, 2, 1]));
    assert_eq!(simplicial_homology(&k, Z).unwrap(), ranks(&[1, 0, 2, 1]));
}

#[test]
fn field_coefficients() {
    let f3 = Coefficients::prime(3).unwrap();
    assert_eq!(simplicial_homology(&corpus::torus(), f3).unwrap(), HomologyResult::from_ranks(3, &[1, 2, 1]));
    assert_eq!(simplicial_homology(&corpus::rp2(), f3).unwrap(), HomologyResult::from_ranks(3, &[1]));
}
