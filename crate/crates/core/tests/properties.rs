//! Property tests over random full filtered complexes.

use proptest::prelude::*;

use ihsimp::algebra::{Coefficients, HomologyResult};
use ihsimp::blowup::{
    blowup_cohomology_rel_residual, join_cohomology_direct, join_cohomology_oracle, relative_decomposition_sum,
    restriction_surjectivity, BlowupComplex,
};
use ihsimp::chains::{join_homology_direct, join_homology_oracle, residual_decomposition_check, simplicial_homology, Perversity};
use ihsimp::complex::{barycentric_subdivide, clots, FilteredComplex, Simplex, VertexId, VertexOrder};
use ihsimp::extint::ExtInt;
use ihsimp::products::{check_laws, GlobalPiStar, OrderedCochains};
use ihsimp::subdivision::{comparison_check, tower, tower_is_stable};

const Z: Coefficients = Coefficients::Integers;

/// A full filtered complex on at most six vertices: random facets of
/// dimension at most `n`, each vertex at a random level.
fn complex() -> impl Strategy<Value = FilteredComplex> {
    (1usize..=3).prop_flat_map(|n| {
        (
            Just(n),
            prop::collection::vec(0..=n, 6),
            prop::collection::vec(prop::collection::btree_set(0u32..6, 1..=n + 1), 1..5),
        )
            .prop_map(|(n, levels, facets)| {
                let facets: Vec<Simplex> =
                    facets.iter().map(|f| Simplex::from_ids(&f.iter().copied().collect::<Vec<_>>()).unwrap()).collect();
                FilteredComplex::from_vertex_levels(n, &facets, |v| levels[v.0 as usize]).unwrap()
            })
    })
}

fn perversities(n: usize) -> Vec<Perversity> {
    vec![Perversity::zero(n), Perversity::top(n), Perversity::constant("c-1", n, ExtInt::from(-1i64))]
}

fn euler(k: &FilteredComplex) -> i64 {
    k.simplices().iter().map(|s| if s.dim() % 2 == 0 { 1 } else { -1 }).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn vertex_level_filtrations_are_full(k in complex()) {
        prop_assert!(k.is_full());
    }

    #[test]
    fn residual_decomposition_is_bijective(k in complex()) {
        for p in perversities(k.n()) {
            let r = residual_decomposition_check(&k, &p).unwrap();
            prop_assert!(r.bijective(), "{p}: {r:?}");
        }
    }

    #[test]
    fn join_oracles_match(k in complex()) {
        for bi in clots(&k).unwrap() {
            let beta = k.simplex(bi);
            for p in perversities(k.n()) {
                prop_assert_eq!(join_homology_oracle(&k, beta, &p, Z).unwrap(), join_homology_direct(&k, beta, &p, Z).unwrap());
                prop_assert_eq!(join_cohomology_oracle(&k, beta, &p, Z).unwrap(), join_cohomology_direct(&k, beta, &p, Z).unwrap());
            }
        }
    }

    #[test]
    fn restriction_and_relative_decomposition(k in complex()) {
        for p in perversities(k.n()) {
            prop_assert!(restriction_surjectivity(&k, &p).unwrap().surjective());
            prop_assert_eq!(blowup_cohomology_rel_residual(&k, &p, Z).unwrap(), relative_decomposition_sum(&k, &p, Z).unwrap());
        }
    }

    #[test]
    fn subdivision_comparison(k in complex()) {
        let n = k.n();
        let r = comparison_check(&k, &[Perversity::zero(n), Perversity::top(n)]).unwrap();
        prop_assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn subdivision_preserves_invariants(k in complex()) {
        let sd = barycentric_subdivide(&k).unwrap();
        prop_assert!(sd.is_full());
        prop_assert_eq!(euler(&sd), euler(&k));
        let levels = tower(&k, &perversities(k.n()), 1, Z).unwrap();
        prop_assert!(tower_is_stable(&levels), "{levels:?}");
    }

    #[test]
    fn global_pi_star_is_multiplicative(k in complex()) {
        let bc = BlowupComplex::new(&k).unwrap();
        let g = GlobalPiStar::new(&bc);
        prop_assert!(g.is_cochain_map());
        prop_assert!(g.preserves_cup());
    }

    #[test]
    fn ordered_cup_laws_for_any_order(k in complex(), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut order: Vec<VertexId> = k.vertices();
        order.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        prop_assert!(check_laws(&OrderedCochains::new(&k, VertexOrder::new(order)).unwrap()).is_ok());
    }

    #[test]
    fn universal_coefficients(k in complex(), p in prop::sample::select(vec![2u64, 3, 5])) {
        let hz = simplicial_homology(&k, Z).unwrap();
        let hp = simplicial_homology(&k, Coefficients::prime(p).unwrap()).unwrap();
        let top = k.dim().unwrap() + 1;
        let divisible = |d: usize| hz.group(d).torsion.iter().filter(|t| t.to_i64().unwrap() % p as i64 == 0).count();
        let want: Vec<usize> = (0..top).map(|d| hz.rank(d) + divisible(d) + if d > 0 { divisible(d - 1) } else { 0 }).collect();
        prop_assert_eq!(hp, HomologyResult::from_ranks(p, &want));
    }

    #[test]
    fn extended_integers_round_trip(v in prop_oneof![Just(ExtInt::NegInf), Just(ExtInt::PosInf), any::<i64>().prop_map(ExtInt::Finite)]) {
        prop_assert_eq!(v.to_string().parse::<ExtInt>().unwrap(), v);
    }
}
