//! Acceptance suite: one PASS/FAIL line per criterion, each with a pinned
//! time budget. Runs without the libtest harness so the report is ordered.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use ihsimp::algebra::{Coefficients, HomologyGroup, HomologyResult, Integer};
use ihsimp::blowup::{
    blowup_cohomology_rel_residual, blown_up_cohomology, join_cohomology_direct, join_cohomology_oracle,
    relative_decomposition_sum, restriction_surjectivity, BlowupComplex, DecomposedSimplex, LocalBlownUpComplex,
};
use ihsimp::chains::{
    dual_value_at_clot, intersection_homology, join_homology_direct, join_homology_oracle,
    relative_intersection_homology, residual_decomposition_check, simplicial_homology, Perversity,
};
use ihsimp::complex::{clots, join_complex, link, residual, FilteredComplex, Simplex, VertexId, VertexOrder};
use ihsimp::corpus;
use ihsimp::extint::ExtInt;
use ihsimp::products::{check_laws, regular_size_vectors, BlowupAlgebra, LocalPiStar, OrderedCochains};
use ihsimp::subdivision::{comparison_check, tower, tower_is_stable};

const Z: Coefficients = Coefficients::Integers;

fn ms(n: u64) -> Duration {
    Duration::from_millis(n)
}

/// Runs `f` against a budget; an assertion failure or overrun is a FAIL.
fn criterion(id: usize, title: &str, budget: Duration, f: impl FnOnce()) -> bool {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(f));
    let took = start.elapsed();
    let (ok, note) = match outcome {
        Err(e) => {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            (false, format!(" [{msg}]"))
        }
        Ok(()) if took > budget => (false, " [over budget]".to_string()),
        Ok(()) => (true, String::new()),
    };
    println!(
        "criterion {id:>2} {}: {title} ({} ms, budget {} ms){note}",
        if ok { "PASS" } else { "FAIL" },
        took.as_millis(),
        budget.as_millis()
    );
    ok
}

fn timed<T>(budget: Duration, what: &str, f: impl FnOnce() -> T) -> T {
    let start = Instant::now();
    let out = f();
    assert!(start.elapsed() <= budget, "{what} took {:?}, budget {budget:?}", start.elapsed());
    out
}

fn presets(n: usize) -> Vec<Perversity> {
    ["zero", "top", "lower-middle", "upper-middle", "inf", "-inf"]
        .iter()
        .map(|s| Perversity::preset(s, n).expect("preset"))
        .collect()
}

/// Homology over the integers by an independent dense Smith reduction of
/// the boundary matrices, built directly from the vertex lists.
fn reference_homology(k: &FilteredComplex) -> Vec<(usize, Vec<i64>)> {
    fn invariant_factors(mut m: Vec<Vec<i64>>) -> Vec<i64> {
        let rows = m.len();
        let cols = m.first().map_or(0, Vec::len);
        let mut out = Vec::new();
        let mut t = 0;
        while t < rows.min(cols) {
            let pivot = (t..rows).flat_map(|i| (t..cols).map(move |j| (i, j))).filter(|&(i, j)| m[i][j] != 0).min_by_key(|&(i, j)| m[i][j].abs());
            let Some((pi, pj)) = pivot else { break };
            m.swap(t, pi);
            for row in m.iter_mut() {
                row.swap(t, pj);
            }
            loop {
                let p = m[t][t];
                let mut clean = true;
                for i in t + 1..rows {
                    let q = m[i][t] / p;
                    if q != 0 {
                        for j in t..cols {
                            m[i][j] -= q * m[t][j];
                        }
                    }
                    clean &= m[i][t] == 0;
                }
                for j in t + 1..cols {
                    let q = m[t][j] / p;
                    if q != 0 {
                        for row in m.iter_mut().skip(t) {
                            row[j] -= q * row[t];
                        }
                    }
                    clean &= m[t][j] == 0;
                }
                // divisibility of the rest of the block
                if clean {
                    if let Some((i, _)) =
                        (t + 1..rows).flat_map(|i| (t + 1..cols).map(move |j| (i, j))).find(|&(i, j)| m[i][j] % p != 0)
                    {
                        for j in t..cols {
                            m[t][j] += m[i][j];
                        }
                        continue;
                    }
                    break;
                }
                let (bi, bj) = (t..rows)
                    .flat_map(|i| (t..cols).map(move |j| (i, j)))
                    .filter(|&(i, j)| m[i][j] != 0 && (i == t || j == t))
                    .min_by_key(|&(i, j)| m[i][j].abs())
                    .expect("a nonzero entry");
                m.swap(t, bi);
                for row in m.iter_mut() {
                    row.swap(t, bj);
                }
            }
            out.push(m[t][t].abs());
            t += 1;
        }
        out
    }
    let top = k.dim().unwrap();
    let by_dim: Vec<Vec<&Simplex>> = (0..=top).map(|d| k.simplices().iter().filter(|s| s.dim() == d).collect()).collect();
    let boundary = |d: usize| -> Vec<Vec<i64>> {
        let rows = &by_dim[d - 1];
        let mut m = vec![vec![0i64; by_dim[d].len()]; rows.len()];
        for (j, s) in by_dim[d].iter().enumerate() {
            for (pos, v) in s.vertices().iter().enumerate() {
                let face = Simplex::new(s.vertices().iter().copied().filter(|w| w != v).collect()).unwrap();
                let i = rows.iter().position(|r| **r == face).unwrap();
                m[i][j] = if pos % 2 == 0 { 1 } else { -1 };
            }
        }
        m
    };
    let factors: Vec<Vec<i64>> = (0..=top).map(|d| if d == 0 { Vec::new() } else { invariant_factors(boundary(d)) }).collect();
    (0..=top)
        .map(|d| {
            let incoming: &[i64] = if d < top { &factors[d + 1] } else { &[] };
            let free = by_dim[d].len() - factors[d].len() - incoming.len();
            (free, incoming.iter().copied().filter(|&x| x != 1).collect())
        })
        .collect()
}

fn matches_reference(h: &HomologyResult, r: &[(usize, Vec<i64>)]) -> bool {
    r.iter().enumerate().all(|(d, (free, tors))| {
        h.group(d) == HomologyGroup { free_rank: *free, torsion: tors.iter().map(|&t| Integer::from(t)).collect() }
    })
}

fn criterion_1() {
    let z2 = HomologyGroup { free_rank: 0, torsion: vec![Integer::from(2i64)] };
    let cases = [
        ("sphere", corpus::sphere(), vec![HomologyGroup::free(1), HomologyGroup::free(0), HomologyGroup::free(1)]),
        ("torus", corpus::torus(), vec![HomologyGroup::free(1), HomologyGroup::free(2), HomologyGroup::free(1)]),
        ("rp2", corpus::rp2(), vec![HomologyGroup::free(1), z2, HomologyGroup::free(0)]),
    ];
    for (name, k, want) in cases {
        timed(ms(1000), name, || {
            let h = simplicial_homology(&k, Z).unwrap();
            assert_eq!(h, HomologyResult::new(0, want.clone()), "{name}");
            assert!(matches_reference(&h, &reference_homology(&k)), "{name}: independent reduction differs");
            // trivial filtration: intersection homology is ordinary homology
            for p in presets(2) {
                assert_eq!(intersection_homology(&k, &p, Z).unwrap(), h, "{name} {p}");
            }
        });
    }
    let f2 = Coefficients::prime(2).unwrap();
    assert_eq!(simplicial_homology(&corpus::rp2(), f2).unwrap(), HomologyResult::from_ranks(2, &[1, 1, 1]));
}

fn criterion_2() {
    let k = corpus::suspension();
    let zero = Perversity::zero(2);
    let one_skeleton = k.subcomplex(|i| k.simplex(i).dim() <= 1).unwrap();
    let h = relative_intersection_homology(&k, &one_skeleton, &zero, Z).unwrap();
    assert_eq!(h, HomologyResult::from_ranks(0, &[0, 0, 2]), "H(K^(2), K^(1)) = Z + Z");
    // each triangle alone carries no intersection chain rel its boundary
    for i in k.dim_range(2) {
        let tri = k.subcomplex(|j| k.simplex(j).is_face_of(k.simplex(i))).unwrap();
        let bd = tri.subcomplex(|j| tri.simplex(j).dim() < 2).unwrap();
        assert!(relative_intersection_homology(&tri, &bd, &zero.restrict(&k, &tri).unwrap(), Z).unwrap().is_zero());
    }
    let whole = relative_intersection_homology(&k, &residual(&k).unwrap(), &zero, Z).unwrap();
    let mut sum = HomologyResult::zero(0);
    let cl = clots(&k).unwrap();
    assert_eq!(cl.len(), 2, "the two poles");
    for bi in cl {
        let beta = k.simplex(bi);
        let star = join_complex(beta, k.level(bi), &link(&k, beta).unwrap()).unwrap();
        let ps = zero.restrict(&k, &star).unwrap();
        sum = sum.direct_sum(&relative_intersection_homology(&star, &residual(&star).unwrap(), &ps, Z).unwrap());
    }
    assert_eq!(whole, sum);
    assert_eq!(whole, HomologyResult::from_ranks(0, &[0, 0, 2]));
}

fn criterion_3() {
    for e in corpus::full() {
        for p in presets(e.complex.n()) {
            let r = residual_decomposition_check(&e.complex, &p).unwrap();
            assert!(r.bijective(), "{} {p}: {r:?}", e.name);
        }
    }
}

/// Presets, constants, and the codimension perversity `(0, 1)` that puts
/// `Dp̄ = -1` over a link with vanishing `H_0`.
fn join_perversities(n: usize) -> Vec<Perversity> {
    let mut ps = presets(n);
    for c in [-2i64, -1, 1, 2] {
        ps.push(Perversity::constant(&format!("c{c}"), n, ExtInt::from(c)));
    }
    let mut mixed = vec![ExtInt::ZERO; n];
    mixed[n - 1] = ExtInt::from(1i64);
    ps.push(Perversity::codim("mixed", mixed));
    ps
}

#[derive(Default)]
struct JoinCases {
    nonnegative: usize,
    minus_one_with_h0: usize,
    minus_one_without_h0: usize,
    below: usize,
}

fn criterion_4() {
    let mut cases = JoinCases::default();
    for e in corpus::full() {
        let k = &e.complex;
        for bi in clots(k).unwrap() {
            let beta = k.simplex(bi);
            let l = link(k, beta).unwrap();
            for p in join_perversities(k.n()) {
                let oracle = join_homology_oracle(k, beta, &p, Z).unwrap();
                let direct = join_homology_direct(k, beta, &p, Z).unwrap();
                assert_eq!(oracle, direct, "{} {beta} {p}", e.name);
                if k.strata()[k.stratum_of(bi)].regular {
                    continue;
                }
                let h0 = !intersection_homology(&l, &p.restrict(k, &l).unwrap(), Z).unwrap().group(0).is_zero();
                match dual_value_at_clot(k, beta, &p).unwrap() {
                    ExtInt::PosInf => cases.nonnegative += 1,
                    ExtInt::Finite(d) if d >= 0 => cases.nonnegative += 1,
                    ExtInt::Finite(-1) if h0 => cases.minus_one_with_h0 += 1,
                    ExtInt::Finite(-1) => cases.minus_one_without_h0 += 1,
                    _ => cases.below += 1,
                }
            }
        }
    }
    assert!(cases.nonnegative > 0, "no clot with Dp >= 0");
    assert!(cases.minus_one_with_h0 > 0, "no clot with Dp = -1 and H_0 != 0");
    assert!(cases.minus_one_without_h0 > 0, "no clot with Dp = -1 and H_0 = 0");
    assert!(cases.below > 0, "no clot with Dp < -1");
}

fn criterion_5() {
    for e in corpus::full() {
        let k = &e.complex;
        for bi in clots(k).unwrap() {
            let beta = k.simplex(bi);
            for p in join_perversities(k.n()) {
                let oracle = join_cohomology_oracle(k, beta, &p, Z).unwrap();
                let direct = join_cohomology_direct(k, beta, &p, Z).unwrap();
                assert_eq!(oracle, direct, "{} {beta} {p}", e.name);
            }
        }
    }
}

fn criterion_6() {
    for e in corpus::full() {
        let k = &e.complex;
        for p in presets(k.n()) {
            let r = restriction_surjectivity(k, &p).unwrap();
            assert!(r.surjective(), "{} {p}: {r:?}", e.name);
            let whole = blowup_cohomology_rel_residual(k, &p, Z).unwrap();
            let sum = relative_decomposition_sum(k, &p, Z).unwrap();
            assert_eq!(whole, sum, "{} {p}", e.name);
        }
    }
}

fn criterion_7() {
    for e in corpus::full().into_iter().filter(|e| e.complex.len() <= 200) {
        let k = &e.complex;
        let n = k.n();
        let ps = [Perversity::zero(n), Perversity::top(n), Perversity::lower_middle(n)];
        let levels = timed(ms(60_000), e.name, || tower(k, &ps, 2, Z).unwrap());
        assert_eq!(levels.len(), 3);
        assert!(levels.iter().all(|l| l.full), "{}: a level is not full", e.name);
        assert!(tower_is_stable(&levels), "{}: {:?}", e.name, levels);
    }
}

fn criterion_8() {
    for e in corpus::full() {
        let n = e.complex.n();
        let r = comparison_check(&e.complex, &[Perversity::zero(n), Perversity::top(n)]).unwrap();
        assert!(r.j_phi_failures.is_empty(), "{}: j.phi != id in degrees {:?}", e.name, r.j_phi_failures);
        assert!(r.passed(), "{}: {r:?}", e.name);
    }
}

fn criterion_9() {
    let sizes = regular_size_vectors(5, 3);
    assert_eq!(sizes.len(), 125);
    for s in sizes {
        let r = LocalPiStar::new(&DecomposedSimplex::from_sizes(&s).unwrap()).unwrap().check();
        assert!(r.passed(), "{r:?}");
    }
}

fn permutations(v: Vec<VertexId>) -> Vec<Vec<VertexId>> {
    if v.len() <= 1 {
        return vec![v];
    }
    let mut out = Vec::new();
    for i in 0..v.len() {
        let mut rest = v.clone();
        let x = rest.remove(i);
        for mut p in permutations(rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

fn criterion_10() {
    // ordered cup on every vertex order of Δ^0, ..., Δ^3
    for d in 0..=3u32 {
        let ids: Vec<u32> = (0..=d).collect();
        let k = FilteredComplex::from_vertex_levels(1, &[Simplex::from_ids(&ids).unwrap()], |_| 1).unwrap();
        for order in permutations(ids.iter().map(|&v| VertexId(v)).collect()) {
            check_laws(&OrderedCochains::new(&k, VertexOrder::new(order)).unwrap()).unwrap();
        }
    }
    // local blow-ups of every decomposed simplex with at most 4 vertices
    for s in regular_size_vectors(4, 3) {
        check_laws(&LocalBlownUpComplex::new(&DecomposedSimplex::from_sizes(&s).unwrap()).unwrap()).unwrap();
    }
    // both cups on the corpus
    for e in corpus::full() {
        check_laws(&OrderedCochains::filtered(&e.complex)).unwrap_or_else(|v| panic!("{}: {v:?}", e.name));
        let bc = BlowupComplex::new(&e.complex).unwrap();
        check_laws(&BlowupAlgebra::new(&bc)).unwrap_or_else(|v| panic!("{}: {v:?}", e.name));
    }
}

fn criterion_11() {
    let k = corpus::suspension_torus();
    assert_eq!(k.n(), 3);
    for p in [Perversity::lower_middle(3), Perversity::top(3)] {
        let h = intersection_homology(&k, &p, Z).unwrap();
        let b = blown_up_cohomology(&k, &p, Z).unwrap();
        for deg in 0..=3 {
            assert_eq!(b.rank(deg), h.rank(3 - deg), "{p}: degree {deg}");
        }
    }
    assert_eq!(intersection_homology(&k, &Perversity::lower_middle(3), Z).unwrap().ranks(), vec![1, 2, 0, 1]);
    assert_eq!(intersection_homology(&k, &Perversity::top(3), Z).unwrap().ranks(), vec![1, 0, 2, 1]);
}

fn main() -> ExitCode {
    let results = [
        criterion(1, "ordinary homology of the sphere, torus and RP2", ms(3000), criterion_1),
        criterion(2, "suspension of the triangle boundary", ms(1000), criterion_2),
        criterion(3, "residual decomposition is bijective", ms(10_000), criterion_3),
        criterion(4, "join homology formula", ms(30_000), criterion_4),
        criterion(5, "blown-up join formula", ms(30_000), criterion_5),
        criterion(6, "restriction surjectivity and relative decomposition", ms(30_000), criterion_6),
        criterion(7, "subdivision invariance up to sd^2", ms(180_000), criterion_7),
        criterion(8, "j . phi = id", ms(60_000), criterion_8),
        criterion(9, "local pi* is unimodular and cup-preserving", ms(30_000), criterion_9),
        criterion(10, "cochain algebra laws for both cups", ms(60_000), criterion_10),
        criterion(11, "duality ranks on the suspended torus", ms(30_000), criterion_11),
    ];
    let failed = results.iter().filter(|ok| !**ok).count();
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
