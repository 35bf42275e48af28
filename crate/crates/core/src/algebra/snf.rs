//! Dense Smith normal form with unimodular transforms.

use super::matrix::DenseMatrix;
use super::ring::EuclideanRing;

/// `U * M * V = S` with `S` diagonal and each factor dividing the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm<E> {
    pub s: DenseMatrix<E>,
    pub u: DenseMatrix<E>,
    pub v: DenseMatrix<E>,
    /// Nonzero diagonal entries of `s`, normalized.
    pub factors: Vec<E>,
}

impl<E> SmithForm<E> {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }
}

/// Computes the Smith normal form of `m` together with the transforms.
pub fn smith_normal_form<R: EuclideanRing>(ring: &R, m: &DenseMatrix<R::Elem>) -> SmithForm<R::Elem> {
    let mut u = DenseMatrix::identity(ring, m.rows());
    let mut v = DenseMatrix::identity(ring, m.cols());
    let mut s = m.clone();
    let factors = reduce(ring, &mut s, Some((&mut u, &mut v)));
    SmithForm { s, u, v, factors }
}

/// Invariant factors only; cheaper than [`smith_normal_form`].
pub fn dense_invariant_factors<R: EuclideanRing>(ring: &R, m: &DenseMatrix<R::Elem>) -> Vec<R::Elem> {
    let mut s = m.clone();
    reduce(ring, &mut s, None)
}

type Transforms<'a, E> = Option<(&'a mut DenseMatrix<E>, &'a mut DenseMatrix<E>)>;

fn reduce<R: EuclideanRing>(ring: &R, a: &mut DenseMatrix<R::Elem>, mut tr: Transforms<'_, R::Elem>) -> Vec<R::Elem> {
    let (rows, cols) = (a.rows(), a.cols());
    let mut factors = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = smallest_entry(ring, a, t) else { break };
        a.swap_rows(t, pi);
        a.swap_cols(t, pj);
        if let Some((u, v)) = tr.as_mut() {
            u.swap_rows(t, pi);
            v.swap_cols(t, pj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if ring.is_zero(a.get(i, t)) {
                    continue;
                }
                let (p, x) = (a.get(t, t).clone(), a.get(i, t).clone());
                match ring.div_exact(&x, &p) {
                    Some(q) => {
                        let q = ring.neg(&q);
                        a.add_row_multiple(ring, i, t, &q);
                        if let Some((u, _)) = tr.as_mut() {
                            u.add_row_multiple(ring, i, t, &q);
                        }
                    }
                    None => {
                        let (g, s, c) = ring.ext_gcd(&p, &x);
                        let al = ring.div_exact(&p, &g).unwrap();
                        let be = ring.neg(&ring.div_exact(&x, &g).unwrap());
                        a.combine_rows(ring, t, i, [&s, &c, &be, &al]);
                        if let Some((u, _)) = tr.as_mut() {
                            u.combine_rows(ring, t, i, [&s, &c, &be, &al]);
                        }
                        clean = false;
                    }
                }
            }
            for j in t + 1..cols {
                if ring.is_zero(a.get(t, j)) {
                    continue;
                }
                let (p, x) = (a.get(t, t).clone(), a.get(t, j).clone());
                match ring.div_exact(&x, &p) {
                    Some(q) => {
                        let q = ring.neg(&q);
                        a.add_col_multiple(ring, j, t, &q);
                        if let Some((_, v)) = tr.as_mut() {
                            v.add_col_multiple(ring, j, t, &q);
                        }
                    }
                    None => {
                        let (g, s, c) = ring.ext_gcd(&p, &x);
                        let al = ring.div_exact(&p, &g).unwrap();
                        let be = ring.neg(&ring.div_exact(&x, &g).unwrap());
                        a.combine_cols(ring, t, j, [&s, &c, &be, &al]);
                        if let Some((_, v)) = tr.as_mut() {
                            v.combine_cols(ring, t, j, [&s, &c, &be, &al]);
                        }
                        clean = false;
                    }
                }
            }
            if !clean {
                continue;
            }
            // Enforce divisibility of the rest of the block by the pivot.
            let p = a.get(t, t).clone();
            let bad = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| ring.div_exact(a.get(i, j), &p).is_none())
            });
            match bad {
                Some(i) => {
                    let one = ring.one();
                    a.add_row_multiple(ring, t, i, &one);
                    if let Some((u, _)) = tr.as_mut() {
                        u.add_row_multiple(ring, t, i, &one);
                    }
                }
                None => break,
            }
        }
        let (norm, unit) = ring.normalize(a.get(t, t));
        if unit != ring.one() {
            for j in 0..cols {
                let w = ring.mul(a.get(t, j), &unit);
                a.set(t, j, w);
            }
            if let Some((u, _)) = tr.as_mut() {
                for j in 0..rows {
                    let w = ring.mul(u.get(t, j), &unit);
                    u.set(t, j, w);
                }
            }
        }
        factors.push(norm);
        t += 1;
    }
    factors
}

fn smallest_entry<R: EuclideanRing>(ring: &R, a: &DenseMatrix<R::Elem>, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(u128, usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let x = a.get(i, j);
            if ring.is_zero(x) {
                continue;
            }
            let sz = ring.size(x);
            if best.is_none_or(|b| sz < b.0) {
                best = Some((sz, i, j));
                if sz == 1 {
                    return Some((i, j));
                }
            }
        }
    }
    best.map(|b| (b.1, b.2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::integer::Integer;
    use crate::algebra::matrix::IntMatrix;
    use crate::algebra::ring::{Integers, PrimeField};
    use proptest::prelude::*;

    fn check(m: &IntMatrix) -> SmithForm<Integer> {
        let z = Integers;
        let f = smith_normal_form(&z, m);
        let prod = f.u.mul(&z, m).unwrap().mul(&z, &f.v).unwrap();
        assert_eq!(prod, f.s);
        assert!(f.u.determinant().unwrap().is_unit());
        assert!(f.v.determinant().unwrap().is_unit());
        for i in 0..f.s.rows() {
            for j in 0..f.s.cols() {
                if i != j {
                    assert!(f.s.get(i, j).is_zero());
                }
            }
        }
        for w in f.factors.windows(2) {
            assert!(w[1].div_exact(&w[0]).is_some());
        }
        f
    }

    #[test]
    fn classic_example() {
        let m = IntMatrix::from_i64_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]).unwrap();
        let f = check(&m);
        assert_eq!(f.factors, vec![Integer::from(2), Integer::from(6), Integer::from(12)]);
    }

    #[test]
    fn coprime_entries() {
        let m = IntMatrix::from_i64_rows(&[vec![2, 0], vec![0, 3]]).unwrap();
        assert_eq!(check(&m).factors, vec![Integer::from(1), Integer::from(6)]);
    }

    #[test]
    fn zero_and_empty() {
        let m = IntMatrix::from_i64_rows(&[vec![0, 0, 0]]).unwrap();
        assert!(check(&m).factors.is_empty());
        let e = IntMatrix::filled(0, 3, Integer::ZERO);
        assert!(check(&e).factors.is_empty());
    }

    #[test]
    fn over_field_counts_rank() {
        let f2 = PrimeField::new(2).unwrap();
        let m = IntMatrix::from_i64_rows(&[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]).unwrap();
        let m2 = m.to_sparse(&Integers).reduce(&f2).to_dense(&f2);
        assert_eq!(dense_invariant_factors(&f2, &m2).len(), 2);
        assert_eq!(dense_invariant_factors(&Integers, &m), vec![Integer::ONE, Integer::ONE, Integer::from(2)]);
    }

    proptest! {
        #[test]
        fn random_matrices(rows in 0usize..5, cols in 0usize..5, seed in proptest::collection::vec(-6i64..7, 25)) {
            let data: Vec<Vec<i64>> = (0..rows).map(|i| (0..cols).map(|j| seed[i * 5 + j]).collect()).collect();
            let m = if rows == 0 { IntMatrix::filled(0, cols, Integer::ZERO) } else { IntMatrix::from_i64_rows(&data).unwrap() };
            let f = check(&m);
            if rows == cols {
                let det: Integer = f.factors.iter().fold(Integer::ONE, |a, b| &a * b);
                let d = m.determinant().unwrap();
                if f.rank() == rows { prop_assert_eq!(det, d.abs()); } else { prop_assert!(d.is_zero()); }
            }
        }
    }
}
