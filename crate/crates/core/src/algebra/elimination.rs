//! Sparse exact elimination.
//!
//! All routines use unimodular operations only, so they are valid over `Z`
//! as well as over fields.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::matrix::{axpy, lin_comb, sparse_entry, DenseMatrix, SparseMatrix};
use super::ring::EuclideanRing;
use super::snf::dense_invariant_factors;

/// Nonzero invariant factors of `m`, normalized and in divisibility order.
///
/// Unit pivots are eliminated sparsely, shortest row first with the
/// sparsest column as tie-break; whatever remains is handed to dense Smith
/// reduction.
pub fn invariant_factors<R: EuclideanRing>(ring: &R, m: &SparseMatrix<R::Elem>) -> Vec<R::Elem> {
    let ncols = m.ncols();
    let mut rows: Vec<Vec<(usize, R::Elem)>> = m.transpose().into_columns();
    let mut col_rows: Vec<Vec<usize>> = vec![Vec::new(); ncols];
    let mut col_count = vec![0usize; ncols];
    for (i, row) in rows.iter().enumerate() {
        for (c, _) in row {
            col_rows[*c].push(i);
            col_count[*c] += 1;
        }
    }
    let mut row_alive = vec![true; rows.len()];
    let mut heap: BinaryHeap<Reverse<(usize, usize)>> =
        rows.iter().enumerate().map(|(i, r)| Reverse((r.len(), i))).collect();
    let mut units = 0usize;

    while let Some(Reverse((len, r))) = heap.pop() {
        if !row_alive[r] || rows[r].len() != len {
            continue;
        }
        if len == 0 {
            row_alive[r] = false;
            continue;
        }
        let pivot = rows[r]
            .iter()
            .filter(|(_, v)| ring.is_unit(v))
            .min_by_key(|(c, _)| col_count[*c])
            .map(|(c, v)| (*c, v.clone()));
        let Some((c, u)) = pivot else { continue };
        let pivot_row = std::mem::take(&mut rows[r]);
        row_alive[r] = false;
        let others = std::mem::take(&mut col_rows[c]);
        for i in others {
            if i == r || !row_alive[i] {
                continue;
            }
            let Some(a) = sparse_entry(&rows[i], c).cloned() else { continue };
            let f = ring.neg(&ring.div_exact(&a, &u).expect("unit pivot"));
            let old = std::mem::take(&mut rows[i]);
            let new = axpy(ring, &old, &f, &pivot_row);
            diff_columns(&old, &new, |col, added| {
                if added {
                    col_count[col] += 1;
                    col_rows[col].push(i);
                } else {
                    col_count[col] -= 1;
                }
            });
            rows[i] = new;
            heap.push(Reverse((rows[i].len(), i)));
        }
        for (col, _) in &pivot_row {
            col_count[*col] -= 1;
        }
        units += 1;
    }

    let rest: Vec<&Vec<(usize, R::Elem)>> =
        rows.iter().enumerate().filter(|(i, r)| row_alive[*i] && !r.is_empty()).map(|(_, r)| r).collect();
    let mut factors = vec![ring.one(); units];
    if !rest.is_empty() {
        let mut col_map = vec![usize::MAX; ncols];
        let mut width = 0;
        for row in &rest {
            for (c, _) in row.iter() {
                if col_map[*c] == usize::MAX {
                    col_map[*c] = width;
                    width += 1;
                }
            }
        }
        let mut dense = DenseMatrix::zeros(ring, rest.len(), width);
        for (i, row) in rest.iter().enumerate() {
            for (c, v) in row.iter() {
                dense.set(i, col_map[*c], v.clone());
            }
        }
        factors.extend(dense_invariant_factors(ring, &dense));
    }
    factors
}

fn diff_columns<E>(old: &[(usize, E)], new: &[(usize, E)], mut f: impl FnMut(usize, bool)) {
    let (mut i, mut j) = (0, 0);
    while i < old.len() || j < new.len() {
        if j == new.len() || (i < old.len() && old[i].0 < new[j].0) {
            f(old[i].0, false);
            i += 1;
        } else if i == old.len() || new[j].0 < old[i].0 {
            f(new[j].0, true);
            j += 1;
        } else {
            i += 1;
            j += 1;
        }
    }
}

/// Rank of `m` over the given ring (over `Z` this is the rank over `Q`).
pub fn rank<R: EuclideanRing>(ring: &R, m: &SparseMatrix<R::Elem>) -> usize {
    invariant_factors(ring, m).len()
}

/// Result of clearing a set of rows by column operations.
#[derive(Clone, Debug)]
pub struct ColumnReduction<E> {
    /// Columns that vanish on the eliminated rows, in the original row space.
    pub survivors: Vec<Vec<(usize, E)>>,
    /// For each survivor, the combination of original columns producing it.
    pub tracks: Option<Vec<Vec<(usize, E)>>>,
    /// Number of pivot columns consumed, equal to the rank of the
    /// eliminated rows.
    pub pivots: usize,
}

/// Column-reduces `m` until every row flagged in `eliminate` is zero on the
/// surviving columns. The surviving columns span the image under `m` of
/// the kernel of the eliminated rows.
pub fn eliminate_rows<R: EuclideanRing>(
    ring: &R,
    m: &SparseMatrix<R::Elem>,
    eliminate: &[bool],
    track: bool,
) -> ColumnReduction<R::Elem> {
    assert_eq!(eliminate.len(), m.nrows(), "row mask length");
    let ncols = m.ncols();
    let mut cols: Vec<Vec<(usize, R::Elem)>> = m.columns().to_vec();
    let mut tracks: Vec<Vec<(usize, R::Elem)>> =
        if track { (0..ncols).map(|j| vec![(j, ring.one())]).collect() } else { Vec::new() };
    let mut row_cols: Vec<Vec<usize>> = vec![Vec::new(); m.nrows()];
    for (j, c) in cols.iter().enumerate() {
        for (i, _) in c {
            if eliminate[*i] {
                row_cols[*i].push(j);
            }
        }
    }
    let mut alive = vec![true; ncols];
    let mut order: Vec<usize> = (0..m.nrows()).filter(|&i| eliminate[i] && !row_cols[i].is_empty()).collect();
    order.sort_by_key(|&i| (row_cols[i].len(), i));
    let mut pivots = 0;
    let mut seen = vec![usize::MAX; ncols];

    for r in order {
        let mut cand: Vec<usize> = Vec::new();
        for &j in &row_cols[r] {
            if alive[j] && seen[j] != r && sparse_entry(&cols[j], r).is_some() {
                seen[j] = r;
                cand.push(j);
            }
        }
        row_cols[r].clear();
        while cand.len() > 1 {
            let unit = cand
                .iter()
                .copied()
                .filter(|&j| ring.is_unit(sparse_entry(&cols[j], r).unwrap()))
                .min_by_key(|&j| cols[j].len());
            if let Some(j0) = unit {
                let u = sparse_entry(&cols[j0], r).unwrap().clone();
                let pivot_col = cols[j0].clone();
                let pivot_track = if track { tracks[j0].clone() } else { Vec::new() };
                for &j in cand.iter().filter(|&&j| j != j0) {
                    let a = sparse_entry(&cols[j], r).unwrap();
                    let f = ring.neg(&ring.div_exact(a, &u).unwrap());
                    let new = axpy(ring, &cols[j], &f, &pivot_col);
                    note_new_rows(&cols[j], &new, eliminate, &mut row_cols, j);
                    cols[j] = new;
                    if track {
                        tracks[j] = axpy(ring, &tracks[j], &f, &pivot_track);
                    }
                }
                cand = vec![j0];
            } else {
                cand.sort_by_key(|&j| ring.size(sparse_entry(&cols[j], r).unwrap()));
                let (ja, jb) = (cand[0], cand[1]);
                let a = sparse_entry(&cols[ja], r).unwrap().clone();
                let b = sparse_entry(&cols[jb], r).unwrap().clone();
                let (g, s, t) = ring.ext_gcd(&a, &b);
                let al = ring.div_exact(&a, &g).unwrap();
                let be = ring.neg(&ring.div_exact(&b, &g).unwrap());
                let new_a = lin_comb(ring, &s, &cols[ja], &t, &cols[jb]);
                let new_b = lin_comb(ring, &be, &cols[ja], &al, &cols[jb]);
                note_new_rows(&cols[ja], &new_a, eliminate, &mut row_cols, ja);
                note_new_rows(&cols[jb], &new_b, eliminate, &mut row_cols, jb);
                if track {
                    let ta = lin_comb(ring, &s, &tracks[ja], &t, &tracks[jb]);
                    let tb = lin_comb(ring, &be, &tracks[ja], &al, &tracks[jb]);
                    tracks[ja] = ta;
                    tracks[jb] = tb;
                }
                cols[ja] = new_a;
                cols[jb] = new_b;
                cand.remove(1);
            }
        }
        if let Some(&j0) = cand.first() {
            alive[j0] = false;
            pivots += 1;
        }
    }

    let mut survivors = Vec::new();
    let mut surv_tracks = Vec::new();
    for j in 0..ncols {
        if alive[j] {
            survivors.push(std::mem::take(&mut cols[j]));
            if track {
                surv_tracks.push(std::mem::take(&mut tracks[j]));
            }
        }
    }
    ColumnReduction { survivors, tracks: track.then_some(surv_tracks), pivots }
}

fn note_new_rows<E>(
    old: &[(usize, E)],
    new: &[(usize, E)],
    eliminate: &[bool],
    row_cols: &mut [Vec<usize>],
    j: usize,
) {
    diff_columns(old, new, |row, added| {
        if added && eliminate[row] {
            row_cols[row].push(j);
        }
    });
}

/// A saturated basis of the kernel of `m`, as sparse vectors.
pub fn kernel_basis<R: EuclideanRing>(ring: &R, m: &SparseMatrix<R::Elem>) -> Vec<Vec<(usize, R::Elem)>> {
    let all = vec![true; m.nrows()];
    eliminate_rows(ring, m, &all, true).tracks.unwrap()
}

/// Kernel of a system of equations `x_a = x_b`: returns the class of each
/// coordinate and the number of classes. Each class indicator is a basis
/// vector of the kernel.
pub fn equality_classes(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> (Vec<usize>, usize) {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (a, b) in pairs {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    let mut label = vec![usize::MAX; n];
    let mut class = vec![0; n];
    let mut count = 0;
    for x in 0..n {
        let r = find(&mut parent, x);
        if label[r] == usize::MAX {
            label[r] = count;
            count += 1;
        }
        class[x] = label[r];
    }
    (class, count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::integer::Integer;
    use crate::algebra::matrix::IntMatrix;
    use crate::algebra::ring::{Integers, PrimeField};
    use proptest::prelude::*;

    fn sparse(rows: &[Vec<i64>]) -> SparseMatrix<Integer> {
        IntMatrix::from_i64_rows(rows).unwrap().to_sparse(&Integers)
    }

    #[test]
    fn factors_of_rp2_like_boundary() {
        let m = sparse(&[vec![2, 0], vec![0, 1]]);
        assert_eq!(invariant_factors(&Integers, &m), vec![Integer::ONE, Integer::from(2)]);
    }

    #[test]
    fn kernel_of_cycle_boundary() {
        // boundary of a triangle's edges: kernel is the cycle
        let m = sparse(&[vec![-1, -1, 0], vec![1, 0, -1], vec![0, 1, 1]]);
        let k = kernel_basis(&Integers, &m);
        assert_eq!(k.len(), 1);
        let x: Vec<Integer> = (0..3).map(|j| sparse_entry(&k[0], j).cloned().unwrap_or_default()).collect();
        assert!(m.mul_vec(&Integers, &x).iter().all(Integer::is_zero));
    }

    #[test]
    fn equality_kernel() {
        let (class, n) = equality_classes(5, [(0, 3), (3, 4)]);
        assert_eq!(n, 3);
        assert_eq!(class[0], class[4]);
        assert_ne!(class[1], class[2]);
    }

    fn random_matrix(rows: usize, cols: usize, data: &[i64]) -> SparseMatrix<Integer> {
        let t = (0..rows).flat_map(|i| (0..cols).map(move |j| (i, j))).map(|(i, j)| (i, j, Integer::from(data[i * 6 + j])));
        SparseMatrix::from_triplets(&Integers, rows, cols, t).unwrap()
    }

    proptest! {
        #[test]
        fn sparse_factors_match_dense(rows in 0usize..6, cols in 0usize..6, data in proptest::collection::vec(-3i64..4, 36)) {
            let m = random_matrix(rows, cols, &data);
            let dense = dense_invariant_factors(&Integers, &m.to_dense(&Integers));
            prop_assert_eq!(invariant_factors(&Integers, &m), dense);
            let f3 = PrimeField::new(3).unwrap();
            let m3 = m.reduce(&f3);
            prop_assert_eq!(rank(&f3, &m3), dense_invariant_factors(&f3, &m3.to_dense(&f3)).len());
        }

        #[test]
        fn kernel_is_saturated_and_complete(rows in 0usize..6, cols in 0usize..6, data in proptest::collection::vec(-3i64..4, 36)) {
            let m = random_matrix(rows, cols, &data);
            let k = kernel_basis(&Integers, &m);
            prop_assert_eq!(k.len(), cols - rank(&Integers, &m));
            for v in &k {
                prop_assert!(m.mul_sparse_vec(&Integers, v).is_empty());
            }
            // saturation: the kernel basis matrix has all invariant factors 1
            let kb = SparseMatrix::from_columns(cols, k.clone());
            prop_assert!(invariant_factors(&Integers, &kb).iter().all(Integer::is_one));
        }

        #[test]
        fn eliminate_rows_spans_constrained_image(rows in 1usize..6, cols in 0usize..6, data in proptest::collection::vec(-3i64..4, 36), mask in proptest::collection::vec(any::<bool>(), 6)) {
            let m = random_matrix(rows, cols, &data);
            let elim: Vec<bool> = mask[..rows].to_vec();
            let red = eliminate_rows(&Integers, &m, &elim, true);
            let tracks = red.tracks.as_ref().unwrap();
            for (s, t) in red.survivors.iter().zip(tracks) {
                prop_assert_eq!(&m.mul_sparse_vec(&Integers, t), s);
                prop_assert!(s.iter().all(|(i, _)| !elim[*i]));
            }
            let keep: Vec<usize> = (0..rows).filter(|&i| elim[i]).collect();
            let mut map = vec![None; rows];
            for (k, &i) in keep.iter().enumerate() { map[i] = Some(k); }
            let sub = m.remap_rows(keep.len(), &map);
            prop_assert_eq!(red.pivots, rank(&Integers, &sub));
            prop_assert_eq!(red.survivors.len(), cols - red.pivots);
        }
    }
}
