//! Exact linear algebra over F_p.
//!
//! Matrices are stored sparsely (CSR with sorted, reduced, nonzero entries).
//! [`rank`] runs a Markowitz-pivoted sparse elimination and hands the
//! remaining block to a dense kernel once fill-in passes
//! [`DENSE_FILL_THRESHOLD`]. Kernels and solutions are read off the reduced
//! row echelon form, which is unique, so they do not depend on pivot order.

mod dense;
mod sparse;

pub use dense::{dense_rank, rref, Rref};

use crate::field::{Fp, PrimeFieldConfig};
use thiserror::Error;

/// Fraction of nonzeros in the active block above which elimination goes dense.
pub const DENSE_FILL_THRESHOLD: f64 = 0.30;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: expected length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("entry ({row}, {col}) outside a {rows}x{cols} matrix")]
    OutOfBounds {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },
    #[error("matrices live over different primes ({0} and {1})")]
    PrimeMismatch(u32, u32),
}

/// Sparse matrix over F_p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<u32>,
    vals: Vec<Fp>,
}

impl FpMatrix {
    pub fn zero(field: &PrimeFieldConfig, rows: usize, cols: usize) -> Self {
        FpMatrix {
            p: field.prime(),
            rows,
            cols,
            row_ptr: vec![0; rows + 1],
            col_idx: Vec::new(),
            vals: Vec::new(),
        }
    }

    pub fn identity(field: &PrimeFieldConfig, n: usize) -> Self {
        Self::from_triplets(field, n, n, (0..n).map(|i| (i, i, 1)))
            .expect("diagonal entries are in bounds")
    }

    /// Builds a matrix from `(row, col, value)` triplets in any order. Values
    /// are reduced mod p, duplicates are summed and zeros dropped.
    pub fn from_triplets<I>(
        field: &PrimeFieldConfig,
        rows: usize,
        cols: usize,
        entries: I,
    ) -> Result<Self, LinalgError>
    where
        I: IntoIterator<Item = (usize, usize, u64)>,
    {
        let mut t: Vec<(usize, usize, u64)> = Vec::new();
        for (r, c, v) in entries {
            if r >= rows || c >= cols {
                return Err(LinalgError::OutOfBounds { row: r, col: c, rows, cols });
            }
            t.push((r, c, v % field.prime() as u64));
        }
        t.sort_unstable_by_key(|&(r, c, _)| (r, c));
        let mut row_ptr = vec![0usize; rows + 1];
        let mut col_idx = Vec::with_capacity(t.len());
        let mut vals: Vec<Fp> = Vec::with_capacity(t.len());
        let mut last: Option<(usize, usize)> = None;
        let mut last_row = Vec::with_capacity(t.len());
        for (r, c, v) in t {
            if last == Some((r, c)) {
                let x = vals.last_mut().expect("duplicate follows an entry");
                *x = field.add(*x, v as Fp);
            } else {
                col_idx.push(c as u32);
                vals.push(v as Fp);
                last_row.push(r);
                last = Some((r, c));
            }
        }
        // drop cancelled entries
        let mut k = 0;
        for i in 0..vals.len() {
            if vals[i] != 0 {
                vals[k] = vals[i];
                col_idx[k] = col_idx[i];
                last_row[k] = last_row[i];
                k += 1;
            }
        }
        vals.truncate(k);
        col_idx.truncate(k);
        last_row.truncate(k);
        for &r in &last_row {
            row_ptr[r + 1] += 1;
        }
        for i in 0..rows {
            row_ptr[i + 1] += row_ptr[i];
        }
        Ok(FpMatrix { p: field.prime(), rows, cols, row_ptr, col_idx, vals })
    }

    /// Builds a matrix from dense rows (values reduced mod p).
    pub fn from_dense(field: &PrimeFieldConfig, cols: usize, data: &[Vec<Fp>]) -> Self {
        let entries = data.iter().enumerate().flat_map(|(r, row)| {
            assert_eq!(row.len(), cols, "ragged dense input");
            row.iter()
                .enumerate()
                .filter(|(_, &v)| v != 0)
                .map(move |(c, &v)| (r, c, v as u64))
        });
        Self::from_triplets(field, data.len(), cols, entries).expect("dense input is in bounds")
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(field: &PrimeFieldConfig, rows: usize, columns: &[Vec<Fp>]) -> Self {
        let entries = columns.iter().enumerate().flat_map(|(c, col)| {
            assert_eq!(col.len(), rows, "column length mismatch");
            col.iter()
                .enumerate()
                .filter(|(_, &v)| v != 0)
                .map(move |(r, &v)| (r, c, v as u64))
        });
        Self::from_triplets(field, rows, columns.len(), entries).expect("columns are in bounds")
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn is_zero(&self) -> bool {
        self.vals.is_empty()
    }

    /// Column indices and values of row `i`.
    pub fn row(&self, i: usize) -> (&[u32], &[Fp]) {
        let (a, b) = (self.row_ptr[i], self.row_ptr[i + 1]);
        (&self.col_idx[a..b], &self.vals[a..b])
    }

    pub fn get(&self, i: usize, j: usize) -> Fp {
        let (cols, vals) = self.row(i);
        match cols.binary_search(&(j as u32)) {
            Ok(k) => vals[k],
            Err(_) => 0,
        }
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, Fp)> + '_ {
        (0..self.rows).flat_map(move |r| {
            let (cols, vals) = self.row(r);
            cols.iter().zip(vals).map(move |(&c, &v)| (r, c as usize, v))
        })
    }

    pub fn to_dense(&self) -> Vec<Vec<Fp>> {
        let mut out = vec![vec![0; self.cols]; self.rows];
        for (r, c, v) in self.triplets() {
            out[r][c] = v;
        }
        out
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut counts = vec![0usize; self.cols + 1];
        for &c in &self.col_idx {
            counts[c as usize + 1] += 1;
        }
        for i in 0..self.cols {
            counts[i + 1] += counts[i];
        }
        let row_ptr = counts.clone();
        let mut next = counts;
        let mut col_idx = vec![0u32; self.nnz()];
        let mut vals = vec![0; self.nnz()];
        for r in 0..self.rows {
            let (cols, vs) = self.row(r);
            for (&c, &v) in cols.iter().zip(vs) {
                let slot = next[c as usize];
                col_idx[slot] = r as u32;
                vals[slot] = v;
                next[c as usize] += 1;
            }
        }
        FpMatrix { p: self.p, rows: self.cols, cols: self.rows, row_ptr, col_idx, vals }
    }

    pub fn mul_vec(&self, x: &[Fp]) -> Result<Vec<Fp>, LinalgError> {
        if x.len() != self.cols {
            return Err(LinalgError::DimensionMismatch { expected: self.cols, got: x.len() });
        }
        let p = self.p as u64;
        Ok((0..self.rows)
            .map(|r| {
                let (cols, vals) = self.row(r);
                let mut acc = 0u64;
                for (&c, &v) in cols.iter().zip(vals) {
                    acc = (acc + v as u64 * x[c as usize] as u64) % p;
                }
                acc as Fp
            })
            .collect())
    }

    /// Sparse product `self * other`.
    pub fn mul(&self, other: &FpMatrix) -> Result<FpMatrix, LinalgError> {
        if self.p != other.p {
            return Err(LinalgError::PrimeMismatch(self.p, other.p));
        }
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch { expected: self.cols, got: other.rows });
        }
        let p = self.p as u64;
        let mut acc = vec![0u64; other.cols];
        let mut touched: Vec<u32> = Vec::new();
        let mut mark = vec![false; other.cols];
        let mut row_ptr = vec![0usize; self.rows + 1];
        let mut col_idx = Vec::new();
        let mut vals = Vec::new();
        for r in 0..self.rows {
            let (ks, avs) = self.row(r);
            for (&k, &a) in ks.iter().zip(avs) {
                let (cs, bvs) = other.row(k as usize);
                for (&c, &b) in cs.iter().zip(bvs) {
                    let c = c as usize;
                    if !mark[c] {
                        mark[c] = true;
                        touched.push(c as u32);
                    }
                    acc[c] = (acc[c] + a as u64 * b as u64) % p;
                }
            }
            touched.sort_unstable();
            for &c in &touched {
                let c = c as usize;
                if acc[c] != 0 {
                    col_idx.push(c as u32);
                    vals.push(acc[c] as Fp);
                }
                acc[c] = 0;
                mark[c] = false;
            }
            touched.clear();
            row_ptr[r + 1] = col_idx.len();
        }
        Ok(FpMatrix { p: self.p, rows: self.rows, cols: other.cols, row_ptr, col_idx, vals })
    }

    /// Whether `self * other` is the zero matrix, without storing the product.
    pub fn product_is_zero(&self, other: &FpMatrix) -> Result<bool, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch { expected: self.cols, got: other.rows });
        }
        let p = self.p as u64;
        let mut acc = vec![0u64; other.cols];
        let mut touched: Vec<usize> = Vec::new();
        for r in 0..self.rows {
            let (ks, avs) = self.row(r);
            for (&k, &a) in ks.iter().zip(avs) {
                let (cs, bvs) = other.row(k as usize);
                for (&c, &b) in cs.iter().zip(bvs) {
                    let c = c as usize;
                    if acc[c] == 0 {
                        touched.push(c);
                    }
                    // keep entries nonzero-or-reduced so `touched` stays exact
                    let v = (acc[c] + a as u64 * b as u64) % p;
                    acc[c] = if v == 0 { p } else { v };
                }
            }
            let mut nonzero = false;
            for &c in &touched {
                if acc[c] != p {
                    nonzero = true;
                }
                acc[c] = 0;
            }
            touched.clear();
            if nonzero {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn sparse_rows(&self) -> Vec<Vec<(u32, Fp)>> {
        (0..self.rows)
            .map(|r| {
                let (c, v) = self.row(r);
                c.iter().copied().zip(v.iter().copied()).collect()
            })
            .collect()
    }
}

fn field_of(m: &FpMatrix) -> PrimeFieldConfig {
    PrimeFieldConfig::new(m.p, 1).expect("matrix prime was validated at construction")
}

/// Rank over F_p. Deterministic for a fixed input.
pub fn rank(m: &FpMatrix) -> usize {
    if m.is_zero() {
        return 0;
    }
    sparse::markowitz_rank(m.sparse_rows(), m.cols, m.p, DENSE_FILL_THRESHOLD)
}

/// Rank computed by the dense kernel alone (no sparse phase).
pub fn rank_dense(m: &FpMatrix) -> usize {
    let mut flat = vec![0u64; m.rows * m.cols];
    for (r, c, v) in m.triplets() {
        flat[r * m.cols + c] = v as u64;
    }
    dense_rank(&mut flat, m.rows, m.cols, m.p)
}

/// Basis of the right null space, one vector per non-pivot column of the
/// reduced row echelon form (free coordinate set to 1).
pub fn kernel_basis(m: &FpMatrix) -> Vec<Vec<Fp>> {
    let field = field_of(m);
    let r = rref(&field, m.to_dense(), m.cols);
    let mut is_pivot = vec![false; m.cols];
    for &c in &r.pivots {
        is_pivot[c] = true;
    }
    (0..m.cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![0; m.cols];
            v[free] = 1;
            for (row, &pc) in r.rows.iter().zip(&r.pivots) {
                v[pc] = field.neg(row[free]);
            }
            v
        })
        .collect()
}

/// Finds `x` with `m * x = v`, or `None` when `v` is outside the column span.
pub fn solve_membership(m: &FpMatrix, v: &[Fp]) -> Result<Option<Vec<Fp>>, LinalgError> {
    if v.len() != m.rows {
        return Err(LinalgError::DimensionMismatch { expected: m.rows, got: v.len() });
    }
    let field = field_of(m);
    let mut aug = m.to_dense();
    for (row, &b) in aug.iter_mut().zip(v) {
        row.push(b % m.p);
    }
    let r = rref(&field, aug, m.cols + 1);
    if r.pivots.last() == Some(&m.cols) {
        return Ok(None);
    }
    let mut x = vec![0; m.cols];
    for (row, &pc) in r.rows.iter().zip(&r.pivots) {
        x[pc] = row[m.cols];
    }
    Ok(Some(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f() -> PrimeFieldConfig {
        PrimeFieldConfig::new(1_000_003, 1).unwrap()
    }

    /// Reference rank: plain Gaussian elimination on dense rows with eager reduction.
    fn oracle_rank(field: &PrimeFieldConfig, mut a: Vec<Vec<Fp>>, cols: usize) -> usize {
        let mut rank = 0;
        for c in 0..cols {
            let Some(piv) = (rank..a.len()).find(|&r| a[r][c] != 0) else { continue };
            a.swap(rank, piv);
            let inv = field.inv(a[rank][c]);
            for r in 0..a.len() {
                if r != rank && a[r][c] != 0 {
                    let factor = field.mul(a[r][c], inv);
                    for k in 0..cols {
                        let t = field.mul(factor, a[rank][k]);
                        a[r][k] = field.sub(a[r][k], t);
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn identity_and_zero() {
        let field = f();
        assert_eq!(rank(&FpMatrix::identity(&field, 3)), 3);
        assert_eq!(rank(&FpMatrix::zero(&field, 4, 7)), 0);
        assert_eq!(rank(&FpMatrix::zero(&field, 0, 0)), 0);
        assert!(kernel_basis(&FpMatrix::identity(&field, 3)).is_empty());
        let k = kernel_basis(&FpMatrix::zero(&field, 2, 5));
        assert_eq!(k.len(), 5);
        for (i, v) in k.iter().enumerate() {
            let mut e = vec![0; 5];
            e[i] = 1;
            assert_eq!(v, &e);
        }
    }

    #[test]
    fn twisted_cubic_quadrics_are_independent() {
        // q1 = x0x2 - x1^2, q2 = x0x3 - x1x2, q3 = x1x3 - x2^2 in the basis
        // x0^2, x0x1, x0x2, x0x3, x1^2, x1x2, x1x3, x2^2, x2x3, x3^2
        let field = f();
        let m1 = field.neg(1);
        let rows = vec![
            vec![0, 0, 1, 0, m1, 0, 0, 0, 0, 0],
            vec![0, 0, 0, 1, 0, m1, 0, 0, 0, 0],
            vec![0, 0, 0, 0, 0, 0, 1, m1, 0, 0],
        ];
        let m = FpMatrix::from_dense(&field, 10, &rows);
        assert_eq!(rank(&m), 3);
        assert_eq!(kernel_basis(&m).len(), 7);
    }

    #[test]
    fn solve_trivial_cases() {
        let field = f();
        let id = FpMatrix::identity(&field, 3);
        assert_eq!(solve_membership(&id, &[1, 0, 0]).unwrap(), Some(vec![1, 0, 0]));
        let z = FpMatrix::zero(&field, 3, 2);
        assert_eq!(solve_membership(&z, &[0, 5, 0]).unwrap(), None);
        assert!(matches!(
            solve_membership(&id, &[1, 0]),
            Err(LinalgError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn duplicates_merge_and_cancel() {
        let field = PrimeFieldConfig::new(7, 1).unwrap();
        let m = FpMatrix::from_triplets(&field, 2, 2, vec![(0, 0, 3), (0, 0, 4), (1, 1, 9)]).unwrap();
        assert_eq!(m.nnz(), 1);
        assert_eq!(m.get(1, 1), 2);
        assert!(FpMatrix::from_triplets(&field, 2, 2, vec![(2, 0, 1)]).is_err());
    }

    #[test]
    fn product_zero_check_matches_product() {
        let field = PrimeFieldConfig::new(5, 1).unwrap();
        let a = FpMatrix::from_dense(&field, 2, &[vec![1, 1], vec![2, 2]]);
        let b = FpMatrix::from_dense(&field, 2, &[vec![1, 3], vec![4, 2]]);
        assert!(a.mul(&b).unwrap().is_zero());
        assert!(a.product_is_zero(&b).unwrap());
        assert!(!b.product_is_zero(&a).unwrap());
    }

    fn small_matrix() -> impl Strategy<Value = (usize, usize, Vec<(usize, usize, u64)>)> {
        (1usize..14, 1usize..14).prop_flat_map(|(r, c)| {
            let entries = proptest::collection::vec((0..r, 0..c, 0u64..4), 0..(r * c + 1));
            (Just(r), Just(c), entries)
        })
    }

    proptest! {
        #[test]
        fn rank_matches_oracle_and_nullity((r, c, e) in small_matrix(), p in prop::sample::select(vec![2u32, 3, 7, 1_000_003])) {
            let field = PrimeFieldConfig::new(p, 1).unwrap();
            let m = FpMatrix::from_triplets(&field, r, c, e).unwrap();
            let rk = rank(&m);
            prop_assert_eq!(rk, oracle_rank(&field, m.to_dense(), c));
            prop_assert_eq!(rk, rank_dense(&m));
            let ker = kernel_basis(&m);
            prop_assert_eq!(rk + ker.len(), c);
            for v in &ker {
                prop_assert!(m.mul_vec(v).unwrap().iter().all(|&x| x == 0));
            }
        }

        #[test]
        fn rank_ignores_row_order((r, c, e) in small_matrix(), shift in 0usize..13) {
            let field = PrimeFieldConfig::new(3, 1).unwrap();
            let m = FpMatrix::from_triplets(&field, r, c, e.clone()).unwrap();
            let permuted = e.into_iter().map(|(i, j, v)| ((i + shift) % r, j, v));
            let mp = FpMatrix::from_triplets(&field, r, c, permuted).unwrap();
            prop_assert_eq!(rank(&m), rank(&mp));
        }

        #[test]
        fn solve_recovers_a_preimage((r, c, e) in small_matrix(), x in proptest::collection::vec(0u32..1000, 13)) {
            let field = PrimeFieldConfig::new(1_000_003, 1).unwrap();
            let m = FpMatrix::from_triplets(&field, r, c, e).unwrap();
            let x = &x[..c];
            let v = m.mul_vec(x).unwrap();
            let sol = solve_membership(&m, &v).unwrap().expect("image vector is in the span");
            prop_assert_eq!(m.mul_vec(&sol).unwrap(), v);
        }
    }
}
