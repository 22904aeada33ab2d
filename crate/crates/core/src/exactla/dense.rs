use crate::field::{Fp, PrimeFieldConfig};
use rayon::prelude::*;

/// Reduced row echelon form: the nonzero rows and their pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub rows: Vec<Vec<Fp>>,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Reduced row echelon form of `a` (rows of length `cols`). Pivots are taken
/// column by column, lowest row index first.
pub fn rref(field: &PrimeFieldConfig, mut a: Vec<Vec<Fp>>, cols: usize) -> Rref {
    let p = field.prime() as u64;
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..cols {
        if rank == a.len() {
            break;
        }
        let Some(piv) = (rank..a.len()).find(|&r| a[r][c] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = field.inv(a[rank][c]);
        for v in a[rank][c..].iter_mut() {
            *v = field.mul(*v, inv);
        }
        let pivot_row = a[rank].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == rank || row[c] == 0 {
                continue;
            }
            let factor = p - row[c] as u64;
            for (x, &y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                *x = ((*x as u64 + factor * y as u64) % p) as Fp;
            }
        }
        pivots.push(c);
        rank += 1;
    }
    a.truncate(rank);
    Rref { rows: a, pivots }
}

const PAR_MIN_WORK: usize = 1 << 16;

/// Rank of a dense row-major `nrows x ncols` matrix whose entries are
/// reduced mod `p`. The buffer is destroyed.
///
/// Row updates are accumulated without reduction; an entry grows by at most
/// `(p-1)^2` per pivot, so a full reduction is only needed every
/// `(2^64 - p) / (p-1)^2` pivots.
pub fn dense_rank(a: &mut [u64], nrows: usize, ncols: usize, p: u32) -> usize {
    assert_eq!(a.len(), nrows * ncols);
    if nrows == 0 || ncols == 0 {
        return 0;
    }
    let pm = p as u64;
    let step = ((pm - 1) * (pm - 1)).max(1);
    let budget = ((u64::MAX - pm) / step).max(1) as usize;
    let field = PrimeFieldConfig::new(p, 1).expect("caller passes a prime");
    let mut rank = 0usize;
    let mut since_reduce = 0usize;
    let mut pivot_row: Vec<u32> = vec![0; ncols];
    for c in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(piv) = (rank..nrows).find(|&r| a[r * ncols + c] % pm != 0) else {
            continue;
        };
        if piv != rank {
            let (lo, hi) = a.split_at_mut(piv * ncols);
            lo[rank * ncols..(rank + 1) * ncols].swap_with_slice(&mut hi[..ncols]);
        }
        let inv = field.inv((a[rank * ncols + c] % pm) as Fp) as u64;
        for k in c..ncols {
            let v = a[rank * ncols + k] % pm * inv % pm;
            a[rank * ncols + k] = v;
            pivot_row[k] = v as u32;
        }
        rank += 1;
        since_reduce += 1;
        let width = ncols - c - 1;
        let tail = &mut a[rank * ncols..];
        let piv_tail = &pivot_row[c + 1..];
        let update = |row: &mut [u64]| {
            let f = row[c] % pm;
            if f == 0 {
                return;
            }
            let factor = pm - f;
            for (x, &y) in row[c + 1..].iter_mut().zip(piv_tail) {
                *x = x.wrapping_add(factor.wrapping_mul(y as u64));
            }
        };
        if (nrows - rank) * width >= PAR_MIN_WORK && rayon::current_num_threads() > 1 {
            tail.par_chunks_mut(ncols).for_each(update);
        } else {
            tail.chunks_mut(ncols).for_each(update);
        }
        if since_reduce >= budget {
            for x in a[rank * ncols..].iter_mut() {
                *x %= pm;
            }
            since_reduce = 0;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_is_canonical() {
        let f = PrimeFieldConfig::new(7, 1).unwrap();
        let a = vec![vec![2, 4, 1], vec![1, 2, 0], vec![3, 6, 1]];
        let b = vec![vec![1, 2, 0], vec![3, 6, 1], vec![2, 4, 1]];
        let ra = rref(&f, a, 3);
        assert_eq!(ra, rref(&f, b, 3));
        assert_eq!(ra.pivots, vec![0, 2]);
        assert_eq!(ra.rows, vec![vec![1, 2, 0], vec![0, 0, 1]]);
    }

    #[test]
    fn dense_rank_with_tiny_budget() {
        // p close to 2^31 forces a reduction after every pivot
        let p = 2_147_483_629u32;
        let n = 6;
        let mut a: Vec<u64> = (0..n * n).map(|k| ((k * k + 3) as u64 * 7919) % p as u64).collect();
        let f = PrimeFieldConfig::new(p, 1).unwrap();
        let rows: Vec<Vec<Fp>> = a.chunks(n).map(|r| r.iter().map(|&x| x as Fp).collect()).collect();
        let expected = rref(&f, rows, n).rank();
        assert_eq!(dense_rank(&mut a, n, n, p), expected);
        let mut z = vec![0u64; 12];
        assert_eq!(dense_rank(&mut z, 3, 4, p), 0);
    }
}
