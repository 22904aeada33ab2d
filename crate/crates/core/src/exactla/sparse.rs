//! Sparse elimination with Markowitz pivoting.

use super::dense::dense_rank;
use crate::field::{Fp, PrimeFieldConfig};

type Row = Vec<(u32, Fp)>;

/// Rows examined per pivot search; the shortest rows are always among them.
const CANDIDATE_ROWS: usize = 16;

struct Elimination {
    rows: Vec<Row>,
    active: Vec<bool>,
    col_count: Vec<u32>,
    col_rows: Vec<Vec<u32>>,
    nnz: usize,
    active_rows: usize,
    active_cols: usize,
    field: PrimeFieldConfig,
}

impl Elimination {
    fn new(rows: Vec<Row>, ncols: usize, p: u32) -> Self {
        let mut col_count = vec![0u32; ncols];
        let mut col_rows: Vec<Vec<u32>> = vec![Vec::new(); ncols];
        let mut nnz = 0;
        let mut active = vec![false; rows.len()];
        let mut active_rows = 0;
        for (r, row) in rows.iter().enumerate() {
            if row.is_empty() {
                continue;
            }
            active[r] = true;
            active_rows += 1;
            nnz += row.len();
            for &(c, _) in row {
                col_count[c as usize] += 1;
                col_rows[c as usize].push(r as u32);
            }
        }
        let active_cols = col_count.iter().filter(|&&n| n > 0).count();
        Elimination {
            rows,
            active,
            col_count,
            col_rows,
            nnz,
            active_rows,
            active_cols,
            field: PrimeFieldConfig::new(p, 1).expect("matrix prime is valid"),
        }
    }

    fn density(&self) -> f64 {
        self.nnz as f64 / (self.active_rows as f64 * self.active_cols as f64)
    }

    /// Markowitz pivot: minimal `(len(row)-1) * (count(col)-1)` over the
    /// shortest active rows; ties go to the lowest row, then lowest column.
    fn choose_pivot(&self) -> Option<(usize, u32)> {
        let mut by_len: Vec<(usize, usize)> = self
            .active
            .iter()
            .enumerate()
            .filter(|(_, &a)| a)
            .map(|(r, _)| (self.rows[r].len(), r))
            .collect();
        if by_len.is_empty() {
            return None;
        }
        let k = CANDIDATE_ROWS.min(by_len.len());
        by_len.select_nth_unstable(k - 1);
        by_len.truncate(k);
        by_len.sort_unstable();
        let mut best: Option<(u64, usize, u32)> = None;
        for &(len, r) in &by_len {
            for &(c, _) in &self.rows[r] {
                let cost = (len as u64 - 1) * (self.col_count[c as usize] as u64 - 1);
                let cand = (cost, r, c);
                if best.map_or(true, |b| cand < b) {
                    best = Some(cand);
                }
            }
            if best.map_or(false, |b| b.0 == 0) {
                break;
            }
        }
        best.map(|(_, r, c)| (r, c))
    }

    fn retire_row(&mut self, r: usize) {
        self.active[r] = false;
        self.active_rows -= 1;
        self.nnz -= self.rows[r].len();
        for i in 0..self.rows[r].len() {
            let c = self.rows[r][i].0 as usize;
            self.col_count[c] -= 1;
            if self.col_count[c] == 0 {
                self.active_cols -= 1;
            }
        }
    }

    fn eliminate(&mut self, pr: usize, pc: u32) {
        let pivot = std::mem::take(&mut self.rows[pr]);
        let pv = pivot
            .binary_search_by_key(&pc, |&(c, _)| c)
            .map(|k| pivot[k].1)
            .expect("pivot entry exists");
        let inv = self.field.inv(pv);
        let targets = std::mem::take(&mut self.col_rows[pc as usize]);
        for &t in &targets {
            let t = t as usize;
            if t == pr || !self.active[t] {
                continue;
            }
            let row = &self.rows[t];
            let Ok(k) = row.binary_search_by_key(&pc, |&(c, _)| c) else {
                continue;
            };
            let factor = self.field.neg(self.field.mul(row[k].1, inv));
            let merged = self.axpy(t, factor, &pivot);
            self.rows[t] = merged;
        }
        self.rows[pr] = pivot;
        self.retire_row(pr);
    }

    /// `rows[t] + factor * pivot`, keeping column bookkeeping current.
    fn axpy(&mut self, t: usize, factor: Fp, pivot: &Row) -> Row {
        let row = std::mem::take(&mut self.rows[t]);
        let mut out = Vec::with_capacity(row.len() + pivot.len());
        let (mut i, mut j) = (0, 0);
        while i < row.len() || j < pivot.len() {
            let ci = row.get(i).map_or(u32::MAX, |e| e.0);
            let cj = pivot.get(j).map_or(u32::MAX, |e| e.0);
            if ci < cj {
                out.push(row[i]);
                i += 1;
            } else if cj < ci {
                let v = self.field.mul(factor, pivot[j].1);
                // v != 0 since factor != 0 and pivot entries are nonzero
                out.push((cj, v));
                let c = cj as usize;
                if self.col_count[c] == 0 {
                    self.active_cols += 1;
                }
                self.col_count[c] += 1;
                self.col_rows[c].push(t as u32);
                self.nnz += 1;
                j += 1;
            } else {
                let v = self.field.add(row[i].1, self.field.mul(factor, pivot[j].1));
                if v != 0 {
                    out.push((ci, v));
                } else {
                    let c = ci as usize;
                    self.col_count[c] -= 1;
                    if self.col_count[c] == 0 {
                        self.active_cols -= 1;
                    }
                    self.nnz -= 1;
                }
                i += 1;
                j += 1;
            }
        }
        if out.is_empty() {
            self.active[t] = false;
            self.active_rows -= 1;
        }
        out
    }

    fn dense_remainder(&self) -> usize {
        let mut col_map = vec![u32::MAX; self.col_count.len()];
        let mut ncols = 0;
        for (c, &n) in self.col_count.iter().enumerate() {
            if n > 0 {
                col_map[c] = ncols as u32;
                ncols += 1;
            }
        }
        let live: Vec<usize> = (0..self.rows.len()).filter(|&r| self.active[r]).collect();
        let mut flat = vec![0u64; live.len() * ncols];
        for (i, &r) in live.iter().enumerate() {
            for &(c, v) in &self.rows[r] {
                flat[i * ncols + col_map[c as usize] as usize] = v as u64;
            }
        }
        dense_rank(&mut flat, live.len(), ncols, self.field.prime())
    }
}

pub(super) fn markowitz_rank(rows: Vec<Row>, ncols: usize, p: u32, threshold: f64) -> usize {
    let mut el = Elimination::new(rows, ncols, p);
    let mut rank = 0;
    loop {
        if el.active_rows == 0 {
            return rank;
        }
        if el.density() > threshold {
            return rank + el.dense_remainder();
        }
        let (r, c) = el.choose_pivot().expect("active rows are nonempty");
        el.eliminate(r, c);
        rank += 1;
    }
}
