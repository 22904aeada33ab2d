//! Koszul complexes of graded modules and graded Betti diagrams.
//!
//! For `M` over `S = F_p[x_0..x_r]` with `V = S_1`, the strand
//!
//! ```text
//! ∧^{p+1} V ⊗ M_{q-1} --d_{p+1,q-1}--> ∧^p V ⊗ M_q --d_{p,q}--> ∧^{p-1} V ⊗ M_{q+1}
//! ```
//!
//! has middle cohomology `K_{p,q}(M, V)` and `b_{p,q} = dim K_{p,q}`. The
//! diagram entry `(p, q)` is `Tor_p(M, k)` in internal degree `p + q`, so the
//! twisted cubic has its quadrics at `(1, 1)` and its linear syzygies at
//! `(2, 1)`, and the residue field sits entirely in row `q = 0`.

use crate::exactla::{rank, FpMatrix};
use crate::field::Fp;
use crate::gring::{binomial, GradedModule};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::time::Instant;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KoszulError {
    #[error("degree {q} lies outside the module window {min}..={max}; raise max_degree")]
    OutOfWindow { q: i64, min: i64, max: i64 },
    #[error("kernel dimension went negative at ({p}, {q})")]
    NegativeDimension { p: usize, q: i64 },
    #[error("diagram entry ({p}, {q}) is needed but was not computed")]
    Uncomputed { p: usize, q: usize },
}

/// `p`-subsets of `0..n` as bitmasks in lexicographic order, with an index.
#[derive(Clone, Debug)]
pub struct WedgeBasis {
    pub subsets: Vec<u64>,
    index: HashMap<u64, usize>,
}

impl WedgeBasis {
    pub fn new(n: usize, p: usize) -> Self {
        let mut subsets = Vec::new();
        fn go(start: usize, n: usize, left: usize, mask: u64, out: &mut Vec<u64>) {
            if left == 0 {
                out.push(mask);
                return;
            }
            for i in start..=n - left {
                go(i + 1, n, left - 1, mask | 1 << i, out);
            }
        }
        if p <= n {
            go(0, n, p, 0, &mut subsets);
        }
        let index = subsets.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        WedgeBasis { subsets, index }
    }

    pub fn len(&self) -> usize {
        self.subsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subsets.is_empty()
    }

    pub fn index_of(&self, mask: u64) -> Option<usize> {
        self.index.get(&mask).copied()
    }
}

pub fn mask_elements(mask: u64) -> Vec<usize> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

fn piece_dim_checked(m: &GradedModule, q: i64) -> Result<usize, KoszulError> {
    if !m.covers(q) {
        return Err(KoszulError::OutOfWindow { q, min: m.min_degree(), max: m.max_degree() });
    }
    Ok(m.dim(q))
}

/// `dim ∧^p V ⊗ M_q`.
pub fn chain_dim(m: &GradedModule, p: usize, q: i64) -> usize {
    binomial(m.ring().num_vars() as i64, p as i64) as usize * m.dim(q)
}

/// Matrix of `d_{p,q}: ∧^p V ⊗ M_q -> ∧^{p-1} V ⊗ M_{q+1}`,
/// `d(e_J ⊗ u) = Σ_l (-1)^l e_{J \ j_l} ⊗ x_{j_l} u` with `l` counted from 1.
/// Column `(J, k)` has index `idx(J) * dim M_q + k`, rows likewise.
pub fn koszul_differential(m: &GradedModule, p: usize, q: i64) -> Result<FpMatrix, KoszulError> {
    let field = m.ring().field().clone();
    let n = m.ring().num_vars();
    let src_dim = piece_dim_checked(m, q)?;
    let dst_dim = piece_dim_checked(m, q + 1)?;
    let src = WedgeBasis::new(n, p);
    let cols = src.len() * src_dim;
    if p == 0 {
        return Ok(FpMatrix::zero(&field, 0, cols));
    }
    let dst = WedgeBasis::new(n, p - 1);
    let rows = dst.len() * dst_dim;
    if rows == 0 || cols == 0 {
        return Ok(FpMatrix::zero(&field, rows, cols));
    }
    // columns of x_i: M_q -> M_{q+1}
    let by_col: Vec<FpMatrix> = (0..n)
        .map(|i| m.mult(i, q).expect("both pieces are inside the window").transpose())
        .collect();
    let neg_one = field.neg(1);
    let mut entries: Vec<(usize, usize, u64)> = Vec::new();
    for (ji, &mask) in src.subsets.iter().enumerate() {
        for (l, var) in mask_elements(mask).into_iter().enumerate() {
            let sign: Fp = if l % 2 == 0 { neg_one } else { 1 };
            let row_block = dst.index_of(mask & !(1 << var)).expect("subset of size p-1") * dst_dim;
            let a = &by_col[var];
            for k in 0..src_dim {
                let (targets, vals) = a.row(k);
                let col = ji * src_dim + k;
                for (&t, &v) in targets.iter().zip(vals) {
                    entries.push((row_block + t as usize, col, field.mul(sign, v) as u64));
                }
            }
        }
    }
    Ok(FpMatrix::from_triplets(&field, rows, cols, entries).expect("indices are in range"))
}

/// The two maps around `∧^p V ⊗ M_q`.
#[derive(Clone, Debug)]
pub struct KoszulStrand {
    pub p: usize,
    pub q: i64,
    /// `d_{p,q}`
    pub d_out: FpMatrix,
    /// `d_{p+1,q-1}`
    pub d_in: FpMatrix,
}

impl KoszulStrand {
    pub fn new(m: &GradedModule, p: usize, q: i64) -> Result<Self, KoszulError> {
        Ok(KoszulStrand {
            p,
            q,
            d_out: koszul_differential(m, p, q)?,
            d_in: koszul_differential(m, p + 1, q - 1)?,
        })
    }

    /// `d_out ∘ d_in = 0`.
    pub fn is_complex(&self) -> bool {
        self.d_out.product_is_zero(&self.d_in).expect("strand maps are composable")
    }

    pub fn cohomology_dim(&self) -> Result<usize, KoszulError> {
        let kernel = self.d_out.cols() as i64 - rank(&self.d_out) as i64;
        let dim = kernel - rank(&self.d_in) as i64;
        if dim < 0 {
            return Err(KoszulError::NegativeDimension { p: self.p, q: self.q });
        }
        Ok(dim as usize)
    }
}

/// `dim K_{p,q}(M, V) = dim ker d_{p,q} - rank d_{p+1,q-1}`.
pub fn koszul_dim(m: &GradedModule, p: usize, q: i64) -> Result<usize, KoszulError> {
    KoszulStrand::new(m, p, q)?.cohomology_dim()
}

/// Graded Betti numbers `b_{p,q}` for `0 <= p <= p_max`, `0 <= q <= q_max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiDiagram {
    pub num_vars: usize,
    pub p_max: usize,
    pub q_max: usize,
    #[serde(serialize_with = "entries_as_triples")]
    entries: BTreeMap<(usize, usize), u64>,
}

fn entries_as_triples<S: serde::Serializer>(e: &BTreeMap<(usize, usize), u64>, s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(e.iter().map(|(&(p, q), &b)| [p as u64, q as u64, b]))
}

impl BettiDiagram {
    pub fn from_entries(
        num_vars: usize,
        p_max: usize,
        q_max: usize,
        entries: impl IntoIterator<Item = ((usize, usize), u64)>,
    ) -> Self {
        let mut map = BTreeMap::new();
        for p in 0..=p_max {
            for q in 0..=q_max {
                map.insert((p, q), 0);
            }
        }
        for (k, v) in entries {
            assert!(k.0 <= p_max && k.1 <= q_max, "entry {k:?} outside the window");
            map.insert(k, v);
        }
        BettiDiagram { num_vars, p_max, q_max, entries: map }
    }

    /// `b_{p,q}`, or `None` outside the window. Columns past `r + 1` are zero.
    pub fn get(&self, p: usize, q: usize) -> Option<u64> {
        if p > self.num_vars {
            return Some(0);
        }
        self.entries.get(&(p, q)).copied()
    }

    /// Entry inside the window; panics outside it.
    pub fn at(&self, p: usize, q: usize) -> u64 {
        self.get(p, q).unwrap_or_else(|| panic!("({p}, {q}) outside the computed window"))
    }

    /// `(p, q, b)` sorted by `(p, q)`.
    pub fn triples(&self) -> Vec<(usize, usize, u64)> {
        self.entries.iter().map(|(&(p, q), &b)| (p, q, b)).collect()
    }

    pub fn row(&self, q: usize) -> Vec<u64> {
        (0..=self.p_max).map(|p| self.at(p, q)).collect()
    }

    pub fn column_total(&self, p: usize) -> u64 {
        (0..=self.q_max).map(|q| self.at(p, q)).sum()
    }

    /// `Σ_p (-1)^p b_{p,k-p}` when every term is inside the window.
    pub fn diagonal_sum(&self, k: usize) -> Option<i64> {
        let mut s = 0i64;
        for p in 0..=k.min(self.num_vars) {
            let b = self.get(p, k - p)? as i64;
            s += if p % 2 == 0 { b } else { -b };
        }
        Some(s)
    }

    /// Macaulay2-style table: p across, q down, `.` for zero.
    pub fn to_text(&self) -> String {
        let mut cells: Vec<Vec<String>> = Vec::new();
        let mut header = vec![String::new()];
        header.extend((0..=self.p_max).map(|p| p.to_string()));
        cells.push(header);
        let mut totals = vec!["total:".to_string()];
        totals.extend((0..=self.p_max).map(|p| self.column_total(p).to_string()));
        cells.push(totals);
        for q in 0..=self.q_max {
            let mut row = vec![format!("{q}:")];
            row.extend(self.row(q).into_iter().map(|b| if b == 0 { ".".into() } else { b.to_string() }));
            cells.push(row);
        }
        let ncols = cells[0].len();
        let widths: Vec<usize> =
            (0..ncols).map(|c| cells.iter().map(|r| r[c].chars().count()).max().unwrap_or(0)).collect();
        let mut out = String::new();
        for row in &cells {
            let mut line = String::new();
            for (c, cell) in row.iter().enumerate() {
                if c > 0 {
                    line.push(' ');
                }
                let _ = write!(line, "{cell:>w$}", w = widths[c]);
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct StrandTiming {
    pub p: usize,
    pub q: i64,
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    pub build_ms: u64,
    pub rank_ms: u64,
}

#[derive(Clone, Debug, Default)]
pub struct BettiOptions {
    /// Verify `d_{p,q} ∘ d_{p+1,q-1} = 0` for every strand of the window.
    pub check_complex: bool,
}

#[derive(Clone, Debug)]
pub struct BettiRun {
    pub diagram: BettiDiagram,
    /// One record per differential whose rank was taken.
    pub timings: Vec<StrandTiming>,
    /// `(p, q, holds)` for each strand checked.
    pub complex_checks: Vec<(usize, i64, bool)>,
}

impl BettiRun {
    pub fn all_complexes_hold(&self) -> bool {
        self.complex_checks.iter().all(|c| c.2)
    }
}

pub fn betti_diagram(m: &GradedModule, p_max: usize, q_max: usize) -> Result<BettiDiagram, KoszulError> {
    Ok(betti_diagram_with(m, p_max, q_max, &BettiOptions::default())?.diagram)
}

/// Fills the window from the ranks of all differentials `d_{p,q}` and
/// `d_{p+1,q-1}`. Each rank is computed once, in parallel; matrices are
/// built on demand and dropped as soon as their rank is known.
pub fn betti_diagram_with(
    m: &GradedModule,
    p_max: usize,
    q_max: usize,
    opts: &BettiOptions,
) -> Result<BettiRun, KoszulError> {
    piece_dim_checked(m, q_max as i64 + 1)?;
    let mut needed: Vec<(usize, i64)> = Vec::new();
    for p in 0..=p_max {
        for q in 0..=q_max as i64 {
            needed.push((p, q));
            needed.push((p + 1, q - 1));
        }
    }
    needed.sort_unstable();
    needed.dedup();
    // biggest matrices first so the pool stays busy
    needed.sort_by_key(|&(p, q)| std::cmp::Reverse(chain_dim(m, p, q)));

    let timed: Vec<Result<StrandTiming, KoszulError>> = needed
        .par_iter()
        .map(|&(p, q)| {
            let t0 = Instant::now();
            let d = koszul_differential(m, p, q)?;
            let build_ms = t0.elapsed().as_millis() as u64;
            let t1 = Instant::now();
            let rk = rank(&d);
            Ok(StrandTiming {
                p,
                q,
                rows: d.rows(),
                cols: d.cols(),
                rank: rk,
                build_ms,
                rank_ms: t1.elapsed().as_millis() as u64,
            })
        })
        .collect();
    let mut timings = timed.into_iter().collect::<Result<Vec<_>, _>>()?;
    timings.sort_by_key(|t| (t.p, t.q));
    let ranks: HashMap<(usize, i64), usize> = timings.iter().map(|t| ((t.p, t.q), t.rank)).collect();

    let mut entries = Vec::new();
    for p in 0..=p_max {
        for q in 0..=q_max {
            let qi = q as i64;
            let dim = chain_dim(m, p, qi) as i64 - ranks[&(p, qi)] as i64 - ranks[&(p + 1, qi - 1)] as i64;
            if dim < 0 {
                return Err(KoszulError::NegativeDimension { p, q: qi });
            }
            entries.push(((p, q), dim as u64));
        }
    }

    let mut complex_checks = Vec::new();
    if opts.check_complex {
        let window: Vec<(usize, i64)> =
            (0..=p_max).flat_map(|p| (0..=q_max as i64).map(move |q| (p, q))).collect();
        let checks: Result<Vec<_>, KoszulError> = window
            .par_iter()
            .map(|&(p, q)| Ok((p, q, KoszulStrand::new(m, p, q)?.is_complex())))
            .collect();
        complex_checks = checks?;
    }

    Ok(BettiRun {
        diagram: BettiDiagram::from_entries(m.ring().num_vars(), p_max, q_max, entries),
        timings,
        complex_checks,
    })
}

/// `h_M(d) = Σ_{p,q} (-1)^p b_{p,q} C(d + r - p - q, r)`. Only entries with
/// `p + q <= d` contribute; all of them must be inside the window.
pub fn hilbert_from_diagram(diagram: &BettiDiagram, d: usize) -> Result<i64, KoszulError> {
    let r = diagram.num_vars as i64 - 1;
    let mut h = 0i64;
    for p in 0..=d.min(diagram.num_vars) {
        for q in 0..=d - p {
            let b = diagram.get(p, q).ok_or(KoszulError::Uncomputed { p, q })? as i64;
            let c = binomial(d as i64 + r - (p + q) as i64, r);
            h += if p % 2 == 0 { b * c } else { -b * c };
        }
    }
    Ok(h)
}

/// `B_k = h(k) - Σ_{l<k} B_l C(r + k - l, r)` for `k = 0..=k_max`.
pub fn diagonal_sums(h: &[i64], r: usize, k_max: usize) -> Vec<i64> {
    assert!(h.len() > k_max, "Hilbert values needed through degree {k_max}");
    let mut b: Vec<i64> = Vec::with_capacity(k_max + 1);
    for k in 0..=k_max {
        let s: i64 = (0..k).map(|l| b[l] * binomial((r + k - l) as i64, r as i64)).sum();
        b.push(h[k] - s);
    }
    b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeFieldConfig;
    use crate::gring::{quotient_module, residue_field_module, HomogeneousIdeal, RingSpec};

    fn cubic() -> GradedModule {
        let ring = RingSpec::new(4, PrimeFieldConfig::default_for_level(1)).unwrap();
        let ideal = HomogeneousIdeal::from_terms(
            ring,
            &[
                vec![(1, vec![1, 0, 1, 0]), (-1, vec![0, 2, 0, 0])],
                vec![(1, vec![1, 0, 0, 1]), (-1, vec![0, 1, 1, 0])],
                vec![(1, vec![0, 1, 0, 1]), (-1, vec![0, 0, 2, 0])],
            ],
        )
        .unwrap();
        quotient_module(&ideal, 4).unwrap()
    }

    #[test]
    fn wedge_basis_lex() {
        let w = WedgeBasis::new(4, 2);
        let lists: Vec<Vec<usize>> = w.subsets.iter().map(|&m| mask_elements(m)).collect();
        assert_eq!(lists, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(WedgeBasis::new(3, 0).len(), 1);
        assert_eq!(WedgeBasis::new(3, 4).len(), 0);
    }

    #[test]
    fn twisted_cubic_entries() {
        let m = cubic();
        assert_eq!(koszul_dim(&m, 1, 1).unwrap(), 3);
        assert_eq!(koszul_dim(&m, 2, 1).unwrap(), 2);
        assert_eq!(koszul_dim(&m, 1, 2).unwrap(), 0);
        let run = betti_diagram_with(&m, 3, 2, &BettiOptions { check_complex: true }).unwrap();
        let d = &run.diagram;
        assert_eq!(d.row(0), vec![1, 0, 0, 0]);
        assert_eq!(d.row(1), vec![0, 3, 2, 0]);
        assert_eq!(d.row(2), vec![0, 0, 0, 0]);
        assert!(run.all_complexes_hold());
        assert_eq!(run.complex_checks.len(), 12);
    }

    #[test]
    fn composite_vanishes_on_cubic() {
        let m = cubic();
        for p in 1..=4 {
            for q in 0..=2 {
                let a = koszul_differential(&m, p - 1, q + 1).unwrap();
                let b = koszul_differential(&m, p, q).unwrap();
                assert!(a.product_is_zero(&b).unwrap(), "({p},{q})");
            }
        }
    }

    #[test]
    fn differential_shapes() {
        let m = cubic();
        let d0 = koszul_differential(&m, 0, 1).unwrap();
        assert_eq!((d0.rows(), d0.cols()), (0, 4));
        let d = koszul_differential(&m, 2, 1).unwrap();
        assert_eq!((d.rows(), d.cols()), (4 * 7, 6 * 4));
        assert!(matches!(koszul_differential(&m, 1, 4), Err(KoszulError::OutOfWindow { .. })));
    }

    #[test]
    fn residue_field_rows() {
        for n in 1..=6usize {
            let ring = RingSpec::new(n, PrimeFieldConfig::default_for_level(1)).unwrap();
            let k = residue_field_module(&ring);
            let d = betti_diagram(&k, n, 2).unwrap();
            for p in 0..=n {
                assert_eq!(d.at(p, 0), binomial(n as i64, p as i64) as u64);
                assert_eq!(d.at(p, 1), 0);
                assert_eq!(d.at(p, 2), 0);
            }
            assert_eq!(hilbert_from_diagram(&d, 0).unwrap(), 1);
            assert_eq!(hilbert_from_diagram(&d, 1).unwrap(), 0);
        }
    }

    #[test]
    fn hilbert_and_diagonals() {
        let m = cubic();
        let d = betti_diagram(&m, 3, 2).unwrap();
        for deg in 0..=2 {
            assert_eq!(hilbert_from_diagram(&d, deg).unwrap(), m.dim(deg as i64) as i64);
        }
        assert_eq!(hilbert_from_diagram(&d, 3), Err(KoszulError::Uncomputed { p: 0, q: 3 }));
        assert_eq!(diagonal_sums(&[1, 4, 7, 10], 3, 3), vec![1, 0, -3, 2]);
        assert_eq!(diagonal_sums(&[1, 0, 0], 1, 2), vec![1, -2, 1]);
        assert_eq!(diagonal_sums(&[1, 4, 10, 20], 3, 3), vec![1, 0, 0, 0]);
        for k in 0..=2 {
            assert_eq!(d.diagonal_sum(k), Some(diagonal_sums(&[1, 4, 7, 10], 3, 3)[k]));
        }
    }

    #[test]
    fn text_table() {
        let d = betti_diagram(&cubic(), 2, 1).unwrap();
        assert_eq!(d.to_text(), "       0 1 2\ntotal: 1 3 2\n    0: 1 . .\n    1: . 3 2\n");
    }
}
