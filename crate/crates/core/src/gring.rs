//! Graded polynomial rings `S = F_p[x_0..x_r]` and graded `S`-modules given by
//! explicit coordinate spaces and multiplication-by-variable matrices.
//!
//! Monomials of each degree are listed in descending lexicographic order of
//! their exponent tuples. Quotients `(S/I)_q` use the standard monomials of
//! `I_q`: the columns that are not pivots once a spanning set of `I_q` is put
//! in reduced echelon form with the largest monomial first.

use crate::exactla::{rref, FpMatrix};
use crate::field::{Fp, PrimeFieldConfig};
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("a polynomial ring needs at least one variable")]
    NoVariables,
    #[error("negative degree {0}")]
    NegativeDegree(i64),
    #[error("generator {index} has {got} coefficients, expected {expected} for degree {degree}")]
    GeneratorLength {
        index: usize,
        degree: usize,
        expected: usize,
        got: usize,
    },
    #[error("generator {0} is zero")]
    ZeroGenerator(usize),
    #[error("exponent vector {0:?} does not match the ring")]
    BadMonomial(Vec<u32>),
    #[error("max_degree must be at least {min}, got {got}")]
    DegreeWindow { min: usize, got: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingSpec {
    num_vars: usize,
    field: PrimeFieldConfig,
}

impl RingSpec {
    pub fn new(num_vars: usize, field: PrimeFieldConfig) -> Result<Self, RingError> {
        if num_vars == 0 {
            return Err(RingError::NoVariables);
        }
        Ok(RingSpec { num_vars, field })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    /// `r` in `S = F_p[x_0..x_r]`.
    pub fn r(&self) -> usize {
        self.num_vars - 1
    }

    pub fn field(&self) -> &PrimeFieldConfig {
        &self.field
    }
}

pub fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < k || n < 0 {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i128 / (i + 1) as i128;
    }
    acc as i64
}

pub fn monomial_count(num_vars: usize, d: usize) -> usize {
    binomial((d + num_vars - 1) as i64, (num_vars - 1) as i64) as usize
}

/// Exponent tuples of degree `d`, descending lexicographic order.
pub fn monomial_basis(ring: &RingSpec, d: i64) -> Result<Vec<Vec<u32>>, RingError> {
    if d < 0 {
        return Err(RingError::NegativeDegree(d));
    }
    Ok(monomials(ring.num_vars, d as u32))
}

fn monomials(n: usize, d: u32) -> Vec<Vec<u32>> {
    fn go(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == n - 1 {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            go(n, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, d, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Monomial bases for degrees `0..=max_degree` with index lookup and the
/// multiplication-by-variable table.
#[derive(Clone, Debug)]
pub struct MonomialTable {
    num_vars: usize,
    bases: Vec<Vec<Vec<u32>>>,
    lookup: Vec<HashMap<Vec<u32>, usize>>,
}

impl MonomialTable {
    pub fn new(num_vars: usize, max_degree: usize) -> Self {
        let bases: Vec<_> = (0..=max_degree).map(|d| monomials(num_vars, d as u32)).collect();
        let lookup = bases
            .iter()
            .map(|b| b.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect())
            .collect();
        MonomialTable { num_vars, bases, lookup }
    }

    pub fn max_degree(&self) -> usize {
        self.bases.len() - 1
    }

    pub fn basis(&self, d: usize) -> &[Vec<u32>] {
        &self.bases[d]
    }

    pub fn index(&self, m: &[u32]) -> Option<usize> {
        let d: u32 = m.iter().sum();
        self.lookup.get(d as usize)?.get(m).copied()
    }

    /// Index of `x_var * m` in degree `d + 1`, where `m` is monomial `idx` of degree `d`.
    pub fn times_var(&self, d: usize, idx: usize, var: usize) -> usize {
        let mut m = self.bases[d][idx].clone();
        m[var] += 1;
        self.lookup[d + 1][&m]
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }
}

/// Homogeneous ideal given by generators `(degree, coefficients)` over the
/// monomial basis of that degree.
#[derive(Clone, Debug)]
pub struct HomogeneousIdeal {
    ring: RingSpec,
    generators: Vec<(usize, Vec<Fp>)>,
}

impl HomogeneousIdeal {
    pub fn new(ring: RingSpec, generators: Vec<(usize, Vec<Fp>)>) -> Result<Self, RingError> {
        let p = ring.field.prime();
        let mut gens = Vec::with_capacity(generators.len());
        for (i, (deg, coeffs)) in generators.into_iter().enumerate() {
            let expected = monomial_count(ring.num_vars, deg);
            if coeffs.len() != expected {
                return Err(RingError::GeneratorLength {
                    index: i,
                    degree: deg,
                    expected,
                    got: coeffs.len(),
                });
            }
            let coeffs: Vec<Fp> = coeffs.into_iter().map(|c| c % p).collect();
            if coeffs.iter().all(|&c| c == 0) {
                return Err(RingError::ZeroGenerator(i));
            }
            gens.push((deg, coeffs));
        }
        Ok(HomogeneousIdeal { ring, generators: gens })
    }

    /// Builds generators from `(coefficient, exponents)` terms.
    pub fn from_terms(ring: RingSpec, polys: &[Vec<(i64, Vec<u32>)>]) -> Result<Self, RingError> {
        let mut gens = Vec::new();
        for poly in polys {
            let deg = poly.first().map_or(0, |(_, e)| e.iter().sum::<u32>()) as usize;
            let basis = monomials(ring.num_vars, deg as u32);
            let mut v = vec![0; basis.len()];
            for (c, e) in poly {
                if e.len() != ring.num_vars || e.iter().sum::<u32>() as usize != deg {
                    return Err(RingError::BadMonomial(e.clone()));
                }
                let k = basis.iter().position(|m| m == e).expect("monomial of the right degree");
                v[k] = ring.field.add(v[k], ring.field.from_i64(*c));
            }
            gens.push((deg, v));
        }
        Self::new(ring, gens)
    }

    pub fn zero(ring: RingSpec) -> Self {
        HomogeneousIdeal { ring, generators: Vec::new() }
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn generators(&self) -> &[(usize, Vec<Fp>)] {
        &self.generators
    }

    /// Variables `x_i -> sigma(i)`; used to check basis independence.
    pub fn permute_variables(&self, sigma: &[usize]) -> Self {
        let n = self.ring.num_vars;
        assert_eq!(sigma.len(), n);
        let generators = self
            .generators
            .iter()
            .map(|(deg, coeffs)| {
                let basis = monomials(n, *deg as u32);
                let index: HashMap<&Vec<u32>, usize> =
                    basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
                let mut out = vec![0; coeffs.len()];
                for (m, &c) in basis.iter().zip(coeffs) {
                    let mut pm = vec![0u32; n];
                    for (i, &e) in m.iter().enumerate() {
                        pm[sigma[i]] = e;
                    }
                    out[index[&pm]] = c;
                }
                (*deg, out)
            })
            .collect();
        HomogeneousIdeal { ring: self.ring.clone(), generators }
    }
}

/// Spanning matrix of `I_d`: rows are the degree-`d` monomials, columns the
/// products `m * f` for each generator `f` (in order) and each monomial `m` of
/// complementary degree.
pub fn ideal_piece(ideal: &HomogeneousIdeal, d: usize) -> FpMatrix {
    let table = MonomialTable::new(ideal.ring.num_vars, d);
    ideal_piece_with(ideal, d, &table)
}

fn ideal_piece_with(ideal: &HomogeneousIdeal, d: usize, table: &MonomialTable) -> FpMatrix {
    let n = ideal.ring.num_vars;
    let mut entries = Vec::new();
    let mut col = 0;
    for (deg, coeffs) in &ideal.generators {
        if *deg > d {
            continue;
        }
        let gen_basis = table.basis(*deg);
        for m in table.basis(d - deg) {
            for (g, &c) in gen_basis.iter().zip(coeffs) {
                if c == 0 {
                    continue;
                }
                let prod: Vec<u32> = (0..n).map(|i| g[i] + m[i]).collect();
                entries.push((table.index(&prod).expect("product has degree d"), col, c as u64));
            }
            col += 1;
        }
    }
    FpMatrix::from_triplets(ideal.ring.field(), table.basis(d).len(), col, entries)
        .expect("indices come from the table")
}

/// Normal forms in one degree: which monomials are standard, and every
/// monomial's coordinates in the standard basis (sparse).
#[derive(Clone, Debug)]
pub(crate) struct NormalForms {
    pub standard: Vec<usize>,
    pub forms: Vec<Vec<(u32, Fp)>>,
}

impl NormalForms {
    /// From a reduced echelon basis of `I_d` whose columns follow the monomial basis order.
    pub fn from_ideal_rref(field: &PrimeFieldConfig, n_monomials: usize, rows: &[Vec<Fp>], pivots: &[usize]) -> Self {
        let mut pivot_row = vec![usize::MAX; n_monomials];
        for (i, &c) in pivots.iter().enumerate() {
            pivot_row[c] = i;
        }
        let standard: Vec<usize> = (0..n_monomials).filter(|&c| pivot_row[c] == usize::MAX).collect();
        let mut std_pos = vec![u32::MAX; n_monomials];
        for (k, &c) in standard.iter().enumerate() {
            std_pos[c] = k as u32;
        }
        let forms = (0..n_monomials)
            .map(|c| {
                if pivot_row[c] == usize::MAX {
                    vec![(std_pos[c], 1)]
                } else {
                    let row = &rows[pivot_row[c]];
                    standard
                        .iter()
                        .enumerate()
                        .filter(|(_, &s)| row[s] != 0)
                        .map(|(k, &s)| (k as u32, field.neg(row[s])))
                        .collect()
                }
            })
            .collect();
        NormalForms { standard, forms }
    }

    /// From images of the monomials in some coordinate space (one column per
    /// monomial, basis order). Standard monomials are chosen greedily from the
    /// smallest monomial upwards.
    pub fn from_images(field: &PrimeFieldConfig, columns: &[Vec<Fp>]) -> Self {
        let nm = columns.len();
        let dim = columns.first().map_or(0, |c| c.len());
        // rows of the image matrix with columns in ascending monomial order
        let rows: Vec<Vec<Fp>> = (0..dim)
            .map(|r| (0..nm).map(|j| columns[nm - 1 - j][r]).collect())
            .collect();
        let red = rref(field, rows, nm);
        let mut standard: Vec<usize> = red.pivots.iter().map(|&j| nm - 1 - j).collect();
        // pivot i of the echelon form <-> position in `standard` after sorting
        let mut order: Vec<usize> = (0..standard.len()).collect();
        order.sort_by_key(|&i| standard[i]);
        let mut rank_of = vec![0u32; standard.len()];
        for (k, &i) in order.iter().enumerate() {
            rank_of[i] = k as u32;
        }
        standard.sort_unstable();
        let forms = (0..nm)
            .map(|m| {
                let j = nm - 1 - m;
                let mut f: Vec<(u32, Fp)> = red
                    .rows
                    .iter()
                    .enumerate()
                    .filter(|(_, row)| row[j] != 0)
                    .map(|(i, row)| (rank_of[i], row[j]))
                    .collect();
                f.sort_unstable();
                f
            })
            .collect();
        NormalForms { standard, forms }
    }
}

/// A finitely generated graded module truncated to the degrees
/// `min_degree..=max_degree`, stored as coordinate spaces and the maps
/// `x_i : M_q -> M_{q+1}`.
#[derive(Clone, Debug)]
pub struct GradedModule {
    ring: RingSpec,
    min_degree: i64,
    dims: Vec<usize>,
    /// `mult[q - min_degree][i]`, size `dim M_{q+1} x dim M_q`
    mult: Vec<Vec<FpMatrix>>,
    /// The module is known to vanish above `max_degree` (finite length).
    vanishes_above: bool,
}

impl GradedModule {
    pub fn new(
        ring: RingSpec,
        min_degree: i64,
        dims: Vec<usize>,
        mult: Vec<Vec<FpMatrix>>,
        vanishes_above: bool,
    ) -> Self {
        assert!(!dims.is_empty());
        assert_eq!(mult.len(), dims.len() - 1);
        for (k, ms) in mult.iter().enumerate() {
            assert_eq!(ms.len(), ring.num_vars);
            for m in ms {
                assert_eq!((m.rows(), m.cols()), (dims[k + 1], dims[k]));
            }
        }
        GradedModule { ring, min_degree, dims, mult, vanishes_above }
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn min_degree(&self) -> i64 {
        self.min_degree
    }

    pub fn max_degree(&self) -> i64 {
        self.min_degree + self.dims.len() as i64 - 1
    }

    pub fn vanishes_above(&self) -> bool {
        self.vanishes_above
    }

    /// Whether `M_q` is known (inside the window, or known to vanish).
    pub fn covers(&self, q: i64) -> bool {
        q <= self.max_degree() || self.vanishes_above
    }

    /// `dim M_q`; zero below the window and above it when the module vanishes there.
    pub fn dim(&self, q: i64) -> usize {
        if q < self.min_degree || q > self.max_degree() {
            0
        } else {
            self.dims[(q - self.min_degree) as usize]
        }
    }

    pub fn piece_dims(&self) -> Vec<(i64, usize)> {
        (self.min_degree..=self.max_degree()).map(|q| (q, self.dim(q))).collect()
    }

    /// Matrix of `x_var : M_q -> M_{q+1}`, or `None` when either side is outside the window.
    pub fn mult(&self, var: usize, q: i64) -> Option<&FpMatrix> {
        if q < self.min_degree || q >= self.max_degree() {
            return None;
        }
        Some(&self.mult[(q - self.min_degree) as usize][var])
    }

    /// Checks `x_j x_i = x_i x_j` on every piece; returns the first failure `(i, j, q)`.
    pub fn check_commutation(&self) -> Result<(), (usize, usize, i64)> {
        let n = self.ring.num_vars;
        for q in self.min_degree..self.max_degree() - 1 {
            for i in 0..n {
                for j in i + 1..n {
                    let a = self.mult(j, q + 1).unwrap().mul(self.mult(i, q).unwrap());
                    let b = self.mult(i, q + 1).unwrap().mul(self.mult(j, q).unwrap());
                    if a.ok() != b.ok() {
                        return Err((i, j, q));
                    }
                }
            }
        }
        Ok(())
    }

    /// Module whose pieces are spanned by standard monomials, with the
    /// multiplication read off the normal forms of the next degree.
    pub(crate) fn from_normal_forms(ring: RingSpec, table: &MonomialTable, nfs: &[NormalForms]) -> Self {
        let n = ring.num_vars;
        let dims: Vec<usize> = nfs.iter().map(|nf| nf.standard.len()).collect();
        let mut mult = Vec::with_capacity(nfs.len().saturating_sub(1));
        for q in 0..nfs.len() - 1 {
            let per_var = (0..n)
                .map(|var| {
                    let entries = nfs[q].standard.iter().enumerate().flat_map(|(col, &m)| {
                        let target = table.times_var(q, m, var);
                        nfs[q + 1].forms[target]
                            .iter()
                            .map(move |&(row, v)| (row as usize, col, v as u64))
                    });
                    FpMatrix::from_triplets(ring.field(), dims[q + 1], dims[q], entries)
                        .expect("normal form coordinates are in range")
                })
                .collect();
            mult.push(per_var);
        }
        GradedModule::new(ring, 0, dims, mult, false)
    }
}

/// `S/I` in degrees `0..=max_degree`.
pub fn quotient_module(ideal: &HomogeneousIdeal, max_degree: usize) -> Result<GradedModule, RingError> {
    if max_degree < 1 {
        return Err(RingError::DegreeWindow { min: 1, got: max_degree });
    }
    let ring = ideal.ring.clone();
    let field = ring.field().clone();
    let table = MonomialTable::new(ring.num_vars, max_degree);
    let nfs: Vec<NormalForms> = (0..=max_degree)
        .map(|d| {
            let piece = ideal_piece_with(ideal, d, &table);
            // spanning vectors as rows
            let rows = piece.transpose().to_dense();
            let red = rref(&field, rows, piece.rows());
            NormalForms::from_ideal_rref(&field, piece.rows(), &red.rows, &red.pivots)
        })
        .collect();
    Ok(GradedModule::from_normal_forms(ring, &table, &nfs))
}

/// The residue field `S/(x_0..x_r)`: one-dimensional in degree 0.
pub fn residue_field_module(ring: &RingSpec) -> GradedModule {
    GradedModule::new(ring.clone(), 0, vec![1], Vec::new(), true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field() -> PrimeFieldConfig {
        PrimeFieldConfig::default_for_level(1)
    }

    pub(crate) fn twisted_cubic_ideal() -> HomogeneousIdeal {
        let ring = RingSpec::new(4, field()).unwrap();
        HomogeneousIdeal::from_terms(
            ring,
            &[
                vec![(1, vec![1, 0, 1, 0]), (-1, vec![0, 2, 0, 0])],
                vec![(1, vec![1, 0, 0, 1]), (-1, vec![0, 1, 1, 0])],
                vec![(1, vec![0, 1, 0, 1]), (-1, vec![0, 0, 2, 0])],
            ],
        )
        .unwrap()
    }

    #[test]
    fn monomial_basis_examples() {
        let r1 = RingSpec::new(2, field()).unwrap();
        assert_eq!(monomial_basis(&r1, 2).unwrap(), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        let r3 = RingSpec::new(4, field()).unwrap();
        assert_eq!(monomial_basis(&r3, 2).unwrap().len(), 10);
        assert_eq!(monomial_basis(&r3, 3).unwrap().len(), 20);
        assert_eq!(monomial_basis(&r3, -1), Err(RingError::NegativeDegree(-1)));
        let b = monomial_basis(&r3, 3).unwrap();
        assert!(b.windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn twisted_cubic_ideal_pieces() {
        let ideal = twisted_cubic_ideal();
        assert_eq!(crate::exactla::rank(&ideal_piece(&ideal, 2)), 3);
        assert_eq!(crate::exactla::rank(&ideal_piece(&ideal, 3)), 10);
        assert_eq!(crate::exactla::rank(&ideal_piece(&ideal, 1)), 0);
    }

    #[test]
    fn twisted_cubic_quotient_dims() {
        let m = quotient_module(&twisted_cubic_ideal(), 4).unwrap();
        let dims: Vec<usize> = (0..=4).map(|q| m.dim(q)).collect();
        assert_eq!(dims, vec![1, 4, 7, 10, 13]);
        assert!(m.check_commutation().is_ok());
        for d in 0..=4usize {
            let i_d = crate::exactla::rank(&ideal_piece(&twisted_cubic_ideal(), d));
            assert_eq!(m.dim(d as i64) + i_d, monomial_count(4, d));
        }
    }

    #[test]
    fn free_and_residue_quotients() {
        let ring = RingSpec::new(3, field()).unwrap();
        let free = quotient_module(&HomogeneousIdeal::zero(ring.clone()), 4).unwrap();
        for d in 0..=4 {
            assert_eq!(free.dim(d), binomial(d + 2, 2) as usize);
        }
        assert!(free.check_commutation().is_ok());
        let vars: Vec<Vec<(i64, Vec<u32>)>> = (0..3)
            .map(|i| {
                let mut e = vec![0; 3];
                e[i] = 1;
                vec![(1, e)]
            })
            .collect();
        let maximal = HomogeneousIdeal::from_terms(ring.clone(), &vars).unwrap();
        let k = quotient_module(&maximal, 3).unwrap();
        assert_eq!((0..=3).map(|d| k.dim(d)).collect::<Vec<_>>(), vec![1, 0, 0, 0]);
        let res = residue_field_module(&ring);
        assert_eq!(res.dim(0), 1);
        assert_eq!(res.dim(1), 0);
        assert!(res.covers(10));
    }

    #[test]
    fn rejects_bad_generators() {
        let ring = RingSpec::new(2, field()).unwrap();
        assert!(matches!(
            HomogeneousIdeal::new(ring.clone(), vec![(2, vec![1, 0])]),
            Err(RingError::GeneratorLength { .. })
        ));
        assert_eq!(
            HomogeneousIdeal::new(ring, vec![(1, vec![0, 0])]).unwrap_err(),
            RingError::ZeroGenerator(0)
        );
        assert_eq!(RingSpec::new(0, field()).unwrap_err(), RingError::NoVariables);
    }

    #[test]
    fn images_pick_smallest_standard_monomials() {
        // t -> (1, t, t^2): the conic x0 x2 = x1^2. In degree 2 the largest
        // monomial with a relation, x0x2, is the non-standard one.
        let f = field();
        let pts: Vec<Fp> = (1..=8).collect();
        let table = MonomialTable::new(3, 2);
        let cols: Vec<Vec<Fp>> = table
            .basis(2)
            .iter()
            .map(|m| pts.iter().map(|&t| f.pow(t, (m[1] + 2 * m[2]) as u64)).collect())
            .collect();
        let nf = NormalForms::from_images(&f, &cols);
        // basis order: x0^2, x0x1, x0x2, x1^2, x1x2, x2^2
        assert_eq!(nf.standard, vec![0, 1, 3, 4, 5]);
        assert_eq!(nf.forms[2], vec![(2, 1)]);
    }
}
