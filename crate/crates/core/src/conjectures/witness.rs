//! The explicit Green–Lazarsfeld syzygy of a split bundle `L = L_1 ⊗ L_2`.
//!
//! With bases `σ_0..σ_{r_1}` of `H^0(L_1)` and `τ_0..τ_{r_2}` of `H^0(L_2)`,
//!
//! ```text
//! γ = Σ_{i=0..r_1} Σ_{j=1..r_2} (-1)^{i+j}
//!       (τ_0σ_0 ∧ .. ^(τ_0σ_i) .. ∧ τ_0σ_{r_1}) ∧ (σ_0τ_1 ∧ .. ^(σ_0τ_j) .. ∧ σ_0τ_{r_2}) ⊗ σ_iτ_j
//! ```
//!
//! lies in `∧^p H^0(L) ⊗ H^0(L)` with `p = r_1 + r_2 - 1` and represents a
//! nonzero class in `K_{p,1}`.

use super::ConjectureError;
use crate::curves::CoordinateRing;
use crate::exactla::{rank, solve_membership, FpMatrix};
use crate::field::{Fp, PrimeFieldConfig};
use crate::koszul::{koszul_differential, mask_elements, WedgeBasis};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// A certified element of `K_{p,1}`: a cocycle that is not a coboundary.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessSyzygy {
    pub p: usize,
    pub r1: usize,
    pub r2: usize,
    /// Coordinates in `∧^p V ⊗ M_1`, index `idx(J) * dim M_1 + k`.
    pub gamma: Vec<Fp>,
    pub cocycle: bool,
    pub coboundary: bool,
}

impl WitnessSyzygy {
    pub fn certified(&self) -> bool {
        self.cocycle && !self.coboundary
    }
}

fn det(field: &PrimeFieldConfig, mut a: Vec<Vec<Fp>>) -> Fp {
    let n = a.len();
    let mut d: Fp = 1;
    for c in 0..n {
        let Some(piv) = (c..n).find(|&r| a[r][c] != 0) else {
            return 0;
        };
        if piv != c {
            a.swap(piv, c);
            d = field.neg(d);
        }
        d = field.mul(d, a[c][c]);
        let inv = field.inv(a[c][c]);
        for r in c + 1..n {
            if a[r][c] == 0 {
                continue;
            }
            let f = field.mul(a[r][c], inv);
            for k in c..n {
                let v = field.mul(f, a[c][k]);
                a[r][k] = field.sub(a[r][k], v);
            }
        }
    }
    d
}

fn pointwise(field: &PrimeFieldConfig, a: &[Fp], b: &[Fp]) -> Vec<Fp> {
    a.iter().zip(b).map(|(&x, &y)| field.mul(x, y)).collect()
}

/// Builds `γ` from section values at the sample points of `ring` and
/// certifies it against the strand `d_{p+1,0}`, `d_{p,1}`.
pub fn gl_witness(
    ring: &CoordinateRing,
    basis1: &[Vec<Fp>],
    basis2: &[Vec<Fp>],
) -> Result<WitnessSyzygy, ConjectureError> {
    if basis1.len() < 2 || basis2.len() < 2 {
        return Err(ConjectureError::Unsupported(format!(
            "both bundles need h0 >= 2 (got {} and {})",
            basis1.len(),
            basis2.len()
        )));
    }
    let m = &ring.module;
    let field = m.ring().field().clone();
    let n = m.ring().num_vars();
    let dim1 = m.dim(1);
    let (r1, r2) = (basis1.len() - 1, basis2.len() - 1);
    let p = r1 + r2 - 1;
    let coords = |v: Vec<Fp>| {
        ring.coordinates(1, &v).ok_or_else(|| {
            ConjectureError::Unsupported("a product of sections is not in the span of H^0(L)".into())
        })
    };
    let u: Vec<Vec<Fp>> =
        (0..=r1).map(|i| coords(pointwise(&field, &basis2[0], &basis1[i]))).collect::<Result<_, _>>()?;
    let w: Vec<Vec<Fp>> =
        (1..=r2).map(|j| coords(pointwise(&field, &basis1[0], &basis2[j]))).collect::<Result<_, _>>()?;

    let wedge = WedgeBasis::new(n, p);
    let mut gamma = vec![0; wedge.len() * dim1];
    for i in 0..=r1 {
        for j in 1..=r2 {
            let vectors: Vec<&Vec<Fp>> = u
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != i)
                .map(|(_, v)| v)
                .chain(w.iter().enumerate().filter(|&(k, _)| k + 1 != j).map(|(_, v)| v))
                .collect();
            let tail = coords(pointwise(&field, &basis1[i], &basis2[j]))?;
            let sign = if (i + j) % 2 == 0 { 1 } else { field.neg(1) };
            for (ji, &mask) in wedge.subsets.iter().enumerate() {
                let rows = mask_elements(mask);
                let minor: Vec<Vec<Fp>> = rows.iter().map(|&r| vectors.iter().map(|v| v[r]).collect()).collect();
                let c = field.mul(sign, det(&field, minor));
                if c == 0 {
                    continue;
                }
                for (k, &t) in tail.iter().enumerate() {
                    let idx = ji * dim1 + k;
                    gamma[idx] = field.add(gamma[idx], field.mul(c, t));
                }
            }
        }
    }

    let d_out = koszul_differential(m, p, 1)?;
    let cocycle = d_out.mul_vec(&gamma).expect("γ has the strand's length").iter().all(|&x| x == 0);
    if !cocycle {
        return Err(ConjectureError::WitnessNotCocycle { p });
    }
    let d_in = koszul_differential(m, p + 1, 0)?;
    let coboundary = solve_membership(&d_in, &gamma).expect("γ has the strand's length").is_some();
    if coboundary {
        return Err(ConjectureError::WitnessCoboundary { p });
    }
    Ok(WitnessSyzygy { p, r1, r2, gamma, cocycle, coboundary })
}

/// Replaces the first section by a random combination with nonzero leading
/// coefficient, so that the products in `γ` are in general position.
pub fn generic_first_section(field: &PrimeFieldConfig, basis: &[Vec<Fp>], seed: u64) -> Vec<Vec<Fp>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = field.prime();
    let coeffs: Vec<Fp> = (0..basis.len()).map(|k| rng.gen_range(if k == 0 { 1 } else { 0 }..p)).collect();
    let mut first = vec![0; basis[0].len()];
    for (c, v) in coeffs.iter().zip(basis) {
        for (x, &y) in first.iter_mut().zip(v) {
            *x = field.add(*x, field.mul(*c, y));
        }
    }
    let mut out = basis.to_vec();
    out[0] = first;
    out
}

/// For a witness in `V ⊗ M_1` (`p = 1`) on a linearly normal embedding, the
/// symmetric matrix of the quadric it defines, and its rank.
pub fn witness_quadric(w: &WitnessSyzygy, ring: &CoordinateRing) -> Option<(Vec<Vec<Fp>>, usize)> {
    let n = ring.module.ring().num_vars();
    if w.p != 1 || ring.module.dim(1) != n {
        return None;
    }
    let field = ring.module.ring().field();
    let s: Vec<Vec<Fp>> = (0..n)
        .map(|a| (0..n).map(|k| field.add(w.gamma[a * n + k], w.gamma[k * n + a])).collect())
        .collect();
    let rk = rank(&FpMatrix::from_dense(field, n, &s));
    Some((s, rk))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_matches_expansion() {
        let f = PrimeFieldConfig::new(101, 1).unwrap();
        assert_eq!(det(&f, vec![vec![1, 2], vec![3, 4]]), f.from_i64(-2));
        assert_eq!(det(&f, vec![vec![0, 1], vec![1, 0]]), f.from_i64(-1));
        assert_eq!(det(&f, vec![vec![2, 4], vec![1, 2]]), 0);
        assert_eq!(det(&f, vec![]), 1);
    }
}
