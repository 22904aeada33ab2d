//! Plane curves of degree `d` with `δ` nodes at random affine points.
//!
//! Forms are coefficient vectors over the degree-`d` monomials `x^a y^b z^c`
//! in descending lexicographic order of `(a, b, c)`; points are affine,
//! `(x, y, 1)`.

use super::poly;
use super::{stream, BundleKind, CurveError, LineBundleData, SectionModel};
use crate::exactla::{kernel_basis, FpMatrix};
use crate::field::{Fp, PrimeFieldConfig};
use crate::gring::monomial_count;
use rand::Rng;
use std::collections::HashSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodalPlaneCurve {
    field: PrimeFieldConfig,
    degree: usize,
    seed: u64,
    form: Vec<Fp>,
    nodes: Vec<(Fp, Fp)>,
}

/// Exponents `(a, b)` of `x^a y^b z^(d-a-b)`, in basis order.
fn exponents(d: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for a in (0..=d).rev() {
        for b in (0..=d - a).rev() {
            out.push((a, b));
        }
    }
    out
}

/// Values of a degree-`d` form at affine points.
pub(crate) fn eval_form(field: &PrimeFieldConfig, d: usize, form: &[Fp], pts: &[(Fp, Fp)]) -> Vec<Fp> {
    let ex = exponents(d);
    pts.iter()
        .map(|&(x, y)| {
            ex.iter().zip(form).fold(0, |acc, (&(a, b), &c)| {
                if c == 0 {
                    acc
                } else {
                    field.add(acc, field.mul(c, field.mul(field.pow(x, a as u64), field.pow(y, b as u64))))
                }
            })
        })
        .collect()
}

/// `∂^{i+j} f / ∂x^i ∂y^j` of the dehomogenized form, at `(x, y)`.
fn partial(field: &PrimeFieldConfig, d: usize, form: &[Fp], i: usize, j: usize, x: Fp, y: Fp) -> Fp {
    let falling = |n: usize, k: usize| -> u64 { (0..k).map(|t| (n - t) as u64).product() };
    exponents(d).iter().zip(form).fold(0, |acc, (&(a, b), &c)| {
        if c == 0 || a < i || b < j {
            return acc;
        }
        let coef = field.mul(c, field.reduce(falling(a, i) * falling(b, j)));
        let mono = field.mul(field.pow(x, (a - i) as u64), field.pow(y, (b - j) as u64));
        field.add(acc, field.mul(coef, mono))
    })
}

/// Random form of degree `d` singular at `delta` random affine points, each
/// certified as an ordinary double point by its Hessian.
pub fn plane_curve_with_nodes(
    field: &PrimeFieldConfig,
    d: usize,
    delta: usize,
    seed: u64,
) -> Result<NodalPlaneCurve, CurveError> {
    let nmono = monomial_count(3, d);
    if d < 3 || 3 * delta >= nmono || 2 * delta > (d - 1) * (d - 2) {
        return Err(CurveError::InvalidParameter(format!("no nodal plane curve of degree {d} with {delta} nodes")));
    }
    let mut rng = stream(seed, 0);
    let p = field.prime();
    let mut seen = HashSet::new();
    let mut nodes = Vec::with_capacity(delta);
    while nodes.len() < delta {
        let pt = (rng.gen_range(0..p), rng.gen_range(0..p));
        if seen.insert(pt) {
            nodes.push(pt);
        }
    }
    let ex = exponents(d);
    let mut rows = Vec::with_capacity(3 * delta);
    for &(x, y) in &nodes {
        let mono = |a: usize, b: usize| field.mul(field.pow(x, a as u64), field.pow(y, b as u64));
        rows.push(ex.iter().map(|&(a, b)| mono(a, b)).collect());
        rows.push(ex.iter().map(|&(a, b)| if a == 0 { 0 } else { field.mul(a as Fp, mono(a - 1, b)) }).collect());
        rows.push(ex.iter().map(|&(a, b)| if b == 0 { 0 } else { field.mul(b as Fp, mono(a, b - 1)) }).collect());
    }
    let kernel = kernel_basis(&FpMatrix::from_dense(field, nmono, &rows));
    if kernel.len() != nmono - 3 * delta {
        return Err(CurveError::Degenerate(format!("node conditions have rank {}", nmono - kernel.len())));
    }
    let mut form = vec![0; nmono];
    let mut crng = stream(seed, 2);
    for v in &kernel {
        let c = crng.gen_range(1..p);
        for (x, &y) in form.iter_mut().zip(v) {
            *x = field.add(*x, field.mul(c, y));
        }
    }
    let curve = NodalPlaneCurve { field: field.clone(), degree: d, seed, form, nodes };
    curve.certify_nodes()?;
    Ok(curve)
}

impl NodalPlaneCurve {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn form(&self) -> &[Fp] {
        &self.form
    }

    pub fn nodes(&self) -> &[(Fp, Fp)] {
        &self.nodes
    }

    /// Geometric genus `(d-1)(d-2)/2 - δ`.
    pub fn genus(&self) -> usize {
        (self.degree - 1) * (self.degree - 2) / 2 - self.nodes.len()
    }

    fn partial_at(&self, i: usize, j: usize, (x, y): (Fp, Fp)) -> Fp {
        partial(&self.field, self.degree, &self.form, i, j, x, y)
    }

    /// `F`, `F_x`, `F_y` vanish at each node and the Hessian `F_xx F_yy - F_xy^2` does not.
    pub fn certify_nodes(&self) -> Result<(), CurveError> {
        let f = &self.field;
        for &pt in &self.nodes {
            if self.partial_at(0, 0, pt) != 0 || self.partial_at(1, 0, pt) != 0 || self.partial_at(0, 1, pt) != 0 {
                return Err(CurveError::NodeCertification(format!("{pt:?} is not a singular point")));
            }
            let hess = f.sub(
                f.mul(self.partial_at(2, 0, pt), self.partial_at(0, 2, pt)),
                f.mul(self.partial_at(1, 1, pt), self.partial_at(1, 1, pt)),
            );
            if hess == 0 {
                return Err(CurveError::NodeCertification(format!("{pt:?} is worse than a node")));
            }
        }
        Ok(())
    }

    /// `F(x, y, 1)` as a polynomial in `y` for fixed `x`.
    fn restrict_to_line(&self, x: Fp) -> Vec<Fp> {
        let f = &self.field;
        let mut out = vec![0; self.degree + 1];
        for (&(a, b), &c) in exponents(self.degree).iter().zip(&self.form) {
            out[b] = f.add(out[b], f.mul(c, f.pow(x, a as u64)));
        }
        poly::trim(out)
    }

    /// `n` distinct smooth affine points, found by scanning the lines `x = x_0, x_0 + 1, ...`
    /// from a seeded start. Nodes and singular points are skipped.
    pub fn sample_points(&self, n: usize) -> Result<Vec<(Fp, Fp)>, CurveError> {
        let f = &self.field;
        let p = f.prime();
        let nodes: HashSet<(Fp, Fp)> = self.nodes.iter().copied().collect();
        let x0 = stream(self.seed, 1).gen_range(0..p);
        let mut out = Vec::with_capacity(n);
        for k in 0..p {
            if out.len() == n {
                break;
            }
            let x = f.add(x0, k);
            let line = self.restrict_to_line(x);
            if poly::degree(&line).unwrap_or(0) == 0 {
                continue;
            }
            for y in poly::roots(f, &line) {
                let pt = (x, y);
                if nodes.contains(&pt) {
                    continue;
                }
                if self.partial_at(1, 0, pt) == 0 && self.partial_at(0, 1, pt) == 0 {
                    continue;
                }
                out.push(pt);
                if out.len() == n {
                    break;
                }
            }
        }
        if out.len() < n {
            return Err(CurveError::InsufficientPoints { wanted: n, found: out.len() });
        }
        Ok(out)
    }
}

/// Forms of degree `d - 3` through the nodes: the canonical system, `h^0 = g`.
pub fn adjoint_canonical_sections(curve: &NodalPlaneCurve) -> Result<LineBundleData, CurveError> {
    let f = &curve.field;
    let d = curve.degree;
    let e = d - 3;
    let g = curve.genus();
    let nmono = monomial_count(3, e);
    let ex = exponents(e);
    let rows: Vec<Vec<Fp>> = curve
        .nodes
        .iter()
        .map(|&(x, y)| ex.iter().map(|&(a, b)| f.mul(f.pow(x, a as u64), f.pow(y, b as u64))).collect())
        .collect();
    let forms = kernel_basis(&FpMatrix::from_dense(f, nmono, &rows));
    if forms.len() != g {
        return Err(CurveError::Degenerate(format!("{} adjoint forms instead of {g}", forms.len())));
    }
    Ok(LineBundleData {
        kind: BundleKind::Canonical,
        degree: 2 * g.max(1) - 2,
        genus: g,
        field: f.clone(),
        model: SectionModel::Plane { curve: curve.clone(), form_degree: e, forms },
    })
}
