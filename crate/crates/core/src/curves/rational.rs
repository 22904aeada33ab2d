//! Rational `g`-nodal curves: `P^1` with `g` pairs of affine points glued.
//!
//! Sections of a line bundle are polynomials in the affine parameter `t`
//! whose values at each node pair satisfy a gluing condition. For the
//! dualizing sheaf they are differentials `f(t) dt / Π(t)` with
//! `Π = Π_i (t - a_i)(t - b_i)` and `deg f <= 2g - 2`, glued by
//! `c_i Res_{a_i} + Res_{b_i} = 0`; `c_i = 1` gives `ω_C`, a nontrivial
//! choice of roots of unity gives `ω_C ⊗ η`.

use super::{stream, BundleKind, CurveError, LineBundleData, SectionModel};
use crate::exactla::{kernel_basis, FpMatrix};
use crate::field::{Fp, PrimeFieldConfig};
use rand::Rng;
use std::collections::HashSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodalRationalCurve {
    field: PrimeFieldConfig,
    genus: usize,
    seed: u64,
    nodes: Vec<(Fp, Fp)>,
}

/// `g` random node pairs of pairwise distinct affine points, deterministic in `seed`.
pub fn rational_nodal_curve(field: &PrimeFieldConfig, g: usize, seed: u64) -> Result<NodalRationalCurve, CurveError> {
    let p = field.prime();
    if (p as usize) < 4 * g + 8 {
        return Err(CurveError::FieldTooSmall { p, needed: 4 * g + 8 });
    }
    let mut rng = stream(seed, 0);
    let mut seen = HashSet::new();
    let mut pts = Vec::with_capacity(2 * g);
    while pts.len() < 2 * g {
        let x = rng.gen_range(0..p);
        if seen.insert(x) {
            pts.push(x);
        }
    }
    let nodes = pts.chunks(2).map(|c| (c[0], c[1])).collect();
    Ok(NodalRationalCurve { field: field.clone(), genus: g, seed, nodes })
}

impl NodalRationalCurve {
    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn field(&self) -> &PrimeFieldConfig {
        &self.field
    }

    pub fn nodes(&self) -> &[(Fp, Fp)] {
        &self.nodes
    }

    fn node_points(&self) -> Vec<Fp> {
        self.nodes.iter().flat_map(|&(a, b)| [a, b]).collect()
    }

    /// `n` distinct affine parameters avoiding the nodes, from their own stream.
    pub fn sample_points(&self, n: usize) -> Result<Vec<Fp>, CurveError> {
        let p = self.field.prime();
        let needed = n + 2 * self.genus;
        if (p as usize) < 2 * needed {
            return Err(CurveError::FieldTooSmall { p, needed });
        }
        let mut rng = stream(self.seed, 1);
        let mut seen: HashSet<Fp> = self.node_points().into_iter().collect();
        let mut out = Vec::with_capacity(n);
        while out.len() < n {
            let t = rng.gen_range(0..p);
            if seen.insert(t) {
                out.push(t);
            }
        }
        Ok(out)
    }

    /// `Π'(x)` for a node point `x`: the product of `x - y` over the other node points.
    fn pi_prime(&self, x: Fp) -> Fp {
        let f = &self.field;
        self.node_points().into_iter().filter(|&y| y != x).fold(1, |acc, y| f.mul(acc, f.sub(x, y)))
    }

    /// Kernel of the gluing conditions `c_i Res_{a_i} + Res_{b_i} = 0` on `f` with `deg f <= 2g - 2`.
    fn differential_sections(&self, constants: &[Fp]) -> Vec<Vec<Fp>> {
        let f = &self.field;
        let ncoef = 2 * self.genus - 1;
        let rows: Vec<Vec<Fp>> = self
            .nodes
            .iter()
            .zip(constants)
            .map(|(&(a, b), &c)| {
                let wa = f.mul(c, f.inv(self.pi_prime(a)));
                let wb = f.inv(self.pi_prime(b));
                (0..ncoef)
                    .map(|k| f.add(f.mul(wa, f.pow(a, k as u64)), f.mul(wb, f.pow(b, k as u64))))
                    .collect()
            })
            .collect();
        kernel_basis(&FpMatrix::from_dense(f, ncoef, &rows))
    }
}

/// An `ℓ`-torsion line bundle of degree 0 given by gluing constants `c_i` with `c_i^ℓ = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionBundle {
    pub level: u32,
    pub constants: Vec<Fp>,
}

fn root_of_unity(field: &PrimeFieldConfig, level: u32) -> Result<Fp, CurveError> {
    let p = field.prime();
    if level == 0 || (p - 1) % level != 0 {
        return Err(CurveError::NoRootOfUnity { p, level });
    }
    if field.root_order() == level {
        return Ok(field.zeta());
    }
    Ok(field.pow(field.primitive_root(), ((p - 1) / level) as u64))
}

fn lcm(a: u64, b: u64) -> u64 {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

impl TorsionBundle {
    pub fn new(field: &PrimeFieldConfig, level: u32, constants: Vec<Fp>) -> Result<Self, CurveError> {
        root_of_unity(field, level)?;
        for &c in &constants {
            if c == 0 || field.pow(c, level as u64) != 1 {
                return Err(CurveError::InvalidParameter(format!("{c} is not a {level}-th root of unity")));
            }
        }
        Ok(TorsionBundle { level, constants })
    }

    /// Random constants in `μ_ℓ` for the nodes of `curve`, redrawn until `η` has order exactly `ℓ`.
    pub fn random(curve: &NodalRationalCurve, level: u32) -> Result<Self, CurveError> {
        let field = curve.field();
        let zeta = root_of_unity(field, level)?;
        if level == 1 || curve.genus() == 0 {
            return Err(CurveError::TrivialTorsion);
        }
        let mut rng = stream(curve.seed(), 2);
        loop {
            let constants: Vec<Fp> =
                (0..curve.genus()).map(|_| field.pow(zeta, rng.gen_range(0..level) as u64)).collect();
            let eta = TorsionBundle { level, constants };
            if eta.order(field) == level as u64 {
                return Ok(eta);
            }
        }
    }

    /// Order of `η` in `Pic^0`: the lcm of the orders of the gluing constants.
    pub fn order(&self, field: &PrimeFieldConfig) -> u64 {
        self.constants.iter().fold(1, |acc, &c| lcm(acc, field.multiplicative_order(c)))
    }

    pub fn is_trivial(&self) -> bool {
        self.constants.iter().all(|&c| c == 1)
    }
}

/// Basis of `H^0(ω_C)`, `h^0 = g`.
pub fn canonical_sections(curve: &NodalRationalCurve) -> Result<LineBundleData, CurveError> {
    let g = curve.genus();
    if g == 0 {
        return Err(CurveError::InvalidParameter("the canonical bundle needs g >= 1".into()));
    }
    let polys = curve.differential_sections(&vec![1; g]);
    if polys.len() != g {
        return Err(CurveError::Degenerate(format!("h0(ω) = {} instead of {g}", polys.len())));
    }
    Ok(LineBundleData {
        kind: BundleKind::Canonical,
        degree: 2 * g - 2,
        genus: g,
        field: curve.field().clone(),
        model: SectionModel::Rational { curve: curve.clone(), polys },
    })
}

/// Basis of `H^0(ω_C ⊗ η)` for nontrivial `η`, `h^0 = g - 1`.
pub fn paracanonical_sections(curve: &NodalRationalCurve, eta: &TorsionBundle) -> Result<LineBundleData, CurveError> {
    let g = curve.genus();
    if eta.constants.len() != g {
        return Err(CurveError::InvalidParameter(format!(
            "{} gluing constants for {g} nodes",
            eta.constants.len()
        )));
    }
    if eta.is_trivial() {
        return Err(CurveError::TrivialTorsion);
    }
    let polys = curve.differential_sections(&eta.constants);
    if polys.len() + 1 != g {
        return Err(CurveError::Degenerate(format!("h0(ω⊗η) = {} instead of {}", polys.len(), g - 1)));
    }
    Ok(LineBundleData {
        kind: BundleKind::Paracanonical { level: eta.level, constants: eta.constants.clone() },
        degree: 2 * g - 2,
        genus: g,
        field: curve.field().clone(),
        model: SectionModel::Rational { curve: curve.clone(), polys },
    })
}

/// Basis of a degree-`d` bundle: polynomials of degree `<= d` with
/// `f(b_i) = c_i f(a_i)`. Constants are random unless given; `h^0 = d - g + 1`.
pub fn twist_sections(
    curve: &NodalRationalCurve,
    d: usize,
    constants: Option<Vec<Fp>>,
) -> Result<LineBundleData, CurveError> {
    let g = curve.genus();
    let f = curve.field();
    if d + 2 <= 2 * g {
        return Err(CurveError::InvalidParameter(format!("degree {d} is special for genus {g}; need d > 2g - 2")));
    }
    let constants = match constants {
        Some(c) if c.len() == g && c.iter().all(|&x| x != 0) => c,
        Some(c) => {
            return Err(CurveError::InvalidParameter(format!("{} nonzero gluing constants needed, got {c:?}", g)))
        }
        None => {
            let mut rng = stream(curve.seed(), 3);
            (0..g).map(|_| rng.gen_range(1..f.prime())).collect()
        }
    };
    let rows: Vec<Vec<Fp>> = curve
        .nodes()
        .iter()
        .zip(&constants)
        .map(|(&(a, b), &c)| (0..=d).map(|k| f.sub(f.pow(b, k as u64), f.mul(c, f.pow(a, k as u64)))).collect())
        .collect();
    let polys = kernel_basis(&FpMatrix::from_dense(f, d + 1, &rows));
    if polys.len() != d + 1 - g {
        return Err(CurveError::Degenerate(format!("h0(L) = {} instead of {}", polys.len(), d + 1 - g)));
    }
    Ok(LineBundleData {
        kind: BundleKind::Twist { degree: d, constants },
        degree: d,
        genus: g,
        field: f.clone(),
        model: SectionModel::Rational { curve: curve.clone(), polys },
    })
}
