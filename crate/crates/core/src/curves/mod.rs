//! Explicit curve models over F_p, their line bundles, and the homogeneous
//! coordinate rings of the embeddings they define.
//!
//! A line bundle is carried by a basis of sections that can be evaluated at
//! any number of smooth sample points. The coordinate ring in degree `q` is
//! the span of the `q`-fold pointwise products of those evaluations; once
//! there are more points than `q * deg L`, a section of `L^q` vanishing at all
//! of them is zero, so the span is the true image of `Sym^q H^0(L)`.

pub mod plane;
pub mod poly;
pub mod rational;

pub use plane::{adjoint_canonical_sections, plane_curve_with_nodes, NodalPlaneCurve};
pub use rational::{
    canonical_sections, paracanonical_sections, rational_nodal_curve, twist_sections, NodalRationalCurve,
    TorsionBundle,
};

use crate::exactla::{rank, solve_membership, FpMatrix};
use crate::field::{Fp, PrimeFieldConfig};
use crate::gring::{GradedModule, MonomialTable, NormalForms, RingSpec};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error("F_{p} is too small: need {needed} distinct affine points")]
    FieldTooSmall { p: u32, needed: usize },
    #[error("degenerate draw: {0}")]
    Degenerate(String),
    #[error("the torsion bundle is trivial (every gluing constant is 1)")]
    TrivialTorsion,
    #[error("F_{p} has no primitive {level}-th root of unity")]
    NoRootOfUnity { p: u32, level: u32 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("{points} sample points do not exceed the zero bound {bound}")]
    InjectivityViolated { points: usize, bound: usize },
    #[error("only {found} of {wanted} smooth sample points found")]
    InsufficientPoints { wanted: usize, found: usize },
    #[error("node certification failed: {0}")]
    NodeCertification(String),
    #[error("normality audit failed in degree {q}: dim {dim}, expected {expected}")]
    AuditFailed { q: usize, dim: usize, expected: usize },
    #[error("no usable model after {} attempts; last: {}", .0.len(), .0.last().map_or("", |f| f.1.as_str()))]
    RedrawExhausted(Vec<(u64, String)>),
}

impl CurveError {
    /// Failures that a fresh random draw can cure.
    pub fn is_redrawable(&self) -> bool {
        matches!(
            self,
            CurveError::Degenerate(_)
                | CurveError::NodeCertification(_)
                | CurveError::AuditFailed { .. }
                | CurveError::InsufficientPoints { .. }
        )
    }
}

pub const MAX_ATTEMPTS: u32 = 32;

#[derive(Clone, Debug)]
pub struct Redrawn<T> {
    pub value: T,
    pub seed: u64,
    /// `(seed, reason)` for each rejected draw.
    pub failures: Vec<(u64, String)>,
}

/// Runs `build(seed)`, then `build(seed + 1)`, ... while it fails with a
/// redrawable error, at most [`MAX_ATTEMPTS`] times.
pub fn with_redraws<T>(
    seed: u64,
    mut build: impl FnMut(u64) -> Result<T, CurveError>,
) -> Result<Redrawn<T>, CurveError> {
    let mut failures = Vec::new();
    for k in 0..MAX_ATTEMPTS as u64 {
        let s = seed.wrapping_add(k);
        match build(s) {
            Ok(value) => return Ok(Redrawn { value, seed: s, failures }),
            Err(e) if e.is_redrawable() => failures.push((s, e.to_string())),
            Err(e) => return Err(e),
        }
    }
    Err(CurveError::RedrawExhausted(failures))
}

/// Independent deterministic random stream `stream` for a model seed.
pub(crate) fn stream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum BundleKind {
    Canonical,
    Paracanonical { level: u32, constants: Vec<Fp> },
    Twist { degree: usize, constants: Vec<Fp> },
}

#[derive(Clone, Debug)]
enum SectionModel {
    /// Polynomials in the affine parameter `t`.
    Rational { curve: NodalRationalCurve, polys: Vec<Vec<Fp>> },
    /// Ternary forms of degree `form_degree` over the descending-lex monomial basis.
    Plane { curve: NodalPlaneCurve, form_degree: usize, forms: Vec<Vec<Fp>> },
}

/// A line bundle on a curve model, given by a basis of its sections.
#[derive(Clone, Debug)]
pub struct LineBundleData {
    pub kind: BundleKind,
    pub degree: usize,
    pub genus: usize,
    field: PrimeFieldConfig,
    model: SectionModel,
}

impl LineBundleData {
    pub fn h0(&self) -> usize {
        match &self.model {
            SectionModel::Rational { polys, .. } => polys.len(),
            SectionModel::Plane { forms, .. } => forms.len(),
        }
    }

    pub fn field(&self) -> &PrimeFieldConfig {
        &self.field
    }

    pub fn seed(&self) -> u64 {
        match &self.model {
            SectionModel::Rational { curve, .. } => curve.seed(),
            SectionModel::Plane { curve, .. } => curve.seed(),
        }
    }

    /// Sample-point count for a coordinate ring through degree `top_degree`.
    pub fn default_points(&self, top_degree: usize) -> usize {
        top_degree * self.degree + 2 * self.genus + 16
    }

    /// The `h0` section vectors evaluated at the first `n` sample points of the curve.
    pub fn section_basis(&self, n: usize) -> Result<Vec<Vec<Fp>>, CurveError> {
        let f = &self.field;
        match &self.model {
            SectionModel::Rational { curve, polys } => {
                let pts = curve.sample_points(n)?;
                Ok(polys
                    .iter()
                    .map(|c| pts.iter().map(|&t| poly::eval(f, c, t)).collect())
                    .collect())
            }
            SectionModel::Plane { curve, form_degree, forms } => {
                let pts = curve.sample_points(n)?;
                Ok(forms.iter().map(|c| plane::eval_form(f, *form_degree, c, &pts)).collect())
            }
        }
    }

    /// Riemann-Roch value of `h^0(L^q)`.
    pub fn expected_h0(&self, q: usize) -> usize {
        let g = self.genus;
        match (q, &self.kind) {
            (0, _) => 1,
            (1, BundleKind::Canonical) => g,
            (_, BundleKind::Canonical) => (2 * q - 1) * (g.max(1) - 1),
            _ => q * self.degree + 1 - g,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditEntry {
    pub q: usize,
    pub dim: usize,
    pub expected: usize,
    pub pass: bool,
}

/// Per-degree comparison of the coordinate ring with Riemann-Roch.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalityAudit {
    pub entries: Vec<AuditEntry>,
}

impl NormalityAudit {
    pub fn passes(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn first_failure(&self) -> Option<&AuditEntry> {
        self.entries.iter().find(|e| !e.pass)
    }

    pub fn require(&self) -> Result<(), CurveError> {
        match self.first_failure() {
            None => Ok(()),
            Some(e) => Err(CurveError::AuditFailed { q: e.q, dim: e.dim, expected: e.expected }),
        }
    }
}

/// Homogeneous coordinate ring of the embedding by a line bundle.
#[derive(Clone, Debug)]
pub struct CoordinateRing {
    pub module: GradedModule,
    pub audit: NormalityAudit,
    pub points: usize,
    /// `std_evals[q][k]`: values of the `k`-th standard monomial of degree `q`.
    std_evals: Vec<Vec<Vec<Fp>>>,
    sections: Vec<Vec<Fp>>,
}

impl CoordinateRing {
    /// Evaluated sections, the images of the variables.
    pub fn sections(&self) -> &[Vec<Fp>] {
        &self.sections
    }

    /// Coordinates in `M_q` of a function given by its values at the sample
    /// points, or `None` if it is not in the degree-`q` span.
    pub fn coordinates(&self, q: usize, values: &[Fp]) -> Option<Vec<Fp>> {
        let basis = self.std_evals.get(q)?;
        let field = self.module.ring().field();
        let m = FpMatrix::from_columns(field, self.points, basis);
        solve_membership(&m, values).ok().flatten()
    }
}

/// Coordinate ring through degree `q_max + 1` at the default number of sample points.
pub fn coordinate_ring(l: &LineBundleData, q_max: usize) -> Result<CoordinateRing, CurveError> {
    coordinate_ring_at(l, q_max, l.default_points(q_max + 1))
}

pub fn coordinate_ring_at(l: &LineBundleData, q_max: usize, points: usize) -> Result<CoordinateRing, CurveError> {
    let top = q_max + 1;
    if points <= top * l.degree {
        return Err(CurveError::InjectivityViolated { points, bound: top * l.degree });
    }
    let field = l.field.clone();
    let sections = l.section_basis(points)?;
    let n = sections.len();
    if n == 0 {
        return Err(CurveError::Degenerate("line bundle has no sections".into()));
    }
    let ring = RingSpec::new(n, field.clone()).expect("at least one section");
    let table = MonomialTable::new(n, top);
    let mut evals: Vec<Vec<Vec<Fp>>> = vec![vec![vec![1; points]]];
    for q in 1..=top {
        let level: Vec<Vec<Fp>> = table
            .basis(q)
            .iter()
            .map(|m| {
                let var = m.iter().position(|&e| e > 0).expect("positive degree");
                let mut lower = m.clone();
                lower[var] -= 1;
                let parent = &evals[q - 1][table.index(&lower).expect("lower monomial")];
                parent.iter().zip(&sections[var]).map(|(&a, &b)| field.mul(a, b)).collect()
            })
            .collect();
        evals.push(level);
    }
    let nfs: Vec<NormalForms> = evals.iter().map(|cols| NormalForms::from_images(&field, cols)).collect();
    if nfs[1].standard.len() != n {
        return Err(CurveError::Degenerate("section evaluations are dependent".into()));
    }
    let std_evals = nfs
        .iter()
        .zip(&evals)
        .map(|(nf, cols)| nf.standard.iter().map(|&k| cols[k].clone()).collect())
        .collect();
    let module = GradedModule::from_normal_forms(ring, &table, &nfs);
    let audit = NormalityAudit {
        entries: (0..=top)
            .map(|q| {
                let dim = module.dim(q as i64);
                let expected = l.expected_h0(q);
                AuditEntry { q, dim, expected, pass: dim == expected }
            })
            .collect(),
    };
    Ok(CoordinateRing { module, audit, points, std_evals, sections })
}

/// Rank of `Sym^q H^0(L) -> H^0(L^q)`, read on enough sample points.
pub fn sym_map_rank(l: &LineBundleData, q: usize) -> Result<usize, CurveError> {
    let points = l.default_points(q);
    let sections = l.section_basis(points)?;
    let field = l.field.clone();
    let table = MonomialTable::new(sections.len(), q);
    let cols: Vec<Vec<Fp>> = table
        .basis(q)
        .iter()
        .map(|m| {
            let mut v = vec![1; points];
            for (i, &e) in m.iter().enumerate() {
                for _ in 0..e {
                    for (x, &s) in v.iter_mut().zip(&sections[i]) {
                        *x = field.mul(*x, s);
                    }
                }
            }
            v
        })
        .collect();
    Ok(rank(&FpMatrix::from_columns(&field, points, &cols)))
}
