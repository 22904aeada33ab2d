//! Named models: a curve, a line bundle on it, and the coordinate ring of the
//! embedding, built under the re-draw policy.

use crate::curves::{
    adjoint_canonical_sections, canonical_sections, coordinate_ring, paracanonical_sections, plane_curve_with_nodes,
    rational_nodal_curve, twist_sections, with_redraws, AuditEntry, CoordinateRing, CurveError, LineBundleData,
    NormalityAudit, TorsionBundle,
};
use crate::conjectures::{generic_first_section, gl_witness, witness_quadric, WitnessSyzygy};
use crate::field::{FieldError, Fp, PrimeFieldConfig};
use crate::gring::{quotient_module, GradedModule, HomogeneousIdeal, RingSpec};
use rand::Rng;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error("invalid model: {0}")]
    Invalid(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "bundle", rename_all = "kebab-case")]
pub enum BundleChoice {
    Canonical,
    Paracanonical { level: u32 },
    Twist { degree: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "model", rename_all = "kebab-case")]
pub enum ModelSpec {
    /// `V(x_0x_2 - x_1^2, x_0x_3 - x_1x_2, x_1x_3 - x_2^2)` in `P^3`.
    TwistedCubic,
    RationalNodal { genus: usize, bundle: BundleChoice },
    /// Nodal plane curve embedded by its adjoint (canonical) system.
    Plane { degree: usize, nodes: usize },
}

impl ModelSpec {
    pub fn level(&self) -> u32 {
        match self {
            ModelSpec::RationalNodal { bundle: BundleChoice::Paracanonical { level }, .. } => *level,
            _ => 1,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            ModelSpec::TwistedCubic => "twisted cubic".into(),
            ModelSpec::RationalNodal { genus, bundle } => {
                let b = match bundle {
                    BundleChoice::Canonical => "canonical".to_string(),
                    BundleChoice::Paracanonical { level } => format!("paracanonical level {level}"),
                    BundleChoice::Twist { degree } => format!("degree-{degree} bundle"),
                };
                format!("rational {genus}-nodal curve, {b}")
            }
            ModelSpec::Plane { degree, nodes } => format!("plane curve of degree {degree} with {nodes} nodes, adjoint-canonical"),
        }
    }

    /// Whether the embedding bundle is special (canonical).
    pub fn is_canonical(&self) -> bool {
        matches!(
            self,
            ModelSpec::Plane { .. } | ModelSpec::RationalNodal { bundle: BundleChoice::Canonical, .. }
        )
    }
}

pub fn field_for(prime: Option<u32>, level: u32) -> Result<PrimeFieldConfig, ModelError> {
    Ok(match prime {
        Some(p) => PrimeFieldConfig::new(p, level)?,
        None => PrimeFieldConfig::default_for_level(level),
    })
}

#[derive(Clone, Debug)]
pub struct BuiltModel {
    pub spec: ModelSpec,
    pub field: PrimeFieldConfig,
    pub seed: u64,
    /// Seed of the accepted draw; differs from `seed` after re-draws.
    pub seed_used: u64,
    pub redraws: Vec<(u64, String)>,
    pub module: GradedModule,
    pub audit: NormalityAudit,
    pub genus: usize,
    /// Degree of the embedding.
    pub degree: usize,
    pub bundle: Option<LineBundleData>,
    pub ring: Option<CoordinateRing>,
}

impl BuiltModel {
    /// Default window: `p <= r`, `q <= 3` for curves; the twisted cubic uses `q <= 2`.
    pub fn default_window(&self) -> (usize, usize) {
        let r = self.module.ring().num_vars() - 1;
        match self.spec {
            ModelSpec::TwistedCubic => (r, 2),
            _ => (r, 3),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.module.ring().num_vars()
    }

    /// `h^0(L^q)` for `q = 0..=q_max`, the Hilbert function of a projectively normal model.
    pub fn hilbert_function(&self, q_max: usize) -> Vec<i64> {
        (0..=q_max)
            .map(|q| match &self.bundle {
                Some(l) => l.expected_h0(q) as i64,
                None => 3 * q as i64 + 1,
            })
            .collect()
    }
}

pub fn twisted_cubic_ideal(field: &PrimeFieldConfig) -> HomogeneousIdeal {
    let ring = RingSpec::new(4, field.clone()).expect("four variables");
    HomogeneousIdeal::from_terms(
        ring,
        &[
            vec![(1, vec![1, 0, 1, 0]), (-1, vec![0, 2, 0, 0])],
            vec![(1, vec![1, 0, 0, 1]), (-1, vec![0, 1, 1, 0])],
            vec![(1, vec![0, 1, 0, 1]), (-1, vec![0, 0, 2, 0])],
        ],
    )
    .expect("the twisted cubic quadrics are well formed")
}

/// Builds a model whose coordinate ring reaches degree `q_max + 1`, re-drawing
/// from `seed + 1, seed + 2, ...` when a draw is degenerate or fails its audit.
pub fn build_model(spec: ModelSpec, prime: Option<u32>, seed: u64, q_max: usize) -> Result<BuiltModel, ModelError> {
    let field = field_for(prime, spec.level())?;
    if let ModelSpec::TwistedCubic = spec {
        let module = quotient_module(&twisted_cubic_ideal(&field), q_max + 1).map_err(|e| ModelError::Invalid(e.to_string()))?;
        let audit = NormalityAudit {
            entries: (0..=q_max + 1)
                .map(|q| {
                    let dim = module.dim(q as i64);
                    AuditEntry { q, dim, expected: 3 * q + 1, pass: dim == 3 * q + 1 }
                })
                .collect(),
        };
        return Ok(BuiltModel {
            spec,
            field,
            seed,
            seed_used: seed,
            redraws: Vec::new(),
            module,
            audit,
            genus: 0,
            degree: 3,
            bundle: None,
            ring: None,
        });
    }
    match spec {
        ModelSpec::RationalNodal { genus, bundle: BundleChoice::Canonical } if genus < 3 => {
            return Err(ModelError::Invalid(format!("canonical curves need genus >= 3, got {genus}")))
        }
        ModelSpec::RationalNodal { genus, bundle: BundleChoice::Paracanonical { level } } if genus < 3 || level < 2 => {
            return Err(ModelError::Invalid(format!("paracanonical curves need genus >= 3 and level >= 2, got g={genus}, level={level}")))
        }
        _ => {}
    }
    let drawn = with_redraws(seed, |s| {
        let l = match spec {
            ModelSpec::RationalNodal { genus, bundle } => {
                let c = rational_nodal_curve(&field, genus, s)?;
                match bundle {
                    BundleChoice::Canonical => canonical_sections(&c)?,
                    BundleChoice::Paracanonical { level } => paracanonical_sections(&c, &TorsionBundle::random(&c, level)?)?,
                    BundleChoice::Twist { degree } => twist_sections(&c, degree, None)?,
                }
            }
            ModelSpec::Plane { degree, nodes } => adjoint_canonical_sections(&plane_curve_with_nodes(&field, degree, nodes, s)?)?,
            ModelSpec::TwistedCubic => unreachable!("handled above"),
        };
        let ring = coordinate_ring(&l, q_max)?;
        ring.audit.require()?;
        Ok((l, ring))
    })?;
    let (l, ring) = drawn.value;
    Ok(BuiltModel {
        spec,
        field,
        seed,
        seed_used: drawn.seed,
        redraws: drawn.failures,
        module: ring.module.clone(),
        audit: ring.audit.clone(),
        genus: l.genus,
        degree: l.degree,
        bundle: Some(l),
        ring: Some(ring),
    })
}

/// A line bundle `L = L_1 ⊗ L_2` on a rational curve of genus 0 or a
/// one-nodal curve of genus 1, with the Green–Lazarsfeld class it carries.
#[derive(Clone, Debug)]
pub struct SplitWitness {
    pub genus: usize,
    pub d1: usize,
    pub d2: usize,
    pub seed_used: u64,
    pub ring: CoordinateRing,
    pub witness: WitnessSyzygy,
    /// `dim K_{p,1}` computed directly, for comparison with the bound `>= 1`.
    pub koszul_dim: usize,
    /// For `p = 1`: rank of the quadric defined by the witness.
    pub quadric_rank: Option<usize>,
}

/// Builds `L_1`, `L_2` of degrees `d1`, `d2` (gluing constants `c_1`, `c_2`
/// in genus 1) and `L` of degree `d1 + d2` (constant `c_1 c_2`), and certifies
/// the syzygy in `K_{h0(L_1) + h0(L_2) - 3, 1}(L)`.
pub fn split_witness(genus: usize, d1: usize, d2: usize, prime: Option<u32>, seed: u64) -> Result<SplitWitness, ModelError> {
    if genus > 1 {
        return Err(ModelError::Invalid(format!("split witnesses are built in genus 0 or 1, got {genus}")));
    }
    if d1 < 1 + genus || d2 < 1 + genus {
        return Err(ModelError::Invalid(format!(
            "both factors need at least two sections: degrees {d1}, {d2} in genus {genus}"
        )));
    }
    let field = field_for(prime, 1)?;
    let drawn = with_redraws(seed, |s| {
        let c = rational_nodal_curve(&field, genus, s)?;
        let mut rng = crate::curves::stream(s, 4);
        let consts: Vec<Fp> = (0..genus).map(|_| rng.gen_range(2..field.prime())).collect();
        let c2: Vec<Fp> = (0..genus).map(|_| rng.gen_range(2..field.prime())).collect();
        let prod: Vec<Fp> = consts.iter().zip(&c2).map(|(&a, &b)| field.mul(a, b)).collect();
        let l1 = twist_sections(&c, d1, Some(consts))?;
        let l2 = twist_sections(&c, d2, Some(c2))?;
        let l = twist_sections(&c, d1 + d2, Some(prod))?;
        let ring = coordinate_ring(&l, 1)?;
        ring.audit.require()?;
        let b1 = l1.section_basis(ring.points)?;
        let b2 = generic_first_section(&field, &l2.section_basis(ring.points)?, s);
        let w = gl_witness(&ring, &b1, &b2).map_err(|e| CurveError::Degenerate(e.to_string()))?;
        Ok((ring, w))
    })?;
    let (ring, witness) = drawn.value;
    let koszul_dim = crate::koszul::koszul_dim(&ring.module, witness.p, 1).map_err(|e| ModelError::Invalid(e.to_string()))?;
    let quadric_rank = witness_quadric(&witness, &ring).map(|(_, r)| r);
    Ok(SplitWitness { genus, d1, d2, seed_used: drawn.seed, ring, witness, koszul_dim, quadric_rank })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twisted_cubic_model() {
        let m = build_model(ModelSpec::TwistedCubic, None, 0, 2).unwrap();
        assert_eq!(m.default_window(), (3, 2));
        assert!(m.audit.passes());
        assert_eq!(m.hilbert_function(3), vec![1, 4, 7, 10]);
    }

    #[test]
    fn rejects_bad_requests() {
        assert!(build_model(ModelSpec::RationalNodal { genus: 2, bundle: BundleChoice::Canonical }, None, 0, 3).is_err());
        let para = ModelSpec::RationalNodal { genus: 6, bundle: BundleChoice::Paracanonical { level: 2 } };
        // 1000003 has no primitive 4th root of unity but 2 is fine
        assert!(build_model(para, Some(1_000_003), 0, 2).is_ok());
        let para5 = ModelSpec::RationalNodal { genus: 6, bundle: BundleChoice::Paracanonical { level: 5 } };
        assert!(matches!(build_model(para5, Some(1_000_003), 0, 2), Err(ModelError::Field(_))));
    }

    #[test]
    fn redraw_is_deterministic() {
        let spec = ModelSpec::RationalNodal { genus: 5, bundle: BundleChoice::Canonical };
        let a = build_model(spec, None, 4, 3).unwrap();
        let b = build_model(spec, None, 4, 3).unwrap();
        assert_eq!(a.seed_used, b.seed_used);
        assert_eq!(a.bundle.unwrap().section_basis(20).unwrap(), b.bundle.unwrap().section_basis(20).unwrap());
    }

    #[test]
    fn split_witnesses_on_p1_and_genus_one() {
        let w = split_witness(0, 2, 2, None, 0).unwrap();
        assert!(w.witness.certified());
        assert_eq!((w.witness.p, w.quadric_rank), (3, None));
        assert!(w.koszul_dim >= 1);
        let w = split_witness(1, 2, 2, None, 0).unwrap();
        assert_eq!(w.witness.p, 1);
        assert_eq!(w.quadric_rank, Some(4));
        assert!(split_witness(0, 0, 3, None, 0).is_err());
    }
}
