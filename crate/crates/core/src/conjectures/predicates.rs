//! Predicates on computed or predicted Betti diagrams.

use super::ConjectureError;
use crate::curves::NormalityAudit;
use crate::gring::binomial;
use crate::koszul::{diagonal_sums, BettiDiagram};
use serde::Serialize;

/// Result of a decidable check: whether it holds, and where it first fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub holds: bool,
    /// `(p, q)` of the first violation.
    pub at: Option<(usize, usize)>,
    pub detail: String,
}

impl CheckOutcome {
    fn pass(detail: impl Into<String>) -> Self {
        CheckOutcome { holds: true, at: None, detail: detail.into() }
    }

    fn fail(p: usize, q: usize, detail: impl Into<String>) -> Self {
        CheckOutcome { holds: false, at: Some((p, q)), detail: detail.into() }
    }
}

fn need_rows(d: &BettiDiagram, q: usize, what: &str) -> Result<(), ConjectureError> {
    if d.q_max < q {
        return Err(ConjectureError::Undecidable(format!("{what} needs rows through q={q}, window has q<={}", d.q_max)));
    }
    Ok(())
}

/// `b_{p,2} · b_{p+1,1} = 0` for every `p` with both entries in the window.
pub fn is_natural(d: &BettiDiagram) -> Result<CheckOutcome, ConjectureError> {
    need_rows(d, 2, "naturality")?;
    if d.p_max < 1 {
        return Err(ConjectureError::Undecidable("naturality needs p_max >= 1".into()));
    }
    for p in 0..d.p_max {
        let (a, b) = (d.at(p, 2), d.at(p + 1, 1));
        if a != 0 && b != 0 {
            return Ok(CheckOutcome::fail(p, 2, format!("b_{{{p},2}} = {a} and b_{{{},1}} = {b}", p + 1)));
        }
    }
    Ok(CheckOutcome::pass(format!("b_{{p,2}}·b_{{p+1,1}} = 0 for p < {}", d.p_max)))
}

/// Each column has at most one nonzero entry.
pub fn is_pure(d: &BettiDiagram) -> CheckOutcome {
    for p in 0..=d.p_max {
        let nonzero: Vec<usize> = (0..=d.q_max).filter(|&q| d.at(p, q) != 0).collect();
        if nonzero.len() > 1 {
            return CheckOutcome::fail(p, nonzero[1], format!("column {p} has entries in rows {nonzero:?}"));
        }
    }
    CheckOutcome::pass("one nonzero entry per column")
}

/// Green's prediction for a canonical curve of genus `g` (`g` variables):
/// `b_{p,2} = 0` exactly when `p < cliff`, for `p <= g - 3` in the window.
pub fn green_predicate(d: &BettiDiagram, cliff: usize) -> Result<CheckOutcome, ConjectureError> {
    if cliff == 0 {
        return Err(ConjectureError::Unsupported(
            "Clifford index 0 (hyperelliptic): the canonical map is not an embedding".into(),
        ));
    }
    need_rows(d, 2, "Green's prediction")?;
    if d.p_max < cliff {
        return Err(ConjectureError::Undecidable(format!("b_{{{cliff},2}} lies outside p<={}", d.p_max)));
    }
    let g = d.num_vars;
    let top = d.p_max.min(g.saturating_sub(3));
    for p in 0..=top {
        let b = d.at(p, 2);
        if p < cliff && b != 0 {
            return Ok(CheckOutcome::fail(p, 2, format!("b_{{{p},2}} = {b} but {p} < Cliff = {cliff}")));
        }
        if p >= cliff && b == 0 {
            return Ok(CheckOutcome::fail(p, 2, format!("b_{{{p},2}} = 0 but {p} >= Cliff = {cliff}")));
        }
    }
    Ok(CheckOutcome::pass(format!("b_{{p,2}} = 0 exactly for p < {cliff} (p <= {top})")))
}

/// Property `(N_p)`: the audit passes and `b_{j,q} = 0` for `j <= p`, `q >= 2`.
pub fn np_property(d: &BettiDiagram, audit: &NormalityAudit, p: usize) -> Result<CheckOutcome, ConjectureError> {
    need_rows(d, 2, "(N_p)")?;
    if d.p_max < p {
        return Err(ConjectureError::Undecidable(format!("(N_{p}) needs columns through {p}, window has {}", d.p_max)));
    }
    if let Some(e) = audit.first_failure() {
        return Ok(CheckOutcome::fail(
            0,
            e.q,
            format!("not projectively normal: dim {} vs h0 {} in degree {}", e.dim, e.expected, e.q),
        ));
    }
    for j in 0..=p {
        for q in 2..=d.q_max {
            let b = d.at(j, q);
            if b != 0 {
                return Ok(CheckOutcome::fail(j, q, format!("b_{{{j},{q}}} = {b}")));
            }
        }
    }
    Ok(CheckOutcome::pass(format!("projectively normal and b_{{j,q}} = 0 for j <= {p}, q >= 2")))
}

/// `b_{p,q} = b_{g-2-p, 3-q}` for every mirrored pair inside the window.
pub fn duality_check(d: &BettiDiagram, g: usize) -> CheckOutcome {
    let mut pairs = 0;
    for p in 0..=d.p_max.min(g.saturating_sub(2)) {
        for q in 0..=d.q_max.min(3) {
            let (mp, mq) = (g - 2 - p, 3 - q);
            if mp > d.p_max || mq > d.q_max {
                continue;
            }
            let (a, b) = (d.at(p, q), d.at(mp, mq));
            if a != b {
                return CheckOutcome::fail(p, q, format!("b_{{{p},{q}}} = {a} but b_{{{mp},{mq}}} = {b}"));
            }
            pairs += 1;
        }
    }
    CheckOutcome::pass(format!("{pairs} mirrored entries agree"))
}

/// Right-hand side of `b_{p+1,1} - b_{p,2} = (p+1) C(d-g, p+1) ((d+1-g)/(p+2) - d/(d-g))`.
pub fn diagonal_difference(p: usize, d: usize, g: usize) -> Result<i64, ConjectureError> {
    if d <= g {
        return Err(ConjectureError::Unsupported(format!("degree {d} must exceed genus {g}")));
    }
    let (p, d, g) = (p as i128, d as i128, g as i128);
    let num = (p + 1) * binomial((d - g) as i64, (p + 1) as i64) as i128 * ((d + 1 - g) * (d - g) - d * (p + 2));
    let den = (p + 2) * (d - g);
    if num % den != 0 {
        return Err(ConjectureError::NotIntegral { p: p as usize, q: 2, num: num as i64, den: den as i64 });
    }
    Ok((num / den) as i64)
}

/// The diagonal identity for a nonspecial embedding of degree `d`, for all
/// `p` with `b_{p+1,1}` and `b_{p,2}` in the window.
pub fn diagonal_identity_check(diag: &BettiDiagram, d: usize, g: usize) -> Result<CheckOutcome, ConjectureError> {
    need_rows(diag, 2, "the diagonal identity")?;
    for p in 0..diag.p_max {
        let lhs = diag.at(p + 1, 1) as i64 - diag.at(p, 2) as i64;
        let rhs = diagonal_difference(p, d, g)?;
        if lhs != rhs {
            return Ok(CheckOutcome::fail(
                p,
                2,
                format!("b_{{{},1}} - b_{{{p},2}} = {lhs}, formula gives {rhs}", p + 1),
            ));
        }
    }
    Ok(CheckOutcome::pass(format!("identity holds for p < {} (d={d}, g={g})", diag.p_max)))
}

/// Alternating diagonal sums of the diagram against those forced by the
/// Hilbert function `h` (degrees `0..h.len()`). This form of the diagonal
/// identity also holds for special embeddings such as the canonical one.
/// With `complete` the resolution is taken to lie inside the window and
/// entries outside it count as zero; otherwise only diagonals lying fully
/// inside the window are compared.
pub fn hilbert_diagonal_check(diag: &BettiDiagram, h: &[i64], complete: bool) -> CheckOutcome {
    let r = diag.num_vars - 1;
    let k_max = h.len() - 1;
    let expected = diagonal_sums(h, r, k_max);
    let mut compared = 0;
    for (k, &e) in expected.iter().enumerate() {
        let sum = if complete {
            Some((0..=k.min(diag.num_vars)).map(|p| {
                let b = diag.get(p, k - p).unwrap_or(0) as i64;
                if p % 2 == 0 { b } else { -b }
            }).sum())
        } else {
            diag.diagonal_sum(k)
        };
        if let Some(s) = sum {
            if s != e {
                return CheckOutcome {
                    holds: false,
                    at: None,
                    detail: format!("diagonal {k}: table gives {s}, Hilbert function {e}"),
                };
            }
            compared += 1;
        }
    }
    CheckOutcome::pass(format!("{compared} diagonals agree with the Hilbert function"))
}

/// Hilbert function of the canonical ring: `1, g, (2q-1)(g-1), ...`.
pub fn canonical_hilbert(g: usize, q_max: usize) -> Vec<i64> {
    (0..=q_max)
        .map(|q| match q {
            0 => 1,
            1 => g as i64,
            _ => (2 * q as i64 - 1) * (g as i64 - 1),
        })
        .collect()
}

/// Hilbert function `1, qd - g + 1, ...` of a nonspecial embedding.
pub fn nonspecial_hilbert(d: usize, g: usize, q_max: usize) -> Vec<i64> {
    (0..=q_max).map(|q| if q == 0 { 1 } else { (q * d) as i64 - g as i64 + 1 }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conjectures::{expected_table, Family};
    use crate::curves::AuditEntry;

    fn diagram(num_vars: usize, p_max: usize, q_max: usize, e: &[((usize, usize), u64)]) -> BettiDiagram {
        BettiDiagram::from_entries(num_vars, p_max, q_max, e.iter().copied())
    }

    fn passing_audit() -> NormalityAudit {
        NormalityAudit { entries: vec![AuditEntry { q: 0, dim: 1, expected: 1, pass: true }] }
    }

    #[test]
    fn naturality() {
        let t = expected_table(Family::CanonicalOdd, 7).unwrap().diagram;
        assert!(is_natural(&t).unwrap().holds);
        assert!(is_pure(&t).holds);
        let t = expected_table(Family::ParacanonicalOdd, 7).unwrap().diagram;
        assert!(is_natural(&t).unwrap().holds);
        assert_eq!(is_pure(&t).at, Some((1, 2)));
        let bad = diagram(7, 5, 3, &[((0, 0), 1), ((2, 1), 16), ((1, 2), 1)]);
        assert_eq!(is_natural(&bad).unwrap().at, Some((1, 2)));
        let short = diagram(7, 5, 1, &[((0, 0), 1)]);
        assert!(matches!(is_natural(&short), Err(ConjectureError::Undecidable(_))));
    }

    #[test]
    fn green() {
        let t7 = expected_table(Family::CanonicalOdd, 7).unwrap().diagram;
        assert!(green_predicate(&t7, 3).unwrap().holds);
        // with Cliff = 2 the prediction would need b_{2,2} != 0
        assert_eq!(green_predicate(&t7, 2).unwrap().at, Some((2, 2)));
        let trigonal = diagram(
            5,
            4,
            3,
            &[((0, 0), 1), ((1, 1), 3), ((2, 1), 2), ((1, 2), 2), ((2, 2), 3), ((3, 3), 1)],
        );
        assert!(green_predicate(&trigonal, 1).unwrap().holds);
        assert!(!green_predicate(&trigonal, 2).unwrap().holds);
        assert!(matches!(green_predicate(&trigonal, 0), Err(ConjectureError::Unsupported(_))));
        assert!(matches!(green_predicate(&trigonal, 5), Err(ConjectureError::Undecidable(_))));
        for g in 5..=13 {
            let t = expected_table(Family::for_genus(true, g), g).unwrap().diagram;
            assert!(green_predicate(&t, (g - 1) / 2).unwrap().holds, "g={g}");
        }
    }

    #[test]
    fn np_and_duality() {
        let cubic = diagram(4, 3, 2, &[((0, 0), 1), ((1, 1), 3), ((2, 1), 2)]);
        assert!(np_property(&cubic, &passing_audit(), 1).unwrap().holds);
        let trigonal = diagram(5, 4, 3, &[((0, 0), 1), ((1, 1), 3), ((2, 1), 2), ((1, 2), 2), ((2, 2), 3), ((3, 3), 1)]);
        assert_eq!(np_property(&trigonal, &passing_audit(), 1).unwrap().at, Some((1, 2)));
        let failing = NormalityAudit { entries: vec![AuditEntry { q: 2, dim: 10, expected: 12, pass: false }] };
        assert!(!np_property(&cubic, &failing, 1).unwrap().holds);
        assert!(duality_check(&trigonal, 5).holds);
        let t7 = expected_table(Family::CanonicalOdd, 7).unwrap().diagram;
        assert!(duality_check(&t7, 7).holds);
        let broken = diagram(5, 4, 3, &[((0, 0), 1), ((1, 1), 3), ((2, 2), 3)]);
        assert_eq!(duality_check(&broken, 5).at, Some((0, 0)));
    }

    #[test]
    fn diagonal_identity() {
        assert_eq!(diagonal_difference(0, 3, 0).unwrap(), 3);
        let cubic = diagram(4, 3, 2, &[((0, 0), 1), ((1, 1), 3), ((2, 1), 2)]);
        assert!(diagonal_identity_check(&cubic, 3, 0).unwrap().holds);
        let off = diagram(4, 3, 2, &[((0, 0), 1), ((1, 1), 4), ((2, 1), 2)]);
        assert_eq!(diagonal_identity_check(&off, 3, 0).unwrap().at, Some((0, 2)));
        for g in 5..=13 {
            let fam = Family::for_genus(false, g);
            let t = expected_table(fam, g).unwrap();
            assert!(diagonal_identity_check(&t.diagram, t.degree, g).unwrap().holds, "g={g}");
            let h = nonspecial_hilbert(t.degree, g, g + 2);
            assert!(hilbert_diagonal_check(&t.diagram, &h, true).holds, "g={g}");
            let fam = Family::for_genus(true, g);
            let t = expected_table(fam, g).unwrap();
            assert!(hilbert_diagonal_check(&t.diagram, &canonical_hilbert(g, g + 2), true).holds, "g={g}");
        }
    }
}
