//! Run reports: a sorted, deterministic JSON document and a plain-text view.

use crate::conjectures::{CheckOutcome, ConjectureError};
use crate::koszul::{hilbert_from_diagram, BettiDiagram, StrandTiming};
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Undecidable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PredicateResult {
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub at: Option<[usize; 2]>,
    pub detail: String,
}

impl PredicateResult {
    pub fn from_outcome(o: &CheckOutcome) -> Self {
        PredicateResult {
            status: if o.holds { Status::Pass } else { Status::Fail },
            at: o.at.map(|(p, q)| [p, q]),
            detail: o.detail.clone(),
        }
    }

    /// Undecidable checks are kept apart from failures; other errors fail.
    pub fn from_result(r: Result<CheckOutcome, ConjectureError>) -> Self {
        match r {
            Ok(o) => Self::from_outcome(&o),
            Err(ConjectureError::Undecidable(msg)) => {
                PredicateResult { status: Status::Undecidable, at: None, detail: msg }
            }
            Err(e) => PredicateResult { status: Status::Fail, at: None, detail: e.to_string() },
        }
    }

    pub fn pass(detail: impl Into<String>) -> Self {
        PredicateResult { status: Status::Pass, at: None, detail: detail.into() }
    }

    pub fn fail(at: Option<(usize, usize)>, detail: impl Into<String>) -> Self {
        PredicateResult { status: Status::Fail, at: at.map(|(p, q)| [p, q]), detail: detail.into() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Window {
    pub p_max: usize,
    pub q_max: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertRow {
    pub degree: usize,
    /// `dim M_d` of the module.
    pub module: i64,
    /// The same value recovered from the table, when the window allows it.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub from_table: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Redraw {
    pub seed: u64,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub model: String,
    pub prime: u32,
    pub seed: u64,
    pub seed_used: u64,
    pub ring_vars: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<Window>,
    /// `[p, q, b_{p,q}]` for every entry of the window.
    pub betti: Vec<[u64; 3]>,
    pub hilbert: Vec<HilbertRow>,
    pub audits: BTreeMap<String, serde_json::Value>,
    pub predicates: BTreeMap<String, PredicateResult>,
    pub redraws: Vec<Redraw>,
    /// Per-strand wall times; left out of the JSON unless requested, so that
    /// repeated runs produce identical output.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Vec<StrandTiming>>,
    #[serde(skip)]
    pub diagram: Option<BettiDiagram>,
    /// Extra text printed after the table.
    #[serde(skip)]
    pub notes: Vec<String>,
}

impl RunReport {
    pub fn new(command: &str, model: String, prime: u32, seed: u64, ring_vars: usize) -> Self {
        RunReport {
            command: command.to_string(),
            model,
            prime,
            seed,
            seed_used: seed,
            ring_vars,
            window: None,
            betti: Vec::new(),
            hilbert: Vec::new(),
            audits: BTreeMap::new(),
            predicates: BTreeMap::new(),
            redraws: Vec::new(),
            timings: None,
            diagram: None,
            notes: Vec::new(),
        }
    }

    /// Records the diagram and the Hilbert function `dims[d] = dim M_d`.
    pub fn set_diagram(&mut self, d: &BettiDiagram, dims: &[i64]) {
        self.window = Some(Window { p_max: d.p_max, q_max: d.q_max });
        self.betti = d.triples().into_iter().map(|(p, q, b)| [p as u64, q as u64, b]).collect();
        self.hilbert = dims
            .iter()
            .enumerate()
            .map(|(degree, &module)| HilbertRow { degree, module, from_table: hilbert_from_diagram(d, degree).ok() })
            .collect();
        self.diagram = Some(d.clone());
    }

    pub fn predicate(&mut self, name: &str, r: PredicateResult) {
        self.predicates.insert(name.to_string(), r);
    }

    /// 1 if any predicate fails, otherwise 3 if any is undecidable, otherwise 0.
    pub fn exit_code(&self) -> i32 {
        let has = |s| self.predicates.values().any(|p| p.status == s);
        if has(Status::Fail) {
            1
        } else if has(Status::Undecidable) {
            3
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}  (p = {}, seed = {}", self.model, self.prime, self.seed);
        if self.seed_used != self.seed {
            s += &format!(", re-drawn to {}", self.seed_used);
        }
        s += ")\n";
        if let Some(d) = &self.diagram {
            s += &d.to_text();
        }
        for n in &self.notes {
            s += n;
            s.push('\n');
        }
        for (name, p) in &self.predicates {
            let tag = match p.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Undecidable => "UNDECIDABLE",
            };
            let at = p.at.map(|[a, b]| format!(" at ({a},{b})")).unwrap_or_default();
            s += &format!("{tag:<11} {name}{at}: {}\n", p.detail);
        }
        if let Some(ts) = &self.timings {
            let total: u64 = ts.iter().map(|t| t.build_ms + t.rank_ms).sum();
            s += &format!("strands: {} ranks, {} ms total\n", ts.len(), total);
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_rank_failures_first() {
        let mut r = RunReport::new("check", "m".into(), 7, 0, 2);
        assert_eq!(r.exit_code(), 0);
        r.predicate("a", PredicateResult::from_result(Err(ConjectureError::Undecidable("x".into()))));
        assert_eq!(r.exit_code(), 3);
        r.predicate("b", PredicateResult::fail(Some((1, 2)), "y"));
        assert_eq!(r.exit_code(), 1);
        let j: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(j["predicates"]["a"]["status"], "UNDECIDABLE");
        assert_eq!(j["predicates"]["b"]["at"], serde_json::json!([1, 2]));
        assert!(j.get("timings").is_none());
    }
}
