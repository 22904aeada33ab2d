//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};
use syzygy::conjectures::{
    canonical_hilbert, diagonal_identity_check, duality_check, expected_table, green_predicate,
    hilbert_diagonal_check, is_natural, is_pure, nonspecial_hilbert, CheckOutcome, Family,
};
use syzygy::gring::GradedModule;
use syzygy::koszul::{diagonal_sums, hilbert_from_diagram, koszul_dim, BettiDiagram, BettiRun};

#[allow(dead_code)]
mod twisted_cubic {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/twisted_cubic.rs"));
}
#[allow(dead_code)]
mod residue_field {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/residue_field.rs"));
}
#[allow(dead_code)]
mod canonical_curves {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/canonical_curves.rs"));
}
#[allow(dead_code)]
mod plane_curves {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/plane_curves.rs"));
}
#[allow(dead_code)]
mod green_np {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/green_np.rs"));
}
#[allow(dead_code)]
mod prym_green {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/prym_green.rs"));
}
#[allow(dead_code)]
mod split_witness {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/split_witness.rs"));
}
#[allow(dead_code)]
mod genus_nine {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/genus_nine.rs"));
}

type Outcome = Result<String, String>;

/// A computed diagram kept for the cross-cutting criteria.
struct Computed {
    label: String,
    module: GradedModule,
    run: BettiRun,
    /// `Some((d, g))` for a nonspecial embedding.
    nonspecial: Option<(usize, usize)>,
    /// Hilbert function of a special embedding, for the diagonal comparison.
    special_hilbert: Option<Vec<i64>>,
}

#[derive(Default)]
struct Suite {
    computed: Vec<Computed>,
    lines: Vec<(usize, bool, String)>,
}

impl Suite {
    fn record(&mut self, n: usize, name: &str, limit: Option<Duration>, f: impl FnOnce(&mut Suite) -> Outcome) {
        let t = Instant::now();
        let r = f(self);
        let el = t.elapsed();
        let (ok, detail) = match r {
            Ok(d) => match limit {
                Some(l) if el > l => (false, format!("{d}; took {el:.2?}, limit {l:?}")),
                _ => (true, d),
            },
            Err(e) => (false, e),
        };
        let line = format!("{} criterion {n:>2} {name} [{el:.2?}]: {detail}", if ok { "PASS" } else { "FAIL" });
        println!("{line}");
        self.lines.push((n, ok, line));
    }

    fn keep(&mut self, label: String, module: &GradedModule, run: &BettiRun, nonspecial: Option<(usize, usize)>, special_hilbert: Option<Vec<i64>>) {
        self.computed.push(Computed { label, module: module.clone(), run: run.clone(), nonspecial, special_hilbert });
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond { Ok(()) } else { Err(msg()) }
}

fn holds(o: &CheckOutcome, what: &str) -> Result<(), String> {
    ensure(o.holds, || format!("{what} fails at {:?}: {}", o.at, o.detail))
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// Runs `f` on `seed`, then on fresh seeds after a failure, up to four draws.
fn with_retries<T>(seed: u64, mut f: impl FnMut(u64) -> Result<T, String>) -> Result<(T, u64), String> {
    let mut errors = Vec::new();
    for s in seed..seed + 4 {
        match f(s) {
            Ok(v) => return Ok((v, s)),
            Err(e) => errors.push(format!("seed {s}: {e}")),
        }
    }
    Err(errors.join("; "))
}

fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn expect_entries(d: &BettiDiagram, want: &[((usize, usize), u64)]) -> Result<(), String> {
    let want: BTreeMap<(usize, usize), u64> = want.iter().copied().collect();
    for (p, q, b) in d.triples() {
        let e = want.get(&(p, q)).copied().unwrap_or(0);
        ensure(b == e, || format!("b_{{{p},{q}}} = {b}, want {e}"))?;
    }
    Ok(())
}

fn main() {
    let mut s = Suite::default();

    s.record(1, "twisted cubic", Some(Duration::from_secs(1)), |s| {
        let run = twisted_cubic::run_example().map_err(err)?;
        expect_entries(&run.diagram, &[((0, 0), 1), ((1, 1), 3), ((2, 1), 2)])?;
        let field = syzygy::field::PrimeFieldConfig::default_for_level(1);
        let m = syzygy::gring::quotient_module(&syzygy::models::twisted_cubic_ideal(&field), 3).map_err(err)?;
        s.keep("twisted cubic".into(), &m, &run, Some((3, 0)), None);
        Ok("b11 = 3, b21 = 2".into())
    });

    s.record(2, "residue field", Some(Duration::from_secs(1)), |_| {
        for r in 0..=5usize {
            let (d, complex) = residue_field::residue_diagram(r).map_err(err)?;
            ensure(complex, || format!("r = {r}: d∘d != 0"))?;
            let want: Vec<((usize, usize), u64)> = (0..=r + 1).map(|p| ((p, 0), binom(r as u64 + 1, p as u64))).collect();
            expect_entries(&d, &want).map_err(|e| format!("r = {r}: {e}"))?;
        }
        Ok("b_{p,0} = C(r+1, p) for r <= 5".into())
    });

    // criterion 3 and 4 are evaluated after all the others have run
    s.record(5, "genus-5 general canonical", Some(Duration::from_secs(10)), |s| {
        let c = canonical_curves::canonical(5, 1).map_err(err)?;
        expect_entries(&c.run.diagram, &[((0, 0), 1), ((1, 1), 3), ((2, 2), 3), ((3, 3), 1)])?;
        holds(&c.duality, "duality")?;
        s.keep("genus 5 canonical".into(), &c.model.module, &c.run, None, Some(canonical_hilbert(5, 8)));
        Ok(format!("1; 3; 3; 1 and duality (seed {})", c.model.seed_used))
    });

    s.record(6, "genus-5 trigonal plane quintic", Some(Duration::from_secs(30)), |s| {
        let ((m, run), seed) = with_retries(0, |seed| {
            let (m, run) = plane_curves::plane(5, 1, seed).map_err(err)?;
            let d = &run.diagram;
            ensure(d.at(2, 1) == 2 && d.at(1, 2) == 2, || format!("b21 = {}, b12 = {}", d.at(2, 1), d.at(1, 2)))?;
            Ok((m, run))
        })?;
        s.keep("plane quintic".into(), &m.module, &run, None, Some(canonical_hilbert(5, 8)));
        Ok(format!("b21 = b12 = 2 (seed {seed})"))
    });

    s.record(7, "genus-7 general canonical", Some(Duration::from_secs(120)), |s| {
        let c = canonical_curves::canonical(7, 1).map_err(err)?;
        let d = &c.run.diagram;
        ensure(d.row(1)[1..4] == [10, 16, 0], || format!("row 1 = {:?}", d.row(1)))?;
        ensure(d.row(2)[3..6] == [16, 10, 0], || format!("row 2 = {:?}", d.row(2)))?;
        holds(&c.duality, "duality")?;
        holds(&green_predicate(d, 3).map_err(err)?, "green with cliff 3")?;
        s.keep("genus 7 canonical".into(), &c.model.module, &c.run, None, Some(canonical_hilbert(7, 10)));
        Ok("row 1 = (10, 16, 0), mirrored; green with cliff 3".into())
    });

    s.record(8, "genus-7 plane sextic with 3 nodes", Some(Duration::from_secs(120)), |s| {
        let ((m, run), seed) = with_retries(2, |seed| {
            let (m, run) = plane_curves::plane(6, 3, seed).map_err(err)?;
            ensure(run.diagram.at(3, 1) == 9, || format!("b31 = {}", run.diagram.at(3, 1)))?;
            Ok((m, run))
        })?;
        s.keep("plane sextic".into(), &m.module, &run, None, Some(canonical_hilbert(7, 10)));
        Ok(format!("b31 = 9 (seed {seed})"))
    });

    s.record(9, "(N_p) for degree 2g+1+p, g = 4", Some(Duration::from_secs(120)), |s| {
        let mut notes = Vec::new();
        for p in [1, 2] {
            let t = Instant::now();
            let (c, seed) = with_retries(0, |seed| {
                let c = green_np::np_case(4, p, seed).map_err(err)?;
                holds(&c.np, "np")?;
                let d = &c.run.diagram;
                for (pp, q, b) in d.triples() {
                    ensure(q < 3 || b == 0, || format!("b_{{{pp},{q}}} = {b}"))?;
                }
                Ok(c)
            })?;
            ensure(t.elapsed() < Duration::from_secs(60), || format!("p = {p} took {:?}", t.elapsed()))?;
            s.keep(format!("g = 4, deg {}", c.model.degree), &c.model.module, &c.run, Some((c.model.degree, 4)), None);
            notes.push(format!("N_{p} (seed {seed})"));
        }
        Ok(notes.join(", "))
    });

    s.record(11, "quadrics of paracanonical genus 6", Some(Duration::from_secs(60)), |s| {
        let mut notes = Vec::new();
        for level in [2u32, 3] {
            for seed in [0u64, 1, 2] {
                let t = Instant::now();
                let ((rank, src, dst), _) = with_retries(seed * 10, |sd| {
                    let r = prym_green::sym2(6, level, sd).map_err(err)?;
                    ensure(r == (15, 15, 15), || format!("Sym^2 {} -> {} has rank {}", r.1, r.2, r.0))?;
                    Ok(r)
                })?;
                ensure(t.elapsed() < Duration::from_secs(10), || format!("level {level} took {:?}", t.elapsed()))?;
                notes.push(format!("{level}/{seed}: {src}->{dst} rank {rank}"));
            }
            let (m, run) = prym_green::prym_table(6, level, 0).map_err(err)?;
            s.keep(format!("paracanonical g = 6, level {level}"), &m.module, &run, Some((10, 6)), None);
        }
        Ok(notes.join(", "))
    });

    s.record(12, "paracanonical genus 7, level 3", Some(Duration::from_secs(60)), |s| {
        let ((m, run), seed) = with_retries(0, |seed| {
            let (m, run) = prym_green::prym_table(7, 3, seed).map_err(err)?;
            holds(&is_natural(&run.diagram).map_err(err)?, "naturality")?;
            let want = prym_green::expected(7);
            ensure(run.diagram == want, || format!("computed\n{}predicted\n{}", run.diagram.to_text(), want.to_text()))?;
            Ok((m, run))
        })?;
        s.keep("paracanonical g = 7, level 3".into(), &m.module, &run, Some((12, 7)), None);
        Ok(format!("natural, equal to the predicted table, b11 = {} (seed {seed})", run.diagram.at(1, 1)))
    });

    s.record(13, "paracanonical genus 8, level 2 failure", Some(Duration::from_secs(900)), |s| {
        let mut notes = Vec::new();
        for seed in [3u64, 4, 5] {
            let t = Instant::now();
            let (m, run) = prym_green::prym_table(8, 2, seed).map_err(err)?;
            ensure(t.elapsed() < Duration::from_secs(300), || format!("seed {seed} took {:?}", t.elapsed()))?;
            let b21 = run.diagram.at(2, 1);
            ensure(b21 >= 1, || format!("seed {seed}: b21 = 0"))?;
            s.keep(format!("paracanonical g = 8, seed {seed}"), &m.module, &run, Some((14, 8)), None);
            notes.push(format!("seed {} b21 = {b21}", m.seed_used));
        }
        Ok(notes.join(", "))
    });

    s.record(14, "split witness syzygies", Some(Duration::from_secs(5)), |_| {
        let ws = split_witness::run_example().map_err(err)?;
        let mut notes = Vec::new();
        for w in ws.iter().filter(|w| w.genus == 0 && [(1, 2), (2, 2)].contains(&(w.d1, w.d2))) {
            ensure(w.witness.certified(), || format!("({}, {}) not certified", w.d1, w.d2))?;
            let p = w.witness.r1 + w.witness.r2 - 1;
            let k = koszul_dim(&w.ring.module, p, 1).map_err(err)?;
            ensure(k >= 1, || format!("({}, {}): dim K_{{{p},1}} = 0", w.d1, w.d2))?;
            notes.push(format!("({},{}) in K_{{{p},1}}, dim {k}", w.d1, w.d2));
        }
        ensure(notes.len() == 2, || "missing P^1 cases".into())?;
        Ok(notes.join(", "))
    });

    s.record(15, "predicted tables", None, |s| {
        let t = Instant::now();
        for g in 5..=13usize {
            for canonical in [true, false] {
                let fam = Family::for_genus(canonical, g);
                let e = expected_table(fam, g).map_err(err)?;
                let d = &e.diagram;
                let ok = if canonical {
                    hilbert_diagonal_check(d, &canonical_hilbert(g, d.p_max + d.q_max), true)
                } else {
                    diagonal_identity_check(d, 2 * g - 2, g).map_err(err)?
                };
                holds(&ok, &format!("{fam} g = {g}"))?;
                if fam == Family::CanonicalOdd {
                    holds(&is_pure(d), &format!("purity g = {g}"))?;
                }
            }
        }
        let gen = t.elapsed();
        ensure(gen < Duration::from_secs(1), || format!("generation took {gen:?}"))?;
        let mut matched = Vec::new();
        for g in 5..=8usize {
            let want = expected_table(Family::for_genus(true, g), g).map_err(err)?.diagram;
            let label = format!("genus {g} canonical");
            let run = match s.computed.iter().find(|c| c.label == label) {
                Some(c) => c.run.clone(),
                None => {
                    let c = canonical_curves::canonical(g, 1).map_err(err)?;
                    s.keep(label.clone(), &c.model.module, &c.run, None, Some(canonical_hilbert(g, g + 3)));
                    c.run
                }
            };
            ensure(run.diagram == want, || format!("g = {g}: computed\n{}predicted\n{}", run.diagram.to_text(), want.to_text()))?;
            matched.push(g.to_string());
        }
        Ok(format!("g = 5..13 integral and consistent ({gen:.2?}); computed canonical tables match for g = {}", matched.join(", ")))
    });

    s.record(16, "genus-9 canonical performance", Some(Duration::from_secs(600)), |s| {
        let (run, elapsed) = genus_nine::run_example().map_err(err)?;
        ensure(!run.timings.is_empty(), || "no strand timings".into())?;
        let model = syzygy::models::build_model(
            syzygy::models::ModelSpec::RationalNodal { genus: 9, bundle: syzygy::models::BundleChoice::Canonical },
            None,
            0,
            3,
        )
        .map_err(err)?;
        let d = &run.diagram;
        holds(&duality_check(d, 9), "duality")?;
        s.keep("genus 9 canonical".into(), &model.module, &run, None, Some(canonical_hilbert(9, 10)));
        Ok(format!("{elapsed:.2?}, {} strand timings, rows 1/2: {:?} / {:?}", run.timings.len(), d.row(1), d.row(2)))
    });

    s.record(3, "d∘d = 0 on every strand", None, |s| {
        let mut strands = 0;
        for c in &s.computed {
            ensure(!c.run.complex_checks.is_empty(), || format!("{}: no complex checks", c.label))?;
            if let Some((p, q, _)) = c.run.complex_checks.iter().find(|x| !x.2) {
                return Err(format!("{}: d∘d != 0 at ({p}, {q})", c.label));
            }
            strands += c.run.complex_checks.len();
        }
        Ok(format!("{strands} strands over {} runs", s.computed.len()))
    });

    s.record(4, "Hilbert consistency", None, |s| {
        for c in &s.computed {
            let d = &c.run.diagram;
            let r = d.num_vars - 1;
            let dims: Vec<i64> = (0..=d.q_max + 1).map(|k| c.module.dim(k as i64) as i64).collect();
            for k in 0..=d.q_max {
                let h = hilbert_from_diagram(d, k).map_err(err)?;
                ensure(h == dims[k], || format!("{}: degree {k} table gives {h}, module {}", c.label, dims[k]))?;
            }
            let sums = diagonal_sums(&dims, r, d.q_max + 1);
            for (k, &want) in sums.iter().enumerate() {
                if let Some(got) = d.diagonal_sum(k) {
                    ensure(got == want, || format!("{}: diagonal {k} is {got}, Hilbert gives {want}", c.label))?;
                }
            }
        }
        Ok(format!("{} diagrams", s.computed.len()))
    });

    s.record(10, "diagonal identity on nonspecial diagrams", None, |s| {
        let mut names = Vec::new();
        for c in &s.computed {
            let d = &c.run.diagram;
            if let Some((deg, g)) = c.nonspecial {
                holds(&diagonal_identity_check(d, deg, g).map_err(err)?, &c.label)?;
                let h = nonspecial_hilbert(deg, g, d.p_max + d.q_max);
                holds(&hilbert_diagonal_check(d, &h, true), &c.label)?;
                names.push(c.label.clone());
            } else if c.label == "plane sextic" {
                // special embedding: compare with the Hilbert function instead
                let h = c.special_hilbert.clone().expect("canonical Hilbert function");
                holds(&hilbert_diagonal_check(d, &h, true), &c.label)?;
                names.push(format!("{} (Hilbert form)", c.label));
            }
        }
        Ok(names.join(", "))
    });

    s.lines.sort_by_key(|l| l.0);
    let failed: Vec<usize> = s.lines.iter().filter(|l| !l.1).map(|l| l.0).collect();
    println!();
    for (_, _, line) in &s.lines {
        println!("{line}");
    }
    println!("{} of {} criteria pass", s.lines.len() - failed.len(), s.lines.len());
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
