//! Growing an infinite sequence of irreducible monic polynomials from an
//! arbitrary irreducible monic seed.
//!
//! Each step transforms the current polynomial and keeps one irreducible
//! factor of the image. Degrees hold at n for a bounded prefix, may hold at
//! 2n for a further stretch, and then double at every subsequent step; the
//! start of the stable doubling is bounded by l_s + l_n + 3. If the branch
//! chosen at the first split betrays periodic roots — by stretching either
//! plateau past that bound, or by splitting above the 2n tier — the run
//! restarts once from the other factor, which is then guaranteed to escape.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::factorize::{is_irreducible, oracle_factor, split_q_image, SplitResult, ORACLE_MAX_BITS};
use crate::field::{ensure_same_spec, FieldElement, FieldSpec};
use crate::poly::Polynomial;
use crate::transform::q_alpha_transform;

/// Default cap on retained history polynomials, counted in coefficients.
/// Past the cap, older entries keep only degree and hash.
pub const DEFAULT_HISTORY_COEFF_CAP: usize = 1 << 20;

/// Which factor of a split was appended, in canonical order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorChoice {
    First,
    Second,
}

impl FactorChoice {
    pub fn label(self) -> &'static str {
        match self {
            FactorChoice::First => "g1",
            FactorChoice::Second => "g2",
        }
    }
}

/// One row of a run's history.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HistoryEntry {
    pub index: usize,
    pub degree: usize,
    /// The polynomial itself; dropped (oldest first) past the memory cap.
    pub poly: Option<Polynomial>,
    /// FNV-1a of the canonical text, kept even when the polynomial is dropped.
    pub poly_fnv: u64,
    /// Whether the transform image at this step split (None for the seed row).
    pub split: Option<bool>,
    pub chosen_factor: Option<FactorChoice>,
}

/// State of one sequence run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceRun {
    pub spec: FieldSpec,
    pub alpha: FieldElement,
    pub seed_poly: Polynomial,
    /// nu_2(s): exponent of the largest power of 2 dividing s.
    pub l_s: u32,
    /// nu_2(n) for n the seed degree.
    pub l_n: u32,
    /// l_s + l_n + 3.
    pub stagnation_bound: u32,
    pub history: Vec<HistoryEntry>,
    pub backtracked: bool,
    /// The two factors of the first split, canonical order.
    pub first_split: Option<(Polynomial, Polynomial)>,
    /// Index of the most recent degree-2n entry. Once a degree-4n entry
    /// exists this is final: the step where stable doubling begins.
    pub doubling_step: Option<usize>,
    pub history_coeff_cap: usize,
}

pub(crate) fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut h = 0xcbf29ce484222325u64;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

impl SequenceRun {
    fn start(
        spec: &FieldSpec,
        alpha: &FieldElement,
        seed_poly: &Polynomial,
        history_coeff_cap: usize,
    ) -> SequenceRun {
        let n = seed_poly.degree().expect("seed is nonzero") as u32;
        let l_s = spec.s().trailing_zeros();
        let l_n = n.trailing_zeros();
        let mut run = SequenceRun {
            spec: spec.clone(),
            alpha: alpha.clone(),
            seed_poly: seed_poly.clone(),
            l_s,
            l_n,
            stagnation_bound: l_s + l_n + 3,
            history: Vec::new(),
            backtracked: false,
            first_split: None,
            doubling_step: None,
            history_coeff_cap,
        };
        run.push_entry(seed_poly.clone(), None, None);
        run
    }

    pub fn seed_degree(&self) -> usize {
        self.seed_poly.degree().expect("seed is nonzero")
    }

    pub fn last_degree(&self) -> usize {
        self.history.last().expect("history is never empty").degree
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.history.iter().map(|e| e.degree).collect()
    }

    fn push_entry(
        &mut self,
        poly: Polynomial,
        split: Option<bool>,
        chosen_factor: Option<FactorChoice>,
    ) {
        let index = self.history.len();
        let degree = poly.degree().expect("appended polynomials are nonzero");
        if degree == 2 * self.seed_degree() {
            self.doubling_step = Some(index);
        }
        let poly_fnv = fnv1a64(poly.canonical_text().as_bytes());
        self.history.push(HistoryEntry {
            index,
            degree,
            poly: Some(poly),
            poly_fnv,
            split,
            chosen_factor,
        });
        self.prune_history();
    }

    fn stored_coeffs(&self) -> usize {
        self.history
            .iter()
            .filter_map(|e| e.poly.as_ref())
            .map(|p| p.degree().map_or(1, |d| d + 1))
            .sum()
    }

    /// Drop the oldest stored polynomials until under the cap; the newest
    /// entry is always retained so that stepping can continue.
    fn prune_history(&mut self) {
        while self.stored_coeffs() > self.history_coeff_cap {
            let last = self.history.len() - 1;
            let Some(entry) = self.history[..last].iter_mut().find(|e| e.poly.is_some())
            else {
                break;
            };
            entry.poly = None;
        }
    }

    fn restarted_from_second_factor(&self) -> SequenceRun {
        let mut run = SequenceRun::start(
            &self.spec,
            &self.alpha,
            &self.seed_poly,
            self.history_coeff_cap,
        );
        run.backtracked = true;
        run.first_split = self.first_split.clone();
        run
    }
}

/// Advance a run by one step: transform the last polynomial, factor the
/// image, append the canonical-order first factor (or the second, for the
/// first step of a backtracked run).
pub fn step(run: &SequenceRun, seed: u64) -> Result<SequenceRun> {
    let last = run
        .history
        .last()
        .ok_or_else(|| Error::InvalidInput("run has no history".to_string()))?;
    let last_poly = last.poly.clone().ok_or_else(|| {
        Error::InvalidInput("the run's newest polynomial was pruned".to_string())
    })?;
    let n_last = last.degree;
    let image = q_alpha_transform(&last_poly, &run.alpha)?;
    let mut next = run.clone();
    match split_q_image(&image, n_last, seed)? {
        SplitResult::Irreducible(f) => {
            next.push_entry(f, Some(false), None);
        }
        SplitResult::Split(g1, g2) => {
            if g1 == g2 {
                // Only the seed f0 = x produces a squared image.
                return Err(Error::InvalidSeed {
                    reason: format!(
                        "transform image {} is the square of {}",
                        image.canonical_text(),
                        g1.canonical_text()
                    ),
                });
            }
            let first_step = next.history.len() == 1;
            let choice = if first_step && next.backtracked {
                debug_assert_eq!(
                    next.first_split,
                    Some((g1.clone(), g2.clone())),
                    "restarted run must re-derive the same first split"
                );
                FactorChoice::Second
            } else {
                FactorChoice::First
            };
            if first_step && !next.backtracked {
                next.first_split = Some((g1.clone(), g2.clone()));
            }
            let chosen = match choice {
                FactorChoice::First => g1,
                FactorChoice::Second => g2,
            };
            next.push_entry(chosen, Some(true), Some(choice));
        }
    }
    Ok(next)
}

/// Run the construction from an irreducible monic seed until the degree
/// reaches `target_degree`.
pub fn generate(
    spec: &FieldSpec,
    alpha: &FieldElement,
    seed_poly: &Polynomial,
    target_degree: usize,
    seed: u64,
) -> Result<SequenceRun> {
    generate_with_history_cap(
        spec,
        alpha,
        seed_poly,
        target_degree,
        seed,
        DEFAULT_HISTORY_COEFF_CAP,
    )
}

/// [`generate`] with an explicit memory cap on retained history polynomials.
pub fn generate_with_history_cap(
    spec: &FieldSpec,
    alpha: &FieldElement,
    seed_poly: &Polynomial,
    target_degree: usize,
    seed: u64,
    history_coeff_cap: usize,
) -> Result<SequenceRun> {
    ensure_same_spec(spec, alpha.spec())?;
    ensure_same_spec(spec, seed_poly.spec())?;
    if alpha.is_zero() {
        return Err(Error::ZeroParameter { name: "alpha" });
    }
    let n = match seed_poly.degree() {
        None | Some(0) => {
            return Err(Error::InvalidSeed {
                reason: "seed must have positive degree".to_string(),
            })
        }
        Some(n) => n,
    };
    if !seed_poly.is_monic() {
        return Err(Error::InvalidSeed {
            reason: "seed must be monic".to_string(),
        });
    }
    if !is_irreducible(seed_poly)? {
        return Err(Error::InvalidSeed {
            reason: format!("seed {} is reducible", seed_poly.canonical_text()),
        });
    }
    if target_degree < n {
        return Err(Error::InvalidInput(format!(
            "target degree {target_degree} is below the seed degree {n}"
        )));
    }

    let mut run = SequenceRun::start(spec, alpha, seed_poly, history_coeff_cap);
    let bound = run.stagnation_bound as usize;
    loop {
        if run.last_degree() >= target_degree {
            return Ok(run);
        }
        // A sound branch reaches stable doubling by the bound: degrees hold
        // at n, may hold at 2n, and from index <= bound onward double each
        // step. Either plateau overrunning that exposes a periodic first
        // factor, and so does any split above the 2n tier; in all three
        // cases the other factor of the first split is the guaranteed good
        // branch.
        let n_stagnation = run.last_degree() == n && run.history.len() == bound + 1;
        let plateau_overrun = run.last_degree() == 2 * n && run.history.len() == bound + 2;
        if n_stagnation || plateau_overrun {
            run = backtrack_or_bail(run, bound)?;
            continue;
        }
        let was_past_2n = run.last_degree() > 2 * n;
        run = step(&run, seed)?;
        if was_past_2n && run.history.last().map(|e| e.split) == Some(Some(true)) {
            run = backtrack_or_bail(run, bound)?;
        }
    }
}

fn backtrack_or_bail(run: SequenceRun, bound: usize) -> Result<SequenceRun> {
    if run.backtracked {
        return Err(Error::TheoremViolation {
            context: format!("both branches of the first split escape the bound {bound}"),
        });
    }
    if run.first_split.is_none() {
        return Err(Error::TheoremViolation {
            context: "bound escape without a recorded first split".to_string(),
        });
    }
    Ok(run.restarted_from_second_factor())
}

/// One verification check of a completed run.
#[derive(Clone, Debug, Serialize)]
pub struct RunCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Verification report; failures are carried, never raised.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub passed: bool,
    pub checks: Vec<RunCheck>,
}

/// Re-check every claim a completed run makes: all retained polynomials
/// irreducible (with an oracle cross-check at desk scale), the degree
/// pattern (a constant-degree prefix, then doubling every step), the
/// doubling step within its bound, and the periodicity facts about the
/// first split where the root fields are small enough to enumerate.
pub fn verify_run(run: &SequenceRun) -> RunReport {
    let mut checks = Vec::new();
    let n = run.seed_degree();
    let s = run.spec.s() as usize;

    // irreducibility of everything retained
    {
        let mut failures = Vec::new();
        let mut rabin = 0usize;
        let mut oracle = 0usize;
        let mut pruned = 0usize;
        for e in &run.history {
            let Some(poly) = &e.poly else {
                pruned += 1;
                continue;
            };
            rabin += 1;
            if !is_irreducible(poly).unwrap_or(false) {
                failures.push(format!("index {} fails the Rabin test", e.index));
            }
            if (s as u64) * (e.degree as u64) <= ORACLE_MAX_BITS {
                oracle += 1;
                let ok = oracle_factor(poly)
                    .map(|f| f.len() == 1 && f[0].1 == 1)
                    .unwrap_or(false);
                if !ok {
                    failures.push(format!("index {} fails trial division", e.index));
                }
            }
        }
        checks.push(RunCheck {
            name: "history-irreducible",
            passed: failures.is_empty(),
            detail: if failures.is_empty() {
                format!("{rabin} Rabin checks, {oracle} oracle cross-checks, {pruned} pruned entries skipped")
            } else {
                failures.join("; ")
            },
        });
    }

    // degree pattern: a prefix at n, a stretch at 2n, then strict doubling
    let degrees = run.degrees();
    {
        let mut problems = Vec::new();
        if degrees.first() != Some(&n) {
            problems.push("first entry is not the seed degree".to_string());
        }
        for i in 1..degrees.len() {
            let (prev, cur) = (degrees[i - 1], degrees[i]);
            let held = cur == prev && (cur == n || cur == 2 * n);
            let doubled = cur == 2 * prev;
            if !held && !doubled {
                problems.push(format!(
                    "illegal degree step {prev} -> {cur} at index {i}"
                ));
            }
        }
        checks.push(RunCheck {
            name: "degree-pattern",
            passed: problems.is_empty(),
            detail: if problems.is_empty() {
                format!("degrees {degrees:?}")
            } else {
                problems.join("; ")
            },
        });
    }

    // stable doubling must begin within the bound: the last degree-2n entry
    // (the theorem's t, final once a 4n entry exists) sits at index <= bound
    {
        let bound = run.stagnation_bound as usize;
        let observed_t = degrees.iter().rposition(|&d| d == 2 * n);
        let confirmed = degrees.iter().any(|&d| d == 4 * n);
        let (passed, detail) = match observed_t {
            Some(t) => {
                let mut passed = t <= bound;
                let mut detail = format!(
                    "t = {t}{}, bound = {bound}",
                    if confirmed { "" } else { " (doubling not yet confirmed)" }
                );
                if run.doubling_step.is_some() && run.doubling_step != Some(t) {
                    passed = false;
                    detail = format!(
                        "recorded doubling step {:?} disagrees with observed {t}",
                        run.doubling_step
                    );
                }
                (passed, detail)
            }
            None => (
                degrees.len() <= bound + 1,
                format!(
                    "no doubling yet after {} steps (bound {bound})",
                    degrees.len() - 1
                ),
            ),
        };
        checks.push(RunCheck {
            name: "t-bound",
            passed,
            detail,
        });
    }

    // periodicity facts, where the root field is enumerable
    let scale_ok = s * n <= crate::dynamics::PERIODIC_ROOTS_MAX_BITS as usize;
    if let Some((g1, g2)) = &run.first_split {
        if scale_ok {
            let p1 = crate::dynamics::has_periodic_roots(g1, &run.alpha);
            let p2 = crate::dynamics::has_periodic_roots(g2, &run.alpha);
            let (passed, detail) = match (&p1, &p2) {
                (Ok(a), Ok(b)) => (
                    !a || !b,
                    format!("g1 periodic: {a}, g2 periodic: {b}"),
                ),
                _ => (false, "periodicity test failed".to_string()),
            };
            checks.push(RunCheck {
                name: "lemma-factors",
                passed,
                detail,
            });
        } else {
            checks.push(RunCheck {
                name: "lemma-factors",
                passed: true,
                detail: format!("skipped: s * n = {} exceeds the enumeration cap", s * n),
            });
        }
    }
    if let Some(f1) = run
        .history
        .get(1)
        .filter(|e| e.split == Some(true))
        .and_then(|e| e.poly.as_ref())
    {
        if scale_ok {
            match crate::dynamics::has_periodic_roots(f1, &run.alpha) {
                Ok(periodic) => checks.push(RunCheck {
                    name: "f1-non-periodic",
                    passed: !periodic,
                    detail: format!("chosen f1 periodic: {periodic}"),
                }),
                Err(e) => checks.push(RunCheck {
                    name: "f1-non-periodic",
                    passed: false,
                    detail: format!("periodicity test failed: {e}"),
                }),
            }
        } else {
            checks.push(RunCheck {
                name: "f1-non-periodic",
                passed: true,
                detail: format!("skipped: s * n = {} exceeds the enumeration cap", s * n),
            });
        }
    }

    RunReport {
        passed: checks.iter().all(|c| c.passed),
        checks,
    }
}

#[derive(Serialize)]
struct StepRecord {
    index: usize,
    degree: usize,
    poly: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    split: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    chosen_factor: Option<&'static str>,
}

/// The JSON run record: field, alpha, seed, per-step rows, the doubling
/// step, the backtrack flag, and the verification report. Key order is
/// declaration order, stable for golden-file tests.
#[derive(Serialize)]
pub struct RunRecord {
    field: String,
    alpha: String,
    seed_poly: String,
    steps: Vec<StepRecord>,
    t: Option<usize>,
    backtracked: bool,
    verification: RunReport,
}

impl RunRecord {
    pub fn new(run: &SequenceRun) -> RunRecord {
        RunRecord {
            field: run.spec.canonical_text(),
            alpha: run.alpha.to_hex(),
            seed_poly: run.seed_poly.canonical_text(),
            steps: run
                .history
                .iter()
                .map(|e| StepRecord {
                    index: e.index,
                    degree: e.degree,
                    poly: e.poly.as_ref().map(|p| p.canonical_text()),
                    split: e.split,
                    chosen_factor: e.chosen_factor.map(|c| c.label()),
                })
                .collect(),
            t: run.doubling_step,
            backtracked: run.backtracked,
            verification: verify_run(run),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("run record serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> FieldSpec {
        FieldSpec::conway(1).unwrap()
    }

    fn f8() -> FieldSpec {
        FieldSpec::conway(3).unwrap()
    }

    fn p(spec: &FieldSpec, coeffs: &[u64]) -> Polynomial {
        Polynomial::from_coeff_bits(spec, coeffs.to_vec()).unwrap()
    }

    fn paper_run(target: usize) -> SequenceRun {
        let s = f8();
        let a = s.x_element();
        let f0 = p(&s, &[a.pow(3).bits(), 1, 0, 0, 1]);
        generate(&s, &a, &f0, target, 0).unwrap()
    }

    #[test]
    fn f8_run_reaches_sixteen_with_one_split() {
        let run = paper_run(16);
        assert_eq!(run.degrees(), vec![4, 4, 8, 16]);
        assert_eq!(run.doubling_step, Some(2));
        assert!(run.stagnation_bound >= 2);
        assert_eq!(run.l_s, 0);
        assert_eq!(run.l_n, 2);
        assert_eq!(run.stagnation_bound, 5);

        // The first split's factors multiply back to the image and contain
        // the known quartic.
        let s = run.spec.clone();
        let a = s.x_element();
        let known = p(
            &s,
            &[a.pow(6).bits(), a.pow(2).bits(), 1, a.pow(4).bits(), 1],
        );
        let (g1, g2) = run.first_split.clone().unwrap();
        assert!(g1 == known || g2 == known);
        let report = verify_run(&run);
        assert!(report.passed, "report: {report:?}");
    }

    #[test]
    fn meyn_regime_never_splits() {
        let s = f2();
        let f0 = p(&s, &[1, 1, 1]);
        let run = generate(&s, &s.one(), &f0, 8, 0).unwrap();
        assert_eq!(run.degrees(), vec![2, 4, 8]);
        assert_eq!(run.doubling_step, Some(1));
        assert!(!run.backtracked);
        assert!(run.first_split.is_none());
        assert!(run.history[1..].iter().all(|e| e.split == Some(false)));
        assert!(verify_run(&run).passed);
    }

    #[test]
    fn single_step_run_verifies_with_t_one() {
        let s = f2();
        let f0 = p(&s, &[1, 1, 1]);
        let run = generate(&s, &s.one(), &f0, 4, 0).unwrap();
        assert_eq!(run.degrees(), vec![2, 4]);
        assert_eq!(run.doubling_step, Some(1));
        assert!(verify_run(&run).passed);
    }

    #[test]
    fn degenerate_seed_x_is_rejected() {
        let s = f2();
        let err = generate(&s, &s.one(), &Polynomial::x(&s), 8, 0).unwrap_err();
        assert!(matches!(err, Error::InvalidSeed { .. }), "{err}");
        let s8 = f8();
        let err = generate(&s8, &s8.x_element(), &Polynomial::x(&s8), 8, 0).unwrap_err();
        assert!(matches!(err, Error::InvalidSeed { .. }), "{err}");
    }

    #[test]
    fn bad_seeds_are_rejected() {
        let s = f2();
        let reducible = p(&s, &[1, 0, 1]);
        assert!(matches!(
            generate(&s, &s.one(), &reducible, 8, 0),
            Err(Error::InvalidSeed { .. })
        ));
        let s8 = f8();
        let a = s8.x_element();
        let nonmonic = p(&s8, &[1, a.bits()]);
        assert!(matches!(
            generate(&s8, &a, &nonmonic, 8, 0),
            Err(Error::InvalidSeed { .. })
        ));
        let constant = Polynomial::one(&s8);
        assert!(matches!(
            generate(&s8, &a, &constant, 8, 0),
            Err(Error::InvalidSeed { .. })
        ));
        let good = p(&s8, &[a.pow(3).bits(), 1, 0, 0, 1]);
        assert!(matches!(
            generate(&s8, &s8.zero(), &good, 8, 0),
            Err(Error::ZeroParameter { .. })
        ));
        assert!(generate(&s8, &a, &good, 2, 0).is_err());
    }

    #[test]
    fn target_at_seed_degree_returns_immediately() {
        let s = f8();
        let a = s.x_element();
        let f0 = p(&s, &[a.pow(3).bits(), 1, 0, 0, 1]);
        let run = generate(&s, &a, &f0, 4, 0).unwrap();
        assert_eq!(run.degrees(), vec![4]);
        assert_eq!(run.doubling_step, None);
        assert!(verify_run(&run).passed);
    }

    #[test]
    fn generate_is_deterministic() {
        let a = paper_run(32);
        let b = paper_run(32);
        assert_eq!(a, b);
    }

    #[test]
    fn tampered_degrees_fail_the_bound_check() {
        let run = paper_run(16);
        let mut tampered = run.clone();
        let template = tampered.history[1].clone();
        // stretch the degree-4 prefix past the bound of 5 before the jump
        tampered.history = (0..7)
            .map(|i| HistoryEntry {
                index: i,
                degree: if i < 6 { 4 } else { 8 },
                poly: None,
                poly_fnv: template.poly_fnv,
                split: if i == 0 { None } else { Some(true) },
                chosen_factor: None,
            })
            .collect();
        tampered.doubling_step = None;
        let report = verify_run(&tampered);
        assert!(!report.passed);
        let bound_check = report
            .checks
            .iter()
            .find(|c| c.name == "t-bound")
            .unwrap();
        assert!(!bound_check.passed);
    }

    #[test]
    fn history_cap_prunes_oldest_polynomials_but_keeps_stepping() {
        let s = f8();
        let a = s.x_element();
        let f0 = p(&s, &[a.pow(3).bits(), 1, 0, 0, 1]);
        let run = generate_with_history_cap(&s, &a, &f0, 64, 0, 24).unwrap();
        assert_eq!(run.degrees(), vec![4, 4, 8, 16, 32, 64]);
        assert!(run.history.last().unwrap().poly.is_some());
        assert!(run.history[0].poly.is_none());
        assert!(run.history.iter().all(|e| e.poly_fnv != 0));
        // degrees and hashes survive pruning; the full run agrees
        let full = generate(&s, &a, &f0, 64, 0).unwrap();
        for (a, b) in run.history.iter().zip(full.history.iter()) {
            assert_eq!(a.degree, b.degree);
            assert_eq!(a.poly_fnv, b.poly_fnv);
        }
    }

    #[test]
    fn json_record_shape() {
        let run = paper_run(16);
        let json = RunRecord::new(&run).to_json();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["field"], "s=3,mod=0xb");
        assert_eq!(v["alpha"], "2");
        assert_eq!(v["seed_poly"], "poly[s=3]{1,0,0,1,3}");
        assert_eq!(v["steps"].as_array().unwrap().len(), 4);
        assert_eq!(v["steps"][0]["degree"], 4);
        assert!(v["steps"][0].get("split").is_none());
        assert_eq!(v["steps"][1]["split"], true);
        assert_eq!(v["steps"][2]["split"], false);
        assert_eq!(v["t"], 2);
        assert_eq!(v["backtracked"], false);
        assert_eq!(v["verification"]["passed"], true);
        // stable key order
        let i_field = json.find("\"field\"").unwrap();
        let i_alpha = json.find("\"alpha\"").unwrap();
        let i_steps = json.find("\"steps\"").unwrap();
        let i_t = json.find("\"t\"").unwrap();
        assert!(i_field < i_alpha && i_alpha < i_steps && i_steps < i_t);
    }

    #[test]
    fn every_polynomial_in_small_runs_survives_the_oracle() {
        // cross-oracle re-verification for runs whose polynomials stay
        // within the trial-division cap
        let s = f2();
        for f0 in crate::factorize::monic_irreducibles(&s, 3).unwrap() {
            let run = generate(&s, &s.one(), &f0, 24, 0).unwrap();
            for e in &run.history {
                let Some(poly) = &e.poly else { continue };
                if e.degree <= 18 {
                    let factors = oracle_factor(poly).unwrap();
                    assert_eq!(factors.len(), 1);
                    assert_eq!(factors[0].1, 1);
                }
            }
        }
    }
}
