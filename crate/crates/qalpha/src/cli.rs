//! The `qalpha` command-line surface.
//!
//! Exit codes are a stable contract: 0 success, 1 verification failure,
//! 2 usage or input errors. All machine output (json/dot/csv) is
//! deterministic given the arguments and `--seed`.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::detrand::DetRand;
use crate::dynamics::{self, build_graph};
use crate::error::{Error, Result};
use crate::factorize::{is_irreducible, monic_irreducibles, monic_polys, oracle_factor, split_q_image, SplitResult};
use crate::field::{conway, parse_spec_text, psi, FieldElement, FieldSpec, ProjectivePoint};
use crate::poly::Polynomial;
use crate::sequence::{generate, RunRecord};
use crate::transform::{kyuregyan_condition, meyn_condition, q_alpha_transform, q_transform};

/// Environment variable naming a file that replaces the bundled Conway
/// table (one `s:hexmodulus` line per degree).
pub const CONWAY_TABLE_ENV: &str = "QALPHA_CONWAY_TABLE";

#[derive(Parser, Debug)]
#[command(
    name = "qalpha",
    version,
    about = "Irreducible polynomial sequences over GF(2^s) via degree-doubling transforms"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Inspect a field spec: modulus, Conway lookup, generator order.
    Field(FieldArgs),
    /// Transform a polynomial and report the irreducible/split verdict.
    Transform(TransformArgs),
    /// Generate an irreducible sequence run and emit its record.
    Sequence(SequenceArgs),
    /// Build the functional graph of theta_alpha and export it.
    Graph(GraphArgs),
    /// Run a named verification suite.
    Verify(VerifyArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
    Csv,
}

#[derive(Args, Debug)]
pub struct FieldArgs {
    /// Field spec, e.g. `s=6,mod=0x5b` or `s=6,mod=conway`.
    #[arg(long)]
    pub field: String,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Write the output to a file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct TransformArgs {
    #[arg(long)]
    pub field: String,
    /// Element text: lowercase hex bits or `g^i`.
    #[arg(long)]
    pub alpha: String,
    /// Polynomial in canonical text, e.g. `poly[s=3]{1,0,0,1,3}`.
    #[arg(long)]
    pub poly: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SequenceArgs {
    #[arg(long)]
    pub field: String,
    #[arg(long)]
    pub alpha: String,
    /// Seed polynomial (irreducible monic).
    #[arg(long)]
    pub poly: String,
    #[arg(long = "target-degree")]
    pub target_degree: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct GraphArgs {
    #[arg(long)]
    pub field: String,
    #[arg(long)]
    pub alpha: String,
    #[arg(long, value_enum, default_value = "dot")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// One of: meyn, kyuregyan, structure, oracle, paper-examples.
    #[arg(long)]
    pub suite: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Parse a field spec, honoring the Conway-table override file when the
/// spec says `mod=conway` and the environment variable is set.
pub fn parse_field(text: &str) -> Result<FieldSpec> {
    let (s, modulus) = parse_spec_text(text)?;
    match modulus {
        Some(m) => FieldSpec::new(s, m),
        None => match std::env::var(CONWAY_TABLE_ENV) {
            Ok(path) => {
                let content = std::fs::read_to_string(&path).map_err(|e| {
                    Error::InvalidInput(format!("cannot read {CONWAY_TABLE_ENV} file {path}: {e}"))
                })?;
                let table = conway::parse_table(&content)?;
                let m = conway::lookup(&table, s).ok_or(Error::NoConwayEntry { s })?;
                FieldSpec::new(s, m)
            }
            Err(_) => FieldSpec::conway(s),
        },
    }
}

pub fn cmd_field(args: &FieldArgs) -> Result<String> {
    let spec = parse_field(&args.field)?;
    let modulus_poly = gf2_pretty(spec.modulus());
    let generator = spec.generator();
    match args.format {
        Format::Text => {
            let mut out = String::new();
            writeln!(out, "field: {}", spec.canonical_text()).unwrap();
            writeln!(out, "modulus: {:#x} ({modulus_poly})", spec.modulus()).unwrap();
            writeln!(out, "conway: {}", spec.is_conway()).unwrap();
            match &generator {
                Some(g) => {
                    writeln!(out, "generator: {} (order {})", g.to_hex(), spec.order()).unwrap()
                }
                None => writeln!(out, "generator: none").unwrap(),
            }
            Ok(out)
        }
        Format::Json => {
            let v = serde_json::json!({
                "field": spec.canonical_text(),
                "s": spec.s(),
                "modulus": format!("{:#x}", spec.modulus()),
                "modulus_pretty": modulus_poly,
                "conway": spec.is_conway(),
                "generator": generator.as_ref().map(|g| g.to_hex()),
                "generator_order": generator.as_ref().map(|_| spec.order()),
            });
            Ok(serde_json::to_string_pretty(&v).unwrap())
        }
        _ => Err(Error::InvalidInput(
            "field supports --format text|json".to_string(),
        )),
    }
}

pub fn cmd_transform(args: &TransformArgs) -> Result<String> {
    let spec = parse_field(&args.field)?;
    let alpha = FieldElement::parse(&args.alpha, &spec)?;
    let poly = Polynomial::parse(&args.poly, &spec)?;
    let n = poly.degree().ok_or(Error::ZeroPolynomial { op: "transform" })?;
    let image = q_alpha_transform(&poly, &alpha)?;
    let split = split_q_image(&image, n, args.seed)?;
    match args.format {
        Format::Text => {
            let mut out = String::new();
            writeln!(out, "input: {}", poly.canonical_text()).unwrap();
            writeln!(out, "image: {}", image.canonical_text()).unwrap();
            writeln!(out, "image (pretty): {}", image.pretty()).unwrap();
            match &split {
                SplitResult::Irreducible(_) => writeln!(out, "verdict: irreducible").unwrap(),
                SplitResult::Split(g1, g2) => {
                    writeln!(out, "verdict: split").unwrap();
                    writeln!(out, "g1: {}", g1.canonical_text()).unwrap();
                    writeln!(out, "g2: {}", g2.canonical_text()).unwrap();
                }
            }
            Ok(out)
        }
        Format::Json => {
            let (verdict, factors) = match &split {
                SplitResult::Irreducible(_) => ("irreducible", vec![]),
                SplitResult::Split(g1, g2) => {
                    ("split", vec![g1.canonical_text(), g2.canonical_text()])
                }
            };
            let v = serde_json::json!({
                "input": poly.canonical_text(),
                "alpha": alpha.to_hex(),
                "image": image.canonical_text(),
                "verdict": verdict,
                "factors": factors,
            });
            Ok(serde_json::to_string_pretty(&v).unwrap())
        }
        _ => Err(Error::InvalidInput(
            "transform supports --format text|json".to_string(),
        )),
    }
}

pub fn cmd_sequence(args: &SequenceArgs) -> Result<String> {
    let spec = parse_field(&args.field)?;
    let alpha = FieldElement::parse(&args.alpha, &spec)?;
    let poly = Polynomial::parse(&args.poly, &spec)?;
    let run = generate(&spec, &alpha, &poly, args.target_degree, args.seed)?;
    let record = RunRecord::new(&run);
    match args.format {
        Format::Json => Ok(record.to_json()),
        Format::Text => {
            let report = crate::sequence::verify_run(&run);
            let mut out = String::new();
            writeln!(out, "field: {}", spec.canonical_text()).unwrap();
            writeln!(out, "alpha: {}", alpha.to_hex()).unwrap();
            writeln!(out, "seed: {}", run.seed_poly.canonical_text()).unwrap();
            writeln!(out, "degrees: {:?}", run.degrees()).unwrap();
            writeln!(out, "t: {:?}", run.doubling_step).unwrap();
            writeln!(out, "backtracked: {}", run.backtracked).unwrap();
            writeln!(out, "verification: {}", if report.passed { "pass" } else { "FAIL" })
                .unwrap();
            Ok(out)
        }
        _ => Err(Error::InvalidInput(
            "sequence supports --format json|text".to_string(),
        )),
    }
}

pub fn cmd_graph(args: &GraphArgs) -> Result<String> {
    let spec = parse_field(&args.field)?;
    let alpha = FieldElement::parse(&args.alpha, &spec)?;
    let graph = build_graph(&spec, &alpha)?;
    match args.format {
        Format::Dot => Ok(dynamics::export_dot(&graph)),
        Format::Json => Ok(dynamics::export_json(&graph)),
        Format::Csv => Ok(dynamics::export_csv(&graph)),
        Format::Text => Err(Error::InvalidInput(
            "graph supports --format dot|json|csv".to_string(),
        )),
    }
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<(String, bool)> {
    let report = run_suite(&args.suite, args.seed)?;
    let ok = report.failed == 0;
    let out = match args.format {
        Format::Text => report.render_text(),
        Format::Json => report.render_json(),
        _ => {
            return Err(Error::InvalidInput(
                "verify supports --format text|json".to_string(),
            ))
        }
    };
    Ok((out, ok))
}

/// Outcome of one verification suite.
#[derive(Debug)]
pub struct SuiteReport {
    pub name: &'static str,
    pub passed: usize,
    pub failed: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(name: &'static str) -> Self {
        SuiteReport {
            name,
            passed: 0,
            failed: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
            if self.failures.len() < 20 {
                self.failures.push(describe());
            }
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = format!(
            "suite {}: {}/{} checks passed\n",
            self.name,
            self.passed,
            self.passed + self.failed
        );
        for f in &self.failures {
            writeln!(out, "  FAIL: {f}").unwrap();
        }
        if self.failed > self.failures.len() {
            writeln!(out, "  ... and {} more", self.failed - self.failures.len()).unwrap();
        }
        out
    }

    pub fn render_json(&self) -> String {
        let v = serde_json::json!({
            "suite": self.name,
            "passed": self.passed,
            "failed": self.failed,
            "failures": self.failures,
        });
        serde_json::to_string_pretty(&v).unwrap()
    }
}

pub fn run_suite(name: &str, seed: u64) -> Result<SuiteReport> {
    match name {
        "meyn" => suite_meyn(),
        "kyuregyan" => suite_kyuregyan(),
        "structure" => suite_structure(seed),
        "oracle" => suite_oracle(seed),
        "paper-examples" => suite_paper_examples(seed),
        other => Err(Error::InvalidInput(format!(
            "unknown suite `{other}` (expected meyn, kyuregyan, structure, oracle, paper-examples)"
        ))),
    }
}

/// All self-reciprocal monic polynomials of the given degree over GF(2)
/// with nonzero constant term.
fn palindromes_gf2(spec: &FieldSpec, n: usize) -> Vec<Polynomial> {
    let free = n / 2;
    let mut out = Vec::new();
    for mask in 0..(1u64 << free) {
        let mut coeffs = vec![0u64; n + 1];
        coeffs[0] = 1;
        coeffs[n] = 1;
        for i in 1..=free {
            let bit = (mask >> (i - 1)) & 1;
            coeffs[i] = bit;
            coeffs[n - i] = bit;
        }
        out.push(Polynomial::from_coeff_bits(spec, coeffs).unwrap());
    }
    out
}

/// Closure of the Q-transform on self-reciprocal irreducible monic
/// polynomials with trace-one subleading coefficient, exhaustively over
/// GF(2) up to degree 12.
pub fn suite_meyn() -> Result<SuiteReport> {
    let mut report = SuiteReport::new("meyn");
    let spec = FieldSpec::conway(1)?;
    for n in 1..=12usize {
        for f in palindromes_gf2(&spec, n) {
            if !is_irreducible(&f)? || f.coeff(n - 1).trace() != 1 {
                continue;
            }
            debug_assert!(meyn_condition(&f)?);
            let image = q_transform(&f)?;
            let ok = is_irreducible(&image)?
                && image.is_self_reciprocal()?
                && meyn_condition(&image)?;
            report.check(ok, || format!("closure fails at {}", f.canonical_text()));
        }
    }
    if report.passed + report.failed == 0 {
        report.check(false, || "no qualifying polynomials enumerated".to_string());
    }
    Ok(report)
}

/// Closure of the (Q, delta^2)-iteration on irreducible polynomials whose
/// coefficients satisfy both trace conditions, over GF(2) and GF(4) up to
/// degree 6, for four sequence members.
pub fn suite_kyuregyan() -> Result<SuiteReport> {
    let mut report = SuiteReport::new("kyuregyan");
    for s in [1u32, 2] {
        let spec = FieldSpec::conway(s)?;
        for n in 1..=6usize {
            for f in monic_irreducibles(&spec, n)? {
                for dbits in 1..spec.element_count() {
                    let delta = spec.element_from_bits(dbits)?;
                    let satisfied = match kyuregyan_condition(&f, &delta) {
                        Ok(v) => v,
                        Err(Error::InvalidInput(_)) => continue, // f = x
                        Err(e) => return Err(e),
                    };
                    if !satisfied {
                        continue;
                    }
                    let alpha = delta.square();
                    let mut cur = f.clone();
                    let mut ok = true;
                    for k in 2..=4usize {
                        cur = q_alpha_transform(&cur, &alpha)?;
                        if !is_irreducible(&cur)? || cur.degree() != Some(n << (k - 1)) {
                            ok = false;
                            break;
                        }
                    }
                    report.check(ok, || {
                        format!(
                            "iteration leaves irreducibility at {} with delta {}",
                            f.canonical_text(),
                            delta.to_hex()
                        )
                    });
                }
            }
        }
    }
    Ok(report)
}

/// Structure of the theta graphs for s = 1..8: cycles with equal-depth
/// trees, the depth dichotomy on finite components, census totals,
/// signature invariance across alpha, and edge-exact transport of the
/// alpha = 1 graph under scaling by sqrt(alpha).
pub fn suite_structure(seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("structure");
    for s in 1..=8u32 {
        let spec = FieldSpec::conway(s)?;
        let one = spec.one();
        let base = build_graph(&spec, &one)?;
        let mut base_sigs: Vec<_> = base.components().to_vec();
        base_sigs.sort();
        let l = s.trailing_zeros() as usize;

        let mut rng = DetRand::new(seed, s as u64);
        let alphas: Vec<FieldElement> = (0..10)
            .map(|_| spec.element_from_bits(1 + rng.below(spec.order())))
            .collect::<Result<_>>()?;
        for alpha in alphas {
            let g = build_graph(&spec, &alpha)?;
            let total: usize = g.components().iter().map(|c| c.vertex_count).sum();
            report.check(total == spec.element_count() as usize + 1, || {
                format!("s={s}: vertex census {total} is off")
            });
            for (c, sig) in g.components().iter().enumerate() {
                let depths = g.tree_depths(c);
                report.check(
                    depths.iter().all(|&d| d == depths[0]),
                    || format!("s={s} alpha={}: unequal tree depths", g.alpha()),
                );
                if !sig.contains_infinity {
                    report.check(
                        sig.tree_depth == 1 || sig.tree_depth == l + 2,
                        || {
                            format!(
                                "s={s} alpha={}: finite component depth {}",
                                g.alpha(),
                                sig.tree_depth
                            )
                        },
                    );
                }
            }
            let mut sigs: Vec<_> = g.components().to_vec();
            sigs.sort();
            report.check(sigs == base_sigs, || {
                format!("s={s} alpha={}: signature multiset differs", g.alpha())
            });

            // relabeling by psi_gamma, gamma = sqrt(alpha), transports edges
            let gamma = alpha.sqrt();
            let mut transported = true;
            for bits in 0..spec.element_count() {
                let p = ProjectivePoint::finite(spec.element_from_bits(bits)?);
                let lhs = psi(&base.successor(&p)?, &gamma)?;
                let rhs = g.successor(&psi(&p, &gamma)?)?;
                if lhs != rhs {
                    transported = false;
                    break;
                }
            }
            let inf_ok = g.successor(&ProjectivePoint::Infinity)? == ProjectivePoint::Infinity;
            report.check(transported && inf_ok, || {
                format!("s={s} alpha={}: psi relabeling is not edge-exact", g.alpha())
            });
        }
    }
    Ok(report)
}

/// Rabin vs exhaustive trial division on every monic polynomial of degree
/// <= 6 over GF(2) and <= 3 over GF(4)/GF(8), plus split products.
pub fn suite_oracle(seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("oracle");
    for (s, max_deg) in [(1u32, 6usize), (2, 3), (3, 3)] {
        let spec = FieldSpec::conway(s)?;
        for d in 1..=max_deg {
            for f in monic_polys(&spec, d) {
                let fast = is_irreducible(&f)?;
                let factors = oracle_factor(&f)?;
                let slow = factors.len() == 1 && factors[0].1 == 1;
                report.check(fast == slow, || {
                    format!("s={s}: disagreement on {}", f.canonical_text())
                });
            }
        }
    }
    // splits reproduce their input on multiplication
    let spec = FieldSpec::conway(3)?;
    let a = spec.x_element();
    let f0 = Polynomial::from_coeff_bits(&spec, vec![a.pow(3).bits(), 1, 0, 0, 1])?;
    let image = q_alpha_transform(&f0, &a)?;
    match split_q_image(&image, 4, seed)? {
        SplitResult::Split(g1, g2) => {
            report.check(g1.mul(&g2)? == image, || {
                "split factors do not multiply back".to_string()
            });
        }
        SplitResult::Irreducible(_) => {
            report.check(false, || "expected the quartic image to split".to_string());
        }
    }
    Ok(report)
}

/// The two worked examples: the GF(8) sequence with its exact split factor,
/// and the degree-6 Conway graph census with its named edges.
pub fn suite_paper_examples(seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("paper-examples");

    // GF(8) sequence
    let spec = FieldSpec::conway(3)?;
    let a = spec.x_element();
    let f0 = Polynomial::from_coeff_bits(&spec, vec![a.pow(3).bits(), 1, 0, 0, 1])?;
    let image = q_alpha_transform(&f0, &a)?;
    report.check(!is_irreducible(&image)?, || {
        "first image should split".to_string()
    });
    let known = Polynomial::from_coeff_bits(
        &spec,
        vec![a.pow(6).bits(), a.pow(2).bits(), 1, a.pow(4).bits(), 1],
    )?;
    match split_q_image(&image, 4, seed)? {
        SplitResult::Split(g1, g2) => {
            report.check(g1 == known || g2 == known, || {
                format!(
                    "split factors {} / {} miss the known quartic",
                    g1.canonical_text(),
                    g2.canonical_text()
                )
            });
        }
        SplitResult::Irreducible(_) => report.check(false, || "image did not split".to_string()),
    }
    let f2poly = q_alpha_transform(&known, &a)?;
    report.check(
        is_irreducible(&f2poly)? && f2poly.degree() == Some(8),
        || "second member is not an irreducible octic".to_string(),
    );
    let f3poly = q_alpha_transform(&f2poly, &a)?;
    report.check(
        is_irreducible(&f3poly)? && f3poly.degree() == Some(16),
        || "third member is not irreducible of degree 16".to_string(),
    );
    let run = generate(&spec, &a, &f0, 16, seed)?;
    report.check(run.degrees() == vec![4, 4, 8, 16], || {
        format!("run degrees {:?}", run.degrees())
    });

    // degree-6 Conway graph
    let spec6 = FieldSpec::conway(6)?;
    let alpha6 = spec6.x_element();
    let g = build_graph(&spec6, &alpha6)?;
    let mut sigs: Vec<_> = g
        .components()
        .iter()
        .map(|c| (c.cycle_length, c.tree_depth, c.vertex_count, c.contains_infinity))
        .collect();
    sigs.sort();
    report.check(
        sigs == vec![
            (1, 3, 5, true),
            (3, 3, 24, false),
            (9, 1, 18, false),
            (9, 1, 18, false),
        ],
        || format!("component census {sigs:?}"),
    );
    let gen = spec6.generator().expect("conway spec is labeled");
    let at = |e: u64| ProjectivePoint::finite(gen.pow(e));
    let zero = ProjectivePoint::finite(spec6.zero());
    report.check(g.successor(&at(5))? == at(23), || "edge 5 -> 23".to_string());
    report.check(g.successor(&at(32))? == zero, || "edge 32 -> zero".to_string());
    report.check(
        g.successor(&zero)? == ProjectivePoint::Infinity,
        || "edge zero -> inf".to_string(),
    );
    report.check(
        g.successor(&ProjectivePoint::Infinity)? == ProjectivePoint::Infinity,
        || "edge inf -> inf".to_string(),
    );
    let mut pre: Vec<u64> = g
        .predecessors(&at(32))?
        .iter()
        .map(|p| p.as_finite().unwrap().dlog().unwrap())
        .collect();
    pre.sort_unstable();
    report.check(pre == vec![11, 53], || format!("preimages of 32: {pre:?}"));

    Ok(report)
}

fn gf2_pretty(bits: u64) -> String {
    let mut terms = Vec::new();
    for i in (0..64).rev() {
        if (bits >> i) & 1 == 1 {
            terms.push(match i {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            });
        }
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

fn deliver(output: &str, out: &Option<PathBuf>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, output)
            .map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{output}");
            if !output.ends_with('\n') {
                println!();
            }
            Ok(())
        }
    }
}

/// Entry point used by the binary; returns the process exit code.
pub fn main_from_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let (result, out): (Result<(String, bool)>, Option<PathBuf>) = match &cli.command {
        Command::Field(a) => (cmd_field(a).map(|s| (s, true)), a.out.clone()),
        Command::Transform(a) => (cmd_transform(a).map(|s| (s, true)), a.out.clone()),
        Command::Sequence(a) => (cmd_sequence(a).map(|s| (s, true)), a.out.clone()),
        Command::Graph(a) => (cmd_graph(a).map(|s| (s, true)), a.out.clone()),
        Command::Verify(a) => (cmd_verify(a), a.out.clone()),
    };
    match result {
        Ok((output, ok)) => {
            if let Err(e) = deliver(&output, &out) {
                eprintln!("error: {e}");
                return 2;
            }
            if ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
