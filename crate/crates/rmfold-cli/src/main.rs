//! Command-line front end: code inspection, gate synthesis, theorem
//! verification sweeps, depth-bound calculation, and circuit import/check.
//!
//! Exit codes: 0 pass, 1 verification failure, 2 usage or parse error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use rmfold::bound::{depth_lower_bound, ratio_to_f64, CliffordCountFormula};
use rmfold::circuit::Circuit;
use rmfold::error::Error;
use rmfold::oracle::{encoded_logical_unitary, tableau_matches_unitary, ORACLE_M_CAP};
use rmfold::qrm::{LogicalSpec, QrmCode, ReductionChoice};
use rmfold::synth::{
    compile_clifford, synth_cz00, synth_derived, synth_h, synth_s, synth_sw, DepthReport,
    DerivedKind,
};
use rmfold::tableau::{
    diagonal_word, format_logical, format_word, logical_action, preserves_stabilizers,
    LogicalTableau,
};
use rmfold::verify::{default_ms, default_sample, run_theorem, SweepOutcome, THEOREM_LABELS};
use rmfold::IndexSet;

#[derive(Parser)]
#[command(
    name = "rmfold",
    version,
    about = "Quantum Reed-Muller codes: construction, fold-transversal gate synthesis, and theorem verification"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print code parameters, stabilizer generators, and logical operators.
    Code {
        /// Even code parameter m (n = 2^m).
        #[arg(long)]
        m: usize,
        /// Show the weight-reduced generating set instead of the canonical one.
        #[arg(long)]
        reduced: bool,
        /// Comma-separated index choice for the reduced empty-label row,
        /// e.g. --h-empty 4 (default: smallest indices outside the label).
        #[arg(long, value_name = "IDXS")]
        h_empty: Option<String>,
        /// Also print the logical X/Z operator table.
        #[arg(long)]
        logicals: bool,
        /// Emit the machine-readable code description.
        #[arg(long)]
        json: bool,
    },
    /// Synthesize an addressable logical gate as gate layers.
    Synth {
        #[command(subcommand)]
        gate: SynthCmd,
    },
    /// Run a theorem verification sweep.
    Verify {
        /// One of: prop1, prop2, lemmas, thm1, thm2, thm3, thm4, thm5,
        /// cor5, thm6, thm7, tables-m4.
        #[arg(long)]
        theorem: String,
        /// m values: a single value (4), a range (2..8), or a list (2,4,6).
        #[arg(long)]
        m: Option<String>,
        /// Supplemental seeded sample size for K sweeps at m >= 8.
        #[arg(long)]
        sample: Option<u64>,
        /// Emit the machine-readable sweep report.
        #[arg(long)]
        json: bool,
    },
    /// Evaluate the depth lower bound log|C_k| / log N_(l,n).
    Bound {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
    },
    /// Parse a circuit JSON file, check stabilizer preservation, and report
    /// the logical action.
    Check {
        path: PathBuf,
        /// Cross-check the file's m value.
        #[arg(long)]
        m: Option<usize>,
        /// Emit the logical tableau as JSON.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum SynthCmd {
    /// Addressable logical phase gate.
    S(SingleArgs),
    /// Addressable logical inverse phase gate.
    Sdg(SingleArgs),
    /// Addressable logical Hadamard.
    H(SingleArgs),
    /// Addressable logical X.
    X(SingleArgs),
    /// Addressable logical Z.
    Z(SingleArgs),
    /// Addressable logical swap.
    Sw(PairArgs),
    /// Addressable zero-controlled Z.
    Cz00(PairArgs),
    /// Addressable controlled-Z.
    Cz11(PairArgs),
    /// Addressable controlled-X (first operand controls).
    Cx(PairArgs),
    /// Compile an arbitrary logical Clifford tableau from JSON.
    Tableau {
        /// Tableau JSON file: {"k":., "x_images":[...], "z_images":[...]}.
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Cross-check against the dense state-vector oracle (m <= 4).
        #[arg(long)]
        oracle: bool,
    },
}

#[derive(clap::Args)]
struct SingleArgs {
    /// Logical qubit: canonical position (2) or index set (1,3).
    #[arg(long)]
    qubit: String,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Cross-check against the dense state-vector oracle (m <= 4).
    #[arg(long)]
    oracle: bool,
}

#[derive(clap::Args)]
struct PairArgs {
    /// Two logical qubits: positions or {..} sets, comma separated,
    /// e.g. 2,3 or {1,3},{1,4}.
    #[arg(long)]
    qubits: String,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Cross-check against the dense state-vector oracle (m <= 4).
    #[arg(long)]
    oracle: bool,
}

fn main() -> ExitCode {
    // Die quietly when stdout closes early (e.g. piped to head).
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::NotStabilizerPreserving { .. }
        | Error::OutsideNormalizer { .. }
        | Error::SynthesisValidation { .. }
        | Error::OracleLeftCodeSpace(_)
        | Error::NonSymplecticTarget(_) => 1,
        _ => 2,
    }
}

fn workers() -> usize {
    std::env::var("QRM_WORKERS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&w| w >= 1)
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|p| p.get())
                .unwrap_or(1)
        })
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.cmd {
        Cmd::Code {
            m,
            reduced,
            h_empty,
            logicals,
            json,
        } => cmd_code(m, reduced, h_empty, logicals, json),
        Cmd::Synth { gate } => cmd_synth(gate),
        Cmd::Verify {
            theorem,
            m,
            sample,
            json,
        } => cmd_verify(&theorem, m, sample, json),
        Cmd::Bound { n, k, l } => cmd_bound(n, k, l),
        Cmd::Check { path, m, json } => cmd_check(&path, m, json),
    }
}

fn parse_index_list(text: &str, m: usize) -> Result<Vec<usize>, Error> {
    text.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("invalid index {tok:?} (expected 1..={m})")))
        })
        .collect()
}

fn cmd_code(
    m: usize,
    reduced: bool,
    h_empty: Option<String>,
    logicals: bool,
    json: bool,
) -> Result<ExitCode, Error> {
    let code = QrmCode::build(m)?;
    let choice = match h_empty {
        None => ReductionChoice::default(),
        Some(text) => ReductionChoice::default()
            .with_override(IndexSet::empty(m), parse_index_list(&text, m)?),
    };
    let reduction = reduced.then_some(&choice);
    if json {
        let desc = code.description(reduction)?;
        println!("{}", serde_json::to_string_pretty(&desc).expect("serializes"));
        return Ok(ExitCode::SUCCESS);
    }
    println!(
        "QRM({m}): [[{}, {}, {}]] self-dual code, stabilizers from RM({}, {m})",
        code.n(),
        code.k(),
        code.d(),
        m / 2 - 1
    );
    let render = |support: &rmfold::BitVector, letter: char| -> String {
        (0..code.n())
            .map(|p| if support.get(p) { letter } else { '.' })
            .collect()
    };
    let supports = match reduction {
        None => code.stabilizer_supports().to_vec(),
        Some(choice) => code.weight_reduced_stabilizers(choice)?,
    };
    let name = if reduced { "h" } else { "g" };
    println!("X-type stabilizer generators ({name}_x(A)):");
    for (label, support) in code.stabilizer_labels().iter().zip(&supports) {
        println!("  A={:<10} {}", label.to_string(), render(support, 'X'));
    }
    println!("Z-type stabilizer generators ({name}_z(A)):");
    for (label, support) in code.stabilizer_labels().iter().zip(&supports) {
        println!("  A={:<10} {}", label.to_string(), render(support, 'Z'));
    }
    if logicals {
        println!("Logical X operators (X(B) = X(v_B)):");
        for (i, l) in code.logicals().iter().enumerate() {
            println!(
                "  {:>3} B={:<8} {}",
                l.position,
                l.b.to_string(),
                render(code.logical_x_support(i), 'X')
            );
        }
        println!("Logical Z operators (Z(B) = Z(v_(B^c))):");
        for (i, l) in code.logicals().iter().enumerate() {
            println!(
                "  {:>3} B={:<8} {}",
                l.position,
                l.b.to_string(),
                render(code.logical_z_support(i), 'Z')
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// `2` resolves to the canonical position; `1,3` or `{1,3}` to a label set.
fn parse_operand(text: &str, m: usize) -> Result<LogicalSpec, Error> {
    let t = text.trim().trim_start_matches('{').trim_end_matches('}');
    if t.contains(',') {
        Ok(LogicalSpec::Set(IndexSet::new(m, parse_index_list(t, m)?)?))
    } else {
        let pos: usize = t
            .parse()
            .map_err(|_| Error::Parse(format!("invalid logical operand {text:?}")))?;
        Ok(LogicalSpec::Position(pos))
    }
}

/// Split a pair operand on the comma separating the two items, honoring
/// `{..}` groups.
fn parse_pair(text: &str, m: usize) -> Result<(LogicalSpec, LogicalSpec), Error> {
    let bytes = text.as_bytes();
    let mut depth = 0usize;
    for (i, &b) in bytes.iter().enumerate() {
        match b {
            b'{' => depth += 1,
            b'}' => depth = depth.saturating_sub(1),
            b',' if depth == 0 => {
                return Ok((
                    parse_operand(&text[..i], m)?,
                    parse_operand(&text[i + 1..], m)?,
                ));
            }
            _ => {}
        }
    }
    Err(Error::Parse(format!(
        "pair operand {text:?} needs two comma-separated logical qubits"
    )))
}

fn cmd_synth(gate: SynthCmd) -> Result<ExitCode, Error> {
    let (circuit, asymptotic, m, out, oracle) = match gate {
        SynthCmd::S(a) => synth_single(&a, "sqrt(n)", |code, b| synth_s(code, b, false))?,
        SynthCmd::Sdg(a) => synth_single(&a, "sqrt(n)", |code, b| synth_s(code, b, true))?,
        SynthCmd::H(a) => synth_single(&a, "sqrt(n)", synth_h)?,
        SynthCmd::X(a) => synth_single(&a, "sqrt(n)", |code, b| {
            synth_derived(code, DerivedKind::X, b, None)
        })?,
        SynthCmd::Z(a) => synth_single(&a, "sqrt(n)", |code, b| {
            synth_derived(code, DerivedKind::Z, b, None)
        })?,
        SynthCmd::Sw(a) => synth_pair(&a, "sqrt(n)·log(n)", synth_sw)?,
        SynthCmd::Cz00(a) => synth_pair(&a, "sqrt(n)·log(n)", synth_cz00)?,
        SynthCmd::Cz11(a) => synth_pair(&a, "sqrt(n)·log(n)", |code, b1, b2| {
            synth_derived(code, DerivedKind::Cz11, b1, Some(b2))
        })?,
        SynthCmd::Cx(a) => synth_pair(&a, "sqrt(n)·log(n)", |code, b1, b2| {
            synth_derived(code, DerivedKind::Cx, b1, Some(b2))
        })?,
        SynthCmd::Tableau {
            file,
            m,
            out,
            oracle,
        } => {
            let text = std::fs::read_to_string(&file)
                .map_err(|e| Error::Parse(format!("{}: {e}", file.display())))?;
            let value: serde_json::Value = serde_json::from_str(&text)
                .map_err(|e| Error::Parse(format!("{}: {e}", file.display())))?;
            let target = LogicalTableau::from_json(&value)?;
            let code = QrmCode::build(m)?;
            let circuit = compile_clifford(&code, &target)?;
            (circuit, "other", m, out, oracle)
        }
    };
    let code = QrmCode::build(m)?;
    if oracle {
        check_against_oracle(&circuit, &code)?;
    }
    let report = DepthReport::of_circuit(&circuit, asymptotic);
    let action = circuit
        .meta()
        .get("action")
        .and_then(|v| v.as_str())
        .unwrap_or("?")
        .to_string();
    match out {
        Some(path) => {
            std::fs::write(&path, circuit.to_json())
                .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            println!("verified logical {action} on QRM({m}) -> {}", path.display());
            println!("{}", serde_json::to_string(&report).expect("serializes"));
        }
        None => {
            let combined = serde_json::json!({
                "circuit": serde_json::to_value(&circuit).expect("serializes"),
                "depth_report": serde_json::to_value(&report).expect("serializes"),
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&combined).expect("serializes")
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn check_against_oracle(circuit: &Circuit, code: &QrmCode) -> Result<(), Error> {
    if code.m() > ORACLE_M_CAP {
        return Err(Error::OracleDimensionCap {
            m: code.m(),
            cap: ORACLE_M_CAP,
        });
    }
    let u = encoded_logical_unitary(circuit, code)?;
    let t = logical_action(circuit, code)?;
    if !tableau_matches_unitary(&t, &u, 1e-10) {
        return Err(Error::SynthesisValidation {
            gate: "oracle cross-check".to_string(),
            detail: "dense state-vector action disagrees with the tableau".to_string(),
        });
    }
    Ok(())
}

fn synth_single(
    args: &SingleArgs,
    asymptotic: &'static str,
    f: impl Fn(&QrmCode, &IndexSet) -> Result<Circuit, Error>,
) -> Result<(Circuit, &'static str, usize, Option<PathBuf>, bool), Error> {
    let code = QrmCode::build(args.m)?;
    let spec = parse_operand(&args.qubit, args.m)?;
    let lidx = code.resolve(&spec)?;
    let circuit = f(&code, &lidx.b)?;
    Ok((circuit, asymptotic, args.m, args.out.clone(), args.oracle))
}

fn synth_pair(
    args: &PairArgs,
    general_asymptotic: &'static str,
    f: impl Fn(&QrmCode, &IndexSet, &IndexSet) -> Result<Circuit, Error>,
) -> Result<(Circuit, &'static str, usize, Option<PathBuf>, bool), Error> {
    let code = QrmCode::build(args.m)?;
    let (s1, s2) = parse_pair(&args.qubits, args.m)?;
    let l1 = code.resolve(&s1)?;
    let l2 = code.resolve(&s2)?;
    let circuit = f(&code, &l1.b, &l2.b)?;
    // Adjacent operands avoid the swap-chain conjugation.
    let asymptotic = if l1.b.intersection(&l2.b).len() == args.m / 2 - 1 {
        "sqrt(n)"
    } else {
        general_asymptotic
    };
    Ok((circuit, asymptotic, args.m, args.out.clone(), args.oracle))
}

fn parse_m_range(text: &str) -> Result<Vec<usize>, Error> {
    let bad = |t: &str| Error::Parse(format!("invalid m specification {t:?}"));
    if let Some((lo, hi)) = text.split_once("..") {
        let lo: usize = lo.trim().parse().map_err(|_| bad(text))?;
        let hi: usize = hi.trim().parse().map_err(|_| bad(text))?;
        Ok((lo..=hi).filter(|m| m % 2 == 0).collect())
    } else if text.contains(',') {
        text.split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| bad(text)))
            .collect()
    } else {
        Ok(vec![text.trim().parse().map_err(|_| bad(text))?])
    }
}

fn cmd_verify(
    theorem: &str,
    m: Option<String>,
    sample: Option<u64>,
    json: bool,
) -> Result<ExitCode, Error> {
    if !THEOREM_LABELS.contains(&theorem) {
        return Err(Error::UnknownTheorem(theorem.to_string()));
    }
    let ms = match m {
        Some(text) => parse_m_range(&text)?,
        None => default_ms(theorem),
    };
    let sample = sample.or_else(|| default_sample(theorem));
    let outcome = run_theorem(theorem, &ms, sample, workers())?;
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&outcome).expect("serializes")
        );
    } else {
        print_outcome(&outcome);
    }
    Ok(if outcome.pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn print_outcome(outcome: &SweepOutcome) {
    for run in &outcome.per_m {
        let sampled = match run.sampled {
            Some(s) => format!(" (exhaustive + {s} sampled)"),
            None => String::new(),
        };
        println!(
            "{} m={}: {} checks in {} ms{sampled}",
            outcome.theorem, run.m, run.checks, run.millis
        );
    }
    if let Some(seed) = outcome.seed {
        println!("sampling seed: {seed:#x}");
    }
    if outcome.pass() {
        println!(
            "{}: PASS ({} checks)",
            outcome.theorem,
            outcome.total_checks()
        );
    } else {
        println!(
            "{}: FAIL ({} failures out of {} checks)",
            outcome.theorem,
            outcome.failures.len(),
            outcome.total_checks()
        );
        for f in &outcome.failures {
            println!("  {f}");
        }
    }
}

fn cmd_bound(n: usize, k: usize, l: usize) -> Result<ExitCode, Error> {
    println!("depth lower bound: log |C_k| / log N_(l,n) with n={n}, k={k}, l={l}");
    for (name, formula) in [
        ("product: 2^(k^2+2k) prod_j (4^j-1)", CliffordCountFormula::Product),
        ("sum:     2^(k^2+2k) sum_j (4^j-1)", CliffordCountFormula::Sum),
    ] {
        let trace = depth_lower_bound(n, k, l, formula)?;
        println!("|C_k| ({name}) = {}", trace.c_k);
        println!("  single-layer count N <= {}", trace.layer_bound);
        println!(
            "  bound = {} ~ {:.12}",
            trace.value,
            ratio_to_f64(&trace.value)
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_check(path: &PathBuf, m: Option<usize>, json: bool) -> Result<ExitCode, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let circuit = Circuit::from_json(&text)?;
    if let Some(m) = m {
        if circuit.m() != m {
            return Err(Error::MMismatch {
                circuit_m: circuit.m(),
                code_m: m,
            });
        }
    }
    let code = QrmCode::build(circuit.m())?;
    println!(
        "circuit on QRM({}): {} layers, {} gates",
        circuit.m(),
        circuit.depth(),
        circuit
            .layers()
            .iter()
            .map(|l| l.gates().len())
            .sum::<usize>()
    );
    match preserves_stabilizers(&circuit, &code) {
        Err(w) => {
            println!("stabilizer preservation: FAIL");
            println!(
                "  witness: {}-type generator A={} maps to {:?}",
                w.kind, w.label, w.image
            );
            Ok(ExitCode::from(1))
        }
        Ok(()) => {
            println!("stabilizer preservation: PASS");
            let tableau = logical_action(&circuit, &code)?;
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&tableau.to_json()).expect("serializes")
                );
            } else {
                println!("logical action (signed Pauli images):");
                for i in 0..tableau.k() {
                    println!("  X({}) -> {}", i + 1, format_logical(tableau.x_row(i)));
                }
                for i in 0..tableau.k() {
                    println!("  Z({}) -> {}", i + 1, format_logical(tableau.z_row(i)));
                }
                if tableau.is_identity() {
                    println!("identity tableau");
                } else if let Some(word) = diagonal_word(&tableau) {
                    println!("diagonal decomposition: {}", format_word(&word));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}
