//! Deterministic batch front end over the whole library.
//!
//! One subcommand per capability: `basis`, `boundary`, `homology`,
//! `check-closed`, `pairing`, `strata`, `aut`, `selftest`. Every artifact is
//! written to standard output (or `--output`) and embeds the convention
//! flags it was produced under, so files remain interpretable on their own.
//!
//! Exit codes: 0 = success, 1 = a mathematical check failed (input not
//! closed, audit violation, …), 2 = unusable input (bad flags, unreadable
//! file, malformed JSON). Failures print `{"error":{"kind":…,"message":…}}`
//! on standard error. Outputs are byte-identical across repeated runs with
//! the same configuration; `GCX_THREADS` caps the worker count without
//! affecting results.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{ArgAction, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::complex::{
    boundary_matrix, build_complex, check_closed, enumerate_basis, gamma_pairing, homology,
    Basis, ComplexError, HomologyTable, PairingEntry, Parity, Ring, SignedGraphSum,
};
use crate::graph::{Graph, GraphError, GraphIso};
use crate::intlinalg::{LinAlgError, SparseIntMatrix};
use crate::signed_perm::{PermError, SgnPrimeMode, SignedPerm};
use crate::strata::{
    cancellation_audit_with_mode, dimension_report, AuditReport, DimensionReport, StrataError,
};

/// Exit status plus a machine-readable reason.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub kind: String,
    pub message: String,
    pub code: i32,
}

impl CliError {
    /// Malformed input or unusable configuration → exit 2.
    pub fn input(kind: &str, message: impl Into<String>) -> Self {
        CliError { kind: kind.into(), message: message.into(), code: 2 }
    }

    /// Well-formed input failing a mathematical check → exit 1.
    pub fn check(kind: &str, message: impl Into<String>) -> Self {
        CliError { kind: kind.into(), message: message.into(), code: 1 }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::input("io", e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::input("json", e.to_string())
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        CliError::input("graph", e.to_string())
    }
}

impl From<PermError> for CliError {
    fn from(e: PermError) -> Self {
        CliError::input("permutation", e.to_string())
    }
}

impl From<LinAlgError> for CliError {
    fn from(e: LinAlgError) -> Self {
        CliError::input("matrix", e.to_string())
    }
}

impl From<ComplexError> for CliError {
    fn from(e: ComplexError) -> Self {
        match &e {
            ComplexError::NotClosed => CliError::check("not-closed", e.to_string()),
            ComplexError::PairingNotFound(_) => CliError::check("pairing-not-found", e.to_string()),
            ComplexError::Graph(_) => CliError::input("graph", e.to_string()),
            ComplexError::BasisMismatch(_) => CliError::input("basis-mismatch", e.to_string()),
            ComplexError::MixedBidegree => CliError::input("mixed-bidegree", e.to_string()),
        }
    }
}

impl From<StrataError> for CliError {
    fn from(e: StrataError) -> Self {
        match e {
            StrataError::Graph(g) => g.into(),
            StrataError::Complex(c) => c.into(),
            StrataError::Perm(p) => p.into(),
            StrataError::SubsetTooSmall(_) | StrataError::LabelOutOfRange { .. } => {
                CliError::input("subset", e.to_string())
            }
            StrataError::NotClosed => CliError::check("not-closed", e.to_string()),
            StrataError::NotTrivalent => CliError::check("not-trivalent", e.to_string()),
            StrataError::Unclassifiable(_) => CliError::check("unclassifiable", e.to_string()),
            StrataError::NotTypeTwo => CliError::check("not-type-two", e.to_string()),
            StrataError::NotAPair(_) => CliError::check("not-a-pair", e.to_string()),
            StrataError::RepeatedEdgesStrictMode => {
                CliError::check("repeated-edges", e.to_string())
            }
            StrataError::AuditFailure(_) => CliError::check("audit-failure", e.to_string()),
        }
    }
}

fn parse_parity(s: &str) -> Result<Parity, String> {
    match s {
        "odd" => Ok(Parity::Odd),
        "even" => Ok(Parity::Even),
        _ => Err(format!("unknown parity {s:?} (expected odd or even)")),
    }
}

fn parse_ring(s: &str) -> Result<Ring, String> {
    match s {
        "rationals" => Ok(Ring::Rationals),
        "integers" => Ok(Ring::Integers),
        _ => Err(format!("unknown ring {s:?} (expected rationals or integers)")),
    }
}

fn parse_sgn_prime_mode(s: &str) -> Result<SgnPrimeMode, String> {
    match s {
        "literal" => Ok(SgnPrimeMode::Literal),
        "all_flips" => Ok(SgnPrimeMode::AllFlips),
        _ => Err(format!("unknown sgn′ mode {s:?} (expected literal or all_flips)")),
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "gcx",
    version,
    about = "exact calculator for oriented graph complexes and their boundary strata"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    /// Orientation convention.
    #[arg(long, global = true, default_value = "odd", value_parser = parse_parity)]
    pub parity: Parity,

    /// Fiber dimension; every d-dependent sign uses this value.
    #[arg(long, global = true, default_value_t = 3)]
    pub d: usize,

    /// Exclude self-loops from enumerations.
    #[arg(long = "no-loops", global = true, action = ArgAction::SetFalse, default_value_t = true)]
    pub allow_loops: bool,

    /// Reading of the sgn′ character on signed permutations.
    #[arg(long, global = true, default_value = "literal", value_parser = parse_sgn_prime_mode)]
    pub sgn_prime_mode: SgnPrimeMode,

    /// Write the artifact here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Enumerate the canonical basis at one bidegree and write it as JSON.
    Basis {
        #[arg(long)]
        vertices: usize,
        #[arg(long)]
        edges: usize,
    },
    /// Write the boundary matrix (v,e) → (v−1,e−1) in Matrix Market form.
    Boundary {
        #[arg(long)]
        vertices: usize,
        #[arg(long)]
        edges: usize,
    },
    /// Rank/torsion table of the full complex at one loop order.
    Homology {
        #[arg(long)]
        loop_order: usize,
        #[arg(long, default_value = "integers", value_parser = parse_ring)]
        ring: Ring,
    },
    /// Certify δ(input) = 0, or report the nonzero residual (exit 1).
    CheckClosed {
        /// JSON file holding a single graph.
        #[arg(long)]
        graph: Option<PathBuf>,
        /// JSON file holding a signed sum of graphs.
        #[arg(long)]
        sum: Option<PathBuf>,
    },
    /// Produce the cancelling Γ-pairing of a closed element.
    Pairing {
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long)]
        sum: Option<PathBuf>,
    },
    /// Classify the boundary strata of a closed trivalent graph and run the
    /// cancellation audit.
    Strata {
        #[arg(long)]
        graph: PathBuf,
    },
    /// List automorphisms with their signs and the signed count at d.
    Aut {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Re-run the built-in invariant battery (one line per check).
    Selftest,
}

/// Convention header embedded in every JSON artifact.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conventions {
    pub parity: Parity,
    pub d: usize,
    pub allow_loops: bool,
    pub sgn_prime_mode: SgnPrimeMode,
    /// Contractions of self-loops are dropped from δ on both sides.
    pub loop_contraction_terms_omitted: bool,
    /// A contraction places the merged vertex first in the vertex order.
    pub merged_vertex_first: bool,
    pub integer_torsion_caveat: String,
}

const TORSION_CAVEAT: &str = "bases drop zero-flagged classes, which inverts 2; \
reported torsion describes the resulting complex and may differ from the \
integral complex at the prime 2";

impl Conventions {
    fn of(config: &RunConfig) -> Self {
        Conventions {
            parity: config.parity,
            d: config.d,
            allow_loops: config.allow_loops,
            sgn_prime_mode: config.sgn_prime_mode,
            loop_contraction_terms_omitted: true,
            merged_vertex_first: true,
            integer_torsion_caveat: TORSION_CAVEAT.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisArtifact {
    pub conventions: Conventions,
    pub basis: Basis,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyArtifact {
    pub conventions: Conventions,
    pub table: HomologyTable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosednessArtifact {
    pub conventions: Conventions,
    pub closed: bool,
    pub input_is_zero: bool,
    /// Canonicalized boundary terms that failed to cancel; empty iff closed.
    pub residual: SignedGraphSum,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairingArtifact {
    pub conventions: Conventions,
    pub input: SignedGraphSum,
    pub entries: Vec<PairingEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrataArtifact {
    pub conventions: Conventions,
    pub dimensions: DimensionReport,
    pub audit: AuditReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutArtifact {
    pub conventions: Conventions,
    pub graph: Graph,
    pub order: usize,
    pub signed_count: i64,
    pub automorphisms: Vec<GraphIso>,
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::input("io", format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::input("json", format!("{}: {e}", path.display())))
}

fn load_sum(graph: &Option<PathBuf>, sum: &Option<PathBuf>) -> Result<SignedGraphSum, CliError> {
    match (graph, sum) {
        (Some(p), None) => Ok(SignedGraphSum::single(read_json(p)?)),
        (None, Some(p)) => read_json(p),
        _ => Err(CliError::input("usage", "exactly one of --graph and --sum is required")),
    }
}

fn emit(output: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match output {
        Some(p) => fs::write(p, text)
            .map_err(|e| CliError::input("io", format!("{}: {e}", p.display()))),
        None => {
            use std::io::Write;
            match std::io::stdout().lock().write_all(text.as_bytes()) {
                // a consumer like `| head` closing the pipe early is not an error
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                other => other.map_err(|e| CliError::input("io", e.to_string())),
            }
        }
    }
}

fn emit_json<T: Serialize>(output: &Option<PathBuf>, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    emit(output, &text)
}

/// Insert `%`-comment lines directly after the Matrix Market header.
fn annotate_matrix_market(mm: &str, comments: &[String]) -> String {
    let mut lines = mm.splitn(2, '\n');
    let header = lines.next().unwrap_or_default();
    let rest = lines.next().unwrap_or_default();
    let mut out = String::from(header);
    out.push('\n');
    for c in comments {
        out.push_str("% ");
        out.push_str(c);
        out.push('\n');
    }
    out.push_str(rest);
    out
}

fn init_workers() -> Result<(), CliError> {
    if let Some(raw) = std::env::var_os("GCX_THREADS") {
        let raw = raw.to_string_lossy();
        let n: usize = raw
            .parse()
            .ok()
            .filter(|&n| n >= 1)
            .ok_or_else(|| {
                CliError::input(
                    "config",
                    format!("GCX_THREADS must be a positive integer, got {raw:?}"),
                )
            })?;
        // a second initialization (e.g. in-process tests) is harmless
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

/// Execute one configured run. `Ok` carries the exit code for checks that
/// report rather than error (`check-closed` on a non-closed input,
/// `selftest` with failures).
pub fn run(config: &RunConfig) -> Result<i32, CliError> {
    if config.d < 3 {
        return Err(CliError::input("config", "d must be at least 3"));
    }
    let conventions = Conventions::of(config);
    match &config.command {
        Command::Basis { vertices, edges } => {
            let basis = enumerate_basis(*vertices, *edges, config.parity, config.allow_loops);
            emit_json(&config.output, &BasisArtifact { conventions, basis })?;
            Ok(0)
        }
        Command::Boundary { vertices, edges } => {
            if *vertices == 0 || *edges == 0 {
                return Err(CliError::input(
                    "config",
                    "boundary needs vertices ≥ 1 and edges ≥ 1",
                ));
            }
            let source = enumerate_basis(*vertices, *edges, config.parity, config.allow_loops);
            let target =
                enumerate_basis(*vertices - 1, *edges - 1, config.parity, config.allow_loops);
            let matrix = boundary_matrix(&source, &target)?;
            let text = annotate_matrix_market(
                &matrix.to_matrix_market(),
                &[
                    format!(
                        "delta: ({}, {}) -> ({}, {}), parity={}",
                        vertices,
                        edges,
                        vertices - 1,
                        edges - 1,
                        config.parity
                    ),
                    format!("allow_loops={}", config.allow_loops),
                    "loop contraction terms omitted; columns follow the source basis order"
                        .to_string(),
                ],
            );
            emit(&config.output, &text)?;
            Ok(0)
        }
        Command::Homology { loop_order, ring } => {
            if *loop_order < 2 {
                return Err(CliError::input("config", "loop order must be at least 2"));
            }
            let bases = build_complex(*loop_order, config.parity, config.allow_loops);
            let table = homology(&bases, *ring)?;
            emit_json(&config.output, &HomologyArtifact { conventions, table })?;
            Ok(0)
        }
        Command::CheckClosed { graph, sum } => {
            let input = load_sum(graph, sum)?;
            let report = check_closed(&input, config.parity)?;
            if report.input_is_zero {
                eprintln!("warning: input reduces to the zero class");
            }
            let closed = report.closed;
            emit_json(
                &config.output,
                &ClosednessArtifact {
                    conventions,
                    closed,
                    input_is_zero: report.input_is_zero,
                    residual: SignedGraphSum { terms: report.residual },
                },
            )?;
            Ok(if closed { 0 } else { 1 })
        }
        Command::Pairing { graph, sum } => {
            let input = load_sum(graph, sum)?;
            let entries = gamma_pairing(&input, config.parity, config.d)?;
            emit_json(&config.output, &PairingArtifact { conventions, input, entries })?;
            Ok(0)
        }
        Command::Strata { graph } => {
            let g: Graph = read_json(graph)?;
            let audit =
                cancellation_audit_with_mode(&g, config.parity, config.d, config.sgn_prime_mode)?;
            let dimensions = dimension_report(&g, config.d)?;
            emit_json(&config.output, &StrataArtifact { conventions, dimensions, audit })?;
            Ok(0)
        }
        Command::Aut { graph } => {
            let g: Graph = read_json(graph)?;
            let automorphisms = g.aut_group();
            let artifact = AutArtifact {
                conventions,
                order: automorphisms.len(),
                signed_count: g.signed_aut_count(config.d),
                graph: g,
                automorphisms,
            };
            emit_json(&config.output, &artifact)?;
            Ok(0)
        }
        Command::Selftest => {
            let mut failed = 0;
            let mut lines = String::new();
            for (name, result) in selftest_battery() {
                match result {
                    Ok(()) => lines.push_str(&format!("ok {name}\n")),
                    Err(msg) => {
                        failed += 1;
                        lines.push_str(&format!("FAIL {name}: {msg}\n"));
                    }
                }
            }
            emit(&config.output, &lines)?;
            Ok(if failed == 0 { 0 } else { 1 })
        }
    }
}

/// The fixed, deterministic check battery behind `gcx selftest`.
pub fn selftest_battery() -> Vec<(&'static str, Result<(), String>)> {
    fn ensure(ok: bool, msg: &str) -> Result<(), String> {
        if ok {
            Ok(())
        } else {
            Err(msg.into())
        }
    }

    let theta = Graph::new(2, vec![(0, 1), (0, 1), (0, 1)]).unwrap();
    let k4 = Graph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();

    let mut checks: Vec<(&'static str, Result<(), String>)> = Vec::new();

    checks.push((
        "basis-theta-odd",
        ensure(enumerate_basis(2, 3, Parity::Odd, true).len() == 1, "expected exactly Θ"),
    ));
    checks.push((
        "basis-theta-even",
        ensure(enumerate_basis(2, 3, Parity::Even, true).is_empty(), "expected empty basis"),
    ));
    checks.push((
        "check-closed-theta-odd",
        match check_closed(&SignedGraphSum::single(theta.clone()), Parity::Odd) {
            Ok(r) if r.closed && !r.input_is_zero => Ok(()),
            other => Err(format!("{other:?}")),
        },
    ));
    checks.push((
        "delta-squared-small",
        (|| {
            for parity in [Parity::Odd, Parity::Even] {
                for loop_order in 2..=3 {
                    let bases = build_complex(loop_order, parity, true);
                    for i in 2..bases.len() {
                        let a = boundary_matrix(&bases[i], &bases[i - 1])
                            .map_err(|e| e.to_string())?;
                        let b = boundary_matrix(&bases[i - 1], &bases[i - 2])
                            .map_err(|e| e.to_string())?;
                        if !b.multiply(&a).map_err(|e| e.to_string())?.is_zero() {
                            return Err(format!(
                                "δ² ≠ 0 at loop order {loop_order}, {parity}, {} vertices",
                                i + 1
                            ));
                        }
                    }
                }
            }
            Ok(())
        })(),
    ));
    checks.push((
        "pairing-kernel-g3",
        (|| {
            for parity in [Parity::Odd, Parity::Even] {
                let src = enumerate_basis(4, 6, parity, true);
                let tgt = enumerate_basis(3, 5, parity, true);
                let m = boundary_matrix(&src, &tgt).map_err(|e| e.to_string())?;
                for v in m.rational_kernel_basis() {
                    let s = SignedGraphSum::from_vector(&src, &v);
                    gamma_pairing(&s, parity, 3).map_err(|e| e.to_string())?;
                }
            }
            Ok(())
        })(),
    ));
    checks.push((
        "audit-theta-odd",
        (|| {
            for d in [3, 4] {
                cancellation_audit_with_mode(&theta, Parity::Odd, d, SgnPrimeMode::Literal)
                    .map_err(|e| e.to_string())?;
            }
            Ok(())
        })(),
    ));
    checks.push((
        "audit-k4-even",
        cancellation_audit_with_mode(&k4, Parity::Even, 3, SgnPrimeMode::Literal)
            .map(|_| ())
            .map_err(|e| e.to_string()),
    ));
    checks.push((
        "signed-perm-orders",
        (|| {
            for n in 0..=4usize {
                let expected = (1usize << n) * (1..=n.max(1)).product::<usize>();
                let got = SignedPerm::all(n).len();
                if got != expected {
                    return Err(format!("|S̃_{n}| = {got}, expected {expected}"));
                }
            }
            Ok(())
        })(),
    ));
    checks.push((
        "psi-injective",
        (|| {
            for g in [&theta, &k4] {
                let auts = g.aut_group();
                let images: std::collections::BTreeSet<SignedPerm> = auts
                    .iter()
                    .map(|a| g.psi_gamma(a).map_err(|e| e.to_string()))
                    .collect::<Result<_, _>>()?;
                if images.len() != auts.len() {
                    return Err(format!("ψ not injective on {g}"));
                }
            }
            Ok(())
        })(),
    ));
    checks.push((
        "edge-tuple-action",
        (|| {
            for g in [&theta, &k4] {
                for a in g.aut_group() {
                    if !g.edge_tuple_action_check(&a).map_err(|e| e.to_string())? {
                        return Err(format!("identity fails on {g}"));
                    }
                }
            }
            Ok(())
        })(),
    ));
    checks.push((
        "signed-count-theta",
        ensure(
            theta.signed_aut_count(3) == 12 && theta.signed_aut_count(4) == 0,
            "expected 12 at d=3 and 0 at d=4",
        ),
    ));
    checks.push((
        "snf-fixed-examples",
        (|| {
            let m = SparseIntMatrix::from_rows(&[&[2, 4], &[6, 8]]);
            let factors = m.smith_normal_form().invariant_factors;
            if factors != vec![2.into(), 4.into()] {
                return Err(format!("[[2,4],[6,8]] gave {factors:?}"));
            }
            let id = SparseIntMatrix::identity(3).smith_normal_form();
            if id.invariant_factors != vec![1.into(), 1.into(), 1.into()] {
                return Err("identity SNF wrong".into());
            }
            if !SparseIntMatrix::new(2, 3).smith_normal_form().invariant_factors.is_empty() {
                return Err("zero matrix SNF wrong".into());
            }
            Ok(())
        })(),
    ));
    checks.push((
        "matrix-market-round-trip",
        (|| {
            let src = enumerate_basis(4, 6, Parity::Odd, true);
            let tgt = enumerate_basis(3, 5, Parity::Odd, true);
            let m = boundary_matrix(&src, &tgt).map_err(|e| e.to_string())?;
            let back = SparseIntMatrix::from_matrix_market(&m.to_matrix_market())
                .map_err(|e| e.to_string())?;
            ensure(back == m, "parse(print(m)) ≠ m")
        })(),
    ));
    checks.push((
        "homology-theta-chain",
        (|| {
            let table = homology(&build_complex(2, Parity::Odd, true), Ring::Integers)
                .map_err(|e| e.to_string())?;
            ensure(
                table.rows.len() == 2
                    && table.rows[0].dim_chain == 0
                    && table.rows[1].dim_homology == 1,
                "loop order 2 should give one class, at two vertices",
            )
        })(),
    ));
    checks
}

/// Entry point for the `gcx` binary; returns the process exit code.
pub fn main() -> i32 {
    let config = RunConfig::parse();
    match init_workers().and_then(|()| run(&config)) {
        Ok(code) => code,
        Err(e) => {
            let detail = serde_json::json!({"error": {"kind": e.kind, "message": e.message}});
            eprintln!("{detail}");
            e.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> RunConfig {
        RunConfig::try_parse_from(args).unwrap()
    }

    #[test]
    fn flag_parsing() {
        let c = parse(&["gcx", "basis", "--vertices", "2", "--edges", "3"]);
        assert_eq!(c.parity, Parity::Odd);
        assert_eq!(c.d, 3);
        assert!(c.allow_loops);
        assert_eq!(c.sgn_prime_mode, SgnPrimeMode::Literal);
        assert!(matches!(c.command, Command::Basis { vertices: 2, edges: 3 }));

        let c = parse(&[
            "gcx",
            "pairing",
            "--graph",
            "g.json",
            "--parity",
            "even",
            "--d",
            "5",
            "--no-loops",
            "--sgn-prime-mode",
            "all_flips",
        ]);
        assert_eq!(c.parity, Parity::Even);
        assert_eq!(c.d, 5);
        assert!(!c.allow_loops);
        assert_eq!(c.sgn_prime_mode, SgnPrimeMode::AllFlips);

        assert!(RunConfig::try_parse_from(["gcx", "basis", "--vertices", "2"]).is_err());
        assert!(RunConfig::try_parse_from(["gcx", "basis", "--vertices", "2", "--edges", "3", "--parity", "both"]).is_err());
    }

    #[test]
    fn d_must_be_at_least_three() {
        let c = parse(&["gcx", "selftest", "--d", "2"]);
        let err = run(&c).unwrap_err();
        assert_eq!(err.code, 2);
        assert_eq!(err.kind, "config");
    }

    #[test]
    fn error_mapping() {
        assert_eq!(CliError::from(ComplexError::NotClosed).code, 1);
        assert_eq!(CliError::from(ComplexError::MixedBidegree).code, 2);
        assert_eq!(CliError::from(StrataError::NotTrivalent).code, 1);
        assert_eq!(CliError::from(StrataError::SubsetTooSmall(1)).code, 2);
        assert_eq!(
            CliError::from(StrataError::Complex(ComplexError::NotClosed)).code,
            1
        );
        assert_eq!(CliError::from(GraphError::EmptyGraph).code, 2);
    }

    #[test]
    fn selftest_all_green() {
        for (name, result) in selftest_battery() {
            assert_eq!(result, Ok(()), "selftest check {name} failed");
        }
    }

    #[test]
    fn artifact_round_trips() {
        let config = parse(&["gcx", "basis", "--vertices", "2", "--edges", "3"]);
        let conventions = Conventions::of(&config);

        let artifact = BasisArtifact {
            conventions: conventions.clone(),
            basis: enumerate_basis(2, 3, Parity::Odd, true),
        };
        let text = serde_json::to_string_pretty(&artifact).unwrap();
        assert_eq!(serde_json::from_str::<BasisArtifact>(&text).unwrap(), artifact);

        let table = homology(&build_complex(3, Parity::Even, true), Ring::Integers).unwrap();
        let artifact = HomologyArtifact { conventions: conventions.clone(), table };
        let text = serde_json::to_string_pretty(&artifact).unwrap();
        assert_eq!(serde_json::from_str::<HomologyArtifact>(&text).unwrap(), artifact);

        let theta = Graph::new(2, vec![(0, 1), (0, 1), (0, 1)]).unwrap();
        let artifact = AutArtifact {
            conventions,
            order: theta.aut_group().len(),
            signed_count: theta.signed_aut_count(3),
            automorphisms: theta.aut_group(),
            graph: theta,
        };
        let text = serde_json::to_string_pretty(&artifact).unwrap();
        assert_eq!(serde_json::from_str::<AutArtifact>(&text).unwrap(), artifact);
    }

    #[test]
    fn matrix_market_annotation_survives_parsing() {
        let m = SparseIntMatrix::from_rows(&[&[1, 0], &[0, -2]]);
        let text = annotate_matrix_market(&m.to_matrix_market(), &["context line".into()]);
        assert!(text.contains("% context line\n"));
        assert_eq!(SparseIntMatrix::from_matrix_market(&text).unwrap(), m);
    }
}
