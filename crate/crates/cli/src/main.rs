//! `orbispec`: spectra of finite-group triples and exact verification of the
//! Macdonald-type product identities.

mod expr;
mod workspace;

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use orbispec_core::lambda::{power_direct_formula, power_expand, Mode};
use orbispec_core::macdonald::{
    normalization_audit, verify_corollary1, verify_theorem1, verify_theorem2,
    verify_theorem2_corollary, ComparisonReport, ShiftConvention, Theorem2Fixture,
};
use orbispec_core::orbifold::Dimension;
use orbispec_core::ring::EffectiveMapClass;
use orbispec_core::{hodge, GradingGroup, GroupRingElement, TripleNode};

use workspace::Workspace;

/// Environment variable capping every truncation order accepted by the CLI.
const TRUNCATION_CAP_VAR: &str = "ORBISPEC_TRUNCATION_CAP";

const EXIT_MISMATCH: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_UNSUPPORTED: u8 = 3;

#[derive(Parser)]
#[command(
    name = "orbispec",
    version,
    about = "Group-ring power structures, orbifold Hodge spectra, and Macdonald-identity verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Hsp,
    Pair,
    Triple,
    Ehd,
    Poincare,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Substitution,
    Geometric,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Substitution => Mode::Substitution,
            ModeArg::Geometric => Mode::Geometric,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ShiftArg {
    /// literal rΠ·d/2 exponent
    PaperLiteral,
    /// reduced (rΠ−1)·d/2 exponent
    Reduced,
    /// pick the convention the n = 1 audit selects per fixture
    Audit,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SigArg {
    Cyclic,
    Spectrum,
    Pair,
    Triple,
}

impl SigArg {
    fn signature(self) -> GradingGroup {
        match self {
            SigArg::Cyclic => GradingGroup::cyclic(),
            SigArg::Spectrum => GradingGroup::spectrum(),
            SigArg::Pair => GradingGroup::pair(),
            SigArg::Triple => GradingGroup::triple(),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print an order-k spectrum of a declared model or node
    Spectrum {
        /// workspace file
        file: std::path::PathBuf,
        /// declared explicit-set, node, or hodge-data name (defaults to the
        /// only spectrum-capable declaration)
        #[arg(long)]
        target: Option<String>,
        /// spectrum order k
        #[arg(long, default_value_t = 1)]
        order: usize,
        /// which spectrum to compute
        #[arg(long, value_enum, default_value_t = Kind::Hsp)]
        kind: Kind,
        /// output format
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Verify the product identities on the file's fixtures or jobs
    Verify {
        /// workspace file
        file: std::path::PathBuf,
        /// restrict to one theorem (default: every applicable identity)
        #[arg(long)]
        theorem: Option<u8>,
        /// spectrum order k for the wreath identity
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// truncation order N for symmetric-power series
        #[arg(long = "N", default_value_t = 6)]
        n: usize,
        /// largest wreath power enumerated
        #[arg(long = "n-max", default_value_t = 3)]
        n_max: usize,
        /// exponent-shift convention
        #[arg(long, value_enum, default_value_t = ShiftArg::Audit)]
        shift: ShiftArg,
        /// power-structure mode
        #[arg(long, value_enum, default_value_t = ModeArg::Substitution)]
        mode: ModeArg,
    },
    /// Expand a power-structure expression such as `(1-T)^-{1/2}`
    Expand {
        /// expression BASE^EXPONENT
        expr: String,
        /// truncation order N
        #[arg(long = "N", default_value_t = 6)]
        n: usize,
        /// power-structure mode
        #[arg(long, value_enum, default_value_t = ModeArg::Substitution)]
        mode: ModeArg,
        /// use the direct combinatorial formula (effective inputs only)
        #[arg(long)]
        formula: bool,
        /// grading-group signature for labels
        #[arg(long, value_enum, default_value_t = SigArg::Cyclic)]
        signature: SigArg,
    },
    /// Report which exponent-shift convention each fixture selects
    Audit {
        /// workspace file
        file: std::path::PathBuf,
        /// spectrum order k for explicit models
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((output, code)) => {
            print!("{output}");
            ExitCode::from(code)
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn truncation_cap() -> Result<Option<usize>, String> {
    match std::env::var(TRUNCATION_CAP_VAR) {
        Ok(v) => v
            .parse()
            .map(Some)
            .map_err(|_| format!("{TRUNCATION_CAP_VAR} must be an integer, found `{v}`")),
        Err(_) => Ok(None),
    }
}

fn check_cap(orders: &[usize]) -> Result<(), String> {
    if let Some(cap) = truncation_cap()? {
        for &n in orders {
            if n > cap {
                return Err(format!(
                    "truncation order {n} exceeds the {TRUNCATION_CAP_VAR} cap of {cap}"
                ));
            }
        }
    }
    Ok(())
}

fn load(file: &std::path::Path) -> Result<Workspace, String> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| format!("{}: {e}", file.display()))?;
    Workspace::parse(&text).map_err(|e| format!("{}: {e}", file.display()))
}

fn run(cli: Cli) -> Result<(String, u8), String> {
    match cli.command {
        Command::Spectrum {
            file,
            target,
            order,
            kind,
            format,
        } => {
            check_cap(&[order])?;
            let ws = load(&file)?;
            cmd_spectrum(&ws, target.as_deref(), order, kind, format)
        }
        Command::Verify {
            file,
            theorem,
            k,
            n,
            n_max,
            shift,
            mode,
        } => {
            check_cap(&[k, n, n_max])?;
            let ws = load(&file)?;
            if ws.jobs.is_empty() {
                cmd_verify(&ws, theorem, k, n, n_max, shift, mode.into())
            } else {
                run_jobs(&ws)
            }
        }
        Command::Expand {
            expr,
            n,
            mode,
            formula,
            signature,
        } => {
            check_cap(&[n])?;
            cmd_expand(&expr, n, mode.into(), formula, signature)
        }
        Command::Audit { file, k } => {
            check_cap(&[k])?;
            let ws = load(&file)?;
            cmd_audit(&ws, k)
        }
    }
}

/// Builds the node a spectrum target refers to: an explicit model, a
/// declared node tree, or hodge data wrapped in a trivial-group node.
fn target_node(ws: &Workspace, name: &str, depth: usize) -> Result<TripleNode, String> {
    if ws.set(name).is_some() {
        let set = ws.build_set(name).map_err(|e| e.to_string())?;
        return Ok(set.to_node(depth));
    }
    if ws.node(name).is_some() {
        return ws.build_node(name).map_err(|e| e.to_string());
    }
    if let Some(h) = ws.hodge_data(name) {
        let e = orbispec_core::EquivariantHd::from_data(&h.rows);
        return TripleNode::new(
            Dimension::Mixed,
            orbispec_core::FiniteGroup::trivial(),
            e,
            Default::default(),
            depth,
        )
        .map_err(|e| e.to_string());
    }
    Err(format!("no declaration named `{name}`"))
}

fn cmd_spectrum(
    ws: &Workspace,
    target: Option<&str>,
    order: usize,
    kind: Kind,
    format: Format,
) -> Result<(String, u8), String> {
    let name = match target {
        Some(n) => n.to_string(),
        None => {
            let mut candidates: Vec<String> = ws.sets.iter().map(|s| s.name.clone()).collect();
            candidates.extend(ws.nodes.iter().map(|n| n.name.clone()));
            candidates.extend(ws.hodge.iter().map(|h| h.name.clone()));
            match candidates.as_slice() {
                [only] => only.clone(),
                [] => return Err(String::from("the file declares nothing to take a spectrum of")),
                _ => {
                    return Err(format!(
                        "ambiguous target; pass --target with one of: {}",
                        candidates.join(", ")
                    ))
                }
            }
        }
    };
    let node = target_node(ws, &name, order)?;
    let value: GroupRingElement = match kind {
        Kind::Hsp | Kind::Poincare => node.hsp_k(order),
        Kind::Pair => node.hsp2_k(order),
        Kind::Triple | Kind::Ehd => node.hsp3_k(order),
    }
    .map_err(|e| e.to_string())?;
    let mut out = String::new();
    match (kind, format) {
        (Kind::Poincare, _) => {
            writeln!(out, "{}", hodge::hsp_to_poincare(&value)).unwrap();
        }
        (_, Format::Csv) => {
            for (tuple, mult) in value.terms() {
                writeln!(out, "{tuple},{mult}").unwrap();
            }
        }
        (_, Format::Text) => {
            writeln!(out, "{value}").unwrap();
        }
    }
    Ok((out, 0))
}

/// The verdict of a group of reports: exit code and rendered text.
fn render_reports(reports: &[ComparisonReport]) -> (String, bool) {
    let mut out = String::new();
    let mut ok = true;
    for r in reports {
        write!(out, "{r}").unwrap();
        ok &= r.all_equal();
    }
    (out, ok)
}

fn theorem2_fixtures(
    ws: &Workspace,
    k: usize,
    n_max: usize,
) -> Result<(Vec<Theorem2Fixture>, Vec<String>), String> {
    let mut fixtures = Vec::new();
    let mut unsupported = Vec::new();
    for s in &ws.sets {
        let set = ws.build_set(&s.name).map_err(|e| e.to_string())?;
        let fixture = Theorem2Fixture::from_explicit(&set, &s.name, k, n_max)
            .map_err(|e| e.to_string())?;
        fixtures.push(fixture);
    }
    for n in &ws.nodes {
        let node = ws.build_node(&n.name).map_err(|e| e.to_string())?;
        // child nodes referenced by other trees are verified via their parents
        if ws
            .nodes
            .iter()
            .any(|m| m.children.iter().any(|c| c.target == workspace::ChildTarget::Node(n.name.clone())))
        {
            continue;
        }
        match node.dim() {
            Dimension::Pure(_) if k == 1 => {
                let fixture = Theorem2Fixture::from_node_k1(&node, &n.name, n_max)
                    .map_err(|e| e.to_string())?;
                fixtures.push(fixture);
            }
            _ => unsupported.push(n.name.clone()),
        }
    }
    Ok((fixtures, unsupported))
}

fn cmd_verify(
    ws: &Workspace,
    theorem: Option<u8>,
    k: usize,
    n: usize,
    n_max: usize,
    shift: ShiftArg,
    mode: Mode,
) -> Result<(String, u8), String> {
    let mut out = String::new();
    let mut all_ok = true;
    let mut any_unsupported = false;

    if theorem.is_none() || theorem == Some(1) {
        for h in &ws.hodge {
            let reports = [
                verify_theorem1(&h.rows, &h.name, n),
                verify_corollary1(&h.rows, &h.name, n),
            ];
            let (text, ok) = render_reports(&reports);
            out.push_str(&text);
            all_ok &= ok;
        }
    }

    if theorem.is_none() || theorem == Some(2) {
        let (fixtures, unsupported) = theorem2_fixtures(ws, k, n_max)?;
        for fixture in &fixtures {
            let convention = match shift {
                ShiftArg::PaperLiteral => ShiftConvention::PaperLiteral,
                ShiftArg::Reduced => ShiftConvention::Reduced,
                ShiftArg::Audit => {
                    let audit = normalization_audit(fixture);
                    match audit.resolved() {
                        Some(c) => c,
                        None => {
                            writeln!(
                                out,
                                "# theorem 2, fixture {}: no shift convention passes the audit",
                                fixture.name
                            )
                            .unwrap();
                            all_ok = false;
                            continue;
                        }
                    }
                }
            };
            if fixture.d > 0 {
                writeln!(out, "# note: fixture {} LHS uses the derived k = 1 wreath rule", fixture.name)
                    .unwrap();
            }
            let reports = [
                verify_theorem2(fixture, convention, mode),
                verify_theorem2_corollary(fixture, convention, mode),
            ];
            let (text, ok) = render_reports(&reports);
            out.push_str(&text);
            all_ok &= ok;
        }
        for name in unsupported {
            writeln!(out, "# theorem 2, fixture {name}: unsupported (d > 0 requires k = 1)")
                .unwrap();
            any_unsupported = true;
        }
    }

    let code = if !all_ok {
        EXIT_MISMATCH
    } else if any_unsupported {
        EXIT_UNSUPPORTED
    } else {
        0
    };
    Ok((out, code))
}

fn cmd_expand(
    expr_text: &str,
    n: usize,
    mode: Mode,
    formula: bool,
    signature: SigArg,
) -> Result<(String, u8), String> {
    let sig = signature.signature();
    let parsed = expr::parse_power_expr(expr_text, &sig, n)?;
    let base = match parsed.base {
        Some(b) => b,
        None => return Ok((String::from("1\n"), 0)),
    };
    let series = if formula {
        let levels = (1..=base.order())
            .map(|i| EffectiveMapClass::new(base.coeff(i).clone()))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| String::from("--formula requires effective series coefficients"))?;
        let m = EffectiveMapClass::new(parsed.exponent.clone())
            .map_err(|_| String::from("--formula requires an effective exponent"))?;
        power_direct_formula(&levels, &m, n)
    } else {
        power_expand(&base, &parsed.exponent, mode, n)
    };
    Ok((format!("{series}\n"), 0))
}

fn cmd_audit(ws: &Workspace, k: usize) -> Result<(String, u8), String> {
    let (fixtures, unsupported) = theorem2_fixtures(ws, k, 1)?;
    let mut out = String::new();
    let mut ok = true;
    for fixture in &fixtures {
        let audit = normalization_audit(fixture);
        write!(out, "{audit}").unwrap();
        ok &= audit.resolved().is_some();
    }
    for name in unsupported {
        writeln!(out, "fixture {name}: unsupported (d > 0 requires k = 1)").unwrap();
    }
    Ok((out, if ok { 0 } else { EXIT_MISMATCH }))
}

fn job_setting<T: std::str::FromStr>(
    job: &workspace::JobDecl,
    key: &str,
    default: T,
) -> Result<T, String> {
    match job.settings.get(key) {
        Some(v) => v
            .parse()
            .map_err(|_| format!("job {}: malformed {key} `{v}`", job.name)),
        None => Ok(default),
    }
}

/// Runs every declared job, buffering output in declaration order.
fn run_jobs(ws: &Workspace) -> Result<(String, u8), String> {
    let mut out = String::new();
    let mut worst: u8 = 0;
    for job in &ws.jobs {
        writeln!(out, "== job {} ==", job.name).unwrap();
        let k = job_setting(job, "k", 1usize)?;
        let n = job_setting(job, "N", 6usize)?;
        let n_max = job_setting(job, "n-max", 3usize)?;
        check_cap(&[k, n, n_max])?;
        let mode = match job.settings.get("mode").map(String::as_str) {
            None | Some("substitution") => Mode::Substitution,
            Some("geometric") => Mode::Geometric,
            Some(other) => return Err(format!("job {}: unknown mode `{other}`", job.name)),
        };
        let shift = match job.settings.get("shift").map(String::as_str) {
            None | Some("audit") => ShiftArg::Audit,
            Some("paper-literal") => ShiftArg::PaperLiteral,
            Some("reduced") => ShiftArg::Reduced,
            Some(other) => return Err(format!("job {}: unknown shift `{other}`", job.name)),
        };
        let theorem = match job.settings.get("theorem").map(String::as_str) {
            None => None,
            Some("1") => Some(1),
            Some("2") => Some(2),
            Some(other) => return Err(format!("job {}: unknown theorem `{other}`", job.name)),
        };
        let (text, code) = match job.command.as_str() {
            "verify" => {
                let scoped = match job.settings.get("fixture") {
                    Some(name) => scope_to_fixture(ws, name)?,
                    None => ws.clone(),
                };
                cmd_verify(&scoped, theorem, k, n, n_max, shift, mode)?
            }
            "audit" => cmd_audit(ws, k)?,
            "spectrum" => {
                let kind = match job.settings.get("kind").map(String::as_str) {
                    None | Some("hsp") => Kind::Hsp,
                    Some("pair") => Kind::Pair,
                    Some("triple") => Kind::Triple,
                    Some("ehd") => Kind::Ehd,
                    Some("poincare") => Kind::Poincare,
                    Some(other) => return Err(format!("job {}: unknown kind `{other}`", job.name)),
                };
                let order = job_setting(job, "order", 1usize)?;
                check_cap(&[order])?;
                cmd_spectrum(ws, job.settings.get("target").map(String::as_str), order, kind, Format::Csv)?
            }
            other => return Err(format!("job {}: unknown command `{other}`", job.name)),
        };
        out.push_str(&text);
        worst = worst.max(code);
    }
    Ok((out, worst))
}

/// A copy of the workspace keeping only the named verification fixture (its
/// referenced groups and child nodes stay available).
fn scope_to_fixture(ws: &Workspace, name: &str) -> Result<Workspace, String> {
    let mut scoped = ws.clone();
    scoped.jobs.clear();
    scoped.sets.retain(|s| s.name == name);
    scoped.hodge.retain(|h| h.name == name);
    let keep_node = |n: &workspace::NodeDecl| {
        n.name == name
            || ws.nodes.iter().any(|m| {
                m.name == name
                    && m.children
                        .iter()
                        .any(|c| c.target == workspace::ChildTarget::Node(n.name.clone()))
            })
    };
    scoped.nodes.retain(keep_node);
    if scoped.sets.is_empty() && scoped.hodge.is_empty() && scoped.nodes.is_empty() {
        return Err(format!("job fixture `{name}` is not declared"));
    }
    Ok(scoped)
}
