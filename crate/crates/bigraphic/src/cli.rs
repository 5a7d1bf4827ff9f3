//! Command-line front end: canonical JSON instance parsing, subcommand
//! dispatch, report emission, and the fuzz campaign driver.
//!
//! Output discipline: a single JSON document (or text rendering) on stdout,
//! diagnostics on stderr. `fuzz` streams one record line per instance plus a
//! final digest line. Exit codes: 0 when the underlying verdict is
//! holds/forcibly/vacuously-forcibly/bigraphic, 1 when it is
//! fails/not-forcibly/not-bigraphic/not-applicable, 2 for parse or usage
//! errors, 3 when an enumeration budget is exceeded.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::gale_ryser::{is_bigraphic, realize, BipartiteRealization};
use crate::interval_criteria::{
    check_exact, check_existence, check_necessary, check_sufficient, necessity_witness,
    ConstructionTag, NotApplicable, WitnessError,
};
use crate::oracle::{
    brute_forcibly, gen_instance, validate, Finding, ForciblyKind, GenMode, TheoremTag,
    ValidationRecord,
};
use crate::report::{CheckReport, SortPerm, Verdict, Violation};
use crate::types::{DegreePair, IntervalPair, MAX_LEN, MAX_VALUE};

/// Default enumeration budget (search states, not pairs).
pub const DEFAULT_BUDGET: u64 = 10_000_000;

pub const EXIT_HOLDS: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

// ---------------------------------------------------------------------------
// Instance documents
// ---------------------------------------------------------------------------

/// A position-bearing rejection of an input document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: String,
    pub reason: String,
}

impl ParseError {
    fn at(position: impl Into<String>, reason: impl Into<String>) -> Self {
        ParseError {
            position: position.into(),
            reason: reason.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at {}: {}", self.position, self.reason)
    }
}

impl std::error::Error for ParseError {}

/// Payload of an instance document: either an interval pair or a concrete
/// degree pair, never both.
#[derive(Debug, Clone, PartialEq)]
pub enum Payload {
    Intervals(IntervalPair),
    Degrees(DegreePair),
}

/// A parsed input document plus its optional free-form metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct InstanceDocument {
    pub payload: Payload,
    pub meta: BTreeMap<String, String>,
}

fn parse_number(value: &Value, position: &str) -> Result<i64, ParseError> {
    let n = value
        .as_i64()
        .ok_or_else(|| ParseError::at(position, "expected an integer"))?;
    if n < 0 {
        return Err(ParseError::at(position, format!("negative value {n}")));
    }
    if n > MAX_VALUE {
        return Err(ParseError::at(
            position,
            format!("value {n} exceeds cap {MAX_VALUE}"),
        ));
    }
    Ok(n)
}

fn parse_number_list(value: &Value, position: &str) -> Result<Vec<i64>, ParseError> {
    let arr = value
        .as_array()
        .ok_or_else(|| ParseError::at(position, "expected an array of integers"))?;
    if arr.is_empty() {
        return Err(ParseError::at(position, "empty list"));
    }
    if arr.len() > MAX_LEN {
        return Err(ParseError::at(
            position,
            format!("length {} exceeds cap {MAX_LEN}", arr.len()),
        ));
    }
    arr.iter()
        .enumerate()
        .map(|(i, v)| parse_number(v, &format!("{position}[{i}]")))
        .collect()
}

fn parse_interval_list(value: &Value, position: &str) -> Result<Vec<(i64, i64)>, ParseError> {
    let arr = value
        .as_array()
        .ok_or_else(|| ParseError::at(position, "expected an array of [lo,hi] pairs"))?;
    if arr.is_empty() {
        return Err(ParseError::at(position, "empty list"));
    }
    if arr.len() > MAX_LEN {
        return Err(ParseError::at(
            position,
            format!("length {} exceeds cap {MAX_LEN}", arr.len()),
        ));
    }
    let mut items = Vec::with_capacity(arr.len());
    for (i, item) in arr.iter().enumerate() {
        let slot = format!("{position}[{i}]");
        let pair = item
            .as_array()
            .filter(|p| p.len() == 2)
            .ok_or_else(|| ParseError::at(&*slot, "expected a [lo,hi] pair"))?;
        let lo = parse_number(&pair[0], &format!("{slot}[0]"))?;
        let hi = parse_number(&pair[1], &format!("{slot}[1]"))?;
        if lo > hi {
            return Err(ParseError::at(&*slot, format!("lo {lo} > hi {hi}")));
        }
        items.push((lo, hi));
    }
    Ok(items)
}

/// Parses the canonical JSON instance shape:
/// `{"intervals": {"L1": [[lo,hi],...], "L2": [[lo,hi],...]}}` or
/// `{"degrees": {"P": [...], "Q": [...]}}`, with an optional string-valued
/// `"meta"` object. Rejections carry the JSON path (or line/column for
/// syntax errors) and a reason.
pub fn parse_instance(text: &str) -> Result<InstanceDocument, ParseError> {
    let value: Value = serde_json::from_str(text).map_err(|e| {
        ParseError::at(
            format!("line {} column {}", e.line(), e.column()),
            e.to_string(),
        )
    })?;
    let obj = value
        .as_object()
        .ok_or_else(|| ParseError::at("$", "expected a JSON object"))?;
    for key in obj.keys() {
        if !matches!(key.as_str(), "intervals" | "degrees" | "meta") {
            return Err(ParseError::at(
                key.clone(),
                "unknown key (expected \"intervals\", \"degrees\", or \"meta\")",
            ));
        }
    }

    let payload = match (obj.get("intervals"), obj.get("degrees")) {
        (Some(_), Some(_)) => {
            return Err(ParseError::at(
                "$",
                "exactly one of \"intervals\"/\"degrees\" must be present, found both",
            ))
        }
        (None, None) => {
            return Err(ParseError::at(
                "$",
                "exactly one of \"intervals\"/\"degrees\" must be present, found neither",
            ))
        }
        (Some(v), None) => {
            let inner = v
                .as_object()
                .ok_or_else(|| ParseError::at("intervals", "expected an object"))?;
            for key in inner.keys() {
                if !matches!(key.as_str(), "L1" | "L2") {
                    return Err(ParseError::at(
                        format!("intervals.{key}"),
                        "unknown key (expected \"L1\" and \"L2\")",
                    ));
                }
            }
            let l1 = parse_interval_list(
                inner
                    .get("L1")
                    .ok_or_else(|| ParseError::at("intervals", "missing \"L1\""))?,
                "intervals.L1",
            )?;
            let l2 = parse_interval_list(
                inner
                    .get("L2")
                    .ok_or_else(|| ParseError::at("intervals", "missing \"L2\""))?,
                "intervals.L2",
            )?;
            let pair = IntervalPair::from_bounds(l1, l2)
                .map_err(|e| ParseError::at("intervals", e.to_string()))?;
            Payload::Intervals(pair)
        }
        (None, Some(v)) => {
            let inner = v
                .as_object()
                .ok_or_else(|| ParseError::at("degrees", "expected an object"))?;
            for key in inner.keys() {
                if !matches!(key.as_str(), "P" | "Q") {
                    return Err(ParseError::at(
                        format!("degrees.{key}"),
                        "unknown key (expected \"P\" and \"Q\")",
                    ));
                }
            }
            let p = parse_number_list(
                inner
                    .get("P")
                    .ok_or_else(|| ParseError::at("degrees", "missing \"P\""))?,
                "degrees.P",
            )?;
            let q = parse_number_list(
                inner
                    .get("Q")
                    .ok_or_else(|| ParseError::at("degrees", "missing \"Q\""))?,
                "degrees.Q",
            )?;
            let pair =
                DegreePair::new(p, q).map_err(|e| ParseError::at("degrees", e.to_string()))?;
            Payload::Degrees(pair)
        }
    };

    let mut meta = BTreeMap::new();
    if let Some(v) = obj.get("meta") {
        let inner = v
            .as_object()
            .ok_or_else(|| ParseError::at("meta", "expected an object of strings"))?;
        for (key, val) in inner {
            let s = val
                .as_str()
                .ok_or_else(|| ParseError::at(format!("meta.{key}"), "expected a string value"))?;
            meta.insert(key.clone(), s.to_string());
        }
    }

    Ok(InstanceDocument { payload, meta })
}

// ---------------------------------------------------------------------------
// Invocation model
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone)]
pub enum InputSource {
    Stdin,
    Path(PathBuf),
    /// Inline document text, used by in-process callers and tests.
    Literal(String),
}

impl InputSource {
    pub fn from_arg(path: Option<PathBuf>) -> Self {
        match path {
            None => InputSource::Stdin,
            Some(p) if p.as_os_str() == "-" => InputSource::Stdin,
            Some(p) => InputSource::Path(p),
        }
    }

    fn read(&self) -> std::io::Result<String> {
        match self {
            InputSource::Stdin => {
                let mut text = String::new();
                std::io::stdin().read_to_string(&mut text)?;
                Ok(text)
            }
            InputSource::Path(path) => std::fs::read_to_string(path),
            InputSource::Literal(text) => Ok(text.clone()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FuzzParams {
    pub seed: u64,
    pub count: u64,
    pub m_max: usize,
    pub n_max: usize,
    pub deg_max: i64,
    pub mode: GenMode,
    pub budget: u64,
    pub workers: usize,
}

#[derive(Debug, Clone)]
pub enum Command {
    CheckBigraphic { input: InputSource },
    Realize { input: InputSource, edges: bool },
    CheckExistence { input: InputSource },
    ForciblySufficient { input: InputSource },
    ForciblyNecessary { input: InputSource },
    ForciblyExact { input: InputSource },
    ForciblyBrute { input: InputSource, budget: u64 },
    Witness { input: InputSource, budget: u64 },
    Validate { input: InputSource, budget: u64 },
    Fuzz(FuzzParams),
}

// ---------------------------------------------------------------------------
// Output documents
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDoc {
    pub command: String,
    pub status: String,
    pub violations: Vec<Violation>,
    pub sort_permutations: Vec<SortPerm>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizeDoc {
    pub command: String,
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub realization: Option<BipartiteRealization>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub violations: Vec<Violation>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sort_permutations: Vec<SortPerm>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactDoc {
    pub command: String,
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degenerate_forced: Option<bool>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub violations: Vec<Violation>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sort_permutations: Vec<SortPerm>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sums: Option<NotApplicable>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessDoc {
    #[serde(rename = "P")]
    pub p: Vec<i64>,
    #[serde(rename = "Q")]
    pub q: Vec<i64>,
    pub failing_r: usize,
    pub construction_tag: ConstructionTag,
}

impl WitnessDoc {
    fn from_witness(witness: &crate::interval_criteria::Witness) -> Self {
        WitnessDoc {
            p: witness.pair.p().to_vec(),
            q: witness.pair.q().to_vec(),
            failing_r: witness.failing_r,
            construction_tag: witness.construction_tag,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BruteDoc {
    pub command: String,
    pub status: String,
    pub pairs_examined: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessCmdDoc {
    pub command: String,
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairs_examined: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub finding: Option<Finding>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidateDoc {
    pub command: String,
    pub status: String,
    pub record: ValidationRecord,
}

fn kind_status(kind: ForciblyKind) -> &'static str {
    match kind {
        ForciblyKind::Forcibly => "forcibly",
        ForciblyKind::VacuouslyForcibly => "vacuously-forcibly",
        ForciblyKind::NotForcibly => "not-forcibly",
    }
}

fn verdict_status(verdict: Verdict) -> &'static str {
    match verdict {
        Verdict::Holds => "holds",
        Verdict::Fails => "fails",
    }
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

fn emit_json<T: Serialize>(out: &mut dyn Write, doc: &T) {
    // Best-effort writes: a closed pipe downstream must not panic us.
    let _ = serde_json::to_writer(&mut *out, doc);
    let _ = writeln!(out);
}

fn render_report_text(out: &mut dyn Write, status: &str, report: &CheckReport) {
    let _ = writeln!(out, "{status}");
    for v in &report.violations {
        let _ = writeln!(out, "  {v}");
    }
}

fn report_exit(report: &CheckReport) -> i32 {
    if report.holds() {
        EXIT_HOLDS
    } else {
        EXIT_FAILS
    }
}

fn emit_report(
    out: &mut dyn Write,
    format: Format,
    command: &str,
    status: &str,
    report: CheckReport,
) {
    match format {
        Format::Json => emit_json(
            out,
            &ReportDoc {
                command: command.to_string(),
                status: status.to_string(),
                violations: report.violations,
                sort_permutations: report.sort_permutations,
            },
        ),
        Format::Text => render_report_text(out, status, &report),
    }
}

// ---------------------------------------------------------------------------
// Dispatch
// ---------------------------------------------------------------------------

struct Usage(String);

fn read_instance(input: &InputSource) -> Result<InstanceDocument, Usage> {
    let text = input
        .read()
        .map_err(|e| Usage(format!("cannot read input: {e}")))?;
    parse_instance(&text).map_err(|e| Usage(e.to_string()))
}

fn intervals_of(doc: InstanceDocument) -> Result<IntervalPair, Usage> {
    match doc.payload {
        Payload::Intervals(ip) => Ok(ip),
        Payload::Degrees(_) => Err(Usage(
            "this subcommand needs an \"intervals\" instance, got \"degrees\"".to_string(),
        )),
    }
}

fn degrees_of(doc: InstanceDocument) -> Result<DegreePair, Usage> {
    match doc.payload {
        Payload::Degrees(pair) => Ok(pair),
        Payload::Intervals(_) => Err(Usage(
            "this subcommand needs a \"degrees\" instance, got \"intervals\"".to_string(),
        )),
    }
}

/// Runs one command, writing the result document to `out` and diagnostics to
/// `err`. Returns the process exit code.
pub fn execute(command: Command, format: Format, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match try_execute(command, format, out) {
        Ok(code) => code,
        Err(Usage(message)) => {
            let _ = writeln!(err, "error: {message}");
            EXIT_USAGE
        }
    }
}

fn try_execute(command: Command, format: Format, out: &mut dyn Write) -> Result<i32, Usage> {
    match command {
        Command::CheckBigraphic { input } => {
            let pair = degrees_of(read_instance(&input)?)?;
            let report = is_bigraphic(&pair);
            let status = if report.holds() {
                "bigraphic"
            } else {
                "not-bigraphic"
            };
            let code = report_exit(&report);
            emit_report(out, format, "check-bigraphic", status, report);
            Ok(code)
        }
        Command::Realize { input, edges } => {
            let pair = degrees_of(read_instance(&input)?)?;
            match realize(&pair) {
                Ok(realization) => {
                    if edges {
                        for (i, j) in realization.edges() {
                            let _ = writeln!(out, "{i} {j}");
                        }
                    } else {
                        match format {
                            Format::Json => emit_json(
                                out,
                                &RealizeDoc {
                                    command: "realize".to_string(),
                                    status: "bigraphic".to_string(),
                                    realization: Some(realization),
                                    violations: vec![],
                                    sort_permutations: vec![],
                                },
                            ),
                            Format::Text => {
                                let _ = writeln!(out, "bigraphic");
                                for row in &realization.biadjacency {
                                    let line: String = row
                                        .iter()
                                        .map(|&e| if e == 1 { '1' } else { '0' })
                                        .collect();
                                    let _ = writeln!(out, "{line}");
                                }
                            }
                        }
                    }
                    Ok(EXIT_HOLDS)
                }
                Err(not_bigraphic) => {
                    let report = not_bigraphic.0;
                    match format {
                        Format::Json => emit_json(
                            out,
                            &RealizeDoc {
                                command: "realize".to_string(),
                                status: "not-bigraphic".to_string(),
                                realization: None,
                                violations: report.violations,
                                sort_permutations: report.sort_permutations,
                            },
                        ),
                        Format::Text => render_report_text(out, "not-bigraphic", &report),
                    }
                    Ok(EXIT_FAILS)
                }
            }
        }
        Command::CheckExistence { input } => {
            let ip = intervals_of(read_instance(&input)?)?;
            let report = check_existence(&ip);
            let code = report_exit(&report);
            let status = verdict_status(report.verdict);
            emit_report(out, format, "check-existence", status, report);
            Ok(code)
        }
        Command::ForciblySufficient { input } => {
            let ip = intervals_of(read_instance(&input)?)?;
            let report = check_sufficient(&ip);
            let code = report_exit(&report);
            let status = verdict_status(report.verdict);
            emit_report(out, format, "forcibly-sufficient", status, report);
            Ok(code)
        }
        Command::ForciblyNecessary { input } => {
            let ip = intervals_of(read_instance(&input)?)?;
            let report = check_necessary(&ip);
            let code = report_exit(&report);
            let status = verdict_status(report.verdict);
            emit_report(out, format, "forcibly-necessary", status, report);
            Ok(code)
        }
        Command::ForciblyExact { input } => {
            let ip = intervals_of(read_instance(&input)?)?;
            match check_exact(&ip) {
                Ok(exact) => {
                    let status = verdict_status(exact.report.verdict);
                    let code = report_exit(&exact.report);
                    match format {
                        Format::Json => emit_json(
                            out,
                            &ExactDoc {
                                command: "forcibly-exact".to_string(),
                                status: status.to_string(),
                                degenerate_forced: Some(exact.degenerate_forced),
                                violations: exact.report.violations,
                                sort_permutations: exact.report.sort_permutations,
                                sums: None,
                            },
                        ),
                        Format::Text => render_report_text(out, status, &exact.report),
                    }
                    Ok(code)
                }
                Err(sums) => {
                    match format {
                        Format::Json => emit_json(
                            out,
                            &ExactDoc {
                                command: "forcibly-exact".to_string(),
                                status: "not-applicable".to_string(),
                                degenerate_forced: None,
                                violations: vec![],
                                sort_permutations: vec![],
                                sums: Some(sums),
                            },
                        ),
                        Format::Text => {
                            let _ = writeln!(out, "not-applicable: {sums}");
                        }
                    }
                    Ok(EXIT_FAILS)
                }
            }
        }
        Command::ForciblyBrute { input, budget } => {
            let ip = intervals_of(read_instance(&input)?)?;
            match brute_forcibly(&ip, budget) {
                Ok(verdict) => {
                    let status = kind_status(verdict.kind);
                    let code = if verdict.kind.is_forcibly() {
                        EXIT_HOLDS
                    } else {
                        EXIT_FAILS
                    };
                    match format {
                        Format::Json => emit_json(
                            out,
                            &BruteDoc {
                                command: "forcibly-brute".to_string(),
                                status: status.to_string(),
                                pairs_examined: verdict.pairs_examined,
                                witness: verdict.witness.as_ref().map(WitnessDoc::from_witness),
                            },
                        ),
                        Format::Text => {
                            let _ = writeln!(
                                out,
                                "{status} ({} pairs examined)",
                                verdict.pairs_examined
                            );
                            if let Some(w) = &verdict.witness {
                                let _ = writeln!(
                                    out,
                                    "  witness P={:?} Q={:?} fails (1) at r={} [{}]",
                                    w.pair.p(),
                                    w.pair.q(),
                                    w.failing_r,
                                    w.construction_tag
                                );
                            }
                        }
                    }
                    Ok(code)
                }
                Err(e) => {
                    let _ = writeln!(out, "{}", budget_doc("forcibly-brute", &e, format));
                    Ok(EXIT_BUDGET)
                }
            }
        }
        Command::Witness { input, budget } => {
            let ip = intervals_of(read_instance(&input)?)?;
            match necessity_witness(&ip, budget) {
                Ok(witness) => {
                    match format {
                        Format::Json => emit_json(
                            out,
                            &WitnessCmdDoc {
                                command: "witness".to_string(),
                                status: "not-forcibly".to_string(),
                                witness: Some(WitnessDoc::from_witness(&witness)),
                                pairs_examined: None,
                                finding: None,
                            },
                        ),
                        Format::Text => {
                            let _ = writeln!(
                                out,
                                "not-forcibly: witness P={:?} Q={:?} fails (1) at r={} [{}]",
                                witness.pair.p(),
                                witness.pair.q(),
                                witness.failing_r,
                                witness.construction_tag
                            );
                        }
                    }
                    Ok(EXIT_FAILS)
                }
                Err(WitnessError::NoneFound { pairs_examined }) => {
                    // Every valid pair turned out bigraphic: the instance is
                    // forcibly, which contradicts failed necessity — surface
                    // it as a structured finding.
                    let finding = Finding {
                        theorem: TheoremTag::T14,
                        detail: format!(
                            "necessary condition fails yet all {pairs_examined} valid pairs are bigraphic"
                        ),
                        instance: ip.clone(),
                    };
                    match format {
                        Format::Json => emit_json(
                            out,
                            &WitnessCmdDoc {
                                command: "witness".to_string(),
                                status: "forcibly".to_string(),
                                witness: None,
                                pairs_examined: Some(pairs_examined),
                                finding: Some(finding),
                            },
                        ),
                        Format::Text => {
                            let _ = writeln!(
                                out,
                                "forcibly: no witness among {pairs_examined} valid pairs (FINDING: contradicts failed necessity)"
                            );
                        }
                    }
                    Ok(EXIT_HOLDS)
                }
                Err(WitnessError::Budget(e)) => {
                    let _ = writeln!(out, "{}", budget_doc("witness", &e, format));
                    Ok(EXIT_BUDGET)
                }
                Err(e @ (WitnessError::NecessaryHolds | WitnessError::NoValidPairs)) => {
                    Err(Usage(format!("witness precondition violated: {e}")))
                }
            }
        }
        Command::Validate { input, budget } => {
            let ip = intervals_of(read_instance(&input)?)?;
            let record = validate(&ip, budget);
            let (status, code) = if record.partial {
                ("partial", EXIT_BUDGET)
            } else if record.findings.is_empty() {
                ("ok", EXIT_HOLDS)
            } else {
                ("findings", EXIT_FAILS)
            };
            match format {
                Format::Json => emit_json(
                    out,
                    &ValidateDoc {
                        command: "validate".to_string(),
                        status: status.to_string(),
                        record,
                    },
                ),
                Format::Text => {
                    let _ = writeln!(out, "{status}");
                    let _ = writeln!(out, "  {}", summarize_record(&record));
                    for finding in &record.findings {
                        let _ = writeln!(out, "  finding {}: {}", finding.theorem, finding.detail);
                    }
                }
            }
            Ok(code)
        }
        Command::Fuzz(params) => {
            if params.workers == 0 {
                return Err(Usage("workers must be at least 1".to_string()));
            }
            let (output, digest) = run_fuzz(&params, format);
            let _ = out.write_all(output.as_bytes());
            Ok(if digest.findings_total > 0 {
                EXIT_FAILS
            } else {
                EXIT_HOLDS
            })
        }
    }
}

fn budget_doc(command: &str, e: &crate::oracle::BudgetExceeded, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string(&serde_json::json!({
            "command": command,
            "status": "budget-exceeded",
            "budget": e.budget,
            "partial_count": e.partial_count,
        }))
        .expect("documents serialize"),
        Format::Text => format!("budget-exceeded: {e}"),
    }
}

// ---------------------------------------------------------------------------
// Fuzz driver
// ---------------------------------------------------------------------------

/// Aggregate results of a fuzz campaign.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzDigest {
    pub instances: u64,
    pub findings_total: u64,
    #[serde(rename = "findings_t1.2")]
    pub findings_t12: u64,
    #[serde(rename = "findings_t1.3")]
    pub findings_t13: u64,
    #[serde(rename = "findings_t1.4")]
    pub findings_t14: u64,
    #[serde(rename = "findings_t1.6")]
    pub findings_t16: u64,
    pub forcibly: u64,
    pub vacuously_forcibly: u64,
    pub not_forcibly: u64,
    pub partial: u64,
}

#[derive(Serialize)]
struct FuzzLine<'a> {
    index: u64,
    seed: u64,
    m: usize,
    n: usize,
    t12: &'a str,
    t13: &'a str,
    t14: &'a str,
    t16: &'a str,
    ground: &'a str,
    pairs_examined: u64,
    findings: usize,
}

struct InstanceOutput {
    text: String,
    record: ValidationRecord,
}

fn verdict_word(v: Verdict) -> &'static str {
    verdict_status(v)
}

fn render_instance(index: u64, seed: u64, record: &ValidationRecord, format: Format) -> String {
    let ground = match &record.ground_truth {
        None => "partial",
        Some(g) => kind_status(g.forcibly.kind),
    };
    let pairs = record
        .ground_truth
        .as_ref()
        .map(|g| g.forcibly.pairs_examined)
        .unwrap_or(0);
    let t16 = record
        .predictions
        .exact
        .map(verdict_word)
        .unwrap_or("not-applicable");
    let mut text = match format {
        Format::Json => {
            let line = FuzzLine {
                index,
                seed,
                m: record.instance.m(),
                n: record.instance.n(),
                t12: verdict_word(record.predictions.existence),
                t13: verdict_word(record.predictions.sufficient),
                t14: verdict_word(record.predictions.necessary),
                t16,
                ground,
                pairs_examined: pairs,
                findings: record.findings.len(),
            };
            serde_json::to_string(&line).expect("documents serialize")
        }
        Format::Text => format!(
            "i={index} seed={seed} m={} n={} t12={} t13={} t14={} t16={} ground={ground} pairs={pairs} findings={}",
            record.instance.m(),
            record.instance.n(),
            verdict_word(record.predictions.existence),
            verdict_word(record.predictions.sufficient),
            verdict_word(record.predictions.necessary),
            t16,
            record.findings.len(),
        ),
    };
    text.push('\n');
    for finding in &record.findings {
        match format {
            Format::Json => {
                text.push_str(&serde_json::to_string(finding).expect("documents serialize"));
                text.push('\n');
            }
            Format::Text => {
                text.push_str(&format!(
                    "  finding {}: {}\n",
                    finding.theorem, finding.detail
                ));
            }
        }
    }
    text
}

fn summarize_record(record: &ValidationRecord) -> String {
    let ground = match &record.ground_truth {
        None => "partial".to_string(),
        Some(g) => format!(
            "{} ({} pairs examined, bigraphic pair exists: {})",
            kind_status(g.forcibly.kind),
            g.forcibly.pairs_examined,
            g.bigraphic_pair_exists
        ),
    };
    let t16 = record
        .predictions
        .exact
        .map(verdict_word)
        .unwrap_or("not-applicable");
    format!(
        "t12={} t13={} t14={} t16={} ground={}",
        verdict_word(record.predictions.existence),
        verdict_word(record.predictions.sufficient),
        verdict_word(record.predictions.necessary),
        t16,
        ground,
    )
}

/// Runs a fuzz campaign. Instance `i` uses seed `params.seed + i`; workers
/// share nothing and records are buffered and emitted in index order, so the
/// output is byte-identical for any worker count.
pub fn run_fuzz(params: &FuzzParams, format: Format) -> (String, FuzzDigest) {
    let count = params.count;
    let slots: Mutex<Vec<Option<InstanceOutput>>> = Mutex::new((0..count).map(|_| None).collect());
    let next = AtomicU64::new(0);

    std::thread::scope(|scope| {
        for _ in 0..params.workers.max(1) {
            scope.spawn(|| loop {
                let index = next.fetch_add(1, Ordering::Relaxed);
                if index >= count {
                    break;
                }
                let seed = params.seed.wrapping_add(index);
                let instance = gen_instance(
                    seed,
                    params.m_max,
                    params.n_max,
                    params.deg_max,
                    params.mode,
                );
                let record = validate(&instance, params.budget);
                let text = render_instance(index, seed, &record, format);
                slots.lock().unwrap()[index as usize] = Some(InstanceOutput { text, record });
            });
        }
    });

    let mut digest = FuzzDigest {
        instances: count,
        ..FuzzDigest::default()
    };
    let mut output = String::new();
    for slot in slots.into_inner().unwrap() {
        let item = slot.expect("every index was processed");
        output.push_str(&item.text);
        match item.record.ground_truth.as_ref().map(|g| g.forcibly.kind) {
            None => digest.partial += 1,
            Some(ForciblyKind::Forcibly) => digest.forcibly += 1,
            Some(ForciblyKind::VacuouslyForcibly) => digest.vacuously_forcibly += 1,
            Some(ForciblyKind::NotForcibly) => digest.not_forcibly += 1,
        }
        for finding in &item.record.findings {
            digest.findings_total += 1;
            match finding.theorem {
                TheoremTag::T12 => digest.findings_t12 += 1,
                TheoremTag::T13 => digest.findings_t13 += 1,
                TheoremTag::T14 => digest.findings_t14 += 1,
                TheoremTag::T16 => digest.findings_t16 += 1,
            }
        }
    }

    match format {
        Format::Json => {
            let mut line = serde_json::to_string(&serde_json::json!({
                "command": "fuzz",
                "digest": &digest,
            }))
            .expect("documents serialize");
            line.push('\n');
            output.push_str(&line);
        }
        Format::Text => {
            output.push_str(&format!(
                "fuzz: {} instances, {} findings (T1.2={} T1.3={} T1.4={} T1.6={}), {} forcibly, {} vacuous, {} not-forcibly, {} partial\n",
                digest.instances,
                digest.findings_total,
                digest.findings_t12,
                digest.findings_t13,
                digest.findings_t14,
                digest.findings_t16,
                digest.forcibly,
                digest.vacuously_forcibly,
                digest.not_forcibly,
                digest.partial,
            ));
        }
    }

    (output, digest)
}

#[cfg(test)]
mod tests {
    use super::*;

    // -------------------------------------------------------------------
    // parse_instance
    // -------------------------------------------------------------------

    #[test]
    fn parses_interval_instances() {
        let doc =
            parse_instance(r#"{"intervals":{"L1":[[2,3],[1,2]],"L2":[[1,2],[0,1]]}}"#).unwrap();
        match doc.payload {
            Payload::Intervals(ip) => {
                assert_eq!(ip.l1.items(), &[(2, 3), (1, 2)]);
                assert_eq!(ip.l2.items(), &[(1, 2), (0, 1)]);
            }
            Payload::Degrees(_) => panic!("wrong payload"),
        }
    }

    #[test]
    fn parses_degree_instances_with_meta() {
        let doc =
            parse_instance(r#"{"degrees":{"P":[1,3],"Q":[2,2]},"meta":{"name":"x"}}"#).unwrap();
        match doc.payload {
            Payload::Degrees(pair) => {
                assert_eq!(pair.p(), &[1, 3]);
                assert_eq!(pair.q(), &[2, 2]);
            }
            Payload::Intervals(_) => panic!("wrong payload"),
        }
        assert_eq!(doc.meta.get("name").map(String::as_str), Some("x"));
    }

    #[test]
    fn rejects_inverted_interval_with_position() {
        let err = parse_instance(r#"{"intervals":{"L1":[[3,2]],"L2":[[0,0]]}}"#).unwrap_err();
        assert_eq!(err.position, "intervals.L1[0]");
        assert!(err.reason.contains("lo 3 > hi 2"));
    }

    #[test]
    fn rejects_negative_and_oversized_values() {
        let err = parse_instance(r#"{"degrees":{"P":[-1],"Q":[0]}}"#).unwrap_err();
        assert_eq!(err.position, "degrees.P[0]");
        let err = parse_instance(r#"{"degrees":{"P":[1000000001],"Q":[0]}}"#).unwrap_err();
        assert!(err.reason.contains("exceeds cap"));
    }

    #[test]
    fn rejects_empty_lists_and_both_payloads() {
        let err = parse_instance(r#"{"degrees":{"P":[],"Q":[1]}}"#).unwrap_err();
        assert!(err.reason.contains("empty"));
        let err = parse_instance(
            r#"{"degrees":{"P":[1],"Q":[1]},"intervals":{"L1":[[0,1]],"L2":[[0,1]]}}"#,
        )
        .unwrap_err();
        assert!(err.reason.contains("both"));
    }

    #[test]
    fn syntax_errors_carry_line_and_column() {
        let err = parse_instance("{\n  \"degrees\": oops\n}").unwrap_err();
        assert!(err.position.starts_with("line 2"), "{}", err.position);
    }

    // -------------------------------------------------------------------
    // execute
    // -------------------------------------------------------------------

    fn run(command: Command, format: Format) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = execute(command, format, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    fn literal(text: &str) -> InputSource {
        InputSource::Literal(text.to_string())
    }

    #[test]
    fn check_bigraphic_exit_codes() {
        let (code, stdout, _) = run(
            Command::CheckBigraphic {
                input: literal(r#"{"degrees":{"P":[2,2],"Q":[2,2]}}"#),
            },
            Format::Json,
        );
        assert_eq!(code, EXIT_HOLDS);
        let doc: ReportDoc = serde_json::from_str(&stdout).unwrap();
        assert_eq!(doc.status, "bigraphic");

        let (code, stdout, _) = run(
            Command::CheckBigraphic {
                input: literal(r#"{"degrees":{"P":[1,3],"Q":[2,2]}}"#),
            },
            Format::Json,
        );
        assert_eq!(code, EXIT_FAILS);
        let doc: ReportDoc = serde_json::from_str(&stdout).unwrap();
        assert_eq!(doc.violations.len(), 1);
    }

    #[test]
    fn sufficient_on_first_counterexample_lists_both_prefixes() {
        let (code, stdout, _) = run(
            Command::ForciblySufficient {
                input: literal(r#"{"intervals":{"L1":[[2,3],[1,2]],"L2":[[1,2],[0,1]]}}"#),
            },
            Format::Json,
        );
        assert_eq!(code, EXIT_FAILS);
        let doc: ReportDoc = serde_json::from_str(&stdout).unwrap();
        let rendered = serde_json::to_string(&doc.violations).unwrap();
        assert_eq!(
            rendered,
            r#"[{"family":"(2)","k":1,"lhs":3,"rhs":1},{"family":"(2)","k":2,"lhs":5,"rhs":1}]"#
        );
    }

    #[test]
    fn wrong_payload_is_a_usage_error() {
        let (code, _, stderr) = run(
            Command::CheckBigraphic {
                input: literal(r#"{"intervals":{"L1":[[0,1]],"L2":[[0,1]]}}"#),
            },
            Format::Json,
        );
        assert_eq!(code, EXIT_USAGE);
        assert!(stderr.contains("degrees"));
    }

    #[test]
    fn realize_edges_round_trip_degrees() {
        let (code, stdout, _) = run(
            Command::Realize {
                input: literal(r#"{"degrees":{"P":[2,1],"Q":[2,1]}}"#),
                edges: true,
            },
            Format::Json,
        );
        assert_eq!(code, EXIT_HOLDS);
        let mut p = vec![0i64; 2];
        let mut q = vec![0i64; 2];
        for line in stdout.lines() {
            let mut parts = line.split_whitespace();
            let i: usize = parts.next().unwrap().parse().unwrap();
            let j: usize = parts.next().unwrap().parse().unwrap();
            p[i] += 1;
            q[j] += 1;
        }
        assert_eq!(p, vec![2, 1]);
        assert_eq!(q, vec![2, 1]);
    }

    #[test]
    fn brute_reports_witness_document() {
        let (code, stdout, _) = run(
            Command::ForciblyBrute {
                input: literal(r#"{"intervals":{"L1":[[1,3],[2,3]],"L2":[[1,2],[0,2]]}}"#),
                budget: DEFAULT_BUDGET,
            },
            Format::Json,
        );
        assert_eq!(code, EXIT_FAILS);
        let doc: BruteDoc = serde_json::from_str(&stdout).unwrap();
        assert_eq!(doc.status, "not-forcibly");
        let witness = doc.witness.unwrap();
        assert_eq!(witness.p, vec![1, 3]);
        assert_eq!(witness.q, vec![2, 2]);
        assert_eq!(witness.failing_r, 2);
    }

    #[test]
    fn exact_not_applicable_has_distinct_status() {
        let (code, stdout, _) = run(
            Command::ForciblyExact {
                input: literal(r#"{"intervals":{"L1":[[1,3],[2,3]],"L2":[[1,2],[0,2]]}}"#),
            },
            Format::Json,
        );
        assert_eq!(code, EXIT_FAILS);
        let doc: ExactDoc = serde_json::from_str(&stdout).unwrap();
        assert_eq!(doc.status, "not-applicable");
        assert!(doc.sums.is_some());
    }

    #[test]
    fn budget_exceeded_exits_3() {
        let (code, stdout, _) = run(
            Command::ForciblyBrute {
                input: literal(
                    r#"{"intervals":{"L1":[[0,5],[0,5],[0,5]],"L2":[[0,5],[0,5],[0,5]]}}"#,
                ),
                budget: 10,
            },
            Format::Json,
        );
        assert_eq!(code, EXIT_BUDGET);
        assert!(stdout.contains("budget-exceeded"));
    }

    #[test]
    fn witness_precondition_violation_is_usage_error() {
        let (code, _, stderr) = run(
            Command::Witness {
                input: literal(r#"{"intervals":{"L1":[[1,3],[2,3]],"L2":[[1,2],[0,2]]}}"#),
                budget: DEFAULT_BUDGET,
            },
            Format::Json,
        );
        assert_eq!(code, EXIT_USAGE);
        assert!(stderr.contains("precondition"));
    }

    #[test]
    fn output_documents_round_trip() {
        let (_, stdout, _) = run(
            Command::Realize {
                input: literal(r#"{"degrees":{"P":[2,2],"Q":[2,2]}}"#),
                edges: false,
            },
            Format::Json,
        );
        let doc: RealizeDoc = serde_json::from_str(&stdout).unwrap();
        let again = serde_json::to_string(&doc).unwrap();
        let back: RealizeDoc = serde_json::from_str(&again).unwrap();
        assert_eq!(doc, back);

        let (_, stdout, _) = run(
            Command::Validate {
                input: literal(r#"{"intervals":{"L1":[[2,3],[1,2]],"L2":[[1,2],[0,1]]}}"#),
                budget: DEFAULT_BUDGET,
            },
            Format::Json,
        );
        let doc: ValidateDoc = serde_json::from_str(&stdout).unwrap();
        assert_eq!(doc.status, "ok");
        let again = serde_json::to_string(&doc).unwrap();
        let back: ValidateDoc = serde_json::from_str(&again).unwrap();
        assert_eq!(doc, back);

        let (_, stdout, _) = run(
            Command::ForciblyNecessary {
                input: literal(r#"{"intervals":{"L1":[[2,3],[2,3]],"L2":[[0,5],[0,1]]}}"#),
            },
            Format::Json,
        );
        let doc: ReportDoc = serde_json::from_str(&stdout).unwrap();
        let again = serde_json::to_string(&doc).unwrap();
        assert_eq!(stdout.trim_end(), again);

        let (_, stdout, _) = run(
            Command::ForciblyBrute {
                input: literal(r#"{"intervals":{"L1":[[1,3],[2,3]],"L2":[[1,2],[0,2]]}}"#),
                budget: DEFAULT_BUDGET,
            },
            Format::Json,
        );
        let doc: BruteDoc = serde_json::from_str(&stdout).unwrap();
        let again = serde_json::to_string(&doc).unwrap();
        assert_eq!(stdout.trim_end(), again);
    }

    // -------------------------------------------------------------------
    // fuzz
    // -------------------------------------------------------------------

    #[test]
    fn fuzz_output_is_worker_count_independent() {
        let params = FuzzParams {
            seed: 7,
            count: 60,
            m_max: 3,
            n_max: 3,
            deg_max: 4,
            mode: GenMode::Unconstrained,
            budget: 100_000,
            workers: 1,
        };
        let (one, digest_one) = run_fuzz(&params, Format::Json);
        let (four, digest_four) = run_fuzz(
            &FuzzParams {
                workers: 4,
                ..params
            },
            Format::Json,
        );
        assert_eq!(one, four);
        assert_eq!(digest_one, digest_four);
        assert_eq!(digest_one.instances, 60);
    }
}
