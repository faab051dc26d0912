//! Parameter-grid scans, oracle cross-validation and report files.
//!
//! Reports are deterministic: rows are ordered by `(p, r, n)` whatever the
//! evaluation order, and the only non-data field is the tool version.
//!
//! JSON layout: `{"schema_version": "1", "tool": "...", "rows": [...]}`,
//! every row carrying every key (absent values are `null`). CSV layout: a
//! header row, then one line per row, `\n` terminated, empty cells for
//! absent values.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::is_prime;
use crate::hodge_report::{certify_single, constructive_witness, ReportError, Verdict};
use crate::params::{classify, validate, CurveParams, ParamError, MAX_MODULUS};
use crate::witness::{
    brute_force_witness, constructive_witness_prime, constructive_witness_q, verify_witness, Branch, Witness,
    WitnessError,
};

pub const SCHEMA_VERSION: &str = "1";

pub fn tool_id() -> String {
    format!("hdgcert {}", env!("CARGO_PKG_VERSION"))
}

#[derive(Debug, Error)]
pub enum ScanError {
    #[error("invalid scan: {0}")]
    InvalidSpec(String),
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error(transparent)]
    Report(#[from] ReportError),
    #[error(transparent)]
    Witness(#[from] WitnessError),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("cannot decode report: {0}")]
    Decode(String),
    #[error("witness for (n={n}, p={p}, r={r}) failed verification at emission")]
    UnverifiedWitness { n: u64, p: u64, r: u32 },
    #[error("oracle disagreement at (n={n}, p={p}, r={r}): {reason}")]
    OracleDisagreement { n: u64, p: u64, r: u32, reason: String },
    #[error("equivalence with n = 7 mod 8 fails at n = {n}")]
    EquivalenceFailed { n: u64 },
    #[error("scan aborted after {computed} of {total} points, nothing written: {cause}")]
    PartialResultsDiscarded { computed: usize, total: usize, cause: Box<ScanError> },
}

impl ScanError {
    /// Failures that indicate a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        match self {
            ScanError::InvalidSpec(_) | ScanError::Param(_) | ScanError::Io(_) | ScanError::Decode(_) => false,
            ScanError::Report(e) => e.is_internal(),
            ScanError::PartialResultsDiscarded { cause, .. } => cause.is_internal(),
            _ => true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanMode {
    Certify,
    Witness,
    RemarkCheck,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Constructive,
    Brute,
    Both,
}

impl Method {
    fn constructive(self) -> bool {
        self != Method::Brute
    }

    fn brute(self) -> bool {
        self != Method::Constructive
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanSpec {
    pub n_min: u64,
    pub n_max: u64,
    pub primes: Vec<u64>,
    pub r_max: u32,
    pub mode: ScanMode,
    pub method: Method,
    pub output_path: Option<PathBuf>,
    pub format: ReportFormat,
}

impl ScanSpec {
    /// A spec over `[n_min, n_max] x primes x [1, r_max]`. Primes are
    /// checked, sorted and deduplicated.
    pub fn new(n_min: u64, n_max: u64, primes: &[u64], r_max: u32) -> Result<ScanSpec, ScanError> {
        if n_min > n_max {
            return Err(ScanError::InvalidSpec(format!("empty n range [{n_min}, {n_max}]")));
        }
        if n_max > MAX_MODULUS {
            return Err(ScanError::InvalidSpec("n_max exceeds 2^40".into()));
        }
        if r_max < 1 {
            return Err(ScanError::InvalidSpec("r_max must be at least 1".into()));
        }
        if primes.is_empty() {
            return Err(ScanError::InvalidSpec("no primes given".into()));
        }
        if let Some(&bad) = primes.iter().find(|&&p| p > MAX_MODULUS || !is_prime(p)) {
            return Err(ScanError::InvalidSpec(format!("{bad} is not a supported prime")));
        }
        let mut primes = primes.to_vec();
        primes.sort_unstable();
        primes.dedup();
        Ok(ScanSpec {
            n_min,
            n_max,
            primes,
            r_max,
            mode: ScanMode::Certify,
            method: Method::Both,
            output_path: None,
            format: ReportFormat::Json,
        })
    }

    pub fn with_mode(mut self, mode: ScanMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_method(mut self, method: Method) -> Self {
        self.method = method;
        self
    }

    pub fn with_output(mut self, path: impl Into<PathBuf>, format: ReportFormat) -> Self {
        self.output_path = Some(path.into());
        self.format = format;
        self
    }

    /// Valid grid points in `(p, r, n)` order; points rejected by
    /// [`validate`] (such as `p | n`) are skipped.
    pub fn grid(&self) -> Vec<CurveParams> {
        if self.mode == ScanMode::RemarkCheck {
            return (self.n_min..=self.n_max)
                .filter_map(|n| validate(n as i64, 2, 2).ok())
                .collect();
        }
        let mut points = Vec::new();
        for &p in &self.primes {
            for r in 1..=self.r_max {
                for n in self.n_min..=self.n_max {
                    match validate(n as i64, p as i64, i64::from(r)) {
                        Ok(cp) => points.push(cp),
                        Err(ParamError::Overflow { .. }) => break,
                        Err(_) => {}
                    }
                }
            }
        }
        points
    }
}

/// Parses a comma-separated prime list such as `"2,3,5"`.
pub fn parse_prime_list(s: &str) -> Result<Vec<u64>, ScanError> {
    let mut primes = s
        .split(',')
        .map(|tok| {
            let tok = tok.trim();
            let p: u64 = tok
                .parse()
                .map_err(|_| ScanError::InvalidSpec(format!("not an integer: {tok:?}")))?;
            if p > MAX_MODULUS || !is_prime(p) {
                return Err(ScanError::InvalidSpec(format!("{p} is not a supported prime")));
            }
            Ok(p)
        })
        .collect::<Result<Vec<u64>, ScanError>>()?;
    primes.sort_unstable();
    primes.dedup();
    Ok(primes)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRow {
    pub n: u64,
    pub p: u64,
    pub r: u32,
    pub q: u64,
    pub holds_a: bool,
    pub holds_b: bool,
    pub holds_c: bool,
    pub witness_constructive_i: Option<u64>,
    pub witness_constructive_branch: Option<Branch>,
    pub witness_bruteforce_i: Option<u64>,
    pub verdict: Option<Verdict>,
    pub dim_abelian_variety: Option<u128>,
    pub dim_unitary: Option<u128>,
    pub dim_center: Option<u128>,
    pub dim_semisimple: Option<u128>,
}

fn checked_emit(params: &CurveParams, w: Option<Witness>) -> Result<Option<Witness>, ScanError> {
    match w {
        Some(w) if !verify_witness(params, &w) => Err(ScanError::UnverifiedWitness {
            n: params.n(),
            p: params.p(),
            r: params.r(),
        }),
        other => Ok(other),
    }
}

/// One report row; deterministic in `(params, mode, method)`.
pub fn scan_row(params: &CurveParams, mode: ScanMode, method: Method) -> Result<ScanRow, ScanError> {
    let conditions = classify(params);
    let mut row = ScanRow {
        n: params.n(),
        p: params.p(),
        r: params.r(),
        q: params.q(),
        holds_a: conditions.holds_a,
        holds_b: conditions.holds_b,
        holds_c: conditions.holds_c,
        witness_constructive_i: None,
        witness_constructive_branch: None,
        witness_bruteforce_i: None,
        verdict: None,
        dim_abelian_variety: None,
        dim_unitary: None,
        dim_center: None,
        dim_semisimple: None,
    };

    let mut constructive = None;
    if mode == ScanMode::Certify {
        if params.is_hyperelliptic() {
            row.verdict = Some(Verdict::OutOfScope);
        } else {
            let cert = certify_single(params)?;
            row.verdict = Some(cert.verdict);
            row.dim_abelian_variety = Some(cert.dim_abelian_variety);
            row.dim_unitary = Some(cert.dim_unitary);
            row.dim_center = Some(cert.dim_center);
            row.dim_semisimple = Some(cert.dim_semisimple);
            constructive = cert.witness;
        }
    }
    if method.constructive() {
        if constructive.is_none() {
            constructive = constructive_witness(params, &conditions)?;
        }
        if let Some(w) = checked_emit(params, constructive)? {
            row.witness_constructive_i = Some(w.i);
            row.witness_constructive_branch = Some(w.branch);
        }
    }
    if method.brute() {
        if let Some(w) = checked_emit(params, brute_force_witness(params))? {
            row.witness_bruteforce_i = Some(w.i);
        }
    }
    if mode == ScanMode::RemarkCheck && conditions.prop32_applicable != (params.n() % 8 == 7) {
        return Err(ScanError::EquivalenceFailed { n: params.n() });
    }
    Ok(row)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub schema_version: String,
    pub tool: String,
    pub rows: Vec<ScanRow>,
}

impl ScanReport {
    pub fn new(rows: Vec<ScanRow>) -> ScanReport {
        ScanReport { schema_version: SCHEMA_VERSION.into(), tool: tool_id(), rows }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report rows always serialize");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<ScanReport, ScanError> {
        let report: ScanReport = serde_json::from_str(s).map_err(|e| ScanError::Decode(e.to_string()))?;
        if report.schema_version != SCHEMA_VERSION {
            return Err(ScanError::Decode(format!("unsupported schema version {:?}", report.schema_version)));
        }
        Ok(report)
    }

    pub fn to_csv(&self) -> String {
        let mut wtr = csv::WriterBuilder::new()
            .has_headers(false)
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        wtr.write_record(CSV_HEADER).expect("in-memory write");
        for row in &self.rows {
            wtr.serialize(row).expect("report rows always serialize");
        }
        String::from_utf8(wtr.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
    }

    /// Reads rows back from CSV; the header must match exactly.
    pub fn rows_from_csv(s: &str) -> Result<Vec<ScanRow>, ScanError> {
        let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(s.as_bytes());
        let header = rdr.headers().map_err(|e| ScanError::Decode(e.to_string()))?;
        if header.iter().ne(CSV_HEADER.iter().copied()) {
            return Err(ScanError::Decode("unexpected CSV header".into()));
        }
        rdr.deserialize()
            .map(|r| r.map_err(|e| ScanError::Decode(e.to_string())))
            .collect()
    }

    pub fn render(&self, format: ReportFormat) -> String {
        match format {
            ReportFormat::Json => self.to_json(),
            ReportFormat::Csv => self.to_csv(),
        }
    }
}

pub const CSV_HEADER: [&str; 15] = [
    "n",
    "p",
    "r",
    "q",
    "holds_a",
    "holds_b",
    "holds_c",
    "witness_constructive_i",
    "witness_constructive_branch",
    "witness_bruteforce_i",
    "verdict",
    "dim_abelian_variety",
    "dim_unitary",
    "dim_center",
    "dim_semisimple",
];

/// Writes through a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<(), ScanError> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| ScanError::Io(e.error))?;
    Ok(())
}

/// Evaluates the grid (in parallel) and gathers rows in grid order.
pub fn compute_rows(spec: &ScanSpec) -> Result<Vec<ScanRow>, ScanError> {
    let grid = spec.grid();
    let total = grid.len();
    let results: Vec<Result<ScanRow, ScanError>> =
        grid.par_iter().map(|cp| scan_row(cp, spec.mode, spec.method)).collect();
    let mut rows = Vec::with_capacity(total);
    for (idx, res) in results.into_iter().enumerate() {
        match res {
            Ok(row) => rows.push(row),
            Err(cause) => {
                return Err(ScanError::PartialResultsDiscarded { computed: idx, total, cause: Box::new(cause) })
            }
        }
    }
    Ok(rows)
}

/// Runs a scan and, when the spec names an output path, writes the report
/// atomically.
pub fn run_scan(spec: &ScanSpec) -> Result<ScanReport, ScanError> {
    let report = ScanReport::new(compute_rows(spec)?);
    if let Some(path) = &spec.output_path {
        write_atomic(path, report.render(spec.format).as_bytes())?;
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RemarkReport {
    pub n_max: u64,
    pub passed: bool,
    pub matching_count: usize,
    pub matching: Vec<u64>,
}

/// For odd `n` in `[5, n_max]`, the Bezout-route preconditions at
/// `(p, q) = (2, 4)` hold exactly when `n = 7 mod 8`.
pub fn run_remark_check(n_max: u64) -> Result<RemarkReport, ScanError> {
    if n_max < 9 {
        return Err(ScanError::InvalidSpec("n_max must be at least 9".into()));
    }
    if n_max > MAX_MODULUS {
        return Err(ScanError::InvalidSpec("n_max exceeds 2^40".into()));
    }
    let mut matching = Vec::new();
    for n in (5..=n_max).step_by(2) {
        let params = validate(n as i64, 2, 2)?;
        let holds = classify(&params).prop32_applicable;
        if holds != ((n + 1) % 8 == 0) {
            return Err(ScanError::EquivalenceFailed { n });
        }
        if holds {
            matching.push(n);
        }
    }
    Ok(RemarkReport { n_max, passed: true, matching_count: matching.len(), matching })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossRecord {
    pub n: u64,
    pub p: u64,
    pub r: u32,
    pub q: u64,
    pub prime_route: Option<(u64, Branch)>,
    pub q_route: Option<(u64, Branch)>,
    pub oracle_i: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Disagreement {
    pub n: u64,
    pub p: u64,
    pub r: u32,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossValidation {
    pub tool: String,
    pub points: usize,
    pub prime_route_checked: usize,
    pub q_route_checked: usize,
    pub oracle_found: usize,
    pub branch_counts: BTreeMap<String, usize>,
    pub disagreements: Vec<Disagreement>,
    pub records: Vec<CrossRecord>,
}

impl CrossValidation {
    pub fn passed(&self) -> bool {
        self.disagreements.is_empty()
    }

    /// Same report with per-point records dropped.
    pub fn summary(&self) -> CrossValidation {
        CrossValidation { records: Vec::new(), ..self.clone() }
    }
}

fn cross_check_point(params: &CurveParams) -> (CrossRecord, Vec<String>) {
    let conditions = classify(params);
    let oracle = brute_force_witness(params);
    let mut problems = Vec::new();
    let mut check = |applicable: bool, res: Option<Result<Witness, WitnessError>>, label: &str| {
        let res = res?;
        match res {
            Ok(w) if verify_witness(params, &w) => {
                if applicable && oracle.is_none() {
                    problems.push(format!("{label}: constructive witness exists but oracle is empty"));
                }
                Some((w.i, w.branch))
            }
            Ok(w) => {
                problems.push(format!("{label}: witness i = {} fails verification", w.i));
                None
            }
            Err(e) => {
                problems.push(format!("{label}: {e}"));
                None
            }
        }
    };
    let prime_route = check(
        conditions.prop31_applicable(),
        conditions.prop31_applicable().then(|| constructive_witness_prime(params)),
        "prime route",
    );
    let q_route = check(
        conditions.prop32_applicable,
        conditions.prop32_applicable.then(|| constructive_witness_q(params)),
        "q route",
    );
    let record = CrossRecord {
        n: params.n(),
        p: params.p(),
        r: params.r(),
        q: params.q(),
        prime_route,
        q_route,
        oracle_i: oracle.map(|w| w.i),
    };
    (record, problems)
}

/// Wherever either proposition applies, the constructive route must
/// produce a verified witness and the oracle must find one too.
pub fn run_cross_validate(spec: &ScanSpec) -> Result<CrossValidation, ScanError> {
    let grid = spec.grid();
    let checked: Vec<(CrossRecord, Vec<String>)> = grid.par_iter().map(cross_check_point).collect();
    let mut out = CrossValidation {
        tool: tool_id(),
        points: grid.len(),
        prime_route_checked: 0,
        q_route_checked: 0,
        oracle_found: 0,
        branch_counts: BTreeMap::new(),
        disagreements: Vec::new(),
        records: Vec::with_capacity(grid.len()),
    };
    for (cp, (record, problems)) in grid.iter().zip(checked) {
        let conditions = classify(cp);
        out.prime_route_checked += usize::from(conditions.prop31_applicable());
        out.q_route_checked += usize::from(conditions.prop32_applicable);
        out.oracle_found += usize::from(record.oracle_i.is_some());
        for (_, b) in record.prime_route.iter().chain(record.q_route.iter()) {
            *out.branch_counts.entry(b.as_str().to_string()).or_default() += 1;
        }
        out.disagreements.extend(problems.into_iter().map(|reason| Disagreement {
            n: cp.n(),
            p: cp.p(),
            r: cp.r(),
            reason,
        }));
        out.records.push(record);
    }
    if let Some(path) = &spec.output_path {
        let mut s = serde_json::to_string_pretty(&out).expect("cross-validation report serializes");
        s.push('\n');
        write_atomic(path, s.as_bytes())?;
    }
    Ok(out)
}
