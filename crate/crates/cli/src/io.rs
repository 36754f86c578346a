//! File formats and persistence.
//!
//! Everything is plain text, diff-able, and language-neutral:
//!
//! - **Joint files** are CSV: a `rows,cols[,label]` header line, then one
//!   line of probabilities per row. Probabilities carry 17 significant
//!   digits, so write-then-read is value-exact for doubles.
//! - **Curve files** are `key: value` metadata lines followed by one
//!   `point:` record per traced beta.
//! - **Sample files** carry the generator configuration (enough to rebuild
//!   the model deterministically) and one `label,x1,..,xd` line per sample.
//! - **Covariance files** hold the full joint covariance of a Gaussian
//!   pair with a `dim-t`/`dim-c` split.
//! - **Verify reports** and the benchmark CSV are write-only records.
//!
//! All writes go through a temp file in the target directory followed by a
//! rename.

use ib_core::ba::CurvePoint;
use ib_core::dist::DiscreteJoint;
use ib_core::gaussian::GaussianJoint;
use ib_core::reduction::ReductionReport;
use ib_core::synth::{SampleSet, SynthConfig, Table1Row};
use sha2::{Digest, Sha256};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Errors surfaced by the command-line layer, keyed to its exit codes:
/// usage errors exit 1, validation and file errors exit 2.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error(transparent)]
    Core(#[from] ib_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Io { .. } | CliError::Parse { .. } | CliError::Core(_) => 2,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn parse_err(path: &Path, line: usize, message: impl Into<String>) -> CliError {
    CliError::Parse {
        path: path.to_path_buf(),
        line,
        message: message.into(),
    }
}

/// 17 significant digits: lossless double round-trip.
pub fn format_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// Write a file atomically: temp file in the same directory, then rename.
pub fn write_atomic(path: &Path, contents: &str) -> CliResult<()> {
    let tmp = path.with_extension(match path.extension() {
        Some(ext) => format!("{}.tmp", ext.to_string_lossy()),
        None => "tmp".to_string(),
    });
    std::fs::write(&tmp, contents).map_err(io_err(&tmp))?;
    std::fs::rename(&tmp, path).map_err(io_err(path))?;
    Ok(())
}

/// Content hash used as the provenance tag for joints.
pub fn joint_id(joint: &DiscreteJoint) -> String {
    let mut hasher = Sha256::new();
    hasher.update((joint.rows() as u64).to_le_bytes());
    hasher.update((joint.cols() as u64).to_le_bytes());
    for v in joint.mass() {
        hasher.update(v.to_le_bytes());
    }
    let digest = hasher.finalize();
    let mut hex = String::with_capacity(2 * digest.len());
    for byte in digest {
        let _ = write!(hex, "{byte:02x}");
    }
    format!("sha256:{hex}")
}

// ---------------------------------------------------------------------------
// Joint files
// ---------------------------------------------------------------------------

pub fn render_joint(joint: &DiscreteJoint, label: Option<&str>) -> String {
    let mut out = String::new();
    match label {
        Some(l) => {
            let _ = writeln!(out, "{},{},{}", joint.rows(), joint.cols(), l);
        }
        None => {
            let _ = writeln!(out, "{},{}", joint.rows(), joint.cols());
        }
    }
    for r in 0..joint.rows() {
        let line: Vec<String> = joint.row(r).iter().map(|&v| format_f64(v)).collect();
        let _ = writeln!(out, "{}", line.join(","));
    }
    out
}

pub fn write_joint(path: &Path, joint: &DiscreteJoint, label: Option<&str>) -> CliResult<()> {
    write_atomic(path, &render_joint(joint, label))
}

pub fn read_joint(path: &Path) -> CliResult<(DiscreteJoint, Option<String>)> {
    let text = std::fs::read_to_string(path).map_err(io_err(path))?;
    let mut lines = text.lines().enumerate();

    let (header_no, header) = lines
        .next()
        .ok_or_else(|| parse_err(path, 1, "empty file"))?;
    let fields: Vec<&str> = header.split(',').collect();
    if fields.len() < 2 || fields.len() > 3 {
        return Err(parse_err(
            path,
            header_no + 1,
            "header must be rows,cols[,label]",
        ));
    }
    let rows: usize = fields[0]
        .trim()
        .parse()
        .map_err(|_| parse_err(path, header_no + 1, "invalid row count"))?;
    let cols: usize = fields[1]
        .trim()
        .parse()
        .map_err(|_| parse_err(path, header_no + 1, "invalid column count"))?;
    let label = fields.get(2).map(|s| s.trim().to_string());

    let mut mass = Vec::with_capacity(rows * cols);
    let mut seen = 0usize;
    for (no, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let values: Vec<&str> = line.split(',').collect();
        if values.len() != cols {
            return Err(parse_err(
                path,
                no + 1,
                format!("expected {} values, found {}", cols, values.len()),
            ));
        }
        for v in values {
            let x: f64 = v
                .trim()
                .parse()
                .map_err(|_| parse_err(path, no + 1, format!("invalid probability {v:?}")))?;
            mass.push(x);
        }
        seen += 1;
    }
    if seen != rows {
        return Err(parse_err(
            path,
            seen + 2,
            format!("expected {rows} probability rows, found {seen}"),
        ));
    }
    let joint = DiscreteJoint::new(rows, cols, mass)?;
    Ok((joint, label))
}

// ---------------------------------------------------------------------------
// Curve files
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
pub struct CurveFileData {
    pub joint_id: String,
    pub seed: u64,
    pub alphabet: Option<usize>,
    pub max_iters: usize,
    pub tol: f64,
    pub anneal: bool,
    pub grid: String,
    pub points: Vec<CurvePoint>,
}

impl CurveFileData {
    fn validate(&self) -> CliResult<()> {
        for pair in self.points.windows(2) {
            if pair[1].beta <= pair[0].beta {
                return Err(CliError::Usage(format!(
                    "curve betas must be strictly increasing, got {} then {}",
                    pair[0].beta, pair[1].beta
                )));
            }
        }
        Ok(())
    }

    pub fn all_converged(&self) -> bool {
        self.points.iter().all(|p| p.converged)
    }
}

pub fn render_curve(data: &CurveFileData) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "format: ib-curve/1");
    let _ = writeln!(out, "version: {TOOL_VERSION}");
    let _ = writeln!(out, "joint: {}", data.joint_id);
    let _ = writeln!(out, "seed: {}", data.seed);
    match data.alphabet {
        Some(n) => {
            let _ = writeln!(out, "alphabet: {n}");
        }
        None => {
            let _ = writeln!(out, "alphabet: default");
        }
    }
    let _ = writeln!(out, "max-iters: {}", data.max_iters);
    let _ = writeln!(out, "tol: {}", format_f64(data.tol));
    let _ = writeln!(out, "anneal: {}", data.anneal);
    let _ = writeln!(out, "grid: {}", data.grid);
    for p in &data.points {
        let _ = writeln!(
            out,
            "point: beta={} rate={} relevance={} lagrangian={} iters={} converged={}",
            format_f64(p.beta),
            format_f64(p.rate),
            format_f64(p.relevance),
            format_f64(p.lagrangian),
            p.iters,
            p.converged
        );
    }
    out
}

pub fn write_curve(path: &Path, data: &CurveFileData) -> CliResult<()> {
    data.validate()?;
    write_atomic(path, &render_curve(data))
}

pub fn read_curve(path: &Path) -> CliResult<CurveFileData> {
    let text = std::fs::read_to_string(path).map_err(io_err(path))?;
    let mut joint_id = None;
    let mut seed = None;
    let mut alphabet = None;
    let mut max_iters = None;
    let mut tol = None;
    let mut anneal = None;
    let mut grid = None;
    let mut points = Vec::new();

    for (no, line) in text.lines().enumerate() {
        let line_no = no + 1;
        if line.trim().is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once(':')
            .ok_or_else(|| parse_err(path, line_no, "expected key: value"))?;
        let value = value.trim();
        match key.trim() {
            "format" => {
                if value != "ib-curve/1" {
                    return Err(parse_err(path, line_no, format!("unknown format {value:?}")));
                }
            }
            "version" => {}
            "joint" => joint_id = Some(value.to_string()),
            "seed" => {
                seed = Some(
                    value
                        .parse()
                        .map_err(|_| parse_err(path, line_no, "invalid seed"))?,
                )
            }
            "alphabet" => {
                alphabet = if value == "default" {
                    Some(None)
                } else {
                    Some(Some(value.parse().map_err(|_| {
                        parse_err(path, line_no, "invalid alphabet size")
                    })?))
                }
            }
            "max-iters" => {
                max_iters = Some(
                    value
                        .parse()
                        .map_err(|_| parse_err(path, line_no, "invalid max-iters"))?,
                )
            }
            "tol" => {
                tol = Some(
                    value
                        .parse()
                        .map_err(|_| parse_err(path, line_no, "invalid tol"))?,
                )
            }
            "anneal" => {
                anneal = Some(
                    value
                        .parse()
                        .map_err(|_| parse_err(path, line_no, "invalid anneal flag"))?,
                )
            }
            "grid" => grid = Some(value.to_string()),
            "point" => {
                let mut beta = None;
                let mut rate = None;
                let mut relevance = None;
                let mut lagrangian = None;
                let mut iters = None;
                let mut converged = None;
                for field in value.split_whitespace() {
                    let (k, v) = field.split_once('=').ok_or_else(|| {
                        parse_err(path, line_no, format!("bad point field {field:?}"))
                    })?;
                    match k {
                        "beta" => {
                            beta = Some(v.parse().map_err(|_| {
                                parse_err(path, line_no, "invalid value for beta")
                            })?)
                        }
                        "rate" => {
                            rate = Some(v.parse().map_err(|_| {
                                parse_err(path, line_no, "invalid value for rate")
                            })?)
                        }
                        "relevance" => {
                            relevance = Some(v.parse().map_err(|_| {
                                parse_err(path, line_no, "invalid value for relevance")
                            })?)
                        }
                        "lagrangian" => {
                            lagrangian = Some(v.parse().map_err(|_| {
                                parse_err(path, line_no, "invalid value for lagrangian")
                            })?)
                        }
                        "iters" => {
                            iters = Some(v.parse().map_err(|_| {
                                parse_err(path, line_no, "invalid value for iters")
                            })?)
                        }
                        "converged" => {
                            converged = Some(v.parse().map_err(|_| {
                                parse_err(path, line_no, "invalid value for converged")
                            })?)
                        }
                        other => {
                            return Err(parse_err(
                                path,
                                line_no,
                                format!("unknown point field {other:?}"),
                            ))
                        }
                    }
                }
                let missing = |name| parse_err(path, line_no, format!("point missing {name}"));
                points.push(CurvePoint {
                    beta: beta.ok_or_else(|| missing("beta"))?,
                    rate: rate.ok_or_else(|| missing("rate"))?,
                    relevance: relevance.ok_or_else(|| missing("relevance"))?,
                    lagrangian: lagrangian.ok_or_else(|| missing("lagrangian"))?,
                    iters: iters.ok_or_else(|| missing("iters"))?,
                    converged: converged.ok_or_else(|| missing("converged"))?,
                });
            }
            other => {
                return Err(parse_err(path, line_no, format!("unknown key {other:?}")));
            }
        }
    }

    let missing = |name| parse_err(path, 1, format!("missing {name} header"));
    let data = CurveFileData {
        joint_id: joint_id.ok_or_else(|| missing("joint"))?,
        seed: seed.ok_or_else(|| missing("seed"))?,
        alphabet: alphabet.ok_or_else(|| missing("alphabet"))?,
        max_iters: max_iters.ok_or_else(|| missing("max-iters"))?,
        tol: tol.ok_or_else(|| missing("tol"))?,
        anneal: anneal.ok_or_else(|| missing("anneal"))?,
        grid: grid.ok_or_else(|| missing("grid"))?,
        points,
    };
    data.validate()?;
    Ok(data)
}

// ---------------------------------------------------------------------------
// Sample files
// ---------------------------------------------------------------------------

pub fn render_samples(config: &SynthConfig, samples: &SampleSet) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "format: ib-samples/1");
    let _ = writeln!(out, "version: {TOOL_VERSION}");
    let _ = writeln!(out, "dim: {}", config.dim);
    let _ = writeln!(out, "classes: {}", config.classes);
    let _ = writeln!(out, "count: {}", samples.len());
    let _ = writeln!(out, "sigma: {}", format_f64(config.sigma));
    let _ = writeln!(out, "seed: {}", config.seed);
    let _ = writeln!(out, "data:");
    for i in 0..samples.len() {
        let _ = write!(out, "{}", samples.label(i));
        for v in samples.vector(i) {
            let _ = write!(out, ",{}", format_f64(*v));
        }
        out.push('\n');
    }
    out
}

pub fn write_samples(path: &Path, config: &SynthConfig, samples: &SampleSet) -> CliResult<()> {
    write_atomic(path, &render_samples(config, samples))
}

pub fn read_samples(path: &Path) -> CliResult<(SynthConfig, SampleSet)> {
    let text = std::fs::read_to_string(path).map_err(io_err(path))?;
    let mut dim = None;
    let mut classes = None;
    let mut count = None;
    let mut sigma = None;
    let mut seed = None;

    let mut lines = text.lines().enumerate();
    let mut data_line = 0usize;
    for (no, line) in lines.by_ref() {
        let line_no = no + 1;
        if line.trim().is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once(':')
            .ok_or_else(|| parse_err(path, line_no, "expected key: value"))?;
        let value = value.trim();
        match key.trim() {
            "format" => {
                if value != "ib-samples/1" {
                    return Err(parse_err(path, line_no, format!("unknown format {value:?}")));
                }
            }
            "version" => {}
            "dim" => {
                dim = Some(
                    value
                        .parse()
                        .map_err(|_| parse_err(path, line_no, "invalid dim"))?,
                )
            }
            "classes" => {
                classes = Some(
                    value
                        .parse()
                        .map_err(|_| parse_err(path, line_no, "invalid classes"))?,
                )
            }
            "count" => {
                count = Some(
                    value
                        .parse()
                        .map_err(|_| parse_err(path, line_no, "invalid count"))?,
                )
            }
            "sigma" => {
                sigma = Some(
                    value
                        .parse()
                        .map_err(|_| parse_err(path, line_no, "invalid sigma"))?,
                )
            }
            "seed" => {
                seed = Some(
                    value
                        .parse()
                        .map_err(|_| parse_err(path, line_no, "invalid seed"))?,
                )
            }
            "data" => {
                data_line = line_no;
                break;
            }
            other => return Err(parse_err(path, line_no, format!("unknown key {other:?}"))),
        }
    }

    let missing = |name| parse_err(path, 1, format!("missing {name} header"));
    let dim: usize = dim.ok_or_else(|| missing("dim"))?;
    let classes: usize = classes.ok_or_else(|| missing("classes"))?;
    let count: usize = count.ok_or_else(|| missing("count"))?;
    if data_line == 0 {
        return Err(parse_err(path, 1, "missing data section"));
    }
    let config = SynthConfig {
        dim,
        classes,
        samples: count,
        sigma: sigma.ok_or_else(|| missing("sigma"))?,
        seed: seed.ok_or_else(|| missing("seed"))?,
    };

    let mut labels = Vec::with_capacity(count);
    let mut vectors = Vec::with_capacity(count * dim);
    for (no, line) in lines {
        let line_no = no + 1;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != dim + 1 {
            return Err(parse_err(
                path,
                line_no,
                format!("expected label plus {dim} coordinates"),
            ));
        }
        let label: usize = fields[0]
            .trim()
            .parse()
            .map_err(|_| parse_err(path, line_no, "invalid label"))?;
        if label >= classes {
            return Err(parse_err(path, line_no, format!("label {label} out of range")));
        }
        labels.push(label);
        for f in &fields[1..] {
            vectors.push(
                f.trim()
                    .parse()
                    .map_err(|_| parse_err(path, line_no, format!("invalid coordinate {f:?}")))?,
            );
        }
    }
    if labels.len() != count {
        return Err(parse_err(
            path,
            data_line,
            format!("expected {count} samples, found {}", labels.len()),
        ));
    }
    let samples = SampleSet::new(dim, vectors, labels)?;
    Ok((config, samples))
}

// ---------------------------------------------------------------------------
// Covariance files
// ---------------------------------------------------------------------------

pub fn render_covariance(g: &GaussianJoint) -> String {
    let (dt, dc) = (g.dim_t(), g.dim_c());
    let n = dt + dc;
    let mut out = String::new();
    let _ = writeln!(out, "format: ib-cov/1");
    let _ = writeln!(out, "dim-t: {dt}");
    let _ = writeln!(out, "dim-c: {dc}");
    let entry = |i: usize, j: usize| -> f64 {
        match (i < dt, j < dt) {
            (true, true) => g.sigma_tt()[(i, j)],
            (true, false) => g.sigma_tc()[(i, j - dt)],
            (false, true) => g.sigma_tc()[(j, i - dt)],
            (false, false) => g.sigma_cc()[(i - dt, j - dt)],
        }
    };
    for i in 0..n {
        let line: Vec<String> = (0..n).map(|j| format_f64(entry(i, j))).collect();
        let _ = writeln!(out, "row: {}", line.join(","));
    }
    out
}

pub fn write_covariance(path: &Path, g: &GaussianJoint) -> CliResult<()> {
    write_atomic(path, &render_covariance(g))
}

pub fn read_covariance(path: &Path) -> CliResult<GaussianJoint> {
    let text = std::fs::read_to_string(path).map_err(io_err(path))?;
    let mut dim_t = None;
    let mut dim_c = None;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (no, line) in text.lines().enumerate() {
        let line_no = no + 1;
        if line.trim().is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once(':')
            .ok_or_else(|| parse_err(path, line_no, "expected key: value"))?;
        let value = value.trim();
        match key.trim() {
            "format" => {
                if value != "ib-cov/1" {
                    return Err(parse_err(path, line_no, format!("unknown format {value:?}")));
                }
            }
            "dim-t" => {
                dim_t = Some(
                    value
                        .parse()
                        .map_err(|_| parse_err(path, line_no, "invalid dim-t"))?,
                )
            }
            "dim-c" => {
                dim_c = Some(
                    value
                        .parse()
                        .map_err(|_| parse_err(path, line_no, "invalid dim-c"))?,
                )
            }
            "row" => {
                let mut row = Vec::new();
                for f in value.split(',') {
                    row.push(f.trim().parse().map_err(|_| {
                        parse_err(path, line_no, format!("invalid covariance entry {f:?}"))
                    })?);
                }
                rows.push(row);
            }
            other => return Err(parse_err(path, line_no, format!("unknown key {other:?}"))),
        }
    }
    let dt: usize = dim_t.ok_or_else(|| parse_err(path, 1, "missing dim-t header"))?;
    let dc: usize = dim_c.ok_or_else(|| parse_err(path, 1, "missing dim-c header"))?;
    let n = dt + dc;
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(parse_err(
            path,
            1,
            format!("covariance must be {n}x{n} for dim-t {dt} and dim-c {dc}"),
        ));
    }
    let full: Vec<f64> = rows.into_iter().flatten().collect();
    Ok(GaussianJoint::from_full(dt, dc, &full)?)
}

// ---------------------------------------------------------------------------
// Verify reports and the benchmark CSV
// ---------------------------------------------------------------------------

pub fn render_verify_report(report: &ReductionReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "format: ib-verify/1");
    let _ = writeln!(out, "version: {TOOL_VERSION}");
    let _ = writeln!(
        out,
        "sufficiency-residual: {}",
        format_f64(report.sufficiency_residual)
    );
    let _ = writeln!(out, "mi-full: {}", format_f64(report.mi_full));
    let _ = writeln!(out, "mi-reduced: {}", format_f64(report.mi_reduced));
    for p in &report.points {
        let _ = writeln!(
            out,
            "point: beta={} lagrangian-full={} lagrangian-reduced={} gap={} relevance-full={} relevance-reduced={} pullback-gap={} converged={}",
            format_f64(p.beta),
            format_f64(p.full.lagrangian),
            format_f64(p.reduced.lagrangian),
            format_f64(p.lagrangian_gap),
            format_f64(p.full.relevance),
            format_f64(p.reduced.relevance),
            format_f64(p.pullback_gap),
            p.full.converged && p.reduced.converged
        );
    }
    for f in &report.fiber_checks {
        let _ = writeln!(
            out,
            "fiber: beta={} max-tv={}",
            format_f64(f.beta),
            format_f64(f.max_tv)
        );
    }
    let intervals = |list: &[(f64, f64)]| -> String {
        if list.is_empty() {
            "none".to_string()
        } else {
            list.iter()
                .map(|(a, b)| format!("({},{})", format_f64(*a), format_f64(*b)))
                .collect::<Vec<_>>()
                .join(" ")
        }
    };
    let _ = writeln!(out, "critical-full: {}", intervals(&report.critical_full));
    let _ = writeln!(
        out,
        "critical-reduced: {}",
        intervals(&report.critical_reduced)
    );
    let _ = writeln!(out, "sup-curve-gap: {}", format_f64(report.curve_sup_gap));
    let _ = writeln!(
        out,
        "max-lagrangian-gap: {}",
        format_f64(report.max_lagrangian_gap)
    );
    let _ = writeln!(
        out,
        "max-pullback-gap: {}",
        format_f64(report.max_pullback_gap)
    );
    let _ = writeln!(out, "max-fiber-tv: {}", format_f64(report.max_fiber_tv));
    out
}

pub fn render_table1_csv(rows: &[Table1Row]) -> String {
    let mut out = String::from("d,mi_phi_c_nats,max_relevance_nats,wallclock_s\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{:.6},{:.6},{:.3}",
            r.dim, r.mi_phi_c, r.max_relevance, r.wallclock_s
        );
    }
    out
}

// ---------------------------------------------------------------------------
// Beta grid specs
// ---------------------------------------------------------------------------

/// Parse a beta grid: either `geometric:LO:HI:N` or a comma-separated
/// ascending list such as `0.5,1,2`.
pub fn parse_beta_spec(spec: &str) -> CliResult<Vec<f64>> {
    let bad = CliError::Usage;
    if let Some(rest) = spec.strip_prefix("geometric:") {
        let parts: Vec<&str> = rest.split(':').collect();
        if parts.len() != 3 {
            return Err(bad(format!(
                "geometric grid must be geometric:LO:HI:N, got {spec:?}"
            )));
        }
        let lo: f64 = parts[0]
            .parse()
            .map_err(|_| bad(format!("invalid grid bound {:?}", parts[0])))?;
        let hi: f64 = parts[1]
            .parse()
            .map_err(|_| bad(format!("invalid grid bound {:?}", parts[1])))?;
        let n: usize = parts[2]
            .parse()
            .map_err(|_| bad(format!("invalid grid size {:?}", parts[2])))?;
        return ib_core::ba::geometric_grid(lo, hi, n)
            .map_err(|e| bad(format!("invalid geometric grid: {e}")));
    }
    let mut betas = Vec::new();
    for field in spec.split(',') {
        let v: f64 = field
            .trim()
            .parse()
            .map_err(|_| bad(format!("invalid beta {field:?}")))?;
        if !(v >= 0.0) || !v.is_finite() {
            return Err(bad(format!("betas must be finite and >= 0, got {v}")));
        }
        betas.push(v);
    }
    if betas.is_empty() {
        return Err(bad("empty beta grid".into()));
    }
    for pair in betas.windows(2) {
        if pair[1] <= pair[0] {
            return Err(bad("betas must be strictly ascending".into()));
        }
    }
    Ok(betas)
}

/// The standard benchmark grid behind `--betas-table1`.
pub fn table1_spec() -> (&'static str, Vec<f64>) {
    ("geometric:0.01:10:12", ib_core::ba::table1_grid())
}
