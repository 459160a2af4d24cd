//! Command-line configuration and report generation.
//!
//! Settings come from flags and, optionally, a `key = value` file passed with
//! `--config`; flags win. Every report is a pure function of the resulting
//! [`RunConfig`].

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::channel::{lemma1_check, ChannelParams};
use crate::code::{make_code, CodeFamily};
use crate::composite::CompositeCode;
use crate::error::{Error, Result};
use crate::protocol::{format_sig6, run_experiment, ExperimentReport, TrialOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Info,
    Validate,
    Simulate,
    Sweep,
    Lemma1,
}

impl Command {
    fn parse(s: &str) -> Result<Self> {
        <Self as ValueEnum>::from_str(s.trim(), true)
            .map_err(|_| Error::Parse(format!("unknown command {s:?}; expected info, validate, simulate, sweep or lemma1")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        })
    }
}

/// Nested code pair as written in a config: `c1=<family>,c2=<family>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodePair {
    pub spec: String,
    pub c1: CodeFamily,
    pub c2: CodeFamily,
}

impl CodePair {
    pub fn parse(spec: &str) -> Result<Self> {
        let s = spec.trim();
        let find = |key: &str| {
            s.match_indices(key)
                .map(|(i, _)| i)
                .find(|&i| i == 0 || s[..i].trim_end().ends_with(','))
        };
        let (Some(i1), Some(i2)) = (find("c1="), find("c2=")) else {
            return Err(Error::Parse(format!(
                "code pair must look like c1=<family>,c2=<family>, got {spec:?}"
            )));
        };
        let value = |start: usize, end: usize| {
            s[start + 3..end].trim().trim_end_matches(',').trim().to_string()
        };
        let (v1, v2) = if i1 < i2 {
            (value(i1, i2), value(i2, s.len()))
        } else {
            (value(i1, s.len()), value(i2, i1))
        };
        Ok(Self {
            spec: s.to_string(),
            c1: CodeFamily::parse(&v1)?,
            c2: CodeFamily::parse(&v2)?,
        })
    }

    pub fn build(&self) -> Result<CompositeCode> {
        CompositeCode::new(make_code(&self.c1)?, make_code(&self.c2)?)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub codes: Option<CodePair>,
    pub e_ab: Vec<f64>,
    pub e_ae: Vec<f64>,
    pub trials: u64,
    pub seed: u64,
    pub threshold: f64,
    pub output: OutputFormat,
    pub sifting: bool,
    /// Worker threads for simulations; `None` uses all cores.
    pub workers: Option<usize>,
}

#[derive(Parser, Debug)]
#[command(
    name = "compcode",
    about = "Key agreement and privacy amplification with nested binary linear codes"
)]
struct Args {
    /// info | validate | simulate | sweep | lemma1
    command: Option<String>,
    /// Code pair, e.g. c1=hamming:3,c2=simplex:3
    #[arg(long)]
    codes: Option<String>,
    /// Alice-Bob error rate (comma-separated list for sweep)
    #[arg(long)]
    eab: Option<String>,
    /// Alice-Eve error rate (comma-separated list for sweep)
    #[arg(long)]
    eae: Option<String>,
    #[arg(long)]
    trials: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    /// Abort threshold on the estimated error rate (with --sifting)
    #[arg(long)]
    threshold: Option<String>,
    /// Run the basis-sifting and error-estimation prologue
    #[arg(long)]
    sifting: bool,
    #[arg(long)]
    output: Option<String>,
    /// File of `key = value` lines; flags override it
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    workers: Option<String>,
}

const CONFIG_KEYS: &[&str] = &[
    "command", "codes", "eab", "eae", "trials", "seed", "threshold", "output", "sifting", "workers",
];

/// Parses `key = value` lines; `#` starts a comment.
pub fn parse_config_file(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("config line {}: expected key = value", lineno + 1)))?;
        let key = k.trim().replace('-', "_");
        let key = match key.as_str() {
            "e_ab" => "eab".to_string(),
            "e_ae" => "eae".to_string(),
            _ => key,
        };
        if !CONFIG_KEYS.contains(&key.as_str()) {
            return Err(Error::Parse(format!(
                "config line {}: unknown key {key:?}",
                lineno + 1
            )));
        }
        out.insert(key, v.trim().to_string());
    }
    Ok(out)
}

fn parse_probability(field: &str, s: &str) -> Result<f64> {
    let p: f64 = s
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("{field}: {s:?} is not a number")))?;
    if !(0.0..=0.5).contains(&p) {
        return Err(Error::Parse(format!("{field}: {p} outside [0, 0.5]")));
    }
    Ok(p)
}

fn parse_grid(field: &str, s: &str) -> Result<Vec<f64>> {
    let grid = s
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| parse_probability(field, t))
        .collect::<Result<Vec<_>>>()?;
    if grid.is_empty() {
        return Err(Error::Parse(format!("{field}: empty list")));
    }
    Ok(grid)
}

fn parse_int<T: std::str::FromStr>(field: &str, s: &str) -> Result<T> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("{field}: {s:?} is not a valid integer")))
}

fn parse_bool(field: &str, s: &str) -> Result<bool> {
    match s.trim() {
        "true" | "1" | "yes" | "on" => Ok(true),
        "false" | "0" | "no" | "off" => Ok(false),
        other => Err(Error::Parse(format!("{field}: {other:?} is not a boolean"))),
    }
}

/// Builds a validated [`RunConfig`] from command-line arguments (without the
/// program name).
pub fn parse_config<I, S>(args: I) -> Result<RunConfig>
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let args = Args::try_parse_from(std::iter::once("compcode".into()).chain(args.into_iter().map(Into::into)))
        .map_err(|e| Error::Usage(e.to_string()))?;
    let file = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            parse_config_file(&text)?
        }
        None => BTreeMap::new(),
    };
    let pick = |flag: &Option<String>, key: &str| flag.clone().or_else(|| file.get(key).cloned());

    let command = pick(&args.command, "command")
        .ok_or_else(|| Error::Usage("missing required field \"command\"".into()))
        .and_then(|c| Command::parse(&c))?;
    let needs_codes = command != Command::Lemma1;
    let needs_channel = matches!(command, Command::Simulate | Command::Sweep);

    let codes = match pick(&args.codes, "codes") {
        Some(s) => Some(CodePair::parse(&s)?),
        None if needs_codes => return Err(Error::Usage("missing required field \"codes\"".into())),
        None => None,
    };

    let grid = |flag: &Option<String>, key: &str| -> Result<Vec<f64>> {
        match pick(flag, key) {
            Some(s) => parse_grid(key, &s),
            None if needs_channel => Err(Error::Usage(format!("missing required field \"{key}\""))),
            None => Ok(Vec::new()),
        }
    };
    let e_ab = grid(&args.eab, "eab")?;
    let e_ae = grid(&args.eae, "eae")?;
    if command == Command::Simulate && (e_ab.len() != 1 || e_ae.len() != 1) {
        return Err(Error::Usage("simulate takes a single --eab and --eae; use sweep for grids".into()));
    }

    let trials = match pick(&args.trials, "trials") {
        Some(s) => parse_int::<u64>("trials", &s)?,
        None => 10_000,
    };
    if trials == 0 {
        return Err(Error::Parse("trials must be >= 1".into()));
    }
    let seed = match pick(&args.seed, "seed") {
        Some(s) => parse_int::<u64>("seed", &s)?,
        None => 0,
    };
    let threshold = match pick(&args.threshold, "threshold") {
        Some(s) => parse_probability("threshold", &s)?,
        None => 0.11,
    };
    if !(threshold > 0.0 && threshold < 0.5) {
        return Err(Error::Parse(format!("threshold: {threshold} outside (0, 0.5)")));
    }
    let output = match pick(&args.output, "output") {
        Some(s) => <OutputFormat as ValueEnum>::from_str(s.trim(), true)
            .map_err(|_| Error::Parse(format!("output: {s:?} is not csv or json")))?,
        None if matches!(command, Command::Sweep | Command::Lemma1) => OutputFormat::Csv,
        None => OutputFormat::Json,
    };
    let sifting = args.sifting
        || match file.get("sifting") {
            Some(s) => parse_bool("sifting", s)?,
            None => false,
        };
    let workers = match pick(&args.workers, "workers") {
        Some(s) => {
            let w = parse_int::<usize>("workers", &s)?;
            if w == 0 {
                return Err(Error::Parse("workers must be >= 1".into()));
            }
            Some(w)
        }
        None => None,
    };

    Ok(RunConfig {
        command,
        codes,
        e_ab,
        e_ae,
        trials,
        seed,
        threshold,
        output,
        sifting,
        workers,
    })
}

/// A rendered report and whether the command succeeded (for `validate`,
/// whether every check passed).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub success: bool,
}

pub fn execute(config: &RunConfig) -> Result<Outcome> {
    match config.command {
        Command::Info => info(config),
        Command::Validate => validate(config),
        Command::Simulate => simulate(config),
        Command::Sweep => sweep(config),
        Command::Lemma1 => lemma1(config),
    }
}

fn composite(config: &RunConfig) -> Result<CompositeCode> {
    config
        .codes
        .as_ref()
        .ok_or_else(|| Error::Usage("missing required field \"codes\"".into()))?
        .build()
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn info(config: &RunConfig) -> Result<Outcome> {
    let cc = composite(config)?;
    let (c1, c2) = (cc.c1(), cc.c2());
    let fields = [
        ("n", cc.n()),
        ("k1", c1.k()),
        ("k2", c2.k()),
        ("d1", c1.min_distance()),
        ("d2", c2.min_distance()),
        ("t1", c1.t()),
        ("t2", c2.t()),
        ("key_len", cc.key_len()),
    ];
    let output = match config.output {
        OutputFormat::Json => {
            let map: serde_json::Map<_, _> = fields.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
            to_json(&map)
        }
        OutputFormat::Csv => {
            let header: Vec<_> = fields.iter().map(|(k, _)| *k).collect();
            let row: Vec<_> = fields.iter().map(|(_, v)| v.to_string()).collect();
            format!("{}\n{}\n", header.join(","), row.join(","))
        }
    };
    Ok(Outcome {
        output,
        success: true,
    })
}

fn validate(config: &RunConfig) -> Result<Outcome> {
    let cc = composite(config)?;
    let disjoint = cc.verify_coset_disjointness()?;
    let distinct = cc.verify_distinct_indices()?;
    let success = disjoint.passed() && distinct.passed();
    let output = match config.output {
        OutputFormat::Json => to_json(&json!({
            "codes": config.codes.as_ref().map(|c| c.spec.clone()),
            "coset_disjointness": disjoint,
            "distinct_indices": distinct,
            "passed": success,
        })),
        OutputFormat::Csv => format!(
            "check,checked,violations\ncoset_disjointness,{},{}\ndistinct_indices,{},{}\n",
            disjoint.checked,
            disjoint.violations.len(),
            distinct.checked,
            distinct.violations.len()
        ),
    };
    Ok(Outcome { output, success })
}

fn options(config: &RunConfig) -> TrialOptions {
    TrialOptions {
        sifting: config.sifting,
        threshold: config.threshold,
    }
}

fn experiment(config: &RunConfig, cc: &CompositeCode, e_ab: f64, e_ae: f64) -> Result<ExperimentReport> {
    let params = ChannelParams::new(e_ab, e_ae)?;
    run_experiment(cc, &params, config.trials, config.seed, &options(config), config.workers)
}

fn simulate(config: &RunConfig) -> Result<Outcome> {
    let cc = composite(config)?;
    let report = experiment(config, &cc, config.e_ab[0], config.e_ae[0])?;
    let output = match config.output {
        OutputFormat::Json => to_json(&report),
        OutputFormat::Csv => format!("{}\n{}\n", ExperimentReport::csv_header(), report.csv_row()),
    };
    Ok(Outcome {
        output,
        success: true,
    })
}

/// One report per `(e_ab, e_ae)` grid point, `e_ab` varying slowest.
pub fn sweep_reports(config: &RunConfig) -> Result<Vec<ExperimentReport>> {
    let cc = composite(config)?;
    let mut reports = Vec::with_capacity(config.e_ab.len() * config.e_ae.len());
    for &e_ab in &config.e_ab {
        for &e_ae in &config.e_ae {
            reports.push(experiment(config, &cc, e_ab, e_ae)?);
        }
    }
    Ok(reports)
}

fn sweep(config: &RunConfig) -> Result<Outcome> {
    let reports = sweep_reports(config)?;
    let output = match config.output {
        OutputFormat::Json => to_json(&reports),
        OutputFormat::Csv => {
            let mut s = ExperimentReport::csv_header();
            s.push('\n');
            for r in &reports {
                s.push_str(&r.csv_row());
                s.push('\n');
            }
            s
        }
    };
    Ok(Outcome {
        output,
        success: true,
    })
}

fn lemma1(config: &RunConfig) -> Result<Outcome> {
    let mut rows = Vec::new();
    for n in 1..=20u32 {
        for j in 0..=20u32 {
            rows.push(lemma1_check(n, f64::from(j) / 40.0)?);
        }
    }
    let success = rows.iter().all(|r| r.holds);
    let output = match config.output {
        OutputFormat::Csv => {
            let mut s = String::from("n,t,lhs,rhs,holds\n");
            for r in &rows {
                s.push_str(&format!(
                    "{},{},{},{},{}\n",
                    r.n,
                    format_sig6(r.t),
                    r.lhs,
                    format_sig6(r.rhs),
                    r.holds
                ));
            }
            s
        }
        OutputFormat::Json => {
            let items: Vec<_> = rows
                .iter()
                .map(|r| {
                    let lhs = u64::try_from(&r.lhs)
                        .map(|v| json!(v))
                        .unwrap_or_else(|_| json!(r.lhs.to_string()));
                    json!({"n": r.n, "t": r.t, "lhs": lhs, "rhs": r.rhs, "holds": r.holds})
                })
                .collect();
            to_json(&items)
        }
    };
    Ok(Outcome { output, success })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(s: &str) -> Vec<String> {
        s.split_whitespace().map(String::from).collect()
    }

    #[test]
    fn parses_simulate_example() {
        let c = parse_config(args(
            "simulate --codes c1=hamming:3,c2=simplex:3 --eab 0.02 --eae 0.5 --trials 100000 --seed 7",
        ))
        .unwrap();
        assert_eq!(c.command, Command::Simulate);
        assert_eq!(c.codes.as_ref().unwrap().c1, CodeFamily::Hamming(3));
        assert_eq!(c.codes.as_ref().unwrap().c2, CodeFamily::Simplex(3));
        assert_eq!((c.e_ab.clone(), c.e_ae.clone()), (vec![0.02], vec![0.5]));
        assert_eq!((c.trials, c.seed), (100_000, 7));
        assert_eq!(c.output, OutputFormat::Json);
        assert!(!c.sifting);
    }

    #[test]
    fn code_pair_with_commas_inside_families() {
        let p = CodePair::parse("c1=rm:1,3,c2=rm:0,3").unwrap();
        assert_eq!(p.c1, CodeFamily::ReedMuller { r: 1, m: 3 });
        assert_eq!(p.c2, CodeFamily::ReedMuller { r: 0, m: 3 });
        let p = CodePair::parse("c2=simplex:3, c1=hamming:3").unwrap();
        assert_eq!(p.c1, CodeFamily::Hamming(3));
        assert!(CodePair::parse("hamming:3").is_err());
    }

    #[test]
    fn usage_errors_name_the_field() {
        let err = parse_config(args("simulate --eab 0.02 --eae 0.5")).unwrap_err();
        assert!(matches!(&err, Error::Usage(m) if m.contains("codes")), "{err}");
        let err = parse_config(args("simulate --codes c1=hamming:3,c2=simplex:3 --eae 0.5")).unwrap_err();
        assert!(matches!(&err, Error::Usage(m) if m.contains("eab")), "{err}");
        let err = parse_config(Vec::<String>::new()).unwrap_err();
        assert!(matches!(&err, Error::Usage(m) if m.contains("command")), "{err}");
        assert!(matches!(parse_config(args("info --bogus 1")), Err(Error::Usage(_))));
    }

    #[test]
    fn value_errors() {
        let err = parse_config(args("simulate --codes c1=hamming:3,c2=simplex:3 --eab 0.7 --eae 0.5")).unwrap_err();
        assert!(matches!(&err, Error::Parse(m) if m.contains("eab")), "{err}");
        let err = parse_config(args("simulate --codes c1=hamming:3,c2=simplex:3 --eab x --eae 0.5")).unwrap_err();
        assert!(matches!(err, Error::Parse(_)));
        let err = parse_config(args("info --codes c1=golay:23,c2=simplex:3")).unwrap_err();
        assert!(matches!(&err, Error::Parse(m) if m.contains("valid families") && m.contains("hamming")), "{err}");
        assert!(parse_config(args("frobnicate --codes c1=hamming:3,c2=simplex:3")).is_err());
        assert!(parse_config(args("simulate --codes c1=hamming:3,c2=simplex:3 --eab 0.1,0.2 --eae 0.5")).is_err());
        assert!(parse_config(args("lemma1 --trials 0")).is_err());
        assert!(parse_config(args("lemma1 --output xml")).is_err());
    }

    #[test]
    fn config_file_with_flag_overrides() {
        let dir = std::env::temp_dir().join(format!("compcode-cli-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("run.conf");
        std::fs::write(
            &path,
            "# example\ncommand = sweep\ncodes = c1=rm:1,3, c2=rm:0,3\neab = 0.01, 0.02\neae = 0.3\ntrials = 50\nseed = 3\nsifting = yes\n",
        )
        .unwrap();
        let c = parse_config(args(&format!("--config {} --seed 9 --eae 0.4,0.5", path.display()))).unwrap();
        assert_eq!(c.command, Command::Sweep);
        assert_eq!(c.e_ab, vec![0.01, 0.02]);
        assert_eq!(c.e_ae, vec![0.4, 0.5]);
        assert_eq!((c.trials, c.seed), (50, 9));
        assert!(c.sifting);
        assert_eq!(c.output, OutputFormat::Csv);

        assert!(parse_config_file("colour = blue").is_err());
        assert!(parse_config_file("no equals sign").is_err());
    }

    #[test]
    fn info_reports_parameters() {
        let c = parse_config(args("info --codes c1=hamming:3,c2=simplex:3")).unwrap();
        let out = execute(&c).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out.output).unwrap();
        assert_eq!(v["n"], 7);
        assert_eq!(v["k1"], 4);
        assert_eq!(v["k2"], 3);
        assert_eq!(v["d2"], 4);
        assert_eq!(v["t2"], 1);
        assert_eq!(v["key_len"], 1);
        let c = parse_config(args("info --codes c1=rm:1,3,c2=rm:0,3 --output csv")).unwrap();
        assert_eq!(execute(&c).unwrap().output, "n,k1,k2,d1,d2,t1,t2,key_len\n8,4,1,4,8,1,3,3\n");
    }

    #[test]
    fn nesting_failure_surfaces() {
        let c = parse_config(args("info --codes c1=simplex:3,c2=repetition:7")).unwrap();
        assert!(matches!(execute(&c), Err(Error::Nesting { .. })));
    }

    #[test]
    fn validate_reports_zero_violations() {
        let c = parse_config(args("validate --codes c1=hamming:3,c2=simplex:3")).unwrap();
        let out = execute(&c).unwrap();
        assert!(out.success);
        let v: serde_json::Value = serde_json::from_str(&out.output).unwrap();
        assert_eq!(v["distinct_indices"]["checked"], 128);
        assert_eq!(v["distinct_indices"]["violations"].as_array().unwrap().len(), 0);
        assert_eq!(v["coset_disjointness"]["violations"].as_array().unwrap().len(), 0);
    }

    #[test]
    fn sweep_grid_shape() {
        let c = parse_config(args(
            "sweep --codes c1=hamming:3,c2=simplex:3 --eab 0.01,0.02,0.03 --eae 0.2,0.3,0.4,0.5 --trials 200 --seed 1",
        ))
        .unwrap();
        let out = execute(&c).unwrap();
        let lines: Vec<_> = out.output.lines().collect();
        assert_eq!(lines.len(), 13);
        assert_eq!(lines[0], crate::protocol::CSV_COLUMNS.join(","));
        assert!(lines[1..].iter().all(|l| l.split(',').count() == 14));
    }

    #[test]
    fn lemma1_table() {
        let c = parse_config(args("lemma1")).unwrap();
        let out = execute(&c).unwrap();
        assert!(out.success);
        assert_eq!(out.output.lines().count(), 1 + 20 * 21);
        assert!(out.output.contains("\n10,0.3,176,449.728,true\n"));
        assert!(out.output.contains("\n10,0.5,638,1024,true\n"));
    }
}
