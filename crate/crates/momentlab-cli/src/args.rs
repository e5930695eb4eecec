//! Command-line surface. [`RunConfig`] parses from argv and prints back to an
//! equivalent argv with [`RunConfig::to_argv`].

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug, Clone, PartialEq)]
#[command(name = "momentlab", version, about = "Cubic moments of Dirichlet and cusp-form L-functions at prime moduli")]
pub struct RunConfig {
    /// Worker threads (overrides MOMENTLAB_THREADS and the config file).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// `key = value` file with defaults.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Width of the Gaussian damping in the AFE weights.
    #[arg(long, global = true)]
    pub damping: Option<f64>,
    /// Fill the `seconds` column with wall-clock times (breaks byte-identity).
    #[arg(long, global = true)]
    pub timing: bool,
    /// Tolerance override, `name=value`. Repeatable.
    #[arg(long = "tol", global = true, value_parser = parse_tol)]
    pub tol: Vec<Tol>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Tol {
    pub name: String,
    pub value: f64,
}

fn parse_tol(s: &str) -> Result<Tol, String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected name=value, got {s:?}"))?;
    let value = v.trim().parse::<f64>().map_err(|e| format!("{k}: {e}"))?;
    Ok(Tol { name: k.trim().to_string(), value })
}

#[derive(Subcommand, Debug, Clone, PartialEq)]
pub enum Command {
    /// Run a check suite; exit 1 if any check fails.
    Verify {
        suite: Suite,
        #[arg(long, default_value_t = 13)]
        q: u64,
    },
    #[command(subcommand)]
    Moment(MomentCmd),
    /// Non-vanishing census.
    Census {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        cusp: bool,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// One CSV row per modulus.
    Scan {
        #[arg(long = "q-list", value_delimiter = ',')]
        q_list: Vec<u64>,
        #[arg(long)]
        experiment: Experiment,
        #[arg(long, default_value = "0")]
        omega1: Twist,
        #[arg(long, default_value = "0")]
        omega2: Twist,
        #[arg(long, default_value_t = 1)]
        ell: u64,
        #[arg(long, default_value = "kl2")]
        kernel: KernelSpec,
        #[arg(long, default_value = "tau")]
        coeff: CoeffSpec,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    #[command(subcommand)]
    Correlation(CorrelationCmd),
    /// Smoothed sums of Hecke eigenvalues against a trace function.
    TwistSum {
        #[arg(long, value_delimiter = ',', required = true)]
        q: Vec<u64>,
        #[arg(long, default_value = "kl3")]
        kernel: KernelSpec,
        #[arg(long, default_value = "tau")]
        coeff: CoeffSpec,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// `max |Kl_k|` over `F_q^×`.
    WeilScan {
        #[arg(long, value_delimiter = ',', required = true)]
        q: Vec<u64>,
        #[arg(long, default_value_t = 3)]
        rank: usize,
        /// Character indices, one per variable; untwisted when omitted.
        #[arg(long, value_delimiter = ',')]
        twists: Vec<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// One central value with a cross-check.
    Lvalue {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        chi: usize,
        #[arg(long)]
        cusp: bool,
    },
    #[command(subcommand)]
    Fixtures(FixturesCmd),
}

#[derive(Subcommand, Debug, Clone, PartialEq)]
pub enum MomentCmd {
    Dirichlet {
        #[arg(long)]
        q: u64,
        #[arg(long, default_value = "0")]
        omega1: Twist,
        #[arg(long, default_value = "0")]
        omega2: Twist,
        #[arg(long, default_value_t = 1)]
        ell: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Cusp {
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 1)]
        ell: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Arithmetic-side expansion against the direct single-parity moment.
    CrossCheck {
        #[arg(long)]
        q: u64,
        #[arg(long, default_value = "0")]
        omega1: Twist,
        #[arg(long, default_value = "0")]
        omega2: Twist,
        #[arg(long, default_value_t = 1)]
        ell: u64,
        #[arg(long, default_value_t = 0)]
        parity: u8,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug, Clone, PartialEq)]
pub enum CorrelationCmd {
    Scan {
        #[arg(long)]
        q: u64,
        #[arg(long, default_value = "kl3")]
        kernel: KernelSpec,
        #[arg(long, default_value_t = 0)]
        omega: usize,
        #[arg(long, default_value = "exhaustive")]
        mode: ModeSpec,
        /// Threshold `M` in `|𝒞| > M√q`; defaults to the kernel's sup bound.
        #[arg(long)]
        m: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug, Clone, PartialEq)]
pub enum FixturesCmd {
    Record {
        #[arg(long, default_value = "derived")]
        suite: String,
        #[arg(long, default_value = "crates/momentlab/tests/fixtures/derived.json")]
        out: PathBuf,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Identities,
    Dft,
    Weil,
    Lvalues,
    Hecke,
    Moments,
    All,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Experiment {
    Cubic,
    Census,
    TwistSum,
}

fn value_enum_name<T: ValueEnum>(v: &T) -> String {
    v.to_possible_value().expect("no skipped variants").get_name().to_string()
}

/// A character index or a seeded draw.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Twist {
    Index(usize),
    Random(u64),
}

impl FromStr for Twist {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.strip_prefix("random:") {
            Some(seed) => seed.parse().map(Twist::Random).map_err(|e| format!("seed: {e}")),
            None => s.parse().map(Twist::Index).map_err(|e| format!("twist index: {e}")),
        }
    }
}

impl fmt::Display for Twist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Twist::Index(t) => write!(f, "{t}"),
            Twist::Random(s) => write!(f, "random:{s}"),
        }
    }
}

/// `kl<k>[:completed]`, `additive:<h>`, `mult:<t>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelSpec {
    Kloosterman { rank: usize, completed: bool },
    Additive(u64),
    Multiplicative(usize),
}

impl FromStr for KernelSpec {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        if let Some(h) = s.strip_prefix("additive:") {
            return h.parse().map(KernelSpec::Additive).map_err(|e| e.to_string());
        }
        if let Some(t) = s.strip_prefix("mult:") {
            return t.parse().map(KernelSpec::Multiplicative).map_err(|e| e.to_string());
        }
        let rest = s.strip_prefix("kl").ok_or_else(|| format!("unknown kernel {s:?}"))?;
        let (k, completed) = match rest.strip_suffix(":completed") {
            Some(k) => (k, true),
            None => (rest, false),
        };
        let rank = k.parse().map_err(|_| format!("unknown kernel {s:?}"))?;
        Ok(KernelSpec::Kloosterman { rank, completed })
    }
}

impl fmt::Display for KernelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KernelSpec::Kloosterman { rank, completed: false } => write!(f, "kl{rank}"),
            KernelSpec::Kloosterman { rank, completed: true } => write!(f, "kl{rank}:completed"),
            KernelSpec::Additive(h) => write!(f, "additive:{h}"),
            KernelSpec::Multiplicative(t) => write!(f, "mult:{t}"),
        }
    }
}

/// `tau` or `divisor:<t_idx>:<t>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CoeffSpec {
    Tau,
    Divisor { omega: usize, t: f64 },
}

impl FromStr for CoeffSpec {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        if s == "tau" {
            return Ok(CoeffSpec::Tau);
        }
        let mut it = s.split(':');
        match (it.next(), it.next(), it.next(), it.next()) {
            (Some("divisor"), Some(w), Some(t), None) => Ok(CoeffSpec::Divisor {
                omega: w.parse().map_err(|e| format!("divisor index: {e}"))?,
                t: t.parse().map_err(|e| format!("divisor shift: {e}"))?,
            }),
            _ => Err(format!("expected tau or divisor:<t_idx>:<t>, got {s:?}")),
        }
    }
}

impl fmt::Display for CoeffSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffSpec::Tau => write!(f, "tau"),
            CoeffSpec::Divisor { omega, t } => write!(f, "divisor:{omega}:{t}"),
        }
    }
}

/// `exhaustive` or `sample:<n>:<seed>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeSpec {
    Exhaustive,
    Sample { n: usize, seed: u64 },
}

impl FromStr for ModeSpec {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        if s == "exhaustive" {
            return Ok(ModeSpec::Exhaustive);
        }
        let mut it = s.split(':');
        match (it.next(), it.next(), it.next(), it.next()) {
            (Some("sample"), Some(n), Some(seed), None) => Ok(ModeSpec::Sample {
                n: n.parse().map_err(|e| format!("sample size: {e}"))?,
                seed: seed.parse().map_err(|e| format!("sample seed: {e}"))?,
            }),
            _ => Err(format!("expected exhaustive or sample:<n>:<seed>, got {s:?}")),
        }
    }
}

impl fmt::Display for ModeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModeSpec::Exhaustive => write!(f, "exhaustive"),
            ModeSpec::Sample { n, seed } => write!(f, "sample:{n}:{seed}"),
        }
    }
}

struct Argv(Vec<String>);

impl Argv {
    fn push(&mut self, s: impl ToString) {
        self.0.push(s.to_string());
    }
    fn flag(&mut self, name: &str, v: impl ToString) {
        self.push(format!("--{name}"));
        self.push(v);
    }
    fn opt<V: ToString>(&mut self, name: &str, v: &Option<V>) {
        if let Some(v) = v {
            self.flag(name, v.to_string());
        }
    }
    fn path(&mut self, name: &str, v: &Option<PathBuf>) {
        if let Some(p) = v {
            self.flag(name, p.display());
        }
    }
    fn switch(&mut self, name: &str, on: bool) {
        if on {
            self.push(format!("--{name}"));
        }
    }
    fn list<V: ToString>(&mut self, name: &str, v: &[V]) {
        if !v.is_empty() {
            self.flag(name, v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","));
        }
    }
}

impl RunConfig {
    /// Parse, returning clap's error (usage text, exit code 2) on failure.
    pub fn parse_from_args<I, T>(args: I) -> Result<Self, clap::Error>
    where
        I: IntoIterator<Item = T>,
        T: Into<std::ffi::OsString> + Clone,
    {
        RunConfig::try_parse_from(args)
    }

    /// Equivalent command line, program name first.
    pub fn to_argv(&self) -> Vec<String> {
        let mut a = Argv(vec!["momentlab".into()]);
        a.opt("threads", &self.threads);
        a.path("config", &self.config);
        a.opt("damping", &self.damping);
        a.switch("timing", self.timing);
        for t in &self.tol {
            a.flag("tol", format!("{}={}", t.name, t.value));
        }
        match &self.command {
            Command::Verify { suite, q } => {
                a.push("verify");
                a.push(value_enum_name(suite));
                a.flag("q", q);
            }
            Command::Moment(m) => {
                a.push("moment");
                match m {
                    MomentCmd::Dirichlet { q, omega1, omega2, ell, out } => {
                        a.push("dirichlet");
                        a.flag("q", q);
                        a.flag("omega1", omega1);
                        a.flag("omega2", omega2);
                        a.flag("ell", ell);
                        a.path("out", out);
                    }
                    MomentCmd::Cusp { q, ell, out } => {
                        a.push("cusp");
                        a.flag("q", q);
                        a.flag("ell", ell);
                        a.path("out", out);
                    }
                    MomentCmd::CrossCheck { q, omega1, omega2, ell, parity, out } => {
                        a.push("cross-check");
                        a.flag("q", q);
                        a.flag("omega1", omega1);
                        a.flag("omega2", omega2);
                        a.flag("ell", ell);
                        a.flag("parity", parity);
                        a.path("out", out);
                    }
                }
            }
            Command::Census { q, cusp, seed, out } => {
                a.push("census");
                a.flag("q", q);
                a.switch("cusp", *cusp);
                a.opt("seed", seed);
                a.path("out", out);
            }
            Command::Scan { q_list, experiment, omega1, omega2, ell, kernel, coeff, out } => {
                a.push("scan");
                a.list("q-list", q_list);
                a.flag("experiment", value_enum_name(experiment));
                a.flag("omega1", omega1);
                a.flag("omega2", omega2);
                a.flag("ell", ell);
                a.flag("kernel", kernel);
                a.flag("coeff", coeff);
                a.path("out", out);
            }
            Command::Correlation(CorrelationCmd::Scan { q, kernel, omega, mode, m, out }) => {
                a.push("correlation");
                a.push("scan");
                a.flag("q", q);
                a.flag("kernel", kernel);
                a.flag("omega", omega);
                a.flag("mode", mode);
                a.opt("m", m);
                a.path("out", out);
            }
            Command::TwistSum { q, kernel, coeff, out } => {
                a.push("twist-sum");
                a.list("q", q);
                a.flag("kernel", kernel);
                a.flag("coeff", coeff);
                a.path("out", out);
            }
            Command::WeilScan { q, rank, twists, out } => {
                a.push("weil-scan");
                a.list("q", q);
                a.flag("rank", rank);
                a.list("twists", twists);
                a.path("out", out);
            }
            Command::Lvalue { q, chi, cusp } => {
                a.push("lvalue");
                a.flag("q", q);
                a.flag("chi", chi);
                a.switch("cusp", *cusp);
            }
            Command::Fixtures(FixturesCmd::Record { suite, out }) => {
                a.push("fixtures");
                a.push("record");
                a.flag("suite", suite);
                a.flag("out", out.display());
            }
        }
        a.0
    }
}
