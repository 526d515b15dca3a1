//! Command-line front end. Every subcommand is a thin adapter over library
//! calls; `run` returns the process exit code.
//!
//! Exit codes: 0 success, 1 verification failure, 2 invalid input.

use std::fmt::Write as _;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bands::{band_in_window, find_bands, parity_unchecked, type_unchecked, Band, Window};
use crate::bijection::{phi, psi, TraceStep};
use crate::enumerate::count_family_series;
use crate::error::{Error, Result};
use crate::families::{classify_window, FamilyId, WindowClass};
use crate::overpartition::Overpartition;
use crate::params::FamilyParams;
use crate::partition::Partition;
use crate::verify::{roundtrip_check, verify_identity, Identity, VerifyReport};

pub const THREADS_ENV: &str = "BRESSOUD_THREADS";

#[derive(Parser, Debug)]
#[command(
    name = "bressoud",
    version,
    about = "Count, verify and trace overpartition families defined by residue and band conditions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Plain, global = true)]
    format: Format,

    /// Worker threads (default: all cores, or BRESSOUD_THREADS).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
    Csv,
}

/// The tuple (alpha_1,...,alpha_lambda; eta, k, r).
#[derive(Args, Debug)]
struct ParamArgs {
    /// Residues alpha_1,...,alpha_lambda (comma separated; empty for lambda = 0).
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    alpha: Vec<u64>,
    #[arg(long)]
    eta: u64,
    #[arg(long)]
    k: u64,
    #[arg(long)]
    r: u64,
}

impl ParamArgs {
    fn build(&self) -> Result<FamilyParams> {
        FamilyParams::new(self.alpha.clone(), self.eta, self.k, self.r)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Per-n counts of a family.
    Count {
        /// A0bar, B0bar, Bbar, B1, Aj, Bj or Deta.
        #[arg(long)]
        family: String,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 0)]
        j: u8,
        #[arg(long, default_value_t = 60)]
        max_n: u64,
    },
    /// Compares both sides of an identity for every n up to --max-n.
    Verify {
        /// main, gfA0bar, gfBj, factor or classical.
        #[arg(long)]
        identity: String,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 0)]
        j: u8,
        #[arg(long, default_value_t = 60)]
        max_n: u64,
    },
    /// Lists the m-bands of an overpartition.
    Bands {
        #[arg(long)]
        pi: String,
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        params: ParamArgs,
        /// Also list the windows containing each band.
        #[arg(long)]
        windows: bool,
        /// Window index for band types (width k-2).
        #[arg(long)]
        t: Option<u64>,
    },
    /// Splits an overpartition into (tau, mu).
    Phi {
        #[arg(long)]
        pi: String,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        trace: bool,
    },
    /// Rebuilds an overpartition from (tau, mu).
    Psi {
        #[arg(long)]
        tau: String,
        #[arg(long)]
        mu: String,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        trace: bool,
    },
    /// Checks phi and psi are mutually inverse up to --max-n.
    Roundtrip {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 50)]
        max_n: u64,
    },
}

struct Output {
    text: String,
    code: i32,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let to_stdout = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let rendered = e.render().to_string();
            if to_stdout {
                let _ = out.write_all(rendered.as_bytes());
                return 0;
            }
            let _ = err.write_all(rendered.as_bytes());
            return 2;
        }
    };
    let threads = match thread_count(cli.threads) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 2;
        }
    };
    let result = match threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| dispatch(&cli)),
            Err(e) => Err(Error::InvalidParams(format!(
                "cannot start {n} threads: {e}"
            ))),
        },
        None => dispatch(&cli),
    };
    match result {
        Ok(output) => {
            let _ = out.write_all(output.text.as_bytes());
            if output.code != 0 {
                let _ = writeln!(err, "verification failed");
            }
            output.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if matches!(e, Error::InvariantViolated(_)) {
                1
            } else {
                2
            }
        }
    }
}

fn thread_count(flag: Option<usize>) -> Result<Option<usize>> {
    let n = match flag {
        Some(n) => Some(n),
        None => match std::env::var(THREADS_ENV) {
            Ok(v) => Some(v.trim().parse::<usize>().map_err(|_| {
                Error::InvalidParams(format!("{THREADS_ENV}={v:?} is not a thread count"))
            })?),
            Err(_) => None,
        },
    };
    if n == Some(0) {
        return Err(Error::InvalidParams("thread count must be positive".into()));
    }
    Ok(n)
}

fn dispatch(cli: &Cli) -> Result<Output> {
    let format = cli.format;
    match &cli.command {
        Command::Count {
            family,
            params,
            j,
            max_n,
        } => {
            let p = params.build()?;
            let f = family.parse::<FamilyId>()?.with_j(*j);
            let counts = count_family_series(f, &p, *max_n)?;
            Ok(Output::ok(render_counts(f, &p, &counts, format)))
        }
        Command::Verify {
            identity,
            params,
            j,
            max_n,
        } => {
            let p = params.build()?;
            let which: Identity = identity.parse()?;
            report_output(verify_identity(which, &p, *j, *max_n)?, format)
        }
        Command::Roundtrip { params, max_n } => {
            let p = params.build()?;
            report_output(roundtrip_check(&p, *max_n)?, format)
        }
        Command::Bands {
            pi,
            m,
            params,
            windows,
            t,
        } => {
            let p = params.build()?;
            let pi: Overpartition = pi.parse()?;
            render_bands(&pi, *m, &p, *windows, *t, format).map(Output::ok)
        }
        Command::Phi { pi, params, trace } => {
            let p = params.build()?;
            let pi: Overpartition = pi.parse()?;
            let res = phi(&pi, &p)?;
            let text = match format {
                Format::Json => json(&res),
                Format::Csv => trace_csv(&res.trace),
                Format::Plain => {
                    let mut s = format!("tau = ({})\nmu = ({})\n", res.tau, res.mu);
                    if *trace {
                        s.push_str(&trace_plain(&res.trace));
                    }
                    s
                }
            };
            Ok(Output::ok(text))
        }
        Command::Psi {
            tau,
            mu,
            params,
            trace,
        } => {
            let p = params.build()?;
            let tau: Partition = tau.parse()?;
            let mu: Overpartition = mu.parse()?;
            let res = psi(&tau, &mu, &p)?;
            let text = match format {
                Format::Json => json(&res),
                Format::Csv => trace_csv(&res.trace),
                Format::Plain => {
                    let mut s = format!("pi = ({})\n", res.pi);
                    if *trace {
                        s.push_str(&trace_plain(&res.trace));
                    }
                    s
                }
            };
            Ok(Output::ok(text))
        }
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output serializes");
    s.push('\n');
    s
}

fn report_output(report: VerifyReport, format: Format) -> Result<Output> {
    let text = match format {
        Format::Json => {
            let mut s = report.to_json();
            s.push('\n');
            s
        }
        Format::Csv => report.to_csv(),
        Format::Plain => report.to_plain(),
    };
    Ok(Output {
        text,
        code: if report.overall { 0 } else { 1 },
    })
}

#[derive(Serialize)]
struct CountTable<'a> {
    family: String,
    params: String,
    counts: &'a [u64],
}

fn render_counts(f: FamilyId, p: &FamilyParams, counts: &[u64], format: Format) -> String {
    match format {
        Format::Json => json(&CountTable {
            family: f.to_string(),
            params: p.to_string(),
            counts,
        }),
        Format::Csv | Format::Plain => {
            let mut s = String::from(if format == Format::Csv {
                "n,count\n"
            } else {
                ""
            });
            if format == Format::Plain {
                let _ = writeln!(s, "{f} {p}");
                let _ = writeln!(s, "{:>4} {:>12}", "n", "count");
            }
            for (n, c) in counts.iter().enumerate() {
                if format == Format::Csv {
                    let _ = writeln!(s, "{n},{c}");
                } else {
                    let _ = writeln!(s, "{n:>4} {c:>12}");
                }
            }
            s
        }
    }
}

#[derive(Serialize)]
struct BandRow {
    start: usize,
    width: usize,
    parts: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    parity: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    band_type: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    closed_windows: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    open_windows: Option<Vec<u64>>,
}

fn render_bands(
    pi: &Overpartition,
    m: usize,
    p: &FamilyParams,
    windows: bool,
    t: Option<u64>,
    format: Format,
) -> Result<String> {
    let eta = p.eta();
    let k = p.k() as usize;
    if m == 0 {
        return Err(Error::InvalidParams("band width must be positive".into()));
    }
    if let Some(t) = t {
        if m + 2 != k {
            return Err(Error::InvalidParams(format!(
                "band types need width k-2 = {}",
                k.saturating_sub(2)
            )));
        }
        let class = classify_window(pi, p, t)?;
        if class != WindowClass::Greater(t) {
            return Err(Error::WindowMismatch {
                t,
                expected: "Greater",
                found: format!("{class:?}"),
            });
        }
    }
    let max_t = pi.parts().first().map_or(1, |x| x.size() / eta + 1);
    let rows: Vec<BandRow> = find_bands(pi, m, eta)
        .into_iter()
        .map(|b: Band| {
            let in_windows = |open: bool| -> Vec<u64> {
                (1..=max_t)
                    .filter(|&t| {
                        let w = if open {
                            Window::open(t)
                        } else {
                            Window::closed(t)
                        };
                        band_in_window(pi, b, w, eta)
                    })
                    .collect()
            };
            let band_type = t.and_then(|t| {
                band_in_window(pi, b, Window::open(t), eta)
                    .then(|| format!("{:?}", type_unchecked(pi, b, t, p)))
            });
            BandRow {
                start: b.start,
                width: b.width,
                parts: b.render(pi),
                parity: (m + 1 == k).then(|| format!("{:?}", parity_unchecked(pi, b, p))),
                band_type,
                closed_windows: windows.then(|| in_windows(false)),
                open_windows: windows.then(|| in_windows(true)),
            }
        })
        .collect();
    Ok(match format {
        Format::Json => json(&rows),
        Format::Csv => {
            let mut s = String::from("start,width,parts,parity,type\n");
            for r in &rows {
                let _ = writeln!(
                    s,
                    "{},{},\"{}\",{},{}",
                    r.start,
                    r.width,
                    r.parts,
                    r.parity.as_deref().unwrap_or(""),
                    r.band_type.as_deref().unwrap_or("")
                );
            }
            s
        }
        Format::Plain => {
            let mut s = String::new();
            if rows.is_empty() {
                let _ = writeln!(s, "no {m}-bands");
            }
            for r in &rows {
                let _ = write!(s, "{:>3}  {}", r.start, r.parts);
                if let Some(par) = &r.parity {
                    let _ = write!(s, "  {par}");
                }
                if let Some(ty) = &r.band_type {
                    let _ = write!(s, "  type {ty}");
                }
                if let (Some(c), Some(o)) = (&r.closed_windows, &r.open_windows) {
                    let _ = write!(s, "  closed t={c:?} open t={o:?}");
                }
                s.push('\n');
            }
            s
        }
    })
}

fn ext(x: &crate::part::ExtPart) -> String {
    x.to_string()
}

fn trace_plain(trace: &[TraceStep]) -> String {
    let mut s = String::new();
    for (i, step) in trace.iter().enumerate() {
        let _ = write!(
            s,
            "step {}: t={} {:?} {} (s={}, g={})",
            i + 1,
            step.t,
            step.action,
            step.part,
            ext(&step.s_before),
            ext(&step.g_before)
        );
        if let Some(w) = step.witness {
            let _ = write!(s, " witness start={} width={}", w.start, w.width);
        }
        s.push('\n');
    }
    s
}

fn trace_csv(trace: &[TraceStep]) -> String {
    let mut s = String::from("t,action,part,s_before,g_before,witness_start,witness_width\n");
    for step in trace {
        let (ws, ww) = step.witness.map_or((String::new(), String::new()), |w| {
            (w.start.to_string(), w.width.to_string())
        });
        let _ = writeln!(
            s,
            "{},{:?},{},{},{},{ws},{ww}",
            step.t,
            step.action,
            step.part,
            ext(&step.s_before),
            ext(&step.g_before)
        );
    }
    s
}
