//! `mlynar` — evaluate, sample and study the Mlynar distribution.
//!
//! Subcommands: `pmf`, `stats`, `sample`, and `study {delta-fit, distance,
//! conjecture}`. Every command emits CSV (default) or JSON; floats are
//! printed at a configurable number of significant digits. Exit status is 0
//! on success, 2 on usage errors, 1 on internal numeric failures.

use clap::{Args, Parser, Subcommand, ValueEnum};

use mlynar::{
    delta_curve, distance_curve, exact, fit_power_law, run_batch, scaled_mean_limit, scaled_stats,
    GridSpec, Method, Mlynar, FULL_TABLE_LIMIT,
};
use mlynar_cli::{csv_line, fmt_sig, json_array, json_object, json_string};

#[derive(Parser)]
#[command(
    name = "mlynar",
    version,
    about = "Evaluate, sample and study the Mlynar distribution",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print pmf entries (k, p)
    Pmf(PmfArgs),
    /// Print mean, variance and the scaled statistics for one n
    Stats(StatsArgs),
    /// Draw gains and print sample statistics
    Sample(SampleArgs),
    /// Reproduce the convergence studies on decade grids
    #[command(subcommand)]
    Study(StudyCmd),
}

#[derive(Args)]
struct OutputOpts {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Significant digits for floating-point columns
    #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u32).range(1..=17))]
    precision: u32,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct PmfArgs {
    /// Face count n
    #[arg(long)]
    n: u64,
    /// First entry to print (defaults to 1)
    #[arg(long)]
    from: Option<u64>,
    /// Last entry to print (defaults to the table end)
    #[arg(long)]
    to: Option<u64>,
    /// Truncation threshold for the streamed table; defaults to 0 (full
    /// table) for n <= 10^7 and to 1e-18 above
    #[arg(long)]
    epsilon: Option<f64>,
    /// Print exact rationals (n <= 500)
    #[arg(long)]
    exact: bool,
    #[command(flatten)]
    out: OutputOpts,
}

#[derive(Args)]
struct StatsArgs {
    /// Face count n
    #[arg(long)]
    n: u64,
    #[command(flatten)]
    out: OutputOpts,
}

#[derive(Args)]
struct SampleArgs {
    /// Face count n
    #[arg(long)]
    n: u64,
    /// Number of plays
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    count: u64,
    /// Master seed; batches are bit-reproducible given (n, count, seed, method)
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Sampling route: "game" or "inverse"
    #[arg(long, default_value = "game")]
    method: String,
    /// Also print the gain histogram
    #[arg(long)]
    histogram: bool,
    #[command(flatten)]
    out: OutputOpts,
}

#[derive(Subcommand)]
enum StudyCmd {
    /// Delta(n) on a decade grid plus the power-law fit of its log-log line
    DeltaFit {
        /// Grid of decade exponents, e.g. "1..10" or "2,4,6" (max 15)
        #[arg(long, default_value = "1..10")]
        grid: String,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Kolmogorov distance to the Rayleigh(1) cdf on a decade grid
    Distance {
        /// Grid of decade exponents, e.g. "2..6" (max 8)
        #[arg(long, default_value = "2..6")]
        grid: String,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Scaled mean h(n), Delta(n) and Delta(n) sqrt(n) on a decade grid
    Conjecture {
        /// Grid of decade exponents, e.g. "1..10" (max 15)
        #[arg(long, default_value = "1..10")]
        grid: String,
        #[command(flatten)]
        out: OutputOpts,
    },
}

enum CliError {
    Usage(String),
    Internal(String),
}

impl From<mlynar::Error> for CliError {
    // every library error reachable from the command line is a bad argument
    fn from(e: mlynar::Error) -> CliError {
        CliError::Usage(e.to_string())
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(output) => print!("{output}"),
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(2);
        }
        Err(CliError::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            std::process::exit(1);
        }
    }
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Cmd::Pmf(args) => cmd_pmf(args),
        Cmd::Stats(args) => cmd_stats(args),
        Cmd::Sample(args) => cmd_sample(args),
        Cmd::Study(StudyCmd::DeltaFit { grid, out }) => cmd_delta_fit(&grid, &out),
        Cmd::Study(StudyCmd::Distance { grid, out }) => cmd_distance(&grid, &out),
        Cmd::Study(StudyCmd::Conjecture { grid, out }) => cmd_conjecture(&grid, &out),
    }
}

/// Guard against non-finite values escaping into the output.
fn finite(x: f64) -> Result<f64, CliError> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(CliError::Internal(format!("non-finite value {x}")))
    }
}

fn cmd_pmf(args: PmfArgs) -> Result<String, CliError> {
    let dist = Mlynar::new(args.n)?;
    let precision = args.out.precision;

    let entries: Vec<(u64, String)> = if args.exact {
        let table = exact::pmf(args.n)?;
        let (from, to) = resolve_range(args.from, args.to, args.n, args.n)?;
        table
            .iter()
            .enumerate()
            .map(|(i, p)| (i as u64 + 1, p.to_string()))
            .filter(|&(k, _)| k >= from && k <= to)
            .collect()
    } else if args.from.is_some() || args.to.is_some() {
        // explicit range: evaluate the closed form at the start, then the
        // survival recursion forward
        let (from, to) = resolve_range(args.from, args.to, args.n, 10_000_000)?;
        let nf = args.n as f64;
        let mut surv = dist.survival(from)?.value();
        let mut rows = Vec::with_capacity((to - from + 1) as usize);
        for k in from..=to {
            rows.push((k, fmt_sig(finite(surv * k as f64 / nf)?, precision)));
            surv *= (args.n - k) as f64 / nf;
        }
        rows
    } else {
        let epsilon = args
            .epsilon
            .unwrap_or(if args.n <= FULL_TABLE_LIMIT { 0.0 } else { 1e-18 });
        dist.pmf_iter(epsilon)?
            .map(|(k, p)| Ok((k, fmt_sig(finite(p)?, precision))))
            .collect::<Result<_, CliError>>()?
    };

    Ok(match args.out.format {
        Format::Csv => {
            let mut out = String::from("k,p\n");
            for (k, p) in entries {
                out.push_str(&csv_line(&[k.to_string(), p]));
                out.push('\n');
            }
            out
        }
        Format::Json => {
            let items: Vec<String> = entries
                .iter()
                .map(|(k, p)| {
                    let value = if args.exact { json_string(p) } else { p.clone() };
                    json_object(&[("k", k.to_string()), ("p", value)])
                })
                .collect();
            json_array(&items) + "\n"
        }
    })
}

fn resolve_range(
    from: Option<u64>,
    to: Option<u64>,
    n: u64,
    max_rows: u64,
) -> Result<(u64, u64), CliError> {
    let from = from.unwrap_or(1);
    let to = to.unwrap_or(n);
    if from < 1 || to > n || from > to {
        return Err(CliError::Usage(format!(
            "k-range {from}..{to} outside the support 1..={n}"
        )));
    }
    if to - from + 1 > max_rows {
        return Err(CliError::Usage(format!(
            "k-range spans {} rows; limit is {max_rows}",
            to - from + 1
        )));
    }
    Ok((from, to))
}

fn cmd_stats(args: StatsArgs) -> Result<String, CliError> {
    let dist = Mlynar::new(args.n)?;
    let s = scaled_stats(&dist);
    let modes = dist.modes().values();
    let p = args.out.precision;
    let cols = [
        ("n", args.n.to_string()),
        ("mean", fmt_sig(finite(s.mean)?, p)),
        ("variance", fmt_sig(finite(s.variance)?, p)),
        ("h", fmt_sig(finite(s.h)?, p)),
        ("v", fmt_sig(finite(s.v)?, p)),
        ("delta", fmt_sig(finite(s.delta)?, p)),
    ];
    Ok(match args.out.format {
        Format::Csv => {
            let modes_cell = modes
                .iter()
                .map(u64::to_string)
                .collect::<Vec<_>>()
                .join(";");
            let header: Vec<&str> = cols.iter().map(|(h, _)| *h).chain(["modes"]).collect();
            let values: Vec<String> = cols
                .iter()
                .map(|(_, v)| v.clone())
                .chain([modes_cell])
                .collect();
            format!("{}\n{}\n", header.join(","), csv_line(&values))
        }
        Format::Json => {
            let modes_json = json_array(&modes.iter().map(u64::to_string).collect::<Vec<_>>());
            let mut pairs: Vec<(&str, String)> =
                cols.iter().map(|(h, v)| (*h, v.clone())).collect();
            pairs.push(("modes", modes_json));
            json_object(&pairs) + "\n"
        }
    })
}

fn cmd_sample(args: SampleArgs) -> Result<String, CliError> {
    let dist = Mlynar::new(args.n)?;
    let method = match args.method.as_str() {
        "game" => Method::Game,
        "inverse" => Method::Inverse,
        other => {
            return Err(CliError::Usage(format!(
                "unknown method {other:?}; expected \"game\" or \"inverse\""
            )))
        }
    };
    let stats = run_batch(&dist, args.count, args.seed, method);
    let p = args.out.precision;
    let mean = fmt_sig(finite(stats.mean)?, p);
    let variance = fmt_sig(finite(stats.variance)?, p);

    Ok(match args.out.format {
        Format::Csv => {
            let mut out = format!(
                "count,mean,variance\n{}\n",
                csv_line(&[stats.count.to_string(), mean, variance])
            );
            if args.histogram {
                out.push('\n');
                out.push_str("gain,count\n");
                for (gain, count) in &stats.histogram {
                    out.push_str(&csv_line(&[gain.to_string(), count.to_string()]));
                    out.push('\n');
                }
            }
            out
        }
        Format::Json => {
            let mut pairs = vec![
                ("count", stats.count.to_string()),
                ("mean", mean),
                ("variance", variance),
            ];
            let hist_json;
            if args.histogram {
                let items: Vec<String> = stats
                    .histogram
                    .iter()
                    .map(|(g, c)| json_object(&[("gain", g.to_string()), ("count", c.to_string())]))
                    .collect();
                hist_json = json_array(&items);
                pairs.push(("histogram", hist_json));
            }
            json_object(&pairs) + "\n"
        }
    })
}

fn parse_grid(spec: &str) -> Result<GridSpec, CliError> {
    let parse_u32 = |s: &str| -> Result<u32, CliError> {
        s.trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("invalid grid exponent {s:?}")))
    };
    let grid = if let Some((lo, hi)) = spec.split_once("..") {
        GridSpec::decades(parse_u32(lo)?, parse_u32(hi)?)?
    } else if spec.contains(',') {
        let exps = spec
            .split(',')
            .map(parse_u32)
            .collect::<Result<Vec<_>, _>>()?;
        GridSpec::new(exps)?
    } else {
        GridSpec::new(vec![parse_u32(spec)?])?
    };
    Ok(grid)
}

fn cmd_delta_fit(grid: &str, out: &OutputOpts) -> Result<String, CliError> {
    let grid = parse_grid(grid)?;
    let points = delta_curve(&grid)?;
    let fit = fit_power_law(&points)?;
    let p = out.precision;

    let fit_cols = [
        ("alpha", fmt_sig(finite(fit.alpha)?, p)),
        ("alpha_se", fmt_sig(finite(fit.alpha_se)?, p)),
        ("beta", fmt_sig(finite(fit.beta)?, p)),
        ("beta_se", fmt_sig(finite(fit.beta_se)?, p)),
        ("c", fmt_sig(finite(fit.c)?, p)),
        ("c_se", fmt_sig(finite(fit.c_se)?, p)),
        ("n_points", fit.n_points.to_string()),
        ("dof", fit.dof.to_string()),
    ];
    Ok(match out.format {
        Format::Csv => {
            let mut s = String::from("n,delta\n");
            for &(n, d) in &points {
                s.push_str(&csv_line(&[n.to_string(), fmt_sig(finite(d)?, p)]));
                s.push('\n');
            }
            s.push('\n');
            let header: Vec<&str> = fit_cols.iter().map(|(h, _)| *h).collect();
            let values: Vec<String> = fit_cols.iter().map(|(_, v)| v.clone()).collect();
            s.push_str(&format!("{}\n{}\n", header.join(","), csv_line(&values)));
            s
        }
        Format::Json => {
            let items = points
                .iter()
                .map(|&(n, d)| {
                    Ok(json_object(&[
                        ("n", n.to_string()),
                        ("delta", fmt_sig(finite(d)?, p)),
                    ]))
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            let fit_pairs: Vec<(&str, String)> =
                fit_cols.iter().map(|(h, v)| (*h, v.clone())).collect();
            json_object(&[
                ("points", json_array(&items)),
                ("fit", json_object(&fit_pairs)),
            ]) + "\n"
        }
    })
}

fn cmd_distance(grid: &str, out: &OutputOpts) -> Result<String, CliError> {
    let grid = parse_grid(grid)?;
    let reports = distance_curve(&grid)?;
    let p = out.precision;
    let rows = reports
        .iter()
        .map(|r| {
            Ok([
                ("n", r.n.to_string()),
                ("d", fmt_sig(finite(r.d)?, p)),
                ("d_sqrt_n", fmt_sig(finite(r.d * (r.n as f64).sqrt())?, p)),
                ("argmax_x", fmt_sig(finite(r.argmax_x)?, p)),
            ])
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(render_rows(&rows, out.format))
}

fn cmd_conjecture(grid: &str, out: &OutputOpts) -> Result<String, CliError> {
    let grid = parse_grid(grid)?;
    let points = delta_curve(&grid)?;
    let p = out.precision;
    let rows = points
        .iter()
        .map(|&(n, delta)| {
            let h = scaled_mean_limit() - delta;
            Ok([
                ("n", n.to_string()),
                ("h", fmt_sig(finite(h)?, p)),
                ("delta", fmt_sig(finite(delta)?, p)),
                (
                    "delta_sqrt_n",
                    fmt_sig(finite(delta * (n as f64).sqrt())?, p),
                ),
            ])
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(render_rows(&rows, out.format))
}

fn render_rows<const W: usize>(rows: &[[(&str, String); W]], format: Format) -> String {
    match format {
        Format::Csv => {
            let mut s = String::new();
            if let Some(first) = rows.first() {
                let header: Vec<&str> = first.iter().map(|(h, _)| *h).collect();
                s.push_str(&header.join(","));
                s.push('\n');
            }
            for row in rows {
                let values: Vec<String> = row.iter().map(|(_, v)| v.clone()).collect();
                s.push_str(&csv_line(&values));
                s.push('\n');
            }
            s
        }
        Format::Json => {
            let items: Vec<String> = rows
                .iter()
                .map(|row| {
                    let pairs: Vec<(&str, String)> =
                        row.iter().map(|(h, v)| (*h, v.clone())).collect();
                    json_object(&pairs)
                })
                .collect();
            json_array(&items) + "\n"
        }
    }
}
