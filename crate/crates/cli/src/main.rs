//! `ufcp`: design, inspect and simulate UFCP space-time block codes.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use ufcp_core::channel::{sample_block, substream};
use ufcp_core::constellations::make_qam;
use ufcp_core::harness::{
    build_codebook, points_csv, run_cer_curve_with, gain_table, union_bound, write_report_json,
    write_gain_table_csv, Scheme, SimConfig, SimReport, GainTableOptions, DEFAULT_PILOT_SHARE,
};
use ufcp_core::receiver::Identifier;
use ufcp_core::stbc::{
    analytic_alpha, analytic_gain, coding_gain_bruteforce, enumerate_codebook, gain_case, optimal_design,
    CodewordLabel,
};
use ufcp_core::ufcp::factorize;

#[derive(Parser)]
#[command(name = "ufcp", version, about = "Unitary UFCP space-time block codes for 2x1 noncoherent links")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Constellation utilities.
    Constellation {
        #[command(subcommand)]
        cmd: ConstellationCmd,
    },
    /// Factorable-pair utilities.
    Ufcp {
        #[command(subcommand)]
        cmd: UfcpCmd,
    },
    /// Optimal code design for a rate.
    Design {
        #[arg(long)]
        rate_bits: u32,
        #[arg(long)]
        json: bool,
    },
    /// Coding gain for a rate.
    Gain {
        #[arg(long)]
        rate_bits: u32,
        #[arg(long, value_enum, default_value_t = GainMethod::Both)]
        method: GainMethod,
    },
    /// Reference versus computed optimal gains for r = 4..=13, as CSV.
    #[command(name = "gain-table", alias = "table1")]
    GainTable {
        #[arg(long)]
        out: Option<PathBuf>,
        /// Skip the exhaustive minimum above this rate.
        #[arg(long, default_value_t = 13)]
        bruteforce_max_rate: u32,
    },
    /// Monte Carlo codeword error rate over an SNR grid.
    Simulate {
        #[arg(long, value_enum)]
        scheme: SchemeArg,
        #[arg(long)]
        rate_bits: u32,
        /// `start:stop:step` in dB, or a single value.
        #[arg(long, default_value = "10:40:2")]
        snr_db: String,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Thread count; 0 uses all cores.
        #[arg(long, default_value_t = 0)]
        workers: usize,
        /// Pilot energy share of the training codes.
        #[arg(long, default_value_t = DEFAULT_PILOT_SHARE)]
        pilot_share: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write a JSON mirror with the code description.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Print the asymptotic union bound next to each point.
        #[arg(long)]
        union_bound: bool,
    },
    /// Noise-free blind identification over every codeword and random channels.
    Identify {
        #[arg(long)]
        rate_bits: u32,
        /// Channels per codeword.
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum ConstellationCmd {
    /// One point per line as `re im`.
    Dump {
        #[arg(long)]
        bits: u32,
    },
}

#[derive(Subcommand)]
enum UfcpCmd {
    /// Optimal factor of the 2^K QAM with |X| = 2 or 4.
    Factorize {
        #[arg(long)]
        bits: u32,
        #[arg(long, default_value_t = 2)]
        x_size: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GainMethod {
    Analytic,
    Bruteforce,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum SchemeArg {
    Ufcp,
    Differential,
    TrainingPsk,
    TrainingQam,
}

impl From<SchemeArg> for Scheme {
    fn from(s: SchemeArg) -> Self {
        match s {
            SchemeArg::Ufcp => Scheme::Ufcp,
            SchemeArg::Differential => Scheme::Differential,
            SchemeArg::TrainingPsk => Scheme::TrainingPsk,
            SchemeArg::TrainingQam => Scheme::TrainingQam,
        }
    }
}

fn parse_grid(spec: &str) -> Result<Vec<f64>> {
    let parts: Vec<f64> = spec
        .split(':')
        .map(|p| p.trim().parse::<f64>().with_context(|| format!("bad SNR value {p:?}")))
        .collect::<Result<_>>()?;
    match parts.as_slice() {
        [v] => Ok(vec![*v]),
        [a, b, step] => {
            if step.is_nan() || *step <= 0.0 || b < a {
                bail!("SNR grid needs start <= stop and a positive step");
            }
            let n = ((b - a) / step + 1e-9).floor() as usize;
            Ok((0..=n).map(|i| a + i as f64 * step).collect())
        }
        _ => bail!("SNR grid must be `start:stop:step` or a single value"),
    }
}

fn output(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).with_context(|| format!("creating {}", p.display()))?)),
        None => Box::new(io::stdout().lock()),
    })
}

/// `Ok(false)` signals a failed invariant.
fn run(cli: Cli) -> Result<bool> {
    match cli.cmd {
        Cmd::Constellation { cmd: ConstellationCmd::Dump { bits } } => {
            let q = make_qam(bits)?;
            let mut out = io::stdout().lock();
            for p in q.points() {
                writeln!(out, "{} {}", p.re, p.im)?;
            }
        }
        Cmd::Ufcp { cmd: UfcpCmd::Factorize { bits, x_size } } => {
            let u = factorize(&make_qam(bits)?, x_size)?;
            let join = |v: &[ufcp_core::constellations::GaussianInt]| {
                v.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")
            };
            println!("X = {{{}}}", join(u.x().points()));
            println!("Y = {{{}}}", join(u.y().points()));
            if u.y().len() >= 2 {
                println!("d_min(Y)^2 = {}", u.y().d_min_sq()?);
            }
            for (x, g) in u.groups() {
                println!("Z_{x} = {{{}}}", join(g.points()));
            }
            if !u.groups_partition_z() {
                eprintln!("groups do not partition the quotient set");
                return Ok(false);
            }
        }
        Cmd::Design { rate_bits, json } => {
            let d = optimal_design(rate_bits)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&d)?);
            } else {
                println!("rate_bits = {}", d.rate_bits());
                println!("delta = {}  p = {}  q = {}", d.delta(), d.p(), d.q());
                println!("|X| = {}  |Y1| = {}  |Y2| = {}", d.x().len(), d.ufcp1().y().len(), d.ufcp2().y().len());
                println!("case = {:?}", gain_case(rate_bits)?);
                println!("alpha = {}", d.alpha());
                println!("analytic_gain = {}", d.analytic_gain());
            }
        }
        Cmd::Gain { rate_bits, method } => {
            let a = analytic_gain(rate_bits)?;
            if matches!(method, GainMethod::Analytic | GainMethod::Both) {
                println!("analytic_gain = {a}");
                println!("analytic_alpha = {}", analytic_alpha(rate_bits)?);
            }
            if matches!(method, GainMethod::Bruteforce | GainMethod::Both) {
                let w = coding_gain_bruteforce(&optimal_design(rate_bits)?)?;
                println!("bruteforce_gain = {}", w.gain);
                let show = |l: CodewordLabel| match l {
                    CodewordLabel::Ufcp { x, y1, y2 } => format!("(x={x}, y1={y1}, y2={y2})"),
                    CodewordLabel::Symbols { s1, s2 } => format!("(s1={s1}, s2={s2})"),
                };
                println!("minimising pair = {} vs {}", show(w.first_label), show(w.second_label));
                let rel = (w.gain - a).abs() / a;
                println!("relative difference = {rel:e}");
            }
        }
        Cmd::GainTable { out, bruteforce_max_rate } => {
            let rows = gain_table(GainTableOptions { bruteforce_max_rate })?;
            write_gain_table_csv(&rows, output(&out)?)?;
            if rows.iter().any(|r| r.bruteforce_matches_analytic == Some(false) && r.rate_bits != 7) {
                eprintln!("exhaustive minimum disagrees with the closed form");
                return Ok(false);
            }
        }
        Cmd::Simulate { scheme, rate_bits, snr_db, trials, seed, workers, pilot_share, out, json, union_bound: ub } => {
            let mut cfg = SimConfig::new(scheme.into(), rate_bits, parse_grid(&snr_db)?, trials, seed);
            cfg.workers = workers;
            cfg.pilot_share = pilot_share;
            let cb = build_codebook(cfg.scheme, rate_bits, pilot_share)?;
            let points = run_cer_curve_with(&cfg, &cb)?;
            output(&out)?.write_all(points_csv(&points)?.as_bytes())?;
            if let Some(path) = json {
                let f = BufWriter::new(File::create(&path).with_context(|| format!("creating {}", path.display()))?);
                write_report_json(&SimReport { config: &cfg, codebook: cb.kind(), points: &points }, f)?;
            }
            if ub {
                for p in &points {
                    let snr = 10f64.powf(p.snr_db / 10.0);
                    match union_bound(&cb, snr) {
                        Ok(b) => eprintln!("snr_db={} cer={} union_bound={b:e}", p.snr_db, p.cer),
                        Err(e) => eprintln!("snr_db={} union bound unavailable: {e}", p.snr_db),
                    }
                }
            }
        }
        Cmd::Identify { rate_bits, trials, seed } => {
            let d = optimal_design(rate_bits)?;
            let cb = enumerate_codebook(&d)?;
            let id = Identifier::new(&d)?;
            let mut rng = substream(seed, 0);
            let (mut pass, mut fail) = (0u64, 0u64);
            for cw in cb.codewords() {
                let (x, y1, y2) = cw.triple().expect("UFCP codeword");
                for _ in 0..trials {
                    let h = sample_block(&mut rng).h;
                    match id.identify(&(cw.matrix * h)) {
                        Ok(got) if (got.x, got.y1, got.y2) == (x, y1, y2) && (got.h - h).norm() < 1e-9 => pass += 1,
                        _ => fail += 1,
                    }
                }
            }
            println!("codewords = {}  channels per codeword = {trials}", cb.len());
            println!("pass = {pass}  fail = {fail}");
            if fail > 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
