//! `luroth-cli`: exact expansions, orbit classification, Markov densities and
//! seeded Monte Carlo statistics for random c-Lüroth maps.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use luroth::expansion::{self, expand, fmt_word, parse_word, psi_periodic, psi_prefix};
use luroth::markov::{self, markov_points, DEFAULT_POINT_CAP};
use luroth::orbits::{self, LoopClass, Witness};
use luroth::rational::{best_rational_approximation, fmt_rational, parse_rational, to_f64};
use luroth::scalar::{fmt_real, real_json};
use luroth::stats::mc::{self, StatReport};
use luroth::stats::reference::luroth_series_lyapunov;
use luroth::stats::sim::{SimConfig, StartPoint};
use luroth::{BigRational, Error, OmegaSource, Params, SignDigit};
use num_traits::Zero;
use serde_json::{json, Value};

const AFTER_HELP: &str = "\
Rationals are written P/Q, as integers or as exact decimals. A decimal --p is
mapped to the nearest rational with denominator <= 10^6 for exact commands and
used as binary64 for Monte Carlo commands; the mapping is reported.

Exit codes: 0 success, 1 domain or numerical error, 2 usage or invalid
parameter, 3 cap exceeded.

CSV schemas:
  expand        n,omega_bit,s,d,x_num,x_den,p_n,q_n,theta_n   (x with --real)
  expand --eval-psi   value
  classify      field,value
  markov        lo,hi,kind,digit,region,symbol0,image0_lo,image0_hi,symbol1,image1_lo,image1_hi
  density       lo,hi,value                                  (--eval: x,value)
  freq          symbol,estimate,std_error,n_samples,reference (--exact: symbol,value)
  lyapunov      estimate,std_error,n_samples,reference,seed
  theta-stats   z,empirical,reference
  simulate      trajectory,lyapunov,mean_theta,switch_fraction,final_x
  coverage      block,count
  hitting       n,count   (a final row failed,<count>)";

#[derive(Parser)]
#[command(name = "luroth-cli", version, about = "Random c-Lüroth expansions and statistics", after_help = AFTER_HELP)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Left end of the domain [c, 1], with 0 <= c <= 1/2.
    #[arg(long, global = true, default_value = "0")]
    c: String,
    /// Probability of the branch T_0 (omega bit 0).
    #[arg(long, global = true, default_value = "1/2")]
    p: String,
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for Monte Carlo commands; results do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true)]
    steps: Option<usize>,
    #[arg(long, global = true)]
    trajectories: Option<usize>,
    /// Start point: a rational in [c, 1] or "uniform".
    #[arg(long, global = true, default_value = "uniform")]
    x0: String,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Expand x along omega in exact arithmetic (default 20 steps).
    Expand {
        #[arg(long, required_unless_present = "eval_psi")]
        x: Option<String>,
        /// "0110" (finite), "00(1)" or "(011)" (eventually periodic); i.i.d.
        /// bits from --p and --seed when absent.
        #[arg(long)]
        omega: Option<String>,
        /// Iterate in binary64 instead of exact rationals.
        #[arg(long)]
        real: bool,
        /// Evaluate a symbol word: "(0,2)(1,2)" or "pre[period]" such as
        /// "(1,2)(1,2)[(0,2)]". "-" reads an expand report (CSV or JSON) from
        /// stdin and rebuilds its start point.
        #[arg(long)]
        eval_psi: Option<String>,
        /// Remainder point appended to a finite word for --eval-psi.
        #[arg(long, requires = "eval_psi")]
        tail: Option<String>,
    },
    /// Classify the expansions of a rational x.
    Classify {
        #[arg(long)]
        x: String,
        /// Write the orbit graph in DOT format to this path.
        #[arg(long)]
        emit_graph: Option<PathBuf>,
        /// Also list up to this many eventually periodic expansions.
        #[arg(long)]
        expansions: Option<usize>,
        #[arg(long, default_value_t = orbits::DEFAULT_NODE_CAP)]
        node_cap: usize,
    },
    /// Markov partition of a rational c > 0 and the cell images.
    Markov {
        #[arg(long, default_value_t = DEFAULT_POINT_CAP)]
        point_cap: usize,
    },
    /// Exact stationary density for rational c > 0 and 0 < p < 1.
    Density {
        /// Evaluate the density at this point.
        #[arg(long)]
        eval: Option<String>,
    },
    /// Digit and symbol frequencies.
    Freq {
        /// Exact frequencies from the stationary density instead of Monte Carlo.
        #[arg(long)]
        exact: bool,
        /// Digits above this are lumped together when c = 0.
        #[arg(long)]
        max_digit: Option<u64>,
    },
    /// Lyapunov exponent.
    Lyapunov {
        /// Exact value for c > 0, rigorous series enclosure for c = 0.
        #[arg(long)]
        exact: bool,
        /// Series truncation for --exact with c = 0.
        #[arg(long, default_value_t = mc::SERIES_TRUNCATION)]
        truncation: u64,
        /// Report the convergence slope (1/n) ln|x - p_n/q_n| instead.
        #[arg(long, conflicts_with = "exact")]
        convergence: bool,
    },
    /// Mean and distribution of the approximation coefficients.
    ThetaStats {
        /// Comma-separated CDF grid.
        #[arg(long, default_value = "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,1")]
        grid: String,
    },
    /// Per-trajectory summaries.
    Simulate,
    /// Occurrences of every block of signed digits.
    Coverage {
        #[arg(long, default_value_t = 3)]
        block_len: usize,
        /// Largest digit in the alphabet when c = 0.
        #[arg(long)]
        max_digit: Option<u64>,
    },
    /// First entrance times into the switch region.
    Hitting {
        #[arg(long, default_value_t = 1000)]
        max_steps: usize,
    },
}

/// `--p` read both ways.
struct Probability {
    exact: BigRational,
    real: f64,
    /// Set when a decimal was rounded to a nearby rational.
    mapping: Option<String>,
}

fn parse_p(s: &str) -> anyhow::Result<Probability> {
    if s.contains('/') {
        let exact = parse_rational(s)?;
        return Ok(Probability { real: to_f64(&exact), exact, mapping: None });
    }
    let bad = || Error::Parse(format!("bad probability {s:?}"));
    let real: f64 = s.trim().parse().map_err(|_| bad())?;
    let exact = best_rational_approximation(real, 1_000_000).ok_or_else(bad)?;
    let mapping = Some(format!("{} -> {}", s.trim(), fmt_rational(&exact)));
    Ok(Probability { exact, real, mapping })
}

struct Ctx {
    c: BigRational,
    p: Probability,
    common: Common,
}

impl Ctx {
    fn params(&self) -> anyhow::Result<Params> {
        Ok(Params::new(self.c.clone(), self.p.exact.clone())?)
    }

    fn sim(&self, default_steps: usize, default_traj: usize) -> anyhow::Result<SimConfig> {
        let x0 = match self.common.x0.trim() {
            "uniform" => StartPoint::Uniform,
            s => StartPoint::Fixed(parse_rational(s)?),
        };
        let cfg = SimConfig::new(
            self.c.clone(),
            self.p.real,
            self.common.steps.unwrap_or(default_steps),
            self.common.trajectories.unwrap_or(default_traj),
            self.common.seed,
        )
        .with_x0(x0);
        cfg.validate()?;
        Ok(cfg)
    }

    /// Fields shared by every JSON report.
    fn header(&self, exact: bool) -> Value {
        let mut h = json!({ "c": fmt_rational(&self.c) });
        if exact {
            h["p"] = json!(fmt_rational(&self.p.exact));
        } else {
            h["p"] = real_json(self.p.real);
        }
        if let (true, Some(m)) = (exact, &self.p.mapping) {
            h["p_mapping"] = json!(m);
        }
        h
    }

    fn note_mapping(&self) {
        if let Some(m) = &self.p.mapping {
            eprintln!("note: p mapped {m}");
        }
    }
}

enum Output {
    Json(Value),
    Csv(Vec<String>, Vec<Vec<String>>),
}

fn merge(mut base: Value, extra: Value) -> Value {
    if let (Some(b), Value::Object(e)) = (base.as_object_mut(), extra) {
        b.extend(e);
    }
    base
}

fn csv(header: &[&str], rows: Vec<Vec<String>>) -> Output {
    Output::Csv(header.iter().map(|s| s.to_string()).collect(), rows)
}

fn report_row(r: &StatReport) -> Vec<String> {
    vec![
        fmt_real(r.estimate),
        fmt_real(r.std_error),
        r.n_samples.to_string(),
        r.reference.map(fmt_real).unwrap_or_default(),
    ]
}

fn loop_json(l: &LoopClass) -> Value {
    let bits: String = l.representative_bits.iter().map(|b| char::from(b'0' + b)).collect();
    json!({ "node": fmt_rational(&l.anchor), "word": fmt_word(&l.label_word), "bits": bits })
}

fn witness_json(w: &Witness) -> Value {
    match w {
        Witness::Deterministic(d) => json!({
            "kind": "deterministic",
            "path": d.path.iter().map(fmt_rational).collect::<Vec<_>>(),
            "word": fmt_word(&d.labels),
            "cycle_start": d.cycle_start,
        }),
        Witness::TwoLoops(a, b) => json!({
            "kind": "two-loops",
            "node": fmt_rational(&a.anchor),
            "loops": [loop_json(a), loop_json(b)],
        }),
        Witness::SingleLoops(ls) => json!({
            "kind": "single-loops",
            "loops": ls.iter().map(loop_json).collect::<Vec<_>>(),
        }),
    }
}

/// Rebuilds `x_0` from an expand report: the symbols and the last exact point.
fn psi_from_report(text: &str) -> anyhow::Result<BigRational> {
    let (digits, last) = if text.trim_start().starts_with('{') {
        let v: Value = serde_json::from_str(text)?;
        let steps = v["steps"].as_array().ok_or_else(|| anyhow!("report has no steps"))?;
        let mut digits = Vec::new();
        for st in steps {
            let s = st["s"].as_u64().ok_or_else(|| anyhow!("step without s"))?;
            let d = st["d"].as_u64().ok_or_else(|| anyhow!("step without d"))?;
            digits.push(SignDigit::new(s as u8, d));
        }
        let last = steps.last().and_then(|st| st["x"].as_str()).ok_or_else(|| anyhow!("report has no exact x"))?;
        (digits, parse_rational(last)?)
    } else {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header: Vec<&str> = lines.next().ok_or_else(|| anyhow!("empty report"))?.split(',').collect();
        let col = |name: &str| header.iter().position(|h| *h == name).ok_or_else(|| anyhow!("report has no {name} column"));
        let (cs, cd, cn, cq) = (col("s")?, col("d")?, col("x_num")?, col("x_den")?);
        let mut digits = Vec::new();
        let mut last = None;
        for line in lines {
            let f: Vec<&str> = line.split(',').collect();
            digits.push(SignDigit::new(f[cs].parse()?, f[cd].parse()?));
            last = Some(parse_rational(&format!("{}/{}", f[cn], f[cq]))?);
        }
        (digits, last.ok_or_else(|| anyhow!("report has no rows"))?)
    };
    Ok(expansion::reconstruct(&digits, &last))
}

fn eval_psi(word: &str, tail: Option<&str>) -> anyhow::Result<BigRational> {
    if word.trim() == "-" {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text)?;
        return psi_from_report(&text);
    }
    if let Some((pre, rest)) = word.split_once('[') {
        let period = rest.strip_suffix(']').ok_or_else(|| Error::Parse(format!("unclosed period in {word:?}")))?;
        if tail.is_some() {
            bail!(Error::InvalidParameter("--tail applies to finite words only".into()));
        }
        return Ok(psi_periodic(&parse_word(pre)?, &parse_word(period)?)?);
    }
    let digits = parse_word(word)?;
    Ok(match tail {
        Some(t) => expansion::reconstruct(&digits, &parse_rational(t)?),
        None => psi_prefix(&digits),
    })
}

fn run(cli: Cli) -> anyhow::Result<Output> {
    if let Some(n) = cli.common.threads {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    let c = parse_rational(&cli.common.c)?;
    luroth::maps::check_c(&c)?;
    let p = parse_p(&cli.common.p)?;
    if !(0.0..=1.0).contains(&p.real) {
        bail!(Error::InvalidParameter(format!("p = {} is outside [0, 1]", cli.common.p)));
    }
    let format = cli.common.format;
    let ctx = Ctx { c, p, common: cli.common };
    let c = &ctx.c;

    Ok(match cli.command {
        Command::Expand { x, omega, real, eval_psi: Some(word), tail } => {
            let _ = (x, omega, real);
            let v = eval_psi(&word, tail.as_deref())?;
            match format {
                Format::Json => Output::Json(json!({ "value": fmt_rational(&v) })),
                Format::Csv => csv(&["value"], vec![vec![fmt_rational(&v)]]),
            }
        }
        Command::Expand { x, omega, real, eval_psi: None, .. } => {
            let x = parse_rational(x.as_deref().unwrap_or_default())?;
            let source = match &omega {
                Some(w) => w.parse::<OmegaSource>()?,
                None => OmegaSource::bernoulli(ctx.p.real, ctx.common.seed)?,
            };
            let steps = ctx.common.steps.unwrap_or(20);
            let mut head = ctx.header(false);
            head["omega"] = json!(source.to_string());
            if omega.is_none() {
                head["seed"] = json!(ctx.common.seed);
            }
            if real {
                let rec = expand(&source, &to_f64(&x), &to_f64(c), steps)?;
                match format {
                    Format::Json => Output::Json(merge(head, rec.to_json())),
                    Format::Csv => Output::Csv(luroth::expansion::ExpansionRecord::<f64>::csv_header(), rec.csv_rows()),
                }
            } else {
                let rec = expand(&source, &x, c, steps)?;
                match format {
                    Format::Json => {
                        head["word"] = json!(fmt_word(&rec.digits));
                        Output::Json(merge(head, rec.to_json()))
                    }
                    Format::Csv => Output::Csv(luroth::expansion::ExpansionRecord::<BigRational>::csv_header(), rec.csv_rows()),
                }
            }
        }
        Command::Classify { x, emit_graph, expansions, node_cap } => {
            let x = parse_rational(&x)?;
            let cl = orbits::classify_with_cap(&x, c, node_cap)?;
            if let Some(path) = emit_graph {
                fs::write(&path, cl.graph.to_dot()).with_context(|| format!("writing {}", path.display()))?;
            }
            let listed = match expansions {
                Some(n) => Some(orbits::expansions_in_graph(&cl.graph, n, 12)),
                None => None,
            };
            match format {
                Format::Json => {
                    let mut v = json!({
                        "c": fmt_rational(c),
                        "x": fmt_rational(&x),
                        "class": cl.class.name(),
                        "witness": witness_json(&cl.witness),
                        "graph_nodes": cl.graph.len(),
                        "recurrent_nodes": cl.graph.recurrent_nodes().iter().map(|&i| fmt_rational(&cl.graph.nodes[i])).collect::<Vec<_>>(),
                    });
                    if let Some(l) = &listed {
                        v["expansions"] = json!(l.iter().map(|e| e.to_string()).collect::<Vec<_>>());
                    }
                    Output::Json(v)
                }
                Format::Csv => {
                    let w = witness_json(&cl.witness);
                    let mut rows = vec![
                        vec!["class".into(), cl.class.name().into()],
                        vec!["witness".into(), w["kind"].as_str().unwrap_or_default().into()],
                    ];
                    if let Witness::TwoLoops(a, b) = &cl.witness {
                        rows.push(vec!["node".into(), fmt_rational(&a.anchor)]);
                        rows.push(vec!["loop".into(), fmt_word(&a.label_word)]);
                        rows.push(vec!["loop".into(), fmt_word(&b.label_word)]);
                    }
                    for e in listed.iter().flatten() {
                        rows.push(vec!["expansion".into(), e.to_string()]);
                    }
                    csv(&["field", "value"], rows)
                }
            }
        }
        Command::Markov { point_cap } => {
            let part = markov_points(c, point_cap)?;
            let images = part.cell_images()?;
            let cells: Vec<Vec<String>> = images
                .iter()
                .enumerate()
                .map(|(i, im)| {
                    let (lo, hi) = part.cell(i);
                    let mut row = vec![fmt_rational(lo), fmt_rational(hi), format!("{:?}", part.kinds[i]).to_lowercase()];
                    row.push(im.location.digit.to_string());
                    row.push(im.location.region.name().into());
                    for j in 0..2 {
                        let (a, b) = im.images[j];
                        row.push(im.symbols[j].to_string());
                        row.push(fmt_rational(&part.breakpoints[a]));
                        row.push(fmt_rational(&part.breakpoints[b]));
                    }
                    row
                })
                .collect();
            match format {
                Format::Json => Output::Json(json!({
                    "c": fmt_rational(c),
                    "breakpoints": part.breakpoints.iter().map(fmt_rational).collect::<Vec<_>>(),
                    "n_cells": part.n_cells(),
                    "cells": cells.iter().map(|r| json!({
                        "lo": r[0], "hi": r[1], "kind": r[2], "digit": r[3], "region": r[4],
                        "images": [
                            { "symbol": r[5], "lo": r[6], "hi": r[7] },
                            { "symbol": r[8], "lo": r[9], "hi": r[10] },
                        ],
                    })).collect::<Vec<_>>(),
                })),
                Format::Csv => csv(
                    &["lo", "hi", "kind", "digit", "region", "symbol0", "image0_lo", "image0_hi", "symbol1", "image1_lo", "image1_hi"],
                    cells,
                ),
            }
        }
        Command::Density { eval } => {
            ctx.note_mapping();
            let params = ctx.params()?;
            let full = markov::stationary_density(&params)?;
            let residual_zero = markov::is_exact_zero(&markov::stationarity_residual(&full, c, &params.p)?);
            let d = full.merged();
            if let Some(x) = eval {
                let x = parse_rational(&x)?;
                let v = d.eval(&x).ok_or_else(|| Error::Domain(format!("x = {} is outside [c, 1]", fmt_rational(&x))))?;
                return Ok(match format {
                    Format::Json => Output::Json(merge(ctx.header(true), json!({ "x": fmt_rational(&x), "value": fmt_rational(&v) }))),
                    Format::Csv => csv(&["x", "value"], vec![vec![fmt_rational(&x), fmt_rational(&v)]]),
                });
            }
            match format {
                Format::Json => Output::Json(merge(
                    ctx.header(true),
                    json!({
                        "breakpoints": d.breakpoints.iter().map(fmt_rational).collect::<Vec<_>>(),
                        "values": d.values.iter().map(fmt_rational).collect::<Vec<_>>(),
                        "merged": true,
                        "residual_zero": residual_zero,
                    }),
                )),
                Format::Csv => csv(
                    &["lo", "hi", "value"],
                    (0..d.values.len())
                        .map(|i| vec![fmt_rational(&d.breakpoints[i]), fmt_rational(&d.breakpoints[i + 1]), fmt_rational(&d.values[i])])
                        .collect(),
                ),
            }
        }
        Command::Freq { exact: true, .. } => {
            ctx.note_mapping();
            let f = markov::digit_frequencies(&ctx.params()?)?;
            let rows: Vec<(String, BigRational)> = f
                .digits
                .iter()
                .map(|(d, v)| (d.to_string(), v.clone()))
                .chain(f.symbols.iter().map(|(s, v)| (s.to_string(), v.clone())))
                .collect();
            match format {
                Format::Json => Output::Json(merge(
                    ctx.header(true),
                    json!({ "frequencies": rows.iter().map(|(k, v)| json!({ "symbol": k, "value": fmt_rational(v) })).collect::<Vec<_>>() }),
                )),
                Format::Csv => csv(&["symbol", "value"], rows.into_iter().map(|(k, v)| vec![k, fmt_rational(&v)]).collect()),
            }
        }
        Command::Freq { exact: false, max_digit } => {
            let cfg = ctx.sim(100_000, 10)?;
            let t = mc::digit_freq_mc(&cfg, max_digit)?;
            match format {
                Format::Json => Output::Json(merge(ctx.header(false), t.to_json())),
                Format::Csv => csv(
                    &["symbol", "estimate", "std_error", "n_samples", "reference"],
                    t.rows.iter().map(|r| [vec![r.label()], report_row(&r.report)].concat()).collect(),
                ),
            }
        }
        Command::Lyapunov { exact: true, truncation, .. } => {
            let v = if c.is_zero() {
                let e = luroth_series_lyapunov(truncation)?;
                json!({
                    "truncation": e.truncation,
                    "partial_sum": real_json(e.partial),
                    "lower": real_json(e.lower),
                    "upper": real_json(e.upper),
                    "width": real_json(e.width()),
                    "estimate": real_json(e.midpoint()),
                })
            } else {
                ctx.note_mapping();
                merge(ctx.header(true), json!({ "estimate": real_json(markov::lyapunov_exact(&ctx.params()?)?) }))
            };
            match format {
                Format::Json => Output::Json(merge(json!({ "c": fmt_rational(c) }), v)),
                Format::Csv => csv(&["estimate"], vec![vec![fmt_real(v["estimate"].as_f64().unwrap_or(f64::NAN))]]),
            }
        }
        Command::Lyapunov { exact: false, convergence, .. } => {
            let cfg = ctx.sim(100_000, 10)?;
            let r = if convergence { mc::convergence_rate_mc(&cfg)?.slope } else { mc::lyapunov_mc(&cfg)? };
            match format {
                Format::Json => {
                    let mut v = merge(ctx.header(false), r.to_json());
                    v["quantity"] = json!(if convergence { "convergence-slope" } else { "lyapunov" });
                    Output::Json(v)
                }
                Format::Csv => csv(
                    &["estimate", "std_error", "n_samples", "reference", "seed"],
                    vec![[report_row(&r), vec![r.seed.to_string()]].concat()],
                ),
            }
        }
        Command::ThetaStats { grid } => {
            let grid: Vec<f64> =
                grid.split(',').map(|s| s.trim().parse::<f64>()).collect::<Result<_, _>>().map_err(|_| Error::Parse(format!("bad grid {grid:?}")))?;
            let cfg = ctx.sim(100_000, 10)?;
            let st = mc::theta_stats_mc(&cfg, &grid)?;
            match format {
                Format::Json => Output::Json(merge(ctx.header(false), st.to_json())),
                Format::Csv => csv(
                    &["z", "empirical", "reference"],
                    st.cdf.iter().map(|(z, e, r)| vec![fmt_real(*z), fmt_real(*e), r.map(fmt_real).unwrap_or_default()]).collect(),
                ),
            }
        }
        Command::Simulate => {
            let cfg = ctx.sim(10_000, 10)?;
            let rows = mc::simulate(&cfg)?;
            match format {
                Format::Json => Output::Json(merge(
                    ctx.header(false),
                    json!({
                        "seed": cfg.seed,
                        "steps": cfg.n_steps,
                        "trajectories": rows.iter().map(|t| json!({
                            "trajectory": t.index,
                            "lyapunov": real_json(t.lyapunov),
                            "mean_theta": real_json(t.mean_theta),
                            "switch_fraction": real_json(t.switch_fraction),
                            "final_x": real_json(t.final_x),
                        })).collect::<Vec<_>>(),
                    }),
                )),
                Format::Csv => csv(
                    &["trajectory", "lyapunov", "mean_theta", "switch_fraction", "final_x"],
                    rows.iter()
                        .map(|t| vec![t.index.to_string(), fmt_real(t.lyapunov), fmt_real(t.mean_theta), fmt_real(t.switch_fraction), fmt_real(t.final_x)])
                        .collect(),
                ),
            }
        }
        Command::Coverage { block_len, max_digit } => {
            let cfg = ctx.sim(100_000, 10)?;
            let r = mc::block_coverage(&cfg, block_len, max_digit)?;
            match format {
                Format::Json => Output::Json(merge(ctx.header(false), merge(json!({ "seed": cfg.seed }), r.to_json()))),
                Format::Csv => csv(
                    &["block", "count"],
                    r.counts.iter().enumerate().map(|(i, n)| vec![fmt_word(&r.block(i)), n.to_string()]).collect(),
                ),
            }
        }
        Command::Hitting { max_steps } => {
            let cfg = ctx.sim(1, 10_000)?;
            let h = mc::switch_hitting_mc(&cfg, max_steps)?;
            match format {
                Format::Json => Output::Json(merge(ctx.header(false), h.to_json())),
                Format::Csv => {
                    let mut rows: Vec<Vec<String>> = h.histogram.iter().map(|(n, k)| vec![n.to_string(), k.to_string()]).collect();
                    rows.push(vec!["failed".into(), h.failures.to_string()]);
                    csv(&["n", "count"], rows)
                }
            }
        }
    })
}

fn render(out: Output) -> String {
    match out {
        Output::Json(v) => format!("{}\n", serde_json::to_string_pretty(&v).expect("serializable")),
        Output::Csv(header, rows) => {
            let mut s = header.join(",");
            s.push('\n');
            for r in rows {
                s.push_str(&r.join(","));
                s.push('\n');
            }
            s
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::CapExceeded { .. }) => 3,
        Some(Error::InvalidParameter(_) | Error::Parse(_) | Error::OmegaExhausted { .. }) => 2,
        Some(_) => 1,
        None => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out_path = cli.common.out.clone();
    let result = run(cli).and_then(|out| {
        let text = render(out);
        match &out_path {
            Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
            None => io::stdout().write_all(text.as_bytes()).map_err(Into::into),
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
