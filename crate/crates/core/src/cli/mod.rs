//! Experiment runner behind the `cfsl2` binary.
//!
//! Every command reads a [`Config`], returns its output as strings and never
//! touches the clock, so the same config (hash) yields byte-identical files.

pub mod config;

pub use config::Config;

use crate::cf::{constants, dump_records, expand_expr, PrecisionPolicy};
use crate::embed::{compatibility_check, embed_matrix, height_comparable, random_generator_product, random_point};
use crate::error::{Error, Result};
use crate::exponent::{
    dirichlet_profile, dirichlet_rescan_shuffled, omega_k_estimate, planted_violation, predicted_bounds,
    residual_floor_check, ExponentReport, FloorSpec, OrbitRecord, DEFAULT_BUDGET,
};
use crate::field::{Dyadic, Ring};
use crate::matrix::{run_orbit, OrbitRun, OrbitSpec, TargetClass, TargetInput, DEFAULT_OMEGA};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt::Write as _;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
pub const DEFAULT_DIGITS: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Expand,
    Orbit,
    Exponent,
    Dirichlet,
    EmbedCheck,
    FloorCheck,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Expand => "expand",
            Command::Orbit => "orbit",
            Command::Exponent => "exponent",
            Command::Dirichlet => "dirichlet",
            Command::EmbedCheck => "embed-check",
            Command::FloorCheck => "floor-check",
        }
    }

    pub fn from_name(name: &str) -> Option<Command> {
        <Command as clap::ValueEnum>::value_variants().iter().copied().find(|c| c.name() == name)
    }
}

/// What a command produced. `extras` go to `<out>.<suffix>` (or follow the
/// main output on stdout); `notes` go to stderr.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub main: String,
    pub extras: Vec<(String, String)>,
    pub notes: Vec<String>,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Config(_) | Error::Parse(_) => 2,
        Error::PrecisionInsufficient { .. } | Error::DivisionNearZero { .. } => 3,
        Error::EnumerationBudgetExceeded { .. } => 4,
        _ => 1,
    }
}

/// Round-half-even to `digits` significant digits from the exact binary value.
pub fn dec(x: f64, digits: usize) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        Dyadic::from_f64(x).to_sci_string(digits)
    }
}

const COMMON_KEYS: &[&str] = &["d", "digits", "precision", "precision_cap", "seed"];

struct Ctx<'a> {
    cmd: Command,
    cfg: &'a Config,
    ring: Ring,
    digits: usize,
    policy: PrecisionPolicy,
    seed: u64,
}

impl<'a> Ctx<'a> {
    fn new(cmd: Command, cfg: &'a Config, keys: &[&str]) -> Result<Self> {
        let mut allowed = COMMON_KEYS.to_vec();
        allowed.extend_from_slice(keys);
        cfg.check_keys(&allowed)?;
        let start = cfg.count_or("precision", 256)?;
        let cap = cfg.count_or("precision_cap", 4096.max(start))?;
        if start > u32::MAX as usize || cap < start {
            return Err(Error::Config("precision_cap must be at least precision".into()));
        }
        Ok(Ctx {
            cmd,
            cfg,
            ring: cfg.ring()?,
            digits: cfg.count_or("digits", DEFAULT_DIGITS)?,
            policy: PrecisionPolicy {
                start: start as u32,
                cap: cap as u32,
            },
            seed: cfg.u64_or("seed", 0)?,
        })
    }

    fn dec(&self, x: f64) -> String {
        dec(x, self.digits)
    }

    /// Comment lines identifying the run, followed by `extra` lines.
    fn header(&self, extra: &[(&str, String)]) -> String {
        let mut h = String::new();
        let _ = writeln!(h, "# tool: cfsl2 {VERSION}");
        let _ = writeln!(h, "# command: {}", self.cmd.name());
        let _ = writeln!(h, "# config_sha256: {}", self.cfg.hash());
        let _ = writeln!(h, "# ring: d={}", self.ring.d());
        match constants(self.ring) {
            Some(c) => {
                let _ = writeln!(
                    h,
                    "# constants: theta={} r0={} C0={} C1={} C2={} r1={}",
                    self.dec(c.theta_f64()),
                    c.r0,
                    self.dec(c.c0_f64()),
                    self.dec(c.c1_f64()),
                    self.dec(c.c2_f64()),
                    c.r1
                );
            }
            None => {
                let _ = writeln!(h, "# constants: none");
            }
        }
        let _ = writeln!(h, "# digits: {} (round half even)", self.digits);
        let _ = writeln!(h, "# precision: {}", self.policy.start);
        let _ = writeln!(h, "# seed: {}", self.seed);
        for (k, v) in extra {
            let _ = writeln!(h, "# {k}: {v}");
        }
        h
    }
}

fn csv_text(header: &[&str], rows: &[Vec<String>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Io(std::io::Error::other(e));
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(r).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(std::io::Error::other(e.to_string())))?;
    Ok(String::from_utf8(bytes).expect("csv of utf-8 fields"))
}

pub fn execute(cmd: Command, cfg: &Config) -> Result<Outcome> {
    match cmd {
        Command::Expand => cmd_expand(cfg),
        Command::Orbit => cmd_orbit(cfg),
        Command::Exponent => cmd_exponent(cfg),
        Command::Dirichlet => cmd_dirichlet(cfg),
        Command::EmbedCheck => cmd_embed_check(cfg),
        Command::FloorCheck => cmd_floor_check(cfg),
    }
}

fn cmd_expand(cfg: &Config) -> Result<Outcome> {
    let ctx = Ctx::new(Command::Expand, cfg, &["z", "terms"])?;
    let z = cfg.expr("z")?;
    let terms = cfg.count_or("terms", 20)?;
    let exp = expand_expr(&z, ctx.ring, terms, ctx.policy)?;
    let mut out = ctx.header(&[("z", z.source().to_string()), ("rows", exp.len().to_string())]);
    for rec in dump_records(&exp, ctx.digits) {
        out.push_str(&serde_json::to_string(&rec).expect("plain record"));
        out.push('\n');
    }
    Ok(Outcome {
        main: out,
        ..Default::default()
    })
}

const ORBIT_KEYS: &[&str] = &[
    "z1", "z2", "target", "a", "b", "scale", "y1", "y2", "depth", "depth_y", "omega",
];

fn orbit_spec(ctx: &Ctx) -> Result<OrbitSpec> {
    let cfg = ctx.cfg;
    let ring = ctx.ring;
    let target = match cfg.str_or("target", "origin") {
        "origin" => TargetInput::Origin,
        "rational" => TargetInput::Rational {
            a: cfg.okint_or("a", "0", ring)?,
            b: cfg.okint_or("b", "1", ring)?,
            scale: cfg.expr_or("scale", "1")?,
        },
        "point" => TargetInput::Point {
            y1: cfg.expr("y1")?,
            y2: cfg.expr_or("y2", "1")?,
        },
        other => return Err(Error::Config(format!("target must be origin, rational or point, got {other}"))),
    };
    let depth = cfg.count_or("depth", 40)?;
    let mut spec = OrbitSpec::new(ring, cfg.expr("z1")?, cfg.expr_or("z2", "1")?, target, depth);
    spec.depth_y = cfg.count_or("depth_y", spec.depth_y)?;
    spec.omega = cfg.positive_or("omega", DEFAULT_OMEGA)?;
    Ok(spec)
}

/// The orbit settings of a config (`d`, `z1`, `z2`, `target`, …) and its
/// precision policy, as used by the `orbit` command.
pub fn orbit_from_config(cfg: &Config) -> Result<(OrbitSpec, PrecisionPolicy)> {
    let ctx = Ctx::new(Command::Orbit, cfg, ORBIT_KEYS)?;
    Ok((orbit_spec(&ctx)?, ctx.policy))
}

fn orbit_rows(ctx: &Ctx, run: &OrbitRun) -> Vec<Vec<String>> {
    run.records
        .iter()
        .map(|g| {
            vec![
                g.class.as_str().to_string(),
                ctx.ring.d().to_string(),
                g.k.to_string(),
                g.j.map(|j| j.to_string()).unwrap_or_default(),
                g.height.to_sci_string(ctx.digits),
                g.err.to_sci_string(ctx.digits),
                ctx.dec(g.predicted),
                ctx.dec(g.measured_constant),
            ]
        })
        .collect()
}

fn cmd_orbit(cfg: &Config) -> Result<Outcome> {
    let ctx = Ctx::new(Command::Orbit, cfg, ORBIT_KEYS)?;
    let spec = orbit_spec(&ctx)?;
    let run = run_orbit(&spec, ctx.policy)?;
    let mut notes = Vec::new();
    if run.records.is_empty() {
        notes.push("warning: no admissible (j, k) pairs, CSV is empty".to_string());
    }
    let max_c = run.records.iter().map(|g| g.measured_constant).fold(0.0, f64::max);
    let mut out = ctx.header(&[
        ("class", run.class.as_str().to_string()),
        ("rows", run.records.len().to_string()),
        ("max_measured_constant", ctx.dec(max_c)),
    ]);
    out.push_str(&csv_text(
        &["class", "d", "k", "j", "height", "err", "predicted_bound", "measured_constant"],
        &orbit_rows(&ctx, &run),
    )?);
    Ok(Outcome {
        main: out,
        extras: Vec::new(),
        notes,
    })
}

/// Built-in stream `err = c·h^(−slope)`, `c` uniform in `[1/2, 1]`, `h = 2^(i+1)`.
pub fn synthetic_stream(slope: f64, len: usize, seed: u64) -> Result<Vec<OrbitRecord>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..len)
        .map(|i| {
            let h = 2f64.powi(i as i32 + 1);
            OrbitRecord::synthetic(h, rng.gen_range(0.5..1.0) * h.powf(-slope))
        })
        .collect()
}

fn cmd_exponent(cfg: &Config) -> Result<Outcome> {
    let mut keys = ORBIT_KEYS.to_vec();
    keys.extend(["window_decades", "tail_fraction", "synthetic", "synthetic_slope", "synthetic_len"]);
    let ctx = Ctx::new(Command::Exponent, cfg, &keys)?;
    let window = cfg.positive_or("window_decades", 3.0)?;
    let tail = cfg.positive_or("tail_fraction", 0.5)?;
    if tail >= 1.0 {
        return Err(Error::Config("tail_fraction must lie in (0, 1)".into()));
    }
    let synthetic = cfg.bool_or("synthetic", false)?;

    let mut lines: Vec<(&str, String)> = Vec::new();
    // (records, reference exponent for the plot line, class name)
    let (records, reference, class) = if synthetic {
        let slope = cfg.positive_or("synthetic_slope", 0.5)?;
        let len = cfg.count_or("synthetic_len", 60)?.min(1000);
        lines.push(("synthetic_slope", ctx.dec(slope)));
        (synthetic_stream(slope, len, ctx.seed)?, slope, "synthetic")
    } else {
        let spec = orbit_spec(&ctx)?;
        let run = run_orbit(&spec, ctx.policy)?;
        let records = run
            .records
            .iter()
            .map(OrbitRecord::from_gamma)
            .collect::<Result<Vec<_>>>()?;
        let r1 = constants(ctx.ring).map_or(1, |c| c.r1);
        let one = BigRational::one();
        let b = predicted_bounds(&one, &one, r1);
        for (name, v) in b.rows() {
            lines.push((name, ctx.dec(v)));
        }
        if let Ok(om) = omega_k_estimate(&run.exp_z, None) {
            lines.push(("omega_k_estimate", ctx.dec(om.omega)));
        }
        let reference = match run.class {
            TargetClass::Origin => 1.0,
            _ => 0.5,
        };
        (records, reference, run.class.as_str())
    };
    let rep = ExponentReport::build(&records, window, tail)?;

    let mut report = ctx.header(&[("class", class.to_string())]);
    let mut kv = |k: &str, v: String| {
        let _ = writeln!(report, "{k}: {v}");
    };
    kv("records", records.len().to_string());
    kv("mu_emp", ctx.dec(rep.mu.mu));
    kv("mu_fit", ctx.dec(rep.mu.fit_mu));
    kv("mu_fit_rms", ctx.dec(rep.mu.fit_rms));
    kv("window_decades", ctx.dec(window));
    kv("window_len", rep.mu.window_len.to_string());
    kv("mu_hat_emp", ctx.dec(rep.mu_hat.mu_hat));
    kv("tail_fraction", ctx.dec(tail));
    kv("consistent", rep.consistent(0.05).to_string());
    kv("reference_exponent", ctx.dec(reference));
    for (k, v) in lines {
        kv(k, v);
    }
    let notes = rep.mu_hat.warnings.clone();
    for w in &notes {
        kv("warning", w.clone());
    }

    let points: Vec<Vec<String>> = records
        .iter()
        .filter(|r| r.usable())
        .map(|r| {
            vec![
                r.k.to_string(),
                r.j.map(|j| j.to_string()).unwrap_or_default(),
                ctx.dec(r.ln_height),
                ctx.dec(r.ln_err),
                ctx.dec(-reference * r.ln_height),
            ]
        })
        .collect();
    let table: Vec<Vec<String>> = rep
        .mu_hat
        .table
        .iter()
        .map(|t| {
            vec![
                ctx.dec(t.ln_t),
                t.best_ln_err.map(|x| ctx.dec(x)).unwrap_or_default(),
                t.exponent.map(|x| ctx.dec(x)).unwrap_or_default(),
                t.in_tail.to_string(),
                ctx.dec(-reference * t.ln_t),
            ]
        })
        .collect();
    let head = ctx.header(&[("class", class.to_string())]);
    Ok(Outcome {
        main: report,
        extras: vec![
            (
                "points.csv".into(),
                head.clone() + &csv_text(&["k", "j", "ln_height", "ln_err", "ln_reference"], &points)?,
            ),
            (
                "table.csv".into(),
                head + &csv_text(&["ln_t", "best_ln_err", "exponent", "in_tail", "ln_reference"], &table)?,
            ),
        ],
        notes,
    })
}

fn cmd_dirichlet(cfg: &Config) -> Result<Outcome> {
    let ctx = Ctx::new(Command::Dirichlet, cfg, &["z", "q_grid", "rescan"])?;
    let z = cfg.expr("z")?;
    let qs = cfg.list_or("q_grid", &[16.0, 32.0, 64.0, 128.0, 256.0])?;
    let rescan = cfg.bool_or("rescan", true)?;
    let zb = z.eval_ball(ctx.ring, ctx.policy.start)?;
    let prof = dirichlet_profile(&zb, &qs)?;
    let mut rows = Vec::new();
    let mut agree_all = true;
    for (i, (q, hit)) in prof.rows.iter().enumerate() {
        let (re, agree) = if rescan {
            let re = dirichlet_rescan_shuffled(&zb, *q, ctx.seed.wrapping_add(i as u64));
            let ok = (re - hit.err).abs() <= 1e-6 * hit.err.max(f64::MIN_POSITIVE);
            agree_all &= ok;
            (ctx.dec(re), ok.to_string())
        } else {
            (String::new(), String::new())
        };
        rows.push(vec![
            ctx.dec(*q),
            ctx.dec(hit.err),
            hit.q.to_string(),
            hit.p.to_string(),
            hit.scanned.to_string(),
            re,
            agree,
        ]);
    }
    let mut out = ctx.header(&[
        ("z", z.source().to_string()),
        ("slope", ctx.dec(prof.slope)),
        ("rescan_agree", agree_all.to_string()),
    ]);
    out.push_str(&csv_text(&["Q", "err", "q", "p", "scanned", "rescan_err", "rescan_agree"], &rows)?);
    Ok(Outcome {
        main: out,
        ..Default::default()
    })
}

fn cmd_embed_check(cfg: &Config) -> Result<Outcome> {
    let ctx = Ctx::new(Command::EmbedCheck, cfg, &["trials", "word_len"])?;
    if ctx.ring != Ring::D1 {
        return Err(Error::UnsupportedRing(ctx.ring.d()));
    }
    let trials = cfg.count_or("trials", 1000)?;
    let len = cfg.count_or("word_len", 16)?;
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let mut rows = Vec::with_capacity(trials);
    let mut passed = 0usize;
    for t in 0..trials {
        let (la, lb) = (rng.gen_range(1..=len), rng.gen_range(1..=len));
        let a = random_generator_product(&mut rng, la);
        let b = random_generator_product(&mut rng, lb);
        let g = a.mul(&b);
        let eg = embed_matrix(&g)?;
        let hom = eg == embed_matrix(&a)?.mul(&embed_matrix(&b)?);
        let det = eg.det() == BigInt::one();
        let height = height_comparable(&g)?;
        let z = random_point(&mut rng, ctx.policy.start);
        let c = compatibility_check(&g, &z)?;
        let ok = hom && det && height && c.ok;
        passed += ok as usize;
        rows.push(vec![
            t.to_string(),
            g.height_norm().to_string(),
            eg.height().to_string(),
            hom.to_string(),
            det.to_string(),
            height.to_string(),
            c.ok.to_string(),
            ctx.dec(c.max_gap),
        ]);
    }
    let mut out = ctx.header(&[("trials", trials.to_string()), ("passed", passed.to_string())]);
    out.push_str(&csv_text(
        &[
            "trial",
            "height_sq_c2",
            "height_r4",
            "homomorphism",
            "det_one",
            "height_ok",
            "action_ok",
            "max_gap",
        ],
        &rows,
    )?);
    Ok(Outcome {
        main: out,
        extras: Vec::new(),
        notes: vec![format!("embed-check: {passed}/{trials} passed")],
    })
}

fn cmd_floor_check(cfg: &Config) -> Result<Outcome> {
    let ctx = Ctx::new(
        Command::FloorCheck,
        cfg,
        &["z1", "z2", "a", "b", "scale", "h", "depth", "factor", "budget", "plant"],
    )?;
    let ring = ctx.ring;
    let h = cfg.count_or("h", 3)?;
    let mut spec = FloorSpec::new(
        ring,
        cfg.expr("z1")?,
        cfg.expr_or("z2", "1")?,
        cfg.okint_or("a", "0", ring)?,
        cfg.okint_or("b", "1", ring)?,
        u32::try_from(h).map_err(|_| Error::Config("h too large".into()))?,
    );
    spec.scale = cfg.expr_or("scale", "1")?;
    spec.depth = cfg.count_or("depth", spec.depth)?;
    spec.factor = cfg.positive_or("factor", 1.0)?;
    spec.budget = cfg.u64_or("budget", DEFAULT_BUDGET as u64)? as u128;
    if cfg.bool_or("plant", false)? {
        spec.planted.push(planted_violation(&spec, ctx.policy)?);
    }
    let rep = residual_floor_check(&spec, ctx.policy)?;
    let rows: Vec<Vec<String>> = rep
        .rows
        .iter()
        .map(|r| {
            vec![
                r.k.to_string(),
                r.floor.to_sci_string(ctx.digits),
                r.min_err.to_sci_string(ctx.digits),
                ctx.dec(r.margin),
                r.pass.to_string(),
            ]
        })
        .collect();
    let mut out = ctx.header(&[
        ("h", rep.h.to_string()),
        ("matrices", rep.matrices.to_string()),
        ("candidates", rep.candidates.to_string()),
        ("planted", spec.planted.len().to_string()),
        ("tightest_margin", ctx.dec(rep.tightest_margin())),
        ("pass", rep.pass().to_string()),
    ]);
    out.push_str(&csv_text(&["k", "floor", "min_err", "margin", "pass"], &rows)?);
    Ok(Outcome {
        main: out,
        extras: Vec::new(),
        notes: vec![format!("floor-check: pass={}", rep.pass())],
    })
}

#[derive(Debug, clap::Parser)]
#[command(name = "cfsl2", version, about = "Continued fraction and SL2 orbit approximation experiments")]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    /// `key = value` file for the command.
    #[arg(long)]
    pub config: std::path::PathBuf,
    /// Main output file; extra tables go to `<out>.<suffix>`. Defaults to stdout.
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
    /// Starting precision in bits; overrides the config.
    #[arg(long)]
    pub precision: Option<u32>,
    /// Overrides the config seed.
    #[arg(long)]
    pub seed: Option<u64>,
}

fn write_outcome(out: Option<&std::path::Path>, o: &Outcome) -> Result<()> {
    use std::io::Write;
    match out {
        Some(p) => {
            std::fs::write(p, &o.main)?;
            for (suffix, body) in &o.extras {
                let mut name = p.as_os_str().to_owned();
                name.push(format!(".{suffix}"));
                std::fs::write(name, body)?;
            }
        }
        None => {
            let mut so = std::io::stdout().lock();
            so.write_all(o.main.as_bytes())?;
            for (suffix, body) in &o.extras {
                writeln!(so, "# --- {suffix}")?;
                so.write_all(body.as_bytes())?;
            }
        }
    }
    Ok(())
}

/// Parses the command line, runs the command and returns the exit code.
pub fn run(cli: &Cli) -> i32 {
    let result = Config::load(&cli.config).and_then(|mut cfg| {
        if let Some(p) = cli.precision {
            cfg.set("precision", p);
        }
        if let Some(s) = cli.seed {
            cfg.set("seed", s);
        }
        let o = execute(cli.command, &cfg)?;
        write_outcome(cli.out.as_deref(), &o)?;
        Ok(o)
    });
    match result {
        Ok(o) => {
            for n in &o.notes {
                eprintln!("{n}");
            }
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(pairs: &[(&str, &str)]) -> Config {
        Config::from_pairs(pairs.iter().copied())
    }

    #[test]
    fn half_even_decimals() {
        assert_eq!(dec(0.125, 2), "1.2e-1");
        assert_eq!(dec(0.375, 2), "3.8e-1");
        assert_eq!(dec(2.5, 1), "2e0");
        assert_eq!(dec(f64::NAN, 3), "nan");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::Config("x".into())), 2);
        assert_eq!(exit_code(&Error::precision("x")), 3);
        assert_eq!(exit_code(&Error::EnumerationBudgetExceeded { needed: 2, budget: 1 }), 4);
        assert_eq!(exit_code(&Error::UnsupportedRing(7)), 1);
    }

    #[test]
    fn expand_terminating() {
        let o = execute(Command::Expand, &cfg(&[("z", "1+i")])).unwrap();
        let rows: Vec<&str> = o.main.lines().filter(|l| !l.starts_with('#')).collect();
        assert_eq!(rows.len(), 1);
        assert!(rows[0].contains("\"terminated\":true"));
    }

    #[test]
    fn config_errors() {
        let e = execute(Command::Expand, &cfg(&[("z", "sqrt(2)"), ("d", "5")])).unwrap_err();
        assert_eq!(exit_code(&e), 2);
        let e = execute(Command::Expand, &cfg(&[("z", "sqrt(2)"), ("typo", "1")])).unwrap_err();
        assert_eq!(exit_code(&e), 2);
        let e = execute(Command::Orbit, &cfg(&[("z1", "sqrt(2)"), ("target", "line")])).unwrap_err();
        assert_eq!(exit_code(&e), 2);
    }

    #[test]
    fn origin_heights_increase() {
        let o = execute(Command::Orbit, &cfg(&[("z1", "sqrt(2)"), ("depth", "42")])).unwrap();
        let hs: Vec<f64> = o
            .main
            .lines()
            .filter(|l| !l.starts_with('#'))
            .skip(1)
            .map(|l| l.split(',').nth(4).unwrap().parse().unwrap())
            .collect();
        assert!(hs.len() >= 38);
        assert!(hs.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn synthetic_self_test() {
        let o = execute(Command::Exponent, &cfg(&[("synthetic", "true"), ("synthetic_slope", "0.7")])).unwrap();
        let mu: f64 = o
            .main
            .lines()
            .find_map(|l| l.strip_prefix("mu_emp: "))
            .unwrap()
            .parse()
            .unwrap();
        assert!((mu - 0.7).abs() < 0.05, "{mu}");
        assert_eq!(o.extras.len(), 2);
    }

    #[test]
    fn header_carries_constants() {
        let o = execute(Command::Expand, &cfg(&[("z", "sqrt(2)"), ("terms", "3"), ("d", "3")])).unwrap();
        assert!(o.main.contains("# constants: theta=1.33333333333e0 r0=2"));
        let o = execute(Command::Expand, &cfg(&[("z", "sqrt(2)"), ("terms", "3"), ("d", "7")])).unwrap();
        assert!(o.main.contains("# constants: none"));
    }
}
