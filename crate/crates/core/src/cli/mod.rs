//! Command-line front end.
//!
//! Exit codes: 0 success, 1 input error, 2 unsupported field, 3 degenerate
//! or not-applicable outcome.

pub mod config;
pub mod report;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;

use crate::arith::{factor, AlgebraicInt, FieldElem, QuadraticField};
use crate::bounds::{
    corollary_bound, empirical_min_c, landau_min_constant, landau_norms, theorem_bound, tidy_bound,
    yu_ord_bound, BoundInput, BoundReport, CorollaryParams, Theorem,
};
use crate::error::{Error, Result};
use crate::heights::{absolute_height, log_projective_height, weil_height};
use crate::radical::{
    csv_record, make_triple, primitive_triples, smoothness_s, AbcTriple, SmallProfile, SmallSieve,
    TRIPLE_HEADER,
};
use crate::sml::{decide_zeros, RecurrenceSpec, ScanOptions, SmlStatus, DEFAULT_CAP};
use crate::xyz::{self, BuiltinPhi};
use config::{load_config, RunConfig};
use report::{fmt_real, read_csv, write_csv};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_UNSUPPORTED: i32 = 2;
pub const EXIT_DEGENERATE: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "nfabc",
    version,
    about = "abc bounds, heights and radicals over Q and class-number-one imaginary quadratic fields"
)]
struct Cli {
    /// Main effective constant in the exponent term
    #[arg(
        long = "C",
        id = "C_main",
        global = true,
        allow_negative_numbers = true
    )]
    c_main: Option<f64>,
    /// Worker threads for parallel scans
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,
    /// Include the lower-order terms of the exponent
    #[arg(long, global = true)]
    full_exponent: bool,
    /// `key = value` configuration file
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug)]
struct FieldArg {
    /// Q, Q(i) or Q(sqrt(d))
    #[arg(long)]
    field: Option<String>,
}

#[derive(Args, Debug)]
struct TripleArgs {
    #[command(flatten)]
    field: FieldArg,
    #[arg(long, allow_hyphen_values = true, requires_all = ["b", "c"], conflicts_with_all = ["x", "y", "z"])]
    a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    c: Option<String>,
    /// Alternative input `x + y = z`
    #[arg(long, allow_hyphen_values = true, requires_all = ["y", "z"])]
    x: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    y: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    z: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Prime ideal factorization of an algebraic integer
    Factor {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// Weil height of an element or projective height of a point
    Height {
        #[command(flatten)]
        field: FieldArg,
        #[arg(
            long,
            allow_hyphen_values = true,
            conflicts_with = "coords",
            required_unless_present = "coords"
        )]
        x: Option<String>,
        /// Comma-separated coordinates
        #[arg(long, allow_hyphen_values = true)]
        coords: Option<String>,
    },
    /// Radical, smoothness and selector norms of a triple
    Radical(TripleArgs),
    /// Evaluate theorem 1, 2 or 3 on a triple or a CSV of triples
    AbcCheck {
        #[arg(long)]
        theorem: u8,
        #[command(flatten)]
        triple: TripleArgs,
        /// CSV with columns a, b, c
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate one corollary on a triple
    Corollary {
        #[arg(long)]
        id: u8,
        #[arg(long)]
        alpha: Option<f64>,
        /// Second statement of the corollary, where there is one
        #[arg(long)]
        alt: bool,
        #[command(flatten)]
        triple: TripleArgs,
    },
    /// Upper bound for a p-adic valuation of a product of powers minus one
    YuBound {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        degree: u32,
        #[arg(long = "e-p")]
        e_p: u32,
        #[arg(long = "norm-p")]
        norm_p: f64,
        /// Comma-separated heights, one per term
        #[arg(long)]
        heights: String,
        #[arg(long = "B")]
        b: f64,
    },
    /// Least constant for the prime-ideal product inequality
    Landau {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long = "R")]
        r: usize,
    },
    /// `max(e, 2x log x)`
    Tidy {
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
    },
    /// Order-3 recurrence zero decision
    Sml {
        #[command(subcommand)]
        cmd: SmlCmd,
    },
    /// Smooth primitive triples over Z
    Xyz {
        #[command(subcommand)]
        cmd: XyzCmd,
    },
    /// Least C for which a theorem holds on every rational triple up to a height
    Calibrate {
        #[arg(long)]
        theorem: u8,
        #[arg(long = "h-max", required_unless_present = "input")]
        h_max: Option<u64>,
        /// CSV with columns a, b, c instead of the exhaustive rational set
        #[arg(long)]
        input: Option<PathBuf>,
        #[command(flatten)]
        field: FieldArg,
    },
}

#[derive(Subcommand, Debug)]
enum SmlCmd {
    Decide {
        #[arg(long, allow_negative_numbers = true)]
        c1: BigInt,
        #[arg(long, allow_negative_numbers = true)]
        c2: BigInt,
        #[arg(long, allow_negative_numbers = true)]
        c3: BigInt,
        #[arg(long, allow_negative_numbers = true)]
        a0: BigInt,
        #[arg(long, allow_negative_numbers = true)]
        a1: BigInt,
        #[arg(long, allow_negative_numbers = true)]
        a2: BigInt,
        /// Scan limit used when the bound exceeds 1e9
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
    },
}

#[derive(Subcommand, Debug)]
enum XyzCmd {
    Search {
        #[arg(long = "P")]
        p: u64,
        #[arg(long)]
        limit: u64,
        #[arg(long, default_value_t = 2)]
        phi: u8,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Exit code for an error class.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::UnsupportedField(_) => EXIT_UNSUPPORTED,
        Error::NotApplicable(_) | Error::HypothesisFails { .. } | Error::DegenerateHeight => {
            EXIT_DEGENERATE
        }
        _ => EXIT_INPUT,
    }
}

/// Parses `argv` (program name first), runs the command and returns the
/// exit code. Reports go to `out`, diagnostics to stderr.
pub fn dispatch<I, T>(argv: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match run(cli, out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

struct Ctx {
    cfg: RunConfig,
    workers: usize,
}

impl Ctx {
    fn field(&self, arg: &FieldArg) -> Result<QuadraticField> {
        match &arg.field {
            Some(s) => QuadraticField::parse(s),
            None => Ok(self.cfg.field.unwrap_or(QuadraticField::RATIONALS)),
        }
    }

    fn out_path(&self, arg: &Option<PathBuf>) -> Option<PathBuf> {
        arg.clone().or_else(|| self.cfg.output.clone())
    }
}

fn io(e: std::io::Error) -> Error {
    Error::Io(e.to_string())
}

fn run(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    let mut cfg = match &cli.config {
        Some(p) => load_config(p)?,
        None => RunConfig::default(),
    };
    if let Some(c) = cli.c_main {
        cfg.bound.c_main = c;
    }
    cfg.bound.full_exponent |= cli.full_exponent;
    cfg.bound.validate()?;
    if cli.workers == 0 {
        return Err(Error::BadParameter("--workers must be at least 1".into()));
    }
    let ctx = Ctx {
        cfg,
        workers: cli.workers,
    };
    match cli.cmd {
        Cmd::Factor { field, x } => cmd_factor(&ctx, &field, &x, out),
        Cmd::Height { field, x, coords } => cmd_height(&ctx, &field, x, coords, out),
        Cmd::Radical(t) => cmd_radical(&ctx, &t, out),
        Cmd::AbcCheck {
            theorem,
            triple,
            input,
            out: path,
        } => cmd_abc_check(
            &ctx,
            theorem,
            &triple,
            input.as_deref(),
            ctx.out_path(&path),
            out,
        ),
        Cmd::Corollary {
            id,
            alpha,
            alt,
            triple,
        } => cmd_corollary(&ctx, id, CorollaryParams { alpha, alt }, &triple, out),
        Cmd::YuBound {
            n,
            degree,
            e_p,
            norm_p,
            heights,
            b,
        } => {
            let hs = parse_list(&heights)?;
            let v = yu_ord_bound(n, degree, e_p, norm_p, &hs, b)?;
            writeln!(out, "bound={}", fmt_real(v)).map_err(io)?;
            Ok(EXIT_OK)
        }
        Cmd::Landau { field, r } => {
            let f = ctx.field(&field)?;
            let c = landau_min_constant(f, r)?;
            let norms = landau_norms(f, r.min(10))?;
            let shown: Vec<String> = norms.iter().map(|n| n.to_string()).collect();
            writeln!(
                out,
                "field={f}\nR={r}\nC={}\nfirst_norms={}",
                fmt_real(c),
                shown.join(" ")
            )
            .map_err(io)?;
            Ok(EXIT_OK)
        }
        Cmd::Tidy { x } => {
            writeln!(out, "bound={}", fmt_real(tidy_bound(x)?)).map_err(io)?;
            Ok(EXIT_OK)
        }
        Cmd::Sml {
            cmd:
                SmlCmd::Decide {
                    c1,
                    c2,
                    c3,
                    a0,
                    a1,
                    a2,
                    cap,
                },
        } => {
            let spec = RecurrenceSpec {
                c: [c1, c2, c3],
                a: [a0, a1, a2],
            };
            cmd_sml(&ctx, &spec, cap, out)
        }
        Cmd::Xyz {
            cmd:
                XyzCmd::Search {
                    p,
                    limit,
                    phi,
                    out: path,
                },
        } => cmd_xyz(&ctx, p, limit, phi, ctx.out_path(&path), out),
        Cmd::Calibrate {
            theorem,
            h_max,
            input,
            field,
        } => cmd_calibrate(&ctx, theorem, h_max, input.as_deref(), &field, out),
    }
}

fn parse_list(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::Parse(format!("bad number `{t}`")))
        })
        .collect()
}

fn parse_triple(ctx: &Ctx, t: &TripleArgs) -> Result<AbcTriple> {
    let f = ctx.field(&t.field)?;
    let el = |s: &Option<String>| -> Result<AlgebraicInt> {
        AlgebraicInt::parse(
            f,
            s.as_deref()
                .ok_or_else(|| Error::Parse("missing coordinate".into()))?,
        )
    };
    if t.a.is_some() {
        make_triple(el(&t.a)?, el(&t.b)?, el(&t.c)?)
    } else if t.x.is_some() {
        AbcTriple::from_sum(el(&t.x)?, el(&t.y)?, el(&t.z)?)
    } else {
        Err(Error::Parse("give --a --b --c or --x --y --z".into()))
    }
}

fn cmd_factor(ctx: &Ctx, field: &FieldArg, x: &str, out: &mut dyn Write) -> Result<i32> {
    let f = ctx.field(field)?;
    let a = AlgebraicInt::parse(f, x)?;
    let fac = factor(&a)?;
    writeln!(out, "field={f}\nunit={}", fac.unit).map_err(io)?;
    for pp in &fac.entries {
        writeln!(
            out,
            "prime={} exponent={} norm={}",
            pp.prime, pp.exponent, pp.norm
        )
        .map_err(io)?;
    }
    Ok(EXIT_OK)
}

fn cmd_height(
    ctx: &Ctx,
    field: &FieldArg,
    x: Option<String>,
    coords: Option<String>,
    out: &mut dyn Write,
) -> Result<i32> {
    let f = ctx.field(field)?;
    if let Some(x) = x {
        let e = FieldElem::parse(f, &x)?;
        writeln!(
            out,
            "h={}\nh_abs={}",
            fmt_real(weil_height(&e)?),
            fmt_real(absolute_height(&e)?)
        )
        .map_err(io)?;
    } else if let Some(c) = coords {
        let pts = c
            .split(',')
            .map(|s| FieldElem::parse(f, s.trim()))
            .collect::<Result<Vec<_>>>()?;
        let lh = log_projective_height(&pts)?;
        writeln!(out, "logH={}\nH={}", fmt_real(lh), fmt_real(lh.exp())).map_err(io)?;
    }
    Ok(EXIT_OK)
}

fn cmd_radical(ctx: &Ctx, t: &TripleArgs, out: &mut dyn Write) -> Result<i32> {
    let t = parse_triple(ctx, t)?;
    let s = &t.selectors;
    writeln!(out, "field={}\nG={}\nH={}", t.field, t.g, t.height()).map_err(io)?;
    match smoothness_s(&t) {
        Ok(v) => writeln!(out, "S={v}").map_err(io)?,
        Err(Error::UnsupportedField(_)) => {}
        Err(e) => return Err(e),
    }
    writeln!(
        out,
        "N_a={}\nN_b={}\nN_c={}\nN_c3={}\nN_q={}\nlogH={}",
        s.n_a,
        s.n_b,
        s.n_c,
        s.n_c3,
        s.n_q,
        fmt_real(t.log_height())
    )
    .map_err(io)?;
    Ok(EXIT_OK)
}

fn read_triples(path: &Path, f: QuadraticField) -> Result<Vec<AbcTriple>> {
    let (header, rows) = read_csv(path)?;
    let col = |name: &str| {
        header
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::Parse(format!("{}: missing column `{name}`", path.display())))
    };
    let (ia, ib, ic) = (col("a")?, col("b")?, col("c")?);
    rows.iter()
        .map(|r| {
            let get = |i: usize| r.get(i).ok_or_else(|| Error::Parse("short CSV row".into()));
            make_triple(
                AlgebraicInt::parse(f, get(ia)?)?,
                AlgebraicInt::parse(f, get(ib)?)?,
                AlgebraicInt::parse(f, get(ic)?)?,
            )
        })
        .collect()
}

fn report_cells(r: &BoundReport) -> [String; 4] {
    [
        fmt_real(r.lhs),
        fmt_real(r.rhs),
        fmt_real(r.margin),
        r.regime.to_string(),
    ]
}

fn cmd_abc_check(
    ctx: &Ctx,
    theorem: u8,
    t: &TripleArgs,
    input: Option<&Path>,
    path: Option<PathBuf>,
    out: &mut dyn Write,
) -> Result<i32> {
    let th = Theorem::from_id(theorem)?;
    let triples = match input {
        Some(p) => read_triples(p, ctx.field(&t.field)?)?,
        None => vec![parse_triple(ctx, t)?],
    };
    let mut header: Vec<&str> = TRIPLE_HEADER.to_vec();
    header.extend(["theorem", "lhs", "rhs", "margin", "regime"]);
    let mut rows = Vec::with_capacity(triples.len());
    let mut failures = 0usize;
    for tr in &triples {
        let r = theorem_bound(th, tr, &ctx.cfg.bound)?;
        failures += usize::from(!r.holds);
        let mut row = csv_record(tr);
        row.push(theorem.to_string());
        row.extend(report_cells(&r));
        rows.push(row);
    }
    match &path {
        Some(p) => {
            write_csv(Some(p), &header, &rows)?;
            writeln!(out, "triples={} failures={failures}", rows.len()).map_err(io)?;
        }
        None => write_to(out, &header, &rows)?,
    }
    Ok(EXIT_OK)
}

/// CSV to an arbitrary writer (stdout in normal use, a buffer in tests).
fn write_to(out: &mut dyn Write, header: &[&str], rows: &[Vec<String>]) -> Result<()> {
    writeln!(out, "{}", header.join(",")).map_err(io)?;
    for r in rows {
        writeln!(out, "{}", r.join(",")).map_err(io)?;
    }
    Ok(())
}

fn cmd_corollary(
    ctx: &Ctx,
    id: u8,
    p: CorollaryParams,
    t: &TripleArgs,
    out: &mut dyn Write,
) -> Result<i32> {
    let t = parse_triple(ctx, t)?;
    let r = corollary_bound(id, &p, &t, &ctx.cfg.bound)?;
    writeln!(
        out,
        "corollary={id}\nlhs={}\nrhs={}\nholds={}\nmargin={}\nexponent={}\nregime={}",
        fmt_real(r.lhs),
        fmt_real(r.rhs),
        r.holds,
        fmt_real(r.margin),
        fmt_real(r.exponent_used),
        r.regime
    )
    .map_err(io)?;
    Ok(EXIT_OK)
}

fn cmd_sml(ctx: &Ctx, spec: &RecurrenceSpec, cap: u64, out: &mut dyn Write) -> Result<i32> {
    let v = decide_zeros(
        spec,
        &ctx.cfg.bound,
        ScanOptions {
            cap,
            workers: ctx.workers,
        },
    )?;
    let mut w = |s: String| writeln!(out, "{s}").map_err(io);
    if let Some(r) = &v.roots {
        let rs: Vec<String> = r.r.iter().map(|x| x.to_string()).collect();
        w(format!("field: {}\nroots: {}", r.field, rs.join(", ")))?;
    }
    if let Some(k) = &v.coefficients {
        let ks: Vec<String> = k.iter().map(|x| x.to_string()).collect();
        w(format!("coefficients: {}", ks.join(", ")))?;
    }
    if let Some(g) = &v.g {
        w(format!("G: {g}"))?;
    }
    if let Some(h) = v.h_max {
        w(format!("h_max: {}", fmt_real(h)))?;
    }
    if let Some(n) = v.bound {
        w(format!("bound N: {}", fmt_real(n)))?;
    }
    let code = match &v.status {
        SmlStatus::ZerosFound(z) => {
            w(format!("zeros found at n = {z:?}"))?;
            EXIT_OK
        }
        SmlStatus::NoZerosUpToBound(n) => {
            w(format!("no zeros for 0 <= n <= {n}"))?;
            EXIT_OK
        }
        SmlStatus::BoundTooLarge {
            checked_up_to,
            zeros,
        } => {
            w(format!(
                "bound too large; scanned 0 <= n <= {checked_up_to}, zeros {zeros:?}"
            ))?;
            EXIT_OK
        }
        SmlStatus::Degenerate(why) => {
            w(format!("degenerate: {why}"))?;
            EXIT_DEGENERATE
        }
        SmlStatus::Unsupported(why) => {
            w(format!("unsupported: {why}"))?;
            EXIT_UNSUPPORTED
        }
    };
    w(v.machine_line())?;
    Ok(code)
}

fn cmd_xyz(
    ctx: &Ctx,
    p: u64,
    limit: u64,
    phi: u8,
    path: Option<PathBuf>,
    out: &mut dyn Write,
) -> Result<i32> {
    let phi = BuiltinPhi::from_id(phi)?;
    let triples = xyz::enumerate_triples(p, limit, ctx.workers)?;
    let rows: Vec<Vec<String>> = triples.iter().map(|t| xyz::csv_record(t, &phi)).collect();
    let filt = xyz::thm4_filter(&triples, &phi);
    let lemma_fail = triples
        .iter()
        .filter(|t| !xyz::verify_lemma9(t).holds)
        .count();
    match &path {
        Some(pth) => {
            write_csv(Some(pth), &xyz::CSV_HEADER, &rows)?;
            writeln!(
                out,
                "triples={} lemma9_violations={lemma_fail} passes_thm4={} below_threshold={}",
                triples.len(),
                filt.passing.len(),
                filt.below_threshold
            )
            .map_err(io)?;
        }
        None => write_to(out, &xyz::CSV_HEADER, &rows)?,
    }
    Ok(EXIT_OK)
}

fn cmd_calibrate(
    ctx: &Ctx,
    theorem: u8,
    h_max: Option<u64>,
    input: Option<&Path>,
    field: &FieldArg,
    out: &mut dyn Write,
) -> Result<i32> {
    let th = Theorem::from_id(theorem)?;
    let data: Vec<BoundInput> = match (input, h_max) {
        (Some(p), _) => read_triples(p, ctx.field(field)?)?
            .iter()
            .map(BoundInput::from_triple)
            .collect(),
        (None, Some(h)) => {
            let sieve = SmallSieve::new(h);
            primitive_triples(h)
                .map(|(x, y, z)| BoundInput::from_profile(&SmallProfile::new(&sieve, x, y, z)))
                .collect()
        }
        (None, None) => return Err(Error::BadParameter("give --h-max or --input".into())),
    };
    let c = empirical_min_c(&data, th, &ctx.cfg.bound, ctx.workers)?;
    writeln!(
        out,
        "theorem={theorem}\ntriples={}\nC={}",
        data.len(),
        fmt_real(c)
    )
    .map_err(io)?;
    Ok(EXIT_OK)
}
