use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ginlab::{
    Error, Field, IdealHandle, MonomialIdeal, OrderSpec, PointSet, PrimeField, Rationals, Ring, TermOrder,
    DEFAULT_DEGREE_CAP,
};
use ginlab_cli::*;

#[derive(Parser, Debug)]
#[command(name = "ginlab", version, about = "Generic initial ideals, partial elimination ideals and segments")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Coefficient field: `fp:<prime>` or `qq`.
    #[arg(long, global = true, default_value = "fp:2147483647")]
    field: FieldChoice,
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// `lex`, `revlex`, `weight:<w,...>` or `elim`.
    #[arg(long, global = true)]
    order: Option<String>,
    #[arg(long, global = true)]
    degree_cap: Option<u32>,
    #[arg(long, global = true, default_value_t = 2)]
    trials: usize,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Add wall-clock time to the report (makes output non-reproducible).
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Clone, Debug)]
enum FieldChoice {
    Prime(u32),
    Rationals,
}

impl FromStr for FieldChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "qq" {
            return Ok(FieldChoice::Rationals);
        }
        let p = s
            .strip_prefix("fp:")
            .ok_or_else(|| format!("expected fp:<prime> or qq, got `{s}`"))?
            .parse::<u32>()
            .map_err(|e| e.to_string())?;
        PrimeField::new(p).map_err(|e| e.to_string())?;
        Ok(FieldChoice::Prime(p))
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Fixture {
    Seven,
    Ten,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generic initial ideal of the ideal in FILE.
    Gin(IdealArgs),
    /// Partial elimination ideals of the ideal in FILE.
    Pei {
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long, default_value_t = 3)]
        p_max: u32,
    },
    /// Truncated Sylvester matrix of random forms monic in x0 (or the given ones).
    Sylvester {
        #[arg(long)]
        a: u32,
        #[arg(long)]
        b: u32,
        #[arg(long, default_value_t = 1)]
        p: u32,
        /// Explicit first form in x0..x3 (overrides --a).
        #[arg(long)]
        f: Option<String>,
        /// Explicit second form in x0..x3 (overrides --b).
        #[arg(long)]
        g: Option<String>,
    },
    /// Segment ideal of a Hilbert function, or a weight witness for a monomial ideal.
    Segment {
        /// Values h(0),h(1),...; the last one repeats.
        #[arg(long, value_delimiter = ',', required_unless_present = "witness")]
        hf: Vec<u64>,
        #[arg(long, default_value_t = 3)]
        vars: usize,
        #[arg(long, default_value_t = 10)]
        bound: u32,
        /// Monomial ideal file to search a segment weight for.
        #[arg(long)]
        witness: Option<PathBuf>,
        /// Comma-separated variable names for the witness file.
        #[arg(long, default_value = "x,y,z")]
        names: String,
    },
    /// The Borel-fixed ideals with the Hilbert function of seven general plane points.
    BorelCensus,
    /// Lex gin of a general complete intersection curve in P^3.
    Curve {
        #[arg(long)]
        a: u32,
        #[arg(long)]
        b: u32,
    },
    /// gin versus segment ideal for a set of points.
    Points {
        #[arg(long, default_value_t = 7)]
        s: usize,
        #[arg(long, default_value_t = 2)]
        r: usize,
        #[arg(long, value_enum, conflicts_with = "file")]
        fixture: Option<Fixture>,
        /// Point file: one point per line, comma-separated integers.
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// The singular curve (x^3 - y z^2, y^3 - z^2 t).
    Nonsmooth,
}

#[derive(Args, Debug)]
struct IdealArgs {
    /// File with one generator per line (or comma separated).
    file: PathBuf,
    /// Comma-separated variable names; defaults to x0..xN as used in the file.
    #[arg(long)]
    vars: Option<String>,
}

fn read(path: &PathBuf) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))
}

/// Variable names `x0..xN` where `N` is the largest index mentioned.
fn infer_names(text: &str) -> Vec<String> {
    let bytes = text.as_bytes();
    let mut max = None;
    let mut i = 0;
    while i < bytes.len() {
        let starts_word = i == 0 || !(bytes[i - 1].is_ascii_alphanumeric() || bytes[i - 1] == b'_');
        if bytes[i] == b'x' && starts_word {
            let digits: String = text[i + 1..].chars().take_while(char::is_ascii_digit).collect();
            if let Ok(k) = digits.parse::<usize>() {
                max = max.max(Some(k));
            }
        }
        i += 1;
    }
    (0..=max.unwrap_or(0)).map(|k| format!("x{k}")).collect()
}

fn load_ideal<F: Field>(field: F, args: &IdealArgs, cap: u32) -> Result<IdealHandle<F>, Error> {
    let text = read(&args.file)?;
    let names = match &args.vars {
        Some(v) => v.split(',').map(|s| s.trim().to_string()).collect(),
        None => infer_names(&text),
    };
    let ring = Ring::with_names(field, names)?;
    Ok(IdealHandle::parse(&ring, &text)?.with_degree_cap(cap))
}

fn order_for(requested: &Option<String>, default: TermOrder, nvars: usize) -> Result<TermOrder, Error> {
    match requested {
        Some(s) => OrderSpec::from_str(s)?.resolve(nvars),
        None => Ok(default),
    }
}

fn run<F: Field>(field: F, g: &Global, cmd: &Command) -> Result<ExperimentReport, Error> {
    let cap = g.degree_cap.unwrap_or(DEFAULT_DEGREE_CAP);
    match cmd {
        Command::Gin(args) => {
            let ideal = load_ideal(field, args, cap)?;
            let ord = order_for(&g.order, TermOrder::RevLex, ideal.ring().nvars())?;
            gin_report(&ideal, &ord, g.trials, g.seed)
        }
        Command::Pei { ideal, p_max } => {
            let ideal = load_ideal(field, ideal, cap)?;
            let inner = order_for(&g.order, TermOrder::RevLex, ideal.ring().nvars() - 1)?;
            pei_report(&ideal, *p_max, &inner)
        }
        Command::Sylvester { a, b, p, f, g: gform } => {
            if f.is_none() && gform.is_none() {
                return experiment_sylvester(field, *a, *b, *p, g.seed, cap, g.trials);
            }
            let ring = Ring::new(field.clone(), 4)?;
            let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(g.seed);
            let mut form = |text: &Option<String>, d: u32| match text {
                Some(t) => ginlab::Polynomial::parse(&ring, t),
                None => Ok(ginlab::sylvester::random_monic_in_x0(&ring, d, &mut rng)),
            };
            let fp = form(f, *a)?;
            let gp = form(gform, *b)?;
            sylvester_report(&fp, &gp, *p, g.seed, cap, g.trials)
        }
        Command::Segment {
            hf,
            vars,
            bound,
            witness,
            names,
        } => match witness {
            Some(path) => {
                let names: Vec<String> = names.split(',').map(|s| s.trim().to_string()).collect();
                let j = MonomialIdeal::parse(names.into(), &read(path)?)?;
                witness_report(&j, None)
            }
            None => {
                let ord = order_for(&g.order, TermOrder::Lex, *vars)?;
                segment_report(hf, *vars, &ord, *bound)
            }
        },
        Command::BorelCensus => experiment_borel_census(),
        Command::Curve { a, b } => experiment_curve(field, *a, *b, g.seed, g.degree_cap.unwrap_or(25), g.trials),
        Command::Nonsmooth => experiment_nonsmooth(field, g.seed, g.degree_cap.unwrap_or(25), g.trials),
        Command::Points { s, r, fixture, file } => {
            if let Some(fx) = fixture {
                let fx = match fx {
                    Fixture::Seven => PointFixture::Seven,
                    Fixture::Ten => PointFixture::Ten,
                };
                return experiment_point_fixture(field, fx, g.seed, g.trials);
            }
            let orders = match &g.order {
                Some(_) => vec![order_for(&g.order, TermOrder::Lex, r + 1)?],
                None => vec![TermOrder::Lex, TermOrder::RevLex],
            };
            match file {
                Some(path) => {
                    let pts = PointSet::parse(field, &read(path)?)?;
                    points_file_report(&pts, &orders, g.seed, g.trials)
                }
                None => experiment_points(field, *s, *r, &orders, g.seed, g.trials, g.jobs),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = match cli.global.field {
        FieldChoice::Prime(p) => run(PrimeField::new(p).expect("validated"), &cli.global, &cli.command),
        FieldChoice::Rationals => run(Rationals, &cli.global, &cli.command),
    };
    let mut report = match result {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return match e {
                Error::CapExceeded { .. } | Error::AllTrialsDisagree { .. } | Error::SeedDisagreement { .. } => {
                    ExitCode::from(3)
                }
                _ => ExitCode::from(1),
            };
        }
    };
    if cli.global.timing {
        report.timing_ms = Some(start.elapsed().as_millis());
    }
    let text = report.to_pretty_string();
    match &cli.global.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{text}"),
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        for f in report.failures() {
            eprintln!("mismatch: {f}");
        }
        ExitCode::from(2)
    }
}
