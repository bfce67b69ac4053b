use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{Map, Value};

use freerank::arith::Precision;
use freerank::catalog;
use freerank::congruence::{
    certified_word_bound, finite_quotient, quotient_order, word_systole, CongruenceLevel, QuotientOptions,
};
use freerank::geometry::{
    geodesic_systole_upper, sysg_lower_bound, volume_systole_check, ManifoldMode, Verdict,
};
use freerank::group::{bfs_ball, load_group_file, GroupSpec};
use freerank::heights::{claim2_over_set, height_matrix};
use freerank::homology::{coset_table, dim_h1_mod_p};
use freerank::number_field::NumberField;
use freerank::report::{render_text, run_tower, theorem2_check, write_report, Config};
use freerank::Error;

#[derive(Parser)]
#[command(name = "freerank", version, about = "Congruence towers of Kleinian groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GroupArg {
    /// Group file (JSON); defaults to a catalog group.
    #[arg(long)]
    group: Option<PathBuf>,
    #[arg(long, default_value = "figure-eight")]
    catalog: String,
}

impl GroupArg {
    fn load(&self) -> Result<GroupSpec, Error> {
        match &self.group {
            Some(path) => load_group_file(path),
            None => catalog::by_name(&self.catalog)
                .ok_or_else(|| Error::Precondition(format!("unknown catalog group `{}`", self.catalog))),
        }
    }
}

#[derive(Args)]
struct LevelArg {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    i: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Invariants of Q[x]/(f) and the primes above given rational primes.
    Field {
        /// Coefficients of the monic minimal polynomial, low to high, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        min_poly: Vec<i64>,
        #[arg(long, value_delimiter = ',')]
        primes: Vec<u64>,
    },
    /// Heights of words in the generators.
    Heights {
        #[command(flatten)]
        group: GroupArg,
        /// Words such as "a b^-1 a".
        words: Vec<String>,
        #[arg(long, default_value_t = 128)]
        prec: u32,
    },
    /// Sphere sizes of the Cayley ball.
    Ball {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        radius: u32,
        #[arg(long)]
        psl: bool,
    },
    /// Quotient order at a level.
    Level {
        #[command(flatten)]
        group: GroupArg,
        #[command(flatten)]
        level: LevelArg,
        #[arg(long, default_value_t = 1_000_000)]
        budget: usize,
    },
    /// Word systole, its certified lower bound and a geodesic systole upper bound.
    Systole {
        #[command(flatten)]
        group: GroupArg,
        #[command(flatten)]
        level: LevelArg,
        #[arg(long, default_value_t = 8)]
        r_max: u32,
    },
    /// dim H_1(Gamma_i, F_p).
    Homology {
        #[command(flatten)]
        group: GroupArg,
        #[command(flatten)]
        level: LevelArg,
        #[arg(long, default_value_t = 20_000)]
        budget: usize,
    },
    /// Full tower report.
    Tower {
        #[command(flatten)]
        group: GroupArg,
        /// JSON config file; flags below override it.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long, value_delimiter = ',')]
        levels: Option<Vec<u32>>,
        #[arg(long)]
        r_max: Option<u32>,
        #[arg(long)]
        psl_mode: bool,
        #[arg(long)]
        delta: Option<f64>,
        #[arg(long)]
        seed: Option<u64>,
        /// Directory receiving tower.json and tower.txt.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Inequality utilities.
    Check {
        #[command(subcommand)]
        what: CheckCommand,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Closed,
    Cusped,
}

#[derive(Subcommand)]
enum CheckCommand {
    /// H(MN) <= 4^#S_inf H(M) H(N) over all pairs in a Cayley ball.
    Claim2 {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long, default_value_t = 4)]
        radius: u32,
    },
    /// Volume against systole.
    Volume {
        #[arg(long)]
        vol: f64,
        #[arg(long)]
        sys: f64,
        #[arg(long, value_enum, default_value_t = Mode::Closed)]
        mode: Mode,
        #[arg(long, default_value_t = 0.1)]
        delta: f64,
    },
    /// Systolic genus lower bound e^((1/2 - delta) sys).
    Sysg {
        #[arg(long)]
        sys: f64,
        #[arg(long, default_value_t = 0.1)]
        delta: f64,
    },
    /// log k >= (1/2 - delta) sys.
    Rank {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        sys: f64,
        #[arg(long, default_value_t = 0.1)]
        delta: f64,
    },
}

fn print_json(v: &impl serde::Serialize) -> Result<(), Error> {
    println!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Field { min_poly, primes } => {
            let k = NumberField::from_coeffs(&min_poly)?;
            println!("degree {}", k.degree());
            println!("discriminant {}", k.discriminant());
            println!("signature {:?}", k.signature());
            println!("irreducibility {:?}", k.irreducibility());
            for w in k.warnings() {
                println!("warning: {w}");
            }
            for v in k.places() {
                print_json(&v.summary())?;
            }
            for p in primes {
                match k.primes_above(p) {
                    Ok(ps) => {
                        for pr in ps.iter() {
                            let s = pr.summary();
                            println!("p = {p}: factor {} e = {} f = {}", s.factor, s.e, s.f);
                        }
                    }
                    Err(e) => println!("p = {p}: {e}"),
                }
            }
        }
        Command::Heights { group, words, prec } => {
            let g = group.load()?;
            for w in &words {
                let m = g.evaluate(&g.parse_word(w)?);
                let h = height_matrix(g.field(), &m, prec)?;
                println!("{w}: H = {} (finite part {})", h.total, h.summary().finite_part);
            }
        }
        Command::Ball { group, radius, psl } => {
            let g = group.load()?;
            let b = bfs_ball(&g, radius, psl, None);
            println!("sphere sizes {:?}, total {}", b.sphere_counts(), b.len());
        }
        Command::Level { group, level, budget } => {
            let g = group.load()?;
            let l = CongruenceLevel::new(&g, level.p, level.i)?;
            let opts = QuotientOptions {
                budget,
                projective: false,
            };
            print_json(&quotient_order(&g, &l, opts)?)?;
        }
        Command::Systole { group, level, r_max } => {
            let g = group.load()?;
            let l = CongruenceLevel::new(&g, level.p, level.i)?;
            print_json(&certified_word_bound(&g, &l, 128)?)?;
            print_json(&word_systole(&g, &l, r_max, None)?)?;
            print_json(&geodesic_systole_upper(&g, &l, r_max, None, Precision::default())?)?;
        }
        Command::Homology { group, level, budget } => {
            let g = group.load()?;
            let l = CongruenceLevel::new(&g, level.p, level.i)?;
            let opts = QuotientOptions {
                budget,
                projective: false,
            };
            let q = finite_quotient(&g, &l, opts)?;
            let t = coset_table(&q, &[])?;
            print_json(&dim_h1_mod_p(&g, &t, level.p, false)?)?;
        }
        Command::Tower {
            group,
            config,
            p,
            levels,
            r_max,
            psl_mode,
            delta,
            seed,
            out,
            json,
        } => {
            let g = group.load()?;
            let mut over = match config {
                Some(path) => match serde_json::from_str(&std::fs::read_to_string(path)?)? {
                    Value::Object(m) => m,
                    _ => return Err(Error::Precondition("config file must hold a JSON object".into())),
                },
                None => Map::new(),
            };
            let mut set = |k: &str, v: Option<Value>| {
                if let Some(v) = v {
                    over.insert(k.to_string(), v);
                }
            };
            set("p", p.map(Value::from));
            set("levels", levels.map(Value::from));
            set("r_max", r_max.map(Value::from));
            set("psl_mode", psl_mode.then_some(Value::Bool(true)));
            set("delta", delta.map(Value::from));
            set("seed", seed.map(Value::from));
            let cfg = Config::resolve(&g, &over)?;
            let report = run_tower(&g, &cfg)?;
            if let Some(dir) = out {
                let (j, t) = write_report(&report, &dir)?;
                eprintln!("wrote {} and {}", j.display(), t.display());
            }
            if json {
                print!("{}", report.to_json()?);
            } else {
                print!("{}", render_text(&report));
            }
            if report.has_falsification() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Check { what } => match what {
            CheckCommand::Claim2 { group, radius } => {
                let g = group.load()?;
                let b = bfs_ball(&g, radius, false, None);
                let ms: Vec<_> = b.entries().iter().map(|e| e.matrix.clone()).collect();
                let t = claim2_over_set(g.field(), &ms, Precision::default())?;
                println!(
                    "{} pairs, {} failures, {} inconclusive",
                    t.pairs,
                    t.failures.len(),
                    t.inconclusive
                );
                for (i, j, msg) in &t.failures {
                    println!("  {} * {}: {msg}", g.format_word(&b.entries()[*i].word), g.format_word(&b.entries()[*j].word));
                }
                if !t.failures.is_empty() {
                    return Ok(ExitCode::from(1));
                }
            }
            CheckCommand::Volume { vol, sys, mode, delta } => {
                let mode = match mode {
                    Mode::Closed => ManifoldMode::Closed,
                    Mode::Cusped => ManifoldMode::Cusped,
                };
                print_json(&volume_systole_check(vol, sys, mode, delta))?;
            }
            CheckCommand::Sysg { sys, delta } => print_json(&sysg_lower_bound(sys, delta))?,
            CheckCommand::Rank { k, sys, delta } => {
                let c = theorem2_check(Some(k), Some(sys), delta);
                print_json(&c)?;
                if c.verdict == Verdict::Fail {
                    eprintln!("inequality does not hold");
                }
            }
        },
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) if e.is_falsification() => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
