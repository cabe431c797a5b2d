//! `weylkit`: JSON front end to the `weylkit` library.
//!
//! Exit codes: 0 success, 1 self-test failure, 2 bad input, 3 resource bound hit.

mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use weylkit::Error;

#[derive(Parser, Debug)]
#[command(name = "weylkit", version, about = "Exact Weyl-group and multiplicity computations, JSON out")]
pub struct Cli {
    /// Output format; JSON is the only one.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Human-readable rendering on stderr.
    #[arg(long, short, global = true)]
    pub verbose: bool,
    /// Worker threads for batch enumeration.
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    pub parallel: Option<u16>,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Format {
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Length, reduced word, descents and support; Bruhat comparison with --x.
    Weyl {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        w: String,
        #[arg(long)]
        x: Option<String>,
    },
    /// Minimal double coset representatives, or W_{I,J} membership in block mode (--r, --k).
    Cosets {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long = "I", default_value = "-")]
        i: String,
        #[arg(long = "J", default_value = "-")]
        j: String,
    },
    /// Kazhdan–Lusztig polynomial P_{x,w}.
    Kl {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        x: String,
        #[arg(long)]
        w: String,
    },
    /// Verma multiplicity m(w', w) with --wprime, else parabolic multiplicity for --K.
    Mult {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        k: usize,
        #[arg(long = "dL", default_value_t = 1)]
        d_l: usize,
        #[arg(long)]
        w: String,
        #[arg(long)]
        wprime: Option<String>,
        #[arg(long = "K", default_value = "-")]
        kset: String,
    },
    /// m(w, J, S): one value with --w, all representatives with --J, all nonzero labels otherwise.
    SteinbergMult {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        k: usize,
        #[arg(long = "dL", default_value_t = 1)]
        d_l: usize,
        #[arg(long = "S", default_value = "-")]
        s: String,
        #[arg(long = "J")]
        j: Option<String>,
        #[arg(long)]
        w: Option<String>,
        #[arg(long = "max-len")]
        max_len: Option<usize>,
    },
    /// Jordan–Hölder labels of the smooth parabolic induction.
    Jh {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        k: usize,
    },
    /// Segment twists for the Levi cut out by --I.
    Segments {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        k: usize,
        #[arg(long = "I", default_value = "-")]
        i: String,
    },
    /// Twist tuples of the Jacquet module, one per w in S_k.
    Jacquet {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        k: usize,
    },
    /// Euler-characteristic checks of the Tits complexes.
    TitsCheck {
        #[arg(long, value_enum, default_value_t = TitsKind::Smooth)]
        kind: TitsKind,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        k: usize,
        #[arg(long = "dL", default_value_t = 1)]
        d_l: usize,
        /// Base set (I for smooth, S for analytic); all subsets when omitted.
        #[arg(long = "I", alias = "S")]
        base: Option<String>,
        #[arg(long = "max-len")]
        max_len: Option<usize>,
    },
    /// Dimension of a Hom/Ext group from the rule table.
    ExtDim {
        #[arg(long, value_enum)]
        kind: ExtKind,
        #[arg(long = "fixed-center")]
        fixed_center: bool,
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        k: usize,
        #[arg(long = "dL", default_value_t = 1)]
        d_l: usize,
    },
    /// Run the invariant suites.
    Selftest {
        #[arg(long, value_enum, default_value_t = Level::Quick)]
        level: Level,
        /// Overwrite one KL value before testing: "X W c0,c1,...".
        #[arg(long = "seed-kl-fault", hide = true)]
        seed_kl_fault: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum TitsKind {
    Smooth,
    Analytic,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ExtKind {
    Smooth,
    Analytic,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Level {
    Quick,
    Full,
}

pub enum Failure {
    Input(String),
    Resource(String),
    SelftestFailed(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_resource() {
            Failure::Resource(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

fn emit(v: &Value) {
    // a closed pipe (e.g. `| head`) is not an error worth reporting
    let _ = writeln!(std::io::stdout().lock(), "{v}");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            let msg = e.kind().to_string();
            let detail = e.to_string();
            let first = detail.lines().next().unwrap_or(&msg).trim_start_matches("error: ").to_string();
            emit(&json!({ "error": first }));
            return ExitCode::from(2);
        }
    };
    let result = match cli.parallel {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n as usize).build() {
            Ok(pool) => pool.install(|| commands::run(&cli)),
            Err(e) => Err(Failure::Resource(e.to_string())),
        },
        None => commands::run(&cli),
    };
    match result {
        Ok(v) => {
            emit(&v);
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            emit(&json!({ "error": msg }));
            ExitCode::from(2)
        }
        Err(Failure::Resource(msg)) => {
            emit(&json!({ "error": msg }));
            ExitCode::from(3)
        }
        Err(Failure::SelftestFailed(v)) => {
            emit(&v);
            ExitCode::from(1)
        }
    }
}
