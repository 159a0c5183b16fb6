//! `fkalg`: Hilbert series, relation checks, pairings and coset
//! representatives for Fomin-Kirillov algebras and their graph subalgebras.

mod commands;
mod report;

use clap::{Parser, Subcommand};
use commands::RunConfig;
use fk_core::rewrite::Caps;
use fk_core::Error;
use report::{Format, Report};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::mpsc;
use std::time::Duration;

const EXIT_FAIL: u8 = 1;
const EXIT_CAP: u8 = 2;
const EXIT_USAGE: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "fkalg", version, about = "Fomin-Kirillov algebra computations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format
    #[arg(long, global = true, value_enum, default_value = "text", env = "FKALG_FORMAT")]
    format: Format,
    /// Worker threads (default: all cores)
    #[arg(long, global = true, env = "FKALG_THREADS")]
    threads: Option<usize>,
    /// Directory for cached rewrite systems
    #[arg(long, global = true, env = "FKALG_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    /// Wall-clock budget in seconds
    #[arg(long, global = true, env = "FKALG_BUDGET")]
    budget: Option<f64>,
    /// Completion limits as `rows=N,rules=M`
    #[arg(long, global = true, env = "FKALG_CAPS")]
    caps: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Graded dimensions of E_G by rewriting and by form rank
    Hilbert {
        /// Graph spec such as A:3, star:4, complete:6 or an edge list 1-2,2-3
        graph_pos: Option<String>,
        #[arg(long, env = "FKALG_GRAPH")]
        graph: Option<String>,
        #[arg(long, env = "FKALG_MAX_DEG")]
        max_deg: Option<usize>,
        /// Degree bound for the form-rank engine (default: full where cheap)
        #[arg(long)]
        form_deg: Option<usize>,
        /// Expected series as a bracket product, e.g. "[2][3]"
        #[arg(long, env = "FKALG_EXPECT")]
        expect: Option<String>,
    },
    /// Check that a family of relations vanishes in E_n
    Relcheck {
        #[arg(value_parser = ["braid", "claw", "cyclic", "sextic", "a3tilde", "rk"])]
        suite: String,
        #[arg(long)]
        n: usize,
    },
    /// Compare the table of Hilbert series for graphs on a given number of vertices
    Appendix {
        #[arg(long, default_value_t = 4)]
        vertices: usize,
        #[arg(long, env = "FKALG_MAX_DEG")]
        max_deg: Option<usize>,
    },
    /// Minimal coset representatives of E_G in E_{G ∪ e}
    Mcr {
        #[arg(long, env = "FKALG_GRAPH")]
        graph: String,
        /// The added edge, e.g. 4-5
        #[arg(long)]
        edge: String,
        #[arg(long, env = "FKALG_MAX_DEG")]
        max_deg: Option<usize>,
        #[arg(long, env = "FKALG_EXPECT")]
        expect: Option<String>,
    },
    /// Quotient H_sup / H_sub of Hilbert series
    Quotient {
        #[arg(long)]
        sub: String,
        #[arg(long)]
        sup: String,
        #[arg(long, env = "FKALG_MAX_DEG")]
        max_deg: Option<usize>,
        #[arg(long, env = "FKALG_EXPECT")]
        expect: Option<String>,
    },
    /// The bilinear form ⟨P, Q⟩
    Pair {
        left: String,
        right: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, env = "FKALG_EXPECT")]
        expect: Option<String>,
    },
    /// Normal form of an element of E_n
    Nf {
        element: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, env = "FKALG_MAX_DEG")]
        max_deg: Option<usize>,
        #[arg(long, env = "FKALG_EXPECT")]
        expect: Option<String>,
    },
    /// Weyl group Poincaré series over the Coxeter characteristic polynomial
    Weyl {
        #[arg(long = "type")]
        kind: String,
    },
    /// Extended affine symmetric group computations
    Affine {
        #[command(subcommand)]
        what: AffineCommand,
    },
    /// Coset representatives M_n of D_{n-1} in D_n and the pairing ⟨X, X′⟩
    Dn {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand, Debug)]
enum AffineCommand {
    /// Primitive elements with reduced words and lengths
    Primitives {
        #[arg(long)]
        n: usize,
    },
    /// Terms of e_k(y_1, …, y_n) as nil-Coxeter words
    Ek {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
}

fn parse_caps(s: &str) -> Result<Caps, Error> {
    let mut caps = Caps::default();
    let bad = || Error::Parse(format!("caps `{s}` should look like rows=N,rules=M"));
    for (i, part) in s.split(',').enumerate() {
        let (key, val) = match part.split_once('=') {
            Some((k, v)) => (k.trim(), v.trim()),
            None => (if i == 0 { "rows" } else { "rules" }, part.trim()),
        };
        let v: usize = val.replace('_', "").parse().map_err(|_| bad())?;
        if v == 0 {
            return Err(bad());
        }
        match key {
            "rows" => caps.max_rows = v,
            "rules" => caps.max_rules = v,
            _ => return Err(bad()),
        }
    }
    Ok(caps)
}

fn run(command: Command, cfg: &RunConfig) -> Result<Report, Error> {
    match command {
        Command::Hilbert { graph_pos, graph, max_deg, form_deg, expect } => {
            let spec = graph.or(graph_pos).ok_or_else(|| Error::Parse("a graph is required".into()))?;
            commands::hilbert(cfg, &spec, max_deg, form_deg, expect.as_deref())
        }
        Command::Relcheck { suite, n } => commands::relcheck(cfg, &suite, n),
        Command::Appendix { vertices, max_deg } => commands::appendix(cfg, vertices, max_deg),
        Command::Mcr { graph, edge, max_deg, expect } => commands::mcr(&graph, &edge, max_deg, expect.as_deref()),
        Command::Quotient { sub, sup, max_deg, expect } => commands::quotient(cfg, &sub, &sup, max_deg, expect.as_deref()),
        Command::Pair { left, right, n, expect } => commands::pairing(&left, &right, n, expect.as_deref()),
        Command::Nf { element, n, max_deg, expect } => commands::nf(cfg, &element, n, max_deg, expect.as_deref()),
        Command::Weyl { kind } => commands::weyl(&kind),
        Command::Affine { what: AffineCommand::Primitives { n } } => commands::affine_primitives(n),
        Command::Affine { what: AffineCommand::Ek { n, k } } => commands::affine_ek(n, k),
        Command::Dn { n } => commands::dn(n),
    }
}

fn exit_for(e: &Error) -> u8 {
    match e {
        Error::ResourceCap(_) | Error::Truncation { .. } => EXIT_CAP,
        Error::NotExact(_) => EXIT_FAIL,
        _ => EXIT_USAGE,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: thread pool: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    let caps = match cli.caps.as_deref().map(parse_caps).transpose() {
        Ok(c) => c.unwrap_or_default(),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let cfg = RunConfig { cache_dir: cli.cache_dir.clone(), caps };
    let format = cli.format;
    let command = cli.command;

    let (tx, rx) = mpsc::channel();
    std::thread::spawn(move || {
        let _ = tx.send(run(command, &cfg));
    });
    let outcome = match cli.budget {
        Some(secs) => match rx.recv_timeout(Duration::from_secs_f64(secs.max(0.0))) {
            Ok(r) => r,
            Err(_) => {
                eprintln!("error: budget of {secs} s exhausted before a result was available");
                return ExitCode::from(EXIT_CAP);
            }
        },
        None => rx.recv().expect("worker thread finished"),
    };
    match outcome {
        Ok(report) => {
            print!("{}", report.render(format));
            ExitCode::from(if report.pass { 0 } else { EXIT_FAIL })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_for(&e))
        }
    }
}
