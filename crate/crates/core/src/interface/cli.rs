//! `qmut` command line.
//!
//! Exit codes: 0 on success, 1 when a verdict does not match the request
//! (or a search finds nothing), 2 on input and validation errors. Errors
//! are printed to stderr as `{"error": "..."}`.

use std::collections::BTreeMap;
use std::io::Read;
use std::net::{IpAddr, SocketAddr};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::families::{make_family, FamilyName, FamilySpec};
use crate::quiver::Quiver;
use crate::search::{find_reddening, SearchOutcome};
use crate::sequence::{check_sequence, check_sequence_traced, Mode, MutationSequence};
use crate::tower::{
    build_scheme, decompose_triangular, mutate_tower, verify_scheme, verify_tower, Tower,
    TriangularDecomposition,
};
use crate::vertex::VertexId;

use super::dot::to_dot;
use super::json::{parse_quiver, parse_tower, quiver_to_json, SchemeDoc, TowerDoc};
use super::Error;

#[derive(Debug, Parser)]
#[command(name = "qmut", version, about = "Quiver mutation and reddening sequences")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModeArg {
    Reddening,
    Mgs,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Reddening => Mode::Reddening,
            ModeArg::Mgs => Mode::MaximalGreen,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Apply a mutation sequence and print the resulting quiver.
    Mutate {
        #[arg(short = 'q', long = "quiver")]
        quiver: PathBuf,
        #[arg(short = 's', long = "seq", allow_hyphen_values = true)]
        seq: String,
    },
    /// Check whether a sequence reddens the framed quiver.
    Check {
        #[arg(short = 'q', long = "quiver")]
        quiver: PathBuf,
        #[arg(short = 's', long = "seq", allow_hyphen_values = true)]
        seq: String,
        #[arg(long, value_enum, default_value = "reddening")]
        mode: ModeArg,
        #[arg(long)]
        trace: bool,
    },
    /// Breadth-first search for the shortest reddening or maximal green sequence.
    Search {
        #[arg(short = 'q', long = "quiver")]
        quiver: PathBuf,
        #[arg(long = "max-len")]
        max_len: usize,
        #[arg(long, value_enum, default_value = "reddening")]
        mode: ModeArg,
    },
    /// Tower operations.
    #[command(subcommand)]
    Tower(TowerCmd),
    /// Reddening schemes of towers.
    #[command(subcommand)]
    Scheme(SchemeCmd),
    /// Print one level of a built-in family.
    Family {
        name: String,
        /// Family parameter, e.g. `p=3`.
        #[arg(long = "param", value_parser = parse_param)]
        params: Vec<(String, i64)>,
        #[arg(long)]
        level: usize,
    },
    /// Export formats.
    #[command(subcommand)]
    Export(ExportCmd),
    /// Run the HTTP session service.
    Serve {
        #[arg(long, env = "QMUT_PORT", default_value_t = 8080)]
        port: u16,
        #[arg(long, env = "QMUT_ADDR", default_value = "127.0.0.1")]
        addr: IpAddr,
    },
}

#[derive(Debug, Args)]
pub struct TowerArgs {
    #[arg(short = 't', long = "tower")]
    pub tower: PathBuf,
    #[arg(short = 'N', long = "depth")]
    pub depth: usize,
}

#[derive(Debug, Subcommand)]
pub enum TowerCmd {
    /// Check the embedding invariants up to the given depth.
    Verify(TowerArgs),
    /// Mutate the tower and print its first levels.
    Mutate {
        #[command(flatten)]
        tower: TowerArgs,
        /// Vertex to mutate at; repeat for a sequence.
        #[arg(short = 'k', long = "vertex", allow_hyphen_values = true, required = true)]
        vertex: Vec<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum SchemeCmd {
    /// Verify a scheme; family towers default to their built-in scheme.
    Verify {
        #[command(flatten)]
        tower: TowerArgs,
        #[arg(short = 'r', long = "scheme")]
        scheme: Option<PathBuf>,
    },
    /// Build a scheme from a triangular decomposition (searched if not given).
    Build {
        #[command(flatten)]
        tower: TowerArgs,
        #[arg(short = 'd', long = "decomposition")]
        decomposition: Option<PathBuf>,
        #[arg(long = "search-len", default_value_t = 6)]
        search_len: usize,
    },
    /// Compute a triangular decomposition with searched seeds.
    Decompose {
        #[command(flatten)]
        tower: TowerArgs,
        #[arg(long = "search-len", default_value_t = 6)]
        search_len: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum ExportCmd {
    /// Graphviz DOT.
    Dot {
        #[arg(short = 'q', long = "quiver")]
        quiver: PathBuf,
    },
}

fn parse_param(s: &str) -> Result<(String, i64), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected key=value, got {s:?}"))?;
    let v = v.trim().parse().map_err(|_| format!("parameter {k} needs an integer value"))?;
    Ok((k.trim().to_owned(), v))
}

/// Output of a command plus whether its verdict matched.
pub struct Outcome {
    pub stdout: String,
    pub matched: bool,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, matched: true }
    }
}

fn read_input(path: &Path) -> Result<String, Error> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        Ok(std::fs::read_to_string(path)?)
    }
}

fn load_quiver(path: &Path) -> Result<Quiver, Error> {
    parse_quiver(&read_input(path)?)
}

fn load_tower(path: &Path) -> Result<(TowerDoc, Tower), Error> {
    parse_tower(&read_input(path)?)
}

fn pretty<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable output")
}

/// Runs every subcommand except `serve`.
pub fn execute(cmd: &Command) -> Result<Outcome, Error> {
    match cmd {
        Command::Mutate { quiver, seq } => {
            let mut q = load_quiver(quiver)?;
            let s: MutationSequence = seq.parse()?;
            for k in s.steps() {
                q = q.mutate(k)?;
            }
            Ok(Outcome::ok(quiver_to_json(&q)))
        }
        Command::Check {
            quiver,
            seq,
            mode,
            trace,
        } => {
            let q = load_quiver(quiver)?;
            let s: MutationSequence = seq.parse()?;
            let verdict = if *trace {
                check_sequence_traced(&q, &s)?
            } else {
                check_sequence(&q, &s)?
            };
            Ok(Outcome {
                matched: Mode::from(*mode).accepts(verdict.kind),
                stdout: pretty(&verdict),
            })
        }
        Command::Search { quiver, max_len, mode } => {
            let q = load_quiver(quiver)?;
            Ok(match find_reddening(&q, *max_len, (*mode).into())? {
                SearchOutcome::Found(s) => Outcome::ok(s.to_string()),
                SearchOutcome::NoneUpTo(n) => Outcome {
                    stdout: format!("NoneUpTo({n})"),
                    matched: false,
                },
            })
        }
        Command::Tower(TowerCmd::Verify(args)) => {
            let (_, t) = load_tower(&args.tower)?;
            let check = verify_tower(&t, args.depth)?;
            Ok(Outcome {
                matched: check.is_ok(),
                stdout: pretty(&check),
            })
        }
        Command::Tower(TowerCmd::Mutate { tower, vertex }) => {
            let (_, t) = load_tower(&tower.tower)?;
            let mut it = vertex.iter().map(|v| VertexId::from(v.as_str()));
            let first = it.next().ok_or_else(|| Error::Usage("missing -k".into()))?;
            let mut m = mutate_tower(&t, &first)?;
            for k in it {
                m = m.mutate(&k)?;
            }
            let levels = (1..=tower.depth).map(|i| m.level(i)).collect::<Result<Vec<_>, _>>()?;
            Ok(Outcome::ok(pretty(&TowerDoc::from_levels(&levels))))
        }
        Command::Scheme(SchemeCmd::Verify { tower, scheme }) => {
            let (doc, t) = load_tower(&tower.tower)?;
            let r = match scheme {
                Some(p) => serde_json::from_str::<SchemeDoc>(&read_input(p)?)?.to_scheme(),
                None => doc.family_scheme().ok_or_else(|| {
                    Error::Usage("explicit towers need a scheme file (-r)".into())
                })??,
            };
            let check = verify_scheme(&t, &r, tower.depth)?;
            Ok(Outcome {
                matched: check.is_ok(),
                stdout: pretty(&check),
            })
        }
        Command::Scheme(SchemeCmd::Build {
            tower,
            decomposition,
            search_len,
        }) => {
            let (_, t) = load_tower(&tower.tower)?;
            let d = match decomposition {
                Some(p) => serde_json::from_str::<TriangularDecomposition>(&read_input(p)?)?,
                None => decompose_triangular(&t, tower.depth, *search_len)?,
            };
            let r = build_scheme(&t, &d, tower.depth)?;
            Ok(Outcome::ok(pretty(&SchemeDoc {
                levels: r.materialize(tower.depth)?,
            })))
        }
        Command::Scheme(SchemeCmd::Decompose { tower, search_len }) => {
            let (_, t) = load_tower(&tower.tower)?;
            let d = decompose_triangular(&t, tower.depth, *search_len)?;
            Ok(Outcome::ok(pretty(&d)))
        }
        Command::Family { name, params, level } => {
            let spec = FamilySpec {
                name: name.parse::<FamilyName>()?,
                params: params.iter().cloned().collect::<BTreeMap<_, _>>(),
            };
            let q = make_family(&spec)?.level(*level)?;
            Ok(Outcome::ok(quiver_to_json(&q)))
        }
        Command::Export(ExportCmd::Dot { quiver }) => {
            let q = load_quiver(quiver)?;
            let mut s = to_dot(&q);
            s.pop();
            Ok(Outcome::ok(s))
        }
        Command::Serve { .. } => Err(Error::Usage("serve is not a one-shot command".into())),
    }
}

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("{}", serde_json::json!({ "error": msg.to_string() }));
    ExitCode::from(2)
}

/// Entry point used by the binary.
pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail(e.to_string().trim_end()),
    };
    if let Command::Serve { port, addr } = cli.command {
        let rt = match tokio::runtime::Runtime::new() {
            Ok(rt) => rt,
            Err(e) => return fail(e),
        };
        return match rt.block_on(super::server::serve(SocketAddr::new(addr, port))) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => fail(e),
        };
    }
    match execute(&cli.command) {
        Ok(out) => {
            println!("{}", out.stdout);
            if out.matched {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => fail(e),
    }
}
