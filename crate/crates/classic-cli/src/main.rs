//! Command-line front end for the CLASSIC⁻ reasoner.
//!
//! Exit codes: 0 for true/success, 1 for a false answer, 2 for usage or
//! parse errors, 3 for semantic-mode violations (total-attribute reasoning
//! on concepts outside the same-as fragment), 4 when a requested total lcs
//! does not exist. Diagnostics go to stderr, results to stdout.

use std::io::Read;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use classic_core::canonical::canonicalize;
use classic_core::interp::find_countermodel;
use classic_core::lcs_total::{lcs_existence, lcs_total, LcsTotalError, NonexistenceWitness};
use classic_core::parser::ConceptFile;
use classic_core::product::{lcs_n, product};
use classic_core::subsume::{
    canonical_graph, equivalent, is_inconsistent, subsumes_graph, subsumes_total_graph,
};
use classic_core::{Concept, DescriptionGraph, Semantics};

#[derive(Parser)]
#[command(
    name = "classic",
    version,
    about = "Subsumption and least-common-subsumer reasoning for CLASSIC⁻ concept descriptions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Sem {
    Partial,
    Total,
}

impl From<Sem> for Semantics {
    fn from(s: Sem) -> Semantics {
        match s {
            Sem::Partial => Semantics::Partial,
            Sem::Total => Semantics::Total,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Parse a concept file and echo the concepts back.
    Parse { file: String },
    /// Canonicalize the first concept and print it (or its graph with --dot).
    Normalize {
        file: String,
        #[arg(long)]
        dot: bool,
    },
    /// Does the first concept subsume into the second? Prints true/false.
    Subsumes {
        #[arg(short, long, value_enum, default_value = "partial")]
        semantics: Sem,
        file: String,
        #[arg(long)]
        json: bool,
    },
    /// Are the first two concepts equivalent? Prints true/false.
    Equiv {
        #[arg(short, long, value_enum, default_value = "partial")]
        semantics: Sem,
        file: String,
        #[arg(long)]
        json: bool,
    },
    /// Is the first concept satisfiable? Prints true/false.
    Sat {
        #[arg(short, long, value_enum, default_value = "partial")]
        semantics: Sem,
        file: String,
        #[arg(long)]
        json: bool,
    },
    /// Least common subsumer of the concepts in the file.
    Lcs {
        #[arg(short, long, value_enum, default_value = "partial")]
        semantics: Sem,
        file: String,
        /// Print the lcs graph as Graphviz instead of concept text.
        #[arg(long)]
        dot: bool,
        /// Dump configuration automata to stderr (total mode).
        #[arg(long)]
        debug_automata: bool,
        #[arg(long)]
        json: bool,
    },
    /// Does the least common subsumer exist? Prints true/false.
    LcsExists {
        #[arg(short, long, value_enum, default_value = "partial")]
        semantics: Sem,
        file: String,
        #[arg(long)]
        json: bool,
    },
    /// Print the description graph of the first concept as Graphviz.
    Graph { file: String },
    /// Search for a countermodel to "first ⊑ second" over small domains.
    OracleCheck {
        #[arg(short, long, value_enum, default_value = "partial")]
        semantics: Sem,
        file: String,
        /// Largest domain size to enumerate (exponential; keep small).
        #[arg(long, default_value_t = 3)]
        max_domain: usize,
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

#[derive(Debug)]
enum CliError {
    Io(String, std::io::Error),
    Parse(classic_core::parser::ParseError),
    TooFewConcepts { needed: usize, found: usize },
    ModeViolation(String),
    LcsMissing(Box<NonexistenceWitness>),
    DomainBound(usize),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Io(path, e) => write!(f, "{path}: {e}"),
            CliError::Parse(e) => write!(f, "{e}"),
            CliError::TooFewConcepts { needed, found } => {
                write!(f, "input needs at least {needed} concepts, found {found}")
            }
            CliError::ModeViolation(msg) => write!(f, "{msg}"),
            CliError::LcsMissing(w) => write!(f, "{}", witness_text(w)),
            CliError::DomainBound(m) => {
                write!(f, "--max-domain must be between 1 and 5, got {m}")
            }
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(..)
            | CliError::Parse(_)
            | CliError::TooFewConcepts { .. }
            | CliError::DomainBound(_) => 2,
            CliError::ModeViolation(_) => 3,
            CliError::LcsMissing(_) => 4,
        }
    }
}

fn read_input(path: &str) -> Result<ConceptFile, CliError> {
    let text = if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::Io("stdin".into(), e))?;
        buf
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::Io(path.to_string(), e))?
    };
    ConceptFile::parse(&text).map_err(CliError::Parse)
}

fn need(file: &ConceptFile, n: usize) -> Result<&[Concept], CliError> {
    if file.concepts.len() < n {
        Err(CliError::TooFewConcepts {
            needed: n,
            found: file.concepts.len(),
        })
    } else {
        Ok(&file.concepts)
    }
}

fn bool_exit(b: bool) -> ExitCode {
    if b {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

struct Stats {
    nodes: usize,
    edges: usize,
    started: Instant,
}

impl Stats {
    fn new() -> Stats {
        Stats {
            nodes: 0,
            edges: 0,
            started: Instant::now(),
        }
    }

    fn graph(&mut self, g: &DescriptionGraph) {
        self.nodes = g.recursive_node_count();
        self.edges = g.edge_count();
    }

    fn json(&self) -> serde_json::Value {
        serde_json::json!({
            "nodes": self.nodes,
            "edges": self.edges,
            "time_ms": self.started.elapsed().as_millis() as u64,
        })
    }
}

fn print_json(result: serde_json::Value, witness: Option<serde_json::Value>, stats: &Stats) {
    let mut obj = serde_json::json!({ "result": result, "stats": stats.json() });
    if let Some(w) = witness {
        obj["witness"] = w;
    }
    println!("{obj}");
}

fn witness_text(w: &NonexistenceWitness) -> String {
    let samples: Vec<String> = w.samples.iter().map(|s| s.join(" ")).collect();
    format!(
        "lcs does not exist\n  configuration: side={:?} attribute=`{}` first letters {{{}}}\n  nodes: h1={:?} h2={:?} p0={:?} meeting at f={:?}\n  product prefixes: `{}` and `{}`\n  pumpable words: {}",
        w.config.side,
        w.config.attr,
        w.first_letters.iter().cloned().collect::<Vec<_>>().join(", "),
        w.config.h1,
        w.config.h2,
        w.config.p0,
        w.config.f,
        w.prefix_left.join(" "),
        w.prefix_right.join(" "),
        if samples.is_empty() {
            "(none sampled)".to_string()
        } else {
            samples.join(", ")
        }
    )
}

fn witness_json(w: &NonexistenceWitness) -> serde_json::Value {
    serde_json::json!({
        "side": format!("{:?}", w.config.side),
        "attribute": w.config.attr,
        "first_letters": w.first_letters.iter().cloned().collect::<Vec<_>>(),
        "prefix_left": w.prefix_left,
        "prefix_right": w.prefix_right,
        "pumpable_words": w.samples.iter().map(|s| s.join(" ")).collect::<Vec<_>>(),
    })
}

fn check_total_ok(cs: &[Concept], sem: Sem) -> Result<(), CliError> {
    if sem == Sem::Total {
        for c in cs {
            if !c.in_s_fragment_or_top() {
                return Err(CliError::ModeViolation(format!(
                    "total-attribute semantics needs conjunctions of same-as equalities; `{c}` is outside that fragment"
                )));
            }
        }
    }
    Ok(())
}

fn run(command: Command) -> Result<ExitCode, CliError> {
    match command {
        Command::Parse { file } => {
            let parsed = read_input(&file)?;
            for (i, c) in parsed.concepts.iter().enumerate() {
                if i > 0 {
                    println!();
                }
                println!("{c}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Normalize { file, dot } => {
            let parsed = read_input(&file)?;
            let cs = need(&parsed, 1)?;
            let g = canonical_graph(&cs[0]);
            if dot {
                print!("{}", g.to_dot());
            } else {
                println!("{}", g.to_concept());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Subsumes {
            semantics,
            file,
            json,
        } => {
            let parsed = read_input(&file)?;
            let cs = need(&parsed, 2)?;
            check_total_ok(&cs[..2], semantics)?;
            let mut stats = Stats::new();
            let g = canonical_graph(&cs[0]);
            stats.graph(&g);
            let result = match semantics {
                Sem::Partial => subsumes_graph(&cs[1], &g),
                Sem::Total => subsumes_total_graph(&cs[1], &g),
            };
            if json {
                print_json(serde_json::json!(result), None, &stats);
            } else {
                println!("{result}");
            }
            Ok(bool_exit(result))
        }
        Command::Equiv {
            semantics,
            file,
            json,
        } => {
            let parsed = read_input(&file)?;
            let cs = need(&parsed, 2)?;
            check_total_ok(&cs[..2], semantics)?;
            let mut stats = Stats::new();
            let g = canonical_graph(&cs[0]);
            stats.graph(&g);
            let result = equivalent(&cs[0], &cs[1], semantics.into())
                .expect("fragment was checked before dispatch");
            if json {
                print_json(serde_json::json!(result), None, &stats);
            } else {
                println!("{result}");
            }
            Ok(bool_exit(result))
        }
        Command::Sat {
            semantics,
            file,
            json,
        } => {
            let parsed = read_input(&file)?;
            let cs = need(&parsed, 1)?;
            check_total_ok(&cs[..1], semantics)?;
            let mut stats = Stats::new();
            let g = canonical_graph(&cs[0]);
            stats.graph(&g);
            // Same-as concepts are always satisfiable under total
            // attributes; the canonical-graph test answers the partial case.
            let result = match semantics {
                Sem::Partial => !is_inconsistent(&cs[0]),
                Sem::Total => true,
            };
            if json {
                print_json(serde_json::json!(result), None, &stats);
            } else {
                println!("{result}");
            }
            Ok(bool_exit(result))
        }
        Command::Lcs {
            semantics,
            file,
            dot,
            debug_automata,
            json,
        } => {
            let parsed = read_input(&file)?;
            let mut stats = Stats::new();
            match semantics {
                Sem::Partial => {
                    let cs = need(&parsed, 2)?;
                    // The lcs graph is the canonicalized fold of products of
                    // the canonical operand graphs.
                    let mut g = canonical_graph(&cs[0]);
                    for c in &cs[1..] {
                        g = canonicalize(product(&g, &canonical_graph(c)));
                    }
                    stats.graph(&g);
                    if dot {
                        print!("{}", g.to_dot());
                    } else {
                        let result = lcs_n(cs);
                        if json {
                            print_json(serde_json::json!(result.to_string()), None, &stats);
                        } else {
                            println!("{result}");
                        }
                    }
                    Ok(ExitCode::SUCCESS)
                }
                Sem::Total => {
                    let cs = need(&parsed, 2)?;
                    if cs.len() != 2 {
                        return Err(CliError::TooFewConcepts {
                            needed: 2,
                            found: cs.len(),
                        });
                    }
                    check_total_ok(&cs[..2], semantics)?;
                    if debug_automata {
                        dump_automata(&cs[0], &cs[1]);
                    }
                    match lcs_total(&cs[0], &cs[1]) {
                        Ok(result) => {
                            let g = canonical_graph(&result);
                            stats.graph(&g);
                            if dot {
                                print!("{}", g.to_dot());
                            } else if json {
                                print_json(serde_json::json!(result.to_string()), None, &stats);
                            } else {
                                println!("{result}");
                            }
                            Ok(ExitCode::SUCCESS)
                        }
                        Err(LcsTotalError::NotSFragment(e)) => {
                            Err(CliError::ModeViolation(e.to_string()))
                        }
                        Err(LcsTotalError::DoesNotExist(w)) => Err(CliError::LcsMissing(w)),
                    }
                }
            }
        }
        Command::LcsExists {
            semantics,
            file,
            json,
        } => {
            let parsed = read_input(&file)?;
            let cs = need(&parsed, 2)?;
            let mut stats = Stats::new();
            let witness = match semantics {
                // Partial-attribute lcs always exists.
                Sem::Partial => None,
                Sem::Total => {
                    check_total_ok(&cs[..2], semantics)?;
                    lcs_existence(&cs[0], &cs[1]).expect("fragment was checked before dispatch")
                }
            };
            stats.graph(&product(
                &canonical_graph(&cs[0]),
                &canonical_graph(&cs[1]),
            ));
            let result = witness.is_none();
            if json {
                print_json(
                    serde_json::json!(result),
                    witness.as_ref().map(witness_json),
                    &stats,
                );
            } else {
                println!("{result}");
                if let Some(w) = &witness {
                    eprintln!("{}", witness_text(w));
                }
            }
            Ok(bool_exit(result))
        }
        Command::Graph { file } => {
            let parsed = read_input(&file)?;
            let cs = need(&parsed, 1)?;
            let g = DescriptionGraph::from_concept(&cs[0]);
            print!("{}", g.to_dot());
            Ok(ExitCode::SUCCESS)
        }
        Command::OracleCheck {
            semantics,
            file,
            max_domain,
            json,
        } => {
            if !(1..=5).contains(&max_domain) {
                return Err(CliError::DomainBound(max_domain));
            }
            let parsed = read_input(&file)?;
            let cs = need(&parsed, 2)?;
            let stats = Stats::new();
            let found = find_countermodel(&cs[0], &cs[1], max_domain, semantics.into());
            let result = found.is_none();
            match &found {
                None => {
                    if json {
                        print_json(serde_json::json!(result), None, &stats);
                    } else {
                        println!("true");
                    }
                }
                Some((interp, elem)) => {
                    if json {
                        let witness = serde_json::json!({
                            "domain_size": interp.domain_size,
                            "element": elem,
                            "concepts": interp.concepts.iter().map(|(k, v)| {
                                (k.clone(), v.iter().copied().collect::<Vec<_>>())
                            }).collect::<std::collections::BTreeMap<_, _>>(),
                            "roles": interp.roles.iter().map(|(k, v)| {
                                (k.clone(), v.iter().copied().collect::<Vec<_>>())
                            }).collect::<std::collections::BTreeMap<_, _>>(),
                            "attributes": interp.attrs.iter().map(|(k, v)| {
                                (k.clone(), v.iter().map(|(&d, &e)| (d, e)).collect::<Vec<_>>())
                            }).collect::<std::collections::BTreeMap<_, _>>(),
                        });
                        print_json(serde_json::json!(result), Some(witness), &stats);
                    } else {
                        println!("false");
                        eprintln!(
                            "countermodel: element {elem} of a domain of size {}",
                            interp.domain_size
                        );
                        eprintln!("{interp:#?}");
                    }
                }
            }
            Ok(bool_exit(result))
        }
    }
}

fn dump_automata(c: &Concept, d: &Concept) {
    // Configuration automata are internal to the existence check; the graph
    // product is the part worth seeing alongside them.
    let gc = canonical_graph(c);
    let gd = canonical_graph(d);
    let p = product(&gc, &gd);
    eprintln!("; product graph");
    eprint!("{}", p.to_dot());
    if let Ok(Some(w)) = classic_core::lcs_total::lcs_existence(c, d) {
        eprintln!("; infinite configuration language at `{}`", w.config.attr);
        eprint!("{}", w.language.to_dot());
    }
}
