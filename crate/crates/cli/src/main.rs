//! Command-line front end. Every subcommand prints either canonical CNF
//! text or a JSON document matching the library's serialized shapes, so
//! outputs can be piped back into the validators. Domain failures print a
//! JSON error envelope {"error":{"kind":...}} and exit 1; malformed
//! invocations exit 2 through the argument parser.

use clap::{Parser, Subcommand};
use omegalab::descent::{canonical_walk, check_strict_descent, DescentError, TraceStatus};
use omegalab::dickson::{rank_bad_sequence, DicksonError, Monomial};
use omegalab::formula::{check_uniformization, parse_formula, UniformizeError};
use omegalab::hierarchy::{
    ackermann_traced_with, ackermann_with, hardy_with_fuel, validate_trace, AckCaps, CallTree,
    HierarchyError, TraceCheck, DEFAULT_HARDY_FUEL,
};
use omegalab::Ordinal;
use serde::Deserialize;
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "omegalab", version, about = "Ordinal descent toolbox")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compare or combine ordinals given in CNF text
    Ord {
        #[command(subcommand)]
        op: OrdOp,
    },
    /// Walk from an ordinal down to zero, consuming steps at limits
    Walk {
        /// Starting ordinal in CNF text
        start: String,
        /// Step values consumed at limit stages, comma-separated
        #[arg(long, value_delimiter = ',')]
        steps: Vec<u64>,
        /// Bound the recorded walk is checked against
        #[arg(long, default_value = "w^w")]
        bound: String,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate the two-argument recursion, optionally with a call trace
    Ack {
        #[arg(required_unless_present = "check_trace")]
        m: Option<u64>,
        #[arg(required_unless_present = "check_trace")]
        n: Option<u64>,
        /// Record the full call tree instead of just the value
        #[arg(long)]
        trace: bool,
        /// Re-check the recorded tree and report the verdict alongside it
        #[arg(long)]
        validate: bool,
        #[arg(long, default_value_t = 3)]
        cap_m: u64,
        #[arg(long, default_value_t = 12)]
        cap_n: u64,
        /// Validate a call tree stored as JSON instead of evaluating
        #[arg(long)]
        check_trace: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate the step-counting hierarchy at an ordinal index below w^w
    Hardy {
        /// Index ordinal in CNF text
        alpha: String,
        n: u64,
        /// Rewrite budget
        #[arg(long, default_value_t = DEFAULT_HARDY_FUEL)]
        fuel: u64,
        #[arg(long)]
        json: bool,
    },
    /// Operations on bad sequences of exponent vectors
    Dickson {
        #[command(subcommand)]
        op: DicksonOp,
    },
    /// Check the witness selector built from a two-variable relation
    Uniformize {
        /// Quantifier-free relation over x and y
        #[arg(long)]
        theta: String,
        /// Exclusive limit on the x values inspected
        #[arg(long = "X", default_value_t = 10)]
        x_limit: u64,
        /// Cutoff for unbounded quantifiers and witness codes
        #[arg(long = "N", default_value_t = 300)]
        n_limit: u64,
    },
}

#[derive(Subcommand)]
enum OrdOp {
    /// Print GT, LT, or EQ
    Cmp { a: String, b: String },
    /// Print the ordinal sum in CNF text
    Add { a: String, b: String },
    /// Print the ordinal product in CNF text
    Mul { a: String, b: String },
}

#[derive(Subcommand)]
enum DicksonOp {
    /// Rank each prefix of a bad sequence like "(1,1);(0,2);(3,0)"
    Rank {
        seq: String,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        json: bool,
    },
}

fn fail(body: serde_json::Value) -> String {
    json!({ "error": body }).to_string()
}

fn parse_ordinal(text: &str) -> Result<Ordinal, String> {
    text.parse::<Ordinal>().map_err(|e| {
        fail(json!({
            "kind": "Parse",
            "position": e.position,
            "message": e.to_string(),
        }))
    })
}

fn dickson_failure(e: DicksonError) -> String {
    match e {
        DicksonError::DimensionMismatch => fail(json!({ "kind": "DimensionMismatch" })),
        DicksonError::NotAntichain { i, j } => {
            fail(json!({ "kind": "NotAntichain", "i": i, "j": j }))
        }
        DicksonError::NotBad { i, j } => fail(json!({ "kind": "NotBad", "i": i, "j": j })),
    }
}

fn hierarchy_failure(e: HierarchyError) -> String {
    match e {
        HierarchyError::CapExceeded(msg) => {
            fail(json!({ "kind": "CapExceeded", "message": msg }))
        }
        HierarchyError::NotBelowOmegaOmega => fail(json!({ "kind": "NotBelowOmegaOmega" })),
    }
}

fn run(command: Command) -> Result<String, String> {
    match command {
        Command::Ord { op } => {
            let (a, b, op_name) = match &op {
                OrdOp::Cmp { a, b } => (a, b, "cmp"),
                OrdOp::Add { a, b } => (a, b, "add"),
                OrdOp::Mul { a, b } => (a, b, "mul"),
            };
            let a = parse_ordinal(a)?;
            let b = parse_ordinal(b)?;
            Ok(match op_name {
                "cmp" => match a.cmp(&b) {
                    std::cmp::Ordering::Greater => "GT".to_string(),
                    std::cmp::Ordering::Less => "LT".to_string(),
                    std::cmp::Ordering::Equal => "EQ".to_string(),
                },
                "add" => a.add(&b).to_string(),
                _ => a.mul(&b).to_string(),
            })
        }
        Command::Walk {
            start,
            steps,
            bound,
            json: as_json,
        } => {
            let start = parse_ordinal(&start)?;
            let bound = parse_ordinal(&bound)?;
            let walked = canonical_walk(&start, &steps).map_err(|e| match e {
                DescentError::StepsExhausted { partial } => fail(json!({
                    "kind": "StepsExhausted",
                    "partial": partial,
                })),
                other => fail(json!({ "kind": "Walk", "message": other.to_string() })),
            })?;
            // The walk always descends; the caller's bound is what can fail.
            let trace = check_strict_descent(&walked.entries, &bound);
            match trace.status {
                TraceStatus::Valid => Ok(if as_json {
                    serde_json::to_string(&trace).expect("trace serializes")
                } else {
                    let mut lines: Vec<String> =
                        trace.entries.iter().map(|o| o.to_string()).collect();
                    lines.push("valid".to_string());
                    lines.join("\n")
                }),
                TraceStatus::ViolationAt(i) => Err(fail(json!({
                    "kind": "ViolationAt",
                    "index": i,
                    "trace": trace,
                }))),
            }
        }
        Command::Ack {
            m,
            n,
            trace,
            validate,
            cap_m,
            cap_n,
            check_trace,
            json: as_json,
        } => {
            if let Some(path) = check_trace {
                let text = std::fs::read_to_string(&path).map_err(|e| {
                    fail(json!({ "kind": "Io", "message": e.to_string() }))
                })?;
                // Deep call chains nest past the default deserialization
                // limit; grow the stack instead of refusing our own output.
                let mut de = serde_json::Deserializer::from_str(&text);
                de.disable_recursion_limit();
                let tree = CallTree::deserialize(serde_stacker::Deserializer::new(&mut de))
                    .map_err(|e| fail(json!({ "kind": "Parse", "message": e.to_string() })))?;
                return match validate_trace(&tree) {
                    TraceCheck::Valid => {
                        Ok(serde_json::to_string(&TraceCheck::Valid).expect("serializes"))
                    }
                    TraceCheck::BadEdge(path) => {
                        Err(fail(json!({ "kind": "BadEdge", "path": path })))
                    }
                    TraceCheck::BadValue(path) => {
                        Err(fail(json!({ "kind": "BadValue", "path": path })))
                    }
                    TraceCheck::BadMeasure(path) => {
                        Err(fail(json!({ "kind": "BadMeasure", "path": path })))
                    }
                };
            }
            let (m, n) = (m.expect("required by clap"), n.expect("required by clap"));
            let caps = AckCaps {
                max_m: cap_m,
                max_n: cap_n,
                ..AckCaps::default()
            };
            if trace {
                let tree = ackermann_traced_with(&caps, m, n).map_err(hierarchy_failure)?;
                if validate {
                    let verdict = validate_trace(&tree);
                    Ok(json!({
                        "valid": verdict == TraceCheck::Valid,
                        "tree": tree,
                    })
                    .to_string())
                } else {
                    Ok(serde_json::to_string(&tree).expect("tree serializes"))
                }
            } else {
                let value = ackermann_with(&caps, m, n).map_err(hierarchy_failure)?;
                Ok(if as_json {
                    json!({ "m": m, "n": n, "value": value }).to_string()
                } else {
                    value.to_string()
                })
            }
        }
        Command::Hardy {
            alpha,
            n,
            fuel,
            json: as_json,
        } => {
            let a = parse_ordinal(&alpha)?;
            let value = hardy_with_fuel(&a, n, fuel).map_err(hierarchy_failure)?;
            Ok(if as_json {
                json!({ "alpha": a, "n": n, "value": value }).to_string()
            } else {
                value.to_string()
            })
        }
        Command::Dickson { op } => {
            let DicksonOp::Rank {
                seq,
                dim,
                json: as_json,
            } = op;
            let monomials = seq
                .split(';')
                .map(|part| part.trim().parse::<Monomial>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| fail(json!({ "kind": "Parse", "message": e.to_string() })))?;
            let ranks = rank_bad_sequence(&monomials, dim).map_err(dickson_failure)?;
            Ok(if as_json {
                json!({ "ranks": ranks }).to_string()
            } else {
                ranks
                    .iter()
                    .map(|r| r.to_string())
                    .collect::<Vec<_>>()
                    .join("\n")
            })
        }
        Command::Uniformize {
            theta,
            x_limit,
            n_limit,
        } => {
            let theta = parse_formula(&theta).map_err(|e| {
                fail(json!({
                    "kind": "Parse",
                    "position": e.position,
                    "message": e.message,
                }))
            })?;
            let report = check_uniformization(&theta, x_limit, n_limit).map_err(|e| {
                let kind = match &e {
                    UniformizeError::NotSigma => "NotSigma",
                    UniformizeError::VariableNotFree(_) => "VariableNotFree",
                    UniformizeError::NotDelta0 => "NotDelta0",
                    UniformizeError::StrayVariable(_) => "StrayVariable",
                    UniformizeError::InsufficientBound => "InsufficientBound",
                    UniformizeError::Eval(_) => "Eval",
                };
                fail(json!({ "kind": kind, "message": e.to_string() }))
            })?;
            Ok(serde_json::to_string(&report).expect("report serializes"))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(output) => {
            println!("{output}");
            ExitCode::SUCCESS
        }
        Err(envelope) => {
            println!("{envelope}");
            ExitCode::from(1)
        }
    }
}
