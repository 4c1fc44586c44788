//! `caloop`: command-line access to the free loop, its identity catalog and
//! its finite quotients.
//!
//! Exit status: 0 on success, 1 when a verification fails, 2 on usage,
//! parse or input errors.

use std::path::PathBuf;
use std::process::ExitCode;

use caloop::calculus::{inner_r, Witness};
use caloop::parser::{self, format_canonical};
use caloop::quotient::{self, Budget, CheckLevel, TableFormat};
use caloop::symbolic::{self, IdentityReport};
use caloop::{associator, inner_l, inner_t, inverse8, is_member, mul8, witness_noncentral, Elem8, Int, NucleusKind};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "caloop", version, about = "Exact arithmetic in the free commutative automorphic loop of class 3")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Number of random trials for sampled checks.
    #[arg(long, global = true, default_value_t = 10_000)]
    trials: u64,
    /// Include elapsed times (makes output run-dependent).
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a loop word, e.g. "assoc(x,x,y)" or "(x*y)*x".
    Eval { expr: String },
    /// Product of two elements.
    Mul { a: String, b: String },
    /// Inverse of an element.
    Inv { a: String },
    /// The associator (a,b,c).
    Assoc { a: String, b: String, c: String },
    /// An inner mapping: L_{a,b}(c), R_{a,b}(c), or T_a(c) (two arguments).
    Inner {
        #[arg(long, value_enum, default_value_t = InnerMap::L)]
        map: InnerMap,
        #[arg(num_args = 2..=3, required = true)]
        args: Vec<String>,
    },
    /// Membership in a nucleus, the center or the associator subloop.
    Member {
        #[arg(long)]
        kind: NucleusKind,
        a: String,
    },
    /// Prove identities of the catalog symbolically.
    Verify {
        #[arg(long)]
        identity: Option<String>,
        /// List the catalog and exit.
        #[arg(long)]
        list: bool,
    },
    /// Export the Cayley table of (Z/m)^8.
    Table {
        #[arg(long = "mod")]
        modulus: Int,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value = "csv")]
        format: TableFormat,
    },
    /// Brute-force checks in (Z/m)^8.
    CheckQuotient {
        #[arg(long = "mod")]
        modulus: Int,
        #[arg(long)]
        level: CheckLevel,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum InnerMap {
    L,
    R,
    T,
}

enum Failure {
    Usage(String),
    Verification(Vec<String>),
}

type Outcome = Result<Value, Failure>;

fn usage<E: ToString>(e: E) -> Failure {
    Failure::Usage(e.to_string())
}

/// Accepts a coordinate list `[i1,...,i8]` or a loop word.
fn element(text: &str) -> Result<Elem8, Failure> {
    let t = text.trim();
    if let Some(inner) = t.strip_prefix('[') {
        let inner = inner
            .strip_suffix(']')
            .ok_or_else(|| usage(format!("unterminated coordinate list {t:?}")))?;
        let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
        if parts.len() != 8 {
            return Err(usage(format!("expected 8 coordinates, found {} in {t:?}", parts.len())));
        }
        let mut coords = Vec::with_capacity(8);
        for p in parts {
            coords.push(p.parse::<Int>().map_err(|_| usage(format!("bad coordinate {p:?} in {t:?}")))?);
        }
        Ok(Elem8::new(coords.try_into().unwrap()))
    } else {
        parser::eval_str(t).map_err(usage)
    }
}

fn coords_text(e: &Elem8) -> String {
    let parts: Vec<String> = e.coords.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(","))
}

fn elem_json(e: &Elem8) -> Value {
    let mut v = serde_json::to_value(e).expect("element serialises");
    v["canonical"] = Value::String(format_canonical(e));
    v
}

fn elem_text(e: &Elem8) -> String {
    format!("{}\n{}", format_canonical(e), coords_text(e))
}

struct Ctx {
    json: bool,
    seed: u64,
    trials: u64,
    timings: bool,
    out: Vec<String>,
}

impl Ctx {
    fn say(&mut self, line: impl Into<String>) {
        self.out.push(line.into());
    }

    fn element_result(&mut self, e: &Elem8) -> Outcome {
        if !self.json {
            self.say(elem_text(e));
        }
        Ok(elem_json(e))
    }
}

fn witness_json(w: &Witness) -> Value {
    json!({
        "slot": w.slot,
        "a": elem_json(&w.a),
        "b": elem_json(&w.b),
        "associator": elem_json(&w.associator),
    })
}

fn report_line(r: &IdentityReport, timings: bool) -> String {
    let mut line = format!(
        "{} {}: {} variables, {} equations, max degree {}, max terms {}",
        if r.pass { "PASS" } else { "FAIL" },
        r.name,
        r.variables,
        r.equations,
        r.max_degree,
        r.max_terms
    );
    if !r.pass {
        line.push_str(&format!(", residual terms {:?}", r.residual_term_counts));
    }
    if let Some(e) = &r.error {
        line.push_str(&format!(" ({e})"));
    }
    if timings {
        line.push_str(&format!(" [{} ms]", r.millis));
    }
    line
}

fn run(cli: Cli, ctx: &mut Ctx) -> Outcome {
    match cli.command {
        Command::Eval { expr } => {
            let (e, warnings) = parser::parse_with_warnings(&expr).map_err(usage)?;
            let value = parser::eval(&e);
            for w in &warnings {
                eprintln!("{w}");
            }
            let mut out = ctx.element_result(&value)?;
            if !warnings.is_empty() {
                out["warnings"] = warnings.iter().map(|w| Value::String(w.to_string())).collect();
            }
            Ok(out)
        }
        Command::Mul { a, b } => ctx.element_result(&mul8(&element(&a)?, &element(&b)?)),
        Command::Inv { a } => ctx.element_result(&inverse8(&element(&a)?)),
        Command::Assoc { a, b, c } => {
            ctx.element_result(&associator(&element(&a)?, &element(&b)?, &element(&c)?))
        }
        Command::Inner { map, args } => {
            let elems = args.iter().map(|s| element(s)).collect::<Result<Vec<_>, _>>()?;
            let value = match (map, elems.as_slice()) {
                (InnerMap::L, [a, b, c]) => inner_l(a, b, c),
                (InnerMap::R, [a, b, c]) => inner_r(a, b, c),
                (InnerMap::T, [a, c]) => inner_t(a, c),
                (InnerMap::T, _) => return Err(usage("T_a(c) takes two elements: a c")),
                _ => return Err(usage("L and R take three elements: a b c")),
            };
            ctx.element_result(&value)
        }
        Command::Member { kind, a } => {
            let z = element(&a)?;
            let member = is_member(&z, kind);
            let witness = witness_noncentral(kind, &z);
            if !ctx.json {
                ctx.say(member.to_string());
                if let Some(w) = &witness {
                    let (x, y, zs) = (format_canonical(&w.a), format_canonical(&w.b), format_canonical(&z));
                    let shown = match w.slot {
                        caloop::calculus::Slot::First => format!("({zs}, {x}, {y})"),
                        caloop::calculus::Slot::Middle => format!("({x}, {zs}, {y})"),
                        caloop::calculus::Slot::Last => format!("({x}, {y}, {zs})"),
                    };
                    ctx.say(format!(
                        "witness: {shown} = {} {}",
                        format_canonical(&w.associator),
                        coords_text(&w.associator)
                    ));
                }
            }
            let mut out = json!({ "kind": kind, "element": elem_json(&z), "member": member });
            if let Some(w) = &witness {
                out["witness"] = witness_json(w);
            }
            Ok(out)
        }
        Command::Verify { identity, list } => {
            if list {
                let names = symbolic::catalog::names();
                if !ctx.json {
                    for n in &names {
                        ctx.say(*n);
                    }
                }
                return Ok(json!(names));
            }
            let reports = match identity {
                Some(name) => vec![symbolic::verify_identity(&name).map_err(usage)?],
                None => symbolic::verify_all(),
            };
            let reports: Vec<IdentityReport> =
                reports.into_iter().map(|r| if ctx.timings { r } else { r.without_timing() }).collect();
            if !ctx.json {
                for r in &reports {
                    let line = report_line(r, ctx.timings);
                    ctx.say(line);
                }
            }
            let failing: Vec<String> = reports.iter().filter(|r| !r.pass).map(|r| r.name.clone()).collect();
            let value = serde_json::to_value(&reports).expect("reports serialise");
            if failing.is_empty() {
                Ok(value)
            } else {
                if ctx.json {
                    ctx.say(serde_json::to_string_pretty(&value).unwrap());
                }
                Err(Failure::Verification(failing))
            }
        }
        Command::Table { modulus, out, format } => {
            let table = quotient::export_table(&modulus, format, &out, &Budget::default()).map_err(usage)?;
            if !ctx.json {
                ctx.say(format!(
                    "wrote {}x{} table for m={} to {}",
                    table.order(),
                    table.order(),
                    table.modulus(),
                    out.display()
                ));
            }
            Ok(json!({
                "modulus": table.modulus(),
                "order": table.order(),
                "format": format,
                "path": out.display().to_string(),
            }))
        }
        Command::CheckQuotient { modulus, level } => {
            let mut report =
                quotient::exhaustive_check(&modulus, level, &Budget::default(), ctx.trials, ctx.seed)
                    .map_err(usage)?;
            if !ctx.timings {
                report.millis = 0;
            }
            if !ctx.json {
                let mut line = format!(
                    "{} m={} order={} level={} checked={}",
                    if report.pass { "PASS" } else { "FAIL" },
                    report.modulus,
                    report.order,
                    level.name(),
                    report.checked
                );
                if let Some(c) = &report.counterexample {
                    line.push_str(&format!(": {c}"));
                }
                if ctx.timings {
                    line.push_str(&format!(" [{} ms]", report.millis));
                }
                ctx.say(line);
            }
            let value = serde_json::to_value(&report).expect("report serialises");
            if report.pass {
                Ok(value)
            } else {
                if ctx.json {
                    ctx.say(serde_json::to_string_pretty(&value).unwrap());
                }
                Err(Failure::Verification(vec![format!("check-quotient m={} {}", report.modulus, level.name())]))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut ctx = Ctx { json: cli.json, seed: cli.seed, trials: cli.trials, timings: cli.timings, out: Vec::new() };
    let result = run(cli, &mut ctx);
    let code = match result {
        Ok(value) => {
            if ctx.json {
                ctx.say(serde_json::to_string_pretty(&value).unwrap());
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Verification(names)) => {
            eprintln!("verification failed: {}", names.join(", "));
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    };
    for line in &ctx.out {
        println!("{line}");
    }
    code
}
