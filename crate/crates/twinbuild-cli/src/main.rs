//! `twinbuild`: command-line access to the twinbuild library.
//!
//! Every successful run prints one JSON object with the tool version, the
//! command, the seed and bounds used, and the result. Exit codes: 0 success,
//! 2 precondition violation or usage error, 1 internal error.

mod input;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use twinbuild::bounded::{self, LeviRootPartition, MaxBoundedVerdict};
use twinbuild::coxeter::Element;
use twinbuild::diagram::{self, Condition};
use twinbuild::thinb::{self, Sign};
use twinbuild::twintree::{self, Field, ThickChamber};
use twinbuild::{Error, Exec, Result};

#[derive(Parser)]
#[command(name = "twinbuild", version, about = "Coxeter groups, twin buildings and the twin tree of SL2")]
struct Cli {
    /// Print only the result, as plain text where possible.
    #[arg(long, global = true)]
    plain: bool,
    /// Run enumerations on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Word problem and parabolic subgroups.
    #[command(subcommand)]
    Coxeter(CoxeterCmd),
    /// The thin twin building Σ(W,S).
    #[command(subcommand)]
    Thinb(ThinbCmd),
    /// Spherical subsets and diagram conditions.
    #[command(subcommand)]
    Diagram(DiagramCmd),
    /// Types of maximal bounded subgroups.
    #[command(subcommand)]
    Bounded(BoundedCmd),
    /// The twin tree of SL2 over GF(q)[t,t^-1].
    #[command(subcommand)]
    Twintree(TwintreeCmd),
}

#[derive(Args)]
struct MatrixArg {
    /// Coxeter matrix: JSON file, inline JSON or a name (A3, B2, I2(5), affA2).
    #[arg(long)]
    matrix: String,
}

#[derive(Subcommand)]
enum CoxeterCmd {
    Reduce {
        #[command(flatten)]
        m: MatrixArg,
        #[arg(long)]
        word: String,
    },
    Spherical {
        #[command(flatten)]
        m: MatrixArg,
        #[arg(long)]
        subset: String,
    },
    W0 {
        #[command(flatten)]
        m: MatrixArg,
        #[arg(long)]
        subset: String,
    },
    Dcmin {
        #[command(flatten)]
        m: MatrixArg,
        #[arg(long)]
        left: String,
        #[arg(long)]
        word: String,
        #[arg(long)]
        right: String,
    },
    Dcmax {
        #[command(flatten)]
        m: MatrixArg,
        #[arg(long)]
        left: String,
        #[arg(long)]
        word: String,
        #[arg(long)]
        right: String,
    },
    Reflections {
        #[command(flatten)]
        m: MatrixArg,
        #[arg(long)]
        max_length: usize,
    },
}

#[derive(Subcommand)]
enum ThinbCmd {
    /// δ(x,y) or δ*(x,y) for chambers like "1 2:+".
    Dist {
        #[command(flatten)]
        m: MatrixArg,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Projection onto a residue of a chamber or of another residue.
    Proj {
        #[command(flatten)]
        m: MatrixArg,
        /// Target residue, e.g. "e:J{1}:+".
        #[arg(long)]
        onto: String,
        #[arg(long, conflicts_with = "residue", required_unless_present = "residue")]
        chamber: Option<String>,
        #[arg(long)]
        residue: Option<String>,
    },
    Parallel {
        #[command(flatten)]
        m: MatrixArg,
        #[arg(long)]
        r: String,
        #[arg(long)]
        q: String,
    },
    Chain {
        #[command(flatten)]
        m: MatrixArg,
        #[arg(long)]
        r: String,
        #[arg(long)]
        q: String,
    },
    /// The twin root containing x but not y (chambers at codistance in S).
    Root {
        #[command(flatten)]
        m: MatrixArg,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    Interval {
        #[command(flatten)]
        m: MatrixArg,
        #[arg(long)]
        phi: String,
        #[arg(long)]
        psi: String,
        #[arg(long, default_value_t = 7)]
        max_length: usize,
        #[arg(long, default_value_t = thinb::DEFAULT_RADIUS)]
        radius: usize,
    },
}

#[derive(Subcommand)]
enum DiagramCmd {
    Spherical {
        #[command(flatten)]
        m: MatrixArg,
    },
    Check {
        #[command(flatten)]
        m: MatrixArg,
        /// R1, R2, R2', R3, R3' or R3''.
        #[arg(long)]
        condition: String,
    },
    /// Audit one matrix, or `--random N` seeded random matrices.
    Audit {
        #[arg(long, required_unless_present = "random")]
        matrix: Option<String>,
        #[arg(long, requires = "seed")]
        random: Option<usize>,
        #[arg(long, default_value_t = 6)]
        max_rank: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Subcommand)]
enum BoundedCmd {
    Classify {
        #[command(flatten)]
        m: MatrixArg,
        #[arg(long)]
        rplus: String,
        #[arg(long)]
        rminus: String,
    },
    Enumerate {
        #[command(flatten)]
        m: MatrixArg,
        #[arg(long)]
        bound: usize,
    },
    Case2 {
        #[command(flatten)]
        m: MatrixArg,
        #[arg(long)]
        bound: usize,
    },
    Levi {
        #[command(flatten)]
        m: MatrixArg,
        #[arg(long)]
        rplus: String,
        #[arg(long)]
        rminus: String,
        #[arg(long, default_value_t = 12)]
        bound: usize,
    },
}

#[derive(Subcommand)]
enum TwintreeCmd {
    Bruhat {
        #[arg(long)]
        q: Option<u32>,
        /// Laurent matrix JSON or file.
        #[arg(long)]
        g: String,
        #[arg(long, default_value = "+")]
        sign: String,
    },
    Birkhoff {
        #[arg(long)]
        q: Option<u32>,
        #[arg(long)]
        g: String,
    },
    /// δ*(gB_x, hB_y) for chambers of opposite signs.
    Codist {
        #[arg(long)]
        q: Option<u32>,
        #[arg(long)]
        x: String,
        #[arg(long, default_value = "+")]
        xsign: String,
        #[arg(long)]
        y: String,
    },
    /// U(xB+, yB-).
    Ugroup {
        #[arg(long)]
        q: Option<u32>,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        /// Include every element in the output.
        #[arg(long)]
        list: bool,
    },
    Torusfix {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        radius: usize,
        #[arg(long, default_value = "+")]
        sign: String,
        /// Permit q < 4; the result is reported, not asserted.
        #[arg(long)]
        allow_small: bool,
    },
    Pcheck {
        #[arg(long)]
        q: u32,
    },
    Axioms {
        #[arg(long)]
        q: u32,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Stabilized residues of the group generated by `--gen` matrices.
    Stabsearch {
        #[arg(long)]
        q: u32,
        #[arg(long = "gen")]
        gens: Vec<String>,
        #[arg(long, default_value_t = 4)]
        radius: usize,
    },
}

struct Report {
    command: &'static str,
    seed: Option<u64>,
    bounds: Value,
    result: Value,
}

fn report(command: &'static str, bounds: Value, result: Value) -> Report {
    Report { command, seed: None, bounds, result }
}

fn strings<T: ToString>(xs: &[T]) -> Value {
    xs.iter().map(|x| x.to_string()).collect()
}

fn verdict_json(v: &MaxBoundedVerdict) -> Value {
    json!({
        "case": v.case,
        "refined": [v.refined.0.to_string(), v.refined.1.to_string()],
        "envelopes": v.envelopes.as_ref().map(|(a, b)| vec![a.to_string(), b.to_string()]),
    })
}

fn levi_json(p: &LeviRootPartition) -> Value {
    json!({
        "levi": strings(&p.levi),
        "utilde_plus": strings(&p.utilde_plus),
        "utilde_minus": strings(&p.utilde_minus),
        "u_core": strings(&p.u_core),
        "witness": [p.witness.0.to_string(), p.witness.1.to_string()],
    })
}

fn element_json(x: &Element) -> Value {
    Value::String(x.to_string())
}

fn coxeter(cmd: CoxeterCmd) -> Result<Report> {
    Ok(match cmd {
        CoxeterCmd::Reduce { m, word } => {
            let g = input::group(&m.matrix)?;
            report("coxeter reduce", json!({}), element_json(&input::element(&g, &word)?))
        }
        CoxeterCmd::Spherical { m, subset } => {
            let g = input::group(&m.matrix)?;
            report("coxeter spherical", json!({}), json!(g.is_spherical(input::subset(&g, &subset)?)))
        }
        CoxeterCmd::W0 { m, subset } => {
            let g = input::group(&m.matrix)?;
            report("coxeter w0", json!({}), element_json(&g.longest_element(input::subset(&g, &subset)?)?))
        }
        CoxeterCmd::Dcmin { m, left, word, right } => {
            let g = input::group(&m.matrix)?;
            let (j, w, k) = (input::subset(&g, &left)?, input::element(&g, &word)?, input::subset(&g, &right)?);
            report("coxeter dcmin", json!({}), element_json(&g.dcmin(j, &w, k)))
        }
        CoxeterCmd::Dcmax { m, left, word, right } => {
            let g = input::group(&m.matrix)?;
            let (j, w, k) = (input::subset(&g, &left)?, input::element(&g, &word)?, input::subset(&g, &right)?);
            report("coxeter dcmax", json!({}), element_json(&g.dcmax(j, &w, k)?))
        }
        CoxeterCmd::Reflections { m, max_length } => {
            let g = input::group(&m.matrix)?;
            report("coxeter reflections", json!({ "max_length": max_length }), strings(&g.reflections_up_to(max_length)))
        }
    })
}

fn thinb_cmd(cmd: ThinbCmd) -> Result<Report> {
    Ok(match cmd {
        ThinbCmd::Dist { m, x, y } => {
            let g = input::group(&m.matrix)?;
            let d = thinb::wdist(&g, &input::chamber(&g, &x)?, &input::chamber(&g, &y)?)?;
            report("thinb dist", json!({}), element_json(&d))
        }
        ThinbCmd::Proj { m, onto, chamber, residue } => {
            let g = input::group(&m.matrix)?;
            let r = input::residue(&g, &onto)?;
            let out = match (chamber, residue) {
                (Some(c), _) => thinb::project_chamber(&g, &r, &input::chamber(&g, &c)?)?.to_string(),
                (None, Some(q)) => thinb::project_residue(&g, &r, &input::residue(&g, &q)?)?.to_string(),
                (None, None) => return Err(Error::Parse("need --chamber or --residue".into())),
            };
            report("thinb proj", json!({}), Value::String(out))
        }
        ThinbCmd::Parallel { m, r, q } => {
            let g = input::group(&m.matrix)?;
            let p = thinb::is_parallel(&g, &input::residue(&g, &r)?, &input::residue(&g, &q)?)?;
            report("thinb parallel", json!({}), json!(p))
        }
        ThinbCmd::Chain { m, r, q } => {
            let g = input::group(&m.matrix)?;
            let (r, q) = (input::residue(&g, &r)?, input::residue(&g, &q)?);
            let c = thinb::parallelism_chain(&g, &r, &q)?;
            let verified = thinb::verify_chain(&g, &c, &r, &q)?;
            report(
                "thinb chain",
                json!({}),
                json!({ "residues": strings(&c.residues), "envelopes": strings(&c.envelopes), "verified": verified }),
            )
        }
        ThinbCmd::Root { m, x, y } => {
            let g = input::group(&m.matrix)?;
            let r = thinb::twin_root_from(&g, &input::chamber(&g, &x)?, &input::chamber(&g, &y)?)?;
            report("thinb root", json!({}), Value::String(r.to_string()))
        }
        ThinbCmd::Interval { m, phi, psi, max_length, radius } => {
            let g = input::group(&m.matrix)?;
            let (a, b) = (input::twin_root(&g, &phi)?, input::twin_root(&g, &psi)?);
            let v = thinb::interval(&g, &a, &b, max_length, radius)?;
            report("thinb interval", json!({ "max_length": max_length, "radius": radius }), strings(&v))
        }
    })
}

fn diagram_cmd(cmd: DiagramCmd, exec: Exec) -> Result<Report> {
    Ok(match cmd {
        DiagramCmd::Spherical { m } => {
            let cm = input::matrix(&m.matrix)?;
            let lat = diagram::spherical_subsets(&cm)?;
            report(
                "diagram spherical",
                json!({}),
                json!({ "spherical": strings(&lat.spherical), "maximal": strings(&lat.maximal) }),
            )
        }
        DiagramCmd::Check { m, condition } => {
            let cm = input::matrix(&m.matrix)?;
            let c: Condition = condition.parse()?;
            report("diagram check", json!({}), json!(diagram::check_condition(&cm, c)?))
        }
        DiagramCmd::Audit { matrix, random, max_rank, seed } => {
            let (ms, bounds) = match (matrix, random) {
                (_, Some(n)) => {
                    let seed = seed.ok_or_else(|| Error::Parse("--random needs --seed".into()))?;
                    (diagram::random_matrices(n, max_rank, seed), json!({ "count": n, "max_rank": max_rank }))
                }
                (Some(m), None) => (vec![input::matrix(&m)?], json!({})),
                (None, None) => return Err(Error::Parse("need --matrix or --random".into())),
            };
            let reports = diagram::audit_batch(&ms, exec)?;
            let rows: Vec<Value> = ms
                .iter()
                .zip(&reports)
                .map(|(cm, r)| {
                    json!({ "matrix": cm.to_json(), "R2": r.r2, "R2'": r.r2_prime, "R3": r.r3, "R3'": r.r3_prime,
                            "R3''": r.r3_double_prime, "pass": r.pass })
                })
                .collect();
            let pass = reports.iter().all(|r| r.pass);
            Report { command: "diagram audit", seed, bounds, result: json!({ "pass": pass, "reports": rows }) }
        }
    })
}

fn bounded_cmd(cmd: BoundedCmd, exec: Exec) -> Result<Report> {
    Ok(match cmd {
        BoundedCmd::Classify { m, rplus, rminus } => {
            let g = input::group(&m.matrix)?;
            let v = bounded::classify_pair(&g, &input::residue(&g, &rplus)?, &input::residue(&g, &rminus)?)?;
            report("bounded classify", json!({}), verdict_json(&v))
        }
        BoundedCmd::Enumerate { m, bound } => {
            let g = input::group(&m.matrix)?;
            let e = bounded::enumerate_types(&g, bound, exec)?;
            let vs: Vec<Value> = e.verdicts.iter().map(verdict_json).collect();
            report("bounded enumerate", json!({ "bound": bound }), json!({ "pairs_examined": e.pairs_examined, "verdicts": vs }))
        }
        BoundedCmd::Case2 { m, bound } => {
            let g = input::group(&m.matrix)?;
            report("bounded case2", json!({ "bound": bound }), json!(bounded::case_ii_search(&g, bound, exec)?))
        }
        BoundedCmd::Levi { m, rplus, rminus, bound } => {
            let g = input::group(&m.matrix)?;
            let p = bounded::levi_root_partition(&g, &input::residue(&g, &rplus)?, &input::residue(&g, &rminus)?, bound)?;
            report("bounded levi", json!({ "bound": bound }), levi_json(&p))
        }
    })
}

fn twintree_cmd(cmd: TwintreeCmd) -> Result<Report> {
    Ok(match cmd {
        TwintreeCmd::Bruhat { q, g, sign } => {
            let d = twintree::bruhat(&input::laurent(&g, q)?, input::sign(&sign)?)?;
            report("twintree bruhat", json!({}), d.to_json())
        }
        TwintreeCmd::Birkhoff { q, g } => {
            report("twintree birkhoff", json!({}), twintree::birkhoff(&input::laurent(&g, q)?)?.to_json())
        }
        TwintreeCmd::Codist { q, x, xsign, y } => {
            let sx = input::sign(&xsign)?;
            let x = ThickChamber::new(input::laurent(&x, q)?, sx);
            let y = ThickChamber::new(input::laurent(&y, q)?, sx.flip());
            report("twintree codist", json!({}), Value::String(twintree::codist(&x, &y)?.to_string()))
        }
        TwintreeCmd::Ugroup { q, x, y, list } => {
            let x = ThickChamber::new(input::laurent(&x, q)?, Sign::Plus);
            let y = ThickChamber::new(input::laurent(&y, q)?, Sign::Minus);
            let u = twintree::unipotent_group(&x, &y)?;
            report("twintree ugroup", json!({ "max_length": twintree::MAX_UNIPOTENT_LENGTH }), u.to_json(list))
        }
        TwintreeCmd::Torusfix { q, radius, sign, allow_small } => {
            let v = twintree::torus_fixed_chambers(q, radius, input::sign(&sign)?, allow_small)?;
            let standard = v.iter().map(|z| z.in_standard_apartment()).collect::<Result<Vec<_>>>()?;
            report(
                "twintree torusfix",
                json!({ "radius": radius }),
                json!({
                    "count": v.len(),
                    "all_standard": standard.iter().all(|&b| b),
                    "chambers": v.iter().map(ThickChamber::to_json).collect::<Vec<_>>(),
                }),
            )
        }
        TwintreeCmd::Pcheck { q } => {
            let r = twintree::check_p_conditions(q)?;
            report("twintree pcheck", json!({}), serde_json::to_value(r).map_err(|e| Error::Internal(e.to_string()))?)
        }
        TwintreeCmd::Axioms { q, samples, seed } => {
            let r = twintree::check_twin_axioms(q, samples, seed)?;
            Report {
                command: "twintree axioms",
                seed: Some(seed),
                bounds: json!({ "samples": samples, "radius": twintree::AXIOM_RADIUS }),
                result: serde_json::to_value(r).map_err(|e| Error::Internal(e.to_string()))?,
            }
        }
        TwintreeCmd::Stabsearch { q, gens, radius } => {
            let f = Field::get(q)?;
            let gens = gens.iter().map(|g| input::laurent(g, Some(q))).collect::<Result<Vec<_>>>()?;
            let (rp, rm) = twintree::finite_subgroup_residues(f, &gens, radius)?;
            report(
                "twintree stabsearch",
                json!({ "radius": radius, "group_cutoff": twintree::GROUP_CUTOFF }),
                json!({ "plus": rp.to_json(), "minus": rm.to_json() }),
            )
        }
    })
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) if a.iter().all(Value::is_string) => {
            a.iter().filter_map(Value::as_str).collect::<Vec<_>>().join("\n")
        }
        other => other.to_string(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let exec = if cli.sequential { Exec::Sequential } else { Exec::default() };
    let out = match cli.command {
        Command::Coxeter(c) => coxeter(c),
        Command::Thinb(c) => thinb_cmd(c),
        Command::Diagram(c) => diagram_cmd(c, exec),
        Command::Bounded(c) => bounded_cmd(c, exec),
        Command::Twintree(c) => twintree_cmd(c),
    };
    match out {
        Ok(r) => {
            let text = if cli.plain {
                plain(&r.result)
            } else {
                let body = json!({
                    "tool": "twinbuild",
                    "version": env!("CARGO_PKG_VERSION"),
                    "command": r.command,
                    "seed": r.seed,
                    "bounds": r.bounds,
                    "result": r.result,
                });
                body.to_string()
            };
            // A closed pipe (e.g. `| head`) is not an error.
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("twinbuild: {e}");
            ExitCode::from(if e.is_precondition() { 2 } else { 1 })
        }
    }
}

