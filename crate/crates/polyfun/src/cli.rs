//! Argument parsing and dispatch for the `polyfun` binary.
//!
//! Exit codes: 0 success, 1 domain error or failed check, 2 usage or parse
//! error, 3 inconclusive (a computation budget ran out).

use std::ffi::OsString;

use clap::{Parser, Subcommand, ValueEnum};
use polyfun_core::functor::{
    compare_order, decompose, degree_dims, induced_labeled, shift_maps, CoordinateSystem, FunctorExpr,
};
use polyfun_core::hasse::{directional_data, hasse_derivative, taylor_expand, DirectionSubspace, DirectionalData};
use polyfun_core::matrix::Matrix;
use polyfun_core::proofstep::{
    delta_degree, run_proof_step, run_running_example, PointSampler, RankOneSampler, ShiftedFrame, StepInput,
    StepReport, VarietyPresentation,
};
use polyfun_core::{Error, Field, GradedPoly, RingRef, Scalar};
use serde_json::{json, Value};

use crate::report::{step_json, step_text};
use crate::text::{
    parse_field, parse_functor, parse_matrix, parse_name_list, parse_poly, parse_vector, ring_for, ParseError,
};

#[derive(Parser, Debug)]
#[command(
    name = "polyfun",
    version,
    about = "Exact polynomial-functor algebra and proof-step certificates"
)]
pub struct Cli {
    /// `q` or `fp:<prime>`.
    #[arg(long, global = true, default_value = "q")]
    field: String,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for every sampled validation.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SamplerKind {
    None,
    RankOne,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// dim P(K^n)
    Dim {
        #[arg(long)]
        functor: String,
        #[arg(long)]
        n: usize,
    },
    /// Homogeneous summands of a functor.
    Decompose {
        #[arg(long)]
        functor: String,
        /// Also report summand dimensions at this n.
        #[arg(long)]
        n: Option<usize>,
    },
    /// P(φ) in standard bases; φ as rows `a,b;c,d`.
    Induce {
        #[arg(long)]
        functor: String,
        #[arg(long)]
        phi: String,
    },
    /// The maps α = P(ι_V), β = P(π_V) and their checks.
    ShiftCheck {
        #[arg(long)]
        functor: String,
        #[arg(long)]
        u: usize,
        #[arg(long)]
        n: usize,
    },
    /// Dimension-sequence comparison of two functors.
    Compare {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// r-th Hasse derivative in direction `--dir`.
    Hasse {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        vars: Option<String>,
        #[arg(long)]
        w_vars: String,
        #[arg(long)]
        dir: String,
        #[arg(long)]
        order: u64,
    },
    /// f(w' + t w) with one copy of each W-variable.
    Taylor {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        vars: Option<String>,
        #[arg(long)]
        w_vars: String,
        #[arg(long, default_value = "t")]
        t: String,
    },
    /// Directional derivative ∂_w f.
    Dderiv {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        vars: Option<String>,
        #[arg(long)]
        w_vars: String,
        #[arg(long)]
        dir: String,
    },
    /// Generator-relative δ_X for a variety on P(K^n).
    Delta {
        #[arg(long)]
        functor: String,
        #[arg(long)]
        n: usize,
        /// Index of the designated top-degree summand R.
        #[arg(long)]
        r: usize,
        #[arg(long = "gen")]
        generators: Vec<String>,
        #[arg(long = "q-gen")]
        q_generators: Vec<String>,
    },
    /// One proof step for a variety presented on P(K^u).
    Proofstep {
        #[arg(long)]
        functor: String,
        #[arg(long)]
        u: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        poly: String,
        #[arg(long)]
        r: usize,
        /// Coordinates of r0 on R; scanned when absent.
        #[arg(long)]
        r0: Option<String>,
        /// Generators of X(K^u); defaults to the polynomial itself.
        #[arg(long = "gen")]
        generators: Vec<String>,
        #[arg(long = "q-gen")]
        q_generators: Vec<String>,
        /// Generators of X(K^{u+n}) in standard coordinates.
        #[arg(long)]
        ideal: Vec<String>,
        #[arg(long, value_enum, default_value_t = SamplerKind::None)]
        sampler: SamplerKind,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// The rank-one tensor example stepped to V = K^n.
    ExampleRank1 {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Parse(ParseError),
    Domain(Error),
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Parse(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

/// What a subcommand produced: both renderings and an exit code.
struct Outcome {
    text: String,
    json: Value,
    code: i32,
}

impl Outcome {
    fn ok(text: impl Into<String>, json: Value) -> Self {
        Outcome {
            text: text.into(),
            json,
            code: 0,
        }
    }
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Run
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let msg = e.render().to_string();
            return if code == 0 {
                Run {
                    code,
                    stdout: msg,
                    stderr: String::new(),
                }
            } else {
                Run {
                    code: 2,
                    stdout: String::new(),
                    stderr: msg,
                }
            };
        }
    };
    match dispatch(&cli) {
        Ok(out) => {
            let mut stdout = match cli.format {
                Format::Text => out.text,
                Format::Json => serde_json::to_string_pretty(&out.json).expect("serializable"),
            };
            if !stdout.ends_with('\n') {
                stdout.push('\n');
            }
            Run {
                code: out.code,
                stdout,
                stderr: String::new(),
            }
        }
        Err(f) => {
            let (code, msg) = match f {
                Failure::Usage(m) => (2, format!("error: {m}")),
                Failure::Parse(e) => (2, format!("error: {e}")),
                Failure::Domain(e) if e.is_inconclusive() => (3, format!("inconclusive: {e}")),
                Failure::Domain(e) => (1, format!("error: {e}")),
            };
            Run {
                code,
                stdout: String::new(),
                stderr: msg + "\n",
            }
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome, Failure> {
    let field = parse_field(&cli.field)?;
    match &cli.command {
        Command::Dim { functor, n } => {
            let p = parse_functor(functor)?;
            let d = p.dim(*n).to_string();
            Ok(Outcome::ok(
                d.clone(),
                json!({"functor": p.to_string(), "n": n, "dim": number(&d)}),
            ))
        }
        Command::Decompose { functor, n } => cmd_decompose(functor, *n),
        Command::Induce { functor, phi } => cmd_induce(functor, phi, field),
        Command::ShiftCheck { functor, u, n } => cmd_shift_check(functor, *u, *n, field),
        Command::Compare { left, right } => {
            let p = parse_functor(left)?;
            let q = parse_functor(right)?;
            let rel = compare_order(&p, &q)?;
            let d = p.degree().max(q.degree());
            let big_n = d.max(1) as usize;
            let dims = |f: &FunctorExpr| -> Result<Vec<String>, Failure> {
                Ok(degree_dims(f, d, big_n)?.iter().map(|x| x.to_string()).collect())
            };
            let (dl, dr) = (dims(&p)?, dims(&q)?);
            Ok(Outcome::ok(
                rel.to_string(),
                json!({"left": p.to_string(), "right": q.to_string(), "n": big_n,
                       "left_dims": dl, "right_dims": dr, "relation": rel.to_string()}),
            ))
        }
        Command::Hasse {
            poly,
            vars,
            w_vars,
            dir,
            order,
        } => {
            let (f, w, space) = directional_input(poly, vars.as_deref(), w_vars, Some(dir), field)?;
            let d = hasse_derivative(&f, &w.unwrap_or_default(), *order, &space)?;
            Ok(Outcome::ok(
                d.to_string(),
                json!({"poly": f.to_string(), "order": order, "derivative": d.to_string()}),
            ))
        }
        Command::Taylor { poly, vars, w_vars, t } => {
            let (f, _, space) = directional_input(poly, vars.as_deref(), w_vars, None, field)?;
            let tay = taylor_expand(&f, &space, t)?;
            let mut text = format!("{}\n", tay.poly);
            let mut coeffs = serde_json::Map::new();
            for (k, c) in tay.coefficients() {
                text.push_str(&format!("{t}^{k}: {c}\n"));
                coeffs.insert(k.to_string(), Value::String(c.to_string()));
            }
            Ok(Outcome::ok(
                text,
                json!({"poly": f.to_string(), "expansion": tay.poly.to_string(), "coefficients": coeffs}),
            ))
        }
        Command::Dderiv {
            poly,
            vars,
            w_vars,
            dir,
        } => {
            let (f, w, space) = directional_input(poly, vars.as_deref(), w_vars, Some(dir), field)?;
            let w = w.unwrap_or_default();
            match directional_data(&f, &space)? {
                DirectionalData::Independent => Ok(Outcome::ok(
                    "0",
                    json!({"poly": f.to_string(), "status": "independent", "derivative": "0"}),
                )),
                DirectionalData::Dependent(j) => {
                    let d = j.specialize(&w)?;
                    Ok(Outcome::ok(
                        d.to_string(),
                        json!({"poly": f.to_string(), "status": "dependent", "level": j.level,
                               "power": j.power, "derivative": d.to_string()}),
                    ))
                }
            }
        }
        Command::Delta {
            functor,
            n,
            r,
            generators,
            q_generators,
        } => {
            let p = parse_functor(functor)?;
            let coords = CoordinateSystem::new(&p, *n, field)?;
            let gens = parse_all(generators, &coords.ring)?;
            let qgens = parse_all(q_generators, &coords.ring)?;
            let x = VarietyPresentation::from_coords(coords, gens, qgens, *r)?;
            let d = delta_degree(&x)?;
            let delta = d.delta.map_or("infinite".to_string(), |v| v.to_string());
            let witness = d.witness.as_ref().map(|w| w.to_string());
            let text = match &witness {
                Some(w) => format!("delta: {delta}\nwitness: {w}"),
                None => format!("delta: {delta}"),
            };
            Ok(Outcome::ok(
                text,
                json!({"delta": d.delta.map_or(json!("infinite"), |v| json!(v)), "witness": witness}),
            ))
        }
        Command::Proofstep {
            functor,
            u,
            n,
            poly,
            r,
            r0,
            generators,
            q_generators,
            ideal,
            sampler,
            samples,
        } => {
            let p = parse_functor(functor)?;
            let coords = CoordinateSystem::new(&p, *u, field)?;
            let f = parse_poly(poly, &coords.ring)?;
            let gens = if generators.is_empty() {
                vec![f.clone()]
            } else {
                parse_all(generators, &coords.ring)?
            };
            let qgens = parse_all(q_generators, &coords.ring)?;
            let x = VarietyPresentation::from_coords(coords, gens, qgens, *r)?;
            let ideal = if ideal.is_empty() {
                None
            } else {
                let ring = ShiftedFrame::new(&x, *n)?.std_ring()?;
                Some(parse_all(ideal, &ring)?)
            };
            let rank_one = RankOneSampler;
            let sampler: Option<&dyn PointSampler> = match sampler {
                SamplerKind::None => None,
                SamplerKind::RankOne if p.is_tensor_square() => Some(&rank_one),
                SamplerKind::RankOne => {
                    return Err(Failure::Usage(
                        "the rank-one sampler needs --functor tensor(id,id)".into(),
                    ))
                }
            };
            let r0 = r0.as_deref().map(|s| parse_vector(s, field)).transpose()?;
            let report = run_proof_step(&StepInput {
                variety: x,
                f,
                r0,
                n: *n,
                maps: None,
                ideal,
                sampler,
                seed: cli.seed,
                samples: *samples,
            })?;
            Ok(step_outcome(&report))
        }
        Command::ExampleRank1 { n } => Ok(step_outcome(&run_running_example(*n, field, cli.seed)?)),
    }
}

fn number(s: &str) -> Value {
    s.parse::<u64>()
        .map_or_else(|_| Value::String(s.to_string()), |v| json!(v))
}

fn parse_all(srcs: &[String], ring: &RingRef) -> Result<Vec<GradedPoly>, ParseError> {
    srcs.iter().map(|s| parse_poly(s, ring)).collect()
}

fn step_outcome(r: &StepReport) -> Outcome {
    let code = if !r.passed() {
        if r.inconclusive()
            && !r
                .checks
                .iter()
                .any(|c| c.status == polyfun_core::proofstep::CheckStatus::Fail)
        {
            3
        } else {
            1
        }
    } else {
        0
    };
    Outcome {
        text: step_text(r),
        json: step_json(r),
        code,
    }
}

/// Ring, polynomial, optional full direction vector and subspace.
fn directional_input(
    poly: &str,
    vars: Option<&str>,
    w_vars: &str,
    dir: Option<&String>,
    field: Field,
) -> Result<(GradedPoly, Option<Vec<Scalar>>, DirectionSubspace), Failure> {
    let w_names = parse_name_list(w_vars)?;
    let ring = match vars {
        Some(v) => ring_for(field, &[], Some(&parse_name_list(v)?))?,
        None => {
            let mut names = crate::text::collect_vars(poly)?;
            for w in &w_names {
                if !names.contains(w) {
                    names.push(w.clone());
                }
            }
            crate::text::sort_names(&mut names);
            ring_for(field, &[], Some(&names))?
        }
    };
    let f = parse_poly(poly, &ring)?;
    let space = DirectionSubspace::new(&ring, &w_names)?;
    let w = match dir {
        None => None,
        Some(d) => {
            let vals = parse_vector(d, field)?;
            if vals.len() != w_names.len() {
                return Err(Failure::Usage(format!(
                    "--dir has {} entries but --w-vars names {}",
                    vals.len(),
                    w_names.len()
                )));
            }
            let mut full = vec![field.zero(); ring.nvars()];
            for (name, v) in w_names.iter().zip(vals) {
                full[ring.require(name)?] = v;
            }
            Some(full)
        }
    };
    Ok((f, w, space))
}

fn cmd_decompose(functor: &str, n: Option<usize>) -> Result<Outcome, Failure> {
    let p = parse_functor(functor)?;
    let dec = decompose(&p)?;
    let mut text = String::new();
    let mut items = Vec::new();
    for s in dec.summands() {
        let dim = n.map(|n| s.dim(n).to_string());
        text.push_str(&format!("{} degree {} {} {}", s.label(), s.degree, s.sig, s.functor));
        if let Some(d) = &dim {
            text.push_str(&format!(" dim {d}"));
        }
        text.push('\n');
        items.push(
            json!({"label": s.label(), "degree": s.degree, "signature": s.sig.to_string(),
                          "functor": s.functor.to_string(), "dim": dim.as_deref().map(number)}),
        );
    }
    Ok(Outcome::ok(
        text,
        json!({"functor": p.to_string(), "degree": p.degree(), "n": n, "summands": items}),
    ))
}

fn cmd_induce(functor: &str, phi: &str, field: Field) -> Result<Outcome, Failure> {
    let p = parse_functor(functor)?;
    let (rows, cols, data) = parse_matrix(phi, field)?;
    let m = Matrix::new(rows, cols, data, field.zero())?;
    let lm = induced_labeled(&p, &m)?;
    let mut text = String::new();
    let mut matrix = Vec::new();
    for (i, label) in lm.codomain.iter().enumerate() {
        let row: Vec<String> = (0..lm.matrix.cols()).map(|j| lm.matrix.get(i, j).to_string()).collect();
        text.push_str(&format!("{label}: {}\n", row.join(" ")));
        matrix.push(row);
    }
    Ok(Outcome::ok(
        text,
        json!({"functor": p.to_string(), "domain": lm.domain, "codomain": lm.codomain, "matrix": matrix}),
    ))
}

fn cmd_shift_check(functor: &str, u: usize, n: usize, field: Field) -> Result<Outcome, Failure> {
    let p = parse_functor(functor)?;
    let s = shift_maps(&p, u, n, field)?;
    let text = format!(
        "beta_alpha_identity: {}\ntop_iso: {}\ntop_degree: {}\ntop_dim_shift: {}\ntop_dim: {}",
        s.beta_alpha_identity, s.top_iso, s.top_degree, s.top_dim_shift, s.top_dim
    );
    let mut out = Outcome::ok(
        text,
        json!({"functor": p.to_string(), "u": u, "n": n, "beta_alpha_identity": s.beta_alpha_identity,
               "top_iso": s.top_iso, "top_degree": s.top_degree, "top_dim_shift": s.top_dim_shift,
               "top_dim": s.top_dim}),
    );
    if !s.passed() {
        out.code = 1;
    }
    Ok(out)
}
