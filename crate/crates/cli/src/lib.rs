//! `charcalc` command-line front end.
//!
//! [`run`] is the whole program minus process exit, so tests drive it
//! directly. Rationals are always emitted as strings.

use std::ffi::OsString;

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use charcalc_core::bundle::{chern_class, chern_class_monomial_basis, chern_roots, sphere_eval, BundleExpr};
use charcalc_core::coupling::{
    coupling_class, mixed_class, mu_class, nu_class, CouplingInput, MixedIndex, SectionPullback,
};
use charcalc_core::equivariant::{
    moment_integral, mu_of_circle, normalized_moment, nu1_at_fixed_point, simplex_integral, simplex_ring,
    su_product_integral, WeightedCircleAction, NORMALIZATION,
};
use charcalc_core::flag::{
    flag_presentation, grassmannian_presentation, inverse_series, phi_pullback, sphere_product_ring,
    vertical_chern_classes, FlagSpec, SphereProductSpec,
};
use charcalc_core::obstruction::{
    degree_basis, hard_lefschetz_check, ideal_membership, whitehead_cube_criterion, whitehead_square_criterion,
    CriterionReport, ObstructionInput,
};
use charcalc_core::symfun::{self, Partition};
use charcalc_core::{Error, GradedPoly, Rational, RingPresentation};

pub mod paper;
pub mod registry;
pub mod spaces;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// A failure with its exit code and a one-line diagnostic.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(flag: &str, msg: impl Into<String>) -> Self {
        CliError { code: EXIT_USAGE, message: format!("invalid {flag}: {}", msg.into()) }
    }

    /// Core errors are input errors unless the presentation machinery
    /// itself broke down.
    pub fn core(flag: &str, e: Error) -> Self {
        match e {
            Error::Presentation(_) => CliError { code: EXIT_INTERNAL, message: format!("internal error: {e}") },
            _ => CliError::usage(flag, e.to_string()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputMode {
    Json,
    Text,
}

#[derive(Parser, Debug)]
#[command(name = "charcalc", version, about = "Exact characteristic-class calculator")]
pub struct Cli {
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub output: OutputMode,
    /// Seed for sampled checks.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Chern classes of a bundle expression.
    Chern(ChernArgs),
    /// Symmetric polynomials.
    #[command(subcommand)]
    Sym(SymCommand),
    /// Flag manifolds, Grassmannians, sphere products.
    Flag(FlagArgs),
    /// Bundle roots and computations in presented rings.
    #[command(subcommand)]
    Bundle(BundleCommand),
    /// Coupling class and μ/ν/mixed classes of a projectivized bundle.
    Mu(MuArgs),
    /// Circle actions on ℂPⁿ.
    #[command(subcommand)]
    Equi(EquiCommand),
    /// Bases, ideal membership, Whitehead criteria, hard Lefschetz.
    #[command(subcommand)]
    Obstruct(ObstructCommand),
    /// Rerun the reference computations.
    Paper,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ChernEval {
    Sphere,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ChernBasis {
    Roots,
    Monomial,
}

#[derive(Args, Debug)]
pub struct ChernArgs {
    /// Bundle expression, e.g. `lambda2(E4)` or `sum(E2,dual(E2))`.
    #[arg(long)]
    pub expr: String,
    #[arg(long)]
    pub k: usize,
    /// Pair with the spherical generator of π_{2k}(BU(m)).
    #[arg(long, value_enum, conflicts_with = "basis")]
    pub eval: Option<ChernEval>,
    #[arg(long, value_enum, default_value = "roots")]
    pub basis: ChernBasis,
}

#[derive(Subcommand, Debug)]
pub enum SymCommand {
    /// Monomial symmetric function s_I.
    Monomial {
        #[arg(long)]
        partition: String,
        #[arg(long)]
        vars: usize,
    },
    /// Elementary symmetric function σ_k.
    Elementary {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        vars: usize,
    },
    /// Rewrite a symmetric polynomial in t1..tv through sigma1..sigmav.
    ToElementary {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long)]
        vars: usize,
    },
    /// Coefficient of the linear monomial sigma_k.
    SigmaTop {
        /// Polynomial in sigma1..sigmav.
        #[arg(long, allow_hyphen_values = true)]
        elem: String,
        #[arg(long)]
        vars: usize,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Dims,
    Relations,
    Basis,
}

#[derive(Args, Debug)]
#[command(args_conflicts_with_subcommands = true)]
pub struct FlagArgs {
    /// Flag dimensions m1,...,mk (nonincreasing).
    #[arg(long)]
    pub dims: Option<String>,
    #[arg(long, value_enum, default_value = "dims")]
    pub emit: Emit,
    #[command(subcommand)]
    pub command: Option<FlagCommand>,
}

#[derive(Subcommand, Debug)]
pub enum FlagCommand {
    /// Grassmannian of k-planes complementary to m-planes.
    Grassmannian {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value = "dims")]
        emit: Emit,
    },
    /// Components f_1..f_d of (1 + y1 + ... + yv)^{-1}.
    Inverse {
        #[arg(long)]
        v: usize,
        #[arg(long)]
        d: usize,
    },
    /// Product of spheres with square-zero generators.
    Spheres {
        /// Even sphere dimensions, e.g. 2,2,2.
        #[arg(long)]
        dims: String,
        #[arg(long, value_enum, default_value = "dims")]
        emit: Emit,
    },
    /// Square-zero product on k+1 two-spheres.
    Phi {
        #[arg(long)]
        k: usize,
    },
}

#[derive(Args, Debug)]
pub struct RingArgs {
    /// point, cpN, sD, s2xs2, spheres:D,..., gr:m,k, flag:m1,..., or pcn-bundle.
    #[arg(long)]
    pub space: String,
    /// Base of a pcn-bundle.
    #[arg(long)]
    pub base: Option<String>,
    /// Fiber ℂPⁿ of a pcn-bundle.
    #[arg(long)]
    pub n: Option<usize>,
    /// Chern classes c1,...,c_{n+1} of a pcn-bundle, as base polynomials.
    #[arg(long, allow_hyphen_values = true)]
    pub chern: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ArithOp {
    Add,
    Mul,
    Pow,
}

#[derive(Subcommand, Debug)]
pub enum BundleCommand {
    /// Chern roots of a bundle expression.
    Roots {
        #[arg(long)]
        expr: String,
    },
    /// Presentation of a projectivized bundle.
    Projective {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, value_enum, default_value = "relations")]
        emit: Emit,
    },
    /// Fiber integral: coefficient of the top fiber class.
    Integrate {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
    },
    /// Base coefficient of one fiber basis element.
    Coefficient {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        /// Fiber basis monomial, e.g. `c^2` or `1`.
        #[arg(long)]
        element: String,
    },
    /// Normal form modulo the relations.
    NormalForm {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
    },
    /// Exact sum, product or power.
    Arith {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, value_enum)]
        op: ArithOp,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, required_unless_present = "exp")]
        b: Option<String>,
        #[arg(long, conflicts_with = "b")]
        exp: Option<u32>,
    },
    /// Homogeneous component of a given degree.
    Component {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long)]
        degree: u32,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MuClass {
    Coupling,
    Mu,
    Nu,
    Mixed,
}

#[derive(Args, Debug)]
pub struct MuArgs {
    #[command(flatten)]
    pub ring: RingArgs,
    #[arg(long, value_enum, default_value = "mu")]
    pub class: MuClass,
    #[arg(long)]
    pub k: Option<u32>,
    /// Degree-2 class extending the fiber class; defaults to the fiber generator.
    #[arg(long, allow_hyphen_values = true)]
    pub u: Option<String>,
    /// `zero`, or the base class the fiber generator pulls back to.
    #[arg(long, allow_hyphen_values = true)]
    pub section: Option<String>,
    /// Exponents m1,...,mn of the vertical Chern classes (mixed classes).
    #[arg(long)]
    pub exponents: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum EquiCommand {
    /// Coefficient of x^k in μ_k of a circle action.
    Mu {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        weights: String,
        #[arg(long)]
        k: u32,
    },
    /// ∫ H1² H2 ⋯ H_{k-1} ωⁿ on ℂP^{ℓ-1}.
    SuProduct {
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        k: usize,
    },
    /// ∫ (H - H(p)) ωⁿ at a fixed point.
    Nu1 {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        weights: String,
        #[arg(long)]
        vertex: usize,
    },
    /// Normalized moment polynomial on the simplex.
    Moment {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        weights: String,
    },
    /// ∫ over the standard simplex of x^α.
    Simplex {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        n: usize,
    },
    /// n! ∫_Δ p dx for a polynomial in x1..xn.
    Integrate {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
    },
}

#[derive(Args, Debug)]
pub struct CriterionArgs {
    #[arg(long)]
    pub space: String,
    /// `line` (the first H² basis class), or values on the H² basis.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: String,
    /// Degree-2 class c with α(c) ≠ 0; defaults to the first basis class with nonzero pairing.
    #[arg(long, allow_hyphen_values = true)]
    pub class: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum ObstructCommand {
    /// Basis of one degree of the quotient.
    Basis {
        #[arg(long)]
        space: String,
        #[arg(long)]
        degree: u32,
    },
    /// Ideal membership in one degree.
    Member {
        #[arg(long)]
        space: String,
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        /// Comma-separated ideal generators.
        #[arg(long, allow_hyphen_values = true, default_value = "")]
        gens: String,
    },
    /// c² ∈ (ker α).
    Square(CriterionArgs),
    /// c³ ∈ (ker α).
    Cube(CriterionArgs),
    /// Hard Lefschetz property of a degree-2 class.
    Hl {
        #[arg(long)]
        space: String,
        #[arg(long, allow_hyphen_values = true)]
        class: String,
    },
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    Outcome { code: EXIT_OK, stdout: e.to_string(), stderr: String::new() }
                }
                _ => {
                    let text = e.to_string();
                    let line = text.lines().next().unwrap_or("error").to_string();
                    Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: line }
                }
            };
        }
    };
    let result = dispatch(&cli);
    match result {
        Ok((value, code)) => Outcome { code, stdout: render(&value, cli.output), stderr: String::new() },
        Err(e) => Outcome { code: e.code, stdout: String::new(), stderr: format!("error: {}", e.message) },
    }
}

pub fn render(value: &Value, mode: OutputMode) -> String {
    match mode {
        OutputMode::Json => serde_json::to_string(value).expect("values serialize"),
        OutputMode::Text => {
            let mut out = String::new();
            text_lines(value, "", &mut out);
            out.pop();
            out
        }
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn text_lines(v: &Value, prefix: &str, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                text_lines(x, &key, out);
            }
        }
        Value::Array(items) if items.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, x) in items.iter().enumerate() {
                text_lines(x, &format!("{prefix}[{i}]"), out);
            }
        }
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(scalar_text).collect();
            out.push_str(&format!("{prefix}: {}\n", parts.join(", ")));
        }
        other => out.push_str(&format!("{prefix}: {}\n", scalar_text(other))),
    }
}

type CliResult<T> = Result<T, CliError>;

fn ok(v: Value) -> CliResult<(Value, i32)> {
    Ok((v, EXIT_OK))
}

fn parse_poly(flag: &str, pres_ring: &std::sync::Arc<charcalc_core::Ring>, text: &str) -> CliResult<GradedPoly> {
    GradedPoly::parse(pres_ring, text).map_err(|e| CliError::core(flag, e))
}

fn parse_expr(text: &str) -> CliResult<BundleExpr> {
    text.parse::<BundleExpr>().map_err(|e| CliError::core("--expr", e))
}

fn presentation_json(pres: &RingPresentation, emit: Emit) -> Value {
    let ring = pres.ring();
    let mut obj = Map::new();
    obj.insert(
        "generators".into(),
        Value::Array(
            (0..ring.len())
                .map(|i| json!({"name": ring.name(i), "degree": ring.degree_of(i)}))
                .collect(),
        ),
    );
    let dims = pres.dims_by_degree().unwrap_or(&[]).to_vec();
    match emit {
        Emit::Dims => {
            obj.clear();
            obj.insert("dim_by_degree".into(), json!(dims));
            obj.insert("total".into(), json!(dims.iter().sum::<usize>()));
        }
        Emit::Relations => {
            let rels: Vec<String> = pres
                .rules()
                .iter()
                .map(|r| format!("{} = {}", GradedPoly::monomial(ring, r.lead.clone()).to_canonical(), r.replacement.to_canonical()))
                .collect();
            obj.insert("relations".into(), json!(rels));
            obj.insert("dim_by_degree".into(), json!(dims));
        }
        Emit::Basis => {
            let top = pres.top_degree().unwrap_or(0);
            let basis: Vec<Value> = (0..=top)
                .step_by(2)
                .map(|d| {
                    let ms: Vec<String> = pres
                        .standard_monomials(d)
                        .into_iter()
                        .map(|m| GradedPoly::monomial(ring, m).to_canonical())
                        .collect();
                    json!({"degree": d, "monomials": ms})
                })
                .collect();
            obj.insert("basis".into(), Value::Array(basis));
            obj.insert("dim_by_degree".into(), json!(dims));
        }
    }
    Value::Object(obj)
}

fn ring_from_args(args: &RingArgs) -> CliResult<(RingPresentation, Option<spaces::ProjectiveBundle>)> {
    if args.space == "pcn-bundle" {
        let base = args.base.as_deref().ok_or_else(|| CliError::usage("--base", "required for pcn-bundle"))?;
        let n = args.n.ok_or_else(|| CliError::usage("--n", "required for pcn-bundle"))?;
        if n == 0 {
            return Err(CliError::usage("--n", "fiber dimension must be at least 1"));
        }
        let b = spaces::projective(base, n, args.chern.as_deref())?;
        return Ok((b.pres.clone(), Some(b)));
    }
    for (flag, present) in [("--base", args.base.is_some()), ("--n", args.n.is_some()), ("--chern", args.chern.is_some())] {
        if present {
            return Err(CliError::usage(flag, "only meaningful with --space pcn-bundle"));
        }
    }
    Ok((spaces::named_space("--space", &args.space)?, None))
}

fn poly_value(p: &GradedPoly) -> Value {
    let mut obj = Map::new();
    obj.insert("poly".into(), json!(p.to_canonical()));
    if let Some(d) = p.homogeneous_degree() {
        obj.insert("degree".into(), json!(d));
    }
    Value::Object(obj)
}

fn weights_action(n: Option<usize>, text: &str) -> CliResult<WeightedCircleAction> {
    let w = spaces::i64_list("--weights", text)?;
    if let Some(n) = n {
        if w.len() != n + 1 {
            return Err(CliError::usage("--weights", format!("expected {} weights for n = {n}, got {}", n + 1, w.len())));
        }
    }
    WeightedCircleAction::new(w).map_err(|e| CliError::core("--weights", e))
}

fn equi_value(v: Rational) -> Value {
    json!({"value": v.to_string(), "normalization": NORMALIZATION})
}

fn criterion_value(r: CriterionReport) -> Value {
    json!({"criterion": r.holds, "degree_checked": r.degree_checked, "hypothesis_checked": r.hypothesis_checked})
}

fn obstruction_input(args: &CriterionArgs) -> CliResult<ObstructionInput> {
    let pres = spaces::named_space("--space", &args.space)?;
    let h2 = degree_basis(&pres, 2).map_err(|e| CliError::core("--space", e))?;
    if h2.dim() == 0 {
        return Err(CliError::usage("--space", "H^2 vanishes"));
    }
    let alpha: Vec<Rational> = if args.alpha == "line" {
        (0..h2.dim()).map(|i| if i == 0 { Rational::one() } else { Rational::zero() }).collect()
    } else {
        args.alpha
            .split(',')
            .map(|s| s.trim().parse::<Rational>())
            .collect::<Result<_, _>>()
            .map_err(|e| CliError::core("--alpha", e))?
    };
    match &args.class {
        Some(c) => {
            let c = parse_poly("--class", pres.ring(), c)?;
            ObstructionInput::new(pres, alpha, c).map_err(|e| CliError::core("--class", e))
        }
        None => ObstructionInput::with_default_class(pres, alpha).map_err(|e| CliError::core("--alpha", e)),
    }
}

fn dispatch(cli: &Cli) -> CliResult<(Value, i32)> {
    match &cli.command {
        Command::Chern(a) => {
            let e = parse_expr(&a.expr)?;
            if a.eval == Some(ChernEval::Sphere) {
                let v = sphere_eval(&e, a.k).map_err(|e| CliError::core("--expr", e))?;
                return ok(json!({"value": v.to_string()}));
            }
            match a.basis {
                ChernBasis::Roots => {
                    let c = chern_class(&e, a.k).map_err(|e| CliError::core("--expr", e))?;
                    ok(json!({"class": c.to_canonical(), "degree": 2 * a.k, "rank": e.rank()}))
                }
                ChernBasis::Monomial => {
                    let s = chern_class_monomial_basis(&e, a.k).map_err(|e| CliError::core("--expr", e))?;
                    ok(json!({"class": s.to_string(), "degree": 2 * a.k, "rank": e.rank()}))
                }
            }
        }
        Command::Sym(s) => match s {
            SymCommand::Monomial { partition, vars } => {
                let p: Partition = partition.parse().map_err(|e| CliError::core("--partition", e))?;
                let m = symfun::monomial_symmetric(&p, *vars).map_err(|e| CliError::core("--partition", e))?;
                ok(poly_value(&m))
            }
            SymCommand::Elementary { k, vars } => ok(poly_value(&symfun::elementary(*k, *vars))),
            SymCommand::ToElementary { poly, vars } => {
                let p = parse_poly("--poly", &symfun::root_ring(*vars), poly)?;
                let e = symfun::to_elementary(&p, *vars).map_err(|e| CliError::core("--poly", e))?;
                ok(json!({"elementary": e.to_canonical()}))
            }
            SymCommand::SigmaTop { elem, vars, k } => {
                let e = parse_poly("--elem", &symfun::sigma_ring(*vars), elem)?;
                ok(json!({"value": symfun::sigma_top_coefficient(&e, *k).to_string()}))
            }
        },
        Command::Flag(f) => match (&f.command, &f.dims) {
            (None, Some(dims)) => {
                let spec = FlagSpec::new(spaces::usize_list("--dims", dims)?).map_err(|e| CliError::core("--dims", e))?;
                let pres = flag_presentation(&spec).map_err(|e| CliError::core("--dims", e))?;
                ok(presentation_json(&pres, f.emit))
            }
            (None, None) => Err(CliError::usage("--dims", "required unless a flag subcommand is given")),
            (Some(cmd), _) => match cmd {
                FlagCommand::Grassmannian { m, k, emit } => {
                    let pres = grassmannian_presentation(*m, *k).map_err(|e| CliError::core("--m", e))?;
                    ok(presentation_json(&pres, *emit))
                }
                FlagCommand::Inverse { v, d } => {
                    if *v == 0 || *d == 0 {
                        return Err(CliError::usage("--v", "v and d must be at least 1"));
                    }
                    let fs: Vec<String> = inverse_series(*v, *d).iter().map(|f| f.to_canonical()).collect();
                    ok(json!({"components": fs}))
                }
                FlagCommand::Spheres { dims, emit } => {
                    let ds = spaces::usize_list("--dims", dims)?.into_iter().map(|d| d as u32).collect();
                    let spec = SphereProductSpec::new(ds).map_err(|e| CliError::core("--dims", e))?;
                    let pres = sphere_product_ring(&spec).map_err(|e| CliError::core("--dims", e))?;
                    ok(presentation_json(&pres, *emit))
                }
                FlagCommand::Phi { k } => {
                    let p = phi_pullback(*k).map_err(|e| CliError::core("--k", e))?;
                    ok(poly_value(&p))
                }
            },
        },
        Command::Bundle(b) => dispatch_bundle(b),
        Command::Mu(m) => dispatch_mu(m),
        Command::Equi(e) => match e {
            EquiCommand::Mu { n, weights, k } => {
                let a = weights_action(*n, weights)?;
                ok(equi_value(mu_of_circle(&a, *k).map_err(|e| CliError::core("--k", e))?))
            }
            EquiCommand::SuProduct { ell, k } => {
                ok(equi_value(su_product_integral(*ell, *k).map_err(|e| CliError::core("--k", e))?))
            }
            EquiCommand::Nu1 { n, weights, vertex } => {
                let a = weights_action(*n, weights)?;
                ok(equi_value(nu1_at_fixed_point(&a, *vertex).map_err(|e| CliError::core("--vertex", e))?))
            }
            EquiCommand::Moment { n, weights } => {
                let a = weights_action(*n, weights)?;
                ok(json!({"moment": normalized_moment(&a).to_canonical(), "normalization": NORMALIZATION}))
            }
            EquiCommand::Simplex { alpha, n } => {
                let al: Vec<u32> = spaces::usize_list("--alpha", alpha)?.into_iter().map(|a| a as u32).collect();
                ok(json!({"value": simplex_integral(&al, *n).map_err(|e| CliError::core("--alpha", e))?.to_string()}))
            }
            EquiCommand::Integrate { n, poly } => {
                let p = parse_poly("--poly", &simplex_ring(*n), poly)?;
                ok(equi_value(moment_integral(&p, *n).map_err(|e| CliError::core("--poly", e))?))
            }
        },
        Command::Obstruct(o) => match o {
            ObstructCommand::Basis { space, degree } => {
                let pres = spaces::named_space("--space", space)?;
                let b = degree_basis(&pres, *degree).map_err(|e| CliError::core("--space", e))?;
                let ms: Vec<String> =
                    b.elements.iter().map(|m| GradedPoly::monomial(pres.ring(), m.clone()).to_canonical()).collect();
                ok(json!({"degree": degree, "basis": ms, "dim": b.dim()}))
            }
            ObstructCommand::Member { space, poly, gens } => {
                let pres = spaces::named_space("--space", space)?;
                let z = parse_poly("--poly", pres.ring(), poly)?;
                let gs: Vec<GradedPoly> = gens
                    .split(',')
                    .filter(|s| !s.trim().is_empty())
                    .map(|s| parse_poly("--gens", pres.ring(), s))
                    .collect::<CliResult<_>>()?;
                let m = ideal_membership(&z, &gs, &pres).map_err(|e| CliError::core("--poly", e))?;
                ok(json!({"member": m, "degree_checked": z.homogeneous_degree().unwrap_or(0)}))
            }
            ObstructCommand::Square(a) => {
                let input = obstruction_input(a)?;
                ok(criterion_value(whitehead_square_criterion(&input).map_err(|e| CliError::core("--space", e))?))
            }
            ObstructCommand::Cube(a) => {
                let input = obstruction_input(a)?;
                ok(criterion_value(whitehead_cube_criterion(&input).map_err(|e| CliError::core("--space", e))?))
            }
            ObstructCommand::Hl { space, class } => {
                let pres = spaces::named_space("--space", space)?;
                let a = parse_poly("--class", pres.ring(), class)?;
                let top = pres.top_degree().ok_or_else(|| CliError::usage("--space", "ring is not finite"))?;
                let holds = hard_lefschetz_check(&pres, &a, top / 2).map_err(|e| CliError::core("--class", e))?;
                ok(json!({"criterion": holds, "degree_checked": top, "hypothesis_checked": "not_required"}))
            }
        },
        Command::Paper => {
            let anchors = paper::run_suite(cli.seed);
            let code = if anchors.iter().all(|a| a.pass) { EXIT_OK } else { EXIT_INTERNAL };
            Ok((paper::report(&anchors, cli.seed), code))
        }
    }
}

fn dispatch_bundle(b: &BundleCommand) -> CliResult<(Value, i32)> {
    match b {
        BundleCommand::Roots { expr } => {
            let e = parse_expr(expr)?;
            let roots = chern_roots(&e).map_err(|e| CliError::core("--expr", e))?;
            let rs: Vec<String> = roots.roots().iter().map(|r| r.to_canonical()).collect();
            ok(json!({"roots": rs, "rank": e.rank()}))
        }
        BundleCommand::Projective { ring, emit } => {
            if ring.space != "pcn-bundle" {
                return Err(CliError::usage("--space", "projective needs --space pcn-bundle"));
            }
            let (pres, _) = ring_from_args(ring)?;
            ok(presentation_json(&pres, *emit))
        }
        BundleCommand::Integrate { ring, poly } => {
            let (pres, _) = ring_from_args(ring)?;
            let p = parse_poly("--poly", pres.ring(), poly)?;
            let v = pres.fiber_integrate(&p).map_err(|e| CliError::core("--space", e))?;
            ok(poly_value(&v))
        }
        BundleCommand::Coefficient { ring, poly, element } => {
            let (pres, _) = ring_from_args(ring)?;
            let p = parse_poly("--poly", pres.ring(), poly)?;
            let el = parse_poly("--element", pres.ring(), element)?;
            let m = match el.terms().collect::<Vec<_>>()[..] {
                [(m, c)] if c.is_one() => m.clone(),
                _ if el.is_zero() => return Err(CliError::usage("--element", "must be a monomial")),
                _ => return Err(CliError::usage("--element", "must be a single monomial with coefficient 1")),
            };
            let v = pres.fiber_coefficient(&p, &m).map_err(|e| CliError::core("--element", e))?;
            ok(poly_value(&v))
        }
        BundleCommand::NormalForm { ring, poly } => {
            let (pres, _) = ring_from_args(ring)?;
            let p = parse_poly("--poly", pres.ring(), poly)?;
            ok(poly_value(&pres.normal_form(&p).map_err(|e| CliError::core("--poly", e))?))
        }
        BundleCommand::Arith { ring, op, a, b, exp } => {
            let (pres, _) = ring_from_args(ring)?;
            let x = parse_poly("--a", pres.ring(), a)?;
            let r = match op {
                ArithOp::Pow => {
                    let e = exp.ok_or_else(|| CliError::usage("--exp", "required for pow"))?;
                    x.pow(e)
                }
                ArithOp::Add | ArithOp::Mul => {
                    let b = b.as_deref().ok_or_else(|| CliError::usage("--b", "required for add and mul"))?;
                    let y = parse_poly("--b", pres.ring(), b)?;
                    if *op == ArithOp::Add {
                        &x + &y
                    } else {
                        &x * &y
                    }
                }
            };
            ok(poly_value(&r))
        }
        BundleCommand::Component { ring, poly, degree } => {
            let (pres, _) = ring_from_args(ring)?;
            let p = parse_poly("--poly", pres.ring(), poly)?;
            ok(poly_value(&p.graded_component(*degree)))
        }
    }
}

fn dispatch_mu(m: &MuArgs) -> CliResult<(Value, i32)> {
    if m.ring.space != "pcn-bundle" {
        return Err(CliError::usage("--space", "mu supports --space pcn-bundle"));
    }
    let (pres, bundle) = ring_from_args(&m.ring)?;
    let bundle = bundle.expect("pcn-bundle");
    let ring = pres.ring().clone();
    let u = match &m.u {
        Some(t) => parse_poly("--u", &ring, t)?,
        None => GradedPoly::var_named(&ring, &bundle.fiber_generator).expect("fiber generator exists"),
    };
    let mut input = CouplingInput::new(pres.clone(), u, bundle.n as u32).map_err(|e| CliError::core("--u", e))?;
    if let Some(s) = &m.section {
        let fiber = ring.index_of(&bundle.fiber_generator).expect("fiber generator exists");
        let section = if s == "zero" {
            SectionPullback::zero(&pres)
        } else {
            let img = parse_poly("--section", &ring, s)?;
            SectionPullback::new(&pres, vec![(fiber, img)])
        }
        .map_err(|e| CliError::core("--section", e))?;
        input = input.with_section(section);
    }
    let need_k = |flag: &str| m.k.ok_or_else(|| CliError::usage(flag, "required for this class"));
    let n = bundle.n as u32;
    let (class, degree) = match m.class {
        MuClass::Coupling => (coupling_class(&input).map_err(|e| CliError::core("--u", e))?, 2),
        MuClass::Mu => {
            let k = need_k("--k")?;
            (mu_class(&input, k).map_err(|e| CliError::core("--k", e))?, 2 * k)
        }
        MuClass::Nu => {
            if m.section.is_none() {
                return Err(CliError::usage("--section", "required for nu classes"));
            }
            let k = need_k("--k")?;
            (nu_class(&input, k).map_err(|e| CliError::core("--k", e))?, 2 * k)
        }
        MuClass::Mixed => {
            let exps: Vec<u32> = match &m.exponents {
                Some(t) => spaces::usize_list("--exponents", t)?.into_iter().map(|x| x as u32).collect(),
                None => return Err(CliError::usage("--exponents", "required for mixed classes")),
            };
            let vertical =
                vertical_chern_classes(&pres, &bundle.chern, bundle.n).map_err(|e| CliError::core("--chern", e))?;
            let k = m.k.unwrap_or(0);
            let total: u32 = 2 * k + exps.iter().enumerate().map(|(i, e)| 2 * (i as u32 + 1) * e).sum::<u32>();
            if total < 2 * n {
                return Err(CliError::usage("--exponents", format!("total degree {total} is below the fiber dimension {}", 2 * n)));
            }
            let idx = MixedIndex { k, exponents: exps, vertical_classes: vertical };
            (mixed_class(&input, &idx).map_err(|e| CliError::core("--exponents", e))?, total - 2 * n)
        }
    };
    ok(json!({"class": class.to_canonical(), "degree": degree}))
}

/// The `clap` command tree, for registry checks.
pub fn command() -> clap::Command {
    Cli::command()
}
