//! Argument parsing and dispatch for the `redstab` binary.
//!
//! Every command produces a JSON object with its result fields followed by
//! `mode` (`exact`, `float` or `mixed`), `warnings` and the resolved
//! `config`. Wall commands can instead emit CSV or SVG. Domain errors exit
//! with status 1 and usage errors with status 2; both print a JSON error
//! document on stdout.

use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::Signed;
use redstab_core::charge::{
    charge_of_poly, decompose, eval_charge, gamma, gamma_inf, in_bn, in_un_detail, kernel_parameter,
    poly_of_charge, reduced_charge, CentralCharge, ReducedCharge,
};
use redstab_core::geometry::{
    ab_delta, ab_delta_self, ab_twist, criterion_bayer_step, criterion_neg_def, criterion_restrict,
    default_k_interval, delta_h, family_equiv_check, nabla_beta, natural_k_interval, params_from_tuples,
    q_k_beta, threefold_charge, threefold_roots, twisted_vector, validity_iff_interlaced, NsLattice, NsVector,
    ThreefoldParams,
};
use redstab_core::interlace::{
    interlace_orientation, member_with_root, pencil_canonical, pencil_project, poly_to_roots, precedes,
    roots_to_poly, sep, sep_pencil, shift_pencil, stabilizing_shift, Orientation, Pencil, Polynomial,
};
use redstab_core::num::{int, to_f64};
use redstab_core::poly::Poly;
use redstab_core::quadform::{
    deform_form, dual_form, in_wq, q_line, q_tilde, verify_with, QuadraticForm, SupportSamples, SUPPORT_MARGIN,
};
use redstab_core::restrict::{pushforward_matrix, restrict_charge, xi, xi_multi};
use redstab_core::walls::{
    hilb_boundary, hilb_bounds, hilb_figure_lines, hilb_locus, numerical_wall, sb_v_surface, Viewport, WallLocus,
};
use redstab_core::Rat;
use serde_json::{json, Map, Value};

use crate::acceptance::{self, Scale};
use crate::format as fmt;
use crate::plot::{self, Plot};
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Svg,
}

impl Format {
    fn name(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Svg => "svg",
        }
    }
}

/// Reduced stability conditions: interlacing, charges, quadratic forms,
/// walls and restriction maps.
#[derive(Debug, Parser)]
#[command(name = "redstab", version)]
pub struct Cli {
    /// Tolerance override for commands with a numeric threshold.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Sample count override.
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Output format; CSV and SVG are available for wall commands.
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Write the output document to a file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Real-rooted polynomials, interlacing and pencils.
    #[command(subcommand)]
    Interlace(InterlaceCmd),
    /// Twisted vectors and reduced central charges.
    #[command(subcommand)]
    Charge(ChargeCmd),
    /// Quadratic forms attached to pencils.
    #[command(subcommand)]
    Quadform(QuadformCmd),
    /// Discriminants, threefold parameters and abelian surfaces.
    #[command(subcommand)]
    Geom(GeomCmd),
    /// Numerical wall loci and figures.
    #[command(subcommand)]
    Walls(WallsCmd),
    /// Hypersurface restriction maps.
    #[command(subcommand)]
    Restrict(RestrictCmd),
    /// Run the acceptance suite and report pass/fail per criterion.
    Selftest {
        /// Run at full sample counts instead of the reduced ones.
        #[arg(long)]
        full: bool,
        /// Run a single criterion.
        #[arg(long)]
        only: Option<usize>,
    },
}

/// Polynomial with an ambient degree (defaults to its degree).
#[derive(Debug, Args)]
pub struct PolyArg {
    /// Ascending coefficients, e.g. `["0","-1","1"]` or `@file.json`.
    #[arg(long)]
    pub f: String,
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(Debug, Args)]
pub struct PencilArg {
    #[arg(long)]
    pub f: String,
    #[arg(long)]
    pub g: String,
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum InterlaceCmd {
    /// Strict interlacing of two polynomials.
    Check(PencilArg),
    /// Roots of a polynomial in B_n.
    Roots(PolyArg),
    /// Monic polynomial of a root tuple (`"inf"` allowed last).
    FromRoots {
        #[arg(long)]
        t: String,
    },
    /// Root separation of a polynomial, or of the pencil with `--g`.
    Sep {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: Option<String>,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Monic degree n − 1 member of a pencil.
    Canonical(PencilArg),
    /// Projection of a pencil to ambient n − 1.
    Project(PencilArg),
    /// Member of a pencil vanishing at a point.
    Member {
        #[command(flatten)]
        pencil: PencilArg,
        #[arg(long)]
        root: String,
    },
    /// Pencil spanned by f(x) and f(x + m).
    Shift {
        #[command(flatten)]
        poly: PolyArg,
        #[arg(long)]
        m: String,
    },
    /// Smallest doubling N with sep(ℓ(f, (x + N) g)) > d.
    Stabilize {
        #[command(flatten)]
        pencil: PencilArg,
        #[arg(long)]
        d: f64,
    },
}

#[derive(Debug, Subcommand)]
pub enum ChargeCmd {
    /// Twisted vector γ_n(t); `t` may be `inf`.
    Gamma {
        #[arg(long)]
        t: String,
        #[arg(long)]
        n: usize,
    },
    /// Weights of B_t.
    Weights {
        #[arg(long)]
        t: String,
    },
    /// B_t(v), or B(v) for explicit weights.
    Eval {
        #[arg(long, conflicts_with = "b")]
        t: Option<String>,
        #[arg(long)]
        b: Option<String>,
        #[arg(long)]
        v: String,
    },
    /// Polynomial of a charge given by weights.
    Poly {
        #[arg(long)]
        b: String,
    },
    /// Charge lc(f)·B_{roots(f)} of a polynomial.
    OfPoly(PolyArg),
    /// Membership of a charge in B_n with sep > d.
    InBn {
        #[arg(long)]
        b: String,
        #[arg(long, default_value_t = 0.0)]
        d: f64,
    },
    /// Membership of Z = Re + i Im in U_n with pencil sep > d.
    InUn {
        #[arg(long)]
        re: String,
        #[arg(long)]
        im: String,
        #[arg(long, default_value_t = 0.0)]
        d: f64,
    },
    /// Coefficients of v = Σ (−1)^i a_i γ(t_i) and their sign verdict.
    Decompose {
        #[arg(long)]
        v: String,
        #[arg(long)]
        t: String,
    },
    /// Root tuple of the pencil member vanishing on v.
    Kernel {
        #[command(flatten)]
        pencil: PencilArg,
        #[arg(long)]
        v: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormKind {
    Line,
    Tilde,
    Delta,
}

#[derive(Debug, Subcommand)]
pub enum QuadformCmd {
    /// Q_ℓ, Q̃_ℓ of a pencil, or Δ_H on Λ_n.
    Build {
        #[arg(long, value_enum)]
        kind: FormKind,
        #[arg(long)]
        f: Option<String>,
        #[arg(long)]
        g: Option<String>,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Support-property checks of a Gram matrix against a pencil.
    Verify {
        #[arg(long)]
        gram: String,
        #[command(flatten)]
        pencil: PencilArg,
    },
    /// Gram inverse.
    Dual {
        #[arg(long)]
        gram: String,
    },
    /// Membership of Z in W(Q).
    Wq {
        #[arg(long)]
        gram: String,
        #[arg(long)]
        re: String,
        #[arg(long)]
        im: String,
    },
    /// Deformation of Q adapted to Ker h and the segment f1 + t f2.
    Deform {
        #[arg(long)]
        h: String,
        #[arg(long)]
        f1: String,
        #[arg(long)]
        f2: String,
        #[arg(long)]
        gram: String,
        #[arg(long)]
        d: String,
        #[arg(long = "big-n")]
        big_n: String,
    },
}

#[derive(Debug, Args)]
pub struct ThreefoldArg {
    #[arg(long)]
    pub alpha: String,
    #[arg(long)]
    pub beta: String,
    #[arg(long)]
    pub a: String,
    #[arg(long)]
    pub b: String,
}

#[derive(Debug, Subcommand)]
pub enum GeomCmd {
    /// Central charge of a threefold parameter point.
    Threefold(ThreefoldArg),
    /// Parameters recovered from a sorted pair or triple.
    Params {
        #[arg(long)]
        t: String,
    },
    /// Validity inequality against interlacing of the kernel tuples.
    Validity(ThreefoldArg),
    /// Δ_H, ∇_H^β, Q_K^β and twisted components of v.
    Discriminants {
        #[arg(long)]
        v: String,
        #[arg(long, default_value = "0")]
        beta: String,
        #[arg(long)]
        k: Option<String>,
    },
    /// Sign verdict against nonnegativity of Q_K^β over a K grid.
    Family {
        #[arg(long)]
        v: String,
        #[arg(long)]
        t: String,
        #[arg(long)]
        beta: Option<String>,
        #[arg(long = "k-lo")]
        k_lo: Option<String>,
        #[arg(long = "k-hi")]
        k_hi: Option<String>,
        /// Use [0, (t2 − t1)(t3 − t2)] instead of the default scan range.
        #[arg(long)]
        natural: bool,
    },
    /// Discriminants, twists and criteria on an abelian surface.
    Abelian {
        #[arg(long)]
        gram: String,
        /// `{"r": .., "d": [..], "s": ..}`.
        #[arg(long)]
        v: String,
        #[arg(long)]
        w: Option<String>,
        /// Divisor class G for twists.
        #[arg(long)]
        g: Option<String>,
        /// Polarization H for the restriction criterion.
        #[arg(long)]
        h: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum WallsCmd {
    /// Bounds (N, M), figure lines and locus for v = (1, 0, 0, −m).
    Hilb {
        #[arg(long)]
        m: u64,
        /// `[x_min, x_max, y_min, y_max]`.
        #[arg(long)]
        view: Option<String>,
    },
    /// Sb_v on a polarized surface.
    Surface {
        #[arg(long)]
        v: String,
        #[arg(long)]
        view: Option<String>,
    },
    /// Common kernel locus of two characters.
    Numerical {
        #[arg(long)]
        v: String,
        #[arg(long)]
        w: String,
        #[arg(long, default_value_t = -10.0, allow_hyphen_values = true)]
        lo: f64,
        #[arg(long, default_value_t = 10.0, allow_hyphen_values = true)]
        hi: f64,
    },
    /// Reference figures (1: surface, 4: Hilbert scheme of curves).
    Plot {
        #[arg(long)]
        figure: u32,
        #[arg(long)]
        m: Option<u64>,
        /// Constant c in v1 = (1, 0, −c).
        #[arg(long)]
        c: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum RestrictCmd {
    /// Ξ_m(t).
    Xi {
        #[arg(long)]
        t: String,
        #[arg(long)]
        m: String,
    },
    /// Ξ applied for each degree in order.
    Chain {
        #[arg(long)]
        t: String,
        #[arg(long)]
        ms: String,
    },
    /// Restriction of Z = Re + i Im to a degree-m hypersurface.
    Charge {
        #[arg(long)]
        re: String,
        #[arg(long)]
        im: String,
        #[arg(long)]
        m: String,
    },
    /// Matrix of Λ_{n−1} → Λ_n.
    Pushforward {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: String,
    },
}

/// Result of a command before serialization.
pub enum Output {
    Json { fields: Vec<(&'static str, Value)>, mode: &'static str, warnings: Vec<String> },
    Plot(Plot, Value),
}

fn obj(fields: Vec<(&'static str, Value)>, mode: &'static str) -> Output {
    Output::Json { fields, mode, warnings: Vec::new() }
}

struct Ctx {
    tol: Option<f64>,
    samples: Option<usize>,
    seed: u64,
    resolved: Map<String, Value>,
}

impl Ctx {
    fn samples(&mut self, default: usize) -> usize {
        let s = self.samples.unwrap_or(default);
        self.resolved.insert("samples".to_string(), json!(s));
        s
    }

    fn tol(&mut self, default: f64) -> f64 {
        let t = self.tol.unwrap_or(default);
        self.resolved.insert("tol".to_string(), fmt::float(t));
        t
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn polynomial(arg: &str, n: Option<usize>) -> Result<Polynomial, CliError> {
    let p = fmt::poly(arg)?;
    let n = match n {
        Some(n) => n,
        None => p.degree().ok_or_else(|| usage("zero polynomial"))?,
    };
    Ok(Polynomial::new(p, n)?)
}

fn pencil_polys(a: &PencilArg) -> Result<(Polynomial, Polynomial), CliError> {
    let f = fmt::poly(&a.f)?;
    let g = fmt::poly(&a.g)?;
    let n = match a.n {
        Some(n) => n,
        None => f.degree().max(g.degree()).ok_or_else(|| usage("zero polynomials"))?,
    };
    Ok((Polynomial::new(f, n)?, Polynomial::new(g, n)?))
}

fn pencil(a: &PencilArg) -> Result<Pencil, CliError> {
    let (f, g) = pencil_polys(a)?;
    Ok(Pencil::new(f, g)?)
}

fn charge(arg: &str) -> Result<ReducedCharge, CliError> {
    Ok(ReducedCharge::from_weights(fmt::rat_list(arg)?)?)
}

fn central(re: &str, im: &str) -> Result<CentralCharge, CliError> {
    Ok(CentralCharge { re: charge(re)?, im: charge(im)? })
}

fn poly_json(p: &Poly) -> Value {
    fmt::rats(p.coeffs())
}

fn pencil_json(l: &Pencil) -> Value {
    json!({ "f": poly_json(l.gen_a().poly()), "g": poly_json(l.gen_b().poly()), "n": l.n() })
}

fn orientation_name(o: Orientation) -> &'static str {
    match o {
        Orientation::FirstLeads => "first_leads",
        Orientation::SecondLeads => "second_leads",
    }
}

fn viewport(arg: &Option<String>, default: Viewport) -> Result<Viewport, CliError> {
    let Some(a) = arg else { return Ok(default) };
    let v = fmt::rat_list(a)?;
    if v.len() != 4 {
        return Err(usage("viewport needs [x_min, x_max, y_min, y_max]"));
    }
    Ok(Viewport::new(to_f64(&v[0]), to_f64(&v[1]), to_f64(&v[2]), to_f64(&v[3]))?)
}

fn locus_json(l: &WallLocus) -> Value {
    let (x, y) = l.coords.axes();
    json!({
        "coords": l.coords.name(),
        "axes": [x, y],
        "description": l.description,
        "codim": l.codim,
        "count": l.points.len(),
        "rejected": l.rejected,
        "max_residual": fmt::float(l.max_residual()),
        "points": l.points.iter().map(|p| json!([fmt::float(p.x), fmt::float(p.y), fmt::float(p.residual)])).collect::<Vec<_>>(),
    })
}

fn ns_vector(arg: &str) -> Result<NsVector, CliError> {
    let v = fmt::value(arg)?;
    let field = |k: &str| v.get(k).ok_or_else(|| usage(format!("NS vector needs field {k:?}")));
    let d = match field("d")? {
        Value::Array(a) => a.iter().map(fmt::rat_of).collect::<Result<Vec<_>, _>>()?,
        _ => return Err(usage("field \"d\" must be an array")),
    };
    Ok(NsVector { r: fmt::rat_of(field("r")?)?, d, s: fmt::rat_of(field("s")?)? })
}

fn ns_json(v: &NsVector) -> Value {
    json!({ "r": fmt::rat(&v.r), "d": fmt::rats(&v.d), "s": fmt::rat(&v.s) })
}

fn threefold_params(a: &ThreefoldArg) -> Result<ThreefoldParams, CliError> {
    Ok(ThreefoldParams {
        alpha: fmt::scalar(&a.alpha)?,
        beta: fmt::scalar(&a.beta)?,
        a: fmt::scalar(&a.a)?,
        b: fmt::scalar(&a.b)?,
    })
}

fn form_json(q: &QuadraticForm) -> Vec<(&'static str, Value)> {
    let (p, m, z) = q.inertia();
    vec![
        ("gram", fmt::mat(q.gram())),
        ("signature", json!([p, m, z])),
        ("alphas", fmt::rats(&q.alphas)),
    ]
}

fn interlace(cmd: &InterlaceCmd) -> Result<Output, CliError> {
    Ok(match cmd {
        InterlaceCmd::Check(a) => {
            let (f, g) = pencil_polys(a)?;
            let o = match interlace_orientation(&f, &g) {
                Ok(o) => o,
                Err(redstab_core::Error::DegenerateInput) => None,
                Err(e) => return Err(e.into()),
            };
            let prec = o.is_some() && precedes(&f, &g)?;
            obj(
                vec![
                    ("interlaced", json!(o.is_some())),
                    ("orientation", o.map_or(Value::Null, |o| json!(orientation_name(o)))),
                    ("precedes", json!(prec)),
                    ("n", json!(f.n())),
                ],
                "exact",
            )
        }
        InterlaceCmd::Roots(a) => {
            let f = polynomial(&a.f, a.n)?;
            let t = poly_to_roots(&f);
            let exact = f.root_isolation().iter().all(|r| r.is_exact());
            let mut approx = t.to_f64();
            approx.truncate(t.finite_entries().len());
            let brackets: Vec<Value> =
                f.root_isolation().iter().map(|r| json!([fmt::rat(&r.lo), fmt::rat(&r.hi)])).collect();
            obj(
                vec![
                    ("roots", fmt::tuple(&t)),
                    ("exact", json!(exact)),
                    ("approx", fmt::floats(&approx)),
                    ("isolating_intervals", Value::Array(brackets)),
                    ("infinite_root", json!(f.has_infinite_root())),
                ],
                if exact { "exact" } else { "mixed" },
            )
        }
        InterlaceCmd::FromRoots { t } => {
            let t = fmt::root_tuple(t)?;
            let f = roots_to_poly(&t);
            obj(vec![("poly", poly_json(f.poly())), ("n", json!(f.n()))], "exact")
        }
        InterlaceCmd::Sep { f, g, n } => match g {
            None => {
                let f = polynomial(f, *n)?;
                obj(vec![("sep", fmt::float(sep(&f)))], "float")
            }
            Some(g) => {
                let l = pencil(&PencilArg { f: f.clone(), g: g.clone(), n: *n })?;
                let s = sep_pencil(&l);
                Output::Json {
                    fields: vec![
                        ("sep", fmt::float(s.value)),
                        ("theta", fmt::float(s.theta)),
                        ("certified", json!(s.certified)),
                    ],
                    mode: "float",
                    warnings: vec!["uncertified: pencil separation is a sampled estimate".to_string()],
                }
            }
        },
        InterlaceCmd::Canonical(a) => {
            let c = pencil_canonical(&pencil(a)?);
            obj(vec![("canonical", poly_json(c.poly())), ("roots", fmt::tuple(&poly_to_roots(&c)))], "exact")
        }
        InterlaceCmd::Project(a) => {
            let p = pencil_project(&pencil(a)?)?;
            obj(vec![("pencil", pencil_json(&p))], "exact")
        }
        InterlaceCmd::Member { pencil: a, root } => {
            let m = member_with_root(&pencil(a)?, &fmt::scalar(root)?);
            obj(vec![("member", poly_json(m.poly())), ("roots", fmt::tuple(&poly_to_roots(&m)))], "exact")
        }
        InterlaceCmd::Shift { poly, m } => {
            let f = polynomial(&poly.f, poly.n)?;
            let l = shift_pencil(&f, &fmt::scalar(m)?)?;
            obj(vec![("pencil", pencil_json(&l))], "exact")
        }
        InterlaceCmd::Stabilize { pencil: a, d } => {
            let (f, g) = pencil_polys(a)?;
            let big_n = stabilizing_shift(&f, &g, *d)?;
            Output::Json {
                fields: vec![("N", fmt::rat(&big_n))],
                mode: "mixed",
                warnings: vec!["uncertified: pencil separation is a sampled estimate".to_string()],
            }
        }
    })
}

fn charge_cmd(cmd: &ChargeCmd) -> Result<Output, CliError> {
    Ok(match cmd {
        ChargeCmd::Gamma { t, n } => {
            let v = match fmt::value(t)? {
                Value::String(s) if matches!(s.trim(), "inf" | "+inf" | "Infinity") => gamma_inf(*n),
                other => gamma(&fmt::rat_of(&other)?, *n),
            };
            obj(vec![("gamma", fmt::rats(v.coords()))], "exact")
        }
        ChargeCmd::Weights { t } => {
            let t = fmt::root_tuple(t)?;
            let b = reduced_charge(&t);
            obj(vec![("weights", fmt::rats(b.weights())), ("n", json!(b.n()))], "exact")
        }
        ChargeCmd::Eval { t, b, v } => {
            let b = match (t, b) {
                (Some(t), None) => reduced_charge(&fmt::root_tuple(t)?),
                (None, Some(b)) => charge(b)?,
                _ => return Err(usage("charge eval needs exactly one of --t and --b")),
            };
            let v = fmt::vector(v)?;
            obj(vec![("value", fmt::rat(&eval_charge(&b, &v)?))], "exact")
        }
        ChargeCmd::Poly { b } => {
            let p = poly_of_charge(&charge(b)?);
            obj(vec![("poly", poly_json(&p))], "exact")
        }
        ChargeCmd::OfPoly(a) => {
            let f = polynomial(&a.f, a.n)?;
            let b = charge_of_poly(&f);
            let (c, t) = b.param().cloned().expect("charge_of_poly records its parameters");
            obj(
                vec![("weights", fmt::rats(b.weights())), ("scalar", fmt::rat(&c)), ("t", fmt::tuple(&t))],
                "exact",
            )
        }
        ChargeCmd::InBn { b, d } => {
            let r = in_bn(&charge(b)?, *d);
            obj(
                vec![
                    ("member", json!(r.is_some())),
                    ("scalar", r.as_ref().map_or(Value::Null, |(c, _)| fmt::rat(c))),
                    ("t", r.as_ref().map_or(Value::Null, |(_, t)| fmt::tuple(t))),
                ],
                "exact",
            )
        }
        ChargeCmd::InUn { re, im, d } => {
            let z = central(re, im)?;
            let (member, est) = in_un_detail(&z, *d);
            let mut warnings = Vec::new();
            if est.is_some() {
                warnings.push("uncertified: pencil separation is a sampled estimate".to_string());
            }
            Output::Json {
                fields: vec![
                    ("member", json!(member)),
                    ("sep", est.map_or(Value::Null, |s| fmt::float(s.value))),
                ],
                mode: "mixed",
                warnings,
            }
        }
        ChargeCmd::Decompose { v, t } => {
            let dec = decompose(&fmt::vector(v)?, &fmt::root_tuple(t)?)?;
            let warnings = if dec.boundary {
                vec!["boundary: a coefficient is nonzero but below 1e-8".to_string()]
            } else {
                Vec::new()
            };
            Output::Json {
                fields: vec![
                    ("coeffs", fmt::rats(&dec.coeffs)),
                    ("verdict", json!(dec.verdict.name())),
                    ("boundary", json!(dec.boundary)),
                ],
                mode: "exact",
                warnings,
            }
        }
        ChargeCmd::Kernel { pencil: a, v } => {
            let t = kernel_parameter(&pencil(a)?, &fmt::vector(v)?)?;
            obj(vec![("t", fmt::tuple(&t))], "exact")
        }
    })
}

fn quadform(cmd: &QuadformCmd, ctx: &mut Ctx) -> Result<Output, CliError> {
    Ok(match cmd {
        QuadformCmd::Build { kind, f, g, n } => {
            let q = match kind {
                FormKind::Delta => {
                    let n = n.ok_or_else(|| usage("--kind delta needs --n"))?;
                    redstab_core::geometry::delta_form(n)?
                }
                FormKind::Line | FormKind::Tilde => {
                    let (Some(f), Some(g)) = (f, g) else {
                        return Err(usage("--kind line|tilde needs --f and --g"));
                    };
                    let l = pencil(&PencilArg { f: f.clone(), g: g.clone(), n: *n })?;
                    if *kind == FormKind::Line {
                        q_line(&l)?
                    } else {
                        q_tilde(&l)?
                    }
                }
            };
            obj(form_json(&q), "exact")
        }
        QuadformCmd::Verify { gram, pencil: a } => {
            let q = QuadraticForm::new(fmt::matrix(gram)?)?;
            let l = pencil(a)?;
            let samples = ctx.samples(100);
            let margin = ctx.tol(SUPPORT_MARGIN);
            let rep = verify_with(&q, &SupportSamples::new(&l, samples), margin);
            obj(
                vec![
                    ("passed", json!(rep.passed())),
                    ("vanishing", json!(rep.vanishing)),
                    ("max_residual", fmt::float(rep.max_residual)),
                    ("kernel_negative", json!(rep.kernel_negative)),
                    ("alternating", json!(rep.alternating)),
                    ("min_alternating", fmt::float(rep.min_alternating)),
                    ("witness", rep.witness.map_or(Value::Null, Value::String)),
                ],
                "mixed",
            )
        }
        QuadformCmd::Dual { gram } => {
            let q = dual_form(&QuadraticForm::new(fmt::matrix(gram)?)?)?;
            obj(vec![("gram", fmt::mat(q.gram()))], "exact")
        }
        QuadformCmd::Wq { gram, re, im } => {
            let q = QuadraticForm::new(fmt::matrix(gram)?)?;
            let r = in_wq(&central(re, im)?, &q)?;
            obj(
                vec![
                    ("member", json!(r.dual_criterion)),
                    ("dual_criterion", json!(r.dual_criterion)),
                    ("kernel_criterion", json!(r.kernel_criterion)),
                ],
                "exact",
            )
        }
        QuadformCmd::Deform { h, f1, f2, gram, d, big_n } => {
            let q = QuadraticForm::new(fmt::matrix(gram)?)?;
            let samples = ctx.samples(1000);
            let r = deform_form(
                &fmt::rat_list(h)?,
                &fmt::rat_list(f1)?,
                &fmt::rat_list(f2)?,
                &q,
                &fmt::scalar(d)?,
                &fmt::scalar(big_n)?,
                samples,
                ctx.seed,
            )?;
            let mut fields = form_json(&r.form);
            fields.extend([
                ("passed", json!(r.passed())),
                ("lambda", fmt::rat(&r.lambda)),
                ("D", fmt::rat(&r.big_d)),
                ("D1", fmt::rat(&r.d1)),
                ("D2", fmt::rat(&r.d2)),
                ("eps", fmt::rat(&r.eps)),
                ("kernel_checks", json!(r.kernel_checks)),
                ("kernel_pass", json!(r.kernel_pass)),
                ("neg_samples", json!(r.neg_samples)),
                ("containment_pass", json!(r.containment_pass)),
            ]);
            obj(fields, "exact")
        }
    })
}

fn geom(cmd: &GeomCmd, ctx: &mut Ctx) -> Result<Output, CliError> {
    Ok(match cmd {
        GeomCmd::Threefold(a) => {
            let p = threefold_params(a)?;
            let z = threefold_charge(&p)?;
            let (re, im) = threefold_roots(&p);
            obj(
                vec![
                    ("re", fmt::rats(z.re.weights())),
                    ("im", fmt::rats(z.im.weights())),
                    ("re_roots", fmt::floats(&re)),
                    ("im_roots", fmt::floats(&im)),
                ],
                "mixed",
            )
        }
        GeomCmd::Params { t } => {
            let p = params_from_tuples(&fmt::rat_list(t)?)?;
            let opt = |x: &Option<Rat>| x.as_ref().map_or(Value::Null, fmt::rat);
            obj(
                vec![("alpha", opt(&p.alpha)), ("beta", fmt::rat(&p.beta)), ("a", opt(&p.a)), ("b", opt(&p.b))],
                "exact",
            )
        }
        GeomCmd::Validity(a) => {
            let p = threefold_params(a)?;
            if !p.alpha.is_positive() {
                return Err(redstab_core::Error::InvalidParams("alpha must be positive".to_string()).into());
            }
            let (valid, inter) = validity_iff_interlaced(&p);
            obj(vec![("valid", json!(valid)), ("interlaced", json!(inter)), ("agree", json!(valid == inter))], "exact")
        }
        GeomCmd::Discriminants { v, beta, k } => {
            let v = fmt::vector(v)?;
            let beta = fmt::scalar(beta)?;
            let mut fields = vec![
                ("twisted", fmt::rats(twisted_vector(&v, &beta).coords())),
                ("delta", fmt::rat(&delta_h(&v)?)),
            ];
            if v.n() == 3 {
                fields.push(("nabla", fmt::rat(&nabla_beta(&v, &beta)?)));
                if let Some(k) = k {
                    fields.push(("q", fmt::rat(&q_k_beta(&v, &fmt::scalar(k)?, &beta)?)));
                }
            } else if k.is_some() {
                return Err(redstab_core::Error::AmbientMismatch { expected: 3, found: v.n() }.into());
            }
            obj(fields, "exact")
        }
        GeomCmd::Family { v, t, beta, k_lo, k_hi, natural } => {
            let v = fmt::vector(v)?;
            let t = fmt::root_tuple(t)?;
            let beta = match beta {
                Some(b) => fmt::scalar(b)?,
                None => t
                    .finite_entries()
                    .get(1)
                    .cloned()
                    .ok_or_else(|| usage("--beta is required when t has fewer than two finite entries"))?,
            };
            let interval = match (k_lo, k_hi, natural) {
                (Some(lo), Some(hi), false) => (fmt::scalar(lo)?, fmt::scalar(hi)?),
                (None, None, true) => natural_k_interval(&t)?,
                (None, None, false) => default_k_interval(&v, &beta)?,
                _ => return Err(usage("give both --k-lo and --k-hi, or --natural, or neither")),
            };
            let grid = ctx.samples(101);
            let r = family_equiv_check(&v, &t, interval, &beta, grid)?;
            let mut warnings = Vec::new();
            if r.boundary {
                warnings.push("boundary: a coefficient is nonzero but below 1e-8".to_string());
            }
            Output::Json {
                fields: vec![
                    ("verdict", json!(r.verdict.name())),
                    ("boundary", json!(r.boundary)),
                    ("family_nonneg", json!(r.family_nonneg)),
                    ("failing_k", r.failing_k.as_ref().map_or(Value::Null, fmt::rat)),
                    ("k_range", json!([fmt::rat(&r.k_range.0), fmt::rat(&r.k_range.1)])),
                    ("beta", fmt::rat(&beta)),
                    ("agree", json!(r.agree)),
                ],
                mode: "exact",
                warnings,
            }
        }
        GeomCmd::Abelian { gram, v, w, g, h } => {
            let lat = NsLattice::new(fmt::matrix(gram)?)?;
            let v = ns_vector(v)?;
            let mut fields = vec![("delta", fmt::rat(&ab_delta_self(&lat, &v)?))];
            if let Some(w) = w {
                let w = ns_vector(w)?;
                fields.push(("delta_w", fmt::rat(&ab_delta_self(&lat, &w)?)));
                fields.push(("delta_vw", fmt::rat(&ab_delta(&lat, &v, &w)?)));
                fields.push(("neg_def", json!(criterion_neg_def(&lat, &v, &w)?)));
                if let Some(h) = h {
                    fields.push(("restrict", json!(criterion_restrict(&lat, &v, &w, &fmt::rat_list(h)?)?)));
                }
            }
            if let Some(g) = g {
                let g = fmt::rat_list(g)?;
                let t = ab_twist(&lat, &v, &g)?;
                fields.push(("twist", ns_json(&t)));
                fields.push(("delta_twist", fmt::rat(&ab_delta_self(&lat, &t)?)));
                fields.push(("bayer_step", json!(criterion_bayer_step(&lat, &v, &g)?)));
            }
            obj(fields, "exact")
        }
    })
}

fn walls(cmd: &WallsCmd, ctx: &mut Ctx, format: Format) -> Result<Output, CliError> {
    Ok(match cmd {
        WallsCmd::Hilb { m, view } => {
            let (n, big_m) = hilb_bounds(*m)?;
            let view = viewport(view, plot::figure4_viewport())?;
            let samples = ctx.samples(200);
            if format != Format::Json {
                let locus = hilb_locus(*m, &view, samples)?;
                let p = plot::single(&locus, view, &format!("Sb_v for v = (1, 0, 0, -{m})"));
                return Ok(Output::Plot(p, Value::Null));
            }
            let lines = hilb_figure_lines(*m)?;
            let line = |(k, s, i): &(u64, Rat, Rat)| json!({ "K": k, "slope": fmt::rat(s), "intercept": fmt::rat(i) });
            let boundary = hilb_boundary(*m, 0.3, 10.0, samples)?;
            let locus = hilb_locus(*m, &view, samples)?;
            let mut warnings = Vec::new();
            if locus.is_empty() {
                warnings.push("EmptyLocus: no grid point of the viewport lies on the wall".to_string());
            }
            Output::Json {
                fields: vec![
                    ("m", json!(m)),
                    ("N", json!(n)),
                    ("M", json!(big_m)),
                    ("character", fmt::rats(redstab_core::walls::hilb_character(*m).coords())),
                    ("red_line", line(&lines[0])),
                    ("green_line", line(&lines[1])),
                    ("boundary_max_residual", fmt::float(boundary.max_residual())),
                    ("locus_points", json!(locus.points.len())),
                ],
                mode: "mixed",
                warnings,
            }
        }
        WallsCmd::Surface { v, view } => {
            let v = fmt::vector(v)?;
            let view = viewport(view, plot::figure1_viewport())?;
            let samples = ctx.samples(plot::FIGURE_SAMPLES);
            let locus = sb_v_surface(&v, &view, samples)?;
            locus_output(locus, view, "Sb_v on a polarized surface", format)
        }
        WallsCmd::Numerical { v, w, lo, hi } => {
            let samples = ctx.samples(200);
            let locus = numerical_wall(&fmt::vector(v)?, &fmt::vector(w)?, *lo, *hi, samples)?;
            let view = bounding_view(&locus);
            locus_output(locus, view, "Numerical wall", format)
        }
        WallsCmd::Plot { figure, m, c } => {
            let samples = ctx.samples(plot::FIGURE_SAMPLES);
            let p = match figure {
                1 => {
                    if m.is_some() {
                        return Err(usage("--m applies to figure 4"));
                    }
                    let c = match c {
                        Some(c) => fmt::scalar(c)?,
                        None => int(1),
                    };
                    plot::figure1(&c, samples)?
                }
                4 => {
                    if c.is_some() {
                        return Err(usage("--c applies to figure 1"));
                    }
                    plot::figure4(m.unwrap_or(plot::FIGURE4_M), samples)?
                }
                other => return Err(usage(format!("no figure {other}; choose 1 or 4"))),
            };
            Output::Plot(p, Value::Null)
        }
    })
}

fn bounding_view(l: &WallLocus) -> Viewport {
    let xs = l.points.iter().map(|p| p.x);
    let ys = l.points.iter().map(|p| p.y);
    let (x0, x1) = xs.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), x| (a.min(x), b.max(x)));
    let (y0, y1) = ys.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), y| (a.min(y), b.max(y)));
    let pad = |a: f64, b: f64| {
        if a.is_finite() && b.is_finite() {
            let p = ((b - a) * 0.1).max(1.0);
            (a - p, b + p)
        } else {
            (-10.0, 10.0)
        }
    };
    let (x0, x1) = pad(x0, x1);
    let (y0, y1) = pad(y0, y1);
    Viewport::new(x0, x1, y0, y1).expect("padded bounds are ordered")
}

fn locus_output(locus: WallLocus, view: Viewport, title: &str, format: Format) -> Output {
    if format != Format::Json {
        return Output::Plot(plot::single(&locus, view, title), Value::Null);
    }
    let warnings = if locus.is_empty() {
        vec![format!("EmptyLocus: {}", locus.description)]
    } else {
        Vec::new()
    };
    Output::Json { fields: vec![("locus", locus_json(&locus))], mode: "float", warnings }
}

fn restrict(cmd: &RestrictCmd) -> Result<Output, CliError> {
    Ok(match cmd {
        RestrictCmd::Xi { t, m } => {
            let t = fmt::root_tuple(t)?;
            let s = xi(&t, &fmt::scalar(m)?)?;
            obj(vec![("xi", fmt::floats(&finite_f64(&s))), ("tuple", fmt::tuple(&s)), ("n", json!(s.n()))], "mixed")
        }
        RestrictCmd::Chain { t, ms } => {
            let t = fmt::root_tuple(t)?;
            let ms = fmt::rat_list(ms)?;
            let s = xi_multi(&t, &ms)?;
            obj(vec![("xi", fmt::floats(&finite_f64(&s))), ("tuple", fmt::tuple(&s)), ("n", json!(s.n()))], "mixed")
        }
        RestrictCmd::Charge { re, im, m } => {
            let r = restrict_charge(&central(re, im)?, &fmt::scalar(m)?)?;
            Output::Json {
                fields: vec![
                    ("re", fmt::rats(r.z.re.weights())),
                    ("im", fmt::rats(r.z.im.weights())),
                    ("s", fmt::tuple(&r.s)),
                    ("t", fmt::tuple(&r.t)),
                    ("re_scalar", fmt::rat(&r.re_scalar)),
                    ("im_scalar", fmt::rat(&r.im_scalar)),
                    ("max_deviation", fmt::float(r.max_deviation)),
                ],
                mode: "mixed",
                warnings: vec!["uncertified: pencil separation is a sampled estimate".to_string()],
            }
        }
        RestrictCmd::Pushforward { n, m } => {
            if *n == 0 {
                return Err(redstab_core::Error::InvalidAmbient("ambient must be at least 1".to_string()).into());
            }
            let m = fmt::scalar(m)?;
            if !m.is_positive() {
                return Err(redstab_core::Error::InvalidParams("m must be positive".to_string()).into());
            }
            obj(vec![("matrix", fmt::mat(&pushforward_matrix(*n, &m)))], "exact")
        }
    })
}

fn finite_f64(t: &redstab_core::interlace::RootTuple) -> Vec<f64> {
    t.finite_entries().iter().map(to_f64).collect()
}

fn selftest(full: bool, only: Option<usize>, seed: u64) -> (Value, bool) {
    let scale = if full { Scale::full() } else { Scale::reduced() };
    let results = match only {
        Some(id) => vec![acceptance::run_one(id, &scale, seed)],
        None => acceptance::run_all(&scale, seed),
    };
    let passed = results.iter().filter(|r| r.passed).count();
    let ok = passed == results.len();
    let doc = json!({
        "scale": if full { "full" } else { "reduced" },
        "criteria": results.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
        "passed": passed,
        "failed": results.len() - passed,
        "all_passed": ok,
    });
    (doc, ok)
}

fn config_json(cli: &Cli, argv: &[String], resolved: Map<String, Value>) -> Value {
    let mut c = Map::new();
    c.insert("command".to_string(), json!(argv.iter().skip(1).take_while(|a| !a.starts_with('-')).cloned().collect::<Vec<_>>().join(" ")));
    c.insert("argv".to_string(), json!(argv.iter().skip(1).collect::<Vec<_>>()));
    c.insert("format".to_string(), json!(cli.format.name()));
    c.insert("seed".to_string(), json!(cli.seed));
    c.insert("tol".to_string(), cli.tol.map_or(Value::Null, fmt::float));
    c.insert("samples".to_string(), cli.samples.map_or(Value::Null, |s| json!(s)));
    c.insert("out".to_string(), cli.out.as_ref().map_or(Value::Null, |p| json!(p.display().to_string())));
    for (k, v) in resolved {
        c.insert(k, v);
    }
    Value::Object(c)
}

fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn error_doc(e: &CliError, config: Option<Value>) -> String {
    let mut m = Map::new();
    m.insert("error".to_string(), json!(e.name()));
    m.insert("message".to_string(), json!(e.to_string()));
    if let Some(c) = config {
        m.insert("config".to_string(), c);
    }
    render_json(&Value::Object(m))
}

/// Parse and execute, returning the exit status and the output document.
pub fn execute(argv: &[String]) -> (i32, String) {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return (0, e.to_string());
            }
            let err = usage(e.to_string());
            return (2, error_doc(&err, None));
        }
    };
    let mut ctx = Ctx { tol: cli.tol, samples: cli.samples, seed: cli.seed, resolved: Map::new() };
    if let Some(t) = cli.tol {
        if !(t.is_finite() && t > 0.0) {
            return (2, error_doc(&usage("--tol must be a positive finite number"), None));
        }
    }
    if cli.samples == Some(0) {
        return (2, error_doc(&usage("--samples must be positive"), None));
    }
    let is_walls = matches!(cli.command, Command::Walls(_));
    if cli.format != Format::Json && !is_walls {
        return (2, error_doc(&usage("--format csv|svg is only available for walls commands"), None));
    }
    if let Command::Selftest { full, only } = &cli.command {
        if let Some(id) = only {
            if !(1..=12).contains(id) {
                return (2, error_doc(&usage("--only takes a criterion id in 1..=12"), None));
            }
        }
        let (mut doc, ok) = selftest(*full, *only, cli.seed);
        doc["config"] = config_json(&cli, argv, Map::new());
        return (if ok { 0 } else { 1 }, render_json(&doc));
    }
    let result = match &cli.command {
        Command::Interlace(c) => interlace(c),
        Command::Charge(c) => charge_cmd(c),
        Command::Quadform(c) => quadform(c, &mut ctx),
        Command::Geom(c) => geom(c, &mut ctx),
        Command::Walls(c) => walls(c, &mut ctx, cli.format),
        Command::Restrict(c) => restrict(c),
        Command::Selftest { .. } => unreachable!("handled above"),
    };
    let config = config_json(&cli, argv, ctx.resolved);
    match result {
        Err(e) => (e.exit_code(), error_doc(&e, Some(config))),
        Ok(Output::Json { fields, mode, warnings }) => {
            let mut m = Map::new();
            for (k, v) in fields {
                m.insert(k.to_string(), v);
            }
            m.insert("mode".to_string(), json!(mode));
            m.insert("warnings".to_string(), json!(warnings));
            m.insert("config".to_string(), config);
            (0, render_json(&Value::Object(m)))
        }
        Ok(Output::Plot(p, _)) => match cli.format {
            Format::Svg => (0, plot::to_svg(&p)),
            Format::Csv => (0, plot::to_csv(&p)),
            Format::Json => {
                let layers: Vec<Value> = p
                    .layers
                    .iter()
                    .map(|l| {
                        json!({
                            "label": l.label,
                            "color": l.color,
                            "points": l.points.iter().map(|q| json!([fmt::float(q.x), fmt::float(q.y), fmt::float(q.residual)])).collect::<Vec<_>>(),
                        })
                    })
                    .collect();
                let (x, y) = p.coords.axes();
                let mut m = Map::new();
                m.insert("title".to_string(), json!(p.title));
                m.insert("coords".to_string(), json!(p.coords.name()));
                m.insert("axes".to_string(), json!([x, y]));
                m.insert(
                    "viewport".to_string(),
                    fmt::floats(&[p.view.x_min, p.view.x_max, p.view.y_min, p.view.y_max]),
                );
                m.insert("layers".to_string(), Value::Array(layers));
                m.insert("mode".to_string(), json!("float"));
                m.insert("warnings".to_string(), json!(p.warnings()));
                m.insert("config".to_string(), config);
                (0, render_json(&Value::Object(m)))
            }
        },
    }
}

/// Entry point used by the binary: writes the document to stdout or
/// `--out` and returns the exit status.
pub fn run(argv: Vec<String>) -> i32 {
    let (code, doc) = execute(&argv);
    let target = argv
        .iter()
        .enumerate()
        .find_map(|(i, a)| {
            if a == "--out" {
                argv.get(i + 1).cloned()
            } else {
                a.strip_prefix("--out=").map(str::to_string)
            }
        });
    match target {
        Some(path) if code == 0 => {
            if let Err(e) = fs::write(&path, doc.as_bytes()) {
                let err = CliError::Io(e);
                print!("{}", error_doc(&err, None));
                return err.exit_code();
            }
        }
        _ => print!("{doc}"),
    }
    code
}
