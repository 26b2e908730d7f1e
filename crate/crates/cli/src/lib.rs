//! Command-line front end for the skein module library.
//!
//! Exit status: 0 on success, 1 when a computation fails or a check
//! disagrees, 2 for usage and parse errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use kbsm::characters::{character_eval, goldman_numeric, parse_rep, TorusRep};
use kbsm::diagram::{parse_diagram, Multicurve, SurfaceKind};
use kbsm::format::{parse_combination, write_element, write_table, write_valuation};
use kbsm::invariants::{
    cable, fti_coefficients, fti_valuation, jones, jones_laurent, parse_singular, singular_normal_form,
    span_check_bounded, FramedKnot, OrientedDiagram, SingularLink,
};
use kbsm::poisson::{poisson_commutator, poisson_statesum, primitive_classes, CharacterElement};
use kbsm::rings::LaurentPolynomial;
use kbsm::skein::{
    bracket_resolve_bounded, normal_form_bounded, skein_mul_bounded, Coefficient, SkeinElement,
};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub const ORDER_ENV: &str = "KBSM_ORDER";

/// Tolerance for comparing the character value of the bracket with the
/// numeric Goldman bracket.
const CLOSURE_TOL: f64 = 1e-8;

#[derive(Parser, Debug)]
#[command(name = "kbsm", version, about = "Kauffman bracket skein modules of the disk, annulus and torus")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Output style.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    pub format: OutputFormat,
    /// Coefficients as Laurent polynomials in A or as series in h.
    #[arg(long, value_enum, default_value_t = CoeffMode::Laurent, global = true)]
    pub coeff: CoeffMode,
    /// Truncation order for series in h.
    #[arg(short = 'N', long = "order", env = ORDER_ENV, default_value_t = 8, global = true)]
    pub order: usize,
    #[arg(long, default_value_t = 24, global = true)]
    pub max_crossings: usize,
    #[arg(long, default_value_t = 12, global = true)]
    pub max_double_points: usize,
    #[arg(long, default_value_t = 6, global = true)]
    pub max_degree: u32,
    /// Seed for random representations.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Machine,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoeffMode {
    Laurent,
    Hseries,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Statesum,
    Commutator,
    Both,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SurfaceArg {
    Disk,
    Annulus,
    Torus,
}

impl From<SurfaceArg> for SurfaceKind {
    fn from(s: SurfaceArg) -> Self {
        match s {
            SurfaceArg::Disk => SurfaceKind::Disk,
            SurfaceArg::Annulus => SurfaceKind::Annulus,
            SurfaceArg::Torus => SurfaceKind::Torus,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// State-sum bracket of a diagram file.
    Bracket { diagram: PathBuf },
    /// Normal form of a combination of diagrams (`term <series>` blocks).
    NormalForm { combination: PathBuf },
    /// Stacking product of two multicurves.
    Product {
        x: String,
        y: String,
        #[arg(long, value_enum)]
        surface: Option<SurfaceArg>,
    },
    /// Poisson bracket of two multicurves.
    Poisson {
        x: String,
        y: String,
        #[arg(long, value_enum, default_value_t = Method::Statesum)]
        method: Method,
        #[arg(long, value_enum)]
        surface: Option<SurfaceArg>,
    },
    /// Compares both Poisson brackets on every pair of primitive torus classes.
    QuantizeCheck {
        #[arg(long, default_value_t = 3)]
        max_slope: i64,
    },
    /// Numeric Goldman bracket of two torus classes against the character
    /// value of their Poisson bracket.
    Goldman {
        x: String,
        y: String,
        /// Representation fixture; a seeded random one otherwise.
        #[arg(long)]
        rep: Option<PathBuf>,
    },
    /// Finite-type data of a singular link file.
    Fti {
        link: PathBuf,
        #[arg(long, conflicts_with = "table")]
        valuation: bool,
        #[arg(long)]
        table: bool,
    },
    /// Writhe and Jones polynomial of a disk diagram.
    Jones {
        diagram: PathBuf,
        /// Components (0-based) to reverse before computing.
        #[arg(long, value_delimiter = ',')]
        reverse: Vec<usize>,
    },
    /// Cable of framed knots, given as `<knot>:<count>` with knots written
    /// as multicurves or `unknot`.
    Cable {
        #[arg(required = true)]
        items: Vec<String>,
        #[arg(long, value_enum)]
        surface: Option<SurfaceArg>,
    },
    /// Expresses a torus multicurve through products of generators.
    Span {
        #[arg(long)]
        generators: String,
        #[arg(long)]
        target: String,
        #[arg(long, default_value_t = 3)]
        degree: u32,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{stage}: {message}")]
    Input { stage: &'static str, message: String },
    #[error("{stage}: {message}")]
    Compute { stage: &'static str, message: String },
    #[error("{0}")]
    Check(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input { .. } => 2,
            CliError::Compute { .. } | CliError::Check(_) => 1,
        }
    }
}

fn input(stage: &'static str, e: impl std::fmt::Display) -> CliError {
    CliError::Input {
        stage,
        message: e.to_string(),
    }
}

fn compute(stage: &'static str, e: impl std::fmt::Display) -> CliError {
    CliError::Compute {
        stage,
        message: e.to_string(),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| input("read", format!("{}: {e}", path.display())))
}

fn with_path(path: &Path, e: impl std::fmt::Display) -> String {
    format!("{}: {e}", path.display())
}

fn parse_multicurve(text: &str) -> Result<Multicurve, CliError> {
    text.parse::<Multicurve>().map_err(|e| input("parse", e))
}

/// Surface implied by the multicurves, else `explicit`, else the torus.
fn infer_surface(curves: &[Multicurve], explicit: Option<SurfaceArg>) -> Result<SurfaceKind, CliError> {
    let mut found = explicit.map(SurfaceKind::from);
    for m in curves {
        if let Some(s) = m.surface() {
            match found {
                Some(f) if f != s => return Err(input("parse", format!("{m} does not lie on the {f}"))),
                _ => found = Some(s),
            }
        }
    }
    Ok(found.unwrap_or(SurfaceKind::Torus))
}

/// Splits a list like `(1,0), (0,1) (1,1)` at commas and whitespace outside
/// parentheses.
fn split_list(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut depth = 0;
    for ch in text.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if depth == 0 && (ch == ',' || ch == ';' || ch.is_whitespace()) {
            if !cur.is_empty() {
                out.push(std::mem::take(&mut cur));
            }
        } else {
            cur.push(ch);
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

struct Ctx<'a> {
    common: &'a Common,
    out: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn machine(&self) -> bool {
        self.common.format == OutputFormat::Machine
    }

    fn line(&mut self, s: impl AsRef<str>) -> Result<(), CliError> {
        writeln!(self.out, "{}", s.as_ref()).map_err(|e| compute("write", e))
    }

    fn raw(&mut self, s: &str) -> Result<(), CliError> {
        self.out.write_all(s.as_bytes()).map_err(|e| compute("write", e))
    }

    fn element<C: Coefficient>(&mut self, x: &SkeinElement<C>) -> Result<(), CliError> {
        if self.machine() {
            self.raw(&write_element(x))
        } else {
            self.line(x.to_string())
        }
    }

    fn laurent_element(&mut self, x: &SkeinElement<LaurentPolynomial>) -> Result<(), CliError> {
        match self.common.coeff {
            CoeffMode::Laurent => self.element(x),
            CoeffMode::Hseries => self.element(&x.expand(self.common.order)),
        }
    }
}

fn complex_text(z: Complex64) -> String {
    format!("{:.12}{:+.12}i", z.re, z.im)
}

fn bracket(ctx: &mut Ctx, path: &Path) -> Result<(), CliError> {
    let d = parse_diagram(&read(path)?).map_err(|e| input("parse", with_path(path, e)))?;
    let b = bracket_resolve_bounded(&d, ctx.common.max_crossings).map_err(|e| compute("bracket", e))?;
    ctx.laurent_element(&b)
}

fn normal_form_cmd(ctx: &mut Ctx, path: &Path) -> Result<(), CliError> {
    let combo = parse_combination(&read(path)?, ctx.common.order).map_err(|e| input("parse", with_path(path, e)))?;
    let nf = normal_form_bounded(&combo, ctx.common.order, ctx.common.max_crossings)
        .map_err(|e| compute("normal-form", e))?;
    ctx.element(&nf)
}

fn product(ctx: &mut Ctx, x: &str, y: &str, surface: Option<SurfaceArg>) -> Result<(), CliError> {
    let (x, y) = (parse_multicurve(x)?, parse_multicurve(y)?);
    let s = infer_surface(&[x, y], surface)?;
    let one = |m| SkeinElement::basis(s, m, LaurentPolynomial::one());
    let p = skein_mul_bounded(&one(x), &one(y), ctx.common.max_crossings).map_err(|e| compute("product", e))?;
    ctx.laurent_element(&p)
}

fn poisson(ctx: &mut Ctx, x: &str, y: &str, method: Method, surface: Option<SurfaceArg>) -> Result<(), CliError> {
    let (x, y) = (parse_multicurve(x)?, parse_multicurve(y)?);
    let s = infer_surface(&[x, y], surface)?;
    let order = ctx.common.order.max(1);
    let statesum = || poisson_statesum(s, &x, &y).map_err(|e| compute("poisson statesum", e));
    let commutator = || poisson_commutator(s, &x, &y, order).map_err(|e| compute("poisson commutator", e));
    let show = |ctx: &mut Ctx, label: &str, v: &CharacterElement| -> Result<(), CliError> {
        if ctx.machine() {
            ctx.line(format!("result\t{label}"))?;
            ctx.element(v)
        } else {
            ctx.line(format!("{label}: {v}"))
        }
    };
    match method {
        Method::Statesum => show(ctx, "statesum", &statesum()?),
        Method::Commutator => show(ctx, "commutator", &commutator()?),
        Method::Both => {
            let (a, b) = (statesum()?, commutator()?);
            show(ctx, "statesum", &a)?;
            show(ctx, "commutator", &b)?;
            let verdict = if a == b { "AGREE" } else { "DISAGREE" };
            ctx.line(if ctx.machine() { format!("verdict\t{verdict}") } else { verdict.to_string() })?;
            if a != b {
                return Err(CliError::Check("state-sum and commutator brackets disagree".into()));
            }
            Ok(())
        }
    }
}

fn quantize_check(ctx: &mut Ctx, max_slope: i64) -> Result<(), CliError> {
    let classes = primitive_classes(max_slope);
    let order = ctx.common.order.max(1);
    let mut agree = 0;
    let mut total = 0;
    for a in &classes {
        for b in &classes {
            let s = poisson_statesum(SurfaceKind::Torus, a, b).map_err(|e| compute("poisson statesum", e))?;
            let c = poisson_commutator(SurfaceKind::Torus, a, b, order).map_err(|e| compute("poisson commutator", e))?;
            let verdict = if s == c { "AGREE" } else { "DISAGREE" };
            total += 1;
            if s == c {
                agree += 1;
            }
            if ctx.machine() {
                ctx.line(format!("pair\t{a}\t{b}\t{verdict}"))?;
            } else {
                ctx.line(format!("{a} {b} {verdict}"))?;
            }
        }
    }
    if ctx.machine() {
        ctx.line(format!("summary\t{total}\t{agree}"))?;
    } else {
        ctx.line(format!("{agree} of {total} ordered pairs agree"))?;
    }
    if agree != total {
        return Err(CliError::Check(format!("{} pairs disagree", total - agree)));
    }
    Ok(())
}

fn torus_class(m: &Multicurve) -> Result<(i64, i64), CliError> {
    match *m {
        Multicurve::Torus { p, q, m: 1 } => Ok((p, q)),
        _ => Err(input("parse", format!("{m} is not a primitive torus class"))),
    }
}

fn goldman(ctx: &mut Ctx, x: &str, y: &str, rep: Option<&Path>) -> Result<(), CliError> {
    let (xm, ym) = (parse_multicurve(x)?, parse_multicurve(y)?);
    let (a, b) = (torus_class(&xm)?, torus_class(&ym)?);
    let rho = match rep {
        Some(p) => parse_rep(&read(p)?).map_err(|e| input("parse", with_path(p, e)))?,
        None => TorusRep::random(&mut ChaCha8Rng::seed_from_u64(ctx.common.seed)),
    };
    let g = goldman_numeric(a, b, &rho);
    let bracket = poisson_statesum(SurfaceKind::Torus, &xm, &ym).map_err(|e| compute("poisson statesum", e))?;
    let c = character_eval(&bracket, &rho);
    let ok = (g - c).norm() <= CLOSURE_TOL;
    let verdict = if ok { "AGREE" } else { "DISAGREE" };
    if ctx.machine() {
        ctx.line(format!("value\tgoldman\t{:e}\t{:e}", g.re, g.im))?;
        ctx.line(format!("value\tcharacter\t{:e}\t{:e}", c.re, c.im))?;
        ctx.line(format!("verdict\t{verdict}"))?;
    } else {
        ctx.line(format!("goldman:   {}", complex_text(g)))?;
        ctx.line(format!("character: {}", complex_text(c)))?;
        ctx.line(verdict)?;
    }
    if !ok {
        return Err(CliError::Check("Goldman bracket and character value disagree".into()));
    }
    Ok(())
}

fn fti(ctx: &mut Ctx, path: &Path, table: bool) -> Result<(), CliError> {
    let s: SingularLink = parse_singular(&read(path)?).map_err(|e| input("parse", with_path(path, e)))?;
    if s.order() > ctx.common.max_double_points {
        return Err(compute(
            "resolve",
            format!("{} double points exceed the bound of {}", s.order(), ctx.common.max_double_points),
        ));
    }
    let order = ctx.common.order;
    if order < s.order() {
        return Err(input(
            "arguments",
            format!("truncation order {order} is below the number of double points {}", s.order()),
        ));
    }
    if table {
        let nf = singular_normal_form(&s, order).map_err(|e| compute("normal-form", e))?;
        let t = fti_coefficients(&nf, order);
        if ctx.machine() {
            ctx.raw(&write_table(&t))
        } else {
            ctx.raw(&t.to_string())
        }
    } else {
        let v = fti_valuation(&s, order).map_err(|e| compute("valuation", e))?;
        if ctx.machine() {
            ctx.raw(&write_valuation(v))
        } else {
            ctx.line(format!("valuation {v}"))
        }
    }
}

fn jones_cmd(ctx: &mut Ctx, path: &Path, reverse: &[usize]) -> Result<(), CliError> {
    let d = parse_diagram(&read(path)?).map_err(|e| input("parse", with_path(path, e)))?;
    if d.num_crossings() > ctx.common.max_crossings {
        return Err(compute(
            "bracket",
            format!("{} crossings exceed the bound of {}", d.num_crossings(), ctx.common.max_crossings),
        ));
    }
    let mut od = OrientedDiagram::new(d).map_err(|e| input("orient", e))?;
    for &k in reverse {
        if k >= od.num_components() {
            return Err(input("orient", format!("no component {k} (diagram has {})", od.num_components())));
        }
        od = od.reversed(k);
    }
    let w = od.writhe();
    let value = match ctx.common.coeff {
        CoeffMode::Laurent => jones_laurent(&od).map_err(|e| compute("jones", e))?.to_string(),
        CoeffMode::Hseries => jones(&od, ctx.common.order).map_err(|e| compute("jones", e))?.to_string(),
    };
    if ctx.machine() {
        ctx.line(format!("writhe\t{w}"))?;
        ctx.line(format!("jones\t{value}"))
    } else {
        ctx.line(format!("writhe: {w}"))?;
        ctx.line(format!("J: {value}"))
    }
}

fn cable_cmd(ctx: &mut Ctx, items: &[String], surface: Option<SurfaceArg>) -> Result<(), CliError> {
    let mut knots = Vec::new();
    let mut counts = Vec::new();
    for item in items.iter().flat_map(|s| split_list(s)) {
        let (k, n) = item
            .rsplit_once(':')
            .ok_or_else(|| input("parse", format!("expected `<knot>:<count>`, found `{item}`")))?;
        let n: u32 = n.parse().map_err(|_| input("parse", format!("bad count in `{item}`")))?;
        let knot = if k == "unknot" {
            FramedKnot::Unknot
        } else {
            FramedKnot::curve(parse_multicurve(k)?).map_err(|e| input("parse", e))?
        };
        knots.push(knot);
        counts.push(n);
    }
    let curves: Vec<Multicurve> = knots
        .iter()
        .filter_map(|k| match k {
            FramedKnot::Curve(m) => Some(*m),
            FramedKnot::Unknot => None,
        })
        .collect();
    let s = if curves.is_empty() {
        surface.map_or(SurfaceKind::Disk, SurfaceKind::from)
    } else {
        infer_surface(&curves, surface)?
    };
    let x = cable(s, &knots, &counts).map_err(|e| compute("cable", e))?;
    ctx.laurent_element(&x)
}

fn span(ctx: &mut Ctx, generators: &str, target: &str, degree: u32) -> Result<(), CliError> {
    let gens = split_list(generators)
        .iter()
        .map(|g| parse_multicurve(g))
        .collect::<Result<Vec<_>, _>>()?;
    if gens.is_empty() {
        return Err(input("parse", "no generators given"));
    }
    let target = parse_multicurve(target)?;
    infer_surface(&gens, Some(SurfaceArg::Torus))?;
    let order = ctx.common.order;
    let w = span_check_bounded(&gens, &target, degree, order, ctx.common.max_degree).map_err(|e| match e {
        kbsm::invariants::InvariantError::NotAKnot(_) | kbsm::invariants::InvariantError::DegreeBound { .. } => {
            input("span", e)
        }
        other => compute("span", other),
    })?;
    match w {
        Some(w) => {
            if ctx.machine() {
                ctx.line(format!("witness\t{}", w.to_prefix()))?;
                for (c, e) in &w.terms {
                    let e: Vec<String> = e.iter().map(u32::to_string).collect();
                    ctx.line(format!("coef\t{}\t{c}", e.join(",")))?;
                }
                Ok(())
            } else {
                ctx.line(w.to_prefix())
            }
        }
        None => {
            let msg = format!("{target} is not a combination of degree <= {degree} products of the generators");
            if ctx.machine() {
                ctx.line("failure\tspan")?;
            }
            Err(compute("span", msg))
        }
    }
}

/// Runs a parsed invocation, writing results to `out`.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let mut ctx = Ctx {
        common: &cli.common,
        out,
    };
    match &cli.command {
        Command::Bracket { diagram } => bracket(&mut ctx, diagram),
        Command::NormalForm { combination } => normal_form_cmd(&mut ctx, combination),
        Command::Product { x, y, surface } => product(&mut ctx, x, y, *surface),
        Command::Poisson { x, y, method, surface } => poisson(&mut ctx, x, y, *method, *surface),
        Command::QuantizeCheck { max_slope } => quantize_check(&mut ctx, *max_slope),
        Command::Goldman { x, y, rep } => goldman(&mut ctx, x, y, rep.as_deref()),
        Command::Fti { link, table, .. } => fti(&mut ctx, link, *table),
        Command::Jones { diagram, reverse } => jones_cmd(&mut ctx, diagram, reverse),
        Command::Cable { items, surface } => cable_cmd(&mut ctx, items, *surface),
        Command::Span {
            generators,
            target,
            degree,
        } => span(&mut ctx, generators, target, *degree),
    }
}

/// Parses arguments and runs; returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lists_split_outside_parentheses() {
        assert_eq!(split_list("(1,0), (0,1) (1,1)"), ["(1,0)", "(0,1)", "(1,1)"]);
        assert_eq!(split_list("z;z^2"), ["z", "z^2"]);
        assert!(split_list("  ").is_empty());
    }

    #[test]
    fn surface_inference() {
        let z = parse_multicurve("z").unwrap();
        let t = parse_multicurve("(1,0)").unwrap();
        assert_eq!(infer_surface(&[z], None).unwrap(), SurfaceKind::Annulus);
        assert_eq!(infer_surface(&[Multicurve::Empty], None).unwrap(), SurfaceKind::Torus);
        assert_eq!(
            infer_surface(&[Multicurve::Empty], Some(SurfaceArg::Disk)).unwrap(),
            SurfaceKind::Disk
        );
        assert_eq!(infer_surface(&[z, t], None).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn exit_codes() {
        let run_args = |args: &[&str]| {
            let (mut out, mut err) = (Vec::new(), Vec::new());
            run(args.iter().copied(), &mut out, &mut err)
        };
        assert_eq!(run_args(&["kbsm", "product", "(1,0)", "(0,1)"]), 0);
        assert_eq!(run_args(&["kbsm", "product", "(1,0)"]), 2);
        assert_eq!(run_args(&["kbsm", "span", "--generators", "(1,0)", "--target", "(2,1)", "-N", "1"]), 1);
        assert_eq!(run_args(&["kbsm", "--help"]), 0);
    }
}
