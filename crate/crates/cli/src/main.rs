//! `lambdag`: root systems, affine Hecke operators, Macdonald polynomials
//! and graded multiplicities in the exterior algebra, from the command line.

use clap::{Args, Parser, Subcommand, ValueEnum};
use lambdag::gradedmult::{self, GradedMultiplicity};
use lambdag::groupalg::AlgebraElement;
use lambdag::hecke;
use lambdag::macdonald;
use lambdag::rootsys::{RootSystem, Weight};
use lambdag::scalar;
use lambdag::verify::{self, VerifyConfig};
use lambdag::weyl::symmetric_decomposition_of_s_theta;
use lambdag::Error;
use serde_json::json;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "lambdag",
    about = "Exact computations with root systems, Hecke operators, Macdonald \
             polynomials and graded multiplicities in the exterior algebra"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Roots, highest (short) root and exponents of a type
    Roots(RootsArgs),
    /// The symmetric reduced decomposition of s_theta and its root chain
    Weyl(WeylArgs),
    /// Apply Hecke operators or run the closed-form checks
    Hecke(HeckeArgs),
    /// Scalar-product ratios and their identities
    Scalar(ScalarArgs),
    /// Macdonald polynomial at t = q^{-k/2}
    Macdonald(MacdonaldArgs),
    /// Graded multiplicities of small representations in the exterior algebra
    Gm(GmArgs),
    /// Run the consistency-check battery
    Verify(VerifyArgs),
}

#[derive(Args)]
struct RootsArgs {
    #[arg(long = "type")]
    type_label: String,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct WeylArgs {
    #[arg(long = "type")]
    type_label: String,
    /// Emit the symmetric word for s_theta and its chain
    #[arg(long = "s-theta", default_value_t = true)]
    s_theta: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct HeckeArgs {
    #[arg(long = "type")]
    type_label: String,
    /// Operator to apply (currently: Y_theta_dual)
    #[arg(long)]
    apply: Option<String>,
    /// Input element, e.g. "e[1,0]"
    #[arg(long)]
    to: Option<String>,
    /// Named check suite (currently: proposition)
    #[arg(long)]
    check: Option<String>,
}

#[derive(Args)]
struct ScalarArgs {
    #[arg(long = "type")]
    type_label: String,
    #[arg(short)]
    k: u32,
    /// Print (f, 1)/(1, 1) for f = e^mu, input as "e[coords]"
    #[arg(long)]
    ratio: Option<String>,
    /// Identity suite to run
    #[arg(long, value_enum)]
    verify: Option<ScalarCheck>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScalarCheck {
    Theorem2,
    Unitarity,
    Convexity,
}

#[derive(Args)]
struct MacdonaldArgs {
    #[arg(long = "type")]
    type_label: String,
    #[arg(short)]
    k: u32,
    /// Dominant weight in fundamental-weight coordinates, e.g. "1,0"
    #[arg(long)]
    lambda: String,
}

#[derive(Args)]
struct GmArgs {
    #[arg(long = "type")]
    type_label: String,
    #[arg(long, value_enum, default_value_t = GmLambda::All)]
    lambda: GmLambda,
    #[arg(long, value_enum, default_value_t = GmMethod::CrossCheck)]
    method: GmMethod,
    #[arg(long)]
    json: bool,
    #[arg(long)]
    latex: bool,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum GmLambda {
    Zero,
    Theta,
    ThetaS,
    All,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum GmMethod {
    Oracle,
    Macdonald,
    Formula,
    CrossCheck,
}

#[derive(Args)]
struct VerifyArgs {
    /// Run every check
    #[arg(long)]
    all: bool,
    /// Comma-separated type labels (default: the standard suite)
    #[arg(long, value_delimiter = ',')]
    types: Vec<String>,
    #[arg(long, default_value_t = 0x5eed)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    hecke_samples: usize,
    #[arg(long, default_value_t = 50)]
    unitarity_samples: usize,
}

fn parse_weight(s: &str, rank: usize) -> Result<Weight, Error> {
    let inner = s
        .trim()
        .strip_prefix("e[")
        .and_then(|x| x.strip_suffix(']'))
        .unwrap_or(s.trim());
    let coords: Result<Vec<i64>, _> = inner.split(',').map(|x| x.trim().parse()).collect();
    match coords {
        Ok(v) if v.len() == rank => Ok(v),
        _ => Err(Error::Unsupported(format!(
            "cannot parse '{s}' as a rank-{rank} weight"
        ))),
    }
}

fn latex_poly(gm: &GradedMultiplicity) -> String {
    if gm.poly.is_empty() {
        return "0".to_string();
    }
    let mut parts = Vec::new();
    for (&e, &c) in &gm.poly {
        let mono = match e {
            0 => String::new(),
            1 => "q".to_string(),
            _ => format!("q^{{{e}}}"),
        };
        let part = if mono.is_empty() {
            c.to_string()
        } else if c == 1 {
            mono
        } else {
            format!("{c}{mono}")
        };
        parts.push(part);
    }
    parts.join(" + ")
}

fn text_poly(gm: &GradedMultiplicity) -> String {
    if gm.poly.is_empty() {
        return "0".to_string();
    }
    let mut parts = Vec::new();
    for (&e, &c) in &gm.poly {
        let mono = match e {
            0 => String::new(),
            1 => "q".to_string(),
            _ => format!("q^{e}"),
        };
        let part = if mono.is_empty() {
            c.to_string()
        } else if c == 1 {
            mono
        } else {
            format!("{c}*{mono}")
        };
        parts.push(part);
    }
    parts.join(" + ")
}

fn cmd_roots(a: &RootsArgs) -> Result<u8, Error> {
    let rs = RootSystem::new(&a.type_label)?;
    let data = rs.exponent_data();
    if a.json {
        let out = json!({
            "type": rs.label.to_string(),
            "roots": rs.roots,
            "theta": rs.theta,
            "theta_s": rs.theta_s,
            "exponents": data.exponents,
            "short_exponents": data.short_exponents,
        });
        println!("{}", serde_json::to_string_pretty(&out).unwrap());
    } else {
        println!("type {}", rs.label);
        println!("positive roots ({}):", rs.positive_roots.len());
        for b in &rs.positive_roots {
            let kind = if rs.lambda == 1 {
                ""
            } else if rs.is_short(b) {
                " short"
            } else {
                " long"
            };
            println!("  {:?}  ht {}{}", b, rs.height(b), kind);
        }
        println!("theta   {:?}", rs.theta);
        match &rs.theta_s {
            Some(t) => println!("theta_s {t:?}"),
            None => println!("theta_s (none: simply laced)"),
        }
        println!("exponents {:?}", data.exponents);
        if !data.short_exponents.is_empty() {
            println!("short exponents {:?}", data.short_exponents);
        }
    }
    Ok(0)
}

fn cmd_weyl(a: &WeylArgs) -> Result<u8, Error> {
    let rs = RootSystem::new(&a.type_label)?;
    let rc = symmetric_decomposition_of_s_theta(&rs);
    if a.json {
        let chain: Vec<_> = (-rc.p..=rc.p)
            .map(|i| {
                json!({
                    "index": i,
                    "root": rc.alpha(i),
                    "height": rs.height(rc.alpha(i)),
                    "short": rs.is_short(rc.alpha(i)),
                })
            })
            .collect();
        let out = json!({
            "type": rs.label.to_string(),
            "p": rc.p,
            "word": rc.word(),
            "chain": chain,
        });
        println!("{}", serde_json::to_string_pretty(&out).unwrap());
    } else {
        println!("type {}  p = {}", rs.label, rc.p);
        println!("word for s_theta: {:?}", rc.word());
        for i in -rc.p..=rc.p {
            let b = rc.alpha(i);
            let kind = if rs.lambda == 1 {
                ""
            } else if rs.is_short(b) {
                " short"
            } else {
                " long"
            };
            println!("  alpha^({i})  {:?}  ht {}{}", b, rs.height(b), kind);
        }
    }
    Ok(0)
}

fn cmd_hecke(a: &HeckeArgs) -> Result<u8, Error> {
    let rs = RootSystem::new(&a.type_label)?;
    if let Some(op) = &a.apply {
        if op != "Y_theta_dual" {
            return Err(Error::Unsupported(format!("unknown operator '{op}'")));
        }
        let to = a.to.as_deref().ok_or_else(|| {
            Error::Unsupported("--apply needs --to \"e[coords]\"".to_string())
        })?;
        let mu = parse_weight(to, rs.rank)?;
        let y = hecke::build_y_theta_dual(&rs);
        println!("{}", y.apply(&rs, &AlgebraElement::exp(mu)));
        return Ok(0);
    }
    if let Some(check) = &a.check {
        if check != "proposition" {
            return Err(Error::Unsupported(format!("unknown check '{check}'")));
        }
        let failures = hecke::verify_proposition(&rs)?;
        return report("Y^theta closed forms", &failures);
    }
    Err(Error::Unsupported(
        "hecke needs --apply or --check".to_string(),
    ))
}

fn report(name: &str, failures: &[String]) -> Result<u8, Error> {
    if failures.is_empty() {
        println!("{name}: pass");
        Ok(0)
    } else {
        println!("{name}: FAIL");
        for f in failures {
            println!("  {f}");
        }
        Ok(1)
    }
}

fn cmd_scalar(a: &ScalarArgs) -> Result<u8, Error> {
    let rs = RootSystem::new(&a.type_label)?;
    if let Some(expr) = &a.ratio {
        let mu = parse_weight(expr, rs.rank)?;
        let r = scalar::cherednik_ratio(&rs, &AlgebraElement::exp(mu), a.k)?;
        println!("{r}");
        return Ok(0);
    }
    match a.verify {
        Some(ScalarCheck::Theorem2) => {
            report("ratio formulas", &scalar::verify_ratio_formulas(&rs, a.k)?)
        }
        Some(ScalarCheck::Unitarity) => report(
            "unitarity",
            &scalar::verify_unitarity(&rs, a.k, 2, 50, 0x5eed)?,
        ),
        Some(ScalarCheck::Convexity) => {
            report("convexity", &scalar::verify_convexity(&rs, a.k)?)
        }
        None => Err(Error::Unsupported(
            "scalar needs --ratio or --verify".to_string(),
        )),
    }
}

fn cmd_macdonald(a: &MacdonaldArgs) -> Result<u8, Error> {
    let rs = RootSystem::new(&a.type_label)?;
    let lambda = parse_weight(&a.lambda, rs.rank)?;
    let p = macdonald::macdonald_poly(&rs, &lambda, a.k)?;
    println!("P_{:?} at k = {}", p.lambda, p.k);
    println!("in e^mu: {}", p.expansion);
    let doms = macdonald::dominants_leq(&rs, &lambda)?;
    let parts: Vec<String> = doms
        .iter()
        .rev()
        .filter_map(|mu| {
            let c = p.m_coeff(mu);
            if c.is_zero() {
                None
            } else if c.is_one() {
                Some(format!("m{mu:?}"))
            } else {
                Some(format!("({c})*m{mu:?}"))
            }
        })
        .collect();
    println!("in m_mu: {}", parts.join(" + "));
    Ok(0)
}

fn gm_weights(rs: &RootSystem, which: GmLambda) -> Result<Vec<Weight>, Error> {
    let mut out = Vec::new();
    let want_short = rs.lambda > 1;
    if matches!(which, GmLambda::Zero | GmLambda::All) {
        out.push(vec![0; rs.rank]);
    }
    if matches!(which, GmLambda::ThetaS | GmLambda::All) && want_short {
        out.push(rs.theta_s_weight()?);
    }
    if which == GmLambda::ThetaS && !want_short {
        return Err(Error::SimplyLaced(rs.label.to_string()));
    }
    if matches!(which, GmLambda::Theta | GmLambda::All) {
        out.push(rs.theta_weight());
    }
    Ok(out)
}

fn gm_formula(rs: &RootSystem, lambda: &Weight) -> Result<GradedMultiplicity, Error> {
    if lambda.iter().all(|&x| x == 0) {
        Ok(gradedmult::gm_formula_zero(rs))
    } else if *lambda == rs.theta_weight() {
        gradedmult::gm_formula_theta(rs)
    } else if rs.lambda > 1 && *lambda == rs.theta_s_weight()? {
        gradedmult::gm_formula_theta_s(rs)
    } else {
        Err(Error::Unsupported(format!(
            "no closed formula for {lambda:?}"
        )))
    }
}

fn cmd_gm(a: &GmArgs) -> Result<u8, Error> {
    let rs = RootSystem::new(&a.type_label)?;
    let weights = gm_weights(&rs, a.lambda)?;
    let oracle = if matches!(a.method, GmMethod::Oracle | GmMethod::CrossCheck) {
        Some(gradedmult::decompose(
            &rs,
            &gradedmult::exterior_character(&rs)?,
        )?)
    } else {
        None
    };
    let mut code = 0;
    for lambda in &weights {
        let (gm, agree) = match a.method {
            GmMethod::Oracle => {
                (gradedmult::gm_oracle(oracle.as_ref().unwrap(), lambda), None)
            }
            GmMethod::Macdonald => (gradedmult::gm_via_macdonald(&rs, lambda)?, None),
            GmMethod::Formula => (gm_formula(&rs, lambda)?, None),
            GmMethod::CrossCheck => {
                let o = gradedmult::gm_oracle(oracle.as_ref().unwrap(), lambda);
                let m = gradedmult::gm_via_macdonald(&rs, lambda)?;
                let f = gm_formula(&rs, lambda)?;
                let agree = o == m && m == f;
                (f, Some(agree))
            }
        };
        if agree == Some(false) {
            code = 1;
        }
        if a.json {
            let poly: serde_json::Map<String, serde_json::Value> = gm
                .poly
                .iter()
                .map(|(&e, &c)| (e.to_string(), json!(c)))
                .collect();
            let mut obj = json!({ "lambda": lambda, "poly": poly });
            if let Some(flag) = agree {
                obj["methods_agree"] = json!(flag);
            }
            println!("{}", serde_json::to_string(&obj).unwrap());
        } else if a.latex {
            println!("GM_{{{lambda:?}}}(q) = {}", latex_poly(&gm));
        } else {
            let suffix = match agree {
                Some(true) => "  [methods agree]",
                Some(false) => "  [METHODS DISAGREE]",
                None => "",
            };
            println!("GM_{lambda:?} = {}{suffix}", text_poly(&gm));
        }
    }
    Ok(code)
}

fn cmd_verify(a: &VerifyArgs) -> Result<u8, Error> {
    if !a.all {
        return Err(Error::Unsupported(
            "only `verify --all` is available".to_string(),
        ));
    }
    let labels = if a.types.is_empty() {
        verify::suite_labels()
    } else {
        a.types.clone()
    };
    let cfg = VerifyConfig {
        seed: a.seed,
        hecke_samples: a.hecke_samples,
        unitarity_samples: a.unitarity_samples,
        ..Default::default()
    };
    let mut code = 0;
    for (label, results) in verify::run_all(&labels, &cfg)? {
        println!("{label}:");
        for c in &results {
            if c.passed() {
                println!("  {:<38} pass", c.name);
            } else {
                code = 1;
                println!("  {:<38} FAIL", c.name);
                for f in &c.failures {
                    println!("    {f}");
                }
            }
        }
    }
    Ok(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match &cli.command {
        Command::Roots(a) => cmd_roots(a),
        Command::Weyl(a) => cmd_weyl(a),
        Command::Hecke(a) => cmd_hecke(a),
        Command::Scalar(a) => cmd_scalar(a),
        Command::Macdonald(a) => cmd_macdonald(a),
        Command::Gm(a) => cmd_gm(a),
        Command::Verify(a) => cmd_verify(a),
    };
    match out {
        Ok(code) => ExitCode::from(code),
        Err(Error::UnknownType(t)) => {
            eprintln!("error: unknown type '{t}'");
            ExitCode::from(2)
        }
        Err(Error::Unsupported(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
