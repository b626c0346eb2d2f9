//! Command-line surface for the quantization engine.
//!
//! Exit codes: 0 = success, 1 = a verification residual is nonzero,
//! 2 = input/usage error.  Identical invocations (including `--seed`)
//! produce byte-identical output.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use berezin::dd::Dd;
use berezin::error::Error;
use berezin::geometry::{
    embed, laplace_beltrami, measure_density, measure_density_symbolic, poisson, PointChart,
};
use berezin::matrix::mat_to_json;
use berezin::parse::{parse_expr, parse_word};
use berezin::quant::{berezin_eigenvalue, berezin_transform, berezin_transform_truncated,
    covariant_symbol, star};
use berezin::rat::{parse_rat, rat_str, Rat};
use berezin::series::expand_inv_lambda;
use berezin::sl2::{contravariant_symbol_sl2, covariant_symbol_sl2, HyperboloidPoint, SignedPower,
    Sl2Elem};
use berezin::symbol::SymbolExpr;
use berezin::verify;

#[derive(Parser)]
#[command(name = "berezin", version, about = "Exact Berezin polynomial quantization on SL(n,R)/GL(n-1,R)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Covariant symbols of enveloping-algebra words
    Symbol {
        #[command(subcommand)]
        which: SymbolCmd,
    },
    /// Star product of two words
    Star {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long)]
        w1: String,
        #[arg(long)]
        w2: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Berezin transform of a polynomial symbol
    Berezin {
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// expression in xi<i>, eta<i>, N, lambda
        #[arg(long)]
        poly: String,
        /// emit the partial series through this order instead of requiring termination
        #[arg(long)]
        head: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Berezin eigenvalue on the sigma = m constituent
    Eigenvalue {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long)]
        sigma: u32,
    },
    /// Laurent expansion at lambda = infinity
    Expand {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long)]
        expr: String,
        /// truncation order
        #[arg(long = "K", visible_alias = "k", default_value_t = 2)]
        k: i64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Geometry of the space: embedding, Laplacian, Poisson bracket, measure
    Geometry {
        #[command(subcommand)]
        which: GeometryCmd,
    },
    /// SL(2,R) group quantization
    Sl2 {
        #[command(subcommand)]
        which: Sl2Cmd,
    },
    /// Randomized verification suites
    Verify {
        #[command(subcommand)]
        which: VerifyCmd,
    },
}

#[derive(Subcommand)]
enum SymbolCmd {
    /// Covariant symbol of pi^-_lambda(word)
    Cov {
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// word in E<i><j>, H<k> joined by '*'; E/F/H abbreviate E1n/En1/H1
        #[arg(long)]
        word: String,
        /// substitute a rational value for lambda
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

#[derive(Subcommand)]
enum GeometryCmd {
    /// Matrix embedding of a chart point
    Embed {
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// comma-separated rationals, length n-1
        #[arg(long)]
        xi: String,
        #[arg(long)]
        eta: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Laplace-Beltrami operator applied to an expression
    Laplace {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long)]
        poly: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Poisson bracket of two expressions
    Poisson {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Invariant measure density at a point (and its symbolic form)
    Measure {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long)]
        xi: String,
        #[arg(long)]
        eta: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

#[derive(Args)]
struct Sl2Input {
    /// group element as four comma-separated rationals alpha,beta,gamma,delta
    #[arg(long)]
    g: String,
    #[arg(long)]
    sigma: String,
    #[arg(long, default_value_t = 0)]
    eps: u8,
    #[arg(long)]
    xi: String,
    #[arg(long)]
    eta: String,
}

#[derive(Subcommand)]
enum Sl2Cmd {
    /// Covariant symbol of T_{sigma,eps}(g), three ways
    Cov(Sl2Input),
    /// Contravariant symbol of T_{sigma,eps}(g), three ways
    Contra(Sl2Input),
    /// Randomized three-way verification table
    Verify {
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        count: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: TableFormat,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    All(VerifyArgs),
    Geometry(VerifyArgs),
    Repn(VerifyArgs),
    Quant(VerifyArgs),
    Sl2(VerifyArgs),
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

fn float_digits() -> usize {
    std::env::var("BEREZIN_FLOAT_DIGITS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .map(|d| d.clamp(1, 17))
        .unwrap_or(17)
}

fn fmt_dd(x: Dd) -> String {
    format!("{:.*e}", float_digits(), x.to_f64())
}

fn warn_small_n(n: usize) {
    if n == 2 {
        eprintln!(
            "warning: the closed analytic formulas are stated for n >= 3; n = 2 is \
             supported for SL(2,R) experiments"
        );
    }
}

fn parse_rat_list(s: &str, expect: usize) -> Result<Vec<Rat>, Error> {
    let vals: Result<Vec<Rat>, Error> = s.split(',').map(|t| parse_rat(t.trim())).collect();
    let vals = vals?;
    if vals.len() != expect {
        return Err(Error::Parse(format!(
            "expected {expect} comma-separated rationals, got {}",
            vals.len()
        )));
    }
    Ok(vals)
}

fn print_symbol(f: &SymbolExpr, format: Format) {
    match format {
        Format::Json => println!("{}", f.to_json_string()),
        Format::Text => {
            println!("{f}");
            println!("{}", f.to_json_string());
        }
    }
}

fn run() -> Result<u8, Error> {
    let cli = Cli::parse();
    match cli.command {
        Command::Symbol { which } => match which {
            SymbolCmd::Cov { n, word, lambda, format } => {
                let e = parse_word(n, &word)?;
                let mut f = covariant_symbol(&e);
                if let Some(ls) = lambda {
                    f = f.specialize_lambda(&parse_rat(&ls)?)?;
                }
                print_symbol(&f, format);
                Ok(0)
            }
        },
        Command::Star { n, w1, w2, format } => {
            let e1 = parse_word(n, &w1)?;
            let e2 = parse_word(n, &w2)?;
            print_symbol(&star(&e1, &e2), format);
            Ok(0)
        }
        Command::Berezin { n, poly, head, format } => {
            let f = parse_expr(n, &poly)?;
            let out = match head {
                Some(k) => berezin_transform_truncated(&f, k),
                None => berezin_transform(&f)?,
            };
            print_symbol(&out, format);
            Ok(0)
        }
        Command::Eigenvalue { n, sigma } => {
            println!("{}", berezin_eigenvalue(sigma, n));
            Ok(0)
        }
        Command::Expand { n, expr, k, format } => {
            let f = parse_expr(n, &expr)?;
            let ser = expand_inv_lambda(&f, k);
            match format {
                Format::Json => {
                    let coeffs: Vec<serde_json::Value> = (ser.start()..=ser.truncation_order())
                        .map(|j| {
                            serde_json::json!({
                                "order": j,
                                "coefficient": ser.coefficient(j).to_json_value(),
                            })
                        })
                        .collect();
                    println!("{}", serde_json::Value::Array(coeffs));
                }
                Format::Text => {
                    for j in ser.start()..=ser.truncation_order() {
                        let c = ser.coefficient(j);
                        if !c.is_zero() || j == 0 {
                            println!("lambda^{}: {}", -j, c);
                        }
                    }
                    println!("+ O(lambda^{})", -(ser.truncation_order() + 1));
                }
            }
            Ok(0)
        }
        Command::Geometry { which } => run_geometry(which),
        Command::Sl2 { which } => run_sl2(which),
        Command::Verify { which } => {
            let (reports, args) = match which {
                VerifyCmd::All(a) => (verify::all_suites(a.seed), a),
                VerifyCmd::Geometry(a) => (verify::geometry_suite(a.seed), a),
                VerifyCmd::Repn(a) => (verify::repn_suite(a.seed), a),
                VerifyCmd::Quant(a) => (verify::quant_suite(a.seed), a),
                VerifyCmd::Sl2(a) => (verify::sl2_suite(a.seed), a),
            };
            match args.format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&reports).expect("serializable reports")
                ),
                Format::Text => {
                    for r in &reports {
                        match &r.residual {
                            None => println!("{:4}  {}  [{}]", r.status, r.check, r.params),
                            Some(res) => {
                                println!("{:4}  {}  [{}]  residual: {}", r.status, r.check, r.params, res)
                            }
                        }
                    }
                }
            }
            Ok(if verify::all_passed(&reports) { 0 } else { 1 })
        }
    }
}

fn run_geometry(cmd: GeometryCmd) -> Result<u8, Error> {
    match cmd {
        GeometryCmd::Embed { n, xi, eta, format } => {
            let p = PointChart::new(parse_rat_list(&xi, n - 1)?, parse_rat_list(&eta, n - 1)?)?;
            let x = embed(&p)?;
            match format {
                Format::Json => println!("{}", mat_to_json(x.mat())),
                Format::Text => {
                    for i in 0..n {
                        let row: Vec<String> =
                            (0..n).map(|j| rat_str(x.mat().at(i, j))).collect();
                        println!("[ {} ]", row.join("  "));
                    }
                    println!("{}", mat_to_json(x.mat()));
                }
            }
            Ok(0)
        }
        GeometryCmd::Laplace { n, poly, format } => {
            warn_small_n(n);
            let f = parse_expr(n, &poly)?;
            print_symbol(&laplace_beltrami(&f), format);
            Ok(0)
        }
        GeometryCmd::Poisson { n, f, g, format } => {
            warn_small_n(n);
            let fe = parse_expr(n, &f)?;
            let ge = parse_expr(n, &g)?;
            print_symbol(&poisson(&fe, &ge)?, format);
            Ok(0)
        }
        GeometryCmd::Measure { n, xi, eta, format } => {
            let p = PointChart::new(parse_rat_list(&xi, n - 1)?, parse_rat_list(&eta, n - 1)?)?;
            let v = measure_density(&p)?;
            match format {
                Format::Json => println!(
                    "{}",
                    serde_json::json!({
                        "value": rat_str(&v),
                        "symbolic": measure_density_symbolic(n).to_json_value(),
                    })
                ),
                Format::Text => {
                    println!("{}", rat_str(&v));
                    println!("symbolic: {}", measure_density_symbolic(n));
                }
            }
            Ok(0)
        }
    }
}

fn sl2_parse(input: &Sl2Input) -> Result<(Sl2Elem, SignedPower, HyperboloidPoint), Error> {
    let gv = parse_rat_list(&input.g, 4)?;
    let g = Sl2Elem::new(gv[0].clone(), gv[1].clone(), gv[2].clone(), gv[3].clone())?;
    let sp = SignedPower::new(parse_rat(&input.sigma)?, input.eps)?;
    let p = HyperboloidPoint::from_chart(parse_rat(&input.xi)?, parse_rat(&input.eta)?)?;
    Ok((g, sp, p))
}

fn run_sl2(cmd: Sl2Cmd) -> Result<u8, Error> {
    match cmd {
        Sl2Cmd::Cov(input) => {
            let (g, sp, p) = sl2_parse(&input)?;
            let c = covariant_symbol_sl2(&g, &sp, &p)?;
            println!(
                "{}",
                serde_json::json!({
                    "definition": fmt_dd(c.definition),
                    "trace_form": fmt_dd(c.trace_form),
                    "uv_form": fmt_dd(c.uv_form),
                    "max_rel_dev": format!("{:.3e}", c.max_rel_dev),
                    "exact": c.exact,
                })
            );
            Ok(0)
        }
        Sl2Cmd::Contra(input) => {
            let (g, sp, p) = sl2_parse(&input)?;
            let c = contravariant_symbol_sl2(&g, &sp, &p)?;
            println!(
                "{}",
                serde_json::json!({
                    "definition": fmt_dd(c.definition),
                    "trace_form": fmt_dd(c.trace_form),
                    "uv_form": fmt_dd(c.uv_form),
                    "max_rel_dev": format!("{:.3e}", c.max_rel_dev),
                    "exact": c.exact,
                })
            );
            Ok(0)
        }
        Sl2Cmd::Verify { seed, count, format } => {
            let rows = sl2_table(seed, count);
            let worst = rows
                .iter()
                .map(|r| r.max_rel_dev)
                .fold(0.0f64, f64::max);
            match format {
                TableFormat::Json => {
                    let vals: Vec<serde_json::Value> = rows.iter().map(sl2_row_json).collect();
                    println!("{}", serde_json::Value::Array(vals));
                }
                TableFormat::Csv => {
                    println!("kind,g,sigma,eps,xi,eta,definition,trace_form,uv_form,max_rel_dev,exact");
                    for r in &rows {
                        println!(
                            "{},{},{},{},{},{},{},{},{},{:.3e},{}",
                            r.kind,
                            r.g,
                            r.sigma,
                            r.eps,
                            r.xi,
                            r.eta,
                            fmt_dd(r.definition),
                            fmt_dd(r.trace_form),
                            fmt_dd(r.uv_form),
                            r.max_rel_dev,
                            r.exact
                        );
                    }
                }
            }
            Ok(if worst < 1e-12 { 0 } else { 1 })
        }
    }
}

struct Sl2Row {
    kind: &'static str,
    g: String,
    sigma: String,
    eps: u8,
    xi: String,
    eta: String,
    definition: Dd,
    trace_form: Dd,
    uv_form: Dd,
    max_rel_dev: f64,
    exact: bool,
}

fn sl2_row_json(r: &Sl2Row) -> serde_json::Value {
    serde_json::json!({
        "kind": r.kind,
        "g": r.g,
        "sigma": r.sigma,
        "eps": r.eps,
        "xi": r.xi,
        "eta": r.eta,
        "definition": fmt_dd(r.definition),
        "trace_form": fmt_dd(r.trace_form),
        "uv_form": fmt_dd(r.uv_form),
        "max_rel_dev": format!("{:.3e}", r.max_rel_dev),
        "exact": r.exact,
    })
}

fn sl2_table(seed: u64, count: usize) -> Vec<Sl2Row> {
    use berezin::sample::Sampler;
    let mut s = Sampler::new(seed);
    let mut rows = Vec::new();
    while rows.len() < count {
        let g = verify::random_sl2(&mut s);
        let Ok(p) = HyperboloidPoint::from_chart(s.rat(), s.rat()) else { continue };
        let sigma = if rows.len() % 2 == 0 {
            Rat::new(s.int(-4, 4).into(), 2.into())
        } else {
            Rat::new(s.int(-9, 9).into(), 4.into())
        };
        let Ok(sp) = SignedPower::new(sigma.clone(), s.int(0, 1) as u8) else { continue };
        let kind_cov = rows.len() % 2 == 0;
        let result = if kind_cov {
            covariant_symbol_sl2(&g, &sp, &p)
        } else {
            contravariant_symbol_sl2(&g, &sp, &p)
        };
        let Ok(c) = result else { continue };
        rows.push(Sl2Row {
            kind: if kind_cov { "cov" } else { "contra" },
            g: format!(
                "[{},{};{},{}]",
                rat_str(&g.alpha),
                rat_str(&g.beta),
                rat_str(&g.gamma),
                rat_str(&g.delta)
            ),
            sigma: rat_str(&sigma),
            eps: sp.eps,
            xi: rat_str(&p.xi),
            eta: rat_str(&p.eta),
            definition: c.definition,
            trace_form: c.trace_form,
            uv_form: c.uv_form,
            max_rel_dev: c.max_rel_dev,
            exact: c.exact,
        });
    }
    rows
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
