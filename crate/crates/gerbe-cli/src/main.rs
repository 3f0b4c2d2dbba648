use clap::{Parser, Subcommand, ValueEnum};
use gerbe::bernoulli::multi_bernoulli;
use gerbe::checker::{self, RunConfig};
use gerbe::lattice::{normal_form, HomPoint, LatticeVector, Wedge};
use gerbe::special::{self, Eval, TruncationPolicy};
use gerbe::{hermitian, wedge};
use num_complex::Complex64;
use serde_json::json;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "gerbe", version, about = "Elliptic gamma functions, the gamma gerbe and its identities")]
struct Cli {
    /// Truncation tolerance for infinite products.
    #[arg(long, global = true, default_value_t = 1e-15)]
    precision: f64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate a special function; complex numbers are written like 0.1+0.3i.
    Eval {
        #[command(subcommand)]
        f: EvalFn,
    },
    /// Direction vector, modulus, complements and fundamental set of a wedge.
    WedgeInfo {
        #[arg(long, value_parser = parse_vector, allow_hyphen_values = true)]
        a: LatticeVector,
        #[arg(long, value_parser = parse_vector, allow_hyphen_values = true)]
        b: LatticeVector,
    },
    /// SL₃(ℤ) normal form of a wedge.
    NormalForm {
        #[arg(long, value_parser = parse_vector, allow_hyphen_values = true)]
        a: LatticeVector,
        #[arg(long, value_parser = parse_vector, allow_hyphen_values = true)]
        b: LatticeVector,
    },
    /// Coefficients of B_{r,n}·x₁⋯x_r.
    Bernoulli {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run one registered identity and print its JSON report.
    Check {
        name: String,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Run all registered identities; exit status 0 iff all pass.
    CheckAll {
        /// Only identities whose name contains this string.
        filter: Option<String>,
        /// JSON file of per-identity overrides {"name": {"samples": N, "tol": T}}.
        #[arg(long)]
        config: Option<std::path::PathBuf>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Print the registry instead of running it.
        #[arg(long)]
        list: bool,
        /// Run identities one after another.
        #[arg(long)]
        serial: bool,
    },
}

#[derive(Subcommand)]
enum EvalFn {
    Theta {
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        z: Complex64,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        tau: Complex64,
    },
    Gamma {
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        z: Complex64,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        tau: Complex64,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        sigma: Complex64,
    },
    H2 {
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        z: Complex64,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        tau: Complex64,
    },
    H3 {
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        z: Complex64,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        tau: Complex64,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        sigma: Complex64,
    },
    /// Γ_{a,b}(w, x).
    WedgeGamma {
        #[arg(long, value_parser = parse_vector, allow_hyphen_values = true)]
        a: LatticeVector,
        #[arg(long, value_parser = parse_vector, allow_hyphen_values = true)]
        b: LatticeVector,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        w: Complex64,
        /// Three comma-separated complex numbers.
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// Parses `a`, `bi`, `a+bi`, `a-bi` (also `i`, `-i`, exponents like `1e-3+2i`).
fn parse_complex(s: &str) -> Result<Complex64, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || format!("cannot parse complex number {s:?}");
    let Some(body) = t.strip_suffix('i').or_else(|| t.strip_suffix('j')) else {
        return t.parse::<f64>().map(|re| Complex64::new(re, 0.0)).map_err(|_| bad());
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        v => v.parse::<f64>().map_err(|_| bad())?,
    };
    Ok(Complex64::new(re.parse::<f64>().map_err(|_| bad())?, im))
}

fn parse_vector(s: &str) -> Result<LatticeVector, String> {
    let v: Vec<i64> = s.split(',').map(|p| p.trim().parse::<i64>()).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    match v.as_slice() {
        [a, b, c] => Ok(LatticeVector::new(*a, *b, *c)),
        _ => Err(format!("expected three integers, got {s:?}")),
    }
}

fn denominator(r: usize) -> String {
    if r == 0 { "1".into() } else { (1..=r).map(|i| format!("x{i}")).collect::<Vec<_>>().join("*") }
}

fn render(terms: &[gerbe::bernoulli::MonomialEntry]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let names = |i: usize| if i == 0 { "w".to_string() } else { format!("x{i}") };
    terms
        .iter()
        .map(|t| {
            let mut factors = vec![t.coefficient.clone()];
            for (i, &e) in t.exponents.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names(i)),
                    _ => factors.push(format!("{}^{e}", names(i))),
                }
            }
            factors.join("*")
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

fn eval_json(e: Eval) -> serde_json::Value {
    json!({ "re": e.value.re, "im": e.value.im, "tail_bound": e.tail_bound })
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    let pol = TruncationPolicy { tol: cli.precision, ..Default::default() };
    let err = |e: &dyn std::fmt::Display| e.to_string();
    let out = match cli.cmd {
        Cmd::Eval { f } => match f {
            EvalFn::Theta { z, tau } => eval_json(special::theta0(z, tau, &pol).map_err(|e| err(&e))?),
            EvalFn::Gamma { z, tau, sigma } => eval_json(special::elliptic_gamma(z, tau, sigma, &pol).map_err(|e| err(&e))?),
            EvalFn::H2 { z, tau } => json!({ "value": hermitian::h2(z, tau).map_err(|e| err(&e))? }),
            EvalFn::H3 { z, tau, sigma } => json!({ "value": hermitian::h3(z, tau, sigma).map_err(|e| err(&e))? }),
            EvalFn::WedgeGamma { a, b, w, x } => {
                let xs: Vec<Complex64> = x.split(',').map(parse_complex).collect::<Result<_, _>>()?;
                let x: [Complex64; 3] = xs.try_into().map_err(|_| "x needs three components".to_string())?;
                let wg = Wedge::new(a, b).map_err(|e| err(&e))?;
                eval_json(wedge::wedge_gamma(&wg, &HomPoint::new(w, x), &pol).map_err(|e| err(&e))?)
            }
        },
        Cmd::WedgeInfo { a, b } => {
            let w = Wedge::new(a, b).map_err(|e| err(&e))?;
            let data = if w.modulus > 0 { Some(w.data().map_err(|e| err(&e))?) } else { None };
            json!({ "a": a, "b": b, "modulus": w.modulus, "gamma": w.gamma, "data": data })
        }
        Cmd::NormalForm { a, b } => serde_json::to_value(normal_form(&a, &b).map_err(|e| err(&e))?).map_err(|e| err(&e))?,
        Cmd::Bernoulli { r, n, format } => {
            let m = multi_bernoulli(r, n).map_err(|e| err(&e))?;
            match format {
                Format::Json => json!({ "r": r, "n": n, "variables": "w, x1..xr", "denominator": "x1*...*xr", "monomials": m.monomials() }),
                Format::Text => {
                    println!("B_{{{r},{n}}} = ({}) / ({})", render(&m.monomials()), denominator(r));
                    return Ok(ExitCode::SUCCESS);
                }
            }
        }
        Cmd::Check { name, samples, seed, tol } => {
            let spec = checker::registry().into_iter().find(|s| s.name == name).ok_or(format!("unknown identity {name:?}"))?;
            let rep = checker::run_check(&name, samples.unwrap_or(spec.samples), seed, tol.unwrap_or(spec.tol), &pol)
                .map_err(|e| err(&e))?;
            println!("{}", serde_json::to_string_pretty(&rep).map_err(|e| err(&e))?);
            return Ok(if rep.pass { ExitCode::SUCCESS } else { ExitCode::FAILURE });
        }
        Cmd::CheckAll { filter, config, seed, list, serial } => {
            if list {
                for s in checker::registry() {
                    println!("{:<28} {:>4} samples  tol {:<7e}  {}  [{}]", s.name, s.samples, s.tol, s.formula, s.domain);
                }
                return Ok(ExitCode::SUCCESS);
            }
            let overrides = match config {
                Some(path) => {
                    let text = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
                    checker::parse_overrides(&text).map_err(|e| err(&e))?
                }
                None => Default::default(),
            };
            let cfg = RunConfig { seed, overrides, filter, pol, parallel: !serial };
            let reports = checker::run_all(&cfg);
            println!("{}", serde_json::to_string_pretty(&reports).map_err(|e| err(&e))?);
            let failed: Vec<&str> = reports.iter().filter(|r| !r.pass).map(|r| r.identity.as_str()).collect();
            for r in &reports {
                eprintln!(
                    "{} {:<28} max rel {:.2e} (tol {:.0e}, {} samples, {} resamples)",
                    if r.pass { "pass" } else { "FAIL" },
                    r.identity,
                    r.max_rel_dev,
                    r.tol,
                    r.samples,
                    r.resamples
                );
            }
            eprintln!("{}/{} identities pass", reports.len() - failed.len(), reports.len());
            return Ok(if failed.is_empty() { ExitCode::SUCCESS } else { ExitCode::FAILURE });
        }
    };
    println!("{}", serde_json::to_string_pretty(&out).map_err(|e| err(&e))?);
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
