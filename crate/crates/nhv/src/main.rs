//! `nhv`: runs the verification suites and small computations from the
//! command line and prints a report as text or JSON.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use nilhecke::coeff::{is_prime, Int};
use nilhecke::cyclo::QLambda;
use nilhecke::derivations::{alpha_poly, alpha_relation_checks, dn, DerivationKind, DerivationSpec, Sl2Op, SlnOp};
use nilhecke::derivations::{nilpotency_check, shift_coeffs_check};
use nilhecke::ennilhecke::{an_nilpotency_check, epsilon, epsilon_checks, verify_relations, verify_relations_mod, AnDerivation};
use nilhecke::extpoly::ExtPolynomial;
use nilhecke::ktheory::{categorified_e_class, d_matrix_consistency, verify_iso, verify_uqsl2, Model};
use nilhecke::parse::{parse_expr, Context, Parsed};
use nilhecke::pcomplex::parse_json;
use nilhecke::report::{Check, Report};
use nilhecke::sl2rep::{an_filtration_check, an_sl2_operators, conjecture_scan, filtration_check};
use nilhecke::suite::{r5_example_checks, run_all, run_criterion};
use serde_json::json;

#[derive(Parser)]
#[command(name = "nhv", version, about = "Exact checks for the enhanced nilHecke algebra and its p-dg structure")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Ctx {
    Ring,
    Algebra,
}

#[derive(Clone, Copy, ValueEnum)]
enum K0Check {
    Relations,
    Iso,
    Eclass,
    All,
}

/// Degree bound shared by several commands; the flag wins over the environment.
#[derive(clap::Args)]
struct Degree {
    #[arg(long, env = "NHV_DEGREE_BOUND")]
    degree: Option<u32>,
}

impl Degree {
    fn or(&self, default: u32) -> u32 {
        self.degree.unwrap_or(default)
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Defining relations of A_n, as normal forms and as operators on R_n.
    Relations {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: Option<u64>,
        #[command(flatten)]
        degree: Degree,
    },
    /// The coefficients α_{i,j} of d_n and d_n on every ω_i.
    Alpha {
        #[arg(long)]
        n: usize,
    },
    /// Apply a derivation: d, partialR, lK, e, f, h, degq, eI, fI, hI.
    Apply {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        op: String,
        #[arg(long)]
        expr: String,
        #[arg(long, value_enum, default_value_t = Ctx::Ring)]
        context: Ctx,
        #[arg(long, default_value_t = 1)]
        power: u32,
        /// Reduce the result mod p.
        #[arg(long)]
        p: Option<u64>,
        /// The twist a of d_a on A_n.
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        a: i64,
    },
    /// Multiply two expressions and print the normal form.
    Mul {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
        #[arg(long, value_enum, default_value_t = Ctx::Algebra)]
        context: Ctx,
    },
    /// The idempotent ε_n and its derivative.
    Epsilon {
        #[arg(long)]
        n: usize,
    },
    /// d^p = 0 on generators of R_n and A_n over F_p; every 1 <= n < p unless --n is given.
    Nilpotency {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        a: i64,
    },
    /// The Grothendieck group with E, F, K.
    K0 {
        #[arg(long)]
        p: u64,
        #[arg(long, value_enum, default_value_t = K0Check::All)]
        check: K0Check,
    },
    /// The baby Verma module of highest weight q^a λ^b (default λq^-1).
    Verma {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = -1, allow_hyphen_values = true)]
        hw_q: i64,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        hw_l: i64,
    },
    /// Graded p-complexes.
    Pcomplex {
        #[command(subcommand)]
        action: PcAction,
    },
    /// Filtrations of R_n and A_n by ω-monomials.
    Filtration {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        degree: Degree,
    },
    /// Highest weights of sl_n on the q-degree slices of R_n.
    Conjecture {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 8)]
        mmax: u32,
        /// Accepted for symmetry with the other commands; slices are finite, so it is unused.
        #[command(flatten)]
        degree: Degree,
    },
    /// The acceptance battery.
    Suite {
        /// Run only this criterion (1..=12).
        #[arg(long)]
        criterion: Option<u8>,
    },
}

#[derive(Subcommand)]
enum PcAction {
    /// Jordan blocks of a complex given as JSON.
    Blocks {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        input: PathBuf,
    },
}

/// A usage problem: reported on stderr with exit code 2.
struct Usage(String);

fn need(ok: bool, msg: impl FnOnce() -> String) -> Result<(), Usage> {
    if ok {
        Ok(())
    } else {
        Err(Usage(msg()))
    }
}

fn rank_ok(n: usize, max: usize) -> Result<(), Usage> {
    need((1..=max).contains(&n), || format!("--n must be in 1..={max}, got {n}"))
}

fn prime_ok(p: u64) -> Result<(), Usage> {
    need(is_prime(p) && p <= 97, || format!("--p must be a prime up to 97, got {p}"))
}

fn parse(src: &str, n: usize, ctx: Context) -> Result<Parsed, Usage> {
    parse_expr(src, n, ctx).map_err(|e| Usage(format!("cannot parse '{src}': {e}")))
}

fn ring_op(name: &str, n: usize) -> Result<DerivationSpec<Int>, Usage> {
    let idx = |s: &str| s.parse::<i64>().map_err(|_| Usage(format!("bad operator '{name}'")));
    let kind = match name {
        "d" => DerivationKind::Dn,
        "e" => DerivationKind::Sl2(Sl2Op::E),
        "f" => DerivationKind::Sl2(Sl2Op::F),
        "h" => DerivationKind::Sl2(Sl2Op::H),
        "degq" => DerivationKind::DegQ,
        _ if name.starts_with("partial") => DerivationKind::Partial(idx(&name[7..])? as usize),
        _ if name.starts_with('l') => DerivationKind::Witt(idx(&name[1..])?),
        _ if name.starts_with('e') => DerivationKind::Sln(SlnOp::E(idx(&name[1..])? as usize)),
        _ if name.starts_with('f') => DerivationKind::Sln(SlnOp::F(idx(&name[1..])? as usize)),
        _ if name.starts_with('h') => DerivationKind::Sln(SlnOp::H(idx(&name[1..])? as usize)),
        _ => return Err(Usage(format!("unknown operator '{name}'"))),
    };
    DerivationSpec::new(kind, n, ()).map_err(|e| Usage(format!("operator '{name}': {e}")))
}

fn algebra_op(name: &str, n: usize, a: i64) -> Result<AnDerivation<Int>, Usage> {
    let [e, f, h] = an_sl2_operators(n, -2);
    match name {
        "d" => Ok(AnDerivation::new(a, n, ())),
        "e" => Ok(e),
        "f" => Ok(f),
        "h" => Ok(h),
        _ => Err(Usage(format!("operator '{name}' is not defined on A_n (d, e, f, h)"))),
    }
}

fn show(name: impl Into<String>, value: impl ToString) -> Check {
    let v = value.to_string();
    Check::new(name, v.clone(), v, true)
}

/// Runs a command; the flag says whether the report is informational.
fn run(cmd: &Cmd) -> Result<(String, serde_json::Value, Vec<Check>, bool), Usage> {
    Ok(match cmd {
        Cmd::Relations { n, p, degree } => {
            rank_ok(*n, 5)?;
            let d = degree.or(12);
            let checks = match p {
                Some(p) => {
                    prime_ok(*p)?;
                    need((*n as u64) < *p, || format!("need n < p, got n={n}, p={p}"))?;
                    verify_relations_mod(*n, d, *p)
                }
                None => verify_relations(*n, d),
            };
            ("relations".into(), json!({"n": n, "p": p, "degree": d}), checks, false)
        }
        Cmd::Alpha { n } => {
            rank_ok(*n, 8)?;
            let mut checks = Vec::new();
            for i in 1..*n {
                for j in i + 1..=*n {
                    checks.push(show(format!("alpha_{i},{j}"), alpha_poly::<Int>(i, j, *n, ()).unwrap()));
                }
            }
            let d = dn::<Int>(*n, ());
            for i in 1..=*n {
                checks.push(show(format!("d_{n}(w{i})"), d.apply(&ExtPolynomial::w(*n, (), i))));
            }
            checks.extend(alpha_relation_checks(*n));
            if *n == 5 {
                checks.extend(r5_example_checks());
            }
            ("alpha".into(), json!({"n": n}), checks, false)
        }
        Cmd::Apply { n, op, expr, context, power, p, a } => {
            rank_ok(*n, 6)?;
            need(*power <= 64, || "--power must be at most 64".into())?;
            if let Some(p) = p {
                prime_ok(*p)?;
            }
            let label = format!("{op}^{power}({expr})");
            let value = match (context, parse(expr, *n, ctx_of(*context))?) {
                (Ctx::Ring, Parsed::Ring(f)) => {
                    let r = ring_op(op, *n)?.apply_pow(&f, *power);
                    match p {
                        Some(p) => r.reduce_mod(*p).to_string(),
                        None => r.to_string(),
                    }
                }
                (Ctx::Algebra, Parsed::Algebra(x)) => {
                    let r = algebra_op(op, *n, *a)?.apply_pow(&x, *power);
                    match p {
                        Some(p) => r.reduce_mod(*p).to_string(),
                        None => r.to_string(),
                    }
                }
                _ => unreachable!("parse follows the context"),
            };
            ("apply".into(), json!({"n": n, "op": op, "expr": expr, "power": power, "p": p, "a": a}), vec![show(label, value)], true)
        }
        Cmd::Mul { n, lhs, rhs, context } => {
            rank_ok(*n, 6)?;
            let c = ctx_of(*context);
            let value = match (parse(lhs, *n, c)?, parse(rhs, *n, c)?) {
                (Parsed::Ring(a), Parsed::Ring(b)) => a.mul(&b).to_string(),
                (Parsed::Algebra(a), Parsed::Algebra(b)) => a.mul(&b).to_string(),
                _ => unreachable!("parse follows the context"),
            };
            ("mul".into(), json!({"n": n, "lhs": lhs, "rhs": rhs}), vec![show(format!("({lhs})*({rhs})"), value)], true)
        }
        Cmd::Epsilon { n } => {
            rank_ok(*n, 5)?;
            let mut checks = epsilon_checks(*n);
            checks.push(show(format!("epsilon_{n}"), epsilon::<Int>(*n, ())));
            ("epsilon".into(), json!({"n": n}), checks, false)
        }
        Cmd::Nilpotency { p, n, a } => {
            prime_ok(*p)?;
            need(*p <= 7 || n.is_some(), || "give --n for p > 7".into())?;
            let ns: Vec<usize> = match n {
                Some(n) => {
                    rank_ok(*n, 6)?;
                    need((*n as u64) < *p, || format!("need n < p, got n={n}, p={p}"))?;
                    vec![*n]
                }
                None => (1..*p as usize).collect(),
            };
            let mut checks = Vec::new();
            for n in ns {
                checks.extend(nilpotency_check(*p, n));
                checks.extend(an_nilpotency_check(*p, n, *a));
            }
            checks.extend(shift_coeffs_check(3, 8));
            ("nilpotency".into(), json!({"p": p, "n": n, "a": a}), checks, false)
        }
        Cmd::K0 { p, check } => {
            prime_ok(*p)?;
            need(*p >= 3 && *p <= 23, || "--p must be an odd prime up to 23".into())?;
            let mut checks = Vec::new();
            if matches!(check, K0Check::Relations | K0Check::All) {
                checks.extend(verify_uqsl2(*p, &Model::K0));
            }
            if matches!(check, K0Check::Iso | K0Check::All) {
                checks.extend(verify_iso(*p));
            }
            if matches!(check, K0Check::Eclass | K0Check::All) {
                for n in 1..*p as usize {
                    let e = categorified_e_class(n, *p);
                    checks.push(show(format!("[E(A_{n})] computed (p={p})"), &e.value));
                    checks.extend(e.checks);
                }
                for n in 1..=3.min(*p as usize - 1) {
                    checks.extend(d_matrix_consistency(n, *p, 2 * *p as u32));
                }
            }
            let name = match check {
                K0Check::Relations => "relations",
                K0Check::Iso => "iso",
                K0Check::Eclass => "eclass",
                K0Check::All => "all",
            };
            ("k0".into(), json!({"p": p, "check": name}), checks, false)
        }
        Cmd::Verma { p, hw_q, hw_l } => {
            prime_ok(*p)?;
            need(*p >= 3 && *p <= 23, || "--p must be an odd prime up to 23".into())?;
            let hw = QLambda::q_lambda(*p, *hw_q, *hw_l);
            ("verma".into(), json!({"p": p, "hw_q": hw_q, "hw_l": hw_l}), verify_uqsl2(*p, &Model::Verma(hw)), false)
        }
        Cmd::Pcomplex { action: PcAction::Blocks { p, input } } => {
            prime_ok(*p)?;
            let src = fs::read_to_string(input).map_err(|e| Usage(format!("cannot read {}: {e}", input.display())))?;
            let c = parse_json(&src, *p).map_err(|e| Usage(format!("{}: {e}", input.display())))?;
            let mut checks = vec![Check::holds("d^p = 0", c.verify_p_nilpotent(), format!("total dimension {}", c.total_dim()))];
            for (k, b) in c.jordan_blocks().iter().enumerate() {
                checks.push(show(
                    format!("block {k:03}"),
                    format!("size {} at q^{} l^{} parity {}", b.size, b.q, b.lambda, b.parity),
                ));
            }
            checks.push(show("symbol in K0", c.k0_symbol()));
            ("pcomplex blocks".into(), json!({"p": p, "input": input.display().to_string()}), checks, false)
        }
        Cmd::Filtration { n, m, degree } => {
            rank_ok(*n, 4)?;
            need(m <= n, || format!("need m <= n, got m={m}, n={n}"))?;
            let d = degree.or(10);
            need(d <= 16, || "--degree must be at most 16".into())?;
            let mut checks = filtration_check(*n, *m, d);
            checks.extend(an_filtration_check(*n, *m, d));
            ("filtration".into(), json!({"n": n, "m": m, "degree": d}), checks, false)
        }
        Cmd::Conjecture { n, mmax, degree } => {
            need((2..=3).contains(n), || format!("--n must be 2 or 3, got {n}"))?;
            need(*mmax <= 12, || "--mmax must be at most 12".into())?;
            let (_, checks) = conjecture_scan(*n, *mmax);
            ("conjecture".into(), json!({"n": n, "mmax": mmax, "degree": degree.degree}), checks, true)
        }
        Cmd::Suite { criterion } => {
            let crits = match criterion {
                Some(c) => {
                    need((1..=12).contains(c), || "--criterion must be in 1..=12".into())?;
                    vec![run_criterion(*c)]
                }
                None => run_all(),
            };
            let mut checks = Vec::new();
            for c in crits {
                checks.push(Check::holds(
                    format!("[{:02}] {} within time budget", c.id, c.title),
                    c.within_budget(),
                    format!("{} ms", c.elapsed.as_millis()),
                ));
                for mut k in c.checks {
                    k.name = format!("[{:02}] {}", c.id, k.name);
                    checks.push(k);
                }
            }
            ("suite".into(), json!({"criterion": criterion}), checks, false)
        }
    })
}

fn ctx_of(c: Ctx) -> Context {
    match c {
        Ctx::Ring => Context::Ring,
        Ctx::Algebra => Context::Algebra,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let (command, params, checks, info) = match run(&cli.command) {
        Ok(r) => r,
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let report = Report::new(command, params, checks, info, start.elapsed().as_millis());
    let text = match cli.format {
        Format::Json => serde_json::to_string_pretty(&report).expect("report serializes") + "\n",
        Format::Text => report.to_text(),
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = fs::write(path, text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    let failed = report.checks.iter().any(|c| !c.equal);
    if failed && !info {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
