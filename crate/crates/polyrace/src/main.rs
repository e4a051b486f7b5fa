//! Command-line front end: parses field/polynomial expressions, runs the
//! race pipelines, and manages the on-disk result cache.

mod cache;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use num_complex::Complex;
use serde_json::json;

use polyrace_core::asymptotics::{build_quadratic_race_term, eval_main_term, MainTermSpec};
use polyrace_core::bias::{
    b_i_report, chebyshev_bound, delta_normalization, k_limit_classify, li_heuristic_scan,
    race_sign_scan, spec_angles, var_nu, BiasError, KLimitClass,
};
use polyrace_core::characters::{
    c_coefficient, make_context, quadratic_residues, Character, ModulusContext,
};
use polyrace_core::counting::{pi_fk_by_class_bruteforce, CountEngine, CountFunction};
use polyrace_core::ffcore::FieldSpec;
use polyrace_core::lfunc::{
    compute_l_polynomial, conductor, extract_zeros, gamma_m, LPolynomial, ZeroData,
};
use polyrace_core::parse::{parse_field, parse_poly};
use polyrace_core::polyring::{IrreducibleTable, Poly};

const SCAN_CAP: u64 = 2_000_000_000;

#[derive(Parser)]
#[command(name = "polyrace", version, about = "Prime-factor races in F_q[t]")]
struct Cli {
    /// Coefficient field, e.g. "q=5" or "q=9;def=x^2+1".
    #[arg(long, global = true, default_value = "q=5")]
    field: String,
    /// Modulus polynomial, e.g. "t^6+2t^4+3t+1".
    #[arg(long, global = true)]
    modulus: Option<String>,
    /// Counting function: "Omega" (with multiplicity) or "omega" (distinct).
    #[arg(long, global = true, default_value = "Omega", value_parser = parse_count_function)]
    f: CountFunction,
    /// Number of irreducible factors in the race (1..=16).
    #[arg(long, global = true, default_value_t = 1)]
    k: u32,
    /// Largest degree for exact race evaluations.
    #[arg(long, global = true, default_value_t = 20)]
    x_max: u64,
    /// Density-scan length (capped at 2e9).
    #[arg(long, global = true, default_value_t = 10_000_000)]
    n_max: u64,
    /// Output format.
    #[arg(long, global = true, default_value = "json", value_parser = ["csv", "json"])]
    format: String,
    /// Result cache root (no caching when absent).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Seed recorded in outputs; all pipelines are deterministic.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Enumeration budget for brute-force paths.
    #[arg(long, global = true, default_value_t = 100_000_000)]
    budget: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print L-polynomials (expanded and factored through their zeros).
    Lfunc {
        /// Character exponent vector, e.g. "0,1,2"; default: all quadratic.
        #[arg(long)]
        chi: Option<String>,
    },
    /// Print classified inverse-zero data per character.
    Zeros {
        #[arg(long)]
        chi: Option<String>,
    },
    /// Exact race values: CSV of X, delta, sign.
    Race {
        /// Cross-validate with enumerate-and-factor counting.
        #[arg(long)]
        oracle: bool,
        /// Write a JSON sidecar of the run parameters to this path.
        #[arg(long)]
        sidecar: Option<PathBuf>,
    },
    /// Print the explicit main term (constant, alternating, oscillators).
    MainTerm,
    /// Exact race values vs the explicit main term: CSV of n, exact, asymptotic, diff.
    Compare,
    /// Sign density of the main term over a long scan.
    Density,
    /// Densities for k = 1..=K and both counting functions.
    Table,
    /// Large-k classification and the B/I/variance invariants.
    Classify,
    /// Scan the zero angles (with pi) for small integer relations.
    LiScan {
        /// Largest coefficient magnitude tried.
        #[arg(long, default_value_t = 10)]
        q_bound: i64,
    },
    /// Build a squarefree modulus with a prescribed factor count and size.
    ConstructModulus {
        /// Size parameter: total degree is floor(2^omega / c).
        #[arg(long, default_value_t = 1.0)]
        c: f64,
        /// Number of irreducible factors.
        #[arg(long)]
        omega: u32,
    },
    /// Run the bundled golden checks and print a pass/fail matrix.
    VerifyExamples,
}

fn parse_count_function(s: &str) -> Result<CountFunction, String> {
    match s {
        "Omega" => Ok(CountFunction::BigOmega),
        "omega" => Ok(CountFunction::SmallOmega),
        _ => Err(String::from("expected \"Omega\" or \"omega\"")),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode> {
    if !(1..=16).contains(&cli.k) {
        bail!("--k must be in 1..=16");
    }
    let n_max = cli.n_max.min(SCAN_CAP);
    match &cli.command {
        Command::Lfunc { chi } => cmd_lfunc(cli, chi.as_deref()),
        Command::Zeros { chi } => cmd_zeros(cli, chi.as_deref()),
        Command::Race { oracle, sidecar } => cmd_race(cli, *oracle, sidecar.as_deref()),
        Command::MainTerm => cmd_main_term(cli),
        Command::Compare => cmd_compare(cli),
        Command::Density => cmd_density(cli, n_max),
        Command::Table => cmd_table(cli, n_max),
        Command::Classify => cmd_classify(cli),
        Command::LiScan { q_bound } => cmd_li_scan(cli, *q_bound),
        Command::ConstructModulus { c, omega } => cmd_construct_modulus(cli, *c, *omega),
        Command::VerifyExamples => return verify::run(&cli.format, cli.seed, n_max),
    }?;
    Ok(ExitCode::SUCCESS)
}

fn context(cli: &Cli) -> Result<ModulusContext> {
    let field = parse_field(&cli.field).map_err(|e| anyhow!("--field: {e}"))?;
    let text = cli
        .modulus
        .as_deref()
        .ok_or_else(|| anyhow!("--modulus is required for this command"))?;
    let m = parse_poly(text, &field).map_err(|e| anyhow!("--modulus: {e}"))?;
    make_context(&field, &m).map_err(|e| anyhow!("{e}"))
}

fn selected_characters(
    ctx: &ModulusContext,
    chi: Option<&str>,
) -> Result<Vec<Character>> {
    match chi {
        Some(text) => {
            let exponents: Vec<u64> = text
                .split(',')
                .map(|part| part.trim().parse::<u64>().context("--chi: bad exponent"))
                .collect::<Result<_>>()?;
            let orders = ctx.factor_orders();
            if exponents.len() != orders.len() {
                bail!("--chi: expected {} exponents", orders.len());
            }
            Ok(vec![ctx.make_character(exponents)])
        }
        None => ctx.quadratic_characters().map_err(|e| anyhow!("{e}")),
    }
}

/// L-polynomial with cache read-through when a cache root is configured.
fn l_polynomial(cli: &Cli, ctx: &ModulusContext, chi: &Character) -> Result<LPolynomial> {
    if let Some(root) = &cli.cache_dir {
        if let Some(l) = cache::load_lfunc(root, &ctx.field, &ctx.modulus, &chi.exponents) {
            return Ok(l);
        }
    }
    let l = compute_l_polynomial(ctx, chi).map_err(|e| anyhow!("{e}"))?;
    if let Some(root) = &cli.cache_dir {
        cache::save_lfunc(root, &ctx.field, &ctx.modulus, &chi.exponents, &l)?;
    }
    Ok(l)
}

fn sqrt_q_label(q: u32) -> String {
    let s = (q as f64).sqrt();
    if s.fract() == 0.0 {
        format!("{}", s as u32)
    } else {
        format!("sqrt({q})")
    }
}

/// Renders the zero classification as a product of real factors.
fn factored_form(zd: &ZeroData, q: u32) -> String {
    let mut parts: Vec<String> = Vec::new();
    let s = sqrt_q_label(q);
    if zd.m_plus > 0 {
        parts.push(format!("(1 - {s}u)^{}", zd.m_plus));
    }
    if zd.m_minus > 0 {
        parts.push(format!("(1 + {s}u)^{}", zd.m_minus));
    }
    let sqrt_q = (q as f64).sqrt();
    for &(gamma, m) in &zd.spectral {
        if zd.conjugates_implied {
            parts.push(format!(
                "(1 - {:.6}u + {q}u^2)^{m}",
                2.0 * sqrt_q * gamma.cos()
            ));
        } else {
            let z = Complex::from_polar(sqrt_q, gamma);
            parts.push(format!("(1 - ({:.6}{:+.6}i)u)^{m}", z.re, z.im));
        }
    }
    for z in &zd.unit_zeros {
        if (z - Complex::new(1.0, 0.0)).norm() < 1e-9 {
            parts.push(String::from("(1 - u)"));
        } else if (z + Complex::new(1.0, 0.0)).norm() < 1e-9 {
            parts.push(String::from("(1 + u)"));
        } else {
            parts.push(format!("(1 - ({:.6}{:+.6}i)u)", z.re, z.im));
        }
    }
    if parts.is_empty() {
        String::from("1")
    } else {
        parts.join("")
    }
}

fn exponents_label(chi: &Character) -> String {
    chi.exponents
        .iter()
        .map(|e| e.to_string())
        .collect::<Vec<_>>()
        .join(";")
}

fn base_json(cli: &Cli, ctx: &ModulusContext) -> serde_json::Value {
    json!({
        "schema": cache::SCHEMA,
        "field": cli.field,
        "modulus": ctx.modulus.format(&ctx.field),
        "seed": cli.seed,
    })
}

fn merge(mut base: serde_json::Value, extra: serde_json::Value) -> serde_json::Value {
    let obj = base.as_object_mut().expect("object");
    for (k, v) in extra.as_object().expect("object") {
        obj.insert(k.clone(), v.clone());
    }
    base
}

fn cmd_lfunc(cli: &Cli, chi: Option<&str>) -> Result<()> {
    let ctx = context(cli)?;
    let mut entries = Vec::new();
    for chi in selected_characters(&ctx, chi)? {
        let l = l_polynomial(cli, &ctx, &chi)?;
        let zd = extract_zeros(&l, ctx.field.q).map_err(|e| anyhow!("{e}"))?;
        let cond = conductor(&ctx, &chi).map_err(|e| anyhow!("{e}"))?;
        entries.push(json!({
            "exponents": chi.exponents,
            "order": chi.order,
            "is_real": chi.is_real,
            "degree": l.degree(),
            "coeffs": l.coeffs.iter().map(|c| vec![c.re, c.im]).collect::<Vec<_>>(),
            "coeffs_int": l.coeffs_int,
            "exact": l.exact,
            "factored": factored_form(&zd, ctx.field.q),
            "conductor": cond.format(&ctx.field),
        }));
    }
    if cli.format == "csv" {
        println!("exponents,degree,coeffs,factored");
        for e in &entries {
            let coeffs = match &e["coeffs_int"] {
                serde_json::Value::Array(v) => v
                    .iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join(" "),
                _ => e["coeffs"]
                    .as_array()
                    .expect("array")
                    .iter()
                    .map(|c| format!("{}{:+}i", c[0], c[1]))
                    .collect::<Vec<_>>()
                    .join(" "),
            };
            println!(
                "{},{},{},\"{}\"",
                e["exponents"]
                    .as_array()
                    .expect("array")
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(";"),
                e["degree"],
                coeffs,
                e["factored"].as_str().expect("string"),
            );
        }
    } else {
        let out = merge(base_json(cli, &ctx), json!({ "entries": entries }));
        println!("{}", serde_json::to_string_pretty(&out)?);
    }
    Ok(())
}

fn cmd_zeros(cli: &Cli, chi: Option<&str>) -> Result<()> {
    let ctx = context(cli)?;
    let mut entries = Vec::new();
    for chi in selected_characters(&ctx, chi)? {
        let l = l_polynomial(cli, &ctx, &chi)?;
        let zd = extract_zeros(&l, ctx.field.q).map_err(|e| anyhow!("{e}"))?;
        entries.push((exponents_label(&chi), zd));
    }
    if cli.format == "csv" {
        println!("exponents,m_plus,m_minus,gamma,multiplicity");
        for (label, zd) in &entries {
            if zd.spectral.is_empty() {
                println!("{label},{},{},,", zd.m_plus, zd.m_minus);
            }
            for &(gamma, m) in &zd.spectral {
                println!("{label},{},{},{gamma:.12},{m}", zd.m_plus, zd.m_minus);
            }
        }
    } else {
        let rows: Vec<_> = entries
            .iter()
            .map(|(label, zd)| {
                json!({
                    "exponents": label,
                    "m_plus": zd.m_plus,
                    "m_minus": zd.m_minus,
                    "spectral": zd.spectral.iter()
                        .map(|&(g, m)| json!({"gamma": g, "multiplicity": m}))
                        .collect::<Vec<_>>(),
                    "conjugates_implied": zd.conjugates_implied,
                    "unit_zeros": zd.unit_zeros.iter().map(|z| vec![z.re, z.im]).collect::<Vec<_>>(),
                    "distinct_spectral": zd.d_chi,
                    "gap": if zd.gap.is_finite() { json!(zd.gap) } else { json!("inf") },
                })
            })
            .collect();
        let out = merge(base_json(cli, &ctx), json!({ "characters": rows }));
        println!("{}", serde_json::to_string_pretty(&out)?);
    }
    Ok(())
}

fn factorial(k: u32) -> f64 {
    (1..=k as u64).fold(1.0, |acc, i| acc * i as f64)
}

/// Exact normalized race values over degrees `x = x0..=x_max` for the
/// squares-vs-nonsquares race. The recursion path expands
/// `(1/|A|)·#A − (1/|B|)·#B = Σ_χ c(χ,A,B)·π_{f_k}(n,χ)`; the race
/// coefficient vanishes unless `χ` is quadratic, so only those are summed.
fn exact_race_values(
    ctx: &ModulusContext,
    f: CountFunction,
    k: u32,
    x_max: u64,
    oracle: bool,
    budget: u64,
) -> Result<Vec<(u64, f64)>> {
    let (sq, nsq) = quadratic_residues(ctx).map_err(|e| anyhow!("{e}"))?;
    let q = ctx.field.q as f64;
    let (a_len, b_len) = (sq.len() as f64, nsq.len() as f64);
    let mut engine = CountEngine::new(ctx);
    let weighted: Vec<(Character, Complex<f64>)> = ctx
        .quadratic_characters()
        .map_err(|e| anyhow!("{e}"))?
        .into_iter()
        .map(|chi| {
            let c = c_coefficient(ctx, &chi, &sq, &nsq).map_err(|e| anyhow!("{e}"))?;
            Ok((chi, c))
        })
        .collect::<Result<_>>()?;
    let mut cum = 0.0;
    let mut cum_a = 0.0;
    let mut cum_b = 0.0;
    let mut out = Vec::new();
    for x in 1..=x_max {
        if oracle {
            cum_a += pi_fk_by_class_bruteforce(ctx, x as usize, k, f, &sq, budget)
                .map_err(|e| anyhow!("{e}"))? as f64;
            cum_b += pi_fk_by_class_bruteforce(ctx, x as usize, k, f, &nsq, budget)
                .map_err(|e| anyhow!("{e}"))? as f64;
            cum = cum_a / a_len - cum_b / b_len;
        } else {
            for (chi, c) in &weighted {
                let v = engine
                    .pi_fk(chi, f, k, x as usize)
                    .map_err(|e| anyhow!("{e}"))?
                    .to_complex();
                cum += (c * v).re;
            }
        }
        if x == 1 && k >= 2 {
            continue; // log(1) = 0 makes the normalization singular.
        }
        let norm = x as f64 * factorial(k - 1)
            / (q.powf(x as f64 / 2.0) * (x as f64).ln().powi(k as i32 - 1));
        out.push((x, norm * cum));
    }
    Ok(out)
}

fn cmd_race(cli: &Cli, oracle: bool, sidecar: Option<&std::path::Path>) -> Result<()> {
    let ctx = context(cli)?;
    let rows = exact_race_values(&ctx, cli.f, cli.k, cli.x_max, oracle, cli.budget)?;
    let params = merge(
        base_json(cli, &ctx),
        json!({
            "f": cli.f.label(),
            "k": cli.k,
            "x_max": cli.x_max,
            "oracle": oracle,
            "a": "squares",
            "b": "nonsquares",
        }),
    );
    if let Some(path) = sidecar {
        std::fs::write(path, serde_json::to_string_pretty(&params)?)
            .with_context(|| format!("writing {}", path.display()))?;
    }
    if cli.format == "csv" {
        println!("X,delta,sign");
        for (x, delta) in &rows {
            println!("{x},{delta:.12e},{}", sign_of(*delta));
        }
    } else {
        let out = merge(
            params,
            json!({
                "rows": rows.iter()
                    .map(|(x, d)| json!({"x": x, "delta": d, "sign": sign_of(*d)}))
                    .collect::<Vec<_>>(),
            }),
        );
        println!("{}", serde_json::to_string_pretty(&out)?);
    }
    Ok(())
}

fn sign_of(v: f64) -> i32 {
    if v > 0.0 {
        1
    } else if v < 0.0 {
        -1
    } else {
        0
    }
}

fn race_spec(ctx: &ModulusContext, f: CountFunction, k: u32) -> Result<MainTermSpec> {
    build_quadratic_race_term(ctx, f, k).map_err(|e| anyhow!("{e}"))
}

fn spec_json(spec: &MainTermSpec) -> serde_json::Value {
    json!({
        "f": spec.f.label(),
        "k": spec.k,
        "sign": spec.sign,
        "constant": spec.constant,
        "alternating": spec.alternating,
        "oscillators": spec.oscillators.iter()
            .map(|o| json!({"gamma": o.gamma, "re": o.coeff.re, "im": o.coeff.im}))
            .collect::<Vec<_>>(),
        "oscillation_radius": spec.oscillation_radius(),
        "warnings": spec.warnings,
    })
}

fn cmd_main_term(cli: &Cli) -> Result<()> {
    let ctx = context(cli)?;
    let spec = race_spec(&ctx, cli.f, cli.k)?;
    if cli.format == "csv" {
        println!("term,gamma,re,im");
        println!("constant,,{},0", spec.constant);
        println!("alternating,,{},0", spec.alternating);
        for o in &spec.oscillators {
            println!("oscillator,{:.12},{},{}", o.gamma, o.coeff.re, o.coeff.im);
        }
    } else {
        let out = merge(base_json(cli, &ctx), spec_json(&spec));
        println!("{}", serde_json::to_string_pretty(&out)?);
    }
    Ok(())
}

fn cmd_compare(cli: &Cli) -> Result<()> {
    let ctx = context(cli)?;
    let spec = race_spec(&ctx, cli.f, cli.k)?;
    let rows = exact_race_values(&ctx, cli.f, cli.k, cli.x_max, false, cli.budget)?;
    if cli.format == "csv" {
        println!("n,exact,asymptotic,diff");
        for (x, exact) in &rows {
            let asym = eval_main_term(&spec, *x);
            println!("{x},{exact:.12e},{asym:.12e},{:.12e}", exact - asym);
        }
    } else {
        let out = merge(
            base_json(cli, &ctx),
            json!({
                "f": cli.f.label(),
                "k": cli.k,
                "rows": rows.iter().map(|(x, exact)| {
                    let asym = eval_main_term(&spec, *x);
                    json!({"n": x, "exact": exact, "asymptotic": asym, "diff": exact - asym})
                }).collect::<Vec<_>>(),
            }),
        );
        println!("{}", serde_json::to_string_pretty(&out)?);
    }
    Ok(())
}

fn density_json(report: &polyrace_core::bias::DensityReport) -> serde_json::Value {
    json!({
        "n": report.n,
        "positive": report.positive,
        "negative": report.negative,
        "zero": report.zero,
        "density": *report.density.numer() as f64 / *report.density.denom() as f64,
        "density_exact": format!("{}/{}", report.density.numer(), report.density.denom()),
        "near_zero_flags": report.near_zero_flags,
        "period": report.period,
    })
}

fn cmd_density(cli: &Cli, n_max: u64) -> Result<()> {
    let ctx = context(cli)?;
    let report = race_sign_scan(&ctx, cli.f, cli.k, n_max).map_err(|e| anyhow!("{e}"))?;
    if cli.format == "csv" {
        println!("f,k,n,positive,negative,zero,density,period");
        print_density_csv(cli.f, cli.k, &report);
    } else {
        let out = merge(
            base_json(cli, &ctx),
            merge(json!({"f": cli.f.label(), "k": cli.k}), density_json(&report)),
        );
        println!("{}", serde_json::to_string_pretty(&out)?);
    }
    Ok(())
}

fn print_density_csv(f: CountFunction, k: u32, report: &polyrace_core::bias::DensityReport) {
    println!(
        "{},{},{},{},{},{},{:.9},{}",
        f.label(),
        k,
        report.n,
        report.positive,
        report.negative,
        report.zero,
        *report.density.numer() as f64 / *report.density.denom() as f64,
        report.period.map_or(String::new(), |p| p.to_string()),
    );
}

fn cmd_table(cli: &Cli, n_max: u64) -> Result<()> {
    let ctx = context(cli)?;
    let mut rows = Vec::new();
    for k in 1..=cli.k {
        for f in [CountFunction::BigOmega, CountFunction::SmallOmega] {
            let report = race_sign_scan(&ctx, f, k, n_max).map_err(|e| anyhow!("{e}"))?;
            rows.push((f, k, report));
        }
    }
    if cli.format == "csv" {
        println!("f,k,n,positive,negative,zero,density,period");
        for (f, k, report) in &rows {
            print_density_csv(*f, *k, report);
        }
    } else {
        let out = merge(
            base_json(cli, &ctx),
            json!({
                "rows": rows.iter().map(|(f, k, report)| {
                    merge(json!({"f": f.label(), "k": k}), density_json(report))
                }).collect::<Vec<_>>(),
            }),
        );
        println!("{}", serde_json::to_string_pretty(&out)?);
    }
    Ok(())
}

fn class_label(class: KLimitClass) -> &'static str {
    match class {
        KLimitClass::SymmetricDissipating => "symmetric-dissipating",
        KLimitClass::DiracExtreme => "dirac-extreme",
        KLimitClass::HalfDiracUnbiased => "half-dirac-unbiased",
        KLimitClass::MixedReal => "mixed-real",
    }
}

fn cmd_classify(cli: &Cli) -> Result<()> {
    let ctx = context(cli)?;
    let report = k_limit_classify(&ctx, cli.f).map_err(|e| anyhow!("{e}"))?;
    let bi = b_i_report(&ctx, cli.k).map_err(|e| anyhow!("{e}"))?;
    let var = var_nu(&ctx, cli.k).map_err(|e| anyhow!("{e}"))?;
    let bound = match chebyshev_bound(&ctx, cli.k, cli.f) {
        Ok(b) => json!(b),
        Err(BiasError::NotSquarefree) => serde_json::Value::Null,
        Err(e) => return Err(anyhow!("{e}")),
    };
    let gap = gamma_m(&ctx).map_err(|e| anyhow!("{e}"))?;
    let out = merge(
        base_json(cli, &ctx),
        json!({
            "f": cli.f.label(),
            "k": cli.k,
            "class": class_label(report.class),
            "m_f_max": report.m_f_max,
            "plus_at_max": report.plus_at_max,
            "minus_at_max": report.minus_at_max,
            "spectral_at_max": report.spectral_at_max,
            "b": if bi.b.is_finite() { json!(bi.b) } else { json!("inf") },
            "i_spectral": bi.i_spectral,
            "i_with_central": bi.i_with_central,
            "i_approx": bi.i_approx,
            "var_nu": var,
            "chebyshev_bound": bound,
            "min_angle_gap": if gap.is_finite() { json!(gap) } else { json!("inf") },
            "normalization": delta_normalization(&ctx),
        }),
    );
    if cli.format == "csv" {
        println!("f,k,class,m_f_max,b,i_spectral,i_with_central,var_nu");
        println!(
            "{},{},{},{},{},{},{},{}",
            cli.f.label(),
            cli.k,
            class_label(report.class),
            report.m_f_max,
            bi.b,
            bi.i_spectral,
            bi.i_with_central,
            var
        );
    } else {
        println!("{}", serde_json::to_string_pretty(&out)?);
    }
    Ok(())
}

fn cmd_li_scan(cli: &Cli, q_bound: i64) -> Result<()> {
    let ctx = context(cli)?;
    let spec = race_spec(&ctx, cli.f, cli.k)?;
    let angles = spec_angles(&spec);
    let relations = li_heuristic_scan(&angles, q_bound);
    if cli.format == "csv" {
        println!("relation");
        for rel in &relations {
            println!(
                "\"{}\"",
                rel.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(" ")
            );
        }
    } else {
        let out = merge(
            base_json(cli, &ctx),
            json!({
                "angles": angles,
                "q_bound": q_bound,
                "relations": relations,
                "independent_up_to_bound": relations.is_empty(),
            }),
        );
        println!("{}", serde_json::to_string_pretty(&out)?);
    }
    Ok(())
}

/// Smallest monic irreducible of each degree, via the cache when configured.
fn smallest_irreducibles(
    cli: &Cli,
    field: &FieldSpec,
    degrees: &[usize],
) -> Result<Vec<Poly>> {
    let mut table = IrreducibleTable::for_field(field);
    let mut out = Vec::new();
    for &d in degrees {
        if let Some(root) = &cli.cache_dir {
            if let Some(polys) = cache::load_irreducibles(root, field, d) {
                table.install(d, polys);
            }
        }
        let list = table.degree(d, cli.budget).map_err(|e| anyhow!("{e}"))?.to_vec();
        if let Some(root) = &cli.cache_dir {
            cache::save_irreducibles(root, field, d, &list)?;
        }
        out.push(
            list.into_iter()
                .next()
                .ok_or_else(|| anyhow!("no irreducible of degree {d}"))?,
        );
    }
    Ok(out)
}

fn cmd_construct_modulus(cli: &Cli, c: f64, omega: u32) -> Result<()> {
    let field = parse_field(&cli.field).map_err(|e| anyhow!("--field: {e}"))?;
    if omega < 2 || !(c > 0.0) {
        bail!("need --omega >= 2 and --c > 0");
    }
    // Distinct degrees 1, 2, ..., omega-1 and the remainder of the total
    // degree floor(2^omega / c) on the last factor.
    let total = ((2.0f64).powi(omega as i32) / c).floor() as u64;
    let prefix: u64 = (1..omega as u64).sum();
    if total < prefix + omega as u64 {
        bail!("no distinct-degree partition: total degree {total} is too small");
    }
    let mut degrees: Vec<usize> = (1..omega as usize).collect();
    degrees.push((total - prefix) as usize);
    let factors = smallest_irreducibles(cli, &field, &degrees)?;
    let mut m = Poly::one();
    for p in &factors {
        m = m.mul(p, &field);
    }
    if cli.format == "csv" {
        println!("modulus,degrees");
        println!(
            "\"{}\",\"{}\"",
            m.format(&field),
            degrees.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" ")
        );
    } else {
        let out = json!({
            "schema": cache::SCHEMA,
            "field": cli.field,
            "c": c,
            "omega": omega,
            "degrees": degrees,
            "factors": factors.iter().map(|p| p.format(&field)).collect::<Vec<_>>(),
            "modulus": m.format(&field),
        });
        println!("{}", serde_json::to_string_pretty(&out)?);
    }
    Ok(())
}
