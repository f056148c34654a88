//! Command-line front end: knot-file ingestion, invariant computation,
//! certified genus bounds, and report emission.
//!
//! Exit codes are a stable contract: 0 = certified / success, 1 = a required
//! condition is certifiably false, 2 = input error, 3 = undecidable at the
//! current precision.

use std::fs;
use std::path::Path;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde_json::json;

use slicebound::alexmod::AlexanderModule;
use slicebound::bounds::{
    build_companion_multiplicities, certify_family_genus, lee_wilczynski_report, BoundReport,
    BuildError, CertifyError, Conclusion,
};
use slicebound::construct::{build_family, verify_p3, FamilyDescriptor};
use slicebound::io::{
    canonical_json, decimal_string, family_to_descriptor, knot_to_seifert, parse_family_file,
    parse_knot_file, report_to_json, rho_json, seifert_to_knot,
};
use slicebound::ring::{
    cyclotomic, distinct_prime_factors, euler_phi, prime_power_decomposition, rat, Rational,
};
use slicebound::seifert::{catalog, catalog_names, SeifertMatrix};
use slicebound::signatures::{rho_integral, signature_at_minus_one, signature_function};

const EXIT_OK: u8 = 0;
const EXIT_REFUTED: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_UNDECIDABLE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "slicebound",
    version,
    about = "Exact Seifert-matrix invariants and certified slice-genus lower bounds"
)]
struct Cli {
    /// Half-width of certified rho enclosures; rational ("1/1000000"),
    /// decimal ("0.000001"), or scientific ("1e-6").
    #[arg(long, global = true, env = "SLICEBOUND_PRECISION", default_value = "1e-6")]
    precision: String,

    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute invariants of a knot given as a JSON file path or catalog name.
    Invariants {
        /// Path to a knot JSON document, or a catalog name like "trefoil" or
        /// "torus(2,7)".
        knot: String,
    },
    /// Certify a slice-genus lower bound for a family descriptor file.
    Certify {
        /// Path to a family JSON document {"g", "n", "J", "J_prime", ...}.
        family: String,
        /// Correction-term budget: the bound is certified against any
        /// character contribution of magnitude at most C.
        #[arg(long = "C", default_value = "10", allow_hyphen_values = true)]
        c: String,
        /// Override the genus recorded in the family file.
        #[arg(long)]
        g: Option<u32>,
    },
    /// Evaluate the embedded-surface genus inequality from branched-cover data.
    Lw {
        /// Second Betti number of the ambient 4-manifold piece.
        #[arg(long)]
        beta2: u64,
        /// Signature of the ambient 4-manifold piece.
        #[arg(long, allow_hyphen_values = true)]
        sign: i64,
        /// Self-intersection of the surface class.
        #[arg(long = "self-int", default_value_t = 0, allow_hyphen_values = true)]
        self_int: i64,
        /// Divisibility of the surface class (a positive integer).
        #[arg(long, default_value_t = 1)]
        d: u64,
    },
    /// List the built-in knot catalog.
    Catalog,
    /// Print the n-th cyclotomic polynomial and its unit-evaluation gate.
    Cyclotomic { n: u64 },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let precision = match parse_rational(&cli.precision) {
        Ok(p) if p.is_positive() => p,
        Ok(_) => return input_error("precision must be positive"),
        Err(e) => return input_error(&format!("bad precision {:?}: {e}", cli.precision)),
    };
    match &cli.command {
        Command::Invariants { knot } => cmd_invariants(knot, &precision, cli.json),
        Command::Certify { family, c, g } => {
            let c = match parse_rational(c) {
                Ok(v) => v,
                Err(e) => return input_error(&format!("bad value for --C {c:?}: {e}")),
            };
            cmd_certify(family, &c, *g, &precision, cli.json)
        }
        Command::Lw { beta2, sign, self_int, d } => cmd_lw(*beta2, *sign, *self_int, *d, cli.json),
        Command::Catalog => cmd_catalog(cli.json),
        Command::Cyclotomic { n } => cmd_cyclotomic(*n, cli.json),
    }
}

fn input_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_INPUT)
}

/// Parses "p/q", plain integers, decimals, and scientific notation into an
/// exact rational.
fn parse_rational(text: &str) -> Result<Rational, String> {
    let text = text.trim();
    if text.is_empty() {
        return Err("empty".into());
    }
    if let Some((num, den)) = text.split_once('/') {
        let n = BigInt::from_str(num.trim()).map_err(|e| e.to_string())?;
        let d = BigInt::from_str(den.trim()).map_err(|e| e.to_string())?;
        if d.is_zero() {
            return Err("zero denominator".into());
        }
        return Ok(Rational::new(n, d));
    }
    let (mantissa, exp) = match text.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().map_err(|e| e.to_string())?),
        None => (text, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    if frac_part.contains(['+', '-']) {
        return Err("misplaced sign".into());
    }
    let digits = format!("{int_part}{frac_part}");
    let n = BigInt::from_str(if digits.is_empty() { "0" } else { &digits })
        .map_err(|e| e.to_string())?;
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    Ok(if scale >= 0 {
        Rational::from(n * ten.pow(scale as u32))
    } else {
        Rational::new(n, ten.pow(scale.unsigned_abs()))
    })
}

/// Loads a knot from a file path or, failing that, the catalog.
fn load_knot(arg: &str) -> Result<SeifertMatrix, String> {
    let path = Path::new(arg);
    if path.exists() {
        let text = fs::read_to_string(path).map_err(|e| format!("{arg}: {e}"))?;
        let file = parse_knot_file(&text).map_err(|e| format!("{arg}: {e}"))?;
        return knot_to_seifert(&file).map_err(|e| format!("{arg}: {e}"));
    }
    if arg.ends_with(".json") || arg.contains('/') {
        return Err(format!("{arg}: file not found"));
    }
    catalog(arg, &[]).map_err(|e| {
        format!("{arg:?} is neither an existing file nor a catalog name ({e}); known names: {:?}",
            catalog_names())
    })
}

fn is_perfect_square(v: &BigInt) -> bool {
    if v.is_negative() {
        return false;
    }
    let r = v.sqrt();
    &(&r * &r) == v
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "FAIL"
    }
}

fn cmd_invariants(arg: &str, precision: &Rational, json: bool) -> ExitCode {
    let s = match load_knot(arg) {
        Ok(s) => s,
        Err(e) => return input_error(&e),
    };
    let delta = s.alexander_polynomial();
    let sigma = signature_at_minus_one(&s);
    let sf = signature_function(&s);
    let rho = rho_integral(&s, precision);
    let module = AlexanderModule::new(&s);
    let factors = module.invariant_factors();
    let mu = module.min_generators();

    let det_at_one = delta.eval_at_one();
    let unit_determinant = det_at_one.abs() == rat(1, 1);
    let sig_zero = sf.is_identically_zero();
    let at_minus_one = delta.rep().evaluate(&rat(-1, 1));
    let at_minus_one_int = at_minus_one.abs().to_integer();
    let square = is_perfect_square(&at_minus_one_int);

    if json {
        let out = json!({
            "name": s.name().unwrap_or("knot"),
            "size": s.size(),
            "genus_bound": s.genus_bound(),
            "alexander_polynomial": delta.rep().to_string(),
            "invariant_factors": factors.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
            "min_generators": mu,
            "signature_at_minus_one": sigma,
            "arc_values": sf.arc_values(),
            "jump_abscissae": sf
                .jumps()
                .iter()
                .map(|(lo, hi)| json!([lo.to_string(), hi.to_string()]))
                .collect::<Vec<_>>(),
            "signature_identically_zero": sig_zero,
            "rho": rho_json(&rho),
            "necessary_slice_conditions": {
                "determinant_is_unit": unit_determinant,
                "signature_function_zero": sig_zero,
                "alexander_at_minus_one_square": square,
                "abs_alexander_at_minus_one": at_minus_one_int.to_string(),
            },
        });
        println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
        return ExitCode::from(EXIT_OK);
    }

    println!("knot: {}", s.name().unwrap_or("knot"));
    println!("seifert matrix: {0}x{0} (genus bound {1})", s.size(), s.genus_bound());
    println!("alexander polynomial: {}", delta.rep());
    println!(
        "invariant factors: [{}]",
        factors.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(", ")
    );
    println!("min generators (mu): {mu}");
    println!("signature at -1: {sigma}");
    println!("signature arcs (theta-ascending): {:?}", sf.arc_values());
    let jumps = sf
        .jumps()
        .iter()
        .map(|(lo, hi)| format!("({lo}, {hi})"))
        .collect::<Vec<_>>()
        .join(", ");
    println!("jump abscissae x = 2cos(theta), isolating intervals: [{jumps}]");
    match rho.exact_rational() {
        Some(q) => println!(
            "rho: {} +/- {} (exact: {q})",
            decimal_string(rho.value()),
            decimal_string(rho.error_bound())
        ),
        None => println!(
            "rho: {} +/- {}",
            decimal_string(rho.value()),
            decimal_string(rho.error_bound())
        ),
    }
    println!("necessary slice conditions:");
    println!("  delta(1) = +/-1: {}", yes_no(unit_determinant));
    println!("  signature function identically zero: {}", yes_no(sig_zero));
    println!(
        "  |delta(-1)| = {} a perfect square: {}",
        at_minus_one_int,
        yes_no(square)
    );
    ExitCode::from(EXIT_OK)
}

fn print_report(report: &BoundReport, json: bool, note: Option<&str>) {
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&report_to_json(report)).expect("serializable")
        );
        return;
    }
    println!("inputs:");
    for (k, v) in &report.inputs {
        println!("  {k} = {v}");
    }
    println!("fired rules:");
    for (i, rule) in report.fired_rules.iter().enumerate() {
        println!("  [{}] {}", i + 1, rule.name);
        println!("      anchor: {}", rule.anchor);
        println!("      {}", rule.instantiation);
    }
    match &report.conclusion {
        Conclusion::GenusAtLeast { bound, sharp } => {
            println!("conclusion: certified genus >= {bound}");
            if *sharp {
                println!("  (sharp: the construction realizes genus {bound}, so equality holds)");
            }
        }
        Conclusion::GenusBound(b) => println!("conclusion: genus >= {b}"),
        Conclusion::NoInformation => println!("conclusion: no information"),
    }
    if let Some(n) = note {
        println!("{n}");
    }
    println!(
        "self-check: {}",
        if report.verify() { "all fired rules re-verified" } else { "RULE RE-VERIFICATION FAILED" }
    );
}

fn cmd_certify(
    path: &str,
    c: &Rational,
    g_override: Option<u32>,
    precision: &Rational,
    json: bool,
) -> ExitCode {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return input_error(&format!("{path}: {e}")),
    };
    let file = match parse_family_file(&text) {
        Ok(f) => f,
        Err(e) => return input_error(&format!("{path}: {e}")),
    };
    let mut desc: FamilyDescriptor = match family_to_descriptor(&file) {
        Ok(d) => d,
        Err(e) => return input_error(&format!("{path}: {e}")),
    };
    if let Some(g) = g_override {
        desc.g = g;
    }

    let auto = file.j_copies.is_none() || file.j_prime_copies.is_none();
    if auto {
        if desc.j.matrix() != desc.j_prime.matrix() {
            return input_error(
                "automatic multiplicities need J and J_prime to be the same seed knot; \
                 give J_copies and J_prime_copies explicitly otherwise",
            );
        }
        match build_companion_multiplicities(c, desc.g, &desc.j) {
            Ok((k, kp)) => {
                desc.j_copies = k;
                desc.j_prime_copies = kp;
            }
            Err(BuildError::InvalidInput(m)) => return input_error(&m),
            Err(e @ BuildError::SeedRhoIndistinguishableFromZero) => {
                return input_error(&e.to_string())
            }
        }
    }

    let family = match build_family(&desc) {
        Ok(f) => f,
        Err(e) => return input_error(&format!("family rejected: {e}")),
    };
    let cert = verify_p3(&family);
    assert!(
        cert.passed,
        "internal error: the diagonal metabolizer check failed on a built family (rank {})",
        cert.rank
    );

    let rho_j_seed = rho_integral(&desc.j, precision);
    let rho_jp_seed = if desc.j.matrix() == desc.j_prime.matrix() {
        rho_j_seed.clone()
    } else {
        rho_integral(&desc.j_prime, precision)
    };
    let rho_j = rho_j_seed.scale(desc.j_copies);
    let rho_jp = rho_jp_seed.scale(desc.j_prime_copies);

    match certify_family_genus(c, desc.g, &rho_j, &rho_jp) {
        Ok(report) => {
            if !json {
                println!(
                    "family: g = {}, n = {} ({}x{} Seifert matrix), companions {}x J, {}x J'",
                    family.g,
                    family.n,
                    family.seifert.size(),
                    family.seifert.size(),
                    desc.j_copies,
                    desc.j_prime_copies
                );
                println!(
                    "metabolizer: diagonal certificate of rank {} verified (classical obstructions vanish)",
                    cert.rank
                );
            }
            print_report(&report, json, None);
            ExitCode::from(EXIT_OK)
        }
        Err(CertifyError::InvalidInput(m)) => input_error(&m),
        Err(e @ CertifyError::Undecidable { .. }) => {
            eprintln!("undecidable: {e}");
            eprintln!("hint: rerun with a smaller --precision (current {precision})");
            ExitCode::from(EXIT_UNDECIDABLE)
        }
        Err(e @ CertifyError::ConditionFailed { .. }) => {
            eprintln!("refuted: {e}");
            ExitCode::from(EXIT_REFUTED)
        }
    }
}

fn cmd_lw(beta2: u64, sign: i64, self_int: i64, d: u64, json: bool) -> ExitCode {
    if d == 0 {
        return input_error("--d must be a positive integer");
    }
    let report = lee_wilczynski_report(beta2, sign, self_int, d);
    print_report(&report, json, None);
    ExitCode::from(EXIT_OK)
}

fn cmd_catalog(json: bool) -> ExitCode {
    if json {
        let entries: Vec<_> = catalog_names()
            .iter()
            .map(|name| {
                let demo = demo_instance(name);
                json!({
                    "name": name,
                    "example": canonical_json(&seifert_to_knot(&demo)),
                    "size": demo.size(),
                })
            })
            .collect();
        println!("{}", serde_json::to_string_pretty(&json!(entries)).expect("serializable"));
        return ExitCode::from(EXIT_OK);
    }
    println!("catalog knots (usable anywhere a knot file is expected):");
    for name in catalog_names() {
        let demo = demo_instance(name);
        println!("  {name:<14} {0}x{0} Seifert matrix", demo.size());
    }
    ExitCode::from(EXIT_OK)
}

fn demo_instance(name: &str) -> SeifertMatrix {
    match name {
        "torus(2,q)" => catalog("torus", &[2, 5]).expect("demo torus"),
        "twist(k)" => catalog("twist", &[2]).expect("demo twist"),
        other => catalog(other, &[]).expect("catalog demo"),
    }
}

fn cmd_cyclotomic(n: u64, json: bool) -> ExitCode {
    if n == 0 {
        return input_error("n must be a positive integer");
    }
    let phi = cyclotomic(n);
    let at_one = phi.eval_at_one();
    let decomposition = prime_power_decomposition(n);
    let primes = distinct_prime_factors(n);
    let realizable = at_one.abs() == rat(1, 1);
    if json {
        let out = json!({
            "n": n,
            "degree": euler_phi(n),
            "polynomial": phi.to_string(),
            "value_at_one": at_one.to_string(),
            "prime_power": decomposition.map(|(p, a)| json!({ "p": p, "a": a })),
            "distinct_prime_factors": primes,
            "realizable": realizable,
            "order_gate": realizable && primes.len() >= 3,
        });
        println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
        return ExitCode::from(EXIT_OK);
    }
    println!("Phi_{n} = {phi}");
    println!("degree: {}", euler_phi(n));
    println!("Phi_{n}(1) = {at_one}");
    match decomposition {
        Some((p, a)) => println!(
            "n = {p}^{a} is a prime power: Phi_{n}(1) = {p} != +/-1, not realizable by a Seifert matrix"
        ),
        None => {
            println!("n is not a prime power: Phi_{n}(1) = 1, realizable by a Seifert matrix");
            if primes.len() >= 3 {
                println!("order gate: {} distinct primes {:?} (>= 3): usable family order", primes.len(), primes);
            } else {
                println!(
                    "order gate: only {} distinct primes {:?} (< 3): rejected as a family order",
                    primes.len(),
                    primes
                );
            }
        }
    }
    ExitCode::from(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("1e-6").unwrap(), rat(1, 1_000_000));
        assert_eq!(parse_rational("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_rational("-3.5e2").unwrap(), rat(-350, 1));
        assert_eq!(parse_rational("7/2").unwrap(), rat(7, 2));
        assert_eq!(parse_rational("10").unwrap(), rat(10, 1));
        assert_eq!(parse_rational("1E3").unwrap(), rat(1000, 1));
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1.2.3").is_err());
    }

    #[test]
    fn perfect_squares() {
        assert!(is_perfect_square(&BigInt::from(0)));
        assert!(is_perfect_square(&BigInt::from(1)));
        assert!(is_perfect_square(&BigInt::from(9)));
        assert!(is_perfect_square(&BigInt::from(144)));
        assert!(!is_perfect_square(&BigInt::from(3)));
        assert!(!is_perfect_square(&BigInt::from(-4)));
        assert!(!is_perfect_square(&BigInt::from(145)));
    }
}
