//! Batch runner: every construction and verification as a reproducible
//! command with machine-readable output.
//!
//! Exit codes: 0 all requested checks pass, 1 a verification failed,
//! 2 bad input, 3 a budget or size gate was exhausted.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use boxminors::blowup::{self, BlowupOptions};
use boxminors::boxmatrix::{BoxMatrix, BoxShape};
use boxminors::gb::{self, GbConfig};
use boxminors::segre::{self, KernelOptions};
use boxminors::{Error, Ideal};

#[derive(Parser)]
#[command(name = "boxminors", version, about = "Ideals of 2x2 minors of box-shaped matrices: constructions and checks")]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write the report to a file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// S-pair reduction budget for basis computations
    #[arg(long, global = true, env = "BOXMINORS_BUDGET_SPAIRS", default_value_t = 200_000)]
    budget_spairs: usize,

    /// Term-count budget for intermediate polynomials
    #[arg(long, global = true, env = "BOXMINORS_BUDGET_TERMS", default_value_t = 500_000)]
    budget_terms: usize,

    /// Optional degree bound for basis computations (homogeneous ideals)
    #[arg(long, global = true, env = "BOXMINORS_BUDGET_DEGREE")]
    budget_degree: Option<u32>,

    /// Position gate for elimination oracles
    #[arg(long, global = true, env = "BOXMINORS_GATE_POSITIONS", default_value_t = 12)]
    gate_positions: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Emit the deduplicated 2x2 minors of the generic box
    Minors {
        /// Box spec like 2x3x4
        spec: String,
    },
    /// Verify the minors form a Groebner basis: reduce every S-pair
    GbVerify {
        spec: String,
        /// Corrupt one minor first (the check must then fail)
        #[arg(long)]
        mutate: bool,
    },
    /// Hilbert function of the minor ideal: closed formula vs enumeration
    Hilbert {
        spec: String,
        #[arg(long, default_value_t = 4)]
        tmax: u32,
    },
    /// Compare the eliminated Segre kernel with the minor ideal
    SegreKernel { spec: String },
    /// Decide decomposability of a tensor given as a JSON file
    Decompose { tensor: PathBuf },
    /// Run the full blowup pipeline for (d, n)
    Blowup {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

struct Report {
    json: Value,
    text: String,
    pass: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let gbcfg = GbConfig {
        max_spairs: cli.budget_spairs,
        max_poly_terms: cli.budget_terms,
        degree_bound: cli.budget_degree,
    };
    let result = match &cli.command {
        Command::Minors { spec } => cmd_minors(&cli, spec),
        Command::GbVerify { spec, mutate } => cmd_gb_verify(&cli, &gbcfg, spec, *mutate),
        Command::Hilbert { spec, tmax } => cmd_hilbert(&cli, &gbcfg, spec, *tmax),
        Command::SegreKernel { spec } => cmd_segre_kernel(&cli, &gbcfg, spec),
        Command::Decompose { tensor } => cmd_decompose(&cli, tensor),
        Command::Blowup { d, n, seed } => cmd_blowup(&cli, &gbcfg, *d, *n, *seed),
    };
    match result {
        Ok(report) => {
            let rendered = match cli.format {
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&report.json).unwrap();
                    s.push('\n');
                    s
                }
                Format::Text => report.text,
            };
            match &cli.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, rendered) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => print!("{rendered}"),
            }
            if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(error_code(&e))
        }
    }
}

fn error_code(e: &Error) -> u8 {
    match e {
        Error::Budget { .. } | Error::Gate { .. } | Error::PointRetries { .. } => 3,
        _ => 2,
    }
}

fn config_json(cli: &Cli, extra: Value) -> Value {
    let mut cfg = json!({
        "budget_spairs": cli.budget_spairs,
        "budget_terms": cli.budget_terms,
        "budget_degree": cli.budget_degree,
        "gate_positions": cli.gate_positions,
    });
    if let Value::Object(dst) = &mut cfg {
        if let Value::Object(src) = extra {
            for (k, v) in src {
                dst.insert(k, v);
            }
        }
    }
    cfg
}

fn cmd_minors(cli: &Cli, spec: &str) -> Result<Report, Error> {
    let shape = BoxShape::parse(spec)?;
    let a = BoxMatrix::generic(shape);
    let minors = a.all_minors();
    let mut text = String::new();
    let _ = writeln!(text, "I_2(A) for the generic {spec} box: {} minors", minors.len());
    for m in &minors {
        let _ = writeln!(text, "{m}");
    }
    let json = json!({
        "schema": 1,
        "command": "minors",
        "config": config_json(cli, json!({"spec": spec})),
        "count": minors.len(),
        "ideal": Ideal::new(a.ring().clone(), minors).to_json(),
        "pass": true,
    });
    Ok(Report { json, text, pass: true })
}

fn cmd_gb_verify(cli: &Cli, gbcfg: &GbConfig, spec: &str, mutate: bool) -> Result<Report, Error> {
    let shape = BoxShape::parse(spec)?;
    let a = BoxMatrix::generic(shape);
    let mut minors = a.all_minors();
    if mutate {
        // flip the sign of the trailing term of the first minor; with at
        // least one S-pair available the criterion must then fail
        if let Some(first) = minors.first_mut() {
            let tail = first.tail();
            *first = first.sub(&tail).sub(&tail);
        }
    }
    let check = gb::is_groebner_basis(&minors, gbcfg)?;
    let pass = check.is_basis;
    let mut text = String::new();
    let _ = writeln!(
        text,
        "gb-verify {spec}{}: {} generators, {} S-pairs reduced, basis: {}",
        if mutate { " (mutated)" } else { "" },
        minors.len(),
        check.spairs_checked,
        check.is_basis
    );
    let witness_json = check.witness.as_ref().map(|(i, j, r)| {
        let _ = writeln!(text, "offending pair ({i}, {j}), remainder {r}");
        json!({"pair": [i, j], "remainder": r.to_string()})
    });
    let _ = writeln!(text, "{}", if pass { "PASS" } else { "FAIL" });
    let json = json!({
        "schema": 1,
        "command": "gb-verify",
        "config": config_json(cli, json!({"spec": spec, "mutate": mutate})),
        "generators": minors.len(),
        "spairs_checked": check.spairs_checked,
        "is_groebner_basis": check.is_basis,
        "witness": witness_json,
        "pass": pass,
    });
    Ok(Report { json, text, pass })
}

fn bigint_json(v: &BigInt) -> Value {
    match v.to_u64() {
        Some(n) => json!(n),
        None => json!(v.to_string()),
    }
}

fn cmd_hilbert(cli: &Cli, gbcfg: &GbConfig, spec: &str, tmax: u32) -> Result<Report, Error> {
    let shape = BoxShape::parse(spec)?;
    let sizes = shape.sizes().to_vec();
    let a = BoxMatrix::generic(shape);
    let gb = match gbcfg.degree_bound {
        Some(bound) if bound < tmax => {
            return Err(Error::Budget { what: "degree bound below tmax", limit: bound as usize })
        }
        Some(bound) => a.minor_ideal().groebner_truncated(bound, gbcfg)?,
        None => a.minor_ideal().groebner(gbcfg)?,
    };
    let mut rows = Vec::new();
    let mut all_agree = true;
    let mut text = format!("Hilbert function of I_2(A), {spec} box\n");
    let _ = writeln!(text, "{:>3} {:>12} {:>12} {:>12} {:>12}  agree", "t", "formula I", "formula Q", "enum I", "enum Q");
    for t in 0..=tmax {
        let (fi, fq) = segre::hilbert_formula(&sizes, t);
        let sample = gb.standard_monomial_count(t)?;
        let agree = BigInt::from(sample.ideal_dim) == fi && BigInt::from(sample.quotient_dim) == fq;
        all_agree &= agree;
        let _ = writeln!(
            text,
            "{:>3} {:>12} {:>12} {:>12} {:>12}  {}",
            t, fi, fq, sample.ideal_dim, sample.quotient_dim, agree
        );
        rows.push(json!({
            "t": t,
            "formula_ideal": bigint_json(&fi),
            "formula_quotient": bigint_json(&fq),
            "enumerated_ideal": sample.ideal_dim,
            "enumerated_quotient": sample.quotient_dim,
            "agree": agree,
        }));
    }
    let _ = writeln!(text, "{}", if all_agree { "PASS" } else { "FAIL" });
    let json = json!({
        "schema": 1,
        "command": "hilbert",
        "config": config_json(cli, json!({"spec": spec, "tmax": tmax})),
        "rows": rows,
        "pass": all_agree,
    });
    Ok(Report { json, text, pass: all_agree })
}

fn cmd_segre_kernel(cli: &Cli, gbcfg: &GbConfig, spec: &str) -> Result<Report, Error> {
    let shape = BoxShape::parse(spec)?;
    let sizes = shape.sizes().to_vec();
    let opts = KernelOptions { position_gate: cli.gate_positions, gb: gbcfg.clone() };
    let kernel = segre::kernel_oracle(&sizes, &opts)?;
    let a = BoxMatrix::generic(shape);
    let minors = a.minor_ideal().groebner(gbcfg)?;
    let kernel_on_ring = Ideal::new(
        minors.ring().clone(),
        kernel
            .generators()
            .iter()
            .map(|g| g.rename_into(minors.ring()))
            .collect::<Result<Vec<_>, _>>()?,
    );
    // mutual membership: kernel generators in the minor ideal and vice versa
    let forward = minors.contains(&kernel_on_ring)?;
    let backward = kernel.contains(&a.minor_ideal().groebner(gbcfg)?)?;
    let equal = forward && backward;
    let mut text = String::new();
    let _ = writeln!(
        text,
        "segre-kernel {spec}: kernel has {} generators, minor ideal {}; equal: {equal}",
        kernel.generators().len(),
        minors.generators().len()
    );
    let _ = writeln!(text, "{}", if equal { "PASS" } else { "FAIL" });
    let json = json!({
        "schema": 1,
        "command": "segre-kernel",
        "config": config_json(cli, json!({"spec": spec})),
        "kernel": kernel.to_json(),
        "minor_basis_size": minors.generators().len(),
        "kernel_in_minors": forward,
        "minors_in_kernel": backward,
        "equal": equal,
        "pass": equal,
    });
    Ok(Report { json, text, pass: equal })
}

fn cmd_decompose(cli: &Cli, path: &PathBuf) -> Result<Report, Error> {
    let raw = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    let doc: Value =
        serde_json::from_str(&raw).map_err(|e| Error::Parse(format!("bad JSON: {e}")))?;
    let tensor = segre::ConcreteTensor::from_json(&doc)?;
    let verdict = segre::is_decomposable(&tensor)?;
    let mut text = String::new();
    let json_verdict = match &verdict {
        segre::Decomposability::Decomposable { factors } => {
            let _ = writeln!(text, "decomposable");
            for (l, f) in factors.iter().enumerate() {
                let coords: Vec<String> = f.iter().map(segre::rational_string).collect();
                let _ = writeln!(text, "v{} = ({})", l + 1, coords.join(", "));
            }
            json!({
                "decomposable": true,
                "factors": factors.iter().map(|f| {
                    f.iter().map(segre::rational_string).collect::<Vec<_>>()
                }).collect::<Vec<_>>(),
            })
        }
        segre::Decomposability::NotDecomposable { axis, p, q, value } => {
            let _ = writeln!(
                text,
                "not decomposable: minor about axis {axis} at {p:?}, {q:?} evaluates to {}",
                segre::rational_string(value)
            );
            json!({
                "decomposable": false,
                "witness": {
                    "axis": axis,
                    "p": p,
                    "q": q,
                    "value": segre::rational_string(value),
                },
            })
        }
    };
    let json = json!({
        "schema": 1,
        "command": "decompose",
        "config": config_json(cli, json!({"tensor": path.display().to_string()})),
        "sizes": tensor.shape().sizes(),
        "verdict": json_verdict,
        "pass": true,
    });
    Ok(Report { json, text, pass: true })
}

fn cmd_blowup(cli: &Cli, gbcfg: &GbConfig, d: u32, n: u32, seed: u64) -> Result<Report, Error> {
    if d < 1 || n < 1 {
        return Err(Error::Invalid("blowup needs d >= 1 and n >= 1".into()));
    }
    let opts = BlowupOptions::default();
    let model = blowup::build_model(d, n, seed, &opts)?;
    let vanishing = blowup::verify_vanishing(&model, &opts)?;
    let surface = blowup::verify_surface(&model, gbcfg)?;
    let pass = vanishing.passed() && surface.passed();

    let mut text = String::new();
    let _ = writeln!(
        text,
        "blowup d={d} n={n} seed={seed}: t={} p={} s={}",
        model.t,
        model.p,
        model.points.len()
    );
    let _ = writeln!(
        text,
        "F: {} forms of degree {d}; L: {}x{} linear forms; rho = {}",
        model.hb.forms.len(),
        model.hb.matrix.len(),
        model.hb.forms.len(),
        segre::rational_string(&model.hb.rho)
    );
    let _ = writeln!(
        text,
        "relations: {} linear forms, rank(E) = {}",
        model.relations.relations.len(),
        model.relations.e_matrix.rank()
    );
    let _ = writeln!(
        text,
        "box {}: {} generators ({} linear, {} quadrics)",
        model.box_a.shape().sizes().iter().map(u32::to_string).collect::<Vec<_>>().join("x"),
        model.ideal.generators().len(),
        model.relations.relations.len(),
        model.ideal.generators().len() - model.relations.relations.len()
    );
    let _ = writeln!(
        text,
        "vanishing: symbolic {} spot checks {}/{} ambient {}/{}",
        vanishing.symbolic_zero,
        vanishing.image_points_checked - vanishing.image_point_failures,
        vanishing.image_points_checked,
        vanishing.ambient_points_checked - vanishing.ambient_point_failures,
        vanishing.ambient_points_checked
    );
    if surface.partial {
        let _ = writeln!(
            text,
            "surface: PARTIAL ({})",
            surface.reason.as_deref().unwrap_or("budget exhausted")
        );
    } else {
        let _ = writeln!(
            text,
            "surface: dimension {:?} degree {:?} (expected {})",
            surface.dimension, surface.degree, surface.expected_degree
        );
    }
    let _ = writeln!(text, "{}", if pass { "PASS" } else { "FAIL" });

    let mut json = model.to_json();
    if let Value::Object(map) = &mut json {
        map.insert("command".into(), json!("blowup"));
        map.insert(
            "config".into(),
            config_json(cli, json!({"d": d, "n": n, "seed": seed})),
        );
        map.insert("vanishing".into(), vanishing.to_json());
        map.insert("surface".into(), surface.to_json());
        map.insert("pass".into(), json!(pass));
    }
    Ok(Report { json, text, pass })
}
