//! Command-line front end: loads a Lie-algebra definition (from a file or a
//! builtin), runs one of the library's computations, and prints a structured
//! JSON report to standard output.
//!
//! Exit codes: 0 on success, 1 when a mathematical precondition fails (or a
//! verified identity does not hold), 2 on input parse errors.

use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use nilchar_core::chars::{
    character_report, compare_with_search, verify_example_correction, CharacterReport, Convention,
    Method,
};
use nilchar_core::dsl::AlgebraFile;
use nilchar_core::lie::{self, CharacterFunctional, LinearForm, Subspace};
use nilchar_core::orbits::{
    annihilator_basis, extend_character, lagrangian_check, sample_coset_forms, seeded_rng,
    vergne_polarization,
};
use nilchar_core::quotient::{
    change_of_supplement, family_context, invariants_family, specialize_family, QuotientContext,
};
use nilchar_core::{load_builtin, parse_algebra, rat_int, Coeff, Rat, SymPoly};

#[derive(Parser)]
#[command(
    name = "nilchar",
    about = "Exact invariant-operator and character computations on nilpotent Lie algebras"
)]
struct Cli {
    /// Built-in input: example5, heisenberg3, or abelian:N.
    #[arg(long, global = true, value_name = "NAME")]
    builtin: Option<String>,
    /// Definition file in the line-oriented input format.
    #[arg(long, global = true, value_name = "PATH")]
    file: Option<PathBuf>,
    /// Character to work with (defaults to the file's only character).
    #[arg(long, global = true, value_name = "NAME")]
    character: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check antisymmetry, the Jacobi identity, and nilpotency; list the
    /// declared subalgebras, characters, and forms.
    Validate,
    /// Sample the coadjoint-orbit profile on lambda + h^perp and test the
    /// lagrangian condition dim h.f = (1/2) dim g.f.
    Orbits {
        #[arg(long, default_value_t = 8)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Compute the invariant algebra of the reduction up to a degree bound.
    Invariants {
        #[arg(long, default_value_t = 3)]
        degree: usize,
        /// Compute the polynomial family over Q[t] for the rescaled
        /// character t*lambda instead of the single value t = 1.
        #[arg(long)]
        family: bool,
        /// Specialize the family at a rational t (syntax: t=VALUE);
        /// implies --family.
        #[arg(long, value_name = "t=VALUE")]
        specialize: Option<String>,
    },
    /// Evaluate the characters of the invariant algebra at a named form.
    Character {
        #[arg(long, value_name = "NAME")]
        form: String,
        #[arg(long, value_enum, default_value_t = MethodArg::Both)]
        method: MethodArg,
        #[arg(long, default_value_t = 3)]
        degree: usize,
    },
    /// Compare the two character constructions at sampled functionals.
    Compare {
        #[arg(long, default_value_t = 3)]
        degree: usize,
        #[arg(long, default_value_t = 5)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Verify the worked example's two correction-operator identities.
    ExampleCheck {
        #[arg(long, default_value_t = 3)]
        degree: usize,
        #[arg(long, default_value_t = 5)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Re-express invariants across two supplements of h.
    SupplementMap {
        /// Source supplement: default | span:ID,ID,... | vergne:FORM
        #[arg(long, value_name = "SPEC")]
        from: String,
        /// Target supplement, same syntax.
        #[arg(long, value_name = "SPEC")]
        to: String,
        #[arg(long, default_value_t = 3)]
        degree: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Ct,
    Polarization,
    Both,
}

enum CliError {
    /// Invalid input text or unresolvable names: exit code 2.
    Parse(String),
    /// A mathematical precondition failed: exit code 1.
    Math(String),
}

impl From<nilchar_core::ParseError> for CliError {
    fn from(e: nilchar_core::ParseError) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<nilchar_core::Error> for CliError {
    fn from(e: nilchar_core::Error) -> Self {
        CliError::Math(e.to_string())
    }
}

fn main() {
    let cli = Cli::parse();
    std::process::exit(run(cli));
}

fn run(cli: Cli) -> i32 {
    match execute(&cli) {
        Ok((report, code)) => {
            // Tolerate a closed pipe (e.g. `nilchar ... | head`).
            use std::io::Write;
            let text = serde_json::to_string_pretty(&report).unwrap();
            let _ = writeln!(std::io::stdout(), "{text}");
            code
        }
        Err(CliError::Parse(msg)) => {
            eprintln!("parse error: {msg}");
            2
        }
        Err(CliError::Math(msg)) => {
            eprintln!("error: {msg}");
            1
        }
    }
}

fn input_label(cli: &Cli) -> String {
    match (&cli.builtin, &cli.file) {
        (Some(b), _) => format!("builtin:{b}"),
        (_, Some(p)) => format!("file:{}", p.display()),
        _ => "builtin:example5".to_string(),
    }
}

fn load_input(cli: &Cli) -> Result<AlgebraFile, CliError> {
    match (&cli.builtin, &cli.file) {
        (Some(_), Some(_)) => Err(CliError::Parse(
            "choose exactly one of --builtin and --file".to_string(),
        )),
        (Some(b), None) => load_builtin(b).map_err(CliError::Parse),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                CliError::Parse(format!("cannot read {}: {e}", path.display()))
            })?;
            Ok(parse_algebra(&text)?)
        }
        (None, None) => Err(CliError::Parse(
            "an input is required: --builtin NAME or --file PATH".to_string(),
        )),
    }
}

fn pick_character<'a>(
    file: &'a AlgebraFile,
    selector: &Option<String>,
) -> Result<&'a (String, String, CharacterFunctional<Rat>), CliError> {
    match selector {
        Some(name) => file
            .characters
            .iter()
            .find(|(n, _, _)| n == name)
            .ok_or_else(|| CliError::Parse(format!("unknown character `{name}`"))),
        None => {
            if file.characters.len() == 1 {
                Ok(&file.characters[0])
            } else {
                let names: Vec<&str> =
                    file.characters.iter().map(|(n, _, _)| n.as_str()).collect();
                Err(CliError::Parse(format!(
                    "the input defines {} characters; select one with --character (available: {})",
                    file.characters.len(),
                    names.join(", ")
                )))
            }
        }
    }
}

fn default_context(
    file: &AlgebraFile,
    chi: &CharacterFunctional<Rat>,
) -> Result<QuotientContext<Rat>, CliError> {
    let q = lie::complement(&file.algebra, chi.h().space(), None)?;
    Ok(QuotientContext::for_character(&file.algebra, chi, &q)?)
}

/// Samples functionals on the coset lambda + h^perp.
fn sample_forms(
    file: &AlgebraFile,
    chi: &CharacterFunctional<Rat>,
    count: usize,
    seed: u64,
) -> Result<Vec<LinearForm<Rat>>, CliError> {
    let base = extend_character(&file.algebra, chi);
    let directions = annihilator_basis(chi.h().space(), file.algebra.dim());
    let mut rng = seeded_rng(seed);
    Ok(sample_coset_forms(&mut rng, &base, &directions, count, &[])?)
}

fn rat_value(r: &Rat) -> Value {
    Value::String(r.to_string())
}

fn form_value(f: &LinearForm<Rat>, names: &[String]) -> Value {
    let mut map = Map::new();
    for (name, c) in names.iter().zip(f.coords()) {
        if !c.is_zero() {
            map.insert(name.clone(), rat_value(c));
        }
    }
    Value::Object(map)
}

fn character_value(report: &CharacterReport<Rat>, invariant_names: &[String]) -> Value {
    let values: Vec<Value> = report
        .values
        .iter()
        .map(|(p, v)| {
            json!({
                "invariant": p.display_with(invariant_names),
                "value": v.to_string(),
            })
        })
        .collect();
    let mut obj = json!({
        "method": report.method.as_str(),
        "values": values,
        "multiplicative": report.multiplicative,
    });
    if let Some(residuals) = &report.residuals_constant {
        obj["residuals_constant"] = json!(residuals);
    }
    obj
}

fn execute(cli: &Cli) -> Result<(Value, i32), CliError> {
    match &cli.command {
        Command::Validate => cmd_validate(cli),
        Command::Orbits { samples, seed } => cmd_orbits(cli, *samples, *seed),
        Command::Invariants {
            degree,
            family,
            specialize,
        } => cmd_invariants(cli, *degree, *family, specialize),
        Command::Character {
            form,
            method,
            degree,
        } => cmd_character(cli, form, *method, *degree),
        Command::Compare {
            degree,
            samples,
            seed,
        } => cmd_compare(cli, *degree, *samples, *seed),
        Command::ExampleCheck {
            degree,
            trials,
            seed,
        } => cmd_example_check(cli, *degree, *trials, *seed),
        Command::SupplementMap { from, to, degree } => cmd_supplement_map(cli, from, to, *degree),
    }
}

fn cmd_validate(cli: &Cli) -> Result<(Value, i32), CliError> {
    let file = load_input(cli)?;
    let report = file.algebra.validate();
    let names = file.algebra.names();
    let subs: Map<String, Value> = file
        .subalgebras
        .iter()
        .map(|(n, s)| (n.clone(), json!({ "dim": s.dim() })))
        .collect();
    let chars: Map<String, Value> = file
        .characters
        .iter()
        .map(|(n, on, chi)| {
            let values: Vec<Value> = chi.values().iter().map(rat_value).collect();
            (n.clone(), json!({ "on": on, "values": values }))
        })
        .collect();
    let forms: Map<String, Value> = file
        .forms
        .iter()
        .map(|(n, f)| (n.clone(), form_value(f, names)))
        .collect();
    let ok = report.antisymmetric && report.jacobi && report.nilpotent;
    let value = json!({
        "command": "validate",
        "input": input_label(cli),
        "algebra": file.name,
        "dim": report.dim,
        "antisymmetric": report.antisymmetric,
        "jacobi": report.jacobi,
        "jacobi_failure": report.jacobi_failure.map(|(i, j, k)| json!([i, j, k])),
        "nilpotent": report.nilpotent,
        "class": report.nilpotency_class,
        "subalgebras": subs,
        "characters": chars,
        "forms": forms,
    });
    Ok((value, if ok { 0 } else { 1 }))
}

fn cmd_orbits(cli: &Cli, samples: usize, seed: u64) -> Result<(Value, i32), CliError> {
    let file = load_input(cli)?;
    let (chi_name, _, chi) = pick_character(&file, &cli.character)?;
    let report = lagrangian_check(&file.algebra, chi, samples, seed)?;
    let names = file.algebra.names();
    let witnesses: Vec<Value> = report
        .witnesses
        .iter()
        .map(|f| form_value(f, names))
        .collect();
    let value = json!({
        "command": "orbits",
        "input": input_label(cli),
        "character": chi_name,
        "samples": report.samples,
        "seed": report.seed,
        "max_profile": {
            "dim_h_orbit": report.max_profile.0,
            "dim_g_orbit": report.max_profile.1,
        },
        "holds_generically": report.holds_generically,
        "witnesses": witnesses,
    });
    Ok((value, 0))
}

fn cmd_invariants(
    cli: &Cli,
    degree: usize,
    family: bool,
    specialize: &Option<String>,
) -> Result<(Value, i32), CliError> {
    let file = load_input(cli)?;
    let (chi_name, _, chi) = pick_character(&file, &cli.character)?;
    let ctx = default_context(&file, chi)?;
    let names = ctx.q_var_names();
    let basis = ctx.invariants(degree);
    let mut value = json!({
        "command": "invariants",
        "input": input_label(cli),
        "character": chi_name,
        "degree": degree,
        "variables": names,
        "dimension": basis.len(),
        "basis": basis.iter().map(|p| p.display_with(&names)).collect::<Vec<_>>(),
    });
    if family || specialize.is_some() {
        let fam_ctx = family_context(&file.algebra, chi, ctx.supplement())?;
        let fam = invariants_family(&fam_ctx, degree);
        value["family"] = json!({
            "parameter": "t",
            "dimension": fam.len(),
            "basis": fam.iter().map(|p| p.display_with(&names)).collect::<Vec<_>>(),
        });
        if let Some(spec) = specialize {
            let t0 = parse_specialization(spec)?;
            let specialized: Vec<SymPoly<Rat>> =
                fam.iter().map(|p| specialize_family(p, &t0)).collect();
            // Invariance certificate at the rescaled character t0*lambda.
            let scaled: Vec<Rat> = chi.values().iter().map(|v| v.mul(&t0)).collect();
            let scaled_chi =
                CharacterFunctional::new(&file.algebra, chi.h().clone(), scaled)?;
            let ctx_t0 =
                QuotientContext::for_character(&file.algebra, &scaled_chi, ctx.supplement())?;
            let invariant_flags: Vec<bool> =
                specialized.iter().map(|p| ctx_t0.is_invariant(p)).collect();
            let nonzero = specialized.iter().filter(|p| !p.is_zero()).count();
            value["specialization"] = json!({
                "t": t0.to_string(),
                "basis": specialized
                    .iter()
                    .map(|p| p.display_with(&names))
                    .collect::<Vec<_>>(),
                "nonzero": nonzero,
                "all_invariant": invariant_flags.iter().all(|b| *b),
                "invariant_flags": invariant_flags,
                "direct_dimension": basis.len(),
            });
        }
    }
    Ok((value, 0))
}

fn parse_specialization(spec: &str) -> Result<Rat, CliError> {
    let rest = spec.strip_prefix("t=").ok_or_else(|| {
        CliError::Parse(format!("--specialize expects t=VALUE, got `{spec}`"))
    })?;
    Rat::from_str(rest)
        .map_err(|_| CliError::Parse(format!("malformed rational `{rest}` in --specialize")))
}

fn cmd_character(
    cli: &Cli,
    form_name: &str,
    method: MethodArg,
    degree: usize,
) -> Result<(Value, i32), CliError> {
    let file = load_input(cli)?;
    let (chi_name, _, chi) = pick_character(&file, &cli.character)?;
    let f = file
        .form(form_name)
        .ok_or_else(|| CliError::Parse(format!("unknown form `{form_name}`")))?;
    let ctx = default_context(&file, chi)?;
    let names = ctx.q_var_names();
    let flag = file.algebra.ideal_flag()?;
    let pol = vergne_polarization(&file.algebra, f, &flag)?;
    let mut value = json!({
        "command": "character",
        "input": input_label(cli),
        "character": chi_name,
        "form": form_name,
        "f": form_value(f, file.algebra.names()),
        "degree": degree,
        "convention": Convention::calibrated().describe(),
    });
    match method {
        MethodArg::Ct => {
            let report = character_report(&ctx, degree, f, &pol, Method::Ct)?;
            value["ct"] = character_value(&report, &names);
        }
        MethodArg::Polarization => {
            let report = character_report(&ctx, degree, f, &pol, Method::Polarization)?;
            value["polarization"] = character_value(&report, &names);
        }
        MethodArg::Both => {
            let cmp = nilchar_core::compare_characters(&ctx, degree, f, &pol)?;
            value["ct"] = character_value(&cmp.ct, &names);
            value["polarization"] = character_value(&cmp.oracle, &names);
            value["agreement"] = json!(cmp.agreement);
        }
    }
    Ok((value, 0))
}

fn cmd_compare(
    cli: &Cli,
    degree: usize,
    samples: usize,
    seed: u64,
) -> Result<(Value, i32), CliError> {
    let file = load_input(cli)?;
    let (chi_name, _, chi) = pick_character(&file, &cli.character)?;
    let ctx = default_context(&file, chi)?;
    let names = ctx.q_var_names();
    let invariants: Vec<String> = ctx
        .invariants(degree)
        .iter()
        .map(|p| p.display_with(&names))
        .collect();
    let forms = sample_forms(&file, chi, samples, seed)?;
    let mut results = Vec::new();
    let mut succeeded = 0usize;
    let mut all_agree = true;
    for f in &forms {
        let entry = match compare_with_search(&ctx, degree, f) {
            Ok(out) => {
                succeeded += 1;
                all_agree &= out.comparison.agreement;
                json!({
                    "f": form_value(f, file.algebra.names()),
                    "agreement": out.comparison.agreement,
                    "pair": out.pair_description,
                    "ct": character_value(&out.comparison.ct, &names),
                    "polarization": character_value(&out.comparison.oracle, &names),
                })
            }
            Err(e) => json!({
                "f": form_value(f, file.algebra.names()),
                "error": e.to_string(),
            }),
        };
        results.push(entry);
    }
    let value = json!({
        "command": "compare",
        "input": input_label(cli),
        "character": chi_name,
        "degree": degree,
        "samples": samples,
        "seed": seed,
        "convention": Convention::calibrated().describe(),
        "invariants": invariants,
        "results": results,
        "agreement_all": succeeded > 0 && all_agree,
    });
    // Exit 1 only if no sample satisfied the preconditions at all.
    Ok((value, if succeeded > 0 { 0 } else { 1 }))
}

fn cmd_example_check(
    cli: &Cli,
    degree: usize,
    trials: u64,
    seed: u64,
) -> Result<(Value, i32), CliError> {
    if let Some(b) = &cli.builtin {
        if b != "example5" {
            return Err(CliError::Parse(
                "example-check always runs on the built-in example5".to_string(),
            ));
        }
    }
    if cli.file.is_some() {
        return Err(CliError::Parse(
            "example-check always runs on the built-in example5".to_string(),
        ));
    }
    let report = verify_example_correction(degree, trials as usize, seed)?;
    let g = nilchar_core::chars::example5_algebra();
    let samples: Vec<Value> = report
        .samples
        .iter()
        .map(|s| {
            json!({
                "l": form_value(&s.l, g.names()),
                "zeta": s.zeta.to_string(),
                "pair": s.pair_description,
                "operator_identity": s.operator_identity_ok,
                "scalar_identity": s.scalar_identity_ok,
                "failures": s.failures,
            })
        })
        .collect();
    let value = json!({
        "command": "example-check",
        "input": "builtin:example5",
        "degree": report.degree,
        "trials": report.trials,
        "seed": report.seed,
        "invariant_count": report.invariant_count,
        "samples": samples,
        "all_ok": report.all_ok,
    });
    Ok((value, if report.all_ok { 0 } else { 1 }))
}

fn parse_supplement(
    spec: &str,
    file: &AlgebraFile,
    chi: &CharacterFunctional<Rat>,
) -> Result<Subspace<Rat>, CliError> {
    let algebra = &file.algebra;
    if spec == "default" {
        return Ok(lie::complement(algebra, chi.h().space(), None)?);
    }
    if let Some(ids) = spec.strip_prefix("span:") {
        let names = algebra.names();
        let mut indices = Vec::new();
        for id in ids.split(',') {
            let id = id.trim();
            let idx = names
                .iter()
                .position(|n| n == id)
                .ok_or_else(|| CliError::Parse(format!("unknown basis id `{id}` in `{spec}`")))?;
            indices.push(idx);
        }
        return Ok(Subspace::coordinate(algebra.dim(), &indices));
    }
    if let Some(form_name) = spec.strip_prefix("vergne:") {
        let f = file
            .form(form_name)
            .ok_or_else(|| CliError::Parse(format!("unknown form `{form_name}` in `{spec}`")))?;
        let flag = algebra.ideal_flag()?;
        let pol = vergne_polarization(algebra, f, &flag)?;
        return Ok(nilchar_core::adapted_supplement(
            algebra,
            chi.h().space(),
            pol.b.space(),
        )?);
    }
    Err(CliError::Parse(format!(
        "bad supplement spec `{spec}` (expected default, span:ID,..., or vergne:FORM)"
    )))
}

fn cmd_supplement_map(
    cli: &Cli,
    from: &str,
    to: &str,
    degree: usize,
) -> Result<(Value, i32), CliError> {
    let file = load_input(cli)?;
    let (chi_name, _, chi) = pick_character(&file, &cli.character)?;
    let q1 = parse_supplement(from, &file, chi)?;
    let q2 = parse_supplement(to, &file, chi)?;
    let ctx1 = QuotientContext::for_character(&file.algebra, chi, &q1)?;
    let ctx2 = QuotientContext::for_character(&file.algebra, chi, &q2)?;
    let names1 = ctx1.q_var_names();
    let names2 = ctx2.q_var_names();
    let nq = ctx1.nq();
    let mut variables = Map::new();
    for i in 0..nq {
        let mut exps = vec![0u32; nq];
        exps[i] = 1;
        let var = SymPoly::monomial(exps, rat_int(1));
        let image = change_of_supplement(&ctx1, &ctx2, &var)?;
        variables.insert(names1[i].clone(), json!(image.display_with(&names2)));
    }
    let invariants: Vec<Value> = ctx1
        .invariants(degree)
        .iter()
        .map(|p| {
            let image = change_of_supplement(&ctx1, &ctx2, p)?;
            Ok(json!({
                "from": p.display_with(&names1),
                "to": image.display_with(&names2),
            }))
        })
        .collect::<Result<_, nilchar_core::Error>>()?;
    let value = json!({
        "command": "supplement-map",
        "input": input_label(cli),
        "character": chi_name,
        "degree": degree,
        "from": { "spec": from, "variables": names1 },
        "to": { "spec": to, "variables": names2 },
        "variables": variables,
        "invariants": invariants,
    });
    Ok((value, 0))
}
