//! Command-line verbs. Every verb writes one JSON document to standard output;
//! notes for humans go to standard error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args, Parser, Subcommand};
use gradmat_core::classify::{count_good_formula, count_good_orbits, DEFAULT_BUDGET};
use gradmat_core::descent::{
    datum_descent, descend, dual_group_extension, frobenius_extension, good_basis_for_split_form,
    identity_component_invariant, make_quadratic, quadratic_form_classes, splitting_witness, Descended, FormInvariant,
    GaloisExtension,
};
use gradmat_core::graded::{good_iso, GradedVectorSpace, Grading};
use gradmat_core::matrix::in_span;
use serde_json::{json, Map, Value};

use crate::error::{input, internal, CliError};
use crate::format::{
    big_number, element_to_json, elements_to_json, extension_from_json, extension_to_json, field_name,
    galois_report_to_json, graded_space_to_json, grading_from_json, grading_to_json, invariant_to_json, matrix_to_json,
    parse_elements, parse_field, parse_group, parse_scalar, report_to_json,
};

type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "gradmat", version, about = "Gradings on matrix algebras over exact fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count good C_n-gradings on M_m up to graded isomorphism.
    Count {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: u64,
        /// Cross-check against direct orbit enumeration.
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// List one composition profile per isomorphism class of good C_n-gradings on M_m.
    Enumerate {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: u64,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Decide whether END of two degree tuples are graded-isomorphic.
    Iso {
        #[arg(long)]
        group: String,
        #[arg(long)]
        t1: String,
        #[arg(long)]
        t2: String,
    },
    /// The good grading END(V) for a tuple of degrees.
    BuildGood {
        #[arg(long)]
        group: String,
        #[arg(long)]
        degrees: String,
        #[arg(long, default_value = "Q")]
        field: String,
    },
    /// Check the grading axioms for a Grading JSON file.
    Verify {
        #[arg(long)]
        grading: PathBuf,
    },
    /// The grading obtained by descent along a Galois extension.
    Descend {
        #[command(flatten)]
        ext: ExtensionArgs,
    },
    /// Representatives of the forms of the nontrivial good C_2-grading on M_2.
    ClassifyForms {
        #[arg(long)]
        field: String,
    },
    /// Descend by both routes and validate their splitting certificates.
    SplitCheck {
        #[command(flatten)]
        ext: ExtensionArgs,
        /// Grading that must coincide with the descended one.
        #[arg(long)]
        grading: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
#[group(skip)]
#[command(group(ArgGroup::new("construction").required(true).multiple(false)))]
pub struct ExtensionArgs {
    /// Base field; required except with --frobenius and --extension.
    #[arg(long)]
    field: Option<String>,
    /// Quadratic extension k[X]/(X² - α), or X² - X - α in characteristic 2.
    #[arg(long, group = "construction", allow_hyphen_values = true)]
    quadratic_alpha: Option<String>,
    /// GF(p^d) over GF(p) with its Frobenius.
    #[arg(long, group = "construction", num_args = 2, value_names = ["P", "D"])]
    frobenius: Option<Vec<u64>>,
    /// The split extension k^H with H acting by translation.
    #[arg(long, group = "construction")]
    split: Option<String>,
    /// A GaloisExtension JSON file.
    #[arg(long, group = "construction")]
    extension: Option<PathBuf>,
}

/// Parses `args` (program name first), runs the verb and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return 1;
            }
            let _ = write!(out, "{}", e.render());
            return 0;
        }
    };
    match execute(&cli.command, err) {
        Ok(value) => {
            let text = serde_json::to_string_pretty(&value).expect("JSON values serialize");
            match writeln!(out, "{text}") {
                Ok(()) => 0,
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    2
                }
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(command: &Command, notes: &mut dyn Write) -> Result<Value> {
    match command {
        Command::Count { n, m, oracle, budget } => count(*n, *m, *oracle, *budget),
        Command::Enumerate { n, m, budget } => enumerate(*n, *m, *budget),
        Command::Iso { group, t1, t2 } => iso(group, t1, t2),
        Command::BuildGood { group, degrees, field } => build_good(group, degrees, field),
        Command::Verify { grading } => verify(grading),
        Command::Descend { ext } => descend_verb(ext, notes),
        Command::ClassifyForms { field } => classify_forms(field),
        Command::SplitCheck { ext, grading } => split_check(ext, grading.as_deref(), notes),
    }
}

fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| input!("cannot read {}: {e}", path.display()))?;
    Ok(serde_json::from_str(&text)?)
}

fn count(n: u64, m: u64, oracle: bool, budget: u64) -> Result<Value> {
    let formula = count_good_formula(n, m)?;
    let by_length: Map<String, Value> = formula
        .by_orbit_length
        .iter()
        .map(|(d, c)| (d.to_string(), big_number(c)))
        .collect();
    let mut out = json!({
        "n": n,
        "m": m,
        "count": big_number(&formula.count),
        "by_orbit_length": by_length,
    });
    if oracle {
        let direct = count_good_orbits(n, m, budget)?.counts;
        out["oracle"] = big_number(&direct.count);
        let nonzero = |c: &[(u64, num_bigint::BigUint)]| {
            c.iter()
                .filter(|(_, x)| *x != num_bigint::BigUint::from(0u8))
                .cloned()
                .collect::<Vec<_>>()
        };
        if direct.count != formula.count || nonzero(&direct.by_orbit_length) != nonzero(&formula.by_orbit_length) {
            return Err(internal!(
                "formula gives {} but orbit enumeration gives {} for n={n}, m={m}",
                formula.count,
                direct.count
            ));
        }
    }
    Ok(out)
}

fn enumerate(n: u64, m: u64, budget: u64) -> Result<Value> {
    let orbits = count_good_orbits(n, m, budget)?;
    let reps: Vec<Value> = orbits.representatives.iter().map(|p| json!(p.parts())).collect();
    Ok(json!({
        "n": n,
        "m": m,
        "count": big_number(&orbits.counts.count),
        "representatives": reps,
    }))
}

fn iso(group: &str, t1: &str, t2: &str) -> Result<Value> {
    let group = parse_group(group)?;
    let g = parse_elements(&group, t1)?;
    let h = parse_elements(&group, t2)?;
    Ok(match good_iso(&group, &g, &h)? {
        Some(w) => json!({
            "result": "isomorphic",
            "permutation": w.permutation,
            "translation": element_to_json(&w.translation),
        }),
        None => json!({ "result": "not-isomorphic" }),
    })
}

fn build_good(group: &str, degrees: &str, field: &str) -> Result<Value> {
    let group = parse_group(group)?;
    let field = parse_field(field)?;
    let v = GradedVectorSpace::new(group.clone(), parse_elements(&group, degrees)?)?;
    Ok(grading_to_json(&Grading::end_grading(&v, &field)))
}

fn verify(path: &Path) -> Result<Value> {
    let grading = grading_from_json(&read_json(path)?)?;
    Ok(report_to_json(&grading.verify()))
}

fn extension(args: &ExtensionArgs) -> Result<GaloisExtension> {
    let field = args.field.as_deref().map(parse_field).transpose()?;
    let need_field = || {
        field
            .clone()
            .ok_or_else(|| input!("--field is required for this construction"))
    };
    let ext = if let Some(alpha) = &args.quadratic_alpha {
        let f = need_field()?;
        make_quadratic(&f, &parse_scalar(&f, alpha)?)?
    } else if let Some(pd) = &args.frobenius {
        let [p, d] = pd.as_slice() else {
            return Err(CliError::Usage("--frobenius takes P D".into()));
        };
        let d = u32::try_from(*d).map_err(|_| input!("degree {d} is too large"))?;
        frobenius_extension(*p, d)?
    } else if let Some(h) = &args.split {
        dual_group_extension(&parse_group(h)?, &need_field()?)?
    } else if let Some(path) = &args.extension {
        extension_from_json(&read_json(path)?)?
    } else {
        return Err(CliError::Usage("choose a construction".into()));
    };
    if let Some(f) = field {
        if &f != ext.field() {
            return Err(input!(
                "--field {} does not match the extension's base {}",
                field_name(&f),
                field_name(ext.field())
            ));
        }
    }
    Ok(ext)
}

/// The descended grading in the extension's descent basis, with its certificate.
fn descend_in_basis(ext: &GaloisExtension) -> Result<(Descended, Value)> {
    let shown = descend(ext)?.change_basis(&ext.descent_basis())?;
    let cert = splitting_witness(&shown, ext)?;
    let witness = json!({
        "validated": true,
        "matrix_units": cert.units.len(),
        "unit_degrees": elements_to_json(&cert.degrees),
    });
    Ok((shown, witness))
}

/// Only defined for forms of the nontrivial good C_2-grading on M_2.
fn optional_invariant(grading: &Grading) -> Result<Option<FormInvariant>> {
    let g = grading.group();
    if grading.size() == 2 && g.order() == 2 && grading.component_dims() == [2, 2] {
        Ok(Some(identity_component_invariant(grading)?))
    } else {
        Ok(None)
    }
}

fn descend_verb(args: &ExtensionArgs, notes: &mut dyn Write) -> Result<Value> {
    let ext = extension(args)?;
    let report = ext.is_galois();
    let (shown, witness) = descend_in_basis(&ext)?;
    let f = ext.field();
    let mut out = json!({
        "extension": extension_to_json(&ext),
        "galois": galois_report_to_json(&report),
        "basis": matrix_to_json(f, &ext.descent_basis()),
        "grading": grading_to_json(&shown.grading),
        "witness": witness,
    });
    if let Some(inv) = optional_invariant(&shown.grading)? {
        out["invariant"] = invariant_to_json(f, &inv);
    }
    let _ = writeln!(
        notes,
        "note: {} matrix units of l ⊗ A validated over the {}-dimensional extension",
        shown.grading.size().pow(2),
        ext.dim()
    );
    Ok(out)
}

fn classify_forms(field: &str) -> Result<Value> {
    let f = parse_field(field)?;
    let mut forms = Vec::new();
    for class in quadratic_form_classes(&f)? {
        let ext = make_quadratic(&f, &class.alpha)?;
        let (shown, witness) = descend_in_basis(&ext)?;
        let inv = identity_component_invariant(&shown.grading)?;
        if inv.split != class.split {
            return Err(internal!("class of α = {} has the wrong splitting type", class.alpha));
        }
        let good = match good_basis_for_split_form(&shown.grading)? {
            Some(p) => {
                let degrees = shown
                    .grading
                    .change_basis(&p)?
                    .good_degrees()
                    .ok_or_else(|| internal!("split form did not become good"))?;
                json!({ "basis": matrix_to_json(&f, &p), "degrees": graded_space_to_json(&degrees) })
            }
            None => Value::Null,
        };
        forms.push(json!({
            "alpha": crate::format::format_scalar(&f, &class.alpha),
            "split": class.split,
            "invariant": invariant_to_json(&f, &inv),
            "grading": grading_to_json(&shown.grading),
            "witness": witness,
            "good": good,
        }));
    }
    Ok(json!({ "field": field_name(&f), "forms": forms }))
}

fn same_grading(a: &Grading, b: &Grading) -> bool {
    let f = a.field();
    a.group() == b.group()
        && f == b.field()
        && a.size() == b.size()
        && a.components().len() == b.components().len()
        && a.components().iter().all(|(g, basis)| {
            let other = b.component(g);
            other.len() == basis.len() && basis.iter().all(|x| in_span(f, other, x))
        })
}

fn split_check(args: &ExtensionArgs, file: Option<&Path>, notes: &mut dyn Write) -> Result<Value> {
    let ext = extension(args)?;
    let f = ext.field();
    let (by_j, j_witness) = descend_in_basis(&ext)?;
    let trivial = GradedVectorSpace::new(ext.group().clone(), vec![ext.group().identity()])?;
    let by_datum = datum_descent(&ext, &trivial)?;
    let datum_cert = splitting_witness(&by_datum, &ext)?;
    let datum_witness = json!({
        "validated": true,
        "matrix_units": datum_cert.units.len(),
        "unit_degrees": elements_to_json(&datum_cert.degrees),
    });
    if by_j.grading.component_dims() != by_datum.grading.component_dims() {
        return Err(internal!("the two descent routes give different component dimensions"));
    }
    let j_inv = optional_invariant(&by_j.grading)?;
    let datum_inv = optional_invariant(&by_datum.grading)?;
    if j_inv != datum_inv {
        return Err(internal!("the two descent routes give different forms"));
    }
    let route = |w: Value, inv: &Option<FormInvariant>| {
        let mut r = json!({ "witness": w });
        if let Some(inv) = inv {
            r["invariant"] = invariant_to_json(f, inv);
        }
        r
    };
    let mut out = json!({
        "extension": extension_to_json(&ext),
        "routes": {
            "j": route(j_witness, &j_inv),
            "datum": route(datum_witness, &datum_inv),
        },
        "component_dims": by_j.grading.component_dims(),
    });
    if let Some(path) = file {
        let given = grading_from_json(&read_json(path)?)?;
        if !same_grading(&given, &by_j.grading) {
            return Err(input!(
                "{} is not the grading descended along this extension",
                path.display()
            ));
        }
        out["grading_matches"] = Value::Bool(true);
        let _ = writeln!(notes, "note: {} splits over the given extension", path.display());
    }
    Ok(out)
}
