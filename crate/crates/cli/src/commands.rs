use std::fs;
use std::path::Path;
use std::time::Instant;

use cfinv_core::invariants::{
    count_points_bundle, estimated_monomials, invariant_space_dim, recover_g_gl, recover_g_sp, verify_case,
    VerifyReport,
};
use cfinv_core::json::{matrix_from_json, matrix_to_json, poly_to_json, skew_from_json, skew_to_json};
use cfinv_core::poly::monomial_count;
use cfinv_core::skew::{
    factor_through_form, pfaffian, pfaffian_expand, pull_back_form, skew_normal_form, StandardForm,
};
use cfinv_core::varieties::{variety_report, Case, Locus};
use cfinv_core::{Error, Field, SkewMatrix};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::args::{CaseArgs, PointsArgs};
use crate::report::envelope;

/// Why a command did not succeed, carrying its exit code.
#[derive(Debug)]
pub enum Failure {
    Core(Error),
    Input(String),
    Output(String),
    /// A check ran and failed; the report is still written.
    Check(String),
    Internal(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Core(e) => match e {
                Error::TooLarge(_) => 3,
                Error::NotInLocus { .. } | Error::Precondition(_) => 4,
                _ => 2,
            },
            Failure::Input(_) => 2,
            Failure::Output(_) | Failure::Check(_) | Failure::Internal(_) => 1,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Input(s) | Failure::Output(s) | Failure::Check(s) | Failure::Internal(s) => f.write_str(s),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

/// A failure with whatever partial output should still be emitted.
pub type Fail = (Option<String>, Failure);

pub type Outcome = Result<String, Fail>;

fn fail<T>(f: Failure) -> Result<T, Fail> {
    Err((None, f))
}

fn core<T>(r: cfinv_core::Result<T>) -> Result<T, Fail> {
    r.map_err(|e| (None, Failure::Core(e)))
}

fn read_json(path: &Path) -> Result<Value, Fail> {
    let text =
        fs::read_to_string(path).map_err(|e| (None, Failure::Input(format!("cannot read {}: {e}", path.display()))))?;
    serde_json::from_str(&text).map_err(|e| {
        (
            None,
            Failure::Input(format!("malformed JSON in {}: {e}", path.display())),
        )
    })
}

pub fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

pub fn cmd_pfaffian(input: &Path, oracle: bool) -> Outcome {
    let (field, a) = core(skew_from_json(&read_json(input)?))?;
    let value = core(pfaffian(&field, &a))?;
    if oracle {
        let check = core(pfaffian_expand(&field, &a))?;
        if check != value {
            return fail(Failure::Internal(format!("matching sum {value} but expansion {check}")));
        }
    }
    Ok(format!("{value}\n"))
}

pub fn cmd_normal_form(input: &Path) -> Outcome {
    let (field, a) = core(skew_from_json(&read_json(input)?))?;
    let nf = skew_normal_form(field, &a);
    let n = a.size();
    let reduced =
        nf.x.transpose()
            .mul(&a.to_exact(field))
            .and_then(|m| m.mul(&nf.x))
            .map_err(|e| (None, Failure::Internal(e.to_string())))?;
    if reduced != StandardForm::new(field, nf.r).padded(n) {
        return fail(Failure::Internal("congruence did not reach the normal form".into()));
    }
    Ok(pretty(&json!({
        "rank": 2 * nf.r,
        "x": matrix_to_json(&nf.x),
        "normal_form": skew_to_json(field, &SkewMatrix::from_exact(&reduced).expect("alternating")),
    })))
}

pub fn cmd_factor(input: &Path, t: usize) -> Outcome {
    let (field, a) = core(skew_from_json(&read_json(input)?))?;
    let tm = core(factor_through_form(field, &a, t))?;
    if core(pull_back_form(&tm))? != a {
        return fail(Failure::Internal("factorization does not reproduce the input".into()));
    }
    Ok(pretty(&matrix_to_json(&tm)))
}

pub fn cmd_recover_g(input: &Path) -> Outcome {
    let v = read_json(input)?;
    let get = |key: &str| -> Result<_, Fail> {
        let m = v
            .get(key)
            .ok_or_else(|| (None, Failure::Input(format!("missing \"{key}\""))))?;
        core(matrix_from_json(m))
    };
    let g = if v.get("psi").is_some() {
        core(recover_g_gl(&get("phi")?, &get("psi")?, &get("phi2")?, &get("psi2")?))?
    } else {
        core(recover_g_sp(&get("phi")?, &get("phi2")?))?
    };
    Ok(pretty(&json!({ "g": g.as_ref().map(matrix_to_json) })))
}

/// Cases and the verification depth used when none are given.
pub fn default_grid() -> Vec<(Case, u32)> {
    let gl = [
        ((2, 2, 2), 3),
        ((3, 2, 2), 3),
        ((3, 3, 2), 3),
        ((3, 3, 3), 2),
        ((4, 3, 3), 2),
    ];
    let sp = [((4, 2), 2), ((5, 2), 2), ((6, 3), 1)];
    gl.iter()
        .map(|&((m, n, t), d)| (Case::Gl { m, n, t }, d))
        .chain(sp.iter().map(|&((n, t), d)| (Case::Sp { n, t }, d)))
        .collect()
}

fn cases(args: &CaseArgs, use_default: bool, default_d: u32) -> Result<Vec<(Case, u32)>, Fail> {
    let mut out = Vec::new();
    for &(m, n, t) in &args.gl {
        out.push((core(Case::gl(m, n, t))?, args.dmax.unwrap_or(default_d)));
    }
    for &(n, t) in &args.sp {
        out.push((core(Case::sp(n, t))?, args.dmax.unwrap_or(default_d)));
    }
    if out.is_empty() {
        if !use_default {
            return fail(Failure::Input("give at least one --gl m,n,t or --sp n,t".into()));
        }
        out = default_grid()
            .into_iter()
            .map(|(c, d)| (c, args.dmax.unwrap_or(d)))
            .collect();
    }
    Ok(out)
}

fn fields(args: &CaseArgs, default: &[&str]) -> Result<Vec<Field>, Fail> {
    let labels: Vec<String> = match &args.fields {
        Some(f) => f.clone(),
        None => default.iter().map(|s| s.to_string()).collect(),
    };
    labels.iter().map(|l| core(Field::from_label(l))).collect()
}

fn check_cap(case: Case, d: u32, cap: u128) -> Result<(), Fail> {
    let size = estimated_monomials(case, d);
    if size > cap {
        return fail(Failure::Core(Error::TooLarge(format!(
            "{case} up to degree {d} needs {size} monomials, cap {cap}"
        ))));
    }
    Ok(())
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, u128) {
    let start = Instant::now();
    let v = f();
    (v, start.elapsed().as_millis())
}

pub fn cmd_ideal_gens(args: &CaseArgs) -> Outcome {
    let cases = cases(args, false, 0)?;
    let fields = fields(args, &["q"])?;
    let mut results = Vec::new();
    for (case, _) in &cases {
        for &field in &fields {
            let locus = core(Locus::new(*case, field))?;
            results.push(json!({
                "case": case.to_string(),
                "field": field.label(),
                "count": locus.gens.len(),
                "generators": locus.gens.iter().map(poly_to_json).collect::<Vec<_>>(),
            }));
        }
    }
    Ok(pretty(&envelope(Value::Array(results), 0, json!({}))))
}

pub fn cmd_hilbert(args: &CaseArgs) -> Outcome {
    let cases = cases(args, false, 3)?;
    let fields = fields(args, &["q"])?;
    let start = Instant::now();
    let mut results = Vec::new();
    for &(case, d) in &cases {
        let size = monomial_count(case.ambient_vars(), d);
        if size > args.cap {
            return fail(Failure::Core(Error::TooLarge(format!(
                "{case} degree {d} has {size} monomials, cap {}",
                args.cap
            ))));
        }
        for &field in &fields {
            let locus = core(Locus::new(case, field))?;
            let dims = (0..=d)
                .map(|k| locus.hilbert(k))
                .collect::<cfinv_core::Result<Vec<_>>>();
            results.push(json!({"case": case.to_string(), "field": field.label(), "hilbert": core(dims)?}));
        }
    }
    Ok(pretty(&envelope(
        Value::Array(results),
        start.elapsed().as_millis(),
        json!({}),
    )))
}

pub fn cmd_invariants_dim(args: &CaseArgs) -> Outcome {
    let cases = cases(args, false, 2)?;
    let fields = fields(args, &["q"])?;
    let start = Instant::now();
    let mut results = Vec::new();
    for &(case, d) in &cases {
        check_cap(case, d, args.cap)?;
        for &field in &fields {
            let dims = (0..=2 * d)
                .map(|k| invariant_space_dim(case, field, k).map(|(n, _)| n))
                .collect::<cfinv_core::Result<Vec<_>>>();
            results.push(json!({"case": case.to_string(), "field": field.label(), "dims": core(dims)?}));
        }
    }
    Ok(pretty(&envelope(
        Value::Array(results),
        start.elapsed().as_millis(),
        json!({}),
    )))
}

pub fn cmd_dims(args: &CaseArgs) -> Outcome {
    let cases = cases(args, true, 2)?;
    let start = Instant::now();
    let mut results = Vec::new();
    let mut ok = true;
    for &(case, d) in &cases {
        check_cap(case, d, args.cap)?;
        let r = core(variety_report(case, d, args.trials, args.seed))?;
        ok &= r.dim_measured == r.dim_formula && (case.lower().is_none() || r.codim_ok);
        results.push(serde_json::to_value(&r).expect("report serializes"));
    }
    let text = pretty(&envelope(
        json!({"seed": args.seed, "trials": args.trials, "cases": results, "all_pass": ok}),
        start.elapsed().as_millis(),
        json!({}),
    ));
    if ok {
        Ok(text)
    } else {
        Err((
            Some(text),
            Failure::Check("a measured dimension disagrees with the formula".into()),
        ))
    }
}

pub fn cmd_points(args: &PointsArgs) -> Outcome {
    let case = match (args.gl, args.sp) {
        (Some((r, m, n)), None) => core(Case::gl(m, n, r + 1))?,
        (None, Some((n, t))) => core(Case::sp(n, t))?,
        _ => return fail(Failure::Input("give exactly one of --gl r,m,n or --sp n,t".into())),
    };
    let (count, ms) = timed(|| count_points_bundle(case, args.q));
    let count = core(count)?;
    let ok = count.verdict;
    let text = pretty(&envelope(
        serde_json::to_value(&count).expect("serializes"),
        ms,
        json!({}),
    ));
    if ok {
        Ok(text)
    } else {
        Err((Some(text), Failure::Check("a fiber has the wrong size".into())))
    }
}

/// Degrees where a prime field's invariant dimension differs from `Q`'s.
fn discrepancies(reports: &[VerifyReport]) -> Vec<Value> {
    let mut out = Vec::new();
    for r in reports.iter().filter(|r| r.field != "Q") {
        let Some(q) = reports.iter().find(|x| x.case == r.case && x.field == "Q") else {
            continue;
        };
        for (a, b) in r.degrees.iter().zip(&q.degrees) {
            if a.dim_invariants != b.dim_invariants {
                out.push(json!({
                    "case": r.case, "field": r.field, "d": a.d,
                    "dim_invariants": a.dim_invariants, "dim_invariants_q": b.dim_invariants,
                }));
            }
        }
    }
    out
}

pub fn cmd_verify(args: &CaseArgs) -> Outcome {
    let cases = cases(args, true, 2)?;
    let fields = fields(args, &["q", "2", "3", "5"])?;
    for &(case, d) in &cases {
        check_cap(case, d, args.cap)?;
    }
    let start = Instant::now();
    let units: Vec<(Case, u32, Field)> = cases
        .iter()
        .flat_map(|&(c, d)| fields.iter().map(move |&f| (c, d, f)))
        .collect();
    let runs: Vec<(cfinv_core::Result<VerifyReport>, u128)> = units
        .par_iter()
        .map(|&(c, d, f)| timed(|| verify_case(c, f, d)))
        .collect();
    let mut reports = Vec::new();
    let mut timings = Map::new();
    for ((c, _, f), (r, ms)) in units.iter().zip(runs) {
        reports.push(core(r)?);
        timings.insert(format!("{c}/{}", f.label()), json!(ms));
    }
    let all_pass = reports.iter().all(VerifyReport::passed);
    let results = json!({
        "seed": args.seed,
        "fields": fields.iter().map(|f| f.label()).collect::<Vec<_>>(),
        "reports": reports,
        "discrepancies": discrepancies(&reports),
        "all_pass": all_pass,
    });
    let text = pretty(&envelope(results, start.elapsed().as_millis(), Value::Object(timings)));
    if all_pass {
        Ok(text)
    } else {
        Err((Some(text), Failure::Check("verification FAIL".into())))
    }
}
