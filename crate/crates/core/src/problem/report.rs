use std::sync::Arc;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use super::{
    Diagnostic, Kind, KnPayload, KuranishiGenerator, LineSpec, Payload, ProblemSpec,
    SCHEMA_VERSION,
};
use crate::error::{Error, Result};
use crate::exact_geometry::{format_q, parse_q, Lattice, Q, QVec};
use crate::graded_kuranishi::{self as gk, GradedComplex};
use crate::kempf_ness::{
    kn_conjugation_eval, kn_minimize, moment_map_conjugation, CMat, KnProblem, KnResult, KnStatus,
};
use crate::shb_model::{self as shb, GradingConvention, ShbSpec};
use crate::stability::{self, Certificate, StabilityClass};
use crate::stratify::{self, StratifyOptions, StratifyResult};
use crate::torus_rep::{RepVector, Representation, WeightLine};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum RunStatus {
    Ok,
    /// The input was understood but the analysis refused it, e.g. a non-stable vector
    /// handed to the stratification.
    Rejected,
    Error,
}

impl RunStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            RunStatus::Ok => "ok",
            RunStatus::Rejected => "rejected",
            RunStatus::Error => "error",
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            RunStatus::Ok => 0,
            RunStatus::Rejected => 2,
            RunStatus::Error => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub status: RunStatus,
    pub report: Value,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    /// Report for a document that failed validation.
    pub fn invalid(kind: Option<&str>, errors: &[Diagnostic]) -> Outcome {
        let errs: Vec<Value> = errors.iter().map(|d| json!(d.to_string())).collect();
        Outcome {
            status: RunStatus::Rejected,
            report: json!({
                "schema_version": SCHEMA_VERSION,
                "kind": kind.unwrap_or("unknown"),
                "status": "rejected",
                "errors": errs,
            }),
        }
    }
}

/// Runs a validated problem. The report is a pure function of the spec.
pub fn run(spec: &ProblemSpec) -> Outcome {
    let result = match &spec.payload {
        Payload::Stability {
            rank,
            lines,
            brute_force_bound,
        } => run_stability(spec, *rank, lines, *brute_force_bound),
        Payload::KempfNess(p) => run_kempf_ness(spec, p),
        Payload::Stratify {
            rank,
            lines,
            sigma_multiple,
        } => run_stratify(spec, *rank, lines, *sigma_multiple),
        Payload::Shb {
            genus,
            blocks,
            x,
            sigma,
        } => run_shb(spec, *genus, blocks, x.as_deref(), *sigma),
        Payload::Kuranishi { generator, samples } => run_kuranishi(spec, generator, *samples),
    };
    let (status, body, errors) = match result {
        Ok((status, body)) => (status, Some(body), Vec::new()),
        Err(e) => {
            let status = match e {
                Error::NotStable(_)
                | Error::RayEmpty { .. }
                | Error::NonIncreasing { .. }
                | Error::ZeroVector
                | Error::NonAbelian
                | Error::CapExceeded(_)
                | Error::InvalidArgument(_)
                | Error::DimensionMismatch { .. } => RunStatus::Rejected,
                _ => RunStatus::Error,
            };
            (status, None, vec![json!(e.to_string())])
        }
    };
    let mut report = Map::new();
    report.insert("schema_version".into(), json!(SCHEMA_VERSION));
    report.insert("kind".into(), json!(spec.kind.as_str()));
    report.insert("status".into(), json!(status.as_str()));
    report.insert("options".into(), options_json(spec));
    if let Some(b) = body {
        report.insert("result".into(), b);
    }
    report.insert("errors".into(), Value::Array(errors));
    Outcome {
        status,
        report: Value::Object(report),
    }
}

fn options_json(spec: &ProblemSpec) -> Value {
    let o = &spec.options;
    json!({
        "tol": o.tol,
        "seed": o.seed,
        "convention": convention_str(o.convention),
        "emit_certificates": o.emit_certificates,
    })
}

fn convention_str(c: GradingConvention) -> &'static str {
    match c {
        GradingConvention::Default => "default",
        GradingConvention::Flipped => "flipped",
    }
}

fn q(x: &Q) -> Value {
    json!(format_q(x))
}

fn qvec(v: &QVec) -> Value {
    Value::Array(v.iter().map(q).collect())
}

fn lattice(l: &Lattice) -> Value {
    json!({ "ambient_dim": l.ambient_dim(), "rank": l.rank(), "basis": l.basis() })
}

fn complex(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn cmat(m: &CMat) -> Value {
    Value::Array(
        m.row_iter()
            .map(|r| Value::Array(r.iter().map(|z| complex(*z)).collect()))
            .collect(),
    )
}

fn build_vector(rank: usize, lines: &[LineSpec]) -> Result<RepVector> {
    let wl: Vec<WeightLine> = lines
        .iter()
        .map(|l| match l.rho {
            Some(r) => WeightLine::graded(l.label.clone(), l.weight.clone(), r),
            None => WeightLine::new(l.label.clone(), l.weight.clone()),
        })
        .collect();
    let rep = Arc::new(Representation::new(rank, wl)?);
    RepVector::new(rep, lines.iter().map(|l| l.amplitude).collect())
}

fn certificate_json(c: &StabilityClass) -> Value {
    match &c.certificate {
        Certificate::Interior { coefficients } => json!({
            "type": "interior",
            "coefficients": qvec(coefficients),
            "identity": combination_identity(&c.weights, coefficients),
        }),
        Certificate::Flat { coefficients, flat } => json!({
            "type": "flat",
            "coefficients": qvec(coefficients),
            "identity": combination_identity(&c.weights, coefficients),
            "flat_lattice": lattice(flat),
        }),
        Certificate::Destabilizing { cocharacter, face } => json!({
            "type": "destabilizing",
            "cocharacter": cocharacter,
            "face": face,
        }),
    }
}

/// `0 = (c_1)(w_1) + ...`.
fn combination_identity(weights: &[Vec<i64>], c: &QVec) -> String {
    let terms: Vec<String> = weights
        .iter()
        .zip(c.iter())
        .map(|(w, ci)| {
            let ws: Vec<String> = w.iter().map(i64::to_string).collect();
            format!("({})({})", format_q(ci), ws.join(","))
        })
        .collect();
    format!("0={}", terms.join("+"))
}

fn kn_json(r: &KnResult) -> Value {
    json!({
        "status": kn_status_str(r.status),
        "minimizer": r.minimizer,
        "value": r.value,
        "gradient_norm": r.gradient_norm,
        "iterations": r.iterations,
        "flat_space": r.flat_space.as_ref().map(lattice),
        "descent_ray": r.descent_ray,
    })
}

fn kn_status_str(s: KnStatus) -> &'static str {
    match s {
        KnStatus::Converged => "converged",
        KnStatus::FlatDirections => "flat_directions",
        KnStatus::Diverging => "diverging",
        KnStatus::Failure => "failure",
    }
}

fn run_stability(
    spec: &ProblemSpec,
    rank: usize,
    lines: &[LineSpec],
    bound: Option<i64>,
) -> Result<(RunStatus, Value)> {
    let v = build_vector(rank, lines)?;
    let class = stability::classify(&v)?;
    let kn = kn_minimize(&KnProblem::from_vector(&v), spec.options.tol)?;
    let mut out = Map::new();
    out.insert("classification".into(), json!(class.class.as_str()));
    out.insert("weights".into(), json!(class.weights));
    if spec.options.emit_certificates {
        out.insert("certificate".into(), certificate_json(&class));
        out.insert("certificate_verified".into(), json!(class.verify()));
    }
    out.insert("kempf_ness".into(), kn_json(&kn));
    if let Some(b) = bound {
        let d = stability::destabilizer_bruteforce(&v, b);
        out.insert("brute_force".into(), json!({ "bound": b, "destabilizer": d }));
    }
    Ok((RunStatus::Ok, Value::Object(out)))
}

fn run_kempf_ness(spec: &ProblemSpec, p: &KnPayload) -> Result<(RunStatus, Value)> {
    match p {
        KnPayload::Torus {
            rank,
            weights,
            norms,
        } => {
            let prob = KnProblem::new(*rank, weights.clone(), norms.clone())?;
            let r = kn_minimize(&prob, spec.options.tol)?;
            let status = if r.status == KnStatus::Failure {
                RunStatus::Error
            } else {
                RunStatus::Ok
            };
            Ok((status, kn_json(&r)))
        }
        KnPayload::Conjugation { phi } => {
            let n = phi.nrows();
            let mu = moment_map_conjugation(phi)?;
            let eval = kn_conjugation_eval(phi, &CMat::zeros(n, n))?;
            let grad = eval.gradient()?;
            let target = &mu * Complex64::new(2.0, 0.0);
            let residual = (&grad - &target).norm() / target.norm().max(1.0);
            Ok((
                RunStatus::Ok,
                json!({
                    "moment_map": cmat(&mu),
                    "value_at_identity": eval.value,
                    "gradient_at_identity": cmat(&grad),
                    "gradient_vs_twice_moment_map": residual,
                    "critical": mu.norm() <= spec.options.tol.max(1e-12) * (1.0 + phi.norm_squared()),
                }),
            ))
        }
    }
}

fn label_list(v: &RepVector, idx: &[usize]) -> Value {
    Value::Array(idx.iter().map(|&i| json!(v.rep().lines()[i].label)).collect())
}

fn exponent_map(v: &RepVector, e: &[(usize, i64)]) -> Value {
    Value::Object(
        e.iter()
            .map(|&(i, x)| (v.rep().lines()[i].label.clone(), json!(x)))
            .collect(),
    )
}

/// Full stratification record.
pub(crate) fn stratify_json(r: &StratifyResult, u: &RepVector, certs: bool) -> Value {
    let stages: Vec<Value> = r
        .stages
        .iter()
        .enumerate()
        .map(|(n, s)| {
            let mut m = Map::new();
            m.insert("index".into(), json!(n));
            m.insert("torus".into(), lattice(&s.torus));
            m.insert("nu".into(), label_list(u, &s.nu));
            m.insert(
                "weights".into(),
                Value::Array(
                    s.weights
                        .iter()
                        .map(|w| json!({ "ell": w.ell, "rho": w.rho }))
                        .collect(),
                ),
            );
            m.insert("lines".into(), label_list(u, &s.lines));
            m.insert("hull_points".into(), Value::Array(s.hull_points.iter().map(qvec).collect()));
            m.insert("face".into(), json!(s.face));
            m.insert("c".into(), q(&s.c));
            m.insert("c_upper".into(), q(&s.c_upper));
            if certs {
                m.insert("c_certificate".into(), qvec(&s.c_certificate));
            }
            m.insert("x".into(), qvec(&s.x));
            m.insert("equal_dimension".into(), json!(s.equal_dimension));
            m.insert("restricted_class".into(), json!(s.restricted_class.as_str()));
            m.insert("d".into(), json!(s.d));
            m.insert("nu_exponents".into(), exponent_map(u, &s.nu_exponents));
            Value::Object(m)
        })
        .collect();
    let check = stratify::verify_decomposition(r, u);
    json!({
        "rank": r.rank,
        "x": r.x,
        "x_rational": qvec(&r.x_rational),
        "sigma": r.sigma,
        "k": r.k(),
        "d": r.degrees(),
        "tori": r.tori.iter().map(lattice).collect::<Vec<_>>(),
        "stages": stages,
        "residual": label_list(u, &r.residual),
        "residual_exponents": exponent_map(u, &r.residual_exponents),
        "verification": check.checks.iter().map(|c| json!({
            "name": c.name, "passed": c.passed, "detail": c.detail,
        })).collect::<Vec<_>>(),
        "verified": check.all_passed(),
    })
}

fn run_stratify(
    spec: &ProblemSpec,
    rank: usize,
    lines: &[LineSpec],
    sigma_multiple: i64,
) -> Result<(RunStatus, Value)> {
    let u = build_vector(rank, lines)?;
    let r = stratify::stratify(&u, &StratifyOptions { sigma_multiple })?;
    let body = stratify_json(&r, &u, spec.options.emit_certificates);
    let status = if body["verified"] == json!(true) {
        RunStatus::Ok
    } else {
        RunStatus::Error
    };
    Ok((status, body))
}

fn run_shb(
    spec: &ProblemSpec,
    genus: i64,
    blocks: &[shb::StableBlock],
    x: Option<&[i64]>,
    sigma: Option<i64>,
) -> Result<(RunStatus, Value)> {
    let s = ShbSpec::new(genus, blocks.to_vec())?;
    let ranks = s.block_ranks();
    let mut out = Map::new();
    out.insert("genus".into(), json!(genus));
    out.insert("k".into(), json!(s.k()));
    out.insert("rank".into(), json!(s.rank()));
    out.insert("block_ranks".into(), json!(ranks));
    out.insert("abelian".into(), json!(s.is_abelian()));
    out.insert("expected_dim".into(), json!(shb::expected_dim_central_locus(s.rank(), genus)));
    let poset = shb::partitions_with_order(&s)?;
    let table: Vec<Value> = poset
        .partitions
        .iter()
        .map(|p| {
            let d = shb::partition_dim(p, &ranks, genus)?;
            let parts: Vec<Vec<usize>> = p.parts.iter().map(|q| q.iter().map(|i| i + 1).collect()).collect();
            Ok(json!({
                "parts": parts,
                "dim": d.dim,
                "expected": d.expected,
                "strictly_smaller": d.strictly_smaller,
            }))
        })
        .collect::<Result<_>>()?;
    out.insert("partitions".into(), Value::Array(table));
    out.insert("order".into(), json!(poset.order_pairs()));
    if s.is_abelian() {
        let t = shb::automorphism_torus(&s)?;
        out.insert(
            "automorphism_torus".into(),
            json!({ "relation": t.relation, "lattice": lattice(&t.lattice) }),
        );
        let slice = shb::positive_slice_rep(&s, spec.options.convention)?;
        let classes: Vec<Value> = slice
            .classes
            .iter()
            .zip(slice.rep.lines())
            .map(|(c, l)| json!({ "class": c.label(), "weight": l.weight, "rho": l.rho }))
            .collect();
        out.insert("slice_classes".into(), Value::Array(classes));
        if s.k() >= 2 && genus >= 2 {
            let c = shb::cyclic_phi_weights(&s)?;
            out.insert(
                "cyclic_phi".into(),
                json!({
                    "weights": c.verdict.weights,
                    "verdict": c.verdict.class.as_str(),
                    "rr_bounds": c.rr_bounds.iter().map(|b| json!({ "bound": b.bound, "positive": b.positive })).collect::<Vec<_>>(),
                }),
            );
        }
    }
    if let (Some(x), Some(sigma)) = (x, sigma) {
        let t = shb::conformal_degree_table(&s, x, sigma, spec.options.convention)?;
        let entries: Vec<Value> = t
            .entries
            .iter()
            .map(|(&(i, a, j, b), &d)| json!({ "class": format!("{i},{a},{j},{b}"), "degree": d }))
            .collect();
        out.insert(
            "conformal_degrees".into(),
            json!({ "sigma": sigma, "x": x, "entries": entries }),
        );
    }
    Ok((RunStatus::Ok, Value::Object(out)))
}

fn run_kuranishi(
    spec: &ProblemSpec,
    generator: &KuranishiGenerator,
    samples: usize,
) -> Result<(RunStatus, Value)> {
    let mut rows = Vec::new();
    let mut worst: f64 = 0.0;
    let mut ill = 0usize;
    for s in 0..samples {
        let mut rng = ChaCha8Rng::seed_from_u64(spec.options.seed.wrapping_add(s as u64));
        let cx: GradedComplex = match generator {
            KuranishiGenerator::Random(p) => gk::random_complex(&mut rng, p),
            KuranishiGenerator::Nilpotent { n } => gk::nilpotent_triangular(&mut rng, *n),
        };
        let x = gk::random_slice_vector(&mut rng, &cx);
        let u = gk::kuranishi_inverse_graded(&cx, &x)?;
        let back = gk::kuranishi_forward(&cx, &u)?;
        let round_trip = back.sub(&x).norm() / x.norm().max(f64::MIN_POSITIVE);
        let mut equivariance: f64 = 0.0;
        for t in [Complex64::new(2.0, 0.0), Complex64::new(0.5, 0.0), Complex64::new(0.0, 1.0)] {
            let lhs = gk::kuranishi_forward(&cx, &u.scaled(t))?;
            let rhs = gk::kuranishi_forward(&cx, &u)?.scaled(t);
            equivariance = equivariance.max(lhs.sub(&rhs).norm() / rhs.norm().max(f64::MIN_POSITIVE));
        }
        let green = gk::green_identity_residual(&cx);
        let identity = gk::obstruction_identity_residual(&cx, &u)?;
        let conditioned = cx
            .green()
            .iter()
            .filter(|g| matches!(g.status, gk::GreenStatus::IllConditioned { .. }))
            .count();
        ill += conditioned;
        worst = worst.max(round_trip).max(equivariance).max(green).max(identity);
        rows.push(json!({
            "sample": s,
            "total_dim": cx.total_dim(),
            "round_trip": round_trip,
            "equivariance": equivariance,
            "green_identity": green,
            "obstruction_identity": identity,
            "obstruction_norm": gk::obstruction(&cx, &x)?.norm(),
            "ill_conditioned_grades": conditioned,
        }));
    }
    Ok((
        RunStatus::Ok,
        json!({
            "samples": rows,
            "max_residual": worst,
            "ill_conditioned_grades": ill,
            "within_tolerance": worst < 1e-9,
        }),
    ))
}

/// Checks a report against the report schema: required fields, status values, and that
/// exact quantities are serialized as rational strings.
pub fn validate_report(report: &Value) -> Vec<String> {
    let mut errs = Vec::new();
    let Some(m) = report.as_object() else {
        return vec!["report must be an object".into()];
    };
    if m.get("schema_version").and_then(Value::as_u64) != Some(SCHEMA_VERSION) {
        errs.push("schema_version missing or unsupported".into());
    }
    let kind = m.get("kind").and_then(Value::as_str);
    if !kind.is_some_and(|k| Kind::parse(k).is_some() || k == "unknown") {
        errs.push("kind missing or unknown".into());
    }
    let status = m.get("status").and_then(Value::as_str);
    match status {
        Some("ok") | Some("error") | Some("rejected") => {}
        _ => errs.push("status must be ok, rejected or error".into()),
    }
    if !m.get("errors").is_some_and(Value::is_array) {
        errs.push("errors must be an array".into());
    }
    if status == Some("ok") && !m.get("result").is_some_and(Value::is_object) {
        errs.push("an ok report needs a result object".into());
    }
    if kind == Some("stratify") {
        if let Some(r) = m.get("result") {
            let mut rationals: Vec<&Value> = Vec::new();
            if let Some(a) = r["x_rational"].as_array() {
                rationals.extend(a);
            }
            for s in r["stages"].as_array().into_iter().flatten() {
                rationals.push(&s["c"]);
                rationals.push(&s["c_upper"]);
                rationals.extend(s["x"].as_array().into_iter().flatten());
                for p in s["hull_points"].as_array().into_iter().flatten() {
                    rationals.extend(p.as_array().into_iter().flatten());
                }
            }
            for v in rationals {
                if !v.as_str().is_some_and(|s| parse_q(s).is_some()) {
                    errs.push(format!("exact quantity {v} is not a rational string"));
                }
            }
        }
    }
    errs
}

/// Indented plain-text rendering of a report.
pub fn render_text(report: &Value) -> String {
    let mut out = String::new();
    write_text(&mut out, report, 0);
    out
}

fn write_text(out: &mut String, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                if is_scalar_like(x) {
                    out.push_str(&format!("{pad}{k}: {}\n", inline(x)));
                } else {
                    out.push_str(&format!("{pad}{k}:\n"));
                    write_text(out, x, indent + 1);
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                if is_scalar_like(x) {
                    out.push_str(&format!("{pad}- {}\n", inline(x)));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    write_text(out, x, indent + 1);
                }
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", inline(v))),
    }
}

fn is_scalar_like(v: &Value) -> bool {
    match v {
        Value::Object(m) => m.is_empty(),
        Value::Array(a) => a.iter().all(|x| !x.is_object() && (!x.is_array() || x.as_array().unwrap().iter().all(|y| !y.is_array() && !y.is_object()))),
        _ => true,
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) => format!("[{}]", a.iter().map(inline).collect::<Vec<_>>().join(", ")),
        Value::Object(_) => "{}".into(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::validate;

    fn run_doc(doc: &str) -> Outcome {
        run(&validate(doc).unwrap())
    }

    #[test]
    fn stability_report_has_interior_certificate() {
        let o = run_doc(
            r#"{"schema_version": 1, "kind": "stability",
            "payload": {"rank": 1, "lines": [{"label": "a", "weight": [1]}, {"label": "b", "weight": [-1]}]}}"#,
        );
        assert_eq!(o.exit_code(), 0);
        let r = &o.report["result"];
        assert_eq!(r["classification"], "stable");
        assert_eq!(r["certificate"]["type"], "interior");
        assert_eq!(r["certificate"]["coefficients"], json!(["1/2", "1/2"]));
        assert_eq!(r["certificate"]["identity"], "0=(1/2)(-1)+(1/2)(1)");
        assert!(validate_report(&o.report).is_empty());
    }

    #[test]
    fn worked_stratification_report() {
        let o = run_doc(
            r#"{"schema_version": 1, "kind": "stratify",
            "payload": {"rank": 1, "lines": [{"label": "a", "weight": [1], "rho": 1}, {"label": "b", "weight": [-1], "rho": 2}]}}"#,
        );
        assert_eq!(o.exit_code(), 0, "{}", o.report);
        let r = &o.report["result"];
        assert_eq!(r["x"], json!([1]));
        assert_eq!(r["sigma"], json!(2));
        assert_eq!(r["d"], json!([3]));
        assert_eq!(r["verified"], json!(true));
        assert!(validate_report(&o.report).is_empty());
    }

    #[test]
    fn non_stable_stratify_is_rejected() {
        let o = run_doc(
            r#"{"schema_version": 1, "kind": "stratify",
            "payload": {"rank": 1, "lines": [{"label": "a", "weight": [1], "rho": 1}]}}"#,
        );
        assert_eq!(o.exit_code(), 2);
        assert_eq!(o.report["status"], "rejected");
        assert!(validate_report(&o.report).is_empty());
    }

    #[test]
    fn shb_report_expected_dim() {
        let o = run_doc(
            r#"{"schema_version": 1, "kind": "shb",
            "payload": {"genus": 2, "blocks": [{"ranks": [1]}, {"ranks": [1]}]}}"#,
        );
        assert_eq!(o.exit_code(), 0, "{}", o.report);
        let r = &o.report["result"];
        assert_eq!(r["expected_dim"], json!(3));
        assert_eq!(r["partitions"].as_array().unwrap().len(), 2);
        // equal blocks do not count as distinct
        assert_eq!(r["abelian"], json!(false));
        let o = run_doc(
            r#"{"schema_version": 1, "kind": "shb",
            "payload": {"genus": 2, "blocks": [{"ranks": [1]}, {"ranks": [1, 1], "degrees": [1, -1]}]}}"#,
        );
        assert_eq!(o.report["result"]["cyclic_phi"]["verdict"], "stable");
    }

    #[test]
    fn kn_report_closed_form() {
        let o = run_doc(
            r#"{"schema_version": 1, "kind": "kempf-ness",
            "payload": {"rank": 1, "weights": [[1], [-1]], "norms": [4, 1]}}"#,
        );
        let r = &o.report["result"];
        let x = r["minimizer"][0].as_f64().unwrap();
        assert!((x + std::f64::consts::LN_2 / 2.0).abs() < 1e-8);
        assert!((r["value"].as_f64().unwrap() - 4.0).abs() < 1e-8);
    }

    #[test]
    fn rerun_is_byte_identical() {
        let doc = r#"{"schema_version": 1, "kind": "kuranishi", "options": {"seed": 5},
            "payload": {"generator": "random", "samples": 3}}"#;
        let a = serde_json::to_string(&run_doc(doc).report).unwrap();
        let b = serde_json::to_string(&run_doc(doc).report).unwrap();
        assert_eq!(a, b);
        assert!(a.contains("\"within_tolerance\":true"));
    }

    #[test]
    fn text_rendering_mentions_fields() {
        let o = run_doc(
            r#"{"schema_version": 1, "kind": "shb", "payload": {"genus": 3, "blocks": [{"ranks": [2]}]}}"#,
        );
        let t = render_text(&o.report);
        assert!(t.contains("expected_dim: 6"));
    }
}
