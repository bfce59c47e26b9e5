//! Seeded random problem instances.
//!
//! Instance `i` of a batch generated with seed `s` draws from
//! `ChaCha8Rng::seed_from_u64(s * 1_000_003 + i)`, so any single instance can be
//! regenerated without the rest of its batch.

use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::{Kind, SCHEMA_VERSION};
use crate::stability::{classify, Stability};
use crate::torus_rep::{RepVector, Representation, WeightLine};

pub type GenKind = Kind;

pub fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_mul(1_000_003).wrapping_add(index))
}

fn amplitude<R: Rng>(rng: &mut R) -> Complex64 {
    loop {
        // two decimals keep documents readable and amplitudes exactly reproducible
        let re = (rng.random_range(-1.0f64..1.0) * 100.0).round() / 100.0;
        let im = (rng.random_range(-1.0f64..1.0) * 100.0).round() / 100.0;
        if re != 0.0 || im != 0.0 {
            return Complex64::new(re, im);
        }
    }
}

/// Random vector of a torus of rank `1..=max_rank` with `1..=max_lines` weights in
/// `[-bound, bound]^rank` and nonzero complex amplitudes.
pub fn random_representation<R: Rng>(
    rng: &mut R,
    max_rank: usize,
    max_lines: usize,
    bound: i64,
) -> RepVector {
    let rank = rng.random_range(1..=max_rank.max(1));
    let n = rng.random_range(1..=max_lines.max(1));
    let lines: Vec<WeightLine> = (0..n)
        .map(|i| {
            WeightLine::new(
                format!("l{i}"),
                (0..rank).map(|_| rng.random_range(-bound..=bound)).collect(),
            )
        })
        .collect();
    let amps: Vec<Complex64> = (0..n).map(|_| amplitude(rng)).collect();
    let rep = Arc::new(Representation::new(rank, lines).expect("labels are distinct"));
    RepVector::new(rep, amps).expect("lengths agree")
}

/// Random stable vector of a graded representation of a torus of rank `0..=max_rank`,
/// with `C*` weights in `1..=rho_max`; retried until the torus part is stable.
pub fn random_stable_graded<R: Rng>(rng: &mut R, max_rank: usize, rho_max: i64) -> RepVector {
    loop {
        let rank = rng.random_range(0..=max_rank);
        let n = rng.random_range(1..=(2 * rank + 3));
        let lines: Vec<WeightLine> = (0..n)
            .map(|i| {
                WeightLine::graded(
                    format!("l{i}"),
                    (0..rank).map(|_| rng.random_range(-3..=3)).collect(),
                    rng.random_range(1..=rho_max),
                )
            })
            .collect();
        let amps: Vec<Complex64> = (0..n).map(|_| amplitude(rng)).collect();
        let rep = Arc::new(Representation::new(rank, lines).expect("labels are distinct"));
        let v = RepVector::new(rep, amps).expect("lengths agree");
        if classify(&v).is_ok_and(|c| c.class == Stability::Stable) {
            return v;
        }
    }
}

fn lines_json(v: &RepVector) -> Value {
    Value::Array(
        v.rep()
            .lines()
            .iter()
            .zip(v.amplitudes())
            .map(|(l, a)| {
                let mut o = json!({ "label": l.label, "weight": l.weight, "amplitude": [a.re, a.im] });
                if let Some(r) = l.rho {
                    o["rho"] = json!(r);
                }
                o
            })
            .collect(),
    )
}

/// Document for a random Kuranishi batch drawn from the default generator.
pub fn random_complex_instance<R: Rng>(rng: &mut R) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "kind": "kuranishi",
        "options": { "seed": rng.random_range(0..1_000_000u64) },
        "payload": { "generator": "random", "samples": 1 },
    })
}

fn one<R: Rng>(kind: Kind, rng: &mut R) -> Value {
    let (payload, options) = match kind {
        Kind::Stability => {
            let v = random_representation(rng, 3, 10, 4);
            (
                json!({ "rank": v.rep().rank(), "lines": lines_json(&v), "brute_force_bound": 50 }),
                json!({}),
            )
        }
        Kind::Stratify => {
            let v = random_stable_graded(rng, 2, 4);
            (json!({ "rank": v.rep().rank(), "lines": lines_json(&v) }), json!({}))
        }
        Kind::KempfNess => {
            let v = random_representation(rng, 3, 10, 4);
            let norms = v.weight_norms();
            (
                json!({
                    "rank": v.rep().rank(),
                    "weights": norms.keys().collect::<Vec<_>>(),
                    "norms": norms.values().collect::<Vec<_>>(),
                }),
                json!({}),
            )
        }
        Kind::Shb => {
            let k = rng.random_range(1..=4);
            let blocks: Vec<Value> = (0..k)
                .map(|_| json!({ "ranks": [rng.random_range(1..=3)] }))
                .collect();
            (json!({ "genus": rng.random_range(2..=4), "blocks": blocks }), json!({}))
        }
        Kind::Kuranishi => {
            return random_complex_instance(rng);
        }
    };
    let mut doc = json!({
        "schema_version": SCHEMA_VERSION,
        "kind": kind.as_str(),
        "payload": payload,
    });
    if options.as_object().is_some_and(|o| !o.is_empty()) {
        doc["options"] = options;
    }
    doc
}

/// `count` documents of the given kind following the seed policy above.
pub fn generate(kind: Kind, seed: u64, count: usize) -> Vec<Value> {
    (0..count)
        .map(|i| one(kind, &mut instance_rng(seed, i as u64)))
        .collect()
}
