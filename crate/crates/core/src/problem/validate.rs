use std::collections::BTreeSet;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde_json::{Map, Value};

use super::{
    locate, Diagnostic, Kind, KnPayload, KuranishiGenerator, LineSpec, Options, OutputFormat,
    Payload, ProblemSpec, SCHEMA_VERSION,
};
use crate::graded_kuranishi::RandomComplexParams;
use crate::shb_model::{GradingConvention, StableBlock, MAX_PARTITION_BLOCKS};

const MAX_RANK: u64 = 16;

/// Parses document text, reporting syntax errors with their position.
pub fn parse_document(text: &str) -> Result<Value, Diagnostic> {
    serde_json::from_str(text).map_err(|e| Diagnostic {
        path: String::new(),
        message: format!("parse error: {e}"),
        line: Some(e.line()),
        column: Some(e.column()),
    })
}

/// Validates document text, returning every violation found rather than the first.
pub fn validate(text: &str) -> Result<ProblemSpec, Vec<Diagnostic>> {
    let value = parse_document(text).map_err(|d| vec![d])?;
    validate_value(&value).map_err(|errs| {
        let pos = locate::positions(text);
        errs.into_iter()
            .map(|mut d| {
                // fall back to the nearest enclosing value that exists in the text
                let mut p = d.path.as_str();
                loop {
                    if let Some(&(l, c)) = pos.get(p) {
                        d.line = Some(l);
                        d.column = Some(c);
                        break;
                    }
                    match p.rfind('/') {
                        Some(i) => p = &p[..i],
                        None => break,
                    }
                }
                d
            })
            .collect()
    })
}

/// Validates an already parsed document. Diagnostics carry paths but no positions.
pub fn validate_value(doc: &Value) -> Result<ProblemSpec, Vec<Diagnostic>> {
    let mut cx = Ctx::default();
    let spec = cx.document(doc);
    match spec {
        Some(s) if cx.errors.is_empty() => Ok(s),
        _ => Err(cx.errors),
    }
}

#[derive(Default)]
struct Ctx {
    errors: Vec<Diagnostic>,
}

impl Ctx {
    fn err(&mut self, path: &str, msg: impl Into<String>) {
        self.errors.push(Diagnostic {
            path: path.to_string(),
            message: msg.into(),
            line: None,
            column: None,
        });
    }

    fn object<'a>(&mut self, v: &'a Value, path: &str, allowed: &[&str]) -> Option<&'a Map<String, Value>> {
        match v.as_object() {
            Some(m) => {
                for k in m.keys() {
                    if !allowed.contains(&k.as_str()) {
                        self.err(&format!("{path}/{k}"), format!("unknown field `{k}`"));
                    }
                }
                Some(m)
            }
            None => {
                self.err(path, "expected an object");
                None
            }
        }
    }

    fn required<'a>(&mut self, m: &'a Map<String, Value>, key: &str, path: &str) -> Option<&'a Value> {
        let v = m.get(key);
        if v.is_none() {
            self.err(path, format!("missing field `{key}`"));
        }
        v
    }

    fn int(&mut self, v: &Value, path: &str) -> Option<i64> {
        let out = v.as_i64();
        if out.is_none() {
            self.err(path, "expected an integer");
        }
        out
    }

    fn uint_in(&mut self, v: &Value, path: &str, lo: u64, hi: u64) -> Option<u64> {
        match v.as_u64() {
            Some(x) if (lo..=hi).contains(&x) => Some(x),
            _ => {
                self.err(path, format!("expected an integer in [{lo}, {hi}]"));
                None
            }
        }
    }

    fn int_vec(&mut self, v: &Value, path: &str) -> Option<Vec<i64>> {
        let Some(a) = v.as_array() else {
            self.err(path, "expected an array of integers");
            return None;
        };
        let items: Vec<Option<i64>> = a
            .iter()
            .enumerate()
            .map(|(i, x)| self.int(x, &format!("{path}/{i}")))
            .collect();
        items.into_iter().collect()
    }

    fn complex(&mut self, v: &Value, path: &str) -> Option<Complex64> {
        let z = match v {
            Value::Number(n) => n.as_f64().map(|re| Complex64::new(re, 0.0)),
            Value::Array(a) if a.len() == 2 => match (a[0].as_f64(), a[1].as_f64()) {
                (Some(re), Some(im)) => Some(Complex64::new(re, im)),
                _ => None,
            },
            _ => None,
        };
        if z.is_none() {
            self.err(path, "expected a number or a [re, im] pair");
        }
        z
    }

    fn document(&mut self, doc: &Value) -> Option<ProblemSpec> {
        let m = self.object(doc, "", &["schema_version", "kind", "options", "payload"])?;
        if let Some(v) = self.required(m, "schema_version", "") {
            if v.as_u64() != Some(SCHEMA_VERSION) {
                self.err("/schema_version", format!("unsupported schema_version, expected {SCHEMA_VERSION}"));
            }
        }
        let kind = self.required(m, "kind", "").and_then(|v| {
            let k = v.as_str().and_then(Kind::parse);
            if k.is_none() {
                let names: Vec<&str> = Kind::ALL.iter().map(|k| k.as_str()).collect();
                self.err("/kind", format!("kind must be one of {}", names.join(", ")));
            }
            k
        });
        let options = match m.get("options") {
            Some(o) => self.options(o),
            None => Some(Options::default()),
        };
        let payload = match (kind, self.required(m, "payload", "")) {
            (Some(k), Some(p)) => self.payload(k, p),
            _ => None,
        };
        Some(ProblemSpec {
            kind: kind?,
            options: options?,
            payload: payload?,
        })
    }

    fn options(&mut self, v: &Value) -> Option<Options> {
        let m = self.object(
            v,
            "/options",
            &["tol", "seed", "convention", "emit_certificates", "format"],
        )?;
        let mut o = Options::default();
        let before = self.errors.len();
        if let Some(t) = m.get("tol") {
            match t.as_f64() {
                Some(x) if x.is_finite() && x > 0.0 => o.tol = x,
                _ => self.err("/options/tol", "tol must be a positive number"),
            }
        }
        if let Some(s) = m.get("seed") {
            match s.as_u64() {
                Some(x) => o.seed = x,
                None => self.err("/options/seed", "seed must be a non-negative integer"),
            }
        }
        if let Some(c) = m.get("convention") {
            match c.as_str() {
                Some("default") => o.convention = GradingConvention::Default,
                Some("flipped") => o.convention = GradingConvention::Flipped,
                _ => self.err("/options/convention", "convention must be `default` or `flipped`"),
            }
        }
        if let Some(e) = m.get("emit_certificates") {
            match e.as_bool() {
                Some(b) => o.emit_certificates = b,
                None => self.err("/options/emit_certificates", "expected a boolean"),
            }
        }
        if let Some(f) = m.get("format") {
            match f.as_str() {
                Some("json") => o.format = OutputFormat::Json,
                Some("text") => o.format = OutputFormat::Text,
                _ => self.err("/options/format", "format must be `json` or `text`"),
            }
        }
        (self.errors.len() == before).then_some(o)
    }

    fn payload(&mut self, kind: Kind, v: &Value) -> Option<Payload> {
        let before = self.errors.len();
        let p = match kind {
            Kind::Stability => self.stability(v),
            Kind::KempfNess => self.kempf_ness(v),
            Kind::Stratify => self.stratify(v),
            Kind::Shb => self.shb(v),
            Kind::Kuranishi => self.kuranishi(v),
        };
        if self.errors.len() > before {
            None
        } else {
            p
        }
    }

    fn rank(&mut self, m: &Map<String, Value>) -> Option<usize> {
        let v = self.required(m, "rank", "/payload")?;
        self.uint_in(v, "/payload/rank", 0, MAX_RANK).map(|r| r as usize)
    }

    fn lines(&mut self, m: &Map<String, Value>, rank: Option<usize>, graded: bool) -> Option<Vec<LineSpec>> {
        let v = self.required(m, "lines", "/payload")?;
        let Some(arr) = v.as_array() else {
            self.err("/payload/lines", "expected an array of lines");
            return None;
        };
        if arr.is_empty() {
            self.err("/payload/lines", "at least one line is required");
        }
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        let mut rho_seen = None;
        let mut ok = true;
        for (i, l) in arr.iter().enumerate() {
            let path = format!("/payload/lines/{i}");
            let Some(lm) = self.object(l, &path, &["label", "weight", "rho", "amplitude"]) else {
                ok = false;
                continue;
            };
            let label = match lm.get("label") {
                Some(Value::String(s)) if !s.is_empty() => s.clone(),
                Some(_) => {
                    self.err(&format!("{path}/label"), "label must be a non-empty string");
                    format!("#{i}")
                }
                None => format!("#{i}"),
            };
            if !seen.insert(label.clone()) {
                self.err(&format!("{path}/label"), format!("duplicate label `{label}`"));
            }
            let weight = self
                .required(lm, "weight", &path)
                .and_then(|w| self.int_vec(w, &format!("{path}/weight")));
            if let (Some(w), Some(r)) = (&weight, rank) {
                if w.len() != r {
                    self.err(
                        &format!("{path}/weight"),
                        format!("line `{label}`: weight has {} entries, expected {r} (the rank)", w.len()),
                    );
                }
            }
            let rho = match lm.get("rho") {
                Some(r) => {
                    let x = self.int(r, &format!("{path}/rho"));
                    if graded {
                        if let Some(x) = x {
                            if x < 1 {
                                self.err(&format!("{path}/rho"), format!("line `{label}`: rho must be >= 1"));
                            }
                        }
                    }
                    x
                }
                None => {
                    if graded {
                        self.err(&path, format!("line `{label}`: missing field `rho`"));
                    }
                    None
                }
            };
            match rho_seen {
                None => rho_seen = Some(rho.is_some()),
                Some(g) if g != rho.is_some() && !graded => {
                    self.err(&path, "either every line or no line carries `rho`")
                }
                _ => {}
            }
            let amplitude = match lm.get("amplitude") {
                Some(a) => self.complex(a, &format!("{path}/amplitude")),
                None => Some(Complex64::new(1.0, 0.0)),
            };
            match (weight, amplitude) {
                (Some(weight), Some(amplitude)) => out.push(LineSpec {
                    label,
                    weight,
                    rho,
                    amplitude,
                }),
                _ => ok = false,
            }
        }
        ok.then_some(out)
    }

    fn stability(&mut self, v: &Value) -> Option<Payload> {
        let m = self.object(v, "/payload", &["rank", "lines", "brute_force_bound"])?;
        let rank = self.rank(m);
        let lines = self.lines(m, rank, false);
        let bound = m
            .get("brute_force_bound")
            .map(|b| self.uint_in(b, "/payload/brute_force_bound", 1, 1000).map(|b| b as i64));
        Some(Payload::Stability {
            rank: rank?,
            lines: lines?,
            brute_force_bound: match bound {
                Some(b) => Some(b?),
                None => None,
            },
        })
    }

    fn stratify(&mut self, v: &Value) -> Option<Payload> {
        let m = self.object(v, "/payload", &["rank", "lines", "sigma_multiple"])?;
        let rank = self.rank(m);
        let lines = self.lines(m, rank, true);
        let sigma_multiple = match m.get("sigma_multiple") {
            Some(s) => self.uint_in(s, "/payload/sigma_multiple", 1, 1_000_000).map(|s| s as i64),
            None => Some(1),
        };
        Some(Payload::Stratify {
            rank: rank?,
            lines: lines?,
            sigma_multiple: sigma_multiple?,
        })
    }

    fn kempf_ness(&mut self, v: &Value) -> Option<Payload> {
        let m = self.object(v, "/payload", &["rank", "weights", "norms", "phi"])?;
        if let Some(phi) = m.get("phi") {
            if m.contains_key("weights") || m.contains_key("norms") || m.contains_key("rank") {
                self.err("/payload", "give either `phi` or `rank`/`weights`/`norms`, not both");
            }
            return self.matrix(phi, "/payload/phi").map(|phi| KnPayload::Conjugation { phi }).map(Payload::KempfNess);
        }
        let rank = self.rank(m);
        let weights = self.required(m, "weights", "/payload").and_then(|w| {
            let Some(a) = w.as_array() else {
                self.err("/payload/weights", "expected an array of weights");
                return None;
            };
            let ws: Vec<Option<Vec<i64>>> = a
                .iter()
                .enumerate()
                .map(|(i, x)| {
                    let p = format!("/payload/weights/{i}");
                    let w = self.int_vec(x, &p)?;
                    if let Some(r) = rank {
                        if w.len() != r {
                            self.err(&p, format!("weight {i} has {} entries, expected {r} (the rank)", w.len()));
                        }
                    }
                    Some(w)
                })
                .collect();
            ws.into_iter().collect::<Option<Vec<_>>>()
        });
        let norms = self.required(m, "norms", "/payload").and_then(|n| {
            let Some(a) = n.as_array() else {
                self.err("/payload/norms", "expected an array of positive numbers");
                return None;
            };
            let ns: Vec<Option<f64>> = a
                .iter()
                .enumerate()
                .map(|(i, x)| match x.as_f64() {
                    Some(f) if f.is_finite() && f > 0.0 => Some(f),
                    _ => {
                        self.err(&format!("/payload/norms/{i}"), "squared norm must be a positive number");
                        None
                    }
                })
                .collect();
            ns.into_iter().collect::<Option<Vec<_>>>()
        });
        if let (Some(w), Some(n)) = (&weights, &norms) {
            if w.len() != n.len() {
                self.err("/payload/norms", format!("{} norms for {} weights", n.len(), w.len()));
            }
            let distinct: BTreeSet<&Vec<i64>> = w.iter().collect();
            if distinct.len() != w.len() {
                self.err("/payload/weights", "weights must be distinct");
            }
            if w.is_empty() {
                self.err("/payload/weights", "at least one weight is required");
            }
        }
        Some(Payload::KempfNess(KnPayload::Torus {
            rank: rank?,
            weights: weights?,
            norms: norms?,
        }))
    }

    fn matrix(&mut self, v: &Value, path: &str) -> Option<DMatrix<Complex64>> {
        let Some(rows) = v.as_array() else {
            self.err(path, "expected an array of rows");
            return None;
        };
        let n = rows.len();
        if n == 0 {
            self.err(path, "matrix must be non-empty");
            return None;
        }
        let mut entries = Vec::with_capacity(n * n);
        let mut ok = true;
        for (i, r) in rows.iter().enumerate() {
            let rp = format!("{path}/{i}");
            match r.as_array() {
                Some(a) if a.len() == n => {
                    for (j, x) in a.iter().enumerate() {
                        match self.complex(x, &format!("{rp}/{j}")) {
                            Some(z) => entries.push(z),
                            None => ok = false,
                        }
                    }
                }
                _ => {
                    self.err(&rp, format!("row {i} must have {n} entries (square matrix)"));
                    ok = false;
                }
            }
        }
        ok.then(|| DMatrix::from_row_slice(n, n, &entries))
    }

    fn shb(&mut self, v: &Value) -> Option<Payload> {
        let m = self.object(v, "/payload", &["genus", "blocks", "x", "sigma"])?;
        let genus = self.required(m, "genus", "/payload").and_then(|g| {
            let x = self.int(g, "/payload/genus")?;
            if x < 0 {
                self.err("/payload/genus", "genus must be >= 0");
            }
            Some(x)
        });
        let blocks = self.required(m, "blocks", "/payload").and_then(|b| {
            let Some(a) = b.as_array() else {
                self.err("/payload/blocks", "expected an array of blocks");
                return None;
            };
            if a.is_empty() {
                self.err("/payload/blocks", "at least one block is required");
            }
            if a.len() > MAX_PARTITION_BLOCKS {
                self.err("/payload/blocks", format!("at most {MAX_PARTITION_BLOCKS} blocks are supported"));
            }
            let bs: Vec<Option<StableBlock>> = a
                .iter()
                .enumerate()
                .map(|(i, blk)| {
                    let p = format!("/payload/blocks/{i}");
                    let bm = self.object(blk, &p, &["ranks", "degrees"])?;
                    let ranks = self.required(bm, "ranks", &p).and_then(|r| self.int_vec(r, &format!("{p}/ranks")));
                    let degrees = match bm.get("degrees") {
                        Some(d) => self.int_vec(d, &format!("{p}/degrees")),
                        None => ranks.as_ref().map(|r| vec![0; r.len()]),
                    };
                    match StableBlock::new(ranks?, degrees?) {
                        Ok(b) => Some(b),
                        Err(e) => {
                            self.err(&p, e.to_string());
                            None
                        }
                    }
                })
                .collect();
            bs.into_iter().collect::<Option<Vec<_>>>()
        });
        let x = m.get("x").map(|x| self.int_vec(x, "/payload/x"));
        let sigma = m.get("sigma").map(|s| self.uint_in(s, "/payload/sigma", 1, 1_000_000).map(|s| s as i64));
        if let (Some(Some(x)), Some(b)) = (&x, &blocks) {
            if x.len() != b.len() {
                self.err("/payload/x", format!("x has {} entries, expected one per block ({})", x.len(), b.len()));
            }
        }
        if x.is_some() != sigma.is_some() {
            self.err("/payload", "`x` and `sigma` must be given together");
        }
        Some(Payload::Shb {
            genus: genus?,
            blocks: blocks?,
            x: match x {
                Some(x) => Some(x?),
                None => None,
            },
            sigma: match sigma {
                Some(s) => Some(s?),
                None => None,
            },
        })
    }

    fn kuranishi(&mut self, v: &Value) -> Option<Payload> {
        let m = self.object(
            v,
            "/payload",
            &["generator", "samples", "grades", "max_c0", "max_c1", "max_c2", "bracket_density", "n"],
        )?;
        let samples = match m.get("samples") {
            Some(s) => self.uint_in(s, "/payload/samples", 1, 10_000).map(|s| s as usize),
            None => Some(1),
        };
        let generator = match m.get("generator").and_then(Value::as_str) {
            Some("random") => {
                let d = RandomComplexParams::default();
                let mut get = |k: &str, lo: u64, hi: u64, def: u64| match m.get(k) {
                    Some(v) => self.uint_in(v, &format!("/payload/{k}"), lo, hi),
                    None => Some(def),
                };
                let grades = get("grades", 1, 8, d.grades as u64);
                let c0 = get("max_c0", 0, 8, d.max_c0 as u64);
                let c1 = get("max_c1", 1, 12, d.max_c1 as u64);
                let c2 = get("max_c2", 1, 12, d.max_c2 as u64);
                let dens = get("bracket_density", 0, 100, d.bracket_density as u64);
                if m.contains_key("n") {
                    self.err("/payload/n", "`n` applies to the nilpotent generator only");
                }
                Some(KuranishiGenerator::Random(RandomComplexParams {
                    grades: grades? as i32,
                    max_c0: c0? as usize,
                    max_c1: c1? as usize,
                    max_c2: c2? as usize,
                    bracket_density: dens? as u32,
                }))
            }
            Some("nilpotent") => {
                let n = self
                    .required(m, "n", "/payload")
                    .and_then(|n| self.uint_in(n, "/payload/n", 2, 12));
                Some(KuranishiGenerator::Nilpotent { n: n? as usize })
            }
            _ => {
                self.err("/payload/generator", "generator must be `random` or `nilpotent`");
                None
            }
        };
        Some(Payload::Kuranishi {
            generator: generator?,
            samples: samples?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_stability_spec() {
        let doc = r#"{"schema_version": 1, "kind": "stability",
            "payload": {"rank": 1, "lines": [{"label": "a", "weight": [1]}, {"label": "b", "weight": [-1]}]}}"#;
        let spec = validate(doc).unwrap();
        assert_eq!(spec.kind, Kind::Stability);
    }

    #[test]
    fn weight_mismatch_names_line_and_position() {
        let doc = "{\"schema_version\": 1, \"kind\": \"stability\",\n \"payload\": {\"rank\": 1, \"lines\": [\n  {\"label\": \"a\", \"weight\": [1]},\n  {\"label\": \"b\", \"weight\": [1, 2]}]}}";
        let errs = validate(doc).unwrap_err();
        assert_eq!(errs.len(), 1);
        assert!(errs[0].message.contains("line `b`"));
        assert_eq!(errs[0].path, "/payload/lines/1/weight");
        assert_eq!(errs[0].line, Some(4));
    }

    #[test]
    fn rho_zero_is_rejected() {
        let doc = r#"{"schema_version": 1, "kind": "stratify",
            "payload": {"rank": 1, "lines": [{"label": "a", "weight": [1], "rho": 0}, {"label": "b", "weight": [-1], "rho": 2}]}}"#;
        let errs = validate(doc).unwrap_err();
        assert!(errs.iter().any(|e| e.message.contains("rho must be >= 1")));
    }

    #[test]
    fn collects_every_error() {
        let doc = r#"{"schema_version": 2, "kind": "stratify", "options": {"tol": -1},
            "payload": {"rank": 1, "lines": [{"label": "a", "weight": [1, 1], "rho": 0}, {"weight": [-1]}]}}"#;
        let errs = validate(doc).unwrap_err();
        // version, tol, weight length, rho, missing rho on the second line
        assert_eq!(errs.len(), 5, "{errs:?}");
    }

    #[test]
    fn parse_errors_have_position() {
        let errs = validate("{\n  \"kind\": }").unwrap_err();
        assert_eq!(errs[0].line, Some(2));
        assert!(errs[0].column.is_some());
    }
}
