//! Problem documents: parsing, validation, dispatch and reports.
//!
//! A document is a JSON object `{schema_version, kind, options, payload}`; the
//! shipped schemas live in `schemas/`.

mod gen;
mod locate;
mod report;
mod validate;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::graded_kuranishi::RandomComplexParams;
use crate::shb_model::{GradingConvention, StableBlock};

pub use gen::{
    generate, instance_rng, random_complex_instance, random_representation, random_stable_graded, GenKind,
};
pub use report::{render_text, run, validate_report, Outcome, RunStatus};
pub use validate::{parse_document, validate, validate_value};

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    Stability,
    KempfNess,
    Stratify,
    Shb,
    Kuranishi,
}

impl Kind {
    pub const ALL: [Kind; 5] = [
        Kind::Stability,
        Kind::KempfNess,
        Kind::Stratify,
        Kind::Shb,
        Kind::Kuranishi,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Stability => "stability",
            Kind::KempfNess => "kempf-ness",
            Kind::Stratify => "stratify",
            Kind::Shb => "shb",
            Kind::Kuranishi => "kuranishi",
        }
    }

    pub fn parse(s: &str) -> Option<Kind> {
        Kind::ALL.into_iter().find(|k| k.as_str() == s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Json,
    Text,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Options {
    pub tol: f64,
    pub seed: u64,
    pub convention: GradingConvention,
    pub emit_certificates: bool,
    pub format: OutputFormat,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            tol: crate::kempf_ness::DEFAULT_TOL,
            seed: 0,
            convention: GradingConvention::Default,
            emit_certificates: true,
            format: OutputFormat::Json,
        }
    }
}

/// Overrides applied on top of a document's own options, e.g. from command line flags.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct OptionOverrides {
    pub tol: Option<f64>,
    pub seed: Option<u64>,
    pub convention: Option<GradingConvention>,
    pub emit_certificates: Option<bool>,
    pub format: Option<OutputFormat>,
}

impl Options {
    pub fn apply(&mut self, o: &OptionOverrides) {
        if let Some(t) = o.tol {
            self.tol = t;
        }
        if let Some(s) = o.seed {
            self.seed = s;
        }
        if let Some(c) = o.convention {
            self.convention = c;
        }
        if let Some(e) = o.emit_certificates {
            self.emit_certificates = e;
        }
        if let Some(f) = o.format {
            self.format = f;
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LineSpec {
    pub label: String,
    pub weight: Vec<i64>,
    pub rho: Option<i64>,
    pub amplitude: Complex64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum KnPayload {
    Torus {
        rank: usize,
        weights: Vec<Vec<i64>>,
        norms: Vec<f64>,
    },
    /// Conjugation action on a square matrix; reports the moment map and the
    /// gradient at the identity.
    Conjugation { phi: DMatrix<Complex64> },
}

#[derive(Debug, Clone, PartialEq)]
pub enum KuranishiGenerator {
    Random(RandomComplexParams),
    Nilpotent { n: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub enum Payload {
    Stability {
        rank: usize,
        lines: Vec<LineSpec>,
        brute_force_bound: Option<i64>,
    },
    KempfNess(KnPayload),
    Stratify {
        rank: usize,
        lines: Vec<LineSpec>,
        sigma_multiple: i64,
    },
    Shb {
        genus: i64,
        blocks: Vec<StableBlock>,
        /// Cocharacter on the block coordinates and its denominator, for the
        /// conformal degree table.
        x: Option<Vec<i64>>,
        sigma: Option<i64>,
    },
    Kuranishi {
        generator: KuranishiGenerator,
        samples: usize,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProblemSpec {
    pub kind: Kind,
    pub options: Options,
    pub payload: Payload,
}

/// One schema violation or parse error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    /// JSON pointer of the offending value, empty for the whole document.
    pub path: String,
    pub message: String,
    pub line: Option<usize>,
    pub column: Option<usize>,
}

impl std::fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match (self.line, self.column) {
            (Some(l), Some(c)) => write!(f, "{l}:{c}: ")?,
            (Some(l), None) => write!(f, "{l}: ")?,
            _ => {}
        }
        if !self.path.is_empty() {
            write!(f, "{}: ", self.path)?;
        }
        f.write_str(&self.message)
    }
}

/// Validates and runs one document, with `overrides` applied to its options.
pub fn run_text(text: &str, overrides: &OptionOverrides) -> Outcome {
    match validate(text) {
        Ok(mut spec) => {
            spec.options.apply(overrides);
            run(&spec)
        }
        Err(errs) => {
            let kind = parse_document(text)
                .ok()
                .and_then(|v| v.get("kind").and_then(|k| k.as_str()).and_then(Kind::parse));
            Outcome::invalid(kind.map(Kind::as_str), &errs)
        }
    }
}

/// Runs independent documents concurrently; outcomes come back in input order.
pub fn run_batch(texts: &[String], overrides: &OptionOverrides) -> Vec<Outcome> {
    std::thread::scope(|s| {
        let handles: Vec<_> = texts
            .iter()
            .map(|t| s.spawn(move || run_text(t, overrides)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("problem runs do not panic"))
            .collect()
    })
}

/// Combined exit status of a batch: any internal error wins, then any rejection.
pub fn batch_exit_code(outcomes: &[Outcome]) -> i32 {
    if outcomes.iter().any(|o| o.status == RunStatus::Error) {
        1
    } else if outcomes.iter().any(|o| o.status == RunStatus::Rejected) {
        2
    } else {
        0
    }
}

pub fn format_report(report: &serde_json::Value, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
            s.push('\n');
            s
        }
        OutputFormat::Text => render_text(report),
    }
}
