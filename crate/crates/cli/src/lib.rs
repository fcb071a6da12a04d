//! Document handling and command runners behind the `polymat` binary.
//!
//! Runners take document texts and return a [`RunReport`] together with the
//! documents to emit; they do no I/O, so they also back the browser demo.

pub mod document;
pub mod report;

use polymat::factorizer::{
    classify, classify_poly, factor_chain, factor_once, verify as verify_factors, FactorOptions, LinearDivisor,
    DEFAULT_MAX_SUBSET_SEARCH,
};
use polymat::{Error, OrderKind, PolyMatrix, Ring};
use sha2::{Digest, Sha256};

pub use document::{parse_divisor, DivisorSpec, MatrixDocument, RingSpec};
pub use report::{Analysis, Factorization, RunReport, Verification};

pub const EXIT_OK: i32 = 0;
pub const EXIT_HYPOTHESIS: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_COMPLETION: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

/// Why a run did not succeed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Failure {
    /// Unreadable or malformed input.
    Input(String),
    /// The library rejected the input or failed.
    Compute(Error),
    /// A factorization was checked and found wrong.
    Rejected(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Input(_) => EXIT_INPUT,
            Failure::Rejected(_) => EXIT_HYPOTHESIS,
            Failure::Compute(e) if e.is_hypothesis_failure() => EXIT_HYPOTHESIS,
            Failure::Compute(Error::CompletionFailed { .. }) => EXIT_COMPLETION,
            Failure::Compute(_) => EXIT_INTERNAL,
        }
    }

    pub fn status(&self) -> &'static str {
        match self.exit_code() {
            EXIT_HYPOTHESIS => "hypothesis_failure",
            EXIT_INPUT => "input_error",
            EXIT_COMPLETION => "completion_failure",
            _ => "internal_error",
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Input(m) | Failure::Rejected(m) => f.write_str(m),
            Failure::Compute(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e)
    }
}

#[derive(Clone, Debug)]
pub struct RunOptions {
    /// Replaces the order declared in the documents.
    pub order: Option<OrderKind>,
    pub skip_class_check: bool,
    pub max_subset_search: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            order: None,
            skip_class_check: false,
            max_subset_search: DEFAULT_MAX_SUBSET_SEARCH,
        }
    }
}

impl RunOptions {
    fn factor_options(&self) -> FactorOptions {
        FactorOptions {
            skip_class_check: self.skip_class_check,
            max_subset_search: self.max_subset_search,
        }
    }
}

/// A document to write, e.g. `G1.json`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub name: String,
    pub document: MatrixDocument,
}

#[derive(Clone, Debug)]
pub struct Run {
    pub report: RunReport,
    pub outputs: Vec<Output>,
}

/// Hex SHA-256 of the parts, each followed by a zero byte.
pub fn digest(parts: &[&str]) -> String {
    let mut h = Sha256::new();
    for p in parts {
        h.update(p.as_bytes());
        h.update([0u8]);
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

struct Builder {
    report: RunReport,
}

impl Builder {
    fn new(command: &str, parts: &[&str]) -> Self {
        Builder {
            report: RunReport {
                command: command.into(),
                inputs_digest: digest(parts),
                ring: None,
                status: "ok".into(),
                exit_code: EXIT_OK,
                elapsed_ms: None,
                analysis: None,
                factorization: None,
                verification: None,
                error: None,
            },
        }
    }

    fn finish(mut self, result: Result<Vec<Output>, Failure>) -> Run {
        let outputs = match result {
            Ok(o) => o,
            Err(e) => {
                self.report.status = e.status().into();
                self.report.exit_code = e.exit_code();
                self.report.error = Some(e.to_string());
                Vec::new()
            }
        };
        Run {
            report: self.report,
            outputs,
        }
    }
}

fn load(text: &str, opts: &RunOptions) -> Result<(MatrixDocument, Ring, PolyMatrix), Failure> {
    let doc = MatrixDocument::from_json(text)?;
    let ring = doc.ring(opts.order)?;
    let m = doc.matrix(&ring)?;
    Ok((doc, ring, m))
}

fn divisor_for(doc: &MatrixDocument, ring: &Ring, flag: Option<&str>) -> Result<LinearDivisor, Failure> {
    match flag {
        Some(s) => parse_divisor(s, ring),
        None => doc.single_divisor(ring),
    }
}

/// Class membership of `(F, d)` with certificates.
pub fn analyze(doc: &str, divisor: Option<&str>, opts: &RunOptions) -> Run {
    let mut b = Builder::new("analyze", &[doc, divisor.unwrap_or("")]);
    let result = (|| -> Result<Vec<Output>, Failure> {
        let (doc, ring, f) = load(doc, opts)?;
        b.report.ring = Some(RingSpec::of(&ring));
        let d = divisor_for(&doc, &ring, divisor)?;
        let rep = classify(&f, &d)?;
        b.report.analysis = Some(Analysis::new(&f, &rep));
        Ok(Vec::new())
    })();
    b.finish(result)
}

/// One step `F = G1 * F1`; emits `G1.json` and `F1.json`.
pub fn factor(doc: &str, divisor: Option<&str>, opts: &RunOptions) -> Run {
    let mut b = Builder::new(
        "factor",
        &[doc, divisor.unwrap_or(""), &opts.skip_class_check.to_string()],
    );
    let result = (|| -> Result<Vec<Output>, Failure> {
        let (doc, ring, f) = load(doc, opts)?;
        b.report.ring = Some(RingSpec::of(&ring));
        let d = divisor_for(&doc, &ring, divisor)?;
        let step = match factor_once(&f, &d, &opts.factor_options()) {
            Ok(s) => s,
            Err(e) => {
                if matches!(e, Error::Hypothesis(_)) {
                    if let Ok(rep) = classify(&f, &d) {
                        b.report.analysis = Some(Analysis::new(&f, &rep));
                    }
                }
                return Err(e.into());
            }
        };
        b.report.analysis = step.class_report.as_ref().map(|r| Analysis::new(&f, r));
        let outputs = vec![
            Output {
                name: "G1.json".into(),
                document: MatrixDocument::from_matrix(&step.g, &[(d.clone(), 1)]),
            },
            Output {
                name: "F1.json".into(),
                document: MatrixDocument::from_matrix(&step.residual, &[]),
            },
        ];
        b.report.factorization = Some(Factorization::from_step(&step));
        Ok(outputs)
    })();
    b.finish(result)
}

/// Factors out the document's divisor product; emits `G1.json ... Gk.json`,
/// `G0.json` for their product, and `Fk.json`.
pub fn chain(doc: &str, opts: &RunOptions) -> Run {
    let mut b = Builder::new("chain", &[doc]);
    let result = (|| -> Result<Vec<Output>, Failure> {
        let (doc, ring, f) = load(doc, opts)?;
        b.report.ring = Some(RingSpec::of(&ring));
        let d0 = doc
            .divisor_product(&ring)?
            .ok_or_else(|| Failure::Input("document declares no divisors".into()))?;
        let res = match factor_chain(&f, &d0, &opts.factor_options()) {
            Ok(r) => r,
            Err(e) => {
                if matches!(e, Error::Hypothesis(_)) {
                    if let Ok(rep) = classify_poly(&f, &d0.expand()) {
                        b.report.analysis = Some(Analysis::new(&f, &rep));
                    }
                }
                return Err(e.into());
            }
        };
        b.report.analysis = Some(Analysis::new(&f, &res.class_report));
        let g0 = res.combined()?;
        let k = res.steps.len();
        let mut outputs: Vec<Output> = res
            .steps
            .iter()
            .enumerate()
            .map(|(i, s)| Output {
                name: format!("G{}.json", i + 1),
                document: MatrixDocument::from_matrix(&s.g, &[(s.divisor.clone(), 1)]),
            })
            .collect();
        outputs.push(Output {
            name: "G0.json".into(),
            document: MatrixDocument::from_matrix(&g0, d0.factors()),
        });
        outputs.push(Output {
            name: format!("F{k}.json"),
            document: MatrixDocument::from_matrix(&res.residual, &[]),
        });
        b.report.factorization = Some(Factorization::from_chain(&res, &g0));
        Ok(outputs)
    })();
    b.finish(result)
}

/// Checks `F = G_1 * ... * G_k * residual`, and `det(G_i)` against the
/// divisors declared in each factor document.
pub fn verify(doc: &str, factors: &[String], residual: &str, opts: &RunOptions) -> Run {
    let mut parts: Vec<&str> = vec![doc];
    parts.extend(factors.iter().map(String::as_str));
    parts.push(residual);
    let mut b = Builder::new("verify", &parts);
    let result = (|| -> Result<Vec<Output>, Failure> {
        let (_, ring, f) = load(doc, opts)?;
        b.report.ring = Some(RingSpec::of(&ring));
        let mut gs = Vec::new();
        let mut dets = Vec::new();
        for (i, text) in factors.iter().enumerate() {
            let fdoc = MatrixDocument::from_json(text).map_err(|e| Failure::Input(format!("factor {}: {e}", i + 1)))?;
            if fdoc.ring.vars != ring.names() {
                return Err(Failure::Input(format!("factor {} is over a different ring", i + 1)));
            }
            gs.push(fdoc.matrix(&ring)?);
            dets.push(fdoc.divisor_product(&ring)?.map(|p| p.expand()));
        }
        let rdoc = MatrixDocument::from_json(residual)?;
        if rdoc.ring.vars != ring.names() {
            return Err(Failure::Input("residual is over a different ring".into()));
        }
        let r = rdoc.matrix(&ring)?;
        let rep = verify_factors(&f, &gs, &r, &dets);
        let v = Verification::new(&rep, gs.len());
        let failure = v.failure.clone();
        b.report.verification = Some(v);
        match failure {
            None => Ok(Vec::new()),
            Some(msg) => Err(Failure::Rejected(msg)),
        }
    })();
    b.finish(result)
}
