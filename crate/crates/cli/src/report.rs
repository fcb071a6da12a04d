//! Machine-readable run reports and their plain-text rendering.
//!
//! Polynomials are stored in their canonical printed form, so every string
//! re-parses in the report's ring to the value that was computed. Row,
//! column and factor indices are 1-based.

use std::fmt::Write as _;

use polymat::factorizer::{ClassReport, FactorStep, FactorizationResult, VerifyReport};
use polymat::groebner::GroebnerBasis;
use polymat::{MinorReport, Poly, PolyMatrix};
use serde::{Deserialize, Serialize};

use crate::document::{DivisorSpec, RingSpec};

pub type Matrix = Vec<Vec<String>>;

fn strings(ps: &[Poly]) -> Vec<String> {
    ps.iter().map(Poly::to_string).collect()
}

fn basis(gb: &GroebnerBasis) -> Vec<String> {
    strings(gb.elements())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    /// SHA-256 over the command line inputs and the input documents.
    pub inputs_digest: String,
    pub ring: Option<RingSpec>,
    pub status: String,
    pub exit_code: i32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
    pub analysis: Option<Analysis>,
    pub factorization: Option<Factorization>,
    pub verification: Option<Verification>,
    pub error: Option<String>,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Minor {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub value: String,
    /// `value / gcd` of all minors of this order.
    pub reduced: String,
}

fn minors(rep: &MinorReport) -> Vec<Minor> {
    rep.minors
        .iter()
        .zip(&rep.reduced)
        .map(|((idx, value), reduced)| Minor {
            rows: idx.rows.iter().map(|i| i + 1).collect(),
            cols: idx.cols.iter().map(|j| j + 1).collect(),
            value: value.to_string(),
            reduced: reduced.to_string(),
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classes {
    pub s: bool,
    pub s1: bool,
    pub s2: bool,
    pub s3: bool,
}

/// Reduced Gröbner bases deciding each class test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificates {
    /// `⟨d, d_(l-1)(F)⟩`.
    pub divisor_and_submaximal_gcd: Vec<String>,
    /// `⟨d, e_1, ..., e_η⟩`, absent when `d` does not divide `d_l(F)`.
    pub s1: Option<Vec<String>>,
    /// `⟨d, c_1, ..., c_γ⟩`.
    pub s2: Vec<String>,
    /// `⟨d, h_1, ..., h_γ⟩`.
    pub s3: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Analysis {
    pub divisor: String,
    pub rows: usize,
    pub cols: usize,
    pub d_l: String,
    pub d_l_minus_1: String,
    pub eta: usize,
    pub gamma: usize,
    pub divides: bool,
    pub quotients: Vec<String>,
    pub gcd_with_submaximal: String,
    pub maximal_minors: Vec<Minor>,
    pub submaximal_minors: Vec<Minor>,
    pub certificates: Certificates,
    pub classes: Classes,
    pub failure: Option<String>,
}

impl Analysis {
    pub fn new(f: &PolyMatrix, rep: &ClassReport) -> Self {
        Analysis {
            divisor: rep.divisor.to_string(),
            rows: f.rows(),
            cols: f.cols(),
            d_l: rep.d_l().to_string(),
            d_l_minus_1: rep.d_l_minus_1().to_string(),
            eta: rep.eta(),
            gamma: rep.gamma(),
            divides: rep.divides,
            quotients: strings(&rep.quotients),
            gcd_with_submaximal: rep.gcd_with_submaximal.to_string(),
            maximal_minors: minors(&rep.maximal),
            submaximal_minors: minors(&rep.submaximal),
            certificates: Certificates {
                divisor_and_submaximal_gcd: basis(&rep.gb_divisor_submaximal),
                s1: rep.gb_s1.as_ref().map(basis),
                s2: basis(&rep.gb_s2),
                s3: basis(&rep.gb_s3),
            },
            classes: Classes {
                s: rep.in_s,
                s1: rep.in_s1,
                s2: rep.in_s2,
                s3: rep.in_s3,
            },
            failure: rep.s3_failure(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub divisor: String,
    /// `F` with `z_i` replaced by `f`.
    pub f_hat: Matrix,
    /// Left syzygy of `F_hat` before content removal.
    pub w_raw: Vec<String>,
    pub w_content: String,
    pub w: Vec<String>,
    /// Reduced basis of the ideal generated by `w`.
    pub w_unit_certificate: Vec<String>,
    /// `w * q1 = 1`.
    pub q1: Vec<String>,
    /// Right syzygies of `w`.
    pub syzygies: Vec<Vec<String>>,
    pub completion_attempts: usize,
    pub v: Matrix,
    pub u: Matrix,
    pub g: Matrix,
    pub residual: Matrix,
}

impl Step {
    pub fn new(s: &FactorStep) -> Self {
        Step {
            divisor: s.divisor.to_string(),
            f_hat: s.f_hat.to_strings(),
            w_raw: strings(&s.zlp.raw),
            w_content: s.zlp.content.to_string(),
            w: strings(&s.zlp.components),
            w_unit_certificate: basis(&s.zlp.unit_certificate),
            q1: strings(&s.completion.q1.cofactors),
            syzygies: s.completion.syzygies.generators.iter().map(|g| strings(g)).collect(),
            completion_attempts: s.completion.attempts,
            v: s.completion.v.to_strings(),
            u: s.completion.u.to_strings(),
            g: s.g.to_strings(),
            residual: s.residual.to_strings(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    pub divisor: String,
    pub divisors: Vec<DivisorSpec>,
    pub steps: Vec<Step>,
    /// `G_1 * ... * G_k`.
    pub g0: Matrix,
    pub det_g0: String,
    pub residual: Matrix,
    /// Paths of the documents written to disk.
    pub outputs: Vec<String>,
}

impl Factorization {
    pub fn from_step(s: &FactorStep) -> Self {
        Factorization {
            divisor: s.divisor.to_string(),
            divisors: vec![DivisorSpec::of(&s.divisor, 1)],
            steps: vec![Step::new(s)],
            g0: s.g.to_strings(),
            det_g0: s.divisor.poly().to_string(),
            residual: s.residual.to_strings(),
            outputs: Vec::new(),
        }
    }

    pub fn from_chain(r: &FactorizationResult, g0: &PolyMatrix) -> Self {
        Factorization {
            divisor: r.divisor.to_string(),
            divisors: r
                .divisor
                .factors()
                .iter()
                .map(|(d, q)| DivisorSpec::of(d, *q))
                .collect(),
            steps: r.steps.iter().map(Step::new).collect(),
            g0: g0.to_strings(),
            det_g0: r.divisor.expand().to_string(),
            residual: r.residual.to_strings(),
            outputs: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub row: usize,
    pub col: usize,
    pub expected: String,
    pub found: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeterminantCheck {
    pub factor: usize,
    pub expected: String,
    pub found: Option<String>,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verification {
    pub passed: bool,
    pub factors: usize,
    pub dimension_error: Option<String>,
    pub mismatches: Vec<Mismatch>,
    pub determinants: Vec<DeterminantCheck>,
    pub failure: Option<String>,
}

impl Verification {
    pub fn new(rep: &VerifyReport, factors: usize) -> Self {
        Verification {
            passed: rep.passed(),
            factors,
            dimension_error: rep.dimension_error.clone(),
            mismatches: rep
                .mismatches
                .iter()
                .map(|m| Mismatch {
                    row: m.row + 1,
                    col: m.col + 1,
                    expected: m.expected.to_string(),
                    found: m.found.to_string(),
                })
                .collect(),
            determinants: rep
                .determinant_checks
                .iter()
                .map(|c| DeterminantCheck {
                    factor: c.index + 1,
                    expected: c.expected.to_string(),
                    found: c.found.as_ref().map(Poly::to_string),
                    ok: c.ok(),
                })
                .collect(),
            failure: rep.first_failure(),
        }
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn set(items: &[String]) -> String {
    format!("{{{}}}", items.join(", "))
}

fn write_matrix(out: &mut String, name: &str, m: &Matrix) {
    let _ = writeln!(out, "{name} =");
    for row in m {
        let _ = writeln!(out, "  [{}]", row.join(", "));
    }
}

pub fn render_analysis(out: &mut String, a: &Analysis) {
    let l = a.rows;
    let _ = writeln!(out, "F is {}x{}, d = {}", a.rows, a.cols, a.divisor);
    let _ = writeln!(out, "d_{l}(F) = {}", a.d_l);
    let _ = writeln!(out, "d_{}(F) = {}", l - 1, a.d_l_minus_1);
    let _ = writeln!(out, "eta = {}, gamma = {}", a.eta, a.gamma);
    let _ = writeln!(out, "d divides d_{l}(F): {}", yes_no(a.divides));
    let _ = writeln!(out, "gcd(d, d_{}(F)) = {}", l - 1, a.gcd_with_submaximal);
    let c = &a.certificates;
    let _ = writeln!(out, "GB<d, d_{}(F)> = {}", l - 1, set(&c.divisor_and_submaximal_gcd));
    match &c.s1 {
        Some(b) => {
            let _ = writeln!(out, "GB<d, e> = {}", set(b));
        }
        None => {
            let _ = writeln!(out, "GB<d, e> = (undefined, d does not divide d_{l}(F))");
        }
    }
    let _ = writeln!(out, "GB<d, c> = {}", set(&c.s2));
    let _ = writeln!(out, "GB<d, h> = {}", set(&c.s3));
    let k = &a.classes;
    let _ = writeln!(
        out,
        "S: {}  S1: {}  S2: {}  S3: {}",
        yes_no(k.s),
        yes_no(k.s1),
        yes_no(k.s2),
        yes_no(k.s3)
    );
}

/// Human-readable report for stdout.
pub fn render_text(r: &RunReport) -> String {
    let mut out = String::new();
    if let Some(a) = &r.analysis {
        render_analysis(&mut out, a);
    }
    if let Some(f) = &r.factorization {
        for (i, s) in f.steps.iter().enumerate() {
            let _ = writeln!(out, "step {}: d = {}", i + 1, s.divisor);
            let _ = writeln!(out, "  w = [{}]", s.w.join(", "));
            let _ = writeln!(out, "  q1 = [{}]", s.q1.join(", "));
            write_matrix(&mut out, "  U", &s.u);
        }
        write_matrix(&mut out, "G", &f.g0);
        let _ = writeln!(out, "det(G) = {}", f.det_g0);
        write_matrix(&mut out, "residual", &f.residual);
        for name in &f.outputs {
            let _ = writeln!(out, "wrote {name}");
        }
    }
    if let Some(v) = &r.verification {
        let _ = writeln!(
            out,
            "verified {} factor(s): {}",
            v.factors,
            if v.passed { "pass" } else { "FAIL" }
        );
    }
    out
}

/// Diagnostic for stderr when the run did not succeed.
pub fn render_diagnostic(r: &RunReport) -> Option<String> {
    if r.exit_code == 0 {
        return None;
    }
    let mut out = format!("polymat {}: {}\n", r.command, r.error.as_deref().unwrap_or(&r.status));
    if let Some(a) = &r.analysis {
        render_analysis(&mut out, a);
    }
    if let Some(v) = &r.verification {
        if let Some(f) = &v.failure {
            let _ = writeln!(out, "{f}");
        }
    }
    Some(out)
}
