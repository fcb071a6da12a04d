use crate::error::{Error, Result};
use crate::matrix::PolyMatrix;
use crate::poly::Poly;

use super::{
    classify, classify_poly, complete, substituted, zlp_vector, ClassReport, Completion, DivisorProduct, FactorOptions,
    LinearDivisor, ZlpVector,
};

/// One step `F = G1 * F1` with `det(G1) = d`.
#[derive(Clone, Debug)]
pub struct FactorStep {
    pub divisor: LinearDivisor,
    pub input: PolyMatrix,
    /// Absent when the class check was skipped.
    pub class_report: Option<ClassReport>,
    pub f_hat: PolyMatrix,
    pub zlp: ZlpVector,
    pub completion: Completion,
    /// `diag(d, 1, ..., 1)`.
    pub d_matrix: PolyMatrix,
    pub g: PolyMatrix,
    pub residual: PolyMatrix,
}

/// `F = G_1 * ... * G_k * F_k` for a divisor product.
#[derive(Clone, Debug)]
pub struct FactorizationResult {
    pub input: PolyMatrix,
    pub divisor: DivisorProduct,
    /// Hypotheses of the chain, evaluated for the expanded product.
    pub class_report: ClassReport,
    pub steps: Vec<FactorStep>,
    pub residual: PolyMatrix,
}

impl FactorizationResult {
    pub fn factors(&self) -> Vec<&PolyMatrix> {
        self.steps.iter().map(|s| &s.g).collect()
    }

    /// `G_0 = G_1 * ... * G_k`.
    pub fn combined(&self) -> Result<PolyMatrix> {
        let l = self.input.rows();
        self.steps
            .iter()
            .try_fold(PolyMatrix::identity(self.input.ring(), l), |acc, s| acc.mul(&s.g))
    }
}

/// Factors out a single linear divisor.
///
/// Unless `skip_class_check` is set, `(F, d)` must lie in `S3`; otherwise a
/// [`Error::Hypothesis`] names the failing test. Outputs are always checked
/// for `F = G1 * F1` and `det(G1) = d`.
pub fn factor_once(f: &PolyMatrix, d: &LinearDivisor, opts: &FactorOptions) -> Result<FactorStep> {
    let (l, m) = (f.rows(), f.cols());
    if l > m {
        return Err(Error::MoreRowsThanColumns { rows: l, cols: m });
    }
    if l == 0 {
        return Err(Error::Dimension("matrix has no rows".into()));
    }
    let class_report = if opts.skip_class_check {
        None
    } else {
        let rep = classify(f, d)?;
        if let Some(reason) = rep.s3_failure() {
            return Err(Error::Hypothesis(reason));
        }
        Some(rep)
    };
    let ring = f.ring();
    let dp = d.poly();

    let f_hat = substituted(f, d)?;
    let zlp = zlp_vector(&f_hat)?;
    let completion = complete(&zlp, opts.max_subset_search)?;

    let uf = completion.u.mul(f)?;
    let mut rows = uf.to_rows();
    rows[0] = rows[0]
        .iter()
        .map(|e| e.exact_divide(&dp))
        .collect::<Result<_>>()
        .map_err(|_| Error::Internal("first row of U*F is not divisible by d".into()))?;
    let residual = PolyMatrix::new(ring, rows)?;

    let mut diag = vec![Poly::one(ring); l];
    diag[0] = dp.clone();
    let d_matrix = PolyMatrix::diag(ring, &diag);
    let g = completion.v.mul(&d_matrix)?;

    if g.mul(&residual)? != *f {
        return Err(Error::Internal("G1 * F1 does not reproduce F".into()));
    }
    if g.determinant()? != dp {
        return Err(Error::Internal("det(G1) differs from d".into()));
    }
    Ok(FactorStep {
        divisor: d.clone(),
        input: f.clone(),
        class_report,
        f_hat,
        zlp,
        completion,
        d_matrix,
        g,
        residual,
    })
}

/// Factors out `d0 = ∏ (z_i - f)^q` one linear factor at a time.
///
/// The chain hypotheses are `d0 | d_l(F)`, `gcd(d0, d_{l-1}(F)) = 1` and
/// `⟨d0, h_1, ..., h_γ⟩ = R`; they are checked once for `F`, after which
/// the intermediate class checks are skipped.
pub fn factor_chain(f: &PolyMatrix, d0: &DivisorProduct, opts: &FactorOptions) -> Result<FactorizationResult> {
    let (l, m) = (f.rows(), f.cols());
    if l > m {
        return Err(Error::MoreRowsThanColumns { rows: l, cols: m });
    }
    let expanded = d0.expand();
    let class_report = classify_poly(f, &expanded)?;
    if let Some(reason) = class_report.s3_failure() {
        return Err(Error::Hypothesis(format!("divisor product {d0}: {reason}")));
    }
    let step_opts = FactorOptions {
        skip_class_check: true,
        ..opts.clone()
    };
    let mut steps = Vec::new();
    let mut current = f.clone();
    for d in d0.unrolled() {
        let step = factor_once(&current, &d, &step_opts)?;
        current = step.residual.clone();
        steps.push(step);
    }
    let result = FactorizationResult {
        input: f.clone(),
        divisor: d0.clone(),
        class_report,
        steps,
        residual: current,
    };
    let g0 = result.combined()?;
    if g0.mul(&result.residual)? != *f {
        return Err(Error::Internal("G0 * F_k does not reproduce F".into()));
    }
    if g0.determinant()? != expanded {
        return Err(Error::Internal("det(G0) differs from d0".into()));
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::{example1_f, example1_f1, example1_g1, example1_ring, example1_u, example1_v};

    fn p(s: &str) -> Poly {
        Poly::parse(s, &example1_ring()).unwrap()
    }

    fn div(var: &str, rhs: &str) -> LinearDivisor {
        LinearDivisor::parse(var, rhs, &example1_ring()).unwrap()
    }

    #[test]
    fn example_single_step() {
        let step = factor_once(&example1_f(), &div("z1", "z2"), &FactorOptions::default()).unwrap();
        assert_eq!(step.zlp.components, vec![p("1"), p("0"), p("z3 + 1")]);
        assert_eq!(step.completion.v, example1_v());
        assert_eq!(step.completion.u, example1_u());
        assert_eq!(step.g, example1_g1());
        assert_eq!(step.residual, example1_f1());
        assert!(step.class_report.unwrap().in_s3);
    }

    #[test]
    fn diagonal_input_gives_identity_residual() {
        let r = example1_ring();
        let f = PolyMatrix::diag(&r, &[p("z1 - z2"), p("1"), p("1")]);
        let step = factor_once(&f, &div("z1", "z2"), &FactorOptions::default()).unwrap();
        assert_eq!(step.g, f);
        assert!(step.residual.is_identity());
    }

    #[test]
    fn single_factor_chain_matches_single_step() {
        let d = div("z1", "z2");
        let res = factor_chain(
            &example1_f(),
            &DivisorProduct::single(d.clone()),
            &FactorOptions::default(),
        )
        .unwrap();
        let step = factor_once(&example1_f(), &d, &FactorOptions::default()).unwrap();
        assert_eq!(res.steps.len(), 1);
        assert_eq!((&res.steps[0].g, &res.residual), (&step.g, &step.residual));
    }

    #[test]
    fn chain_on_diagonal_product() {
        let r = example1_ring();
        let d0 = DivisorProduct::new(vec![(div("z1", "z2"), 1), (div("z1", "z3"), 1)]).unwrap();
        let f = PolyMatrix::diag(&r, &[d0.expand(), p("1")]);
        let res = factor_chain(&f, &d0, &FactorOptions::default()).unwrap();
        assert_eq!(res.steps.len(), 2);
        assert_eq!(res.combined().unwrap().determinant().unwrap(), d0.expand());
        assert!(res.residual.is_identity());
    }

    #[test]
    fn example_with_non_dividing_divisor() {
        let err = factor_once(&example1_f(), &div("z1", "z3"), &FactorOptions::default()).unwrap_err();
        assert!(err.is_hypothesis_failure());
        assert!(err.to_string().contains("does not divide"));
    }

    #[test]
    fn skipped_check_still_verifies() {
        let opts = FactorOptions {
            skip_class_check: true,
            ..Default::default()
        };
        let step = factor_once(&example1_f(), &div("z1", "z2"), &opts).unwrap();
        assert!(step.class_report.is_none());
        assert_eq!(step.residual, example1_f1());
        // d does not divide det(F), so F_hat keeps full rank
        let err = factor_once(&example1_f(), &div("z1", "z3"), &opts).unwrap_err();
        assert_eq!(err, Error::RankMismatch { expected: 2, found: 3 });
    }

    #[test]
    fn chain_with_repeated_factor() {
        let r = example1_ring();
        let f = PolyMatrix::parse(
            &r,
            &[
                vec!["(z1 - z2)^2", "z3*(z1 - z2)^2", "z2*(z1 - z2)^2"],
                vec!["0", "1", "z1"],
            ],
        )
        .unwrap();
        let d = div("z1", "z2");
        let d0 = DivisorProduct::new(vec![(d, 2)]).unwrap();
        let res = factor_chain(&f, &d0, &FactorOptions::default()).unwrap();
        assert_eq!(res.steps.len(), 2);
        assert_eq!(res.combined().unwrap().determinant().unwrap(), p("(z1 - z2)^2"));
        assert_eq!(res.combined().unwrap().mul(&res.residual).unwrap(), f);
    }

    #[test]
    fn chain_over_two_distinct_factors() {
        let r = example1_ring();
        let f = PolyMatrix::parse(&r, &[vec!["(z1 - z2)*(z3 - 1)", "z2"], vec!["0", "1"]]).unwrap();
        let d0 = DivisorProduct::new(vec![(div("z1", "z2"), 1), (div("z3", "1"), 1)]).unwrap();
        let res = factor_chain(&f, &d0, &FactorOptions::default()).unwrap();
        assert_eq!(res.factors().len(), 2);
        assert_eq!(res.steps[0].g.determinant().unwrap(), p("z1 - z2"));
        assert_eq!(res.steps[1].g.determinant().unwrap(), p("z3 - 1"));
    }

    #[test]
    fn chain_rejects_shared_factor_with_submaximal_gcd() {
        let r = example1_ring();
        let f = PolyMatrix::diag(&r, &[p("z1"), p("z1")]);
        let d0 = DivisorProduct::single(div("z1", "0"));
        let err = factor_chain(&f, &d0, &FactorOptions::default()).unwrap_err();
        assert!(err.is_hypothesis_failure());
    }
}
