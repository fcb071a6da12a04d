use crate::matrix::PolyMatrix;
use crate::poly::Poly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntryMismatch {
    pub row: usize,
    pub col: usize,
    pub expected: Poly,
    pub found: Poly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeterminantCheck {
    pub index: usize,
    pub expected: Poly,
    pub found: Option<Poly>,
}

impl DeterminantCheck {
    pub fn ok(&self) -> bool {
        self.found.as_ref() == Some(&self.expected)
    }
}

/// Outcome of checking `F = G_1 * ... * G_k * F_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub dimension_error: Option<String>,
    pub mismatches: Vec<EntryMismatch>,
    pub determinant_checks: Vec<DeterminantCheck>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.dimension_error.is_none()
            && self.mismatches.is_empty()
            && self.determinant_checks.iter().all(DeterminantCheck::ok)
    }

    /// First failure in human-readable form.
    pub fn first_failure(&self) -> Option<String> {
        if let Some(e) = &self.dimension_error {
            return Some(e.clone());
        }
        if let Some(m) = self.mismatches.first() {
            return Some(format!(
                "entry ({}, {}) of the product is `{}`, expected `{}`",
                m.row + 1,
                m.col + 1,
                m.found,
                m.expected
            ));
        }
        self.determinant_checks
            .iter()
            .find(|c| !c.ok())
            .map(|c| match &c.found {
                Some(found) => format!("det of factor {} is `{found}`, expected `{}`", c.index + 1, c.expected),
                None => format!("factor {} is not square", c.index + 1),
            })
    }
}

/// Multiplies the factors and the residual and compares with `F` entrywise.
/// `expected_dets` is either empty or holds the expected `det(G_k)`, if
/// any, for each factor.
pub fn verify(
    f: &PolyMatrix,
    factors: &[PolyMatrix],
    residual: &PolyMatrix,
    expected_dets: &[Option<Poly>],
) -> VerifyReport {
    let mut report = VerifyReport {
        dimension_error: None,
        mismatches: Vec::new(),
        determinant_checks: Vec::new(),
    };
    if !expected_dets.is_empty() && expected_dets.len() != factors.len() {
        report.dimension_error = Some(format!(
            "{} determinants given for {} factors",
            expected_dets.len(),
            factors.len()
        ));
        return report;
    }
    let product = factors
        .iter()
        .chain(std::iter::once(residual))
        .try_fold(PolyMatrix::identity(f.ring(), f.rows()), |acc, g| acc.mul(g));
    match product {
        Err(e) => report.dimension_error = Some(e.to_string()),
        Ok(p) if p.rows() != f.rows() || p.cols() != f.cols() => {
            report.dimension_error = Some(format!(
                "product is {}x{}, F is {}x{}",
                p.rows(),
                p.cols(),
                f.rows(),
                f.cols()
            ));
        }
        Ok(p) => {
            for i in 0..f.rows() {
                for j in 0..f.cols() {
                    if p.get(i, j) != f.get(i, j) {
                        report.mismatches.push(EntryMismatch {
                            row: i,
                            col: j,
                            expected: f.get(i, j).clone(),
                            found: p.get(i, j).clone(),
                        });
                    }
                }
            }
        }
    }
    for (index, (g, d)) in factors.iter().zip(expected_dets).enumerate() {
        let Some(d) = d else { continue };
        report.determinant_checks.push(DeterminantCheck {
            index,
            expected: d.clone(),
            found: g.determinant().ok(),
        });
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::{example1_divisor_poly, example1_f, example1_f1, example1_g1};

    #[test]
    fn example_factorization_verifies() {
        let rep = verify(
            &example1_f(),
            &[example1_g1()],
            &example1_f1(),
            &[Some(example1_divisor_poly())],
        );
        assert!(rep.passed(), "{:?}", rep.first_failure());
    }

    #[test]
    fn identity_factorization() {
        let f = example1_f();
        let i = PolyMatrix::identity(f.ring(), 3);
        let rep = verify(&f, &[i], &f, &[Some(Poly::one(f.ring()))]);
        assert!(rep.passed());
    }

    #[test]
    fn corrupted_entry_is_located() {
        let mut f1 = example1_f1();
        let bumped = f1.get(1, 2) + &Poly::one(f1.ring());
        f1.set(1, 2, bumped);
        let rep = verify(&example1_f(), &[example1_g1()], &f1, &[]);
        assert!(!rep.passed());
        assert_eq!(rep.mismatches.len(), 1);
        assert_eq!((rep.mismatches[0].row, rep.mismatches[0].col), (1, 2));
        assert!(rep.first_failure().unwrap().starts_with("entry (2, 3)"));
    }

    #[test]
    fn wrong_determinant_and_shapes() {
        let wrong = example1_divisor_poly().scale(&crate::poly::rational(2, 1));
        let rep = verify(&example1_f(), &[example1_g1()], &example1_f1(), &[Some(wrong)]);
        assert!(rep.mismatches.is_empty() && !rep.passed());
        let short = example1_f1().submatrix(&[0, 1], &[0, 1, 2]);
        let rep = verify(&example1_f(), &[example1_g1()], &short, &[]);
        assert!(rep.dimension_error.is_some());
    }
}
