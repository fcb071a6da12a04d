use crate::error::{Error, Result};
use crate::groebner::{is_unit_ideal, GroebnerBasis};
use crate::matrix::{MinorReport, PolyMatrix};
use crate::poly::Poly;

use super::LinearDivisor;

/// Membership of `(F, d)` in the nested hypothesis classes, with the
/// certificate that decided each test.
///
/// * `S`:  `d | d_l(F)` and `gcd(d, d_{l-1}(F)) = 1`
/// * `S1`: `d | d_l(F)` and `⟨d, e_1, ..., e_η⟩` is the unit ideal, `a_i = d * e_i`
/// * `S2`: `d | d_l(F)` and `⟨d, c_1, ..., c_γ⟩` is the unit ideal
/// * `S3`: `F ∈ S` and `⟨d, h_1, ..., h_γ⟩` is the unit ideal
#[derive(Clone, Debug)]
pub struct ClassReport {
    pub divisor: Poly,
    /// The `l x l` minors `a_i`, their GCD `d_l(F)` and reduced minors `b_i`.
    pub maximal: MinorReport,
    /// The `(l-1) x (l-1)` minors `c_j`, `d_{l-1}(F)` and reduced minors `h_j`.
    pub submaximal: MinorReport,
    pub divides: bool,
    /// `e_i = a_i / d`, present when `d | d_l(F)`.
    pub quotients: Vec<Poly>,
    pub gcd_with_submaximal: Poly,
    /// Reduced basis of `⟨d, d_{l-1}(F)⟩`.
    pub gb_divisor_submaximal: GroebnerBasis,
    pub gb_s1: Option<GroebnerBasis>,
    pub gb_s2: GroebnerBasis,
    pub gb_s3: GroebnerBasis,
    pub in_s: bool,
    pub in_s1: bool,
    pub in_s2: bool,
    pub in_s3: bool,
}

impl ClassReport {
    pub fn d_l(&self) -> &Poly {
        &self.maximal.gcd
    }

    pub fn d_l_minus_1(&self) -> &Poly {
        &self.submaximal.gcd
    }

    /// Number of maximal minors, `C(m, l)`.
    pub fn eta(&self) -> usize {
        self.maximal.len()
    }

    /// Number of submaximal minors, `C(l, l-1) * C(m, l-1)`.
    pub fn gamma(&self) -> usize {
        self.submaximal.len()
    }

    /// Short reason why `F` is outside `S3`, if it is.
    pub fn s3_failure(&self) -> Option<String> {
        if !self.divides {
            Some(format!("`{}` does not divide d_l(F) = `{}`", self.divisor, self.d_l()))
        } else if !self.in_s {
            Some(format!("gcd(d, d_(l-1)(F)) = `{}` is not 1", self.gcd_with_submaximal))
        } else if !self.in_s3 {
            Some(format!(
                "d and the reduced (l-1)-minors do not generate the unit ideal; reduced basis {}",
                self.gb_s3
            ))
        } else {
            None
        }
    }
}

/// Runs the class tests for a linear divisor.
pub fn classify(f: &PolyMatrix, d: &LinearDivisor) -> Result<ClassReport> {
    classify_poly(f, &d.poly())
}

/// Class tests for an arbitrary divisor polynomial, used for divisor
/// products where the same conditions are the chain's hypotheses.
pub fn classify_poly(f: &PolyMatrix, d: &Poly) -> Result<ClassReport> {
    let (l, m) = (f.rows(), f.cols());
    if l > m {
        return Err(Error::MoreRowsThanColumns { rows: l, cols: m });
    }
    if d.is_zero() || d.is_constant() {
        return Err(Error::InvalidDivisor(format!("`{d}` is not a proper divisor")));
    }
    let ring = f.ring();
    let maximal = f.minors(l)?;
    if maximal.gcd.is_zero() {
        return Err(Error::NotFullRowRank);
    }
    let submaximal = f.minors_or_unit(l - 1)?;

    let divides = d.divides(&maximal.gcd);
    let quotients: Vec<Poly> = if divides {
        maximal.values().map(|a| a.exact_divide(d)).collect::<Result<_>>()?
    } else {
        Vec::new()
    };

    let gcd_with_submaximal = d.gcd(&submaximal.gcd)?;
    let (_, gb_divisor_submaximal) = is_unit_ideal(ring, &[d.clone(), submaximal.gcd.clone()])?;

    let with_d = |rest: &mut dyn Iterator<Item = &Poly>| {
        let mut gens = vec![d.clone()];
        gens.extend(rest.cloned());
        is_unit_ideal(ring, &gens)
    };
    let gb_s1 = if divides {
        Some(with_d(&mut quotients.iter())?)
    } else {
        None
    };
    let (unit_s2, gb_s2) = with_d(&mut submaximal.values())?;
    let (unit_s3, gb_s3) = with_d(&mut submaximal.reduced.iter())?;

    let in_s = divides && gcd_with_submaximal.is_one();
    let in_s1 = divides && gb_s1.as_ref().is_some_and(|(u, _)| *u);
    let in_s2 = divides && unit_s2;
    let in_s3 = in_s && unit_s3;

    Ok(ClassReport {
        divisor: d.clone(),
        maximal,
        submaximal,
        divides,
        quotients,
        gcd_with_submaximal,
        gb_divisor_submaximal,
        gb_s1: gb_s1.map(|(_, gb)| gb),
        gb_s2,
        gb_s3,
        in_s,
        in_s1,
        in_s2,
        in_s3,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::{example1_f, example1_ring};
    use crate::poly::Ring;

    fn ring() -> Ring {
        example1_ring()
    }

    fn p(s: &str) -> Poly {
        Poly::parse(s, &ring()).unwrap()
    }

    #[test]
    fn example_is_in_s3_only() {
        let d = LinearDivisor::parse("z1", "z2", &ring()).unwrap();
        let rep = classify(&example1_f(), &d).unwrap();
        assert_eq!(rep.d_l(), &p("(z1 - z2)*(z2 + z3)^2"));
        assert_eq!(rep.d_l_minus_1(), &p("z2 + z3"));
        assert_eq!((rep.eta(), rep.gamma()), (1, 9));
        assert_eq!(rep.quotients, vec![p("(z2 + z3)^2")]);
        assert_eq!(
            rep.gb_s1.as_ref().unwrap().elements(),
            &[p("z1 - z2"), p("(z2 + z3)^2")]
        );
        assert_eq!(rep.gb_divisor_submaximal.elements(), &[p("z1 + z3"), p("z2 + z3")]);
        assert!(rep.gb_s3.is_unit());
        assert!(rep.in_s && rep.in_s3);
        assert!(!rep.in_s1 && !rep.in_s2);
        assert!(rep.s3_failure().is_none());
    }

    #[test]
    fn diagonal_divisor_is_in_s1() {
        let r = ring();
        let f = PolyMatrix::diag(&r, &[p("z1 - z2"), p("1"), p("1")]);
        let d = LinearDivisor::parse("z1", "z2", &r).unwrap();
        let rep = classify(&f, &d).unwrap();
        assert_eq!(rep.quotients, vec![p("1")]);
        assert!(rep.in_s1 && rep.in_s2 && rep.in_s3 && rep.in_s);
    }

    #[test]
    fn scalar_multiple_of_identity_fails_s() {
        let r = ring();
        let f = PolyMatrix::diag(&r, &[p("z1"), p("z1")]);
        let d = LinearDivisor::parse("z1", "0", &r).unwrap();
        let rep = classify(&f, &d).unwrap();
        assert!(rep.divides);
        assert_eq!(rep.d_l_minus_1(), &p("z1"));
        assert_eq!(rep.gcd_with_submaximal, p("z1"));
        assert!(!rep.in_s && !rep.in_s1 && !rep.in_s2 && !rep.in_s3);
    }

    #[test]
    fn non_dividing_divisor_reports_all_false() {
        let d = LinearDivisor::parse("z1", "z3", &ring()).unwrap();
        let rep = classify(&example1_f(), &d).unwrap();
        assert!(!rep.divides);
        assert!(rep.quotients.is_empty() && rep.gb_s1.is_none());
        assert!(!rep.in_s && !rep.in_s1 && !rep.in_s2 && !rep.in_s3);
        assert!(rep.s3_failure().unwrap().contains("does not divide"));
    }

    #[test]
    fn precondition_errors() {
        let r = ring();
        let d = LinearDivisor::parse("z1", "z2", &r).unwrap();
        let tall = PolyMatrix::zeros(&r, 3, 2);
        assert_eq!(
            classify(&tall, &d).unwrap_err(),
            Error::MoreRowsThanColumns { rows: 3, cols: 2 }
        );
        let deficient = PolyMatrix::parse(&r, &[vec!["z1", "z2"], vec!["z1", "z2"]]).unwrap();
        assert_eq!(classify(&deficient, &d).unwrap_err(), Error::NotFullRowRank);
    }

    #[test]
    fn single_row_uses_unit_submaximal_minor() {
        let r = ring();
        let f = PolyMatrix::parse(&r, &[vec!["z1"]]).unwrap();
        let d = LinearDivisor::parse("z1", "0", &r).unwrap();
        let rep = classify(&f, &d).unwrap();
        assert_eq!(rep.d_l(), &p("z1"));
        assert!(rep.d_l_minus_1().is_one());
        assert_eq!(rep.gamma(), 1);
        assert!(rep.in_s && rep.in_s1 && rep.in_s2 && rep.in_s3);
    }
}
