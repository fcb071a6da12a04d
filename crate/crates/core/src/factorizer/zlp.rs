use crate::error::{Error, Result};
use crate::groebner::{cmp_pot_leading, is_unit_ideal, pot_leading, syzygy, GroebnerBasis, Side};
use crate::matrix::PolyMatrix;
use crate::poly::{gcd_many, Poly};

use super::LinearDivisor;

/// `F` with `z_var` replaced by the divisor's right-hand side.
pub fn substituted(f: &PolyMatrix, d: &LinearDivisor) -> Result<PolyMatrix> {
    f.try_map(|e| e.substitute(d.var(), d.rhs()))
}

/// A zero left prime vector `w` with `w * F̂ = 0`.
#[derive(Clone, Debug)]
pub struct ZlpVector {
    /// The chosen syzygy generator before removing its content.
    pub raw: Vec<Poly>,
    pub content: Poly,
    /// `raw / content`, scaled so its POT-leading coefficient is 1.
    pub components: Vec<Poly>,
    /// Reduced basis of the ideal of the components, equal to `{1}`.
    pub unit_certificate: GroebnerBasis,
}

impl ZlpVector {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

/// Computes the primitive left annihilator of a rank `l - 1` matrix.
///
/// The left syzygy module of `F̂` has rank one, so any nonzero generator is
/// a polynomial multiple of the primitive one; the generator with the
/// smallest leading term is taken and its content divided out.
pub fn zlp_vector(f_hat: &PolyMatrix) -> Result<ZlpVector> {
    let l = f_hat.rows();
    let ring = f_hat.ring();
    let rank = f_hat.rank();
    if l == 0 || rank + 1 != l {
        return Err(Error::RankMismatch {
            expected: l.saturating_sub(1),
            found: rank,
        });
    }
    let syz = syzygy(f_hat, Side::Left)?;
    let raw = syz
        .generators
        .iter()
        .filter(|g| g.iter().any(|p| !p.is_zero()))
        .min_by(|a, b| cmp_pot_leading(ring.order(), a, b))
        .cloned()
        .ok_or_else(|| Error::Internal("rank-deficient matrix has no left syzygy".into()))?;
    let content = gcd_many(ring, &raw)?;
    let mut components: Vec<Poly> = raw.iter().map(|p| p.exact_divide(&content)).collect::<Result<_>>()?;
    let (pos, _) = pot_leading(&components).expect("nonzero vector");
    let lc = components[pos].leading_coeff().expect("nonzero").recip();
    components = components.iter().map(|p| p.scale(&lc)).collect();

    if !f_hat.left_apply(&components)?.iter().all(Poly::is_zero) {
        return Err(Error::Internal("w * F_hat is not zero".into()));
    }
    let (unit, unit_certificate) = is_unit_ideal(ring, &components)?;
    if !unit {
        return Err(Error::NotZlp {
            basis: unit_certificate.to_string(),
        });
    }
    Ok(ZlpVector {
        raw,
        content,
        components,
        unit_certificate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::{example1_f, example1_f_hat, example1_ring};

    fn p(s: &str) -> Poly {
        Poly::parse(s, &example1_ring()).unwrap()
    }

    #[test]
    fn example_substitution_and_vector() {
        let d = LinearDivisor::parse("z1", "z2", &example1_ring()).unwrap();
        let fh = substituted(&example1_f(), &d).unwrap();
        assert_eq!(fh, example1_f_hat());
        assert_eq!(fh.rank(), 2);
        let w = zlp_vector(&fh).unwrap();
        assert_eq!(w.components, vec![p("1"), p("0"), p("z3 + 1")]);
        assert!(w.unit_certificate.is_unit());
    }

    #[test]
    fn annihilator_must_be_unimodular() {
        let r = example1_ring();
        // the annihilator (z2, -z1) vanishes at the origin
        let f = PolyMatrix::parse(&r, &[vec!["z1*z3", "z1"], vec!["z2*z3", "z2"]]).unwrap();
        assert_eq!(f.rank(), 1);
        let err = zlp_vector(&f).unwrap_err();
        assert!(matches!(err, Error::NotZlp { .. }));
        let g = PolyMatrix::parse(&r, &[vec!["z3", "1"], vec!["z1*z3 + z3", "z1 + 1"]]).unwrap();
        let w = zlp_vector(&g).unwrap();
        assert_eq!(w.components, vec![p("z1 + 1"), p("-1")]);
        assert!(w.content.is_one());
    }

    #[test]
    fn coordinate_projection() {
        let r = example1_ring();
        let f = PolyMatrix::parse(&r, &[vec!["0", "0"], vec!["1", "0"], vec!["0", "1"]]).unwrap();
        let w = zlp_vector(&f).unwrap();
        assert_eq!(w.components, vec![p("1"), p("0"), p("0")]);
    }

    #[test]
    fn full_rank_is_rejected() {
        let r = example1_ring();
        let i = PolyMatrix::identity(&r, 2);
        assert_eq!(
            zlp_vector(&i).unwrap_err(),
            Error::RankMismatch { expected: 1, found: 2 }
        );
    }
}
