//! Exact multivariate polynomials over the rationals.
//!
//! A [`Poly`] keeps its terms sorted in decreasing order under the ring's
//! monomial order and never stores a zero coefficient, so structural
//! equality coincides with equality of polynomials.

mod gcd;
mod order;
mod parse;

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use gcd::{gcd_many, lcm};
pub use order::{Monomial, MonomialOrder, OrderKind};

pub type Rational = BigRational;

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// The ring `Q[z1, ..., zn]` together with its monomial order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    names: Vec<String>,
    order: MonomialOrder,
}

pub type Ring = Arc<PolyRing>;

fn valid_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic()) && chars.all(|c| c.is_ascii_alphanumeric())
}

impl PolyRing {
    pub fn new<S: AsRef<str>>(names: &[S], kind: OrderKind) -> Result<Ring> {
        Self::with_order(names, MonomialOrder::new(kind, names.len()))
    }

    pub fn lex<S: AsRef<str>>(names: &[S]) -> Result<Ring> {
        Self::new(names, OrderKind::Lex)
    }

    pub fn with_order<S: AsRef<str>>(names: &[S], order: MonomialOrder) -> Result<Ring> {
        if names.is_empty() {
            return Err(Error::InvalidRing("a ring needs at least one variable".into()));
        }
        if order.nvars() != names.len() {
            return Err(Error::InvalidRing(format!(
                "order covers {} variables, ring has {}",
                order.nvars(),
                names.len()
            )));
        }
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            if !valid_identifier(n) {
                return Err(Error::InvalidRing(format!("`{n}` is not a valid variable name")));
            }
            if names[..i].contains(n) {
                return Err(Error::InvalidRing(format!("duplicate variable `{n}`")));
            }
        }
        Ok(Arc::new(PolyRing { names, order }))
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, var: usize) -> &str {
        &self.names[var]
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }
}

pub(crate) fn same_ring(a: &Ring, b: &Ring) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

#[derive(Clone)]
pub struct Poly {
    ring: Ring,
    terms: Vec<(Monomial, Rational)>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl Poly {
    pub fn zero(ring: &Ring) -> Self {
        Poly {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn constant(ring: &Ring, c: Rational) -> Self {
        Self::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn from_int(ring: &Ring, c: i64) -> Self {
        Self::constant(ring, Rational::from_integer(c.into()))
    }

    pub fn var(ring: &Ring, index: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.nvars(), index, 1), Rational::one())
    }

    pub fn monomial(ring: &Ring, mono: Monomial, c: Rational) -> Self {
        assert_eq!(mono.nvars(), ring.nvars(), "monomial arity");
        let terms = if c.is_zero() { Vec::new() } else { vec![(mono, c)] };
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates and
    /// dropping zeros.
    pub fn from_terms<I>(ring: &Ring, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.nvars(), ring.nvars(), "monomial arity");
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        Self::from_map(ring, acc)
    }

    fn from_map(ring: &Ring, acc: HashMap<Monomial, Rational>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let order = ring.order();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    /// Terms in decreasing monomial order.
    pub(crate) fn from_sorted_terms(ring: &Ring, terms: Vec<(Monomial, Rational)>) -> Self {
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// The value of a constant polynomial (zero included).
    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.0[var]).max().unwrap_or(0)
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.0[var] > 0)
    }

    fn check_ring(&self, other: &Poly) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// Multiply by `c * mono`.
    pub fn mul_term(&self, mono: &Monomial, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.mul(mono), a * c)).collect(),
        }
    }

    /// Scaled so the leading coefficient is 1; zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    /// `self + c * other`, merging the two sorted term lists.
    fn axpy(&self, c: &Rational, other: &Poly) -> Poly {
        let order = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match order.cmp(ma, mb) {
                std::cmp::Ordering::Greater => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((mb.clone(), cb * c));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let s = ca + cb * c;
                    if !s.is_zero() {
                        out.push((ma.clone(), s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().map(|(m, b)| (m.clone(), b * c)));
        Poly {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.check_ring(other)?;
        Ok(self.axpy(&Rational::one(), other))
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_ring(other)?;
        Ok(self.axpy(&-Rational::one(), other))
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(&self.ring));
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return Ok(other.mul_term(m, c));
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return Ok(self.mul_term(m, c));
        }
        let mut acc: HashMap<Monomial, Rational> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                *acc.entry(ma.mul(mb)).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        Ok(Self::from_map(&self.ring, acc))
    }

    pub fn pow(&self, mut exp: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.ring);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Image of `self` under `z_var -> value`. `value` must not involve `z_var`.
    pub fn substitute(&self, var: usize, value: &Poly) -> Result<Poly> {
        self.check_ring(value)?;
        if value.involves(var) {
            return Err(Error::SubstitutionInvolvesVariable(self.ring.name(var).to_string()));
        }
        let maxdeg = self.degree_in(var) as usize;
        // coefficient of z_var^k, as a polynomial free of z_var
        let mut slices: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); maxdeg + 1];
        for (m, c) in &self.terms {
            let k = m.0[var] as usize;
            let mut m2 = m.clone();
            m2.0[var] = 0;
            slices[k].push((m2, c.clone()));
        }
        let mut result = Poly::zero(&self.ring);
        let mut power = Poly::one(&self.ring);
        for (k, slice) in slices.into_iter().enumerate() {
            if k > 0 {
                power = &power * value;
            }
            if slice.is_empty() {
                continue;
            }
            // removing a variable preserves the relative order of the terms
            let coeff = Poly::from_sorted_terms(&self.ring, slice);
            result = &result + &(&coeff * &power);
        }
        Ok(result)
    }

    /// Division with remainder by a single polynomial, using the leading
    /// term of `divisor` under the ring order.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.check_ring(divisor)?;
        let (lm, lc) = divisor.leading_term().ok_or(Error::DivisionByZero)?;
        let (lm, lc_inv) = (lm.clone(), lc.recip());
        let mut rest = self.clone();
        let mut quot = Vec::new();
        let mut rem = Vec::new();
        while let Some((m, c)) = rest.terms.first().cloned() {
            if lm.divides(&m) {
                let qm = m.div(&lm);
                let qc = &c * &lc_inv;
                rest = rest.axpy(&-qc.clone(), &divisor.mul_term(&qm, &Rational::one()));
                quot.push((qm, qc));
            } else {
                rem.push(rest.terms.remove(0));
            }
        }
        Ok((
            Poly::from_sorted_terms(&self.ring, quot),
            Poly::from_sorted_terms(&self.ring, rem),
        ))
    }

    /// The exact quotient `self / divisor`.
    pub fn exact_divide(&self, divisor: &Poly) -> Result<Poly> {
        self.check_ring(divisor)?;
        let (lm, lc) = divisor.leading_term().ok_or(Error::DivisionByZero)?;
        let lc_inv = lc.recip();
        let mut rest = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rest.terms.first() {
            // a multiple of `divisor` has a leading monomial divisible by `lm`
            if !lm.divides(m) {
                return Err(Error::NotDivisible {
                    dividend: self.to_string(),
                    divisor: divisor.to_string(),
                });
            }
            let qm = m.div(lm);
            let qc = c * &lc_inv;
            rest = rest.axpy(&-qc.clone(), &divisor.mul_term(&qm, &Rational::one()));
            quot.push((qm, qc));
        }
        Ok(Poly::from_sorted_terms(&self.ring, quot))
    }

    pub fn divides(&self, other: &Poly) -> bool {
        !self.is_zero() && other.exact_divide(self).is_ok()
    }

    /// The same polynomial expressed in `ring`, which must have the same
    /// variables (possibly under a different order).
    pub fn to_ring(&self, ring: &Ring) -> Result<Poly> {
        if self.ring.names() != ring.names() {
            return Err(Error::RingMismatch);
        }
        Ok(Poly::from_terms(ring, self.terms.iter().cloned()))
    }

    /// Evaluates at a rational point.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.ring.nvars());
        self.terms
            .iter()
            .map(|(m, c)| {
                m.0.iter()
                    .zip(point)
                    .fold(c.clone(), |acc, (&e, x)| acc * num_traits::pow(x.clone(), e as usize))
            })
            .fold(Rational::zero(), |a, b| a + b)
    }

    /// Sign normalization: `-p` when the leading coefficient is negative.
    pub fn abs_leading(&self) -> Poly {
        match self.leading_coeff() {
            Some(c) if c.is_negative() => -self,
            _ => self.clone(),
        }
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;

    /// Panics if the operands live in different rings.
    fn add(self, rhs: &'a Poly) -> Poly {
        self.checked_add(rhs).expect("ring mismatch in polynomial addition")
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;

    fn sub(self, rhs: &'a Poly) -> Poly {
        self.checked_sub(rhs).expect("ring mismatch in polynomial subtraction")
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;

    fn mul(self, rhs: &'a Poly) -> Poly {
        self.checked_mul(rhs)
            .expect("ring mismatch in polynomial multiplication")
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        -&self
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}
