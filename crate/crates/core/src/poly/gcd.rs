//! Multivariate GCD by primitive pseudo-remainder sequences, recursive in the
//! variables. `lcm` goes through ideal intersection instead: `⟨p⟩ ∩ ⟨q⟩` is
//! the elimination ideal of `⟨t·p, (1 - t)·q⟩` with respect to `t`, which
//! also serves as an independent check of the GCD.

use num_traits::One;

use super::{same_ring, Monomial, MonomialOrder, OrderKind, Poly, PolyRing, Rational, Ring};
use crate::error::{Error, Result};
use crate::groebner::reduced_gb;

/// A fresh variable name not used by `ring`.
fn fresh_name(ring: &PolyRing) -> String {
    (0..)
        .map(|i| format!("t{i}"))
        .find(|n| ring.var_index(n).is_none())
        .expect("finitely many variables")
}

/// Lifts `p` into `ext` where variable 0 is the new elimination variable.
fn embed(p: &Poly, ext: &Ring) -> Poly {
    Poly::from_terms(
        ext,
        p.terms().iter().map(|(m, c)| {
            let mut e = vec![0u32];
            e.extend_from_slice(m.exponents());
            (Monomial::from_exponents(&e), c.clone())
        }),
    )
}

fn project(p: &Poly, ring: &Ring) -> Poly {
    Poly::from_terms(
        ring,
        p.terms()
            .iter()
            .map(|(m, c)| (Monomial::from_exponents(&m.exponents()[1..]), c.clone())),
    )
}

/// Univariate GCD by the Euclidean algorithm, for polynomials involving at
/// most the one variable `var`. Not normalized.
fn univariate_gcd(a: &Poly, b: &Poly) -> Result<Poly> {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_zero() {
        let (_, r) = a.div_rem(&b)?;
        a = b;
        b = r.monic();
    }
    Ok(a)
}

/// Sound sufficient test for `gcd(p, q) = 1`.
///
/// For each variable `z_k` occurring in both, the other variables are set to
/// small integers keeping the leading coefficient of `p` in `z_k` nonzero. A
/// common factor of `z_k`-degree `e` then maps to a common factor of degree at
/// least `e` of the univariate images, so constant univariate GCDs for every
/// `z_k` prove coprimality. `false` means inconclusive.
fn certainly_coprime(p: &Poly, q: &Poly) -> Result<bool> {
    let ring = p.ring();
    let n = ring.nvars();
    for k in 0..n {
        if !p.involves(k) || !q.involves(k) {
            continue;
        }
        let deg = p.degree_in(k);
        let mut good_points = 0;
        let mut coprime_here = false;
        for attempt in 0..8i64 {
            let mut pa = p.clone();
            let mut qa = q.clone();
            for v in (0..n).filter(|&v| v != k) {
                let c = Poly::from_int(ring, ((v as i64 * 7 + attempt * 13 + 3) % 17) - 8);
                pa = pa.substitute(v, &c)?;
                qa = qa.substitute(v, &c)?;
            }
            if pa.degree_in(k) != deg || qa.is_zero() {
                continue;
            }
            good_points += 1;
            if univariate_gcd(&pa, &qa)?.is_constant() {
                coprime_here = true;
                break;
            }
            if good_points == 3 {
                break;
            }
        }
        if !coprime_here {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Largest monomial dividing `p`, and `p` divided by it.
fn split_monomial_content(p: &Poly) -> (Monomial, Poly) {
    let content = p
        .terms()
        .iter()
        .map(|(m, _)| m.clone())
        .reduce(|a, b| a.gcd(&b))
        .unwrap_or_else(|| Monomial::one(p.ring().nvars()));
    let rest = Poly::from_terms(
        p.ring(),
        p.terms()
            .iter()
            .map(|(m, c)| (m.div(&content), c.clone()))
            .collect::<Vec<_>>(),
    );
    (content, rest)
}

/// Coefficients of `p` as a polynomial in `var`, indexed by degree.
fn coefficients_in(p: &Poly, var: usize) -> Vec<Poly> {
    let ring = p.ring();
    let mut buckets: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); p.degree_in(var) as usize + 1];
    for (m, c) in p.terms() {
        let mut e = m.exponents().to_vec();
        let k = std::mem::replace(&mut e[var], 0) as usize;
        buckets[k].push((Monomial::from_exponents(&e), c.clone()));
    }
    buckets.into_iter().map(|ts| Poly::from_terms(ring, ts)).collect()
}

fn leading_coefficient_in(p: &Poly, var: usize) -> Poly {
    coefficients_in(p, var).pop().expect("at least one coefficient")
}

/// GCD of the coefficients of `p` in `var`.
fn content_in(p: &Poly, var: usize) -> Result<Poly> {
    gcd_many(p.ring(), &coefficients_in(p, var))
}

fn primitive_part_in(p: &Poly, var: usize) -> Result<Poly> {
    if p.is_zero() {
        return Ok(p.clone());
    }
    p.exact_divide(&content_in(p, var)?)
}

/// `lc(b)^k * a mod b` in `var`, for some `k`.
fn pseudo_remainder(a: &Poly, b: &Poly, var: usize) -> Poly {
    let ring = a.ring();
    let db = b.degree_in(var);
    let lb = leading_coefficient_in(b, var);
    let mut a = a.clone();
    while !a.is_zero() && a.degree_in(var) >= db {
        let shift = a.degree_in(var) - db;
        let la = leading_coefficient_in(&a, var);
        let xs = Poly::var(ring, var).pow(shift);
        a = &(&lb * &a) - &(&(&la * &xs) * b);
    }
    a
}

/// GCD of two nonzero, non-constant polynomials without monomial content.
fn prs_gcd(p: &Poly, q: &Poly) -> Result<Poly> {
    let ring = p.ring();
    let (mut p, mut q) = (p.clone(), q.clone());
    // a variable present in only one argument cannot occur in the GCD
    for v in 0..ring.nvars() {
        match (p.involves(v), q.involves(v)) {
            (true, false) => p = content_in(&p, v)?,
            (false, true) => q = content_in(&q, v)?,
            _ => {}
        }
        if p.is_constant() || q.is_constant() {
            return Ok(Poly::one(ring));
        }
    }
    let var = (0..ring.nvars())
        .filter(|&v| p.involves(v))
        .min_by_key(|&v| p.degree_in(v).max(q.degree_in(v)))
        .expect("non-constant");
    let content = content_in(&p, var)?.gcd(&content_in(&q, var)?)?;
    let (mut a, mut b) = (primitive_part_in(&p, var)?, primitive_part_in(&q, var)?);
    if a.degree_in(var) < b.degree_in(var) {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        let r = pseudo_remainder(&a, &b, var);
        a = b;
        b = primitive_part_in(&r, var)?.monic();
    }
    Ok((&content * &primitive_part_in(&a, var)?).monic())
}

/// Least common multiple, normalized to be monic. Zero if either input is zero.
pub fn lcm(p: &Poly, q: &Poly) -> Result<Poly> {
    if !same_ring(p.ring(), q.ring()) {
        return Err(Error::RingMismatch);
    }
    let ring = p.ring();
    if p.is_zero() || q.is_zero() {
        return Ok(Poly::zero(ring));
    }
    if p.is_constant() {
        return Ok(q.monic());
    }
    if q.is_constant() {
        return Ok(p.monic());
    }
    let mut names = vec![fresh_name(ring)];
    names.extend(ring.names().iter().cloned());
    // lex with t first eliminates t; the remaining variables keep the ring's priority
    let mut priority = vec![0usize];
    priority.extend(ring.order().priority().iter().map(|v| v + 1));
    let order = MonomialOrder::with_priority(OrderKind::Lex, priority).expect("permutation");
    let ext = PolyRing::with_order(&names, order)?;
    let t = Poly::var(&ext, 0);
    let one_minus_t = &Poly::one(&ext) - &t;
    let gb = reduced_gb(&ext, &[&t * &embed(p, &ext), &one_minus_t * &embed(q, &ext)])?;
    let generator = gb
        .elements()
        .iter()
        .find(|g| !g.involves(0))
        .ok_or_else(|| Error::Internal("intersection ideal has no t-free generator".into()))?;
    Ok(project(generator, ring).monic())
}

impl Poly {
    /// Greatest common divisor, monic under the ring order; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        if !same_ring(self.ring(), other.ring()) {
            return Err(Error::RingMismatch);
        }
        let ring = self.ring();
        if self.is_zero() {
            return Ok(other.monic());
        }
        if other.is_zero() {
            return Ok(self.monic());
        }
        if self.is_constant() || other.is_constant() {
            return Ok(Poly::one(ring));
        }
        if self.divides(other) {
            return Ok(self.monic());
        }
        if other.divides(self) {
            return Ok(other.monic());
        }
        let (ma, a) = split_monomial_content(self);
        let (mb, b) = split_monomial_content(other);
        let mono = Poly::monomial(ring, ma.gcd(&mb), Rational::one());
        if !ma.is_one() || !mb.is_one() {
            return Ok((&mono * &a.gcd(&b)?).monic());
        }
        if a.is_constant() || b.is_constant() || certainly_coprime(&a, &b)? {
            return Ok(Poly::one(ring));
        }
        prs_gcd(&a, &b)
    }
}

/// GCD of a sequence; zero for an empty or all-zero sequence.
pub fn gcd_many<'a, I>(ring: &Ring, polys: I) -> Result<Poly>
where
    I: IntoIterator<Item = &'a Poly>,
{
    let mut polys: Vec<&Poly> = polys.into_iter().filter(|p| !p.is_zero()).collect();
    // small inputs first keep the running GCD small
    polys.sort_by_key(|p| (p.total_degree(), p.len()));
    let mut acc = Poly::zero(ring);
    for p in polys {
        acc = acc.gcd(p)?;
        if acc.is_one() {
            break;
        }
    }
    Ok(acc)
}
