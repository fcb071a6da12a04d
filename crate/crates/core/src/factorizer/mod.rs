//! Factorization of `F` as `G1 * F1` with `det(G1) = d` for linear
//! divisors `d = z_i - f`, and chains of such steps for products of them.
//!
//! Every result is verified by exact arithmetic before it is returned; the
//! hypotheses that guarantee existence are checked by [`classify`].

mod classify;
mod completion;
mod factor;
mod verify;
mod zlp;

use std::fmt;

use crate::error::{Error, Result};
use crate::poly::{same_ring, Poly, Ring};

pub use classify::{classify, classify_poly, ClassReport};
pub use completion::{complete, Completion};
pub use factor::{factor_chain, factor_once, FactorStep, FactorizationResult};
pub use verify::{verify, DeterminantCheck, EntryMismatch, VerifyReport};
pub use zlp::{substituted, zlp_vector, ZlpVector};

/// Upper bound on candidate bases tried during unimodular completion.
pub const DEFAULT_MAX_SUBSET_SEARCH: usize = 20_000;

#[derive(Clone, Debug)]
pub struct FactorOptions {
    /// Skip the class test before a single step; outputs are still verified.
    pub skip_class_check: bool,
    pub max_subset_search: usize,
}

impl Default for FactorOptions {
    fn default() -> Self {
        FactorOptions {
            skip_class_check: false,
            max_subset_search: DEFAULT_MAX_SUBSET_SEARCH,
        }
    }
}

/// `d = z_var - rhs` with `rhs` free of `z_var`.
#[derive(Clone, PartialEq, Eq)]
pub struct LinearDivisor {
    var: usize,
    rhs: Poly,
}

impl LinearDivisor {
    pub fn new(var: usize, rhs: Poly) -> Result<Self> {
        if var >= rhs.ring().nvars() {
            return Err(Error::InvalidDivisor(format!("variable index {var} out of range")));
        }
        if rhs.involves(var) {
            return Err(Error::InvalidDivisor(format!(
                "right-hand side `{rhs}` involves {}",
                rhs.ring().name(var)
            )));
        }
        Ok(LinearDivisor { var, rhs })
    }

    pub fn parse(var: &str, rhs: &str, ring: &Ring) -> Result<Self> {
        let index = ring
            .var_index(var)
            .ok_or_else(|| Error::InvalidDivisor(format!("unknown variable `{var}`")))?;
        Self::new(index, Poly::parse(rhs, ring)?)
    }

    /// Recognizes `c*z_i + g` with `c` a nonzero constant and `g` free of
    /// `z_i`, trying variables in ring order, and normalizes it to `z_i - f`.
    pub fn from_poly(p: &Poly) -> Result<Self> {
        let ring = p.ring();
        for var in 0..ring.nvars() {
            if p.degree_in(var) != 1 {
                continue;
            }
            let linear: Vec<_> = p.terms().iter().filter(|(m, _)| m.exponents()[var] == 1).collect();
            if linear.len() != 1 || linear[0].0.degree() != 1 {
                continue;
            }
            let c = linear[0].1.clone();
            let zi = Poly::var(ring, var);
            let rest = p - &zi.scale(&c);
            return Self::new(var, (-&rest).scale(&c.recip()));
        }
        Err(Error::InvalidDivisor(format!(
            "`{p}` is not of the form c*z_i - f with f free of z_i"
        )))
    }

    pub fn var(&self) -> usize {
        self.var
    }

    pub fn rhs(&self) -> &Poly {
        &self.rhs
    }

    pub fn ring(&self) -> &Ring {
        self.rhs.ring()
    }

    pub fn var_name(&self) -> &str {
        self.ring().name(self.var)
    }

    /// `z_var - rhs`.
    pub fn poly(&self) -> Poly {
        &Poly::var(self.ring(), self.var) - &self.rhs
    }
}

impl fmt::Display for LinearDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly())
    }
}

impl fmt::Debug for LinearDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearDivisor({} - ({}))", self.var_name(), self.rhs)
    }
}

/// `d0 = ∏ (z_i - f)^q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorProduct {
    factors: Vec<(LinearDivisor, u32)>,
}

impl DivisorProduct {
    pub fn new(factors: Vec<(LinearDivisor, u32)>) -> Result<Self> {
        let Some((first, _)) = factors.first() else {
            return Err(Error::InvalidDivisor("empty divisor product".into()));
        };
        let ring = first.ring().clone();
        for (d, q) in &factors {
            if *q == 0 {
                return Err(Error::InvalidDivisor(format!("multiplicity of `{d}` must be positive")));
            }
            if !same_ring(d.ring(), &ring) {
                return Err(Error::RingMismatch);
            }
        }
        Ok(DivisorProduct { factors })
    }

    pub fn single(d: LinearDivisor) -> Self {
        DivisorProduct { factors: vec![(d, 1)] }
    }

    pub fn factors(&self) -> &[(LinearDivisor, u32)] {
        &self.factors
    }

    pub fn ring(&self) -> &Ring {
        self.factors[0].0.ring()
    }

    pub fn expand(&self) -> Poly {
        self.factors
            .iter()
            .fold(Poly::one(self.ring()), |acc, (d, q)| &acc * &d.poly().pow(*q))
    }

    /// Each linear factor repeated by its multiplicity, in declaration order.
    pub fn unrolled(&self) -> Vec<LinearDivisor> {
        self.factors
            .iter()
            .flat_map(|(d, q)| std::iter::repeat_n(d.clone(), *q as usize))
            .collect()
    }
}

impl fmt::Display for DivisorProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (d, q)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" * ")?;
            }
            write!(f, "({d})")?;
            if *q > 1 {
                write!(f, "^{q}")?;
            }
        }
        Ok(())
    }
}
