//! Seeded random instances: polynomials, unimodular matrices, and matrices
//! with a planted linear divisor in their maximal minors.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::factorizer::{DivisorProduct, LinearDivisor};
use crate::matrix::PolyMatrix;
use crate::poly::{Monomial, Poly, PolyRing, Rational, Ring};

pub type CorpusRng = ChaCha8Rng;

pub fn rng(seed: u64) -> CorpusRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `Q[z1, z2, z3]` under lex.
pub fn ring3() -> Ring {
    PolyRing::lex(&["z1", "z2", "z3"]).expect("valid ring")
}

/// Up to `max_terms` terms in `vars` of total degree at most `max_degree`,
/// coefficients in `-3..=3`. May be zero.
pub fn random_poly(rng: &mut CorpusRng, ring: &Ring, vars: &[usize], max_degree: u32, max_terms: usize) -> Poly {
    let nterms = rng.gen_range(1..=max_terms.max(1));
    let terms = (0..nterms).map(|_| {
        let mut e = vec![0u32; ring.nvars()];
        if !vars.is_empty() {
            for _ in 0..rng.gen_range(0..=max_degree) {
                e[*vars.choose(rng).expect("nonempty")] += 1;
            }
        }
        let c: i64 = rng.gen_range(-3..=3);
        (Monomial::from_exponents(&e), Rational::from_integer(c.into()))
    });
    Poly::from_terms(ring, terms.collect::<Vec<_>>())
}

pub fn random_nonzero_poly(
    rng: &mut CorpusRng,
    ring: &Ring,
    vars: &[usize],
    max_degree: u32,
    max_terms: usize,
) -> Poly {
    loop {
        let p = random_poly(rng, ring, vars, max_degree, max_terms);
        if !p.is_zero() {
            return p;
        }
    }
}

/// Entries are zero with probability `sparsity`.
pub fn random_matrix(
    rng: &mut CorpusRng,
    ring: &Ring,
    rows: usize,
    cols: usize,
    max_degree: u32,
    sparsity: f64,
) -> PolyMatrix {
    let vars: Vec<usize> = (0..ring.nvars()).collect();
    PolyMatrix::from_fn(ring, rows, cols, |_, _| {
        if rng.gen_bool(sparsity) {
            Poly::zero(ring)
        } else {
            random_poly(rng, ring, &vars, max_degree, 2)
        }
    })
}

/// Product of `steps` elementary row operations with multipliers in `vars`,
/// a row permutation, and a diagonal of nonzero constants.
pub fn random_unimodular(
    rng: &mut CorpusRng,
    ring: &Ring,
    n: usize,
    vars: &[usize],
    steps: usize,
    max_degree: u32,
) -> PolyMatrix {
    let mut m = PolyMatrix::identity(ring, n);
    if n < 2 {
        let c: i64 = *[-2i64, -1, 1, 2].choose(rng).expect("nonempty");
        return m.scale_rational(&Rational::from_integer(c.into()));
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let p = random_poly(rng, ring, vars, max_degree, 2);
        // row i += p * row j
        for c in 0..n {
            let e = m.get(i, c) + &(&p * m.get(j, c));
            m.set(i, c, e);
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let rows = m.to_rows();
    let scaled = perm
        .iter()
        .map(|&r| {
            let c: i64 = *[-1i64, 1, 2].choose(rng).expect("nonempty");
            rows[r]
                .iter()
                .map(|p| p.scale(&Rational::from_integer(c.into())))
                .collect()
        })
        .collect();
    PolyMatrix::new(ring, scaled).expect("square")
}

/// `z_var - f` with `f` a random polynomial in `rhs_vars`.
pub fn random_divisor(
    rng: &mut CorpusRng,
    ring: &Ring,
    var: usize,
    rhs_vars: &[usize],
    max_degree: u32,
) -> LinearDivisor {
    let rhs = random_poly(rng, ring, rhs_vars, max_degree, 2);
    LinearDivisor::new(var, rhs).expect("rhs avoids var")
}

/// Random `rows x cols` matrix of full row rank.
pub fn random_full_rank(rng: &mut CorpusRng, ring: &Ring, rows: usize, cols: usize, max_degree: u32) -> PolyMatrix {
    loop {
        let b = random_matrix(rng, ring, rows, cols, max_degree, 0.3);
        if b.rank() == rows {
            return b;
        }
    }
}

/// `V0 * diag(d, 1, ..., 1) * B`.
#[derive(Clone, Debug)]
pub struct Planted {
    pub f: PolyMatrix,
    pub v0: PolyMatrix,
    pub b: PolyMatrix,
}

pub fn plant(v0: &PolyMatrix, d: &Poly, b: &PolyMatrix) -> Planted {
    let ring = b.ring();
    let l = b.rows();
    let mut diag = vec![Poly::one(ring); l];
    diag[0] = d.clone();
    let f = v0
        .mul(&PolyMatrix::diag(ring, &diag))
        .and_then(|x| x.mul(b))
        .expect("compatible shapes");
    Planted {
        f,
        v0: v0.clone(),
        b: b.clone(),
    }
}

/// Planted instance with `V0` unimodular over `k[z2]` and `d = z1 - f(z2, z3)`.
pub fn planted_instance(rng: &mut CorpusRng, ring: &Ring, l: usize, m: usize) -> (Planted, LinearDivisor) {
    let d = random_divisor(rng, ring, 0, &[1, 2], 1);
    let v0 = random_unimodular(rng, ring, l, &[1], 2, 1);
    let b = random_full_rank(rng, ring, l, m, 1);
    (plant(&v0, &d.poly(), &b), d)
}

/// Mixed corpus for the class tests: planted instances, squared divisors,
/// scalar multiples `d * B`, and unrelated matrices.
pub fn class_instance(rng: &mut CorpusRng, ring: &Ring) -> (PolyMatrix, LinearDivisor) {
    let l = rng.gen_range(1..=3);
    let m = l + rng.gen_range(0..=1);
    let d = random_divisor(rng, ring, 0, &[1, 2], 1);
    let dp = d.poly();
    let v0 = random_unimodular(rng, ring, l, &[1, 2], 2, 1);
    let b = random_full_rank(rng, ring, l, m, 1);
    let f = match rng.gen_range(0..5) {
        0 | 1 => plant(&v0, &dp, &b).f,
        2 => plant(&v0, &dp.pow(2), &b).f,
        3 => b.scale(&dp),
        _ => {
            // identity block with a planted divisor, often in S1
            let mut id = PolyMatrix::from_fn(
                ring,
                l,
                m,
                |i, j| if i == j { Poly::one(ring) } else { Poly::zero(ring) },
            );
            for j in l..m {
                id.set(rng.gen_range(0..l), j, random_poly(rng, ring, &[0, 1, 2], 1, 2));
            }
            plant(&v0, &dp, &id).f
        }
    };
    (f, d)
}

/// `A * diag((z1 - f1)(z1 - f2), 1, ..., 1) * B` with `f1 != f2` in `z2, z3`.
pub fn chain_instance(rng: &mut CorpusRng, ring: &Ring, l: usize, m: usize) -> (Planted, DivisorProduct) {
    let (d1, d2) = loop {
        let a = random_divisor(rng, ring, 0, &[1, 2], 1);
        let b = random_divisor(rng, ring, 0, &[1, 2], 1);
        if a != b {
            break (a, b);
        }
    };
    let d0 = DivisorProduct::new(vec![(d1, 1), (d2, 1)]).expect("same ring");
    let v0 = random_unimodular(rng, ring, l, &[1], 2, 1);
    let b = random_full_rank(rng, ring, l, m, 1);
    (plant(&v0, &d0.expand(), &b), d0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unimodular_matrices_have_constant_determinant() {
        let r = ring3();
        let mut g = rng(7);
        for n in 1..=4 {
            let u = random_unimodular(&mut g, &r, n, &[1, 2], 3, 1);
            let det = u.determinant().unwrap();
            assert!(det.is_constant() && !det.is_zero());
        }
    }

    #[test]
    fn seeds_are_reproducible() {
        let r = ring3();
        let a = random_matrix(&mut rng(3), &r, 2, 3, 2, 0.2);
        let b = random_matrix(&mut rng(3), &r, 2, 3, 2, 0.2);
        assert_eq!(a, b);
    }

    #[test]
    fn planted_divisor_divides_determinant() {
        let r = ring3();
        let mut g = rng(11);
        for _ in 0..5 {
            let (p, d) = planted_instance(&mut g, &r, 3, 3);
            assert!(d.poly().divides(&p.f.determinant().unwrap()));
        }
    }
}
