use num_traits::Zero;

use crate::error::{Error, Result};
use crate::groebner::{lift, syzygy, LiftCertificate, Side, SyzygyBasis};
use crate::matrix::PolyMatrix;
use crate::poly::{Poly, Rational};

use super::ZlpVector;

/// A unimodular `V` with first column `q1` and `w * V = e_1`, and `U = V⁻¹`
/// whose first row is `w`.
#[derive(Clone, Debug)]
pub struct Completion {
    pub v: PolyMatrix,
    pub u: PolyMatrix,
    /// `w * q1 = 1`.
    pub q1: LiftCertificate,
    /// Right syzygies of `w`, the pool for columns `2..=l` of `V`.
    pub syzygies: SyzygyBasis,
    /// Number of candidate column sets examined.
    pub attempts: usize,
}

/// Lazy `r`-subsets of `0..n` in lexicographic order.
struct Subsets {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Subsets {
    fn new(n: usize, r: usize) -> Self {
        Subsets {
            n,
            idx: (0..r).collect(),
            done: r > n,
        }
    }
}

impl Iterator for Subsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let r = self.idx.len();
        match (0..r).rev().find(|&i| self.idx[i] != i + self.n - r) {
            Some(i) => {
                self.idx[i] += 1;
                for j in i + 1..r {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
            }
            None => self.done = true,
        }
        Some(out)
    }
}

fn assemble(q1: &[Poly], columns: &[&Vec<Poly>]) -> PolyMatrix {
    let ring = q1[0].ring();
    let l = q1.len();
    PolyMatrix::from_fn(ring, l, l, |i, j| {
        if j == 0 {
            q1[i].clone()
        } else {
            columns[j - 1][i].clone()
        }
    })
}

fn last_nonzero(v: &[Poly]) -> usize {
    v.iter().rposition(|p| !p.is_zero()).unwrap_or(0)
}

/// Completes `w` to a unimodular matrix.
///
/// Columns `2..=l` are drawn from the right syzygies of `w`: first every
/// `(l-1)`-subset of the generators, then subsets that include a
/// recombination `g_a + c * g_b` with `c ∈ {-2, -1, 1, 2}`. At most
/// `max_attempts` candidate sets are tried. Chosen columns are ordered by
/// the index of their last nonzero entry. The last column is rescaled so
/// that `det(V) = 1`.
pub fn complete(w: &ZlpVector, max_attempts: usize) -> Result<Completion> {
    let comps = &w.components;
    let l = comps.len();
    if l == 0 {
        return Err(Error::Dimension("empty vector".into()));
    }
    let ring = comps[0].ring();
    let q1 = lift(&Poly::one(ring), comps)?;
    let row = PolyMatrix::new(ring, vec![comps.clone()])?;
    let syzygies = syzygy(&row, Side::Right)?;
    let gens = &syzygies.generators;

    let mut pool: Vec<Vec<Poly>> = gens.clone();
    for a in 0..gens.len() {
        for b in 0..gens.len() {
            if a == b {
                continue;
            }
            for c in [-2i64, -1, 1, 2] {
                let c = Rational::from_integer(c.into());
                pool.push(gens[a].iter().zip(&gens[b]).map(|(x, y)| x + &y.scale(&c)).collect());
            }
        }
    }

    let primary = Subsets::new(gens.len(), l - 1);
    let mixed = Subsets::new(pool.len(), l - 1).filter(|s| s.iter().any(|&i| i >= gens.len()));
    let mut attempts = 0;
    let mut found = None;
    for subset in primary.chain(mixed).take(max_attempts) {
        attempts += 1;
        let mut columns: Vec<&Vec<Poly>> = subset.iter().map(|&i| &pool[i]).collect();
        columns.sort_by_key(|c| last_nonzero(c));
        let v = assemble(&q1.cofactors, &columns);
        let det = v.determinant()?;
        if let Some(c) = det.constant_value().filter(|c| !c.is_zero()) {
            found = Some((v, c));
            break;
        }
    }
    let Some((mut v, det)) = found else {
        return Err(Error::CompletionFailed {
            generators: gens
                .iter()
                .map(|g| format!("[{}]", g.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")))
                .collect(),
        });
    };
    if l >= 2 {
        let inv = det.recip();
        for i in 0..l {
            let e = v.get(i, l - 1).scale(&inv);
            v.set(i, l - 1, e);
        }
    }
    let u = v.inverse_unimodular()?;
    if u.row(0) != comps.as_slice() {
        return Err(Error::Internal("first row of V^-1 differs from w".into()));
    }
    Ok(Completion {
        v,
        u,
        q1,
        syzygies,
        attempts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::{example1_f_hat, example1_ring, example1_u, example1_v};
    use crate::factorizer::zlp_vector;
    use crate::groebner::is_unit_ideal;
    use crate::matrix::combinations;

    fn zlp_of(comps: &[&str]) -> ZlpVector {
        let r = example1_ring();
        let components: Vec<Poly> = comps.iter().map(|s| Poly::parse(s, &r).unwrap()).collect();
        let (unit, unit_certificate) = is_unit_ideal(&r, &components).unwrap();
        assert!(unit);
        ZlpVector {
            raw: components.clone(),
            content: Poly::one(&r),
            components,
            unit_certificate,
        }
    }

    #[test]
    fn subsets_match_eager_enumeration() {
        for n in 0..6 {
            for r in 0..=n + 1 {
                let lazy: Vec<_> = Subsets::new(n, r).collect();
                let eager = if r == 0 { vec![vec![]] } else { combinations(n, r) };
                assert_eq!(lazy, eager, "n={n} r={r}");
            }
        }
    }

    #[test]
    fn example_completion() {
        let w = zlp_vector(&example1_f_hat()).unwrap();
        let c = complete(&w, 100).unwrap();
        assert_eq!(c.q1.cofactors, zlp_of(&["1", "0", "0"]).components);
        assert_eq!(c.v, example1_v());
        assert_eq!(c.u, example1_u());
        assert!(c.v.determinant().unwrap().is_one());
    }

    #[test]
    fn two_component_vector() {
        let w = zlp_of(&["z1", "z1*z2 - 1"]);
        let c = complete(&w, 100).unwrap();
        assert!(c.v.determinant().unwrap().is_one());
        assert_eq!(c.u.row(0), w.components.as_slice());
        assert!(c.v.mul(&c.u).unwrap().is_identity());
    }

    #[test]
    fn single_component_vector() {
        let w = zlp_of(&["1"]);
        let c = complete(&w, 1).unwrap();
        assert!(c.v.is_identity() && c.u.is_identity());
    }

    #[test]
    fn first_unit_vector_completes_to_identity() {
        let w = zlp_of(&["1", "0", "0"]);
        let c = complete(&w, 100).unwrap();
        assert!(c.u.is_identity() && c.v.is_identity());
    }

    #[test]
    fn pair_with_unit_combination() {
        let w = zlp_of(&["z2", "1 + z2*z3"]);
        let c = complete(&w, 100).unwrap();
        let r = example1_ring();
        let col: Vec<Poly> = (0..2).map(|i| c.v.get(i, 1).clone()).collect();
        // the only syzygy direction is (-(1 + z2*z3), z2) up to a constant
        let expected = [Poly::parse("-1 - z2*z3", &r).unwrap(), Poly::parse("z2", &r).unwrap()];
        let ratio = col[1].leading_coeff().unwrap() / expected[1].leading_coeff().unwrap();
        assert_eq!(col, expected.iter().map(|e| e.scale(&ratio)).collect::<Vec<_>>());
        assert!(c.v.determinant().unwrap().is_one());
    }

    #[test]
    fn four_components() {
        let w = zlp_of(&["z1", "z2", "z3", "1 - z1*z2*z3"]);
        let c = complete(&w, 10_000).unwrap();
        assert!(c.v.determinant().unwrap().is_one());
        assert_eq!(c.u.row(0), w.components.as_slice());
    }

    #[test]
    fn zero_budget_fails_loudly() {
        let w = zlp_of(&["z1", "z1*z2 - 1"]);
        assert!(matches!(complete(&w, 0), Err(Error::CompletionFailed { .. })));
    }
}
