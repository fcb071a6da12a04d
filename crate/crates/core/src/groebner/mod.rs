//! Reduced Gröbner bases, ideal-membership certificates and syzygy modules.

mod engine;

use std::fmt;

use num_traits::One;

use crate::error::{Error, Result};
use crate::matrix::PolyMatrix;
use crate::poly::{same_ring, Monomial, MonomialOrder, Poly, Rational, Ring};
use engine::{axpy, sort_vector, Elem, Engine, Term, Vector};

fn to_vector(p: &Poly, pos: usize, order: &MonomialOrder) -> Vector {
    let mut v: Vector = p
        .terms()
        .iter()
        .map(|(m, c)| Term {
            pos,
            mono: m.clone(),
            coeff: c.clone(),
        })
        .collect();
    sort_vector(order, &mut v);
    v
}

/// Splits a vector into `len` polynomials by position, offset by `first`.
fn split_vector(v: &[Term], ring: &Ring, first: usize, len: usize) -> Vec<Poly> {
    let mut parts: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); len];
    for t in v {
        if t.pos >= first && t.pos < first + len {
            parts[t.pos - first].push((t.mono.clone(), t.coeff.clone()));
        }
    }
    parts.into_iter().map(|ts| Poly::from_terms(ring, ts)).collect()
}

fn common_ring(ring: &Ring, polys: &[Poly]) -> Result<()> {
    if polys.iter().all(|p| same_ring(p.ring(), ring)) {
        Ok(())
    } else {
        Err(Error::RingMismatch)
    }
}

/// The reduced Gröbner basis of an ideal.
#[derive(Clone)]
pub struct GroebnerBasis {
    ring: Ring,
    order: MonomialOrder,
    elements: Vec<Poly>,
    elems: Vec<Elem>,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    /// Elements sorted by decreasing leading monomial, each monic.
    pub fn elements(&self) -> &[Poly] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// True iff the ideal is the whole ring, i.e. the basis is `{1}`.
    pub fn is_unit(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].is_one()
    }

    /// Normal form of `p` modulo the basis.
    pub fn reduce(&self, p: &Poly) -> Poly {
        let e = Elem {
            lead: to_vector(p, 0, &self.order),
            tag: Vec::new(),
        };
        let idx: Vec<usize> = (0..self.elems.len()).collect();
        let r = Engine::reduce_by(&self.order, e, &self.elems, &idx);
        split_vector(&r.lead, &self.ring, 0, 1).remove(0)
    }

    pub fn contains(&self, p: &Poly) -> bool {
        self.reduce(p).is_zero()
    }

    /// Leading monomial of an element under the basis order.
    fn lm(&self, k: usize) -> &Monomial {
        &self.elems[k].lead[0].mono
    }

    /// Buchberger's criterion: every S-polynomial reduces to zero.
    pub fn s_pairs_reduce_to_zero(&self) -> bool {
        let o = &self.order;
        for i in 0..self.elems.len() {
            for j in i + 1..self.elems.len() {
                let l = self.lm(i).lcm(self.lm(j));
                let s = axpy(
                    o,
                    &axpy(o, &[], &Rational::one(), &l.div(self.lm(i)), &self.elems[i].lead),
                    &-Rational::one(),
                    &l.div(self.lm(j)),
                    &self.elems[j].lead,
                );
                let p = split_vector(&s, &self.ring, 0, 1).remove(0);
                if !self.reduce(&p).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Monic elements, and no term of any element is divisible by the
    /// leading monomial of another.
    pub fn is_reduced(&self) -> bool {
        (0..self.elems.len()).all(|i| {
            self.elems[i].lead[0].coeff.is_one()
                && (0..self.elems.len())
                    .all(|j| i == j || self.elems[i].lead.iter().all(|t| !self.lm(j).divides(&t.mono)))
        })
    }
}

impl fmt::Display for GroebnerBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, p) in self.elements.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for GroebnerBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroebnerBasis({self})")
    }
}

/// Reduced Gröbner basis of `⟨generators⟩` under the ring's own order.
/// An empty (or all-zero) generator list yields the empty basis of the zero
/// ideal.
pub fn reduced_gb(ring: &Ring, generators: &[Poly]) -> Result<GroebnerBasis> {
    reduced_gb_with_order(ring, generators, ring.order())
}

pub fn reduced_gb_with_order(ring: &Ring, generators: &[Poly], order: &MonomialOrder) -> Result<GroebnerBasis> {
    common_ring(ring, generators)?;
    if order.nvars() != ring.nvars() {
        return Err(Error::InvalidRing("order arity differs from the ring".into()));
    }
    let inputs = generators
        .iter()
        .map(|g| Elem {
            lead: to_vector(g, 0, order),
            tag: Vec::new(),
        })
        .collect();
    let elems = Engine::new(order, true).run(inputs);
    let elements = elems
        .iter()
        .map(|e| split_vector(&e.lead, ring, 0, 1).remove(0))
        .collect();
    Ok(GroebnerBasis {
        ring: ring.clone(),
        order: order.clone(),
        elements,
        elems,
    })
}

/// Decides `⟨generators⟩ = Q[z]`; the basis is the certificate.
pub fn is_unit_ideal(ring: &Ring, generators: &[Poly]) -> Result<(bool, GroebnerBasis)> {
    let gb = reduced_gb(ring, generators)?;
    Ok((gb.is_unit(), gb))
}

/// Explicit cofactors with `Σ cofactors[i] * generators[i] = target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftCertificate {
    pub target: Poly,
    pub generators: Vec<Poly>,
    pub cofactors: Vec<Poly>,
}

impl LiftCertificate {
    pub fn combination(&self) -> Poly {
        self.generators
            .iter()
            .zip(&self.cofactors)
            .fold(Poly::zero(self.target.ring()), |acc, (g, c)| &acc + &(g * c))
    }

    pub fn check(&self) -> bool {
        self.generators.len() == self.cofactors.len() && self.combination() == self.target
    }
}

/// Expresses `target` as a combination of `generators`, tracking each basis
/// element's representation through Buchberger's algorithm.
pub fn lift(target: &Poly, generators: &[Poly]) -> Result<LiftCertificate> {
    let ring = target.ring().clone();
    common_ring(&ring, generators)?;
    let order = ring.order();
    let inputs = generators
        .iter()
        .enumerate()
        .map(|(i, g)| Elem {
            lead: to_vector(g, 0, order),
            tag: vec![Term {
                pos: i,
                mono: Monomial::one(ring.nvars()),
                coeff: Rational::one(),
            }],
        })
        .collect();
    let basis = Engine::new(order, true).run(inputs);
    let idx: Vec<usize> = (0..basis.len()).collect();
    let r = Engine::reduce_by(
        order,
        Elem {
            lead: to_vector(target, 0, order),
            tag: Vec::new(),
        },
        &basis,
        &idx,
    );
    if !r.lead.is_empty() {
        return Err(Error::NotInIdeal);
    }
    // target - Σ q_k g_k = 0 with the tag holding -Σ q_k rep_k
    let cofactors = split_vector(&r.tag, &ring, 0, generators.len())
        .into_iter()
        .map(|p| -p)
        .collect();
    let cert = LiftCertificate {
        target: target.clone(),
        generators: generators.to_vec(),
        cofactors,
    };
    if !cert.check() {
        return Err(Error::Internal("lift certificate does not reproduce the target".into()));
    }
    Ok(cert)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// Row vectors `p` with `p * M = 0`.
    Left,
    /// Column vectors `q` with `M * q = 0`.
    Right,
}

/// Generators of a syzygy module, forming its reduced Gröbner basis under
/// the position-over-term extension of the ring order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyzygyBasis {
    pub side: Side,
    pub generators: Vec<Vec<Poly>>,
}

impl SyzygyBasis {
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Checks that every generator annihilates `m` on the recorded side.
    pub fn annihilates(&self, m: &PolyMatrix) -> bool {
        self.generators.iter().all(|g| match self.side {
            Side::Left => m.left_apply(g).map(|v| v.iter().all(Poly::is_zero)).unwrap_or(false),
            Side::Right => m.right_apply(g).map(|v| v.iter().all(Poly::is_zero)).unwrap_or(false),
        })
    }
}

/// Syzygies of `m`: runs the module basis computation on the rows of
/// `[M | I]` with the `M` positions dominating and keeps the elements whose
/// `M` part vanished.
pub fn syzygy(m: &PolyMatrix, side: Side) -> Result<SyzygyBasis> {
    let work = match side {
        Side::Left => m.clone(),
        Side::Right => m.transpose(),
    };
    let ring = work.ring().clone();
    let order = ring.order();
    let (rows, cols) = (work.rows(), work.cols());
    let inputs = (0..rows)
        .map(|i| {
            let mut lead: Vector = (0..cols).flat_map(|j| to_vector(work.get(i, j), j, order)).collect();
            lead.push(Term {
                pos: cols + i,
                mono: Monomial::one(ring.nvars()),
                coeff: Rational::one(),
            });
            sort_vector(order, &mut lead);
            Elem { lead, tag: Vec::new() }
        })
        .collect();
    let basis = Engine::new(order, false).run(inputs);
    let mut generators: Vec<Vec<Poly>> = basis
        .iter()
        .filter(|e| e.lead[0].pos >= cols)
        .map(|e| split_vector(&e.lead, &ring, cols, rows))
        .collect();
    // smallest leading term first
    generators.reverse();
    let out = SyzygyBasis { side, generators };
    if !out.annihilates(m) {
        return Err(Error::Internal(
            "syzygy generator does not annihilate the matrix".into(),
        ));
    }
    Ok(out)
}

/// Leading (position, monomial) of a vector under the POT order.
pub fn pot_leading(v: &[Poly]) -> Option<(usize, Monomial)> {
    v.iter()
        .enumerate()
        .find(|(_, p)| !p.is_zero())
        .map(|(i, p)| (i, p.leading_monomial().unwrap().clone()))
}

/// Compares two vectors' leading terms under POT.
pub fn cmp_pot_leading(order: &MonomialOrder, a: &[Poly], b: &[Poly]) -> std::cmp::Ordering {
    match (pot_leading(a), pot_leading(b)) {
        (None, None) => std::cmp::Ordering::Equal,
        (None, Some(_)) => std::cmp::Ordering::Less,
        (Some(_), None) => std::cmp::Ordering::Greater,
        (Some((pa, ma)), Some((pb, mb))) => engine::cmp_pot(order, (pa, &ma), (pb, &mb)),
    }
}
