//! Buchberger's algorithm on vectors of polynomials.
//!
//! Vectors are compared position-over-term: a smaller position index is
//! larger, and within one position the monomial order decides. An ideal is
//! the special case of vectors with a single position.
//!
//! Each element may carry a *tag* vector that is transformed alongside the
//! lead part but never consulted for leading terms. Tags record how an
//! element was built from the inputs, which is what lift certificates need.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use crate::poly::{Monomial, MonomialOrder, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Term {
    pub pos: usize,
    pub mono: Monomial,
    pub coeff: Rational,
}

/// Terms sorted in decreasing POT order, no zero coefficients.
pub(crate) type Vector = Vec<Term>;

#[derive(Clone, Debug)]
pub(crate) struct Elem {
    pub lead: Vector,
    pub tag: Vector,
}

impl Elem {
    fn lt(&self) -> &Term {
        &self.lead[0]
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    pos: usize,
    lcm: Monomial,
}

pub(crate) struct Engine<'a> {
    order: &'a MonomialOrder,
    /// The product criterion is only sound for ideals.
    product_criterion: bool,
    basis: Vec<Elem>,
    live: Vec<usize>,
    pairs: Vec<Pair>,
}

pub(crate) fn cmp_pot(order: &MonomialOrder, a: (usize, &Monomial), b: (usize, &Monomial)) -> Ordering {
    b.0.cmp(&a.0).then_with(|| order.cmp(a.1, b.1))
}

pub(crate) fn sort_vector(order: &MonomialOrder, v: &mut Vector) {
    v.sort_by(|a, b| cmp_pot(order, (b.pos, &b.mono), (a.pos, &a.mono)));
}

/// `a + c * m * b`.
pub(crate) fn axpy(order: &MonomialOrder, a: &[Term], c: &Rational, m: &Monomial, b: &[Term]) -> Vector {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let scaled = |t: &Term| Term {
        pos: t.pos,
        mono: t.mono.mul(m),
        coeff: &t.coeff * c,
    };
    while i < a.len() && j < b.len() {
        let bm = b[j].mono.mul(m);
        match cmp_pot(order, (a[i].pos, &a[i].mono), (b[j].pos, &bm)) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push(Term {
                    pos: b[j].pos,
                    mono: bm,
                    coeff: &b[j].coeff * c,
                });
                j += 1;
            }
            Ordering::Equal => {
                let s = &a[i].coeff + &b[j].coeff * c;
                if !s.is_zero() {
                    out.push(Term {
                        pos: a[i].pos,
                        mono: bm,
                        coeff: s,
                    });
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(a[i..].iter().cloned());
    out.extend(b[j..].iter().map(scaled));
    out
}

fn scale(v: &mut Vector, c: &Rational) {
    for t in v.iter_mut() {
        t.coeff *= c;
    }
}

pub(crate) fn make_monic(e: &mut Elem) {
    let lc = e.lt().coeff.clone();
    if !lc.is_one() {
        let inv = lc.recip();
        scale(&mut e.lead, &inv);
        scale(&mut e.tag, &inv);
    }
}

impl<'a> Engine<'a> {
    pub fn new(order: &'a MonomialOrder, product_criterion: bool) -> Self {
        Engine {
            order,
            product_criterion,
            basis: Vec::new(),
            live: Vec::new(),
            pairs: Vec::new(),
        }
    }

    /// Full reduction of `e` by the elements `divisors` of `basis`
    /// (assumed monic).
    pub(crate) fn reduce_by(order: &MonomialOrder, e: Elem, basis: &[Elem], divisors: &[usize]) -> Elem {
        let mut done: Vector = Vec::new();
        let mut rest = e.lead;
        let mut tag = e.tag;
        let mut idx = 0;
        while idx < rest.len() {
            let t = &rest[idx];
            let hit = divisors.iter().copied().find(|&g| {
                let lt = basis[g].lt();
                lt.pos == t.pos && lt.mono.divides(&t.mono)
            });
            match hit {
                Some(g) => {
                    let g = &basis[g];
                    let c = -(&t.coeff / &g.lt().coeff);
                    let m = t.mono.div(&g.lt().mono);
                    rest = axpy(order, &rest[idx..], &c, &m, &g.lead);
                    idx = 0;
                    if !g.tag.is_empty() {
                        tag = axpy(order, &tag, &c, &m, &g.tag);
                    }
                }
                None => {
                    done.push(std::mem::replace(
                        &mut rest[idx],
                        Term {
                            pos: 0,
                            mono: Monomial::default(),
                            coeff: Rational::zero(),
                        },
                    ));
                    idx += 1;
                }
            }
        }
        Elem { lead: done, tag }
    }

    fn reduce(&self, e: Elem) -> Elem {
        Self::reduce_by(self.order, e, &self.basis, &self.live)
    }

    fn spoly(&self, p: &Pair) -> Elem {
        let (f, g) = (&self.basis[p.i], &self.basis[p.j]);
        let mf = p.lcm.div(&f.lt().mono);
        let mg = p.lcm.div(&g.lt().mono);
        let cf = f.lt().coeff.recip();
        let cg = -g.lt().coeff.recip();
        let lead = axpy(self.order, &axpy(self.order, &[], &cf, &mf, &f.lead), &cg, &mg, &g.lead);
        let tag = axpy(self.order, &axpy(self.order, &[], &cf, &mf, &f.tag), &cg, &mg, &g.tag);
        Elem { lead, tag }
    }

    /// Gebauer-Möller installation of a new basis element.
    fn update(&mut self, h: usize) {
        let (hp, hm) = {
            let t = self.basis[h].lt();
            (t.pos, t.mono.clone())
        };
        let cands: Vec<(usize, Monomial, bool)> = self
            .live
            .iter()
            .copied()
            .filter(|&g| self.basis[g].lt().pos == hp)
            .map(|g| {
                let gm = &self.basis[g].lt().mono;
                (g, hm.lcm(gm), self.product_criterion && hm.is_coprime(gm))
            })
            .collect();

        let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
        for (k, (g, l, disjoint)) in cands.iter().enumerate() {
            let dominated =
                cands[k + 1..].iter().any(|(_, l2, _)| l2.divides(l)) || kept.iter().any(|(_, l2, _)| l2.divides(l));
            if *disjoint || !dominated {
                kept.push((*g, l.clone(), *disjoint));
            }
        }

        let basis = &self.basis;
        self.pairs.retain(|p| {
            if p.pos != hp || !hm.divides(&p.lcm) {
                return true;
            }
            let li = hm.lcm(&basis[p.i].lt().mono);
            let lj = hm.lcm(&basis[p.j].lt().mono);
            li == p.lcm || lj == p.lcm
        });
        for (g, l, disjoint) in kept {
            if !disjoint {
                self.pairs.push(Pair {
                    i: g,
                    j: h,
                    pos: hp,
                    lcm: l,
                });
            }
        }

        self.live.retain(|&g| {
            let t = basis[g].lt();
            !(t.pos == hp && hm.divides(&t.mono))
        });
        self.live.push(h);
    }

    fn insert(&mut self, e: Elem) {
        let mut e = self.reduce(e);
        if e.lead.is_empty() {
            return;
        }
        make_monic(&mut e);
        self.basis.push(e);
        self.update(self.basis.len() - 1);
    }

    fn select_pair(&mut self) -> Option<Pair> {
        let order = self.order;
        let best = (0..self.pairs.len()).min_by(|&a, &b| {
            let (pa, pb) = (&self.pairs[a], &self.pairs[b]);
            cmp_pot(order, (pa.pos, &pa.lcm), (pb.pos, &pb.lcm)).then_with(|| (pa.i, pa.j).cmp(&(pb.i, pb.j)))
        })?;
        Some(self.pairs.swap_remove(best))
    }

    /// Runs Buchberger's algorithm and returns the reduced basis, sorted
    /// by decreasing leading term.
    pub fn run(mut self, inputs: Vec<Elem>) -> Vec<Elem> {
        for e in inputs {
            if !e.lead.is_empty() {
                self.insert(e);
            }
        }
        while let Some(p) = self.select_pair() {
            let s = self.spoly(&p);
            self.insert(s);
        }
        self.interreduce()
    }

    fn interreduce(self) -> Vec<Elem> {
        let order = self.order;
        let mut live = self.live.clone();
        // ascending leading terms: any divisor of a leading term comes first
        live.sort_by(|&a, &b| {
            let (ta, tb) = (self.basis[a].lt(), self.basis[b].lt());
            cmp_pot(order, (ta.pos, &ta.mono), (tb.pos, &tb.mono))
        });
        let mut minimal: Vec<usize> = Vec::new();
        for &g in &live {
            let t = self.basis[g].lt();
            if !minimal.iter().any(|&k| {
                let tk = self.basis[k].lt();
                tk.pos == t.pos && tk.mono.divides(&t.mono)
            }) {
                minimal.push(g);
            }
        }
        let mut basis = self.basis;
        for k in 0..minimal.len() {
            let g = minimal[k];
            let others: Vec<usize> = minimal.iter().copied().filter(|&x| x != g).collect();
            let e = std::mem::replace(
                &mut basis[g],
                Elem {
                    lead: Vec::new(),
                    tag: Vec::new(),
                },
            );
            // no other leading term divides lt(e), so only the tail moves
            let mut ne = Self::reduce_by(order, e, &basis, &others);
            make_monic(&mut ne);
            basis[g] = ne;
        }
        let mut out: Vec<Elem> = minimal.into_iter().map(|g| basis[g].clone()).collect();
        out.reverse();
        out
    }
}
