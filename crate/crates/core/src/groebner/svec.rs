//! Sparse distributed free-module vectors: the engine's working type.

use std::cmp::Ordering;

use crate::monomial::{Monomial, ModuleOrder};
use crate::poly::Polynomial;
use crate::rational::{primitive_scale, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Term {
    pub mon: Monomial,
    pub comp: u32,
    pub coef: Rational,
}

/// Terms strictly descending in the owning module order, nonzero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct SVec {
    pub terms: Vec<Term>,
}

impl SVec {
    pub fn new() -> Self {
        SVec { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn from_components(comps: &[Polynomial], offset: u32, order: &ModuleOrder) -> SVec {
        let mut terms = Vec::new();
        for (c, p) in comps.iter().enumerate() {
            for (m, k) in p.terms() {
                terms.push(Term { mon: m.clone(), comp: offset + c as u32, coef: k.clone() });
            }
        }
        terms.sort_by(|a, b| order.cmp((&b.mon, b.comp), (&a.mon, a.comp)));
        SVec { terms }
    }

    /// Single polynomial placed in component `comp`.
    pub fn from_poly(p: &Polynomial, comp: u32, order: &ModuleOrder) -> SVec {
        let mut terms: Vec<Term> = p
            .terms()
            .iter()
            .map(|(m, k)| Term { mon: m.clone(), comp, coef: k.clone() })
            .collect();
        // a single component keeps the base order unless the order is weighted
        // differently; sort defensively since it is cheap here.
        terms.sort_by(|a, b| order.cmp((&b.mon, b.comp), (&a.mon, a.comp)));
        SVec { terms }
    }

    /// Components `[lo, lo+count)` as polynomials (shifted to start at 0).
    pub fn to_components(
        &self,
        lo: u32,
        count: usize,
        nvars: usize,
        order: &crate::monomial::MonomialOrder,
    ) -> Vec<Polynomial> {
        let mut buckets: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); count];
        for t in &self.terms {
            if t.comp >= lo && ((t.comp - lo) as usize) < count {
                buckets[(t.comp - lo) as usize].push((t.mon.clone(), t.coef.clone()));
            }
        }
        buckets
            .into_iter()
            .map(|ts| Polynomial::from_terms(nvars, order.clone(), ts).expect("arity"))
            .collect()
    }

    pub fn scale(&mut self, c: &Rational) {
        if c.is_one() {
            return;
        }
        for t in &mut self.terms {
            t.coef = &t.coef * c;
        }
    }

    /// Scales to integer coefficients with content 1 and positive leading
    /// coefficient; returns the factor applied.
    pub fn make_primitive(&mut self) -> Rational {
        if self.terms.is_empty() {
            return Rational::one();
        }
        let mut s = primitive_scale(self.terms.iter().map(|t| &t.coef));
        if self.terms[0].coef.is_negative() {
            s = -s;
        }
        self.scale(&s);
        s
    }

    /// `self += c * m * other`, skipping the first `skip` terms of `other`.
    pub fn add_mul(&mut self, c: &Rational, m: &Monomial, other: &SVec, skip: usize, order: &ModuleOrder) {
        if c.is_zero() || other.terms.len() <= skip {
            return;
        }
        let a = std::mem::take(&mut self.terms);
        let b = &other.terms[skip..];
        let mut out = Vec::with_capacity(a.len() + b.len());
        let mut ai = a.into_iter().peekable();
        let mut bi = b.iter().peekable();
        // products are computed lazily so that the merge compares shifted
        // monomials
        let mut pending: Option<Term> = None;
        loop {
            if pending.is_none() {
                if let Some(t) = bi.next() {
                    pending = Some(Term { mon: t.mon.mul(m), comp: t.comp, coef: &t.coef * c });
                }
            }
            match (ai.peek(), pending.as_ref()) {
                (None, None) => break,
                (Some(_), None) => out.push(ai.next().unwrap()),
                (None, Some(_)) => out.push(pending.take().unwrap()),
                (Some(x), Some(y)) => match order.cmp((&x.mon, x.comp), (&y.mon, y.comp)) {
                    Ordering::Greater => out.push(ai.next().unwrap()),
                    Ordering::Less => out.push(pending.take().unwrap()),
                    Ordering::Equal => {
                        let mut x = ai.next().unwrap();
                        let y = pending.take().unwrap();
                        x.coef = &x.coef + &y.coef;
                        if !x.coef.is_zero() {
                            out.push(x);
                        }
                    }
                },
            }
        }
        self.terms = out;
    }

    pub fn add(&mut self, other: &SVec, order: &ModuleOrder, nvars: usize) {
        self.add_mul(&Rational::one(), &Monomial::one(nvars), other, 0, order);
    }

    /// Re-sorts after an order change or component relabelling.
    pub fn resort(&mut self, order: &ModuleOrder) {
        self.terms.sort_by(|a, b| order.cmp((&b.mon, b.comp), (&a.mon, a.comp)));
    }
}
