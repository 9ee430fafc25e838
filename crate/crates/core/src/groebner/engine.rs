//! Buchberger's algorithm for submodules of free modules over `k[x]`.
//!
//! Pairs are selected by sugar degree, useless pairs are discarded with the
//! Gebauer–Möller criteria, and every
//! element may carry a cofactor vector expressing it in the original
//! generators so that membership can be certified by a division witness.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::svec::{SVec, Term};
use crate::monomial::{Monomial, ModuleOrder};
use crate::rational::Rational;

/// `(sugar, lcm degree, larger index, smaller index, pair)`; smallest first.
type PairKey = (u64, u64, usize, usize, usize);

#[derive(Clone, Debug)]
pub(crate) struct Elem {
    pub v: SVec,
    pub rep: Option<SVec>,
    pub lm: Monomial,
    pub comp: u32,
    pub lc: Rational,
    pub mask: u64,
    /// Member of a set already known to be a Gröbner basis; pairs between
    /// two seeds are never formed.
    pub seed: bool,
    /// Quotient-ring layer `g * e_c` with `g` in the ideal's basis.
    pub layer: bool,
    pub sugar: u64,
    /// Leading term divisible by a later element's; no longer used for
    /// reduction or new pairs.
    pub retired: bool,
}

impl Elem {
    fn new(v: SVec, rep: Option<SVec>, seed: bool, layer: bool, sugar: u64) -> Elem {
        let t = v.lead().expect("nonzero element");
        Elem {
            lm: t.mon.clone(),
            comp: t.comp,
            lc: t.coef.clone(),
            mask: t.mon.divmask(),
            v,
            rep,
            seed,
            layer,
            sugar,
            retired: false,
        }
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u64,
    alive: bool,
}

#[derive(Clone, Debug, Default)]
pub struct EngineStats {
    pub pairs_formed: usize,
    pub pairs_reduced: usize,
    pub zero_reductions: usize,
}

pub(crate) struct Engine {
    pub nvars: usize,
    pub order: ModuleOrder,
    pub rep_order: ModuleOrder,
    pub elems: Vec<Elem>,
    by_comp: Vec<Vec<usize>>,
    pairs: Vec<Pair>,
    pairs_by_comp: Vec<Vec<usize>>,
    heap: BinaryHeap<Reverse<PairKey>>,
    pub track: bool,
    /// Reduced basis of the defining ideal, as rank-one vectors in component 0.
    ideal: Vec<SVec>,
    pub stats: EngineStats,
}

impl Engine {
    pub fn new(nvars: usize, order: ModuleOrder, rank: usize, track: bool, ideal: Vec<SVec>) -> Engine {
        let rep_order = ModuleOrder::top(order.base.clone());
        Engine {
            nvars,
            order,
            rep_order,
            elems: Vec::new(),
            by_comp: vec![Vec::new(); rank],
            pairs: Vec::new(),
            pairs_by_comp: vec![Vec::new(); rank],
            heap: BinaryHeap::new(),
            track,
            ideal,
            stats: EngineStats::default(),
        }
    }

    pub fn rank(&self) -> usize {
        self.by_comp.len()
    }

    /// Adds `g * e_c` for every ideal basis element `g` and every component.
    pub fn add_ideal_layer(&mut self, comps: std::ops::Range<u32>) {
        let ideal = self.ideal.clone();
        for c in comps {
            for g in &ideal {
                let mut v = g.clone();
                for t in &mut v.terms {
                    t.comp = c;
                }
                let rep = if self.track { Some(SVec::new()) } else { None };
                let sugar = self.top_degree(&v);
                self.push_elem(Elem::new(v, rep, true, true, sugar));
            }
        }
    }

    /// Adds an element of a known Gröbner basis (already primitive).
    pub fn add_seed(&mut self, v: SVec, rep: Option<SVec>, layer: bool) {
        if v.is_zero() {
            return;
        }
        let sugar = self.top_degree(&v);
        self.push_elem(Elem::new(v, rep, true, layer, sugar));
    }

    fn top_degree(&self, v: &SVec) -> u64 {
        v.terms.iter().map(|t| self.order.base.sugar_degree(&t.mon)).max().unwrap_or(0)
    }

    /// Adds a generator; returns whether it was reducible to zero.
    pub fn add_generator(&mut self, v: SVec, rep: Option<SVec>) -> bool {
        let rep = if self.track { Some(rep.unwrap_or_default()) } else { None };
        let sugar = self.top_degree(&v);
        let (mut h, mut rep) = self.reduce(v, rep, true);
        if h.is_zero() {
            return true;
        }
        let s = h.make_primitive();
        if let Some(r) = rep.as_mut() {
            r.scale(&s);
            self.reduce_rep_mod_ideal(r);
        }
        self.insert(Elem::new(h, rep, false, false, sugar));
        false
    }

    fn push_elem(&mut self, e: Elem) {
        let k = self.elems.len();
        self.by_comp[e.comp as usize].push(k);
        self.elems.push(e);
    }

    /// Inserts a new non-seed element and updates the pair set
    /// (Gebauer–Möller).
    fn insert(&mut self, e: Elem) {
        let k = self.elems.len();
        let comp = e.comp as usize;
        let lm_k = e.lm.clone();
        // candidate new pairs
        let mut cand: Vec<(usize, Monomial)> = self.by_comp[comp]
            .iter()
            .filter(|&&i| !self.elems[i].retired)
            .map(|&i| (i, self.elems[i].lm.lcm(&lm_k)))
            .collect();
        // chain criterion on existing pairs of this component
        for &p in &self.pairs_by_comp[comp] {
            let pr = &self.pairs[p];
            if !pr.alive {
                continue;
            }
            if lm_k.divides(&pr.lcm) {
                let li = self.elems[pr.i].lm.lcm(&lm_k);
                let lj = self.elems[pr.j].lm.lcm(&lm_k);
                if li != pr.lcm && lj != pr.lcm {
                    self.pairs[p].alive = false;
                }
            }
        }
        self.pairs_by_comp[comp].retain(|&p| self.pairs[p].alive);
        // criterion M: drop (i,k) if some (j,k) has lcm properly dividing it;
        // among equal lcms keep the first.
        cand.sort_by(|a, b| {
            self.order
                .base
                .cmp(&a.1, &b.1)
                .then(a.0.cmp(&b.0))
        });
        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        'outer: for (i, l) in cand {
            for (_, l2) in &kept {
                if l2.divides(&l) {
                    continue 'outer;
                }
            }
            kept.push((i, l));
        }
        for &i in &self.by_comp[comp] {
            let old = &mut self.elems[i];
            if !old.seed && !old.retired && lm_k.divides(&old.lm) {
                old.retired = true;
            }
        }
        self.push_elem(e);
        let base = &self.order.base;
        for (i, lcm) in kept {
            let deg = base.sugar_degree(&lcm);
            let (a, b) = (&self.elems[i], &self.elems[k]);
            let sugar = (a.sugar + deg - base.sugar_degree(&a.lm)).max(b.sugar + deg - base.sugar_degree(&b.lm));
            let p = self.pairs.len();
            self.pairs.push(Pair { i, j: k, lcm, sugar, alive: true });
            self.pairs_by_comp[comp].push(p);
            self.heap.push(Reverse((sugar, deg, k, i, p)));
            self.stats.pairs_formed += 1;
        }
    }

    fn find_reducer(&self, t: &Term, skip: Option<usize>) -> Option<usize> {
        let mask = t.mon.divmask();
        let mut best: Option<usize> = None;
        for &k in &self.by_comp[t.comp as usize] {
            let e = &self.elems[k];
            if Some(k) == skip || e.retired || e.mask & !mask != 0 || !e.lm.divides(&t.mon) {
                continue;
            }
            match best {
                Some(b) if self.elems[b].v.terms.len() <= e.v.terms.len() => {}
                _ => best = Some(k),
            }
        }
        best
    }

    /// Reduces `h` by the current elements. With `full`, every term is
    /// reduced; otherwise only the leading term. When tracking, `rep` is
    /// updated so that `h - rep * gens` stays invariant.
    pub fn reduce(&self, h: SVec, rep: Option<SVec>, full: bool) -> (SVec, Option<SVec>) {
        self.reduce_impl(h, rep, full, None)
    }

    fn reduce_impl(
        &self,
        h: SVec,
        mut rep: Option<SVec>,
        full: bool,
        skip: Option<usize>,
    ) -> (SVec, Option<SVec>) {
        let mut done: Vec<Term> = Vec::new();
        let mut h = h.terms;
        let mut head = 0usize;
        while head < h.len() {
            match self.find_reducer(&h[head], skip) {
                Some(k) => {
                    let e = &self.elems[k];
                    let (q, c) = {
                        let t = &h[head];
                        (e.lm.quotient_of(&t.mon).expect("divisible"), -(&t.coef / &e.lc))
                    };
                    let mut rest = SVec { terms: h.split_off(head + 1) };
                    h.truncate(head);
                    done.append(&mut h);
                    rest.add_mul(&c, &q, &e.v, 1, &self.order);
                    h = rest.terms;
                    head = 0;
                    if let (Some(r), Some(er)) = (rep.as_mut(), e.rep.as_ref()) {
                        r.add_mul(&c, &q, er, 0, &self.rep_order);
                    }
                }
                None if full => head += 1,
                None => break,
            }
        }
        done.append(&mut h);
        (SVec { terms: done }, rep)
    }

    /// Reduces every component of a cofactor vector modulo the ideal.
    pub fn reduce_rep_mod_ideal(&self, rep: &mut SVec) {
        if self.ideal.is_empty() || rep.is_zero() {
            return;
        }
        *rep = reduce_mod_ideal(rep, &self.ideal, &self.rep_order);
    }

    fn spoly(&self, i: usize, j: usize, lcm: &Monomial) -> (SVec, Option<SVec>) {
        let (a, b) = (&self.elems[i], &self.elems[j]);
        let qa = a.lm.quotient_of(lcm).unwrap();
        let qb = b.lm.quotient_of(lcm).unwrap();
        // b.lc * qa * a - a.lc * qb * b; leading terms cancel
        let ca = b.lc.clone();
        let cb = -&a.lc;
        let mut s = SVec::new();
        s.add_mul(&ca, &qa, &a.v, 1, &self.order);
        s.add_mul(&cb, &qb, &b.v, 1, &self.order);
        let rep = if self.track {
            let mut r = SVec::new();
            if let Some(ar) = &a.rep {
                r.add_mul(&ca, &qa, ar, 0, &self.rep_order);
            }
            if let Some(br) = &b.rep {
                r.add_mul(&cb, &qb, br, 0, &self.rep_order);
            }
            Some(r)
        } else {
            None
        };
        (s, rep)
    }

    /// Runs Buchberger's algorithm until no pairs remain.
    pub fn complete(&mut self) {
        while let Some(Reverse((_, _, _, _, p))) = self.heap.pop() {
            if !self.pairs[p].alive {
                continue;
            }
            self.pairs[p].alive = false;
            let (i, j) = (self.pairs[p].i, self.pairs[p].j);
            if self.elems[i].seed && self.elems[j].seed {
                continue;
            }
            let lcm = self.pairs[p].lcm.clone();
            let (s, rep) = self.spoly(i, j, &lcm);
            self.stats.pairs_reduced += 1;
            let (mut h, mut rep) = self.reduce(s, rep, true);
            if h.is_zero() {
                self.stats.zero_reductions += 1;
                continue;
            }
            let sc = h.make_primitive();
            if let Some(r) = rep.as_mut() {
                r.scale(&sc);
                self.reduce_rep_mod_ideal(r);
            }
            let sugar = self.pairs[p].sugar.max(self.top_degree(&h));
            self.insert(Elem::new(h, rep, false, false, sugar));
        }
        for v in &mut self.pairs_by_comp {
            v.clear();
        }
    }

    /// Minimalizes and tail-reduces the basis; elements sorted by leading
    /// term descending.
    pub fn into_reduced(mut self) -> Engine {
        self.complete();
        let n = self.elems.len();
        let mut keep: Vec<bool> = self.elems.iter().map(|e| !e.retired).collect();
        for a in 0..n {
            if !keep[a] {
                continue;
            }
            for &b in &self.by_comp[self.elems[a].comp as usize] {
                if a == b || !keep[b] {
                    continue;
                }
                let (ea, eb) = (&self.elems[a], &self.elems[b]);
                if eb.lm.divides(&ea.lm) && (eb.lm != ea.lm || b < a) {
                    keep[a] = false;
                    break;
                }
            }
        }
        let mut kept: Vec<Elem> = self
            .elems
            .drain(..)
            .zip(keep)
            .filter_map(|(e, k)| k.then_some(e))
            .collect();
        let order = self.order.clone();
        kept.sort_by(|a, b| order.cmp((&b.lm, b.comp), (&a.lm, a.comp)));
        let mut red = Engine::new(
            self.nvars,
            self.order.clone(),
            self.rank(),
            self.track,
            self.ideal.clone(),
        );
        red.stats = self.stats.clone();
        for e in &kept {
            red.push_elem(e.clone());
        }
        // tail reduction against the other minimal elements
        for k in 0..red.elems.len() {
            if red.elems[k].layer {
                continue;
            }
            let e = red.elems[k].clone();
            let lead = e.v.terms[0].clone();
            let tail = SVec { terms: e.v.terms[1..].to_vec() };
            let tail_rep = e.rep.clone();
            let (t, rep) = red.reduce_impl(tail, tail_rep, true, Some(k));
            let mut v = SVec { terms: std::iter::once(lead).chain(t.terms).collect() };
            let s = v.make_primitive();
            let rep = rep.map(|mut r| {
                r.scale(&s);
                red.reduce_rep_mod_ideal(&mut r);
                r
            });
            red.elems[k] = Elem::new(v, rep, e.seed, e.layer, e.sugar);
        }
        super::audit::record(&red);
        red
    }

    /// Checks the Buchberger criterion: every S-pair reduces to zero.
    pub fn satisfies_criterion(&self) -> bool {
        for comp in 0..self.rank() {
            let idx = &self.by_comp[comp];
            for (a, &i) in idx.iter().enumerate() {
                for &j in &idx[..a] {
                    let lcm = self.elems[i].lm.lcm(&self.elems[j].lm);
                    let (s, _) = self.spoly(i, j, &lcm);
                    let (h, _) = self.reduce(s, None, false);
                    if !h.is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Full reduction of a vector modulo `I * F` where `I` has the given reduced
/// basis (rank-one vectors in component 0).
pub(crate) fn reduce_mod_ideal(v: &SVec, ideal: &[SVec], order: &ModuleOrder) -> SVec {
    let mut done: Vec<Term> = Vec::new();
    let mut h = v.terms.clone();
    let mut head = 0usize;
    while head < h.len() {
        let (mon, comp, coef) = (h[head].mon.clone(), h[head].comp, h[head].coef.clone());
        match ideal.iter().find(|g| g.terms[0].mon.divides(&mon)) {
            Some(g) => {
                let q = g.terms[0].mon.quotient_of(&mon).unwrap();
                let c = -(&coef / &g.terms[0].coef);
                let mut shifted = g.clone();
                for s in &mut shifted.terms {
                    s.comp = comp;
                }
                let mut rest = SVec { terms: h.split_off(head + 1) };
                h.truncate(head);
                done.append(&mut h);
                rest.add_mul(&c, &q, &shifted, 1, order);
                h = rest.terms;
                head = 0;
            }
            None => head += 1,
        }
    }
    done.append(&mut h);
    SVec { terms: done }
}
