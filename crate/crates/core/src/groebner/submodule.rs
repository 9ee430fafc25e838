use std::fmt;
use std::sync::{Arc, OnceLock};

use super::engine::{Engine, EngineStats};
use super::matrix::{FreeModuleElem, PolyMatrix};
use super::ring::{same_ring, Ring};
use super::svec::SVec;
use crate::error::{AlgebraError, Result};
use crate::monomial::ModuleOrder;

/// A submodule of `A^rank` given by generators. Gröbner bases are computed
/// on first use and cached.
#[derive(Clone)]
pub struct Submodule {
    ring: Ring,
    rank: usize,
    gens: Vec<FreeModuleElem>,
    gb: OnceLock<Arc<Engine>>,
    lift: OnceLock<Arc<Engine>>,
}

pub(crate) fn to_svec(v: &FreeModuleElem, offset: u32, order: &ModuleOrder) -> SVec {
    SVec::from_components(v.components(), offset, order)
}

pub(crate) fn from_svec(ring: &Ring, v: &SVec, lo: u32, count: usize) -> FreeModuleElem {
    FreeModuleElem::new(v.to_components(lo, count, ring.nvars(), ring.order()))
}

fn lead_cmp_key(ring: &Ring, gens: &[FreeModuleElem]) -> Vec<usize> {
    let o = ring.module_order();
    let svs: Vec<SVec> = gens.iter().map(|g| to_svec(g, 0, &o)).collect();
    let mut idx: Vec<usize> = (0..gens.len()).filter(|&i| !svs[i].is_zero()).collect();
    idx.sort_by(|&a, &b| {
        let (ta, tb) = (svs[a].lead().unwrap(), svs[b].lead().unwrap());
        o.cmp((&ta.mon, ta.comp), (&tb.mon, tb.comp)).then(a.cmp(&b))
    });
    idx
}

fn build_engine(ring: &Ring, rank: usize, gens: &[FreeModuleElem], track: bool) -> Engine {
    let o = ring.module_order();
    let mut eng = Engine::new(ring.nvars(), o.clone(), rank, track, ring.ideal_svecs.clone());
    eng.add_ideal_layer(0..rank as u32);
    let one = ring.one();
    for i in lead_cmp_key(ring, gens) {
        let rep = track.then(|| SVec::from_poly(&one, i as u32, &eng.rep_order));
        eng.add_generator(to_svec(&gens[i], 0, &o), rep);
    }
    eng.into_reduced()
}

impl Submodule {
    pub fn new(ring: &Ring, rank: usize, gens: Vec<FreeModuleElem>) -> Result<Self> {
        for g in &gens {
            if g.rank() != rank {
                return Err(AlgebraError::RankMismatch { expected: rank, found: g.rank() });
            }
            for p in g.components() {
                ring.check(p)?;
            }
        }
        Ok(Self::new_unchecked(ring, rank, gens))
    }

    fn new_unchecked(ring: &Ring, rank: usize, gens: Vec<FreeModuleElem>) -> Self {
        Submodule { ring: ring.clone(), rank, gens, gb: OnceLock::new(), lift: OnceLock::new() }
    }

    /// Submodule generated by the columns of `m`.
    pub fn from_columns(m: &PolyMatrix) -> Self {
        Self::new_unchecked(m.ring(), m.nrows(), m.columns())
    }

    pub fn zero(ring: &Ring, rank: usize) -> Self {
        Self::new_unchecked(ring, rank, Vec::new())
    }

    pub fn full(ring: &Ring, rank: usize) -> Self {
        let gens = (0..rank).map(|i| FreeModuleElem::basis(ring, rank, i)).collect();
        Self::new_unchecked(ring, rank, gens)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> &[FreeModuleElem] {
        &self.gens
    }

    /// Generators as the columns of a `rank x n` matrix.
    pub fn generator_matrix(&self) -> PolyMatrix {
        PolyMatrix::from_columns(&self.ring, self.rank, &self.gens).expect("ranks checked")
    }

    pub(crate) fn engine(&self) -> &Engine {
        self.gb.get_or_init(|| Arc::new(build_engine(&self.ring, self.rank, &self.gens, false)))
    }

    fn lift_engine(&self) -> &Engine {
        self.lift.get_or_init(|| Arc::new(build_engine(&self.ring, self.rank, &self.gens, true)))
    }

    /// The reduced Gröbner basis (elements of the ideal layer `I * A^rank`
    /// omitted), sorted by leading term, largest first.
    pub fn groebner_basis(&self) -> Vec<FreeModuleElem> {
        self.engine()
            .elems
            .iter()
            .filter(|e| !e.layer)
            .map(|e| from_svec(&self.ring, &e.v, 0, self.rank))
            .collect()
    }

    pub fn stats(&self) -> EngineStats {
        self.engine().stats.clone()
    }

    /// Whether every S-pair of the cached basis reduces to zero.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        self.engine().satisfies_criterion()
    }

    fn check_elem(&self, v: &FreeModuleElem) -> Result<()> {
        if v.rank() != self.rank {
            return Err(AlgebraError::RankMismatch { expected: self.rank, found: v.rank() });
        }
        for p in v.components() {
            self.ring.check(p)?;
        }
        Ok(())
    }

    /// Canonical remainder of `v` modulo the submodule (and the ideal).
    pub fn normal_form(&self, v: &FreeModuleElem) -> Result<FreeModuleElem> {
        self.check_elem(v)?;
        let eng = self.engine();
        let (h, _) = eng.reduce(to_svec(v, 0, &eng.order), None, true);
        Ok(from_svec(&self.ring, &h, 0, self.rank))
    }

    pub fn contains(&self, v: &FreeModuleElem) -> Result<bool> {
        self.check_elem(v)?;
        let eng = self.engine();
        let (h, _) = eng.reduce(to_svec(v, 0, &eng.order), None, false);
        Ok(h.is_zero())
    }

    /// Coefficients `c` with `v = sum_i c_i * gens[i]` in `A^rank`.
    pub fn lift_with_witness(&self, v: &FreeModuleElem) -> Result<Vec<crate::poly::Polynomial>> {
        self.check_elem(v)?;
        let eng = self.lift_engine();
        let (h, rep) = eng.reduce(to_svec(v, 0, &eng.order), Some(SVec::new()), true);
        if !h.is_zero() {
            return Err(AlgebraError::NotInSubmodule);
        }
        let mut rep = rep.unwrap_or_default();
        rep.scale(&-crate::rational::Rational::one());
        eng.reduce_rep_mod_ideal(&mut rep);
        Ok(from_svec(&self.ring, &rep, 0, self.gens.len()).into_components())
    }

    pub fn is_subset_of(&self, other: &Submodule) -> Result<bool> {
        same_ring(&self.ring, &other.ring)?;
        for g in &self.gens {
            if !other.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality as submodules of `A^rank`.
    pub fn equals(&self, other: &Submodule) -> Result<bool> {
        if self.rank != other.rank {
            return Err(AlgebraError::RankMismatch { expected: self.rank, found: other.rank });
        }
        Ok(self.is_subset_of(other)? && other.is_subset_of(self)?)
    }

    /// Whether the submodule is all of `A^rank`.
    pub fn is_full(&self) -> bool {
        (0..self.rank).all(|i| self.contains(&FreeModuleElem::basis(&self.ring, self.rank, i)).unwrap())
    }

    /// Whether the submodule is zero in `A^rank`.
    pub fn is_zero(&self) -> bool {
        self.gens.iter().all(|g| g.is_zero_in(&self.ring))
    }

    /// The module of relations among the generators.
    pub fn syzygies(&self) -> Submodule {
        let m = self.generator_matrix();
        preimage(&m, &Submodule::zero(&self.ring, self.rank)).expect("shapes agree")
    }

    pub fn intersect(&self, other: &Submodule) -> Result<Submodule> {
        same_ring(&self.ring, &other.ring)?;
        let m = self.generator_matrix();
        let pre = preimage(&m, other)?;
        let gens = pre
            .generators()
            .iter()
            .map(|q| m.mul_vec(q))
            .collect::<Result<Vec<_>>>()?;
        Ok(Submodule::new_unchecked(&self.ring, self.rank, gens).pruned())
    }

    /// Same submodule with redundant generators dropped. Generators are
    /// visited by ascending degree and kept only when not already in the
    /// span of those kept before.
    pub fn pruned(&self) -> Submodule {
        let keep = prune_indices(&self.ring, self.rank, &self.gens, None);
        let gens = keep.into_iter().map(|i| self.gens[i].clone()).collect();
        let out = Submodule::new_unchecked(&self.ring, self.rank, gens);
        if let Some(e) = self.gb.get() {
            let _ = out.gb.set(e.clone());
        }
        out
    }

    /// Debug listing of the reduced basis, one element per line.
    pub fn dump(&self) -> String {
        self.groebner_basis()
            .iter()
            .map(|g| g.display(self.ring.vars()).to_string())
            .collect::<Vec<_>>()
            .join("\n")
    }
}

impl fmt::Debug for Submodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.gens.iter().map(|g| g.display(self.ring.vars()).to_string()).collect();
        write!(f, "<{}> in A^{}", gens.join(", "), self.rank)
    }
}

/// Indices of a generating subset of `gens` modulo `base` (or modulo zero).
pub(crate) fn prune_indices(
    ring: &Ring,
    rank: usize,
    gens: &[FreeModuleElem],
    base: Option<&Submodule>,
) -> Vec<usize> {
    let o = ring.module_order();
    let mut eng = Engine::new(ring.nvars(), o.clone(), rank, false, ring.ideal_svecs.clone());
    match base {
        Some(b) => {
            for e in &b.engine().elems {
                eng.add_seed(e.v.clone(), None, e.layer);
            }
        }
        None => eng.add_ideal_layer(0..rank as u32),
    }
    let mut idx: Vec<usize> = (0..gens.len()).collect();
    let svs: Vec<SVec> = gens.iter().map(|g| to_svec(g, 0, &o)).collect();
    idx.sort_by_key(|&i| (gens[i].degree(), svs[i].terms.len(), i));
    let mut keep = Vec::new();
    for i in idx {
        eng.complete();
        if !eng.add_generator(svs[i].clone(), None) {
            keep.push(i);
        }
    }
    keep.sort_unstable();
    keep
}

/// Generators `gens` minus those redundant modulo `base`.
pub fn prune_modulo(gens: &[FreeModuleElem], base: &Submodule) -> Vec<FreeModuleElem> {
    prune_indices(&base.ring, base.rank, gens, Some(base))
        .into_iter()
        .map(|i| gens[i].clone())
        .collect()
}

/// `{ v in A^p : f v in target }` for `f : A^p -> A^r`, computed by
/// elimination in `A^r (+) A^p`.
pub fn preimage(f: &PolyMatrix, target: &Submodule) -> Result<Submodule> {
    same_ring(f.ring(), target.ring())?;
    let ring = f.ring().clone();
    let (r, p) = (f.nrows(), f.ncols());
    if target.rank() != r {
        return Err(AlgebraError::RankMismatch { expected: r, found: target.rank() });
    }
    let order = ModuleOrder::elimination(ring.order().clone(), r as u32);
    let mut eng = Engine::new(ring.nvars(), order.clone(), r + p, false, ring.ideal_svecs.clone());
    for e in &target.engine().elems {
        let mut v = e.v.clone();
        v.resort(&order);
        eng.add_seed(v, None, e.layer);
    }
    eng.add_ideal_layer(r as u32..(r + p) as u32);
    let one = ring.one();
    for j in 0..p {
        let mut v = to_svec(&f.column(j), 0, &order);
        v.add(&SVec::from_poly(&one, (r + j) as u32, &order), &order, ring.nvars());
        eng.add_generator(v, None);
    }
    let eng = eng.into_reduced();
    let top = ring.module_order();
    let mut block = Engine::new(ring.nvars(), top.clone(), p, false, ring.ideal_svecs.clone());
    let mut gens = Vec::new();
    for e in &eng.elems {
        if (e.comp as usize) < r {
            continue;
        }
        let mut v = e.v.clone();
        for t in &mut v.terms {
            t.comp -= r as u32;
        }
        if !e.layer {
            gens.push(from_svec(&ring, &v, 0, p));
        }
        block.add_seed(v, None, e.layer);
    }
    let out = Submodule::new_unchecked(&ring, p, gens);
    let _ = out.gb.set(Arc::new(block));
    Ok(out)
}

/// Kernel of `f : A^p -> A^r`.
pub fn module_kernel(f: &PolyMatrix) -> Submodule {
    preimage(f, &Submodule::zero(f.ring(), f.nrows())).expect("shapes agree")
}

/// Relations among the columns of `m`, pruned, as the columns of a matrix.
pub fn syzygy_matrix(m: &PolyMatrix) -> PolyMatrix {
    module_kernel(m).pruned().generator_matrix()
}

/// Reduced Gröbner basis of the submodule generated by `gens`.
pub fn buchberger(ring: &Ring, rank: usize, gens: Vec<FreeModuleElem>) -> Result<Submodule> {
    let m = Submodule::new(ring, rank, gens)?;
    m.engine();
    Ok(m)
}

pub fn normal_form(v: &FreeModuleElem, gb: &Submodule) -> Result<FreeModuleElem> {
    gb.normal_form(v)
}

pub fn lift_with_witness(v: &FreeModuleElem, gens: &Submodule) -> Result<Vec<crate::poly::Polynomial>> {
    gens.lift_with_witness(v)
}

pub fn syzygy_module(gens: &Submodule) -> Submodule {
    gens.syzygies()
}

pub fn submodule_equal(u: &Submodule, v: &Submodule) -> Result<bool> {
    u.equals(v)
}
