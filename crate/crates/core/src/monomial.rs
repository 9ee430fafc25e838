//! Exponent vectors and global monomial orders.

use std::cmp::Ordering;
use std::sync::Arc;

use smallvec::SmallVec;

use crate::error::AlgebraError;

pub type Exponent = u16;

/// A monomial `x_0^{e_0} ... x_{n-1}^{e_{n-1}}` stored as its exponent vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial {
    exps: SmallVec<[Exponent; 8]>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial { exps: SmallVec::from_elem(0, nvars) }
    }

    pub fn from_exponents(exps: &[Exponent]) -> Self {
        Monomial { exps: SmallVec::from_slice(exps) }
    }

    /// The monomial `x_var^power`.
    pub fn var(nvars: usize, var: usize, power: Exponent) -> Self {
        let mut m = Self::one(nvars);
        m.exps[var] = power;
        m
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[Exponent] {
        &self.exps
    }

    pub fn exponent(&self, var: usize) -> Exponent {
        self.exps[var]
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial, AlgebraError> {
        if self.nvars() != other.nvars() {
            return Err(AlgebraError::VariableCountMismatch(self.nvars(), other.nvars()));
        }
        let mut exps = SmallVec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            exps.push(a.checked_add(*b).ok_or(AlgebraError::ExponentOverflow)?);
        }
        Ok(Monomial { exps })
    }

    /// Product; panics on exponent overflow or length mismatch.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.checked_mul(other).expect("monomial product overflow")
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        let mut exps = SmallVec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            exps.push(b.checked_sub(*a)?);
        }
        Some(Monomial { exps })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect(),
        }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Divide by `x_var` once (for differentiation); `None` if absent.
    pub(crate) fn lower(&self, var: usize) -> Option<Monomial> {
        if self.exps[var] == 0 {
            return None;
        }
        let mut m = self.clone();
        m.exps[var] -= 1;
        Some(m)
    }

    /// Bit signature for fast non-divisibility rejection: bit `i` is set iff
    /// variable `i mod 64` occurs.
    pub(crate) fn divmask(&self) -> u64 {
        let mut mask = 0u64;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                mask |= 1 << (i % 64);
            }
        }
        mask
    }
}

/// A global monomial order on `k[x_0, ..., x_{n-1}]` with `x_0 > x_1 > ...`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Pure lexicographic (`lp`).
    Lex,
    /// Degree reverse lexicographic (`dp`).
    DegRevLex,
    /// Weighted degree, ties broken by reverse lexicographic (`wp`).
    WeightedDegRevLex(Arc<[u32]>),
}

impl MonomialOrder {
    pub fn weighted(weights: &[u32]) -> Result<Self, AlgebraError> {
        if weights.contains(&0) {
            return Err(AlgebraError::InvalidOrder("weights must be positive".into()));
        }
        Ok(MonomialOrder::WeightedDegRevLex(weights.into()))
    }

    /// The degree used by the order (0 for lex).
    pub fn degree(&self, m: &Monomial) -> u64 {
        match self {
            MonomialOrder::Lex => 0,
            MonomialOrder::DegRevLex => m.total_degree() as u64,
            MonomialOrder::WeightedDegRevLex(w) => m
                .exps
                .iter()
                .zip(w.iter().chain(std::iter::repeat(&1)))
                .map(|(&e, &w)| e as u64 * w as u64)
                .sum(),
        }
    }

    /// Selection degree for pair ordering (total degree for lex).
    pub(crate) fn sugar_degree(&self, m: &Monomial) -> u64 {
        match self {
            MonomialOrder::Lex => m.total_degree() as u64,
            _ => self.degree(m),
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            _ => self.degree(a).cmp(&self.degree(b)).then_with(|| {
                for (x, y) in a.exps.iter().zip(&b.exps).rev() {
                    match x.cmp(y) {
                        Ordering::Equal => continue,
                        // smaller exponent in the last variable wins
                        o => return o.reverse(),
                    }
                }
                Ordering::Equal
            }),
        }
    }

    /// Singular-style name: `lp`, `dp`, or `wp(w1,...,wn)`.
    pub fn name(&self) -> String {
        match self {
            MonomialOrder::Lex => "lp".into(),
            MonomialOrder::DegRevLex => "dp".into(),
            MonomialOrder::WeightedDegRevLex(w) => {
                let ws: Vec<String> = w.iter().map(|x| x.to_string()).collect();
                format!("wp({})", ws.join(","))
            }
        }
    }
}

/// Term-over-position order on free-module terms `m * e_c`, optionally with
/// the components `< elim` forming a block that dominates all others.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleOrder {
    pub base: MonomialOrder,
    pub elim: Option<u32>,
}

impl ModuleOrder {
    pub fn top(base: MonomialOrder) -> Self {
        ModuleOrder { base, elim: None }
    }

    pub fn elimination(base: MonomialOrder, block: u32) -> Self {
        ModuleOrder { base, elim: Some(block) }
    }

    #[inline]
    pub fn cmp(&self, (m1, c1): (&Monomial, u32), (m2, c2): (&Monomial, u32)) -> Ordering {
        if let Some(k) = self.elim {
            let (b1, b2) = (c1 >= k, c2 >= k);
            if b1 != b2 {
                return if b1 { Ordering::Less } else { Ordering::Greater };
            }
        }
        self.base.cmp(m1, m2).then_with(|| c2.cmp(&c1))
    }
}
