use std::fmt;
use std::sync::Arc;

use super::engine::{reduce_mod_ideal, Engine};
use super::svec::SVec;
use crate::error::{AlgebraError, Result};
use crate::monomial::{ModuleOrder, MonomialOrder};
use crate::parse::parse_polynomial;
use crate::poly::Polynomial;
use crate::rational::Rational;

/// The algebra `A = k[x_1..x_n] / (F_1..F_m)` with a fixed reduced Gröbner
/// basis of the ideal.
pub struct QuotientRing {
    vars: Vec<String>,
    order: MonomialOrder,
    ideal_gens: Vec<Polynomial>,
    ideal_gb: Vec<Polynomial>,
    pub(crate) ideal_svecs: Vec<SVec>,
}

/// Shared handle; rings are immutable once built.
pub type Ring = Arc<QuotientRing>;

impl QuotientRing {
    pub fn new(vars: Vec<String>, order: MonomialOrder, ideal_gens: Vec<Polynomial>) -> Result<Ring> {
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(AlgebraError::InvalidParameters(format!("duplicate variable `{v}`")));
            }
        }
        if let MonomialOrder::WeightedDegRevLex(w) = &order {
            if w.len() != vars.len() {
                return Err(AlgebraError::InvalidOrder(format!(
                    "{} weights for {} variables",
                    w.len(),
                    vars.len()
                )));
            }
        }
        let n = vars.len();
        let mut gens = Vec::with_capacity(ideal_gens.len());
        for g in ideal_gens {
            if g.nvars() != n {
                return Err(AlgebraError::VariableCountMismatch(n, g.nvars()));
            }
            gens.push(g.with_order(&order));
        }
        let morder = ModuleOrder::top(order.clone());
        let mut eng = Engine::new(n, morder.clone(), 1, false, Vec::new());
        let mut sorted: Vec<&Polynomial> = gens.iter().filter(|g| !g.is_zero()).collect();
        sorted.sort_by(|a, b| order.cmp(&a.terms()[0].0, &b.terms()[0].0));
        for g in sorted {
            eng.add_generator(SVec::from_poly(g, 0, &morder), None);
        }
        let eng = eng.into_reduced();
        let ideal_svecs: Vec<SVec> = eng.elems.iter().map(|e| e.v.clone()).collect();
        let ideal_gb = ideal_svecs
            .iter()
            .map(|v| v.to_components(0, 1, n, &order).pop().unwrap())
            .collect();
        Ok(Arc::new(QuotientRing { vars, order, ideal_gens: gens, ideal_gb, ideal_svecs }))
    }

    /// The polynomial ring itself (zero ideal).
    pub fn polynomial_ring(vars: Vec<String>, order: MonomialOrder) -> Result<Ring> {
        Self::new(vars, order, Vec::new())
    }

    /// Parses the variable list and ideal generators from text.
    pub fn from_strings(vars: &[&str], order: MonomialOrder, ideal: &[&str]) -> Result<Ring> {
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let gens = ideal
            .iter()
            .map(|s| parse_polynomial(s, &vars, &order))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Self::new(vars, order, gens)
    }

    /// Same ring under a different monomial order.
    pub fn with_order(&self, order: MonomialOrder) -> Result<Ring> {
        Self::new(self.vars.clone(), order, self.ideal_gens.clone())
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn ideal_gens(&self) -> &[Polynomial] {
        &self.ideal_gens
    }

    pub fn ideal_gb(&self) -> &[Polynomial] {
        &self.ideal_gb
    }

    pub fn is_polynomial_ring(&self) -> bool {
        self.ideal_gb.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.ideal_gb.iter().any(|g| g.is_nonzero_constant())
    }

    pub fn parse(&self, s: &str) -> Result<Polynomial> {
        Ok(parse_polynomial(s, &self.vars, &self.order)?)
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero(self.nvars(), self.order.clone())
    }

    pub fn one(&self) -> Polynomial {
        Polynomial::one(self.nvars(), self.order.clone())
    }

    pub fn constant(&self, c: Rational) -> Polynomial {
        Polynomial::constant(self.nvars(), self.order.clone(), c)
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial::var(self.nvars(), self.order.clone(), i)
    }

    pub(crate) fn module_order(&self) -> ModuleOrder {
        ModuleOrder::top(self.order.clone())
    }

    /// Normal form modulo the ideal.
    pub fn reduce(&self, p: &Polynomial) -> Polynomial {
        if self.ideal_svecs.is_empty() || p.is_zero() {
            return p.clone();
        }
        let o = self.module_order();
        let v = reduce_mod_ideal(&SVec::from_poly(p, 0, &o), &self.ideal_svecs, &o);
        v.to_components(0, 1, self.nvars(), &self.order).pop().unwrap()
    }

    /// Whether `p` is zero in `A`.
    pub fn is_zero(&self, p: &Polynomial) -> bool {
        self.reduce(p).is_zero()
    }

    pub fn check(&self, p: &Polynomial) -> Result<()> {
        if p.nvars() != self.nvars() {
            return Err(AlgebraError::VariableCountMismatch(self.nvars(), p.nvars()));
        }
        if p.order() != &self.order {
            return Err(AlgebraError::OrderMismatch);
        }
        Ok(())
    }

    pub fn fmt_poly(&self, p: &Polynomial) -> String {
        p.display(&self.vars).to_string()
    }
}

impl PartialEq for QuotientRing {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars && self.order == other.order && self.ideal_gb == other.ideal_gb
    }
}

impl Eq for QuotientRing {}

impl fmt::Debug for QuotientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QQ[{}]", self.vars.join(","))?;
        if !self.ideal_gens.is_empty() {
            let gens: Vec<String> = self.ideal_gens.iter().map(|g| self.fmt_poly(g)).collect();
            write!(f, "/({})", gens.join(", "))?;
        }
        write!(f, " [{}]", self.order.name())
    }
}

pub(crate) fn same_ring(a: &Ring, b: &Ring) -> Result<()> {
    if Arc::ptr_eq(a, b) || **a == **b {
        Ok(())
    } else {
        Err(AlgebraError::RingMismatch)
    }
}
