//! Sparse distributed multivariate polynomials over the rationals.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{AlgebraError, Result};
use crate::monomial::{Exponent, Monomial, MonomialOrder};
use crate::rational::Rational;

/// A polynomial whose terms are kept strictly descending in `order`, with no
/// zero coefficients. The empty term list is zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    order: MonomialOrder,
    terms: Vec<(Monomial, Rational)>,
}

impl Polynomial {
    pub fn zero(nvars: usize, order: MonomialOrder) -> Self {
        Polynomial { nvars, order, terms: Vec::new() }
    }

    pub fn constant(nvars: usize, order: MonomialOrder, c: Rational) -> Self {
        let mut p = Self::zero(nvars, order);
        if !c.is_zero() {
            p.terms.push((Monomial::one(nvars), c));
        }
        p
    }

    pub fn one(nvars: usize, order: MonomialOrder) -> Self {
        Self::constant(nvars, order, Rational::one())
    }

    pub fn var(nvars: usize, order: MonomialOrder, var: usize) -> Self {
        Self::monomial(nvars, order, Monomial::var(nvars, var, 1), Rational::one())
    }

    pub fn monomial(nvars: usize, order: MonomialOrder, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.nvars(), nvars);
        let mut p = Self::zero(nvars, order);
        if !c.is_zero() {
            p.terms.push((m, c));
        }
        p
    }

    /// Builds a canonical polynomial from arbitrary terms: sorts, merges
    /// duplicates, drops zeros.
    pub fn from_terms(
        nvars: usize,
        order: MonomialOrder,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Result<Self> {
        let mut ts: Vec<(Monomial, Rational)> = Vec::new();
        for (m, c) in terms {
            if m.nvars() != nvars {
                return Err(AlgebraError::VariableCountMismatch(nvars, m.nvars()));
            }
            ts.push((m, c));
        }
        ts.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, Rational)> = Vec::with_capacity(ts.len());
        for (m, c) in ts {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = &*lc + &c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Ok(Polynomial { nvars, order, terms: out })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Rational)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    /// Nonzero constant (a unit of the polynomial ring).
    pub fn is_nonzero_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn leading_term(&self) -> Option<&(Monomial, Rational)> {
        self.terms.first()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.total_degree()).max()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Same polynomial, re-sorted for another monomial order.
    pub fn with_order(&self, order: &MonomialOrder) -> Polynomial {
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Polynomial { nvars: self.nvars, order: order.clone(), terms }
    }

    fn check_compatible(&self, other: &Polynomial) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(AlgebraError::VariableCountMismatch(self.nvars, other.nvars));
        }
        if self.order != other.order {
            return Err(AlgebraError::OrderMismatch);
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(other)?;
        Ok(self.merge(other, true))
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match self.order.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for t in &b[j..] {
            let c = if negate { -&t.1 } else { t.1.clone() };
            out.push((t.0.clone(), c));
        }
        Polynomial { nvars: self.nvars, order: self.order.clone(), terms: out }
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(self.nvars, self.order.clone()));
        }
        let mut acc = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                acc.push((m1.checked_mul(m2)?, c1 * c2));
            }
        }
        Polynomial::from_terms(self.nvars, self.order.clone(), acc)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars, self.order.clone());
        }
        Polynomial {
            nvars: self.nvars,
            order: self.order.clone(),
            terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect(),
        }
    }

    /// `c * m * self`; multiplication by a monomial preserves term order.
    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars, self.order.clone());
        }
        Polynomial {
            nvars: self.nvars,
            order: self.order.clone(),
            terms: self.terms.iter().map(|(n, d)| (n.mul(m), d * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut r = Polynomial::one(self.nvars, self.order.clone());
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    /// Formal partial derivative with respect to variable `var`.
    pub fn partial_derivative(&self, var: usize) -> Result<Polynomial> {
        if var >= self.nvars {
            return Err(AlgebraError::VariableIndexOutOfRange { index: var, nvars: self.nvars });
        }
        let terms = self.terms.iter().filter_map(|(m, c)| {
            let e = m.exponent(var);
            m.lower(var).map(|n| (n, c * &Rational::from_int(e as i64)))
        });
        // lowering one variable in every term is not order-preserving for
        // weighted orders, so re-sort.
        Polynomial::from_terms(self.nvars, self.order.clone(), terms)
    }

    /// `sum_i coeffs[i] * d f / d x_i`, not reduced modulo any ideal.
    pub fn apply_derivation(coeffs: &[Polynomial], f: &Polynomial) -> Result<Polynomial> {
        if coeffs.len() != f.nvars {
            return Err(AlgebraError::VariableCountMismatch(f.nvars, coeffs.len()));
        }
        let mut acc = Polynomial::zero(f.nvars, f.order.clone());
        for (i, a) in coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let d = f.partial_derivative(i)?;
            acc = acc.checked_add(&a.checked_mul(&d)?)?;
        }
        Ok(acc)
    }

    /// Substitute a polynomial ring with more variables: `map[i]` is the
    /// index of old variable `i` in the new ring.
    pub fn embed(&self, nvars: usize, map: &[usize], order: &MonomialOrder) -> Polynomial {
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0 as Exponent; nvars];
            for (i, &x) in m.exponents().iter().enumerate() {
                e[map[i]] = x;
            }
            (Monomial::from_exponents(&e), c.clone())
        });
        Polynomial::from_terms(nvars, order.clone(), terms).expect("embedding preserves arity")
    }

    /// Render with the given variable names in the shared text syntax.
    pub fn display<'a>(&'a self, vars: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { p: self, vars }
    }
}

pub struct PolyDisplay<'a> {
    p: &'a Polynomial,
    vars: &'a [String],
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.p.terms.iter().enumerate() {
            let neg = c.is_negative();
            if k > 0 {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            } else if neg {
                write!(f, "-")?;
            }
            let a = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if !a.is_one() || m.is_one() {
                factors.push(a.to_string());
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.vars[i].clone()),
                    _ => factors.push(format!("{}^{}", self.vars[i], e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars: Vec<String> = (0..self.nvars).map(|i| format!("x{i}")).collect();
        write!(f, "{}", self.display(&vars))
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("incompatible polynomials")
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("incompatible polynomials")
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("incompatible polynomials")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&Rational::from_int(-1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;
    use proptest::prelude::*;

    fn vars(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    fn p(s: &str, names: &[&str]) -> Polynomial {
        parse_polynomial(s, &vars(names), &MonomialOrder::DegRevLex).unwrap()
    }

    #[test]
    fn add_examples() {
        let xy = ["x", "y"];
        assert_eq!(&p("x+y", &xy) + &p("-x", &xy), p("y", &xy));
        assert_eq!(&Polynomial::zero(2, MonomialOrder::DegRevLex) + &p("x^2", &xy), p("x^2", &xy));
        // hand arithmetic: (x^2 + y/2) + y/2 = x^2 + y
        assert_eq!(&p("x^2+1/2*y", &xy) + &p("1/2*y", &xy), p("x^2+y", &xy));
    }

    #[test]
    fn mul_examples() {
        let xy = ["x", "y"];
        let f = p("x+y", &xy);
        let g = p("x-y", &xy);
        // schoolbook expansion: x*x + x*(-y) + y*x + y*(-y)
        let expected = Polynomial::from_terms(
            2,
            MonomialOrder::DegRevLex,
            vec![
                (Monomial::from_exponents(&[2, 0]), Rational::one()),
                (Monomial::from_exponents(&[1, 1]), Rational::from_int(-1)),
                (Monomial::from_exponents(&[1, 1]), Rational::one()),
                (Monomial::from_exponents(&[0, 2]), Rational::from_int(-1)),
            ],
        )
        .unwrap();
        assert_eq!(&f * &g, expected);
        assert_eq!(&f * &Polynomial::one(2, MonomialOrder::DegRevLex), f);
        assert!((&f * &Polynomial::zero(2, MonomialOrder::DegRevLex)).is_zero());
    }

    #[test]
    fn mismatched_rings_are_errors() {
        let a = p("x", &["x"]);
        let b = p("x", &["x", "y"]);
        assert_eq!(a.checked_add(&b), Err(AlgebraError::VariableCountMismatch(1, 2)));
        assert!(a.checked_mul(&b).is_err());
        let c = b.with_order(&MonomialOrder::Lex);
        assert_eq!(b.checked_add(&c), Err(AlgebraError::OrderMismatch));
    }

    #[test]
    fn partial_derivative_examples() {
        let xyz = ["x", "y", "z"];
        assert_eq!(p("x^3+y^3+z^3", &xyz).partial_derivative(0).unwrap(), p("3*x^2", &xyz));
        assert_eq!(p("x^2*y+y^3", &xyz).partial_derivative(1).unwrap(), p("x^2+3*y^2", &xyz));
        assert!(p("x^2+y^5", &xyz).partial_derivative(2).unwrap().is_zero());
        assert!(p("x", &xyz).partial_derivative(3).is_err());
    }

    #[test]
    fn apply_derivation_examples() {
        let xyz = ["x", "y", "z"];
        let euler = [p("3*x", &xyz), p("4*y", &xyz), p("5*z", &xyz)];
        let f = p("x*z-y^2", &xyz);
        // 3x*z + 5z*x - 4y*2y
        assert_eq!(Polynomial::apply_derivation(&euler, &f).unwrap(), p("8*x*z-8*y^2", &xyz));
        let zero = vec![Polynomial::zero(3, MonomialOrder::DegRevLex); 3];
        assert!(Polynomial::apply_derivation(&zero, &f).unwrap().is_zero());
        let xy = ["x", "y"];
        let dx = [p("1", &xy), p("0", &xy)];
        assert_eq!(Polynomial::apply_derivation(&dx, &p("x^2+y^2", &xy)).unwrap(), p("2*x", &xy));
        assert!(Polynomial::apply_derivation(&dx[..1], &p("x", &xy)).is_err());
    }

    #[test]
    fn display_roundtrip_samples() {
        let xyz = vars(&["x", "y", "z"]);
        for s in ["x^3+y^3+z^3", "3*x*z-2*y^2", "-1/2*x+7", "0", "-x*y*z^4+1"] {
            let f = parse_polynomial(s, &xyz, &MonomialOrder::DegRevLex).unwrap();
            let printed = f.display(&xyz).to_string();
            let g = parse_polynomial(&printed, &xyz, &MonomialOrder::DegRevLex).unwrap();
            assert_eq!(f, g, "{s} -> {printed}");
        }
    }

    fn arb_poly(nvars: usize) -> impl Strategy<Value = Polynomial> {
        prop::collection::vec(
            (prop::collection::vec(0u16..3, nvars), -5i64..6, 1i64..4),
            0..5,
        )
        .prop_map(move |ts| {
            Polynomial::from_terms(
                nvars,
                MonomialOrder::DegRevLex,
                ts.into_iter().map(|(e, n, d)| (Monomial::from_exponents(&e), Rational::new(n, d))),
            )
            .unwrap()
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(f in arb_poly(3), g in arb_poly(3), h in arb_poly(3)) {
            prop_assert_eq!(&(&f + &g) + &h, &f + &(&g + &h));
            prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
            prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
            prop_assert_eq!(&f * &g, &g * &f);
            prop_assert_eq!(&f + &g, &g + &f);
        }

        #[test]
        fn leibniz_rule(f in arb_poly(3), g in arb_poly(3), i in 0usize..3) {
            let lhs = (&f * &g).partial_derivative(i).unwrap();
            let rhs = &(&f * &g.partial_derivative(i).unwrap()) + &(&g * &f.partial_derivative(i).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn derivation_linearity(f in arb_poly(2), g in arb_poly(2), a in arb_poly(2),
                                d1 in prop::collection::vec(arb_poly(2), 2),
                                d2 in prop::collection::vec(arb_poly(2), 2)) {
            // k-linear in f
            let lhs = Polynomial::apply_derivation(&d1, &(&f + &g.scale(&Rational::new(3, 2)))).unwrap();
            let rhs = &Polynomial::apply_derivation(&d1, &f).unwrap()
                + &Polynomial::apply_derivation(&d1, &g).unwrap().scale(&Rational::new(3, 2));
            prop_assert_eq!(lhs, rhs);
            // A-linear in D
            let comb: Vec<Polynomial> = d1.iter().zip(&d2).map(|(u, v)| &(&a * u) + v).collect();
            let lhs = Polynomial::apply_derivation(&comb, &f).unwrap();
            let rhs = &(&a * &Polynomial::apply_derivation(&d1, &f).unwrap())
                + &Polynomial::apply_derivation(&d2, &f).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn print_parse_roundtrip(f in arb_poly(3)) {
            let names = vars(&["x", "y", "z"]);
            let s = f.display(&names).to_string();
            let g = parse_polynomial(&s, &names, &MonomialOrder::DegRevLex).unwrap();
            prop_assert_eq!(f, g);
        }
    }
}
