use std::fmt;

use crate::error::{AlgebraError, Result};
use crate::groebner::{module_kernel, same_ring, FreeModuleElem, PolyMatrix, Ring, Submodule};
use crate::modules::jacobian;
use crate::poly::Polynomial;

/// `sum_i a_i d/dx_i`, a derivation of `A` (its coefficient vector lies in
/// the kernel of the Jacobian).
#[derive(Clone)]
pub struct Derivation {
    ring: Ring,
    coeffs: Vec<Polynomial>,
}

impl Derivation {
    pub fn new(ring: &Ring, coeffs: Vec<Polynomial>) -> Result<Self> {
        if coeffs.len() != ring.nvars() {
            return Err(AlgebraError::VariableCountMismatch(ring.nvars(), coeffs.len()));
        }
        for c in &coeffs {
            ring.check(c)?;
        }
        let d = Self::new_unchecked(ring, coeffs);
        for f in ring.ideal_gens() {
            if !d.apply(f).is_zero() {
                return Err(AlgebraError::InvalidParameters(format!(
                    "{d} does not preserve the ideal (image of {} is nonzero)",
                    ring.fmt_poly(f)
                )));
            }
        }
        Ok(d)
    }

    pub(crate) fn new_unchecked(ring: &Ring, coeffs: Vec<Polynomial>) -> Self {
        let coeffs = coeffs.iter().map(|c| ring.reduce(c)).collect();
        Derivation { ring: ring.clone(), coeffs }
    }

    /// `d/dx_i`; fails unless it preserves the ideal.
    pub fn partial(ring: &Ring, i: usize) -> Result<Self> {
        Self::new(ring, FreeModuleElem::basis(ring, ring.nvars(), i).into_components())
    }

    /// Parses the coefficient list, e.g. `["3*x", "4*y", "5*z"]`.
    pub fn parse(ring: &Ring, coeffs: &[&str]) -> Result<Self> {
        let cs = coeffs.iter().map(|s| ring.parse(s)).collect::<Result<Vec<_>>>()?;
        Self::new(ring, cs)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn as_elem(&self) -> FreeModuleElem {
        FreeModuleElem::new(self.coeffs.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// `D(f)` reduced modulo the ideal.
    pub fn apply(&self, f: &Polynomial) -> Polynomial {
        let d = Polynomial::apply_derivation(&self.coeffs, f).expect("ring checked");
        self.ring.reduce(&d)
    }

    /// Entrywise application.
    pub fn apply_matrix(&self, m: &PolyMatrix) -> PolyMatrix {
        m.map(|p| self.apply(p))
    }

    pub fn apply_elem(&self, v: &FreeModuleElem) -> FreeModuleElem {
        FreeModuleElem::new(v.components().iter().map(|p| self.apply(p)).collect())
    }

    pub fn scale(&self, f: &Polynomial) -> Derivation {
        Self::new_unchecked(&self.ring, self.coeffs.iter().map(|c| c * f).collect())
    }

    pub fn add(&self, other: &Derivation) -> Derivation {
        let cs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Self::new_unchecked(&self.ring, cs)
    }

    pub fn sub(&self, other: &Derivation) -> Derivation {
        let cs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Self::new_unchecked(&self.ring, cs)
    }

    /// Equality as derivations of `A`.
    pub fn equals(&self, other: &Derivation) -> bool {
        self.sub(other).is_zero()
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let s = self.ring.fmt_poly(c);
            let var = &self.ring.vars()[i];
            let body = if c.is_one() {
                format!("d/d{var}")
            } else if c.len() > 1 {
                format!("({s})*d/d{var}")
            } else {
                format!("{s}*d/d{var}")
            };
            match (first, body.strip_prefix('-')) {
                (true, _) => write!(f, "{body}")?,
                (false, Some(rest)) => write!(f, " - {rest}")?,
                (false, None) => write!(f, " + {body}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A module of derivations given by generators, with the relations among
/// them (`presentation`, one column per relation).
#[derive(Clone, Debug)]
pub struct DerModule {
    ring: Ring,
    generators: Vec<Derivation>,
    presentation: PolyMatrix,
    span: Submodule,
}

impl DerModule {
    /// Wraps the given generators and computes their relations.
    pub fn from_generators(ring: &Ring, generators: Vec<Derivation>) -> Result<Self> {
        for d in &generators {
            same_ring(ring, &d.ring)?;
        }
        let n = ring.nvars();
        let elems: Vec<FreeModuleElem> = generators.iter().map(|d| d.as_elem()).collect();
        let span = Submodule::new(ring, n, elems)?;
        let presentation = if generators.is_empty() {
            PolyMatrix::zeros(ring, 0, 0)
        } else {
            let syz = module_kernel(&span.generator_matrix()).pruned();
            if syz.generators().is_empty() {
                PolyMatrix::zeros(ring, generators.len(), 0)
            } else {
                syz.generator_matrix()
            }
        };
        Ok(DerModule { ring: ring.clone(), generators, presentation, span })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Derivation] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Relations `(c_ij)`: `sum_i c_ij D_i = 0` for every column `j`.
    pub fn presentation(&self) -> &PolyMatrix {
        &self.presentation
    }

    /// Coefficient vectors of the generators as a submodule of `A^n`.
    pub fn span(&self) -> &Submodule {
        &self.span
    }

    pub fn contains(&self, d: &Derivation) -> Result<bool> {
        self.span.contains(&d.as_elem())
    }

    /// `sum_i c_i D_i`.
    pub fn combine(&self, c: &[Polynomial]) -> Derivation {
        let mut acc = Derivation::new_unchecked(&self.ring, vec![self.ring.zero(); self.ring.nvars()]);
        for (ci, d) in c.iter().zip(&self.generators) {
            if !ci.is_zero() {
                acc = acc.add(&d.scale(ci));
            }
        }
        acc
    }
}

/// Generators of `Der_k(A)`, the kernel of the Jacobian.
pub fn der(ring: &Ring) -> Result<DerModule> {
    let n = ring.nvars();
    let gens: Vec<FreeModuleElem> = if ring.ideal_gens().is_empty() {
        (0..n).map(|i| FreeModuleElem::basis(ring, n, i)).collect()
    } else {
        module_kernel(&jacobian(ring)?).pruned().generators().to_vec()
    };
    let ders = gens
        .into_iter()
        .map(|g| Derivation::new_unchecked(ring, g.into_components()))
        .filter(|d| !d.is_zero())
        .collect();
    DerModule::from_generators(ring, ders)
}

/// `[D, E]`, with `[D, E]_k = D(E_k) - E(D_k)`.
pub fn lie_bracket(d: &Derivation, e: &Derivation) -> Result<Derivation> {
    same_ring(&d.ring, &e.ring)?;
    let coeffs = d
        .coeffs
        .iter()
        .zip(&e.coeffs)
        .map(|(dk, ek)| &d.apply(ek) - &e.apply(dk))
        .collect();
    Ok(Derivation::new_unchecked(&d.ring, coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::QuotientRing;
    use crate::monomial::MonomialOrder;

    fn ring(vars: &[&str], ideal: &[&str]) -> Ring {
        QuotientRing::from_strings(vars, MonomialOrder::DegRevLex, ideal).unwrap()
    }

    #[test]
    fn der_of_smooth_ring_is_free() {
        let r = ring(&["x", "y"], &[]);
        let d = der(&r).unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(d.presentation().ncols(), 0);
    }

    #[test]
    fn der_of_conic() {
        let r = ring(&["x", "y"], &["x^2+y^2"]);
        let d = der(&r).unwrap();
        let expected = [Derivation::parse(&r, &["y", "-x"]).unwrap(), Derivation::parse(&r, &["x", "y"]).unwrap()];
        for e in &expected {
            assert!(d.contains(e).unwrap());
        }
        for g in d.generators() {
            let span = Submodule::new(&r, 2, expected.iter().map(|e| e.as_elem()).collect()).unwrap();
            assert!(span.contains(&g.as_elem()).unwrap());
        }
    }

    #[test]
    fn non_derivation_rejected() {
        let r = ring(&["x", "y"], &["x^2+y^2"]);
        assert!(Derivation::partial(&r, 0).is_err());
    }

    #[test]
    fn brackets() {
        let r = ring(&["x", "y"], &[]);
        let dx = Derivation::partial(&r, 0).unwrap();
        let dy = Derivation::partial(&r, 1).unwrap();
        assert!(lie_bracket(&dx, &dy).unwrap().is_zero());
        let xdx = Derivation::parse(&r, &["x", "0"]).unwrap();
        let b = lie_bracket(&xdx, &dx).unwrap();
        assert!(b.equals(&dx.scale(&r.parse("-1").unwrap())));
        assert_eq!(xdx.to_string(), "x*d/dx");
        assert_eq!(Derivation::parse(&r, &["y", "-x"]).unwrap().to_string(), "y*d/dx - x*d/dy");
    }
}
