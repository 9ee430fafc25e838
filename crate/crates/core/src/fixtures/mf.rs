use std::fmt;

use crate::error::{AlgebraError, Result};
use crate::groebner::{PolyMatrix, QuotientRing, Ring};
use crate::modules::PresentedModule;
use crate::poly::Polynomial;

/// Square matrices `phi`, `psi` over a polynomial ring `S` with
/// `phi * psi = psi * phi = f * Id`.
#[derive(Clone)]
pub struct MatrixFactorization {
    ambient: Ring,
    f: Polynomial,
    phi: PolyMatrix,
    psi: PolyMatrix,
}

impl MatrixFactorization {
    /// Checks the factorization identity exactly and rejects factorizations
    /// with a unit entry (those split off a free summand or a trivial one).
    pub fn new(ambient: &Ring, f: Polynomial, phi: PolyMatrix, psi: PolyMatrix) -> Result<Self> {
        if !ambient.is_polynomial_ring() {
            return Err(AlgebraError::InvalidParameters("factorizations live over a polynomial ring".into()));
        }
        ambient.check(&f)?;
        let n = phi.nrows();
        if n == 0 || phi.ncols() != n || psi.nrows() != n || psi.ncols() != n {
            return Err(AlgebraError::Shape("factorization matrices must be square of equal size".into()));
        }
        for p in phi.entries().iter().chain(psi.entries()) {
            if p.terms().iter().any(|(m, _)| m.is_one()) {
                return Err(AlgebraError::InvalidParameters(
                    "degenerate factorization: an entry has a nonzero constant term".into(),
                ));
            }
        }
        let mf = MatrixFactorization { ambient: ambient.clone(), f, phi, psi };
        if !mf.satisfies_invariant()? {
            return Err(AlgebraError::InvalidParameters("phi * psi and psi * phi must both equal f * Id".into()));
        }
        Ok(mf)
    }

    /// Parses `f`, `phi` and `psi` over the polynomial ring on `vars`.
    pub fn parse(ambient: &Ring, f: &str, phi: &str, psi: &str) -> Result<Self> {
        Self::new(ambient, ambient.parse(f)?, PolyMatrix::parse(ambient, phi)?, PolyMatrix::parse(ambient, psi)?)
    }

    /// Entry-exact check of `phi psi = psi phi = f Id` over `S`.
    pub fn satisfies_invariant(&self) -> Result<bool> {
        let n = self.phi.nrows();
        let target = PolyMatrix::identity(&self.ambient, n).scale(&self.f);
        Ok(self.phi.mul(&self.psi)? == target && self.psi.mul(&self.phi)? == target)
    }

    pub fn ambient(&self) -> &Ring {
        &self.ambient
    }

    pub fn potential(&self) -> &Polynomial {
        &self.f
    }

    pub fn phi(&self) -> &PolyMatrix {
        &self.phi
    }

    pub fn psi(&self) -> &PolyMatrix {
        &self.psi
    }

    pub fn size(&self) -> usize {
        self.phi.nrows()
    }

    /// `(psi, phi)`, whose cokernel is the syzygy module of `coker phi`.
    pub fn swapped(&self) -> Self {
        MatrixFactorization { ambient: self.ambient.clone(), f: self.f.clone(), phi: self.psi.clone(), psi: self.phi.clone() }
    }

    /// `S / (f)`.
    pub fn quotient_ring(&self) -> Result<Ring> {
        QuotientRing::new(self.ambient.vars().to_vec(), self.ambient.order().clone(), vec![self.f.clone()])
    }

    /// `coker phi` over `ring`, which must be `S / (f)` on the same variables.
    pub fn module_over(&self, ring: &Ring) -> Result<PresentedModule> {
        if ring.vars() != self.ambient.vars() || ring.order() != self.ambient.order() || !ring.is_zero(&self.f) {
            return Err(AlgebraError::RingMismatch);
        }
        let m = PolyMatrix::new(ring, self.size(), self.size(), self.phi.entries().to_vec())?;
        PresentedModule::new(ring, &m)
    }
}

impl fmt::Debug for MatrixFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "MF(f = {}, phi = {}, psi = {})",
            self.ambient.fmt_poly(&self.f),
            self.phi.display(),
            self.psi.display()
        )
    }
}

/// `coker phi` over `S / (f)`.
pub fn mf_to_module(mf: &MatrixFactorization) -> Result<PresentedModule> {
    mf.module_over(&mf.quotient_ring()?)
}

/// Knörrer doubling: a factorization of `f + z^2` with
/// `phi' = [[phi, z], [z, -psi]]` and `psi' = [[psi, z], [z, -phi]]`.
pub fn knoerrer_double(mf: &MatrixFactorization, newvar: &str) -> Result<MatrixFactorization> {
    let old = &mf.ambient;
    if old.vars().iter().any(|v| v == newvar) {
        return Err(AlgebraError::InvalidParameters(format!("variable `{newvar}` already in use")));
    }
    let n = old.nvars();
    let mut vars = old.vars().to_vec();
    vars.push(newvar.to_string());
    let order = extend_order(old.order(), n)?;
    let ring = QuotientRing::polynomial_ring(vars, order.clone())?;
    let map: Vec<usize> = (0..n).collect();
    let lift = |p: &Polynomial| p.embed(n + 1, &map, &order);
    let z = ring.var(n);
    let f = &lift(&mf.f) + &(&z * &z);
    let k = mf.size();
    let block = |a: &PolyMatrix, b: &PolyMatrix| -> Result<PolyMatrix> {
        let mut m = PolyMatrix::zeros(&ring, 2 * k, 2 * k);
        for i in 0..k {
            for j in 0..k {
                m.set(i, j, lift(a.get(i, j)));
                m.set(k + i, k + j, -&lift(b.get(i, j)));
            }
            m.set(i, k + i, z.clone());
            m.set(k + i, i, z.clone());
        }
        Ok(m)
    };
    let phi = block(&mf.phi, &mf.psi)?;
    let psi = block(&mf.psi, &mf.phi)?;
    MatrixFactorization::new(&ring, f, phi, psi)
}

fn extend_order(o: &crate::monomial::MonomialOrder, n: usize) -> Result<crate::monomial::MonomialOrder> {
    use crate::monomial::MonomialOrder;
    Ok(match o {
        MonomialOrder::WeightedDegRevLex(w) => {
            let mut w: Vec<u32> = w.to_vec();
            w.resize(n + 1, 1);
            MonomialOrder::weighted(&w)?
        }
        other => other.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::MonomialOrder;

    fn s(vars: &[&str]) -> Ring {
        QuotientRing::from_strings(vars, MonomialOrder::DegRevLex, &[]).unwrap()
    }

    #[test]
    fn conic_factorization() {
        let r = s(&["x", "y"]);
        let mf = MatrixFactorization::parse(&r, "x^2+y^2", "[[x, y], [y, -x]]", "[[x, y], [y, -x]]").unwrap();
        let m = mf_to_module(&mf).unwrap();
        assert_eq!(m.rank0(), 2);
        let d = knoerrer_double(&mf, "z").unwrap();
        assert_eq!(d.size(), 4);
        assert_eq!(d.potential(), &d.ambient().parse("x^2+y^2+z^2").unwrap());
        assert!(knoerrer_double(&mf, "x").is_err());
        let dd = knoerrer_double(&d, "w").unwrap();
        assert!(dd.satisfies_invariant().unwrap());
    }

    #[test]
    fn rejects_bad_factorizations() {
        let r = s(&["x", "y"]);
        assert!(MatrixFactorization::parse(&r, "x^2+y^2", "[[x, y], [y, x]]", "[[x, y], [y, -x]]").is_err());
        // the trivial factorization f * 1
        assert!(MatrixFactorization::parse(&r, "x^2+y^2", "[[x^2+y^2]]", "[[1]]").is_err());
    }
}
