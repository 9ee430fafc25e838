//! Membership of a 1-cocycle in the coboundaries.
//!
//! A map `X : A^n -> A^r` represents the zero class in
//! `Ext^1(coker d0, coker e)` exactly when `X = Psi * d0 + e * Xi` for some
//! `Psi : A^m -> A^r` and `Xi : A^n -> A^q`. All three obstruction classes
//! reduce to this test with different `(d0, e, X)`.

use crate::error::{AlgebraError, Result};
use crate::groebner::{FreeModuleElem, PolyMatrix, Ring, Submodule};

/// Division data proving `X = left * d0 + e * right`.
#[derive(Clone, Debug)]
pub struct Ext1Witness {
    pub left: PolyMatrix,
    pub right: PolyMatrix,
}

/// Outcome of a vanishing test. Exactly one of `witness` / `certificate` is
/// set, unless the class vanishes for a degenerate reason recorded in `note`.
#[derive(Clone, Debug)]
pub struct ObstructionResult {
    pub vanishes: bool,
    pub witness: Option<Ext1Witness>,
    /// Nonzero normal form of the cocycle modulo the coboundaries.
    pub certificate: Option<PolyMatrix>,
    pub note: Option<String>,
}

impl ObstructionResult {
    /// Table encoding: 1 when the class does not vanish.
    pub fn verdict(&self) -> u8 {
        u8::from(!self.vanishes)
    }

    pub(crate) fn vacuous(note: &str) -> Self {
        ObstructionResult { vanishes: true, witness: None, certificate: None, note: Some(note.to_string()) }
    }
}

pub(crate) struct Ext1Problem {
    ring: Ring,
    d0: PolyMatrix,
    e: PolyMatrix,
    h0: Submodule,
}

impl Ext1Problem {
    pub fn new(d0: &PolyMatrix, e: &PolyMatrix) -> Result<Self> {
        let ring = d0.ring().clone();
        let (m, n) = (d0.nrows(), d0.ncols());
        let (r, q) = (e.nrows(), e.ncols());
        let mut gens = Vec::with_capacity(r * m + q * n);
        // E_il * d0: row i is row l of d0; index l * r + i
        for l in 0..m {
            for i in 0..r {
                let mut v = vec![ring.zero(); r * n];
                for j in 0..n {
                    v[j * r + i] = d0.get(l, j).clone();
                }
                gens.push(FreeModuleElem::new(v));
            }
        }
        // e * E_sj: column j is column s of e; index j * q + s
        for j in 0..n {
            for s in 0..q {
                let mut v = vec![ring.zero(); r * n];
                for i in 0..r {
                    v[j * r + i] = e.get(i, s).clone();
                }
                gens.push(FreeModuleElem::new(v));
            }
        }
        let h0 = Submodule::new(&ring, r * n, gens)?;
        Ok(Ext1Problem { ring, d0: d0.clone(), e: e.clone(), h0 })
    }

    pub fn coboundaries(&self) -> &Submodule {
        &self.h0
    }

    pub fn test(&self, x: &PolyMatrix) -> Result<ObstructionResult> {
        let (m, n) = (self.d0.nrows(), self.d0.ncols());
        let (r, q) = (self.e.nrows(), self.e.ncols());
        if x.nrows() != r || x.ncols() != n {
            return Err(AlgebraError::Shape(format!(
                "cocycle is {}x{}, expected {r}x{n}",
                x.nrows(),
                x.ncols()
            )));
        }
        let flat = x.flatten();
        let nf = self.h0.normal_form(&flat)?;
        if !nf.is_zero() {
            return Ok(ObstructionResult {
                vanishes: false,
                witness: None,
                certificate: Some(PolyMatrix::unflatten(&self.ring, r, n, &nf)?),
                note: None,
            });
        }
        let w = self.h0.lift_with_witness(&flat).map_err(|e| {
            AlgebraError::InternalInconsistency(format!("normal form vanished but lift failed: {e}"))
        })?;
        let mut left = PolyMatrix::zeros(&self.ring, r, m);
        for l in 0..m {
            for i in 0..r {
                left.set(i, l, w[l * r + i].clone());
            }
        }
        let mut right = PolyMatrix::zeros(&self.ring, q, n);
        for j in 0..n {
            for s in 0..q {
                right.set(s, j, w[r * m + j * q + s].clone());
            }
        }
        let recon = left.mul(&self.d0)?.add(&self.e.mul(&right)?)?;
        if !recon.equals(x) {
            return Err(AlgebraError::InternalInconsistency("division witness does not reproduce the cocycle".into()));
        }
        Ok(ObstructionResult { vanishes: true, witness: Some(Ext1Witness { left, right }), certificate: None, note: None })
    }
}
