use super::der::{der, DerModule, Derivation};
use super::ext1::{Ext1Problem, ObstructionResult};
use crate::error::{AlgebraError, Result};
use crate::groebner::{preimage, same_ring, FreeModuleElem, PolyMatrix, Submodule};
use crate::modules::{kaehler_differentials, PresentedModule};

/// Tests whether `M` admits an `Omega`-connection: the entrywise
/// differential of the presentation, read in `M (x) Omega`, must be a
/// coboundary.
pub fn atiyah_class(m: &PresentedModule) -> Result<ObstructionResult> {
    let ring = m.ring();
    let d0 = m.presentation();
    let (rm, n) = (d0.nrows(), d0.ncols());
    let om = kaehler_differentials(ring)?;
    let jt = om.presentation();
    let nv = ring.nvars();
    let k = jt.ncols();
    // target presentation [d0 (x) id | id (x) J^T] on A^{m * nv}, index i * nv + l
    let mut e = PolyMatrix::zeros(ring, rm * nv, n * nv + rm * k);
    for i in 0..rm {
        for j in 0..n {
            let a = d0.get(i, j);
            if a.is_zero() {
                continue;
            }
            for l in 0..nv {
                e.set(i * nv + l, j * nv + l, a.clone());
            }
        }
        for t in 0..k {
            for l in 0..nv {
                e.set(i * nv + l, n * nv + i * k + t, jt.get(l, t).clone());
            }
        }
    }
    let mut x = PolyMatrix::zeros(ring, rm * nv, n);
    for i in 0..rm {
        for j in 0..n {
            for l in 0..nv {
                let d = d0.get(i, j).partial_derivative(l)?;
                x.set(i * nv + l, j, ring.reduce(&d));
            }
        }
    }
    Ext1Problem::new(d0, &e)?.test(&x)
}

/// Operators `(P, Q)` read off a vanishing Kodaira-Spencer class:
/// `D(d0) = d0 * Q - P * d0`, so `D + P` descends to `M`.
#[derive(Clone, Debug)]
pub struct KsLift {
    pub p: PolyMatrix,
    pub q: PolyMatrix,
}

impl KsLift {
    pub fn from_result(res: &ObstructionResult) -> Option<KsLift> {
        let w = res.witness.as_ref()?;
        let minus_one = crate::rational::Rational::from_int(-1);
        Some(KsLift { p: w.left.scale_rational(&minus_one), q: w.right.clone() })
    }
}

fn ks_problem(m: &PresentedModule) -> Result<Ext1Problem> {
    Ext1Problem::new(m.presentation(), m.presentation())
}

/// Whether `D` lies in the kernel of the Kodaira-Spencer map of `M`.
pub fn ks_class(m: &PresentedModule, d: &Derivation) -> Result<ObstructionResult> {
    same_ring(m.ring(), d.ring())?;
    ks_problem(m)?.test(&d.apply_matrix(m.presentation()))
}

/// `V(M)` together with `Der_k(A)` and the shared coboundary data.
pub struct KsKernel {
    pub der: DerModule,
    pub v: DerModule,
    pub proper: bool,
    problem: Ext1Problem,
}

impl KsKernel {
    /// Kodaira-Spencer test for `D` reusing the cached coboundary basis.
    pub fn ks_class(&self, m: &PresentedModule, d: &Derivation) -> Result<ObstructionResult> {
        self.problem.test(&d.apply_matrix(m.presentation()))
    }
}

impl std::fmt::Debug for KsKernel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("KsKernel").field("v", &self.v).field("proper", &self.proper).finish()
    }
}

/// Computes `V(M)`, the derivations whose Kodaira-Spencer class vanishes,
/// as the preimage of the coboundaries under `D -> D(d0)`.
pub fn ks_kernel(m: &PresentedModule) -> Result<KsKernel> {
    let ring = m.ring();
    let dm = der(ring)?;
    let problem = ks_problem(m)?;
    let d0 = m.presentation();
    let (rm, n) = (d0.nrows(), d0.ncols());
    let v_gens: Vec<Derivation> = if d0.is_zero() {
        dm.generators().to_vec()
    } else {
        let cols: Vec<FreeModuleElem> = dm.generators().iter().map(|d| d.apply_matrix(d0).flatten()).collect();
        let gamma = if cols.is_empty() {
            PolyMatrix::zeros(ring, rm * n, 0)
        } else {
            PolyMatrix::from_columns(ring, rm * n, &cols)?
        };
        let pre = preimage(&gamma, problem.coboundaries())?;
        let combos: Vec<FreeModuleElem> = pre
            .generators()
            .iter()
            .map(|q| dm.combine(q.components()).as_elem())
            .filter(|v| !v.is_zero())
            .collect();
        Submodule::new(ring, ring.nvars(), combos)?
            .pruned()
            .generators()
            .iter()
            .map(|g| Derivation::new_unchecked(ring, g.components().to_vec()))
            .collect()
    };
    let v = DerModule::from_generators(ring, v_gens)?;
    let proper = !v.span().equals(dm.span())?;
    Ok(KsKernel { der: dm, v, proper, problem })
}

/// The lifts `P_i` of `D_i` for every generator of `V(M)`.
pub(crate) fn ks_lifts(m: &PresentedModule, ks: &KsKernel) -> Result<Vec<PolyMatrix>> {
    ks.v
        .generators()
        .iter()
        .enumerate()
        .map(|(i, d)| {
            let res = ks.ks_class(m, d)?;
            KsLift::from_result(&res).map(|l| l.p).ok_or_else(|| {
                AlgebraError::InternalInconsistency(format!(
                    "generator {} of V(M) has a nonvanishing Kodaira-Spencer class",
                    i + 1
                ))
            })
        })
        .collect()
}
