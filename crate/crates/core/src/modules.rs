//! Finitely presented modules over a quotient ring.

use std::fmt;

use crate::error::{AlgebraError, Result};
use crate::groebner::{
    preimage, prune_modulo, same_ring, FreeModuleElem, PolyMatrix, Ring, Submodule,
};

/// `M = coker(d0 : A^rank1 -> A^rank0)`.
#[derive(Clone)]
pub struct PresentedModule {
    ring: Ring,
    rank0: usize,
    presentation: PolyMatrix,
    relations: Submodule,
}

/// Builds `coker(matrix)`; entries are reduced modulo the ideal.
pub fn present(ring: &Ring, matrix: &PolyMatrix) -> Result<PresentedModule> {
    PresentedModule::new(ring, matrix)
}

impl PresentedModule {
    pub fn new(ring: &Ring, matrix: &PolyMatrix) -> Result<Self> {
        same_ring(ring, matrix.ring())?;
        if matrix.nrows() == 0 {
            return Err(AlgebraError::InvalidParameters(
                "a presentation needs at least one generator; use PresentedModule::zero".into(),
            ));
        }
        let presentation = matrix.reduced();
        let relations = Submodule::from_columns(&presentation);
        Ok(PresentedModule { ring: ring.clone(), rank0: presentation.nrows(), presentation, relations })
    }

    /// `A^rank` with no relations.
    pub fn free(ring: &Ring, rank: usize) -> Result<Self> {
        Self::new(ring, &PolyMatrix::zeros(ring, rank, 0))
    }

    /// The zero module, presented as `coker (1)`.
    pub fn zero(ring: &Ring) -> Self {
        Self::new(ring, &PolyMatrix::identity(ring, 1)).expect("1x1 presentation")
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rank0(&self) -> usize {
        self.rank0
    }

    pub fn rank1(&self) -> usize {
        self.presentation.ncols()
    }

    pub fn presentation(&self) -> &PolyMatrix {
        &self.presentation
    }

    /// Column span of the presentation inside `A^rank0`.
    pub fn relations(&self) -> &Submodule {
        &self.relations
    }

    /// Whether the presentation has no nonzero relation.
    pub fn has_free_presentation(&self) -> bool {
        self.presentation.is_zero()
    }

    pub fn is_zero_module(&self) -> bool {
        self.relations.is_full()
    }

    /// Whether `v` is zero as an element of `M`.
    pub fn is_zero_elem(&self, v: &FreeModuleElem) -> Result<bool> {
        self.relations.contains(v)
    }

    /// Adds a generator `e` together with the relation `e`; the module is
    /// unchanged up to isomorphism.
    pub fn with_redundant_pair(&self) -> Result<Self> {
        let one = PolyMatrix::identity(&self.ring, 1);
        Self::new(&self.ring, &self.presentation.block_diag(&one)?)
    }

    /// Scales one relation column by a nonzero constant.
    pub fn with_scaled_column(&self, j: usize, c: &crate::rational::Rational) -> Result<Self> {
        if c.is_zero() || j >= self.rank1() {
            return Err(AlgebraError::InvalidParameters("column scale must be a unit".into()));
        }
        let mut m = self.presentation.clone();
        for i in 0..self.rank0 {
            m.set(i, j, m.get(i, j).scale(c));
        }
        Self::new(&self.ring, &m)
    }
}

impl fmt::Debug for PresentedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "coker {} over {:?}", self.presentation.display(), self.ring)
    }
}

pub fn direct_sum(m: &PresentedModule, n: &PresentedModule) -> Result<PresentedModule> {
    same_ring(&m.ring, &n.ring)?;
    PresentedModule::new(&m.ring, &m.presentation.block_diag(&n.presentation)?)
}

/// An `A`-linear map `M -> N`, represented on generators.
#[derive(Clone, Debug)]
pub struct ModuleHom {
    source: PresentedModule,
    target: PresentedModule,
    matrix: PolyMatrix,
}

impl ModuleHom {
    /// Checks that `matrix * (source relations)` lands in the target relations.
    pub fn new(source: &PresentedModule, target: &PresentedModule, matrix: PolyMatrix) -> Result<Self> {
        same_ring(&source.ring, &target.ring)?;
        if matrix.nrows() != target.rank0 || matrix.ncols() != source.rank0 {
            return Err(AlgebraError::Shape(format!(
                "hom matrix is {}x{}, expected {}x{}",
                matrix.nrows(),
                matrix.ncols(),
                target.rank0,
                source.rank0
            )));
        }
        let matrix = matrix.reduced();
        let image = matrix.mul(&source.presentation)?;
        for (j, col) in image.columns().iter().enumerate() {
            if !target.relations.contains(col)? {
                return Err(AlgebraError::InvalidParameters(format!(
                    "matrix is not well defined on relation column {}",
                    j + 1
                )));
            }
        }
        Ok(ModuleHom { source: source.clone(), target: target.clone(), matrix })
    }

    pub fn source(&self) -> &PresentedModule {
        &self.source
    }

    pub fn target(&self) -> &PresentedModule {
        &self.target
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.matrix
    }

    /// Whether the induced map `M -> N` is zero.
    pub fn is_zero(&self) -> Result<bool> {
        for col in self.matrix.columns() {
            if !self.target.relations.contains(&col)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn compose(&self, after: &ModuleHom) -> Result<ModuleHom> {
        ModuleHom::new(&self.source, &after.target, after.matrix.mul(&self.matrix)?)
    }
}

/// A presentation of `Hom_A(M, N)` with conversions between its elements and
/// hom matrices.
#[derive(Clone, Debug)]
pub struct HomModule {
    source: PresentedModule,
    target: PresentedModule,
    module: PresentedModule,
    basis: Vec<PolyMatrix>,
    lift: Submodule,
}

fn flat_index(rows: usize, i: usize, j: usize) -> usize {
    j * rows + i
}

/// Computes `Hom_A(M, N)` as the kernel of `Hom(L0, N) -> Hom(L1, N)`.
pub fn hom_module(m: &PresentedModule, n: &PresentedModule) -> Result<HomModule> {
    same_ring(&m.ring, &n.ring)?;
    let ring = m.ring.clone();
    let (a, b) = (&m.presentation, &n.presentation);
    let (rm, p) = (a.nrows(), a.ncols());
    let (r, q) = (b.nrows(), b.ncols());
    // F : Phi -> Phi * a, flattened column-major
    let mut f = PolyMatrix::zeros(&ring, r * p, r * rm);
    for j in 0..p {
        for l in 0..rm {
            let alj = a.get(l, j);
            if alj.is_zero() {
                continue;
            }
            for i in 0..r {
                f.set(flat_index(r, i, j), flat_index(r, i, l), alj.clone());
            }
        }
    }
    let b_times = |cols: usize| -> Vec<FreeModuleElem> {
        // b * E_{s,j}: column j equal to column s of b
        let mut out = Vec::new();
        for j in 0..cols {
            for s in 0..q {
                let mut v = vec![ring.zero(); r * cols];
                for i in 0..r {
                    v[flat_index(r, i, j)] = b.get(i, s).clone();
                }
                out.push(FreeModuleElem::new(v));
            }
        }
        out
    };
    let target = Submodule::new(&ring, r * p, b_times(p))?;
    let e = preimage(&f, &target)?;
    let k = Submodule::new(&ring, r * rm, b_times(rm))?.pruned();
    let phis = prune_modulo(e.pruned().generators(), &k);
    let s = phis.len();
    let mut lift_gens = phis.clone();
    lift_gens.extend(k.generators().iter().cloned());
    let lift = Submodule::new(&ring, r * rm, lift_gens)?;
    let basis = phis
        .iter()
        .map(|v| PolyMatrix::unflatten(&ring, r, rm, v))
        .collect::<Result<Vec<_>>>()?;
    let module = if s == 0 {
        PresentedModule::zero(&ring)
    } else {
        let g = PolyMatrix::from_columns(&ring, r * rm, &phis)?;
        let rel = preimage(&g, &k)?.pruned();
        PresentedModule::new(&ring, &rel.generator_matrix_or_empty(s))?
    };
    Ok(HomModule { source: m.clone(), target: n.clone(), module, basis, lift })
}

impl Submodule {
    fn generator_matrix_or_empty(&self, rank: usize) -> PolyMatrix {
        if self.generators().is_empty() {
            PolyMatrix::zeros(self.ring(), rank, 0)
        } else {
            self.generator_matrix()
        }
    }
}

impl HomModule {
    pub fn module(&self) -> &PresentedModule {
        &self.module
    }

    /// Hom matrices corresponding to the generators of [`HomModule::module`].
    pub fn basis(&self) -> &[PolyMatrix] {
        &self.basis
    }

    pub fn source(&self) -> &PresentedModule {
        &self.source
    }

    pub fn target(&self) -> &PresentedModule {
        &self.target
    }

    /// The hom matrix `sum_k v_k * basis[k]`.
    pub fn to_matrix(&self, v: &FreeModuleElem) -> Result<PolyMatrix> {
        let ring = &self.source.ring;
        let mut acc = PolyMatrix::zeros(ring, self.target.rank0, self.source.rank0);
        if self.basis.is_empty() {
            return Ok(acc);
        }
        if v.rank() != self.basis.len() {
            return Err(AlgebraError::RankMismatch { expected: self.basis.len(), found: v.rank() });
        }
        for (c, phi) in v.components().iter().zip(&self.basis) {
            if !c.is_zero() {
                acc = acc.add(&phi.scale(c))?;
            }
        }
        Ok(acc.reduced())
    }

    /// Coordinates of a hom matrix over the generators; fails when the matrix
    /// is not a well-defined map `M -> N`.
    pub fn from_matrix(&self, phi: &PolyMatrix) -> Result<FreeModuleElem> {
        let ring = &self.source.ring;
        let w = self.lift.lift_with_witness(&phi.flatten()).map_err(|_| {
            AlgebraError::LiftFailure("matrix does not define a homomorphism".into())
        })?;
        let s = self.basis.len();
        if s == 0 {
            return Ok(FreeModuleElem::zero(ring, 1));
        }
        Ok(FreeModuleElem::new(w[..s].iter().map(|c| ring.reduce(c)).collect()))
    }

    pub fn to_hom(&self, v: &FreeModuleElem) -> Result<ModuleHom> {
        ModuleHom::new(&self.source, &self.target, self.to_matrix(v)?)
    }
}

/// `Omega_{A/k}` presented on `dx_1..dx_n` with one relation per ideal
/// generator, `sum_i dF_j/dx_i dx_i`.
pub fn kaehler_differentials(ring: &Ring) -> Result<PresentedModule> {
    let n = ring.nvars();
    let gens = ring.ideal_gens();
    let mut m = PolyMatrix::zeros(ring, n, gens.len());
    for (j, f) in gens.iter().enumerate() {
        for i in 0..n {
            m.set(i, j, f.partial_derivative(i)?);
        }
    }
    PresentedModule::new(ring, &m)
}

/// The Jacobian `J = (dF_j/dx_i)`, one row per ideal generator.
pub fn jacobian(ring: &Ring) -> Result<PolyMatrix> {
    Ok(kaehler_differentials(ring)?.presentation().transpose())
}
