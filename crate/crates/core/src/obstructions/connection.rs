use std::fmt;

use super::classes::{ks_kernel, ks_lifts, KsKernel};
use super::der::{lie_bracket, DerModule};
use super::ext1::{Ext1Problem, ObstructionResult};
use crate::error::{AlgebraError, Result};
use crate::groebner::{FreeModuleElem, PolyMatrix};
use crate::modules::{hom_module, ModuleHom, PresentedModule};

/// A `V(M)`-connection: `nabla_{D_i}` lifts to `D_i + P_i` on `A^rank0`.
#[derive(Clone, Debug)]
pub struct Connection {
    pub module: PresentedModule,
    pub vfield_gens: DerModule,
    pub operators: Vec<PolyMatrix>,
}

/// Which condition a candidate connection violates, with indices
/// `(operator or relation, column, generator)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConnectionDefect {
    /// `(D_i + P_i)(column j of d0)` is not a relation.
    Descent { operator: usize, column: usize },
    /// The lifted Leibniz rule fails on `x_k * e_t`.
    Leibniz { operator: usize, variable: usize, generator: usize },
    /// `sum_i c_ij D_i` is nonzero as a derivation.
    Relation { relation: usize },
    /// `sum_i c_ij P_i` moves generator `t` outside the relations.
    Linearity { relation: usize, generator: usize },
    Shape,
}

impl fmt::Display for ConnectionDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConnectionDefect::Descent { operator, column } => {
                write!(f, "operator {} does not preserve relation column {}", operator + 1, column + 1)
            }
            ConnectionDefect::Leibniz { operator, variable, generator } => write!(
                f,
                "operator {} violates the Leibniz rule on variable {} times generator {}",
                operator + 1,
                variable + 1,
                generator + 1
            ),
            ConnectionDefect::Relation { relation } => {
                write!(f, "relation {} among the vector fields is not satisfied", relation + 1)
            }
            ConnectionDefect::Linearity { relation, generator } => write!(
                f,
                "relation {} is not respected on generator {}",
                relation + 1,
                generator + 1
            ),
            ConnectionDefect::Shape => write!(f, "operator count or size mismatch"),
        }
    }
}

/// Checks descent, the lifted Leibniz rule and compatibility with the
/// relations among the `D_i`.
pub fn check_connection(c: &Connection) -> Result<(), ConnectionDefect> {
    let m = &c.module;
    let ring = m.ring();
    let d0 = m.presentation();
    let rank = m.rank0();
    let gens = c.vfield_gens.generators();
    if c.operators.len() != gens.len()
        || c.operators.iter().any(|p| p.nrows() != rank || p.ncols() != rank)
    {
        return Err(ConnectionDefect::Shape);
    }
    let in_relations = |v: &FreeModuleElem| m.is_zero_elem(v).unwrap_or(false);
    for (i, (d, p)) in gens.iter().zip(&c.operators).enumerate() {
        for j in 0..d0.ncols() {
            let col = d0.column(j);
            let v = d.apply_elem(&col).add(&p.mul_vec(&col).expect("shape")).expect("rank");
            if !in_relations(&v) {
                return Err(ConnectionDefect::Descent { operator: i, column: j });
            }
        }
        for k in 0..ring.nvars() {
            let xk = ring.var(k);
            for t in 0..rank {
                let v = FreeModuleElem::basis(ring, rank, t).scale(&xk).expect("ring");
                let lhs = d.apply_elem(&v).add(&p.mul_vec(&v).expect("shape")).expect("rank");
                let pe = p.mul_vec(&FreeModuleElem::basis(ring, rank, t)).expect("shape");
                let rhs = FreeModuleElem::basis(ring, rank, t)
                    .scale(&d.apply(&xk))
                    .and_then(|a| a.add(&pe.scale(&xk)?))
                    .expect("ring");
                if !lhs.sub(&rhs).expect("rank").is_zero_in(ring) {
                    return Err(ConnectionDefect::Leibniz { operator: i, variable: k, generator: t });
                }
            }
        }
    }
    let cmat = c.vfield_gens.presentation();
    for j in 0..cmat.ncols() {
        let coeffs: Vec<_> = (0..gens.len()).map(|i| cmat.get(i, j).clone()).collect();
        if !c.vfield_gens.combine(&coeffs).is_zero() {
            return Err(ConnectionDefect::Relation { relation: j });
        }
        let r = combine_operators(&c.operators, &coeffs, rank, m).expect("shapes");
        for t in 0..rank {
            if !in_relations(&r.column(t)) {
                return Err(ConnectionDefect::Linearity { relation: j, generator: t });
            }
        }
    }
    Ok(())
}

pub fn verify_connection(c: &Connection) -> bool {
    check_connection(c).is_ok()
}

fn combine_operators(
    ops: &[PolyMatrix],
    coeffs: &[crate::poly::Polynomial],
    rank: usize,
    m: &PresentedModule,
) -> Result<PolyMatrix> {
    let mut acc = PolyMatrix::zeros(m.ring(), rank, rank);
    for (c, p) in coeffs.iter().zip(ops) {
        if !c.is_zero() {
            acc = acc.add(&p.scale(c))?;
        }
    }
    Ok(acc.reduced())
}

/// Result of the `V(M)`-connection test.
#[derive(Clone, Debug)]
pub struct LClassOutcome {
    pub result: ObstructionResult,
    pub connection: Option<Connection>,
}

/// Runs the Kodaira-Spencer kernel first, then [`lclass_with`].
pub fn lclass(m: &PresentedModule) -> Result<LClassOutcome> {
    let ks = ks_kernel(m)?;
    lclass_with(m, &ks)
}

/// Tests whether `M` admits a `V(M)`-connection; on success the lifts `P_i`
/// are corrected by endomorphisms so that the result is a connection.
pub fn lclass_with(m: &PresentedModule, ks: &KsKernel) -> Result<LClassOutcome> {
    let ring = m.ring();
    let v = &ks.v;
    let p = v.len();
    if p == 0 {
        let conn = Connection { module: m.clone(), vfield_gens: v.clone(), operators: Vec::new() };
        return Ok(LClassOutcome { result: ObstructionResult::vacuous("V(M) = 0"), connection: Some(conn) });
    }
    let lifts = ks_lifts(m, ks)?;
    let c = v.presentation();
    let q = c.ncols();
    let rank = m.rank0();
    if q == 0 {
        let conn = Connection { module: m.clone(), vfield_gens: v.clone(), operators: lifts };
        return Ok(LClassOutcome {
            result: ObstructionResult::vacuous("V(M) is free on its generators"),
            connection: Some(conn),
        });
    }
    let end = hom_module(m, m)?;
    let s = end.module().rank0();
    let mut lambda = PolyMatrix::zeros(ring, s, q);
    for j in 0..q {
        let coeffs: Vec<_> = (0..p).map(|i| c.get(i, j).clone()).collect();
        let r = combine_operators(&lifts, &coeffs, rank, m)?;
        let l = end.from_matrix(&r).map_err(|e| {
            AlgebraError::InternalInconsistency(format!("relation {} does not give an endomorphism: {e}", j + 1))
        })?;
        for (i, x) in l.components().iter().enumerate() {
            lambda.set(i, j, x.clone());
        }
    }
    let result = Ext1Problem::new(c, end.module().presentation())?.test(&lambda)?;
    let connection = match &result.witness {
        Some(w) if result.vanishes => {
            let mut ops = Vec::with_capacity(p);
            for (i, pi) in lifts.iter().enumerate() {
                let corr = end.to_matrix(&w.left.column(i))?;
                ops.push(pi.sub(&corr)?.reduced());
            }
            Some(Connection { module: m.clone(), vfield_gens: v.clone(), operators: ops })
        }
        _ => None,
    };
    Ok(LClassOutcome { result, connection })
}

/// `[nabla_i, nabla_j] - nabla_{[D_i, D_j]}` as an endomorphism of `M`.
pub fn curvature(c: &Connection, i: usize, j: usize) -> Result<ModuleHom> {
    let gens = c.vfield_gens.generators();
    if i >= gens.len() || j >= gens.len() {
        return Err(AlgebraError::InvalidParameters(format!("index out of range for {} vector fields", gens.len())));
    }
    let m = &c.module;
    let (di, dj) = (&gens[i], &gens[j]);
    let (pi, pj) = (&c.operators[i], &c.operators[j]);
    let bracket = lie_bracket(di, dj)?;
    let b = c
        .vfield_gens
        .span()
        .lift_with_witness(&bracket.as_elem())
        .map_err(|_| AlgebraError::LiftFailure(format!("[D_{}, D_{}] is not in V(M)", i + 1, j + 1)))?;
    let mut r = di
        .apply_matrix(pj)
        .sub(&dj.apply_matrix(pi))?
        .add(&pi.mul(pj)?)?
        .sub(&pj.mul(pi)?)?;
    r = r.sub(&combine_operators(&c.operators, &b, m.rank0(), m)?)?;
    ModuleHom::new(m, m, r.reduced())
}
