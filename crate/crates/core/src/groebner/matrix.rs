use std::fmt;

use super::ring::{same_ring, Ring};
use crate::error::{AlgebraError, Result};
use crate::parse::parse_matrix;
use crate::poly::Polynomial;
use crate::rational::Rational;

/// An element of the free module `A^r`, stored as its coordinate vector.
#[derive(Clone, PartialEq, Eq)]
pub struct FreeModuleElem {
    components: Vec<Polynomial>,
}

impl FreeModuleElem {
    pub fn new(components: Vec<Polynomial>) -> Self {
        FreeModuleElem { components }
    }

    pub fn zero(ring: &Ring, rank: usize) -> Self {
        FreeModuleElem { components: vec![ring.zero(); rank] }
    }

    /// The basis vector `e_i` of `A^rank`.
    pub fn basis(ring: &Ring, rank: usize, i: usize) -> Self {
        let mut v = Self::zero(ring, rank);
        v.components[i] = ring.one();
        v
    }

    pub fn rank(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn into_components(self) -> Vec<Polynomial> {
        self.components
    }

    pub fn get(&self, i: usize) -> &Polynomial {
        &self.components[i]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|p| p.is_zero())
    }

    /// Whether every coordinate vanishes in `A`.
    pub fn is_zero_in(&self, ring: &Ring) -> bool {
        self.components.iter().all(|p| ring.is_zero(p))
    }

    pub fn reduced(&self, ring: &Ring) -> Self {
        FreeModuleElem { components: self.components.iter().map(|p| ring.reduce(p)).collect() }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_rank(self.rank(), other.rank())?;
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.checked_add(b))
            .collect::<Result<_>>()?;
        Ok(FreeModuleElem { components })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        check_rank(self.rank(), other.rank())?;
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.checked_sub(b))
            .collect::<Result<_>>()?;
        Ok(FreeModuleElem { components })
    }

    pub fn scale(&self, f: &Polynomial) -> Result<Self> {
        let components = self.components.iter().map(|a| a.checked_mul(f)).collect::<Result<_>>()?;
        Ok(FreeModuleElem { components })
    }

    /// Largest total degree among the coordinates; 0 for the zero vector.
    pub fn degree(&self) -> u32 {
        self.components.iter().filter_map(|p| p.total_degree()).max().unwrap_or(0)
    }

    /// Renders as a combination of basis vectors, e.g. `y*e1 - x*e2`.
    pub fn display<'a>(&'a self, vars: &'a [String]) -> ElemDisplay<'a> {
        ElemDisplay { elem: self, vars }
    }
}

impl From<Vec<Polynomial>> for FreeModuleElem {
    fn from(components: Vec<Polynomial>) -> Self {
        FreeModuleElem { components }
    }
}

impl fmt::Debug for FreeModuleElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.components).finish()
    }
}

pub struct ElemDisplay<'a> {
    elem: &'a FreeModuleElem,
    vars: &'a [String],
}

impl fmt::Display for ElemDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, p) in self.elem.components.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let s = p.display(self.vars).to_string();
            let basis = format!("e{}", i + 1);
            let (neg, body) = match s.strip_prefix('-') {
                Some(rest) if p.len() == 1 => (true, rest.to_string()),
                _ => (false, s),
            };
            let term = if p.is_one() || (neg && body == "1") {
                basis
            } else if p.len() > 1 {
                format!("({body})*{basis}")
            } else {
                format!("{body}*{basis}")
            };
            match (first, neg) {
                (true, true) => write!(f, "-{term}")?,
                (true, false) => write!(f, "{term}")?,
                (false, true) => write!(f, " - {term}")?,
                (false, false) => write!(f, " + {term}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn check_rank(a: usize, b: usize) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(AlgebraError::RankMismatch { expected: a, found: b })
    }
}

/// A dense matrix over `A`, row-major.
#[derive(Clone)]
pub struct PolyMatrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn new(ring: &Ring, rows: usize, cols: usize, entries: Vec<Polynomial>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(AlgebraError::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        for e in &entries {
            ring.check(e)?;
        }
        Ok(PolyMatrix { ring: ring.clone(), rows, cols, entries })
    }

    pub fn zeros(ring: &Ring, rows: usize, cols: usize) -> Self {
        PolyMatrix { ring: ring.clone(), rows, cols, entries: vec![ring.zero(); rows * cols] }
    }

    pub fn identity(ring: &Ring, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.entries[i * n + i] = ring.one();
        }
        m
    }

    pub fn from_rows(ring: &Ring, rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        let nr = rows.len();
        let nc = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != nc) {
            return Err(AlgebraError::Shape("ragged rows".into()));
        }
        Self::new(ring, nr, nc, rows.into_iter().flatten().collect())
    }

    /// Builds an `rows x cols.len()` matrix from its columns.
    pub fn from_columns(ring: &Ring, rows: usize, cols: &[FreeModuleElem]) -> Result<Self> {
        let mut m = Self::zeros(ring, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            check_rank(rows, c.rank())?;
            for i in 0..rows {
                ring.check(c.get(i))?;
                m.entries[i * cols.len() + j] = c.get(i).clone();
            }
        }
        Ok(m)
    }

    /// Parses `[[a, b], [c, d]]` over the ring's variables.
    pub fn parse(ring: &Ring, text: &str) -> Result<Self> {
        let rows = parse_matrix(text, ring.vars(), ring.order())?;
        Self::from_rows(ring, rows)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial) {
        self.entries[i * self.cols + j] = p;
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> Vec<Polynomial> {
        self.entries[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> FreeModuleElem {
        FreeModuleElem::new((0..self.rows).map(|i| self.get(i, j).clone()).collect())
    }

    pub fn columns(&self) -> Vec<FreeModuleElem> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn rows_vec(&self) -> Vec<Vec<Polynomial>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.entries[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    /// Entrywise normal forms modulo the ideal.
    pub fn reduced(&self) -> Self {
        self.map(|p| self.ring.reduce(p))
    }

    pub fn map(&self, f: impl Fn(&Polynomial) -> Polynomial) -> Self {
        PolyMatrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn try_map(&self, f: impl Fn(&Polynomial) -> Result<Polynomial>) -> Result<Self> {
        Ok(PolyMatrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect::<Result<_>>()?,
        })
    }

    /// Whether every entry vanishes in `A`.
    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|p| self.ring.is_zero(p))
    }

    /// Equality in `A`.
    pub fn equals(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.entries.iter().zip(&other.entries).all(|(a, b)| self.ring.is_zero(&(a - b)))
    }

    /// Product, reduced modulo the ideal.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        same_ring(&self.ring, &other.ring)?;
        if self.cols != other.rows {
            return Err(AlgebraError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(&self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = self.ring.zero();
                for k in 0..self.cols {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                out.entries[i * other.cols + j] = self.ring.reduce(&acc);
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &FreeModuleElem) -> Result<FreeModuleElem> {
        check_rank(self.cols, v.rank())?;
        let m = Self::from_columns(&self.ring, self.cols, std::slice::from_ref(v))?;
        Ok(self.mul(&m)?.column(0))
    }

    fn zip(&self, other: &Self, f: impl Fn(&Polynomial, &Polynomial) -> Polynomial) -> Result<Self> {
        same_ring(&self.ring, &other.ring)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(AlgebraError::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(PolyMatrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, f: &Polynomial) -> Self {
        self.map(|p| p * f)
    }

    pub fn scale_rational(&self, c: &Rational) -> Self {
        self.map(|p| p.scale(c))
    }

    /// `[self | other]`.
    pub fn hconcat(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(AlgebraError::Shape("row counts differ".into()));
        }
        let mut cols = self.columns();
        cols.extend(other.columns());
        Self::from_columns(&self.ring, self.rows, &cols)
    }

    /// Block diagonal sum.
    pub fn block_diag(&self, other: &Self) -> Result<Self> {
        same_ring(&self.ring, &other.ring)?;
        let mut m = Self::zeros(&self.ring, self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        Ok(m)
    }

    /// Applies the derivation `sum_k coeffs[k] d/dx_k` to every entry.
    pub fn apply_derivation(&self, coeffs: &[Polynomial]) -> Result<Self> {
        let d = self.try_map(|p| Polynomial::apply_derivation(coeffs, p))?;
        Ok(d.reduced())
    }

    /// Column-major flattening: entry `(i, j)` goes to index `j * rows + i`.
    pub fn flatten(&self) -> FreeModuleElem {
        let mut v = Vec::with_capacity(self.rows * self.cols);
        for j in 0..self.cols {
            for i in 0..self.rows {
                v.push(self.get(i, j).clone());
            }
        }
        FreeModuleElem::new(v)
    }

    /// Inverse of [`PolyMatrix::flatten`].
    pub fn unflatten(ring: &Ring, rows: usize, cols: usize, v: &FreeModuleElem) -> Result<Self> {
        check_rank(rows * cols, v.rank())?;
        let mut m = Self::zeros(ring, rows, cols);
        for j in 0..cols {
            for i in 0..rows {
                m.set(i, j, v.get(j * rows + i).clone());
            }
        }
        Ok(m)
    }

    pub fn display(&self) -> String {
        let rows: Vec<String> = self
            .rows_vec()
            .iter()
            .map(|r| {
                let cells: Vec<String> = r.iter().map(|p| self.ring.fmt_poly(p)).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        format!("[{}]", rows.join(", "))
    }
}

impl PartialEq for PolyMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.entries == other.entries
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display())
    }
}
