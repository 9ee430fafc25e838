use super::matrix::PolyMatrix;
use super::submodule::syzygy_matrix;
use crate::error::{AlgebraError, Result};

/// `A^{r_0} <- A^{r_1} <- ... ` with `maps[k] : A^{r_{k+1}} -> A^{r_k}`.
#[derive(Clone, Debug)]
pub struct FreeResolution {
    pub maps: Vec<PolyMatrix>,
}

impl FreeResolution {
    pub fn ranks(&self) -> Vec<usize> {
        let mut r: Vec<usize> = self.maps.iter().map(|m| m.nrows()).collect();
        if let Some(last) = self.maps.last() {
            r.push(last.ncols());
        }
        r
    }

    /// Whether consecutive maps compose to zero.
    pub fn is_complex(&self) -> bool {
        self.maps.windows(2).all(|w| w[0].mul(&w[1]).map(|p| p.is_zero()).unwrap_or(false))
    }
}

/// First `length` maps of a free resolution of the cokernel of `d0`,
/// each syzygy step pruned to a non-redundant generating set.
pub fn free_resolution(d0: &PolyMatrix, length: usize) -> Result<FreeResolution> {
    if length == 0 {
        return Err(AlgebraError::InvalidParameters("resolution length must be positive".into()));
    }
    let mut maps = vec![d0.clone()];
    while maps.len() < length {
        let next = syzygy_matrix(maps.last().unwrap());
        maps.push(next);
    }
    Ok(FreeResolution { maps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::ring::QuotientRing;
    use crate::monomial::MonomialOrder;

    #[test]
    fn residue_field_of_polynomial_ring() {
        let r = QuotientRing::from_strings(&["x", "y", "z"], MonomialOrder::DegRevLex, &[]).unwrap();
        let d0 = PolyMatrix::parse(&r, "[[x, y, z]]").unwrap();
        let res = free_resolution(&d0, 3).unwrap();
        assert_eq!(res.ranks(), vec![1, 3, 3, 1]);
        assert!(res.is_complex());
    }

    #[test]
    fn periodic_over_hypersurface() {
        let r = QuotientRing::from_strings(&["x", "y"], MonomialOrder::DegRevLex, &["x^2+y^2"]).unwrap();
        let d0 = PolyMatrix::parse(&r, "[[x, y], [y, -x]]").unwrap();
        let res = free_resolution(&d0, 2).unwrap();
        assert_eq!(res.ranks(), vec![2, 2, 2]);
        assert!(res.is_complex());
    }
}
