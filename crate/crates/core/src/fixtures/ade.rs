use std::fmt;
use std::str::FromStr;

use super::mf::{knoerrer_double, MatrixFactorization};
use crate::error::{AlgebraError, Result};
use crate::groebner::{QuotientRing, Ring};
use crate::monomial::MonomialOrder;
use crate::poly::Polynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AdeType {
    A,
    D,
    E,
}

impl fmt::Display for AdeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AdeType::A => "A",
            AdeType::D => "D",
            AdeType::E => "E",
        })
    }
}

impl FromStr for AdeType {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(AdeType::A),
            "D" | "d" => Ok(AdeType::D),
            "E" | "e" => Ok(AdeType::E),
            _ => Err(AlgebraError::InvalidParameters(format!("unknown ADE type `{s}`"))),
        }
    }
}

fn check_params(t: AdeType, n: usize, dim: usize) -> Result<()> {
    let ok = match t {
        AdeType::A => n >= 1,
        AdeType::D => n >= 4,
        AdeType::E => (6..=8).contains(&n),
    };
    if !ok || dim == 0 {
        return Err(AlgebraError::InvalidParameters(format!("no simple singularity {t}{n} in dimension {dim}")));
    }
    Ok(())
}

/// Variable names `x, y, z1, .., z_{dim-1}`.
pub fn ade_vars(dim: usize) -> Vec<String> {
    let mut v = vec!["x".to_string(), "y".to_string()];
    v.extend((1..dim).map(|i| format!("z{i}")));
    v
}

/// The curve part of the potential, in `x, y`.
fn curve_potential(t: AdeType, n: usize) -> String {
    match (t, n) {
        (AdeType::A, n) => format!("x^2+y^{}", n + 1),
        (AdeType::D, n) => format!("x^2*y+y^{}", n - 1),
        (AdeType::E, 6) => "x^3+y^4".into(),
        (AdeType::E, 7) => "x^3+x*y^3".into(),
        _ => "x^3+y^5".into(),
    }
}

/// The polynomial ring `Q[x, y, z1..]` (degrevlex) and the potential `f`.
pub fn ade_potential(t: AdeType, n: usize, dim: usize) -> Result<(Ring, Polynomial)> {
    check_params(t, n, dim)?;
    let s = QuotientRing::polynomial_ring(ade_vars(dim), MonomialOrder::DegRevLex)?;
    let mut f = curve_potential(t, n);
    for i in 1..dim {
        f.push_str(&format!("+z{i}^2"));
    }
    let f = s.parse(&f)?;
    Ok((s, f))
}

/// `Q[x, y, z1, .., z_{dim-1}] / (f)` for the simple singularity of the
/// given type, as an affine stand-in for its complete local ring.
pub fn ade_ring(t: AdeType, n: usize, dim: usize) -> Result<Ring> {
    let (s, f) = ade_potential(t, n, dim)?;
    QuotientRing::new(s.vars().to_vec(), s.order().clone(), vec![f])
}

/// Named reduced matrix factorizations of the curve potential: for `A_n`
/// the family `[[x, y^j], [y^(n+1-j), -x]]`; for `D_n` the pair
/// `(y, x^2+y^(n-2))` and `[[x, y^j], [y^(n-1-j), -xy]]`; a few
/// `2 x 2` factorizations for `E_6`, `E_7`, `E_8`. Each is verified.
pub fn curve_mf_catalog(t: AdeType, n: usize) -> Result<Vec<(String, MatrixFactorization)>> {
    let (s, f) = ade_potential(t, n, 1)?;
    let fs = s.fmt_poly(&f);
    let mut raw: Vec<(String, String, String)> = Vec::new();
    match t {
        AdeType::A => {
            for j in 1..=n.div_ceil(2) {
                let phi = format!("[[x, y^{j}], [y^{}, -x]]", n + 1 - j);
                raw.push((format!("phi{j}"), phi.clone(), phi));
            }
        }
        AdeType::D => {
            let q = format!("x^2+y^{}", n - 2);
            raw.push(("y".into(), "[[y]]".into(), format!("[[{q}]]")));
            raw.push(("q".into(), format!("[[{q}]]"), "[[y]]".into()));
            for j in 1..=(n - 1) / 2 {
                let k = n - 1 - j;
                let phi = format!("[[x, y^{j}], [y^{k}, -x*y]]");
                let psi = format!("[[x*y, y^{j}], [y^{k}, -x]]");
                raw.push((format!("phi{j}"), phi.clone(), psi.clone()));
                raw.push((format!("psi{j}"), psi, phi));
            }
        }
        AdeType::E => {
            let pairs: &[(&str, &str)] = match n {
                6 => &[
                    ("[[x^2, y], [-y^3, x]]", "[[x, -y], [y^3, x^2]]"),
                    ("[[x, y^2], [-y^2, x^2]]", "[[x^2, -y^2], [y^2, x]]"),
                ],
                7 => &[("[[x]]", "[[x^2+y^3]]"), ("[[x^2, y], [-x*y^2, x]]", "[[x, -y], [x*y^2, x^2]]")],
                _ => &[
                    ("[[x^2, y], [-y^4, x]]", "[[x, -y], [y^4, x^2]]"),
                    ("[[x, y^2], [-y^3, x^2]]", "[[x^2, -y^2], [y^3, x]]"),
                ],
            };
            for (k, (phi, psi)) in pairs.iter().enumerate() {
                raw.push((format!("phi{}", k + 1), phi.to_string(), psi.to_string()));
                raw.push((format!("psi{}", k + 1), psi.to_string(), phi.to_string()));
            }
        }
    }
    raw.into_iter()
        .map(|(name, phi, psi)| Ok((name, MatrixFactorization::parse(&s, &fs, &phi, &psi)?)))
        .collect()
}

/// Curve factorizations doubled `dim - 1` times with the new variables
/// `z1, z2, ..`: factorizations of the `dim`-dimensional potential.
pub fn ade_mf_catalog(t: AdeType, n: usize, dim: usize) -> Result<Vec<(String, MatrixFactorization)>> {
    check_params(t, n, dim)?;
    let mut out = curve_mf_catalog(t, n)?;
    for i in 1..dim {
        out = out
            .into_iter()
            .map(|(name, mf)| Ok((name, knoerrer_double(&mf, &format!("z{i}"))?)))
            .collect::<Result<_>>()?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rings() {
        let r = ade_ring(AdeType::A, 1, 1).unwrap();
        assert_eq!(r.fmt_poly(&r.ideal_gens()[0]), "x^2+y^2");
        let r = ade_ring(AdeType::E, 6, 3).unwrap();
        assert_eq!(r.vars().join(","), "x,y,z1,z2");
        assert_eq!(r.fmt_poly(&r.ideal_gens()[0]), "y^4+x^3+z1^2+z2^2");
        let r = ade_ring(AdeType::D, 4, 2).unwrap();
        assert!(r.is_zero(&r.parse("x^2*y+y^3+z1^2").unwrap()));
        assert!(ade_ring(AdeType::D, 3, 1).is_err());
        assert!(ade_ring(AdeType::E, 9, 1).is_err());
        assert!(ade_ring(AdeType::A, 0, 1).is_err());
    }

    #[test]
    fn all_factorizations_verify() {
        for (t, n) in [(AdeType::A, 1), (AdeType::A, 4), (AdeType::D, 4), (AdeType::D, 7), (AdeType::E, 6), (AdeType::E, 7), (AdeType::E, 8)] {
            let cat = curve_mf_catalog(t, n).unwrap();
            assert!(!cat.is_empty());
            for (_, mf) in &cat {
                assert!(mf.satisfies_invariant().unwrap());
            }
        }
        assert_eq!(curve_mf_catalog(AdeType::A, 3).unwrap().len(), 2);
        let three = ade_mf_catalog(AdeType::A, 2, 3).unwrap();
        assert_eq!(three[0].1.size(), 8);
    }
}
