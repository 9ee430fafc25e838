use super::ade::{ade_mf_catalog, ade_ring, AdeType};
use super::mf::MatrixFactorization;
use crate::error::Result;
use crate::groebner::{PolyMatrix, QuotientRing, Ring};
use crate::input::{InputDocument, ModuleSource};
use crate::modules::PresentedModule;
use crate::monomial::MonomialOrder;

/// Expected `(AClass, KSKernel, LClass)` verdicts, 1 meaning the
/// obstruction is present; `None` where no claim is made.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Expected {
    pub aclass: Option<u8>,
    pub kskernel: Option<u8>,
    pub lclass: Option<u8>,
}

impl Expected {
    pub fn triple(a: u8, k: u8, l: u8) -> Self {
        Expected { aclass: Some(a), kskernel: Some(k), lclass: Some(l) }
    }

    pub fn lclass_only(l: u8) -> Self {
        Expected { lclass: Some(l), ..Default::default() }
    }

    /// Whether observed verdicts agree wherever both sides are known.
    pub fn matches(&self, observed: (Option<u8>, Option<u8>, Option<u8>)) -> bool {
        let ok = |e: Option<u8>, o: Option<u8>| match (e, o) {
            (Some(e), Some(o)) => e == o,
            _ => true,
        };
        ok(self.aclass, observed.0) && ok(self.kskernel, observed.1) && ok(self.lclass, observed.2)
    }
}

#[derive(Clone, Debug)]
pub struct CatalogModule {
    pub name: String,
    pub source: ModuleSource,
    pub module: PresentedModule,
    pub mf: Option<MatrixFactorization>,
    pub expected: Expected,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub id: String,
    pub description: String,
    pub ring: Ring,
    pub modules: Vec<CatalogModule>,
}

impl CatalogEntry {
    fn new(id: &str, description: &str, ring: &Ring) -> Self {
        CatalogEntry { id: id.into(), description: description.into(), ring: ring.clone(), modules: Vec::new() }
    }

    fn push(&mut self, name: &str, source: ModuleSource, mf: Option<MatrixFactorization>, expected: Expected) -> Result<()> {
        let module = source.build(&self.ring)?;
        self.modules.push(CatalogModule { name: name.into(), source, module, mf, expected });
        Ok(())
    }

    /// The entry as an input document.
    pub fn document(&self) -> InputDocument {
        let mut doc = InputDocument::new(&self.ring);
        for m in &self.modules {
            doc.push(&m.name, m.source.clone());
        }
        doc
    }

    /// The same entry with every computation carried out under `order`.
    pub fn with_order(&self, order: MonomialOrder) -> Result<CatalogEntry> {
        let ring = self.ring.with_order(order.clone())?;
        let mut out = CatalogEntry::new(&self.id, &self.description, &ring);
        for m in &self.modules {
            let source = match &m.source {
                ModuleSource::Matrix(a) => {
                    let entries = a.entries().iter().map(|p| p.with_order(&order)).collect();
                    ModuleSource::Matrix(PolyMatrix::new(&ring, a.nrows(), a.ncols(), entries)?)
                }
                ModuleSource::Ideal(g) => ModuleSource::Ideal(g.iter().map(|p| p.with_order(&order)).collect()),
                ModuleSource::Free(r) => ModuleSource::Free(*r),
            };
            out.push(&m.name, source, None, m.expected)?;
        }
        Ok(out)
    }
}

fn dim_word(dim: usize) -> &'static str {
    match dim {
        1 => "curve",
        2 => "surface",
        3 => "threefold",
        _ => "fourfold",
    }
}

/// ADE entry of the given dimension: the verified factorization modules
/// plus the free module `A`. In dimension at most 2 every module carries a
/// connection; in dimension 3 only the free one does.
pub fn ade_entry(t: AdeType, n: usize, dim: usize) -> Result<CatalogEntry> {
    let ring = ade_ring(t, n, dim)?;
    let id = format!("{}-{t}{n}", dim_word(dim));
    let f = ring.fmt_poly(&ring.ideal_gens()[0]);
    let mut e = CatalogEntry::new(&id, &format!("simple singularity {t}{n}, {f} = 0"), &ring);
    let expect_l = u8::from(dim >= 3);
    for (name, mf) in ade_mf_catalog(t, n, dim)? {
        let phi = PolyMatrix::new(&ring, mf.size(), mf.size(), mf.phi().entries().to_vec())?;
        e.push(&name, ModuleSource::Matrix(phi), Some(mf), Expected::lclass_only(expect_l))?;
    }
    e.push("A", ModuleSource::Free(1), None, Expected::triple(0, 0, 0))?;
    Ok(e)
}

/// The monomial curve `k[t^3, t^4, t^5]` with `p = (t^3, t^4)`.
pub fn monomial_curve() -> Result<CatalogEntry> {
    let ring = QuotientRing::from_strings(
        &["x", "y", "z"],
        MonomialOrder::DegRevLex,
        &["x*z-y^2", "x^2*y-z^2", "x^3-y*z"],
    )?;
    let mut e = CatalogEntry::new("monomial-curve-345", "monomial curve with semigroup (3,4,5)", &ring);
    let gens = vec![ring.parse("x")?, ring.parse("y")?];
    e.push("p", ModuleSource::Ideal(gens), None, Expected::triple(1, 0, 1))?;
    Ok(e)
}

/// A rational linear determinantal representation of the cubic cone:
/// `phi = x Id + y P + z C` with `det phi = x^3 + y^3 + z^3` and
/// `psi = adj(phi)`.
pub fn cubic_cone_mf() -> Result<MatrixFactorization> {
    let s = QuotientRing::from_strings(&["x", "y", "z"], MonomialOrder::DegRevLex, &[])?;
    MatrixFactorization::parse(
        &s,
        "x^3+y^3+z^3",
        "[[x-z, y, -z], [z, x+z, y-z], [y+z, 0, x]]",
        "[[x^2+x*z, -x*y, x*z+y^2-y*z+z^2], \
          [-x*z+y^2-z^2, x^2-x*z+y*z+z^2, -x*y+x*z+y*z-2*z^2], \
          [-x*y-x*z-y*z-z^2, y^2+y*z, x^2-y*z-z^2]]",
    )
}

/// The cubic cone `x^3 + y^3 + z^3 = 0` with the rank-one modules
/// `M3 = coker phi` and `M4 = coker psi`.
pub fn cubic_cone() -> Result<CatalogEntry> {
    let mf = cubic_cone_mf()?;
    let ring = mf.quotient_ring()?;
    let mut e = CatalogEntry::new("cubic-cone", "cubic cone x^3+y^3+z^3 = 0", &ring);
    for (name, m) in [("M3", mf.clone()), ("M4", mf.swapped())] {
        let phi = PolyMatrix::new(&ring, 3, 3, m.phi().entries().to_vec())?;
        e.push(name, ModuleSource::Matrix(phi), Some(m), Expected::triple(1, 0, 0))?;
    }
    Ok(e)
}

/// The threefold `E_6` singularity with its maximal ideal as a module.
pub fn threefold_e6() -> Result<CatalogEntry> {
    let ring = ade_ring(AdeType::E, 6, 3)?;
    let mut e = CatalogEntry::new("threefold-E6", "threefold E6, x^3+y^4+z1^2+z2^2 = 0", &ring);
    let gens = (0..4).map(|i| ring.var(i)).collect();
    e.push("m", ModuleSource::Ideal(gens), None, Expected::triple(1, 0, 0))?;
    Ok(e)
}

/// ADE families included in the built-in catalog, as `(type, n, dims)`.
pub const ADE_FAMILIES: &[(AdeType, usize, &[usize])] = &[
    (AdeType::A, 1, &[1, 2, 3]),
    (AdeType::A, 2, &[1, 2, 3]),
    (AdeType::A, 3, &[1, 2, 3]),
    (AdeType::A, 4, &[1, 2, 3]),
    (AdeType::A, 5, &[1, 2, 3]),
    (AdeType::D, 4, &[1, 2, 3]),
    (AdeType::D, 5, &[1, 2]),
    (AdeType::E, 6, &[1, 2]),
    (AdeType::E, 7, &[1, 2]),
    (AdeType::E, 8, &[1, 2]),
];

/// Every built-in entry: the table singularities first, then the ADE
/// families ordered by dimension.
pub fn builtin_catalog() -> Result<Vec<CatalogEntry>> {
    let mut out = vec![monomial_curve()?, cubic_cone()?, threefold_e6()?];
    for dim in 1..=3 {
        for (t, n, dims) in ADE_FAMILIES {
            if dims.contains(&dim) {
                out.push(ade_entry(*t, *n, dim)?);
            }
        }
    }
    Ok(out)
}

/// Entries whose id matches `pattern`; `*` matches any run of characters.
pub fn select<'a>(entries: &'a [CatalogEntry], pattern: &str) -> Vec<&'a CatalogEntry> {
    entries.iter().filter(|e| glob_match(pattern, &e.id)).collect()
}

pub fn glob_match(pattern: &str, s: &str) -> bool {
    let p: Vec<char> = pattern.chars().collect();
    let t: Vec<char> = s.chars().collect();
    let (mut pi, mut ti) = (0, 0);
    let (mut star, mut mark) = (None, 0);
    while ti < t.len() {
        if pi < p.len() && (p[pi] == '?' || p[pi] == t[ti]) {
            pi += 1;
            ti += 1;
        } else if pi < p.len() && p[pi] == '*' {
            star = Some(pi);
            mark = ti;
            pi += 1;
        } else if let Some(sp) = star {
            pi = sp + 1;
            mark += 1;
            ti = mark;
        } else {
            return false;
        }
    }
    p[pi..].iter().all(|&c| c == '*')
}
