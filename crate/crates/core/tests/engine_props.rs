use connobs_core::groebner::{preimage, submodule_equal, syzygy_matrix};
use connobs_core::{free_resolution, FreeModuleElem, MonomialOrder, PolyMatrix, Polynomial, QuotientRing, Ring, Submodule};
use proptest::prelude::*;

const VARS: [&str; 3] = ["x", "y", "z"];

fn rings() -> Vec<Ring> {
    let dp = MonomialOrder::DegRevLex;
    vec![
        QuotientRing::from_strings(&VARS, dp.clone(), &[]).unwrap(),
        QuotientRing::from_strings(&VARS, MonomialOrder::Lex, &["x^2+y^2+z^2"]).unwrap(),
        QuotientRing::from_strings(&VARS, dp, &["x*z-y^2", "x^2*y-z^2", "x^3-y*z"]).unwrap(),
    ]
}

/// Grading under which each test ring is homogeneous.
const WEIGHTS: [[u32; 3]; 3] = [[1, 1, 1], [1, 1, 1], [3, 4, 5]];

/// Coefficient pool consumed monomial by monomial; mostly zeros.
fn pool() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(prop_oneof![3 => Just(0i64), 2 => -3i64..=3], 12)
}

/// A homogeneous polynomial of the given weighted degree.
fn homogeneous(ring_ix: usize, deg: u32, coeffs: &[i64]) -> String {
    let w = WEIGHTS[ring_ix];
    let mut s = String::from("0");
    let mut it = coeffs.iter();
    for a in 0..=deg {
        for b in 0..=deg {
            for c in 0..=deg {
                if a * w[0] + b * w[1] + c * w[2] != deg {
                    continue;
                }
                match it.next() {
                    Some(&k) if k != 0 => s.push_str(&format!(" + ({k})*x^{a}*y^{b}*z^{c}")),
                    Some(_) => {}
                    None => return s,
                }
            }
        }
    }
    s
}

/// Generators as (degree offset, coefficient pools per component).
fn gens_strategy(min: usize, max: usize) -> impl Strategy<Value = Vec<(u32, Vec<Vec<i64>>)>> {
    prop::collection::vec((0u32..=2, prop::collection::vec(pool(), 2)), min..=max)
}

fn texts(ring_ix: usize, raw: &[(u32, Vec<Vec<i64>>)]) -> Vec<Vec<String>> {
    // lowest degree with monomials in every variable's weight
    let base = if ring_ix == 2 { 5 } else { 1 };
    raw.iter()
        .map(|(d, pools)| pools.iter().map(|c| homogeneous(ring_ix, base + d, c)).collect())
        .collect()
}

fn poly_text() -> impl Strategy<Value = String> {
    (0u32..=2, pool()).prop_map(|(d, c)| homogeneous(0, d, &c))
}

fn elem_text(rank: usize) -> impl Strategy<Value = Vec<String>> {
    prop::collection::vec(poly_text(), rank)
}

fn build(r: &Ring, texts: &[Vec<String>]) -> Vec<FreeModuleElem> {
    texts
        .iter()
        .map(|v| FreeModuleElem::new(v.iter().map(|t| r.reduce(&r.parse(t).unwrap())).collect()))
        .collect()
}

fn combination(r: &Ring, gens: &[FreeModuleElem], coeffs: &[Polynomial], rank: usize) -> FreeModuleElem {
    let mut acc = FreeModuleElem::zero(r, rank);
    for (g, c) in gens.iter().zip(coeffs) {
        acc = acc.add(&g.scale(c).unwrap()).unwrap();
    }
    acc.reduced(r)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, .. ProptestConfig::default() })]

    #[test]
    fn groebner_basis_properties(
        ring_ix in 0usize..3,
        gens in gens_strategy(1, 3),
        coeffs in prop::collection::vec(poly_text(), 3),
    ) {
        let r = &rings()[ring_ix];
        let g = build(r, &texts(ring_ix, &gens));
        let n = Submodule::new(r, 2, g.clone()).unwrap();
        prop_assert!(n.satisfies_buchberger_criterion());
        for v in &g {
            prop_assert!(n.normal_form(v).unwrap().is_zero());
        }
        let c: Vec<Polynomial> = coeffs.iter().map(|t| r.parse(t).unwrap()).collect();
        let v = combination(r, &g, &c, 2);
        prop_assert!(n.contains(&v).unwrap());
        let w = n.lift_with_witness(&v).unwrap();
        prop_assert_eq!(w.len(), g.len());
        let back = combination(r, &g, &w, 2);
        prop_assert!(back.sub(&v).unwrap().is_zero_in(r));
    }

    #[test]
    fn normal_form_is_a_projection(
        ring_ix in 0usize..3,
        gens in gens_strategy(1, 3),
        probe in elem_text(2),
    ) {
        let r = &rings()[ring_ix];
        let n = Submodule::new(r, 2, build(r, &texts(ring_ix, &gens))).unwrap();
        let v = build(r, &[probe]).pop().unwrap();
        let nf = n.normal_form(&v).unwrap();
        prop_assert!(n.contains(&v.sub(&nf).unwrap()).unwrap());
        prop_assert_eq!(n.normal_form(&nf).unwrap(), nf.clone());
        prop_assert_eq!(n.contains(&v).unwrap(), nf.is_zero());
    }

    #[test]
    fn syzygies_and_resolutions(
        ring_ix in 0usize..3,
        gens in gens_strategy(1, 3),
    ) {
        let r = &rings()[ring_ix];
        let g = build(r, &texts(ring_ix, &gens));
        let m = PolyMatrix::from_columns(r, 2, &g).unwrap();
        let s = syzygy_matrix(&m);
        prop_assert!(m.mul(&s).unwrap().is_zero());
        let res = free_resolution(&m, 2).unwrap();
        prop_assert!(res.is_complex());
    }

    #[test]
    fn preimage_maps_into_target(
        ring_ix in 0usize..3,
        fgens in gens_strategy(2, 2),
        tgens in gens_strategy(1, 2),
        probe in elem_text(2),
    ) {
        let r = &rings()[ring_ix];
        let f = PolyMatrix::from_columns(r, 2, &build(r, &texts(ring_ix, &fgens))).unwrap();
        let target = Submodule::new(r, 2, build(r, &texts(ring_ix, &tgens))).unwrap();
        let pre = preimage(&f, &target).unwrap();
        for q in pre.generators() {
            prop_assert!(target.contains(&f.mul_vec(q).unwrap()).unwrap());
        }
        // anything whose image lands in the target is in the preimage
        let v = build(r, &[probe]).pop().unwrap();
        let image = f.mul_vec(&v).unwrap();
        if target.contains(&image).unwrap() {
            prop_assert!(pre.contains(&v).unwrap());
        }
        let kernel = Submodule::from_columns(&syzygy_matrix(&f));
        prop_assert!(kernel.is_subset_of(&pre).unwrap());
    }

    #[test]
    fn equality_is_order_independent(
        gens in gens_strategy(1, 3),
    ) {
        let r = &rings()[0];
        let g = build(r, &texts(0, &gens));
        let a = Submodule::new(r, 2, g.clone()).unwrap();
        let mut rev = g.clone();
        rev.reverse();
        rev.push(combination(r, &g, &vec![r.parse("x").unwrap(); g.len()], 2));
        let b = Submodule::new(r, 2, rev).unwrap();
        prop_assert!(submodule_equal(&a, &b).unwrap());
        prop_assert!(submodule_equal(&a, &a.pruned()).unwrap());
    }
}

#[test]
fn koszul_syzygy_recovered() {
    let r = &rings()[0];
    let m = PolyMatrix::parse(r, "[[x, y]]").unwrap();
    let s = syzygy_matrix(&m);
    assert_eq!(s.ncols(), 1);
    let expected = Submodule::new(r, 2, vec![FreeModuleElem::new(vec![r.parse("-y").unwrap(), r.parse("x").unwrap()])]).unwrap();
    assert!(submodule_equal(&Submodule::from_columns(&s), &expected).unwrap());
    // (x, y, z): three Koszul relations, second syzygy of rank one
    let res = free_resolution(&PolyMatrix::parse(r, "[[x, y, z]]").unwrap(), 3).unwrap();
    assert_eq!(res.ranks(), vec![1, 3, 3, 1]);
    assert!(res.is_complex());
}
