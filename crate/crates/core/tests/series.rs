use fk_core::graphs::{appendix_catalog, catalog_entry, named_graph, Family, Graph};
use fk_core::mcr::{square_root_obstruction, tensor_check, tensor_check_profiles};
use fk_core::pairing::form_rank_profile;
use fk_core::rewrite::build_rewrite_system;
use fk_core::series::{formula, parse_bracket_exponents, weyl_ratio, WeylData, WeylType, H6_PREFIX};
use fk_core::{ExactScalar, GradedSeries};
use proptest::prelude::*;

/// ∏ [k]^{e_k} for nonnegative exponents, by repeated convolution with
/// all-ones vectors.
fn expand_positive(factors: &[(usize, u32)]) -> Vec<i64> {
    let mut p = vec![1i64];
    for &(k, e) in factors {
        for _ in 0..e {
            let mut next = vec![0i64; p.len() + k - 1];
            for (i, &c) in p.iter().enumerate() {
                for x in &mut next[i..i + k] {
                    *x += c;
                }
            }
            p = next;
        }
    }
    p
}

fn ints(s: &GradedSeries) -> Vec<i64> {
    s.int_coeffs().expect("integer coefficients")
}

/// Splits bracket exponents into numerator and denominator factor lists.
fn split(expr: &str) -> (Vec<(usize, u32)>, Vec<(usize, u32)>) {
    let mut num = Vec::new();
    let mut den = Vec::new();
    for (k, e) in parse_bracket_exponents(expr).unwrap() {
        if e > 0 {
            num.push((k, e as u32));
        } else if e < 0 {
            den.push((k, (-e) as u32));
        }
    }
    (num, den)
}

/// series · ∏(denominator brackets) equals ∏(numerator brackets), computed
/// with plain integer convolution.
fn check_expansion(expr: &str, series: &GradedSeries) {
    let (num, den) = split(expr);
    let lhs = GradedSeries::from_ints(&expand_positive(&den)).mul(series);
    assert_eq!(ints(&lhs), expand_positive(&num), "{expr}");
}

#[test]
fn catalog_expansions() {
    for e in appendix_catalog() {
        check_expansion(e.expression, &e.series);
        assert!(e.series.is_positive(), "{}", e.id);
    }
    let k14 = catalog_entry("K1_4").unwrap().series;
    assert_eq!(k14.dim_topdeg(), (ExactScalar::from_int(14400), 28));
}

/// H_H divides H_G with nonnegative quotient for labeled inclusions among
/// the catalog graphs on at most four vertices.
#[test]
fn catalog_divisibility() {
    let small: Vec<_> = appendix_catalog().into_iter().filter(|e| e.graph.n() <= 4).collect();
    let mut pairs = 0;
    for h in &small {
        for g in &small {
            if h.id == g.id || !h.graph.is_subgraph_of(&g.graph.with_vertices(4).unwrap()) {
                continue;
            }
            let q = g.series.divide_exact(&h.series).unwrap_or_else(|_| panic!("{} ∤ {}", h.id, g.id));
            assert!(q.is_positive(), "{} / {} = {q}", g.id, h.id);
            pairs += 1;
        }
    }
    assert!(pairs >= 15, "only {pairs} labeled inclusions");
}

#[test]
fn tensor_identities_from_the_table() {
    let k13 = catalog_entry("K1_3").unwrap().series;
    let k3 = catalog_entry("K3").unwrap().series;
    assert_eq!(k13.mul(&k3), formula(Family::Complete, &[4]).unwrap());
    let k14 = catalog_entry("K1_4").unwrap().series;
    let k4 = catalog_entry("K4").unwrap().series;
    assert_eq!(k14.mul(&k4), formula(Family::Complete, &[5]).unwrap());
    assert_eq!(catalog_entry("K5").unwrap().series, formula(Family::Complete, &[5]).unwrap());
}

#[test]
fn tensor_identities_computed() {
    let star3 = named_graph(Family::Star, &[3]).unwrap();
    let k3 = Graph::new(4, &[(2, 3), (2, 4), (3, 4)]).unwrap();
    let rs4 = build_rewrite_system(4, 13).unwrap();
    let r = tensor_check(&star3, &k3, &rs4, 13).unwrap();
    assert!(r.holds, "{:?}", r.rows);

    // K_{1,4} and K_4 through their full form-rank profiles against E_5 to degree 6
    let star4 = named_graph(Family::Star, &[4]).unwrap();
    let k4 = Graph::new(5, &[(2, 3), (2, 4), (2, 5), (3, 4), (3, 5), (4, 5)]).unwrap();
    let rs5 = build_rewrite_system(5, 6).unwrap();
    let r = tensor_check(&star4, &k4, &rs5, 6).unwrap();
    assert!(r.holds, "{:?}", r.rows);
    let p1 = form_rank_profile(&star4, 5, 64).unwrap().dims();
    let p2 = form_rank_profile(&k4, 5, 64).unwrap().dims();
    let full = ints(&formula(Family::Complete, &[5]).unwrap());
    let full: Vec<usize> = full.iter().map(|&x| x as usize).chain([0]).collect();
    let r = tensor_check_profiles(&p1, &p2, &full, 40).unwrap();
    assert!(r.holds);
}

#[test]
fn square_root_of_h6_data_is_not_integral() {
    let h6 = GradedSeries::from_ints(&H6_PREFIX[..8]);
    let (root, bad) = square_root_obstruction(&h6, 8).unwrap();
    assert_eq!(bad, Some((7, ExactScalar::new(11623, 2))));
    // the root squares back to H_6/[2] through t^7
    let q = h6.series_divide(&GradedSeries::qint(2), 8).unwrap();
    assert_eq!(root.mul(&root).truncate(8), q);
    assert!(root.coeffs()[..7].iter().all(|c| c.is_integer()));
}

#[test]
fn weyl_ratios() {
    let mut cases: Vec<(WeylType, GradedSeries)> =
        (2..=6).map(|n| (WeylType::A(n), formula(Family::A, &[n]).unwrap())).collect();
    cases.push((WeylType::D(4), formula(Family::D, &[4]).unwrap()));
    cases.push((WeylType::D(5), formula(Family::D, &[5]).unwrap()));
    for (kind, expected) in cases {
        let data = WeylData::new(kind).unwrap();
        let ratio = weyl_ratio(&data).unwrap();
        assert_eq!(ratio, expected, "{kind}");
        let index = data.coxeter_charpoly().eval(&ExactScalar::one());
        let dim = ratio.eval(&ExactScalar::one());
        assert_eq!(&dim * &index, ExactScalar::from_int(data.order() as i64), "{kind}");
    }
    let d4 = WeylData::new(WeylType::D(4)).unwrap();
    assert_eq!(d4.order(), 192);
    assert_eq!(d4.coxeter_charpoly().eval(&ExactScalar::one()), ExactScalar::from_int(4));
    for e in [6, 7, 8] {
        let data = WeylData::new(WeylType::E(e)).unwrap();
        let family = [Family::E6, Family::E7, Family::E8][e - 6];
        assert_eq!(weyl_ratio(&data).unwrap(), formula(family, &[]).unwrap(), "E{e}");
    }
}

#[test]
fn affine_d_expansions() {
    let displayed = [
        "[3]^2[4]^2",
        "[4]^2[5]^2[6]^4/[2]^2[3]^2",
        "[6]^2[8]^2[9]^2[10]^2[14]/[2][3]^2[7]",
        "[6]^2[8][10]^2[14]^2[15]^2[18][24]/[2][3][5]^2[9]",
        "[4][8]^2[10][12]^2[20]^2[21]^2[22][30][36]/[2][3][5]^2[9][11]",
    ];
    for (n, expr) in (3..=7).zip(displayed) {
        let f = formula(Family::Dtilde, &[n]).unwrap();
        assert_eq!(f, GradedSeries::from_brackets(expr).unwrap(), "n = {n}");
        let (dim, top) = f.dim_topdeg();
        let fact: i64 = (1..=n as i64 + 1).product();
        let dim_expected = ExactScalar::from_int(fact * fact) * ExactScalar::from_int(2).pow(2 * n as u32) / ExactScalar::from_int(256);
        assert_eq!(dim, dim_expected, "n = {n}");
        assert_eq!(top, n * (n - 1) * (2 * n - 1) / 3, "n = {n}");
        assert!(f.is_positive() && f.is_symmetric());
    }
    assert_eq!(formula(Family::Dtilde, &[3]).unwrap(), formula(Family::Cycle, &[4]).unwrap());
    for fam in [Family::E6tilde, Family::E7tilde] {
        let f = formula(fam, &[]).unwrap();
        assert!(f.int_coeffs().is_some() && f.is_symmetric(), "{fam:?}");
    }
}

#[test]
fn cycle_formula_matches_table() {
    assert_eq!(formula(Family::Cycle, &[3]).unwrap(), catalog_entry("K3").unwrap().series);
    assert_eq!(formula(Family::Cycle, &[4]).unwrap(), catalog_entry("C4").unwrap().series);
    assert_eq!(formula(Family::Cycle, &[5]).unwrap(), catalog_entry("C5").unwrap().series);
}

proptest! {
    #[test]
    fn bracket_products_expand_by_convolution(exps in proptest::collection::vec(0u32..3, 1..6)) {
        let factors: Vec<(usize, u32)> = exps.iter().enumerate().map(|(i, &e)| (i + 2, e)).collect();
        let expr: String = factors.iter().filter(|f| f.1 > 0).map(|(k, e)| format!("[{k}]^{e}")).collect();
        prop_assume!(!expr.is_empty());
        let s = GradedSeries::from_brackets(&expr).unwrap();
        prop_assert_eq!(ints(&s), expand_positive(&factors));
        prop_assert!(s.is_symmetric());
        // dividing back out recovers 1
        let back = s.divide_exact(&GradedSeries::from_ints(&expand_positive(&factors))).unwrap();
        prop_assert_eq!(back, GradedSeries::one());
    }

    #[test]
    fn series_division_inverts_multiplication(a in proptest::collection::vec(-5i64..5, 1..6), b in proptest::collection::vec(-5i64..5, 0..6)) {
        let mut a = a;
        a[0] = 1;
        let (sa, sb) = (GradedSeries::from_ints(&a), GradedSeries::from_ints(&b));
        let prod = sa.mul(&sb);
        prop_assert_eq!(prod.divide_exact(&sa).unwrap(), sb.clone());
        prop_assert_eq!(prod.series_divide(&sa, 8).unwrap(), sb.truncate(8));
    }
}
