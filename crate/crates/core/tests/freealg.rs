use fk_core::freealg::{relabel, relabel_word, sn_degree, support_partition, Element, Generator, Permutation, Word};
use fk_core::ExactScalar;
use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;

fn arb_word(n: usize, max_len: usize) -> impl Strategy<Value = Word> {
    let gens = Generator::all(n);
    proptest::collection::vec(0..gens.len(), 0..=max_len)
        .prop_map(move |idx| Word::from_letters(&idx.iter().map(|&k| gens[k]).collect::<Vec<_>>()))
}

fn arb_perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(&v).unwrap())
}

fn arb_element(n: usize) -> impl Strategy<Value = Element> {
    proptest::collection::vec((arb_word(n, 4), -3i64..=3), 0..6).prop_map(move |terms| {
        let mut e = Element::zero(n);
        for (w, c) in terms {
            e.add_term(w, ExactScalar::from_int(c));
        }
        e
    })
}

/// S_n-degree computed by tracking where each point goes under the product
/// of transpositions, applied right to left.
fn sn_degree_by_points(w: &Word, n: usize) -> Vec<usize> {
    (1..=n)
        .map(|mut x| {
            for g in w.letters().iter().rev() {
                let (i, j) = g.vertices();
                if x == i {
                    x = j;
                } else if x == j {
                    x = i;
                }
            }
            x
        })
        .collect()
}

#[test]
fn element_text_format() {
    let e = Element::parse("+1*x12.x23 -1*x13.x12", 3).unwrap();
    assert_eq!(e.to_string(), "+1*x12.x23 -1*x13.x12");
    assert_eq!(Element::parse("x21", 2).unwrap(), Element::parse("-1*x12", 2).unwrap());
    assert_eq!(Element::parse("+1/2*1", 2).unwrap().to_string(), "+1/2*1");
    assert!(Element::parse("x14", 3).is_err());
}

proptest! {
    #[test]
    fn sn_degree_matches_pointwise(w in arb_word(5, 8)) {
        prop_assert_eq!(sn_degree(&w, 5).images(), sn_degree_by_points(&w, 5));
    }

    #[test]
    fn sn_degree_is_multiplicative(u in arb_word(5, 6), v in arb_word(5, 6)) {
        prop_assert_eq!(sn_degree(&u.concat(&v), 5), sn_degree(&u, 5).compose(&sn_degree(&v, 5)));
    }

    #[test]
    fn relabel_composes(s in arb_perm(5), t in arb_perm(5), e in arb_element(5)) {
        prop_assert_eq!(relabel(&s, &relabel(&t, &e)), relabel(&s.compose(&t), &e));
    }

    #[test]
    fn sn_degree_is_conjugation_equivariant(s in arb_perm(6), w in arb_word(6, 7)) {
        let (_, moved) = relabel_word(&s, &w);
        let lhs = sn_degree(&moved, 6);
        let rhs = s.compose(&sn_degree(&w, 6)).compose(&s.inverse());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn support_partition_of_product_is_join(u in arb_word(6, 4), v in arb_word(6, 4)) {
        let whole = support_partition(&u.concat(&v), 6);
        prop_assert_eq!(whole, support_partition(&u, 6).join(&support_partition(&v, 6)));
    }

    #[test]
    fn element_text_round_trip(e in arb_element(4)) {
        prop_assert_eq!(Element::parse(&e.to_string(), 4).unwrap(), e);
    }

    #[test]
    fn rational_sums_are_exact(a in -1_000_000i64..1_000_000, b in 1i64..1_000_000, c in -1_000_000i64..1_000_000, d in 1i64..1_000_000) {
        let r = &ExactScalar::new(a, b) + &ExactScalar::new(c, d);
        let (num, den) = (r.numer(), r.denom());
        prop_assert!(den > BigInt::from(0));
        prop_assert!(num.gcd(&den) == BigInt::from(1) || num == BigInt::from(0));
        let cross = BigInt::from(a) * BigInt::from(d) + BigInt::from(c) * BigInt::from(b);
        prop_assert_eq!(num * BigInt::from(b) * BigInt::from(d), cross * den);
    }

    #[test]
    fn rational_products_are_exact(a in -1_000_000i64..1_000_000, b in 1i64..1_000_000, c in -1_000_000i64..1_000_000, d in 1i64..1_000_000) {
        let r = &ExactScalar::new(a, b) * &ExactScalar::new(c, d);
        let lhs = r.numer() * BigInt::from(b) * BigInt::from(d);
        prop_assert_eq!(lhs, BigInt::from(a) * BigInt::from(c) * r.denom());
    }
}
