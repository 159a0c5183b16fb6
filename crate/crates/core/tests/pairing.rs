mod common;

use fk_core::freealg::{multiply, words_of_degree, Element, Word};
use fk_core::graphs::{complement, Graph};
use fk_core::pairing::{coproduct, dual_act, gram_rank, gram_rank_blocked, pair, pair_words, WordFunctional};
use fk_core::rewrite::quadratic_relations;
use fk_core::ExactScalar;

fn w(s: &str) -> Word {
    Word::parse(s).unwrap()
}

#[test]
fn randomized_properties() {
    let r = common::pairing_suite(0x5eed, 100);
    assert_eq!(r.cases, 700);
    assert!(r.failures.is_empty(), "{:#?}", r.failures);
    // most cases should compare something other than zeros
    assert!(r.nontrivial * 2 > r.cases, "only {} of {} cases were nontrivial", r.nontrivial, r.cases);
}

#[test]
fn small_values() {
    assert_eq!(pair_words(&w("x12"), &w("x12")), 1);
    assert_eq!(pair_words(&w("x12"), &w("x13")), 0);
    assert_eq!(pair_words(&Word::empty(), &Word::empty()), 1);
    let p = Element::parse("x12.x13.x12", 3).unwrap();
    let q = Element::parse("x12.x23.x31", 3).unwrap();
    assert_eq!(pair(&p, &q), ExactScalar::one());
    // different degrees pair to zero
    assert!(pair(&Element::parse("x12", 3).unwrap(), &Element::parse("x12.x23", 3).unwrap()).is_zero());
}

/// Every defining relation times every word of degree ≤ 2, on both sides,
/// pairs to zero with every word of the same degree in E_4.
#[test]
fn form_kills_the_ideal_exhaustively() {
    let n = 4;
    let kn = Graph::complete(n);
    for r in quadratic_relations(n).unwrap() {
        for d in 0..=1 {
            for u in words_of_degree(&kn, d) {
                let u = Element::from_word(n, u);
                for e in [multiply(&r, &u).unwrap(), multiply(&u, &r).unwrap()] {
                    for q in words_of_degree(&kn, 2 + d) {
                        let v = pair(&e, &Element::from_word(n, q.clone()));
                        assert!(v.is_zero(), "<{e}, {q}> = {v}");
                    }
                }
            }
        }
    }
}

/// For G1 ⊂ K_n and its complement G2, E_n·E_{G1}^+ is orthogonal to E_{G2}.
#[test]
fn left_ideal_orthogonal_to_complement() {
    let n = 4;
    let kn = Graph::complete(n);
    let subgraphs = [vec![(1, 2)], vec![(1, 2), (2, 3)], vec![(1, 2), (3, 4)], vec![(1, 2), (1, 3), (1, 4)]];
    for edges in subgraphs {
        let g1 = Graph::new(n, &edges).unwrap();
        let g2 = complement(&g1);
        for total in 1..=4 {
            for dx in 1..=total.min(2) {
                for p in words_of_degree(&kn, total - dx) {
                    for x in words_of_degree(&g1, dx) {
                        let px = p.concat(&x);
                        for q in words_of_degree(&g2, total) {
                            assert_eq!(pair_words(&px, &q), 0, "<{px}, {q}> with G1 = {g1}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn blocked_rank_equals_plain_rank() {
    let k4 = Graph::complete(4);
    for d in 0..=4 {
        let words: Vec<Word> = words_of_degree(&k4, d).collect();
        let sample: Vec<Word> = words.iter().step_by(7).cloned().collect();
        assert_eq!(gram_rank(&sample, &words).unwrap(), gram_rank_blocked(&sample, &words).unwrap(), "degree {d}");
    }
    assert!(gram_rank(&[w("x12")], &[w("x12.x23")]).is_err());
}

/// The coproduct of a word has one term per splitting, and the functionals of
/// the empty word and of the word itself act as identity and counit.
#[test]
fn coproduct_counts_and_dual_action() {
    let n = 4;
    let q = Element::parse("x12.x23.x34", n).unwrap();
    let c = coproduct(&q);
    // 2^3 splittings, all with distinct tensor terms for this word
    assert_eq!(c.len(), 8);
    assert_eq!(c.coeff(&Word::empty(), &w("x12.x23.x34")), ExactScalar::one());
    assert_eq!(c.coeff(&w("x12.x23.x34"), &Word::empty()), ExactScalar::one());
    let rest = dual_act(&WordFunctional::new(Word::empty()), &q);
    assert_eq!(rest, q);
    let top = dual_act(&WordFunctional::new(w("x12.x23.x34")), &q);
    assert_eq!(top, Element::one(n));
}
