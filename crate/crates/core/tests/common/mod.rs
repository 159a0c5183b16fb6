//! Randomized checks of the bilinear form shared by the pairing tests and
//! the acceptance harness.

#![allow(dead_code)]

use fk_core::freealg::{multiply, relabel, relabel_word, sn_degree, Element, Generator, Permutation, Word};
use fk_core::pairing::{delta_by_word, delta_op, nabla_by_word, pair, pair_words};
use fk_core::rewrite::quadratic_relations;
use fk_core::ExactScalar;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const PROPERTIES: [&str; 7] =
    ["symmetry", "adjoint_delta", "adjoint_nabla", "delta_relations", "equivariance", "sigma_orthogonality", "kills_ideal"];

#[derive(Debug, Default)]
pub struct SuiteReport {
    pub cases: usize,
    /// cases where some pairing or operator value compared was nonzero
    pub nontrivial: usize,
    pub failures: Vec<String>,
}

fn random_word(rng: &mut ChaCha8Rng, n: usize, d: usize) -> Word {
    let gens = Generator::all(n);
    Word::from_letters(&(0..d).map(|_| *gens.choose(rng).unwrap()).collect::<Vec<_>>())
}

/// A random word of degree d whose S_n-degree is `sigma`, if one turns up.
fn word_with_degree(rng: &mut ChaCha8Rng, n: usize, d: usize, sigma: &Permutation) -> Option<Word> {
    (0..4000).map(|_| random_word(rng, n, d)).find(|w| sn_degree(w, n) == *sigma)
}

fn coeff(rng: &mut ChaCha8Rng) -> ExactScalar {
    let c = [-2, -1, 1, 2, 3][rng.gen_range(0..5)];
    ExactScalar::from_int(c)
}

fn random_element(rng: &mut ChaCha8Rng, n: usize, d: usize) -> Element {
    let mut e = Element::zero(n);
    for _ in 0..rng.gen_range(1..=3) {
        let w = random_word(rng, n, d);
        e.add_term(w, coeff(rng));
    }
    e
}

/// A random element of degree d most of whose terms can pair with words of
/// S_n-degree `sigma`⁻¹.
fn partner_element(rng: &mut ChaCha8Rng, n: usize, d: usize, sigma: &Permutation) -> Element {
    let mut e = random_element(rng, n, d);
    let target = sigma.inverse();
    for _ in 0..2 {
        if let Some(w) = word_with_degree(rng, n, d, &target) {
            e.add_term(w, coeff(rng));
        }
    }
    e
}

fn first_sigma(e: &Element, n: usize) -> Permutation {
    e.terms().next().map(|(w, _)| sn_degree(w, n)).unwrap_or_else(|| Permutation::identity(n))
}

/// Σ c_w Δ_w(q) for p = Σ c_w w.
fn delta_by_element(p: &Element, q: &Element) -> Element {
    p.terms().fold(Element::zero(q.n()), |acc, (w, c)| acc.add(&delta_by_word(w, q).scale(c)))
}

/// Σ c_w (q)∇_w for p = Σ c_w w.
fn nabla_by_element(q: &Element, p: &Element) -> Element {
    p.terms().fold(Element::zero(q.n()), |acc, (w, c)| acc.add(&nabla_by_word(q, w).scale(c)))
}

fn d(a: usize, b: usize, e: &Element) -> Element {
    delta_op(a, b, e).expect("distinct vertices")
}

type Outcome = Result<bool, String>;

fn symmetry(rng: &mut ChaCha8Rng, n: usize, deg: usize) -> Outcome {
    let p = random_element(rng, n, deg);
    let q = partner_element(rng, n, deg, &first_sigma(&p, n));
    let (a, b) = (pair(&p, &q), pair(&q, &p));
    if a != b {
        return Err(format!("<{p}, {q}> = {a} but <{q}, {p}> = {b}"));
    }
    Ok(!a.is_zero())
}

fn adjoint(rng: &mut ChaCha8Rng, n: usize, deg: usize, nabla_side: bool) -> Outcome {
    let d1 = rng.gen_range(0..=deg);
    let p1 = random_element(rng, n, d1);
    let p2 = random_element(rng, n, deg - d1);
    let prod = multiply(&p1, &p2).expect("same ambient");
    let q = partner_element(rng, n, deg, &first_sigma(&prod, n));
    let lhs = pair(&prod, &q);
    let rhs = if nabla_side { pair(&p2, &nabla_by_element(&q, &p1)) } else { pair(&p1, &delta_by_element(&p2, &q)) };
    if lhs != rhs {
        let side = if nabla_side { "nabla" } else { "delta" };
        return Err(format!("{side} adjointness: P1 = {p1}, P2 = {p2}, Q = {q}: {lhs} vs {rhs}"));
    }
    Ok(!lhs.is_zero())
}

fn delta_relations(rng: &mut ChaCha8Rng, n: usize, deg: usize) -> Outcome {
    let q = random_element(rng, n, deg.max(2));
    let mut vs: Vec<usize> = (1..=n).collect();
    vs.shuffle(rng);
    let (i, j, k) = (vs[0], vs[1], vs[2]);
    let square = d(i, j, &d(i, j, &q));
    if !square.is_zero() {
        return Err(format!("Δ_{i}{j}Δ_{i}{j}({q}) = {square}"));
    }
    let triangle = d(i, j, &d(j, k, &q)).add(&d(j, k, &d(k, i, &q))).add(&d(k, i, &d(i, j, &q)));
    if !triangle.is_zero() {
        return Err(format!("triangle relation on ({i},{j},{k}) applied to {q} gives {triangle}"));
    }
    let mut nontrivial = !d(j, k, &q).is_zero();
    if n >= 4 {
        let l = vs[3];
        let (ab, cd) = (d(i, j, &d(k, l, &q)), d(k, l, &d(i, j, &q)));
        if ab != cd {
            return Err(format!("Δ_{i}{j} and Δ_{k}{l} do not commute on {q}"));
        }
        nontrivial |= !ab.is_zero();
    }
    Ok(nontrivial)
}

fn equivariance(rng: &mut ChaCha8Rng, n: usize, deg: usize) -> Outcome {
    let mut images: Vec<usize> = (1..=n).collect();
    images.shuffle(rng);
    let sigma = Permutation::from_images(&images).expect("shuffled identity");
    let dp = rng.gen_range(0..=deg);
    let p = random_word(rng, n, dp);
    let q = random_element(rng, n, deg);
    let lhs = relabel(&sigma, &delta_by_word(&p, &q));
    let (sign, moved) = relabel_word(&sigma, &p);
    let rhs = delta_by_word(&moved, &relabel(&sigma, &q)).scale(&ExactScalar::from_int(sign));
    if lhs != rhs {
        return Err(format!("σ = {sigma}, P = {p}, Q = {q}: {lhs} vs {rhs}"));
    }
    Ok(!lhs.is_zero())
}

fn sigma_orthogonality(rng: &mut ChaCha8Rng, n: usize, deg: usize) -> Outcome {
    let mut nontrivial = false;
    for _ in 0..20 {
        let (p, q) = (random_word(rng, n, deg), random_word(rng, n, deg));
        let v = pair_words(&p, &q);
        if sn_degree(&p, n) != sn_degree(&q, n).inverse() {
            if v != 0 {
                return Err(format!("<{p}, {q}> = {v} with σ_P ≠ σ_Q⁻¹"));
            }
        } else {
            nontrivial |= v != 0;
        }
    }
    Ok(nontrivial)
}

fn kills_ideal(rng: &mut ChaCha8Rng, n: usize, deg: usize) -> Outcome {
    let rels = quadratic_relations(n).map_err(|e| e.to_string())?;
    let r = rels.choose(rng).expect("E_n has relations").clone();
    let w = Element::from_word(n, random_word(rng, n, deg.saturating_sub(2)));
    let mut nontrivial = false;
    for e in [multiply(&r, &w).unwrap(), multiply(&w, &r).unwrap()] {
        let sigma = first_sigma(&e, n);
        let dim = e.degree().unwrap_or(0);
        for _ in 0..10 {
            let Some(q) = word_with_degree(rng, n, dim, &sigma.inverse()) else { continue };
            let v = pair(&e, &Element::from_word(n, q.clone()));
            if !v.is_zero() {
                return Err(format!("<{e}, {q}> = {v}"));
            }
            // a single term of the relation product usually pairs nontrivially
            let (t, _) = e.terms().find(|(t, _)| sn_degree(t, n) == sigma).unwrap();
            nontrivial |= pair_words(t, &q) != 0;
        }
    }
    Ok(nontrivial)
}

/// Run `per_property` random cases of each property with n ∈ 3..=5 and
/// degree ≤ 4.
pub fn pairing_suite(seed: u64, per_property: usize) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = SuiteReport::default();
    for round in 0..per_property {
        for (k, name) in PROPERTIES.iter().enumerate() {
            let n = 3 + (round + k) % 3;
            let deg = rng.gen_range(1..=4);
            let outcome = match *name {
                "symmetry" => symmetry(&mut rng, n, deg),
                "adjoint_delta" => adjoint(&mut rng, n, deg, false),
                "adjoint_nabla" => adjoint(&mut rng, n, deg, true),
                "delta_relations" => delta_relations(&mut rng, n, deg),
                "equivariance" => equivariance(&mut rng, n, deg),
                "sigma_orthogonality" => sigma_orthogonality(&mut rng, n, deg),
                _ => kills_ideal(&mut rng, n, deg.max(2)),
            };
            report.cases += 1;
            match outcome {
                Ok(true) => report.nontrivial += 1,
                Ok(false) => {}
                Err(msg) => report.failures.push(format!("{name} (n = {n}, degree {deg}): {msg}")),
            }
        }
    }
    report
}
