//! Leibniz operators Δ_ab and ∇_ab, the symmetric bilinear form, the braided
//! coproduct and dual action, Gram ranks, and a dimension engine that works
//! purely through ∇.
//!
//! Everything here acts on free-algebra representatives; the operators are
//! well defined on E_n because they kill the defining ideal, which the test
//! suite checks rather than assumes.

use crate::error::{Error, Result};
use crate::freealg::{grade_of, relabel_word, sn_degree, Element, Generator, Grade, Permutation, Word};
use crate::graphs::Graph;
use crate::linalg::{accumulate, bareiss_rank, from_map, Echelon, Insert, SparseVec};
use crate::scalar::ExactScalar;
use num_bigint::BigInt;
use rayon::prelude::*;
use rustc_hash::FxHashMap;
use std::cell::RefCell;
use std::collections::BTreeMap;
use std::fmt;

/// Δ_ab(x_g): +1 for x_ab, −1 for x_ba, otherwise 0.
fn letter_delta(a: usize, b: usize, g: Generator) -> i64 {
    let (i, j) = g.vertices();
    if (i, j) == (a, b) {
        1
    } else if (i, j) == (b, a) {
        -1
    } else {
        0
    }
}

fn check_pair(a: usize, b: usize) -> Result<()> {
    if a == b || a == 0 || b == 0 {
        return Err(Error::InvalidPair(a, b));
    }
    Ok(())
}

/// Δ_ab on a word: Σ_k σ_ab(p_1…p_{k−1}) · Δ_ab(p_k) · p_{k+1}…p_d.
pub fn delta_word(a: usize, b: usize, w: &Word) -> Vec<(Word, i64)> {
    let l = w.letters();
    let size = w.max_vertex().max(a).max(b);
    let swap = Permutation::transposition(size, a, b);
    let mut out = Vec::new();
    for k in 0..l.len() {
        let s = letter_delta(a, b, l[k]);
        if s == 0 {
            continue;
        }
        let (sign, mut head) = relabel_word(&swap, &w.slice(0, k));
        head.0.extend_from_slice(&l[k + 1..]);
        out.push((head, s * sign));
    }
    out
}

/// ∇_ab on a word: Σ_k p_1…p_{k−1} · (p_k)∇_{σ_R(a)σ_R(b)} · R with
/// R = p_{k+1}…p_d.
pub fn nabla_word(w: &Word, a: usize, b: usize) -> Vec<(Word, i64)> {
    let l = w.letters();
    let size = w.max_vertex().max(a).max(b);
    let mut sigma_r = Permutation::identity(size);
    let mut out = Vec::new();
    for k in (0..l.len()).rev() {
        let s = letter_delta(sigma_r.apply(a), sigma_r.apply(b), l[k]);
        if s != 0 {
            let mut v = w.slice(0, k);
            v.0.extend_from_slice(&l[k + 1..]);
            out.push((v, s));
        }
        sigma_r.mul_transposition_left(l[k].i as usize, l[k].j as usize);
    }
    out
}

fn lift(n: usize, e: &Element, f: impl Fn(&Word) -> Vec<(Word, i64)>) -> Element {
    let mut out = Element::zero(n);
    for (w, c) in e.terms() {
        for (v, s) in f(w) {
            out.add_term(v, c * &ExactScalar::from_int(s));
        }
    }
    out
}

/// Δ_ab(e), the left-acting twisted derivation.
pub fn delta_op(a: usize, b: usize, e: &Element) -> Result<Element> {
    check_pair(a, b)?;
    Ok(lift(e.n(), e, |w| delta_word(a, b, w)))
}

/// (e)∇_ab, the right-acting twisted derivation.
pub fn nabla_op(e: &Element, a: usize, b: usize) -> Result<Element> {
    check_pair(a, b)?;
    Ok(lift(e.n(), e, |w| nabla_word(w, a, b)))
}

/// Δ_P(Q) = Δ_{p_1}∘…∘Δ_{p_d}(Q); the last letter acts first.
pub fn delta_by_word(p: &Word, q: &Element) -> Element {
    let mut cur = q.clone();
    for g in p.letters().iter().rev() {
        cur = lift(q.n(), &cur, |w| delta_word(g.i as usize, g.j as usize, w));
    }
    cur
}

/// (Q)∇_P; the first letter of P acts first.
pub fn nabla_by_word(q: &Element, p: &Word) -> Element {
    let mut cur = q.clone();
    for g in p.letters() {
        cur = lift(q.n(), &cur, |w| nabla_word(w, g.i as usize, g.j as usize));
    }
    cur
}

thread_local! {
    static PAIR_MEMO: RefCell<FxHashMap<(Word, Word), i64>> = RefCell::new(FxHashMap::default());
}

/// Drop this thread's memo of word pairings.
pub fn clear_pair_cache() {
    PAIR_MEMO.with(|m| m.borrow_mut().clear());
}

/// ⟨p, q⟩ for words: peel the last letter of p as Δ on q.
pub fn pair_words(p: &Word, q: &Word) -> i64 {
    if p.len() != q.len() {
        return 0;
    }
    if p.is_empty() {
        return 1;
    }
    let key = (p.clone(), q.clone());
    if let Some(v) = PAIR_MEMO.with(|m| m.borrow().get(&key).copied()) {
        return v;
    }
    let last = p.letters()[p.len() - 1];
    let head = p.slice(0, p.len() - 1);
    let mut total = 0i64;
    for (w, s) in delta_word(last.i as usize, last.j as usize, q) {
        total += s * pair_words(&head, &w);
    }
    PAIR_MEMO.with(|m| m.borrow_mut().insert(key, total));
    total
}

/// ⟨P, Q⟩; components of different degree pair to 0.
pub fn pair(p: &Element, q: &Element) -> ExactScalar {
    let mut total = ExactScalar::zero();
    for (u, c) in p.terms() {
        for (v, d) in q.terms() {
            if u.len() == v.len() {
                let x = pair_words(u, v);
                if x != 0 {
                    total += &(&(c * d) * &ExactScalar::from_int(x));
                }
            }
        }
    }
    total
}

/// Element of E_n ⊗ E_n on free-word representatives.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TensorElement {
    n: usize,
    terms: BTreeMap<(Word, Word), ExactScalar>,
}

impl TensorElement {
    pub fn zero(n: usize) -> Self {
        TensorElement { n, terms: BTreeMap::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_term(&mut self, left: Word, right: Word, c: ExactScalar) {
        if c.is_zero() {
            return;
        }
        let key = (left, right);
        let e = self.terms.entry(key.clone()).or_default();
        *e += &c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Word, &ExactScalar)> {
        self.terms.iter().map(|((l, r), c)| (l, r, c))
    }

    pub fn coeff(&self, left: &Word, right: &Word) -> ExactScalar {
        self.terms.get(&(left.clone(), right.clone())).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, ((l, r), c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            write!(f, "{sign}{}*{l}⊗{r}", c.abs())?;
        }
        Ok(())
    }
}

/// Braided coproduct: Δ(x) = x⊗1 + 1⊗x extended with
/// (P1⊗Q1)(P2⊗Q2) = P1·σ_{Q1}(P2) ⊗ Q1Q2.
pub fn coproduct(e: &Element) -> TensorElement {
    let n = e.n();
    let mut out = TensorElement::zero(n);
    for (w, c) in e.terms() {
        let mut cur: Vec<(Word, Word, i64)> = vec![(Word::empty(), Word::empty(), 1)];
        for &g in w.letters() {
            let mut next = Vec::with_capacity(cur.len() * 2);
            for (l, r, s) in cur {
                let sigma = sn_degree(&r, n.max(w.max_vertex()));
                let (t, moved) = relabel_word(&sigma, &Word::letter(g));
                next.push((l.concat(&moved), r.clone(), s * t));
                next.push((l, r.append(g), s));
            }
            cur = next;
        }
        for (l, r, s) in cur {
            out.add_term(l, r, c * &ExactScalar::from_int(s));
        }
    }
    out
}

/// Dual-basis functional of a free word.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct WordFunctional {
    pub word: Word,
}

impl WordFunctional {
    pub fn new(word: Word) -> Self {
        WordFunctional { word }
    }

    /// Coefficient of the word in e.
    pub fn eval(&self, e: &Element) -> ExactScalar {
        e.coeff(&self.word)
    }
}

/// p∨ * Q = Σ p∨(Q_(1)) · Q_(2).
pub fn dual_act(f: &WordFunctional, q: &Element) -> Element {
    let mut out = Element::zero(q.n());
    for (l, r, c) in coproduct(q).terms() {
        if *l == f.word {
            out.add_term(r.clone(), c.clone());
        }
    }
    out
}

fn check_same_degree(rows: &[Word], cols: &[Word]) -> Result<()> {
    let mut it = rows.iter().chain(cols);
    if let Some(first) = it.next() {
        if let Some(w) = it.find(|w| w.len() != first.len()) {
            return Err(Error::MixedDegree(format!("{first} and {w}")));
        }
    }
    Ok(())
}

/// Rank of the matrix ⟨row_i, col_j⟩, by fraction-free elimination.
pub fn gram_rank(rows: &[Word], cols: &[Word]) -> Result<usize> {
    check_same_degree(rows, cols)?;
    if rows.is_empty() || cols.is_empty() {
        return Ok(0);
    }
    let m: Vec<Vec<BigInt>> =
        rows.par_iter().map(|r| cols.iter().map(|c| BigInt::from(pair_words(r, c))).collect()).collect();
    Ok(bareiss_rank(m))
}

/// gram_rank split into blocks: ⟨P, Q⟩ can only be nonzero when
/// σ_P = σ_Q⁻¹, so rows are grouped by σ_P and columns by σ_Q⁻¹.
pub fn gram_rank_blocked(rows: &[Word], cols: &[Word]) -> Result<usize> {
    check_same_degree(rows, cols)?;
    let size = rows.iter().chain(cols).map(|w| w.max_vertex()).max().unwrap_or(0).max(1);
    let mut blocks: BTreeMap<Permutation, (Vec<Word>, Vec<Word>)> = BTreeMap::new();
    for r in rows {
        blocks.entry(sn_degree(r, size)).or_default().0.push(r.clone());
    }
    for c in cols {
        blocks.entry(sn_degree(c, size).inverse()).or_default().1.push(c.clone());
    }
    let ranks: Result<Vec<usize>> = blocks.into_par_iter().map(|(_, (r, c))| gram_rank(&r, &c)).collect();
    Ok(ranks?.into_iter().sum())
}

/// Graded dimensions of E_G computed through ∇ alone.
#[derive(Clone, Debug)]
pub struct FormRankProfile {
    /// monomial basis words per degree
    pub words: Vec<Vec<Word>>,
    /// a degree of dimension 0 was reached
    pub terminated: bool,
}

impl FormRankProfile {
    pub fn dims(&self) -> Vec<usize> {
        self.words.iter().map(|w| w.len()).collect()
    }
}

/// Dimensions of the image of E_G in E_n modulo the radical of the form.
///
/// An element Q of positive degree lies in the radical iff every (Q)∇_ab
/// does, so Q is recorded by its coordinates ((Q)∇_ab)_ab over the basis
/// one degree lower. (E_G)∇_ab ⊂ E_G keeps those coordinates inside the
/// subalgebra. For candidates x_e·c the right Leibniz rule gives
/// (x_e c)∇_ab = x_e·(c)∇_ab + (x_e)∇_{σ_c(a)σ_c(b)}·c, which needs only the
/// multiplication table of the previous degree.
///
/// When the form is nondegenerate on E_n (n ≤ 5) these are the dimensions of
/// E_G itself.
pub fn form_rank_profile(g: &Graph, n: usize, max_d: usize) -> Result<FormRankProfile> {
    if g.n() > n {
        return Err(Error::AmbientMismatch(g.n(), n));
    }
    let edges = g.generators();
    let pairs = Generator::all(n);
    let np = pairs.len();
    let mut words: Vec<Vec<Word>> = vec![vec![Word::empty()]];
    // nabla[c][p]: (basis_c)∇_p over the basis one degree lower
    let mut nabla: Vec<Vec<SparseVec>> = vec![vec![Vec::new(); np]];
    // mult[e][c]: x_e · basis_c (previous degree) over the current basis
    let mut mult: Vec<Vec<SparseVec>> = Vec::new();
    let mut terminated = false;
    for _d in 1..=max_d {
        let prev = words.last().expect("degree 0 present");
        let width = prev.len() as u32;
        let sigmas: Vec<Permutation> = prev.iter().map(|w| sn_degree(w, n)).collect();
        let mut echelons: FxHashMap<Grade, (Echelon, Vec<u32>)> = FxHashMap::default();
        let mut new_words: Vec<Word> = Vec::new();
        let mut new_nabla: Vec<Vec<SparseVec>> = Vec::new();
        let mut new_mult: Vec<Vec<SparseVec>> = vec![Vec::with_capacity(prev.len()); edges.len()];
        for (ei, &e) in edges.iter().enumerate() {
            for (ci, c) in prev.iter().enumerate() {
                let mut coords: SparseVec = Vec::new();
                let mut split: Vec<SparseVec> = Vec::with_capacity(np);
                for (pi, p) in pairs.iter().enumerate() {
                    let mut acc = FxHashMap::default();
                    for (k, x) in &nabla[ci][pi] {
                        accumulate(&mut acc, x, &mult[ei][*k as usize]);
                    }
                    let (a, b) = p.vertices();
                    let s = letter_delta(sigmas[ci].apply(a), sigmas[ci].apply(b), e);
                    if s != 0 {
                        let entry = acc.entry(ci as u32).or_default();
                        *entry += &ExactScalar::from_int(s);
                    }
                    let v = from_map(acc);
                    coords.extend(v.iter().map(|(k, x)| (pi as u32 * width + k, x.clone())));
                    split.push(v);
                }
                let word = c.prepend(e);
                let (ech, globals) =
                    echelons.entry(grade_of(&word)).or_insert_with(|| (Echelon::with_tracking(), Vec::new()));
                let m = match ech.insert(coords) {
                    Insert::New(_) => {
                        globals.push(new_words.len() as u32);
                        new_words.push(word);
                        new_nabla.push(split);
                        vec![(globals[globals.len() - 1], ExactScalar::one())]
                    }
                    Insert::Dependent(combo) => {
                        let mut v: SparseVec = combo
                            .expect("tracking enabled")
                            .into_iter()
                            .map(|(k, x)| (globals[k as usize], x))
                            .collect();
                        v.sort_unstable_by_key(|t| t.0);
                        v
                    }
                };
                new_mult[ei].push(m);
            }
        }
        let empty = new_words.is_empty();
        words.push(new_words);
        nabla = new_nabla;
        mult = new_mult;
        if empty {
            terminated = true;
            break;
        }
    }
    Ok(FormRankProfile { words, terminated })
}
