//! The free associative algebra on the generators x_ij, with its gradings.

use crate::error::{Error, Result};
use crate::graphs::Graph;
use crate::scalar::ExactScalar;
use smallvec::SmallVec;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// A generator x_ij with i < j (1-based vertex labels).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Generator {
    pub i: u8,
    pub j: u8,
}

impl Generator {
    pub fn new(i: usize, j: usize) -> Result<Self> {
        if i == 0 || i >= j || j > 255 {
            return Err(Error::InvalidPair(i, j));
        }
        Ok(Generator { i: i as u8, j: j as u8 })
    }

    /// Position of x_ij in the lex-ordered list of generators of E_n.
    pub fn index(self, n: usize) -> usize {
        let (i, j) = (self.i as usize - 1, self.j as usize - 1);
        // pairs (a,b) with a < i come first: sum_{a<i} (n-1-a)
        i * (2 * n - i - 1) / 2 + (j - i - 1)
    }

    pub fn from_index(n: usize, mut idx: usize) -> Self {
        for i in 0..n {
            let row = n - 1 - i;
            if idx < row {
                return Generator { i: (i + 1) as u8, j: (i + 2 + idx) as u8 };
            }
            idx -= row;
        }
        panic!("generator index out of range");
    }

    /// All generators of E_n in lex order.
    pub fn all(n: usize) -> Vec<Generator> {
        let mut v = Vec::with_capacity(n * (n.saturating_sub(1)) / 2);
        for i in 1..=n {
            for j in i + 1..=n {
                v.push(Generator { i: i as u8, j: j as u8 });
            }
        }
        v
    }

    pub fn vertices(self) -> (usize, usize) {
        (self.i as usize, self.j as usize)
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.i < 10 && self.j < 10 {
            write!(f, "x{}{}", self.i, self.j)
        } else {
            write!(f, "x{}_{}", self.i, self.j)
        }
    }
}

/// x_ij = sign · x_{min,max}.
pub fn normalize_pair(i: usize, j: usize) -> Result<(i8, Generator)> {
    if i == j || i == 0 || j == 0 {
        return Err(Error::InvalidPair(i, j));
    }
    if i < j {
        Ok((1, Generator::new(i, j)?))
    } else {
        Ok((-1, Generator::new(j, i)?))
    }
}

pub type Letters = SmallVec<[Generator; 16]>;

/// A word in the generators. Ordered degree-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Letters);

impl Word {
    pub fn empty() -> Self {
        Word(SmallVec::new())
    }

    pub fn from_letters(letters: &[Generator]) -> Self {
        Word(SmallVec::from_slice(letters))
    }

    pub fn letter(g: Generator) -> Self {
        let mut v = SmallVec::new();
        v.push(g);
        Word(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Generator] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn prepend(&self, g: Generator) -> Word {
        let mut v: Letters = SmallVec::with_capacity(self.len() + 1);
        v.push(g);
        v.extend_from_slice(&self.0);
        Word(v)
    }

    pub fn append(&self, g: Generator) -> Word {
        let mut v = self.0.clone();
        v.push(g);
        Word(v)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn slice(&self, from: usize, to: usize) -> Word {
        Word::from_letters(&self.0[from..to])
    }

    /// Largest vertex label used, 0 for the empty word.
    pub fn max_vertex(&self) -> usize {
        self.0.iter().map(|g| g.j as usize).max().unwrap_or(0)
    }

    /// Parse `x12.x23`, `1` for the empty word.
    pub fn parse(s: &str) -> Result<Word> {
        let s = s.trim();
        if s == "1" || s.is_empty() {
            return Ok(Word::empty());
        }
        let mut v = SmallVec::new();
        for tok in s.split('.') {
            let (sign, g) = parse_generator(tok)?;
            if sign != 1 {
                return Err(Error::Parse(format!("letter `{tok}` must have i<j")));
            }
            v.push(g);
        }
        Ok(Word(v))
    }
}

/// Parse `x12`, `x1_10`, or a reversed pair `x21` (returned with sign -1).
pub fn parse_generator(tok: &str) -> Result<(i8, Generator)> {
    let bad = || Error::Parse(format!("bad generator `{tok}`"));
    let body = tok.trim().strip_prefix('x').ok_or_else(bad)?;
    let (i, j) = if let Some((a, b)) = body.split_once('_') {
        (a.parse::<usize>().map_err(|_| bad())?, b.parse::<usize>().map_err(|_| bad())?)
    } else if body.len() == 2 && body.chars().all(|c| c.is_ascii_digit()) {
        let b = body.as_bytes();
        ((b[0] - b'0') as usize, (b[1] - b'0') as usize)
    } else {
        return Err(bad());
    };
    normalize_pair(i, j).map_err(|_| bad())
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.as_slice().cmp(other.0.as_slice()))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        for (k, g) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ".")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A permutation of {1..n}, stored 0-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    img: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { img: (0..n as u8).collect() }
    }

    /// From 1-based one-line notation.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut img = Vec::with_capacity(n);
        for &v in images {
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::Range(format!("not a permutation: {images:?}")));
            }
            seen[v - 1] = true;
            img.push((v - 1) as u8);
        }
        Ok(Permutation { img })
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut p = Self::identity(n);
        p.img.swap(a - 1, b - 1);
        p
    }

    pub fn n(&self) -> usize {
        self.img.len()
    }

    /// σ(i), 1-based.
    pub fn apply(&self, i: usize) -> usize {
        self.img[i - 1] as usize + 1
    }

    pub fn images(&self) -> Vec<usize> {
        self.img.iter().map(|&v| v as usize + 1).collect()
    }

    /// (self ∘ other)(i) = self(other(i)).
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.n(), other.n());
        Permutation { img: other.img.iter().map(|&v| self.img[v as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut img = vec![0u8; self.n()];
        for (i, &v) in self.img.iter().enumerate() {
            img[v as usize] = i as u8;
        }
        Permutation { img }
    }

    pub fn is_identity(&self) -> bool {
        self.img.iter().enumerate().all(|(i, &v)| i == v as usize)
    }

    /// Right-multiply in place by the transposition (a b): self ← self ∘ (a b).
    pub fn mul_transposition_right(&mut self, a: usize, b: usize) {
        self.img.swap(a - 1, b - 1);
    }

    /// Left-multiply in place by (a b): self ← (a b) ∘ self.
    pub fn mul_transposition_left(&mut self, a: usize, b: usize) {
        let (a, b) = ((a - 1) as u8, (b - 1) as u8);
        for v in self.img.iter_mut() {
            if *v == a {
                *v = b;
            } else if *v == b {
                *v = a;
            }
        }
    }

    /// 4 bits per entry; valid for n ≤ 16.
    pub fn pack(&self) -> u64 {
        self.img.iter().enumerate().fold(0u64, |acc, (k, &v)| acc | ((v as u64) << (4 * k)))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.images().iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", v.join(","))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// σ_{g1}∘σ_{g2}∘…∘σ_{gd}.
pub fn sn_degree(w: &Word, n: usize) -> Permutation {
    let mut p = Permutation::identity(n);
    for g in w.letters() {
        p.mul_transposition_right(g.i as usize, g.j as usize);
    }
    p
}

/// A set partition of {1..n}; blocks sorted internally and by least element.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SetPartition {
    pub blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    pub fn singletons(n: usize) -> Self {
        SetPartition { blocks: (1..=n).map(|i| vec![i]).collect() }
    }

    fn from_parent(parent: &mut [usize]) -> Self {
        let n = parent.len();
        let mut map: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 0..n {
            let r = find(parent, v);
            map.entry(r).or_default().push(v + 1);
        }
        let mut blocks: Vec<Vec<usize>> = map.into_values().collect();
        blocks.sort();
        SetPartition { blocks }
    }

    /// The common coarsening (join) of two partitions of the same set.
    pub fn join(&self, other: &SetPartition) -> SetPartition {
        let n = self.blocks.iter().map(|b| b.len()).sum();
        let mut parent: Vec<usize> = (0..n).collect();
        for b in self.blocks.iter().chain(other.blocks.iter()) {
            for w in b.windows(2) {
                union(&mut parent, w[0] - 1, w[1] - 1);
            }
        }
        Self::from_parent(&mut parent)
    }
}

fn find(parent: &mut [usize], mut v: usize) -> usize {
    while parent[v] != v {
        parent[v] = parent[parent[v]];
        v = parent[v];
    }
    v
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        parent[ra.max(rb)] = ra.min(rb);
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wide = self.blocks.iter().flatten().any(|&v| v >= 10);
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| {
                let s: Vec<String> = b.iter().map(|v| v.to_string()).collect();
                s.join(if wide { "," } else { "" })
            })
            .collect();
        write!(f, "{}", parts.join("|"))
    }
}

pub fn support_partition(w: &Word, n: usize) -> SetPartition {
    let mut parent: Vec<usize> = (0..n).collect();
    for g in w.letters() {
        union(&mut parent, g.i as usize - 1, g.j as usize - 1);
    }
    SetPartition::from_parent(&mut parent)
}

/// Joint grading used to split linear algebra into independent blocks:
/// the set of vertices touched (bitmask) and the S_n-degree.
/// Every defining relation of E_n is homogeneous for both.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Grade {
    pub support: u16,
    pub perm: u64,
}

impl Grade {
    pub fn trivial() -> Grade {
        Grade { support: 0, perm: Permutation::identity(16).pack() }
    }

    /// Grade of x·w given the grade of w.
    pub fn left_mul(self, g: Generator) -> Grade {
        let (a, b) = (g.i as u64 - 1, g.j as u64 - 1);
        let support = self.support | (1 << a) | (1 << b);
        let mut perm = 0u64;
        for k in 0..16 {
            let v = (self.perm >> (4 * k)) & 15;
            let v = if v == a {
                b
            } else if v == b {
                a
            } else {
                v
            };
            perm |= v << (4 * k);
        }
        Grade { support, perm }
    }
}

/// Grade of a word (S_n-degree embedded in S_16); requires n ≤ 16.
pub fn grade_of(w: &Word) -> Grade {
    let mut support = 0u16;
    for g in w.letters() {
        support |= (1 << (g.i - 1)) | (1 << (g.j - 1));
    }
    let mut p = Permutation::identity(16);
    for g in w.letters() {
        p.mul_transposition_right(g.i as usize, g.j as usize);
    }
    Grade { support, perm: p.pack() }
}

/// A finite linear combination of words with exact coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Element {
    n: usize,
    terms: BTreeMap<Word, ExactScalar>,
}

impl Element {
    pub fn zero(n: usize) -> Self {
        Element { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::from_word(n, Word::empty())
    }

    pub fn from_word(n: usize, w: Word) -> Self {
        Self::from_term(n, w, ExactScalar::one())
    }

    pub fn from_term(n: usize, w: Word, c: ExactScalar) -> Self {
        let mut e = Self::zero(n);
        e.add_term(w, c);
        e
    }

    /// x_ij for any ordered pair, with the antisymmetry sign.
    pub fn generator(n: usize, i: usize, j: usize) -> Result<Self> {
        let (s, g) = normalize_pair(i, j)?;
        if g.j as usize > n {
            return Err(Error::Range(format!("x{i}{j} outside E_{n}")));
        }
        Ok(Self::from_term(n, Word::letter(g), ExactScalar::from_int(s as i64)))
    }

    /// Product of signed generators given as ordered vertex pairs.
    pub fn monomial(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut sign = 1i64;
        let mut letters = Letters::new();
        for &(i, j) in pairs {
            let (s, g) = normalize_pair(i, j)?;
            if g.j as usize > n {
                return Err(Error::Range(format!("x{i}{j} outside E_{n}")));
            }
            sign *= s as i64;
            letters.push(g);
        }
        Ok(Self::from_term(n, Word(letters), ExactScalar::from_int(sign)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &ExactScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> ExactScalar {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, w: Word, c: ExactScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut e = self.clone();
        for (w, c) in other.terms() {
            e.add_term(w.clone(), c.clone());
        }
        e
    }

    pub fn sub(&self, other: &Element) -> Element {
        self.add(&other.scale(&ExactScalar::from_int(-1)))
    }

    pub fn scale(&self, c: &ExactScalar) -> Element {
        if c.is_zero() {
            return Element::zero(self.n);
        }
        Element { n: self.n, terms: self.terms.iter().map(|(w, v)| (w.clone(), v * c)).collect() }
    }

    /// Same terms, reinterpreted in a larger ambient algebra.
    pub fn with_ambient(&self, n: usize) -> Result<Element> {
        if self.terms.keys().any(|w| w.max_vertex() > n) {
            return Err(Error::AmbientMismatch(self.n, n));
        }
        Ok(Element { n, terms: self.terms.clone() })
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|w| w.len()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|w| w.len());
        match it.next() {
            None => true,
            Some(d) => it.all(|x| x == d),
        }
    }

    /// Homogeneous component of degree d.
    pub fn component(&self, d: usize) -> Element {
        Element {
            n: self.n,
            terms: self.terms.iter().filter(|(w, _)| w.len() == d).map(|(w, c)| (w.clone(), c.clone())).collect(),
        }
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.terms.keys().map(|w| w.len()).collect();
        v.dedup();
        v
    }

    /// Parse `+1*x12.x23 -1*x13.x12`; `0` is the zero element.
    pub fn parse(s: &str, n: usize) -> Result<Element> {
        let mut e = Element::zero(n);
        let s = s.trim();
        if s == "0" || s.is_empty() {
            return Ok(e);
        }
        for tok in s.split_whitespace() {
            let (coef, word) = match tok.split_once('*') {
                Some((c, w)) => (c.parse::<ExactScalar>().map_err(|x| Error::Parse(x.to_string()))?, w),
                None => {
                    let (sign, rest) = match tok.as_bytes()[0] {
                        b'-' => (-1, &tok[1..]),
                        b'+' => (1, &tok[1..]),
                        _ => (1, tok),
                    };
                    (ExactScalar::from_int(sign), rest)
                }
            };
            let mut c = coef;
            let w = if word == "1" {
                Word::empty()
            } else {
                let mut letters = Letters::new();
                for t in word.split('.') {
                    let (sg, g) = parse_generator(t)?;
                    if sg < 0 {
                        c = -c;
                    }
                    letters.push(g);
                }
                Word(letters)
            };
            if w.max_vertex() > n {
                return Err(Error::Parse(format!("word {w} outside E_{n}")));
            }
            e.add_term(w, c);
        }
        Ok(e)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in &self.terms {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if c.is_negative() {
                write!(f, "{c}*{w}")?;
            } else {
                write!(f, "+{c}*{w}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Free-algebra product (concatenation), no reduction.
pub fn multiply(a: &Element, b: &Element) -> Result<Element> {
    if a.n != b.n {
        return Err(Error::AmbientMismatch(a.n, b.n));
    }
    let mut out = Element::zero(a.n);
    for (u, c) in a.terms() {
        for (v, d) in b.terms() {
            out.add_term(u.concat(v), c * d);
        }
    }
    Ok(out)
}

pub fn reverse(e: &Element) -> Element {
    let mut out = Element::zero(e.n);
    for (w, c) in e.terms() {
        out.add_term(w.reversed(), c.clone());
    }
    out
}

/// Relabel a word letterwise, returning the sign picked up.
pub fn relabel_word(sigma: &Permutation, w: &Word) -> (i64, Word) {
    let mut sign = 1i64;
    let mut letters = Letters::with_capacity(w.len());
    for g in w.letters() {
        let (a, b) = (sigma.apply(g.i as usize), sigma.apply(g.j as usize));
        let (s, h) = normalize_pair(a, b).expect("permutation keeps pairs distinct");
        sign *= s as i64;
        letters.push(h);
    }
    (sign, Word(letters))
}

pub fn relabel(sigma: &Permutation, e: &Element) -> Element {
    let mut out = Element::zero(e.n);
    for (w, c) in e.terms() {
        let (s, w2) = relabel_word(sigma, w);
        out.add_term(w2, if s < 0 { -c } else { c.clone() });
    }
    out
}

/// Streams all |E(g)|^d words over g's generators in word order.
pub struct WordsOfDegree {
    gens: Vec<Generator>,
    idx: Vec<usize>,
    done: bool,
}

impl Iterator for WordsOfDegree {
    type Item = Word;
    fn next(&mut self) -> Option<Word> {
        if self.done {
            return None;
        }
        let w = Word(self.idx.iter().map(|&k| self.gens[k]).collect());
        // odometer, last position fastest
        let mut pos = self.idx.len();
        loop {
            if pos == 0 {
                self.done = true;
                break;
            }
            pos -= 1;
            self.idx[pos] += 1;
            if self.idx[pos] < self.gens.len() {
                break;
            }
            self.idx[pos] = 0;
        }
        Some(w)
    }
}

pub fn words_of_degree(g: &Graph, d: usize) -> WordsOfDegree {
    let gens = g.generators();
    let done = gens.is_empty() && d > 0;
    WordsOfDegree { gens, idx: vec![0; d], done }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_index_roundtrip() {
        for n in 2..8 {
            for (k, g) in Generator::all(n).into_iter().enumerate() {
                assert_eq!(g.index(n), k);
                assert_eq!(Generator::from_index(n, k), g);
            }
        }
    }

    #[test]
    fn normalize_pair_signs() {
        assert_eq!(normalize_pair(1, 2).unwrap(), (1, Generator { i: 1, j: 2 }));
        assert_eq!(normalize_pair(2, 1).unwrap(), (-1, Generator { i: 1, j: 2 }));
        assert_eq!(normalize_pair(3, 1).unwrap(), (-1, Generator { i: 1, j: 3 }));
        assert!(normalize_pair(2, 2).is_err());
    }

    #[test]
    fn sn_degree_convention() {
        let w = Word::parse("x12.x23").unwrap();
        let p = sn_degree(&w, 3);
        assert_eq!(p.images(), vec![2, 3, 1]);
        assert!(sn_degree(&Word::empty(), 4).is_identity());
    }

    #[test]
    fn support_partition_example() {
        let e = Element::monomial(5, &[(1, 2), (2, 3), (4, 5), (3, 1)]).unwrap();
        let (w, _) = e.terms().next().unwrap();
        assert_eq!(support_partition(w, 5).to_string(), "123|45");
        assert_eq!(support_partition(&Word::empty(), 3).to_string(), "1|2|3");
    }

    #[test]
    fn relabel_examples() {
        let e = Element::monomial(3, &[(1, 2), (2, 3)]).unwrap();
        let s13 = Permutation::transposition(3, 1, 3);
        assert_eq!(relabel(&s13, &e).to_string(), "+1*x23.x12");
        let s12 = Permutation::transposition(3, 1, 2);
        assert_eq!(relabel(&s12, &Element::generator(3, 1, 2).unwrap()).to_string(), "-1*x12");
    }

    #[test]
    fn element_text_roundtrip() {
        let e = Element::parse("+1*x12.x23 -1*x13.x12 +3/2*1", 3).unwrap();
        let again = Element::parse(&e.to_string(), 3).unwrap();
        assert_eq!(e, again);
        assert_eq!(Element::parse("x21", 3).unwrap().to_string(), "-1*x12");
    }

    #[test]
    fn free_products() {
        let a = Element::generator(3, 1, 2).unwrap().scale(&2.into());
        let b = Element::generator(3, 1, 2).unwrap().scale(&3.into());
        assert_eq!(multiply(&a, &b).unwrap().to_string(), "+6*x12.x12");
        assert!(multiply(&a, &Element::zero(3)).unwrap().is_zero());
        assert!(multiply(&a, &Element::zero(4)).is_err());
    }
}
