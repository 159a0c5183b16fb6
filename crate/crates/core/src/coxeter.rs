//! Extended affine symmetric group in window notation, nil-Coxeter products,
//! Grassmannian permutations via the δ-rule, the e_k / R_k relations of the
//! cycle algebra, primitive elements, the Θ map into E_n, and the coset
//! representatives M_n for D_{n-1} ⊂ D_n.

use crate::error::{Error, Result};
use crate::freealg::{Element, Permutation};
use crate::graphs::{named_graph, orient_for_theta, DnLabels, Family, OrientedGraph};
use crate::pairing::pair;
use crate::scalar::ExactScalar;
use crate::series::GradedSeries;
use std::fmt;

/// Element of the extended affine symmetric group, as a bijection
/// f: ℤ → ℤ with f(i+n) = f(i)+n, taken modulo the central shift i ↦ i+n
/// (the relation y_1⋯y_n = id). The window is normalized so that
/// Σ(f(i) − i) = n·k with 0 ≤ k < n; k is the power of π.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffinePerm {
    window: Vec<i64>,
}

impl AffinePerm {
    pub fn new(window: Vec<i64>) -> Result<Self> {
        let n = window.len() as i64;
        if n == 0 {
            return Err(Error::Range("empty window".into()));
        }
        let mut seen = vec![false; n as usize];
        for &v in &window {
            let r = v.rem_euclid(n) as usize;
            if seen[r] {
                return Err(Error::Range(format!("window {window:?} repeats a residue mod {n}")));
            }
            seen[r] = true;
        }
        Ok(Self::normalized(window))
    }

    fn normalized(mut window: Vec<i64>) -> Self {
        let n = window.len() as i64;
        let total: i64 = window.iter().enumerate().map(|(i, &v)| v - (i as i64 + 1)).sum();
        let q = (total / n).div_euclid(n);
        for v in window.iter_mut() {
            *v -= q * n;
        }
        AffinePerm { window }
    }

    pub fn identity(n: usize) -> Self {
        AffinePerm { window: (1..=n as i64).collect() }
    }

    /// π: i ↦ i+1.
    pub fn pi(n: usize) -> Self {
        Self::normalized((2..=n as i64 + 1).collect())
    }

    pub fn pi_pow(n: usize, k: i64) -> Self {
        Self::normalized((1..=n as i64).map(|i| i + k).collect())
    }

    /// Simple reflection s_i, 0 ≤ i < n; s_0 has window [0, 2, …, n−1, n+1].
    pub fn s(n: usize, i: usize) -> Result<Self> {
        if n < 2 || i >= n {
            return Err(Error::Range(format!("s_{i} not a simple reflection of the affine group of rank {n}")));
        }
        let mut w: Vec<i64> = (1..=n as i64).collect();
        if i == 0 {
            w[0] = 0;
            w[n - 1] = n as i64 + 1;
        } else {
            w.swap(i - 1, i);
        }
        Ok(Self::normalized(w))
    }

    /// Translation y_i: i ↦ i+n, other window entries fixed.
    pub fn y(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i > n {
            return Err(Error::Range(format!("y_{i} out of range for n = {n}")));
        }
        let mut w: Vec<i64> = (1..=n as i64).collect();
        w[i - 1] += n as i64;
        Ok(Self::normalized(w))
    }

    pub fn from_perm(p: &Permutation) -> Self {
        AffinePerm { window: p.images().into_iter().map(|v| v as i64).collect() }
    }

    /// π^k · s_{l_1} ⋯ s_{l_m}.
    pub fn from_word(n: usize, k: i64, letters: &[usize]) -> Result<Self> {
        let mut w = Self::pi_pow(n, k);
        for &l in letters {
            w = w.compose(&Self::s(n, l)?);
        }
        Ok(w)
    }

    pub fn n(&self) -> usize {
        self.window.len()
    }

    pub fn window(&self) -> &[i64] {
        &self.window
    }

    /// f(j) for any integer j.
    pub fn value(&self, j: i64) -> i64 {
        let n = self.n() as i64;
        let r = (j - 1).rem_euclid(n);
        self.window[r as usize] + (j - 1 - r)
    }

    /// self ∘ other.
    pub fn compose(&self, other: &AffinePerm) -> AffinePerm {
        assert_eq!(self.n(), other.n());
        Self::normalized(other.window.iter().map(|&v| self.value(v)).collect())
    }

    pub fn inverse(&self) -> AffinePerm {
        let n = self.n() as i64;
        let mut w = vec![0i64; self.n()];
        for (i, &v) in self.window.iter().enumerate() {
            let r = (v - 1).rem_euclid(n);
            w[r as usize] = i as i64 + 1 - (v - 1 - r);
        }
        Self::normalized(w)
    }

    /// The k with self = π^k · v, v in the non-extended group.
    pub fn pi_power(&self) -> usize {
        let n = self.n() as i64;
        let total: i64 = self.window.iter().enumerate().map(|(i, &v)| v - (i as i64 + 1)).sum();
        (total / n).rem_euclid(n) as usize
    }

    /// Coxeter length: Σ_{i<j} |⌊(f(j) − f(i))/n⌋|; powers of π have length 0.
    pub fn length(&self) -> usize {
        let n = self.n() as i64;
        let mut total = 0;
        for i in 0..self.window.len() {
            for j in i + 1..self.window.len() {
                total += (self.window[j] - self.window[i]).div_euclid(n).unsigned_abs() as usize;
            }
        }
        total
    }

    /// Indices i with ℓ(w·s_i) < ℓ(w): f(i) > f(i+1), reading f(0) = f(n) − n.
    pub fn right_descents(&self) -> Vec<usize> {
        let n = self.n();
        (0..n).filter(|&i| self.value(i as i64) > self.value(i as i64 + 1)).collect()
    }

    /// Canonical reduced word (k, letters) with self = π^k s_{l_1}⋯s_{l_m},
    /// stripping the smallest right descent at each step.
    pub fn reduced_word(&self) -> (usize, Vec<usize>) {
        let n = self.n();
        let mut w = self.clone();
        let mut rev = Vec::new();
        while let Some(&i) = w.right_descents().first() {
            w = w.compose(&Self::s(n, i).expect("descent index in range"));
            rev.push(i);
        }
        rev.reverse();
        (w.pi_power(), rev)
    }

    /// Window criterion for primitivity: 0 < f(i+1) − f(i) < n for i = 1..n−1.
    pub fn is_primitive(&self) -> bool {
        let n = self.n() as i64;
        self.window.windows(2).all(|p| p[1] - p[0] > 0 && p[1] - p[0] < n)
    }
}

impl fmt::Display for AffinePerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.window.iter().map(|v| v.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl fmt::Debug for AffinePerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Render a reduced word; letters are concatenated when all are single
/// digits and dot-separated otherwise.
pub fn render_word(pi_power: usize, letters: &[usize]) -> String {
    let body = if letters.iter().all(|&l| l < 10) {
        letters.iter().map(|l| l.to_string()).collect::<String>()
    } else {
        letters.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(".")
    };
    match (pi_power, body.is_empty()) {
        (0, true) => "id".into(),
        (0, false) => body,
        (1, true) => "π".into(),
        (k, true) => format!("π^{k}"),
        (1, false) => format!("π·{body}"),
        (k, false) => format!("π^{k}·{body}"),
    }
}

/// Nil-Coxeter product t_u t_v: t_{uv} if lengths add, otherwise zero (None).
pub fn nilcox_mult(u: &AffinePerm, v: &AffinePerm) -> Option<AffinePerm> {
    let uv = u.compose(v);
    (u.length() + v.length() == uv.length()).then_some(uv)
}

/// Weakly decreasing partition (trailing zeros allowed).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Partition(pub Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.windows(2).any(|p| p[0] < p[1]) {
            return Err(Error::Range(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition(parts))
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn contains(&self, other: &Partition) -> bool {
        (0..other.0.len().max(self.0.len())).all(|i| other.part(i) <= self.part(i))
    }

    /// Rectangle with `rows` parts equal to `cols`.
    pub fn rectangle(rows: usize, cols: usize) -> Partition {
        Partition(vec![cols; rows])
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// δ-tableau of a (skew) shape λ/μ: entry k+j−i in row i, column j.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DeltaTableau {
    pub outer: Partition,
    pub inner: Partition,
    pub k: usize,
}

impl DeltaTableau {
    pub fn entry(&self, row: usize, col: usize) -> usize {
        self.k + col - row
    }

    /// Boxes (row, col), 1-based, in removal order: rightmost column first,
    /// bottom to top within a column.
    pub fn removal_order(&self) -> Vec<(usize, usize)> {
        let width = self.outer.part(0);
        let mut out = Vec::new();
        for col in (1..=width).rev() {
            for row in (1..=self.outer.0.len()).rev() {
                if self.outer.part(row - 1) >= col && self.inner.part(row - 1) < col {
                    out.push((row, col));
                }
            }
        }
        out
    }
}

fn check_box(lambda: &Partition, k: usize, n: usize) -> Result<()> {
    if k == 0 || k >= n || lambda.0.len() > k || lambda.part(0) > n - k {
        return Err(Error::Range(format!("{lambda} does not fit in a {k}×{} box", n.saturating_sub(k))));
    }
    Ok(())
}

pub fn delta_tableau(lambda: &Partition, k: usize, n: usize) -> Result<DeltaTableau> {
    check_box(lambda, k, n)?;
    Ok(DeltaTableau { outer: lambda.clone(), inner: Partition(Vec::new()), k })
}

/// Canonical reduced word of γ(λ/μ) (μ empty for a straight shape).
pub fn gamma_word(lambda: &Partition, mu: &Partition, k: usize, n: usize) -> Result<Vec<usize>> {
    check_box(lambda, k, n)?;
    if !lambda.contains(mu) {
        return Err(Error::Range(format!("{mu} is not contained in {lambda}")));
    }
    let t = DeltaTableau { outer: lambda.clone(), inner: mu.clone(), k };
    Ok(t.removal_order().into_iter().map(|(r, c)| t.entry(r, c)).collect())
}

/// Grassmannian permutation γ(λ): increasing on 1..k and on k+1..n with
/// λ = (w_k − k, …, w_1 − 1).
pub fn gamma_perm(lambda: &Partition, k: usize, n: usize) -> Result<Permutation> {
    check_box(lambda, k, n)?;
    let mut first: Vec<usize> = (1..=k).map(|i| lambda.part(k - i) + i).collect();
    first.sort_unstable();
    let rest: Vec<usize> = (1..=n).filter(|v| !first.contains(v)).collect();
    first.extend(rest);
    Permutation::from_images(&first)
}

/// One term y_{i_1}⋯y_{i_k} of e_k(y_1, …, y_n), written π^k · letters.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EkTerm {
    pub subset: Vec<usize>,
    pub lambda: Partition,
    pub pi_power: usize,
    pub letters: Vec<usize>,
}

/// All C(n,k) terms, each as π^k · σ_π^{−k}(γ(λ)) · γ(Ω/λ); ordered by |λ|
/// and then by λ in decreasing lex order.
pub fn ek_terms(n: usize, k: usize) -> Result<Vec<EkTerm>> {
    if n < 2 || k == 0 || k >= n {
        return Err(Error::Range(format!("need 1 ≤ k ≤ n−1, got n = {n}, k = {k}")));
    }
    let omega = Partition::rectangle(k, n - k);
    let mut out = Vec::new();
    for subset in k_subsets(n, k) {
        let lambda = Partition((0..k).map(|r| subset[k - 1 - r] - (k - r)).collect());
        let head = gamma_word(&lambda, &Partition(Vec::new()), k, n)?;
        let mut letters: Vec<usize> = head.iter().map(|&l| (l + n - k) % n).collect();
        letters.extend(gamma_word(&omega, &lambda, k, n)?);
        out.push(EkTerm { subset, lambda, pi_power: k, letters });
    }
    out.sort_by(|a, b| a.lambda.size().cmp(&b.lambda.size()).then_with(|| b.lambda.cmp(&a.lambda)));
    Ok(out)
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..=n {
            cur.push(v);
            rec(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, n, k, &mut Vec::new(), &mut out);
    out
}

/// Θ: nil-Coxeter letter e ↦ generator of the directed edge e.
pub fn theta(letters: &[usize], og: &OrientedGraph) -> Result<Element> {
    let pairs: Vec<(usize, usize)> = letters
        .iter()
        .map(|&l| {
            og.direction.get(l).copied().ok_or_else(|| Error::Graph(format!("edge label {l} is not in the oriented graph")))
        })
        .collect::<Result<_>>()?;
    Element::monomial(og.underlying.n(), &pairs)
}

/// The n-cycle oriented head to tail, edge e joining e+1 → e+2.
pub fn oriented_cycle(n: usize) -> Result<OrientedGraph> {
    orient_for_theta(&named_graph(Family::Cycle, &[n])?)
}

/// R_k = Σ_λ Θ(σ_π^{−k}(γ(λ)) · γ(Ω/λ)) over the n-cycle, as an element of E_n.
pub fn rk_element(n: usize, k: usize) -> Result<Element> {
    if n < 3 {
        return Err(Error::Range(format!("R_k needs n ≥ 3, got {n}")));
    }
    let og = oriented_cycle(n)?;
    let mut out = Element::zero(n);
    for t in ek_terms(n, k)? {
        out = out.add(&theta(&t.letters, &og)?);
    }
    Ok(out)
}

/// Primitive elements: windows with 0 < f(i+1) − f(i) < n, one per class
/// modulo the central shift. There are n! of them.
pub fn primitive_elements(n: usize) -> Result<Vec<AffinePerm>> {
    if n < 2 {
        return Err(Error::Range(format!("need n ≥ 2, got {n}")));
    }
    let mut out = Vec::new();
    let mut diffs = Vec::with_capacity(n - 1);
    fn rec(n: usize, diffs: &mut Vec<i64>, out: &mut Vec<AffinePerm>) {
        if diffs.len() == n - 1 {
            for start in 1..=n as i64 {
                let mut w = vec![start];
                for &d in diffs.iter() {
                    w.push(w[w.len() - 1] + d);
                }
                out.push(AffinePerm::normalized(w));
            }
            return;
        }
        for d in 1..n as i64 {
            // residues of the partial window must stay distinct
            let mut partial = 0i64;
            let mut residues = vec![0i64];
            for &x in diffs.iter() {
                partial += x;
                residues.push(partial.rem_euclid(n as i64));
            }
            if residues.contains(&(partial + d).rem_euclid(n as i64)) {
                continue;
            }
            diffs.push(d);
            rec(n, diffs, out);
            diffs.pop();
        }
    }
    rec(n, &mut diffs, &mut out);
    out.sort_by(|a, b| a.length().cmp(&b.length()).then_with(|| a.cmp(b)));
    out.dedup();
    Ok(out)
}

/// Σ_{v primitive} t^{ℓ(v)}.
pub fn primitive_length_series(n: usize) -> Result<GradedSeries> {
    let mut coeffs: Vec<i64> = Vec::new();
    for v in primitive_elements(n)? {
        let l = v.length();
        if coeffs.len() <= l {
            coeffs.resize(l + 1, 0);
        }
        coeffs[l] += 1;
    }
    Ok(GradedSeries::from_ints(&coeffs))
}

/// n · ∏_{i=1}^{n−1} (1 − t^{i(n−i)})/(1 − t^i).
pub fn primitive_length_formula(n: usize) -> GradedSeries {
    let mut s = GradedSeries::from_ints(&[n as i64]);
    for i in 1..n {
        let num = GradedSeries::qint(i * (n - i));
        let den = GradedSeries::qint(i);
        s = s.mul(&num).divide_exact(&den).expect("[ab]/[a] is a polynomial");
    }
    s
}

/// Reduced word of the longest element of S_n (letters 1..n−1).
pub fn longest_word(n: usize) -> Vec<usize> {
    let w0 = AffinePerm { window: (1..=n as i64).rev().collect() };
    w0.reduced_word().1
}

/// ⟨Θ(w_0 · rev(v)), Θ(v · w_0)⟩ over the n-cycle, v the non-π part of a
/// primitive element.
pub fn primitive_pairing(v: &AffinePerm) -> Result<ExactScalar> {
    let n = v.n();
    let og = oriented_cycle(n)?;
    let w0 = longest_word(n);
    let (_, p) = v.reduced_word();
    let mut left = w0.clone();
    left.extend(p.iter().rev());
    let mut right = p.clone();
    right.extend(&w0);
    Ok(pair(&theta(&left, &og)?, &theta(&right, &og)?))
}

/// A coset representative of M_n with its D_n edge-label tokens.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LabeledWord {
    pub tokens: Vec<String>,
    pub element: Element,
}

impl LabeledWord {
    pub fn degree(&self) -> usize {
        self.tokens.len()
    }

    pub fn label(&self) -> String {
        if self.tokens.is_empty() {
            "id".into()
        } else if self.tokens.iter().all(|t| t.len() == 1) {
            self.tokens.concat()
        } else {
            self.tokens.join(".")
        }
    }
}

impl fmt::Display for LabeledWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

fn dn_element(labels: &DnLabels, tokens: &[String], primed: bool) -> Result<Element> {
    let pairs: Vec<(usize, usize)> = tokens.iter().map(|t| labels.edge(t, primed)).collect::<Result<_>>()?;
    Element::monomial(labels.n, &pairs)
}

fn tokens(s: &[&str]) -> Vec<String> {
    s.iter().map(|t| t.to_string()).collect()
}

/// 1 2 ⋯ i
fn ascending(i: usize) -> Vec<String> {
    (1..=i).map(|k| k.to_string()).collect()
}

/// The 2n words of M_n in D_n edge labels, in the order
/// id, (n−3), (n−4)(n−3), …, 1⋯(n−3), then a, b, ab, ba, aba times 1⋯(n−3),
/// then i(i−1)⋯1·aba·1⋯(n−3) for i = 1..n−3.
pub fn dn_mcr(n: usize) -> Result<Vec<LabeledWord>> {
    let labels = DnLabels::new(n)?;
    let m = n - 3;
    let tail = ascending(m);
    let mut seqs: Vec<Vec<String>> = vec![Vec::new()];
    for j in (1..=m).rev() {
        seqs.push((j..=m).map(|k| k.to_string()).collect());
    }
    for head in [&["a"][..], &["b"], &["a", "b"], &["b", "a"], &["a", "b", "a"]] {
        let mut t = tokens(head);
        t.extend(tail.iter().cloned());
        seqs.push(t);
    }
    for i in 1..=m {
        let mut t: Vec<String> = (1..=i).rev().map(|k| k.to_string()).collect();
        t.extend(tokens(&["a", "b", "a"]));
        t.extend(tail.iter().cloned());
        seqs.push(t);
    }
    seqs.into_iter()
        .map(|t| Ok(LabeledWord { element: dn_element(&labels, &t, false)?, tokens: t }))
        .collect()
}

/// ⟨X, X′⟩ for X = (n−3)⋯1·aba·1⋯(n−3) in D_n and X′ its primed star copy.
pub fn dn_pairing_check(n: usize) -> Result<ExactScalar> {
    let labels = DnLabels::new(n)?;
    let m = n - 3;
    let mut t: Vec<String> = (1..=m).rev().map(|k| k.to_string()).collect();
    t.extend(tokens(&["a", "b", "a"]));
    t.extend(ascending(m));
    let x = dn_element(&labels, &t, false)?;
    let xp = dn_element(&labels, &t, true)?;
    Ok(pair(&x, &xp))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lengths_and_pi() {
        let n = 3;
        assert_eq!(AffinePerm::identity(n).length(), 0);
        assert_eq!(AffinePerm::pi(n).length(), 0);
        assert_eq!(AffinePerm::pi_pow(n, 3), AffinePerm::identity(n));
        let pis0 = AffinePerm::pi(n).compose(&AffinePerm::s(n, 0).unwrap());
        assert_eq!(pis0.length(), 1);
        assert_eq!(pis0.reduced_word(), (1, vec![0]));
        let p2s0 = AffinePerm::pi_pow(n, 2).compose(&AffinePerm::s(n, 0).unwrap());
        assert_eq!(p2s0.reduced_word(), (2, vec![0]));
        assert_eq!(AffinePerm::y(3, 1).unwrap().length(), 2);
    }

    #[test]
    fn pi_conjugates_reflections() {
        for n in 3..6 {
            let pi = AffinePerm::pi(n);
            for i in 0..n {
                let lhs = pi.compose(&AffinePerm::s(n, i).unwrap());
                let rhs = AffinePerm::s(n, (i + 1) % n).unwrap().compose(&pi);
                assert_eq!(lhs, rhs);
            }
            // π = y_1 s_1 ⋯ s_{n-1}
            let c = AffinePerm::from_word(n, 0, &(1..n).collect::<Vec<_>>()).unwrap();
            assert_eq!(AffinePerm::y(n, 1).unwrap().compose(&c), pi);
        }
    }

    #[test]
    fn delta_rule_example() {
        let lambda = Partition::new(vec![3, 2, 1, 0]).unwrap();
        let w = gamma_word(&lambda, &Partition(vec![]), 4, 8).unwrap();
        let ours = AffinePerm::from_word(8, 0, &w).unwrap();
        let listed = AffinePerm::from_word(8, 0, &[6, 2, 4, 5, 3, 4]).unwrap();
        assert_eq!(ours, listed);
        assert_eq!(ours, AffinePerm::from_perm(&gamma_perm(&lambda, 4, 8).unwrap()));
    }

    #[test]
    fn r1_words_n5() {
        let words: Vec<String> = ek_terms(5, 1).unwrap().iter().map(|t| render_word(0, &t.letters)).collect();
        assert_eq!(words, vec!["4321", "0432", "1043", "2104", "3210"]);
    }

    #[test]
    fn primitive_s3() {
        let p = primitive_elements(3).unwrap();
        assert_eq!(p.len(), 6);
        let s0 = AffinePerm::s(3, 0).unwrap();
        let pi = AffinePerm::pi(3);
        for k in 0..3 {
            assert!(p.contains(&AffinePerm::pi_pow(3, k)));
            assert!(p.contains(&AffinePerm::pi_pow(3, k + 1).compose(&s0)));
        }
        assert!(p.iter().all(|v| pi.compose(v).is_primitive()));
    }

    #[test]
    fn mcr_d5_labels() {
        let labels: Vec<String> = dn_mcr(5).unwrap().iter().map(|w| w.label()).collect();
        assert_eq!(labels, vec!["id", "2", "12", "a12", "b12", "ab12", "ba12", "aba12", "1aba12", "21aba12"]);
        assert_eq!(dn_mcr(3).unwrap().len(), 6);
    }
}
