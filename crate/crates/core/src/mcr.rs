//! Minimal coset representatives: the pairing-matrix algorithm, quotient
//! Hilbert series from subalgebra profiles, and tensor-decomposition checks.

use crate::error::{Error, Result};
use crate::freealg::{Generator, Word};
use crate::graphs::Graph;
use crate::linalg::{Echelon, Insert, SparseVec};
use crate::pairing::pair_words;
use crate::rewrite::RewriteSystem;
use crate::scalar::ExactScalar;
use crate::series::GradedSeries;
use rayon::prelude::*;

/// Output of [`algorithm_mcr`].
#[derive(Clone, Debug)]
pub struct McrResult {
    /// representatives of E_G in E_{G ∪ e}, by degree
    pub m: Vec<Vec<Word>>,
    /// representatives of E_H in E_{H ∪ e}, by degree
    pub n_side: Vec<Vec<Word>>,
    /// rank of the degree-d pairing matrix (|M^d|)
    pub ranks: Vec<usize>,
    pub bound: usize,
    /// a degree of rank 0 was reached
    pub complete: bool,
    /// the ambient has at most five vertices, where the sets are complete
    pub exact: bool,
}

impl McrResult {
    pub fn profile(&self) -> Vec<usize> {
        self.m.iter().map(|d| d.len()).collect()
    }

    pub fn series(&self) -> GradedSeries {
        GradedSeries::from_ints(&self.profile().iter().map(|&x| x as i64).collect::<Vec<_>>())
    }
}

fn check_partition(g: &Graph, h: &Graph, e: (usize, usize)) -> Result<usize> {
    let n = g.n().max(h.n()).max(e.0).max(e.1);
    let (g, h) = (g.with_vertices(n)?, h.with_vertices(n)?);
    let e_graph = Graph::new(n, &[e])?;
    let (a, b) = (e.0.min(e.1), e.0.max(e.1));
    if g.has_edge(a, b) || h.has_edge(a, b) {
        return Err(Error::Graph(format!("edge ({a},{b}) must lie outside G and H")));
    }
    if g.edges().any(|(x, y)| h.has_edge(x, y)) {
        return Err(Error::Graph("G and H share an edge".into()));
    }
    if g.union(&h).union(&e_graph) != Graph::complete(n) {
        return Err(Error::Graph(format!("G ⊔ H ⊔ {{e}} is not K_{n}")));
    }
    Ok(n)
}

/// Words x·p for x in `gens`, p in `prev`, sorted in word order.
fn extend_left(gens: &[Generator], prev: &[Word]) -> Vec<Word> {
    let mut out: Vec<Word> = prev.iter().flat_map(|p| gens.iter().map(move |&g| p.prepend(g))).collect();
    out.sort();
    out.dedup();
    out
}

/// Indices of the first maximal independent set of rows, in order.
fn greedy_rows(m: &[Vec<i64>]) -> Vec<usize> {
    let mut ech = Echelon::new();
    let mut out = Vec::new();
    for (i, row) in m.iter().enumerate() {
        let v: SparseVec =
            row.iter().enumerate().filter(|(_, &x)| x != 0).map(|(j, &x)| (j as u32, ExactScalar::from(x))).collect();
        if v.is_empty() {
            continue;
        }
        if let Insert::New(_) = ech.insert(v) {
            out.push(i);
        }
    }
    out
}

/// Minimal coset representatives of E_G in E_{G ∪ e} and of E_H in
/// E_{H ∪ e}, where G ⊔ H ⊔ {e} = K_n, through degree `max_deg`.
///
/// At each degree the rows x·p (x ∈ G ∪ e, p ∈ M^d) and columns y·q
/// (y ∈ H ∪ e, q ∈ N^d) are paired; the first independent rows (and
/// columns) in word order become M^{d+1} (and N^{d+1}).
pub fn algorithm_mcr(g: &Graph, h: &Graph, e: (usize, usize), max_deg: usize) -> Result<McrResult> {
    let n = check_partition(g, h, e)?;
    let e_graph = Graph::new(n, &[e])?;
    let g_prime = g.with_vertices(n)?.union(&e_graph);
    let h_prime = h.with_vertices(n)?.union(&e_graph);
    let (g_gens, h_gens) = (g_prime.generators(), h_prime.generators());
    let mut m = vec![vec![Word::empty()]];
    let mut n_side = vec![vec![Word::empty()]];
    let mut ranks = vec![1];
    let mut complete = false;
    for _ in 0..max_deg {
        let rows = extend_left(&g_gens, m.last().unwrap());
        let cols = extend_left(&h_gens, n_side.last().unwrap());
        let matrix: Vec<Vec<i64>> =
            rows.par_iter().map(|r| cols.iter().map(|c| pair_words(r, c)).collect()).collect();
        let transpose: Vec<Vec<i64>> = (0..cols.len()).map(|j| matrix.iter().map(|r| r[j]).collect()).collect();
        let ri = greedy_rows(&matrix);
        let ci = greedy_rows(&transpose);
        if ri.len() != ci.len() {
            return Err(Error::Range(format!("row rank {} differs from column rank {}", ri.len(), ci.len())));
        }
        ranks.push(ri.len());
        m.push(ri.into_iter().map(|i| rows[i].clone()).collect());
        n_side.push(ci.into_iter().map(|j| cols[j].clone()).collect());
        if m.last().unwrap().is_empty() {
            complete = true;
            m.pop();
            n_side.pop();
            ranks.pop();
            break;
        }
    }
    Ok(McrResult { m, n_side, ranks, bound: max_deg, complete, exact: n <= 5 })
}

/// Quotient of two Hilbert series (or truncations of them).
#[derive(Clone, Debug, PartialEq)]
pub struct Quotient {
    pub series: GradedSeries,
    /// both profiles were complete, so `series` is the whole quotient
    pub complete: bool,
    /// number of coefficients that are determined
    pub len: usize,
}

/// H_sup / H_sub from degree profiles; `*_done` marks a profile that ends in
/// a vanishing degree (so it is the full polynomial).
pub fn quotient_profiles(sub: &[usize], sub_done: bool, sup: &[usize], sup_done: bool) -> Result<Quotient> {
    let to_series = |p: &[usize]| GradedSeries::from_ints(&p.iter().map(|&x| x as i64).collect::<Vec<_>>());
    let (a, b) = (to_series(sub), to_series(sup));
    if sub_done && sup_done {
        let q = b.divide_exact(&a)?;
        let len = q.coeffs().len();
        return Ok(Quotient { series: q, complete: true, len });
    }
    let len = match (sub_done, sup_done) {
        (true, false) => sup.len(),
        (false, true) => sub.len(),
        _ => sub.len().min(sup.len()),
    };
    let q = b.series_divide(&a, len)?;
    if !q.coeffs().iter().all(|c| c.to_i64().is_some_and(|v| v >= 0)) {
        return Err(Error::NotExact(format!("quotient {q} has a coefficient that is not a nonnegative integer")));
    }
    Ok(Quotient { series: q, complete: false, len })
}

/// H_{G_sup} / H_{H_sub} through degree `max_deg`, from rewrite-system
/// subalgebra bases.
pub fn quotient_series(h_sub: &Graph, g_sup: &Graph, rs: &RewriteSystem, max_deg: usize) -> Result<Quotient> {
    if !h_sub.is_subgraph_of(g_sup) {
        return Err(Error::Graph(format!("{h_sub} is not a subgraph of {g_sup}")));
    }
    let a = rs.subalgebra_basis(h_sub, max_deg)?;
    let b = rs.subalgebra_basis(g_sup, max_deg)?;
    quotient_profiles(&a.profile(), a.terminated, &b.profile(), b.terminated)
}

/// Coefficientwise comparison of H_{G1}·H_{G2} with H_n.
#[derive(Clone, Debug)]
pub struct TensorReport {
    /// (degree, coefficient of H_{G1}·H_{G2}, dim E_n^d)
    pub rows: Vec<(usize, i64, i64)>,
    pub holds: bool,
}

/// Compare the product of two profiles with a profile of E_n through
/// `max_deg`; the factor profiles are read as zero past their end.
pub fn tensor_check_profiles(p1: &[usize], p2: &[usize], full: &[usize], max_deg: usize) -> Result<TensorReport> {
    if full.len() <= max_deg && full.last() != Some(&0) {
        return Err(Error::Truncation { degree: max_deg, bound: full.len().saturating_sub(1) });
    }
    let at = |p: &[usize], d: usize| p.get(d).copied().unwrap_or(0) as i64;
    let rows: Vec<(usize, i64, i64)> = (0..=max_deg)
        .map(|d| {
            let lhs = (0..=d).map(|i| at(p1, i) * at(p2, d - i)).sum();
            (d, lhs, at(full, d))
        })
        .collect();
    let holds = rows.iter().all(|&(_, l, r)| l == r);
    Ok(TensorReport { rows, holds })
}

/// H_{G1}·H_{G2} = H_n through `max_deg`, for complementary G1, G2 in K_n.
pub fn tensor_check(g1: &Graph, g2: &Graph, rs: &RewriteSystem, max_deg: usize) -> Result<TensorReport> {
    let n = rs.n();
    let (g1, g2) = (g1.with_vertices(n)?, g2.with_vertices(n)?);
    if g1.edges().any(|(a, b)| g2.has_edge(a, b)) || g1.union(&g2) != Graph::complete(n) {
        return Err(Error::Graph(format!("{g1} and {g2} are not complementary in K_{n}")));
    }
    if max_deg > rs.max_degree() {
        return Err(Error::Truncation { degree: max_deg, bound: rs.max_degree() });
    }
    let p1 = rs.subalgebra_basis(&g1, max_deg)?;
    let p2 = rs.subalgebra_basis(&g2, max_deg)?;
    let full: Vec<usize> = rs.hilbert_prefix();
    tensor_check_profiles(&p1.profile(), &p2.profile(), &full, max_deg)
}

/// The formal square root of h/(1+t) to `len` terms, with the first
/// coefficient that is not an integer (if any).
///
/// If E_n ≅ E_G ⊗ E_G' for isomorphic G, G' whose union misses one edge,
/// then h/(1+t) is the square of an integer series; a fractional coefficient
/// rules such a decomposition out.
pub fn square_root_obstruction(h: &GradedSeries, len: usize) -> Result<(GradedSeries, Option<(usize, ExactScalar)>)> {
    let q = h.series_divide(&GradedSeries::qint(2), len)?;
    let root = q.series_sqrt(len)?;
    let bad = root.coeffs().iter().enumerate().find(|(_, c)| !c.is_integer()).map(|(d, c)| (d, c.clone()));
    Ok((root, bad))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a3_representatives() {
        let g = Graph::new(3, &[(1, 2)]).unwrap();
        let h = Graph::new(3, &[(1, 3)]).unwrap();
        let r = algorithm_mcr(&g, &h, (2, 3), 6).unwrap();
        assert_eq!(r.profile(), vec![1, 1, 1]);
        assert!(r.complete);
        let words: Vec<String> = r.m.iter().flatten().map(|w| w.to_string()).collect();
        assert_eq!(words, vec!["1", "x23", "x12.x23"]);
    }

    #[test]
    fn zero_bound() {
        let g = Graph::new(3, &[(1, 2)]).unwrap();
        let h = Graph::new(3, &[(1, 3)]).unwrap();
        let r = algorithm_mcr(&g, &h, (2, 3), 0).unwrap();
        assert_eq!(r.profile(), vec![1]);
        assert!(!r.complete);
    }

    #[test]
    fn precondition() {
        let g = Graph::new(3, &[(1, 2)]).unwrap();
        assert!(algorithm_mcr(&g, &g, (2, 3), 2).is_err());
    }

    #[test]
    fn profile_quotients() {
        let q = quotient_profiles(&[1, 1], true, &[1, 2, 2, 1], true).unwrap();
        assert_eq!(q.series, GradedSeries::from_ints(&[1, 1, 1]));
        assert!(quotient_profiles(&[1, 1], true, &[1, 2, 2], true).is_err());
        let t = quotient_profiles(&[1, 1], true, &[1, 3, 5, 7], false).unwrap();
        assert_eq!(t.series, GradedSeries::from_ints(&[1, 2, 3, 4]));
    }

    #[test]
    fn h6_square_root() {
        let h6 = GradedSeries::from_ints(&crate::series::H6_PREFIX);
        let (_, bad) = square_root_obstruction(&h6, 8).unwrap();
        let (d, c) = bad.unwrap();
        assert_eq!(d, 7);
        assert_eq!(c, ExactScalar::new(11623, 2));
    }
}
