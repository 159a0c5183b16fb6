//! Exact sparse row reduction and fraction-free dense rank.

use crate::scalar::ExactScalar;
use num_bigint::BigInt;
use num_traits::Zero;
use rustc_hash::FxHashMap;

/// Sparse vector: (column, value) pairs sorted by column, no zeros.
pub type SparseVec = Vec<(u32, ExactScalar)>;

/// a − c·b
pub fn sub_scaled(a: &[(u32, ExactScalar)], c: &ExactScalar, b: &[(u32, ExactScalar)]) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, -(c * &b[j].1)));
            j += 1;
        } else {
            let v = &a[i].1 - &(c * &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Add c·b into a dense accumulator map.
pub fn accumulate(acc: &mut FxHashMap<u32, ExactScalar>, c: &ExactScalar, b: &[(u32, ExactScalar)]) {
    for (k, v) in b {
        let e = acc.entry(*k).or_default();
        *e += &(c * v);
    }
}

/// Collect a map into a sorted sparse vector, dropping zeros.
pub fn from_map(acc: FxHashMap<u32, ExactScalar>) -> SparseVec {
    let mut v: SparseVec = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    v.sort_unstable_by_key(|e| e.0);
    v
}

fn normalize(v: &mut SparseVec) {
    if let Some((_, lead)) = v.first() {
        if !lead.is_one() {
            let inv = lead.recip();
            for (_, c) in v.iter_mut() {
                *c = &*c * &inv;
            }
        }
    }
}

/// Incremental echelon form; pivots are the smallest column of each row.
///
/// With tracking enabled every stored row remembers which inserted vectors
/// (by accepted index) it is a combination of, so a dependent vector can be
/// written in terms of the accepted ones.
#[derive(Default, Clone, Debug)]
pub struct Echelon {
    rows: Vec<SparseVec>,
    pivot: FxHashMap<u32, usize>,
    combos: Option<Vec<SparseVec>>,
    accepted: usize,
}

/// Outcome of inserting a vector.
#[derive(Debug, Clone, PartialEq)]
pub enum Insert {
    /// independent; its index among accepted vectors
    New(usize),
    /// dependent; with tracking, its expression in accepted vectors
    Dependent(Option<SparseVec>),
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_tracking() -> Self {
        Echelon { combos: Some(Vec::new()), ..Self::default() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce a vector against the stored rows; returns the residue and,
    /// with tracking, the combination that was subtracted.
    fn reduce(&self, mut v: SparseVec) -> (SparseVec, Option<FxHashMap<u32, ExactScalar>>) {
        let mut combo = self.combos.as_ref().map(|_| FxHashMap::default());
        let mut start = 0;
        while start < v.len() {
            let col = v[start].0;
            match self.pivot.get(&col) {
                Some(&r) => {
                    let c = v[start].1.clone();
                    if let (Some(acc), Some(cs)) = (combo.as_mut(), self.combos.as_ref()) {
                        accumulate(acc, &c, &cs[r]);
                    }
                    let head: SparseVec = v[..start].to_vec();
                    let tail = sub_scaled(&v[start..], &c, &self.rows[r]);
                    v = head;
                    v.extend(tail);
                }
                None => start += 1,
            }
        }
        (v, combo)
    }

    pub fn insert(&mut self, v: SparseVec) -> Insert {
        let (mut res, combo) = self.reduce(v);
        if res.is_empty() {
            return Insert::Dependent(combo.map(from_map));
        }
        let idx = self.accepted;
        self.accepted += 1;
        if let Some(cs) = self.combos.as_mut() {
            // stored row = v − combo = e_idx − Σ combo
            let mut c: SparseVec =
                from_map(combo.unwrap_or_default()).into_iter().map(|(k, x)| (k, -x)).collect();
            c.push((idx as u32, ExactScalar::one()));
            let inv = res[0].1.recip();
            let mut c: SparseVec = c.into_iter().map(|(k, x)| (k, &x * &inv)).collect();
            c.sort_unstable_by_key(|e| e.0);
            cs.push(c);
        }
        normalize(&mut res);
        self.pivot.insert(res[0].0, self.rows.len());
        self.rows.push(res);
        Insert::New(idx)
    }

    /// Fully reduced rows (each pivot column is zero in every other row),
    /// sorted by pivot column.
    pub fn into_rref(self) -> Vec<SparseVec> {
        let mut rows = self.rows;
        rows.sort_unstable_by_key(|r| r[0].0);
        let pivot: FxHashMap<u32, usize> = rows.iter().enumerate().map(|(i, r)| (r[0].0, i)).collect();
        // back-substitute from the last pivot upwards
        for i in (0..rows.len()).rev() {
            let mut v = std::mem::take(&mut rows[i]);
            let mut k = 1;
            while k < v.len() {
                match pivot.get(&v[k].0) {
                    Some(&r) if r != i => {
                        let c = v[k].1.clone();
                        let head: SparseVec = v[..k].to_vec();
                        let tail = sub_scaled(&v[k..], &c, &rows[r]);
                        v = head;
                        v.extend(tail);
                    }
                    _ => k += 1,
                }
            }
            rows[i] = v;
        }
        rows
    }
}

/// Rank of an integer matrix by fraction-free (Bareiss) elimination.
pub fn bareiss_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    let mut prev = BigInt::from(1);
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, p);
        for r in rank + 1..rows {
            for k in c + 1..cols {
                let v = (&m[rank][c] * &m[r][k] - &m[r][c] * &m[rank][k]) / &prev;
                m[r][k] = v;
            }
            m[r][c] = BigInt::zero();
        }
        prev = m[rank][c].clone();
        rank += 1;
    }
    rank
}

/// Rank of a small-integer matrix, promoting to big integers.
pub fn rank_i64(m: &[Vec<i64>]) -> usize {
    bareiss_rank(m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(v: &[(u32, i64)]) -> SparseVec {
        v.iter().map(|&(k, x)| (k, x.into())).collect()
    }

    #[test]
    fn echelon_rank_and_combos() {
        let mut e = Echelon::with_tracking();
        assert_eq!(e.insert(sv(&[(0, 1), (1, 1)])), Insert::New(0));
        assert_eq!(e.insert(sv(&[(1, 2), (2, 1)])), Insert::New(1));
        // (0,1) + (1,2)... 2·v0 + v1 = (2, 4, 1)
        match e.insert(sv(&[(0, 2), (1, 4), (2, 1)])) {
            Insert::Dependent(Some(c)) => assert_eq!(c, sv(&[(0, 2), (1, 1)])),
            other => panic!("{other:?}"),
        }
        assert_eq!(e.rank(), 2);
    }

    #[test]
    fn rref_back_substitution() {
        let mut e = Echelon::new();
        e.insert(sv(&[(0, 1), (1, 1), (2, 1)]));
        e.insert(sv(&[(1, 1), (2, 2)]));
        let r = e.into_rref();
        assert_eq!(r[0], sv(&[(0, 1), (2, -1)]));
        assert_eq!(r[1], sv(&[(1, 1), (2, 2)]));
    }

    #[test]
    fn bareiss() {
        assert_eq!(rank_i64(&[vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(rank_i64(&[vec![0, 1, 2], vec![1, 0, 3], vec![1, 1, 5]]), 2);
        assert_eq!(rank_i64(&[vec![2, 0], vec![0, 3]]), 2);
        assert_eq!(rank_i64(&[]), 0);
    }
}
