//! Degree-truncated noncommutative Gröbner basis for the ideal of E_n.
//!
//! Level d of the quotient is computed as V ⊗ A_{d-1} modulo the image of
//! (relations) ⊗ A_{d-k}. Columns are words x·b with b normal; after a
//! reduced row echelon form whose pivots are the largest words, the
//! non-pivot words are exactly the deglex normal words of degree d and each
//! pivot row rewrites its leading word. The left-multiplication maps
//! x ⊗ b ↦ NF(x·b) are kept per level, so normal forms are computed by
//! folding letters from the right.

use crate::error::{Error, Result};
use crate::freealg::{grade_of, Element, Generator, Grade, Letters, Word};
use crate::graphs::Graph;
use crate::linalg::{accumulate, from_map, Echelon, Insert, SparseVec};
use crate::scalar::ExactScalar;
use rayon::prelude::*;
use rustc_hash::FxHashMap;
use sha2::{Digest, Sha256};
use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

/// Version tag of the cache text format.
pub const CACHE_VERSION: &str = "fkalg-rewrite v1";

/// Limits on the size of a completion; exceeding one is an error.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// relation rows materialized at a single degree
    pub max_rows: usize,
    /// total rewrite rules
    pub max_rules: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { max_rows: 20_000_000, max_rules: 5_000_000 }
    }
}

/// A rewrite rule lead → tail; every tail word is smaller than the lead.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub lead: Word,
    pub tail: Element,
}

#[derive(Clone, Debug, Default)]
struct Level {
    normal: Vec<Word>,
    grades: Vec<Grade>,
    index: FxHashMap<Word, u32>,
    /// left[g][b] = NF(x_g · normal_{d-1}[b]) over this level's normal words
    left: Vec<Vec<SparseVec>>,
}

impl Level {
    fn new(normal: Vec<Word>) -> Self {
        let grades = normal.iter().map(grade_of).collect();
        let index = normal.iter().enumerate().map(|(k, w)| (w.clone(), k as u32)).collect();
        Level { normal, grades, index, left: Vec::new() }
    }
}

/// Truncated reduced Gröbner basis of E_n (plus optional extra relations).
#[derive(Clone, Debug)]
pub struct RewriteSystem {
    n: usize,
    max_degree: usize,
    gens: Vec<Generator>,
    rules: Vec<Rule>,
    levels: Vec<Level>,
    extra: Vec<Element>,
}

/// Defining relations of E_n: squares, commutators of disjoint pairs and the
/// three-term relations, each scaled so its largest word has coefficient 1.
pub fn quadratic_relations(n: usize) -> Result<Vec<Element>> {
    if n < 2 {
        return Err(Error::Range(format!("E_n needs n ≥ 2, got {n}")));
    }
    let gens = Generator::all(n);
    let mut out: Vec<Element> = Vec::new();
    for &g in &gens {
        out.push(Element::from_word(n, Word::from_letters(&[g, g])));
    }
    for (a, &g) in gens.iter().enumerate() {
        for &h in &gens[a + 1..] {
            let (i, j) = g.vertices();
            let (k, l) = h.vertices();
            if i != k && i != l && j != k && j != l {
                let e = Element::from_word(n, Word::from_letters(&[h, g]))
                    .sub(&Element::from_word(n, Word::from_letters(&[g, h])));
                out.push(e);
            }
        }
    }
    let mut seen: BTreeSet<String> = BTreeSet::new();
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                if i == j || j == k || i == k {
                    continue;
                }
                let mut e = Element::zero(n);
                for pairs in [[(i, j), (j, k)], [(j, k), (k, i)], [(k, i), (i, j)]] {
                    e = e.add(&Element::monomial(n, &pairs)?);
                }
                let e = monic(&e);
                if seen.insert(e.to_string()) {
                    out.push(e);
                }
            }
        }
    }
    Ok(out)
}

/// Scale so the largest word has coefficient 1.
fn monic(e: &Element) -> Element {
    match e.terms().last() {
        Some((_, c)) if !c.is_one() => e.scale(&c.recip()),
        _ => e.clone(),
    }
}

pub fn build_rewrite_system(n: usize, max_degree: usize) -> Result<RewriteSystem> {
    RewriteSystem::build(n, max_degree, &[], &Caps::default())
}

/// Basis of a graph subalgebra E_G by degree: monomial words whose normal
/// forms are independent, with those normal forms.
#[derive(Clone, Debug)]
pub struct SubalgebraBasis {
    pub words: Vec<Vec<Word>>,
    vectors: Vec<Vec<SparseVec>>,
    /// a degree with dimension 0 was reached (so all higher degrees vanish)
    pub terminated: bool,
}

impl SubalgebraBasis {
    pub fn profile(&self) -> Vec<usize> {
        self.words.iter().map(|w| w.len()).collect()
    }
}

/// Monomial basis of a finite-dimensional E_G and its top word.
#[derive(Clone, Debug)]
pub struct MonomialBasis {
    pub words: Vec<Vec<Word>>,
    pub top_degree: usize,
    pub w0: Word,
}

/// Outcome of the independent overlap check.
#[derive(Clone, Debug, Default)]
pub struct ConfluenceReport {
    pub overlaps_checked: usize,
    pub failures: Vec<Word>,
    pub reduced: bool,
}

impl ConfluenceReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty() && self.reduced
    }
}

impl RewriteSystem {
    /// Complete degree by degree up to `max_degree`.
    ///
    /// `extra` relations must be homogeneous of degree ≥ 2 for both the
    /// word degree and the joint (vertex-count, S_n-degree) grading.
    pub fn build(n: usize, max_degree: usize, extra: &[Element], caps: &Caps) -> Result<Self> {
        if n < 2 {
            return Err(Error::Range(format!("E_n needs n ≥ 2, got {n}")));
        }
        if n > 16 {
            return Err(Error::Range(format!("ambient n = {n} exceeds 16")));
        }
        if max_degree < 2 {
            return Err(Error::Range(format!("max_degree must be ≥ 2, got {max_degree}")));
        }
        let mut relations = quadratic_relations(n)?;
        for r in extra {
            let r = r.with_ambient(n)?;
            check_relation(&r)?;
            relations.push(r);
        }
        let gens = Generator::all(n);
        let mut rs = RewriteSystem { n, max_degree, gens: gens.clone(), rules: Vec::new(), levels: Vec::new(), extra: extra.to_vec() };
        rs.levels.push(Level::new(vec![Word::empty()]));
        let mut l1 = Level::new(gens.iter().map(|&g| Word::letter(g)).collect());
        l1.left = (0..gens.len()).map(|g| vec![vec![(g as u32, ExactScalar::one())]]).collect();
        rs.levels.push(l1);
        let rel_terms: Vec<Vec<(Word, ExactScalar)>> =
            relations.iter().map(|r| r.terms().map(|(w, c)| (w.clone(), c.clone())).collect()).collect();
        for d in 2..=max_degree {
            rs.complete_degree(d, &rel_terms, caps)?;
        }
        Ok(rs)
    }

    fn complete_degree(&mut self, d: usize, relations: &[Vec<(Word, ExactScalar)>], caps: &Caps) -> Result<()> {
        let prev = &self.levels[d - 1];
        let nb = prev.normal.len();
        let ng = self.gens.len();
        let ncols = ng * nb;
        // grade blocks of the columns x_g ⊗ b
        let mut block_of_grade: FxHashMap<Grade, u32> = FxHashMap::default();
        let mut col_block = vec![0u32; ncols];
        let mut block_cols: Vec<Vec<u32>> = Vec::new();
        for g in 0..ng {
            for b in 0..nb {
                let gr = prev.grades[b].left_mul(self.gens[g]);
                let next = block_of_grade.len() as u32;
                let blk = *block_of_grade.entry(gr).or_insert(next);
                if blk as usize == block_cols.len() {
                    block_cols.push(Vec::new());
                }
                let c = (g * nb + b) as u32;
                col_block[c as usize] = blk;
                block_cols[blk as usize].push(c);
            }
        }
        // local index: 0 = largest word in the block
        let mut col_local = vec![0u32; ncols];
        for cols in &block_cols {
            for (k, &c) in cols.iter().rev().enumerate() {
                col_local[c as usize] = k as u32;
            }
        }
        // relation rows r ⊗ a
        let mut jobs: Vec<(usize, usize)> = Vec::new();
        for (ri, r) in relations.iter().enumerate() {
            let k = r[0].0.len();
            if k <= d {
                jobs.extend((0..self.levels[d - k].normal.len()).map(|a| (ri, a)));
            }
        }
        if jobs.len() > caps.max_rows {
            return Err(Error::ResourceCap(format!("{} relation rows at degree {d} (cap {})", jobs.len(), caps.max_rows)));
        }
        let gen_index: FxHashMap<Generator, usize> = self.gens.iter().enumerate().map(|(k, &g)| (g, k)).collect();
        let rows: Vec<(u32, SparseVec)> = jobs
            .par_iter()
            .filter_map(|&(ri, a)| {
                let r = &relations[ri];
                let k = r[0].0.len();
                let mut acc: FxHashMap<u32, ExactScalar> = FxHashMap::default();
                for (w, c) in r {
                    let mut v: SparseVec = vec![(a as u32, ExactScalar::one())];
                    for (pos, &g) in w.letters()[1..].iter().enumerate().rev() {
                        // letter at position pos+1 lands on level d-k+... from the right
                        let lvl = d - k + (k - 1 - pos);
                        v = self.apply_left_at(lvl, gen_index[&g], &v);
                    }
                    let g0 = gen_index[&w.letters()[0]];
                    for (b, x) in v {
                        let e = acc.entry((g0 * nb) as u32 + b).or_default();
                        *e += &(c * &x);
                    }
                }
                let v = from_map(acc);
                let blk = col_block[v.first()?.0 as usize];
                debug_assert!(v.iter().all(|(c, _)| col_block[*c as usize] == blk), "relation row spans grade blocks");
                let mut local: SparseVec = v.into_iter().map(|(c, x)| (col_local[c as usize], x)).collect();
                local.sort_unstable_by_key(|e| e.0);
                Some((blk, local))
            })
            .collect();
        let mut per_block: Vec<Vec<SparseVec>> = vec![Vec::new(); block_cols.len()];
        for (blk, v) in rows {
            per_block[blk as usize].push(v);
        }
        let rrefs: Vec<Vec<SparseVec>> = per_block
            .into_par_iter()
            .map(|rows| {
                let mut e = Echelon::new();
                for r in rows {
                    e.insert(r);
                }
                e.into_rref()
            })
            .collect();
        // pivots: global column → block row
        let mut pivot_row: FxHashMap<u32, (u32, usize)> = FxHashMap::default();
        for (blk, rows) in rrefs.iter().enumerate() {
            let cols = &block_cols[blk];
            for (ri, r) in rows.iter().enumerate() {
                let global = cols[cols.len() - 1 - r[0].0 as usize];
                pivot_row.insert(global, (blk as u32, ri));
            }
        }
        let mut normal_cols: Vec<u32> = (0..ncols as u32).filter(|c| !pivot_row.contains_key(c)).collect();
        normal_cols.sort_unstable();
        let mut normal_index = vec![u32::MAX; ncols];
        for (k, &c) in normal_cols.iter().enumerate() {
            normal_index[c as usize] = k as u32;
        }
        let word_of = |c: u32| -> Word {
            let (g, b) = (c as usize / nb, c as usize % nb);
            prev.normal[b].prepend(self.gens[g])
        };
        let normal: Vec<Word> = normal_cols.iter().map(|&c| word_of(c)).collect();
        let mut left: Vec<Vec<SparseVec>> = vec![Vec::with_capacity(nb); ng];
        let mut new_rules = Vec::new();
        for c in 0..ncols as u32 {
            let g = c as usize / nb;
            let v: SparseVec = match pivot_row.get(&c) {
                None => vec![(normal_index[c as usize], ExactScalar::one())],
                Some(&(blk, ri)) => {
                    let cols = &block_cols[blk as usize];
                    let row = &rrefs[blk as usize][ri];
                    let mut v: SparseVec = row[1..]
                        .iter()
                        .map(|(lc, x)| (normal_index[cols[cols.len() - 1 - *lc as usize] as usize], -x))
                        .collect();
                    v.sort_unstable_by_key(|e| e.0);
                    let w = word_of(c);
                    if prev.index.contains_key(&w.slice(0, d - 1)) || d == 2 {
                        let mut tail = Element::zero(self.n);
                        for (k, x) in &v {
                            tail.add_term(normal[*k as usize].clone(), x.clone());
                        }
                        new_rules.push(Rule { lead: w, tail });
                    }
                    v
                }
            };
            left[g].push(v);
        }
        if self.rules.len() + new_rules.len() > caps.max_rules {
            return Err(Error::ResourceCap(format!("more than {} rewrite rules at degree {d}", caps.max_rules)));
        }
        self.rules.extend(new_rules);
        let mut lvl = Level::new(normal);
        lvl.left = left;
        self.levels.push(lvl);
        Ok(())
    }

    /// x_g · v for v over the normal words of level `lvl − 1`; result over level `lvl`.
    fn apply_left_at(&self, lvl: usize, g: usize, v: &[(u32, ExactScalar)]) -> SparseVec {
        let table = &self.levels[lvl].left[g];
        if v.len() == 1 && v[0].1.is_one() {
            return table[v[0].0 as usize].clone();
        }
        let mut acc = FxHashMap::default();
        for (b, c) in v {
            accumulate(&mut acc, c, &table[*b as usize]);
        }
        from_map(acc)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn extra_relations(&self) -> &[Element] {
        &self.extra
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    fn gen_index(&self, g: Generator) -> Result<usize> {
        if g.j as usize > self.n {
            return Err(Error::Range(format!("{g} outside E_{}", self.n)));
        }
        Ok(g.index(self.n))
    }

    fn check_degree(&self, d: usize) -> Result<()> {
        if d > self.max_degree {
            return Err(Error::Truncation { degree: d, bound: self.max_degree });
        }
        Ok(())
    }

    /// Normal words of degree d in increasing order.
    pub fn normal_words(&self, d: usize) -> Result<&[Word]> {
        self.check_degree(d)?;
        Ok(&self.levels[d].normal)
    }

    /// Coordinates of NF(w) over the normal words of degree |w|.
    pub fn word_vector(&self, w: &Word) -> Result<SparseVec> {
        self.check_degree(w.len())?;
        let mut v: SparseVec = vec![(0, ExactScalar::one())];
        for (k, &g) in w.letters().iter().enumerate().rev() {
            let gi = self.gen_index(g)?;
            v = self.apply_left_at(w.len() - k, gi, &v);
            if v.is_empty() {
                break;
            }
        }
        Ok(v)
    }

    /// x_g · v for v over degree `d` normal words.
    pub fn left_multiply(&self, g: Generator, v: &[(u32, ExactScalar)], d: usize) -> Result<SparseVec> {
        self.check_degree(d + 1)?;
        Ok(self.apply_left_at(d + 1, self.gen_index(g)?, v))
    }

    /// Coordinates of a homogeneous element of degree d.
    pub fn element_vector(&self, e: &Element, d: usize) -> Result<SparseVec> {
        let mut acc = FxHashMap::default();
        for (w, c) in e.terms() {
            if w.len() != d {
                return Err(Error::MixedDegree(e.to_string()));
            }
            accumulate(&mut acc, c, &self.word_vector(w)?);
        }
        Ok(from_map(acc))
    }

    pub fn vector_to_element(&self, d: usize, v: &[(u32, ExactScalar)]) -> Element {
        let mut e = Element::zero(self.n);
        for (k, c) in v {
            e.add_term(self.levels[d].normal[*k as usize].clone(), c.clone());
        }
        e
    }

    pub fn normal_form(&self, e: &Element) -> Result<Element> {
        if e.n() > self.n {
            return Err(Error::AmbientMismatch(e.n(), self.n));
        }
        let mut out = Element::zero(self.n);
        for d in e.degrees() {
            let v = self.element_vector(&e.component(d), d)?;
            out = out.add(&self.vector_to_element(d, &v));
        }
        Ok(out)
    }

    pub fn is_zero(&self, e: &Element) -> Result<bool> {
        Ok(self.normal_form(e)?.is_zero())
    }

    /// dim E_n^d = number of normal words of degree d.
    pub fn graded_dim_full(&self, d: usize) -> Result<usize> {
        Ok(self.normal_words(d)?.len())
    }

    /// dim E_n^d for d = 0..=max_degree.
    pub fn hilbert_prefix(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.normal.len()).collect()
    }

    /// Basis of E_G through degree `max_d` (capped by the truncation bound),
    /// stopping at the first degree of dimension 0.
    ///
    /// Degree d is spanned by x_e · (basis of degree d−1); candidates are taken
    /// in word order and kept when independent.
    pub fn subalgebra_basis(&self, g: &Graph, max_d: usize) -> Result<SubalgebraBasis> {
        if g.n() > self.n {
            return Err(Error::AmbientMismatch(g.n(), self.n));
        }
        let max_d = max_d.min(self.max_degree);
        let gens = g.generators();
        let mut words = vec![vec![Word::empty()]];
        let mut vectors: Vec<Vec<SparseVec>> = vec![vec![vec![(0, ExactScalar::one())]]];
        let mut terminated = false;
        for d in 1..=max_d {
            let mut ech: FxHashMap<Grade, Echelon> = FxHashMap::default();
            let mut wd = Vec::new();
            let mut vd = Vec::new();
            for &e in &gens {
                for (b, vb) in words[d - 1].iter().zip(&vectors[d - 1]) {
                    let v = self.left_multiply(e, vb, d - 1)?;
                    if v.is_empty() {
                        continue;
                    }
                    let gr = self.levels[d].grades[v[0].0 as usize];
                    if let Insert::New(_) = ech.entry(gr).or_default().insert(v.clone()) {
                        wd.push(b.prepend(e));
                        vd.push(v);
                    }
                }
            }
            let empty = wd.is_empty();
            words.push(wd);
            vectors.push(vd);
            if empty {
                terminated = true;
                break;
            }
        }
        Ok(SubalgebraBasis { words, vectors, terminated })
    }

    /// dim E_G^d.
    pub fn graded_dim_sub(&self, g: &Graph, d: usize) -> Result<usize> {
        self.check_degree(d)?;
        let b = self.subalgebra_basis(g, d)?;
        Ok(b.words.get(d).map_or(0, |w| w.len()))
    }

    /// Monomial basis and lex-minimal top word of a finite-dimensional E_G.
    pub fn monomial_basis_sub(&self, g: &Graph) -> Result<MonomialBasis> {
        let basis = self.subalgebra_basis(g, self.max_degree)?;
        if !basis.terminated {
            return Err(Error::Range(format!(
                "E_G is not finite-dimensional within bound {} (graph {g})",
                self.max_degree
            )));
        }
        let mut words = basis.words.clone();
        words.pop();
        let top = words.len() - 1;
        if words[top].len() != 1 {
            return Err(Error::Range(format!("top degree {top} has dimension {}", words[top].len())));
        }
        let w0 = self.lex_min_top_word(g, &basis, top)?;
        Ok(MonomialBasis { words, top_degree: top, w0 })
    }

    /// Smallest word (in letter order) of degree `top` with nonzero normal
    /// form; a prefix is extended only if some basis element completes it.
    fn lex_min_top_word(&self, g: &Graph, basis: &SubalgebraBasis, top: usize) -> Result<Word> {
        let gens = g.generators();
        let mut prefix: Vec<Generator> = Vec::new();
        while prefix.len() < top {
            let mut chosen = None;
            for &e in &gens {
                let mut p = prefix.clone();
                p.push(e);
                let k = p.len();
                let mut ok = false;
                for vb in &basis.vectors[top - k] {
                    let mut v = vb.clone();
                    for (pos, &x) in p.iter().enumerate().rev() {
                        v = self.left_multiply(x, &v, top - k + (k - 1 - pos))?;
                        if v.is_empty() {
                            break;
                        }
                    }
                    if !v.is_empty() {
                        ok = true;
                        break;
                    }
                }
                if ok {
                    chosen = Some(e);
                    break;
                }
            }
            prefix.push(chosen.ok_or_else(|| Error::Range("top degree is zero".into()))?);
        }
        Ok(Word::from_letters(&prefix))
    }

    /// Edges e of g with x_e · w = 0.
    pub fn descent_left(&self, w: &Element, g: &Graph) -> Result<Graph> {
        let mut out = Graph::empty(g.n());
        for (i, j) in g.edges() {
            let x = Element::generator(self.n, i, j)?;
            let p = crate::freealg::multiply(&x, &w.with_ambient(self.n)?)?;
            if self.is_zero(&p)? {
                out.add_edge(i, j)?;
            }
        }
        Ok(out)
    }

    /// Re-check the rules with an independent subword rewriter: every tail
    /// is normal, no lead contains another, and every overlap of two leads
    /// of total length ≤ `bound` resolves.
    pub fn audit_confluence(&self, bound: usize) -> ConfluenceReport {
        let rw = SubwordRewriter::new(&self.rules);
        let mut report = ConfluenceReport { reduced: true, ..Default::default() };
        for r in &self.rules {
            let l = r.lead.letters();
            for a in 0..l.len() {
                for b in a + 1..=l.len() {
                    if (a, b) != (0, l.len()) && rw.rules.contains_key(&Word::from_letters(&l[a..b])) {
                        report.reduced = false;
                    }
                }
            }
            if r.tail.terms().any(|(w, _)| *w >= r.lead || rw.first_match(w).is_some()) {
                report.reduced = false;
            }
        }
        // proper prefixes of leads → rules having them
        let mut by_prefix: FxHashMap<Word, Vec<usize>> = FxHashMap::default();
        for (k, r) in self.rules.iter().enumerate() {
            for o in 1..r.lead.len() {
                by_prefix.entry(r.lead.slice(0, o)).or_default().push(k);
            }
        }
        let mut memo = FxHashMap::default();
        for r1 in &self.rules {
            let l1 = &r1.lead;
            for o in 1..l1.len() {
                let Some(list) = by_prefix.get(&l1.slice(l1.len() - o, l1.len())) else { continue };
                for &k2 in list {
                    let r2 = &self.rules[k2];
                    let total = l1.len() + r2.lead.len() - o;
                    if total > bound {
                        continue;
                    }
                    let s = r2.lead.slice(o, r2.lead.len());
                    let u = l1.slice(0, l1.len() - o);
                    let left = rw.reduce_terms(r1.tail.terms().map(|(w, c)| (w.concat(&s), c.clone())), &mut memo);
                    let right = rw.reduce_terms(r2.tail.terms().map(|(w, c)| (u.concat(w), c.clone())), &mut memo);
                    report.overlaps_checked += 1;
                    if left != right {
                        report.failures.push(l1.concat(&s));
                    }
                }
            }
        }
        report
    }

    /// Normal form by plain subword rewriting with the rules (no level maps).
    pub fn normal_form_by_rules(&self, e: &Element) -> Element {
        let rw = SubwordRewriter::new(&self.rules);
        let mut memo = FxHashMap::default();
        let terms = rw.reduce_terms(e.terms().map(|(w, c)| (w.clone(), c.clone())), &mut memo);
        let mut out = Element::zero(self.n);
        for (w, c) in terms {
            out.add_term(w, c);
        }
        out
    }

    /// Versioned text form: header, n, bound, rules, and a SHA-256 checksum.
    pub fn to_text(&self) -> Result<String> {
        if !self.extra.is_empty() {
            return Err(Error::Cache("systems with extra relations are not cached".into()));
        }
        let mut body = format!("{CACHE_VERSION}\nn {}\nmax_degree {}\nrules {}\n", self.n, self.max_degree, self.rules.len());
        for r in &self.rules {
            body.push_str(&format!("{} => {}\n", r.lead, r.tail));
        }
        let sum = hex_digest(&body);
        body.push_str(&format!("checksum {sum}\n"));
        Ok(body)
    }

    /// Parse a cached system and rebuild its level maps from the rules alone.
    pub fn from_text(text: &str) -> Result<Self> {
        let bad = |m: &str| Error::Cache(m.to_string());
        let (body, last) = text.trim_end_matches('\n').rsplit_once('\n').ok_or_else(|| bad("truncated file"))?;
        let body = format!("{body}\n");
        let sum = last.strip_prefix("checksum ").ok_or_else(|| bad("missing checksum"))?;
        if sum.trim() != hex_digest(&body) {
            return Err(bad("checksum mismatch"));
        }
        let mut lines = body.lines();
        if lines.next() != Some(CACHE_VERSION) {
            return Err(bad("unknown format version"));
        }
        let mut field = |name: &str| -> Result<usize> {
            let l = lines.next().ok_or_else(|| bad("truncated header"))?;
            l.strip_prefix(name)
                .and_then(|x| x.trim().parse().ok())
                .ok_or_else(|| bad(&format!("bad header line `{l}`")))
        };
        let n = field("n ")?;
        let max_degree = field("max_degree ")?;
        let count = field("rules ")?;
        let mut rules = Vec::with_capacity(count);
        for l in lines {
            let (lead, tail) = l.split_once(" => ").ok_or_else(|| bad(&format!("bad rule line `{l}`")))?;
            rules.push(Rule { lead: Word::parse(lead)?, tail: Element::parse(tail, n)? });
        }
        if rules.len() != count {
            return Err(bad("rule count mismatch"));
        }
        Self::from_rules(n, max_degree, rules)
    }

    /// Rebuild normal words and left maps from a rule list.
    ///
    /// A word x·b with b normal is normal iff no lead is a prefix of it;
    /// otherwise it is rewritten by its shortest lead prefix. Words are
    /// processed in increasing order, so every needed value is known.
    pub fn from_rules(n: usize, max_degree: usize, rules: Vec<Rule>) -> Result<Self> {
        let gens = Generator::all(n);
        let ng = gens.len();
        let lead_map: FxHashMap<Word, usize> = rules.iter().enumerate().map(|(k, r)| (r.lead.clone(), k)).collect();
        let mut rs = RewriteSystem { n, max_degree, gens: gens.clone(), rules, levels: Vec::new(), extra: Vec::new() };
        rs.levels.push(Level::new(vec![Word::empty()]));
        let mut l1 = Level::new(gens.iter().map(|&g| Word::letter(g)).collect());
        l1.left = (0..ng).map(|g| vec![vec![(g as u32, ExactScalar::one())]]).collect();
        rs.levels.push(l1);
        for d in 2..=max_degree {
            let prev = &rs.levels[d - 1];
            let nb = prev.normal.len();
            let mut reducer: Vec<Option<(usize, usize)>> = Vec::with_capacity(ng * nb);
            let mut normal = Vec::new();
            for &g in &gens {
                for b in &prev.normal {
                    let w = b.prepend(g);
                    let hit = (2..=d).find_map(|k| lead_map.get(&w.slice(0, k)).map(|&r| (r, k)));
                    if hit.is_none() {
                        normal.push(w);
                    }
                    reducer.push(hit);
                }
            }
            let mut lvl = Level::new(normal);
            let mut left: Vec<Vec<SparseVec>> = vec![Vec::with_capacity(nb); ng];
            for c in 0..ng * nb {
                let (g, b) = (c / nb, c % nb);
                let w = rs.levels[d - 1].normal[b].prepend(gens[g]);
                let v = match reducer[c] {
                    None => vec![(lvl.index[&w], ExactScalar::one())],
                    Some((r, k)) => {
                        let suffix = w.slice(k, d);
                        let base = rs.levels[d - k].index.get(&suffix).copied().ok_or_else(|| {
                            Error::Cache(format!("suffix {suffix} of {w} is not normal"))
                        })?;
                        let mut acc = FxHashMap::default();
                        for (t, coef) in rs.rules[r].tail.terms() {
                            let mut v: SparseVec = vec![(base, ExactScalar::one())];
                            for (pos, &x) in t.letters().iter().enumerate().rev() {
                                let l = d - pos;
                                let gi = x.index(n);
                                v = if l == d {
                                    let mut a2 = FxHashMap::default();
                                    for (bb, cc) in &v {
                                        let known = left[gi].get(*bb as usize).filter(|_| gi < g || (gi == g && (*bb as usize) < b));
                                        let known = known.ok_or_else(|| Error::Cache(format!("rules do not reduce {w} in order")))?;
                                        accumulate(&mut a2, cc, known);
                                    }
                                    from_map(a2)
                                } else {
                                    rs.apply_left_at(l, gi, &v)
                                };
                            }
                            accumulate(&mut acc, coef, &v);
                        }
                        from_map(acc)
                    }
                };
                left[g].push(v);
            }
            lvl.left = left;
            rs.levels.push(lvl);
        }
        Ok(rs)
    }

    /// Load from the cache directory, or build and store.
    pub fn cached(n: usize, max_degree: usize, dir: Option<&Path>, caps: &Caps) -> Result<Self> {
        let Some(dir) = dir else { return Self::build(n, max_degree, &[], caps) };
        let path = cache_path(dir, n, max_degree);
        if let Ok(text) = std::fs::read_to_string(&path) {
            if let Ok(rs) = Self::from_text(&text) {
                if rs.n == n && rs.max_degree == max_degree {
                    return Ok(rs);
                }
            }
        }
        let rs = Self::build(n, max_degree, &[], caps)?;
        std::fs::create_dir_all(dir)?;
        std::fs::write(&path, rs.to_text()?)?;
        Ok(rs)
    }
}

pub fn cache_path(dir: &Path, n: usize, max_degree: usize) -> PathBuf {
    dir.join(format!("rewrite-n{n}-d{max_degree}-v1.txt"))
}

fn hex_digest(s: &str) -> String {
    Sha256::digest(s.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

fn check_relation(r: &Element) -> Result<()> {
    let mut it = r.terms();
    let Some((w0, _)) = it.next() else { return Err(Error::Inhomogeneous("zero relation".into())) };
    if w0.len() < 2 {
        return Err(Error::Inhomogeneous(format!("relation {r} has degree < 2")));
    }
    let g0 = grade_of(w0);
    for (w, _) in it {
        if w.len() != w0.len() {
            return Err(Error::MixedDegree(r.to_string()));
        }
        if grade_of(w) != g0 {
            return Err(Error::Inhomogeneous(r.to_string()));
        }
    }
    Ok(())
}

/// Rewrites any occurrence of a lead word; used only for audits.
struct SubwordRewriter {
    rules: FxHashMap<Word, Vec<(Word, ExactScalar)>>,
    lens: Vec<usize>,
}

impl SubwordRewriter {
    fn new(rules: &[Rule]) -> Self {
        let map: FxHashMap<Word, Vec<(Word, ExactScalar)>> = rules
            .iter()
            .map(|r| (r.lead.clone(), r.tail.terms().map(|(w, c)| (w.clone(), c.clone())).collect()))
            .collect();
        let lens: BTreeSet<usize> = rules.iter().map(|r| r.lead.len()).collect();
        SubwordRewriter { rules: map, lens: lens.into_iter().collect() }
    }

    fn first_match(&self, w: &Word) -> Option<(usize, usize)> {
        let l = w.letters();
        for a in 0..l.len() {
            for &k in &self.lens {
                if a + k <= l.len() && self.rules.contains_key(&Word::from_letters(&l[a..a + k])) {
                    return Some((a, k));
                }
            }
        }
        None
    }

    fn reduce_word(&self, w: &Word, memo: &mut FxHashMap<Word, Vec<(Word, ExactScalar)>>) -> Vec<(Word, ExactScalar)> {
        if let Some(v) = memo.get(w) {
            return v.clone();
        }
        let out = match self.first_match(w) {
            None => vec![(w.clone(), ExactScalar::one())],
            Some((a, k)) => {
                let l = w.letters();
                let (u, v) = (Word::from_letters(&l[..a]), Word::from_letters(&l[a + k..]));
                let tail = self.rules[&Word::from_letters(&l[a..a + k])].clone();
                self.reduce_terms(tail.into_iter().map(|(t, c)| (u.concat(&t).concat(&v), c)), memo)
            }
        };
        memo.insert(w.clone(), out.clone());
        out
    }

    fn reduce_terms(
        &self,
        terms: impl Iterator<Item = (Word, ExactScalar)>,
        memo: &mut FxHashMap<Word, Vec<(Word, ExactScalar)>>,
    ) -> Vec<(Word, ExactScalar)> {
        let mut acc: std::collections::BTreeMap<Word, ExactScalar> = Default::default();
        for (w, c) in terms {
            for (x, d) in self.reduce_word(&w, memo) {
                *acc.entry(x).or_default() += &(&c * &d);
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }
}

/// Word from generator letters (helper for callers building monomials).
pub fn word_of(letters: &[Generator]) -> Word {
    Word(Letters::from_slice(letters))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relation_counts() {
        assert_eq!(quadratic_relations(2).unwrap().len(), 1);
        assert_eq!(quadratic_relations(3).unwrap().len(), 5);
        assert_eq!(quadratic_relations(5).unwrap().len(), 45);
        assert_eq!(quadratic_relations(6).unwrap().len(), 100);
        assert!(quadratic_relations(1).is_err());
    }

    #[test]
    fn e3_profile() {
        let rs = build_rewrite_system(3, 5).unwrap();
        assert_eq!(rs.hilbert_prefix(), vec![1, 3, 4, 3, 1, 0]);
    }

    #[test]
    fn e4_and_e6_prefixes() {
        let rs = build_rewrite_system(4, 6).unwrap();
        assert_eq!(rs.hilbert_prefix(), vec![1, 6, 19, 42, 71, 96, 106]);
        let rs = build_rewrite_system(6, 2).unwrap();
        assert_eq!(rs.hilbert_prefix(), vec![1, 15, 125]);
    }

    #[test]
    fn e2_single_rule() {
        let rs = build_rewrite_system(2, 4).unwrap();
        assert_eq!(rs.rules().len(), 1);
        assert_eq!(rs.rules()[0].lead.to_string(), "x12.x12");
        assert!(rs.rules()[0].tail.is_zero());
    }

    #[test]
    fn cache_roundtrip() {
        let rs = build_rewrite_system(4, 7).unwrap();
        let text = rs.to_text().unwrap();
        let back = RewriteSystem::from_text(&text).unwrap();
        assert_eq!(back.hilbert_prefix(), rs.hilbert_prefix());
        for d in 0..7 {
            for w in rs.normal_words(d).unwrap() {
                for g in Generator::all(4) {
                    let x = w.prepend(g);
                    assert_eq!(rs.word_vector(&x).unwrap(), back.word_vector(&x).unwrap(), "{x}");
                }
            }
        }
        let tampered = text.replacen("x12", "x13", 1);
        assert!(RewriteSystem::from_text(&tampered).is_err());
    }
}
