//! Named families of relations in E_n and a two-route vanishing check:
//! reduction to normal form, and pairing against every probe word of the
//! same degree.

use crate::coxeter::rk_element;
use crate::error::{Error, Result};
use crate::freealg::{sn_degree, Element, Permutation, Word};
use crate::graphs::named_graph;
use crate::graphs::Family;
use crate::pairing::pair_words;
use crate::rewrite::RewriteSystem;
use rayon::prelude::*;

/// A named element expected to vanish in E_n.
#[derive(Clone, Debug)]
pub struct Relation {
    pub name: String,
    pub element: Element,
}

/// Sum of signed letter-words over directed edges; `letters` maps a symbol
/// to its directed pair.
fn lettered(n: usize, letters: &[(char, (usize, usize))], terms: &[(i64, &str)]) -> Result<Element> {
    let mut out = Element::zero(n);
    for &(sign, word) in terms {
        let pairs: Vec<(usize, usize)> = word
            .chars()
            .map(|ch| {
                letters.iter().find(|(c, _)| *c == ch).map(|(_, p)| *p).ok_or_else(|| Error::Parse(format!("unknown letter `{ch}`")))
            })
            .collect::<Result<_>>()?;
        out = out.add(&Element::monomial(n, &pairs)?.scale(&sign.into()));
    }
    Ok(out)
}

fn need(n: usize, min: usize, what: &str) -> Result<()> {
    if n < min {
        return Err(Error::Range(format!("{what} needs n ≥ {min}, got {n}")));
    }
    Ok(())
}

/// aba − bab for the path 1 → 2 → 3 (a = x12, b = x23).
pub fn braid(n: usize) -> Result<Vec<Relation>> {
    need(n, 3, "braid relation")?;
    let l = [('a', (1, 2)), ('b', (2, 3))];
    Ok(vec![Relation { name: "aba-bab".into(), element: lettered(n, &l, &[(1, "aba"), (-1, "bab")])? }])
}

/// The two claw relations of the star with center 1 (a, b, c = x12, x13, x14).
pub fn claw(n: usize) -> Result<Vec<Relation>> {
    need(n, 4, "claw relation")?;
    let l = [('a', (1, 2)), ('b', (1, 3)), ('c', (1, 4))];
    Ok(vec![
        Relation { name: "abca+bcab+cabc".into(), element: lettered(n, &l, &[(1, "abca"), (1, "bcab"), (1, "cabc")])? },
        Relation { name: "acba+bacb+cbac".into(), element: lettered(n, &l, &[(1, "acba"), (1, "bacb"), (1, "cbac")])? },
    ])
}

/// Σ_{i=2}^m x_{a1,ai} x_{a1,a(i+1)} ⋯ x_{a1,am} x_{a1,a2} ⋯ x_{a1,ai} for distinct a_1, …, a_m.
pub fn cyclic_relation(n: usize, a: &[usize]) -> Result<Relation> {
    let m = a.len();
    if m < 3 || a.iter().any(|&v| v == 0 || v > n) {
        return Err(Error::Range(format!("cyclic relation needs 3 ≤ m distinct vertices in 1..{n}, got {a:?}")));
    }
    let mut seen = a.to_vec();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != m {
        return Err(Error::Range(format!("repeated vertex in {a:?}")));
    }
    let mut out = Element::zero(n);
    for i in 1..m {
        let mut pairs: Vec<(usize, usize)> = (i..m).map(|j| (a[0], a[j])).collect();
        pairs.extend((1..=i).map(|j| (a[0], a[j])));
        out = out.add(&Element::monomial(n, &pairs)?);
    }
    let name = format!("cyclic({})", a.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","));
    Ok(Relation { name, element: out })
}

/// Cyclic relations on vertices 1..m for every m = 3..n.
pub fn cyclic(n: usize) -> Result<Vec<Relation>> {
    need(n, 3, "cyclic relation")?;
    (3..=n).map(|m| cyclic_relation(n, &(1..=m).collect::<Vec<_>>())).collect()
}

/// The sextic relation of the star with center 1 (a, b, c, d = x12, …, x15).
pub fn sextic(n: usize) -> Result<Vec<Relation>> {
    need(n, 5, "sextic relation")?;
    let l = [('a', (1, 2)), ('b', (1, 3)), ('c', (1, 4)), ('d', (1, 5))];
    let terms = [
        (1, "abacdc"),
        (-1, "abcdca"),
        (1, "acdcba"),
        (1, "bacdcb"),
        (-1, "bcdcab"),
        (-1, "cabadc"),
        (1, "cdabac"),
        (-1, "cdcaba"),
        (1, "dabacd"),
        (-1, "dcabad"),
    ];
    Ok(vec![Relation { name: "sextic".into(), element: lettered(n, &l, &terms)? }])
}

/// The three relations of the oriented 4-cycle a, b, c, d = x12, x23, x34, x41.
pub fn a3tilde(n: usize) -> Result<Vec<Relation>> {
    need(n, 4, "4-cycle relation")?;
    let l = [('a', (1, 2)), ('b', (2, 3)), ('c', (3, 4)), ('d', (4, 1))];
    Ok(vec![
        Relation { name: "abc+bcd+cda+dab".into(), element: lettered(n, &l, &[(1, "abc"), (1, "bcd"), (1, "cda"), (1, "dab")])? },
        Relation { name: "cba+dcb+adc+bad".into(), element: lettered(n, &l, &[(1, "cba"), (1, "dcb"), (1, "adc"), (1, "bad")])? },
        Relation {
            name: "abda+bcab+cdbc+dacd+acbd+bdac".into(),
            element: lettered(
                n,
                &l,
                &[(1, "abda"), (1, "bcab"), (1, "cdbc"), (1, "dacd"), (1, "acbd"), (1, "bdac")],
            )?,
        },
    ])
}

/// R_1, …, R_{n−1} of the n-cycle.
pub fn rk(n: usize) -> Result<Vec<Relation>> {
    need(n, 3, "R_k")?;
    (1..n).map(|k| Ok(Relation { name: format!("R_{k}"), element: rk_element(n, k)? })).collect()
}

/// Suite by name: braid, claw, cyclic, sextic, a3tilde, rk.
pub fn suite(name: &str, n: usize) -> Result<Vec<Relation>> {
    match name {
        "braid" => braid(n),
        "claw" => claw(n),
        "cyclic" => cyclic(n),
        "sextic" => sextic(n),
        "a3tilde" => a3tilde(n),
        "rk" => rk(n),
        other => Err(Error::Parse(format!("unknown relation suite `{other}`"))),
    }
}

/// Outcome of checking one relation by both routes.
#[derive(Clone, Debug)]
pub struct RelationCheck {
    pub name: String,
    pub degree: usize,
    pub terms: usize,
    pub reduces_to_zero: bool,
    /// words of the relation's degree in K_n
    pub probes: u64,
    /// probes in the S_n-degree block where the pairing can be nonzero
    pub probes_paired: u64,
    pub pairs_to_zero: bool,
    pub witness: Option<Word>,
}

impl RelationCheck {
    pub fn passed(&self) -> bool {
        self.reduces_to_zero && self.pairs_to_zero
    }
}

/// Reduce `rel` in `rs` and pair it against every word of equal degree.
///
/// A probe word Q is paired only with the terms P having σ_P = σ_Q⁻¹, since
/// ⟨P, Q⟩ vanishes otherwise.
pub fn check_relation(rel: &Relation, rs: &RewriteSystem) -> Result<RelationCheck> {
    let n = rel.element.n();
    if rs.n() != n {
        return Err(Error::Range(format!("relation lives in E_{n}, rewrite system is for E_{}", rs.n())));
    }
    let degree = rel.element.degree().unwrap_or(0);
    if !rel.element.is_homogeneous() {
        return Err(Error::Inhomogeneous(rel.name.clone()));
    }
    let reduces_to_zero = rs.is_zero(&rel.element)?;
    let terms: Vec<(Word, i64)> = rel
        .element
        .terms()
        .map(|(w, c)| c.to_i64().map(|c| (w.clone(), c)).ok_or_else(|| Error::Range("non-integer coefficient".into())))
        .collect::<Result<_>>()?;
    let sigmas: Vec<Permutation> = terms.iter().map(|(w, _)| sn_degree(w, n)).collect();
    let k = (n * (n - 1) / 2) as u64;
    let probes = k.pow(degree as u32);
    let k_graph = named_graph(Family::Complete, &[n])?;
    let gens = k_graph.generators();

    // split the probe space by its first letter for parallelism
    let results: Vec<(u64, Option<Word>)> = gens
        .par_iter()
        .map(|&g0| {
            let mut paired = 0u64;
            if degree == 0 {
                return (0, None);
            }
            let mut idx = vec![0usize; degree - 1];
            loop {
                let mut letters = vec![g0];
                letters.extend(idx.iter().map(|&i| gens[i]));
                let q = Word::from_letters(&letters);
                let want = sn_degree(&q, n).inverse();
                if sigmas.contains(&want) {
                    paired += 1;
                    let v: i64 = terms.iter().zip(&sigmas).filter(|(_, s)| **s == want).map(|((p, c), _)| c * pair_words(p, &q)).sum();
                    if v != 0 {
                        return (paired, Some(q));
                    }
                }
                // odometer over the remaining letters
                let mut pos = idx.len();
                loop {
                    if pos == 0 {
                        return (paired, None);
                    }
                    pos -= 1;
                    idx[pos] += 1;
                    if idx[pos] < gens.len() {
                        break;
                    }
                    idx[pos] = 0;
                }
            }
        })
        .collect();
    let probes_paired = results.iter().map(|r| r.0).sum();
    let witness = results.into_iter().find_map(|r| r.1);
    let (probes, probes_paired, witness) = if degree == 0 {
        let v: i64 = terms.iter().map(|(_, c)| *c).sum();
        (1, 1, (v != 0).then(Word::empty))
    } else {
        (probes, probes_paired, witness)
    };
    Ok(RelationCheck {
        name: rel.name.clone(),
        degree,
        terms: terms.len(),
        reduces_to_zero,
        probes,
        probes_paired,
        pairs_to_zero: witness.is_none(),
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewrite::build_rewrite_system;

    #[test]
    fn braid_and_claw_vanish() {
        let rs3 = build_rewrite_system(3, 3).unwrap();
        for r in braid(3).unwrap() {
            assert!(check_relation(&r, &rs3).unwrap().passed());
        }
        let rs4 = build_rewrite_system(4, 4).unwrap();
        for r in claw(4).unwrap().into_iter().chain(a3tilde(4).unwrap()) {
            let c = check_relation(&r, &rs4).unwrap();
            assert!(c.passed(), "{c:?}");
        }
    }

    #[test]
    fn nonrelation_is_caught() {
        let rs = build_rewrite_system(3, 3).unwrap();
        let l = [('a', (1, 2)), ('b', (2, 3))];
        let bad = Relation { name: "aba+bab".into(), element: lettered(3, &l, &[(1, "aba"), (1, "bab")]).unwrap() };
        let c = check_relation(&bad, &rs).unwrap();
        assert!(!c.reduces_to_zero);
        assert!(!c.pairs_to_zero);
    }
}
