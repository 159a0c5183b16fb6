//! Polynomials in t over exact rationals: q-integers, closed Hilbert-series
//! formulas, Weyl-group data, cyclotomic factoring and formal power series.

use crate::error::{Error, Result};
use crate::graphs::{named_graph, Family};
use crate::scalar::ExactScalar;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Mutex, OnceLock};

/// A polynomial Σ c_d t^d; trailing zeros are trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct GradedSeries {
    coeffs: Vec<ExactScalar>,
}

impl GradedSeries {
    pub fn zero() -> Self {
        GradedSeries { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_ints(&[1])
    }

    /// t^k
    pub fn monomial(k: usize) -> Self {
        let mut c = vec![ExactScalar::zero(); k + 1];
        c[k] = ExactScalar::one();
        Self::from_coeffs(c)
    }

    pub fn from_coeffs(mut coeffs: Vec<ExactScalar>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        GradedSeries { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::from_coeffs(c.iter().map(|&x| ExactScalar::from_int(x)).collect())
    }

    /// [k] = 1 + t + … + t^{k-1}
    pub fn qint(k: usize) -> Self {
        Self::from_coeffs(vec![ExactScalar::one(); k])
    }

    pub fn coeffs(&self) -> &[ExactScalar] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> ExactScalar {
        self.coeffs.get(d).cloned().unwrap_or_default()
    }

    /// Integer coefficients, if all are integral and fit in i64.
    pub fn int_coeffs(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(|c| if c.is_integer() { c.to_i64() } else { None }).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Polynomial degree; None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs((0..n).map(|d| &self.coeff(d) + &other.coeff(d)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs((0..n).map(|d| &self.coeff(d) - &other.coeff(d)).collect())
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![ExactScalar::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Self::from_coeffs(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Long division: (quotient, remainder) with deg remainder < deg divisor.
    pub fn exact_divide(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor.degree().ok_or_else(|| Error::NotExact("division by the zero polynomial".into()))?;
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let qlen = rem.len().saturating_sub(dd);
        let mut quot = vec![ExactScalar::zero(); qlen];
        for k in (0..qlen).rev() {
            let c = &rem[k + dd] / &lead;
            if c.is_zero() {
                continue;
            }
            for (j, b) in divisor.coeffs.iter().enumerate() {
                let t = &c * b;
                rem[k + j] -= &t;
            }
            quot[k] = c;
        }
        Ok((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    /// Quotient when the division leaves no remainder, else `NotExact`.
    pub fn divide_exact(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.exact_divide(divisor)?;
        if !r.is_zero() {
            return Err(Error::NotExact(format!("({self}) / ({divisor}) leaves remainder {r}")));
        }
        Ok(q)
    }

    pub fn eval(&self, t: &ExactScalar) -> ExactScalar {
        self.coeffs.iter().rev().fold(ExactScalar::zero(), |acc, c| &(&acc * t) + c)
    }

    /// (value at t = 1, polynomial degree)
    pub fn dim_topdeg(&self) -> (ExactScalar, usize) {
        (self.eval(&ExactScalar::one()), self.degree().unwrap_or(0))
    }

    /// Palindromic coefficients.
    pub fn is_symmetric(&self) -> bool {
        let c = &self.coeffs;
        (0..c.len() / 2).all(|i| c[i] == c[c.len() - 1 - i])
    }

    /// All coefficients nonnegative.
    pub fn is_positive(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// First `len` coefficients (degrees 0..len).
    pub fn truncate(&self, len: usize) -> Self {
        Self::from_coeffs(self.coeffs.iter().take(len).cloned().collect())
    }

    /// Power-series quotient self / divisor modulo t^len; divisor(0) ≠ 0.
    pub fn series_divide(&self, divisor: &Self, len: usize) -> Result<Self> {
        let d0 = divisor.coeff(0);
        if d0.is_zero() {
            return Err(Error::NotExact("power-series division needs a nonzero constant term".into()));
        }
        let mut q: Vec<ExactScalar> = Vec::with_capacity(len);
        for k in 0..len {
            let mut acc = self.coeff(k);
            for i in 1..=k {
                let t = &divisor.coeff(i) * &q[k - i];
                acc -= &t;
            }
            q.push(&acc / &d0);
        }
        Ok(Self::from_coeffs(q))
    }

    /// Formal square root modulo t^len; the constant term must be 1.
    pub fn series_sqrt(&self, len: usize) -> Result<Self> {
        if !self.coeff(0).is_one() {
            return Err(Error::NotExact("formal square root needs constant term 1".into()));
        }
        let half = ExactScalar::new(1, 2);
        let mut b: Vec<ExactScalar> = Vec::with_capacity(len);
        for k in 0..len {
            if k == 0 {
                b.push(ExactScalar::one());
                continue;
            }
            let mut acc = self.coeff(k);
            for i in 1..k {
                let t = &b[i] * &b[k - i];
                acc -= &t;
            }
            b.push(&acc * &half);
        }
        Ok(Self::from_coeffs(b))
    }

    /// Parse a product of q-integers such as `[4]^2[5][6]^{-1}` or
    /// `[2][3]/[4]`; factors after `/` are inverted. The result must be a
    /// polynomial.
    pub fn from_brackets(expr: &str) -> Result<Self> {
        let exps = parse_bracket_exponents(expr)?;
        bracket_product(&exps)
    }

    /// Parse a product of q-integers and parenthesized polynomials in t,
    /// such as `[5](1+t^3)` or `[5][6]/[3]`; factors after `/` divide.
    pub fn parse_expr(expr: &str) -> Result<Self> {
        let bad = |m: &str| Error::Parse(format!("series expression `{expr}`: {m}"));
        let chars: Vec<char> = expr.chars().filter(|c| !c.is_whitespace() && *c != '*' && *c != '·').collect();
        if chars.is_empty() {
            return Err(bad("empty"));
        }
        let (mut num, mut den) = (Self::one(), Self::one());
        let mut dividing = false;
        let mut pos = 0;
        while pos < chars.len() {
            let factor = match chars[pos] {
                '/' => {
                    dividing = true;
                    pos += 1;
                    continue;
                }
                '(' => {
                    let mut depth = 0;
                    let end = (pos..chars.len())
                        .find(|&i| {
                            match chars[i] {
                                '(' => depth += 1,
                                ')' => depth -= 1,
                                _ => {}
                            }
                            depth == 0
                        })
                        .ok_or_else(|| bad("missing `)`"))?;
                    let inner: String = chars[pos + 1..end].iter().collect();
                    pos = end + 1;
                    if inner.contains('t') {
                        parse_polynomial(&inner)?
                    } else {
                        Self::parse_expr(&inner)?
                    }
                }
                _ => {
                    let end = (pos..chars.len()).find(|&i| chars[i] == '(' || chars[i] == '/').unwrap_or(chars.len());
                    let run: String = chars[pos..end].iter().collect();
                    pos = end;
                    Self::from_brackets(&run)?
                }
            };
            if dividing {
                den = den.mul(&factor);
            } else {
                num = num.mul(&factor);
            }
        }
        num.divide_exact(&den)
    }

    /// Multiplicities of the cyclotomic factors Φ_d, or None if the
    /// polynomial is not a positive-leading product of cyclotomic polynomials.
    pub fn cyclotomic_factor(&self) -> Option<BTreeMap<usize, u32>> {
        let deg = self.degree()?;
        let mut rest = self.clone();
        let mut out = BTreeMap::new();
        for d in 1..=(4 * deg.max(1) * deg.max(1) + 2) {
            if rest.degree()? == 0 {
                break;
            }
            if euler_phi(d) > rest.degree()? {
                continue;
            }
            let phi = cyclotomic(d);
            loop {
                let (q, r) = rest.exact_divide(&phi).ok()?;
                if !r.is_zero() {
                    break;
                }
                *out.entry(d).or_insert(0) += 1;
                rest = q;
            }
        }
        (rest == Self::one()).then_some(out)
    }

    /// Exponents e_k with self = ∏ [k]^{e_k}, if self is a cyclotomic product
    /// with no factor Φ_1 = t − 1.
    pub fn bracket_exponents(&self) -> Option<BTreeMap<usize, i64>> {
        let m = self.cyclotomic_factor()?;
        if m.contains_key(&1) {
            return None;
        }
        let top = m.keys().copied().max().unwrap_or(1);
        let mut e = BTreeMap::new();
        // [k] = ∏_{d | k, d > 1} Φ_d, so e_k = Σ_{k | d} μ(d/k) m_d
        for k in 2..=top {
            let mut s = 0i64;
            let mut d = k;
            while d <= top {
                s += mobius(d / k) * *m.get(&d).unwrap_or(&0) as i64;
                d += k;
            }
            if s != 0 {
                e.insert(k, s);
            }
        }
        Some(e)
    }

    /// Bracket rendering such as `[2]^-1[4]^2[5]`, or None if not a product
    /// of q-integers. The constant 1 renders as `1`.
    pub fn to_brackets(&self) -> Option<String> {
        let e = self.bracket_exponents()?;
        Some(format_brackets(&e))
    }
}

pub fn format_brackets(e: &BTreeMap<usize, i64>) -> String {
    if e.is_empty() {
        return "1".into();
    }
    let mut s = String::new();
    for (k, x) in e {
        if *x == 1 {
            s.push_str(&format!("[{k}]"));
        } else {
            s.push_str(&format!("[{k}]^{x}"));
        }
    }
    s
}

impl fmt::Display for GradedSeries {
    /// Coefficient list, e.g. `1, 2, 2, 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(", "))
    }
}

fn superscript_digit(c: char) -> Option<char> {
    "⁰¹²³⁴⁵⁶⁷⁸⁹".chars().position(|s| s == c).map(|p| char::from(b'0' + p as u8))
}

/// Map k ↦ exponent for a bracket expression.
pub fn parse_bracket_exponents(expr: &str) -> Result<BTreeMap<usize, i64>> {
    let bad = |m: &str| Error::Parse(format!("bracket expression `{expr}`: {m}"));
    let chars: Vec<char> = expr.chars().filter(|c| !c.is_whitespace() && *c != '*' && *c != '·').collect();
    let mut out: BTreeMap<usize, i64> = BTreeMap::new();
    let mut pos = 0;
    let mut sign = 1i64;
    if chars.is_empty() {
        return Err(bad("empty"));
    }
    if chars == ['1'] {
        return Ok(out);
    }
    while pos < chars.len() {
        match chars[pos] {
            '/' => {
                sign = -1;
                pos += 1;
                continue;
            }
            '(' | ')' => {
                pos += 1;
                continue;
            }
            '[' => {}
            c => return Err(bad(&format!("unexpected `{c}`"))),
        }
        pos += 1;
        let start = pos;
        while pos < chars.len() && chars[pos].is_ascii_digit() {
            pos += 1;
        }
        let k: usize = chars[start..pos].iter().collect::<String>().parse().map_err(|_| bad("missing integer"))?;
        if k == 0 {
            return Err(bad("[0] is not allowed"));
        }
        if chars.get(pos) != Some(&']') {
            return Err(bad("missing `]`"));
        }
        pos += 1;
        let mut e = 1i64;
        if chars.get(pos) == Some(&'^') {
            pos += 1;
            let braced = chars.get(pos) == Some(&'{');
            if braced {
                pos += 1;
            }
            let s = pos;
            if chars.get(pos) == Some(&'-') {
                pos += 1;
            }
            while pos < chars.len() && chars[pos].is_ascii_digit() {
                pos += 1;
            }
            e = chars[s..pos].iter().collect::<String>().parse().map_err(|_| bad("bad exponent"))?;
            if braced {
                if chars.get(pos) != Some(&'}') {
                    return Err(bad("missing `}`"));
                }
                pos += 1;
            }
        } else if pos < chars.len() && (chars[pos] == '⁻' || superscript_digit(chars[pos]).is_some()) {
            let neg = chars[pos] == '⁻';
            if neg {
                pos += 1;
            }
            let mut digits = String::new();
            while let Some(d) = chars.get(pos).and_then(|&c| superscript_digit(c)) {
                digits.push(d);
                pos += 1;
            }
            e = digits.parse::<i64>().map_err(|_| bad("bad exponent"))?;
            if neg {
                e = -e;
            }
        }
        *out.entry(k).or_insert(0) += sign * e;
    }
    out.retain(|_, e| *e != 0);
    Ok(out)
}

/// Parse a polynomial in t with integer coefficients, e.g. `1+2t-t^3`.
pub fn parse_polynomial(text: &str) -> Result<GradedSeries> {
    let bad = || Error::Parse(format!("polynomial `{text}`"));
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(bad());
    }
    let mut coeffs: Vec<i64> = Vec::new();
    let mut terms: Vec<(i64, &str)> = Vec::new();
    let mut start = 0;
    let bytes = compact.as_bytes();
    for i in 1..=bytes.len() {
        if i == bytes.len() || bytes[i] == b'+' || bytes[i] == b'-' {
            let t = &compact[start..i];
            let (sign, body) = match t.as_bytes()[0] {
                b'-' => (-1, &t[1..]),
                b'+' => (1, &t[1..]),
                _ => (1, t),
            };
            terms.push((sign, body));
            start = i;
        }
    }
    for (sign, body) in terms {
        let (c, deg) = match body.split_once('t') {
            None => (body.parse::<i64>().map_err(|_| bad())?, 0),
            Some((c, rest)) => {
                let c = if c.is_empty() { 1 } else { c.parse::<i64>().map_err(|_| bad())? };
                let d = match rest.strip_prefix('^') {
                    Some(e) => e.trim_matches(|ch| ch == '{' || ch == '}').parse::<usize>().map_err(|_| bad())?,
                    None if rest.is_empty() => 1,
                    None => return Err(bad()),
                };
                (c, d)
            }
        };
        if coeffs.len() <= deg {
            coeffs.resize(deg + 1, 0);
        }
        coeffs[deg] += sign * c;
    }
    Ok(GradedSeries::from_ints(&coeffs))
}

/// ∏ [k]^{e_k}; negative exponents must divide out exactly.
pub fn bracket_product(exps: &BTreeMap<usize, i64>) -> Result<GradedSeries> {
    let mut num = GradedSeries::one();
    let mut den = GradedSeries::one();
    for (&k, &e) in exps {
        let q = GradedSeries::qint(k).pow(e.unsigned_abs() as u32);
        if e > 0 {
            num = num.mul(&q);
        } else {
            den = den.mul(&q);
        }
    }
    num.divide_exact(&den)
}

fn euler_phi(mut n: usize) -> usize {
    let mut r = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            r -= r / p;
        }
        p += 1;
    }
    if n > 1 {
        r -= r / n;
    }
    r
}

fn mobius(mut n: usize) -> i64 {
    let mut r = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            r = -r;
        }
        p += 1;
    }
    if n > 1 {
        r = -r;
    }
    r
}

/// The cyclotomic polynomial Φ_d.
pub fn cyclotomic(d: usize) -> GradedSeries {
    static CACHE: OnceLock<Mutex<HashMap<usize, GradedSeries>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().expect("cyclotomic cache").get(&d) {
        return p.clone();
    }
    let mut p = GradedSeries::monomial(d).sub(&GradedSeries::one());
    for k in 1..d {
        if d % k == 0 {
            p = p.divide_exact(&cyclotomic(k)).expect("Φ_k divides t^d − 1");
        }
    }
    cache.lock().expect("cyclotomic cache").insert(d, p.clone());
    p
}

fn bracket_list(ks: &[(usize, i64)]) -> Result<GradedSeries> {
    let mut m = BTreeMap::new();
    for &(k, e) in ks {
        if k > 1 {
            *m.entry(k).or_insert(0) += e;
        }
    }
    m.retain(|_, e| *e != 0);
    bracket_product(&m)
}

/// Closed Hilbert-series formulas for named graph families.
///
/// - `A n`: [2][3]…[n].
/// - `D n`: [n][n−1]·[4][6]…[2n−4].
/// - `E6/E7/E8`: the three exceptional products.
/// - `cycle n`: [n]·∏_{k=1}^{n−1}[k(n−k)].
/// - `complete n` (n ≤ 5): H_n.
/// - `Dtilde n`, `E6tilde`, `E7tilde`: the conjectured affine products.
pub fn formula(family: Family, params: &[usize]) -> Result<GradedSeries> {
    let p = |k: usize| -> Result<usize> {
        params.get(k).copied().ok_or_else(|| Error::Range(format!("{family:?} needs a size parameter")))
    };
    match family {
        Family::A => {
            let n = p(0)?;
            if n < 1 {
                return Err(Error::Range("A needs n ≥ 1".into()));
            }
            bracket_list(&(2..=n).map(|k| (k, 1)).collect::<Vec<_>>())
        }
        Family::D => {
            let n = p(0)?;
            if n < 3 {
                return Err(Error::Range(format!("D needs n ≥ 3, got {n}")));
            }
            let mut ks = vec![(n, 1), (n - 1, 1)];
            ks.extend((2..=n - 2).map(|k| (2 * k, 1)));
            bracket_list(&ks)
        }
        Family::E6 => GradedSeries::from_brackets("[4][5][6]^2[8][9]/[3]"),
        Family::E7 => GradedSeries::from_brackets("[6]^2[8][9][10][12][14]/[3]"),
        Family::E8 => GradedSeries::from_brackets("[6][8][10][12][14][15][18][20][24]/[3][5]"),
        Family::Cycle => {
            let n = p(0)?;
            if n < 3 {
                return Err(Error::Range(format!("cycle needs n ≥ 3, got {n}")));
            }
            let mut ks = vec![(n, 1)];
            ks.extend((1..n).map(|k| (k * (n - k), 1)));
            bracket_list(&ks)
        }
        Family::Complete => {
            let n = p(0)?;
            match n {
                1 => Ok(GradedSeries::one()),
                2 => GradedSeries::from_brackets("[2]"),
                3 => GradedSeries::from_brackets("[2]^2[3]"),
                4 => GradedSeries::from_brackets("[2]^2[3]^2[4]^2"),
                5 => GradedSeries::from_brackets("[4]^4[5]^2[6]^4"),
                _ => Err(Error::Range(format!("no closed form for E_{n}"))),
            }
        }
        Family::Dtilde => {
            let n = p(0)?;
            if n < 3 {
                return Err(Error::Range(format!("Dtilde needs n ≥ 3, got {n}")));
            }
            let mut ks = Vec::new();
            // [2n−2]!! / [2n−3]!!
            ks.extend((1..=n - 1).map(|i| (2 * i, 1)));
            ks.extend((1..=n - 1).map(|i| (2 * i - 1, -1)));
            ks.extend([(n, 1), (n + 1, 1), (2, -2), (n - 1, -1), (n - 2, -1)]);
            ks.push(((n * n - n) / 2, 2));
            ks.push(((n * n - n - 2) / 2, 2));
            ks.extend((1..=n - 3).map(|i| (i * (2 * n - i - 1), 1)));
            bracket_list(&ks)
        }
        Family::E6tilde => GradedSeries::from_brackets("[6][9][12][14]^2[16]^2[21][22][30]^2/[3]^2[4][7][11]"),
        Family::E7tilde => GradedSeries::from_brackets(
            "[6][8][10][12][14][18][24][27][32][34][48][49][52][66][75]/[3][4][5][7][9][11][13][17]",
        ),
        Family::Star | Family::CompleteMultipartite => {
            Err(Error::Range(format!("no closed formula for the {family:?} family")))
        }
    }
}

/// Coefficients of H_6 through t^10, as printed in the literature.
pub const H6_PREFIX: [i64; 11] = [1, 15, 125, 765, 3831, 16605, 64432, 228855, 755777, 2347365, 6916867];

/// Simply-laced Weyl types.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum WeylType {
    A(usize),
    D(usize),
    E(usize),
}

impl std::str::FromStr for WeylType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, num) = s.split_at(1.min(s.len()));
        let r: usize = num.trim_start_matches('_').parse().map_err(|_| Error::Parse(format!("bad Weyl type `{s}`")))?;
        match head {
            "A" if r >= 1 => Ok(WeylType::A(r)),
            "D" if r >= 3 => Ok(WeylType::D(r)),
            "E" if (6..=8).contains(&r) => Ok(WeylType::E(r)),
            _ => Err(Error::Range(format!("unsupported Weyl type `{s}`"))),
        }
    }
}

impl fmt::Display for WeylType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeylType::A(n) => write!(f, "A{n}"),
            WeylType::D(n) => write!(f, "D{n}"),
            WeylType::E(n) => write!(f, "E{n}"),
        }
    }
}

/// Degrees, Cartan matrix and Coxeter word of a simply-laced Weyl group.
#[derive(Clone, Debug)]
pub struct WeylData {
    pub kind: WeylType,
    pub rank: usize,
    pub degrees: Vec<usize>,
    pub cartan: Vec<Vec<i64>>,
    /// simple reflections (0-based) whose product is the Coxeter element
    pub coxeter_word: Vec<usize>,
}

impl WeylData {
    /// Cartan matrix 2I − adjacency of the Dynkin diagram, which is the
    /// same labeled graph as `named_graph` builds for that family.
    pub fn new(kind: WeylType) -> Result<Self> {
        let (g, degrees): (_, Vec<usize>) = match kind {
            WeylType::A(n) => (named_graph(Family::A, &[n])?, (2..=n + 1).collect()),
            WeylType::D(n) => {
                let mut d: Vec<usize> = (1..n).map(|i| 2 * i).collect();
                d.push(n);
                (named_graph(Family::D, &[n])?, d)
            }
            WeylType::E(6) => (named_graph(Family::E6, &[])?, vec![2, 5, 6, 8, 9, 12]),
            WeylType::E(7) => (named_graph(Family::E7, &[])?, vec![2, 6, 8, 10, 12, 14, 18]),
            WeylType::E(8) => (named_graph(Family::E8, &[])?, vec![2, 8, 12, 14, 18, 20, 24, 30]),
            WeylType::E(r) => return Err(Error::Range(format!("no Weyl type E{r}"))),
        };
        let r = g.n();
        let mut cartan = vec![vec![0i64; r]; r];
        for (i, row) in cartan.iter_mut().enumerate() {
            row[i] = 2;
        }
        for (a, b) in g.edges() {
            cartan[a - 1][b - 1] = -1;
            cartan[b - 1][a - 1] = -1;
        }
        Ok(WeylData { kind, rank: r, degrees, cartan, coxeter_word: (0..r).collect() })
    }

    pub fn order(&self) -> u64 {
        self.degrees.iter().map(|&d| d as u64).product()
    }

    pub fn coxeter_number(&self) -> usize {
        self.degrees.iter().copied().max().unwrap_or(1)
    }

    /// Poincaré polynomial ∏ [d_i].
    pub fn poincare(&self) -> GradedSeries {
        self.degrees.iter().fold(GradedSeries::one(), |acc, &d| acc.mul(&GradedSeries::qint(d)))
    }

    /// Matrix of the simple reflection s_i on the root basis:
    /// s_i(α_j) = α_j − A_ij α_i, stored column-per-image.
    fn reflection(&self, i: usize) -> Vec<Vec<i64>> {
        let r = self.rank;
        let mut m = identity(r);
        for j in 0..r {
            m[i][j] -= self.cartan[i][j];
        }
        m
    }

    pub fn coxeter_matrix(&self) -> Vec<Vec<i64>> {
        self.coxeter_word.iter().fold(identity(self.rank), |acc, &i| matmul(&acc, &self.reflection(i)))
    }

    /// Multiplicative order of the Coxeter element.
    pub fn coxeter_order(&self) -> usize {
        let c = self.coxeter_matrix();
        let id = identity(self.rank);
        let mut p = c.clone();
        let mut k = 1;
        while p != id {
            p = matmul(&p, &c);
            k += 1;
            assert!(k <= 10_000, "Coxeter element of unexpectedly large order");
        }
        k
    }

    /// det(tI − c) by Faddeev–LeVerrier.
    pub fn coxeter_charpoly(&self) -> GradedSeries {
        charpoly(&self.coxeter_matrix())
    }
}

fn identity(r: usize) -> Vec<Vec<i64>> {
    (0..r).map(|i| (0..r).map(|j| i64::from(i == j)).collect()).collect()
}

fn matmul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let r = a.len();
    let mut out = vec![vec![0i64; r]; r];
    for i in 0..r {
        for k in 0..r {
            if a[i][k] == 0 {
                continue;
            }
            for j in 0..r {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

/// Characteristic polynomial det(tI − A) over the rationals.
pub fn charpoly(a: &[Vec<i64>]) -> GradedSeries {
    let r = a.len();
    let am: Vec<Vec<ExactScalar>> = a.iter().map(|row| row.iter().map(|&x| x.into()).collect()).collect();
    let mut c = vec![ExactScalar::zero(); r + 1];
    c[r] = ExactScalar::one();
    let mut m = vec![vec![ExactScalar::zero(); r]; r];
    for k in 1..=r {
        // M_k = A·M_{k−1} + c_{r−k+1}·I
        let mut next = vec![vec![ExactScalar::zero(); r]; r];
        for i in 0..r {
            for j in 0..r {
                let mut s = ExactScalar::zero();
                for l in 0..r {
                    if !am[i][l].is_zero() && !m[l][j].is_zero() {
                        s += &(&am[i][l] * &m[l][j]);
                    }
                }
                if i == j {
                    s += &c[r - k + 1];
                }
                next[i][j] = s;
            }
        }
        m = next;
        let mut tr = ExactScalar::zero();
        for i in 0..r {
            for l in 0..r {
                tr += &(&am[i][l] * &m[l][i]);
            }
        }
        c[r - k] = -(&tr / &ExactScalar::from_int(k as i64));
    }
    GradedSeries::from_coeffs(c)
}

/// W(t) / C(t); errors unless the division is exact and the degree data
/// agrees with the Coxeter element (order h = max d_i, deg C = rank).
pub fn weyl_ratio(data: &WeylData) -> Result<GradedSeries> {
    let c = data.coxeter_charpoly();
    if c.degree() != Some(data.rank) {
        return Err(Error::NotExact(format!("characteristic polynomial of {} has wrong degree", data.kind)));
    }
    let h = data.coxeter_order();
    if h != data.coxeter_number() {
        return Err(Error::NotExact(format!(
            "{}: Coxeter element has order {h}, degree table says {}",
            data.kind,
            data.coxeter_number()
        )));
    }
    data.poincare().divide_exact(&c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(c: &[i64]) -> GradedSeries {
        GradedSeries::from_ints(c)
    }

    #[test]
    fn qint_products() {
        assert_eq!(GradedSeries::qint(2).mul(&GradedSeries::qint(3)), s(&[1, 2, 2, 1]));
        let h3 = GradedSeries::from_brackets("[2]^2[3]").unwrap();
        assert_eq!(h3, s(&[1, 3, 4, 3, 1]));
        let (q, r) = h3.exact_divide(&GradedSeries::qint(2)).unwrap();
        assert_eq!((q, r.is_zero()), (s(&[1, 2, 2, 1]), true));
        let (_, r) = s(&[1, 1, 0, 1]).exact_divide(&GradedSeries::qint(2)).unwrap();
        assert!(!r.is_zero());
    }

    #[test]
    fn bracket_parsing_variants() {
        let a = GradedSeries::from_brackets("[2]^{-2}[3]^{-2}[4]^2[5]^2[6]^4").unwrap();
        let b = GradedSeries::from_brackets("[4]²[5]²[6]⁴/[2]²[3]²").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.dim_topdeg(), (14400.into(), 28));
        assert!(GradedSeries::from_brackets("[2]^-1").is_err());
        assert!(GradedSeries::from_brackets("[x]").is_err());
    }

    #[test]
    fn cyclotomic_detection() {
        assert_eq!(s(&[1, 1, 1]).cyclotomic_factor(), Some(BTreeMap::from([(3, 1)])));
        assert_eq!(s(&[1, 2]).cyclotomic_factor(), None);
        assert!(!s(&[1, 2]).is_symmetric());
        let h5 = GradedSeries::from_brackets("[4]^4[5]^2[6]^4").unwrap();
        assert!(h5.is_symmetric());
        assert_eq!(h5.to_brackets().unwrap(), "[4]^4[5]^2[6]^4");
        let k14 = GradedSeries::from_brackets("[2]^-2[3]^-2[4]^2[5]^2[6]^4").unwrap();
        assert_eq!(k14.to_brackets().unwrap(), "[2]^-2[3]^-2[4]^2[5]^2[6]^4");
    }

    #[test]
    fn h5_coefficients() {
        let h5 = GradedSeries::from_brackets("[4]^4[5]^2[6]^4").unwrap();
        let expect = [1, 10, 55, 220, 711, 1960, 4761, 10410, 20796, 38370, 65921];
        assert_eq!(&h5.int_coeffs().unwrap()[..11], &expect);
    }

    #[test]
    fn weyl_small_types() {
        let d4 = WeylData::new(WeylType::D(4)).unwrap();
        assert_eq!(d4.order(), 192);
        assert_eq!(d4.coxeter_charpoly().eval(&1.into()), 4.into());
        assert_eq!(weyl_ratio(&d4).unwrap(), GradedSeries::from_brackets("[3][4]^2").unwrap());
        let a3 = WeylData::new(WeylType::A(3)).unwrap();
        assert_eq!(weyl_ratio(&a3).unwrap(), GradedSeries::from_brackets("[2][3]").unwrap());
    }

    #[test]
    fn expressions() {
        let a = GradedSeries::parse_expr("[5](1+t^3)").unwrap();
        assert_eq!(a, s(&[1, 1, 1, 2, 2, 1, 1, 1]));
        assert_eq!(GradedSeries::parse_expr("[5][6]/[3]").unwrap(), a);
        assert_eq!(parse_polynomial("1 + 2t - t^3").unwrap(), s(&[1, 2, 0, -1]));
        assert_eq!(GradedSeries::parse_expr("([2][3])").unwrap(), s(&[1, 2, 2, 1]));
        assert!(GradedSeries::parse_expr("[5]/(1+t^2)").is_err());
    }

    #[test]
    fn formal_sqrt() {
        let sq = s(&[1, 7, 31]).mul(&s(&[1, 7, 31]));
        assert_eq!(sq.series_sqrt(3).unwrap(), s(&[1, 7, 31]));
        let h6 = s(&H6_PREFIX);
        let q = h6.series_divide(&s(&[1, 1]), 8).unwrap();
        assert_eq!(q.int_coeffs().unwrap(), vec![1, 14, 111, 654, 3177, 13428, 51004, 177851]);
    }
}
