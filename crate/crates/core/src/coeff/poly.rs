//! Sparse multivariate polynomials over the rationals.
//!
//! Variables are referred to by index. Monomials are ordered graded
//! lexicographically with variable 0 as the most significant, which fixes the
//! leading term used for normalization and division.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exponent vector with trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(index: usize, exp: u32) -> Self {
        if exp == 0 {
            return Monomial::one();
        }
        let mut v = vec![0; index + 1];
        v[index] = exp;
        Monomial(v)
    }

    pub fn from_exponents(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exp(&self, var: usize) -> u32 {
        self.0.get(var).copied().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let n = self.0.len().max(other.0.len());
        let exps = (0..n).map(|i| self.exp(i) + other.exp(i)).collect();
        Monomial::from_exponents(exps)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if other.0.len() > self.0.len() {
            return None;
        }
        let mut exps = self.0.clone();
        for (i, &e) in other.0.iter().enumerate() {
            if exps[i] < e {
                return None;
            }
            exps[i] -= e;
        }
        Some(Monomial::from_exponents(exps))
    }

    fn with_exp(&self, var: usize, exp: u32) -> Monomial {
        let mut exps = self.0.clone();
        if exps.len() <= var {
            exps.resize(var + 1, 0);
        }
        exps[var] = exp;
        Monomial::from_exponents(exps)
    }

    /// Highest variable index with a nonzero exponent.
    pub fn max_var(&self) -> Option<usize> {
        if self.0.is_empty() {
            None
        } else {
            Some(self.0.len() - 1)
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| {
                let n = self.0.len().max(other.0.len());
                for i in 0..n {
                    match self.exp(i).cmp(&other.exp(i)) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{:?}", self.0)
    }
}

/// A polynomial with exact rational coefficients. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, BigRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Poly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Poly { terms }
    }

    pub fn from_int(n: i64) -> Self {
        Poly::constant(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn var(index: usize) -> Self {
        Poly::monomial(Monomial::var(index, 1), BigRational::one())
    }

    pub fn monomial(m: Monomial, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn from_terms(iter: impl IntoIterator<Item = (Monomial, BigRational)>) -> Self {
        let mut p = Poly::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.constant_value().is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The value of a constant polynomial (zero included).
    pub fn constant_value(&self) -> Option<BigRational> {
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        if self.is_constant() {
            self.terms.get(&Monomial::one()).cloned()
        } else {
            None
        }
    }

    pub fn leading(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> BigRational {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(BigRational::zero)
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    fn mul_term(&self, m: &Monomial, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(mm, x)| (mm.mul(m), x * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn max_var(&self) -> Option<usize> {
        self.terms.keys().filter_map(Monomial::max_var).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.exp(var)).max().unwrap_or(0)
    }

    pub fn contains_var(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.exp(var) > 0)
    }

    /// Variables that occur with a nonzero exponent.
    pub fn variables(&self) -> Vec<usize> {
        let mut vars: Vec<usize> = self
            .terms
            .keys()
            .flat_map(|m| {
                m.exponents()
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, _)| i)
                    .collect::<Vec<_>>()
            })
            .collect();
        vars.sort_unstable();
        vars.dedup();
        vars
    }

    /// Coefficient of `var^deg`, as a polynomial in the remaining variables.
    pub fn coeff_in(&self, var: usize, deg: u32) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.exp(var) == deg)
                .map(|(m, c)| (m.with_exp(var, 0), c.clone()))
                .collect(),
        }
    }

    pub fn derivative(&self, var: usize) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.exp(var);
            if e > 0 {
                out.add_term(m.with_exp(var, e - 1), c * BigRational::from_integer(BigInt::from(e)));
            }
        }
        out
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some((_, lc)) if lc.is_one() => self.clone(),
            Some((_, lc)) => self.scale(&lc.recip()),
        }
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        if let Some(c) = divisor.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        let (lm, lc) = divisor.leading().map(|(m, c)| (m.clone(), c.clone()))?;
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((rm, rc)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) {
            let qm = rm.div(&lm)?;
            let qc = rc / &lc;
            rem = rem.sub(&divisor.mul_term(&qm, &qc));
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Pseudo-remainder of `self` by `b` with respect to `var`.
    fn prem(&self, b: &Poly, var: usize) -> Poly {
        let db = b.degree_in(var);
        let lcb = b.coeff_in(var, db);
        let mut r = self.clone();
        let da = self.degree_in(var);
        if da < db {
            return r;
        }
        let mut e = da - db + 1;
        while !r.is_zero() && r.degree_in(var) >= db {
            let dr = r.degree_in(var);
            let lcr = r.coeff_in(var, dr);
            let shift = Poly::monomial(Monomial::var(var, dr - db), BigRational::one());
            r = lcb.mul(&r).sub(&lcr.mul(&shift).mul(b));
            e -= 1;
        }
        r.mul(&lcb.pow(e))
    }

    /// Divides out the rational content, leaving coprime integer coefficients.
    fn numeric_primitive(&self) -> Poly {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in self.terms.values() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            return self.clone();
        }
        self.scale(&BigRational::new(den, num))
    }

    /// GCD of the coefficients of `self` viewed as a polynomial in `var`.
    fn content_in(&self, var: usize) -> Poly {
        let deg = self.degree_in(var);
        let mut g = Poly::zero();
        for d in 0..=deg {
            let c = self.coeff_in(var, d);
            if c.is_zero() {
                continue;
            }
            g = gcd(&g, &c);
            if g.is_one() {
                break;
            }
        }
        g
    }
}

/// Greatest common divisor, normalized to be monic (leading coefficient one).
///
/// Recursive primitive polynomial remainder sequence in the highest occurring
/// variable, with contents handled by recursion on the remaining variables.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    let var = a.max_var().max(b.max_var()).expect("nonconstant polynomial has a variable");
    if !a.contains_var(var) {
        return gcd(a, &b.content_in(var));
    }
    if !b.contains_var(var) {
        return gcd(&a.content_in(var), b);
    }
    let ca = a.content_in(var);
    let cb = b.content_in(var);
    let pa = a.div_exact(&ca).expect("content divides").numeric_primitive();
    let pb = b.div_exact(&cb).expect("content divides").numeric_primitive();
    let content = gcd(&ca, &cb);

    let (mut x, mut y) = if pa.degree_in(var) >= pb.degree_in(var) { (pa, pb) } else { (pb, pa) };
    let prim = loop {
        let r = x.prem(&y, var);
        if r.is_zero() {
            break y;
        }
        if r.degree_in(var) == 0 {
            break Poly::one();
        }
        let cr = r.content_in(var);
        x = y;
        y = r.div_exact(&cr).expect("content divides").numeric_primitive();
    };
    let prim = if prim.is_constant() {
        Poly::one()
    } else {
        let c = prim.content_in(var);
        prim.div_exact(&c).expect("content divides")
    };
    content.mul(&prim).monic()
}

/// Least common multiple, monic.
pub fn lcm(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() || b.is_zero() {
        return Poly::zero();
    }
    let g = gcd(a, b);
    a.mul(&b.div_exact(&g).expect("gcd divides")).monic()
}

pub(crate) fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl Poly {
    /// Renders in the expression syntax, using `names` for variables.
    /// Terms are printed from the leading monomial down.
    pub fn render(&self, names: &dyn Fn(usize) -> String) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(fmt_rational(&abs));
            }
            for (v, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names(v)),
                    _ => factors.push(format!("{}**{}", names(v), e)),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&|v| format!("x{v}")))
    }
}
