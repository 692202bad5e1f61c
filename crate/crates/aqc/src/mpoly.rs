//! Sparse multivariate polynomials with exact integer coefficients.
//!
//! Variables are numeric ids; callers decide what they mean and how they
//! are named when rendering. Zero coefficients are never stored.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type VarId = u32;

/// A product of variable powers, kept sorted by variable id with all
/// exponents positive. The empty product is 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<(VarId, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: VarId) -> Self {
        Monomial(vec![(v, 1)])
    }

    /// Normalizes arbitrary (variable, exponent) pairs: merges repeats,
    /// drops zero exponents, sorts by variable.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (VarId, u32)>) -> Self {
        let mut merged: BTreeMap<VarId, u32> = BTreeMap::new();
        for (v, e) in pairs {
            if e > 0 {
                *merged.entry(v).or_insert(0) += e;
            }
        }
        Monomial(merged.into_iter().collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn pairs(&self) -> &[(VarId, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent_of(&self, v: VarId) -> u32 {
        self.0
            .iter()
            .find(|&&(w, _)| w == v)
            .map_or(0, |&(_, e)| e)
    }

    pub fn mul(&self, rhs: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + rhs.0.len());
        let (mut a, mut b) = (self.0.iter().peekable(), rhs.0.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&(va, ea)), Some(&&(vb, eb))) => {
                    if va < vb {
                        out.push((va, ea));
                        a.next();
                    } else if vb < va {
                        out.push((vb, eb));
                        b.next();
                    } else {
                        out.push((va, ea + eb));
                        a.next();
                        b.next();
                    }
                }
                (Some(&&p), None) => {
                    out.push(p);
                    a.next();
                }
                (None, Some(&&p)) => {
                    out.push(p);
                    b.next();
                }
                (None, None) => break,
            }
        }
        Monomial(out)
    }

    /// Graded lexicographic sort key for display: ascending total degree,
    /// and within a degree the lexicographically earliest variables with
    /// the highest powers come first (x^2 before x*y before y*z).
    fn display_key(&self) -> (u32, Vec<(VarId, std::cmp::Reverse<u32>)>) {
        let lex = self
            .0
            .iter()
            .map(|&(v, e)| (v, std::cmp::Reverse(e)))
            .collect();
        (self.degree(), lex)
    }
}

/// A polynomial as a map from monomials to nonzero integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly::default()
    }

    pub fn one() -> Self {
        MPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        let mut p = MPoly::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn var(v: VarId) -> Self {
        let mut p = MPoly::zero();
        p.add_term(Monomial::var(v), BigInt::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Adds c·m into the polynomial, dropping the term if it cancels.
    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    /// Sum of all coefficients; the value at every variable set to 1.
    pub fn coeff_sum(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Dense coefficient list `[c_0, c_1, ...]` if the polynomial involves
    /// no variable other than v; None otherwise.
    pub fn univariate_coeffs(&self, v: VarId) -> Option<Vec<BigInt>> {
        for m in self.terms.keys() {
            if m.pairs().iter().any(|&(w, _)| w != v) {
                return None;
            }
        }
        let deg = self.degree() as usize;
        let mut out = vec![BigInt::zero(); deg + 1];
        for (m, c) in &self.terms {
            out[m.exponent_of(v) as usize] = c.clone();
        }
        Some(out)
    }

    /// Formats the polynomial with `namer` supplying variable names.
    /// Factors are joined with `*`, powers written `^e`, unit coefficients
    /// left implicit; terms appear in display order (see
    /// [`Monomial::display_key`]).
    pub fn render(&self, namer: impl Fn(VarId) -> String) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut ordered: Vec<(&Monomial, &BigInt)> = self.terms.iter().collect();
        ordered.sort_by_key(|(m, _)| m.display_key());
        let mut out = String::new();
        for (i, (m, c)) in ordered.into_iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(abs.to_string());
            }
            for &(v, e) in m.pairs() {
                if e == 1 {
                    factors.push(namer(v));
                } else {
                    factors.push(format!("{}^{}", namer(v), e));
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

impl Add for &MPoly {
    type Output = MPoly;

    fn add(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MPoly {
    type Output = MPoly;

    fn sub(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &MPoly {
    type Output = MPoly;

    fn mul(self, rhs: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}
