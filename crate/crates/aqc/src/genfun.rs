//! Exact rational power series and the differential equations satisfied by
//! the generating functions of the AqC-free counts.
//!
//! A [`RatSeries`] is a truncation: it retains the coefficients of z^0..z^N
//! and records nothing about the tail. Arithmetic keeps only coefficients
//! that are fully determined by the retained ones, so the order of a sum or
//! product is the smaller of the operand orders, differentiation lowers the
//! order by one, and multiplying by z^m raises it by m.

use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::counts::{factorial, free_sequence};
use crate::{require_cycle_length, Error, Result};

fn rat(n: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// A power series over the rationals, truncated after z^order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatSeries {
    coeffs: Vec<BigRational>,
}

impl RatSeries {
    /// Builds a series from the coefficients of z^0, z^1, ...; the order is
    /// one less than the number of coefficients given.
    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty(), "a series retains at least z^0");
        RatSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        RatSeries {
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }

    /// c · z^exp, truncated after z^order.
    pub fn monomial(c: BigRational, exp: usize, order: usize) -> Self {
        let mut s = RatSeries::zero(order);
        if exp <= order {
            s.coeffs[exp] = c;
        }
        s
    }

    pub fn constant(c: BigRational, order: usize) -> Self {
        RatSeries::monomial(c, 0, order)
    }

    /// Largest power whose coefficient is retained.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> &BigRational {
        assert!(i <= self.order(), "coefficient {i} beyond the truncation");
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Whether every retained coefficient vanishes.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Index of the first nonzero retained coefficient, if any.
    pub fn first_nonzero(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Drops coefficients beyond z^order.
    pub fn truncated(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot extend a truncation");
        RatSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    /// Multiplies by z^m; every retained coefficient stays determined, so
    /// the order grows by m.
    pub fn shift(&self, m: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); m];
        coeffs.extend_from_slice(&self.coeffs);
        RatSeries { coeffs }
    }

    /// The derivative d/dz; the order drops by one.
    pub fn derive(&self) -> Self {
        assert!(self.order() >= 1, "cannot differentiate an order-0 truncation");
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * rat(i))
            .collect();
        RatSeries { coeffs }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        RatSeries {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }
}

impl Add for &RatSeries {
    type Output = RatSeries;

    fn add(self, rhs: &RatSeries) -> RatSeries {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order)
            .map(|i| &self.coeffs[i] + &rhs.coeffs[i])
            .collect();
        RatSeries { coeffs }
    }
}

impl Sub for &RatSeries {
    type Output = RatSeries;

    fn sub(self, rhs: &RatSeries) -> RatSeries {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order)
            .map(|i| &self.coeffs[i] - &rhs.coeffs[i])
            .collect();
        RatSeries { coeffs }
    }
}

impl Mul for &RatSeries {
    type Output = RatSeries;

    fn mul(self, rhs: &RatSeries) -> RatSeries {
        let order = self.order().min(rhs.order());
        let mut coeffs = vec![BigRational::zero(); order + 1];
        for i in 0..=order {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(order - i) {
                coeffs[i + j] += &self.coeffs[i] * &rhs.coeffs[j];
            }
        }
        RatSeries { coeffs }
    }
}

/// The ordinary generating function sum b_n z^n of the free counts,
/// truncated after z^order.
pub fn ogf_series(q: usize, order: usize) -> Result<RatSeries> {
    let coeffs = free_sequence(q, order)?
        .into_iter()
        .map(|b| BigRational::from_integer(b.into()))
        .collect();
    Ok(RatSeries::from_coeffs(coeffs))
}

/// The exponential generating function sum b_n z^n / n! of the free
/// counts, truncated after z^order. The n = 0 term is included.
pub fn egf_series(q: usize, order: usize) -> Result<RatSeries> {
    let coeffs = free_sequence(q, order)?
        .into_iter()
        .enumerate()
        .map(|(n, b)| BigRational::new(b.into(), factorial(n).into()))
        .collect();
    Ok(RatSeries::from_coeffs(coeffs))
}

/// The entire series w(z) = sum_{i >= 1} (-1)^i z^(qi) / (qi)!, truncated
/// after z^order. Its q-th derivative is the forcing term of the EGF
/// differential equation.
pub fn w_series(q: usize, order: usize) -> Result<RatSeries> {
    require_cycle_length(1, q)?;
    let mut s = RatSeries::zero(order);
    for i in 1..=(order / q) {
        let mut c = BigRational::new(BigInt::one(), factorial(q * i).into());
        if i % 2 == 1 {
            c = -c;
        }
        s.coeffs[q * i] = c;
    }
    Ok(s)
}

/// The left-hand side of the first-order equation satisfied by the OGF g:
///
/// ```text
/// z^2 (1 + z^q) g' - (1 + z^q)(1 - z - (q-1) z^q) g + 1 - (q-1) z^q
/// ```
///
/// For the true OGF every retained coefficient of the residual is zero; for
/// anything else the deviation shows up as a nonzero coefficient.
pub fn ogf_ode_residual(g: &RatSeries, q: usize) -> RatSeries {
    assert!(q >= 1, "cycle length must be positive");
    let wide = g.order() + 2 * q + 2;
    let one_plus = &RatSeries::constant(BigRational::one(), wide)
        + &RatSeries::monomial(BigRational::one(), q, wide);
    let base = &(&RatSeries::constant(BigRational::one(), wide)
        - &RatSeries::monomial(BigRational::one(), 1, wide))
        - &RatSeries::monomial(rat(q - 1), q, wide);
    let forcing = &RatSeries::constant(BigRational::one(), wide)
        - &RatSeries::monomial(rat(q - 1), q, wide);
    let derivative_part = &one_plus * &g.derive().shift(2);
    let function_part = &(&one_plus * &base) * g;
    &(&derivative_part - &function_part) + &forcing
}

/// The difference between the two sides of the order-q equation satisfied
/// by the EGF G:
///
/// ```text
/// (1 - z) G^(q) - q G^(q-1) - (q-1) G = q w^(q)
/// ```
///
/// with w from [`w_series`]. Zero on every retained coefficient for the
/// true EGF.
pub fn egf_ode_residual(g: &RatSeries, q: usize) -> RatSeries {
    assert!(q >= 1, "cycle length must be positive");
    assert!(g.order() >= q, "truncation too short for q derivatives");
    let wide = g.order() + 1;
    let one_minus_z = &RatSeries::constant(BigRational::one(), wide)
        - &RatSeries::monomial(BigRational::one(), 1, wide);
    let mut dq1 = g.clone(); // G^(q-1)
    for _ in 0..(q - 1) {
        dq1 = dq1.derive();
    }
    let dq = dq1.derive(); // G^(q)
    let w = w_series(q, g.order()).expect("q validated above");
    let mut wq = w;
    for _ in 0..q {
        wq = wq.derive();
    }
    let lhs = &(&(&one_minus_z * &dq) - &dq1.scale(&rat(q))) - &g.scale(&rat(q - 1));
    &lhs - &wq.scale(&rat(q))
}

/// Builds the OGF from the free counts and returns the equation residual;
/// the caller asserts it vanishes.
pub fn verify_ogf_ode(q: usize, order: usize) -> Result<RatSeries> {
    require_cycle_length(1, q)?;
    assert!(order >= 2 * q + 2, "truncation too short to see every term");
    Ok(ogf_ode_residual(&ogf_series(q, order)?, q))
}

/// Builds the EGF from the free counts, checks the q seed coefficients
/// (b_i = i! for i < q, so the EGF starts with q ones), and returns the
/// equation residual.
pub fn verify_egf_ode(q: usize, order: usize) -> Result<RatSeries> {
    require_cycle_length(1, q)?;
    assert!(order >= 3 * q + 2, "truncation too short to see every term");
    let g = egf_series(q, order)?;
    for i in 0..q {
        if g.coeff(i) != &BigRational::one() {
            return Err(Error::Inconsistency(format!(
                "EGF seed coefficient {i} is {}, expected 1",
                g.coeff(i)
            )));
        }
    }
    Ok(egf_ode_residual(&g, q))
}
