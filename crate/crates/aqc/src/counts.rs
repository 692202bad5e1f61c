//! Exact counts of permutations by number of adjacent q-cycles.
//!
//! `a(n, k)` is the number of permutations of {1..n} with exactly k adjacent
//! q-cycles, and `b_n = a(n, 0)` the number of AqC-free permutations. Every
//! count here is computed by explicit alternating sums or by recurrences on
//! them; the routes are independent of the enumeration in [`crate::oracle`]
//! and are cross-checked against it in the test suites.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{require_cycle_length, Error, Nat, Result};

/// Converts a signed intermediate to a count, which must be nonnegative.
pub(crate) fn signed_to_nat(x: BigInt, context: &str) -> Nat {
    assert!(
        !x.is_negative(),
        "negative count {x} out of {context}; this is a bug"
    );
    x.to_biguint().unwrap()
}

/// Binomial coefficient C(n, k), with C(n, k) = 0 for k < 0 or k > n.
pub fn binomial(n: usize, k: isize) -> Nat {
    if k < 0 || k as usize > n {
        return Nat::zero();
    }
    let k = (k as usize).min(n - k as usize);
    let mut acc = Nat::one();
    for i in 0..k {
        acc *= Nat::from(n - i);
        // exact at every step: the partial product is C(n, i+1) * i!… / i!…
        acc /= Nat::from(i + 1);
    }
    acc
}

/// n! as an exact big integer.
pub fn factorial(n: usize) -> Nat {
    let mut acc = Nat::one();
    for i in 2..=n {
        acc *= Nat::from(i);
    }
    acc
}

/// m! / j! for m >= j, as the exact product (j+1)(j+2)···m.
fn factorial_quotient(m: usize, j: usize) -> Nat {
    debug_assert!(m >= j);
    let mut acc = Nat::one();
    for i in (j + 1)..=m {
        acc *= Nat::from(i);
    }
    acc
}

fn sign_for(exponent: usize) -> BigInt {
    if exponent % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// a(n, k): the number of permutations in S_n with exactly k adjacent
/// q-cycles, by the closed-form alternating sum
///
/// ```text
/// a(n,k) = sum_{j=k}^{floor(n/q)} (-1)^(k+j) C(j,k) (n-(q-1)j)! / j!
/// ```
///
/// Returns 0 whenever k > floor(n/q); a(0, 0) = 1 (the empty permutation).
/// Rejects q = 0.
pub fn count_aqc(n: usize, k: usize, q: usize) -> Result<Nat> {
    require_cycle_length(1, q)?;
    let r = n / q;
    if k > r {
        return Ok(Nat::zero());
    }
    let mut acc = BigInt::zero();
    for j in k..=r {
        // j <= n/q guarantees n - (q-1)j >= j, so the quotient is integral.
        let quotient = factorial_quotient(n - (q - 1) * j, j);
        let term = BigInt::from(binomial(j, k as isize) * quotient);
        acc += sign_for(k + j) * term;
    }
    Ok(signed_to_nat(acc, &format!("a({n},{k}) with q={q}")))
}

/// b_n: the number of AqC-free permutations in S_n, via the k = 0 case of
/// the closed form. For q = 1 these are the derangement numbers.
pub fn count_free(n: usize, q: usize) -> Result<Nat> {
    require_cycle_length(1, q)?;
    let mut acc = BigInt::zero();
    for j in 0..=(n / q) {
        acc += sign_for(j) * BigInt::from(factorial_quotient(n - (q - 1) * j, j));
    }
    Ok(signed_to_nat(acc, &format!("b_{n} with q={q}")))
}

/// The rencontres count C(n, k) · d_{n-k} of permutations of S_n with
/// exactly k fixed points. Agrees with `count_aqc(n, k, 1)`.
pub fn count_aqc_rencontres(n: usize, k: usize) -> Nat {
    if k > n {
        return Nat::zero();
    }
    let derangements = count_free(n - k, 1).expect("q = 1 is valid");
    binomial(n, k as isize) * derangements
}

/// a(n+q-1, k) from a(n, k-1) by the cross-column relation
///
/// ```text
/// a(n+q-1, k) = (a(n, k-1) + (-1)^(k + n/q) C(n/q, k-1)) / k   if q | n
/// a(n+q-1, k) = a(n, k-1) / k                                  otherwise
/// ```
///
/// The division by k is always exact; a non-exact division means the
/// relation itself failed and is reported as an inconsistency.
pub fn column_step(n: usize, k: usize, q: usize) -> Result<Nat> {
    require_cycle_length(1, q)?;
    assert!(k >= 1, "column_step requires k >= 1");
    let mut acc = BigInt::from(count_aqc(n, k - 1, q)?);
    if n % q == 0 {
        acc += sign_for(k + n / q) * BigInt::from(binomial(n / q, k as isize - 1));
    }
    let (quot, rem) = acc.div_rem(&BigInt::from(k));
    if !rem.is_zero() {
        return Err(Error::Inconsistency(format!(
            "column step at n={n}, k={k}, q={q}: {acc} is not divisible by {k}"
        )));
    }
    Ok(signed_to_nat(quot, "column step"))
}

/// a(n-1, 1) expressed through the free counts:
/// b_{n-q} + (-1)^(n/q) when q | n, and b_{n-q} otherwise. Requires n >= q.
pub fn count_one_aqc_relation(n: usize, q: usize) -> Result<Nat> {
    require_cycle_length(1, q)?;
    assert!(n >= q, "count_one_aqc_relation requires n >= q");
    let mut acc = BigInt::from(count_free(n - q, q)?);
    if n % q == 0 {
        acc += sign_for(n / q);
    }
    Ok(signed_to_nat(acc, "one-AqC relation"))
}

/// The free counts b_0..b_{n_max} by the closed form.
pub fn free_sequence(q: usize, n_max: usize) -> Result<Vec<Nat>> {
    (0..=n_max).map(|n| count_free(n, q)).collect()
}

/// The free counts b_0..b_{n_max} by the first-order recurrence
///
/// ```text
/// b_n = n b_{n-1} + (q-1) b_{n-q} + q (-1)^(n/q)   if q | n
/// b_n = n b_{n-1} + (q-1) b_{n-q}                  otherwise
/// ```
///
/// applied for n >= q, with rows n < q seeded directly (b_n = n! there,
/// since no q-cycle fits in fewer than q elements).
pub fn free_sequence_recurrence(q: usize, n_max: usize) -> Result<Vec<Nat>> {
    require_cycle_length(1, q)?;
    let mut seq: Vec<Nat> = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        if n < q {
            seq.push(factorial(n));
            continue;
        }
        let mut acc = BigInt::from(n) * BigInt::from(seq[n - 1].clone())
            + BigInt::from(q - 1) * BigInt::from(seq[n - q].clone());
        if n % q == 0 {
            acc += BigInt::from(q) * sign_for(n / q);
        }
        seq.push(signed_to_nat(acc, &format!("b_{n} recurrence with q={q}")));
    }
    Ok(seq)
}

/// b_n by the recurrence route; equal to [`count_free`] on every input.
pub fn free_recurrence(n: usize, q: usize) -> Result<Nat> {
    Ok(free_sequence_recurrence(q, n)?.pop().unwrap())
}

/// The triangle of counts a(n, k) for a fixed q, rows n = 0..=n_max.
///
/// Row n holds `[a(n,0), ..., a(n, floor(n/q))]`; entries beyond floor(n/q)
/// are zero and not stored. Every row sums to n!.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    pub q: usize,
    pub rows: Vec<Vec<Nat>>,
}

impl CountTable {
    /// Builds the triangle from the closed form.
    pub fn build(q: usize, n_max: usize) -> Result<Self> {
        require_cycle_length(1, q)?;
        let rows = (0..=n_max)
            .map(|n| (0..=n / q).map(|k| count_aqc(n, k, q)).collect())
            .collect::<Result<Vec<Vec<Nat>>>>()?;
        Ok(CountTable { q, rows })
    }

    /// Builds the triangle by dynamic programming on the row recurrence
    ///
    /// ```text
    /// a(n+1,k) = a(n-q+1,k-1) + (n-qk+1) a(n,k) - a(n-q+1,k) + q(k+1) a(n,k+1)
    /// ```
    ///
    /// for k >= 1, with the k = 0 column supplied by the free-count
    /// recurrence and out-of-range entries treated as zero. The relation is
    /// only applied when n+1 >= q; shorter rows are the single seed value n!.
    pub fn build_recurrence(q: usize, n_max: usize) -> Result<Self> {
        require_cycle_length(1, q)?;
        let free = free_sequence_recurrence(q, n_max)?;
        let mut rows: Vec<Vec<Nat>> = vec![vec![Nat::one()]];
        for n in 0..n_max {
            // building row n+1 from rows n and n-q+1
            let width = (n + 1) / q + 1;
            let mut row = Vec::with_capacity(width);
            row.push(free[n + 1].clone());
            for k in 1..width {
                let prev = n + 1 - q; // n - q + 1, nonnegative since width > 1
                let at = |m: usize, j: usize| -> BigInt {
                    rows[m].get(j).cloned().map_or_else(BigInt::zero, BigInt::from)
                };
                let acc = at(prev, k - 1) + BigInt::from(n + 1 - q * k) * at(n, k)
                    - at(prev, k)
                    + BigInt::from(q * (k + 1)) * at(n, k + 1);
                row.push(signed_to_nat(acc, &format!("a({},{k}) recurrence", n + 1)));
            }
            rows.push(row);
        }
        Ok(CountTable { q, rows })
    }

    pub fn row(&self, n: usize) -> &[Nat] {
        &self.rows[n]
    }

    /// a(n, k) with the zero convention for k beyond floor(n/q).
    pub fn get(&self, n: usize, k: usize) -> Nat {
        self.rows[n].get(k).cloned().unwrap_or_else(Nat::zero)
    }
}

/// a(n, k) via the row recurrence; equal to [`count_aqc`] on every input.
pub fn count_aqc_recurrence(n: usize, k: usize, q: usize) -> Result<Nat> {
    Ok(CountTable::build_recurrence(q, n)?.get(n, k))
}

/// A set Q = {q_1 < q_2 < ... < q_m} of tracked cycle lengths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiSpec {
    lengths: Vec<usize>,
}

impl MultiSpec {
    /// Validates that the lengths are nonempty, positive, and strictly
    /// increasing.
    pub fn new(lengths: impl Into<Vec<usize>>) -> Result<Self> {
        let lengths = lengths.into();
        if lengths.is_empty() {
            return Err(Error::InvalidLengthSet("no cycle lengths given".into()));
        }
        if lengths[0] == 0 {
            return Err(Error::CycleLengthTooSmall { min: 1, got: 0 });
        }
        if lengths.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidLengthSet(format!(
                "lengths {lengths:?} are not strictly increasing"
            )));
        }
        Ok(MultiSpec { lengths })
    }

    pub fn lengths(&self) -> &[usize] {
        &self.lengths
    }

    /// Number of tracked lengths (m).
    pub fn len(&self) -> usize {
        self.lengths.len()
    }

    pub fn is_empty(&self) -> bool {
        false // validated nonempty on construction
    }

    /// All multiplicity vectors (k_1..k_m) that can be nonzero for S_n,
    /// i.e. those with sum q_j k_j <= n, in lexicographic order.
    pub fn kvectors(&self, n: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut ks = vec![0usize; self.len()];
        self.enumerate_bounded(n, 0, &mut ks, &mut |ks| out.push(ks.to_vec()));
        out
    }

    fn enumerate_bounded(
        &self,
        budget: usize,
        j: usize,
        ks: &mut Vec<usize>,
        visit: &mut impl FnMut(&[usize]),
    ) {
        if j == self.len() {
            visit(ks);
            return;
        }
        let q = self.lengths[j];
        for k in 0..=(budget / q) {
            ks[j] = k;
            self.enumerate_bounded(budget - q * k, j + 1, ks, visit);
        }
        ks[j] = 0;
    }
}

/// a(n; k_1..k_m): permutations of S_n with exactly k_j adjacent q_j-cycles
/// for every tracked length, by the multi-length alternating sum
///
/// ```text
/// sum over {t_j >= 0 : sum q_j t_j <= n} of
///   (-1)^(sum (k_j + t_j)) prod C(t_j, k_j) (n - sum (q_j - 1) t_j)! / prod t_j!
/// ```
///
/// The t-index simplex is walked by nested iteration with per-coordinate
/// bounds; terms with t_j < k_j vanish through C(t_j, k_j) and are skipped.
pub fn count_multi(n: usize, spec: &MultiSpec, ks: &[usize]) -> Nat {
    assert_eq!(
        ks.len(),
        spec.len(),
        "multiplicity vector must align with the length set"
    );
    let mut acc = BigInt::zero();
    let mut t = vec![0usize; spec.len()];
    count_multi_rec(n, spec, ks, 0, n, &mut t, &mut acc);
    signed_to_nat(acc, &format!("a({n}; {ks:?}) over {:?}", spec.lengths()))
}

fn count_multi_rec(
    n: usize,
    spec: &MultiSpec,
    ks: &[usize],
    j: usize,
    budget: usize,
    t: &mut Vec<usize>,
    acc: &mut BigInt,
) {
    if j == spec.len() {
        let weight_arg = n - spec
            .lengths()
            .iter()
            .zip(t.iter())
            .map(|(&q, &tj)| (q - 1) * tj)
            .sum::<usize>();
        let mut term = BigInt::from(factorial(weight_arg));
        let mut denom = Nat::one();
        let mut parity = 0usize;
        for (j, &tj) in t.iter().enumerate() {
            term *= BigInt::from(binomial(tj, ks[j] as isize));
            denom *= factorial(tj);
            parity += ks[j] + tj;
        }
        let (quot, rem) = term.div_rem(&BigInt::from(denom));
        debug_assert!(rem.is_zero(), "multinomial weight must divide exactly");
        *acc += sign_for(parity) * quot;
        return;
    }
    let q = spec.lengths()[j];
    // t_j < k_j contributes nothing: C(t_j, k_j) = 0
    for tj in ks[j]..=(budget / q) {
        t[j] = tj;
        count_multi_rec(n, spec, ks, j + 1, budget - q * tj, t, acc);
    }
    t[j] = 0;
}

/// Permutations of S_n with no adjacent cycle of any length 1..=m; these
/// are derangements with additional adjacency restrictions.
pub fn restricted_derangements(n: usize, m: usize) -> Result<Nat> {
    let spec = MultiSpec::new((1..=m).collect::<Vec<_>>())?;
    Ok(count_multi(n, &spec, &vec![0; m]))
}

/// The two-sided bound (n! - (n+1-q)!, n!) that encloses b_n for q >= 2.
/// Requires n >= q; rejects q < 2 (for q = 1 the count of permutations
/// with at least one fixed point is not bounded by (n+1-q)! this way).
pub fn free_bounds(n: usize, q: usize) -> Result<(Nat, Nat)> {
    require_cycle_length(2, q)?;
    assert!(n >= q, "free_bounds requires n >= q");
    let upper = factorial(n);
    let lower = upper.clone() - factorial(n + 1 - q);
    Ok((lower, upper))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat(v: u64) -> Nat {
        Nat::from(v)
    }

    #[test]
    fn binomial_basics() {
        assert_eq!(binomial(5, 2), nat(10));
        assert_eq!(binomial(7, 0), nat(1));
        assert_eq!(binomial(4, 7), nat(0));
        assert_eq!(binomial(4, -1), nat(0));
        assert_eq!(binomial(0, 0), nat(1));
    }

    #[test]
    fn factorial_basics() {
        assert_eq!(factorial(0), nat(1));
        assert_eq!(factorial(5), nat(120));
        assert_eq!(factorial(13), nat(6227020800));
    }

    #[test]
    fn count_aqc_reference_values() {
        assert_eq!(count_aqc(3, 1, 2).unwrap(), nat(2));
        assert_eq!(count_aqc(13, 2, 5).unwrap(), nat(60));
        assert_eq!(count_aqc(10, 0, 5).unwrap(), nat(3628081));
        assert_eq!(count_aqc(0, 0, 4).unwrap(), nat(1));
        // frozen from the S_7 enumeration (see oracle::tests)
        assert_eq!(count_aqc(7, 1, 3).unwrap(), nat(114));
        // k beyond floor(n/q)
        assert_eq!(count_aqc(9, 2, 5).unwrap(), nat(0));
    }

    #[test]
    fn count_aqc_rejects_q_zero() {
        assert_eq!(
            count_aqc(4, 0, 0),
            Err(Error::CycleLengthTooSmall { min: 1, got: 0 })
        );
        assert!(count_free(4, 0).is_err());
    }

    #[test]
    fn count_free_reference_values() {
        assert_eq!(count_free(5, 5).unwrap(), nat(119));
        // d_4 = 9, frozen from the S_4 enumeration
        assert_eq!(count_free(4, 1).unwrap(), nat(9));
        assert_eq!(count_free(0, 3).unwrap(), nat(1));
    }

    #[test]
    fn rencontres_matches_closed_form() {
        for n in 0..=8 {
            assert_eq!(count_aqc_rencontres(n, n), nat(1), "n = {n}");
            if n >= 1 {
                assert_eq!(count_aqc_rencontres(n, n - 1), nat(0), "n = {n}");
            }
            for k in 0..=n {
                assert_eq!(
                    count_aqc_rencontres(n, k),
                    count_aqc(n, k, 1).unwrap(),
                    "n = {n}, k = {k}"
                );
            }
        }
        assert_eq!(count_aqc_rencontres(6, 2), nat(135));
    }

    #[test]
    fn column_step_reference_values() {
        assert_eq!(column_step(5, 1, 5).unwrap(), nat(120));
        assert_eq!(column_step(6, 1, 5).unwrap(), nat(718));
        assert_eq!(column_step(8, 2, 2).unwrap(), count_aqc(9, 2, 2).unwrap());
        assert_eq!(count_aqc(9, 2, 2).unwrap(), nat(2190));
    }

    #[test]
    fn one_aqc_relation_reference_values() {
        assert_eq!(count_one_aqc_relation(10, 5).unwrap(), nat(120));
        assert_eq!(count_one_aqc_relation(12, 5).unwrap(), nat(5034));
        assert_eq!(
            count_one_aqc_relation(9, 3).unwrap(),
            count_aqc(8, 1, 3).unwrap()
        );
        assert_eq!(count_aqc(8, 1, 3).unwrap(), nat(696));
    }

    #[test]
    fn free_recurrence_reference_values() {
        assert_eq!(free_recurrence(5, 5).unwrap(), nat(119));
        assert_eq!(free_recurrence(8, 3).unwrap(), count_free(8, 3).unwrap());
        // q = 1 degenerates to the derangement recurrence d_n = n d_{n-1} + (-1)^n
        let d = free_sequence_recurrence(1, 10).unwrap();
        for n in 1..=10usize {
            let lhs = BigInt::from(d[n].clone()) - BigInt::from(n) * BigInt::from(d[n - 1].clone());
            assert_eq!(lhs, sign_for(n), "n = {n}");
        }
    }

    #[test]
    fn row_recurrence_reference_values() {
        assert_eq!(count_aqc_recurrence(6, 2, 3).unwrap(), nat(1));
        assert_eq!(count_aqc_recurrence(6, 1, 3).unwrap(), nat(22));
        assert_eq!(
            count_aqc_recurrence(9, 1, 2).unwrap(),
            count_aqc(9, 1, 2).unwrap()
        );
    }

    #[test]
    fn table_rows_sum_to_factorial() {
        for q in 1..=4 {
            let table = CountTable::build(q, 9).unwrap();
            for n in 0..=9usize {
                let sum: Nat = table.row(n).iter().sum();
                assert_eq!(sum, factorial(n), "q = {q}, n = {n}");
            }
        }
    }

    #[test]
    fn table_routes_agree() {
        for q in 1..=5 {
            let formula = CountTable::build(q, 12).unwrap();
            let recurrence = CountTable::build_recurrence(q, 12).unwrap();
            assert_eq!(formula, recurrence, "q = {q}");
        }
    }

    #[test]
    fn triangular_system_holds() {
        // sum_{i=t}^{r} C(i, t) a(n, i) = (n - (q-1)t)! / t! for every t
        for q in 1..=4usize {
            for n in 0..=10usize {
                let r = n / q;
                for t in 0..=r {
                    let mut lhs = Nat::zero();
                    for i in t..=r {
                        lhs += binomial(i, t as isize) * count_aqc(n, i, q).unwrap();
                    }
                    let rhs = factorial_quotient(n - (q - 1) * t, t);
                    assert_eq!(lhs, rhs, "q = {q}, n = {n}, t = {t}");
                }
            }
        }
    }

    #[test]
    fn multi_spec_validation() {
        assert!(MultiSpec::new(vec![1, 2, 5]).is_ok());
        assert!(MultiSpec::new(vec![]).is_err());
        assert!(MultiSpec::new(vec![0, 1]).is_err());
        assert!(MultiSpec::new(vec![2, 2]).is_err());
        assert!(MultiSpec::new(vec![3, 1]).is_err());
    }

    #[test]
    fn multi_reference_values() {
        let spec = MultiSpec::new(vec![1, 2, 3, 4, 5]).unwrap();
        assert_eq!(count_multi(5, &spec, &[0, 2, 0, 0, 0]), nat(0));
        assert_eq!(count_multi(5, &spec, &[1, 2, 0, 0, 0]), nat(3));
        assert_eq!(count_multi(5, &spec, &[0, 0, 1, 0, 0]), nat(1));
        assert_eq!(count_multi(5, &spec, &[0, 0, 0, 0, 1]), nat(1));
        // impossible multiplicity: sum q_j k_j > n
        assert_eq!(count_multi(5, &spec, &[0, 0, 0, 0, 2]), nat(0));
    }

    #[test]
    fn multi_single_length_degenerates() {
        for q in 1..=4usize {
            let spec = MultiSpec::new(vec![q]).unwrap();
            for n in 0..=9usize {
                for k in 0..=(n / q + 1) {
                    assert_eq!(
                        count_multi(n, &spec, &[k]),
                        count_aqc(n, k, q).unwrap(),
                        "n = {n}, k = {k}, q = {q}"
                    );
                }
            }
        }
    }

    #[test]
    fn multi_totals_are_factorials() {
        let spec = MultiSpec::new(vec![1, 2]).unwrap();
        for n in 0..=7usize {
            let total: Nat = spec
                .kvectors(n)
                .iter()
                .map(|ks| count_multi(n, &spec, ks))
                .sum();
            assert_eq!(total, factorial(n), "n = {n}");
        }
    }

    #[test]
    fn restricted_derangement_values() {
        for n in 0..=9usize {
            assert_eq!(
                restricted_derangements(n, 1).unwrap(),
                count_free(n, 1).unwrap(),
                "n = {n}"
            );
        }
        // frozen from the S_5 enumeration: no fixed point, no adjacent transposition
        assert_eq!(restricted_derangements(5, 2).unwrap(), nat(36));
        assert_eq!(restricted_derangements(0, 3).unwrap(), nat(1));
        assert!(restricted_derangements(4, 0).is_err());
    }

    #[test]
    fn free_bounds_reference_values() {
        assert_eq!(free_bounds(5, 5).unwrap(), (nat(119), nat(120)));
        assert_eq!(free_bounds(6, 2).unwrap(), (nat(600), nat(720)));
        let b = count_free(6, 2).unwrap();
        assert!(nat(600) <= b && b <= nat(720));
        for q in 2..=6usize {
            let expect = (factorial(q) - Nat::one(), factorial(q));
            assert_eq!(free_bounds(q, q).unwrap(), expect, "q = {q}");
        }
        assert_eq!(
            free_bounds(5, 1),
            Err(Error::CycleLengthTooSmall { min: 2, got: 1 })
        );
    }
}
