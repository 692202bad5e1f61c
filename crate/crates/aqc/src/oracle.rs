//! Brute-force ground truth: enumerate S_n and inspect cycles directly.
//!
//! Everything in this module works by listing permutations one by one and
//! walking their cycles, with no counting formulas involved. The
//! distributions produced here are what the closed forms and recurrences in
//! [`crate::counts`] are tested against.
//!
//! Exhaustive enumeration is factorial work, so the entry points take a cap
//! on n ([`DEFAULT_ENUMERATION_CAP`] unless overridden) and refuse larger
//! inputs instead of silently grinding.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;
use rayon::prelude::*;

use crate::counts::MultiSpec;
use crate::{require_cap, require_cycle_length, Error, Nat, Result};

/// Largest n the convenience entry points will enumerate; 10! is about
/// 3.6 million permutations.
pub const DEFAULT_ENUMERATION_CAP: usize = 10;

/// A permutation of {1, 2, ..., n} in one-line form: `image[i-1]` is the
/// image of i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    /// Validates that `image` is a bijection on {1..n}.
    pub fn from_image(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &v in &image {
            if v == 0 || v > n {
                return Err(Error::InvalidPermutation(format!(
                    "image value {v} is outside 1..={n}"
                )));
            }
            if seen[v - 1] {
                return Err(Error::InvalidPermutation(format!(
                    "image value {v} occurs twice"
                )));
            }
            seen[v - 1] = true;
        }
        Ok(Permutation { image })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            image: (1..=n).collect(),
        }
    }

    /// The size n of the underlying set.
    pub fn degree(&self) -> usize {
        self.image.len()
    }

    /// The image of i (1-based).
    pub fn apply(&self, i: usize) -> usize {
        assert!(i >= 1 && i <= self.image.len(), "argument out of range");
        self.image[i - 1]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    /// Decomposes into disjoint cycles, each written with its least element
    /// first and the cycles ordered by least element.
    pub fn cycles(&self) -> CycleForm {
        let n = self.image.len();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 1..=n {
            if seen[start - 1] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start - 1] = true;
            let mut j = self.image[start - 1];
            while j != start {
                seen[j - 1] = true;
                cycle.push(j);
                j = self.image[j - 1];
            }
            cycles.push(cycle);
        }
        CycleForm { cycles }
    }

    /// Number of adjacent q-cycles: cycles (a, a+1, ..., a+q-1) of q
    /// consecutive integers in increasing order.
    pub fn count_adjacent_cycles(&self, q: usize) -> usize {
        let mut count = 0;
        walk_adjacent_cycles(&self.image, |len| {
            if len == q {
                count += 1;
            }
        });
        count
    }

    /// Counts adjacent cycles of each tracked length at once, in the same
    /// order as `spec.lengths()`.
    pub fn adjacent_cycle_counts(&self, spec: &MultiSpec) -> Vec<usize> {
        let mut counts = vec![0usize; spec.len()];
        walk_adjacent_cycles(&self.image, |len| {
            if let Ok(slot) = spec.lengths().binary_search(&len) {
                counts[slot] += 1;
            }
        });
        counts
    }
}

/// Disjoint-cycle form, least element first in each cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleForm {
    cycles: Vec<Vec<usize>>,
}

impl CycleForm {
    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }
}

impl fmt::Display for CycleForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for cycle in &self.cycles {
            write!(f, "(")?;
            for (i, v) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Whether a cycle, given as a nonempty sequence of distinct values, is an
/// adjacent cycle. Rotations of the same cycle are recognized too.
pub fn is_adjacent_cycle(cycle: &[usize]) -> bool {
    if cycle.is_empty() {
        return false;
    }
    let len = cycle.len();
    let pos = (0..len).min_by_key(|&i| cycle[i]).unwrap();
    let min = cycle[pos];
    (0..len).all(|i| cycle[(pos + i) % len] == min + i)
}

/// Visits every adjacent cycle of the permutation and reports its length.
///
/// Each cycle is walked from its least element; the walk stays allocation
/// free by abandoning any start that is not the least element of its cycle.
/// A cycle is adjacent exactly when every step moves to the successor
/// integer before closing back on the start.
fn walk_adjacent_cycles(image: &[usize], mut on_adjacent: impl FnMut(usize)) {
    let n = image.len();
    'starts: for start in 1..=n {
        let mut prev = start;
        let mut len = 1usize;
        let mut consecutive = true;
        let mut j = image[start - 1];
        while j != start {
            if j < start {
                continue 'starts;
            }
            consecutive &= j == prev + 1;
            prev = j;
            len += 1;
            j = image[j - 1];
        }
        if consecutive {
            on_adjacent(len);
        }
    }
}

pub(crate) fn next_permutation(a: &mut [usize]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// Runs `tally` over all of S_n, one worker per first image value, and
/// merges the per-worker results. Tallies use u64, which is ample for any
/// n this module will ever enumerate.
fn enumerate<T, F>(n: usize, empty: impl Fn() -> T + Sync + Send, tally: F, merge: impl Fn(T, T) -> T + Sync + Send) -> T
where
    T: Send,
    F: Fn(&mut T, &[usize]) + Sync + Send,
{
    (1..=n)
        .into_par_iter()
        .map(|first| {
            let mut image: Vec<usize> = std::iter::once(first)
                .chain((1..=n).filter(|&v| v != first))
                .collect();
            let mut acc = empty();
            loop {
                tally(&mut acc, &image);
                if !next_permutation(&mut image[1..]) {
                    break;
                }
            }
            acc
        })
        .reduce(&empty, &merge)
}

/// The distribution `[#{exactly 0 AqCs}, #{exactly 1}, ..., #{exactly
/// floor(n/q)}]` over S_n, by exhaustive enumeration. Fails on
/// n > [`DEFAULT_ENUMERATION_CAP`].
pub fn distribution(n: usize, q: usize) -> Result<Vec<Nat>> {
    distribution_with_cap(n, q, DEFAULT_ENUMERATION_CAP)
}

/// Same as [`distribution`] with an explicit cap on n.
pub fn distribution_with_cap(n: usize, q: usize, cap: usize) -> Result<Vec<Nat>> {
    require_cycle_length(1, q)?;
    require_cap("exhaustive enumeration", n, cap)?;
    let width = n / q + 1;
    if n == 0 {
        return Ok(vec![Nat::one()]);
    }
    let buckets = enumerate(
        n,
        || vec![0u64; width],
        |acc, image| {
            let mut k = 0usize;
            walk_adjacent_cycles(image, |len| {
                if len == q {
                    k += 1;
                }
            });
            acc[k] += 1;
        },
        |mut a, b| {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
            a
        },
    );
    Ok(buckets.into_iter().map(Nat::from).collect())
}

/// The joint distribution over S_n of the numbers of adjacent cycles of
/// each tracked length: multiplicity vector -> how many permutations attain
/// it. Only attained vectors appear; everything else counts zero.
pub fn multi_distribution(n: usize, spec: &MultiSpec) -> Result<BTreeMap<Vec<usize>, Nat>> {
    multi_distribution_with_cap(n, spec, DEFAULT_ENUMERATION_CAP)
}

/// Same as [`multi_distribution`] with an explicit cap on n.
pub fn multi_distribution_with_cap(
    n: usize,
    spec: &MultiSpec,
    cap: usize,
) -> Result<BTreeMap<Vec<usize>, Nat>> {
    require_cap("exhaustive enumeration", n, cap)?;
    if n == 0 {
        return Ok(BTreeMap::from([(vec![0; spec.len()], Nat::one())]));
    }
    let lengths = spec.lengths();
    let merged = enumerate(
        n,
        BTreeMap::<Vec<usize>, u64>::new,
        |acc, image| {
            let mut counts = vec![0usize; lengths.len()];
            walk_adjacent_cycles(image, |len| {
                if let Ok(slot) = lengths.binary_search(&len) {
                    counts[slot] += 1;
                }
            });
            *acc.entry(counts).or_insert(0) += 1;
        },
        |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        },
    );
    Ok(merged.into_iter().map(|(k, v)| (k, Nat::from(v))).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat(v: u64) -> Nat {
        Nat::from(v)
    }

    fn nats(vs: &[u64]) -> Vec<Nat> {
        vs.iter().copied().map(Nat::from).collect()
    }

    #[test]
    fn rejects_invalid_images() {
        assert!(Permutation::from_image(vec![2, 1, 3]).is_ok());
        assert!(Permutation::from_image(vec![0, 1]).is_err());
        assert!(Permutation::from_image(vec![1, 3]).is_err());
        assert!(Permutation::from_image(vec![2, 2, 1]).is_err());
    }

    #[test]
    fn cycle_decomposition_reference() {
        let p = Permutation::from_image(vec![2, 3, 1, 5, 4, 6]).unwrap();
        let form = p.cycles();
        let expected: Vec<Vec<usize>> = vec![vec![1, 2, 3], vec![4, 5], vec![6]];
        assert_eq!(form.cycles(), expected.as_slice());
        assert_eq!(form.to_string(), "(1 2 3)(4 5)(6)");
        assert_eq!(Permutation::identity(3).cycles().to_string(), "(1)(2)(3)");
    }

    #[test]
    fn adjacent_cycle_recognition() {
        assert!(is_adjacent_cycle(&[4]));
        assert!(is_adjacent_cycle(&[2, 3]));
        assert!(is_adjacent_cycle(&[1, 2, 3]));
        assert!(is_adjacent_cycle(&[3, 1, 2])); // rotation of (1 2 3)
        assert!(is_adjacent_cycle(&[6, 7, 8]));
        assert!(!is_adjacent_cycle(&[6, 8, 7])); // right support, wrong order
        assert!(!is_adjacent_cycle(&[1, 5, 4])); // support is not consecutive
        assert!(!is_adjacent_cycle(&[1, 3, 2]));
        assert!(!is_adjacent_cycle(&[2, 4]));
        assert!(!is_adjacent_cycle(&[]));
    }

    #[test]
    fn nine_element_worked_example() {
        let p = Permutation::from_image(vec![4, 3, 2, 1, 5, 7, 8, 6, 9]).unwrap();
        assert_eq!(p.cycles().to_string(), "(1 4)(2 3)(5)(6 7 8)(9)");
        assert_eq!(p.count_adjacent_cycles(1), 2);
        assert_eq!(p.count_adjacent_cycles(2), 1);
        assert_eq!(p.count_adjacent_cycles(3), 1);
        assert_eq!(p.count_adjacent_cycles(4), 0);

        let p = Permutation::from_image(vec![5, 3, 2, 1, 4, 6]).unwrap();
        assert_eq!(p.cycles().to_string(), "(1 5 4)(2 3)(6)");
        assert_eq!(p.count_adjacent_cycles(1), 1);
        assert_eq!(p.count_adjacent_cycles(2), 1);
        assert_eq!(p.count_adjacent_cycles(3), 0);
    }

    #[test]
    fn joint_map_keeps_only_realized_profiles() {
        let spec = MultiSpec::new(vec![1]).unwrap();
        let map = multi_distribution(2, &spec).unwrap();
        assert_eq!(map.len(), 2);
        assert_eq!(map.get(&vec![0]), Some(&Nat::from(1u32)));
        assert_eq!(map.get(&vec![2]), Some(&Nat::from(1u32)));
        assert_eq!(map.get(&vec![1]), None);
    }

    #[test]
    fn count_adjacent_reference() {
        assert_eq!(Permutation::identity(5).count_adjacent_cycles(1), 5);
        let p = Permutation::from_image(vec![2, 1, 4, 3]).unwrap();
        assert_eq!(p.count_adjacent_cycles(2), 2);
        assert_eq!(p.count_adjacent_cycles(1), 0);
        let p = Permutation::from_image(vec![2, 3, 1, 4]).unwrap();
        assert_eq!(p.count_adjacent_cycles(3), 1);
        assert_eq!(p.count_adjacent_cycles(1), 1);
        // (1 3 2) cycles three consecutive integers, but in the wrong order
        let p = Permutation::from_image(vec![3, 1, 2]).unwrap();
        assert_eq!(p.count_adjacent_cycles(3), 0);
    }

    #[test]
    fn profile_matches_per_length_counts() {
        let spec = MultiSpec::new(vec![1, 2, 3]).unwrap();
        let p = Permutation::from_image(vec![2, 3, 1, 4, 6, 5]).unwrap();
        assert_eq!(p.adjacent_cycle_counts(&spec), vec![1, 1, 1]);
    }

    #[test]
    fn distribution_small_reference() {
        assert_eq!(distribution(0, 3).unwrap(), nats(&[1]));
        assert_eq!(distribution(1, 1).unwrap(), nats(&[0, 1]));
        assert_eq!(distribution(3, 2).unwrap(), nats(&[4, 2]));
        assert_eq!(distribution(4, 1).unwrap(), nats(&[9, 8, 6, 0, 1]));
        assert_eq!(distribution(5, 2).unwrap(), nats(&[99, 18, 3]));
        assert_eq!(distribution(6, 3).unwrap(), nats(&[697, 22, 1]));
        assert_eq!(distribution(7, 7).unwrap(), nats(&[5039, 1]));
    }

    #[test]
    fn enumeration_cap_is_enforced() {
        assert_eq!(
            distribution(11, 1),
            Err(Error::CapExceeded {
                what: "exhaustive enumeration",
                n: 11,
                cap: DEFAULT_ENUMERATION_CAP,
            })
        );
        assert!(distribution_with_cap(4, 1, 4).is_ok());
        assert!(distribution_with_cap(5, 1, 4).is_err());
    }

    #[test]
    fn joint_distribution_of_s5_over_all_lengths() {
        let spec = MultiSpec::new(vec![1, 2, 3, 4, 5]).unwrap();
        let got = multi_distribution(5, &spec).unwrap();
        let expected: BTreeMap<Vec<usize>, Nat> = [
            (vec![0, 0, 0, 0, 0], 34),
            (vec![0, 0, 0, 0, 1], 1),
            (vec![0, 0, 1, 0, 0], 1),
            (vec![0, 1, 0, 0, 0], 6),
            (vec![0, 1, 1, 0, 0], 2),
            (vec![1, 0, 0, 0, 0], 34),
            (vec![1, 0, 0, 1, 0], 2),
            (vec![1, 1, 0, 0, 0], 6),
            (vec![1, 2, 0, 0, 0], 3),
            (vec![2, 0, 0, 0, 0], 17),
            (vec![2, 0, 1, 0, 0], 3),
            (vec![3, 0, 0, 0, 0], 6),
            (vec![3, 1, 0, 0, 0], 4),
            (vec![5, 0, 0, 0, 0], 1),
        ]
        .into_iter()
        .map(|(k, v)| (k, nat(v)))
        .collect();
        assert_eq!(got, expected);
        let total: Nat = got.values().sum();
        assert_eq!(total, nat(120));
    }

    #[test]
    fn joint_distribution_pair_reference() {
        let spec = MultiSpec::new(vec![1, 2]).unwrap();
        let got = multi_distribution(6, &spec).unwrap();
        assert_eq!(got[&vec![0, 0]], nat(225));
        let total: Nat = got.values().sum();
        assert_eq!(total, nat(720));
    }
}
