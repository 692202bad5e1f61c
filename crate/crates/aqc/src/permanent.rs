//! Polynomial permanents of marked matrices.
//!
//! The all-ones matrix has permanent n!, one unit per permutation. Marking
//! it refines that count: for every tracked adjacent cycle c = (a, a+1,
//! ..., a+q-1) a mark variable is multiplied onto the entries (i, i+1) for
//! i = a..a+q-2 and (a+q-1, a), the transitions of c. The permanent then
//! sends each permutation to the product of the marks of the transitions it
//! uses, and a mark reaches its full exponent q exactly when the
//! permutation contains c as a cycle. Collapsing full marks to one
//! collective variable per cycle length turns the permanent into the
//! generating polynomial of the counts.

use std::collections::BTreeMap;

use num_traits::Signed;

use crate::counts::MultiSpec;
use crate::mpoly::{MPoly, Monomial, VarId};
use crate::{require_cap, Error, Nat, Result};

/// Largest n for the permanent entry points; Ryser's expansion walks 2^n
/// column subsets.
pub const DEFAULT_PERMANENT_CAP: usize = 10;

/// The mark for one tracked cycle: variable `id` marks the cycle of length
/// `len` on {start, start+1, ..., start+len-1}. `family` indexes the
/// tracked length and doubles as the collective variable id after collapse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkVar {
    pub id: VarId,
    pub family: usize,
    pub start: usize,
    pub len: usize,
}

/// Names the collective variable of family j: x, y, z, u, v, ... in the
/// order the lengths were given.
pub fn family_name(family: usize) -> String {
    const NAMES: [&str; 8] = ["x", "y", "z", "u", "v", "w", "s", "t"];
    NAMES
        .get(family)
        .map(|s| s.to_string())
        .unwrap_or_else(|| format!("t{family}"))
}

/// The all-ones n x n matrix with every tracked adjacent cycle marked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedMatrix {
    n: usize,
    lengths: Vec<usize>,
    entries: Vec<Vec<MPoly>>,
    marks: Vec<MarkVar>,
}

impl MarkedMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    /// The tracked cycle lengths, in family order.
    pub fn lengths(&self) -> &[usize] {
        &self.lengths
    }

    pub fn marks(&self) -> &[MarkVar] {
        &self.marks
    }

    pub fn entries(&self) -> &[Vec<MPoly>] {
        &self.entries
    }

    /// The entry in row i, column j (1-based); its monomials are products
    /// of marks of cycles whose transitions send i to j.
    pub fn entry(&self, i: usize, j: usize) -> &MPoly {
        assert!(i >= 1 && i <= self.n && j >= 1 && j <= self.n);
        &self.entries[i - 1][j - 1]
    }

    /// Names for rendering: collective variables by family letter, marks by
    /// family letter plus the cycle's start.
    pub fn name_of(&self, v: VarId) -> String {
        if (v as usize) < self.lengths.len() {
            return family_name(v as usize);
        }
        let mark = self
            .marks
            .iter()
            .find(|mk| mk.id == v)
            .expect("variable does not belong to this matrix");
        format!("{}{}", family_name(mark.family), mark.start)
    }

    /// The permanent, a polynomial in the mark variables. Refuses matrices
    /// beyond [`DEFAULT_PERMANENT_CAP`]; the expansion is exponential in n.
    pub fn permanent(&self) -> Result<MPoly> {
        self.permanent_with_cap(DEFAULT_PERMANENT_CAP)
    }

    /// Same as [`MarkedMatrix::permanent`] with an explicit cap on n.
    pub fn permanent_with_cap(&self, cap: usize) -> Result<MPoly> {
        require_cap("polynomial permanent", self.n, cap)?;
        Ok(permanent_ryser(&self.entries))
    }

    /// The permanent with full marks collapsed to collective variables:
    /// the joint generating polynomial of the tracked cycle counts.
    pub fn collapsed_permanent(&self) -> Result<MPoly> {
        self.collapsed_permanent_with_cap(DEFAULT_PERMANENT_CAP)
    }

    /// Same as [`MarkedMatrix::collapsed_permanent`] with an explicit cap.
    pub fn collapsed_permanent_with_cap(&self, cap: usize) -> Result<MPoly> {
        collapse(&self.permanent_with_cap(cap)?, &self.marks)
    }
}

/// Marks every adjacent cycle of every length in `spec` on the all-ones
/// n x n matrix. Collective variable ids are 0..m in family order; mark
/// ids continue from m.
pub fn build_marked_matrix_multi(n: usize, spec: &MultiSpec) -> Result<MarkedMatrix> {
    let m = spec.len();
    let mut entries = vec![vec![MPoly::one(); n]; n];
    let mut marks: Vec<MarkVar> = Vec::new();
    let mut next_id = m as VarId;
    for (family, &q) in spec.lengths().iter().enumerate() {
        if q > n {
            continue;
        }
        for start in 1..=(n + 1 - q) {
            let mark = MarkVar {
                id: next_id,
                family,
                start,
                len: q,
            };
            next_id += 1;
            let factor = MPoly::var(mark.id);
            for i in start..(start + q - 1) {
                let updated = &entries[i - 1][i] * &factor;
                entries[i - 1][i] = updated; // transition i -> i+1
            }
            let updated = &entries[start + q - 2][start - 1] * &factor;
            entries[start + q - 2][start - 1] = updated; // closing transition
            marks.push(mark);
        }
    }
    Ok(MarkedMatrix {
        n,
        lengths: spec.lengths().to_vec(),
        entries,
        marks,
    })
}

/// Marks the adjacent q-cycles only.
pub fn build_marked_matrix(n: usize, q: usize) -> Result<MarkedMatrix> {
    build_marked_matrix_multi(n, &MultiSpec::new(vec![q])?)
}

/// The permanent by Ryser's inclusion-exclusion over column subsets,
/// updating the row sums along a Gray code so each subset costs one column
/// more or less plus one product of n polynomials.
pub fn permanent_ryser(entries: &[Vec<MPoly>]) -> MPoly {
    let n = entries.len();
    assert!(
        entries.iter().all(|row| row.len() == n),
        "matrix must be square"
    );
    assert!(n < usize::BITS as usize, "matrix too large for subset words");
    if n == 0 {
        return MPoly::one();
    }
    let mut row_sums = vec![MPoly::zero(); n];
    let mut acc = MPoly::zero();
    let mut prev = 0usize;
    for k in 1usize..(1 << n) {
        let gray = k ^ (k >> 1);
        let flipped = gray ^ prev;
        let col = flipped.trailing_zeros() as usize;
        for (i, sum) in row_sums.iter_mut().enumerate() {
            let updated = if gray & flipped != 0 {
                &*sum + &entries[i][col]
            } else {
                &*sum - &entries[i][col]
            };
            *sum = updated;
        }
        prev = gray;
        let mut product = MPoly::one();
        for sum in &row_sums {
            product = &product * sum;
        }
        if (n - gray.count_ones() as usize) % 2 == 0 {
            acc = &acc + &product;
        } else {
            acc = &acc - &product;
        }
    }
    acc
}

/// The permanent by direct expansion over all n! permutations. Only
/// sensible for small n; used to cross-check [`permanent_ryser`].
pub fn permanent_naive(entries: &[Vec<MPoly>]) -> MPoly {
    let n = entries.len();
    assert!(
        entries.iter().all(|row| row.len() == n),
        "matrix must be square"
    );
    if n == 0 {
        return MPoly::one();
    }
    let mut image: Vec<usize> = (0..n).collect();
    let mut acc = MPoly::zero();
    loop {
        let mut product = MPoly::one();
        for (i, &j) in image.iter().enumerate() {
            product = &product * &entries[i][j];
        }
        acc = &acc + &product;
        if !crate::oracle::next_permutation(&mut image) {
            break;
        }
    }
    acc
}

/// Replaces every full mark (exponent equal to the cycle length) by one
/// power of its family's collective variable and erases partial marks.
/// An exponent above the cycle length cannot come from a permanent and is
/// reported as an inconsistency.
pub fn collapse(p: &MPoly, marks: &[MarkVar]) -> Result<MPoly> {
    let by_id: BTreeMap<VarId, &MarkVar> = marks.iter().map(|mk| (mk.id, mk)).collect();
    let mut out = MPoly::zero();
    for (mono, coeff) in p.terms() {
        let mut pairs: Vec<(VarId, u32)> = Vec::new();
        for &(v, e) in mono.pairs() {
            match by_id.get(&v) {
                None => pairs.push((v, e)),
                Some(mark) => {
                    let e = e as usize;
                    if e > mark.len {
                        return Err(Error::Inconsistency(format!(
                            "mark {} of a length-{} cycle has exponent {e}",
                            mark.id, mark.len
                        )));
                    }
                    if e == mark.len {
                        pairs.push((mark.family as VarId, 1));
                    }
                    // partial marks mean the cycle is absent; drop them
                }
            }
        }
        out.add_term(Monomial::from_pairs(pairs), coeff.clone());
    }
    Ok(out)
}

/// The generating polynomial sum_k a(n, k) x^k of the AqC counts of S_n,
/// computed through the marked permanent (x is variable 0).
pub fn generating_polynomial(n: usize, q: usize) -> Result<MPoly> {
    generating_polynomial_with_cap(n, q, DEFAULT_PERMANENT_CAP)
}

/// Same as [`generating_polynomial`] with an explicit cap on n.
pub fn generating_polynomial_with_cap(n: usize, q: usize, cap: usize) -> Result<MPoly> {
    build_marked_matrix(n, q)?.collapsed_permanent_with_cap(cap)
}

/// The joint generating polynomial over all tracked lengths: the monomial
/// x^k1 y^k2 ... carries the number of permutations of S_n with exactly
/// k_j adjacent q_j-cycles for every j.
pub fn generating_polynomial_multi(n: usize, spec: &MultiSpec) -> Result<MPoly> {
    generating_polynomial_multi_with_cap(n, spec, DEFAULT_PERMANENT_CAP)
}

/// Same as [`generating_polynomial_multi`] with an explicit cap on n.
pub fn generating_polynomial_multi_with_cap(
    n: usize,
    spec: &MultiSpec,
    cap: usize,
) -> Result<MPoly> {
    build_marked_matrix_multi(n, spec)?.collapsed_permanent_with_cap(cap)
}

/// The fixed-point generating polynomial sum_k r(n, k) x^k as the permanent
/// of the matrix with x on the diagonal and 1 elsewhere.
pub fn rencontres_polynomial(n: usize) -> Result<MPoly> {
    rencontres_polynomial_with_cap(n, DEFAULT_PERMANENT_CAP)
}

/// Same as [`rencontres_polynomial`] with an explicit cap on n.
pub fn rencontres_polynomial_with_cap(n: usize, cap: usize) -> Result<MPoly> {
    require_cap("polynomial permanent", n, cap)?;
    let entries: Vec<Vec<MPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { MPoly::var(0) } else { MPoly::one() })
                .collect()
        })
        .collect();
    Ok(permanent_ryser(&entries))
}

/// Reads a collapsed joint generating polynomial over m families back into
/// a distribution: multiplicity vector -> count. Fails if a non-family
/// variable or a negative coefficient survives.
pub fn family_distribution(p: &MPoly, m: usize) -> Result<BTreeMap<Vec<usize>, Nat>> {
    let mut out = BTreeMap::new();
    for (mono, coeff) in p.terms() {
        let mut ks = vec![0usize; m];
        for &(v, e) in mono.pairs() {
            if (v as usize) >= m {
                return Err(Error::Inconsistency(format!(
                    "variable {v} is not one of the {m} collective variables"
                )));
            }
            ks[v as usize] = e as usize;
        }
        if coeff.is_negative() {
            return Err(Error::Inconsistency(format!(
                "negative count {coeff} for multiplicities {ks:?}"
            )));
        }
        out.insert(ks, coeff.to_biguint().unwrap());
    }
    Ok(out)
}
