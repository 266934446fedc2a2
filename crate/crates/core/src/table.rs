//! Flat-array operation tables on the carrier `{0, …, k-1}` and the
//! pointwise predicates and statistics defined on them.
//!
//! A table stores an `n`-ary operation as `k^n` values in lexicographic
//! argument order with the *last* coordinate varying fastest; this index
//! order is frozen and shared by the text format and all generators.

use smallvec::SmallVec;

use crate::{Error, Result};

/// Inline capacity for table value buffers; large tables spill to the heap.
pub(crate) type Values = SmallVec<[u8; 32]>;
pub(crate) type Tuple = SmallVec<[u8; 16]>;

pub(crate) const MAX_K: usize = 255;
pub(crate) const MAX_ARITY: usize = 16;
pub(crate) const MAX_TABLE_LEN: usize = 1 << 28;

/// Default budget for [`OperationTable::is_bisymmetric`], counted in matrix
/// evaluations (`k^(n*n)` of them are needed).
pub const DEFAULT_BISYMMETRY_BUDGET: u64 = 100_000_000;

const NAIVE_INSTANCE_LIMIT: usize = 1 << 27;

/// A total `n`-ary operation on `{0, …, k-1}`, immutable after construction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OperationTable {
    k: usize,
    n: usize,
    values: Values,
}

pub(crate) fn checked_table_len(k: usize, n: usize) -> Result<usize> {
    if k < 1 || n < 1 || k > MAX_K || n > MAX_ARITY {
        return Err(Error::ArityOrSizeInvalid { k, n });
    }
    let mut len: usize = 1;
    for _ in 0..n {
        len = len
            .checked_mul(k)
            .filter(|l| *l <= MAX_TABLE_LEN)
            .ok_or(Error::ArityOrSizeInvalid { k, n })?;
    }
    Ok(len)
}

impl OperationTable {
    /// Builds a table from 0-based values in the frozen index order.
    pub fn new(k: usize, n: usize, values: Vec<u8>) -> Result<Self> {
        let len = checked_table_len(k, n)?;
        if values.len() != len {
            return Err(Error::LengthMismatch { expected: len, got: values.len() });
        }
        for &v in &values {
            if v as usize >= k {
                return Err(Error::ValueOutOfRange { value: v as usize + 1, k });
            }
        }
        Ok(OperationTable { k, n, values: Values::from_vec(values) })
    }

    /// Builds a table from 1-based entries, the text-format convention.
    pub fn from_one_based(k: usize, n: usize, entries: &[usize]) -> Result<Self> {
        let len = checked_table_len(k, n)?;
        if entries.len() != len {
            return Err(Error::LengthMismatch { expected: len, got: entries.len() });
        }
        let mut values = Values::with_capacity(len);
        for &e in entries {
            if e < 1 || e > k {
                return Err(Error::ValueOutOfRange { value: e, k });
            }
            values.push((e - 1) as u8);
        }
        Ok(OperationTable { k, n, values })
    }

    /// Builds the table of `f` by evaluating every argument tuple.
    pub fn from_fn(k: usize, n: usize, mut f: impl FnMut(&[u8]) -> u8) -> Result<Self> {
        let len = checked_table_len(k, n)?;
        let mut values = Values::with_capacity(len);
        let mut tuple: Tuple = smallvec::smallvec![0; n];
        loop {
            let v = f(&tuple);
            if v as usize >= k {
                return Err(Error::ValueOutOfRange { value: v as usize + 1, k });
            }
            values.push(v);
            if !advance_tuple(&mut tuple, k) {
                break;
            }
        }
        debug_assert_eq!(values.len(), len);
        Ok(OperationTable { k, n, values })
    }

    /// Construction from pre-validated values; callers guarantee the shape.
    /// No per-call validation: this sits on the scanning hot path.
    pub(crate) fn from_values_unchecked(k: usize, n: usize, values: Values) -> Self {
        OperationTable { k, n, values }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The flat 0-based value array in the frozen index order.
    pub fn values(&self) -> &[u8] {
        &self.values
    }

    /// Flat index of an argument tuple (last coordinate fastest).
    pub fn index_of(&self, args: &[u8]) -> usize {
        debug_assert_eq!(args.len(), self.n);
        let mut idx = 0usize;
        for &a in args {
            debug_assert!((a as usize) < self.k);
            idx = idx * self.k + a as usize;
        }
        idx
    }

    /// Decodes a flat index back into its argument tuple.
    pub fn tuple_of_index(&self, mut idx: usize) -> Vec<u8> {
        debug_assert!(idx < self.values.len());
        let mut tuple = vec![0u8; self.n];
        for i in (0..self.n).rev() {
            tuple[i] = (idx % self.k) as u8;
            idx /= self.k;
        }
        tuple
    }

    /// Applies the operation to an argument tuple.
    pub fn evaluate(&self, args: &[u8]) -> Result<u8> {
        if args.len() != self.n {
            return Err(Error::TupleArityMismatch { expected: self.n, got: args.len() });
        }
        for &a in args {
            if a as usize >= self.k {
                return Err(Error::ValueOutOfRange { value: a as usize + 1, k: self.k });
            }
        }
        Ok(self.values[self.index_of(args)])
    }

    #[inline]
    pub(crate) fn eval_unchecked(&self, args: &[u8]) -> u8 {
        self.values[self.index_of(args)]
    }

    /// `F(x, …, x) = x` for every `x`.
    pub fn is_idempotent(&self) -> bool {
        let diag_step = diagonal_step(self.k, self.n);
        (0..self.k).all(|x| self.values[x * diag_step] == x as u8)
    }

    /// Every output is one of its arguments (conservativeness).
    pub fn is_quasitrivial(&self) -> bool {
        let mut tuple: Tuple = smallvec::smallvec![0; self.n];
        let mut idx = 0usize;
        loop {
            let v = self.values[idx];
            if !tuple.contains(&v) {
                return false;
            }
            if !advance_tuple(&mut tuple, self.k) {
                return true;
            }
            idx += 1;
        }
    }

    /// Output is invariant under permuting the arguments; checked by
    /// comparing each tuple against its sorted representative.
    pub fn is_symmetric(&self) -> bool {
        let mut tuple: Tuple = smallvec::smallvec![0; self.n];
        let mut sorted: Tuple = smallvec::smallvec![0; self.n];
        let mut idx = 0usize;
        loop {
            sorted.copy_from_slice(&tuple);
            sorted.sort_unstable();
            if sorted != tuple && self.values[idx] != self.values[self.index_of(&sorted)] {
                return false;
            }
            if !advance_tuple(&mut tuple, self.k) {
                return true;
            }
            idx += 1;
        }
    }

    /// Exhaustive check of the generalized associativity identity over all
    /// `(2n-1)`-tuples and nesting positions. Cost `O((n-1) k^(2n-1))`.
    pub fn is_associative_naive(&self) -> Result<bool> {
        Ok(NaiveAssociativityChecker::new(self.k, self.n)?.check(self))
    }

    /// Row/column interchange identity over all `n x n` argument matrices,
    /// with the default cost budget. The check is doubly exponential in `n`
    /// (`k^(n*n)` matrices), so it is guarded.
    pub fn is_bisymmetric(&self) -> Result<bool> {
        self.is_bisymmetric_with_budget(DEFAULT_BISYMMETRY_BUDGET)
    }

    pub fn is_bisymmetric_with_budget(&self, budget: u64) -> Result<bool> {
        let matrices = num_bigint::BigUint::from(self.k).pow((self.n * self.n) as u32);
        if matrices > num_bigint::BigUint::from(budget) {
            return Err(Error::CostLimitExceeded { required: matrices.to_string(), budget });
        }
        let n = self.n;
        let mut matrix: SmallVec<[u8; 64]> = smallvec::smallvec![0; n * n];
        let mut column: Tuple = smallvec::smallvec![0; n];
        let mut row_vals: Tuple = smallvec::smallvec![0; n];
        let mut col_vals: Tuple = smallvec::smallvec![0; n];
        loop {
            for (i, row) in matrix.chunks_exact(n).enumerate() {
                row_vals[i] = self.eval_unchecked(row);
            }
            for j in 0..n {
                for i in 0..n {
                    column[i] = matrix[i * n + j];
                }
                col_vals[j] = self.eval_unchecked(&column);
            }
            if self.eval_unchecked(&row_vals) != self.eval_unchecked(&col_vals) {
                return Ok(false);
            }
            if !advance_tuple(&mut matrix, self.k) {
                return Ok(true);
            }
        }
    }

    /// All `e` with `F(e, …, e, x, e, …, e) = x` for every `x` and slot.
    pub fn neutral_elements(&self) -> Vec<u8> {
        self.neutral_elements_buf().to_vec()
    }

    pub(crate) fn neutral_elements_buf(&self) -> SmallVec<[u8; 4]> {
        let weights = index_weights(self.k, self.n);
        let diag_step = diagonal_step(self.k, self.n);
        let mut out = SmallVec::new();
        'candidates: for e in 0..self.k {
            let base = (e * diag_step) as i64;
            for &w in &weights {
                for x in 0..self.k {
                    let idx = base + (x as i64 - e as i64) * w as i64;
                    if self.values[idx as usize] != x as u8 {
                        continue 'candidates;
                    }
                }
            }
            out.push(e as u8);
        }
        out
    }

    /// `F` maps every tuple containing `z` to `z`.
    pub fn is_annihilator(&self, z: u8) -> bool {
        if z as usize >= self.k {
            return false;
        }
        let mut tuple: Tuple = smallvec::smallvec![0; self.n];
        let mut idx = 0usize;
        loop {
            if tuple.contains(&z) && self.values[idx] != z {
                return false;
            }
            if !advance_tuple(&mut tuple, self.k) {
                return true;
            }
            idx += 1;
        }
    }

    /// The unique annihilator if one exists.
    ///
    /// For `n >= 2` an annihilator is unique whenever it exists. For the
    /// degenerate `n = 1` case several elements can satisfy the definition;
    /// this accessor then returns `None` (use [`Self::is_annihilator`] for
    /// the per-element predicate).
    pub fn annihilator(&self) -> Option<u8> {
        let mut alive: SmallVec<[bool; 16]> = smallvec::smallvec![true; self.k];
        let mut tuple: Tuple = smallvec::smallvec![0; self.n];
        let mut idx = 0usize;
        loop {
            let v = self.values[idx];
            for &z in tuple.iter() {
                if z != v {
                    alive[z as usize] = false;
                }
            }
            if !advance_tuple(&mut tuple, self.k) {
                break;
            }
            idx += 1;
        }
        let mut found = None;
        for (z, ok) in alive.iter().enumerate() {
            if *ok {
                if found.is_some() {
                    debug_assert_eq!(self.n, 1);
                    return None;
                }
                found = Some(z as u8);
            }
        }
        found
    }

    /// Fiber sizes `|F^{-1}[x]|` per element, unsorted.
    pub fn preimage_counts(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.k];
        for &v in self.values.iter() {
            counts[v as usize] += 1;
        }
        counts
    }

    /// The sorted preimage sequence.
    pub fn preimage_sequence(&self) -> PreimageSequence {
        let mut counts = self.preimage_counts();
        counts.sort_unstable();
        PreimageSequence { counts }
    }

    /// Kernel classes of the operation, grouped by attained output value.
    pub fn contour_components(&self) -> ContourPartition {
        let mut classes: Vec<ContourClass> = Vec::new();
        let mut slot = vec![usize::MAX; self.k];
        for (idx, &v) in self.values.iter().enumerate() {
            let s = slot[v as usize];
            if s == usize::MAX {
                slot[v as usize] = classes.len();
                classes.push(ContourClass { value: v, tuple_indices: vec![idx] });
            } else {
                classes[s].tuple_indices.push(idx);
            }
        }
        classes.sort_by_key(|c| c.value);
        ContourPartition { classes }
    }

    /// Quasitriviality restated through the contour plot: idempotent, and
    /// every off-diagonal tuple shares its kernel class with a diagonal one.
    pub fn is_quasitrivial_by_contour(&self) -> bool {
        if !self.is_idempotent() {
            return false;
        }
        let diag_step = diagonal_step(self.k, self.n);
        self.contour_components()
            .classes
            .iter()
            .all(|c| c.tuple_indices.contains(&(c.value as usize * diag_step)))
    }

    /// Simultaneous monotonicity in every coordinate with respect to the
    /// total order given as a permutation of the carrier (least first).
    /// Checked by stepping each coordinate to its successor.
    pub fn is_order_preserving(&self, order: &[u8]) -> Result<bool> {
        let rank = permutation_ranks(self.k, order)?;
        let weights = index_weights(self.k, self.n);
        let mut tuple: Tuple = smallvec::smallvec![0; self.n];
        let mut idx = 0usize;
        loop {
            let out_rank = rank[self.values[idx] as usize];
            for (i, &x) in tuple.iter().enumerate() {
                let r = rank[x as usize] as usize;
                if r + 1 < self.k {
                    let succ = order[r + 1];
                    let step = (succ as i64 - x as i64) * weights[i] as i64;
                    let succ_idx = (idx as i64 + step) as usize;
                    if out_rank > rank[self.values[succ_idx] as usize] {
                        return Ok(false);
                    }
                }
            }
            if !advance_tuple(&mut tuple, self.k) {
                return Ok(true);
            }
            idx += 1;
        }
    }
}

impl std::fmt::Debug for OperationTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "OperationTable(k={}, n={}, values={:?})", self.k, self.n, self.values)
    }
}

/// Membership in the diagonal `Δ`: all components equal.
pub fn is_diagonal_tuple(tuple: &[u8]) -> bool {
    tuple.windows(2).all(|w| w[0] == w[1])
}

pub(crate) fn index_weights(k: usize, n: usize) -> SmallVec<[usize; 16]> {
    let mut weights: SmallVec<[usize; 16]> = smallvec::smallvec![1; n];
    for i in (0..n - 1).rev() {
        weights[i] = weights[i + 1] * k;
    }
    weights
}

/// `sum of k^i for i in 0..n`: the index stride between diagonal tuples.
pub(crate) fn diagonal_step(k: usize, n: usize) -> usize {
    index_weights(k, n).iter().sum()
}

/// Advances a tuple in the frozen order (last coordinate fastest);
/// returns `false` after the last tuple wraps back to all-zero.
pub(crate) fn advance_tuple(tuple: &mut [u8], k: usize) -> bool {
    for slot in tuple.iter_mut().rev() {
        if (*slot as usize) + 1 < k {
            *slot += 1;
            return true;
        }
        *slot = 0;
    }
    false
}

fn permutation_ranks(k: usize, order: &[u8]) -> Result<SmallVec<[u8; 16]>> {
    if order.len() != k {
        return Err(Error::NotAPermutation);
    }
    let mut rank: SmallVec<[u8; 16]> = smallvec::smallvec![u8::MAX; k];
    for (r, &x) in order.iter().enumerate() {
        if x as usize >= k || rank[x as usize] != u8::MAX {
            return Err(Error::NotAPermutation);
        }
        rank[x as usize] = r as u8;
    }
    Ok(rank)
}

/// The sorted sequence of fiber sizes of a table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreimageSequence {
    counts: Vec<usize>,
}

impl PreimageSequence {
    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    /// The signature `(1, 2^n - 1, …, k^n - (k-1)^n)` of an n-ary maximum
    /// operation for a total ordering.
    pub fn max_signature(k: usize, n: usize) -> PreimageSequence {
        let counts = (1..=k).map(|i| i.pow(n as u32) - (i - 1).pow(n as u32)).collect();
        PreimageSequence { counts }
    }
}

/// One kernel class: all tuple indices mapping to `value`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContourClass {
    pub value: u8,
    pub tuple_indices: Vec<usize>,
}

/// The kernel of a table as a partition of tuple indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContourPartition {
    pub classes: Vec<ContourClass>,
}

/// Precomputed associativity identity instances for one `(k, n)` shape.
///
/// Building the instance list once and reusing it across many tables is what
/// makes the exhaustive naive-oracle scans affordable.
pub struct NaiveAssociativityChecker {
    k: usize,
    n: usize,
    pub(crate) instances: Vec<AssocInstance>,
}

/// One identity instance: compare the nestings at two adjacent positions of
/// a fixed `(2n-1)`-tuple. Outer indices depend on the inner values, so they
/// are stored as `base + weight * inner_value`.
#[derive(Clone, Copy)]
pub(crate) struct AssocInstance {
    pub(crate) inner1: u32,
    pub(crate) base1: u32,
    pub(crate) w1: u32,
    pub(crate) inner2: u32,
    pub(crate) base2: u32,
    pub(crate) w2: u32,
}

impl NaiveAssociativityChecker {
    pub fn new(k: usize, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::ArityTooSmall { n });
        }
        checked_table_len(k, n)?;
        let outer_tuples = num_bigint::BigUint::from(k).pow((2 * n - 1) as u32);
        let instance_count = outer_tuples.clone() * (n - 1) as u32;
        if instance_count > num_bigint::BigUint::from(NAIVE_INSTANCE_LIMIT) {
            return Err(Error::CostLimitExceeded {
                required: instance_count.to_string(),
                budget: NAIVE_INSTANCE_LIMIT as u64,
            });
        }
        let weights = index_weights(k, n);
        let mut instances = Vec::with_capacity(
            usize::try_from(instance_count).expect("guarded above"),
        );
        let mut t: SmallVec<[u8; 32]> = smallvec::smallvec![0; 2 * n - 1];
        loop {
            for p in 0..n - 1 {
                let (inner1, base1) = nesting_parts(&t, p, k, &weights);
                let (inner2, base2) = nesting_parts(&t, p + 1, k, &weights);
                instances.push(AssocInstance {
                    inner1: inner1 as u32,
                    base1: base1 as u32,
                    w1: weights[p] as u32,
                    inner2: inner2 as u32,
                    base2: base2 as u32,
                    w2: weights[p + 1] as u32,
                });
            }
            if !advance_tuple(&mut t, k) {
                break;
            }
        }
        Ok(NaiveAssociativityChecker { k, n, instances })
    }

    /// True iff every identity instance holds for `table`.
    pub fn check(&self, table: &OperationTable) -> bool {
        assert_eq!((self.k, self.n), (table.k, table.n), "checker shape mismatch");
        self.check_values(table.values())
    }

    #[inline]
    pub(crate) fn check_values(&self, vals: &[u8]) -> bool {
        for inst in &self.instances {
            let v1 = vals[inst.inner1 as usize] as u32;
            let v2 = vals[inst.inner2 as usize] as u32;
            let a = vals[(inst.base1 + inst.w1 * v1) as usize];
            let b = vals[(inst.base2 + inst.w2 * v2) as usize];
            if a != b {
                return false;
            }
        }
        true
    }
}

/// Index of the inner window at nesting position `p` plus the partial outer
/// index with the inner slot left at zero.
fn nesting_parts(t: &[u8], p: usize, k: usize, weights: &[usize]) -> (usize, usize) {
    let n = weights.len();
    let mut inner = 0usize;
    for j in 0..n {
        inner = inner * k + t[p + j] as usize;
    }
    let mut base = 0usize;
    for j in 0..p {
        base += t[j] as usize * weights[j];
    }
    for j in p + 1..n {
        base += t[j + n - 1] as usize * weights[j];
    }
    (inner, base)
}

// ---------------------------------------------------------------------------
// Text format: line 1 `k n`, then k^n whitespace-separated 1-based entries in
// the frozen index order; lines starting with `#` are comments.
// ---------------------------------------------------------------------------

/// Parses the shared table text format.
pub fn parse_table(text: &str) -> Result<OperationTable> {
    let mut numbers = Vec::new();
    for line in text.lines() {
        if line.trim_start().starts_with('#') {
            continue;
        }
        for token in line.split_whitespace() {
            let value: usize = token
                .parse()
                .map_err(|_| Error::Parse(format!("expected an integer, found {token:?}")))?;
            numbers.push(value);
        }
    }
    if numbers.len() < 2 {
        return Err(Error::Parse("missing `k n` header".into()));
    }
    let (k, n) = (numbers[0], numbers[1]);
    OperationTable::from_one_based(k, n, &numbers[2..])
}

impl std::fmt::Display for OperationTable {
    /// Writes the table text format: `k n` then 1-based entries, one row of
    /// `k` entries per line.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "{} {}", self.k, self.n)?;
        for row in self.values.chunks(self.k) {
            let mut first = true;
            for &v in row {
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{}", v as usize + 1)?;
                first = false;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn make_table_validates() {
        let pi1 = OperationTable::from_one_based(2, 2, &[1, 1, 2, 2]).unwrap();
        assert_eq!(pi1.values(), &[0, 0, 1, 1]);
        assert_eq!(
            OperationTable::from_one_based(2, 3, &[1; 7]).unwrap_err(),
            Error::LengthMismatch { expected: 8, got: 7 }
        );
        assert_eq!(
            OperationTable::from_one_based(2, 2, &[1, 1, 3, 2]).unwrap_err(),
            Error::ValueOutOfRange { value: 3, k: 2 }
        );
        assert!(matches!(
            OperationTable::from_one_based(0, 2, &[]),
            Err(Error::ArityOrSizeInvalid { .. })
        ));
        assert!(matches!(
            OperationTable::from_one_based(2, 0, &[]),
            Err(Error::ArityOrSizeInvalid { .. })
        ));
    }

    #[test]
    fn evaluate_is_lexicographic_last_fastest() {
        let pi1 = fixtures::projection(2, 2, 0);
        assert_eq!(pi1.evaluate(&[1, 0]).unwrap(), 1);
        // external (2,2,2) -> 2 is internal (1,1,1) -> 1
        let sum3 = fixtures::sum_mod2(3);
        assert_eq!(sum3.evaluate(&[1, 1, 1]).unwrap(), 1);
        let max3 = fixtures::max_natural(3, 3);
        assert_eq!(max3.evaluate(&[0, 2, 1]).unwrap(), 2);
        assert!(matches!(
            sum3.evaluate(&[0, 0]),
            Err(Error::TupleArityMismatch { expected: 3, got: 2 })
        ));
        assert!(matches!(sum3.evaluate(&[0, 0, 2]), Err(Error::ValueOutOfRange { .. })));
    }

    #[test]
    fn idempotency_examples() {
        assert!(fixtures::max_natural(3, 3).is_idempotent());
        assert!(!fixtures::sum_mod2(2).is_idempotent());
        assert!(fixtures::sum_mod2(3).is_idempotent());
    }

    #[test]
    fn quasitriviality_examples() {
        assert!(fixtures::sum_mod2(3).is_quasitrivial());
        assert!(!fixtures::sum_mod2(2).is_quasitrivial());
        assert!(fixtures::projection(3, 4, 0).is_quasitrivial());
    }

    #[test]
    fn symmetry_examples() {
        assert!(fixtures::max_natural(3, 3).is_symmetric());
        assert!(!fixtures::projection(2, 2, 0).is_symmetric());
        assert!(fixtures::sum_mod2(3).is_symmetric());
    }

    #[test]
    fn associativity_naive_examples() {
        assert!(fixtures::sum_mod2(3).is_associative_naive().unwrap());
        assert!(fixtures::diff_mod3().is_associative_naive().unwrap());
        let t = OperationTable::from_one_based(2, 2, &[2, 1, 1, 1]).unwrap();
        assert!(!t.is_associative_naive().unwrap());
        let unary = fixtures::projection(2, 1, 0);
        assert!(matches!(unary.is_associative_naive(), Err(Error::ArityTooSmall { n: 1 })));
    }

    #[test]
    fn bisymmetry_examples() {
        assert!(fixtures::sum_mod2(3).is_bisymmetric().unwrap());
        assert!(fixtures::projection(2, 2, 0).is_bisymmetric().unwrap());
        // brute-forced over the 2^4 matrices: fails at [[0,0],[1,1]]
        let t = OperationTable::from_one_based(2, 2, &[2, 1, 1, 1]).unwrap();
        assert!(!t.is_bisymmetric().unwrap());
        assert!(matches!(
            fixtures::max_natural(4, 5).is_bisymmetric(),
            Err(Error::CostLimitExceeded { .. })
        ));
    }

    /// Independent matrix-level oracle for the bisymmetry identity.
    fn bisymmetric_oracle(t: &OperationTable) -> bool {
        let n = t.n();
        let total = t.k().pow((n * n) as u32);
        'matrices: for m in 0..total {
            let mut cells = vec![0u8; n * n];
            let mut rest = m;
            for c in cells.iter_mut().rev() {
                *c = (rest % t.k()) as u8;
                rest /= t.k();
            }
            let rows: Vec<u8> = (0..n)
                .map(|i| t.evaluate(&cells[i * n..(i + 1) * n]).unwrap())
                .collect();
            let cols: Vec<u8> = (0..n)
                .map(|j| {
                    let col: Vec<u8> = (0..n).map(|i| cells[i * n + j]).collect();
                    t.evaluate(&col).unwrap()
                })
                .collect();
            if t.evaluate(&rows).unwrap() != t.evaluate(&cols).unwrap() {
                break 'matrices;
            }
            if m + 1 == total {
                return true;
            }
        }
        false
    }

    #[test]
    fn bisymmetry_agrees_with_oracle_on_small_tables() {
        for entries in [
            [1usize, 1, 1, 1],
            [2, 1, 1, 1],
            [1, 2, 2, 1],
            [1, 1, 2, 2],
            [1, 2, 1, 2],
            [1, 2, 2, 2],
            [2, 2, 2, 1],
        ] {
            let t = OperationTable::from_one_based(2, 2, &entries).unwrap();
            assert_eq!(t.is_bisymmetric().unwrap(), bisymmetric_oracle(&t), "{entries:?}");
        }
    }

    #[test]
    fn neutral_element_examples() {
        assert_eq!(fixtures::sum_mod2(3).neutral_elements(), vec![0, 1]);
        assert_eq!(fixtures::max_natural(3, 3).neutral_elements(), vec![0]);
        assert!(fixtures::projection(2, 2, 0).neutral_elements().is_empty());
    }

    #[test]
    fn annihilator_examples() {
        let max32 = fixtures::max_natural(2, 3);
        assert_eq!(max32.annihilator(), Some(1));
        assert_eq!(max32.preimage_counts()[1], 7);
        assert_eq!(fixtures::projection(2, 2, 0).annihilator(), None);
        let sum3 = fixtures::sum_mod2(3);
        assert_eq!(sum3.annihilator(), None);
        assert!(!sum3.is_annihilator(0) && !sum3.is_annihilator(1));
    }

    #[test]
    fn preimage_sequence_examples() {
        assert_eq!(fixtures::max_natural(2, 3).preimage_sequence().counts(), &[1, 7]);
        assert_eq!(fixtures::projection(2, 2, 0).preimage_sequence().counts(), &[2, 2]);
        assert_eq!(fixtures::sum_mod2(3).preimage_sequence().counts(), &[4, 4]);
        assert_eq!(PreimageSequence::max_signature(2, 3).counts(), &[1, 7]);
    }

    #[test]
    fn contour_examples() {
        let max22 = fixtures::max_natural(2, 2);
        let parts = max22.contour_components();
        assert_eq!(parts.classes.len(), 2);
        assert_eq!(parts.classes[0].value, 0);
        assert_eq!(parts.classes[0].tuple_indices, vec![0]);
        assert_eq!(parts.classes[1].tuple_indices, vec![1, 2, 3]);

        let pi1 = fixtures::projection(2, 2, 0);
        let parts = pi1.contour_components();
        assert_eq!(parts.classes[0].tuple_indices, vec![0, 1]);
        assert_eq!(parts.classes[1].tuple_indices, vec![2, 3]);
    }

    #[test]
    fn contour_quasitriviality_matches_direct_definition_k2() {
        // all 16 binary and all 256 ternary tables on [2]
        for n in [2usize, 3] {
            let len = 1usize << n;
            for mask in 0..(1u32 << len) {
                let values: Vec<u8> = (0..len).map(|i| ((mask >> i) & 1) as u8).collect();
                let t = OperationTable::new(2, n, values).unwrap();
                assert_eq!(t.is_quasitrivial(), t.is_quasitrivial_by_contour());
            }
        }
    }

    #[test]
    fn order_preservation_examples() {
        assert!(fixtures::max_natural(3, 2).is_order_preserving(&[0, 1, 2]).unwrap());
        let sum2 = fixtures::sum_mod2(2);
        assert!(!sum2.is_order_preserving(&[0, 1]).unwrap());
        assert!(!sum2.is_order_preserving(&[1, 0]).unwrap());
        let pi1 = fixtures::projection(3, 2, 0);
        assert!(pi1.is_order_preserving(&[2, 0, 1]).unwrap());
        assert!(matches!(pi1.is_order_preserving(&[0, 1]), Err(Error::NotAPermutation)));
        assert!(matches!(pi1.is_order_preserving(&[0, 1, 1]), Err(Error::NotAPermutation)));
    }

    #[test]
    fn text_format_round_trip() {
        let sum3 = fixtures::sum_mod2(3);
        let text = sum3.to_string();
        assert_eq!(parse_table(&text).unwrap(), sum3);
        let with_comments = format!("# fixture\n{text}# trailing\n");
        assert_eq!(parse_table(&with_comments).unwrap(), sum3);
        assert!(matches!(parse_table("2 3\n1 1 1 1 1 1 1\n"), Err(Error::LengthMismatch { .. })));
        assert!(matches!(parse_table("nonsense"), Err(Error::Parse(_))));
        assert!(matches!(parse_table(""), Err(Error::Parse(_))));
    }

    #[test]
    fn diagonal_helper() {
        assert!(is_diagonal_tuple(&[2, 2, 2]));
        assert!(!is_diagonal_tuple(&[2, 1, 2]));
        assert!(is_diagonal_tuple(&[0]));
    }
}
