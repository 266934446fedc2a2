//! Deterministic table generators and the chunked scan driver used by the
//! brute-force oracles.
//!
//! Scans partition the candidate space into index ranges and fold each range
//! independently; partial results are merged in range order, so the outcome
//! is identical whether the ranges run sequentially or on a thread pool.

use num_bigint::BigUint;
use smallvec::SmallVec;

use crate::orderings::{weak_orderings, BlockChoice, KimuraSpec};
use crate::table::{advance_tuple, checked_table_len, OperationTable, Values};
use crate::{Error, Result};

/// Default cost guard for candidate-space sizes.
pub const DEFAULT_SEARCH_BUDGET: u64 = 1 << 31;

/// Whether a scan may use the thread pool. With the `parallel` feature
/// disabled, `Parallel` silently degrades to sequential execution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExecMode {
    Sequential,
    Parallel,
}

pub(crate) type CellDomain = SmallVec<[u8; 8]>;

/// Per-cell admissible values of a quasitrivial table: the diagonal is
/// forced, every other cell ranges over the distinct components of its
/// argument tuple.
pub(crate) fn quasitrivial_cell_domains(k: usize, n: usize) -> Result<Vec<CellDomain>> {
    let len = checked_table_len(k, n)?;
    let mut domains = Vec::with_capacity(len);
    let mut tuple: SmallVec<[u8; 16]> = smallvec::smallvec![0; n];
    loop {
        let mut domain = CellDomain::new();
        for &x in tuple.iter() {
            if !domain.contains(&x) {
                domain.push(x);
            }
        }
        domain.sort_unstable();
        domains.push(domain);
        if !advance_tuple(&mut tuple, k) {
            break;
        }
    }
    Ok(domains)
}

pub(crate) fn domain_product(domains: &[CellDomain]) -> BigUint {
    let mut total = BigUint::from(1u32);
    for d in domains {
        total *= d.len() as u32;
    }
    total
}

/// Exact number of quasitrivial tables of the given shape.
pub fn quasitrivial_candidate_count(k: usize, n: usize) -> Result<BigUint> {
    Ok(domain_product(&quasitrivial_cell_domains(k, n)?))
}

fn guarded_total(domains: &[CellDomain], budget: u64) -> Result<u64> {
    let total = domain_product(domains);
    if total > BigUint::from(budget) {
        return Err(Error::CostLimitExceeded { required: total.to_string(), budget });
    }
    Ok(u64::try_from(total).expect("bounded by budget"))
}

/// Streams every quasitrivial table of the given shape exactly once, in
/// lexicographic cell order.
pub fn generate_quasitrivial_tables(k: usize, n: usize, budget: u64) -> Result<QtTables> {
    let domains = quasitrivial_cell_domains(k, n)?;
    guarded_total(&domains, budget)?;
    Ok(QtTables::at_start(k, n, domains))
}

pub struct QtTables {
    k: usize,
    n: usize,
    domains: Vec<CellDomain>,
    digits: Vec<u8>,
    values: Values,
    exhausted: bool,
}

impl QtTables {
    fn at_start(k: usize, n: usize, domains: Vec<CellDomain>) -> Self {
        let digits = vec![0u8; domains.len()];
        let values: Values = domains.iter().map(|d| d[0]).collect();
        QtTables { k, n, domains, digits, values, exhausted: false }
    }

    /// Positions the cursor on the candidate with the given scan index.
    fn at_index(k: usize, n: usize, domains: Vec<CellDomain>, mut index: u64) -> Self {
        let mut digits = vec![0u8; domains.len()];
        for (cell, domain) in domains.iter().enumerate().rev() {
            digits[cell] = (index % domain.len() as u64) as u8;
            index /= domain.len() as u64;
        }
        debug_assert_eq!(index, 0, "index exceeds the candidate space");
        let values: Values =
            domains.iter().zip(digits.iter()).map(|(d, &i)| d[i as usize]).collect();
        QtTables { k, n, domains, digits, values, exhausted: false }
    }

    /// Advances to the next candidate, mutating the shared value buffer;
    /// returns `false` once the space is exhausted.
    fn advance(&mut self) -> bool {
        for cell in (0..self.digits.len()).rev() {
            let domain = &self.domains[cell];
            let next = self.digits[cell] as usize + 1;
            if next < domain.len() {
                self.digits[cell] = next as u8;
                self.values[cell] = domain[next];
                return true;
            }
            self.digits[cell] = 0;
            self.values[cell] = domain[0];
        }
        false
    }

    fn current_table(&self) -> OperationTable {
        OperationTable::from_values_unchecked(self.k, self.n, self.values.clone())
    }
}

impl Iterator for QtTables {
    type Item = OperationTable;

    fn next(&mut self) -> Option<OperationTable> {
        if self.exhausted {
            return None;
        }
        let table = self.current_table();
        if !self.advance() {
            self.exhausted = true;
        }
        Some(table)
    }
}

/// The quasitrivial table at one scan index, for stratified sampling.
pub fn quasitrivial_table_at(k: usize, n: usize, index: u64) -> Result<OperationTable> {
    let domains = quasitrivial_cell_domains(k, n)?;
    let total = domain_product(&domains);
    if BigUint::from(index) >= total {
        return Err(Error::Domain(format!("index {index} outside the candidate space {total}")));
    }
    Ok(QtTables::at_index(k, n, domains, index).current_table())
}

/// Folds a visitor over every quasitrivial table of the given shape.
///
/// The fold must be insensitive to the partitioning: `merge` is applied to
/// chunk results in ascending chunk order, and chunk boundaries are derived
/// only from the candidate count.
pub fn scan_quasitrivial_fold<A, I, F, M>(
    k: usize,
    n: usize,
    budget: u64,
    mode: ExecMode,
    init: I,
    fold: F,
    merge: M,
) -> Result<A>
where
    A: Send,
    I: Fn() -> A + Sync,
    F: Fn(A, &OperationTable) -> A + Sync,
    M: Fn(A, A) -> A,
{
    let domains = quasitrivial_cell_domains(k, n)?;
    let total = guarded_total(&domains, budget)?;
    let chunk_count = total.clamp(1, 1024);
    let run_chunk = |chunk: u64| -> A {
        let start = chunk * total / chunk_count;
        let end = (chunk + 1) * total / chunk_count;
        let mut cursor = QtTables::at_index(k, n, domains.clone(), start.min(total - 1));
        let mut acc = init();
        for _ in start..end {
            acc = fold(acc, &cursor.current_table());
            cursor.advance();
        }
        acc
    };

    let partials: Vec<A> = match mode {
        ExecMode::Sequential => (0..chunk_count).map(run_chunk).collect(),
        #[cfg(feature = "parallel")]
        ExecMode::Parallel => {
            use rayon::prelude::*;
            (0..chunk_count).into_par_iter().map(run_chunk).collect()
        }
        #[cfg(not(feature = "parallel"))]
        ExecMode::Parallel => (0..chunk_count).map(run_chunk).collect(),
    };
    Ok(partials.into_iter().reduce(merge).expect("at least one chunk"))
}

/// All associative quasitrivial binary tables on `[k]`, generated from
/// weak orderings with per-block projection choices and deduplicated by
/// table bytes. Emission order is first-seen and deterministic.
pub fn generate_quasitrivial_associative_binary(k: usize) -> Result<Vec<OperationTable>> {
    if k < 1 {
        return Err(Error::ArityOrSizeInvalid { k, n: 2 });
    }
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for ordering in weak_orderings(k) {
        let wide: Vec<usize> =
            (0..ordering.blocks().len()).filter(|&b| ordering.blocks()[b].len() >= 2).collect();
        for mask in 0u64..(1u64 << wide.len()) {
            let mut choices = vec![BlockChoice::First; ordering.blocks().len()];
            for (bit, &block) in wide.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    choices[block] = BlockChoice::Second;
                }
            }
            let spec = KimuraSpec::new(ordering.clone(), choices).expect("one choice per block");
            let table = crate::orderings::build_kimura(&spec);
            if seen.insert(table.values().to_vec()) {
                out.push(table);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn candidate_counts() {
        assert_eq!(quasitrivial_candidate_count(2, 2).unwrap(), BigUint::from(4u32));
        assert_eq!(quasitrivial_candidate_count(2, 3).unwrap(), BigUint::from(64u32));
        // 18 two-valued cells and 6 three-valued cells
        assert_eq!(
            quasitrivial_candidate_count(3, 3).unwrap(),
            BigUint::from(191_102_976u64)
        );
    }

    #[test]
    fn generator_streams_each_candidate_once() {
        let tables: Vec<_> = generate_quasitrivial_tables(2, 2, 1 << 20).unwrap().collect();
        assert_eq!(tables.len(), 4);
        let distinct: std::collections::HashSet<_> =
            tables.iter().map(|t| t.values().to_vec()).collect();
        assert_eq!(distinct.len(), 4);
        assert!(tables.iter().all(|t| t.is_quasitrivial()));

        assert_eq!(generate_quasitrivial_tables(2, 3, 1 << 20).unwrap().count(), 64);
        assert!(matches!(
            generate_quasitrivial_tables(3, 3, 1 << 10),
            Err(Error::CostLimitExceeded { .. })
        ));
    }

    #[test]
    fn indexing_matches_stream_order() {
        let streamed: Vec<_> = generate_quasitrivial_tables(2, 3, 1 << 20).unwrap().collect();
        for (i, expected) in streamed.iter().enumerate() {
            assert_eq!(&quasitrivial_table_at(2, 3, i as u64).unwrap(), expected);
        }
        assert!(quasitrivial_table_at(2, 3, 64).is_err());
    }

    #[test]
    fn scan_fold_is_partition_independent() {
        let count = |mode| {
            scan_quasitrivial_fold(
                2,
                3,
                1 << 20,
                mode,
                || 0u64,
                |acc, t| acc + t.is_idempotent() as u64,
                |a, b| a + b,
            )
            .unwrap()
        };
        assert_eq!(count(ExecMode::Sequential), 64);
        assert_eq!(count(ExecMode::Parallel), 64);
    }

    #[test]
    fn kimura_generator_counts() {
        assert_eq!(generate_quasitrivial_associative_binary(1).unwrap().len(), 1);
        assert_eq!(generate_quasitrivial_associative_binary(2).unwrap().len(), 4);
        assert_eq!(generate_quasitrivial_associative_binary(3).unwrap().len(), 20);
    }
}
