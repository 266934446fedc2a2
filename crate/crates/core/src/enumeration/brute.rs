//! Brute-force counting oracles over the quasitrivial candidate space,
//! either by flat scan or by a pruned depth-first search that rejects a
//! partial table as soon as it violates a fully-determined associativity
//! identity instance.

use num_bigint::BigUint;
use smallvec::SmallVec;

use crate::analysis::fast_assoc_quasitrivial;
use crate::table::{NaiveAssociativityChecker, OperationTable, Values};
use crate::{Error, Result};

use super::generate::{
    domain_product, quasitrivial_cell_domains, scan_quasitrivial_fold, CellDomain, ExecMode,
    DEFAULT_SEARCH_BUDGET,
};

/// Which associativity decision runs on each surviving candidate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AssocOracle {
    /// The exhaustive identity scan (the default and the trust anchor).
    Naive,
    /// The quasitrivial fast path; use after its equivalence with the
    /// naive oracle has been established for the shape at hand.
    Fast,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchStrategy {
    /// Depth-first cell assignment with incremental identity pruning.
    /// Sound and complete for the naive notion of associativity: a branch
    /// is cut only when some fully-determined identity instance already
    /// fails.
    Pruned,
    /// Enumerate every candidate and apply the oracle to each.
    Full,
}

#[derive(Debug, Clone)]
pub struct BruteForceOptions {
    pub oracle: AssocOracle,
    pub strategy: SearchStrategy,
    /// Cost guard on the candidate-space size (not on the visited count).
    pub budget: u64,
    /// Execution mode for the `Full` strategy; the pruned search is
    /// inherently sequential.
    pub mode: ExecMode,
    /// Keep the associative tables themselves (they are few).
    pub collect_tables: bool,
}

impl Default for BruteForceOptions {
    fn default() -> Self {
        BruteForceOptions {
            oracle: AssocOracle::Naive,
            strategy: SearchStrategy::Pruned,
            budget: DEFAULT_SEARCH_BUDGET,
            mode: ExecMode::Parallel,
            collect_tables: false,
        }
    }
}

/// Counts over one `(k, n)` candidate space.
#[derive(Debug, Clone)]
pub struct BruteForceOutcome {
    pub k: usize,
    pub n: usize,
    pub candidate_count: BigUint,
    /// Candidates the oracle accepted.
    pub associative: u64,
    /// Accepted candidates bucketed by neutral-element count 0, 1, 2.
    pub neutral_buckets: [u64; 3],
    /// Accepted candidates with three or more neutral elements; always
    /// zero unless the classification theory is wrong.
    pub neutral_overflow: u64,
    pub symmetric: u64,
    pub symmetric_neutral_buckets: [u64; 3],
    /// The accepted tables in lexicographic order, when requested.
    pub tables: Option<Vec<OperationTable>>,
}

#[derive(Debug)]
struct Acc {
    associative: u64,
    neutral_buckets: [u64; 3],
    neutral_overflow: u64,
    symmetric: u64,
    symmetric_neutral_buckets: [u64; 3],
    tables: Option<Vec<OperationTable>>,
}

impl Acc {
    fn new(collect: bool) -> Acc {
        Acc {
            associative: 0,
            neutral_buckets: [0; 3],
            neutral_overflow: 0,
            symmetric: 0,
            symmetric_neutral_buckets: [0; 3],
            tables: collect.then(Vec::new),
        }
    }

    fn record(&mut self, table: &OperationTable) {
        self.associative += 1;
        let neutrals = table.neutral_elements_buf().len();
        if neutrals <= 2 {
            self.neutral_buckets[neutrals] += 1;
        } else {
            self.neutral_overflow += 1;
        }
        if table.is_symmetric() {
            self.symmetric += 1;
            if neutrals <= 2 {
                self.symmetric_neutral_buckets[neutrals] += 1;
            }
        }
        if let Some(tables) = &mut self.tables {
            tables.push(table.clone());
        }
    }

    fn merge(mut self, other: Acc) -> Acc {
        self.associative += other.associative;
        self.neutral_overflow += other.neutral_overflow;
        self.symmetric += other.symmetric;
        for i in 0..3 {
            self.neutral_buckets[i] += other.neutral_buckets[i];
            self.symmetric_neutral_buckets[i] += other.symmetric_neutral_buckets[i];
        }
        if let (Some(mine), Some(theirs)) = (&mut self.tables, other.tables) {
            mine.extend(theirs);
        }
        self
    }
}

/// Counts associative tables (and their neutral/symmetry breakdown) among
/// all quasitrivial tables of the given shape.
pub fn brute_force_counts(
    k: usize,
    n: usize,
    options: &BruteForceOptions,
) -> Result<BruteForceOutcome> {
    if n < 2 {
        return Err(Error::ArityTooSmall { n });
    }
    let domains = quasitrivial_cell_domains(k, n)?;
    let candidate_count = domain_product(&domains);
    if candidate_count > BigUint::from(options.budget) {
        return Err(Error::CostLimitExceeded {
            required: candidate_count.to_string(),
            budget: options.budget,
        });
    }
    let checker = NaiveAssociativityChecker::new(k, n)?;

    let acc = match options.strategy {
        SearchStrategy::Full => {
            let oracle = options.oracle;
            scan_quasitrivial_fold(
                k,
                n,
                options.budget,
                options.mode,
                || Acc::new(options.collect_tables),
                |mut acc, table| {
                    let verdict = match oracle {
                        AssocOracle::Naive => checker.check(table),
                        AssocOracle::Fast => fast_assoc_quasitrivial(table),
                    };
                    if verdict {
                        acc.record(table);
                    }
                    acc
                },
                Acc::merge,
            )?
        }
        SearchStrategy::Pruned => {
            PrunedDfs::run(k, n, &domains, &checker, options.oracle, options.collect_tables)
        }
    };

    Ok(BruteForceOutcome {
        k,
        n,
        candidate_count,
        associative: acc.associative,
        neutral_buckets: acc.neutral_buckets,
        neutral_overflow: acc.neutral_overflow,
        symmetric: acc.symmetric,
        symmetric_neutral_buckets: acc.symmetric_neutral_buckets,
        tables: acc.tables,
    })
}

/// Agreement statistics between the two associativity oracles over every
/// quasitrivial table of one shape.
#[derive(Debug, Clone)]
pub struct OracleAgreement {
    pub total: u64,
    pub disagreements: u64,
    /// Lexicographically first disagreeing table, if any.
    pub first_disagreement: Option<OperationTable>,
    /// Tables both oracles accept (meaningful when they agree everywhere).
    pub associative: u64,
}

/// Runs both associativity oracles on every quasitrivial table of shape
/// `(k, n)` and reports where they disagree.
pub fn oracle_agreement(
    k: usize,
    n: usize,
    budget: u64,
    mode: ExecMode,
) -> Result<OracleAgreement> {
    if n < 2 {
        return Err(Error::ArityTooSmall { n });
    }
    let checker = NaiveAssociativityChecker::new(k, n)?;
    scan_quasitrivial_fold(
        k,
        n,
        budget,
        mode,
        || OracleAgreement { total: 0, disagreements: 0, first_disagreement: None, associative: 0 },
        |mut acc, table| {
            let naive = checker.check_values(table.values());
            let fast = fast_assoc_quasitrivial(table);
            acc.total += 1;
            if naive != fast {
                acc.disagreements += 1;
                if acc.first_disagreement.is_none() {
                    acc.first_disagreement = Some(table.clone());
                }
            } else if naive {
                acc.associative += 1;
            }
            acc
        },
        |mut a, b| {
            a.total += b.total;
            a.disagreements += b.disagreements;
            a.associative += b.associative;
            if a.first_disagreement.is_none() {
                a.first_disagreement = b.first_disagreement;
            }
            a
        },
    )
}

enum InstanceStatus {
    Holds,
    Violated,
    /// Not yet decidable; becomes decidable exactly when this cell is set.
    Defer(usize),
}

/// Depth-first assignment over the candidate cells in index order.
///
/// Every identity instance is examined exactly when it becomes fully
/// determined: instances are bucketed by the larger of their two inner-cell
/// indices, and an instance whose (value-dependent) outer cells are still
/// unassigned at that point is parked on a watch list keyed by the larger
/// outer index. Watch entries are unwound on backtrack.
struct PrunedDfs<'a> {
    domains: &'a [CellDomain],
    checker: &'a NaiveAssociativityChecker,
    bucket: Vec<Vec<u32>>,
    watch: Vec<Vec<u32>>,
    values: Vec<u8>,
    k: usize,
    n: usize,
    oracle: AssocOracle,
    acc: Acc,
}

impl<'a> PrunedDfs<'a> {
    fn run(
        k: usize,
        n: usize,
        domains: &'a [CellDomain],
        checker: &'a NaiveAssociativityChecker,
        oracle: AssocOracle,
        collect: bool,
    ) -> Acc {
        let cells = domains.len();
        let mut bucket = vec![Vec::new(); cells];
        for (id, inst) in checker.instances.iter().enumerate() {
            let key = inst.inner1.max(inst.inner2) as usize;
            bucket[key].push(id as u32);
        }
        let mut dfs = PrunedDfs {
            domains,
            checker,
            bucket,
            watch: vec![Vec::new(); cells],
            values: vec![0; cells],
            k,
            n,
            oracle,
            acc: Acc::new(collect),
        };
        dfs.descend(0);
        dfs.acc
    }

    fn descend(&mut self, cell: usize) {
        if cell == self.values.len() {
            self.leaf();
            return;
        }
        let choices = self.domains[cell].clone();
        for &v in &choices {
            self.values[cell] = v;
            let mut parked: SmallVec<[u32; 8]> = SmallVec::new();
            if self.check_frontier(cell, &mut parked) {
                self.descend(cell + 1);
            }
            for &target in parked.iter().rev() {
                self.watch[target as usize].pop();
            }
        }
    }

    /// Checks every instance that became decidable (or parkable) at `cell`;
    /// false means some fully-determined instance is violated.
    fn check_frontier(&mut self, cell: usize, parked: &mut SmallVec<[u32; 8]>) -> bool {
        for i in 0..self.bucket[cell].len() {
            let id = self.bucket[cell][i];
            match self.instance_status(id, cell) {
                InstanceStatus::Holds => {}
                InstanceStatus::Violated => return false,
                InstanceStatus::Defer(target) => {
                    self.watch[target].push(id);
                    parked.push(target as u32);
                }
            }
        }
        for i in 0..self.watch[cell].len() {
            let id = self.watch[cell][i];
            match self.instance_status(id, cell) {
                InstanceStatus::Holds => {}
                InstanceStatus::Violated => return false,
                InstanceStatus::Defer(_) => unreachable!("watched instances are decidable"),
            }
        }
        true
    }

    fn instance_status(&self, id: u32, frontier: usize) -> InstanceStatus {
        let inst = &self.checker.instances[id as usize];
        let v1 = self.values[inst.inner1 as usize] as u32;
        let v2 = self.values[inst.inner2 as usize] as u32;
        let o1 = (inst.base1 + inst.w1 * v1) as usize;
        let o2 = (inst.base2 + inst.w2 * v2) as usize;
        let latest = o1.max(o2);
        if latest > frontier {
            InstanceStatus::Defer(latest)
        } else if self.values[o1] == self.values[o2] {
            InstanceStatus::Holds
        } else {
            InstanceStatus::Violated
        }
    }

    fn leaf(&mut self) {
        let table = OperationTable::from_values_unchecked(
            self.k,
            self.n,
            Values::from_slice(&self.values),
        );
        let verdict = match self.oracle {
            AssocOracle::Naive => self.checker.check_values(&self.values),
            AssocOracle::Fast => fast_assoc_quasitrivial(&table),
        };
        if verdict {
            self.acc.record(&table);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts(oracle: AssocOracle, strategy: SearchStrategy) -> BruteForceOptions {
        BruteForceOptions { oracle, strategy, collect_tables: true, ..Default::default() }
    }

    #[test]
    fn ternary_counts_on_two_elements() {
        for strategy in [SearchStrategy::Full, SearchStrategy::Pruned] {
            for oracle in [AssocOracle::Naive, AssocOracle::Fast] {
                let out = brute_force_counts(2, 3, &opts(oracle, strategy)).unwrap();
                assert_eq!(out.candidate_count, BigUint::from(64u32));
                assert_eq!(out.associative, 5);
                assert_eq!(out.neutral_buckets, [2, 2, 1]);
                assert_eq!(out.neutral_overflow, 0);
                assert_eq!(out.symmetric, 3);
                assert_eq!(out.symmetric_neutral_buckets, [0, 2, 1]);
                assert_eq!(out.tables.as_ref().unwrap().len(), 5);
            }
        }
    }

    #[test]
    fn quaternary_counts_on_two_elements() {
        let out = brute_force_counts(2, 4, &opts(AssocOracle::Naive, SearchStrategy::Pruned))
            .unwrap();
        assert_eq!(out.associative, 4);
        assert_eq!(out.neutral_buckets, [2, 2, 0]);
    }

    #[test]
    fn strategies_emit_identical_table_lists() {
        let full = brute_force_counts(2, 3, &opts(AssocOracle::Naive, SearchStrategy::Full))
            .unwrap();
        let pruned = brute_force_counts(2, 3, &opts(AssocOracle::Naive, SearchStrategy::Pruned))
            .unwrap();
        assert_eq!(full.tables, pruned.tables);
    }

    #[test]
    fn binary_counts_match_the_closed_form() {
        for k in 1..=4usize {
            let out = brute_force_counts(k, 2, &opts(AssocOracle::Naive, SearchStrategy::Full))
                .unwrap();
            let expected = super::super::formulas::count_q2(k as u64);
            assert_eq!(BigUint::from(out.associative), expected, "k = {k}");
        }
    }

    #[test]
    fn budget_guard_is_on_the_candidate_space() {
        let mut options = opts(AssocOracle::Naive, SearchStrategy::Pruned);
        options.budget = 1 << 10;
        assert!(matches!(
            brute_force_counts(3, 3, &options),
            Err(Error::CostLimitExceeded { .. })
        ));
    }

    #[test]
    fn arity_one_is_rejected() {
        assert!(matches!(
            brute_force_counts(2, 1, &BruteForceOptions::default()),
            Err(Error::ArityTooSmall { n: 1 })
        ));
    }
}
