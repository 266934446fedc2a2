//! Weak and total orderings on the carrier, the projection-or-maximum table
//! builder and matcher, and the preimage-count ordering extraction.
//!
//! A weak ordering is stored as its ordered partition into equivalence
//! blocks, least block first. The canonical form (elements sorted inside
//! each block) is produced by every constructor and is the form used for
//! equality everywhere.

use smallvec::SmallVec;

use crate::table::{advance_tuple, OperationTable, Values};
use crate::{Error, Result};

/// An ordered partition of `{0, …, k-1}` into nonempty blocks.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeakOrdering {
    k: usize,
    blocks: Vec<Vec<u8>>,
}

impl WeakOrdering {
    /// Builds and canonicalizes an ordering from its blocks, least first.
    pub fn from_blocks(k: usize, mut blocks: Vec<Vec<u8>>) -> Result<Self> {
        let mut seen = vec![false; k];
        let mut covered = 0usize;
        for block in &mut blocks {
            if block.is_empty() {
                return Err(Error::Domain("empty block in weak ordering".into()));
            }
            block.sort_unstable();
            for &x in block.iter() {
                if x as usize >= k || seen[x as usize] {
                    return Err(Error::Domain(
                        "weak ordering blocks must partition the carrier".into(),
                    ));
                }
                seen[x as usize] = true;
                covered += 1;
            }
        }
        if covered != k {
            return Err(Error::Domain("weak ordering blocks must partition the carrier".into()));
        }
        Ok(WeakOrdering { k, blocks })
    }

    /// The total ordering listing `order` from least to greatest.
    pub fn total_from_order(order: &[u8]) -> Result<Self> {
        WeakOrdering::from_blocks(order.len(), order.iter().map(|&x| vec![x]).collect())
    }

    /// The indifference ordering with all elements in one block.
    pub fn single_block(k: usize) -> Self {
        WeakOrdering { k, blocks: if k == 0 { vec![] } else { vec![(0..k as u8).collect()] } }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn blocks(&self) -> &[Vec<u8>] {
        &self.blocks
    }

    /// All blocks are singletons, i.e. the ordering is antisymmetric.
    pub fn is_total(&self) -> bool {
        self.blocks.iter().all(|b| b.len() == 1)
    }

    /// Element-to-block-level lookup table.
    pub(crate) fn level_map(&self) -> SmallVec<[u8; 32]> {
        let mut levels: SmallVec<[u8; 32]> = smallvec::smallvec![0; self.k];
        for (level, block) in self.blocks.iter().enumerate() {
            for &x in block {
                levels[x as usize] = level as u8;
            }
        }
        levels
    }
}

impl std::fmt::Display for WeakOrdering {
    /// Text form: blocks separated by `<`, elements by `~`, 1-based,
    /// e.g. `2 < 4 < 1 ~ 3`.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rendered: Vec<String> = self
            .blocks
            .iter()
            .map(|b| {
                b.iter().map(|&x| (x as usize + 1).to_string()).collect::<Vec<_>>().join(" ~ ")
            })
            .collect();
        write!(f, "{}", rendered.join(" < "))
    }
}

/// Parses the `a ~ b < c` text form; the carrier size is the number of
/// elements mentioned, which must be exactly `1..=k`.
pub fn parse_weak_ordering(text: &str) -> Result<WeakOrdering> {
    let mut blocks: Vec<Vec<u8>> = Vec::new();
    let mut count = 0usize;
    for block_text in text.split('<') {
        let mut block = Vec::new();
        for token in block_text.split('~') {
            let token = token.trim();
            if token.is_empty() {
                return Err(Error::Parse(format!("empty element in ordering {text:?}")));
            }
            let value: usize = token
                .parse()
                .map_err(|_| Error::Parse(format!("expected an integer, found {token:?}")))?;
            if value < 1 {
                return Err(Error::Parse("ordering elements are 1-based".into()));
            }
            block.push((value - 1) as u8);
            count += 1;
        }
        blocks.push(block);
    }
    WeakOrdering::from_blocks(count, blocks).map_err(|e| Error::Parse(e.to_string()))
}

/// Streams every weak ordering (ordered set partition) of `{0, …, k-1}`
/// exactly once: by block count, then lexicographically by the
/// element-to-level assignment.
pub fn weak_orderings(k: usize) -> WeakOrderings {
    WeakOrderings { k, block_count: 0, pending: Vec::new().into_iter() }
}

pub struct WeakOrderings {
    k: usize,
    block_count: usize,
    pending: std::vec::IntoIter<WeakOrdering>,
}

impl Iterator for WeakOrderings {
    type Item = WeakOrdering;

    fn next(&mut self) -> Option<WeakOrdering> {
        loop {
            if let Some(w) = self.pending.next() {
                return Some(w);
            }
            if self.k == 0 {
                // the empty carrier has exactly one (empty) ordering
                if self.block_count == 0 {
                    self.block_count = 1;
                    return Some(WeakOrdering { k: 0, blocks: vec![] });
                }
                return None;
            }
            self.block_count += 1;
            if self.block_count > self.k {
                return None;
            }
            self.pending = surjective_level_maps(self.k, self.block_count).into_iter();
        }
    }
}

/// All surjective maps `{0,…,k-1} -> {0,…,levels-1}` in lexicographic order,
/// materialized as weak orderings.
fn surjective_level_maps(k: usize, levels: usize) -> Vec<WeakOrdering> {
    fn go(
        k: usize,
        levels: usize,
        assignment: &mut Vec<u8>,
        used: &mut Vec<bool>,
        used_count: usize,
        out: &mut Vec<WeakOrdering>,
    ) {
        let pos = assignment.len();
        if pos == k {
            let mut blocks = vec![Vec::new(); levels];
            for (elem, &level) in assignment.iter().enumerate() {
                blocks[level as usize].push(elem as u8);
            }
            out.push(WeakOrdering { k, blocks });
            return;
        }
        let remaining = k - pos;
        for level in 0..levels {
            let newly_used = !used[level];
            let next_used = used_count + newly_used as usize;
            // prune branches that can no longer cover every level
            if levels - next_used > remaining - 1 {
                continue;
            }
            assignment.push(level as u8);
            used[level] = true;
            go(k, levels, assignment, used, next_used, out);
            if newly_used {
                used[level] = false;
            }
            assignment.pop();
        }
    }

    let mut out = Vec::new();
    go(k, levels, &mut Vec::new(), &mut vec![false; levels], 0, &mut out);
    out
}

/// Per-block selector of the projection used inside that block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BlockChoice {
    First,
    Second,
}

/// A weak ordering plus one projection choice per block: the seed for the
/// projection-or-maximum construction of associative quasitrivial binary
/// tables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KimuraSpec {
    ordering: WeakOrdering,
    choices: Vec<BlockChoice>,
}

impl KimuraSpec {
    /// One choice per block; selectors on singleton blocks are normalized
    /// to `First` since both projections coincide there.
    pub fn new(ordering: WeakOrdering, mut choices: Vec<BlockChoice>) -> Result<Self> {
        if choices.len() != ordering.blocks().len() {
            return Err(Error::Domain(format!(
                "need one choice per block: {} blocks, {} choices",
                ordering.blocks().len(),
                choices.len()
            )));
        }
        for (block, choice) in ordering.blocks().iter().zip(choices.iter_mut()) {
            if block.len() == 1 {
                *choice = BlockChoice::First;
            }
        }
        Ok(KimuraSpec { ordering, choices })
    }

    pub fn ordering(&self) -> &WeakOrdering {
        &self.ordering
    }

    pub fn choices(&self) -> &[BlockChoice] {
        &self.choices
    }
}

/// Builds the binary table that acts as the chosen projection inside each
/// block and as the maximum across blocks. Every table built this way is
/// associative and quasitrivial.
pub fn build_kimura(spec: &KimuraSpec) -> OperationTable {
    let k = spec.ordering.k();
    let levels = spec.ordering.level_map();
    OperationTable::from_fn(k, 2, |t| {
        let (x, y) = (t[0], t[1]);
        let (lx, ly) = (levels[x as usize], levels[y as usize]);
        match lx.cmp(&ly) {
            std::cmp::Ordering::Less => y,
            std::cmp::Ordering::Greater => x,
            std::cmp::Ordering::Equal => match spec.choices[lx as usize] {
                BlockChoice::First => x,
                BlockChoice::Second => y,
            },
        }
    })
    .expect("valid spec shape")
}

/// Returns the per-block selectors if the binary table `g` is of
/// projection-or-maximum form for the ordering `w`, `None` otherwise
/// (including shape mismatches).
pub fn matches_kimura(g: &OperationTable, w: &WeakOrdering) -> Option<Vec<BlockChoice>> {
    if g.n() != 2 || g.k() != w.k() {
        return None;
    }
    let levels = w.level_map();
    let selectors = kimura_selectors(g.values(), g.k(), &levels, w.blocks().len())?;
    Some(selectors.into_iter().map(|s| s.expect("selectors are filled on success")).collect())
}

/// Convenience wrapper: derives the only candidate ordering from the
/// preimage counts, then matches against it.
pub fn derive_kimura(g: &OperationTable) -> Option<(WeakOrdering, Vec<BlockChoice>)> {
    if g.n() != 2 {
        return None;
    }
    let w = ordering_from_preimages(g);
    matches_kimura(g, &w).map(|choices| (w, choices))
}

/// Shared allocation-free matcher core.
pub(crate) fn kimura_selectors(
    gvals: &[u8],
    k: usize,
    levels: &[u8],
    block_count: usize,
) -> Option<SmallVec<[Option<BlockChoice>; 16]>> {
    let mut selectors: SmallVec<[Option<BlockChoice>; 16]> =
        smallvec::smallvec![None; block_count];
    for x in 0..k {
        for y in 0..k {
            let v = gvals[x * k + y];
            let (lx, ly) = (levels[x], levels[y]);
            if lx != ly {
                let expected = if lx > ly { x } else { y };
                if v as usize != expected {
                    return None;
                }
                continue;
            }
            if x == y {
                if v as usize != x {
                    return None;
                }
                continue;
            }
            let vote = if v as usize == x {
                BlockChoice::First
            } else if v as usize == y {
                BlockChoice::Second
            } else {
                return None;
            };
            match selectors[lx as usize] {
                None => selectors[lx as usize] = Some(vote),
                Some(prev) if prev != vote => return None,
                Some(_) => {}
            }
        }
    }
    // singleton blocks never vote
    for s in selectors.iter_mut() {
        if s.is_none() {
            *s = Some(BlockChoice::First);
        }
    }
    Some(selectors)
}

/// Groups elements by equal preimage count, blocks ordered by increasing
/// count. For tables arising from the projection-or-maximum construction
/// this recovers the seed ordering.
pub fn ordering_from_preimages(t: &OperationTable) -> WeakOrdering {
    let counts = t.preimage_counts();
    let mut order: Vec<u8> = (0..t.k() as u8).collect();
    order.sort_by_key(|&x| counts[x as usize]);
    let mut blocks: Vec<Vec<u8>> = Vec::new();
    for &x in &order {
        match blocks.last_mut() {
            Some(block) if counts[block[0] as usize] == counts[x as usize] => block.push(x),
            _ => blocks.push(vec![x]),
        }
    }
    WeakOrdering { k: t.k(), blocks }
}

/// Allocation-free variant of [`ordering_from_preimages`] for the scanning
/// hot path: element-to-level map plus the number of levels.
pub(crate) fn preimage_level_map(t: &OperationTable) -> (SmallVec<[u8; 32]>, usize) {
    let k = t.k();
    let mut counts: SmallVec<[u32; 32]> = smallvec::smallvec![0; k];
    for &v in t.values() {
        counts[v as usize] += 1;
    }
    let mut order: SmallVec<[u8; 32]> = (0..k as u8).collect();
    order.sort_unstable_by_key(|&x| counts[x as usize]);
    let mut levels: SmallVec<[u8; 32]> = smallvec::smallvec![0; k];
    let mut level = 0u8;
    let mut prev = counts[order[0] as usize];
    for &x in order.iter() {
        if counts[x as usize] != prev {
            level += 1;
            prev = counts[x as usize];
        }
        levels[x as usize] = level;
    }
    (levels, level as usize + 1)
}

/// The table of the n-ary maximum for `w`, defined only where the tuple has
/// a single maximal element; total exactly when `w` is total.
pub fn max_n(w: &WeakOrdering, n: usize) -> Result<OperationTable> {
    let k = w.k();
    if k == 0 {
        return Err(Error::ArityOrSizeInvalid { k, n });
    }
    let levels = w.level_map();
    let len = crate::table::checked_table_len(k, n)?;
    let mut values = Values::with_capacity(len);
    let mut tuple: SmallVec<[u8; 16]> = smallvec::smallvec![0; n];
    loop {
        let mut best = tuple[0];
        let mut ambiguous = false;
        for &x in tuple.iter().skip(1) {
            match levels[x as usize].cmp(&levels[best as usize]) {
                std::cmp::Ordering::Greater => {
                    best = x;
                    ambiguous = false;
                }
                std::cmp::Ordering::Equal => {
                    if x != best {
                        ambiguous = true;
                    }
                }
                std::cmp::Ordering::Less => {}
            }
        }
        if ambiguous {
            return Err(Error::partial_operation(&tuple));
        }
        values.push(best);
        if !advance_tuple(&mut tuple, k) {
            break;
        }
    }
    Ok(OperationTable::from_values_unchecked(k, n, values))
}
