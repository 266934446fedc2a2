//! Compositions of binary and ternary operations into n-ary ones, the
//! neutral-element and candidate reduction constructions, enumeration of all
//! binary reductions, and the classification of binary tables by their
//! reduction-theoretic role.

use smallvec::SmallVec;

use crate::analysis::is_associative_fast;
use crate::table::{advance_tuple, OperationTable, Values};
use crate::{Error, Result};

/// How a binary reduction in a [`ReductionSet`] was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionOrigin {
    /// `G(x, y) = F(x, e, …, e, y)` for the neutral element `e`.
    FromNeutral(u8),
    /// `G(x, y) = F(x, y, …, y)`, the candidate used when no neutral exists.
    Candidate,
}

/// All binary reductions of an associative quasitrivial operation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionSet {
    pub neutral_elements: Vec<u8>,
    pub reductions: Vec<(ReductionOrigin, OperationTable)>,
    /// True when the list provably contains every binary reduction.
    pub complete: bool,
}

/// Folds `g` over a tuple right-to-left:
/// `g(x_1, g(x_2, … g(x_{n-1}, x_n)))`.
#[inline]
fn fold_binary(g: &OperationTable, tuple: &[u8]) -> u8 {
    let k = g.k();
    let vals = g.values();
    let mut acc = *tuple.last().expect("nonempty tuple");
    for &x in tuple[..tuple.len() - 1].iter().rev() {
        acc = vals[x as usize * k + acc as usize];
    }
    acc
}

/// Folds a ternary `h` right-to-left in windows of two:
/// `h(x_1, x_2, h(x_3, x_4, …))` for odd-length tuples.
#[inline]
fn fold_ternary(h: &OperationTable, tuple: &[u8]) -> u8 {
    debug_assert!(tuple.len() % 2 == 1 && tuple.len() >= 3);
    let k = h.k();
    let vals = h.values();
    let n = tuple.len();
    let mut acc = vals[(tuple[n - 3] as usize * k + tuple[n - 2] as usize) * k + tuple[n - 1] as usize];
    let mut i = n - 3;
    while i >= 2 {
        i -= 2;
        acc = vals[(tuple[i] as usize * k + tuple[i + 1] as usize) * k + acc as usize];
    }
    acc
}

/// The `n_target`-ary composition of an (arbitrary, not necessarily
/// associative) binary table, replacing the last window at every step.
pub fn compose_binary(g: &OperationTable, n_target: usize) -> Result<OperationTable> {
    if g.n() != 2 {
        return Err(Error::ArityMismatch { expected: 2, got: g.n() });
    }
    if n_target < 2 {
        return Err(Error::Domain(format!("composition target arity {n_target} must be >= 2")));
    }
    OperationTable::from_fn(g.k(), n_target, |t| fold_binary(g, t))
}

/// `compose_binary(g, f.n()) == f`, without materializing the composition.
pub(crate) fn compose_binary_equals(g: &OperationTable, f: &OperationTable) -> bool {
    debug_assert_eq!(g.n(), 2);
    debug_assert_eq!(g.k(), f.k());
    let mut tuple: SmallVec<[u8; 16]> = smallvec::smallvec![0; f.n()];
    for &fv in f.values() {
        if fold_binary(g, &tuple) != fv {
            return false;
        }
        advance_tuple(&mut tuple, f.k());
    }
    true
}

/// The odd `n_target`-ary composition of a ternary table.
pub fn compose_ternary(h: &OperationTable, n_target: usize) -> Result<OperationTable> {
    if h.n() != 3 {
        return Err(Error::ArityMismatch { expected: 3, got: h.n() });
    }
    if n_target % 2 == 0 {
        return Err(Error::EvenTargetArity { n: n_target });
    }
    if n_target < 3 {
        return Err(Error::Domain(format!("composition target arity {n_target} must be >= 3")));
    }
    OperationTable::from_fn(h.k(), n_target, |t| fold_ternary(h, t))
}

pub(crate) fn compose_ternary_equals(h: &OperationTable, f: &OperationTable) -> bool {
    debug_assert_eq!(h.n(), 3);
    debug_assert!(f.n() % 2 == 1 && f.n() >= 3);
    let mut tuple: SmallVec<[u8; 16]> = smallvec::smallvec![0; f.n()];
    for &fv in f.values() {
        if fold_ternary(h, &tuple) != fv {
            return false;
        }
        advance_tuple(&mut tuple, f.k());
    }
    true
}

/// `G(x, y) = F(x, e, …, e, y)` for a neutral element `e` of `f`.
///
/// When `f` is associative this is guaranteed to be a binary reduction of
/// `f`; that guarantee is asserted in debug builds.
pub fn reduction_from_neutral(f: &OperationTable, e: u8) -> Result<OperationTable> {
    if f.n() < 2 {
        return Err(Error::ArityTooSmall { n: f.n() });
    }
    if !f.neutral_elements_buf().contains(&e) {
        return Err(Error::NotANeutralElement { element: e as usize + 1 });
    }
    let mut args: SmallVec<[u8; 16]> = smallvec::smallvec![e; f.n()];
    let g = OperationTable::from_fn(f.k(), 2, |t| {
        args[0] = t[0];
        args[f.n() - 1] = t[1];
        f.eval_unchecked(&args)
    })?;
    #[cfg(debug_assertions)]
    {
        if f.is_associative_naive() == Ok(true) {
            debug_assert!(compose_binary_equals(&g, f), "reduction failed to compose back");
        }
    }
    Ok(g)
}

/// `G(x, y) = F(x, y, …, y)`: an associative quasitrivial reduction of `f`
/// exactly when `f` is associative and quasitrivial with at most one neutral
/// element. Total for every input; makes no validity claim by itself.
pub fn candidate_reduction(f: &OperationTable) -> Result<OperationTable> {
    if f.n() < 2 {
        return Err(Error::ArityTooSmall { n: f.n() });
    }
    let mut args: SmallVec<[u8; 16]> = smallvec::smallvec![0; f.n()];
    OperationTable::from_fn(f.k(), 2, |t| {
        args[0] = t[0];
        args[1..].fill(t[1]);
        f.eval_unchecked(&args)
    })
}

/// A ternary reduction of an associative quasitrivial operation of odd
/// arity: the square of the binary reduction picked by `e` (or the least
/// neutral element, or the candidate when at most one neutral exists).
pub fn ternary_reduction(f: &OperationTable, e: Option<u8>) -> Result<OperationTable> {
    if f.n() % 2 == 0 {
        return Err(Error::EvenTargetArity { n: f.n() });
    }
    if f.n() < 3 {
        return Err(Error::ArityTooSmall { n: f.n() });
    }
    let neutrals = f.neutral_elements_buf();
    let g = match e {
        Some(e) => reduction_from_neutral(f, e)?,
        None if neutrals.len() <= 1 => candidate_reduction(f)?,
        None => reduction_from_neutral(f, neutrals[0])?,
    };
    let h = compose_binary(&g, 3)?;
    if !compose_ternary_equals(&h, f) {
        return Err(Error::NotReducible);
    }
    Ok(h)
}

/// Every binary reduction of `f`, which must be associative and
/// quasitrivial: one reduction per neutral element when any exist, otherwise
/// exactly the candidate reduction. Each returned table is verified to
/// compose back to `f`.
pub fn all_binary_reductions(f: &OperationTable) -> Result<ReductionSet> {
    if !f.is_quasitrivial() || !is_associative_fast(f)? {
        return Err(Error::NotAssociativeQuasitrivial);
    }
    let neutral_elements = f.neutral_elements();
    let mut reductions = Vec::new();
    if neutral_elements.is_empty() {
        let g = candidate_reduction(f)?;
        if !compose_binary_equals(&g, f) {
            return Err(Error::InternalContradiction(
                "candidate reduction failed to compose back".into(),
            ));
        }
        reductions.push((ReductionOrigin::Candidate, g));
    } else {
        for &e in &neutral_elements {
            let g = reduction_from_neutral(f, e)?;
            if !compose_binary_equals(&g, f) {
                return Err(Error::InternalContradiction(format!(
                    "reduction through neutral element {} failed to compose back",
                    e as usize + 1
                )));
            }
            reductions.push((ReductionOrigin::FromNeutral(e), g));
        }
    }
    Ok(ReductionSet { neutral_elements, reductions, complete: true })
}

/// The reduction-theoretic class of a binary table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinaryClassTag {
    /// Associative, quasitrivial, exactly one neutral element.
    Q12,
    /// Associative with exactly one neutral element, quasitrivial except on
    /// one diagonal cell that maps to the neutral element.
    A12MinusQ12,
    /// Associative and quasitrivial with no neutral element.
    QuasitrivialNoNeutral,
    Other,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BinaryClass {
    pub tag: BinaryClassTag,
    pub neutral: Option<u8>,
    /// The pair `(x, e)` with `G(x, x) = e` witnessing the exceptional
    /// two-element subsemigroup, present exactly for `A12MinusQ12`.
    pub exceptional_pair: Option<(u8, u8)>,
}

/// Classifies a binary table as `Q12`, `A12MinusQ12`,
/// `QuasitrivialNoNeutral` or `Other`.
pub fn classify_binary(g: &OperationTable) -> Result<BinaryClass> {
    if g.n() != 2 {
        return Err(Error::ArityMismatch { expected: 2, got: g.n() });
    }
    let associative = g.is_associative_naive()?;
    let quasitrivial = g.is_quasitrivial();
    let neutrals = g.neutral_elements_buf();
    debug_assert!(neutrals.len() <= 1, "a binary operation has at most one neutral element");
    let neutral = neutrals.first().copied();

    let tag = if associative && quasitrivial {
        if neutral.is_some() {
            BinaryClassTag::Q12
        } else {
            BinaryClassTag::QuasitrivialNoNeutral
        }
    } else if associative && !quasitrivial {
        match neutral {
            Some(e) if a12_membership(g, e) => BinaryClassTag::A12MinusQ12,
            _ => BinaryClassTag::Other,
        }
    } else {
        BinaryClassTag::Other
    };

    let exceptional_pair = if tag == BinaryClassTag::A12MinusQ12 {
        let e = neutral.expect("tag requires a neutral element");
        let x = (0..g.k() as u8)
            .find(|&x| x != e && g.values()[x as usize * g.k() + x as usize] == e)
            .expect("tag requires an exceptional diagonal cell");
        Some((x, e))
    } else {
        None
    };

    Ok(BinaryClass { tag, neutral, exceptional_pair })
}

/// The three defining conditions of the class with one neutral element and
/// conservative behaviour off the diagonal, given `e` neutral for `g`.
fn a12_membership(g: &OperationTable, e: u8) -> bool {
    let k = g.k();
    let vals = g.values();
    // G(x, x) in {e, x}; G(x, y) in {x, y} off the diagonal
    let mut exceptional: SmallVec<[u8; 4]> = SmallVec::new();
    for x in 0..k as u8 {
        for y in 0..k as u8 {
            let v = vals[x as usize * k + y as usize];
            if x == y {
                if v != x && v != e {
                    return false;
                }
                if v == e && x != e {
                    exceptional.push(x);
                }
            } else if v != x && v != y {
                return false;
            }
        }
    }
    match exceptional.as_slice() {
        [] => true,
        [x] => {
            let x = *x;
            (0..k as u8).filter(|&y| y != x && y != e).all(|y| {
                vals[x as usize * k + y as usize] == y && vals[y as usize * k + x as usize] == y
            })
        }
        _ => false,
    }
}

/// Restriction of a table to a sub-carrier, relabeled to `{0, …, m-1}` in
/// the order given. The subset must be closed under the operation.
pub fn restrict(t: &OperationTable, subset: &[u8]) -> Result<OperationTable> {
    if subset.is_empty() {
        return Err(Error::Domain("restriction subset must be nonempty".into()));
    }
    let mut position: Vec<Option<u8>> = vec![None; t.k()];
    for (i, &x) in subset.iter().enumerate() {
        if x as usize >= t.k() || position[x as usize].is_some() {
            return Err(Error::Domain("restriction subset must be distinct carrier elements".into()));
        }
        position[x as usize] = Some(i as u8);
    }
    let mut args: SmallVec<[u8; 16]> = smallvec::smallvec![0; t.n()];
    let mut out = Values::with_capacity(subset.len().pow(t.n() as u32));
    let mut tuple: SmallVec<[u8; 16]> = smallvec::smallvec![0; t.n()];
    loop {
        for (slot, &local) in args.iter_mut().zip(tuple.iter()) {
            *slot = subset[local as usize];
        }
        let v = t.eval_unchecked(&args);
        match position[v as usize] {
            Some(local) => out.push(local),
            None => {
                return Err(Error::Domain(
                    "restriction subset is not closed under the operation".into(),
                ))
            }
        }
        if !advance_tuple(&mut tuple, subset.len()) {
            break;
        }
    }
    Ok(OperationTable::from_values_unchecked(subset.len(), t.n(), out))
}
