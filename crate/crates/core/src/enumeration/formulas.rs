//! Closed-form counting formulas, in exact unbounded-precision arithmetic.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

pub fn factorial(n: u64) -> BigUint {
    let mut out = BigUint::one();
    for i in 2..=n {
        out *= i;
    }
    out
}

pub fn binomial(n: u64, r: u64) -> BigUint {
    if r > n {
        return BigUint::zero();
    }
    let r = r.min(n - r);
    let mut out = BigUint::one();
    for i in 0..r {
        out = out * (n - i) / (i + 1);
    }
    out
}

/// Stirling number of the second kind, by the two-term recurrence.
pub fn stirling2(k: u64, l: u64) -> Result<BigUint> {
    if l > k {
        return Err(Error::Domain(format!("stirling2 needs 0 <= l <= k, got k={k}, l={l}")));
    }
    // row-by-row: S(i, j) = j S(i-1, j) + S(i-1, j-1)
    let mut row = vec![BigUint::zero(); l as usize + 1];
    row[0] = BigUint::one();
    for _ in 1..=k {
        for j in (1..row.len()).rev() {
            row[j] = &row[j] * j as u32 + &row[j - 1];
        }
        row[0] = BigUint::zero();
    }
    Ok(row[l as usize].clone())
}

/// The alternating-sum form of the Stirling number, retained as a
/// cross-check for the recurrence.
pub fn stirling2_alternating(k: u64, l: u64) -> Result<BigUint> {
    if l > k {
        return Err(Error::Domain(format!("stirling2 needs 0 <= l <= k, got k={k}, l={l}")));
    }
    let mut sum = BigInt::zero();
    for i in 0..=l {
        let term = BigInt::from(binomial(l, i)) * BigInt::from(i).pow(k as u32);
        if (l - i) % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    debug_assert!(!sum.is_negative());
    let sum = sum.to_biguint().expect("alternating sum is nonnegative");
    let l_fact = factorial(l);
    debug_assert!((&sum % &l_fact).is_zero());
    Ok(sum / l_fact)
}

/// Ordered Bell number: how many weak orderings a `k`-element set carries.
pub fn fubini(k: u64) -> BigUint {
    let mut a = vec![BigUint::one()];
    for n in 1..=k {
        let mut next = BigUint::zero();
        for j in 1..=n {
            next += binomial(n, j) * &a[(n - j) as usize];
        }
        a.push(next);
    }
    a[k as usize].clone()
}

/// Number of associative quasitrivial binary operations on `[k]`.
pub fn count_q2(k: u64) -> BigUint {
    let mut total = BigInt::zero();
    for i in 0..=k {
        let mut inner = BigInt::zero();
        for l in 0..=(k - i) {
            let term = BigInt::from(
                binomial(k, l) * stirling2(k - l, i).expect("l <= k") * factorial(i + l),
            );
            if l % 2 == 0 {
                inner += term;
            } else {
                inner -= term;
            }
        }
        total += BigInt::from(2u32).pow(i as u32) * inner;
    }
    debug_assert!(!total.is_negative());
    total.to_biguint().expect("count is nonnegative")
}

/// ... with exactly one neutral element: `k * q2(k-1)`.
pub fn count_q2_1(k: u64) -> Result<BigUint> {
    if k < 1 {
        return Err(Error::Domain("q2_1 is defined for k >= 1".into()));
    }
    Ok(count_q2(k - 1) * k)
}

/// Size of the one-neutral almost-quasitrivial binary class:
/// `k q2(k-1) + k(k-1) q2(k-2)` for `k >= 2`, and 1 for `k = 1`.
pub fn count_a2_1(k: u64) -> Result<BigUint> {
    match k {
        0 => Err(Error::Domain("a2_1 is defined for k >= 1".into())),
        1 => Ok(BigUint::one()),
        _ => Ok(count_q2(k - 1) * k + count_q2(k - 2) * (k * (k - 1))),
    }
}

/// Parity of the arity, which the n-ary counts depend on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NParity {
    Even,
    Odd,
}

impl NParity {
    pub fn of(n: usize) -> NParity {
        if n % 2 == 0 { NParity::Even } else { NParity::Odd }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            NParity::Even => "even",
            NParity::Odd => "odd",
        }
    }
}

fn require_k_positive(k: u64, what: &str) -> Result<()> {
    if k < 1 {
        return Err(Error::Domain(format!("{what} is defined for k >= 1")));
    }
    Ok(())
}

/// Associative quasitrivial n-ary operations with no neutral element.
pub fn count_qn_0(k: u64) -> Result<BigUint> {
    require_k_positive(k, "qn_0")?;
    Ok(count_q2(k) - count_q2_1(k)?)
}

/// ... with exactly one neutral element (independent of `n`).
pub fn count_qn_1(k: u64) -> Result<BigUint> {
    require_k_positive(k, "qn_1")?;
    count_q2_1(k)
}

/// ... with two neutral elements: zero for even `n`,
/// `C(k,2) q2(k-2)` for odd `n`.
pub fn count_qn_2(k: u64, parity: NParity) -> Result<BigUint> {
    require_k_positive(k, "qn_2")?;
    match parity {
        NParity::Even => Ok(BigUint::zero()),
        NParity::Odd if k == 1 => Ok(BigUint::zero()),
        NParity::Odd => Ok(binomial(k, 2) * count_q2(k - 2)),
    }
}

/// All associative quasitrivial n-ary operations on `[k]`.
pub fn count_qn(k: u64, parity: NParity) -> Result<BigUint> {
    require_k_positive(k, "qn")?;
    Ok(count_q2(k) + count_qn_2(k, parity)?)
}

/// The symmetric family for one `(k, n-parity)` pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QsCounts {
    /// Symmetric associative quasitrivial binary operations: `k!`.
    pub qs2: BigUint,
    /// ... n-ary with exactly one neutral element: `k!`.
    pub qsn_1: BigUint,
    /// ... n-ary with two neutral elements: `k!/2` for odd `n`, else 0.
    pub qsn_2: BigUint,
    /// All symmetric associative quasitrivial n-ary operations.
    pub qsn: BigUint,
    /// Symmetric members of the one-neutral almost-quasitrivial class:
    /// `2 k!` for `k >= 2`, and 1 for `k = 1`.
    pub as2_1: BigUint,
}

pub fn count_qs_family(k: u64, parity: NParity) -> Result<QsCounts> {
    require_k_positive(k, "qs family")?;
    let kf = factorial(k);
    if k == 1 {
        return Ok(QsCounts {
            qs2: BigUint::one(),
            qsn_1: BigUint::one(),
            qsn_2: BigUint::zero(),
            qsn: BigUint::one(),
            as2_1: BigUint::one(),
        });
    }
    let qsn_2 = match parity {
        NParity::Even => BigUint::zero(),
        NParity::Odd => &kf / 2u32,
    };
    Ok(QsCounts {
        qs2: kf.clone(),
        qsn_1: kf.clone(),
        qsn: &kf + &qsn_2,
        qsn_2,
        as2_1: &kf * 2u32,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn stirling_examples_and_cross_check() {
        assert_eq!(stirling2(3, 2).unwrap(), big(3));
        assert_eq!(stirling2(4, 4).unwrap(), big(1));
        assert_eq!(stirling2(4, 2).unwrap(), big(7));
        assert_eq!(stirling2(0, 0).unwrap(), big(1));
        assert!(stirling2(2, 3).is_err());
        for k in 0..=20u64 {
            for l in 0..=k {
                assert_eq!(
                    stirling2(k, l).unwrap(),
                    stirling2_alternating(k, l).unwrap(),
                    "disagreement at ({k}, {l})"
                );
            }
        }
    }

    #[test]
    fn fubini_small_values() {
        let values: Vec<BigUint> = (0..=5).map(fubini).collect();
        assert_eq!(values, vec![big(1), big(1), big(3), big(13), big(75), big(541)]);
    }

    #[test]
    fn q2_small_values() {
        assert_eq!(count_q2(0), big(1));
        assert_eq!(count_q2(1), big(1));
        assert_eq!(count_q2(2), big(4));
        assert_eq!(count_q2(4), big(138));
    }

    #[test]
    fn q2_1_and_a2_1_values() {
        assert_eq!(count_q2_1(1).unwrap(), big(1));
        assert_eq!(count_q2_1(3).unwrap(), big(12));
        assert_eq!(count_q2_1(6).unwrap(), big(7092));
        assert!(count_q2_1(0).is_err());
        assert_eq!(count_a2_1(1).unwrap(), big(1));
        assert_eq!(count_a2_1(2).unwrap(), big(4));
        assert_eq!(count_a2_1(4).unwrap(), big(128));
    }

    #[test]
    fn qn_values_and_parity() {
        assert_eq!(count_qn(3, NParity::Odd).unwrap(), big(23));
        assert_eq!(count_qn_2(5, NParity::Odd).unwrap(), big(200));
        for k in 1..=8 {
            assert_eq!(count_qn_2(k, NParity::Even).unwrap(), big(0));
            assert_eq!(count_qn(k, NParity::Even).unwrap(), count_q2(k));
        }
        assert_eq!(count_qn(1, NParity::Odd).unwrap(), big(1));
        assert_eq!(count_qn_1(1).unwrap(), big(1));
    }

    #[test]
    fn qs_values() {
        let qs = count_qs_family(3, NParity::Odd).unwrap();
        assert_eq!(qs.qs2, big(6));
        assert_eq!(qs.as2_1, big(12));
        assert_eq!(qs.qsn, big(9));
        assert_eq!(qs.qsn_2, big(3));
        let qs = count_qs_family(2, NParity::Even).unwrap();
        assert_eq!(qs.as2_1, big(4));
        assert_eq!(qs.qsn, big(2));
        assert_eq!(qs.qsn_2, big(0));
        let qs = count_qs_family(1, NParity::Odd).unwrap();
        assert_eq!(qs.qsn, big(1));
    }

    #[test]
    fn internal_identities_hold_for_a_range_of_k() {
        for k in 1..=12u64 {
            let q2 = count_q2(k);
            let q2_1 = count_q2_1(k).unwrap();
            let a2_1 = count_a2_1(k).unwrap();
            let qn_0 = count_qn_0(k).unwrap();
            let qn_1 = count_qn_1(k).unwrap();
            for parity in [NParity::Even, NParity::Odd] {
                let qn_2 = count_qn_2(k, parity).unwrap();
                let qn = count_qn(k, parity).unwrap();
                assert_eq!(qn, &qn_0 + &qn_1 + &qn_2);
            }
            if k >= 1 {
                assert_eq!(a2_1, &q2_1 + if k >= 2 { count_q2_1(k - 1).unwrap() * k } else { BigUint::zero() });
            }
            // two-neutral count is half the non-quasitrivial one-neutral class
            let qn_2 = count_qn_2(k, NParity::Odd).unwrap();
            assert_eq!(&qn_2 * 2u32, &a2_1 - &q2_1);
            let _ = q2;

            let qs = count_qs_family(k, NParity::Odd).unwrap();
            assert_eq!(&qs.qsn_2 * 2u32, &qs.as2_1 - &qs.qs2);
            if k >= 3 {
                assert_eq!(qs.as2_1, &qs.qs2 + factorial(k - 1) * k);
            }
        }
    }
}
