//! Frozen reference tables used across the test corpus and the docs.
//!
//! Carriers are 0-based like the rest of the API, so `sum_mod2` really is
//! addition on Z_2 and `diff_mod3` is `x - y + z` on Z_3.

use crate::table::OperationTable;

/// `F(x_1, …, x_n) = x_1 + … + x_n (mod 2)` on the 2-element carrier.
pub fn sum_mod2(n: usize) -> OperationTable {
    OperationTable::from_fn(2, n, |t| (t.iter().map(|&x| x as usize).sum::<usize>() % 2) as u8)
        .expect("valid fixture shape")
}

/// The n-ary maximum on `{0, …, k-1}` under the natural order.
pub fn max_natural(k: usize, n: usize) -> OperationTable {
    OperationTable::from_fn(k, n, |t| *t.iter().max().expect("n >= 1")).expect("valid fixture shape")
}

/// The projection onto the given coordinate (0-based).
pub fn projection(k: usize, n: usize, coord: usize) -> OperationTable {
    assert!(coord < n, "projection coordinate out of range");
    OperationTable::from_fn(k, n, |t| t[coord]).expect("valid fixture shape")
}

/// `F(x, y, z) = x - y + z (mod 3)`: associative and idempotent but not
/// quasitrivial, the finite analogue of the real-line example.
pub fn diff_mod3() -> OperationTable {
    OperationTable::from_fn(3, 3, |t| {
        ((t[0] as i32 - t[1] as i32 + t[2] as i32).rem_euclid(3)) as u8
    })
    .expect("valid fixture shape")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sum_mod2_matches_hand_tables() {
        assert_eq!(sum_mod2(2).values(), &[0, 1, 1, 0]);
        assert_eq!(sum_mod2(3).values(), &[0, 1, 1, 0, 1, 0, 0, 1]);
    }

    #[test]
    fn diff_mod3_is_associative_idempotent_not_quasitrivial() {
        let t = diff_mod3();
        assert!(t.is_associative_naive().unwrap());
        assert!(t.is_idempotent());
        assert!(!t.is_quasitrivial());
    }

    #[test]
    fn projections_fold_to_endpoints() {
        let pi2 = projection(2, 2, 1);
        assert_eq!(pi2.evaluate(&[0, 1]).unwrap(), 1);
        let pi1 = projection(3, 2, 0);
        assert_eq!(pi1.evaluate(&[2, 0]).unwrap(), 2);
    }
}
