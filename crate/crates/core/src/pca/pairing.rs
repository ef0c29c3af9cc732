//! Cantor pairing `<a,b> = ((a+b)(a+b+1))/2 + b` and right-nested tuples.
//!
//! The generic versions work for any unbounded natural type (`BigUint`);
//! the `u64` versions are checked and are what the evaluator uses.

use num_integer::{Integer, Roots};

/// Natural-number types usable with the generic pairing functions.
pub trait Natural: Clone + Ord + Integer + Roots + From<u8> {}

impl<T: Clone + Ord + Integer + Roots + From<u8>> Natural for T {}

pub fn pair<N: Natural>(a: &N, b: &N) -> N {
    let w = a.clone() + b.clone();
    let t = (w.clone() * (w + N::one())) / N::from(2u8);
    t + b.clone()
}

pub fn unpair<N: Natural>(n: &N) -> (N, N) {
    let eight = N::from(8u8);
    let two = N::from(2u8);
    let root = (eight * n.clone() + N::one()).sqrt();
    let w = (root - N::one()) / two.clone();
    let t = (w.clone() * (w.clone() + N::one())) / two;
    let b = n.clone() - t;
    let a = w - b.clone();
    (a, b)
}

/// Checked pairing on `u64`; `None` when the result does not fit.
pub fn pair_u64(a: u64, b: u64) -> Option<u64> {
    let w = a as u128 + b as u128;
    let v = w.checked_mul(w + 1)? / 2 + b as u128;
    u64::try_from(v).ok()
}

pub fn unpair_u64(n: u64) -> (u64, u64) {
    let n = n as u128;
    let mut w = (8 * n + 1).sqrt();
    w = (w - 1) / 2;
    // guard against rounding in the square root
    while w * (w + 1) / 2 > n {
        w -= 1;
    }
    while (w + 1) * (w + 2) / 2 <= n {
        w += 1;
    }
    let t = w * (w + 1) / 2;
    let b = n - t;
    let a = w - b;
    (a as u64, b as u64)
}

/// Right-nested tuple: `<a>` is `a`, `<a0, rest..>` is `<a0, <rest..>>`, and
/// the empty tuple is `0`.
pub fn tuple(items: &[u64]) -> Option<u64> {
    match items.split_last() {
        None => Some(0),
        Some((last, init)) => {
            let mut acc = *last;
            for x in init.iter().rev() {
                acc = pair_u64(*x, acc)?;
            }
            Some(acc)
        }
    }
}

/// Inverse of [`tuple`] for a known length.
pub fn untuple(n: u64, len: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(len);
    if len == 0 {
        return out;
    }
    let mut rest = n;
    for _ in 0..len - 1 {
        let (a, b) = unpair_u64(rest);
        out.push(a);
        rest = b;
    }
    out.push(rest);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;
    use proptest::prelude::*;

    // Independent oracle: walk the diagonals in order.
    fn diagonal_walk(limit: usize) -> Vec<(u64, u64)> {
        let mut out = Vec::new();
        let mut w = 0u64;
        while out.len() < limit {
            for b in 0..=w {
                out.push((w - b, b));
            }
            w += 1;
        }
        out.truncate(limit);
        out
    }

    #[test]
    fn small_values_by_hand() {
        assert_eq!(pair_u64(0, 0), Some(0));
        assert_eq!(pair_u64(0, 1), Some(2));
        assert_eq!(pair_u64(1, 0), Some(1));
        assert_eq!(unpair_u64(pair_u64(7, 9).unwrap()), (7, 9));
    }

    #[test]
    fn agrees_with_diagonal_enumeration() {
        for (n, (a, b)) in diagonal_walk(5000).into_iter().enumerate() {
            assert_eq!(pair_u64(a, b), Some(n as u64));
            assert_eq!(unpair_u64(n as u64), (a, b));
        }
    }

    #[test]
    fn generic_matches_u64() {
        for a in 0..40u64 {
            for b in 0..40u64 {
                let big = pair(&BigUint::from(a), &BigUint::from(b));
                assert_eq!(big, BigUint::from(pair_u64(a, b).unwrap()));
                assert_eq!(unpair(&big), (BigUint::from(a), BigUint::from(b)));
            }
        }
    }

    #[test]
    fn overflow_is_reported() {
        assert_eq!(pair_u64(u64::MAX, 1), None);
        assert!(pair_u64(1 << 31, 1 << 31).is_some());
    }

    #[test]
    fn tuples_nest_to_the_right() {
        assert_eq!(tuple(&[]), Some(0));
        assert_eq!(tuple(&[5]), Some(5));
        let t = tuple(&[1, 2, 3]).unwrap();
        assert_eq!(t, pair_u64(1, pair_u64(2, 3).unwrap()).unwrap());
        assert_eq!(untuple(t, 3), vec![1, 2, 3]);
    }

    proptest! {
        #[test]
        fn roundtrip_large(a in 0u64..(1 << 31), b in 0u64..(1 << 31)) {
            let n = pair_u64(a, b).unwrap();
            prop_assert_eq!(unpair_u64(n), (a, b));
        }

        #[test]
        fn surjective_large(n in any::<u64>()) {
            let (a, b) = unpair_u64(n);
            prop_assert_eq!(pair_u64(a, b), Some(n));
        }

        #[test]
        fn bigint_roundtrip(a in any::<u64>(), b in any::<u64>()) {
            let (a, b) = (BigUint::from(a), BigUint::from(b));
            prop_assert_eq!(unpair(&pair(&a, &b)), (a, b));
        }
    }
}
