//! Exact integer arithmetic on triangular numbers.
//!
//! Everything here is generic over [`PrimInt`] so the same code serves `u32`
//! labels, `u64` counts and signed callers. Nothing goes through floating
//! point: `⌊√(2n + ¼) − ½⌋` is evaluated as `(isqrt(8n + 1) − 1) / 2`.

use std::ops::RangeInclusive;

use num_traits::PrimInt;

use crate::error::{Error, Result};

fn two<T: PrimInt>() -> T {
    T::one() + T::one()
}

/// Integer square root `⌊√n⌋` by Newton iteration. Negative input is a domain error.
pub fn isqrt<T: PrimInt>(n: T) -> Result<T> {
    if n < T::zero() {
        return Err(Error::domain("isqrt of a negative number"));
    }
    if n < two() {
        return Ok(n);
    }
    let bits = (std::mem::size_of::<T>() * 8) as u32 - n.leading_zeros();
    // 2^ceil(bits/2) >= sqrt(n), so the iteration decreases monotonically.
    let mut x = T::one() << (bits as usize).div_ceil(2);
    loop {
        let next = (x + n / x) / two();
        if next >= x {
            return Ok(x);
        }
        x = next;
    }
}

/// `C(k, 2) = k(k-1)/2`, with `C(0, 2) = 0`.
pub fn choose2<T: PrimInt>(k: T) -> Result<T> {
    if k <= T::one() {
        return Ok(T::zero());
    }
    let (even, odd) = if k % two() == T::zero() {
        (k, k - T::one())
    } else {
        (k - T::one(), k)
    };
    (even / two())
        .checked_mul(&odd)
        .ok_or(Error::Overflow("choose2"))
}

/// The `k`-th triangular number `C(k+1, 2)`.
pub fn triangular<T: PrimInt>(k: T) -> Result<T> {
    choose2(k.checked_add(&T::one()).ok_or(Error::Overflow("triangular"))?)
}

/// Largest `k >= 0` with `C(k+1, 2) <= n`.
pub fn triangular_root<T: PrimInt>(n: T) -> Result<T> {
    if n < T::zero() {
        return Err(Error::domain("triangular root of a negative number"));
    }
    let eight = two::<T>() * two() * two();
    let disc = n
        .checked_mul(&eight)
        .and_then(|v| v.checked_add(&T::one()))
        .ok_or(Error::Overflow("triangular_root"))?;
    Ok((isqrt(disc)? - T::one()) / two())
}

/// The unique `k` with `C(k+1, 2) <= n < C(k+2, 2)`, defined for `n >= 1`.
pub fn triangular_k<T: PrimInt>(n: T) -> Result<T> {
    if n < T::one() {
        return Err(Error::domain("triangular_k needs n >= 1"));
    }
    triangular_root(n)
}

/// Chromatic number of the convex segment disjointness graph on `n` points:
/// `n - k` with `k` the triangular root of `n`. Gives 0 for `n` in {0, 1}.
pub fn chi_formula<T: PrimInt>(n: T) -> Result<T> {
    if n < T::zero() {
        return Err(Error::domain("chi is undefined for negative n"));
    }
    Ok(n - triangular_root(n)?)
}

pub fn is_triangular<T: PrimInt>(n: T) -> Result<bool> {
    if n < T::one() {
        return Ok(false);
    }
    Ok(triangular(triangular_root(n)?)? == n)
}

/// One block of the partition of the positive integers into the runs
/// `N_k = [C(k,2)+1, C(k+1,2)]`; `N'_k` drops the top (triangular) element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IntervalBlock<T> {
    pub k: T,
}

impl<T: PrimInt> IntervalBlock<T> {
    pub fn new(k: T) -> Result<Self> {
        if k < T::one() {
            return Err(Error::domain("interval blocks start at k = 1"));
        }
        Ok(IntervalBlock { k })
    }

    /// The block containing `i >= 1`.
    pub fn containing(i: T) -> Result<Self> {
        if i < T::one() {
            return Err(Error::domain("only positive integers lie in a block"));
        }
        Ok(IntervalBlock {
            k: triangular_root(i - T::one())? + T::one(),
        })
    }

    pub fn full(&self) -> Result<RangeInclusive<T>> {
        Ok(choose2(self.k)? + T::one()..=triangular(self.k)?)
    }

    /// `N'_k`; empty for `k = 1`.
    pub fn reduced(&self) -> Result<RangeInclusive<T>> {
        Ok(choose2(self.k)? + T::one()..=triangular(self.k)? - T::one())
    }
}
