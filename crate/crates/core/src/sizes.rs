//! Domain sizes of set-alternating schemes without enumerating the domain.
//!
//! `f_n(A)` is the size of the domain of the set-alternating scheme for `A` on `n`
//! alternatives. Only the elements `2..=n-1` of `A` matter, since 1 and `n` are never the
//! middle of a triple.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::alternatives::AlternativeSet;
use crate::error::{Error, Result};
use crate::scheme::{named_set, NamedSetKind};

/// Arbitrary-precision domain size.
pub type BigCount = BigUint;

/// `f_n(A)` with `A` normalized to `{2..n-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SizeQuery {
    n: usize,
    bits: u128,
}

impl SizeQuery {
    pub fn new(n: usize, set: &AlternativeSet) -> Result<Self> {
        if n == 0 || n > AlternativeSet::MAX_N {
            return Err(Error::InvalidArgument(format!("n must be in 1..={}, got {n}", AlternativeSet::MAX_N)));
        }
        Ok(Self { n, bits: normalize(n, set.bits()) })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn set(&self) -> AlternativeSet {
        AlternativeSet::from_bits(self.n, self.bits)
    }
}

/// Keeps the bits for `2..=n-1`.
fn normalize(n: usize, bits: u128) -> u128 {
    if n < 3 {
        return 0;
    }
    let below_n = (1u128 << n) - 1;
    bits & below_n & !0b11
}

fn pow2(e: usize) -> BigCount {
    BigCount::one() << e
}

fn memo() -> &'static RwLock<HashMap<(usize, u128), BigCount>> {
    static MEMO: OnceLock<RwLock<HashMap<(usize, u128), BigCount>>> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(HashMap::new()))
}

fn f(n: usize, bits: u128) -> BigCount {
    let bits = normalize(n, bits);
    if n <= 2 {
        return BigCount::from(n.max(1));
    }
    if bits == 0 {
        return pow2(n - 1);
    }
    if let Some(v) = memo().read().expect("size memo poisoned").get(&(n, bits)) {
        return v.clone();
    }
    let w = 127 - bits.leading_zeros() as usize;
    let without_w = bits & !(1u128 << w);
    let value = if w == n - 1 {
        f(n - 1, without_w) << 1
    } else {
        // Orders with n last or second last, plus those with w last.
        let mut total: BigCount = (f(n - 1, bits) << 1) + f(n - 1, without_w);
        let subtract: BigCount = (w - 1..=n - 2).map(|j| f(j, without_w)).sum();
        total -= subtract;
        total
    };
    memo().write().expect("size memo poisoned").insert((n, bits), value.clone());
    value
}

/// `f_n(A)` by the doubling and last-alternative recurrences, memoized across calls.
pub fn size_recursive(q: &SizeQuery) -> BigCount {
    f(q.n, q.bits)
}

/// Convenience wrapper: `f_n(A)` for a set and `n`.
pub fn size_of(set: &AlternativeSet, n: usize) -> Result<BigCount> {
    Ok(size_recursive(&SizeQuery::new(n, set)?))
}

/// Closed form for a single-element set. `anchored_from_top` means the element is `n - k`.
pub fn size_single_closed(k: usize, n: usize, anchored_from_top: bool) -> Result<BigCount> {
    if k == 0 || n == 0 {
        return Err(Error::InvalidArgument(format!("need k >= 1 and n >= 1, got k={k}, n={n}")));
    }
    if k == 1 || n <= k + 1 {
        return Ok(pow2(n - 1));
    }
    let low = if anchored_from_top { n - k - 2 } else { k - 2 };
    Ok(BigCount::from(5u8) * pow2(n - 3) - pow2(low))
}

fn binomial(n: usize, k: usize) -> BigCount {
    if k > n {
        return BigCount::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigCount::one();
    for i in 0..k {
        acc = acc * BigCount::from(n - i) / BigCount::from(i + 1);
    }
    acc
}

/// `f_n({2, .., n/2})` in closed form, for even `n` (with `n = 2` giving 2).
pub fn size_half_set(n: usize) -> Result<BigCount> {
    if n < 2 || n % 2 == 1 {
        return Err(Error::InvalidArgument(format!("half-set size needs even n >= 2, got {n}")));
    }
    let half = n / 2;
    let mut total = pow2(n - 1);
    for i in 1..half {
        for j in 1..half {
            total += binomial(i + j - 2, i - 1) * pow2(n - i - j - 2);
        }
    }
    Ok(total)
}

/// `f_n({k, .., n-1}) = 2^{n-1}` for `1 < k < n`.
pub fn size_suffix_set(k: usize, n: usize) -> Result<BigCount> {
    if !(1 < k && k < n) {
        return Err(Error::InvalidArgument(format!("suffix set needs 1 < k < n, got k={k}, n={n}")));
    }
    Ok(pow2(n - 1))
}

/// Size of the common part of all set-alternating domains: 1, 2, 3, 5, 8, ...
pub fn fib_common_size(n: usize) -> Result<BigCount> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let (mut a, mut b) = (BigCount::one(), BigCount::from(2u8));
    for _ in 1..n {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    Ok(a)
}

/// The `k`-th Catalan number.
pub fn catalan(k: usize) -> BigCount {
    binomial(2 * k, k) / BigCount::from(k + 1)
}

/// `w(m) = a(2m)` via `w(0) = 1`, `w(m) = sum_{k=1}^{m} C_{k+1} w(m-k)`.
pub fn catalan_even_size(m: usize) -> BigCount {
    catalan_even_sequence(m).pop().expect("sequence has m + 1 terms")
}

/// `w(0..=m)`.
pub fn catalan_even_sequence(m: usize) -> Vec<BigCount> {
    let cat: Vec<BigCount> = (0..=m + 1).map(catalan).collect();
    let mut w: Vec<BigCount> = Vec::with_capacity(m + 1);
    w.push(BigCount::one());
    for i in 1..=m {
        let value = (1..=i).map(|k| &cat[k + 1] * &w[i - k]).sum();
        w.push(value);
    }
    w
}

/// Size `a(n)` of the even scheme's domain, with `a(0) = 1`.
pub fn even_scheme_size(n: usize) -> BigCount {
    match n {
        0 | 1 => BigCount::one(),
        _ if n % 2 == 0 => catalan_even_size(n / 2),
        _ => catalan_even_size((n - 1) / 2) << 1,
    }
}

/// Whether `a(n)` is odd: exactly when `n = 1` or `n` is a power of two at least 4.
pub fn parity_a(n: usize) -> Result<bool> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    Ok(n == 1 || (n >= 4 && n.is_power_of_two()))
}

/// `w(0..=m)` modulo 2, computed without big integers.
pub fn catalan_even_parities(m: usize) -> Vec<bool> {
    // C_j is odd iff j + 1 is a power of two.
    let cat_odd = |j: usize| (j + 1).is_power_of_two();
    let mut w = vec![true];
    for i in 1..=m {
        let odd = (1..=i).filter(|&k| cat_odd(k + 1) && w[i - k]).count() % 2 == 1;
        w.push(odd);
    }
    w
}

/// `2 + 2√2`, the limiting ratio `a(n) / a(n-2)`.
pub fn growth_constant() -> f64 {
    2.0 + 2.0 * std::f64::consts::SQRT_2
}

/// One row of the growth table.
#[derive(Clone, Debug)]
pub struct GrowthRow {
    pub n: usize,
    pub a_n: BigCount,
    /// `a(n) / a(n-2)`.
    pub ratio: f64,
    /// `|ratio - (2+2√2)| / (2+2√2)`.
    pub relative_error: f64,
    /// `sqrt(ratio)`, the per-alternative growth.
    pub per_alternative: f64,
    /// `f_n(B_n)`, absent below 4 alternatives.
    pub odd_size: Option<BigCount>,
    /// `a(n-2) <= f_n(B_n) <= a(n+2)`.
    pub odd_within_bounds: Option<bool>,
}

fn ratio(a: &BigCount, b: &BigCount) -> f64 {
    a.to_f64().unwrap_or(f64::INFINITY) / b.to_f64().unwrap_or(f64::INFINITY)
}

/// Ratios `a(n)/a(n-2)` against `2+2√2` and the bound `a(n-2) <= f_n(B_n) <= a(n+2)`.
pub fn growth_report(range: std::ops::RangeInclusive<usize>) -> Result<Vec<GrowthRow>> {
    let mut rows = Vec::new();
    for n in range {
        if n < 2 {
            continue;
        }
        let a_n = even_scheme_size(n);
        let prev = even_scheme_size(n - 2);
        let r = ratio(&a_n, &prev);
        let (odd_size, odd_within_bounds) = if n >= 4 {
            let fb = size_of(&named_set(NamedSetKind::Odd, n)?, n)?;
            let ok = prev <= fb && fb <= even_scheme_size(n + 2);
            (Some(fb), Some(ok))
        } else {
            (None, None)
        };
        rows.push(GrowthRow {
            n,
            a_n,
            ratio: r,
            relative_error: (r - growth_constant()).abs() / growth_constant(),
            per_alternative: r.sqrt(),
            odd_size,
            odd_within_bounds,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{EVEN_SEQUENCE_PREFIX, SCHEME_SIZE_TABLE};
    use crate::generate::{count_domain, common_part_domain};
    use crate::scheme::set_alternating_scheme;

    fn set(n: usize, xs: &[usize]) -> AlternativeSet {
        AlternativeSet::from_elements(n, xs.iter().copied()).unwrap()
    }

    fn big(v: u64) -> BigCount {
        BigCount::from(v)
    }

    fn all_inner_sets(n: usize) -> impl Iterator<Item = AlternativeSet> {
        let inner = n.saturating_sub(2);
        (0u128..1 << inner).map(move |b| AlternativeSet::from_bits(n, b << 2))
    }

    #[test]
    fn recursion_examples() {
        assert_eq!(size_of(&set(8, &[2, 3, 5]), 8).unwrap(), big(202));
        assert_eq!(size_of(&set(5, &[2]), 5).unwrap(), big(19));
        assert_eq!(size_of(&set(6, &[2, 4]), 6).unwrap(), big(42));
        for n in 1..=12 {
            assert_eq!(size_of(&AlternativeSet::full(n).unwrap(), n).unwrap(), pow2(n - 1));
            assert_eq!(size_of(&AlternativeSet::empty(n).unwrap(), n).unwrap(), pow2(n - 1));
        }
    }

    #[test]
    fn recursion_reproduces_size_table() {
        for &(n, row) in SCHEME_SIZE_TABLE.iter() {
            let odd = size_of(&named_set(NamedSetKind::Odd, n).unwrap(), n).unwrap();
            let even = size_of(&named_set(NamedSetKind::Even, n).unwrap(), n).unwrap();
            let trunc = size_of(&named_set(NamedSetKind::TruncatedEven, n).unwrap(), n).unwrap();
            assert_eq!([odd, even.clone(), trunc], [big(row[0]), big(row[1]), big(row[2])], "n={n}");
            assert_eq!(even, even_scheme_size(n), "n={n}");
        }
    }

    #[test]
    fn recursion_matches_enumeration_exhaustively() {
        for n in 1..=9 {
            for a in all_inner_sets(n) {
                let counted = count_domain(&set_alternating_scheme(&a, n).unwrap()).unwrap();
                assert_eq!(size_of(&a, n).unwrap(), big(counted), "n={n} A={a}");
            }
        }
    }

    #[test]
    fn lower_bounds_and_symmetry() {
        for n in 2..=11 {
            for a in all_inner_sets(n) {
                let s = size_of(&a, n).unwrap();
                assert!(s >= pow2(n - 1));
                assert!(s >= size_of(&a, n - 1).unwrap() << 1);
                assert_eq!(s, size_of(&a.reverse_complement(), n).unwrap(), "n={n} A={a}");
            }
        }
    }

    #[test]
    fn dominance_of_dropping_top_and_adding_two() {
        for n in 4..=9 {
            for a in all_inner_sets(n) {
                let s = size_of(&a, n).unwrap();
                if a.contains(n - 1) {
                    let mut b = a;
                    b.remove(n - 1);
                    assert!(size_of(&b, n).unwrap() >= s);
                }
                if !a.contains(2) {
                    let mut b = a;
                    b.insert(2).unwrap();
                    assert!(size_of(&b, n).unwrap() >= s);
                }
            }
        }
    }

    #[test]
    fn single_element_closed_forms() {
        assert_eq!(size_single_closed(2, 5, false).unwrap(), big(19));
        assert_eq!(size_single_closed(2, 6, true).unwrap(), big(36));
        assert_eq!(size_single_closed(2, 3, false).unwrap(), big(4));
        for n in 2..=16 {
            for k in 1..=n {
                let from_bottom = size_of(&set(n.max(k), &[k]), n).unwrap();
                assert_eq!(size_single_closed(k, n, false).unwrap(), from_bottom, "k={k} n={n}");
                if k < n {
                    let top = size_of(&set(n, &[n - k]), n).unwrap();
                    assert_eq!(size_single_closed(k, n, true).unwrap(), top, "top k={k} n={n}");
                }
            }
        }
    }

    #[test]
    fn half_and_suffix_sets() {
        let seq: Vec<BigCount> = (1..=6).map(|h| size_half_set(2 * h).unwrap()).collect();
        assert_eq!(seq, [2u64, 9, 42, 194, 884, 3978].map(big));
        for n in (4..=20).step_by(2) {
            let a = AlternativeSet::from_elements(n, 2..=n / 2).unwrap();
            assert_eq!(size_half_set(n).unwrap(), size_of(&a, n).unwrap(), "n={n}");
        }
        assert!(size_half_set(5).is_err());
        assert_eq!(size_suffix_set(2, 7).unwrap(), big(64));
        assert_eq!(size_suffix_set(3, 5).unwrap(), big(16));
        assert!(size_suffix_set(5, 5).is_err());
        for n in 3..=14 {
            for k in 2..n {
                let a = AlternativeSet::from_elements(n, k..n).unwrap();
                assert_eq!(size_of(&a, n).unwrap(), size_suffix_set(k, n).unwrap());
            }
        }
    }

    #[test]
    fn fibonacci_common_part() {
        let first: Vec<BigCount> = (1..=6).map(|n| fib_common_size(n).unwrap()).collect();
        assert_eq!(first, [1u64, 2, 3, 5, 8, 13].map(big));
        for n in 1..=12 {
            assert_eq!(fib_common_size(n).unwrap(), big(common_part_domain(n).unwrap().len() as u64));
        }
        let r = ratio(&fib_common_size(20).unwrap(), &fib_common_size(19).unwrap());
        assert!((r - (1.0 + 5f64.sqrt()) / 2.0).abs() < 1e-3);
    }

    #[test]
    fn catalan_numbers() {
        let c: Vec<BigCount> = (0..=6).map(catalan).collect();
        assert_eq!(c, [1u64, 1, 2, 5, 14, 42, 132].map(big));
    }

    #[test]
    fn catalan_recurrence_gives_even_sizes() {
        let w: Vec<BigCount> = catalan_even_sequence(4);
        assert_eq!(w, [1u64, 2, 9, 42, 199].map(big));
        let a: Vec<BigCount> = (1..=8).map(even_scheme_size).collect();
        assert_eq!(a, EVEN_SEQUENCE_PREFIX.map(big));
        assert_eq!(catalan_even_size(8), big(105323));
        for m in 1..=10 {
            let a2m = named_set(NamedSetKind::Even, 2 * m).map(|s| size_of(&s, 2 * m).unwrap());
            if let Ok(v) = a2m {
                assert_eq!(v, catalan_even_size(m), "m={m}");
            }
        }
    }

    #[test]
    fn parity_matches_recurrence_mod_two() {
        let parities = catalan_even_parities(64);
        for n in 1..=128 {
            let odd = if n % 2 == 1 { n == 1 } else { parities[n / 2] };
            assert_eq!(parity_a(n).unwrap(), odd, "n={n}");
        }
        for m in 0..=40 {
            assert_eq!(parities[m], catalan_even_size(m).bit(0), "m={m}");
        }
        let odd: Vec<usize> = (1..=128).filter(|&n| parity_a(n).unwrap()).collect();
        assert_eq!(odd, [1, 4, 8, 16, 32, 64, 128]);
    }

    #[test]
    fn growth_rates() {
        let rows = growth_report(4..=20).unwrap();
        let last = rows.last().unwrap();
        assert_eq!(last.a_n, big(2446022));
        assert!(last.relative_error < 0.005);
        assert!((last.per_alternative - 2.197368).abs() / 2.197368 < 0.005);
        assert!(rows.iter().all(|r| r.odd_within_bounds == Some(true)));
        let r16 = rows.iter().find(|r| r.n == 16).unwrap();
        assert_eq!(r16.odd_size, Some(big(109104)));
    }
}
