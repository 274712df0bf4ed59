//! Subsets of the alternative set `[n] = {1, .., n}`.

use std::fmt;

use crate::error::{Error, Result};

/// A subset of `{1, .., n}` stored as a bitset; bit `a` is alternative `a`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct AlternativeSet {
    bits: u128,
    n: u8,
}

impl AlternativeSet {
    /// Largest ambient size a set can describe.
    pub const MAX_N: usize = 127;

    fn check_n(n: usize) -> Result<()> {
        if n > Self::MAX_N {
            return Err(Error::TooLarge { what: "alternative set", n, limit: Self::MAX_N });
        }
        Ok(())
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::check_n(n)?;
        Ok(Self { bits: 0, n: n as u8 })
    }

    /// The full set `[n]`.
    pub fn full(n: usize) -> Result<Self> {
        Self::check_n(n)?;
        let bits = if n == 0 { 0 } else { ((1u128 << n) - 1) << 1 };
        Ok(Self { bits, n: n as u8 })
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(n: usize, elements: I) -> Result<Self> {
        let mut set = Self::empty(n)?;
        for a in elements {
            set.insert(a)?;
        }
        Ok(set)
    }

    /// Parses a comma- or space-separated list such as `2,3,5`. An empty string is the empty set.
    pub fn parse_list(n: usize, text: &str) -> Result<Self> {
        let mut set = Self::empty(n)?;
        for tok in text.split(|c: char| c == ',' || c.is_whitespace()) {
            let tok = tok.trim().trim_matches(|c| c == '{' || c == '}');
            if tok.is_empty() {
                continue;
            }
            let a: usize = tok
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("not an alternative: {tok:?}")))?;
            set.insert(a)?;
        }
        Ok(set)
    }

    pub(crate) fn from_bits(n: usize, bits: u128) -> Self {
        debug_assert!(n <= Self::MAX_N);
        let mask = if n == 0 { 0 } else { ((1u128 << n) - 1) << 1 };
        Self { bits: bits & mask, n: n as u8 }
    }

    pub fn bits(&self) -> u128 {
        self.bits
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn insert(&mut self, a: usize) -> Result<()> {
        if a == 0 || a > self.n() {
            return Err(Error::AlternativeOutOfRange { alternative: a, n: self.n() });
        }
        self.bits |= 1 << a;
        Ok(())
    }

    pub fn remove(&mut self, a: usize) {
        if a <= Self::MAX_N {
            self.bits &= !(1u128 << a);
        }
    }

    pub fn contains(&self, a: usize) -> bool {
        a <= Self::MAX_N && self.bits >> a & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn max(&self) -> Option<usize> {
        (self.bits != 0).then(|| 127 - self.bits.leading_zeros() as usize)
    }

    pub fn min(&self) -> Option<usize> {
        (self.bits != 0).then(|| self.bits.trailing_zeros() as usize)
    }

    /// Elements in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        let bits = self.bits;
        (1..=self.n()).filter(move |&a| bits >> a & 1 == 1)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// `[n] \ A`.
    pub fn complement(&self) -> Self {
        let full = Self::full(self.n()).expect("n already validated");
        Self { bits: full.bits & !self.bits, n: self.n }
    }

    pub fn union(&self, other: &Self) -> Self {
        Self { bits: self.bits | other.bits, n: self.n.max(other.n) }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        Self { bits: self.bits & other.bits, n: self.n }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.bits & !other.bits == 0
    }

    /// The reverse complement `A* = { n + 1 - i : i in [n] \ A }`.
    pub fn reverse_complement(&self) -> Self {
        let n = self.n();
        let mut out = Self { bits: 0, n: self.n };
        for i in self.complement().iter() {
            out.bits |= 1 << (n + 1 - i);
        }
        out
    }

    /// `A ∩ {2, .., n-1}`: the only alternatives that can be the midpoint of a triple.
    pub fn normalized(&self) -> Self {
        let n = self.n();
        let mut out = *self;
        out.remove(1);
        out.remove(n);
        out
    }

    /// Reinterprets the set over a different ambient size, dropping elements above `n`.
    pub fn with_n(&self, n: usize) -> Result<Self> {
        Self::check_n(n)?;
        Ok(Self::from_bits(n, self.bits))
    }

    /// Size-then-lexicographic comparison of the sorted element lists.
    pub fn cmp_size_lex(&self, other: &Self) -> std::cmp::Ordering {
        self.len().cmp(&other.len()).then_with(|| self.iter().cmp(other.iter()))
    }

    /// Comma-separated element list, `2,3,5`; empty string for the empty set.
    pub fn to_list_string(&self) -> String {
        self.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",")
    }
}

impl fmt::Display for AlternativeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.to_list_string())
    }
}

/// Reverse complement with optional normalization to `{2, .., n-1}`.
pub fn reverse_complement_set(set: &AlternativeSet, normalize: bool) -> AlternativeSet {
    let rc = set.reverse_complement();
    if normalize {
        rc.normalized()
    } else {
        rc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, xs: &[usize]) -> AlternativeSet {
        AlternativeSet::from_elements(n, xs.iter().copied()).unwrap()
    }

    #[test]
    fn reverse_complement_examples() {
        let b8 = set(8, &[2, 3, 5]);
        assert_eq!(reverse_complement_set(&b8, false), set(8, &[1, 2, 3, 5, 8]));
        assert_eq!(reverse_complement_set(&b8, true), b8);

        let b7 = set(7, &[2, 3, 5]);
        assert_eq!(reverse_complement_set(&b7, true), set(7, &[2, 4]));

        let e5 = set(5, &[]);
        assert_eq!(reverse_complement_set(&e5, false), set(5, &[1, 2, 3, 4, 5]));
        assert_eq!(reverse_complement_set(&e5, true), set(5, &[2, 3, 4]));
    }

    #[test]
    fn reverse_complement_is_involution_on_normalized_sets() {
        for n in 1..=10 {
            for bits in 0u128..(1 << n) {
                let a = AlternativeSet::from_bits(n, bits << 1).normalized();
                let back = reverse_complement_set(&reverse_complement_set(&a, true), true);
                assert_eq!(back, a, "n={n} a={a}");
            }
        }
    }

    #[test]
    fn parse_and_bounds() {
        assert_eq!(AlternativeSet::parse_list(8, "2,3,5").unwrap(), set(8, &[2, 3, 5]));
        assert_eq!(AlternativeSet::parse_list(8, "{2, 3}").unwrap(), set(8, &[2, 3]));
        assert!(AlternativeSet::parse_list(8, "").unwrap().is_empty());
        assert!(AlternativeSet::parse_list(4, "5").is_err());
        assert!(AlternativeSet::parse_list(4, "0").is_err());
        assert!(AlternativeSet::empty(128).is_err());
        assert_eq!(set(9, &[2, 7]).max(), Some(7));
        assert_eq!(set(9, &[]).max(), None);
    }

    #[test]
    fn size_lex_order() {
        let mut sets = vec![set(5, &[2, 3]), set(5, &[1]), set(5, &[]), set(5, &[1, 4]), set(5, &[3])];
        sets.sort_by(|a, b| a.cmp_size_lex(b));
        let lists: Vec<_> = sets.iter().map(|s| s.to_vec()).collect();
        assert_eq!(lists, vec![vec![], vec![1], vec![3], vec![1, 4], vec![2, 3]]);
    }
}
