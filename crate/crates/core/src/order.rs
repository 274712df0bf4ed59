//! Linear orders (rankings) and axis-sorted triples.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::alternatives::AlternativeSet;
use crate::error::{Error, Result};

/// Largest label an order may carry.
pub const MAX_ORDER_LEN: usize = 32;

const ABSENT: u8 = u8::MAX;

/// A ranking of alternatives, best first.
///
/// Labels are kept as given, so a restricted order over `{2, 3, 5}` still talks about
/// alternatives 2, 3 and 5. The inverse rank table is kept alongside the ranking so
/// precedence queries are O(1).
#[derive(Clone, Copy)]
pub struct LinearOrder {
    len: u8,
    ranking: [u8; MAX_ORDER_LEN],
    rank: [u8; MAX_ORDER_LEN + 1],
}

impl LinearOrder {
    /// Builds an order from a best-first ranking of distinct labels in `1..=32`.
    pub fn new(ranking: &[u8]) -> Result<Self> {
        if ranking.len() > MAX_ORDER_LEN {
            return Err(Error::TooLarge { what: "linear order", n: ranking.len(), limit: MAX_ORDER_LEN });
        }
        let mut order = Self { len: ranking.len() as u8, ranking: [0; MAX_ORDER_LEN], rank: [ABSENT; MAX_ORDER_LEN + 1] };
        for (pos, &a) in ranking.iter().enumerate() {
            if a == 0 || a as usize > MAX_ORDER_LEN {
                return Err(Error::InvalidOrder(format!("label {a} outside 1..={MAX_ORDER_LEN}")));
            }
            if order.rank[a as usize] != ABSENT {
                return Err(Error::InvalidOrder(format!("alternative {a} repeated")));
            }
            order.rank[a as usize] = pos as u8;
            order.ranking[pos] = a;
        }
        Ok(order)
    }

    /// Builds an order from a ranking the caller guarantees to be valid.
    pub(crate) fn from_ranking_unchecked(ranking: &[u8]) -> Self {
        let mut order = Self { len: ranking.len() as u8, ranking: [0; MAX_ORDER_LEN], rank: [ABSENT; MAX_ORDER_LEN + 1] };
        for (pos, &a) in ranking.iter().enumerate() {
            order.rank[a as usize] = pos as u8;
            order.ranking[pos] = a;
        }
        order
    }

    /// The order `1 2 .. n`.
    pub fn identity(n: usize) -> Result<Self> {
        let ranking: Vec<u8> = (1..=n as u8).collect();
        Self::new(&ranking)
    }

    /// Parses either a digit string (`"652314"`, labels 1..9) or space/comma separated labels.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let labels: Vec<u8> = if text.contains(|c: char| c.is_whitespace() || c == ',') {
            text.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<u8>().map_err(|_| Error::InvalidOrder(format!("bad label {t:?}"))))
                .collect::<Result<_>>()?
        } else {
            text.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as u8)
                        .ok_or_else(|| Error::InvalidOrder(format!("bad label {c:?}")))
                })
                .collect::<Result<_>>()?
        };
        Self::new(&labels)
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn ranking(&self) -> &[u8] {
        &self.ranking[..self.len()]
    }

    /// 0-based position of `a`, best = 0.
    pub fn position(&self, a: usize) -> Option<usize> {
        match self.rank.get(a) {
            Some(&r) if r != ABSENT => Some(r as usize),
            _ => None,
        }
    }

    /// Position lookup for a label known to be present.
    #[inline]
    pub(crate) fn pos(&self, a: usize) -> usize {
        self.rank[a] as usize
    }

    /// Whether `a` is ranked above `b`. Both must be present.
    #[inline]
    pub fn prefers(&self, a: usize, b: usize) -> bool {
        self.rank[a] < self.rank[b]
    }

    pub fn alternatives(&self) -> u128 {
        self.ranking().iter().fold(0u128, |acc, &a| acc | 1 << a)
    }

    pub fn is_permutation_of(&self, set: &AlternativeSet) -> bool {
        self.alternatives() == set.bits()
    }

    /// The dual order (worst first).
    pub fn reversed(&self) -> Self {
        let mut r: Vec<u8> = self.ranking().to_vec();
        r.reverse();
        Self::from_ranking_unchecked(&r)
    }

    /// Applies `relabel` to every alternative.
    pub fn relabeled(&self, relabel: impl Fn(u8) -> u8) -> Result<Self> {
        let r: Vec<u8> = self.ranking().iter().map(|&a| relabel(a)).collect();
        Self::new(&r)
    }

    /// The induced order on `set`, keeping original labels.
    pub fn restrict(&self, set: &AlternativeSet) -> Result<Self> {
        if set.is_empty() {
            return Err(Error::EmptyRestriction);
        }
        if set.bits() & !self.alternatives() != 0 {
            return Err(Error::InvalidArgument(format!("restriction set {set} not contained in the order's alternatives")));
        }
        let r: Vec<u8> = self.ranking().iter().copied().filter(|&a| set.contains(a as usize)).collect();
        Ok(Self::from_ranking_unchecked(&r))
    }
}

/// The induced order of `order` on `set`.
pub fn restrict_order(order: &LinearOrder, set: &AlternativeSet) -> Result<LinearOrder> {
    order.restrict(set)
}

impl PartialEq for LinearOrder {
    fn eq(&self, other: &Self) -> bool {
        self.ranking() == other.ranking()
    }
}

impl Eq for LinearOrder {}

impl Hash for LinearOrder {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ranking().hash(state)
    }
}

impl PartialOrd for LinearOrder {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LinearOrder {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ranking().cmp(other.ranking())
    }
}

impl fmt::Display for LinearOrder {
    /// Digit string when every label is a single digit, space separated otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ranking().iter().all(|&a| a <= 9) {
            for a in self.ranking() {
                write!(f, "{a}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.ranking().iter().map(|a| a.to_string()).collect();
            write!(f, "{}", parts.join(" "))
        }
    }
}

impl fmt::Debug for LinearOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearOrder({self})")
    }
}

/// An ascending triple `i < j < k`; `j` is the midpoint.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Triple {
    pub i: u8,
    pub j: u8,
    pub k: u8,
}

impl Triple {
    pub fn new(i: usize, j: usize, k: usize) -> Result<Self> {
        if !(1 <= i && i < j && j < k && k <= 255) {
            return Err(Error::InvalidArgument(format!("triple ({i},{j},{k}) is not strictly ascending")));
        }
        Ok(Self { i: i as u8, j: j as u8, k: k as u8 })
    }

    /// Elements in axis order.
    pub fn elements(&self) -> [usize; 3] {
        [self.i as usize, self.j as usize, self.k as usize]
    }

    pub fn midpoint(&self) -> usize {
        self.j as usize
    }

    pub fn as_set(&self, n: usize) -> Result<AlternativeSet> {
        AlternativeSet::from_elements(n, self.elements())
    }

    /// All triples of `set` in lexicographic order.
    pub fn all_in(set: &AlternativeSet) -> Vec<Triple> {
        let elems = set.to_vec();
        let mut out = Vec::new();
        for a in 0..elems.len() {
            for b in a + 1..elems.len() {
                for c in b + 1..elems.len() {
                    out.push(Triple { i: elems[a] as u8, j: elems[b] as u8, k: elems[c] as u8 });
                }
            }
        }
        out
    }

    /// All triples of `[n]` in lexicographic order.
    pub fn all(n: usize) -> Vec<Triple> {
        let mut out = Vec::with_capacity(n * n.saturating_sub(1) * n.saturating_sub(2) / 6);
        for i in 1..=n {
            for j in i + 1..=n {
                for k in j + 1..=n {
                    out.push(Triple { i: i as u8, j: j as u8, k: k as u8 });
                }
            }
        }
        out
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.i, self.j, self.k)
    }
}
