//! Never conditions in positional (Fishburn) form and the six local patterns of a triple.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::order::{LinearOrder, Triple};

/// `pNq`: the `p`-th element of the axis-sorted triple never takes local rank `q`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct NeverCondition {
    position: u8,
    rank: u8,
}

/// The value-form reading of a condition's forbidden rank.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum ValueForm {
    /// `xNt`
    NeverTop,
    /// `xNm`
    NeverMiddle,
    /// `xNb`
    NeverBottom,
}

impl NeverCondition {
    pub const fn new_unchecked(position: u8, rank: u8) -> Self {
        Self { position, rank }
    }

    pub fn new(position: usize, rank: usize) -> Result<Self> {
        if !(1..=3).contains(&position) || !(1..=3).contains(&rank) {
            return Err(Error::InvalidArgument(format!("never condition {position}N{rank} outside 1..3")));
        }
        Ok(Self { position: position as u8, rank: rank as u8 })
    }

    /// Position in the axis-sorted triple, 1..=3.
    pub fn position(&self) -> usize {
        self.position as usize
    }

    /// Forbidden local rank, 1 = top .. 3 = bottom.
    pub fn forbidden_rank(&self) -> usize {
        self.rank as usize
    }

    pub fn value_form(&self) -> ValueForm {
        match self.rank {
            1 => ValueForm::NeverTop,
            2 => ValueForm::NeverMiddle,
            _ => ValueForm::NeverBottom,
        }
    }

    /// The alternative the condition talks about, with its value form.
    pub fn on_triple(&self, t: &Triple) -> (usize, ValueForm) {
        (t.elements()[self.position() - 1], self.value_form())
    }

    fn index(&self) -> usize {
        (self.position as usize - 1) * 3 + (self.rank as usize - 1)
    }

    fn from_index(idx: usize) -> Self {
        Self { position: (idx / 3 + 1) as u8, rank: (idx % 3 + 1) as u8 }
    }

    /// Patterns that break this condition.
    pub fn violating_patterns(&self) -> PatternMask {
        VIOLATING[self.index()]
    }

    /// Whether `order` (which must rank the triple's elements) satisfies the condition on `t`.
    pub fn holds_for(&self, order: &LinearOrder, t: &Triple) -> bool {
        !self.violating_patterns().contains(LocalPattern::of(order, t))
    }

    /// Condition after reversing every order: `pNq -> pN(4-q)`.
    pub fn dualized(&self) -> Self {
        Self { position: self.position, rank: 4 - self.rank }
    }

    /// Condition after relabeling `i -> n+1-i`: `pNq -> (4-p)Nq`.
    pub fn mirrored(&self) -> Self {
        Self { position: 4 - self.position, rank: self.rank }
    }
}

pub const N_1N3: NeverCondition = NeverCondition::new_unchecked(1, 3);
pub const N_3N1: NeverCondition = NeverCondition::new_unchecked(3, 1);
pub const N_2N1: NeverCondition = NeverCondition::new_unchecked(2, 1);
pub const N_2N3: NeverCondition = NeverCondition::new_unchecked(2, 3);

impl fmt::Display for NeverCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}N{}", self.position, self.rank)
    }
}

impl FromStr for NeverCondition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bytes = s.trim().as_bytes();
        if bytes.len() != 3 || bytes[1] != b'N' || !bytes[0].is_ascii_digit() || !bytes[2].is_ascii_digit() {
            return Err(Error::InvalidArgument(format!("malformed never condition {s:?}")));
        }
        Self::new((bytes[0] - b'0') as usize, (bytes[2] - b'0') as usize)
    }
}

/// A set of never conditions on one triple (9 possible members).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct ConditionSet(u16);

impl ConditionSet {
    pub const EMPTY: Self = Self(0);
    pub const ALL: Self = Self(0x1ff);

    pub fn single(c: NeverCondition) -> Self {
        Self(1 << c.index())
    }

    pub fn insert(&mut self, c: NeverCondition) {
        self.0 |= 1 << c.index();
    }

    pub fn contains(&self, c: NeverCondition) -> bool {
        self.0 >> c.index() & 1 == 1
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(&self) -> impl Iterator<Item = NeverCondition> + '_ {
        let bits = self.0;
        (0..9).filter(move |i| bits >> i & 1 == 1).map(NeverCondition::from_index)
    }

    /// Some member forbids the bottom rank (single-peaked restriction).
    pub fn has_never_bottom(&self) -> bool {
        self.iter().any(|c| c.value_form() == ValueForm::NeverBottom)
    }

    /// Some member forbids the top rank (single-dipped restriction).
    pub fn has_never_top(&self) -> bool {
        self.iter().any(|c| c.value_form() == ValueForm::NeverTop)
    }

    /// Union of the violating patterns of every member: the patterns this set forbids.
    pub fn forbidden_patterns(&self) -> PatternMask {
        self.iter().fold(PatternMask::EMPTY, |acc, c| acc.union(c.violating_patterns()))
    }
}

impl FromIterator<NeverCondition> for ConditionSet {
    fn from_iter<I: IntoIterator<Item = NeverCondition>>(iter: I) -> Self {
        let mut s = Self::EMPTY;
        for c in iter {
            s.insert(c);
        }
        s
    }
}

impl fmt::Display for ConditionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|c| c.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl fmt::Debug for ConditionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// One of the six orders of a triple, as axis positions best first.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct LocalPattern(u8);

/// Axis positions (0-based) best first, indexed by pattern.
pub const PATTERNS: [[u8; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

impl LocalPattern {
    pub fn index(&self) -> usize {
        self.0 as usize
    }

    pub fn from_index(idx: usize) -> Self {
        assert!(idx < 6);
        Self(idx as u8)
    }

    /// Pattern from the three positions of `i, j, k` in some order.
    #[inline]
    pub fn from_positions(pi: usize, pj: usize, pk: usize) -> Self {
        let idx = match (pi < pj, pj < pk, pi < pk) {
            (true, true, _) => 0,      // i j k
            (true, false, true) => 1,  // i k j
            (true, false, false) => 4, // k i j
            (false, true, true) => 2,  // j i k
            (false, true, false) => 3, // j k i
            (false, false, _) => 5,    // k j i
        };
        Self(idx)
    }

    #[inline]
    pub fn of(order: &LinearOrder, t: &Triple) -> Self {
        Self::from_positions(order.pos(t.i as usize), order.pos(t.j as usize), order.pos(t.k as usize))
    }

    /// 0-based local rank of the axis position `p` (0-based).
    pub fn rank_of(&self, p: usize) -> usize {
        PATTERNS[self.index()].iter().position(|&x| x as usize == p).expect("pattern is a permutation")
    }

    /// Writes the pattern with the triple's labels, e.g. `"312"`.
    pub fn render(&self, t: &Triple) -> String {
        let e = t.elements();
        PATTERNS[self.index()].iter().map(|&p| e[p as usize].to_string()).collect()
    }
}

/// A subset of the six local patterns.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, Debug)]
pub struct PatternMask(u8);

impl PatternMask {
    pub const EMPTY: Self = Self(0);
    pub const ALL: Self = Self(0x3f);
    /// `{ijk, jki, kij}`
    pub const CYCLIC_EVEN: Self = Self(0b011001);
    /// `{ikj, jik, kji}`
    pub const CYCLIC_ODD: Self = Self(0b100110);

    pub fn from_bits(bits: u8) -> Self {
        Self(bits & 0x3f)
    }

    pub fn bits(&self) -> u8 {
        self.0
    }

    pub fn with(self, p: LocalPattern) -> Self {
        Self(self.0 | 1 << p.0)
    }

    pub fn contains(&self, p: LocalPattern) -> bool {
        self.0 >> p.0 & 1 == 1
    }

    pub fn union(self, other: Self) -> Self {
        Self(self.0 | other.0)
    }

    pub fn intersects(&self, other: Self) -> bool {
        self.0 & other.0 != 0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = LocalPattern> + '_ {
        let bits = self.0;
        (0..6u8).filter(move |i| bits >> i & 1 == 1).map(LocalPattern)
    }

    /// Every never condition no member pattern breaks.
    pub fn satisfied_conditions(&self) -> ConditionSet {
        let mut out = ConditionSet::EMPTY;
        for idx in 0..9 {
            if !VIOLATING[idx].intersects(*self) {
                out.0 |= 1 << idx;
            }
        }
        out
    }

    /// Contains a full cyclic class, i.e. a Latin square on the triple.
    pub fn has_cyclic_class(&self) -> bool {
        self.0 & Self::CYCLIC_EVEN.0 == Self::CYCLIC_EVEN.0 || self.0 & Self::CYCLIC_ODD.0 == Self::CYCLIC_ODD.0
    }
}

const fn violating_table() -> [PatternMask; 9] {
    let mut out = [PatternMask(0); 9];
    let mut idx = 0;
    while idx < 9 {
        let p = (idx / 3) as u8;
        let q = idx % 3;
        let mut bits = 0u8;
        let mut pat = 0;
        while pat < 6 {
            if PATTERNS[pat][q] == p {
                bits |= 1 << pat;
            }
            pat += 1;
        }
        out[idx] = PatternMask(bits);
        idx += 1;
    }
    out
}

static VIOLATING: [PatternMask; 9] = violating_table();
