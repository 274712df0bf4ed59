//! Never-condition schemes: an assignment of conditions to every triple of `[n]`.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use crate::alternatives::AlternativeSet;
use crate::condition::{ConditionSet, NeverCondition, PatternMask, N_1N3, N_2N1, N_2N3, N_3N1};
use crate::error::{parse_err, Error, Result};
use crate::order::Triple;

/// Index of triple `(i, j, k)` of `[n]` in lexicographic order.
pub fn triple_index(n: usize, t: &Triple) -> usize {
    let (i, j, k) = (t.i as usize, t.j as usize, t.k as usize);
    // triples whose first element is < i
    let choose3 = |m: usize| if m < 3 { 0 } else { m * (m - 1) * (m - 2) / 6 };
    let choose2 = |m: usize| if m < 2 { 0 } else { m * (m - 1) / 2 };
    let before_i = choose3(n) - choose3(n - i + 1);
    let rest = n - i; // elements above i
    let before_j = choose2(rest) - choose2(n - j + 1);
    before_i + before_j + (k - j - 1)
}

/// A total assignment of never conditions to the triples of `[n]`.
#[derive(Clone)]
pub struct Scheme {
    n: usize,
    triples: Vec<Triple>,
    assignment: Vec<ConditionSet>,
    origin: Option<String>,
}

impl PartialEq for Scheme {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.assignment == other.assignment
    }
}

impl Eq for Scheme {}

impl fmt::Debug for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Scheme").field("n", &self.n).field("origin", &self.origin).finish_non_exhaustive()
    }
}

impl Scheme {
    /// Builds a scheme from one condition set per triple, in `Triple::all(n)` order.
    pub fn from_assignment(n: usize, assignment: Vec<ConditionSet>) -> Result<Self> {
        let triples = Triple::all(n);
        if assignment.len() != triples.len() {
            return Err(Error::InvalidArgument(format!(
                "scheme on {n} alternatives needs {} triples, got {}",
                triples.len(),
                assignment.len()
            )));
        }
        if let Some(pos) = assignment.iter().position(|c| c.is_empty()) {
            return Err(Error::InvalidArgument(format!("triple {} has no never condition", triples[pos])));
        }
        Ok(Self { n, triples, assignment, origin: None })
    }

    /// Assigns `rule(t)` to every triple.
    pub fn from_fn(n: usize, rule: impl Fn(&Triple) -> ConditionSet) -> Result<Self> {
        let assignment = Triple::all(n).iter().map(rule).collect();
        Self::from_assignment(n, assignment)
    }

    pub fn with_origin(mut self, origin: impl Into<String>) -> Self {
        self.origin = Some(origin.into());
        self
    }

    /// How the scheme was produced, e.g. `set-alternating {2,3,5}`.
    pub fn origin(&self) -> Option<&str> {
        self.origin.as_deref()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn triples(&self) -> &[Triple] {
        &self.triples
    }

    pub fn conditions(&self, t: &Triple) -> ConditionSet {
        self.assignment[triple_index(self.n, t)]
    }

    /// `(triple, conditions)` pairs in lexicographic triple order.
    pub fn iter(&self) -> impl Iterator<Item = (Triple, ConditionSet)> + '_ {
        self.triples.iter().copied().zip(self.assignment.iter().copied())
    }

    /// Local patterns allowed on each triple, in triple order.
    pub fn allowed_patterns(&self) -> Vec<PatternMask> {
        self.assignment.iter().map(|c| PatternMask::from_bits(!c.forbidden_patterns().bits())).collect()
    }

    /// A copy with `c` added on `t` (the generated domain can only shrink).
    pub fn with_condition_added(&self, t: &Triple, c: NeverCondition) -> Scheme {
        let mut out = self.clone();
        out.assignment[triple_index(self.n, t)].insert(c);
        out.origin = None;
        out
    }

    /// A copy with the conditions on `t` replaced.
    pub fn with_conditions(&self, t: &Triple, conditions: ConditionSet) -> Result<Scheme> {
        if conditions.is_empty() {
            return Err(Error::InvalidArgument(format!("triple {t} needs at least one condition")));
        }
        let mut out = self.clone();
        out.assignment[triple_index(self.n, t)] = conditions;
        out.origin = None;
        Ok(out)
    }

    /// Explicit-line text form; [`read_scheme`] parses it back.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "n {}", self.n).unwrap();
        if let Some(origin) = &self.origin {
            writeln!(out, "# {origin}").unwrap();
        }
        for (t, conds) in self.iter() {
            for c in conds.iter() {
                writeln!(out, "{} {} {} {c}", t.i, t.j, t.k).unwrap();
            }
        }
        out
    }
}

/// Which midpoints get the never-bottom condition in Fishburn's scheme.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum FishburnParity {
    /// `2N3` on even midpoints, `2N1` on odd ones.
    #[default]
    Even,
    /// `2N3` on odd midpoints, `2N1` on even ones.
    Odd,
}

impl FromStr for FishburnParity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "even" => Ok(Self::Even),
            "odd" => Ok(Self::Odd),
            other => Err(Error::InvalidArgument(format!("fishburn parity must be even or odd, got {other:?}"))),
        }
    }
}

impl fmt::Display for FishburnParity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Even => "even",
            Self::Odd => "odd",
        })
    }
}

/// The named generating sets.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum NamedSetKind {
    /// `B_n = {2, 3, 5, 7, .., n-3+p_n}`
    Odd,
    /// `A_n = {2, 4, 6, .., n-2+p_n}`
    Even,
    /// `B_n*` for odd `n`, `A_n \ {n-2}` for even `n`
    TruncatedEven,
}

impl FromStr for NamedSetKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "odd" => Ok(Self::Odd),
            "even" => Ok(Self::Even),
            "truncated-even" | "truncated" => Ok(Self::TruncatedEven),
            other => Err(Error::InvalidArgument(format!("unknown named set {other:?}"))),
        }
    }
}

impl fmt::Display for NamedSetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Odd => "odd",
            Self::Even => "even",
            Self::TruncatedEven => "truncated-even",
        })
    }
}

/// `1N3` on triples whose midpoint is in `set`, `3N1` on the rest.
pub fn set_alternating_scheme(set: &AlternativeSet, n: usize) -> Result<Scheme> {
    if n < 1 {
        return Err(Error::InvalidArgument("set-alternating scheme needs n >= 1".into()));
    }
    let set = set.with_n(n)?;
    let scheme = Scheme::from_fn(n, |t| {
        ConditionSet::single(if set.contains(t.midpoint()) { N_1N3 } else { N_3N1 })
    })?;
    Ok(scheme.with_origin(format!("set-alternating {set}")))
}

/// Fishburn's alternating scheme on `[n]`.
pub fn fishburn_scheme(n: usize, parity: FishburnParity) -> Result<Scheme> {
    if n < 3 {
        return Err(Error::InvalidArgument("Fishburn's scheme needs n >= 3".into()));
    }
    let want = match parity {
        FishburnParity::Even => 0,
        FishburnParity::Odd => 1,
    };
    let scheme = Scheme::from_fn(n, |t| {
        ConditionSet::single(if t.midpoint() % 2 == want { N_2N3 } else { N_2N1 })
    })?;
    Ok(scheme.with_origin(format!("fishburn {parity}")))
}

/// Every triple gets both `1N3` and `3N1`.
pub fn common_part_scheme(n: usize) -> Result<Scheme> {
    let both: ConditionSet = [N_1N3, N_3N1].into_iter().collect();
    Ok(Scheme::from_fn(n, |_| both)?.with_origin("common part {1N3,3N1}"))
}

/// The generating sets `B_n`, `A_n` and the truncated even set.
pub fn named_set(kind: NamedSetKind, n: usize) -> Result<AlternativeSet> {
    if n < 4 {
        return Err(Error::InvalidArgument(format!("named sets need n >= 4, got {n}")));
    }
    let p = n % 2;
    let members: Vec<usize> = match kind {
        NamedSetKind::Odd => std::iter::once(2).chain((3..=n - 3 + p).step_by(2)).collect(),
        NamedSetKind::Even => (2..=n - 2 + p).step_by(2).collect(),
        NamedSetKind::TruncatedEven => {
            let top = if p == 1 { n - 3 } else { n - 4 };
            (2..=top).step_by(2).collect()
        }
    };
    AlternativeSet::from_elements(n, members)
}

/// Parses the scheme file format.
///
/// ```text
/// n 8
/// set-alternating 2,3,5      # or: fishburn even|odd
/// ```
/// or explicit `<i> <j> <k> <p>N<q>` lines covering every triple.
pub fn read_scheme(text: &str) -> Result<Scheme> {
    let mut n: Option<usize> = None;
    let mut macro_scheme: Option<(usize, Scheme)> = None;
    let mut explicit: Vec<ConditionSet> = Vec::new();
    let mut any_explicit = false;
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        last_line = lineno;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut words = line.split_whitespace();
        let head = words.next().unwrap_or("");
        if head == "n" {
            if n.is_some() {
                return Err(parse_err(lineno, "duplicate n line"));
            }
            let v = words.next().ok_or_else(|| parse_err(lineno, "missing value after n"))?;
            let v: usize = v.parse().map_err(|_| parse_err(lineno, format!("bad n {v:?}")))?;
            if v < 1 {
                return Err(parse_err(lineno, "n must be at least 1"));
            }
            n = Some(v);
            explicit = vec![ConditionSet::EMPTY; Triple::all(v).len()];
            continue;
        }
        let Some(n) = n else {
            return Err(parse_err(lineno, "expected `n <n>` first"));
        };
        let rest = line[head.len()..].trim();
        match head {
            "set-alternating" => {
                if macro_scheme.is_some() || any_explicit {
                    return Err(parse_err(lineno, "only one macro line, and no explicit lines with it"));
                }
                let set = AlternativeSet::parse_list(n, rest).map_err(|e| parse_err(lineno, e.to_string()))?;
                let s = set_alternating_scheme(&set, n).map_err(|e| parse_err(lineno, e.to_string()))?;
                macro_scheme = Some((lineno, s));
            }
            "fishburn" => {
                if macro_scheme.is_some() || any_explicit {
                    return Err(parse_err(lineno, "only one macro line, and no explicit lines with it"));
                }
                let parity: FishburnParity = if rest.is_empty() {
                    FishburnParity::default()
                } else {
                    rest.parse().map_err(|e: Error| parse_err(lineno, e.to_string()))?
                };
                let s = fishburn_scheme(n, parity).map_err(|e| parse_err(lineno, e.to_string()))?;
                macro_scheme = Some((lineno, s));
            }
            _ => {
                if let Some((mline, _)) = macro_scheme {
                    return Err(parse_err(lineno, format!("explicit line after macro on line {mline}")));
                }
                let fields: Vec<&str> = line.split_whitespace().collect();
                if fields.len() != 4 {
                    return Err(parse_err(lineno, "expected `<i> <j> <k> <p>N<q>`"));
                }
                let mut ijk = [0usize; 3];
                for (slot, f) in ijk.iter_mut().zip(&fields[..3]) {
                    *slot = f.parse().map_err(|_| parse_err(lineno, format!("bad alternative {f:?}")))?;
                }
                let [i, j, k] = ijk;
                if !(i < j && j < k) {
                    return Err(parse_err(lineno, format!("triple {i} {j} {k} is not strictly ascending")));
                }
                if i < 1 || k > n {
                    return Err(parse_err(lineno, format!("triple {i} {j} {k} outside 1..={n}")));
                }
                let c: NeverCondition = fields[3].parse().map_err(|e: Error| parse_err(lineno, e.to_string()))?;
                let t = Triple::new(i, j, k).expect("checked ascending");
                explicit[triple_index(n, &t)].insert(c);
                any_explicit = true;
            }
        }
    }
    let n = n.ok_or_else(|| parse_err(1, "missing `n <n>` line"))?;
    if let Some((_, s)) = macro_scheme {
        return Ok(s);
    }
    let triples = Triple::all(n);
    if let Some(pos) = explicit.iter().position(|c| c.is_empty()) {
        return Err(parse_err(last_line + 1, format!("missing triple {}", triples[pos])));
    }
    Scheme::from_assignment(n, explicit)
}

pub fn write_scheme(scheme: &Scheme) -> String {
    scheme.to_text()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, xs: &[usize]) -> AlternativeSet {
        AlternativeSet::from_elements(n, xs.iter().copied()).unwrap()
    }

    fn t(i: usize, j: usize, k: usize) -> Triple {
        Triple::new(i, j, k).unwrap()
    }

    #[test]
    fn triple_index_matches_enumeration() {
        for n in 3..=12 {
            for (idx, tr) in Triple::all(n).iter().enumerate() {
                assert_eq!(triple_index(n, tr), idx, "n={n} {tr}");
            }
        }
    }

    #[test]
    fn set_alternating_examples() {
        let s = set_alternating_scheme(&set(4, &[2]), 4).unwrap();
        assert_eq!(s.conditions(&t(1, 2, 3)), ConditionSet::single(N_1N3));
        assert_eq!(s.conditions(&t(1, 2, 4)), ConditionSet::single(N_1N3));
        assert_eq!(s.conditions(&t(1, 3, 4)), ConditionSet::single(N_3N1));
        assert_eq!(s.conditions(&t(2, 3, 4)), ConditionSet::single(N_3N1));

        let full = set_alternating_scheme(&AlternativeSet::full(6).unwrap(), 6).unwrap();
        assert!(full.iter().all(|(_, c)| c == ConditionSet::single(N_1N3)));

        let empty = set_alternating_scheme(&set(3, &[]), 3).unwrap();
        assert_eq!(empty.conditions(&t(1, 2, 3)), ConditionSet::single(N_3N1));

        assert!(set_alternating_scheme(&set(3, &[]), 0).is_err());
    }

    #[test]
    fn endpoints_never_matter() {
        for n in 3..=8 {
            for bits in 0u128..(1 << n) {
                let a = AlternativeSet::from_bits(n, bits << 1);
                let s1 = set_alternating_scheme(&a, n).unwrap();
                let s2 = set_alternating_scheme(&a.normalized(), n).unwrap();
                assert_eq!(s1, s2);
                assert!(s1.iter().all(|(tr, c)| c
                    == ConditionSet::single(if a.contains(tr.midpoint()) { N_1N3 } else { N_3N1 })));
            }
        }
    }

    #[test]
    fn fishburn_uses_middle_conditions_only() {
        let s = fishburn_scheme(7, FishburnParity::Even).unwrap();
        for (tr, c) in s.iter() {
            assert_eq!(c.len(), 1);
            let expected = if tr.midpoint() % 2 == 0 { N_2N3 } else { N_2N1 };
            assert!(c.contains(expected));
        }
        assert!(fishburn_scheme(2, FishburnParity::Even).is_err());
    }

    #[test]
    fn named_sets() {
        assert_eq!(named_set(NamedSetKind::Odd, 8).unwrap(), set(8, &[2, 3, 5]));
        assert_eq!(named_set(NamedSetKind::Odd, 7).unwrap(), set(7, &[2, 3, 5]));
        assert_eq!(named_set(NamedSetKind::Odd, 4).unwrap(), set(4, &[2]));
        assert_eq!(named_set(NamedSetKind::Even, 6).unwrap(), set(6, &[2, 4]));
        assert_eq!(named_set(NamedSetKind::Even, 7).unwrap(), set(7, &[2, 4, 6]));
        assert_eq!(named_set(NamedSetKind::TruncatedEven, 5).unwrap(), set(5, &[2]));
        assert_eq!(named_set(NamedSetKind::TruncatedEven, 4).unwrap(), set(4, &[]));
        assert_eq!(named_set(NamedSetKind::TruncatedEven, 8).unwrap(), set(8, &[2, 4]));
        assert!(named_set(NamedSetKind::Odd, 3).is_err());
        // odd n: truncated even set is the reverse complement of B_n
        for n in (5..=15).step_by(2) {
            let b = named_set(NamedSetKind::Odd, n).unwrap();
            assert_eq!(named_set(NamedSetKind::TruncatedEven, n).unwrap(), b.reverse_complement().normalized());
        }
    }

    #[test]
    fn parse_single_line_and_macros() {
        let mut text = String::from("n 3\n1 2 3 1N3\n");
        let s = read_scheme(&text).unwrap();
        assert_eq!(s.conditions(&t(1, 2, 3)), ConditionSet::single(N_1N3));
        text.push_str("1 2 3 3N1\n");
        let s = read_scheme(&text).unwrap();
        assert_eq!(s.conditions(&t(1, 2, 3)).len(), 2);

        let m = read_scheme("n 8\nset-alternating 2,3,5\n").unwrap();
        assert_eq!(m.triples().len(), 56);
        assert_eq!(m, set_alternating_scheme(&set(8, &[2, 3, 5]), 8).unwrap());

        let f = read_scheme("# fishburn\nn 6\nfishburn odd\n").unwrap();
        assert_eq!(f, fishburn_scheme(6, FishburnParity::Odd).unwrap());
    }

    #[test]
    fn round_trip() {
        let f = fishburn_scheme(6, FishburnParity::Even).unwrap();
        assert_eq!(read_scheme(&write_scheme(&f)).unwrap(), f);
        let c = common_part_scheme(5).unwrap();
        assert_eq!(read_scheme(&write_scheme(&c)).unwrap(), c);
    }

    #[test]
    fn parse_errors() {
        let line_of = |text: &str| match read_scheme(text) {
            Err(Error::Parse { line, .. }) => line,
            other => panic!("expected parse error, got {other:?}"),
        };
        assert_eq!(line_of("n 3\n2 1 3 1N3\n"), 2);
        assert_eq!(line_of("n 3\n1 2 3 1X3\n"), 2);
        assert_eq!(line_of("n 3\n1 2 3 4N3\n"), 2);
        assert_eq!(line_of("n 3\n1 2 4 1N3\n"), 2);
        assert_eq!(line_of("n 4\n1 2 3 1N3\n"), 3); // missing triples
        assert_eq!(line_of("1 2 3 1N3\n"), 1);
        assert_eq!(line_of("n 4\nset-alternating 2\n1 2 3 1N3\n"), 3);
    }
}
