//! Domains: canonical, duplicate-free sets of linear orders over a common alternative set.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::alternatives::AlternativeSet;
use crate::condition::{ConditionSet, LocalPattern, PatternMask};
use crate::error::{parse_err, Error, Result};
use crate::order::{LinearOrder, Triple};

/// A set of linear orders on a common set of alternatives, kept sorted lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Domain {
    alternatives: AlternativeSet,
    orders: Vec<LinearOrder>,
}

impl Domain {
    /// Canonicalizes `orders` (sort + dedup) after checking each ranks exactly `alternatives`.
    pub fn new(alternatives: AlternativeSet, mut orders: Vec<LinearOrder>) -> Result<Self> {
        for o in &orders {
            if !o.is_permutation_of(&alternatives) {
                return Err(Error::InvalidOrder(format!("{o} is not a ranking of {alternatives}")));
            }
        }
        orders.par_sort_unstable();
        orders.dedup();
        Ok(Self { alternatives, orders })
    }

    /// Domain over `[n]`.
    pub fn from_orders(n: usize, orders: Vec<LinearOrder>) -> Result<Self> {
        Self::new(AlternativeSet::full(n)?, orders)
    }

    /// Domain over `[n]` from order strings such as `"2143"`.
    pub fn from_strs<S: AsRef<str>>(n: usize, orders: &[S]) -> Result<Self> {
        let orders = orders.iter().map(|s| LinearOrder::parse(s.as_ref())).collect::<Result<Vec<_>>>()?;
        Self::from_orders(n, orders)
    }

    /// Caller guarantees the orders are sorted, distinct and rank `alternatives`.
    pub(crate) fn from_sorted_unchecked(alternatives: AlternativeSet, orders: Vec<LinearOrder>) -> Self {
        debug_assert!(orders.windows(2).all(|w| w[0] < w[1]));
        Self { alternatives, orders }
    }

    /// The empty domain over `[n]`.
    pub fn empty(n: usize) -> Result<Self> {
        Ok(Self { alternatives: AlternativeSet::full(n)?, orders: Vec::new() })
    }

    pub fn alternatives(&self) -> &AlternativeSet {
        &self.alternatives
    }

    /// Number of alternatives.
    pub fn n(&self) -> usize {
        self.alternatives.len()
    }

    pub fn len(&self) -> usize {
        self.orders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orders.is_empty()
    }

    pub fn orders(&self) -> &[LinearOrder] {
        &self.orders
    }

    pub fn contains(&self, o: &LinearOrder) -> bool {
        self.orders.binary_search(o).is_ok()
    }

    pub fn is_subset(&self, other: &Domain) -> bool {
        self.alternatives == other.alternatives && self.orders.iter().all(|o| other.contains(o))
    }

    /// Whether the alternatives are exactly `{1, .., n}`.
    pub fn is_standard(&self) -> bool {
        self.n() == 0 || (self.alternatives.min() == Some(1) && self.alternatives.max() == Some(self.n()))
    }

    /// The set of induced orders on `set`.
    pub fn restrict(&self, set: &AlternativeSet) -> Result<Domain> {
        if set.is_empty() {
            return Err(Error::EmptyRestriction);
        }
        if !set.is_subset(&self.alternatives) {
            return Err(Error::InvalidArgument(format!("{set} is not a subset of {}", self.alternatives)));
        }
        let mut orders = self.orders.iter().map(|o| o.restrict(set)).collect::<Result<Vec<_>>>()?;
        orders.sort_unstable();
        orders.dedup();
        let alternatives = set.with_n(self.alternatives.n())?;
        Ok(Domain { alternatives, orders })
    }

    /// Every order reversed.
    pub fn dual(&self) -> Domain {
        let mut orders: Vec<LinearOrder> = self.orders.iter().map(|o| o.reversed()).collect();
        orders.sort_unstable();
        Domain { alternatives: self.alternatives, orders }
    }

    /// All triples of the domain's alternatives, lexicographically.
    pub fn triples(&self) -> Vec<Triple> {
        Triple::all_in(&self.alternatives)
    }

    /// The local patterns realised by the domain on `t`.
    pub fn pattern_mask(&self, t: &Triple) -> PatternMask {
        let mut mask = PatternMask::EMPTY;
        for o in &self.orders {
            mask = mask.with(LocalPattern::of(o, t));
            if mask == PatternMask::ALL {
                break;
            }
        }
        mask
    }

    /// Pattern masks for every triple, in `triples()` order.
    pub fn pattern_table(&self) -> Vec<(Triple, PatternMask)> {
        self.triples().into_par_iter().map(|t| (t, self.pattern_mask(&t))).collect()
    }

    /// Every never condition the restriction to `t` satisfies.
    pub fn satisfied_conditions(&self, t: &Triple) -> ConditionSet {
        self.pattern_mask(t).satisfied_conditions()
    }

    /// Applies a relabeling `a -> relabel(a)` to all orders; the image must be `[n]`-compatible.
    pub fn relabeled(&self, relabel: impl Fn(u8) -> u8 + Sync) -> Result<Domain> {
        let orders = self.orders.iter().map(|o| o.relabeled(&relabel)).collect::<Result<Vec<_>>>()?;
        let mut alts = AlternativeSet::empty(self.alternatives.n())?;
        for a in self.alternatives.iter() {
            alts.insert(relabel(a as u8) as usize)?;
        }
        Domain::new(alts, orders)
    }

    /// Writes the domain text format: `n <n>` then one order per line.
    ///
    /// Domains over a non-standard alternative set get an extra `alternatives` line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "n {}", self.alternatives.n()).unwrap();
        if !self.alternatives_are_full() {
            writeln!(out, "alternatives {}", self.alternatives.to_list_string()).unwrap();
        }
        for o in &self.orders {
            let line: Vec<String> = o.ranking().iter().map(|a| a.to_string()).collect();
            writeln!(out, "{}", line.join(" ")).unwrap();
        }
        out
    }

    fn alternatives_are_full(&self) -> bool {
        AlternativeSet::full(self.alternatives.n()).map(|f| f == self.alternatives).unwrap_or(false)
    }

    /// Parses the domain text format. Orders need not be sorted; `#` starts a comment.
    pub fn from_text(text: &str) -> Result<Domain> {
        let mut n: Option<usize> = None;
        let mut alternatives: Option<AlternativeSet> = None;
        let mut orders = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("n ") {
                if n.is_some() {
                    return Err(parse_err(lineno, "duplicate n line"));
                }
                let value: usize = rest.trim().parse().map_err(|_| parse_err(lineno, format!("bad n {rest:?}")))?;
                n = Some(value);
                continue;
            }
            let Some(n) = n else {
                return Err(parse_err(lineno, "expected `n <n>` before the orders"));
            };
            if let Some(rest) = line.strip_prefix("alternatives") {
                let set = AlternativeSet::parse_list(n, rest).map_err(|e| parse_err(lineno, e.to_string()))?;
                alternatives = Some(set);
                continue;
            }
            let labels: Vec<u8> = line
                .split_whitespace()
                .map(|t| t.parse::<u8>().map_err(|_| parse_err(lineno, format!("bad alternative {t:?}"))))
                .collect::<Result<_>>()?;
            let order = LinearOrder::new(&labels).map_err(|e| parse_err(lineno, e.to_string()))?;
            let alts = match alternatives {
                Some(a) => a,
                None => AlternativeSet::full(n).map_err(|e| parse_err(lineno, e.to_string()))?,
            };
            if !order.is_permutation_of(&alts) {
                return Err(parse_err(lineno, format!("{order} is not a ranking of {alts}")));
            }
            orders.push(order);
        }
        let n = n.ok_or_else(|| parse_err(1, "missing `n <n>` line"))?;
        let alts = match alternatives {
            Some(a) => a,
            None => AlternativeSet::full(n)?,
        };
        Domain::new(alts, orders)
    }
}

/// The induced domain on `set`.
pub fn restrict_domain(domain: &Domain, set: &AlternativeSet) -> Result<Domain> {
    domain.restrict(set)
}

/// The dual domain: every order reversed.
pub fn dual_domain(domain: &Domain) -> Domain {
    domain.dual()
}

/// Never conditions satisfied by `domain` on `t`.
pub fn satisfied_conditions(domain: &Domain, t: &Triple) -> ConditionSet {
    domain.satisfied_conditions(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::table1_domain;

    fn set(n: usize, xs: &[usize]) -> AlternativeSet {
        AlternativeSet::from_elements(n, xs.iter().copied()).unwrap()
    }

    #[test]
    fn canonical_form_sorts_and_dedups() {
        let d = Domain::from_strs(3, &["321", "123", "213", "123"]).unwrap();
        let s: Vec<String> = d.orders().iter().map(|o| o.to_string()).collect();
        assert_eq!(s, ["123", "213", "321"]);
        assert!(Domain::from_strs(3, &["12"]).is_err());
    }

    #[test]
    fn restriction_examples() {
        let t1 = table1_domain();
        assert_eq!(t1.len(), 19);
        let r = restrict_domain(&t1, &set(6, &[1, 2])).unwrap();
        let s: Vec<String> = r.orders().iter().map(|o| o.to_string()).collect();
        assert_eq!(s, ["12", "21"]);
        assert_eq!(restrict_domain(&t1, t1.alternatives()).unwrap(), t1);
        assert_eq!(t1.restrict(&set(6, &[])).unwrap_err(), Error::EmptyRestriction);
    }

    #[test]
    fn dual_is_involution() {
        let t1 = table1_domain();
        let d = dual_domain(&t1);
        assert_eq!(d.len(), t1.len());
        assert_ne!(d, t1);
        assert_eq!(dual_domain(&d), t1);
    }

    #[test]
    fn single_order_triple_conditions() {
        let d = Domain::from_strs(3, &["123"]).unwrap();
        let t = Triple::new(1, 2, 3).unwrap();
        assert_eq!(satisfied_conditions(&d, &t).len(), 6);
        let all = Domain::from_strs(3, &["123", "132", "213", "231", "312", "321"]).unwrap();
        assert!(all.satisfied_conditions(&t).is_empty());
    }

    #[test]
    fn text_round_trip() {
        let t1 = table1_domain();
        let text = t1.to_text();
        assert!(text.starts_with("n 6\n"));
        assert_eq!(Domain::from_text(&text).unwrap(), t1);

        let r = t1.restrict(&set(6, &[2, 3, 5])).unwrap();
        assert_eq!(Domain::from_text(&r.to_text()).unwrap(), r);

        let messy = "# comment\nn 3\n3 2 1\n1 2 3 # trailing\n\n";
        assert_eq!(Domain::from_text(messy).unwrap(), Domain::from_strs(3, &["123", "321"]).unwrap());
    }

    #[test]
    fn text_errors_carry_line_numbers() {
        match Domain::from_text("n 3\n1 2 3\n1 2 2\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(Domain::from_text("1 2 3\n").is_err());
        assert!(Domain::from_text("n 3\n1 2\n").is_err());
    }
}
