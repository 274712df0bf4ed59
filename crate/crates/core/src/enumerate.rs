//! Enumeration of all maximal Condorcet domains on a few alternatives, and the census of
//! their peak-pit, bipartite and midpoint-bipartite members.
//!
//! A set of orders is Condorcet exactly when no triple restriction contains a whole cyclic
//! class, which is the same as satisfying one never condition per triple. Every maximal
//! Condorcet domain is therefore the full set of orders satisfying some choice of one never
//! condition per triple. The search walks the triples in order, intersecting the current
//! order set with the orders allowed by each of the nine conditions, and merges identical
//! order sets as it goes. A child that is contained in a sibling is dropped: any maximal
//! domain reachable from it is reachable from the sibling by the same later choices.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::hash::Hash;

use rayon::prelude::*;

use crate::alternatives::AlternativeSet;
use crate::analyze::{find_bipartition, find_midpoint_bipartition, TripleTable};
use crate::condition::{ConditionSet, LocalPattern, PatternMask};
use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::generate::for_each_permutation;
use crate::order::{LinearOrder, Triple};

/// Default ceiling on `n`.
pub const ENUMERATION_LIMIT: usize = 5;
/// Ceiling when the long-running mode is requested.
pub const LONG_ENUMERATION_LIMIT: usize = 6;

/// Which of the two cyclic classes of a triple.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum CyclicClass {
    /// `{abc, bca, cab}`
    Even,
    /// `{acb, bac, cba}`
    Odd,
}

impl CyclicClass {
    pub fn patterns(self) -> PatternMask {
        match self {
            CyclicClass::Even => PatternMask::CYCLIC_EVEN,
            CyclicClass::Odd => PatternMask::CYCLIC_ODD,
        }
    }
}

/// A triple together with a cyclic class a Condorcet domain may not fully realize on it.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct ForbiddenPattern {
    pub triple: Triple,
    pub cyclic_class: CyclicClass,
}

/// All forbidden patterns on `[n]`, two per triple.
pub fn forbidden_patterns(n: usize) -> Vec<ForbiddenPattern> {
    Triple::all(n)
        .into_iter()
        .flat_map(|t| {
            [CyclicClass::Even, CyclicClass::Odd].map(|c| ForbiddenPattern { triple: t, cyclic_class: c })
        })
        .collect()
}

/// Fixed-width bitset over the `n!` orders.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
struct Bits<const W: usize>([u64; W]);

impl<const W: usize> Bits<W> {
    const EMPTY: Self = Self([0; W]);

    fn first(count: usize) -> Self {
        let mut b = Self::EMPTY;
        for i in 0..count {
            b.set(i);
        }
        b
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn and(&self, other: &Self) -> Self {
        let mut out = *self;
        for (a, b) in out.0.iter_mut().zip(&other.0) {
            *a &= b;
        }
        out
    }

    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    fn is_subset(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &word)| {
            (0..64).filter(move |b| word >> b & 1 == 1).map(move |b| w * 64 + b)
        })
    }
}

/// All permutations of `[n]` in lexicographic order with their per-triple patterns.
struct OrderTable {
    n: usize,
    orders: Vec<LinearOrder>,
    triples: Vec<Triple>,
    /// `patterns[o][t]`
    patterns: Vec<Vec<LocalPattern>>,
}

impl OrderTable {
    fn new(n: usize) -> Self {
        let mut orders = Vec::new();
        for_each_permutation(n, |p| orders.push(LinearOrder::new(p).expect("permutation")));
        let triples = Triple::all(n);
        let patterns = orders.iter().map(|o| triples.iter().map(|t| LocalPattern::of(o, t)).collect()).collect();
        Self { n, orders, triples, patterns }
    }

    /// Orders satisfying each never condition on each triple.
    fn allowed<const W: usize>(&self) -> Vec<Vec<Bits<W>>> {
        (0..self.triples.len())
            .map(|t| {
                ConditionSet::ALL
                    .iter()
                    .map(|c| {
                        let bad = c.violating_patterns();
                        let mut b = Bits::EMPTY;
                        for (o, pats) in self.patterns.iter().enumerate() {
                            if !bad.contains(pats[t]) {
                                b.set(o);
                            }
                        }
                        b
                    })
                    .collect()
            })
            .collect()
    }

    fn is_maximal<const W: usize>(&self, set: &Bits<W>) -> bool {
        let mut masks = vec![PatternMask::EMPTY; self.triples.len()];
        for o in set.ones() {
            for (m, &p) in masks.iter_mut().zip(&self.patterns[o]) {
                *m = m.with(p);
            }
        }
        (0..self.orders.len()).filter(|&o| !set.get(o)).all(|o| {
            masks.iter().zip(&self.patterns[o]).any(|(m, &p)| m.with(p).has_cyclic_class())
        })
    }

    fn to_domain<const W: usize>(&self, set: &Bits<W>) -> Domain {
        let orders = set.ones().map(|o| self.orders[o]).collect();
        Domain::from_sorted_unchecked(AlternativeSet::full(self.n).expect("small n"), orders)
    }
}

fn search<const W: usize>(table: &OrderTable) -> Vec<Bits<W>> {
    let allowed = table.allowed::<W>();
    let mut frontier: Vec<Bits<W>> = vec![Bits::first(table.orders.len())];
    for options in &allowed {
        let mut next: Vec<Bits<W>> = frontier
            .par_iter()
            .flat_map_iter(|set| {
                let mut children: Vec<Bits<W>> = options.iter().map(|o| set.and(o)).filter(|c| !c.is_empty()).collect();
                children.sort_unstable();
                children.dedup();
                let keep: Vec<Bits<W>> = children
                    .iter()
                    .enumerate()
                    .filter(|&(i, c)| !children.iter().enumerate().any(|(j, d)| i != j && c.is_subset(d)))
                    .map(|(_, c)| *c)
                    .collect();
                keep
            })
            .collect();
        next.par_sort_unstable();
        next.dedup();
        frontier = next;
    }
    let mut out: Vec<Bits<W>> = frontier.into_par_iter().filter(|s| table.is_maximal(s)).collect();
    out.par_sort_unstable();
    out
}

/// Every maximal Condorcet domain on `[n]`, each once (not up to isomorphism), sorted.
///
/// Refuses `n > 5` unless `allow_long` is set, which raises the ceiling to 6.
pub fn enumerate_maximal_condorcet_with(n: usize, allow_long: bool) -> Result<Vec<Domain>> {
    let limit = if allow_long { LONG_ENUMERATION_LIMIT } else { ENUMERATION_LIMIT };
    if n > limit {
        return Err(Error::TooLarge { what: "maximal domain enumeration", n, limit });
    }
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let table = OrderTable::new(n);
    let mut domains: Vec<Domain> = if n <= 5 {
        search::<2>(&table).iter().map(|s| table.to_domain(s)).collect()
    } else {
        search::<12>(&table).iter().map(|s| table.to_domain(s)).collect()
    };
    domains.par_sort_unstable_by(|a, b| a.orders().cmp(b.orders()));
    Ok(domains)
}

pub fn enumerate_maximal_condorcet(n: usize) -> Result<Vec<Domain>> {
    enumerate_maximal_condorcet_with(n, false)
}

/// Relabelings of `[n]` as permutations of order indices, for `n <= 6`.
struct Relabeler {
    table: OrderTable,
    index: HashMap<Vec<u8>, u16>,
    maps: Vec<Vec<u16>>,
}

impl Relabeler {
    const LIMIT: usize = 6;

    fn new(n: usize) -> Self {
        let table = OrderTable::new(n);
        let index: HashMap<Vec<u8>, u16> =
            table.orders.iter().enumerate().map(|(i, o)| (o.ranking().to_vec(), i as u16)).collect();
        let mut maps = Vec::new();
        for_each_permutation(n, |sigma| {
            maps.push(
                table
                    .orders
                    .iter()
                    .map(|o| {
                        let r: Vec<u8> = o.ranking().iter().map(|&a| sigma[a as usize - 1]).collect();
                        index[&r]
                    })
                    .collect(),
            );
        });
        Self { table, index, maps }
    }

    fn canonical(&self, domain: &Domain) -> Domain {
        let ids: Vec<u16> = domain.orders().iter().map(|o| self.index[o.ranking()]).collect();
        let mut best = ids.clone();
        let mut buf = Vec::with_capacity(ids.len());
        for map in &self.maps {
            buf.clear();
            buf.extend(ids.iter().map(|&i| map[i as usize]));
            buf.sort_unstable();
            if buf < best {
                std::mem::swap(&mut buf, &mut best);
            }
        }
        let orders = best.iter().map(|&i| self.table.orders[i as usize]).collect();
        Domain::from_sorted_unchecked(*domain.alternatives(), orders)
    }
}

fn check_canonical_input(domain: &Domain) -> Result<()> {
    if domain.n() > 8 || !domain.is_standard() {
        return Err(Error::InvalidArgument("canonical form needs a domain over 1..n with n <= 8".into()));
    }
    Ok(())
}

/// Smallest relabeled copy of a domain over `[n]` (compared as sorted order lists).
pub fn canonical_form(domain: &Domain) -> Result<Domain> {
    check_canonical_input(domain)?;
    let n = domain.n();
    if n <= Relabeler::LIMIT {
        return Ok(Relabeler::new(n).canonical(domain));
    }
    let mut best: Option<Domain> = None;
    for_each_permutation(n, |sigma| {
        let relabeled = domain.relabeled(|a| sigma[a as usize - 1]).expect("relabeling is a bijection");
        if best.as_ref().is_none_or(|b| relabeled.orders() < b.orders()) {
            best = Some(relabeled);
        }
    });
    Ok(best.unwrap_or_else(|| domain.clone()))
}

/// Isomorphism classes as (canonical representative, number of raw members), sorted by
/// decreasing size and then by representative.
pub fn isomorphism_classes(domains: &[Domain]) -> Result<Vec<(Domain, usize)>> {
    let canon: Vec<Domain> = match domains.first() {
        None => Vec::new(),
        Some(first) if first.n() <= Relabeler::LIMIT && domains.iter().all(|d| d.n() == first.n()) => {
            domains.iter().try_for_each(check_canonical_input)?;
            let relabeler = Relabeler::new(first.n());
            domains.par_iter().map(|d| relabeler.canonical(d)).collect()
        }
        Some(_) => domains.par_iter().map(canonical_form).collect::<Result<_>>()?,
    };
    let mut counts: HashMap<Domain, usize> = HashMap::new();
    for c in canon {
        *counts.entry(c).or_default() += 1;
    }
    let mut out: Vec<(Domain, usize)> = counts.into_iter().collect();
    out.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then_with(|| a.0.orders().cmp(b.0.orders())));
    Ok(out)
}

/// One isomorphism class of maximal Condorcet domains with its census flags.
#[derive(Clone, Debug)]
pub struct ClassSummary {
    pub representative: Domain,
    pub raw_members: usize,
    pub peak_pit: bool,
    pub bipartite: bool,
    /// Some member is midpoint bipartite on the natural axis (equivalently, the
    /// representative is on some axis).
    pub midpoint_bipartite: bool,
}

impl ClassSummary {
    pub fn size(&self) -> usize {
        self.representative.len()
    }
}

/// `(size, count)` pair of a census table.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CensusRow {
    pub size: usize,
    pub count: usize,
}

/// Required flags for a census; unset flags are not filtered on.
#[derive(Clone, Copy, Default, Debug)]
pub struct CensusFilter {
    pub peak_pit: bool,
    pub bipartite: bool,
    pub midpoint_bipartite: bool,
}

impl CensusFilter {
    fn admits(&self, c: &ClassSummary) -> bool {
        (!self.peak_pit || c.peak_pit)
            && (!self.bipartite || c.bipartite)
            && (!self.midpoint_bipartite || c.midpoint_bipartite)
    }
}

/// Census of a list of maximal domains on `[n]`, counted up to isomorphism.
#[derive(Clone, Debug)]
pub struct Census {
    pub n: usize,
    pub raw_domains: usize,
    pub classes: Vec<ClassSummary>,
}

impl Census {
    pub fn new(domains: &[Domain]) -> Result<Census> {
        let n = domains.first().map(|d| d.n()).unwrap_or(0);
        let classes = isomorphism_classes(domains)?
            .into_par_iter()
            .map(|(rep, raw_members)| {
                let peak_pit = TripleTable::new(&rep).is_peak_pit();
                let bipartite = peak_pit && find_bipartition(&rep)?.is_some();
                let midpoint_bipartite = find_midpoint_bipartition(&rep, None)?.is_some();
                Ok(ClassSummary { representative: rep, raw_members, peak_pit, bipartite, midpoint_bipartite })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Census { n, raw_domains: domains.len(), classes })
    }

    /// Number of classes passing `filter`.
    pub fn count(&self, filter: CensusFilter) -> usize {
        self.classes.iter().filter(|c| filter.admits(c)).count()
    }

    /// Number of raw domains in classes passing `filter`.
    pub fn raw_count(&self, filter: CensusFilter) -> usize {
        self.classes.iter().filter(|c| filter.admits(c)).map(|c| c.raw_members).sum()
    }

    /// `(size, count)` rows of classes passing `filter`, largest size first.
    pub fn rows(&self, filter: CensusFilter) -> Vec<CensusRow> {
        let mut by_size: std::collections::BTreeMap<usize, usize> = Default::default();
        for c in self.classes.iter().filter(|c| filter.admits(c)) {
            *by_size.entry(c.size()).or_default() += 1;
        }
        by_size.into_iter().rev().map(|(size, count)| CensusRow { size, count }).collect()
    }

    /// CSV `size,count,peak_pit,bipartite,midpoint_bipartite`, one line per flag combination
    /// and size.
    pub fn to_csv(&self) -> String {
        let mut groups: std::collections::BTreeMap<(std::cmp::Reverse<usize>, bool, bool, bool), usize> =
            Default::default();
        for c in &self.classes {
            *groups
                .entry((std::cmp::Reverse(c.size()), c.peak_pit, c.bipartite, c.midpoint_bipartite))
                .or_default() += 1;
        }
        let mut out = String::from("size,count,peak_pit,bipartite,midpoint_bipartite\n");
        for ((std::cmp::Reverse(size), pp, bp, mb), count) in groups {
            writeln!(out, "{size},{count},{pp},{bp},{mb}").unwrap();
        }
        out
    }
}

/// `(size, count)` rows of the isomorphism classes of `domains` passing `filter`.
pub fn census(domains: &[Domain], filter: CensusFilter) -> Result<Vec<CensusRow>> {
    Ok(Census::new(domains)?.rows(filter))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analyze::{is_condorcet, is_maximal};
    use crate::fixtures::{CENSUS_N4, SINGLE_CROSSING4};
    use crate::generate::generate_domain;
    use crate::scheme::set_alternating_scheme;
    use rand::{Rng, SeedableRng};

    fn all_orders(n: usize) -> Vec<LinearOrder> {
        OrderTable::new(n).orders
    }

    fn subset_domain(n: usize, orders: &[LinearOrder], mask: u64) -> Domain {
        let chosen = orders.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, o)| *o).collect();
        Domain::from_orders(n, chosen).unwrap()
    }

    /// Every subset of the six orders of three alternatives.
    fn brute_force_three() -> Vec<Domain> {
        let orders = all_orders(3);
        let condorcet: Vec<u64> = (1u64..64).filter(|&m| is_condorcet(&subset_domain(3, &orders, m))).collect();
        let mut out: Vec<Domain> = condorcet
            .iter()
            .filter(|&&m| !condorcet.iter().any(|&o| o != m && o & m == m))
            .map(|&m| subset_domain(3, &orders, m))
            .collect();
        out.sort_by(|a, b| a.orders().cmp(b.orders()));
        out
    }

    /// Maximal independent sets of the cyclic-class hypergraph, branching over orders.
    fn independent_set_search(n: usize) -> Vec<Domain> {
        let table = OrderTable::new(n);
        let mut found: Vec<Vec<usize>> = Vec::new();
        fn masks(table: &OrderTable, chosen: &[usize]) -> Vec<PatternMask> {
            let mut m = vec![PatternMask::EMPTY; table.triples.len()];
            for &o in chosen {
                for (x, &p) in m.iter_mut().zip(&table.patterns[o]) {
                    *x = x.with(p);
                }
            }
            m
        }
        fn blocked(table: &OrderTable, m: &[PatternMask], o: usize) -> bool {
            m.iter().zip(&table.patterns[o]).any(|(x, &p)| x.with(p).has_cyclic_class())
        }
        fn go(table: &OrderTable, next: usize, chosen: &mut Vec<usize>, skipped: &mut Vec<usize>, found: &mut Vec<Vec<usize>>) {
            let m = masks(table, chosen);
            if next == table.orders.len() {
                if skipped.iter().all(|&o| blocked(table, &m, o)) {
                    found.push(chosen.clone());
                }
                return;
            }
            if !blocked(table, &m, next) {
                chosen.push(next);
                go(table, next + 1, chosen, skipped, found);
                chosen.pop();
            }
            skipped.push(next);
            go(table, next + 1, chosen, skipped, found);
            skipped.pop();
        }
        go(&table, 0, &mut Vec::new(), &mut Vec::new(), &mut found);
        let mut out: Vec<Domain> = found
            .iter()
            .map(|c| Domain::from_orders(n, c.iter().map(|&o| table.orders[o]).collect()).unwrap())
            .collect();
        out.sort_by(|a, b| a.orders().cmp(b.orders()));
        out
    }

    #[test]
    fn three_alternatives_match_subset_scan() {
        let found = enumerate_maximal_condorcet(3).unwrap();
        assert_eq!(found, brute_force_three());
        assert_eq!(found.len(), 9);
    }

    #[test]
    fn four_alternatives_match_independent_set_search() {
        let found = enumerate_maximal_condorcet(4).unwrap();
        assert_eq!(found, independent_set_search(4));
    }

    #[test]
    fn enumerated_domains_are_maximal_and_incomparable() {
        for n in 3..=4 {
            let found = enumerate_maximal_condorcet(n).unwrap();
            for (i, d) in found.iter().enumerate() {
                assert!(is_condorcet(d) && is_maximal(d).unwrap());
                for (j, e) in found.iter().enumerate() {
                    assert!(i == j || !d.is_subset(e));
                }
            }
        }
    }

    #[test]
    fn set_alternating_domains_are_enumerated() {
        for n in 3..=4 {
            let found = enumerate_maximal_condorcet(n).unwrap();
            for bits in 0u128..1 << n {
                let a = AlternativeSet::from_bits(n, bits << 1);
                let d = generate_domain(&set_alternating_scheme(&a, n).unwrap()).unwrap();
                assert!(found.contains(&d), "n={n} A={a}");
            }
        }
    }

    #[test]
    fn cyclic_class_characterization_on_random_subsets() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for n in [4usize, 5] {
            let orders = all_orders(n);
            for _ in 0..2000 {
                let take = rng.gen_range(1..=12);
                let chosen: Vec<LinearOrder> = (0..take).map(|_| orders[rng.gen_range(0..orders.len())]).collect();
                let d = Domain::from_orders(n, chosen).unwrap();
                let by_classes = forbidden_patterns(n).iter().all(|f| {
                    let m = d.pattern_mask(&f.triple);
                    m.bits() & f.cyclic_class.patterns().bits() != f.cyclic_class.patterns().bits()
                });
                assert_eq!(is_condorcet(&d), by_classes);
            }
        }
    }

    #[test]
    fn census_at_four() {
        let found = enumerate_maximal_condorcet(4).unwrap();
        let census = Census::new(&found).unwrap();
        let pp = CensusFilter { peak_pit: true, ..Default::default() };
        let mb = CensusFilter { peak_pit: true, midpoint_bipartite: true, ..Default::default() };
        assert_eq!(census.count(pp), CENSUS_N4.0);
        let rows: Vec<(usize, usize)> = census.rows(mb).iter().map(|r| (r.size, r.count)).collect();
        assert_eq!(rows, CENSUS_N4.1);
        assert_eq!(census.count(pp) - census.count(mb), 4);
        let sc = canonical_form(&Domain::from_strs(4, &SINGLE_CROSSING4).unwrap()).unwrap();
        let class = census.classes.iter().find(|c| c.representative == sc).unwrap();
        assert!(class.peak_pit && !class.midpoint_bipartite);
        // every peak-pit domain on fewer than six alternatives is bipartite
        assert_eq!(census.count(CensusFilter { bipartite: true, ..Default::default() }), census.count(pp));
        assert!(census.to_csv().starts_with("size,count,peak_pit,bipartite,midpoint_bipartite\n"));
    }

    #[test]
    fn canonical_form_matches_direct_relabeling() {
        let d = Domain::from_strs(4, &SINGLE_CROSSING4).unwrap();
        let fast = canonical_form(&d).unwrap();
        let mut slow: Option<Domain> = None;
        for_each_permutation(4, |sigma| {
            let r = d.relabeled(|a| sigma[a as usize - 1]).unwrap();
            if slow.as_ref().is_none_or(|b| r.orders() < b.orders()) {
                slow = Some(r);
            }
        });
        assert_eq!(Some(fast.clone()), slow);
        assert_eq!(canonical_form(&d.relabeled(|a| 5 - a).unwrap()).unwrap(), fast);
    }

    #[test]
    fn guard() {
        assert!(matches!(enumerate_maximal_condorcet(6), Err(Error::TooLarge { .. })));
        assert!(matches!(enumerate_maximal_condorcet_with(7, true), Err(Error::TooLarge { .. })));
    }
}
