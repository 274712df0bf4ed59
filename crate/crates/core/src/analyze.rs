//! Structural properties of a domain: Condorcet, copious, peak-pit, connected, maximal,
//! bipartite and midpoint-bipartite.

use std::collections::VecDeque;

use rayon::prelude::*;

use crate::alternatives::AlternativeSet;
use crate::condition::{ConditionSet, LocalPattern, PatternMask};
use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::generate::for_each_permutation;
use crate::order::{LinearOrder, Triple};

/// `is_maximal` scans all `n!` orders; refused above this.
pub const MAXIMALITY_LIMIT: usize = 9;
/// `find_bipartition` scans all `2^n` subsets; refused above this.
pub const BIPARTITION_LIMIT: usize = 16;
/// Axis search for midpoint bipartitions scans `n!/2` axes; refused above this.
pub const AXIS_SEARCH_LIMIT: usize = 8;

/// Per-triple patterns and satisfied conditions of a domain, computed once.
#[derive(Clone, Debug)]
pub struct TripleTable {
    entries: Vec<(Triple, PatternMask, ConditionSet)>,
}

impl TripleTable {
    pub fn new(domain: &Domain) -> Self {
        let entries = domain
            .pattern_table()
            .into_iter()
            .map(|(t, m)| (t, m, m.satisfied_conditions()))
            .collect();
        Self { entries }
    }

    pub fn entries(&self) -> &[(Triple, PatternMask, ConditionSet)] {
        &self.entries
    }

    pub fn is_condorcet(&self) -> bool {
        self.entries.iter().all(|(_, _, c)| !c.is_empty())
    }

    pub fn is_copious(&self) -> bool {
        self.entries.iter().all(|(_, m, _)| m.len() == 4)
    }

    pub fn is_peak_pit(&self) -> bool {
        self.entries.iter().all(|(_, _, c)| c.has_never_bottom() || c.has_never_top())
    }

    pub fn is_arrow_single_peaked(&self) -> bool {
        self.entries.iter().all(|(_, _, c)| c.has_never_bottom())
    }

    pub fn is_dual_arrow_single_peaked(&self) -> bool {
        self.entries.iter().all(|(_, _, c)| c.has_never_top())
    }
}

/// Every triple's restriction satisfies some never condition.
pub fn is_condorcet(domain: &Domain) -> bool {
    domain.triples().par_iter().all(|t| !domain.satisfied_conditions(t).is_empty())
}

/// Second, independent route: no triple restriction contains all three rotations of an order.
pub fn is_condorcet_by_cyclic_classes(domain: &Domain) -> bool {
    domain.triples().par_iter().all(|t| {
        let restricted: std::collections::HashSet<[u8; 3]> = domain
            .orders()
            .iter()
            .map(|o| {
                let mut e = [t.i, t.j, t.k];
                e.sort_by_key(|&a| o.position(a as usize));
                e
            })
            .collect();
        restricted.iter().all(|r| {
            let rot1 = [r[1], r[2], r[0]];
            let rot2 = [r[2], r[0], r[1]];
            !(restricted.contains(&rot1) && restricted.contains(&rot2))
        })
    })
}

/// Every triple restriction has exactly four orders.
pub fn is_copious(domain: &Domain) -> bool {
    domain.triples().par_iter().all(|t| domain.pattern_mask(t).len() == 4)
}

/// Every pair restriction has both orders.
pub fn is_ample(domain: &Domain) -> bool {
    let alts = domain.alternatives().to_vec();
    for (x, &a) in alts.iter().enumerate() {
        for &b in &alts[x + 1..] {
            let up = domain.orders().iter().any(|o| o.prefers(a, b));
            let down = domain.orders().iter().any(|o| o.prefers(b, a));
            if !(up && down) {
                return false;
            }
        }
    }
    true
}

pub fn is_peak_pit(domain: &Domain) -> bool {
    TripleTable::new(domain).is_peak_pit()
}

/// Some alternative of every triple is never locally last.
pub fn is_arrow_single_peaked(domain: &Domain) -> bool {
    TripleTable::new(domain).is_arrow_single_peaked()
}

/// Some alternative of every triple is never locally first.
pub fn is_dual_arrow_single_peaked(domain: &Domain) -> bool {
    TripleTable::new(domain).is_dual_arrow_single_peaked()
}

/// Orders connected by single adjacent transpositions inside the domain form one component.
pub fn is_connected(domain: &Domain) -> bool {
    let orders = domain.orders();
    if orders.len() <= 1 {
        return true;
    }
    let mut seen = vec![false; orders.len()];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    let mut reached = 1;
    let mut buf = Vec::with_capacity(domain.n());
    while let Some(v) = queue.pop_front() {
        let ranking = orders[v].ranking();
        for p in 0..ranking.len().saturating_sub(1) {
            buf.clear();
            buf.extend_from_slice(ranking);
            buf.swap(p, p + 1);
            let neighbour = LinearOrder::new(&buf).expect("swap of a valid ranking");
            if let Ok(w) = orders.binary_search(&neighbour) {
                if !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    queue.push_back(w);
                }
            }
        }
    }
    reached == orders.len()
}

/// An order outside the domain that can be added without losing the Condorcet property.
///
/// Scans all `n!` orders, so `n` is capped at [`MAXIMALITY_LIMIT`].
pub fn find_addable_order(domain: &Domain) -> Result<Option<LinearOrder>> {
    let n = domain.n();
    if n > MAXIMALITY_LIMIT {
        return Err(Error::TooLarge { what: "maximality scan", n, limit: MAXIMALITY_LIMIT });
    }
    let alts: Vec<u8> = domain.alternatives().iter().map(|a| a as u8).collect();
    let table = TripleTable::new(domain);
    let mut found = None;
    for_each_permutation(n, |perm| {
        if found.is_some() {
            return;
        }
        let ranking: Vec<u8> = perm.iter().map(|&p| alts[p as usize - 1]).collect();
        let candidate = LinearOrder::new(&ranking).expect("permutation of the alternatives");
        if domain.contains(&candidate) {
            return;
        }
        let keeps_condorcet = table
            .entries()
            .iter()
            .all(|(t, m, _)| !m.with(LocalPattern::of(&candidate, t)).has_cyclic_class());
        if keeps_condorcet {
            found = Some(candidate);
        }
    });
    Ok(found)
}

/// A Condorcet domain no absent order can be added to.
pub fn is_maximal(domain: &Domain) -> Result<bool> {
    if domain.n() > MAXIMALITY_LIMIT {
        return Err(Error::TooLarge { what: "maximality scan", n: domain.n(), limit: MAXIMALITY_LIMIT });
    }
    if !is_condorcet(domain) {
        return Ok(false);
    }
    Ok(find_addable_order(domain)?.is_none())
}

/// Contains some order together with its reverse.
pub fn has_maximal_width(domain: &Domain) -> bool {
    domain.orders().iter().any(|o| domain.contains(&o.reversed()))
}

/// Contains the ascending order of its alternatives.
pub fn is_unitary(domain: &Domain) -> bool {
    let ranking: Vec<u8> = domain.alternatives().iter().map(|a| a as u8).collect();
    LinearOrder::new(&ranking).map(|o| domain.contains(&o)).unwrap_or(false)
}

/// Triple membership bitmask plus which value-form families it satisfies.
fn triple_flags(table: &TripleTable) -> Vec<(u128, bool, bool)> {
    table
        .entries()
        .iter()
        .map(|(t, _, c)| {
            let bits = (1u128 << t.i) | (1u128 << t.j) | (1u128 << t.k);
            (bits, c.has_never_bottom(), c.has_never_top())
        })
        .collect()
}

fn is_bipartition(flags: &[(u128, bool, bool)], a_bits: u128, rest_bits: u128) -> bool {
    flags.iter().all(|&(bits, nb, nt)| {
        if bits & a_bits == bits {
            nb
        } else if bits & rest_bits == bits {
            nt
        } else {
            true
        }
    })
}

/// Subsets of `elements` by size, then lexicographically.
fn subsets_size_lex(elements: &[usize], mut visit: impl FnMut(&[usize]) -> bool) {
    let m = elements.len();
    let mut chosen = Vec::with_capacity(m);
    for size in 0..=m {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            chosen.clear();
            chosen.extend(idx.iter().map(|&i| elements[i]));
            if visit(&chosen) {
                return;
            }
            // next combination
            let Some(p) = (0..size).rev().find(|&p| idx[p] != p + m - size) else {
                break;
            };
            idx[p] += 1;
            for q in p + 1..size {
                idx[q] = idx[q - 1] + 1;
            }
        }
    }
}

/// The first set `A` (by size, then lexicographically) whose restriction is Arrow
/// single-peaked while the restriction to the complement is dual Arrow single-peaked.
pub fn find_bipartition(domain: &Domain) -> Result<Option<AlternativeSet>> {
    let n = domain.n();
    if n > BIPARTITION_LIMIT {
        return Err(Error::TooLarge { what: "bipartition search", n, limit: BIPARTITION_LIMIT });
    }
    let table = TripleTable::new(domain);
    if !table.is_peak_pit() {
        return Err(Error::NotPeakPit);
    }
    let flags = triple_flags(&table);
    let alts = domain.alternatives().to_vec();
    let all_bits = domain.alternatives().bits();
    let mut found = None;
    subsets_size_lex(&alts, |subset| {
        let a_bits = subset.iter().fold(0u128, |acc, &a| acc | 1 << a);
        if is_bipartition(&flags, a_bits, all_bits & !a_bits) {
            found = Some(a_bits);
            true
        } else {
            false
        }
    });
    let universe = domain.alternatives().n();
    Ok(found.map(|bits| AlternativeSet::from_bits(universe, bits)))
}

/// Re-checks a bipartition witness through actual restrictions.
pub fn verify_bipartition(domain: &Domain, set: &AlternativeSet) -> Result<bool> {
    let rest = domain.alternatives().intersection(&set.complement());
    let side_ok = |s: &AlternativeSet, single_peaked: bool| -> Result<bool> {
        if s.len() < 3 {
            return Ok(true);
        }
        let r = domain.restrict(s)?;
        Ok(if single_peaked { is_arrow_single_peaked(&r) } else { is_dual_arrow_single_peaked(&r) })
    };
    Ok(side_ok(&set.intersection(domain.alternatives()), true)? && side_ok(&rest, false)?)
}

/// Midpoint bipartition for a fixed axis. Each alternative that is a midpoint goes into `A`
/// when all of its triples are never-bottom, otherwise into the complement when all are
/// never-top; axis endpoints stay out of `A`.
fn midpoint_set_for_axis(domain: &Domain, table: &TripleTable, axis: &LinearOrder) -> Option<AlternativeSet> {
    let universe = domain.alternatives().n();
    let mut nb_all = vec![true; universe + 1];
    let mut nt_all = vec![true; universe + 1];
    let mut is_mid = vec![false; universe + 1];
    for (t, _, c) in table.entries() {
        let mut e = t.elements();
        e.sort_by_key(|&a| axis.position(a));
        let mid = e[1];
        is_mid[mid] = true;
        nb_all[mid] &= c.has_never_bottom();
        nt_all[mid] &= c.has_never_top();
    }
    let mut set = AlternativeSet::empty(universe).ok()?;
    for a in domain.alternatives().iter() {
        if !is_mid[a] {
            continue;
        }
        if nb_all[a] {
            set.insert(a).ok()?;
        } else if !nt_all[a] {
            return None;
        }
    }
    Some(set)
}

/// Finds an axis and a set `A` such that triples with midpoint in `A` are never-bottom and
/// the rest never-top. With `axis` given only that axis is tried; otherwise axes are scanned
/// lexicographically, skipping reverses (they have the same midpoints).
pub fn find_midpoint_bipartition(
    domain: &Domain,
    axis: Option<&LinearOrder>,
) -> Result<Option<(LinearOrder, AlternativeSet)>> {
    let table = TripleTable::new(domain);
    if let Some(axis) = axis {
        if !axis.is_permutation_of(domain.alternatives()) {
            return Err(Error::InvalidArgument(format!("axis {axis} does not rank {}", domain.alternatives())));
        }
        return Ok(midpoint_set_for_axis(domain, &table, axis).map(|s| (*axis, s)));
    }
    let n = domain.n();
    if n > AXIS_SEARCH_LIMIT {
        return Err(Error::TooLarge { what: "axis search", n, limit: AXIS_SEARCH_LIMIT });
    }
    let alts: Vec<u8> = domain.alternatives().iter().map(|a| a as u8).collect();
    let mut found = None;
    for_each_permutation(n, |perm| {
        if found.is_some() || (n >= 2 && perm[0] > perm[n - 1]) {
            return;
        }
        let ranking: Vec<u8> = perm.iter().map(|&p| alts[p as usize - 1]).collect();
        let axis = LinearOrder::new(&ranking).expect("permutation of the alternatives");
        if let Some(set) = midpoint_set_for_axis(domain, &table, &axis) {
            found = Some((axis, set));
        }
    });
    Ok(found)
}

/// A check that ran, or was skipped because of a size guard.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Guarded<T> {
    Value(T),
    Skipped(String),
}

impl<T> Guarded<T> {
    pub fn value(&self) -> Option<&T> {
        match self {
            Guarded::Value(v) => Some(v),
            Guarded::Skipped(_) => None,
        }
    }

    fn from_result(r: Result<T>) -> Self {
        match r {
            Ok(v) => Guarded::Value(v),
            Err(e) => Guarded::Skipped(e.to_string()),
        }
    }
}

/// Everything `classify` knows about a domain.
#[derive(Clone, Debug)]
pub struct AnalysisReport {
    pub n: usize,
    pub size: usize,
    pub is_condorcet: bool,
    pub is_copious: bool,
    pub is_ample: bool,
    pub is_peak_pit: bool,
    pub is_arrow_single_peaked: bool,
    pub is_dual_arrow: bool,
    pub is_connected: bool,
    pub is_maximal: Guarded<bool>,
    pub has_maximal_width: bool,
    pub is_unitary: bool,
    /// `None` inside the guard means no bipartition exists; skipped for non-peak-pit domains.
    pub bipartition: Guarded<Option<AlternativeSet>>,
    pub midpoint_bipartition: Guarded<Option<(LinearOrder, AlternativeSet)>>,
    pub conditions: Vec<(Triple, ConditionSet)>,
}

pub fn classify(domain: &Domain) -> AnalysisReport {
    let table = TripleTable::new(domain);
    let is_peak_pit = table.is_peak_pit();
    let bipartition = if is_peak_pit {
        Guarded::from_result(find_bipartition(domain))
    } else {
        Guarded::Skipped(Error::NotPeakPit.to_string())
    };
    AnalysisReport {
        n: domain.n(),
        size: domain.len(),
        is_condorcet: table.is_condorcet(),
        is_copious: table.is_copious(),
        is_ample: is_ample(domain),
        is_peak_pit,
        is_arrow_single_peaked: table.is_arrow_single_peaked(),
        is_dual_arrow: table.is_dual_arrow_single_peaked(),
        is_connected: is_connected(domain),
        is_maximal: Guarded::from_result(is_maximal(domain)),
        has_maximal_width: has_maximal_width(domain),
        is_unitary: is_unitary(domain),
        bipartition,
        midpoint_bipartition: Guarded::from_result(find_midpoint_bipartition(domain, None)),
        conditions: table.entries().iter().map(|(t, _, c)| (*t, *c)).collect(),
    }
}
