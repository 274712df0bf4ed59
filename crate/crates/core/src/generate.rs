//! Enumerating every linear order that satisfies a scheme.
//!
//! Orders are built best first. When an alternative is placed, each triple containing it is
//! checked against the patterns still reachable: the first element placed fixes the local top,
//! the second fixes the whole local order. A prefix is dropped as soon as one triple has no
//! allowed completion, so every surviving leaf is a member of the domain.

use rayon::prelude::*;

use crate::alternatives::AlternativeSet;
use crate::condition::{LocalPattern, PatternMask, PATTERNS};
use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::order::{LinearOrder, Triple, MAX_ORDER_LEN};
use crate::scheme::{common_part_scheme, Scheme};

/// Largest `n` the factorial oracle accepts.
pub const BRUTE_FORCE_LIMIT: usize = 10;

/// A partial order under construction: the placed prefix and the unplaced rest.
#[derive(Clone, Debug)]
pub struct PrefixState {
    placed: Vec<u8>,
    unplaced: AlternativeSet,
}

impl PrefixState {
    pub fn new(n: usize) -> Result<Self> {
        Ok(Self { placed: Vec::with_capacity(n), unplaced: AlternativeSet::full(n)? })
    }

    pub fn placed(&self) -> &[u8] {
        &self.placed
    }

    pub fn unplaced(&self) -> &AlternativeSet {
        &self.unplaced
    }

    fn push(&mut self, a: u8) {
        self.placed.push(a);
        self.unplaced.remove(a as usize);
    }

    fn pop(&mut self) {
        if let Some(a) = self.placed.pop() {
            self.unplaced
                .insert(a as usize)
                .expect("popped alternative is in range");
        }
    }
}

/// A triple seen from one of its members.
#[derive(Clone, Copy)]
struct Incidence {
    /// axis position (0..3) of the member being placed
    me: u8,
    /// the other two members with their axis positions
    others: [(u8, u8); 2],
    allowed: PatternMask,
}

/// Patterns whose local top is the given axis position.
const STARTS_WITH: [u8; 3] = {
    let mut out = [0u8; 3];
    let mut pat = 0;
    while pat < 6 {
        out[PATTERNS[pat][0] as usize] |= 1 << pat;
        pat += 1;
    }
    out
};

fn pattern_from_first_two(first: u8, second: u8) -> LocalPattern {
    let idx = PATTERNS
        .iter()
        .position(|p| p[0] == first && p[1] == second)
        .expect("distinct axis positions");
    LocalPattern::from_index(idx)
}

/// Precomputed incidence lists for the backtracking search.
struct Searcher {
    n: usize,
    incidences: Vec<Vec<Incidence>>,
    second_table: [[u8; 3]; 3],
}

impl Searcher {
    fn new(scheme: &Scheme) -> Self {
        let n = scheme.n();
        let allowed = scheme.allowed_patterns();
        let mut incidences = vec![Vec::new(); n + 1];
        for (t, &mask) in scheme.triples().iter().zip(&allowed) {
            let e = t.elements();
            for me in 0..3 {
                let others: Vec<(u8, u8)> =
                    (0..3).filter(|&p| p != me).map(|p| (e[p] as u8, p as u8)).collect();
                incidences[e[me]].push(Incidence { me: me as u8, others: [others[0], others[1]], allowed: mask });
            }
        }
        let mut second_table = [[0u8; 3]; 3];
        for a in 0..3u8 {
            for b in 0..3u8 {
                if a != b {
                    second_table[a as usize][b as usize] = pattern_from_first_two(a, b).index() as u8;
                }
            }
        }
        Self { n, incidences, second_table }
    }

    /// Whether placing `a` keeps every triple through `a` completable.
    #[inline]
    fn can_place(&self, a: usize, placed: &[bool]) -> bool {
        for inc in &self.incidences[a] {
            let (x, px) = inc.others[0];
            let (y, py) = inc.others[1];
            let x_in = placed[x as usize];
            let y_in = placed[y as usize];
            match (x_in, y_in) {
                (false, false) => {
                    if inc.allowed.bits() & STARTS_WITH[inc.me as usize] == 0 {
                        return false;
                    }
                }
                (true, false) => {
                    let pat = self.second_table[px as usize][inc.me as usize];
                    if inc.allowed.bits() >> pat & 1 == 0 {
                        return false;
                    }
                }
                (false, true) => {
                    let pat = self.second_table[py as usize][inc.me as usize];
                    if inc.allowed.bits() >> pat & 1 == 0 {
                        return false;
                    }
                }
                (true, true) => {}
            }
        }
        true
    }

    fn extend<F: FnMut(&[u8])>(&self, state: &mut PrefixState, placed: &mut [bool], visit: &mut F) {
        if state.placed.len() == self.n {
            visit(&state.placed);
            return;
        }
        for a in 1..=self.n {
            if placed[a] || !self.can_place(a, placed) {
                continue;
            }
            placed[a] = true;
            state.push(a as u8);
            self.extend(state, placed, visit);
            state.pop();
            placed[a] = false;
        }
    }

    /// Valid prefixes of length `depth`, lexicographically.
    fn prefixes(&self, depth: usize) -> Vec<Vec<u8>> {
        let mut out = Vec::new();
        let depth = depth.min(self.n);
        let mut placed = vec![false; self.n + 1];
        let mut state = PrefixState::new(self.n).expect("n validated by scheme");
        self.collect_prefixes(depth, &mut state, &mut placed, &mut out);
        out
    }

    fn collect_prefixes(&self, depth: usize, state: &mut PrefixState, placed: &mut [bool], out: &mut Vec<Vec<u8>>) {
        if state.placed.len() == depth {
            out.push(state.placed.clone());
            return;
        }
        for a in 1..=self.n {
            if placed[a] || !self.can_place(a, placed) {
                continue;
            }
            placed[a] = true;
            state.push(a as u8);
            self.collect_prefixes(depth, state, placed, out);
            state.pop();
            placed[a] = false;
        }
    }

    /// Runs `run` on the subtree below each depth-2 prefix in parallel, results in prefix order.
    fn fan_out<T: Send, F>(&self, run: F) -> Vec<T>
    where
        F: Fn(&mut PrefixState, &mut [bool]) -> T + Sync,
    {
        self.prefixes(2)
            .into_par_iter()
            .map(|prefix| {
                let mut placed = vec![false; self.n + 1];
                let mut state = PrefixState::new(self.n).expect("n validated by scheme");
                for &a in &prefix {
                    placed[a as usize] = true;
                    state.push(a);
                }
                run(&mut state, &mut placed)
            })
            .collect()
    }
}

fn check_generation_size(n: usize) -> Result<()> {
    if n > MAX_ORDER_LEN {
        return Err(Error::TooLarge { what: "domain generation", n, limit: MAX_ORDER_LEN });
    }
    Ok(())
}

/// Every linear order on `[n]` satisfying all conditions of `scheme`, in canonical order.
pub fn generate_domain(scheme: &Scheme) -> Result<Domain> {
    let n = scheme.n();
    check_generation_size(n)?;
    let searcher = Searcher::new(scheme);
    let chunks = searcher.fan_out(|state, placed| {
        let mut out = Vec::new();
        searcher.extend(state, placed, &mut |r| out.push(LinearOrder::from_ranking_unchecked(r)));
        out
    });
    // depth-first in increasing label order, chunks in prefix order: already sorted
    let orders: Vec<LinearOrder> = chunks.into_iter().flatten().collect();
    Ok(Domain::from_sorted_unchecked(AlternativeSet::full(n)?, orders))
}

/// Size of the domain of `scheme` without storing its orders.
pub fn count_domain(scheme: &Scheme) -> Result<u64> {
    check_generation_size(scheme.n())?;
    let searcher = Searcher::new(scheme);
    let counts = searcher.fan_out(|state, placed| {
        let mut count = 0u64;
        searcher.extend(state, placed, &mut |_| count += 1);
        count
    });
    Ok(counts.into_iter().sum())
}

/// Factorial reference: filters all `n!` orders through a full condition check.
pub fn brute_force_domain(scheme: &Scheme) -> Result<Domain> {
    let n = scheme.n();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge { what: "brute-force generation", n, limit: BRUTE_FORCE_LIMIT });
    }
    let conditions: Vec<(Triple, PatternMask)> =
        scheme.iter().map(|(t, c)| (t, c.forbidden_patterns())).collect();
    let mut orders = Vec::new();
    for_each_permutation(n, |perm| {
        let o = LinearOrder::from_ranking_unchecked(perm);
        if conditions.iter().all(|(t, forbidden)| !forbidden.contains(LocalPattern::of(&o, t))) {
            orders.push(o);
        }
    });
    Domain::from_orders(n, orders)
}

/// Calls `visit` on every permutation of `1..=n` in lexicographic order.
pub fn for_each_permutation(n: usize, mut visit: impl FnMut(&[u8])) {
    let mut perm: Vec<u8> = (1..=n as u8).collect();
    loop {
        visit(&perm);
        // next lexicographic permutation
        let Some(i) = (1..perm.len()).rev().find(|&i| perm[i - 1] < perm[i]) else {
            return;
        };
        let j = (i..perm.len()).rev().find(|&j| perm[j] > perm[i - 1]).expect("pivot has a successor");
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
}

/// All orders satisfying both `1N3` and `3N1` on every triple.
pub fn common_part_domain(n: usize) -> Result<Domain> {
    if n < 1 {
        return Err(Error::InvalidArgument("common part needs n >= 1".into()));
    }
    generate_domain(&common_part_scheme(n)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::condition::{ConditionSet, NeverCondition, N_1N3};
    use crate::scheme::{fishburn_scheme, set_alternating_scheme, FishburnParity};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn set(n: usize, xs: &[usize]) -> AlternativeSet {
        AlternativeSet::from_elements(n, xs.iter().copied()).unwrap()
    }

    fn strings(d: &Domain) -> Vec<String> {
        d.orders().iter().map(|o| o.to_string()).collect()
    }

    #[test]
    fn small_examples() {
        let s = set_alternating_scheme(&set(4, &[2]), 4).unwrap();
        assert_eq!(brute_force_domain(&s).unwrap().len(), 9);
        assert_eq!(generate_domain(&s).unwrap().len(), 9);

        let single = Scheme::from_assignment(3, vec![ConditionSet::single(N_1N3)]).unwrap();
        let d = brute_force_domain(&single).unwrap();
        assert_eq!(strings(&d), ["123", "132", "213", "312"]);
        assert_eq!(generate_domain(&single).unwrap(), d);

        let one = Scheme::from_assignment(1, vec![]).unwrap();
        assert_eq!(strings(&brute_force_domain(&one).unwrap()), ["1"]);
        assert_eq!(strings(&generate_domain(&one).unwrap()), ["1"]);
    }

    #[test]
    fn common_part_examples() {
        let sizes: Vec<usize> = (1..=6).map(|n| common_part_domain(n).unwrap().len()).collect();
        assert_eq!(sizes, [1, 2, 3, 5, 8, 13]);
        assert_eq!(strings(&common_part_domain(3).unwrap()), ["123", "132", "213"]);
    }

    #[test]
    fn common_part_orders_are_disjoint_adjacent_swaps() {
        for n in 1..=9 {
            for o in common_part_domain(n).unwrap().orders() {
                let r = o.ranking();
                let mut i = 0;
                while i < n {
                    if r[i] as usize == i + 1 {
                        i += 1;
                    } else {
                        assert_eq!((r[i] as usize, r[i + 1] as usize), (i + 2, i + 1), "{o}");
                        i += 2;
                    }
                }
            }
        }
    }

    #[test]
    fn generator_matches_brute_force_on_random_schemes() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 3..=7 {
            for _ in 0..40 {
                let triples = Triple::all(n);
                let assignment = triples
                    .iter()
                    .map(|_| {
                        let mut c = ConditionSet::EMPTY;
                        for _ in 0..rng.gen_range(1..=2) {
                            c.insert(NeverCondition::new(rng.gen_range(1..=3), rng.gen_range(1..=3)).unwrap());
                        }
                        c
                    })
                    .collect();
                let s = Scheme::from_assignment(n, assignment).unwrap();
                assert_eq!(generate_domain(&s).unwrap(), brute_force_domain(&s).unwrap());
                assert_eq!(count_domain(&s).unwrap() as usize, brute_force_domain(&s).unwrap().len());
            }
        }
    }

    #[test]
    fn fishburn_sizes() {
        assert_eq!(generate_domain(&fishburn_scheme(4, FishburnParity::Even).unwrap()).unwrap().len(), 9);
        assert_eq!(count_domain(&fishburn_scheme(5, FishburnParity::Even).unwrap()).unwrap(), 20);
        assert_eq!(count_domain(&fishburn_scheme(5, FishburnParity::Odd).unwrap()).unwrap(), 20);
        assert_eq!(count_domain(&fishburn_scheme(7, FishburnParity::Even).unwrap()).unwrap(), 100);
    }

    #[test]
    fn brute_force_guard() {
        let s = set_alternating_scheme(&set(11, &[]), 11).unwrap();
        assert!(matches!(brute_force_domain(&s), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn permutations_in_lex_order() {
        let mut seen = Vec::new();
        for_each_permutation(3, |p| seen.push(p.to_vec()));
        assert_eq!(seen, [[1, 2, 3], [1, 3, 2], [2, 1, 3], [2, 3, 1], [3, 1, 2], [3, 2, 1]]);
        let mut count = 0;
        for_each_permutation(6, |_| count += 1);
        assert_eq!(count, 720);
    }
}
