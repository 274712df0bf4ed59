//! Part decomposition of the even scheme's domain and its bijection with Dyck words.
//!
//! An order of the even-scheme domain on `n` alternatives (n even) is in part `k` when its
//! top `2k` alternatives are exactly `{1, .., 2k}` and its top `2(k-1)` are not. The top
//! segment of a part-`k` order is encoded as a Dyck word of length `2(k+1)`: a leading `u`,
//! then `d` for each alternative in `{1, 2, 4, .., 2k-2}` and `u` for the others, then a
//! trailing `d`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::scheme::{named_set, set_alternating_scheme, NamedSetKind};
use crate::sizes::even_scheme_size;

pub use crate::sizes::catalan;

/// A Dyck word over `{u, d}`, boundary letters included.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct DyckWord {
    letters: String,
}

impl DyckWord {
    pub fn parse(text: &str) -> Result<Self> {
        let mut height = 0i64;
        for c in text.chars() {
            match c {
                'u' => height += 1,
                'd' => height -= 1,
                _ => return Err(Error::InvalidDyckWord(format!("{text:?}: letter {c:?} is not u or d"))),
            }
            if height < 0 {
                return Err(Error::InvalidDyckWord(format!("{text:?}: prefix goes below zero")));
            }
        }
        if height != 0 {
            return Err(Error::InvalidDyckWord(format!("{text:?}: unequal numbers of u and d")));
        }
        if text.is_empty() {
            return Err(Error::InvalidDyckWord("empty word".into()));
        }
        Ok(Self { letters: text.to_string() })
    }

    pub fn as_str(&self) -> &str {
        &self.letters
    }

    /// `k` for a word of length `2(k+1)`.
    pub fn half_length(&self) -> usize {
        self.letters.len() / 2 - 1
    }
}

impl fmt::Display for DyckWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.letters)
    }
}

/// Part number `k >= 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct PartIndex(pub usize);

/// `{1, 2, 4, .., 2k-2}`: the alternatives encoded as `d` among the top `2k`.
fn is_down(a: usize, k: usize) -> bool {
    a == 1 || (a % 2 == 0 && a <= 2 * k - 2)
}

/// All Dyck words with `pairs` pairs, in lexicographic order (`d < u`).
pub fn dyck_words(pairs: usize) -> Vec<DyckWord> {
    fn extend(buf: &mut String, ups: usize, downs: usize, pairs: usize, out: &mut Vec<DyckWord>) {
        if ups == pairs && downs == pairs {
            out.push(DyckWord { letters: buf.clone() });
            return;
        }
        if downs < ups {
            buf.push('d');
            extend(buf, ups, downs + 1, pairs, out);
            buf.pop();
        }
        if ups < pairs {
            buf.push('u');
            extend(buf, ups + 1, downs, pairs, out);
            buf.pop();
        }
    }
    let mut out = Vec::new();
    if pairs > 0 {
        extend(&mut String::new(), 0, 0, pairs, &mut out);
    }
    out
}

/// Encodes the top `2k` segment of a part-`k` order.
pub fn mu(prefix: &[u8], k: usize) -> Result<DyckWord> {
    let mut seen = vec![false; 2 * k + 1];
    if k == 0 || prefix.len() != 2 * k {
        return Err(Error::InvalidArgument(format!("prefix of length {} is not a top-{} segment", prefix.len(), 2 * k)));
    }
    for &a in prefix {
        let a = a as usize;
        if a == 0 || a > 2 * k || seen[a] {
            return Err(Error::InvalidArgument(format!("prefix is not a permutation of 1..={}", 2 * k)));
        }
        seen[a] = true;
    }
    let mut letters = String::with_capacity(2 * k + 2);
    letters.push('u');
    letters.extend(prefix.iter().map(|&a| if is_down(a as usize, k) { 'd' } else { 'u' }));
    letters.push('d');
    DyckWord::parse(&letters)
}

/// Decodes a Dyck word of length `2(k+1)`: `d` slots take `{1, 2, 4, ..}` ascending and
/// `u` slots take the rest of `{1, .., 2k}` ascending.
pub fn mu_inverse(word: &DyckWord) -> Result<Vec<u8>> {
    let k = word.half_length();
    if k == 0 {
        return Err(Error::InvalidDyckWord(format!("{word}: too short to encode a segment")));
    }
    let inner = &word.letters[1..word.letters.len() - 1];
    let downs: Vec<usize> = (1..=2 * k).filter(|&a| is_down(a, k)).collect();
    let ups: Vec<usize> = (1..=2 * k).filter(|&a| !is_down(a, k)).collect();
    if inner.chars().filter(|&c| c == 'd').count() != downs.len() {
        return Err(Error::InvalidDyckWord(format!("{word}: boundary letters are not u ... d")));
    }
    let (mut di, mut ui) = (downs.into_iter(), ups.into_iter());
    Ok(inner
        .chars()
        .map(|c| if c == 'd' { di.next() } else { ui.next() }.expect("letter counts checked") as u8)
        .collect())
}

/// Smallest `k` whose top `2k` alternatives are `{1, .., 2k}`.
pub fn part_of(ranking: &[u8]) -> usize {
    let mut max_seen = 0;
    for (i, &a) in ranking.iter().enumerate() {
        max_seen = max_seen.max(a as usize);
        if i % 2 == 1 && max_seen == i + 1 {
            return (i + 1) / 2;
        }
    }
    ranking.len().div_ceil(2)
}

/// Splits the even scheme's domain into its parts.
pub fn split_parts(domain: &Domain) -> Result<BTreeMap<PartIndex, Domain>> {
    let n = domain.n();
    if n < 2 || n % 2 == 1 || !domain.is_standard() {
        return Err(Error::NotEvenScheme(format!("parts are defined for even n over 1..n, got n={n}")));
    }
    if n >= 4 {
        let scheme = set_alternating_scheme(&named_set(NamedSetKind::Even, n)?, n)?;
        let allowed = scheme.allowed_patterns();
        let fits = domain.orders().iter().all(|o| {
            scheme.triples().iter().zip(&allowed).all(|(t, m)| m.contains(crate::condition::LocalPattern::of(o, t)))
        });
        if !fits || num_traits::ToPrimitive::to_usize(&even_scheme_size(n)) != Some(domain.len()) {
            return Err(Error::NotEvenScheme("domain is not the even scheme's domain".into()));
        }
    } else if domain.len() != 2 {
        return Err(Error::NotEvenScheme("domain is not the even scheme's domain".into()));
    }
    let mut parts: BTreeMap<PartIndex, Vec<_>> = BTreeMap::new();
    for o in domain.orders() {
        parts.entry(PartIndex(part_of(o.ranking()))).or_default().push(*o);
    }
    Ok(parts
        .into_iter()
        .map(|(k, orders)| (k, Domain::from_sorted_unchecked(*domain.alternatives(), orders)))
        .collect())
}

/// Distinct top-`2k` segments of a part.
pub fn part_prefixes(part: &Domain, k: usize) -> BTreeSet<Vec<u8>> {
    part.orders().iter().map(|o| o.ranking()[..2 * k].to_vec()).collect()
}

/// One row of the part-size table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartRow {
    pub k: usize,
    pub part_size: usize,
    /// `C_{k+1} * a(n - 2k)`.
    pub catalan_times_a: num_bigint::BigUint,
}

pub fn part_table(domain: &Domain) -> Result<Vec<PartRow>> {
    let n = domain.n();
    Ok(split_parts(domain)?
        .into_iter()
        .map(|(PartIndex(k), part)| PartRow {
            k,
            part_size: part.len(),
            catalan_times_a: catalan(k + 1) * even_scheme_size(n - 2 * k),
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::DYCK_TABLE;
    use crate::generate::generate_domain;
    use crate::order::LinearOrder;

    fn even(n: usize) -> Domain {
        generate_domain(&set_alternating_scheme(&named_set(NamedSetKind::Even, n).unwrap(), n).unwrap()).unwrap()
    }

    fn labels(prefix: &[u8]) -> String {
        prefix.iter().map(|a| a.to_string()).collect()
    }

    #[test]
    fn parts_at_six() {
        let d = even(6);
        let parts = split_parts(&d).unwrap();
        let sizes: Vec<usize> = parts.values().map(|p| p.len()).collect();
        assert_eq!(sizes, [18, 10, 14]);
        let p1: Vec<String> = part_prefixes(&parts[&PartIndex(1)], 1).iter().map(|p| labels(p)).collect();
        assert_eq!(p1, ["12", "21"]);
        let p2: Vec<String> = part_prefixes(&parts[&PartIndex(2)], 2).iter().map(|p| labels(p)).collect();
        assert_eq!(p2, ["1324", "1342", "3124", "3142", "3412"]);
    }

    #[test]
    fn split_rejects_other_domains() {
        assert!(split_parts(&even(5)).is_err_and(|e| matches!(e, Error::NotEvenScheme(_))));
        let odd = generate_domain(&set_alternating_scheme(&named_set(NamedSetKind::Odd, 6).unwrap(), 6).unwrap()).unwrap();
        assert!(split_parts(&odd).is_err());
    }

    #[test]
    fn published_words() {
        for (prefix, word) in DYCK_TABLE {
            let o = LinearOrder::parse(prefix).unwrap();
            assert_eq!(mu(o.ranking(), 2).unwrap().as_str(), word);
            assert_eq!(labels(&mu_inverse(&DyckWord::parse(word).unwrap()).unwrap()), prefix);
        }
    }

    #[test]
    fn word_validation() {
        assert!(DyckWord::parse("udud").is_ok());
        assert!(DyckWord::parse("duud").is_err());
        assert!(DyckWord::parse("uud").is_err());
        assert!(DyckWord::parse("uxd").is_err());
        assert!(mu(&[1, 1, 3, 4], 2).is_err());
        assert!(mu(&[1, 5, 3, 4], 2).is_err());
    }

    #[test]
    fn catalan_counts_words() {
        assert_eq!(catalan(0), 1u32.into());
        for k in 1..=10 {
            assert_eq!(num_bigint::BigUint::from(dyck_words(k).len()), catalan(k), "k={k}");
        }
    }

    #[test]
    fn mu_is_a_bijection() {
        for k in 1..=8 {
            for w in dyck_words(k + 1) {
                let prefix = mu_inverse(&w).unwrap();
                assert_eq!(mu(&prefix, k).unwrap(), w);
            }
        }
    }

    #[test]
    fn part_sizes_follow_the_catalan_law() {
        for n in (4..=14).step_by(2) {
            let d = even(n);
            let parts = split_parts(&d).unwrap();
            assert_eq!(parts.len(), n / 2);
            for row in part_table(&d).unwrap() {
                assert_eq!(num_bigint::BigUint::from(row.part_size), row.catalan_times_a, "n={n} k={}", row.k);
            }
            for (&PartIndex(k), part) in &parts {
                let prefixes = part_prefixes(part, k);
                let images: BTreeSet<Vec<u8>> = dyck_words(k + 1).iter().map(|w| mu_inverse(w).unwrap()).collect();
                assert_eq!(prefixes, images, "n={n} k={k}");
                for o in part.orders() {
                    let top = &o.ranking()[..2 * k];
                    let downs: Vec<u8> = top.iter().copied().filter(|&a| is_down(a as usize, k)).collect();
                    let ups: Vec<u8> = top.iter().copied().filter(|&a| !is_down(a as usize, k)).collect();
                    assert!(downs.windows(2).all(|w| w[0] < w[1]));
                    assert!(ups.windows(2).all(|w| w[0] < w[1]));
                }
            }
        }
    }
}
