//! Truncated coefficients of the pattern generating functions.
//!
//! `F` counts words containing `u` by length and norm, `A` additionally
//! records the number of embeddings, and the minimal-cluster terms list
//! `(rows, length, norm)` for every cluster. All counts are exact.
//!
//! F and A coefficients come only from enumerating compositions. The
//! binomial closed form is used for `count_U` alone and is tested against
//! enumeration.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::clusters::{minimal_cluster, stacked_floor};
use crate::embedding::{embedding_count, EmbeddingSet};
use crate::error::{Error, Result};
use crate::words::{Letter, Permutation, Word};

/// Calls `visit` on every word of length `len` and norm `norm`, i.e. every
/// composition of `norm` into `len` positive parts, in lexicographic order.
pub fn for_each_composition(len: usize, norm: u64, mut visit: impl FnMut(&[Letter])) {
    let mut buf = Vec::with_capacity(len);
    compositions_rec(&mut buf, len, norm, &mut visit);
}

fn compositions_rec(
    buf: &mut Vec<Letter>,
    len: usize,
    norm: u64,
    visit: &mut impl FnMut(&[Letter]),
) {
    if len == 0 {
        if norm == 0 {
            visit(buf);
        }
        return;
    }
    if norm < len as u64 {
        return;
    }
    if len == 1 {
        buf.push(norm as Letter);
        visit(buf);
        buf.pop();
        return;
    }
    for a in 1..=norm - (len as u64 - 1) {
        buf.push(a as Letter);
        compositions_rec(buf, len - 1, norm - a, visit);
        buf.pop();
    }
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

fn require_pattern(u: &Word) -> Result<()> {
    if u.is_empty() {
        Err(Error::EmptyPattern)
    } else {
        Ok(())
    }
}

fn histogram(u: &[Letter], len: usize, norm: u64) -> BTreeMap<usize, u64> {
    let mut hist = BTreeMap::new();
    for_each_composition(len, norm, |w| {
        *hist.entry(embedding_count(u, w)).or_insert(0) += 1;
    });
    hist
}

fn to_big(hist: BTreeMap<usize, u64>) -> BTreeMap<usize, BigUint> {
    hist.into_iter()
        .map(|(k, c)| (k, BigUint::from(c)))
        .collect()
}

/// Words of length `len` and norm `norm` that contain `u`.
pub fn count_geq(u: &Word, len: usize, norm: u64) -> Result<BigUint> {
    require_pattern(u)?;
    let mut count = 0u64;
    for_each_composition(len, norm, |w| {
        if embedding_count(u.letters(), w) > 0 {
            count += 1;
        }
    });
    Ok(count.into())
}

/// Words of length `len` and norm `norm`, grouped by `|Em(u, w)|`. Only
/// nonzero counts are recorded.
pub fn em_count_distribution(u: &Word, len: usize, norm: u64) -> Result<BTreeMap<usize, BigUint>> {
    require_pattern(u)?;
    Ok(to_big(histogram(u.letters(), len, norm)))
}

fn check_positions(u: &Permutation, n: usize, t: &EmbeddingSet) -> Result<Vec<usize>> {
    if u.is_empty() {
        return Err(Error::EmptyPattern);
    }
    let last = (n + 1).saturating_sub(u.len());
    if t.last() > last {
        return Err(Error::PositionOutOfRange {
            position: t.last(),
            length: n,
        });
    }
    Ok(t.positions().iter().map(|&p| p - 1).collect())
}

/// Words of length `n` and norm `m` into which `u` embeds at least at every
/// position of `T`: weak compositions of the excess over the letterwise
/// smallest such word.
#[allow(non_snake_case)]
pub fn count_U(u: &Permutation, m: u64, n: usize, t: &EmbeddingSet) -> Result<BigUint> {
    let offsets = check_positions(u, n, t)?;
    let floor: u64 = stacked_floor(u.letters(), &offsets, n)
        .iter()
        .map(|&a| a as u64)
        .sum();
    if m < floor {
        return Ok(BigUint::zero());
    }
    Ok(binomial(m - floor + n as u64 - 1, n as u64 - 1))
}

/// Words of length `n` and norm `m` with `Em(u, w) = S` exactly, by
/// inclusion–exclusion over the supersets of `S`.
#[allow(non_snake_case)]
pub fn count_W(u: &Permutation, m: u64, n: usize, s: &EmbeddingSet) -> Result<BigUint> {
    check_positions(u, n, s)?;
    let last = n + 1 - u.len();
    let free: Vec<usize> = (1..=last).filter(|p| !s.contains(*p)).collect();
    if free.len() >= 64 {
        return Err(Error::GuardExceeded {
            what: "free positions",
            value: free.len(),
            limit: 63,
        });
    }
    let mut total = BigInt::zero();
    for mask in 0u64..1 << free.len() {
        let mut positions = s.positions().to_vec();
        positions.extend(
            free.iter()
                .enumerate()
                .filter(|&(b, _)| mask >> b & 1 == 1)
                .map(|(_, &p)| p),
        );
        positions.sort_unstable();
        let t = EmbeddingSet::new(positions)?;
        let term = BigInt::from(count_U(u, m, n, &t)?);
        if mask.count_ones() % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    debug_assert!(!total.is_negative());
    Ok(total.magnitude().clone())
}

/// Shift vectors with entries in `1..=max_shift` and total at most `budget`,
/// shortest first, lexicographic within a length.
fn bounded_shift_vectors(max_shift: usize, budget: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, left: usize, max_shift: usize, out: &mut Vec<Vec<usize>>) {
        out.push(cur.clone());
        for e in 1..=max_shift.min(left) {
            cur.push(e);
            rec(cur, left - e, max_shift, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), budget, max_shift, &mut out);
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// `(|m(u, E)|, ‖m(u, E)‖)` for every anchored `E` of size `rows` whose
/// gaps lie in `1..|u|`, sorted, with repeats. One row is the pattern
/// itself.
pub fn minimal_cluster_gf_terms(u: &Word, rows: usize) -> Result<Vec<(usize, u64)>> {
    require_pattern(u)?;
    if rows == 0 {
        return Err(Error::InvalidArgument(
            "a cluster has at least one row".into(),
        ));
    }
    let max_shift = u.len() - 1;
    let mut terms = Vec::new();
    let mut shifts = vec![1; rows - 1];
    if max_shift == 0 && rows > 1 {
        return Ok(terms);
    }
    loop {
        let e = EmbeddingSet::from_shift_vector(1, &shifts)?;
        let m = minimal_cluster(u, &e)?;
        terms.push(m.weight());
        let Some(k) = (0..shifts.len()).rev().find(|&k| shifts[k] < max_shift) else {
            break;
        };
        shifts[k] += 1;
        shifts[k + 1..].iter_mut().for_each(|s| *s = 1);
    }
    terms.sort_unstable();
    Ok(terms)
}

/// Which generating function a [`TruncatedSeries`] holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SeriesKind {
    /// Exponents `(length, norm)`.
    F,
    /// Exponents `(length, norm, embeddings)`.
    A,
    /// Exponents `(rows, length, norm)`.
    M,
}

impl FromStr for SeriesKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "F" | "f" => Ok(SeriesKind::F),
            "A" | "a" => Ok(SeriesKind::A),
            "M" | "m" => Ok(SeriesKind::M),
            _ => Err(Error::parse("series", s, "expected F, A or M")),
        }
    }
}

impl fmt::Display for SeriesKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SeriesKind::F => "F",
            SeriesKind::A => "A",
            SeriesKind::M => "M",
        })
    }
}

/// Nonzero coefficients up to the length and norm bounds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncatedSeries {
    pub kind: SeriesKind,
    pub max_length: usize,
    pub max_norm: u64,
    #[serde(with = "coefficient_list")]
    pub coefficients: BTreeMap<Vec<u64>, BigUint>,
}

impl TruncatedSeries {
    pub fn coefficient(&self, exponents: &[u64]) -> BigUint {
        self.coefficients
            .get(exponents)
            .cloned()
            .unwrap_or_default()
    }

    /// Text dump, one coefficient per line. Cluster terms are written once
    /// per cluster.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (exps, count) in &self.coefficients {
            let key: Vec<String> = exps.iter().map(u64::to_string).collect();
            let key = key.join(" ");
            match self.kind {
                SeriesKind::M => {
                    let reps = count.to_usize().unwrap_or(usize::MAX);
                    for _ in 0..reps {
                        out.push_str(&key);
                        out.push('\n');
                    }
                }
                _ => {
                    out.push_str(&format!("{key} {count}\n"));
                }
            }
        }
        out
    }
}

/// JSON shape: a list of `{"exponents": [..], "count": n}`, with `n` a
/// number when it fits in 64 bits and a decimal string otherwise.
mod coefficient_list {
    use super::*;
    use serde::de::Error as _;
    use serde::{Deserializer, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Entry {
        exponents: Vec<u64>,
        count: Count,
    }

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    enum Count {
        Small(u64),
        Big(String),
    }

    pub fn serialize<S: Serializer>(
        map: &BTreeMap<Vec<u64>, BigUint>,
        ser: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let entries: Vec<Entry> = map
            .iter()
            .map(|(e, c)| Entry {
                exponents: e.clone(),
                count: c
                    .to_u64()
                    .map_or_else(|| Count::Big(c.to_string()), Count::Small),
            })
            .collect();
        entries.serialize(ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        de: D,
    ) -> std::result::Result<BTreeMap<Vec<u64>, BigUint>, D::Error> {
        Vec::<Entry>::deserialize(de)?
            .into_iter()
            .map(|e| {
                let count = match e.count {
                    Count::Small(c) => BigUint::from(c),
                    Count::Big(s) => s.parse().map_err(D::Error::custom)?,
                };
                Ok((e.exponents, count))
            })
            .collect()
    }
}

fn cells(max_len: usize, max_norm: u64) -> Vec<(usize, u64)> {
    (1..=max_len)
        .flat_map(|l| (l as u64..=max_norm).map(move |m| (l, m)))
        .collect()
}

/// Number of words enumerated by a full grid up to the bounds.
pub fn grid_size(max_len: usize, max_norm: u64) -> BigUint {
    (1..=max_len as u64).map(|l| binomial(max_norm, l)).sum()
}

/// F up to the bounds.
pub fn f_series(u: &Word, max_length: usize, max_norm: u64) -> Result<TruncatedSeries> {
    require_pattern(u)?;
    let coefficients = cells(max_length, max_norm)
        .into_par_iter()
        .map(|(l, m)| {
            let hist = histogram(u.letters(), l, m);
            let hits: u64 = hist.range(1..).map(|(_, c)| c).sum();
            (vec![l as u64, m], BigUint::from(hits))
        })
        .filter(|(_, c)| !c.is_zero())
        .collect();
    Ok(TruncatedSeries {
        kind: SeriesKind::F,
        max_length,
        max_norm,
        coefficients,
    })
}

/// A up to the bounds.
pub fn a_series(u: &Word, max_length: usize, max_norm: u64) -> Result<TruncatedSeries> {
    require_pattern(u)?;
    let coefficients = cells(max_length, max_norm)
        .into_par_iter()
        .flat_map_iter(|(l, m)| {
            histogram(u.letters(), l, m)
                .into_iter()
                .map(move |(k, c)| (vec![l as u64, m, k as u64], BigUint::from(c)))
        })
        .collect();
    Ok(TruncatedSeries {
        kind: SeriesKind::A,
        max_length,
        max_norm,
        coefficients,
    })
}

/// Minimal-cluster terms `(rows, length, norm)` with `length ≤ max_length`
/// and `norm ≤ max_norm`, counted with multiplicity.
pub fn m_series(u: &Word, max_length: usize, max_norm: u64) -> Result<TruncatedSeries> {
    require_pattern(u)?;
    let mut coefficients: BTreeMap<Vec<u64>, BigUint> = BTreeMap::new();
    if u.len() <= max_length {
        let budget = max_length - u.len();
        for shifts in bounded_shift_vectors(u.len() - 1, budget) {
            let e = EmbeddingSet::from_shift_vector(1, &shifts)?;
            let (len, norm) = minimal_cluster(u, &e)?.weight();
            if norm <= max_norm {
                *coefficients
                    .entry(vec![e.len() as u64, len as u64, norm])
                    .or_default() += 1u32;
            }
        }
    }
    Ok(TruncatedSeries {
        kind: SeriesKind::M,
        max_length,
        max_norm,
        coefficients,
    })
}

pub fn series(
    kind: SeriesKind,
    u: &Word,
    max_length: usize,
    max_norm: u64,
) -> Result<TruncatedSeries> {
    match kind {
        SeriesKind::F => f_series(u, max_length, max_norm),
        SeriesKind::A => a_series(u, max_length, max_norm),
        SeriesKind::M => m_series(u, max_length, max_norm),
    }
}

/// A cell where the two patterns' counts differ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub length: usize,
    pub norm: u64,
}

/// The lexicographically first `(length, norm)` at which the F (or, when
/// `strong`, the A) coefficients of `u` and `v` differ.
pub fn first_discrepancy(
    u: &Word,
    v: &Word,
    max_length: usize,
    max_norm: u64,
    strong: bool,
) -> Result<Option<Discrepancy>> {
    require_pattern(u)?;
    require_pattern(v)?;
    let differs = |(l, m): (usize, u64)| {
        let mut hu: BTreeMap<usize, u64> = BTreeMap::new();
        let mut hv: BTreeMap<usize, u64> = BTreeMap::new();
        for_each_composition(l, m, |w| {
            let (a, b) = (
                embedding_count(u.letters(), w),
                embedding_count(v.letters(), w),
            );
            if strong {
                *hu.entry(a).or_insert(0) += 1;
                *hv.entry(b).or_insert(0) += 1;
            } else {
                *hu.entry((a > 0) as usize).or_insert(0) += 1;
                *hv.entry((b > 0) as usize).or_insert(0) += 1;
            }
        });
        hu != hv
    };
    let first = cells(max_length, max_norm)
        .into_par_iter()
        .filter(|&cell| differs(cell))
        .min()
        .map(|(length, norm)| Discrepancy { length, norm });
    Ok(first)
}

/// Do `u` and `v` have equal F coefficients up to the bounds?
pub fn wilf_truncated_equal(u: &Word, v: &Word, max_length: usize, max_norm: u64) -> Result<bool> {
    Ok(first_discrepancy(u, v, max_length, max_norm, false)?.is_none())
}

/// Do `u` and `v` have equal A coefficients up to the bounds?
pub fn strong_truncated_equal(
    u: &Word,
    v: &Word,
    max_length: usize,
    max_norm: u64,
) -> Result<bool> {
    Ok(first_discrepancy(u, v, max_length, max_norm, true)?.is_none())
}

/// Default bounds `(|u| + 4, ‖u‖ + 10)`.
pub fn default_bounds(u: &Word) -> (usize, u64) {
    (u.len() + 4, u.norm() + 10)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn set(s: &str) -> EmbeddingSet {
        s.parse().unwrap()
    }

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    /// Every word of length `len` with letters in `1..=norm` and norm `norm`,
    /// by plain counting in base `norm`.
    fn oracle_words(len: usize, norm: u64) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let base = norm as u32;
        let mut digits = vec![1u32; len];
        loop {
            if digits.iter().map(|&d| d as u64).sum::<u64>() == norm {
                out.push(digits.clone());
            }
            let mut k = len;
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                if digits[k] < base {
                    digits[k] += 1;
                    break;
                }
                digits[k] = 1;
            }
        }
    }

    fn oracle_em(u: &[u32], w: &[u32]) -> Vec<usize> {
        let mut em = Vec::new();
        for j in 0..w.len() {
            if j + u.len() <= w.len() && (0..u.len()).all(|k| u[k] <= w[j + k]) {
                em.push(j + 1);
            }
        }
        em
    }

    #[test]
    fn compositions_are_complete_and_ordered() {
        for len in 1..=4 {
            for norm in len as u64..=9 {
                let mut got = Vec::new();
                for_each_composition(len, norm, |c| got.push(c.to_vec()));
                assert_eq!(got, oracle_words(len, norm));
                assert_eq!(big(got.len() as u64), binomial(norm - 1, len as u64 - 1));
            }
        }
        let mut none = 0;
        for_each_composition(3, 2, |_| none += 1);
        assert_eq!(none, 0);
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(8, 3), big(56));
        assert_eq!(binomial(30, 15), big(155_117_520));
        assert_eq!(binomial(3, 5), big(0));
        assert_eq!(binomial(0, 0), big(1));
    }

    #[test]
    fn count_geq_examples() {
        assert_eq!(count_geq(&w("322"), 3, 7).unwrap(), big(1));
        assert_eq!(count_geq(&w("322"), 3, 6).unwrap(), big(0));
        assert_eq!(count_geq(&w("231"), 4, 9).unwrap(), big(19));
        let oracle = oracle_words(4, 9)
            .iter()
            .filter(|x| !oracle_em(&[2, 3, 1], x).is_empty())
            .count();
        assert_eq!(oracle, 19);
        assert_eq!(count_geq(&Word::empty(), 3, 3), Err(Error::EmptyPattern));
    }

    #[test]
    fn distribution_examples() {
        let d = em_count_distribution(&w("231"), 4, 9).unwrap();
        assert_eq!(d, BTreeMap::from([(0, big(37)), (1, big(18)), (2, big(1))]));
        let d = em_count_distribution(&w("231"), 3, 6).unwrap();
        assert_eq!(d, BTreeMap::from([(0, big(9)), (1, big(1))]));
        let d = em_count_distribution(&w("1"), 1, 1).unwrap();
        assert_eq!(d, BTreeMap::from([(1, big(1))]));

        let mut oracle: BTreeMap<usize, BigUint> = BTreeMap::new();
        for x in oracle_words(4, 9) {
            *oracle.entry(oracle_em(&[2, 3, 1], &x).len()).or_default() += 1u32;
        }
        assert_eq!(oracle, em_count_distribution(&w("231"), 4, 9).unwrap());
    }

    #[test]
    fn count_u_examples() {
        let u = p("231");
        assert_eq!(count_U(&u, 9, 4, &set("1")).unwrap(), big(10));
        assert_eq!(count_U(&u, 9, 4, &set("1,2")).unwrap(), big(1));
        assert_eq!(count_U(&u, 6, 4, &set("1")).unwrap(), big(0));
        assert!(matches!(
            count_U(&u, 9, 4, &set("1,3")),
            Err(Error::PositionOutOfRange { .. })
        ));
        // T need not start at 1
        assert_eq!(count_U(&u, 9, 4, &set("2")).unwrap(), big(10));
    }

    #[test]
    fn the_ten_words_over_231() {
        let words: Vec<Vec<u32>> = oracle_words(4, 9)
            .into_iter()
            .filter(|x| oracle_em(&[2, 3, 1], x).contains(&1))
            .collect();
        let expected = [
            "2313", "2322", "2331", "2412", "2421", "2511", "3312", "3321", "3411", "4311",
        ];
        let rendered: Vec<String> = words
            .iter()
            .map(|x| Word::new(x.clone()).unwrap().to_string())
            .collect();
        assert_eq!(rendered, expected);
        assert_eq!(
            count_U(&p("231"), 9, 4, &set("1")).unwrap(),
            big(words.len() as u64)
        );
    }

    #[test]
    fn count_w_examples() {
        let u = p("231");
        assert_eq!(count_W(&u, 9, 4, &set("1")).unwrap(), big(9));
        assert_eq!(count_W(&u, 9, 4, &set("1,2")).unwrap(), big(1));
        for u in ["1", "21", "312", "2413", "35142"] {
            let u = p(u);
            let (n, m) = u.as_word().weight();
            assert_eq!(count_W(&u, m, n, &set("1")).unwrap(), big(1));
        }
    }

    #[test]
    fn count_u_matches_enumeration_on_grid() {
        for u in ["1", "12", "21", "231", "312", "1342"] {
            let u = p(u);
            for n in u.len()..=6 {
                let last = n + 1 - u.len();
                for mask in 1u32..1 << last {
                    let t: Vec<usize> = (1..=last).filter(|b| mask >> (b - 1) & 1 == 1).collect();
                    let t = EmbeddingSet::new(t).unwrap();
                    for m in n as u64..=14 {
                        let brute = oracle_words(n, m)
                            .iter()
                            .filter(|x| {
                                let em = oracle_em(u.letters(), x);
                                t.positions().iter().all(|q| em.contains(q))
                            })
                            .count();
                        assert_eq!(
                            count_U(&u, m, n, &t).unwrap(),
                            big(brute as u64),
                            "u={u} m={m} n={n} T={t}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn inclusion_exclusion_recovers_count_geq() {
        for u in ["12", "231", "2413"] {
            let u = p(u);
            for n in u.len()..=5 {
                let last = n + 1 - u.len();
                for m in n as u64..=12 {
                    let mut total = BigUint::zero();
                    for mask in 1u32..1 << last {
                        let s: Vec<usize> =
                            (1..=last).filter(|b| mask >> (b - 1) & 1 == 1).collect();
                        total += count_W(&u, m, n, &EmbeddingSet::new(s).unwrap()).unwrap();
                    }
                    assert_eq!(total, count_geq(u.as_word(), n, m).unwrap());
                }
            }
        }
    }

    #[test]
    fn cluster_terms_examples() {
        assert_eq!(
            minimal_cluster_gf_terms(&w("231"), 2).unwrap(),
            vec![(4, 9), (5, 11)]
        );
        assert!(minimal_cluster_gf_terms(&w("1"), 2).unwrap().is_empty());
        assert_eq!(minimal_cluster_gf_terms(&w("1"), 1).unwrap(), vec![(1, 1)]);
        let terms = minimal_cluster_gf_terms(&w("2314"), 2).unwrap();
        assert_eq!(terms.len(), 3);
        let m12 = minimal_cluster(&w("2314"), &set("1,2")).unwrap();
        assert!(terms.contains(&m12.weight()));
        assert_eq!(minimal_cluster_gf_terms(&w("2314"), 3).unwrap().len(), 9);
        assert!(minimal_cluster_gf_terms(&w("2314"), 0).is_err());
    }

    #[test]
    fn m_series_matches_terms() {
        let u = w("231");
        let s = m_series(&u, 7, 100).unwrap();
        for rows in 1..=5usize {
            let mut expected: BTreeMap<Vec<u64>, BigUint> = BTreeMap::new();
            for (len, norm) in minimal_cluster_gf_terms(&u, rows).unwrap() {
                if len <= 7 {
                    *expected
                        .entry(vec![rows as u64, len as u64, norm])
                        .or_default() += 1u32;
                }
            }
            let got: BTreeMap<Vec<u64>, BigUint> = s
                .coefficients
                .iter()
                .filter(|(k, _)| k[0] == rows as u64)
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect();
            assert_eq!(got, expected, "rows = {rows}");
        }
        assert!(s.dump().starts_with("1 3 6\n2 4 9\n2 5 11\n"));
    }

    #[test]
    fn series_dumps() {
        let f = f_series(&w("231"), 4, 9).unwrap();
        assert_eq!(f.coefficient(&[4, 9]), big(19));
        assert_eq!(f.coefficient(&[3, 6]), big(1));
        assert_eq!(f.coefficient(&[2, 9]), big(0));
        assert!(f.dump().lines().any(|l| l == "4 9 19"));

        let a = a_series(&w("231"), 4, 9).unwrap();
        assert_eq!(a.coefficient(&[4, 9, 0]), big(37));
        assert_eq!(a.coefficient(&[4, 9, 2]), big(1));
        assert!(a.dump().lines().any(|l| l == "4 9 1 18"));
        let dump = a.dump();
        let lines: Vec<&str> = dump.lines().collect();
        assert_eq!(lines[0], "1 1 0 1");
    }

    #[test]
    fn series_json_round_trip() {
        let mut s = f_series(&w("12"), 3, 6).unwrap();
        s.coefficients.insert(
            vec![9, 99],
            "123456789012345678901234567890".parse().unwrap(),
        );
        let json = serde_json::to_string(&s).unwrap();
        assert!(json.contains("\"123456789012345678901234567890\""));
        let back: TruncatedSeries = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn truncated_comparisons() {
        let u = w("2413");
        assert!(wilf_truncated_equal(&u, &u.reversal(), 6, 15).unwrap());
        assert!(strong_truncated_equal(&u, &u, 5, 12).unwrap());
        // 12 and 21 have equal F but 112 and 121 differ in some cell
        let d = first_discrepancy(&w("112"), &w("121"), 6, 10, false).unwrap();
        let oracle = (1..=6usize)
            .flat_map(|l| (l as u64..=10).map(move |m| (l, m)))
            .find(|&(l, m)| {
                let ws = oracle_words(l, m);
                let a = ws
                    .iter()
                    .filter(|x| !oracle_em(&[1, 1, 2], x).is_empty())
                    .count();
                let b = ws
                    .iter()
                    .filter(|x| !oracle_em(&[1, 2, 1], x).is_empty())
                    .count();
                a != b
            })
            .map(|(length, norm)| Discrepancy { length, norm });
        assert_eq!(d, oracle);
    }

    #[test]
    fn grid_size_counts_words() {
        let mut words = 0u64;
        for l in 1..=4 {
            for m in l as u64..=9 {
                for_each_composition(l, m, |_| words += 1);
            }
        }
        assert_eq!(grid_size(4, 9), big(words));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn distribution_sums_and_f_relation(
            u in prop::collection::vec(1u32..4, 1..4),
            len in 1usize..6,
            extra in 0u64..6,
        ) {
            let u = Word::new(u).unwrap();
            let norm = len as u64 + extra;
            let d = em_count_distribution(&u, len, norm).unwrap();
            let total: BigUint = d.values().sum();
            prop_assert_eq!(total, binomial(norm - 1, len as u64 - 1));
            let hits: BigUint = d.range(1..).map(|(_, c)| c).sum();
            prop_assert_eq!(hits, count_geq(&u, len, norm).unwrap());
        }

        #[test]
        fn reversal_preserves_f_and_a(u in prop::collection::vec(1u32..4, 1..4)) {
            let u = Word::new(u).unwrap();
            prop_assert!(strong_truncated_equal(&u, &u.reversal(), 6, 12).unwrap());
        }
    }
}
