//! Restricted growth words, allowable words, their statistics, and the
//! codec to set partitions in standard form.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::qtpoly::{Poly, Ring};
use crate::{Error, Result, DEFAULT_MAX_N};

/// A restricted growth word `w_1 ... w_n` with maximum letter `k`.
///
/// Letters are 1-based. The empty word (n = k = 0) is valid and encodes the
/// partition of the empty set.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct RGWord {
    letters: Vec<u8>,
    k: u8,
}

impl RGWord {
    /// Validates the restricted growth condition.
    pub fn new(letters: Vec<u8>) -> Result<Self> {
        let mut max = 0u8;
        for (i, &w) in letters.iter().enumerate() {
            if w == 0 || w > max + 1 {
                return Err(Error::InvalidWord(format!(
                    "letter {w} at position {} violates restricted growth",
                    i + 1
                )));
            }
            max = max.max(w);
        }
        Ok(RGWord { letters, k: max })
    }

    pub(crate) fn from_valid(letters: Vec<u8>) -> Self {
        debug_assert!(RGWord::new(letters.clone()).is_ok());
        let k = letters.iter().copied().max().unwrap_or(0);
        RGWord { letters, k }
    }

    /// `12...n`.
    pub fn identity(n: usize) -> Self {
        RGWord::from_valid((1..=n as u8).collect())
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Maximum letter, i.e. the number of blocks.
    pub fn max_letter(&self) -> usize {
        self.k as usize
    }

    /// `m_i = max(w_1..w_i)` for `i = 1..n`.
    pub fn prefix_maxima(&self) -> Vec<u8> {
        let mut m = 0;
        self.letters
            .iter()
            .map(|&w| {
                m = m.max(w);
                m
            })
            .collect()
    }

    /// Every even letter occurs exactly once.
    pub fn is_allowable(&self) -> bool {
        let mut seen = vec![false; self.k as usize + 1];
        for &w in &self.letters {
            if w % 2 == 0 {
                if seen[w as usize] {
                    return false;
                }
                seen[w as usize] = true;
            }
        }
        true
    }

    pub fn is_weakly_increasing(&self) -> bool {
        self.letters.windows(2).all(|p| p[0] <= p[1])
    }

    // (A_i, B_i) per position
    fn stat_terms(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        let mut m = 0u8;
        self.letters.iter().enumerate().map(move |(i, &w)| {
            let prev = m;
            m = m.max(w);
            if i == 0 || prev < w {
                (0, 0)
            } else {
                (w as u32 - 1, (prev > w) as u32)
            }
        })
    }

    /// `A(w)`: sum of `w_i - 1` over positions with `m_{i-1} >= w_i`.
    pub fn stat_a(&self) -> u32 {
        self.stat_terms().map(|(a, _)| a).sum()
    }

    /// `B(w)`: number of positions with `m_{i-1} > w_i`.
    pub fn stat_b(&self) -> u32 {
        self.stat_terms().map(|(_, b)| b).sum()
    }

    /// `wt(w) = q^{A(w)}`; also the rank of `w` in the Stirling poset.
    pub fn wt<C: Ring>(&self) -> Poly<C> {
        Poly::q_pow(self.stat_a())
    }

    /// `wt'(w) = q^{A(w)} t^{B(w)}`, with `t` standing for `1 + q`.
    /// Only defined on allowable words.
    pub fn wt_prime<C: Ring>(&self) -> Result<Poly<C>> {
        if !self.is_allowable() {
            return Err(Error::NotAllowable(self.to_string()));
        }
        Ok(Poly::qt_pow(self.stat_a(), self.stat_b()))
    }

    /// Element `i` (1-based) goes to block `w_i`.
    pub fn to_partition(&self) -> SetPartition {
        let mut blocks = vec![Vec::new(); self.k as usize];
        for (i, &w) in self.letters.iter().enumerate() {
            blocks[w as usize - 1].push(i + 1);
        }
        SetPartition { blocks }
    }

    /// Returns a copy with `letters[idx]` replaced.
    pub(crate) fn with_letter(&self, idx: usize, value: u8) -> Self {
        let mut letters = self.letters.clone();
        letters[idx] = value;
        RGWord::from_valid(letters)
    }
}

/// Digit string when every letter is at most 9, comma-separated otherwise.
impl fmt::Display for RGWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k <= 9 {
            for w in &self.letters {
                write!(f, "{w}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.letters.iter().map(|w| w.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl FromStr for RGWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let letters: Option<Vec<u8>> = if s.contains(',') {
            s.split(',').map(|p| p.trim().parse::<u8>().ok()).collect()
        } else {
            s.chars().map(|c| c.to_digit(10).map(|d| d as u8)).collect()
        };
        let letters = letters.ok_or_else(|| Error::Parse(format!("bad word {s:?}")))?;
        RGWord::new(letters)
    }
}

impl Serialize for RGWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for RGWord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A set partition of `{1..n}` in standard form: blocks ordered by their
/// minima, each block sorted.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SetPartition {
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    /// Accepts blocks only if they are already in standard form and cover
    /// `{1..n}` exactly once.
    pub fn new(blocks: Vec<Vec<usize>>) -> Result<Self> {
        let n: usize = blocks.iter().map(Vec::len).sum();
        let mut seen = vec![false; n + 1];
        let mut prev_min = 0;
        for block in &blocks {
            let Some(&min) = block.first() else {
                return Err(Error::InvalidPartition("empty block".into()));
            };
            if !block.windows(2).all(|p| p[0] < p[1]) {
                return Err(Error::InvalidPartition(format!(
                    "block {block:?} is not increasing"
                )));
            }
            if min <= prev_min {
                return Err(Error::InvalidPartition(
                    "blocks are not ordered by their minima".into(),
                ));
            }
            prev_min = min;
            for &e in block {
                if e == 0 || e > n || seen[e] {
                    return Err(Error::InvalidPartition(format!(
                        "element {e} missing, repeated or out of range"
                    )));
                }
                seen[e] = true;
            }
        }
        Ok(SetPartition { blocks })
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_elements(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    pub fn to_word(&self) -> RGWord {
        let mut letters = vec![0u8; self.num_elements()];
        for (j, block) in self.blocks.iter().enumerate() {
            for &e in block {
                letters[e - 1] = j as u8 + 1;
            }
        }
        RGWord::from_valid(letters)
    }

    /// Exponent of `prod_j q^{(j-1)(|B_j|-1)}`; agrees with `wt` of the word.
    pub fn weight_degree(&self) -> u32 {
        self.blocks
            .iter()
            .enumerate()
            .map(|(j, b)| (j * (b.len() - 1)) as u32)
            .sum()
    }
}

/// Slash form, e.g. `14/236/57`. Elements above 9 are comma-separated.
impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wide = self.num_elements() > 9;
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| {
                let items: Vec<String> = b.iter().map(|e| e.to_string()).collect();
                items.join(if wide { "," } else { "" })
            })
            .collect();
        write!(f, "{}", parts.join("/"))
    }
}

impl FromStr for SetPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return SetPartition::new(Vec::new());
        }
        let blocks = s
            .split('/')
            .map(|b| {
                let items: std::result::Result<Vec<usize>, ()> = if b.contains(',') {
                    b.split(',').map(|e| e.trim().parse().map_err(|_| ())).collect()
                } else {
                    b.chars()
                        .map(|c| c.to_digit(10).map(|d| d as usize).ok_or(()))
                        .collect()
                };
                items.map_err(|_| Error::Parse(format!("bad block {b:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        SetPartition::new(blocks)
    }
}

fn check_n(n: usize, max_n: usize) -> Result<()> {
    if n > max_n {
        return Err(Error::BoundExceeded {
            what: "word length",
            requested: n,
            limit: max_n,
        });
    }
    Ok(())
}

/// All RG-words of length `n` with maximum letter `k`, in lexicographic order.
pub fn enumerate_rg(n: usize, k: usize) -> Result<Vec<RGWord>> {
    enumerate_rg_with(n, k, DEFAULT_MAX_N, false)
}

/// The allowable words `A(n, k)`, in lexicographic order.
pub fn enumerate_allowable(n: usize, k: usize) -> Result<Vec<RGWord>> {
    enumerate_rg_with(n, k, DEFAULT_MAX_N, true)
}

/// Backtracking enumeration with an explicit length bound. With
/// `allowable_only`, even letters may be used once.
pub fn enumerate_rg_with(
    n: usize,
    k: usize,
    max_n: usize,
    allowable_only: bool,
) -> Result<Vec<RGWord>> {
    check_n(n, max_n)?;
    if k > n || (k == 0) != (n == 0) || k > u8::MAX as usize {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(n);
    extend(&mut prefix, 0, n, k as u8, allowable_only, &mut out);
    Ok(out)
}

fn extend(
    prefix: &mut Vec<u8>,
    max: u8,
    n: usize,
    k: u8,
    allowable_only: bool,
    out: &mut Vec<RGWord>,
) {
    if prefix.len() == n {
        out.push(RGWord { letters: prefix.clone(), k });
        return;
    }
    let remaining = n - prefix.len();
    let upper = (max + 1).min(k);
    for w in 1..=upper {
        let new_max = max.max(w);
        // every letter above new_max still has to appear
        if (k - new_max) as usize > remaining - 1 {
            continue;
        }
        if allowable_only && w % 2 == 0 && w <= max {
            continue;
        }
        prefix.push(w);
        extend(prefix, new_max, n, k, allowable_only, out);
        prefix.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type P = Poly<BigInt>;

    fn w(s: &str) -> RGWord {
        s.parse().unwrap()
    }

    fn words(list: &[RGWord]) -> Vec<String> {
        list.iter().map(|w| w.to_string()).collect()
    }

    /// Classical S(n, k) by the textbook recurrence.
    fn stirling2_count(n: usize, k: usize) -> usize {
        let mut t = vec![vec![0usize; n + 1]; n + 1];
        t[0][0] = 1;
        for i in 1..=n {
            for j in 1..=i {
                t[i][j] = t[i - 1][j - 1] + j * t[i - 1][j];
            }
        }
        t[n][k]
    }

    #[test]
    fn validation() {
        assert!(RGWord::new(vec![1, 3]).is_err());
        assert!(RGWord::new(vec![2]).is_err());
        assert!(RGWord::new(vec![1, 0]).is_err());
        assert!(RGWord::new(vec![]).is_ok());
        assert!("12a".parse::<RGWord>().is_err());
        assert_eq!(w("1,2,3,1").letters(), &[1, 2, 3, 1]);
    }

    #[test]
    fn enumerate_rg_examples() {
        let r42 = enumerate_rg(4, 2).unwrap();
        assert_eq!(
            words(&r42),
            ["1112", "1121", "1122", "1211", "1212", "1221", "1222"]
        );
        for n in 1..7 {
            assert_eq!(words(&enumerate_rg(n, 1).unwrap()), ["1".repeat(n)]);
        }
        assert_eq!(stirling2_count(6, 3), 90);
        assert_eq!(enumerate_rg(6, 3).unwrap().len(), 90);
        assert!(enumerate_rg(3, 4).unwrap().is_empty());
        assert!(enumerate_rg(3, 0).unwrap().is_empty());
        assert_eq!(enumerate_rg(0, 0).unwrap(), vec![RGWord::identity(0)]);
    }

    #[test]
    fn enumeration_counts_and_order() {
        for n in 1..=8 {
            for k in 1..=n {
                let list = enumerate_rg(n, k).unwrap();
                assert_eq!(list.len(), stirling2_count(n, k));
                assert!(list.windows(2).all(|p| p[0] < p[1]));
                assert!(list.iter().all(|x| RGWord::new(x.letters().to_vec()).is_ok()));
                assert!(list.iter().all(|x| x.max_letter() == k));
            }
        }
    }

    #[test]
    fn bound_is_enforced() {
        assert!(matches!(
            enumerate_rg_with(25, 3, 20, false),
            Err(Error::BoundExceeded { .. })
        ));
    }

    #[test]
    fn allowable_examples() {
        let mut a42 = words(&enumerate_allowable(4, 2).unwrap());
        a42.sort();
        assert_eq!(a42, ["1112", "1121", "1211"]);
        for n in 1..7 {
            assert_eq!(enumerate_allowable(n, n).unwrap(), vec![RGWord::identity(n)]);
        }
        assert_eq!(enumerate_allowable(5, 3).unwrap().len(), 11);
        for n in 1..=8 {
            for k in 1..=n {
                let filtered: Vec<_> = enumerate_rg(n, k)
                    .unwrap()
                    .into_iter()
                    .filter(RGWord::is_allowable)
                    .collect();
                assert_eq!(enumerate_allowable(n, k).unwrap(), filtered);
            }
        }
    }

    #[test]
    fn wt_examples() {
        assert_eq!(w("1221323").wt::<BigInt>(), P::q_pow(4));
        assert_eq!(w("1222").wt::<BigInt>(), P::q_pow(2));
        assert_eq!(w("11111").wt::<BigInt>(), P::one());
    }

    #[test]
    fn wt_prime_examples() {
        assert_eq!(w("12111").wt_prime::<BigInt>().unwrap(), P::qt_pow(0, 3));
        assert_eq!(w("12333").wt_prime::<BigInt>().unwrap(), P::q_pow(4));
        assert_eq!(w("12343").wt_prime::<BigInt>().unwrap(), P::qt_pow(2, 1));
        assert!(matches!(w("1222").wt_prime::<BigInt>(), Err(Error::NotAllowable(_))));
    }

    #[test]
    fn stat_examples() {
        assert_eq!((w("12333").stat_a(), w("12333").stat_b()), (4, 0));
        assert_eq!((w("123456").stat_a(), w("123456").stat_b()), (0, 0));
        assert_eq!(w("12111").stat_b(), 3);
    }

    #[test]
    fn partition_codec_examples() {
        let p: SetPartition = "14/236/57".parse().unwrap();
        assert_eq!(p.to_word(), w("1221323"));
        assert_eq!(w("1221323").to_partition().to_string(), "14/236/57");
        assert_eq!(w("123456").to_partition().to_string(), "1/2/3/4/5/6");
        assert_eq!("123/4".parse::<SetPartition>().unwrap().to_word(), w("1112"));
        assert!("23/14".parse::<SetPartition>().is_err());
        assert!("12/24".parse::<SetPartition>().is_err());
        assert!("13".parse::<SetPartition>().is_err());
    }

    #[test]
    fn codec_roundtrip_and_weight_formulas() {
        for n in 1..=8 {
            for k in 1..=n {
                for word in enumerate_rg(n, k).unwrap() {
                    let p = word.to_partition();
                    assert_eq!(p.to_word(), word);
                    assert_eq!(SetPartition::new(p.blocks().to_vec()).unwrap(), p);
                    assert_eq!(p.weight_degree(), word.stat_a());
                    let sum: usize = word.letters().iter().map(|&x| x as usize).sum();
                    assert_eq!(word.stat_a() as usize, sum - n - k * (k - 1) / 2);
                }
            }
        }
    }

    #[test]
    fn weakly_increasing() {
        assert!(w("1112").is_weakly_increasing());
        assert!(!w("1211").is_weakly_increasing());
        let count = enumerate_allowable(4, 2)
            .unwrap()
            .iter()
            .filter(|x| x.is_weakly_increasing())
            .count();
        assert_eq!(count, 1);
    }

    #[test]
    fn wide_words_use_commas() {
        let long = RGWord::identity(11);
        assert_eq!(long.to_string(), "1,2,3,4,5,6,7,8,9,10,11");
        assert_eq!(long.to_string().parse::<RGWord>().unwrap(), long);
        let json = serde_json::to_string(&w("1221")).unwrap();
        assert_eq!(json, "\"1221\"");
    }
}
