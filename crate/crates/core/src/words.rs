//! Binary words: Christoffel words, palindromic conjugates, the level
//! morphism φ_N and the mod-2 difference sequence of ε′.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A finite word over {0,1}.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryWord(pub Vec<u8>);

impl BinaryWord {
    pub fn symbols(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn count(&self, symbol: u8) -> usize {
        self.0.iter().filter(|&&x| x == symbol).count()
    }

    pub fn rotate(&self, k: usize) -> BinaryWord {
        let mut v = self.0.clone();
        if !v.is_empty() {
            let k = k % v.len();
            v.rotate_left(k);
        }
        BinaryWord(v)
    }

    pub fn is_palindrome(&self) -> bool {
        self.0.iter().eq(self.0.iter().rev())
    }

    pub fn is_rotation_of(&self, other: &BinaryWord) -> bool {
        crate::algebra::is_rotation(&self.0, &other.0)
    }
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl FromStr for BinaryWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(Error::Parse(format!("unexpected binary symbol `{c}`"))),
            })
            .collect::<Result<Vec<u8>>>()
            .map(BinaryWord)
    }
}

impl Serialize for BinaryWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A slope q/p with p ≥ 1, q ≥ 0 and gcd(p,q) = 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slope {
    pub p: i64,
    pub q: i64,
}

impl Slope {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if p < 1 || q < 0 || p.gcd(&q) != 1 {
            return Err(Error::InvalidLabel(format!(
                "{q}/{p} is not a reduced slope"
            )));
        }
        Ok(Self { p, q })
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.q, self.p)
    }
}

impl FromStr for Slope {
    type Err = Error;

    /// Parses `q/p`; a bare integer q reads as q/1.
    fn from_str(s: &str) -> Result<Self> {
        let parse = |x: &str| {
            x.trim()
                .parse::<i64>()
                .map_err(|e| Error::Parse(format!("bad slope `{s}`: {e}")))
        };
        match s.split_once('/') {
            Some((q, p)) => Self::new(parse(p)?, parse(q)?),
            None => Self::new(1, parse(s)?),
        }
    }
}

impl Serialize for Slope {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Lower Christoffel word of slope q/p: the k-th symbol is
/// ⌊qk/(p+q)⌋ − ⌊q(k−1)/(p+q)⌋.
pub fn christoffel(s: Slope) -> BinaryWord {
    let n = s.p + s.q;
    BinaryWord(
        (1..=n)
            .map(|k| (s.q * k / n - s.q * (k - 1) / n) as u8)
            .collect(),
    )
}

/// The unique palindromic rotation of `w`.
pub fn palindromic_conjugate(w: &BinaryWord) -> Result<BinaryWord> {
    let mut found: Option<BinaryWord> = None;
    for k in 0..w.len().max(1) {
        let r = w.rotate(k);
        if r.is_palindrome() {
            match &found {
                None => found = Some(r),
                Some(prev) if *prev == r => {}
                Some(_) => return Err(Error::MultiplePalindromes(w.to_string())),
            }
        }
    }
    found.ok_or_else(|| Error::NoPalindrome(w.to_string()))
}

/// φ_N: 0 ↦ (101)^{N−1}1, 1 ↦ (101)^N 1.
pub fn phi_n(level: u32, w: &BinaryWord) -> BinaryWord {
    assert!(level >= 1, "level must be positive");
    let image = |reps: u32| {
        let mut v = Vec::with_capacity(3 * reps as usize + 1);
        for _ in 0..reps {
            v.extend_from_slice(&[1, 0, 1]);
        }
        v.push(1);
        v
    };
    let zero = image(level - 1);
    let one = image(level);
    BinaryWord(
        w.0.iter()
            .flat_map(|&b| if b == 0 { zero.clone() } else { one.clone() })
            .collect(),
    )
}

/// 0 ↦ N, 1 ↦ N+1.
pub fn varphi_n(level: u32, w: &BinaryWord) -> Vec<i64> {
    w.0.iter().map(|&b| level as i64 + b as i64).collect()
}

/// One period of the mod-2 difference sequence
/// δ_k = ⌊|ℓ|(2k+1)/(2|m|)⌋ − ⌊|ℓ|(2k−1)/(2|m|)⌋, k = 1..|m|.
pub fn difference_seq(m_abs: i64, ell_abs: i64) -> BinaryWord {
    let two_m = 2 * m_abs;
    BinaryWord(
        (1..=m_abs)
            .map(|k| {
                let hi = Integer::div_floor(&(ell_abs * (2 * k + 1)), &two_m);
                let lo = Integer::div_floor(&(ell_abs * (2 * k - 1)), &two_m);
                (hi - lo) as u8
            })
            .collect(),
    )
}

/// Running sums mod 2, starting from `start`.
pub fn mod2_partial_sums(w: &BinaryWord, start: u8) -> BinaryWord {
    let mut acc = start % 2;
    BinaryWord(
        w.0.iter()
            .map(|&b| {
                acc = (acc + b) % 2;
                acc
            })
            .collect(),
    )
}

/// Lengths of the maximal runs of 1s; with `cyclic` the word wraps around.
pub fn cluster_lengths(w: &BinaryWord, cyclic: bool) -> Result<BTreeSet<usize>> {
    let symbols: Vec<u8> = if cyclic {
        match w.0.iter().position(|&b| b == 0) {
            Some(z) => w.rotate(z + 1).0,
            None if w.is_empty() => Vec::new(),
            None => return Err(Error::AllOnes),
        }
    } else {
        w.0.clone()
    };
    Ok(symbols
        .split(|&b| b == 0)
        .map(|run| run.len())
        .filter(|&len| len > 0)
        .collect())
}
