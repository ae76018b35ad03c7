//! Syzygy sequences read off from the level–slope label.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::classify::{level_slope_of, radii_of, LevelSlope};
use crate::error::{Error, Result};
use crate::lissajous::{is_primitive, TypeMN};

/// A word over {+, −}, stored as ±1.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SignWord(pub Vec<i8>);

impl SignWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn negated(&self) -> SignWord {
        SignWord(self.0.iter().map(|s| -s).collect())
    }
}

impl fmt::Display for SignWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.0 {
            f.write_str(if s > 0 { "+" } else { "-" })?;
        }
        Ok(())
    }
}

impl FromStr for SignWord {
    type Err = Error;

    /// Accepts `+`, `-` and `−`.
    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '+' => Ok(1),
                '-' | '−' => Ok(-1),
                _ => Err(Error::Parse(format!("unexpected sign `{c}`"))),
            })
            .collect::<Result<Vec<i8>>>()
            .map(SignWord)
    }
}

impl Serialize for SignWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A cyclic word over {1, 2, 3}.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SyzygySeq(pub Vec<u8>);

impl SyzygySeq {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Digit string with a `.` after every `block` letters.
    pub fn grouped(&self, block: usize) -> String {
        let mut out = String::with_capacity(self.0.len() * 2);
        for (i, &a) in self.0.iter().enumerate() {
            out.push(char::from(b'0' + a));
            if block > 0 && (i + 1) % block == 0 {
                out.push('.');
            }
        }
        out
    }

    pub fn is_rotation_of(&self, other: &SyzygySeq) -> bool {
        crate::algebra::is_rotation(&self.0, &other.0)
    }

    /// Rotation to the first occurrence of letter 1.
    pub fn rotated_to_one(&self) -> SyzygySeq {
        let mut v = self.0.clone();
        if let Some(k) = v.iter().position(|&a| a == 1) {
            v.rotate_left(k);
        }
        SyzygySeq(v)
    }
}

impl fmt::Display for SyzygySeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &a in &self.0 {
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

impl FromStr for SyzygySeq {
    type Err = Error;

    /// Digits 1–3; dots and whitespace are ignored.
    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .filter(|c| *c != '.' && !c.is_whitespace())
            .map(|c| match c {
                '1' => Ok(1),
                '2' => Ok(2),
                '3' => Ok(3),
                _ => Err(Error::Parse(format!("unexpected syzygy letter `{c}`"))),
            })
            .collect::<Result<Vec<u8>>>()
            .map(SyzygySeq)
    }
}

impl Serialize for SyzygySeq {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Ω: each radius N becomes (+−)^{N−1}+ and N+1 becomes (+−)^N+.
pub fn omega(ls: LevelSlope) -> Result<SignWord> {
    let mut out = Vec::new();
    for r in radii_of(ls)? {
        for _ in 1..r {
            out.extend_from_slice(&[1, -1]);
        }
        out.push(1);
    }
    Ok(SignWord(out))
}

/// The walk a₁ = 1, a_{i+1} = a_i + ε_i (mod 3) driven by `repeats` copies of
/// the sign word, one letter per sign.
pub fn omega_walk(signs: &SignWord, repeats: usize) -> SyzygySeq {
    let total = signs.len() * repeats;
    let mut out = Vec::with_capacity(total);
    let mut a: i64 = 0;
    for i in 0..total {
        out.push((a + 1) as u8);
        a = (a + signs.0[i % signs.len()] as i64).rem_euclid(3);
    }
    SyzygySeq(out)
}

/// Net rotation of the walk after `repeats` copies, as a residue mod 3.
pub fn walk_closure(signs: &SignWord, repeats: usize) -> i64 {
    let sum: i64 = signs.0.iter().map(|&s| s as i64).sum();
    (sum * repeats as i64).rem_euclid(3)
}

/// One or more periods of the syzygy sequence of a primitive type.
///
/// A period is the walk over Ω⁶. For m > 0 the curve meets the equator arcs
/// in the mirrored cyclic order, so the walk runs with the signs of Ω
/// reversed; for m < 0 it is the plain walk.
pub fn syzygy_sequence(t: TypeMN, periods: usize) -> Result<SyzygySeq> {
    if !is_primitive(t) {
        return Err(Error::NotPrimitive { m: t.m, n: t.n });
    }
    let om = omega(level_slope_of(t)?)?;
    let oriented = if t.m > 0 { om.negated() } else { om };
    Ok(omega_walk(&oriented, 6 * periods))
}

/// No two cyclically adjacent letters coincide.
pub fn is_reduced(s: &SyzygySeq) -> bool {
    let n = s.0.len();
    n != 1 && (0..n).all(|i| s.0[i] != s.0[(i + 1) % n])
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: &str = "1231312.3123231.2312123.1231312.3123231.2312123";

    fn ls(level: u32, q: i64, p: i64) -> LevelSlope {
        LevelSlope::from_parts(level, p, q).unwrap()
    }

    #[test]
    fn omega_examples() {
        assert_eq!(omega(ls(1, 1, 4)).unwrap().to_string(), "+++-+++");
        assert_eq!(omega(ls(1, 0, 1)).unwrap().to_string(), "+");
        assert_eq!(omega(ls(2, 0, 1)).unwrap().to_string(), "+-+");
        assert_eq!(
            omega(ls(1, 1, 4)).unwrap(),
            "+++−+++".parse::<SignWord>().unwrap()
        );
    }

    #[test]
    fn syzygy_examples() {
        let s = syzygy_sequence(TypeMN::new(-8, 13), 1).unwrap();
        assert_eq!(s.grouped(7).trim_end_matches('.'), EXAMPLE);
        assert_eq!(s, EXAMPLE.parse().unwrap());
        assert!(is_reduced(&s));
        assert_eq!(omega_walk(&"+".parse().unwrap(), 6).to_string(), "123123");
        let s = syzygy_sequence(TypeMN::new(4, -5), 1).unwrap();
        assert_eq!(s.len(), 18);
        assert!(is_reduced(&s));
        assert_eq!(
            syzygy_sequence(TypeMN::new(1, 4), 1),
            Err(Error::NotPrimitive { m: 1, n: 4 })
        );
    }

    #[test]
    fn orientation_mirror_for_positive_m() {
        let s = syzygy_sequence(TypeMN::new(1, -2), 1).unwrap();
        assert_eq!(s.to_string(), "132132");
        let s = syzygy_sequence(TypeMN::new(1, -2), 2).unwrap();
        assert_eq!(s.len(), 12);
    }

    #[test]
    fn reduced_examples() {
        assert!(is_reduced(&"123123".parse().unwrap()));
        assert!(!is_reduced(&"1123".parse().unwrap()));
        assert!(!is_reduced(&"1231".parse().unwrap()));
    }
}
