//! The level–slope labels of primitive types and the cluster construction
//! of H_{m,n}.

use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::algebra::{FriezeLetter, FriezeWord};
use crate::error::{Error, Result};
use crate::lissajous::{is_primitive, normalize, reduce_to_p0, TypeMN};
use crate::words::{christoffel, palindromic_conjugate, varphi_n, Slope};

/// A classification label (N, q/p) with gcd(p,q) = 1 and gcd(p+q,6) = 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LevelSlope {
    pub level: u32,
    pub slope: Slope,
}

impl LevelSlope {
    pub fn new(level: u32, slope: Slope) -> Result<Self> {
        let sum = slope.p + slope.q;
        if level < 1 {
            return Err(Error::InvalidLabel("level must be at least 1".into()));
        }
        if sum.gcd(&6) != 1 {
            return Err(Error::InvalidLabel(format!(
                "slope {slope} has p+q = {sum}, which shares a factor with 6"
            )));
        }
        Ok(Self { level, slope })
    }

    pub fn from_parts(level: u32, p: i64, q: i64) -> Result<Self> {
        Self::new(level, Slope::new(p, q)?)
    }

    pub fn p(&self) -> i64 {
        self.slope.p
    }

    pub fn q(&self) -> i64 {
        self.slope.q
    }

    /// Frieze length of H, p(2N−1) + q(2N+1).
    pub fn h_length(&self) -> i64 {
        let n = self.level as i64;
        self.p() * (2 * n - 1) + self.q() * (2 * n + 1)
    }
}

impl fmt::Display for LevelSlope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(N={}, {})", self.level, self.slope)
    }
}

/// The label of a primitive type.
///
/// N is the unique integer with (2N+1)/(3N+1) < |ℓ|/|m| ≤ (2N−1)/(3N−2),
/// and then p = (3N+1)|ℓ| − (2N+1)|m|, q = −(3N−2)|ℓ| + (2N−1)|m|.
pub fn level_slope_of(t: TypeMN) -> Result<LevelSlope> {
    if !is_primitive(t) {
        return Err(Error::NotPrimitive { m: t.m, n: t.n });
    }
    let m = t.m.abs();
    let n = t.n.abs();
    let l = ((t.m - t.n) / 3).abs();
    let level = (2 * l - m) / (3 * l - 2 * m);
    assert!(
        (2 * level + 1) * m < l * (3 * level + 1) && l * (3 * level - 2) <= (2 * level - 1) * m,
        "level bracket fails for {t}"
    );
    assert!(
        (3 * level + 2) * m < n * (3 * level + 1) && n * (3 * level - 2) <= (3 * level - 1) * m,
        "u_N bracket fails for {t}"
    );
    let p = (3 * level + 1) * l - (2 * level + 1) * m;
    let q = -(3 * level - 2) * l + (2 * level - 1) * m;
    assert!(p > 0 && q >= 0, "slope q/p = {q}/{p} out of range for {t}");
    LevelSlope::from_parts(level as u32, p, q)
}

/// Inverse of [`level_slope_of`]: |m| = p(3N−2) + q(3N+1),
/// |ℓ| = p(2N−1) + q(2N+1), |n| = 3|ℓ| − |m|, signs from the residues.
pub fn type_of(ls: LevelSlope) -> Result<TypeMN> {
    let ls = LevelSlope::new(ls.level, Slope::new(ls.p(), ls.q())?)?;
    let (n_lv, p, q) = (ls.level as i64, ls.p(), ls.q());
    let m_abs = p * (3 * n_lv - 2) + q * (3 * n_lv + 1);
    let l_abs = p * (2 * n_lv - 1) + q * (2 * n_lv + 1);
    let n_abs = 3 * l_abs - m_abs;
    let signed = |x: i64| if x.rem_euclid(3) == 1 { x } else { -x };
    let t = TypeMN::new(signed(m_abs), signed(n_abs));
    if !is_primitive(t) {
        return Err(Error::InvalidLabel(format!(
            "{ls} maps outside the primitive family"
        )));
    }
    Ok(t)
}

/// H_{m,n} assembled from clusters (xy)^{r−1}x.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClusterSeq {
    pub radii: Vec<i64>,
    pub first_letter: FriezeLetter,
    pub letters: FriezeWord,
}

fn cluster_partner(x: FriezeLetter) -> FriezeLetter {
    use FriezeLetter::*;
    match x {
        B => Q,
        D => P,
        Q => B,
        P => D,
    }
}

fn cluster_mate(x: FriezeLetter) -> FriezeLetter {
    use FriezeLetter::*;
    match x {
        B => D,
        D => B,
        P => Q,
        Q => P,
    }
}

/// The radii φ_N(pw_{q/p}) of a label.
pub fn radii_of(ls: LevelSlope) -> Result<Vec<i64>> {
    let pw = palindromic_conjugate(&christoffel(ls.slope))?;
    Ok(varphi_n(ls.level, &pw))
}

/// Builds H from the label: the first cluster is d-led when m > 0 and
/// b-led when m < 0, and each cluster is led by the partner of the letter
/// closing the previous one.
pub fn clusters_of(ls: LevelSlope) -> Result<ClusterSeq> {
    let t = type_of(ls)?;
    let radii = radii_of(ls)?;
    let first_letter = if t.m > 0 {
        FriezeLetter::D
    } else {
        FriezeLetter::B
    };
    let mut raw = Vec::new();
    let mut lead = first_letter;
    for &r in &radii {
        let mate = cluster_mate(lead);
        for _ in 1..r {
            raw.push(lead);
            raw.push(mate);
        }
        raw.push(lead);
        lead = cluster_partner(lead);
    }
    let letters = FriezeWord::reduce(raw.iter().copied());
    debug_assert_eq!(letters.len(), raw.len());
    Ok(ClusterSeq {
        radii,
        first_letter,
        letters,
    })
}

/// Two collision-free types give the same Lissajous class.
pub fn class_equal(t1: TypeMN, t2: TypeMN) -> Result<bool> {
    let p1 = reduce_to_p0(&normalize(t1)?)?;
    let p2 = reduce_to_p0(&normalize(t2)?)?;
    Ok(p1 == p2)
}

/// All primitive types with |m| ≤ `max_m`, sorted by (|m|, |n|).
pub fn enumerate_p0(max_m: i64) -> Vec<TypeMN> {
    let mut out = Vec::new();
    for m_abs in 1..=max_m {
        let m = if m_abs.rem_euclid(3) == 1 {
            m_abs
        } else {
            -m_abs
        };
        for n_abs in m_abs + 1..=2 * m_abs {
            let t = TypeMN::new(m, -m.signum() * n_abs);
            if is_primitive(t) {
                out.push(t);
            }
        }
    }
    out
}

/// All labels with N ≤ `max_level` and p+q ≤ `max_sum`, sorted by
/// (N, p+q, q).
pub fn enumerate_labels(max_level: u32, max_sum: i64) -> Vec<LevelSlope> {
    let mut out = Vec::new();
    for level in 1..=max_level {
        for sum in (1..=max_sum).filter(|s| s.gcd(&6) == 1) {
            for q in 0..sum {
                if let Ok(ls) = LevelSlope::from_parts(level, sum - q, q) {
                    out.push(ls);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lissajous::build_h;

    fn ls(level: u32, q: i64, p: i64) -> LevelSlope {
        LevelSlope::from_parts(level, p, q).unwrap()
    }

    fn t(m: i64, n: i64) -> TypeMN {
        TypeMN::new(m, n)
    }

    #[test]
    fn level_slope_examples() {
        assert_eq!(level_slope_of(t(4, -5)).unwrap(), ls(2, 0, 1));
        assert_eq!(level_slope_of(t(-11, 16)).unwrap(), ls(1, 2, 3));
        assert_eq!(level_slope_of(t(-23, 28)).unwrap(), ls(2, 1, 4));
        assert_eq!(level_slope_of(t(1, -2)).unwrap(), ls(1, 0, 1));
        assert_eq!(
            level_slope_of(t(1, 4)),
            Err(Error::NotPrimitive { m: 1, n: 4 })
        );
    }

    #[test]
    fn type_of_examples() {
        assert_eq!(type_of(ls(1, 2, 3)).unwrap(), t(-11, 16));
        assert_eq!(type_of(ls(1, 1, 4)).unwrap(), t(-8, 13));
        for n in 1..=20i64 {
            assert_eq!(
                type_of(ls(n as u32, 0, 1)).unwrap(),
                t(3 * n - 2, 1 - 3 * n)
            );
        }
        assert!(matches!(
            LevelSlope::from_parts(1, 2, 1),
            Err(Error::InvalidLabel(_))
        ));
    }

    #[test]
    fn cluster_examples() {
        let c = clusters_of(ls(1, 2, 3)).unwrap();
        assert_eq!(c.radii, vec![1, 2, 1, 2, 1]);
        assert_eq!(c.letters.to_string(), "bqpqbqpqb");
        let c = clusters_of(ls(2, 1, 4)).unwrap();
        assert_eq!(c.radii, vec![2, 2, 3, 2, 2]);
        assert_eq!(c.letters.to_string(), "bdbqpqbdbdbqpqbdb");
        let c = clusters_of(ls(2, 0, 1)).unwrap();
        assert_eq!(c.radii, vec![2]);
        assert_eq!(c.letters.to_string(), "dbd");
    }

    #[test]
    fn clusters_agree_with_h_for_small_types() {
        for tt in enumerate_p0(40) {
            let label = level_slope_of(tt).unwrap();
            let h = build_h(&normalize(tt).unwrap()).unwrap();
            assert_eq!(clusters_of(label).unwrap().letters, h, "{tt}");
            assert_eq!(h.len() as i64, label.h_length());
        }
    }

    #[test]
    fn class_equal_examples() {
        assert!(class_equal(t(1, 4), t(-2, -5)).unwrap());
        assert!(!class_equal(t(4, -5), t(1, -2)).unwrap());
        assert!(class_equal(t(7, 10), t(10, 7)).unwrap());
        assert!(matches!(
            class_equal(t(-5, 7), t(1, -2)),
            Err(Error::CollisionType { .. })
        ));
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(enumerate_p0(1), vec![t(1, -2)]);
        assert_eq!(enumerate_p0(4), vec![t(1, -2), t(4, -5)]);
        assert_eq!(enumerate_p0(7), vec![t(1, -2), t(4, -5), t(7, -8)]);
        let slopes: Vec<String> = enumerate_labels(1, 5)
            .iter()
            .map(|l| l.slope.to_string())
            .collect();
        assert_eq!(slopes, ["0/1", "1/4", "2/3", "3/2", "4/1"]);
        let slopes: Vec<String> = enumerate_labels(1, 1)
            .iter()
            .map(|l| l.slope.to_string())
            .collect();
        assert_eq!(slopes, ["0/1"]);
    }

    #[test]
    fn label_serialization() {
        let v = serde_json::to_value(ls(1, 2, 3)).unwrap();
        assert_eq!(v, serde_json::json!({"level": 1, "slope": "2/3"}));
    }
}
