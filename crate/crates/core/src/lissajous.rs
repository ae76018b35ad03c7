//! Lissajous types, the collision-free criterion, ε-sequences and the braid
//! words W_{m,n} and H_{m,n}.

use std::fmt;

use num_integer::Integer;
use serde::{Serialize, Serializer};

use crate::algebra::{ab_to_frieze, AbSymbol, AbWord, FriezeWord};
use crate::error::{Error, Result};

/// A Lissajous type (m,n), the curve t ↦ sin(2πmt) + i·sin(2πnt).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TypeMN {
    pub m: i64,
    pub n: i64,
}

impl TypeMN {
    pub const fn new(m: i64, n: i64) -> Self {
        Self { m, n }
    }

    pub fn swap(self) -> Self {
        Self {
            m: self.n,
            n: self.m,
        }
    }
}

impl fmt::Display for TypeMN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.m, self.n)
    }
}

impl std::str::FromStr for TypeMN {
    type Err = Error;

    /// Parses `m,n`, optionally wrapped in parentheses.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let (a, b) = inner
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("expected `m,n`, got `{s}`")))?;
        let parse = |x: &str| {
            x.trim()
                .replace('−', "-")
                .parse::<i64>()
                .map_err(|e| Error::Parse(format!("bad integer `{}`: {e}", x.trim())))
        };
        Ok(Self::new(parse(a)?, parse(b)?))
    }
}

/// A type with both coordinates ≡ 1 (mod 3) and ℓ = (m* − n*)/3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct NormalizedType {
    pub m_star: i64,
    pub n_star: i64,
    pub ell: i64,
}

impl NormalizedType {
    pub fn type_mn(&self) -> TypeMN {
        TypeMN::new(self.m_star, self.n_star)
    }

    pub fn sgn_m(&self) -> i64 {
        self.m_star.signum()
    }

    /// The normalized type with the two roles exchanged (ℓ ↦ −ℓ).
    pub fn swap(&self) -> NormalizedType {
        NormalizedType {
            m_star: self.n_star,
            n_star: self.m_star,
            ell: -self.ell,
        }
    }

    fn collision_error(&self) -> Error {
        Error::CollisionType {
            m: self.m_star,
            n: self.n_star,
        }
    }

    fn require_odd_ell(&self) -> Result<()> {
        if self.ell % 2 == 0 {
            Err(self.collision_error())
        } else {
            Ok(())
        }
    }
}

impl Serialize for NormalizedType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("NormalizedType", 3)?;
        st.serialize_field("m", &self.m_star)?;
        st.serialize_field("n", &self.n_star)?;
        st.serialize_field("ell", &self.ell)?;
        st.end()
    }
}

impl fmt::Display for NormalizedType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{}) ℓ={}", self.m_star, self.n_star, self.ell)
    }
}

fn one_mod_three(x: i64) -> i64 {
    if x.rem_euclid(3) == 1 {
        x
    } else {
        -x
    }
}

/// Flips signs so that both coordinates are ≡ 1 (mod 3).
pub fn normalize(t: TypeMN) -> Result<NormalizedType> {
    if t.m % 3 == 0 || t.n % 3 == 0 {
        return Err(Error::DivisibleByThree { m: t.m, n: t.n });
    }
    if t.m.gcd(&t.n) != 1 {
        return Err(Error::NotCoprime { m: t.m, n: t.n });
    }
    let m_star = one_mod_three(t.m);
    let n_star = one_mod_three(t.n);
    Ok(NormalizedType {
        m_star,
        n_star,
        ell: (m_star - n_star) / 3,
    })
}

/// Collision-free iff 3 ∤ mn and ℓ is odd.
pub fn is_collision_free(t: TypeMN) -> bool {
    normalize(t).map(|nt| nt.ell % 2 != 0).unwrap_or(false)
}

/// The ε′ bits and ε signs of a collision-free type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsSeq {
    pub bits: Vec<u8>,
    pub signs: Vec<i8>,
    pub sgn_m: i8,
}

impl EpsSeq {
    pub fn bit_string(&self) -> String {
        self.bits.iter().map(|b| char::from(b'0' + b)).collect()
    }

    pub fn half_len(&self) -> usize {
        self.bits.len() / 2
    }

    /// Both halves palindromic and mutually complementary.
    pub fn is_doubly_palindromic(&self) -> bool {
        let h = self.half_len();
        let (first, second) = self.bits.split_at(h);
        first.iter().eq(first.iter().rev())
            && second.iter().eq(second.iter().rev())
            && first.iter().zip(second).all(|(a, b)| a + b == 1)
    }
}

impl Serialize for EpsSeq {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.bit_string())
    }
}

/// ε′_k = ⌊(2|ℓ|k − |ℓ|)/(2|m|)⌋ mod 2 for k = 1..2|m|, and
/// ε_k = sgn(mℓ)(2ε′_k − 1).
pub fn epsilon_seq(nt: &NormalizedType) -> Result<EpsSeq> {
    nt.require_odd_ell()?;
    let m = nt.m_star.abs();
    let l = nt.ell.abs();
    let s = (nt.m_star * nt.ell).signum() as i8;
    let bits: Vec<u8> = (1..=2 * m)
        .map(|k| ((2 * l * k - l) / (2 * m) % 2) as u8)
        .collect();
    let signs = bits.iter().map(|&b| s * (2 * b as i8 - 1)).collect();
    Ok(EpsSeq {
        bits,
        signs,
        sgn_m: nt.sgn_m() as i8,
    })
}

fn push_a_power(w: &mut AbWord, e: i64) {
    if e % 2 != 0 {
        w.push(AbSymbol::A);
    }
}

fn push_b_power(w: &mut AbWord, e: i8) {
    w.push(if e > 0 { AbSymbol::B } else { AbSymbol::BInv });
}

/// B^{ε_1} A^{(ε_1−ε_2)/2} ⋯ B^{ε_k} for a run of signs.
fn push_run(w: &mut AbWord, signs: &[i8]) {
    for (i, &e) in signs.iter().enumerate() {
        push_b_power(w, e);
        if let Some(&next) = signs.get(i + 1) {
            push_a_power(w, (e as i64 - next as i64) / 2);
        }
    }
}

/// The Lissajous 3-braid W_{m,n} of one third of a period.
pub fn build_w(nt: &NormalizedType) -> Result<AbWord> {
    let eps = epsilon_seq(nt)?;
    let sm = nt.sgn_m();
    let first = eps.signs[0] as i64;
    let last = *eps.signs.last().expect("nonempty") as i64;
    let mut w = AbWord::default();
    push_a_power(&mut w, (1 - sm * first) / 2);
    push_run(&mut w, &eps.signs);
    push_a_power(&mut w, (1 - sm * last) / 2);
    Ok(w)
}

/// The first half H_{m,n} of W_{m,n} as an AB-word.
pub fn build_h_ab(nt: &NormalizedType) -> Result<AbWord> {
    let eps = epsilon_seq(nt)?;
    let sm = nt.sgn_m();
    let e0 = (1 - sm * eps.signs[0] as i64) / 2;
    let mut w = AbWord::default();
    push_a_power(&mut w, e0);
    push_run(&mut w, &eps.signs[..eps.half_len()]);
    push_a_power(&mut w, e0);
    Ok(w)
}

/// The first half H_{m,n} as a frieze word.
pub fn build_h(nt: &NormalizedType) -> Result<FriezeWord> {
    ab_to_frieze(&build_h_ab(nt)?)
}

/// W_{m,n} as a frieze word.
pub fn build_w_frieze(nt: &NormalizedType) -> Result<FriezeWord> {
    ab_to_frieze(&build_w(nt)?)
}

/// Membership in the primitive family: gcd 1, residues 1 mod 3, ℓ odd,
/// mn < 0 and |m| < |n| ≤ 2|m|.
pub fn is_primitive(t: TypeMN) -> bool {
    let TypeMN { m, n } = t;
    m != 0
        && n != 0
        && m.gcd(&n) == 1
        && m.rem_euclid(3) == 1
        && n.rem_euclid(3) == 1
        && (m - n).rem_euclid(6) != 0
        && m.signum() != n.signum()
        && m.abs() < n.abs()
        && n.abs() <= 2 * m.abs()
}

/// Result of reducing a type to the primitive family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct P0Reduction {
    pub p0: TypeMN,
    /// False when H of the input equals H of `p0`; true when it equals H of
    /// `p0` with its coordinates swapped.
    pub swapped: bool,
}

/// Reduces a collision-free type to its representative in the primitive
/// family.
///
/// With m fixed, ℓ is moved into 0 < ℓ/m ≤ 1 by ℓ ↦ ℓ + 2mj or
/// ℓ ↦ −ℓ − 2mj; the first identity exchanges the halves for odd j, the
/// second for even j. If then |ℓ| < ⅔|m| the roles of m and n are exchanged,
/// which strictly shrinks |m|.
pub fn reduce_to_p0_flagged(nt: &NormalizedType) -> Result<P0Reduction> {
    nt.require_odd_ell()?;
    let (mut m, mut ell) = (nt.m_star, nt.ell);
    let mut swapped = false;
    loop {
        let two_m = 2 * m;
        let r = ell.abs().rem_euclid(two_m.abs());
        let r = if r > m.abs() { two_m.abs() - r } else { r };
        let target = m.signum() * r;
        if (target - ell) % two_m == 0 {
            let j = (target - ell) / two_m;
            swapped ^= j % 2 != 0;
        } else {
            let j = (-target - ell) / two_m;
            debug_assert_eq!((-target - ell) % two_m, 0);
            swapped ^= j % 2 == 0;
        }
        ell = target;
        let n = m - 3 * ell;
        if 3 * ell.abs() < 2 * m.abs() {
            m = n;
            ell = -ell;
            swapped = !swapped;
        } else {
            let p0 = TypeMN::new(m, n);
            debug_assert!(is_primitive(p0));
            return Ok(P0Reduction { p0, swapped });
        }
    }
}

pub fn reduce_to_p0(nt: &NormalizedType) -> Result<TypeMN> {
    reduce_to_p0_flagged(nt).map(|r| r.p0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{s3_image, second_half, Perm3};

    fn nt(m: i64, n: i64) -> NormalizedType {
        normalize(TypeMN::new(m, n)).unwrap()
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(
            nt(4, -5),
            NormalizedType {
                m_star: 4,
                n_star: -5,
                ell: 3
            }
        );
        assert_eq!(
            nt(2, 5),
            NormalizedType {
                m_star: -2,
                n_star: -5,
                ell: 1
            }
        );
        assert_eq!(nt(1, 1).ell, 0);
        assert_eq!(
            normalize(TypeMN::new(3, 2)),
            Err(Error::DivisibleByThree { m: 3, n: 2 })
        );
        assert_eq!(
            normalize(TypeMN::new(2, 4)),
            Err(Error::NotCoprime { m: 2, n: 4 })
        );
    }

    #[test]
    fn collision_free_examples() {
        assert!(is_collision_free(TypeMN::new(4, -5)));
        assert!(!is_collision_free(TypeMN::new(-5, 7)));
        assert!(!is_collision_free(TypeMN::new(3, 2)));
        assert!(!is_collision_free(TypeMN::new(1, 1)));
    }

    #[test]
    fn epsilon_examples() {
        let e = epsilon_seq(&nt(1, -2)).unwrap();
        assert_eq!(e.bits, vec![0, 1]);
        assert_eq!(e.signs, vec![-1, 1]);
        let e = epsilon_seq(&nt(-2, 1)).unwrap();
        assert_eq!(e.bits, vec![0, 0, 1, 1]);
        assert_eq!(e.signs, vec![-1, -1, 1, 1]);
        let e = epsilon_seq(&nt(-11, 16)).unwrap();
        assert_eq!(e.bit_string(), "0100101001010110101101");
        assert!(e.is_doubly_palindromic());
        assert_eq!(
            epsilon_seq(&nt(-5, 7)),
            Err(Error::CollisionType { m: -5, n: 7 })
        );
    }

    #[test]
    fn w_examples() {
        assert_eq!(build_w(&nt(1, -2)).unwrap().to_string(), "ABBAB");
        assert_eq!(build_w(&nt(-2, 1)).unwrap().to_string(), "BBBBABBA");
        assert_eq!(build_w(&nt(1, 4)).unwrap().to_string(), "BABBA");
        assert_eq!(build_w_frieze(&nt(4, -5)).unwrap().to_string(), "dbdpqp");
    }

    #[test]
    fn h_examples() {
        assert_eq!(build_h(&nt(4, -5)).unwrap().to_string(), "dbd");
        assert_eq!(build_h(&nt(-11, 16)).unwrap().to_string(), "bqpqbqpqb");
        assert_eq!(
            build_h(&nt(-23, 28)).unwrap().to_string(),
            "bdbqpqbdbdbqpqbdb"
        );
        assert_eq!(build_h_ab(&nt(-2, -5)).unwrap().to_string(), "ABBA");
        assert_eq!(build_h(&nt(-2, -5)).unwrap(), build_h(&nt(1, -2)).unwrap());
    }

    #[test]
    fn w_is_product_of_halves() {
        for (m, n) in [
            (4, -5),
            (-11, 16),
            (-23, 28),
            (1, -2),
            (1, 4),
            (7, 10),
            (-5, -2),
        ] {
            let t = nt(m, n);
            let h = build_h(&t).unwrap();
            let w = build_w_frieze(&t).unwrap();
            assert_eq!(w, h.concat(&second_half(&h).unwrap()), "({m},{n})");
            assert_eq!(s3_image(&w), Perm3::CYCLE_132);
            assert_eq!(s3_image(&h), Perm3::CYCLE_123);
            assert_eq!(h.len() % 2, 1);
        }
    }

    #[test]
    fn primitive_examples() {
        assert!(is_primitive(TypeMN::new(4, -5)));
        assert!(is_primitive(TypeMN::new(1, -2)));
        assert!(!is_primitive(TypeMN::new(1, 4)));
        assert!(!is_primitive(TypeMN::new(-5, 7)));
    }

    #[test]
    fn reduction_examples() {
        let r = reduce_to_p0_flagged(&nt(1, 4)).unwrap();
        assert_eq!(r.p0, TypeMN::new(1, -2));
        assert!(r.swapped);
        let r = reduce_to_p0_flagged(&nt(-2, -5)).unwrap();
        assert_eq!(r.p0, TypeMN::new(1, -2));
        assert!(!r.swapped);
        assert_eq!(reduce_to_p0(&nt(4, -5)).unwrap(), TypeMN::new(4, -5));
        assert_eq!(reduce_to_p0(&nt(-2, 1)).unwrap(), TypeMN::new(1, -2));
    }

    #[test]
    fn reduction_flag_matches_words() {
        for m in -40i64..=40 {
            for n in -40i64..=40 {
                let t = TypeMN::new(m, n);
                if !is_collision_free(t) {
                    continue;
                }
                let x = normalize(t).unwrap();
                let r = reduce_to_p0_flagged(&x).unwrap();
                let p0 = normalize(r.p0).unwrap();
                let target = if r.swapped { p0.swap() } else { p0 };
                assert_eq!(build_h(&x).unwrap(), build_h(&target).unwrap(), "({m},{n})");
            }
        }
    }

    #[test]
    fn parse_type() {
        assert_eq!("4,-5".parse::<TypeMN>().unwrap(), TypeMN::new(4, -5));
        assert_eq!("(−11, 16)".parse::<TypeMN>().unwrap(), TypeMN::new(-11, 16));
        assert!("4".parse::<TypeMN>().is_err());
    }
}
