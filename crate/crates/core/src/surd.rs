//! Exact quadratic irrationals (P+√D)/Q, fixed points of hyperbolic
//! elements, and periodic continued fractions.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::algebra::{trace_class, Psl2Mat, TraceClass};
use crate::error::{Error, Result};

/// The quadratic irrational (P+√D)/Q with Q | D−P².
#[derive(Clone, Debug)]
pub struct QuadSurd {
    p: BigInt,
    q: BigInt,
    d: BigInt,
}

fn is_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

impl QuadSurd {
    /// Builds (P+√D)/Q, rescaling P, Q by |Q| and D by Q² when Q ∤ D−P².
    pub fn new(p: BigInt, q: BigInt, d: BigInt) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::Parse("surd denominator is zero".into()));
        }
        if !d.is_positive() || is_square(&d) {
            return Err(Error::Parse(format!(
                "surd radicand {d} is not a positive nonsquare"
            )));
        }
        if (&d - &p * &p).is_multiple_of(&q) {
            return Ok(Self { p, q, d });
        }
        let s = q.abs();
        Ok(Self {
            p: &p * &s,
            d: &d * &q * &q,
            q: q * s,
        })
    }

    pub fn from_i64(p: i64, q: i64, d: i64) -> Result<Self> {
        Self::new(p.into(), q.into(), d.into())
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }
    pub fn q(&self) -> &BigInt {
        &self.q
    }
    pub fn d(&self) -> &BigInt {
        &self.d
    }

    /// Galois conjugate (P−√D)/Q.
    pub fn conjugate(&self) -> QuadSurd {
        Self {
            p: -self.p.clone(),
            q: -self.q.clone(),
            d: self.d.clone(),
        }
    }

    /// ⌊(P+√D)/Q⌋ by integer square roots.
    pub fn floor(&self) -> BigInt {
        let s = self.d.sqrt();
        let num = &self.p + &s;
        if self.q.is_positive() {
            num.div_floor(&self.q)
        } else {
            -num.div_floor(&-&self.q) - 1
        }
    }

    /// Writes the value as sign·(u + c√r)/w with w > 0 and r squarefree, all
    /// common factors removed.
    fn display_parts(&self) -> (BigInt, BigInt, BigInt, BigInt) {
        let (c, r) = split_square(&self.d);
        let (mut u, mut c, mut w) = (self.p.clone(), c, self.q.clone());
        if w.is_negative() {
            u = -u;
            c = -c;
            w = -w;
        }
        let g = u.gcd(&c).gcd(&w);
        (u / &g, c / &g, r, w / &g)
    }

    /// Floating approximation. Big operands are scaled down first and the
    /// cancelling case P < 0 goes through the conjugate.
    pub fn approx(&self) -> f64 {
        let bits = self.p.bits().max(self.q.bits()).max(self.d.bits() / 2);
        let shift = bits.saturating_sub(900);
        let p = (&self.p >> shift).to_f64().unwrap_or(f64::NAN);
        let q = (&self.q >> shift).to_f64().unwrap_or(f64::NAN);
        let d = (&self.d >> (2 * shift)).to_f64().unwrap_or(f64::NAN);
        let root = d.sqrt();
        if p < 0.0 {
            let exact_num = &self.d - &self.p * &self.p;
            let num = (exact_num >> (2 * shift)).to_f64().unwrap_or(f64::NAN);
            num / (q * (root - p))
        } else {
            (p + root) / q
        }
    }
}

/// Splits n = c²·r, pulling out square factors found by trial division.
fn split_square(n: &BigInt) -> (BigInt, BigInt) {
    let mut c = BigInt::one();
    let mut r = n.clone();
    let mut f = BigInt::from(2);
    while &f * &f <= r {
        let f2 = &f * &f;
        while r.is_multiple_of(&f2) {
            r /= &f2;
            c *= &f;
        }
        f += 1;
        if f > BigInt::from(100_000) {
            break;
        }
    }
    (c, r)
}

impl PartialEq for QuadSurd {
    /// Value equality: (P₁+√D₁)/Q₁ = (P₂+√D₂)/Q₂.
    fn eq(&self, other: &Self) -> bool {
        self.q.sign() == other.q.sign()
            && &self.p * &other.q == &other.p * &self.q
            && &self.d * &other.q * &other.q == &other.d * &self.q * &self.q
    }
}

impl Eq for QuadSurd {}

impl fmt::Display for QuadSurd {
    /// `(P+c√d)/Q`, with the square part of D pulled out and Q > 0.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (u, c, r, w) = self.display_parts();
        let sign = if c.is_negative() { '-' } else { '+' };
        let c = c.abs();
        let coeff = if c.is_one() {
            String::new()
        } else {
            c.to_string()
        };
        write!(f, "({u}{sign}{coeff}√{r})/{w}")
    }
}

impl Serialize for QuadSurd {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Fixed points of a hyperbolic element as the two roots of
/// c·x² + (d−a)·x − b = 0, the `+√` root first.
pub fn fixed_points(m: &Psl2Mat) -> Result<(QuadSurd, QuadSurd)> {
    let (alpha, beta, disc) = fixed_point_quadratic(m)?;
    let two_alpha: BigInt = &alpha * 2;
    let plus = QuadSurd::new(-beta.clone(), two_alpha.clone(), disc.clone())?;
    let minus = QuadSurd::new(beta, -two_alpha, disc)?;
    Ok((plus, minus))
}

/// Primitive quadratic αx² + βx + γ with α > 0; returns (α, β, β²−4αγ).
fn fixed_point_quadratic(m: &Psl2Mat) -> Result<(BigInt, BigInt, BigInt)> {
    if trace_class(m) != TraceClass::Hyperbolic {
        return Err(Error::NotHyperbolic(m.trace().to_string()));
    }
    if m.c().is_zero() {
        return Err(Error::TranslationForm);
    }
    let mut alpha = m.c().clone();
    let mut beta = m.d() - m.a();
    let mut gamma = -m.b().clone();
    let g = alpha.gcd(&beta).gcd(&gamma);
    alpha /= &g;
    beta /= &g;
    gamma /= &g;
    if alpha.is_negative() {
        alpha = -alpha;
        beta = -beta;
        gamma = -gamma;
    }
    let disc = &beta * &beta - BigInt::from(4) * &alpha * &gamma;
    Ok((alpha, beta, disc))
}

/// The fixed point of larger absolute value.
///
/// The roots sum to −β/α, so the `+√` root is the farther one exactly when
/// β ≤ 0; no floating comparison is involved.
pub fn far_endpoint(m: &Psl2Mat) -> Result<QuadSurd> {
    let (_, beta, _) = fixed_point_quadratic(m)?;
    let (plus, minus) = fixed_points(m)?;
    Ok(if beta.is_positive() { minus } else { plus })
}

/// An eventually periodic regular continued fraction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CfExpansion {
    #[serde(serialize_with = "ser_bigints")]
    pub preperiod: Vec<BigInt>,
    #[serde(serialize_with = "ser_bigints")]
    pub period: Vec<BigInt>,
}

fn ser_bigints<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    let nums: Vec<serde_json::Number> = v
        .iter()
        .map(|x| x.to_string().parse().expect("integer literal"))
        .collect();
    nums.serialize(s)
}

impl CfExpansion {
    /// Period entries as machine integers, when they fit.
    pub fn period_i64(&self) -> Option<Vec<i64>> {
        self.period.iter().map(|a| a.to_i64()).collect()
    }

    pub fn preperiod_i64(&self) -> Option<Vec<i64>> {
        self.preperiod.iter().map(|a| a.to_i64()).collect()
    }

    /// The k-th partial quotient of the infinite expansion.
    pub fn term(&self, k: usize) -> &BigInt {
        if k < self.preperiod.len() {
            &self.preperiod[k]
        } else {
            &self.period[(k - self.preperiod.len()) % self.period.len()]
        }
    }

    /// Value of the convergent built from the first `terms` partial quotients.
    pub fn convergent_approx(&self, terms: usize) -> f64 {
        let mut x = self.term(terms - 1).to_f64().unwrap_or(f64::NAN);
        for k in (0..terms - 1).rev() {
            x = self.term(k).to_f64().unwrap_or(f64::NAN) + 1.0 / x;
        }
        x
    }
}

impl fmt::Display for CfExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[BigInt]| {
            v.iter()
                .map(|a| a.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(
            f,
            "preperiod [{}] period [{}]",
            join(&self.preperiod),
            join(&self.period)
        )
    }
}

/// Regular continued fraction via the exact (P,Q) recurrence
/// a = ⌊(P+√D)/Q⌋, P′ = aQ − P, Q′ = (D − P′²)/Q.
pub fn cf_expand(x: &QuadSurd) -> CfExpansion {
    let d = x.d.clone();
    let s = d.sqrt();
    let mut p = x.p.clone();
    let mut q = x.q.clone();
    let mut seen: HashMap<(BigInt, BigInt), usize> = HashMap::new();
    let mut quotients = Vec::new();
    loop {
        if let Some(&start) = seen.get(&(p.clone(), q.clone())) {
            let period = quotients.split_off(start);
            return CfExpansion {
                preperiod: quotients,
                period,
            };
        }
        seen.insert((p.clone(), q.clone()), quotients.len());
        let num = &p + &s;
        let a = if q.is_positive() {
            num.div_floor(&q)
        } else {
            -num.div_floor(&-&q) - 1
        };
        let p_next = &a * &q - &p;
        let rem = &d - &p_next * &p_next;
        assert!(rem.is_multiple_of(&q), "Q must divide D - P^2");
        q = rem / &q;
        p = p_next;
        quotients.push(a);
    }
}

/// Smallest rotation period of a cyclic word.
fn primitive_root<T: PartialEq + Clone>(w: &[T]) -> Vec<T> {
    let n = w.len();
    for k in 1..=n {
        if n.is_multiple_of(k) && (0..n).all(|i| w[i] == w[(i + k) % n]) {
            return w[..k].to_vec();
        }
    }
    w.to_vec()
}

/// True when the CF period and the cyclic word (2rᵢ−1)ᵢ generate the same
/// bi-infinite sequence.
pub fn matches_cluster_period(cf: &CfExpansion, radii: &[i64]) -> bool {
    let target: Vec<BigInt> = radii.iter().map(|&r| BigInt::from(2 * r - 1)).collect();
    if target.is_empty() || cf.period.is_empty() {
        return false;
    }
    crate::algebra::is_rotation(&primitive_root(&cf.period), &primitive_root(&target))
}

pub fn approx(x: &QuadSurd) -> f64 {
    x.approx()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(a: i64, b: i64, c: i64, d: i64) -> Psl2Mat {
        Psl2Mat::from_i64(a, b, c, d).unwrap()
    }

    fn s(p: i64, q: i64, d: i64) -> QuadSurd {
        QuadSurd::from_i64(p, q, d).unwrap()
    }

    #[test]
    fn constructor_rescales() {
        let x = s(1, 3, 2);
        assert_eq!(x.q(), &BigInt::from(9));
        assert_eq!(x.d(), &BigInt::from(18));
        assert!((x.approx() - (1.0 + 2f64.sqrt()) / 3.0).abs() < 1e-15);
        assert!(QuadSurd::from_i64(1, 2, 9).is_err());
        assert!(QuadSurd::from_i64(1, 0, 2).is_err());
    }

    #[test]
    fn fixed_point_examples() {
        let (a, b) = fixed_points(&m(10, 3, 3, 1)).unwrap();
        assert_eq!(a, s(3, 2, 13));
        assert_eq!(b.to_string(), "(3-√13)/2");
        let (a, b) = fixed_points(&m(586, -741, -741, 937)).unwrap();
        assert_eq!(a.to_string(), "(9+5√61)/38");
        assert_eq!(b.to_string(), "(9-5√61)/38");
        let (a, b) = fixed_points(&m(2, 1, 1, 1)).unwrap();
        assert_eq!(a.to_string(), "(1+√5)/2");
        assert_eq!(b.to_string(), "(1-√5)/2");
        assert_eq!(
            fixed_points(&m(1, 2, 0, 1)).unwrap_err(),
            Error::NotHyperbolic("2".into())
        );
    }

    #[test]
    fn fixed_points_are_fixed() {
        for mat in [
            m(10, 3, 3, 1),
            m(586, -741, -741, 937),
            m(2, 1, 1, 1),
            m(5, 2, 2, 1),
        ] {
            let (x, y) = fixed_points(&mat).unwrap();
            for z in [x, y] {
                let v = z.approx();
                let a = mat.a().to_f64().unwrap();
                let b = mat.b().to_f64().unwrap();
                let c = mat.c().to_f64().unwrap();
                let d = mat.d().to_f64().unwrap();
                let image = (a * v + b) / (c * v + d);
                assert!((image - v).abs() < 1e-9 * v.abs().max(1.0));
            }
        }
    }

    #[test]
    fn far_endpoint_examples() {
        assert_eq!(
            far_endpoint(&m(10, 3, 3, 1)).unwrap().to_string(),
            "(3+√13)/2"
        );
        assert_eq!(
            far_endpoint(&m(586, -741, -741, 937)).unwrap().to_string(),
            "(9+5√61)/38"
        );
        assert_eq!(
            far_endpoint(&m(31162, -103259, -103259, 342161))
                .unwrap()
                .to_string(),
            "(509+5√14933)/338"
        );
    }

    #[test]
    fn cf_examples() {
        let cf = cf_expand(&s(3, 2, 13));
        assert_eq!(cf.preperiod_i64().unwrap(), Vec::<i64>::new());
        assert_eq!(cf.period_i64().unwrap(), vec![3]);
        let cf = cf_expand(&far_endpoint(&m(586, -741, -741, 937)).unwrap());
        assert!(crate::algebra::is_rotation(
            &cf.period_i64().unwrap(),
            &[3, 1, 3, 1, 1]
        ));
        let cf = cf_expand(&s(0, 1, 2));
        assert_eq!(cf.preperiod_i64().unwrap(), vec![1]);
        assert_eq!(cf.period_i64().unwrap(), vec![2]);
        let cf = cf_expand(&s(-7, 3, 5));
        assert!((cf.convergent_approx(40) - s(-7, 3, 5).approx()).abs() < 1e-12);
    }

    #[test]
    fn floor_handles_negative_denominator() {
        for (p, q, d) in [(3, -2, 13), (-9, -38, 1525), (0, -1, 2), (5, 7, 3)] {
            let x = s(p, q, d);
            let expect = ((p as f64 + (d as f64).sqrt()) / q as f64).floor();
            assert_eq!(x.floor(), BigInt::from(expect as i64), "({p},{q},{d})");
        }
    }

    #[test]
    fn cluster_period_examples() {
        let cf = |v: &[i64]| CfExpansion {
            preperiod: vec![],
            period: v.iter().map(|&x| BigInt::from(x)).collect(),
        };
        assert!(matches_cluster_period(&cf(&[3]), &[2]));
        assert!(matches_cluster_period(
            &cf(&[3, 1, 3, 1, 1]),
            &[1, 2, 1, 2, 1]
        ));
        assert!(!matches_cluster_period(&cf(&[3]), &[1]));
        assert!(matches_cluster_period(&cf(&[3, 3]), &[2]));
    }

    #[test]
    fn approx_examples() {
        assert!((s(3, 2, 13).approx() - 3.302_775_637_731_995).abs() < 1e-12);
        assert!((s(0, 1, 2).approx() - std::f64::consts::SQRT_2).abs() < 1e-15);
        assert!((s(9, 38, 1525).approx() - 1.264_506_5).abs() < 1e-6);
        let tiny = s(-1_000_000, 1, 1_000_000_000_001);
        assert!((tiny.approx() - 0.5e-6).abs() < 1e-15);
    }

    #[test]
    fn conjugate_and_product() {
        let (x, y) = fixed_points(&m(10, 3, 3, 1)).unwrap();
        assert_eq!(x.conjugate(), y);
        // roots of x² − 3x − 1: product −1
        assert!((x.approx() * y.approx() + 1.0).abs() < 1e-12);
    }
}
