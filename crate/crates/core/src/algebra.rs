//! Word and matrix algebra for the modular group PSL₂(ℤ) ≅ ⟨A⟩∗⟨B⟩ and its
//! index-2 subgroup ⟨p⟩∗⟨q⟩ (p = B, q = ABA).
//!
//! Elements of the subgroup are carried as *frieze words*: reduced words over
//! the four letters `p`, `b = p²`, `q`, `d = q²` in which consecutive letters
//! always come from different free factors. The reduced word of an element is
//! unique, so word equality is group equality.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::surd::QuadSurd;

/// One of the four order-3 letters `p`, `b`, `q`, `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FriezeLetter {
    P,
    B,
    Q,
    D,
}

impl FriezeLetter {
    pub const ALL: [FriezeLetter; 4] = [Self::P, Self::B, Self::Q, Self::D];

    /// Free factor the letter lives in: 1 for ⟨p⟩, 2 for ⟨q⟩.
    pub fn factor(self) -> u8 {
        match self {
            Self::P | Self::B => 1,
            Self::Q | Self::D => 2,
        }
    }

    /// Exponent of the factor generator (p¹, p² = b, q¹, q² = d).
    pub fn exponent(self) -> u8 {
        match self {
            Self::P | Self::Q => 1,
            Self::B | Self::D => 2,
        }
    }

    fn from_parts(factor: u8, exponent: u8) -> Option<Self> {
        match (factor, exponent % 3) {
            (_, 0) => None,
            (1, 1) => Some(Self::P),
            (1, 2) => Some(Self::B),
            (2, 1) => Some(Self::Q),
            (2, 2) => Some(Self::D),
            _ => unreachable!("factor is 1 or 2"),
        }
    }

    pub fn inverse(self) -> Self {
        match self {
            Self::P => Self::B,
            Self::B => Self::P,
            Self::Q => Self::D,
            Self::D => Self::Q,
        }
    }

    /// Conjugation by A: p ↔ q, b ↔ d.
    pub fn a_conjugate(self) -> Self {
        match self {
            Self::P => Self::Q,
            Self::Q => Self::P,
            Self::B => Self::D,
            Self::D => Self::B,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Self::P => 'p',
            Self::B => 'b',
            Self::Q => 'q',
            Self::D => 'd',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'p' => Some(Self::P),
            'b' => Some(Self::B),
            'q' => Some(Self::Q),
            'd' => Some(Self::D),
            _ => None,
        }
    }

    /// Matrix of the letter in PSL₂(ℤ).
    pub fn matrix(self) -> Psl2Mat {
        let (a, b, c, d) = match self {
            Self::P => (1, 1, -1, 0),
            Self::B => (0, 1, -1, -1),
            Self::Q => (0, -1, 1, -1),
            Self::D => (1, -1, 1, 0),
        };
        Psl2Mat::from_i64(a, b, c, d).expect("letter matrices have determinant 1")
    }

    /// Image under the sign homomorphism onto A₃ ⊂ S₃.
    pub fn s3_image(self) -> Perm3 {
        match self {
            Self::P | Self::D => Perm3::CYCLE_123,
            Self::B | Self::Q => Perm3::CYCLE_132,
        }
    }
}

/// A reduced word in the free product ⟨p⟩∗⟨q⟩ of two cyclic groups of order 3.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FriezeWord {
    letters: Vec<FriezeLetter>,
}

impl FriezeWord {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Reduces an arbitrary letter sequence to its normal form.
    ///
    /// Stack based: a letter from the same factor as the top of the stack is
    /// merged with it by adding exponents mod 3, and popped when the sum is 0.
    pub fn reduce<I: IntoIterator<Item = FriezeLetter>>(raw: I) -> Self {
        let mut stack: Vec<FriezeLetter> = Vec::new();
        for letter in raw {
            match stack.last() {
                Some(&top) if top.factor() == letter.factor() => {
                    stack.pop();
                    if let Some(merged) =
                        FriezeLetter::from_parts(top.factor(), top.exponent() + letter.exponent())
                    {
                        stack.push(merged);
                    }
                }
                _ => stack.push(letter),
            }
        }
        Self { letters: stack }
    }

    pub fn letters(&self) -> &[FriezeLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Group product, reduced.
    pub fn concat(&self, other: &FriezeWord) -> FriezeWord {
        Self::reduce(self.letters.iter().chain(other.letters.iter()).copied())
    }

    pub fn inverse(&self) -> FriezeWord {
        Self {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn is_palindrome(&self) -> bool {
        self.letters.iter().eq(self.letters.iter().rev())
    }

    pub fn matrix(&self) -> Psl2Mat {
        frieze_to_matrix(self)
    }
}

impl fmt::Display for FriezeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for FriezeWord {
    type Err = Error;

    /// Parses a string over `pbqd`; `·`, `.` and whitespace are ignored. The
    /// result is reduced.
    fn from_str(s: &str) -> Result<Self> {
        let mut raw = Vec::with_capacity(s.len());
        for c in s.chars() {
            if c == '·' || c == '.' || c.is_whitespace() {
                continue;
            }
            raw.push(
                FriezeLetter::from_char(c)
                    .ok_or_else(|| Error::Parse(format!("unexpected frieze letter `{c}`")))?,
            );
        }
        Ok(Self::reduce(raw))
    }
}

impl Serialize for FriezeWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Reduce a raw letter sequence to its normal form.
pub fn reduce_frieze(raw: &[FriezeLetter]) -> FriezeWord {
    FriezeWord::reduce(raw.iter().copied())
}

/// Symbols of a word in the generators A and B of PSL₂(ℤ).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AbSymbol {
    A,
    B,
    BInv,
}

impl AbSymbol {
    pub fn matrix(self) -> Psl2Mat {
        match self {
            Self::A => Psl2Mat::from_i64(0, 1, -1, 0),
            Self::B => Psl2Mat::from_i64(1, 1, -1, 0),
            Self::BInv => Psl2Mat::from_i64(0, 1, -1, -1),
        }
        .expect("generator matrices have determinant 1")
    }
}

/// A word over {A, B, B⁻¹}. No relation is applied to the stored symbols.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct AbWord {
    symbols: Vec<AbSymbol>,
}

impl AbWord {
    pub fn new(symbols: Vec<AbSymbol>) -> Self {
        Self { symbols }
    }

    pub fn symbols(&self) -> &[AbSymbol] {
        &self.symbols
    }

    pub fn push(&mut self, s: AbSymbol) {
        self.symbols.push(s);
    }

    pub fn a_count(&self) -> usize {
        self.symbols.iter().filter(|&&s| s == AbSymbol::A).count()
    }

    pub fn matrix(&self) -> Psl2Mat {
        self.symbols
            .iter()
            .fold(Psl2Mat::identity(), |acc, s| &acc * &s.matrix())
    }
}

impl fmt::Display for AbWord {
    /// B⁻¹ prints as `BB`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.symbols {
            f.write_str(match s {
                AbSymbol::A => "A",
                AbSymbol::B => "B",
                AbSymbol::BInv => "BB",
            })?;
        }
        Ok(())
    }
}

impl FromStr for AbWord {
    type Err = Error;

    /// Parses `A`/`B` strings; a run `BB` reads greedily as B⁻¹, `B⁻¹` and
    /// `B^-1` are accepted too. Whitespace and `·` are ignored.
    fn from_str(s: &str) -> Result<Self> {
        let cleaned: String = s
            .replace("B⁻¹", "b")
            .replace("B^-1", "b")
            .chars()
            .filter(|c| !c.is_whitespace() && *c != '·')
            .collect();
        let chars: Vec<char> = cleaned.chars().collect();
        let mut symbols = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            match chars[i] {
                'A' => symbols.push(AbSymbol::A),
                'b' => symbols.push(AbSymbol::BInv),
                'B' if chars.get(i + 1) == Some(&'B') => {
                    symbols.push(AbSymbol::BInv);
                    i += 1;
                }
                'B' => symbols.push(AbSymbol::B),
                c => return Err(Error::Parse(format!("unexpected AB symbol `{c}`"))),
            }
            i += 1;
        }
        Ok(Self { symbols })
    }
}

/// Translates an AB-word with an even number of A's into a frieze word.
///
/// Scans left to right keeping the parity of the A's seen so far: B and B⁻¹
/// at even parity become `p` and `b`, at odd parity `q` and `d`.
pub fn ab_to_frieze(w: &AbWord) -> Result<FriezeWord> {
    if w.a_count() % 2 == 1 {
        return Err(Error::OddACount);
    }
    let mut odd = false;
    let mut raw = Vec::with_capacity(w.symbols.len());
    for s in &w.symbols {
        match (s, odd) {
            (AbSymbol::A, _) => odd = !odd,
            (AbSymbol::B, false) => raw.push(FriezeLetter::P),
            (AbSymbol::BInv, false) => raw.push(FriezeLetter::B),
            (AbSymbol::B, true) => raw.push(FriezeLetter::Q),
            (AbSymbol::BInv, true) => raw.push(FriezeLetter::D),
        }
    }
    Ok(FriezeWord::reduce(raw))
}

/// A 2×2 integer matrix of determinant 1 modulo ±1.
///
/// Stored with the first nonzero entry of (a, b, c, d) positive, so derived
/// equality and hashing are equality in PSL₂(ℤ).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Psl2Mat {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

impl Psl2Mat {
    pub fn new(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Result<Self> {
        if &a * &d - &b * &c != BigInt::one() {
            return Err(Error::Parse(format!(
                "matrix ({a},{b};{c},{d}) does not have determinant 1"
            )));
        }
        Ok(Self::normalized(a, b, c, d))
    }

    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        Self::new(a.into(), b.into(), c.into(), d.into())
    }

    fn normalized(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Self {
        let lead = [&a, &b, &c, &d]
            .into_iter()
            .find(|x| !x.is_zero())
            .expect("determinant 1 forces a nonzero entry");
        if lead.is_negative() {
            Self {
                a: -a,
                b: -b,
                c: -c,
                d: -d,
            }
        } else {
            Self { a, b, c, d }
        }
    }

    pub fn identity() -> Self {
        Self::normalized(BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::one())
    }

    /// The involution A = ±(0,1;−1,0).
    pub fn a_gen() -> Self {
        AbSymbol::A.matrix()
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }
    pub fn b(&self) -> &BigInt {
        &self.b
    }
    pub fn c(&self) -> &BigInt {
        &self.c
    }
    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn entries(&self) -> [&BigInt; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn inverse(&self) -> Self {
        Self::normalized(
            self.d.clone(),
            -self.b.clone(),
            -self.c.clone(),
            self.a.clone(),
        )
    }

    /// Trace of the normalized representative; only |trace| is meaningful.
    pub fn trace(&self) -> BigInt {
        &self.a + &self.d
    }

    pub fn abs_trace(&self) -> BigInt {
        self.trace().abs()
    }

    pub fn trace_class(&self) -> TraceClass {
        trace_class(self)
    }
}

impl Mul for &Psl2Mat {
    type Output = Psl2Mat;

    fn mul(self, rhs: &Psl2Mat) -> Psl2Mat {
        Psl2Mat::normalized(
            &self.a * &rhs.a + &self.b * &rhs.c,
            &self.a * &rhs.b + &self.b * &rhs.d,
            &self.c * &rhs.a + &self.d * &rhs.c,
            &self.c * &rhs.b + &self.d * &rhs.d,
        )
    }
}

impl Mul for Psl2Mat {
    type Output = Psl2Mat;

    fn mul(self, rhs: Psl2Mat) -> Psl2Mat {
        &self * &rhs
    }
}

impl fmt::Display for Psl2Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "±({},{};{},{})", self.a, self.b, self.c, self.d)
    }
}

fn json_int(x: &BigInt) -> serde_json::Number {
    x.to_string()
        .parse()
        .expect("integer literal is a valid JSON number")
}

impl Serialize for Psl2Mat {
    /// Serializes as `[[a,b],[c,d]]`.
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows = [
            [json_int(&self.a), json_int(&self.b)],
            [json_int(&self.c), json_int(&self.d)],
        ];
        rows.serialize(s)
    }
}

/// Product of the letter matrices; the empty word maps to the identity.
pub fn frieze_to_matrix(w: &FriezeWord) -> Psl2Mat {
    w.letters
        .iter()
        .fold(Psl2Mat::identity(), |acc, l| &acc * &l.matrix())
}

/// A permutation of {1,2,3}, stored as the images of 1, 2, 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Perm3([u8; 3]);

impl Perm3 {
    pub const IDENTITY: Perm3 = Perm3([1, 2, 3]);
    pub const CYCLE_123: Perm3 = Perm3([2, 3, 1]);
    pub const CYCLE_132: Perm3 = Perm3([3, 1, 2]);
    pub const SWAP_12: Perm3 = Perm3([2, 1, 3]);
    pub const SWAP_13: Perm3 = Perm3([3, 2, 1]);
    pub const SWAP_23: Perm3 = Perm3([1, 3, 2]);

    pub fn new(images: [u8; 3]) -> Option<Self> {
        let mut seen = [false; 3];
        for &x in &images {
            if !(1..=3).contains(&x) || seen[(x - 1) as usize] {
                return None;
            }
            seen[(x - 1) as usize] = true;
        }
        Some(Self(images))
    }

    pub fn apply(self, x: u8) -> u8 {
        self.0[(x - 1) as usize]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(self, other: Perm3) -> Perm3 {
        Perm3([
            self.apply(other.apply(1)),
            self.apply(other.apply(2)),
            self.apply(other.apply(3)),
        ])
    }

    pub fn inverse(self) -> Perm3 {
        let mut inv = [0u8; 3];
        for i in 1..=3u8 {
            inv[(self.apply(i) - 1) as usize] = i;
        }
        Perm3(inv)
    }
}

impl fmt::Display for Perm3 {
    /// Cycle notation, `()` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        let mut seen = [false; 3];
        for start in 1..=3u8 {
            if seen[(start - 1) as usize] || self.apply(start) == start {
                continue;
            }
            out.push('(');
            let mut x = start;
            while !seen[(x - 1) as usize] {
                seen[(x - 1) as usize] = true;
                out.push(char::from(b'0' + x));
                x = self.apply(x);
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        f.write_str(&out)
    }
}

/// Image of a frieze word under the sign homomorphism, with
/// ε(p) = ε(d) = (123) and ε(b) = ε(q) = (132).
pub fn s3_image(w: &FriezeWord) -> Perm3 {
    w.letters
        .iter()
        .fold(Perm3::IDENTITY, |acc, l| acc.compose(l.s3_image()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TraceClass {
    Elliptic,
    Parabolic,
    Hyperbolic,
}

impl fmt::Display for TraceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Elliptic => "elliptic",
            Self::Parabolic => "parabolic",
            Self::Hyperbolic => "hyperbolic",
        })
    }
}

pub fn trace_class(m: &Psl2Mat) -> TraceClass {
    let t = m.abs_trace();
    let two = BigInt::from(2);
    match t.cmp(&two) {
        std::cmp::Ordering::Less => TraceClass::Elliptic,
        std::cmp::Ordering::Equal => TraceClass::Parabolic,
        std::cmp::Ordering::Greater => TraceClass::Hyperbolic,
    }
}

/// Letter-wise conjugation by A (p ↔ q, b ↔ d).
pub fn a_conjugate(w: &FriezeWord) -> FriezeWord {
    FriezeWord {
        letters: w.letters.iter().map(|l| l.a_conjugate()).collect(),
    }
}

/// A·w⁻¹·A for an arbitrary frieze word.
pub fn a_inverse_conjugate(w: &FriezeWord) -> FriezeWord {
    a_conjugate(&w.inverse())
}

/// The second half A·h⁻¹·A of a palindromic first half `h`; for a palindrome
/// this is the letter-wise interchange p ↔ d, b ↔ q.
pub fn second_half(h: &FriezeWord) -> Result<FriezeWord> {
    if !h.is_palindrome() {
        return Err(Error::NotPalindromic(h.to_string()));
    }
    Ok(a_inverse_conjugate(h))
}

/// Cyclic reduction: merges or cancels first and last letters while they lie
/// in the same factor.
pub fn cyclic_reduce(w: &FriezeWord) -> Vec<FriezeLetter> {
    let mut letters = std::collections::VecDeque::from(w.letters.clone());
    while letters.len() >= 2 {
        let first = letters[0];
        let last = letters[letters.len() - 1];
        if first.factor() != last.factor() {
            break;
        }
        letters.pop_front();
        letters.pop_back();
        if let Some(merged) =
            FriezeLetter::from_parts(first.factor(), first.exponent() + last.exponent())
        {
            letters.push_back(merged);
        }
    }
    letters.into_iter().collect()
}

/// Conjugacy in the free product: equal cyclic reductions up to rotation.
pub fn cyclically_equal(w1: &FriezeWord, w2: &FriezeWord) -> bool {
    let c1 = cyclic_reduce(w1);
    let c2 = cyclic_reduce(w2);
    is_rotation(&c1, &c2)
}

/// True when `b` is a rotation of `a`.
pub fn is_rotation<T: PartialEq>(a: &[T], b: &[T]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    (0..a.len()).any(|r| a[r..].iter().chain(&a[..r]).eq(b.iter()))
}

/// Larger eigenvalue (|t| + √(t² − 4))/2 of a hyperbolic element.
pub fn dilatation(m: &Psl2Mat) -> Result<QuadSurd> {
    if trace_class(m) != TraceClass::Hyperbolic {
        return Err(Error::NotHyperbolic(m.trace().to_string()));
    }
    let t = m.abs_trace();
    let disc = &t * &t - BigInt::from(4);
    QuadSurd::new(t, BigInt::from(2), disc)
}
