//! Exact arithmetic in Q(i, √2).
//!
//! A [`Scalar`] is `a + b·i + c·√2 + d·i√2` with rational coordinates. Rationals
//! are kept in a small-integer representation while numerator and denominator
//! fit in an `i64`, and promoted to arbitrary precision otherwise.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Rational number in lowest terms with positive denominator.
#[derive(Clone, Debug)]
pub enum Rat {
    /// Fits in machine words.
    Small(i64, i64),
    /// Arbitrary precision; never holds a value that fits in `Small`.
    Big(Box<BigRational>),
}

fn fits(v: i128) -> bool {
    v > i64::MIN as i128 && v <= i64::MAX as i128
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rat {
    pub const ZERO: Rat = Rat::Small(0, 1);
    pub const ONE: Rat = Rat::Small(1, 1);

    pub fn int(n: i64) -> Rat {
        Rat::from_i128(n as i128, 1)
    }

    /// `num/den`; panics on a zero denominator.
    pub fn new(num: i64, den: i64) -> Rat {
        assert!(den != 0, "zero denominator");
        Rat::from_i128(num as i128, den as i128)
    }

    fn from_i128(mut n: i128, mut d: i128) -> Rat {
        if d < 0 {
            n = -n;
            d = -d;
        }
        if n == 0 {
            return Rat::ZERO;
        }
        if d != 1 {
            let g = gcd_u128(n.unsigned_abs(), d as u128) as i128;
            if g > 1 {
                n /= g;
                d /= g;
            }
        }
        if fits(n) && fits(d) {
            Rat::Small(n as i64, d as i64)
        } else {
            Rat::Big(Box::new(BigRational::new_raw(BigInt::from(n), BigInt::from(d))))
        }
    }

    pub fn from_big(r: BigRational) -> Rat {
        // BigRational::new normalizes; callers may hand in raw values.
        let r = if r.denom().is_negative() || !r.numer().gcd(r.denom()).is_one() {
            BigRational::new(r.numer().clone(), r.denom().clone())
        } else {
            r
        };
        if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
            if n != i64::MIN && d != i64::MIN {
                return Rat::Small(n, d);
            }
        }
        Rat::Big(Box::new(r))
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Rat::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Rat::Big(b) => (**b).clone(),
        }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        matches!(self, Rat::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Rat::Small(1, 1))
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Rat::Small(_, d) => *d == 1,
            Rat::Big(b) => b.is_integer(),
        }
    }

    pub fn signum(&self) -> i32 {
        match self {
            Rat::Small(n, _) => n.signum() as i32,
            Rat::Big(b) => {
                if b.is_negative() {
                    -1
                } else {
                    1
                }
            }
        }
    }

    pub fn add_ref(&self, o: &Rat) -> Rat {
        match (self, o) {
            (Rat::Small(0, _), _) => o.clone(),
            (_, Rat::Small(0, _)) => self.clone(),
            (Rat::Small(a, 1), Rat::Small(c, 1)) => Rat::from_i128(*a as i128 + *c as i128, 1),
            (Rat::Small(a, b), Rat::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                if b == d {
                    Rat::from_i128(a + c, b)
                } else {
                    match (a.checked_mul(d), c.checked_mul(b), b.checked_mul(d)) {
                        (Some(x), Some(y), Some(z)) => match x.checked_add(y) {
                            Some(s) => Rat::from_i128(s, z),
                            None => Rat::from_big(self.to_big() + o.to_big()),
                        },
                        _ => Rat::from_big(self.to_big() + o.to_big()),
                    }
                }
            }
            _ => Rat::from_big(self.to_big() + o.to_big()),
        }
    }

    pub fn neg_ref(&self) -> Rat {
        match self {
            Rat::Small(n, d) => Rat::Small(-n, *d),
            Rat::Big(b) => Rat::from_big(-(**b).clone()),
        }
    }

    pub fn sub_ref(&self, o: &Rat) -> Rat {
        self.add_ref(&o.neg_ref())
    }

    pub fn mul_ref(&self, o: &Rat) -> Rat {
        match (self, o) {
            (Rat::Small(0, _), _) | (_, Rat::Small(0, _)) => Rat::ZERO,
            (Rat::Small(1, 1), _) => o.clone(),
            (_, Rat::Small(1, 1)) => self.clone(),
            (Rat::Small(a, b), Rat::Small(c, d)) => {
                Rat::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Rat::from_big(self.to_big() * o.to_big()),
        }
    }

    pub fn mul_int(&self, k: i64) -> Rat {
        self.mul_ref(&Rat::int(k))
    }

    pub fn inv(&self) -> Option<Rat> {
        match self {
            Rat::Small(0, _) => None,
            Rat::Small(n, d) => Some(Rat::from_i128(*d as i128, *n as i128)),
            Rat::Big(b) => Some(Rat::from_big(b.recip())),
        }
    }
}

impl Default for Rat {
    fn default() -> Rat {
        Rat::ZERO
    }
}

impl PartialEq for Rat {
    fn eq(&self, o: &Rat) -> bool {
        match (self, o) {
            (Rat::Small(a, b), Rat::Small(c, d)) => a == c && b == d,
            (Rat::Big(x), Rat::Big(y)) => x == y,
            _ => false,
        }
    }
}
impl Eq for Rat {}

impl Hash for Rat {
    fn hash<H: Hasher>(&self, h: &mut H) {
        match self {
            Rat::Small(n, d) => {
                0u8.hash(h);
                n.hash(h);
                d.hash(h);
            }
            Rat::Big(b) => {
                1u8.hash(h);
                b.numer().hash(h);
                b.denom().hash(h);
            }
        }
    }
}

impl Ord for Rat {
    fn cmp(&self, o: &Rat) -> Ordering {
        match (self, o) {
            (Rat::Small(a, b), Rat::Small(c, d)) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => self.to_big().cmp(&o.to_big()),
        }
    }
}
impl PartialOrd for Rat {
    fn partial_cmp(&self, o: &Rat) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rat::Small(n, 1) => write!(f, "{n}"),
            Rat::Small(n, d) => write!(f, "{n}/{d}"),
            Rat::Big(b) if b.is_integer() => write!(f, "{}", b.numer()),
            Rat::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
        }
    }
}

impl FromStr for Rat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Rat> {
        let bad = || Error::Parse(format!("bad rational {s:?}"));
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rat::from_big(BigRational::new(n, d)))
    }
}

/// Element `a + b·i + c·√2 + d·i√2` of Q(i, √2).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    c: [Rat; 4],
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub const fn zero() -> Scalar {
        Scalar { c: [Rat::ZERO, Rat::ZERO, Rat::ZERO, Rat::ZERO] }
    }

    pub const fn one() -> Scalar {
        Scalar { c: [Rat::ONE, Rat::ZERO, Rat::ZERO, Rat::ZERO] }
    }

    pub fn from_parts(a: Rat, b: Rat, c: Rat, d: Rat) -> Scalar {
        Scalar { c: [a, b, c, d] }
    }

    pub fn int(n: i64) -> Scalar {
        Scalar::rat(Rat::int(n))
    }

    pub fn frac(n: i64, d: i64) -> Scalar {
        Scalar::rat(Rat::new(n, d))
    }

    pub fn rat(r: Rat) -> Scalar {
        Scalar { c: [r, Rat::ZERO, Rat::ZERO, Rat::ZERO] }
    }

    /// The imaginary unit.
    pub fn i() -> Scalar {
        Scalar { c: [Rat::ZERO, Rat::ONE, Rat::ZERO, Rat::ZERO] }
    }

    pub fn sqrt2() -> Scalar {
        Scalar { c: [Rat::ZERO, Rat::ZERO, Rat::ONE, Rat::ZERO] }
    }

    pub fn parts(&self) -> &[Rat; 4] {
        &self.c
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Rat::is_zero)
    }

    #[inline]
    pub fn is_rational(&self) -> bool {
        self.c[1].is_zero() && self.c[2].is_zero() && self.c[3].is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.is_rational()
    }

    /// The rational value, if the other coordinates vanish.
    pub fn as_rat(&self) -> Option<&Rat> {
        self.is_rational().then_some(&self.c[0])
    }

    pub fn add_ref(&self, o: &Scalar) -> Scalar {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        Scalar {
            c: [
                self.c[0].add_ref(&o.c[0]),
                self.c[1].add_ref(&o.c[1]),
                self.c[2].add_ref(&o.c[2]),
                self.c[3].add_ref(&o.c[3]),
            ],
        }
    }

    pub fn sub_ref(&self, o: &Scalar) -> Scalar {
        self.add_ref(&o.neg_ref())
    }

    pub fn neg_ref(&self) -> Scalar {
        Scalar { c: [self.c[0].neg_ref(), self.c[1].neg_ref(), self.c[2].neg_ref(), self.c[3].neg_ref()] }
    }

    pub fn mul_ref(&self, o: &Scalar) -> Scalar {
        if self.is_rational() {
            if self.c[0].is_zero() {
                return Scalar::zero();
            }
            if self.c[0].is_one() {
                return o.clone();
            }
            let k = &self.c[0];
            return Scalar { c: [k.mul_ref(&o.c[0]), k.mul_ref(&o.c[1]), k.mul_ref(&o.c[2]), k.mul_ref(&o.c[3])] };
        }
        if o.is_rational() {
            let k = &o.c[0];
            return Scalar { c: [self.c[0].mul_ref(k), self.c[1].mul_ref(k), self.c[2].mul_ref(k), self.c[3].mul_ref(k)] };
        }
        let [a0, a1, a2, a3] = &self.c;
        let [b0, b1, b2, b3] = &o.c;
        let m = |x: &Rat, y: &Rat| x.mul_ref(y);
        // basis products: i² = -1, r² = 2, i·r = ir, i·ir = -r, r·ir = 2i, ir·ir = -2
        let r0 = m(a0, b0).sub_ref(&m(a1, b1)).add_ref(&m(a2, b2).mul_int(2)).sub_ref(&m(a3, b3).mul_int(2));
        let r1 = m(a0, b1).add_ref(&m(a1, b0)).add_ref(&m(a2, b3).add_ref(&m(a3, b2)).mul_int(2));
        let r2 = m(a0, b2).add_ref(&m(a2, b0)).sub_ref(&m(a1, b3)).sub_ref(&m(a3, b1));
        let r3 = m(a0, b3).add_ref(&m(a3, b0)).add_ref(&m(a1, b2)).add_ref(&m(a2, b1));
        Scalar { c: [r0, r1, r2, r3] }
    }

    /// Matrix of multiplication by `self` on the Q-basis (1, i, √2, i√2); column j is `self · e_j`.
    fn mul_matrix(&self) -> [[Rat; 4]; 4] {
        let basis = [Scalar::one(), Scalar::i(), Scalar::sqrt2(), Scalar::i().mul_ref(&Scalar::sqrt2())];
        let mut out: [[Rat; 4]; 4] = Default::default();
        for (j, e) in basis.iter().enumerate() {
            let p = self.mul_ref(e);
            for i in 0..4 {
                out[i][j] = p.c[i].clone();
            }
        }
        out
    }

    /// Multiplicative inverse, found by solving `self · y = 1` over Q.
    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.as_rat() {
            return Ok(Scalar::rat(r.inv().expect("nonzero")));
        }
        let m = self.mul_matrix();
        let mut aug: Vec<Vec<Rat>> = (0..4)
            .map(|i| {
                let mut row = m[i].to_vec();
                row.push(if i == 0 { Rat::ONE } else { Rat::ZERO });
                row
            })
            .collect();
        for col in 0..4 {
            let piv = (col..4).find(|&r| !aug[r][col].is_zero()).ok_or(Error::DivisionByZero)?;
            aug.swap(col, piv);
            let pinv = aug[col][col].inv().expect("nonzero pivot");
            for v in aug[col].iter_mut() {
                *v = v.mul_ref(&pinv);
            }
            for r in 0..4 {
                if r != col && !aug[r][col].is_zero() {
                    let f = aug[r][col].clone();
                    for k in 0..5 {
                        let t = aug[col][k].mul_ref(&f);
                        aug[r][k] = aug[r][k].sub_ref(&t);
                    }
                }
            }
        }
        Ok(Scalar { c: [aug[0][4].clone(), aug[1][4].clone(), aug[2][4].clone(), aug[3][4].clone()] })
    }

    pub fn div_ref(&self, o: &Scalar) -> Result<Scalar> {
        Ok(self.mul_ref(&o.inv()?))
    }

    /// Lexicographic order on the rational coordinates: a total order compatible with addition.
    pub fn lex_cmp(&self, o: &Scalar) -> Ordering {
        for k in 0..4 {
            match self.c[k].cmp(&o.c[k]) {
                Ordering::Equal => continue,
                other => return other,
            }
        }
        Ordering::Equal
    }

    /// `(-1)^k` for a parity or exponent.
    pub fn sign(k: u32) -> Scalar {
        if k % 2 == 0 {
            Scalar::one()
        } else {
            Scalar::int(-1)
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const UNITS: [&str; 4] = ["", "*I", "*R2", "*I*R2"];
        let mut first = true;
        for k in 0..4 {
            let r = &self.c[k];
            if r.is_zero() {
                continue;
            }
            let (neg, abs) = if r.signum() < 0 { (true, r.neg_ref()) } else { (false, r.clone()) };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            write!(f, "{abs}{}", UNITS[k])?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl FromStr for Scalar {
    type Err = Error;

    /// Accepts sums like `1/2 - 3*I + R2 - 2/3*I*R2`; each unit may appear at most once.
    fn from_str(s: &str) -> Result<Scalar> {
        let bad = || Error::Parse(format!("bad scalar {s:?}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        let mut terms = Vec::new();
        let mut cur = String::new();
        for (idx, ch) in compact.char_indices() {
            if (ch == '+' || ch == '-') && idx > 0 {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        terms.push(cur);
        let mut out = Scalar::zero();
        let mut seen = [false; 4];
        for t in terms {
            let (neg, body) = match t.strip_prefix('-') {
                Some(b) => (true, b),
                None => (false, t.strip_prefix('+').unwrap_or(&t)),
            };
            let (coef, unit) = if let Some(c) = body.strip_suffix("I*R2") {
                (c, 3)
            } else if let Some(c) = body.strip_suffix("R2") {
                (c, 2)
            } else if let Some(c) = body.strip_suffix('I') {
                (c, 1)
            } else {
                (body, 0)
            };
            let coef = if unit == 0 {
                coef
            } else if coef.is_empty() {
                "1"
            } else {
                coef.strip_suffix('*').ok_or_else(bad)?
            };
            if seen[unit] {
                return Err(bad());
            }
            seen[unit] = true;
            let mut r: Rat = coef.parse().map_err(|_| bad())?;
            if neg {
                r = r.neg_ref();
            }
            out.c[unit] = r;
        }
        Ok(out)
    }
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Scalar, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Scalar {
        Scalar::int(n)
    }
}

impl From<Rat> for Scalar {
    fn from(r: Rat) -> Scalar {
        Scalar::rat(r)
    }
}

macro_rules! binop {
    ($tr:ident, $f:ident, $via:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $f(self, o: &Scalar) -> Scalar {
                self.$via(o)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $f(self, o: Scalar) -> Scalar {
                self.$via(&o)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $f(self, o: &Scalar) -> Scalar {
                self.$via(o)
            }
        }
    };
}
binop!(Add, add, add_ref);
binop!(Sub, sub, sub_ref);
binop!(Mul, mul, mul_ref);

impl Div<&Scalar> for &Scalar {
    type Output = Scalar;
    /// Panics on division by zero; use [`Scalar::div_ref`] for a checked version.
    fn div(self, o: &Scalar) -> Scalar {
        self.div_ref(o).expect("division by zero")
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}
impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        if !o.is_zero() {
            for k in 0..4 {
                if !o.c[k].is_zero() {
                    self.c[k] = self.c[k].add_ref(&o.c[k]);
                }
            }
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        if !o.is_zero() {
            for k in 0..4 {
                if !o.c[k].is_zero() {
                    self.c[k] = self.c[k].sub_ref(&o.c[k]);
                }
            }
        }
    }
}

impl Scalar {
    /// `self += f * x`.
    #[inline]
    pub fn add_mul(&mut self, f: &Scalar, x: &Scalar) {
        if f.is_zero() || x.is_zero() {
            return;
        }
        if f.is_rational() && x.is_rational() {
            let p = f.c[0].mul_ref(&x.c[0]);
            self.c[0] = self.c[0].add_ref(&p);
            return;
        }
        let p = f.mul_ref(x);
        *self += &p;
    }

    /// `self -= f * x`, the inner step of every elimination loop.
    #[inline]
    pub fn sub_mul(&mut self, f: &Scalar, x: &Scalar) {
        if f.is_zero() || x.is_zero() {
            return;
        }
        if f.is_rational() && x.is_rational() {
            let p = f.c[0].mul_ref(&x.c[0]);
            self.c[0] = self.c[0].sub_ref(&p);
            return;
        }
        let p = f.mul_ref(x);
        *self -= &p;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_rationals_promote_and_demote() {
        let big = Rat::int(i64::MAX).mul_ref(&Rat::int(4));
        assert!(matches!(big, Rat::Big(_)));
        let back = big.mul_ref(&Rat::new(1, 4));
        assert_eq!(back, Rat::int(i64::MAX));
        assert!(matches!(back, Rat::Small(..)));
    }

    #[test]
    fn rational_text_forms() {
        assert_eq!("6/-4".parse::<Rat>().unwrap(), Rat::new(-3, 2));
        assert_eq!(Rat::new(-3, 2).to_string(), "-3/2");
        assert!(matches!("1/0".parse::<Rat>(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn scalar_text_forms() {
        let x = Scalar::from_parts(Rat::new(1, 2), Rat::int(-3), Rat::ZERO, Rat::new(2, 3));
        assert_eq!(x.to_string(), "1/2 - 3*I + 2/3*I*R2");
        assert_eq!(x.to_string().parse::<Scalar>().unwrap(), x);
        assert_eq!("-I".parse::<Scalar>().unwrap(), -Scalar::i());
        assert_eq!("R2 + I*R2".parse::<Scalar>().unwrap(), Scalar::sqrt2() + Scalar::i() * Scalar::sqrt2());
        assert_eq!(Scalar::zero().to_string(), "0");
        assert!("1 + 2".parse::<Scalar>().is_err());
    }

    #[test]
    fn unit_products() {
        let i = Scalar::i();
        let r = Scalar::sqrt2();
        assert_eq!(&i * &i, Scalar::int(-1));
        assert_eq!(&r * &r, Scalar::int(2));
        let ir = &i * &r;
        assert_eq!(&ir * &ir, Scalar::int(-2));
        assert_eq!(&i * &ir, -r.clone());
        assert_eq!(&r * &ir, Scalar::int(2) * i);
    }
}
