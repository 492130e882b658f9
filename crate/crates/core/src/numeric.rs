//! Exact rational intervals, Gaussian rationals and certified bounds for
//! `ln` and `sqrt` of rationals.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::poly::IntPoly;

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Closed interval [lo, hi] with rational endpoints.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Interval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        debug_assert!(lo <= hi, "empty interval");
        Interval { lo, hi }
    }

    pub fn point(x: BigRational) -> Self {
        Interval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / int(2)
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn is_subset_of(&self, other: &Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn intersects(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    pub fn abs_max(&self) -> BigRational {
        self.lo.abs().max(self.hi.abs())
    }

    /// Integers contained in the interval.
    pub fn integers(&self) -> impl Iterator<Item = BigInt> {
        let lo = self.lo.ceil().to_integer();
        let hi = self.hi.floor().to_integer();
        num_iter_range(lo, hi)
    }

    pub fn scale(&self, c: &BigRational) -> Interval {
        let (a, b) = (&self.lo * c, &self.hi * c);
        if a <= b {
            Interval::new(a, b)
        } else {
            Interval::new(b, a)
        }
    }

    pub fn add(&self, o: &Interval) -> Interval {
        Interval::new(&self.lo + &o.lo, &self.hi + &o.hi)
    }

    pub fn sub(&self, o: &Interval) -> Interval {
        Interval::new(&self.lo - &o.hi, &self.hi - &o.lo)
    }

    pub fn neg(&self) -> Interval {
        Interval::new(-&self.hi, -&self.lo)
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        let c = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Interval::new(lo, hi)
    }

    pub fn square(&self) -> Interval {
        if self.contains_zero() {
            Interval::new(BigRational::zero(), self.abs_max().pow(2))
        } else {
            let (a, b) = (self.lo.pow(2), self.hi.pow(2));
            Interval::new(a.clone().min(b.clone()), a.max(b))
        }
    }

    /// 1/x for an interval that excludes zero.
    pub fn recip(&self) -> Option<Interval> {
        if self.contains_zero() {
            return None;
        }
        Some(Interval::new(self.hi.recip(), self.lo.recip()))
    }

    /// Outward rounding of both endpoints to multiples of 2^-bits.
    pub fn round_out(&self, bits: u32) -> Interval {
        Interval::new(floor_dyadic(&self.lo, bits), ceil_dyadic(&self.hi, bits))
    }
}

fn num_iter_range(lo: BigInt, hi: BigInt) -> impl Iterator<Item = BigInt> {
    let mut cur = lo;
    std::iter::from_fn(move || {
        if cur > hi {
            None
        } else {
            let out = cur.clone();
            cur += 1;
            Some(out)
        }
    })
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} ~ {:.6e}, {} ~ {:.6e}]", self.lo, to_f64(&self.lo), self.hi, to_f64(&self.hi))
    }
}

impl Serialize for Interval {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Interval", 4)?;
        st.serialize_field("hi", &self.hi.to_string())?;
        st.serialize_field("hi_approx", &to_f64(&self.hi))?;
        st.serialize_field("lo", &self.lo.to_string())?;
        st.serialize_field("lo_approx", &to_f64(&self.lo))?;
        st.end()
    }
}

/// Axis-aligned complex rectangle.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct ComplexBox {
    pub re: Interval,
    pub im: Interval,
}

impl ComplexBox {
    pub fn new(re: Interval, im: Interval) -> Self {
        ComplexBox { re, im }
    }

    pub fn point(z: &QComplex) -> Self {
        ComplexBox::new(Interval::point(z.re.clone()), Interval::point(z.im.clone()))
    }

    pub fn real(x: Interval) -> Self {
        ComplexBox::new(x, Interval::point(BigRational::zero()))
    }

    /// Longest side.
    pub fn width(&self) -> BigRational {
        self.re.width().max(self.im.width())
    }

    pub fn center(&self) -> QComplex {
        QComplex::new(self.re.midpoint(), self.im.midpoint())
    }

    pub fn intersects(&self, o: &ComplexBox) -> bool {
        self.re.intersects(&o.re) && self.im.intersects(&o.im)
    }

    pub fn is_subset_of(&self, o: &ComplexBox) -> bool {
        self.re.is_subset_of(&o.re) && self.im.is_subset_of(&o.im)
    }

    pub fn contains(&self, z: &QComplex) -> bool {
        self.re.contains(&z.re) && self.im.contains(&z.im)
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    pub fn conj(&self) -> ComplexBox {
        ComplexBox::new(self.re.clone(), self.im.neg())
    }

    pub fn add(&self, o: &ComplexBox) -> ComplexBox {
        ComplexBox::new(self.re.add(&o.re), self.im.add(&o.im))
    }

    pub fn sub(&self, o: &ComplexBox) -> ComplexBox {
        ComplexBox::new(self.re.sub(&o.re), self.im.sub(&o.im))
    }

    pub fn mul(&self, o: &ComplexBox) -> ComplexBox {
        let re = self.re.mul(&o.re).sub(&self.im.mul(&o.im));
        let im = self.re.mul(&o.im).add(&self.im.mul(&o.re));
        ComplexBox::new(re, im)
    }

    pub fn scale(&self, c: &BigRational) -> ComplexBox {
        ComplexBox::new(self.re.scale(c), self.im.scale(c))
    }

    /// Enclosure of |z|^2 over the box.
    pub fn abs2(&self) -> Interval {
        self.re.square().add(&self.im.square())
    }

    /// Enclosure of 1/z, when the box excludes zero.
    pub fn recip(&self) -> Option<ComplexBox> {
        let inv = self.abs2().recip()?;
        let c = self.conj();
        Some(ComplexBox::new(c.re.mul(&inv), c.im.mul(&inv)))
    }

    pub fn div(&self, o: &ComplexBox) -> Option<ComplexBox> {
        Some(self.mul(&o.recip()?))
    }

    /// Horner evaluation of an integer polynomial over the box.
    pub fn eval_poly(&self, p: &IntPoly) -> ComplexBox {
        let zero = ComplexBox::point(&QComplex::zero());
        p.coeffs().iter().rev().fold(zero, |acc, c| {
            let m = acc.mul(self);
            ComplexBox::new(
                m.re.add(&Interval::point(BigRational::from_integer(c.clone()))),
                m.im,
            )
        })
    }

    pub fn round_out(&self, bits: u32) -> ComplexBox {
        ComplexBox::new(self.re.round_out(bits), self.im.round_out(bits))
    }
}

/// Exact Gaussian rational re + i*im.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QComplex {
    pub re: BigRational,
    pub im: BigRational,
}

impl QComplex {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        QComplex { re, im }
    }

    pub fn zero() -> Self {
        QComplex::new(BigRational::zero(), BigRational::zero())
    }

    pub fn from_real(re: BigRational) -> Self {
        QComplex::new(re, BigRational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        QComplex::new(self.re.clone(), -&self.im)
    }

    pub fn add(&self, o: &QComplex) -> Self {
        QComplex::new(&self.re + &o.re, &self.im + &o.im)
    }

    pub fn sub(&self, o: &QComplex) -> Self {
        QComplex::new(&self.re - &o.re, &self.im - &o.im)
    }

    pub fn mul(&self, o: &QComplex) -> Self {
        QComplex::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }

    pub fn abs2(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn div(&self, o: &QComplex) -> Self {
        let d = o.abs2();
        let n = self.mul(&o.conj());
        QComplex::new(n.re / &d, n.im / &d)
    }

    pub fn eval_poly(&self, p: &IntPoly) -> QComplex {
        p.coeffs().iter().rev().fold(QComplex::zero(), |acc, c| {
            let m = acc.mul(self);
            QComplex::new(m.re + BigRational::from_integer(c.clone()), m.im)
        })
    }

    pub fn round(&self, bits: u32) -> QComplex {
        QComplex::new(round_dyadic(&self.re, bits), round_dyadic(&self.im, bits))
    }
}

pub fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // numerator or denominator out of f64 range: scale through bit lengths
        let n = x.numer().bits() as i64;
        let d = x.denom().bits() as i64;
        let shift = n - d;
        let scaled = x / BigRational::from_integer(BigInt::one() << shift.unsigned_abs());
        let base = if shift >= 0 {
            scaled.to_f64().unwrap_or(f64::NAN)
        } else {
            (x * BigRational::from_integer(BigInt::one() << shift.unsigned_abs()))
                .to_f64()
                .unwrap_or(f64::NAN)
        };
        base * 2f64.powi(shift as i32)
    })
}

/// Exact rational value of a finite f64.
pub fn from_f64(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite float")
}

fn pow2(bits: u32) -> BigInt {
    BigInt::one() << bits
}

pub fn floor_dyadic(x: &BigRational, bits: u32) -> BigRational {
    let s = pow2(bits);
    BigRational::new((x * BigRational::from_integer(s.clone())).floor().to_integer(), s)
}

pub fn ceil_dyadic(x: &BigRational, bits: u32) -> BigRational {
    let s = pow2(bits);
    BigRational::new((x * BigRational::from_integer(s.clone())).ceil().to_integer(), s)
}

pub fn round_dyadic(x: &BigRational, bits: u32) -> BigRational {
    let s = pow2(bits);
    BigRational::new((x * BigRational::from_integer(s.clone())).round().to_integer(), s)
}

/// Smallest k with 2^-k <= x, for x > 0.
pub fn bits_for(x: &BigRational) -> u32 {
    debug_assert!(x.is_positive());
    let mut k = 0u32;
    let mut p = BigRational::one();
    while &p > x {
        p /= int(2);
        k += 1;
    }
    k
}

/// Upper bound for sqrt(x), x >= 0, with relative slack about 2^-bits.
pub fn sqrt_upper(x: &BigRational, bits: u32) -> BigRational {
    if x.is_zero() {
        return BigRational::zero();
    }
    // sqrt(n/d) = sqrt(n d) / d; scale by 4^k for precision
    let scale = BigInt::one() << (2 * bits);
    let v = x.numer() * x.denom() * &scale;
    let s = crate::poly::ceil_sqrt(&v);
    BigRational::new(s, x.denom() * (BigInt::one() << bits))
}

/// Lower bound for sqrt(x), x >= 0.
pub fn sqrt_lower(x: &BigRational, bits: u32) -> BigRational {
    if x.is_zero() {
        return BigRational::zero();
    }
    let scale = BigInt::one() << (2 * bits);
    let v = x.numer() * x.denom() * &scale;
    BigRational::new(v.sqrt(), x.denom() * (BigInt::one() << bits))
}

/// Enclosure of sqrt(x) of width at most about x^(1/2) * 2^-bits.
pub fn sqrt_interval(x: &BigRational, bits: u32) -> Interval {
    Interval::new(sqrt_lower(x, bits), sqrt_upper(x, bits))
}

/// Enclosure of ln(y) for y in [1, 2] from the series
/// ln y = 2 * sum z^(2j+1)/(2j+1), z = (y-1)/(y+1), all terms nonnegative.
fn ln_series(y: &BigRational, tol: &BigRational) -> Interval {
    let z = (y - int(1)) / (y + int(1));
    if z.is_zero() {
        return Interval::point(BigRational::zero());
    }
    let z2 = &z * &z;
    let tail_factor = int(1) / (int(1) - &z2);
    let mut term = z.clone();
    let mut sum = BigRational::zero();
    let mut j = 0i64;
    loop {
        sum += &term / int(2 * j + 1);
        term *= &z2;
        j += 1;
        // remainder <= 2 z^(2j+1) / ((2j+1)(1 - z^2))
        let rem = int(2) * &term * &tail_factor / int(2 * j + 1);
        if &rem <= tol {
            let lo = int(2) * &sum;
            let hi = &lo + &rem;
            return Interval::new(lo, hi);
        }
        // keep denominators bounded
        if j % 8 == 0 {
            let bits = bits_for(tol) + 16;
            sum = floor_dyadic(&sum, bits);
            term = ceil_dyadic(&term, bits + 8);
        }
    }
}

/// Certified enclosure of ln 2 with width at most `tol`.
pub fn ln2_interval(tol: &BigRational) -> Interval {
    ln_series(&int(2), tol)
}

/// Certified enclosure of ln(x) for rational x > 0, width at most `tol`.
pub fn ln_interval(x: &BigRational, tol: &BigRational) -> Interval {
    assert!(x.is_positive(), "ln of a non-positive number");
    if x < &int(1) {
        return ln_interval(&x.recip(), tol).neg();
    }
    // x = 2^k * y with 1 <= y < 2
    let mut k = 0i64;
    let mut y = x.clone();
    let two = int(2);
    while y >= two {
        y /= &two;
        k += 1;
    }
    let share = tol / int(2 * (k + 1));
    let ly = ln_series(&y, &share);
    if k == 0 {
        return ly;
    }
    let l2 = ln2_interval(&share).scale(&int(k));
    ly.add(&l2)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse `{0}` as a rational number")]
pub struct RationalParseError(pub String);

/// Parses "p/q", a decimal like "0.001", or scientific "1e-9" exactly.
pub fn parse_rational(text: &str) -> Result<BigRational, RationalParseError> {
    let err = || RationalParseError(text.to_string());
    let s = text.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| err())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(BigRational::new(n, d));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| err())?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(err());
    }
    let all = format!("{int_part}{frac_part}");
    let n = BigInt::from_str(if all.is_empty() { "0" } else { &all }).map_err(|_| err())?;
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut v = if scale >= 0 {
        BigRational::from_integer(n * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(n, num_traits::pow(ten, (-scale) as usize))
    };
    if neg {
        v = -v;
    }
    Ok(v)
}

/// floor(x * 10^digits) / 10^digits written in decimal.
pub fn truncated_decimal(x: &BigRational, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let v = (x * BigRational::from_integer(scale.clone())).floor().to_integer();
    let (q, r) = v.div_mod_floor(&scale);
    if digits == 0 {
        return q.to_string();
    }
    format!("{q}.{r:0>digits$}")
}

pub fn cmp_intervals(a: &Interval, b: &Interval) -> Option<Ordering> {
    if a.hi < b.lo {
        Some(Ordering::Less)
    } else if b.hi < a.lo {
        Some(Ordering::Greater)
    } else {
        None
    }
}

pub(crate) mod serde_big {
    use num_bigint::BigInt;
    use num_traits::ToPrimitive;
    use serde::Serializer;

    /// Integers as JSON numbers when they fit in i64, strings otherwise.
    pub fn int<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        match v.to_i64() {
            Some(x) => s.serialize_i64(x),
            None => s.serialize_str(&v.to_string()),
        }
    }

    pub fn opt_int<S: Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(x) => int(x, s),
            None => s.serialize_none(),
        }
    }
}
