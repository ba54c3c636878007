use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{Signed, Zero};

use super::dyadic::{Dyadic, Round};
use crate::error::{Error, Result};
use crate::exact::{Integer, Rational};

/// Closed real interval `[lo, hi]` with dyadic endpoints.
///
/// Every operation rounds outward to the working precision, so the result
/// always contains the exact image of every point of the inputs. The
/// precision of a result is the larger of its operands' precisions.
#[derive(Clone, PartialEq, Eq)]
pub struct Interval {
    lo: Dyadic,
    hi: Dyadic,
    prec: u32,
}

impl Interval {
    pub fn new(lo: Dyadic, hi: Dyadic, prec: u32) -> Self {
        assert!(lo <= hi, "inverted interval {lo:?} > {hi:?}");
        Interval { lo: lo.round(prec, Round::Down), hi: hi.round(prec, Round::Up), prec }
    }

    pub fn point(x: Dyadic, prec: u32) -> Self {
        Interval::new(x.clone(), x, prec)
    }

    pub fn zero(prec: u32) -> Self {
        Interval::point(Dyadic::zero(), prec)
    }

    pub fn one(prec: u32) -> Self {
        Interval::point(Dyadic::one(), prec)
    }

    pub fn from_i64(n: i64, prec: u32) -> Self {
        Interval::point(Dyadic::from_i64(n), prec)
    }

    pub fn from_int(n: &Integer, prec: u32) -> Self {
        Interval::point(Dyadic::from_int(n), prec)
    }

    pub fn from_rational(q: &Rational, prec: u32) -> Self {
        Interval {
            lo: Dyadic::from_rational(q, prec, Round::Down),
            hi: Dyadic::from_rational(q, prec, Round::Up),
            prec,
        }
    }

    /// Encloses an `f64` value known only to within `ulps` units in the last place.
    pub fn from_f64_ulps(x: f64, ulps: u32, prec: u32) -> Self {
        let e = if x == 0.0 { f64::MIN_POSITIVE } else { x.abs() * f64::EPSILON };
        let pad = Dyadic::from_f64(e * ulps as f64);
        let c = Dyadic::from_f64(x);
        Interval::new(c.sub(&pad), c.add(&pad), prec)
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        Interval::new(self.lo.clone(), self.hi.clone(), prec)
    }

    pub fn mid(&self) -> Dyadic {
        self.lo.add(&self.hi).mul_pow2(-1)
    }

    pub fn width(&self) -> Dyadic {
        self.hi.sub(&self.lo)
    }

    /// Half the width, exact.
    pub fn rad(&self) -> Dyadic {
        self.width().mul_pow2(-1)
    }

    pub fn to_f64(&self) -> f64 {
        self.mid().to_f64()
    }

    pub fn lo_f64(&self) -> f64 {
        self.lo.to_f64_dir(Round::Down)
    }

    pub fn hi_f64(&self) -> f64 {
        self.hi.to_f64_dir(Round::Up)
    }

    pub fn width_f64(&self) -> f64 {
        self.width().to_f64_dir(Round::Up)
    }

    pub fn contains(&self, x: &Dyadic) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn contains_rational(&self, q: &Rational) -> bool {
        self.lo.to_rational() <= *q && *q <= self.hi.to_rational()
    }

    /// The integers inside the interval, if there are at most `limit` of them.
    pub fn integers_inside(&self, limit: usize) -> Option<Vec<Integer>> {
        let a = self.lo.ceil();
        let b = self.hi.floor();
        if b < a {
            return Some(Vec::new());
        }
        let count = (&b - &a) + 1;
        if count > BigInt::from(limit) {
            return None;
        }
        let mut v = Vec::new();
        let mut k = a;
        while k <= b {
            v.push(k.clone());
            k += 1;
        }
        Some(v)
    }

    pub fn overlaps(&self, o: &Interval) -> bool {
        self.lo <= o.hi && o.lo <= self.hi
    }

    pub fn intersect(&self, o: &Interval) -> Option<Interval> {
        let lo = self.lo.greater(&o.lo).clone();
        let hi = self.hi.lesser(&o.hi).clone();
        (lo <= hi).then(|| Interval { lo, hi, prec: self.prec.max(o.prec) })
    }

    pub fn hull(&self, o: &Interval) -> Interval {
        Interval { lo: self.lo.lesser(&o.lo).clone(), hi: self.hi.greater(&o.hi).clone(), prec: self.prec.max(o.prec) }
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    /// Every point of `self` is strictly below every point of `o`.
    pub fn certainly_lt(&self, o: &Interval) -> bool {
        self.hi < o.lo
    }

    pub fn certainly_le(&self, o: &Interval) -> bool {
        self.hi <= o.lo
    }

    pub fn certainly_gt(&self, o: &Interval) -> bool {
        o.certainly_lt(self)
    }

    fn build(lo: Dyadic, hi: Dyadic, prec: u32) -> Interval {
        Interval { lo: lo.round(prec, Round::Down), hi: hi.round(prec, Round::Up), prec }
    }

    pub fn abs(&self) -> Interval {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            -self
        } else {
            let m = self.lo.abs().greater(&self.hi).clone();
            Interval { lo: Dyadic::zero(), hi: m, prec: self.prec }
        }
    }

    pub fn sqr(&self) -> Interval {
        let a = self.abs();
        Interval::build(a.lo.mul(&a.lo), a.hi.mul(&a.hi), self.prec)
    }

    pub fn scale_int(&self, n: &Integer) -> Interval {
        let (a, b) = (self.lo.mul_int(n), self.hi.mul_int(n));
        if n.is_negative() {
            Interval::build(b, a, self.prec)
        } else {
            Interval::build(a, b, self.prec)
        }
    }

    pub fn mul_pow2(&self, k: i64) -> Interval {
        Interval { lo: self.lo.mul_pow2(k), hi: self.hi.mul_pow2(k), prec: self.prec }
    }

    pub fn recip(&self) -> Result<Interval> {
        Interval::one(self.prec).checked_div(self)
    }

    pub fn checked_div(&self, o: &Interval) -> Result<Interval> {
        if o.contains_zero() {
            return Err(Error::DivisionByZero);
        }
        let p = self.prec.max(o.prec);
        let cands = [(&self.lo, &o.lo), (&self.lo, &o.hi), (&self.hi, &o.lo), (&self.hi, &o.hi)];
        let lo = cands.iter().map(|(a, b)| a.div(b, p, Round::Down)).min().expect("four candidates");
        let hi = cands.iter().map(|(a, b)| a.div(b, p, Round::Up)).max().expect("four candidates");
        Ok(Interval { lo, hi, prec: p })
    }

    /// Square root; negative parts of the input are clipped to zero.
    pub fn sqrt(&self) -> Result<Interval> {
        self.nth_root(2)
    }

    pub fn nth_root(&self, n: u32) -> Result<Interval> {
        if self.hi.is_negative() {
            return Err(Error::InvalidArgument("root of a negative interval".into()));
        }
        let lo = if self.lo.is_negative() { Dyadic::zero() } else { self.lo.clone() };
        Ok(Interval {
            lo: lo.nth_root(n, self.prec, Round::Down),
            hi: self.hi.nth_root(n, self.prec, Round::Up),
            prec: self.prec,
        })
    }

    /// Integer power; negative exponents require an interval excluding zero.
    pub fn powi(&self, k: i64) -> Result<Interval> {
        if k < 0 {
            return self.recip()?.powi(-k);
        }
        let mut base = self.clone();
        let mut acc = Interval::one(self.prec);
        let mut e = k as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.sqr();
            }
        }
        Ok(acc)
    }

    /// Natural logarithm of a positive interval.
    pub fn ln(&self) -> Result<Interval> {
        if !self.lo.is_positive() {
            return Err(Error::InvalidArgument("logarithm of a non-positive interval".into()));
        }
        let (lo, _) = ln_enclosure(&self.lo, self.prec);
        let (_, hi) = ln_enclosure(&self.hi, self.prec);
        Ok(Interval { lo, hi, prec: self.prec })
    }

    /// Pointwise `max{1, x}`.
    pub fn max_one(&self) -> Interval {
        let one = Dyadic::one();
        Interval { lo: self.lo.greater(&one).clone(), hi: self.hi.greater(&one).clone(), prec: self.prec }
    }

    pub fn min_with(&self, o: &Interval) -> Interval {
        Interval { lo: self.lo.lesser(&o.lo).clone(), hi: self.hi.lesser(&o.hi).clone(), prec: self.prec.max(o.prec) }
    }

    pub fn max_with(&self, o: &Interval) -> Interval {
        Interval { lo: self.lo.greater(&o.lo).clone(), hi: self.hi.greater(&o.hi).clone(), prec: self.prec.max(o.prec) }
    }

    /// `max{1, log x}` for positive `x`.
    pub fn log_star(&self) -> Result<Interval> {
        Ok(self.ln()?.max_one())
    }
}

/// Lower and upper bounds for `ln x`, `x > 0`, each within a few units of
/// `2^-prec` relative to the magnitude of the result.
fn ln_enclosure(x: &Dyadic, prec: u32) -> (Dyadic, Dyadic) {
    let w = prec as u64 + 64;
    let man = x.mantissa().clone();
    let bits = man.bits();
    // x = man · 2^exp = f · 2^k with f = man / 2^(bits-1) ∈ [1, 2)
    let mut k = x.exponent() + bits as i64 - 1;
    let mut den_pow = bits - 1;
    // move f into [3/4, 3/2) so |t| ≤ 1/5
    if (&man << 1u8) >= (BigInt::from(3) << (bits - 1)) {
        den_pow = bits;
        k += 1;
    }
    let d = BigInt::from(1) << den_pow;
    let t = ((&man - &d) << w).div_floor(&(&man + &d));
    let (s_f, e_f) = atanh_fixed(&t, w);
    let mut total = s_f << 1u8;
    let mut err = BigInt::from(2 * e_f);
    if k != 0 {
        let third = (BigInt::from(1) << w).div_floor(&BigInt::from(3));
        let (s_2, e_2) = atanh_fixed(&third, w);
        total += (s_2 << 1u8) * k;
        err += BigInt::from(2 * e_2) * BigInt::from(k.unsigned_abs());
    }
    let lo = Dyadic::new(&total - &err, -(w as i64)).round(prec, Round::Down);
    let hi = Dyadic::new(&total + &err, -(w as i64)).round(prec, Round::Up);
    (lo, hi)
}

/// Fixed-point `atanh(t)` for `t = T / 2^w`, `|t| ≤ 1/3`. Returns the sum and
/// an error bound, both in units of `2^-w`.
fn atanh_fixed(t: &BigInt, w: u64) -> (BigInt, u64) {
    if t.is_zero() {
        return (BigInt::zero(), 1);
    }
    let t2 = (t * t) >> w;
    let mut p = t.clone();
    let mut sum = BigInt::zero();
    let mut n = 0u64;
    while !p.is_zero() {
        sum += &p / BigInt::from(2 * n + 1);
        // truncating division keeps the sign pattern and terminates at zero
        p = (&p * &t2) / (BigInt::from(1) << w);
        n += 1;
    }
    // per-term error ≤ 4.25 ulp plus a tail of ≤ 4 ulp (|t| ≤ 1/3)
    (sum, 5 * n + 8)
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lo.to_f64_dir(Round::Down), self.hi.to_f64_dir(Round::Up))
    }
}

/// Serializes as `{"lo": …, "hi": …}` with outward-rounded doubles.
impl serde::Serialize for Interval {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Interval", 2)?;
        st.serialize_field("lo", &self.lo_f64())?;
        st.serialize_field("hi", &self.hi_f64())?;
        st.end()
    }
}

impl Add for &Interval {
    type Output = Interval;
    fn add(self, o: &Interval) -> Interval {
        Interval::build(self.lo.add(&o.lo), self.hi.add(&o.hi), self.prec.max(o.prec))
    }
}

impl Sub for &Interval {
    type Output = Interval;
    fn sub(self, o: &Interval) -> Interval {
        Interval::build(self.lo.sub(&o.hi), self.hi.sub(&o.lo), self.prec.max(o.prec))
    }
}

impl Mul for &Interval {
    type Output = Interval;
    fn mul(self, o: &Interval) -> Interval {
        let p = [self.lo.mul(&o.lo), self.lo.mul(&o.hi), self.hi.mul(&o.lo), self.hi.mul(&o.hi)];
        let lo = p.iter().min().expect("nonempty").clone();
        let hi = p.iter().max().expect("nonempty").clone();
        Interval::build(lo, hi, self.prec.max(o.prec))
    }
}

impl Neg for &Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval { lo: self.hi.neg(), hi: self.lo.neg(), prec: self.prec }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for Interval {
            type Output = Interval;
            fn $m(self, o: Interval) -> Interval {
                (&self).$m(&o)
            }
        }
        impl $tr<&Interval> for Interval {
            type Output = Interval;
            fn $m(self, o: &Interval) -> Interval {
                (&self).$m(o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        -&self
    }
}
