use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exact::{Integer, Rational};

/// Rounding direction for inexact dyadic operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Round {
    Down,
    Up,
}

/// `man · 2^exp`, kept with an odd mantissa (or `0 · 2^0`).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Dyadic {
    man: BigInt,
    exp: i64,
}

/// floor or ceil of `n / 2^k`.
fn shift_round(n: &BigInt, k: u64, dir: Round) -> BigInt {
    if k == 0 {
        return n.clone();
    }
    let mag = n.magnitude();
    let q = mag >> k;
    let exact = (&q << k) == *mag;
    let neg = n.sign() == Sign::Minus;
    // magnitude rounding direction: toward zero is floor for positives
    let away = !exact
        && match (dir, neg) {
            (Round::Down, false) | (Round::Up, true) => false,
            (Round::Down, true) | (Round::Up, false) => true,
        };
    let q = if away { q + 1u32 } else { q };
    BigInt::from_biguint(if neg { Sign::Minus } else { Sign::Plus }, q)
}

fn div_round(n: &BigInt, d: &BigInt, dir: Round) -> BigInt {
    match dir {
        Round::Down => n.div_floor(d),
        Round::Up => n.div_ceil(d),
    }
}

impl Dyadic {
    pub fn new(man: BigInt, exp: i64) -> Self {
        if man.is_zero() {
            return Dyadic::zero();
        }
        let tz = man.trailing_zeros().unwrap_or(0);
        if tz == 0 {
            Dyadic { man, exp }
        } else {
            Dyadic { man: man >> tz, exp: exp + tz as i64 }
        }
    }

    pub fn zero() -> Self {
        Dyadic { man: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Self {
        Dyadic { man: BigInt::one(), exp: 0 }
    }

    pub fn from_int(n: &Integer) -> Self {
        Dyadic::new(n.clone(), 0)
    }

    pub fn from_i64(n: i64) -> Self {
        Dyadic::new(BigInt::from(n), 0)
    }

    /// Exact conversion; panics on non-finite input.
    pub fn from_f64(x: f64) -> Self {
        assert!(x.is_finite(), "non-finite f64 {x}");
        if x == 0.0 {
            return Dyadic::zero();
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1i64 } else { 1 };
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if raw_exp == 0 { (frac, -1074) } else { (frac | (1u64 << 52), raw_exp - 1075) };
        Dyadic::new(BigInt::from(m) * sign, e)
    }

    /// Nearest-ish rational rounded in the given direction to `prec` bits.
    pub fn from_rational(q: &Rational, prec: u32, dir: Round) -> Self {
        Dyadic::from_int(q.numer()).div(&Dyadic::from_int(q.denom()), prec, dir)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.man
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.man.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.man.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.man.is_positive()
    }

    /// ⌊log2 |x|⌋ for nonzero `x`.
    pub fn log2_floor(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.exp + self.man.bits() as i64 - 1)
    }

    pub fn neg(&self) -> Dyadic {
        Dyadic { man: -&self.man, exp: self.exp }
    }

    pub fn abs(&self) -> Dyadic {
        Dyadic { man: self.man.abs(), exp: self.exp }
    }

    pub fn mul_pow2(&self, k: i64) -> Dyadic {
        if self.is_zero() {
            return self.clone();
        }
        Dyadic { man: self.man.clone(), exp: self.exp + k }
    }

    pub fn add(&self, o: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(o.exp);
        let a = &self.man << (self.exp - e) as u64;
        let b = &o.man << (o.exp - e) as u64;
        Dyadic::new(a + b, e)
    }

    pub fn sub(&self, o: &Dyadic) -> Dyadic {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Dyadic) -> Dyadic {
        if self.is_zero() || o.is_zero() {
            return Dyadic::zero();
        }
        // product of odd mantissas is odd
        Dyadic { man: &self.man * &o.man, exp: self.exp + o.exp }
    }

    pub fn mul_int(&self, n: &Integer) -> Dyadic {
        Dyadic::new(&self.man * n, self.exp)
    }

    /// Rounds to at most `prec` significant bits.
    pub fn round(&self, prec: u32, dir: Round) -> Dyadic {
        let bits = self.man.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let k = bits - prec as u64;
        Dyadic::new(shift_round(&self.man, k, dir), self.exp + k as i64)
    }

    /// `self / o` rounded to `prec` bits; panics on a zero divisor.
    pub fn div(&self, o: &Dyadic, prec: u32, dir: Round) -> Dyadic {
        assert!(!o.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let s = (prec as i64 + 2 + o.man.bits() as i64 - self.man.bits() as i64).max(0);
        let num = &self.man << s as u64;
        let q = div_round(&num, &o.man, dir);
        Dyadic::new(q, self.exp - o.exp - s).round(prec, dir)
    }

    /// Real `n`-th root of a nonnegative value, rounded to `prec` bits.
    pub fn nth_root(&self, n: u32, prec: u32, dir: Round) -> Dyadic {
        assert!(n >= 1);
        assert!(!self.is_negative(), "root of a negative dyadic");
        if self.is_zero() || n == 1 {
            return self.round(prec, dir);
        }
        let l2 = self.exp + self.man.bits() as i64;
        let s = prec as i64 + 2 - l2.div_euclid(n as i64);
        let sh = self.exp + n as i64 * s;
        let big_n: BigUint = if sh >= 0 {
            self.man.magnitude() << sh as u64
        } else {
            shift_round(&self.man, (-sh) as u64, dir).magnitude().clone()
        };
        let mut r = big_n.nth_root(n);
        if dir == Round::Up && r.pow(n) < big_n {
            r += 1u32;
        }
        Dyadic::new(BigInt::from(r), -s).round(prec, dir)
    }

    pub fn sqrt(&self, prec: u32, dir: Round) -> Dyadic {
        self.nth_root(2, prec, dir)
    }

    pub fn floor(&self) -> Integer {
        if self.exp >= 0 {
            &self.man << self.exp as u64
        } else {
            shift_round(&self.man, (-self.exp) as u64, Round::Down)
        }
    }

    pub fn ceil(&self) -> Integer {
        if self.exp >= 0 {
            &self.man << self.exp as u64
        } else {
            shift_round(&self.man, (-self.exp) as u64, Round::Up)
        }
    }

    pub fn to_rational(&self) -> Rational {
        if self.exp >= 0 {
            Rational::from_integer(&self.man << self.exp as u64)
        } else {
            Rational::new(self.man.clone(), BigInt::one() << (-self.exp) as u64)
        }
    }

    /// Conversion to `f64` rounded in the requested direction.
    pub fn to_f64_dir(&self, dir: Round) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let r = self.round(53, dir);
        let m = r.man.to_f64().expect("53-bit mantissa fits");
        let e = r.exp;
        let v = scale_pow2(m, e);
        if v == 0.0 {
            // underflow: step away from zero when rounding outward
            return match (dir, m > 0.0) {
                (Round::Up, true) => f64::from_bits(1),
                (Round::Down, false) => -f64::from_bits(1),
                _ => {
                    if m > 0.0 {
                        0.0
                    } else {
                        -0.0
                    }
                }
            };
        }
        if v.is_infinite() {
            return match (dir, v > 0.0) {
                (Round::Down, true) => f64::MAX,
                (Round::Up, false) => f64::MIN,
                _ => v,
            };
        }
        v
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let r = self.round(60, Round::Down);
        scale_pow2(r.man.to_f64().unwrap_or(f64::NAN), r.exp)
    }

    pub fn lesser<'a>(&'a self, o: &'a Dyadic) -> &'a Dyadic {
        if self <= o {
            self
        } else {
            o
        }
    }

    pub fn greater<'a>(&'a self, o: &'a Dyadic) -> &'a Dyadic {
        if self >= o {
            self
        } else {
            o
        }
    }
}

fn scale_pow2(m: f64, e: i64) -> f64 {
    let mut v = m;
    let mut e = e;
    while e > 1000 {
        v *= 2f64.powi(1000);
        e -= 1000;
        if v.is_infinite() {
            return v;
        }
    }
    while e < -1000 {
        v *= 2f64.powi(-1000);
        e += 1000;
        if v == 0.0 {
            return v;
        }
    }
    v * 2f64.powi(e as i32)
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (sa, sb) = (self.man.sign(), other.man.sign());
        if sa != sb {
            let rank = |s: Sign| match s {
                Sign::Minus => 0,
                Sign::NoSign => 1,
                Sign::Plus => 2,
            };
            return rank(sa).cmp(&rank(sb));
        }
        if sa == Sign::NoSign {
            return Ordering::Equal;
        }
        // same sign, compare magnitudes by leading bit position first
        let la = self.exp + self.man.bits() as i64;
        let lb = other.exp + other.man.bits() as i64;
        let mag = if la != lb {
            la.cmp(&lb)
        } else {
            let e = self.exp.min(other.exp);
            let a = self.man.magnitude() << (self.exp - e) as u64;
            let b = other.man.magnitude() << (other.exp - e) as u64;
            a.cmp(&b)
        };
        if sa == Sign::Minus {
            mag.reverse()
        } else {
            mag
        }
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.to_f64())
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(x: f64) -> Dyadic {
        Dyadic::from_f64(x)
    }

    #[test]
    fn f64_round_trip() {
        for x in [0.0, 1.0, -3.5, 1e-300, 6.02e23, -0.1] {
            assert_eq!(d(x).to_f64_dir(Round::Down), x);
            assert_eq!(d(x).to_f64_dir(Round::Up), x);
        }
    }

    #[test]
    fn directed_rounding_brackets() {
        let third_lo = Dyadic::one().div(&Dyadic::from_i64(3), 64, Round::Down);
        let third_hi = Dyadic::one().div(&Dyadic::from_i64(3), 64, Round::Up);
        assert!(third_lo < third_hi);
        assert!(third_lo.mul(&Dyadic::from_i64(3)) < Dyadic::one());
        assert!(third_hi.mul(&Dyadic::from_i64(3)) > Dyadic::one());
        let neg = Dyadic::from_i64(-1).div(&Dyadic::from_i64(3), 64, Round::Down);
        assert_eq!(neg, third_hi.neg());
    }

    #[test]
    fn shift_rounding_of_negatives() {
        let n = BigInt::from(-5);
        assert_eq!(shift_round(&n, 1, Round::Down), BigInt::from(-3));
        assert_eq!(shift_round(&n, 1, Round::Up), BigInt::from(-2));
        assert_eq!(shift_round(&BigInt::from(5), 1, Round::Down), BigInt::from(2));
        assert_eq!(shift_round(&BigInt::from(-4), 1, Round::Down), BigInt::from(-2));
    }

    #[test]
    fn roots_bracket_the_truth() {
        let two = Dyadic::from_i64(2);
        let lo = two.sqrt(100, Round::Down);
        let hi = two.sqrt(100, Round::Up);
        assert!(lo.mul(&lo) <= two && hi.mul(&hi) >= two);
        assert!(hi.sub(&lo) <= Dyadic::one().mul_pow2(-98));
        let c_lo = two.nth_root(3, 80, Round::Down);
        let c_hi = two.nth_root(3, 80, Round::Up);
        assert!(c_lo.mul(&c_lo).mul(&c_lo) <= two);
        assert!(c_hi.mul(&c_hi).mul(&c_hi) >= two);
        assert!((c_lo.to_f64() - 2f64.cbrt()).abs() < 1e-15);
        // tiny argument
        let tiny = Dyadic::one().mul_pow2(-301);
        let r = tiny.sqrt(60, Round::Down).to_f64();
        assert!((r / 2f64.powf(-150.5) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn ordering() {
        let mut v = [d(3.0), d(-1.5), d(0.0), d(1e-10), d(-1e10)];
        v.sort();
        let f: Vec<f64> = v.iter().map(Dyadic::to_f64).collect();
        assert_eq!(f, vec![-1e10, -1.5, 0.0, 1e-10, 3.0]);
    }

    #[test]
    fn floor_and_ceil() {
        assert_eq!(d(-2.5).floor(), BigInt::from(-3));
        assert_eq!(d(-2.5).ceil(), BigInt::from(-2));
        assert_eq!(d(7.0).floor(), BigInt::from(7));
    }
}
