use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use super::dyadic::{Dyadic, Round};
use super::interval::Interval;
use crate::error::Result;
use crate::exact::{IntPoly, Integer, Rational};

/// Rectangular complex interval `re + i·im`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CInterval {
    pub re: Interval,
    pub im: Interval,
}

impl CInterval {
    pub fn new(re: Interval, im: Interval) -> Self {
        CInterval { re, im }
    }

    pub fn real(re: Interval) -> Self {
        let p = re.prec();
        CInterval { re, im: Interval::zero(p) }
    }

    pub fn from_i64(n: i64, prec: u32) -> Self {
        CInterval::real(Interval::from_i64(n, prec))
    }

    pub fn from_int(n: &Integer, prec: u32) -> Self {
        CInterval::real(Interval::from_int(n, prec))
    }

    pub fn from_rational(q: &Rational, prec: u32) -> Self {
        CInterval::real(Interval::from_rational(q, prec))
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn conj(&self) -> CInterval {
        CInterval { re: self.re.clone(), im: -&self.im }
    }

    pub fn norm_sqr(&self) -> Interval {
        self.re.sqr() + self.im.sqr()
    }

    pub fn abs(&self) -> Interval {
        self.norm_sqr().sqrt().expect("norm is nonnegative")
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    pub fn scale(&self, k: &Interval) -> CInterval {
        CInterval { re: &self.re * k, im: &self.im * k }
    }

    pub fn scale_int(&self, n: &Integer) -> CInterval {
        CInterval { re: self.re.scale_int(n), im: self.im.scale_int(n) }
    }

    pub fn recip(&self) -> Result<CInterval> {
        let n = self.norm_sqr();
        Ok(CInterval { re: self.re.checked_div(&n)?, im: (-&self.im).checked_div(&n)? })
    }

    pub fn checked_div(&self, o: &CInterval) -> Result<CInterval> {
        // z / w = z · conj(w) / |w|²
        let n = o.norm_sqr();
        let num = self * &o.conj();
        Ok(CInterval { re: num.re.checked_div(&n)?, im: num.im.checked_div(&n)? })
    }

    pub fn powi(&self, k: i64) -> Result<CInterval> {
        if k < 0 {
            return self.recip()?.powi(-k);
        }
        let mut acc = CInterval::from_i64(1, self.prec());
        let mut base = self.clone();
        let mut e = k as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    pub fn overlaps(&self, o: &CInterval) -> bool {
        self.re.overlaps(&o.re) && self.im.overlaps(&o.im)
    }

    pub fn intersect(&self, o: &CInterval) -> Option<CInterval> {
        Some(CInterval { re: self.re.intersect(&o.re)?, im: self.im.intersect(&o.im)? })
    }

    pub fn contains_rational(&self, q: &Rational) -> bool {
        self.re.contains_rational(q) && self.im.contains_zero()
    }

    pub fn with_prec(&self, prec: u32) -> CInterval {
        CInterval { re: self.re.with_prec(prec), im: self.im.with_prec(prec) }
    }

    /// Smallest disc (up to rounding) centred at the box midpoint containing the box.
    pub fn to_ball(&self) -> ComplexBall {
        let prec = self.prec();
        let (rr, ri) = (self.re.rad(), self.im.rad());
        let r2 = rr.mul(&rr).add(&ri.mul(&ri));
        ComplexBall { re: self.re.mid(), im: self.im.mid(), rad: r2.sqrt(prec, Round::Up) }
    }
}

/// Evaluates an integer polynomial on a complex box by Horner's rule.
pub fn eval_poly(p: &IntPoly, z: &CInterval) -> CInterval {
    let prec = z.prec();
    let mut acc = CInterval::from_i64(0, prec);
    for c in p.coeffs().iter().rev() {
        acc = &(&acc * z) + &CInterval::from_int(c, prec);
    }
    acc
}

impl Add for &CInterval {
    type Output = CInterval;
    fn add(self, o: &CInterval) -> CInterval {
        CInterval { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl Sub for &CInterval {
    type Output = CInterval;
    fn sub(self, o: &CInterval) -> CInterval {
        CInterval { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl Mul for &CInterval {
    type Output = CInterval;
    fn mul(self, o: &CInterval) -> CInterval {
        CInterval { re: &(&self.re * &o.re) - &(&self.im * &o.im), im: &(&self.re * &o.im) + &(&self.im * &o.re) }
    }
}

impl Neg for &CInterval {
    type Output = CInterval;
    fn neg(self) -> CInterval {
        CInterval { re: -&self.re, im: -&self.im }
    }
}

/// Closed disc `{z : |z − (re + i·im)| ≤ rad}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexBall {
    pub re: Dyadic,
    pub im: Dyadic,
    pub rad: Dyadic,
}

impl ComplexBall {
    pub fn new(re: Dyadic, im: Dyadic, rad: Dyadic) -> Self {
        assert!(!rad.is_negative());
        ComplexBall { re, im, rad }
    }

    pub fn to_cinterval(&self, prec: u32) -> CInterval {
        CInterval {
            re: Interval::new(self.re.sub(&self.rad), self.re.add(&self.rad), prec),
            im: Interval::new(self.im.sub(&self.rad), self.im.add(&self.rad), prec),
        }
    }

    pub fn conj(&self) -> ComplexBall {
        ComplexBall { re: self.re.clone(), im: self.im.neg(), rad: self.rad.clone() }
    }

    pub fn neg(&self) -> ComplexBall {
        ComplexBall { re: self.re.neg(), im: self.im.neg(), rad: self.rad.clone() }
    }

    /// Exact test: the two closed discs share at least one point.
    pub fn intersects(&self, o: &ComplexBall) -> bool {
        let dx = self.re.sub(&o.re);
        let dy = self.im.sub(&o.im);
        let d2 = dx.mul(&dx).add(&dy.mul(&dy));
        let r = self.rad.add(&o.rad);
        d2 <= r.mul(&r)
    }

    /// Exact test: `o` lies inside `self`.
    pub fn contains_ball(&self, o: &ComplexBall) -> bool {
        if o.rad > self.rad {
            return false;
        }
        let dx = self.re.sub(&o.re);
        let dy = self.im.sub(&o.im);
        let d2 = dx.mul(&dx).add(&dy.mul(&dy));
        let r = self.rad.sub(&o.rad);
        d2 <= r.mul(&r)
    }

    /// Certified enclosure of `|z|` over the disc.
    pub fn modulus(&self, prec: u32) -> Interval {
        let c2 = self.re.mul(&self.re).add(&self.im.mul(&self.im));
        let c_lo = c2.sqrt(prec, Round::Down);
        let c_hi = c2.sqrt(prec, Round::Up);
        let lo = c_lo.sub(&self.rad);
        let lo = if lo.is_negative() { Dyadic::zero() } else { lo };
        Interval::new(lo, c_hi.add(&self.rad), prec)
    }

    /// The disc contains no real number with a nonzero imaginary part, i.e.
    /// it does not reach the real axis.
    pub fn misses_real_axis(&self) -> bool {
        self.im.abs() > self.rad
    }

    /// Decimal view with the radius widened to cover rounding of the centre.
    pub fn to_json(&self) -> BallJson {
        let re = self.re.to_f64();
        let im = self.im.to_f64();
        let slack = Dyadic::from_f64(re).sub(&self.re).abs().add(&Dyadic::from_f64(im).sub(&self.im).abs());
        BallJson { re, im, rad: self.rad.add(&slack).to_f64_dir(Round::Up) }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct BallJson {
    pub re: f64,
    pub im: f64,
    pub rad: f64,
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 96;

    fn c(re: f64, im: f64) -> CInterval {
        CInterval::new(Interval::point(Dyadic::from_f64(re), P), Interval::point(Dyadic::from_f64(im), P))
    }

    #[test]
    fn multiplication_and_division_agree() {
        let a = c(1.5, -2.0);
        let b = c(0.25, 3.0);
        let q = (&a * &b).checked_div(&b).unwrap();
        assert!(q.re.contains(&Dyadic::from_f64(1.5)));
        assert!(q.im.contains(&Dyadic::from_f64(-2.0)));
    }

    #[test]
    fn modulus_of_ball() {
        let b = ComplexBall::new(Dyadic::from_i64(3), Dyadic::from_i64(4), Dyadic::from_f64(0.5));
        let m = b.modulus(P);
        assert!(m.contains(&Dyadic::from_f64(4.5)) && m.contains(&Dyadic::from_f64(5.5)));
        assert!(m.width_f64() <= 1.0 + 1e-12);
    }

    #[test]
    fn disc_relations() {
        let a = ComplexBall::new(Dyadic::zero(), Dyadic::zero(), Dyadic::one());
        let b = ComplexBall::new(Dyadic::from_i64(2), Dyadic::zero(), Dyadic::one());
        let far = ComplexBall::new(Dyadic::from_i64(3), Dyadic::zero(), Dyadic::one());
        assert!(a.intersects(&b));
        assert!(!a.intersects(&far));
        let inner = ComplexBall::new(Dyadic::from_f64(0.5), Dyadic::zero(), Dyadic::from_f64(0.25));
        assert!(a.contains_ball(&inner));
        assert!(!inner.contains_ball(&a));
    }

    #[test]
    fn horner_on_boxes() {
        // X^2 + 1 at i is zero
        let p = IntPoly::from_i64s(&[1, 0, 1]);
        let v = eval_poly(&p, &c(0.0, 1.0));
        assert!(v.contains_zero());
    }

    #[test]
    fn json_radius_covers_centre_rounding() {
        let third = Dyadic::one().div(&Dyadic::from_i64(3), 200, Round::Down);
        let b = ComplexBall::new(third, Dyadic::zero(), Dyadic::zero());
        let j = b.to_json();
        assert!(j.rad > 0.0);
        assert!((j.re - 1.0 / 3.0).abs() <= j.rad);
    }
}
