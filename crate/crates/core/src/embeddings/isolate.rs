//! Simultaneous root approximation (Aberth-Ehrlich) followed by certified
//! inclusion discs built from Weierstrass corrections.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::ball::{eval_poly, CInterval, ComplexBall, Dyadic, Interval, Round};
use crate::exact::IntPoly;

/// Complex approximation with dyadic parts, rounded to a working precision.
#[derive(Clone, Debug)]
pub(crate) struct Approx {
    pub re: Dyadic,
    pub im: Dyadic,
}

impl Approx {
    pub fn new(re: Dyadic, im: Dyadic) -> Self {
        Approx { re, im }
    }

    fn from_c64(z: Complex64) -> Self {
        Approx { re: Dyadic::from_f64(z.re), im: Dyadic::from_f64(z.im) }
    }

    fn zero() -> Self {
        Approx { re: Dyadic::zero(), im: Dyadic::zero() }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn round(&self, p: u32) -> Approx {
        Approx { re: self.re.round(p, Round::Down), im: self.im.round(p, Round::Down) }
    }

    fn add(&self, o: &Approx) -> Approx {
        Approx { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    fn sub(&self, o: &Approx) -> Approx {
        Approx { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }

    fn mul(&self, o: &Approx, p: u32) -> Approx {
        let re = self.re.mul(&o.re).sub(&self.im.mul(&o.im));
        let im = self.re.mul(&o.im).add(&self.im.mul(&o.re));
        Approx { re, im }.round(p)
    }

    fn div(&self, o: &Approx, p: u32) -> Option<Approx> {
        let n = o.re.mul(&o.re).add(&o.im.mul(&o.im));
        if n.is_zero() {
            return None;
        }
        let re = self.re.mul(&o.re).add(&self.im.mul(&o.im));
        let im = self.im.mul(&o.re).sub(&self.re.mul(&o.im));
        Some(Approx { re: re.div(&n, p, Round::Down), im: im.div(&n, p, Round::Down) })
    }

    /// Upper estimate of `log2 |z|`, `None` for zero.
    fn log2_mag(&self) -> Option<i64> {
        let a = self.re.abs().log2_floor();
        let b = self.im.abs().log2_floor();
        match (a, b) {
            (None, None) => None,
            (x, y) => Some(x.unwrap_or(i64::MIN).max(y.unwrap_or(i64::MIN)) + 1),
        }
    }

    pub fn to_point(&self, prec: u32) -> CInterval {
        CInterval::new(Interval::point(self.re.clone(), prec), Interval::point(self.im.clone(), prec))
    }
}

/// Upper bound on `log2` of the root moduli (Fujiwara), from coefficient bit sizes.
fn log2_root_bound(p: &IntPoly) -> f64 {
    let n = p.degree().unwrap_or(0);
    let lc = log2_abs(&p.leading());
    let mut best = f64::NEG_INFINITY;
    for k in 1..=n {
        let c = p.coeff(n - k);
        if c.is_zero() {
            continue;
        }
        let mut v = (log2_abs(&c) - lc) / k as f64;
        if k == n {
            v -= 1.0 / n as f64;
        }
        best = best.max(v);
    }
    if best.is_finite() {
        best + 1.0
    } else {
        0.0
    }
}

fn log2_abs(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        n.abs().to_f64().unwrap_or(f64::MAX).log2()
    } else {
        let shifted: BigInt = n.abs() >> (bits - 60);
        shifted.to_f64().unwrap_or(1.0).log2() + (bits - 60) as f64
    }
}

fn initial_points(n: usize, log2_radius: f64) -> Vec<Complex64> {
    let r = log2_radius.clamp(-1000.0, 1000.0).exp2();
    (0..n)
        .map(|k| {
            let t = std::f64::consts::TAU * k as f64 / n as f64 + 0.4;
            Complex64::from_polar(r, t)
        })
        .collect()
}

/// Double precision Aberth iteration; used only for starting values.
fn aberth_f64(p: &IntPoly) -> Option<Vec<Complex64>> {
    let coeffs: Vec<f64> = p.coeffs().iter().map(|c| c.to_f64().unwrap_or(f64::INFINITY)).collect();
    if coeffs.iter().any(|c| !c.is_finite()) {
        return None;
    }
    let n = coeffs.len() - 1;
    let lb = log2_root_bound(p);
    if !(-900.0..900.0).contains(&lb) {
        return None;
    }
    let mut z = initial_points(n, lb - 0.5);
    let eval = |x: Complex64| {
        let mut v = Complex64::zero();
        let mut dv = Complex64::zero();
        for c in coeffs.iter().rev() {
            dv = dv * x + v;
            v = v * x + c;
        }
        (v, dv)
    };
    for _ in 0..500 {
        let mut worst = 0.0f64;
        for i in 0..n {
            let (v, dv) = eval(z[i]);
            if v == Complex64::zero() {
                continue;
            }
            let ratio = v / dv;
            let s: Complex64 = (0..n).filter(|&j| j != i).map(|j| 1.0 / (z[i] - z[j])).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if !w.re.is_finite() || !w.im.is_finite() {
                continue;
            }
            z[i] -= w;
            worst = worst.max(w.norm() / z[i].norm().max(1e-300));
        }
        if worst < 1e-15 {
            break;
        }
    }
    z.iter().all(|c| c.re.is_finite() && c.im.is_finite()).then_some(z)
}

/// Starting approximations for all roots of `p`.
pub(crate) fn starting_points(p: &IntPoly) -> Vec<Approx> {
    let n = p.degree().unwrap_or(0);
    match aberth_f64(p) {
        Some(z) => z.into_iter().map(Approx::from_c64).collect(),
        None => initial_points(n, log2_root_bound(p) - 0.5).into_iter().map(Approx::from_c64).collect(),
    }
}

fn horner(p: &IntPoly, z: &Approx, prec: u32) -> (Approx, Approx) {
    let mut v = Approx::zero();
    let mut dv = Approx::zero();
    for c in p.coeffs().iter().rev() {
        dv = dv.mul(z, prec).add(&v);
        v = v.mul(z, prec);
        v.re = v.re.add(&Dyadic::from_int(c));
    }
    (v.round(prec), dv.round(prec))
}

/// High precision Aberth iteration in place.
pub(crate) fn aberth_refine(p: &IntPoly, z: &mut [Approx], prec: u32, max_iter: usize) {
    let n = z.len();
    let wp = prec + 16;
    let target = -(prec as i64) + 4;
    for it in 0..max_iter {
        let mut converged = true;
        for i in 0..n {
            let (v, dv) = horner(p, &z[i], wp);
            if v.is_zero() {
                continue;
            }
            let Some(ratio) = v.div(&dv, wp) else {
                // stationary point: nudge
                let eps = Dyadic::one().mul_pow2(-(prec as i64) / 2 - it as i64);
                z[i].re = z[i].re.add(&eps);
                converged = false;
                continue;
            };
            let mut s = Approx::zero();
            let one = Approx::new(Dyadic::one(), Dyadic::zero());
            let mut clash = false;
            for j in 0..n {
                if j == i {
                    continue;
                }
                match one.div(&z[i].sub(&z[j]), wp) {
                    Some(q) => s = s.add(&q),
                    None => clash = true,
                }
            }
            if clash {
                let eps = Dyadic::one().mul_pow2(-(prec as i64) / 2 - it as i64);
                z[i].im = z[i].im.add(&eps);
                converged = false;
                continue;
            }
            let denom = one.sub(&ratio.mul(&s, wp));
            let w = ratio.div(&denom, wp).unwrap_or(ratio);
            z[i] = z[i].sub(&w).round(wp);
            let scale = z[i].log2_mag().unwrap_or(0).max(0);
            if w.log2_mag().is_some_and(|m| m > target + scale) {
                converged = false;
            }
        }
        if converged {
            break;
        }
    }
}

/// Inclusion discs `|z - z_i| ≤ n |W_i|`. When they are pairwise disjoint each
/// holds exactly one root; otherwise `None`.
pub(crate) fn certify(p: &IntPoly, z: &[Approx], prec: u32) -> Option<Vec<ComplexBall>> {
    let n = z.len();
    let ep = prec + 32;
    let lc = CInterval::from_int(&p.leading(), ep);
    let pts: Vec<CInterval> = z.iter().map(|a| a.to_point(ep)).collect();
    let mut balls = Vec::with_capacity(n);
    for i in 0..n {
        let v = eval_poly(p, &pts[i]);
        let mut den = lc.clone();
        for j in 0..n {
            if j != i {
                den = &den * &(&pts[i] - &pts[j]);
            }
        }
        let w = v.checked_div(&den).ok()?;
        let r = w.abs().hi().mul_int(&BigInt::from(n)).round(prec, Round::Up);
        balls.push(ComplexBall::new(z[i].re.clone(), z[i].im.clone(), r));
    }
    for i in 0..n {
        for j in i + 1..n {
            if balls[i].intersects(&balls[j]) {
                return None;
            }
        }
    }
    Some(balls)
}

/// One attempt: refine from `z` at `prec` and certify.
pub(crate) fn isolate_at(p: &IntPoly, z: &mut [Approx], prec: u32) -> Option<Vec<ComplexBall>> {
    let d = z.len();
    aberth_refine(p, z, prec, 60 + 8 * d);
    certify(p, z, prec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_cube_roots_of_two() {
        let p = IntPoly::from_i64s(&[-2, 0, 0, 1]);
        let mut z = starting_points(&p);
        let balls = isolate_at(&p, &mut z, 128).expect("certified");
        assert_eq!(balls.len(), 3);
        for b in &balls {
            let m = b.modulus(128);
            assert!((m.to_f64() - 2f64.powf(1.0 / 3.0)).abs() < 1e-12);
            assert!(b.rad.to_f64() < 1e-30);
        }
    }

    #[test]
    fn wilkinson_like_cluster() {
        // (X-1)(X-2)...(X-8)
        let mut p = IntPoly::one();
        for k in 1..=8 {
            p = &p * &IntPoly::from_i64s(&[-k, 1]);
        }
        let mut z = starting_points(&p);
        let balls = isolate_at(&p, &mut z, 128).expect("certified");
        let mut re: Vec<f64> = balls.iter().map(|b| b.re.to_f64()).collect();
        re.sort_by(f64::total_cmp);
        for (k, r) in re.iter().enumerate() {
            assert!((r - (k + 1) as f64).abs() < 1e-20);
        }
    }

    #[test]
    fn huge_coefficients_skip_double_phase() {
        // (X - 2^1100)(X + 3)
        let big = BigInt::from(1) << 1100u32;
        let p = IntPoly::new(vec![-&big * 3, BigInt::from(3) - &big, BigInt::from(1)]);
        let mut z = starting_points(&p);
        let mut prec = 256;
        let balls = loop {
            if let Some(b) = isolate_at(&p, &mut z, prec) {
                break b;
            }
            prec *= 2;
            assert!(prec <= 8192);
        };
        assert!(balls.iter().any(|b| b.to_cinterval(prec).re.contains(&Dyadic::from_i64(-3))));
    }
}
