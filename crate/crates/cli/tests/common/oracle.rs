//! Fixed-point complex arithmetic on big integers, used to rebuild twisted
//! forms numerically: roots by Durand-Kerner in f64, Newton polish at full
//! precision, product of linear factors, then rounding.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug)]
struct Fx {
    re: BigInt,
    im: BigInt,
}

struct Ctx {
    bits: u32,
}

impl Ctx {
    fn zero(&self) -> Fx {
        Fx { re: BigInt::zero(), im: BigInt::zero() }
    }

    fn int(&self, n: &BigInt) -> Fx {
        Fx { re: n << self.bits, im: BigInt::zero() }
    }

    fn approx(&self, re: f64, im: f64) -> Fx {
        let s = 2f64.powi(52);
        let conv = |v: f64| {
            let m = BigInt::from((v * s).round() as i64);
            (m << self.bits) >> 52
        };
        Fx { re: conv(re), im: conv(im) }
    }

    fn add(&self, a: &Fx, b: &Fx) -> Fx {
        Fx { re: &a.re + &b.re, im: &a.im + &b.im }
    }

    fn sub(&self, a: &Fx, b: &Fx) -> Fx {
        Fx { re: &a.re - &b.re, im: &a.im - &b.im }
    }

    fn mul(&self, a: &Fx, b: &Fx) -> Fx {
        Fx { re: (&a.re * &b.re - &a.im * &b.im) >> self.bits, im: (&a.re * &b.im + &a.im * &b.re) >> self.bits }
    }

    fn div(&self, a: &Fx, b: &Fx) -> Fx {
        let den = &b.re * &b.re + &b.im * &b.im;
        Fx {
            re: ((&a.re * &b.re + &a.im * &b.im) << self.bits) / &den,
            im: ((&a.im * &b.re - &a.re * &b.im) << self.bits) / &den,
        }
    }

    fn scale_int(&self, a: &Fx, n: &BigInt) -> Fx {
        Fx { re: &a.re * n, im: &a.im * n }
    }

    fn eval(&self, p: &[BigInt], z: &Fx) -> Fx {
        let mut acc = self.zero();
        for c in p.iter().rev() {
            acc = self.add(&self.mul(&acc, z), &self.int(c));
        }
        acc
    }
}

fn roots_f64(p: &[f64]) -> Vec<(f64, f64)> {
    let d = p.len() - 1;
    let lead = p[d];
    let monic: Vec<f64> = p.iter().map(|c| c / lead).collect();
    let eval = |z: (f64, f64)| {
        let mut acc = (0.0, 0.0);
        for c in monic.iter().rev() {
            acc = (acc.0 * z.0 - acc.1 * z.1 + c, acc.0 * z.1 + acc.1 * z.0);
        }
        acc
    };
    let mut z: Vec<(f64, f64)> = (0..d)
        .map(|k| {
            let t = 0.4 + 2.0 * std::f64::consts::PI * k as f64 / d as f64;
            let r = 1.0 + monic.iter().map(|c| c.abs()).fold(0.0, f64::max).min(10.0) * 0.5;
            (r * t.cos(), r * t.sin())
        })
        .collect();
    for _ in 0..500 {
        for i in 0..d {
            let mut den = (1.0, 0.0);
            for j in 0..d {
                if i != j {
                    let diff = (z[i].0 - z[j].0, z[i].1 - z[j].1);
                    den = (den.0 * diff.0 - den.1 * diff.1, den.0 * diff.1 + den.1 * diff.0);
                }
            }
            let num = eval(z[i]);
            let n2 = den.0 * den.0 + den.1 * den.1;
            let q = ((num.0 * den.0 + num.1 * den.1) / n2, (num.1 * den.0 - num.0 * den.1) / n2);
            z[i] = (z[i].0 - q.0, z[i].1 - q.1);
        }
    }
    z
}

/// `a₀ ∏ (X − γ_i)` with `γ_i = α(θ_i) υ(θ_i)^a`, coefficients from `X^d`
/// down, rounded to integers. `None` when a coefficient is not within
/// `2^-64` of an integer.
pub fn twisted_coeffs(
    g: &[BigInt],
    alpha: (&[BigInt], &BigInt),
    upsilon: (&[BigInt], &BigInt),
    a: i64,
    a0: &BigInt,
    bits: u32,
) -> Option<Vec<BigInt>> {
    let ctx = Ctx { bits: bits + 64 };
    let gf: Vec<f64> = g.iter().map(|c| c.to_f64().expect("small")).collect();
    let deriv: Vec<BigInt> = g.iter().enumerate().skip(1).map(|(k, c)| c * BigInt::from(k)).collect();
    let mut gammas = Vec::new();
    for (re, im) in roots_f64(&gf) {
        let mut z = ctx.approx(re, im);
        for _ in 0..12 {
            let step = ctx.div(&ctx.eval(g, &z), &ctx.eval(&deriv, &z));
            z = ctx.sub(&z, &step);
        }
        let elem = |(coords, den): (&[BigInt], &BigInt)| {
            let v = ctx.eval(coords, &z);
            Fx { re: &v.re / den, im: &v.im / den }
        };
        let al = elem(alpha);
        let mut u = elem(upsilon);
        if a < 0 {
            u = ctx.div(&ctx.int(&BigInt::one()), &u);
        }
        let mut gamma = al;
        for _ in 0..a.unsigned_abs() {
            gamma = ctx.mul(&gamma, &u);
        }
        gammas.push(gamma);
    }
    // coefficients of prod (X - gamma), index k = coefficient of X^(d-k)
    let mut poly = vec![ctx.int(&BigInt::one())];
    for gm in &gammas {
        let mut next = vec![ctx.zero(); poly.len() + 1];
        for (k, c) in poly.iter().enumerate() {
            next[k] = ctx.add(&next[k], c);
            next[k + 1] = ctx.sub(&next[k + 1], &ctx.mul(c, gm));
        }
        poly = next;
    }
    let half = BigInt::one() << (ctx.bits - 1);
    let tol = BigInt::one() << (ctx.bits - 64);
    poly.iter()
        .map(|c| {
            let c = ctx.scale_int(c, a0);
            let n = (&c.re + &half) >> ctx.bits;
            let err = &c.re - (&n << ctx.bits);
            (err.abs() < tol && c.im.abs() < tol).then_some(n)
        })
        .collect()
}
