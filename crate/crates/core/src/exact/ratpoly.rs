use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_traits::{One, Zero};

use super::{denominator_lcm, IntPoly, Integer, Rational};

/// Polynomial with rational coefficients, constant term first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct RatPoly {
    coeffs: Vec<Rational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn monic(&self) -> RatPoly {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.leading();
        RatPoly::new(self.coeffs.iter().map(|c| c / &lc).collect())
    }

    pub fn scale(&self, k: &Rational) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn derivative(&self) -> RatPoly {
        RatPoly::new(
            self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * Rational::from_integer(Integer::from(k))).collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &RatPoly) -> (RatPoly, RatPoly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lc = divisor.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (RatPoly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = &rem[k] / &lc;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k - dd + j] -= &c * dc;
            }
            quot[k - dd] = c;
        }
        rem.truncate(dd);
        (RatPoly::new(quot), RatPoly::new(rem))
    }

    /// Monic gcd (zero only when both inputs are zero).
    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self / gcd(self, self')`, monic.
    pub fn squarefree_part(&self) -> RatPoly {
        let g = self.gcd(&self.derivative());
        if g.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        self.div_rem(&g).0.monic()
    }

    /// Yun's decomposition `self = lc · ∏ a_i^i` with monic squarefree,
    /// pairwise coprime `a_i`; returns the nonconstant `(a_i, i)`.
    pub fn squarefree_decomposition(&self) -> Vec<(RatPoly, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let a = self.monic();
        let da = a.derivative();
        let b = a.gcd(&da);
        let mut c = a.div_rem(&b).0;
        let mut d = &da.div_rem(&b).0 - &c.derivative();
        let mut i = 1;
        while c.degree().unwrap_or(0) > 0 {
            let ai = c.gcd(&d);
            c = c.div_rem(&ai).0;
            d = &d.div_rem(&ai).0 - &c.derivative();
            if ai.degree().unwrap_or(0) > 0 {
                out.push((ai, i));
            }
            i += 1;
        }
        out
    }

    /// Returns the polynomial if every coefficient is an integer.
    pub fn to_int_poly(&self) -> Option<IntPoly> {
        self.coeffs.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect::<Option<Vec<_>>>().map(IntPoly::new)
    }

    /// The primitive integer polynomial with positive leading coefficient that
    /// is a rational multiple of `self`.
    pub fn primitive_integer(&self) -> IntPoly {
        let l = denominator_lcm(&self.coeffs);
        let scaled: Vec<Integer> =
            self.coeffs.iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect();
        IntPoly::new(scaled).primitive_part()
    }
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "RatPoly[{}]", parts.join(", "))
    }
}

impl Add for &RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;
    fn sub(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rp(c: &[i64]) -> RatPoly {
        IntPoly::from_i64s(c).to_rat()
    }

    #[test]
    fn gcd_of_coprime_is_one() {
        let g = rp(&[-2, 0, 0, 1]).gcd(&rp(&[0, 0, 3]));
        assert_eq!(g, rp(&[1]));
    }

    #[test]
    fn gcd_extracts_common_factor() {
        let a = &rp(&[1, 1]) * &rp(&[-3, 0, 1]);
        let b = &rp(&[1, 1]) * &rp(&[5, 2]);
        assert_eq!(a.gcd(&b), rp(&[1, 1]));
    }

    #[test]
    fn squarefree_part_of_square() {
        let sq = &rp(&[-1, 1]) * &rp(&[-1, 1]);
        let f = &sq * &rp(&[2, 0, 1]);
        assert_eq!(f.squarefree_part(), &rp(&[-1, 1]) * &rp(&[2, 0, 1]));
    }

    #[test]
    fn yun_decomposition() {
        // (X-1)^3 (X^2+1) (X+2)
        let cube = &(&rp(&[-1, 1]) * &rp(&[-1, 1])) * &rp(&[-1, 1]);
        let f = &(&cube * &rp(&[1, 0, 1])) * &rp(&[2, 1]);
        let dec = f.scale(&Rational::from_integer(3.into())).squarefree_decomposition();
        assert_eq!(dec, vec![(rp(&[2, 1, 2, 1]), 1), (rp(&[-1, 1]), 3)]);
    }

    #[test]
    fn primitive_integer_clears_denominators() {
        let f = RatPoly::new(vec![Rational::new((-1).into(), 2.into()), Rational::from_integer(1.into())]);
        assert_eq!(f.primitive_integer(), IntPoly::from_i64s(&[-1, 2]));
    }

    #[test]
    fn div_rem_reconstructs() {
        let a = rp(&[3, -1, 4, 1, 5]);
        let b = rp(&[2, 7, 1]);
        let (q, r) = a.div_rem(&b);
        assert!(r.degree().unwrap_or(0) < 2);
        assert_eq!(&(&q * &b) + &r, a);
    }
}
