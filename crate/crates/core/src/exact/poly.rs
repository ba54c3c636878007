use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Integer, RatPoly, Rational};

/// Polynomial with integer coefficients, constant term first.
///
/// The coefficient vector never has trailing zeros, so the zero polynomial is
/// the empty vector and `degree` is well defined for everything else.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<Integer>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<Integer>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Integer::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Integer::one())
    }

    pub fn constant(c: Integer) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `X`.
    pub fn x() -> Self {
        Self::from_i64s(&[0, 1])
    }

    /// `X - r`.
    pub fn linear_root(r: Integer) -> Self {
        Self::new(vec![-r, Integer::one()])
    }

    pub fn coeffs(&self) -> &[Integer] {
        &self.coeffs
    }

    /// Coefficient of `X^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> Integer {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Integer {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    /// Naive height: the largest absolute value of a coefficient.
    pub fn height(&self) -> Integer {
        self.coeffs.iter().map(Signed::abs).max().unwrap_or_default()
    }

    /// gcd of the coefficients, nonnegative.
    pub fn content(&self) -> Integer {
        self.coeffs.iter().fold(Integer::zero(), |g, c| g.gcd(c))
    }

    /// Divides by the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> IntPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.leading().is_negative() {
            c = -c;
        }
        IntPoly::new(self.coeffs.iter().map(|a| a / &c).collect())
    }

    pub fn eval(&self, x: &Integer) -> Integer {
        self.coeffs.iter().rev().fold(Integer::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rational(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + Rational::from_integer(c.clone()))
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * Integer::from(k)).collect())
    }

    /// `self(inner(X))`.
    pub fn compose(&self, inner: &IntPoly) -> IntPoly {
        self.coeffs.iter().rev().fold(IntPoly::zero(), |acc, c| &(&acc * inner) + &IntPoly::constant(c.clone()))
    }

    /// `self(-X)`.
    pub fn negate_variable(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().enumerate().map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() }).collect())
    }

    /// `self(X^h)`.
    pub fn substitute_power(&self, h: usize) -> IntPoly {
        assert!(h >= 1);
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![Integer::zero(); (self.coeffs.len() - 1) * h + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            out[k * h] = c.clone();
        }
        IntPoly::new(out)
    }

    /// Largest `k` such that `self(X) = X^e · G(X^k)` for some `G` and `e`, i.e.
    /// the gcd of the exponent gaps between nonzero coefficients. Returns 0 for
    /// monomials and the zero polynomial.
    pub fn exponent_stride(&self) -> usize {
        let support: Vec<usize> =
            self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, _)| k).collect();
        support.windows(2).fold(0usize, |g, w| g.gcd(&(w[1] - w[0])))
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a
    /// remainder or is not integral.
    pub fn div_exact(&self, divisor: &IntPoly) -> Option<IntPoly> {
        let (q, r) = self.to_rat().div_rem(&divisor.to_rat());
        if !r.is_zero() {
            return None;
        }
        q.to_int_poly()
    }

    pub fn to_rat(&self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| Rational::from_integer(c.clone())).collect())
    }

    /// True iff gcd(self, self') is a constant.
    pub fn is_squarefree(&self) -> bool {
        if self.degree().unwrap_or(0) == 0 {
            return !self.is_zero();
        }
        let g = self.to_rat().gcd(&self.derivative().to_rat());
        g.degree() == Some(0)
    }

    /// Rational roots of the polynomial, via the rational root test on a
    /// primitive polynomial. Intended for the small defining polynomials used as
    /// field moduli, so divisor enumeration is by trial division.
    pub fn rational_roots(&self) -> Vec<Rational> {
        if self.is_zero() {
            return Vec::new();
        }
        let mut roots = Vec::new();
        // strip X^k factors
        let shift = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if shift > 0 {
            roots.push(Rational::zero());
        }
        let p = IntPoly::new(self.coeffs[shift..].to_vec());
        if p.degree().unwrap_or(0) == 0 {
            return roots;
        }
        let lead_divs = divisors(&p.leading().abs());
        let const_divs = divisors(&p.coeff(0).abs());
        let mut seen = std::collections::BTreeSet::new();
        for num in &const_divs {
            for den in &lead_divs {
                for sign in [1i32, -1] {
                    let q = Rational::new(num.clone() * Integer::from(sign), den.clone());
                    if seen.insert(q.clone()) && p.eval_rational(&q).is_zero() {
                        roots.push(q);
                    }
                }
            }
        }
        roots.sort();
        roots
    }

    /// `Y^d · self(X/Y)` as coefficients of `X^{d-k} Y^k`, index `k`.
    pub fn homogenized_coeffs(&self) -> Vec<Integer> {
        self.coeffs.iter().rev().cloned().collect()
    }

    /// Pretty form in `X` alone, highest degree first.
    pub fn display_in(&self, var: &str) -> String {
        let terms: Vec<(Integer, usize)> =
            self.coeffs.iter().enumerate().rev().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (c.clone(), k)).collect();
        format_terms(&terms, |k| monomial(var, k))
    }
}

fn monomial(var: &str, k: usize) -> String {
    match k {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{k}"),
    }
}

/// Renders `Σ c·m(k)` with signs folded into the separators.
pub(crate) fn format_terms<K: Copy>(terms: &[(Integer, K)], mono: impl Fn(K) -> String) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut s = String::new();
    for (i, (c, k)) in terms.iter().enumerate() {
        let m = mono(*k);
        let neg = c.is_negative();
        let mag = c.abs();
        if i == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push(if neg { '-' } else { '+' });
        }
        if m.is_empty() {
            s.push_str(&mag.to_string());
        } else {
            if !mag.is_one() {
                s.push_str(&mag.to_string());
            }
            s.push_str(&m);
        }
    }
    s
}

fn divisors(n: &Integer) -> Vec<Integer> {
    if n.is_zero() {
        return vec![Integer::one()];
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut k = Integer::one();
    while &k * &k <= *n {
        if (n % &k).is_zero() {
            small.push(k.clone());
            let other = n / &k;
            if other != k {
                large.push(other);
            }
        }
        k += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({})", self.display_in("X"))
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("X"))
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![Integer::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: IntPoly) -> IntPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<String> = self.coeffs.iter().map(super::int_to_string).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v: Vec<crate::json::DecimalInt> = Vec::deserialize(d)?;
        Ok(IntPoly::new(v.into_iter().map(|x| x.0).collect()))
    }
}
