use std::fmt;

use num_traits::Zero;
use serde::{Serialize, Serializer};

use crate::exact::{format_terms, IntPoly, Integer};

/// Binary form `Σ c_k X^{d-k} Y^k`; index `k` holds the coefficient of
/// `X^{d-k} Y^k`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryForm {
    coeffs: Vec<Integer>,
}

impl BinaryForm {
    /// Panics on an empty coefficient list.
    pub fn new(coeffs: Vec<Integer>) -> Self {
        assert!(!coeffs.is_empty(), "a binary form needs at least one coefficient");
        BinaryForm { coeffs }
    }

    pub fn from_i64s(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| Integer::from(v)).collect())
    }

    /// `Y^d f(X/Y)` for `f` of degree `d`.
    pub fn homogenize(f: &IntPoly) -> Self {
        Self::new(f.homogenized_coeffs())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Integer] {
        &self.coeffs
    }

    /// `F(X, 1)`.
    pub fn dehomogenize(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().rev().cloned().collect())
    }

    pub fn evaluate(&self, x: &Integer, y: &Integer) -> Integer {
        // Horner in X with powers of Y folded in
        let mut acc = Integer::zero();
        let mut ypow = Integer::from(1);
        let d = self.degree();
        let mut ys = Vec::with_capacity(d + 1);
        for _ in 0..=d {
            ys.push(ypow.clone());
            ypow *= y;
        }
        for (k, c) in self.coeffs.iter().enumerate() {
            acc = acc * x + c * &ys[k];
        }
        acc
    }

    pub fn evaluate_i64(&self, x: i64, y: i64) -> Integer {
        self.evaluate(&Integer::from(x), &Integer::from(y))
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.degree();
        let terms: Vec<(Integer, usize)> =
            self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (c.clone(), k)).collect();
        let mono = |k: usize| {
            let part = |v: &str, e: usize| match e {
                0 => String::new(),
                1 => v.to_string(),
                _ => format!("{v}^{e}"),
            };
            format!("{}{}", part("X", d - k), part("Y", k))
        };
        f.write_str(&format_terms(&terms, mono))
    }
}

impl fmt::Debug for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryForm({self})")
    }
}

/// Coefficient array, `X^d` first, as decimal strings.
impl Serialize for BinaryForm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter().map(|c| c.to_string()))
    }
}
