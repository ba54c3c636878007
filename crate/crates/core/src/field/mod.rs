//! Exact arithmetic in `K = Q[θ]/(g)` over the power basis.

mod units;

use std::fmt;
use std::sync::Arc;

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{denominator_lcm, format_terms, IntPoly, Integer, RatMatrix, RatPoly, Rational};
use crate::json::ElementDescriptor;

pub use units::{
    check_siegel_properties, reduce_by_units, regulator_from_units, unit_places, Reduction, SiegelReport, UnitSystem,
    Verdict,
};

/// `Q[θ]/(g)` for a monic squarefree `g` of degree at least 2 without
/// rational roots. Irreducibility beyond that is the caller's claim.
#[derive(Debug, PartialEq, Eq)]
pub struct NumberField {
    g: IntPoly,
    d: usize,
}

/// Shared handle to a field; elements keep one.
pub type Field = Arc<NumberField>;

impl NumberField {
    pub fn new(g: IntPoly) -> Result<Field> {
        let d = g.degree().unwrap_or(0);
        if d < 2 {
            return Err(Error::InvalidField("defining polynomial must have degree >= 2".into()));
        }
        if !g.is_monic() {
            return Err(Error::InvalidField(format!("{g} is not monic")));
        }
        if !g.is_squarefree() {
            return Err(Error::InvalidField(format!("{g} is not squarefree")));
        }
        if let Some(r) = g.rational_roots().first() {
            return Err(Error::InvalidField(format!("{g} has the rational root {r}")));
        }
        Ok(Arc::new(NumberField { g, d }))
    }

    pub fn from_i64s(g: &[i64]) -> Result<Field> {
        Self::new(IntPoly::from_i64s(g))
    }

    pub fn poly(&self) -> &IntPoly {
        &self.g
    }

    pub fn degree(&self) -> usize {
        self.d
    }
}

/// `(Σ coords[i] θ^i) / den` with `den > 0` and `gcd(content, den) = 1`.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: Field,
    coords: Vec<Integer>,
    den: Integer,
}

impl FieldElement {
    /// Builds and normalizes; coordinate vectors longer than `d` are reduced
    /// modulo `g`.
    pub fn new(field: &Field, coords: Vec<Integer>, den: Integer) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let coords = reduce_mod(&field.g, coords);
        Ok(Self::normalized(field.clone(), coords, den))
    }

    pub fn from_i64s(field: &Field, coords: &[i64]) -> Self {
        Self::new(field, coords.iter().map(|&c| Integer::from(c)).collect(), Integer::one()).expect("denominator is 1")
    }

    pub fn from_int(field: &Field, n: Integer) -> Self {
        Self::normalized(field.clone(), vec![n], Integer::one())
    }

    pub fn from_rational(field: &Field, q: &Rational) -> Self {
        Self::normalized(field.clone(), vec![q.numer().clone()], q.denom().clone())
    }

    pub fn from_descriptor(field: &Field, e: &ElementDescriptor) -> Result<Self> {
        Self::new(field, e.coords.iter().map(|c| c.0.clone()).collect(), e.den.0.clone())
    }

    pub fn to_descriptor(&self) -> ElementDescriptor {
        ElementDescriptor {
            coords: self.coords.iter().cloned().map(crate::json::DecimalInt).collect(),
            den: crate::json::DecimalInt(self.den.clone()),
        }
    }

    pub fn zero(field: &Field) -> Self {
        Self::from_int(field, Integer::zero())
    }

    pub fn one(field: &Field) -> Self {
        Self::from_int(field, Integer::one())
    }

    /// The class of `θ`.
    pub fn theta(field: &Field) -> Self {
        Self::from_i64s(field, &[0, 1])
    }

    fn normalized(field: Field, mut coords: Vec<Integer>, mut den: Integer) -> Self {
        coords.resize(field.d, Integer::zero());
        if den.is_negative() {
            den = -den;
            coords.iter_mut().for_each(|c| *c = -c.clone());
        }
        let g = coords.iter().fold(den.clone(), |g, c| g.gcd(c));
        if !g.is_one() && !g.is_zero() {
            coords.iter_mut().for_each(|c| *c = &*c / &g);
            den /= &g;
        }
        if coords.iter().all(Zero::is_zero) {
            den = Integer::one();
        }
        FieldElement { field, coords, den }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coords(&self) -> &[Integer] {
        &self.coords
    }

    pub fn den(&self) -> &Integer {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.coords[0].is_one() && self.coords[1..].iter().all(Zero::is_zero)
    }

    /// Numerator as a polynomial in `θ`.
    pub fn numerator_poly(&self) -> IntPoly {
        IntPoly::new(self.coords.clone())
    }

    /// Coordinates as rationals.
    pub fn rational_coords(&self) -> Vec<Rational> {
        self.coords.iter().map(|c| Rational::new(c.clone(), self.den.clone())).collect()
    }

    /// The rational number this element equals, if it lies in `Q`.
    pub fn as_rational(&self) -> Option<Rational> {
        self.coords[1..].iter().all(Zero::is_zero).then(|| Rational::new(self.coords[0].clone(), self.den.clone()))
    }

    pub(crate) fn same_field(&self, o: &FieldElement) -> Result<()> {
        if Arc::ptr_eq(&self.field, &o.field) || *self.field == *o.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, o: &FieldElement) -> Result<FieldElement> {
        self.same_field(o)?;
        let coords = (0..self.field.d).map(|i| &self.coords[i] * &o.den + &o.coords[i] * &self.den).collect();
        Ok(Self::normalized(self.field.clone(), coords, &self.den * &o.den))
    }

    pub fn neg(&self) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, o: &FieldElement) -> Result<FieldElement> {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &FieldElement) -> Result<FieldElement> {
        self.same_field(o)?;
        let prod = &self.numerator_poly() * &o.numerator_poly();
        let coords = reduce_mod(&self.field.g, prod.coeffs().to_vec());
        Ok(Self::normalized(self.field.clone(), coords, &self.den * &o.den))
    }

    pub fn scale_int(&self, n: &Integer) -> FieldElement {
        Self::normalized(self.field.clone(), self.coords.iter().map(|c| c * n).collect(), self.den.clone())
    }

    /// Matrix of multiplication by `self`; column `j` holds the coordinates of
    /// `self · θ^j`.
    pub fn mul_matrix(&self) -> RatMatrix {
        let d = self.field.d;
        let mut m = RatMatrix::zeros(d, d);
        let mut col = self.numerator_poly();
        for j in 0..d {
            let red = reduce_mod(&self.field.g, col.coeffs().to_vec());
            for (i, c) in red.iter().enumerate() {
                m[(i, j)] = Rational::new(c.clone(), self.den.clone());
            }
            col = &IntPoly::new(red) * &IntPoly::x();
        }
        m
    }

    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let d = self.field.d;
        let mut e1 = vec![Rational::zero(); d];
        e1[0] = Rational::one();
        let sol = self.mul_matrix().solve(&e1)?;
        Ok(Self::from_rationals(&self.field, &sol))
    }

    /// Element with the given rational coordinates.
    pub fn from_rationals(field: &Field, q: &[Rational]) -> FieldElement {
        let l = denominator_lcm(q);
        let coords = q.iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect();
        Self::normalized(field.clone(), coords, l)
    }

    /// `self^k` by binary exponentiation; negative `k` inverts first.
    pub fn pow(&self, k: i64) -> Result<FieldElement> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = FieldElement::one(&self.field);
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b)?;
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b)?;
            }
        }
        Ok(acc)
    }

    /// Characteristic polynomial over `Q`, monic of degree `d`.
    pub fn charpoly(&self) -> RatPoly {
        self.mul_matrix().charpoly().expect("square matrix")
    }

    /// `N(self) = det` of the multiplication matrix.
    pub fn norm(&self) -> Rational {
        let cp = self.charpoly();
        let c0 = cp.coeff(0);
        if self.field.d.is_multiple_of(2) {
            c0
        } else {
            -c0
        }
    }

    /// Integral characteristic polynomial and norm ±1.
    pub fn is_unit(&self) -> bool {
        let cp = self.charpoly();
        cp.to_int_poly().is_some() && {
            let n = self.norm();
            n.is_integer() && n.to_integer().abs().is_one()
        }
    }

    /// `Q(self) = K`, decided by the rank of `1, x, …, x^{d-1}`.
    pub fn generates_field(&self) -> bool {
        let d = self.field.d;
        let mut rows = Vec::with_capacity(d);
        let mut p = FieldElement::one(&self.field);
        for _ in 0..d {
            rows.push(p.rational_coords());
            p = p.mul(self).expect("same field");
        }
        RatMatrix::from_rows(rows).expect("rectangular").rank() == d
    }

    /// The primitive integer polynomial vanishing at `self` (the minimal
    /// polynomial when `g` is irreducible), from the characteristic polynomial.
    pub fn min_poly(&self) -> IntPoly {
        self.charpoly().squarefree_part().primitive_integer()
    }
}

/// Reduces a coefficient vector modulo the monic polynomial `g`.
fn reduce_mod(g: &IntPoly, mut c: Vec<Integer>) -> Vec<Integer> {
    let d = g.degree().expect("nonzero modulus");
    let gc = g.coeffs();
    while c.len() > d {
        let top = c.pop().expect("nonempty");
        if top.is_zero() {
            continue;
        }
        let base = c.len() - d;
        for i in 0..d {
            c[base + i] -= &top * &gc[i];
        }
    }
    c
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(Integer, usize)> =
            self.coords.iter().enumerate().rev().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (c.clone(), k)).collect();
        let body = format_terms(&terms, |k| match k {
            0 => String::new(),
            1 => "t".into(),
            _ => format!("t^{k}"),
        });
        if self.den.is_one() {
            f.write_str(&body)
        } else if terms.len() > 1 {
            write!(f, "({body})/{}", self.den)
        } else {
            write!(f, "{body}/{}", self.den)
        }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement({self} mod {})", self.field.g.display_in("t"))
    }
}
