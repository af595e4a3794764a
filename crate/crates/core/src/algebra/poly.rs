use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// Dense univariate polynomial over the rationals, constant term first.
///
/// The coefficient vector never ends in a zero, so the zero polynomial is the
/// empty vector and `degree` is well defined for everything else.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExactPoly {
    coeffs: Vec<Rational>,
}

impl ExactPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        ExactPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        ExactPoly::new(coeffs.iter().map(|&c| Rational::from_integer(BigInt::from(c))).collect())
    }

    pub fn zero() -> Self {
        ExactPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        ExactPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        ExactPoly::new(vec![c])
    }

    /// `c · t^n`.
    pub fn monomial(c: Rational, n: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[n] = c;
        ExactPoly::new(coeffs)
    }

    /// `t^n − 1`.
    pub fn t_pow_minus_one(n: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[0] = -Rational::one();
        coeffs[n] += Rational::one();
        ExactPoly::new(coeffs)
    }

    /// `t − 1`'s sibling: `t − c`.
    pub fn linear(c: Rational) -> Self {
        ExactPoly::new(vec![-c, Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Total bit size of the coefficients, used to rank pivots of equal degree.
    pub fn height(&self) -> u64 {
        self.coeffs
            .iter()
            .map(|c| c.numer().bits() + c.denom().bits())
            .sum()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return ExactPoly::zero();
        }
        ExactPoly {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Scalar multiple with leading coefficient 1; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => ExactPoly::zero(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    /// Largest `k` with `t^k` dividing `self` (0 for the zero polynomial).
    pub fn t_valuation(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Removes the factor `t^k` of maximal `k`, a unit in the Laurent ring.
    pub fn strip_t_power(&self) -> Self {
        let k = self.t_valuation();
        if k == 0 {
            return self.clone();
        }
        ExactPoly {
            coeffs: self.coeffs[k..].to_vec(),
        }
    }

    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        ExactPoly { coeffs }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = ExactPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn evaluate(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Euclidean division: `self = q · divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &ExactPoly) -> Result<(ExactPoly, ExactPoly)> {
        let dd = divisor
            .degree()
            .ok_or_else(|| Error::Argument("polynomial division by zero".into()))?;
        let Some(nd) = self.degree() else {
            return Ok((ExactPoly::zero(), ExactPoly::zero()));
        };
        if nd < dd {
            return Ok((ExactPoly::zero(), self.clone()));
        }
        let lc_inv = divisor.coeffs[dd].recip();
        let monic_divisor = lc_inv.is_one();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let c = &rem[i + dd];
            if c.is_zero() {
                continue;
            }
            let q = if monic_divisor { c.clone() } else { c * &lc_inv };
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                if !dc.is_zero() {
                    rem[i + j] -= &q * dc;
                }
            }
            quot[i] = q;
        }
        rem.truncate(dd);
        Ok((ExactPoly::new(quot), ExactPoly::new(rem)))
    }

    pub fn divides(&self, other: &ExactPoly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_rem(self).map(|(_, r)| r.is_zero()).unwrap_or(false)
    }

    /// Exact quotient, failing when `divisor ∤ self`.
    pub fn exact_div(&self, divisor: &ExactPoly) -> Result<ExactPoly> {
        let (q, r) = self.div_rem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::Argument(format!("{divisor} does not divide {self}")))
        }
    }
}

/// Monic greatest common divisor; errors when both inputs are zero.
pub fn poly_gcd(a: &ExactPoly, b: &ExactPoly) -> Result<ExactPoly> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::Argument("gcd of two zero polynomials".into()));
    }
    let (mut x, mut y) = (a.monic(), b.monic());
    while !y.is_zero() {
        let (_, r) = x.div_rem(&y)?;
        x = y;
        y = r.monic();
    }
    Ok(x.monic())
}

impl Add for &ExactPoly {
    type Output = ExactPoly;
    fn add(self, rhs: &ExactPoly) -> ExactPoly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() { (self, rhs) } else { (rhs, self) };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        ExactPoly::new(coeffs)
    }
}

impl Sub for &ExactPoly {
    type Output = ExactPoly;
    fn sub(self, rhs: &ExactPoly) -> ExactPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(n, Rational::zero());
        for (c, s) in coeffs.iter_mut().zip(&rhs.coeffs) {
            *c -= s;
        }
        ExactPoly::new(coeffs)
    }
}

impl Mul for &ExactPoly {
    type Output = ExactPoly;
    fn mul(self, rhs: &ExactPoly) -> ExactPoly {
        if self.is_zero() || rhs.is_zero() {
            return ExactPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        ExactPoly::new(coeffs)
    }
}

impl Neg for &ExactPoly {
    type Output = ExactPoly;
    fn neg(self) -> ExactPoly {
        ExactPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for ExactPoly {
            type Output = ExactPoly;
            fn $m(self, rhs: ExactPoly) -> ExactPoly { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for ExactPoly {
    type Output = ExactPoly;
    fn neg(self) -> ExactPoly {
        -&self
    }
}

impl fmt::Display for ExactPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = !abs.is_one() || i == 0;
            if show_coeff {
                write!(f, "{abs}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ExactPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactPoly({self})")
    }
}

/// An element `t^shift · poly` of the Laurent ring, with `poly(0) ≠ 0`
/// unless the element is zero.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LaurentClass {
    pub poly: ExactPoly,
    pub shift: i64,
}

impl LaurentClass {
    pub fn new(poly: ExactPoly, shift: i64) -> Self {
        if poly.is_zero() {
            return LaurentClass::zero();
        }
        let k = poly.t_valuation();
        LaurentClass {
            poly: poly.strip_t_power(),
            shift: shift + k as i64,
        }
    }

    pub fn zero() -> Self {
        LaurentClass {
            poly: ExactPoly::zero(),
            shift: 0,
        }
    }

    pub fn from_poly(poly: ExactPoly) -> Self {
        LaurentClass::new(poly, 0)
    }

    /// `t^n − 1` for any integer `n`.
    pub fn t_pow_minus_one(n: i64) -> Self {
        match n {
            0 => LaurentClass::zero(),
            n if n > 0 => LaurentClass::from_poly(ExactPoly::t_pow_minus_one(n as usize)),
            // t^{-m} − 1 = t^{-m} · (1 − t^m)
            n => LaurentClass::new(-ExactPoly::t_pow_minus_one(n.unsigned_abs() as usize), n),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        LaurentClass::new(self.poly.scale(c), self.shift)
    }

    /// Associates differ by a unit `c · t^k`.
    pub fn is_associate(&self, other: &LaurentClass) -> bool {
        self.poly.monic() == other.poly.monic()
    }

    /// The polynomial `t^{shift + k} · poly`; requires `shift + k ≥ 0`.
    pub fn times_t_pow(&self, k: i64) -> Result<ExactPoly> {
        if self.is_zero() {
            return Ok(ExactPoly::zero());
        }
        let e = self.shift + k;
        if e < 0 {
            return Err(Error::Argument("negative power of t after shifting".into()));
        }
        Ok(self.poly.shift(e as usize))
    }
}

impl fmt::Display for LaurentClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.shift {
            0 => write!(f, "{}", self.poly),
            s => write!(f, "t^{s}·({})", self.poly),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> ExactPoly {
        ExactPoly::from_i64s(c)
    }

    #[test]
    fn division_and_gcd() {
        let a = ExactPoly::t_pow_minus_one(18);
        let b = ExactPoly::t_pow_minus_one(4);
        assert_eq!(poly_gcd(&a, &b).unwrap(), ExactPoly::t_pow_minus_one(2));
        let q = p(&[3, 0, 6]);
        assert_eq!(poly_gcd(&q, &ExactPoly::zero()).unwrap(), p(&[1, 0, 2]).monic());
        assert!(poly_gcd(&ExactPoly::zero(), &ExactPoly::zero()).is_err());
        let (quot, rem) = p(&[-1, 0, 0, 1]).div_rem(&p(&[-1, 1])).unwrap();
        assert_eq!(quot, p(&[1, 1, 1]));
        assert!(rem.is_zero());
        let (quot, rem) = p(&[1, 0, 1]).div_rem(&p(&[0, 2])).unwrap();
        assert_eq!(quot, ExactPoly::monomial(Rational::new(1.into(), 2.into()), 1));
        assert_eq!(rem, p(&[1]));
    }

    #[test]
    fn laurent_normalization() {
        let x = LaurentClass::t_pow_minus_one(-3);
        assert_eq!(x.shift, -3);
        assert_eq!(x.poly, p(&[1, 0, 0, -1]));
        assert!(x.is_associate(&LaurentClass::t_pow_minus_one(3)));
        let y = LaurentClass::from_poly(p(&[0, 0, 5, 5]));
        assert_eq!(y.shift, 2);
        assert_eq!(y.poly, p(&[5, 5]));
        assert!(LaurentClass::t_pow_minus_one(0).is_zero());
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, -1, 1]).to_string(), "t^2 - t + 1");
        assert_eq!(p(&[-1, 1]).to_string(), "t - 1");
        assert_eq!(ExactPoly::zero().to_string(), "0");
    }
}
