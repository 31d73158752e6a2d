//! Exact coefficient arithmetic: Laurent polynomials in the deformation
//! parameter `k` (kappa) with Gaussian-rational coefficients.
//!
//! A [`Scalar`] is the coefficient ring of everything else in this crate.
//! All operations are exact; equality is structural equality of the
//! canonical form (no stored term has a zero coefficient).

use num::complex::Complex;
use num::{BigInt, BigRational, One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Gaussian rational: `re + im*i` with exact rational parts.
pub type Coef = Complex<BigRational>;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Laurent polynomial in kappa over the Gaussian rationals, stored as a map
/// from kappa-exponent to coefficient. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Scalar {
    terms: BTreeMap<i64, Coef>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Scalar::int(1)
    }

    pub fn int(n: i64) -> Self {
        Scalar::from_coef(Coef::new(rat(n, 1), BigRational::zero()))
    }

    pub fn rational(n: i64, d: i64) -> Self {
        Scalar::from_coef(Coef::new(rat(n, d), BigRational::zero()))
    }

    /// The imaginary unit `i`.
    pub fn i() -> Self {
        Scalar::gauss(0, 1)
    }

    /// `re + im*i` with integer parts.
    pub fn gauss(re: i64, im: i64) -> Self {
        Scalar::from_coef(Coef::new(rat(re, 1), rat(im, 1)))
    }

    /// `i/k`, the ubiquitous structure constant.
    pub fn i_over_k() -> Self {
        Scalar::term(-1, Coef::new(BigRational::zero(), BigRational::one()))
    }

    /// `k^e` for any integer exponent.
    pub fn k_pow(e: i64) -> Self {
        Scalar::term(e, Coef::one())
    }

    pub fn from_coef(c: Coef) -> Self {
        Scalar::term(0, c)
    }

    pub fn term(e: i64, c: Coef) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Scalar { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self == &Scalar::one()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&i64, &Coef)> {
        self.terms.iter()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn coef_at(&self, e: i64) -> Coef {
        self.terms.get(&e).cloned().unwrap_or_else(Coef::zero)
    }

    fn insert_add(terms: &mut BTreeMap<i64, Coef>, e: i64, c: Coef) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    o.insert(s);
                }
            }
        }
    }

    /// Complex conjugation `i -> -i`; kappa is real and fixed.
    pub fn conjugate(&self) -> Scalar {
        Scalar {
            terms: self.terms.iter().map(|(e, c)| (*e, c.conj())).collect(),
        }
    }

    /// Multiply by `k^e`.
    pub fn shift(&self, e: i64) -> Scalar {
        Scalar {
            terms: self.terms.iter().map(|(k, c)| (k + e, c.clone())).collect(),
        }
    }

    pub fn scale_coef(&self, c: &Coef) -> Scalar {
        if c.is_zero() {
            return Scalar::zero();
        }
        Scalar {
            terms: self.terms.iter().map(|(e, v)| (*e, v.clone() * c.clone())).collect(),
        }
    }

    /// Inverse of a unit scalar (a single Laurent term); `None` otherwise.
    pub fn checked_inv(&self) -> Option<Scalar> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next().unwrap();
        Some(Scalar::term(-e, Coef::one() / c.clone()))
    }

    /// Leading term (largest kappa-exponent).
    pub fn leading(&self) -> Option<(i64, Coef)> {
        self.terms.iter().next_back().map(|(e, c)| (*e, c.clone()))
    }

    /// Long division for ordinary polynomials (no negative exponents).
    /// Returns `(quotient, remainder)`.
    pub fn poly_divmod(&self, rhs: &Scalar) -> (Scalar, Scalar) {
        assert!(!rhs.is_zero(), "division by zero polynomial");
        debug_assert!(self.min_exp().unwrap_or(0) >= 0 && rhs.min_exp().unwrap_or(0) >= 0);
        let (de, dc) = rhs.leading().unwrap();
        let mut quo = Scalar::zero();
        let mut rem = self.clone();
        while let Some((re, rc)) = rem.leading() {
            if re < de {
                break;
            }
            let t = Scalar::term(re - de, rc / dc.clone());
            quo = &quo + &t;
            rem = &rem - &(&t * rhs);
        }
        (quo, rem)
    }

    /// Monic gcd of two ordinary polynomials.
    pub fn poly_gcd(&self, rhs: &Scalar) -> Scalar {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let (_, r) = a.poly_divmod(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let (_, lc) = a.leading().unwrap();
        a.scale_coef(&(Coef::one() / lc))
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let mut terms = self.terms.clone();
        for (e, c) in &rhs.terms {
            Scalar::insert_add(&mut terms, *e, c.clone());
        }
        Scalar { terms }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        let mut terms = self.terms.clone();
        for (e, c) in &rhs.terms {
            Scalar::insert_add(&mut terms, *e, -c.clone());
        }
        Scalar { terms }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let mut terms = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                Scalar::insert_add(&mut terms, e1 + e2, c1.clone() * c2.clone());
            }
        }
        Scalar { terms }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

// ---- printing ----

fn rat_str(r: &BigRational) -> String {
    r.to_string()
}

/// `(negative, body, compound)` for a Gaussian rational. `compound` marks a
/// genuine `re + im*i` sum that needs parentheses inside products.
fn gauss_parts(c: &Coef) -> (bool, String, bool) {
    if c.im.is_zero() {
        (c.re.is_negative(), rat_str(&c.re.abs()), false)
    } else if c.re.is_zero() {
        let m = c.im.abs();
        let body = if m.is_one() { "i".to_string() } else { format!("{}*i", rat_str(&m)) };
        (c.im.is_negative(), body, false)
    } else {
        let im = c.im.abs();
        let istr = if im.is_one() { "i".to_string() } else { format!("{}*i", rat_str(&im)) };
        let join = if c.im.is_negative() { " - " } else { " + " };
        (false, format!("{}{}{}", rat_str(&c.re), join, istr), true)
    }
}

/// String for the single Laurent term `c * k^e`, with the sign extracted
/// when possible.
fn term_parts(e: i64, c: &Coef) -> (bool, String) {
    let (neg, cbody, compound) = gauss_parts(c);
    let cbody = if compound && e != 0 { format!("({cbody})") } else { cbody };
    let body = if e == 0 {
        cbody
    } else if e > 0 {
        let kpart = if e == 1 { "k".to_string() } else { format!("k^{e}") };
        if cbody == "1" { kpart } else { format!("{cbody}*{kpart}") }
    } else {
        let kpart = if e == -1 { "k".to_string() } else { format!("k^{}", -e) };
        format!("{cbody}/{kpart}")
    };
    (neg, body)
}

impl Scalar {
    /// Canonical string, kappa-exponent descending.
    pub fn canonical_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let (neg, body) = term_parts(*e, c);
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            out.push_str(&body);
        }
        out
    }

    /// Renders this scalar as a multiplicative prefix for a monomial or
    /// basis-form symbol. Returns `(negative, prefix)` where the prefix is
    /// either empty (coefficient one) or ends in `*`.
    pub fn coeff_prefix(&self) -> (bool, String) {
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            let (neg, body) = term_parts(*e, c);
            if body == "1" {
                return (neg, String::new());
            }
            let wrapped = if body.contains('/') || body.contains('*') || body.contains(' ') {
                if body.starts_with('(') && body.ends_with(')') {
                    body
                } else {
                    format!("({body})")
                }
            } else {
                body
            };
            (neg, format!("{wrapped}*"))
        } else {
            (false, format!("({})*", self.canonical_string()))
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canonical_string())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canonical_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjugation_is_involutive_and_fixes_reals() {
        let s = &Scalar::i_over_k() + &Scalar::int(3);
        assert_eq!(s.conjugate().conjugate(), s);
        let real = &Scalar::int(3) + &(&Scalar::int(2) * &Scalar::k_pow(2));
        assert_eq!(real.conjugate(), real);
    }

    #[test]
    fn conjugation_flips_i() {
        assert_eq!(Scalar::i().conjugate(), -&Scalar::i());
        assert_eq!(Scalar::i_over_k().conjugate(), -&Scalar::i_over_k());
    }

    #[test]
    fn ring_ops_are_exact() {
        let iok = Scalar::i_over_k();
        // (i/k)^2 = -1/k^2
        assert_eq!(&iok * &iok, Scalar::term(-2, Coef::new(rat(-1, 1), rat(0, 1))));
        let a = &Scalar::int(2) + &Scalar::k_pow(1);
        let b = &Scalar::int(-2) + &Scalar::k_pow(1);
        assert_eq!(&a * &b, &Scalar::k_pow(2) - &Scalar::int(4));
    }

    #[test]
    fn unit_inverse() {
        let s = &Scalar::i() * &Scalar::k_pow(-1);
        let inv = s.checked_inv().unwrap();
        assert!((&s * &inv).is_one());
        let nonunit = &Scalar::one() + &Scalar::k_pow(1);
        assert!(nonunit.checked_inv().is_none());
    }

    #[test]
    fn divmod_and_gcd() {
        // (k^2 - 1) = (k - 1)(k + 1)
        let p = &Scalar::k_pow(2) - &Scalar::one();
        let d = &Scalar::k_pow(1) - &Scalar::one();
        let (q, r) = p.poly_divmod(&d);
        assert!(r.is_zero());
        assert_eq!(q, &Scalar::k_pow(1) + &Scalar::one());
        let g = p.poly_gcd(&d);
        assert_eq!(g, d);
    }

    #[test]
    fn canonical_strings() {
        assert_eq!(Scalar::zero().to_string(), "0");
        assert_eq!(Scalar::i_over_k().to_string(), "i/k");
        assert_eq!((-&Scalar::i_over_k()).to_string(), "-i/k");
        let s = &Scalar::int(3) + &(&Scalar::int(2) * &Scalar::k_pow(2));
        assert_eq!(s.to_string(), "2*k^2 + 3");
        assert_eq!(Scalar::rational(3, 2).to_string(), "3/2");
        let (neg, pre) = Scalar::i_over_k().coeff_prefix();
        assert!(!neg);
        assert_eq!(pre, "(i/k)*");
        let (neg, pre) = (-&Scalar::one()).coeff_prefix();
        assert!(neg);
        assert_eq!(pre, "");
    }
}
