//! Exact quaternion scalars over the rationals.
//!
//! A [`Quaternion`] is `a0 + a1 i + a2 j + a3 k` with arbitrary-precision
//! rational coefficients, so every ring operation and every rank decision
//! made on top of it is exact.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Canonical rational: positive denominator, reduced.
pub type Rational = BigRational;

/// Builds `num / den` in canonical form. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// One of the three imaginary units; selects which conjugation `A^{η*}` uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EtaAxis {
    I,
    J,
    K,
}

impl EtaAxis {
    pub const ALL: [EtaAxis; 3] = [EtaAxis::I, EtaAxis::J, EtaAxis::K];

    /// Index of the coefficient this axis owns (1, 2 or 3).
    pub fn coefficient_index(self) -> usize {
        match self {
            EtaAxis::I => 1,
            EtaAxis::J => 2,
            EtaAxis::K => 3,
        }
    }

    /// The unit itself as a quaternion.
    pub fn unit(self) -> Quaternion {
        match self {
            EtaAxis::I => Quaternion::i(),
            EtaAxis::J => Quaternion::j(),
            EtaAxis::K => Quaternion::k(),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            EtaAxis::I => 'i',
            EtaAxis::J => 'j',
            EtaAxis::K => 'k',
        }
    }
}

impl fmt::Display for EtaAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

impl std::str::FromStr for EtaAxis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "i" => Ok(EtaAxis::I),
            "j" => Ok(EtaAxis::J),
            "k" => Ok(EtaAxis::K),
            other => Err(Error::parse(0, 0, format!("unknown eta axis `{other}`"))),
        }
    }
}

/// Quaternion with coefficients of `1, i, j, k` in that order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Quaternion {
    pub a0: Rational,
    pub a1: Rational,
    pub a2: Rational,
    pub a3: Rational,
}

impl Quaternion {
    pub fn new(a0: Rational, a1: Rational, a2: Rational, a3: Rational) -> Self {
        Quaternion { a0, a1, a2, a3 }
    }

    /// Shorthand for integer coefficients.
    pub fn from_ints(a0: i64, a1: i64, a2: i64, a3: i64) -> Self {
        Quaternion::new(rat(a0, 1), rat(a1, 1), rat(a2, 1), rat(a3, 1))
    }

    pub fn real(r: Rational) -> Self {
        Quaternion::new(r, Rational::zero(), Rational::zero(), Rational::zero())
    }

    pub fn zero() -> Self {
        Quaternion::default()
    }

    pub fn one() -> Self {
        Quaternion::from_ints(1, 0, 0, 0)
    }

    pub fn i() -> Self {
        Quaternion::from_ints(0, 1, 0, 0)
    }

    pub fn j() -> Self {
        Quaternion::from_ints(0, 0, 1, 0)
    }

    pub fn k() -> Self {
        Quaternion::from_ints(0, 0, 0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.a0.is_zero() && self.a1.is_zero() && self.a2.is_zero() && self.a3.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a0.is_one() && self.a1.is_zero() && self.a2.is_zero() && self.a3.is_zero()
    }

    pub fn coefficients(&self) -> [&Rational; 4] {
        [&self.a0, &self.a1, &self.a2, &self.a3]
    }

    pub fn coefficient(&self, idx: usize) -> &Rational {
        self.coefficients()[idx]
    }

    fn coefficient_mut(&mut self, idx: usize) -> &mut Rational {
        match idx {
            0 => &mut self.a0,
            1 => &mut self.a1,
            2 => &mut self.a2,
            3 => &mut self.a3,
            _ => panic!("quaternion coefficient index {idx} out of range"),
        }
    }

    /// Ordinary conjugate `a0 - a1 i - a2 j - a3 k`.
    pub fn conj(&self) -> Self {
        Quaternion::new(
            self.a0.clone(),
            -self.a1.clone(),
            -self.a2.clone(),
            -self.a3.clone(),
        )
    }

    /// Squared norm `a0² + a1² + a2² + a3²`.
    pub fn norm_sqr(&self) -> Rational {
        self.coefficients().iter().map(|c| *c * *c).sum()
    }

    /// `−η · conj(a) · η`, which negates the η coefficient and keeps the rest.
    pub fn eta_conj(&self, eta: EtaAxis) -> Self {
        let mut out = self.clone();
        let c = out.coefficient_mut(eta.coefficient_index());
        *c = -c.clone();
        out
    }

    pub fn is_eta_hermitian(&self, eta: EtaAxis) -> bool {
        self.coefficient(eta.coefficient_index()).is_zero()
    }

    /// True when `eta_conj(self) == -self`, i.e. `self` is a rational multiple of η.
    pub fn is_skew_eta_hermitian(&self, eta: EtaAxis) -> bool {
        (0..4)
            .filter(|&idx| idx != eta.coefficient_index())
            .all(|idx| self.coefficient(idx).is_zero())
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm_sqr();
        Ok(self.conj().scale(&n.recip()))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Quaternion::new(&self.a0 * r, &self.a1 * r, &self.a2 * r, &self.a3 * r)
    }

    pub fn is_real(&self) -> bool {
        self.a1.is_zero() && self.a2.is_zero() && self.a3.is_zero()
    }
}

impl<'a> Mul<&'a Quaternion> for &'a Quaternion {
    type Output = Quaternion;

    fn mul(self, b: &'a Quaternion) -> Quaternion {
        let a = self;
        Quaternion {
            a0: &a.a0 * &b.a0 - &a.a1 * &b.a1 - &a.a2 * &b.a2 - &a.a3 * &b.a3,
            a1: &a.a0 * &b.a1 + &a.a1 * &b.a0 + &a.a2 * &b.a3 - &a.a3 * &b.a2,
            a2: &a.a0 * &b.a2 - &a.a1 * &b.a3 + &a.a2 * &b.a0 + &a.a3 * &b.a1,
            a3: &a.a0 * &b.a3 + &a.a1 * &b.a2 - &a.a2 * &b.a1 + &a.a3 * &b.a0,
        }
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;

    fn mul(self, b: Quaternion) -> Quaternion {
        &self * &b
    }
}

impl<'a> Add<&'a Quaternion> for &'a Quaternion {
    type Output = Quaternion;

    fn add(self, b: &'a Quaternion) -> Quaternion {
        Quaternion::new(
            &self.a0 + &b.a0,
            &self.a1 + &b.a1,
            &self.a2 + &b.a2,
            &self.a3 + &b.a3,
        )
    }
}

impl Add for Quaternion {
    type Output = Quaternion;

    fn add(self, b: Quaternion) -> Quaternion {
        &self + &b
    }
}

impl<'a> Sub<&'a Quaternion> for &'a Quaternion {
    type Output = Quaternion;

    fn sub(self, b: &'a Quaternion) -> Quaternion {
        Quaternion::new(
            &self.a0 - &b.a0,
            &self.a1 - &b.a1,
            &self.a2 - &b.a2,
            &self.a3 - &b.a3,
        )
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;

    fn sub(self, b: Quaternion) -> Quaternion {
        &self - &b
    }
}

impl AddAssign<&Quaternion> for Quaternion {
    fn add_assign(&mut self, b: &Quaternion) {
        self.a0 += &b.a0;
        self.a1 += &b.a1;
        self.a2 += &b.a2;
        self.a3 += &b.a3;
    }
}

impl SubAssign<&Quaternion> for Quaternion {
    fn sub_assign(&mut self, b: &Quaternion) {
        self.a0 -= &b.a0;
        self.a1 -= &b.a1;
        self.a2 -= &b.a2;
        self.a3 -= &b.a3;
    }
}

impl Neg for &Quaternion {
    type Output = Quaternion;

    fn neg(self) -> Quaternion {
        Quaternion::new(
            -self.a0.clone(),
            -self.a1.clone(),
            -self.a2.clone(),
            -self.a3.clone(),
        )
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;

    fn neg(self) -> Quaternion {
        -&self
    }
}

/// Free-function forms matching the operation names used throughout the crate.
pub fn q_mul(a: &Quaternion, b: &Quaternion) -> Quaternion {
    a * b
}

pub fn q_inv(a: &Quaternion) -> Result<Quaternion> {
    a.inv()
}

pub fn q_eta_conj(a: &Quaternion, eta: EtaAxis) -> Quaternion {
    a.eta_conj(eta)
}

fn write_rational(f: &mut fmt::Formatter<'_>, r: &Rational) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

/// Prints in the literal grammar accepted by [`crate::io::parse_quaternion`],
/// e.g. `1+2i-3j+4/5k`, `-i`, `0`.
impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (idx, unit) in ["", "i", "j", "k"].iter().enumerate() {
            let c = self.coefficient(idx);
            if c.is_zero() {
                continue;
            }
            if c.is_negative() {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            let mag = c.abs();
            if unit.is_empty() || !mag.is_one() {
                write_rational(f, &mag)?;
            }
            write!(f, "{unit}")?;
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a0: i64, a1: i64, a2: i64, a3: i64) -> Quaternion {
        Quaternion::from_ints(a0, a1, a2, a3)
    }

    #[test]
    fn unit_products() {
        assert_eq!(q_mul(&Quaternion::i(), &Quaternion::j()), Quaternion::k());
        assert_eq!(q_mul(&Quaternion::j(), &Quaternion::i()), -Quaternion::k());
        assert_eq!(q_mul(&Quaternion::j(), &Quaternion::k()), Quaternion::i());
        assert_eq!(q_mul(&Quaternion::k(), &Quaternion::i()), Quaternion::j());
        for u in [Quaternion::i(), Quaternion::j(), Quaternion::k()] {
            assert_eq!(q_mul(&u, &u), -Quaternion::one());
        }
        let ijk = q_mul(&q_mul(&Quaternion::i(), &Quaternion::j()), &Quaternion::k());
        assert_eq!(ijk, -Quaternion::one());
    }

    #[test]
    fn distributive_expansion() {
        assert_eq!(q_mul(&q(1, 1, 0, 0), &q(1, 0, 1, 0)), q(1, 1, 1, 1));
    }

    #[test]
    fn inverses() {
        assert_eq!(q_inv(&Quaternion::i()).unwrap(), -Quaternion::i());
        let expected = Quaternion::new(rat(1, 4), rat(-1, 4), rat(-1, 4), rat(-1, 4));
        assert_eq!(q_inv(&q(1, 1, 1, 1)).unwrap(), expected);
        assert_eq!(q_inv(&q(2, 0, 0, 0)).unwrap(), Quaternion::real(rat(1, 2)));
        assert!(matches!(
            q_inv(&Quaternion::zero()),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn eta_conj_examples() {
        assert_eq!(q_eta_conj(&Quaternion::i(), EtaAxis::I), -Quaternion::i());
        assert_eq!(q_eta_conj(&Quaternion::j(), EtaAxis::I), Quaternion::j());
        // brute force -j * conj(a) * j
        let a = q(1, 2, -3, 1);
        let j = Quaternion::j();
        let brute = -q_mul(&q_mul(&j, &a.conj()), &j);
        assert_eq!(brute, q(1, 2, 3, 1));
        assert_eq!(q_eta_conj(&a, EtaAxis::J), brute);
    }

    #[test]
    fn display_literals() {
        let x = Quaternion::new(rat(1, 1), rat(2, 1), rat(-3, 1), rat(4, 5));
        assert_eq!(x.to_string(), "1+2i-3j+4/5k");
        assert_eq!((-Quaternion::i()).to_string(), "-i");
        assert_eq!(Quaternion::zero().to_string(), "0");
        assert_eq!(Quaternion::real(rat(3, 2)).to_string(), "3/2");
        assert_eq!(q(0, 0, -1, 1).to_string(), "-j+k");
    }

    #[test]
    fn skew_characterization() {
        assert!(Quaternion::j()
            .scale(&rat(-7, 3))
            .is_skew_eta_hermitian(EtaAxis::J));
        assert!(!Quaternion::one().is_skew_eta_hermitian(EtaAxis::J));
        assert!(Quaternion::zero().is_skew_eta_hermitian(EtaAxis::K));
    }
}
