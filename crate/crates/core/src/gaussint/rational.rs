use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;

use super::{gcd, GaussianInt};
use crate::error::{Error, Result};

/// A Gaussian rational `num / den`, kept reduced with `den` a canonical
/// associate. Equal values therefore have equal representations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    num: GaussianInt,
    den: GaussianInt,
}

impl GaussianRational {
    pub fn new(num: GaussianInt, den: GaussianInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let g = gcd(&num, &den)?;
        let num = num.div_exact(&g).expect("gcd divides numerator");
        let den = den.div_exact(&g).expect("gcd divides denominator");
        let (den, u) = den.canonical_associate_with_unit()?;
        Ok(GaussianRational { num: num * u, den })
    }

    pub fn num(&self) -> &GaussianInt {
        &self.num
    }

    pub fn den(&self) -> &GaussianInt {
        &self.den
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_unit()
    }

    pub fn to_integer(&self) -> Option<GaussianInt> {
        self.is_integral().then(|| self.num.clone())
    }

    /// `|self|^2` as an exact fraction `(numerator, denominator)`.
    pub fn norm(&self) -> (BigInt, BigInt) {
        (self.num.norm(), self.den.norm())
    }

    /// Squared distance `|self - z|^2` as an exact fraction.
    pub fn distance_sq(&self, z: &GaussianInt) -> (BigInt, BigInt) {
        let diff = &self.num - z * &self.den;
        (diff.norm(), self.den.norm())
    }

    /// Whether `|self - z|^2 <= p / q`, decided in integers.
    pub fn within(&self, z: &GaussianInt, p: u32, q: u32) -> bool {
        let (n, d) = self.distance_sq(z);
        n * BigInt::from(q) <= d * BigInt::from(p)
    }

    pub fn recip(&self) -> Result<Self> {
        GaussianRational::new(self.den.clone(), self.num.clone())
    }
}

impl From<GaussianInt> for GaussianRational {
    fn from(g: GaussianInt) -> Self {
        GaussianRational {
            num: g,
            den: GaussianInt::one(),
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integral() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

fn reduced(num: GaussianInt, den: GaussianInt) -> GaussianRational {
    GaussianRational::new(num, den).expect("product of nonzero denominators is nonzero")
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        reduced(
            &self.num * &rhs.den + &rhs.num * &self.den,
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        reduced(
            &self.num * &rhs.den - &rhs.num * &self.den,
            &self.den * &rhs.den,
        )
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        reduced(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

/// Panics on division by zero, like integer division.
impl Div for &GaussianRational {
    type Output = GaussianRational;
    fn div(self, rhs: &GaussianRational) -> GaussianRational {
        assert!(!rhs.num.is_zero(), "division by zero Gaussian rational");
        reduced(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$method(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re: i64, im: i64) -> GaussianInt {
        GaussianInt::new(re, im)
    }

    #[test]
    fn canonical_form() {
        let a = GaussianRational::new(g(2, 2), g(0, 4)).unwrap();
        let b = GaussianRational::new(g(1, 1), g(2, 0)).unwrap();
        assert_eq!(a.den(), &g(1, 1));
        assert!(a.den().is_canonical());
        assert_eq!(a, GaussianRational::new(g(1, -1), g(2, 0)).unwrap());
        assert_ne!(a, b);
        assert_eq!(
            GaussianRational::new(g(1, 0), GaussianInt::zero()),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn field_ops() {
        let x = GaussianRational::new(g(7, 3), g(2, 1)).unwrap();
        assert_eq!(x, GaussianRational::new(g(17, -1), g(5, 0)).unwrap());
        let y = GaussianRational::new(g(1, -1), g(3, 0)).unwrap();
        let s = &x + &y;
        assert_eq!(&s - &y, x);
        assert_eq!(&(&x * &y) / &y, x);
        assert_eq!(
            &x * &x.recip().unwrap(),
            GaussianRational::from(GaussianInt::one())
        );
        assert_eq!(&x + &(-&x), GaussianRational::from(GaussianInt::zero()));
    }

    #[test]
    fn distances() {
        let half = GaussianRational::new(g(1, 1), g(2, 0)).unwrap();
        assert_eq!(
            half.distance_sq(&GaussianInt::zero()),
            (BigInt::from(1), BigInt::from(2))
        );
        assert!(half.within(&GaussianInt::zero(), 1, 2));
        assert!(!half.within(&GaussianInt::zero(), 1, 3));
    }
}
