//! Exact arithmetic in the Gaussian integers `Z[i]` and the Gaussian
//! rationals `Q(i)`.
//!
//! Components are arbitrary precision. Magnitudes are only ever exposed as
//! the exact norm `re^2 + im^2`; nothing in this module touches floating
//! point.

mod rational;
mod text;

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use rational::GaussianRational;

/// A Gaussian integer `re + im*i`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct GaussianInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussianInt {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        GaussianInt {
            re: re.into(),
            im: im.into(),
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::new(1, 0)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::new(0, 1)
    }

    /// The ramified prime `1 + i`, whose square is an associate of 2.
    pub fn one_plus_i() -> Self {
        Self::new(1, 1)
    }

    /// The four units in the order `1, i, -1, -i`.
    pub fn units() -> [GaussianInt; 4] {
        [
            Self::new(1, 0),
            Self::new(0, 1),
            Self::new(-1, 0),
            Self::new(0, -1),
        ]
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    /// `re^2 + im^2`. The complex modulus is the square root of this.
    pub fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn conj(&self) -> Self {
        GaussianInt {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    /// Multiplication by `i`.
    pub fn rotate(&self) -> Self {
        GaussianInt {
            re: -&self.im,
            im: self.re.clone(),
        }
    }

    pub fn square(&self) -> Self {
        self * self
    }

    /// Divisibility by `1 + i`, i.e. `re + im` even.
    pub fn is_even(&self) -> bool {
        (&self.re + &self.im).is_even()
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &GaussianInt) -> Option<GaussianInt> {
        if d.is_zero() {
            return None;
        }
        let n = d.norm();
        let p = self * d.conj();
        let (qr, rr) = p.re.div_rem(&n);
        let (qi, ri) = p.im.div_rem(&n);
        if rr.is_zero() && ri.is_zero() {
            Some(GaussianInt { re: qr, im: qi })
        } else {
            None
        }
    }

    /// Whether `self` divides `other`. Zero divides only zero.
    pub fn divides(&self, other: &GaussianInt) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_exact(self).is_some()
    }

    /// Returns `(u * self, u)` where `u` is the unit putting `self` in the
    /// quadrant `re > 0, im >= 0`.
    pub fn canonical_associate_with_unit(&self) -> Result<(GaussianInt, GaussianInt)> {
        if self.is_zero() {
            return Err(Error::ZeroInput("canonical_associate"));
        }
        let mut g = self.clone();
        for u in Self::units() {
            if g.re.is_positive() && !g.im.is_negative() {
                return Ok((g, u));
            }
            g = g.rotate();
        }
        unreachable!("a nonzero Gaussian integer has an associate in every quadrant")
    }

    pub fn canonical_associate(&self) -> Result<GaussianInt> {
        self.canonical_associate_with_unit().map(|(g, _)| g)
    }

    pub fn is_canonical(&self) -> bool {
        self.re.is_positive() && !self.im.is_negative()
    }

    /// Square root in `Z[i]`, if `self` is a perfect square. The root
    /// returned has `re > 0`, or `re == 0` and `im >= 0`.
    pub fn sqrt_exact(&self) -> Option<GaussianInt> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let n = exact_isqrt(&self.norm())?;
        // (u + vi)^2 = (u^2 - v^2) + 2uv i, and |w|^2 = u^2 + v^2 = n.
        let two = BigInt::from(2);
        let (u2, r1) = (&n + &self.re).div_rem(&two);
        let (v2, r2) = (&n - &self.re).div_rem(&two);
        if !r1.is_zero() || !r2.is_zero() {
            return None;
        }
        let u = exact_isqrt(&u2)?;
        let mut v = exact_isqrt(&v2)?;
        if self.im.is_negative() {
            v = -v;
        }
        let w = GaussianInt { re: u, im: v };
        debug_assert_eq!(&w.square(), self);
        Some(w.half_plane())
    }

    /// The representative of `{self, -self}` with `re > 0`, or `re == 0`
    /// and `im >= 0`.
    pub fn half_plane(self) -> GaussianInt {
        if self.re.is_negative() || (self.re.is_zero() && self.im.is_negative()) {
            -self
        } else {
            self
        }
    }

    pub(crate) fn lex_key(&self) -> (&BigInt, &BigInt) {
        (&self.re, &self.im)
    }
}

fn exact_isqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

impl fmt::Debug for GaussianInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<i64> for GaussianInt {
    fn from(v: i64) -> Self {
        GaussianInt::new(v, 0)
    }
}

impl From<BigInt> for GaussianInt {
    fn from(v: BigInt) -> Self {
        GaussianInt {
            re: v,
            im: BigInt::zero(),
        }
    }
}

impl Neg for GaussianInt {
    type Output = GaussianInt;
    fn neg(self) -> GaussianInt {
        GaussianInt {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Neg for &GaussianInt {
    type Output = GaussianInt;
    fn neg(self) -> GaussianInt {
        GaussianInt {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

fn add_ref(a: &GaussianInt, b: &GaussianInt) -> GaussianInt {
    GaussianInt {
        re: &a.re + &b.re,
        im: &a.im + &b.im,
    }
}

fn sub_ref(a: &GaussianInt, b: &GaussianInt) -> GaussianInt {
    GaussianInt {
        re: &a.re - &b.re,
        im: &a.im - &b.im,
    }
}

fn mul_ref(a: &GaussianInt, b: &GaussianInt) -> GaussianInt {
    GaussianInt {
        re: &a.re * &b.re - &a.im * &b.im,
        im: &a.re * &b.im + &a.im * &b.re,
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $imp:ident, $assign_trait:ident, $assign_method:ident) => {
        impl $trait<&GaussianInt> for &GaussianInt {
            type Output = GaussianInt;
            fn $method(self, rhs: &GaussianInt) -> GaussianInt {
                $imp(self, rhs)
            }
        }
        impl $trait<GaussianInt> for GaussianInt {
            type Output = GaussianInt;
            fn $method(self, rhs: GaussianInt) -> GaussianInt {
                $imp(&self, &rhs)
            }
        }
        impl $trait<&GaussianInt> for GaussianInt {
            type Output = GaussianInt;
            fn $method(self, rhs: &GaussianInt) -> GaussianInt {
                $imp(&self, rhs)
            }
        }
        impl $trait<GaussianInt> for &GaussianInt {
            type Output = GaussianInt;
            fn $method(self, rhs: GaussianInt) -> GaussianInt {
                $imp(self, &rhs)
            }
        }
        impl $assign_trait<&GaussianInt> for GaussianInt {
            fn $assign_method(&mut self, rhs: &GaussianInt) {
                *self = $imp(self, rhs);
            }
        }
        impl $assign_trait<GaussianInt> for GaussianInt {
            fn $assign_method(&mut self, rhs: GaussianInt) {
                *self = $imp(self, &rhs);
            }
        }
    };
}

forward_binop!(Add, add, add_ref, AddAssign, add_assign);
forward_binop!(Sub, sub, sub_ref, SubAssign, sub_assign);
forward_binop!(Mul, mul, mul_ref, MulAssign, mul_assign);

/// `floor(p / d + 1/2)` for `d > 0`: rounds to nearest, ties toward +inf.
fn round_half_up(p: &BigInt, d: &BigInt) -> BigInt {
    let two = BigInt::from(2);
    (p * &two + d).div_floor(&(d * &two))
}

/// Nearest Gaussian integer to `q`, rounding each coordinate independently
/// with ties toward +inf. The result satisfies `|q - Z|^2 <= 1/2`.
pub fn nearest_lattice(q: &GaussianRational) -> GaussianInt {
    round_quotient(q.num(), q.den())
}

/// Nearest-lattice rounding of `n / d` for `d != 0`, without reducing the
/// fraction first.
fn round_quotient(n: &GaussianInt, d: &GaussianInt) -> GaussianInt {
    let p = n * d.conj();
    let m = d.norm();
    GaussianInt {
        re: round_half_up(&p.re, &m),
        im: round_half_up(&p.im, &m),
    }
}

/// Nearest Gaussian integer to `q` lying in the residue class of `class`
/// modulo `1 + i`. The admissible points form a square lattice of edge
/// `sqrt(2)`, so `|q - Z|^2 <= 1`. Equidistant candidates resolve to the
/// lexicographically smallest `(re, im)`.
pub fn nearest_in_class(q: &GaussianRational, class: &GaussianInt) -> GaussianInt {
    let want_even = class.is_even();
    let p = q.num() * q.den().conj();
    let d = q.den().norm();
    let fx = p.re.div_floor(&d);
    let fy = p.im.div_floor(&d);

    // q lies in [fx, fx+1) x [fy, fy+1) and the covering radius is 1, so
    // the answer is inside the 4x4 box of lattice points around that cell.
    let mut best: Option<(BigInt, GaussianInt)> = None;
    for dx in -1i32..=2 {
        for dy in -1i32..=2 {
            let cand = GaussianInt {
                re: &fx + dx,
                im: &fy + dy,
            };
            if cand.is_even() != want_even {
                continue;
            }
            // Squared distance scaled by d^2: N(p - cand*d).
            let diff = GaussianInt {
                re: &p.re - &cand.re * &d,
                im: &p.im - &cand.im * &d,
            };
            let dist = diff.norm();
            let better = match &best {
                None => true,
                Some((bd, bz)) => dist < *bd || (dist == *bd && cand.lex_key() < bz.lex_key()),
            };
            if better {
                best = Some((dist, cand));
            }
        }
    }
    best.expect("every 4x4 box contains both residue classes").1
}

/// Euclidean division: `n = q*d + r` with `q` the nearest-lattice rounding
/// of `n/d`, hence `2 * N(r) <= N(d)`.
pub fn euclid_divmod(n: &GaussianInt, d: &GaussianInt) -> Result<(GaussianInt, GaussianInt)> {
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let q = round_quotient(n, d);
    let r = n - &q * d;
    Ok((q, r))
}

/// Greatest common divisor, normalized to its canonical associate.
pub fn gcd(g: &GaussianInt, h: &GaussianInt) -> Result<GaussianInt> {
    if g.is_zero() && h.is_zero() {
        return Err(Error::GcdUndefined);
    }
    let (mut a, mut b) = (g.clone(), h.clone());
    while !b.is_zero() {
        let (_, r) = euclid_divmod(&a, &b)?;
        a = b;
        b = r;
    }
    a.canonical_associate()
}

/// Extended Euclid: returns `(g, s, t)` with `s*a + t*b = g`, `g` a gcd of
/// `a` and `b` (not normalized).
pub fn extended_gcd(
    a: &GaussianInt,
    b: &GaussianInt,
) -> Result<(GaussianInt, GaussianInt, GaussianInt)> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::GcdUndefined);
    }
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (GaussianInt::one(), GaussianInt::zero());
    let (mut old_t, mut t) = (GaussianInt::zero(), GaussianInt::one());
    while !r.is_zero() {
        let (q, rem) = euclid_divmod(&old_r, &r)?;
        old_r = std::mem::replace(&mut r, rem);
        let ns = &old_s - &q * &s;
        old_s = std::mem::replace(&mut s, ns);
        let nt = &old_t - &q * &t;
        old_t = std::mem::replace(&mut t, nt);
    }
    Ok((old_r, old_s, old_t))
}

/// Solves `y0*X - x0*Y = d` for coprime `x0, y0`.
///
/// The general solution is `(X + k*x0, Y + k*y0)`. The returned pair picks
/// `k` to minimize `N(Y)` (rounding `-Y/y0`); when `y0 = 0`, `x0` is a unit
/// and `N(X)` is minimized instead, which yields `X = 0`.
pub fn bezout(
    x0: &GaussianInt,
    y0: &GaussianInt,
    d: &GaussianInt,
) -> Result<(GaussianInt, GaussianInt)> {
    let (g, s, t) = extended_gcd(y0, x0)?;
    if !g.is_unit() {
        return Err(Error::NotCoprime(format!("gcd({x0}, {y0}) = {g}")));
    }
    // s*y0 + t*x0 = g, and g^-1 = conj(g) for a unit.
    let scale = g.conj() * d;
    let mut x = s * &scale;
    let mut y = -(t * &scale);

    if !y0.is_zero() {
        let k = round_quotient(&-&y, y0);
        x += &k * x0;
        y += &k * y0;
    } else {
        let k = round_quotient(&-&x, x0);
        x += &k * x0;
    }
    debug_assert_eq!(&(y0 * &x - x0 * &y), d);
    Ok((x, y))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re: i64, im: i64) -> GaussianInt {
        GaussianInt::new(re, im)
    }

    fn q(n: GaussianInt, d: GaussianInt) -> GaussianRational {
        GaussianRational::new(n, d).unwrap()
    }

    #[test]
    fn ring_ops_examples() {
        assert_eq!(g(2, 2) * g(2, 2), g(0, 8));
        assert_eq!(g(5, -3) + GaussianInt::zero(), g(5, -3));
        assert_eq!(g(1, 1) * g(1, -1), g(2, 0));
        assert_eq!(-g(1, -2), g(-1, 2));
        assert_eq!(g(3, 4).conj(), g(3, -4));
        assert_eq!(g(3, 4) - g(1, 1), g(2, 3));
    }

    #[test]
    fn norm_examples() {
        assert_eq!(g(2, 2).norm(), BigInt::from(8));
        assert_eq!(GaussianInt::zero().norm(), BigInt::zero());
        assert_eq!(g(0, 7).norm(), BigInt::from(49));
    }

    #[test]
    fn divmod_examples() {
        let (qq, r) = euclid_divmod(&g(5, 0), &g(1, 1)).unwrap();
        assert!(qq == g(3, -2) || qq == g(2, -2));
        assert!(r.norm() <= BigInt::one());
        assert_eq!(&qq * g(1, 1) + &r, g(5, 0));

        let x = g(-4, 17);
        assert_eq!(
            euclid_divmod(&x, &GaussianInt::one()).unwrap(),
            (x, GaussianInt::zero())
        );

        let d = g(3, -2);
        let n = g(1, 1) * &d + GaussianInt::i();
        let (qq, r) = euclid_divmod(&n, &d).unwrap();
        assert_eq!(r.norm(), BigInt::one());
        assert_eq!(qq * &d + r, n);

        assert_eq!(
            euclid_divmod(&g(1, 0), &GaussianInt::zero()),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(&g(1, 1), &g(2, 0)).unwrap(), g(1, 1));
        assert_eq!(
            gcd(&g(-3, -5), &GaussianInt::zero()).unwrap(),
            g(5, -3).canonical_associate().unwrap()
        );
        assert_eq!(
            gcd(&g(-3, -5), &GaussianInt::zero()).unwrap(),
            g(3, 5).canonical_associate().unwrap()
        );
        assert_eq!(gcd(&g(3, 1), &g(3, -1)).unwrap(), g(1, 1));
        assert_eq!(
            gcd(&GaussianInt::zero(), &GaussianInt::zero()),
            Err(Error::GcdUndefined)
        );
    }

    #[test]
    fn gcd_3_plus_i_matches_divisor_enumeration() {
        // Common divisors of 3+i and 3-i: enumerate every d with N(d) | 10.
        let (a, b) = (g(3, 1), g(3, -1));
        let mut best = GaussianInt::one();
        for re in -4..=4i64 {
            for im in -4..=4i64 {
                let d = g(re, im);
                if !d.is_zero() && d.divides(&a) && d.divides(&b) && d.norm() > best.norm() {
                    best = d;
                }
            }
        }
        assert_eq!(best.norm(), BigInt::from(2));
        assert_eq!(gcd(&a, &b).unwrap(), best.canonical_associate().unwrap());
    }

    #[test]
    fn canonical_associate_examples() {
        assert_eq!(g(-2, 0).canonical_associate().unwrap(), g(2, 0));
        assert_eq!(GaussianInt::i().canonical_associate().unwrap(), g(1, 0));
        assert_eq!(g(-1, -1).canonical_associate().unwrap(), g(1, 1));
        assert_eq!(g(0, -3).canonical_associate().unwrap(), g(3, 0));
        assert_eq!(
            GaussianInt::zero().canonical_associate(),
            Err(Error::ZeroInput("canonical_associate"))
        );
        let (c, u) = g(-2, 5).canonical_associate_with_unit().unwrap();
        assert_eq!(c, u * g(-2, 5));
    }

    #[test]
    fn bezout_examples() {
        let c = g(3, -2);
        assert_eq!(
            bezout(&g(1, 0), &g(1, 0), &c).unwrap(),
            (c, GaussianInt::zero())
        );

        let (x, y) = bezout(&g(1, 0), &GaussianInt::zero(), &g(5, 0)).unwrap();
        assert_eq!(y, g(-5, 0));
        assert_eq!(x, GaussianInt::zero());

        let (x0, y0, d) = (g(2, 2), g(1, 0), g(7, 0));
        let (x, y) = bezout(&x0, &y0, &d).unwrap();
        assert_eq!(&y0 * &x - &x0 * &y, d);

        assert!(matches!(
            bezout(&g(2, 0), &g(1, 1), &g(1, 0)),
            Err(Error::NotCoprime(_))
        ));
    }

    #[test]
    fn nearest_lattice_examples() {
        assert_eq!(nearest_lattice(&q(g(1, 2), g(2, 0))), g(1, 1));
        assert_eq!(nearest_lattice(&GaussianRational::from(g(3, 4))), g(3, 4));
        assert_eq!(nearest_lattice(&q(g(7, 3), g(2, 1))), g(3, 0));
        // Ties go toward +inf in both coordinates, including negatives.
        assert_eq!(nearest_lattice(&q(g(-1, -1), g(2, 0))), g(0, 0));
    }

    #[test]
    fn nearest_in_class_examples() {
        let zero = GaussianRational::from(GaussianInt::zero());
        let z = nearest_in_class(&zero, &GaussianInt::one());
        assert!(z.is_unit());
        assert_eq!(z, g(-1, 0));

        let z = nearest_in_class(&GaussianRational::from(g(3, 4)), &GaussianInt::one());
        assert_eq!(z, g(3, 4));

        // 1/2 with class 0: candidates 0, 1+i, 1-i at squared distances
        // 1/4, 5/4, 5/4.
        let z = nearest_in_class(&q(g(1, 0), g(2, 0)), &GaussianInt::zero());
        assert_eq!(z, GaussianInt::zero());
    }

    #[test]
    fn is_even_examples() {
        assert!(g(2, 0).is_even());
        assert!(!g(1, 2).is_even());
        assert!(GaussianInt::zero().is_even());
        assert!(g(1, 1).is_even());
    }

    #[test]
    fn sqrt_exact_roundtrip() {
        for re in -12..=12i64 {
            for im in -12..=12i64 {
                let w = g(re, im);
                let s = w.square().sqrt_exact().unwrap();
                assert!(s == w || s == -&w);
            }
        }
        assert_eq!(g(0, 1).sqrt_exact(), None);
        assert_eq!(g(3, 0).sqrt_exact(), None);
        assert_eq!(g(-1, 0).sqrt_exact(), Some(g(0, 1)));
    }
}
