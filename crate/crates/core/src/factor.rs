//! Desk-scale factorization in `Z[i]`, square-freeness, and quadratic
//! residuosity by exhaustive search over a complete residue system.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::gaussint::{gcd, GaussianInt};

/// Default cap on the trial divisor used when factoring a norm.
pub const DEFAULT_FACTOR_CEILING: u64 = 100_000_000;

/// `unit * prod(prime^exponent)`, primes as canonical associates sorted by
/// `(norm, re, im)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: GaussianInt,
    pub factors: Vec<(GaussianInt, u32)>,
}

impl Factorization {
    pub fn product(&self) -> GaussianInt {
        self.factors.iter().fold(self.unit.clone(), |acc, (p, e)| {
            (0..*e).fold(acc, |acc, _| acc * p)
        })
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }
}

/// Rational prime factorization of `n > 0` by trial division. Fails once the
/// trial divisor would pass `ceiling` with an unfactored cofactor left.
fn factor_rational(n: &BigInt, ceiling: u64) -> Result<Vec<(BigInt, u32)>> {
    let mut rem = n.clone();
    let mut out = Vec::new();
    let mut d: u64 = 2;
    loop {
        let dd = BigInt::from(d);
        if &dd * &dd > rem {
            break;
        }
        if d > ceiling {
            return Err(Error::FactorLimit {
                norm: n.clone(),
                ceiling,
            });
        }
        let mut e = 0;
        loop {
            let (q, r) = rem.div_rem(&dd);
            if !r.is_zero() {
                break;
            }
            rem = q;
            e += 1;
        }
        if e > 0 {
            out.push((dd, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if !rem.is_one() {
        out.push((rem, 1));
    }
    Ok(out)
}

/// A Gaussian prime of norm `p`, for a rational prime `p = 1 mod 4`.
fn split_prime(p: &BigInt) -> GaussianInt {
    let minus_one = p - 1u32;
    let exp = &minus_one / 4u32;
    // Any quadratic non-residue c gives c^((p-1)/4) as a square root of -1.
    let mut c = BigInt::from(2);
    let root = loop {
        let x = c.modpow(&exp, p);
        if (&x * &x) % p == minus_one {
            break x;
        }
        c += 1u32;
    };
    gcd(&GaussianInt::from(p.clone()), &GaussianInt::new(root, 1)).expect("p is nonzero")
}

pub fn factorize(g: &GaussianInt) -> Result<Factorization> {
    factorize_with_ceiling(g, DEFAULT_FACTOR_CEILING)
}

/// Factors `g` by factoring `N(g)` over the integers, then lifting each
/// rational prime: 2 ramifies as `(1+i)^2`, `p = 3 mod 4` stays inert, and
/// `p = 1 mod 4` splits into two conjugate primes.
pub fn factorize_with_ceiling(g: &GaussianInt, ceiling: u64) -> Result<Factorization> {
    if g.is_zero() {
        return Err(Error::ZeroInput("factorize"));
    }
    let mut rest = g.clone();
    let mut factors = Vec::new();
    let mut take = |prime: GaussianInt, rest: &mut GaussianInt| {
        let mut e = 0;
        while let Some(q) = rest.div_exact(&prime) {
            *rest = q;
            e += 1;
        }
        if e > 0 {
            factors.push((prime, e));
        }
    };
    for (p, _) in factor_rational(&g.norm(), ceiling)? {
        match p.mod_floor(&BigInt::from(4)).to_u32() {
            Some(1) => {
                let pi = split_prime(&p);
                let pi_bar = pi.conj().canonical_associate()?;
                take(pi, &mut rest);
                take(pi_bar, &mut rest);
            }
            Some(3) => take(GaussianInt::from(p), &mut rest),
            _ => take(GaussianInt::one_plus_i(), &mut rest),
        }
    }
    debug_assert!(rest.is_unit(), "leftover {rest} after factoring {g}");
    factors.sort_by(|(a, _), (b, _)| (a.norm(), &a.re, &a.im).cmp(&(b.norm(), &b.re, &b.im)));
    Ok(Factorization {
        unit: rest,
        factors,
    })
}

pub fn is_squarefree(g: &GaussianInt) -> Result<bool> {
    Ok(factorize(g)?.is_squarefree())
}

pub fn is_squarefree_with_ceiling(g: &GaussianInt, ceiling: u64) -> Result<bool> {
    Ok(factorize_with_ceiling(g, ceiling)?.is_squarefree())
}

/// A complete residue system modulo `m = p + qi`:
/// `{s + ti : 0 <= s < N(m)/k, 0 <= t < k}` with `k = gcd(p, q)`.
pub fn residue_system(m: &GaussianInt) -> Result<Vec<GaussianInt>> {
    if m.is_zero() {
        return Err(Error::ZeroInput("residue_system"));
    }
    let k = m.re.abs().gcd(&m.im.abs());
    let n = m.norm();
    let rows = (&n / &k)
        .to_u64()
        .ok_or_else(|| Error::Precondition(format!("modulus {m} too large to enumerate")))?;
    let cols = k.to_u64().expect("k <= rows");
    let mut out = Vec::with_capacity((rows * cols) as usize);
    for t in 0..cols {
        for s in 0..rows {
            out.push(GaussianInt::new(s, t));
        }
    }
    Ok(out)
}

/// Some `w` with `w^2 = n (mod m)`, or `None` when `n` is a non-residue.
///
/// `n` and `m` must be coprime; the criterion is not defined otherwise and
/// the call is refused.
pub fn square_root_mod(n: &GaussianInt, m: &GaussianInt) -> Result<Option<GaussianInt>> {
    if m.is_zero() {
        return Err(Error::ZeroInput("is_quadratic_residue"));
    }
    let g = gcd(n, m)?;
    if !g.is_unit() {
        return Err(Error::NotCoprime(format!("gcd({n}, {m}) = {g}")));
    }
    if m.is_unit() {
        return Ok(Some(GaussianInt::zero()));
    }
    Ok(residue_system(m)?
        .into_iter()
        .find(|w| m.divides(&(w.square() - n))))
}

pub fn is_quadratic_residue(n: &GaussianInt, m: &GaussianInt) -> Result<bool> {
    square_root_mod(n, m).map(|w| w.is_some())
}
