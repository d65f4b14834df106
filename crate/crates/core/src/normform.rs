//! Normal form of a Legendre equation: square-free, pairwise coprime
//! coefficients, reached by two moves that carry solutions both ways.
//!
//! * Square-part extraction: `(alpha^2 a, beta^2 b, gamma^2 c) -> (a, b, c)`.
//!   A solution `(x, y, z)` of the reduced equation pulls back to
//!   `(beta*gamma*x, gamma*alpha*y, alpha*beta*z)`; a solution of the
//!   original pushes forward to `(alpha*x, beta*y, gamma*z)`.
//! * Prime shift: a prime `p` dividing `b` and `c` moves onto `a`, giving
//!   `(p a, b/p, c/p)`. Forward, `(x, y, z) -> (x, p y, p z)`; backward,
//!   `(x, y, z) -> (p x, y, z)`.
//!
//! Both round trips compose to scalar multiplication, so pushing a pulled
//! back solution forward and primitivizing recovers it up to a unit.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::factor::{factorize_with_ceiling, DEFAULT_FACTOR_CEILING};
use crate::gaussint::{gcd, GaussianInt};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LegendreEquation {
    pub a: GaussianInt,
    pub b: GaussianInt,
    pub c: GaussianInt,
    normal: bool,
}

impl LegendreEquation {
    pub fn new(a: GaussianInt, b: GaussianInt, c: GaussianInt) -> Result<Self> {
        if a.is_zero() || b.is_zero() || c.is_zero() {
            return Err(Error::ZeroInput("LegendreEquation"));
        }
        Ok(LegendreEquation {
            a,
            b,
            c,
            normal: false,
        })
    }

    /// Builds an equation and verifies it is in normal form.
    pub fn try_normal(a: GaussianInt, b: GaussianInt, c: GaussianInt) -> Result<Self> {
        Self::new(a, b, c)?.into_normal(DEFAULT_FACTOR_CEILING)
    }

    /// Sets the normal-form flag after checking square-freeness and pairwise
    /// coprimality.
    pub fn into_normal(mut self, ceiling: u64) -> Result<Self> {
        if !self.check_normal(ceiling)? {
            return Err(Error::NotNormal);
        }
        self.normal = true;
        Ok(self)
    }

    pub fn is_normal(&self) -> bool {
        self.normal
    }

    pub fn check_normal(&self, ceiling: u64) -> Result<bool> {
        for g in self.coefficients() {
            if !factorize_with_ceiling(g, ceiling)?.is_squarefree() {
                return Ok(false);
            }
        }
        let [a, b, c] = self.coefficients();
        Ok(gcd(a, b)?.is_unit() && gcd(b, c)?.is_unit() && gcd(a, c)?.is_unit())
    }

    pub fn coefficients(&self) -> [&GaussianInt; 3] {
        [&self.a, &self.b, &self.c]
    }

    /// `a x^2 + b y^2 + c z^2`.
    pub fn evaluate(&self, x: &GaussianInt, y: &GaussianInt, z: &GaussianInt) -> GaussianInt {
        &self.a * x.square() + &self.b * y.square() + &self.c * z.square()
    }

    pub fn is_solved_by(&self, sol: &Solution) -> bool {
        self.evaluate(&sol.x, &sol.y, &sol.z).is_zero()
    }

    fn with_coefficients(&self, [a, b, c]: [GaussianInt; 3]) -> Self {
        LegendreEquation {
            a,
            b,
            c,
            normal: false,
        }
    }
}

impl fmt::Display for LegendreEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})x^2 + ({})y^2 + ({})z^2 = 0", self.a, self.b, self.c)
    }
}

/// A nontrivial triple `(x, y, z)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Solution {
    pub x: GaussianInt,
    pub y: GaussianInt,
    pub z: GaussianInt,
}

impl Solution {
    pub fn new(x: GaussianInt, y: GaussianInt, z: GaussianInt) -> Result<Self> {
        if x.is_zero() && y.is_zero() && z.is_zero() {
            return Err(Error::TrivialSolution);
        }
        Ok(Solution { x, y, z })
    }

    pub fn components(&self) -> [&GaussianInt; 3] {
        [&self.x, &self.y, &self.z]
    }

    pub fn content(&self) -> GaussianInt {
        let g = gcd(&self.x, &self.y).unwrap_or_else(|_| GaussianInt::zero());
        if g.is_zero() {
            self.z.canonical_associate().expect("nontrivial")
        } else {
            gcd(&g, &self.z).expect("g is nonzero")
        }
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_unit()
    }

    pub fn is_pairwise_coprime(&self) -> bool {
        let unit =
            |g: &GaussianInt, h: &GaussianInt| gcd(g, h).map(|d| d.is_unit()).unwrap_or(false);
        unit(&self.x, &self.y) && unit(&self.y, &self.z) && unit(&self.x, &self.z)
    }

    pub fn scale(&self, k: &GaussianInt) -> Solution {
        Solution {
            x: &self.x * k,
            y: &self.y * k,
            z: &self.z * k,
        }
    }

    /// Representative of the solution up to an overall unit and the sign of
    /// each component: the first nonzero component becomes a canonical
    /// associate, the others are put in the half plane `re > 0` or
    /// `re == 0, im > 0`.
    pub fn normalized(&self) -> Solution {
        let first = self
            .components()
            .into_iter()
            .find(|g| !g.is_zero())
            .expect("nontrivial");
        let (_, u) = first.canonical_associate_with_unit().expect("nonzero");
        let s = self.scale(&u);
        Solution {
            x: s.x.half_plane(),
            y: s.y.half_plane(),
            z: s.z.half_plane(),
        }
    }
}

impl fmt::Display for Solution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

/// Which coefficient received the shifted prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Position {
    A,
    B,
    C,
}

impl Position {
    fn index(self) -> usize {
        match self {
            Position::A => 0,
            Position::B => 1,
            Position::C => 2,
        }
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Position::A => "a",
            Position::B => "b",
            Position::C => "c",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Reduction {
    SquarePart {
        alpha: GaussianInt,
        beta: GaussianInt,
        gamma: GaussianInt,
    },
    PrimeShift {
        p: GaussianInt,
        position: Position,
    },
}

impl Reduction {
    fn is_identity(&self) -> bool {
        match self {
            Reduction::SquarePart { alpha, beta, gamma } => {
                alpha.is_unit() && beta.is_unit() && gamma.is_unit()
            }
            Reduction::PrimeShift { .. } => false,
        }
    }

    /// Coefficients before this reduction, given those after it.
    fn undo_coefficients(&self, [a, b, c]: [GaussianInt; 3]) -> [GaussianInt; 3] {
        match self {
            Reduction::SquarePart { alpha, beta, gamma } => {
                [a * alpha.square(), b * beta.square(), c * gamma.square()]
            }
            Reduction::PrimeShift { p, position } => {
                let mut out = [a, b, c];
                for (k, coef) in out.iter_mut().enumerate() {
                    *coef = if k == position.index() {
                        coef.div_exact(p).expect("shifted prime divides its target")
                    } else {
                        &*coef * p
                    };
                }
                out
            }
        }
    }

    /// Maps a solution of the reduced equation to one of the equation
    /// before this reduction.
    fn pull(&self, sol: &Solution) -> Solution {
        match self {
            Reduction::SquarePart { alpha, beta, gamma } => Solution {
                x: beta * gamma * &sol.x,
                y: gamma * alpha * &sol.y,
                z: alpha * beta * &sol.z,
            },
            Reduction::PrimeShift { p, position } => {
                let mut s = sol.clone();
                match position {
                    Position::A => s.x = &s.x * p,
                    Position::B => s.y = &s.y * p,
                    Position::C => s.z = &s.z * p,
                }
                s
            }
        }
    }

    /// Maps a solution of the equation before this reduction to one of the
    /// reduced equation.
    fn push(&self, sol: &Solution) -> Solution {
        match self {
            Reduction::SquarePart { alpha, beta, gamma } => Solution {
                x: alpha * &sol.x,
                y: beta * &sol.y,
                z: gamma * &sol.z,
            },
            Reduction::PrimeShift { p, position } => {
                let mut s = sol.scale(p);
                match position {
                    Position::A => s.x = sol.x.clone(),
                    Position::B => s.y = sol.y.clone(),
                    Position::C => s.z = sol.z.clone(),
                }
                s
            }
        }
    }
}

impl fmt::Display for Reduction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reduction::SquarePart { alpha, beta, gamma } => write!(f, "SQ {alpha} {beta} {gamma}"),
            Reduction::PrimeShift { p, position } => write!(f, "PS {p} {position}"),
        }
    }
}

impl FromStr for Reduction {
    type Err = Error;

    fn from_str(line: &str) -> Result<Self> {
        let err = || Error::Parse(line.to_string());
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields.as_slice() {
            ["SQ", a, b, c] => Ok(Reduction::SquarePart {
                alpha: a.parse()?,
                beta: b.parse()?,
                gamma: c.parse()?,
            }),
            ["PS", p, pos] => {
                let position = match *pos {
                    "a" => Position::A,
                    "b" => Position::B,
                    "c" => Position::C,
                    _ => return Err(err()),
                };
                Ok(Reduction::PrimeShift {
                    p: p.parse()?,
                    position,
                })
            }
            _ => Err(err()),
        }
    }
}

/// Reductions in the order they were applied to the original equation.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct NormalizationTrace {
    pub records: Vec<Reduction>,
}

impl NormalizationTrace {
    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Rebuilds the original coefficients from the normal ones.
    pub fn replay(&self, normal: &LegendreEquation) -> LegendreEquation {
        let coeffs = self.records.iter().rev().fold(
            [normal.a.clone(), normal.b.clone(), normal.c.clone()],
            |acc, r| r.undo_coefficients(acc),
        );
        normal.with_coefficients(coeffs)
    }
}

impl fmt::Display for NormalizationTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.records {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

impl FromStr for NormalizationTrace {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let records = s
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(str::parse)
            .collect::<Result<_>>()?;
        Ok(NormalizationTrace { records })
    }
}

/// Splits `g` as `s^2 * r` with `r` square-free and `s` a canonical
/// associate. Units stay in `r`.
fn square_part(g: &GaussianInt, ceiling: u64) -> Result<(GaussianInt, GaussianInt)> {
    let f = factorize_with_ceiling(g, ceiling)?;
    let mut s = GaussianInt::one();
    let mut r = f.unit.clone();
    for (p, e) in &f.factors {
        for _ in 0..e / 2 {
            s *= p;
        }
        if e % 2 == 1 {
            r *= p;
        }
    }
    let (s, u) = s.canonical_associate_with_unit()?;
    // s = u * s_old, so s_old^2 = s^2 * u^-2 and the factor u^-2 = u^2
    // (a sign) moves into r.
    r *= u.square();
    debug_assert_eq!(&(s.square() * &r), g);
    Ok((s, r))
}

pub fn squarefree_reduce(eq: &LegendreEquation) -> Result<(LegendreEquation, Reduction)> {
    squarefree_reduce_with_ceiling(eq, DEFAULT_FACTOR_CEILING)
}

pub fn squarefree_reduce_with_ceiling(
    eq: &LegendreEquation,
    ceiling: u64,
) -> Result<(LegendreEquation, Reduction)> {
    let (alpha, a) = square_part(&eq.a, ceiling)?;
    let (beta, b) = square_part(&eq.b, ceiling)?;
    let (gamma, c) = square_part(&eq.c, ceiling)?;
    Ok((
        eq.with_coefficients([a, b, c]),
        Reduction::SquarePart { alpha, beta, gamma },
    ))
}

pub fn coprime_reduce(eq: &LegendreEquation) -> Result<(LegendreEquation, Vec<Reduction>)> {
    coprime_reduce_with_ceiling(eq, DEFAULT_FACTOR_CEILING)
}

/// Moves shared primes until the coefficients are pairwise coprime. Each
/// shift divides `N(abc)` by `N(p) >= 2`, so the loop terminates.
pub fn coprime_reduce_with_ceiling(
    eq: &LegendreEquation,
    ceiling: u64,
) -> Result<(LegendreEquation, Vec<Reduction>)> {
    let mut coeffs = [eq.a.clone(), eq.b.clone(), eq.c.clone()];
    let mut recs = Vec::new();
    'outer: loop {
        for (target, position) in [(0, Position::A), (1, Position::B), (2, Position::C)] {
            let (j, k) = match target {
                0 => (1, 2),
                1 => (0, 2),
                _ => (0, 1),
            };
            let common = gcd(&coeffs[j], &coeffs[k])?;
            if common.is_unit() {
                continue;
            }
            let p = factorize_with_ceiling(&common, ceiling)?.factors[0]
                .0
                .clone();
            coeffs[j] = coeffs[j].div_exact(&p).expect("p | gcd");
            coeffs[k] = coeffs[k].div_exact(&p).expect("p | gcd");
            coeffs[target] = &coeffs[target] * &p;
            recs.push(Reduction::PrimeShift { p, position });
            continue 'outer;
        }
        break;
    }
    Ok((eq.with_coefficients(coeffs), recs))
}

pub fn normalize(eq: &LegendreEquation) -> Result<(LegendreEquation, NormalizationTrace)> {
    normalize_with_ceiling(eq, DEFAULT_FACTOR_CEILING)
}

/// Alternates square-part extraction and prime shifts until neither
/// changes the equation. A shift can put `p^2` on its target, hence the
/// loop.
pub fn normalize_with_ceiling(
    eq: &LegendreEquation,
    ceiling: u64,
) -> Result<(LegendreEquation, NormalizationTrace)> {
    let mut cur = eq.clone();
    let mut trace = NormalizationTrace::default();
    loop {
        let (next, sq) = squarefree_reduce_with_ceiling(&cur, ceiling)?;
        let (next, shifts) = coprime_reduce_with_ceiling(&next, ceiling)?;
        let changed = !sq.is_identity() || !shifts.is_empty();
        if !sq.is_identity() {
            trace.records.push(sq);
        }
        trace.records.extend(shifts);
        cur = next;
        if !changed {
            break;
        }
    }
    Ok((cur.into_normal(ceiling)?, trace))
}

/// Maps a solution of the normal equation back to the original one.
pub fn pull_back(
    normal: &LegendreEquation,
    sol: &Solution,
    trace: &NormalizationTrace,
) -> Result<Solution> {
    if !normal.is_solved_by(sol) {
        return Err(Error::Precondition(format!(
            "{sol} does not solve {normal}"
        )));
    }
    let mut eq = normal.clone();
    let mut cur = sol.clone();
    for r in trace.records.iter().rev() {
        eq = eq.with_coefficients(r.undo_coefficients([eq.a.clone(), eq.b.clone(), eq.c.clone()]));
        cur = r.pull(&cur);
        if !eq.is_solved_by(&cur) {
            return Err(Error::Internal(format!(
                "pull_back through `{r}` broke the solution"
            )));
        }
    }
    Ok(cur)
}

/// Maps a solution of the original equation to one of the normal equation.
pub fn push_forward(
    original: &LegendreEquation,
    sol: &Solution,
    trace: &NormalizationTrace,
) -> Result<Solution> {
    if !original.is_solved_by(sol) {
        return Err(Error::Precondition(format!(
            "{sol} does not solve {original}"
        )));
    }
    let mut coeffs = [original.a.clone(), original.b.clone(), original.c.clone()];
    let mut cur = sol.clone();
    for r in &trace.records {
        coeffs = apply_coefficients(r, coeffs)?;
        cur = r.push(&cur);
        let eq = original.with_coefficients(coeffs.clone());
        if !eq.is_solved_by(&cur) {
            return Err(Error::Internal(format!(
                "push_forward through `{r}` broke the solution"
            )));
        }
    }
    Ok(cur)
}

fn apply_coefficients(r: &Reduction, [a, b, c]: [GaussianInt; 3]) -> Result<[GaussianInt; 3]> {
    let div = |g: &GaussianInt, d: &GaussianInt| {
        g.div_exact(d)
            .ok_or_else(|| Error::Internal(format!("trace record `{r}` does not divide {g}")))
    };
    Ok(match r {
        Reduction::SquarePart { alpha, beta, gamma } => [
            div(&a, &alpha.square())?,
            div(&b, &beta.square())?,
            div(&c, &gamma.square())?,
        ],
        Reduction::PrimeShift { p, position } => {
            let mut out = [a, b, c];
            for (k, coef) in out.iter_mut().enumerate() {
                *coef = if k == position.index() {
                    &*coef * p
                } else {
                    div(coef, p)?
                };
            }
            out
        }
    })
}

/// Divides out `gcd(x, y, z)`.
pub fn primitivize(sol: &Solution) -> Solution {
    let g = sol.content();
    Solution {
        x: sol.x.div_exact(&g).expect("content divides x"),
        y: sol.y.div_exact(&g).expect("content divides y"),
        z: sol.z.div_exact(&g).expect("content divides z"),
    }
}

/// [`primitivize`] for a solution of `eq`. For a normal-form equation the
/// result must have pairwise coprime components; anything else is reported
/// as an internal fault.
pub fn primitivize_in(eq: &LegendreEquation, sol: &Solution) -> Result<Solution> {
    let p = primitivize(sol);
    if eq.is_normal() && eq.is_solved_by(&p) && !p.is_pairwise_coprime() {
        return Err(Error::Internal(format!(
            "primitive solution {p} of normal equation {eq} is not pairwise coprime"
        )));
    }
    Ok(p)
}
