//! Descent to a solution with `|z|^2 <= (1 + sqrt 2) |ab|`.
//!
//! From a primitive solution `(x0, y0, z0)` of a normal-form equation and
//! parameters `(X, Y, Z)`, the line `(x0, y0, z0) + t (X, Y, Z)` meets the
//! conic again at
//!
//! ```text
//! x = x0 Q - 2 X L,   y = y0 Q - 2 Y L,   z = z0 Q - 2 Z L,
//! Q = a X^2 + b Y^2 + c Z^2,   L = a x0 X + b y0 Y + c z0 Z.
//! ```
//!
//! If `delta | c` and `delta | (y0 X - x0 Y)` all three are divisible by
//! `delta`, and
//!
//! ```text
//! z / z0 = -(c / delta) [ (Z + s)^2 + a b (y0 X - x0 Y)^2 / (c z0)^2 ],
//! s = (a x0 X + b y0 Y) / (c z0).
//! ```
//!
//! Choosing `y0 X - x0 Y = delta` and `Z` near `-s` makes the bracket small:
//!
//! * `(1+i) | c`: `delta = c/(1+i)`, `Z` the nearest lattice point, so
//!   `|Z + s|^2 <= 1/2` and `|z| <= sqrt2 |z0| (1/2 + |ab| / (2|z0|^2))`.
//! * otherwise: `y0 X - x0 Y = c`, `Z` restricted to the class mod `1+i`
//!   that makes `aX + bY + cZ` even, which adds a factor `1+i` to the
//!   divisor; `|Z + s|^2 <= 1` and `|z| <= |z0| (1 + |ab|/|z0|^2) / sqrt2`.
//!
//! Either bound is `< |z0|` exactly when `N(z0)^2 > (3 + 2 sqrt2) N(ab)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::gaussint::{
    bezout, gcd, nearest_in_class, nearest_lattice, GaussianInt, GaussianRational,
};
use crate::normform::{primitivize_in, LegendreEquation, Solution};

/// Hard ceiling on descent steps; the loop is expected to finish in far
/// fewer since `N(z)` strictly decreases.
pub const MAX_STEPS: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DescentCase {
    /// `(1+i) | c`.
    EvenC,
    /// `(1+i)` does not divide `c`.
    OddC,
}

impl fmt::Display for DescentCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DescentCase::EvenC => "EvenC",
            DescentCase::OddC => "OddC",
        })
    }
}

impl FromStr for DescentCase {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "EvenC" => Ok(DescentCase::EvenC),
            "OddC" => Ok(DescentCase::OddC),
            _ => Err(Error::Parse(s.to_string())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentStep {
    pub case: DescentCase,
    pub x_param: GaussianInt,
    pub y_param: GaussianInt,
    pub z_param: GaussianInt,
    /// The divisor applied to the unreduced triple: `c/(1+i)` or `(1+i)c`.
    pub delta: GaussianInt,
    /// `-(a x0 X + b y0 Y) / (c z0)`, the point `Z` was rounded from.
    pub t_target: GaussianRational,
    pub input: Solution,
    pub output: Solution,
}

impl DescentStep {
    /// `|t_target - Z|^2 <= 1/2` for `EvenC`; for `OddC`, `<= 1` and
    /// `aX + bY + cZ = 0 (mod 1+i)`.
    pub fn rounding_certificate(&self, eq: &LegendreEquation) -> bool {
        match self.case {
            DescentCase::EvenC => self.t_target.within(&self.z_param, 1, 2),
            DescentCase::OddC => {
                let parity = &eq.a * &self.x_param + &eq.b * &self.y_param + &eq.c * &self.z_param;
                self.t_target.within(&self.z_param, 1, 1) && parity.is_even()
            }
        }
    }

    /// Recomputes `z_out * delta` from the closed-form identity in exact
    /// rational arithmetic and compares it with the polynomial route.
    pub fn identity_certificate(&self, eq: &LegendreEquation) -> bool {
        let rhs = identity_rhs(eq, &self.input, &self.x_param, &self.y_param, &self.z_param);
        rhs == GaussianRational::from(&self.output.z * &self.delta)
    }
}

impl fmt::Display for DescentStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "STEP {} X={} Y={} Z={} delta={} z_in={} z_out={} N(z_in)={} N(z_out)={}",
            self.case,
            self.x_param,
            self.y_param,
            self.z_param,
            self.delta,
            self.input.z,
            self.output.z,
            self.input.z.norm(),
            self.output.z.norm()
        )
    }
}

/// The fields of one serialized `STEP` line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepRecord {
    pub case: DescentCase,
    pub x_param: GaussianInt,
    pub y_param: GaussianInt,
    pub z_param: GaussianInt,
    pub delta: GaussianInt,
    pub z_in: GaussianInt,
    pub z_out: GaussianInt,
    pub norm_in: BigInt,
    pub norm_out: BigInt,
}

impl FromStr for StepRecord {
    type Err = Error;

    fn from_str(line: &str) -> Result<Self> {
        let err = || Error::Parse(line.to_string());
        let mut it = line.split_whitespace();
        if it.next() != Some("STEP") {
            return Err(err());
        }
        let case = it.next().ok_or_else(err)?.parse()?;
        let mut field = |key: &str| -> Result<&str> {
            it.next()
                .and_then(|kv| kv.strip_prefix(key))
                .and_then(|v| v.strip_prefix('='))
                .ok_or_else(err)
        };
        let rec = StepRecord {
            case,
            x_param: field("X")?.parse()?,
            y_param: field("Y")?.parse()?,
            z_param: field("Z")?.parse()?,
            delta: field("delta")?.parse()?,
            z_in: field("z_in")?.parse()?,
            z_out: field("z_out")?.parse()?,
            norm_in: field("N(z_in)")?.parse().map_err(|_| err())?,
            norm_out: field("N(z_out)")?.parse().map_err(|_| err())?,
        };
        if it.next().is_some() {
            return Err(err());
        }
        Ok(rec)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentTrace {
    pub equation: LegendreEquation,
    /// The primitivized starting solution.
    pub seed: Solution,
    pub steps: Vec<DescentStep>,
    pub final_solution: Solution,
}

impl fmt::Display for DescentTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

/// The unreduced triple `(x0 Q - 2 X L, y0 Q - 2 Y L, z0 Q - 2 Z L)`.
pub fn parametric_family(
    eq: &LegendreEquation,
    sol0: &Solution,
    x: &GaussianInt,
    y: &GaussianInt,
    z: &GaussianInt,
) -> [GaussianInt; 3] {
    let q = eq.evaluate(x, y, z);
    let l = &eq.a * &sol0.x * x + &eq.b * &sol0.y * y + &eq.c * &sol0.z * z;
    let two_l = l * GaussianInt::from(2);
    [
        &sol0.x * &q - x * &two_l,
        &sol0.y * &q - y * &two_l,
        &sol0.z * &q - z * &two_l,
    ]
}

/// `-c z0 [ (Z + s)^2 + ab (y0 X - x0 Y)^2 / (c z0)^2 ]` with
/// `s = (a x0 X + b y0 Y) / (c z0)`; equals the unreduced `z` when
/// `(x0, y0, z0)` solves the equation and `z0 != 0`.
pub fn identity_rhs(
    eq: &LegendreEquation,
    sol0: &Solution,
    x: &GaussianInt,
    y: &GaussianInt,
    z: &GaussianInt,
) -> GaussianRational {
    let cz0 = &eq.c * &sol0.z;
    let s = GaussianRational::new(&eq.a * &sol0.x * x + &eq.b * &sol0.y * y, cz0.clone())
        .expect("z0 and c are nonzero");
    let shifted = &GaussianRational::from(z.clone()) + &s;
    let cross = &sol0.y * x - &sol0.x * y;
    let tail =
        GaussianRational::new(&eq.a * &eq.b * cross.square(), cz0.square()).expect("nonzero");
    let bracket = &(&shifted * &shifted) + &tail;
    &GaussianRational::from(-(&eq.c * &sol0.z)) * &bracket
}

/// Verifies that `delta` divides all three unreduced expressions, given
/// `delta | c` and `delta | (X y0 - Y x0)`. Also checks the side condition
/// that `delta` is coprime to `a b x0 y0`, which the divisibility argument
/// relies on.
pub fn divisibility_certificate(
    eq: &LegendreEquation,
    sol0: &Solution,
    x: &GaussianInt,
    y: &GaussianInt,
    z: &GaussianInt,
    delta: &GaussianInt,
) -> Result<bool> {
    if delta.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if !delta.divides(&eq.c) {
        return Err(Error::Precondition(format!(
            "{delta} does not divide c = {}",
            eq.c
        )));
    }
    let cross = x * &sol0.y - y * &sol0.x;
    if !delta.divides(&cross) {
        return Err(Error::Precondition(format!(
            "{delta} does not divide X y0 - Y x0 = {cross}"
        )));
    }
    if !gcd(&sol0.x, &sol0.y)?.is_unit() {
        return Err(Error::Precondition(format!("x0, y0 not coprime in {sol0}")));
    }
    let side = &eq.a * &eq.b * &sol0.x * &sol0.y;
    if !gcd(delta, &side)?.is_unit() {
        return Err(Error::Internal(format!(
            "gcd({delta}, ab x0 y0) is not a unit"
        )));
    }
    Ok(parametric_family(eq, sol0, x, y, z)
        .iter()
        .all(|e| delta.divides(e)))
}

/// Exact form of `N(z)^2 <= (3 + 2 sqrt2) N(a) N(b)`: with `L = N(z)^2` and
/// `R = N(a) N(b)`, true iff `L <= 3R` or `(L - 3R)^2 <= 8 R^2`.
pub fn bound_test(z: &GaussianInt, a: &GaussianInt, b: &GaussianInt) -> bool {
    let nz = z.norm();
    bound_test_norms(&(&nz * &nz), &(a.norm() * b.norm()))
}

pub(crate) fn bound_test_norms(l: &BigInt, r: &BigInt) -> bool {
    let three_r = r * 3u32;
    if *l <= three_r {
        return true;
    }
    let d = l - three_r;
    &d * &d <= r * r * 8u32
}

/// Checks that the unreduced `z` is nonzero.
///
/// When `ab` is not a square in `Z[i]` a zero here would make
/// `sqrt(ab (y0 X - x0 Y)^2)` a Gaussian rational, which is impossible, so
/// it is reported as an internal fault. When `ab` is a square (for example
/// `a = b = 1`) the argument does not apply and `Ok(false)` is returned.
pub fn nonzero_z_guard(
    eq: &LegendreEquation,
    sol0: &Solution,
    x: &GaussianInt,
    y: &GaussianInt,
    z: &GaussianInt,
) -> Result<bool> {
    let [_, _, w] = parametric_family(eq, sol0, x, y, z);
    if !w.is_zero() {
        return Ok(true);
    }
    if (&eq.a * &eq.b).sqrt_exact().is_some() {
        Ok(false)
    } else {
        Err(Error::Internal(format!(
            "descent produced z = 0 for {eq} from {sol0} with (X, Y, Z) = ({x}, {y}, {z})"
        )))
    }
}

/// One descent step from a primitive solution that violates the bound.
pub fn descent_step(eq: &LegendreEquation, sol0: &Solution) -> Result<DescentStep> {
    if !eq.is_normal() {
        return Err(Error::NotNormal);
    }
    if !eq.is_solved_by(sol0) {
        return Err(Error::Precondition(format!("{sol0} does not solve {eq}")));
    }
    if !sol0.is_primitive() {
        return Err(Error::Precondition(format!("{sol0} is not primitive")));
    }
    if bound_test(&sol0.z, &eq.a, &eq.b) {
        return Err(Error::Precondition(format!(
            "{sol0} already satisfies the bound"
        )));
    }

    let one_plus_i = GaussianInt::one_plus_i();
    let (case, target) = if eq.c.is_even() {
        (
            DescentCase::EvenC,
            eq.c.div_exact(&one_plus_i).expect("c is even"),
        )
    } else {
        (DescentCase::OddC, eq.c.clone())
    };
    let (xp, yp) = bezout(&sol0.x, &sol0.y, &target)?;
    let t_target = GaussianRational::new(
        -(&eq.a * &sol0.x * &xp + &eq.b * &sol0.y * &yp),
        &eq.c * &sol0.z,
    )?;
    let (zp, delta) = match case {
        DescentCase::EvenC => (nearest_lattice(&t_target), target),
        DescentCase::OddC => {
            // c = 1 (mod 1+i), so aX + bY + cZ is even iff Z = aX + bY.
            let class = &eq.a * &xp + &eq.b * &yp;
            (nearest_in_class(&t_target, &class), &one_plus_i * &target)
        }
    };

    nonzero_z_guard(eq, sol0, &xp, &yp, &zp)?;
    let unreduced = parametric_family(eq, sol0, &xp, &yp, &zp);
    let mut reduced = Vec::with_capacity(3);
    for e in &unreduced {
        reduced.push(e.div_exact(&delta).ok_or_else(|| {
            Error::Internal(format!("{delta} does not divide {e} (from {sol0} on {eq})"))
        })?);
    }
    let [x, y, z]: [GaussianInt; 3] = reduced.try_into().expect("three components");
    let output = Solution::new(x, y, z)
        .map_err(|_| Error::Internal(format!("descent from {sol0} collapsed to zero")))?;
    if !eq.is_solved_by(&output) {
        return Err(Error::Internal(format!("{output} does not solve {eq}")));
    }
    if output.z.norm() >= sol0.z.norm() {
        return Err(Error::Internal(format!(
            "no decrease: N(z) {} -> {}",
            sol0.z.norm(),
            output.z.norm()
        )));
    }

    Ok(DescentStep {
        case,
        x_param: xp,
        y_param: yp,
        z_param: zp,
        delta,
        t_target,
        input: sol0.clone(),
        output,
    })
}

/// Primitivizes `sol` and applies [`descent_step`] until [`bound_test`]
/// holds.
pub fn holzer_reduce(eq: &LegendreEquation, sol: &Solution) -> Result<DescentTrace> {
    if !eq.is_normal() {
        return Err(Error::NotNormal);
    }
    if !eq.is_solved_by(sol) {
        return Err(Error::Precondition(format!("{sol} does not solve {eq}")));
    }
    let seed = primitivize_in(eq, sol)?;
    let mut cur = seed.clone();
    let mut steps = Vec::new();
    while !bound_test(&cur.z, &eq.a, &eq.b) {
        if steps.len() >= MAX_STEPS {
            return Err(Error::Internal(format!(
                "descent exceeded {MAX_STEPS} steps"
            )));
        }
        let step = descent_step(eq, &cur)?;
        cur = primitivize_in(eq, &step.output)?;
        steps.push(step);
    }
    Ok(DescentTrace {
        equation: eq.clone(),
        seed,
        steps,
        final_solution: cur,
    })
}
