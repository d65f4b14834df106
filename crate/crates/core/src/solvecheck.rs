//! Solvability by the quadratic-residue criterion over `Z[i]`, bounded
//! exhaustive search for a seed, and exact verification.
//!
//! For a normal-form equation the criterion is: `bc`, `ca` and `ab` are
//! quadratic residues modulo `a`, `b` and `c`. There is no sign condition
//! since `-1 = i^2` is a square.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Roots;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::factor::square_root_mod;
use crate::gaussint::GaussianInt;
use crate::normform::{LegendreEquation, Solution};

/// Outcome of one residue condition `target = w^2 (mod modulus)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Root {
        target: GaussianInt,
        modulus: GaussianInt,
        root: GaussianInt,
    },
    /// The full residue system was searched without finding a root.
    Exhausted {
        target: GaussianInt,
        modulus: GaussianInt,
    },
}

impl Witness {
    pub fn is_root(&self) -> bool {
        matches!(self, Witness::Root { .. })
    }

    /// Re-checks a root exactly; exhausted markers check as `false`.
    pub fn verify(&self) -> bool {
        match self {
            Witness::Root {
                target,
                modulus,
                root,
            } => modulus.divides(&(root.square() - target)),
            Witness::Exhausted { .. } => false,
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Root {
                target,
                modulus,
                root,
            } => write!(f, "{target} = ({root})^2 mod {modulus}"),
            Witness::Exhausted { target, modulus } => {
                write!(f, "{target} is not a square mod {modulus}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolvabilityReport {
    pub solvable: bool,
    /// Conditions modulo `a`, `b`, `c` in that order.
    pub witnesses: [Witness; 3],
}

pub fn samet_solvable(eq: &LegendreEquation) -> Result<SolvabilityReport> {
    if !eq.is_normal() {
        return Err(Error::NotNormal);
    }
    let (a, b, c) = (&eq.a, &eq.b, &eq.c);
    let condition = |target: GaussianInt, modulus: &GaussianInt| -> Result<Witness> {
        Ok(match square_root_mod(&target, modulus)? {
            Some(root) => Witness::Root {
                target,
                modulus: modulus.clone(),
                root,
            },
            None => Witness::Exhausted {
                target,
                modulus: modulus.clone(),
            },
        })
    };
    let witnesses = [
        condition(b * c, a)?,
        condition(c * a, b)?,
        condition(a * b, c)?,
    ];
    Ok(SolvabilityReport {
        solvable: witnesses.iter().all(Witness::is_root),
        witnesses,
    })
}

/// Exact residual `a x^2 + b y^2 + c z^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub residual: GaussianInt,
}

impl CheckReport {
    pub fn holds(&self) -> bool {
        self.residual.is_zero()
    }
}

pub fn check_solution(eq: &LegendreEquation, sol: &Solution) -> CheckReport {
    CheckReport {
        residual: eq.evaluate(&sol.x, &sol.y, &sol.z),
    }
}

/// [`check_solution`] on a raw triple; `(0, 0, 0)` is refused.
pub fn check_triple(
    eq: &LegendreEquation,
    x: &GaussianInt,
    y: &GaussianInt,
    z: &GaussianInt,
) -> Result<CheckReport> {
    let sol = Solution::new(x.clone(), y.clone(), z.clone())?;
    Ok(check_solution(eq, &sol))
}

/// Total order used to pick the reported solution: `N(z)`, `N(y)`, `N(x)`,
/// then `(re, im)` of `x`, `y`, `z`. Applied to normalized solutions.
pub fn minimality_cmp(s: &Solution, t: &Solution) -> Ordering {
    let norms = |s: &Solution| (s.z.norm(), s.y.norm(), s.x.norm());
    norms(s).cmp(&norms(t)).then_with(|| {
        let lex = |s: &Solution| {
            [
                s.x.re.clone(),
                s.x.im.clone(),
                s.y.re.clone(),
                s.y.im.clone(),
                s.z.re.clone(),
                s.z.im.clone(),
            ]
        };
        lex(s).cmp(&lex(t))
    })
}

/// Gaussian integers of norm at most `bound`, ordered by `(norm, re, im)`.
fn points_within(bound: u64) -> Vec<(BigInt, GaussianInt)> {
    let r = bound.sqrt() as i64 + 1;
    let mut pts = Vec::new();
    for re in -r..=r {
        for im in -r..=r {
            let n = (re * re + im * im) as u64;
            if n <= bound {
                pts.push((BigInt::from(n), GaussianInt::new(re, im)));
            }
        }
    }
    pts.sort_by(|(n1, g1), (n2, g2)| (n1, &g1.re, &g1.im).cmp(&(n2, &g2.re, &g2.im)));
    pts
}

struct SearchSpace {
    bound: BigInt,
    /// `(N(y), b*y^2, y)` ordered by `(N(y), re, im)`.
    ys: Vec<(BigInt, GaussianInt, GaussianInt)>,
}

impl SearchSpace {
    /// Minimal normalized primitive solution with this `z`, if any.
    fn best_for_z(&self, eq: &LegendreEquation, z: &GaussianInt) -> Option<Solution> {
        let cz2 = &eq.c * z.square();
        let mut best: Option<Solution> = None;
        for (ny, by2, y) in &self.ys {
            if let Some(b) = &best {
                if *ny > b.y.norm() {
                    break;
                }
            }
            if y.is_zero() && z.is_zero() {
                continue;
            }
            let Some(x2) = (-(by2 + &cz2)).div_exact(&eq.a) else {
                continue;
            };
            let Some(x) = x2.sqrt_exact() else {
                continue;
            };
            if x.norm() > self.bound {
                continue;
            }
            let sol = Solution {
                x,
                y: y.clone(),
                z: z.clone(),
            };
            if !sol.is_primitive() {
                continue;
            }
            let sol = sol.normalized();
            if best
                .as_ref()
                .is_none_or(|b| minimality_cmp(&sol, b) == Ordering::Less)
            {
                best = Some(sol);
            }
        }
        best
    }
}

/// Exhaustive search for the minimal primitive solution with
/// `max(N(x), N(y), N(z)) <= bound`, or `None` if there is none in range.
///
/// `z` is scanned by increasing norm and `x` is solved for from
/// `a x^2 = -(b y^2 + c z^2)`, so the scan can stop at the first norm
/// level of `z` that yields a solution.
pub fn brute_force_search(eq: &LegendreEquation, bound: u64) -> Option<Solution> {
    search(eq, bound, None)
}

/// [`brute_force_search`] spread over `jobs` worker threads. Each `z` is
/// handled independently and results are merged by [`minimality_cmp`], so
/// the answer is identical to the serial one.
pub fn brute_force_search_parallel(
    eq: &LegendreEquation,
    bound: u64,
    jobs: usize,
) -> Option<Solution> {
    search(eq, bound, Some(jobs.max(1)))
}

fn search(eq: &LegendreEquation, bound: u64, jobs: Option<usize>) -> Option<Solution> {
    let pts = points_within(bound);
    let space = SearchSpace {
        bound: BigInt::from(bound),
        ys: pts
            .iter()
            .map(|(n, y)| (n.clone(), &eq.b * y.square(), y.clone()))
            .collect(),
    };
    let pool = jobs.map(|n| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .expect("thread pool")
    });

    for level in pts.chunk_by(|(n1, _), (n2, _)| n1 == n2) {
        let found: Vec<Solution> = match &pool {
            Some(pool) => pool.install(|| {
                level
                    .par_iter()
                    .filter_map(|(_, z)| space.best_for_z(eq, z))
                    .collect()
            }),
            None => level
                .iter()
                .filter_map(|(_, z)| space.best_for_z(eq, z))
                .collect(),
        };
        if let Some(best) = found.into_iter().min_by(minimality_cmp) {
            return Some(best);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re: i64, im: i64) -> GaussianInt {
        GaussianInt::new(re, im)
    }

    fn normal(a: GaussianInt, b: GaussianInt, c: GaussianInt) -> LegendreEquation {
        LegendreEquation::try_normal(a, b, c).unwrap()
    }

    /// Full triple enumeration: the minimum over every primitive solution in
    /// the box, normalized. Independent of the solve-for-x shortcut.
    fn oracle_search(eq: &LegendreEquation, bound: u64) -> Option<Solution> {
        let pts: Vec<GaussianInt> = points_within(bound).into_iter().map(|(_, g)| g).collect();
        let mut best: Option<Solution> = None;
        for x in &pts {
            for y in &pts {
                for z in &pts {
                    let Ok(s) = Solution::new(x.clone(), y.clone(), z.clone()) else {
                        continue;
                    };
                    if !eq.is_solved_by(&s) || !s.is_primitive() {
                        continue;
                    }
                    let s = s.normalized();
                    if best.as_ref().is_none_or(|b| minimality_cmp(&s, b).is_lt()) {
                        best = Some(s);
                    }
                }
            }
        }
        best
    }

    #[test]
    fn samet_examples() {
        let r = samet_solvable(&normal(g(0, 1), g(7, 0), g(1, 0))).unwrap();
        assert!(r.solvable);
        assert!(r.witnesses.iter().all(Witness::verify));

        let r = samet_solvable(&normal(g(3, 0), g(7, 0), g(0, 1))).unwrap();
        assert!(r.witnesses[2].is_root());

        // (1, 1, 3): 1 mod 1 twice, and ab = 1 is a square mod 3.
        let r = samet_solvable(&normal(g(1, 0), g(1, 0), g(3, 0))).unwrap();
        assert!(r.solvable);
        assert!(brute_force_search(&normal(g(1, 0), g(1, 0), g(3, 0)), 50).is_some());

        let not_normal = LegendreEquation::new(g(2, 0), g(1, 0), g(1, 0)).unwrap();
        assert_eq!(samet_solvable(&not_normal), Err(Error::NotNormal));
    }

    #[test]
    fn samet_refutes_unsolvable() {
        // The condition mod c = 3 asks for ab = 1+i to be a square mod 3.
        let eq = normal(g(1, 0), g(1, 1), g(3, 0));
        let r = samet_solvable(&eq).unwrap();
        assert!(!r.solvable);
        assert!(r.witnesses.iter().any(|w| !w.is_root()));
        assert_eq!(brute_force_search(&eq, 60), None);
    }

    #[test]
    fn search_examples() {
        let eq = normal(g(0, 1), g(7, 0), g(1, 0));
        assert_eq!(
            brute_force_search(&eq, 8),
            Some(Solution::new(g(2, 2), g(1, 0), g(1, 0)).unwrap())
        );

        let eq = normal(g(1, 0), g(1, 0), g(1, 0));
        let s = brute_force_search(&eq, 1).unwrap();
        assert!(eq.is_solved_by(&s));
        assert!(s.z.is_zero());
        assert_eq!(s, Solution::new(g(1, 0), g(0, 1), g(0, 0)).unwrap());
    }

    #[test]
    fn search_matches_triple_enumeration() {
        let eqs = [
            normal(g(0, 1), g(7, 0), g(1, 0)),
            normal(g(1, 0), g(1, 0), g(3, 0)),
            normal(g(1, 1), g(3, 0), g(0, 1)),
            normal(g(2, 1), g(1, 0), g(1, 2)),
            normal(g(1, 0), g(1, 1), g(3, 0)),
            normal(g(3, 0), g(2, 1), g(1, 0)),
        ];
        for eq in &eqs {
            for bound in [1, 5, 10, 20] {
                assert_eq!(
                    brute_force_search(eq, bound),
                    oracle_search(eq, bound),
                    "{eq} bound {bound}"
                );
            }
        }
    }

    #[test]
    fn parallel_search_is_identical() {
        let eq = normal(g(3, 2), g(7, 0), g(1, 1));
        for jobs in [1, 2, 4] {
            assert_eq!(
                brute_force_search_parallel(&eq, 120, jobs),
                brute_force_search(&eq, 120)
            );
        }
    }

    #[test]
    fn check_examples() {
        let eq = normal(g(0, 1), g(7, 0), g(1, 0));
        let s = Solution::new(g(2, 2), g(1, 0), g(1, 0)).unwrap();
        assert!(check_solution(&eq, &s).holds());

        assert_eq!(
            check_triple(&eq, &g(0, 0), &g(0, 0), &g(0, 0)),
            Err(Error::TrivialSolution)
        );

        let r = check_triple(&eq, &g(1, 0), &g(1, 0), &g(1, 0)).unwrap();
        assert!(!r.holds());
        assert_eq!(r.residual, g(8, 1));
    }
}
