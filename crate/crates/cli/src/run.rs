//! Subcommand bodies. Each returns an [`Outcome`]; nothing here exits.

use std::fmt::Write as _;
use std::process::ExitCode;

use legz::normform::{normalize_with_ceiling, primitivize, pull_back, push_forward};
use legz::solvecheck::brute_force_search_parallel;
use legz::{
    bound_test, brute_force_search, check_solution, holzer_reduce, samet_solvable, DescentTrace,
    Error, GaussianInt, LegendreEquation, NormalizationTrace, Solution, DEFAULT_FACTOR_CEILING,
};

use crate::report::Report;

pub const SUCCESS: u8 = 0;
pub const NEGATIVE: u8 = 1;
pub const USAGE: u8 = 2;
pub const INTERNAL: u8 = 3;

pub struct Coefficients(pub [GaussianInt; 3]);

pub struct Options {
    pub bound: u64,
    pub jobs: usize,
    pub json: bool,
}

/// A one-line `legz: <reason>: <detail>` message and its exit code.
#[derive(Debug)]
pub struct Failure {
    code: u8,
    reason: &'static str,
    detail: String,
}

impl Failure {
    fn new(code: u8, reason: &'static str, detail: impl Into<String>) -> Self {
        Failure {
            code,
            reason,
            detail: detail.into(),
        }
    }

    pub fn emit(self) -> ExitCode {
        eprintln!("legz: {}: {}", self.reason, self.detail);
        ExitCode::from(self.code)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (code, reason) = match &e {
            Error::FactorLimit { .. } => (USAGE, "factor-limit"),
            Error::ZeroInput(_) => (USAGE, "zero-coefficient"),
            Error::TrivialSolution => (USAGE, "trivial-solution"),
            Error::Precondition(_) => (USAGE, "precondition"),
            _ => (INTERNAL, "internal"),
        };
        Failure::new(code, reason, e.to_string())
    }
}

/// What a subcommand printed and how it ended. A negative result still
/// carries its report.
pub struct Outcome {
    stdout: String,
    failure: Option<Failure>,
}

impl Outcome {
    pub fn emit(self) -> ExitCode {
        print!("{}", self.stdout);
        match self.failure {
            None => ExitCode::from(SUCCESS),
            Some(f) => f.emit(),
        }
    }
}

impl From<Failure> for Outcome {
    fn from(f: Failure) -> Self {
        Outcome {
            stdout: String::new(),
            failure: Some(f),
        }
    }
}

pub fn factor_ceiling(var: Option<&str>) -> Result<u64, Failure> {
    match var {
        None => Ok(DEFAULT_FACTOR_CEILING),
        Some(s) => s.trim().parse().map_err(|_| {
            Failure::new(
                USAGE,
                "bad-env",
                format!("LEGZ_FACTOR_CEILING={s:?} is not a u64"),
            )
        }),
    }
}

fn finish(report: Report, text: String, json: bool, failure: Option<Failure>) -> Outcome {
    let stdout = if json {
        format!("{}\n", report.to_json())
    } else {
        text
    };
    Outcome { stdout, failure }
}

fn equation(c: &Coefficients) -> Result<LegendreEquation, Failure> {
    let [a, b, cc] = c.0.clone();
    Ok(LegendreEquation::new(a, b, cc)?)
}

/// `bound_test` on the primitive image of an original-equation solution in
/// the normal form.
fn bound_holds(
    original: &LegendreEquation,
    normal: &LegendreEquation,
    trace: &NormalizationTrace,
    sol: &Solution,
) -> Result<bool, Failure> {
    let image = primitivize(&push_forward(original, sol, trace)?);
    Ok(bound_test(&image.z, &normal.a, &normal.b))
}

fn run_search(eq: &LegendreEquation, opts: &Options) -> Option<Solution> {
    if opts.jobs > 1 {
        brute_force_search_parallel(eq, opts.bound, opts.jobs)
    } else {
        brute_force_search(eq, opts.bound)
    }
}

fn step_lines(t: &DescentTrace) -> Vec<String> {
    t.steps.iter().map(ToString::to_string).collect()
}

fn descent_summary(t: &DescentTrace) -> String {
    let mut s = format!("descent: {} steps", t.steps.len());
    if !t.steps.is_empty() {
        s.push_str(", N(z)");
        let mut norms = vec![t.seed.z.norm()];
        norms.extend(t.steps.iter().map(|st| st.output.z.norm()));
        for (k, n) in norms.iter().enumerate() {
            s.push_str(if k == 0 { " " } else { " -> " });
            s.push_str(&n.to_string());
        }
    }
    s
}

/// Descends from a normal-form seed and maps the result to the original
/// equation. A result that misses the bound is an internal fault.
fn descend(
    original: &LegendreEquation,
    normal: &LegendreEquation,
    ntrace: &NormalizationTrace,
    seed: &Solution,
) -> Result<(DescentTrace, Solution, bool), Failure> {
    let dt = holzer_reduce(normal, seed)?;
    let sol = primitivize(&pull_back(normal, &dt.final_solution, ntrace)?);
    if !check_solution(original, &sol).holds() {
        return Err(Failure::new(
            INTERNAL,
            "internal",
            format!("{sol} does not solve {original}"),
        ));
    }
    let holds = bound_holds(original, normal, ntrace, &sol)?;
    if !holds {
        return Err(Failure::new(
            INTERNAL,
            "internal",
            format!("{sol} misses the bound after descent"),
        ));
    }
    Ok((dt, sol, holds))
}

fn outcome(r: Result<Outcome, Failure>) -> Outcome {
    r.unwrap_or_else(Outcome::from)
}

pub fn solve(c: &Coefficients, opts: &Options, ceiling: u64) -> Outcome {
    outcome((|| {
        let eq = equation(c)?;
        let (normal, ntrace) = normalize_with_ceiling(&eq, ceiling)?;
        let mut report = Report {
            equation: Some(eq.clone()),
            normal_form: Some(normal.clone()),
            ..Report::default()
        };
        let mut text = format!(
            "equation: {eq}\nnormal_form: {normal}\nnormalization: {} records\n",
            ntrace.records.len()
        );
        let samet = samet_solvable(&normal)?;
        report.solvable = Some(samet.solvable);
        writeln!(text, "solvable: {}", samet.solvable).unwrap();
        if !samet.solvable {
            let detail = format!("{normal} fails the quadratic residue conditions");
            let f = Failure::new(NEGATIVE, "unsolvable", detail);
            return Ok(finish(report, text, opts.json, Some(f)));
        }
        let Some(seed) = run_search(&normal, opts) else {
            let detail = format!(
                "no solution of {normal} with component norms <= {}",
                opts.bound
            );
            let f = Failure::new(NEGATIVE, "not-found", detail);
            return Ok(finish(report, text, opts.json, Some(f)));
        };
        let (dt, sol, holds) = descend(&eq, &normal, &ntrace, &seed)?;
        writeln!(text, "seed: {seed}\n{}", descent_summary(&dt)).unwrap();
        writeln!(text, "solution: {sol}\nbound_holds: {holds}").unwrap();
        report.trace = step_lines(&dt);
        report.solution = Some(sol);
        report.bound_holds = Some(holds);
        Ok(finish(report, text, opts.json, None))
    })())
}

pub fn check(c: &Coefficients, [x, y, z]: [GaussianInt; 3], json: bool, ceiling: u64) -> Outcome {
    outcome((|| {
        let eq = equation(c)?;
        let sol = Solution::new(x, y, z)?;
        let residual = check_solution(&eq, &sol).residual;
        let holds = residual.is_zero();
        // The normal form is informational here; failing to reach it does
        // not affect the verdict.
        let normal = normalize_with_ceiling(&eq, ceiling).ok();
        let bound = match (&normal, holds) {
            (Some((n, t)), true) => Some(bound_holds(&eq, n, t, &sol)?),
            _ => None,
        };
        let mut text =
            format!("equation: {eq}\nsolution: {sol}\nresidual: {residual}\nholds: {holds}\n");
        if let Some(b) = bound {
            writeln!(text, "bound_holds: {b}").unwrap();
        }
        let report = Report {
            equation: Some(eq.clone()),
            normal_form: normal.map(|(n, _)| n),
            solution: Some(sol.clone()),
            bound_holds: bound,
            ..Report::default()
        };
        let failure = (!holds).then(|| {
            Failure::new(
                NEGATIVE,
                "residual-nonzero",
                format!("residual of {sol} is {residual}"),
            )
        });
        Ok(finish(report, text, json, failure))
    })())
}

pub fn normalize(c: &Coefficients, json: bool, ceiling: u64) -> Outcome {
    outcome((|| {
        let eq = equation(c)?;
        let (normal, ntrace) = normalize_with_ceiling(&eq, ceiling)?;
        let text = format!("equation: {eq}\nnormal_form: {normal}\n{ntrace}");
        let report = Report {
            equation: Some(eq),
            normal_form: Some(normal),
            trace: ntrace.records.iter().map(ToString::to_string).collect(),
            ..Report::default()
        };
        Ok(finish(report, text, json, None))
    })())
}

pub fn samet(c: &Coefficients, json: bool, ceiling: u64) -> Outcome {
    outcome((|| {
        let eq = equation(c)?;
        let (normal, _) = normalize_with_ceiling(&eq, ceiling)?;
        let r = samet_solvable(&normal)?;
        let mut text = format!(
            "equation: {eq}\nnormal_form: {normal}\nsolvable: {}\n",
            r.solvable
        );
        for (name, w) in ["a", "b", "c"].iter().zip(&r.witnesses) {
            writeln!(text, "mod {name}: {w}").unwrap();
        }
        let failure = r
            .witnesses
            .iter()
            .find(|w| !w.is_root())
            .map(|w| Failure::new(NEGATIVE, "unsolvable", w.to_string()));
        let report = Report {
            equation: Some(eq),
            normal_form: Some(normal),
            solvable: Some(r.solvable),
            ..Report::default()
        };
        Ok(finish(report, text, json, failure))
    })())
}

pub fn search(c: &Coefficients, opts: &Options, ceiling: u64) -> Outcome {
    outcome((|| {
        let eq = equation(c)?;
        let normal = normalize_with_ceiling(&eq, ceiling).ok();
        let found = run_search(&eq, opts);
        let bound = match (&normal, &found) {
            (Some((n, t)), Some(s)) => Some(bound_holds(&eq, n, t, s)?),
            _ => None,
        };
        let mut text = format!("equation: {eq}\n");
        match &found {
            Some(s) => writeln!(text, "solution: {s}").unwrap(),
            None => writeln!(
                text,
                "solution: none with component norms <= {}",
                opts.bound
            )
            .unwrap(),
        }
        let failure = found.is_none().then(|| {
            Failure::new(
                NEGATIVE,
                "not-found",
                format!("no solution of {eq} with component norms <= {}", opts.bound),
            )
        });
        let report = Report {
            equation: Some(eq),
            normal_form: normal.map(|(n, _)| n),
            solution: found,
            bound_holds: bound,
            ..Report::default()
        };
        Ok(finish(report, text, opts.json, failure))
    })())
}

pub fn trace(
    c: &Coefficients,
    seed: Option<[GaussianInt; 3]>,
    opts: &Options,
    ceiling: u64,
) -> Outcome {
    outcome((|| {
        let eq = equation(c)?;
        let (normal, ntrace) = normalize_with_ceiling(&eq, ceiling)?;
        let mut report = Report {
            equation: Some(eq.clone()),
            normal_form: Some(normal.clone()),
            ..Report::default()
        };
        let mut text = format!("equation: {eq}\nnormal_form: {normal}\n");
        let seed = match seed {
            Some([x, y, z]) => push_forward(&eq, &Solution::new(x, y, z)?, &ntrace)?,
            None => match run_search(&normal, opts) {
                Some(s) => s,
                None => {
                    let detail = format!(
                        "no solution of {normal} with component norms <= {}",
                        opts.bound
                    );
                    let f = Failure::new(NEGATIVE, "not-found", detail);
                    return Ok(finish(report, text, opts.json, Some(f)));
                }
            },
        };
        let (dt, sol, holds) = descend(&eq, &normal, &ntrace, &seed)?;
        writeln!(text, "seed: {}", dt.seed).unwrap();
        write!(text, "{dt}").unwrap();
        writeln!(
            text,
            "final: {}\nsolution: {sol}\nbound_holds: {holds}",
            dt.final_solution
        )
        .unwrap();
        report.solvable = Some(true);
        report.trace = step_lines(&dt);
        report.solution = Some(sol);
        report.bound_holds = Some(holds);
        Ok(finish(report, text, opts.json, None))
    })())
}
