//! The JSON object shared by every subcommand.

use legz::{LegendreEquation, Solution};
use serde_json::{json, Value};

#[derive(Debug, Default)]
pub struct Report {
    pub equation: Option<LegendreEquation>,
    pub normal_form: Option<LegendreEquation>,
    pub solvable: Option<bool>,
    pub solution: Option<Solution>,
    /// `SQ`/`PS` lines for `normalize`, `STEP` lines otherwise.
    pub trace: Vec<String>,
    pub bound_holds: Option<bool>,
}

fn equation(eq: &LegendreEquation) -> Value {
    json!({ "a": eq.a.to_string(), "b": eq.b.to_string(), "c": eq.c.to_string() })
}

impl Report {
    pub fn to_json(&self) -> Value {
        json!({
            "equation": self.equation.as_ref().map(equation),
            "normal_form": self.normal_form.as_ref().map(equation),
            "solvable": self.solvable,
            "solution": self.solution.as_ref().map(|s| json!({
                "x": s.x.to_string(),
                "y": s.y.to_string(),
                "z": s.z.to_string(),
            })),
            "trace": self.trace,
            "bound_holds": self.bound_holds,
        })
    }
}
