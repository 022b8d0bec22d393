//! Small helpers for deterministic JSON output: floats are rounded to 12
//! significant digits and complex numbers serialize as {re, im}.

use num_complex::Complex64;
use serde_json::{json, Value};

/// Round to 12 significant digits so serialized output is stable.
pub fn sig12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { 0.0 } else { x };
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

pub fn complex_value(c: Complex64) -> Value {
    json!({ "re": sig12(c.re), "im": sig12(c.im) })
}
