//! Text and JSON rendering of results.

use logderiv_core::ode::{LambdaSeries, MatrixPoly};
use logderiv_core::rational::format_rational;
use logderiv_core::tensor::TensorElt;
use serde_json::{json, Value};

/// `[{"coeff": "p/q", "word": "ab"}, …]` in (degree, lexicographic) order.
pub fn terms_json(a: &TensorElt) -> Value {
    Value::Array(
        a.iter()
            .map(|(w, c)| json!({"coeff": format_rational(c), "word": w.to_string()}))
            .collect(),
    )
}

/// `{"truncation": N, "terms": [...]}`
pub fn element_json(a: &TensorElt, truncation: usize) -> Value {
    json!({"truncation": truncation, "terms": terms_json(a)})
}

pub fn matrix_json(m: &MatrixPoly) -> Value {
    Value::Array(
        (0..m.dim())
            .map(|i| {
                Value::Array(
                    (0..m.dim())
                        .map(|j| {
                            Value::Array(
                                m.entry(i, j)
                                    .coeffs()
                                    .iter()
                                    .map(|c| Value::String(format_rational(c)))
                                    .collect(),
                            )
                        })
                        .collect(),
                )
            })
            .collect(),
    )
}

/// Nonzero `λ`-components as `[{"lambda": n, "matrix": ...}, …]`.
pub fn lambda_json(s: &LambdaSeries) -> Value {
    Value::Array(
        s.components()
            .iter()
            .enumerate()
            .filter(|(_, m)| !m.is_zero())
            .map(|(n, m)| json!({"lambda": n, "matrix": matrix_json(m)}))
            .collect(),
    )
}

pub fn lambda_text(s: &LambdaSeries) -> String {
    let lines: Vec<String> = s
        .components()
        .iter()
        .enumerate()
        .filter(|(_, m)| !m.is_zero())
        .map(|(n, m)| format!("  λ^{n}: {m}"))
        .collect();
    if lines.is_empty() {
        "  0".to_string()
    } else {
        lines.join("\n")
    }
}
