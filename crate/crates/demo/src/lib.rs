//! Browser bindings for the demo page in `www/`.
//!
//! Each export takes and returns JSON strings. The plain Rust functions
//! behind them are public so they can be tested natively.

use biliaison::io::{self, ElementDoc};
use biliaison::moves::{synthesize_chain, verify_chain};
use biliaison::seqlattice::{le_witness, seq_join, seq_meet};
use biliaison::{Ambient, ClassElement, DescriptorRegistry, SignedStep, SortedSeq};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Degrees plotted around the data: two on each side of the jump points.
fn plot_range(points: impl IntoIterator<Item = i64>) -> (i64, i64) {
    let pts: Vec<i64> = points.into_iter().collect();
    let lo = pts.iter().min().copied().unwrap_or(0);
    let hi = pts.iter().max().copied().unwrap_or(0);
    (lo.saturating_sub(2), hi.saturating_add(2))
}

fn values(lo: i64, hi: i64, f: impl Fn(i64) -> i64) -> Value {
    json!((lo..=hi).map(|l| json!([l, f(l)])).collect::<Vec<_>>())
}

fn registry(ambient: &str) -> Result<DescriptorRegistry, String> {
    let ambient = if ambient.is_empty() {
        None
    } else {
        Some(ambient.parse::<Ambient>()?)
    };
    Ok(DescriptorRegistry::new(ambient))
}

fn element(text: &str, reg: &mut DescriptorRegistry) -> Result<ClassElement, String> {
    io::read_element(text, reg, false)
        .map(|(el, _)| el)
        .map_err(|e| e.to_string())
}

/// Meet, join and comparison of two sequences with their Σ tables.
pub fn lattice_json(a: &str, b: &str) -> Result<String, String> {
    let seq = |t: &str| {
        io::read_seq(t, false)
            .map(|(s, _)| s)
            .map_err(|e| e.to_string())
    };
    let (a, b) = (seq(a)?, seq(b)?);
    let (meet, join) = (seq_meet(&a, &b), seq_join(&a, &b));
    let (lo, hi) = plot_range(a.entries().iter().chain(b.entries()).copied());
    let table = |s: &SortedSeq| values(lo, hi, |l| s.sigma_at(l) as i64);
    Ok(json!({
        "meet": meet.entries(),
        "join": join.entries(),
        "a_le_b": le_witness(&a, &b).is_none(),
        "b_le_a": le_witness(&b, &a).is_none(),
        "sigma": { "a": table(&a), "b": table(&b), "meet": table(&meet), "join": table(&join) },
    })
    .to_string())
}

/// Σ, rank and Hilbert function of an element on a window around its jumps.
pub fn class_json(element_text: &str, ambient: &str) -> Result<String, String> {
    let mut reg = registry(ambient)?;
    let f = element(element_text, &mut reg)?;
    let (lo, hi) = plot_range(f.sigma().deltas().keys().copied());
    let hilbert: Vec<Value> = (lo..=hi)
        .map(|l| match f.hilbert(l) {
            Ok(h) => json!([l, h.to_string()]),
            Err(e) => json!([l, null, e.to_string()]),
        })
        .collect();
    let report = f.validate();
    Ok(json!({
        "rank": f.rank(),
        "sigma": values(lo, hi, |l| f.sigma().value(l)),
        "hilbert": hilbert,
        "admissible": report.passed,
        "violation": report.violation.map(|v| v.to_string()),
    })
    .to_string())
}

/// Synthesized chain from `start` to `min` with Σ after every step.
pub fn chain_json(start: &str, min: &str, ambient: &str) -> Result<String, String> {
    let mut reg = registry(ambient)?;
    let (start, min) = (element(start, &mut reg)?, element(min, &mut reg)?);
    let chain = synthesize_chain(&start, &min).map_err(|e| e.to_string())?;
    let report = verify_chain(&start, &chain, &min);
    let (lo, hi) = plot_range(
        start
            .sigma()
            .deltas()
            .keys()
            .chain(min.sigma().deltas().keys())
            .copied(),
    );
    let table = |s: &SignedStep| values(lo, hi, |l| s.value(l));
    let snapshots: Vec<Value> = report
        .steps
        .iter()
        .filter_map(|s| s.sigma.as_ref().map(table))
        .collect();
    Ok(json!({
        "chain": chain,
        "passed": report.passed,
        "start": table(start.sigma()),
        "min": table(min.sigma()),
        "snapshots": snapshots,
        "min_element": ElementDoc::from_element(&min),
    })
    .to_string())
}

fn to_js(r: Result<String, String>) -> Result<String, JsValue> {
    r.map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn lattice(a: &str, b: &str) -> Result<String, JsValue> {
    to_js(lattice_json(a, b))
}

#[wasm_bindgen]
pub fn class_profile(element: &str, ambient: &str) -> Result<String, JsValue> {
    to_js(class_json(element, ambient))
}

#[wasm_bindgen]
pub fn chain(start: &str, min: &str, ambient: &str) -> Result<String, JsValue> {
    to_js(chain_json(start, min, ambient))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: String) -> Value {
        serde_json::from_str(&s).unwrap()
    }

    #[test]
    fn lattice_example() {
        let v = parse(lattice_json("[1,3,4]", "[2,2]").unwrap());
        assert_eq!(v["meet"], json!([2, 3]));
        assert_eq!(v["join"], json!([1, 2, 4]));
        assert_eq!(v["a_le_b"], json!(false));
        assert_eq!(v["sigma"]["join"][0], json!([-1, 0]));
    }

    #[test]
    fn euler_profile() {
        let v =
            parse(class_json(r#"{"ancestor":"zero","a":[1],"b":[0,0,0],"m":2}"#, "pn:2").unwrap());
        assert_eq!(v["rank"], json!(2));
        assert!(v["hilbert"].as_array().unwrap().contains(&json!([0, "3"])));
        assert_eq!(v["admissible"], json!(true));
    }

    #[test]
    fn hilbert_errors_are_reported_per_degree() {
        let v = parse(class_json(r#"{"ancestor":"zero","a":[1],"b":[0,0,0],"m":2}"#, "").unwrap());
        assert!(v["hilbert"][0][1].is_null());
    }

    #[test]
    fn chain_snapshots() {
        let start = r#"{"ancestor":"zero","a":[3],"b":[0,0,2,4],"m":2}"#;
        let min = r#"{"ancestor":"zero","b":[0],"m":2}"#;
        let v = parse(chain_json(start, min, "pn:2").unwrap());
        assert_eq!(v["passed"], json!(true));
        assert_eq!(v["snapshots"].as_array().unwrap().len(), 2);
        assert_eq!(v["snapshots"][1], v["min"]);
    }

    #[test]
    fn bad_input_is_an_error() {
        assert!(lattice_json("[1,", "[]").is_err());
        assert!(chain_json("{}", "{}", "").is_err());
        assert!(class_json("{}", "pn:x").is_err());
    }
}
