//! Browser bindings. Every export returns a JSON string, either the result
//! or `{"error": "..."}`, so the page never has to catch exceptions.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use subsetlab::boxprocess::{
    detect_jump, estimate_pmf, exact_pmf, rational_grid, scan_family, Approach, FamilyRule,
    InputBox, RationalQ,
};
use subsetlab::Error;

/// Largest Farey order the page may request.
pub const MAX_DEN: u32 = 200;
/// Trial cap for one simulation call.
pub const MAX_TRIALS: u64 = 2_000_000;

fn respond(r: Result<Value, Error>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e.to_string() }).to_string(),
    }
}

/// `[{q, pi0, pi1, pi2, qf, pi1f}, ...]` over the Farey grid of order `max_den`.
#[wasm_bindgen]
pub fn family_scan(family: &str, max_den: u32) -> String {
    respond((|| {
        if max_den > MAX_DEN {
            return Err(Error::Capacity {
                what: "max denominator",
                limit: MAX_DEN as u64,
                got: max_den as u64,
            });
        }
        let rule: FamilyRule = family.parse()?;
        let rows = scan_family(&rule, &rational_grid(max_den)?)?;
        Ok(rows
            .iter()
            .map(|r| {
                json!({
                    "q": r.q,
                    "pi0": r.pi(0),
                    "pi1": r.pi(1),
                    "pi2": r.pi(2),
                    "qf": r.q.to_f64(),
                    "pi1f": r.pi(1).to_f64(),
                })
            })
            .collect())
    })())
}

/// Exact and simulated outcome probabilities of the box `B'_{a1,a2/b}`.
#[wasm_bindgen]
pub fn box_sim(a1: u32, a2: u32, b: u32, trials: u32, seed: u32) -> String {
    respond((|| {
        if u64::from(trials) > MAX_TRIALS {
            return Err(Error::Capacity {
                what: "trials",
                limit: MAX_TRIALS,
                got: trials.into(),
            });
        }
        let bx = InputBox::three_type(a1.into(), a2.into(), b.into())?;
        let exact = exact_pmf(&bx);
        let est = estimate_pmf(&bx, trials.into(), seed.into())?;
        let places: Vec<Value> = exact
            .iter()
            .map(|(k, p)| {
                let sd = (p.to_f64() * (1.0 - p.to_f64()) / f64::from(trials)).sqrt();
                json!({
                    "place": k,
                    "exact": p,
                    "exactf": p.to_f64(),
                    "estimate": est.frequency(k),
                    "count": est.counts[k as usize],
                    "tolerance": 4.0 * sd,
                })
            })
            .collect();
        Ok(json!({ "box": bx.to_string(), "trials": trials, "places": places }))
    })())
}

/// Jump report for `pi1` at `q0`, approached from below or above.
#[wasm_bindgen]
pub fn jump(family: &str, q0: &str, depth: u32, from_above: bool) -> String {
    respond((|| {
        let rule: FamilyRule = family.parse()?;
        let q0: RationalQ = q0.parse()?;
        let depth = depth.min(4096);
        let approach = if from_above {
            Approach::Above { depth }
        } else {
            Approach::Below { depth }
        };
        let report = detect_jump(&rule, q0, &approach)?;
        let mut v = serde_json::to_value(&report).expect("report serializes");
        v["samplesf"] = report
            .samples
            .iter()
            .map(|(q, p)| json!([q.to_f64(), p.to_f64()]))
            .collect();
        Ok(v)
    })())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: String) -> Value {
        serde_json::from_str(&s).unwrap()
    }

    #[test]
    fn scan_shapes() {
        let v = parse(family_scan("paper-f", 4));
        let rows = v.as_array().unwrap();
        assert_eq!(rows.len(), 7);
        assert_eq!(rows[6]["pi1"], "0/1");
        assert_eq!(rows[3]["pi1f"], 0.5);
        assert!(parse(family_scan("nope", 4))["error"].is_string());
        assert!(parse(family_scan("const", MAX_DEN + 1))["error"].is_string());
    }

    #[test]
    fn sim_within_tolerance() {
        let v = parse(box_sim(1, 1, 4, 100_000, 1));
        for p in v["places"].as_array().unwrap() {
            let gap = (p["estimate"].as_f64().unwrap() - p["exactf"].as_f64().unwrap()).abs();
            assert!(gap <= p["tolerance"].as_f64().unwrap());
        }
        assert!(parse(box_sim(3, 1, 2, 10, 1))["error"].is_string());
        assert!(parse(box_sim(1, 0, 2, 0, 1))["error"].is_string());
    }

    #[test]
    fn jump_report() {
        let v = parse(jump("paper-f", "1", 64, false));
        assert_eq!(v["magnitude"], "1/1");
        assert_eq!(v["samplesf"].as_array().unwrap().len(), 64);
        assert!(parse(jump("paper-f", "1", 8, true))["error"].is_string());
        assert_eq!(
            parse(jump("jump:1/2", "1/2", 64, false))["magnitude"],
            "1/2"
        );
    }
}
