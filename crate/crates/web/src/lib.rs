//! wasm-bindgen entry points for the static demo page in `www/`.
//!
//! Every function returns a JSON string; failures are `{"error": "..."}`.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use isoheight::ellcurve::{check_height_comparison, check_szpiro, differential_height};
use isoheight::funcfield::{insep_degree, weil_height};
use isoheight::modular::profile;
use isoheight::parse::{parse_ratfunc, CurveSpec};
use isoheight::BaseField;

fn field_for(p: u32) -> Result<BaseField, String> {
    if p == 0 {
        Ok(BaseField::Rationals)
    } else {
        BaseField::prime_field(p as u64).map_err(|e| e.to_string())
    }
}

fn finish(r: Result<Value, String>) -> String {
    r.unwrap_or_else(|e| json!({ "error": e })).to_string()
}

/// Genus and point counts of `X0(N)`.
#[wasm_bindgen]
pub fn x0_genus(n: u32) -> String {
    finish(
        profile(n as u64)
            .map(|p| json!(p))
            .map_err(|e| e.to_string()),
    )
}

/// Height and inseparability degree of an expression in `t`; `p = 0` means `Q`.
#[wasm_bindgen]
pub fn height(expr: &str, p: u32) -> String {
    finish((|| {
        let f = parse_ratfunc(expr, field_for(p)?).map_err(|e| e.to_string())?;
        Ok(json!({
            "value": f.to_string(),
            "height": weil_height(&f),
            "insep_degree": insep_degree(&f),
        }))
    })())
}

/// Invariants and the height comparison and Szpiro checks for a curve file.
#[wasm_bindgen]
pub fn curve_report(text: &str) -> String {
    finish((|| {
        let e = CurveSpec::parse(text)
            .and_then(|s| s.build())
            .map_err(|e| e.to_string())?;
        let mut out = json!({
            "j_invariant": e.j_invariant().to_string(),
            "modular_height": e.modular_height(),
            "j_insep_degree": e.j_insep_degree(),
        });
        let p = e.characteristic();
        if (p == 0 || p >= 5) && !e.is_isotrivial() {
            let hd = differential_height(&e).map_err(|e| e.to_string())?;
            let hc = check_height_comparison(&e).map_err(|e| e.to_string())?;
            let sz = check_szpiro(&e).map_err(|e| e.to_string())?;
            out["differential_height"] = json!(hd.to_string());
            out["height_comparison"] = json!(hc);
            out["szpiro"] = json!(sz);
        }
        Ok(out)
    })())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn genus() {
        assert_eq!(parse(&x0_genus(49))["genus"], 1);
        assert!(parse(&x0_genus(0))["error"].is_string());
    }

    #[test]
    fn heights() {
        assert_eq!(parse(&height("(t^3+1)/t", 0))["height"], 3);
        assert_eq!(parse(&height("t^5", 5))["insep_degree"], 5);
        assert!(parse(&height("t^", 0))["error"].is_string());
        assert!(parse(&height("t", 4))["error"].is_string());
    }

    #[test]
    fn legendre_report() {
        let v = parse(&curve_report("field = Q\na2 = -(t+1)\na4 = t\n"));
        assert_eq!(v["modular_height"], 6);
        assert_eq!(v["szpiro"]["ok"], true);
        assert_eq!(v["height_comparison"]["lhs"], "1/2");
    }
}
