//! Re-verification of emitted certificates, independent of the searches that
//! produced them.

use std::io::Read;

use serde_json::{json, Map, Value};

use relnum::convergence::{certify_one, default_targets};
use relnum::farey::{check_certificate, CycleCertificate};
use relnum::orbit::{verify_witness, Witness};
use relnum::relation::relation_poly;
use relnum::roots::Bound;
use relnum::{IsolatingInterval, SturmChain};

use crate::{Outcome, Status};

struct Item {
    kind: &'static str,
    ok: bool,
    detail: String,
}

fn read_input(input: &str) -> Result<String, String> {
    if input == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| format!("cannot read stdin: {e}"))?;
        Ok(text)
    } else {
        std::fs::read_to_string(input).map_err(|e| format!("cannot read {input}: {e}"))
    }
}

fn has(obj: &Map<String, Value>, keys: &[&str]) -> bool {
    keys.iter().all(|k| obj.contains_key(*k))
}

fn check_alpha_entry(obj: &Map<String, Value>) -> Item {
    let n = obj["n"].as_u64().unwrap_or(0) as usize;
    let parsed: Result<IsolatingInterval, _> = serde_json::from_value(obj["interval"].clone());
    let (ok, detail) = match (n, parsed) {
        (0, _) => (false, "n must be positive".to_string()),
        (_, Err(e)) => (false, format!("bad interval: {e}")),
        (n, Ok(iv)) => {
            let chain =
                SturmChain::new(&relation_poly(n)).expect("relation polynomials are nonzero");
            let inside = chain.count_in(&iv.lo, &iv.hi);
            let above = chain.count_roots(&Bound::Finite(iv.hi.clone()), &Bound::PosInf);
            (
                inside == 1 && above == 0,
                format!("n = {n}: {inside} root(s) in {iv}, {above} above"),
            )
        }
    };
    Item {
        kind: "alpha-entry",
        ok,
        detail,
    }
}

fn check_object(obj: &Map<String, Value>, out: &mut Vec<Item>) {
    let value = Value::Object(obj.clone());
    if has(obj, &["alpha", "edge_words"]) {
        let item = match serde_json::from_value::<CycleCertificate>(value) {
            Ok(cert) => match check_certificate(&cert) {
                Ok(ok) => Item {
                    kind: "cycle",
                    ok,
                    detail: format!("{} edges at alpha = {}", cert.edge_words.len(), cert.alpha),
                },
                Err(e) => Item {
                    kind: "cycle",
                    ok: false,
                    detail: e.to_string(),
                },
            },
            Err(e) => Item {
                kind: "cycle",
                ok: false,
                detail: format!("malformed: {e}"),
            },
        };
        out.push(item);
    } else if has(obj, &["alpha", "basepoint", "word", "value", "half_index"]) {
        let item = match serde_json::from_value::<Witness>(value) {
            Ok(w) => Item {
                kind: "witness",
                ok: verify_witness(&w),
                detail: format!(
                    "{}·{} = {} at alpha = {}",
                    w.word, w.basepoint, w.value, w.alpha
                ),
            },
            Err(e) => Item {
                kind: "witness",
                ok: false,
                detail: format!("malformed: {e}"),
            },
        };
        out.push(item);
    } else if has(obj, &["n", "interval"]) {
        out.push(check_alpha_entry(obj));
    } else if has(obj, &["n", "clockwise", "winding", "distinct_real_roots"]) {
        let n = obj["n"].as_u64().unwrap_or(0) as usize;
        let claimed = [
            "distinct_real_roots",
            "squarefree",
            "bounds",
            "clockwise",
            "orbit_consistency",
        ]
        .iter()
        .all(|k| obj.get(*k).and_then(Value::as_bool) == Some(true));
        let (ok, detail) = match (n, certify_one(n.max(1), &default_targets())) {
            (0, _) => (false, "n must be positive".to_string()),
            (_, Err(e)) => (false, e.to_string()),
            (_, Ok(c)) => (c.all_ok() == claimed, format!("n = {n} recomputed")),
        };
        out.push(Item {
            kind: "certificate",
            ok,
            detail,
        });
    } else {
        for v in obj.values() {
            walk(v, out);
        }
    }
}

fn walk(v: &Value, out: &mut Vec<Item>) {
    match v {
        Value::Object(obj) => check_object(obj, out),
        Value::Array(items) => items.iter().for_each(|x| walk(x, out)),
        _ => {}
    }
}

pub(crate) fn run(input: &str) -> Outcome {
    let text = read_input(input).map_err(crate::Usage)?;
    let mut items = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let v: Value = serde_json::from_str(line)
            .map_err(|e| crate::Usage(format!("line {}: invalid JSON: {e}", i + 1)))?;
        walk(&v, &mut items);
    }
    let passed = items.iter().filter(|i| i.ok).count();
    let status = if items.is_empty() {
        Status::Inconclusive
    } else if passed == items.len() {
        Status::Certified
    } else {
        Status::Failed
    };
    let listed: Vec<Value> = items
        .iter()
        .map(|i| json!({ "kind": i.kind, "ok": i.ok, "detail": i.detail }))
        .collect();
    Ok((
        status,
        json!({ "checked": items.len(), "passed": passed, "items": listed }),
    ))
}
