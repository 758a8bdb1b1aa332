//! Report envelope: a stable `results` block and a volatile `meta` block.

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

/// SHA-256 of the compact serialization of `results`.
pub fn digest(results: &Value) -> String {
    let bytes = serde_json::to_vec(results).expect("JSON values serialize");
    hex::encode(Sha256::digest(&bytes))
}

pub fn envelope(results: Value, elapsed_ms: u128, timings: Value) -> Value {
    let sha = digest(&results);
    json!({
        "results": results,
        "meta": {
            "version": env!("CARGO_PKG_VERSION"),
            "elapsed_ms": elapsed_ms,
            "timings_ms": timings,
            "threads": rayon::current_num_threads(),
            "results_sha256": sha,
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_ignores_meta() {
        let a = envelope(json!({"x": 1}), 5, json!({}));
        let b = envelope(json!({"x": 1}), 900, json!({"a": 3}));
        assert_eq!(a["meta"]["results_sha256"], b["meta"]["results_sha256"]);
        assert_ne!(digest(&json!({"x": 1})), digest(&json!({"x": 2})));
    }
}
