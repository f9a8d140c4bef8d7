//! Self-describing run reports emitted by the command-line front-end.

use serde::Serialize;
use std::collections::BTreeMap;
use std::time::Instant;

/// One command's machine-readable outcome: the full parameter echo, the
/// nested module results (each named after its module of origin), and
/// per-phase timings. Identical inputs give identical reports up to the
/// timings field.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    pub n: usize,
    pub parameters: BTreeMap<String, serde_json::Value>,
    pub results: BTreeMap<String, serde_json::Value>,
    pub timings_ms: BTreeMap<String, u128>,
    pub version: String,
}

impl RunReport {
    pub fn new(command: &str, n: usize) -> Self {
        Self {
            command: command.to_string(),
            n,
            parameters: BTreeMap::new(),
            results: BTreeMap::new(),
            timings_ms: BTreeMap::new(),
            version: crate::VERSION.to_string(),
        }
    }

    pub fn parameter(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.parameters
            .insert(key.to_string(), serde_json::to_value(value).expect("serializable"));
        self
    }

    pub fn result(&mut self, module: &str, value: impl Serialize) -> &mut Self {
        self.results
            .insert(module.to_string(), serde_json::to_value(value).expect("serializable"));
        self
    }

    /// Times `f` and records the elapsed milliseconds under `phase`.
    pub fn timed<T>(&mut self, phase: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.timings_ms
            .insert(phase.to_string(), start.elapsed().as_millis());
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_shape_and_determinism() {
        let build = || {
            let mut rep = RunReport::new("solve", 4);
            rep.parameter("field", "gf2");
            rep.result("exact-linalg", serde_json::json!({"rank": 462}));
            rep.timed("solve", || ());
            rep
        };
        let a = serde_json::to_value(build()).unwrap();
        let b = serde_json::to_value(build()).unwrap();
        assert_eq!(a["command"], "solve");
        assert_eq!(a["n"], 4);
        assert_eq!(a["results"]["exact-linalg"]["rank"], 462);
        assert_eq!(a["version"], crate::VERSION);
        // identical modulo timings
        let strip = |mut v: serde_json::Value| {
            v.as_object_mut().unwrap().remove("timings_ms");
            v
        };
        assert_eq!(strip(a), strip(b));
    }
}
