use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: Value,
    pub actual: Value,
    pub pass: bool,
}

impl Check {
    pub fn eq(name: impl Into<String>, expected: impl Serialize, actual: impl Serialize) -> Self {
        let (expected, actual) = (to_value(expected), to_value(actual));
        let pass = expected == actual;
        Check { name: name.into(), expected, actual, pass }
    }

    pub fn holds(name: impl Into<String>, ok: bool) -> Self {
        Check::eq(name, true, ok)
    }

    pub fn at_most(name: impl Into<String>, bound: f64, actual: f64) -> Self {
        Check { name: name.into(), expected: json!({ "at_most": bound }), actual: json!(actual), pass: actual <= bound }
    }
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("serializable check value")
}

#[derive(Clone, Debug, Default)]
pub struct Outcome {
    pub results: Value,
    pub checks: Vec<Check>,
}

impl Outcome {
    pub fn new(results: Value, checks: Vec<Check>) -> Self {
        Outcome { results, checks }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: Vec<String>,
    pub inputs_digest: String,
    pub results: Value,
    pub checks: Vec<Check>,
    pub timing: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<Value>,
}

impl Report {
    pub fn new(command: Vec<String>, seed: u64) -> Self {
        let mut h = Sha256::new();
        for a in &command {
            h.update(a.as_bytes());
            h.update([0u8]);
        }
        h.update(seed.to_le_bytes());
        let digest = h.finalize().iter().map(|b| format!("{b:02x}")).collect();
        Report { command, inputs_digest: digest, results: Value::Null, checks: vec![], timing: json!({ "recorded": false }), error: None }
    }

    pub fn passed(&self) -> bool {
        self.error.is_none() && self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        round_floats(&mut v);
        v
    }

    pub fn render(&self, pretty: bool) -> String {
        let v = self.to_json();
        if !pretty {
            return serde_json::to_string(&v).expect("json");
        }
        let mut out = format!("$ gerbeforge {}\n", self.command.join(" "));
        for c in &self.checks {
            out.push_str(&format!("[{}] {}: expected {}, got {}\n", if c.pass { "pass" } else { "FAIL" }, c.name, c.expected, c.actual));
        }
        if let Some(e) = &self.error {
            out.push_str(&format!("error: {e}\n"));
        }
        if !v["results"].is_null() {
            out.push_str(&serde_json::to_string_pretty(&v["results"]).expect("json"));
        }
        out.trim_end().to_string()
    }
}

/// Rounds every float to a multiple of `1e-12` so reports are byte-stable.
pub fn round_floats(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().unwrap_or(0.0);
            let r = (x * 1e12).round() / 1e12;
            let r = if r == 0.0 { 0.0 } else { r };
            *v = serde_json::Number::from_f64(r).map_or(Value::Null, Value::Number);
        }
        Value::Array(a) => a.iter_mut().for_each(round_floats),
        Value::Object(m) => m.values_mut().for_each(round_floats),
        _ => {}
    }
}
