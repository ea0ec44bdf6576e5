use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn from_ok(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

/// What a command prints: the JSON payload plus its text rendering.
pub struct Outcome {
    pub results: Value,
    pub lines: Vec<String>,
    pub ok: bool,
}

#[derive(Serialize)]
pub struct RunReport {
    pub command: &'static str,
    pub inputs: Value,
    pub results: Value,
    pub timing_ms: u64,
    pub verdict: Verdict,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self, lines: &[String]) -> String {
        let mut out = format!("{}\n", self.command);
        for l in lines {
            out.push_str("  ");
            out.push_str(l);
            out.push('\n');
        }
        let verdict = match self.verdict {
            Verdict::Pass => "pass",
            Verdict::Fail => "FAIL",
        };
        out.push_str(&format!("verdict: {verdict} ({} ms)\n", self.timing_ms));
        out
    }
}
