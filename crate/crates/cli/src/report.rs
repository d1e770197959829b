//! Structured command output, rendered as text or JSON (and DOT where a
//! drawing exists). Reports are deterministic: no timestamps, no paths,
//! no timing — wall-clock numbers go to stderr, never into a report.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutFormat {
    Text,
    Json,
    Dot,
}

impl OutFormat {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "text" => Some(OutFormat::Text),
            "json" => Some(OutFormat::Json),
            "dot" => Some(OutFormat::Dot),
            _ => None,
        }
    }
}

/// One named pass/fail answer inside a report.
#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Verdict {
    pub fn new(name: &str, pass: bool, detail: impl Into<String>) -> Self {
        Verdict { name: name.to_string(), pass, detail: detail.into() }
    }
}

/// The outcome of one command: an echo of the invocation, its verdicts,
/// free-form notes, and an optional DOT drawing.
#[derive(Clone, Debug, Serialize)]
pub struct CommandReport {
    pub command: String,
    pub pass: bool,
    pub verdicts: Vec<Verdict>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dot: Option<String>,
}

impl CommandReport {
    pub fn new(command: impl Into<String>, verdicts: Vec<Verdict>) -> Self {
        let pass = verdicts.iter().all(|v| v.pass);
        CommandReport {
            command: command.into(),
            pass,
            verdicts,
            notes: Vec::new(),
            dot: None,
        }
    }

    pub fn with_notes(mut self, notes: Vec<String>) -> Self {
        self.notes = notes;
        self
    }

    pub fn with_dot(mut self, dot: Option<String>) -> Self {
        self.dot = dot;
        self
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        for v in &self.verdicts {
            out.push_str(&format!(
                "{:<24} {}  {}\n",
                v.name,
                if v.pass { "pass" } else { "FAIL" },
                v.detail
            ));
        }
        for n in &self.notes {
            out.push_str(&format!("note: {n}\n"));
        }
        out.push_str(&format!(
            "verdict: {}\n",
            if self.pass { "pass" } else { "FAIL" }
        ));
        out
    }

    pub fn render_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_is_conjunction_of_verdicts() {
        let ok = CommandReport::new("x", vec![Verdict::new("a", true, "")]);
        assert!(ok.pass);
        let bad = CommandReport::new(
            "x",
            vec![Verdict::new("a", true, ""), Verdict::new("b", false, "")],
        );
        assert!(!bad.pass);
        assert!(bad.render_text().contains("FAIL"));
    }

    #[test]
    fn json_rendering_is_stable() {
        let r = CommandReport::new("c", vec![Verdict::new("a", true, "d")]);
        assert_eq!(r.render_json(), r.render_json());
        assert!(r.render_json().contains("\"command\": \"c\""));
    }

    #[test]
    fn out_formats_parse() {
        assert_eq!(OutFormat::parse("json"), Some(OutFormat::Json));
        assert_eq!(OutFormat::parse("nope"), None);
    }
}
