use koszulkit::Error;
use serde::Serialize;
use serde_json::Value;
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
    Info,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass | Verdict::Info => 0,
            Verdict::Fail => 1,
            Verdict::Inconclusive => 3,
        }
    }
}

/// Per-summand parameters `(l, g, m, σ)` and the permutation `π`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Params {
    pub m: Vec<usize>,
    pub sigma: Vec<usize>,
    pub l: Vec<usize>,
    pub g: Vec<i64>,
    pub pi: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub verdict: Verdict,
    pub bounds: BTreeMap<String, i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub params: Option<Params>,
    pub counterexample: Option<Value>,
    pub probabilistic: bool,
    pub citations: Vec<String>,
    pub details: BTreeMap<String, Value>,
    #[serde(skip)]
    pub lines: Vec<String>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            verdict: Verdict::Info,
            bounds: BTreeMap::new(),
            params: None,
            counterexample: None,
            probabilistic: false,
            citations: Vec::new(),
            details: BTreeMap::new(),
            lines: Vec::new(),
        }
    }

    pub fn bound(&mut self, name: &str, v: impl TryInto<i64>) -> &mut Self {
        self.bounds.insert(name.into(), v.try_into().unwrap_or(i64::MAX));
        self
    }

    pub fn detail(&mut self, name: &str, v: impl Serialize) -> &mut Self {
        self.details.insert(name.into(), serde_json::to_value(v).expect("serializable detail"));
        self
    }

    pub fn cite(&mut self, s: &str) -> &mut Self {
        self.citations.push(s.into());
        self
    }

    pub fn line(&mut self, s: impl Into<String>) -> &mut Self {
        self.lines.push(s.into());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for l in &self.lines {
            out.push_str(l);
            out.push('\n');
        }
        let verdict = serde_json::to_value(self.verdict).expect("verdict serializes");
        out.push_str(&format!("verdict: {}\n", verdict.as_str().unwrap_or("?")));
        if !self.bounds.is_empty() {
            let b: Vec<String> = self.bounds.iter().map(|(k, v)| format!("{k}={v}")).collect();
            out.push_str(&format!("bounds: {}\n", b.join(" ")));
        }
        if let Some(c) = &self.counterexample {
            out.push_str(&format!("counterexample: {c}\n"));
        }
        out.push_str(&format!("probabilistic: {}\n", self.probabilistic));
        for c in &self.citations {
            out.push_str(&format!("uses: {c}\n"));
        }
        out
    }
}

/// Exit code for a failed run.
pub fn error_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::Input(_) | Error::Precondition(_) => 2,
        Error::NotFiniteDimensional(_) | Error::BoundExceeded(_) => 3,
        Error::Internal(_) => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn codes() {
        assert_eq!(Verdict::Pass.exit_code(), 0);
        assert_eq!(Verdict::Fail.exit_code(), 1);
        assert_eq!(Verdict::Inconclusive.exit_code(), 3);
        assert_eq!(error_code(&Error::Input("x".into())), 2);
        assert_eq!(error_code(&Error::BoundExceeded("x".into())), 3);
    }

    #[test]
    fn json_has_schema_keys() {
        let mut r = Report::new("koszul");
        r.verdict = Verdict::Pass;
        r.bound("i_max", 6).cite("x");
        r.params = Some(Params::default());
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        for k in ["verdict", "bounds", "params", "counterexample", "probabilistic", "citations"] {
            assert!(v.get(k).is_some(), "{k}");
        }
        assert_eq!(v["verdict"], "pass");
    }
}
