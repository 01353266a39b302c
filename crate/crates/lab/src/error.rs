use std::fmt::Write as _;

use carlab_core::Error as CoreError;

/// Failure categories, each with its own process exit code.
#[derive(Debug, thiserror::Error)]
pub enum LabError {
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Size(String),
    #[error("{0}")]
    Invariant(String),
    #[error("{0}")]
    Io(String),
}

pub type LabResult<T> = Result<T, LabError>;

impl LabError {
    pub fn exit_code(&self) -> i32 {
        match self {
            LabError::Config(_) => 2,
            LabError::Size(_) => 3,
            LabError::Invariant(_) => 4,
            LabError::Io(_) => 5,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            LabError::Config(_) => "config",
            LabError::Size(_) => "size-limit",
            LabError::Invariant(_) => "numerical-invariant",
            LabError::Io(_) => "io",
        }
    }

    /// Single-line JSON error record.
    pub fn record(&self) -> String {
        let mut map = serde_json::Map::new();
        map.insert("error".into(), self.kind().into());
        map.insert("exit_code".into(), self.exit_code().into());
        map.insert("message".into(), self.to_string().into());
        serde_json::Value::Object(map).to_string()
    }
}

impl From<CoreError> for LabError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::InvalidInput(_) | CoreError::Domain(_) => LabError::Config(e.to_string()),
            CoreError::SizeLimit { .. } | CoreError::Level(_) => LabError::Size(e.to_string()),
            CoreError::NoConvergence(_) => LabError::Invariant(e.to_string()),
        }
    }
}

impl From<std::io::Error> for LabError {
    fn from(e: std::io::Error) -> Self {
        LabError::Io(e.to_string())
    }
}

/// Collects invariant violations found while an experiment runs.
#[derive(Debug, Default)]
pub struct Violations(Vec<String>);

impl Violations {
    pub fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.0.push(what());
        }
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_error(self) -> Option<LabError> {
        if self.0.is_empty() {
            return None;
        }
        let mut msg = String::new();
        for (i, v) in self.0.iter().take(5).enumerate() {
            if i > 0 {
                msg.push_str("; ");
            }
            msg.push_str(v);
        }
        if self.0.len() > 5 {
            let _ = write!(msg, "; and {} more", self.0.len() - 5);
        }
        Some(LabError::Invariant(msg))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_are_distinct() {
        let errs = [
            LabError::Config(String::new()),
            LabError::Size(String::new()),
            LabError::Invariant(String::new()),
            LabError::Io(String::new()),
        ];
        let codes: Vec<i32> = errs.iter().map(LabError::exit_code).collect();
        assert_eq!(codes, [2, 3, 4, 5]);
    }

    #[test]
    fn core_errors_map_to_categories() {
        assert_eq!(LabError::from(CoreError::Domain("x".into())).exit_code(), 2);
        let size = CoreError::SizeLimit { what: "x", requested: 2, cap: 1 };
        assert_eq!(LabError::from(size).exit_code(), 3);
        assert_eq!(LabError::from(CoreError::NoConvergence(60)).exit_code(), 4);
    }

    #[test]
    fn violations_become_invariant_errors() {
        let mut v = Violations::default();
        v.check(true, || unreachable!());
        assert!(v.is_empty());
        for k in 0..7 {
            v.check(false, || format!("v{k}"));
        }
        let e = v.into_error().unwrap();
        assert_eq!(e.exit_code(), 4);
        assert!(e.to_string().ends_with("and 2 more"));
        let rec: serde_json::Value = serde_json::from_str(&e.record()).unwrap();
        assert_eq!(rec["error"], "numerical-invariant");
    }
}
