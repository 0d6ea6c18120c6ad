use std::time::{Duration, Instant};

use serde::Serialize;

/// The inputs at which an identity failed, with both sides rendered.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub inputs: Vec<String>,
    pub expected: String,
    pub got: String,
}

impl std::fmt::Display for Counterexample {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "at ({}): expected {}, got {}", self.inputs.join(", "), self.expected, self.got)
    }
}

/// Outcome of a check. Everything except `elapsed` is deterministic.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub check: String,
    pub passed: bool,
    pub checks_run: u64,
    pub counterexample: Option<Counterexample>,
    #[serde(serialize_with = "secs")]
    pub elapsed: Duration,
}

fn secs<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

impl Report {
    pub fn pass(check: impl Into<String>, checks_run: u64, start: Instant) -> Report {
        Report { check: check.into(), passed: true, checks_run, counterexample: None, elapsed: start.elapsed() }
    }

    pub fn fail(check: impl Into<String>, checks_run: u64, cx: Counterexample, start: Instant) -> Report {
        Report { check: check.into(), passed: false, checks_run, counterexample: Some(cx), elapsed: start.elapsed() }
    }

    /// Equality ignoring timing.
    pub fn same_outcome(&self, other: &Report) -> bool {
        self.check == other.check
            && self.passed == other.passed
            && self.checks_run == other.checks_run
            && self.counterexample == other.counterexample
    }
}

/// Counts checks and stops at the first failure.
pub struct Checker {
    check: String,
    start: Instant,
    run: u64,
    failure: Option<Counterexample>,
}

impl Checker {
    pub fn new(check: impl Into<String>) -> Self {
        Checker { check: check.into(), start: Instant::now(), run: 0, failure: None }
    }

    /// Records one comparison. Returns `false` once a failure is recorded so
    /// callers can break out of their sweep.
    pub fn expect<T: PartialEq + std::fmt::Display>(
        &mut self,
        expected: &T,
        got: &T,
        inputs: impl FnOnce() -> Vec<String>,
    ) -> bool {
        self.run += 1;
        if expected != got {
            self.failure = Some(Counterexample { inputs: inputs(), expected: expected.to_string(), got: got.to_string() });
            return false;
        }
        true
    }

    /// Records one yes/no condition.
    pub fn ensure(&mut self, ok: bool, cx: impl FnOnce() -> Counterexample) -> bool {
        self.run += 1;
        if !ok {
            self.failure = Some(cx());
        }
        ok
    }

    pub fn failed(&self) -> bool {
        self.failure.is_some()
    }

    pub fn finish(self) -> Report {
        match self.failure {
            None => Report::pass(self.check, self.run, self.start),
            Some(cx) => Report::fail(self.check, self.run, cx, self.start),
        }
    }
}
