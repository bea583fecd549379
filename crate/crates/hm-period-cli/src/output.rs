//! Output envelope and number formatting.
//!
//! The JSON envelope always carries the same keys in the same order
//! (`inputs`, `result`, `err_estimate`, `nodes`, `version`), with every
//! parsed numeric flag echoed under `inputs`, so a run can be
//! reproduced from its own output.

use serde::Serialize;

use crate::{OutputArgs, VERSION};

#[derive(Serialize)]
pub struct Inputs {
    pub command: &'static str,
    pub n: Option<u32>,
    pub m: Option<u32>,
    pub k: Option<u32>,
    pub hm: Option<f64>,
    pub c: Option<f64>,
    pub tol: Option<f64>,
    pub samples: Option<u32>,
    pub seed: u64,
    pub precision: usize,
    pub format: &'static str,
}

impl Inputs {
    pub fn new(command: &'static str, output: &OutputArgs) -> Self {
        Inputs {
            command,
            n: None,
            m: None,
            k: None,
            hm: None,
            c: None,
            tol: None,
            samples: None,
            seed: output.seed,
            precision: output.precision(),
            format: output.format.name(),
        }
    }

    pub fn instance(mut self, n: u32, m: u32, hm: f64) -> Self {
        self.n = Some(n);
        self.m = Some(m);
        self.hm = Some(hm);
        self
    }

    pub fn nmk(mut self, n: u32, m: u32, k: u32) -> Self {
        self.n = Some(n);
        self.m = Some(m);
        self.k = Some(k);
        self
    }

    pub fn k(mut self, k: u32) -> Self {
        self.k = Some(k);
        self
    }

    pub fn c(mut self, c: f64) -> Self {
        self.c = Some(c);
        self
    }

    pub fn c_opt(mut self, c: Option<f64>) -> Self {
        self.c = c;
        self
    }

    pub fn tol(mut self, tol: f64) -> Self {
        self.tol = Some(tol);
        self
    }

    pub fn samples(mut self, samples: u32) -> Self {
        self.samples = Some(samples);
        self
    }
}

#[derive(Serialize)]
pub struct Envelope<'a, R: Serialize> {
    inputs: Inputs,
    result: &'a R,
    err_estimate: Option<f64>,
    nodes: Option<u32>,
    version: &'static str,
}

impl<'a, R: Serialize> Envelope<'a, R> {
    pub fn new(inputs: Inputs, result: &'a R) -> Self {
        Envelope {
            inputs,
            result,
            err_estimate: None,
            nodes: None,
            version: VERSION,
        }
    }

    pub fn err_estimate(mut self, err: f64) -> Self {
        self.err_estimate = Some(err);
        self
    }

    pub fn nodes(mut self, nodes: u32) -> Self {
        self.nodes = Some(nodes);
        self
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string(self).expect("output types always serialize");
        text.push('\n');
        text
    }
}

/// Format with `precision` significant digits, in scientific notation
/// so the digit count is exact and the value parses back losslessly.
pub fn format_significant(value: f64, precision: usize) -> String {
    format!("{:.*e}", precision.saturating_sub(1), value)
}
