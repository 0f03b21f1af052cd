use std::io::Write;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::Format;

pub const EXIT_UNVERIFIED: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;
pub const EXIT_INTERNAL: u8 = 4;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }

    pub fn budget(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_BUDGET,
            message: message.into(),
        }
    }

    pub fn internal(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INTERNAL,
            message: message.into(),
        }
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Serialize, Default, Debug)]
pub struct Parameters {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
}

#[derive(Serialize, Debug)]
pub struct RunReport<R: Serialize, C: Serialize> {
    pub command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input_digest: Option<String>,
    pub parameters: Parameters,
    pub results: R,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counters: Option<C>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<f64>,
}

/// A finished command: its JSON document, text rendering, optional CSV
/// table, and the exit code to use on success.
pub struct Output {
    pub json: String,
    pub text: String,
    pub csv: Option<String>,
    pub code: u8,
}

impl Output {
    pub fn new<R: Serialize, C: Serialize>(report: &RunReport<R, C>, text: String) -> Result<Self, Failure> {
        let json = serde_json::to_string_pretty(report).map_err(|e| Failure::internal(e.to_string()))?;
        Ok(Output {
            json,
            text,
            csv: None,
            code: 0,
        })
    }

    pub fn with_csv<T: Serialize>(mut self, rows: impl IntoIterator<Item = T>) -> Result<Self, Failure> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for row in rows {
            w.serialize(row).map_err(|e| Failure::internal(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| Failure::internal(e.to_string()))?;
        self.csv = Some(String::from_utf8(bytes).map_err(|e| Failure::internal(e.to_string()))?);
        Ok(self)
    }

    pub fn emit(self, format: Format) -> Result<u8, Failure> {
        let body = match format {
            Format::Text => self.text,
            Format::Json => self.json + "\n",
            Format::Csv => self.csv.ok_or_else(|| Failure::input("this command has no CSV output"))?,
        };
        let mut out = std::io::stdout().lock();
        out.write_all(body.as_bytes())
            .and_then(|_| out.flush())
            .map_err(|e| Failure::internal(format!("writing output: {e}")))?;
        Ok(self.code)
    }
}
