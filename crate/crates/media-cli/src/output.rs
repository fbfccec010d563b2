//! Output switching between human text and machine-readable JSON.

use std::io::{self, Write};

pub struct Report {
    json: bool,
}

impl Report {
    pub fn new(json: bool) -> Self {
        Report { json }
    }

    pub fn json(&self) -> bool {
        self.json
    }

    /// Prints either the JSON document or the text rendering to stdout.
    pub fn emit(
        &self,
        document: serde_json::Value,
        text: impl FnOnce(&mut dyn Write) -> io::Result<()>,
    ) -> Result<(), super::CliError> {
        let stdout = io::stdout();
        let mut out = stdout.lock();
        let result = if self.json {
            writeln!(out, "{document}")
        } else {
            text(&mut out)
        };
        result.map_err(|e| super::CliError::Io(e.to_string()))
    }
}
