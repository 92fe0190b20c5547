use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde::Serialize;

use crate::args::Format;
use crate::error::{CliError, CliResult};

/// Version of the JSON and CSV layouts; bumped on any incompatible change.
pub const SCHEMA_VERSION: u32 = 1;

pub struct Sink {
    pub format: Format,
    out: Box<dyn Write>,
}

#[derive(Serialize)]
struct Versioned<'a, T: Serialize> {
    schema_version: u32,
    #[serde(flatten)]
    body: &'a T,
}

impl Sink {
    pub fn open(format: Format, path: Option<&Path>) -> CliResult<Self> {
        let out: Box<dyn Write> = match path {
            Some(path) => Box::new(BufWriter::new(File::create(path)?)),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        };
        Ok(Self { format, out })
    }

    pub fn unsupported(&self, command: &str, supported: &str) -> CliError {
        CliError::Usage(format!(
            "`{command}` does not support --format {:?}; use one of {supported}",
            self.format
        ))
    }

    pub fn json<T: Serialize>(&mut self, body: &T) -> CliResult {
        let doc = Versioned {
            schema_version: SCHEMA_VERSION,
            body,
        };
        serde_json::to_writer_pretty(&mut self.out, &doc)?;
        writeln!(self.out)?;
        Ok(())
    }

    /// Header plus records; the first column is always `schema_version`.
    pub fn csv(&mut self, header: &[&str], rows: &[Vec<String>]) -> CliResult {
        let mut w = csv::Writer::from_writer(&mut self.out);
        let mut head = vec!["schema_version"];
        head.extend_from_slice(header);
        w.write_record(&head)?;
        let version = SCHEMA_VERSION.to_string();
        for row in rows {
            w.write_record(std::iter::once(&version).chain(row))?;
        }
        w.flush()?;
        Ok(())
    }

    /// Aligned `key  value` lines.
    pub fn pairs(&mut self, pairs: &[(&str, String)]) -> CliResult {
        let width = pairs.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        for (k, v) in pairs {
            writeln!(self.out, "{k:<width$}  {v}")?;
        }
        Ok(())
    }

    pub fn writer(&mut self) -> &mut dyn Write {
        &mut self.out
    }

    pub fn finish(mut self) -> CliResult {
        self.out.flush()?;
        Ok(())
    }
}
