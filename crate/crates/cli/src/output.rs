use std::fmt::Write as _;
use std::io::Write;

use anyhow::{Context, Result};
use serde::Serialize;

use crate::{Format, OutputArgs};

/// Version of the JSON layout emitted by every subcommand.
pub const SCHEMA: u32 = 1;

/// Shortest decimal that round-trips; empty for a missing value.
pub fn num(x: Option<f64>) -> String {
    match x {
        Some(v) => format!("{v:?}"),
        None => String::new(),
    }
}

/// A CSV table with a fixed header.
pub struct Table {
    text: String,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self {
            text: header.join(",") + "\n",
        }
    }

    pub fn row<I, S>(&mut self, cells: I)
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let cells: Vec<String> = cells.into_iter().map(|c| c.as_ref().to_string()).collect();
        let _ = writeln!(self.text, "{}", cells.join(","));
    }

    pub fn into_string(self) -> String {
        self.text
    }
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema: u32,
    command: &'a str,
    #[serde(flatten)]
    body: &'a T,
}

pub fn json<T: Serialize>(command: &str, body: &T) -> Result<String> {
    let env = Envelope {
        schema: SCHEMA,
        command,
        body,
    };
    Ok(serde_json::to_string_pretty(&env)? + "\n")
}

/// Render with `csv` or `json` depending on the requested format and write it.
pub fn emit<T: Serialize>(
    out: &OutputArgs,
    command: &str,
    body: &T,
    csv: impl FnOnce(&T) -> String,
) -> Result<()> {
    let text = match out.format {
        Format::Json => json(command, body)?,
        Format::Csv => csv(body),
    };
    match &out.out {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}
