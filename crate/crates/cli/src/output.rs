use std::fs;
use std::path::Path;

use serde::Serialize;

use crate::campaign::VerifyOutput;
use crate::{CliError, Format};

/// Rows as CSV with a header line, or as a pretty JSON array.
pub fn render<T: Serialize>(rows: &[T], format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(rows)? + "\n"),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for row in rows {
                w.serialize(row)?;
            }
            let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
            Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
        }
    }
}

/// Writes `config.json`, `instances.<ext>`, `cells.<ext>` and one text file
/// per witness into `dir`.
pub fn write_verify(out: &VerifyOutput, dir: &Path, format: Format) -> Result<(), CliError> {
    fs::create_dir_all(dir)?;
    let ext = format.extension();
    fs::write(
        dir.join("config.json"),
        serde_json::to_string_pretty(&out.config)? + "\n",
    )?;
    fs::write(
        dir.join(format!("instances.{ext}")),
        render(&out.rows, format)?,
    )?;
    fs::write(
        dir.join(format!("cells.{ext}")),
        render(&out.cells, format)?,
    )?;
    for w in &out.witnesses {
        fs::write(dir.join(&w.file_name), &w.graph)?;
    }
    Ok(())
}
