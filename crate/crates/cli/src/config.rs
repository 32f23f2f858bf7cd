use std::fmt;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use serde_json::{json, Value};

use lowcell::hecke::Convention;
use lowcell::rootdata::RootSystem;
use lowcell::Error;

/// `A1`..`A3`, optionally affine (`A2~`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TypeTag {
    pub rank: usize,
    pub affine: bool,
}

impl FromStr for TypeTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let t = s.trim();
        let (body, affine) = match t.strip_suffix('~') {
            Some(b) => (b, true),
            None => (t, false),
        };
        match body
            .strip_prefix(['A', 'a'])
            .and_then(|r| r.parse::<usize>().ok())
        {
            Some(rank @ 1..=3) => Ok(TypeTag { rank, affine }),
            _ => Err(Error::UnknownType(s.to_string())),
        }
    }
}

impl fmt::Display for TypeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A{}{}", self.rank, if self.affine { "~" } else { "" })
    }
}

impl TypeTag {
    pub fn root_system(&self) -> Arc<RootSystem> {
        RootSystem::type_a(self.rank)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Basis {
    /// Signed Kazhdan–Lusztig basis `C_w`.
    Signed,
    /// `C'_w`, the basis with positive structure constants.
    Positive,
}

impl From<Basis> for Convention {
    fn from(b: Basis) -> Self {
        match b {
            Basis::Signed => Convention::Signed,
            Basis::Positive => Convention::Positive,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub type_tag: TypeTag,
    pub ball: usize,
    pub chi_bound: i64,
    pub cache_dir: Option<PathBuf>,
    pub output: Option<PathBuf>,
    pub format: Format,
}

impl RunConfig {
    /// Writes `result` wrapped in the versioned envelope.
    pub fn emit(&self, command: &str, result: Value) -> Result<()> {
        let text = match self.format {
            Format::Json => {
                let doc = json!({ "schema": 1, "command": command, "type": self.type_tag.to_string(), "result": result });
                let mut s = serde_json::to_string_pretty(&doc)?;
                s.push('\n');
                s
            }
            Format::Csv => to_csv(&result)?,
        };
        match &self.output {
            Some(path) => {
                std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
            }
            None => std::io::stdout().lock().write_all(text.as_bytes())?,
        }
        Ok(())
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// Matrices (`{"matrix": [[..]]}` or a bare array of arrays) become one CSV
/// row per matrix row; anything else is flattened to `key,value` pairs.
fn to_csv(result: &Value) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let matrix = result.get("matrix").unwrap_or(result);
    match matrix {
        Value::Array(rows) if rows.iter().all(Value::is_array) && !rows.is_empty() => {
            if let Some(Value::Array(labels)) = result.get("elements") {
                let mut header = vec![String::new()];
                header.extend(labels.iter().map(cell));
                w.write_record(&header)?;
                for (label, row) in labels.iter().zip(rows) {
                    let mut rec = vec![cell(label)];
                    rec.extend(row.as_array().unwrap().iter().map(cell));
                    w.write_record(&rec)?;
                }
            } else {
                for row in rows {
                    w.write_record(row.as_array().unwrap().iter().map(cell))?;
                }
            }
        }
        _ => {
            w.write_record(["key", "value"])?;
            flatten("", result, &mut |k, v| w.write_record([k, v.as_str()]))?;
        }
    }
    let bytes = w.into_inner().map_err(|e| anyhow::anyhow!("csv: {e}"))?;
    Ok(String::from_utf8(bytes)?)
}

fn flatten<E: std::error::Error + Send + Sync + 'static>(
    prefix: &str,
    v: &Value,
    out: &mut dyn FnMut(&str, String) -> std::result::Result<(), E>,
) -> Result<()> {
    let join = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(m) if !m.is_empty() => {
            for (k, x) in m {
                flatten(&join(k), x, out)?;
            }
        }
        Value::Array(a) if !a.is_empty() && a.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&join(&i.to_string()), x, out)?;
            }
        }
        other => out(prefix, cell(other))?,
    }
    Ok(())
}

pub fn require_rank(tag: TypeTag, max: usize, what: &str) -> Result<()> {
    if tag.rank > max {
        bail!("{what} is only available up to rank {max} (got {tag})");
    }
    Ok(())
}
