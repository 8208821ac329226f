//! CSV, OBJ and JSON writers with fixed formatting.
//!
//! Reals are written with 17 significant digits (`{:.16e}`), so a CSV
//! round trip reproduces every value bitwise. JSON keeps struct field
//! order and writes non-finite reals as `null`.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::geometry::ProjectedCurve;

pub const SCHEMA_VERSION: u32 = 1;

pub fn real(x: f64) -> String {
    format!("{x:.16e}")
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.display().to_string(),
        source,
    }
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            fs::create_dir_all(dir).map_err(io_err(dir))?;
        }
    }
    fs::write(path, contents).map_err(io_err(path))
}

fn comment_lines(out: &mut String, comment: Option<&str>) {
    if let Some(c) = comment {
        for line in c.lines() {
            let _ = writeln!(out, "# {line}");
        }
    }
}

/// CSV table of reals with an optional leading `#` comment block.
pub fn table_string(header: &[&str], rows: &[Vec<f64>], comment: Option<&str>) -> String {
    let mut out = String::new();
    comment_lines(&mut out, comment);
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        let cells: Vec<String> = row.iter().map(|x| real(*x)).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

pub fn csv_string(curve: &ProjectedCurve, comment: Option<&str>) -> String {
    let rows: Vec<Vec<f64>> = curve
        .s
        .iter()
        .zip(&curve.points)
        .map(|(s, p)| vec![*s, p[0], p[1], p[2]])
        .collect();
    table_string(&["s", "x", "y", "z"], &rows, comment)
}

pub fn write_csv(path: &Path, curve: &ProjectedCurve, comment: Option<&str>) -> Result<()> {
    write_file(path, &csv_string(curve, comment))
}

/// Reads back a file written by [`write_csv`].
pub fn read_csv(path: &Path) -> Result<(Vec<f64>, Vec<[f64; 3]>)> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    let mut lines = text.lines().skip_while(|l| l.starts_with('#'));
    match lines.next() {
        Some("s,x,y,z") => {}
        other => {
            return Err(Error::Domain(format!(
                "{}: unexpected CSV header {other:?}",
                path.display()
            )))
        }
    }
    let mut s = Vec::new();
    let mut pts = Vec::new();
    let skipped = text.lines().take_while(|l| l.starts_with('#')).count();
    for (k, line) in lines.enumerate() {
        let v: Vec<f64> = line
            .split(',')
            .map(|x| x.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Domain(format!("{}: line {}: {e}", path.display(), k + 2 + skipped)))?;
        if v.len() != 4 {
            return Err(Error::Domain(format!(
                "{}: line {} has {} fields",
                path.display(),
                k + 2 + skipped,
                v.len()
            )));
        }
        s.push(v[0]);
        pts.push([v[1], v[2], v[3]]);
    }
    Ok((s, pts))
}

pub fn obj_string(curve: &ProjectedCurve, comment: Option<&str>) -> String {
    let mut out = String::new();
    comment_lines(&mut out, comment);
    for p in &curve.points {
        let _ = writeln!(out, "v {} {} {}", real(p[0]), real(p[1]), real(p[2]));
    }
    if !curve.points.is_empty() {
        out.push('l');
        for k in 1..=curve.points.len() {
            let _ = write!(out, " {k}");
        }
        out.push('\n');
    }
    out
}

pub fn write_obj(path: &Path, curve: &ProjectedCurve, comment: Option<&str>) -> Result<()> {
    write_file(path, &obj_string(curve, comment))
}

/// Pretty JSON with fixed real formatting.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let v = serde_json::to_value(value)?;
    let mut out = String::new();
    emit(&v, 0, &mut out);
    out.push('\n');
    Ok(out)
}

pub fn write_json<T: Serialize + ?Sized>(path: &Path, value: &T) -> Result<()> {
    write_file(path, &to_json(value)?)
}

fn emit(v: &Value, depth: usize, out: &mut String) {
    let pad = |d: usize, out: &mut String| out.extend(std::iter::repeat_n("  ", d));
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if n.is_f64() {
                let x = n.as_f64().unwrap();
                if x.is_finite() {
                    out.push_str(&real(x));
                } else {
                    out.push_str("null");
                }
            } else {
                out.push_str(&n.to_string());
            }
        }
        Value::String(s) => out.push_str(&Value::String(s.clone()).to_string()),
        Value::Array(a) => {
            if a.is_empty() {
                out.push_str("[]");
                return;
            }
            let flat = a.iter().all(|x| !x.is_array() && !x.is_object());
            out.push('[');
            for (k, x) in a.iter().enumerate() {
                if k > 0 {
                    out.push(',');
                }
                if flat {
                    if k > 0 {
                        out.push(' ');
                    }
                } else {
                    out.push('\n');
                    pad(depth + 1, out);
                }
                emit(x, depth + 1, out);
            }
            if !flat {
                out.push('\n');
                pad(depth, out);
            }
            out.push(']');
        }
        Value::Object(m) => {
            if m.is_empty() {
                out.push_str("{}");
                return;
            }
            out.push('{');
            for (k, (key, x)) in m.iter().enumerate() {
                if k > 0 {
                    out.push(',');
                }
                out.push('\n');
                pad(depth + 1, out);
                out.push_str(&Value::String(key.clone()).to_string());
                out.push_str(": ");
                emit(x, depth + 1, out);
            }
            out.push('\n');
            pad(depth, out);
            out.push('}');
        }
    }
}
