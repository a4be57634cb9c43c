//! Plain-text views of the JSON reports.

use std::fmt::Write;

use serde_json::Value;

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

fn summary(v: &Value) -> String {
    match v {
        Value::Array(a) => format!("[{} items]", a.len()),
        Value::Object(o) => format!("{{{} fields}}", o.len()),
        other => scalar(other).unwrap_or_default(),
    }
}

fn walk(out: &mut String, prefix: &str, v: &Value, depth: usize) {
    let Value::Object(map) = v else {
        let _ = writeln!(out, "  {prefix} = {}", summary(v));
        return;
    };
    for (k, x) in map {
        if k == "status" && depth == 0 {
            continue;
        }
        let key = if prefix.is_empty() {
            k.clone()
        } else {
            format!("{prefix}.{k}")
        };
        match x {
            Value::Object(_) if depth < 2 => walk(out, &key, x, depth + 1),
            _ => {
                let _ = writeln!(out, "  {key} = {}", summary(x));
            }
        }
    }
}

/// Task-by-task rendering of a single-algebra report.
pub fn report_text(report: &Value) -> String {
    let mut out = String::new();
    let a = &report["algebra"];
    let _ = writeln!(
        out,
        "{} over {}, dimension {}",
        summary(&a["name"]),
        summary(&report["request"]["field"]),
        summary(&a["dim"])
    );
    if let Some(results) = report["results"].as_object() {
        for (task, r) in results {
            let _ = writeln!(out, "{task}: {}", summary(&r["status"]));
            if r["status"] == "error" {
                let _ = writeln!(out, "  {}", summary(&r["error"]));
            } else {
                walk(&mut out, "", r, 0);
            }
        }
    }
    out
}

const COLUMNS: [&str; 8] = [
    "algebra",
    "field",
    "dim",
    "homlie_dim",
    "closed",
    "diamond",
    "heart",
    "status",
];

/// Aligned table of an evidence report.
pub fn table_text(report: &Value) -> String {
    let rows: Vec<Vec<String>> = report["rows"]
        .as_array()
        .map(|rows| {
            rows.iter()
                .map(|r| COLUMNS.iter().map(|c| summary(&r[*c])).collect())
                .collect()
        })
        .unwrap_or_default();
    let widths: Vec<usize> = (0..COLUMNS.len())
        .map(|i| {
            rows.iter()
                .map(|r| r[i].len())
                .chain([COLUMNS[i].len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |cells: Vec<&str>| {
        let parts: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        parts.join("  ").trim_end().to_string()
    };
    let mut out = String::new();
    let _ = writeln!(out, "{}", line(COLUMNS.to_vec()));
    for r in &rows {
        let _ = writeln!(out, "{}", line(r.iter().map(String::as_str).collect()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn renders_report() {
        let r = json!({
            "algebra": {"name": "sl2", "dim": 3},
            "request": {"field": "Q"},
            "results": {
                "homlie": {"status": "ok", "dim": 6, "basis": [1, 2], "system": {"rows": 3, "cols": 9}},
                "fspace": {"status": "error", "error": "cap exceeded"},
            },
        });
        let t = report_text(&r);
        assert!(t.starts_with("sl2 over Q, dimension 3\n"));
        assert!(t.contains("homlie: ok\n  basis = [2 items]\n  dim = 6\n  system.cols = 9\n"));
        assert!(t.contains("fspace: error\n  cap exceeded\n"));
    }

    #[test]
    fn renders_table() {
        let r = json!({"rows": [{"algebra": "sl2", "field": "Q", "dim": 3, "homlie_dim": 6,
            "closed": true, "diamond": false, "heart": false, "status": "ok"}]});
        let t = table_text(&r);
        let lines: Vec<&str> = t.lines().collect();
        assert_eq!(lines.len(), 2);
        assert!(lines[1].starts_with("sl2      Q      3    6           true"));
    }
}
