//! `--config <path>`: a JSON object whose entries are appended to the
//! command line as flags, so they take precedence over flags given there.

use std::fs;

use nilgrowth::Error;
use serde_json::{Map, Value};

const COMMANDS: [&str; 6] = ["lie", "lattice", "harmonious", "growth", "relations", "verify"];

fn take_config(argv: &mut Vec<String>) -> Result<Option<String>, Error> {
    let Some(i) = argv.iter().position(|a| a == "--config" || a.starts_with("--config=")) else {
        return Ok(None);
    };
    let arg = argv.remove(i);
    if let Some(path) = arg.strip_prefix("--config=") {
        return Ok(Some(path.to_string()));
    }
    if i < argv.len() {
        Ok(Some(argv.remove(i)))
    } else {
        Err(Error::usage("--config needs a path"))
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::String(s) => Some(s.clone()),
        Value::Number(n) => Some(n.to_string()),
        Value::Array(items) => {
            let parts: Option<Vec<String>> = items.iter().map(scalar).collect();
            parts.map(|p| p.join(","))
        }
        _ => None,
    }
}

fn push_flags(out: &mut Vec<String>, prefix: &str, map: &Map<String, Value>) -> Result<(), Error> {
    for (key, value) in map {
        let name = format!("{prefix}{}", key.replace('_', "-"));
        match value {
            Value::Bool(true) => out.push(format!("--{name}")),
            Value::Bool(false) | Value::Null => {}
            Value::Object(inner) => match name.as_str() {
                "parameters" => push_flags(out, "", inner)?,
                "budgets" => push_flags(out, "budget-", inner)?,
                "output" => {
                    for (k, v) in inner {
                        let flag = if k == "path" { "output" } else { k.as_str() };
                        let v = scalar(v).ok_or_else(|| Error::usage(format!("config: bad value for output.{k}")))?;
                        out.push(format!("--{flag}={v}"));
                    }
                }
                _ => return Err(Error::usage(format!("config: unexpected object under `{key}`"))),
            },
            other => {
                let v = scalar(other).ok_or_else(|| Error::usage(format!("config: bad value for `{key}`")))?;
                // `budgets.time` is spelled `--time-limit` on the command line.
                let name = if name == "budget-time" { "time-limit".to_string() } else { name };
                out.push(format!("--{name}={v}"));
            }
        }
    }
    Ok(())
}

/// Returns the argument vector with the config file merged in.
pub fn merge(mut argv: Vec<String>) -> Result<Vec<String>, Error> {
    let Some(path) = take_config(&mut argv)? else {
        return Ok(argv);
    };
    let text = fs::read_to_string(&path).map_err(|e| Error::usage(format!("cannot read config {path}: {e}")))?;
    let value: Value = serde_json::from_str(&text).map_err(|e| Error::usage(format!("config {path}: {e}")))?;
    let Value::Object(mut map) = value else {
        return Err(Error::usage(format!("config {path}: expected a JSON object")));
    };
    let from_file = match map.remove("command") {
        Some(Value::String(c)) => Some(c),
        Some(_) => return Err(Error::usage("config: `command` must be a string")),
        None => None,
    };
    let given = argv.get(1).filter(|a| COMMANDS.contains(&a.as_str())).cloned();
    match (&given, &from_file) {
        (Some(a), Some(b)) if a != b => {
            return Err(Error::usage(format!("config names command `{b}` but `{a}` was given")));
        }
        (None, Some(c)) => argv.insert(1, c.clone()),
        (None, None) => return Err(Error::usage("no command given")),
        _ => {}
    }
    push_flags(&mut argv, "", &map)?;
    Ok(argv)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(s: &[&str]) -> Vec<String> {
        s.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn flattens_nested_sections() {
        let mut out = Vec::new();
        let cfg: Value = serde_json::from_str(
            r#"{"seed": 9, "parameters": {"dims": "2..3", "suite": "minkowski"}, "budgets": {"points": 100, "time": 5},
                "output": {"path": "r.csv", "format": "csv"}, "abelian": [8, 64]}"#,
        )
        .unwrap();
        push_flags(&mut out, "", cfg.as_object().unwrap()).unwrap();
        assert_eq!(
            out,
            args(&[
                "--abelian=8,64",
                "--budget-points=100",
                "--time-limit=5",
                "--format=csv",
                "--output=r.csv",
                "--dims=2..3",
                "--suite=minkowski",
                "--seed=9",
            ])
        );
    }

    #[test]
    fn missing_config_path() {
        assert!(matches!(merge(args(&["nilgrowth", "verify", "--config"])), Err(Error::Usage(_))));
        assert_eq!(merge(args(&["nilgrowth", "lie"])).unwrap(), args(&["nilgrowth", "lie"]));
    }
}
