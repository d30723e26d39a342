//! Loading diagrams, arrangements, braid words and move scripts.
//!
//! Diagram text is either the DSL or JSON. The DSL accepted here adds one
//! statement to the core grammar, `free NAME:COUNT …;`, which sets free
//! marked points per component. JSON is an [`Arrangement`] when it has a
//! `diagram` key (whose value may also be DSL text), `{"dsl": "…"}` for
//! wrapped DSL, and a bare diagram otherwise.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Read};

use braidwork_core::{parse, Arrangement, BraidError, BraidWord, HomologyError, MoveInstance, ParseError, WiringDiagram};
use serde_json::Value;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("empty input")]
    Empty,
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad free clause `{0}`, expected NAME:COUNT")]
    FreeClause(String),
    #[error(transparent)]
    Arrangement(#[from] HomologyError),
    #[error(transparent)]
    Braid(#[from] BraidError),
}

/// Reads a file, or standard input for `-`.
pub fn read_source(path: &str) -> Result<String, InputError> {
    let text = if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|source| InputError::Io { path: "stdin".into(), source })?;
        s
    } else {
        fs::read_to_string(path).map_err(|source| InputError::Io { path: path.into(), source })?
    };
    if text.trim().is_empty() {
        return Err(InputError::Empty);
    }
    Ok(text)
}

/// Splits `free` statements out of DSL text. They are blanked in place so
/// parse errors keep their original line and column.
fn split_free(text: &str) -> Result<(String, Vec<(String, usize)>), InputError> {
    let mut masked = text.as_bytes().to_vec();
    let mut comment = false;
    for b in masked.iter_mut() {
        match *b {
            b'#' => comment = true,
            b'\n' => comment = false,
            _ => {}
        }
        if comment {
            *b = b' ';
        }
    }
    let mut body = text.as_bytes().to_vec();
    let mut free = Vec::new();
    let mut start = 0;
    for end in 0..=masked.len() {
        if end < masked.len() && masked[end] != b';' {
            continue;
        }
        let stmt = String::from_utf8_lossy(&masked[start..end]).into_owned();
        let t = stmt.trim_start();
        let is_free = t.strip_prefix("free").is_some_and(|r| r.is_empty() || r.starts_with(char::is_whitespace));
        if is_free {
            for item in t[4..].split(|c: char| c.is_whitespace() || c == ',').filter(|s| !s.is_empty()) {
                let (name, count) = item.split_once(':').ok_or_else(|| InputError::FreeClause(item.into()))?;
                let count = count.parse().map_err(|_| InputError::FreeClause(item.into()))?;
                free.push((name.to_string(), count));
            }
            for b in &mut body[start..(end + 1).min(masked.len())] {
                if *b != b'\n' {
                    *b = b' ';
                }
            }
        }
        start = end + 1;
    }
    Ok((String::from_utf8(body).expect("only ASCII bytes were replaced"), free))
}

pub fn arrangement_from_text(text: &str) -> Result<Arrangement, InputError> {
    if text.trim().is_empty() {
        return Err(InputError::Empty);
    }
    if text.trim_start().starts_with('{') {
        let v: Value = serde_json::from_str(text)?;
        if let Some(dsl) = v.get("diagram").and_then(Value::as_str) {
            let mut a = arrangement_from_text(dsl)?;
            if let Some(free) = v.get("free_points") {
                let free: BTreeMap<String, usize> = serde_json::from_value(free.clone())?;
                a = Arrangement::with_named_free_points(a.diagram().clone(), a.named_free_points().into_iter().chain(free))?;
            }
            return Ok(a);
        }
        if v.get("diagram").is_some() {
            return Ok(serde_json::from_value(v)?);
        }
        if let Some(dsl) = v.get("dsl").and_then(Value::as_str) {
            return arrangement_from_text(dsl);
        }
        return Ok(Arrangement::bare(serde_json::from_value::<WiringDiagram>(v)?));
    }
    let (body, free) = split_free(text)?;
    let d = parse(&body)?;
    Ok(Arrangement::with_named_free_points(d, free)?)
}

pub fn arrangement_from_json(v: &Value) -> Result<Arrangement, InputError> {
    match v {
        Value::String(s) => arrangement_from_text(s),
        _ => arrangement_from_text(&v.to_string()),
    }
}

pub fn load_arrangement(path: &str) -> Result<Arrangement, InputError> {
    arrangement_from_text(&read_source(path)?)
}

/// Canonical DSL text, with a `free` statement when any component has free points.
pub fn arrangement_to_text(a: &Arrangement) -> String {
    let mut s = braidwork_core::print(a.diagram());
    let chart = a.diagram().chart();
    let items: Vec<String> = a
        .free_points()
        .iter()
        .enumerate()
        .filter(|(_, &n)| n > 0)
        .map(|(c, n)| format!("{}:{n}", chart.name(c)))
        .collect();
    if !items.is_empty() {
        s.pop();
        s.push_str(&format!("; free {}\n", items.join(" ")));
    }
    s
}

/// A braid word as compact text (`s1 s2'`) or as JSON.
pub fn braid_from_text(strands: usize, text: &str) -> Result<BraidWord, InputError> {
    let t = text.trim();
    if t.starts_with('{') {
        return Ok(serde_json::from_str(t)?);
    }
    Ok(BraidWord::parse(strands, t)?)
}

/// A JSON list of move instances, or an object with a `script` list.
pub fn script_from_text(text: &str) -> Result<Vec<MoveInstance>, InputError> {
    let v: Value = serde_json::from_str(text)?;
    let list = match v {
        Value::Object(mut o) if o.contains_key("script") => o.remove("script").unwrap_or_default(),
        other => other,
    };
    Ok(serde_json::from_value(list)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    const NESTED: &str = "strands 4; comps A:1,4 B:2,3; TN[1,4]; (I[3,4])^3; I[1,4]";

    #[test]
    fn free_clause_round_trip() {
        let a = arrangement_from_text(&format!("{NESTED}; free A:2 B:2")).unwrap();
        assert_eq!(a.free_points(), [2, 2]);
        let text = arrangement_to_text(&a);
        assert!(text.ends_with("; free A:2 B:2\n"), "{text}");
        assert_eq!(arrangement_from_text(&text).unwrap(), a);
    }

    #[test]
    fn free_clause_anywhere_and_comments() {
        let a = arrangement_from_text("# free X:1;\nstrands 2; free B:1; comps A:1 B:2; T[1]").unwrap();
        assert_eq!(a.free_points(), [0, 1]);
        assert!(matches!(arrangement_from_text("strands 1; comps A:1; free A"), Err(InputError::FreeClause(_))));
        assert!(matches!(arrangement_from_text("strands 1; comps A:1; free Z:1"), Err(InputError::Arrangement(_))));
    }

    #[test]
    fn error_positions_survive_blanking() {
        let plain = arrangement_from_text("strands 2; comps A:1 B:2;\nQ[1]").unwrap_err().to_string();
        let with_free = arrangement_from_text("strands 2; comps A:1 B:2; free A:1;\nQ[1]").unwrap_err().to_string();
        assert!(plain.starts_with("2:"), "{plain}");
        assert_eq!(plain, with_free);
    }

    #[test]
    fn json_forms() {
        let a = arrangement_from_text(&format!("{NESTED}; free A:1")).unwrap();
        let full = serde_json::to_string(&a).unwrap();
        assert_eq!(arrangement_from_text(&full).unwrap(), a);
        let bare = serde_json::to_string(a.diagram()).unwrap();
        assert_eq!(arrangement_from_text(&bare).unwrap(), Arrangement::bare(a.diagram().clone()));
        let wrapped = serde_json::json!({ "dsl": format!("{NESTED}; free A:1") }).to_string();
        assert_eq!(arrangement_from_text(&wrapped).unwrap(), a);
        let mixed = serde_json::json!({ "diagram": NESTED, "free_points": { "A": 1 } }).to_string();
        assert_eq!(arrangement_from_text(&mixed).unwrap(), a);
        assert!(matches!(arrangement_from_text("  \n"), Err(InputError::Empty)));
    }

    #[test]
    fn braid_text_and_json() {
        let w = braid_from_text(4, "s3 s1' s2").unwrap();
        assert_eq!(w.to_string(), "s3 s1' s2");
        let j = serde_json::to_string(&w).unwrap();
        assert_eq!(braid_from_text(4, &j).unwrap(), w);
        assert!(braid_from_text(2, "s2").is_err());
    }
}
