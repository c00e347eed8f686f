//! Report values and the two output forms: aligned text and JSON.

use cellmap_core::arith::Q;
use serde::Serialize;
use serde_json::Value;

use crate::EXIT_OK;

/// Output of a command: the JSON document, its text rendering and the exit
/// status the data implies.
#[derive(Clone, Debug)]
pub struct Report {
    pub json: Value,
    pub text: String,
    pub code: i32,
    /// One-line reason when `code` is nonzero.
    pub summary: String,
}

impl Report {
    pub fn new<T: Serialize>(body: &T, text: String) -> Report {
        let json = serde_json::to_value(body).expect("report bodies serialize");
        Report { json, text, code: EXIT_OK, summary: String::new() }
    }

    pub fn failing(mut self, code: i32, summary: impl Into<String>) -> Report {
        self.code = code;
        self.summary = summary.into();
        self
    }

    /// Pretty JSON with sorted keys and a trailing newline.
    pub fn json_text(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.json).expect("json values print");
        s.push('\n');
        s
    }
}

pub fn q(x: &Q) -> String {
    if x.is_integer() {
        x.to_integer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn list<T: ToString>(xs: &[T]) -> String {
    let v: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("[{}]", v.join(","))
}

/// Left-aligned columns separated by two spaces.
pub fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<String>| {
        let mut s = String::new();
        for (i, (c, w)) in cells.iter().zip(&widths).enumerate() {
            if i + 1 == cells.len() {
                s.push_str(c);
            } else {
                s.push_str(&format!("{c:<w$}  "));
            }
        }
        s.trim_end().to_string() + "\n"
    };
    let mut out = line(headers.iter().map(|h| h.to_string()).collect());
    for r in rows {
        out.push_str(&line(r.clone()));
    }
    out
}
