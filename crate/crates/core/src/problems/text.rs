//! Line-oriented reader shared by the instance formats.
//!
//! Lines starting with `#` are comments. Blank lines are skipped before the
//! header; inside data blocks a blank line is an empty list.

use std::fmt::Display;
use std::str::FromStr;

use crate::error::{Error, Result};

pub struct LineReader<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> LineReader<'a> {
    pub fn new(text: &'a str) -> Self {
        let lines: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.starts_with('#'))
            .collect();
        let mut pos = 0;
        while pos < lines.len() && lines[pos].1.is_empty() {
            pos += 1;
        }
        Self { lines, pos }
    }

    /// Line number for error messages: the next line, or one past the end.
    pub fn current_line(&self) -> usize {
        self.lines
            .get(self.pos)
            .map(|l| l.0)
            .or_else(|| self.lines.last().map(|l| l.0 + 1))
            .unwrap_or(1)
    }

    pub fn error(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            line: self.current_line(),
            msg: msg.into(),
        }
    }

    pub fn next_values<T: FromStr>(&mut self) -> Result<Vec<T>>
    where
        T::Err: Display,
    {
        let Some(&(line, text)) = self.lines.get(self.pos) else {
            return Err(self.error("unexpected end of input"));
        };
        self.pos += 1;
        text.split_whitespace()
            .map(|tok| {
                tok.parse::<T>().map_err(|e| Error::Parse {
                    line,
                    msg: format!("bad value {tok:?}: {e}"),
                })
            })
            .collect()
    }

    /// Next line with exactly `n` values.
    pub fn exact<T: FromStr>(&mut self, n: usize, what: &str) -> Result<Vec<T>>
    where
        T::Err: Display,
    {
        let line = self.current_line();
        let v = self.next_values::<T>()?;
        if v.len() != n {
            return Err(Error::Parse {
                line,
                msg: format!("expected {n} values for {what}, found {}", v.len()),
            });
        }
        Ok(v)
    }

    /// Any trailing content must be blank.
    pub fn finish(mut self) -> Result<()> {
        while let Some(&(_, l)) = self.lines.get(self.pos) {
            if !l.is_empty() {
                return Err(self.error("unexpected trailing data"));
            }
            self.pos += 1;
        }
        Ok(())
    }
}

pub fn join<T: Display>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn parse_index_list(
    reader: &mut LineReader<'_>,
    bound: usize,
    what: &str,
) -> Result<Vec<usize>> {
    let line = reader.current_line();
    let v = reader.next_values::<usize>()?;
    if let Some(bad) = v.iter().find(|&&j| j >= bound) {
        return Err(Error::Parse {
            line,
            msg: format!("{what} index {bad} out of range 0..{bound}"),
        });
    }
    Ok(v)
}
