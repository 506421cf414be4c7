//! Code extraction: pulls the last fenced code block out of a raw model
//! response and parses it into `DropCall`s.
//!
//! Parsing is strict by default: a response is either a clean program or
//! a failed trial. Improperly formatted output failing the whole trial is
//! part of the competitive semantics, not an error to paper over.

use crate::model::{BlockType, DropCall};
use serde::{Deserialize, Serialize};

/// Outcome of extracting and parsing one trial response.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtractionStatus {
    /// At least one call parsed and every line was a call or filler.
    Ok,
    /// Fewer than two triple-backtick fences in the response.
    NoFence,
    /// A fenced block was found but it contains only filler.
    NoCalls,
    /// A non-ignorable line failed the grammar; the whole trial fails.
    Malformed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtractionResult {
    pub calls: Vec<DropCall>,
    pub status: ExtractionStatus,
    pub diagnostics: Vec<String>,
}

impl ExtractionResult {
    pub fn no_fence() -> Self {
        Self {
            calls: Vec::new(),
            status: ExtractionStatus::NoFence,
            diagnostics: vec!["response contains no closed code fence".to_string()],
        }
    }

    pub fn is_ok(&self) -> bool {
        self.status == ExtractionStatus::Ok
    }
}

/// How to treat lines that are neither calls nor filler.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Leniency {
    /// Any unrecognized line fails the trial.
    #[default]
    Strict,
    /// Unrecognized lines are skipped like filler.
    Lenient,
}

/// Returns the text strictly between the final two triple-backtick fences,
/// or `None` when fewer than two fences exist. An info-string on the
/// opening fence line (e.g. a language tag) is discarded.
pub fn extract_last_fenced_block(response: &str) -> Option<String> {
    let mut positions = Vec::new();
    let bytes = response.as_bytes();
    let mut i = 0;
    while i + 3 <= bytes.len() {
        if &bytes[i..i + 3] == b"```" {
            positions.push(i);
            i += 3;
        } else {
            i += 1;
        }
    }
    if positions.len() < 2 {
        return None;
    }
    let open = positions[positions.len() - 2];
    let close = positions[positions.len() - 1];
    let inner = &response[open + 3..close];
    // Multi-line block: the first line is the info string. Inline block:
    // the whole content is the code.
    match inner.find('\n') {
        Some(nl) => Some(inner[nl + 1..].to_string()),
        None => Some(inner.to_string()),
    }
}

/// Parses fenced code into drop calls, strict mode.
pub fn parse_drop_calls(code: &str) -> ExtractionResult {
    parse_drop_calls_with(code, Leniency::Strict)
}

/// Parses fenced code line by line. A valid line is
/// `drop_block(<block>, <int>)` with optional quotes around the block
/// literal and arbitrary interior whitespace. Blank lines and `#` comments
/// are filler. Anything else is malformed in strict mode and filler in
/// lenient mode.
pub fn parse_drop_calls_with(code: &str, leniency: Leniency) -> ExtractionResult {
    let mut calls = Vec::new();
    let mut diagnostics = Vec::new();
    let mut malformed = false;

    for (idx, line) in code.lines().enumerate() {
        match parse_call_line(line) {
            Ok(Some(call)) => calls.push(call),
            Ok(None) => {}
            Err(reason) => match leniency {
                Leniency::Strict => {
                    diagnostics.push(format!("line {}: {}", idx + 1, reason));
                    malformed = true;
                }
                Leniency::Lenient => {
                    diagnostics.push(format!("line {} skipped: {}", idx + 1, reason));
                }
            },
        }
    }

    let status = if malformed {
        ExtractionStatus::Malformed
    } else if calls.is_empty() {
        diagnostics.push("code block contains no drop_block calls".to_string());
        ExtractionStatus::NoCalls
    } else {
        ExtractionStatus::Ok
    };
    ExtractionResult {
        calls,
        status,
        diagnostics,
    }
}

/// Extraction and parsing for one whole response, strict mode.
pub fn extract_and_parse(response: &str) -> ExtractionResult {
    match extract_last_fenced_block(response) {
        Some(code) => parse_drop_calls(&code),
        None => ExtractionResult::no_fence(),
    }
}

/// `Ok(Some(call))` for a call line, `Ok(None)` for filler, `Err` otherwise.
fn parse_call_line(line: &str) -> Result<Option<DropCall>, String> {
    let trimmed = line.trim();
    if trimmed.is_empty() || trimmed.starts_with('#') {
        return Ok(None);
    }

    let mut cur = Cursor::new(trimmed);
    cur.expect_keyword("drop_block")
        .and_then(|()| cur.expect_char('('))
        .and_then(|()| cur.block_literal())
        .and_then(|block| {
            cur.expect_char(',')?;
            let x = cur.integer_literal()?;
            cur.expect_char(')')?;
            cur.expect_end()?;
            Ok(Some(DropCall::new(block, x)))
        })
        .map_err(|e| format!("{e} in {trimmed:?}"))
}

struct Cursor<'a> {
    rest: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Self { rest: s }
    }

    fn skip_ws(&mut self) {
        self.rest = self.rest.trim_start();
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<(), String> {
        self.skip_ws();
        if let Some(rest) = self.rest.strip_prefix(kw) {
            // The keyword must not run into a longer identifier.
            if rest
                .chars()
                .next()
                .is_some_and(|c| c.is_alphanumeric() || c == '_')
            {
                return Err(format!("unknown function name (expected {kw})"));
            }
            self.rest = rest;
            Ok(())
        } else {
            Err(format!("expected {kw}(...)"))
        }
    }

    fn expect_char(&mut self, ch: char) -> Result<(), String> {
        self.skip_ws();
        if let Some(rest) = self.rest.strip_prefix(ch) {
            self.rest = rest;
            Ok(())
        } else {
            Err(format!("expected {ch:?}"))
        }
    }

    fn expect_end(&mut self) -> Result<(), String> {
        self.skip_ws();
        if self.rest.is_empty() {
            Ok(())
        } else {
            Err("trailing content after call".to_string())
        }
    }

    fn block_literal(&mut self) -> Result<BlockType, String> {
        self.skip_ws();
        let quote = self.rest.chars().next().filter(|c| *c == '\'' || *c == '"');
        if let Some(q) = quote {
            self.rest = &self.rest[1..];
            let body: String = self.rest.chars().take_while(|&c| c != q).collect();
            if body.len() == self.rest.len() {
                return Err("unterminated block type literal".to_string());
            }
            self.rest = &self.rest[body.len() + 1..];
            BlockType::from_literal(&body).ok_or_else(|| format!("unknown block type {body:?}"))
        } else {
            let body: String = self
                .rest
                .chars()
                .take_while(|c| c.is_alphanumeric() || *c == '_')
                .collect();
            self.rest = &self.rest[body.len()..];
            BlockType::from_literal(&body).ok_or_else(|| format!("unknown block type {body:?}"))
        }
    }

    fn integer_literal(&mut self) -> Result<i64, String> {
        self.skip_ws();
        let mut len = 0;
        let bytes = self.rest.as_bytes();
        if bytes.first().is_some_and(|&b| b == b'+' || b == b'-') {
            len = 1;
        }
        while bytes.get(len).is_some_and(|b| b.is_ascii_digit()) {
            len += 1;
        }
        let token = &self.rest[..len];
        if token.is_empty() || !token.bytes().any(|b| b.is_ascii_digit()) {
            return Err("expected integer x_position".to_string());
        }
        self.rest = &self.rest[len..];
        // A '.' right after the digits means a real literal; the signature
        // declares int, so reals fail the trial.
        if self.rest.starts_with('.') {
            return Err("x_position must be an integer, not a real".to_string());
        }
        token
            .parse::<i64>()
            .map_err(|_| format!("integer out of range: {token}"))
    }
}
