//! Line-oriented instance files.
//!
//! ```text
//! RSD 1
//! q <p> m <m> n <n> k <k> r <r>
//! modulus <m+1 integers, ascending degree>
//! G
//! <k lines of n element encodings>
//! y <n integers>
//! solution_x <k integers>     (optional)
//! solution_e <n integers>     (optional)
//! ```
//!
//! `#` starts a comment that runs to the end of the line; blank lines are
//! ignored. The parity-check matrix is not stored: it is re-derived from G.

use std::io::{self, BufRead, Write};

use thiserror::Error;

use super::{CodeParams, RsdError, RsdInstance, RsdSolution};
use crate::gfqm::{Field, FieldElement};
use crate::linalg::Matrix;

#[derive(Debug, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    /// 1-based line number; 0 when the problem is the end of input.
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Error)]
pub enum ParseErrorKind {
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("malformed header: {0}")]
    Header(String),
    #[error("unexpected end of file, expected {0}")]
    UnexpectedEof(&'static str),
    #[error("expected {expected}, found {found:?}")]
    Unexpected { expected: String, found: String },
    #[error("invalid integer {0:?}")]
    BadInteger(String),
    #[error("expected {expected} values, found {found}")]
    WrongCount { expected: usize, found: usize },
    #[error("element encoding {value} out of range [0, {order})")]
    ElementOutOfRange { value: u64, order: u64 },
    #[error("bad modulus: {0}")]
    Modulus(String),
    #[error(transparent)]
    Instance(#[from] RsdError),
}

/// Writes `inst`, including the hidden solution when present.
pub fn write_instance<W: Write>(inst: &RsdInstance, mut out: W) -> io::Result<()> {
    let CodeParams { q, m, n, k, r } = inst.params;
    let join = |v: &mut dyn Iterator<Item = String>| v.collect::<Vec<_>>().join(" ");
    writeln!(out, "RSD 1")?;
    writeln!(out, "q {q} m {m} n {n} k {k} r {r}")?;
    writeln!(out, "modulus {}", join(&mut inst.field.modulus().iter().map(|c| c.to_string())))?;
    writeln!(out, "G")?;
    for i in 0..inst.g.rows() {
        writeln!(out, "{}", join(&mut inst.g.row(i).iter().map(|x| x.to_string())))?;
    }
    writeln!(out, "y {}", join(&mut inst.y.iter().map(|x| x.to_string())))?;
    if let Some(sol) = &inst.hidden {
        writeln!(out, "solution_x {}", join(&mut sol.x.iter().map(|x| x.to_string())))?;
        writeln!(out, "solution_e {}", join(&mut sol.e.iter().map(|x| x.to_string())))?;
    }
    Ok(())
}

impl RsdInstance {
    pub fn to_text(&self) -> String {
        let mut buf = Vec::new();
        write_instance(self, &mut buf).expect("writing to memory cannot fail");
        String::from_utf8(buf).expect("instance text is ASCII")
    }

    pub fn from_text(text: &str) -> Result<Self, ParseError> {
        read_instance(text.as_bytes())
    }
}

struct Lines<R> {
    inner: io::Lines<R>,
    number: usize,
}

impl<R: BufRead> Lines<R> {
    /// Next non-blank line with comments stripped, tokenized.
    fn next_tokens(&mut self, expecting: &'static str) -> Result<(usize, Vec<String>), ParseError> {
        loop {
            let Some(line) = self.inner.next() else {
                return Err(ParseError {
                    line: self.number + 1,
                    kind: ParseErrorKind::UnexpectedEof(expecting),
                });
            };
            self.number += 1;
            let line = line.map_err(|e| ParseError {
                line: self.number,
                kind: e.into(),
            })?;
            let content = line.split('#').next().unwrap_or("");
            let tokens: Vec<String> = content.split_whitespace().map(str::to_owned).collect();
            if !tokens.is_empty() {
                return Ok((self.number, tokens));
            }
        }
    }

    fn rest_is_empty(&mut self) -> Result<Option<(usize, Vec<String>)>, ParseError> {
        match self.next_tokens("") {
            Ok(t) => Ok(Some(t)),
            Err(ParseError {
                kind: ParseErrorKind::UnexpectedEof(_),
                ..
            }) => Ok(None),
            Err(e) => Err(e),
        }
    }
}

fn err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

fn parse_u64(line: usize, tok: &str) -> Result<u64, ParseError> {
    tok.parse::<u64>()
        .map_err(|_| err(line, ParseErrorKind::BadInteger(tok.to_owned())))
}

fn parse_usize(line: usize, tok: &str) -> Result<usize, ParseError> {
    tok.parse::<usize>()
        .map_err(|_| err(line, ParseErrorKind::BadInteger(tok.to_owned())))
}

fn expect_keyword(line: usize, tokens: &[String], keyword: &str) -> Result<(), ParseError> {
    if tokens.first().map(String::as_str) != Some(keyword) {
        return Err(err(
            line,
            ParseErrorKind::Unexpected {
                expected: format!("'{keyword}'"),
                found: tokens.join(" "),
            },
        ));
    }
    Ok(())
}

fn parse_elements(
    field: &Field,
    line: usize,
    tokens: &[String],
    expected: usize,
) -> Result<Vec<FieldElement>, ParseError> {
    if tokens.len() != expected {
        return Err(err(
            line,
            ParseErrorKind::WrongCount {
                expected,
                found: tokens.len(),
            },
        ));
    }
    tokens
        .iter()
        .map(|t| {
            let v = parse_u64(line, t)?;
            field.element(v).map_err(|_| {
                err(
                    line,
                    ParseErrorKind::ElementOutOfRange {
                        value: v,
                        order: field.order(),
                    },
                )
            })
        })
        .collect()
}

/// Parses an instance file.
pub fn read_instance<R: BufRead>(reader: R) -> Result<RsdInstance, ParseError> {
    let mut lines = Lines {
        inner: reader.lines(),
        number: 0,
    };

    let (ln, magic) = lines.next_tokens("'RSD 1' header")?;
    if magic != ["RSD", "1"] {
        return Err(err(ln, ParseErrorKind::Header(format!("expected 'RSD 1', found {:?}", magic.join(" ")))));
    }

    let (ln, header) = lines.next_tokens("parameter line")?;
    let keys = ["q", "m", "n", "k", "r"];
    if header.len() != 10 || header.iter().step_by(2).map(String::as_str).ne(keys.iter().copied()) {
        return Err(err(
            ln,
            ParseErrorKind::Header(format!("expected 'q <p> m <m> n <n> k <k> r <r>', found {:?}", header.join(" "))),
        ));
    }
    let q = parse_u64(ln, &header[1])?;
    let q = u32::try_from(q).map_err(|_| err(ln, ParseErrorKind::BadInteger(header[1].clone())))?;
    let m = parse_usize(ln, &header[3])?;
    let n = parse_usize(ln, &header[5])?;
    let k = parse_usize(ln, &header[7])?;
    let r = parse_usize(ln, &header[9])?;
    let params = CodeParams { q, m, n, k, r };
    params
        .validate()
        .map_err(|e| err(ln, ParseErrorKind::Header(e.to_string())))?;

    let (ln, modline) = lines.next_tokens("modulus line")?;
    expect_keyword(ln, &modline, "modulus")?;
    if modline.len() != m + 2 {
        return Err(err(
            ln,
            ParseErrorKind::WrongCount {
                expected: m + 1,
                found: modline.len() - 1,
            },
        ));
    }
    let modulus = modline[1..]
        .iter()
        .map(|t| {
            let v = parse_u64(ln, t)?;
            u32::try_from(v).map_err(|_| err(ln, ParseErrorKind::BadInteger(t.clone())))
        })
        .collect::<Result<Vec<u32>, _>>()?;
    let field = Field::with_modulus(q, &modulus).map_err(|e| err(ln, ParseErrorKind::Modulus(e.to_string())))?;

    let (g_line, gtag) = lines.next_tokens("'G'")?;
    expect_keyword(g_line, &gtag, "G")?;
    if gtag.len() != 1 {
        return Err(err(
            g_line,
            ParseErrorKind::Unexpected {
                expected: "'G' alone on its line".into(),
                found: gtag.join(" "),
            },
        ));
    }
    let mut rows = Vec::with_capacity(k);
    for _ in 0..k {
        let (ln, toks) = lines.next_tokens("generator row")?;
        rows.push(parse_elements(&field, ln, &toks, n)?);
    }
    let g = Matrix::from_rows(n, &rows);

    let (ln, ytoks) = lines.next_tokens("'y' line")?;
    expect_keyword(ln, &ytoks, "y")?;
    let y = parse_elements(&field, ln, &ytoks[1..], n)?;

    let mut hidden = None;
    let mut last_line = ln;
    if let Some((ln, xtoks)) = lines.rest_is_empty()? {
        expect_keyword(ln, &xtoks, "solution_x")?;
        let x = parse_elements(&field, ln, &xtoks[1..], k)?;
        let (ln, etoks) = lines.next_tokens("'solution_e' line")?;
        expect_keyword(ln, &etoks, "solution_e")?;
        let e = parse_elements(&field, ln, &etoks[1..], n)?;
        hidden = Some(RsdSolution { x, e });
        last_line = ln;
        if let Some((ln, extra)) = lines.rest_is_empty()? {
            return Err(err(
                ln,
                ParseErrorKind::Unexpected {
                    expected: "end of file".into(),
                    found: extra.join(" "),
                },
            ));
        }
    }

    RsdInstance::from_parts(params, field, g, y, hidden).map_err(|e| {
        let line = match e {
            RsdError::RankDeficientGenerator { .. } => g_line,
            _ => last_line,
        };
        err(line, ParseErrorKind::Instance(e))
    })
}
