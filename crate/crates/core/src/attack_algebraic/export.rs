//! Text export of the annihilator polynomial system for external Gröbner
//! basis tools.
//!
//! ```text
//! POLYSYS 1
//! field q <p> m <m> modulus <c_0> <c_1> ... <c_m>
//! vars p 0..<r-1> c 1..<k>
//! guess c<i> = <value>
//! eq <j>: <coef>*p<a>*c<i>^<e> + ... + <coef> = 0
//! ```
//!
//! Field elements use the integer encoding of [`crate::gfqm`] and modulus
//! coefficients are listed from the constant term up. `p<a>` are the
//! non-leading coefficients of the monic annihilator (p_r = 1 is implicit),
//! `c<i>` the message coordinates, and `^<e>` a literal exponent q^a. An
//! empty variable range is written `none`. Each `guess` line records a
//! message coordinate that was substituted before export. Equations are
//! numbered from 1; terms with zero coefficient are omitted and an equation
//! with no terms reads `0 = 0`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::gfqm::{Field, FieldElement};
use crate::rsd::RsdInstance;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExportError {
    #[error("guess for c{index} is outside c1..c{k}")]
    GuessOutOfRange { index: usize, k: usize },
    #[error("guessed value {value} is not a field element")]
    NotAnElement { value: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct PolySysError {
    pub line: usize,
    pub message: String,
}

/// `coef · p_a · c_i^e`, each factor optional. `c` indices start at 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PolyTerm {
    pub coef: FieldElement,
    pub p: Option<usize>,
    pub c: Option<(usize, u64)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolySystem {
    pub q: u32,
    pub m: usize,
    pub modulus: Vec<u32>,
    pub r: usize,
    pub k: usize,
    pub guesses: Vec<(usize, FieldElement)>,
    pub equations: Vec<Vec<PolyTerm>>,
}

impl PolySystem {
    pub fn field(&self) -> Result<Field, crate::gfqm::FieldError> {
        Field::with_modulus(self.q, &self.modulus)
    }

    /// Evaluates every equation; `c[i-1]` is the value of `c<i>`.
    pub fn evaluate(&self, field: &Field, p: &[FieldElement], c: &[FieldElement]) -> Vec<FieldElement> {
        self.equations
            .iter()
            .map(|terms| {
                terms.iter().fold(field.zero(), |acc, t| {
                    let mut v = t.coef;
                    if let Some(a) = t.p {
                        v = field.mul(v, p[a]);
                    }
                    if let Some((i, e)) = t.c {
                        v = field.mul(v, field.pow(c[i - 1], e as u128));
                    }
                    field.add(acc, v)
                })
            })
            .collect()
    }

    pub fn to_text(&self) -> String {
        let mut s = String::from("POLYSYS 1\n");
        let modulus: Vec<String> = self.modulus.iter().map(u32::to_string).collect();
        let _ = writeln!(s, "field q {} m {} modulus {}", self.q, self.m, modulus.join(" "));
        let range = |lo: usize, len: usize| {
            if len == 0 {
                "none".to_owned()
            } else {
                format!("{lo}..{}", lo + len - 1)
            }
        };
        let _ = writeln!(s, "vars p {} c {}", range(0, self.r), range(1, self.k));
        for (i, v) in &self.guesses {
            let _ = writeln!(s, "guess c{i} = {v}");
        }
        for (j, terms) in self.equations.iter().enumerate() {
            let body: Vec<String> = terms
                .iter()
                .map(|t| {
                    let mut out = t.coef.to_string();
                    if let Some(a) = t.p {
                        let _ = write!(out, "*p{a}");
                    }
                    if let Some((i, e)) = t.c {
                        let _ = write!(out, "*c{i}^{e}");
                    }
                    out
                })
                .collect();
            let body = if body.is_empty() { "0".to_owned() } else { body.join(" + ") };
            let _ = writeln!(s, "eq {}: {body} = 0", j + 1);
        }
        s
    }
}

/// Builds the n polynomials P(y_j − Σ_i c_i g_ij) with P monic of q-degree
/// r, substituting the guessed message coordinates (keys start at 1).
pub fn export_polynomial_system(
    inst: &RsdInstance,
    guesses: &BTreeMap<usize, u64>,
) -> Result<PolySystem, ExportError> {
    let f = &inst.field;
    let (n, k, r) = (inst.params.n, inst.params.k, inst.params.r);
    let mut fixed: Vec<Option<FieldElement>> = vec![None; k];
    for (&index, &value) in guesses {
        if index == 0 || index > k {
            return Err(ExportError::GuessOutOfRange { index, k });
        }
        fixed[index - 1] = Some(f.element(value).map_err(|_| ExportError::NotAnElement { value })?);
    }
    let q = f.q() as u64;
    let mut equations = Vec::with_capacity(n);
    for j in 0..n {
        let mut terms = Vec::new();
        let mut push = |coef: FieldElement, p, c| {
            if !coef.is_zero() {
                terms.push(PolyTerm { coef, p, c });
            }
        };
        let mut qa = 1u64;
        for a in 0..=r {
            // Σ_i −g_ij^{q^a} c_i^{q^a}, with y_j^{q^a} the constant part.
            let mut lin = f.frobenius(inst.y[j], a);
            let mut free = Vec::new();
            for (i, fixed_i) in fixed.iter().enumerate() {
                let coef = f.neg(f.frobenius(inst.g.get(i, j), a));
                match *fixed_i {
                    Some(v) => lin = f.add(lin, f.mul(coef, f.frobenius(v, a))),
                    None => free.push((coef, i + 1)),
                }
            }
            if a < r {
                push(lin, Some(a), None);
                for (coef, i) in free {
                    push(coef, Some(a), Some((i, qa)));
                }
            } else {
                for (coef, i) in free {
                    push(coef, None, Some((i, qa)));
                }
                push(lin, None, None);
            }
            qa = qa.saturating_mul(q);
        }
        equations.push(terms);
    }
    Ok(PolySystem {
        q: f.q(),
        m: f.m(),
        modulus: f.modulus().to_vec(),
        r,
        k,
        guesses: guesses
            .iter()
            .map(|(&i, &v)| (i, FieldElement::from_raw(v)))
            .collect(),
        equations,
    })
}

fn err(line: usize, message: impl Into<String>) -> PolySysError {
    PolySysError {
        line,
        message: message.into(),
    }
}

fn parse_range(line: usize, tok: &str, lo: usize) -> Result<usize, PolySysError> {
    if tok == "none" {
        return Ok(0);
    }
    let (a, b) = tok.split_once("..").ok_or_else(|| err(line, format!("bad range {tok:?}")))?;
    let a: usize = a.parse().map_err(|_| err(line, format!("bad range {tok:?}")))?;
    let b: usize = b.parse().map_err(|_| err(line, format!("bad range {tok:?}")))?;
    if a != lo || b + 1 < lo {
        return Err(err(line, format!("range {tok:?} must start at {lo}")));
    }
    Ok(b + 1 - lo)
}

fn parse_term(line: usize, s: &str) -> Result<PolyTerm, PolySysError> {
    let mut parts = s.split('*').map(str::trim);
    let coef = parts
        .next()
        .and_then(|c| c.parse::<u64>().ok())
        .ok_or_else(|| err(line, format!("bad coefficient in {s:?}")))?;
    let mut term = PolyTerm {
        coef: FieldElement::from_raw(coef),
        p: None,
        c: None,
    };
    for factor in parts {
        if let Some(a) = factor.strip_prefix('p') {
            term.p = Some(a.parse().map_err(|_| err(line, format!("bad factor {factor:?}")))?);
        } else if let Some(rest) = factor.strip_prefix('c') {
            let (i, e) = rest.split_once('^').ok_or_else(|| err(line, format!("missing exponent in {factor:?}")))?;
            let i = i.parse().map_err(|_| err(line, format!("bad factor {factor:?}")))?;
            let e = e.parse().map_err(|_| err(line, format!("bad exponent in {factor:?}")))?;
            term.c = Some((i, e));
        } else {
            return Err(err(line, format!("unknown factor {factor:?}")));
        }
    }
    Ok(term)
}

pub fn parse_polynomial_system(text: &str) -> Result<PolySystem, PolySysError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());
    let mut next = |what: &str| lines.next().ok_or_else(|| err(0, format!("missing {what}")));

    let (ln, header) = next("header")?;
    if header != "POLYSYS 1" {
        return Err(err(ln, "expected `POLYSYS 1`"));
    }
    let (ln, field) = next("field line")?;
    let toks: Vec<&str> = field.split_whitespace().collect();
    if toks.len() < 6 || toks[0] != "field" || toks[1] != "q" || toks[3] != "m" || toks[5] != "modulus" {
        return Err(err(ln, "expected `field q <p> m <m> modulus ...`"));
    }
    let q: u32 = toks[2].parse().map_err(|_| err(ln, "bad q"))?;
    let m: usize = toks[4].parse().map_err(|_| err(ln, "bad m"))?;
    let modulus = toks[6..]
        .iter()
        .map(|t| t.parse::<u32>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| err(ln, "bad modulus coefficient"))?;

    let (ln, vars) = next("vars line")?;
    let toks: Vec<&str> = vars.split_whitespace().collect();
    if toks.len() != 5 || toks[0] != "vars" || toks[1] != "p" || toks[3] != "c" {
        return Err(err(ln, "expected `vars p <range> c <range>`"));
    }
    let r = parse_range(ln, toks[2], 0)?;
    let k = parse_range(ln, toks[4], 1)?;

    let mut sys = PolySystem {
        q,
        m,
        modulus,
        r,
        k,
        guesses: Vec::new(),
        equations: Vec::new(),
    };
    for (ln, l) in lines {
        if let Some(rest) = l.strip_prefix("guess c") {
            let (i, v) = rest.split_once('=').ok_or_else(|| err(ln, "expected `guess c<i> = <value>`"))?;
            let i = i.trim().parse().map_err(|_| err(ln, "bad guess index"))?;
            let v = v.trim().parse().map_err(|_| err(ln, "bad guess value"))?;
            sys.guesses.push((i, FieldElement::from_raw(v)));
            continue;
        }
        let rest = l.strip_prefix("eq ").ok_or_else(|| err(ln, "expected an `eq` line"))?;
        let (idx, body) = rest.split_once(':').ok_or_else(|| err(ln, "missing `:`"))?;
        if idx.trim().parse::<usize>().ok() != Some(sys.equations.len() + 1) {
            return Err(err(ln, "equations must be numbered consecutively from 1"));
        }
        let body = body.trim().strip_suffix("= 0").ok_or_else(|| err(ln, "equation must end with `= 0`"))?;
        let body = body.trim();
        let terms = if body == "0" {
            Vec::new()
        } else {
            body.split(" + ").map(|t| parse_term(ln, t.trim())).collect::<Result<_, _>>()?
        };
        for t in &terms {
            if t.p.is_some_and(|a| a >= r) || t.c.is_some_and(|(i, _)| i == 0 || i > k) {
                return Err(err(ln, "variable index out of range"));
            }
        }
        sys.equations.push(terms);
    }
    Ok(sys)
}
