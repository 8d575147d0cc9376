//! Ideal description files.
//!
//! ```text
//! # the worked example
//! ring x, y;
//! coefficients integer;      # or rational, modp(7); default integer
//! ordering dp;               # or lex; default dp
//! ideal I = 9, 3*x, 3*y;
//! ```

use std::fmt;

use zprimdec::numth::{is_prime, BigInt, BigRat};
use zprimdec::poly::{is_integral, parse_polynomial, MonomialOrdering, QPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Domain {
    Integer,
    Rational,
    ModP(u64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct NamedIdeal {
    pub name: String,
    pub gens: Vec<QPoly>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IdealFile {
    pub vars: Vec<String>,
    pub domain: Domain,
    pub ordering: MonomialOrdering,
    pub ideals: Vec<NamedIdeal>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl IdealFile {
    pub fn ideal(&self, name: &str) -> Option<&NamedIdeal> {
        self.ideals.iter().find(|i| i.name == name)
    }
}

/// Byte offset to 1-based line and column (in characters).
fn position(src: &str, offset: usize) -> (usize, usize) {
    let before = &src[..offset.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

struct Statement<'a> {
    text: &'a str,
    start: usize,
}

/// Splits comment-free text on `;`. A non-blank tail without `;` is an
/// error.
fn statements(src: &str) -> Result<Vec<Statement<'_>>, (usize, String)> {
    let mut out = Vec::new();
    let mut start = 0;
    for (k, b) in src.bytes().enumerate() {
        if b == b';' {
            out.push(Statement { text: &src[start..k], start });
            start = k + 1;
        }
    }
    let tail = &src[start..];
    if !tail.trim().is_empty() {
        let lead = tail.len() - tail.trim_start().len();
        return Err((start + lead, "missing ';' at end of statement".into()));
    }
    Ok(out)
}

/// Replaces comment text by spaces, keeping byte offsets.
fn blank_comments(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    let mut in_comment = false;
    for ch in s.chars() {
        if ch == '#' {
            in_comment = true;
        } else if ch == '\n' {
            in_comment = false;
        }
        if in_comment {
            out.extend(std::iter::repeat_n(' ', ch.len_utf8()));
        } else {
            out.push(ch);
        }
    }
    out
}

fn is_ident(s: &str) -> bool {
    let mut cs = s.chars();
    cs.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_') && cs.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub fn parse(src: &str) -> Result<IdealFile, ParseError> {
    let clean = blank_comments(src);
    let fail = |offset: usize, message: String| {
        let (line, column) = position(src, offset);
        ParseError { line, column, message }
    };
    let stmts = statements(&clean).map_err(|(o, m)| fail(o, m))?;
    let mut vars: Option<Vec<String>> = None;
    let mut domain = Domain::Integer;
    let mut ordering = MonomialOrdering::Dp;
    let mut ideals: Vec<NamedIdeal> = Vec::new();

    for st in stmts {
        let lead = st.text.len() - st.text.trim_start().len();
        let body = st.text.trim();
        if body.is_empty() {
            continue;
        }
        let at = st.start + lead;
        let (keyword, rest) = body.split_once(char::is_whitespace).unwrap_or((body, ""));
        let rest_at = at + keyword.len() + (rest.len() - rest.trim_start().len()) + usize::from(!rest.is_empty());
        let rest = rest.trim();
        match keyword {
            "ring" => {
                if vars.is_some() {
                    return Err(fail(at, "ring declared twice".into()));
                }
                let names: Vec<String> = rest.split(',').map(|v| v.trim().to_string()).collect();
                if let Some(bad) = names.iter().find(|v| !is_ident(v)) {
                    return Err(fail(rest_at, format!("invalid variable name '{bad}'")));
                }
                for (k, v) in names.iter().enumerate() {
                    if names[..k].contains(v) {
                        return Err(fail(rest_at, format!("variable '{v}' declared twice")));
                    }
                }
                vars = Some(names);
            }
            "coefficients" => {
                domain = match rest {
                    "integer" => Domain::Integer,
                    "rational" => Domain::Rational,
                    _ => {
                        let p = rest
                            .strip_prefix("modp")
                            .map(str::trim)
                            .and_then(|r| r.strip_prefix('('))
                            .and_then(|r| r.strip_suffix(')'))
                            .and_then(|r| r.trim().parse::<u64>().ok())
                            .ok_or_else(|| fail(rest_at, format!("unknown coefficient domain '{rest}'")))?;
                        if p >= 1 << 62 || !is_prime(&BigInt::from(p)) {
                            return Err(fail(rest_at, format!("modulus {p} is not a prime below 2^62")));
                        }
                        Domain::ModP(p)
                    }
                }
            }
            "ordering" => {
                ordering = match rest {
                    "dp" => MonomialOrdering::Dp,
                    "lex" => MonomialOrdering::Lex,
                    _ => return Err(fail(rest_at, format!("unknown ordering '{rest}'"))),
                }
            }
            "ideal" => {
                let names = vars.as_ref().ok_or_else(|| fail(at, "ideal before ring declaration".into()))?;
                let (name, gens_src) =
                    rest.split_once('=').ok_or_else(|| fail(rest_at, "expected 'ideal NAME = generators'".into()))?;
                let name = name.trim();
                if !is_ident(name) {
                    return Err(fail(rest_at, format!("invalid ideal name '{name}'")));
                }
                if ideals.iter().any(|i| i.name == name) {
                    return Err(fail(rest_at, format!("ideal '{name}' defined twice")));
                }
                let body_at = rest_at + rest.len() - gens_src.len();
                let raw = gens_src;
                if raw.trim().is_empty() {
                    return Err(fail(body_at, "empty generator list".into()));
                }
                let mut gens = Vec::new();
                let mut offset = body_at;
                for piece in raw.split(',') {
                    let pad = piece.len() - piece.trim_start().len();
                    if piece.trim().is_empty() {
                        return Err(fail(offset + pad, "empty generator".into()));
                    }
                    let f = parse_polynomial(piece, names, MonomialOrdering::Dp)
                        .map_err(|e| fail(offset + e.offset.min(piece.len()), e.message))?;
                    check_domain(&f, domain).map_err(|m| fail(offset + pad, m))?;
                    gens.push(f);
                    offset += piece.len() + 1;
                }
                ideals.push(NamedIdeal { name: name.to_string(), gens });
            }
            other => return Err(fail(at, format!("unknown statement '{other}'"))),
        }
    }
    let vars = vars.ok_or_else(|| fail(0, "missing ring declaration".into()))?;
    Ok(IdealFile { vars, domain, ordering, ideals })
}

fn check_domain(f: &QPoly, domain: Domain) -> Result<(), String> {
    match domain {
        Domain::Integer if !is_integral(f) => Err("non-integer coefficient in an integer ring".into()),
        Domain::ModP(p) => {
            let bad = f.terms().iter().any(|t| (t.coeff.denom() % BigInt::from(p)) == BigInt::from(0));
            if bad {
                Err(format!("denominator divisible by {p}"))
            } else {
                Ok(())
            }
        }
        _ => Ok(()),
    }
}

impl fmt::Display for IdealFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ring {};", self.vars.join(", "))?;
        let domain = match self.domain {
            Domain::Integer => "integer".to_string(),
            Domain::Rational => "rational".to_string(),
            Domain::ModP(p) => format!("modp({p})"),
        };
        writeln!(f, "coefficients {domain};")?;
        writeln!(f, "ordering {};", self.ordering.name())?;
        for i in &self.ideals {
            let gens: Vec<String> = i.gens.iter().map(|g| g.display(&self.vars).to_string()).collect();
            writeln!(f, "ideal {} = {};", i.name, gens.join(", "))?;
        }
        Ok(())
    }
}

/// Converts a parsed rational coefficient into `𝔽ₚ`.
pub fn rational_mod_p(c: &BigRat, p: u64) -> zprimdec::numth::FpElem {
    use zprimdec::numth::FpElem;
    let m = BigInt::from(p);
    let num = ((c.numer() % &m) + &m) % &m;
    let den = ((c.denom() % &m) + &m) % &m;
    let to = |b: BigInt| u64::try_from(b).expect("reduced below p");
    FpElem::from_u64(to(num), p).mul(FpElem::from_u64(to(den), p).inv())
}
