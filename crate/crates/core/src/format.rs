//! Plain-text formats for diagrams and move certificates.
//!
//! A diagram file is line-oriented: a `dim n k` header (or `dim 4 2 source`
//! for 4-dimensional import data), then one `dotted <id>` line per dotted
//! component and one `framed <id> framing <int> [word <letter>...]` line per
//! framed component, in order. Letters are `<id>` or `<id>^-1`; `#` starts a
//! comment. A certificate file holds one move per line in the syntax of
//! [`Move`]'s `Display` impl, so printing and parsing round-trip.

use std::fmt::Write as _;

use crate::diagram::{ComponentId, Diagram, Letter, Sign, SourceDiagram, Word};
use crate::error::{Error, Result};
use crate::framing::DimSpec;
use crate::moves::{Certificate, Move};

/// A parsed diagram file: either a standard (n, k) diagram or 4-dimensional
/// source data awaiting induction.
#[derive(Debug, Clone)]
pub enum DiagramFile {
    Standard(Diagram),
    Source(SourceDiagram),
}

fn syntax(line: usize, msg: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        msg: msg.into(),
    }
}

/// Lines that carry content: comment-stripped, trimmed, nonempty, 1-based.
fn significant_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            None
        } else {
            Some((i + 1, body))
        }
    })
}

fn parse_letter(line: usize, tok: &str) -> Result<Letter> {
    let (name, sign) = match tok.split_once('^') {
        None => (tok, Sign::Plus),
        Some((name, "-1")) => (name, Sign::Minus),
        Some((_, exp)) => {
            return Err(syntax(line, format!("bad letter exponent `^{exp}`")));
        }
    };
    Ok(Letter::new(ComponentId::new(name)?, sign))
}

fn parse_framing(line: usize, tok: &str) -> Result<i64> {
    tok.parse::<i64>()
        .map_err(|_| syntax(line, format!("bad framing `{tok}`")))
}

/// Split a component line into (id, framing, letters). Accepts
/// `dotted <id>` callers separately; this handles `framed` bodies.
fn parse_framed_body(line: usize, toks: &[&str]) -> Result<(String, i64, Vec<Letter>)> {
    let [id, kw, framing, rest @ ..] = toks else {
        return Err(syntax(line, "expected `framed <id> framing <int> ...`"));
    };
    if *kw != "framing" {
        return Err(syntax(line, format!("expected `framing`, found `{kw}`")));
    }
    let framing = parse_framing(line, framing)?;
    let letters = match rest {
        [] => Vec::new(),
        ["word", ls @ ..] => ls
            .iter()
            .map(|t| parse_letter(line, t))
            .collect::<Result<Vec<_>>>()?,
        [other, ..] => {
            return Err(syntax(line, format!("expected `word`, found `{other}`")));
        }
    };
    Ok((id.to_string(), framing, letters))
}

/// Parse a diagram file. Structural problems report the offending line;
/// semantic problems (bad dimensions, duplicate ids, unknown generators)
/// surface as their own error kinds.
pub fn parse_diagram(text: &str) -> Result<DiagramFile> {
    let mut lines = significant_lines(text);
    let (hline, header) = lines
        .next()
        .ok_or_else(|| syntax(1, "missing `dim` header"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    let source = match toks.as_slice() {
        ["dim", _, _] => false,
        ["dim", "4", "2", "source"] => true,
        ["dim", _, _, "source"] => {
            return Err(syntax(hline, "source role requires `dim 4 2 source`"));
        }
        _ => return Err(syntax(hline, "expected `dim <n> <k>` header")),
    };
    let parse_u32 = |tok: &str| {
        tok.parse::<i64>()
            .map_err(|_| syntax(hline, format!("bad dimension `{tok}`")))
    };
    let (n, k) = (parse_u32(toks[1])?, parse_u32(toks[2])?);

    if source {
        let mut d = SourceDiagram::new();
        for (line, body) in lines {
            let toks: Vec<&str> = body.split_whitespace().collect();
            match toks.as_slice() {
                ["dotted", id] => d = d.with_dotted(id)?,
                ["framed", rest @ ..] => {
                    let (id, framing, letters) = parse_framed_body(line, rest)?;
                    d = d.with_framed(&id, &letters, framing)?;
                }
                [kw, ..] => return Err(syntax(line, format!("unknown directive `{kw}`"))),
                [] => unreachable!("blank lines filtered"),
            }
        }
        return Ok(DiagramFile::Source(d));
    }

    let dim = DimSpec::new(
        u32::try_from(n).map_err(|_| Error::InvalidDim { n, k })?,
        u32::try_from(k).map_err(|_| Error::InvalidDim { n, k })?,
    )?;
    let mut d = Diagram::new(dim);
    for (line, body) in lines {
        let toks: Vec<&str> = body.split_whitespace().collect();
        match toks.as_slice() {
            ["dotted", id] => d = d.with_dotted(id)?,
            ["framed", rest @ ..] => {
                let (id, framing, letters) = parse_framed_body(line, rest)?;
                d = d.with_framed(&id, &letters, framing)?;
            }
            [kw, ..] => return Err(syntax(line, format!("unknown directive `{kw}`"))),
            [] => unreachable!("blank lines filtered"),
        }
    }
    Ok(DiagramFile::Standard(d))
}

fn push_word(out: &mut String, word: &Word) {
    if !word.is_empty() {
        out.push_str(" word");
        for l in word.letters() {
            let _ = write!(out, " {l}");
        }
    }
}

/// Print a diagram in the file format. `parse_diagram` of the output
/// reproduces the diagram exactly (words are stored normalized, so the
/// printed representatives are already canonical).
pub fn print_diagram(d: &Diagram) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "dim {} {}", d.dim().n(), d.dim().k());
    for x in d.dotted() {
        let _ = writeln!(out, "dotted {x}");
    }
    for f in d.framed() {
        let _ = write!(out, "framed {} framing {}", f.id, f.framing.value());
        push_word(&mut out, &f.word);
        out.push('\n');
    }
    out
}

/// Print 4-dimensional source data; framings stay raw integers.
pub fn print_source_diagram(d: &SourceDiagram) -> String {
    let mut out = String::from("dim 4 2 source\n");
    for x in d.dotted() {
        let _ = writeln!(out, "dotted {x}");
    }
    for f in d.framed() {
        let _ = write!(out, "framed {} framing {}", f.id, f.framing);
        push_word(&mut out, &f.word);
        out.push('\n');
    }
    out
}

pub fn print_diagram_file(file: &DiagramFile) -> String {
    match file {
        DiagramFile::Standard(d) => print_diagram(d),
        DiagramFile::Source(d) => print_source_diagram(d),
    }
}

/// Parse a certificate file: one move per line, `Move` display syntax.
pub fn parse_certificate(text: &str) -> Result<Certificate> {
    let mut moves = Vec::new();
    for (line, body) in significant_lines(text) {
        let toks: Vec<&str> = body.split_whitespace().collect();
        let parse_sign = |tok: &str| match tok {
            "+" => Ok(Sign::Plus),
            "-" => Ok(Sign::Minus),
            _ => Err(syntax(line, format!("bad sign `{tok}`"))),
        };
        let id = |tok: &str| ComponentId::new(tok);
        let mv = match toks.as_slice() {
            ["slide-framed", i, j, s, rest @ ..] => {
                let conjugator = match rest {
                    [] => Vec::new(),
                    ["conj", ls @ ..] => ls
                        .iter()
                        .map(|t| parse_letter(line, t))
                        .collect::<Result<Vec<_>>>()?,
                    [other, ..] => {
                        return Err(syntax(line, format!("expected `conj`, found `{other}`")));
                    }
                };
                Move::SlideFramed {
                    i: id(i)?,
                    j: id(j)?,
                    sign: parse_sign(s)?,
                    conjugator,
                }
            }
            ["slide-dotted", a, b, s] => Move::SlideDotted {
                a: id(a)?,
                b: id(b)?,
                sign: parse_sign(s)?,
            },
            ["cancel", e, f] => Move::CancelPair { e: id(e)?, f: id(f)? },
            ["create", e, f] => Move::CreatePair { e: id(e)?, f: id(f)? },
            [kw, ..] => return Err(syntax(line, format!("unknown move `{kw}`"))),
            [] => unreachable!("blank lines filtered"),
        };
        moves.push(mv);
    }
    Ok(Certificate::new(moves))
}

/// Print a certificate, one move per line.
pub fn print_certificate(c: &Certificate) -> String {
    let mut out = String::new();
    for m in c.moves() {
        let _ = writeln!(out, "{m}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
# a two-component family
dim 7 3
dotted x1
dotted x2
framed f1 framing 0 word x1 x1   # attaching word x1^2
framed f2 framing -2 word x2^-1 x1
framed f3 framing 5
";

    #[test]
    fn parses_standard_diagram() {
        let DiagramFile::Standard(d) = parse_diagram(SAMPLE).unwrap() else {
            panic!("expected standard diagram");
        };
        assert_eq!(d.dim().n(), 7);
        assert_eq!(d.dotted().len(), 2);
        assert_eq!(d.framed().len(), 3);
        assert_eq!(d.framed()[1].framing.value(), 0, "trivial group normalizes");
        assert_eq!(d.framed()[1].word.to_string(), "x1 x2^-1");
    }

    #[test]
    fn print_parse_round_trip() {
        let DiagramFile::Standard(d) = parse_diagram(SAMPLE).unwrap() else {
            panic!();
        };
        let text = print_diagram(&d);
        let DiagramFile::Standard(d2) = parse_diagram(&text).unwrap() else {
            panic!();
        };
        assert_eq!(d, d2);
        assert_eq!(text, print_diagram(&d2), "printing is stable");
    }

    #[test]
    fn parses_source_diagram() {
        let text = "dim 4 2 source\ndotted x\nframed f framing 2025 word x x\n";
        let DiagramFile::Source(s) = parse_diagram(text).unwrap() else {
            panic!("expected source diagram");
        };
        assert_eq!(s.framed()[0].framing, 2025, "raw framing preserved");
        assert_eq!(print_source_diagram(&s), text);
    }

    #[test]
    fn header_errors() {
        let err = parse_diagram("dotted x\n").unwrap_err();
        assert_eq!(err.name(), "SyntaxError");
        let err = parse_diagram("").unwrap_err();
        assert_eq!(err.name(), "SyntaxError");
        let err = parse_diagram("dim 9 3 source\n").unwrap_err();
        assert!(err.to_string().contains("line 1"));
        // A valid header with invalid dimensions is semantic, not syntax.
        let err = parse_diagram("dim 4 2\n").unwrap_err();
        assert_eq!(err.name(), "InvalidDim");
        let err = parse_diagram("dim 6 3\n").unwrap_err();
        assert_eq!(err.name(), "InvalidDim");
    }

    #[test]
    fn body_errors_carry_line_numbers() {
        let err = parse_diagram("dim 7 3\n\nframed f framing x word\n").unwrap_err();
        assert_eq!(
            err.to_string(),
            "SyntaxError: line 3: bad framing `x`"
        );
        let err = parse_diagram("dim 7 3\nframed f spin 0\n").unwrap_err();
        assert!(err.to_string().contains("expected `framing`"));
        let err = parse_diagram("dim 7 3\nhandle h\n").unwrap_err();
        assert!(err.to_string().contains("unknown directive `handle`"));
        let err = parse_diagram("dim 7 3\ndotted x\nframed f framing 0 word x^2\n").unwrap_err();
        assert!(err.to_string().contains("bad letter exponent"));
    }

    #[test]
    fn semantic_errors_pass_through() {
        let err = parse_diagram("dim 7 3\ndotted x\ndotted x\n").unwrap_err();
        assert_eq!(err.name(), "DuplicateId");
        let err = parse_diagram("dim 7 3\nframed f framing 0 word y\n").unwrap_err();
        assert_eq!(err.name(), "UnknownGenerator");
    }

    #[test]
    fn certificate_round_trip() {
        let text = "\
# reduction trace
slide-framed f1 f2 - conj x1 x2^-1
slide-dotted x1 x2 +
create aux0 auxf0
cancel aux0 auxf0
";
        let cert = parse_certificate(text).unwrap();
        assert_eq!(cert.len(), 4);
        let printed = print_certificate(&cert);
        assert_eq!(parse_certificate(&printed).unwrap(), cert);
        assert!(printed.contains("slide-framed f1 f2 - conj x1 x2^-1"));
    }

    #[test]
    fn certificate_errors() {
        assert_eq!(
            parse_certificate("twist f1\n").unwrap_err().name(),
            "SyntaxError"
        );
        assert_eq!(
            parse_certificate("slide-framed f1 f2 *\n").unwrap_err().name(),
            "SyntaxError"
        );
        assert!(parse_certificate("").unwrap().is_empty());
    }
}
