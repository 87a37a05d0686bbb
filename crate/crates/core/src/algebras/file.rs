//! Reading a presentation from a definitions file.
//!
//! The format is line-oriented.  `#` starts a comment.  Two header keys may
//! appear before the first section: `name:` (required) and `deformation:`
//! (defaults to `z`).  Sections:
//!
//! ```text
//! [generators]      one generator per line, `NAME` or `NAME [weight N]`,
//!                   listed in rewriting order (lowest first)
//! [order]           default truncation order (a caller-requested order wins)
//! [brackets]        `[X, Y] = EXPR`, either orientation, zero entries omitted
//! [coproducts]      `X = EXPR` with `(ten ...)` legs; omitted => primitive
//! [antipode]        `X = EXPR`; omitted => derived on demand
//! ```
//!
//! Bracket values are evaluated without reordering, so products may be
//! written in any letter order; the table itself puts them in normal form.

use crate::error::{Error, Result};
use crate::hopf::{eval_tensor, TensorElement};
use crate::ncpoly::{parse_expr, parse_series, Alphabet, BracketSystem, GenInfo, NcSeries};

use super::{Family, Presentation};

fn err(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, col, msg: msg.into() }
}

/// Shift an expression parse error (positioned within `expr_text`) to the
/// file coordinates where the expression starts.
fn offset_expr_error(e: Error, line: usize, expr_col: usize) -> Error {
    match e {
        Error::Parse { line: el, col, msg } if el <= 1 => err(line, expr_col + col - 1, msg),
        Error::Parse { col, msg, .. } => err(line, col, msg),
        other => other,
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Section {
    Header,
    Generators,
    Order,
    Brackets,
    Coproducts,
    Antipode,
}

struct RawFile {
    name: Option<String>,
    deformation: Option<String>,
    gens: Vec<GenInfo>,
    order: Option<u32>,
    /// (line, expr column, left name, right name, expression text)
    brackets: Vec<(usize, usize, String, String, String)>,
    /// (line, expr column, generator, expression text)
    coproducts: Vec<(usize, usize, String, String)>,
    antipode: Vec<(usize, usize, String, String)>,
}

fn split_assignment(line_no: usize, line: &str) -> Result<(String, usize, String)> {
    let eq = line
        .find('=')
        .ok_or_else(|| err(line_no, 1, "expected `NAME = EXPR`"))?;
    let name = line[..eq].trim();
    if name.is_empty() {
        return Err(err(line_no, 1, "missing generator name before `=`"));
    }
    let value_off = eq + 1 + count_leading_ws(&line[eq + 1..]);
    let value = line[eq + 1..].trim();
    if value.is_empty() {
        return Err(err(line_no, eq + 2, "missing expression after `=`"));
    }
    Ok((name.to_string(), value_off + 1, value.to_string()))
}

fn count_leading_ws(s: &str) -> usize {
    s.len() - s.trim_start().len()
}

fn scan(text: &str) -> Result<RawFile> {
    let mut raw = RawFile {
        name: None,
        deformation: None,
        gens: Vec::new(),
        order: None,
        brackets: Vec::new(),
        coproducts: Vec::new(),
        antipode: Vec::new(),
    };
    let mut section = Section::Header;
    for (idx, full_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match full_line.find('#') {
            Some(p) => &full_line[..p],
            None => full_line,
        };
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(inner) = trimmed.strip_prefix('[') {
            if let Some(section_name) = inner.strip_suffix(']') {
                section = match section_name.trim() {
                    "generators" => Section::Generators,
                    "order" => Section::Order,
                    "brackets" => Section::Brackets,
                    "coproducts" => Section::Coproducts,
                    "antipode" => Section::Antipode,
                    other => {
                        return Err(err(line_no, 1, format!("unknown section `[{other}]`")))
                    }
                };
                continue;
            }
            if section != Section::Brackets {
                return Err(err(line_no, 1, "bracket entries belong in a `[brackets]` section"));
            }
        }
        match section {
            Section::Header => {
                let (key, value) = trimmed
                    .split_once(':')
                    .ok_or_else(|| err(line_no, 1, "expected `key: value` before the first section"))?;
                match key.trim() {
                    "name" => raw.name = Some(value.trim().to_string()),
                    "deformation" => raw.deformation = Some(value.trim().to_string()),
                    other => return Err(err(line_no, 1, format!("unknown header key `{other}`"))),
                }
            }
            Section::Generators => {
                let (name, weight) = match trimmed.split_once('[') {
                    None => (trimmed, 0),
                    Some((name, rest)) => {
                        let body = rest
                            .strip_suffix(']')
                            .ok_or_else(|| err(line_no, 1, "unterminated `[weight N]`"))?;
                        let n = body
                            .trim()
                            .strip_prefix("weight")
                            .map(str::trim)
                            .and_then(|v| v.parse::<u32>().ok())
                            .ok_or_else(|| err(line_no, 1, "expected `[weight N]`"))?;
                        (name.trim(), n)
                    }
                };
                if name.is_empty() || name.contains(char::is_whitespace) {
                    return Err(err(line_no, 1, "generator names must not contain whitespace"));
                }
                raw.gens.push(GenInfo { name: name.to_string(), weight });
            }
            Section::Order => {
                if raw.order.is_some() {
                    return Err(err(line_no, 1, "duplicate `[order]` value"));
                }
                let n: u32 = trimmed
                    .parse()
                    .map_err(|_| err(line_no, 1, "expected a truncation order (integer)"))?;
                raw.order = Some(n);
            }
            Section::Brackets => {
                let inner = trimmed
                    .strip_prefix('[')
                    .ok_or_else(|| err(line_no, 1, "expected `[X, Y] = EXPR`"))?;
                let close = inner
                    .find(']')
                    .ok_or_else(|| err(line_no, 1, "missing `]` in bracket key"))?;
                let (x, y) = inner[..close]
                    .split_once(',')
                    .ok_or_else(|| err(line_no, 1, "bracket key needs two generators"))?;
                let rest = inner[close + 1..].trim_start();
                let value = rest
                    .strip_prefix('=')
                    .ok_or_else(|| err(line_no, close + 3, "expected `=` after bracket key"))?
                    .trim();
                if value.is_empty() {
                    return Err(err(line_no, close + 3, "missing expression after `=`"));
                }
                let col = full_line.find(value).map_or(1, |p| p + 1);
                raw.brackets.push((
                    line_no,
                    col,
                    x.trim().to_string(),
                    y.trim().to_string(),
                    value.to_string(),
                ));
            }
            Section::Coproducts | Section::Antipode => {
                let (name, col, value) = split_assignment(line_no, trimmed)?;
                let col = full_line.find(value.as_str()).map_or(col, |p| p + 1);
                if section == Section::Coproducts {
                    raw.coproducts.push((line_no, col, name, value));
                } else {
                    raw.antipode.push((line_no, col, name, value));
                }
            }
        }
    }
    Ok(raw)
}

/// Parse a presentation from definitions-file text.  `requested_order`
/// overrides the file's `[order]` section; with neither, order 3 is used.
pub fn parse_presentation_file(
    text: &str,
    requested_order: Option<u32>,
) -> Result<Presentation> {
    let raw = scan(text)?;
    let name = raw
        .name
        .ok_or_else(|| err(1, 1, "missing `name:` header"))?;
    if raw.gens.is_empty() {
        return Err(err(1, 1, "missing `[generators]` section"));
    }
    let deformation = raw.deformation.unwrap_or_else(|| "z".to_string());
    let order = requested_order.or(raw.order).unwrap_or(3);

    let alphabet = Alphabet::new(&name, raw.gens, Some(&deformation))?;
    let lookup = alphabet.clone();
    let rank = move |line: usize, g: &str| -> Result<u8> {
        lookup
            .rank_of(g)
            .map_err(|_| err(line, 1, format!("unknown generator `{g}`")))
    };

    let mut classical = raw.coproducts.is_empty() && raw.antipode.is_empty();
    let mut entries: Vec<(u8, u8, NcSeries)> = Vec::new();
    for (line, col, x, y, value) in &raw.brackets {
        let rx = rank(*line, x)?;
        let ry = rank(*line, y)?;
        if rx == ry {
            return Err(err(*line, 1, format!("bracket of `{x}` with itself")));
        }
        let expr = parse_expr(value).map_err(|e| offset_expr_error(e, *line, *col))?;
        let series = expr
            .eval_series_raw(&alphabet, order)
            .map_err(|e| offset_expr_error(e, *line, *col))?;
        if series.terms().any(|((d, _), _)| *d > 0) {
            classical = false;
        }
        let (hi, lo, v) = if rx > ry { (rx, ry, series) } else { (ry, rx, series.neg()) };
        if entries.iter().any(|(h, l, _)| (*h, *l) == (hi, lo)) {
            return Err(err(*line, 1, format!("duplicate bracket entry for [{x}, {y}]")));
        }
        entries.push((hi, lo, v));
    }
    let system = BracketSystem::new(alphabet, order, entries)?;

    let mut coproducts: Vec<(String, TensorElement)> = Vec::new();
    for (line, col, gen, value) in &raw.coproducts {
        rank(*line, gen)?;
        if coproducts.iter().any(|(g, _)| g == gen) {
            return Err(err(*line, 1, format!("duplicate coproduct for `{gen}`")));
        }
        let expr = parse_expr(value).map_err(|e| offset_expr_error(e, *line, *col))?;
        let t = eval_tensor(&expr, &system, 2).map_err(|e| offset_expr_error(e, *line, *col))?;
        coproducts.push((gen.clone(), t));
    }

    let antipode = if raw.antipode.is_empty() {
        None
    } else {
        let mut images: Vec<(String, NcSeries)> = Vec::new();
        for (line, col, gen, value) in &raw.antipode {
            rank(*line, gen)?;
            if images.iter().any(|(g, _)| g == gen) {
                return Err(err(*line, 1, format!("duplicate antipode for `{gen}`")));
            }
            let s =
                parse_series(value, &system).map_err(|e| offset_expr_error(e, *line, *col))?;
            images.push((gen.clone(), s));
        }
        Some(images)
    };

    Presentation::new(
        &name,
        Family::Custom,
        classical,
        system,
        coproducts,
        antipode,
        Vec::new(),
        Vec::new(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Coeff;
    use crate::ncpoly::Monomial;

    const SAMPLE: &str = "\
# A deformed two-generator table.
name: half-plane
deformation: t

[generators]
X
Y

[order]
5

[brackets]
[Y, X] = (+ (gen X) (scal 1/2 (z^ 1 (* (gen X) (gen X)))))

[coproducts]
Y = (+ (ten (one) (gen Y)) (ten (gen Y) (exp (z^ 1 (gen X)))))
";

    #[test]
    fn reads_a_complete_presentation() {
        let p = parse_presentation_file(SAMPLE, None).unwrap();
        assert_eq!(p.name(), "half-plane");
        assert_eq!(p.deformation(), "t");
        assert!(!p.is_classical());
        assert_eq!(p.order(), 5);
        let v = p.bracket(1, 0).unwrap();
        assert_eq!(v.coeff_of(1, &Monomial::power(0, 2)), Coeff::rational(1, 2));
        // The requested order beats the file's [order].
        let p = parse_presentation_file(SAMPLE, Some(2)).unwrap();
        assert_eq!(p.order(), 2);
    }

    #[test]
    fn brackets_accept_either_orientation() {
        let flipped = SAMPLE.replace(
            "[Y, X] = (+ (gen X) (scal 1/2 (z^ 1 (* (gen X) (gen X)))))",
            "[X, Y] = (scal -1 (+ (gen X) (scal 1/2 (z^ 1 (* (gen X) (gen X))))))",
        );
        let a = parse_presentation_file(SAMPLE, None).unwrap();
        let b = parse_presentation_file(&flipped, None).unwrap();
        assert_eq!(a.same_structure(&b).unwrap(), Vec::<String>::new());
    }

    #[test]
    fn values_may_use_non_normal_letter_order() {
        // [W, X] written with the letters out of rewriting order; since
        // [Y, X] = 0 the stored normal form must be the reordered word XY.
        let text = "\
name: raw-order
[generators]
X
Y
W
[brackets]
[W, X] = (* (gen Y) (gen X))
";
        let p = parse_presentation_file(text, Some(3)).unwrap();
        let v = p.bracket(2, 0).unwrap();
        assert_eq!(v.coeff_of(0, &Monomial(vec![0, 1])), Coeff::one());
        assert_eq!(v.term_count(), 1);
    }

    #[test]
    fn classical_flag_tracks_z_degree_and_sections() {
        let text = "\
name: plain-su2-like
[generators]
X
Y
W
[brackets]
[W, X] = (gen X)
[W, Y] = (scal -1 (gen Y))
";
        let p = parse_presentation_file(text, None).unwrap();
        assert!(p.is_classical());
        assert_eq!(p.order(), 3);
    }

    #[test]
    fn errors_carry_file_positions() {
        let missing_name = "[generators]\nX\n";
        match parse_presentation_file(missing_name, None) {
            Err(Error::Parse { msg, .. }) => assert!(msg.contains("name")),
            other => panic!("expected a parse error, got {other:?}"),
        }
        let bad_expr = "\
name: broken
[generators]
X
Y
[brackets]
[Y, X] = (gen Q)
";
        match parse_presentation_file(bad_expr, None) {
            Err(Error::UnknownGenerator { name, .. }) => assert_eq!(name, "Q"),
            other => panic!("expected unknown generator, got {other:?}"),
        }
        let bad_section = "name: s\n[generators]\nX\n[bogus]\n";
        match parse_presentation_file(bad_section, None) {
            Err(Error::Parse { line, msg, .. }) => {
                assert_eq!(line, 4);
                assert!(msg.contains("bogus"));
            }
            other => panic!("expected a parse error, got {other:?}"),
        }
    }
}
