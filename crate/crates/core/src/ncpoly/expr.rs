//! The expression text format.
//!
//! Prefix notation with the operators
//! `(+ e...)`, `(* e...)`, `(scal LIT e)`, `(z^ D e)`, `(exp e)`,
//! `(gen NAME)`, `(one)` and, for coproduct values, `(ten e e ...)`.
//! Scalar literals are `p`, `p/q`, or the extended `..*sqrt2` form emitted
//! for irrational coefficients.  Printing a normal form and parsing it back
//! reproduces the normal form; printing is canonical (terms ordered by
//! z-degree, then longer words first, then lexicographically).

use super::{Alphabet, BracketSystem, Monomial, NcSeries};
use crate::coeff::Coeff;
use crate::error::{Error, Result};
use std::sync::Arc;

/// Abstract syntax of the expression format.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Sum(Vec<Expr>),
    Prod(Vec<Expr>),
    Scal(Coeff, Box<Expr>),
    ZPow(u32, Box<Expr>),
    Exp(Box<Expr>),
    Gen(String),
    One,
    Ten(Vec<Expr>),
}

#[derive(Clone, Debug)]
enum Token {
    Open(usize, usize),
    Close(usize, usize),
    Atom(String, usize, usize),
}

impl Token {
    fn pos(&self) -> (usize, usize) {
        match self {
            Token::Open(l, c) | Token::Close(l, c) => (*l, *c),
            Token::Atom(_, l, c) => (*l, *c),
        }
    }
}

fn tokenize(text: &str) -> Vec<Token> {
    let mut tokens = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut atom_start: Option<(usize, usize, String)> = None;
    for ch in text.chars() {
        let boundary = ch.is_whitespace() || ch == '(' || ch == ')';
        if boundary {
            if let Some((l, c, s)) = atom_start.take() {
                tokens.push(Token::Atom(s, l, c));
            }
        }
        match ch {
            '(' => tokens.push(Token::Open(line, col)),
            ')' => tokens.push(Token::Close(line, col)),
            c if c.is_whitespace() => {}
            c => match atom_start {
                Some((_, _, ref mut s)) => s.push(c),
                None => atom_start = Some((line, col, String::from(c))),
            },
        }
        if ch == '\n' {
            line += 1;
            col = 1;
        } else {
            col += 1;
        }
    }
    if let Some((l, c, s)) = atom_start.take() {
        tokens.push(Token::Atom(s, l, c));
    }
    tokens
}

fn parse_err(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, col, msg: msg.into() }
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn end_pos(&self) -> (usize, usize) {
        self.tokens.last().map(Token::pos).unwrap_or((1, 1))
    }

    fn expr(&mut self) -> Result<Expr> {
        match self.next() {
            None => {
                let (l, c) = self.end_pos();
                Err(parse_err(l, c, "unexpected end of input"))
            }
            Some(Token::Close(l, c)) => Err(parse_err(l, c, "unexpected `)`")),
            Some(Token::Atom(s, l, c)) => {
                Err(parse_err(l, c, format!("expected `(`, found `{s}`")))
            }
            Some(Token::Open(l, c)) => {
                let head = match self.next() {
                    Some(Token::Atom(s, _, _)) => s,
                    Some(t) => {
                        let (l, c) = t.pos();
                        return Err(parse_err(l, c, "expected an operator name"));
                    }
                    None => return Err(parse_err(l, c, "unterminated `(`")),
                };
                let expr = match head.as_str() {
                    "+" => Expr::Sum(self.args(1)?),
                    "*" => Expr::Prod(self.args(1)?),
                    "ten" => Expr::Ten(self.args(2)?),
                    "scal" => {
                        let lit = self.atom("a scalar literal")?;
                        let coeff = Coeff::parse(&lit.0)
                            .ok_or_else(|| parse_err(lit.1, lit.2, format!("bad scalar `{}`", lit.0)))?;
                        let inner = self.expr()?;
                        Expr::Scal(coeff, Box::new(inner))
                    }
                    "z^" => {
                        let lit = self.atom("a degree")?;
                        let d: u32 = lit
                            .0
                            .parse()
                            .map_err(|_| parse_err(lit.1, lit.2, format!("bad degree `{}`", lit.0)))?;
                        let inner = self.expr()?;
                        Expr::ZPow(d, Box::new(inner))
                    }
                    "exp" => Expr::Exp(Box::new(self.expr()?)),
                    "gen" => {
                        let name = self.atom("a generator name")?;
                        Expr::Gen(name.0)
                    }
                    "one" => Expr::One,
                    other => {
                        return Err(parse_err(l, c, format!("unknown operator `{other}`")));
                    }
                };
                match self.next() {
                    Some(Token::Close(..)) => Ok(expr),
                    Some(t) => {
                        let (l, c) = t.pos();
                        Err(parse_err(l, c, "expected `)`"))
                    }
                    None => Err(parse_err(l, c, "unterminated `(`")),
                }
            }
        }
    }

    fn args(&mut self, min: usize) -> Result<Vec<Expr>> {
        let mut out = Vec::new();
        while !matches!(self.peek(), Some(Token::Close(..)) | None) {
            out.push(self.expr()?);
        }
        if out.len() < min {
            let (l, c) = self.end_pos();
            return Err(parse_err(l, c, format!("operator needs at least {min} argument(s)")));
        }
        Ok(out)
    }

    fn atom(&mut self, what: &str) -> Result<(String, usize, usize)> {
        match self.next() {
            Some(Token::Atom(s, l, c)) => Ok((s, l, c)),
            Some(t) => {
                let (l, c) = t.pos();
                Err(parse_err(l, c, format!("expected {what}")))
            }
            None => {
                let (l, c) = self.end_pos();
                Err(parse_err(l, c, format!("expected {what}")))
            }
        }
    }
}

/// Parse one expression; trailing input is an error.
pub fn parse_expr(text: &str) -> Result<Expr> {
    let mut p = Parser { tokens: tokenize(text), pos: 0 };
    let e = p.expr()?;
    if let Some(t) = p.peek() {
        let (l, c) = t.pos();
        return Err(parse_err(l, c, "trailing input after expression"));
    }
    Ok(e)
}

impl Expr {
    /// Evaluate to a (normalized) series.  Tensor nodes are rejected here;
    /// coproduct values go through the tensor evaluator instead.
    pub fn eval_series(&self, sys: &BracketSystem) -> Result<NcSeries> {
        match self {
            Expr::Sum(es) => {
                let mut acc = sys.zero();
                for e in es {
                    acc = acc.add(&e.eval_series(sys)?)?;
                }
                Ok(acc)
            }
            Expr::Prod(es) => {
                let mut acc = sys.one();
                for e in es {
                    acc = sys.mul(&acc, &e.eval_series(sys)?)?;
                }
                Ok(acc)
            }
            Expr::Scal(c, e) => Ok(e.eval_series(sys)?.scal(c)),
            Expr::ZPow(d, e) => Ok(e.eval_series(sys)?.z_shift(*d)),
            Expr::Exp(e) => sys.exp(&e.eval_series(sys)?),
            Expr::Gen(name) => sys.gen(name),
            Expr::One => Ok(sys.one()),
            Expr::Ten(_) => Err(Error::InvalidConfig(
                "`(ten ...)` is only valid inside a coproduct value".into(),
            )),
        }
    }

    /// Evaluate without reordering: products concatenate words as written.
    ///
    /// Used where the expression must denote a free-algebra element that a
    /// bracket table will normalize later (e.g. bracket values read from a
    /// definitions file, which may be given in any letter order).
    pub fn eval_series_raw(&self, alphabet: &Arc<Alphabet>, order: u32) -> Result<NcSeries> {
        match self {
            Expr::Sum(es) => {
                let mut acc = NcSeries::zero(alphabet, order);
                for e in es {
                    acc = acc.add(&e.eval_series_raw(alphabet, order)?)?;
                }
                Ok(acc)
            }
            Expr::Prod(es) => {
                let mut acc = NcSeries::one(alphabet, order);
                for e in es {
                    acc = raw_mul(&acc, &e.eval_series_raw(alphabet, order)?);
                }
                Ok(acc)
            }
            Expr::Scal(c, e) => Ok(e.eval_series_raw(alphabet, order)?.scal(c)),
            Expr::ZPow(d, e) => Ok(e.eval_series_raw(alphabet, order)?.z_shift(*d)),
            Expr::Exp(e) => raw_exp(&e.eval_series_raw(alphabet, order)?),
            Expr::Gen(name) => {
                let rank = alphabet.rank_of(name)?;
                let mut s = NcSeries::zero(alphabet, order);
                s.add_term(0, Monomial::gen(rank), Coeff::one());
                Ok(s)
            }
            Expr::One => Ok(NcSeries::one(alphabet, order)),
            Expr::Ten(_) => Err(Error::InvalidConfig(
                "`(ten ...)` is only valid inside a coproduct value".into(),
            )),
        }
    }
}

/// Word-concatenation product, no reordering.
fn raw_mul(a: &NcSeries, b: &NcSeries) -> NcSeries {
    let mut out = NcSeries::zero(a.alphabet(), a.order().min(b.order()));
    for ((da, wa), ca) in a.terms() {
        for ((db, wb), cb) in b.terms() {
            out.add_term(da + db, wa.concat(wb), ca * cb);
        }
    }
    out
}

/// Exponential with word-concatenation powers.
fn raw_exp(s: &NcSeries) -> Result<NcSeries> {
    match s.min_effective_degree() {
        None => Ok(NcSeries::one(s.alphabet(), s.order())),
        Some(0) => Err(Error::IllDefinedExponential),
        Some(step) => {
            let mut out = NcSeries::one(s.alphabet(), s.order());
            let mut power = NcSeries::one(s.alphabet(), s.order());
            let mut k = 0u32;
            while k * step <= s.order() {
                k += 1;
                power = raw_mul(&power, s).scal(&Coeff::rational(1, i64::from(k)));
                if power.is_zero() {
                    break;
                }
                out = out.add(&power)?;
            }
            Ok(out)
        }
    }
}

/// Parse and evaluate a series expression in one step.
pub fn parse_series(text: &str, sys: &BracketSystem) -> Result<NcSeries> {
    let s = parse_expr(text)?.eval_series(sys)?;
    sys.normalize(&s)
}

fn word_string(word: &Monomial, alphabet: &super::Alphabet) -> String {
    match word.len() {
        0 => "(one)".to_string(),
        1 => format!("(gen {})", alphabet.gen_name(word.0[0])),
        _ => {
            let gens: Vec<String> =
                word.0.iter().map(|&l| format!("(gen {})", alphabet.gen_name(l))).collect();
            format!("(* {})", gens.join(" "))
        }
    }
}

/// One term `c * z^d * word` in canonical text.
pub fn print_term(d: u32, word: &Monomial, c: &Coeff, alphabet: &super::Alphabet) -> String {
    let mut s = word_string(word, alphabet);
    if d > 0 {
        s = format!("(z^ {d} {s})");
    }
    if !c.is_one() {
        s = format!("(scal {c} {s})");
    }
    s
}

/// Canonical term order: z-degree ascending, then longer words first, then
/// lexicographic on the letters.
pub(crate) fn term_order(a: &(u32, Monomial), b: &(u32, Monomial)) -> std::cmp::Ordering {
    a.0.cmp(&b.0)
        .then_with(|| b.1.len().cmp(&a.1.len()))
        .then_with(|| a.1.cmp(&b.1))
}

/// Canonical text of a series.
pub fn print_series(s: &NcSeries) -> String {
    let mut terms: Vec<(&(u32, Monomial), &Coeff)> = s.terms().collect();
    terms.sort_by(|x, y| term_order(x.0, y.0));
    let rendered: Vec<String> =
        terms.iter().map(|((d, w), c)| print_term(*d, w, c, s.alphabet())).collect();
    match rendered.len() {
        0 => "(scal 0 (one))".to_string(),
        1 => rendered.into_iter().next().unwrap(),
        _ => format!("(+ {})", rendered.join(" ")),
    }
}

#[cfg(test)]
mod tests {
    use super::super::Alphabet;
    use super::*;

    fn sys() -> BracketSystem {
        // Small commutative playground: P+ < K, no brackets needed for the
        // grammar itself.
        let alph = Alphabet::plain("expr-test", &["P+", "K"], Some("z")).unwrap();
        BracketSystem::new(alph, 4, vec![]).unwrap()
    }

    #[test]
    fn parses_the_full_grammar() {
        let sys = sys();
        let s = parse_series(
            "(+ (* (gen P+) (gen K)) (scal -1/2 (z^ 2 (gen K))) (exp (z^ 1 (scal 2 (gen P+)))))",
            &sys,
        )
        .unwrap();
        assert_eq!(s.coeff_of(2, &Monomial(vec![1])), Coeff::rational(-1, 2));
        assert_eq!(s.coeff_of(1, &Monomial(vec![0])), Coeff::integer(2)); // from exp
        assert_eq!(s.coeff_of(0, &Monomial::one()), Coeff::one()); // from exp
    }

    #[test]
    fn print_then_parse_is_identity() {
        let sys = sys();
        let source = "(+ (gen K) (scal 3/4 (z^ 1 (* (gen P+) (gen P+)))) (scal -2 (one)))";
        let s = parse_series(source, &sys).unwrap();
        let printed = print_series(&s);
        let reparsed = parse_series(&printed, &sys).unwrap();
        assert_eq!(s, reparsed);
        assert_eq!(printed, print_series(&reparsed));
    }

    #[test]
    fn canonical_order_puts_longer_words_first_within_a_degree() {
        let sys = sys();
        let s = parse_series("(+ (gen P+) (* (gen P+) (gen K)))", &sys).unwrap();
        assert_eq!(print_series(&s), "(+ (* (gen P+) (gen K)) (gen P+))");
    }

    #[test]
    fn zero_prints_and_reparses() {
        let sys = sys();
        let zero = parse_series("(scal 0 (one))", &sys).unwrap();
        assert!(zero.is_zero());
        assert_eq!(print_series(&zero), "(scal 0 (one))");
    }

    #[test]
    fn errors_carry_positions() {
        let sys = sys();
        let err = parse_series("(+ (gen P+)\n  (frob))", &sys).unwrap_err();
        match err {
            Error::Parse { line, col, .. } => {
                assert_eq!(line, 2);
                assert_eq!(col, 3);
            }
            other => panic!("expected parse error, got {other}"),
        }
        assert!(parse_series("(gen Q)", &sys).is_err());
        assert!(parse_series("(scal 1/0 (one))", &sys).is_err());
        assert!(parse_series("(one) (one)", &sys).is_err());
    }
}
