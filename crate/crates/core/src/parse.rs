//! Text syntax for signatures, circuits, tapes and relation expressions.
//!
//! Signatures: `sort A B;` and `gen f : A B -> C + 1;` with `#` comments.
//! Circuits: `id(A)`, `id1`, `sym(A,B)`, `cp(A)`, `dc(A)`, `cocp(A)`, `codc(A)`,
//! generator names, `;` and `*` (tighter).
//! Tapes: `idm(P)`, `id0`, `[c]`, `symp(P,Q)`, `diag(P)`, `codiag(P)`,
//! `bang(P)`, `cobang(P)`, generator names, and from loosest to tightest
//! `;`, `+` (sum), `(+)` (direct sum), `*` (tensor).
//! Relations: symbols, `id`, `top`, `bot`, `|`, `&`, `;` and postfix `~`.

use crate::circuit::{self, CircuitTerm};
use crate::cr::CrExpr;
use crate::error::{Error, Result};
use crate::signature::{
    expand_generator, reduce_rig_signature, MonSignature, Monomial, Polynomial, ReductionTable,
    RigSignature, Sort,
};
use crate::tape::{self, TapeTerm};

pub const RESERVED: &[&str] = &[
    "id", "id1", "sym", "cp", "dc", "cocp", "codc", "idm", "id0", "symp", "diag", "bang", "codiag",
    "cobang", "top", "bot", "sort", "gen",
];

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Punct(&'static str),
    Eof,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

const PUNCT: &[&str] = &["(+)", "->", ";", ":", "+", "*", "(", ")", "[", "]", ",", "~", "&", "|"];

fn lex(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut k, mut line, mut col) = (0, 1, 1);
    let advance = |k: &mut usize, line: &mut usize, col: &mut usize, n: usize| {
        for _ in 0..n {
            if chars[*k] == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
            *k += 1;
        }
    };
    'outer: while k < chars.len() {
        let c = chars[k];
        if c.is_whitespace() {
            advance(&mut k, &mut line, &mut col, 1);
            continue;
        }
        if c == '#' {
            while k < chars.len() && chars[k] != '\n' {
                advance(&mut k, &mut line, &mut col, 1);
            }
            continue;
        }
        if c.is_alphanumeric() || c == '_' {
            let start = k;
            let (l0, c0) = (line, col);
            while k < chars.len() && (chars[k].is_alphanumeric() || chars[k] == '_' || chars[k] == '\'') {
                advance(&mut k, &mut line, &mut col, 1);
            }
            out.push(Token {
                tok: Tok::Ident(chars[start..k].iter().collect()),
                line: l0,
                column: c0,
            });
            continue;
        }
        for p in PUNCT {
            let pc: Vec<char> = p.chars().collect();
            if chars[k..].starts_with(&pc) {
                out.push(Token {
                    tok: Tok::Punct(p),
                    line,
                    column: col,
                });
                advance(&mut k, &mut line, &mut col, pc.len());
                continue 'outer;
            }
        }
        return Err(Error::Syntax {
            line,
            column: col,
            message: format!("unexpected character `{c}`"),
        });
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        column: col,
    });
    Ok(out)
}

struct Parser<'s> {
    toks: Vec<Token>,
    pos: usize,
    sig: Option<&'s MonSignature>,
    table: Option<&'s ReductionTable>,
}

impl<'s> Parser<'s> {
    fn new(text: &str) -> Result<Self> {
        Ok(Parser {
            toks: lex(text)?,
            pos: 0,
            sig: None,
            table: None,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        let t = &self.toks[self.pos];
        Err(Error::Syntax {
            line: t.line,
            column: t.column,
            message: message.into(),
        })
    }

    fn describe(&self) -> String {
        match self.peek() {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Punct(p) => format!("`{p}`"),
            Tok::Eof => "end of input".into(),
        }
    }

    fn eat(&mut self, p: &str) -> bool {
        if matches!(self.peek(), Tok::Punct(q) if *q == p) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, p: &str) -> Result<()> {
        if self.eat(p) {
            Ok(())
        } else {
            self.error(format!("expected `{p}`, found {}", self.describe()))
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.pos += 1;
                Ok(s)
            }
            _ => self.error(format!("expected a name, found {}", self.describe())),
        }
    }

    fn at_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn end(&self) -> Result<()> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            self.error(format!("unexpected {}", self.describe()))
        }
    }

    fn sort(&self, name: &str) -> Result<Sort> {
        match self.sig {
            Some(sig) => sig
                .sort(name)
                .cloned()
                .ok_or_else(|| Error::UndeclaredSort(name.to_string())),
            None => Ok(Sort::new(name)),
        }
    }

    /// A space-separated list of sorts; `1` or nothing is the unit word.
    fn word(&mut self) -> Result<Monomial> {
        let mut sorts = Vec::new();
        while let Tok::Ident(s) = self.peek().clone() {
            if s == "0" {
                break;
            }
            self.pos += 1;
            if s != "1" {
                sorts.push(self.sort(&s)?);
            }
        }
        Ok(Monomial::new(sorts))
    }

    /// Monomials separated by `+`; a lone `0` is the zero polynomial.
    fn poly(&mut self) -> Result<Polynomial> {
        if self.at_keyword("0") {
            self.pos += 1;
            return Ok(Polynomial::zero());
        }
        let mut ms = vec![self.word()?];
        while self.eat("+") {
            ms.push(self.word()?);
        }
        Ok(Polynomial::new(ms))
    }

    fn paren_word(&mut self) -> Result<Monomial> {
        self.expect("(")?;
        let w = self.word()?;
        self.expect(")")?;
        Ok(w)
    }

    fn paren_poly(&mut self) -> Result<Polynomial> {
        self.expect("(")?;
        let p = self.poly()?;
        self.expect(")")?;
        Ok(p)
    }

    fn circuit(&mut self) -> Result<CircuitTerm> {
        let mut c = self.circuit_tensor()?;
        while self.eat(";") {
            let d = self.circuit_tensor()?;
            c = CircuitTerm::Seq(c.into(), d.into());
        }
        Ok(c)
    }

    fn circuit_tensor(&mut self) -> Result<CircuitTerm> {
        let mut c = self.circuit_atom()?;
        while self.eat("*") {
            let d = self.circuit_atom()?;
            c = CircuitTerm::Tensor(c.into(), d.into());
        }
        Ok(c)
    }

    fn circuit_atom(&mut self) -> Result<CircuitTerm> {
        if self.eat("(") {
            let c = self.circuit()?;
            self.expect(")")?;
            return Ok(c);
        }
        let name = self.ident()?;
        Ok(match name.as_str() {
            "id" => circuit::id_word(&self.paren_word()?),
            "id1" => CircuitTerm::IdUnit,
            "sym" => {
                self.expect("(")?;
                let u = self.word()?;
                self.expect(",")?;
                let v = self.word()?;
                self.expect(")")?;
                circuit::sym_word(&u, &v)
            }
            "cp" => circuit::word_copier(&self.paren_word()?),
            "dc" => circuit::word_discharger(&self.paren_word()?),
            "cocp" => circuit::word_cocopier(&self.paren_word()?),
            "codc" => circuit::word_codischarger(&self.paren_word()?),
            _ => match self.sig {
                Some(sig) => {
                    self.pos -= 1;
                    let g = sig.gen(&name);
                    if g.is_err() {
                        return self.error(format!("unknown generator `{name}`"));
                    }
                    self.pos += 1;
                    g?
                }
                None => return self.error("circuits need a signature"),
            },
        })
    }

    fn tape(&mut self) -> Result<TapeTerm> {
        let mut t = self.tape_sum()?;
        while self.eat(";") {
            let s = self.tape_sum()?;
            t = TapeTerm::Seq(t.into(), s.into());
        }
        Ok(t)
    }

    fn tape_sum(&mut self) -> Result<TapeTerm> {
        let mut t = self.tape_oplus()?;
        while self.eat("+") {
            let s = self.tape_oplus()?;
            t = tape::sum(&t, &s)?;
        }
        Ok(t)
    }

    fn tape_oplus(&mut self) -> Result<TapeTerm> {
        let mut t = self.tape_tensor()?;
        while self.eat("(+)") {
            let s = self.tape_tensor()?;
            t = TapeTerm::Oplus(t.into(), s.into());
        }
        Ok(t)
    }

    fn tape_tensor(&mut self) -> Result<TapeTerm> {
        let mut t = self.tape_atom()?;
        while self.eat("*") {
            let s = self.tape_atom()?;
            t = tape::tensor(&t, &s)?;
        }
        Ok(t)
    }

    fn tape_atom(&mut self) -> Result<TapeTerm> {
        if self.eat("(") {
            let t = self.tape()?;
            self.expect(")")?;
            return Ok(t);
        }
        if self.eat("[") {
            let c = self.circuit()?;
            self.expect("]")?;
            return Ok(TapeTerm::Lift(c));
        }
        let name = self.ident()?;
        Ok(match name.as_str() {
            "idm" => tape::id_poly(&self.paren_poly()?),
            "id0" => TapeTerm::IdZero,
            "symp" => {
                self.expect("(")?;
                let p = self.poly()?;
                self.expect(",")?;
                let q = self.poly()?;
                self.expect(")")?;
                tape::sym_plus_poly(&p, &q)
            }
            "diag" => tape::diag_poly(&self.paren_poly()?),
            "codiag" => tape::codiag_poly(&self.paren_poly()?),
            "bang" => tape::bang_poly(&self.paren_poly()?),
            "cobang" => tape::cobang_poly(&self.paren_poly()?),
            _ => {
                if let Some(table) = self.table {
                    if table.contains_key(name.as_str()) {
                        return expand_generator(&name, table);
                    }
                }
                match self.sig.map(|s| s.gen(&name)) {
                    Some(Ok(c)) => TapeTerm::Lift(c),
                    _ => {
                        self.pos -= 1;
                        return self.error(format!("unknown generator `{name}`"));
                    }
                }
            }
        })
    }

    fn cr(&mut self) -> Result<CrExpr> {
        let mut e = self.cr_inter()?;
        while self.eat("|") {
            e = CrExpr::union(e, self.cr_inter()?);
        }
        Ok(e)
    }

    fn cr_inter(&mut self) -> Result<CrExpr> {
        let mut e = self.cr_seq()?;
        while self.eat("&") {
            e = CrExpr::inter(e, self.cr_seq()?);
        }
        Ok(e)
    }

    fn cr_seq(&mut self) -> Result<CrExpr> {
        let mut e = self.cr_postfix()?;
        while self.eat(";") {
            e = CrExpr::seq(e, self.cr_postfix()?);
        }
        Ok(e)
    }

    fn cr_postfix(&mut self) -> Result<CrExpr> {
        let mut e = self.cr_atom()?;
        while self.eat("~") {
            e = CrExpr::op(e);
        }
        Ok(e)
    }

    fn cr_atom(&mut self) -> Result<CrExpr> {
        if self.eat("(") {
            let e = self.cr()?;
            self.expect(")")?;
            return Ok(e);
        }
        let name = self.ident()?;
        Ok(match name.as_str() {
            "id" => CrExpr::One,
            "top" => CrExpr::Top,
            "bot" => CrExpr::Bot,
            _ => {
                if let Some(sig) = self.sig {
                    if sig.generator(&name).is_none() {
                        self.pos -= 1;
                        return self.error(format!("undeclared relation symbol `{name}`"));
                    }
                }
                CrExpr::rel(&name)
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParsedSignature {
    Mon(MonSignature),
    Rig(RigSignature),
}

impl ParsedSignature {
    /// The monoidal signature, reducing a rig signature first.
    pub fn into_monoidal(self) -> Result<(MonSignature, Option<ReductionTable>)> {
        match self {
            ParsedSignature::Mon(s) => Ok((s, None)),
            ParsedSignature::Rig(r) => {
                let (s, t) = reduce_rig_signature(&r)?;
                Ok((s, Some(t)))
            }
        }
    }
}

fn check_name(p: &Parser, name: &str) -> Result<()> {
    if RESERVED.contains(&name) {
        return Err(Error::ReservedName(name.to_string()));
    }
    if name.starts_with(|c: char| c.is_ascii_digit()) {
        return p.error(format!("`{name}` cannot start with a digit"));
    }
    Ok(())
}

pub fn parse_signature(text: &str) -> Result<ParsedSignature> {
    let mut p = Parser::new(text)?;
    let mut sorts: Vec<String> = Vec::new();
    let mut gens: Vec<(String, Polynomial, Polynomial)> = Vec::new();
    while *p.peek() != Tok::Eof {
        if p.at_keyword("sort") {
            p.pos += 1;
            let mut any = false;
            while let Tok::Ident(_) = p.peek() {
                let name = p.ident()?;
                check_name(&p, &name)?;
                if sorts.contains(&name) {
                    return Err(Error::DuplicateSort(name));
                }
                sorts.push(name);
                any = true;
            }
            if !any {
                return p.error("expected at least one sort name");
            }
            p.expect(";")?;
        } else if p.at_keyword("gen") {
            p.pos += 1;
            let name = p.ident()?;
            check_name(&p, &name)?;
            p.expect(":")?;
            let ar = p.poly()?;
            p.expect("->")?;
            let coar = p.poly()?;
            p.expect(";")?;
            gens.push((name, ar, coar));
        } else {
            return p.error(format!("expected `sort` or `gen`, found {}", p.describe()));
        }
    }
    let rig = gens.iter().any(|(_, a, c)| a.len() != 1 || c.len() != 1);
    if rig {
        let mut rs = RigSignature::new();
        for s in &sorts {
            rs.add_sort(s)?;
        }
        for (n, a, c) in gens {
            rs.add_generator(&n, a, c)?;
        }
        Ok(ParsedSignature::Rig(rs))
    } else {
        let mut ms = MonSignature::new();
        for s in &sorts {
            ms.add_sort(s)?;
        }
        for (n, a, c) in gens {
            let a = a.monomials()[0].clone();
            let c = c.monomials()[0].clone();
            ms.add_generator(&n, a, c)?;
        }
        Ok(ParsedSignature::Mon(ms))
    }
}

/// Parses and type-checks a circuit.
pub fn parse_circuit(text: &str, sig: &MonSignature) -> Result<CircuitTerm> {
    let mut p = Parser::new(text)?;
    p.sig = Some(sig);
    let c = p.circuit()?;
    p.end()?;
    circuit::type_check_circuit(&c, sig)?;
    Ok(c)
}

/// Parses and type-checks a tape; with a reduction table, bare rig generator
/// names expand into their matrix form.
pub fn parse_tape(text: &str, sig: &MonSignature, table: Option<&ReductionTable>) -> Result<TapeTerm> {
    let mut p = Parser::new(text)?;
    p.sig = Some(sig);
    p.table = table;
    let t = p.tape()?;
    p.end()?;
    tape::type_check_tape(&t, sig)?;
    Ok(t)
}

/// Parses a relation expression; with a signature, every symbol must be declared.
pub fn parse_cr(text: &str, sig: Option<&MonSignature>) -> Result<CrExpr> {
    let mut p = Parser::new(text)?;
    p.sig = sig;
    let e = p.cr()?;
    p.end()?;
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cr::cr_signature;

    fn mon(text: &str) -> MonSignature {
        match parse_signature(text).unwrap() {
            ParsedSignature::Mon(s) => s,
            other => panic!("expected a monoidal signature, got {other:?}"),
        }
    }

    #[test]
    fn signatures() {
        let s = mon("sort A; gen R : A -> A;");
        assert_eq!(s.sorts().count(), 1);
        assert_eq!(s.generators().count(), 1);
        let s = mon("sort A; gen f : A A -> ;  # discards");
        assert_eq!(s.generator("f").unwrap().coarity, Monomial::unit());
        let r = parse_signature("sort A B C; gen s : A B + C -> A + B + C;").unwrap();
        let ParsedSignature::Rig(r) = r else { panic!("expected a rig signature") };
        assert_eq!(r.generator("s").unwrap().arity.len(), 2);
        assert_eq!(r.generator("s").unwrap().coarity.len(), 3);
    }

    #[test]
    fn signature_errors() {
        assert!(matches!(
            parse_signature("sort A;\ngen R : A => A;"),
            Err(Error::Syntax { line: 2, column: 11, .. })
        ));
        assert_eq!(parse_signature("sort A A;"), Err(Error::DuplicateSort("A".into())));
        assert_eq!(
            parse_signature("sort A; gen R : A -> A; gen R : A -> A;"),
            Err(Error::DuplicateGenerator("R".into()))
        );
        assert_eq!(parse_signature("sort A; gen R : B -> A;"), Err(Error::UndeclaredSort("B".into())));
        assert_eq!(parse_signature("sort A; gen cp : A -> A;"), Err(Error::ReservedName("cp".into())));
    }

    #[test]
    fn circuits_and_tapes() {
        let sig = mon("sort A B; gen R : A -> A; gen S : A -> A; gen f : A -> B;").with_frobenius();
        let c = parse_circuit("cp(A) ; R * S ; cocp(A)", &sig).unwrap();
        assert_eq!(c.type_of().unwrap(), (Monomial::of(&["A"]), Monomial::of(&["A"])));
        assert!(matches!(parse_circuit("R ; f ; R", &sig), Err(Error::CircuitMismatch { .. })));
        let t = parse_tape("diag(A) ; ([R] (+) [S]) ; codiag(A)", &sig, None).unwrap();
        assert_eq!(t.to_string(), "diag(A) ; [R] (+) [S] ; codiag(A)");
        let t = parse_tape("[R] + [S] ; [f]", &sig, None).unwrap();
        assert_eq!(t.cod().unwrap(), Monomial::of(&["B"]).to_poly());
        let t = parse_tape("idm(A + B) * idm(A)", &sig, None).unwrap();
        assert_eq!(t.dom().unwrap().len(), 2);
        assert!(matches!(parse_tape("[Q]", &sig, None), Err(Error::Syntax { .. })));
    }

    #[test]
    fn relation_expressions() {
        let e = parse_cr("R | (S & T)", None).unwrap();
        assert_eq!(e, CrExpr::union(CrExpr::rel("R"), CrExpr::inter(CrExpr::rel("S"), CrExpr::rel("T"))));
        let e = parse_cr("R ; S | T", None).unwrap();
        assert_eq!(e, CrExpr::union(CrExpr::seq(CrExpr::rel("R"), CrExpr::rel("S")), CrExpr::rel("T")));
        let e = parse_cr("(R ; S)~", None).unwrap();
        assert_eq!(e, CrExpr::op(CrExpr::seq(CrExpr::rel("R"), CrExpr::rel("S"))));
        let sig = cr_signature(["R"]);
        assert!(matches!(parse_cr("R ; Q", Some(&sig)), Err(Error::Syntax { column: 5, .. })));
        assert!(matches!(parse_cr("R ;", None), Err(Error::Syntax { .. })));
    }

    #[test]
    fn display_round_trips() {
        let sig = mon("sort A B; gen R : A -> A; gen f : A -> B;").with_frobenius();
        for text in ["R ; cp(A) ; f * (R ; f)", "id(A B) ; sym(A,B)", "codc(A) ; dc(A)"] {
            let c = parse_circuit(text, &sig).unwrap();
            assert_eq!(parse_circuit(&c.to_string(), &sig).unwrap(), c);
        }
        let e = parse_cr("(R | S~) & (id ; top) ; bot", None).unwrap();
        assert_eq!(parse_cr(&e.to_string(), None).unwrap(), e);
    }
}
