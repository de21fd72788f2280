//! Concrete syntax for pp formulas.
//!
//! ```text
//! formula := "exists" ident+ "(" eqs ")" | "(" eqs ")" | eq
//! eqs     := eq (";" eq)*
//! eq      := linear "=" linear
//! linear  := ["-"] term (("+" | "-") term)*
//! term    := coeff ["*" ident] | ident
//! coeff   := factor ("*" factor)*
//! factor  := int | "p:" int | "[" poly "]" | "pow" "(" factor "," iexpr ")" | "i"
//! ```
//!
//! `i` is the stage index and only exists when a template is being
//! instantiated. Free variables are ordered naturally (`x2` before `x10`).

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use ppmod::{Card, EuclideanDomain, FpModule, Integers, Mat, PpFormula, Ring, RingDescriptor};

use crate::error::{CliError, Result};

/// Ring-specific pieces of the syntax, plus the brute-force cross-checks
/// that exist only for some rings.
pub trait CliRing: EuclideanDomain {
    /// The element written `[text]`.
    fn bracket_literal(ring: &Ring<Self>, text: &str) -> Result<Self::Elem>;

    /// An element as it appears in JSON data.
    fn parse_elem(ring: &Ring<Self>, text: &str) -> Result<Self::Elem>;

    /// A non-unit whose powers give a strictly descending ideal chain, when
    /// the ring has one.
    fn probe_base(ring: &Ring<Self>) -> Self::Elem;

    fn oracle_implies(
        _phi: &PpFormula<Self>,
        _psi: &PpFormula<Self>,
        _bound: usize,
    ) -> Option<ppmod::Result<bool>> {
        None
    }

    fn oracle_index(
        _top: &PpFormula<Self>,
        _bottom: &PpFormula<Self>,
        _m: &FpModule<Self>,
        _bound: usize,
    ) -> Option<ppmod::Result<Card>> {
        None
    }
}

impl CliRing for Integers {
    fn bracket_literal(_ring: &Ring<Self>, text: &str) -> Result<BigInt> {
        Err(CliError::RingLiteral(format!(
            "polynomial literal [{text}] outside Fpx"
        )))
    }

    fn parse_elem(ring: &Ring<Self>, text: &str) -> Result<BigInt> {
        let t = text.trim();
        let n = match t.strip_prefix("p:") {
            Some(k) => {
                field_literal_allowed(ring, t)?;
                k.trim().parse::<BigInt>()
            }
            None => t.parse::<BigInt>(),
        }
        .map_err(|_| CliError::RingLiteral(format!("`{text}` is not an integer")))?;
        Ok(ring.reduce(&n))
    }

    fn probe_base(ring: &Ring<Self>) -> BigInt {
        ring.int(2)
    }

    fn oracle_implies(
        phi: &PpFormula<Self>,
        psi: &PpFormula<Self>,
        bound: usize,
    ) -> Option<ppmod::Result<bool>> {
        phi.ring().modulus()?;
        Some(ppmod::oracle::implies_brute_bounded(phi, psi, bound))
    }

    fn oracle_index(
        top: &PpFormula<Self>,
        bottom: &PpFormula<Self>,
        m: &FpModule<Self>,
        bound: usize,
    ) -> Option<ppmod::Result<Card>> {
        top.ring().modulus()?;
        Some(ppmod::oracle::index_brute_bounded(top, bottom, m, bound))
    }
}

#[cfg(feature = "poly")]
impl CliRing for ppmod::PolyFp {
    fn bracket_literal(ring: &Ring<Self>, text: &str) -> Result<ppmod::Poly> {
        parse_poly(ring, text)
    }

    fn parse_elem(ring: &Ring<Self>, text: &str) -> Result<ppmod::Poly> {
        let t = text.trim();
        let t = t
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .unwrap_or(t);
        parse_poly(ring, t)
    }

    fn probe_base(ring: &Ring<Self>) -> ppmod::Poly {
        ring.domain().monomial(1, 1)
    }
}

/// `3x^2+2x+1`, `x^3 - x`, `2*x + 4`; coefficients are reduced mod `p`.
#[cfg(feature = "poly")]
fn parse_poly(ring: &Ring<ppmod::PolyFp>, text: &str) -> Result<ppmod::Poly> {
    let bad = || CliError::RingLiteral(format!("bad polynomial `{text}`"));
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(bad());
    }
    let d = ring.domain();
    let mut acc = d.zero();
    let mut rest = s.as_str();
    let mut first = true;
    while !rest.is_empty() {
        let neg = if let Some(r) = rest.strip_prefix('-') {
            rest = r;
            true
        } else if let Some(r) = rest.strip_prefix('+') {
            if first {
                return Err(bad());
            }
            rest = r;
            false
        } else if first {
            false
        } else {
            return Err(bad());
        };
        first = false;
        let end = rest.find(['+', '-']).unwrap_or(rest.len());
        let term = &rest[..end];
        rest = &rest[end..];
        let (coef, power) = match term.find('x') {
            None => (term, None),
            Some(pos) => {
                let c = term[..pos].trim_end_matches('*');
                let p = &term[pos + 1..];
                let k = if p.is_empty() {
                    1
                } else {
                    p.strip_prefix('^')
                        .and_then(|k| k.parse::<usize>().ok())
                        .ok_or_else(bad)?
                };
                (c, Some(k))
            }
        };
        let c: u64 = if coef.is_empty() {
            if power.is_none() {
                return Err(bad());
            }
            1
        } else {
            coef.parse().map_err(|_| bad())?
        };
        let p = d.characteristic();
        let mono = d.monomial(c % p, power.unwrap_or(0));
        acc = if neg {
            d.sub(&acc, &mono)
        } else {
            d.add(&acc, &mono)
        };
    }
    Ok(ring.reduce(&acc))
}

fn field_literal_allowed<D: EuclideanDomain>(ring: &Ring<D>, lit: &str) -> Result<()> {
    match ring.descriptor() {
        RingDescriptor::PrimeField(_) | RingDescriptor::PolynomialsOverPrimeField(_) => Ok(()),
        other => Err(CliError::RingLiteral(format!(
            "field literal `{lit}` over {other}"
        ))),
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Field(BigInt),
    Bracket(String),
    Sym(char),
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|p| p.1).collect();
            out.push((pos, Tok::Int(s.parse().expect("digits"))));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len()
                && (chars[i].1.is_ascii_alphanumeric() || chars[i].1 == '_' || chars[i].1 == '\'')
            {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|p| p.1).collect();
            if s == "p" && i < chars.len() && chars[i].1 == ':' {
                i += 1;
                let ds = i;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    i += 1;
                }
                if ds == i {
                    return Err(CliError::parse(pos, "expected digits after `p:`"));
                }
                let s: String = chars[ds..i].iter().map(|p| p.1).collect();
                out.push((pos, Tok::Field(s.parse().expect("digits"))));
            } else {
                out.push((pos, Tok::Ident(s)));
            }
        } else if c == '[' {
            let start = i + 1;
            while i < chars.len() && chars[i].1 != ']' {
                i += 1;
            }
            if i == chars.len() {
                return Err(CliError::parse(pos, "unclosed `[`"));
            }
            let s: String = chars[start..i].iter().map(|p| p.1).collect();
            out.push((pos, Tok::Bracket(s)));
            i += 1;
        } else if "();=+-*,".contains(c) {
            out.push((pos, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(CliError::parse(pos, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

/// Coefficients of one side of an equation.
struct Linear<E> {
    vars: BTreeMap<String, E>,
    constant: E,
    /// Variables written left of `=`; fixes the orientation of `Ay = Bx`.
    left: Vec<String>,
}

struct Parser<'a, D: CliRing> {
    ring: &'a Ring<D>,
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    index: Option<u64>,
}

impl<D: CliRing> Parser<'_, D> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(CliError::parse(self.pos(), format!("expected `{c}`")))
        }
    }

    fn is_index(&self, name: &str) -> bool {
        self.index.is_some() && name == "i"
    }

    fn starts_factor(&self) -> bool {
        match self.peek() {
            Some(Tok::Int(_) | Tok::Field(_) | Tok::Bracket(_)) => true,
            Some(Tok::Ident(s)) => {
                self.is_index(s)
                    || (s == "pow"
                        && self.toks.get(self.at + 1).map(|t| &t.1) == Some(&Tok::Sym('(')))
            }
            _ => false,
        }
    }

    fn factor(&mut self) -> Result<D::Elem> {
        let pos = self.pos();
        let tok = self.peek().cloned();
        match tok {
            Some(Tok::Int(n)) => {
                self.at += 1;
                Ok(self.ring.from_int(&n))
            }
            Some(Tok::Field(n)) => {
                self.at += 1;
                field_literal_allowed(self.ring, &format!("p:{n}"))?;
                Ok(self.ring.from_int(&n))
            }
            Some(Tok::Bracket(s)) => {
                self.at += 1;
                D::bracket_literal(self.ring, &s)
            }
            Some(Tok::Ident(s)) if self.is_index(&s) => {
                self.at += 1;
                Ok(self
                    .ring
                    .from_int(&BigInt::from(self.index.expect("template"))))
            }
            Some(Tok::Ident(s)) if s == "pow" => {
                self.at += 1;
                self.expect('(')?;
                let base = self.coeff()?;
                self.expect(',')?;
                let e = self.iexpr()?;
                self.expect(')')?;
                let e = e
                    .to_u32()
                    .ok_or_else(|| CliError::parse(pos, format!("exponent {e} out of range")))?;
                Ok(self.ring.pow(&base, e as u64))
            }
            _ => Err(CliError::parse(pos, "expected a coefficient")),
        }
    }

    fn coeff(&mut self) -> Result<D::Elem> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Sym('*')) && self.next_is_factor() {
            self.at += 1;
            let f = self.factor()?;
            acc = self.ring.mul(&acc, &f);
        }
        Ok(acc)
    }

    fn next_is_factor(&mut self) -> bool {
        self.at += 1;
        let r = self.starts_factor();
        self.at -= 1;
        r
    }

    /// Integer arithmetic in exponents.
    fn iexpr(&mut self) -> Result<BigInt> {
        let mut acc = self.iterm()?;
        loop {
            if self.eat('+') {
                acc += self.iterm()?;
            } else if self.eat('-') {
                acc -= self.iterm()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn iterm(&mut self) -> Result<BigInt> {
        let mut acc = self.iatom()?;
        while self.eat('*') {
            acc *= self.iatom()?;
        }
        Ok(acc)
    }

    fn iatom(&mut self) -> Result<BigInt> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.at += 1;
                Ok(n)
            }
            Some(Tok::Ident(s)) if self.is_index(&s) => {
                self.at += 1;
                Ok(BigInt::from(self.index.expect("template")))
            }
            Some(Tok::Sym('(')) => {
                self.at += 1;
                let v = self.iexpr()?;
                self.expect(')')?;
                Ok(v)
            }
            _ => Err(CliError::parse(pos, "expected an integer exponent")),
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek().cloned() {
            Some(Tok::Ident(s)) if !self.is_index(&s) && s != "exists" => {
                self.at += 1;
                Ok(s)
            }
            _ => Err(CliError::parse(self.pos(), "expected a variable")),
        }
    }

    fn term(&mut self, out: &mut Linear<D::Elem>, negate: bool) -> Result<()> {
        let (c, var) = if self.starts_factor() {
            let c = self.coeff()?;
            if self.eat('*') {
                (c, Some(self.ident()?))
            } else {
                (c, None)
            }
        } else {
            (self.ring.one(), Some(self.ident()?))
        };
        let c = if negate { self.ring.neg(&c) } else { c };
        match var {
            None => out.constant = self.ring.add(&out.constant, &c),
            Some(v) => {
                let slot = out.vars.entry(v).or_insert_with(|| self.ring.zero());
                *slot = self.ring.add(slot, &c);
            }
        }
        Ok(())
    }

    fn linear(&mut self) -> Result<Linear<D::Elem>> {
        let mut out = Linear {
            vars: BTreeMap::new(),
            constant: self.ring.zero(),
            left: Vec::new(),
        };
        let neg = self.eat('-');
        self.term(&mut out, neg)?;
        loop {
            if self.eat('+') {
                self.term(&mut out, false)?;
            } else if self.eat('-') {
                self.term(&mut out, true)?;
            } else {
                return Ok(out);
            }
        }
    }

    /// `lhs - rhs`, with a position for error messages.
    fn equation(&mut self) -> Result<(usize, Linear<D::Elem>)> {
        let pos = self.pos();
        let mut lhs = self.linear()?;
        lhs.left = lhs.vars.keys().cloned().collect();
        self.expect('=')?;
        let rhs = self.linear()?;
        for (v, c) in rhs.vars {
            let slot = lhs.vars.entry(v).or_insert_with(|| self.ring.zero());
            *slot = self.ring.sub(slot, &c);
        }
        lhs.constant = self.ring.sub(&lhs.constant, &rhs.constant);
        Ok((pos, lhs))
    }

    fn formula(&mut self) -> Result<(Vec<String>, Vec<(usize, Linear<D::Elem>)>)> {
        let mut bound = Vec::new();
        if self.peek() == Some(&Tok::Ident("exists".into())) {
            self.at += 1;
            while let Some(Tok::Ident(_)) = self.peek() {
                let pos = self.pos();
                let v = self.ident()?;
                if bound.contains(&v) {
                    return Err(CliError::parse(pos, format!("`{v}` bound twice")));
                }
                bound.push(v);
            }
            if bound.is_empty() {
                return Err(CliError::parse(self.pos(), "expected a bound variable"));
            }
            self.expect('(')?;
            let eqs = self.equations()?;
            self.expect(')')?;
            return Ok((bound, eqs));
        }
        if self.peek() == Some(&Tok::Sym('(')) {
            self.at += 1;
            let eqs = self.equations()?;
            self.expect(')')?;
            return Ok((bound, eqs));
        }
        Ok((bound, vec![self.equation()?]))
    }

    fn equations(&mut self) -> Result<Vec<(usize, Linear<D::Elem>)>> {
        let mut eqs = vec![self.equation()?];
        while self.eat(';') {
            eqs.push(self.equation()?);
        }
        Ok(eqs)
    }
}

/// Orders names so that embedded numbers compare by value.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    fn chunks(s: &str) -> Vec<(bool, &str)> {
        let mut out = Vec::new();
        let mut start = 0;
        let bytes = s.as_bytes();
        for i in 1..=bytes.len() {
            if i == bytes.len() || bytes[i].is_ascii_digit() != bytes[start].is_ascii_digit() {
                out.push((bytes[start].is_ascii_digit(), &s[start..i]));
                start = i;
            }
        }
        out
    }
    for (x, y) in chunks(a).into_iter().zip(chunks(b)) {
        let ord = match (x, y) {
            ((true, p), (true, q)) => {
                let (p, q) = (p.trim_start_matches('0'), q.trim_start_matches('0'));
                p.len().cmp(&q.len()).then(p.cmp(q))
            }
            ((_, p), (_, q)) => p.cmp(q),
        };
        if ord != Ordering::Equal {
            return ord;
        }
    }
    a.len().cmp(&b.len()).then(a.cmp(b))
}

/// A parsed formula with the names of its free variables, in column order.
#[derive(Clone, Debug)]
pub struct Parsed<D: EuclideanDomain> {
    pub formula: PpFormula<D>,
    pub free: Vec<String>,
}

pub fn parse_formula<D: CliRing>(text: &str, ring: &Ring<D>) -> Result<PpFormula<D>> {
    Ok(parse_with(text, ring, None, None)?.formula)
}

/// Parses with the free variables fixed in advance; any other free
/// variable is an error.
pub fn parse_formula_in<D: CliRing>(
    text: &str,
    ring: &Ring<D>,
    free: &[String],
) -> Result<PpFormula<D>> {
    Ok(parse_with(text, ring, Some(free), None)?.formula)
}

/// Instantiates a template at stage `index`.
pub fn parse_template<D: CliRing>(
    text: &str,
    ring: &Ring<D>,
    free: Option<&[String]>,
    index: u64,
) -> Result<Parsed<D>> {
    parse_with(text, ring, free, Some(index))
}

pub fn parse_with<D: CliRing>(
    text: &str,
    ring: &Ring<D>,
    free: Option<&[String]>,
    index: Option<u64>,
) -> Result<Parsed<D>> {
    let toks = lex(text)?;
    let mut p = Parser {
        ring,
        toks,
        at: 0,
        end: text.len(),
        index,
    };
    let (bound, eqs) = p.formula()?;
    if p.at < p.toks.len() {
        return Err(CliError::parse(p.pos(), "unexpected trailing input"));
    }
    let free: Vec<String> = match free {
        Some(f) => {
            for (_, eq) in &eqs {
                if let Some(v) = eq
                    .vars
                    .keys()
                    .find(|v| !bound.contains(v) && !f.contains(v))
                {
                    return Err(CliError::UnknownVariable(v.clone()));
                }
            }
            f.to_vec()
        }
        None => {
            let mut names: Vec<String> = eqs
                .iter()
                .flat_map(|(_, eq)| eq.vars.keys().cloned())
                .filter(|v| !bound.contains(v))
                .collect();
            names.sort_by(|a, b| natural_cmp(a, b));
            names.dedup();
            names
        }
    };
    // `x = x` and `0 = 0` only declare variables
    let eqs: Vec<_> = eqs
        .into_iter()
        .filter(|(_, eq)| !ring.is_zero(&eq.constant) || eq.vars.values().any(|c| !ring.is_zero(c)))
        .collect();
    let (n, l) = (free.len(), bound.len());
    let mut a = ring.zero_mat(eqs.len(), l);
    let mut b = ring.zero_mat(eqs.len(), n);
    for (r, (pos, eq)) in eqs.iter().enumerate() {
        if !ring.is_zero(&eq.constant) {
            return Err(CliError::parse(
                *pos,
                "equations must not have a nonzero constant term",
            ));
        }
        // keep the bound variables on the side they were written on
        let has_bound = eq.vars.keys().any(|v| bound.contains(v));
        let flip = if has_bound {
            !eq.left.iter().any(|v| bound.contains(v))
        } else {
            !eq.left.is_empty()
        };
        for (v, c) in &eq.vars {
            let c = if flip { ring.neg(c) } else { c.clone() };
            if let Some(j) = bound.iter().position(|x| x == v) {
                a.set(r, j, c);
            } else {
                let j = free.iter().position(|x| x == v).expect("collected");
                b.set(r, j, ring.neg(&c));
            }
        }
    }
    Ok(Parsed {
        formula: PpFormula::new(ring, a, b)?,
        free,
    })
}

/// `x1, …, xn`, the names the printer uses.
pub fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|j| format!("x{j}")).collect()
}

/// A matrix from rows of element strings.
pub fn parse_rows<D: CliRing>(
    ring: &Ring<D>,
    rows: &[Vec<String>],
    cols: usize,
) -> Result<Mat<D::Elem>> {
    let parsed = rows
        .iter()
        .map(|r| {
            if r.len() != cols {
                return Err(CliError::Schema(format!(
                    "row of length {} where {cols} entries are needed",
                    r.len()
                )));
            }
            r.iter()
                .map(|s| D::parse_elem(ring, s))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Mat::from_rows(parsed, cols)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ppmod::ppcalc::equivalent;

    fn z() -> Ring<Integers> {
        Ring::integers()
    }

    #[test]
    fn spec_examples() {
        let z = z();
        let d = parse_formula("exists y (x = 2*y)", &z).unwrap();
        assert_eq!(d, PpFormula::divisibility(&z, &z.mat(&[&[2]])));
        let c = parse_formula("exists y (x = 2*y ; 4*y = 0)", &z).unwrap();
        assert_eq!(c, PpFormula::cypr_formula(&z, &[z.int(2)], &z.int(4)));
        let t = parse_formula("x = x", &z).unwrap();
        assert!(equivalent(&t, &PpFormula::top(&z, 1)).unwrap());
        assert_eq!(t.arity(), 1);
    }

    #[test]
    fn errors() {
        let z = z();
        assert!(matches!(
            parse_formula("exists y (x = 2*y", &z),
            Err(CliError::Parse { pos: 17, .. })
        ));
        assert!(matches!(
            parse_formula("x = 1", &z),
            Err(CliError::Parse { .. })
        ));
        assert!(matches!(
            parse_formula("x = p:3", &z),
            Err(CliError::RingLiteral(_))
        ));
        assert!(matches!(
            parse_formula("x = [x+1]*y", &z),
            Err(CliError::RingLiteral(_))
        ));
        assert!(
            matches!(parse_formula_in("x = z", &z, &["x".into()]), Err(CliError::UnknownVariable(v)) if v == "z")
        );
        assert!(matches!(
            parse_formula("x = $", &z),
            Err(CliError::Parse { pos: 4, .. })
        ));
        // 12 = 0 holds in Z/12
        let z12 = Ring::integers_mod(12).unwrap();
        assert!(parse_formula("x = x + 12", &z12).is_ok());
    }

    #[test]
    fn natural_order() {
        let z = z();
        let p = parse_with("x10 = x2 + x1", &z, None, None).unwrap();
        assert_eq!(p.free, vec!["x1", "x2", "x10"]);
        assert_eq!(natural_cmp("y9", "y10"), Ordering::Less);
        assert_eq!(natural_cmp("a", "b"), Ordering::Less);
    }

    #[test]
    fn templates() {
        let z = z();
        let t = "exists y (x = pow(2, i)*y ; pow(2, i+1)*y = 0)";
        for i in 0..5u64 {
            let p = parse_template(t, &z, None, i).unwrap();
            let want = PpFormula::cypr_formula(&z, &[z.int(1 << i)], &z.int(2 << i));
            assert_eq!(p.formula, want);
        }
        let p = parse_template("exists y (x = i*y)", &z, None, 3).unwrap();
        assert_eq!(p.formula, PpFormula::divisibility(&z, &z.mat(&[&[3]])));
    }

    #[test]
    fn round_trip_printer() {
        let z6 = Ring::integers_mod(6).unwrap();
        let phi = PpFormula::new(
            &z6,
            z6.mat(&[&[2, 0], &[1, 3]]),
            z6.mat(&[&[1, 5], &[0, 0]]),
        )
        .unwrap();
        let back = parse_formula(&phi.to_string(), &z6).unwrap();
        assert!(equivalent(&phi, &back).unwrap());
        let z = z();
        let top = PpFormula::top(&z, 2);
        assert!(equivalent(&top, &parse_formula(&top.to_string(), &z).unwrap()).unwrap());
    }

    #[cfg(feature = "poly")]
    #[test]
    fn polynomials() {
        let f2 = Ring::poly_over_fp(2).unwrap();
        let phi = parse_formula("exists y (x = [x^2+1]*y)", &f2).unwrap();
        let back = parse_formula(&phi.to_string(), &f2).unwrap();
        assert_eq!(phi, back);
        let f3 = Ring::poly_over_fp(3).unwrap();
        let e = ppmod::PolyFp::parse_elem(&f3, "2x^2 - x + 4").unwrap();
        assert_eq!(f3.format(&e), "2x^2+2x+1");
        assert!(parse_formula("exists y (x = p:2*y)", &f3).is_ok());
    }
}
