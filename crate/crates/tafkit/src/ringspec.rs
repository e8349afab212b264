//! Textual descriptions of finite commutative rings.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! ringspec := atom (" x " atom)*
//! atom     := "Z/" NAT | "Z/" NAT "[" IDENT "]" "/(" poly ("," poly)* ")"
//! poly     := ["-"] term (("+" | "-") term)*
//! term     := NAT ["*"] [IDENT ["^" NAT]] | IDENT ["^" NAT]
//! ```
//!
//! Examples: `Z/8`, `Z/8[x]/(x^2,2x)`, `Z/4 x Z/9[t]/(t^3)`.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("syntax error at byte {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

fn err<T>(pos: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { pos, msg: msg.into() })
}

/// Sparse integer polynomial in one variable: `(coefficient, exponent)` pairs
/// with exponents strictly decreasing and no zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: Vec<(i64, u32)>,
}

impl Poly {
    pub fn new(raw_terms: Vec<(i64, u32)>) -> Self {
        let mut map = std::collections::BTreeMap::new();
        for (c, e) in raw_terms {
            let slot = map.entry(e).or_insert(0i64);
            *slot = slot.checked_add(c).expect("coefficient overflow");
        }
        let mut terms: Vec<(i64, u32)> = map
            .into_iter()
            .filter(|&(_, c)| c != 0)
            .map(|(e, c)| (c, e))
            .collect();
        terms.reverse();
        Poly { terms }
    }

    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn constant(c: i64) -> Self {
        Poly::new(vec![(c, 0)])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(i64, u32)] {
        &self.terms
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.first().map(|&(_, e)| e)
    }

    /// Dense coefficient vector reduced into `[0, n)`, lowest degree first.
    /// Trailing zeros are trimmed, so the result length is the effective
    /// degree plus one (empty for polynomials that vanish mod `n`).
    pub fn dense_mod(&self, n: u64) -> Vec<u64> {
        let deg = match self.degree() {
            None => return Vec::new(),
            Some(d) => d as usize,
        };
        let n_i = n as i128;
        let mut out = vec![0u64; deg + 1];
        for &(c, e) in &self.terms {
            out[e as usize] = (c as i128).rem_euclid(n_i) as u64;
        }
        while out.last() == Some(&0) {
            out.pop();
        }
        out
    }

    /// Whether this relation is monic modulo `n` (effective leading
    /// coefficient congruent to 1).
    pub fn is_monic_mod(&self, n: u64) -> bool {
        self.dense_mod(n).last() == Some(&1)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with_var(f, "x")
    }
}

impl Poly {
    pub fn fmt_with_var(&self, f: &mut fmt::Formatter<'_>, var: &str) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, &(c, e)) in self.terms.iter().enumerate() {
            let mag = c.unsigned_abs();
            if i == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else if c < 0 {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            match (mag, e) {
                (m, 0) => write!(f, "{m}")?,
                (1, 1) => write!(f, "{var}")?,
                (1, _) => write!(f, "{var}^{e}")?,
                (m, 1) => write!(f, "{m}{var}")?,
                (m, _) => write!(f, "{m}{var}^{e}")?,
            }
        }
        Ok(())
    }

    pub fn display_with<'a>(&'a self, var: &'a str) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, var }
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Poly,
    var: &'a str,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt_with_var(f, self.var)
    }
}

/// One factor of a ring description: `Z/n` or `Z/n[var]/(relations)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingAtom {
    pub modulus: u64,
    pub var: Option<String>,
    pub relations: Vec<Poly>,
}

impl RingAtom {
    /// Index of the lowest-degree relation that is monic modulo `n`.
    pub fn monic_relation(&self) -> Option<usize> {
        let mut best: Option<(usize, usize)> = None;
        for (i, p) in self.relations.iter().enumerate() {
            let dense = p.dense_mod(self.modulus);
            if dense.last() == Some(&1) {
                let deg = dense.len() - 1;
                if best.is_none_or(|(_, d)| deg < d) {
                    best = Some((i, deg));
                }
            }
        }
        best.map(|(i, _)| i)
    }
}

impl fmt::Display for RingAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z/{}", self.modulus)?;
        if let Some(var) = &self.var {
            write!(f, "[{var}]/(")?;
            for (i, p) in self.relations.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                p.fmt_with_var(f, var)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// A finite product of ring atoms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingSpec {
    pub atoms: Vec<RingAtom>,
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.atoms.iter().enumerate() {
            if i > 0 {
                write!(f, " x ")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

// ===== Lexer =====

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(u64),
    Ident(String),
    Slash,
    LBracket,
    RBracket,
    LParen,
    RParen,
    Comma,
    Caret,
    Star,
    Plus,
    Minus,
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

fn lex(input: &str) -> Result<Lexer, ParseError> {
    let bytes = input.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let start = i;
        match b {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
            }
            b'0'..=b'9' => {
                let mut val: u64 = 0;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    val = val
                        .checked_mul(10)
                        .and_then(|v| v.checked_add(u64::from(bytes[i] - b'0')))
                        .ok_or(ParseError { pos: start, msg: "integer literal too large".into() })?;
                    i += 1;
                }
                toks.push((Tok::Int(val), start));
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                let mut j = i;
                while j < bytes.len() && (bytes[j].is_ascii_alphabetic() || bytes[j] == b'_') {
                    j += 1;
                }
                toks.push((Tok::Ident(input[i..j].to_string()), start));
                i = j;
            }
            b'/' => {
                toks.push((Tok::Slash, start));
                i += 1;
            }
            b'[' => {
                toks.push((Tok::LBracket, start));
                i += 1;
            }
            b']' => {
                toks.push((Tok::RBracket, start));
                i += 1;
            }
            b'(' => {
                toks.push((Tok::LParen, start));
                i += 1;
            }
            b')' => {
                toks.push((Tok::RParen, start));
                i += 1;
            }
            b',' => {
                toks.push((Tok::Comma, start));
                i += 1;
            }
            b'^' => {
                toks.push((Tok::Caret, start));
                i += 1;
            }
            b'*' => {
                toks.push((Tok::Star, start));
                i += 1;
            }
            b'+' => {
                toks.push((Tok::Plus, start));
                i += 1;
            }
            b'-' => {
                toks.push((Tok::Minus, start));
                i += 1;
            }
            _ => return err(start, format!("unexpected character {:?}", b as char)),
        }
    }
    Ok(Lexer { toks, pos: 0, end: input.len() })
}

impl Lexer {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |&(_, p)| p)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: &Tok, what: &str) -> Result<(), ParseError> {
        let pos = self.here();
        match self.next() {
            Some(ref t) if t == want => Ok(()),
            _ => err(pos, format!("expected {what}")),
        }
    }

    fn expect_int(&mut self, what: &str) -> Result<u64, ParseError> {
        let pos = self.here();
        match self.next() {
            Some(Tok::Int(v)) => Ok(v),
            _ => err(pos, format!("expected {what}")),
        }
    }

    fn expect_ident(&mut self, what: &str) -> Result<String, ParseError> {
        let pos = self.here();
        match self.next() {
            Some(Tok::Ident(s)) => Ok(s),
            _ => err(pos, format!("expected {what}")),
        }
    }
}

// ===== Parser =====

/// Parses a polynomial: sequence of signed terms over the variable `var`
/// (when `var` is `None`, any single identifier is accepted and returned).
fn parse_poly(lx: &mut Lexer, var: Option<&str>) -> Result<(Poly, Option<String>), ParseError> {
    let mut terms: Vec<(i64, u32)> = Vec::new();
    let mut seen_var: Option<String> = var.map(str::to_string);
    let mut first = true;
    loop {
        let mut sign: i64 = 1;
        match lx.peek() {
            Some(Tok::Plus) if !first => {
                lx.next();
            }
            Some(Tok::Minus) => {
                lx.next();
                sign = -1;
            }
            _ if first => {}
            _ => break,
        }
        // term := INT ["*"] [IDENT ["^" NAT]] | IDENT ["^" NAT]
        let pos = lx.here();
        let coeff: i64;
        let mut have_var = false;
        match lx.peek() {
            Some(Tok::Int(v)) => {
                let v = *v;
                lx.next();
                coeff = i64::try_from(v).map_err(|_| ParseError {
                    pos,
                    msg: "coefficient too large".into(),
                })?;
                if matches!(lx.peek(), Some(Tok::Star)) {
                    lx.next();
                    have_var = true; // explicit product requires a variable next
                } else if matches!(lx.peek(), Some(Tok::Ident(_))) {
                    have_var = true;
                }
            }
            Some(Tok::Ident(_)) => {
                coeff = 1;
                have_var = true;
            }
            _ => return err(pos, "expected term"),
        }
        let mut exp = 0u32;
        if have_var {
            let vpos = lx.here();
            let name = lx.expect_ident("variable")?;
            match &seen_var {
                Some(v) if *v != name => {
                    return err(vpos, format!("unknown variable '{name}' (expected '{v}')"));
                }
                Some(_) => {}
                None => seen_var = Some(name),
            }
            exp = 1;
            if matches!(lx.peek(), Some(Tok::Caret)) {
                lx.next();
                let e = lx.expect_int("exponent")?;
                exp = u32::try_from(e).map_err(|_| ParseError {
                    pos: vpos,
                    msg: "exponent too large".into(),
                })?;
            }
        }
        terms.push((sign * coeff, exp));
        first = false;
        match lx.peek() {
            Some(Tok::Plus) | Some(Tok::Minus) => {}
            _ => break,
        }
    }
    Ok((Poly::new(terms), seen_var))
}

fn parse_atom(lx: &mut Lexer) -> Result<RingAtom, ParseError> {
    let pos = lx.here();
    let head = lx.expect_ident("'Z'")?;
    if head != "Z" {
        return err(pos, "ring atom must start with 'Z/'");
    }
    lx.expect(&Tok::Slash, "'/'")?;
    let modulus = lx.expect_int("modulus")?;
    if modulus < 2 {
        return err(pos, format!("degenerate modulus {modulus} (must be at least 2)"));
    }
    if !matches!(lx.peek(), Some(Tok::LBracket)) {
        return Ok(RingAtom { modulus, var: None, relations: Vec::new() });
    }
    lx.next();
    let var = lx.expect_ident("variable name")?;
    lx.expect(&Tok::RBracket, "']'")?;
    lx.expect(&Tok::Slash, "'/'")?;
    lx.expect(&Tok::LParen, "'('")?;
    let mut relations = Vec::new();
    loop {
        let (p, _) = parse_poly(lx, Some(&var))?;
        relations.push(p);
        match lx.peek() {
            Some(Tok::Comma) => {
                lx.next();
            }
            _ => break,
        }
    }
    lx.expect(&Tok::RParen, "')'")?;
    let atom = RingAtom { modulus, var: Some(var), relations };
    if atom.monic_relation().is_none() {
        return err(
            pos,
            format!(
                "presentation of {atom} has no relation monic modulo {modulus}; \
                 the quotient would be infinite"
            ),
        );
    }
    Ok(atom)
}

/// Parses a full ring description.
pub fn parse_ringspec(input: &str) -> Result<RingSpec, ParseError> {
    let mut lx = lex(input)?;
    if lx.peek().is_none() {
        return err(0, "empty ring description");
    }
    let mut atoms = vec![parse_atom(&mut lx)?];
    loop {
        match lx.peek() {
            None => break,
            Some(Tok::Ident(s)) if s == "x" => {
                lx.next();
                atoms.push(parse_atom(&mut lx)?);
            }
            _ => return err(lx.here(), "expected ' x ' between ring atoms or end of input"),
        }
    }
    Ok(RingSpec { atoms })
}

/// A generator literal for an ideal: one expression per ring atom.
/// Atom rings take a bare polynomial; product rings take a parenthesized
/// tuple with one entry per factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementExpr {
    pub components: Vec<Poly>,
}

/// Parses a comma-separated list of generator literals for the given spec.
///
/// For a single-atom ring each literal is a polynomial in the atom's
/// variable; for a product ring each literal is a tuple `(p1, ..., pk)`.
pub fn parse_generators(input: &str, spec: &RingSpec) -> Result<Vec<ElementExpr>, ParseError> {
    let mut lx = lex(input)?;
    if lx.peek().is_none() {
        return err(0, "empty generator list");
    }
    let mut out = Vec::new();
    loop {
        out.push(parse_element(&mut lx, spec)?);
        match lx.peek() {
            Some(Tok::Comma) => {
                lx.next();
            }
            None => break,
            _ => return err(lx.here(), "expected ',' between generators or end of input"),
        }
    }
    Ok(out)
}

fn parse_element(lx: &mut Lexer, spec: &RingSpec) -> Result<ElementExpr, ParseError> {
    let k = spec.atoms.len();
    if k == 1 {
        let var = spec.atoms[0].var.as_deref();
        let (p, _) = parse_poly(lx, var)?;
        return Ok(ElementExpr { components: vec![p] });
    }
    let pos = lx.here();
    lx.expect(&Tok::LParen, "'(' starting a product-ring element tuple")?;
    let mut components = Vec::new();
    for i in 0..k {
        if i > 0 {
            lx.expect(&Tok::Comma, "',' inside element tuple")?;
        }
        let var = spec.atoms[i].var.as_deref();
        let (p, _) = parse_poly(lx, var)?;
        components.push(p);
    }
    lx.expect(&Tok::RParen, "')' closing element tuple")?;
    if components.len() != k {
        return err(pos, format!("expected {k} tuple components"));
    }
    Ok(ElementExpr { components })
}

/// Parses one element of a quadratic order, written over the symbol `w`
/// (for example `3+w`, `2-5w`, `4`, `3+2*w`). Higher powers of `w` are
/// rejected; the caller owns the reduction rules.
pub fn parse_quad_element(input: &str) -> Result<(i128, i128), ParseError> {
    let mut lx = lex(input)?;
    let (p, var) = parse_poly(&mut lx, None)?;
    if let Some(extra) = lx.peek() {
        return err(lx.here(), format!("unexpected trailing input {extra:?}"));
    }
    if let Some(v) = var {
        if v != "w" {
            return err(0, format!("unknown symbol '{v}' (use 'w' for the quadratic generator)"));
        }
    }
    let mut x: i128 = 0;
    let mut y: i128 = 0;
    for &(c, e) in p.terms() {
        match e {
            0 => x += i128::from(c),
            1 => y += i128::from(c),
            _ => return err(0, "powers of 'w' above 1 are not allowed; reduce by hand"),
        }
    }
    Ok((x, y))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plain_modular_ring() {
        let spec = parse_ringspec("Z/8").unwrap();
        assert_eq!(spec.atoms.len(), 1);
        assert_eq!(spec.atoms[0].modulus, 8);
        assert_eq!(spec.atoms[0].var, None);
        assert_eq!(spec.to_string(), "Z/8");
    }

    #[test]
    fn presentation_with_two_relations() {
        let spec = parse_ringspec("Z/8[x]/(x^2, 2x)").unwrap();
        let atom = &spec.atoms[0];
        assert_eq!(atom.modulus, 8);
        assert_eq!(atom.var.as_deref(), Some("x"));
        assert_eq!(atom.relations.len(), 2);
        assert_eq!(spec.to_string(), "Z/8[x]/(x^2,2x)");
        assert_eq!(atom.monic_relation(), Some(0));
    }

    #[test]
    fn whitespace_and_explicit_star_are_tolerated() {
        let a = parse_ringspec("Z/9[t]/(t^3+2*t+1)").unwrap();
        let b = parse_ringspec("  Z/9 [ t ] / ( t^3 + 2t + 1 )").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn products_split_on_the_x_separator() {
        let spec = parse_ringspec("Z/4 x Z/9[x]/(x^2)").unwrap();
        assert_eq!(spec.atoms.len(), 2);
        assert_eq!(spec.to_string(), "Z/4 x Z/9[x]/(x^2)");
    }

    #[test]
    fn degenerate_modulus_is_rejected() {
        let e = parse_ringspec("Z/1").unwrap_err();
        assert!(e.msg.contains("degenerate modulus"), "{e}");
        assert!(parse_ringspec("Z/0").is_err());
    }

    #[test]
    fn presentations_without_a_monic_relation_are_rejected() {
        let e = parse_ringspec("Z/4[x]/(2x)").unwrap_err();
        assert!(e.msg.contains("monic"), "{e}");
        // 3x^2 is monic mod 2 (3 = 1), so this one is fine.
        assert!(parse_ringspec("Z/2[x]/(3x^2)").is_ok());
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let e = parse_ringspec("Z/8[x]/(x^2,,)").unwrap_err();
        assert_eq!(e.pos, 12);
        let e = parse_ringspec("Q/8").unwrap_err();
        assert_eq!(e.pos, 0);
    }

    #[test]
    fn unknown_variables_are_rejected() {
        let e = parse_ringspec("Z/8[x]/(y^2)").unwrap_err();
        assert!(e.msg.contains("unknown variable"), "{e}");
    }

    #[test]
    fn polynomial_normalization_merges_and_drops_terms() {
        let p = Poly::new(vec![(2, 1), (3, 0), (-2, 1), (1, 2)]);
        assert_eq!(p.terms(), &[(1, 2), (3, 0)]);
        assert_eq!(p.to_string(), "x^2+3");
        let q = Poly::new(vec![(5, 3), (-5, 3)]);
        assert!(q.is_zero());
        assert_eq!(q.to_string(), "0");
    }

    #[test]
    fn dense_reduction_trims_vanishing_lead() {
        // 2x^2 + x mod 2 has effective degree 1 and is monic.
        let p = Poly::new(vec![(2, 2), (1, 1)]);
        assert_eq!(p.dense_mod(2), vec![0, 1]);
        assert!(p.is_monic_mod(2));
        assert!(!p.is_monic_mod(4));
    }

    #[test]
    fn generator_lists_for_atoms_and_products() {
        let spec = parse_ringspec("Z/8[x]/(x^2,2x)").unwrap();
        let gens = parse_generators("2, x", &spec).unwrap();
        assert_eq!(gens.len(), 2);
        assert_eq!(gens[0].components[0], Poly::constant(2));

        let prod = parse_ringspec("Z/4 x Z/9").unwrap();
        let gens = parse_generators("(2, 0), (0, 3)", &prod).unwrap();
        assert_eq!(gens.len(), 2);
        assert_eq!(gens[1].components[1], Poly::constant(3));
    }

    #[test]
    fn quad_elements_accept_the_w_shorthand() {
        assert_eq!(parse_quad_element("3+w").unwrap(), (3, 1));
        assert_eq!(parse_quad_element("2-5w").unwrap(), (2, -5));
        assert_eq!(parse_quad_element("4").unwrap(), (4, 0));
        assert_eq!(parse_quad_element("3+2*w").unwrap(), (3, 2));
        assert_eq!(parse_quad_element("-w").unwrap(), (0, -1));
        assert!(parse_quad_element("w^2").is_err());
        assert!(parse_quad_element("3+q").is_err());
    }

    #[test]
    fn display_round_trips() {
        for s in ["Z/8", "Z/8[x]/(x^2,2x)", "Z/4 x Z/9[t]/(t^3+2t+8)", "Z/7[y]/(y^2-3y+1,0)"] {
            let spec = parse_ringspec(s).unwrap();
            let printed = spec.to_string();
            assert_eq!(parse_ringspec(&printed).unwrap(), spec);
        }
    }
}
