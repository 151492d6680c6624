//! Presentation files: syntax tree, recursive-descent parser and semantic
//! checks. Every failure carries a line:col location.

use super::lexer::{error_at, tokenize, Pos, Tok, Token};
use crate::error::{Error, ParseErrorKind, Result};
use crate::lie::{Factor, LieExpr};
use crate::ring::{Ring, Scalar};
use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PresentationFile {
    pub items: Vec<Item>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Item {
    Dgl(DglDecl),
    Chain(ChainDecl),
    Map(MapDecl),
}

impl Item {
    pub fn name(&self) -> &str {
        match self {
            Item::Dgl(d) => &d.name,
            Item::Chain(c) => &c.name,
            Item::Map(m) => &m.name,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DglEntry {
    Gen { name: String, degree: i64 },
    Diff { name: String, expr: LieExpr },
    Truncate(i64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DglDecl {
    pub name: String,
    pub entries: Vec<DglEntry>,
}

pub type Rows = Vec<Vec<Scalar>>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChainEntry {
    Rank { degree: i64, rank: usize },
    Boundary { degree: i64, matrix: Rows },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainDecl {
    pub name: String,
    pub ring: Ring,
    pub entries: Vec<ChainEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapDecl {
    pub name: String,
    pub source: String,
    pub target: String,
    pub shift: Option<i64>,
    pub components: Vec<(i64, Rows)>,
}

impl DglDecl {
    pub fn generators(&self) -> Vec<(String, i64)> {
        self.entries
            .iter()
            .filter_map(|e| match e {
                DglEntry::Gen { name, degree } => Some((name.clone(), *degree)),
                _ => None,
            })
            .collect()
    }

    /// Declared truncation, or twice the largest generator degree.
    pub fn truncation(&self) -> i64 {
        self.entries
            .iter()
            .find_map(|e| match e {
                DglEntry::Truncate(t) => Some(*t),
                _ => None,
            })
            .unwrap_or_else(|| 2 * self.generators().iter().map(|g| g.1).max().unwrap_or(1))
    }
}

impl ChainDecl {
    pub fn ranks(&self) -> BTreeMap<i64, usize> {
        self.entries
            .iter()
            .filter_map(|e| match e {
                ChainEntry::Rank { degree, rank } => Some((*degree, *rank)),
                _ => None,
            })
            .collect()
    }
}

const KEYWORDS: [&str; 11] = ["dgl", "gen", "d", "truncate", "chain", "over", "deg", "rank", "boundary", "map", "shift"];

pub fn is_identifier(s: &str) -> bool {
    let mut cs = s.chars();
    cs.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_') && cs.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

struct MapRefs {
    pos: Pos,
    source: Pos,
    target: Pos,
    components: Vec<Pos>,
}

struct Parser {
    toks: Vec<Token>,
    at: usize,
    leaves: Vec<(String, Pos)>,
}

fn syntax(pos: Pos, msg: impl Into<String>) -> Error {
    error_at(ParseErrorKind::Syntax, pos, msg)
}

fn semantic(pos: Pos, msg: impl Into<String>) -> Error {
    error_at(ParseErrorKind::Semantic, pos, msg)
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.at]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.at].clone();
        if t.tok != Tok::Eof {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, context: &str) -> Result<Pos> {
        let t = self.next();
        if t.tok == want {
            Ok(t.pos)
        } else {
            Err(syntax(t.pos, format!("expected {} {context}, found {}", want.describe(), t.tok.describe())))
        }
    }

    fn ident(&mut self, what: &str) -> Result<(String, Pos)> {
        let t = self.next();
        match t.tok {
            Tok::Ident(s) => Ok((s, t.pos)),
            other => Err(syntax(t.pos, format!("expected {what}, found {}", other.describe()))),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<Pos> {
        let t = self.next();
        match &t.tok {
            Tok::Ident(s) if s == kw => Ok(t.pos),
            other => Err(syntax(t.pos, format!("expected `{kw}`, found {}", other.describe()))),
        }
    }

    fn uint(&mut self, what: &str) -> Result<(BigInt, Pos)> {
        let t = self.next();
        match t.tok {
            Tok::Int(s) => Ok((s.parse().expect("digits"), t.pos)),
            other => Err(syntax(t.pos, format!("expected {what}, found {}", other.describe()))),
        }
    }

    fn small(&mut self, what: &str, signed: bool) -> Result<(i64, Pos)> {
        let pos = self.peek().pos;
        let neg = signed && self.peek().tok == Tok::Minus;
        if neg {
            self.next();
        }
        let (v, _) = self.uint(what)?;
        let v: i64 = i64::try_from(v).map_err(|_| semantic(pos, format!("{what} out of range")))?;
        Ok((if neg { -v } else { v }, pos))
    }

    /// INT ("/" INT)?
    fn rational(&mut self) -> Result<Scalar> {
        let (n, _) = self.uint("a number")?;
        if self.peek().tok == Tok::Slash {
            self.next();
            let (d, pos) = self.uint("a denominator")?;
            if d.is_zero() {
                return Err(semantic(pos, "zero denominator"));
            }
            return Ok(Scalar::new(n, d));
        }
        Ok(Scalar::from_integer(n))
    }

    fn scalar(&mut self) -> Result<Scalar> {
        let neg = self.peek().tok == Tok::Minus;
        if neg {
            self.next();
        }
        let x = self.rational()?;
        Ok(if neg { -x } else { x })
    }

    fn lie(&mut self) -> Result<LieExpr> {
        let mut out = LieExpr::zero();
        let mut sign = match self.peek().tok {
            Tok::Minus => {
                self.next();
                -1
            }
            Tok::Plus => {
                self.next();
                1
            }
            _ => 1,
        };
        loop {
            let term = self.term()?;
            for (c, f) in term.terms {
                let c = if sign < 0 { -c } else { c };
                if !c.is_zero() {
                    out.terms.push((c, f));
                }
            }
            sign = match self.peek().tok {
                Tok::Plus => 1,
                Tok::Minus => -1,
                _ => return Ok(out),
            };
            self.next();
        }
    }

    /// RAT? factor, with a bare `0` read as the zero factor.
    fn term(&mut self) -> Result<LieExpr> {
        let t = self.peek().clone();
        match t.tok {
            Tok::Int(ref s) => {
                let bare_zero = s.chars().all(|c| c == '0') && self.toks[self.at + 1].tok != Tok::Slash;
                let c = self.rational()?;
                match self.peek().tok {
                    Tok::Ident(_) | Tok::LBracket | Tok::Int(_) => Ok(self.factor()?.scale(&c)),
                    _ if bare_zero => Ok(LieExpr::zero()),
                    ref other => Err(syntax(self.peek().pos, format!("expected a generator or bracket after the coefficient, found {}", other.describe()))),
                }
            }
            _ => self.factor(),
        }
    }

    fn factor(&mut self) -> Result<LieExpr> {
        let t = self.next();
        match t.tok {
            Tok::Ident(s) => {
                self.leaves.push((s.clone(), t.pos));
                Ok(LieExpr::gen(&s))
            }
            Tok::Int(s) if s.chars().all(|c| c == '0') => Ok(LieExpr::zero()),
            Tok::LBracket => {
                let a = self.lie()?;
                self.expect(Tok::Comma, "between bracket entries")
                    .map_err(|_| syntax(t.pos, "unclosed bracket: expected `,` and a second entry"))?;
                let b = self.lie()?;
                let close = self.next();
                if close.tok != Tok::RBracket {
                    return Err(syntax(t.pos, format!("unclosed bracket: found {} at {}:{}", close.tok.describe(), close.pos.line, close.pos.col)));
                }
                Ok(LieExpr { terms: vec![(Scalar::from_integer(1.into()), Factor::Bracket(Box::new(a), Box::new(b)))] })
            }
            other => Err(syntax(t.pos, format!("expected a generator, a bracket or 0, found {}", other.describe()))),
        }
    }

    fn matrix(&mut self) -> Result<(Rows, Pos)> {
        let pos = self.expect(Tok::LBracket, "to open a matrix")?;
        let mut rows = vec![vec![self.scalar()?]];
        loop {
            let t = self.next();
            match t.tok {
                Tok::Comma => rows.last_mut().unwrap().push(self.scalar()?),
                Tok::Semi => rows.push(vec![self.scalar()?]),
                Tok::RBracket => break,
                other => return Err(syntax(t.pos, format!("expected `,`, `;` or `]` in matrix, found {}", other.describe()))),
            }
        }
        if rows.iter().any(|r| r.len() != rows[0].len()) {
            return Err(semantic(pos, "matrix rows have different lengths"));
        }
        Ok((rows, pos))
    }

    fn dgl(&mut self) -> Result<DglDecl> {
        let (name, _) = self.ident("a DGL name")?;
        self.expect(Tok::LBrace, "after the DGL name")?;
        let mut entries = Vec::new();
        let mut gens: BTreeMap<String, i64> = BTreeMap::new();
        let mut diffs: Vec<(String, Pos, LieExpr, Vec<(String, Pos)>)> = Vec::new();
        let mut truncated = false;
        loop {
            let t = self.next();
            let kw = match &t.tok {
                Tok::RBrace => break,
                Tok::Ident(s) => s.clone(),
                other => return Err(syntax(t.pos, format!("expected `gen`, `d`, `truncate` or `}}`, found {}", other.describe()))),
            };
            match kw.as_str() {
                "gen" => {
                    let (g, gp) = self.ident("a generator name")?;
                    self.expect(Tok::Colon, "after the generator name")?;
                    let (deg, dp) = self.small("a degree", true)?;
                    if gens.contains_key(&g) {
                        return Err(semantic(gp, format!("generator `{g}` declared twice")));
                    }
                    if deg < 1 {
                        return Err(semantic(dp, format!("degree mismatch: generator `{g}` has degree {deg} < 1")));
                    }
                    gens.insert(g.clone(), deg);
                    entries.push(DglEntry::Gen { name: g, degree: deg });
                }
                "d" => {
                    let (g, gp) = self.ident("a generator name")?;
                    self.expect(Tok::Eq, "after `d <generator>`")?;
                    self.leaves.clear();
                    let expr = self.lie()?;
                    let leaves = std::mem::take(&mut self.leaves);
                    if diffs.iter().any(|d| d.0 == g) {
                        return Err(semantic(gp, format!("differential of `{g}` given twice")));
                    }
                    diffs.push((g.clone(), gp, expr.clone(), leaves));
                    entries.push(DglEntry::Diff { name: g, expr });
                }
                "truncate" => {
                    let (n, p) = self.small("a truncation degree", false)?;
                    if truncated {
                        return Err(semantic(p, "truncation given twice"));
                    }
                    truncated = true;
                    entries.push(DglEntry::Truncate(n));
                }
                other => return Err(syntax(t.pos, format!("expected `gen`, `d`, `truncate` or `}}`, found identifier `{other}`"))),
            }
            self.expect(Tok::Semi, "to end the entry")?;
        }
        for (g, gp, expr, leaves) in &diffs {
            let Some(&deg) = gens.get(g) else {
                return Err(semantic(*gp, format!("undeclared generator `{g}`")));
            };
            for (leaf, lp) in leaves {
                if !gens.contains_key(leaf) {
                    return Err(semantic(*lp, format!("undeclared generator `{leaf}`")));
                }
            }
            for (_, f) in &expr.terms {
                let d = factor_degree(f, &gens);
                if d != deg - 1 {
                    return Err(semantic(*gp, format!("degree mismatch: d {g} must have degree {}, found a term of degree {d}", deg - 1)));
                }
            }
        }
        Ok(DglDecl { name, entries })
    }

    fn chain(&mut self) -> Result<ChainDecl> {
        let (name, _) = self.ident("a chain complex name")?;
        self.keyword("over")?;
        let (r, rp) = self.ident("a ring (Z, Q or F p)")?;
        let ring = match r.as_str() {
            "Z" => Ring::Integers,
            "Q" => Ring::Rationals,
            "F" => Ring::PrimeField(self.prime()?),
            s if s.starts_with('F') && s[1..].chars().all(|c| c.is_ascii_digit()) && s.len() > 1 => {
                let p: u64 = s[1..].parse().map_err(|_| semantic(rp, "characteristic out of range"))?;
                check_prime(p, rp)?;
                Ring::PrimeField(p)
            }
            other => return Err(syntax(rp, format!("expected a ring (Z, Q or F p), found identifier `{other}`"))),
        };
        self.expect(Tok::LBrace, "to open the chain complex")?;
        let mut entries = Vec::new();
        let mut ranks = BTreeMap::new();
        let mut bds: Vec<(i64, Pos, Rows)> = Vec::new();
        loop {
            let t = self.next();
            match &t.tok {
                Tok::RBrace => break,
                Tok::Ident(s) if s == "deg" => {
                    let (n, np) = self.small("a degree", true)?;
                    self.keyword("rank")?;
                    let (r, rp) = self.small("a rank", false)?;
                    if ranks.insert(n, r as usize).is_some() {
                        return Err(semantic(np, format!("rank of degree {n} given twice")));
                    }
                    if r > 10_000 {
                        return Err(semantic(rp, "rank too large"));
                    }
                    entries.push(ChainEntry::Rank { degree: n, rank: r as usize });
                }
                Tok::Ident(s) if s == "boundary" => {
                    let (n, np) = self.small("a degree", true)?;
                    self.expect(Tok::Eq, "after `boundary <degree>`")?;
                    let (m, mp) = self.matrix()?;
                    if bds.iter().any(|b| b.0 == n) {
                        return Err(semantic(np, format!("boundary of degree {n} given twice")));
                    }
                    check_entries(&m, ring, mp)?;
                    bds.push((n, mp, m.clone()));
                    entries.push(ChainEntry::Boundary { degree: n, matrix: m });
                }
                other => return Err(syntax(t.pos, format!("expected `deg`, `boundary` or `}}`, found {}", other.describe()))),
            }
            self.expect(Tok::Semi, "to end the entry")?;
        }
        for (n, mp, m) in &bds {
            let want = (ranks.get(&(n - 1)).copied().unwrap_or(0), ranks.get(n).copied().unwrap_or(0));
            if (m.len(), m[0].len()) != want {
                return Err(semantic(*mp, format!("boundary {n} must be {}x{}, found {}x{}", want.0, want.1, m.len(), m[0].len())));
            }
        }
        Ok(ChainDecl { name, ring, entries })
    }

    fn prime(&mut self) -> Result<u64> {
        let (p, pos) = self.uint("a prime")?;
        let p = u64::try_from(p).map_err(|_| semantic(pos, "characteristic out of range"))?;
        check_prime(p, pos)?;
        Ok(p)
    }

    fn map(&mut self) -> Result<(MapDecl, MapRefs)> {
        let (name, pos) = self.ident("a map name")?;
        self.expect(Tok::Colon, "after the map name")?;
        let (source, sp) = self.ident("a source complex")?;
        self.expect(Tok::Arrow, "between source and target")?;
        let (target, tp) = self.ident("a target complex")?;
        let shift = if matches!(&self.peek().tok, Tok::Ident(s) if s == "shift") {
            self.next();
            Some(self.small("a shift", true)?.0)
        } else {
            None
        };
        self.expect(Tok::LBrace, "to open the map")?;
        let mut components: Vec<(i64, Rows)> = Vec::new();
        let mut cps = Vec::new();
        loop {
            let t = self.next();
            match &t.tok {
                Tok::RBrace => break,
                Tok::Ident(s) if s == "deg" => {
                    let (n, np) = self.small("a degree", true)?;
                    self.expect(Tok::Eq, "after `deg <degree>`")?;
                    let (m, mp) = self.matrix()?;
                    if components.iter().any(|c| c.0 == n) {
                        return Err(semantic(np, format!("component of degree {n} given twice")));
                    }
                    components.push((n, m));
                    cps.push(mp);
                }
                other => return Err(syntax(t.pos, format!("expected `deg` or `}}`, found {}", other.describe()))),
            }
            self.expect(Tok::Semi, "to end the entry")?;
        }
        Ok((MapDecl { name, source, target, shift, components }, MapRefs { pos, source: sp, target: tp, components: cps }))
    }
}

fn check_prime(p: u64, pos: Pos) -> Result<()> {
    let prime = p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d));
    if !prime {
        return Err(semantic(pos, format!("F {p}: the characteristic must be prime")));
    }
    Ok(())
}

fn check_entries(m: &Rows, ring: Ring, pos: Pos) -> Result<()> {
    if m.iter().flatten().any(|x| ring.try_coerce(x).is_none()) {
        return Err(semantic(pos, format!("matrix entry outside {ring}")));
    }
    Ok(())
}

fn factor_degree(f: &Factor, gens: &BTreeMap<String, i64>) -> i64 {
    match f {
        Factor::Gen(g) => gens[g],
        Factor::Bracket(a, b) => expr_degree(a, gens) + expr_degree(b, gens),
    }
}

/// Degree of an expression, taken from its first term; the zero expression
/// counts as degree 0 inside brackets.
fn expr_degree(e: &LieExpr, gens: &BTreeMap<String, i64>) -> i64 {
    e.terms.first().map(|(_, f)| factor_degree(f, gens)).unwrap_or(0)
}

pub fn parse(text: &str) -> Result<PresentationFile> {
    let mut p = Parser { toks: tokenize(text)?, at: 0, leaves: Vec::new() };
    let mut items = Vec::new();
    let mut names: BTreeSet<String> = BTreeSet::new();
    let mut maps = Vec::new();
    loop {
        let t = p.next();
        let kw = match &t.tok {
            Tok::Eof => break,
            Tok::Ident(s) if ["dgl", "chain", "map"].contains(&s.as_str()) => s.clone(),
            other => return Err(syntax(t.pos, format!("expected `dgl`, `chain` or `map`, found {}", other.describe()))),
        };
        let name_pos = p.peek().pos;
        let item = match kw.as_str() {
            "dgl" => Item::Dgl(p.dgl()?),
            "chain" => Item::Chain(p.chain()?),
            _ => {
                let (m, refs) = p.map()?;
                maps.push((items.len(), refs));
                Item::Map(m)
            }
        };
        if !names.insert(item.name().to_string()) {
            return Err(semantic(name_pos, format!("identifier `{}` declared twice", item.name())));
        }
        items.push(item);
    }
    for (idx, refs) in maps {
        let Item::Map(m) = &items[idx] else { unreachable!() };
        let find = |n: &str, pos: Pos| -> Result<&ChainDecl> {
            items
                .iter()
                .find_map(|i| match i {
                    Item::Chain(c) if c.name == n => Some(c),
                    _ => None,
                })
                .ok_or_else(|| semantic(pos, format!("`{n}` is not a declared chain complex")))
        };
        let src = find(&m.source, refs.source)?;
        let tgt = find(&m.target, refs.target)?;
        if src.ring != tgt.ring {
            return Err(semantic(refs.pos, format!("map `{}` joins complexes over {} and {}", m.name, src.ring, tgt.ring)));
        }
        let (rs, rt) = (src.ranks(), tgt.ranks());
        let shift = m.shift.unwrap_or(0);
        for ((n, rows), pos) in m.components.iter().zip(&refs.components) {
            let want = (rt.get(&(n + shift)).copied().unwrap_or(0), rs.get(n).copied().unwrap_or(0));
            if (rows.len(), rows[0].len()) != want {
                return Err(semantic(*pos, format!("component {n} of `{}` must be {}x{}, found {}x{}", m.name, want.0, want.1, rows.len(), rows[0].len())));
            }
            check_entries(rows, src.ring, *pos)?;
        }
    }
    Ok(PresentationFile { items })
}

/// A single Lie expression, such as a command-line class.
pub fn parse_expr(text: &str) -> Result<LieExpr> {
    let mut p = Parser { toks: tokenize(text)?, at: 0, leaves: Vec::new() };
    let e = p.lie()?;
    let t = p.next();
    if t.tok != Tok::Eof {
        return Err(syntax(t.pos, format!("unexpected {} after the expression", t.tok.describe())));
    }
    Ok(e)
}

/// Whether a name can be printed without clashing with the grammar.
pub fn printable_name(s: &str) -> bool {
    is_identifier(s) && !KEYWORDS.contains(&s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_generator_dgl() {
        let f = parse("dgl A { gen a : 2; d a = 0; truncate 8; }").unwrap();
        let Item::Dgl(d) = &f.items[0] else { panic!() };
        assert_eq!(d.generators(), vec![("a".to_string(), 2)]);
        assert_eq!(d.truncation(), 8);
        assert_eq!(d.entries[1], DglEntry::Diff { name: "a".into(), expr: LieExpr::zero() });
    }

    #[test]
    fn unclosed_bracket_is_located() {
        let e = parse("dgl A { gen a : 2; gen b : 2; gen x : 5; d x = [a, b").unwrap_err();
        assert_eq!(e.code(), "E_SYNTAX");
        let Error::Parse { line, col, message, .. } = e else { panic!() };
        assert_eq!((line, col), (1, 48));
        assert!(message.contains("unclosed"), "{message}");
    }

    #[test]
    fn semantic_errors_have_their_own_code() {
        let undeclared = parse("dgl A { gen x : 3; d x = [a, a]; }").unwrap_err();
        assert_eq!(undeclared.code(), "E_SEMANTIC");
        assert!(matches!(undeclared, Error::Parse { col: 27, .. }));
        let degree = parse("dgl A { gen a : 2; gen x : 4; d x = [a, a]; }").unwrap_err();
        assert!(degree.to_string().contains("degree mismatch"), "{degree}");
        let shape = parse("chain C over Z { deg 0 rank 1; deg 1 rank 2; boundary 1 = [1]; }").unwrap_err();
        assert_eq!(shape.code(), "E_SEMANTIC");
        let ring = parse("chain C over F 4 { }").unwrap_err();
        assert_eq!(ring.code(), "E_SEMANTIC");
        let dangling = parse("map f : C -> D { }").unwrap_err();
        assert_eq!(dangling.code(), "E_SEMANTIC");
        assert_eq!(parse("chain C over Z { deg 0 rank 1; boundary 1 = [1/2]; deg 1 rank 1; }").unwrap_err().code(), "E_SEMANTIC");
    }

    #[test]
    fn coefficients_and_signs() {
        let f = parse("dgl A { gen a : 2; gen b : 2; gen u : 5; d u = -[a, b] + 1/2 [b, a] - 0; }").unwrap();
        let Item::Dgl(d) = &f.items[0] else { panic!() };
        let DglEntry::Diff { expr, .. } = &d.entries[3] else { panic!() };
        assert_eq!(expr.to_string(), "-[a, b] + 1/2 [b, a]");
    }

    #[test]
    fn chains_and_maps() {
        let src = "chain S over Z { deg 3 rank 1; }\n\
                   chain M over Z { deg 3 rank 1; deg 4 rank 1; boundary 4 = [2]; }\n\
                   map inc : S -> M { deg 3 = [1]; }\n\
                   map h : S -> M shift 1 { deg 3 = [-1]; }";
        let f = parse(src).unwrap();
        assert_eq!(f.items.len(), 4);
        let Item::Map(h) = &f.items[3] else { panic!() };
        assert_eq!(h.shift, Some(1));
    }
}
