//! Canonical text for presentation files, and export of in-memory objects.

use super::parser::{ChainDecl, ChainEntry, DglDecl, DglEntry, Item, MapDecl, PresentationFile, Rows};
use crate::chaincx::{FreeChainComplex, GradedMap};
use crate::lie::FreeDGL;
use crate::ring::{fmt_scalar, Ring};
use std::fmt::Write;

fn ring_text(r: Ring) -> String {
    match r {
        Ring::Integers => "Z".into(),
        Ring::Rationals => "Q".into(),
        Ring::PrimeField(p) => format!("F {p}"),
    }
}

fn matrix_text(m: &Rows) -> String {
    let rows: Vec<String> = m.iter().map(|r| r.iter().map(fmt_scalar).collect::<Vec<_>>().join(", ")).collect();
    format!("[{}]", rows.join("; "))
}

pub fn print_item(item: &Item) -> String {
    let mut s = String::new();
    match item {
        Item::Dgl(d) => {
            writeln!(s, "dgl {} {{", d.name).unwrap();
            for e in &d.entries {
                match e {
                    DglEntry::Gen { name, degree } => writeln!(s, "  gen {name} : {degree};"),
                    DglEntry::Diff { name, expr } => writeln!(s, "  d {name} = {expr};"),
                    DglEntry::Truncate(t) => writeln!(s, "  truncate {t};"),
                }
                .unwrap();
            }
        }
        Item::Chain(c) => {
            writeln!(s, "chain {} over {} {{", c.name, ring_text(c.ring)).unwrap();
            for e in &c.entries {
                match e {
                    ChainEntry::Rank { degree, rank } => writeln!(s, "  deg {degree} rank {rank};"),
                    ChainEntry::Boundary { degree, matrix } => writeln!(s, "  boundary {degree} = {};", matrix_text(matrix)),
                }
                .unwrap();
            }
        }
        Item::Map(m) => {
            write!(s, "map {} : {} -> {}", m.name, m.source, m.target).unwrap();
            if let Some(k) = m.shift {
                write!(s, " shift {k}").unwrap();
            }
            writeln!(s, " {{").unwrap();
            for (n, rows) in &m.components {
                writeln!(s, "  deg {n} = {};", matrix_text(rows)).unwrap();
            }
        }
    }
    s.push_str("}\n");
    s
}

pub fn print(file: &PresentationFile) -> String {
    file.items.iter().map(print_item).collect::<Vec<_>>().join("\n")
}

pub fn export_dgl(d: &FreeDGL) -> DglDecl {
    let mut entries: Vec<DglEntry> =
        d.generators().iter().map(|g| DglEntry::Gen { name: g.name.clone(), degree: g.degree }).collect();
    for g in d.generators() {
        let e = d.declared_differential(&g.name).expect("declared generator");
        if !e.is_empty() {
            entries.push(DglEntry::Diff { name: g.name.clone(), expr: e.clone() });
        }
    }
    entries.push(DglEntry::Truncate(d.truncation()));
    DglDecl { name: d.name().to_string(), entries }
}

fn rows_of(m: &crate::matrix::Matrix) -> Rows {
    (0..m.rows()).map(|r| m.row(r)).collect()
}

pub fn export_chain(name: &str, c: &FreeChainComplex) -> ChainDecl {
    let mut entries: Vec<ChainEntry> =
        c.degrees().iter().map(|&n| ChainEntry::Rank { degree: n, rank: c.rank(n) }).collect();
    for &n in &c.degrees() {
        let b = c.boundary(n);
        if b.rows() > 0 && b.cols() > 0 && !b.is_zero() {
            entries.push(ChainEntry::Boundary { degree: n, matrix: rows_of(&b) });
        }
    }
    ChainDecl { name: name.to_string(), ring: c.ring(), entries }
}

pub fn export_map(name: &str, source: &str, target: &str, m: &GradedMap) -> MapDecl {
    let components = m
        .components()
        .iter()
        .filter(|(_, x)| x.rows() > 0 && x.cols() > 0)
        .map(|(&n, x)| (n, rows_of(x)))
        .collect();
    let shift = (m.shift() != 0).then_some(m.shift());
    MapDecl { name: name.to_string(), source: source.to_string(), target: target.to_string(), shift, components }
}

#[cfg(test)]
mod tests {
    use super::super::parser::parse;
    use super::*;
    use crate::examples::build_rational_pair;

    #[test]
    fn rational_pair_round_trips() {
        let p = build_rational_pair(2).unwrap();
        let file = PresentationFile { items: vec![Item::Dgl(export_dgl(&p.a)), Item::Dgl(export_dgl(&p.b))] };
        let text = print(&file);
        assert!(text.contains("d w = [a, x] + [b, y] + [c, z];"), "{text}");
        let back = parse(&text).unwrap();
        assert_eq!(back, file);
        assert_eq!(print(&back), text);
    }

    #[test]
    fn printing_is_idempotent() {
        let src = "chain C over F2{deg 0 rank 2;deg 1 rank 1;boundary 1=[1;1];}\n\
                   map f:C->C shift 1{deg 0=[1,0];}";
        let once = print(&parse(src).unwrap());
        assert_eq!(print(&parse(&once).unwrap()), once);
        assert!(once.contains("over F 2"));
    }
}
