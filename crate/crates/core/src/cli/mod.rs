//! The presentation language, command dispatch and JSON reports behind the
//! `todacalc` binary.

pub mod commands;
pub mod lexer;
pub mod parser;
pub mod printer;
pub mod report;

pub use commands::{dispatch, example_presentation, run_text, Command, ExampleName};
pub use parser::{parse, ChainDecl, ChainEntry, DglDecl, DglEntry, Item, MapDecl, PresentationFile};
pub use printer::{export_chain, export_dgl, export_map, print};
pub use report::{emit, Report, Status};

use crate::chaincx::{FreeChainComplex, GradedMap};
use crate::error::{Error, Result};
use crate::lie::{FreeDGL, Generator};
use crate::matrix::Matrix;
use std::collections::BTreeMap;
use std::sync::Arc;

/// The objects of a parsed file, built and ready for computation.
#[derive(Debug, Clone, Default)]
pub struct Workspace {
    pub dgls: BTreeMap<String, Arc<FreeDGL>>,
    pub chains: BTreeMap<String, Arc<FreeChainComplex>>,
    pub maps: BTreeMap<String, GradedMap>,
}

fn matrix(ring: crate::ring::Ring, rows: &parser::Rows) -> Matrix {
    let cols = rows.first().map_or(0, |r| r.len());
    Matrix::from_rows(ring, rows.len(), cols, rows.clone())
}

impl Workspace {
    pub fn build(file: &PresentationFile) -> Result<Self> {
        let mut ws = Workspace::default();
        for item in &file.items {
            match item {
                Item::Dgl(d) => {
                    let gens = d.generators().iter().map(|(n, k)| Generator::new(n, *k)).collect();
                    let mut dgl = FreeDGL::new(&d.name, gens, d.truncation())?;
                    for e in &d.entries {
                        if let DglEntry::Diff { name, expr } = e {
                            dgl.set_differential(name, expr.clone())?;
                        }
                    }
                    ws.dgls.insert(d.name.clone(), Arc::new(dgl));
                }
                Item::Chain(c) => {
                    let ranks: Vec<(i64, usize)> = c.ranks().into_iter().collect();
                    let mut cx = FreeChainComplex::with_ranks(c.ring, &ranks);
                    for e in &c.entries {
                        if let ChainEntry::Boundary { degree, matrix: rows } = e {
                            cx.set_boundary(*degree, matrix(c.ring, rows))?;
                        }
                    }
                    ws.chains.insert(c.name.clone(), Arc::new(cx));
                }
                Item::Map(_) => {}
            }
        }
        for item in &file.items {
            if let Item::Map(m) = item {
                let src = ws.chain(&m.source)?.clone();
                let tgt = ws.chain(&m.target)?.clone();
                let comps = m.components.iter().map(|(n, rows)| (*n, matrix(src.ring(), rows))).collect();
                ws.maps.insert(m.name.clone(), GradedMap::new(src, tgt, m.shift.unwrap_or(0), comps)?);
            }
        }
        Ok(ws)
    }

    pub fn dgl(&self, name: &str) -> Result<&Arc<FreeDGL>> {
        self.dgls.get(name).ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    pub fn chain(&self, name: &str) -> Result<&Arc<FreeChainComplex>> {
        self.chains.get(name).ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    pub fn map(&self, name: &str) -> Result<&GradedMap> {
        self.maps.get(name).ok_or_else(|| Error::UnknownName(name.to_string()))
    }
}
