//! JSON documents for lattices, correspondences, and games.
//!
//! Documents are the exchange format of the command-line tools and the
//! suite reports. Emission is canonical: element lists sorted, relations
//! reduced to sorted cover pairs, maps in key order. Canonical output
//! re-parses to an equal document, so reports can be diffed byte for byte.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::correspondence::{Correspondence, CorrespondenceError};
use crate::lattice::FiniteLattice;
use crate::poset::{OrderError, Poset};

#[derive(Debug, Error)]
pub enum DocError {
    #[error("cannot read `{path}`: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed document `{path}`: {source}")]
    Parse {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Correspondence(#[from] CorrespondenceError),
}

/// Lattice as elements plus order pairs. Any set of pairs whose
/// reflexive-transitive closure is a lattice order is accepted; emission
/// writes the sorted element list and the sorted cover pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeDoc {
    pub elements: Vec<String>,
    pub le: Vec<(String, String)>,
}

impl LatticeDoc {
    pub fn from_lattice(l: &FiniteLattice) -> LatticeDoc {
        let mut elements: Vec<String> = l.ids().to_vec();
        elements.sort();
        let mut le = Vec::new();
        for x in 0..l.len() {
            for y in 0..l.len() {
                if !l.lt(x, y) {
                    continue;
                }
                let covered = (0..l.len()).all(|z| !(l.lt(x, z) && l.lt(z, y)));
                if covered {
                    le.push((l.id(x).to_string(), l.id(y).to_string()));
                }
            }
        }
        le.sort();
        LatticeDoc { elements, le }
    }

    pub fn to_lattice(&self) -> Result<FiniteLattice, OrderError> {
        let poset = Poset::from_pairs(self.elements.clone(), &self.le)?;
        FiniteLattice::from_poset(poset)
    }
}

/// A lattice given inline or by a path to a lattice document. Paths are
/// resolved relative to the referencing document's directory.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LatticeRef {
    Path(String),
    Inline(LatticeDoc),
}

impl LatticeRef {
    pub fn resolve(&self, base_dir: Option<&Path>) -> Result<FiniteLattice, DocError> {
        match self {
            LatticeRef::Inline(doc) => Ok(doc.to_lattice()?),
            LatticeRef::Path(p) => {
                let mut path = PathBuf::from(p);
                if path.is_relative() {
                    if let Some(base) = base_dir {
                        path = base.join(path);
                    }
                }
                load_lattice(&path)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorrespondenceDoc {
    pub lattice: LatticeRef,
    pub map: BTreeMap<String, Vec<String>>,
}

impl CorrespondenceDoc {
    pub fn from_correspondence(f: &Correspondence) -> CorrespondenceDoc {
        let mut map = f.map_ids();
        for values in map.values_mut() {
            values.sort();
        }
        CorrespondenceDoc {
            lattice: LatticeRef::Inline(LatticeDoc::from_lattice(f.lattice())),
            map,
        }
    }

    pub fn to_correspondence(&self, base_dir: Option<&Path>) -> Result<Correspondence, DocError> {
        let lattice = std::sync::Arc::new(self.lattice.resolve(base_dir)?);
        Ok(Correspondence::new(lattice, &self.map)?)
    }
}

/// Game document. Payoff keys are feasible profiles written as the
/// comma-joined element tuple in player order; payoff values are canonical
/// rational literals, `p/q` or a bare integer `p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GameDoc {
    pub players: Vec<String>,
    pub strategies: BTreeMap<String, LatticeDoc>,
    pub feasible: Vec<Vec<String>>,
    pub payoffs: BTreeMap<String, BTreeMap<String, String>>,
}

fn read(path: &Path) -> Result<String, DocError> {
    fs::read_to_string(path).map_err(|source| DocError::Io { path: path.to_path_buf(), source })
}

fn parse<T: for<'de> Deserialize<'de>>(path: &Path, text: &str) -> Result<T, DocError> {
    serde_json::from_str(text).map_err(|source| DocError::Parse { path: path.to_path_buf(), source })
}

pub fn load_lattice_doc(path: &Path) -> Result<LatticeDoc, DocError> {
    parse(path, &read(path)?)
}

pub fn load_lattice(path: &Path) -> Result<FiniteLattice, DocError> {
    Ok(load_lattice_doc(path)?.to_lattice()?)
}

pub fn load_correspondence_doc(path: &Path) -> Result<CorrespondenceDoc, DocError> {
    parse(path, &read(path)?)
}

pub fn load_correspondence(path: &Path) -> Result<Correspondence, DocError> {
    load_correspondence_doc(path)?.to_correspondence(path.parent())
}

pub fn load_game_doc(path: &Path) -> Result<GameDoc, DocError> {
    parse(path, &read(path)?)
}

/// Canonical pretty JSON used by every report writer.
pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report types serialize infallibly")
}
