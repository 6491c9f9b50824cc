//! JSON file formats for groups, families, geometries and planes.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::geometry::{GeometryError, IncidenceGeometry};
use crate::group::{GroupError, GroupTable, Subgroup};
use crate::kantor::{KantorFamily, KantorType};
use crate::planes::AffinePlane;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    /// Malformed JSON or a field of the wrong shape; `pointer` locates it.
    #[error("{path}: at `{pointer}`: {message}")]
    Parse { path: PathBuf, pointer: String, message: String },
    #[error("{path}: at `{pointer}`: {source}")]
    Group { path: PathBuf, pointer: String, source: GroupError },
    #[error("{path}: at `{pointer}`: {source}")]
    Geometry { path: PathBuf, pointer: String, source: GeometryError },
}

impl IoError {
    /// The JSON path of the offending field, when known.
    pub fn pointer(&self) -> Option<&str> {
        match self {
            IoError::Read { .. } => None,
            IoError::Parse { pointer, .. } | IoError::Group { pointer, .. } | IoError::Geometry { pointer, .. } => {
                Some(pointer)
            }
        }
    }
}

/// Parses JSON text, reporting the path of the first offending field.
pub fn parse<T: DeserializeOwned>(path: &Path, text: &str) -> Result<T, IoError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| IoError::Parse {
        path: path.to_path_buf(),
        pointer: e.path().to_string(),
        message: e.inner().to_string(),
    })
}

pub fn read_text(path: &Path) -> Result<String, IoError> {
    fs::read_to_string(path).map_err(|source| IoError::Read { path: path.to_path_buf(), source })
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, IoError> {
    parse(path, &read_text(path)?)
}

/// Hex SHA-256 of a byte string.
pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupFile {
    pub name: String,
    pub order: usize,
    pub table: Vec<Vec<usize>>,
}

impl GroupFile {
    pub fn from_group(g: &GroupTable) -> Self {
        GroupFile { name: g.name().to_string(), order: g.order(), table: g.rows() }
    }

    pub fn to_group(&self, path: &Path, pointer: &str) -> Result<GroupTable, IoError> {
        let err = |source| IoError::Group { path: path.to_path_buf(), pointer: pointer.to_string(), source };
        if self.table.len() != self.order {
            return Err(err(GroupError::InvalidTable(format!(
                "order is {} but the table has {} rows",
                self.order,
                self.table.len()
            ))));
        }
        GroupTable::from_rows(self.name.clone(), &self.table).map_err(err)
    }
}

pub fn read_group(path: &Path) -> Result<GroupTable, IoError> {
    let f: GroupFile = read_json(path)?;
    f.to_group(path, "table")
}

/// A group given inline or as a path relative to the referring file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupRef {
    Path(String),
    Inline(GroupFile),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyFile {
    pub group: GroupRef,
    #[serde(rename = "type")]
    pub ktype: [usize; 2],
    #[serde(rename = "F")]
    pub f: Vec<Vec<usize>>,
    #[serde(rename = "Fstar")]
    pub fstar: Vec<Vec<usize>>,
}

impl FamilyFile {
    pub fn from_family(fam: &KantorFamily, group: GroupRef) -> Self {
        FamilyFile {
            group,
            ktype: [fam.ktype.u, fam.ktype.v],
            f: fam.f.iter().map(|a| a.to_vec()).collect(),
            fstar: fam.fstar.iter().map(|a| a.to_vec()).collect(),
        }
    }

    pub fn inline(fam: &KantorFamily) -> Self {
        Self::from_family(fam, GroupRef::Inline(GroupFile::from_group(&fam.group)))
    }

    /// Builds the family; the result is not verified.
    pub fn to_family(&self, path: &Path) -> Result<KantorFamily, IoError> {
        let g = match &self.group {
            GroupRef::Inline(gf) => gf.to_group(path, "group.table")?,
            GroupRef::Path(p) => {
                let base = path.parent().unwrap_or(Path::new("."));
                read_group(&base.join(p))?
            }
        };
        let g = Arc::new(g);
        let subs = |name: &str, lists: &[Vec<usize>]| -> Result<Vec<Subgroup>, IoError> {
            lists
                .iter()
                .enumerate()
                .map(|(i, l)| {
                    Subgroup::new(&g, l.iter().copied()).map_err(|source| IoError::Group {
                        path: path.to_path_buf(),
                        pointer: format!("{name}[{i}]"),
                        source,
                    })
                })
                .collect()
        };
        let f = subs("F", &self.f)?;
        let fstar = subs("Fstar", &self.fstar)?;
        Ok(KantorFamily::new(g.clone(), KantorType::new(self.ktype[0], self.ktype[1]), f, fstar))
    }
}

pub fn read_family(path: &Path) -> Result<KantorFamily, IoError> {
    let f: FamilyFile = read_json(path)?;
    f.to_family(path)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Labels {
    pub points: Vec<String>,
    pub lines: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeometryFile {
    pub points: usize,
    pub lines: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Labels>,
}

impl GeometryFile {
    pub fn from_geometry(g: &IncidenceGeometry) -> Self {
        let labels = match (&g.point_labels, &g.line_labels) {
            (Some(p), Some(l)) => Some(Labels { points: p.clone(), lines: l.clone() }),
            _ => None,
        };
        GeometryFile { points: g.num_points(), lines: g.lines().to_vec(), labels }
    }

    pub fn to_geometry(&self, path: &Path) -> Result<IncidenceGeometry, IoError> {
        let g = IncidenceGeometry::new(self.points, self.lines.clone()).map_err(|source| {
            let pointer = match &source {
                GeometryError::RepeatedIncidence { line, .. } | GeometryError::PointOutOfRange { line, .. } => {
                    format!("lines[{line}]")
                }
                _ => "lines".to_string(),
            };
            IoError::Geometry { path: path.to_path_buf(), pointer, source }
        })?;
        Ok(match &self.labels {
            Some(l) if l.points.len() == self.points && l.lines.len() == self.lines.len() => {
                g.with_labels(l.points.clone(), l.lines.clone())
            }
            Some(_) => {
                return Err(IoError::Parse {
                    path: path.to_path_buf(),
                    pointer: "labels".into(),
                    message: "label counts do not match points and lines".into(),
                })
            }
            None => g,
        })
    }
}

pub fn read_geometry(path: &Path) -> Result<IncidenceGeometry, IoError> {
    let f: GeometryFile = read_json(path)?;
    f.to_geometry(path)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaneFile {
    #[serde(flatten)]
    pub geometry: GeometryFile,
    pub parallel_classes: Vec<Vec<usize>>,
}

impl PlaneFile {
    pub fn from_plane(p: &AffinePlane) -> Self {
        PlaneFile { geometry: GeometryFile::from_geometry(&p.geom), parallel_classes: p.parallel_classes.clone() }
    }
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), IoError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|source| IoError::Read { path: dir.to_path_buf(), source })?;
    }
    let text = serde_json::to_string_pretty(value).expect("serializable value");
    fs::write(path, text + "\n").map_err(|source| IoError::Read { path: path.to_path_buf(), source })
}
