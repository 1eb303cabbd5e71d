//! File formats and loaders. Every format is a JSON object with a `kind`
//! discriminator; unknown fields are rejected. Map and functor files
//! reference their source and target object files by path, resolved relative
//! to the referring file.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use thiserror::Error;

use crate::corpus::Corpus;
use crate::fincat::{CarrierError, FinCat, FinPreord, Functor, MonotoneMap, RawCat};
use crate::presheaf::{FinPoset, PreordPresheaf};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },
    #[error("{path}: {source}")]
    Invalid {
        path: PathBuf,
        source: CarrierError,
    },
    #[error("{path}: expected kind `{expected}`, found `{found}`")]
    WrongKind {
        path: PathBuf,
        expected: String,
        found: String,
    },
    #[error("directory {0} mixes preorder and category files")]
    MixedCorpus(PathBuf),
    #[error("{path}: {message}")]
    Presheaf { path: PathBuf, message: String },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PreordFile {
    #[allow(dead_code)]
    kind: String,
    elements: Vec<String>,
    leq: Vec<(String, String)>,
    #[serde(default)]
    strict: bool,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ArrowEntry {
    name: String,
    dom: String,
    cod: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CatFile {
    #[allow(dead_code)]
    kind: String,
    objects: Vec<String>,
    arrows: Vec<ArrowEntry>,
    identities: BTreeMap<String, String>,
    #[serde(default)]
    compose: Vec<(String, String, String)>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MapFile {
    #[allow(dead_code)]
    kind: String,
    source: String,
    target: String,
    assign: BTreeMap<String, String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FunctorFile {
    #[allow(dead_code)]
    kind: String,
    source: String,
    target: String,
    objects: BTreeMap<String, String>,
    arrows: BTreeMap<String, String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RestrictionEntry {
    from: String,
    to: String,
    file: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PresheafFile {
    #[allow(dead_code)]
    kind: String,
    index: String,
    components: BTreeMap<String, String>,
    restrictions: Vec<RestrictionEntry>,
}

/// Either carrier kind, as loaded from a file.
#[derive(Debug, Clone)]
pub enum LoadedObject {
    Preord(FinPreord),
    Cat(FinCat),
}

fn read_value(path: &Path) -> Result<serde_json::Value, IoError> {
    let text = fs::read_to_string(path).map_err(|source| IoError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|e| IoError::Parse {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

fn kind_of(path: &Path, value: &serde_json::Value) -> Result<String, IoError> {
    value
        .get("kind")
        .and_then(|k| k.as_str())
        .map(|s| s.to_string())
        .ok_or_else(|| IoError::Parse {
            path: path.to_path_buf(),
            message: "missing `kind` field".into(),
        })
}

fn parse_as<T: for<'de> Deserialize<'de>>(
    path: &Path,
    value: serde_json::Value,
) -> Result<T, IoError> {
    serde_json::from_value(value).map_err(|e| IoError::Parse {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

pub fn load_preord(path: &Path) -> Result<FinPreord, IoError> {
    let value = read_value(path)?;
    let kind = kind_of(path, &value)?;
    if kind != "preord" {
        return Err(IoError::WrongKind {
            path: path.to_path_buf(),
            expected: "preord".into(),
            found: kind,
        });
    }
    let file: PreordFile = parse_as(path, value)?;
    FinPreord::new(&file.elements, &file.leq, file.strict).map_err(|source| IoError::Invalid {
        path: path.to_path_buf(),
        source,
    })
}

pub fn load_cat(path: &Path) -> Result<FinCat, IoError> {
    let value = read_value(path)?;
    let kind = kind_of(path, &value)?;
    if kind != "cat" {
        return Err(IoError::WrongKind {
            path: path.to_path_buf(),
            expected: "cat".into(),
            found: kind,
        });
    }
    let file: CatFile = parse_as(path, value)?;
    let objects: Vec<&str> = file.objects.iter().map(|s| s.as_str()).collect();
    let arrows: Vec<(&str, &str, &str)> = file
        .arrows
        .iter()
        .map(|a| (a.name.as_str(), a.dom.as_str(), a.cod.as_str()))
        .collect();
    let identities: Vec<(&str, &str)> = file
        .identities
        .iter()
        .map(|(o, a)| (o.as_str(), a.as_str()))
        .collect();
    let compose: Vec<(&str, &str, &str)> = file
        .compose
        .iter()
        .map(|(g, f, gf)| (g.as_str(), f.as_str(), gf.as_str()))
        .collect();
    FinCat::new(&RawCat {
        objects: &objects,
        arrows: &arrows,
        identities: &identities,
        compose: &compose,
    })
    .map_err(|source| IoError::Invalid {
        path: path.to_path_buf(),
        source,
    })
}

pub fn load_object(path: &Path) -> Result<LoadedObject, IoError> {
    let value = read_value(path)?;
    match kind_of(path, &value)?.as_str() {
        "preord" => load_preord(path).map(LoadedObject::Preord),
        "cat" => load_cat(path).map(LoadedObject::Cat),
        other => Err(IoError::WrongKind {
            path: path.to_path_buf(),
            expected: "preord|cat".into(),
            found: other.to_string(),
        }),
    }
}

fn sibling(base: &Path, rel: &str) -> PathBuf {
    base.parent().unwrap_or_else(|| Path::new(".")).join(rel)
}

pub fn load_map(path: &Path) -> Result<MonotoneMap, IoError> {
    let value = read_value(path)?;
    let kind = kind_of(path, &value)?;
    if kind != "map" {
        return Err(IoError::WrongKind {
            path: path.to_path_buf(),
            expected: "map".into(),
            found: kind,
        });
    }
    let file: MapFile = parse_as(path, value)?;
    let source = load_preord(&sibling(path, &file.source))?;
    let target = load_preord(&sibling(path, &file.target))?;
    MonotoneMap::new(source, target, &file.assign).map_err(|e| IoError::Invalid {
        path: path.to_path_buf(),
        source: e,
    })
}

pub fn load_functor(path: &Path) -> Result<Functor, IoError> {
    let value = read_value(path)?;
    let kind = kind_of(path, &value)?;
    if kind != "functor" {
        return Err(IoError::WrongKind {
            path: path.to_path_buf(),
            expected: "functor".into(),
            found: kind,
        });
    }
    let file: FunctorFile = parse_as(path, value)?;
    let source = load_cat(&sibling(path, &file.source))?;
    let target = load_cat(&sibling(path, &file.target))?;
    Functor::new(source, target, &file.objects, &file.arrows).map_err(|e| IoError::Invalid {
        path: path.to_path_buf(),
        source: e,
    })
}

/// Loads every `.json` object file in a directory as one corpus, sorted by
/// file name; labels are the file stems.
pub fn load_corpus_dir(dir: &Path) -> Result<Corpus, IoError> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|source| IoError::Read {
            path: dir.to_path_buf(),
            source,
        })?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    let mut preords = Vec::new();
    let mut cats = Vec::new();
    for f in &files {
        let label = f
            .file_stem()
            .map(|s| s.to_string_lossy().to_string())
            .unwrap_or_default();
        match load_object(f)? {
            LoadedObject::Preord(p) => preords.push((label, p)),
            LoadedObject::Cat(c) => cats.push((label, c)),
        }
    }
    match (preords.is_empty(), cats.is_empty()) {
        (false, true) => Ok(Corpus::Preord(preords)),
        (true, false) => Ok(Corpus::Cat(cats)),
        (true, true) => Ok(Corpus::Preord(Vec::new())),
        (false, false) => Err(IoError::MixedCorpus(dir.to_path_buf())),
    }
}

/// Loads a presheaf manifest: an index poset file, one preorder file per
/// index point, and one map file per listed cover relation.
pub fn load_presheaf(path: &Path) -> Result<PreordPresheaf, IoError> {
    let value = read_value(path)?;
    let kind = kind_of(path, &value)?;
    if kind != "preord-presheaf" {
        return Err(IoError::WrongKind {
            path: path.to_path_buf(),
            expected: "preord-presheaf".into(),
            found: kind,
        });
    }
    let file: PresheafFile = parse_as(path, value)?;
    let index_preord = load_preord(&sibling(path, &file.index))?;
    let index = FinPoset::new(index_preord).map_err(|e| IoError::Presheaf {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    let mut components = BTreeMap::new();
    for (point, rel) in &file.components {
        components.insert(point.clone(), load_preord(&sibling(path, rel))?);
    }
    let mut restrictions = BTreeMap::new();
    for r in &file.restrictions {
        let map = load_map(&sibling(path, &r.file))?;
        restrictions.insert((r.from.clone(), r.to.clone()), map);
    }
    PreordPresheaf::new(index, components, restrictions).map_err(|e| IoError::Presheaf {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_tmp(dir: &Path, name: &str, content: &str) -> PathBuf {
        let p = dir.join(name);
        let mut f = fs::File::create(&p).unwrap();
        f.write_all(content.as_bytes()).unwrap();
        p
    }

    #[test]
    fn preord_roundtrip_and_unknown_field_rejection() {
        let dir = std::env::temp_dir().join("stabcat_io_test");
        fs::create_dir_all(&dir).unwrap();
        let p = write_tmp(
            &dir,
            "p3.json",
            r#"{"kind":"preord","elements":["a","b","c"],"leq":[["a","b"],["b","a"],["b","c"]],"strict":false}"#,
        );
        let loaded = load_preord(&p).unwrap();
        assert_eq!(loaded, crate::corpus::fixtures::p3());

        let bad = write_tmp(
            &dir,
            "bad.json",
            r#"{"kind":"preord","elements":["a"],"leq":[],"extra":1}"#,
        );
        assert!(matches!(load_preord(&bad), Err(IoError::Parse { .. })));
    }

    #[test]
    fn cat_file_loads_i2() {
        let dir = std::env::temp_dir().join("stabcat_io_test_cat");
        fs::create_dir_all(&dir).unwrap();
        let p = write_tmp(
            &dir,
            "i2.json",
            r#"{"kind":"cat","objects":["x","y"],
                "arrows":[{"name":"u","dom":"x","cod":"y"},{"name":"v","dom":"y","cod":"x"},
                          {"name":"idx","dom":"x","cod":"x"},{"name":"idy","dom":"y","cod":"y"}],
                "identities":{"x":"idx","y":"idy"},
                "compose":[["v","u","idx"],["u","v","idy"]]}"#,
        );
        let loaded = load_cat(&p).unwrap();
        assert_eq!(loaded, crate::corpus::fixtures::i2());
    }
}
