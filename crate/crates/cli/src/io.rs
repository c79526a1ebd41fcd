use std::fs;
use std::path::Path;

use clap::ValueEnum;
use pcg_core::graph::{parse_graph, Format, Graph};
use pcg_core::pcr::{pcr_from_json, pcr_to_json, Pcr};

/// Why a command failed; decides the exit status.
#[derive(Debug)]
pub enum Failure {
    /// Bad flags or arguments (exit 64).
    Usage(String),
    /// Unreadable or malformed input, or an inconsistent result (exit 65).
    Data(String),
}

impl Failure {
    pub fn data(e: impl std::fmt::Display) -> Self {
        Failure::Data(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphFormat {
    Graph6,
    Edgelist,
}

impl From<GraphFormat> for Format {
    fn from(f: GraphFormat) -> Self {
        match f {
            GraphFormat::Graph6 => Format::Graph6,
            GraphFormat::Edgelist => Format::EdgeList,
        }
    }
}

pub fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))
}

pub fn write_text(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))
}

/// `.g6` files and text starting with the graph6 header are graph6; anything
/// else is an edge list unless `format` says otherwise.
pub fn sniff(path: &Path, text: &str, format: Option<GraphFormat>) -> Format {
    match format {
        Some(f) => f.into(),
        None if path.extension().is_some_and(|e| e == "g6") || text.trim_start().starts_with(">>graph6<<") => {
            Format::Graph6
        }
        None => Format::EdgeList,
    }
}

pub fn read_graph(path: &Path, format: Option<GraphFormat>) -> Result<Graph, Failure> {
    let text = read_text(path)?;
    parse_graph(&text, sniff(path, &text, format)).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))
}

pub fn read_pcr(path: &Path) -> Result<Pcr, Failure> {
    pcr_from_json(&read_text(path)?).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    serde_json::from_str(&read_text(path)?).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))
}

/// Serializes a witness after checking that it induces `g` and survives a
/// JSON round trip unchanged.
pub fn checked_pcr_json(p: &Pcr, g: &Graph) -> Result<String, Failure> {
    if !p.verify(g).unwrap_or(false) {
        return Err(Failure::Data(
            "internal error: witness does not induce the expected graph".into(),
        ));
    }
    let s = pcr_to_json(p);
    if pcr_from_json(&s).ok().as_ref() != Some(p) {
        return Err(Failure::Data("internal error: witness does not round-trip".into()));
    }
    Ok(s)
}

pub fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("values serialize")
}
