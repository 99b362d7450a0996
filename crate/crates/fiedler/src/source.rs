//! Where graphs come from: `named:NAME`, a graph6 file, or a literal
//! graph6 string.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use fiedler_core::constructions::named;
use fiedler_core::{graph6, Graph};

/// Reads every graph6 line of `path`; blank lines and `>>graph6<<` headers
/// are skipped.
pub fn read_graph6_file(path: &Path) -> Result<Vec<Graph>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_graph6_lines(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn parse_graph6_lines(text: &str) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.trim();
        let line = line.strip_prefix(graph6::HEADER).unwrap_or(line);
        if line.is_empty() {
            continue;
        }
        out.push(graph6::decode(line).with_context(|| format!("line {}", k + 1))?);
    }
    Ok(out)
}

/// Resolves a graph argument. A path that exists wins over a literal.
pub fn load_family(spec: &str) -> Result<Vec<Graph>> {
    if let Some(name) = spec.strip_prefix("named:") {
        return Ok(vec![named(name)?]);
    }
    let path = Path::new(spec);
    if path.is_file() {
        return read_graph6_file(path);
    }
    Ok(vec![graph6::decode(spec).with_context(|| format!("{spec:?} is neither a named graph, a file nor graph6"))?])
}

/// Like [`load_family`] but requires exactly one graph.
pub fn load_graph(spec: &str) -> Result<Graph> {
    let mut family = load_family(spec)?;
    match family.len() {
        1 => Ok(family.remove(0)),
        0 => bail!("{spec}: no graphs found"),
        k => bail!("{spec}: expected one graph, found {k}"),
    }
}
