//! JSON and plain-text edge-list serialization.
//!
//! JSON: `{"n": 5, "c_edges": [[0,1,2]], "d_edges": [[0,1,2]]}`, or for
//! bi-hypergraphs the shorthand `{"n": 5, "edges": [[0,1,2]]}`. Optional keys
//! `labels` and `provenance`.
//!
//! Edge list:
//!
//! ```text
//! #bi
//! #provenance {"family":"hk","k":2}
//! 6 3
//! 0 1 2
//! ```
//!
//! `#bi` marks `C = D`; without it every edge line starts with `c` or `d`.
//! The header line is `n r` with `r` the common edge size, or 0 when edges
//! differ in size or there are none. Other lines starting with `#` are
//! comments.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::constructions::ConstructionSpec;
use crate::error::{Error, Result};
use crate::hypergraph::{Edge, MixedHypergraph};

/// A hypergraph plus how it was produced, when known.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Instance {
    pub hypergraph: MixedHypergraph,
    pub provenance: Option<ConstructionSpec>,
}

impl Instance {
    pub fn new(hypergraph: MixedHypergraph) -> Instance {
        Instance {
            hypergraph,
            provenance: None,
        }
    }

    pub fn with_provenance(mut self, spec: ConstructionSpec) -> Instance {
        self.provenance = Some(spec);
        self
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    edges: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    c_edges: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    d_edges: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    provenance: Option<ConstructionSpec>,
}

fn lists(family: &[Edge]) -> Vec<Vec<usize>> {
    family.iter().map(|e| e.vertices().to_vec()).collect()
}

pub fn to_json(inst: &Instance) -> String {
    let h = &inst.hypergraph;
    let bi = h.is_bi();
    let doc = Document {
        n: h.n(),
        edges: bi.then(|| lists(h.c_edges())),
        c_edges: (!bi).then(|| lists(h.c_edges())),
        d_edges: (!bi).then(|| lists(h.d_edges())),
        labels: h.labels().map(<[String]>::to_vec),
        provenance: inst.provenance.clone(),
    };
    serde_json::to_string(&doc).expect("documents always serialize")
}

pub fn from_json(text: &str) -> Result<Instance> {
    let doc: Document = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        msg: e.to_string(),
    })?;
    let (c, d) = match (doc.edges, doc.c_edges, doc.d_edges) {
        (Some(e), None, None) => (e.clone(), e),
        (None, c, d) => (c.unwrap_or_default(), d.unwrap_or_default()),
        _ => {
            return Err(Error::Parse {
                line: 1,
                msg: "`edges` cannot be combined with `c_edges`/`d_edges`".into(),
            })
        }
    };
    let mut h = MixedHypergraph::new(doc.n, c, d)?;
    if let Some(labels) = doc.labels {
        h = h.with_labels(labels)?;
    }
    Ok(Instance {
        hypergraph: h,
        provenance: doc.provenance,
    })
}

fn common_size(h: &MixedHypergraph) -> usize {
    let mut sizes = h.c_edges().iter().chain(h.d_edges()).map(Edge::len);
    match sizes.next() {
        Some(r) if sizes.all(|s| s == r) => r,
        _ => 0,
    }
}

fn join(e: &Edge) -> String {
    e.vertices()
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

/// Edge-list text; labels are not represented.
pub fn to_edge_list(inst: &Instance) -> String {
    let h = &inst.hypergraph;
    let mut out = String::new();
    if h.is_bi() {
        out.push_str("#bi\n");
    }
    if let Some(p) = &inst.provenance {
        out.push_str("#provenance ");
        out.push_str(&serde_json::to_string(p).expect("specs serialize"));
        out.push('\n');
    }
    out.push_str(&format!("{} {}\n", h.n(), common_size(h)));
    if h.is_bi() {
        for e in h.c_edges() {
            out.push_str(&join(e));
            out.push('\n');
        }
    } else {
        for (tag, family) in [("c", h.c_edges()), ("d", h.d_edges())] {
            for e in family {
                out.push_str(tag);
                out.push(' ');
                out.push_str(&join(e));
                out.push('\n');
            }
        }
    }
    out
}

pub fn from_edge_list(text: &str) -> Result<Instance> {
    let err = |line: usize, msg: String| Error::Parse { line, msg };
    let mut bi = false;
    let mut provenance = None;
    let mut header: Option<(usize, usize)> = None;
    let mut c = Vec::new();
    let mut d = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            if header.is_none() && rest.trim() == "bi" {
                bi = true;
            } else if let Some(json) = rest.strip_prefix("provenance") {
                provenance = Some(
                    serde_json::from_str(json.trim())
                        .map_err(|e| err(line_no, format!("bad provenance: {e}")))?,
                );
            }
            continue;
        }
        let mut tokens: Vec<&str> = line.split_whitespace().collect();
        let Some((n, r)) = header else {
            if tokens.len() != 2 {
                return Err(err(line_no, format!("expected header `n r`, got `{line}`")));
            }
            let parse = |t: &str| {
                t.parse::<usize>()
                    .map_err(|_| err(line_no, format!("`{t}` is not a nonnegative integer")))
            };
            header = Some((parse(tokens[0])?, parse(tokens[1])?));
            continue;
        };
        let family = if bi {
            None
        } else {
            match tokens.first().copied() {
                Some("c") => Some(true),
                Some("d") => Some(false),
                _ => return Err(err(line_no, "edge lines must start with `c` or `d`".into())),
            }
        };
        if family.is_some() {
            tokens.remove(0);
        }
        let vertices = tokens
            .iter()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| err(line_no, format!("`{t}` is not a vertex index")))
            })
            .collect::<Result<Vec<usize>>>()?;
        let edge = Edge::new(&vertices, n).map_err(|e| err(line_no, e.to_string()))?;
        if r != 0 && edge.len() != r {
            return Err(err(
                line_no,
                format!("edge has {} vertices but the header says {r}", edge.len()),
            ));
        }
        match family {
            None | Some(true) => c.push(edge.clone()),
            Some(false) => {}
        }
        if family != Some(true) {
            d.push(edge);
        }
    }
    let (n, _) = header.ok_or_else(|| err(text.lines().count().max(1), "missing header".into()))?;
    let hypergraph = MixedHypergraph::from_edges(n, c, d)?;
    Ok(Instance {
        hypergraph,
        provenance,
    })
}

/// Reads JSON when the extension is `.json`, the edge-list format otherwise.
pub fn read_instance(path: &Path) -> Result<Instance> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    if is_json(path) {
        from_json(&text)
    } else {
        from_edge_list(&text)
    }
}

pub fn write_instance(path: &Path, inst: &Instance) -> Result<()> {
    let text = if is_json(path) {
        let mut s = to_json(inst);
        s.push('\n');
        s
    } else {
        to_edge_list(inst)
    };
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

fn is_json(path: &Path) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{make_hk, ConstructionSpec};

    fn mixed() -> MixedHypergraph {
        MixedHypergraph::new(4, vec![vec![0, 1, 2]], vec![vec![1, 3], vec![0, 3]]).unwrap()
    }

    #[test]
    fn json_shapes() {
        let bi = Instance::new(make_hk(2).unwrap().into_mixed());
        let text = to_json(&bi);
        assert!(text.starts_with(r#"{"n":6,"edges":[[0,1,2],"#));
        assert_eq!(from_json(&text).unwrap(), bi);
        let m = Instance::new(mixed());
        let text = to_json(&m);
        assert_eq!(text, r#"{"n":4,"c_edges":[[0,1,2]],"d_edges":[[0,3],[1,3]]}"#);
        assert_eq!(from_json(&text).unwrap(), m);
        assert!(from_json(r#"{"n":3,"edges":[[0,1,5]]}"#).is_err());
        assert!(from_json(r#"{"n":3,"edges":[],"c_edges":[]}"#).is_err());
    }

    #[test]
    fn edge_list_round_trip() {
        let inst = Instance::new(make_hk(2).unwrap().into_mixed()).with_provenance(ConstructionSpec::hk(2));
        let text = to_edge_list(&inst);
        assert!(text.starts_with("#bi\n#provenance {\"family\":\"hk\",\"k\":2}\n6 3\n0 1 2\n"));
        let back = from_edge_list(&text).unwrap();
        assert_eq!(back.provenance, inst.provenance);
        assert_eq!(to_edge_list(&back), text);
        let m = Instance::new(mixed());
        let text = to_edge_list(&m);
        assert_eq!(text, "4 0\nc 0 1 2\nd 0 3\nd 1 3\n");
        assert_eq!(from_edge_list(&text).unwrap(), m);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let cases = [
            ("#bi\n3 3\n0 1 2\n0 1 x\n", 4),
            ("#bi\n3 3\n0 1\n", 3),
            ("3 0\n0 1 2\n", 2),
            ("3\n", 1),
            ("#bi\n3 3\n0 1 3\n", 3),
        ];
        for (text, line) in cases {
            match from_edge_list(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
    }

    #[test]
    fn files_by_extension() {
        let dir = tempfile::tempdir().unwrap();
        let inst = Instance::new(mixed());
        for name in ["a.json", "a.txt"] {
            let path = dir.path().join(name);
            write_instance(&path, &inst).unwrap();
            assert_eq!(read_instance(&path).unwrap(), inst);
        }
    }
}
