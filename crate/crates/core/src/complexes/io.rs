//! Text and JSON forms of complexes.

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{SimplicialComplex, VertexLabel};
use crate::{Error, Result};

impl FromStr for VertexLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<VertexLabel> {
        let bad = || Error::Parse { pos: 0, msg: format!("bad vertex label `{s}`") };
        let s = s.trim();
        match s {
            "w1" => return Ok(VertexLabel::W(1)),
            "w2" => return Ok(VertexLabel::W(2)),
            "v" => return Ok(VertexLabel::V),
            _ => {}
        }
        let inner = |prefix: &str| {
            s.strip_prefix(prefix)
                .and_then(|r| r.strip_prefix('['))
                .and_then(|r| r.strip_suffix(']'))
        };
        let pair = |body: &str| -> Result<(u8, u8)> {
            let (a, b) = body.split_once(',').ok_or_else(bad)?;
            Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
        };
        if let Some(body) = inner("d") {
            let (i, j) = pair(body)?;
            if j < i + 2 {
                return Err(bad());
            }
            Ok(VertexLabel::Diagonal(i, j))
        } else if let Some(body) = inner("e") {
            let (i, j) = pair(body)?;
            Ok(VertexLabel::Edge(i, j))
        } else if let Some(body) = inner("free") {
            Ok(VertexLabel::Free(body.trim().parse().map_err(|_| bad())?))
        } else {
            Err(bad())
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub vertices: Vec<String>,
    pub facets: Vec<Vec<String>>,
    pub f_vector: Vec<u64>,
}

impl SimplicialComplex {
    /// One facet per line, labels separated by spaces. The face `{∅}`
    /// prints as a single empty line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for f in self.facets() {
            let line: Vec<String> = f.iter().map(|v| v.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn from_text(src: &str) -> Result<SimplicialComplex> {
        let facets = src
            .lines()
            .filter(|l| !l.trim_start().starts_with('#'))
            .map(|l| l.split_whitespace().map(str::parse).collect::<Result<Vec<VertexLabel>>>())
            .collect::<Result<Vec<_>>>()?;
        SimplicialComplex::from_facets(facets)
    }

    pub fn to_json(&self) -> ComplexJson {
        ComplexJson {
            vertices: self.vertices.iter().map(|v| v.to_string()).collect(),
            facets: self
                .facets()
                .iter()
                .map(|f| f.iter().map(|v| v.to_string()).collect())
                .collect(),
            f_vector: self.f_vector(),
        }
    }

    pub fn from_json(j: &ComplexJson) -> Result<SimplicialComplex> {
        let vertices = j.vertices.iter().map(|v| v.parse()).collect::<Result<Vec<VertexLabel>>>()?;
        let facets = j
            .facets
            .iter()
            .map(|f| f.iter().map(|v| v.parse()).collect::<Result<Vec<VertexLabel>>>())
            .collect::<Result<Vec<_>>>()?;
        SimplicialComplex::with_vertices(&vertices, facets)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::kn_complex;

    #[test]
    fn labels_round_trip() {
        for s in ["d[1,3]", "e[2,3]", "w1", "w2", "v", "free[12]"] {
            assert_eq!(s.parse::<VertexLabel>().unwrap().to_string(), s);
        }
        assert!("d[1,2]".parse::<VertexLabel>().is_err());
        assert!("q".parse::<VertexLabel>().is_err());
    }

    #[test]
    fn text_and_json_round_trip() {
        let k = kn_complex(5).unwrap();
        assert_eq!(SimplicialComplex::from_text(&k.to_text()).unwrap(), k);
        let j = k.to_json();
        assert_eq!(j.f_vector, k.f_vector());
        assert_eq!(SimplicialComplex::from_json(&j).unwrap(), k);
    }
}
