//! Quivers, doubled quivers, separated quivers, dimension vectors and the
//! per-vertex edge orderings used by fusion.

use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QuiverError {
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("dangling endpoint `{endpoint}` on edge `{edge}`")]
    DanglingEndpoint { edge: String, endpoint: String },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("dimension vector must have a positive entry")]
    ZeroDimensionVector,
    #[error("invalid rational `{0}`")]
    BadRational(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

/// A finite quiver: ordered vertex list and oriented edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub edges: Vec<Edge>,
}

impl Quiver {
    pub fn new(vertices: &[&str], edges: &[(&str, &str, &str)]) -> Self {
        Quiver {
            vertices: vertices.iter().map(|v| v.to_string()).collect(),
            edges: edges
                .iter()
                .map(|(id, s, t)| Edge {
                    id: id.to_string(),
                    src: s.to_string(),
                    tgt: t.to_string(),
                })
                .collect(),
        }
    }

    /// The smallest non-trivial quiver, one edge `e: 1 -> 2`.
    pub fn a2() -> Self {
        Quiver::new(&["1", "2"], &[("e", "1", "2")])
    }

    /// One vertex with a single loop.
    pub fn jordan() -> Self {
        Quiver::new(&["v"], &[("e", "v", "v")])
    }

    pub fn two_cycle() -> Self {
        Quiver::new(&["1", "2"], &[("e", "1", "2"), ("f", "2", "1")])
    }

    /// Star with `arms` edges pointing into the center `c`.
    pub fn star(arms: usize) -> Self {
        let vnames: Vec<String> = std::iter::once("c".to_string())
            .chain((1..=arms).map(|i| format!("v{i}")))
            .collect();
        let vertices: Vec<&str> = vnames.iter().map(|s| s.as_str()).collect();
        let enames: Vec<(String, String)> =
            (1..=arms).map(|i| (format!("e{i}"), format!("v{i}"))).collect();
        let edges: Vec<(&str, &str, &str)> = enames
            .iter()
            .map(|(e, v)| (e.as_str(), v.as_str(), "c"))
            .collect();
        Quiver::new(&vertices, &edges)
    }

    /// Returns the first violated invariant, if any.
    pub fn validate(&self) -> Result<(), QuiverError> {
        let mut seen = BTreeSet::new();
        for v in &self.vertices {
            if !seen.insert(v.clone()) {
                return Err(QuiverError::DuplicateId(v.clone()));
            }
        }
        let vset: BTreeSet<&String> = self.vertices.iter().collect();
        let mut eids = BTreeSet::new();
        for e in &self.edges {
            if !eids.insert(e.id.clone()) {
                return Err(QuiverError::DuplicateId(e.id.clone()));
            }
            for ep in [&e.src, &e.tgt] {
                if !vset.contains(ep) {
                    return Err(QuiverError::DanglingEndpoint {
                        edge: e.id.clone(),
                        endpoint: ep.clone(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn edge(&self, id: &str) -> Option<&Edge> {
        self.edges.iter().find(|e| e.id == id)
    }

    /// Doubles the quiver, adjoining a reverse edge `e*` per edge.
    pub fn double(&self) -> Result<DoubleQuiver, QuiverError> {
        self.validate()?;
        Ok(DoubleQuiver { base: self.clone() })
    }

    /// The separated quiver: one `A_2` component per edge.
    pub fn separated(&self) -> Result<Quiver, QuiverError> {
        self.validate()?;
        let mut vertices = Vec::new();
        let mut edges = Vec::new();
        for e in &self.edges {
            let vs = format!("v:{}", e.id);
            let vt = format!("v:{}*", e.id);
            vertices.push(vs.clone());
            vertices.push(vt.clone());
            edges.push(Edge {
                id: e.id.clone(),
                src: vs,
                tgt: vt,
            });
        }
        Ok(Quiver { vertices, edges })
    }
}

/// Sign attached to edges of the doubled quiver.
pub fn epsilon(dq: &DoubleQuiver, id: &str) -> i64 {
    if dq.is_star(id) {
        -1
    } else {
        1
    }
}

/// A doubled quiver. Star edges are named `<id>*`; the involution swaps
/// `e` and `e*`. Construct through [`Quiver::double`] only, so doubling a
/// doubled quiver is not expressible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleQuiver {
    base: Quiver,
}

impl DoubleQuiver {
    pub fn base(&self) -> &Quiver {
        &self.base
    }

    pub fn star_id(id: &str) -> String {
        format!("{id}*")
    }

    pub fn is_star(&self, id: &str) -> bool {
        id.ends_with('*') && self.base.edge(&id[..id.len() - 1]).is_some()
    }

    /// All edge ids of the doubled quiver, base edges first.
    pub fn all_edge_ids(&self) -> Vec<String> {
        let mut out: Vec<String> = self.base.edges.iter().map(|e| e.id.clone()).collect();
        out.extend(self.base.edges.iter().map(|e| Self::star_id(&e.id)));
        out
    }

    /// Source/target of an edge of the doubled quiver.
    pub fn endpoints(&self, id: &str) -> Option<(String, String)> {
        if let Some(e) = self.base.edge(id) {
            return Some((e.src.clone(), e.tgt.clone()));
        }
        if self.is_star(id) {
            let e = self.base.edge(&id[..id.len() - 1])?;
            return Some((e.tgt.clone(), e.src.clone()));
        }
        None
    }

    pub fn involution(&self, id: &str) -> Option<String> {
        if self.base.edge(id).is_some() {
            Some(Self::star_id(id))
        } else if self.is_star(id) {
            Some(id[..id.len() - 1].to_string())
        } else {
            None
        }
    }
}

/// Map vertex -> nonnegative dimension, for the matrix oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionVector {
    pub entries: BTreeMap<String, usize>,
}

impl DimensionVector {
    pub fn uniform(q: &Quiver, n: usize) -> Self {
        DimensionVector {
            entries: q.vertices.iter().map(|v| (v.clone(), n)).collect(),
        }
    }

    pub fn validate(&self) -> Result<(), QuiverError> {
        if self.entries.values().all(|&n| n == 0) {
            return Err(QuiverError::ZeroDimensionVector);
        }
        Ok(())
    }

    pub fn dim(&self, v: &str) -> usize {
        *self.entries.get(v).unwrap_or(&0)
    }
}

/// Per-vertex total orders on incoming base edges and incoming star edges
/// (i.e. base edges leaving the vertex), plus a total order on vertices.
/// Defaults to lexicographic edge-id order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FusionOrder {
    /// `in_order[v]`: edges e of E with t(e) = v.
    pub in_order: BTreeMap<String, Vec<String>>,
    /// `out_order[v]`: edges e of E with s(e) = v (their stars target v).
    pub out_order: BTreeMap<String, Vec<String>>,
    pub vertex_order: Vec<String>,
}

impl FusionOrder {
    pub fn lexicographic(q: &Quiver) -> Self {
        let mut ord = FusionOrder {
            vertex_order: {
                let mut vs = q.vertices.clone();
                vs.sort();
                vs
            },
            ..Default::default()
        };
        for v in &q.vertices {
            let mut into: Vec<String> = q
                .edges
                .iter()
                .filter(|e| &e.tgt == v)
                .map(|e| e.id.clone())
                .collect();
            into.sort();
            let mut out: Vec<String> = q
                .edges
                .iter()
                .filter(|e| &e.src == v)
                .map(|e| e.id.clone())
                .collect();
            out.sort();
            ord.in_order.insert(v.clone(), into);
            ord.out_order.insert(v.clone(), out);
        }
        ord
    }

    /// The orders must cover exactly the incident edges of `q`.
    pub fn validate(&self, q: &Quiver) -> Result<(), QuiverError> {
        let lex = FusionOrder::lexicographic(q);
        for v in &q.vertices {
            for (mine, theirs) in [
                (self.in_order.get(v), lex.in_order.get(v)),
                (self.out_order.get(v), lex.out_order.get(v)),
            ] {
                let mut m: Vec<String> = mine.cloned().unwrap_or_default();
                let mut t: Vec<String> = theirs.cloned().unwrap_or_default();
                m.sort();
                t.sort();
                if m != t {
                    return Err(QuiverError::UnknownVertex(v.clone()));
                }
            }
        }
        Ok(())
    }
}

/// On-disk quiver description. Rationals are exact strings like "3/2".
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuiverFile {
    pub vertices: Vec<String>,
    pub edges: Vec<Edge>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fusion_order: Option<BTreeMap<String, VertexOrder>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VertexOrder {
    #[serde(default)]
    pub r#in: Vec<String>,
    #[serde(default)]
    pub out: Vec<String>,
}

pub fn parse_rational(s: &str) -> Result<crate::Rat, QuiverError> {
    s.trim()
        .parse::<crate::Rat>()
        .map_err(|_| QuiverError::BadRational(s.to_string()))
}

impl QuiverFile {
    pub fn quiver(&self) -> Quiver {
        Quiver {
            vertices: self.vertices.clone(),
            edges: self.edges.clone(),
        }
    }

    pub fn q_values(&self) -> Result<BTreeMap<String, crate::Rat>, QuiverError> {
        let mut out = BTreeMap::new();
        for v in &self.vertices {
            let val = match &self.q {
                Some(m) => match m.get(v) {
                    Some(s) => parse_rational(s)?,
                    None => crate::rat_int(1),
                },
                None => crate::rat_int(1),
            };
            out.insert(v.clone(), val);
        }
        Ok(out)
    }

    pub fn fusion(&self) -> Result<FusionOrder, QuiverError> {
        let q = self.quiver();
        let mut ord = FusionOrder::lexicographic(&q);
        if let Some(fo) = &self.fusion_order {
            for (v, vo) in fo {
                if !self.vertices.contains(v) {
                    return Err(QuiverError::UnknownVertex(v.clone()));
                }
                if !vo.r#in.is_empty() {
                    ord.in_order.insert(v.clone(), vo.r#in.clone());
                }
                if !vo.out.is_empty() {
                    ord.out_order.insert(v.clone(), vo.out.clone());
                }
            }
            ord.validate(&q)?;
        }
        Ok(ord)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_is_valid() {
        assert_eq!(Quiver::a2().validate(), Ok(()));
    }

    #[test]
    fn dangling_endpoint_detected() {
        let q = Quiver::new(&["1"], &[("e", "1", "2")]);
        assert_eq!(
            q.validate(),
            Err(QuiverError::DanglingEndpoint {
                edge: "e".into(),
                endpoint: "2".into()
            })
        );
    }

    #[test]
    fn duplicate_edge_id_detected() {
        let q = Quiver::new(&["1", "2"], &[("e", "1", "2"), ("e", "2", "1")]);
        assert_eq!(q.validate(), Err(QuiverError::DuplicateId("e".into())));
    }

    #[test]
    fn double_a2() {
        let dq = Quiver::a2().double().unwrap();
        assert_eq!(dq.endpoints("e"), Some(("1".into(), "2".into())));
        assert_eq!(dq.endpoints("e*"), Some(("2".into(), "1".into())));
        assert_eq!(epsilon(&dq, "e"), 1);
        assert_eq!(epsilon(&dq, "e*"), -1);
        assert_eq!(dq.involution("e*").as_deref(), Some("e"));
    }

    #[test]
    fn double_jordan_loops() {
        let dq = Quiver::jordan().double().unwrap();
        assert_eq!(dq.endpoints("e"), Some(("v".into(), "v".into())));
        assert_eq!(dq.endpoints("e*"), Some(("v".into(), "v".into())));
    }

    #[test]
    fn double_empty_edges() {
        let q = Quiver::new(&["1"], &[]);
        assert!(q.double().unwrap().all_edge_ids().is_empty());
    }

    #[test]
    fn separated_jordan_is_a2_shape() {
        let sep = Quiver::jordan().separated().unwrap();
        assert_eq!(sep.vertices.len(), 2);
        assert_eq!(sep.edges.len(), 1);
        assert_ne!(sep.edges[0].src, sep.edges[0].tgt);
    }

    #[test]
    fn separated_counts() {
        let sep = Quiver::two_cycle().separated().unwrap();
        assert_eq!(sep.vertices.len(), 4);
        assert_eq!(sep.edges.len(), 2);
        assert_eq!(sep.validate(), Ok(()));
    }

    #[test]
    fn quiver_file_roundtrip() {
        let text = r#"{
            "vertices": ["1","2"],
            "edges": [{"id":"e","src":"1","tgt":"2"}],
            "q": {"1": "3/2"},
            "fusion_order": {"2": {"in": ["e"]}}
        }"#;
        let qf: QuiverFile = serde_json::from_str(text).unwrap();
        assert_eq!(qf.q_values().unwrap()["1"], crate::rat(3, 2));
        assert_eq!(qf.q_values().unwrap()["2"], crate::rat_int(1));
        let ord = qf.fusion().unwrap();
        assert_eq!(ord.in_order["2"], vec!["e".to_string()]);
    }
}
