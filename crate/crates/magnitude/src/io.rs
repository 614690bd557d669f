//! JSON and CSV formats for spaces, graphs, reports, and construction
//! results. All exact rationals cross this boundary as `"p/q"` strings.

use crate::construct::ConstructionResult;
use crate::engine::MagnitudeReport;
use crate::error::{Error, Result};
use crate::rational::{format_rational, ExtRational};
use crate::space::{FiniteMetricSpace, Graph, NegativeTypeReport};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpaceJson {
    pub labels: Vec<String>,
    pub dist: Vec<Vec<String>>,
}

impl SpaceJson {
    pub fn from_space(x: &FiniteMetricSpace) -> Self {
        SpaceJson {
            labels: x.labels().to_vec(),
            dist: x
                .matrix()
                .iter()
                .map(|row| row.iter().map(|d| d.to_string()).collect())
                .collect(),
        }
    }

    pub fn to_space(&self) -> Result<FiniteMetricSpace> {
        let dist = self
            .dist
            .iter()
            .map(|row| row.iter().map(|s| ExtRational::parse(s)).collect())
            .collect::<Result<Vec<Vec<_>>>>()?;
        FiniteMetricSpace::new(self.labels.clone(), dist)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl GraphJson {
    pub fn from_graph(g: &Graph) -> Self {
        GraphJson {
            n: g.vertex_count(),
            edges: g.edges().iter().map(|&(a, b)| [a, b]).collect(),
        }
    }

    pub fn to_graph(&self) -> Result<Graph> {
        Graph::new(self.n, self.edges.iter().map(|e| (e[0], e[1])).collect())
    }
}

pub fn space_to_string(x: &FiniteMetricSpace) -> String {
    serde_json::to_string(&SpaceJson::from_space(x)).expect("space serialization")
}

pub fn space_from_str(s: &str) -> Result<FiniteMetricSpace> {
    let json: SpaceJson =
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("space JSON: {e}")))?;
    json.to_space()
}

pub fn graph_from_str(s: &str) -> Result<Graph> {
    let json: GraphJson =
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("graph JSON: {e}")))?;
    json.to_graph()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReportJson {
    pub f_n: String,
    pub det_d: String,
    pub c_n: String,
    pub c_n_prime: String,
    pub limit: String,
    pub one_point: bool,
}

impl ReportJson {
    pub fn from_report(r: &MagnitudeReport) -> Self {
        ReportJson {
            f_n: format_rational(&r.f_n),
            det_d: format_rational(&r.det_d),
            c_n: format_rational(&r.c_n),
            c_n_prime: format_rational(&r.c_n_prime),
            limit: r.limit.to_string(),
            one_point: r.one_point,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConstructionJson {
    pub n: usize,
    pub r: String,
    pub achieved: String,
    pub target: String,
    pub gap: String,
    pub space: SpaceJson,
}

impl ConstructionJson {
    pub fn from_result(c: &ConstructionResult) -> Self {
        ConstructionJson {
            n: c.n,
            r: format_rational(&c.r),
            achieved: format_rational(&c.achieved),
            target: format_rational(&c.target),
            gap: format_rational(&c.gap),
            space: SpaceJson::from_space(&c.space),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NegativeTypeJson {
    pub samples: Vec<NegativeTypeSampleJson>,
    pub all_pass: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NegativeTypeSampleJson {
    pub t: f64,
    pub min_eigenvalue: f64,
    pub pass: bool,
}

impl NegativeTypeJson {
    pub fn from_report(r: &NegativeTypeReport) -> Self {
        NegativeTypeJson {
            samples: r
                .samples
                .iter()
                .map(|s| NegativeTypeSampleJson {
                    t: s.t,
                    min_eigenvalue: s.min_eigenvalue,
                    pass: s.pass,
                })
                .collect(),
            all_pass: r.all_pass,
        }
    }
}

/// Round-trip-safe float formatting: 17 significant digits.
pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

/// CSV of a magnitude profile: header `t,magnitude`, `NA` at singular
/// scales.
pub fn profile_to_csv(rows: &[(f64, Option<f64>)]) -> String {
    let mut out = String::from("t,magnitude\n");
    for (t, m) in rows {
        out.push_str(&format_float(*t));
        out.push(',');
        match m {
            Some(v) => out.push_str(&format_float(*v)),
            None => out.push_str("NA"),
        }
        out.push('\n');
    }
    out
}
