//! Machine-readable JSON reports emitted by the CLI.
//!
//! Reports are deterministic functions of inputs and seeds (no timestamps),
//! so identical invocations produce byte-identical output. Every geometric
//! quantity is serialized exactly: integer ray coordinates as strings, sign
//! vectors as +/-/0 strings.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::check::{CompensationPairing, DirectionCase, EquiprojectivityReport};
use crate::cones::{aggregated_cone, Arc, EdgeDirection};
use crate::geom::Polytope3;
use crate::minkowski::SumCertificate;
use crate::omatroid::{CensusReport, SignVector};
use crate::Result;

pub fn tool_version() -> String {
    env!("CARGO_PKG_VERSION").to_string()
}

#[derive(Serialize)]
pub struct DirectionEntry {
    pub direction: EdgeDirection,
    pub case: DirectionCase,
    pub full_plane: bool,
    pub arcs: Vec<Arc>,
}

#[derive(Serialize)]
pub struct ConeMethodReport {
    pub is_equiprojective: bool,
    pub kappa: Option<u64>,
    pub per_direction: Vec<DirectionEntry>,
    pub pairing: Option<CompensationPairing>,
}

impl ConeMethodReport {
    pub fn build(p: &Polytope3, report: &EquiprojectivityReport) -> Result<ConeMethodReport> {
        let mut per_direction = Vec::new();
        for (direction, &case) in &report.per_direction {
            let cone = aggregated_cone(p, direction)?;
            per_direction.push(DirectionEntry {
                direction: direction.clone(),
                case,
                full_plane: cone.full_plane,
                arcs: cone.arcs,
            });
        }
        Ok(ConeMethodReport {
            is_equiprojective: report.is_equiprojective,
            kappa: report.kappa,
            per_direction,
            pairing: report.pairing.clone(),
        })
    }
}

#[derive(Serialize)]
pub struct MatchingMethodReport {
    pub pairing_exists: bool,
    pub pairing: Option<CompensationPairing>,
}

#[derive(Serialize)]
pub struct OracleReport {
    pub samples: u64,
    pub seed: u64,
    pub uniform_count: Option<u64>,
}

#[derive(Serialize)]
pub struct CheckReport {
    pub tool_version: String,
    pub input: String,
    pub seed: u64,
    pub cone: Option<ConeMethodReport>,
    pub matching: Option<MatchingMethodReport>,
    pub oracle: Option<OracleReport>,
    pub methods_agree: bool,
    pub is_equiprojective: bool,
    pub kappa: Option<u64>,
}

#[derive(Serialize)]
pub struct SumReport {
    pub tool_version: String,
    pub input_p: String,
    pub input_q: String,
    pub sum_dimension: usize,
    pub sum_equiprojective: bool,
    pub certificate: SumCertificate,
    pub kappa_p: u64,
    pub kappa_q: u64,
    pub predicted_kappa: Option<u64>,
    pub direct_kappa: Option<u64>,
}

#[derive(Serialize)]
pub struct ProjectReport {
    pub tool_version: String,
    pub input: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub direction: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shadow_vertices: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub histogram: Option<BTreeMap<u64, u64>>,
}

#[derive(Serialize)]
pub struct GenReport {
    pub tool_version: String,
    pub kind: String,
    pub seed: u64,
    pub output: String,
    pub vertex_count: usize,
    pub predicted_kappa: Option<u64>,
}

#[derive(Serialize)]
pub struct CovectorsReport {
    pub tool_version: String,
    pub input: String,
    pub count: usize,
    pub covectors: Vec<SignVector>,
}

#[derive(Serialize)]
pub struct EquivReport {
    pub tool_version: String,
    pub input_a: String,
    pub input_b: String,
    pub equivalent: bool,
}

#[derive(Serialize)]
pub struct CensusJsonReport {
    pub tool_version: String,
    #[serde(flatten)]
    pub census: CensusReport,
}
