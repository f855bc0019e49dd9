//! JSON documents: barcodes, complexes, monomer specs, classifications.

use std::path::Path;

use serde::{Deserialize, Serialize};

use flowtopo_core::complex::CliqueComplex;
use flowtopo_core::convection::{CycleClassification, RepresentativeShape};
use flowtopo_core::filtration::Direction;
use flowtopo_core::monomer::MonomerModel;
use flowtopo_core::persistence::PersistenceBarcode;

use crate::error::{CliError, CliResult};
use crate::io::write_text;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DirectionName {
    Descending,
    Ascending,
}

impl From<Direction> for DirectionName {
    fn from(d: Direction) -> Self {
        match d {
            Direction::Descending => Self::Descending,
            Direction::Ascending => Self::Ascending,
        }
    }
}

impl From<DirectionName> for Direction {
    fn from(d: DirectionName) -> Self {
        match d {
            DirectionName::Descending => Self::Descending,
            DirectionName::Ascending => Self::Ascending,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BarRecord {
    pub dim: usize,
    pub birth: f64,
    pub death: f64,
    pub essential: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub representative: Option<Vec<(usize, usize)>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BarcodeDocument {
    pub direction: DirectionName,
    pub eps_a: f64,
    pub eps_b: f64,
    pub bars: Vec<BarRecord>,
}

impl BarcodeDocument {
    pub fn from_barcode(b: &PersistenceBarcode) -> Self {
        Self {
            direction: b.bounds.direction.into(),
            eps_a: b.bounds.eps_a,
            eps_b: b.bounds.eps_b,
            bars: b
                .bars
                .iter()
                .map(|bar| BarRecord {
                    dim: bar.dimension,
                    birth: bar.birth,
                    death: bar.death,
                    essential: bar.essential,
                    representative: bar.representative.as_ref().map(|c| c.edges()),
                })
                .collect(),
        }
    }
}

fn to_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable document");
    s.push('\n');
    s
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> CliResult<T> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse {
        path: path.to_path_buf(),
        line: e.line() as u64,
        message: e.to_string(),
    })
}

pub fn write_barcode(path: &Path, b: &PersistenceBarcode) -> CliResult<()> {
    write_text(path, &to_pretty(&BarcodeDocument::from_barcode(b)))
}

pub fn read_barcode(path: &Path) -> CliResult<BarcodeDocument> {
    read_json(path)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexDocument {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
    pub triangles: Vec<(usize, usize, usize)>,
}

pub fn write_complex(path: &Path, c: &CliqueComplex) -> CliResult<()> {
    let doc = ComplexDocument {
        vertices: c.num_vertices(),
        edges: c.edges().to_vec(),
        triangles: c.triangles().to_vec(),
    };
    write_text(path, &to_pretty(&doc))
}

/// Monomer spec as given on disk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonomerSpec {
    #[serde(rename = "L1")]
    pub l1: usize,
    #[serde(rename = "L2")]
    pub l2: usize,
    pub gamma_in: f64,
    pub gamma_ex: f64,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub gamma_in_reverse: f64,
}

fn is_zero(x: &f64) -> bool {
    *x == 0.0
}

impl MonomerSpec {
    pub fn model(&self) -> MonomerModel {
        MonomerModel {
            l1: self.l1,
            l2: self.l2,
            gamma_in: self.gamma_in,
            gamma_ex: self.gamma_ex,
            gamma_in_reverse: self.gamma_in_reverse,
        }
    }
}

pub fn read_monomer(path: &Path) -> CliResult<MonomerSpec> {
    read_json(path)
}

#[derive(Debug, Serialize)]
struct BarEntry {
    bar: usize,
    birth: f64,
    death: f64,
    essential: bool,
    representative: Vec<(usize, usize)>,
    /// Loop walk, absent for composite representatives.
    #[serde(skip_serializing_if = "Option::is_none")]
    loop_vertices: Option<Vec<usize>>,
    convection_consistent: bool,
    matched_cycles: Vec<usize>,
    one_to_one: bool,
}

#[derive(Debug, Serialize)]
struct CycleEntry {
    cycle: usize,
    vertices: Vec<usize>,
    min_flow: f64,
    is_boundary: Option<bool>,
    matched_bars: Vec<usize>,
}

#[derive(Debug, Serialize)]
struct ClassificationDocument {
    truncated: bool,
    bars: Vec<BarEntry>,
    cycles: Vec<CycleEntry>,
}

pub fn write_classification(
    path: &Path,
    barcode: &PersistenceBarcode,
    c: &CycleClassification,
    truncated: bool,
) -> CliResult<()> {
    let doc = ClassificationDocument {
        truncated,
        bars: c
            .bars
            .iter()
            .map(|b| {
                let bar = &barcode.bars[b.bar];
                BarEntry {
                    bar: b.bar,
                    birth: bar.birth,
                    death: bar.death,
                    essential: bar.essential,
                    representative: b.representative.edges(),
                    loop_vertices: match &b.shape {
                        RepresentativeShape::Loop { vertices, .. } => Some(vertices.clone()),
                        RepresentativeShape::Composite => None,
                    },
                    convection_consistent: b.convection_consistent(),
                    matched_cycles: b.matched_cycles.clone(),
                    one_to_one: b.one_to_one,
                }
            })
            .collect(),
        cycles: c
            .cycles
            .iter()
            .enumerate()
            .map(|(k, s)| CycleEntry {
                cycle: k,
                vertices: s.cycle.vertices.clone(),
                min_flow: s.cycle.min_flow,
                is_boundary: s.is_boundary,
                matched_bars: s.matched_bars.clone(),
            })
            .collect(),
    };
    write_text(path, &to_pretty(&doc))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomer_spec_parses() {
        let spec: MonomerSpec = serde_json::from_str(r#"{"L1":4,"L2":4,"gamma_in":0.01,"gamma_ex":1.0}"#).unwrap();
        assert_eq!(spec.model(), MonomerModel::new(4, 4, 0.01, 1.0));
        assert!(serde_json::from_str::<MonomerSpec>(r#"{"L1":4,"L2":4,"gamma_in":0.01}"#).is_err());
        let back = serde_json::to_string(&spec).unwrap();
        assert_eq!(back, r#"{"L1":4,"L2":4,"gamma_in":0.01,"gamma_ex":1.0}"#);
    }

    #[test]
    fn bar_without_representative_omits_field() {
        let r = BarRecord {
            dim: 0,
            birth: 1.0,
            death: 0.5,
            essential: false,
            representative: None,
        };
        let s = serde_json::to_string(&r).unwrap();
        assert!(!s.contains("representative"));
        assert_eq!(serde_json::from_str::<BarRecord>(&s).unwrap(), r);
    }
}
