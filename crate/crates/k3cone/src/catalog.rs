//! Catalog of Fano-mirror lattice facts: which families carry a nontrivial
//! Galois action on the Picard lattice of the mirror K3 fibration, which
//! Picard lattices are asserted 2-reflective, and the 105/13/92 bookkeeping.
//!
//! The catalog is a claims ledger: it stores only externally sourced facts,
//! each with a mandatory provenance citation, and the cross-check runs the
//! Vinberg decision against every entry that carries an explicit lattice.

use std::fmt;
use std::path::Path;

use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::lattice::GramLattice;
use crate::vinberg::{run_vinberg, Verdict, VinbergBudget};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwoReflectiveStatus {
    Asserted2Reflective,
    AssertedNot2Reflective,
    Unknown,
}

impl TwoReflectiveStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            TwoReflectiveStatus::Asserted2Reflective => "ASSERTED_2REFLECTIVE",
            TwoReflectiveStatus::AssertedNot2Reflective => "ASSERTED_NOT_2REFLECTIVE",
            TwoReflectiveStatus::Unknown => "UNKNOWN",
        }
    }

    fn parse(s: &str) -> Result<Self> {
        match s {
            "ASSERTED_2REFLECTIVE" => Ok(TwoReflectiveStatus::Asserted2Reflective),
            "ASSERTED_NOT_2REFLECTIVE" => Ok(TwoReflectiveStatus::AssertedNot2Reflective),
            "UNKNOWN" => Ok(TwoReflectiveStatus::Unknown),
            other => Err(Error::Parse(format!("unknown status `{other}`"))),
        }
    }
}

impl fmt::Display for TwoReflectiveStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One Fano family (Mori-Mukai notation for Picard rank >= 2, explicit
/// weighted-hypersurface labels for the rank-1 sextics).
#[derive(Debug, Clone)]
pub struct FanoEntry {
    pub label: String,
    pub galois_trivial: bool,
    pub status: TwoReflectiveStatus,
    pub provenance: String,
    pub lattice: Option<GramLattice>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CatalogSummary {
    pub total: u64,
    pub excluded: u64,
    pub infinite: u64,
}

#[derive(Debug, Clone)]
pub struct Catalog {
    pub entries: Vec<FanoEntry>,
    pub summary: CatalogSummary,
}

const GALOIS_NONTRIVIAL_LABELS: [&str; 7] = ["2.12", "4.3", "6.1", "7.1", "8.1", "9.1", "10.1"];

const TWO_REFLECTIVE_LABELS: [&str; 6] = [
    "2.1",
    "3.2",
    "3.6",
    "4.9",
    "X6 in P(1,1,1,1,3)",
    "X6 in P(1,1,1,2,3)",
];

const PROVENANCE_GALOIS: &str =
    "Galois action on the Picard lattice of the mirror K3 fibration, from the \
     Landau-Ginzburg model computations of Przyjalkowski (2018) and \
     Doran-Harder-Katzarkov-Ovcharenko-Przyjalkowski (2023)";

const PROVENANCE_2REFLECTIVE: &str =
    "Picard lattice of the mirror K3 fibration is 2-reflective by Nikulin's \
     classification of 2-reflective hyperbolic lattices";

const PROVENANCE_QUARTIC: &str =
    "mirror of the quartic 3-fold: the pencil of quartic K3 surfaces has Picard \
     lattice <-4> + U + (-E8)^2 with trivial Galois action, not 2-reflective by \
     Nikulin's classification";

/// The shipped catalog: the seven Galois-nontrivial families, the six
/// 2-reflective families, the quartic-mirror example with its explicit
/// lattice, and the 105 = 13 + 92 summary.
pub fn default_catalog() -> Catalog {
    let mut entries = Vec::new();
    for label in GALOIS_NONTRIVIAL_LABELS {
        entries.push(FanoEntry {
            label: label.to_string(),
            galois_trivial: false,
            status: TwoReflectiveStatus::Unknown,
            provenance: PROVENANCE_GALOIS.to_string(),
            lattice: None,
        });
    }
    for label in TWO_REFLECTIVE_LABELS {
        entries.push(FanoEntry {
            label: label.to_string(),
            galois_trivial: true,
            status: TwoReflectiveStatus::Asserted2Reflective,
            provenance: PROVENANCE_2REFLECTIVE.to_string(),
            lattice: None,
        });
    }
    let quartic_lattice = GramLattice::from_blocks(
        &["DIAG(-4)", "U", "E8MINUS", "E8MINUS"]
            .iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>(),
        Some("quartic-mirror".to_string()),
    )
    .expect("quartic mirror lattice is well-formed");
    entries.push(FanoEntry {
        label: "X4 in P^4".to_string(),
        galois_trivial: true,
        status: TwoReflectiveStatus::AssertedNot2Reflective,
        provenance: PROVENANCE_QUARTIC.to_string(),
        lattice: Some(quartic_lattice),
    });
    Catalog {
        entries,
        summary: CatalogSummary {
            total: 105,
            excluded: 13,
            infinite: 92,
        },
    }
}

impl Catalog {
    pub fn find(&self, label: &str) -> Result<&FanoEntry> {
        self.entries
            .iter()
            .find(|e| e.label == label)
            .ok_or_else(|| Error::EntryNotFound(label.to_string()))
    }

    /// The excluded count must equal Galois-nontrivial plus asserted
    /// 2-reflective entries, and total = excluded + infinite.
    pub fn arithmetic_consistent(&self) -> bool {
        let galois_nontrivial = self.entries.iter().filter(|e| !e.galois_trivial).count() as u64;
        let two_reflective = self
            .entries
            .iter()
            .filter(|e| e.status == TwoReflectiveStatus::Asserted2Reflective)
            .count() as u64;
        galois_nontrivial + two_reflective == self.summary.excluded
            && self.summary.total == self.summary.excluded + self.summary.infinite
    }

    fn validate(&self) -> Result<()> {
        let mut seen = std::collections::BTreeSet::new();
        for e in &self.entries {
            if !seen.insert(e.label.clone()) {
                return Err(Error::DuplicateLabel(e.label.clone()));
            }
            if e.status != TwoReflectiveStatus::Unknown && e.provenance.trim().is_empty() {
                return Err(Error::Parse(format!(
                    "entry `{}` asserts a status without provenance",
                    e.label
                )));
            }
        }
        Ok(())
    }

    pub fn to_value(&self) -> Value {
        let mut items: Vec<Value> = self
            .entries
            .iter()
            .map(|e| {
                let mut obj = Map::new();
                obj.insert("galois_trivial".into(), Value::Bool(e.galois_trivial));
                obj.insert("label".into(), Value::String(e.label.clone()));
                if let Some(lat) = &e.lattice {
                    obj.insert("lattice".into(), lat.to_definition_value());
                }
                obj.insert("provenance".into(), Value::String(e.provenance.clone()));
                obj.insert(
                    "status".into(),
                    Value::String(e.status.as_str().to_string()),
                );
                Value::Object(obj)
            })
            .collect();
        let mut summary = Map::new();
        summary.insert(
            "excluded".into(),
            Value::Number(self.summary.excluded.into()),
        );
        summary.insert(
            "infinite".into(),
            Value::Number(self.summary.infinite.into()),
        );
        summary.insert("total".into(), Value::Number(self.summary.total.into()));
        items.push(Value::Object(summary));
        Value::Array(items)
    }

    /// Canonical text form; `save(load(x))` is byte-identical on canonical
    /// input.
    pub fn to_canonical_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("valid JSON value");
        s.push('\n');
        s
    }
}

pub fn load_catalog_str(text: &str) -> Result<Catalog> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("catalog: {e}")))?;
    let items = value
        .as_array()
        .ok_or_else(|| Error::Parse("catalog must be a JSON array".into()))?;
    let mut entries = Vec::new();
    let mut summary: Option<CatalogSummary> = None;
    for (i, item) in items.iter().enumerate() {
        let obj = item
            .as_object()
            .ok_or_else(|| Error::Parse(format!("catalog item {i} is not an object")))?;
        if obj.contains_key("total") {
            if summary.is_some() {
                return Err(Error::Parse(
                    "catalog has more than one summary object".into(),
                ));
            }
            let get = |k: &str| -> Result<u64> {
                obj.get(k)
                    .and_then(Value::as_u64)
                    .ok_or_else(|| Error::Parse(format!("summary needs integer `{k}`")))
            };
            summary = Some(CatalogSummary {
                total: get("total")?,
                excluded: get("excluded")?,
                infinite: get("infinite")?,
            });
            continue;
        }
        let label = obj
            .get("label")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse(format!("catalog item {i} has no `label`")))?
            .to_string();
        let galois_trivial = obj
            .get("galois_trivial")
            .and_then(Value::as_bool)
            .ok_or_else(|| Error::Parse(format!("entry `{label}` needs `galois_trivial`")))?;
        let status = TwoReflectiveStatus::parse(
            obj.get("status")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::Parse(format!("entry `{label}` needs `status`")))?,
        )?;
        let provenance = obj
            .get("provenance")
            .and_then(Value::as_str)
            .unwrap_or_default()
            .to_string();
        let lattice = obj
            .get("lattice")
            .map(GramLattice::from_definition_value)
            .transpose()?;
        entries.push(FanoEntry {
            label,
            galois_trivial,
            status,
            provenance,
            lattice,
        });
    }
    let summary = summary.ok_or_else(|| Error::Parse("catalog has no summary object".into()))?;
    let catalog = Catalog { entries, summary };
    catalog.validate()?;
    Ok(catalog)
}

pub fn load_catalog(path: &Path) -> Result<Catalog> {
    let text = std::fs::read_to_string(path)?;
    load_catalog_str(&text)
}

/// The shipped catalog file, embedded.
pub const DEFAULT_CATALOG_JSON: &str = include_str!("../data/catalog.json");

pub fn load_default_catalog() -> Result<Catalog> {
    load_catalog_str(DEFAULT_CATALOG_JSON)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Finding {
    Consistent,
    Contradiction,
    Inconclusive,
    SkippedNoLattice,
    NoAssertion,
}

impl Finding {
    pub fn as_str(&self) -> &'static str {
        match self {
            Finding::Consistent => "CONSISTENT",
            Finding::Contradiction => "CONTRADICTION",
            Finding::Inconclusive => "INCONCLUSIVE",
            Finding::SkippedNoLattice => "SKIPPED_NO_LATTICE",
            Finding::NoAssertion => "NO_ASSERTION",
        }
    }
}

#[derive(Debug, Clone)]
pub struct CrossCheckLine {
    pub label: String,
    pub finding: Finding,
    pub verdict: Option<Verdict>,
}

#[derive(Debug, Clone)]
pub struct CrossCheckReport {
    pub lines: Vec<CrossCheckLine>,
}

impl CrossCheckReport {
    pub fn contradictions(&self) -> usize {
        self.lines
            .iter()
            .filter(|l| l.finding == Finding::Contradiction)
            .count()
    }
}

/// Runs the Vinberg decision against every entry that has a lattice and
/// compares the outcome with the asserted status.
pub fn cross_check(catalog: &Catalog, budget: &VinbergBudget) -> Result<CrossCheckReport> {
    let mut lines = Vec::new();
    for entry in &catalog.entries {
        let Some(lattice) = &entry.lattice else {
            lines.push(CrossCheckLine {
                label: entry.label.clone(),
                finding: Finding::SkippedNoLattice,
                verdict: None,
            });
            continue;
        };
        let result = run_vinberg(lattice, None, budget)?;
        let finding = match (entry.status, result.verdict) {
            (TwoReflectiveStatus::Asserted2Reflective, Verdict::TwoReflective) => {
                Finding::Consistent
            }
            (TwoReflectiveStatus::Asserted2Reflective, Verdict::NotDetected) => {
                Finding::Inconclusive
            }
            (TwoReflectiveStatus::AssertedNot2Reflective, Verdict::TwoReflective) => {
                Finding::Contradiction
            }
            (TwoReflectiveStatus::AssertedNot2Reflective, Verdict::NotDetected) => {
                Finding::Consistent
            }
            (TwoReflectiveStatus::Unknown, _) => Finding::NoAssertion,
        };
        lines.push(CrossCheckLine {
            label: entry.label.clone(),
            finding,
            verdict: Some(result.verdict),
        });
    }
    Ok(CrossCheckReport { lines })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::StandardLattice;
    use crate::linalg::int;

    #[test]
    fn default_catalog_contents() {
        let cat = default_catalog();
        let nontrivial: Vec<&str> = cat
            .entries
            .iter()
            .filter(|e| !e.galois_trivial)
            .map(|e| e.label.as_str())
            .collect();
        assert_eq!(nontrivial, GALOIS_NONTRIVIAL_LABELS.to_vec());
        let reflective: Vec<&str> = cat
            .entries
            .iter()
            .filter(|e| e.status == TwoReflectiveStatus::Asserted2Reflective)
            .map(|e| e.label.as_str())
            .collect();
        assert_eq!(reflective, TWO_REFLECTIVE_LABELS.to_vec());
        assert!(cat.arithmetic_consistent());
        assert_eq!(cat.summary.total - cat.summary.excluded, 92);

        let quartic = cat.find("X4 in P^4").unwrap();
        assert_eq!(quartic.status, TwoReflectiveStatus::AssertedNot2Reflective);
        let lattice = quartic.lattice.as_ref().unwrap();
        assert_eq!(lattice.rank(), 19);
        assert_eq!(lattice.determinant(), int(4));
    }

    #[test]
    fn shipped_file_matches_default() {
        let cat = load_default_catalog().unwrap();
        assert_eq!(cat.to_canonical_string(), DEFAULT_CATALOG_JSON);
        assert_eq!(
            cat.to_canonical_string(),
            default_catalog().to_canonical_string()
        );
    }

    #[test]
    fn roundtrip_is_canonical() {
        let text = default_catalog().to_canonical_string();
        let reloaded = load_catalog_str(&text).unwrap();
        assert_eq!(reloaded.to_canonical_string(), text);
    }

    #[test]
    fn duplicate_labels_rejected() {
        let mut cat = default_catalog();
        let dup = cat.entries[0].clone();
        cat.entries.push(dup);
        let text = cat.to_canonical_string();
        assert!(matches!(
            load_catalog_str(&text),
            Err(Error::DuplicateLabel(_))
        ));
    }

    #[test]
    fn missing_provenance_rejected() {
        let mut cat = default_catalog();
        for e in cat.entries.iter_mut() {
            if e.status == TwoReflectiveStatus::Asserted2Reflective {
                e.provenance = String::new();
            }
        }
        let text = cat.to_canonical_string();
        assert!(load_catalog_str(&text).is_err());
    }

    #[test]
    fn cross_check_synthetic_entries() {
        let u = GramLattice::standard(&StandardLattice::U).unwrap();
        let catalog = Catalog {
            entries: vec![
                FanoEntry {
                    label: "synthetic-consistent".into(),
                    galois_trivial: true,
                    status: TwoReflectiveStatus::Asserted2Reflective,
                    provenance: "synthetic test entry".into(),
                    lattice: Some(u.clone()),
                },
                FanoEntry {
                    label: "synthetic-contradiction".into(),
                    galois_trivial: true,
                    status: TwoReflectiveStatus::AssertedNot2Reflective,
                    provenance: "synthetic test entry".into(),
                    lattice: Some(u),
                },
                FanoEntry {
                    label: "no-lattice".into(),
                    galois_trivial: true,
                    status: TwoReflectiveStatus::Unknown,
                    provenance: "synthetic test entry".into(),
                    lattice: None,
                },
            ],
            summary: CatalogSummary {
                total: 3,
                excluded: 0,
                infinite: 3,
            },
        };
        let report = cross_check(&catalog, &VinbergBudget::default()).unwrap();
        assert_eq!(report.lines[0].finding, Finding::Consistent);
        assert_eq!(report.lines[1].finding, Finding::Contradiction);
        assert_eq!(report.lines[2].finding, Finding::SkippedNoLattice);
        assert_eq!(report.contradictions(), 1);
    }
}
