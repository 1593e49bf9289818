//! Serialized report documents.
//!
//! Documents are plain JSON with a fixed field order. Partial augmentations
//! are integers keyed by class id, multiplicities are `"num/den"` strings,
//! and cyclotomic values are a conductor plus `[exponent, coefficient]`
//! pairs, so nothing exact passes through floating point. Floats appear only
//! in the informational `numeric` field of character values and are rounded
//! to nine decimals.

use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::CycloSum;
use crate::psl2::{ClassId, ConjClass, GroupData};
use crate::solver::{ChainEntries, Constraints, MultiplicityTable, SearchStats, SolverReport, Verdict};
use crate::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub command: String,
    pub group: GroupInfo,
    pub parameters: Parameters,
    pub classes: Vec<ConjClass>,
    pub results: Results,
    pub timing: Timing,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupInfo {
    pub p: u64,
    pub f: u32,
    pub q: u64,
    pub d: u64,
    pub o_a: u64,
    pub o_b: u64,
}

impl From<&GroupData> for GroupInfo {
    fn from(g: &GroupData) -> Self {
        GroupInfo { p: g.p, f: g.f, q: g.q, d: g.d, o_a: g.o_a, o_b: g.o_b }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Parameters {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub r: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n: Option<u32>,
    pub characters: Vec<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub bound: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub constraints: Option<Constraints>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timing {
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Results {
    Table(TableResults),
    Solver(SolverResults),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableResults {
    pub characters: Vec<CharacterRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CharacterRow {
    pub k: u32,
    pub degree: u64,
    /// Values on the p-regular classes, in class order.
    pub values: Vec<ClassValue>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassValue {
    pub class: ClassId,
    pub value: CycloDoc,
    pub display: String,
    pub numeric: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycloDoc {
    pub conductor: u64,
    pub terms: Vec<[i64; 2]>,
}

impl TryFrom<&CycloSum> for CycloDoc {
    type Error = Error;

    fn try_from(x: &CycloSum) -> Result<Self> {
        let terms = x
            .terms()
            .map(|(e, c)| {
                c.to_i64()
                    .map(|c| [e as i64, c])
                    .ok_or_else(|| Error::Malformed(format!("coefficient {c} exceeds the report range")))
            })
            .collect::<Result<_>>()?;
        Ok(CycloDoc { conductor: x.conductor(), terms })
    }
}

impl CycloDoc {
    pub fn to_sum(&self) -> Result<CycloSum> {
        CycloSum::make(self.conductor, self.terms.iter().map(|&[e, c]| (e, c)))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverResults {
    pub verdict: Verdict,
    pub group_classes_of_order: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub stability: Option<Stability>,
    pub stats: SearchStats,
    pub chains: Vec<ChainDoc>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stability {
    pub bound: i64,
    pub identical: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainDoc {
    pub trivial: bool,
    /// Partial augmentations of `u, u^r, ...`, keyed by class id.
    pub entries: Vec<BTreeMap<ClassId, i64>>,
    pub tables: Vec<MultiplicityTable>,
}

fn round9(x: f64) -> f64 {
    let y = (x * 1e9).round() / 1e9;
    if y == 0.0 {
        0.0
    } else {
        y
    }
}

pub fn table_document(g: &GroupData, kmax: u32, elapsed_ms: u64) -> Result<ReportDocument> {
    let mut rows = Vec::new();
    for k in 0..=kmax {
        let phi = g.brauer_char(k);
        let mut values = Vec::new();
        for c in g.classes().iter().filter(|c| c.is_p_regular()) {
            let v = phi.value(c)?;
            let z = v.numeric_embed();
            values.push(ClassValue {
                class: c.id,
                value: CycloDoc::try_from(&v)?,
                display: v.to_string(),
                numeric: [round9(z.re), round9(z.im)],
            });
        }
        rows.push(CharacterRow { k, degree: phi.degree(), values });
    }
    Ok(ReportDocument {
        schema_version: SCHEMA_VERSION,
        command: "table".into(),
        group: g.into(),
        parameters: Parameters { characters: (0..=kmax).collect(), ..Default::default() },
        classes: g.classes().to_vec(),
        results: Results::Table(TableResults { characters: rows }),
        timing: Timing { elapsed_ms },
    })
}

pub fn solver_document(g: &GroupData, command: &str, rep: &SolverReport, elapsed_ms: u64) -> ReportDocument {
    let note = (rep.group_classes_of_order == 0)
        .then(|| format!("no elements of order {} in PSL(2,{})", rep.r.pow(rep.n), rep.q));
    let chains = rep
        .chains
        .iter()
        .map(|c| ChainDoc { trivial: c.trivial, entries: ChainEntries::from(&c.chain).0, tables: c.tables.clone() })
        .collect();
    ReportDocument {
        schema_version: SCHEMA_VERSION,
        command: command.into(),
        group: g.into(),
        parameters: Parameters {
            r: Some(rep.r),
            n: Some(rep.n),
            characters: rep.characters.clone(),
            bound: Some(rep.bound),
            constraints: Some(rep.constraints),
        },
        classes: g.classes().to_vec(),
        results: Results::Solver(SolverResults {
            verdict: rep.verdict,
            group_classes_of_order: rep.group_classes_of_order,
            note,
            stability: rep.stability.map(|(bound, identical)| Stability { bound, identical }),
            stats: rep.stats.clone(),
            chains,
        }),
        timing: Timing { elapsed_ms },
    }
}

/// Canonical serialized form: pretty-printed JSON with a trailing newline.
pub fn to_json(doc: &ReportDocument) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("report documents always serialize");
    s.push('\n');
    s
}

pub fn from_json(s: &str) -> std::result::Result<ReportDocument, serde_json::Error> {
    serde_json::from_str(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::{default_characters, solve, SearchOptions};

    #[test]
    fn table_document_roundtrips() {
        let g = GroupData::build(7, 1).unwrap();
        let doc = table_document(&g, 2, 0).unwrap();
        let text = to_json(&doc);
        let back = from_json(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(to_json(&back), text);
        let Results::Table(t) = &doc.results else { panic!("table results expected") };
        let phi1 = &t.characters[1];
        let inv = phi1.values.iter().find(|v| v.class == g.classes_of_order(2)[0].id).unwrap();
        assert_eq!(inv.display, "1 + 2·ζ_4^2");
        assert_eq!(inv.numeric, [-1.0, 0.0]);
        assert_eq!(inv.value.to_sum().unwrap(), CycloSum::make(4, [(0, 1), (2, 2)]).unwrap());
    }

    #[test]
    fn solver_document_roundtrips() {
        let g = GroupData::build(19, 1).unwrap();
        let chars = default_characters(&g, 3, 2);
        let rep = solve(&g, 3, 2, &chars, &SearchOptions::default()).unwrap();
        let doc = solver_document(&g, "verify", &rep, 12);
        let text = to_json(&doc);
        assert!(text.contains("\"schema_version\": 1"));
        assert!(text.contains("\"verdict\": \"verified\""));
        let back = from_json(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(to_json(&back), text);
    }

    #[test]
    fn classes_serialize_flat() {
        let g = GroupData::build(7, 1).unwrap();
        let v = serde_json::to_value(g.classes()).unwrap();
        assert_eq!(v[0], serde_json::json!({"id": 0, "family": "identity", "order": 1}));
        assert_eq!(v[3], serde_json::json!({"id": 3, "family": "split", "parameter": 1, "order": 3}));
    }
}
