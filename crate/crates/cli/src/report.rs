//! JSON reports. Every field except `wall_time_us` is a function of the
//! inputs alone, so reports compare byte for byte across thread counts once
//! that field is dropped.

use std::collections::BTreeMap;
use std::time::Instant;

use convinv_core::distances::{
    Certificate, DistanceProfile, DistanceResult, Exactness, StabilizationBound,
};
use convinv_core::maps::{MapVerdict, StrongVerdict};
use convinv_core::{CodeParams, PolyVector, Polynomial};
use serde::{Deserialize, Serialize};

/// Result of one `dist` or `oracle` invocation. Exactly one group of the
/// optional value fields is present, depending on `kind`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree_bound: Option<usize>,
    pub params: CodeParams,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<Exactness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j_used: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    /// Windowed values `j → d_j^r` up to the stabilization index.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub profile: Option<BTreeMap<usize, usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub holds: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<StabilizationBound>,
    pub wall_time_us: u64,
}

impl Report {
    pub fn new(kind: &str, params: CodeParams) -> Report {
        Report {
            kind: kind.into(),
            r: None,
            j: None,
            degree_bound: None,
            params,
            value: None,
            exact: None,
            j_used: None,
            certificate: None,
            profile: None,
            holds: None,
            bound: None,
            wall_time_us: 0,
        }
    }

    pub fn with_distance(mut self, d: DistanceResult) -> Report {
        self.value = Some(d.value);
        self.exact = Some(d.exact);
        self.j_used = d.j_used;
        self.certificate = Some(d.certificate);
        self
    }

    pub fn with_profile(self, p: DistanceProfile) -> Report {
        let mut out = self.with_distance(p.limit);
        out.profile = Some(p.values);
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "data")]
pub enum Verdict {
    Plain(MapVerdict),
    Strong(StrongVerdict),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapReport {
    pub check: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j: Option<usize>,
    pub domain: CodeParams,
    pub codomain: CodeParams,
    pub verdict: Verdict,
    pub wall_time_us: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InfoReport {
    pub params: CodeParams,
    pub row_degrees: Vec<usize>,
    pub basis: Vec<PolyVector>,
    pub invariant_factors: Vec<Polynomial>,
    pub stabilization_bounds: Vec<StabilizationBound>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlidingReport {
    pub params: CodeParams,
    pub j: usize,
    pub primed: bool,
    pub rows: Vec<Vec<u32>>,
}

pub fn elapsed_us(start: Instant) -> u64 {
    start.elapsed().as_micros().min(u64::MAX as u128) as u64
}

/// Remove `wall_time_us` from a JSON document, for comparisons.
pub fn without_wall_time(json: &str) -> serde_json::Result<String> {
    let mut value: serde_json::Value = serde_json::from_str(json)?;
    if let Some(obj) = value.as_object_mut() {
        obj.remove("wall_time_us");
    }
    serde_json::to_string(&value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_round_trips() {
        let limit = DistanceResult {
            value: 2,
            exact: Exactness::Proven,
            j_used: Some(1),
            certificate: Certificate::Messages(vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0]]),
        };
        let profile = DistanceProfile {
            r: 2,
            values: BTreeMap::from([(0, 1), (1, 2)]),
            limit,
        };
        let params = CodeParams {
            n: 2,
            k: 2,
            delta: 1,
            delta1: 1,
            noncat: false,
        };
        let mut report = Report::new("limit", params).with_profile(profile);
        report.r = Some(2);
        report.wall_time_us = 17;
        let text = serde_json::to_string(&report).unwrap();
        let back: Report = serde_json::from_str(&text).unwrap();
        assert_eq!(back, report);
        assert!(!without_wall_time(&text).unwrap().contains("wall_time_us"));

        let mut flag = Report::new("mds", params);
        flag.holds = Some(true);
        let text = serde_json::to_string(&flag).unwrap();
        assert_eq!(serde_json::from_str::<Report>(&text).unwrap(), flag);
    }
}
