//! Census machinery: per-class records, extremal verdicts, and the
//! hypothesis check with exact equality detection.

use std::cmp::Ordering;

use num_bigint::BigUint;
use num_traits::Num;
use serde_json::{json, Value};

use crate::bounds::theorem5_constants;
use crate::canon::canonical_form;
use crate::enumerate::{enumerate_regular, RegularClassSpec};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6::to_graph6;
use crate::isets::count_independent_sets;
use crate::numeric::{compare_to_extremal_bound, extremal_ratio};

/// One isomorphism class in a census.
#[derive(Clone, Debug, PartialEq)]
pub struct CensusRecord {
    pub graph6: String,
    pub n: usize,
    pub d: usize,
    pub i_count: BigUint,
    /// i^(2d/n) / (2^(d+1) - 1); at most 1, with 1 exactly on Alon graphs.
    pub ratio: f64,
    pub is_alon: bool,
}

impl CensusRecord {
    pub fn to_json(&self) -> Value {
        json!({
            "graph6": self.graph6,
            "n": self.n,
            "d": self.d,
            "i": self.i_count.to_string(),
            "ratio": self.ratio,
            "is_alon": self.is_alon,
        })
    }

    pub fn from_json(v: &Value) -> Option<CensusRecord> {
        Some(CensusRecord {
            graph6: v.get("graph6")?.as_str()?.to_string(),
            n: v.get("n")?.as_u64()? as usize,
            d: v.get("d")?.as_u64()? as usize,
            i_count: BigUint::from_str_radix(v.get("i")?.as_str()?, 10).ok()?,
            ratio: v.get("ratio")?.as_f64()?,
            is_alon: v.get("is_alon")?.as_bool()?,
        })
    }

    pub const CSV_HEADER: &'static str = "graph6,n,d,i,ratio,is_alon";

    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.graph6, self.n, self.d, self.i_count, self.ratio, self.is_alon
        )
    }
}

/// Whether every connected component is a K_{d,d}. Components of a d-regular
/// graph are d-regular, so size 2d plus bipartiteness forces K_{d,d}.
pub fn is_alon_graph(g: &Graph, d: usize) -> bool {
    debug_assert_eq!(g.is_regular(), Some(d));
    g.connected_components()
        .into_iter()
        .all(|c| c.len() == 2 * d && g.bipartition_on(c).is_some())
}

/// Builds the census record for one d-regular graph and checks the bound
/// invariant exactly: i(G)^2d <= (2^(d+1) - 1)^n, equality only on Alon
/// graphs.
pub fn census_record(g: &Graph, d: usize) -> Result<CensusRecord> {
    if g.is_regular() != Some(d) {
        return Err(Error::Contract(format!(
            "census expects a {d}-regular graph"
        )));
    }
    let i_count = count_independent_sets(g);
    let is_alon = is_alon_graph(g, d);
    match compare_to_extremal_bound(&i_count, g.n(), d) {
        Ordering::Greater => {
            return Err(Error::VerificationFailed(format!(
                "extremal bound violated: i = {i_count} on {}",
                to_graph6(g)?
            )));
        }
        Ordering::Equal if !is_alon => {
            return Err(Error::VerificationFailed(format!(
                "bound attained off the Alon graph: {}",
                to_graph6(g)?
            )));
        }
        Ordering::Less if is_alon => {
            return Err(Error::VerificationFailed(format!(
                "Alon graph misses its own bound: {}",
                to_graph6(g)?
            )));
        }
        _ => {}
    }
    let ratio = extremal_ratio(&i_count, g.n(), d);
    Ok(CensusRecord {
        graph6: to_graph6(g)?,
        n: g.n(),
        d,
        i_count,
        ratio,
        is_alon,
    })
}

/// Extremal summary of a census.
#[derive(Clone, Debug)]
pub struct CensusVerdict {
    pub n: usize,
    pub d: usize,
    pub connected_only: bool,
    pub class_count: usize,
    pub maximizers: Vec<String>,
    pub max_i: BigUint,
    pub unique_maximizer: bool,
    pub max_is_alon: bool,
    pub runner_up_i: Option<BigUint>,
    pub runner_up_gap: Option<BigUint>,
    /// Largest ratio among non-Alon classes, for comparison with d_uniq.
    pub max_nonalon_ratio: Option<f64>,
    pub d_uniq: Option<f64>,
}

impl CensusVerdict {
    pub fn to_json(&self) -> Value {
        json!({
            "verdict": {
                "n": self.n,
                "d": self.d,
                "scope": if self.connected_only { "connected" } else { "all" },
                "classes": self.class_count,
                "maximizers": self.maximizers,
                "max_i": self.max_i.to_string(),
                "unique_maximizer": self.unique_maximizer,
                "max_is_alon": self.max_is_alon,
                "runner_up_i": self.runner_up_i.as_ref().map(|x| x.to_string()),
                "runner_up_gap": self.runner_up_gap.as_ref().map(|x| x.to_string()),
                "max_nonalon_ratio": self.max_nonalon_ratio,
                "d_uniq": self.d_uniq,
            }
        })
    }
}

#[derive(Clone, Debug)]
pub struct CensusOutcome {
    pub records: Vec<CensusRecord>,
    pub verdict: CensusVerdict,
}

/// Enumerates the class, counts every member, sorts by descending count with
/// canonical form breaking ties, and renders the verdict. When the scope can
/// contain the Alon graph (2d | n and either the composed census or n = 2d),
/// a non-Alon or non-unique maximizer is an error: it would refute the
/// uniqueness statement the census exists to witness.
pub fn run_census(spec: &RegularClassSpec) -> Result<CensusOutcome> {
    let graphs = enumerate_regular(spec)?;
    let mut records = Vec::with_capacity(graphs.len());
    for g in &graphs {
        records.push(census_record(g, spec.d)?);
    }
    verdict_from_records(spec, records)
}

/// Assembles the sorted outcome from precomputed records (the parallel CLI
/// path funnels through here too, keeping output order scheduling-free).
pub fn verdict_from_records(
    spec: &RegularClassSpec,
    mut records: Vec<CensusRecord>,
) -> Result<CensusOutcome> {
    if records.is_empty() {
        return Err(Error::VerificationFailed(format!(
            "census for n={}, d={} is empty",
            spec.n, spec.d
        )));
    }
    let mut keyed: Vec<(BigUint, crate::canon::CanonicalForm)> = Vec::new();
    for r in &records {
        let g = crate::graph6::from_graph6(&r.graph6)?;
        keyed.push((r.i_count.clone(), canonical_form(&g)?));
    }
    let mut order: Vec<usize> = (0..records.len()).collect();
    order.sort_by(|&x, &y| {
        keyed[y]
            .0
            .cmp(&keyed[x].0)
            .then(keyed[x].1.cmp(&keyed[y].1))
    });
    records = order.into_iter().map(|i| records[i].clone()).collect();

    let max_i = records[0].i_count.clone();
    let maximizers: Vec<String> = records
        .iter()
        .take_while(|r| r.i_count == max_i)
        .map(|r| r.graph6.clone())
        .collect();
    let unique_maximizer = maximizers.len() == 1;
    let max_is_alon = records[0].is_alon;
    let runner_up_i = records
        .iter()
        .find(|r| r.i_count < max_i)
        .map(|r| r.i_count.clone());
    let runner_up_gap = runner_up_i.as_ref().map(|r| &max_i - r);

    let alon_in_scope = 2 * spec.d != 0
        && spec.n.is_multiple_of(2 * spec.d)
        && (!spec.connected_only || spec.n == 2 * spec.d);
    if alon_in_scope && !(unique_maximizer && max_is_alon) {
        return Err(Error::VerificationFailed(format!(
            "expected the Alon graph to be the unique maximizer for n={}, d={}",
            spec.n, spec.d
        )));
    }

    let max_nonalon_ratio = records
        .iter()
        .filter(|r| !r.is_alon)
        .map(|r| r.ratio)
        .fold(None, |acc: Option<f64>, x| {
            Some(acc.map_or(x, |a| a.max(x)))
        });

    let verdict = CensusVerdict {
        n: spec.n,
        d: spec.d,
        connected_only: spec.connected_only,
        class_count: records.len(),
        maximizers,
        max_i,
        unique_maximizer,
        max_is_alon,
        runner_up_i,
        runner_up_gap,
        max_nonalon_ratio,
        d_uniq: u32::try_from(spec.d)
            .ok()
            .and_then(|d| theorem5_constants(d).ok())
            .map(|r| r.d_uniq),
    };
    Ok(CensusOutcome { records, verdict })
}

/// Hypothesis check for one graph: i(G) against (2^(d+1) - 1)^(n/2d), decided
/// by exact integer comparison of the 2d-th powers.
#[derive(Clone, Debug)]
pub struct HypothesisReport {
    pub graph6: String,
    pub i_count: BigUint,
    pub within_bound: bool,
    pub attains_bound: bool,
    pub is_alon: bool,
}

impl HypothesisReport {
    pub fn to_json(&self) -> Value {
        json!({
            "graph6": self.graph6,
            "i": self.i_count.to_string(),
            "within_bound": self.within_bound,
            "attains_bound": self.attains_bound,
            "is_alon": self.is_alon,
        })
    }
}

pub fn hypothesis_report(g: &Graph) -> Result<HypothesisReport> {
    let Some(d) = g.is_regular() else {
        return Err(Error::Contract(
            "hypothesis check requires a regular graph".into(),
        ));
    };
    if d == 0 || g.n() == 0 {
        return Err(Error::Contract("hypothesis check needs d >= 1".into()));
    }
    let i_count = count_independent_sets(g);
    let cmp = compare_to_extremal_bound(&i_count, g.n(), d);
    Ok(HypothesisReport {
        graph6: to_graph6(g)?,
        i_count,
        within_bound: cmp != Ordering::Greater,
        attains_bound: cmp == Ordering::Equal,
        is_alon: is_alon_graph(g, d),
    })
}
