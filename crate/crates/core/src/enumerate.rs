//! Exhaustive generation of d-regular graphs up to isomorphism.
//!
//! Connected graphs are generated by backtracking: the active vertex is
//! always the least-index unsaturated one, its new neighbors are chosen in
//! increasing order, and an untouched vertex may only be the least untouched
//! label. Under those rules every labeled graph whose labels follow first-
//! touch order is built exactly once, every isomorphism class has at least
//! one such labeling, and canonical-form deduplication removes the rest.
//! Disconnected classes are assembled as multisets of connected components.

use std::collections::BTreeMap;

use crate::canon::{canonical_form, canonical_form_with_labeling, relabel, CanonicalForm};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6::from_graph6;

/// A census class: all d-regular graphs on n vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RegularClassSpec {
    pub n: usize,
    pub d: usize,
    pub connected_only: bool,
}

impl RegularClassSpec {
    pub fn new(n: usize, d: usize, connected_only: bool) -> RegularClassSpec {
        RegularClassSpec {
            n,
            d,
            connected_only,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.d >= self.n {
            return Err(Error::Domain(format!(
                "regular class needs 0 <= d < n, got n={}, d={}",
                self.n, self.d
            )));
        }
        if !(self.n * self.d).is_multiple_of(2) {
            return Err(Error::Parity {
                n: self.n,
                d: self.d,
            });
        }
        let limit = generation_limit(self.d);
        if self.n > limit {
            return Err(Error::Capacity {
                op: "enumerate_regular",
                n: self.n,
                limit,
            });
        }
        Ok(())
    }
}

/// Practical vertex caps; beyond these the backtracking search is too slow.
fn generation_limit(d: usize) -> usize {
    match d {
        0..=2 => 16,
        3 => 14,
        _ => 10,
    }
}

/// One canonically labeled representative per isomorphism class, ordered by
/// canonical form. Identical spec always yields the identical sequence.
pub fn enumerate_regular(spec: &RegularClassSpec) -> Result<Vec<Graph>> {
    spec.validate()?;
    if spec.connected_only {
        return Ok(connected_classes(spec.n, spec.d)?.into_values().collect());
    }
    // All graphs: partition n into component sizes and pick a multiset of
    // connected classes per size.
    let mut per_size: Vec<Vec<Graph>> = vec![Vec::new(); spec.n + 1];
    for (s, slot) in per_size.iter_mut().enumerate().skip(spec.d + 1) {
        if (s * spec.d).is_multiple_of(2) {
            *slot = connected_classes(s, spec.d)?.into_values().collect();
        }
    }
    let mut acc: BTreeMap<CanonicalForm, Graph> = BTreeMap::new();
    let mut parts: Vec<(usize, usize)> = Vec::new();
    compose(spec.n, spec.n, &per_size, &mut parts, &mut |parts| {
        let mut g = Graph::empty(0)?;
        for &(size, idx) in parts {
            g = g.disjoint_union(&per_size[size][idx])?;
        }
        acc.insert(canonical_form(&g)?, g);
        Ok(())
    })?;
    Ok(acc.into_values().collect())
}

/// Component choices so far: (size, class index) pairs.
type PartList = [(usize, usize)];

/// Recursively chooses components with sizes non-increasing; among equal
/// sizes the class index is non-decreasing, so each multiset appears once.
fn compose(
    remaining: usize,
    max_size: usize,
    per_size: &[Vec<Graph>],
    parts: &mut Vec<(usize, usize)>,
    emit: &mut dyn FnMut(&PartList) -> Result<()>,
) -> Result<()> {
    if remaining == 0 {
        return emit(parts);
    }
    for size in (1..=max_size.min(remaining)).rev() {
        if per_size[size].is_empty() {
            continue;
        }
        let min_idx = match parts.last() {
            Some(&(s, i)) if s == size => i,
            _ => 0,
        };
        for idx in min_idx..per_size[size].len() {
            parts.push((size, idx));
            compose(remaining - size, size, per_size, parts, emit)?;
            parts.pop();
        }
    }
    Ok(())
}

fn connected_classes(n: usize, d: usize) -> Result<BTreeMap<CanonicalForm, Graph>> {
    let mut found = BTreeMap::new();
    if n == 1 && d == 0 {
        let g = Graph::empty(1)?;
        found.insert(canonical_form(&g)?, g);
        return Ok(found);
    }
    if d == 0 {
        return Ok(found); // no connected 0-regular graph on n >= 2 vertices
    }
    let mut state = Generator {
        n,
        d,
        adj: vec![0u64; n],
        deg: vec![0usize; n],
        touched: 1,
        found,
    };
    state.extend()?;
    Ok(state.found)
}

struct Generator {
    n: usize,
    d: usize,
    adj: Vec<u64>,
    deg: Vec<usize>,
    /// Vertices 0..touched have been connected to the growing graph.
    touched: usize,
    found: BTreeMap<CanonicalForm, Graph>,
}

impl Generator {
    fn extend(&mut self) -> Result<()> {
        let Some(u) = (0..self.touched).find(|&v| self.deg[v] < self.d) else {
            if self.touched == self.n {
                let g = Graph::from_adj(self.adj.clone());
                debug_assert_eq!(g.is_regular(), Some(self.d));
                debug_assert!(g.is_connected());
                let (form, labeling) = canonical_form_with_labeling(&g)?;
                if let std::collections::btree_map::Entry::Vacant(e) = self.found.entry(form) {
                    e.insert(relabel(&g, &labeling)?);
                }
            }
            return Ok(()); // untouched vertices left: would be disconnected
        };
        // New neighbors of the active vertex come in increasing order.
        let min_next = match 64 - self.adj[u].leading_zeros() {
            0 => u + 1,
            hi => (u + 1).max(hi as usize),
        };
        let mut candidates: Vec<usize> = (min_next..self.touched)
            .filter(|&w| self.deg[w] < self.d && (self.adj[u] >> w) & 1 == 0)
            .collect();
        // Even taking every candidate plus all remaining fresh vertices must
        // be able to saturate u.
        if candidates.len() + self.n - self.touched < self.d - self.deg[u] {
            return Ok(());
        }
        if self.touched < self.n {
            candidates.push(self.touched);
        }
        for w in candidates {
            let was_fresh = w == self.touched;
            self.adj[u] |= 1 << w;
            self.adj[w] |= 1 << u;
            self.deg[u] += 1;
            self.deg[w] += 1;
            if was_fresh {
                self.touched += 1;
            }
            self.extend()?;
            if was_fresh {
                self.touched -= 1;
            }
            self.deg[u] -= 1;
            self.deg[w] -= 1;
            self.adj[u] &= !(1 << w);
            self.adj[w] &= !(1 << u);
        }
        Ok(())
    }
}

/// Parses a stream of graph6 lines, optionally validating each graph against
/// a class spec. Empty lines and the conventional `>>graph6<<` banner are
/// skipped.
pub fn ingest_graph6_stream<'a, I>(lines: I, spec: Option<&RegularClassSpec>) -> Result<Vec<Graph>>
where
    I: IntoIterator<Item = &'a str>,
{
    let mut out = Vec::new();
    for (idx, raw) in lines.into_iter().enumerate() {
        let line = raw.strip_prefix(">>graph6<<").unwrap_or(raw).trim();
        if line.is_empty() {
            continue;
        }
        let g = from_graph6(line).map_err(|e| match e {
            Error::Parse { offset, reason } => Error::Parse {
                offset,
                reason: format!("line {}: {reason}", idx + 1),
            },
            other => other,
        })?;
        if let Some(spec) = spec {
            if g.n() != spec.n {
                return Err(Error::Validation {
                    line: idx + 1,
                    reason: format!("expected {} vertices, got {}", spec.n, g.n()),
                });
            }
            if g.is_regular() != Some(spec.d) {
                return Err(Error::Validation {
                    line: idx + 1,
                    reason: format!("graph is not {}-regular", spec.d),
                });
            }
            if spec.connected_only && !g.is_connected() {
                return Err(Error::Validation {
                    line: idx + 1,
                    reason: "graph is not connected".into(),
                });
            }
        }
        out.push(g);
    }
    Ok(out)
}
