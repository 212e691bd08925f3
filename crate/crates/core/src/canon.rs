//! Canonical forms and isomorphism testing for graphs on at most 16 vertices.
//!
//! The certificate is the lexicographically smallest upper-triangle bit
//! string (column-major, the graph6 bit order) over all labelings reachable
//! by equitable partition refinement plus individualization. Refinement and
//! target-cell choice depend only on the partition structure, never on
//! vertex names, so the minimum over the search tree is relabeling-invariant.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Vertex cap for the exhaustive-refinement implementation.
pub const MAX_CANON: usize = 16;

/// Relabeling-invariant certificate; equal forms mean isomorphic graphs.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CanonicalForm {
    n: u8,
    bytes: Vec<u8>,
}

impl CanonicalForm {
    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn bytes(&self) -> &[u8] {
        &self.bytes
    }
}

/// Computes the canonical form of `g`.
pub fn canonical_form(g: &Graph) -> Result<CanonicalForm> {
    Ok(canonical_form_with_labeling(g)?.0)
}

/// Canonical form plus a labeling that realizes it: `labeling[i]` is the
/// original vertex placed at position `i`.
pub fn canonical_form_with_labeling(g: &Graph) -> Result<(CanonicalForm, Vec<usize>)> {
    let n = g.n();
    if n > MAX_CANON {
        return Err(Error::Capacity {
            op: "canonical_form",
            n,
            limit: MAX_CANON,
        });
    }
    if n == 0 {
        return Ok((
            CanonicalForm {
                n: 0,
                bytes: Vec::new(),
            },
            Vec::new(),
        ));
    }
    let mut search = Search {
        g,
        best: None,
        best_labeling: vec![0; n],
    };
    search.descend(vec![(0..n as u8).collect()]);
    let (cert, labeling) = (
        search.best.expect("search visits at least one leaf"),
        search.best_labeling,
    );
    let nbits = n * (n - 1) / 2;
    let bytes = cert.to_be_bytes()[..nbits.div_ceil(8)].to_vec();
    Ok((
        CanonicalForm { n: n as u8, bytes },
        labeling.into_iter().map(|v| v as usize).collect(),
    ))
}

/// Relabels `g` canonically, so equal graphs mean isomorphic inputs.
pub fn canonical_graph(g: &Graph) -> Result<Graph> {
    let (_, lab) = canonical_form_with_labeling(g)?;
    relabel(g, &lab)
}

/// `labeling[i]` is the original vertex placed at position `i`.
pub(crate) fn relabel(g: &Graph, labeling: &[usize]) -> Result<Graph> {
    let mut edges = Vec::with_capacity(g.edge_count());
    for i in 0..g.n() {
        for j in (i + 1)..g.n() {
            if g.has_edge(labeling[i], labeling[j]) {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(g.n(), &edges)
}

/// Isomorphism test by certificate equality.
pub fn is_isomorphic(g: &Graph, h: &Graph) -> Result<bool> {
    if g.n() != h.n() || g.edge_count() != h.edge_count() {
        return Ok(false);
    }
    let mut dg: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    let mut dh: Vec<usize> = (0..h.n()).map(|v| h.degree(v)).collect();
    dg.sort_unstable();
    dh.sort_unstable();
    if dg != dh {
        return Ok(false);
    }
    Ok(canonical_form(g)? == canonical_form(h)?)
}

type Partition = Vec<Vec<u8>>;

struct Search<'a> {
    g: &'a Graph,
    /// Best complete certificate so far, bits packed from the top of the u128.
    best: Option<u128>,
    best_labeling: Vec<u8>,
}

impl Search<'_> {
    fn descend(&mut self, mut partition: Partition) {
        refine(self.g, &mut partition);

        let fixed = partition.iter().take_while(|c| c.len() == 1).count();
        let (prefix, nbits) = self.prefix_cert(&partition, fixed);
        if nbits > 0 {
            if let Some(best) = self.best {
                let shift = 128 - nbits;
                if prefix >> shift > best >> shift {
                    return; // no completion can beat the incumbent
                }
            }
        }

        if fixed == partition.len() {
            if self.best.is_none_or(|b| prefix < b) {
                self.best = Some(prefix);
                for (i, cell) in partition.iter().enumerate() {
                    self.best_labeling[i] = cell[0];
                }
            }
            return;
        }

        // Individualize each vertex of the first non-singleton cell.
        let target = partition[fixed].clone();
        for &v in &target {
            let mut child = Vec::with_capacity(partition.len() + 1);
            child.extend_from_slice(&partition[..fixed]);
            child.push(vec![v]);
            child.push(target.iter().copied().filter(|&u| u != v).collect());
            child.extend_from_slice(&partition[fixed + 1..]);
            self.descend(child);
        }
    }

    /// Certificate bits determined by the first `fixed` singleton cells,
    /// packed from bit 127 downward in column-major upper-triangle order.
    fn prefix_cert(&self, partition: &Partition, fixed: usize) -> (u128, u32) {
        let mut cert = 0u128;
        let mut nbits = 0u32;
        for j in 1..fixed {
            let vj = partition[j][0] as usize;
            for cell in partition.iter().take(j) {
                let vi = cell[0] as usize;
                cert = (cert << 1) | u128::from(self.g.has_edge(vi, vj));
                nbits += 1;
            }
        }
        if nbits == 0 {
            return (0, 0);
        }
        (cert << (128 - nbits), nbits)
    }
}

/// Equitable refinement: repeatedly splits cells by neighbor counts into a
/// splitter cell, subcells ordered by ascending count. The procedure uses
/// only counts and cell positions, so it commutes with relabeling.
fn refine(g: &Graph, partition: &mut Partition) {
    loop {
        let mut changed = false;
        'outer: for s in 0..partition.len() {
            let splitter: u64 = partition[s].iter().fold(0u64, |m, &v| m | (1 << v));
            for d in 0..partition.len() {
                if partition[d].len() <= 1 {
                    continue;
                }
                let mut keyed: Vec<(u32, u8)> = partition[d]
                    .iter()
                    .map(|&v| ((g.neighbors(v as usize).bits() & splitter).count_ones(), v))
                    .collect();
                let first = keyed[0].0;
                if keyed.iter().all(|&(k, _)| k == first) {
                    continue;
                }
                keyed.sort_unstable();
                let mut subcells: Partition = Vec::new();
                for (k, v) in keyed {
                    match subcells.last_mut() {
                        Some(last) if last_key(last, g, splitter) == k => last.push(v),
                        _ => subcells.push(vec![v]),
                    }
                }
                partition.splice(d..=d, subcells);
                changed = true;
                break 'outer;
            }
        }
        if !changed {
            return;
        }
    }
}

fn last_key(cell: &[u8], g: &Graph, splitter: u64) -> u32 {
    (g.neighbors(cell[0] as usize).bits() & splitter).count_ones()
}
