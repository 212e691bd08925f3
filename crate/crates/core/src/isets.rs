//! Exact independent-set counting.
//!
//! The workhorse is the branching identity P(G) = P(G - v) + x * P(G - N[v])
//! applied at a maximum-degree vertex, with multiplication across connected
//! components and memoization on the residual vertex subset. Coefficients are
//! big integers throughout; polynomial powers in the theorem checks overflow
//! 64 bits long before the vertex cap is reached.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::scalar::Scalar;

/// Independence polynomial: `coeffs[k]` counts independent sets of size k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndependencePolynomial {
    coeffs: Vec<BigUint>,
}

impl IndependencePolynomial {
    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    /// Independence number: the largest independent-set size.
    pub fn alpha(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Total number of independent sets, P(1, G).
    pub fn count(&self) -> BigUint {
        self.coeffs.iter().sum()
    }

    /// Horner evaluation at `x >= 0`. Exact when the scalar is rational.
    pub fn evaluate<T: Scalar>(&self, x: &T) -> Result<T> {
        if *x < T::zero() {
            return Err(Error::Domain(
                "independence polynomial evaluated at negative point".into(),
            ));
        }
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + T::from_count(c);
        }
        Ok(acc)
    }

    fn from_coeffs(mut coeffs: Vec<BigUint>) -> IndependencePolynomial {
        while coeffs.len() > 1 && coeffs.last() == Some(&BigUint::zero()) {
            coeffs.pop();
        }
        IndependencePolynomial { coeffs }
    }
}

fn poly_add(a: &mut Vec<BigUint>, b: &[BigUint]) {
    if b.len() > a.len() {
        a.resize(b.len(), BigUint::zero());
    }
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
}

fn poly_mul(a: &[BigUint], b: &[BigUint]) -> Vec<BigUint> {
    let mut out = vec![BigUint::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Computes the independence polynomial of `g`.
pub fn independence_polynomial(g: &Graph) -> IndependencePolynomial {
    let mut memo: HashMap<u64, Vec<BigUint>> = HashMap::new();
    let coeffs = poly_on_subset(g, g.vertices().bits(), &mut memo);
    IndependencePolynomial::from_coeffs(coeffs)
}

fn poly_on_subset(g: &Graph, mask: u64, memo: &mut HashMap<u64, Vec<BigUint>>) -> Vec<BigUint> {
    if mask == 0 {
        return vec![BigUint::one()];
    }
    if let Some(hit) = memo.get(&mask) {
        return hit.clone();
    }
    let comps = g.components_on(VertexSet::from_bits(mask));
    let result = if comps.len() > 1 {
        let mut acc = vec![BigUint::one()];
        for comp in comps {
            let part = poly_on_subset(g, comp.bits(), memo);
            acc = poly_mul(&acc, &part);
        }
        acc
    } else {
        // Branch on a maximum-degree vertex of the residual graph, least
        // index on ties.
        let mut branch = mask.trailing_zeros() as usize;
        let mut best_deg = 0u32;
        let mut scan = mask;
        while scan != 0 {
            let v = scan.trailing_zeros() as usize;
            scan &= scan - 1;
            let deg = (g.neighbors(v).bits() & mask).count_ones();
            if deg > best_deg {
                best_deg = deg;
                branch = v;
            }
        }
        let mut acc = poly_on_subset(g, mask & !(1u64 << branch), memo);
        let closed = g.closed_neighborhood(branch).bits();
        let with_branch = poly_on_subset(g, mask & !closed, memo);
        // Shift accounts for the chosen vertex itself.
        let mut shifted = vec![BigUint::zero()];
        shifted.extend_from_slice(&with_branch);
        poly_add(&mut acc, &shifted);
        acc
    };
    memo.insert(mask, result.clone());
    result
}

/// i(G): the number of independent sets, empty set included.
pub fn count_independent_sets(g: &Graph) -> BigUint {
    independence_polynomial(g).count()
}

/// All independent sets of `g` in increasing bitmask order. Capped at 24
/// vertices; this is the oracle feed, not the counting path.
pub fn enumerate_independent_sets(g: &Graph) -> Result<impl Iterator<Item = VertexSet> + '_> {
    if g.n() > 24 {
        return Err(Error::Capacity {
            op: "enumerate_independent_sets",
            n: g.n(),
            limit: 24,
        });
    }
    let end: u64 = 1u64 << g.n();
    Ok((0..end)
        .filter(move |&mask| is_independent(g, mask))
        .map(VertexSet::from_bits))
}

pub(crate) fn is_independent(g: &Graph, mask: u64) -> bool {
    let mut scan = mask;
    while scan != 0 {
        let v = scan.trailing_zeros() as usize;
        scan &= scan - 1;
        if g.neighbors(v).bits() & mask != 0 {
            return false;
        }
    }
    true
}

/// C: the number of vertex subsets inducing a non-bipartite subgraph.
pub fn count_nonbipartite_induced(g: &Graph) -> Result<u64> {
    if g.n() > 22 {
        return Err(Error::Capacity {
            op: "count_nonbipartite_induced",
            n: g.n(),
            limit: 22,
        });
    }
    let end: u64 = 1u64 << g.n();
    let mut count = 0;
    for mask in 0..end {
        // An odd cycle needs at least three vertices.
        if mask.count_ones() >= 3 && g.bipartition_on(VertexSet::from_bits(mask)).is_none() {
            count += 1;
        }
    }
    Ok(count)
}
