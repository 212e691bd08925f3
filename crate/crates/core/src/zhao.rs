//! The size-preserving bijection between ordered pairs of independent sets
//! and J(G), plus the squared-polynomial inequality it powers.
//!
//! J(G) is the set of pairs (A, B) with no edge between A and B whose union
//! induces a bipartite subgraph. When A and B are independent sets, every
//! component of the union-induced subgraph is connected bipartite with one
//! color class inside A and the other inside B, and vertices shared by A and
//! B are isolated there. The bijection keeps shared isolated vertices on
//! both sides and moves each remaining component wholly to the first or
//! second output set according to which class holds the component's smallest
//! vertex. The inverse splits each component back along its unique
//! bipartition.

use std::collections::HashSet;

use num_bigint::BigUint;
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::graph6::to_graph6;
use crate::isets::{count_nonbipartite_induced, independence_polynomial, is_independent};
use crate::numeric::{nth_root_bounds, ROOT_PRECISION_BITS};

/// Relative tolerance for inequality checks that involve an irrational side,
/// as an exact rational.
pub fn relative_tolerance() -> BigRational {
    BigRational::new(1.into(), 1_000_000_000.into())
}

/// An ordered pair of vertex subsets of a host graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetPair {
    pub a: VertexSet,
    pub b: VertexSet,
}

impl SubsetPair {
    pub fn new(a: VertexSet, b: VertexSet) -> SubsetPair {
        SubsetPair { a, b }
    }

    /// |A| + |B|, counting shared vertices twice.
    pub fn size(&self) -> usize {
        self.a.len() + self.b.len()
    }

    /// Membership in I(G) x I(G): both sets independent.
    pub fn is_i_pair(&self, g: &Graph) -> bool {
        is_independent(g, self.a.bits()) && is_independent(g, self.b.bits())
    }

    /// Membership in J(G): no edge between A and B, union inducing a
    /// bipartite subgraph.
    pub fn is_j_pair(&self, g: &Graph) -> bool {
        !g.neighborhood_of_set(self.a).intersects(self.b)
            && g.bipartition_on(self.a | self.b).is_some()
    }
}

/// All of J(G) in lexicographic order of (A, B) bitmasks.
pub fn enumerate_j(g: &Graph) -> Result<Vec<SubsetPair>> {
    if g.n() > 16 {
        return Err(Error::Capacity {
            op: "enumerate_j",
            n: g.n(),
            limit: 16,
        });
    }
    let full = g.vertices().bits();
    let mut out = Vec::new();
    for a_bits in 0..=full {
        let a = VertexSet::from_bits(a_bits);
        let allowed = full & !g.neighborhood_of_set(a).bits();
        // Submasks of `allowed` in increasing order.
        let mut b_bits = 0u64;
        loop {
            let b = VertexSet::from_bits(b_bits);
            if g.bipartition_on(a | b).is_some() {
                out.push(SubsetPair::new(a, b));
            }
            b_bits = b_bits.wrapping_sub(allowed) & allowed;
            if b_bits == 0 {
                break;
            }
        }
    }
    Ok(out)
}

/// Maps a pair of independent sets into J(G), preserving |A| + |B|.
pub fn zhao_forward(g: &Graph, pair: &SubsetPair) -> Result<SubsetPair> {
    if !pair.is_i_pair(g) {
        return Err(Error::Contract(format!(
            "zhao_forward needs independent sets, got A={:?}, B={:?}",
            pair.a, pair.b
        )));
    }
    let mut a_out = VertexSet::EMPTY;
    let mut b_out = VertexSet::EMPTY;
    for comp in g.components_on(pair.a | pair.b) {
        let m = comp.min().expect("components are nonempty");
        match (pair.a.contains(m), pair.b.contains(m)) {
            (true, true) => {
                // Shared vertices have no neighbor in the union.
                debug_assert_eq!(comp.len(), 1);
                a_out = a_out | comp;
                b_out = b_out | comp;
            }
            (true, false) => a_out = a_out | comp,
            (false, _) => b_out = b_out | comp,
        }
    }
    let image = SubsetPair::new(a_out, b_out);
    debug_assert!(image.is_j_pair(g));
    debug_assert_eq!(image.size(), pair.size());
    Ok(image)
}

/// Inverse of [`zhao_forward`]: splits each union component back into
/// its two color classes.
pub fn zhao_backward(g: &Graph, pair: &SubsetPair) -> Result<SubsetPair> {
    if !pair.is_j_pair(g) {
        return Err(Error::Contract(format!(
            "zhao_backward needs a J(G) member, got A={:?}, B={:?}",
            pair.a, pair.b
        )));
    }
    let mut a_out = VertexSet::EMPTY;
    let mut b_out = VertexSet::EMPTY;
    for comp in g.components_on(pair.a | pair.b) {
        if comp.len() == 1 {
            let v = comp.min().unwrap();
            if pair.a.contains(v) {
                a_out = a_out | comp;
            }
            if pair.b.contains(v) {
                b_out = b_out | comp;
            }
            continue;
        }
        let (class1, class2) = g
            .bipartition_on(comp)
            .expect("J membership makes every union component bipartite");
        if comp.is_subset_of(pair.a) {
            a_out = a_out | class1;
            b_out = b_out | class2;
        } else if comp.is_subset_of(pair.b) {
            a_out = a_out | class2;
            b_out = b_out | class1;
        } else {
            // A component meeting both sides would contain a cross edge.
            unreachable!("mixed component in a J(G) pair");
        }
    }
    let pre = SubsetPair::new(a_out, b_out);
    debug_assert!(pre.is_i_pair(g));
    debug_assert_eq!(pre.size(), pair.size());
    Ok(pre)
}

/// Outcome of the bijection verification on one graph.
#[derive(Clone, Debug)]
pub struct ZhaoReport {
    pub graph6: String,
    pub i_count: BigUint,
    pub j_count: u64,
    /// (lambda, sum over J of lambda^size, P(lambda)^2) - always equal.
    pub lambda_checks: Vec<(BigRational, BigRational, BigRational)>,
}

impl ZhaoReport {
    pub fn to_json(&self) -> Value {
        json!({
            "graph6": self.graph6,
            "i": self.i_count.to_string(),
            "j": self.j_count.to_string(),
            "lambda_checks": self.lambda_checks.iter().map(|(l, s, p)| json!({
                "lambda": format_rational(l),
                "sum_j": format_rational(s),
                "p_squared": format_rational(p),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Certifies on `g` that the forward and backward maps are mutually inverse
/// size-preserving bijections and that sum_J lambda^size = P(lambda)^2 for each lambda.
pub fn verify_zhao(g: &Graph, lambdas: &[BigRational]) -> Result<ZhaoReport> {
    let isets: Vec<VertexSet> = crate::isets::enumerate_independent_sets(g)?.collect();
    let jpairs = enumerate_j(g)?;

    let mut images: HashSet<SubsetPair> = HashSet::with_capacity(isets.len() * isets.len());
    for &a in &isets {
        for &b in &isets {
            let pair = SubsetPair::new(a, b);
            let image = zhao_forward(g, &pair)?;
            if image.size() != pair.size() {
                return Err(Error::VerificationFailed(format!(
                    "size not preserved at A={:?}, B={:?}",
                    pair.a, pair.b
                )));
            }
            if !image.is_j_pair(g) {
                return Err(Error::VerificationFailed(format!(
                    "image outside J(G) at A={:?}, B={:?}",
                    pair.a, pair.b
                )));
            }
            if !images.insert(image) {
                return Err(Error::VerificationFailed(format!(
                    "forward map not injective at A={:?}, B={:?}",
                    pair.a, pair.b
                )));
            }
            let back = zhao_backward(g, &image)?;
            if back != pair {
                return Err(Error::VerificationFailed(format!(
                    "backward(forward) is not the identity at A={:?}, B={:?}",
                    pair.a, pair.b
                )));
            }
        }
    }
    if images.len() != jpairs.len() {
        return Err(Error::VerificationFailed(format!(
            "|I|^2 = {} but |J| = {}",
            images.len(),
            jpairs.len()
        )));
    }
    for jp in &jpairs {
        let pre = zhao_backward(g, jp)?;
        if zhao_forward(g, &pre)? != *jp {
            return Err(Error::VerificationFailed(format!(
                "forward(backward) is not the identity at A={:?}, B={:?}",
                jp.a, jp.b
            )));
        }
    }

    let poly = independence_polynomial(g);
    let mut lambda_checks = Vec::new();
    for lambda in lambdas {
        let sum: BigRational = jpairs.iter().map(|p| lambda.pow(p.size() as i32)).sum();
        let squared = poly.evaluate(lambda)?;
        let squared = &squared * &squared;
        if sum != squared {
            return Err(Error::VerificationFailed(format!(
                "sum_J lambda^size = {sum} but P(lambda)^2 = {squared} at lambda = {lambda}"
            )));
        }
        lambda_checks.push((lambda.clone(), sum, squared));
    }

    Ok(ZhaoReport {
        graph6: to_graph6(g)?,
        i_count: poly.count(),
        j_count: jpairs.len() as u64,
        lambda_checks,
    })
}

/// One verified instance of the squared-polynomial bound
/// P(lambda,G)^2 <= P(lambda,K_{d,d})^(n/d) - 2C for a d-regular graph.
#[derive(Clone, Debug)]
pub struct Theorem2Report {
    pub graph6: String,
    pub lambda: BigRational,
    /// P(lambda, G)^2, exact.
    pub lhs: BigRational,
    /// P(lambda, GxK2) - P(lambda, G)^2, exact.
    pub t: BigRational,
    /// Number of vertex subsets inducing a non-bipartite subgraph.
    pub c: u64,
    /// Certified enclosure of P(lambda,K_{d,d})^(n/d) - 2C.
    pub rhs_lo: BigRational,
    pub rhs_hi: BigRational,
    pub rhs_exact: bool,
    pub holds: bool,
}

impl Theorem2Report {
    /// Strict inequality certified from the lower enclosure bound.
    pub fn holds_strictly(&self) -> bool {
        if self.rhs_exact {
            self.lhs < self.rhs_lo
        } else {
            // rhs_lo < rhs for an irrational right side.
            self.lhs <= self.rhs_lo
        }
    }

    pub fn to_json(&self) -> Value {
        let rhs = if self.rhs_exact {
            format_rational(&self.rhs_lo)
        } else {
            decimal_string(&self.rhs_lo, 24)
        };
        json!({
            "graph6": self.graph6,
            "lambda": format_rational(&self.lambda),
            "lhs": format_rational(&self.lhs),
            "T": format_rational(&self.t),
            "C": self.c,
            "rhs": rhs,
            "holds": self.holds,
        })
    }
}

/// Checks the bound on a regular graph at one rational lambda >= 1, cross-checking
/// T by direct pair enumeration when that is feasible, and asserting T >= 2C.
pub fn verify_theorem2(g: &Graph, lambda: &BigRational) -> Result<Theorem2Report> {
    let Some(d) = g.is_regular() else {
        return Err(Error::Contract("theorem2 requires a regular graph".into()));
    };
    let one = BigRational::from_integer(1.into());
    if *lambda < one {
        return Err(Error::Domain(format!(
            "theorem2 requires lambda >= 1, got {lambda}"
        )));
    }
    let n = g.n();
    if n == 0 || d == 0 {
        return Err(Error::Contract(
            "theorem2 needs d >= 1 on a nonempty graph".into(),
        ));
    }

    let p_g = independence_polynomial(g).evaluate(lambda)?;
    let lhs = &p_g * &p_g;

    let cover = g.double_cover()?;
    let p_cover = independence_polynomial(&cover).evaluate(lambda)?;
    let t = &p_cover - &lhs;

    if n <= 12 {
        let tally = nonbipartite_pair_sizes(g);
        let direct: BigRational = tally
            .iter()
            .enumerate()
            .filter(|(_, &count)| count != 0)
            .map(|(size, &count)| lambda.pow(size as i32) * BigRational::from_integer(count.into()))
            .sum();
        if direct != t {
            return Err(Error::VerificationFailed(format!(
                "T by subtraction is {t} but direct enumeration gives {direct}"
            )));
        }
    }

    let c = count_nonbipartite_induced(g)?;
    let two_c = BigRational::from_integer(BigUint::from(2 * c).into());
    if t < two_c {
        return Err(Error::VerificationFailed(format!("T = {t} < 2C = {two_c}")));
    }

    let p_kdd = independence_polynomial(&Graph::complete_bipartite(d)?).evaluate(lambda)?;
    let (rhs_lo, rhs_hi, rhs_exact) = if n.is_multiple_of(d) {
        let exact = p_kdd.pow((n / d) as i32) - &two_c;
        (exact.clone(), exact, true)
    } else {
        let (root_lo, root_hi) =
            nth_root_bounds(&p_kdd.pow(n as i32), d as u32, ROOT_PRECISION_BITS)?;
        (root_lo - &two_c, root_hi - &two_c, false)
    };

    let holds = if rhs_exact {
        lhs <= rhs_lo
    } else {
        // lhs <= rhs*(1 + tol); the enclosure width is far below the tolerance.
        lhs <= &rhs_lo + &rhs_lo * relative_tolerance()
    };

    Ok(Theorem2Report {
        graph6: to_graph6(g)?,
        lambda: lambda.clone(),
        lhs,
        t,
        c,
        rhs_lo,
        rhs_hi,
        rhs_exact,
        holds,
    })
}

/// Tallies, by |A|+|B|, the pairs with no cross edge whose union induces a
/// non-bipartite subgraph - the T term, enumerated directly.
fn nonbipartite_pair_sizes(g: &Graph) -> Vec<u64> {
    let full = g.vertices().bits();
    let mut tally = vec![0u64; 2 * g.n() + 1];
    for a_bits in 0..=full {
        let a = VertexSet::from_bits(a_bits);
        let allowed = full & !g.neighborhood_of_set(a).bits();
        let mut b_bits = 0u64;
        loop {
            let union = a | VertexSet::from_bits(b_bits);
            if g.bipartition_on(union).is_none() {
                tally[a.len() + b_bits.count_ones() as usize] += 1;
            }
            b_bits = b_bits.wrapping_sub(allowed) & allowed;
            if b_bits == 0 {
                break;
            }
        }
    }
    tally
}

pub(crate) fn format_rational(r: &BigRational) -> String {
    if r.denom() == &num_bigint::BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Truncated decimal rendering with `digits` fractional digits.
pub(crate) fn decimal_string(r: &BigRational, digits: u32) -> String {
    let scale = num_bigint::BigInt::from(10u32).pow(digits);
    let scaled = (r * BigRational::from_integer(scale.clone())).trunc();
    let whole = scaled.numer() / &scale;
    let frac = (scaled.numer() - &whole * &scale).magnitude().to_string();
    let sign = if scaled.numer().sign() == num_bigint::Sign::Minus && whole == 0.into() {
        "-"
    } else {
        ""
    };
    format!("{sign}{whole}.{frac:0>width$}", width = digits as usize)
}
