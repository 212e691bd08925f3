//! The entropy-method constants: the constrained entropy maximum D_{n,eps},
//! the Kahn objective maximum, and the per-degree bound pipeline.
//!
//! D_{n,eps} caps the entropy of an n-outcome distribution whose two designated
//! probabilities differ by at least eps. By concavity the maximum sits on the
//! active boundary with the free mass uniform, so
//!     D_{n,eps} = max over the two branches of H2(q) + (1 - q)*log2(n - 1)
//! at q = 1/n + eps/2 and q = 1/n - eps/2. The code works with the *gap*
//! log2(n) - D_{n,eps} through log1p, because for the pipeline's eps = 2^(-3d)
//! the gap shrinks like eps^2 and a direct subtraction would drown in rounding
//! by d = 9.

use num_traits::Float;
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// Stopping width for ternary search on concave objectives.
const SEARCH_WIDTH: f64 = 1e-12;

/// Binary entropy H(p, 1-p) in bits.
pub fn binary_entropy<F: Float>(p: F) -> F {
    let q = F::one() - p;
    let term = |x: F| {
        if x <= F::zero() {
            F::zero()
        } else {
            -(x * x.log2())
        }
    };
    term(p) + term(q)
}

/// D_{n,eps}: the largest entropy of an n-outcome distribution with
/// q1 >= 1/n + eps/2 or q2 <= 1/n - eps/2. Strictly below log2(n).
pub fn d_eps_constant<F: Float>(n: usize, eps: F) -> Result<F> {
    let log_n = F::from(n).unwrap().log2();
    Ok(log_n - d_eps_gap(n, eps)?)
}

/// log2(n) - D_{n,eps}, computed without cancellation. Infinite only in the
/// vacuous regime eps > 2(n-1)/n where no distribution meets the premise.
pub fn d_eps_gap<F: Float>(n: usize, eps: F) -> Result<F> {
    if n < 2 {
        return Err(Error::Domain(format!(
            "d_eps_constant needs n >= 2, got {n}"
        )));
    }
    if eps <= F::zero() || eps > F::from(2).unwrap() {
        return Err(Error::Domain("d_eps_constant needs 0 < eps <= 2".into()));
    }
    let nf = F::from(n).unwrap();
    let n1 = F::from(n - 1).unwrap();
    let ln2 = F::from(std::f64::consts::LN_2).unwrap();
    // t rescales the constraint: the boundary points are (1 +/- t)/n.
    let t = nf * eps / F::from(2).unwrap();

    // Branch with q1 = (1 + t)/n; feasible while q1 <= 1.
    let gap_high = if t > n1 {
        F::infinity()
    } else if t == n1 {
        nf.log2() // the boundary point is the point mass, entropy 0
    } else {
        let a = (F::one() + t) / nf;
        (a * t.ln_1p() + (F::one() - a) * (-t / n1).ln_1p()) / ln2
    };

    // Branch with q2 = (1 - t)/n; feasible while q2 >= 0.
    let gap_low = if t > F::one() {
        F::infinity()
    } else if t == F::one() {
        (F::one() / n1).ln_1p() / ln2 // value log2(n-1)
    } else {
        let b = (F::one() - t) / nf;
        (b * (-t).ln_1p() + (F::one() - b) * (t / n1).ln_1p()) / ln2
    };

    let gap = gap_high.min(gap_low);
    if gap == F::infinity() {
        // Premise unsatisfiable; report the degenerate supremum 0 = log n - log n.
        return Ok(nf.log2());
    }
    Ok(gap)
}

/// Maximizes f(p) = H(p, 1-p) + (1-p)*c + p*d over [0, 1] by ternary search,
/// then sharpens the argmax by bisecting the monotone derivative
/// f'(p) = log2((1-p)/p) - c + d. The polish matters: comparing nearly equal
/// objective values caps a pure ternary argmax at roughly sqrt(ulp) ~ 1e-8.
/// Returns (argmax, max).
pub fn kahn_max_with<F: Float>(d: u32, c: F) -> (F, F) {
    let df = F::from(d).unwrap();
    let f = |p: F| binary_entropy(p) + (F::one() - p) * c + p * df;
    let mut lo = F::zero();
    let mut hi = F::one();
    let width = F::from(SEARCH_WIDTH).unwrap();
    let three = F::from(3).unwrap();
    while hi - lo > width {
        let m1 = lo + (hi - lo) / three;
        let m2 = hi - (hi - lo) / three;
        if f(m1) < f(m2) {
            lo = m1;
        } else {
            hi = m2;
        }
    }
    let two = F::from(2).unwrap();
    let mut p = (lo + hi) / two;

    let slope = |p: F| ((F::one() - p) / p).log2() - c + df;
    if slope(p) != F::zero() {
        let (mut a, mut b) = if slope(p) > F::zero() {
            (p, F::one())
        } else {
            (F::zero(), p)
        };
        for _ in 0..200 {
            let mid = (a + b) / two;
            if mid <= a || mid >= b {
                break;
            }
            if slope(mid) > F::zero() {
                a = mid;
            } else {
                b = mid;
            }
        }
        p = (a + b) / two;
    }
    (p, f(p))
}

/// The Kahn maximum with c = log2(2^d - 1); equals log2(2^(d+1) - 1) at
/// p* = 2^d / (2^(d+1) - 1).
pub fn kahn_max<F: Float>(d: u32) -> (F, F) {
    let c = F::from((1u64 << d) - 1).unwrap().log2();
    kahn_max_with(d, c)
}

/// The per-degree constants of the bound pipeline.
#[derive(Clone, Copy, Debug)]
pub struct BoundReport {
    pub d: u32,
    /// D1 = D_{2^d - 1, 2^(-3d)}, the conditional-entropy cap.
    pub d1: f64,
    /// D2 = max f(p) with c = D1; log2 of the bound base.
    pub d2: f64,
    /// sqrt(2^D2 / (2^(d+1) - 1)) < 1, the uniqueness-deficit constant.
    pub d_uniq: f64,
    /// Maximizer of the unconstrained Kahn objective.
    pub p_star: f64,
    /// Its value log2(2^(d+1) - 1).
    pub kahn_value: f64,
    /// log2(2^d - 1) - D1 > 0.
    pub d1_gap: f64,
    /// log2(2^(d+1) - 1) - D2 > 0.
    pub d2_gap: f64,
}

impl BoundReport {
    pub fn to_json(&self) -> Value {
        json!({
            "d": self.d,
            "D1": self.d1,
            "D2": self.d2,
            "D_uniq": self.d_uniq,
            "p_star": self.p_star,
            "kahn_value": self.kahn_value,
        })
    }
}

/// Runs the constant pipeline for degree d:
/// D1 = D_{2^d-1, 2^(-3d)}, D2 = max f(p) at c = D1, and the uniqueness
/// constant sqrt(2^D2 / (2^(d+1) - 1)).
pub fn theorem5_constants(d: u32) -> Result<BoundReport> {
    if d == 1 {
        // 2^d - 1 = 1 outcome: the entropy lemma needs n >= 2, and the only
        // connected 1-regular graph is K_{1,1} itself, so the bound is vacuous.
        return Err(Error::Domain(
            "theorem5_constants is undefined for d = 1".into(),
        ));
    }
    if !(2..=10).contains(&d) {
        return Err(Error::Domain(format!(
            "theorem5_constants supports 2 <= d <= 10, got {d}"
        )));
    }
    let n = (1usize << d) - 1;
    let eps = (0.5f64).powi(3 * d as i32);
    let g1 = d_eps_gap(n, eps)?;
    let log_n = (n as f64).log2();
    let d1 = log_n - g1;

    // D2 two ways: closed-form via the gap transfer, and ternary search.
    let g2 = kahn_gap_from_d1_gap(d, g1);
    let log_base = (((1u64 << (d + 1)) - 1) as f64).log2();
    let d2 = log_base - g2;
    let (_, d2_search) = kahn_max_with(d, d1);
    if (d2 - d2_search).abs() > 1e-9 {
        return Err(Error::VerificationFailed(format!(
            "D2 routes disagree at d={d}: closed {d2} vs search {d2_search}"
        )));
    }

    let d_uniq = (-g2 / 2.0).exp2();
    let (p_star, kahn_value) = kahn_max(d);

    let report = BoundReport {
        d,
        d1,
        d2,
        d_uniq,
        p_star,
        kahn_value,
        d1_gap: g1,
        d2_gap: g2,
    };
    // Strictness of d_uniq < 1 is certified by g2 > 0; the f64 image of
    // 2^(-g2/2) collapses to 1.0 once g2 drops under an ulp (d = 10, where
    // the true value sits within 3e-17 of 1).
    if !(g1 > 0.0 && g2 > 0.0 && d_uniq <= 1.0 && 0.0 < p_star && p_star < 1.0) {
        return Err(Error::VerificationFailed(format!(
            "bound invariants violated at d={d}: {report:?}"
        )));
    }
    Ok(report)
}

/// Transfers the D1 gap to the D2 gap. With u* = 2^d/(2^d - 1) and
/// value(c) = log2(1 + 2^(d-c)) + c,
///   gap2 = gap1 - log2(1 + u*(2^gap1 - 1)/(1 + u*)),
/// which stays fully accurate when gap1 is tiny.
fn kahn_gap_from_d1_gap(d: u32, g1: f64) -> f64 {
    let pow = (1u64 << d) as f64;
    let u_star = pow / (pow - 1.0);
    let w = u_star * (g1 * std::f64::consts::LN_2).exp_m1() / (1.0 + u_star);
    g1 - w.ln_1p() / std::f64::consts::LN_2
}
