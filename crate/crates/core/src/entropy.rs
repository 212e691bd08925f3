//! Shannon entropy utilities over finite distributions and joint tables.
//!
//! Everything is measured in bits. The functions are generic over the float
//! scalar; the pipeline instantiates them at [`crate::Real`].

use num_traits::Float;

use crate::error::{Error, Result};

/// Tolerance for probability-mass validation.
const MASS_TOL: f64 = 1e-12;

fn tol<F: Float>() -> F {
    F::from(MASS_TOL).expect("tolerance fits any float")
}

/// -p*log2(p) with the 0*log 0 = 0 convention.
fn plogp<F: Float>(p: F) -> F {
    if p <= F::zero() {
        F::zero()
    } else {
        -(p * p.log2())
    }
}

/// A probability vector.
#[derive(Clone, Debug)]
pub struct Distribution<F> {
    p: Vec<F>,
}

impl<F: Float> Distribution<F> {
    pub fn new(p: Vec<F>) -> Result<Distribution<F>> {
        if p.is_empty() {
            return Err(Error::Domain("empty distribution".into()));
        }
        for (i, &x) in p.iter().enumerate() {
            if !(F::zero()..=F::one() + tol()).contains(&x) || x.is_nan() {
                return Err(Error::Domain(format!("probability {i} out of [0,1]")));
            }
        }
        let total = p.iter().fold(F::zero(), |a, &b| a + b);
        if (total - F::one()).abs() > tol() {
            return Err(Error::Domain("probabilities do not sum to 1".into()));
        }
        Ok(Distribution { p })
    }

    pub fn uniform(n: usize) -> Result<Distribution<F>> {
        if n == 0 {
            return Err(Error::Domain("empty distribution".into()));
        }
        let w = F::one() / F::from(n).unwrap();
        Ok(Distribution { p: vec![w; n] })
    }

    pub fn probs(&self) -> &[F] {
        &self.p
    }

    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }

    /// Shannon entropy in bits; lies in [0, log2(n)].
    pub fn entropy(&self) -> F {
        self.p.iter().fold(F::zero(), |acc, &x| acc + plogp(x))
    }
}

/// A joint distribution over a tuple of finite alphabets, stored as a dense
/// row-major table with named axes.
#[derive(Clone, Debug)]
pub struct JointDistribution<F> {
    shape: Vec<usize>,
    axes: Vec<String>,
    table: Vec<F>,
}

impl<F: Float> JointDistribution<F> {
    pub fn new(shape: Vec<usize>, table: Vec<F>) -> Result<JointDistribution<F>> {
        if shape.is_empty() || shape.contains(&0) {
            return Err(Error::Domain(
                "joint needs at least one nonempty axis".into(),
            ));
        }
        let cells: usize = shape.iter().product();
        if table.len() != cells {
            return Err(Error::Domain(format!(
                "table has {} entries, shape needs {cells}",
                table.len()
            )));
        }
        for &x in &table {
            if x < F::zero() || x.is_nan() {
                return Err(Error::Domain("negative joint probability".into()));
            }
        }
        let total = table.iter().fold(F::zero(), |a, &b| a + b);
        if (total - F::one()).abs() > tol() {
            return Err(Error::Domain("joint probabilities do not sum to 1".into()));
        }
        let axes = (0..shape.len()).map(|i| format!("X{i}")).collect();
        Ok(JointDistribution { shape, axes, table })
    }

    pub fn with_axis_names(mut self, names: Vec<String>) -> Result<JointDistribution<F>> {
        if names.len() != self.shape.len() {
            return Err(Error::Domain(format!(
                "{} axis names for {} axes",
                names.len(),
                self.shape.len()
            )));
        }
        self.axes = names;
        Ok(self)
    }

    pub fn arity(&self) -> usize {
        self.shape.len()
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn axes(&self) -> &[String] {
        &self.axes
    }

    fn check_axis(&self, axis: usize) -> Result<()> {
        if axis >= self.shape.len() {
            return Err(Error::Domain(format!(
                "axis {axis} out of range for arity {}",
                self.shape.len()
            )));
        }
        Ok(())
    }

    /// H[X]: entropy of the full tuple.
    pub fn entropy(&self) -> F {
        self.table.iter().fold(F::zero(), |acc, &x| acc + plogp(x))
    }

    /// Marginal probability table over a subset of axes (ascending order).
    pub fn marginal(&self, axes: &[usize]) -> Result<Vec<F>> {
        let mut sel = axes.to_vec();
        sel.sort_unstable();
        sel.dedup();
        if sel.len() != axes.len() {
            return Err(Error::Domain("marginal axes must be distinct".into()));
        }
        for &a in &sel {
            self.check_axis(a)?;
        }
        let out_len: usize = sel.iter().map(|&a| self.shape[a]).product::<usize>().max(1);
        let mut out = vec![F::zero(); out_len];
        for (flat, &p) in self.table.iter().enumerate() {
            let mut rest = flat;
            let mut idx = vec![0usize; self.shape.len()];
            for a in (0..self.shape.len()).rev() {
                idx[a] = rest % self.shape[a];
                rest /= self.shape[a];
            }
            let mut proj = 0usize;
            for &a in &sel {
                proj = proj * self.shape[a] + idx[a];
            }
            out[proj] = out[proj] + p;
        }
        Ok(out)
    }

    /// H[X_S] for a subset S of axes.
    pub fn marginal_entropy(&self, axes: &[usize]) -> Result<F> {
        Ok(self
            .marginal(axes)?
            .iter()
            .fold(F::zero(), |acc, &x| acc + plogp(x)))
    }

    /// H[target | given] as the mixture sum_y P(given=y) H[target | given=y].
    pub fn conditional_entropy(&self, target: usize, given: usize) -> Result<F> {
        self.check_axis(target)?;
        self.check_axis(given)?;
        if target == given {
            return Err(Error::Domain(
                "conditional entropy needs distinct axes".into(),
            ));
        }
        // pair[t][y] laid out with target-major order via marginal().
        let pair = self.marginal(&[target.min(given), target.max(given)])?;
        let (t_size, y_size, t_major) = if target < given {
            (self.shape[target], self.shape[given], true)
        } else {
            (self.shape[target], self.shape[given], false)
        };
        let mut h = F::zero();
        for y in 0..y_size {
            let mut mass = F::zero();
            for t in 0..t_size {
                mass = mass + pair[pair_index(t, y, t_size, y_size, t_major)];
            }
            if mass <= F::zero() {
                continue;
            }
            let mut hy = F::zero();
            for t in 0..t_size {
                hy = hy + plogp(pair[pair_index(t, y, t_size, y_size, t_major)] / mass);
            }
            h = h + mass * hy;
        }
        Ok(h)
    }
}

fn pair_index(t: usize, y: usize, t_size: usize, y_size: usize, t_major: bool) -> usize {
    if t_major {
        t * y_size + y
    } else {
        y * t_size + t
    }
}

/// |H[(X,Y)] - H[X] - H[Y|X]| on a two-axis joint; below 1e-9 for every
/// valid input.
pub fn check_chain_rule<F: Float>(joint: &JointDistribution<F>) -> Result<F> {
    if joint.arity() != 2 {
        return Err(Error::Domain(
            "chain rule check needs exactly two axes".into(),
        ));
    }
    let lhs = joint.entropy();
    let rhs = joint.marginal_entropy(&[0])? + joint.conditional_entropy(1, 0)?;
    Ok((lhs - rhs).abs())
}

/// sum_i H[X_{S_i}] - k*H[X] where every axis is covered by at least k of the
/// sets S_i; the margin is nonnegative up to rounding.
pub fn check_shearer<F: Float>(
    joint: &JointDistribution<F>,
    covers: &[Vec<usize>],
    k: usize,
) -> Result<F> {
    let mut count = vec![0usize; joint.arity()];
    for cover in covers {
        for &a in cover {
            joint.check_axis(a)?;
            count[a] += 1;
        }
    }
    if let Some(axis) = count.iter().position(|&c| c < k) {
        return Err(Error::Contract(format!(
            "axis {axis} covered {} times, need at least {k}",
            count[axis]
        )));
    }
    let mut sum = F::zero();
    for cover in covers {
        sum = sum + joint.marginal_entropy(cover)?;
    }
    Ok(sum - F::from(k).unwrap() * joint.entropy())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_joint(rng: &mut ChaCha8Rng, shape: &[usize]) -> JointDistribution<f64> {
        let cells: usize = shape.iter().product();
        let mut raw: Vec<f64> = (0..cells).map(|_| rng.gen_range(0.0f64..1.0)).collect();
        // Sprinkle zeros to hit the 0*log 0 convention.
        for x in raw.iter_mut() {
            if rng.gen_bool(0.15) {
                *x = 0.0;
            }
        }
        let total: f64 = raw.iter().sum();
        if total == 0.0 {
            raw[0] = 1.0;
        } else {
            for x in raw.iter_mut() {
                *x /= total;
            }
        }
        JointDistribution::new(shape.to_vec(), raw).unwrap()
    }

    #[test]
    fn entropy_basics() {
        let half = Distribution::new(vec![0.5, 0.5]).unwrap();
        assert!((half.entropy() - 1.0).abs() < 1e-12);

        let point = Distribution::new(vec![1.0, 0.0]).unwrap();
        assert_eq!(point.entropy(), 0.0);

        for n in [2usize, 3, 7, 20] {
            let u = Distribution::<f64>::uniform(n).unwrap();
            assert!((u.entropy() - (n as f64).log2()).abs() < 1e-12);
        }

        assert!(Distribution::new(vec![0.5, 0.6]).is_err());
        assert!(Distribution::new(vec![-0.1, 1.1]).is_err());
        assert!(Distribution::<f64>::new(vec![]).is_err());
    }

    #[test]
    fn entropy_below_log_n_except_uniform() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let n = rng.gen_range(2..8);
            let mut p: Vec<f64> = (0..n).map(|_| rng.gen_range(0.01f64..1.0)).collect();
            let total: f64 = p.iter().sum();
            for x in p.iter_mut() {
                *x /= total;
            }
            let d = Distribution::new(p.clone()).unwrap();
            let h = d.entropy();
            let cap = (n as f64).log2();
            assert!(h <= cap + 1e-9);
            let uniformish = p.iter().all(|&x| (x - 1.0 / n as f64).abs() < 1e-9);
            if cap - h < 1e-9 {
                assert!(uniformish, "equality only at the uniform distribution");
            }
        }
    }

    #[test]
    fn conditional_entropy_cases() {
        // Independent bits: H[X|Y] = H[X] = 1.
        let indep = JointDistribution::new(vec![2, 2], vec![0.25; 4]).unwrap();
        assert!((indep.conditional_entropy(0, 1).unwrap() - 1.0).abs() < 1e-12);

        // Y = X (uniform): H[X|Y] = 0 and H[Y|X] = 0.
        let copy = JointDistribution::new(vec![2, 2], vec![0.5, 0.0, 0.0, 0.5]).unwrap();
        assert!(copy.conditional_entropy(0, 1).unwrap().abs() < 1e-12);
        assert!(copy.conditional_entropy(1, 0).unwrap().abs() < 1e-12);
        // ... and H[(X,Y)] = H[X].
        assert!((copy.entropy() - copy.marginal_entropy(&[0]).unwrap()).abs() < 1e-12);

        // Deterministic function of a 4-valued X.
        let mut table = vec![0.0f64; 8]; // shape [4, 2], y = x mod 2
        for x in 0..4 {
            table[x * 2 + (x % 2)] = 0.25;
        }
        let f = JointDistribution::new(vec![4, 2], table).unwrap();
        assert!(f.conditional_entropy(1, 0).unwrap().abs() < 1e-12);

        assert!(indep.conditional_entropy(0, 0).is_err());
        assert!(indep.conditional_entropy(0, 5).is_err());
    }

    #[test]
    fn chain_rule_residual_small() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..300 {
            let shape = [rng.gen_range(2..5), rng.gen_range(2..5)];
            let j = random_joint(&mut rng, &shape);
            assert!(check_chain_rule(&j).unwrap() < 1e-9);
        }
        let three = random_joint(&mut rng, &[2, 2, 2]);
        assert!(check_chain_rule(&three).is_err());
    }

    #[test]
    fn shearer_margins() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let shape = [
                rng.gen_range(2..4),
                rng.gen_range(2..4),
                rng.gen_range(2..4),
            ];
            let j = random_joint(&mut rng, &shape);

            // Singleton cover, k = 1: subadditivity.
            let singles = vec![vec![0], vec![1], vec![2]];
            assert!(check_shearer(&j, &singles, 1).unwrap() >= -1e-9);

            // Pairwise cover, each axis twice.
            let pairs = vec![vec![0, 1], vec![0, 2], vec![1, 2]];
            assert!(check_shearer(&j, &pairs, 2).unwrap() >= -1e-9);

            // Full cover k = m gives margin 0.
            let fulls = vec![vec![0, 1, 2], vec![0, 1, 2], vec![0, 1, 2]];
            assert!(check_shearer(&j, &fulls, 3).unwrap().abs() < 1e-9);
        }

        let j = random_joint(&mut rng, &[2, 2, 2]);
        assert!(check_shearer(&j, &[vec![0], vec![1]], 1).is_err());
    }

    #[test]
    fn data_processing_on_derived_axis() {
        // X uniform on 4 values, Y = floor(X/2) a function of X, Z noisy copy
        // of X. Then H[Z|X] <= H[Z|Y].
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for _ in 0..100 {
            let mut table = vec![0.0f64; 4 * 2 * 4];
            for x in 0..4usize {
                let y = x / 2;
                for z in 0..4usize {
                    let w = if z == x { 0.7 } else { 0.1 };
                    table[(x * 2 + y) * 4 + z] = 0.25 * w * rng.gen_range(0.5..1.5);
                }
            }
            let total: f64 = table.iter().sum();
            for v in table.iter_mut() {
                *v /= total;
            }
            let j = JointDistribution::new(vec![4, 2, 4], table).unwrap();
            let hzx = j.conditional_entropy(2, 0).unwrap();
            let hzy = j.conditional_entropy(2, 1).unwrap();
            assert!(hzx <= hzy + 1e-9, "H[Z|X]={hzx} vs H[Z|Y]={hzy}");
        }
    }

    #[test]
    fn marginals_are_distributions() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let j = random_joint(&mut rng, &[3, 2, 4]);
        for axes in [vec![0], vec![2], vec![0, 2], vec![0, 1, 2]] {
            let m = j.marginal(&axes).unwrap();
            let total: f64 = m.iter().sum();
            assert!((total - 1.0).abs() < 1e-9);
        }
        assert!(j.marginal(&[0, 0]).is_err());
        assert_eq!(j.axes(), &["X0", "X1", "X2"]);
    }
}
