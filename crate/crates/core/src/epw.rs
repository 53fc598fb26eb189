//! The exponential projected walk: a private prediction mechanism for
//! thresholds and unions of intervals over an integer domain.
//!
//! To predict at a query point the mechanism walks over the examples at or
//! left of the query in canonical order, moving a counter up for label 1
//! and down for label 0, clamped to `[-T, T]`, and outputs a Bernoulli
//! draw whose bias is the logistic of the final counter value. Removing
//! one example moves the final counter by at most one, which is what makes
//! the prediction differentially private.
//!
//! The module also carries the exact interval-ERM solver
//! ([`opt_intervals`]) used as the independent oracle in the empirical
//! error tests, implemented as a dynamic program over
//! positions x flips-used x current-label.

use serde::{Deserialize, Serialize};

use crate::data::SortedDataset;
use crate::error::{Error, Result};
use crate::mechanisms::sigmoid_bias;
use crate::rng::RandomStream;

/// Parameters of the walk: projection bound `T >= 1` and `epsilon > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WalkParams {
    projection_bound: u32,
    epsilon: f64,
}

impl WalkParams {
    pub fn new(projection_bound: u32, epsilon: f64) -> Result<Self> {
        if projection_bound < 1 {
            return Err(Error::invalid("projection_bound", "must be at least 1"));
        }
        if !(epsilon > 0.0) || !epsilon.is_finite() {
            return Err(Error::invalid("epsilon", format!("must be > 0, got {epsilon}")));
        }
        Ok(WalkParams { projection_bound, epsilon })
    }

    pub fn projection_bound(&self) -> u32 {
        self.projection_bound
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }
}

/// A union-of-intervals hypothesis over `[1, N]`, parameterized by strictly
/// increasing endpoints `a_1 < ... < a_k` in `[1, N+1]`. A point `x` is
/// labeled 1 iff the number of endpoints at or below `x` is odd.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalHypothesis {
    endpoints: Vec<u32>,
    universe_size: u32,
}

impl IntervalHypothesis {
    pub fn new(endpoints: Vec<u32>, universe_size: u32) -> Result<Self> {
        if endpoints.is_empty() {
            return Err(Error::invalid("endpoints", "need at least one endpoint"));
        }
        if endpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid("endpoints", "must be strictly increasing"));
        }
        if endpoints[0] < 1 || *endpoints.last().unwrap() > universe_size + 1 {
            return Err(Error::invalid(
                "endpoints",
                format!("must lie in [1, {}]", universe_size + 1),
            ));
        }
        Ok(IntervalHypothesis { endpoints, universe_size })
    }

    pub fn endpoints(&self) -> &[u32] {
        &self.endpoints
    }

    pub fn universe_size(&self) -> u32 {
        self.universe_size
    }

    /// Evaluate the hypothesis at `x`.
    pub fn eval(&self, x: u32) -> Result<bool> {
        if x < 1 || x > self.universe_size {
            return Err(Error::QueryOutOfRange { x, universe_size: self.universe_size });
        }
        let crossings = self.endpoints.iter().take_while(|&&a| x >= a).count();
        Ok(crossings % 2 == 1)
    }
}

/// Convenience form of [`IntervalHypothesis::eval`].
pub fn eval_interval_hypothesis(h: &IntervalHypothesis, x: u32) -> Result<bool> {
    h.eval(x)
}

fn clamp_walk(v: i64, t: i64) -> i64 {
    v.clamp(-t, t)
}

/// Final walk value `V(S, x)`: the label counter after consuming every
/// example with `x_i <= x` in canonical order, clamped to `[-T, T]` after
/// each step. Deterministic; `0` on an empty prefix.
pub fn epw_value(dataset: &SortedDataset, x: u32, projection_bound: u32) -> i64 {
    let t = i64::from(projection_bound);
    let mut v = 0i64;
    for p in dataset.iter() {
        if p.x > x {
            break;
        }
        v = clamp_walk(v + p.step(), t);
    }
    v
}

/// Walk values at every query point `1..=N` in one pass over the dataset.
///
/// Same results as calling [`epw_value`] per point, in O(n + N) total.
pub fn epw_all_values(dataset: &SortedDataset, projection_bound: u32) -> Vec<i64> {
    let n_positions = dataset.universe_size() as usize;
    let t = i64::from(projection_bound);
    let mut values = Vec::with_capacity(n_positions);
    let mut v = 0i64;
    let mut iter = dataset.iter().peekable();
    for x in 1..=dataset.universe_size() {
        while let Some(p) = iter.peek() {
            if p.x > x {
                break;
            }
            v = clamp_walk(v + p.step(), t);
            iter.next();
        }
        values.push(v);
    }
    values
}

/// Output bias of the walk mechanism at `x`.
pub fn epw_bias(dataset: &SortedDataset, x: u32, params: &WalkParams) -> f64 {
    sigmoid_bias(epw_value(dataset, x, params.projection_bound), params.epsilon)
}

/// Output biases at every query point `1..=N`.
pub fn epw_all_biases(dataset: &SortedDataset, params: &WalkParams) -> Vec<f64> {
    epw_all_values(dataset, params.projection_bound)
        .into_iter()
        .map(|v| sigmoid_bias(v, params.epsilon))
        .collect()
}

/// One private prediction: a Bernoulli draw with bias [`epw_bias`].
pub fn epw_predict(
    dataset: &SortedDataset,
    x: u32,
    params: &WalkParams,
    rng: &mut RandomStream,
) -> bool {
    rng.bernoulli(epw_bias(dataset, x, params))
}

/// Projection bound `T = ceil(2 ln(2/alpha) / epsilon)` that balances the
/// clamp-tail and per-band contributions to the empirical error at target
/// excess `alpha`.
pub fn choose_t(alpha: f64, epsilon: f64) -> Result<u32> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::invalid("alpha", format!("must be in (0, 1), got {alpha}")));
    }
    if !(epsilon > 0.0) {
        return Err(Error::invalid("epsilon", format!("must be > 0, got {epsilon}")));
    }
    Ok((2.0 * (2.0 / alpha).ln() / epsilon).ceil() as u32)
}

/// Expected disagreement rate of the mechanism on its own training set,
/// `(1/n) sum_i |y_i - bias(x_i)|`, computed in closed form (no sampling).
pub fn empirical_error(dataset: &SortedDataset, params: &WalkParams) -> Result<f64> {
    if dataset.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let biases = epw_all_biases(dataset, params);
    let total: f64 = dataset
        .iter()
        .map(|p| {
            let b = biases[(p.x - 1) as usize];
            if p.y {
                1.0 - b
            } else {
                b
            }
        })
        .sum();
    Ok(total / dataset.len() as f64)
}

/// Minimum weighted cost of labeling positions `1..=N` with a function
/// from the k-endpoint interval class, plus one optimal hypothesis.
///
/// `cost0[i]` / `cost1[i]` is the cost of assigning label 0 / 1 to
/// position `i + 1`. States are (position, flips used, current label);
/// at most one flip may sit at each position and one final flip may be
/// parked at `N + 1`. Ties break toward the lexicographically smallest
/// endpoint sequence.
pub fn optimal_interval_labeling(
    cost0: &[f64],
    cost1: &[f64],
    k: usize,
) -> Result<(f64, IntervalHypothesis)> {
    let n = cost0.len();
    if n == 0 || cost1.len() != n {
        return Err(Error::invalid("costs", "need equal-length nonempty cost slices"));
    }
    if k < 1 {
        return Err(Error::invalid("k", "must be at least 1"));
    }
    if k > n + 1 {
        return Err(Error::invalid("k", format!("at most {} endpoints fit in [1, {}]", n + 1, n + 1)));
    }
    let universe_size = n as u32;
    let cost = |pos: usize, label: usize| if label == 0 { cost0[pos] } else { cost1[pos] };

    // table[pos][j][b]: cheapest completion of positions pos..n given the
    // label of position pos-1 is b and j flips remain for positions >= pos
    // (of which at most one may be parked beyond the domain).
    let inf = f64::INFINITY;
    let idx = |pos: usize, j: usize| pos * (k + 1) + j;
    let mut table = vec![[inf; 2]; (n + 1) * (k + 1)];
    for j in 0..=k.min(1) {
        table[idx(n, j)] = [0.0, 0.0];
    }
    for pos in (0..n).rev() {
        for j in 0..=k {
            for b in 0..2 {
                let stay = cost(pos, b) + table[idx(pos + 1, j)][b];
                let mut best = stay;
                if j >= 1 {
                    let flip = cost(pos, 1 - b) + table[idx(pos + 1, j - 1)][1 - b];
                    if flip < best {
                        best = flip;
                    }
                }
                table[idx(pos, j)][b] = best;
            }
        }
    }

    let best_cost = table[idx(0, k)][0];
    debug_assert!(best_cost.is_finite());

    // Greedy reconstruction, flipping as early as optimality allows: this
    // yields the lexicographically smallest endpoint sequence.
    let mut endpoints = Vec::with_capacity(k);
    let mut j = k;
    let mut b = 0usize;
    for pos in 0..n {
        if j >= 1 {
            let flip = cost(pos, 1 - b) + table[idx(pos + 1, j - 1)][1 - b];
            if flip == table[idx(pos, j)][b] {
                endpoints.push(pos as u32 + 1);
                j -= 1;
                b = 1 - b;
                continue;
            }
        }
    }
    if j == 1 {
        endpoints.push(universe_size + 1);
        j -= 1;
    }
    debug_assert_eq!(j, 0);
    let hypothesis = IntervalHypothesis::new(endpoints, universe_size)?;
    Ok((best_cost, hypothesis))
}

/// Exact interval ERM: the minimum number of misclassified examples over
/// the k-endpoint interval class, with one argmin hypothesis.
///
/// This is the independent oracle the walk's empirical error bound is
/// tested against; it never consults the walk.
pub fn opt_intervals(dataset: &SortedDataset, k: usize) -> Result<(u32, IntervalHypothesis)> {
    let n_positions = dataset.universe_size() as usize;
    let mut cost0 = vec![0.0; n_positions];
    let mut cost1 = vec![0.0; n_positions];
    for p in dataset.iter() {
        let i = (p.x - 1) as usize;
        if p.y {
            cost0[i] += 1.0; // labeling this position 0 misclassifies a 1-example
        } else {
            cost1[i] += 1.0;
        }
    }
    let (cost, hypothesis) = optimal_interval_labeling(&cost0, &cost1, k)?;
    debug_assert_eq!(cost.fract(), 0.0);
    Ok((cost as u32, hypothesis))
}

/// Per-example walk steps `(value_before, value_after, label)`, in
/// canonical order. Test instrumentation for the band-structure argument
/// behind the empirical error bound.
#[doc(hidden)]
pub fn walk_trace(dataset: &SortedDataset, projection_bound: u32) -> Vec<(i64, i64, bool)> {
    let t = i64::from(projection_bound);
    let mut v = 0i64;
    dataset
        .iter()
        .map(|p| {
            let before = v;
            v = clamp_walk(v + p.step(), t);
            (before, v, p.y)
        })
        .collect()
}
