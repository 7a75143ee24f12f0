use serde::Serialize;

use super::AnalysisError;

pub const MAX_ITERATIONS: usize = 100;
pub const TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClusterResult {
    pub k: usize,
    /// Strictly ascending.
    pub centroids: Vec<f64>,
    /// Centroid index per input score, in input order.
    pub assignments: Vec<usize>,
    /// Sum of squared distances to the assigned centroid.
    pub inertia: f64,
    pub iterations: usize,
    /// Inertia after each assignment step.
    pub inertia_trace: Vec<f64>,
    pub seed: u64,
}

impl ClusterResult {
    /// Midpoints between consecutive centroids.
    pub fn boundaries(&self) -> Vec<f64> {
        self.centroids
            .windows(2)
            .map(|w| (w[0] + w[1]) / 2.0)
            .collect()
    }
}

fn nearest(centroids: &[f64], x: f64) -> usize {
    let mut best = 0;
    for (i, c) in centroids.iter().enumerate().skip(1) {
        if (x - c).abs() < (x - centroids[best]).abs() {
            best = i;
        }
    }
    best
}

fn assign(scores: &[f64], centroids: &[f64], out: &mut [usize]) -> f64 {
    let mut inertia = 0.0;
    for (slot, &x) in out.iter_mut().zip(scores) {
        *slot = nearest(centroids, x);
        inertia += (x - centroids[*slot]).powi(2);
    }
    inertia
}

/// Lloyd's algorithm on a line.
///
/// Centroids start at the k quantile midpoints of the sorted scores (ties
/// ordered by input index). A cluster that empties is moved onto the point
/// farthest from its current centroid. Stops once no centroid moves by more
/// than [`TOLERANCE`] or after [`MAX_ITERATIONS`]. Initialization is fully
/// deterministic, so `seed` is only carried through into the result.
pub fn kmeans_1d(scores: &[f64], k: usize, seed: u64) -> Result<ClusterResult, AnalysisError> {
    if k < 2 {
        return Err(AnalysisError::TooFewClusters(k));
    }
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[a].total_cmp(&scores[b]).then(a.cmp(&b)));
    let distinct = order
        .windows(2)
        .filter(|w| scores[w[0]] != scores[w[1]])
        .count()
        + usize::from(!scores.is_empty());
    if distinct < k {
        return Err(AnalysisError::TooFewDistinct { k, distinct });
    }

    let len = scores.len();
    let mut centroids: Vec<f64> = (0..k)
        .map(|j| scores[order[((2 * j + 1) * len) / (2 * k)]])
        .collect();
    let mut assignments = vec![0usize; len];
    let mut inertia_trace = Vec::new();
    let mut iterations = 0;

    loop {
        let inertia = assign(scores, &centroids, &mut assignments);
        inertia_trace.push(inertia);
        if iterations == MAX_ITERATIONS {
            break;
        }
        iterations += 1;

        let mut sums = vec![0.0; k];
        let mut counts = vec![0usize; k];
        for (&a, &x) in assignments.iter().zip(scores) {
            sums[a] += x;
            counts[a] += 1;
        }
        let mut next = centroids.clone();
        for c in 0..k {
            if counts[c] > 0 {
                next[c] = sums[c] / counts[c] as f64;
            }
        }
        for c in 0..k {
            if counts[c] == 0 {
                next[c] = farthest_point(scores, &assignments, &next);
                // claim it so a second empty cluster picks a different point
                if let Some(i) = scores.iter().position(|&x| x == next[c]) {
                    assignments[i] = c;
                }
            }
        }
        let moved = centroids
            .iter()
            .zip(&next)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        centroids = next;
        if moved < TOLERANCE {
            let inertia = assign(scores, &centroids, &mut assignments);
            inertia_trace.push(inertia);
            break;
        }
    }

    // sort centroids and remap assignments
    let mut idx: Vec<usize> = (0..k).collect();
    idx.sort_by(|&a, &b| centroids[a].total_cmp(&centroids[b]));
    let mut rank = vec![0; k];
    for (r, &i) in idx.iter().enumerate() {
        rank[i] = r;
    }
    let centroids: Vec<f64> = idx.iter().map(|&i| centroids[i]).collect();
    for a in &mut assignments {
        *a = rank[*a];
    }
    let inertia = *inertia_trace.last().expect("at least one assignment step");

    Ok(ClusterResult {
        k,
        centroids,
        assignments,
        inertia,
        iterations,
        inertia_trace,
        seed,
    })
}

fn farthest_point(scores: &[f64], assignments: &[usize], centroids: &[f64]) -> f64 {
    let mut best = (f64::NEG_INFINITY, 0.0);
    for (&x, &a) in scores.iter().zip(assignments) {
        let d = (x - centroids[a]).abs();
        if d > best.0 {
            best = (d, x);
        }
    }
    best.1
}
