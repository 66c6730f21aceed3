//! L2-regularized hinge-loss linear classifier trained by dual coordinate descent.
//!
//! Minimizes λ/2 ‖w‖² + (1/n) Σ max(0, 1 − y_i (w·x_i + b)). The bias is folded into the weight
//! vector through a constant feature, so it is regularized too. Coordinates are visited in index
//! order, which makes training fully deterministic.

const EPS: f64 = 1e-6;
const MAX_PASSES: usize = 10_000;

#[derive(Debug, Clone, PartialEq)]
pub struct LinearModel {
    pub weights: Vec<f64>,
    pub bias: f64,
}

impl LinearModel {
    pub fn decision(&self, x: &[f64]) -> f64 {
        self.weights.iter().zip(x).map(|(w, v)| w * v).sum::<f64>() + self.bias
    }
}

/// `labels` are ±1. Rows of `rows` share one width.
pub fn train(rows: &[Vec<f64>], labels: &[f64], lambda: f64) -> LinearModel {
    let n = rows.len();
    let dim = rows.first().map_or(0, Vec::len);
    if n == 0 {
        return LinearModel {
            weights: vec![0.0; dim],
            bias: 0.0,
        };
    }
    let c = 1.0 / (lambda * n as f64);
    // w[dim] is the bias weight on the constant feature 1.
    let mut w = vec![0.0; dim + 1];
    let mut alpha = vec![0.0; n];
    let qii: Vec<f64> = rows
        .iter()
        .map(|r| r.iter().map(|v| v * v).sum::<f64>() + 1.0)
        .collect();
    for _ in 0..MAX_PASSES {
        let mut pg_max = f64::NEG_INFINITY;
        let mut pg_min = f64::INFINITY;
        for i in 0..n {
            let y = labels[i];
            let x = &rows[i];
            let wx: f64 = x.iter().zip(&w).map(|(a, b)| a * b).sum::<f64>() + w[dim];
            let g = y * wx - 1.0;
            let pg = if alpha[i] == 0.0 {
                g.min(0.0)
            } else if alpha[i] == c {
                g.max(0.0)
            } else {
                g
            };
            pg_max = pg_max.max(pg);
            pg_min = pg_min.min(pg);
            if pg != 0.0 {
                let old = alpha[i];
                alpha[i] = (old - g / qii[i]).clamp(0.0, c);
                let delta = (alpha[i] - old) * y;
                for (wj, xj) in w.iter_mut().zip(x) {
                    *wj += delta * xj;
                }
                w[dim] += delta;
            }
        }
        if pg_max - pg_min <= EPS {
            break;
        }
    }
    let bias = w.pop().unwrap();
    LinearModel { weights: w, bias }
}
