//! Expressive range histograms over two fixed artefact metrics.

use serde::{Deserialize, Serialize};

use crate::bitstring::BitString;
use crate::error::{Error, Result};
use crate::generators::GeneratorSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Metric {
    /// Fraction of 1-bits.
    Density,
    /// Longest constant run divided by artefact length.
    LongestRun,
}

impl Metric {
    /// Value in `[0, 1]`; the empty artefact scores 0 on both metrics.
    pub fn measure(self, a: &BitString) -> f64 {
        if a.is_empty() {
            return 0.0;
        }
        let n = a.len() as f64;
        match self {
            Metric::Density => a.count_ones() as f64 / n,
            Metric::LongestRun => {
                let mut best = 0;
                let mut run = 0;
                let mut prev = None;
                for b in a {
                    run = if prev == Some(b) { run + 1 } else { 1 };
                    best = best.max(run);
                    prev = Some(b);
                }
                best as f64 / n
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EraHistogram {
    pub label: String,
    pub metric_x: Metric,
    pub metric_y: Metric,
    pub bins: usize,
    /// `counts[x][y]`.
    pub counts: Vec<Vec<u64>>,
    pub samples: usize,
}

fn bin(v: f64, bins: usize) -> usize {
    ((v * bins as f64) as usize).min(bins - 1)
}

impl EraHistogram {
    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }

    /// Per-bin counts summed over the y metric.
    pub fn x_marginal(&self) -> Vec<u64> {
        self.counts.iter().map(|col| col.iter().sum()).collect()
    }

    /// Non-empty cells as CSV rows `x_bin,y_bin,count`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("x_bin,y_bin,count\n");
        for (x, col) in self.counts.iter().enumerate() {
            for (y, &c) in col.iter().enumerate() {
                if c > 0 {
                    s.push_str(&format!("{x},{y},{c}\n"));
                }
            }
        }
        s
    }
}

/// Density × longest-run histogram of `samples` seeded draws from `g`.
pub fn era_histogram(
    g: &GeneratorSpec,
    samples: usize,
    seed: u64,
    bins: usize,
) -> Result<EraHistogram> {
    if bins < 2 {
        return Err(Error::Parameter(format!(
            "need at least 2 bins, got {bins}"
        )));
    }
    let mut counts = vec![vec![0u64; bins]; bins];
    // Uniform draws with replacement, even when the space is small enough
    // to enumerate, so the histogram reflects sampling frequency.
    let inputs = draw_inputs(g.input_size(), samples, seed);
    for i in &inputs {
        let a = g.evaluate(i)?;
        let x = bin(Metric::Density.measure(&a), bins);
        let y = bin(Metric::LongestRun.measure(&a), bins);
        counts[x][y] += 1;
    }
    Ok(EraHistogram {
        label: g.label().to_owned(),
        metric_x: Metric::Density,
        metric_y: Metric::LongestRun,
        bins,
        counts,
        samples,
    })
}

fn draw_inputs(input_size: usize, samples: usize, seed: u64) -> Vec<BitString> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..samples)
        .map(|_| (0..input_size).map(|_| rng.random::<bool>()).collect())
        .collect()
}
