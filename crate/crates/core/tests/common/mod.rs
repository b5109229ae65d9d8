//! Independent reference implementations. Each one follows the textbook
//! definition directly (exact integer arithmetic, full sorts, naive loops)
//! and shares no code path with the library.

#![allow(dead_code)]

use rand::Rng;

// ---- grain counting ----------------------------------------------------

/// Rule oracle for a 3x3 window given as a 9-bit mask (bit `r*3+c`).
pub fn grain_count_rule(bits: u16) -> usize {
    let cell = |r: usize, c: usize| bits >> (r * 3 + c) & 1 == 1;
    if !cell(1, 1) {
        return 0;
    }
    let mut n = 0;
    for r in 0..3 {
        for c in 0..3 {
            if (r, c) != (1, 1) && cell(r, c) {
                n += 1;
            }
        }
    }
    n
}

/// Naive tiling oracle over a row-major boolean grid.
pub fn grain_histogram_naive(grid: &[Vec<bool>], k: usize) -> Vec<u64> {
    let mut counts = vec![0u64; k * k];
    let h = grid.len();
    let w = grid[0].len();
    let mut wr = 0;
    while wr + k <= h {
        let mut wc = 0;
        while wc + k <= w {
            let center = grid[wr + k / 2][wc + k / 2];
            let mut others = 0;
            for r in wr..wr + k {
                for c in wc..wc + k {
                    if (r, c) != (wr + k / 2, wc + k / 2) && grid[r][c] {
                        others += 1;
                    }
                }
            }
            counts[if center { others } else { 0 }] += 1;
            wc += k;
        }
        wr += k;
    }
    counts
}

// ---- feature statistics ------------------------------------------------

/// Error-free double-double accumulator (Knuth two-sum).
#[derive(Default, Clone, Copy)]
pub struct DoubleDouble {
    hi: f64,
    lo: f64,
}

impl DoubleDouble {
    pub fn add(&mut self, x: f64) {
        let s = self.hi + x;
        let bp = s - self.hi;
        let err = (self.hi - (s - bp)) + (x - bp);
        self.hi = s;
        self.lo += err;
    }

    pub fn value(self) -> f64 {
        self.hi + self.lo
    }
}

/// `[energy, entropy, mean, variance]` from integer counts. Energy, mean
/// and the second moment are exact rationals; entropy uses
/// `log2 M - (sum N log2 N) / M` with a double-double sum.
pub fn stats_from_counts(counts: &[u64]) -> [f64; 4] {
    let m: u128 = counts.iter().map(|&c| c as u128).sum();
    let sum_g: u128 = counts
        .iter()
        .enumerate()
        .map(|(g, &c)| g as u128 * c as u128)
        .sum();
    let sum_sq: u128 = counts.iter().map(|&c| c as u128 * c as u128).sum();
    // sum_g N(g) (g M - S)^2 / M^3
    let second: u128 = counts
        .iter()
        .enumerate()
        .map(|(g, &c)| {
            let d = (g as i128 * m as i128 - sum_g as i128).unsigned_abs();
            d * d * c as u128
        })
        .sum();
    let mut acc = DoubleDouble::default();
    for &c in counts {
        if c > 0 {
            acc.add(c as f64 * (c as f64).log2());
        }
    }
    let mf = m as f64;
    let entropy = mf.log2() - acc.value() / mf;
    let energy = sum_sq as f64 / (mf * mf);
    let mean = sum_g as f64 / mf;
    let variance = (second as f64 / (mf * mf * mf)).sqrt();
    [energy, entropy.max(0.0), mean, variance]
}

pub fn rel_err(actual: f64, expected: f64) -> f64 {
    if expected == 0.0 {
        actual.abs()
    } else {
        ((actual - expected) / expected).abs()
    }
}

// ---- Otsu --------------------------------------------------------------

/// Exhaustive Otsu with exact rational comparison of
/// `w0 w1 (mu0 - mu1)^2 = (s0 n1 - s1 n0)^2 / (N^2 n0 n1)`.
/// Requires small histograms so products fit in `u128`.
pub fn otsu_exhaustive(counts: &[u64; 256]) -> u8 {
    let occupied: Vec<usize> = (0..256).filter(|&v| counts[v] > 0).collect();
    if occupied.len() == 1 {
        return occupied[0] as u8;
    }
    let n: u128 = counts.iter().map(|&c| c as u128).sum();
    let s: u128 = counts
        .iter()
        .enumerate()
        .map(|(v, &c)| v as u128 * c as u128)
        .sum();
    // score as (numerator, denominator); empty classes score 0/1
    let score = |t: usize| -> (u128, u128) {
        let n0: u128 = counts[..=t].iter().map(|&c| c as u128).sum();
        let s0: u128 = counts[..=t]
            .iter()
            .enumerate()
            .map(|(v, &c)| v as u128 * c as u128)
            .sum();
        let (n1, s1) = (n - n0, s - s0);
        if n0 == 0 || n1 == 0 {
            return (0, 1);
        }
        let d = (s0 * n1).abs_diff(s1 * n0);
        (d * d, n0 * n1)
    };
    let mut best = 0usize;
    let mut best_score = score(0);
    for t in 1..256 {
        let sc = score(t);
        if sc.0 * best_score.1 > best_score.0 * sc.1 {
            best = t;
            best_score = sc;
        }
    }
    best as u8
}

/// Random histogram with many empty bins; counts stay small for the
/// exact oracle.
pub fn random_histogram(rng: &mut impl Rng) -> [u64; 256] {
    let mut counts = [0u64; 256];
    let occupancy = rng.gen_range(0.02..1.0);
    for c in counts.iter_mut() {
        if rng.gen_bool(occupancy) {
            *c = rng.gen_range(0..200);
        }
    }
    if counts.iter().all(|&c| c == 0) {
        counts[rng.gen_range(0..256)] = 1;
    }
    counts
}

// ---- baselines ---------------------------------------------------------

/// LBP by explicit bit assembly, neighbors clockwise from the top-left,
/// first neighbor most significant.
pub fn lbp_naive(px: &[Vec<u8>]) -> Vec<f64> {
    let h = px.len();
    let w = px[0].len();
    let mut hist = vec![0.0; 256];
    let mut total = 0.0;
    for y in 1..h - 1 {
        for x in 1..w - 1 {
            let c = px[y][x];
            let ring = [
                px[y - 1][x - 1],
                px[y - 1][x],
                px[y - 1][x + 1],
                px[y][x + 1],
                px[y + 1][x + 1],
                px[y + 1][x],
                px[y + 1][x - 1],
                px[y][x - 1],
            ];
            let mut code = 0usize;
            for (i, &n) in ring.iter().enumerate() {
                if n >= c {
                    code += 1 << (7 - i);
                }
            }
            hist[code] += 1.0;
            total += 1.0;
        }
    }
    hist.iter().map(|c| c / total).collect()
}

/// 16-dim GLCM features by counting every ordered pair in both directions.
pub fn glcm_naive(px: &[Vec<u8>], levels: usize) -> Vec<f64> {
    let h = px.len() as isize;
    let w = px[0].len() as isize;
    let q = |v: u8| (v as usize * levels) / 256;
    let mut out = Vec::new();
    for (dr, dc) in [(0isize, 1isize), (1, 0), (1, 1), (1, -1)] {
        let mut m = vec![vec![0.0f64; levels]; levels];
        let mut total = 0.0;
        for r in 0..h {
            for c in 0..w {
                let (r2, c2) = (r + dr, c + dc);
                if r2 < 0 || r2 >= h || c2 < 0 || c2 >= w {
                    continue;
                }
                let a = q(px[r as usize][c as usize]);
                let b = q(px[r2 as usize][c2 as usize]);
                m[a][b] += 1.0;
                m[b][a] += 1.0;
                total += 2.0;
            }
        }
        let p: Vec<Vec<f64>> = m
            .iter()
            .map(|row| row.iter().map(|v| v / total).collect())
            .collect();
        let idx = || (0..levels).flat_map(|i| (0..levels).map(move |j| (i, j)));
        let contrast: f64 = idx()
            .map(|(i, j)| (i as f64 - j as f64).powi(2) * p[i][j])
            .sum();
        let energy: f64 = idx().map(|(i, j)| p[i][j] * p[i][j]).sum();
        let homogeneity: f64 = idx()
            .map(|(i, j)| p[i][j] / (1.0 + (i as f64 - j as f64).powi(2)))
            .sum();
        let mu_i: f64 = idx().map(|(i, j)| i as f64 * p[i][j]).sum();
        let mu_j: f64 = idx().map(|(i, j)| j as f64 * p[i][j]).sum();
        let sd_i = idx()
            .map(|(i, j)| (i as f64 - mu_i).powi(2) * p[i][j])
            .sum::<f64>()
            .sqrt();
        let sd_j = idx()
            .map(|(i, j)| (j as f64 - mu_j).powi(2) * p[i][j])
            .sum::<f64>()
            .sqrt();
        let cov: f64 = idx()
            .map(|(i, j)| (i as f64 - mu_i) * (j as f64 - mu_j) * p[i][j])
            .sum();
        let correlation = if sd_i == 0.0 || sd_j == 0.0 {
            0.0
        } else {
            cov / (sd_i * sd_j)
        };
        out.extend([contrast, energy, homogeneity, correlation]);
    }
    out
}

// ---- classifiers -------------------------------------------------------

/// KNN by sorting every training point by `(distance, index)`.
pub fn knn_full_sort(train: &[(Vec<f64>, String)], query: &[f64], k: usize) -> String {
    let mut d: Vec<(f64, usize)> = train
        .iter()
        .enumerate()
        .map(|(i, (x, _))| {
            let dist = x
                .iter()
                .zip(query)
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt();
            (dist, i)
        })
        .collect();
    d.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    let nearest = &d[..k.min(d.len())];
    let mut labels: Vec<&String> = nearest.iter().map(|&(_, i)| &train[i].1).collect();
    labels.sort();
    labels.dedup();
    let summary: Vec<(usize, f64, &String)> = labels
        .into_iter()
        .map(|l| {
            let hits: Vec<f64> = nearest
                .iter()
                .filter(|&&(_, i)| &train[i].1 == l)
                .map(|&(d, _)| d)
                .collect();
            (hits.len(), hits.iter().sum::<f64>() / hits.len() as f64, l)
        })
        .collect();
    let max_votes = summary.iter().map(|s| s.0).max().unwrap();
    let tied: Vec<_> = summary.iter().filter(|s| s.0 == max_votes).collect();
    let min_mean = tied.iter().map(|s| s.1).fold(f64::INFINITY, f64::min);
    tied.iter().find(|s| s.1 == min_mean).unwrap().2.clone()
}

/// Gaussian naive Bayes straight from the definitions: class frequency
/// priors, MLE means and variances (floored), and the product of normal
/// densities evaluated one class at a time. Log-space with a double-double
/// sum to avoid underflow.
pub fn naive_bayes_direct(train: &[(Vec<f64>, String)], query: &[f64], floor: f64) -> String {
    let mut labels: Vec<&String> = train.iter().map(|(_, l)| l).collect();
    labels.sort();
    labels.dedup();
    let mut best: Option<(f64, &String)> = None;
    for label in labels {
        let rows: Vec<&Vec<f64>> = train
            .iter()
            .filter(|(_, l)| l == label)
            .map(|(x, _)| x)
            .collect();
        let n = rows.len() as f64;
        let mut acc = DoubleDouble::default();
        acc.add((n / train.len() as f64).ln());
        for d in 0..query.len() {
            let mean = rows.iter().map(|r| r[d]).sum::<f64>() / n;
            let var = (rows.iter().map(|r| (r[d] - mean).powi(2)).sum::<f64>() / n).max(floor);
            let density_log = -((2.0 * std::f64::consts::PI * var).sqrt()).ln()
                - (query[d] - mean).powi(2) / (2.0 * var);
            acc.add(density_log);
        }
        let score = acc.value();
        if best.map_or(true, |(s, _)| score > s) {
            best = Some((score, label));
        }
    }
    best.unwrap().1.clone()
}

/// Population z-scoring fitted on `train`, applied to `train` and `query`.
pub fn zscore(
    train: &[(Vec<f64>, String)],
    query: &[f64],
    floor: f64,
) -> (Vec<(Vec<f64>, String)>, Vec<f64>) {
    let dim = query.len();
    let n = train.len() as f64;
    let means: Vec<f64> = (0..dim)
        .map(|d| train.iter().map(|(x, _)| x[d]).sum::<f64>() / n)
        .collect();
    let stds: Vec<f64> = (0..dim)
        .map(|d| {
            (train
                .iter()
                .map(|(x, _)| (x[d] - means[d]).powi(2))
                .sum::<f64>()
                / n)
                .sqrt()
                .max(floor)
        })
        .collect();
    let z = |x: &[f64]| -> Vec<f64> { (0..dim).map(|d| (x[d] - means[d]) / stds[d]).collect() };
    (
        train.iter().map(|(x, l)| (z(x), l.clone())).collect(),
        z(query),
    )
}
