//! Moments of the superposed field by explicit expansion over its four
//! constituent modes.
//!
//! The signal mode is `A = a1 + a2` and the idler `B = b1 + b2`, where
//! `(a1, b1)` is the coherently driven pair and `(a2, b2)` the parametric
//! pair. The two pairs are independent, so every normally ordered word
//! factorizes into a product of moments taken from each pair's table. The
//! total field is `c = A + B`.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Normally ordered two-mode moments `<a^+p a^q b^+r b^s>` keyed by `[p, q, r, s]`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct MomentTable {
    order: usize,
    values: BTreeMap<[u8; 4], Complex64>,
}

impl MomentTable {
    pub fn new(order: usize) -> Self {
        Self {
            order,
            values: BTreeMap::new(),
        }
    }

    /// Every word with `p + q + r + s <= order`.
    pub fn words(order: usize) -> impl Iterator<Item = [u8; 4]> {
        let o = order as u8;
        (0..=o).flat_map(move |p| {
            (0..=o - p).flat_map(move |q| {
                (0..=o - p - q).flat_map(move |r| (0..=o - p - q - r).map(move |s| [p, q, r, s]))
            })
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn insert(&mut self, word: [u8; 4], value: Complex64) {
        self.values.insert(word, value);
    }

    pub fn get(&self, word: [u8; 4]) -> Result<Complex64> {
        if word == [0, 0, 0, 0] {
            return Ok(self
                .values
                .get(&word)
                .copied()
                .unwrap_or(Complex64::new(1.0, 0.0)));
        }
        self.values
            .get(&word)
            .copied()
            .ok_or(Error::MissingMoment(word[0], word[1], word[2], word[3]))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

fn binomial(n: u8, k: u8) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * f64::from(n - i) / f64::from(i + 1))
}

/// `<A^+pa A^qa B^+pb B^qb>` for the superposed signal and idler modes.
pub fn composite_word(
    word: [u8; 4],
    coherent: &MomentTable,
    subharmonic: &MomentTable,
) -> Result<Complex64> {
    let [pa, qa, pb, qb] = word;
    let mut total = Complex64::new(0.0, 0.0);
    for i in 0..=pa {
        for j in 0..=qa {
            for k in 0..=pb {
                for l in 0..=qb {
                    let weight =
                        binomial(pa, i) * binomial(qa, j) * binomial(pb, k) * binomial(qb, l);
                    let first = coherent.get([i, j, k, l])?;
                    let second = subharmonic.get([pa - i, qa - j, pb - k, qb - l])?;
                    total += first * second * weight;
                }
            }
        }
    }
    Ok(total)
}

/// `<c^+m c^n>` for the total field `c = A + B`.
pub fn composite_moment(
    dag: u8,
    ann: u8,
    coherent: &MomentTable,
    subharmonic: &MomentTable,
) -> Result<Complex64> {
    let mut total = Complex64::new(0.0, 0.0);
    for x in 0..=dag {
        for y in 0..=ann {
            let weight = binomial(dag, x) * binomial(ann, y);
            total += composite_word([x, y, dag - x, ann - y], coherent, subharmonic)? * weight;
        }
    }
    Ok(total)
}

/// `<c'^+m c'^n>` for the fluctuation `c' = c - <c>`.
pub fn central_moment(
    dag: u8,
    ann: u8,
    coherent: &MomentTable,
    subharmonic: &MomentTable,
) -> Result<Complex64> {
    let mean = composite_moment(0, 1, coherent, subharmonic)?;
    let mut total = Complex64::new(0.0, 0.0);
    for x in 0..=dag {
        for y in 0..=ann {
            let weight = binomial(dag, x) * binomial(ann, y);
            let shift = (-mean.conj()).powu(u32::from(dag - x)) * (-mean).powu(u32::from(ann - y));
            total += composite_moment(x, y, coherent, subharmonic)? * shift * weight;
        }
    }
    Ok(total)
}

/// Observables of the superposed field assembled from the expansion alone.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompositeStatistics {
    pub mean: f64,
    pub variance: f64,
    pub plus_var: f64,
    pub minus_var: f64,
    pub epr_sum: f64,
    /// `None` when the corresponding intensities vanish.
    pub g2_a: Option<f64>,
    pub g2_b: Option<f64>,
    pub g2_ab: Option<f64>,
    /// `<c'^+2 c'^2> - <c'^+2><c'^2> - 2<c'^+ c'>^2`, zero for Gaussian states.
    pub gaussian_residual: f64,
}

/// Needs fourth-order tables from both pairs.
pub fn composite_statistics(
    coherent: &MomentTable,
    subharmonic: &MomentTable,
) -> Result<CompositeStatistics> {
    let m = |p, q| composite_moment(p, q, coherent, subharmonic);
    let w = |word| composite_word(word, coherent, subharmonic);

    // c = a1 + a2 + b1 + b2, so [c, c^+] = 4 and c^+c c^+c = c^+2 c^2 + 4 c^+c.
    let n = m(1, 1)?.re;
    let variance = m(2, 2)?.re + 4.0 * n - n * n;

    let mean = m(0, 1)?;
    let sq = m(0, 2)?;
    let plus_var = 4.0 + 2.0 * n + 2.0 * sq.re - (2.0 * mean.re).powi(2);
    let minus_var = 4.0 + 2.0 * n - 2.0 * sq.re + (2.0 * mean.im).powi(2);

    let mean_a = w([0, 1, 0, 0])?;
    let mean_b = w([0, 0, 0, 1])?;
    let n_a = w([1, 1, 0, 0])?.re;
    let n_b = w([0, 0, 1, 1])?.re;
    let ab = w([0, 1, 0, 1])?;
    let epr_sum = 4.0
        + 2.0 * (n_a - mean_a.norm_sqr())
        + 2.0 * (n_b - mean_b.norm_sqr())
        + 4.0 * (ab - mean_a * mean_b).re;

    let ratio = |num: f64, den: f64| (den > 0.0).then(|| num / den);
    let g2_a = ratio(w([2, 2, 0, 0])?.re, n_a * n_a);
    let g2_b = ratio(w([0, 0, 2, 2])?.re, n_b * n_b);
    let g2_ab = ratio(w([1, 1, 1, 1])?.re, n_a * n_b);

    let c = |p, q| central_moment(p, q, coherent, subharmonic);
    let gaussian_residual = (c(2, 2)? - c(2, 0)? * c(0, 2)? - 2.0 * c(1, 1)? * c(1, 1)?).norm();

    Ok(CompositeStatistics {
        mean: n,
        variance,
        plus_var,
        minus_var,
        epr_sum,
        g2_a,
        g2_b,
        g2_ab,
        gaussian_residual,
    })
}
