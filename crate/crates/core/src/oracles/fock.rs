//! Brute-force master-equation oracle on a truncated two-mode Fock space.
//!
//! The Lindblad generator is assembled as a sparse matrix acting on the
//! density-matrix elements. For the parametric system the photon-number
//! difference `n_a - n_b` is conserved by every term, so only elements whose
//! row and column share that difference are ever populated; the generator is
//! restricted to that invariant block.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::composite::MomentTable;
use super::config::{Horizon, IntegrationConfig};
use super::rk4::Rk4;
use crate::error::{Error, Result};
use crate::params::SystemParams;

/// Largest admissible population of the two highest Fock levels of either mode.
pub const TOP_POPULATION_BOUND: f64 = 1e-8;
/// Largest admissible truncation error of a sampled Q value.
pub const QFUNCTION_ERROR_BOUND: f64 = 1e-8;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FockSystem {
    /// Both modes coherently driven at amplitude `epsilon`.
    Coherent,
    /// Parametric pair creation at rate `gamma`.
    Subharmonic,
}

/// Density matrix of two modes, each truncated at `truncation` photons.
/// Basis index of `|n_a, n_b>` is `n_a (N + 1) + n_b`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeDensityMatrix {
    truncation: usize,
    elements: Vec<Complex64>,
}

/// Row-sparse operator on the two-mode space.
#[derive(Debug, Clone)]
struct SparseOp {
    rows: Vec<Vec<(usize, Complex64)>>,
}

impl SparseOp {
    fn zero(dim: usize) -> Self {
        Self {
            rows: vec![Vec::new(); dim],
        }
    }

    /// Truncated annihilation operator of mode `a` (`which = 0`) or `b`.
    fn annihilation(truncation: usize, which: usize) -> Self {
        let levels = truncation + 1;
        let mut op = Self::zero(levels * levels);
        for na in 0..levels {
            for nb in 0..levels {
                let (n, target) = if which == 0 {
                    (na, na.checked_sub(1).map(|m| m * levels + nb))
                } else {
                    (nb, nb.checked_sub(1).map(|m| na * levels + m))
                };
                if let Some(row) = target {
                    op.rows[row].push((na * levels + nb, Complex64::new((n as f64).sqrt(), 0.0)));
                }
            }
        }
        op
    }

    fn dim(&self) -> usize {
        self.rows.len()
    }

    fn adjoint(&self) -> Self {
        let mut out = Self::zero(self.dim());
        for (i, row) in self.rows.iter().enumerate() {
            for &(j, x) in row {
                out.rows[j].push((i, x.conj()));
            }
        }
        out
    }

    fn mul(&self, other: &SparseOp) -> Self {
        let mut out = Self::zero(self.dim());
        let mut acc = vec![ZERO; self.dim()];
        let mut touched = Vec::new();
        for (i, row) in self.rows.iter().enumerate() {
            for &(k, x) in row {
                for &(j, y) in &other.rows[k] {
                    if acc[j] == ZERO {
                        touched.push(j);
                    }
                    acc[j] += x * y;
                }
            }
            touched.sort_unstable();
            touched.dedup();
            for &j in &touched {
                if acc[j] != ZERO {
                    out.rows[i].push((j, acc[j]));
                }
                acc[j] = ZERO;
            }
            touched.clear();
        }
        out
    }

    fn add_scaled(&self, other: &SparseOp, scale: Complex64) -> Self {
        let mut out = self.clone();
        for (i, row) in other.rows.iter().enumerate() {
            for &(j, x) in row {
                match out.rows[i].iter_mut().find(|(c, _)| *c == j) {
                    Some((_, v)) => *v += x * scale,
                    None => out.rows[i].push((j, x * scale)),
                }
            }
        }
        out
    }

    fn scaled(&self, scale: Complex64) -> Self {
        Self::zero(self.dim()).add_scaled(self, scale)
    }
}

/// Lindblad generator restricted to an invariant set of matrix elements.
struct Liouvillian {
    dim: usize,
    pairs: Vec<(usize, usize)>,
    position: Vec<u32>,
    row_start: Vec<usize>,
    cols: Vec<u32>,
    vals: Vec<Complex64>,
}

impl Liouvillian {
    fn new(hamiltonian: &SparseOp, jumps: &[SparseOp], sector: impl Fn(usize) -> i64) -> Self {
        let dim = hamiltonian.dim();
        let mut position = vec![u32::MAX; dim * dim];
        let mut pairs = Vec::new();
        for i in 0..dim {
            for j in 0..dim {
                if sector(i) == sector(j) {
                    position[i * dim + j] = pairs.len() as u32;
                    pairs.push((i, j));
                }
            }
        }

        let mut decay = SparseOp::zero(dim);
        for jump in jumps {
            decay = decay.add_scaled(&jump.adjoint().mul(jump), Complex64::new(1.0, 0.0));
        }

        let pos = |i: usize, j: usize| {
            let p = position[i * dim + j];
            assert!(p != u32::MAX, "generator leaves the invariant sector");
            p
        };
        let mut row_start = vec![0];
        let mut cols = Vec::new();
        let mut vals = Vec::new();
        let mut entries: Vec<(u32, Complex64)> = Vec::new();
        for &(i, j) in &pairs {
            entries.clear();
            for &(k, h) in &hamiltonian.rows[i] {
                entries.push((pos(k, j), -I * h));
            }
            for &(k, h) in &hamiltonian.rows[j] {
                entries.push((pos(i, k), I * h.conj()));
            }
            for jump in jumps {
                for &(k, x) in &jump.rows[i] {
                    for &(l, y) in &jump.rows[j] {
                        entries.push((pos(k, l), x * y.conj()));
                    }
                }
            }
            for &(k, x) in &decay.rows[i] {
                entries.push((pos(k, j), -0.5 * x));
            }
            for &(k, x) in &decay.rows[j] {
                entries.push((pos(i, k), -0.5 * x.conj()));
            }
            entries.sort_unstable_by_key(|e| e.0);
            let mut merged: Vec<(u32, Complex64)> = Vec::with_capacity(entries.len());
            for &(c, v) in entries.iter() {
                match merged.last_mut() {
                    Some(last) if last.0 == c => last.1 += v,
                    _ => merged.push((c, v)),
                }
            }
            for (c, v) in merged {
                if v != ZERO {
                    cols.push(c);
                    vals.push(v);
                }
            }
            row_start.push(cols.len());
        }
        Self {
            dim,
            pairs,
            position,
            row_start,
            cols,
            vals,
        }
    }

    fn apply(&self, y: &[Complex64], out: &mut [Complex64]) {
        for (p, o) in out.iter_mut().enumerate() {
            let mut acc = ZERO;
            for k in self.row_start[p]..self.row_start[p + 1] {
                acc += self.vals[k] * y[self.cols[k] as usize];
            }
            *o = acc;
        }
    }

    fn index(&self, i: usize, j: usize) -> Option<usize> {
        match self.position[i * self.dim + j] {
            u32::MAX => None,
            p => Some(p as usize),
        }
    }
}

/// `<O>` as a linear functional on the compact element vector.
struct Observable(Vec<(usize, Complex64)>);

impl Observable {
    fn new(generator: &Liouvillian, truncation: usize, word: [u8; 4]) -> Self {
        let dim = generator.dim;
        let mut terms = Vec::new();
        for j in 0..dim {
            if let Some((i, c)) = apply_word(truncation, word, j) {
                // Tr(rho O) = sum_j c_j rho_{j, i(j)}
                if let Some(p) = generator.index(j, i) {
                    terms.push((p, Complex64::new(c, 0.0)));
                }
            }
        }
        Observable(terms)
    }

    fn eval(&self, y: &[Complex64]) -> Complex64 {
        self.0.iter().map(|&(p, c)| c * y[p]).sum()
    }
}

/// Action of `a^+p a^q b^+r b^s` on basis state `j`: target index and
/// coefficient, or `None` if the truncated operator annihilates it.
fn apply_word(truncation: usize, word: [u8; 4], j: usize) -> Option<(usize, f64)> {
    let levels = truncation + 1;
    let [p, q, r, s] = word.map(|x| x as usize);
    let (mut na, mut nb) = (j / levels, j % levels);
    let mut coeff = 1.0;
    let mut lower = |n: &mut usize, times: usize| -> bool {
        for _ in 0..times {
            if *n == 0 {
                return false;
            }
            coeff *= (*n as f64).sqrt();
            *n -= 1;
        }
        true
    };
    if !lower(&mut nb, s) {
        return None;
    }
    if !lower(&mut na, q) {
        return None;
    }
    let mut raise = |n: &mut usize, times: usize| -> bool {
        for _ in 0..times {
            if *n == truncation {
                return false;
            }
            *n += 1;
            coeff *= (*n as f64).sqrt();
        }
        true
    };
    if !raise(&mut nb, r) || !raise(&mut na, p) {
        return None;
    }
    Some((na * levels + nb, coeff))
}

fn hamiltonian(params: &SystemParams, system: FockSystem, a: &SparseOp, b: &SparseOp) -> SparseOp {
    let (ad, bd) = (a.adjoint(), b.adjoint());
    let dim = a.dim();
    match system {
        FockSystem::Coherent => {
            // i eps (a^+ - a + b^+ - b)
            let sum = SparseOp::zero(dim)
                .add_scaled(&ad, Complex64::new(1.0, 0.0))
                .add_scaled(a, Complex64::new(-1.0, 0.0))
                .add_scaled(&bd, Complex64::new(1.0, 0.0))
                .add_scaled(b, Complex64::new(-1.0, 0.0));
            sum.scaled(I * params.epsilon)
        }
        FockSystem::Subharmonic => {
            // i gamma (ab - a^+ b^+)
            let pair = a.mul(b).add_scaled(&ad.mul(&bd), Complex64::new(-1.0, 0.0));
            pair.scaled(I * params.gamma)
        }
    }
}

struct Run {
    rho: TwoModeDensityMatrix,
    steps: usize,
}

fn run(params: &SystemParams, system: FockSystem, config: &IntegrationConfig) -> Result<Run> {
    params.validate()?;
    config.check()?;
    let n = config.truncation;
    let system_params = match system {
        FockSystem::Coherent => SystemParams::new(params.kappa, 0.0, params.epsilon),
        FockSystem::Subharmonic => SystemParams::new(params.kappa, params.gamma, 0.0),
    };
    let dt = config.step_size(&system_params)?;
    let spectral = 2.0 * params.kappa * n as f64
        + 4.0 * system_params.gamma * (n + 1) as f64
        + 4.0 * system_params.epsilon * ((n + 1) as f64).sqrt();
    if dt * spectral > 2.5 {
        return Err(Error::StepSizeTooLarge {
            dt,
            limit: 2.5 / spectral,
        });
    }

    let a = SparseOp::annihilation(n, 0);
    let b = SparseOp::annihilation(n, 1);
    let h = hamiltonian(&system_params, system, &a, &b);
    let rate = Complex64::new(params.kappa.sqrt(), 0.0);
    let jumps = [a.scaled(rate), b.scaled(rate)];
    let levels = n + 1;
    let generator = match system {
        FockSystem::Coherent => Liouvillian::new(&h, &jumps, |_| 0),
        FockSystem::Subharmonic => {
            Liouvillian::new(&h, &jumps, |i| (i / levels) as i64 - (i % levels) as i64)
        }
    };

    let tracked: Vec<Observable> = [
        [0, 1, 0, 0],
        [0, 0, 0, 1],
        [1, 1, 0, 0],
        [0, 0, 1, 1],
        [0, 1, 0, 1],
    ]
    .into_iter()
    .map(|w| Observable::new(&generator, n, w))
    .collect();

    let len = generator.pairs.len();
    let mut y = vec![ZERO; len];
    y[generator
        .index(0, 0)
        .expect("vacuum element is always present")] = Complex64::new(1.0, 0.0);
    let mut rk = Rk4::new(len);
    let mut deriv = vec![ZERO; len];
    let f = |y: &[Complex64], out: &mut [Complex64]| generator.apply(y, out);

    let to_matrix = |y: &[Complex64]| {
        let dim = generator.dim;
        let mut elements = vec![ZERO; dim * dim];
        for (&(i, j), &v) in generator.pairs.iter().zip(y) {
            elements[i * dim + j] = v;
        }
        TwoModeDensityMatrix {
            truncation: n,
            elements,
        }
    };
    let check_truncation = |y: &[Complex64]| -> Result<()> {
        let population = top_population_of(n, |i| generator.index(i, i).map_or(0.0, |p| y[p].re));
        if population > TOP_POPULATION_BOUND {
            return Err(Error::TruncationTooSmall {
                truncation: n,
                population,
                bound: TOP_POPULATION_BOUND,
            });
        }
        Ok(())
    };

    match config.horizon {
        Horizon::Until(t_end) => {
            let steps = (t_end / dt).ceil() as usize;
            let h = if steps == 0 {
                0.0
            } else {
                t_end / steps as f64
            };
            for _ in 0..steps {
                rk.step(&mut y, h, f);
            }
            Ok(Run {
                rho: to_matrix(&y),
                steps,
            })
        }
        Horizon::Steady { tol, t_max } => {
            let max_steps = (t_max / dt).ceil() as usize;
            let mut drift = f64::INFINITY;
            for step in 1..=max_steps {
                rk.step(&mut y, dt, f);
                if step % 20 == 0 {
                    check_truncation(&y)?;
                    generator.apply(&y, &mut deriv);
                    drift = tracked
                        .iter()
                        .map(|o| o.eval(&deriv).norm())
                        .fold(0.0, f64::max);
                    if drift < tol {
                        return Ok(Run {
                            rho: to_matrix(&y),
                            steps: step,
                        });
                    }
                }
            }
            Err(Error::NoConvergence {
                t_end: t_max,
                drift,
            })
        }
    }
}

fn top_population_of(truncation: usize, diag: impl Fn(usize) -> f64) -> f64 {
    let levels = truncation + 1;
    let mut pa = 0.0;
    let mut pb = 0.0;
    for na in 0..levels {
        for nb in 0..levels {
            let p = diag(na * levels + nb);
            if na + 2 > truncation {
                pa += p;
            }
            if nb + 2 > truncation {
                pb += p;
            }
        }
    }
    f64::max(pa, pb)
}

/// Steady state of the master equation, reached by integrating from the
/// two-mode vacuum until the drift of the tracked moments drops below the
/// configured tolerance.
pub fn fock_steady_state(
    params: &SystemParams,
    system: FockSystem,
    config: &IntegrationConfig,
) -> Result<TwoModeDensityMatrix> {
    if system == FockSystem::Subharmonic {
        params.require_subthreshold()?;
    }
    if !matches!(config.horizon, Horizon::Steady { .. }) {
        return Err(Error::MalformedInput(
            "steady-state search needs a steady horizon".into(),
        ));
    }
    Ok(run(params, system, config)?.rho)
}

/// State at a finite time, starting from the two-mode vacuum.
pub fn fock_evolve(
    params: &SystemParams,
    system: FockSystem,
    t: f64,
    config: &IntegrationConfig,
) -> Result<TwoModeDensityMatrix> {
    let config = IntegrationConfig {
        horizon: Horizon::Until(t),
        ..*config
    };
    Ok(run(params, system, &config)?.rho)
}

/// Number of RK4 steps taken to reach the steady state (diagnostics).
pub fn fock_steady_steps(
    params: &SystemParams,
    system: FockSystem,
    config: &IntegrationConfig,
) -> Result<usize> {
    Ok(run(params, system, config)?.steps)
}

impl TwoModeDensityMatrix {
    pub fn vacuum(truncation: usize) -> Self {
        let levels = truncation + 1;
        let dim = levels * levels;
        let mut elements = vec![ZERO; dim * dim];
        elements[0] = Complex64::new(1.0, 0.0);
        Self {
            truncation,
            elements,
        }
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn dim(&self) -> usize {
        (self.truncation + 1).pow(2)
    }

    /// Element `<n_a, n_b| rho |m_a, m_b>`.
    pub fn get(&self, bra: (usize, usize), ket: (usize, usize)) -> Complex64 {
        let levels = self.truncation + 1;
        let i = bra.0 * levels + bra.1;
        let j = ket.0 * levels + ket.1;
        self.elements[i * self.dim() + j]
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim())
            .map(|i| self.elements[i * self.dim() + i])
            .sum()
    }

    pub fn hermiticity_error(&self) -> f64 {
        let dim = self.dim();
        let mut worst = 0.0f64;
        for i in 0..dim {
            for j in i..dim {
                let d = self.elements[i * dim + j] - self.elements[j * dim + i].conj();
                worst = worst.max(d.norm());
            }
        }
        worst
    }

    pub fn purity(&self) -> f64 {
        let dim = self.dim();
        let mut sum = 0.0;
        for i in 0..dim {
            for j in 0..dim {
                sum += (self.elements[i * dim + j] * self.elements[j * dim + i]).re;
            }
        }
        sum
    }

    /// Population of the two highest Fock levels, maximized over the modes.
    pub fn top_population(&self) -> f64 {
        let dim = self.dim();
        top_population_of(self.truncation, |i| self.elements[i * dim + i].re)
    }

    /// True iff `rho + shift * 1` admits a Cholesky factorization, i.e. the
    /// smallest eigenvalue of the Hermitian part exceeds `-shift`.
    pub fn is_positive_within(&self, shift: f64) -> bool {
        let dim = self.dim();
        let mut l = vec![ZERO; dim * dim];
        for j in 0..dim {
            let mut diag = self.elements[j * dim + j].re + shift;
            for k in 0..j {
                diag -= l[j * dim + k].norm_sqr();
            }
            if diag <= 0.0 {
                return false;
            }
            let pivot = diag.sqrt();
            l[j * dim + j] = Complex64::new(pivot, 0.0);
            for i in j + 1..dim {
                let hermitian =
                    0.5 * (self.elements[i * dim + j] + self.elements[j * dim + i].conj());
                let mut s = hermitian;
                for k in 0..j {
                    s -= l[i * dim + k] * l[j * dim + k].conj();
                }
                l[i * dim + j] = s / pivot;
            }
        }
        true
    }

    fn reduced_a(&self) -> Vec<Complex64> {
        let levels = self.truncation + 1;
        let dim = self.dim();
        let mut out = vec![ZERO; levels * levels];
        for n in 0..levels {
            for m in 0..levels {
                out[n * levels + m] = (0..levels)
                    .map(|k| self.elements[(n * levels + k) * dim + m * levels + k])
                    .sum();
            }
        }
        out
    }
}

/// `<a^+p a^q b^+r b^s>` for all `p + q + r + s <= order`.
pub fn density_moments(rho: &TwoModeDensityMatrix, order: usize) -> Result<MomentTable> {
    if order > 4 {
        return Err(Error::OrderTooHigh(order));
    }
    let dim = rho.dim();
    let mut table = MomentTable::new(order);
    for word in MomentTable::words(order) {
        let mut value = ZERO;
        for j in 0..dim {
            if let Some((i, c)) = apply_word(rho.truncation, word, j) {
                value += rho.elements[j * dim + i] * c;
            }
        }
        table.insert(word, value);
    }
    Ok(table)
}

/// Coherent-state amplitudes `<n|alpha>` for `n <= truncation`.
fn coherent_amplitudes(alpha: Complex64, truncation: usize) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(truncation + 1);
    let mut c = Complex64::new((-0.5 * alpha.norm_sqr()).exp(), 0.0);
    out.push(c);
    for n in 1..=truncation {
        c = c * alpha / (n as f64).sqrt();
        out.push(c);
    }
    out
}

/// Bound on `|<psi|rho|psi> - <P psi|rho_N|P psi>|` from the weight of the
/// coherent state outside the box and the top-level population of `rho`.
fn truncation_error(raw: f64, outside: f64, rho_tail: f64) -> f64 {
    2.0 * (raw.max(0.0) * outside * rho_tail).sqrt() + outside * rho_tail
}

/// Husimi function `<alpha, beta| rho |alpha, beta> / pi^2`.
pub fn numeric_qfunction(
    rho: &TwoModeDensityMatrix,
    alpha: Complex64,
    beta: Complex64,
) -> Result<f64> {
    let n = rho.truncation;
    let levels = n + 1;
    let dim = rho.dim();
    let ca = coherent_amplitudes(alpha, n);
    let cb = coherent_amplitudes(beta, n);
    let psi: Vec<Complex64> = (0..dim).map(|i| ca[i / levels] * cb[i % levels]).collect();
    let mut raw = ZERO;
    for (row, &left) in rho.elements.chunks_exact(dim).zip(&psi) {
        let projected: Complex64 = row.iter().zip(&psi).map(|(&r, &p)| r * p).sum();
        raw += left.conj() * projected;
    }
    let inside: f64 = psi.iter().map(|c| c.norm_sqr()).sum();
    let error = truncation_error(raw.re, (1.0 - inside).max(0.0), rho.top_population()) / (PI * PI);
    if error > QFUNCTION_ERROR_BOUND {
        return Err(Error::TruncationTooSmall {
            truncation: n,
            population: rho.top_population(),
            bound: QFUNCTION_ERROR_BOUND,
        });
    }
    Ok(raw.re.max(0.0) / (PI * PI))
}

/// Husimi function of mode `a` alone, `<alpha| Tr_b rho |alpha> / pi`.
pub fn numeric_marginal_qfunction(rho: &TwoModeDensityMatrix, alpha: Complex64) -> Result<f64> {
    let n = rho.truncation;
    let levels = n + 1;
    let reduced = rho.reduced_a();
    let c = coherent_amplitudes(alpha, n);
    let mut raw = ZERO;
    for i in 0..levels {
        for j in 0..levels {
            raw += c[i].conj() * reduced[i * levels + j] * c[j];
        }
    }
    let inside: f64 = c.iter().map(|x| x.norm_sqr()).sum();
    let error = truncation_error(raw.re, (1.0 - inside).max(0.0), rho.top_population()) / PI;
    if error > QFUNCTION_ERROR_BOUND {
        return Err(Error::TruncationTooSmall {
            truncation: n,
            population: rho.top_population(),
            bound: QFUNCTION_ERROR_BOUND,
        });
    }
    Ok(raw.re.max(0.0) / PI)
}
