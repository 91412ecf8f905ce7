//! Dense state-vector emulator for a register of Rydberg atoms.
//!
//! The Hamiltonian is
//!
//! ```text
//! H(t) = Ω(t)/2 Σ_i σˣ_i − δ(t) Σ_i ε_i n_i + Σ_{i<j} C6/|r_i − r_j|⁶ n_i n_j
//! ```
//!
//! with ħ = 1, angular frequencies in rad/µs, times in µs and distances in
//! µm. With δ swept from negative to positive, |0…0⟩ is the ground state at
//! the start and the end point is δ times the MWIS penalty energy.
//!
//! Basis index bit `i` is the occupation of atom `i`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::distance;
use crate::seed;

/// C6 for the 60S Rydberg state, 2π × 138 GHz·µm⁶ expressed in rad/µs·µm⁶.
pub const C6_DEFAULT: f64 = 2.0 * PI * 1.38e5;

/// Default integrator step in µs. Keeps the per-step RK4 norm drift below
/// 1e-9 for registers at the default lattice spacing.
pub const DEFAULT_DT: f64 = 5e-4;

/// Largest register the dense emulator accepts.
pub const MAX_ATOMS: usize = 16;

const NORM_TOL: f64 = 1e-6;

/// Van der Waals interaction `c6 / d⁶`.
pub fn interaction(c6: f64, distance: f64) -> Result<f64> {
    if !(distance > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "interaction distance must be positive, got {distance}"
        )));
    }
    Ok(c6 / distance.powi(6))
}

#[derive(Debug, Clone, PartialEq)]
pub struct RydbergRegister {
    positions: Vec<[f64; 2]>,
    weights: Vec<f64>,
    c6: f64,
}

impl RydbergRegister {
    pub fn new(positions: Vec<[f64; 2]>, weights: Vec<f64>) -> Result<Self> {
        Self::with_c6(positions, weights, C6_DEFAULT)
    }

    pub fn with_c6(positions: Vec<[f64; 2]>, weights: Vec<f64>, c6: f64) -> Result<Self> {
        if positions.len() > MAX_ATOMS {
            return Err(Error::CapacityExceeded {
                backend: "emulator",
                size: positions.len(),
                limit: MAX_ATOMS,
            });
        }
        if weights.len() != positions.len() {
            return Err(Error::WeightCount {
                expected: positions.len(),
                got: weights.len(),
            });
        }
        for (i, a) in positions.iter().enumerate() {
            for (j, b) in positions.iter().enumerate().skip(i + 1) {
                if a == b {
                    return Err(Error::DuplicatePosition(i, j));
                }
            }
        }
        if !(c6 > 0.0) {
            return Err(Error::InvalidParameter(format!("c6 must be positive, got {c6}")));
        }
        Ok(Self { positions, weights, c6 })
    }

    /// Unit weights.
    pub fn uniform(positions: Vec<[f64; 2]>) -> Result<Self> {
        let n = positions.len();
        Self::new(positions, vec![1.0; n])
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn positions(&self) -> &[[f64; 2]] {
        &self.positions
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn c6(&self) -> f64 {
        self.c6
    }

    pub fn pair_interaction(&self, i: usize, j: usize) -> f64 {
        self.c6 / distance(&self.positions[i], &self.positions[j]).powi(6)
    }
}

/// One control point of a schedule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchedulePoint {
    pub time: f64,
    pub omega: f64,
    pub delta: f64,
}

/// Piecewise-linear Ω(t), δ(t).
#[derive(Debug, Clone, PartialEq)]
pub struct AnnealSchedule {
    points: Vec<SchedulePoint>,
}

impl AnnealSchedule {
    /// Checks the annealing invariants: starts at t = 0, strictly increasing
    /// times, Ω ≥ 0 everywhere and zero at both ends, δ(0) < 0 < δ(T).
    pub fn new(points: Vec<SchedulePoint>) -> Result<Self> {
        let s = Self::unconstrained(points)?;
        let first = s.points[0];
        let last = *s.points.last().expect("at least two points");
        if first.omega != 0.0 || last.omega != 0.0 {
            return Err(Error::InvalidSchedule("Ω must vanish at both ends".into()));
        }
        if !(first.delta < 0.0) {
            return Err(Error::InvalidSchedule("δ must start negative".into()));
        }
        if !(last.delta > 0.0) {
            return Err(Error::InvalidSchedule("δ must end positive".into()));
        }
        Ok(s)
    }

    /// Only the time axis and Ω ≥ 0 are checked. Used for driven test
    /// protocols that do not represent an anneal.
    pub fn unconstrained(points: Vec<SchedulePoint>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidSchedule("need at least two breakpoints".into()));
        }
        if points[0].time != 0.0 {
            return Err(Error::InvalidSchedule("first breakpoint must be at t = 0".into()));
        }
        if points.windows(2).any(|w| !(w[1].time > w[0].time)) {
            return Err(Error::InvalidSchedule("breakpoint times must increase strictly".into()));
        }
        if points.iter().any(|p| !(p.omega >= 0.0) || !p.delta.is_finite()) {
            return Err(Error::InvalidSchedule("Ω must be nonnegative and δ finite".into()));
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[SchedulePoint] {
        &self.points
    }

    pub fn total_time(&self) -> f64 {
        self.points.last().expect("validated nonempty").time
    }

    pub fn min_gap(&self) -> f64 {
        self.points
            .windows(2)
            .map(|w| w[1].time - w[0].time)
            .fold(f64::INFINITY, f64::min)
    }

    pub fn max_omega(&self) -> f64 {
        self.points.iter().map(|p| p.omega).fold(0.0, f64::max)
    }

    pub fn max_abs_delta(&self) -> f64 {
        self.points.iter().map(|p| p.delta.abs()).fold(0.0, f64::max)
    }

    /// (Ω, δ) at time `t`, clamped to the schedule ends.
    pub fn at(&self, t: f64) -> (f64, f64) {
        let pts = &self.points;
        if t <= pts[0].time {
            return (pts[0].omega, pts[0].delta);
        }
        for w in pts.windows(2) {
            if t <= w[1].time {
                let f = (t - w[0].time) / (w[1].time - w[0].time);
                return (
                    w[0].omega + f * (w[1].omega - w[0].omega),
                    w[0].delta + f * (w[1].delta - w[0].delta),
                );
            }
        }
        let last = pts[pts.len() - 1];
        (last.omega, last.delta)
    }

    pub fn to_file(&self) -> ScheduleFile {
        ScheduleFile {
            total_time: self.total_time(),
            points: self.points.iter().map(|p| [p.time, p.omega, p.delta]).collect(),
        }
    }
}

/// `{"total_time": T, "points": [[t, omega, delta], ..]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScheduleFile {
    pub total_time: f64,
    pub points: Vec<[f64; 3]>,
}

impl ScheduleFile {
    pub fn to_schedule(&self) -> Result<AnnealSchedule> {
        let points: Vec<SchedulePoint> = self
            .points
            .iter()
            .map(|p| SchedulePoint {
                time: p[0],
                omega: p[1],
                delta: p[2],
            })
            .collect();
        let s = AnnealSchedule::new(points)?;
        if (s.total_time() - self.total_time).abs() > 1e-12 * self.total_time.abs().max(1.0) {
            return Err(Error::InvalidSchedule(format!(
                "total_time {} disagrees with last breakpoint {}",
                self.total_time,
                s.total_time()
            )));
        }
        Ok(s)
    }
}

/// Ω ramps up to 2π·2 rad/µs over the first 15 % of the anneal, δ sweeps
/// linearly from −2π·4 to +2π·4 rad/µs in the middle 70 %, Ω ramps back down.
pub fn default_mis_schedule(total_time: f64) -> Result<AnnealSchedule> {
    if !(total_time > 0.0) || !total_time.is_finite() {
        return Err(Error::InvalidSchedule(format!(
            "total time must be positive, got {total_time}"
        )));
    }
    let omega = 2.0 * PI * 2.0;
    let delta = 2.0 * PI * 4.0;
    let t = total_time;
    AnnealSchedule::new(vec![
        SchedulePoint { time: 0.0, omega: 0.0, delta: -delta },
        SchedulePoint { time: 0.15 * t, omega, delta: -delta },
        SchedulePoint { time: 0.85 * t, omega, delta },
        SchedulePoint { time: t, omega: 0.0, delta },
    ])
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState {
    amplitudes: Vec<Complex64>,
    atoms: usize,
}

impl QuantumState {
    /// |0…0⟩.
    pub fn ground(atoms: usize) -> Self {
        Self::basis(atoms, 0)
    }

    pub fn basis(atoms: usize, index: usize) -> Self {
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << atoms];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Self { amplitudes, atoms }
    }

    pub fn from_amplitudes(atoms: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != 1 << atoms {
            return Err(Error::DimensionMismatch {
                register: atoms,
                state: amplitudes.len().trailing_zeros() as usize,
            });
        }
        Ok(Self { amplitudes, atoms })
    }

    pub fn atoms(&self) -> usize {
        self.atoms
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    /// ⟨self|other⟩.
    pub fn inner(&self, other: &QuantumState) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    fn renormalize(&mut self) -> f64 {
        let norm = self.norm_sqr();
        let scale = 1.0 / norm.sqrt();
        for a in &mut self.amplitudes {
            *a *= scale;
        }
        norm
    }
}

/// Diagonal of H split into the detuning-weighted part and the interaction
/// part, for every basis state.
#[derive(Debug, Clone)]
pub(crate) struct Diagonal {
    weight_sum: Vec<f64>,
    interaction: Vec<f64>,
}

impl Diagonal {
    pub(crate) fn new(register: &RydbergRegister) -> Self {
        let n = register.len();
        let dim = 1usize << n;
        let mut weight_sum = vec![0.0; dim];
        let mut interaction = vec![0.0; dim];
        let pairs: Vec<Vec<f64>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { 0.0 } else { register.pair_interaction(i, j) }).collect())
            .collect();
        for b in 1..dim {
            let low = b.trailing_zeros() as usize;
            let rest = b & (b - 1);
            weight_sum[b] = weight_sum[rest] + register.weights[low];
            let mut extra = 0.0;
            let mut r = rest;
            while r != 0 {
                let j = r.trailing_zeros() as usize;
                r &= r - 1;
                extra += pairs[low][j];
            }
            interaction[b] = interaction[rest] + extra;
        }
        Self { weight_sum, interaction }
    }

    pub(crate) fn value(&self, b: usize, delta: f64) -> f64 {
        self.interaction[b] - delta * self.weight_sum[b]
    }

    /// Largest |diagonal| over the schedule's detuning range.
    fn bound(&self, max_abs_delta: f64) -> f64 {
        self.weight_sum
            .iter()
            .zip(&self.interaction)
            .map(|(w, u)| u + max_abs_delta * w)
            .fold(0.0, f64::max)
    }
}

fn apply_into(diag: &Diagonal, atoms: usize, omega: f64, delta: f64, psi: &[Complex64], out: &mut [Complex64]) {
    let half = 0.5 * omega;
    let kernel = |(b, o): (usize, &mut Complex64)| {
        let mut acc = psi[b] * diag.value(b, delta);
        if half != 0.0 {
            let mut flips = Complex64::new(0.0, 0.0);
            for i in 0..atoms {
                flips += psi[b ^ (1 << i)];
            }
            acc += flips * half;
        }
        *o = acc;
    };
    if psi.len() >= 1 << 12 {
        out.par_iter_mut().enumerate().for_each(kernel);
    } else {
        out.iter_mut().enumerate().for_each(kernel);
    }
}

/// H|ψ⟩ for fixed controls, matrix-free.
pub fn apply_hamiltonian(
    register: &RydbergRegister,
    omega: f64,
    delta: f64,
    state: &QuantumState,
) -> Result<QuantumState> {
    if register.len() != state.atoms {
        return Err(Error::DimensionMismatch {
            register: register.len(),
            state: state.atoms,
        });
    }
    let diag = Diagonal::new(register);
    let mut out = vec![Complex64::new(0.0, 0.0); state.amplitudes.len()];
    apply_into(&diag, state.atoms, omega, delta, &state.amplitudes, &mut out);
    Ok(QuantumState {
        amplitudes: out,
        atoms: state.atoms,
    })
}

/// Final state plus the norm drift seen before renormalization.
#[derive(Debug, Clone)]
pub struct Evolution {
    pub state: QuantumState,
    pub max_step_drift: f64,
    /// |‖ψ(T)‖² − 1| had the state never been renormalized. The integrator
    /// is linear, so this is the product of the per-step norms.
    pub total_drift: f64,
    pub steps: usize,
}

/// Time step that keeps fixed-step RK4 well inside its stability region for
/// this register and schedule.
pub fn stable_dt(register: &RydbergRegister, schedule: &AnnealSchedule) -> f64 {
    let diag = Diagonal::new(register);
    let spectral = diag.bound(schedule.max_abs_delta()) + 0.5 * schedule.max_omega() * register.len() as f64;
    if spectral > 0.0 {
        1.0 / spectral
    } else {
        f64::INFINITY
    }
}

/// Integrates the Schrödinger equation from |0…0⟩ with classical RK4 and
/// renormalizes after every step.
pub fn evolve(register: &RydbergRegister, schedule: &AnnealSchedule, dt: f64) -> Result<QuantumState> {
    evolve_traced(register, schedule, dt).map(|e| e.state)
}

pub fn evolve_traced(register: &RydbergRegister, schedule: &AnnealSchedule, dt: f64) -> Result<Evolution> {
    if register.len() > MAX_ATOMS {
        return Err(Error::CapacityExceeded {
            backend: "emulator",
            size: register.len(),
            limit: MAX_ATOMS,
        });
    }
    if !(dt > 0.0) {
        return Err(Error::InvalidParameter(format!("dt must be positive, got {dt}")));
    }
    let gap = schedule.min_gap();
    if dt > gap / 10.0 * (1.0 + 1e-12) {
        return Err(Error::InvalidParameter(format!(
            "dt = {dt} exceeds a tenth of the shortest schedule segment ({gap})"
        )));
    }
    let n = register.len();
    let dim = 1usize << n;
    let diag = Diagonal::new(register);
    let total = schedule.total_time();
    let steps = (total / dt).ceil() as usize;
    let h = total / steps as f64;

    let zero = Complex64::new(0.0, 0.0);
    let minus_i = Complex64::new(0.0, -1.0);
    let mut state = QuantumState::ground(n);
    let mut k1 = vec![zero; dim];
    let mut k2 = vec![zero; dim];
    let mut k3 = vec![zero; dim];
    let mut k4 = vec![zero; dim];
    let mut tmp = vec![zero; dim];
    let mut max_drift = 0.0f64;
    let mut norm_product = 1.0f64;

    // dψ/dt = −i H ψ; each k holds H·(stage state), scaled by −i below
    for step in 0..steps {
        let t = step as f64 * h;
        let psi = &state.amplitudes;
        let (o1, d1) = schedule.at(t);
        let (o2, d2) = schedule.at(t + 0.5 * h);
        let (o4, d4) = schedule.at(t + h);

        apply_into(&diag, n, o1, d1, psi, &mut k1);
        for b in 0..dim {
            tmp[b] = psi[b] + minus_i * k1[b] * (0.5 * h);
        }
        apply_into(&diag, n, o2, d2, &tmp, &mut k2);
        for b in 0..dim {
            tmp[b] = psi[b] + minus_i * k2[b] * (0.5 * h);
        }
        apply_into(&diag, n, o2, d2, &tmp, &mut k3);
        for b in 0..dim {
            tmp[b] = psi[b] + minus_i * k3[b] * h;
        }
        apply_into(&diag, n, o4, d4, &tmp, &mut k4);

        let scale = minus_i * (h / 6.0);
        for b in 0..dim {
            state.amplitudes[b] += scale * (k1[b] + 2.0 * k2[b] + 2.0 * k3[b] + k4[b]);
        }
        let norm = state.renormalize();
        max_drift = max_drift.max((norm - 1.0).abs());
        norm_product *= norm;
    }
    Ok(Evolution {
        state,
        max_step_drift: max_drift,
        total_drift: (norm_product - 1.0).abs(),
        steps,
    })
}

/// Draws `n_shots` basis indices from |amplitude|².
pub fn sample(state: &QuantumState, n_shots: usize, seed: u64) -> Result<Vec<usize>> {
    let norm = state.norm_sqr();
    if (norm - 1.0).abs() > NORM_TOL {
        return Err(Error::Unnormalized(norm - 1.0));
    }
    let mut cumulative = Vec::with_capacity(state.amplitudes.len());
    let mut acc = 0.0;
    for a in &state.amplitudes {
        acc += a.norm_sqr();
        cumulative.push(acc);
    }
    let mut rng = seed::rng(seed);
    let last = cumulative.len() - 1;
    Ok((0..n_shots)
        .map(|_| {
            let u = rng.gen::<f64>() * acc;
            cumulative.partition_point(|&c| c <= u).min(last)
        })
        .collect())
}

/// Bitstring with atom 0 first.
pub fn bitstring(index: usize, atoms: usize) -> String {
    (0..atoms).map(|i| if index >> i & 1 == 1 { '1' } else { '0' }).collect()
}

/// Occupied atoms of a basis index.
pub fn occupied(index: usize, atoms: usize) -> Vec<usize> {
    (0..atoms).filter(|&i| index >> i & 1 == 1).collect()
}
