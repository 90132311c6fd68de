//! Relativistic spin-zero bosons with a quartic interaction in a box,
//! restricted to Fock states with a bounded particle number.
//!
//! Natural units throughout: lengths in units of a reference length `L`,
//! energies reported as the dimensionless product `E L` (`hbar = c = 1`).
//! Modes are standing waves `sin(mu_a pi x_a / L_a)` on each axis, so the
//! quartic overlap of four modes factorises into per-axis sign sums.

use std::collections::HashMap;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::matrix::{DenseOperator, InputMatrix};

/// Largest Fock space [`fock_basis`] will enumerate.
pub const MAX_FOCK_DIMENSION: u128 = 1_000_000;

/// Physical parameters of the box, its mode cut-off and the particle cap.
#[derive(Debug, Clone, PartialEq)]
pub struct BosonConfig {
    /// `L_x, L_y, L_z` in units of `L`.
    pub box_lengths: [f64; 3],
    /// `M_x, M_y, M_z`: modes kept per axis.
    pub modes_per_axis: [u32; 3],
    /// Rest energy `m c^2` in units of `hbar c / L`.
    pub mass: f64,
    /// Dimensionless quartic coupling.
    pub coupling: f64,
    /// Maximum total particle number.
    pub max_particles: u32,
}

impl BosonConfig {
    /// Four massless bosons, two modes along x, in a 2 x 1 x 1 box.
    pub fn demo(coupling: f64) -> Self {
        BosonConfig {
            box_lengths: [2.0, 1.0, 1.0],
            modes_per_axis: [2, 1, 1],
            mass: 0.0,
            coupling,
            max_particles: 4,
        }
    }

    pub fn with_coupling(&self, coupling: f64) -> Self {
        BosonConfig {
            coupling,
            ..self.clone()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.box_lengths.iter().any(|&l| !(l.is_finite() && l > 0.0)) {
            return Err(Error::domain("box lengths must be positive and finite"));
        }
        if self.modes_per_axis.contains(&0) {
            return Err(Error::domain("each axis needs at least one mode"));
        }
        if !(self.mass.is_finite() && self.mass >= 0.0) {
            return Err(Error::domain("mass must be finite and non-negative"));
        }
        if !self.coupling.is_finite() {
            return Err(Error::domain("coupling must be finite"));
        }
        Ok(())
    }

    pub fn volume(&self) -> f64 {
        self.box_lengths.iter().product()
    }

    pub fn mode_count(&self) -> usize {
        self.modes_per_axis.iter().map(|&m| m as usize).product()
    }

    /// All modes, ordered lexicographically by `(mu_x, mu_y, mu_z)`.
    pub fn modes(&self) -> Vec<Mode> {
        let [mx, my, mz] = self.modes_per_axis;
        let mut out = Vec::with_capacity(self.mode_count());
        for x in 1..=mx {
            for y in 1..=my {
                for z in 1..=mz {
                    out.push(Mode { numbers: [x, y, z] });
                }
            }
        }
        out
    }

    fn check_mode(&self, mode: &Mode) -> Result<()> {
        let ok = mode
            .numbers
            .iter()
            .zip(self.modes_per_axis)
            .all(|(&mu, max)| (1..=max).contains(&mu));
        if !ok {
            return Err(Error::domain(format!(
                "mode {:?} outside 1..={:?}",
                mode.numbers, self.modes_per_axis
            )));
        }
        Ok(())
    }
}

/// Standing-wave mode with wave numbers `k_a = mu_a pi / L_a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mode {
    pub numbers: [u32; 3],
}

/// `hbar omega L = sqrt(sum_a (mu_a pi / L_a)^2 + (m c^2 L / hbar c)^2)`.
pub fn mode_energy(cfg: &BosonConfig, mode: &Mode) -> Result<f64> {
    cfg.check_mode(mode)?;
    Ok(energy_unchecked(cfg, mode))
}

fn energy_unchecked(cfg: &BosonConfig, mode: &Mode) -> f64 {
    let k2: f64 = mode
        .numbers
        .iter()
        .zip(cfg.box_lengths)
        .map(|(&mu, l)| (mu as f64 * PI / l).powi(2))
        .sum();
    (k2 + cfg.mass * cfg.mass).sqrt()
}

/// Occupation numbers, one per mode.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FockState(pub Vec<u32>);

impl FockState {
    pub fn particles(&self) -> u32 {
        self.0.iter().sum()
    }
}

/// Fock states with at most `max_particles` bosons, vacuum first, in
/// lexicographic order of the occupation tuple.
#[derive(Debug, Clone)]
pub struct FockBasis {
    states: Vec<FockState>,
    position: HashMap<Vec<u32>, usize>,
}

impl FockBasis {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[FockState] {
        &self.states
    }

    pub fn position(&self, occupations: &[u32]) -> Option<usize> {
        self.position.get(occupations).copied()
    }
}

/// `(M + N)! / (M! N!)`, or `None` on overflow.
pub fn fock_dimension(modes: usize, max_particles: u32) -> Option<u128> {
    let mut acc: u128 = 1;
    for k in 1..=max_particles as u128 {
        acc = acc.checked_mul(modes as u128 + k)? / k;
    }
    Some(acc)
}

pub fn fock_basis(cfg: &BosonConfig) -> Result<FockBasis> {
    cfg.validate()?;
    let modes = cfg.mode_count();
    let dim = fock_dimension(modes, cfg.max_particles)
        .filter(|&d| d <= MAX_FOCK_DIMENSION)
        .ok_or_else(|| {
            Error::Resource(format!(
                "Fock space of {modes} modes and {} particles exceeds {MAX_FOCK_DIMENSION} states",
                cfg.max_particles
            ))
        })?;
    let mut states = Vec::with_capacity(dim as usize);
    let mut current = vec![0u32; modes];
    enumerate(&mut current, 0, cfg.max_particles, &mut states);
    let position = states
        .iter()
        .enumerate()
        .map(|(k, s)| (s.0.clone(), k))
        .collect();
    Ok(FockBasis { states, position })
}

fn enumerate(current: &mut Vec<u32>, slot: usize, remaining: u32, out: &mut Vec<FockState>) {
    if slot == current.len() {
        out.push(FockState(current.clone()));
        return;
    }
    for n in 0..=remaining {
        current[slot] = n;
        enumerate(current, slot + 1, remaining - n, out);
    }
    current[slot] = 0;
}

/// `sum over s in {+1,-1}^4 of s_1 s_2 s_3 s_4 [s_1 a + s_2 b + s_3 c + s_4 d = 0]`.
///
/// `L/16` times this equals `int_0^L sin(a pi x/L) sin(b pi x/L) sin(c pi x/L) sin(d pi x/L) dx`.
pub fn axis_sign_sum(a: u32, b: u32, c: u32, d: u32) -> i32 {
    let values = [a as i64, b as i64, c as i64, d as i64];
    let mut total = 0;
    for signs in 0u32..16 {
        let mut sum = 0i64;
        let mut parity = 1i32;
        for (k, &v) in values.iter().enumerate() {
            if signs >> k & 1 == 1 {
                sum -= v;
                parity = -parity;
            } else {
                sum += v;
            }
        }
        if sum == 0 {
            total += parity;
        }
    }
    total
}

/// Coefficient `V` of the quartic term for four modes.
///
/// `(lambda / 4!) (1 / Omega) (1/4)^3 / (4 sqrt(w_mu w_nu w_xi w_o)) * prod_a S_a`
/// with `S_a` the [`axis_sign_sum`] of the four mode numbers on axis `a`.
pub fn interaction_coefficient(
    cfg: &BosonConfig,
    mu: &Mode,
    nu: &Mode,
    xi: &Mode,
    o: &Mode,
) -> Result<f64> {
    for m in [mu, nu, xi, o] {
        cfg.check_mode(m)?;
    }
    Ok(coefficient_unchecked(cfg, [mu, nu, xi, o]))
}

fn coefficient_unchecked(cfg: &BosonConfig, modes: [&Mode; 4]) -> f64 {
    let overlap: i32 = (0..3)
        .map(|a| {
            axis_sign_sum(
                modes[0].numbers[a],
                modes[1].numbers[a],
                modes[2].numbers[a],
                modes[3].numbers[a],
            )
        })
        .product();
    if overlap == 0 {
        return 0.0;
    }
    let energies: f64 = modes.iter().map(|m| energy_unchecked(cfg, m)).product();
    cfg.coupling / 24.0 / cfg.volume() / 64.0 / (4.0 * energies.sqrt()) * overlap as f64
}

#[derive(Clone, Copy)]
enum Ladder {
    Lower(usize),
    Raise(usize),
}

/// Applies a product of ladder operators (rightmost first) to `state` in place.
/// Returns the amplitude, or `None` when a lowering operator hits an empty mode.
fn apply_ladders(ops: &[Ladder], state: &mut [u32]) -> Option<f64> {
    let mut amp = 1.0;
    for op in ops.iter().rev() {
        match *op {
            Ladder::Lower(m) => {
                if state[m] == 0 {
                    return None;
                }
                amp *= (state[m] as f64).sqrt();
                state[m] -= 1;
            }
            Ladder::Raise(m) => {
                state[m] += 1;
                amp *= (state[m] as f64).sqrt();
            }
        }
    }
    Some(amp)
}

/// Normal-ordered operator strings of the quartic term for one index tuple,
/// excluding the constant `3 delta delta` part.
fn normal_ordered_terms(mu: usize, nu: usize, xi: usize, o: usize) -> Vec<(f64, Vec<Ladder>)> {
    use Ladder::{Lower as A, Raise as D};
    let mut terms = Vec::with_capacity(8);
    if mu == nu {
        terms.push((6.0, vec![A(xi), A(o)]));
        terms.push((12.0, vec![D(xi), A(o)]));
        terms.push((6.0, vec![D(xi), D(o)]));
    }
    terms.push((1.0, vec![A(mu), A(nu), A(xi), A(o)]));
    terms.push((4.0, vec![D(mu), A(nu), A(xi), A(o)]));
    terms.push((6.0, vec![D(mu), D(nu), A(xi), A(o)]));
    terms.push((4.0, vec![D(mu), D(nu), D(xi), A(o)]));
    terms.push((1.0, vec![D(mu), D(nu), D(xi), D(o)]));
    terms
}

/// Hamiltonian on the restricted Fock space, as a dense real symmetric matrix.
///
/// Diagonal: `sum_mu w_mu n_mu` plus the interaction. Operator strings that
/// leave the space of at most `max_particles` bosons are projected out.
pub fn hamiltonian_matrix(cfg: &BosonConfig) -> Result<InputMatrix> {
    let basis = fock_basis(cfg)?;
    let modes = cfg.modes();
    let m = modes.len();
    let energies: Vec<f64> = modes.iter().map(|md| energy_unchecked(cfg, md)).collect();

    let mut table = Vec::with_capacity(m.pow(4));
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                for d in 0..m {
                    let v = coefficient_unchecked(cfg, [&modes[a], &modes[b], &modes[c], &modes[d]]);
                    if v != 0.0 {
                        table.push(([a, b, c, d], v));
                    }
                }
            }
        }
    }
    let constant: f64 = table
        .iter()
        .filter(|([a, b, c, d], _)| a == b && c == d)
        .map(|(_, v)| 3.0 * v)
        .sum();

    let n = basis.len();
    let mut h = vec![vec![0.0f64; n]; n];
    let mut scratch = vec![0u32; m];
    for (col, state) in basis.states().iter().enumerate() {
        let free: f64 = state.0.iter().zip(&energies).map(|(&k, w)| k as f64 * w).sum();
        h[col][col] += free + constant;
        for &([a, b, c, d], v) in &table {
            for (mult, ops) in normal_ordered_terms(a, b, c, d) {
                scratch.copy_from_slice(&state.0);
                let Some(amp) = apply_ladders(&ops, &mut scratch) else {
                    continue;
                };
                if let Some(row) = basis.position(&scratch) {
                    h[row][col] += mult * v * amp;
                }
            }
        }
    }

    let mut out = DenseOperator::zeros(n);
    for i in 0..n {
        out[(i, i)] = h[i][i].into();
        for j in (i + 1)..n {
            let sym = 0.5 * (h[i][j] + h[j][i]);
            out[(i, j)] = sym.into();
            out[(j, i)] = sym.into();
        }
    }
    InputMatrix::dense(out)
}

/// First-order energy shift `<0|V|0>` in units of `1/L`:
///
/// `(3 lambda / 4!) (1 / 4 Omega) sum_{mu, xi} prod_a (1 + delta(mu_a, xi_a)/2) / (w_mu w_xi)`.
pub fn first_order_energy(cfg: &BosonConfig) -> Result<f64> {
    cfg.validate()?;
    let modes = cfg.modes();
    let energies: Vec<f64> = modes.iter().map(|md| energy_unchecked(cfg, md)).collect();
    let mut sum = 0.0;
    for (mu, w_mu) in modes.iter().zip(&energies) {
        for (xi, w_xi) in modes.iter().zip(&energies) {
            let overlap: f64 = (0..3)
                .map(|a| if mu.numbers[a] == xi.numbers[a] { 1.5 } else { 1.0 })
                .product();
            sum += overlap / (w_mu * w_xi);
        }
    }
    Ok(3.0 * cfg.coupling / 24.0 / (4.0 * cfg.volume()) * sum)
}
