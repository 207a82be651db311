//! Runtime tables for the engines over generated families.

use std::time::{Duration, Instant};

use ocn_core::cw_solver::cw_ocn;
use ocn_core::expr::{eval_msp, msp_to_cw7, parse_msp};
use ocn_core::instances::{mprime_expr, random_msp};
use ocn_core::msp_solver::msp_ocn_value;
use ocn_core::oracle::ocn_exact;

use crate::CliError;

/// Leaf counts of the msp scaling suite.
pub const MSP_SIZES: [usize; 3] = [1_000, 10_000, 100_000];
/// Random expressions averaged per leaf count.
pub const MSP_SEEDS: u64 = 10;

#[derive(Debug, Clone, PartialEq)]
pub struct ScalingRow {
    pub n: usize,
    pub seeds: u64,
    /// mean wall time of one run
    pub mean: Duration,
    /// largest χ_o among the runs
    pub max_chi: usize,
}

impl ScalingRow {
    pub fn ns_per_leaf(&self) -> f64 {
        self.mean.as_secs_f64() * 1e9 / self.n as f64
    }
}

fn time<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let value = f();
    (value, start.elapsed())
}

/// Times the msp engine on `seeds` random expressions per leaf count, using
/// seeds `seed, seed + 1, ...`.
pub fn msp_scaling(sizes: &[usize], seeds: u64, seed: u64) -> Vec<ScalingRow> {
    // fills the tournament tables before anything is timed
    msp_ocn_value(&random_msp(64, seed));
    sizes
        .iter()
        .map(|&n| {
            let mut total = Duration::ZERO;
            let mut max_chi = 0;
            for s in 0..seeds {
                let e = random_msp(n, seed.wrapping_add(s));
                let (chi, took) = time(|| msp_ocn_value(&e));
                total += took;
                max_chi = max_chi.max(chi);
            }
            ScalingRow { n, seeds, mean: total / seeds.max(1) as u32, max_chi }
        })
        .collect()
}

/// Largest ratio of time per leaf at a larger size to that at a smaller one.
pub fn worst_growth(rows: &[ScalingRow]) -> f64 {
    let mut worst: f64 = 0.0;
    for (i, small) in rows.iter().enumerate() {
        for large in &rows[i + 1..] {
            worst = worst.max(large.ns_per_leaf() / small.ns_per_leaf());
        }
    }
    worst
}

/// Whether the time per leaf never grows by more than `factor` between sizes.
pub fn linear_within(rows: &[ScalingRow], factor: f64) -> bool {
    worst_growth(rows) <= factor
}

#[derive(Debug, Clone, PartialEq)]
pub struct FamilyRow {
    pub i: usize,
    pub n: usize,
    pub chi: usize,
    pub msp: Duration,
    pub cw: Option<Duration>,
    pub oracle: Option<Duration>,
}

/// Largest `i` for which the clique-width engine runs on `M'_i`.
pub const MPRIME_CW_MAX: usize = 3;
/// Largest `i` for which the oracle runs on `M'_i`.
pub const MPRIME_ORACLE_MAX: usize = 3;

/// Times every engine that is practical on `M'_1, ..., M'_max_i`.
pub fn mprime_table(max_i: usize) -> Result<Vec<FamilyRow>, CliError> {
    msp_ocn_value(&parse_msp("a * b")?);
    let mut rows = Vec::new();
    for i in 1..=max_i {
        let e = mprime_expr(i)?;
        let (chi, msp) = time(|| msp_ocn_value(&e));
        let cw = if i <= MPRIME_CW_MAX {
            let cw_expr = msp_to_cw7(&e);
            let (value, took) = time(|| cw_ocn(&cw_expr));
            check_agrees("cw", i, chi, value?)?;
            Some(took)
        } else {
            None
        };
        let oracle = if i <= MPRIME_ORACLE_MAX {
            let g = eval_msp(&e);
            let (value, took) = time(|| ocn_exact(&g));
            check_agrees("oracle", i, chi, value?.0)?;
            Some(took)
        } else {
            None
        };
        rows.push(FamilyRow { i, n: e.leaf_count(), chi, msp, cw, oracle });
    }
    Ok(rows)
}

fn check_agrees(engine: &str, i: usize, msp: usize, other: usize) -> Result<(), CliError> {
    if msp == other {
        Ok(())
    } else {
        Err(CliError::Disagreement(format!("on M'_{i} the msp engine gives {msp}, the {engine} engine {other}")))
    }
}
