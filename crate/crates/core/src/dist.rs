//! Finite-alphabet probability containers.
//!
//! All tables are dense, row-major `Vec<f64>` and are validated on
//! construction; once built they are immutable, so every downstream
//! operation can assume a well-formed distribution. Entries below
//! [`ZERO_FLOOR`] are snapped to exact zeros so that the `0 ln 0 = 0`
//! convention applies cleanly everywhere.

use crate::{Error, Result};

/// Tolerance on total mass and row sums.
pub const MASS_TOL: f64 = 1e-12;

/// Entries below this are treated as exact zeros.
pub const ZERO_FLOOR: f64 = 1e-300;

fn validate_entries(values: &mut [f64]) -> Result<()> {
    for (i, v) in values.iter_mut().enumerate() {
        if !v.is_finite() {
            return Err(Error::NonFiniteEntry { index: i });
        }
        if *v < 0.0 {
            return Err(Error::NegativeEntry {
                index: i,
                value: *v,
            });
        }
        if *v < ZERO_FLOOR {
            *v = 0.0;
        }
    }
    Ok(())
}

/// A joint probability table over two finite alphabets.
///
/// Rows index the source alphabet (size `K`), columns the target alphabet
/// (size `M`). Entries are non-negative and sum to 1 within [`MASS_TOL`].
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteJoint {
    rows: usize,
    cols: usize,
    mass: Vec<f64>,
}

impl DiscreteJoint {
    pub fn new(rows: usize, cols: usize, mut mass: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyTable);
        }
        if mass.len() != rows * cols {
            return Err(Error::LengthMismatch {
                expected: rows * cols,
                got: mass.len(),
            });
        }
        validate_entries(&mut mass)?;
        let sum: f64 = mass.iter().sum();
        if (sum - 1.0).abs() > MASS_TOL {
            return Err(Error::MassNotOne { sum });
        }
        Ok(Self { rows, cols, mass })
    }

    /// Build from nested rows (test and literal convenience).
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::EmptyTable);
        }
        let cols = rows[0].len();
        let mut mass = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::LengthMismatch {
                    expected: cols,
                    got: r.len(),
                });
            }
            mass.extend_from_slice(r);
        }
        Self::new(rows.len(), cols, mass)
    }

    /// Build from non-negative weights (e.g. counts), normalising to total mass 1.
    pub fn normalized(rows: usize, cols: usize, mut weights: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyTable);
        }
        if weights.len() != rows * cols {
            return Err(Error::LengthMismatch {
                expected: rows * cols,
                got: weights.len(),
            });
        }
        validate_entries(&mut weights)?;
        let sum: f64 = weights.iter().sum();
        if sum <= 0.0 {
            return Err(Error::MassNotOne { sum });
        }
        for w in &mut weights {
            *w /= sum;
        }
        Self::new(rows, cols, weights)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.mass[row * self.cols + col]
    }

    pub fn mass(&self) -> &[f64] {
        &self.mass
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.mass[row * self.cols..(row + 1) * self.cols]
    }

    pub fn row_marginal(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.rows];
        for (z, r) in out.iter_mut().enumerate() {
            *r = self.row(z).iter().sum();
        }
        out
    }

    pub fn col_marginal(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.cols];
        for z in 0..self.rows {
            for (c, o) in out.iter_mut().enumerate() {
                *o += self.get(z, c);
            }
        }
        out
    }

    /// Both marginals at once: `(row marginal, column marginal)`.
    pub fn marginals(&self) -> (Vec<f64>, Vec<f64>) {
        (self.row_marginal(), self.col_marginal())
    }

    pub fn transpose(&self) -> DiscreteJoint {
        let mut mass = vec![0.0; self.mass.len()];
        for z in 0..self.rows {
            for c in 0..self.cols {
                mass[c * self.rows + z] = self.get(z, c);
            }
        }
        DiscreteJoint {
            rows: self.cols,
            cols: self.rows,
            mass,
        }
    }

    /// Row-normalise into the kernel `p(col | row)`.
    ///
    /// Rows with zero mass get the uniform row and are reported in
    /// [`FlaggedKernel::zero_rows`]; uniform is the max-entropy default and
    /// cannot affect any mass-weighted functional.
    pub fn row_conditional(&self) -> FlaggedKernel {
        let mut kernel = Vec::with_capacity(self.mass.len());
        let mut zero_rows = Vec::new();
        for z in 0..self.rows {
            let row = self.row(z);
            let sum: f64 = row.iter().sum();
            if sum <= 0.0 {
                zero_rows.push(z);
                kernel.extend(std::iter::repeat(1.0 / self.cols as f64).take(self.cols));
            } else {
                kernel.extend(row.iter().map(|v| v / sum));
            }
        }
        FlaggedKernel {
            kernel: DiscreteConditional {
                rows: self.rows,
                cols: self.cols,
                kernel,
            },
            zero_rows,
        }
    }

    /// Bayes inversion: the kernel `p(row | col)`, one row per column symbol.
    ///
    /// Columns with zero mass get the uniform row, flagged in `zero_rows`.
    pub fn bayes_invert(&self) -> FlaggedKernel {
        self.transpose().row_conditional()
    }
}

/// `p(row) * p(col | row)` as a joint table.
pub fn compose(marginal: &[f64], kernel: &DiscreteConditional) -> Result<DiscreteJoint> {
    if marginal.len() != kernel.rows() {
        return Err(Error::LengthMismatch {
            expected: kernel.rows(),
            got: marginal.len(),
        });
    }
    let mut mass = Vec::with_capacity(marginal.len() * kernel.cols());
    for (z, &pz) in marginal.iter().enumerate() {
        mass.extend(kernel.row(z).iter().map(|v| pz * v));
    }
    DiscreteJoint::new(marginal.len(), kernel.cols(), mass)
}

/// A row-stochastic kernel: every row is a probability distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteConditional {
    rows: usize,
    cols: usize,
    kernel: Vec<f64>,
}

impl DiscreteConditional {
    pub fn new(rows: usize, cols: usize, mut kernel: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyTable);
        }
        if kernel.len() != rows * cols {
            return Err(Error::LengthMismatch {
                expected: rows * cols,
                got: kernel.len(),
            });
        }
        validate_entries(&mut kernel)?;
        for r in 0..rows {
            let sum: f64 = kernel[r * cols..(r + 1) * cols].iter().sum();
            if (sum - 1.0).abs() > MASS_TOL {
                return Err(Error::RowNotNormalized { row: r, sum });
            }
        }
        Ok(Self { rows, cols, kernel })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::EmptyTable);
        }
        let cols = rows[0].len();
        let mut kernel = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::LengthMismatch {
                    expected: cols,
                    got: r.len(),
                });
            }
            kernel.extend_from_slice(r);
        }
        Self::new(rows.len(), cols, kernel)
    }

    pub fn uniform(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            kernel: vec![1.0 / cols as f64; rows * cols],
        }
    }

    /// The identity kernel on an alphabet of size `n`.
    pub fn identity(n: usize) -> Self {
        let mut kernel = vec![0.0; n * n];
        for i in 0..n {
            kernel[i * n + i] = 1.0;
        }
        Self {
            rows: n,
            cols: n,
            kernel,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.kernel[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.kernel[row * self.cols..(row + 1) * self.cols]
    }

    pub fn kernel(&self) -> &[f64] {
        &self.kernel
    }
}

/// A row-normalised kernel together with the rows that had no conditioning
/// mass (those rows were set to uniform rather than fabricated).
#[derive(Debug, Clone)]
pub struct FlaggedKernel {
    pub kernel: DiscreteConditional,
    pub zero_rows: Vec<usize>,
}

/// A total deterministic map between two finite alphabets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberMap {
    map: Vec<usize>,
    codomain: usize,
}

impl FiberMap {
    pub fn new(map: Vec<usize>, codomain: usize) -> Result<Self> {
        if map.is_empty() || codomain == 0 {
            return Err(Error::EmptyTable);
        }
        for (i, &v) in map.iter().enumerate() {
            if v >= codomain {
                return Err(Error::FiberOutOfRange {
                    index: i,
                    value: v,
                    codomain,
                });
            }
        }
        Ok(Self { map, codomain })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            map: (0..n).collect(),
            codomain: n,
        }
    }

    /// The constant map onto a single symbol.
    pub fn constant(domain: usize) -> Self {
        Self {
            map: vec![0; domain],
            codomain: 1,
        }
    }

    pub fn apply(&self, t: usize) -> usize {
        self.map[t]
    }

    pub fn domain(&self) -> usize {
        self.map.len()
    }

    pub fn codomain(&self) -> usize {
        self.codomain
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.codomain];
        for &v in &self.map {
            hit[v] = true;
        }
        hit.into_iter().all(|h| h)
    }

    /// Indices of the fiber over each codomain symbol.
    pub fn fibers(&self) -> Vec<Vec<usize>> {
        let mut fibers = vec![Vec::new(); self.codomain];
        for (t, &z) in self.map.iter().enumerate() {
            fibers[z].push(t);
        }
        fibers
    }
}

/// A joint table over three finite alphabets `(source T, statistic Z,
/// target C)`, stored source-major, with the constraint that the statistic
/// coordinate is a deterministic function of the source coordinate.
///
/// This is the shape on which sufficiency `I(C; T | Z) = 0` can be checked
/// exactly, and from which both the full joint `p(T, C)` and the reduced
/// joint `p(Z, C)` are read off by marginalisation.
#[derive(Debug, Clone, PartialEq)]
pub struct TripleJoint {
    n_source: usize,
    n_statistic: usize,
    n_target: usize,
    mass: Vec<f64>,
}

impl TripleJoint {
    pub fn new(
        n_source: usize,
        n_statistic: usize,
        n_target: usize,
        mut mass: Vec<f64>,
    ) -> Result<Self> {
        if n_source == 0 || n_statistic == 0 || n_target == 0 {
            return Err(Error::EmptyTable);
        }
        let len = n_source * n_statistic * n_target;
        if mass.len() != len {
            return Err(Error::LengthMismatch {
                expected: len,
                got: mass.len(),
            });
        }
        validate_entries(&mut mass)?;
        let sum: f64 = mass.iter().sum();
        if (sum - 1.0).abs() > MASS_TOL {
            return Err(Error::MassNotOne { sum });
        }
        let triple = Self {
            n_source,
            n_statistic,
            n_target,
            mass,
        };
        for t in 0..n_source {
            let carriers = (0..n_statistic)
                .filter(|&z| triple.statistic_row_mass(t, z) > 0.0)
                .count();
            if carriers > 1 {
                return Err(Error::NondeterministicStatistic {
                    symbol: t,
                    count: carriers,
                });
            }
        }
        Ok(triple)
    }

    /// Assemble `p(t) * 1[z = phi(t)] * kappa(c | z)`.
    pub fn from_components(
        p_source: &[f64],
        fiber: &FiberMap,
        kernel: &DiscreteConditional,
    ) -> Result<Self> {
        if p_source.len() != fiber.domain() {
            return Err(Error::LengthMismatch {
                expected: fiber.domain(),
                got: p_source.len(),
            });
        }
        if kernel.rows() != fiber.codomain() {
            return Err(Error::DimensionMismatch(format!(
                "kernel has {} rows but statistic alphabet has {} symbols",
                kernel.rows(),
                fiber.codomain()
            )));
        }
        let (kt, kz, m) = (fiber.domain(), fiber.codomain(), kernel.cols());
        let mut mass = vec![0.0; kt * kz * m];
        for (t, &pt) in p_source.iter().enumerate() {
            let z = fiber.apply(t);
            for (c, &kc) in kernel.row(z).iter().enumerate() {
                mass[(t * kz + z) * m + c] = pt * kc;
            }
        }
        Self::new(kt, kz, m, mass)
    }

    fn statistic_row_mass(&self, t: usize, z: usize) -> f64 {
        let base = (t * self.n_statistic + z) * self.n_target;
        self.mass[base..base + self.n_target].iter().sum()
    }

    pub fn n_source(&self) -> usize {
        self.n_source
    }

    pub fn n_statistic(&self) -> usize {
        self.n_statistic
    }

    pub fn n_target(&self) -> usize {
        self.n_target
    }

    pub fn get(&self, t: usize, z: usize, c: usize) -> f64 {
        self.mass[(t * self.n_statistic + z) * self.n_target + c]
    }

    pub fn mass(&self) -> &[f64] {
        &self.mass
    }

    /// The full joint `p(T, C)`.
    pub fn source_target(&self) -> DiscreteJoint {
        let mut mass = vec![0.0; self.n_source * self.n_target];
        for t in 0..self.n_source {
            for z in 0..self.n_statistic {
                for c in 0..self.n_target {
                    mass[t * self.n_target + c] += self.get(t, z, c);
                }
            }
        }
        DiscreteJoint {
            rows: self.n_source,
            cols: self.n_target,
            mass,
        }
    }

    /// The reduced joint `p(Z, C)`.
    pub fn statistic_target(&self) -> DiscreteJoint {
        let mut mass = vec![0.0; self.n_statistic * self.n_target];
        for t in 0..self.n_source {
            for z in 0..self.n_statistic {
                for c in 0..self.n_target {
                    mass[z * self.n_target + c] += self.get(t, z, c);
                }
            }
        }
        DiscreteJoint {
            rows: self.n_statistic,
            cols: self.n_target,
            mass,
        }
    }

    /// The joint `p(T, Z)`.
    pub fn source_statistic(&self) -> DiscreteJoint {
        let mut mass = vec![0.0; self.n_source * self.n_statistic];
        for t in 0..self.n_source {
            for z in 0..self.n_statistic {
                for c in 0..self.n_target {
                    mass[t * self.n_statistic + z] += self.get(t, z, c);
                }
            }
        }
        DiscreteJoint {
            rows: self.n_source,
            cols: self.n_statistic,
            mass,
        }
    }

    pub fn source_marginal(&self) -> Vec<f64> {
        (0..self.n_source)
            .map(|t| {
                (0..self.n_statistic)
                    .map(|z| self.statistic_row_mass(t, z))
                    .sum()
            })
            .collect()
    }

    pub fn statistic_marginal(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.n_statistic];
        for t in 0..self.n_source {
            for (z, o) in out.iter_mut().enumerate() {
                *o += self.statistic_row_mass(t, z);
            }
        }
        out
    }

    /// Recover the statistic map `t -> z` carried by the table.
    ///
    /// Fails on a source symbol with zero mass: the statistic is undefined
    /// there and no total map can be read off.
    pub fn fiber_map(&self) -> Result<FiberMap> {
        let mut map = Vec::with_capacity(self.n_source);
        for t in 0..self.n_source {
            let z = (0..self.n_statistic).find(|&z| self.statistic_row_mass(t, z) > 0.0);
            match z {
                Some(z) => map.push(z),
                None => return Err(Error::ZeroMassSource { symbol: t }),
            }
        }
        FiberMap::new(map, self.n_statistic)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn joint_validates_mass() {
        assert!(DiscreteJoint::from_rows(&[vec![0.5, 0.5], vec![0.1, 0.0]]).is_err());
        assert!(DiscreteJoint::from_rows(&[vec![0.5, -0.5], vec![0.5, 0.5]]).is_err());
        assert!(DiscreteJoint::from_rows(&[vec![0.25, 0.25], vec![0.25, 0.25]]).is_ok());
    }

    #[test]
    fn marginals_of_symmetric_table() {
        let j = DiscreteJoint::from_rows(&[vec![0.4, 0.1], vec![0.1, 0.4]]).unwrap();
        let (pz, pc) = j.marginals();
        assert_eq!(pz, vec![0.5, 0.5]);
        assert_eq!(pc, vec![0.5, 0.5]);
    }

    #[test]
    fn compose_uniform_with_identity_is_diagonal() {
        let j = compose(&[1.0 / 3.0; 3], &DiscreteConditional::identity(3)).unwrap();
        for z in 0..3 {
            for c in 0..3 {
                let expect = if z == c { 1.0 / 3.0 } else { 0.0 };
                assert!((j.get(z, c) - expect).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn bayes_invert_symmetric_table() {
        let j = DiscreteJoint::from_rows(&[vec![0.4, 0.1], vec![0.1, 0.4]]).unwrap();
        let inv = j.bayes_invert();
        assert!(inv.zero_rows.is_empty());
        assert!((inv.kernel.get(0, 0) - 0.8).abs() < 1e-15);
        assert!((inv.kernel.get(0, 1) - 0.2).abs() < 1e-15);
        assert!((inv.kernel.get(1, 0) - 0.2).abs() < 1e-15);
        assert!((inv.kernel.get(1, 1) - 0.8).abs() < 1e-15);
    }

    #[test]
    fn bayes_invert_flags_zero_mass_column() {
        let j = DiscreteJoint::from_rows(&[vec![0.5, 0.0], vec![0.5, 0.0]]).unwrap();
        let inv = j.bayes_invert();
        assert_eq!(inv.zero_rows, vec![1]);
        assert_eq!(inv.kernel.row(1), &[0.5, 0.5]);
    }

    #[test]
    fn compose_round_trips_decomposition() {
        let j = DiscreteJoint::from_rows(&[vec![0.3, 0.1, 0.05], vec![0.05, 0.2, 0.3]]).unwrap();
        let cond = j.row_conditional();
        let back = compose(&j.row_marginal(), &cond.kernel).unwrap();
        for (a, b) in j.mass().iter().zip(back.mass()) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn triple_rejects_nondeterministic_statistic() {
        // source symbol 0 puts mass on both statistic symbols
        let mass = vec![0.25, 0.25, 0.25, 0.25, 0.0, 0.0, 0.0, 0.0];
        let err = TripleJoint::new(2, 2, 2, mass).unwrap_err();
        assert!(matches!(
            err,
            Error::NondeterministicStatistic { symbol: 0, count: 2 }
        ));
    }

    #[test]
    fn triple_marginalisations_are_consistent() {
        let fiber = FiberMap::new(vec![0, 0, 1], 2).unwrap();
        let kernel =
            DiscreteConditional::from_rows(&[vec![0.7, 0.3], vec![0.2, 0.8]]).unwrap();
        let triple =
            TripleJoint::from_components(&[0.2, 0.3, 0.5], &fiber, &kernel).unwrap();

        let full = triple.source_target();
        assert!((full.get(0, 0) - 0.2 * 0.7).abs() < 1e-15);
        assert!((full.get(2, 1) - 0.5 * 0.8).abs() < 1e-15);

        let reduced = triple.statistic_target();
        assert!((reduced.get(0, 0) - 0.5 * 0.7).abs() < 1e-15);
        assert!((reduced.get(1, 1) - 0.5 * 0.8).abs() < 1e-15);

        assert_eq!(triple.fiber_map().unwrap(), fiber);
    }

    #[test]
    fn fiber_map_rejects_out_of_range() {
        assert!(FiberMap::new(vec![0, 2], 2).is_err());
        assert!(FiberMap::new(vec![0, 1], 2).unwrap().is_surjective());
        assert!(!FiberMap::new(vec![0, 0], 2).unwrap().is_surjective());
    }
}
