//! Plug-in information functionals on finite tables.
//!
//! Everything is in nats (natural logarithms) with the convention
//! `0 ln 0 = 0`. Outputs that are mathematically non-negative are clamped to
//! zero when rounding leaves them within `1e-12` below it.

use crate::dist::{DiscreteJoint, TripleJoint};
use crate::{Error, Result};

fn clamp_nonneg(v: f64) -> f64 {
    if v < 0.0 && v >= -1e-12 {
        0.0
    } else {
        v
    }
}

/// Shannon entropy of a probability row, in nats.
pub fn entropy(p: &[f64]) -> f64 {
    let h = -p
        .iter()
        .filter(|&&v| v > 0.0)
        .map(|&v| v * v.ln())
        .sum::<f64>();
    clamp_nonneg(h)
}

/// Kullback–Leibler divergence `sum p ln(p/q)` in nats.
///
/// Requires absolute continuity: any index with `q = 0` must have `p = 0`,
/// otherwise the divergence is infinite and the offending index is reported.
pub fn kl_divergence(p: &[f64], q: &[f64]) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::LengthMismatch {
            expected: p.len(),
            got: q.len(),
        });
    }
    let mut kl = 0.0;
    for (i, (&pi, &qi)) in p.iter().zip(q).enumerate() {
        if pi > 0.0 {
            if qi <= 0.0 {
                return Err(Error::AbsoluteContinuity {
                    index: i,
                    p_value: pi,
                });
            }
            kl += pi * (pi / qi).ln();
        }
    }
    Ok(clamp_nonneg(kl))
}

/// Total variation distance `1/2 sum |p - q|` between two rows.
///
/// Panics if the rows have different lengths.
pub fn total_variation(p: &[f64], q: &[f64]) -> f64 {
    assert_eq!(p.len(), q.len(), "total_variation: length mismatch");
    0.5 * p.iter().zip(q).map(|(a, b)| (a - b).abs()).sum::<f64>()
}

/// Mutual information of a joint table,
/// `sum_{z,c} p(z,c) ln[p(z,c) / (p(z) p(c))]`, in nats.
pub fn mutual_information(joint: &DiscreteJoint) -> f64 {
    let pz = joint.row_marginal();
    let pc = joint.col_marginal();
    let mut mi = 0.0;
    for z in 0..joint.rows() {
        if pz[z] <= 0.0 {
            continue;
        }
        for (c, &pzc) in joint.row(z).iter().enumerate() {
            if pzc > 0.0 {
                mi += pzc * (pzc / (pz[z] * pc[c])).ln();
            }
        }
    }
    clamp_nonneg(mi)
}

/// Which conditional mutual information to read off a three-way table over
/// `(source T, statistic Z, target C)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CmiPair {
    /// `I(T; C | Z)` — the sufficiency residual.
    SourceTargetGivenStatistic,
    /// `I(T; Z | C)`.
    SourceStatisticGivenTarget,
    /// `I(Z; C | T)`.
    StatisticTargetGivenSource,
}

/// Conditional mutual information `I(A; B | W)` by the plug-in sum
/// `sum p(a,b,w) ln[ p(a,b,w) p(w) / (p(a,w) p(b,w)) ]`, in nats.
pub fn conditional_mutual_information(triple: &TripleJoint, pair: CmiPair) -> f64 {
    let (nt, nz, nc) = (triple.n_source(), triple.n_statistic(), triple.n_target());
    // Map (t, z, c) onto (a, b, w) per the requested conditioning.
    let (na, nb, nw, select): (usize, usize, usize, fn(usize, usize, usize) -> (usize, usize, usize)) =
        match pair {
            CmiPair::SourceTargetGivenStatistic => (nt, nc, nz, |t, z, c| (t, c, z)),
            CmiPair::SourceStatisticGivenTarget => (nt, nz, nc, |t, z, c| (t, z, c)),
            CmiPair::StatisticTargetGivenSource => (nz, nc, nt, |t, z, c| (z, c, t)),
        };

    let mut p_aw = vec![0.0; na * nw];
    let mut p_bw = vec![0.0; nb * nw];
    let mut p_w = vec![0.0; nw];
    for t in 0..nt {
        for z in 0..nz {
            for c in 0..nc {
                let v = triple.get(t, z, c);
                if v > 0.0 {
                    let (a, b, w) = select(t, z, c);
                    p_aw[a * nw + w] += v;
                    p_bw[b * nw + w] += v;
                    p_w[w] += v;
                }
            }
        }
    }

    let mut cmi = 0.0;
    for t in 0..nt {
        for z in 0..nz {
            for c in 0..nc {
                let v = triple.get(t, z, c);
                if v > 0.0 {
                    let (a, b, w) = select(t, z, c);
                    cmi += v * (v * p_w[w] / (p_aw[a * nw + w] * p_bw[b * nw + w])).ln();
                }
            }
        }
    }
    clamp_nonneg(cmi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::{DiscreteConditional, FiberMap};

    #[test]
    fn mi_of_independent_table_is_zero() {
        let j = DiscreteJoint::from_rows(&[vec![0.25, 0.25], vec![0.25, 0.25]]).unwrap();
        assert_eq!(mutual_information(&j), 0.0);
    }

    #[test]
    fn mi_of_deterministic_correspondence_is_ln2() {
        let j = DiscreteJoint::from_rows(&[vec![0.5, 0.0], vec![0.0, 0.5]]).unwrap();
        assert!((mutual_information(&j) - std::f64::consts::LN_2).abs() < 1e-15);
    }

    #[test]
    fn mi_matches_direct_evaluation() {
        // 0.8 ln 1.6 + 0.2 ln 0.4, evaluated independently.
        let j = DiscreteJoint::from_rows(&[vec![0.4, 0.1], vec![0.1, 0.4]]).unwrap();
        assert!((mutual_information(&j) - 0.19274475702175748).abs() < 1e-12);
    }

    #[test]
    fn kl_of_identical_rows_is_zero() {
        assert_eq!(kl_divergence(&[0.5, 0.5], &[0.5, 0.5]).unwrap(), 0.0);
    }

    #[test]
    fn kl_point_mass_vs_uniform_is_ln2() {
        let kl = kl_divergence(&[1.0, 0.0], &[0.5, 0.5]).unwrap();
        assert!((kl - std::f64::consts::LN_2).abs() < 1e-15);
    }

    #[test]
    fn kl_matches_direct_evaluation() {
        // 0.9 ln 1.8 + 0.1 ln 0.2 = ln 2 - H(0.9, 0.1), both routes agree.
        let kl = kl_divergence(&[0.9, 0.1], &[0.5, 0.5]).unwrap();
        assert!((kl - 0.36806420716849735).abs() < 1e-12);
        let alt = std::f64::consts::LN_2 - entropy(&[0.9, 0.1]);
        assert!((kl - alt).abs() < 1e-15);
    }

    #[test]
    fn kl_reports_offending_index() {
        let err = kl_divergence(&[0.3, 0.7], &[1.0, 0.0]).unwrap_err();
        match err {
            crate::Error::AbsoluteContinuity { index, p_value } => {
                assert_eq!(index, 1);
                assert_eq!(p_value, 0.7);
            }
            other => panic!("unexpected error: {other}"),
        }
    }

    #[test]
    fn cmi_is_zero_under_sufficiency() {
        // C depends on T only through Z by construction.
        let fiber = FiberMap::new(vec![0, 0, 1, 1], 2).unwrap();
        let kernel =
            DiscreteConditional::from_rows(&[vec![0.9, 0.1], vec![0.3, 0.7]]).unwrap();
        let triple =
            TripleJoint::from_components(&[0.1, 0.2, 0.3, 0.4], &fiber, &kernel).unwrap();
        let cmi = conditional_mutual_information(&triple, CmiPair::SourceTargetGivenStatistic);
        assert!(cmi < 1e-12, "residual {cmi}");
    }

    #[test]
    fn cmi_with_constant_statistic_equals_marginal_mi() {
        // Single statistic symbol: conditioning on a constant, so
        // I(T; C | Z) must equal I(T; C).
        let p_t = [0.3, 0.3, 0.4];
        let cond_rows = [[0.9, 0.1], [0.5, 0.5], [0.1, 0.9]];
        let mut mass = Vec::new();
        for (t, &pt) in p_t.iter().enumerate() {
            for c in 0..2 {
                mass.push(pt * cond_rows[t][c]);
            }
        }
        let triple = TripleJoint::new(3, 1, 2, mass).unwrap();
        let cmi = conditional_mutual_information(&triple, CmiPair::SourceTargetGivenStatistic);
        let mi = mutual_information(&triple.source_target());
        assert!((cmi - mi).abs() < 1e-12);
    }

    #[test]
    fn cmi_matches_chain_rule_residual() {
        // I(A; B, W) - I(A; W) computed through pair tables, against the
        // direct conditional sum.
        let fiber = FiberMap::new(vec![0, 1, 1, 0], 2).unwrap();
        let kernel =
            DiscreteConditional::from_rows(&[vec![0.6, 0.4], vec![0.25, 0.75]]).unwrap();
        let triple =
            TripleJoint::from_components(&[0.4, 0.1, 0.25, 0.25], &fiber, &kernel).unwrap();

        // Route one: direct conditional plug-in sum.
        let direct = conditional_mutual_information(&triple, CmiPair::SourceTargetGivenStatistic);

        // Route two: I(T; (C,Z)) - I(T; Z) on flattened pair tables.
        let (nt, nz, nc) = (4, 2, 2);
        let mut joint_t_cz = vec![0.0; nt * nz * nc];
        for t in 0..nt {
            for z in 0..nz {
                for c in 0..nc {
                    joint_t_cz[t * (nz * nc) + z * nc + c] = triple.get(t, z, c);
                }
            }
        }
        let t_cz = DiscreteJoint::new(nt, nz * nc, joint_t_cz).unwrap();
        let residual =
            mutual_information(&t_cz) - mutual_information(&triple.source_statistic());
        assert!((direct - residual).abs() < 1e-12);
    }
}
