//! Twisted-coefficient bookkeeping for the two-row spectral sequence of the
//! split extension 1 -> F_n -> F_n x| Aut(F_n) -> Aut(F_n) -> 1.
//!
//! With rational coefficients the second page has only rows s = 0 (ordinary
//! homology of Aut(F_n)) and s = 1 (homology with the standard n-dimensional
//! twisted coefficients). Whenever the row-0 group two steps up vanishes,
//! dimension counting forces the row-1 entry:
//!   dim H_i(Aut(F_n); Q^n) = dim H_{i+1}(holomorph; Q) - dim H_{i+1}(Aut(F_n); Q).
//! Configurations outside that vanishing pattern are reported as
//! indeterminate rather than guessing differentials.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// Where a Betti input came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Computed,
    PaperSourced,
}

/// Rational Betti numbers of the holomorph, by homology dimension.
pub type HolomorphBetti = BTreeMap<usize, (usize, Provenance)>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum TwistedValue {
    /// The forced dimension of H_i(Aut(F_n); Q^n).
    Forced { dim: usize },
    Indeterminate { reason: String },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TwistedEntry {
    pub i: usize,
    #[serde(flatten)]
    pub value: TwistedValue,
    pub inputs: Vec<String>,
}

/// Known rational Betti numbers of Aut(F_n) in low dimensions: one in
/// dimension zero, one at (t, n) = (4, 4), zero otherwise through t = 6.
pub fn aut_rational_betti(t: usize, n: usize) -> Option<usize> {
    match t {
        0 => Some(1),
        1..=6 => Some(usize::from(t == 4 && n == 4)),
        _ => None,
    }
}

/// The twisted homology table H_i(Aut(F_n); Q^n) for i = 0..=max_i, deduced
/// from cached holomorph Betti numbers.
pub fn twisted_table(n: usize, betti: &HolomorphBetti, max_i: usize) -> Vec<TwistedEntry> {
    (0..=max_i)
        .map(|i| {
            let mut inputs = Vec::new();
            let t_up = aut_rational_betti(i + 1, n);
            let t_up2 = aut_rational_betti(i + 2, n);
            if let Some(t) = t_up {
                inputs.push(format!("dim H_{}(aut; Q) = {t}", i + 1));
            }
            if let Some(t) = t_up2 {
                inputs.push(format!("dim H_{}(aut; Q) = {t}", i + 2));
            }
            let value = match (betti.get(&(i + 1)), t_up, t_up2) {
                (_, None, _) | (_, _, None) => TwistedValue::Indeterminate {
                    reason: format!(
                        "ordinary homology of the automorphism group is not tabulated \
                         through dimension {}",
                        i + 2
                    ),
                },
                (None, _, _) => TwistedValue::Indeterminate {
                    reason: format!(
                        "missing rational Betti input for the holomorph in dimension {}",
                        i + 1
                    ),
                },
                (Some(_), Some(_), Some(t2)) if t2 != 0 => TwistedValue::Indeterminate {
                    reason: format!(
                        "H_{}(aut; Q) does not vanish, so the two-row count is not forced",
                        i + 2
                    ),
                },
                (Some(&(g, prov)), Some(t1), Some(_)) => {
                    inputs.push(format!(
                        "dim H_{}(holomorph; Q) = {g} ({})",
                        i + 1,
                        match prov {
                            Provenance::Computed => "computed",
                            Provenance::PaperSourced => "paper-sourced",
                        }
                    ));
                    if g < t1 {
                        TwistedValue::Indeterminate {
                            reason: "inputs violate the two-row dimension count".into(),
                        }
                    } else {
                        TwistedValue::Forced { dim: g - t1 }
                    }
                }
            };
            TwistedEntry { i, value, inputs }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inputs(pairs: &[(usize, usize)]) -> HolomorphBetti {
        pairs.iter().map(|&(m, b)| (m, (b, Provenance::Computed))).collect()
    }

    #[test]
    fn rank_three_forces_a_line() {
        // H_4(holomorph of F_3) = Q with vanishing aut homology around it
        let table = twisted_table(3, &inputs(&[(1, 0), (2, 0), (3, 0), (4, 1)]), 3);
        assert_eq!(table[3].value, TwistedValue::Forced { dim: 1 });
        for entry in &table[0..3] {
            assert_eq!(entry.value, TwistedValue::Forced { dim: 0 });
        }
    }

    #[test]
    fn rank_four_cancels_the_line() {
        // H_4(holomorph of F_4) = Q = H_4(aut of F_4), H_5(aut of F_4) = 0
        let table = twisted_table(4, &inputs(&[(4, 1)]), 3);
        assert_eq!(table[3].value, TwistedValue::Forced { dim: 0 });
        // i = 2 needs H_4(aut) = 0, which fails at rank four
        assert!(matches!(table[2].value, TwistedValue::Indeterminate { .. }));
    }

    #[test]
    fn all_zero_inputs_give_zero() {
        let table = twisted_table(1, &inputs(&[(1, 0)]), 0);
        assert_eq!(table[0].value, TwistedValue::Forced { dim: 0 });
    }

    #[test]
    fn missing_inputs_are_flagged() {
        let table = twisted_table(2, &inputs(&[]), 1);
        for entry in &table {
            assert!(matches!(entry.value, TwistedValue::Indeterminate { .. }));
        }
    }

    #[test]
    fn out_of_range_rows_are_flagged() {
        // i = 5 needs the dimension-7 row of the coefficient table
        let table = twisted_table(2, &inputs(&[(6, 0)]), 5);
        assert!(matches!(table[5].value, TwistedValue::Indeterminate { .. }));
    }
}
