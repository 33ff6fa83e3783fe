//! The cross-validation suite run by the `verify` subcommand: structural
//! invariants that every built instance must satisfy.

use crate::cubical::build_cubical_from_classes;
use crate::delta::build_delta_from_classes;
use crate::enumerate::{add_loop, enumerate_graph_classes, wedge_audit};
use crate::forest::ClassCombinatorics;
use crate::graph::{GraphError, Mode};
use crate::homology::{ChainComplex, Coefficients};

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn pass(name: &str, detail: String) -> Check {
        Check { name: name.into(), passed: true, detail }
    }

    fn fail(name: &str, detail: String) -> Check {
        Check { name: name.into(), passed: false, detail }
    }
}

/// Run every structural check for one (mode, genus, max degree) instance.
pub fn run_verification(
    mode: Mode,
    genus: usize,
    max_degree: usize,
    max_dim: Option<usize>,
) -> Result<Vec<Check>, GraphError> {
    let dim = max_dim.unwrap_or(max_degree).min(max_degree);
    let classes = enumerate_graph_classes(genus, max_degree, mode)?;
    let mut checks = Vec::new();

    // degree identity on every enumerated graph
    let identity_failures: Vec<String> = classes
        .iter()
        .filter(|c| {
            let g = c.graph();
            let ind = g.special_vertex().is_some() as i64;
            c.degree() as i64 != 2 * c.genus() as i64 - g.valence(g.basepoint()) as i64 + ind
        })
        .map(|c| c.encoding().to_string())
        .collect();
    checks.push(if identity_failures.is_empty() {
        Check::pass("degree-identity", format!("{} classes", classes.len()))
    } else {
        Check::fail("degree-identity", identity_failures.join(", "))
    });

    // low-degree wedge structure
    let audit = wedge_audit(&classes);
    checks.push(if audit.passed() {
        Check::pass("wedge-lemma", format!("{} classes", audit.checked))
    } else {
        Check::fail("wedge-lemma", audit.failures.join("; "))
    });

    // collapse monotonicity: genus preserved, degree never increases
    let mut collapse_failures = Vec::new();
    for class in &classes {
        let data = ClassCombinatorics::of(class);
        for &mask in &data.forests {
            let (collapsed, _) = crate::forest::collapse_mask(class, &data.cs, mask);
            if collapsed.genus() != class.genus() || collapsed.degree() > class.degree() {
                collapse_failures
                    .push(format!("{} / {:#b}", class.encoding(), mask));
            }
        }
    }
    checks.push(if collapse_failures.is_empty() {
        Check::pass("collapse-monotone", "genus fixed, degree non-increasing".into())
    } else {
        Check::fail("collapse-monotone", collapse_failures.join(", "))
    });

    // add-loop injectivity into the next genus
    let lifted: Vec<String> =
        classes.iter().map(|c| add_loop(c).encoding().to_string()).collect();
    let mut dedup = lifted.clone();
    dedup.sort();
    dedup.dedup();
    let next = enumerate_graph_classes(genus + 1, max_degree, mode)?;
    let next_encodings: std::collections::BTreeSet<&str> =
        next.iter().map(|c| c.encoding()).collect();
    let injective = dedup.len() == classes.len();
    let contained = lifted.iter().all(|e| next_encodings.contains(e.as_str()));
    checks.push(if injective && contained {
        Check::pass(
            "add-loop-injective",
            format!("{} classes embed into genus {}", classes.len(), genus + 1),
        )
    } else {
        Check::fail(
            "add-loop-injective",
            format!("injective: {injective}, images enumerated: {contained}"),
        )
    });

    // boundary composites vanish (checked during assembly)
    let delta = build_delta_from_classes(mode, genus, max_degree, dim, classes.clone());
    let delta_cx = match ChainComplex::from_delta(&delta) {
        Ok(cx) => {
            checks.push(Check::pass(
                "delta-boundary-composite",
                format!("cells {:?}", delta.cell_counts()),
            ));
            Some(cx)
        }
        Err(e) => {
            checks.push(Check::fail("delta-boundary-composite", e.to_string()));
            None
        }
    };
    let cubical = build_cubical_from_classes(mode, genus, max_degree, dim, delta.classes.clone());
    let cubical_cx = match ChainComplex::from_cubical(&cubical) {
        Ok(cx) => {
            checks.push(Check::pass(
                "cubical-boundary-composite",
                format!("cells {:?}, dropped {:?}", cubical.cell_counts(), cubical.dropped),
            ));
            Some(cx)
        }
        Err(e) => {
            checks.push(Check::fail("cubical-boundary-composite", e.to_string()));
            None
        }
    };

    // Euler characteristics agree between the two cell structures
    match (delta.euler_characteristic(), cubical.euler_characteristic()) {
        (Some(a), Some(b)) if a == b => {
            checks.push(Check::pass("euler-agreement", format!("chi = {a}")));
        }
        (Some(a), Some(b)) => {
            checks.push(Check::fail(
                "euler-agreement",
                format!("simplex cells give {a}, cube cells give {b}"),
            ));
        }
        _ => checks.push(Check::pass(
            "euler-agreement",
            "skipped: truncated skeleton".into(),
        )),
    }

    // rational Betti agreement plus the Euler alternating sum
    if let (Some(dcx), Some(ccx)) = (delta_cx, cubical_cx) {
        let top = dcx.max_reliable_dim();
        match (
            dcx.homology(Coefficients::Rational, top),
            ccx.homology(Coefficients::Rational, top.min(ccx.max_reliable_dim())),
        ) {
            (Ok(dq), Ok(cq)) => {
                let d = &dq.betti;
                let c = &cq.betti;
                let len = d.len().max(c.len());
                let pad = |v: &Vec<usize>, i: usize| v.get(i).copied().unwrap_or(0);
                let agree = (0..len).all(|i| pad(d, i) == pad(c, i));
                checks.push(if agree {
                    Check::pass("betti-agreement-q", format!("betti {d:?}"))
                } else {
                    Check::fail(
                        "betti-agreement-q",
                        format!("simplex cells give {d:?}, cube cells give {c:?}"),
                    )
                });
                if let Some(chi) = dq.euler_characteristic {
                    let alt: i64 = dq
                        .betti
                        .iter()
                        .enumerate()
                        .map(|(r, &b)| if r % 2 == 0 { b as i64 } else { -(b as i64) })
                        .sum();
                    checks.push(if alt == chi {
                        Check::pass("euler-betti", format!("chi = {chi}"))
                    } else {
                        Check::fail(
                            "euler-betti",
                            format!("alternating Betti sum {alt} vs cell count {chi}"),
                        )
                    });
                }
            }
            (d, c) => {
                let detail = format!(
                    "rational homology failed: {:?} / {:?}",
                    d.err().map(|e| e.to_string()),
                    c.err().map(|e| e.to_string())
                );
                checks.push(Check::fail("betti-agreement-q", detail));
            }
        }
    }

    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_instances_pass() {
        for (mode, n, k) in [(Mode::Holomorph, 1, 2), (Mode::Holomorph, 2, 2), (Mode::Aut, 2, 2)]
        {
            let checks = run_verification(mode, n, k, None).unwrap();
            for check in &checks {
                assert!(check.passed, "{}: {}", check.name, check.detail);
            }
        }
    }
}
