//! Chain complexes assembled from skeletons, homology reports, and relative
//! homology of degree-filtration pairs.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cubical::CubicalComplex;
use crate::delta::DeltaSkeleton;
use crate::graph::Mode;
use crate::matrix::SparseIntMatrix;
use crate::rank::{
    check_odd_prime, kernel_basis_mod_p, kernel_basis_rational, rank_fraction_free, rank_mod_p,
    RankError,
};
use crate::snf::smith_normal_form;

/// Coefficient ring for homology.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coefficients {
    Rational,
    /// Z/p for an odd prime p.
    PrimeField(u64),
    Integer,
}

impl Coefficients {
    pub fn label(&self) -> String {
        match self {
            Coefficients::Rational => "q".into(),
            Coefficients::PrimeField(p) => format!("zp:{p}"),
            Coefficients::Integer => "z".into(),
        }
    }

    pub fn parse(s: &str) -> Result<Coefficients, HomologyError> {
        match s {
            "q" => Ok(Coefficients::Rational),
            "z" => Ok(Coefficients::Integer),
            other => {
                let Some(p) = other.strip_prefix("zp:") else {
                    return Err(HomologyError::BadCoefficients(other.to_string()));
                };
                let p: u64 = p
                    .parse()
                    .map_err(|_| HomologyError::BadCoefficients(other.to_string()))?;
                check_odd_prime(p)?;
                Ok(Coefficients::PrimeField(p))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ComplexKind {
    Delta,
    Cubical,
}

#[derive(Debug, Error)]
pub enum HomologyError {
    #[error(
        "boundary composite is nonzero at dimension {dim} (cell {col} hits cell {row} with \
         coefficient {value}); canonical form or sign bookkeeping is broken"
    )]
    BoundaryComposite { dim: usize, row: usize, col: usize, value: i64 },
    #[error("dimension {dim} is beyond the reliably built skeleton (max usable {max_reliable})")]
    DimensionUnavailable { dim: usize, max_reliable: usize },
    #[error("the cube generators carry orientation classes only over the rationals")]
    CubicalNeedsRationals,
    #[error("subcomplex cutoff {cutoff} must be smaller than the max degree {max_degree}")]
    BadCutoff { cutoff: usize, max_degree: usize },
    #[error("unknown coefficient spec `{0}` (expected q, z, or zp:<odd prime>)")]
    BadCoefficients(String),
    #[error(transparent)]
    Rank(#[from] RankError),
}

/// Generator counts and integer boundary matrices for one complex, with the
/// vanishing of consecutive boundaries already verified.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    pub kind: ComplexKind,
    pub mode: Mode,
    pub genus: usize,
    pub max_degree: usize,
    pub built_dim: usize,
    pub complete: bool,
    pub cell_counts: Vec<usize>,
    boundaries: Vec<SparseIntMatrix>,
}

impl ChainComplex {
    pub fn from_delta(skel: &DeltaSkeleton) -> Result<ChainComplex, HomologyError> {
        let boundaries: Vec<SparseIntMatrix> =
            (1..=skel.built_dim).map(|r| skel.boundary(r)).collect();
        let cx = ChainComplex {
            kind: ComplexKind::Delta,
            mode: skel.mode,
            genus: skel.genus,
            max_degree: skel.max_degree,
            built_dim: skel.built_dim,
            complete: skel.is_complete(),
            cell_counts: skel.cell_counts(),
            boundaries,
        };
        cx.check_composites()?;
        Ok(cx)
    }

    pub fn from_cubical(cx: &CubicalComplex) -> Result<ChainComplex, HomologyError> {
        let complex = ChainComplex {
            kind: ComplexKind::Cubical,
            mode: cx.mode,
            genus: cx.genus,
            max_degree: cx.max_degree,
            built_dim: cx.built_dim,
            complete: cx.is_complete(),
            cell_counts: cx.cell_counts(),
            boundaries: cx.boundaries.clone(),
        };
        complex.check_composites()?;
        Ok(complex)
    }

    fn check_composites(&self) -> Result<(), HomologyError> {
        for r in 2..=self.built_dim {
            let composite = self.boundary(r - 1).multiply(self.boundary(r));
            if let Some((row, col, value)) = composite.first_nonzero() {
                return Err(HomologyError::BoundaryComposite { dim: r, row, col, value });
            }
        }
        Ok(())
    }

    /// The boundary matrix from dimension r to r-1 (r in 1..=built_dim).
    pub fn boundary(&self, r: usize) -> &SparseIntMatrix {
        &self.boundaries[r - 1]
    }

    pub fn top_dim(&self) -> usize {
        (0..self.cell_counts.len()).rev().find(|&r| self.cell_counts[r] > 0).unwrap_or(0)
    }

    /// Largest dimension whose homology the built skeleton determines.
    pub fn max_reliable_dim(&self) -> usize {
        if self.complete {
            self.built_dim
        } else {
            self.built_dim.saturating_sub(1)
        }
    }

    fn rank_at(&self, r: usize, coeff: Coefficients) -> Result<usize, HomologyError> {
        if r == 0 || r > self.built_dim || self.boundary(r).nnz() == 0 {
            return Ok(0);
        }
        let m = self.boundary(r);
        Ok(match coeff {
            Coefficients::Rational | Coefficients::Integer => rank_fraction_free(m),
            Coefficients::PrimeField(p) => {
                check_odd_prime(p)?;
                rank_mod_p(m, p)
            }
        })
    }

    /// Betti numbers (and torsion divisors over the integers) for dimensions
    /// 0..=max_dim. Dimensions past the top of a complete complex are
    /// omitted; on a truncated skeleton, dimensions the truncation leaves
    /// undetermined are an error.
    pub fn homology(
        &self,
        coeff: Coefficients,
        max_dim: usize,
    ) -> Result<HomologyReport, HomologyError> {
        if self.kind == ComplexKind::Cubical && coeff != Coefficients::Rational {
            return Err(HomologyError::CubicalNeedsRationals);
        }
        if let Coefficients::PrimeField(p) = coeff {
            check_odd_prime(p)?;
        }
        if !self.complete && max_dim > self.max_reliable_dim() {
            return Err(HomologyError::DimensionUnavailable {
                dim: max_dim,
                max_reliable: self.max_reliable_dim(),
            });
        }
        let end = max_dim.min(self.top_dim());

        let mut betti = Vec::with_capacity(end + 1);
        let mut torsion: Option<Vec<Vec<u64>>> = matches!(coeff, Coefficients::Integer)
            .then(Vec::new);

        if let Coefficients::Integer = coeff {
            // ranks and divisors from Smith normal form
            let mut divisors: Vec<Vec<u64>> = Vec::with_capacity(end + 2);
            for r in 0..=end + 1 {
                if r == 0 || r > self.built_dim {
                    divisors.push(Vec::new());
                } else {
                    divisors.push(smith_normal_form(self.boundary(r)));
                }
            }
            for r in 0..=end {
                let rank_r = divisors[r].len();
                let rank_r1 = divisors[r + 1].len();
                betti.push(self.cell_counts[r] - rank_r - rank_r1);
                torsion
                    .as_mut()
                    .unwrap()
                    .push(divisors[r + 1].iter().copied().filter(|&d| d > 1).collect());
            }
        } else {
            let mut ranks = Vec::with_capacity(end + 2);
            for r in 0..=end + 1 {
                ranks.push(self.rank_at(r, coeff)?);
            }
            for r in 0..=end {
                betti.push(self.cell_counts[r] - ranks[r] - ranks[r + 1]);
            }
        }

        let euler = self.complete.then(|| {
            self.cell_counts
                .iter()
                .enumerate()
                .map(|(r, &n)| if r % 2 == 0 { n as i64 } else { -(n as i64) })
                .sum()
        });
        let interpretation =
            (0..=end).map(|r| interpretation_label(coeff, self.mode, r, self.max_degree)).collect();
        Ok(HomologyReport {
            mode: self.mode,
            genus: self.genus,
            max_degree: self.max_degree,
            complex: self.kind,
            coefficients: coeff.label(),
            dims: (0..=end).collect(),
            betti,
            torsion,
            cell_counts: self.cell_counts.clone(),
            euler_characteristic: euler,
            complete: self.complete,
            interpretation,
        })
    }
}

/// Where a computed group is the homology of the acting group rather than
/// just of the quotient space.
fn interpretation_label(coeff: Coefficients, mode: Mode, dim: usize, k: usize) -> String {
    let group = match coeff {
        Coefficients::Rational => dim < k,
        Coefficients::PrimeField(_) => mode == Mode::Holomorph && dim == 2 && k == 3,
        Coefficients::Integer => false,
    };
    if group { "group-homology".into() } else { "quotient-space-only".into() }
}

/// Homology output with provenance metadata. Serialization is deterministic;
/// wall-clock data stays out of the report so repeated runs are
/// byte-identical.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HomologyReport {
    pub mode: Mode,
    pub genus: usize,
    pub max_degree: usize,
    pub complex: ComplexKind,
    pub coefficients: String,
    pub dims: Vec<usize>,
    pub betti: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub torsion: Option<Vec<Vec<u64>>>,
    pub cell_counts: Vec<usize>,
    pub euler_characteristic: Option<i64>,
    pub complete: bool,
    pub interpretation: Vec<String>,
}

impl HomologyReport {
    /// One CSV row per reported dimension.
    pub fn csv_rows(&self) -> Vec<String> {
        self.dims
            .iter()
            .map(|&r| {
                let torsion = self
                    .torsion
                    .as_ref()
                    .map(|t| {
                        t[r].iter().map(|d| d.to_string()).collect::<Vec<_>>().join(";")
                    })
                    .unwrap_or_default();
                format!(
                    "{},{},{},{:?},{},{},{},{},{}",
                    self.mode.as_str(),
                    self.genus,
                    self.max_degree,
                    self.complex,
                    self.coefficients,
                    r,
                    self.betti[r],
                    torsion,
                    self.interpretation[r],
                )
            })
            .collect()
    }

    pub const CSV_HEADER: &'static str =
        "mode,n,k,complex,coeff,dim,betti,torsion,interpretation";
}

/// Relative homology of the pair (full complex, degree <= cutoff part),
/// plus the inclusion-surjectivity check in dimension `cutoff`.
#[derive(Clone, Debug, Serialize)]
pub struct RelativeReport {
    pub cutoff: usize,
    pub coefficients: String,
    pub dims: Vec<usize>,
    pub betti: Vec<usize>,
    pub relative_cell_counts: Vec<usize>,
    pub surjectivity: Option<SurjectivityCheck>,
}

/// Rank bookkeeping for H_dim(sub) -> H_dim(total): the map is onto exactly
/// when the induced rank matches the total Betti number.
#[derive(Clone, Debug, Serialize)]
pub struct SurjectivityCheck {
    pub dim: usize,
    pub betti_sub: usize,
    pub betti_total: usize,
    pub induced_rank: usize,
    pub surjective: bool,
}

pub fn relative_homology(
    skel: &DeltaSkeleton,
    cutoff: usize,
    coeff: Coefficients,
    max_dim: usize,
) -> Result<RelativeReport, HomologyError> {
    if cutoff >= skel.max_degree {
        return Err(HomologyError::BadCutoff { cutoff, max_degree: skel.max_degree });
    }
    if let Coefficients::PrimeField(p) = coeff {
        check_odd_prime(p)?;
    }

    // quotient complex: cells of degree above the cutoff
    let built = skel.built_dim;
    let mut keep: Vec<Vec<usize>> = Vec::with_capacity(built + 1);
    let mut new_index: Vec<Vec<Option<usize>>> = Vec::with_capacity(built + 1);
    for r in 0..=built {
        let mut kept = Vec::new();
        let mut map = vec![None; skel.cells[r].len()];
        for i in 0..skel.cells[r].len() {
            if skel.cell_degree(r, i) > cutoff {
                map[i] = Some(kept.len());
                kept.push(i);
            }
        }
        keep.push(kept);
        new_index.push(map);
    }
    let counts: Vec<usize> = keep.iter().map(|k| k.len()).collect();
    let mut boundaries = Vec::with_capacity(built);
    for r in 1..=built {
        let full = skel.boundary(r);
        let mut m = SparseIntMatrix::new(counts[r - 1], counts[r]);
        for (row, col, v) in full.iter() {
            if let (Some(nr), Some(nc)) = (new_index[r - 1][row], new_index[r][col]) {
                m.add(nr, nc, v);
            }
        }
        boundaries.push(m);
    }
    let complete = skel.is_complete();
    let pair = ChainComplex {
        kind: ComplexKind::Delta,
        mode: skel.mode,
        genus: skel.genus,
        max_degree: skel.max_degree,
        built_dim: built,
        complete,
        cell_counts: counts.clone(),
        boundaries,
    };
    pair.check_composites()?;
    let end = max_dim.min(pair.max_reliable_dim());
    if !complete && max_dim > pair.max_reliable_dim() {
        return Err(HomologyError::DimensionUnavailable {
            dim: max_dim,
            max_reliable: pair.max_reliable_dim(),
        });
    }
    let mut betti = Vec::with_capacity(end + 1);
    let mut ranks = Vec::with_capacity(end + 2);
    for r in 0..=end + 1 {
        ranks.push(pair.rank_at(r, field_part(coeff))?);
    }
    for r in 0..=end {
        betti.push(counts[r] - ranks[r] - ranks[r + 1]);
    }

    // surjectivity of H_cutoff(sub) -> H_cutoff(total), fields only
    let surjectivity = match coeff {
        Coefficients::Integer => None,
        _ if cutoff + 1 > built => None,
        _ => Some(inclusion_surjectivity(skel, cutoff, coeff)?),
    };

    Ok(RelativeReport {
        cutoff,
        coefficients: coeff.label(),
        dims: (0..=end).collect(),
        betti,
        relative_cell_counts: counts,
        surjectivity,
    })
}

fn field_part(coeff: Coefficients) -> Coefficients {
    match coeff {
        Coefficients::Integer => Coefficients::Rational,
        other => other,
    }
}

/// Rank of the map H_dim(degree <= cutoff part) -> H_dim(whole complex)
/// induced by inclusion, and whether it is onto.
pub fn inclusion_surjectivity(
    skel: &DeltaSkeleton,
    cutoff: usize,
    coeff: Coefficients,
) -> Result<SurjectivityCheck, HomologyError> {
    let dim = cutoff;
    let built = skel.built_dim;
    assert!(dim < built, "needs cells one dimension above the cutoff");

    // sub-complex columns at dim and the boundary restricted to them
    let sub_cols: Vec<usize> = (0..skel.cells[dim].len())
        .filter(|&i| skel.cell_degree(dim, i) <= cutoff)
        .collect();
    let full_d = if dim >= 1 {
        skel.boundary(dim)
    } else {
        SparseIntMatrix::new(0, skel.cells[0].len())
    };
    let mut sub_d = SparseIntMatrix::new(full_d.rows(), sub_cols.len());
    for (j, &col) in sub_cols.iter().enumerate() {
        for (row, c, v) in full_d.iter() {
            if c == col {
                sub_d.add(row, j, v);
            }
        }
    }

    let total = skel.cells[dim].len();
    let d_up = skel.boundary(dim + 1);

    let (induced_rank, betti_sub, betti_total) = match coeff {
        Coefficients::Rational => {
            let kernel = if dim == 0 {
                identity_columns(sub_cols.len())
            } else {
                kernel_basis_rational(&sub_d)
                    .into_iter()
                    .map(|v| {
                        v.into_iter()
                            .map(|x| i64::try_from(&x).expect("kernel entries stay small"))
                            .collect::<Vec<i64>>()
                    })
                    .collect::<Vec<_>>()
            };
            let betti_sub = kernel.len()
                - rank_of_sub_image(skel, cutoff, dim, Coefficients::Rational)?;
            let mut m = SparseIntMatrix::new(total, kernel.len() + d_up.cols());
            for (j, vec) in kernel.iter().enumerate() {
                for (local, &val) in vec.iter().enumerate() {
                    m.add(sub_cols[local], j, val);
                }
            }
            for (r, c, v) in d_up.iter() {
                m.add(r, kernel.len() + c, v);
            }
            let rank_up = rank_fraction_free(&d_up);
            let induced = rank_fraction_free(&m) - rank_up;
            let betti_total = total - rank_fraction_free(&full_d) - rank_up;
            (induced, betti_sub, betti_total)
        }
        Coefficients::PrimeField(p) => {
            let kernel: Vec<Vec<i64>> = if dim == 0 {
                identity_columns(sub_cols.len())
            } else {
                kernel_basis_mod_p(&sub_d, p)
                    .into_iter()
                    .map(|v| v.into_iter().map(|x| x as i64).collect())
                    .collect()
            };
            let betti_sub =
                kernel.len() - rank_of_sub_image(skel, cutoff, dim, Coefficients::PrimeField(p))?;
            let mut m = SparseIntMatrix::new(total, kernel.len() + d_up.cols());
            for (j, vec) in kernel.iter().enumerate() {
                for (local, &val) in vec.iter().enumerate() {
                    m.add(sub_cols[local], j, val);
                }
            }
            for (r, c, v) in d_up.iter() {
                m.add(r, kernel.len() + c, v);
            }
            let rank_up = rank_mod_p(&d_up, p);
            let induced = rank_mod_p(&m, p) - rank_up;
            let betti_total = total - rank_mod_p(&full_d, p) - rank_up;
            (induced, betti_sub, betti_total)
        }
        Coefficients::Integer => unreachable!("callers restrict to fields"),
    };

    Ok(SurjectivityCheck {
        dim,
        betti_sub,
        betti_total,
        induced_rank,
        surjective: induced_rank == betti_total,
    })
}

fn identity_columns(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| {
            let mut v = vec![0i64; n];
            v[i] = 1;
            v
        })
        .collect()
}

/// Rank of the sub-complex boundary from dimension dim+1 (needed for the
/// sub-complex Betti number at `dim`).
fn rank_of_sub_image(
    skel: &DeltaSkeleton,
    cutoff: usize,
    dim: usize,
    coeff: Coefficients,
) -> Result<usize, HomologyError> {
    let up = dim + 1;
    if up > skel.built_dim {
        return Ok(0);
    }
    let cols: Vec<usize> = (0..skel.cells[up].len())
        .filter(|&i| skel.cell_degree(up, i) <= cutoff)
        .collect();
    let full = skel.boundary(up);
    let mut m = SparseIntMatrix::new(full.rows(), cols.len());
    for (j, &col) in cols.iter().enumerate() {
        for (row, c, v) in full.iter() {
            if c == col {
                m.add(row, j, v);
            }
        }
    }
    Ok(match coeff {
        Coefficients::Rational | Coefficients::Integer => rank_fraction_free(&m),
        Coefficients::PrimeField(p) => rank_mod_p(&m, p),
    })
}
