//! The hyperplane arrangement on the orthant and its rays.
//!
//! The lct function is continuous on the relative interior of each cone cut
//! out by the hyperplanes with normals `M⁺_i - M⁻_i` and `M^s_i - M^t_j`, so
//! its minimum over the orthant is attained on a ray of that fan. Each ray
//! is the intersection of `n - 1` independent hyperplanes that lands in the
//! orthant.

use std::collections::{BTreeSet, HashSet};

use rayon::prelude::*;

use crate::error::Result;
use crate::eval::{evaluate, LctBreakdown};
use crate::extended::ExtendedRational;
use crate::ideal::{GeneralBinomialIdeal, IdealTriple};
use crate::linalg::{nullspace_ray, primitive, IntMatrix, IntVector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperplaneSet {
    pub rows: IntMatrix,
    /// The first `identity_count` rows are the coordinate hyperplanes.
    pub identity_count: usize,
}

impl HyperplaneSet {
    pub fn len(&self) -> usize {
        self.rows.nrows()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.nrows() == 0
    }

    pub fn nvars(&self) -> usize {
        self.rows.ncols()
    }
}

pub fn hyperplane_rows(triple: &IdealTriple) -> HyperplaneSet {
    let n = triple.nvars();
    let r = triple.nrows();
    let mut rows = IntMatrix::identity(n);
    let mut seen: HashSet<IntVector> = rows.rows().iter().cloned().collect();

    let mut candidates = Vec::new();
    for i in 0..r {
        candidates.push(triple.plus().row(i).sub(triple.minus().row(i)));
    }
    let sides = [triple.plus(), triple.minus()];
    for i in 0..r {
        for j in i + 1..r {
            for s in sides {
                for t in sides {
                    candidates.push(s.row(i).sub(t.row(j)));
                }
            }
        }
    }

    for c in candidates {
        // rows of one sign never cut the open orthant
        if c.is_nonnegative() || c.is_nonpositive() {
            continue;
        }
        let p = primitive(&c).expect("mixed-sign row is nonzero");
        if seen.insert(p.clone()) {
            rows.push_row(p).expect("row length n");
        }
    }
    HyperplaneSet {
        rows,
        identity_count: n,
    }
}

/// Rays plus the number of full-rank `(n-1)`-subsets that produced a line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RayEnumeration {
    pub rays: Vec<IntVector>,
    pub full_rank_subsets: u64,
}

/// Incrementally maintained integer echelon basis, used to prune subsets
/// whose rows are already dependent.
#[derive(Clone)]
struct Echelon {
    rows: Vec<(usize, IntVector)>,
}

impl Echelon {
    fn extend(&self, row: &IntVector) -> Option<Echelon> {
        use num_traits::Zero;
        let mut x = row.clone();
        for (p, b) in &self.rows {
            if !x[*p].is_zero() {
                x = x.scale(&b[*p]).sub(&b.scale(&x[*p]));
                if !x.is_zero() {
                    x = primitive(&x).expect("nonzero");
                }
            }
        }
        let pivot = x.iter().position(|e| !e.is_zero())?;
        let mut rows = self.rows.clone();
        rows.push((pivot, x));
        Some(Echelon { rows })
    }
}

fn orient_into_orthant(w: IntVector) -> Option<IntVector> {
    if w.is_nonnegative() {
        Some(w)
    } else if w.is_nonpositive() {
        Some(w.neg())
    } else {
        None
    }
}

fn collect_rays(
    rows: &IntMatrix,
    depth: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    basis: &Echelon,
    out: &mut BTreeSet<IntVector>,
    full_rank: &mut u64,
) {
    if chosen.len() == depth {
        *full_rank += 1;
        let sub = rows.select_rows(chosen);
        if let Some(w) = nullspace_ray(&sub).expect("n-1 rows") {
            if let Some(w) = orient_into_orthant(w) {
                out.insert(w);
            }
        }
        return;
    }
    let remaining = depth - chosen.len();
    for i in start..=rows.nrows() - remaining {
        if let Some(next) = basis.extend(rows.row(i)) {
            chosen.push(i);
            collect_rays(rows, depth, i + 1, chosen, &next, out, full_rank);
            chosen.pop();
        }
    }
}

/// Rays of the arrangement inside the closed orthant, sorted lexicographically.
pub fn enumerate_rays(h: &HyperplaneSet) -> Vec<IntVector> {
    enumerate_rays_counted(h).rays
}

pub fn enumerate_rays_counted(h: &HyperplaneSet) -> RayEnumeration {
    let n = h.nvars();
    if n == 1 {
        return RayEnumeration {
            rays: vec![IntVector::from_i64s(&[1])],
            full_rank_subsets: 1,
        };
    }
    let depth = n - 1;
    let total = h.rows.nrows();
    if total < depth {
        return RayEnumeration {
            rays: Vec::new(),
            full_rank_subsets: 0,
        };
    }
    let empty = Echelon { rows: Vec::new() };
    let partial: Vec<(BTreeSet<IntVector>, u64)> = (0..=total - depth)
        .into_par_iter()
        .map(|first| {
            let mut out = BTreeSet::new();
            let mut count = 0;
            if let Some(basis) = empty.extend(h.rows.row(first)) {
                let mut chosen = vec![first];
                collect_rays(
                    &h.rows,
                    depth,
                    first + 1,
                    &mut chosen,
                    &basis,
                    &mut out,
                    &mut count,
                );
            }
            (out, count)
        })
        .collect();
    let mut rays = BTreeSet::new();
    let mut full_rank_subsets = 0;
    for (set, count) in partial {
        rays.extend(set);
        full_rank_subsets += count;
    }
    RayEnumeration {
        rays: rays.into_iter().collect(),
        full_rank_subsets,
    }
}

/// Per-ray evaluations and their minimum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RayTable {
    pub rays: Vec<IntVector>,
    pub breakdowns: Vec<LctBreakdown>,
    pub global: ExtendedRational,
    pub argmin: Vec<IntVector>,
    pub hyperplane_count: usize,
    pub full_rank_subsets: u64,
}

impl RayTable {
    /// Minimum of the lct* column (the lct of the monomial ideal of all terms).
    pub fn star_minimum(&self) -> ExtendedRational {
        self.breakdowns
            .iter()
            .map(|b| b.star.clone())
            .min()
            .unwrap_or(ExtendedRational::Infinity)
    }

    pub fn value_at(&self, ray: &IntVector) -> Option<&LctBreakdown> {
        self.rays
            .iter()
            .position(|r| r == ray)
            .map(|i| &self.breakdowns[i])
    }
}

pub fn global_lct(ideal: &GeneralBinomialIdeal) -> Result<RayTable> {
    global_lct_of_triple(&ideal.triple())
}

pub fn global_lct_of_triple(triple: &IdealTriple) -> Result<RayTable> {
    let h = hyperplane_rows(triple);
    let RayEnumeration {
        rays,
        full_rank_subsets,
    } = enumerate_rays_counted(&h);
    let breakdowns = rays
        .par_iter()
        .map(|v| evaluate(triple, v))
        .collect::<Result<Vec<_>>>()?;
    let global = breakdowns
        .iter()
        .map(|b| b.value.clone())
        .min()
        .unwrap_or(ExtendedRational::Infinity);
    let argmin = rays
        .iter()
        .zip(&breakdowns)
        .filter(|(_, b)| b.value == global)
        .map(|(v, _)| v.clone())
        .collect();
    Ok(RayTable {
        rays,
        breakdowns,
        global,
        argmin,
        hyperplane_count: h.len(),
        full_rank_subsets,
    })
}
