//! Newton polyhedra of monomial exponent sets and Howald's threshold formula
//! for a monomial ideal twisted by a monomial divisor `z^c`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{LctError, Result};
use crate::extended::ExtendedRational;
use crate::gamma::{enumerate_rays, hyperplane_rows};
use crate::ideal::IdealTriple;
use crate::linalg::{IntMatrix, IntVector};
use crate::lp::{is_feasible, minimize, Constraint, LpOutcome, Relation};

/// `conv(∪ (γ_i + R^n_{≥0}))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolyhedron {
    generators: Vec<IntVector>,
    n: usize,
}

impl NewtonPolyhedron {
    pub fn new(generators: Vec<IntVector>) -> Result<Self> {
        let n = generators.first().ok_or(LctError::EmptyIdeal)?.len();
        for g in &generators {
            if g.len() != n {
                return Err(LctError::DimensionMismatch {
                    expected: n,
                    found: g.len(),
                });
            }
            if !g.is_nonnegative() {
                return Err(LctError::NegativeEntry("Newton polyhedron generator"));
            }
        }
        Ok(NewtonPolyhedron { generators, n })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::new(rows.iter().map(|r| IntVector::from_i64s(r)).collect())
    }

    pub fn generators(&self) -> &[IntVector] {
        &self.generators
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// `min γ_i · v`, the support function on the orthant.
    pub fn support(&self, v: &IntVector) -> BigInt {
        self.generators
            .iter()
            .map(|g| g.dot(v))
            .min()
            .expect("at least one generator")
    }

    /// The monomial ideal with these exponents, as a triple.
    pub fn monomial_triple(&self) -> IdealTriple {
        let rows = IntMatrix::new(self.generators.clone(), self.n).expect("uniform width");
        IdealTriple::new(
            rows.clone(),
            rows,
            vec![BigRational::zero(); self.generators.len()],
        )
        .expect("valid monomial rows")
    }
}

/// The exponent `c` of the divisor `z^c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorShift {
    c: IntVector,
}

impl DivisorShift {
    pub fn new(c: IntVector) -> Result<Self> {
        if !c.is_nonnegative() {
            return Err(LctError::NegativeEntry("divisor exponent"));
        }
        Ok(DivisorShift { c })
    }

    pub fn zero(n: usize) -> Self {
        DivisorShift {
            c: IntVector::zeros(n),
        }
    }

    pub fn c(&self) -> &IntVector {
        &self.c
    }

    /// `c + 1`.
    pub fn weight(&self) -> IntVector {
        self.c.add(&IntVector::from_i64s(&vec![1; self.c.len()]))
    }
}

fn rat(x: &BigInt) -> BigRational {
    BigRational::from_integer(x.clone())
}

/// Is `q` in the polyhedron? Decided as feasibility of
/// `q ≥ Σ λ_i γ_i`, `Σ λ_i = 1`, `λ ≥ 0`.
pub fn newton_contains(p: &NewtonPolyhedron, q: &[BigRational]) -> Result<bool> {
    if q.len() != p.n {
        return Err(LctError::DimensionMismatch {
            expected: p.n,
            found: q.len(),
        });
    }
    let k = p.generators.len();
    let mut cons: Vec<Constraint> = (0..p.n)
        .map(|coord| {
            Constraint::new(
                p.generators.iter().map(|g| rat(&g[coord])).collect(),
                Relation::Le,
                q[coord].clone(),
            )
        })
        .collect();
    cons.push(Constraint::new(
        vec![BigRational::one(); k],
        Relation::Eq,
        BigRational::one(),
    ));
    Ok(is_feasible(k, &cons))
}

fn check_howald_inputs(p: &NewtonPolyhedron, shift: &DivisorShift) -> Result<()> {
    if shift.c.len() != p.n {
        return Err(LctError::DimensionMismatch {
            expected: p.n,
            found: shift.c.len(),
        });
    }
    if p.generators.iter().any(IntVector::is_zero) {
        return Err(LctError::ZeroGenerator);
    }
    Ok(())
}

/// `min_v (c+1)·v / min γ_i·v` over the rays of the arrangement of the
/// monomial triple; the ratio is linear-fractional on each of its cones.
pub fn howald_by_rays(p: &NewtonPolyhedron, shift: &DivisorShift) -> Result<ExtendedRational> {
    check_howald_inputs(p, shift)?;
    let w = shift.weight();
    let rays = enumerate_rays(&hyperplane_rows(&p.monomial_triple()));
    Ok(rays
        .iter()
        .map(|v| ExtendedRational::quotient(w.dot(v), p.support(v)))
        .min()
        .unwrap_or(ExtendedRational::Infinity))
}

/// `1/m` for the least `m` with `m(c+1)` in the polyhedron.
pub fn howald_by_membership(
    p: &NewtonPolyhedron,
    shift: &DivisorShift,
) -> Result<ExtendedRational> {
    check_howald_inputs(p, shift)?;
    let w = shift.weight();
    let k = p.generators.len();
    // variables: λ_1..λ_k, m
    let mut cons: Vec<Constraint> = (0..p.n)
        .map(|coord| {
            let mut row: Vec<BigRational> = p.generators.iter().map(|g| -rat(&g[coord])).collect();
            row.push(rat(&w[coord]));
            Constraint::new(row, Relation::Ge, BigRational::zero())
        })
        .collect();
    let mut sum = vec![BigRational::one(); k];
    sum.push(BigRational::zero());
    cons.push(Constraint::new(sum, Relation::Eq, BigRational::one()));
    let mut objective = vec![BigRational::zero(); k];
    objective.push(BigRational::one());
    match minimize(&objective, &cons) {
        LpOutcome::Optimal { value, .. } if value.is_zero() => Ok(ExtendedRational::Infinity),
        LpOutcome::Optimal { value, .. } => Ok(ExtendedRational::Finite(value.recip())),
        LpOutcome::Infeasible | LpOutcome::Unbounded => Err(LctError::Infeasible),
    }
}

/// Howald's threshold, computed both ways; disagreement is an error.
pub fn howald_lct(p: &NewtonPolyhedron, shift: &DivisorShift) -> Result<ExtendedRational> {
    let by_rays = howald_by_rays(p, shift)?;
    let by_membership = howald_by_membership(p, shift)?;
    if by_rays != by_membership {
        return Err(LctError::OracleMismatch(format!(
            "Howald threshold: rays give {by_rays}, membership gives {by_membership}"
        )));
    }
    Ok(by_rays)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::global_lct_of_triple;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn poly(rows: &[&[i64]]) -> NewtonPolyhedron {
        NewtonPolyhedron::from_i64_rows(rows).unwrap()
    }

    #[test]
    fn membership_examples() {
        let p = poly(&[&[2, 0], &[0, 3]]);
        assert!(newton_contains(&p, &[q(1, 1), q(3, 2)]).unwrap());
        assert!(!newton_contains(&p, &[q(0, 1), q(0, 1)]).unwrap());
        assert!(!newton_contains(&p, &[q(1, 1), q(1, 1)]).unwrap());
        assert!(newton_contains(&p, &[q(5, 1), q(0, 1)]).unwrap());
        let single = poly(&[&[1, 4, 2]]);
        assert!(newton_contains(&single, &[q(1, 1), q(4, 1), q(2, 1)]).unwrap());
        assert!(newton_contains(&p, &[q(1, 1)]).is_err());
    }

    #[test]
    fn howald_examples() {
        for a in 1..6 {
            let p = poly(&[&[a]]);
            assert_eq!(
                howald_lct(&p, &DivisorShift::zero(1)).unwrap(),
                ExtendedRational::from_ratio(1, a)
            );
        }
        let p = poly(&[&[2, 0], &[0, 3]]);
        assert_eq!(
            howald_lct(&p, &DivisorShift::zero(2)).unwrap(),
            ExtendedRational::from_ratio(5, 6)
        );
        let shifted = DivisorShift::new(IntVector::from_i64s(&[1, 0])).unwrap();
        // (2v1 + v2)/min(2v1, 3v2) bottoms out at (3,2)
        assert_eq!(
            howald_lct(&p, &shifted).unwrap(),
            ExtendedRational::from_ratio(4, 3)
        );
    }

    #[test]
    fn zero_generator_rejected() {
        let p = poly(&[&[0, 0], &[1, 1]]);
        assert!(matches!(
            howald_lct(&p, &DivisorShift::zero(2)),
            Err(LctError::ZeroGenerator)
        ));
    }

    /// Least `m = k/100` with `m(c+1)` in the polyhedron, found by bisection
    /// over the grid of denominator 100.
    fn grid_threshold(p: &NewtonPolyhedron, w: &IntVector) -> BigRational {
        let inside = |k: i64| {
            let pt: Vec<BigRational> = w.iter().map(|x| q(k, 100) * rat(x)).collect();
            newton_contains(p, &pt).unwrap()
        };
        let (mut lo, mut hi) = (0i64, 1);
        while !inside(hi) {
            hi *= 2;
        }
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if inside(mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        q(hi, 100)
    }

    #[test]
    fn bisection_agrees_on_two_generators() {
        let p = poly(&[&[2, 0], &[0, 3]]);
        let m = grid_threshold(&p, &DivisorShift::zero(2).weight());
        assert_eq!(m, q(6, 5));
    }

    fn monomial_exponents() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..=3).prop_flat_map(|n| {
            proptest::collection::vec(proptest::collection::vec(0i64..4, n), 1..=4)
                .prop_filter("nonzero rows", |rows| {
                    rows.iter().all(|r| r.iter().any(|&x| x > 0))
                })
        })
    }

    fn rational_point(n: usize) -> impl Strategy<Value = Vec<BigRational>> {
        proptest::collection::vec((0i64..12, 1i64..4), n)
            .prop_map(|v| v.into_iter().map(|(a, b)| q(a, b)).collect())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn agrees_with_global_lct(rows in monomial_exponents()) {
            let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
            let p = poly(&refs);
            let howald = howald_lct(&p, &DivisorShift::zero(p.dim())).unwrap();
            let table = global_lct_of_triple(&p.monomial_triple()).unwrap();
            prop_assert_eq!(howald, table.global);
        }

        #[test]
        fn invariant_under_coordinate_permutation(
            rows in monomial_exponents(),
            c in proptest::collection::vec(0i64..3, 3),
            rot in 0usize..3,
        ) {
            let n = rows[0].len();
            let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
            let p = poly(&refs);
            let shift = DivisorShift::new(IntVector::from_i64s(&c[..n])).unwrap();
            let permute = |x: &[i64]| -> Vec<i64> { (0..n).map(|i| x[(i + rot) % n]).collect() };
            let prows: Vec<Vec<i64>> = rows.iter().map(|r| permute(r)).collect();
            let prefs: Vec<&[i64]> = prows.iter().map(Vec::as_slice).collect();
            let pshift = DivisorShift::new(IntVector::from_i64s(&permute(&c[..n]))).unwrap();
            prop_assert_eq!(
                howald_lct(&p, &shift).unwrap(),
                howald_lct(&poly(&prefs), &pshift).unwrap()
            );
        }

        #[test]
        fn membership_matches_ray_inequalities(
            (rows, pt) in monomial_exponents().prop_flat_map(|rows| {
                let n = rows[0].len();
                (Just(rows), rational_point(n))
            })
        ) {
            let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
            let p = poly(&refs);
            let rays = enumerate_rays(&hyperplane_rows(&p.monomial_triple()));
            let by_rays = rays.iter().all(|v| {
                let lhs: BigRational = pt.iter().zip(v.iter()).map(|(x, vi)| x * rat(vi)).sum();
                lhs >= rat(&p.support(v))
            });
            prop_assert_eq!(newton_contains(&p, &pt).unwrap(), by_rays);
        }
    }

    /// A chain `α_1 ⪯ α_2 ⪯ …` in the componentwise order, built from
    /// nonnegative increments.
    fn chain(n: usize, len: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
        proptest::collection::vec(proptest::collection::vec(0i64..3, n), len).prop_map(|steps| {
            let mut acc = vec![0i64; steps[0].len()];
            steps
                .into_iter()
                .map(|d| {
                    acc.iter_mut()
                        .zip(d)
                        .for_each(|(a, x)| *a = (*a + x).min(4));
                    acc.clone()
                })
                .collect()
        })
    }

    /// `x_i + Σ_{k<j} (α_{j,i} - α_{k,i}) y_k ≥ α_{j,i}` for every listed
    /// `α_j` and every coordinate `i`.
    fn staircase_holds(alpha: &[Vec<i64>], x: &[BigRational], y: &[BigRational]) -> bool {
        alpha.iter().enumerate().all(|(j, aj)| {
            (0..x.len()).all(|i| {
                let lhs: BigRational = x[i].clone()
                    + alpha[..j]
                        .iter()
                        .zip(y)
                        .map(|(ak, yk)| q(aj[i] - ak[i], 1) * yk)
                        .sum::<BigRational>();
                lhs >= q(aj[i], 1)
            })
        })
    }

    fn lifted(alpha: &[Vec<i64>], r: usize) -> NewtonPolyhedron {
        let rows: Vec<Vec<i64>> = alpha
            .iter()
            .enumerate()
            .map(|(j, a)| {
                let mut row = a.clone();
                row.extend((0..r).map(|k| i64::from(k == j)));
                row
            })
            .collect();
        let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        poly(&refs)
    }

    /// Points of the half-integer grid `[0, bound]^len`, all of them when
    /// there are at most `cap`, otherwise an evenly strided selection.
    fn half_grid(len: usize, bound: i64, cap: usize) -> Vec<Vec<BigRational>> {
        let side = (2 * bound + 1) as usize;
        let total = side.pow(len as u32);
        let stride = if total <= cap { 1 } else { (total / cap) | 1 };
        (0..total)
            .step_by(stride)
            .map(|mut k| {
                (0..len)
                    .map(|_| {
                        let c = k % side;
                        k /= side;
                        q(c as i64, 2)
                    })
                    .collect()
            })
            .collect()
    }

    fn small_chain(extra: usize) -> impl Strategy<Value = (usize, usize, Vec<Vec<i64>>)> {
        (1usize..=3, 1usize..=3)
            .prop_filter("r <= n", |(n, r)| r <= n)
            .prop_flat_map(move |(n, r)| (Just(n), Just(r), chain(n, r + extra)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10))]

        #[test]
        fn staircase_with_unit_sum_describes_lifted_points((n, r, alpha) in small_chain(0)) {
            let p = lifted(&alpha, r);
            let bound = alpha.iter().flatten().copied().max().unwrap_or(0) + 1;
            for pt in half_grid(n + r, bound, 1200) {
                let (x, y) = pt.split_at(n);
                let listed = staircase_holds(&alpha, x, y)
                    && y.iter().sum::<BigRational>() >= BigRational::one();
                prop_assert_eq!(newton_contains(&p, &pt).unwrap(), listed, "{:?} at {:?}", alpha, pt);
            }
        }

        #[test]
        fn staircase_with_unlifted_point_describes_polyhedron((n, r, alpha) in small_chain(1)) {
            let p = lifted(&alpha, r);
            let bound = alpha.iter().flatten().copied().max().unwrap_or(0) + 1;
            for pt in half_grid(n + r, bound, 1200) {
                let (x, y) = pt.split_at(n);
                let listed = staircase_holds(&alpha, x, y);
                prop_assert_eq!(newton_contains(&p, &pt).unwrap(), listed, "{:?} at {:?}", alpha, pt);
            }
        }
    }
}
