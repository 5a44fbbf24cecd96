//! Does a set of generators become the unit ideal on the torus?
//!
//! On the torus every monomial is a unit and every binomial `x^a - u x^b` is
//! a unit multiple of `1 - u x^d` with `d = b - a`. The Laurent ideal is the
//! unit ideal exactly when some integer relation `Σ λ_i d_i = 0` has
//! `Π u_i^{λ_i} ≠ 1`. The map `λ ↦ Π u_i^{λ_i}` is a group homomorphism, so
//! it suffices to check a basis of the relation lattice.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{LctError, Result};
use crate::ideal::{Generator, IdealTriple};
use crate::linalg::{left_kernel_lattice, IntMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusVerdict {
    pub is_unit: bool,
    /// Integer relation among the `b - a` vectors whose coefficient product is not 1.
    pub witness: Option<Vec<BigInt>>,
    /// Index (into the given sequence) of a monomial generator.
    pub monomial_index: Option<usize>,
}

impl TorusVerdict {
    fn proper() -> Self {
        TorusVerdict {
            is_unit: false,
            witness: None,
            monomial_index: None,
        }
    }
}

/// `Π u_i^{λ_i}` computed exactly; all `u_i` must be nonzero.
pub fn character_value(u: &[BigRational], lambda: &[BigInt]) -> BigRational {
    let mut acc = BigRational::one();
    for (ui, li) in u.iter().zip(lambda) {
        if li.is_zero() {
            continue;
        }
        let e: u32 = li
            .abs()
            .try_into()
            .expect("relation coefficient exceeds u32");
        let p = num_traits::pow(ui.clone(), e as usize);
        if li.is_negative() {
            acc /= p;
        } else {
            acc *= p;
        }
    }
    acc
}

pub fn is_torus_unit(gens: &[Generator]) -> TorusVerdict {
    if let Some(i) = gens.iter().position(Generator::is_monomial) {
        return TorusVerdict {
            is_unit: true,
            witness: None,
            monomial_index: Some(i),
        };
    }
    let Some(first) = gens.first() else {
        return TorusVerdict::proper();
    };
    let n = first.nvars();
    let mut d = IntMatrix::empty(n);
    for g in gens {
        d.push_row(g.b().sub(g.a()))
            .expect("generators share one ring");
    }
    let u: Vec<BigRational> = gens.iter().map(|g| g.u().clone()).collect();
    let kernel = left_kernel_lattice(&d);
    for row in kernel.rows() {
        if !character_value(&u, row.entries()).is_one() {
            return TorusVerdict {
                is_unit: true,
                witness: Some(row.entries().to_vec()),
                monomial_index: None,
            };
        }
    }
    TorusVerdict::proper()
}

/// Length of the shortest prefix `ε(1..j)` whose generators are a unit on the
/// torus, or `r + 1` when even the whole ideal is proper there.
///
/// `epsilon[p]` is the (0-based) generator at position `p`.
pub fn r_zero(triple: &IdealTriple, epsilon: &[usize]) -> Result<usize> {
    let r = triple.nrows();
    check_permutation(epsilon, r)?;
    let gens: Vec<Generator> = epsilon.iter().map(|&i| triple.generator(i)).collect();
    for j in 1..=r {
        if is_torus_unit(&gens[..j]).is_unit {
            return Ok(j);
        }
    }
    Ok(r + 1)
}

pub(crate) fn check_permutation(epsilon: &[usize], r: usize) -> Result<()> {
    if epsilon.len() != r {
        return Err(LctError::InvalidPermutation);
    }
    let mut seen = vec![false; r];
    for &i in epsilon {
        if i >= r || seen[i] {
            return Err(LctError::InvalidPermutation);
        }
        seen[i] = true;
    }
    Ok(())
}
