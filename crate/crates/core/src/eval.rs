//! Evaluation of the combinatorial lct function of a triple at one direction.
//!
//! Positions in the sorted order (`r0`, `n_seq`) are 1-based prefix lengths;
//! generator indices stored in `epsilon` are 0-based.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{LctError, Result};
use crate::extended::ExtendedRational;
use crate::ideal::IdealTriple;
use crate::linalg::{rank, IntMatrix, IntVector};
use crate::torus::r_zero;

/// Every intermediate quantity of one evaluation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LctBreakdown {
    pub v: IntVector,
    /// `min(M⁺v, M⁻v)` per generator.
    pub alpha: Vec<BigInt>,
    /// `(M⁺ - M⁻)v` per generator.
    pub beta: Vec<BigInt>,
    /// `epsilon[p]` is the generator at sorted position `p + 1`.
    pub epsilon: Vec<usize>,
    pub r0: usize,
    /// Positions `n_1 = 1 < n_2 < ... < n_{s0}` of rows of `M` that are
    /// independent of the earlier ones, scanned over positions `< r0`.
    pub n_seq: Vec<usize>,
    pub s0: usize,
    pub s_rank: usize,
    pub tilde_s: ExtendedRational,
    pub s_v: usize,
    /// `tilde_s` followed by the fractions in order.
    pub candidates: Vec<ExtendedRational>,
    pub value: ExtendedRational,
    pub star: ExtendedRational,
}

impl LctBreakdown {
    pub fn fractions(&self) -> &[ExtendedRational] {
        &self.candidates[1..]
    }
}

fn check_direction(triple: &IdealTriple, v: &IntVector) -> Result<()> {
    if v.len() != triple.nvars() {
        return Err(LctError::DimensionMismatch {
            expected: triple.nvars(),
            found: v.len(),
        });
    }
    if !v.is_nonnegative() {
        return Err(LctError::NegativeEntry("direction"));
    }
    if v.is_zero() {
        return Err(LctError::ZeroVector);
    }
    Ok(())
}

/// Generator order by `alpha` ascending, ties by generator index.
fn sort_order(alpha: &[BigInt]) -> Vec<usize> {
    let mut eps: Vec<usize> = (0..alpha.len()).collect();
    eps.sort_by(|&i, &j| alpha[i].cmp(&alpha[j]));
    eps
}

pub fn evaluate(triple: &IdealTriple, v: &IntVector) -> Result<LctBreakdown> {
    check_direction(triple, v)?;
    let plus_v = triple.plus().mul_vec(v);
    let minus_v = triple.minus().mul_vec(v);
    let alpha: Vec<BigInt> = plus_v
        .iter()
        .zip(&minus_v)
        .map(|(p, m)| p.min(m).clone())
        .collect();
    let beta: Vec<BigInt> = plus_v.iter().zip(&minus_v).map(|(p, m)| p - m).collect();
    let epsilon = sort_order(&alpha);
    evaluate_with_order(triple, v, alpha, beta, epsilon)
}

/// Same as [`evaluate`] but with a caller-chosen order, which must sort
/// `alpha` ascending. Used to probe tie-breaking.
pub fn evaluate_with_epsilon(
    triple: &IdealTriple,
    v: &IntVector,
    epsilon: &[usize],
) -> Result<LctBreakdown> {
    check_direction(triple, v)?;
    let plus_v = triple.plus().mul_vec(v);
    let minus_v = triple.minus().mul_vec(v);
    let alpha: Vec<BigInt> = plus_v
        .iter()
        .zip(&minus_v)
        .map(|(p, m)| p.min(m).clone())
        .collect();
    let beta: Vec<BigInt> = plus_v.iter().zip(&minus_v).map(|(p, m)| p - m).collect();
    crate::torus::check_permutation(epsilon, triple.nrows())?;
    if epsilon.windows(2).any(|w| alpha[w[0]] > alpha[w[1]]) {
        return Err(LctError::InvalidPermutation);
    }
    evaluate_with_order(triple, v, alpha, beta, epsilon.to_vec())
}

fn evaluate_with_order(
    triple: &IdealTriple,
    v: &IntVector,
    alpha: Vec<BigInt>,
    beta: Vec<BigInt>,
    epsilon: Vec<usize>,
) -> Result<LctBreakdown> {
    let r = triple.nrows();
    let m = triple.difference();
    let r0 = r_zero(triple, &epsilon)?;

    // greedy scan over positions 1..r0-1 for rows of M independent of the
    // previously collected ones
    let mut n_seq = Vec::new();
    let mut collected = IntMatrix::empty(triple.nvars());
    let mut collected_rank = 0;
    for pos in 1..r0 {
        let mut trial = collected.clone();
        trial.push_row(m.row(epsilon[pos - 1]).clone())?;
        let tr = rank(&trial);
        if pos == 1 || tr > collected_rank {
            n_seq.push(pos);
            collected = trial;
            collected_rank = tr;
        }
    }
    let s0 = n_seq.len();
    let s_rank = rank(&m);

    // position list for the fractions: n_1..n_{s0}, then n_{s0+1} = r0 when
    // it names an actual generator
    let mut positions = n_seq.clone();
    if r0 <= r {
        positions.push(r0);
    }

    let cap = (s0 + 1).min(r);
    let mut s_v = 1;
    while s_v < cap && beta[epsilon[n_seq[s_v - 1] - 1]].is_zero() {
        s_v += 1;
    }

    let total = v.total();
    let alpha_at = |pos: usize| &alpha[epsilon[pos - 1]];
    let mut fractions = Vec::new();
    for t in 1..=s_v.min(positions.len()) {
        let a_t = alpha_at(positions[t - 1]);
        let mut num = total.clone();
        for &pj in &positions[..t - 1] {
            num += a_t - alpha_at(pj);
        }
        fractions.push(ExtendedRational::quotient(num, a_t.clone()));
    }

    let tilde_s = if r0 == r + 1 {
        ExtendedRational::from_integer(s_rank as i64)
    } else {
        ExtendedRational::Infinity
    };
    let star = ExtendedRational::quotient(total, alpha_at(1).clone());

    let mut candidates = Vec::with_capacity(fractions.len() + 1);
    candidates.push(tilde_s.clone());
    candidates.extend(fractions);
    let value = candidates.iter().min().expect("nonempty").clone();

    Ok(LctBreakdown {
        v: v.clone(),
        alpha,
        beta,
        epsilon,
        r0,
        n_seq,
        s0,
        s_rank,
        tilde_s,
        s_v,
        candidates,
        value,
        star,
    })
}

/// `|v| / min_i α_i`, the lct of the monomial ideal of all terms.
pub fn evaluate_star(triple: &IdealTriple, v: &IntVector) -> Result<ExtendedRational> {
    check_direction(triple, v)?;
    let min_alpha = triple
        .plus()
        .mul_vec(v)
        .into_iter()
        .chain(triple.minus().mul_vec(v))
        .min()
        .expect("triple has rows");
    Ok(ExtendedRational::quotient(v.total(), min_alpha))
}
