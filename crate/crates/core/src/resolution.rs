//! Toric pseudo-resolutions built from star subdivisions at two-dimensional
//! cones, and the threshold read off from their vertices.
//!
//! A fan is stored through its vertex list and its maximal cones; a pair of
//! vertices is a 2-face when both occur in one maximal cone. Exponents of
//! the total transforms are kept in vertex coordinates: the coordinate of
//! `x^a` at vertex `w` is `a · w`, and subdividing at `{i, j}` appends the
//! sum of the two old coordinates.
//!
//! The descent invariant for a target vector `β` in vertex coordinates is
//! the pair `(L, Lp)`: `L` is the largest gap `|β_i - β_j|` over 2-faces
//! whose entries have opposite signs, `Lp` the number of faces attaining it.
//! Blowing up an attaining face lowers the pair lexicographically.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{LctError, Result};
use crate::eval::evaluate;
use crate::extended::ExtendedRational;
use crate::ideal::{GeneralBinomialIdeal, IdealTriple};
use crate::linalg::{determinant, IntMatrix, IntVector};

#[derive(Clone, Debug)]
pub struct ResolutionFan {
    vertices: Vec<IntVector>,
    cones: Vec<Vec<usize>>,
    /// Ids of the cones containing each vertex.
    vertex_cones: Vec<Vec<usize>>,
    /// Number of maximal cones containing each 2-face `(i, j)`, `i < j`.
    faces: HashMap<(usize, usize), usize>,
}

/// Two fans are equal when they have the same vertices and the same
/// maximal cones in the same order.
impl PartialEq for ResolutionFan {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.cones == other.cones
    }
}

impl Eq for ResolutionFan {}

/// What one star subdivision changed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subdivision {
    pub new_vertex: usize,
    /// Ids of the cones that were rewritten or created; every other cone is
    /// untouched.
    pub changed_cones: Vec<usize>,
    pub removed_faces: Vec<(usize, usize)>,
    pub added_faces: Vec<(usize, usize)>,
}

fn ordered(i: usize, j: usize) -> (usize, usize) {
    (i.min(j), i.max(j))
}

fn cone_pairs(cone: &[usize]) -> impl Iterator<Item = (usize, usize)> + '_ {
    cone.iter()
        .enumerate()
        .flat_map(move |(p, &i)| cone[p + 1..].iter().map(move |&j| ordered(i, j)))
}

impl ResolutionFan {
    /// The positive orthant: standard basis vertices and a single cone.
    pub fn orthant(n: usize) -> Self {
        let cone: Vec<usize> = (0..n).collect();
        let faces = cone_pairs(&cone).map(|f| (f, 1)).collect();
        ResolutionFan {
            vertices: (0..n).map(|i| IntVector::unit(n, i)).collect(),
            cones: vec![cone],
            vertex_cones: vec![vec![0]; n],
            faces,
        }
    }

    pub fn dim(&self) -> usize {
        self.vertices[0].len()
    }

    pub fn vertices(&self) -> &[IntVector] {
        &self.vertices
    }

    pub fn cones(&self) -> &[Vec<usize>] {
        &self.cones
    }

    pub fn is_face(&self, i: usize, j: usize) -> bool {
        i != j && self.faces.contains_key(&ordered(i, j))
    }

    /// All 2-faces as ordered pairs `(i, j)` with `i < j`.
    pub fn two_faces(&self) -> BTreeSet<(usize, usize)> {
        self.faces.keys().copied().collect()
    }

    pub fn cone_matrix(&self, k: usize) -> IntMatrix {
        let rows = self.cones[k]
            .iter()
            .map(|&i| self.vertices[i].clone())
            .collect();
        IntMatrix::new(rows, self.dim()).expect("vertices share the ambient dimension")
    }

    pub fn cone_determinant(&self, k: usize) -> BigInt {
        determinant(&self.cone_matrix(k)).expect("cones have n vertices")
    }

    pub fn is_cone_regular(&self, k: usize) -> bool {
        self.cone_determinant(k).abs().is_one()
    }

    /// Every maximal cone is unimodular.
    pub fn is_regular(&self) -> bool {
        (0..self.cones.len()).all(|k| self.is_cone_regular(k))
    }

    fn add_cone_faces(&mut self, k: usize, added: &mut Vec<(usize, usize)>) {
        for f in cone_pairs(&self.cones[k]).collect::<Vec<_>>() {
            let count = self.faces.entry(f).or_insert(0);
            if *count == 0 {
                added.push(f);
            }
            *count += 1;
        }
    }

    fn remove_cone_faces(&mut self, k: usize, removed: &mut Vec<(usize, usize)>) {
        for f in cone_pairs(&self.cones[k]).collect::<Vec<_>>() {
            let count = self.faces.get_mut(&f).expect("face of a stored cone");
            *count -= 1;
            if *count == 0 {
                self.faces.remove(&f);
                removed.push(f);
            }
        }
    }

    /// Star subdivision at the 2-face `{i, j}`: the new vertex `v_i + v_j`
    /// replaces `i` in one copy and `j` in the other copy of each cone
    /// containing both.
    pub fn subdivide(&mut self, i: usize, j: usize) -> Result<Subdivision> {
        if i >= self.vertices.len() || j >= self.vertices.len() || !self.is_face(i, j) {
            return Err(LctError::NotAFace(i, j));
        }
        let new = self.vertices.len();
        self.vertices.push(self.vertices[i].add(&self.vertices[j]));
        self.vertex_cones.push(Vec::new());
        let (short, other) = if self.vertex_cones[i].len() <= self.vertex_cones[j].len() {
            (i, j)
        } else {
            (j, i)
        };
        let hit: Vec<usize> = self.vertex_cones[short]
            .iter()
            .copied()
            .filter(|&k| self.cones[k].contains(&other))
            .collect();

        let mut removed = Vec::new();
        let mut added = Vec::new();
        let mut changed = Vec::with_capacity(2 * hit.len());
        for &k in &hit {
            self.remove_cone_faces(k, &mut removed);
            let old = self.cones[k].clone();
            let m = self.cones.len();
            self.cones[k] = old.iter().map(|&x| if x == i { new } else { x }).collect();
            self.cones
                .push(old.iter().map(|&x| if x == j { new } else { x }).collect());
            // k lost i; m holds every old vertex but j
            self.vertex_cones[i].retain(|&c| c != k);
            for &x in &old {
                if x != j {
                    self.vertex_cones[x].push(m);
                }
            }
            self.vertex_cones[new].extend([k, m]);
            self.add_cone_faces(k, &mut added);
            self.add_cone_faces(m, &mut added);
            changed.extend([k, m]);
        }
        // a face can be dropped by one cone and re-added by another
        removed.sort_unstable();
        removed.dedup();
        added.sort_unstable();
        added.dedup();
        added.retain(|f| self.faces.contains_key(f) && removed.binary_search(f).is_err());
        removed.retain(|f| !self.faces.contains_key(f));
        Ok(Subdivision {
            new_vertex: new,
            changed_cones: changed,
            removed_faces: removed,
            added_faces: added,
        })
    }
}

/// Total transforms of the generators in vertex coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransformState {
    a: Vec<IntVector>,
    b: Vec<IntVector>,
    u: Vec<BigRational>,
}

impl TransformState {
    pub fn from_triple(triple: &IdealTriple) -> Self {
        TransformState {
            a: triple.plus().rows().to_vec(),
            b: triple.minus().rows().to_vec(),
            u: triple.u().to_vec(),
        }
    }

    pub fn ngenerators(&self) -> usize {
        self.u.len()
    }

    pub fn nvertices(&self) -> usize {
        self.a[0].len()
    }

    pub fn a(&self, g: usize) -> &IntVector {
        &self.a[g]
    }

    pub fn b(&self, g: usize) -> &IntVector {
        &self.b[g]
    }

    pub fn u(&self, g: usize) -> &BigRational {
        &self.u[g]
    }

    pub fn is_monomial(&self, g: usize) -> bool {
        self.u[g].is_zero()
    }

    pub fn alpha(&self, g: usize) -> IntVector {
        self.a[g].meet(&self.b[g])
    }

    pub fn beta(&self, g: usize) -> IntVector {
        self.a[g].sub(&self.b[g])
    }

    fn blow_up(&mut self, i: usize, j: usize) {
        for v in self.a.iter_mut().chain(self.b.iter_mut()) {
            let s = &v[i] + &v[j];
            v.push(s);
        }
    }
}

/// `star_subdivide` as a pure function of its inputs.
pub fn star_subdivide(
    fan: &ResolutionFan,
    state: &TransformState,
    face: (usize, usize),
) -> Result<(ResolutionFan, TransformState)> {
    let mut fan = fan.clone();
    let mut state = state.clone();
    fan.subdivide(face.0, face.1)?;
    state.blow_up(face.0, face.1);
    Ok((fan, state))
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LPair {
    pub l: BigInt,
    pub lp: usize,
}

impl LPair {
    pub fn is_resolved(&self) -> bool {
        self.l.is_zero()
    }
}

impl fmt::Display for LPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.l, self.lp)
    }
}

fn opposite(x: &BigInt, y: &BigInt) -> bool {
    (x.is_positive() && y.is_negative()) || (x.is_negative() && y.is_positive())
}

fn gap(beta: &IntVector, (i, j): (usize, usize)) -> Option<BigInt> {
    opposite(&beta[i], &beta[j]).then(|| (&beta[i] - &beta[j]).abs())
}

/// Permissible faces of a target ordered by decreasing gap, then by index
/// pair, so the first entry is the blow-up center.
struct Permissible {
    faces: BTreeSet<(Reverse<BigInt>, usize, usize)>,
    per_gap: BTreeMap<BigInt, usize>,
}

impl Permissible {
    fn new(beta: &IntVector, fan: &ResolutionFan) -> Self {
        let mut p = Permissible {
            faces: BTreeSet::new(),
            per_gap: BTreeMap::new(),
        };
        for &f in fan.faces.keys() {
            p.insert(beta, f);
        }
        p
    }

    fn insert(&mut self, beta: &IntVector, f: (usize, usize)) {
        if let Some(g) = gap(beta, f) {
            *self.per_gap.entry(g.clone()).or_insert(0) += 1;
            self.faces.insert((Reverse(g), f.0, f.1));
        }
    }

    fn remove(&mut self, beta: &IntVector, f: (usize, usize)) {
        if let Some(g) = gap(beta, f) {
            if let Some(c) = self.per_gap.get_mut(&g) {
                *c -= 1;
                if *c == 0 {
                    self.per_gap.remove(&g);
                }
            }
            self.faces.remove(&(Reverse(g), f.0, f.1));
        }
    }

    fn invariant(&self) -> LPair {
        match self.per_gap.last_key_value() {
            None => LPair {
                l: BigInt::zero(),
                lp: 0,
            },
            Some((l, &lp)) => LPair { l: l.clone(), lp },
        }
    }

    fn center(&self) -> Option<(usize, usize)> {
        self.faces.first().map(|&(_, i, j)| (i, j))
    }

    fn update(&mut self, beta: &IntVector, delta: &Subdivision) {
        for &f in &delta.removed_faces {
            self.remove(beta, f);
        }
        for &f in &delta.added_faces {
            self.insert(beta, f);
        }
    }
}

pub fn l_invariant(beta: &IntVector, fan: &ResolutionFan) -> LPair {
    Permissible::new(beta, fan).invariant()
}

/// What a descent loop flattens.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    /// `β = a - b` of one generator.
    Binomial(usize),
    /// `α_i - α_j` for two generators.
    Pair(usize, usize),
}

impl Target {
    pub fn select(&self, state: &TransformState) -> IntVector {
        match *self {
            Target::Binomial(g) => state.beta(g),
            Target::Pair(i, j) => state.alpha(i).sub(&state.alpha(j)),
        }
    }

    /// One coordinate of [`Target::select`].
    pub fn select_at(&self, state: &TransformState, k: usize) -> BigInt {
        let alpha = |g: usize| state.a[g][k].clone().min(state.b[g][k].clone());
        match *self {
            Target::Binomial(g) => &state.a[g][k] - &state.b[g][k],
            Target::Pair(i, j) => alpha(i) - alpha(j),
        }
    }

    pub fn phase(&self) -> u8 {
        match self {
            Target::Binomial(_) => 1,
            Target::Pair(..) => 2,
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Binomial(g) => write!(f, "beta[{}]", g + 1),
            Target::Pair(i, j) => write!(f, "alpha[{}]-alpha[{}]", i + 1, j + 1),
        }
    }
}

/// One star subdivision of a resolution run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowUp {
    pub step: usize,
    pub target: Target,
    /// 0-based vertex indices of the center.
    pub face: (usize, usize),
    pub center: (IntVector, IntVector),
    pub new_vertex: IntVector,
    pub before: LPair,
    pub after: LPair,
}

impl fmt::Display for BlowUp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "step {} phase {} target {} center {} + {} -> {} (L,Lp) {} -> {}",
            self.step,
            self.target.phase(),
            self.target,
            self.center.0,
            self.center.1,
            self.new_vertex,
            self.before,
            self.after
        )
    }
}

/// Blow up attaining faces until the target has no opposite-sign 2-face.
///
/// `step0` numbers the first blow-up. Fails if the invariant ever stops
/// decreasing, which would mean the target is not additive under
/// subdivision on the current fan.
pub fn resolve_target(
    fan: &mut ResolutionFan,
    state: &mut TransformState,
    target: Target,
    step0: usize,
) -> Result<Vec<BlowUp>> {
    let mut trace = Vec::new();
    let mut beta = target.select(state);
    let mut permissible = Permissible::new(&beta, fan);
    let mut before = permissible.invariant();
    while let Some((i, j)) = permissible.center() {
        let delta = fan.subdivide(i, j)?;
        state.blow_up(i, j);
        // the target is additive on the blown-up face, so only the new
        // coordinate needs computing
        beta.push(target.select_at(state, delta.new_vertex));
        permissible.update(&beta, &delta);
        let after = permissible.invariant();
        if after >= before {
            return Err(LctError::InvalidValue(format!(
                "(L,Lp) did not decrease for {target}: {before} -> {after}"
            )));
        }
        trace.push(BlowUp {
            step: step0 + trace.len(),
            target,
            face: (i, j),
            center: (fan.vertices[i].clone(), fan.vertices[j].clone()),
            new_vertex: fan.vertices[delta.new_vertex].clone(),
            before,
            after: after.clone(),
        });
        before = after;
    }
    Ok(trace)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PseudoResolution {
    pub fan: ResolutionFan,
    pub state: TransformState,
    pub trace: Vec<BlowUp>,
}

pub fn pseudo_resolve(ideal: &GeneralBinomialIdeal) -> Result<PseudoResolution> {
    pseudo_resolve_triple(&ideal.triple())
}

pub fn pseudo_resolve_triple(triple: &IdealTriple) -> Result<PseudoResolution> {
    let mut fan = ResolutionFan::orthant(triple.nvars());
    let mut state = TransformState::from_triple(triple);
    let r = triple.nrows();
    let mut trace = Vec::new();

    let targets = (0..r)
        .filter(|&g| !state.is_monomial(g))
        .map(Target::Binomial)
        .collect::<Vec<_>>()
        .into_iter()
        .chain((0..r).flat_map(|i| (i + 1..r).map(move |j| Target::Pair(i, j))));
    for target in targets {
        let steps = resolve_target(&mut fan, &mut state, target, trace.len() + 1)?;
        trace.extend(steps);
    }

    if let Err(v) = assert_pseudo_resolved(&fan, &state) {
        return Err(LctError::InvalidValue(format!(
            "resolution incomplete: {v}"
        )));
    }
    Ok(PseudoResolution { fan, state, trace })
}

/// First failure of the pseudo-resolution conditions on a maximal cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NotHyperbolic {
        cone: usize,
        generator: usize,
    },
    Unordered {
        cone: usize,
        first: usize,
        second: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotHyperbolic { cone, generator } => write!(
                f,
                "generator {} is not hyperbolic on cone {}",
                generator + 1,
                cone + 1
            ),
            Violation::Unordered {
                cone,
                first,
                second,
            } => write!(
                f,
                "monomial parts of generators {} and {} are incomparable on cone {}",
                first + 1,
                second + 1,
                cone + 1
            ),
        }
    }
}

fn one_signed(x: &IntVector, cone: &[usize]) -> bool {
    cone.iter().all(|&k| !x[k].is_negative()) || cone.iter().all(|&k| !x[k].is_positive())
}

pub fn assert_pseudo_resolved(
    fan: &ResolutionFan,
    state: &TransformState,
) -> std::result::Result<(), Violation> {
    let r = state.ngenerators();
    let betas: Vec<IntVector> = (0..r).map(|g| state.beta(g)).collect();
    let alphas: Vec<IntVector> = (0..r).map(|g| state.alpha(g)).collect();
    let differences: Vec<((usize, usize), IntVector)> = (0..r)
        .flat_map(|i| (i + 1..r).map(move |j| (i, j)))
        .map(|(i, j)| ((i, j), alphas[i].sub(&alphas[j])))
        .collect();
    for (c, cone) in fan.cones.iter().enumerate() {
        for (g, beta) in betas.iter().enumerate() {
            if !one_signed(beta, cone) {
                return Err(Violation::NotHyperbolic {
                    cone: c,
                    generator: g,
                });
            }
        }
        for ((i, j), d) in &differences {
            if !one_signed(d, cone) {
                return Err(Violation::Unordered {
                    cone: c,
                    first: *i,
                    second: *j,
                });
            }
        }
    }
    Ok(())
}

/// Threshold read off a finished resolution: the minimum of the lct
/// function of the original triple over all vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionLct {
    pub value: ExtendedRational,
    pub argmin: Vec<IntVector>,
    pub resolution: PseudoResolution,
}

pub fn resolve_and_evaluate(triple: &IdealTriple) -> Result<ResolutionLct> {
    let resolution = pseudo_resolve_triple(triple)?;
    let values = resolution
        .fan
        .vertices
        .par_iter()
        .map(|v| evaluate(triple, v).map(|b| b.value))
        .collect::<Result<Vec<_>>>()?;
    let value = values
        .iter()
        .min()
        .cloned()
        .unwrap_or(ExtendedRational::Infinity);
    let argmin: BTreeSet<IntVector> = resolution
        .fan
        .vertices
        .iter()
        .zip(&values)
        .filter(|(_, x)| **x == value)
        .map(|(v, _)| v.clone())
        .collect();
    Ok(ResolutionLct {
        value,
        argmin: argmin.into_iter().collect(),
        resolution,
    })
}

pub fn lct_via_resolution(ideal: &GeneralBinomialIdeal) -> Result<ExtendedRational> {
    Ok(resolve_and_evaluate(&ideal.triple())?.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::global_lct_of_triple;
    use crate::ideal::parse_ideal;
    use proptest::prelude::*;

    fn v(x: &[i64]) -> IntVector {
        IntVector::from_i64s(x)
    }

    fn triple(text: &str) -> IdealTriple {
        parse_ideal(text).unwrap().triple()
    }

    #[test]
    fn subdivide_plane() {
        let mut fan = ResolutionFan::orthant(2);
        let delta = fan.subdivide(0, 1).unwrap();
        assert_eq!(delta.new_vertex, 2);
        assert_eq!(delta.removed_faces, vec![(0, 1)]);
        assert_eq!(delta.added_faces, vec![(0, 2), (1, 2)]);
        assert_eq!(fan.vertices(), &[v(&[1, 0]), v(&[0, 1]), v(&[1, 1])]);
        assert_eq!(fan.cones(), &[vec![2, 1], vec![0, 2]]);
        assert!(fan.is_regular());
        assert!(fan.subdivide(0, 1).is_err());
        assert!(fan.subdivide(0, 7).is_err());
    }

    #[test]
    fn transform_sum_rule() {
        let t = triple("vars x1 x2 x3\nx1^2*x3");
        let fan = ResolutionFan::orthant(3);
        let state = TransformState::from_triple(&t);
        let (_, s) = star_subdivide(&fan, &state, (0, 2)).unwrap();
        assert_eq!(s.a(0), &v(&[2, 0, 1, 3]));

        let t = triple("vars x1 x2 x3\nx2^2 - x1*x3");
        assert_eq!(TransformState::from_triple(&t).beta(0), v(&[-1, 2, -1]));
        let (_, s) = star_subdivide(&fan, &TransformState::from_triple(&t), (0, 1)).unwrap();
        assert_eq!(s.beta(0)[3], BigInt::one());
    }

    #[test]
    fn l_invariant_examples() {
        let fan = ResolutionFan::orthant(3);
        assert_eq!(
            l_invariant(&v(&[-1, 2, -1]), &fan),
            LPair { l: 3.into(), lp: 2 }
        );
        assert!(l_invariant(&v(&[0, 2, 1]), &fan).is_resolved());
        assert_eq!(
            l_invariant(&v(&[5, -2]), &ResolutionFan::orthant(2)),
            LPair { l: 7.into(), lp: 1 }
        );
    }

    #[test]
    fn single_hyperbolic_step() {
        let t = triple("vars x y\nx - y");
        let mut fan = ResolutionFan::orthant(2);
        let mut state = TransformState::from_triple(&t);
        assert!(assert_pseudo_resolved(&fan, &state).is_err());
        let trace = resolve_target(&mut fan, &mut state, Target::Binomial(0), 1).unwrap();
        assert_eq!(trace.len(), 1);
        assert_eq!(state.beta(0), v(&[1, -1, 0]));
        assert!(l_invariant(&state.beta(0), &fan).is_resolved());
        assert!(resolve_target(&mut fan, &mut state, Target::Binomial(0), 2)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn descent_on_cusp_like_target() {
        let t = triple("vars x1 x2 x3\nx2^2 - x1*x3");
        let mut fan = ResolutionFan::orthant(3);
        let mut state = TransformState::from_triple(&t);
        let trace = resolve_target(&mut fan, &mut state, Target::Binomial(0), 1).unwrap();
        assert!(!trace.is_empty());
        assert!(trace.iter().all(|b| b.after < b.before));
        assert!(l_invariant(&state.beta(0), &fan).is_resolved());
    }

    #[test]
    fn monomial_pair_needs_one_blow_up() {
        let t = triple("vars x y\nx^2\nx*y");
        let fan = ResolutionFan::orthant(2);
        let state = TransformState::from_triple(&t);
        assert_eq!(
            assert_pseudo_resolved(&fan, &state),
            Err(Violation::Unordered {
                cone: 0,
                first: 0,
                second: 1
            })
        );
        let (fan, state) = star_subdivide(&fan, &state, (0, 1)).unwrap();
        assert_eq!(state.a(0), &v(&[2, 0, 2]));
        assert_eq!(state.a(1), &v(&[1, 1, 2]));
        assert!(assert_pseudo_resolved(&fan, &state).is_ok());

        let res = pseudo_resolve_triple(&t).unwrap();
        assert_eq!(res.trace.len(), 1);
        assert!(res.trace.iter().all(|b| b.target.phase() == 2));
    }

    #[test]
    fn known_thresholds() {
        let cases = [
            (
                "vars x1 x2 x3\nx2^2 - x1*x3\nx2*x3 - x1^3\nx3^2 - x1^2*x2",
                (13, 9),
            ),
            (
                "vars x1 x2 x3\nx1^2*x3 - x2^2\nx1^3*x2 - x3^2\nx1^5 - x2*x3",
                (5, 4),
            ),
        ];
        for (text, (p, q)) in cases {
            let ideal = parse_ideal(text).unwrap();
            assert_eq!(
                lct_via_resolution(&ideal).unwrap(),
                ExtendedRational::from_ratio(p, q),
                "{text}"
            );
        }
    }

    /// Replays a trace from the orthant, checking regularity after every
    /// step and the transform rule at the end.
    fn replay(t: &IdealTriple, res: &PseudoResolution) {
        let mut fan = ResolutionFan::orthant(t.nvars());
        for b in &res.trace {
            let delta = fan.subdivide(b.face.0, b.face.1).unwrap();
            for &k in &delta.changed_cones {
                assert!(fan.is_cone_regular(k), "irregular after step {}", b.step);
            }
            assert!(b.after < b.before);
        }
        assert_eq!(fan, res.fan);
        for (k, w) in res.fan.vertices().iter().enumerate() {
            for g in 0..t.nrows() {
                assert_eq!(res.state.a(g)[k], t.plus().row(g).dot(w));
                assert_eq!(res.state.b(g)[k], t.minus().row(g).dot(w));
            }
        }
    }

    /// Coefficients of `x` in the basis of cone `k`, by Gauss-Jordan over Q.
    fn cone_coordinates(fan: &ResolutionFan, k: usize, x: &[BigRational]) -> Vec<BigRational> {
        let n = fan.dim();
        let m = fan.cone_matrix(k);
        // solve Σ c_i w_i = x: columns are the w_i
        let mut a: Vec<Vec<BigRational>> = (0..n)
            .map(|row| {
                let mut line: Vec<BigRational> = (0..n)
                    .map(|col| BigRational::from_integer(m.row(col)[row].clone()))
                    .collect();
                line.push(x[row].clone());
                line
            })
            .collect();
        for col in 0..n {
            let p = (col..n).find(|&r| !a[r][col].is_zero()).unwrap();
            a.swap(col, p);
            let pv = a[col][col].clone();
            for e in a[col].iter_mut() {
                *e /= &pv;
            }
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    let pivot_row = a[col].clone();
                    for (e, pe) in a[r].iter_mut().zip(pivot_row) {
                        *e -= &f * pe;
                    }
                }
            }
        }
        a.into_iter().map(|row| row[n].clone()).collect()
    }

    fn small_ideal() -> impl Strategy<Value = IdealTriple> {
        (2usize..=3).prop_flat_map(|n| {
            proptest::collection::vec(
                (
                    proptest::collection::vec(0i64..4, n),
                    proptest::collection::vec(0i64..4, n),
                    prop_oneof![Just(0i64), Just(1), Just(-1), Just(2)],
                ),
                1..=3,
            )
            .prop_filter_map("valid rows", |rows| {
                let plus: Vec<&[i64]> = rows.iter().map(|r| r.0.as_slice()).collect();
                let minus: Vec<&[i64]> = rows
                    .iter()
                    .map(|r| {
                        if r.2 == 0 {
                            r.0.as_slice()
                        } else {
                            r.1.as_slice()
                        }
                    })
                    .collect();
                let u: Vec<i64> = rows.iter().map(|r| r.2).collect();
                if rows.iter().any(|r| r.2 != 0 && r.0 == r.1) {
                    return None;
                }
                if rows.iter().all(|r| {
                    r.0.iter().all(|&x| x == 0) && (r.2 == 0 || r.1.iter().all(|&x| x == 0))
                }) {
                    return None;
                }
                IdealTriple::from_i64(&plus, &minus, &u).ok()
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn resolution_is_regular_and_consistent(t in small_ideal()) {
            let res = pseudo_resolve_triple(&t).unwrap();
            replay(&t, &res);
            prop_assert!(assert_pseudo_resolved(&res.fan, &res.state).is_ok());
        }

        #[test]
        fn cones_cover_the_orthant(
            t in small_ideal(),
            pts in proptest::collection::vec(proptest::collection::vec((0i64..20, 1i64..5), 3), 25),
        ) {
            let res = pseudo_resolve_triple(&t).unwrap();
            let n = t.nvars();
            for p in pts {
                let x: Vec<BigRational> = p[..n]
                    .iter()
                    .map(|&(a, b)| BigRational::new(a.into(), b.into()))
                    .collect();
                let covering = (0..res.fan.cones().len())
                    .filter(|&k| cone_coordinates(&res.fan, k, &x).iter().all(|c| !c.is_negative()))
                    .count();
                prop_assert!(covering >= 1);
                // a point strictly inside one cone lies in no other
                let interior = (0..res.fan.cones().len())
                    .filter(|&k| cone_coordinates(&res.fan, k, &x).iter().all(|c| c.is_positive()))
                    .count();
                prop_assert!(interior <= 1);
            }
        }

        #[test]
        fn agrees_with_ray_minimum(t in small_ideal()) {
            let via_rays = global_lct_of_triple(&t).unwrap().global;
            let via_resolution = resolve_and_evaluate(&t).unwrap().value;
            prop_assert_eq!(via_rays, via_resolution);
        }
    }
}
