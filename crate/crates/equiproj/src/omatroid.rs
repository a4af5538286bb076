//! Oriented-matroid covectors of small vector sets.
//!
//! A covector of an ordered set X is the sign pattern of x·y over X for some
//! nonzero y. The patterns realized are constant on the cells of the normal
//! fan of the zonotope of X, so they are enumerated exactly by taking one
//! relative-interior witness per face of that zonotope — reusing the exact
//! kernel instead of a separate arrangement sweep.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use itertools::Itertools;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::sign;
use crate::minkowski::{normal_cone_interior_point, zonotope, zonotope_of_vectors, GeneratorSet};
use crate::vec3::IVec3;
use crate::{Error, Result};

/// Covector enumeration bound (the zonotope grows quickly with |X|).
pub const DEFAULT_COVECTOR_BOUND: usize = 8;
/// Brute-force equivalence bound: n! permutations times 2^n sign flips.
pub const DEFAULT_EQUIV_BOUND: usize = 6;
/// Census generators are drawn from this small cube so degenerate
/// (coplanar-triple) configurations actually occur.
pub const CENSUS_GENERATOR_BOUND: i64 = 3;

/// Sign pattern over an ordered vector set.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignVector(pub Vec<i8>);

impl SignVector {
    pub fn negate(&self) -> SignVector {
        SignVector(self.0.iter().map(|&s| -s).collect())
    }

    pub fn zero_count(&self) -> usize {
        self.0.iter().filter(|&&s| s == 0).count()
    }
}

impl fmt::Debug for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.0 {
            f.write_str(match s {
                1 => "+",
                -1 => "-",
                _ => "0",
            })?;
        }
        Ok(())
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl Serialize for SignVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_string().serialize(s)
    }
}

/// The oriented matroid M_σ(X) of an ordered set X.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CovectorSet {
    order: Vec<IVec3>,
    covectors: BTreeSet<SignVector>,
}

impl CovectorSet {
    pub fn order(&self) -> &[IVec3] {
        &self.order
    }

    pub fn covectors(&self) -> &BTreeSet<SignVector> {
        &self.covectors
    }

    pub fn len(&self) -> usize {
        self.covectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.covectors.is_empty()
    }

    pub fn closed_under_negation(&self) -> bool {
        self.covectors.iter().all(|z| self.covectors.contains(&z.negate()))
    }

    /// Sorted multiset of zero counts; invariant under permutations and
    /// sign flips, used to cut off hopeless equivalence searches.
    fn zero_profile(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.covectors.iter().map(SignVector::zero_count).collect();
        p.sort_unstable();
        p
    }
}

/// Covectors of X with respect to the input order.
pub fn covectors(xs: &[IVec3]) -> Result<CovectorSet> {
    covectors_with_bound(xs, DEFAULT_COVECTOR_BOUND)
}

pub fn covectors_with_bound(xs: &[IVec3], bound: usize) -> Result<CovectorSet> {
    if xs.is_empty() {
        return Err(Error::InvalidParameter("empty vector set".into()));
    }
    if xs.len() > bound {
        return Err(Error::ResourceBudget(format!(
            "covector enumeration limited to {bound} vectors, got {}",
            xs.len()
        )));
    }
    if let Some(i) = xs.iter().position(|x| x.is_zero()) {
        return Err(Error::InvalidParameter(format!("vector {i} is zero")));
    }
    let z = zonotope_of_vectors(xs);
    let mut set = BTreeSet::new();
    for face in z.faces() {
        let y = normal_cone_interior_point(&z, &face);
        if y.is_zero() {
            continue; // the top face of a full-dimensional zonotope: y would be 0
        }
        set.insert(SignVector(xs.iter().map(|x| sign(&x.dot(&y))).collect()));
    }
    Ok(CovectorSet { order: xs.to_vec(), covectors: set })
}

fn apply_perm(z: &SignVector, perm: &[usize]) -> SignVector {
    SignVector(perm.iter().map(|&i| z.0[i]).collect())
}

fn apply_flips(z: &SignVector, mask: u32) -> SignVector {
    SignVector(
        z.0.iter()
            .enumerate()
            .map(|(i, &s)| if mask >> i & 1 == 1 { -s } else { s })
            .collect(),
    )
}

/// Oriented-matroid equivalence: some coordinate permutation carries the
/// covectors of X onto those of X'. Brute force over all |X|! permutations.
pub fn om_equivalent(xs: &[IVec3], ys: &[IVec3]) -> Result<bool> {
    if xs.len() != ys.len() {
        return Ok(false);
    }
    if xs.len() > DEFAULT_EQUIV_BOUND {
        return Err(Error::ResourceBudget(format!(
            "oriented-matroid equivalence limited to {DEFAULT_EQUIV_BOUND} vectors"
        )));
    }
    let mx = covectors(xs)?;
    let my = covectors(ys)?;
    if mx.len() != my.len() || mx.zero_profile() != my.zero_profile() {
        return Ok(false);
    }
    let n = xs.len();
    for perm in (0..n).permutations(n) {
        let permuted: BTreeSet<SignVector> =
            mx.covectors.iter().map(|z| apply_perm(z, &perm)).collect();
        if permuted == my.covectors {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Core of the combinatorial-type test on precomputed covector sets: does
/// some permutation plus sign flip carry one onto the other?
fn covector_sets_type_equal(a: &CovectorSet, b: &CovectorSet) -> bool {
    if a.order.len() != b.order.len()
        || a.len() != b.len()
        || a.zero_profile() != b.zero_profile()
    {
        return false;
    }
    let n = a.order.len();
    let mut flipped_variants: HashSet<Vec<SignVector>> = HashSet::new();
    for mask in 0..(1u32 << n) {
        let mut v: Vec<SignVector> = b.covectors.iter().map(|z| apply_flips(z, mask)).collect();
        v.sort_unstable();
        flipped_variants.insert(v);
    }
    for perm in (0..n).permutations(n) {
        let mut permuted: Vec<SignVector> =
            a.covectors.iter().map(|z| apply_perm(z, &perm)).collect();
        permuted.sort_unstable();
        if flipped_variants.contains(&permuted) {
            return true;
        }
    }
    false
}

/// Whether two generator sets produce zonotopes of the same combinatorial
/// type: some sign flip of G' (any other generator set of the same zonotope)
/// is oriented-matroid equivalent to G.
pub fn zonotope_type_equal(g: &GeneratorSet, g2: &GeneratorSet) -> Result<bool> {
    if g.len() != g2.len() {
        return Ok(false);
    }
    if g.len() > DEFAULT_EQUIV_BOUND {
        return Err(Error::ResourceBudget(format!(
            "zonotope type comparison limited to {DEFAULT_EQUIV_BOUND} generators"
        )));
    }
    let a = covectors(g.generators())?;
    let b = covectors(g2.generators())?;
    Ok(covector_sets_type_equal(&a, &b))
}

/// Census result: a lower bound on the number of combinatorial types of
/// 3-dimensional zonotopes with n generators.
#[derive(Clone, Debug, Serialize)]
pub struct CensusReport {
    pub n: usize,
    pub samples: u64,
    pub seed: u64,
    pub distinct_types: usize,
    /// One generator set per discovered type, as exact coordinate strings.
    pub representatives: Vec<Vec<String>>,
    /// (V, E, F) of the zonotope of each representative.
    pub f_vectors: Vec<(usize, usize, usize)>,
}

/// Samples random spanning generator sets and deduplicates them by
/// combinatorial type.
pub fn type_census(n: usize, samples: u64, seed: u64) -> Result<CensusReport> {
    if !(3..=5).contains(&n) {
        return Err(Error::InvalidParameter(format!("census supports 3 ≤ n ≤ 5, got {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut reps: Vec<(GeneratorSet, CovectorSet)> = Vec::new();
    for _ in 0..samples {
        let g = GeneratorSet::random_spanning(n, &mut rng, CENSUS_GENERATOR_BOUND)?;
        let m = covectors(g.generators())?;
        if !reps.iter().any(|(_, m0)| covector_sets_type_equal(m0, &m)) {
            reps.push((g, m));
        }
    }
    let representatives: Vec<Vec<String>> = reps
        .iter()
        .map(|(g, _)| g.generators().iter().map(|v| format!("{},{},{}", v.x, v.y, v.z)).collect())
        .collect();
    let f_vectors: Vec<(usize, usize, usize)> =
        reps.iter().map(|(g, _)| zonotope(g).f_vector()).collect();
    Ok(CensusReport {
        n,
        samples,
        seed,
        distinct_types: reps.len(),
        representatives,
        f_vectors,
    })
}
