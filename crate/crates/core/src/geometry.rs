//! Exact membership predicates for concrete configurations.
//!
//! A configuration is an ordered tuple of exact plane points. The predicates
//! decide membership in the ordered configuration space (pairwise-distinct
//! points), in the complement of the center-of-mass arrangement for a subset
//! size `t` (pairwise-distinct `t`-subset sums), and in the modified
//! complement (all subset sizes up to `t` at once). Failures come with exact
//! witnesses.

use std::collections::HashMap;

use serde::de::Error as _;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::combin::subsets_lex;
use crate::error::{Error, Result};
use crate::exact::{GaussianRational, Rational};

/// An ordered tuple of exact plane points. Repeated points are legal; the
/// predicates report them rather than rejecting the input.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Configuration {
    points: Vec<GaussianRational>,
}

impl Configuration {
    pub fn new(points: Vec<GaussianRational>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidParameter(
                "a configuration needs at least one point".into(),
            ));
        }
        Ok(Configuration { points })
    }

    pub fn from_integers(values: &[i64]) -> Self {
        Configuration {
            points: values
                .iter()
                .map(|&v| GaussianRational::from_integer(v))
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[GaussianRational] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &GaussianRational {
        &self.points[i]
    }

    /// Adds a fixed offset to every point.
    pub fn translate(&self, offset: &GaussianRational) -> Configuration {
        Configuration {
            points: self.points.iter().map(|p| p + offset).collect(),
        }
    }

    pub fn push(&self, point: GaussianRational) -> Configuration {
        let mut points = self.points.clone();
        points.push(point);
        Configuration { points }
    }
}

impl Serialize for Configuration {
    /// `{"k": n, "points": [["p/q","r/s"], ...]}`
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Configuration", 2)?;
        s.serialize_field("k", &self.points.len())?;
        s.serialize_field("points", &self.points)?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for Configuration {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            k: usize,
            points: Vec<GaussianRational>,
        }
        let raw = Raw::deserialize(deserializer)?;
        if raw.k != raw.points.len() {
            return Err(D::Error::custom(format!(
                "declared k={} but {} points given",
                raw.k,
                raw.points.len()
            )));
        }
        Configuration::new(raw.points).map_err(D::Error::custom)
    }
}

/// Two equal-size index sets with the same subset sum: one vanishing factor
/// of the defining product. Indices are 0-based in memory and 1-based on the
/// wire.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollisionWitness {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub size: usize,
    pub common_value: GaussianRational,
}

impl Serialize for CollisionWitness {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let one_based = |v: &[usize]| v.iter().map(|i| i + 1).collect::<Vec<_>>();
        let mut s = serializer.serialize_struct("CollisionWitness", 4)?;
        s.serialize_field("common_value", &self.common_value)?;
        s.serialize_field("left", &one_based(&self.left))?;
        s.serialize_field("right", &one_based(&self.right))?;
        s.serialize_field("s", &self.size)?;
        s.end()
    }
}

/// Two disjoint index pairs with equal sums: the diagonals of a possibly
/// degenerate parallelogram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parallelogram {
    pub first: (usize, usize),
    pub second: (usize, usize),
}

impl Serialize for Parallelogram {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Parallelogram", 2)?;
        s.serialize_field("first", &[self.first.0 + 1, self.first.1 + 1])?;
        s.serialize_field("second", &[self.second.0 + 1, self.second.1 + 1])?;
        s.end()
    }
}

/// The exact mean of the points selected by `subset` (0-based indices).
pub fn centroid(configuration: &Configuration, subset: &[usize]) -> Result<GaussianRational> {
    if subset.is_empty() {
        return Err(Error::InvalidParameter(
            "centroid of an empty subset is undefined".into(),
        ));
    }
    let k = configuration.len();
    let mut sum = GaussianRational::zero();
    for (pos, &i) in subset.iter().enumerate() {
        if i >= k {
            return Err(Error::InvalidParameter(format!(
                "subset index {} out of range for k={k}",
                i + 1
            )));
        }
        if pos > 0 && subset[pos - 1] >= i {
            return Err(Error::InvalidParameter(
                "centroid subset must be strictly sorted".into(),
            ));
        }
        sum = &sum + configuration.point(i);
    }
    let inv = Rational::from_integer(subset.len() as i64).recip()?;
    Ok(sum.scale(&inv))
}

/// The lexicographically least pair of equal points, if any. `None` means the
/// configuration lies in the ordered configuration space.
pub fn point_collision(configuration: &Configuration) -> Option<(usize, usize)> {
    let points = configuration.points();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if points[i] == points[j] {
                return Some((i, j));
            }
        }
    }
    None
}

pub fn is_distinct(configuration: &Configuration) -> bool {
    point_collision(configuration).is_none()
}

fn subset_sum(configuration: &Configuration, subset: &[usize]) -> GaussianRational {
    let mut sum = GaussianRational::zero();
    for &i in subset {
        sum = &sum + configuration.point(i);
    }
    sum
}

/// The lexicographically least pair of distinct `t`-subsets with equal sums,
/// if any. `None` means the configuration lies in the complement of the
/// center-of-mass arrangement for subset size `t`.
///
/// For `k <= t` there are no distinct `t`-subset pairs and membership means
/// pairwise-distinct points; a repeated point is reported as a singleton
/// collision with `size = 1`.
pub fn sum_collision(t: usize, configuration: &Configuration) -> Result<Option<CollisionWitness>> {
    if t < 1 {
        return Err(Error::InvalidParameter("subset size t must be >= 1".into()));
    }
    let k = configuration.len();
    if k <= t {
        return Ok(point_collision(configuration).map(|(i, j)| CollisionWitness {
            common_value: configuration.point(i).clone(),
            left: vec![i],
            right: vec![j],
            size: 1,
        }));
    }

    // bucket every subset sum by exact value; within a bucket the first two
    // entries (in subset lexicographic order) form its least colliding pair
    let mut buckets: HashMap<GaussianRational, (Vec<usize>, Option<Vec<usize>>)> = HashMap::new();
    for subset in subsets_lex(k, t) {
        let sum = subset_sum(configuration, &subset);
        match buckets.get_mut(&sum) {
            None => {
                buckets.insert(sum, (subset, None));
            }
            Some((_, second @ None)) => *second = Some(subset),
            Some((_, Some(_))) => {}
        }
    }
    let mut best: Option<(Vec<usize>, Vec<usize>, GaussianRational)> = None;
    for (sum, (first, second)) in buckets {
        let Some(second) = second else { continue };
        let candidate = (first, second, sum);
        let better = match &best {
            None => true,
            Some(current) => (&candidate.0, &candidate.1) < (&current.0, &current.1),
        };
        if better {
            best = Some(candidate);
        }
    }
    Ok(best.map(|(left, right, common_value)| CollisionWitness {
        left,
        right,
        size: t,
        common_value,
    }))
}

pub fn in_complement(t: usize, configuration: &Configuration) -> Result<bool> {
    Ok(sum_collision(t, configuration)?.is_none())
}

/// The first collision over subset sizes `1..=t`, reported with the smallest
/// failing size. `None` means membership in the modified complement.
pub fn graded_collision(
    t: usize,
    configuration: &Configuration,
) -> Result<Option<CollisionWitness>> {
    if t < 1 {
        return Err(Error::InvalidParameter("subset size t must be >= 1".into()));
    }
    for s in 1..=t {
        if let Some(witness) = sum_collision(s, configuration)? {
            return Ok(Some(witness));
        }
    }
    Ok(None)
}

pub fn in_modified_complement(t: usize, configuration: &Configuration) -> Result<bool> {
    Ok(graded_collision(t, configuration)?.is_none())
}

/// Finds two disjoint index pairs with the same sum by bucketing the pairwise
/// sums, i.e. the vertices of a possibly degenerate parallelogram. Returns
/// the lexicographically least such pair of pairs.
pub fn find_parallelogram(configuration: &Configuration) -> Option<Parallelogram> {
    let k = configuration.len();
    let mut buckets: HashMap<GaussianRational, Vec<(usize, usize)>> = HashMap::new();
    for i in 0..k {
        for j in i + 1..k {
            let sum = configuration.point(i) + configuration.point(j);
            buckets.entry(sum).or_default().push((i, j));
        }
    }
    let mut best: Option<Parallelogram> = None;
    for pairs in buckets.values() {
        if pairs.len() < 2 {
            continue;
        }
        // entries are in lexicographic order; take the least disjoint pair
        'outer: for (a, first) in pairs.iter().enumerate() {
            for second in &pairs[a + 1..] {
                let disjoint = first.0 != second.0
                    && first.0 != second.1
                    && first.1 != second.0
                    && first.1 != second.1;
                if !disjoint {
                    continue;
                }
                let candidate = Parallelogram {
                    first: *first,
                    second: *second,
                };
                let better = match &best {
                    None => true,
                    Some(current) => {
                        (candidate.first, candidate.second) < (current.first, current.second)
                    }
                };
                if better {
                    best = Some(candidate);
                }
                break 'outer;
            }
        }
    }
    best
}

/// Relabels the points: point `i` of the output is point `g(i)` of the input.
pub fn permute(configuration: &Configuration, permutation: &[usize]) -> Result<Configuration> {
    let k = configuration.len();
    if permutation.len() != k {
        return Err(Error::InvalidParameter(format!(
            "permutation length {} does not match k={k}",
            permutation.len()
        )));
    }
    let mut seen = vec![false; k];
    for &image in permutation {
        if image >= k || seen[image] {
            return Err(Error::InvalidParameter(
                "permutation must be a bijection on the point indices".into(),
            ));
        }
        seen[image] = true;
    }
    Configuration::new(
        permutation
            .iter()
            .map(|&image| configuration.point(image).clone())
            .collect(),
    )
}
