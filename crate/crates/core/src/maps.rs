//! Maps out of the configuration space and the stabilization map.
//!
//! A configuration of `k` points maps to the tuple of its `C(k,t)` subset
//! multisets (one per `t`-subset, in left-lexicographic subset order), and by
//! summing each multiset, to the tuple of its subset sums. The configuration
//! has pairwise-distinct subset sums exactly when that tuple is itself a
//! configuration; `verify_pullback` checks the equivalence pointwise along
//! two deliberately independent code paths.
//!
//! Stabilization appends a far-away real point whose offset exceeds twice the
//! subset size times (1 + the largest coordinate 1-norm), which preserves
//! membership in the modified complement; the landing is always re-checked
//! exactly rather than trusted.

use std::collections::HashMap;

use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::combin::subsets_lex;
use crate::error::{Error, Result};
use crate::exact::{GaussianRational, Rational};
use crate::geometry::{CollisionWitness, Configuration};

/// The image of a configuration under the all-`t`-subsets map: one sorted
/// `t`-tuple per subset, in left-lexicographic subset order. Sorting by
/// `(re, im)` fixes a canonical representative of each multiset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetTuples {
    pub subsets: Vec<Vec<usize>>,
    pub entries: Vec<Vec<GaussianRational>>,
}

/// The tuple of subset sums, in the same subset order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetSums {
    pub subsets: Vec<Vec<usize>>,
    pub entries: Vec<GaussianRational>,
}

fn check_subset_size(t: usize, k: usize) -> Result<()> {
    if t < 1 || t > k {
        return Err(Error::InvalidParameter(format!(
            "subset size t={t} must satisfy 1 <= t <= k={k}"
        )));
    }
    Ok(())
}

/// All `t`-element subsets of the configuration, each as a sorted tuple of
/// points.
pub fn subset_tuples(t: usize, configuration: &Configuration) -> Result<SubsetTuples> {
    check_subset_size(t, configuration.len())?;
    let subsets = subsets_lex(configuration.len(), t);
    let entries = subsets
        .iter()
        .map(|subset| {
            let mut tuple: Vec<GaussianRational> = subset
                .iter()
                .map(|&i| configuration.point(i).clone())
                .collect();
            tuple.sort();
            tuple
        })
        .collect();
    Ok(SubsetTuples { subsets, entries })
}

/// Adds up one multiset entry; the result does not depend on tuple order.
pub fn tuple_sum(tuple: &[GaussianRational]) -> GaussianRational {
    let mut sum = GaussianRational::zero();
    for z in tuple {
        sum = &sum + z;
    }
    sum
}

/// All `t`-subset sums in left-lexicographic subset order, computed directly
/// from the configuration. Equals the entrywise sum of [`subset_tuples`].
pub fn subset_sums(t: usize, configuration: &Configuration) -> Result<SubsetSums> {
    check_subset_size(t, configuration.len())?;
    let subsets = subsets_lex(configuration.len(), t);
    let entries = subsets
        .iter()
        .map(|subset| {
            let mut sum = GaussianRational::zero();
            for &i in subset {
                sum = &sum + configuration.point(i);
            }
            sum
        })
        .collect();
    Ok(SubsetSums { subsets, entries })
}

fn serialize_labeled<S: Serializer, V: Serialize>(
    subsets: &[Vec<usize>],
    entries: &[V],
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    #[derive(Serialize)]
    struct Entry<'a, V> {
        subset: Vec<usize>,
        value: &'a V,
    }
    let mut seq = serializer.serialize_seq(Some(entries.len()))?;
    for (subset, value) in subsets.iter().zip(entries) {
        seq.serialize_element(&Entry {
            subset: subset.iter().map(|i| i + 1).collect(),
            value,
        })?;
    }
    seq.end()
}

impl Serialize for SubsetTuples {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serialize_labeled(&self.subsets, &self.entries, serializer)
    }
}

impl Serialize for SubsetSums {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serialize_labeled(&self.subsets, &self.entries, serializer)
    }
}

/// Result of checking the pullback characterization on one configuration.
///
/// `sums_route` holds when the points are pairwise distinct and the subset
/// sums are pairwise distinct (membership read off the subset-sums map);
/// `definitional_route` holds when every pair of distinct `t`-subsets has
/// different sums (membership read off the defining product). The two must
/// agree on every input; `consistent == false` is a defect in this crate,
/// never a property of the input.
#[derive(Debug, Clone)]
pub struct PullbackReport {
    pub sums_route: bool,
    pub definitional_route: bool,
    pub consistent: bool,
    pub point_witness: Option<(usize, usize)>,
    pub sum_witness: Option<(Vec<usize>, Vec<usize>)>,
    pub definitional_witness: Option<CollisionWitness>,
}

impl Serialize for PullbackReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("PullbackReport", 6)?;
        s.serialize_field("consistent", &self.consistent)?;
        s.serialize_field(
            "definitional_route",
            &self.definitional_route,
        )?;
        s.serialize_field("definitional_witness", &self.definitional_witness)?;
        s.serialize_field(
            "point_witness",
            &self.point_witness.map(|(i, j)| [i + 1, j + 1]),
        )?;
        s.serialize_field("sums_route", &self.sums_route)?;
        s.serialize_field(
            "sum_witness",
            &self
                .sum_witness
                .as_ref()
                .map(|(a, b)| {
                    (
                        a.iter().map(|i| i + 1).collect::<Vec<_>>(),
                        b.iter().map(|i| i + 1).collect::<Vec<_>>(),
                    )
                }),
        )?;
        s.end()
    }
}

/// Steps a strictly increasing index tuple to its lexicographic successor.
/// Returns false once the last combination has been passed.
fn next_combination(indices: &mut [usize], k: usize) -> bool {
    let t = indices.len();
    let mut i = t;
    while i > 0 {
        i -= 1;
        if indices[i] != i + k - t {
            indices[i] += 1;
            for j in i + 1..t {
                indices[j] = indices[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn sum_over(configuration: &Configuration, indices: &[usize]) -> GaussianRational {
    let mut sum = GaussianRational::zero();
    for &i in indices {
        sum = &sum + configuration.point(i);
    }
    sum
}

/// Membership via the defining product: loop over all ordered pairs of
/// distinct `t`-subsets and compare sums. This path deliberately uses its own
/// combination stepping instead of the shared subset enumeration, so that it
/// stays independent of the subset-sums route it is checked against.
fn definitional_membership(
    t: usize,
    configuration: &Configuration,
) -> Option<CollisionWitness> {
    let k = configuration.len();
    if k <= t {
        // a single subset: membership degenerates to pairwise distinctness
        for i in 0..k {
            for j in i + 1..k {
                if configuration.point(i) == configuration.point(j) {
                    return Some(CollisionWitness {
                        common_value: configuration.point(i).clone(),
                        left: vec![i],
                        right: vec![j],
                        size: 1,
                    });
                }
            }
        }
        return None;
    }
    // scanning left then right in lexicographic order makes the first hit
    // the least colliding pair
    let mut left: Vec<usize> = (0..t).collect();
    loop {
        let left_sum = sum_over(configuration, &left);
        let mut right = left.clone();
        while next_combination(&mut right, k) {
            if sum_over(configuration, &right) == left_sum {
                return Some(CollisionWitness {
                    left,
                    right,
                    size: t,
                    common_value: left_sum,
                });
            }
        }
        if !next_combination(&mut left, k) {
            return None;
        }
    }
}

/// Checks, on one configuration, that membership read off the subset-sums
/// map agrees with membership read off the defining product.
pub fn verify_pullback(t: usize, configuration: &Configuration) -> Result<PullbackReport> {
    check_subset_size(t, configuration.len())?;

    // route A: the configuration is in the space iff its points are distinct
    // and its subset-sums tuple is again a tuple of distinct values
    let point_witness = crate::geometry::point_collision(configuration);
    let sums = subset_sums(t, configuration)?;
    let mut sum_witness: Option<(Vec<usize>, Vec<usize>)> = None;
    let mut seen: HashMap<&GaussianRational, usize> = HashMap::new();
    for (idx, value) in sums.entries.iter().enumerate() {
        match seen.get(value) {
            Some(&first) => {
                let candidate = (sums.subsets[first].clone(), sums.subsets[idx].clone());
                let better = match &sum_witness {
                    None => true,
                    Some(current) => (&candidate.0, &candidate.1) < (&current.0, &current.1),
                };
                if better {
                    sum_witness = Some(candidate);
                }
            }
            None => {
                seen.insert(value, idx);
            }
        }
    }
    let sums_route = point_witness.is_none() && sum_witness.is_none();

    // route B: the defining product, on an independent code path
    let definitional_witness = definitional_membership(t, configuration);
    let definitional_route = definitional_witness.is_none();

    Ok(PullbackReport {
        sums_route,
        definitional_route,
        consistent: sums_route == definitional_route,
        point_witness,
        sum_witness,
        definitional_witness,
    })
}

/// The appended coordinate used by stabilization: `2t * (1 + M)` where `M` is
/// the largest 1-norm `|re| + |im|` over the points. The 1-norm dominates the
/// Euclidean norm, so the offset is at least the geometric bound; landing is
/// verified exactly afterwards in any case.
pub fn stabilization_offset(t: usize, configuration: &Configuration) -> Result<Rational> {
    if t < 1 {
        return Err(Error::InvalidParameter("subset size t must be >= 1".into()));
    }
    let mut max_norm = Rational::zero();
    for p in configuration.points() {
        let norm = &p.re.abs() + &p.im.abs();
        if norm > max_norm {
            max_norm = norm;
        }
    }
    let twice_t = Rational::from_bigint(num_bigint::BigInt::from(t) * 2);
    Ok(&twice_t * &(&Rational::one() + &max_norm))
}

/// Appends the real point `(offset, 0)` to the configuration. When the input
/// lies in the modified complement for subset size `t`, so does the output;
/// the map is total and landing is only guaranteed on such inputs.
pub fn stabilize(t: usize, configuration: &Configuration) -> Result<Configuration> {
    let offset = stabilization_offset(t, configuration)?;
    Ok(configuration.push(GaussianRational::real(offset)))
}
