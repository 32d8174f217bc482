//! Construction of the defining hyperplanes of the center-of-mass spaces.
//!
//! A configuration of `k` plane points lies outside the arrangement exactly
//! when all its `t`-subset centroids are distinct. Clearing the `1/t` factor,
//! each pair of distinct `t`-subsets contributes the integer form
//! `sum(left) - sum(right)`; distinct pairs can induce the same hyperplane,
//! so hyperplanes are deduplicated by canonical covector while the generating
//! pairs are retained as provenance.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::combin::subsets_lex;
use crate::error::{Error, Result};
use crate::exact::{GaussianRational, IntCovector};

/// An ordered pair of distinct equal-size index subsets of `{0, .., k-1}`,
/// stored with `left` lexicographically smaller than `right`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubsetPair {
    left: Vec<usize>,
    right: Vec<usize>,
}

impl SubsetPair {
    pub fn new(a: Vec<usize>, b: Vec<usize>) -> Result<Self> {
        if a.len() != b.len() || a.is_empty() {
            return Err(Error::InvalidParameter(
                "subset pair sides must be nonempty and of equal size".into(),
            ));
        }
        if a == b {
            return Err(Error::InvalidParameter(
                "subset pair sides must differ".into(),
            ));
        }
        for side in [&a, &b] {
            if side.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidParameter(
                    "subset pair sides must be strictly sorted".into(),
                ));
            }
        }
        if a < b {
            Ok(SubsetPair { left: a, right: b })
        } else {
            Ok(SubsetPair { left: b, right: a })
        }
    }

    pub fn left(&self) -> &[usize] {
        &self.left
    }

    pub fn right(&self) -> &[usize] {
        &self.right
    }

    pub fn size(&self) -> usize {
        self.left.len()
    }
}

impl Serialize for SubsetPair {
    /// Index sets serialize 1-based.
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("SubsetPair", 2)?;
        let one_based = |v: &[usize]| v.iter().map(|i| i + 1).collect::<Vec<_>>();
        s.serialize_field("left", &one_based(&self.left))?;
        s.serialize_field("right", &one_based(&self.right))?;
        s.end()
    }
}

/// One hyperplane of an arrangement: a canonical normal covector plus every
/// subset pair that generates it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Hyperplane {
    pub normal: IntCovector,
    pub generators: BTreeSet<SubsetPair>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ArrangementKind {
    #[serde(rename = "single-t")]
    Single,
    #[serde(rename = "modified-up-to-t")]
    ModifiedUpTo,
}

/// A deduplicated central hyperplane arrangement in `k` coordinates.
/// Hyperplanes are kept sorted by canonical normal, so the serialized record
/// is canonical as well.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Arrangement {
    pub t: usize,
    pub k: usize,
    pub kind: ArrangementKind,
    hyperplanes: Vec<Hyperplane>,
}

/// Enumerates all canonical pairs of distinct `t`-subsets of `{0, .., k-1}`
/// in lexicographic order. There are exactly `C(C(k,t), 2)` of them.
pub fn enumerate_subset_pairs(t: usize, k: usize) -> Result<Vec<SubsetPair>> {
    if t < 1 || t > k {
        return Err(Error::InvalidParameter(format!(
            "subset size t={t} must satisfy 1 <= t <= k={k}"
        )));
    }
    let subsets = subsets_lex(k, t);
    let mut pairs = Vec::new();
    for i in 0..subsets.len() {
        for j in i + 1..subsets.len() {
            pairs.push(SubsetPair {
                left: subsets[i].clone(),
                right: subsets[j].clone(),
            });
        }
    }
    Ok(pairs)
}

/// The canonical covector of `sum(left) - sum(right)`: +1 on `left \ right`,
/// -1 on `right \ left`, 0 elsewhere.
pub fn covector_of_pair(pair: &SubsetPair, k: usize) -> Result<IntCovector> {
    let mut coeffs = vec![BigInt::zero(); k];
    for &i in &pair.left {
        if i >= k {
            return Err(Error::InvalidParameter(format!(
                "subset index {} out of range for k={k}",
                i + 1
            )));
        }
        coeffs[i] += 1;
    }
    for &j in &pair.right {
        if j >= k {
            return Err(Error::InvalidParameter(format!(
                "subset index {} out of range for k={k}",
                j + 1
            )));
        }
        coeffs[j] -= 1;
    }
    IntCovector::canonicalize(coeffs)
}

fn collect(
    t: usize,
    k: usize,
    kind: ArrangementKind,
    sizes: impl Iterator<Item = usize>,
) -> Result<Arrangement> {
    let mut dedup: BTreeMap<IntCovector, BTreeSet<SubsetPair>> = BTreeMap::new();
    for s in sizes {
        for pair in enumerate_subset_pairs(s, k)? {
            let normal = covector_of_pair(&pair, k)?;
            dedup.entry(normal).or_default().insert(pair);
        }
    }
    let hyperplanes = dedup
        .into_iter()
        .map(|(normal, generators)| Hyperplane { normal, generators })
        .collect();
    Ok(Arrangement {
        t,
        k,
        kind,
        hyperplanes,
    })
}

impl Arrangement {
    /// The arrangement with no hyperplanes at all; its complement is the
    /// whole space.
    pub fn empty(k: usize) -> Result<Arrangement> {
        if k < 1 {
            return Err(Error::InvalidParameter("k must be >= 1".into()));
        }
        Ok(Arrangement {
            t: 1,
            k,
            kind: ArrangementKind::Single,
            hyperplanes: Vec::new(),
        })
    }

    /// The arrangement whose complement is the space of configurations with
    /// pairwise-distinct `t`-subset centroids. For `k <= t` there are no
    /// distinct `t`-subset pairs and the space is taken to be the ordered
    /// configuration space, i.e. the braid arrangement.
    pub fn build(t: usize, k: usize) -> Result<Arrangement> {
        if t < 1 || k < 1 {
            return Err(Error::InvalidParameter(format!(
                "arrangement parameters must satisfy t >= 1 and k >= 1 (got t={t}, k={k})"
            )));
        }
        let size = if k <= t { 1 } else { t };
        collect(t, k, ArrangementKind::Single, std::iter::once(size))
    }

    /// The union of the arrangements for every subset size `s = 1..=t`,
    /// whose complement is the intersection of the single-size complements.
    pub fn build_modified(t: usize, k: usize) -> Result<Arrangement> {
        if t < 1 || k < 1 {
            return Err(Error::InvalidParameter(format!(
                "arrangement parameters must satisfy t >= 1 and k >= 1 (got t={t}, k={k})"
            )));
        }
        collect(t, k, ArrangementKind::ModifiedUpTo, 1..=t.min(k))
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    /// The set of canonical normals, for comparisons between arrangements.
    pub fn normal_set(&self) -> BTreeSet<IntCovector> {
        self.hyperplanes.iter().map(|h| h.normal.clone()).collect()
    }

    /// The first hyperplane (in canonical order) vanishing at the given
    /// points, if any.
    pub fn vanishing_hyperplane(&self, points: &[GaussianRational]) -> Option<usize> {
        self.hyperplanes
            .iter()
            .position(|h| h.normal.evaluate(points).is_zero())
    }
}
