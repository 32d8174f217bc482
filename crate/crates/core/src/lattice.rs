//! The intersection lattice of an arrangement and its numerical invariants.
//!
//! Flats are intersections of subfamilies of hyperplanes, identified with the
//! row space spanned by their normals and keyed by the canonical reduced
//! echelon basis of that span. The Mobius function over the containment order
//! yields the characteristic polynomial, the Poincare polynomial of the
//! complex complement, and Zaslavsky's region counts for the real arrangement
//! with the same defining forms.
//!
//! A finite-field point-counting oracle computes the same characteristic
//! polynomial along a completely separate code path: for a suitable prime q,
//! the number of points of the complement over the q-element field equals the
//! characteristic polynomial evaluated at q.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::exact::{in_row_space, serialize_bigint_seq, QMatrix, Rational};
use crate::poly::IntPolynomial;

/// Default cap on the number of flats built before giving up.
pub const DEFAULT_FLAT_CAP: usize = 100_000;

/// One flat: the canonical echelon basis of the covectors vanishing on it,
/// its codimension, and the ids of the arrangement hyperplanes containing it.
#[derive(Debug, Clone)]
pub struct Flat {
    echelon: Vec<Vec<Rational>>,
    codim: usize,
    contained: Vec<usize>,
    mask: Vec<u64>,
}

impl Flat {
    pub fn codim(&self) -> usize {
        self.codim
    }

    /// Canonical reduced echelon basis rows of the normal span.
    pub fn echelon(&self) -> &[Vec<Rational>] {
        &self.echelon
    }

    /// Ids of the hyperplanes whose normal lies in the normal span.
    pub fn contained_hyperplanes(&self) -> &[usize] {
        &self.contained
    }

    /// Echelon rows with denominators cleared to primitive integer vectors.
    pub fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        self.echelon
            .iter()
            .map(|row| {
                let mut lcm = BigInt::one();
                for x in row {
                    lcm = lcm.lcm(x.denom());
                }
                let ints: Vec<BigInt> = row
                    .iter()
                    .map(|x| x.numer() * (&lcm / x.denom()))
                    .collect();
                let mut gcd = BigInt::zero();
                for v in &ints {
                    gcd = gcd.gcd(v);
                }
                if gcd.is_zero() {
                    ints
                } else {
                    ints.into_iter().map(|v| v / &gcd).collect()
                }
            })
            .collect()
    }

    fn mask_subset_of(&self, other: &Flat) -> bool {
        self.mask
            .iter()
            .zip(&other.mask)
            .all(|(a, b)| a & !b == 0)
    }
}

/// The full intersection lattice: flats grouped by codimension, with Mobius
/// values over the containment order (bottom = ambient space, codim 0).
#[derive(Debug, Clone)]
pub struct IntersectionLattice {
    k: usize,
    hyperplane_count: usize,
    flats: Vec<Flat>,
    mobius: Vec<BigInt>,
}

/// Builds the lattice by breadth-first closure: starting from the ambient
/// flat, repeatedly intersect each frontier flat with each hyperplane not
/// already containing it, dedup by canonical echelon key, and stop when no
/// new flats appear. Exceeding `cap` flats is reported as a size error.
pub fn build_lattice(arrangement: &Arrangement, cap: usize) -> Result<IntersectionLattice> {
    let k = arrangement.k;
    let normals: Vec<Vec<Rational>> = arrangement
        .hyperplanes()
        .iter()
        .map(|h| h.normal.as_rational_row())
        .collect();
    let n = normals.len();
    let words = n.div_ceil(64).max(1);

    let make_flat = |echelon: Vec<Vec<Rational>>| -> Flat {
        let mut contained = Vec::new();
        let mut mask = vec![0u64; words];
        for (id, normal) in normals.iter().enumerate() {
            if in_row_space(normal, &echelon) {
                contained.push(id);
                mask[id / 64] |= 1 << (id % 64);
            }
        }
        Flat {
            codim: echelon.len(),
            echelon,
            contained,
            mask,
        }
    };

    let mut flats: Vec<Flat> = vec![make_flat(Vec::new())];
    let mut index: HashMap<Vec<Vec<Rational>>, usize> = HashMap::new();
    index.insert(Vec::new(), 0);
    let mut frontier: Vec<usize> = vec![0];

    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &fid in &frontier {
            for (hid, normal) in normals.iter().enumerate() {
                if flats[fid].contained.binary_search(&hid).is_ok() {
                    continue;
                }
                let mut rows = flats[fid].echelon.clone();
                rows.push(normal.clone());
                let stacked = QMatrix::new(rows, k).expect("echelon rows share the width k");
                let echelon = stacked.row_space_basis();
                if index.contains_key(&echelon) {
                    continue;
                }
                if flats.len() >= cap {
                    return Err(Error::LatticeCapExceeded { cap });
                }
                index.insert(echelon.clone(), flats.len());
                next.push(flats.len());
                flats.push(make_flat(echelon));
            }
        }
        frontier = next;
    }

    // deterministic order: by codimension, then by echelon basis
    flats.sort_by(|a, b| (a.codim, &a.echelon).cmp(&(b.codim, &b.echelon)));

    // Mobius recursion over the containment order. Containment of flats is
    // containment of their contained-hyperplane sets, so the subset test runs
    // on bitmasks.
    let mut mobius: Vec<BigInt> = vec![BigInt::zero(); flats.len()];
    for i in 0..flats.len() {
        if flats[i].codim == 0 {
            mobius[i] = BigInt::one();
            continue;
        }
        let mut acc = BigInt::zero();
        for j in 0..i {
            if flats[j].codim < flats[i].codim && flats[j].mask_subset_of(&flats[i]) {
                acc += &mobius[j];
            }
        }
        mobius[i] = -acc;
    }

    Ok(IntersectionLattice {
        k,
        hyperplane_count: n,
        flats,
        mobius,
    })
}

impl IntersectionLattice {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    pub fn mobius(&self, flat: usize) -> &BigInt {
        &self.mobius[flat]
    }

    pub fn hyperplane_count(&self) -> usize {
        self.hyperplane_count
    }

    /// Number of flats of each codimension, ascending from 0.
    pub fn flats_by_codim(&self) -> Vec<usize> {
        let max = self.flats.iter().map(|f| f.codim).max().unwrap_or(0);
        let mut counts = vec![0usize; max + 1];
        for f in &self.flats {
            counts[f.codim] += 1;
        }
        counts
    }

    /// Whether flat `a` lies below flat `b` in the containment order
    /// (normal span of `a` contained in that of `b`).
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.flats[a].codim <= self.flats[b].codim && self.flats[a].mask_subset_of(&self.flats[b])
    }

    /// Lower covers of each flat: the flats one codimension below it that it
    /// contains in the order.
    pub fn lower_covers(&self) -> Vec<Vec<usize>> {
        (0..self.flats.len())
            .map(|i| {
                (0..self.flats.len())
                    .filter(|&j| {
                        self.flats[j].codim + 1 == self.flats[i].codim && self.leq(j, i)
                    })
                    .collect()
            })
            .collect()
    }
}

impl Serialize for IntersectionLattice {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct FlatRecord {
            #[serde(serialize_with = "serialize_rows")]
            echelon: Vec<Vec<BigInt>>,
            codim: usize,
            #[serde(serialize_with = "serialize_bigint")]
            mobius: BigInt,
            parents: Vec<usize>,
        }

        fn serialize_rows<S: Serializer>(
            rows: &Vec<Vec<BigInt>>,
            s: S,
        ) -> std::result::Result<S::Ok, S::Error> {
            use serde::ser::SerializeSeq;
            let mut seq = s.serialize_seq(Some(rows.len()))?;
            for row in rows {
                seq.serialize_element(&SerializeWith(row))?;
            }
            seq.end()
        }

        struct SerializeWith<'a>(&'a [BigInt]);
        impl Serialize for SerializeWith<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                serialize_bigint_seq(self.0, s)
            }
        }

        fn serialize_bigint<S: Serializer>(
            v: &BigInt,
            s: S,
        ) -> std::result::Result<S::Ok, S::Error> {
            match v.to_i64() {
                Some(x) => s.serialize_i64(x),
                None => s.serialize_str(&v.to_string()),
            }
        }

        let covers = self.lower_covers();
        let records: Vec<FlatRecord> = self
            .flats
            .iter()
            .enumerate()
            .map(|(i, f)| FlatRecord {
                echelon: f.integer_rows(),
                codim: f.codim,
                mobius: self.mobius[i].clone(),
                parents: covers[i].clone(),
            })
            .collect();

        let mut s = serializer.serialize_struct("IntersectionLattice", 3)?;
        s.serialize_field("flats", &records)?;
        s.serialize_field("flats_by_codim", &self.flats_by_codim())?;
        s.serialize_field("k", &self.k)?;
        s.end()
    }
}

/// The characteristic polynomial: the Mobius-weighted sum of `q^(k - codim)`
/// over all flats. Monic of degree `k` for any arrangement in `k` coordinates.
pub fn char_poly(lattice: &IntersectionLattice) -> IntPolynomial {
    let k = lattice.k;
    let mut coeffs = vec![BigInt::zero(); k + 1];
    for (i, flat) in lattice.flats.iter().enumerate() {
        coeffs[k - flat.codim] += &lattice.mobius[i];
    }
    IntPolynomial::from_coefficients(coeffs)
}

/// The Poincare polynomial of the complex complement: the Mobius-weighted sum
/// of `(-q)^codim`. Its coefficients are the Betti numbers; in particular the
/// constant term is 1 and the linear coefficient is the hyperplane count.
pub fn poincare_poly(lattice: &IntersectionLattice) -> IntPolynomial {
    let k = lattice.k;
    let mut coeffs = vec![BigInt::zero(); k + 1];
    for (i, flat) in lattice.flats.iter().enumerate() {
        let signed = if flat.codim % 2 == 0 {
            lattice.mobius[i].clone()
        } else {
            -&lattice.mobius[i]
        };
        coeffs[flat.codim] += signed;
    }
    IntPolynomial::from_coefficients(coeffs)
}

/// Zaslavsky's counts for the real arrangement with the same defining forms:
/// `regions = (-1)^k chi(-1)` and `bounded = |chi(1)|`. All arrangements here
/// are central, so for a nonempty arrangement the bounded count is 0; the
/// empty arrangement has the single unbounded region.
pub fn region_count(lattice: &IntersectionLattice) -> (BigInt, BigInt) {
    let chi = char_poly(lattice);
    let at_minus_one = chi.evaluate(&BigInt::from(-1));
    let regions = if lattice.k.is_multiple_of(2) {
        at_minus_one
    } else {
        -at_minus_one
    };
    let bounded = if lattice.hyperplane_count == 0 {
        BigInt::zero()
    } else {
        chi.evaluate(&BigInt::one()).abs()
    };
    (regions, bounded)
}

/// Counts points of `F_q^k` avoiding every hyperplane, by exhaustive
/// enumeration over the first `k-1` coordinates. For each completed prefix,
/// every hyperplane involving the last coordinate forbids exactly one value
/// of it, so the prefix contributes `q` minus the number of distinct
/// forbidden values.
fn count_complement_points(normals: &[Vec<BigInt>], k: usize, q: u64) -> u64 {
    let reduce = |c: &BigInt| -> u64 {
        c.mod_floor(&BigInt::from(q))
            .to_u64()
            .expect("residue fits in u64")
    };
    let rows: Vec<Vec<u64>> = normals
        .iter()
        .map(|n| n.iter().map(reduce).collect())
        .collect();
    // a normal vanishing identically mod q kills every point
    if rows.iter().any(|r| r.iter().all(|&c| c == 0)) {
        return 0;
    }
    let max_idx: Vec<usize> = rows
        .iter()
        .map(|r| r.iter().rposition(|&c| c != 0).expect("nonzero row"))
        .collect();

    // hyperplanes grouped by the coordinate that completes them
    let mut touching: Vec<Vec<(usize, u64)>> = vec![Vec::new(); k];
    let mut check_at: Vec<Vec<usize>> = vec![Vec::new(); k];
    let mut last_group: Vec<(usize, u64)> = Vec::new();
    for (h, row) in rows.iter().enumerate() {
        for (j, &c) in row.iter().enumerate() {
            if c != 0 && j < k - 1 {
                touching[j].push((h, c));
            }
        }
        if max_idx[h] == k - 1 {
            last_group.push((h, mod_inverse(row[k - 1], q)));
        } else {
            check_at[max_idx[h]].push(h);
        }
    }

    struct Ctx<'a> {
        q: u64,
        touching: &'a [Vec<(usize, u64)>],
        check_at: &'a [Vec<usize>],
        last_group: &'a [(usize, u64)],
        partial: Vec<u64>,
        stamp: Vec<u64>,
        generation: u64,
        count: u64,
    }

    fn descend(ctx: &mut Ctx, j: usize, k: usize) {
        if j == k - 1 {
            ctx.generation += 1;
            let mut forbidden = 0u64;
            for &(h, inv) in ctx.last_group {
                let v = ((ctx.q - ctx.partial[h]) % ctx.q * inv) % ctx.q;
                let slot = &mut ctx.stamp[v as usize];
                if *slot != ctx.generation {
                    *slot = ctx.generation;
                    forbidden += 1;
                }
            }
            ctx.count += ctx.q - forbidden;
            return;
        }
        for _v in 0..ctx.q {
            if ctx.check_at[j]
                .iter()
                .all(|&h| ctx.partial[h] != 0)
            {
                descend(ctx, j + 1, k);
            }
            // shift the partial sums to the next value of coordinate j; after
            // q steps they return to their entry values
            for &(h, c) in &ctx.touching[j] {
                let p = &mut ctx.partial[h];
                *p += c;
                if *p >= ctx.q {
                    *p -= ctx.q;
                }
            }
        }
    }

    let mut ctx = Ctx {
        q,
        touching: &touching,
        check_at: &check_at,
        last_group: &last_group,
        partial: vec![0; rows.len()],
        stamp: vec![0; q as usize],
        generation: 0,
        count: 0,
    };
    if k == 1 {
        // no prefix to enumerate; any form in one variable forbids exactly 0
        return if last_group.is_empty() { q } else { q - 1 };
    }
    descend(&mut ctx, 0, k);
    ctx.count
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // p is prime and a is nonzero mod p
    mod_pow(a % p, p - 2, p)
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc: u64 = 1;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The prime selection used by default: the `k+1` smallest primes at least
/// `max(11, hyperplane count + 1)`.
pub fn default_oracle_primes(arrangement: &Arrangement) -> Vec<u64> {
    primes_from(
        (arrangement.len() as u64 + 1).max(11),
        arrangement.k + 1,
    )
}

fn primes_from(start: u64, count: usize) -> Vec<u64> {
    let mut primes = Vec::with_capacity(count);
    let mut candidate = start.max(2);
    while primes.len() < count {
        if is_prime(candidate) {
            primes.push(candidate);
        }
        candidate += 1;
    }
    primes
}

/// Computes the characteristic polynomial by counting complement points over
/// each of the given prime fields and interpolating. This path shares no code
/// with the lattice route; agreement between the two certifies both.
///
/// Counting is exhaustive, so primes must stay desk-scale feasible; a rough
/// work estimate guards against runaway requests. Interpolation producing a
/// non-integer polynomial signals bad primes; retry with larger ones.
pub fn finite_field_charpoly(arrangement: &Arrangement, primes: &[u64]) -> Result<IntPolynomial> {
    let k = arrangement.k;
    if primes.len() < k + 1 {
        return Err(Error::InvalidParameter(format!(
            "need at least k+1 = {} primes, got {}",
            k + 1,
            primes.len()
        )));
    }
    let mut sorted = primes.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidParameter(
            "oracle primes must be pairwise distinct".into(),
        ));
    }
    for &q in primes {
        if !is_prime(q) {
            return Err(Error::InvalidParameter(format!("{q} is not prime")));
        }
        let work = (q as f64).powi(k.saturating_sub(1) as i32)
            * (arrangement.len().max(1) as f64);
        if q > 1_000_000 || work > 2.0e10 {
            return Err(Error::InvalidParameter(format!(
                "counting over F_{q}^{k} is beyond the enumeration budget"
            )));
        }
    }
    let normals: Vec<Vec<BigInt>> = arrangement
        .hyperplanes()
        .iter()
        .map(|h| h.normal.coefficients().to_vec())
        .collect();

    let points: Vec<(BigInt, BigInt)> = primes
        .iter()
        .map(|&q| {
            (
                BigInt::from(q),
                BigInt::from(count_complement_points(&normals, k, q)),
            )
        })
        .collect();

    let interpolated = lagrange_interpolate(&points);
    let mut coeffs = Vec::with_capacity(interpolated.len());
    for c in interpolated {
        if !c.denom().is_one() {
            return Err(Error::BadPrimes(format!(
                "coefficient {c} is not an integer"
            )));
        }
        coeffs.push(c.numer().clone());
    }
    Ok(IntPolynomial::from_coefficients(coeffs))
}

/// Runs the finite-field oracle with the default prime window, sliding the
/// window upward on a bad-prime report.
pub fn finite_field_charpoly_auto(arrangement: &Arrangement) -> Result<IntPolynomial> {
    let mut start = (arrangement.len() as u64 + 1).max(11);
    let mut last_err = None;
    for _ in 0..3 {
        let primes = primes_from(start, arrangement.k + 1);
        match finite_field_charpoly(arrangement, &primes) {
            Ok(poly) => return Ok(poly),
            Err(err @ Error::BadPrimes(_)) => {
                start = primes.last().copied().unwrap_or(start) + 1;
                last_err = Some(err);
            }
            Err(other) => return Err(other),
        }
    }
    Err(last_err.unwrap_or_else(|| Error::BadPrimes("no prime window succeeded".into())))
}

/// Exact Lagrange interpolation through the given points.
fn lagrange_interpolate(points: &[(BigInt, BigInt)]) -> Vec<BigRational> {
    let n = points.len();
    let mut total = vec![BigRational::zero(); n];
    for (i, (xi, yi)) in points.iter().enumerate() {
        // term = yi * prod_{j != i} (x - xj) / (xi - xj)
        let mut term = vec![BigRational::zero(); n];
        term[0] = BigRational::from_integer(yi.clone());
        let mut deg = 0;
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let inv_gap = BigRational::new(BigInt::one(), xi - xj);
            let shift = BigRational::from_integer(-xj.clone()) * &inv_gap;
            // multiply term by (x * inv_gap + shift)
            let mut next = vec![BigRational::zero(); n];
            for d in 0..=deg {
                let lifted = &term[d] * &inv_gap;
                next[d + 1] += lifted;
                let scaled = &term[d] * &shift;
                next[d] += scaled;
            }
            term = next;
            deg += 1;
        }
        for d in 0..n {
            total[d] += &term[d];
        }
    }
    total
}
