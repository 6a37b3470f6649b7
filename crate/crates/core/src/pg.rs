//! Finite projective spaces PG(k-1, q) and weighted point multisets on them.
//!
//! Points and hyperplanes are both stored as canonical vectors of length `k`
//! (first nonzero coordinate equal to 1). A point `P` lies on a hyperplane
//! `H` iff the inner product of their vectors is zero. Enumeration order is
//! lexicographic on the encoded coordinates, which is also the `Ord` order of
//! [`ProjectivePoint`].

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::gf::FieldSpec;
use crate::linalg;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PgError {
    #[error("the zero vector is not a projective point")]
    ZeroVector,
    #[error("vector {0:?} is not canonical (first nonzero coordinate must be 1)")]
    NonCanonical(Vec<u32>),
    #[error("coordinate {value} is out of range for GF({q})")]
    OutOfRange { value: u32, q: u32 },
    #[error("dimension mismatch: expected vectors of length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("projective system has no point of positive multiplicity")]
    EmptySystem,
}

/// Number of points of PG(k, q), i.e. `(q^{k+1} - 1) / (q - 1)`.
///
/// `theta(q, -1) = 0` and `theta(q, 0) = 1`.
pub fn theta(q: u32, k: i64) -> BigUint {
    if k < 0 {
        return BigUint::zero();
    }
    let q = BigUint::from(q);
    let top = q.pow(k as u32 + 1) - 1u32;
    top / (q - 1u32)
}

/// `theta` as a machine integer, when it fits.
pub fn theta_u64(q: u32, k: i64) -> Option<u64> {
    u64::try_from(theta(q, k)).ok()
}

/// A point of PG(k-1, q), stored as its canonical coordinate vector.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjectivePoint(Vec<u32>);

impl ProjectivePoint {
    /// Normalizes an arbitrary nonzero vector.
    pub fn from_vector(field: &FieldSpec, v: &[u32]) -> Result<Self, PgError> {
        for &x in v {
            if !field.contains(x) {
                return Err(PgError::OutOfRange { value: x, q: field.q() });
            }
        }
        let lead = *v.iter().find(|&&x| x != 0).ok_or(PgError::ZeroVector)?;
        let inv = field.inv(lead).expect("lead is nonzero");
        Ok(Self(v.iter().map(|&x| field.mul(x, inv)).collect()))
    }

    /// Accepts a vector only if it is already canonical.
    pub fn canonical(field: &FieldSpec, v: Vec<u32>) -> Result<Self, PgError> {
        if let Some(&x) = v.iter().find(|&&x| !field.contains(x)) {
            return Err(PgError::OutOfRange { value: x, q: field.q() });
        }
        match v.iter().find(|&&x| x != 0) {
            None => Err(PgError::ZeroVector),
            Some(&1) => Ok(Self(v)),
            Some(_) => Err(PgError::NonCanonical(v)),
        }
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn into_coords(self) -> Vec<u32> {
        self.0
    }
}

/// A hyperplane of PG(k-1, q), given by its canonical normal vector.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Hyperplane(ProjectivePoint);

impl Hyperplane {
    pub fn from_normal(field: &FieldSpec, normal: &[u32]) -> Result<Self, PgError> {
        ProjectivePoint::from_vector(field, normal).map(Self)
    }

    pub fn normal(&self) -> &[u32] {
        self.0.coords()
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn contains(&self, field: &FieldSpec, point: &ProjectivePoint) -> bool {
        field.dot(self.normal(), point.coords()) == 0
    }
}

/// Lazily enumerates the canonical vectors of length `k` over `q` symbols in
/// lexicographic order.
#[derive(Debug, Clone)]
pub struct CanonicalVectors {
    q: u32,
    current: Option<Vec<u32>>,
}

impl CanonicalVectors {
    pub fn new(q: u32, k: usize) -> Self {
        let current = (k > 0).then(|| {
            let mut v = vec![0; k];
            v[k - 1] = 1;
            v
        });
        Self { q, current }
    }
}

impl Iterator for CanonicalVectors {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let out = self.current.take()?;
        let mut v = out.clone();
        let lead = v.iter().position(|&x| x != 0).expect("canonical vectors are nonzero");
        // Advance the free tail as a base-q counter.
        let mut i = v.len();
        let advanced = loop {
            if i == lead + 1 {
                break false;
            }
            i -= 1;
            if v[i] + 1 < self.q {
                v[i] += 1;
                break true;
            }
            v[i] = 0;
        };
        if advanced {
            self.current = Some(v);
        } else if lead > 0 {
            v[lead] = 0;
            v[lead - 1] = 1;
            self.current = Some(v);
        }
        Some(out)
    }
}

/// All points of PG(k-1, q) in canonical order.
pub fn points(q: u32, k: usize) -> impl Iterator<Item = ProjectivePoint> {
    CanonicalVectors::new(q, k).map(ProjectivePoint)
}

/// All hyperplanes of PG(k-1, q) in canonical order.
pub fn hyperplanes(q: u32, k: usize) -> impl Iterator<Item = Hyperplane> {
    points(q, k).map(Hyperplane)
}

pub fn enumerate_points(q: u32, k: usize) -> Vec<ProjectivePoint> {
    points(q, k).collect()
}

pub fn enumerate_hyperplanes(q: u32, k: usize) -> Vec<Hyperplane> {
    hyperplanes(q, k).collect()
}

/// A multiset of points of PG(k-1, q) with arbitrary-precision multiplicities.
///
/// Only points of positive multiplicity are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectiveSystem {
    field: FieldSpec,
    k: usize,
    mults: BTreeMap<ProjectivePoint, BigUint>,
    n: BigUint,
}

impl ProjectiveSystem {
    /// Builds a system from `(vector, multiplicity)` pairs. Vectors are
    /// canonicalized and repeated points accumulate.
    pub fn new<I, V>(field: &FieldSpec, k: usize, entries: I) -> Result<Self, PgError>
    where
        I: IntoIterator<Item = (V, BigUint)>,
        V: AsRef<[u32]>,
    {
        let mut mults: BTreeMap<ProjectivePoint, BigUint> = BTreeMap::new();
        for (v, m) in entries {
            let v = v.as_ref();
            if v.len() != k {
                return Err(PgError::DimensionMismatch {
                    expected: k,
                    got: v.len(),
                });
            }
            let p = ProjectivePoint::from_vector(field, v)?;
            if !m.is_zero() {
                *mults.entry(p).or_default() += m;
            }
        }
        let n: BigUint = mults.values().sum();
        if n.is_zero() {
            return Err(PgError::EmptySystem);
        }
        Ok(Self {
            field: field.clone(),
            k,
            mults,
            n,
        })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Total multiplicity, i.e. the length of the associated code.
    pub fn n(&self) -> &BigUint {
        &self.n
    }

    pub fn multiplicity(&self, p: &ProjectivePoint) -> BigUint {
        self.mults.get(p).cloned().unwrap_or_default()
    }

    /// Support points with their multiplicities, in canonical order.
    pub fn support(&self) -> impl Iterator<Item = (&ProjectivePoint, &BigUint)> {
        self.mults.iter()
    }

    pub fn support_len(&self) -> usize {
        self.mults.len()
    }

    /// Total multiplicity of the points on `h`.
    pub fn character(&self, h: &Hyperplane) -> Result<BigUint, PgError> {
        if h.dim() != self.k {
            return Err(PgError::DimensionMismatch {
                expected: self.k,
                got: h.dim(),
            });
        }
        Ok(self
            .mults
            .iter()
            .filter(|(p, _)| h.contains(&self.field, p))
            .map(|(_, m)| m)
            .sum())
    }

    /// Characters of every hyperplane, in canonical hyperplane order.
    pub fn characters(&self) -> Vec<BigUint> {
        let support: Vec<(&[u32], &BigUint)> = self.mults.iter().map(|(p, m)| (p.coords(), m)).collect();
        hyperplanes(self.q(), self.k)
            .map(|h| {
                let mut ch = BigUint::zero();
                for (p, m) in &support {
                    if self.field.dot(h.normal(), p) == 0 {
                        ch += *m;
                    }
                }
                ch
            })
            .collect()
    }

    /// Whether the support spans the whole space.
    pub fn spans(&self) -> bool {
        let rows: Vec<Vec<u32>> = self.mults.keys().map(|p| p.coords().to_vec()).collect();
        linalg::rank(&self.field, &rows) == self.k
    }
}

/// `2^i` as a big integer.
pub(crate) fn pow2(i: usize) -> BigUint {
    BigUint::one() << i
}
