//! Linear codes over GF(q) and the codeword statistics the constructions
//! depend on: weights, entries-distribution vectors, generalized repetition,
//! and the two conversions between codes and projective systems.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::gf::FieldSpec;
use crate::linalg;
use crate::pg::{self, PgError, ProjectivePoint, ProjectiveSystem};

/// Maximum number of codewords (or scalar-class representatives) any
/// enumeration will visit.
pub const ENUMERATION_LIMIT: u64 = 10_000_000;

/// Maximum code length [`code_from_system`] will materialize.
pub const MATERIALIZE_LIMIT: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("generator rows have different lengths")]
    RaggedRows,
    #[error("entry {value} at ({row}, {col}) is out of range for GF({q})")]
    EntryOutOfRange { row: usize, col: usize, value: u32, q: u32 },
    #[error("generator matrix has rank {rank} but {k} rows")]
    RankDeficient { rank: usize, k: usize },
    #[error("column {0} of the generator matrix is identically zero")]
    DegenerateCode(usize),
    #[error("a code needs at least one generator row")]
    NoRows,
    #[error("enumerating {count} codewords exceeds the limit of {limit}")]
    TooLargeToEnumerate { count: BigUint, limit: u64 },
    #[error("length {0} exceeds the materialization limit; use character verification")]
    TooLongToMaterialize(BigUint),
    #[error("repetition vector is identically zero")]
    ZeroRepetition,
    #[error("repetition vector must have {expected} entries, got {got}")]
    RepetitionLength { expected: usize, got: usize },
    #[error("message length {got} does not match dimension {k}")]
    MessageLength { k: usize, got: usize },
    #[error(transparent)]
    Pg(#[from] PgError),
}

/// A codeword is a plain vector of element encodings.
pub type Codeword = Vec<u32>;

/// Distinct nonzero codeword weights, sorted.
pub type WeightSet = BTreeSet<usize>;

/// Number of nonzero entries.
pub fn weight(c: &[u32]) -> usize {
    c.iter().filter(|&&x| x != 0).count()
}

/// Counts of each field value in a word, ordered
/// `(c[alpha], c[alpha^2], ..., c[alpha^{q-1}], c[0])`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DistributionVector(Vec<usize>);

impl DistributionVector {
    pub fn from_counts(counts: Vec<usize>) -> Self {
        Self(counts)
    }

    pub fn counts(&self) -> &[usize] {
        &self.0
    }

    /// Count of `alpha^i` for `i` taken mod `q - 1` (so `alpha^0` is the
    /// `alpha^{q-1}` slot).
    pub fn at_power(&self, i: i64) -> usize {
        let order = (self.0.len() - 1) as i64;
        let e = i.rem_euclid(order);
        let e = if e == 0 { order } else { e };
        self.0[(e - 1) as usize]
    }

    pub fn zeros(&self) -> usize {
        *self.0.last().expect("distribution vectors have q >= 2 entries")
    }

    /// The first `q - 1` entries.
    pub fn nonzero_part(&self) -> &[usize] {
        &self.0[..self.0.len() - 1]
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn has_distinct_entries(&self) -> bool {
        let set: BTreeSet<usize> = self.0.iter().copied().collect();
        set.len() == self.0.len()
    }
}

pub fn distribution(field: &FieldSpec, c: &[u32]) -> DistributionVector {
    let mut counts = vec![0usize; field.q() as usize];
    for &x in c {
        counts[field.slot(x)] += 1;
    }
    DistributionVector(counts)
}

/// The vector `r` of a generalized repetition code: `r[i-1]` copies of the
/// `alpha^i`-scaled generator for `i = 1..q-1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RepetitionVector(Vec<u64>);

impl RepetitionVector {
    pub fn new(r: Vec<u64>) -> Result<Self, CodeError> {
        if r.iter().all(|&x| x == 0) {
            return Err(CodeError::ZeroRepetition);
        }
        Ok(Self(r))
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    /// `R`, the sum of the entries.
    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCode {
    field: FieldSpec,
    n: usize,
    rows: Vec<Codeword>,
}

impl LinearCode {
    /// A non-degenerate code with the given generator rows.
    pub fn new(field: &FieldSpec, rows: Vec<Codeword>) -> Result<Self, CodeError> {
        let n = rows.first().ok_or(CodeError::NoRows)?.len();
        let code = Self::new_degenerate(field, n, rows)?;
        if let Some(col) = (0..n).find(|&j| code.rows.iter().all(|r| r[j] == 0)) {
            return Err(CodeError::DegenerateCode(col));
        }
        Ok(code)
    }

    /// Like [`LinearCode::new`] but accepts zero columns and `k = 0`.
    pub fn new_degenerate(field: &FieldSpec, n: usize, rows: Vec<Codeword>) -> Result<Self, CodeError> {
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(CodeError::RaggedRows);
            }
            if let Some((j, &x)) = row.iter().enumerate().find(|(_, &x)| !field.contains(x)) {
                return Err(CodeError::EntryOutOfRange {
                    row: i,
                    col: j,
                    value: x,
                    q: field.q(),
                });
            }
        }
        let rank = linalg::rank(field, &rows);
        if rank != rows.len() {
            return Err(CodeError::RankDeficient { rank, k: rows.len() });
        }
        Ok(Self {
            field: field.clone(),
            n,
            rows,
        })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    pub fn k(&self) -> usize {
        self.rows.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generator(&self) -> &[Codeword] {
        &self.rows
    }

    /// `msg * G`.
    pub fn encode(&self, msg: &[u32]) -> Result<Codeword, CodeError> {
        if msg.len() != self.k() {
            return Err(CodeError::MessageLength {
                k: self.k(),
                got: msg.len(),
            });
        }
        Ok(self.encode_unchecked(msg))
    }

    fn encode_unchecked(&self, msg: &[u32]) -> Codeword {
        let f = &self.field;
        let mut out = vec![0u32; self.n];
        for (&m, row) in msg.iter().zip(&self.rows) {
            match m {
                0 => {}
                1 => out.iter_mut().zip(row).for_each(|(o, &g)| *o = f.add(*o, g)),
                _ => out.iter_mut().zip(row).for_each(|(o, &g)| *o = f.add(*o, f.mul(m, g))),
            }
        }
        out
    }

    /// Number of scalar-class representatives, `theta_q(k-1)`.
    pub fn representative_count(&self) -> BigUint {
        pg::theta(self.q(), self.k() as i64 - 1)
    }

    fn guard(count: BigUint) -> Result<(), CodeError> {
        if count > BigUint::from(ENUMERATION_LIMIT) {
            Err(CodeError::TooLargeToEnumerate {
                count,
                limit: ENUMERATION_LIMIT,
            })
        } else {
            Ok(())
        }
    }

    /// One nonzero codeword per projective class of messages: `vG` for every
    /// canonical `v`, in canonical order.
    pub fn representatives(&self) -> impl Iterator<Item = Codeword> + '_ {
        pg::CanonicalVectors::new(self.q(), self.k()).map(move |v| self.encode_unchecked(&v))
    }

    /// Every codeword, the zero word first, messages in base-q counting order.
    pub fn codewords(&self) -> Result<impl Iterator<Item = Codeword> + '_, CodeError> {
        Self::guard(BigUint::from(self.q()).pow(self.k() as u32))?;
        let q = self.q();
        let k = self.k();
        let mut msg = Some(vec![0u32; k]);
        Ok(std::iter::from_fn(move || {
            let current = msg.take()?;
            let mut next = current.clone();
            if let Some(i) = (0..k).rev().find(|&i| next[i] + 1 < q) {
                next[i] += 1;
                next[i + 1..].iter_mut().for_each(|x| *x = 0);
                msg = Some(next);
            }
            Some(self.encode_unchecked(&current))
        }))
    }

    /// Weights of the scalar-class representatives, in canonical order.
    pub fn representative_weights(&self) -> Result<Vec<usize>, CodeError> {
        Self::guard(self.representative_count())?;
        Ok(self.representatives().map(|c| weight(&c)).collect())
    }

    /// The weight set. Scalar multiples share a weight, so one representative
    /// per class suffices.
    pub fn weight_set(&self) -> Result<WeightSet, CodeError> {
        Ok(self.representative_weights()?.into_iter().collect())
    }

    /// Whether the weight set has the maximum size `theta_q(k-1)`.
    pub fn is_mws(&self) -> Result<bool, CodeError> {
        let weights = self.representative_weights()?;
        let count = weights.len();
        Ok(weights.into_iter().collect::<WeightSet>().len() == count)
    }

    /// Whether `c -> c[alpha]` is injective on the whole code. Any other
    /// nonzero field value gives the same answer.
    pub fn property_a(&self) -> Result<bool, CodeError> {
        let alpha = self.field.alpha();
        let mut seen = vec![false; self.n + 1];
        for c in self.codewords()? {
            let count = c.iter().filter(|&&x| x == alpha).count();
            if std::mem::replace(&mut seen[count], true) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether every nonzero codeword has pairwise distinct entry counts.
    pub fn property_b(&self) -> Result<bool, CodeError> {
        for c in self.codewords()?.skip(1) {
            if !distribution(&self.field, &c).has_distinct_entries() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Largest count of a single nonzero value in a nonzero codeword. The
    /// maximum over nonzero values is scalar invariant, so representatives
    /// suffice.
    pub fn max_entry_count(&self) -> Result<usize, CodeError> {
        Self::guard(self.representative_count())?;
        Ok(self
            .representatives()
            .map(|c| *distribution(&self.field, &c).nonzero_part().iter().max().unwrap_or(&0))
            .max()
            .unwrap_or(0))
    }

    /// Entries-distribution vectors of every nonzero codeword.
    pub fn distributions(&self) -> Result<Vec<DistributionVector>, CodeError> {
        Ok(self
            .codewords()?
            .skip(1)
            .map(|c| distribution(&self.field, &c))
            .collect())
    }

    /// `A_w` for `w = 0..=n` over all codewords.
    pub fn weight_spectrum(&self) -> Result<Vec<u64>, CodeError> {
        let mut a = vec![0u64; self.n + 1];
        for c in self.codewords()? {
            a[weight(&c)] += 1;
        }
        Ok(a)
    }

    /// The generalized `r`-repetition code: `r_i` copies of `alpha^i G` for
    /// `i = 1..q-1`, concatenated in that order.
    pub fn repetition(&self, r: &RepetitionVector) -> Result<LinearCode, CodeError> {
        let expected = self.q() as usize - 1;
        if r.entries().len() != expected {
            return Err(CodeError::RepetitionLength {
                expected,
                got: r.entries().len(),
            });
        }
        let f = &self.field;
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut out = Vec::with_capacity(row.len() * r.total() as usize);
                for (i, &times) in r.entries().iter().enumerate() {
                    let scale = f.alpha_pow(i as i64 + 1);
                    let block: Vec<u32> = row.iter().map(|&g| f.mul(scale, g)).collect();
                    for _ in 0..times {
                        out.extend_from_slice(&block);
                    }
                }
                out
            })
            .collect();
        Ok(LinearCode {
            field: self.field.clone(),
            n: self.n * r.total() as usize,
            rows,
        })
    }
}

/// A generator matrix with `m(P)` copies of each support point as columns,
/// in canonical point order.
pub fn code_from_system(sys: &ProjectiveSystem) -> Result<LinearCode, CodeError> {
    let n = sys
        .n()
        .to_u64()
        .filter(|&n| n <= MATERIALIZE_LIMIT)
        .ok_or_else(|| CodeError::TooLongToMaterialize(sys.n().clone()))?;
    let mut rows = vec![Vec::with_capacity(n as usize); sys.k()];
    for (p, m) in sys.support() {
        let m = m.to_usize().expect("bounded by n");
        for (row, &x) in rows.iter_mut().zip(p.coords()) {
            row.extend(std::iter::repeat_n(x, m));
        }
    }
    LinearCode::new(sys.field(), rows)
}

/// The multiset of projective points spanned by the generator columns.
pub fn system_from_code(code: &LinearCode) -> Result<ProjectiveSystem, CodeError> {
    let mut counts: BTreeMap<ProjectivePoint, u64> = BTreeMap::new();
    for j in 0..code.n() {
        let col: Vec<u32> = code.rows.iter().map(|r| r[j]).collect();
        let p = ProjectivePoint::from_vector(code.field(), &col).map_err(|e| match e {
            PgError::ZeroVector => CodeError::DegenerateCode(j),
            e => CodeError::Pg(e),
        })?;
        *counts.entry(p).or_default() += 1;
    }
    Ok(ProjectiveSystem::new(
        code.field(),
        code.k(),
        counts.into_iter().map(|(p, m)| (p.into_coords(), BigUint::from(m))),
    )?)
}

/// Outcome of verifying a projective system through its hyperplane characters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterReport {
    /// All hyperplane characters are pairwise distinct.
    pub mws: bool,
    /// Characters, sorted ascending.
    pub characters: Vec<BigUint>,
    /// `n - ch(H)` for every hyperplane, sorted ascending.
    pub weights: Vec<BigUint>,
}

impl CharacterReport {
    pub fn distinct_weights(&self) -> usize {
        self.weights.iter().collect::<BTreeSet<_>>().len()
    }
}

/// Checks the MWS property of the code associated to `sys` without
/// materializing it: the code is MWS iff the character function is
/// injective on hyperplanes.
pub fn mws_via_characters(sys: &ProjectiveSystem) -> CharacterReport {
    let mut characters = sys.characters();
    characters.sort();
    let mws = characters.windows(2).all(|w| w[0] != w[1]);
    let mut weights: Vec<BigUint> = characters.iter().map(|c| sys.n() - c).collect();
    weights.sort();
    CharacterReport {
        mws,
        characters,
        weights,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    fn g2() -> LinearCode {
        let f = make_field(3).unwrap();
        LinearCode::new(&f, vec![vec![1, 2, 2, 0, 0, 0, 0], vec![1, 1, 1, 2, 2, 2, 2]]).unwrap()
    }

    #[test]
    fn weights_of_words() {
        assert_eq!(weight(&[0, 0, 0]), 0);
        assert_eq!(weight(&[1, 2, 2]), 3);
        assert_eq!(weight(&[1; 9]), 9);
    }

    #[test]
    fn representative_counts() {
        for (q, k, expected) in [(2u64, 2usize, 3usize), (3, 2, 4), (3, 3, 13)] {
            let f = make_field(q).unwrap();
            let rows: Vec<Vec<u32>> = (0..k).map(|i| (0..k).map(|j| u32::from(i == j)).collect()).collect();
            let code = LinearCode::new(&f, rows).unwrap();
            assert_eq!(code.representatives().count(), expected);
        }
    }

    #[test]
    fn identity_code_is_not_mws() {
        let f = make_field(2).unwrap();
        let code = LinearCode::new(&f, vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(code.weight_set().unwrap(), WeightSet::from([1, 2]));
        assert!(!code.is_mws().unwrap());
    }

    #[test]
    fn one_dimensional_codes_are_mws() {
        for q in [2u64, 3, 4, 5] {
            let f = make_field(q).unwrap();
            let code = LinearCode::new(&f, vec![vec![1; 6]]).unwrap();
            assert_eq!(code.weight_set().unwrap(), WeightSet::from([6]));
            assert!(code.is_mws().unwrap());
        }
    }

    #[test]
    fn distribution_vectors() {
        let f = make_field(3).unwrap();
        // alpha = 2: V = (c[2], c[1], c[0])
        assert_eq!(distribution(&f, &[1, 2, 2, 0, 0, 0, 0]).counts(), &[2, 1, 4]);
        assert_eq!(distribution(&f, &[0; 5]).counts(), &[0, 0, 5]);
        assert_eq!(distribution(&f, &[1; 5]).counts(), &[0, 5, 0]);
        let f5 = make_field(5).unwrap();
        let v = distribution(&f5, &[1, 1, 1, 0]);
        assert_eq!(v.at_power(0), 3);
        assert_eq!(v.at_power(4), 3);
        assert_eq!(v.zeros(), 1);
    }

    #[test]
    fn constructor_errors() {
        let f = make_field(3).unwrap();
        assert_eq!(LinearCode::new(&f, vec![]).unwrap_err(), CodeError::NoRows);
        assert_eq!(
            LinearCode::new(&f, vec![vec![1, 0], vec![1]]).unwrap_err(),
            CodeError::RaggedRows
        );
        assert!(matches!(
            LinearCode::new(&f, vec![vec![1, 3]]),
            Err(CodeError::EntryOutOfRange { .. })
        ));
        assert_eq!(
            LinearCode::new(&f, vec![vec![1, 0, 2], vec![0, 0, 1]]).unwrap_err(),
            CodeError::DegenerateCode(1)
        );
        assert_eq!(
            LinearCode::new(&f, vec![vec![1, 2], vec![2, 1]]).unwrap_err(),
            CodeError::RankDeficient { rank: 1, k: 2 }
        );
        assert!(LinearCode::new_degenerate(&f, 3, vec![vec![1, 0, 0]]).is_ok());
    }

    #[test]
    fn zero_dimensional_code_properties() {
        let f = make_field(3).unwrap();
        let code = LinearCode::new_degenerate(&f, 4, vec![]).unwrap();
        assert!(code.property_a().unwrap());
        assert!(code.property_b().unwrap());
        assert_eq!(code.codewords().unwrap().count(), 1);
    }

    #[test]
    fn property_a_needs_repetition() {
        // G2 itself: 9 codewords but c[alpha] collides
        assert!(!g2().property_a().unwrap());
        let r = RepetitionVector::new(vec![1, 6]).unwrap();
        let rep = g2().repetition(&r).unwrap();
        assert_eq!((rep.n(), rep.k()), (49, 2));
        assert!(rep.property_a().unwrap());
        assert!(rep.property_b().unwrap());
    }

    #[test]
    fn property_b_cases() {
        let f = make_field(3).unwrap();
        let c1 = LinearCode::new(&f, vec![vec![1, 2, 2]]).unwrap();
        assert!(c1.property_b().unwrap());
        let tie = LinearCode::new(&f, vec![vec![1, 2]]).unwrap();
        assert!(!tie.property_b().unwrap());
    }

    #[test]
    fn repetition_block_layout() {
        let code = g2();
        let rep = code.repetition(&RepetitionVector::new(vec![1, 6]).unwrap()).unwrap();
        let f = code.field();
        for (rrow, grow) in rep.generator().iter().zip(code.generator()) {
            let scaled: Vec<u32> = grow.iter().map(|&x| f.mul(2, x)).collect();
            assert_eq!(&rrow[..7], &scaled[..]);
            for b in 1..7 {
                assert_eq!(&rrow[7 * b..7 * b + 7], &grow[..]);
            }
        }
        assert_eq!(
            RepetitionVector::new(vec![0, 0]).unwrap_err(),
            CodeError::ZeroRepetition
        );
        assert!(matches!(
            code.repetition(&RepetitionVector::new(vec![1]).unwrap()),
            Err(CodeError::RepetitionLength { .. })
        ));
    }

    #[test]
    fn system_round_trip() {
        let f = make_field(2).unwrap();
        let code = LinearCode::new(&f, vec![vec![1, 0, 1], vec![0, 1, 1]]).unwrap();
        let sys = system_from_code(&code).unwrap();
        assert_eq!(sys.support_len(), 3);
        assert!(sys.support().all(|(_, m)| m == &BigUint::from(1u32)));
        let back = code_from_system(&sys).unwrap();
        assert_eq!(back.weight_set().unwrap(), code.weight_set().unwrap());

        let sys2 = system_from_code(&g2()).unwrap();
        assert_eq!(sys2.n(), &BigUint::from(7u32));
        assert!(sys2.support_len() <= 4);
        assert_eq!(
            code_from_system(&sys2).unwrap().weight_set().unwrap(),
            g2().weight_set().unwrap()
        );

        let degenerate = LinearCode::new_degenerate(&f, 2, vec![vec![1, 0]]).unwrap();
        assert_eq!(system_from_code(&degenerate).unwrap_err(), CodeError::DegenerateCode(1));
    }

    #[test]
    fn repetition_code_from_single_point() {
        let f = make_field(5).unwrap();
        let sys = ProjectiveSystem::new(&f, 1, [(vec![3], BigUint::from(5u32))]).unwrap();
        let code = code_from_system(&sys).unwrap();
        assert_eq!((code.n(), code.k()), (5, 1));
        assert_eq!(code.generator()[0], vec![1; 5]);
    }

    #[test]
    fn characters_detect_ties() {
        let f = make_field(3).unwrap();
        let sys = ProjectiveSystem::new(
            &f,
            2,
            [(vec![1, 0], BigUint::from(2u32)), (vec![0, 1], BigUint::from(2u32))],
        )
        .unwrap();
        assert!(!mws_via_characters(&sys).mws);
    }

    #[test]
    fn materialization_guard() {
        let f = make_field(2).unwrap();
        let sys = ProjectiveSystem::new(&f, 1, [(vec![1], BigUint::from(MATERIALIZE_LIMIT + 1))]).unwrap();
        assert!(matches!(
            code_from_system(&sys),
            Err(CodeError::TooLongToMaterialize(_))
        ));
    }

    #[test]
    fn enumeration_guard() {
        let f = make_field(16).unwrap();
        let rows: Vec<Vec<u32>> = (0..6).map(|i| (0..6).map(|j| u32::from(i == j)).collect()).collect();
        let code = LinearCode::new(&f, rows).unwrap();
        assert!(matches!(code.property_a(), Err(CodeError::TooLargeToEnumerate { .. })));
        assert!(code.is_mws().is_ok());
    }

    #[test]
    fn spectrum_sums() {
        let code = g2();
        let a = code.weight_spectrum().unwrap();
        assert_eq!(a.iter().sum::<u64>(), 9);
        assert_eq!(a[0], 1);
        assert!(a[1..].iter().all(|&x| x % 2 == 0));
    }
}
