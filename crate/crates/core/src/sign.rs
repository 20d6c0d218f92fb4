//! Ground sets, sign vectors, and sign-vector systems.
//!
//! A sign vector is a map from the ground set to `{+1, 0, -1}`, stored as a
//! pair of disjoint bitsets (positive support, negative support). The sign
//! ordering puts `0` below both `+1` and `-1` coordinatewise; composition,
//! separators and conformal composition are the primitive algebra every
//! other module is built from.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::guard::Guard;

/// One coordinate of a sign vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Minus,
    Zero,
    Plus,
}

impl Sign {
    pub fn opposite(self) -> Sign {
        match self {
            Sign::Minus => Sign::Plus,
            Sign::Zero => Sign::Zero,
            Sign::Plus => Sign::Minus,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Minus => -1,
            Sign::Zero => 0,
            Sign::Plus => 1,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Sign::Minus => '-',
            Sign::Zero => '0',
            Sign::Plus => '+',
        }
    }

    pub fn from_char(c: char) -> Option<Sign> {
        match c {
            '-' => Some(Sign::Minus),
            '0' => Some(Sign::Zero),
            '+' => Some(Sign::Plus),
            _ => None,
        }
    }

    /// Order index used by the canonical ordering: `0 < + < -`.
    fn canonical_rank(self) -> u8 {
        match self {
            Sign::Zero => 0,
            Sign::Plus => 1,
            Sign::Minus => 2,
        }
    }
}

/// A non-empty finite ground set with stable declared order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundSet {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

impl GroundSet {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<GroundSet> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptyGroundSet);
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (i, label) in labels.iter().enumerate() {
            if index.insert(label.clone(), i).is_some() {
                return Err(Error::Parse(format!("duplicate element label `{label}`")));
            }
        }
        Ok(GroundSet { labels, index })
    }

    /// Ground set with auto-generated labels `e1..en`.
    pub fn auto(n: usize) -> Result<GroundSet> {
        GroundSet::new((1..=n).map(|i| format!("e{i}")))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, position: usize) -> &str {
        &self.labels[position]
    }

    pub fn position(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownElement(label.to_string()))
    }

    pub fn contains(&self, label: &str) -> bool {
        self.index.contains_key(label)
    }

    /// Positions of the given labels, rejecting unknown ones.
    pub fn positions<'a>(&self, labels: impl IntoIterator<Item = &'a str>) -> Result<Vec<usize>> {
        labels.into_iter().map(|l| self.position(l)).collect()
    }

    /// New ground set keeping only the positions for which `keep` is true.
    pub fn restrict(&self, keep: &[bool]) -> Result<GroundSet> {
        debug_assert_eq!(keep.len(), self.len());
        GroundSet::new(
            self.labels
                .iter()
                .zip(keep)
                .filter(|(_, k)| **k)
                .map(|(l, _)| l.clone()),
        )
    }
}

type Words = SmallVec<[u64; 2]>;

const WORD_BITS: usize = 64;

fn word_count(len: usize) -> usize {
    len.div_ceil(WORD_BITS).max(1)
}

/// A map from the ground set to `{+1, 0, -1}`.
///
/// Positive and negative supports are disjoint bitsets of equal length.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SignVector {
    len: usize,
    pos: Words,
    neg: Words,
}

impl SignVector {
    /// The all-zero vector of the given length.
    pub fn zero(len: usize) -> SignVector {
        let words = word_count(len);
        SignVector {
            len,
            pos: SmallVec::from_elem(0, words),
            neg: SmallVec::from_elem(0, words),
        }
    }

    pub fn from_signs(signs: &[Sign]) -> SignVector {
        let mut v = SignVector::zero(signs.len());
        for (i, s) in signs.iter().enumerate() {
            v.set(i, *s);
        }
        v
    }

    /// Parse a string of `+`, `-`, `0` characters.
    pub fn parse(text: &str) -> Result<SignVector> {
        let signs: Result<Vec<Sign>> = text
            .chars()
            .map(|c| Sign::from_char(c).ok_or_else(|| Error::Parse(format!("bad sign character `{c}`"))))
            .collect();
        Ok(SignVector::from_signs(&signs?))
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> Sign {
        debug_assert!(i < self.len);
        let (w, b) = (i / WORD_BITS, i % WORD_BITS);
        if self.pos[w] >> b & 1 == 1 {
            Sign::Plus
        } else if self.neg[w] >> b & 1 == 1 {
            Sign::Minus
        } else {
            Sign::Zero
        }
    }

    pub fn set(&mut self, i: usize, sign: Sign) {
        debug_assert!(i < self.len);
        let (w, b) = (i / WORD_BITS, i % WORD_BITS);
        self.pos[w] &= !(1 << b);
        self.neg[w] &= !(1 << b);
        match sign {
            Sign::Plus => self.pos[w] |= 1 << b,
            Sign::Minus => self.neg[w] |= 1 << b,
            Sign::Zero => {}
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = Sign> + '_ {
        (0..self.len).map(|i| self.get(i))
    }

    fn check_len(&self, other: &SignVector) -> Result<()> {
        if self.len != other.len {
            return Err(Error::DimensionMismatch {
                left: self.len,
                right: other.len,
            });
        }
        Ok(())
    }

    /// Composition: `(X∘Y)_e = X_e` when `X_e ≠ 0`, else `Y_e`.
    pub fn compose(&self, other: &SignVector) -> Result<SignVector> {
        self.check_len(other)?;
        let mut out = self.clone();
        for w in 0..self.pos.len() {
            let zero = !(self.pos[w] | self.neg[w]);
            out.pos[w] |= other.pos[w] & zero;
            out.neg[w] |= other.neg[w] & zero;
        }
        Ok(out)
    }

    /// Coordinatewise negation.
    pub fn negate(&self) -> SignVector {
        SignVector {
            len: self.len,
            pos: self.neg.clone(),
            neg: self.pos.clone(),
        }
    }

    /// Positions where the two vectors carry opposite non-zero signs.
    pub fn separator(&self, other: &SignVector) -> Result<Vec<usize>> {
        self.check_len(other)?;
        let mut out = Vec::new();
        for w in 0..self.pos.len() {
            let mut bits = (self.pos[w] & other.neg[w]) | (self.neg[w] & other.pos[w]);
            while bits != 0 {
                let b = bits.trailing_zeros() as usize;
                out.push(w * WORD_BITS + b);
                bits &= bits - 1;
            }
        }
        Ok(out)
    }

    pub fn separator_is_empty(&self, other: &SignVector) -> Result<bool> {
        self.check_len(other)?;
        for w in 0..self.pos.len() {
            if (self.pos[w] & other.neg[w]) | (self.neg[w] & other.pos[w]) != 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Sign ordering with `0` below both signs: true iff every coordinate of
    /// `self` is zero or equals the corresponding coordinate of `other`.
    pub fn leq(&self, other: &SignVector) -> Result<bool> {
        self.check_len(other)?;
        for w in 0..self.pos.len() {
            if self.pos[w] & !other.pos[w] != 0 || self.neg[w] & !other.neg[w] != 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Strictly below in the sign ordering. Named to avoid any clash with
    /// the canonical [`Ord`] comparison operators.
    pub fn below(&self, other: &SignVector) -> Result<bool> {
        Ok(self.leq(other)? && self != other)
    }

    /// Support positions (non-zero coordinates).
    pub fn support(&self) -> Vec<usize> {
        (0..self.len).filter(|&i| self.get(i) != Sign::Zero).collect()
    }

    /// Zero-set positions.
    pub fn zero_set(&self) -> Vec<usize> {
        (0..self.len).filter(|&i| self.get(i) == Sign::Zero).collect()
    }

    pub fn zero_count(&self) -> usize {
        let set: usize = self
            .pos
            .iter()
            .zip(&self.neg)
            .map(|(p, n)| (p | n).count_ones() as usize)
            .sum();
        self.len - set
    }

    pub fn has_full_support(&self) -> bool {
        self.zero_count() == 0
    }

    /// Number of coordinates where the vectors differ.
    pub fn hamming(&self, other: &SignVector) -> Result<usize> {
        self.check_len(other)?;
        let mut count = 0;
        for w in 0..self.pos.len() {
            count += ((self.pos[w] ^ other.pos[w]) | (self.neg[w] ^ other.neg[w])).count_ones();
        }
        Ok(count as usize)
    }

    /// Restriction to the positions for which `keep` is true.
    pub fn restrict(&self, keep: &[bool]) -> SignVector {
        debug_assert_eq!(keep.len(), self.len);
        let signs: Vec<Sign> = (0..self.len).filter(|&i| keep[i]).map(|i| self.get(i)).collect();
        SignVector::from_signs(&signs)
    }

    pub fn to_string_signs(&self) -> String {
        self.iter().map(Sign::to_char).collect()
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_signs())
    }
}

impl serde::Serialize for SignVector {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string_signs())
    }
}

impl serde::Serialize for Sign {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(match self {
            Sign::Minus => "-",
            Sign::Zero => "0",
            Sign::Plus => "+",
        })
    }
}

impl fmt::Debug for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SignVector({self})")
    }
}

impl PartialOrd for SignVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical total order used for deterministic output: lexicographic with
/// the per-coordinate value order `0 < + < -`. This carries no semantic
/// weight; the partial sign ordering is [`SignVector::leq`].
impl Ord for SignVector {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.len.cmp(&other.len) {
            Ordering::Equal => {}
            o => return o,
        }
        for i in 0..self.len {
            match self.get(i).canonical_rank().cmp(&other.get(i).canonical_rank()) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        Ordering::Equal
    }
}

/// Conformal composition (supremum) of a non-empty sequence: defined when
/// the vectors are pairwise sign-consistent, absent otherwise.
pub fn conformal_compose(vectors: &[SignVector]) -> Result<Option<SignVector>> {
    let first = vectors
        .first()
        .ok_or_else(|| Error::Precondition("conformal composition of an empty sequence".into()))?;
    let mut acc = first.clone();
    for v in &vectors[1..] {
        acc.check_len(v)?;
    }
    for (i, x) in vectors.iter().enumerate() {
        for y in &vectors[i + 1..] {
            if !x.separator_is_empty(y)? {
                return Ok(None);
            }
        }
    }
    for v in &vectors[1..] {
        acc = acc.compose(v)?;
    }
    Ok(Some(acc))
}

/// A ground set together with a non-empty set of sign vectors.
///
/// Covectors are deduplicated and kept in canonical order, so equal systems
/// compare equal structurally and all iteration is deterministic.
#[derive(Clone, PartialEq, Eq)]
pub struct SignSystem {
    ground: GroundSet,
    covectors: Vec<SignVector>,
}

impl SignSystem {
    pub fn new(ground: GroundSet, covectors: impl IntoIterator<Item = SignVector>) -> Result<SignSystem> {
        let mut set: BTreeSet<SignVector> = BTreeSet::new();
        for v in covectors {
            if v.len() != ground.len() {
                return Err(Error::DimensionMismatch {
                    left: ground.len(),
                    right: v.len(),
                });
            }
            set.insert(v);
        }
        if set.is_empty() {
            return Err(Error::EmptyResult("a system needs at least one covector".into()));
        }
        Ok(SignSystem {
            ground,
            covectors: set.into_iter().collect(),
        })
    }

    /// Convenience constructor from `+`/`-`/`0` strings with auto-named
    /// elements; used pervasively by tests and fixtures.
    pub fn from_rows(rows: &[&str]) -> Result<SignSystem> {
        let n = rows
            .first()
            .ok_or_else(|| Error::EmptyResult("a system needs at least one covector".into()))?
            .chars()
            .count();
        let ground = GroundSet::auto(n)?;
        let vectors: Result<Vec<SignVector>> = rows.iter().map(|r| SignVector::parse(r)).collect();
        SignSystem::new(ground, vectors?)
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn elements(&self) -> usize {
        self.ground.len()
    }

    pub fn covectors(&self) -> &[SignVector] {
        &self.covectors
    }

    pub fn len(&self) -> usize {
        self.covectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.covectors.is_empty()
    }

    pub fn contains(&self, v: &SignVector) -> bool {
        self.covectors.binary_search(v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = &SignVector> {
        self.covectors.iter()
    }

    /// Same ground set, subset of covectors.
    pub fn subsystem(&self, keep: impl Fn(&SignVector) -> bool) -> Result<SignSystem> {
        SignSystem::new(self.ground.clone(), self.covectors.iter().filter(|v| keep(v)).cloned())
    }

    /// The upset `↑L` inside `{+1,0,-1}^E`: all vectors above some covector.
    pub fn upset(&self, guard: &Guard) -> Result<SignSystem> {
        guard.check_enum(self.elements())?;
        let mut out: BTreeSet<SignVector> = BTreeSet::new();
        for x in &self.covectors {
            let zeros = x.zero_set();
            extend_zeros(x, &zeros, 0, &mut out);
        }
        SignSystem::new(self.ground.clone(), out)
    }
}

fn extend_zeros(base: &SignVector, zeros: &[usize], at: usize, out: &mut BTreeSet<SignVector>) {
    if at == zeros.len() {
        out.insert(base.clone());
        return;
    }
    for sign in [Sign::Zero, Sign::Plus, Sign::Minus] {
        let mut next = base.clone();
        next.set(zeros[at], sign);
        extend_zeros(&next, zeros, at + 1, out);
    }
}

impl serde::Serialize for SignSystem {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("SignSystem", 2)?;
        s.serialize_field("elements", self.ground.labels())?;
        s.serialize_field("covectors", &self.covectors)?;
        s.end()
    }
}

impl fmt::Debug for SignSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SignSystem[{}; {}]",
            self.ground.labels().join(" "),
            self.covectors
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        )
    }
}

/// Enumerate all of `{+1,0,-1}^n` in canonical order.
pub fn all_sign_vectors(n: usize) -> Vec<SignVector> {
    let mut out = Vec::with_capacity(3usize.pow(n as u32));
    let mut digits = vec![Sign::Zero; n];
    loop {
        out.push(SignVector::from_signs(&digits));
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            digits[i] = match digits[i] {
                Sign::Zero => Sign::Plus,
                Sign::Plus => Sign::Minus,
                Sign::Minus => {
                    digits[i] = Sign::Zero;
                    continue;
                }
            };
            break;
        }
    }
}
