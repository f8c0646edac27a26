//! Vectors and subspaces over the field with two elements.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::GroupError;

/// A dense vector over GF(2).
///
/// Serialized as a list of 0/1 integers so that scenario files stay readable.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct F2Vec {
    words: Vec<u64>,
    len: usize,
}

impl F2Vec {
    pub fn zeros(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    /// Low `len` bits of `mask`, bit `i` of the mask becoming coordinate `i`.
    pub fn from_mask(len: usize, mask: u64) -> Self {
        assert!(len <= 64, "mask constructor limited to 64 coordinates");
        let mut v = Self::zeros(len);
        if len > 0 {
            let keep = if len == 64 { u64::MAX } else { (1u64 << len) - 1 };
            v.words[0] = mask & keep;
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, b: bool) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        let m = 1u64 << (i % 64);
        if b {
            self.words[i / 64] |= m;
        } else {
            self.words[i / 64] &= !m;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Index of the lowest set coordinate.
    pub fn leading(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * 64 + w.trailing_zeros() as usize)
    }

    pub fn add_assign(&mut self, other: &F2Vec) {
        assert_eq!(self.len, other.len, "F2 vector length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn add(&self, other: &F2Vec) -> F2Vec {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn bits(&self) -> Vec<bool> {
        (0..self.len).map(|i| self.get(i)).collect()
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }
}

impl fmt::Debug for F2Vec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F2Vec({self})")
    }
}

impl fmt::Display for F2Vec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for i in 0..self.len {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", u8::from(self.get(i)))?;
        }
        write!(f, ")")
    }
}

impl Serialize for F2Vec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let bits: Vec<u8> = (0..self.len).map(|i| u8::from(self.get(i))).collect();
        bits.serialize(s)
    }
}

impl<'de> Deserialize<'de> for F2Vec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let bits = Vec::<u8>::deserialize(d)?;
        let mut v = F2Vec::zeros(bits.len());
        for (i, b) in bits.into_iter().enumerate() {
            match b {
                0 => {}
                1 => v.set(i, true),
                other => {
                    return Err(serde::de::Error::custom(format!(
                        "F2 coordinate must be 0 or 1, got {other}"
                    )))
                }
            }
        }
        Ok(v)
    }
}

/// A coset `v + S` reported by its canonical representative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coset {
    pub representative: F2Vec,
    pub is_zero: bool,
}

/// A subspace of GF(2)^dim given by generators, with a reduced echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct F2Subspace {
    dim: usize,
    generators: Vec<F2Vec>,
    /// Fully reduced: each row has a distinct leading coordinate that is zero in every other row.
    basis: Vec<F2Vec>,
}

impl F2Subspace {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            generators: Vec::new(),
            basis: Vec::new(),
        }
    }

    pub fn span(dim: usize, generators: Vec<F2Vec>) -> Result<Self, GroupError> {
        let mut s = Self::zero(dim);
        for g in generators {
            s.push(g)?;
        }
        Ok(s)
    }

    pub fn push(&mut self, g: F2Vec) -> Result<(), GroupError> {
        if g.len() != self.dim {
            return Err(GroupError::DimensionMismatch {
                expected: self.dim,
                found: g.len(),
            });
        }
        let mut r = g.clone();
        self.generators.push(g);
        self.reduce_in_place(&mut r);
        if let Some(p) = r.leading() {
            for row in &mut self.basis {
                if row.get(p) {
                    row.add_assign(&r);
                }
            }
            self.basis.push(r);
            self.basis.sort_by_key(|row| row.leading());
        }
        Ok(())
    }

    fn reduce_in_place(&self, v: &mut F2Vec) {
        for row in &self.basis {
            let p = row.leading().expect("basis rows are nonzero");
            if v.get(p) {
                v.add_assign(row);
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn generators(&self) -> &[F2Vec] {
        &self.generators
    }

    pub fn basis(&self) -> &[F2Vec] {
        &self.basis
    }

    pub fn contains(&self, v: &F2Vec) -> Result<bool, GroupError> {
        Ok(self.quotient_reduce(v)?.is_zero)
    }

    /// Canonical representative of `v` modulo the subspace.
    ///
    /// The representative has a zero in every pivot coordinate of the
    /// reduced basis, so two vectors lie in the same coset exactly when
    /// their representatives agree.
    pub fn quotient_reduce(&self, v: &F2Vec) -> Result<Coset, GroupError> {
        if v.len() != self.dim {
            return Err(GroupError::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        let mut r = v.clone();
        self.reduce_in_place(&mut r);
        let is_zero = r.is_zero();
        Ok(Coset {
            representative: r,
            is_zero,
        })
    }
}
