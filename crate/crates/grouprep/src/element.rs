use std::fmt;

use serde::{Deserialize, Serialize};

/// A group element in the coordinates of its [`GroupModel`](crate::GroupModel).
///
/// Finite groups use a single coordinate, the row index in the multiplication
/// table. Abelian groups use one coordinate per free or cyclic factor, with
/// torsion coordinates kept in `0..n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element(pub Vec<i64>);

impl Element {
    pub fn index(i: usize) -> Self {
        Element(vec![i as i64])
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            write!(f, "{}", self.0[0])
        } else {
            write!(f, "(")?;
            for (i, c) in self.0.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{c}")?;
            }
            write!(f, ")")
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Repr {
    Scalar(i64),
    Vector(Vec<i64>),
}

impl Serialize for Element {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.len() == 1 {
            Repr::Scalar(self.0[0]).serialize(s)
        } else {
            Repr::Vector(self.0.clone()).serialize(s)
        }
    }
}

impl<'de> Deserialize<'de> for Element {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(match Repr::deserialize(d)? {
            Repr::Scalar(x) => Element(vec![x]),
            Repr::Vector(v) => Element(v),
        })
    }
}

/// One letter of a word: a generator (by position in the generating list) or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Self { generator, inverse }
    }
}

pub type Word = Vec<Letter>;
