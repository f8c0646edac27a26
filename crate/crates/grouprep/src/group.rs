use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::element::{Element, Letter, Word};
use crate::f2::F2Vec;
use crate::intlin;
use crate::GroupError;

/// Largest supported finite group order.
pub const MAX_FINITE_ORDER: usize = 255;
/// Largest generating set accepted by the balanced-word search.
pub const MAX_GENERATORS: usize = 16;

/// Serialized description of a group, as found in a scenario's `group` block.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupSpec {
    /// Multiplication table over `0..n`, identity at index 0.
    Finite {
        table: Vec<Vec<usize>>,
        generators: Vec<Element>,
    },
    /// `Z^rank` plus cyclic factors `Z/n` for each entry of `torsion`.
    Abelian {
        rank: usize,
        #[serde(default)]
        torsion: Vec<u64>,
        /// Defaults to the standard basis vectors.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        generators: Option<Vec<Element>>,
    },
}

#[derive(Clone, Debug)]
enum Kind {
    Finite {
        n: usize,
        table: Vec<u8>,
        inverse: Vec<u8>,
        /// Mod-2 abelianization of each element as a bit mask.
        eps: Vec<u64>,
    },
    Abelian {
        rank: usize,
        torsion: Vec<u64>,
    },
}

/// A model of the fundamental group: a finite multiplication table or a
/// finitely generated abelian group, together with the data derived from it.
#[derive(Clone, Debug)]
pub struct GroupModel {
    spec: GroupSpec,
    kind: Kind,
    generators: Vec<Element>,
    two_torsion: Vec<Element>,
    h1_dim: usize,
}

impl GroupModel {
    pub fn build(spec: GroupSpec) -> Result<Self, GroupError> {
        match &spec {
            GroupSpec::Finite { table, generators } => {
                Self::build_finite(spec.clone(), table, generators)
            }
            GroupSpec::Abelian {
                rank,
                torsion,
                generators,
            } => Self::build_abelian(spec.clone(), *rank, torsion, generators.clone()),
        }
    }

    fn build_finite(
        spec: GroupSpec,
        rows: &[Vec<usize>],
        generators: &[Element],
    ) -> Result<Self, GroupError> {
        let n = rows.len();
        if n == 0 {
            return Err(GroupError::InvalidTable("empty table".into()));
        }
        if n > MAX_FINITE_ORDER {
            return Err(GroupError::TooLarge(n));
        }
        let mut table = vec![0u8; n * n];
        for (a, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::InvalidTable(format!(
                    "row {a} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for (b, &c) in row.iter().enumerate() {
                if c >= n {
                    return Err(GroupError::InvalidTable(format!(
                        "entry ({a},{b}) = {c} out of range"
                    )));
                }
                table[a * n + b] = c as u8;
            }
        }
        let mul = |a: usize, b: usize| table[a * n + b] as usize;
        for x in 0..n {
            if mul(0, x) != x || mul(x, 0) != x {
                return Err(GroupError::NoIdentity);
            }
        }
        let mut inverse = vec![0u8; n];
        for x in 0..n {
            match (0..n).find(|&y| mul(x, y) == 0 && mul(y, x) == 0) {
                Some(y) => inverse[x] = y as u8,
                None => return Err(GroupError::NoInverse(x)),
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = mul(a, b);
                for c in 0..n {
                    if mul(ab, c) != mul(a, mul(b, c)) {
                        return Err(GroupError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        if generators.is_empty() {
            return Err(GroupError::NoGenerators);
        }
        let mut gens = Vec::with_capacity(generators.len());
        for g in generators {
            match g.0.as_slice() {
                [i] if *i >= 0 && (*i as usize) < n => gens.push(*i as usize),
                _ => return Err(GroupError::NotAnElement(g.clone())),
            }
        }
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in &gens {
                let y = mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(GroupError::DoesNotGenerate);
        }
        let (eps, h1_dim) = abelianize_mod2(n, &table, &inverse);
        let two_torsion = (1..n)
            .filter(|&g| mul(g, g) == 0)
            .map(Element::index)
            .collect();
        Ok(Self {
            spec,
            kind: Kind::Finite {
                n,
                table,
                inverse,
                eps,
            },
            generators: generators.to_vec(),
            two_torsion,
            h1_dim,
        })
    }

    fn build_abelian(
        spec: GroupSpec,
        rank: usize,
        torsion: &[u64],
        generators: Option<Vec<Element>>,
    ) -> Result<Self, GroupError> {
        if let Some(&t) = torsion.iter().find(|&&t| t < 2) {
            return Err(GroupError::BadTorsion(t));
        }
        let dim = rank + torsion.len();
        let kind = Kind::Abelian {
            rank,
            torsion: torsion.to_vec(),
        };
        let generators = match generators {
            Some(g) => g,
            None => (0..dim)
                .map(|i| Element((0..dim).map(|j| i64::from(i == j)).collect()))
                .collect(),
        };
        if generators.is_empty() && dim > 0 {
            return Err(GroupError::NoGenerators);
        }
        let even: Vec<usize> = torsion
            .iter()
            .enumerate()
            .filter(|(_, &t)| t % 2 == 0)
            .map(|(i, _)| i)
            .collect();
        if even.len() > 20 {
            return Err(GroupError::TooLarge(1 << even.len().min(62)));
        }
        let mut two_torsion: Vec<Element> = (1u64..(1 << even.len()))
            .map(|mask| {
                let mut c = vec![0i64; dim];
                for (bit, &i) in even.iter().enumerate() {
                    if mask >> bit & 1 == 1 {
                        c[rank + i] = (torsion[i] / 2) as i64;
                    }
                }
                Element(c)
            })
            .collect();
        two_torsion.sort();
        let mut model = Self {
            spec,
            kind,
            generators: Vec::new(),
            two_torsion,
            h1_dim: rank + even.len(),
        };
        let mut canon = Vec::with_capacity(generators.len());
        for g in &generators {
            canon.push(model.normalize(g)?);
        }
        model.generators = canon;
        for i in 0..dim {
            let unit = Element((0..dim).map(|j| i64::from(i == j)).collect());
            if model.abelian_coefficients(&unit).is_none() {
                return Err(GroupError::DoesNotGenerate);
            }
        }
        Ok(model)
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn is_finite_table(&self) -> bool {
        matches!(self.kind, Kind::Finite { .. })
    }

    /// Number of elements, or `None` for infinite groups.
    pub fn order(&self) -> Option<u128> {
        match &self.kind {
            Kind::Finite { n, .. } => Some(*n as u128),
            Kind::Abelian { rank, torsion } => {
                if *rank > 0 {
                    None
                } else {
                    torsion
                        .iter()
                        .try_fold(1u128, |acc, &t| acc.checked_mul(u128::from(t)))
                }
            }
        }
    }

    /// All elements of a finite table group, in index order.
    pub fn elements(&self) -> Option<Vec<Element>> {
        match &self.kind {
            Kind::Finite { n, .. } => Some((0..*n).map(Element::index).collect()),
            Kind::Abelian { rank: 0, torsion } => {
                let mut out = vec![Element(Vec::new())];
                for &t in torsion {
                    out = out
                        .into_iter()
                        .flat_map(|e| {
                            (0..t as i64).map(move |x| {
                                let mut c = e.0.clone();
                                c.push(x);
                                Element(c)
                            })
                        })
                        .collect();
                }
                Some(out)
            }
            Kind::Abelian { .. } => None,
        }
    }

    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    pub fn identity(&self) -> Element {
        match &self.kind {
            Kind::Finite { .. } => Element::index(0),
            Kind::Abelian { rank, torsion } => Element(vec![0; rank + torsion.len()]),
        }
    }

    /// Canonical form of `g`, or an error if it is not an element.
    pub fn normalize(&self, g: &Element) -> Result<Element, GroupError> {
        match &self.kind {
            Kind::Finite { n, .. } => match g.0.as_slice() {
                [i] if *i >= 0 && (*i as usize) < *n => Ok(g.clone()),
                _ => Err(GroupError::NotAnElement(g.clone())),
            },
            Kind::Abelian { rank, torsion } => {
                if g.0.len() != rank + torsion.len() {
                    return Err(GroupError::NotAnElement(g.clone()));
                }
                let mut c = g.0.clone();
                for (i, &t) in torsion.iter().enumerate() {
                    c[rank + i] = c[rank + i].rem_euclid(t as i64);
                }
                Ok(Element(c))
            }
        }
    }

    /// Checks that `g` is already in canonical form.
    pub fn check(&self, g: &Element) -> Result<(), GroupError> {
        if &self.normalize(g)? == g {
            Ok(())
        } else {
            Err(GroupError::NotAnElement(g.clone()))
        }
    }

    pub fn op(&self, a: &Element, b: &Element) -> Element {
        match &self.kind {
            Kind::Finite { n, table, .. } => {
                Element::index(table[a.0[0] as usize * n + b.0[0] as usize] as usize)
            }
            Kind::Abelian { rank, torsion } => {
                let mut c: Vec<i64> = a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect();
                for (i, &t) in torsion.iter().enumerate() {
                    c[rank + i] = c[rank + i].rem_euclid(t as i64);
                }
                Element(c)
            }
        }
    }

    pub fn inverse(&self, a: &Element) -> Element {
        match &self.kind {
            Kind::Finite { inverse, .. } => Element::index(inverse[a.0[0] as usize] as usize),
            Kind::Abelian { rank, torsion } => {
                let mut c: Vec<i64> = a.0.iter().map(|x| -x).collect();
                for (i, &t) in torsion.iter().enumerate() {
                    c[rank + i] = c[rank + i].rem_euclid(t as i64);
                }
                Element(c)
            }
        }
    }

    pub fn is_identity(&self, a: &Element) -> bool {
        *a == self.identity()
    }

    /// The nontrivial elements of order two, sorted.
    pub fn two_torsion(&self) -> &[Element] {
        &self.two_torsion
    }

    /// Position of `g` in the 2-torsion basis.
    pub fn two_torsion_index(&self, g: &Element) -> Option<usize> {
        self.two_torsion.binary_search(g).ok()
    }

    /// Dimension of `H_1(X; Z/2)`.
    pub fn h1_dim(&self) -> usize {
        self.h1_dim
    }

    /// The mod-2 abelianization of `g`.
    pub fn eps(&self, g: &Element) -> Result<F2Vec, GroupError> {
        self.check(g)?;
        Ok(match &self.kind {
            Kind::Finite { eps, .. } => F2Vec::from_mask(self.h1_dim, eps[g.0[0] as usize]),
            Kind::Abelian { rank, torsion } => {
                let mut v = F2Vec::zeros(self.h1_dim);
                for i in 0..*rank {
                    v.set(i, g.0[i].rem_euclid(2) == 1);
                }
                let mut k = *rank;
                for (i, &t) in torsion.iter().enumerate() {
                    if t % 2 == 0 {
                        v.set(k, g.0[rank + i].rem_euclid(2) == 1);
                        k += 1;
                    }
                }
                v
            }
        })
    }

    pub fn letter_value(&self, l: Letter) -> Element {
        let g = &self.generators[l.generator];
        if l.inverse {
            self.inverse(g)
        } else {
            g.clone()
        }
    }

    /// Product of a word, read left to right.
    pub fn word_product(&self, w: &[Letter]) -> Element {
        w.iter()
            .fold(self.identity(), |acc, &l| self.op(&acc, &self.letter_value(l)))
    }

    /// A word in the generators multiplying to `g` in which every generator
    /// occurs as often as its inverse, modulo 2.
    ///
    /// Such a word exists exactly when `g` lies in the kernel of [`eps`](Self::eps).
    pub fn balanced_word(&self, g: &Element) -> Result<Word, GroupError> {
        if !self.eps(g)?.is_zero() {
            return Err(GroupError::NotInKernel(g.clone()));
        }
        match &self.kind {
            Kind::Finite { .. } => self.balanced_word_bfs(g),
            Kind::Abelian { rank, torsion } => {
                // g = 2 h0; write h0 in the generators and repeat the word.
                let mut half = Vec::with_capacity(g.0.len());
                for i in 0..*rank {
                    half.push(g.0[i] / 2);
                }
                for (i, &t) in torsion.iter().enumerate() {
                    let x = g.0[rank + i];
                    let t = t as i64;
                    half.push(if t % 2 == 0 {
                        x / 2
                    } else {
                        (x * ((t + 1) / 2)).rem_euclid(t)
                    });
                }
                let h0 = Element(half);
                let coeffs = self
                    .abelian_coefficients(&h0)
                    .ok_or(GroupError::SearchExhausted)?;
                let mut w0 = Vec::new();
                for (j, &c) in coeffs.iter().enumerate() {
                    for _ in 0..c.unsigned_abs() {
                        w0.push(Letter::new(j, c < 0));
                    }
                }
                let mut w = w0.clone();
                w.extend(w0);
                debug_assert_eq!(self.word_product(&w), *g);
                Ok(w)
            }
        }
    }

    fn balanced_word_bfs(&self, target: &Element) -> Result<Word, GroupError> {
        let Kind::Finite { n, table, .. } = &self.kind else {
            unreachable!("bfs runs on table groups");
        };
        let k = self.generators.len();
        if k > MAX_GENERATORS {
            return Err(GroupError::TooManyGenerators(k));
        }
        let letters: Vec<(Letter, usize)> = (0..k)
            .flat_map(|j| [Letter::new(j, false), Letter::new(j, true)])
            .map(|l| (l, self.letter_value(l).0[0] as usize))
            .collect();
        let states = n << k;
        let key = |g: usize, parity: usize| (g << k) | parity;
        let mut parent: Vec<u32> = vec![u32::MAX; states];
        let mut via: Vec<u8> = vec![0; states];
        let start = key(0, 0);
        parent[start] = start as u32;
        let goal = key(target.0[0] as usize, 0);
        let mut queue = VecDeque::from([start]);
        while let Some(s) = queue.pop_front() {
            if s == goal {
                let mut word = Vec::new();
                let mut cur = s;
                while cur != start {
                    word.push(letters[via[cur] as usize].0);
                    cur = parent[cur] as usize;
                }
                word.reverse();
                return Ok(word);
            }
            let (g, parity) = (s >> k, s & ((1 << k) - 1));
            for (li, (l, x)) in letters.iter().enumerate() {
                let t = key(table[g * n + x] as usize, parity ^ (1 << l.generator));
                if parent[t] == u32::MAX {
                    parent[t] = s as u32;
                    via[t] = li as u8;
                    queue.push_back(t);
                }
            }
        }
        Err(GroupError::SearchExhausted)
    }

    /// Integer coefficients `c` with `sum c_j gen_j = g` (abelian groups only).
    fn abelian_coefficients(&self, g: &Element) -> Option<Vec<i64>> {
        let Kind::Abelian { rank, torsion } = &self.kind else {
            return None;
        };
        let dim = rank + torsion.len();
        let m = self.generators.len();
        let a: Vec<Vec<i128>> = (0..dim)
            .map(|i| {
                let mut row: Vec<i128> =
                    self.generators.iter().map(|gen| i128::from(gen.0[i])).collect();
                row.extend((0..torsion.len()).map(|j| {
                    if i == rank + j {
                        i128::from(torsion[j])
                    } else {
                        0
                    }
                }));
                row
            })
            .collect();
        let b: Vec<i128> = g.0.iter().map(|&x| i128::from(x)).collect();
        let z = intlin::solve(&a, &b)?;
        z[..m].iter().map(|&c| i64::try_from(c).ok()).collect()
    }
}

/// Computes `G -> G/<squares, commutators>` as bit masks over a chosen basis.
fn abelianize_mod2(n: usize, table: &[u8], inverse: &[u8]) -> (Vec<u64>, usize) {
    let mul = |a: usize, b: usize| table[a * n + b] as usize;
    let mut gens: Vec<usize> = (0..n).map(|g| mul(g, g)).collect();
    for a in 0..n {
        for b in 0..n {
            let c = mul(mul(a, b), mul(inverse[a] as usize, inverse[b] as usize));
            gens.push(c);
        }
    }
    gens.sort_unstable();
    gens.dedup();
    let mut in_n = vec![false; n];
    in_n[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for &g in &gens {
            let y = mul(x, g);
            if !in_n[y] {
                in_n[y] = true;
                queue.push_back(y);
            }
        }
    }
    // Each element of the span so far is tagged with its coordinate mask.
    let mut mask: HashMap<usize, u64> = (0..n).filter(|&x| in_n[x]).map(|x| (x, 0)).collect();
    let mut dim = 0;
    for g in 0..n {
        if mask.contains_key(&g) {
            continue;
        }
        let bit = 1u64 << dim;
        dim += 1;
        let current: Vec<(usize, u64)> = mask.iter().map(|(&x, &m)| (x, m)).collect();
        for (x, m) in current {
            mask.insert(mul(g, x), m | bit);
        }
    }
    let eps = (0..n).map(|x| mask[&x]).collect();
    (eps, dim)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::library;

    #[test]
    fn integers() {
        let z = library::integers();
        assert_eq!(z.order(), None);
        assert!(z.two_torsion().is_empty());
        assert_eq!(z.eps(&Element(vec![3])).unwrap().bits(), vec![true]);
        assert_eq!(
            z.balanced_word(&Element(vec![2])).unwrap(),
            vec![Letter::new(0, false), Letter::new(0, false)]
        );
        assert!(z.balanced_word(&Element(vec![1])).is_err());
    }

    #[test]
    fn cyclic_four() {
        let g = library::cyclic(4);
        assert_eq!(g.order(), Some(4));
        assert_eq!(g.two_torsion(), &[Element::index(2)]);
        assert!(g.eps(&Element::index(2)).unwrap().is_zero());
        assert_eq!(
            g.balanced_word(&Element::index(2)).unwrap(),
            vec![Letter::new(0, false), Letter::new(0, false)]
        );
    }

    #[test]
    fn quaternions() {
        let q = library::quaternion();
        let m1 = Element::index(library::Q8_MINUS_ONE);
        assert_eq!(q.two_torsion(), &[m1.clone()]);
        assert_eq!(q.h1_dim(), 2);
        assert!(q.eps(&m1).unwrap().is_zero());
        assert_eq!(
            q.balanced_word(&m1).unwrap(),
            vec![Letter::new(0, false), Letter::new(0, false)]
        );
    }

    #[test]
    fn klein_identity_word_is_empty() {
        let v = library::abelian(0, &[2, 2]);
        assert!(v.balanced_word(&v.identity()).unwrap().is_empty());
        assert_eq!(v.two_torsion().len(), 3);
    }

    #[test]
    fn rejects_bad_tables() {
        let bad = GroupSpec::Finite {
            table: vec![vec![0, 1, 2], vec![1, 0, 0], vec![2, 0, 1]],
            generators: vec![Element::index(1)],
        };
        assert!(GroupModel::build(bad).is_err());
        let not_assoc = GroupSpec::Finite {
            table: vec![
                vec![0, 1, 2, 3],
                vec![1, 0, 3, 2],
                vec![2, 3, 0, 1],
                vec![3, 2, 0, 1],
            ],
            generators: vec![Element::index(1), Element::index(2)],
        };
        assert!(GroupModel::build(not_assoc).is_err());
        let small = GroupSpec::Finite {
            table: vec![vec![0, 1], vec![1, 0]],
            generators: vec![Element::index(0)],
        };
        assert!(matches!(
            GroupModel::build(small),
            Err(GroupError::DoesNotGenerate)
        ));
        let torsion = GroupSpec::Abelian {
            rank: 0,
            torsion: vec![1],
            generators: None,
        };
        assert!(matches!(
            GroupModel::build(torsion),
            Err(GroupError::BadTorsion(1))
        ));
    }

    #[test]
    fn abelian_custom_generators() {
        let spec = GroupSpec::Abelian {
            rank: 1,
            torsion: vec![],
            generators: Some(vec![Element(vec![2]), Element(vec![3])]),
        };
        let g = GroupModel::build(spec).unwrap();
        let w = g.balanced_word(&Element(vec![4])).unwrap();
        assert_eq!(g.word_product(&w), Element(vec![4]));
        let bad = GroupSpec::Abelian {
            rank: 1,
            torsion: vec![],
            generators: Some(vec![Element(vec![2])]),
        };
        assert!(GroupModel::build(bad).is_err());
    }
}
