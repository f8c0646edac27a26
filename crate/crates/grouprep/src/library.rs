//! Ready-made group models used by tests, sweeps and shipped scenarios.

use std::collections::HashMap;
use std::hash::Hash;

use crate::element::Element;
use crate::group::{GroupModel, GroupSpec};

/// Builds a table group as the closure of `gens` under `mul`, identity first.
///
/// Panics if the closure exceeds the supported order.
pub fn closure<T, F>(identity: T, gens: &[T], mul: F) -> GroupModel
where
    T: Clone + Eq + Hash,
    F: Fn(&T, &T) -> T,
{
    let mut elems = vec![identity];
    let mut index: HashMap<T, usize> = HashMap::from([(elems[0].clone(), 0)]);
    let mut i = 0;
    while i < elems.len() {
        for g in gens {
            let y = mul(&elems[i], g);
            if !index.contains_key(&y) {
                index.insert(y.clone(), elems.len());
                elems.push(y);
            }
        }
        i += 1;
    }
    let table: Vec<Vec<usize>> = elems
        .iter()
        .map(|a| elems.iter().map(|b| index[&mul(a, b)]).collect())
        .collect();
    let generators = gens.iter().map(|g| Element::index(index[g])).collect();
    GroupModel::build(GroupSpec::Finite { table, generators }).expect("closure is a group")
}

/// The infinite cyclic group with generator `1`.
pub fn integers() -> GroupModel {
    abelian(1, &[])
}

pub fn abelian(rank: usize, torsion: &[u64]) -> GroupModel {
    GroupModel::build(GroupSpec::Abelian {
        rank,
        torsion: torsion.to_vec(),
        generators: None,
    })
    .expect("valid abelian presentation")
}

/// `Z/n` as a table, element `k` at index `k`.
pub fn cyclic(n: usize) -> GroupModel {
    let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    let generators = vec![Element::index(if n > 1 { 1 } else { 0 })];
    GroupModel::build(GroupSpec::Finite { table, generators }).expect("cyclic table")
}

/// Quaternion units `(sign, unit)` with unit 0..4 = 1, i, j, k.
fn quat_mul(a: &(i8, u8), b: &(i8, u8)) -> (i8, u8) {
    const T: [[(i8, u8); 4]; 4] = [
        [(1, 0), (1, 1), (1, 2), (1, 3)],
        [(1, 1), (-1, 0), (1, 3), (-1, 2)],
        [(1, 2), (-1, 3), (-1, 0), (1, 1)],
        [(1, 3), (1, 2), (-1, 1), (-1, 0)],
    ];
    let (s, u) = T[a.1 as usize][b.1 as usize];
    (a.0 * b.0 * s, u)
}

/// `Q8` with index order `1, -1, i, -i, j, -j, k, -k`, generated by `i` and `j`.
pub fn quaternion() -> GroupModel {
    let elems: Vec<(i8, u8)> = (0..4).flat_map(|u| [(1, u), (-1, u)]).collect();
    let index: HashMap<(i8, u8), usize> = elems.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let table = elems
        .iter()
        .map(|a| elems.iter().map(|b| index[&quat_mul(a, b)]).collect())
        .collect();
    GroupModel::build(GroupSpec::Finite {
        table,
        generators: vec![Element::index(2), Element::index(4)],
    })
    .expect("quaternion table")
}

pub const Q8_ONE: usize = 0;
pub const Q8_MINUS_ONE: usize = 1;
pub const Q8_I: usize = 2;
pub const Q8_J: usize = 4;
pub const Q8_K: usize = 6;

/// Dihedral group of order `2n` as pairs `(rotation, reflection)`.
pub fn dihedral(n: u32) -> GroupModel {
    let mul = move |a: &(u32, bool), b: &(u32, bool)| {
        let r = if a.1 { (a.0 + n - b.0) % n } else { (a.0 + b.0) % n };
        (r, a.1 ^ b.1)
    };
    closure((0, false), &[(1 % n, false), (0, true)], mul)
}

/// Dicyclic group of order `4n`: `<a, x | a^{2n}, x^2 = a^n, x a x^-1 = a^-1>`.
pub fn dicyclic(n: u32) -> GroupModel {
    let m = 2 * n;
    // Elements a^k x^e with e in {0,1}.
    let mul = move |p: &(u32, bool), q: &(u32, bool)| match (p.1, q.1) {
        (false, _) => ((p.0 + q.0) % m, q.1),
        (true, false) => ((p.0 + m - q.0) % m, true),
        (true, true) => ((p.0 + m - q.0 + n) % m, false),
    };
    closure((0, false), &[(1, false), (0, true)], mul)
}

/// Group generated by permutations of `0..k`, composed right to left.
pub fn permutations(gens: &[Vec<u8>]) -> GroupModel {
    let k = gens[0].len();
    let id: Vec<u8> = (0..k as u8).collect();
    closure(id, gens, |a, b| b.iter().map(|&x| a[x as usize]).collect())
}

pub fn symmetric3() -> GroupModel {
    permutations(&[vec![1, 0, 2], vec![1, 2, 0]])
}

pub fn alternating4() -> GroupModel {
    permutations(&[vec![1, 2, 0, 3], vec![1, 0, 3, 2]])
}

/// Direct product of two table groups, generated by the images of both generating sets.
pub fn product(a: &GroupModel, b: &GroupModel) -> GroupModel {
    let ga: Vec<(Element, Element)> = a
        .generators()
        .iter()
        .map(|g| (g.clone(), b.identity()))
        .collect();
    let gb = b.generators().iter().map(|g| (a.identity(), g.clone()));
    let gens: Vec<(Element, Element)> = ga.into_iter().chain(gb).collect();
    closure((a.identity(), b.identity()), &gens, |x, y| {
        (a.op(&x.0, &y.0), b.op(&x.1, &y.1))
    })
}

/// Named groups of order at most 16 used as the exhaustive test set.
pub fn small_groups() -> Vec<(String, GroupModel)> {
    let mut out: Vec<(String, GroupModel)> = (1..=16)
        .map(|n| (format!("Z{n}"), cyclic(n)))
        .collect();
    let z2 = cyclic(2);
    let z4 = cyclic(4);
    let v4 = product(&z2, &z2);
    out.push(("Z2xZ2".into(), v4.clone()));
    out.push(("Z2^3".into(), product(&v4, &z2)));
    out.push(("Z2^4".into(), product(&v4, &v4)));
    out.push(("Z4xZ2".into(), product(&z4, &z2)));
    out.push(("Z4xZ4".into(), product(&z4, &z4)));
    out.push(("Z8xZ2".into(), product(&cyclic(8), &z2)));
    out.push(("Z4xZ2xZ2".into(), product(&z4, &v4)));
    out.push(("Z3xZ3".into(), product(&cyclic(3), &cyclic(3))));
    out.push(("Z6xZ2".into(), product(&cyclic(6), &z2)));
    for n in 3..=8 {
        out.push((format!("D{}", 2 * n), dihedral(n)));
    }
    out.push(("Q8".into(), quaternion()));
    out.push(("Dic3".into(), dicyclic(3)));
    out.push(("Q16".into(), dicyclic(4)));
    out.push(("S3".into(), symmetric3()));
    out.push(("A4".into(), alternating4()));
    out.push(("Q8xZ2".into(), product(&quaternion(), &z2)));
    out.push(("D8xZ2".into(), product(&dihedral(4), &z2)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(quaternion().order(), Some(8));
        assert_eq!(dihedral(5).order(), Some(10));
        assert_eq!(dicyclic(4).order(), Some(16));
        assert_eq!(alternating4().order(), Some(12));
        for (name, g) in small_groups() {
            assert!(g.order().unwrap() <= 16, "{name}");
        }
    }

    #[test]
    fn quaternion_relations() {
        let q = quaternion();
        let i = Element::index(Q8_I);
        let j = Element::index(Q8_J);
        assert_eq!(q.op(&i, &j), Element::index(Q8_K));
        assert_eq!(q.op(&i, &i), Element::index(Q8_MINUS_ONE));
        assert_eq!(q.op(&j, &i), Element::index(Q8_K + 1));
    }
}
