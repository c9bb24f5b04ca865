//! Finite crystallographic root systems, roots in the simple-root basis,
//! and Weyl group elements acting on them.
//!
//! Type `A_n` is first-class (named `"A1"` through `"A9"`); any other finite
//! crystallographic type can be built from its Cartan matrix. All arithmetic
//! is exact integer arithmetic in the simple-root basis.

use std::fmt;
use std::sync::Arc;

use crate::{Error, Result};

/// A root written in the simple-root basis: `coords[i]` is the coefficient
/// of the `i+1`-th simple root.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Root {
    coords: Vec<i64>,
}

impl Root {
    pub fn new(coords: Vec<i64>) -> Self {
        Root { coords }
    }

    /// The `i`-th simple root (1-based), in a system of the given rank.
    pub fn simple(rank: usize, i: usize) -> Self {
        let mut coords = vec![0; rank];
        coords[i - 1] = 1;
        Root { coords }
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    /// Sum of coefficients; positive roots have positive height.
    pub fn height(&self) -> i64 {
        self.coords.iter().sum()
    }

    pub fn neg(&self) -> Self {
        Root {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &Root) -> Self {
        Root {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// Index of the simple root, if this is one.
    pub fn as_simple(&self) -> Option<usize> {
        let mut idx = None;
        for (i, &c) in self.coords.iter().enumerate() {
            match c {
                0 => {}
                1 if idx.is_none() => idx = Some(i + 1),
                _ => return None,
            }
        }
        idx
    }

    /// The positive representative of `±self`, assuming `self` is a root
    /// (all coefficients share a sign).
    pub fn positive_rep(&self) -> Self {
        if self.height() < 0 {
            self.neg()
        } else {
            self.clone()
        }
    }
}

impl PartialOrd for Root {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical root order: by height, ties broken lexicographically on
/// coordinates. Fixes every downstream serialization order.
impl Ord for Root {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.height(), &self.coords).cmp(&(other.height(), &other.coords))
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coords.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if c > 0 && !first {
                write!(f, "+")?;
            }
            if c == -1 {
                write!(f, "-")?;
            } else if c != 1 {
                write!(f, "{c}*")?;
            }
            write!(f, "a{}", i + 1)?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// An element of the Weyl group, canonically represented by the images of
/// the simple roots. Equality is equality of these matrices.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct WeylElement {
    images: Vec<Root>,
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        WeylElement {
            images: (1..=rank).map(|i| Root::simple(rank, i)).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, r)| r.as_simple() == Some(i + 1))
    }

    /// Image of an arbitrary element of the root lattice.
    pub fn apply(&self, r: &Root) -> Root {
        let mut coords = vec![0i64; self.rank()];
        for (i, &c) in r.coords().iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (j, &x) in self.images[i].coords().iter().enumerate() {
                coords[j] += c * x;
            }
        }
        Root::new(coords)
    }

    /// Group multiplication as composition: `(a * b)(r) = a(b(r))`.
    pub fn mul(&self, other: &WeylElement) -> WeylElement {
        WeylElement {
            images: other.images.iter().map(|r| self.apply(r)).collect(),
        }
    }
}

/// A finite crystallographic root system.
#[derive(Clone, Debug)]
pub struct RootSystem {
    rank: usize,
    cartan: Vec<Vec<i64>>,
    /// Symmetrizing weights: `sym[i] * cartan[i][j] == sym[j] * cartan[j][i]`.
    sym: Vec<i64>,
    positive_roots: Vec<Root>,
    name: String,
}

impl PartialEq for RootSystem {
    fn eq(&self, other: &Self) -> bool {
        self.cartan == other.cartan
    }
}
impl Eq for RootSystem {}

/// Orbit closures larger than this are rejected as non-finite Cartan data.
const MAX_POSITIVE_ROOTS: usize = 1 << 12;

impl RootSystem {
    /// Build a root system from a type descriptor such as `"A4"`.
    pub fn by_name(name: &str) -> Result<Arc<RootSystem>> {
        let (letter, num) = name.split_at(1);
        let n: usize = num
            .parse()
            .map_err(|_| Error::UnsupportedSystem(name.to_string()))?;
        match letter {
            "A" if (1..=9).contains(&n) => Ok(Arc::new(Self::type_a(n)?)),
            _ => Err(Error::UnsupportedSystem(name.to_string())),
        }
    }

    /// The type `A_n` system: the Cartan matrix has 2 on the diagonal and
    /// -1 between adjacent nodes.
    pub fn type_a(n: usize) -> Result<RootSystem> {
        if n == 0 {
            return Err(Error::InvalidCartan("rank must be positive".into()));
        }
        let cartan: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            2
                        } else if i.abs_diff(j) == 1 {
                            -1
                        } else {
                            0
                        }
                    })
                    .collect()
            })
            .collect();
        Self::from_cartan(cartan, format!("A{n}"))
    }

    /// Build from an arbitrary Cartan matrix; rejects non-crystallographic
    /// or non-finite data.
    pub fn from_cartan(cartan: Vec<Vec<i64>>, name: String) -> Result<RootSystem> {
        let rank = cartan.len();
        if rank == 0 {
            return Err(Error::InvalidCartan("empty Cartan matrix".into()));
        }
        for (i, row) in cartan.iter().enumerate() {
            if row.len() != rank {
                return Err(Error::InvalidCartan("matrix is not square".into()));
            }
            if row[i] != 2 {
                return Err(Error::InvalidCartan(format!(
                    "diagonal entry ({i},{i}) is {} instead of 2",
                    row[i]
                )));
            }
            for (j, &c) in row.iter().enumerate() {
                if i != j {
                    if c > 0 {
                        return Err(Error::InvalidCartan(format!(
                            "off-diagonal entry ({i},{j}) is positive"
                        )));
                    }
                    if (c == 0) != (cartan[j][i] == 0) {
                        return Err(Error::InvalidCartan(format!(
                            "entries ({i},{j}) and ({j},{i}) disagree on zero"
                        )));
                    }
                }
            }
        }
        let sym = symmetrizer(&cartan)
            .ok_or_else(|| Error::InvalidCartan("matrix is not symmetrizable".into()))?;

        let mut rs = RootSystem {
            rank,
            cartan,
            sym,
            positive_roots: Vec::new(),
            name,
        };
        rs.positive_roots = rs.close_positive_roots()?;
        Ok(rs)
    }

    /// Orbit of the simple roots under the simple reflections, intersected
    /// with the positive cone.
    fn close_positive_roots(&self) -> Result<Vec<Root>> {
        let mut seen: std::collections::BTreeSet<Root> = (1..=self.rank)
            .map(|i| Root::simple(self.rank, i))
            .collect();
        let mut queue: Vec<Root> = seen.iter().cloned().collect();
        while let Some(r) = queue.pop() {
            for j in 1..=self.rank {
                let image = self.reflect_simple(j, &r);
                if image.height() > 0 && seen.insert(image.clone()) {
                    if seen.len() > MAX_POSITIVE_ROOTS {
                        return Err(Error::InvalidCartan(
                            "root closure does not terminate; system is not finite".into(),
                        ));
                    }
                    queue.push(image);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Positive roots in the canonical order (height, then lex).
    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    pub fn is_positive_root(&self, r: &Root) -> bool {
        self.positive_roots.binary_search(r).is_ok()
    }

    pub fn is_root(&self, r: &Root) -> bool {
        self.is_positive_root(&r.positive_rep())
    }

    /// The pairing `<a, b> = 2(a,b)/(b,b)`; `b` must be a root.
    pub fn pairing(&self, a: &Root, b: &Root) -> Result<i64> {
        if !self.is_root(b) {
            return Err(Error::NotARoot(b.to_string()));
        }
        // (x, a_j) = sym[j] * <x, a_j>, up to one global scalar.
        let inner = |x: &Root, y: &Root| -> i64 {
            let mut acc = 0;
            for (i, &xi) in x.coords().iter().enumerate() {
                if xi == 0 {
                    continue;
                }
                for (j, &yj) in y.coords().iter().enumerate() {
                    acc += xi * yj * self.cartan[i][j] * self.sym[j];
                }
            }
            acc
        };
        let num = 2 * inner(a, b);
        let den = inner(b, b);
        debug_assert!(den != 0 && num % den == 0);
        Ok(num / den)
    }

    /// Reflection of `target` through the wall of `axis`:
    /// `target - <target, axis> * axis`.
    pub fn reflect(&self, axis: &Root, target: &Root) -> Result<Root> {
        let k = self.pairing(target, axis)?;
        let mut coords = target.coords().to_vec();
        for (c, &a) in coords.iter_mut().zip(axis.coords()) {
            *c -= k * a;
        }
        Ok(Root::new(coords))
    }

    fn reflect_simple(&self, j: usize, target: &Root) -> Root {
        // <target, a_j> = sum_i target_i * cartan[i][j]
        let k: i64 = target
            .coords()
            .iter()
            .enumerate()
            .map(|(i, &c)| c * self.cartan[i][j - 1])
            .sum();
        let mut coords = target.coords().to_vec();
        coords[j - 1] -= k;
        Root::new(coords)
    }

    /// The simple reflection `s_i` (1-based index).
    pub fn simple_reflection(&self, i: usize) -> Result<WeylElement> {
        if i == 0 || i > self.rank {
            return Err(Error::IndexOutOfRange {
                index: i,
                rank: self.rank,
            });
        }
        Ok(WeylElement {
            images: (1..=self.rank)
                .map(|j| self.reflect_simple(i, &Root::simple(self.rank, j)))
                .collect(),
        })
    }

    /// The reflection `s_axis`; `axis` must be a root of this system.
    pub fn reflection_by_root(&self, axis: &Root) -> Result<WeylElement> {
        if !self.is_root(axis) {
            return Err(Error::NotARoot(axis.to_string()));
        }
        let images = (1..=self.rank)
            .map(|j| self.reflect(axis, &Root::simple(self.rank, j)))
            .collect::<Result<Vec<_>>>()?;
        Ok(WeylElement { images })
    }

    /// Product of simple reflections in the given order; the empty word is
    /// the identity.
    pub fn weyl_from_word(&self, word: &[usize]) -> Result<WeylElement> {
        let mut w = WeylElement::identity(self.rank);
        for &i in word {
            w = w.mul(&self.simple_reflection(i)?);
        }
        Ok(w)
    }

    /// Inverse of a Weyl element, computed from its permutation of the roots.
    pub fn inverse(&self, w: &WeylElement) -> WeylElement {
        let mut images = Vec::with_capacity(self.rank);
        'simple: for i in 1..=self.rank {
            let target = Root::simple(self.rank, i);
            for r in &self.positive_roots {
                if w.apply(r) == target {
                    images.push(r.clone());
                    continue 'simple;
                }
                let nr = r.neg();
                if w.apply(&nr) == target {
                    images.push(nr);
                    continue 'simple;
                }
            }
            unreachable!("Weyl element does not permute the roots");
        }
        WeylElement { images }
    }

    /// The unique positive root `b` with `t = s_b`, if `t` is a reflection.
    pub fn reflection_axis(&self, t: &WeylElement) -> Result<Root> {
        for b in &self.positive_roots {
            if t.apply(b) == b.neg() && *t == self.reflection_by_root(b)? {
                return Ok(b.clone());
            }
        }
        Err(Error::NotAReflection)
    }

    pub fn is_reflection(&self, t: &WeylElement) -> bool {
        self.reflection_axis(t).is_ok()
    }

    /// `w s_b w^-1 = s_{w(b)}` for a reflection `t = s_b`.
    pub fn conjugate_reflection(&self, w: &WeylElement, t: &WeylElement) -> Result<WeylElement> {
        let axis = self.reflection_axis(t)?;
        self.reflection_by_root(&w.apply(&axis).positive_rep())
    }

    /// A canonical reduced word for `w`: greedily strip descents, smallest
    /// index first.
    pub fn canonical_word(&self, w: &WeylElement) -> Vec<usize> {
        let mut w = w.clone();
        let mut stripped = Vec::new();
        'outer: while !w.is_identity() {
            for i in 1..=self.rank {
                if w.apply(&Root::simple(self.rank, i)).height() < 0 {
                    stripped.push(i);
                    w = w.mul(&self.simple_reflection(i).expect("index in range"));
                    continue 'outer;
                }
            }
            unreachable!("non-identity element without a descent");
        }
        stripped.reverse();
        stripped
    }

    /// All group elements, ordered by length then lexicographically on the
    /// canonical word.
    pub fn weyl_elements(&self) -> Vec<WeylElement> {
        let mut ordered: Vec<(Vec<usize>, WeylElement)> =
            vec![(Vec::new(), WeylElement::identity(self.rank))];
        let mut seen: std::collections::HashSet<WeylElement> =
            ordered.iter().map(|(_, w)| w.clone()).collect();
        let mut frontier = ordered.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for (word, w) in &frontier {
                for i in 1..=self.rank {
                    let cand = w.mul(&self.simple_reflection(i).expect("index in range"));
                    if seen.insert(cand.clone()) {
                        let mut cw = word.clone();
                        cw.push(i);
                        next.push((cw, cand));
                    }
                }
            }
            next.sort_by(|a, b| a.0.cmp(&b.0));
            ordered.extend(next.iter().cloned());
            frontier = next;
        }
        ordered.into_iter().map(|(_, w)| w).collect()
    }

    pub fn order(&self) -> usize {
        self.weyl_elements().len()
    }
}

/// Positive integer weights making `d_i c_ij` symmetric, if they exist.
fn symmetrizer(cartan: &[Vec<i64>]) -> Option<Vec<i64>> {
    let n = cartan.len();
    let mut d: Vec<Option<i64>> = vec![None; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(1);
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            let di = d[i].unwrap();
            for j in 0..n {
                if i == j || cartan[i][j] == 0 {
                    continue;
                }
                // d_i c_ij = d_j c_ji  =>  d_j = d_i c_ij / c_ji
                let num = di * cartan[i][j];
                let den = cartan[j][i];
                if num % den != 0 {
                    return None;
                }
                let dj = num / den;
                if dj <= 0 {
                    return None;
                }
                match d[j] {
                    None => {
                        d[j] = Some(dj);
                        stack.push(j);
                    }
                    Some(prev) if prev != dj => return None,
                    _ => {}
                }
            }
        }
    }
    d.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(name: &str) -> Arc<RootSystem> {
        RootSystem::by_name(name).unwrap()
    }

    #[test]
    fn a1_smallest_case() {
        let rs = sys("A1");
        assert_eq!(rs.rank(), 1);
        assert_eq!(rs.positive_roots(), &[Root::simple(1, 1)]);
    }

    /// Oracle: close {a1, a2} under s1, s2 by brute force.
    #[test]
    fn a2_positive_roots_match_brute_closure() {
        let rs = sys("A2");
        let mut closure: std::collections::BTreeSet<Root> =
            [Root::simple(2, 1), Root::simple(2, 2)]
                .into_iter()
                .collect();
        loop {
            let mut grew = false;
            for r in closure.clone() {
                for i in 1..=2 {
                    let im = rs.simple_reflection(i).unwrap().apply(&r);
                    if im.height() > 0 {
                        grew |= closure.insert(im);
                    }
                }
            }
            if !grew {
                break;
            }
        }
        assert_eq!(
            rs.positive_roots(),
            &closure.into_iter().collect::<Vec<_>>()[..]
        );
        // Canonical order: height first, lex on coordinates within a height.
        assert_eq!(
            rs.positive_roots(),
            &[
                Root::new(vec![0, 1]),
                Root::new(vec![1, 0]),
                Root::new(vec![1, 1])
            ]
        );
    }

    #[test]
    fn a4_has_ten_positive_roots() {
        assert_eq!(sys("A4").positive_roots().len(), 10);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(RootSystem::by_name("Z3").is_err());
        assert!(RootSystem::by_name("A0").is_err());
        assert!(RootSystem::from_cartan(vec![vec![2, 1], vec![1, 2]], "bad".into()).is_err());
        assert!(RootSystem::from_cartan(vec![vec![1]], "bad".into()).is_err());
        // Affine A1 tilde: not finite.
        assert!(RootSystem::from_cartan(vec![vec![2, -2], vec![-2, 2]], "aff".into()).is_err());
    }

    #[test]
    fn reflect_examples() {
        let a2 = sys("A2");
        let a1r = Root::simple(2, 1);
        let a2r = Root::simple(2, 2);
        assert_eq!(a2.reflect(&a1r, &a1r).unwrap(), a1r.neg());
        assert_eq!(a2.reflect(&a1r, &a2r).unwrap(), a1r.add(&a2r));
        let a4 = sys("A4");
        assert_eq!(
            a4.reflect(&Root::simple(4, 4), &Root::simple(4, 2))
                .unwrap(),
            Root::simple(4, 2)
        );
        assert!(a2.reflect(&Root::new(vec![2, 0]), &a1r).is_err());
    }

    #[test]
    fn reflect_is_involution() {
        let a4 = sys("A4");
        for axis in a4.positive_roots() {
            for target in a4.positive_roots() {
                let once = a4.reflect(axis, target).unwrap();
                assert_eq!(&a4.reflect(axis, &once).unwrap(), target);
            }
        }
    }

    #[test]
    fn word_examples() {
        let a4 = sys("A4");
        assert!(a4.weyl_from_word(&[]).unwrap().is_identity());
        // Braid relation, consistent with building w = w1 w3 w4 w3 either way.
        assert_eq!(
            a4.weyl_from_word(&[3, 4, 3]).unwrap(),
            a4.weyl_from_word(&[4, 3, 4]).unwrap()
        );
        assert!(a4.weyl_from_word(&[5]).is_err());
        let a2 = sys("A2");
        let long = a2.weyl_from_word(&[1, 2, 1]).unwrap();
        assert_eq!(long, a2.reflection_by_root(&Root::new(vec![1, 1])).unwrap());
    }

    #[test]
    fn braid_and_commutation_relations() {
        for name in ["A2", "A3", "A4"] {
            let rs = sys(name);
            for i in 1..=rs.rank() {
                for j in 1..=rs.rank() {
                    if i.abs_diff(j) == 1 {
                        assert_eq!(
                            rs.weyl_from_word(&[i, j, i]).unwrap(),
                            rs.weyl_from_word(&[j, i, j]).unwrap()
                        );
                    } else if i != j {
                        assert_eq!(
                            rs.weyl_from_word(&[i, j]).unwrap(),
                            rs.weyl_from_word(&[j, i]).unwrap()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn conjugate_reflection_examples() {
        let a2 = sys("A2");
        let s1 = a2.simple_reflection(1).unwrap();
        let s2 = a2.simple_reflection(2).unwrap();
        let id = WeylElement::identity(2);
        assert_eq!(a2.conjugate_reflection(&id, &s2).unwrap(), s2);
        assert_eq!(
            a2.conjugate_reflection(&s1, &s2).unwrap(),
            a2.reflection_by_root(&Root::new(vec![1, 1])).unwrap()
        );
        let a4 = sys("A4");
        let w1 = a4.simple_reflection(1).unwrap();
        let w3 = a4.simple_reflection(3).unwrap();
        assert_eq!(a4.conjugate_reflection(&w1, &w3).unwrap(), w3);
        assert!(a4
            .conjugate_reflection(&w1, &a4.weyl_from_word(&[1, 2]).unwrap())
            .is_err());
    }

    #[test]
    fn reflection_axis_examples() {
        let a2 = sys("A2");
        assert_eq!(
            a2.reflection_axis(&a2.simple_reflection(1).unwrap())
                .unwrap(),
            Root::simple(2, 1)
        );
        assert_eq!(
            a2.reflection_axis(&a2.weyl_from_word(&[1, 2, 1]).unwrap())
                .unwrap(),
            Root::new(vec![1, 1])
        );
        let a4 = sys("A4");
        assert_eq!(
            a4.reflection_axis(&a4.weyl_from_word(&[4, 3, 4]).unwrap())
                .unwrap(),
            Root::new(vec![0, 0, 1, 1])
        );
        assert!(a4
            .reflection_axis(&a4.weyl_from_word(&[1, 2]).unwrap())
            .is_err());
        assert!(a4.reflection_axis(&WeylElement::identity(4)).is_err());
    }

    #[test]
    fn conjugation_moves_the_axis() {
        let a3 = sys("A3");
        for w in a3.weyl_elements() {
            for b in a3.positive_roots() {
                let t = a3.reflection_by_root(b).unwrap();
                let conj = a3.conjugate_reflection(&w, &t).unwrap();
                assert_eq!(
                    a3.reflection_axis(&conj).unwrap(),
                    w.apply(b).positive_rep()
                );
            }
        }
    }

    #[test]
    fn group_orders() {
        assert_eq!(sys("A2").order(), 6);
        assert_eq!(sys("A3").order(), 24);
    }

    #[test]
    fn inverse_and_canonical_word() {
        let a4 = sys("A4");
        for w in a4.weyl_elements().into_iter().take(40) {
            let winv = a4.inverse(&w);
            assert!(w.mul(&winv).is_identity());
            assert!(winv.mul(&w).is_identity());
            assert_eq!(a4.weyl_from_word(&a4.canonical_word(&w)).unwrap(), w);
        }
    }
}
