//! Reflection sequences on finite ordered index sets, combinatorial
//! galleries, and the gallery groupoid: composition, inversion, twisting,
//! conjugation, and the gallery-type decision procedure.
//!
//! A gallery over a sequence `s` picks, at each position, either the
//! identity or the letter of `s`. Galleries over `s` compose with galleries
//! over the twisted sequence `s^(gamma)`, and the groupoid laws below are
//! exercised heavily by the test suite.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::rootsys::{Root, RootSystem, WeylElement};
use crate::{Error, Result};

/// A label extended with the two virtual endpoints.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Ext {
    NegInf,
    Label(i64),
    PosInf,
}

impl fmt::Display for Ext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ext::NegInf => write!(f, "-inf"),
            Ext::Label(i) => write!(f, "{i}"),
            Ext::PosInf => write!(f, "+inf"),
        }
    }
}

/// A finite totally ordered index set, stored as strictly increasing labels.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IndexSet {
    labels: Vec<i64>,
}

impl IndexSet {
    pub fn new(labels: Vec<i64>) -> Result<Self> {
        if labels.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidInput(
                "index labels must be strictly increasing".into(),
            ));
        }
        Ok(IndexSet { labels })
    }

    /// The set `{1, ..., n}`.
    pub fn initial(n: usize) -> Self {
        IndexSet {
            labels: (1..=n as i64).collect(),
        }
    }

    pub fn labels(&self) -> &[i64] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn contains(&self, label: i64) -> bool {
        self.labels.binary_search(&label).is_ok()
    }

    pub fn position(&self, label: i64) -> Option<usize> {
        self.labels.binary_search(&label).ok()
    }

    pub fn min(&self) -> Ext {
        self.labels.first().map_or(Ext::PosInf, |&l| Ext::Label(l))
    }

    pub fn max(&self) -> Ext {
        self.labels.last().map_or(Ext::NegInf, |&l| Ext::Label(l))
    }

    /// Number of labels `<= j`.
    pub fn count_le(&self, j: Ext) -> usize {
        match j {
            Ext::NegInf => 0,
            Ext::PosInf => self.labels.len(),
            Ext::Label(x) => self.labels.partition_point(|&l| l <= x),
        }
    }

    /// The previous element of the extended set.
    pub fn pred(&self, j: Ext) -> Ext {
        match j {
            Ext::NegInf => Ext::NegInf,
            Ext::PosInf => self.max(),
            Ext::Label(x) => {
                let k = self.labels.partition_point(|&l| l < x);
                if k == 0 {
                    Ext::NegInf
                } else {
                    Ext::Label(self.labels[k - 1])
                }
            }
        }
    }

    /// The next element of the extended set.
    pub fn succ(&self, j: Ext) -> Ext {
        match j {
            Ext::PosInf => Ext::PosInf,
            Ext::NegInf => self.min(),
            Ext::Label(x) => {
                let k = self.labels.partition_point(|&l| l <= x);
                if k == self.labels.len() {
                    Ext::PosInf
                } else {
                    Ext::Label(self.labels[k])
                }
            }
        }
    }

    /// Labels in the closed interval `[a, b]`.
    pub fn interval(&self, a: i64, b: i64) -> Vec<i64> {
        self.labels
            .iter()
            .copied()
            .filter(|&l| a <= l && l <= b)
            .collect()
    }
}

#[derive(PartialEq, Eq, Debug)]
struct SeqData {
    system: Arc<RootSystem>,
    index: IndexSet,
    letters: Vec<WeylElement>,
}

/// A sequence of reflections on an index set, over a fixed root system.
#[derive(Clone, Debug)]
pub struct ReflSequence {
    data: Arc<SeqData>,
}

impl PartialEq for ReflSequence {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.data, &other.data) || *self.data == *other.data
    }
}
impl Eq for ReflSequence {}

impl ReflSequence {
    /// Build a sequence; every letter must be a reflection of `system`.
    pub fn new(
        system: Arc<RootSystem>,
        index: IndexSet,
        letters: Vec<WeylElement>,
    ) -> Result<Self> {
        if letters.len() != index.len() {
            return Err(Error::DomainMismatch(format!(
                "{} letters for {} index labels",
                letters.len(),
                index.len()
            )));
        }
        for t in &letters {
            system.reflection_axis(t)?;
        }
        Ok(ReflSequence {
            data: Arc::new(SeqData {
                system,
                index,
                letters,
            }),
        })
    }

    /// Sequence of simple reflections on `{1..n}` given by word indices.
    pub fn from_simple_word(system: Arc<RootSystem>, word: &[usize]) -> Result<Self> {
        let letters = word
            .iter()
            .map(|&i| system.simple_reflection(i))
            .collect::<Result<Vec<_>>>()?;
        ReflSequence::new(system, IndexSet::initial(word.len()), letters)
    }

    pub fn system(&self) -> &Arc<RootSystem> {
        &self.data.system
    }

    pub fn index(&self) -> &IndexSet {
        &self.data.index
    }

    pub fn len(&self) -> usize {
        self.data.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.index.is_empty()
    }

    pub fn letters(&self) -> &[WeylElement] {
        &self.data.letters
    }

    pub fn letter_at(&self, label: i64) -> Option<&WeylElement> {
        self.data
            .index
            .position(label)
            .map(|p| &self.data.letters[p])
    }

    /// True when every letter is a simple reflection.
    pub fn is_simple(&self) -> bool {
        self.data.letters.iter().all(|t| {
            self.data
                .system
                .reflection_axis(t)
                .map(|a| a.as_simple().is_some())
                .unwrap_or(false)
        })
    }

    /// Axis of the letter at position `p` (always exists by construction).
    pub fn axis(&self, p: usize) -> Root {
        self.data
            .system
            .reflection_axis(&self.data.letters[p])
            .expect("letters are reflections")
    }

    /// Restriction to the labels in `[a, b]`.
    pub fn restrict(&self, a: i64, b: i64) -> Self {
        let labels = self.data.index.interval(a, b);
        let letters = labels
            .iter()
            .map(|&l| self.letter_at(l).expect("label in index").clone())
            .collect();
        ReflSequence {
            data: Arc::new(SeqData {
                system: self.data.system.clone(),
                index: IndexSet::new(labels).expect("sorted sublist"),
                letters,
            }),
        }
    }

    /// The twisted sequence `s^(gamma)`, with letter `i` equal to
    /// `gamma^i s_i (gamma^i)^-1`.
    pub fn twist(&self, gamma: &Gallery) -> Result<ReflSequence> {
        if gamma.over() != self {
            return Err(Error::DomainMismatch(
                "gallery is not over this sequence".into(),
            ));
        }
        let rs = &self.data.system;
        let mut prefix = WeylElement::identity(rs.rank());
        let mut letters = Vec::with_capacity(self.len());
        for p in 0..self.len() {
            prefix = prefix.mul(&gamma.entry(p));
            let axis = prefix.apply(&self.axis(p)).positive_rep();
            letters.push(rs.reflection_by_root(&axis)?);
        }
        Ok(ReflSequence {
            data: Arc::new(SeqData {
                system: rs.clone(),
                index: self.data.index.clone(),
                letters,
            }),
        })
    }

    /// The conjugated sequence `s^w` with letters `w s_i w^-1`.
    pub fn conjugate(&self, w: &WeylElement) -> ReflSequence {
        let rs = &self.data.system;
        let letters = self
            .data
            .letters
            .iter()
            .map(|t| {
                rs.conjugate_reflection(w, t)
                    .expect("letters are reflections")
            })
            .collect();
        ReflSequence {
            data: Arc::new(SeqData {
                system: rs.clone(),
                index: self.data.index.clone(),
                letters,
            }),
        }
    }

    /// All `2^n` galleries over this sequence, ordered lexicographically on
    /// the bit vector (a binary counter with the first position as the most
    /// significant bit).
    pub fn enumerate_galleries(&self) -> Vec<Gallery> {
        let n = self.len();
        assert!(
            n < 48,
            "gallery enumeration over {n} positions is not representable"
        );
        let mut out = Vec::with_capacity(1usize << n);
        for mask in 0..(1u64 << n) {
            let bits = (0..n).map(|p| (mask >> (n - 1 - p)) & 1 == 1).collect();
            out.push(Gallery {
                over: self.clone(),
                bits,
            });
        }
        out
    }

    /// Decides whether this sequence is of gallery type.
    pub fn is_gallery_type(&self) -> bool {
        self.gallerify().is_some()
    }

    /// Searches for a triple `(x, t, gamma)` with `t` simple, `gamma` a
    /// gallery over `t` and `t^(gamma) = s^x`; returns the first witness
    /// under the deterministic scan order (x by length-then-lex word order,
    /// the identity branch first at every position), or `None`.
    pub fn gallerify(&self) -> Option<Gallerification> {
        let rs = &self.data.system;
        let rank = rs.rank();
        let n = self.len();
        let axes: Vec<Root> = (0..n).map(|p| self.axis(p)).collect();

        for x in rs.weyl_elements() {
            let mut search = GallerifySearch {
                rs,
                // Conjugated axes x(b_p), positive representatives.
                conj: axes.iter().map(|b| x.apply(b).positive_rep()).collect(),
                t_letters: Vec::with_capacity(n),
                bits: Vec::with_capacity(n),
                dead: HashMap::new(),
            };
            let id = WeylElement::identity(rank);
            if search.dfs(0, &id, &id) {
                let t = ReflSequence {
                    data: Arc::new(SeqData {
                        system: rs.clone(),
                        index: self.data.index.clone(),
                        letters: search.t_letters,
                    }),
                };
                let gamma = Gallery {
                    over: t.clone(),
                    bits: search.bits,
                };
                let witness = Gallerification {
                    x,
                    seq: t,
                    gallery: gamma,
                };
                // Re-check the defining identity before returning.
                assert!(
                    witness.verify(self),
                    "gallerification witness failed verification"
                );
                return Some(witness);
            }
        }
        None
    }
}

/// Depth-first state for the witness search: the candidate simple letters
/// and bits chosen so far, plus the states known not to complete.
struct GallerifySearch<'a> {
    rs: &'a Arc<RootSystem>,
    conj: Vec<Root>,
    t_letters: Vec<WeylElement>,
    bits: Vec<bool>,
    dead: HashMap<(usize, WeylElement), ()>,
}

impl GallerifySearch<'_> {
    /// `g` is the gallery prefix before position `p`; a position extends
    /// the path only when `g^-1 x s_p x^-1 g` is simple, branching on the
    /// identity first.
    fn dfs(&mut self, p: usize, g: &WeylElement, g_inv: &WeylElement) -> bool {
        if p == self.conj.len() {
            return true;
        }
        if self.dead.contains_key(&(p, g.clone())) {
            return false;
        }
        let axis = g_inv.apply(&self.conj[p]).positive_rep();
        if axis.as_simple().is_some() {
            let r = self.rs.reflection_by_root(&axis).expect("axis is a root");
            self.t_letters.push(r.clone());
            self.bits.push(false);
            if self.dfs(p + 1, g, g_inv) {
                return true;
            }
            self.bits.pop();
            self.bits.push(true);
            let g2 = g.mul(&r);
            let g2_inv = r.mul(g_inv);
            if self.dfs(p + 1, &g2, &g2_inv) {
                return true;
            }
            self.bits.pop();
            self.t_letters.pop();
        }
        self.dead.insert((p, g.clone()), ());
        false
    }
}

/// A combinatorial gallery over a reflection sequence: at each position,
/// either the identity (bit 0) or the letter (bit 1).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Gallery {
    over: ReflSequence,
    bits: Vec<bool>,
}

impl Gallery {
    pub fn new(over: ReflSequence, bits: Vec<bool>) -> Result<Self> {
        if bits.len() != over.len() {
            return Err(Error::DomainMismatch(format!(
                "{} bits for a sequence of length {}",
                bits.len(),
                over.len()
            )));
        }
        Ok(Gallery { over, bits })
    }

    /// The all-identity gallery.
    pub fn trivial(over: ReflSequence) -> Self {
        let bits = vec![false; over.len()];
        Gallery { over, bits }
    }

    pub fn over(&self) -> &ReflSequence {
        &self.over
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn bit_at(&self, label: i64) -> Option<bool> {
        self.over.index().position(label).map(|p| self.bits[p])
    }

    /// Entry at position `p`: the letter if the bit is set, identity else.
    pub fn entry(&self, p: usize) -> WeylElement {
        if self.bits[p] {
            self.over.letters()[p].clone()
        } else {
            WeylElement::identity(self.over.system().rank())
        }
    }

    pub fn entry_at(&self, label: i64) -> Option<WeylElement> {
        self.over.index().position(label).map(|p| self.entry(p))
    }

    /// The prefix product of entries with labels `<= j`.
    pub fn prefix(&self, j: Ext) -> WeylElement {
        let upto = self.over.index().count_le(j);
        let mut w = WeylElement::identity(self.over.system().rank());
        for p in 0..upto {
            if self.bits[p] {
                w = w.mul(&self.over.letters()[p]);
            }
        }
        w
    }

    /// Prefix product up to an integer label.
    pub fn prefix_at(&self, j: i64) -> WeylElement {
        self.prefix(Ext::Label(j))
    }

    /// The full product of entries.
    pub fn full_product(&self) -> WeylElement {
        self.prefix(Ext::PosInf)
    }

    /// Composition: for `self` over `s` and `lambda` over `s^(self)`,
    /// the gallery over `s` with entries
    /// `(gamma^{i-1})^-1 lambda_i gamma^i`.
    pub fn compose(&self, lambda: &Gallery) -> Result<Gallery> {
        let twisted = self.over.twist(self)?;
        if lambda.over() != &twisted {
            return Err(Error::DomainMismatch(
                "second factor is not over the twisted sequence".into(),
            ));
        }
        let rs = self.over.system();
        let mut bits = Vec::with_capacity(self.bits.len());
        let mut prefix_prev = WeylElement::identity(rs.rank());
        for p in 0..self.bits.len() {
            let prefix_cur = if self.bits[p] {
                prefix_prev.mul(&self.over.letters()[p])
            } else {
                prefix_prev.clone()
            };
            let entry = rs
                .inverse(&prefix_prev)
                .mul(&lambda.entry(p))
                .mul(&prefix_cur);
            if entry.is_identity() {
                bits.push(false);
            } else {
                debug_assert_eq!(entry, self.over.letters()[p]);
                bits.push(true);
            }
            prefix_prev = prefix_cur;
        }
        Ok(Gallery {
            over: self.over.clone(),
            bits,
        })
    }

    /// The inverse gallery, over the twisted sequence, with entries
    /// `gamma^{i-1} (gamma^i)^-1`.
    pub fn invert(&self) -> Gallery {
        let twisted = self.over.twist(self).expect("gallery is over its sequence");
        let rs = self.over.system();
        let mut bits = Vec::with_capacity(self.bits.len());
        let mut prefix_prev = WeylElement::identity(rs.rank());
        for p in 0..self.bits.len() {
            let prefix_cur = if self.bits[p] {
                prefix_prev.mul(&self.over.letters()[p])
            } else {
                prefix_prev.clone()
            };
            let entry = prefix_prev.mul(&rs.inverse(&prefix_cur));
            if entry.is_identity() {
                bits.push(false);
            } else {
                debug_assert_eq!(
                    entry,
                    *twisted.letter_at(self.over.index().labels()[p]).unwrap()
                );
                bits.push(true);
            }
            prefix_prev = prefix_cur;
        }
        Gallery {
            over: twisted,
            bits,
        }
    }

    /// The entrywise conjugated gallery over `s^w`.
    pub fn conjugate(&self, w: &WeylElement) -> Gallery {
        Gallery {
            over: self.over.conjugate(w),
            bits: self.bits.clone(),
        }
    }

    /// Restriction to the labels in `[a, b]`.
    pub fn restrict(&self, a: i64, b: i64) -> Gallery {
        let over = self.over.restrict(a, b);
        let bits = over
            .index()
            .labels()
            .iter()
            .map(|&l| self.bit_at(l).expect("label in index"))
            .collect();
        Gallery { over, bits }
    }

    /// Compact bit string, most significant position first.
    pub fn bit_string(&self) -> String {
        self.bits
            .iter()
            .map(|&b| if b { '1' } else { '0' })
            .collect()
    }
}

/// A witness that a sequence `s` is of gallery type: a simple sequence `t`,
/// a gallery over it and an element `x` with `t^(gamma) = s^x`.
#[derive(Clone, Debug)]
pub struct Gallerification {
    pub x: WeylElement,
    pub seq: ReflSequence,
    pub gallery: Gallery,
}

impl Gallerification {
    /// Checks the defining identity `t^(gamma) = s^x` letterwise, together
    /// with simplicity of `t`.
    pub fn verify(&self, source: &ReflSequence) -> bool {
        self.seq.is_simple()
            && self.gallery.over() == &self.seq
            && match self.seq.twist(&self.gallery) {
                Ok(twisted) => twisted == source.conjugate(&self.x),
                Err(_) => false,
            }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> Arc<RootSystem> {
        RootSystem::by_name("A2").unwrap()
    }

    fn seq(system: &Arc<RootSystem>, word: &[usize]) -> ReflSequence {
        ReflSequence::from_simple_word(system.clone(), word).unwrap()
    }

    #[test]
    fn index_set_basics() {
        assert!(IndexSet::new(vec![1, 1]).is_err());
        let i = IndexSet::new(vec![1, 2, 3, 9, 10]).unwrap();
        assert_eq!(i.pred(Ext::Label(9)), Ext::Label(3));
        assert_eq!(i.succ(Ext::Label(3)), Ext::Label(9));
        assert_eq!(i.pred(Ext::Label(1)), Ext::NegInf);
        assert_eq!(i.succ(Ext::Label(10)), Ext::PosInf);
        assert_eq!(i.count_le(Ext::Label(8)), 3);
        let empty = IndexSet::new(vec![]).unwrap();
        assert_eq!(empty.min(), Ext::PosInf);
        assert_eq!(empty.max(), Ext::NegInf);
    }

    #[test]
    fn enumerate_counts() {
        let rs = a2();
        let empty = seq(&rs, &[]);
        assert_eq!(empty.enumerate_galleries().len(), 1);
        let s5 = seq(&rs, &[1, 2, 1, 2, 1]);
        let gals = s5.enumerate_galleries();
        assert_eq!(gals.len(), 32);
        // Lexicographic on the bit vector.
        for w in gals.windows(2) {
            assert!(w[0].bits() < w[1].bits());
        }
    }

    #[test]
    fn five_galleries_hit_the_target_product() {
        // Over t = (w4, w3, w4, w3, w4) in A4, exactly five galleries have
        // full product w3 w4 w3.
        let rs = RootSystem::by_name("A4").unwrap();
        let t = seq(&rs, &[4, 3, 4, 3, 4]);
        let target = rs.weyl_from_word(&[3, 4, 3]).unwrap();
        let hits: Vec<_> = t
            .enumerate_galleries()
            .into_iter()
            .filter(|g| g.full_product() == target)
            .collect();
        assert_eq!(hits.len(), 5);
    }

    #[test]
    fn prefix_examples() {
        let rs = RootSystem::by_name("A4").unwrap();
        let s = seq(&rs, &[4, 3, 4, 2, 1, 2, 1, 2, 3, 4]);
        let lam =
            Gallery::new(s.clone(), "0010001011".chars().map(|c| c == '1').collect()).unwrap();
        assert!(lam.prefix(Ext::NegInf).is_identity());
        assert_eq!(lam.prefix_at(3), rs.weyl_from_word(&[4]).unwrap());
        assert_eq!(lam.prefix_at(10), rs.weyl_from_word(&[1, 3, 4, 3]).unwrap());
        assert_eq!(
            lam.full_product(),
            rs.weyl_from_word(&[1, 3, 4, 3]).unwrap()
        );
    }

    #[test]
    fn twist_examples() {
        let rs = a2();
        let s = seq(&rs, &[1, 2]);
        let eps = Gallery::trivial(s.clone());
        assert_eq!(s.twist(&eps).unwrap(), s);

        let gamma = Gallery::new(s.clone(), vec![true, false]).unwrap();
        let twisted = s.twist(&gamma).unwrap();
        assert_eq!(twisted.letters()[0], rs.simple_reflection(1).unwrap());
        assert_eq!(
            twisted.letters()[1],
            rs.reflection_by_root(&Root::new(vec![1, 1])).unwrap()
        );

        // Galleries over other sequences are rejected.
        let other = seq(&rs, &[2, 1]);
        assert!(other.twist(&gamma).is_err());
    }

    #[test]
    fn compose_and_invert_examples() {
        let rs = a2();
        let s = seq(&rs, &[1, 2]);
        let gamma = Gallery::new(s.clone(), vec![true, false]).unwrap();
        let twisted = s.twist(&gamma).unwrap();
        let lam = Gallery::new(twisted.clone(), vec![false, true]).unwrap();
        let comp = gamma.compose(&lam).unwrap();
        assert_eq!(comp.bits(), &[true, true]);

        let eps = Gallery::trivial(s.clone());
        assert_eq!(
            gamma.compose(&Gallery::trivial(twisted.clone())).unwrap(),
            gamma
        );
        assert_eq!(eps.compose(&gamma).unwrap(), gamma);
        // lam is over the twist of s, not over s itself.
        assert!(gamma.compose(&gamma).is_err());

        let inv = gamma.invert();
        assert_eq!(inv.bits(), gamma.bits());
        assert_eq!(inv.over(), &twisted);
        assert_eq!(gamma.compose(&inv).unwrap(), eps);
        assert_eq!(inv.compose(&gamma).unwrap(), Gallery::trivial(twisted));
        assert_eq!(inv.invert(), gamma);
    }

    #[test]
    fn conjugate_examples() {
        let rs = a2();
        let s = seq(&rs, &[2]);
        let s1 = rs.simple_reflection(1).unwrap();
        let conj = s.conjugate(&s1);
        assert_eq!(
            conj.letters()[0],
            rs.reflection_by_root(&Root::new(vec![1, 1])).unwrap()
        );
        assert_eq!(s.conjugate(&WeylElement::identity(2)), s);
    }

    #[test]
    fn gallerify_simple_sequence_is_immediate() {
        let rs = a2();
        let s = seq(&rs, &[1, 2, 1]);
        let g = s.gallerify().unwrap();
        assert!(g.x.is_identity());
        assert_eq!(g.seq, s);
        assert!(g.gallery.bits().iter().all(|&b| !b));
    }

    #[test]
    fn gallerify_long_root_in_a2() {
        let rs = a2();
        let long = rs.reflection_by_root(&Root::new(vec![1, 1])).unwrap();
        let s = ReflSequence::new(rs.clone(), IndexSet::initial(1), vec![long]).unwrap();
        let g = s.gallerify().unwrap();
        assert!(g.verify(&s));
        // First witness in scan order: x = s1 conjugates s_{a1+a2} to s2.
        assert_eq!(g.x, rs.simple_reflection(1).unwrap());
        assert_eq!(g.seq.letters()[0], rs.simple_reflection(2).unwrap());
        assert_eq!(g.gallery.bits(), &[false]);
    }

    #[test]
    fn gallery_type_respects_conjugation() {
        let rs = RootSystem::by_name("A3").unwrap();
        let roots: Vec<_> = rs.positive_roots().to_vec();
        // A sample of two-letter sequences, conjugated by every w.
        for b1 in &roots {
            for b2 in &roots {
                let s = ReflSequence::new(
                    rs.clone(),
                    IndexSet::initial(2),
                    vec![
                        rs.reflection_by_root(b1).unwrap(),
                        rs.reflection_by_root(b2).unwrap(),
                    ],
                )
                .unwrap();
                let base = s.is_gallery_type();
                for w in rs.weyl_elements().into_iter().take(6) {
                    assert_eq!(s.conjugate(&w).is_gallery_type(), base);
                }
            }
        }
    }

    #[test]
    fn conjugation_equivariance_exhaustive_in_a2() {
        // Every sequence of length <= 3 against the whole group.
        let rs = a2();
        let letters: Vec<WeylElement> = rs
            .positive_roots()
            .iter()
            .map(|b| rs.reflection_by_root(b).unwrap())
            .collect();
        let group = rs.weyl_elements();
        for len in 0..=3usize {
            for code in 0..letters.len().pow(len as u32) {
                let mut c = code;
                let seq_letters: Vec<WeylElement> = (0..len)
                    .map(|_| {
                        let k = c % letters.len();
                        c /= letters.len();
                        letters[k].clone()
                    })
                    .collect();
                let s = ReflSequence::new(rs.clone(), IndexSet::initial(len), seq_letters).unwrap();
                let base = s.is_gallery_type();
                for w in &group {
                    assert_eq!(s.conjugate(w).is_gallery_type(), base);
                }
            }
        }
    }

    #[test]
    fn empty_sequence_is_gallery_type() {
        let rs = a2();
        let s = seq(&rs, &[]);
        assert!(s.is_gallery_type());
    }

    #[test]
    fn a3_has_non_gallery_type_sequences() {
        // (s_{a2+a3}, s_{a1}, s_{a2}, s_{a3}) admits no witness.
        let rs = RootSystem::by_name("A3").unwrap();
        let s = ReflSequence::new(
            rs.clone(),
            IndexSet::initial(4),
            vec![
                rs.reflection_by_root(&Root::new(vec![0, 1, 1])).unwrap(),
                rs.simple_reflection(1).unwrap(),
                rs.simple_reflection(2).unwrap(),
                rs.simple_reflection(3).unwrap(),
            ],
        )
        .unwrap();
        assert!(s.gallerify().is_none());
        assert!(!s.is_gallery_type());
    }
}
