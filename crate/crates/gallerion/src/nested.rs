//! Nested structures of index intervals, constraint maps into the Weyl
//! group, and their derived data: projections along families of disjoint
//! pairs, segment families, local sequences, constrained gallery
//! enumeration and the assembling bijection.

use std::collections::BTreeMap;

use crate::gallery::{Gallery, IndexSet, ReflSequence};
use crate::rootsys::WeylElement;
use crate::{Error, Result};

/// A nested structure: intervals with pairwise disjoint endpoint sets,
/// pairwise disjoint or nested.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NestedStructure {
    over: IndexSet,
    pairs: Vec<(i64, i64)>,
}

impl NestedStructure {
    /// Builds and validates a structure. Pairs are stored sorted by
    /// `(r1, r2)`.
    pub fn new(over: IndexSet, mut pairs: Vec<(i64, i64)>) -> Result<Self> {
        pairs.sort_unstable();
        for &(r1, r2) in &pairs {
            if !over.contains(r1) || !over.contains(r2) {
                return Err(Error::InvalidInput(format!(
                    "pair ({r1},{r2}) has an endpoint outside the index set"
                )));
            }
        }
        let s = NestedStructure { over, pairs };
        s.validate()?;
        Ok(s)
    }

    /// Checks the three axioms; the error names the first violated axiom
    /// and the offending pair(s).
    pub fn validate(&self) -> Result<()> {
        for &(r1, r2) in &self.pairs {
            if r1 > r2 {
                return Err(Error::InvalidStructure(format!(
                    "axiom 1: pair ({r1},{r2}) is decreasing"
                )));
            }
        }
        for (k, &r) in self.pairs.iter().enumerate() {
            for &q in &self.pairs[k + 1..] {
                if r.0 == q.0 || r.0 == q.1 || r.1 == q.0 || r.1 == q.1 {
                    return Err(Error::InvalidStructure(format!(
                        "axiom 2: pairs ({},{}) and ({},{}) share an endpoint",
                        r.0, r.1, q.0, q.1
                    )));
                }
                let disjoint = r.1 < q.0 || q.1 < r.0;
                let nested = (r.0 <= q.0 && q.1 <= r.1) || (q.0 <= r.0 && r.1 <= q.1);
                if !disjoint && !nested {
                    return Err(Error::InvalidStructure(format!(
                        "axiom 3: pairs ({},{}) and ({},{}) overlap",
                        r.0, r.1, q.0, q.1
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn over(&self) -> &IndexSet {
        &self.over
    }

    pub fn pairs(&self) -> &[(i64, i64)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains_pair(&self, r: (i64, i64)) -> bool {
        self.pairs.binary_search(&r).is_ok()
    }

    /// The pair `(min I, max I)`, when the index set is nonempty.
    pub fn span_pair(&self) -> Option<(i64, i64)> {
        match (self.over.labels().first(), self.over.labels().last()) {
            (Some(&a), Some(&b)) => Some((a, b)),
            _ => None,
        }
    }

    /// Closed structures contain the span pair.
    pub fn is_closed(&self) -> bool {
        self.span_pair().is_some_and(|sp| self.contains_pair(sp))
    }

    /// Inclusion-maximal pairs of an arbitrary pair list, optionally after
    /// removing a designated span pair; sorted increasingly.
    pub fn maximal_of(pairs: &[(i64, i64)], exclude: Option<(i64, i64)>) -> Vec<(i64, i64)> {
        let kept: Vec<(i64, i64)> = pairs
            .iter()
            .copied()
            .filter(|&p| Some(p) != exclude)
            .collect();
        let mut out: Vec<(i64, i64)> = kept
            .iter()
            .copied()
            .filter(|&p| !kept.iter().any(|&q| q != p && q.0 <= p.0 && p.1 <= q.1))
            .collect();
        out.sort_unstable();
        out
    }
}

/// A reflection sequence together with a nested structure and one Weyl
/// group constraint per pair.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConstrainedFamily {
    seq: ReflSequence,
    structure: NestedStructure,
    v: Vec<WeylElement>,
}

impl ConstrainedFamily {
    /// `pairs` and `v` are aligned; they are sorted together into the
    /// canonical pair order.
    pub fn new(seq: ReflSequence, pairs: Vec<(i64, i64)>, v: Vec<WeylElement>) -> Result<Self> {
        if pairs.len() != v.len() {
            return Err(Error::DomainMismatch(format!(
                "{} pairs but {} constraint values",
                pairs.len(),
                v.len()
            )));
        }
        let mut paired: Vec<((i64, i64), WeylElement)> = pairs.into_iter().zip(v).collect();
        paired.sort_by_key(|&(p, _)| p);
        let (pairs, v): (Vec<_>, Vec<_>) = paired.into_iter().unzip();
        let structure = NestedStructure::new(seq.index().clone(), pairs)?;
        Ok(ConstrainedFamily { seq, structure, v })
    }

    /// The unconstrained family over a sequence.
    pub fn unconstrained(seq: ReflSequence) -> Self {
        let structure = NestedStructure::new(seq.index().clone(), Vec::new())
            .expect("empty structure is valid");
        ConstrainedFamily {
            seq,
            structure,
            v: Vec::new(),
        }
    }

    /// A single full-product constraint (the span pair).
    pub fn with_full_product(seq: ReflSequence, w: WeylElement) -> Result<Self> {
        let span = match (seq.index().labels().first(), seq.index().labels().last()) {
            (Some(&a), Some(&b)) => (a, b),
            _ => return Err(Error::InvalidInput("empty sequence has no span".into())),
        };
        ConstrainedFamily::new(seq, vec![span], vec![w])
    }

    pub fn seq(&self) -> &ReflSequence {
        &self.seq
    }

    pub fn structure(&self) -> &NestedStructure {
        &self.structure
    }

    pub fn constraints(&self) -> impl Iterator<Item = ((i64, i64), &WeylElement)> {
        self.structure.pairs().iter().copied().zip(self.v.iter())
    }

    pub fn constraint_of(&self, r: (i64, i64)) -> Option<&WeylElement> {
        self.structure
            .pairs()
            .binary_search(&r)
            .ok()
            .map(|k| &self.v[k])
    }

    /// Product of gallery entries over the labels in `[a, b]`.
    fn interval_product(gallery: &Gallery, a: i64, b: i64) -> WeylElement {
        let rank = gallery.over().system().rank();
        let mut w = WeylElement::identity(rank);
        for &l in gallery.over().index().labels() {
            if a <= l && l <= b {
                w = w.mul(&gallery.entry_at(l).expect("label in index"));
            }
        }
        w
    }

    /// Whether a gallery over this sequence satisfies every constraint.
    pub fn satisfies(&self, gallery: &Gallery) -> Result<bool> {
        if gallery.over() != &self.seq {
            return Err(Error::DomainMismatch(
                "gallery is not over the family's sequence".into(),
            ));
        }
        for ((r1, r2), v) in self.constraints() {
            if &Self::interval_product(gallery, r1, r2) != v {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Inclusion-maximal pairs, optionally removing the span pair first
    /// (which requires the structure to be closed).
    pub fn maximal_pairs(&self, exclude_span: bool) -> Result<Vec<(i64, i64)>> {
        let exclude = if exclude_span {
            if !self.structure.is_closed() {
                return Err(Error::HypothesisFailed(
                    "cannot exclude the span pair of a non-closed structure".into(),
                ));
            }
            self.structure.span_pair()
        } else {
            None
        };
        Ok(NestedStructure::maximal_of(self.structure.pairs(), exclude))
    }

    /// Projection along a set of pairs of `R` with pairwise disjoint
    /// intervals.
    pub fn project(&self, f_pairs: &[(i64, i64)]) -> Result<ProjectionData> {
        let mut f = f_pairs.to_vec();
        f.sort_unstable();
        for &p in &f {
            if !self.structure.contains_pair(p) {
                return Err(Error::InvalidInput(format!(
                    "pair ({},{}) is not in the structure",
                    p.0, p.1
                )));
            }
        }
        for (k, &p) in f.iter().enumerate() {
            for &q in &f[k + 1..] {
                if !(p.1 < q.0 || q.1 < p.0) {
                    return Err(Error::InvalidInput(format!(
                        "projection pairs ({},{}) and ({},{}) are not disjoint",
                        p.0, p.1, q.0, q.1
                    )));
                }
            }
        }

        // I^F: labels outside every projected interval.
        let reduced_labels: Vec<i64> = self
            .seq
            .index()
            .labels()
            .iter()
            .copied()
            .filter(|&l| !f.iter().any(|&(a, b)| a <= l && l <= b))
            .collect();

        // Accumulated constraint prefixes v^i, with the sentinel convention
        // that everything before the first projected interval gets 1.
        let rank = self.seq.system().rank();
        let mut v_prefix: BTreeMap<i64, WeylElement> = BTreeMap::new();
        for &l in &reduced_labels {
            let mut w = WeylElement::identity(rank);
            for &p in &f {
                if p.1 < l {
                    w = w.mul(self.constraint_of(p).expect("pair in structure"));
                }
            }
            v_prefix.insert(l, w);
        }

        let rs = self.seq.system().clone();
        let reduced_letters = reduced_labels
            .iter()
            .map(|&l| {
                let t = self.seq.letter_at(l).expect("label in index");
                rs.conjugate_reflection(&v_prefix[&l], t)
            })
            .collect::<Result<Vec<_>>>()?;
        let reduced_seq =
            ReflSequence::new(rs.clone(), IndexSet::new(reduced_labels)?, reduced_letters)?;

        // R^F: pairs not contained in any projected interval, with
        // constraints v^{r1} v_r (v^{r2})^-1.
        let mut reduced_pairs = Vec::new();
        let mut reduced_v = Vec::new();
        for (r, v) in self.constraints() {
            if f.iter().any(|&(a, b)| a <= r.0 && r.1 <= b) {
                continue;
            }
            reduced_pairs.push(r);
            let left = &v_prefix[&r.0];
            let right = &v_prefix[&r.1];
            reduced_v.push(left.mul(v).mul(&rs.inverse(right)));
        }
        let reduced = ConstrainedFamily::new(reduced_seq, reduced_pairs, reduced_v)?;

        let f_constraints = f
            .iter()
            .map(|&p| self.constraint_of(p).expect("pair in structure").clone())
            .collect();

        Ok(ProjectionData {
            source: self.clone(),
            f_pairs: f,
            f_constraints,
            reduced,
            v_prefix,
        })
    }

    /// The closed family on `[f]`: the restricted sequence, the pairs
    /// contained in `f` (including `f` itself) and the restricted
    /// constraints.
    pub fn segment(&self, f: (i64, i64)) -> Result<ConstrainedFamily> {
        if !self.structure.contains_pair(f) {
            return Err(Error::InvalidInput(format!(
                "pair ({},{}) is not in the structure",
                f.0, f.1
            )));
        }
        let seq = self.seq.restrict(f.0, f.1);
        let mut pairs = Vec::new();
        let mut v = Vec::new();
        for (r, w) in self.constraints() {
            if f.0 <= r.0 && r.1 <= f.1 {
                pairs.push(r);
                v.push(w.clone());
            }
        }
        ConstrainedFamily::new(seq, pairs, v)
    }

    /// Maximal pairs strictly contained in `r`, sorted increasingly.
    fn inner_maximal(&self, r: (i64, i64)) -> Vec<(i64, i64)> {
        let inner: Vec<(i64, i64)> = self
            .structure
            .pairs()
            .iter()
            .copied()
            .filter(|&q| q != r && r.0 <= q.0 && q.1 <= r.1)
            .collect();
        NestedStructure::maximal_of(&inner, None)
    }

    /// The local sequence on `I(r, R)`: the interval of `r` minus its
    /// maximal strict sub-intervals, letters conjugated by the accumulated
    /// inner constraints.
    pub fn local_sequence(&self, r: (i64, i64)) -> Result<ReflSequence> {
        if !self.structure.contains_pair(r) {
            return Err(Error::InvalidInput(format!(
                "pair ({},{}) is not in the structure",
                r.0, r.1
            )));
        }
        let inner = self.inner_maximal(r);
        let labels: Vec<i64> = self
            .seq
            .index()
            .interval(r.0, r.1)
            .into_iter()
            .filter(|&l| !inner.iter().any(|&(a, b)| a <= l && l <= b))
            .collect();
        let rs = self.seq.system().clone();
        let rank = rs.rank();
        let letters = labels
            .iter()
            .map(|&l| {
                let mut w = WeylElement::identity(rank);
                for &p in &inner {
                    if p.1 < l {
                        w = w.mul(self.constraint_of(p).expect("pair in structure"));
                    }
                }
                rs.conjugate_reflection(&w, self.seq.letter_at(l).expect("label in index"))
            })
            .collect::<Result<Vec<_>>>()?;
        ReflSequence::new(rs, IndexSet::new(labels)?, letters)
    }

    /// A pair `(s, v)` is of gallery type when every local sequence is.
    pub fn is_pair_gallery_type(&self) -> bool {
        self.structure.pairs().iter().all(|&r| {
            self.local_sequence(r)
                .map(|s| s.is_gallery_type())
                .unwrap_or(false)
        })
    }

    /// All galleries satisfying every constraint, in lexicographic
    /// bit-vector order. Enumeration proceeds interval by interval: each
    /// maximal interval is enumerated recursively and filtered by its
    /// product, free positions range over all bits, and the blocks are
    /// assembled.
    pub fn enumerate_constrained(&self) -> Vec<Gallery> {
        if self.structure.is_empty() {
            return self.seq.enumerate_galleries();
        }
        let maximal = NestedStructure::maximal_of(self.structure.pairs(), None);

        // Candidate bit blocks per maximal interval.
        let mut blocks: Vec<(Vec<i64>, Vec<Vec<bool>>)> = Vec::new();
        for &m in &maximal {
            let seg_seq = self.seq.restrict(m.0, m.1);
            let mut inner_pairs = Vec::new();
            let mut inner_v = Vec::new();
            for (r, w) in self.constraints() {
                if r != m && m.0 <= r.0 && r.1 <= m.1 {
                    inner_pairs.push(r);
                    inner_v.push(w.clone());
                }
            }
            let inner = ConstrainedFamily::new(seg_seq, inner_pairs, inner_v)
                .expect("sub-structure of a valid structure");
            let target = self.constraint_of(m).expect("maximal pair in structure");
            let candidates: Vec<Vec<bool>> = inner
                .enumerate_constrained()
                .into_iter()
                .filter(|g| &g.full_product() == target)
                .map(|g| g.bits().to_vec())
                .collect();
            blocks.push((inner.seq.index().labels().to_vec(), candidates));
        }

        let free: Vec<i64> = self
            .seq
            .index()
            .labels()
            .iter()
            .copied()
            .filter(|&l| !maximal.iter().any(|&(a, b)| a <= l && l <= b))
            .collect();
        assert!(
            free.len() < 48,
            "enumeration over {} free positions is not representable",
            free.len()
        );

        // Assemble every combination and sort into the order contract.
        let combos: usize = blocks.iter().map(|(_, c)| c.len()).product();
        if combos == 0 {
            return Vec::new();
        }
        let positions: BTreeMap<i64, usize> = self
            .seq
            .index()
            .labels()
            .iter()
            .enumerate()
            .map(|(p, &l)| (l, p))
            .collect();
        let mut bit_vectors: Vec<Vec<bool>> = Vec::new();
        for combo in 0..combos {
            let mut rem = combo;
            let choice: Vec<usize> = blocks
                .iter()
                .map(|(_, c)| {
                    let k = rem % c.len();
                    rem /= c.len();
                    k
                })
                .collect();
            for mask in 0..(1u64 << free.len()) {
                let mut bits = vec![false; self.seq.len()];
                for (k, &l) in free.iter().enumerate() {
                    bits[positions[&l]] = (mask >> (free.len() - 1 - k)) & 1 == 1;
                }
                for (b, (labels, candidates)) in blocks.iter().enumerate() {
                    for (k, &l) in labels.iter().enumerate() {
                        bits[positions[&l]] = candidates[choice[b]][k];
                    }
                }
                bit_vectors.push(bits);
            }
        }
        bit_vectors.sort_unstable();
        bit_vectors
            .into_iter()
            .map(|bits| Gallery::new(self.seq.clone(), bits).expect("lengths match"))
            .collect()
    }

    /// The induction index `(|R|, 0 or 1)`, second component 0 exactly for
    /// closed structures.
    pub fn induction_index(&self) -> (usize, u8) {
        (
            self.structure.len(),
            if self.structure.is_closed() { 0 } else { 1 },
        )
    }
}

/// Data of a projection along disjoint pairs: the surviving index set with
/// conjugated letters, the reduced constraints, and the accumulated
/// constraint prefixes.
#[derive(Clone, Debug)]
pub struct ProjectionData {
    source: ConstrainedFamily,
    f_pairs: Vec<(i64, i64)>,
    f_constraints: Vec<WeylElement>,
    reduced: ConstrainedFamily,
    v_prefix: BTreeMap<i64, WeylElement>,
}

impl ProjectionData {
    pub fn source(&self) -> &ConstrainedFamily {
        &self.source
    }

    pub fn f_pairs(&self) -> &[(i64, i64)] {
        &self.f_pairs
    }

    pub fn f_constraints(&self) -> &[WeylElement] {
        &self.f_constraints
    }

    /// The reduced family `(s^F, R^F, v^F)`.
    pub fn reduced(&self) -> &ConstrainedFamily {
        &self.reduced
    }

    pub fn v_prefix(&self, label: i64) -> Option<&WeylElement> {
        self.v_prefix.get(&label)
    }

    /// Product `v_{f^1} ... v_{f^m}` of the first `m` projected
    /// constraints.
    pub fn v_product(&self, m: usize) -> WeylElement {
        let rank = self.source.seq().system().rank();
        self.f_constraints[..m]
            .iter()
            .fold(WeylElement::identity(rank), |acc, v| acc.mul(v))
    }

    /// Image of a constrained gallery under the fixed-point projection:
    /// entries on the surviving labels, conjugated by the accumulated
    /// prefixes.
    pub fn project_fixed(&self, gallery: &Gallery) -> Result<Gallery> {
        if !self.source.satisfies(gallery)? {
            return Err(Error::ConstraintViolated(
                "gallery does not satisfy the family's constraints".into(),
            ));
        }
        let bits = self
            .reduced
            .seq()
            .index()
            .labels()
            .iter()
            .map(|&l| gallery.bit_at(l).expect("surviving label"))
            .collect();
        let image = Gallery::new(self.reduced.seq().clone(), bits)?;
        if !self.reduced.satisfies(&image)? {
            return Err(Error::ConstraintViolated(
                "projected gallery violates the reduced constraints".into(),
            ));
        }
        Ok(image)
    }

    /// Inverse of `(project_fixed, restriction to the projected
    /// intervals)`: assembles the unique constrained gallery with the given
    /// image and segments.
    pub fn theta(&self, image: &Gallery, segments: &[Gallery]) -> Result<Gallery> {
        if !self.reduced.satisfies(image)? {
            return Err(Error::ConstraintViolated(
                "image does not satisfy the reduced constraints".into(),
            ));
        }
        if segments.len() != self.f_pairs.len() {
            return Err(Error::DomainMismatch(format!(
                "{} segments for {} projected pairs",
                segments.len(),
                self.f_pairs.len()
            )));
        }
        for (seg, &f) in segments.iter().zip(&self.f_pairs) {
            let family = self.source.segment(f)?;
            if !family.satisfies(seg)? {
                return Err(Error::ConstraintViolated(format!(
                    "segment for ({},{}) violates its constraints",
                    f.0, f.1
                )));
            }
        }
        let mut bits = Vec::with_capacity(self.source.seq().len());
        for &l in self.source.seq().index().labels() {
            if let Some(b) = image.bit_at(l) {
                bits.push(b);
            } else {
                let m = self
                    .f_pairs
                    .iter()
                    .position(|&(a, b)| a <= l && l <= b)
                    .expect("label in some projected interval");
                bits.push(segments[m].bit_at(l).expect("label in segment"));
            }
        }
        let assembled = Gallery::new(self.source.seq().clone(), bits)?;
        if !self.source.satisfies(&assembled)? {
            return Err(Error::ConstraintViolated(
                "assembled gallery violates the source constraints".into(),
            ));
        }
        Ok(assembled)
    }
}
