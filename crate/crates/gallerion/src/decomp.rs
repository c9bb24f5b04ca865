//! The tensor-product decomposition layer.
//!
//! `prepare` assembles, for a constrained family, the projected first
//! factor with its gallerification, the segment families, and (in closed
//! mode) the transported full-product constraint. On top of that sit the
//! twisted bimodule actions, the decomposition map on polynomial-valued
//! functions, the induced twisted product on fraction-valued functions, and
//! a graded rational-coefficient verifier for the isomorphism statement.

use std::collections::HashMap;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use crate::gallery::{Ext, Gallerification, Gallery};
use crate::gkm::{same_domain, spanning_set, DualFunction, EqFunction};
use crate::nested::{ConstrainedFamily, ProjectionData};
use crate::polyring::{weyl_act, Monomial, PolyS};
use crate::rootsys::WeylElement;
use crate::{Error, Result};

/// Which pairs are split off as tensor factors.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DecompMode {
    /// Split along all maximal pairs; the first factor is unconstrained.
    Maximal,
    /// Split along the maximal pairs below the span; the span constraint
    /// transports onto the first factor. Requires a closed structure.
    Closed,
}

/// Everything derived from a family that the decomposition map needs.
#[derive(Clone, Debug)]
pub struct Decomposition {
    mode: DecompMode,
    family: ConstrainedFamily,
    projection: ProjectionData,
    gallerification: Gallerification,
    /// Transported full-product constraint (closed mode only).
    target: Option<WeylElement>,
    first_family: ConstrainedFamily,
    first_domain: Arc<Vec<Gallery>>,
    domain: Arc<Vec<Gallery>>,
    segment_families: Vec<ConstrainedFamily>,
    segment_domains: Vec<Arc<Vec<Gallery>>>,
}

/// Checks the mode's hypotheses and computes the decomposition data.
pub fn prepare(family: &ConstrainedFamily, mode: DecompMode) -> Result<Decomposition> {
    if mode == DecompMode::Closed && !family.structure().is_closed() {
        return Err(Error::HypothesisFailed(
            "closed mode requires the structure to contain the span pair".into(),
        ));
    }
    if !family.is_pair_gallery_type() {
        return Err(Error::HypothesisFailed(
            "the pair (s, v) is not of gallery type".into(),
        ));
    }
    let f = family.maximal_pairs(mode == DecompMode::Closed)?;
    let projection = family.project(&f)?;
    let gallerification = projection.reduced().seq().gallerify().ok_or_else(|| {
        Error::HypothesisFailed("the projected sequence is not of gallery type".into())
    })?;
    let rs = family.seq().system().clone();

    // In closed mode the first factor carries the constraint
    // x w (x v_{f^1} ... v_{f^n})^-1 gamma^max.
    let target = match mode {
        DecompMode::Maximal => None,
        DecompMode::Closed => {
            let span = family.structure().span_pair().expect("closed structure");
            let w = family.constraint_of(span).expect("span constraint");
            let xv = gallerification.x.mul(&projection.v_product(f.len()));
            Some(
                gallerification
                    .x
                    .mul(w)
                    .mul(&rs.inverse(&xv))
                    .mul(&gallerification.gallery.full_product()),
            )
        }
    };
    let first_family = match &target {
        None => ConstrainedFamily::unconstrained(gallerification.seq.clone()),
        Some(tw) => ConstrainedFamily::with_full_product(gallerification.seq.clone(), tw.clone())?,
    };
    let first_domain = Arc::new(first_family.enumerate_constrained());
    let domain = Arc::new(family.enumerate_constrained());
    let segment_families = f
        .iter()
        .map(|&p| family.segment(p))
        .collect::<Result<Vec<_>>>()?;
    let segment_domains = segment_families
        .iter()
        .map(|sf| Arc::new(sf.enumerate_constrained()))
        .collect();

    Ok(Decomposition {
        mode,
        family: family.clone(),
        projection,
        gallerification,
        target,
        first_family,
        first_domain,
        domain,
        segment_families,
        segment_domains,
    })
}

impl Decomposition {
    pub fn mode(&self) -> DecompMode {
        self.mode
    }

    pub fn family(&self) -> &ConstrainedFamily {
        &self.family
    }

    pub fn projection(&self) -> &ProjectionData {
        &self.projection
    }

    pub fn gallerification(&self) -> &Gallerification {
        &self.gallerification
    }

    pub fn target(&self) -> Option<&WeylElement> {
        self.target.as_ref()
    }

    pub fn first_family(&self) -> &ConstrainedFamily {
        &self.first_family
    }

    /// The constrained gallery set of the first factor.
    pub fn first_domain(&self) -> &Arc<Vec<Gallery>> {
        &self.first_domain
    }

    /// The constrained gallery set of the decomposed family.
    pub fn domain(&self) -> &Arc<Vec<Gallery>> {
        &self.domain
    }

    pub fn segment_families(&self) -> &[ConstrainedFamily] {
        &self.segment_families
    }

    pub fn segment_domains(&self) -> &[Arc<Vec<Gallery>>] {
        &self.segment_domains
    }

    fn segment_count(&self) -> usize {
        self.segment_families.len()
    }

    fn check_first(&self, h: &EqFunction) -> Result<()> {
        if !same_domain(h.domain(), &self.first_domain) {
            return Err(Error::DomainMismatch(
                "function is not on the first-factor gallery set".into(),
            ));
        }
        Ok(())
    }

    fn check_segments(&self, hs_len: usize) -> Result<()> {
        if hs_len != self.segment_count() {
            return Err(Error::DomainMismatch(format!(
                "{} segment factors for {} projected pairs",
                hs_len,
                self.segment_count()
            )));
        }
        Ok(())
    }

    /// The left module action on the first factor: pointwise multiplication
    /// by the image of `c` under the gallerification twist.
    pub fn left_action(&self, c: &PolyS, h: &EqFunction) -> Result<EqFunction> {
        self.check_first(h)?;
        Ok(h.scale(&weyl_act(&self.gallerification.x, c)))
    }

    /// The right action of the segment tensor factors on the first factor:
    /// at a gallery, each `c_m` is twisted by the gallery prefix through
    /// the segment's start, the inverse gallerification prefix, the
    /// gallerification element and the earlier segment constraints.
    pub fn right_q_action(&self, h: &EqFunction, cs: &[PolyS]) -> Result<EqFunction> {
        self.check_first(h)?;
        self.check_segments(cs.len())?;
        let rs = self.family.seq().system();
        let values = self
            .first_domain
            .iter()
            .zip(h.values())
            .map(|(lam, hv)| {
                let mut val = hv.clone();
                for (m, &(f1, _)) in self.projection.f_pairs().iter().enumerate() {
                    let twist = lam
                        .prefix(Ext::Label(f1))
                        .mul(&rs.inverse(&self.gallerification.gallery.prefix(Ext::Label(f1))))
                        .mul(&self.gallerification.x)
                        .mul(&self.projection.v_product(m));
                    val = val.mul(&weyl_act(&twist, &cs[m]));
                }
                val
            })
            .collect();
        EqFunction::new(self.first_domain.clone(), values)
    }

    /// Transport of a constrained gallery into the first-factor gallery
    /// set: project, conjugate by the gallerification element, compose with
    /// its gallery.
    pub fn transport(&self, lam: &Gallery) -> Result<Gallery> {
        let image = self.projection.project_fixed(lam)?;
        let conj = image.conjugate(&self.gallerification.x);
        self.gallerification.gallery.compose(&conj)
    }

    /// The decomposition map on polynomial-valued functions.
    pub fn mu_im(&self, h: &EqFunction, hs: &[EqFunction]) -> Result<EqFunction> {
        self.check_first(h)?;
        self.check_segments(hs.len())?;
        for (hm, dom) in hs.iter().zip(&self.segment_domains) {
            if !same_domain(hm.domain(), dom) {
                return Err(Error::DomainMismatch(
                    "segment factor is not on its constrained gallery set".into(),
                ));
            }
        }
        let rs = self.family.seq().system();
        let x_inv = rs.inverse(&self.gallerification.x);
        let values = self
            .domain
            .iter()
            .map(|lam| {
                let delta = self.transport(lam)?;
                let hval = h.value_at(&delta).ok_or_else(|| {
                    Error::DomainMismatch("transported gallery misses the first domain".into())
                })?;
                let mut val = weyl_act(&x_inv, hval);
                for (m, &(f1, f2)) in self.projection.f_pairs().iter().enumerate() {
                    let seg = lam.restrict(f1, f2);
                    let hm = hs[m].value_at(&seg).ok_or_else(|| {
                        Error::DomainMismatch("segment gallery misses its domain".into())
                    })?;
                    val = val.mul(&weyl_act(&lam.prefix(Ext::Label(f1 - 1)), hm));
                }
                Ok(val)
            })
            .collect::<Result<Vec<_>>>()?;
        EqFunction::new(self.domain.clone(), values)
    }

    /// The twisted product on fraction-valued functions; same formula as
    /// the decomposition map, with the Weyl action taken on fractions.
    pub fn d_mu(&self, alpha: &DualFunction, alphas: &[DualFunction]) -> Result<DualFunction> {
        if !same_domain(alpha.domain(), &self.first_domain) {
            return Err(Error::DomainMismatch(
                "dual factor is not on the first-factor gallery set".into(),
            ));
        }
        self.check_segments(alphas.len())?;
        for (am, dom) in alphas.iter().zip(&self.segment_domains) {
            if !same_domain(am.domain(), dom) {
                return Err(Error::DomainMismatch(
                    "segment dual factor is not on its constrained gallery set".into(),
                ));
            }
        }
        let rs = self.family.seq().system();
        let x_inv = rs.inverse(&self.gallerification.x);
        let values = self
            .domain
            .iter()
            .map(|lam| {
                let delta = self.transport(lam)?;
                let aval = alpha.value_at(&delta).ok_or_else(|| {
                    Error::DomainMismatch("transported gallery misses the first domain".into())
                })?;
                let mut val = aval.weyl_act(&x_inv);
                for (m, &(f1, f2)) in self.projection.f_pairs().iter().enumerate() {
                    let seg = lam.restrict(f1, f2);
                    let am = alphas[m].value_at(&seg).ok_or_else(|| {
                        Error::DomainMismatch("segment gallery misses its domain".into())
                    })?;
                    val = val.mul(&am.weyl_act(&lam.prefix(Ext::Label(f1 - 1))));
                }
                Ok(val)
            })
            .collect::<Result<Vec<_>>>()?;
        DualFunction::new(self.domain.clone(), values)
    }

    /// Graded verification of the isomorphism statement with rational
    /// coefficients: per degree, the span of decomposition-map images of
    /// monomial multiples of spanning tuples must equal the span of
    /// monomial multiples of the restricted basis classes; and moving a
    /// coefficient across the tensor sign must not change the image.
    pub fn verify_iso_bounded(&self, dmax: u32) -> Result<IsoReport> {
        let first_span = nonzero_graded(spanning_set(&self.first_family)?);
        let segment_spans: Vec<Vec<(u32, EqFunction)>> = self
            .segment_families
            .iter()
            .map(|sf| Ok(nonzero_graded(spanning_set(sf)?)))
            .collect::<Result<Vec<_>>>()?;
        let rhs_span = nonzero_graded(spanning_set(&self.family)?);
        let rank = self.family.seq().system().rank();

        let balance = self.check_balance(&first_span, &segment_spans, rank)?;

        let mut degrees = Vec::new();
        for d in 0..=dmax {
            degrees.push(self.check_degree(d, rank, &first_span, &segment_spans, &rhs_span)?);
        }
        Ok(IsoReport { degrees, balance })
    }

    fn check_balance(
        &self,
        first_span: &[(u32, EqFunction)],
        segment_spans: &[Vec<(u32, EqFunction)>],
        rank: usize,
    ) -> Result<BalanceCheck> {
        const FIRST_CAP: usize = 6;
        const SEG_CAP: usize = 4;
        // An empty factor domain makes every module zero; nothing to move
        // across the tensor sign.
        if first_span.is_empty() || segment_spans.iter().any(|s| s.is_empty()) {
            return Ok(BalanceCheck {
                checked: 0,
                failures: 0,
            });
        }
        let mut monomials = Vec::new();
        for d in 0..=2u32 {
            for m in Monomial::of_degree(rank, d) {
                monomials.push(PolyS::from_terms(
                    rank,
                    [(m, BigRational::from_integer(1.into()))],
                ));
            }
        }
        let mut checked = 0;
        let mut failures = 0;
        for slot in 0..self.segment_count() {
            let base_tuple: Vec<&EqFunction> = segment_spans
                .iter()
                .map(|s| &s.first().expect("constant class present").1)
                .collect();
            for c in &monomials {
                for (_, h) in first_span.iter().take(FIRST_CAP) {
                    for (_, k) in segment_spans[slot].iter().take(SEG_CAP) {
                        let mut hs: Vec<EqFunction> =
                            base_tuple.iter().map(|&f| f.clone()).collect();
                        hs[slot] = k.clone();
                        // h . (1 x ... c ... x 1) tensor k  vs  h tensor c k
                        let mut cs = vec![PolyS::one(rank); self.segment_count()];
                        cs[slot] = c.clone();
                        let lhs = self.mu_im(&self.right_q_action(h, &cs)?, &hs)?;
                        hs[slot] = k.scale(c);
                        let rhs = self.mu_im(h, &hs)?;
                        checked += 1;
                        if lhs != rhs {
                            failures += 1;
                        }
                    }
                }
            }
        }
        Ok(BalanceCheck { checked, failures })
    }

    fn check_degree(
        &self,
        d: u32,
        rank: usize,
        first_span: &[(u32, EqFunction)],
        segment_spans: &[Vec<(u32, EqFunction)>],
        rhs_span: &[(u32, EqFunction)],
    ) -> Result<DegreeCheck> {
        let monomials = Monomial::of_degree(rank, d);
        let index: HashMap<&Monomial, usize> =
            monomials.iter().enumerate().map(|(k, m)| (m, k)).collect();
        let dim = self.domain.len() * monomials.len();
        let flatten = |f: &EqFunction| -> Vec<BigRational> {
            let mut out = vec![BigRational::zero(); dim];
            for (k, v) in f.values().iter().enumerate() {
                for (m, c) in v.terms() {
                    debug_assert_eq!(m.degree(), d);
                    out[k * monomials.len() + index[m]] = c.clone();
                }
            }
            out
        };
        let monomial_polys = |deg: u32| -> Vec<PolyS> {
            Monomial::of_degree(rank, deg)
                .into_iter()
                .map(|m| PolyS::from_terms(rank, [(m, BigRational::from_integer(1.into()))]))
                .collect()
        };

        // Right-hand side: monomial multiples of the restricted classes.
        let mut rhs_vectors: Vec<Vec<BigRational>> = Vec::new();
        for (e, g) in rhs_span {
            if *e > d {
                continue;
            }
            for c in monomial_polys(d - e) {
                let v = flatten(&g.scale(&c));
                if v.iter().any(|x| !x.is_zero()) {
                    rhs_vectors.push(v);
                }
            }
        }

        // Left-hand side: images of spanning tuples with monomial
        // coefficients on every segment factor, scaled by outer monomials
        // (the first-factor coefficient commutes out of the map, so it is
        // applied outside).
        let mut tuples: Vec<(u32, EqFunction, Vec<EqFunction>)> = Vec::new();
        let mut stack: Vec<(usize, u32, Vec<EqFunction>)> = vec![(0, 0, Vec::new())];
        while let Some((slot, used, chosen)) = stack.pop() {
            if slot == self.segment_count() {
                for (e0, h) in first_span {
                    if used + e0 <= d {
                        tuples.push((used + e0, h.clone(), chosen.clone()));
                    }
                }
                continue;
            }
            for (em, k) in &segment_spans[slot] {
                if used + em > d {
                    continue;
                }
                for cdeg in 0..=(d - used - em) {
                    for c in monomial_polys(cdeg) {
                        let mut next = chosen.clone();
                        next.push(k.scale(&c));
                        stack.push((slot + 1, used + em + cdeg, next));
                    }
                }
            }
        }
        let base_images: Vec<(u32, EqFunction)> = tuples
            .par_iter()
            .map(|(deg, h, hs)| Ok((*deg, self.mu_im(h, hs)?)))
            .collect::<Result<Vec<_>>>()?;
        let mut lhs_vectors: Vec<Vec<BigRational>> = Vec::new();
        for (b, img) in &base_images {
            for c in monomial_polys(d - b) {
                let v = flatten(&img.scale(&c));
                if v.iter().any(|x| !x.is_zero()) {
                    lhs_vectors.push(v);
                }
            }
        }

        let mut rhs_space = RowSpace::new(dim);
        for v in &rhs_vectors {
            rhs_space.insert(v.clone());
        }
        let mut lhs_space = RowSpace::new(dim);
        for v in &lhs_vectors {
            lhs_space.insert(v.clone());
        }
        let lhs_in_rhs = lhs_vectors
            .par_iter()
            .all(|v| rhs_space.contains(v.clone()));
        let rhs_in_lhs = rhs_vectors
            .par_iter()
            .all(|v| lhs_space.contains(v.clone()));

        Ok(DegreeCheck {
            degree: d,
            lhs_rank: lhs_space.rank(),
            rhs_rank: rhs_space.rank(),
            spans_equal: lhs_in_rhs && rhs_in_lhs,
        })
    }
}

/// Keeps the nonzero spanning elements, tagged with their value degree.
fn nonzero_graded(span: Vec<EqFunction>) -> Vec<(u32, EqFunction)> {
    span.into_iter()
        .filter(|g| !g.is_zero())
        .map(|g| {
            let deg = g
                .values()
                .iter()
                .filter_map(|v| v.degree())
                .max()
                .unwrap_or(0);
            debug_assert!(g
                .values()
                .iter()
                .all(|v| v.is_zero() || v.degree() == Some(deg)));
            (deg, g)
        })
        .collect()
}

/// Incremental row space over the rationals for exact rank and membership.
struct RowSpace {
    dim: usize,
    rows: Vec<Vec<BigRational>>,
    pivots: Vec<usize>,
}

impl RowSpace {
    fn new(dim: usize) -> Self {
        RowSpace {
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces in insertion order; each row is normalized on its pivot and
    /// already reduced against earlier rows.
    fn reduce(&self, v: &mut [BigRational]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let c = v[p].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    if !r.is_zero() {
                        *x -= &c * r;
                    }
                }
            }
        }
    }

    fn insert(&mut self, mut v: Vec<BigRational>) -> bool {
        assert_eq!(v.len(), self.dim);
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let lead = v[p].clone();
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x /= &lead;
            }
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }

    fn contains(&self, mut v: Vec<BigRational>) -> bool {
        self.reduce(&mut v);
        v.iter().all(|x| x.is_zero())
    }
}

/// One graded slice of the isomorphism check.
#[derive(Clone, Debug)]
pub struct DegreeCheck {
    pub degree: u32,
    pub lhs_rank: usize,
    pub rhs_rank: usize,
    pub spans_equal: bool,
}

/// Balance identities tested and failed.
#[derive(Clone, Debug)]
pub struct BalanceCheck {
    pub checked: usize,
    pub failures: usize,
}

/// Report of `verify_iso_bounded`.
#[derive(Clone, Debug)]
pub struct IsoReport {
    pub degrees: Vec<DegreeCheck>,
    pub balance: BalanceCheck,
}

impl IsoReport {
    pub fn all_ok(&self) -> bool {
        self.balance.failures == 0 && self.degrees.iter().all(|d| d.spans_equal)
    }
}
