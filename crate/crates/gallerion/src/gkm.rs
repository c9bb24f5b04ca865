//! Function modules on gallery sets.
//!
//! Elements of the cohomology image are represented through an explicit
//! free basis of classes indexed by subsets of positions: the class of a
//! subset takes, at a gallery, the product over the subset of the prefix
//! images of the letters' simple roots picked up where the gallery uses the
//! letter, and zero where it does not. Restricting these classes to a
//! constrained gallery set spans the image module over good coefficients;
//! the dual module is tested against that spanning set through the
//! summation pairing.

use std::sync::Arc;

use rayon::prelude::*;

use crate::gallery::{Ext, Gallery, ReflSequence};
use crate::nested::ConstrainedFamily;
use crate::polyring::{weyl_act, PolyS, RootFraction};
use crate::rootsys::WeylElement;
use crate::{Error, Result};

/// A polynomial-valued function on a fixed list of galleries.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EqFunction {
    domain: Arc<Vec<Gallery>>,
    values: Vec<PolyS>,
}

/// A fraction-valued function on a fixed list of galleries.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DualFunction {
    domain: Arc<Vec<Gallery>>,
    values: Vec<RootFraction>,
}

pub fn same_domain(a: &Arc<Vec<Gallery>>, b: &Arc<Vec<Gallery>>) -> bool {
    Arc::ptr_eq(a, b) || a.as_slice() == b.as_slice()
}

/// Index of a gallery in a lex-sorted domain.
fn lookup(domain: &[Gallery], g: &Gallery) -> Option<usize> {
    domain
        .binary_search_by(|probe| probe.bits().cmp(g.bits()))
        .ok()
        .filter(|&k| &domain[k] == g)
}

impl EqFunction {
    pub fn new(domain: Arc<Vec<Gallery>>, values: Vec<PolyS>) -> Result<Self> {
        if domain.len() != values.len() {
            return Err(Error::DomainMismatch(format!(
                "{} values for {} galleries",
                values.len(),
                domain.len()
            )));
        }
        debug_assert!(
            domain.windows(2).all(|w| w[0].bits() < w[1].bits()),
            "function domains are enumeration outputs, sorted on bits"
        );
        Ok(EqFunction { domain, values })
    }

    pub fn from_fn(domain: Arc<Vec<Gallery>>, f: impl Fn(&Gallery) -> PolyS) -> Self {
        let values = domain.iter().map(f).collect();
        EqFunction { domain, values }
    }

    pub fn constant(domain: Arc<Vec<Gallery>>, c: PolyS) -> Self {
        let values = vec![c; domain.len()];
        EqFunction { domain, values }
    }

    pub fn domain(&self) -> &Arc<Vec<Gallery>> {
        &self.domain
    }

    pub fn values(&self) -> &[PolyS] {
        &self.values
    }

    pub fn value_at(&self, g: &Gallery) -> Option<&PolyS> {
        lookup(&self.domain, g).map(|k| &self.values[k])
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    /// Pointwise product with a polynomial (the canonical module action).
    pub fn scale(&self, c: &PolyS) -> EqFunction {
        EqFunction {
            domain: self.domain.clone(),
            values: self.values.iter().map(|v| v.mul(c)).collect(),
        }
    }

    pub fn add(&self, other: &EqFunction) -> Result<EqFunction> {
        if !same_domain(&self.domain, &other.domain) {
            return Err(Error::DomainMismatch(
                "functions on different domains".into(),
            ));
        }
        Ok(EqFunction {
            domain: self.domain.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.add(b))
                .collect(),
        })
    }

    /// Pointwise product of functions (the cup product on restrictions).
    pub fn mul(&self, other: &EqFunction) -> Result<EqFunction> {
        if !same_domain(&self.domain, &other.domain) {
            return Err(Error::DomainMismatch(
                "functions on different domains".into(),
            ));
        }
        Ok(EqFunction {
            domain: self.domain.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.mul(b))
                .collect(),
        })
    }

    /// Restriction to the constrained gallery set of a family over the same
    /// sequence.
    pub fn restrict(&self, cf: &ConstrainedFamily) -> Result<EqFunction> {
        let domain = Arc::new(cf.enumerate_constrained());
        let values = domain
            .iter()
            .map(|g| {
                self.value_at(g).cloned().ok_or_else(|| {
                    Error::DomainMismatch(
                        "constrained gallery missing from the function's domain".into(),
                    )
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(EqFunction { domain, values })
    }
}

impl DualFunction {
    pub fn new(domain: Arc<Vec<Gallery>>, values: Vec<RootFraction>) -> Result<Self> {
        if domain.len() != values.len() {
            return Err(Error::DomainMismatch(format!(
                "{} values for {} galleries",
                values.len(),
                domain.len()
            )));
        }
        debug_assert!(
            domain.windows(2).all(|w| w[0].bits() < w[1].bits()),
            "function domains are enumeration outputs, sorted on bits"
        );
        Ok(DualFunction { domain, values })
    }

    pub fn from_fn(domain: Arc<Vec<Gallery>>, f: impl Fn(&Gallery) -> RootFraction) -> Self {
        let values = domain.iter().map(f).collect();
        DualFunction { domain, values }
    }

    pub fn zero(domain: Arc<Vec<Gallery>>, rank: usize) -> Self {
        let values = vec![RootFraction::zero(rank); domain.len()];
        DualFunction { domain, values }
    }

    pub fn domain(&self) -> &Arc<Vec<Gallery>> {
        &self.domain
    }

    pub fn values(&self) -> &[RootFraction] {
        &self.values
    }

    pub fn value_at(&self, g: &Gallery) -> Option<&RootFraction> {
        lookup(&self.domain, g).map(|k| &self.values[k])
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    /// A dual function whose values happen to be polynomials.
    pub fn as_eq_function(&self) -> Option<EqFunction> {
        let values = self
            .values
            .iter()
            .map(|v| v.as_polynomial().cloned())
            .collect::<Option<Vec<_>>>()?;
        Some(EqFunction {
            domain: self.domain.clone(),
            values,
        })
    }
}

/// A basis class together with the subset of positions indexing it.
#[derive(Clone, Debug)]
pub struct BasisClass {
    pub labels: Vec<i64>,
    pub class: EqFunction,
}

/// The prefix class: the function taking a gallery to the image of `c`
/// under its prefix product up to `j` composed with a fixed twist.
pub fn prefix_class(s: &ReflSequence, j: Ext, c: &PolyS, twist: &WeylElement) -> EqFunction {
    let domain = Arc::new(s.enumerate_galleries());
    EqFunction::from_fn(domain, |g| weyl_act(&g.prefix(j).mul(twist), c))
}

/// The single-position generator at label `i`: at a gallery using the
/// letter there, the prefix image of the letter's simple root; zero
/// otherwise.
fn xi_single(gallery: &Gallery, position: usize) -> PolyS {
    let seq = gallery.over();
    let rank = seq.system().rank();
    if !gallery.bits()[position] {
        return PolyS::zero(rank);
    }
    let label = seq.index().labels()[position];
    let prefix = gallery.prefix(Ext::Label(label - 1));
    PolyS::linear_form(&prefix.apply(&seq.axis(position)))
}

/// Per-gallery table of single-position generator values.
fn xi_table(domain: &[Gallery]) -> Vec<Vec<PolyS>> {
    domain
        .iter()
        .map(|g| (0..g.bits().len()).map(|p| xi_single(g, p)).collect())
        .collect()
}

fn subset_product(rank: usize, table_row: &[PolyS], bits: &[bool], mask: u64) -> PolyS {
    let n = table_row.len();
    let mut out = PolyS::one(rank);
    for p in 0..n {
        if (mask >> (n - 1 - p)) & 1 == 1 {
            if !bits[p] {
                return PolyS::zero(rank);
            }
            out = out.mul(&table_row[p]);
        }
    }
    out
}

/// Subset labels for a mask under the same most-significant-first
/// convention as gallery bit vectors.
pub fn subset_labels(s: &ReflSequence, mask: u64) -> Vec<i64> {
    let n = s.len();
    (0..n)
        .filter(|p| (mask >> (n - 1 - p)) & 1 == 1)
        .map(|p| s.index().labels()[p])
        .collect()
}

/// All `2^n` basis classes over the full gallery set of a simple sequence,
/// in subset-mask order.
pub fn xi_basis(s: &ReflSequence) -> Result<Vec<BasisClass>> {
    if !s.is_simple() {
        return Err(Error::HypothesisFailed(
            "basis classes require a sequence of simple reflections".into(),
        ));
    }
    assert!(
        s.len() < 48,
        "basis over {} positions is not representable",
        s.len()
    );
    let domain = Arc::new(s.enumerate_galleries());
    let table = xi_table(&domain);
    let rank = s.system().rank();
    let n = s.len();
    Ok((0..(1u64 << n))
        .map(|mask| {
            let values = domain
                .iter()
                .zip(&table)
                .map(|(g, row)| subset_product(rank, row, g.bits(), mask))
                .collect();
            BasisClass {
                labels: subset_labels(s, mask),
                class: EqFunction {
                    domain: domain.clone(),
                    values,
                },
            }
        })
        .collect())
}

/// Restrictions of all basis classes to the constrained gallery set,
/// computed directly on the restricted domain. This is a spanning set of
/// the image module over good coefficients.
pub fn spanning_set(cf: &ConstrainedFamily) -> Result<Vec<EqFunction>> {
    if !cf.seq().is_simple() {
        return Err(Error::HypothesisFailed(
            "spanning sets require a sequence of simple reflections".into(),
        ));
    }
    assert!(
        cf.seq().len() < 48,
        "spanning set over {} positions is not representable",
        cf.seq().len()
    );
    let domain = Arc::new(cf.enumerate_constrained());
    let table = xi_table(&domain);
    let rank = cf.seq().system().rank();
    let n = cf.seq().len();
    Ok((0..(1u64 << n))
        .map(|mask| {
            let values = domain
                .iter()
                .zip(&table)
                .map(|(g, row)| subset_product(rank, row, g.bits(), mask))
                .collect();
            EqFunction {
                domain: domain.clone(),
                values,
            }
        })
        .collect())
}

/// The summation pairing: the reduced sum over the common domain of the
/// products of values.
pub fn pair(alpha: &DualFunction, g: &EqFunction) -> Result<RootFraction> {
    if !same_domain(&alpha.domain, &g.domain) {
        return Err(Error::DomainMismatch(
            "pairing requires identical domains".into(),
        ));
    }
    let rank = alpha
        .domain
        .first()
        .map(|g| g.over().system().rank())
        .unwrap_or_else(|| g.values.first().map_or(0, |v| v.rank()));
    let mut acc = RootFraction::zero(rank);
    for (a, v) in alpha.values.iter().zip(&g.values) {
        if a.is_zero() || v.is_zero() {
            continue;
        }
        acc = acc.add(&a.mul_poly(v));
    }
    Ok(acc)
}

/// Outcome of a dual-membership test; on failure, the first offending
/// subset in mask order together with the non-polynomial pairing value.
#[derive(Clone, Debug)]
pub struct Membership {
    pub member: bool,
    pub witness: Option<(Vec<i64>, RootFraction)>,
}

/// Tests whether a fraction-valued function pairs every spanning element
/// into polynomials. Linearity of the pairing makes testing the spanning
/// set sufficient.
pub fn dual_membership(alpha: &DualFunction, cf: &ConstrainedFamily) -> Result<Membership> {
    let expected = cf.enumerate_constrained();
    if alpha.domain.as_slice() != expected.as_slice() {
        return Err(Error::DomainMismatch(
            "dual function is not on the family's constrained gallery set".into(),
        ));
    }
    let span = spanning_set(cf)?;
    let witness = span.par_iter().enumerate().find_map_first(|(mask, g)| {
        let p = pair(alpha, g).expect("spanning element shares the domain");
        if p.as_polynomial().is_none() {
            Some((subset_labels(cf.seq(), mask as u64), p))
        } else {
            None
        }
    });
    Ok(Membership {
        member: witness.is_none(),
        witness,
    })
}
