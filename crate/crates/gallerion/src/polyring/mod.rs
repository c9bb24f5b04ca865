//! Exact arithmetic in the polynomial ring on the simple roots, with
//! arbitrary-precision rational coefficients, the Weyl group action by ring
//! automorphisms, and a fraction field restricted to positive-root
//! denominators.
//!
//! Monomials are ordered graded-lexicographically and zero coefficients are
//! never stored, so equal polynomials have identical representations.

mod frac;

pub use frac::RootFraction;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::rootsys::{Root, WeylElement};

/// An exponent vector. Order: by total degree, then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn unit(rank: usize) -> Self {
        Monomial(vec![0; rank])
    }

    pub fn variable(rank: usize, i: usize) -> Self {
        let mut e = vec![0; rank];
        e[i - 1] = 1;
        Monomial(e)
    }

    pub fn from_exponents(e: Vec<u32>) -> Self {
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// All monomials of the given total degree, in increasing order.
    pub fn of_degree(rank: usize, degree: u32) -> Vec<Monomial> {
        fn rec(rank: usize, degree: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if prefix.len() + 1 == rank {
                prefix.push(degree);
                out.push(Monomial(prefix.clone()));
                prefix.pop();
                return;
            }
            for e in 0..=degree {
                prefix.push(e);
                rec(rank, degree - e, prefix, out);
                prefix.pop();
            }
        }
        if rank == 0 {
            return if degree == 0 {
                vec![Monomial(vec![])]
            } else {
                vec![]
            };
        }
        let mut out = Vec::new();
        rec(rank, degree, &mut Vec::new(), &mut out);
        out.sort();
        out
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.degree(), &self.0).cmp(&(other.degree(), &other.0))
    }
}

/// A sparse polynomial in the simple roots with rational coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyS {
    rank: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

impl PolyS {
    pub fn zero(rank: usize) -> Self {
        PolyS {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(rank: usize) -> Self {
        Self::constant(rank, BigRational::one())
    }

    pub fn constant(rank: usize, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::unit(rank), c);
        }
        PolyS { rank, terms }
    }

    pub fn from_int(rank: usize, n: i64) -> Self {
        Self::constant(rank, BigRational::from(BigInt::from(n)))
    }

    /// The variable for the `i`-th simple root (1-based).
    pub fn variable(rank: usize, i: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::variable(rank, i), BigRational::one());
        PolyS { rank, terms }
    }

    /// The linear form of a root-lattice element.
    pub fn linear_form(r: &Root) -> Self {
        let rank = r.rank();
        let mut terms = BTreeMap::new();
        for (i, &c) in r.coords().iter().enumerate() {
            if c != 0 {
                terms.insert(
                    Monomial::variable(rank, i + 1),
                    BigRational::from(BigInt::from(c)),
                );
            }
        }
        PolyS { rank, terms }
    }

    pub fn from_terms(
        rank: usize,
        terms: impl IntoIterator<Item = (Monomial, BigRational)>,
    ) -> Self {
        let mut p = PolyS::zero(rank);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Monomial::unit(self.rank))
                .is_some_and(|c| c.is_one())
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> std::collections::btree_map::Iter<'_, Monomial, BigRational> {
        self.terms.iter()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(|m| m.degree());
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &PolyS) -> PolyS {
        debug_assert_eq!(self.rank, other.rank);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> PolyS {
        PolyS {
            rank: self.rank,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &PolyS) -> PolyS {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &PolyS) -> PolyS {
        debug_assert_eq!(self.rank, other.rank);
        let mut out = PolyS::zero(self.rank);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> PolyS {
        if c.is_zero() {
            return PolyS::zero(self.rank);
        }
        PolyS {
            rank: self.rank,
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> PolyS {
        let mut out = PolyS::one(self.rank);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Substitutes polynomials for the variables.
    pub fn substitute(&self, images: &[PolyS]) -> PolyS {
        assert_eq!(images.len(), self.rank);
        let out_rank = images.first().map_or(self.rank, |p| p.rank);
        let mut out = PolyS::zero(out_rank);
        for (m, c) in &self.terms {
            let mut term = PolyS::constant(out_rank, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    term = term.mul(&images[i].pow(e));
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// Exact division by the linear form of a root; `None` when the form
    /// does not divide.
    pub fn exact_div_linear(&self, form: &Root) -> Option<PolyS> {
        let divisor = PolyS::linear_form(form);
        let (lead_m, lead_c) = divisor.terms.iter().next_back()?;
        let mut rem = self.clone();
        let mut quot = PolyS::zero(self.rank);
        while let Some((m, c)) = rem
            .terms
            .iter()
            .next_back()
            .map(|(m, c)| (m.clone(), c.clone()))
        {
            if !lead_m.divides(&m) {
                return None;
            }
            let qm = m.div(lead_m);
            let qc = c / lead_c;
            quot.add_term(qm.clone(), qc.clone());
            // rem -= (qc * qm) * divisor
            for (dm, dc) in &divisor.terms {
                rem.add_term(qm.mul(dm), -(&qc * dc));
            }
        }
        Some(quot)
    }
}

impl fmt::Display for PolyS {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Highest terms first.
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit = m.degree() == 0;
            if !abs.is_one() || unit {
                write!(f, "{abs}")?;
                if !unit {
                    write!(f, "*")?;
                }
            }
            let mut first = true;
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                write!(f, "a{}", i + 1)?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
                first = false;
            }
        }
        Ok(())
    }
}

/// The Weyl group action on the polynomial ring: each simple-root variable
/// maps to the linear form of its image, extended multiplicatively.
pub fn weyl_act(w: &WeylElement, p: &PolyS) -> PolyS {
    let rank = p.rank();
    let images: Vec<PolyS> = (1..=rank)
        .map(|i| PolyS::linear_form(&w.apply(&Root::simple(rank, i))))
        .collect();
    p.substitute(&images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::RootSystem;

    fn q(n: i64) -> BigRational {
        BigRational::from(BigInt::from(n))
    }

    #[test]
    fn monomial_order_is_graded_lex() {
        let unit = Monomial::unit(2);
        let a1 = Monomial::variable(2, 1);
        let a2 = Monomial::variable(2, 2);
        let a1a2 = a1.mul(&a2);
        let a1sq = a1.mul(&a1);
        assert!(unit < a2 && a2 < a1 && a1 < a1a2 && a1a2 < a1sq);
    }

    #[test]
    fn monomials_of_degree() {
        assert_eq!(Monomial::of_degree(4, 0).len(), 1);
        assert_eq!(Monomial::of_degree(4, 1).len(), 4);
        assert_eq!(Monomial::of_degree(4, 2).len(), 10);
        assert_eq!(Monomial::of_degree(4, 3).len(), 20);
        assert_eq!(Monomial::of_degree(2, 3).len(), 4);
    }

    #[test]
    fn arithmetic_basics() {
        let a1 = PolyS::variable(2, 1);
        let a2 = PolyS::variable(2, 2);
        let p = a1.add(&a2).mul(&a1.sub(&a2));
        let expected = a1.mul(&a1).sub(&a2.mul(&a2));
        assert_eq!(p, expected);
        assert!(p.sub(&p).is_zero());
        assert_eq!(p.degree(), Some(2));
        assert!(p.is_homogeneous());
        assert!(!p.add(&PolyS::one(2)).is_homogeneous());
    }

    #[test]
    fn weyl_act_examples() {
        let a4 = RootSystem::by_name("A4").unwrap();
        let id = crate::rootsys::WeylElement::identity(4);
        let a2v = PolyS::variable(4, 2);
        assert_eq!(weyl_act(&id, &a2v), a2v);

        // w4 w3 sends a2 to a2 + a3 + a4.
        let w43 = a4.weyl_from_word(&[4, 3]).unwrap();
        assert_eq!(
            weyl_act(&w43, &a2v),
            PolyS::linear_form(&Root::new(vec![0, 1, 1, 1]))
        );
    }

    #[test]
    fn weyl_act_is_ring_automorphism() {
        let a3 = RootSystem::by_name("A3").unwrap();
        let w = a3.weyl_from_word(&[1, 3, 2]).unwrap();
        let p = PolyS::variable(3, 1).add(&PolyS::variable(3, 2).scale(&q(2)));
        let r = PolyS::variable(3, 3)
            .mul(&PolyS::variable(3, 1))
            .add(&PolyS::one(3));
        assert_eq!(
            weyl_act(&w, &p.mul(&r)),
            weyl_act(&w, &p).mul(&weyl_act(&w, &r))
        );
        assert_eq!(
            weyl_act(&w, &p.add(&r)),
            weyl_act(&w, &p).add(&weyl_act(&w, &r))
        );
    }

    #[test]
    fn weyl_act_is_group_action() {
        let a3 = RootSystem::by_name("A3").unwrap();
        let u = a3.weyl_from_word(&[1, 2]).unwrap();
        let v = a3.weyl_from_word(&[3, 2, 1]).unwrap();
        let p = PolyS::variable(3, 2)
            .mul(&PolyS::variable(3, 3))
            .add(&PolyS::variable(3, 1));
        assert_eq!(weyl_act(&u.mul(&v), &p), weyl_act(&u, &weyl_act(&v, &p)));
    }

    #[test]
    fn exact_division_by_linear_forms() {
        let a1 = PolyS::variable(2, 1);
        let a12 = Root::new(vec![1, 1]);
        let p = PolyS::linear_form(&a12).mul(&a1);
        assert_eq!(p.exact_div_linear(&a12).unwrap(), a1);
        assert_eq!(
            p.exact_div_linear(&Root::new(vec![1, 0])).unwrap(),
            PolyS::linear_form(&a12)
        );
        assert!(a1.exact_div_linear(&a12).is_none());
        assert!(PolyS::zero(2).exact_div_linear(&a12).unwrap().is_zero());
    }

    /// Substitution along the kernel of the form is the independent
    /// divisibility oracle: send the pivot variable to the solved value.
    fn divisible_by_substitution(p: &PolyS, form: &Root) -> bool {
        let rank = p.rank();
        let pivot = form
            .coords()
            .iter()
            .position(|&c| c != 0)
            .expect("nonzero form");
        let c_pivot = form.coords()[pivot];
        let images: Vec<PolyS> = (0..rank)
            .map(|i| {
                if i == pivot {
                    // pivot = -(rest)/c_pivot
                    let mut rest = PolyS::zero(rank);
                    for (j, &c) in form.coords().iter().enumerate() {
                        if j != pivot && c != 0 {
                            rest = rest.add(&PolyS::variable(rank, j + 1).scale(&q(c)));
                        }
                    }
                    rest.scale(&(-q(1) / q(c_pivot)))
                } else {
                    PolyS::variable(rank, i + 1)
                }
            })
            .collect();
        p.substitute(&images).is_zero()
    }

    #[test]
    fn division_matches_substitution_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let a3 = RootSystem::by_name("A3").unwrap();
        let roots = a3.positive_roots().to_vec();
        for _ in 0..200 {
            let mut p = PolyS::zero(3);
            for _ in 0..rng.gen_range(0..4) {
                let m = Monomial(vec![
                    rng.gen_range(0..3),
                    rng.gen_range(0..3),
                    rng.gen_range(0..2),
                ]);
                p.add_term(m, q(rng.gen_range(-3..=3)));
            }
            if rng.gen_bool(0.5) {
                // Force divisibility half of the time.
                let r = &roots[rng.gen_range(0..roots.len())];
                p = p.mul(&PolyS::linear_form(r));
            }
            for r in &roots {
                assert_eq!(
                    p.exact_div_linear(r).is_some(),
                    divisible_by_substitution(&p, r),
                    "divisor {r} of {p}"
                );
                if let Some(quot) = p.exact_div_linear(r) {
                    assert_eq!(quot.mul(&PolyS::linear_form(r)), p);
                }
            }
        }
    }
}
