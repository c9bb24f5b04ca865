//! Fractions with positive-root denominators.
//!
//! Denominators are multisets of positive roots, so they are nonzero by
//! construction; any global sign lives in the numerator. Reduction cancels
//! every denominator factor that divides the numerator exactly, which makes
//! the representation canonical: two fractions are equal as values exactly
//! when their reduced representations coincide.

use std::collections::BTreeMap;
use std::fmt;

use crate::polyring::{weyl_act, PolyS};
use crate::rootsys::{Root, WeylElement};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RootFraction {
    num: PolyS,
    den: BTreeMap<Root, u32>,
}

impl RootFraction {
    /// Builds `num / prod(den)` and reduces. Denominator entries must be
    /// positive roots of the ambient system; callers are responsible for
    /// passing roots (the type keeps arbitrary linear forms out of the
    /// denominator elsewhere).
    pub fn new(num: PolyS, den: impl IntoIterator<Item = (Root, u32)>) -> Self {
        let mut d: BTreeMap<Root, u32> = BTreeMap::new();
        for (r, m) in den {
            if m > 0 {
                *d.entry(r).or_insert(0) += m;
            }
        }
        let mut f = RootFraction { num, den: d };
        f.reduce_in_place();
        f
    }

    pub fn from_poly(num: PolyS) -> Self {
        RootFraction {
            num,
            den: BTreeMap::new(),
        }
    }

    /// `sign / (r_1 ... r_k)` for a list of positive roots.
    pub fn reciprocal(rank: usize, sign: i64, roots: &[Root]) -> Self {
        RootFraction::new(
            PolyS::from_int(rank, sign),
            roots.iter().map(|r| (r.clone(), 1)),
        )
    }

    pub fn zero(rank: usize) -> Self {
        Self::from_poly(PolyS::zero(rank))
    }

    pub fn one(rank: usize) -> Self {
        Self::from_poly(PolyS::one(rank))
    }

    pub fn rank(&self) -> usize {
        self.num.rank()
    }

    pub fn num(&self) -> &PolyS {
        &self.num
    }

    pub fn den(&self) -> &BTreeMap<Root, u32> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Cancels denominator factors dividing the numerator; idempotent and
    /// value-preserving.
    pub fn reduce(&self) -> Self {
        let mut f = self.clone();
        f.reduce_in_place();
        f
    }

    fn reduce_in_place(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        let roots: Vec<Root> = self.den.keys().cloned().collect();
        for r in roots {
            while self.den.get(&r).copied().unwrap_or(0) > 0 {
                match self.num.exact_div_linear(&r) {
                    Some(q) => {
                        self.num = q;
                        let m = self.den.get_mut(&r).unwrap();
                        *m -= 1;
                        if *m == 0 {
                            self.den.remove(&r);
                        }
                    }
                    None => break,
                }
            }
        }
    }

    /// The denominator expanded as a polynomial.
    fn den_poly(&self) -> PolyS {
        let mut p = PolyS::one(self.rank());
        for (r, &m) in &self.den {
            p = p.mul(&PolyS::linear_form(r).pow(m));
        }
        p
    }

    pub fn add(&self, other: &RootFraction) -> RootFraction {
        // Least common denominator: max multiplicity per root.
        let mut lcm: BTreeMap<Root, u32> = self.den.clone();
        for (r, &m) in &other.den {
            let e = lcm.entry(r.clone()).or_insert(0);
            *e = (*e).max(m);
        }
        let cofactor = |den: &BTreeMap<Root, u32>| -> PolyS {
            let mut p = PolyS::one(self.rank());
            for (r, &m) in &lcm {
                let have = den.get(r).copied().unwrap_or(0);
                if m > have {
                    p = p.mul(&PolyS::linear_form(r).pow(m - have));
                }
            }
            p
        };
        let num = self
            .num
            .mul(&cofactor(&self.den))
            .add(&other.num.mul(&cofactor(&other.den)));
        RootFraction::new(num, lcm)
    }

    pub fn neg(&self) -> RootFraction {
        RootFraction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &RootFraction) -> RootFraction {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RootFraction) -> RootFraction {
        let mut den = self.den.clone();
        for (r, &m) in &other.den {
            *den.entry(r.clone()).or_insert(0) += m;
        }
        RootFraction::new(self.num.mul(&other.num), den)
    }

    pub fn mul_poly(&self, p: &PolyS) -> RootFraction {
        RootFraction::new(self.num.mul(p), self.den.clone())
    }

    /// The numerator when the reduced denominator is trivial.
    pub fn as_polynomial(&self) -> Option<&PolyS> {
        if self.den.is_empty() {
            Some(&self.num)
        } else {
            None
        }
    }

    /// Value equality by cross-multiplication, independent of reduction.
    pub fn value_eq(&self, other: &RootFraction) -> bool {
        self.num.mul(&other.den_poly()) == other.num.mul(&self.den_poly())
    }

    /// The Weyl action: acts on the numerator and permutes the denominator
    /// roots, pulling signs of negative images into the numerator.
    pub fn weyl_act(&self, w: &WeylElement) -> RootFraction {
        let mut num = weyl_act(w, &self.num);
        let mut den: BTreeMap<Root, u32> = BTreeMap::new();
        for (r, &m) in &self.den {
            let image = w.apply(r);
            let positive = image.positive_rep();
            if image != positive && m % 2 == 1 {
                num = num.neg();
            }
            *den.entry(positive).or_insert(0) += m;
        }
        RootFraction::new(num, den)
    }
}

impl fmt::Display for RootFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({}) / (", self.num)?;
        let mut first = true;
        for (r, &m) in &self.den {
            if !first {
                write!(f, "*")?;
            }
            write!(f, "({r})")?;
            if m > 1 {
                write!(f, "^{m}")?;
            }
            first = false;
        }
        write!(f, ")")
    }
}
