//! JSON wire formats.
//!
//! Weyl elements travel as words in simple indices (not necessarily
//! reduced; deserialization re-canonicalizes), galleries as bit vectors,
//! polynomial coefficients as decimal strings so round trips are bit-exact
//! at any size. Function payloads carry a hash of their domain so a file
//! cannot silently be applied to the wrong gallery set.

use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::gallery::{Gallery, IndexSet, ReflSequence};
use crate::gkm::{DualFunction, EqFunction};
use crate::nested::ConstrainedFamily;
use crate::polyring::{Monomial, PolyS, RootFraction};
use crate::rootsys::{Root, RootSystem};
use crate::{Error, Result};

/// A reflection sequence: root system name, optional explicit labels
/// (defaulting to `1..=n`), and one word per letter.
#[derive(Clone, Serialize, Deserialize, Debug)]
pub struct SequenceJson {
    pub system: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index: Option<Vec<i64>>,
    pub letters: Vec<Vec<usize>>,
}

impl SequenceJson {
    pub fn to_sequence(&self) -> Result<ReflSequence> {
        let rs = RootSystem::by_name(&self.system)?;
        let index = match &self.index {
            Some(labels) => IndexSet::new(labels.clone())?,
            None => IndexSet::initial(self.letters.len()),
        };
        let letters = self
            .letters
            .iter()
            .map(|word| rs.weyl_from_word(word))
            .collect::<Result<Vec<_>>>()?;
        ReflSequence::new(rs, index, letters)
    }

    pub fn from_sequence(seq: &ReflSequence) -> Self {
        let rs = seq.system();
        SequenceJson {
            system: rs.name().to_string(),
            index: Some(seq.index().labels().to_vec()),
            letters: seq.letters().iter().map(|w| rs.canonical_word(w)).collect(),
        }
    }
}

#[derive(Clone, Serialize, Deserialize, Debug)]
pub struct GalleryJson {
    pub bits: Vec<u8>,
}

impl GalleryJson {
    pub fn to_gallery(&self, over: &ReflSequence) -> Result<Gallery> {
        let bits = self
            .bits
            .iter()
            .map(|&b| match b {
                0 => Ok(false),
                1 => Ok(true),
                other => Err(Error::InvalidInput(format!(
                    "gallery bit {other} is neither 0 nor 1"
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        Gallery::new(over.clone(), bits)
    }

    pub fn from_gallery(g: &Gallery) -> Self {
        GalleryJson {
            bits: g.bits().iter().map(|&b| u8::from(b)).collect(),
        }
    }
}

/// A constrained family: a sequence plus aligned `pairs` and `v` arrays.
#[derive(Clone, Serialize, Deserialize, Debug)]
pub struct FamilyJson {
    #[serde(flatten)]
    pub seq: SequenceJson,
    pub pairs: Vec<(i64, i64)>,
    pub v: Vec<Vec<usize>>,
}

impl FamilyJson {
    pub fn to_family(&self) -> Result<ConstrainedFamily> {
        let seq = self.seq.to_sequence()?;
        let rs = seq.system().clone();
        let v = self
            .v
            .iter()
            .map(|word| rs.weyl_from_word(word))
            .collect::<Result<Vec<_>>>()?;
        ConstrainedFamily::new(seq, self.pairs.clone(), v)
    }

    pub fn from_family(cf: &ConstrainedFamily) -> Self {
        let rs = cf.seq().system();
        FamilyJson {
            seq: SequenceJson::from_sequence(cf.seq()),
            pairs: cf.structure().pairs().to_vec(),
            v: cf
                .constraints()
                .map(|(_, w)| rs.canonical_word(w))
                .collect(),
        }
    }
}

/// One polynomial term: numerator string, denominator string, exponents.
pub type TermJson = (String, String, Vec<u32>);

/// Terms in descending graded-lex order.
pub type PolyJson = Vec<TermJson>;

fn rational_to_strings(c: &BigRational) -> (String, String) {
    (c.numer().to_string(), c.denom().to_string())
}

fn rational_from_strings(num: &str, den: &str) -> Result<BigRational> {
    let n =
        BigInt::from_str(num).map_err(|_| Error::InvalidInput(format!("bad integer `{num}`")))?;
    let d =
        BigInt::from_str(den).map_err(|_| Error::InvalidInput(format!("bad integer `{den}`")))?;
    if d.is_zero() {
        return Err(Error::InvalidInput("zero coefficient denominator".into()));
    }
    Ok(BigRational::new(n, d))
}

pub fn poly_to_json(p: &PolyS) -> PolyJson {
    p.terms()
        .rev()
        .map(|(m, c)| {
            let (num, den) = rational_to_strings(c);
            (num, den, m.exponents().to_vec())
        })
        .collect()
}

pub fn poly_from_json(rank: usize, terms: &PolyJson) -> Result<PolyS> {
    let mut acc = Vec::new();
    for (num, den, exps) in terms {
        if exps.len() != rank {
            return Err(Error::InvalidInput(format!(
                "exponent vector of length {} in rank {rank}",
                exps.len()
            )));
        }
        acc.push((
            Monomial::from_exponents(exps.clone()),
            rational_from_strings(num, den)?,
        ));
    }
    Ok(PolyS::from_terms(rank, acc))
}

/// A fraction: numerator polynomial and `[root coordinates, multiplicity]`
/// denominator factors.
#[derive(Clone, Serialize, Deserialize, Debug)]
pub struct FracJson {
    pub num: PolyJson,
    pub den: Vec<(Vec<i64>, u32)>,
}

impl FracJson {
    pub fn from_fraction(f: &RootFraction) -> Self {
        FracJson {
            num: poly_to_json(f.num()),
            den: f
                .den()
                .iter()
                .map(|(r, &m)| (r.coords().to_vec(), m))
                .collect(),
        }
    }

    pub fn to_fraction(&self, rs: &RootSystem) -> Result<RootFraction> {
        let rank = rs.rank();
        let num = poly_from_json(rank, &self.num)?;
        let den = self
            .den
            .iter()
            .map(|(coords, m)| {
                let r = Root::new(coords.clone());
                if !rs.is_positive_root(&r) {
                    return Err(Error::NotARoot(format!(
                        "denominator factor {r} is not a positive root"
                    )));
                }
                Ok((r, *m))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(RootFraction::new(num, den))
    }
}

/// Canonical hash of a gallery list: the ambient data plus every bit
/// vector, in domain order.
pub fn domain_hash(domain: &[Gallery]) -> String {
    let mut hasher = Sha256::new();
    if let Some(first) = domain.first() {
        let seq = first.over();
        hasher.update(seq.system().name().as_bytes());
        hasher.update(b"|");
        for l in seq.index().labels() {
            hasher.update(l.to_string().as_bytes());
            hasher.update(b",");
        }
        hasher.update(b"|");
        for w in seq.letters() {
            for i in seq.system().canonical_word(w) {
                hasher.update(i.to_string().as_bytes());
                hasher.update(b".");
            }
            hasher.update(b";");
        }
    }
    hasher.update(b"|");
    for g in domain {
        hasher.update(g.bit_string().as_bytes());
        hasher.update(b";");
    }
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// A fraction-valued function: values aligned with the hashed domain.
#[derive(Clone, Serialize, Deserialize, Debug)]
pub struct DualFnJson {
    pub domain_hash: String,
    pub values: Vec<FracJson>,
}

impl DualFnJson {
    pub fn from_function(f: &DualFunction) -> Self {
        DualFnJson {
            domain_hash: domain_hash(f.domain()),
            values: f.values().iter().map(FracJson::from_fraction).collect(),
        }
    }

    /// Rebinds the values to a freshly computed domain, verifying the hash.
    pub fn to_function(&self, domain: Arc<Vec<Gallery>>, rs: &RootSystem) -> Result<DualFunction> {
        let expected = domain_hash(&domain);
        if self.domain_hash != expected {
            return Err(Error::DomainMismatch(format!(
                "domain hash {} does not match the computed domain ({expected})",
                self.domain_hash
            )));
        }
        let values = self
            .values
            .iter()
            .map(|v| v.to_fraction(rs))
            .collect::<Result<Vec<_>>>()?;
        DualFunction::new(domain, values)
    }
}

/// A polynomial-valued function with the same domain discipline.
#[derive(Clone, Serialize, Deserialize, Debug)]
pub struct EqFnJson {
    pub domain_hash: String,
    pub values: Vec<PolyJson>,
}

impl EqFnJson {
    pub fn from_function(f: &EqFunction) -> Self {
        EqFnJson {
            domain_hash: domain_hash(f.domain()),
            values: f.values().iter().map(poly_to_json).collect(),
        }
    }

    pub fn to_function(&self, domain: Arc<Vec<Gallery>>, rank: usize) -> Result<EqFunction> {
        let expected = domain_hash(&domain);
        if self.domain_hash != expected {
            return Err(Error::DomainMismatch(format!(
                "domain hash {} does not match the computed domain ({expected})",
                self.domain_hash
            )));
        }
        let values = self
            .values
            .iter()
            .map(|v| poly_from_json(rank, v))
            .collect::<Result<Vec<_>>>()?;
        EqFunction::new(domain, values)
    }
}

#[derive(Clone, Serialize, Deserialize, Debug)]
pub struct GallerificationJson {
    pub x: Vec<usize>,
    pub t: Vec<Vec<usize>>,
    pub gamma: Vec<u8>,
}
