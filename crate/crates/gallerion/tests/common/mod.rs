//! Helpers shared by the integration suites: seeded random generators for
//! sequences, galleries and constrained families, and an exhaustive
//! gallery-type oracle independent of the library's search.

#![allow(dead_code)]

use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use gallerion::gallery::{Gallery, IndexSet, ReflSequence};
use gallerion::nested::ConstrainedFamily;
use gallerion::rootsys::{RootSystem, WeylElement};

pub fn system(name: &str) -> Arc<RootSystem> {
    RootSystem::by_name(name).unwrap()
}

/// A random sequence of (not necessarily simple) reflections.
pub fn random_reflection_sequence(
    rng: &mut ChaCha8Rng,
    rs: &Arc<RootSystem>,
    max_len: usize,
) -> ReflSequence {
    let roots = rs.positive_roots();
    let len = rng.gen_range(0..=max_len);
    let letters = (0..len)
        .map(|_| {
            rs.reflection_by_root(&roots[rng.gen_range(0..roots.len())])
                .unwrap()
        })
        .collect();
    ReflSequence::new(rs.clone(), IndexSet::initial(len), letters).unwrap()
}

/// A random sequence of simple reflections of exactly the given length.
pub fn random_simple_sequence(
    rng: &mut ChaCha8Rng,
    rs: &Arc<RootSystem>,
    len: usize,
) -> ReflSequence {
    let word: Vec<usize> = (0..len).map(|_| rng.gen_range(1..=rs.rank())).collect();
    ReflSequence::from_simple_word(rs.clone(), &word).unwrap()
}

pub fn random_gallery(rng: &mut ChaCha8Rng, over: &ReflSequence) -> Gallery {
    let bits = (0..over.len()).map(|_| rng.gen_bool(0.5)).collect();
    Gallery::new(over.clone(), bits).unwrap()
}

/// A random valid nested structure on `1..=n` with realizable constraints:
/// the constraint of each pair is the interval product of a random gallery,
/// so the constrained set is never empty.
pub fn random_family(
    rng: &mut ChaCha8Rng,
    seq: &ReflSequence,
    max_pairs: usize,
) -> ConstrainedFamily {
    let n = seq.len() as i64;
    let witness = random_gallery(rng, seq);
    for _ in 0..50 {
        let count = rng.gen_range(0..=max_pairs);
        let mut pairs = Vec::new();
        for _ in 0..count {
            if n == 0 {
                break;
            }
            let a = rng.gen_range(1..=n);
            let b = rng.gen_range(a..=n);
            pairs.push((a, b));
        }
        pairs.sort_unstable();
        pairs.dedup();
        let v: Vec<WeylElement> = pairs
            .iter()
            .map(|&(a, b)| interval_product(&witness, a, b))
            .collect();
        if let Ok(cf) = ConstrainedFamily::new(seq.clone(), pairs, v) {
            return cf;
        }
    }
    ConstrainedFamily::unconstrained(seq.clone())
}

pub fn interval_product(g: &Gallery, a: i64, b: i64) -> WeylElement {
    let rank = g.over().system().rank();
    let mut w = WeylElement::identity(rank);
    for &l in g.over().index().labels() {
        if a <= l && l <= b {
            w = w.mul(&g.entry_at(l).unwrap());
        }
    }
    w
}

/// All sequences over the reflections of `rs` of exactly length `len`.
pub fn all_reflection_sequences(rs: &Arc<RootSystem>, len: usize) -> Vec<ReflSequence> {
    let letters: Vec<WeylElement> = rs
        .positive_roots()
        .iter()
        .map(|b| rs.reflection_by_root(b).unwrap())
        .collect();
    let mut out = Vec::new();
    let total = letters.len().pow(len as u32);
    for code in 0..total {
        let mut c = code;
        let seq_letters: Vec<WeylElement> = (0..len)
            .map(|_| {
                let k = c % letters.len();
                c /= letters.len();
                letters[k].clone()
            })
            .collect();
        out.push(ReflSequence::new(rs.clone(), IndexSet::initial(len), seq_letters).unwrap());
    }
    out
}

/// All sequences of simple reflections of exactly length `len`.
pub fn all_simple_sequences(rs: &Arc<RootSystem>, len: usize) -> Vec<ReflSequence> {
    let mut out = Vec::new();
    let total = rs.rank().pow(len as u32);
    for code in 0..total {
        let mut c = code;
        let word: Vec<usize> = (0..len)
            .map(|_| {
                let k = c % rs.rank();
                c /= rs.rank();
                k + 1
            })
            .collect();
        out.push(ReflSequence::from_simple_word(rs.clone(), &word).unwrap());
    }
    out
}

/// Exhaustive gallery-type decision: tries every group element and every
/// bit vector, rebuilding the candidate simple sequence step by step and
/// verifying the defining identity by direct twisting. Independent of the
/// library's pruned search.
pub fn gallery_type_oracle(s: &ReflSequence) -> bool {
    let rs = s.system();
    let rank = rs.rank();
    let n = s.len();
    let axes: Vec<_> = (0..n).map(|p| s.axis(p)).collect();
    for x in rs.weyl_elements() {
        'bits: for mask in 0..(1u64 << n) {
            let mut g = WeylElement::identity(rank);
            let mut g_inv = WeylElement::identity(rank);
            let mut t_letters = Vec::with_capacity(n);
            let mut bits = Vec::with_capacity(n);
            for (p, axis_p) in axes.iter().enumerate() {
                let axis = g_inv.apply(&x.apply(axis_p)).positive_rep();
                if axis.as_simple().is_none() {
                    continue 'bits;
                }
                let r = rs.reflection_by_root(&axis).unwrap();
                let bit = (mask >> (n - 1 - p)) & 1 == 1;
                if bit {
                    g = g.mul(&r);
                    g_inv = r.mul(&g_inv);
                }
                t_letters.push(r);
                bits.push(bit);
            }
            let t = ReflSequence::new(rs.clone(), s.index().clone(), t_letters).unwrap();
            let gamma = Gallery::new(t.clone(), bits).unwrap();
            if t.twist(&gamma).unwrap() == s.conjugate(&x) {
                return true;
            }
        }
    }
    false
}
