//! The bundled SL5 example: a ten-letter sequence in type A4 with two
//! nested constraints, the five-point first factor and segment, and the
//! minimal-degree dual elements on all three gallery sets, keyed by gallery
//! bit vectors.

use std::collections::HashMap;
use std::sync::Arc;

use crate::gallery::{Gallery, ReflSequence};
use crate::gkm::DualFunction;
use crate::nested::ConstrainedFamily;
use crate::polyring::RootFraction;
use crate::rootsys::{Root, RootSystem, WeylElement};

/// The example data: the constrained family, its two tensor factors, and
/// the three minimal-degree dual functions.
#[derive(Clone)]
pub struct Sl5Example {
    pub system: Arc<RootSystem>,
    /// The family `(s, R, v)` with `s = (w4 w3 w4 w2 w1 w2 w1 w2 w3 w4)`,
    /// `R = {(1,10),(4,8)}`, `v(1,10) = w1 w3 w4 w3`, `v(4,8) = w1`.
    pub family: ConstrainedFamily,
    /// The full product `w = w1 w3 w4 w3`.
    pub target: WeylElement,
    /// Minimal-degree dual element on the 25 constrained galleries.
    pub a: DualFunction,
    /// First factor: `t = (w4 w3 w4 w3 w4)` on the surviving labels
    /// `{1,2,3,9,10}` with full product `w3 w4 w3`.
    pub b_family: ConstrainedFamily,
    pub b: DualFunction,
    /// Segment factor: `r = (w2 w1 w2 w1 w2)` on labels `{4..8}` with full
    /// product `w1`.
    pub c_family: ConstrainedFamily,
    pub c: DualFunction,
}

/// One table row: gallery bits, numerator sign, denominator roots.
type Row = (&'static str, i64, [[i64; 4]; 4]);
type ShortRow = (&'static str, i64, [[i64; 4]; 2]);

const A_TABLE: [Row; 25] = [
    (
        "0010001011",
        1,
        [[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0]],
    ),
    (
        "1000001011",
        -1,
        [[0, 0, 0, 1], [0, 0, 1, 1], [0, 1, 0, 0], [1, 0, 0, 0]],
    ),
    (
        "0011011011",
        -1,
        [[0, 0, 1, 0], [0, 0, 0, 1], [0, 1, 0, 0], [1, 1, 0, 0]],
    ),
    (
        "1001011011",
        1,
        [[0, 0, 1, 1], [0, 0, 0, 1], [0, 1, 0, 0], [1, 1, 0, 0]],
    ),
    (
        "0010100011",
        -1,
        [[0, 0, 1, 0], [0, 0, 0, 1], [1, 1, 0, 0], [1, 0, 0, 0]],
    ),
    (
        "1000100011",
        1,
        [[0, 0, 1, 1], [1, 1, 0, 0], [0, 0, 0, 1], [1, 0, 0, 0]],
    ),
    (
        "0010110111",
        -1,
        [[0, 0, 1, 0], [0, 0, 0, 1], [0, 1, 0, 0], [1, 1, 0, 0]],
    ),
    (
        "1000110111",
        1,
        [[0, 0, 1, 1], [0, 0, 0, 1], [0, 1, 0, 0], [1, 1, 0, 0]],
    ),
    (
        "0011111111",
        1,
        [[0, 0, 1, 0], [0, 0, 0, 1], [0, 1, 0, 0], [1, 1, 0, 0]],
    ),
    (
        "1001111111",
        -1,
        [[0, 0, 1, 1], [0, 0, 0, 1], [0, 1, 0, 0], [1, 1, 0, 0]],
    ),
    (
        "1100001001",
        -1,
        [[0, 1, 1, 1], [0, 0, 1, 0], [0, 0, 1, 1], [1, 0, 0, 0]],
    ),
    (
        "1101011001",
        1,
        [[0, 0, 1, 0], [0, 0, 1, 1], [0, 1, 1, 1], [1, 1, 1, 1]],
    ),
    (
        "1100100001",
        1,
        [[0, 0, 1, 0], [1, 1, 1, 1], [0, 0, 1, 1], [1, 0, 0, 0]],
    ),
    (
        "1100110101",
        1,
        [[0, 0, 1, 0], [0, 0, 1, 1], [0, 1, 1, 1], [1, 1, 1, 1]],
    ),
    (
        "1101111101",
        -1,
        [[0, 0, 1, 0], [0, 0, 1, 1], [0, 1, 1, 1], [1, 1, 1, 1]],
    ),
    (
        "0110001010",
        -1,
        [[0, 1, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 0, 1, 0]],
    ),
    (
        "0111011010",
        1,
        [[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 1, 0], [1, 1, 1, 0]],
    ),
    (
        "0110100010",
        1,
        [[0, 0, 0, 1], [1, 1, 1, 0], [1, 0, 0, 0], [0, 0, 1, 0]],
    ),
    (
        "0110110110",
        1,
        [[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 1, 0], [1, 1, 1, 0]],
    ),
    (
        "0111111110",
        -1,
        [[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 1, 0], [1, 1, 1, 0]],
    ),
    (
        "1110001000",
        1,
        [[0, 1, 1, 1], [0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0]],
    ),
    (
        "1111011000",
        -1,
        [[0, 1, 1, 1], [0, 0, 1, 0], [0, 0, 0, 1], [1, 1, 1, 1]],
    ),
    (
        "1110100000",
        -1,
        [[1, 1, 1, 1], [0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0]],
    ),
    (
        "1110110100",
        -1,
        [[0, 1, 1, 1], [0, 0, 1, 0], [0, 0, 0, 1], [1, 1, 1, 1]],
    ),
    (
        "1111111100",
        1,
        [[0, 1, 1, 1], [0, 0, 1, 0], [0, 0, 0, 1], [1, 1, 1, 1]],
    ),
];

const B_TABLE: [ShortRow; 5] = [
    ("00111", 1, [[0, 0, 0, 1], [0, 0, 1, 0]]),
    ("10011", -1, [[0, 0, 1, 1], [0, 0, 0, 1]]),
    ("11001", -1, [[0, 0, 1, 0], [0, 0, 1, 1]]),
    ("01110", -1, [[0, 0, 0, 1], [0, 0, 1, 0]]),
    ("11100", 1, [[0, 0, 0, 1], [0, 0, 1, 0]]),
];

const C_TABLE: [ShortRow; 5] = [
    ("00010", 1, [[0, 1, 0, 0], [1, 0, 0, 0]]),
    ("10110", -1, [[0, 1, 0, 0], [1, 1, 0, 0]]),
    ("01000", -1, [[1, 1, 0, 0], [1, 0, 0, 0]]),
    ("01101", -1, [[0, 1, 0, 0], [1, 1, 0, 0]]),
    ("11111", 1, [[0, 1, 0, 0], [1, 1, 0, 0]]),
];

fn bits_of(s: &str) -> Vec<bool> {
    s.chars().map(|c| c == '1').collect()
}

fn dual_from_rows(
    family: &ConstrainedFamily,
    rows: impl IntoIterator<Item = (&'static str, i64, Vec<Root>)>,
) -> DualFunction {
    let rank = family.seq().system().rank();
    let table: HashMap<Vec<bool>, RootFraction> = rows
        .into_iter()
        .map(|(bits, sign, dens)| (bits_of(bits), RootFraction::reciprocal(rank, sign, &dens)))
        .collect();
    let domain = Arc::new(family.enumerate_constrained());
    assert_eq!(domain.len(), table.len(), "fixture table misses galleries");
    let values = domain
        .iter()
        .map(|g: &Gallery| table[g.bits()].clone())
        .collect();
    DualFunction::new(domain, values).expect("aligned fixture values")
}

/// Builds the example from its tables.
pub fn sl5_example() -> Sl5Example {
    let system = RootSystem::by_name("A4").expect("A4 is supported");
    let s = ReflSequence::from_simple_word(system.clone(), &[4, 3, 4, 2, 1, 2, 1, 2, 3, 4])
        .expect("simple word");
    let target = system.weyl_from_word(&[1, 3, 4, 3]).unwrap();
    let w1 = system.weyl_from_word(&[1]).unwrap();
    let family = ConstrainedFamily::new(s, vec![(1, 10), (4, 8)], vec![target.clone(), w1])
        .expect("valid structure");

    // The two factor families come from the decomposition itself.
    let pd = family.project(&[(4, 8)]).expect("disjoint projection");
    let b_family = pd.reduced().clone();
    let c_family = family.segment((4, 8)).expect("segment pair");

    let root = |c: [i64; 4]| Root::new(c.to_vec());
    let a = dual_from_rows(
        &family,
        A_TABLE
            .iter()
            .map(|&(bits, sign, dens)| (bits, sign, dens.iter().map(|&c| root(c)).collect())),
    );
    let b = dual_from_rows(
        &b_family,
        B_TABLE
            .iter()
            .map(|&(bits, sign, dens)| (bits, sign, dens.iter().map(|&c| root(c)).collect())),
    );
    let c = dual_from_rows(
        &c_family,
        C_TABLE
            .iter()
            .map(|&(bits, sign, dens)| (bits, sign, dens.iter().map(|&c| root(c)).collect())),
    );

    Sl5Example {
        system,
        family,
        target,
        a,
        b_family,
        b,
        c_family,
        c,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_is_consistent() {
        let fx = sl5_example();
        assert_eq!(fx.a.domain().len(), 25);
        assert_eq!(fx.b.domain().len(), 5);
        assert_eq!(fx.c.domain().len(), 5);
        // The first factor is (w4 w3 w4 w3 w4) on the surviving labels with
        // full product w3 w4 w3.
        assert_eq!(fx.b_family.seq().index().labels(), &[1, 2, 3, 9, 10]);
        assert_eq!(
            fx.b_family.constraint_of((1, 10)).unwrap(),
            &fx.system.weyl_from_word(&[3, 4, 3]).unwrap()
        );
        // The segment is (w2 w1 w2 w1 w2) on 4..8 with product w1.
        assert_eq!(fx.c_family.seq().index().labels(), &[4, 5, 6, 7, 8]);
        // All values are pure reciprocals of four (resp. two) roots.
        for v in fx.a.values() {
            assert_eq!(v.den().values().map(|&m| m as usize).sum::<usize>(), 4);
        }
        for v in fx.b.values().iter().chain(fx.c.values()) {
            assert_eq!(v.den().values().map(|&m| m as usize).sum::<usize>(), 2);
        }
    }
}
