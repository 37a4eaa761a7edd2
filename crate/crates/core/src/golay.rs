//! The ternary Golay code and the 243-vertex graph built from its parity
//! matrix.

use std::collections::BTreeSet;

use crate::graph::Graph;

pub type Trits<const N: usize> = [u8; N];

/// Generator matrix `[I6 | P]`.
pub const GOLAY_G: [[u8; 11]; 6] = [
    [1, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1],
    [0, 1, 0, 0, 0, 0, 1, 1, 2, 2, 0],
    [0, 0, 1, 0, 0, 0, 1, 2, 1, 0, 2],
    [0, 0, 0, 1, 0, 0, 2, 1, 0, 1, 2],
    [0, 0, 0, 0, 1, 0, 2, 0, 1, 2, 1],
    [0, 0, 0, 0, 0, 1, 0, 2, 2, 1, 1],
];

/// Parity matrix: `H·c = 0` exactly on codewords.
pub const GOLAY_H: [[u8; 11]; 5] = [
    [2, 2, 2, 1, 1, 0, 1, 0, 0, 0, 0],
    [2, 2, 1, 2, 0, 1, 0, 1, 0, 0, 0],
    [2, 1, 2, 0, 2, 1, 0, 0, 1, 0, 0],
    [2, 1, 0, 2, 1, 2, 0, 0, 0, 1, 0],
    [2, 0, 1, 1, 2, 2, 0, 0, 0, 0, 1],
];

/// Number of vertices of the graph: `3^5`.
pub const BVLS_ORDER: usize = 243;

/// `w·G` over GF(3).
pub fn golay_encode(w: &Trits<6>) -> Trits<11> {
    let mut out = [0u8; 11];
    for (row, &wi) in GOLAY_G.iter().zip(w) {
        for (o, &g) in out.iter_mut().zip(row) {
            *o = (*o + wi % 3 * g) % 3;
        }
    }
    out
}

/// `H·c` over GF(3).
pub fn golay_syndrome(c: &Trits<11>) -> Trits<5> {
    let mut out = [0u8; 5];
    for (o, row) in out.iter_mut().zip(&GOLAY_H) {
        *o = (row.iter().zip(c).map(|(&h, &x)| h as u32 * (x % 3) as u32).sum::<u32>() % 3) as u8;
    }
    out
}

pub fn weight<const N: usize>(v: &Trits<N>) -> usize {
    v.iter().filter(|&&x| x != 0).count()
}

/// All `3^6` codewords, in order of the message read as a base-3 number.
pub fn all_codewords() -> Vec<Trits<11>> {
    (0..729u32)
        .map(|mut x| {
            let mut w = [0u8; 6];
            for t in w.iter_mut().rev() {
                *t = (x % 3) as u8;
                x /= 3;
            }
            golay_encode(&w)
        })
        .collect()
}

/// Column `i` of `H` as a vector of `V(5,3)`.
pub fn parity_column(i: usize) -> Trits<5> {
    std::array::from_fn(|r| GOLAY_H[r][i])
}

/// Base-3 index of a `V(5,3)` vector, most significant trit first.
pub fn v5_index(v: &Trits<5>) -> usize {
    v.iter().fold(0, |acc, &t| acc * 3 + t as usize)
}

pub fn v5_from_index(mut x: usize) -> Trits<5> {
    let mut v = [0u8; 5];
    for t in v.iter_mut().rev() {
        *t = (x % 3) as u8;
        x /= 3;
    }
    v
}

fn v5_add(a: &Trits<5>, b: &Trits<5>) -> Trits<5> {
    std::array::from_fn(|i| (a[i] + b[i]) % 3)
}

fn v5_neg(a: &Trits<5>) -> Trits<5> {
    std::array::from_fn(|i| (3 - a[i]) % 3)
}

/// The 22 vectors `±xᵢ`.
pub fn connection_set() -> Vec<Trits<5>> {
    (0..11)
        .flat_map(|i| {
            let x = parity_column(i);
            [x, v5_neg(&x)]
        })
        .collect()
}

/// `{±xᵢ} ∪ {±xᵢ ± xⱼ : i < j}` as a set; 242 elements when all are distinct.
pub fn parity_span_vectors() -> (usize, BTreeSet<Trits<5>>) {
    let singles = connection_set();
    let mut listed = singles.len();
    let mut set: BTreeSet<Trits<5>> = singles.iter().copied().collect();
    for i in 0..11 {
        for j in i + 1..11 {
            let (xi, xj) = (parity_column(i), parity_column(j));
            for a in [xi, v5_neg(&xi)] {
                for b in [xj, v5_neg(&xj)] {
                    set.insert(v5_add(&a, &b));
                    listed += 1;
                }
            }
        }
    }
    (listed, set)
}

/// Cayley graph on `V(5,3)` with connection set `{±xᵢ}`.
///
/// # Panics
/// If the 242 span vectors are not distinct, which the code's minimum
/// distance rules out.
pub fn bvls_construct() -> Graph {
    let (listed, set) = parity_span_vectors();
    assert!(
        listed == 242 && set.len() == 242 && !set.contains(&[0; 5]),
        "parity columns are not 4-wise independent"
    );
    let conn: BTreeSet<Trits<5>> = connection_set().into_iter().collect();
    Graph::from_fn(BVLS_ORDER, |u, v| {
        let diff = v5_add(&v5_from_index(u), &v5_neg(&v5_from_index(v)));
        conn.contains(&diff)
    })
    .expect("243 vertices is within bounds")
}
