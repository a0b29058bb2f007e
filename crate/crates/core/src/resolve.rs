//! Resolving-set verification on `Q^n`.
//!
//! Each vertex's distance vector is packed into an integer key with
//! `entry_bits(n)` bits per landmark. Keys that fit in 64 or 128 bits are
//! sorted directly; wider vectors are compared as byte rows. A collision
//! (two vertices with equal keys) certifies the set is not resolving, and the
//! reported witness is always the numerically smallest colliding pair, so the
//! result is identical for any thread count.

use std::collections::HashSet;
use std::hash::Hash;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hypercube::{hamming_distance, Dimension, Landmarks, Vertex};

/// Distances from one vertex to each landmark, in landmark order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DistanceVector(Vec<u32>);

impl DistanceVector {
    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

pub fn distance_vector(v: Vertex, s: &Landmarks) -> DistanceVector {
    DistanceVector(s.members().iter().map(|&m| hamming_distance(v, m)).collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub resolving: bool,
    /// Smallest pair `u < v` (by `u`, then `v`) with equal distance vectors.
    pub witness: Option<(Vertex, Vertex)>,
    pub vertices_checked: u64,
    pub elapsed: Duration,
}

impl VerificationReport {
    fn new(n: Dimension, witness: Option<(Vertex, Vertex)>, start: Instant) -> Self {
        VerificationReport {
            resolving: witness.is_none(),
            witness,
            vertices_checked: n.vertex_count() as u64,
            elapsed: start.elapsed(),
        }
    }
}

trait PackedKey: Copy + Ord + Hash + Send + Sync {
    const WIDTH: u32;
    const ZERO: Self;
    fn push(self, bits: u32, entry: u32) -> Self;
}

impl PackedKey for u64 {
    const WIDTH: u32 = 64;
    const ZERO: Self = 0;
    #[inline(always)]
    fn push(self, bits: u32, entry: u32) -> Self {
        (self << bits) | entry as u64
    }
}

impl PackedKey for u128 {
    const WIDTH: u32 = 128;
    const ZERO: Self = 0;
    #[inline(always)]
    fn push(self, bits: u32, entry: u32) -> Self {
        (self << bits) | entry as u128
    }
}

#[inline(always)]
fn hamming_key<K: PackedKey>(u: u32, probes: &[u32], bits: u32) -> K {
    probes
        .iter()
        .fold(K::ZERO, |k, &s| k.push(bits, (u ^ s).count_ones()))
}

// Within one level class, d(w, t) = |w| + |t| - 2|w & t|, so the overlap
// count carries the same information as the distance.
#[inline(always)]
fn overlap_key<K: PackedKey>(w: u32, probes: &[u32], bits: u32) -> K {
    probes
        .iter()
        .fold(K::ZERO, |k, &t| k.push(bits, (w & t).count_ones()))
}

fn sorted_duplicates<K: PackedKey>(mut keys: Vec<K>) -> Vec<K> {
    keys.par_sort_unstable();
    let mut dups: Vec<K> = keys
        .windows(2)
        .filter(|w| w[0] == w[1])
        .map(|w| w[0])
        .collect();
    dups.dedup();
    dups
}

/// Decides whether `s` resolves `Q^n` by comparing all `2^n` distance vectors.
pub fn is_resolving(s: &Landmarks) -> VerificationReport {
    let start = Instant::now();
    let n = s.dimension();
    let probes: Vec<u32> = s.members().iter().map(|v| v.bits()).collect();
    let width = probes.len() as u32 * n.entry_bits();
    let witness = if width <= u64::WIDTH {
        full_narrow::<u64>(n, &probes)
    } else if width <= u128::WIDTH {
        full_narrow::<u128>(n, &probes)
    } else {
        let all: Vec<u32> = (0..=n.mask()).collect();
        wide_min_collision(&all, probes.len(), |u, row| {
            for (cell, &p) in row.iter_mut().zip(&probes) {
                *cell = (u ^ p).count_ones() as u8;
            }
        }, |u| u)
    };
    VerificationReport::new(n, witness, start)
}

fn full_narrow<K: PackedKey>(n: Dimension, probes: &[u32]) -> Option<(Vertex, Vertex)> {
    let bits = n.entry_bits();
    let count = n.vertex_count() as u32;
    let keys: Vec<K> = (0..count)
        .into_par_iter()
        .map(|u| hamming_key(u, probes, bits))
        .collect();
    let dups = sorted_duplicates(keys);
    if dups.is_empty() {
        return None;
    }
    let dups: HashSet<K> = dups.into_iter().collect();
    let u = (0..count)
        .into_par_iter()
        .find_first(|&u| dups.contains(&hamming_key::<K>(u, probes, bits)))
        .expect("duplicate key has a first occurrence");
    let ku: K = hamming_key(u, probes, bits);
    let v = (u + 1..count)
        .into_par_iter()
        .find_first(|&v| hamming_key::<K>(v, probes, bits) == ku)
        .expect("duplicate key has a second occurrence");
    Some((Vertex::from_bits(u), Vertex::from_bits(v)))
}

/// Same verdict and witness as [`is_resolving`], computed after translating
/// the set so its first member becomes the empty vertex. The empty landmark's
/// distance is the level, so vectors only need comparing inside each level
/// class, and only against the remaining landmarks.
pub fn is_resolving_fast(s: &Landmarks) -> VerificationReport {
    let start = Instant::now();
    let n = s.dimension();
    let shift = s.members()[0].bits();
    let probes: Vec<u32> = s.members()[1..].iter().map(|v| v.bits() ^ shift).collect();
    let width = probes.len() as u32 * n.entry_bits();
    let witness = if width <= u64::WIDTH {
        levels_narrow::<u64>(n, &probes, shift)
    } else if width <= u128::WIDTH {
        levels_narrow::<u128>(n, &probes, shift)
    } else {
        levels_wide(n, &probes, shift)
    };
    VerificationReport::new(n, witness, start)
}

fn level_members(n: Dimension, k: u32) -> Vec<u32> {
    crate::hypercube::enumerate_level(n, k)
        .expect("level within range")
        .map(|v| v.bits())
        .collect()
}

fn levels_narrow<K: PackedKey>(
    n: Dimension,
    probes: &[u32],
    shift: u32,
) -> Option<(Vertex, Vertex)> {
    let bits = n.entry_bits();
    let dups: HashSet<(u32, K)> = (0..=n.get())
        .into_par_iter()
        .flat_map_iter(|k| {
            let keys: Vec<K> = level_members(n, k)
                .into_iter()
                .map(|w| overlap_key(w, probes, bits))
                .collect();
            sorted_duplicates(keys).into_iter().map(move |key| (k, key))
        })
        .collect();
    if dups.is_empty() {
        return None;
    }
    // Scan in original coordinates so the witness is the smallest pair there.
    let class = |u: u32| {
        let w = u ^ shift;
        (w.count_ones(), overlap_key::<K>(w, probes, bits))
    };
    let count = n.vertex_count() as u32;
    let u = (0..count)
        .into_par_iter()
        .find_first(|&u| dups.contains(&class(u)))
        .expect("duplicate class has a first occurrence");
    let cu = class(u);
    let v = (u + 1..count)
        .into_par_iter()
        .find_first(|&v| class(v) == cu)
        .expect("duplicate class has a second occurrence");
    Some((Vertex::from_bits(u), Vertex::from_bits(v)))
}

fn levels_wide(n: Dimension, probes: &[u32], shift: u32) -> Option<(Vertex, Vertex)> {
    (0..=n.get())
        .into_par_iter()
        .filter_map(|k| {
            let members = level_members(n, k);
            wide_min_collision(&members, probes.len(), |w, row| {
                for (cell, &t) in row.iter_mut().zip(probes) {
                    *cell = (w & t).count_ones() as u8;
                }
            }, |w| w ^ shift)
        })
        .min()
}

/// Smallest colliding pair among `vertices` whose rows (filled by `fill`)
/// coincide, with vertices renamed through `rename` before comparison.
fn wide_min_collision(
    vertices: &[u32],
    width: usize,
    fill: impl Fn(u32, &mut [u8]) + Sync,
    rename: impl Fn(u32) -> u32 + Sync,
) -> Option<(Vertex, Vertex)> {
    if width == 0 {
        return smallest_two(vertices.iter().map(|&w| rename(w)));
    }
    let mut rows = vec![0u8; vertices.len() * width];
    rows.par_chunks_mut(width)
        .zip(vertices.par_iter())
        .for_each(|(row, &w)| fill(w, row));
    let row = |i: u32| &rows[i as usize * width..(i as usize + 1) * width];
    let mut order: Vec<u32> = (0..vertices.len() as u32).collect();
    order.par_sort_unstable_by(|&a, &b| row(a).cmp(row(b)).then(a.cmp(&b)));

    let mut best: Option<(Vertex, Vertex)> = None;
    let mut i = 0;
    while i < order.len() {
        let mut j = i + 1;
        while j < order.len() && row(order[j]) == row(order[i]) {
            j += 1;
        }
        if j - i >= 2 {
            let pair = smallest_two(order[i..j].iter().map(|&o| rename(vertices[o as usize])));
            best = match (best, pair) {
                (Some(b), Some(p)) => Some(b.min(p)),
                (b, p) => b.or(p),
            };
        }
        i = j;
    }
    best
}

fn smallest_two(it: impl Iterator<Item = u32>) -> Option<(Vertex, Vertex)> {
    let (mut a, mut b) = (u32::MAX, u32::MAX);
    let mut seen = 0usize;
    for x in it {
        seen += 1;
        if x < a {
            b = a;
            a = x;
        } else if x < b {
            b = x;
        }
    }
    (seen >= 2).then(|| (Vertex::from_bits(a), Vertex::from_bits(b)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Minimality {
    pub minimal: bool,
    /// Members whose removal still leaves a resolving set, in landmark order.
    pub removable: Vec<Vertex>,
}

/// Checks every single-member deletion. Supersets of resolving sets resolve,
/// so any resolving proper subset forces some one-deletion to resolve too.
pub fn is_minimal(s: &Landmarks) -> Result<Minimality> {
    if !is_resolving_fast(s).resolving {
        return Err(Error::NotResolving);
    }
    let removable: Vec<Vertex> = (0..s.len())
        .filter(|&i| {
            s.without(i)
                .map(|rest| is_resolving_fast(&rest).resolving)
                .unwrap_or(false)
        })
        .map(|i| s.members()[i])
        .collect();
    Ok(Minimality {
        minimal: removable.is_empty(),
        removable,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::HashMap;

    fn dim(n: u32) -> Dimension {
        Dimension::new(n).unwrap()
    }

    fn set(n: u32, spec: &str) -> Landmarks {
        Landmarks::parse(dim(n), spec).unwrap()
    }

    fn vx(n: u32, s: &str) -> Vertex {
        Vertex::parse(s, dim(n)).unwrap()
    }

    /// Brute-force: all pairs of vertices, full vectors.
    fn oracle(s: &Landmarks) -> Option<(Vertex, Vertex)> {
        let mut first: HashMap<DistanceVector, Vertex> = HashMap::new();
        let mut best: Option<(Vertex, Vertex)> = None;
        for u in s.dimension().vertices() {
            let dv = distance_vector(u, s);
            match first.get(&dv) {
                Some(&f) => {
                    if best.map_or(true, |(bu, _)| f < bu) {
                        best = Some((f, u));
                    }
                }
                None => {
                    first.insert(dv, u);
                }
            }
        }
        best
    }

    #[test]
    fn distance_vector_examples() {
        let paper = set(5, "01000,00100,00010,00001");
        assert_eq!(distance_vector(Vertex::EMPTY, &paper).entries(), &[1, 1, 1, 1]);
        let shifted = set(5, "{},{2,3},{2,4},{2,5}");
        assert_eq!(distance_vector(vx(5, "{1}"), &shifted).entries(), &[1, 3, 3, 3]);
        for (j, &m) in shifted.members().iter().enumerate() {
            assert_eq!(distance_vector(m, &shifted).entries()[j], 0);
        }
    }

    #[test]
    fn known_sets() {
        let q3 = set(3, "000,100,010");
        assert!(is_resolving(&q3).resolving);
        let paper = set(5, "01000,00100,00010,00001");
        assert!(is_resolving(&paper).resolving);
        let er = set(5, "{1,2,3,4,5},{1,2,3},{2,4},{2,3,5}");
        let r = is_resolving(&er);
        assert!(r.resolving);
        assert_eq!(r.witness, None);
        assert_eq!(r.vertices_checked, 32);
    }

    #[test]
    fn deletion_witness_is_e1_e2() {
        let s = set(5, "00100,00010,00001");
        let want = Some((vx(5, "10000"), vx(5, "01000")));
        let slow = is_resolving(&s);
        assert!(!slow.resolving);
        assert_eq!(slow.witness, want);
        assert_eq!(is_resolving_fast(&s).witness, want);
    }

    #[test]
    fn single_landmark_all_positions() {
        // exercises the empty-key branch of the fast path
        for n in 1..=6 {
            for bits in 0..(1u32 << n) {
                let s = Landmarks::new(dim(n), vec![Vertex::from_bits(bits)]).unwrap();
                let want = oracle(&s);
                assert_eq!(is_resolving(&s).witness, want);
                assert_eq!(is_resolving_fast(&s).witness, want);
                assert_eq!(want.is_none(), n == 1);
            }
        }
    }

    #[test]
    fn wide_keys_full_vertex_set() {
        for n in 1..=8 {
            let all = Landmarks::new(dim(n), dim(n).vertices().collect()).unwrap();
            assert!(is_resolving(&all).resolving, "n={n}");
            assert!(is_resolving_fast(&all).resolving, "n={n}");
        }
    }

    #[test]
    fn wide_keys_witness_agrees_with_oracle() {
        // landmarks agreeing on coordinates 7 and 8 cannot tell e7 + w from e8 + w
        let n = dim(8);
        let members: Vec<Vertex> = n
            .vertices()
            .filter(|v| v.contains(7) == v.contains(8) && v.level() != 2)
            .collect();
        let s = Landmarks::new(n, members).unwrap();
        assert!(s.len() as u32 * n.entry_bits() > 128);
        let want = oracle(&s);
        assert_eq!(want, Some((vx(8, "00000010"), vx(8, "00000001"))));
        assert_eq!(is_resolving(&s).witness, want);
        assert_eq!(is_resolving_fast(&s).witness, want);
        let mut rotated = s.members().to_vec();
        rotated.rotate_left(17);
        assert_eq!(is_resolving_fast(&Landmarks::new(n, rotated).unwrap()).witness, want);
    }

    #[test]
    fn minimality_examples() {
        let paper = set(5, "01000,00100,00010,00001");
        assert_eq!(
            is_minimal(&paper).unwrap(),
            Minimality {
                minimal: true,
                removable: vec![]
            }
        );
        let er = set(5, "11111,01111,10111,11011,11101");
        let m = is_minimal(&er).unwrap();
        assert!(!m.minimal);
        assert!(m.removable.contains(&vx(5, "11111")));
        let extra = paper.with(vx(5, "11111")).unwrap();
        assert!(!is_minimal(&extra).unwrap().minimal);
        assert_eq!(
            is_minimal(&set(5, "00100,00010,00001")),
            Err(Error::NotResolving)
        );
        // a single landmark that resolves (n = 1) is trivially minimal
        assert!(is_minimal(&set(1, "0")).unwrap().minimal);
    }

    fn arb_landmarks(max_n: u32) -> impl Strategy<Value = Landmarks> {
        (1..=max_n).prop_flat_map(|n| {
            let count = 1usize << n;
            proptest::sample::subsequence((0..count as u32).collect::<Vec<_>>(), 1..=count.min(8))
                .prop_shuffle()
                .prop_map(move |bits| {
                    Landmarks::new(dim(n), bits.into_iter().map(Vertex::from_bits).collect()).unwrap()
                })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(400))]

        #[test]
        fn both_paths_match_brute_force(s in arb_landmarks(8)) {
            let want = oracle(&s);
            prop_assert_eq!(is_resolving(&s).witness, want);
            prop_assert_eq!(is_resolving_fast(&s).witness, want);
        }

        #[test]
        fn landmark_order_does_not_matter(s in arb_landmarks(7), seed in any::<u64>()) {
            let mut members = s.members().to_vec();
            let len = members.len();
            members.rotate_left((seed as usize) % len);
            let rotated = Landmarks::new(s.dimension(), members).unwrap();
            prop_assert_eq!(is_resolving(&s).resolving, is_resolving(&rotated).resolving);
        }

        #[test]
        fn supersets_of_resolving_sets_resolve(s in arb_landmarks(7), extra in any::<u32>()) {
            let extra = Vertex::from_bits(extra & s.dimension().mask());
            if is_resolving(&s).resolving && !s.contains(extra) {
                prop_assert!(is_resolving(&s.with(extra).unwrap()).resolving);
            }
        }
    }
}
