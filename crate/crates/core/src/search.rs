//! Exact minimum resolving sets of `Q^n` by exhaustive search.
//!
//! Translation is an automorphism, so every resolving set can be moved to one
//! containing the empty vertex. Candidates of size `k` are therefore `{phi}`
//! plus a `(k-1)`-subset of the nonzero vertices, enumerated in lexicographic
//! order of their sorted member lists. Distances to `phi` are the levels, so
//! the search starts from the level partition of the vertex set and refines it
//! one landmark at a time; a candidate resolves when the partition becomes
//! discrete.
//!
//! Work is split across threads by the first chosen vertex and reduced with
//! an ordered first-hit, so the reported example and the examined count do
//! not depend on the number of workers.

use std::time::{Duration, Instant};

use itertools::Itertools;
use rayon::prelude::*;

use crate::construct::best_construction;
use crate::error::{Error, Result};
use crate::hypercube::{binomial, Dimension, Landmarks, Vertex};

/// Largest `n` searched without `force`.
pub const EXHAUSTIVE_GUARD: u32 = 8;
/// Largest `n` the search engine accepts at all.
pub const SEARCH_LIMIT: u32 = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Largest set size tried exhaustively.
    pub max_k: usize,
    /// Lift the `n <= EXHAUSTIVE_GUARD` cost guard.
    pub force: bool,
    /// Also quotient by coordinate permutations: the non-empty member of
    /// smallest level is fixed to `{1, ..., j}`.
    pub symmetry: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            max_k: usize::MAX,
            force: false,
            symmetry: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    pub n: Dimension,
    pub min_size: usize,
    pub example: Landmarks,
    /// Candidates covered in enumeration order up to and including the first
    /// hit. Pruned subtrees count as covered.
    pub subsets_examined: u128,
    pub elapsed: Duration,
    /// The minimum is certified: no smaller set resolves.
    pub exhaustive: bool,
}

/// Class labels of a partition of the `2^n` vertices.
#[derive(Debug, Clone)]
struct Partition {
    class: Vec<u32>,
    classes: u32,
}

impl Partition {
    fn trivial(n: Dimension) -> Self {
        Partition {
            class: vec![0; n.vertex_count()],
            classes: 1,
        }
    }

    fn levels(n: Dimension) -> Self {
        Partition {
            class: (0..n.vertex_count() as u32).map(u32::count_ones).collect(),
            classes: n.get() + 1,
        }
    }

    fn is_discrete(&self) -> bool {
        self.classes as usize == self.class.len()
    }

    /// Splits every class by distance to `s`, writing into `out`.
    fn refine_into(&self, s: u32, n: Dimension, table: &mut Vec<u32>, out: &mut Partition) {
        let width = n.get() as usize + 1;
        table.clear();
        table.resize(self.classes as usize * width, u32::MAX);
        out.class.resize(self.class.len(), 0);
        let mut next = 0u32;
        for (v, (&c, slot)) in self.class.iter().zip(out.class.iter_mut()).enumerate() {
            let idx = c as usize * width + (v as u32 ^ s).count_ones() as usize;
            if table[idx] == u32::MAX {
                table[idx] = next;
                next += 1;
            }
            *slot = table[idx];
        }
        out.classes = next;
    }

    fn refine(&self, s: u32, n: Dimension) -> Partition {
        let mut out = Partition {
            class: Vec::new(),
            classes: 0,
        };
        self.refine_into(s, n, &mut Vec::new(), &mut out);
        out
    }

    /// Whether adding `s` makes the partition discrete.
    fn discrete_after(&self, s: u32, n: Dimension, stamp: &mut Stamp) -> bool {
        let width = n.get() as usize + 1;
        if (self.classes as usize) * width < self.class.len() {
            return false;
        }
        let epoch = stamp.begin(self.classes as usize * width);
        for (v, &c) in self.class.iter().enumerate() {
            let idx = c as usize * width + (v as u32 ^ s).count_ones() as usize;
            if stamp.marks[idx] == epoch {
                return false;
            }
            stamp.marks[idx] = epoch;
        }
        true
    }
}

#[derive(Debug, Default)]
struct Stamp {
    marks: Vec<u32>,
    epoch: u32,
}

impl Stamp {
    fn begin(&mut self, len: usize) -> u32 {
        if self.marks.len() < len {
            self.marks.resize(len, 0);
        }
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.marks.iter_mut().for_each(|m| *m = 0);
            self.epoch = 1;
        }
        self.epoch
    }
}

/// Per-worker buffers for depth-first refinement.
struct Scratch {
    depth: Vec<Partition>,
    table: Vec<u32>,
    stamp: Stamp,
}

impl Scratch {
    fn new(levels: usize) -> Self {
        Scratch {
            depth: (0..levels)
                .map(|_| Partition {
                    class: Vec::new(),
                    classes: 0,
                })
                .collect(),
            table: Vec::new(),
            stamp: Stamp::default(),
        }
    }
}

/// Vertex count needed: with `r` landmarks left each class splits into at
/// most `n + 1` parts.
fn hopeless(p: &Partition, r: usize, n: Dimension) -> bool {
    let mut reach = p.classes as u128;
    let total = p.class.len() as u128;
    for _ in 0..r {
        if reach >= total {
            return false;
        }
        reach *= n.get() as u128 + 1;
    }
    reach < total
}

/// First `r`-subset of `pool[start..]` (lexicographic by index) completing
/// `p` to a discrete partition. Returns pool indices.
fn first_completion(
    p: &Partition,
    pool: &[u32],
    start: usize,
    r: usize,
    n: Dimension,
    scratch: &mut Scratch,
    depth: usize,
) -> Option<Vec<usize>> {
    if r == 0 {
        return p.is_discrete().then(Vec::new);
    }
    if pool.len() < start + r || hopeless(p, r, n) {
        return None;
    }
    if r == 1 {
        return (start..pool.len())
            .find(|&i| p.discrete_after(pool[i], n, &mut scratch.stamp))
            .map(|i| vec![i]);
    }
    for i in start..=pool.len() - r {
        let mut child = std::mem::replace(
            &mut scratch.depth[depth],
            Partition {
                class: Vec::new(),
                classes: 0,
            },
        );
        p.refine_into(pool[i], n, &mut scratch.table, &mut child);
        let found = first_completion(&child, pool, i + 1, r - 1, n, scratch, depth + 1);
        scratch.depth[depth] = child;
        if let Some(mut rest) = found {
            rest.insert(0, i);
            return Some(rest);
        }
    }
    None
}

/// Parallel over the first chosen index with an ordered first-hit.
fn first_completion_par(p: &Partition, pool: &[u32], r: usize, n: Dimension) -> Option<Vec<usize>> {
    if r == 0 {
        return p.is_discrete().then(Vec::new);
    }
    if pool.len() < r || hopeless(p, r, n) {
        return None;
    }
    (0..=pool.len() - r).into_par_iter().find_map_first(|i| {
        let mut scratch = Scratch::new(r);
        if r == 1 {
            return p
                .discrete_after(pool[i], n, &mut scratch.stamp)
                .then(|| vec![i]);
        }
        let child = p.refine(pool[i], n);
        first_completion(&child, pool, i + 1, r - 1, n, &mut scratch, 0).map(|mut rest| {
            rest.insert(0, i);
            rest
        })
    })
}

/// Lexicographic rank of a sorted index combination among `r`-subsets of
/// `0..m`.
fn combination_rank(combo: &[usize], m: usize) -> u128 {
    let r = combo.len();
    let mut rank = 0u128;
    let mut lo = 0usize;
    for (j, &c) in combo.iter().enumerate() {
        for x in lo..c {
            rank += binomial((m - 1 - x) as u64, (r - 1 - j) as u64);
        }
        lo = c + 1;
    }
    rank
}

/// One enumeration block: a root partition and the pool the rest is drawn from.
struct Block {
    root: Partition,
    fixed: Vec<u32>,
    pool: Vec<u32>,
}

fn blocks(n: Dimension, k: usize, symmetry: bool) -> Vec<Block> {
    let levels = Partition::levels(n);
    if !symmetry || k < 2 {
        return vec![Block {
            root: levels,
            fixed: vec![0],
            pool: (1..n.vertex_count() as u32).collect(),
        }];
    }
    (1..=n.get())
        .map(|j| {
            let rep = (1u32 << j) - 1;
            Block {
                root: levels.refine(rep, n),
                fixed: vec![0, rep],
                pool: (1..n.vertex_count() as u32)
                    .filter(|&v| v != rep && v.count_ones() >= j)
                    .collect(),
            }
        })
        .collect()
}

/// Outcome of scanning every candidate of one size.
struct SizeScan {
    hit: Option<Landmarks>,
    examined: u128,
}

fn scan_size(n: Dimension, k: usize, symmetry: bool) -> SizeScan {
    let mut examined = 0u128;
    for block in blocks(n, k, symmetry) {
        if block.fixed.len() > k {
            continue;
        }
        let r = k - block.fixed.len();
        let total = binomial(block.pool.len() as u64, r as u64);
        match first_completion_par(&block.root, &block.pool, r, n) {
            Some(idx) => {
                examined += combination_rank(&idx, block.pool.len()) + 1;
                let mut members: Vec<Vertex> = block
                    .fixed
                    .iter()
                    .copied()
                    .chain(idx.iter().map(|&i| block.pool[i]))
                    .map(Vertex::from_bits)
                    .collect();
                members.sort();
                return SizeScan {
                    hit: Some(Landmarks::from_trusted(n, members)),
                    examined,
                };
            }
            None => examined += total,
        }
    }
    SizeScan {
        hit: None,
        examined,
    }
}

fn check_guard(n: Dimension, force: bool) -> Result<()> {
    if n.get() > SEARCH_LIMIT {
        return Err(Error::SearchGuard {
            n: n.get(),
            guard: SEARCH_LIMIT,
        });
    }
    if n.get() > EXHAUSTIVE_GUARD && !force {
        return Err(Error::SearchGuard {
            n: n.get(),
            guard: EXHAUSTIVE_GUARD,
        });
    }
    Ok(())
}

/// Metric dimension of `Q^n` by exhaustive search up to `max_k`.
pub fn min_resolving_size(n: Dimension, max_k: usize) -> Result<SearchReport> {
    min_resolving_size_with(
        n,
        &SearchOptions {
            max_k,
            ..SearchOptions::default()
        },
    )
}

pub fn min_resolving_size_with(n: Dimension, opts: &SearchOptions) -> Result<SearchReport> {
    if opts.max_k < 1 {
        return Err(Error::InvalidArgument("max_k must be at least 1".into()));
    }
    check_guard(n, opts.force)?;
    let start = Instant::now();
    let mut examined = 0u128;
    // The full vertex set always resolves, so the loop ends by k = 2^n.
    let last = opts.max_k.min(n.vertex_count());
    for k in 1..=last {
        let scan = scan_size(n, k, opts.symmetry);
        examined += scan.examined;
        if let Some(example) = scan.hit {
            return Ok(SearchReport {
                n,
                min_size: k,
                example,
                subsets_examined: examined,
                elapsed: start.elapsed(),
                exhaustive: true,
            });
        }
    }
    let example = best_construction(n);
    Ok(SearchReport {
        n,
        min_size: example.len(),
        example,
        subsets_examined: examined,
        elapsed: start.elapsed(),
        exhaustive: false,
    })
}

/// True iff no resolving set of size `k` exists (checked over sets that
/// contain the empty vertex, which loses nothing by translation).
pub fn verify_no_smaller(n: Dimension, k: usize) -> Result<bool> {
    verify_no_smaller_with(n, k, false)
}

pub fn verify_no_smaller_with(n: Dimension, k: usize, force: bool) -> Result<bool> {
    if k < 1 {
        return Err(Error::InvalidArgument("set size must be at least 1".into()));
    }
    check_guard(n, force)?;
    Ok(scan_size(n, k, false).hit.is_none())
}

/// Largest `n` for [`find_all_min_sets`] with normalisation, and without.
pub const ENUMERATE_LIMIT: (u32, u32) = (6, 5);
/// Largest set size for [`find_all_min_sets`].
pub const ENUMERATE_MAX_K: usize = 5;

/// Every resolving set of size `k` in lexicographic order of sorted member
/// lists. With `normalize` only sets containing the empty vertex are listed.
pub fn find_all_min_sets(
    n: Dimension,
    k: usize,
    normalize: bool,
) -> Result<impl Iterator<Item = Landmarks>> {
    let limit = if normalize {
        ENUMERATE_LIMIT.0
    } else {
        ENUMERATE_LIMIT.1
    };
    if n.get() > limit {
        return Err(Error::SearchGuard {
            n: n.get(),
            guard: limit,
        });
    }
    if k < 1 || k > ENUMERATE_MAX_K {
        return Err(Error::InvalidArgument(format!(
            "set size {k} outside 1..={ENUMERATE_MAX_K}"
        )));
    }
    let count = n.vertex_count() as u32;
    let (root, fixed, pool): (Partition, Vec<u32>, Vec<u32>) = if normalize {
        (Partition::levels(n), vec![0], (1..count).collect())
    } else {
        (Partition::trivial(n), vec![], (0..count).collect())
    };
    let r = k - fixed.len();
    let mut table = Vec::new();
    let mut a = root.clone();
    let mut b = root.clone();
    let iter = pool.into_iter().combinations(r).filter_map(move |combo| {
        a.class.clone_from(&root.class);
        a.classes = root.classes;
        for &s in &combo {
            a.refine_into(s, n, &mut table, &mut b);
            std::mem::swap(&mut a, &mut b);
        }
        a.is_discrete().then(|| {
            let members = fixed
                .iter()
                .chain(combo.iter())
                .map(|&v| Vertex::from_bits(v))
                .collect();
            Landmarks::from_trusted(n, members)
        })
    });
    Ok(iter)
}
