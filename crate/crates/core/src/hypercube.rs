//! Vertices of the n-cube as bit sets over the coordinates `{1, ..., n}`.
//!
//! Coordinate `i` lives in bit `i - 1`. A vertex is simultaneously a binary
//! string (leftmost character is coordinate 1) and a subset of `{1, ..., n}`;
//! binary addition of two strings is the symmetric difference of the subsets,
//! and the graph distance between two vertices is the size of that difference.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported dimension. Full verification keeps one packed key per
/// vertex, so `2^28` keys is the desk-scale ceiling.
pub const MAX_DIMENSION: u32 = 28;

/// Number of hypercube coordinates, `1 <= n <= MAX_DIMENSION`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dimension(u32);

impl Dimension {
    pub fn new(n: u32) -> Result<Self> {
        if (1..=MAX_DIMENSION).contains(&n) {
            Ok(Dimension(n))
        } else {
            Err(Error::DimensionOutOfRange {
                n,
                min: 1,
                max: MAX_DIMENSION,
            })
        }
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    /// `2^n`.
    #[inline]
    pub fn vertex_count(self) -> usize {
        1usize << self.0
    }

    /// Mask with the low `n` bits set; also the all-ones vertex.
    #[inline]
    pub fn mask(self) -> u32 {
        ((1u64 << self.0) - 1) as u32
    }

    /// Bits needed to store one distance value in `0..=n`.
    #[inline]
    pub fn entry_bits(self) -> u32 {
        32 - self.0.leading_zeros()
    }

    /// The next dimension up, if still within the cap.
    pub fn succ(self) -> Result<Self> {
        Dimension::new(self.0 + 1)
    }

    pub fn all_ones(self) -> Vertex {
        Vertex(self.mask())
    }

    /// Every vertex of the cube in increasing numeric order.
    pub fn vertices(self) -> impl Iterator<Item = Vertex> {
        (0..=self.mask()).map(Vertex)
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A vertex of the hypercube. Bit `i - 1` set means coordinate `i` is 1.
///
/// The type does not carry its dimension; validity for a given `n` is checked
/// where vertices enter a [`Landmarks`] or are parsed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Vertex(u32);

impl Vertex {
    /// The empty set, all-zeros string.
    pub const EMPTY: Vertex = Vertex(0);

    pub fn new(bits: u32, n: Dimension) -> Result<Self> {
        if bits & !n.mask() != 0 {
            return Err(Error::VertexOutOfRange { bits, n: n.get() });
        }
        Ok(Vertex(bits))
    }

    /// Unchecked constructor; callers guarantee the bits fit their dimension.
    #[inline]
    pub const fn from_bits(bits: u32) -> Self {
        Vertex(bits)
    }

    #[inline]
    pub const fn bits(self) -> u32 {
        self.0
    }

    /// `e_i`: a single 1 in coordinate `i` (1-based).
    pub fn unit(i: u32, n: Dimension) -> Result<Self> {
        if i == 0 || i > n.get() {
            return Err(Error::InvalidArgument(format!(
                "coordinate {i} outside 1..={n}"
            )));
        }
        Ok(Vertex(1 << (i - 1)))
    }

    /// The subset with the given 1-based elements.
    pub fn from_elements(elements: &[u32], n: Dimension) -> Result<Self> {
        elements
            .iter()
            .try_fold(Vertex::EMPTY, |acc, &i| Ok(acc.translate(Vertex::unit(i, n)?)))
            .and_then(|v: Vertex| {
                if v.level() as usize != elements.len() {
                    Err(Error::InvalidArgument(format!(
                        "repeated element in {elements:?}"
                    )))
                } else {
                    Ok(v)
                }
            })
    }

    #[inline]
    pub fn fits(self, n: Dimension) -> bool {
        self.0 & !n.mask() == 0
    }

    /// Whether coordinate `i` (1-based) is 1.
    #[inline]
    pub fn contains(self, i: u32) -> bool {
        i >= 1 && i <= 32 && (self.0 >> (i - 1)) & 1 == 1
    }

    /// Number of ones; the level set this vertex belongs to.
    #[inline]
    pub fn level(self) -> u32 {
        self.0.count_ones()
    }

    /// Binary addition, i.e. symmetric difference.
    #[inline]
    pub fn translate(self, by: Vertex) -> Vertex {
        Vertex(self.0 ^ by.0)
    }

    /// 1-based elements in increasing order.
    pub fn elements(self) -> Vec<u32> {
        (1..=32).filter(|&i| self.contains(i)).collect()
    }

    /// Binary-string form, leftmost character = coordinate 1.
    pub fn to_binary(self, n: Dimension) -> String {
        (0..n.get())
            .map(|b| if (self.0 >> b) & 1 == 1 { '1' } else { '0' })
            .collect()
    }

    /// Set-notation form, e.g. `{2,3}` or `{}`.
    pub fn to_set_notation(self) -> String {
        let inner: Vec<String> = self.elements().iter().map(u32::to_string).collect();
        format!("{{{}}}", inner.join(","))
    }

    /// Parses either a binary string of exactly `n` characters or set
    /// notation such as `{1,3}`.
    pub fn parse(text: &str, n: Dimension) -> Result<Self> {
        parse_vertex(text, n).map_err(|reason| Error::Parse {
            token: text.to_string(),
            position: 1,
            offset: 0,
            reason,
        })
    }

    /// Image under a coordinate permutation.
    pub fn permute(self, perm: &Permutation) -> Vertex {
        perm.apply(self)
    }
}

#[inline]
pub fn hamming_distance(x: Vertex, y: Vertex) -> u32 {
    (x.0 ^ y.0).count_ones()
}

#[inline]
pub fn translate(v: Vertex, x: Vertex) -> Vertex {
    v.translate(x)
}

#[inline]
pub fn level(v: Vertex) -> u32 {
    v.level()
}

fn parse_vertex(text: &str, n: Dimension) -> std::result::Result<Vertex, String> {
    let t = text.trim();
    if let Some(rest) = t.strip_prefix('{') {
        let inner = rest
            .strip_suffix('}')
            .ok_or_else(|| "set notation must end with '}'".to_string())?;
        let mut bits = 0u32;
        if inner.trim().is_empty() {
            return Ok(Vertex::EMPTY);
        }
        for part in inner.split(',') {
            let part = part.trim();
            let i: u32 = part
                .parse()
                .map_err(|_| format!("element {part:?} is not a positive integer"))?;
            if i == 0 || i > n.get() {
                return Err(format!("element {i} outside 1..={n}"));
            }
            let b = 1u32 << (i - 1);
            if bits & b != 0 {
                return Err(format!("element {i} repeated"));
            }
            bits |= b;
        }
        Ok(Vertex(bits))
    } else {
        if t.len() != n.get() as usize {
            return Err(format!(
                "binary string must have exactly {n} characters, found {}",
                t.chars().count()
            ));
        }
        let mut bits = 0u32;
        for (i, c) in t.chars().enumerate() {
            match c {
                '0' => {}
                '1' => bits |= 1 << i,
                other => return Err(format!("unexpected character {other:?}")),
            }
        }
        Ok(Vertex(bits))
    }
}

/// Splits a comma-separated list of vertex texts. Commas inside braces
/// belong to set notation and do not split.
pub fn parse_vertex_list(spec: &str, n: Dimension) -> Result<Vec<Vertex>> {
    let mut tokens: Vec<(usize, &str)> = Vec::new();
    let mut depth = 0i32;
    let mut start = 0usize;
    for (i, c) in spec.char_indices() {
        match c {
            '{' => depth += 1,
            '}' => depth -= 1,
            ',' if depth == 0 => {
                tokens.push((start, &spec[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    tokens.push((start, &spec[start..]));

    tokens
        .into_iter()
        .enumerate()
        .map(|(idx, (offset, tok))| {
            parse_vertex(tok, n).map_err(|reason| Error::Parse {
                token: tok.trim().to_string(),
                position: idx + 1,
                offset,
                reason,
            })
        })
        .collect()
}

/// An ordered list of distinct vertices of `Q^n`, the candidate resolving set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Landmarks {
    n: Dimension,
    members: Vec<Vertex>,
}

impl Landmarks {
    pub fn new(n: Dimension, members: Vec<Vertex>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::EmptyLandmarks);
        }
        let mut seen = std::collections::HashSet::with_capacity(members.len());
        for &v in &members {
            if !v.fits(n) {
                return Err(Error::VertexOutOfRange {
                    bits: v.bits(),
                    n: n.get(),
                });
            }
            if !seen.insert(v) {
                return Err(Error::DuplicateLandmark(v.to_binary(n)));
            }
        }
        Ok(Landmarks { n, members })
    }

    /// Members already known to be distinct and in range.
    pub(crate) fn from_trusted(n: Dimension, members: Vec<Vertex>) -> Self {
        debug_assert!(!members.is_empty());
        debug_assert!(members.iter().all(|v| v.fits(n)));
        Landmarks { n, members }
    }

    pub fn parse(n: Dimension, spec: &str) -> Result<Self> {
        Landmarks::new(n, parse_vertex_list(spec, n)?)
    }

    #[inline]
    pub fn dimension(&self) -> Dimension {
        self.n
    }

    #[inline]
    pub fn members(&self) -> &[Vertex] {
        &self.members
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.members.len()
    }

    /// Always false; landmark sets are nonempty by construction.
    #[inline]
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.members.contains(&v)
    }

    /// `S + x`, order preserved.
    pub fn translate(&self, x: Vertex) -> Result<Landmarks> {
        if !x.fits(self.n) {
            return Err(Error::VertexOutOfRange {
                bits: x.bits(),
                n: self.n.get(),
            });
        }
        Ok(Landmarks {
            n: self.n,
            members: self.members.iter().map(|s| s.translate(x)).collect(),
        })
    }

    /// Image under a coordinate permutation, order preserved.
    pub fn permute(&self, perm: &Permutation) -> Result<Landmarks> {
        if perm.dimension() != self.n {
            return Err(Error::InvalidArgument(format!(
                "permutation of {} coordinates applied to dimension {}",
                perm.dimension(),
                self.n
            )));
        }
        Ok(Landmarks {
            n: self.n,
            members: self.members.iter().map(|&s| perm.apply(s)).collect(),
        })
    }

    /// Copy without the member at `index`; `None` if that would leave it empty.
    pub fn without(&self, index: usize) -> Option<Landmarks> {
        if self.members.len() <= 1 || index >= self.members.len() {
            return None;
        }
        let mut members = self.members.clone();
        members.remove(index);
        Some(Landmarks { n: self.n, members })
    }

    /// Copy with `v` appended.
    pub fn with(&self, v: Vertex) -> Result<Landmarks> {
        let mut members = self.members.clone();
        members.push(v);
        Landmarks::new(self.n, members)
    }

    /// Comma-separated binary strings.
    pub fn to_binary_list(&self) -> String {
        self.members
            .iter()
            .map(|v| v.to_binary(self.n))
            .collect::<Vec<_>>()
            .join(",")
    }
}

pub fn translate_set(s: &Landmarks, x: Vertex) -> Result<Landmarks> {
    s.translate(x)
}

/// A permutation of the coordinates; the vertex automorphism it induces
/// preserves Hamming distance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    n: Dimension,
    // images[i] = 0-based target position of 0-based coordinate i
    images: Vec<u32>,
}

impl Permutation {
    /// `images[i]` is the 0-based position coordinate `i + 1` moves to.
    pub fn new(n: Dimension, images: Vec<u32>) -> Result<Self> {
        if images.len() != n.get() as usize {
            return Err(Error::InvalidArgument(format!(
                "permutation has {} entries, expected {n}",
                images.len()
            )));
        }
        let mut seen = 0u32;
        for &p in &images {
            if p >= n.get() || seen & (1 << p) != 0 {
                return Err(Error::InvalidArgument(format!(
                    "{images:?} is not a permutation of 0..{n}"
                )));
            }
            seen |= 1 << p;
        }
        Ok(Permutation { n, images })
    }

    pub fn identity(n: Dimension) -> Self {
        Permutation {
            n,
            images: (0..n.get()).collect(),
        }
    }

    /// Coordinate `i + 1` moves to `i` for `i >= 1`, coordinate 1 moves to `n`.
    pub fn rotate_down(n: Dimension) -> Self {
        let k = n.get();
        Permutation {
            n,
            images: (0..k).map(|i| (i + k - 1) % k).collect(),
        }
    }

    pub fn dimension(&self) -> Dimension {
        self.n
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn apply(&self, v: Vertex) -> Vertex {
        let mut out = 0u32;
        let mut bits = v.bits();
        while bits != 0 {
            let i = bits.trailing_zeros();
            out |= 1 << self.images[i as usize];
            bits &= bits - 1;
        }
        Vertex(out)
    }
}

/// Vertices of level `k` in increasing numeric order (Gosper's hack).
#[derive(Debug, Clone)]
pub struct LevelIter {
    next: Option<u64>,
    limit: u64,
}

impl Iterator for LevelIter {
    type Item = Vertex;

    fn next(&mut self) -> Option<Vertex> {
        let cur = self.next?;
        if cur >= self.limit {
            self.next = None;
            return None;
        }
        self.next = if cur == 0 {
            None
        } else {
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            Some((((r ^ cur) >> 2) / c) | r)
        };
        Some(Vertex(cur as u32))
    }
}

pub fn enumerate_level(n: Dimension, k: u32) -> Result<LevelIter> {
    if k > n.get() {
        return Err(Error::LevelOutOfRange {
            k,
            n: n.get(),
            min: 0,
            max: n.get(),
        });
    }
    Ok(LevelIter {
        next: Some((1u64 << k) - 1),
        limit: 1u64 << n.get(),
    })
}

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn dim(n: u32) -> Dimension {
        Dimension::new(n).unwrap()
    }

    fn v(s: &str) -> Vertex {
        Vertex::parse(s, dim(s.len() as u32)).unwrap()
    }

    #[test]
    fn dimension_bounds() {
        assert!(Dimension::new(0).is_err());
        assert!(Dimension::new(29).is_err());
        assert_eq!(dim(28).vertex_count(), 1 << 28);
        assert_eq!(dim(1).entry_bits(), 1);
        assert_eq!(dim(3).entry_bits(), 2);
        assert_eq!(dim(4).entry_bits(), 3);
        assert_eq!(dim(8).entry_bits(), 4);
        assert_eq!(dim(28).entry_bits(), 5);
    }

    #[test]
    fn notation_examples() {
        let x = v("11001");
        let y = v("10100");
        assert_eq!(x.elements(), vec![1, 2, 5]);
        assert_eq!(y.elements(), vec![1, 3]);
        assert_eq!(hamming_distance(x, y), 3);
        assert_eq!(translate(x, y), v("01101"));
        assert_eq!(translate(x, y).elements(), vec![2, 3, 5]);
        assert_eq!(level(x), 3);
        assert_eq!(Vertex::unit(2, dim(5)).unwrap(), v("01000"));
    }

    #[test]
    fn distance_and_translate_trivia() {
        let n = dim(5);
        assert_eq!(hamming_distance(v("00000"), v("11111")), 5);
        assert_eq!(hamming_distance(v("10110"), v("10110")), 0);
        let e2 = Vertex::unit(2, n).unwrap();
        assert_eq!(translate(e2, e2), Vertex::EMPTY);
        let w = v("10011");
        assert_eq!(translate(Vertex::EMPTY, w), w);
        assert_eq!(level(Vertex::EMPTY), 0);
        assert_eq!(level(dim(7).all_ones()), 7);
    }

    #[test]
    fn parse_both_encodings() {
        let n = dim(5);
        assert_eq!(Vertex::parse("{2,3}", n).unwrap(), v("01100"));
        assert_eq!(Vertex::parse("{}", n).unwrap(), Vertex::EMPTY);
        assert_eq!(Vertex::parse(" { 1 , 5 } ", n).unwrap(), v("10001"));
        assert!(Vertex::parse("{6}", n).is_err());
        assert!(Vertex::parse("{0}", n).is_err());
        assert!(Vertex::parse("{2,2}", n).is_err());
        assert!(Vertex::parse("0101", n).is_err());
        assert!(Vertex::parse("0102x", n).is_err());
        assert_eq!(v("01100").to_set_notation(), "{2,3}");
        assert_eq!(Vertex::EMPTY.to_set_notation(), "{}");
    }

    #[test]
    fn parse_list_reports_position() {
        let n = dim(5);
        let list = parse_vertex_list("{1,2,3,4,5},{1,2,3},{2,4},01101", n).unwrap();
        assert_eq!(list, vec![v("11111"), v("11100"), v("01010"), v("01101")]);
        match parse_vertex_list("01000,0010x,00001", n) {
            Err(Error::Parse {
                token,
                position,
                offset,
                ..
            }) => {
                assert_eq!(token, "0010x");
                assert_eq!(position, 2);
                assert_eq!(offset, 6);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn landmarks_validation() {
        let n = dim(3);
        assert_eq!(Landmarks::new(n, vec![]), Err(Error::EmptyLandmarks));
        assert!(matches!(
            Landmarks::new(n, vec![Vertex::EMPTY, Vertex::EMPTY]),
            Err(Error::DuplicateLandmark(_))
        ));
        assert!(matches!(
            Landmarks::new(n, vec![Vertex::from_bits(8)]),
            Err(Error::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn translate_set_examples() {
        let n = dim(5);
        let s = Landmarks::parse(n, "01000,00100,00010,00001").unwrap();
        let e2 = Vertex::unit(2, n).unwrap();
        let t = translate_set(&s, e2).unwrap();
        assert_eq!(t, Landmarks::parse(n, "{},{2,3},{2,4},{2,5}").unwrap());
        assert_eq!(translate_set(&s, Vertex::EMPTY).unwrap(), s);
        assert_eq!(translate_set(&t, e2).unwrap(), s);
    }

    #[test]
    fn enumerate_level_examples() {
        let got: Vec<Vertex> = enumerate_level(dim(3), 1).unwrap().collect();
        assert_eq!(got, vec![v("100"), v("010"), v("001")]);
        let got: Vec<Vertex> = enumerate_level(dim(5), 0).unwrap().collect();
        assert_eq!(got, vec![Vertex::EMPTY]);
        assert_eq!(enumerate_level(dim(5), 2).unwrap().count(), 10);
        assert_eq!(enumerate_level(dim(5), 5).unwrap().count(), 1);
        assert!(enumerate_level(dim(5), 6).is_err());
    }

    #[test]
    fn enumerate_level_matches_filter() {
        for n in 1..=12 {
            let d = dim(n);
            for k in 0..=n {
                let got: Vec<Vertex> = enumerate_level(d, k).unwrap().collect();
                let want: Vec<Vertex> = d.vertices().filter(|v| v.level() == k).collect();
                assert_eq!(got, want, "n={n} k={k}");
                assert_eq!(got.len() as u128, binomial(n as u64, k as u64));
            }
        }
        assert_eq!(enumerate_level(dim(28), 28).unwrap().count(), 1);
    }

    #[test]
    fn distance_is_level_of_difference_exhaustive() {
        for n in 1..=8 {
            let d = dim(n);
            for a in d.vertices() {
                for b in d.vertices() {
                    assert_eq!(hamming_distance(a, b), level(translate(a, b)));
                }
            }
        }
    }

    #[test]
    fn translation_preserves_distance_exhaustive() {
        for n in 1..=6 {
            let d = dim(n);
            for x in d.vertices() {
                for a in d.vertices() {
                    for b in d.vertices() {
                        assert_eq!(
                            hamming_distance(a, b),
                            hamming_distance(translate(a, x), translate(b, x))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn rotate_down_maps_units() {
        let n = dim(6);
        let p = Permutation::rotate_down(n);
        for i in 2..=6 {
            assert_eq!(
                p.apply(Vertex::unit(i, n).unwrap()),
                Vertex::unit(i - 1, n).unwrap()
            );
        }
        assert_eq!(p.apply(Vertex::unit(1, n).unwrap()), Vertex::unit(6, n).unwrap());
        assert!(Permutation::new(n, vec![0, 1, 2, 3, 4, 4]).is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(63, 3), 39_711);
        assert_eq!(binomial(255, 5), 8_637_487_551);
        assert_eq!(binomial(5, 7), 0);
        assert_eq!(binomial(0, 0), 1);
    }

    fn vertex_in(n: u32) -> impl Strategy<Value = u32> {
        0..(1u32 << n)
    }

    proptest! {
        #[test]
        fn translation_preserves_distance(n in 1u32..=28, a in any::<u32>(), b in any::<u32>(), x in any::<u32>()) {
            let mask = dim(n).mask();
            let (a, b, x) = (Vertex(a & mask), Vertex(b & mask), Vertex(x & mask));
            prop_assert_eq!(hamming_distance(a, b), hamming_distance(translate(a, x), translate(b, x)));
        }

        #[test]
        fn triangle_inequality(n in 1u32..=28, a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
            let mask = dim(n).mask();
            let (a, b, c) = (Vertex(a & mask), Vertex(b & mask), Vertex(c & mask));
            prop_assert!(hamming_distance(a, c) <= hamming_distance(a, b) + hamming_distance(b, c));
            prop_assert_eq!(hamming_distance(a, b), hamming_distance(b, a));
        }

        #[test]
        fn canonical_text_round_trips(bits in vertex_in(12)) {
            let n = dim(12);
            let v = Vertex(bits);
            prop_assert_eq!(Vertex::parse(&v.to_binary(n), n).unwrap(), v);
            prop_assert_eq!(Vertex::parse(&v.to_set_notation(), n).unwrap(), v);
        }

        #[test]
        fn permutation_preserves_distance(seed in any::<u64>(), a in vertex_in(9), b in vertex_in(9)) {
            let n = dim(9);
            let mut images: Vec<u32> = (0..9).collect();
            let mut s = seed;
            for i in (1..images.len()).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                images.swap(i, (s >> 33) as usize % (i + 1));
            }
            let p = Permutation::new(n, images).unwrap();
            prop_assert_eq!(hamming_distance(Vertex(a), Vertex(b)), hamming_distance(p.apply(Vertex(a)), p.apply(Vertex(b))));
        }
    }
}
