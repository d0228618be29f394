//! Ground sets and subsets represented as dynamic bit vectors.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Hard cap on ground-set width in bits. Blow-ups multiply the width, so the
/// cap is far above the exhaustive-enumeration budget.
pub const DEFAULT_WIDTH_CAP: usize = 4096;

/// The finite universe; elements are identified with `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroundSet {
    n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl GroundSet {
    pub fn new(n: usize) -> Result<Self> {
        Self::with_cap(n, DEFAULT_WIDTH_CAP)
    }

    pub fn with_cap(n: usize, cap: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("ground set must be nonempty".into()));
        }
        if n > cap {
            return Err(Error::WidthCapExceeded { requested: n, cap });
        }
        Ok(GroundSet { n, labels: None })
    }

    pub fn with_labels(n: usize, labels: Vec<String>) -> Result<Self> {
        let mut g = Self::new(n)?;
        if labels.len() != n {
            return Err(Error::InvalidInput(format!(
                "expected {} labels, got {}",
                n,
                labels.len()
            )));
        }
        g.labels = Some(labels);
        Ok(g)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Iterator over all elements.
    pub fn elements(&self) -> impl Iterator<Item = usize> {
        0..self.n
    }

    pub fn empty_mask(&self) -> SubsetMask {
        SubsetMask::empty(self.n)
    }

    pub fn full_mask(&self) -> SubsetMask {
        SubsetMask::full(self.n)
    }
}

/// A subset of the ground set as a fixed-width bit vector.
///
/// Only bits below the width may be set; all operations assume equal widths.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SubsetMask {
    width: usize,
    words: Vec<u64>,
}

fn words_for(width: usize) -> usize {
    width.div_ceil(64)
}

impl SubsetMask {
    pub fn empty(width: usize) -> Self {
        SubsetMask {
            width,
            words: vec![0u64; words_for(width)],
        }
    }

    pub fn full(width: usize) -> Self {
        let mut m = Self::empty(width);
        for i in 0..width {
            m.insert(i);
        }
        m
    }

    pub fn singleton(width: usize, elem: usize) -> Self {
        let mut m = Self::empty(width);
        m.insert(elem);
        m
    }

    pub fn from_elems(width: usize, elems: &[usize]) -> Result<Self> {
        let mut m = Self::empty(width);
        for &e in elems {
            if e >= width {
                return Err(Error::InvalidInput(format!(
                    "element {} out of range for width {}",
                    e, width
                )));
            }
            m.insert(e);
        }
        Ok(m)
    }

    /// Low 64-bit view, valid when `width <= 64`. Handy for exhaustive scans.
    pub fn from_bits64(width: usize, bits: u64) -> Self {
        debug_assert!(width <= 64);
        SubsetMask {
            width,
            words: vec![bits],
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn insert(&mut self, elem: usize) {
        debug_assert!(elem < self.width);
        self.words[elem / 64] |= 1u64 << (elem % 64);
    }

    pub fn remove(&mut self, elem: usize) {
        debug_assert!(elem < self.width);
        self.words[elem / 64] &= !(1u64 << (elem % 64));
    }

    pub fn contains(&self, elem: usize) -> bool {
        elem < self.width && (self.words[elem / 64] >> (elem % 64)) & 1 == 1
    }

    pub fn cardinality(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset_of(&self, other: &SubsetMask) -> bool {
        debug_assert_eq!(self.width, other.width);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &SubsetMask) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn union(&self, other: &SubsetMask) -> SubsetMask {
        debug_assert_eq!(self.width, other.width);
        SubsetMask {
            width: self.width,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a | b)
                .collect(),
        }
    }

    pub fn intersection(&self, other: &SubsetMask) -> SubsetMask {
        debug_assert_eq!(self.width, other.width);
        SubsetMask {
            width: self.width,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn difference(&self, other: &SubsetMask) -> SubsetMask {
        debug_assert_eq!(self.width, other.width);
        SubsetMask {
            width: self.width,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & !b)
                .collect(),
        }
    }

    pub fn intersection_size(&self, other: &SubsetMask) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn elems(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.cardinality());
        for (wi, &w) in self.words.iter().enumerate() {
            let mut bits = w;
            while bits != 0 {
                let tz = bits.trailing_zeros() as usize;
                out.push(wi * 64 + tz);
                bits &= bits - 1;
            }
        }
        out
    }

    /// Relabel this subset into copy `copy` of a blown-up ground set with
    /// `copies` disjoint copies: element `e` maps to `copy * width + e`.
    pub fn embed_in_copy(&self, copy: usize, copies: usize) -> SubsetMask {
        let new_width = self.width * copies;
        let mut out = SubsetMask::empty(new_width);
        for e in self.elems() {
            out.insert(copy * self.width + e);
        }
        out
    }

    /// Inverse of `embed_in_copy` for subsets contained in one copy.
    pub fn restrict_to_copy(&self, copy: usize, copy_size: usize) -> SubsetMask {
        let mut out = SubsetMask::empty(copy_size);
        for e in self.elems() {
            if e >= copy * copy_size && e < (copy + 1) * copy_size {
                out.insert(e - copy * copy_size);
            }
        }
        out
    }

    /// Mask covering the index range of one copy.
    pub fn copy_block(width: usize, copy: usize, copy_size: usize) -> SubsetMask {
        let mut out = SubsetMask::empty(width);
        for e in copy * copy_size..(copy + 1) * copy_size {
            out.insert(e);
        }
        out
    }
}

impl PartialOrd for SubsetMask {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Numeric order of the underlying bit pattern (ties cannot happen between
/// distinct masks of equal width); used for deterministic outputs.
impl Ord for SubsetMask {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        debug_assert_eq!(self.width, other.width);
        for (a, b) in self.words.iter().rev().zip(other.words.iter().rev()) {
            match a.cmp(b) {
                std::cmp::Ordering::Equal => continue,
                ord => return ord,
            }
        }
        std::cmp::Ordering::Equal
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elems().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", e)?;
        }
        write!(f, "}}")
    }
}

/// Iterate over all subsets of the elements of `of` (including the empty set).
/// The number of subsets is `2^|of|`; the caller enforces budgets.
pub fn subsets_of(of: &SubsetMask) -> SubsetIter {
    SubsetIter {
        elems: of.elems(),
        width: of.width(),
        next: 0,
        done: false,
    }
}

pub struct SubsetIter {
    elems: Vec<usize>,
    width: usize,
    next: u64,
    done: bool,
}

impl Iterator for SubsetIter {
    type Item = SubsetMask;

    fn next(&mut self) -> Option<SubsetMask> {
        if self.done {
            return None;
        }
        debug_assert!(self.elems.len() <= 63);
        let bits = self.next;
        let mut m = SubsetMask::empty(self.width);
        for (i, &e) in self.elems.iter().enumerate() {
            if (bits >> i) & 1 == 1 {
                m.insert(e);
            }
        }
        if self.next + 1 == 1u64 << self.elems.len() {
            self.done = true;
        } else {
            self.next += 1;
        }
        Some(m)
    }
}

/// All `k`-element subsets of the elements of `of`, in lexicographic order of
/// the chosen element indices.
pub fn k_subsets_of(of: &SubsetMask, k: usize) -> Vec<SubsetMask> {
    let elems = of.elems();
    let mut out = Vec::new();
    if k > elems.len() {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let mut m = SubsetMask::empty(of.width());
        for &i in &idx {
            m.insert(elems[i]);
        }
        out.push(m);
        // advance the combination
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + elems.len() - k {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}
