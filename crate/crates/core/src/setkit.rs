//! Bit-level kernel: subsets of a finite universe as integer codes, and
//! families of subsets as bit-vectors indexed by code.
//!
//! Bit `j` of a [`SubsetCode`] is element `j`. Bit `k` of a [`SetFamily`] is
//! the subset whose code is `k`. Every listing produced by this crate is in
//! ascending code order.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{BitAnd, BitOr};

use crate::Error;

/// Largest universe accepted by single-space operations.
pub const MAX_UNIVERSE: u8 = 16;

/// A finite universe `{0, .., size-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Universe {
    size: u8,
}

impl Universe {
    pub fn new(size: usize) -> Result<Self, Error> {
        if size == 0 || size > MAX_UNIVERSE as usize {
            return Err(Error::InvalidUniverseSize(size));
        }
        Ok(Universe { size: size as u8 })
    }

    pub fn size(self) -> u8 {
        self.size
    }

    /// Number of subsets, `2^size`.
    pub fn subset_count(self) -> usize {
        1usize << self.size
    }

    /// The code of `X` itself.
    pub fn full(self) -> SubsetCode {
        SubsetCode(((1u64 << self.size) - 1) as u32)
    }

    /// Every subset in ascending code order.
    pub fn subsets(self) -> impl DoubleEndedIterator<Item = SubsetCode> + Clone {
        (0..self.subset_count() as u32).map(SubsetCode)
    }

    /// The singleton `{j}`.
    pub fn element(self, j: usize) -> Result<SubsetCode, Error> {
        self.check_index(j)?;
        Ok(SubsetCode(1 << j))
    }

    pub fn check_index(self, j: usize) -> Result<(), Error> {
        if j >= self.size as usize {
            return Err(Error::IndexOutOfUniverse {
                index: j,
                size: self.size,
            });
        }
        Ok(())
    }

    pub fn check(self, a: SubsetCode) -> Result<SubsetCode, Error> {
        if a.0 as usize >= self.subset_count() {
            return Err(Error::CodeOutOfUniverse {
                code: a.0,
                size: self.size,
            });
        }
        Ok(a)
    }

    pub fn complement(self, a: SubsetCode) -> SubsetCode {
        SubsetCode(self.full().0 ^ a.0)
    }

    /// Fixed-width bitstring, character `j` is membership of element `j`.
    pub fn format(self, a: SubsetCode) -> String {
        (0..self.size as usize)
            .map(|j| if a.contains(j) { '1' } else { '0' })
            .collect()
    }

    pub fn parse(self, text: &str) -> Result<SubsetCode, BitstringError> {
        let mut code = 0u32;
        let mut len = 0usize;
        for (column, ch) in text.chars().enumerate() {
            match ch {
                '0' => {}
                '1' if column < self.size as usize => code |= 1 << column,
                '1' => {}
                _ => return Err(BitstringError::BadCharacter { column, found: ch }),
            }
            len += 1;
        }
        if len != self.size as usize {
            return Err(BitstringError::WrongLength {
                expected: self.size as usize,
                got: len,
            });
        }
        Ok(SubsetCode(code))
    }

    /// Adapter for `Display` of a subset as its bitstring.
    pub fn display(self, a: SubsetCode) -> BitsDisplay {
        BitsDisplay {
            universe: self,
            code: a,
        }
    }
}

/// Rejections from [`Universe::parse`]. Columns are zero based.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BitstringError {
    #[error("expected {expected} characters, found {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("unexpected character {found:?} at column {column}")]
    BadCharacter { column: usize, found: char },
}

pub struct BitsDisplay {
    universe: Universe,
    code: SubsetCode,
}

impl fmt::Display for BitsDisplay {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in 0..self.universe.size as usize {
            f.write_str(if self.code.contains(j) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// A subset encoded as a bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SubsetCode(pub u32);

impl SubsetCode {
    pub const EMPTY: SubsetCode = SubsetCode(0);

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn contains(self, j: usize) -> bool {
        j < 32 && self.0 >> j & 1 == 1
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, other: SubsetCode) -> bool {
        self.0 & other.0 == self.0
    }

    pub fn minus(self, other: SubsetCode) -> SubsetCode {
        SubsetCode(self.0 & !other.0)
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    /// Element indices in ascending order.
    pub fn elements(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        core::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let j = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(j)
        })
    }

    /// Every subset of `self`, ascending.
    pub fn subsets(self) -> impl Iterator<Item = SubsetCode> {
        let set = self.0;
        let mut next = Some(0u32);
        core::iter::from_fn(move || {
            let current = next?;
            // carry-ripple step to the next submask
            let step = current.wrapping_sub(set) & set;
            next = if step == 0 { None } else { Some(step) };
            Some(SubsetCode(current))
        })
    }
}

impl BitOr for SubsetCode {
    type Output = SubsetCode;
    fn bitor(self, rhs: SubsetCode) -> SubsetCode {
        SubsetCode(self.0 | rhs.0)
    }
}

impl BitAnd for SubsetCode {
    type Output = SubsetCode;
    fn bitand(self, rhs: SubsetCode) -> SubsetCode {
        SubsetCode(self.0 & rhs.0)
    }
}

/// Builds the code of a set from its element indices.
pub fn encode_set(elements: &[usize], u: Universe) -> Result<SubsetCode, Error> {
    let mut code = 0u32;
    for &j in elements {
        u.check_index(j)?;
        if code >> j & 1 == 1 {
            return Err(Error::DuplicateIndex(j));
        }
        code |= 1 << j;
    }
    Ok(SubsetCode(code))
}

pub fn complement(a: SubsetCode, u: Universe) -> SubsetCode {
    u.complement(a)
}

/// Members of a family in ascending code order.
pub fn family_members(f: &SetFamily) -> Vec<SubsetCode> {
    f.iter().collect()
}

/// A family of subsets of one universe, stored as a `2^size`-bit vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SetFamily {
    universe: Universe,
    words: Vec<u64>,
}

fn word_count(u: Universe) -> usize {
    u.subset_count().div_ceil(64)
}

impl SetFamily {
    /// The empty family.
    pub fn empty(u: Universe) -> Self {
        SetFamily {
            universe: u,
            words: vec![0; word_count(u)],
        }
    }

    /// The full powerset `2^X`.
    pub fn powerset(u: Universe) -> Self {
        Self::from_fn(u, |_| true)
    }

    pub fn from_fn(u: Universe, mut keep: impl FnMut(SubsetCode) -> bool) -> Self {
        let mut f = Self::empty(u);
        for a in u.subsets() {
            if keep(a) {
                f.insert_unchecked(a);
            }
        }
        f
    }

    pub fn from_codes(
        u: Universe,
        codes: impl IntoIterator<Item = SubsetCode>,
    ) -> Result<Self, Error> {
        let mut f = Self::empty(u);
        for a in codes {
            f.insert(u.check(a)?);
        }
        Ok(f)
    }

    /// Family whose bit `k` is bit `k` of `indicator`. Only meaningful for
    /// universes with at most six points; higher bits are ignored.
    pub fn from_indicator(u: Universe, indicator: u64) -> Self {
        let mut f = Self::empty(u);
        let mask = if u.subset_count() >= 64 {
            u64::MAX
        } else {
            (1u64 << u.subset_count()) - 1
        };
        f.words[0] = indicator & mask;
        f
    }

    pub fn universe(&self) -> Universe {
        self.universe
    }

    pub fn contains(&self, a: SubsetCode) -> bool {
        let k = a.0 as usize;
        k < self.universe.subset_count() && self.words[k / 64] >> (k % 64) & 1 == 1
    }

    /// Inserts `a`. Panics if `a` is outside the universe.
    pub fn insert(&mut self, a: SubsetCode) {
        assert!(
            (a.0 as usize) < self.universe.subset_count(),
            "subset code outside universe"
        );
        self.insert_unchecked(a);
    }

    fn insert_unchecked(&mut self, a: SubsetCode) {
        let k = a.0 as usize;
        self.words[k / 64] |= 1 << (k % 64);
    }

    pub fn remove(&mut self, a: SubsetCode) {
        let k = a.0 as usize;
        if k < self.universe.subset_count() {
            self.words[k / 64] &= !(1 << (k % 64));
        }
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Members in ascending code order.
    pub fn iter(&self) -> impl Iterator<Item = SubsetCode> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &word)| {
            let mut rest = word;
            core::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros();
                rest &= rest - 1;
                Some(SubsetCode((i * 64) as u32 + bit))
            })
        })
    }

    pub fn members(&self) -> Vec<SubsetCode> {
        family_members(self)
    }

    fn same_universe(&self, other: &SetFamily) -> Result<(), Error> {
        if self.universe != other.universe {
            return Err(Error::UniverseMismatch {
                left: self.universe.size,
                right: other.universe.size,
            });
        }
        Ok(())
    }

    pub fn union(&self, other: &SetFamily) -> Result<SetFamily, Error> {
        self.same_universe(other)?;
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a | b)
            .collect();
        Ok(SetFamily {
            universe: self.universe,
            words,
        })
    }

    pub fn intersection(&self, other: &SetFamily) -> Result<SetFamily, Error> {
        self.same_universe(other)?;
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a & b)
            .collect();
        Ok(SetFamily {
            universe: self.universe,
            words,
        })
    }

    pub fn is_subfamily_of(&self, other: &SetFamily) -> bool {
        self.universe == other.universe
            && self
                .words
                .iter()
                .zip(&other.words)
                .all(|(a, b)| a & !b == 0)
    }

    /// `{A^c : A ∈ self}`.
    pub fn complemented_members(&self) -> SetFamily {
        let u = self.universe;
        let mut out = SetFamily::empty(u);
        for a in self.iter() {
            out.insert_unchecked(u.complement(a));
        }
        out
    }

    /// The family of all unions of subfamilies, the empty union included.
    pub fn union_closure(&self) -> SetFamily {
        let u = self.universe;
        let mut reached = SetFamily::empty(u);
        reached.insert_unchecked(SubsetCode::EMPTY);
        let generators = self.members();
        let mut frontier = vec![SubsetCode::EMPTY];
        while let Some(a) = frontier.pop() {
            for &g in &generators {
                let next = a | g;
                if !reached.contains(next) {
                    reached.insert_unchecked(next);
                    frontier.push(next);
                }
            }
        }
        reached
    }
}

impl Ord for SetFamily {
    /// Universe size first, then the indicator bit-vector read as an
    /// unsigned integer with bit `k` weighted `2^k`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.universe
            .cmp(&other.universe)
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl PartialOrd for SetFamily {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for SetFamily {
    /// `{00, 10}` style listing.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, a) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", self.universe.display(a))?;
        }
        f.write_str("}")
    }
}
