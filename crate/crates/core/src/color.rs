//! Color values and color sets.
//!
//! Colors are the integers `1..=k` for a per-instance `k`. A `ColorSet` is a
//! bitmask over those values (bit `c - 1` set means color `c` is present),
//! which keeps list intersection and availability checks branch-free in the
//! enumeration and search inner loops.

use serde::{Deserialize, Serialize};
use std::fmt;

/// A color, `1..=k`. Kept as `u8`; instances never need more than 64 colors.
pub type Color = u8;

/// Maximum supported number of colors (bitmask width).
pub const MAX_COLORS: u8 = 32;

/// A set of colors, stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct ColorSet(u32);

impl ColorSet {
    pub const EMPTY: ColorSet = ColorSet(0);

    /// The full set `{1..=k}`.
    pub fn full(k: Color) -> Self {
        debug_assert!(k <= MAX_COLORS);
        ColorSet(if k == 32 { u32::MAX } else { (1u32 << k) - 1 })
    }

    pub fn singleton(c: Color) -> Self {
        ColorSet(1u32 << (c - 1))
    }

    pub fn from_colors<I: IntoIterator<Item = Color>>(colors: I) -> Self {
        let mut m = 0u32;
        for c in colors {
            m |= 1u32 << (c - 1);
        }
        ColorSet(m)
    }

    pub fn contains(self, c: Color) -> bool {
        self.0 & (1u32 << (c - 1)) != 0
    }

    pub fn insert(&mut self, c: Color) {
        self.0 |= 1u32 << (c - 1);
    }

    pub fn remove(&mut self, c: Color) {
        self.0 &= !(1u32 << (c - 1));
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: ColorSet) -> ColorSet {
        ColorSet(self.0 | other.0)
    }

    pub fn intersection(self, other: ColorSet) -> ColorSet {
        ColorSet(self.0 & other.0)
    }

    pub fn difference(self, other: ColorSet) -> ColorSet {
        ColorSet(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: ColorSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Smallest color in the set, if any.
    pub fn min(self) -> Option<Color> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as Color + 1)
        }
    }

    /// Iterate colors in ascending order.
    pub fn iter(self) -> impl Iterator<Item = Color> {
        let mut m = self.0;
        std::iter::from_fn(move || {
            if m == 0 {
                None
            } else {
                let c = m.trailing_zeros() as Color + 1;
                m &= m - 1;
                Some(c)
            }
        })
    }

    pub(crate) fn mask(self) -> u32 {
        self.0
    }

    pub(crate) fn from_mask(mask: u32) -> Self {
        ColorSet(mask)
    }
}

impl fmt::Debug for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, "}}")
    }
}

impl Serialize for ColorSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<Color> = self.iter().collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ColorSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v: Vec<Color> = Vec::deserialize(d)?;
        for &c in &v {
            if c == 0 || c > MAX_COLORS {
                return Err(serde::de::Error::custom(format!(
                    "color {} out of range 1..={}",
                    c, MAX_COLORS
                )));
            }
        }
        Ok(ColorSet::from_colors(v))
    }
}
