//! Dimension pairs and framing coefficients.
//!
//! A diagram lives in S^{n-1} and builds an n-dimensional k-handlebody, with
//! k >= 2 and n >= 2k + 1. In that range the framing of a k-handle is an
//! element of pi_{k-1}(O(n-k)), which is stable and given by Bott periodicity:
//!
//!   k mod 8 : 0  1   2   3  4  5  6  7
//!   group   : Z  Z2  Z2  0  Z  0  0  0
//!
//! `Framing` values carry their group and are kept normalized (0 for the
//! trivial group, {0, 1} for Z2), so two framings compare equal exactly when
//! they are the same element.

use crate::error::{Error, Result};

/// Validated dimension pair (n, k): k >= 2 and n >= 2k + 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DimSpec {
    n: u32,
    k: u32,
}

impl DimSpec {
    pub fn new(n: u32, k: u32) -> Result<Self> {
        if k < 2 || n < 2 * k + 1 {
            return Err(Error::InvalidDim {
                n: n as i64,
                k: k as i64,
            });
        }
        Ok(DimSpec { n, k })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Same k in a new ambient dimension. The framing group does not move:
    /// both dimensions are in the stable range.
    pub fn transport(&self, n_new: u32) -> Result<Self> {
        DimSpec::new(n_new, self.k)
    }
}

impl std::fmt::Display for DimSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.n, self.k)
    }
}

/// The stable group pi_{k-1}(O(n-k)) a framing lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FramingGroup {
    Trivial,
    Z2,
    Z,
}

impl FramingGroup {
    /// Bott periodicity in the stable range n >= 2k + 1.
    pub fn for_dim(dim: DimSpec) -> FramingGroup {
        match dim.k() % 8 {
            0 | 4 => FramingGroup::Z,
            1 | 2 => FramingGroup::Z2,
            _ => FramingGroup::Trivial,
        }
    }

    /// Canonical representative: Trivial -> 0, Z2 -> {0, 1}, Z -> identity.
    pub fn normalize(self, value: i64) -> Framing {
        let value = match self {
            FramingGroup::Trivial => 0,
            FramingGroup::Z2 => value.rem_euclid(2),
            FramingGroup::Z => value,
        };
        Framing { value, group: self }
    }

    pub fn zero(self) -> Framing {
        self.normalize(0)
    }
}

impl std::fmt::Display for FramingGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FramingGroup::Trivial => write!(f, "0"),
            FramingGroup::Z2 => write!(f, "Z/2"),
            FramingGroup::Z => write!(f, "Z"),
        }
    }
}

/// A framing coefficient, normalized within its group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Framing {
    value: i64,
    group: FramingGroup,
}

impl Framing {
    pub fn value(&self) -> i64 {
        self.value
    }

    pub fn group(&self) -> FramingGroup {
        self.group
    }

    pub fn add(self, other: Framing) -> Result<Framing> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        Ok(self.group.normalize(self.value + other.value))
    }

    pub fn neg(self) -> Framing {
        self.group.normalize(-self.value)
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }
}

impl std::fmt::Display for Framing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Image of an integer 4-dimensional framing in the target group: identity
/// into Z, reduction mod 2 into Z2, zero into the trivial group.
pub fn project_4d(m: i64, target: FramingGroup) -> Framing {
    target.normalize(m)
}
