//! Truncation boxes.

use std::fmt;

use crate::monomial::Monomial;
use crate::SeriesError;

/// Order bounds a series is closed under: total X-degree at most `dx`, total
/// S-degree at most `ds`, and ħ-exponent at most `g - 1`. `g = None` means
/// no ħ cap; that is only meaningful when the other bounds already make the
/// series finite.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct TruncationSpec {
    pub dx: u32,
    pub ds: u32,
    pub g: Option<u32>,
}

impl TruncationSpec {
    pub const fn new(dx: u32, ds: u32, g: u32) -> Self {
        TruncationSpec { dx, ds, g: Some(g) }
    }

    pub const fn all_genera(dx: u32, ds: u32) -> Self {
        TruncationSpec { dx, ds, g: None }
    }

    pub fn admits(&self, m: &Monomial) -> bool {
        m.x_degree() <= self.dx
            && m.s_degree() <= self.ds
            && self.g.is_none_or(|g| m.hbar_exp() < g as i32)
    }

    /// Lowest ħ-exponent a stored monomial may carry.
    pub fn hbar_floor(&self) -> i32 {
        -1 - self.dx as i32 - self.ds as i32
    }

    /// Componentwise `self <= other`, with `None` as the largest ħ cap.
    pub fn within(&self, other: &TruncationSpec) -> bool {
        self.dx <= other.dx && self.ds <= other.ds && g_le(self.g, other.g)
    }

    pub fn meet(&self, other: &TruncationSpec) -> TruncationSpec {
        TruncationSpec {
            dx: self.dx.min(other.dx),
            ds: self.ds.min(other.ds),
            g: match (self.g, other.g) {
                (Some(a), Some(b)) => Some(a.min(b)),
                (a, None) => a,
                (None, b) => b,
            },
        }
    }

    pub fn with_g(&self, g: Option<u32>) -> TruncationSpec {
        TruncationSpec { g, ..*self }
    }

    /// Parses `Dx=4,Ds=3,G=2` (G optional, meaning no ħ cap).
    pub fn parse(s: &str) -> Result<TruncationSpec, SeriesError> {
        let mut dx = None;
        let mut ds = None;
        let mut g = None;
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| SeriesError::Parse(format!("bad truncation entry {part:?}")))?;
            let v: u32 = v
                .trim()
                .parse()
                .map_err(|_| SeriesError::Parse(format!("bad truncation value {part:?}")))?;
            match k.trim() {
                "Dx" | "dx" => dx = Some(v),
                "Ds" | "ds" => ds = Some(v),
                "G" | "g" => g = Some(v),
                other => return Err(SeriesError::Parse(format!("unknown truncation key {other:?}"))),
            }
        }
        match (dx, ds) {
            (Some(dx), Some(ds)) => Ok(TruncationSpec { dx, ds, g }),
            _ => Err(SeriesError::Parse(format!("truncation {s:?} needs Dx and Ds"))),
        }
    }
}

pub(crate) fn g_le(a: Option<u32>, b: Option<u32>) -> bool {
    match (a, b) {
        (_, None) => true,
        (None, Some(_)) => false,
        (Some(a), Some(b)) => a <= b,
    }
}

impl fmt::Display for TruncationSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.g {
            Some(g) => write!(f, "Dx={},Ds={},G={}", self.dx, self.ds, g),
            None => write!(f, "Dx={},Ds={}", self.dx, self.ds),
        }
    }
}
