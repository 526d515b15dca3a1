//! Runs of consecutive parts that fit within a span of `eta`.
//!
//! An `m`-band of `pi` starting at (1-based) index `i` is the run
//! `pi_i, ..., pi_{i+m-1}` with `pi_i <= pi_{i+m-1} + eta` in the part order,
//! strictly when `pi_i` is overlined. Parity is only defined for bands of
//! width `k - 1` and type only for width `k - 2`; other widths are rejected.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::overpartition::Overpartition;
use crate::params::FamilyParams;
use crate::part::{ExtPart, Part};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Band {
    /// 1-based index of the leading (largest) part.
    pub start: usize,
    pub width: usize,
}

impl Band {
    pub fn new(start: usize, width: usize) -> Self {
        Band { start, width }
    }

    /// 1-based index of the trailing (smallest) part.
    pub fn end(&self) -> usize {
        self.start + self.width - 1
    }

    pub fn parts<'a>(&self, pi: &'a Overpartition) -> &'a [Part] {
        &pi.parts()[self.start - 1..self.end()]
    }

    pub fn leader(&self, pi: &Overpartition) -> Part {
        pi.parts()[self.start - 1]
    }

    pub fn trailer(&self, pi: &Overpartition) -> Part {
        pi.parts()[self.end() - 1]
    }

    /// `{p1,p2,...}` rendering against the overpartition it indexes.
    pub fn render(&self, pi: &Overpartition) -> String {
        let inner: Vec<String> = self.parts(pi).iter().map(Part::to_string).collect();
        format!("{{{}}}", inner.join(","))
    }
}

/// The window `[(t-1)eta, (t+1)eta]`, or `[(t-1)eta, overline{(t+1)eta})`
/// when `upper_open_overlined` is set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub t: u64,
    pub upper_open_overlined: bool,
}

impl Window {
    pub fn closed(t: u64) -> Self {
        Window {
            t,
            upper_open_overlined: false,
        }
    }

    pub fn open(t: u64) -> Self {
        Window {
            t,
            upper_open_overlined: true,
        }
    }

    fn contains_run(&self, leader: Part, trailer: Part, eta: u64) -> bool {
        let low_ok = trailer >= Part::plain((self.t - 1) * eta);
        let high_ok = if self.upper_open_overlined {
            leader < Part::overlined((self.t + 1) * eta)
        } else {
            leader <= Part::plain((self.t + 1) * eta)
        };
        low_ok && high_ok
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BandType {
    N,
    O,
}

/// Whether the `m` parts starting at 0-based `idx` form an `m`-band.
fn is_band_at(parts: &[Part], idx: usize, m: usize, eta: u64) -> bool {
    if m == 0 || idx + m > parts.len() {
        return false;
    }
    let head = parts[idx];
    let reach = parts[idx + m - 1].shifted(eta);
    if head.is_overlined() {
        head < reach
    } else {
        head <= reach
    }
}

pub fn is_band(pi: &Overpartition, band: Band, eta: u64) -> bool {
    band.start >= 1 && is_band_at(pi.parts(), band.start - 1, band.width, eta)
}

/// All `m`-bands, by ascending start index.
pub fn find_bands(pi: &Overpartition, m: usize, eta: u64) -> Vec<Band> {
    let parts = pi.parts();
    if m == 0 || parts.len() < m {
        return Vec::new();
    }
    (0..=parts.len() - m)
        .filter(|&idx| is_band_at(parts, idx, m, eta))
        .map(|idx| Band::new(idx + 1, m))
        .collect()
}

pub fn band_in_window(pi: &Overpartition, band: Band, w: Window, eta: u64) -> bool {
    w.t >= 1 && w.contains_run(band.leader(pi), band.trailer(pi), eta)
}

/// Bands of width `m` lying in window `w`.
pub fn bands_in_window(pi: &Overpartition, m: usize, w: Window, eta: u64) -> Vec<Band> {
    find_bands(pi, m, eta)
        .into_iter()
        .filter(|&b| band_in_window(pi, b, w, eta))
        .collect()
}

/// `g(pi)`: the smallest leading part of a `(k-1)`-band.
pub fn g_of(pi: &Overpartition, p: &FamilyParams) -> ExtPart {
    let m = p.k() as usize - 1;
    let parts = pi.parts();
    if m == 0 || parts.len() < m {
        return ExtPart::Infinity;
    }
    // leaders shrink as the start index grows, so scan from the right
    (0..=parts.len() - m)
        .rev()
        .find(|&idx| is_band_at(parts, idx, m, p.eta()))
        .map_or(ExtPart::Infinity, |idx| ExtPart::Finite(parts[idx]))
}

/// `sum [|x|/eta] + V(leader) + O(trailer)` mod 2.
pub(crate) fn band_residue(pi: &Overpartition, band: Band, eta: u64) -> u64 {
    let floors: u64 = band.parts(pi).iter().map(|x| x.floor_div(eta)).sum();
    let v = pi.count_v(band.leader(pi), eta) as u64;
    let o = pi.count_o(band.trailer(pi), eta) as u64;
    // sum == r - 1 + v + o  <=>  sum + v + o + r + 1 == 0 (mod 2)
    (floors + v + o) % 2
}

fn check_band(pi: &Overpartition, band: Band, width: usize, eta: u64) -> Result<()> {
    if band.width != width {
        return Err(Error::InvalidBand {
            start: band.start,
            width: band.width,
            reason: "width does not match the family",
        });
    }
    if !is_band(pi, band, eta) {
        return Err(Error::InvalidBand {
            start: band.start,
            width: band.width,
            reason: "parts do not form a band",
        });
    }
    Ok(())
}

/// Even iff `sum [|pi_{i+l}|/eta] == r - 1 + V(pi_i) + O(pi_{i+k-2}) (mod 2)`.
pub fn band_parity(pi: &Overpartition, band: Band, p: &FamilyParams) -> Result<Parity> {
    check_band(pi, band, p.k() as usize - 1, p.eta())?;
    Ok(parity_unchecked(pi, band, p))
}

pub(crate) fn parity_unchecked(pi: &Overpartition, band: Band, p: &FamilyParams) -> Parity {
    if (band_residue(pi, band, p.eta()) + p.r() + 1).is_multiple_of(2) {
        Parity::Even
    } else {
        Parity::Odd
    }
}

/// N iff `sum [|mu_{i+l}|/eta] == t + r - 1 + V(mu_i) + O(mu_{i+k-3}) (mod 2)`.
///
/// Requires `mu` in the `>`-window at `t` and `band` a `(k-2)`-band in the
/// half-open window at `t`.
pub fn band_type(mu: &Overpartition, band: Band, t: u64, p: &FamilyParams) -> Result<BandType> {
    let width = (p.k() as usize)
        .checked_sub(2)
        .filter(|&w| w > 0)
        .ok_or_else(|| Error::InvalidParams("band types need k >= 3".into()))?;
    check_band(mu, band, width, p.eta())?;
    if !band_in_window(mu, band, Window::open(t), p.eta()) {
        return Err(Error::InvalidBand {
            start: band.start,
            width: band.width,
            reason: "band is outside the half-open window",
        });
    }
    let class = crate::families::classify_window(mu, p, t)?;
    if class != crate::families::WindowClass::Greater(t) {
        return Err(Error::WindowMismatch {
            t,
            expected: "Greater",
            found: format!("{class:?}"),
        });
    }
    Ok(type_unchecked(mu, band, t, p))
}

pub(crate) fn type_unchecked(mu: &Overpartition, band: Band, t: u64, p: &FamilyParams) -> BandType {
    if (band_residue(mu, band, p.eta()) + t + p.r() + 1).is_multiple_of(2) {
        BandType::N
    } else {
        BandType::O
    }
}

/// Every `(k-2)`-band of `mu` in the half-open window at `t`, with its type.
/// Fails with [`Error::NoBandInWindow`] when there are none.
pub fn window_band_types(
    mu: &Overpartition,
    t: u64,
    p: &FamilyParams,
) -> Result<Vec<(Band, BandType)>> {
    let width = (p.k() as usize).saturating_sub(2);
    let bands = bands_in_window(mu, width, Window::open(t), p.eta());
    if bands.is_empty() {
        return Err(Error::NoBandInWindow { t, width });
    }
    bands
        .into_iter()
        .map(|b| band_type(mu, b, t, p).map(|ty| (b, ty)))
        .collect()
}
