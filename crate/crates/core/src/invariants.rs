//! Executable forms of the structural facts the bijection relies on.
//!
//! Each check takes one overpartition and returns every violation it finds;
//! an empty vector means the property holds for that instance.

use serde::Serialize;

use crate::bands::{
    band_residue, bands_in_window, find_bands, g_of, parity_unchecked, type_unchecked, Band, Window,
};
use crate::bijection::{augment, reduce};
use crate::families::{
    b0bar_core, b1_core, bbar_core, bj_core, cond5_raw, is_in_b0bar, is_in_b0bar_raw,
    window_class_unchecked, window_index, WindowClass,
};
use crate::overpartition::Overpartition;
use crate::params::FamilyParams;
use crate::part::Part;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub check: &'static str,
    pub subject: String,
    pub detail: String,
}

fn violation(check: &'static str, pi: &Overpartition, detail: String) -> Violation {
    Violation {
        check,
        subject: pi.to_string(),
        detail,
    }
}

/// Window indices from 1 to two past the one holding the largest part.
fn t_range(pi: &Overpartition, eta: u64) -> std::ops::RangeInclusive<u64> {
    let top = pi.parts().first().map_or(0, |x| x.size() / eta);
    1..=top + 2
}

/// Two `(k-1)`-bands whose index ranges overlap have the same parity.
pub fn overlapping_bands_share_parity(pi: &Overpartition, p: &FamilyParams) -> Vec<Violation> {
    let bands = find_bands(pi, p.k() as usize - 1, p.eta());
    let mut out = Vec::new();
    for (i, &c) in bands.iter().enumerate() {
        for &d in &bands[i + 1..] {
            if d.start > c.end() {
                break;
            }
            let (pc, pd) = (parity_unchecked(pi, c, p), parity_unchecked(pi, d, p));
            if pc != pd {
                out.push(violation(
                    "overlapping_bands_share_parity",
                    pi,
                    format!("{} is {pc:?} but {} is {pd:?}", c.render(pi), d.render(pi)),
                ));
            }
        }
    }
    out
}

/// All `(k-1)`-bands in one closed window have the same parity.
pub fn window_bands_share_parity(pi: &Overpartition, p: &FamilyParams) -> Vec<Violation> {
    let mut out = Vec::new();
    for t in t_range(pi, p.eta()) {
        let bands = bands_in_window(pi, p.k() as usize - 1, Window::closed(t), p.eta());
        if let Some((&first, rest)) = bands.split_first() {
            let expected = parity_unchecked(pi, first, p);
            for &b in rest {
                if parity_unchecked(pi, b, p) != expected {
                    out.push(violation(
                        "window_bands_share_parity",
                        pi,
                        format!("t={t}: {} and {} differ", first.render(pi), b.render(pi)),
                    ));
                }
            }
        }
    }
    out
}

fn band_starts(pi: &Overpartition, width: usize, w: Window, eta: u64) -> Vec<usize> {
    bands_in_window(pi, width, w, eta)
        .into_iter()
        .map(|b| b.start)
        .collect()
}

/// For every part `t eta` (plain or overlined) whose removal stays in the
/// `k`-band family: the smaller overpartition has no `(k-1)`-band in the
/// window at `t`, the `(k-1)`-bands of `pi` there start exactly where the
/// `(k-2)`-bands of the smaller one do, and their residues differ by `t`
/// (plain) or `t + 1` (overlined) modulo 2.
pub fn insertion_band_correspondence(pi: &Overpartition, p: &FamilyParams) -> Vec<Violation> {
    const CHECK: &str = "insertion_band_correspondence";
    let eta = p.eta();
    let k = p.k() as usize;
    let mut out = Vec::new();
    if k < 3 {
        return out;
    }
    let mut seen: Vec<Part> = pi
        .parts()
        .iter()
        .copied()
        .filter(|x| x.divisible_by(eta))
        .collect();
    seen.dedup();
    for part in seen {
        let t = part.size() / eta;
        let mu = pi.remove(part).expect("part is present");
        if !bbar_core(&mu, p) {
            continue;
        }
        let (windows, shift): (&[Window], u64) = if part.is_overlined() {
            (&[Window::open(t)], t + 1)
        } else {
            (&[Window::closed(t), Window::open(t)], t)
        };
        if !bands_in_window(&mu, k - 1, windows[0], eta).is_empty() {
            out.push(violation(
                CHECK,
                pi,
                format!("removing {part} leaves a {}-band in window t={t}", k - 1),
            ));
        }
        for &w in windows {
            let big = band_starts(pi, k - 1, w, eta);
            let small = band_starts(&mu, k - 2, w, eta);
            if big != small {
                out.push(violation(
                    CHECK,
                    pi,
                    format!("removing {part}: band starts {big:?} vs {small:?} in {w:?}"),
                ));
                continue;
            }
            for start in big {
                let rb = band_residue(pi, Band::new(start, k - 1), eta);
                let rs = band_residue(&mu, Band::new(start, k - 2), eta);
                if rb != (rs + shift) % 2 {
                    out.push(violation(
                        CHECK,
                        pi,
                        format!(
                            "removing {part}: band at {start} has residue {rb}, expected {}",
                            (rs + shift) % 2
                        ),
                    ));
                }
            }
        }
    }
    out
}

/// In the `=` window at `t` with `s(pi) > overline{t eta}`, a plain `t eta`
/// occurs in `pi`.
pub fn reduction_part_present(pi: &Overpartition, p: &FamilyParams) -> Vec<Violation> {
    let eta = p.eta();
    let mut out = Vec::new();
    for t in t_range(pi, eta) {
        if window_class_unchecked(pi, p, t) != WindowClass::Equal(t) {
            continue;
        }
        let s = pi.smallest_overlined_multiple(eta);
        if s != Part::overlined(t * eta) && !pi.contains(Part::plain(t * eta)) {
            out.push(violation(
                "reduction_part_present",
                pi,
                format!("no part {} at t={t}", t * eta),
            ));
        }
    }
    out
}

/// In the `>` window at `t`, all `(k-2)`-bands in the half-open window share
/// one type, and that type is O when `g` has size `(t+1) eta`.
pub fn uniform_band_type(mu: &Overpartition, p: &FamilyParams) -> Vec<Violation> {
    const CHECK: &str = "uniform_band_type";
    let eta = p.eta();
    let k = p.k() as usize;
    let mut out = Vec::new();
    if k < 3 {
        return out;
    }
    for t in t_range(mu, eta) {
        if window_class_unchecked(mu, p, t) != WindowClass::Greater(t) {
            continue;
        }
        let types: Vec<_> = bands_in_window(mu, k - 2, Window::open(t), eta)
            .into_iter()
            .map(|b| (b, type_unchecked(mu, b, t, p)))
            .collect();
        if types.windows(2).any(|w| w[0].1 != w[1].1) {
            out.push(violation(
                CHECK,
                mu,
                format!("mixed types at t={t}: {types:?}"),
            ));
        }
        let g = g_of(mu, p);
        let g_at_next = g.finite().is_some_and(|x| x.size() == (t + 1) * eta);
        if g_at_next && types.iter().any(|&(_, ty)| ty != crate::bands::BandType::O) {
            out.push(violation(
                CHECK,
                mu,
                format!("g = {g} at t={t} but a band has type N"),
            ));
        }
    }
    out
}

/// `D_t` maps the `=` window at `t` into the `>` window, drops weight by
/// `t eta` and length by one, and `C_t` undoes it.
pub fn reduction_roundtrip(pi: &Overpartition, p: &FamilyParams) -> Vec<Violation> {
    const CHECK: &str = "reduction_roundtrip";
    let eta = p.eta();
    let mut out = Vec::new();
    for t in t_range(pi, eta) {
        if window_class_unchecked(pi, p, t) != WindowClass::Equal(t) {
            continue;
        }
        let mu = match reduce(pi, t, p) {
            Ok(mu) => mu,
            Err(e) => {
                out.push(violation(CHECK, pi, format!("t={t}: {e}")));
                continue;
            }
        };
        if !b0bar_core(&mu, p) || window_class_unchecked(&mu, p, t) != WindowClass::Greater(t) {
            out.push(violation(
                CHECK,
                pi,
                format!("t={t}: reduced {mu} is not in the > window"),
            ));
            continue;
        }
        if mu.weight() + t * eta != pi.weight() || mu.len() + 1 != pi.len() {
            out.push(violation(
                CHECK,
                pi,
                format!("t={t}: weight or length delta wrong for {mu}"),
            ));
        }
        match augment(&mu, t, p) {
            Ok(back) if back == *pi => {}
            Ok(back) => out.push(violation(
                CHECK,
                pi,
                format!("t={t}: augment(reduce) = {back}"),
            )),
            Err(e) => out.push(violation(CHECK, pi, format!("t={t}: augment failed: {e}"))),
        }
    }
    out
}

/// `C_t` maps the `>` window at `t` into the `=` window, adds `t eta` to the
/// weight and one part, and `D_t` undoes it.
pub fn augmentation_roundtrip(mu: &Overpartition, p: &FamilyParams) -> Vec<Violation> {
    const CHECK: &str = "augmentation_roundtrip";
    let eta = p.eta();
    let mut out = Vec::new();
    for t in t_range(mu, eta) {
        if window_class_unchecked(mu, p, t) != WindowClass::Greater(t) {
            continue;
        }
        let pi = match augment(mu, t, p) {
            Ok(pi) => pi,
            Err(e) => {
                out.push(violation(CHECK, mu, format!("t={t}: {e}")));
                continue;
            }
        };
        if !b0bar_core(&pi, p) || window_class_unchecked(&pi, p, t) != WindowClass::Equal(t) {
            out.push(violation(
                CHECK,
                mu,
                format!("t={t}: augmented {pi} is not in the = window"),
            ));
            continue;
        }
        if pi.weight() != mu.weight() + t * eta || pi.len() != mu.len() + 1 {
            out.push(violation(
                CHECK,
                mu,
                format!("t={t}: weight or length delta wrong for {pi}"),
            ));
        }
        match reduce(&pi, t, p) {
            Ok(back) if back == *mu => {}
            Ok(back) => out.push(violation(
                CHECK,
                mu,
                format!("t={t}: reduce(augment) = {back}"),
            )),
            Err(e) => out.push(violation(CHECK, mu, format!("t={t}: reduce failed: {e}"))),
        }
    }
    out
}

/// The `>` windows are exactly `t < min([|s|/eta], [|g|/eta])`, the `=`
/// window is the minimum itself, and larger `t` fall in neither.
pub fn window_index_matches_classes(pi: &Overpartition, p: &FamilyParams) -> Vec<Violation> {
    let eta = p.eta();
    let idx = window_index(pi, p);
    let mut out = Vec::new();
    for t in t_range(pi, eta) {
        let expected = match idx {
            None => WindowClass::Greater(t),
            Some(m) if t < m => WindowClass::Greater(t),
            Some(m) if t == m => WindowClass::Equal(t),
            Some(_) => WindowClass::Neither,
        };
        let got = window_class_unchecked(pi, p, t);
        if got != expected {
            out.push(violation(
                "window_index_matches_classes",
                pi,
                format!("t={t}: {got:?}, index {idx:?} predicts {expected:?}"),
            ));
        }
    }
    out
}

/// The two forms of the `f_{<=eta} = r` clause agree on the `k`-band family.
pub fn small_parts_clause_forms_agree(pi: &Overpartition, p: &FamilyParams) -> Vec<Violation> {
    let rephrased = is_in_b0bar(pi, p).unwrap_or(false);
    let raw = is_in_b0bar_raw(pi, p).unwrap_or(false);
    if rephrased == raw {
        return Vec::new();
    }
    vec![violation(
        "small_parts_clause_forms_agree",
        pi,
        format!(
            "rephrased {rephrased}, raw {raw} (raw clause {})",
            cond5_raw(pi, p)
        ),
    )]
}

/// Erasing overlines maps the reduced overpartition family onto the
/// classical `B_1` with the same parameters.
pub fn reduced_family_erases_to_classical(
    mu: &Overpartition,
    reduced: &FamilyParams,
) -> Vec<Violation> {
    if !b1_core(mu, reduced) {
        return Vec::new();
    }
    let plain = mu.erase_overlines();
    if bj_core(&plain, reduced, 1) {
        return Vec::new();
    }
    vec![violation(
        "reduced_family_erases_to_classical",
        mu,
        format!("{plain} is not in B_1{reduced}"),
    )]
}

/// A `B0bar` member with no overlined multiple of `eta` has fewer than `r`
/// parts `<= eta` and erases to a classical `B_0` partition.
pub fn erases_to_classical_b0(pi: &Overpartition, p: &FamilyParams) -> Vec<Violation> {
    if !b0bar_core(pi, p) || !pi.smallest_overlined_multiple(p.eta()).is_infinite() {
        return Vec::new();
    }
    let plain = pi.erase_overlines();
    if (pi.f_le(p.eta()) as u64) < p.r() && bj_core(&plain, p, 0) {
        return Vec::new();
    }
    vec![violation(
        "erases_to_classical_b0",
        pi,
        format!("{plain} is not in B_0{p}"),
    )]
}

/// Every check that applies to `pi`, a member of the `k`-band family.
pub fn check_all(pi: &Overpartition, p: &FamilyParams) -> Vec<Violation> {
    let mut out = overlapping_bands_share_parity(pi, p);
    out.extend(window_bands_share_parity(pi, p));
    out.extend(insertion_band_correspondence(pi, p));
    out.extend(small_parts_clause_forms_agree(pi, p));
    if b0bar_core(pi, p) {
        out.extend(reduction_part_present(pi, p));
        out.extend(uniform_band_type(pi, p));
        out.extend(reduction_roundtrip(pi, p));
        out.extend(augmentation_roundtrip(pi, p));
        out.extend(window_index_matches_classes(pi, p));
        out.extend(erases_to_classical_b0(pi, p));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::family_members;
    use crate::families::FamilyId;

    #[test]
    fn worked_example_is_clean() {
        let p = FamilyParams::new(vec![3, 7], 10, 5, 3).unwrap();
        let pi: Overpartition = "60,60,53~,50~,47~,40,37~,33~,30,27~,23~,20,20~,10~,7~,3~"
            .parse()
            .unwrap();
        assert_eq!(check_all(&pi, &p), vec![]);
    }

    #[test]
    fn small_weights_are_clean() {
        let p = FamilyParams::new(vec![3, 7], 10, 5, 3).unwrap();
        let reduced = p.with_k(4).unwrap();
        for n in 0..=25 {
            for pi in family_members(FamilyId::Bbar, &p, n).unwrap() {
                assert_eq!(check_all(&pi, &p), vec![]);
            }
            for mu in family_members(FamilyId::B1, &reduced, n).unwrap() {
                assert_eq!(reduced_family_erases_to_classical(&mu, &reduced), vec![]);
            }
        }
    }

    #[test]
    fn fires_outside_the_family() {
        let p = FamilyParams::new(vec![3, 7], 10, 5, 3).unwrap();
        let pi: Overpartition = "20,20,20,20,10".parse().unwrap();
        assert!(!bbar_core(&pi, &p));
        assert_eq!(overlapping_bands_share_parity(&pi, &p).len(), 1);
    }
}
