//! The `(k-1)`-reduction `D_t`, the `(k-1)`-augmentation `C_t`, and the maps
//! `phi` and `psi` between the `B0bar` family and pairs `(tau, mu)` with `tau`
//! in distinct multiples of `eta` and `mu` in the reduced family with `k - 1`.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::bands::{bands_in_window, type_unchecked, Band, BandType, Window};
use crate::error::{Error, Result};
use crate::families::{
    b0bar_core, b1_core, classify_window, is_in_deta, s_and_g, window_class_unchecked,
    window_index, WindowClass,
};
use crate::overpartition::Overpartition;
use crate::params::FamilyParams;
use crate::part::{ExtPart, Part};
use crate::partition::Partition;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Action {
    RemovedOverlined,
    RemovedPlain,
    InsertedOverlined,
    InsertedPlain,
}

/// One application of `D_t` or `C_t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub t: u64,
    pub action: Action,
    pub part: Part,
    /// The type-N band that forced a plain insertion.
    pub witness: Option<Band>,
    pub s_before: ExtPart,
    pub g_before: ExtPart,
}

impl Serialize for TraceStep {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("TraceStep", 6)?;
        st.serialize_field("t", &self.t)?;
        st.serialize_field("action", &self.action)?;
        st.serialize_field("removed_or_inserted", &self.part.to_string())?;
        st.serialize_field("s_before", &self.s_before)?;
        st.serialize_field("g_before", &self.g_before)?;
        st.serialize_field("witness", &self.witness)?;
        st.end()
    }
}

/// Output of [`phi`]; `tau` is stored largest part first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BijectionResult {
    pub tau: Partition,
    #[serde(serialize_with = "as_token_string")]
    pub mu: Overpartition,
    pub trace: Vec<TraceStep>,
}

/// Output of [`psi`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PsiResult {
    #[serde(serialize_with = "as_token_string")]
    pub pi: Overpartition,
    pub trace: Vec<TraceStep>,
}

fn as_token_string<S: Serializer>(
    pi: &Overpartition,
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    serializer.collect_str(pi)
}

fn require_bijection_params(p: &FamilyParams) -> Result<()> {
    p.require_overpartition()?;
    if p.k() < 3 {
        return Err(Error::InvalidParams("the bijection needs k >= 3".into()));
    }
    Ok(())
}

fn mismatch(t: u64, expected: &'static str, found: WindowClass) -> Error {
    Error::WindowMismatch {
        t,
        expected,
        found: format!("{found:?}"),
    }
}

fn reduce_step(pi: &Overpartition, t: u64, p: &FamilyParams) -> Result<(Overpartition, TraceStep)> {
    let eta = p.eta();
    let (s, g) = s_and_g(pi, p);
    let bar = Part::overlined(t * eta);
    let (part, action) = if s == bar {
        (bar, Action::RemovedOverlined)
    } else {
        let plain = Part::plain(t * eta);
        if !pi.contains(plain) {
            return Err(Error::InvariantViolated(format!(
                "{pi} lies in the = window at t={t} but has no part {plain}"
            )));
        }
        (plain, Action::RemovedPlain)
    };
    let mu = pi.remove(part)?;
    let step = TraceStep {
        t,
        action,
        part,
        witness: None,
        s_before: s,
        g_before: g,
    };
    Ok((mu, step))
}

fn augment_step(
    mu: &Overpartition,
    t: u64,
    p: &FamilyParams,
) -> Result<(Overpartition, TraceStep)> {
    let eta = p.eta();
    let (s, g) = s_and_g(mu, p);
    let width = p.k() as usize - 2;
    let witness = bands_in_window(mu, width, Window::open(t), eta)
        .into_iter()
        .find(|&b| type_unchecked(mu, b, t, p) == BandType::N);
    let (part, action) = match witness {
        Some(_) => (Part::plain(t * eta), Action::InsertedPlain),
        None => (Part::overlined(t * eta), Action::InsertedOverlined),
    };
    let pi = mu.insert(part)?;
    let step = TraceStep {
        t,
        action,
        part,
        witness,
        s_before: s,
        g_before: g,
    };
    Ok((pi, step))
}

/// `D_t`: removes `overline{t eta}` if it is `s(pi)`, otherwise one plain
/// `t eta`. Requires `pi` in the `=` window at `t`.
pub fn reduce(pi: &Overpartition, t: u64, p: &FamilyParams) -> Result<Overpartition> {
    require_bijection_params(p)?;
    let class = classify_window(pi, p, t)?;
    if class != WindowClass::Equal(t) {
        return Err(mismatch(t, "Equal", class));
    }
    reduce_step(pi, t, p).map(|(mu, _)| mu)
}

/// `C_t`: inserts a plain `t eta` when some `(k-2)`-band in the half-open
/// window at `t` has type N, otherwise `overline{t eta}`. Requires `mu` in
/// the `>` window at `t`.
pub fn augment(mu: &Overpartition, t: u64, p: &FamilyParams) -> Result<Overpartition> {
    require_bijection_params(p)?;
    let class = classify_window(mu, p, t)?;
    if class != WindowClass::Greater(t) {
        return Err(mismatch(t, "Greater", class));
    }
    augment_step(mu, t, p).map(|(pi, _)| pi)
}

/// Splits `pi` into `(tau, mu)` by reducing at `min([|s|/eta], [|g|/eta])`
/// until both `s` and `g` are infinite.
pub fn phi(pi: &Overpartition, p: &FamilyParams) -> Result<BijectionResult> {
    require_bijection_params(p)?;
    if !b0bar_core(pi, p) {
        return Err(Error::NotInFamily(pi.to_string(), "B0bar"));
    }
    let eta = p.eta();
    let mut current = pi.clone();
    let mut trace: Vec<TraceStep> = Vec::new();
    while let Some(t) = window_index(&current, p) {
        if trace.len() >= pi.len() {
            return Err(Error::InvariantViolated(format!(
                "phi did not terminate within {} steps",
                pi.len()
            )));
        }
        if let Some(prev) = trace.last() {
            if t <= prev.t {
                return Err(Error::InvariantViolated(format!(
                    "window index fell from {} to {t} on {current}",
                    prev.t
                )));
            }
        }
        let class = window_class_unchecked(&current, p, t);
        if class != WindowClass::Equal(t) {
            return Err(Error::InvariantViolated(format!(
                "{current} is {class:?}, expected Equal({t})"
            )));
        }
        let (next, step) = reduce_step(&current, t, p)?;
        current = next;
        trace.push(step);
    }
    let tau = Partition::from_sorted_unchecked(trace.iter().rev().map(|s| s.t * eta).collect());
    let reduced = p.with_k(p.k() - 1)?;
    if !b1_core(&current, &reduced) {
        return Err(Error::InvariantViolated(format!(
            "{current} is not in the reduced family {reduced}"
        )));
    }
    if tau.weight() + current.weight() != pi.weight() || tau.len() + current.len() != pi.len() {
        return Err(Error::InvariantViolated(
            "phi changed total weight or length".into(),
        ));
    }
    Ok(BijectionResult {
        tau,
        mu: current,
        trace,
    })
}

/// Rebuilds an overpartition from `(tau, mu)` by augmenting with the parts of
/// `tau`, largest first.
pub fn psi(tau: &Partition, mu: &Overpartition, p: &FamilyParams) -> Result<PsiResult> {
    require_bijection_params(p)?;
    let eta = p.eta();
    if !is_in_deta(tau, eta) {
        return Err(Error::NotInDeta(tau.to_string(), eta));
    }
    let reduced = p.with_k(p.k() - 1)?;
    if !b1_core(mu, &reduced) {
        return Err(Error::NotInFamily(mu.to_string(), "B1"));
    }
    let mut current = mu.clone();
    let mut trace = Vec::with_capacity(tau.len());
    for &part in tau.parts() {
        let t = part / eta;
        let class = window_class_unchecked(&current, p, t);
        if class != WindowClass::Greater(t) {
            return Err(Error::InvariantViolated(format!(
                "{current} is {class:?}, expected Greater({t})"
            )));
        }
        let (next, step) = augment_step(&current, t, p)?;
        current = next;
        trace.push(step);
    }
    if !b0bar_core(&current, p) {
        return Err(Error::InvariantViolated(format!(
            "psi produced {current}, outside B0bar"
        )));
    }
    Ok(PsiResult { pi: current, trace })
}

#[cfg(test)]
mod tests {
    use super::*;

    const WORKED: &str = "60,60,53~,50~,47~,40,37~,33~,30,27~,23~,20,20~,10~,7~,3~";
    const REDUCED: &str = "60,60,53~,47~,40,37~,33~,27~,23~,20,7~,3~";

    fn op(s: &str) -> Overpartition {
        s.parse().unwrap()
    }

    fn params() -> FamilyParams {
        FamilyParams::new(vec![3, 7], 10, 5, 3).unwrap()
    }

    #[test]
    fn worked_example_phi() {
        let res = phi(&op(WORKED), &params()).unwrap();
        assert_eq!(res.tau.parts(), &[50, 30, 20, 10]);
        assert_eq!(res.mu, op(REDUCED));
        let ts: Vec<u64> = res.trace.iter().map(|s| s.t).collect();
        assert_eq!(ts, vec![1, 2, 3, 5]);
        let actions: Vec<Action> = res.trace.iter().map(|s| s.action).collect();
        use Action::*;
        assert_eq!(
            actions,
            vec![
                RemovedOverlined,
                RemovedOverlined,
                RemovedPlain,
                RemovedOverlined
            ]
        );
        assert_eq!(res.trace[0].s_before, Part::overlined(10));
        assert_eq!(res.trace[0].g_before, Part::overlined(27));
        assert_eq!(res.trace[1].s_before, Part::overlined(20));
    }

    #[test]
    fn worked_example_psi() {
        let tau: Partition = "50,30,20,10".parse().unwrap();
        let res = psi(&tau, &op(REDUCED), &params()).unwrap();
        assert_eq!(res.pi, op(WORKED));
        let inserted: Vec<String> = res.trace.iter().map(|s| s.part.to_string()).collect();
        assert_eq!(inserted, vec!["50~", "30", "20~", "10~"]);
        let mu3 = op("60,60,53~,50~,47~,40,37~,33~,27~,23~,20,7~,3~");
        let w = res.trace[1].witness.unwrap();
        assert_eq!(w.render(&mu3), "{27~,23~,20}");
        assert!(res
            .trace
            .iter()
            .enumerate()
            .all(|(i, s)| s.witness.is_some() == (i == 1)));
    }

    #[test]
    fn single_steps() {
        let p = params();
        let pi1 = op("60,60,53~,50~,47~,40,37~,33~,30,27~,23~,20,20~,7~,3~");
        assert_eq!(reduce(&op(WORKED), 1, &p).unwrap(), pi1);
        let pi2 = op("60,60,53~,50~,47~,40,37~,33~,30,27~,23~,20,7~,3~");
        let pi3 = op("60,60,53~,50~,47~,40,37~,33~,27~,23~,20,7~,3~");
        assert_eq!(reduce(&pi2, 3, &p).unwrap(), pi3);
        assert!(matches!(
            reduce(&pi1, 1, &p),
            Err(Error::WindowMismatch { t: 1, .. })
        ));
        assert_eq!(augment(&op(REDUCED), 5, &p).unwrap(), pi3);
        assert_eq!(augment(&pi3, 3, &p).unwrap(), pi2);
        assert_eq!(augment(&pi1, 1, &p).unwrap(), op(WORKED));
    }

    #[test]
    fn trivial_inputs() {
        let p = params();
        let res = phi(&Overpartition::empty(), &p).unwrap();
        assert!(res.tau.is_empty() && res.mu.is_empty() && res.trace.is_empty());
        let res = phi(&op("7~,3~"), &p).unwrap();
        assert!(res.tau.is_empty());
        assert_eq!(res.mu, op("7~,3~"));
        let back = psi(&Partition::empty(), &op(REDUCED), &p).unwrap();
        assert_eq!(back.pi, op(REDUCED));
        let one = psi(&"10".parse().unwrap(), &op("7~,3~"), &p).unwrap();
        assert_eq!(one.pi, augment(&op("7~,3~"), 1, &p).unwrap());
        assert_eq!(phi(&one.pi, &p).unwrap().mu, op("7~,3~"));
    }

    #[test]
    fn rejects_bad_inputs() {
        let p = params();
        assert!(matches!(
            phi(&op("10,7~,3~"), &p),
            Err(Error::NotInFamily(..))
        ));
        assert!(matches!(
            psi(&"20,20".parse().unwrap(), &op("3~"), &p),
            Err(Error::NotInDeta(..))
        ));
        assert!(matches!(
            psi(&"15".parse().unwrap(), &op("3~"), &p),
            Err(Error::NotInDeta(..))
        ));
        assert!(matches!(
            psi(&Partition::empty(), &op("10~"), &p),
            Err(Error::NotInFamily(_, "B1"))
        ));
    }

    #[test]
    fn trace_json_shape() {
        let res = phi(&op(WORKED), &params()).unwrap();
        let v = serde_json::to_value(&res).unwrap();
        assert_eq!(v["tau"], serde_json::json!([50, 30, 20, 10]));
        assert_eq!(v["mu"], REDUCED);
        assert_eq!(v["trace"][0]["removed_or_inserted"], "10~");
        assert_eq!(v["trace"][0]["action"], "RemovedOverlined");
        assert_eq!(v["trace"][0]["g_before"], "27~");
        assert!(v["trace"][0]["witness"].is_null());
    }
}
