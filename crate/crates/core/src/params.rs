use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The parameter tuple `(alpha_1, ..., alpha_lambda; eta, k, r)`.
///
/// Construction checks the structural constraints on the residues; the
/// constraints tying `k` and `r` to `lambda` depend on which family is asked
/// for, so each family validates through its own `require_*` method.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilyParams {
    alphas: Vec<u64>,
    eta: u64,
    k: u64,
    r: u64,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParams(msg.into())
}

impl FamilyParams {
    pub fn new(alphas: Vec<u64>, eta: u64, k: u64, r: u64) -> Result<Self> {
        if eta == 0 {
            return Err(invalid("eta must be positive"));
        }
        if k == 0 {
            return Err(invalid("k must be positive"));
        }
        if alphas.iter().any(|&a| a == 0 || a >= eta) {
            return Err(invalid("each alpha must satisfy 0 < alpha < eta"));
        }
        if alphas.windows(2).any(|w| w[0] >= w[1]) {
            return Err(invalid("alphas must be strictly increasing"));
        }
        let lambda = alphas.len();
        if (0..lambda).any(|i| alphas[i] + alphas[lambda - 1 - i] != eta) {
            return Err(invalid(
                "alphas must be symmetric: alpha_i = eta - alpha_(lambda+1-i)",
            ));
        }
        if lambda % 2 == 1 && eta % 2 == 1 {
            return Err(invalid("odd lambda requires even eta"));
        }
        Ok(FamilyParams { alphas, eta, k, r })
    }

    pub fn alphas(&self) -> &[u64] {
        &self.alphas
    }

    pub fn eta(&self) -> u64 {
        self.eta
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn lambda(&self) -> u64 {
        self.alphas.len() as u64
    }

    /// Same residues and `r`, different `k`.
    pub fn with_k(&self, k: u64) -> Result<Self> {
        FamilyParams::new(self.alphas.clone(), self.eta, k, self.r)
    }

    /// Residues `{0, alpha_1, ..., alpha_lambda}` modulo `eta`.
    pub fn residues(&self) -> Vec<u64> {
        std::iter::once(0)
            .chain(self.alphas.iter().copied())
            .collect()
    }

    pub fn allowed_size(&self, size: u64) -> bool {
        let res = size % self.eta;
        res == 0 || self.alphas.binary_search(&res).is_ok()
    }

    /// `k > r >= lambda >= 0` and `k - 1 > lambda`: the overpartition families
    /// built from the `k`-band conditions.
    pub fn require_overpartition(&self) -> Result<()> {
        let lambda = self.lambda();
        if !(self.k > self.r && self.r >= lambda) {
            return Err(invalid(format!(
                "need k > r >= lambda, got k={}, r={}, lambda={lambda}",
                self.k, self.r
            )));
        }
        if self.k < lambda + 2 {
            return Err(invalid(format!(
                "need k - 1 > lambda, got k={}, lambda={lambda}",
                self.k
            )));
        }
        Ok(())
    }

    /// Parameters of the reduced family `(alpha; eta, k-1, r)` that the
    /// bijection maps onto: `k >= r >= lambda` and `k > lambda`.
    pub fn require_reduced(&self) -> Result<()> {
        let lambda = self.lambda();
        if !(self.k >= self.r && self.r >= lambda && self.k > lambda) {
            return Err(invalid(format!(
                "need k >= r >= lambda and k > lambda, got k={}, r={}, lambda={lambda}",
                self.k, self.r
            )));
        }
        Ok(())
    }

    /// `k >= r >= lambda`, the range of the overlined analogue of `A_0`.
    pub fn require_a0bar(&self) -> Result<()> {
        let lambda = self.lambda();
        if !(self.k >= self.r && self.r >= lambda) {
            return Err(invalid(format!(
                "need k >= r >= lambda, got k={}, r={}, lambda={lambda}",
                self.k, self.r
            )));
        }
        if 2 * self.k < lambda + 2 {
            return Err(invalid("need 2k - lambda - 1 > 0"));
        }
        Ok(())
    }

    /// `k >= r >= lambda`.
    pub fn require_classical_b(&self) -> Result<()> {
        let lambda = self.lambda();
        if !(self.k >= self.r && self.r >= lambda) {
            return Err(invalid(format!(
                "need k >= r >= lambda, got k={}, r={}, lambda={lambda}",
                self.k, self.r
            )));
        }
        Ok(())
    }

    /// `(2k + j)/2 > r >= lambda`.
    pub fn require_classical_a(&self, j: u8) -> Result<()> {
        check_j(j)?;
        let lambda = self.lambda();
        if !(2 * self.k + j as u64 > 2 * self.r && self.r >= lambda) {
            return Err(invalid(format!(
                "need (2k + j)/2 > r >= lambda, got k={}, r={}, j={j}, lambda={lambda}",
                self.k, self.r
            )));
        }
        Ok(())
    }
}

pub(crate) fn check_j(j: u8) -> Result<()> {
    if j > 1 {
        return Err(invalid(format!("j must be 0 or 1, got {j}")));
    }
    Ok(())
}

impl fmt::Display for FamilyParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, a) in self.alphas.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ";{},{},{})", self.eta, self.k, self.r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn structural_checks() {
        assert!(FamilyParams::new(vec![3, 7], 10, 5, 3).is_ok());
        assert!(FamilyParams::new(vec![3, 5, 7], 10, 5, 4).is_ok());
        assert!(FamilyParams::new(vec![], 2, 3, 1).is_ok());
        assert!(FamilyParams::new(vec![3, 6], 10, 5, 3).is_err());
        assert!(FamilyParams::new(vec![7, 3], 10, 5, 3).is_err());
        assert!(FamilyParams::new(vec![0, 10], 10, 5, 3).is_err());
        assert!(FamilyParams::new(vec![1, 2], 3, 0, 0).is_err());
        assert!(FamilyParams::new(vec![1], 2, 4, 1).is_ok());
        assert!(FamilyParams::new(vec![1], 3, 4, 1).is_err());
    }

    #[test]
    fn family_ranges() {
        let p = FamilyParams::new(vec![3, 7], 10, 5, 3).unwrap();
        p.require_overpartition().unwrap();
        p.require_classical_a(0).unwrap();
        p.require_classical_b().unwrap();
        let reduced = p.with_k(4).unwrap();
        reduced.require_reduced().unwrap();
        assert!(p.with_k(3).unwrap().require_overpartition().is_err());
        assert!(p.require_classical_a(2).is_err());
        // k - 1 > lambda fails
        let q = FamilyParams::new(vec![3, 7], 10, 3, 2).unwrap();
        assert!(q.require_overpartition().is_err());
        assert_eq!(p.to_string(), "(3,7;10,5,3)");
        assert_eq!(p.residues(), vec![0, 3, 7]);
        assert!(p.allowed_size(53) && p.allowed_size(60) && !p.allowed_size(55));
    }
}
