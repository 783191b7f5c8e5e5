use std::fmt;

use serde::Serialize;

use crate::error::Result;
use crate::greedy::{ferro_constants, lc_constants, FerroTheoryConstants, LcTheoryConstants};

/// Quantities above this are flagged as not reproducible on a desk.
pub const DESK_LIMIT: f64 = 1e12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConstantsReport {
    pub alpha: f64,
    pub beta: f64,
    pub d2: usize,
    pub n: usize,
    pub ferro: FerroTheoryConstants,
    pub lc: LcTheoryConstants,
}

impl ConstantsReport {
    pub fn ferro_desk_reproducible(&self) -> bool {
        self.ferro.sample_bound <= DESK_LIMIT && self.ferro.quantum_sample_bound <= DESK_LIMIT
    }

    pub fn lc_desk_reproducible(&self) -> bool {
        self.lc.sample_bound_log10 <= DESK_LIMIT.log10() && (self.lc.t_star as f64) <= DESK_LIMIT
    }
}

pub fn calc_constants(alpha: f64, beta: f64, d2: usize, n: usize, delta: f64, zeta: f64) -> Result<ConstantsReport> {
    Ok(ConstantsReport {
        alpha,
        beta,
        d2,
        n,
        ferro: ferro_constants(alpha, beta, d2, delta, n)?,
        lc: lc_constants(alpha, beta, zeta, n)?,
    })
}

fn flag(ok: bool) -> &'static str {
    if ok {
        ""
    } else {
        "  [not desk-reproducible]"
    }
}

impl fmt::Display for ConstantsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (fe, lc) = (&self.ferro, &self.lc);
        writeln!(f, "inputs: alpha={} beta={} d2={} n={}", self.alpha, self.beta, self.d2, self.n)?;
        writeln!(f, "ferromagnetic (delta={}):", fe.delta)?;
        writeln!(f, "  eta                  = {:e}", fe.eta)?;
        writeln!(f, "  k                    = {}", fe.k)?;
        let ferro_ok = self.ferro_desk_reproducible();
        writeln!(f, "  sample_bound         = {:e}{}", fe.sample_bound, flag(ferro_ok))?;
        writeln!(f, "  quantum_sample_bound = {:e}{}", fe.quantum_sample_bound, flag(ferro_ok))?;
        writeln!(f, "locally consistent (zeta={}):", lc.zeta)?;
        writeln!(f, "  tau                  = {:e}", lc.tau)?;
        writeln!(f, "  t_star               = {}{}", lc.t_star, flag(lc.t_star as f64 <= DESK_LIMIT))?;
        writeln!(f, "  delta_cond           = {:e}", lc.delta_cond)?;
        write!(
            f,
            "  sample_bound         = 10^{}{}",
            lc.sample_bound_log10,
            flag(self.lc_desk_reproducible())
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_point_is_flagged() {
        let report = calc_constants(0.2, 1.0, 2, 100, 0.1, 0.1).unwrap();
        assert_eq!(report.ferro.k, 20);
        assert!(!report.lc_desk_reproducible());
        assert!(!report.ferro_desk_reproducible());
        let text = report.to_string();
        assert!(text.contains("not desk-reproducible"));
        assert!(text.contains("k                    = 20"));
    }

    #[test]
    fn zero_beta_uses_half_sigmoid() {
        let report = calc_constants(1.0, 0.0, 1, 10, 0.1, 0.1).unwrap();
        assert_eq!(report.ferro.eta, 0.5);
        assert_eq!(report.lc.t_star, 8);
    }
}
