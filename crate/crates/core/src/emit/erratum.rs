//! Term-wise sums of the `1/(1 + cos)` series against its printed and
//! corrected closed forms.

use serde::Serialize;

use super::format::sig15;
use crate::error::{Error, Result};
use crate::identities::{half_angle_cos_series, Depth};
use crate::numerics::{Angle, Extended, PrecisionContext, Real, DEFAULT_EXTENDED_DIGITS};

/// Terms summed for each grid point.
pub const ERRATUM_DEPTH: u32 = 40;

#[derive(Debug, Clone, PartialEq)]
pub struct ErratumEntry {
    pub phi: f64,
    pub termwise: f64,
    pub corrected: f64,
    pub printed: f64,
    pub corrected_residual: f64,
    pub printed_residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ErratumReport {
    pub depth: u32,
    pub decimal_digits: u32,
    pub entries: Vec<ErratumEntry>,
}

impl ErratumReport {
    /// True when the corrected form is closer at every grid point.
    pub fn corrected_is_better(&self) -> bool {
        self.entries
            .iter()
            .all(|e| e.corrected_residual < e.printed_residual)
    }

    pub fn max_corrected_residual(&self) -> f64 {
        self.entries
            .iter()
            .map(|e| e.corrected_residual)
            .fold(0.0, f64::max)
    }

    pub fn min_printed_residual(&self) -> f64 {
        self.entries
            .iter()
            .map(|e| e.printed_residual)
            .fold(f64::INFINITY, f64::min)
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Entry {
            phi: String,
            termwise: String,
            corrected: String,
            printed: String,
            corrected_residual: String,
            printed_residual: String,
        }
        #[derive(Serialize)]
        struct Doc {
            depth: u32,
            decimal_digits: u32,
            entries: Vec<Entry>,
        }
        let doc = Doc {
            depth: self.depth,
            decimal_digits: self.decimal_digits,
            entries: self
                .entries
                .iter()
                .map(|e| Entry {
                    phi: sig15(e.phi),
                    termwise: sig15(e.termwise),
                    corrected: sig15(e.corrected),
                    printed: sig15(e.printed),
                    corrected_residual: sig15(e.corrected_residual),
                    printed_residual: sig15(e.printed_residual),
                })
                .collect(),
        };
        let mut text = serde_json::to_string_pretty(&doc).expect("erratum serializes");
        text.push('\n');
        text
    }
}

/// Evaluates the series at depth [`ERRATUM_DEPTH`] in extended arithmetic
/// for every `φ` in the grid, which must lie in `(0, π/2)`.
pub fn erratum_report(phi_grid: &[f64]) -> Result<ErratumReport> {
    let ctx = PrecisionContext::extended(DEFAULT_EXTENDED_DIGITS)?;
    let mut entries = Vec::with_capacity(phi_grid.len());
    for &phi in phi_grid {
        if !(phi > 0.0 && phi < std::f64::consts::FRAC_PI_2) {
            return Err(Error::Domain(format!("φ = {phi} is outside (0, π/2)")));
        }
        let angle = Angle::new(Extended::from_f64(phi, &ctx));
        let s = half_angle_cos_series(&angle, Depth::Finite(ERRATUM_DEPTH), &ctx)?;
        let termwise = s.series.termwise().expect("finite depth").clone();
        let corrected_residual = (termwise.clone() - s.corrected_limit.clone()).abs();
        let printed_residual = (termwise.clone() - s.printed_limit.clone()).abs();
        entries.push(ErratumEntry {
            phi,
            termwise: termwise.to_f64(),
            corrected: s.corrected_limit.to_f64(),
            printed: s.printed_limit.to_f64(),
            corrected_residual: corrected_residual.to_f64(),
            printed_residual: printed_residual.to_f64(),
        });
    }
    Ok(ErratumReport {
        depth: ERRATUM_DEPTH,
        decimal_digits: DEFAULT_EXTENDED_DIGITS,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_4, FRAC_PI_6};

    #[test]
    fn quarter_and_sixth() {
        let r = erratum_report(&[FRAC_PI_4, FRAC_PI_6]).unwrap();
        let q = &r.entries[0];
        assert!((q.termwise - 0.75772212344519131).abs() < 1e-15);
        assert!((q.corrected - 0.75772212344519131).abs() < 1e-15);
        assert!((q.printed + 1.2422778765548086862).abs() < 1e-15);
        let s = &r.entries[1];
        assert!(s.corrected_residual < 1e-10);
        assert!(s.printed_residual > 0.5);
        assert!(r.corrected_is_better());
    }

    #[test]
    fn empty_grid_and_domain() {
        assert!(erratum_report(&[]).unwrap().entries.is_empty());
        assert!(erratum_report(&[0.0]).is_err());
        assert!(erratum_report(&[1.6]).is_err());
    }
}
