//! Brute-force checks that are independent of the closed forms.

pub mod grassmann;
pub mod hnf;
pub mod ideals;
pub mod lattices;
pub mod xlambda;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

pub use grassmann::{all_subspaces, count_subspaces_by_psi, grassmannian_cell_count, psi_cell_tally};
pub use hnf::{enumerate_hnf, enumerate_hnf_with_budget, hnf_count, LatticeBasis, DEFAULT_BUDGET};
pub use ideals::{count_ideals, count_ideals_with, IdealCount, IdealEnumeration};
pub use lattices::{count_maximal_lattices, maximal_lattice_formula, phi_fibres, LatticeType, PhiFibres};
pub use xlambda::{kappa_of, verify_xlambda, x_lambda_index, MaximalLatticeSample, XLambdaReport};

use crate::error::Result;
use crate::local_ring::LocalRingSpec;
use crate::zeta_formulas::{zeta_main, ExtensionShape};

/// One coefficient compared between the ideal count and the formula.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesReport {
    pub spec: LocalRingSpec,
    pub k: u32,
    pub oracle_count: String,
    pub formula_count: String,
    #[serde(rename = "match")]
    pub matches: bool,
    pub seed: Option<u64>,
    pub budget_used: String,
}

/// Compares `count_ideals(spec, k)` with the `Y^k` coefficient of the main
/// formula at `X = p`, for `k = 0..=max_k`.
pub fn match_series(spec: &LocalRingSpec, max_k: u32) -> Result<Vec<SeriesReport>> {
    match_series_with_budget(spec, max_k, DEFAULT_BUDGET)
}

pub fn match_series_with_budget(spec: &LocalRingSpec, max_k: u32, budget: u128) -> Result<Vec<SeriesReport>> {
    let working = if spec.k() < max_k { spec.with_precision(max_k)? } else { spec.clone() };
    let formula = zeta_main(ExtensionShape::new(spec.e(), spec.f())?)?;
    let series: Vec<BigInt> = formula.series_y(spec.p(), max_k as usize)?;
    (0..=max_k)
        .map(|k| {
            let counted = count_ideals_with(&working, k, IdealEnumeration::Factorized, budget)?;
            let expected = &series[k as usize];
            Ok(SeriesReport {
                spec: spec.clone(),
                k,
                oracle_count: counted.count.to_string(),
                formula_count: expected.to_string(),
                matches: &counted.count == expected,
                seed: None,
                budget_used: counted.budget_used.to_string(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::local_ring::make_ring_spec;

    #[test]
    fn zeroth_coefficient() {
        let r = match_series(&make_ring_spec(3, 1, 2, 1).unwrap(), 0).unwrap();
        assert_eq!(r.len(), 1);
        assert!(r[0].matches);
        assert_eq!(r[0].oracle_count, "1");
    }

    #[test]
    fn ramified_quadratic_prefix() {
        let r = match_series(&make_ring_spec(2, 2, 1, 1).unwrap(), 3).unwrap();
        assert!(r.iter().all(|x| x.matches), "{r:?}");
        let counts: Vec<&str> = r.iter().map(|x| x.oracle_count.as_str()).collect();
        assert_eq!(&counts[..2], &["1", "15"]);
    }

    #[test]
    fn report_json_keys() {
        let r = &match_series(&make_ring_spec(2, 1, 1, 1).unwrap(), 1).unwrap()[1];
        let v = serde_json::to_value(r).unwrap();
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["budget_used", "formula_count", "k", "match", "oracle_count", "seed", "spec"]);
        assert_eq!(v["oracle_count"], "3");
    }
}
