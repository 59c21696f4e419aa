//! Faithful dimensions across primes or degrees, grouped by signature.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::classifier::predict::Prediction;
use crate::engine::{faithful_dimension, MinimizeOptions, RankSignature, Reduction};
use crate::error::Result;
use crate::exact::arith::is_prime;
use crate::lie::algebra::ZLieAlgebra;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub prime: u64,
    pub f: u32,
    pub q: u64,
    pub value: Option<u128>,
    pub signature: Option<RankSignature>,
    pub l2: Option<usize>,
    pub mode: Option<&'static str>,
    /// Case label of a matching prediction, `MISMATCH`, or empty.
    pub matched_case: String,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub rows: Vec<SweepRow>,
}

/// Rows sharing a signature, `l2` and `f`.
pub type ClusterKey = (RankSignature, usize, u32);

impl SweepReport {
    pub fn clusters(&self) -> BTreeMap<ClusterKey, Vec<u64>> {
        let mut out: BTreeMap<ClusterKey, Vec<u64>> = BTreeMap::new();
        for row in &self.rows {
            if let (Some(sig), Some(l2)) = (&row.signature, row.l2) {
                out.entry((sig.clone(), l2, row.f)).or_default().push(row.prime);
            }
        }
        out
    }

    pub fn mismatches(&self) -> Vec<&SweepRow> {
        self.rows.iter().filter(|r| r.matched_case == "MISMATCH").collect()
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["prime", "f", "q", "value", "signature", "mode", "matched_case"])?;
        for r in &self.rows {
            w.write_record([
                r.prime.to_string(),
                r.f.to_string(),
                r.q.to_string(),
                r.value.map_or_else(String::new, |v| v.to_string()),
                r.signature.as_ref().map_or_else(String::new, |s| s.to_string()),
                r.mode.unwrap_or("refused").to_string(),
                r.matched_case.clone(),
            ])?;
        }
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&serde_json::json!({ "schema": 1, "rows": self.rows }))
            .expect("report serializes")
    }
}

fn run_one(
    g: &ZLieAlgebra,
    p: u64,
    f: u32,
    reduction: Reduction,
    opts: &MinimizeOptions,
    predict: &(dyn Fn(u64, u32) -> Result<Option<Prediction>> + Sync),
) -> SweepRow {
    let q = p.saturating_pow(f);
    let mut row = SweepRow {
        prime: p,
        f,
        q,
        value: None,
        signature: None,
        l2: None,
        mode: None,
        matched_case: String::new(),
        error: None,
    };
    match faithful_dimension(g, p, f, reduction, opts) {
        Ok(r) => {
            row.value = Some(r.value);
            row.signature = Some(r.signature);
            row.l2 = Some(r.l2);
            row.mode = Some(r.mode.as_str());
            match predict(p, f) {
                Ok(Some(pred)) if pred.value == r.value => row.matched_case = pred.case,
                Ok(Some(_)) => row.matched_case = "MISMATCH".into(),
                Ok(None) => {}
                Err(e) => row.error = Some(e.to_string()),
            }
        }
        Err(e) => row.error = Some(e.to_string()),
    }
    row
}

/// One engine run per prime in `primes`; failures are recorded per row.
pub fn sweep(
    g: &ZLieAlgebra,
    primes: &[u64],
    f: u32,
    reduction: Reduction,
    opts: &MinimizeOptions,
    predict: &(dyn Fn(u64, u32) -> Result<Option<Prediction>> + Sync),
) -> SweepReport {
    let rows = primes
        .par_iter()
        .filter(|&&p| is_prime(p))
        .map(|&p| run_one(g, p, f, reduction, opts, predict))
        .collect();
    SweepReport { rows }
}

/// One engine run per degree `f` at a fixed prime.
pub fn vertical_sweep(
    g: &ZLieAlgebra,
    p: u64,
    fs: &[u32],
    reduction: Reduction,
    opts: &MinimizeOptions,
    predict: &(dyn Fn(u64, u32) -> Result<Option<Prediction>> + Sync),
) -> SweepReport {
    let rows = fs
        .iter()
        .map(|&f| run_one(g, p, f, reduction, opts, predict))
        .collect();
    SweepReport { rows }
}

/// A predictor that never predicts.
pub fn no_prediction(_: u64, _: u32) -> Result<Option<Prediction>> {
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifier::predict::{predicted_value, Named};
    use crate::exact::arith::odd_primes_in;

    #[test]
    fn binary_quadratic_clusters() {
        let name = Named::BinaryQuadratic;
        let g = name.algebra().unwrap();
        let predict = |p, f| predicted_value(&name, p, f);
        let primes = odd_primes_in(3, 50);
        let report = sweep(&g, &primes, 1, Reduction::Full, &MinimizeOptions::default(), &predict);
        assert!(report.mismatches().is_empty());
        let clusters = report.clusters();
        assert_eq!(clusters.len(), 2);
        let ones = &clusters[&(RankSignature::new(vec![1, 1]), 0, 1)];
        assert!(ones.iter().all(|p| p % 4 == 1));
        let csv = report.to_csv().unwrap();
        assert!(csv.starts_with("prime,f,q,value,signature,mode,matched_case\n3,1,3,18,\"(2,2)\",exact,"));
    }

    #[test]
    fn vertical_and_refusals() {
        let g = Named::BinaryQuadratic.algebra().unwrap();
        let report = vertical_sweep(&g, 3, &[1, 2, 3], Reduction::Full, &MinimizeOptions::default(), &no_prediction);
        let sigs: Vec<_> = report.rows.iter().map(|r| r.signature.clone().unwrap()).collect();
        assert_eq!(sigs[0], RankSignature::new(vec![2, 2]));
        assert_eq!(sigs[1], RankSignature::new(vec![1, 1]));
        assert_eq!(sigs[2], RankSignature::new(vec![2, 2]));

        let f23 = Named::FreeNilpotent(2, 3).algebra().unwrap();
        let report = sweep(&f23, &[3, 5], 1, Reduction::TopDegree, &MinimizeOptions::default(), &no_prediction);
        assert!(report.rows[0].error.is_some());
        assert_eq!(report.rows[1].value, Some(10));
        assert!(report.to_json().contains("\"schema\": 1"));
    }

    #[test]
    fn abelian_single_cluster() {
        let g = ZLieAlgebra::abelian(2);
        let report = sweep(&g, &[3, 5, 7], 1, Reduction::Full, &MinimizeOptions::default(), &no_prediction);
        let clusters = report.clusters();
        assert_eq!(clusters.len(), 1);
        assert_eq!(clusters.values().next().unwrap(), &vec![3, 5, 7]);
    }
}
