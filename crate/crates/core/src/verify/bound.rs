use super::VerifyError;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum LogBase {
    #[default]
    Two,
    Natural,
}

impl LogBase {
    fn log(self, x: f64) -> f64 {
        match self {
            LogBase::Two => x.log2(),
            LogBase::Natural => x.ln(),
        }
    }
}

/// `2(n + k) / (3k) * (log k + log log k + 4)`, an upper bound on the girth
/// of any graph with `n` vertices and `n + k` edges.
pub fn bs_bound(n: usize, k: usize, base: LogBase) -> Result<f64, VerifyError> {
    if n < 4 || k < 2 {
        return Err(VerifyError::OutOfDomain { n, k });
    }
    let kf = k as f64;
    let log_k = base.log(kf);
    Ok(2.0 * (n + k) as f64 / (3.0 * kf) * (log_k + base.log(log_k) + 4.0))
}
