//! Command-line layer over the solver library: curve tracing, eigenvalue
//! solving against serialized potentials, and the acceptance suites. Kept as
//! a library so the binary and the acceptance tests share one implementation.

pub mod curves;
pub mod report;
pub mod solve;
pub mod suites;

/// Honors SPECTRA_THREADS before the first rayon call; silently keeps the
/// default pool if it was already built (tests may race to initialize).
pub fn init_threads() {
    if let Ok(s) = std::env::var("SPECTRA_THREADS") {
        if let Ok(n) = s.trim().parse::<usize>() {
            if n > 0 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
}
