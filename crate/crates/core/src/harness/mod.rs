//! Sampled verification of the transformation laws, the characterizing
//! conditions and the named identities, reported as JSON-serialisable
//! [`CheckReport`]s.

mod cloud;
mod membership;
mod report;
mod span;
mod suites;

pub use cloud::{locus_distance, SampleCloud, DEFAULT_MARGIN};
pub use membership::{check_f_membership, check_g_membership, g5_antiholomorphic_heat};
pub use report::{mixed_err, rel_err, Check, CheckReport, Metric, SuiteParams, Tolerances};
pub use span::{span_ratio, SpanRatio, ZERO_GUARD};
pub use suites::{
    commutator_configs, commutator_metric, commutator_metric_dd, covariance_metric, denominator_a_metric,
    denominator_points, f_spanning_set, phi_odd_part, run_identity_suite, run_identity_suite_on, suite_cloud, Commutator,
    SUITES,
};
