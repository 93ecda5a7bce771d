//! Local Siegel series: term sequences, series assembly and polynomial extraction.

pub mod extract;
pub mod oracle;
pub mod series;
pub mod shape;
pub mod terms;

pub use extract::{
    extract_p, extract_q, extract_r, p_poly, q_closed_form, q_poly, q_poly_paths, r_closed_form,
    r_closed_form_rational, QPaths, RReading,
};
pub use oracle::{oracle_integral, split_pair_oracle, term_oracle, OracleBox, DEFAULT_BUDGET};
pub use series::{assemble_series, assemble_series_oracle, LocalSeries, TermSource};
pub use shape::{LocalVector, QuadForm, QuadLatticeShape};
pub use terms::{invariants, term_ramified, term_ramified_gauss, term_unramified, EtaInvariants};
