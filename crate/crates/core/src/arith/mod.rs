//! Exact arithmetic substrate.

pub mod hypergeom;
pub mod numtheory;
pub mod poly;
pub mod sqrtp;

pub use hypergeom::hyp2f1_terminating;
pub use numtheory::{bernoulli, ramanujan_sum, splitting_class, Splitting};
pub use poly::{Poly, Scalar};
pub use sqrtp::{sqrtp_eval_halfint, SqrtPBuilder, SqrtPPoly};
