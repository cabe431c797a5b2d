//! Exact symmetric-group combinatorics for constituent multiplicities of
//! generalized Steinberg representations of `GL_n`: Bruhat order, double
//! cosets, Kazhdan–Lusztig polynomials, segment twists, Tits-complex
//! bookkeeping and a rule table for Ext dimensions.

pub mod cosets;
pub mod error;
pub mod ext;
pub mod kl;
pub mod oracle;
pub mod segments;
pub mod selftest;
pub mod steinberg;
pub mod weights;
pub mod weyl;

pub use cosets::{BlockSet, OrderedPartition};
pub use error::{Error, Result};
pub use ext::{ExtAnswer, ExtQuery, ExtStatus, Flavor, Params, RepDescriptor};
pub use kl::{KLPolynomial, KlTable};
pub use segments::{Orientation, SegmentDatum, TwistTuple};
pub use steinberg::{ConstituentLabel, FormalComplex, GrothVector};
pub use weights::IntegralWeight;
pub use weyl::{MultiWeylElement, Permutation, SimpleRootSet};
