//! Exact arithmetic substrate.

pub mod artin_hasse;
pub mod ext;
pub mod mpoly;
pub mod padic;
pub mod ring;
pub mod trunc;

pub use artin_hasse::ArtinHasseTable;
pub use ext::ExtRing;
pub use mpoly::{MPoly, MPolyRing};
pub use padic::{binomial_series, PadicScalar, Zpn};
pub use ring::{Field, Frobenius, Ring};
pub use trunc::{SeriesRing, TruncSeries};
