//! Exact symbolic computations for spherical functions on p-adic Kac-Moody
//! groups: root-system combinatorics with multiplicities, Weyl group
//! machinery, Demazure-Lusztig operators, Macdonald's spherical-function
//! formula, the Gindikin-Karpelevich product, and a brute-force SL2
//! local-field oracle that cross-checks the formulas by enumerating cosets.
//!
//! Everything is computed over `Z[v, v^-1]` or exact rationals; there is no
//! floating point anywhere. See the `examples/` directory for one runnable
//! walkthrough per capability, and `satake verify-all` for the full
//! verification suite.

pub mod cli;
pub mod dl_algebra;
pub mod error;
pub mod padic_oracle;
pub mod root_datum;
pub mod spherical_gk;
pub mod verify;
pub mod vpoly;
pub mod weyl;

pub use dl_algebra::{bc_series, dominance_leq, hecke_quadratic_check, integral_i, AlgebraElement, Exponent, SeriesKind};
pub use error::{Error, Result};
pub use root_datum::{classify, BlockKind, Classification, CorootVector, Gcm, RootDatum, RootTable};
pub use spherical_gk::{
    approximation_check, finite_cfunction, gk_shift, satake_exact, satake_normalized, upsilon,
    StabilizationReport, TruncatedSeries,
};
pub use vpoly::{Rational, VPoly};
pub use weyl::{BaseCoweight, WeylElement, WeylGroup};

#[cfg(test)]
pub(crate) mod fixtures {
    use crate::root_datum::RootDatum;

    pub fn a1() -> RootDatum {
        RootDatum::from_entries(vec![vec![2]]).unwrap()
    }

    pub fn a2() -> RootDatum {
        RootDatum::from_entries(vec![vec![2, -1], vec![-1, 2]]).unwrap()
    }

    pub fn affine_a1() -> RootDatum {
        RootDatum::from_entries(vec![vec![2, -2], vec![-2, 2]]).unwrap()
    }
}
