//! Integral cohomology of real Grassmann manifolds `Gr(k, n)` from Young
//! diagrams filled with `q` and `1` in a checkerboard pattern.
//!
//! The pipeline runs bottom-up:
//!
//! * [`schubert`]: Schubert cells as partitions in the `k x (n-k)` box and the
//!   weak Bruhat graph with simple-reflection labels;
//! * [`weights`]: checkered fills, `η`/`η*`, and the sign-vector dynamics
//!   giving the same weights along reduced words;
//! * [`complex`]: incidence graphs, coboundaries with incidence numbers
//!   `0`/`±2`, and cohomology by mod-2 ranks or by Smith normal form;
//! * [`qpoly`]: `p(q)`, Poincaré polynomials, Euler characteristics and
//!   `F_q` point counts;
//! * [`verify`]: every cross-check between the above, per shape.

pub mod complex;
pub mod error;
pub mod mod2;
pub mod poly;
pub mod qpoly;
pub mod schubert;
pub mod shape;
pub mod snf;
pub mod verify;
pub mod weights;

pub use complex::{
    classify_edges, cohomology, cohomology_snf_oracle, homology, is_orientable, AbelianGroup,
    CohomologyTable, EdgeClass, Indexing, Provenance, WeightedLattice,
};
pub use error::{Error, Result};
pub use poly::IntPolynomial;
pub use schubert::{BruhatGraph, CoverEdge, Partition, ReducedWord, SchubertSymbol};
pub use shape::{GrassmannShape, DEFAULT_MAX_N, ORACLE_MAX_N};
pub use weights::{FillVariant, Letter, SignVector};
