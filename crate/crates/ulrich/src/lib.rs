//! Exact computer algebra over small prime fields, built around a Groebner
//! engine for graded modules, free resolutions, and sheaf cohomology via
//! graded local duality.
//!
//! The library culminates in [`pipeline`], which constructs a degree-15,
//! genus-12 arithmetically Cohen-Macaulay curve on a smooth intersection of
//! two quadrics in P^5 and certifies the rank-3 Ulrich bundle attached to it
//! by the Serre correspondence.  Every stage of that construction is exact
//! arithmetic over a prime field; no floating point is used anywhere.
//!
//! Module overview:
//!
//! * [`gf`] — arithmetic in GF(p) for odd primes p < 2^31.
//! * [`linalg`] — dense exact linear algebra (rank, kernels, solving).
//! * [`mpoly`] — multivariate polynomials with multigraded monomial orders.
//! * [`gb`] — Buchberger engine for ideals and submodules of free modules,
//!   with syzygy tracking.
//! * [`resolve`] — minimal graded free resolutions, Betti tables, Hilbert
//!   functions, series, and polynomials.
//! * [`idealops`] — ideal quotients, saturation, elimination, ring maps and
//!   preimages, codimension, singular loci.
//! * [`cohomology`] — Hom and Ext of graded modules, sheaf cohomology of the
//!   associated sheaf on projective space via local duality.
//! * [`invariants`] — closed-form numerics: Chern classes, Brill-Noether
//!   numbers, Riemann-Roch, and moduli dimension counts.
//! * [`pipeline`] — the randomized end-to-end construction and its
//!   certification report.

pub mod cohomology;
pub mod gb;
pub mod gf;
pub mod idealops;
pub mod invariants;
pub mod linalg;
pub mod mpoly;
pub mod pipeline;
pub mod resolve;
