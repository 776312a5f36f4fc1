//! Exact evaluation of the closed-form invariants attached to Ulrich
//! bundles on a smooth intersection `X` of two quadric fourfolds in `P⁵`
//! and to moduli of bundles on a genus-2 curve: Chern data of the
//! Fourier–Mukai images, Brill–Noether numbers and nonemptiness tests, and
//! moduli-space dimension counts.
//!
//! Everything here is integer arithmetic (in `i128`, comfortably exact for
//! the cubic-size formulas involved); no floating point appears anywhere.

use thiserror::Error;

/// Errors from the invariants layer.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum InvariantsError {
    /// A rank below the formula's domain was supplied.
    #[error("rank {r} is below the minimum {min} for this invariant")]
    BadRank { r: i128, min: i128 },
    /// A Brill–Noether query with out-of-range entries.
    #[error("invalid Brill–Noether query: need g ≥ 0, r ≥ 1, k ≥ 1")]
    BadQuery,
}

/// Chern data of a rank-`r` Ulrich bundle on `X`, written in the basis
/// `(1, H_X, L_X, P_X)` of the even cohomology, where `H_X` is the
/// hyperplane class, `L_X` a line and `P_X` a point, with the
/// multiplication rules `H_X² = 4·L_X` and `H_X·L_X = P_X`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChernData {
    /// The bundle's rank on `X`.
    pub rank: i128,
    /// Rank of the corresponding bundle on the genus-2 curve.
    pub curve_rank: i128,
    /// Degree of the corresponding bundle on the curve.
    pub curve_degree: i128,
    /// The vector `(c₀, c₁, c₂, c₃)` in the basis above.
    pub chern: [i128; 4],
    /// Rank 1 is served as a negative control: no Ulrich line bundle
    /// exists on `X`, because no line bundle has Chern character `1 − L_X`.
    pub line_bundle_obstruction: bool,
}

/// Rank and degree of the curve bundle matched to a rank-`r` Ulrich bundle:
/// the unique solution of `2d − 3s = r`, `d − 2s = 0`, namely
/// `(s, d) = (r, 2r)`.
pub fn fm_rank_degree(r: i128) -> Result<(i128, i128), InvariantsError> {
    if r < 1 {
        return Err(InvariantsError::BadRank { r, min: 1 });
    }
    let (s, d) = (r, 2 * r);
    debug_assert_eq!(2 * d - 3 * s, r);
    debug_assert_eq!(d - 2 * s, 0);
    Ok((s, d))
}

/// Chern data `(1, r, 2r² − r, r(r−2)(2r+1)/3)` of a rank-`r` Ulrich
/// bundle, in the `(1, H_X, L_X, P_X)` basis.  The last entry is always an
/// integer: one of `r`, `r − 2`, `2r + 1` is divisible by 3.
pub fn fm_chern(r: i128) -> Result<ChernData, InvariantsError> {
    let (s, d) = fm_rank_degree(r)?;
    let c3_num = r * (r - 2) * (2 * r + 1);
    debug_assert_eq!(c3_num % 3, 0, "c3 numerator must be divisible by 3");
    Ok(ChernData {
        rank: r,
        curve_rank: s,
        curve_degree: d,
        chern: [1, r, 2 * r * r - r, c3_num / 3],
        line_bundle_obstruction: r == 1,
    })
}

/// The number of global sections an Ulrich bundle of rank `r` must have on
/// `X`: `deg(X) · r = 4r` (the degree of the intersection of two quadrics).
pub fn ulrich_section_count(r: i128) -> Result<i128, InvariantsError> {
    if r < 1 {
        return Err(InvariantsError::BadRank { r, min: 1 });
    }
    Ok(4 * r)
}

/// A query against the Brill–Noether locus `W^{k−1}_{r,d}(C)` of stable
/// rank-`r`, degree-`d` bundles with at least `k` sections on a curve of
/// genus `g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BNQuery {
    pub g: i128,
    pub r: i128,
    pub d: i128,
    pub k: i128,
}

impl BNQuery {
    pub fn new(g: i128, r: i128, d: i128, k: i128) -> Result<BNQuery, InvariantsError> {
        if g < 0 || r < 1 || k < 1 {
            return Err(InvariantsError::BadQuery);
        }
        Ok(BNQuery { g, r, d, k })
    }
}

/// Nonemptiness of `W^{k−1}_{r,d}(C)`: true exactly when `d > 0`,
/// `r ≤ d + (r−k)g`, and `(r,d,k)` is not the exceptional diagonal triple
/// `(r,r,r)` with `r ≥ 2`.  (For `r = 1` the triple `(1,1,1)` is the locus
/// of effective degree-1 line bundles, which is the curve itself, so the
/// exception does not apply.)
pub fn bgn_nonempty(q: BNQuery) -> bool {
    let BNQuery { g, r, d, k } = q;
    d > 0 && r <= d + (r - k) * g && !(r >= 2 && d == r && k == r)
}

/// The higher-rank Brill–Noether number
/// `ρ^{k−1}_{r,d} = r²(g−1) + 1 − k(k − d + r(g−1))`.
pub fn bn_rho(q: BNQuery) -> i128 {
    let BNQuery { g, r, d, k } = q;
    r * r * (g - 1) + 1 - k * (k - d + r * (g - 1))
}

/// The classical (line-bundle) Brill–Noether number
/// `ρ(g, r, d) = g − (r+1)(g − d + r)`.
pub fn rho_classical(g: i128, r: i128, d: i128) -> i128 {
    g - (r + 1) * (g - d + r)
}

/// Riemann–Roch on a genus-`g` curve: `χ = d + r(1 − g)`.
pub fn riemann_roch_curve(g: i128, r: i128, d: i128) -> i128 {
    d + r * (1 - g)
}

/// Dimension counts for the moduli space of stable Ulrich bundles of rank
/// `r ≥ 2` on `X`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UlrichModuliDims {
    /// Dimension of the moduli space of stable Ulrich bundles: `r² + 1`.
    pub moduli_dim: i128,
    /// Upper bound for the locus of strictly semistable extension classes,
    /// `r² − 2r + 5`; meaningful for the extension construction, so it is
    /// reported only for `r ≥ 4`.
    pub strict_ss_dim: Option<i128>,
    /// `ext¹` count `2r − 4` between stable Ulrich bundles of ranks 2 and
    /// `r − 2`; reported only for `r ≥ 4`.
    pub ext1_dim: Option<i128>,
    /// `χ(E ⊗ E*) = −r²`.
    pub chi_ee: i128,
}

/// Moduli dimensions `(r²+1, r²−2r+5, 2r−4, −r²)` for rank-`r` stable
/// Ulrich bundles; errors for `r < 2`, and the two extension-construction
/// entries are populated only for `r ≥ 4`.
pub fn ulrich_moduli_dims(r: i128) -> Result<UlrichModuliDims, InvariantsError> {
    if r < 2 {
        return Err(InvariantsError::BadRank { r, min: 2 });
    }
    let moduli_dim = r * r + 1;
    let (strict_ss_dim, ext1_dim) = if r >= 4 {
        let strict = r * r - 2 * r + 5;
        assert!(strict < moduli_dim, "genericity inequality must hold");
        (Some(strict), Some(2 * r - 4))
    } else {
        (None, None)
    };
    Ok(UlrichModuliDims {
        moduli_dim,
        strict_ss_dim,
        ext1_dim,
        chi_ee: -(r * r),
    })
}

/// The four case bounds showing that a generic stable bundle in
/// `U_C(3,6)` receives no nonzero map from the rank-2 reference bundle.
/// Each bound is recomputed from the summands displayed in its derivation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct R3OrthogonalityDims {
    /// Rank-2 degree-3 image: quot-scheme + Picard + extension bound.
    pub case1: i128,
    /// Rank-3 degree-4 image: torsion + bundle family + extension bound.
    pub case2: i128,
    /// Rank-3 degree-5 image.
    pub case3: i128,
    /// Rank-3 degree-6 image (surjection case).
    pub case4: i128,
    /// `dim U_C(3,6) = 10`, which strictly dominates every case.
    pub ambient: i128,
}

/// Case-by-case dimension bounds for the rank-3 generic-orthogonality
/// argument, each strictly below the ambient moduli dimension 10.
pub fn r3_orthogonality_dims() -> R3OrthogonalityDims {
    // Case 1: quot scheme (≤ 3) + Pic³ (= 2) + P Ext¹(L, G) (≤ 4).
    let case1 = 3 + 2 + 4;
    // Case 2: length-2 torsion (2) + family of images (≤ 2) + P Ext¹ (≤ 5).
    let case2 = 2 + 2 + 5;
    // Case 3: length-1 torsion (1) + family of images (≤ 5) + P Ext¹ (≤ 2).
    let case3 = 1 + 5 + 2;
    // Case 4: Pic⁻² (= 2) + P Hom(L, R) (= 7).
    let case4 = 2 + 7;
    // dim U_C(3,6) = r²(g−1) + 1 at (r, g) = (3, 2).
    let ambient = 3 * 3 + 1;
    let dims = R3OrthogonalityDims {
        case1,
        case2,
        case3,
        case4,
        ambient,
    };
    assert!(dims.case1 < ambient);
    assert!(dims.case2 < ambient);
    assert!(dims.case3 < ambient);
    assert!(dims.case4 < ambient);
    dims
}

/// Dimension bounds for the locus of stable bundles in `U_C(r, 2r)` whose
/// twist by some spinor-restriction fails to be a sheaf-theoretic image
/// (`h¹ ≠ 0` against some point's spinor bundle); for `r ≥ 3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JumpingLocusBounds {
    /// `ext¹` against the destabilizing quotient: `3r − 4`.
    pub ext1_dim: i128,
    /// Bad locus for one point of `X`: `(r−2)² + 1 + (3r−5) = r² − r`.
    pub family_dim: i128,
    /// Swept over the threefold `X`: `r² − r + 3`.
    pub swept_dim: i128,
    /// Ambient moduli dimension `r² + 1`.
    pub ambient_dim: i128,
}

/// The jumping-locus dimension count certifying that a generic stable
/// bundle of rank `r ≥ 3` and degree `2r` stays clear of every point's
/// spinor condition: the swept bound `r² − r + 3` is strictly below the
/// ambient `r² + 1`.
pub fn jumping_locus_bounds(r: i128) -> Result<JumpingLocusBounds, InvariantsError> {
    if r < 3 {
        return Err(InvariantsError::BadRank { r, min: 3 });
    }
    let ext1_dim = 3 * r - 4;
    let family_dim = (r - 2) * (r - 2) + 1 + (3 * r - 5);
    debug_assert_eq!(family_dim, r * r - r);
    let swept_dim = family_dim + 3;
    let ambient_dim = r * r + 1;
    assert!(swept_dim < ambient_dim);
    Ok(JumpingLocusBounds {
        ext1_dim,
        family_dim,
        swept_dim,
        ambient_dim,
    })
}
