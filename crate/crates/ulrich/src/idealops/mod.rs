//! Ideal-theoretic operations built on the Gröbner engine: colon ideals,
//! saturation, variable elimination, preimages under graded ring maps, and
//! Jacobian-criterion singular-locus checks.
//!
//! Everything here works for homogeneous ideals in a graded [`Ring`], in
//! particular for the standard grading on a polynomial ring and for the
//! bigraded coordinate ring of a product of projective spaces.

use crate::gb::{
    groebner_basis, kernel_generators, FreeModule, GbError, GbOptions, Ideal, ModuleElement,
};
use crate::linalg::{Mat, RowSpace};
use crate::mpoly::{Monomial, Multidegree, Poly, Ring, RingError};

use thiserror::Error;


/// Errors from the ideal-operation layer.
#[derive(Debug, Error)]
pub enum IdealOpsError {
    #[error(transparent)]
    Gb(#[from] GbError),
    #[error(transparent)]
    Ring(#[from] RingError),
    /// Colon or saturation by the zero ideal is undefined.
    #[error("cannot form a colon ideal with zero divisor ideal")]
    QuotientByZero,
    /// The two arguments live in different rings.
    #[error("operands live in different rings")]
    RingMismatch,
    /// A variable name was not found in the relevant ring.
    #[error("variable `{0}` not found in the ring")]
    VarNotFound(String),
    /// A polynomial being moved between rings uses a variable the target
    /// ring does not have.
    #[error("polynomial uses variable `{0}` absent from the target ring")]
    PortUsesMissingVar(String),
    /// A ring map needs exactly one image per source variable.
    #[error("ring map expects {expected} images, got {got}")]
    ImageCountMismatch { expected: usize, got: usize },
    /// Ring map images must be homogeneous of one common multidegree.
    #[error("ring map images must be nonzero and homogeneous of one common multidegree")]
    BadImages,
    /// Ring maps are only defined from standard-graded sources here.
    #[error("ring map source must be standard graded (every variable of degree 1)")]
    SourceNotStandard,
    /// The default irrelevant ideal is only defined for the gradings used
    /// here (standard, or a bigrading with degree-(1,1) monomials).
    #[error("no default irrelevant ideal for this grading")]
    NoIrrelevantIdeal,
}

/// The colon (quotient) ideal `(I : J) = { f : f·J ⊆ I }`.
///
/// Computed by one kernel run: `f ∈ (I : J)` exactly when the column vector
/// `(f·g_1, …, f·g_k)` of products against the generators of `J` lies in the
/// block submodule `I ⊕ … ⊕ I`, so the colon ideal is the kernel of
/// `S → (S/I)^k`, `f ↦ (f·g_j)_j`.  The block submodule is spanned by a
/// Gröbner basis of `I` in each position, which is already a module Gröbner
/// basis, so those elements enter the run pre-certified.
///
/// Fails with [`IdealOpsError::QuotientByZero`] when `J` has no nonzero
/// generators, and [`IdealOpsError::RingMismatch`] when the rings differ.
pub fn ideal_quotient(i: &Ideal, j: &Ideal, opts: &GbOptions) -> Result<Ideal, IdealOpsError> {
    let ring = i.ring();
    if ring != j.ring() {
        return Err(IdealOpsError::RingMismatch);
    }
    if j.gens().is_empty() {
        return Err(IdealOpsError::QuotientByZero);
    }

    // Degrees of J's generators, and a common target degree making the
    // tracked column (g_1, …, g_k) homogeneous.
    let gdegs: Vec<Multidegree> = j
        .gens()
        .iter()
        .map(|g| {
            ring.poly_multidegree(g)
                .ok_or(GbError::Inhomogeneous)
                .map_err(IdealOpsError::Gb)
        })
        .collect::<Result<_, _>>()?;
    let mut top = Multidegree::ZERO;
    for d in &gdegs {
        top = Multidegree(top.0.max(d.0), top.1.max(d.1));
    }
    let fm = FreeModule::new(
        ring.clone(),
        gdegs.iter().map(|d| top.sub(*d)).collect(),
    );

    let column = fm.elt_from_polys(j.gens().to_vec());

    let ibasis = i.gb()?.polys();
    let mut untracked = Vec::with_capacity(ibasis.len() * fm.rank());
    for pos in 0..fm.rank() {
        for b in &ibasis {
            let mut comps = vec![ring.poly_zero(); fm.rank()];
            comps[pos] = b.clone();
            untracked.push(fm.elt_from_polys(comps));
        }
    }

    let (_, kernel) = kernel_generators(&fm, &[column], &untracked, true, opts)?;
    let gens = kernel.into_iter().map(|s| s.comps.into_iter().next().unwrap());
    Ok(Ideal::new(ring.clone(), gens.collect()))
}

/// The default irrelevant ideal of the ring's grading: the maximal ideal
/// `⟨x_0, …, x_n⟩` for a singly graded ring, and the ideal of all
/// degree-(1,1) monomials for a bigraded ring (for the coordinate ring of a
/// product of two projective spaces these are the products `x_i·y_j`).
pub fn irrelevant_ideal(ring: &Ring) -> Result<Ideal, IdealOpsError> {
    let gens: Vec<Poly> = match ring.grading_rank() {
        1 => (0..ring.nvars()).map(|i| ring.poly_var(i)).collect(),
        _ => ring
            .monomials_of_multidegree(Multidegree(1, 1))
            .into_iter()
            .map(|m| ring.poly_from_pairs(&[(1, m)]))
            .collect(),
    };
    if gens.is_empty() {
        return Err(IdealOpsError::NoIrrelevantIdeal);
    }
    Ok(Ideal::new(ring.clone(), gens))
}

/// The saturation `(I : J^∞)`, by iterating `I ← (I : J)` until the reduced
/// Gröbner basis stabilizes.  With `j = None` the ring's
/// [`irrelevant_ideal`] is used, which for a homogeneous ideal removes the
/// irrelevant primary component.
pub fn saturate(i: &Ideal, j: Option<&Ideal>, opts: &GbOptions) -> Result<Ideal, IdealOpsError> {
    let default;
    let j = match j {
        Some(j) => j,
        None => {
            default = irrelevant_ideal(i.ring())?;
            &default
        }
    };
    let mut cur = ideal_quotient(i, j, opts)?;
    if cur.same_ideal(i)? {
        return Ok(cur);
    }
    loop {
        let next = ideal_quotient(&cur, j, opts)?;
        if next.same_ideal(&cur)? {
            return Ok(next);
        }
        cur = next;
    }
}

/// Moves a polynomial to another ring over the same prime field, matching
/// variables by name.  Fails if `f` actually uses a variable the target ring
/// lacks; variables of the target that are absent from the source are simply
/// never used.
pub fn port_poly(from: &Ring, to: &Ring, f: &Poly) -> Result<Poly, IdealOpsError> {
    assert_eq!(
        from.field().p(),
        to.field().p(),
        "port_poly requires a common coefficient field"
    );
    // var index in `from` -> var index in `to` (or None).
    let slot: Vec<Option<usize>> = from
        .vars()
        .iter()
        .map(|v| to.vars().iter().position(|w| w == v))
        .collect();
    let mut pairs = Vec::with_capacity(f.len());
    for t in &f.terms {
        let mut m = Monomial::ONE;
        for i in 0..from.nvars() {
            let e = t.m.exp(i);
            if e == 0 {
                continue;
            }
            match slot[i] {
                Some(k) => m.set_exp(k, e),
                None => {
                    return Err(IdealOpsError::PortUsesMissingVar(from.vars()[i].clone()))
                }
            }
        }
        pairs.push((t.c as i64, m));
    }
    Ok(to.poly_from_pairs(&pairs))
}

/// The elimination ideal `I ∩ k[remaining variables]`, as an ideal of the
/// subring on the variables *not* listed in `drop`.
///
/// Internally the variables to eliminate are moved to the front, a Gröbner
/// basis is computed for the block elimination order, and the basis elements
/// free of the dropped variables are ported to the subring (which keeps the
/// surviving variables' names and degrees, under graded reverse
/// lexicographic order).  With an empty `drop` list the ideal is returned
/// unchanged in its own ring.
pub fn eliminate(i: &Ideal, drop: &[&str], opts: &GbOptions) -> Result<Ideal, IdealOpsError> {
    let ring = i.ring();
    if drop.is_empty() {
        return Ok(i.clone());
    }
    let mut drop_idx = Vec::with_capacity(drop.len());
    for name in drop {
        match ring.vars().iter().position(|v| v == name) {
            Some(k) => {
                if !drop_idx.contains(&k) {
                    drop_idx.push(k);
                }
            }
            None => return Err(IdealOpsError::VarNotFound(name.to_string())),
        }
    }

    let keep_idx: Vec<usize> = (0..ring.nvars()).filter(|k| !drop_idx.contains(k)).collect();

    // Work ring: dropped variables first, then the survivors, same degrees,
    // block order eliminating the leading block.
    let perm: Vec<usize> = drop_idx.iter().chain(keep_idx.iter()).copied().collect();
    let work = Ring::new(
        ring.field(),
        perm.iter().map(|&k| ring.vars()[k].clone()).collect(),
        perm.iter().map(|&k| ring.var_degree(k)).collect(),
        ring.grading_rank(),
        crate::mpoly::MonomialOrder::Eliminate(drop_idx.len()),
    )?;

    let moved: Vec<Poly> = i
        .gens()
        .iter()
        .map(|g| port_poly(ring, &work, g))
        .collect::<Result<_, _>>()?;
    let basis = rank1_gb(&work, moved, opts)?;

    let sub = Ring::new(
        ring.field(),
        keep_idx.iter().map(|&k| ring.vars()[k].clone()).collect(),
        keep_idx.iter().map(|&k| ring.var_degree(k)).collect(),
        ring.grading_rank(),
        crate::mpoly::MonomialOrder::GrevLex,
    )?;

    let mut kept = Vec::new();
    for g in &basis {
        // In the block order a lead free of the dropped variables forces the
        // whole polynomial to be, but checking every term is cheap and safe.
        let free = g
            .terms
            .iter()
            .all(|t| (0..drop_idx.len()).all(|b| t.m.exp(b) == 0));
        if free {
            kept.push(port_poly(&work, &sub, g)?);
        }
    }
    Ok(Ideal::new(sub, kept))
}

/// A graded ring homomorphism `φ: S → T` given by a homogeneous polynomial
/// image for each source variable, all of one common multidegree `δ`.  The
/// source must be standard graded, so `φ` multiplies degrees by `δ`.
#[derive(Debug, Clone)]
pub struct RingMap {
    source: Ring,
    target: Ring,
    images: Vec<Poly>,
    delta: Multidegree,
}

impl RingMap {
    /// Validates and builds a graded ring map.
    pub fn new(source: Ring, target: Ring, images: Vec<Poly>) -> Result<RingMap, IdealOpsError> {
        if images.len() != source.nvars() {
            return Err(IdealOpsError::ImageCountMismatch {
                expected: source.nvars(),
                got: images.len(),
            });
        }
        if source.grading_rank() != 1
            || (0..source.nvars()).any(|k| source.var_degree(k) != Multidegree(1, 0))
        {
            return Err(IdealOpsError::SourceNotStandard);
        }
        let mut delta = None;
        for im in &images {
            let d = target.poly_multidegree(im).ok_or(IdealOpsError::BadImages)?;
            match delta {
                None => delta = Some(d),
                Some(prev) if prev == d => {}
                Some(_) => return Err(IdealOpsError::BadImages),
            }
        }
        let delta = delta.ok_or(IdealOpsError::BadImages)?;
        if delta.totweight() <= 0 {
            return Err(IdealOpsError::BadImages);
        }
        Ok(RingMap {
            source,
            target,
            images,
            delta,
        })
    }

    pub fn source(&self) -> &Ring {
        &self.source
    }

    pub fn target(&self) -> &Ring {
        &self.target
    }

    pub fn images(&self) -> &[Poly] {
        &self.images
    }

    /// The common multidegree of the variable images.
    pub fn delta(&self) -> Multidegree {
        self.delta
    }

    /// Applies the map to a polynomial: substitutes each variable's image.
    pub fn apply(&self, f: &Poly) -> Poly {
        let t = &self.target;
        let mut out = t.poly_zero();
        for term in &f.terms {
            let mut prod = t.poly_const(term.c);
            for i in 0..self.source.nvars() {
                let e = term.m.exp(i);
                if e > 0 {
                    prod = t.poly_mul(&prod, &t.poly_pow(&self.images[i], e as u32));
                }
            }
            out = t.poly_add(&out, &prod);
        }
        out
    }

    /// The preimage ideal `φ^{-1}(J)` in the source ring.
    ///
    /// Computed in a joined ring with the target variables (kept at their
    /// own degrees) ahead of the source variables (reweighted to degree
    /// `δ`), as the elimination of the target variables from
    /// `J + ⟨z_i − φ(z_i)⟩`.  The result is regraded back to the standard
    /// grading of the source ring.
    pub fn preimage(&self, j: &Ideal, opts: &GbOptions) -> Result<Ideal, IdealOpsError> {
        if j.ring() != &self.target {
            return Err(IdealOpsError::RingMismatch);
        }
        let t = &self.target;
        let s = &self.source;

        let mut vars: Vec<String> = t.vars().to_vec();
        vars.extend(s.vars().iter().cloned());
        let mut degs: Vec<Multidegree> = t.degrees().to_vec();
        degs.extend(std::iter::repeat(self.delta).take(s.nvars()));
        let joined = Ring::new(
            t.field(),
            vars,
            degs,
            t.grading_rank(),
            crate::mpoly::MonomialOrder::Eliminate(t.nvars()),
        )?;

        let mut gens: Vec<Poly> = j
            .gens()
            .iter()
            .map(|g| port_poly(t, &joined, g))
            .collect::<Result<_, _>>()?;
        for (i, im) in self.images.iter().enumerate() {
            let z = joined.poly_var(t.nvars() + i);
            let im = port_poly(t, &joined, im)?;
            gens.push(joined.poly_sub(&z, &im));
        }

        let basis = rank1_gb(&joined, gens, opts)?;
        let mut kept = Vec::new();
        for g in &basis {
            let free = g
                .terms
                .iter()
                .all(|t0| (0..t.nvars()).all(|b| t0.m.exp(b) == 0));
            if free {
                // Porting to the source ring regrades the surviving
                // variables from weight δ back to degree 1.
                kept.push(port_poly(&joined, s, g)?);
            }
        }
        Ok(Ideal::new(s.clone(), kept))
    }

    /// Basis of the degree-`d` piece of the preimage `φ^{-1}(J)`, by exact
    /// linear algebra instead of elimination.
    ///
    /// A source polynomial `f` of degree `d` maps into `J` exactly when
    /// `φ(f)` lies in the degree-`d·δ` piece of `J`, which is spanned by the
    /// monomial multiples of the generators of `J` landing in that degree.
    /// So the piece is the kernel of the map sending a degree-`d` source
    /// monomial to the class of its image modulo that span — a single dense
    /// kernel computation, cheap whenever the two degree pieces are small.
    /// When the preimage ideal is known (or later certified) to be generated
    /// in a few low degrees, computing those pieces replaces a full
    /// elimination-order Groebner basis over the joined ring.
    pub fn preimage_piece(&self, j: &Ideal, d: i64) -> Result<Vec<Poly>, IdealOpsError> {
        if j.ring() != &self.target {
            return Err(IdealOpsError::RingMismatch);
        }
        let s = &self.source;
        let t = &self.target;
        let field = t.field();
        let big = self.delta.scale(d);

        let fm_s = FreeModule::rank1(s.clone());
        let src_basis = fm_s.piece_basis(Multidegree(d, 0));
        if src_basis.is_empty() {
            return Ok(Vec::new());
        }
        let fm_t = FreeModule::rank1(t.clone());
        let tgt_basis = fm_t.piece_basis(big);

        // Echelonized span of the degree-`d·δ` piece of J.
        let mut span = RowSpace::new(field, tgt_basis.len());
        for g in j.gens() {
            let dg = t.poly_multidegree(g).ok_or(IdealOpsError::BadImages)?;
            let cofactor = big.sub(dg);
            if !cofactor.is_nonnegative() {
                continue;
            }
            for m in t.monomials_of_multidegree(cofactor) {
                let prod = t.poly_mul_term(g, 1, &m);
                span.insert(fm_t.elt_to_vec(&fm_t.poly_elt(prod), &tgt_basis));
            }
        }

        // One row per source monomial: its image, reduced modulo the span.
        let mut rows = Vec::with_capacity(src_basis.len());
        for &(_, m) in &src_basis {
            let img = self.apply(&s.poly_from_pairs(&[(1, m)]));
            let mut v = fm_t.elt_to_vec(&fm_t.poly_elt(img), &tgt_basis);
            span.reduce(&mut v);
            rows.push(v);
        }

        let ker = Mat::from_rows(&rows).transpose().kernel_basis(field);
        let mut out = Vec::with_capacity(ker.len());
        for c in ker {
            let pairs: Vec<(i64, Monomial)> = c
                .iter()
                .zip(&src_basis)
                .filter(|(&ck, _)| ck != 0)
                .map(|(&ck, &(_, m))| (ck as i64, m))
                .collect();
            out.push(s.poly_from_pairs(&pairs));
        }
        Ok(out)
    }
}

/// Reduced Gröbner basis, as polynomials, of an ideal in `ring` under the
/// caller's engine options.
fn rank1_gb(ring: &Ring, gens: Vec<Poly>, opts: &GbOptions) -> Result<Vec<Poly>, IdealOpsError> {
    let fm = FreeModule::rank1(ring.clone());
    let elems: Vec<ModuleElement> = gens
        .into_iter()
        .filter(|g| !g.is_zero())
        .map(|g| fm.elt_from_polys(vec![g]))
        .collect();
    let gb = groebner_basis(&fm, &elems, opts)?;
    Ok(gb.polys())
}

/// The codimension of `V(I)`: number of variables minus the Krull dimension
/// of `S/I`, where the dimension is the size of a maximal subset `A` of the
/// variables that is independent modulo the lead-term ideal (no lead
/// monomial's support is contained in `A`).
///
/// For the unit ideal the quotient is zero and `nvars + 1` is returned as an
/// "empty even as a cone" sentinel; homogeneous ideals generated in positive
/// degrees never hit it.
pub fn codim(i: &Ideal) -> Result<usize, IdealOpsError> {
    let n = i.ring().nvars();
    let mut supports: Vec<u32> = Vec::new();
    for e in i.gb()?.elements() {
        let m = e.comps[0].lm();
        let mut mask = 0u32;
        for k in 0..n {
            if m.exp(k) > 0 {
                mask |= 1 << k;
            }
        }
        if mask == 0 {
            return Ok(n + 1);
        }
        if !supports.contains(&mask) {
            supports.push(mask);
        }
    }
    let full = (1u32 << n) - 1;
    let mut dim = 0usize;
    for a in 0..=full {
        let indep = supports.iter().all(|&s| s & !a != 0);
        if indep {
            dim = dim.max(a.count_ones() as usize);
        }
    }
    Ok(n - dim)
}

/// The Jacobian matrix of an ideal's generators: row `i` holds the partial
/// derivatives of generator `i` with respect to each variable.
pub fn jacobian(i: &Ideal) -> Vec<Vec<Poly>> {
    let ring = i.ring();
    i.gens()
        .iter()
        .map(|g| (0..ring.nvars()).map(|v| ring.poly_derivative(g, v)).collect())
        .collect()
}

/// Determinant of a small square matrix of polynomials, by Laplace expansion
/// along the first row.
fn poly_det(ring: &Ring, m: &[Vec<Poly>]) -> Poly {
    let k = m.len();
    if k == 0 {
        return ring.poly_const(1);
    }
    if k == 1 {
        return m[0][0].clone();
    }
    let mut det = ring.poly_zero();
    for col in 0..k {
        if m[0][col].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != col)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let cofactor = ring.poly_mul(&m[0][col], &poly_det(ring, &minor));
        det = if col % 2 == 0 {
            ring.poly_add(&det, &cofactor)
        } else {
            ring.poly_sub(&det, &cofactor)
        };
    }
    det
}

/// All `k×k` minors of a polynomial matrix (zero determinants skipped).
pub fn minors(ring: &Ring, mat: &[Vec<Poly>], k: usize) -> Vec<Poly> {
    let nrows = mat.len();
    let ncols = if nrows == 0 { 0 } else { mat[0].len() };
    if k == 0 {
        return vec![ring.poly_const(1)];
    }
    if k > nrows || k > ncols {
        return Vec::new();
    }
    let row_sets = subsets_of_size(nrows, k);
    let col_sets = subsets_of_size(ncols, k);
    let mut out = Vec::new();
    for rs in &row_sets {
        for cs in &col_sets {
            let sub: Vec<Vec<Poly>> = rs
                .iter()
                .map(|&r| cs.iter().map(|&c| mat[r][c].clone()).collect())
                .collect();
            let d = poly_det(ring, &sub);
            if !d.is_zero() {
                out.push(d);
            }
        }
    }
    out
}

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Result of a Jacobian-criterion smoothness check.
#[derive(Debug, Clone)]
pub struct SingularLocusCheck {
    /// The singular-locus ideal: `I` plus the `c×c` minors of the Jacobian,
    /// where `c` is the codimension of `V(I)`.
    pub ideal: Ideal,
    /// Codimension of the singular-locus ideal.
    pub codim: usize,
    /// Whether that codimension reaches the expected value.
    pub pass: bool,
}

/// Jacobian smoothness test: forms `I` plus the `c×c` minors of the Jacobian
/// matrix of the generators (`c` the codimension of `V(I)`), and passes when
/// the resulting locus has codimension at least `expected_codim`.
///
/// Asking for `expected_codim = nvars` certifies that the singular locus is
/// empty away from the cone point, i.e. projective smoothness.
pub fn singular_locus_check(
    i: &Ideal,
    expected_codim: usize,
) -> Result<SingularLocusCheck, IdealOpsError> {
    let c = codim(i)?;
    let mins = minors(i.ring(), &jacobian(i), c);
    let mut gens = i.gens().to_vec();
    gens.extend(mins);
    let sing = Ideal::new(i.ring().clone(), gens);
    let sc = codim(&sing)?;
    Ok(SingularLocusCheck {
        ideal: sing,
        codim: sc,
        pass: sc >= expected_codim,
    })
}
