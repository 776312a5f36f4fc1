//! Groebner engine for homogeneous ideals and submodules of graded free
//! modules, with syzygy extraction.
//!
//! Ideals are the rank-1 case of submodules of a graded [`FreeModule`]; the
//! module order is position-over-term (POT, smaller basis index wins)
//! refined by the ring's monomial order.  The engine core
//! ([`engine`]) is a Buchberger loop over module S-pairs with the
//! Gebauer-Moeller pair criteria; it runs in three modes:
//!
//! * plain Groebner basis of a list of generators;
//! * *tracked*: an auxiliary block records, for every reduction to zero,
//!   the combination of the tracked inputs that produced it — these
//!   auxiliary vectors generate the syzygy module (equivalently, the kernel
//!   of the map defined by the inputs, modulo an optional "untracked"
//!   submodule);
//! * *minimal generators*: candidate generators are offered in degree
//!   order, interleaved with S-pair processing, and kept only when they are
//!   not already in the submodule generated so far.
//!
//! Everything is homogeneous: inhomogeneous input is reported as an error,
//! never silently accepted.

pub mod engine;
pub mod geobucket;

use crate::linalg::Mat;
use crate::mpoly::{Monomial, Multidegree, Poly, Ring, Term};
use std::sync::OnceLock;
use thiserror::Error;

/// Errors from Groebner-engine entry points.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GbError {
    /// Operands belong to different rings.
    #[error("ring mismatch between operands")]
    RingMismatch,
    /// A module element does not match the free module's rank.
    #[error("free module rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    /// The engine is degree-by-degree and requires homogeneous input.
    #[error("inhomogeneous input: the engine requires homogeneous elements")]
    Inhomogeneous,
    /// An operation that requires a certified Groebner basis received an
    /// unverified one.
    #[error("operation requires a certified Groebner basis")]
    NotCertified,
}

/// S-pair selection strategy.  Both strategies process pairs in increasing
/// degree (exact for homogeneous input); they differ in tie-breaking, and
/// reduced Groebner bases must agree regardless.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Degree, then smallest lcm in the ring order (the classic "sugar"
    /// refinement collapses to this on homogeneous input).
    #[default]
    Sugar,
    /// Degree, then first-created pair.
    DegreeFifo,
}

/// Options for a Groebner computation.
#[derive(Debug, Clone, Default)]
pub struct GbOptions {
    pub strategy: Strategy,
    /// Skip S-pairs whose total weight exceeds the bound; the result is a
    /// Groebner basis *through* that degree and is marked uncertified.
    pub degree_bound: Option<i64>,
}

/// A graded free module `⊕_i S(−t_i)`, described by its generator degrees
/// `t_i` (the basis element `e_i` has degree `t_i`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeModule {
    ring: Ring,
    gen_degs: Vec<Multidegree>,
}

/// An element of a free module: one polynomial per basis element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleElement {
    pub comps: Vec<Poly>,
}

impl ModuleElement {
    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|p| p.is_zero())
    }
}

impl FreeModule {
    pub fn new(ring: Ring, gen_degs: Vec<Multidegree>) -> FreeModule {
        FreeModule { ring, gen_degs }
    }

    /// The ring itself as a rank-1 free module with generator in degree 0.
    pub fn rank1(ring: Ring) -> FreeModule {
        FreeModule::new(ring, vec![Multidegree::ZERO])
    }

    #[inline]
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.gen_degs.len()
    }

    #[inline]
    pub fn gen_degs(&self) -> &[Multidegree] {
        &self.gen_degs
    }

    #[inline]
    pub fn gen_deg(&self, i: usize) -> Multidegree {
        self.gen_degs[i]
    }

    /// The zero element.
    pub fn zero_elt(&self) -> ModuleElement {
        ModuleElement {
            comps: vec![Poly::zero(); self.rank()],
        }
    }

    /// The basis element `e_i`.
    pub fn basis_elt(&self, i: usize) -> ModuleElement {
        assert!(i < self.rank());
        let mut v = self.zero_elt();
        v.comps[i] = self.ring.poly_one();
        v
    }

    /// Wraps component polynomials as an element (length must match rank).
    pub fn elt_from_polys(&self, comps: Vec<Poly>) -> ModuleElement {
        assert_eq!(comps.len(), self.rank(), "component count mismatch");
        ModuleElement { comps }
    }

    /// Wraps a single polynomial as a rank-1 element.
    pub fn poly_elt(&self, p: Poly) -> ModuleElement {
        assert_eq!(self.rank(), 1, "poly_elt needs a rank-1 module");
        ModuleElement { comps: vec![p] }
    }

    /// POT leading term: the first nonzero component's leading term.
    pub fn lead(&self, v: &ModuleElement) -> Option<(usize, Term)> {
        v.comps
            .iter()
            .enumerate()
            .find(|(_, p)| !p.is_zero())
            .map(|(i, p)| (i, *p.lt().unwrap()))
    }

    /// Whether the element is homogeneous (all components homogeneous with
    /// one common total degree after twisting); zero counts as homogeneous.
    pub fn elt_is_homogeneous(&self, v: &ModuleElement) -> bool {
        v.is_zero() || self.elt_multidegree(v).is_some()
    }

    /// The multidegree of a nonzero homogeneous element, else `None`.
    pub fn elt_multidegree(&self, v: &ModuleElement) -> Option<Multidegree> {
        let mut deg = None;
        for (i, p) in v.comps.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let d = self.ring.poly_multidegree(p)?.add(self.gen_degs[i]);
            match deg {
                None => deg = Some(d),
                Some(existing) if existing != d => return None,
                _ => {}
            }
        }
        deg
    }

    pub fn elt_add(&self, a: &ModuleElement, b: &ModuleElement) -> ModuleElement {
        ModuleElement {
            comps: a
                .comps
                .iter()
                .zip(&b.comps)
                .map(|(x, y)| self.ring.poly_add(x, y))
                .collect(),
        }
    }

    pub fn elt_sub(&self, a: &ModuleElement, b: &ModuleElement) -> ModuleElement {
        ModuleElement {
            comps: a
                .comps
                .iter()
                .zip(&b.comps)
                .map(|(x, y)| self.ring.poly_sub(x, y))
                .collect(),
        }
    }

    pub fn elt_neg(&self, a: &ModuleElement) -> ModuleElement {
        ModuleElement {
            comps: a.comps.iter().map(|x| self.ring.poly_neg(x)).collect(),
        }
    }

    pub fn elt_scale(&self, c: u32, a: &ModuleElement) -> ModuleElement {
        ModuleElement {
            comps: a.comps.iter().map(|x| self.ring.poly_scale(c, x)).collect(),
        }
    }

    /// Multiplies by the term `c * m`.
    pub fn elt_mul_term(&self, a: &ModuleElement, c: u32, m: &Monomial) -> ModuleElement {
        ModuleElement {
            comps: a
                .comps
                .iter()
                .map(|x| self.ring.poly_mul_term(x, c, m))
                .collect(),
        }
    }

    /// Multiplies by a polynomial.
    pub fn elt_mul_poly(&self, a: &ModuleElement, p: &Poly) -> ModuleElement {
        ModuleElement {
            comps: a.comps.iter().map(|x| self.ring.poly_mul(x, p)).collect(),
        }
    }

    /// Basis of the degree-`d` piece of the free module, as (position,
    /// monomial) pairs: position ascending, monomials descending.
    pub fn piece_basis(&self, d: Multidegree) -> Vec<(usize, Monomial)> {
        let mut out = Vec::new();
        for (i, &t) in self.gen_degs.iter().enumerate() {
            for m in self.ring.monomials_of_multidegree(d.sub(t)) {
                out.push((i, m));
            }
        }
        out
    }

    /// Dimension of the degree-`d` piece.
    pub fn piece_dim(&self, d: Multidegree) -> usize {
        self.gen_degs
            .iter()
            .map(|&t| self.ring.piece_dim(d.sub(t)))
            .sum()
    }

    /// Dense coordinate vector of a homogeneous element of degree `d` with
    /// respect to [`FreeModule::piece_basis`].
    pub fn elt_to_vec(&self, v: &ModuleElement, basis: &[(usize, Monomial)]) -> Vec<u32> {
        use std::collections::HashMap;
        let index: HashMap<(usize, Monomial), usize> = basis
            .iter()
            .enumerate()
            .map(|(k, &(i, m))| ((i, m), k))
            .collect();
        let mut out = vec![0u32; basis.len()];
        for (i, p) in v.comps.iter().enumerate() {
            for t in &p.terms {
                let k = *index
                    .get(&(i, t.m))
                    .expect("element term outside the degree piece");
                out[k] = t.c;
            }
        }
        out
    }
}

/// A graded map of free modules given by the images of the source basis.
///
/// Column `j` is the image of `e_j` and must be homogeneous of degree
/// `source.gen_deg(j)` (or zero), so the map has degree 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleMap {
    pub source: FreeModule,
    pub target: FreeModule,
    pub cols: Vec<ModuleElement>,
}

impl ModuleMap {
    pub fn new(
        source: FreeModule,
        target: FreeModule,
        cols: Vec<ModuleElement>,
    ) -> Result<ModuleMap, GbError> {
        if source.ring() != target.ring() {
            return Err(GbError::RingMismatch);
        }
        if cols.len() != source.rank() {
            return Err(GbError::RankMismatch {
                expected: source.rank(),
                got: cols.len(),
            });
        }
        for (j, c) in cols.iter().enumerate() {
            if c.comps.len() != target.rank() {
                return Err(GbError::RankMismatch {
                    expected: target.rank(),
                    got: c.comps.len(),
                });
            }
            if !c.is_zero() && target.elt_multidegree(c) != Some(source.gen_deg(j)) {
                return Err(GbError::Inhomogeneous);
            }
        }
        Ok(ModuleMap {
            source,
            target,
            cols,
        })
    }

    /// Image of a source element: `Σ_j v_j · col_j`.
    pub fn apply(&self, v: &ModuleElement) -> ModuleElement {
        let mut out = self.target.zero_elt();
        for (j, p) in v.comps.iter().enumerate() {
            if !p.is_zero() {
                out = self.target.elt_add(&out, &self.target.elt_mul_poly(&self.cols[j], p));
            }
        }
        out
    }

    /// Matrix entry at `(row, col)`: the `row` component of column `col`.
    pub fn entry(&self, row: usize, col: usize) -> &Poly {
        &self.cols[col].comps[row]
    }

    /// Whether every column is zero.
    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_zero())
    }

    /// Dense matrix of the induced linear map on degree-`d` pieces; rows are
    /// indexed by the target piece basis, columns by the source piece basis.
    pub fn piece_matrix(&self, d: Multidegree) -> Mat {
        let src = self.source.piece_basis(d);
        let tgt = self.target.piece_basis(d);
        let mut cols_dense: Vec<Vec<u32>> = Vec::with_capacity(src.len());
        for &(j, m) in &src {
            let img = self.target.elt_mul_term(&self.cols[j], 1, &m);
            cols_dense.push(self.target.elt_to_vec(&img, &tgt));
        }
        // Assemble column-major data into a row-major matrix.
        let mut mat = Mat::zero(tgt.len(), src.len());
        for (c, colv) in cols_dense.iter().enumerate() {
            for (r, &x) in colv.iter().enumerate() {
                if x != 0 {
                    mat.set(r, c, x);
                }
            }
        }
        mat
    }
}

/// A Groebner basis of a submodule of a graded free module (rank 1 for
/// ideals), with its Buchberger certificate.
///
/// Invariants for certified bases produced by [`groebner_basis`]: reduced
/// (no lead term of one generator divides any term of another), monic lead
/// coefficients, and every S-pair normal form is zero.  The `certified`
/// flag records whether the S-pair criterion has actually been checked;
/// [`GroebnerBasis::from_elements_unchecked`] builds an *unverified* basis
/// for plain division.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    fm: FreeModule,
    elements: Vec<ModuleElement>,
    certified: bool,
}

impl GroebnerBasis {
    /// Computes the reduced Groebner basis of the submodule generated by
    /// `gens`.
    pub fn compute(
        fm: &FreeModule,
        gens: &[ModuleElement],
        opts: &GbOptions,
    ) -> Result<GroebnerBasis, GbError> {
        let out = engine::run(fm, gens, &[], false, engine::Mode::Plain, opts)?;
        let elements = engine::interreduce(fm, out.basis);
        Ok(GroebnerBasis {
            fm: fm.clone(),
            elements,
            certified: out.complete,
        })
    }

    /// Wraps caller-supplied elements as a basis *without* S-pair
    /// verification (`certified = false`).  Lead coefficients are
    /// normalized to 1.  Intended for division against a fixed set of
    /// reducers.
    pub fn from_elements_unchecked(fm: &FreeModule, elements: Vec<ModuleElement>) -> GroebnerBasis {
        let f = fm.ring().field();
        let elements = elements
            .into_iter()
            .filter(|e| !e.is_zero())
            .map(|e| {
                let (_, lt) = fm.lead(&e).unwrap();
                fm.elt_scale(f.inv(lt.c), &e)
            })
            .collect();
        GroebnerBasis {
            fm: fm.clone(),
            elements,
            certified: false,
        }
    }

    #[inline]
    pub fn fm(&self) -> &FreeModule {
        &self.fm
    }

    #[inline]
    pub fn elements(&self) -> &[ModuleElement] {
        &self.elements
    }

    #[inline]
    pub fn certified(&self) -> bool {
        self.certified
    }

    /// For rank-1 bases: the elements as plain polynomials.
    pub fn polys(&self) -> Vec<Poly> {
        assert_eq!(self.fm.rank(), 1, "polys() needs a rank-1 basis");
        self.elements.iter().map(|e| e.comps[0].clone()).collect()
    }

    /// Normal form: full division of `v` by the basis.  No term of the
    /// result is divisible by any lead term of the basis, and
    /// `v − result` lies in the span.
    pub fn normal_form(&self, v: &ModuleElement) -> Result<ModuleElement, GbError> {
        if v.comps.len() != self.fm.rank() {
            return Err(GbError::RankMismatch {
                expected: self.fm.rank(),
                got: v.comps.len(),
            });
        }
        Ok(engine::normal_form(&self.fm, &self.elements, v))
    }

    /// Rank-1 convenience: normal form of a polynomial.
    pub fn normal_form_poly(&self, f: &Poly) -> Poly {
        assert_eq!(self.fm.rank(), 1, "normal_form_poly needs a rank-1 basis");
        engine::normal_form(&self.fm, &self.elements, &self.fm.poly_elt(f.clone()))
            .comps
            .swap_remove(0)
    }

    /// Membership test via normal form (meaningful when certified).
    pub fn contains(&self, v: &ModuleElement) -> Result<bool, GbError> {
        if !self.certified {
            return Err(GbError::NotCertified);
        }
        Ok(self.normal_form(v)?.is_zero())
    }

    /// Honest re-verification of the Buchberger criterion: reduces *every*
    /// S-pair, with no pair-elimination criteria, and checks the reductions
    /// hit zero.  Used by tests; quadratic in basis size.
    pub fn verify_certificate(&self) -> bool {
        let ring = self.fm.ring();
        let f = ring.field();
        for i in 0..self.elements.len() {
            for j in (i + 1)..self.elements.len() {
                let (pi, ti) = self.fm.lead(&self.elements[i]).unwrap();
                let (pj, tj) = self.fm.lead(&self.elements[j]).unwrap();
                if pi != pj {
                    continue;
                }
                let l = ti.m.lcm(&tj.m);
                let a = self.fm.elt_mul_term(
                    &self.elements[i],
                    f.inv(ti.c),
                    &l.div(&ti.m),
                );
                let b = self.fm.elt_mul_term(
                    &self.elements[j],
                    f.inv(tj.c),
                    &l.div(&tj.m),
                );
                let s = self.fm.elt_sub(&a, &b);
                if !engine::normal_form(&self.fm, &self.elements, &s).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Number of degree-`d` elements of the submodule, counted as monomials
    /// of the lead-term module (standard-monomial combinatorics).
    pub fn piece_dim(&self, d: Multidegree) -> usize {
        let mut leads: Vec<Vec<Monomial>> = vec![Vec::new(); self.fm.rank()];
        for e in &self.elements {
            let (p, t) = self.fm.lead(e).expect("basis elements are nonzero");
            leads[p].push(t.m);
        }
        self.fm
            .piece_basis(d)
            .iter()
            .filter(|(pos, m)| leads[*pos].iter().any(|lm| lm.divides(m)))
            .count()
    }
}

/// Computes the reduced Groebner basis of the submodule generated by
/// homogeneous elements (for ideals, wrap polynomials in a rank-1 module).
pub fn groebner_basis(
    fm: &FreeModule,
    gens: &[ModuleElement],
    opts: &GbOptions,
) -> Result<GroebnerBasis, GbError> {
    GroebnerBasis::compute(fm, gens, opts)
}

/// Generators of the syzygy module of a map's columns: the result's columns
/// generate `ker(M)` and satisfy `M · result = 0` exactly.
pub fn syzygy_module(map: &ModuleMap, opts: &GbOptions) -> Result<ModuleMap, GbError> {
    let out = engine::run(
        &map.target,
        &map.cols,
        &[],
        false,
        engine::Mode::Tracked,
        opts,
    )?;
    let aux_fm = FreeModule::new(map.target.ring().clone(), source_degrees(map));
    let syz_degs: Vec<Multidegree> = out
        .syzygies
        .iter()
        .map(|s| {
            aux_fm
                .elt_multidegree(s)
                .expect("syzygies of homogeneous input are homogeneous")
        })
        .collect();
    let syz_source = FreeModule::new(map.target.ring().clone(), syz_degs);
    ModuleMap::new(syz_source, aux_fm, out.syzygies)
}

fn source_degrees(map: &ModuleMap) -> Vec<Multidegree> {
    map.source.gen_degs().to_vec()
}

/// Generators of `{a ∈ S^s : Σ a_i·tracked_i ∈ ⟨untracked⟩}` — the kernel
/// of the map to `F/⟨untracked⟩` defined by the tracked columns.
///
/// `untracked_certified` marks the untracked family as a known Groebner
/// basis (e.g. a quotient-ring block replicated per position), letting the
/// engine skip untracked-untracked S-pairs.
///
/// Returns the kernel generators together with their ambient free module
/// (rank = number of tracked columns).
pub fn kernel_generators(
    fm: &FreeModule,
    tracked: &[ModuleElement],
    untracked: &[ModuleElement],
    untracked_certified: bool,
    opts: &GbOptions,
) -> Result<(FreeModule, Vec<ModuleElement>), GbError> {
    let out = engine::run(
        fm,
        tracked,
        untracked,
        untracked_certified,
        engine::Mode::Tracked,
        opts,
    )?;
    let degs: Vec<Multidegree> = tracked
        .iter()
        .map(|t| {
            if t.is_zero() {
                Multidegree::ZERO
            } else {
                fm.elt_multidegree(t).expect("validated homogeneous")
            }
        })
        .collect();
    let aux_fm = FreeModule::new(fm.ring().clone(), degs);
    Ok((aux_fm, out.syzygies))
}

/// Selects a minimal generating subset of homogeneous `gens` (indices into
/// the input), and returns the Groebner basis of the full submodule as a
/// by-product.
pub fn minimal_generator_indices(
    fm: &FreeModule,
    gens: &[ModuleElement],
    opts: &GbOptions,
) -> Result<(Vec<usize>, GroebnerBasis), GbError> {
    let out = engine::run(fm, gens, &[], false, engine::Mode::MinGens, opts)?;
    let elements = engine::interreduce(fm, out.basis);
    Ok((
        out.kept_inputs,
        GroebnerBasis {
            fm: fm.clone(),
            elements,
            certified: out.complete,
        },
    ))
}

/// A homogeneous ideal with a lazily computed, cached reduced Groebner
/// basis.  Completed bases are immutable; distinct ideals may be processed
/// concurrently without coordination.
#[derive(Debug, Clone)]
pub struct Ideal {
    ring: Ring,
    gens: Vec<Poly>,
    gb_cell: OnceLock<GroebnerBasis>,
}

impl Ideal {
    pub fn new(ring: Ring, gens: Vec<Poly>) -> Ideal {
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ideal {
            ring,
            gens,
            gb_cell: OnceLock::new(),
        }
    }

    pub fn zero(ring: Ring) -> Ideal {
        Ideal::new(ring, Vec::new())
    }

    #[inline]
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    #[inline]
    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    /// The cached reduced Groebner basis.
    pub fn gb(&self) -> Result<&GroebnerBasis, GbError> {
        if let Some(g) = self.gb_cell.get() {
            return Ok(g);
        }
        let fm = FreeModule::rank1(self.ring.clone());
        let gens: Vec<ModuleElement> =
            self.gens.iter().map(|g| fm.poly_elt(g.clone())).collect();
        let gb = GroebnerBasis::compute(&fm, &gens, &GbOptions::default())?;
        let _ = self.gb_cell.set(gb);
        Ok(self.gb_cell.get().unwrap())
    }

    /// Reduced Groebner basis as polynomials.
    pub fn gb_polys(&self) -> Result<Vec<Poly>, GbError> {
        Ok(self.gb()?.polys())
    }

    /// Normal form of a polynomial modulo the ideal.
    pub fn nf(&self, f: &Poly) -> Result<Poly, GbError> {
        Ok(self.gb()?.normal_form_poly(f))
    }

    /// Ideal membership.
    pub fn contains(&self, f: &Poly) -> Result<bool, GbError> {
        Ok(self.nf(f)?.is_zero())
    }

    /// Equality as ideals (reduced Groebner bases are canonical).
    pub fn same_ideal(&self, other: &Ideal) -> Result<bool, GbError> {
        if self.ring != other.ring {
            return Err(GbError::RingMismatch);
        }
        Ok(self.gb()?.elements() == other.gb()?.elements())
    }

    /// `dim_k I_d` (monomials of the lead ideal in degree `d`).
    pub fn piece_dim(&self, d: Multidegree) -> Result<usize, GbError> {
        Ok(self.gb()?.piece_dim(d))
    }

    /// `dim_k (S/I)_d`.
    pub fn quotient_piece_dim(&self, d: Multidegree) -> Result<usize, GbError> {
        Ok(self.ring.piece_dim(d) - self.gb()?.piece_dim(d))
    }

    /// Sum of ideals.
    pub fn plus(&self, other: &Ideal) -> Result<Ideal, GbError> {
        if self.ring != other.ring {
            return Err(GbError::RingMismatch);
        }
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ok(Ideal::new(self.ring.clone(), gens))
    }

    /// Product of ideals (pairwise generator products).
    pub fn times(&self, other: &Ideal) -> Result<Ideal, GbError> {
        if self.ring != other.ring {
            return Err(GbError::RingMismatch);
        }
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(self.ring.poly_mul(a, b));
            }
        }
        Ok(Ideal::new(self.ring.clone(), gens))
    }

    /// Ideal power `I^k` (k ≥ 1).
    pub fn power(&self, k: u32) -> Result<Ideal, GbError> {
        assert!(k >= 1, "power needs k >= 1");
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.times(self)?;
        }
        Ok(acc)
    }

    /// A minimal homogeneous generating set with degrees.
    pub fn minimal_generators(&self) -> Result<Vec<(Poly, Multidegree)>, GbError> {
        let fm = FreeModule::rank1(self.ring.clone());
        let mut gens: Vec<(Multidegree, usize)> = self
            .gens
            .iter()
            .enumerate()
            .map(|(i, g)| {
                let d = self
                    .ring
                    .poly_multidegree(g)
                    .ok_or(GbError::Inhomogeneous)?;
                Ok((d, i))
            })
            .collect::<Result<_, GbError>>()?;
        // Offer candidates in increasing total weight (ties by input order),
        // as the mingens engine mode requires.
        gens.sort_by_key(|&(d, i)| (d.totweight(), i));
        let ordered: Vec<ModuleElement> = gens
            .iter()
            .map(|&(_, i)| fm.poly_elt(self.gens[i].clone()))
            .collect();
        let (kept, _) = minimal_generator_indices(&fm, &ordered, &GbOptions::default())?;
        Ok(kept
            .into_iter()
            .map(|k| {
                let (d, i) = gens[k];
                (self.gens[i].clone(), d)
            })
            .collect())
    }
}

#[cfg(test)]
mod tests;
