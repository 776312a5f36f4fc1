//! Graded `Hom` and `Ext` of finitely presented modules, sheaf cohomology
//! on projective space via graded local duality, and canonical modules of
//! arithmetically Cohen–Macaulay subschemes.
//!
//! Sheaf cohomology is computed exclusively through duality: for a graded
//! module `M` over the coordinate ring of `P^n` (so `n + 1` variables),
//!
//! * `h^i(F̃(d)) = dim Ext^{n−i}(M, S(−n−1))_{−d}` for `i ≥ 1`, and
//! * `h^0(F̃(d)) = dim M_d − dim Ext^{n+1}(M, S(−n−1))_{−d}
//!   + dim Ext^n(M, S(−n−1))_{−d}`,
//!
//! where the last two terms correct for the disagreement between a module
//! and the sections of its sheaf (the degree-`d` pieces of the local
//! cohomology at the irrelevant ideal, seen through duality).  No Čech
//! complexes are involved, so everything reduces to free resolutions and
//! kernel computations over the polynomial ring.

use crate::gb::{
    groebner_basis, kernel_generators, FreeModule, GbError, GbOptions, Ideal, ModuleElement,
};
use crate::mpoly::{Multidegree, Poly, Ring};
use crate::resolve::{free_resolution, GradedFreeComplex, ModulePresentation, ResolveError};

use thiserror::Error;


/// Errors from the cohomology layer.
#[derive(Debug, Error)]
pub enum CohomologyError {
    #[error(transparent)]
    Gb(#[from] GbError),
    #[error(transparent)]
    Resolve(#[from] ResolveError),
    /// The two modules live over different rings.
    #[error("modules live over different rings")]
    RingMismatch,
    /// Sheaf cohomology index out of range for the ambient space.
    #[error("cohomology index {i} out of range for P^{n}")]
    BadIndex { i: usize, n: usize },
    /// Sheaf cohomology needs the standard-graded coordinate ring of `P^n`.
    #[error("sheaf cohomology requires a standard-graded ring")]
    NotStandardGraded,
    /// A subquotient's relation submodule must sit inside its generator
    /// submodule.
    #[error("subquotient relations are not contained in the generator submodule")]
    RelationsNotContained,
    /// The module is not Cohen–Macaulay of the stated codimension: its
    /// minimal free resolution has the wrong length.
    #[error("expected a free resolution of length {expected}, found {got}")]
    NotCohenMacaulay { expected: usize, got: usize },
}

/// A graded subquotient `im(gens) / im(rels)` of a free module, with
/// `im(rels) ⊆ im(gens)`.
///
/// This is the raw shape in which kernels of maps between presented modules
/// arrive; [`Subquotient::presentation`] converts it to a minimal
/// presentation by one syzygy computation and a prune.
#[derive(Debug, Clone)]
pub struct Subquotient {
    ambient: FreeModule,
    gens: Vec<ModuleElement>,
    rels: Vec<ModuleElement>,
    rels_are_gb: bool,
}

impl Subquotient {
    /// Builds a subquotient, checking that every relation lies in the
    /// submodule spanned by the generators.
    pub fn new(
        ambient: FreeModule,
        gens: Vec<ModuleElement>,
        rels: Vec<ModuleElement>,
        opts: &GbOptions,
    ) -> Result<Subquotient, CohomologyError> {
        let sq = Subquotient::unchecked(ambient, gens, rels);
        if !sq.rels.is_empty() {
            let gens_gb = groebner_basis(&sq.ambient, &sq.gens, opts)?;
            for r in &sq.rels {
                if !gens_gb.normal_form(r)?.is_zero() {
                    return Err(CohomologyError::RelationsNotContained);
                }
            }
        }
        Ok(sq)
    }

    /// Builds a subquotient whose containment invariant is guaranteed by
    /// construction (kernels of chain maps, images of complexes).
    fn unchecked(ambient: FreeModule, gens: Vec<ModuleElement>, rels: Vec<ModuleElement>) -> Subquotient {
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        let rels = rels.into_iter().filter(|r| !r.is_zero()).collect();
        Subquotient {
            ambient,
            gens,
            rels,
            rels_are_gb: false,
        }
    }

    /// A minimal presentation of the subquotient: one generator per column
    /// of `gens`, relations the syzygies among them modulo `im(rels)`,
    /// then pruned.
    pub fn presentation(&self, opts: &GbOptions) -> Result<ModulePresentation, CohomologyError> {
        let ring = self.ambient.ring().clone();
        if self.gens.is_empty() {
            return Ok(zero_module(&ring));
        }
        let rels_gb;
        let untracked: &[ModuleElement] = if self.rels_are_gb {
            &self.rels
        } else {
            rels_gb = groebner_basis(&self.ambient, &self.rels, opts)?;
            rels_gb.elements()
        };
        let (src, syz) =
            kernel_generators(&self.ambient, &self.gens, untracked, true, opts)?;
        let pres = ModulePresentation::new(src, syz)?;
        minimal_presentation(&pres, opts)
    }
}

/// The zero module, presented by an empty free module.
pub fn zero_module(ring: &Ring) -> ModulePresentation {
    ModulePresentation::free(FreeModule::new(ring.clone(), Vec::new()))
}

/// Rewrites a presentation as a minimal one: unit entries of the relation
/// matrix are pruned away (each unit lets one generator be expressed through
/// the others), and the surviving relation columns are cut down to a minimal
/// generating set of the relation module.
pub fn minimal_presentation(
    m: &ModulePresentation,
    opts: &GbOptions,
) -> Result<ModulePresentation, CohomologyError> {
    let ring = m.ring().clone();
    let field = ring.field();
    let mut row_degs: Vec<Multidegree> = m.ambient().gen_degs().to_vec();
    // Column-major copy of the relation matrix.
    let mut cols: Vec<Vec<Poly>> = m.relations().iter().map(|r| r.comps.clone()).collect();

    loop {
        // A unit entry is a single-term constant polynomial.
        let mut unit = None;
        'scan: for (j, col) in cols.iter().enumerate() {
            for (i, p) in col.iter().enumerate() {
                if p.len() == 1 && p.lm().is_one() {
                    unit = Some((i, j));
                    break 'scan;
                }
            }
        }
        let Some((i, j)) = unit else { break };
        let c_inv = field.inv(cols[j][i].lc());
        let pivot = cols[j].clone();
        for (j2, col) in cols.iter_mut().enumerate() {
            if j2 == j || col[i].is_zero() {
                continue;
            }
            let factor = ring.poly_scale(c_inv, &col[i]);
            for (k, entry) in col.iter_mut().enumerate() {
                let delta = ring.poly_mul(&factor, &pivot[k]);
                *entry = ring.poly_sub(entry, &delta);
            }
        }
        cols.remove(j);
        for col in &mut cols {
            col.remove(i);
        }
        row_degs.remove(i);
    }

    let ambient = FreeModule::new(ring, row_degs);
    let mut relations: Vec<ModuleElement> = cols
        .into_iter()
        .map(|c| ambient.elt_from_polys(c))
        .filter(|r| !r.is_zero())
        .collect();
    if relations.len() > 1 {
        let (kept, _) = crate::gb::minimal_generator_indices(&ambient, &relations, opts)?;
        relations = kept.into_iter().map(|k| relations[k].clone()).collect();
    }
    Ok(ModulePresentation::new(ambient, relations)?)
}

/// The graded module `Hom(M, N)`, as a minimal presentation.
///
/// With `M = F_0 / im(d_1)`, a homomorphism is an element of
/// `Hom(F_0, N) = ⊕_i N(a_i)` that composes to zero with `d_1`; both the
/// membership condition and the identification of `N` as `G_0 / im(e_1)`
/// are handled by one kernel computation modulo an untracked block.
pub fn hom_module(
    m: &ModulePresentation,
    n: &ModulePresentation,
    opts: &GbOptions,
) -> Result<ModulePresentation, CohomologyError> {
    if m.ring() != n.ring() {
        return Err(CohomologyError::RingMismatch);
    }
    let ring = m.ring().clone();
    let m = minimal_presentation(m, opts)?;

    let f0 = m.ambient();
    let g0 = n.ambient();
    let g0rank = g0.rank();
    if f0.rank() == 0 || g0rank == 0 {
        return Ok(zero_module(&ring));
    }

    // H0 = Hom(F0, N)'s ambient ⊕_i G0(a_i): basis (i, l) at index
    // i·rank(G0) + l, of degree c_l − a_i.
    let h0_degs: Vec<Multidegree> = f0
        .gen_degs()
        .iter()
        .flat_map(|&a| g0.gen_degs().iter().map(move |&c| c.sub(a)))
        .collect();
    let h0 = FreeModule::new(ring.clone(), h0_degs);

    let n_rels_gb = n.relations_gb()?;

    // Candidate generators of Hom(M, N) inside H0: kernel of the map to
    // H1 = ⊕_j G0(b_j) induced by composing with d_1, taken modulo the
    // block-diagonal copy of N's relations.
    let gens: Vec<ModuleElement> = if m.relations().is_empty() {
        (0..h0.rank()).map(|k| h0.basis_elt(k)).collect()
    } else {
        let b_degs: Vec<Multidegree> = m
            .relations()
            .iter()
            .map(|r| f0.elt_multidegree(r).expect("validated homogeneous"))
            .collect();
        let h1_degs: Vec<Multidegree> = b_degs
            .iter()
            .flat_map(|&b| g0.gen_degs().iter().map(move |&c| c.sub(b)))
            .collect();
        let h1 = FreeModule::new(ring.clone(), h1_degs);

        // T(basis (i, l)) has component (j, l) equal to the i-th coordinate
        // of relation column j.
        let tracked: Vec<ModuleElement> = (0..f0.rank())
            .flat_map(|i| {
                let ring = &ring;
                let h1 = &h1;
                let rels = m.relations();
                (0..g0rank).map(move |l| {
                    let mut comps = vec![ring.poly_zero(); h1.rank()];
                    for (j, r) in rels.iter().enumerate() {
                        comps[j * g0rank + l] = r.comps[i].clone();
                    }
                    h1.elt_from_polys(comps)
                })
            })
            .collect();

        let untracked: Vec<ModuleElement> = (0..m.relations().len())
            .flat_map(|j| {
                n_rels_gb
                    .elements()
                    .iter()
                    .map(move |e| (j, e))
            })
            .map(|(j, e)| {
                let mut comps = vec![ring.poly_zero(); h1.rank()];
                for l in 0..g0rank {
                    comps[j * g0rank + l] = e.comps[l].clone();
                }
                h1.elt_from_polys(comps)
            })
            .collect();

        let (_, syz) = kernel_generators(&h1, &tracked, &untracked, true, opts)?;
        syz
    };

    // Relations: the block-diagonal copy of N's relations inside H0 (its
    // Gröbner basis stays one block at a time, hence stays a basis).
    let rels: Vec<ModuleElement> = (0..f0.rank())
        .flat_map(|i| n_rels_gb.elements().iter().map(move |e| (i, e)))
        .map(|(i, e)| {
            let mut comps = vec![ring.poly_zero(); h0.rank()];
            for l in 0..g0rank {
                comps[i * g0rank + l] = e.comps[l].clone();
            }
            h0.elt_from_polys(comps)
        })
        .collect();

    let mut sq = Subquotient::unchecked(h0, gens, rels);
    sq.rels_are_gb = true;
    sq.presentation(opts)
}

/// `Ext^i(M, S(twist))`, via a minimal free resolution of `M`: dualize into
/// `S(twist)` (transpose the maps) and take homology at position `i`.
pub fn ext_module(
    i: usize,
    m: &ModulePresentation,
    twist: Multidegree,
    opts: &GbOptions,
) -> Result<ModulePresentation, CohomologyError> {
    let pres = minimal_presentation(m, opts)?;
    let res = free_resolution(&pres, true, opts)?;
    if i > res.len() {
        return Ok(zero_module(m.ring()));
    }
    dual_complex_homology(&res, i, twist, opts)
}

/// Degree of the dual generator: a generator of degree `a` in `F` gives a
/// generator of `Hom(F, S(twist))` in degree `−twist − a`.
fn dual_deg(twist: Multidegree, a: Multidegree) -> Multidegree {
    Multidegree::ZERO.sub(twist).sub(a)
}

/// Homology at position `i` of the dual `Hom(F_•, S(twist))` of a free
/// complex: `ker(d_{i+1}^T) / im(d_i^T)`.
fn dual_complex_homology(
    res: &GradedFreeComplex,
    i: usize,
    twist: Multidegree,
    opts: &GbOptions,
) -> Result<ModulePresentation, CohomologyError> {
    let f_i = res.module(i);
    let ring = f_i.ring().clone();
    let d_i = FreeModule::new(
        ring.clone(),
        f_i.gen_degs().iter().map(|&a| dual_deg(twist, a)).collect(),
    );

    // Kernel of the transposed outgoing map d_{i+1}^T: D_i → D_{i+1}.
    let gens: Vec<ModuleElement> = if i == res.len() {
        (0..d_i.rank())
            .map(|k| d_i.basis_elt(k))
            .collect()
    } else {
        let next = res.map(i + 1);
        let f_next = res.module(i + 1);
        let d_next = FreeModule::new(
            ring.clone(),
            f_next
                .gen_degs()
                .iter()
                .map(|&a| dual_deg(twist, a))
                .collect(),
        );
        let tracked: Vec<ModuleElement> = (0..d_i.rank())
            .map(|r| {
                let comps: Vec<Poly> = (0..d_next.rank())
                    .map(|c| next.entry(r, c).clone())
                    .collect();
                d_next.elt_from_polys(comps)
            })
            .collect();
        if d_next.rank() == 0 {
            (0..d_i.rank())
                .map(|k| d_i.basis_elt(k))
                .collect()
        } else {
            let (_, syz) = kernel_generators(&d_next, &tracked, &[], false, opts)?;
            syz
        }
    };

    // Image of the transposed incoming map d_i^T: D_{i−1} → D_i.
    let rels: Vec<ModuleElement> = if i == 0 {
        Vec::new()
    } else {
        let prev = res.map(i);
        let f_prev = res.module(i - 1);
        (0..f_prev.rank())
            .map(|r| {
                let comps: Vec<Poly> = (0..d_i.rank())
                    .map(|c| prev.entry(r, c).clone())
                    .collect();
                d_i.elt_from_polys(comps)
            })
            .collect()
    };

    Subquotient::unchecked(d_i, gens, rels).presentation(opts)
}

/// A module over the coordinate ring of `P^n` together with the Ext modules
/// against `S(−n−1)` that graded local duality turns into sheaf cohomology.
///
/// Building the table once makes every twist `h^i(F̃(d))` a cheap graded
/// dimension count, so whole cohomology grids cost one resolution.
pub struct SheafModel {
    pres: ModulePresentation,
    n: usize,
    exts: Vec<ModulePresentation>,
    /// Largest sheaf-cohomology index this table supports; smaller tables
    /// skip the homology computations their `h^i` never reads.
    i_max: usize,
}

impl SheafModel {
    /// Resolves the module and dualizes; the ring must be standard graded
    /// with `n + 1` variables for `P^n`.
    pub fn new(m: &ModulePresentation, opts: &GbOptions) -> Result<SheafModel, CohomologyError> {
        SheafModel::new_through(m, usize::MAX, opts)
    }

    /// Like [`SheafModel::new`], but supporting only `h^i` for `i ≤ i_max`.
    ///
    /// `h^i` with `i ≥ 1` reads the single Ext module of index `n − i`, so a
    /// table for low cohomology can skip the expensive homology computations
    /// at the low Ext indices entirely; `h^0` always needs indices `n` and
    /// `n + 1`.  Asking a clipped table for a higher `h^i` fails with
    /// [`CohomologyError::BadIndex`].
    pub fn new_through(
        m: &ModulePresentation,
        i_max: usize,
        opts: &GbOptions,
    ) -> Result<SheafModel, CohomologyError> {
        let ring = m.ring().clone();
        let standard = ring.grading_rank() == 1
            && (0..ring.nvars()).all(|k| ring.var_degree(k) == Multidegree(1, 0));
        if !standard {
            return Err(CohomologyError::NotStandardGraded);
        }
        let n = ring.nvars() - 1;
        let i_max = i_max.min(n);
        let twist = Multidegree(-(ring.nvars() as i64), 0);

        let pres = minimal_presentation(m, opts)?;
        let res = free_resolution(&pres, true, opts)?;
        let exts = (0..=ring.nvars())
            .map(|k| {
                if k > res.len() || k < n - i_max {
                    Ok(zero_module(&ring))
                } else {
                    dual_complex_homology(&res, k, twist, opts)
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SheafModel { pres, n, exts, i_max })
    }

    /// The module whose sheaf is being measured (as minimally presented).
    pub fn module(&self) -> &ModulePresentation {
        &self.pres
    }

    /// Dimension of the ambient projective space.
    pub fn space_dim(&self) -> usize {
        self.n
    }

    /// `Ext^k(M, S(−n−1))`, as computed for the duality table.
    pub fn ext(&self, k: usize) -> &ModulePresentation {
        &self.exts[k]
    }

    /// `h^i(F̃(d))` for the sheaf `F̃` associated to the module.
    pub fn h(&self, i: usize, d: i64) -> Result<usize, CohomologyError> {
        if i > self.n || i > self.i_max {
            return Err(CohomologyError::BadIndex { i, n: self.n });
        }
        let at = Multidegree(-d, 0);
        if i >= 1 {
            return Ok(self.exts[self.n - i].hilbert_function(at)?);
        }
        let sections = self.pres.hilbert_function(Multidegree(d, 0))?;
        let h0m = self.exts[self.n + 1].hilbert_function(at)?;
        let h1m = self.exts[self.n].hilbert_function(at)?;
        Ok(sections - h0m + h1m)
    }

    /// `Σ_i (−1)^i h^i(F̃(d))`, which must agree with the Hilbert
    /// polynomial of the module at `d`.
    pub fn euler_characteristic(&self, d: i64) -> Result<i64, CohomologyError> {
        let mut chi = 0i64;
        for i in 0..=self.n {
            let h = self.h(i, d)? as i64;
            chi += if i % 2 == 0 { h } else { -h };
        }
        Ok(chi)
    }
}

/// One-shot convenience for a single `h^i(F̃(d))`.
pub fn sheaf_cohomology_dim(
    m: &ModulePresentation,
    i: usize,
    d: i64,
    opts: &GbOptions,
) -> Result<usize, CohomologyError> {
    SheafModel::new(m, opts)?.h(i, d)
}

/// The canonical module `Ext^c(S/I, S(−n−1))` of an arithmetically
/// Cohen–Macaulay subscheme of codimension `c` in `P^n`, together with its
/// minimal generator degrees (sorted).
///
/// Fails with [`CohomologyError::NotCohenMacaulay`] when the minimal free
/// resolution of `S/I` does not have length exactly `c`.
pub fn canonical_module(
    ideal: &Ideal,
    c: usize,
    opts: &GbOptions,
) -> Result<(ModulePresentation, Vec<Multidegree>), CohomologyError> {
    let m = ModulePresentation::quotient_ring(ideal);
    let res = free_resolution(&m, true, opts)?;
    canonical_module_from(&res, c, opts)
}

/// [`canonical_module`] from an already computed minimal free resolution of
/// `S/I`: only the last map needs dualizing, so reusing a resolution makes
/// this cheap.
pub fn canonical_module_from(
    res: &GradedFreeComplex,
    c: usize,
    opts: &GbOptions,
) -> Result<(ModulePresentation, Vec<Multidegree>), CohomologyError> {
    let ring = res.module(0).ring().clone();
    if res.len() != c {
        return Err(CohomologyError::NotCohenMacaulay {
            expected: c,
            got: res.len(),
        });
    }
    let twist = Multidegree(-(ring.nvars() as i64), 0);
    let canonical = dual_complex_homology(res, c, twist, opts)?;
    let mut degs = canonical.ambient().gen_degs().to_vec();
    degs.sort_by_key(|d| (d.totweight(), d.0));
    Ok((canonical, degs))
}
