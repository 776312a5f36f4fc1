//! Minimal graded free resolutions, Betti tables, Hilbert
//! functions/series/polynomials, and the scheme invariants (dimension,
//! degree, arithmetic genus) read off from them.
//!
//! A module is given by a [`ModulePresentation`] `M = F / im(relations)`.
//! Resolutions are built level by level: select a minimal homogeneous
//! generating set of the current relation module (degree-synchronized
//! candidate offering inside the Groebner engine), then compute the
//! syzygies of the chosen generators with the tracked engine; those
//! syzygies are the next level's relations.  By the graded Nakayama lemma
//! the chosen generators are minimal exactly when no map entry is a unit,
//! so this produces the minimal resolution directly, without striking unit
//! entries afterwards.

use crate::gb::{
    groebner_basis, kernel_generators, minimal_generator_indices, FreeModule, GbError, GbOptions,
    GroebnerBasis, Ideal, ModuleElement, ModuleMap,
};
use crate::mpoly::{Multidegree, Ring};
use num::rational::Ratio;
use num::traits::Zero;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ResolveError {
    #[error(transparent)]
    Gb(#[from] GbError),
    /// The operation needs a minimal complex.
    #[error("complex is not minimal: map {map} has a unit entry")]
    NotMinimal { map: usize },
    /// Hilbert polynomials need a standard-graded ring.
    #[error("operation requires a standard grading (all variables of degree 1)")]
    NotStandardGraded,
    /// The caller asserted a curve but the scheme has another dimension.
    #[error("expected a one-dimensional projective scheme, got dimension {dim}")]
    NotACurve { dim: i64 },
    /// More levels than the Hilbert syzygy theorem allows: the input was
    /// not a valid presentation.
    #[error("resolution exceeded the variable count; presentation is inconsistent")]
    TooLong,
}

/// A finitely presented graded module `M = F / im(relations)`.
#[derive(Debug, Clone)]
pub struct ModulePresentation {
    ambient: FreeModule,
    relations: Vec<ModuleElement>,
    gb: OnceLock<GroebnerBasis>,
}

impl ModulePresentation {
    /// Presentation with explicit relations (homogeneous columns into the
    /// ambient module; zero columns are dropped).
    pub fn new(
        ambient: FreeModule,
        relations: Vec<ModuleElement>,
    ) -> Result<ModulePresentation, GbError> {
        let mut kept = Vec::new();
        for r in relations {
            if r.comps.len() != ambient.rank() {
                return Err(GbError::RankMismatch {
                    expected: ambient.rank(),
                    got: r.comps.len(),
                });
            }
            if !ambient.elt_is_homogeneous(&r) {
                return Err(GbError::Inhomogeneous);
            }
            if !r.is_zero() {
                kept.push(r);
            }
        }
        Ok(ModulePresentation {
            ambient,
            relations: kept,
            gb: OnceLock::new(),
        })
    }

    /// The free module itself (no relations).
    pub fn free(fm: FreeModule) -> ModulePresentation {
        ModulePresentation {
            ambient: fm,
            relations: Vec::new(),
            gb: OnceLock::new(),
        }
    }

    /// The quotient ring `S/I` as a module: ambient `S`, relations the
    /// ideal generators.
    pub fn quotient_ring(ideal: &Ideal) -> ModulePresentation {
        let fm = FreeModule::rank1(ideal.ring().clone());
        let relations = ideal.gens().iter().map(|g| fm.poly_elt(g.clone())).collect();
        ModulePresentation::new(fm, relations).expect("ideal generators are rank-1 columns")
    }

    /// The ideal itself as a module: ambient free on its minimal
    /// generators, relations their first syzygies.
    pub fn of_ideal_module(ideal: &Ideal) -> Result<ModulePresentation, GbError> {
        let ring = ideal.ring().clone();
        let rank1 = FreeModule::rank1(ring.clone());
        let mingens = ideal.minimal_generators()?;
        let degs: Vec<Multidegree> = mingens.iter().map(|&(_, d)| d).collect();
        let cols: Vec<ModuleElement> = mingens
            .into_iter()
            .map(|(g, _)| rank1.poly_elt(g))
            .collect();
        let (_, syz) = kernel_generators(&rank1, &cols, &[], false, &GbOptions::default())?;
        let ambient = FreeModule::new(ring, degs);
        ModulePresentation::new(ambient, syz)
    }

    #[inline]
    pub fn ambient(&self) -> &FreeModule {
        &self.ambient
    }

    #[inline]
    pub fn relations(&self) -> &[ModuleElement] {
        &self.relations
    }

    #[inline]
    pub fn ring(&self) -> &Ring {
        self.ambient.ring()
    }

    /// Cached Groebner basis of the relation submodule.
    pub fn relations_gb(&self) -> Result<&GroebnerBasis, GbError> {
        if let Some(g) = self.gb.get() {
            return Ok(g);
        }
        let gb = groebner_basis(&self.ambient, &self.relations, &GbOptions::default())?;
        let _ = self.gb.set(gb);
        Ok(self.gb.get().unwrap())
    }

    /// `dim_k M_d` by standard-monomial counting against the relation
    /// Groebner basis.
    pub fn hilbert_function(&self, d: Multidegree) -> Result<usize, GbError> {
        Ok(self.ambient.piece_dim(d) - self.relations_gb()?.piece_dim(d))
    }
}

/// `dim_k M_d` for a finitely presented module.
pub fn hilbert_function(m: &ModulePresentation, d: Multidegree) -> Result<usize, GbError> {
    m.hilbert_function(d)
}

/// A chain of graded free modules `F_0 ← F_1 ← … ← F_ℓ` with
/// degree-0 maps composing to zero.
#[derive(Debug, Clone)]
pub struct GradedFreeComplex {
    modules: Vec<FreeModule>,
    /// `maps[k]` is `d_{k+1}: F_{k+1} → F_k`.
    maps: Vec<ModuleMap>,
}

impl GradedFreeComplex {
    /// Homological length ℓ (index of the last module).
    pub fn len(&self) -> usize {
        self.modules.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        false // F_0 always exists
    }

    pub fn modules(&self) -> &[FreeModule] {
        &self.modules
    }

    pub fn module(&self, i: usize) -> &FreeModule {
        &self.modules[i]
    }

    /// The differential `d_i: F_i → F_{i−1}` (i ≥ 1).
    pub fn map(&self, i: usize) -> &ModuleMap {
        assert!(i >= 1 && i <= self.len(), "map index out of range");
        &self.maps[i - 1]
    }

    /// Exact check that consecutive differentials compose to zero.
    pub fn is_complex(&self) -> bool {
        for i in 1..self.len() {
            let d_i = self.map(i);
            let d_next = self.map(i + 1);
            for col in &d_next.cols {
                if !d_i.apply(col).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Minimality: no differential has a unit entry (graded Nakayama).
    pub fn is_minimal(&self) -> bool {
        self.first_nonminimal_map().is_none()
    }

    fn first_nonminimal_map(&self) -> Option<usize> {
        for i in 1..=self.len() {
            let d = self.map(i);
            for col in &d.cols {
                for p in &col.comps {
                    // A unit entry is a nonzero constant polynomial.
                    if p.len() == 1 && p.lm().is_one() {
                        return Some(i);
                    }
                }
            }
        }
        None
    }

    /// Euler characteristic of the degree-`d` piece:
    /// `Σ_i (−1)^i dim (F_i)_d`.
    pub fn euler_piece(&self, d: Multidegree) -> i64 {
        let mut acc = 0i64;
        for (i, f) in self.modules.iter().enumerate() {
            let dim = f.piece_dim(d) as i64;
            if i % 2 == 0 {
                acc += dim;
            } else {
                acc -= dim;
            }
        }
        acc
    }
}

/// Computes a graded free resolution of `M`.
///
/// With `minimal` set, each level's generators are a minimal generating
/// set, so the result is the minimal resolution (unique Betti numbers);
/// otherwise the raw syzygy generators are used, which is still a
/// resolution but may carry redundant summands.
pub fn free_resolution(
    m: &ModulePresentation,
    minimal: bool,
    opts: &GbOptions,
) -> Result<GradedFreeComplex, ResolveError> {
    let ring = m.ring().clone();
    let mut modules = vec![m.ambient().clone()];
    let mut maps: Vec<ModuleMap> = Vec::new();
    let mut prev = m.ambient().clone();
    let mut gens: Vec<ModuleElement> = m.relations().to_vec();
    let mut level = 0usize;

    while !gens.is_empty() {
        level += 1;
        if level > ring.nvars() + 1 {
            return Err(ResolveError::TooLong);
        }
        let cols: Vec<ModuleElement> = if minimal {
            let (kept, _) = minimal_generator_indices(&prev, &gens, opts)?;
            kept.into_iter().map(|k| gens[k].clone()).collect()
        } else {
            gens.iter().filter(|g| !g.is_zero()).cloned().collect()
        };
        if cols.is_empty() {
            break;
        }
        let degs: Vec<Multidegree> = cols
            .iter()
            .map(|c| prev.elt_multidegree(c).expect("validated homogeneous"))
            .collect();
        let f_new = FreeModule::new(ring.clone(), degs);
        let map = ModuleMap::new(f_new.clone(), prev.clone(), cols.clone())?;
        let (_, syz) = kernel_generators(&prev, &cols, &[], false, opts)?;
        modules.push(f_new.clone());
        maps.push(map);
        prev = f_new;
        gens = syz;
    }

    let complex = GradedFreeComplex { modules, maps };
    debug_assert!(complex.is_complex());
    Ok(complex)
}

/// Graded Betti numbers `β_{i,j}` of a minimal complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    entries: BTreeMap<(usize, Multidegree), usize>,
    ncols: usize,
    ring: Ring,
}

/// Reads the Betti table off a complex; rejects non-minimal complexes
/// (their summand counts are not the Betti numbers).
pub fn betti_table(c: &GradedFreeComplex) -> Result<BettiTable, ResolveError> {
    if let Some(map) = c.first_nonminimal_map() {
        return Err(ResolveError::NotMinimal { map });
    }
    let mut entries = BTreeMap::new();
    for (i, f) in c.modules().iter().enumerate() {
        for &d in f.gen_degs() {
            *entries.entry((i, d)).or_insert(0) += 1;
        }
    }
    Ok(BettiTable {
        entries,
        ncols: c.len() + 1,
        ring: c.module(0).ring().clone(),
    })
}

impl BettiTable {
    pub fn entry(&self, i: usize, j: Multidegree) -> usize {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Total Betti number `β_i`.
    pub fn total(&self, i: usize) -> usize {
        self.entries
            .iter()
            .filter(|((k, _), _)| *k == i)
            .map(|(_, &c)| c)
            .sum()
    }

    pub fn totals(&self) -> Vec<usize> {
        (0..self.ncols).map(|i| self.total(i)).collect()
    }

    pub fn entries(&self) -> &BTreeMap<(usize, Multidegree), usize> {
        &self.entries
    }

    /// JSON object `{i: {degree: count}}` with string keys.
    pub fn to_json(&self) -> serde_json::Value {
        let mut outer = serde_json::Map::new();
        for i in 0..self.ncols {
            let mut inner = serde_json::Map::new();
            for ((k, d), &c) in &self.entries {
                if *k == i {
                    inner.insert(self.ring.degree_string(*d), serde_json::json!(c));
                }
            }
            outer.insert(i.to_string(), serde_json::Value::Object(inner));
        }
        serde_json::Value::Object(outer)
    }
}

impl fmt::Display for BettiTable {
    /// Row format: row `r` holds `β_{i,j}` with `r = totweight(j) − i`;
    /// zero entries print as dots.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<i64> = {
            let all: Vec<i64> = self
                .entries
                .keys()
                .map(|(i, d)| d.totweight() - *i as i64)
                .collect();
            let lo = all.iter().copied().min().unwrap_or(0);
            let hi = all.iter().copied().max().unwrap_or(0);
            (lo..=hi).collect()
        };
        // Cell text for (row r, column i).
        let cell = |r: i64, i: usize| -> String {
            let n: usize = self
                .entries
                .iter()
                .filter(|((k, d), _)| *k == i && d.totweight() - i as i64 == r)
                .map(|(_, &c)| c)
                .sum();
            if n == 0 {
                ".".to_string()
            } else {
                n.to_string()
            }
        };
        let mut col_cells: Vec<Vec<String>> = Vec::new();
        for i in 0..self.ncols {
            let mut col = vec![i.to_string(), self.total(i).to_string()];
            for &r in &rows {
                col.push(cell(r, i));
            }
            col_cells.push(col);
        }
        let widths: Vec<usize> = col_cells
            .iter()
            .map(|col| col.iter().map(|s| s.len()).max().unwrap())
            .collect();
        let mut labels = vec![String::new(), "total:".to_string()];
        for &r in &rows {
            labels.push(format!("{r}:"));
        }
        let lwidth = labels.iter().map(|s| s.len()).max().unwrap();
        for (line, label) in labels.iter().enumerate() {
            write!(f, "{label:>lwidth$}")?;
            for (i, col) in col_cells.iter().enumerate() {
                write!(f, " {:>width$}", col[line], width = widths[i])?;
            }
            if line + 1 < labels.len() {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

/// Hilbert series of a module, as the integer numerator over the standard
/// denominator `Π_v (1 − x^{deg v})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertSeries {
    ring: Ring,
    numerator: BTreeMap<Multidegree, i64>,
}

/// Numerator of the Hilbert series read off a free complex:
/// `Σ_i (−1)^i Σ_{t ∈ twists(F_i)} x^t`.
pub fn hilbert_series_numerator(c: &GradedFreeComplex) -> HilbertSeries {
    let mut numerator: BTreeMap<Multidegree, i64> = BTreeMap::new();
    for (i, f) in c.modules().iter().enumerate() {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        for &d in f.gen_degs() {
            let e = numerator.entry(d).or_insert(0);
            *e += sign;
            if *e == 0 {
                numerator.remove(&d);
            }
        }
    }
    HilbertSeries {
        ring: c.module(0).ring().clone(),
        numerator,
    }
}

impl HilbertSeries {
    /// Numerator terms: multidegree → integer coefficient (zeros omitted).
    pub fn numerator(&self) -> &BTreeMap<Multidegree, i64> {
        &self.numerator
    }

    /// Denominator exponents: each distinct variable degree with its
    /// multiplicity, i.e. `Π (1 − x^d)^k`.
    pub fn denominator(&self) -> Vec<(Multidegree, usize)> {
        let mut acc: BTreeMap<Multidegree, usize> = BTreeMap::new();
        for &d in self.ring.degrees() {
            *acc.entry(d).or_insert(0) += 1;
        }
        acc.into_iter().collect()
    }

    /// Coefficient of `x^d` in the expanded series; equals the Hilbert
    /// function of the resolved module.
    pub fn coefficient(&self, d: Multidegree) -> i64 {
        self.numerator
            .iter()
            .map(|(&j, &c)| c * self.ring.piece_dim(d.sub(j)) as i64)
            .sum()
    }
}

/// A univariate polynomial with exact rational coefficients,
/// `coeffs[k]·d^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QPolynomial {
    coeffs: Vec<Ratio<i128>>,
}

impl QPolynomial {
    fn zero() -> QPolynomial {
        QPolynomial { coeffs: Vec::new() }
    }

    fn trim(mut self) -> QPolynomial {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coefficient(&self) -> Ratio<i128> {
        self.coeffs.last().copied().unwrap_or_else(|| Ratio::from(0))
    }

    pub fn coefficients(&self) -> &[Ratio<i128>] {
        &self.coeffs
    }

    pub fn eval(&self, d: i64) -> Ratio<i128> {
        let x = Ratio::from(d as i128);
        let mut acc = Ratio::from(0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Evaluation that must land in ℤ (Hilbert polynomials do).
    pub fn eval_int(&self, d: i64) -> i64 {
        let v = self.eval(d);
        assert!(v.is_integer(), "expected integer value");
        i64::try_from(v.to_integer()).expect("value fits in i64")
    }

    fn add_scaled(&mut self, other: &QPolynomial, scale: Ratio<i128>) {
        if self.coeffs.len() < other.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), Ratio::from(0));
        }
        for (k, &c) in other.coeffs.iter().enumerate() {
            self.coeffs[k] += c * scale;
        }
    }
}

impl std::fmt::Display for QPolynomial {
    /// Renders in the variable `d`, highest power first, e.g. `15*d - 2`
    /// or `1/2*d^2 + 3/2*d + 1`.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c < Ratio::from(0);
            let a = if neg { -c } else { c };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let unit = a == Ratio::from(1);
            match (k, unit) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "d")?,
                (1, false) => write!(f, "{a}*d")?,
                (_, true) => write!(f, "d^{k}")?,
                (_, false) => write!(f, "{a}*d^{k}")?,
            }
        }
        Ok(())
    }
}

impl QPolynomial {
    /// `binomial(d + b, m)` as a polynomial in `d`.
    fn binomial(b: i64, m: usize) -> QPolynomial {
        let mut acc = QPolynomial {
            coeffs: vec![Ratio::from(1)],
        };
        for i in 1..=m {
            // multiply by (d + b − m + i)
            let shift = Ratio::from((b - m as i64 + i as i64) as i128);
            let mut next = vec![Ratio::from(0); acc.coeffs.len() + 1];
            for (k, &c) in acc.coeffs.iter().enumerate() {
                next[k] += c * shift;
                next[k + 1] += c;
            }
            acc = QPolynomial { coeffs: next };
        }
        let mut mfact = Ratio::from(1);
        for i in 1..=m as i128 {
            mfact *= Ratio::from(i);
        }
        for c in &mut acc.coeffs {
            *c /= mfact;
        }
        acc.trim()
    }
}

/// Hilbert polynomial of the resolved module (standard grading only):
/// `P(d) = Σ_i (−1)^i Σ_t binom(d − t + n − 1, n − 1)`.
pub fn hilbert_polynomial(c: &GradedFreeComplex) -> Result<QPolynomial, ResolveError> {
    let ring = c.module(0).ring();
    if ring.grading_rank() != 1 || ring.degrees().iter().any(|&d| d != Multidegree(1, 0)) {
        return Err(ResolveError::NotStandardGraded);
    }
    let n = ring.nvars();
    let series = hilbert_series_numerator(c);
    let mut p = QPolynomial::zero();
    for (&j, &coef) in series.numerator() {
        let b = QPolynomial::binomial(n as i64 - 1 - j.0, n - 1);
        p.add_scaled(&b, Ratio::from(coef as i128));
    }
    Ok(p.trim())
}

/// Dimension, degree, and (for curves) arithmetic genus of `Proj(S/I)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeGenus {
    /// Krull dimension of `S/I` (= 1 + dimension of the projective
    /// scheme).
    pub dim: i64,
    pub degree: i64,
    /// `1 − P(0)`, reported only when the scheme is a curve.
    pub genus: Option<i64>,
}

/// Reads dimension, degree, and genus from the Hilbert polynomial of
/// `S/I`.
pub fn degree_genus(ideal: &Ideal) -> Result<DegreeGenus, ResolveError> {
    let m = ModulePresentation::quotient_ring(ideal);
    let c = free_resolution(&m, true, &GbOptions::default())?;
    degree_genus_from(&c)
}

/// [`degree_genus`] reading an already computed free resolution of `S/I`,
/// so one resolution can serve both this and a Betti-table inspection.
pub fn degree_genus_from(c: &GradedFreeComplex) -> Result<DegreeGenus, ResolveError> {
    let p = hilbert_polynomial(c)?;
    let Some(deg_p) = p.degree() else {
        return Ok(DegreeGenus {
            dim: 0,
            degree: 0,
            genus: None,
        });
    };
    let mut fact = Ratio::from(1i128);
    for i in 1..=deg_p as i128 {
        fact *= Ratio::from(i);
    }
    let degree = p.leading_coefficient() * fact;
    assert!(degree.is_integer(), "degree of a projective scheme");
    let genus = if deg_p == 1 {
        Some(1 - p.eval_int(0))
    } else {
        None
    };
    Ok(DegreeGenus {
        dim: deg_p as i64 + 1,
        degree: i64::try_from(degree.to_integer()).expect("degree fits in i64"),
        genus,
    })
}

/// `degree_genus` with the curve assertion folded in.
pub fn curve_degree_genus(ideal: &Ideal) -> Result<(i64, i64), ResolveError> {
    let dg = degree_genus(ideal)?;
    if dg.dim != 2 {
        return Err(ResolveError::NotACurve { dim: dg.dim });
    }
    Ok((dg.degree, dg.genus.expect("curves report genus")))
}

/// Minimal homogeneous generators of the submodule generated by `gens`.
pub fn minimal_generators(
    fm: &FreeModule,
    gens: &[ModuleElement],
) -> Result<Vec<(ModuleElement, Multidegree)>, GbError> {
    let mut ordered: Vec<(i64, usize)> = gens
        .iter()
        .enumerate()
        .filter(|(_, g)| !g.is_zero())
        .map(|(i, g)| {
            if !fm.elt_is_homogeneous(g) {
                return Err(GbError::Inhomogeneous);
            }
            Ok((fm.elt_multidegree(g).unwrap().totweight(), i))
        })
        .collect::<Result<_, _>>()?;
    ordered.sort_by_key(|&(w, i)| (w, i));
    let elts: Vec<ModuleElement> = ordered.iter().map(|&(_, i)| gens[i].clone()).collect();
    let (kept, _) = minimal_generator_indices(fm, &elts, &GbOptions::default())?;
    Ok(kept
        .into_iter()
        .map(|k| {
            let g = elts[k].clone();
            let d = fm.elt_multidegree(&g).unwrap();
            (g, d)
        })
        .collect())
}

#[cfg(test)]
mod tests;
