//! Multivariate polynomials over GF(p) in multigraded polynomial rings.
//!
//! A [`Ring`] fixes the coefficient field, the variable names, a grading
//! (each variable carries a multidegree with one or two components, e.g. the
//! bigraded Cox ring of P^1 x P^2), and a monomial order.  Polynomials are
//! sorted term lists in that order, so equality is structural and printing
//! is canonical.
//!
//! Monomials are fixed-width exponent vectors: at most [`MAX_VARS`]
//! variables, each exponent at most [`MAX_EXP`].  Every workload in this
//! crate fits comfortably; both limits are enforced at ring construction and
//! parse time.

pub mod fmt;
pub mod order;
pub mod parse;
pub mod poly;

pub use order::{MonomialOrder, OrderKey};
pub use poly::{Poly, Term};

use crate::gf::PrimeField;
use std::cmp::Ordering;
use thiserror::Error;

/// Maximum number of ring variables.
pub const MAX_VARS: usize = 16;

/// Maximum exponent of one variable inside a monomial.
pub const MAX_EXP: u8 = u8::MAX;

/// Errors from [`Ring`] construction.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("too many variables: {0} (limit {MAX_VARS})")]
    TooManyVars(usize),
    #[error("a ring needs at least one variable")]
    NoVars,
    #[error("invalid variable name {0:?}")]
    BadVarName(String),
    #[error("duplicate variable name {0:?}")]
    DuplicateVar(String),
    #[error("expected one multidegree per variable")]
    DegreeCountMismatch,
    #[error("grading rank must be 1 or 2, got {0}")]
    BadGradingRank(usize),
    #[error("variable {0:?} must have nonnegative degree components and positive total weight")]
    BadVarDegree(String),
    #[error("elimination block size {0} out of range for {1} variables")]
    BadEliminationBlock(usize, usize),
}

/// A multidegree with up to two components.
///
/// Rings of grading rank 1 keep the second component at zero everywhere;
/// rank-2 rings (products of projective spaces) use both.  The derived `Ord`
/// is lexicographic and is used only for deterministic map keys, not as a
/// monomial order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multidegree(pub i64, pub i64);

impl Multidegree {
    pub const ZERO: Multidegree = Multidegree(0, 0);

    /// Componentwise sum.
    #[inline]
    pub fn add(self, other: Multidegree) -> Multidegree {
        Multidegree(self.0 + other.0, self.1 + other.1)
    }

    /// Componentwise difference.
    #[inline]
    pub fn sub(self, other: Multidegree) -> Multidegree {
        Multidegree(self.0 - other.0, self.1 - other.1)
    }

    /// Scalar multiple.
    #[inline]
    pub fn scale(self, k: i64) -> Multidegree {
        Multidegree(self.0 * k, self.1 * k)
    }

    /// Sum of the components; the "total weight" used for degree bounds and
    /// selection strategies.
    #[inline]
    pub fn totweight(self) -> i64 {
        self.0 + self.1
    }

    /// Whether both components are nonnegative.
    #[inline]
    pub fn is_nonnegative(self) -> bool {
        self.0 >= 0 && self.1 >= 0
    }
}

/// A monomial: exponent vector of fixed width [`MAX_VARS`].
///
/// Unused slots stay zero, so monomials from rings with fewer variables
/// compare and hash cheaply.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u8; MAX_VARS],
}

impl Monomial {
    /// The unit monomial, 1.
    pub const ONE: Monomial = Monomial {
        exps: [0; MAX_VARS],
    };

    /// Builds a monomial from a (short) exponent slice, padding with zeros.
    pub fn from_exps(exps: &[u8]) -> Monomial {
        assert!(exps.len() <= MAX_VARS, "too many exponents");
        let mut m = Monomial::ONE;
        m.exps[..exps.len()].copy_from_slice(exps);
        m
    }

    /// The monomial `x_i`.
    pub fn var(i: usize) -> Monomial {
        assert!(i < MAX_VARS);
        let mut m = Monomial::ONE;
        m.exps[i] = 1;
        m
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u8 {
        self.exps[i]
    }

    #[inline]
    pub fn exps(&self) -> &[u8; MAX_VARS] {
        &self.exps
    }

    #[inline]
    pub fn set_exp(&mut self, i: usize, e: u8) {
        self.exps[i] = e;
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        self.exps == [0; MAX_VARS]
    }

    /// Total degree: the plain sum of exponents.
    #[inline]
    pub fn totdeg(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    /// Product, or `None` if an exponent would exceed [`MAX_EXP`].
    #[inline]
    pub fn checked_mul(&self, other: &Monomial) -> Option<Monomial> {
        // Branch-free body so the fixed-width loop vectorizes; an unsigned
        // byte add wrapped exactly when the sum dropped below an operand.
        let mut out = [0u8; MAX_VARS];
        let mut ok = true;
        for i in 0..MAX_VARS {
            out[i] = self.exps[i].wrapping_add(other.exps[i]);
            ok &= out[i] >= self.exps[i];
        }
        ok.then_some(Monomial { exps: out })
    }

    /// Product; panics on exponent overflow (an engine invariant violation).
    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.checked_mul(other)
            .expect("monomial exponent overflow (limit 255 per variable)")
    }

    /// Whether `self` divides `other`.
    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        // Accumulate without short-circuiting: the fixed-width byte
        // comparison loop compiles to a couple of vector instructions.
        let mut ok = true;
        for i in 0..MAX_VARS {
            ok &= self.exps[i] <= other.exps[i];
        }
        ok
    }

    /// Exact quotient `self / other`; panics unless `other` divides `self`.
    #[inline]
    pub fn div(&self, other: &Monomial) -> Monomial {
        debug_assert!(other.divides(self), "non-exact monomial division");
        let mut out = [0u8; MAX_VARS];
        for i in 0..MAX_VARS {
            out[i] = self.exps[i] - other.exps[i];
        }
        Monomial { exps: out }
    }

    /// Least common multiple.
    #[inline]
    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut out = [0u8; MAX_VARS];
        for i in 0..MAX_VARS {
            out[i] = self.exps[i].max(other.exps[i]);
        }
        Monomial { exps: out }
    }

    /// Greatest common divisor.
    #[inline]
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut out = [0u8; MAX_VARS];
        for i in 0..MAX_VARS {
            out[i] = self.exps[i].min(other.exps[i]);
        }
        Monomial { exps: out }
    }

    /// Whether the supports are disjoint.
    #[inline]
    pub fn coprime(&self, other: &Monomial) -> bool {
        let mut ok = true;
        for i in 0..MAX_VARS {
            ok &= self.exps[i].min(other.exps[i]) == 0;
        }
        ok
    }
}

/// A multigraded polynomial ring over GF(p) with a fixed monomial order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ring {
    field: PrimeField,
    vars: Vec<String>,
    degrees: Vec<Multidegree>,
    grading_rank: usize,
    order: MonomialOrder,
}

fn valid_var_name(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Ring {
    /// Constructs a ring with explicit per-variable multidegrees.
    ///
    /// Every variable must have nonnegative degree components and positive
    /// total weight (so graded pieces are finite-dimensional and
    /// degree-by-degree algorithms terminate).
    pub fn new(
        field: PrimeField,
        vars: Vec<String>,
        degrees: Vec<Multidegree>,
        grading_rank: usize,
        order: MonomialOrder,
    ) -> Result<Ring, RingError> {
        if vars.is_empty() {
            return Err(RingError::NoVars);
        }
        if vars.len() > MAX_VARS {
            return Err(RingError::TooManyVars(vars.len()));
        }
        if degrees.len() != vars.len() {
            return Err(RingError::DegreeCountMismatch);
        }
        if !(1..=2).contains(&grading_rank) {
            return Err(RingError::BadGradingRank(grading_rank));
        }
        for (v, d) in vars.iter().zip(&degrees) {
            if !valid_var_name(v) {
                return Err(RingError::BadVarName(v.clone()));
            }
            if !d.is_nonnegative() || d.totweight() <= 0 {
                return Err(RingError::BadVarDegree(v.clone()));
            }
            if grading_rank == 1 && d.1 != 0 {
                return Err(RingError::BadVarDegree(v.clone()));
            }
        }
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(RingError::DuplicateVar(v.clone()));
            }
        }
        if let MonomialOrder::Eliminate(k) = order {
            if k == 0 || k >= vars.len() {
                return Err(RingError::BadEliminationBlock(k, vars.len()));
            }
        }
        Ok(Ring {
            field,
            vars,
            degrees,
            grading_rank,
            order,
        })
    }

    /// Standard graded ring: every variable has degree 1, grevlex order.
    pub fn standard(field: PrimeField, vars: &[&str]) -> Result<Ring, RingError> {
        Ring::new(
            field,
            vars.iter().map(|s| s.to_string()).collect(),
            vec![Multidegree(1, 0); vars.len()],
            1,
            MonomialOrder::GrevLex,
        )
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    #[inline]
    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    #[inline]
    pub fn var_name(&self, i: usize) -> &str {
        &self.vars[i]
    }

    /// Index of a variable by name.
    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    #[inline]
    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    #[inline]
    pub fn grading_rank(&self) -> usize {
        self.grading_rank
    }

    #[inline]
    pub fn degrees(&self) -> &[Multidegree] {
        &self.degrees
    }

    #[inline]
    pub fn var_degree(&self, i: usize) -> Multidegree {
        self.degrees[i]
    }

    /// The multidegree of a monomial under this ring's grading.
    pub fn mono_degree(&self, m: &Monomial) -> Multidegree {
        let mut d = Multidegree::ZERO;
        for i in 0..self.nvars() {
            let e = m.exp(i) as i64;
            if e != 0 {
                d = d.add(self.degrees[i].scale(e));
            }
        }
        d
    }

    /// Order key of a monomial; larger key means larger monomial.
    #[inline]
    pub fn key(&self, m: &Monomial) -> OrderKey {
        order::key(self.order, m)
    }

    /// Compares two monomials in the ring order.
    #[inline]
    pub fn cmp_mono(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.key(a).cmp(&self.key(b))
    }

    /// The multidegree of a nonzero homogeneous polynomial, or `None` when
    /// the polynomial is zero or not homogeneous.
    pub fn poly_multidegree(&self, f: &Poly) -> Option<Multidegree> {
        let first = f.terms.first()?;
        let d = self.mono_degree(&first.m);
        for t in &f.terms[1..] {
            if self.mono_degree(&t.m) != d {
                return None;
            }
        }
        Some(d)
    }

    /// Whether a polynomial is homogeneous (the zero polynomial counts).
    pub fn is_homogeneous(&self, f: &Poly) -> bool {
        f.is_zero() || self.poly_multidegree(f).is_some()
    }

    /// All monomials of the given multidegree, sorted descending in the
    /// ring order.
    ///
    /// The grading has nonnegative components with positive total weight,
    /// so the answer is finite; a target with a negative component has no
    /// monomials.
    pub fn monomials_of_multidegree(&self, d: Multidegree) -> Vec<Monomial> {
        let mut out = Vec::new();
        if d.is_nonnegative() {
            let mut current = Monomial::ONE;
            self.enumerate_monomials(0, d, &mut current, &mut out);
        }
        out.sort_unstable_by(|a, b| self.key(b).cmp(&self.key(a)));
        out
    }

    fn enumerate_monomials(
        &self,
        var: usize,
        remaining: Multidegree,
        current: &mut Monomial,
        out: &mut Vec<Monomial>,
    ) {
        if var == self.nvars() {
            if remaining == Multidegree::ZERO {
                out.push(*current);
            }
            return;
        }
        let vd = self.degrees[var];
        // Largest exponent so that the remaining degree stays nonnegative in
        // every component the variable actually moves.
        let mut max_e: i64 = MAX_EXP as i64;
        if vd.0 > 0 {
            max_e = max_e.min(remaining.0 / vd.0);
        }
        if vd.1 > 0 {
            max_e = max_e.min(remaining.1 / vd.1);
        }
        for e in 0..=max_e.max(-1) {
            let rem = remaining.sub(vd.scale(e));
            if !rem.is_nonnegative() {
                break;
            }
            current.set_exp(var, e as u8);
            self.enumerate_monomials(var + 1, rem, current, out);
        }
        current.set_exp(var, 0);
    }

    /// Dimension of the graded piece `R_d` of the ring itself.
    pub fn piece_dim(&self, d: Multidegree) -> usize {
        self.monomials_of_multidegree(d).len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f997() -> PrimeField {
        PrimeField::new(997).unwrap()
    }

    #[test]
    fn ring_construction_and_validation() {
        let f = f997();
        let r = Ring::standard(f, &["x", "y", "z"]).unwrap();
        assert_eq!(r.nvars(), 3);
        assert_eq!(r.var_index("y"), Some(1));
        assert_eq!(r.var_index("w"), None);
        assert_eq!(r.mono_degree(&Monomial::from_exps(&[1, 2, 0])), Multidegree(3, 0));

        let too_many: Vec<String> = (0..17).map(|i| format!("v{i}")).collect();
        let degs = vec![Multidegree(1, 0); 17];
        assert_eq!(
            Ring::new(f, too_many, degs, 1, MonomialOrder::GrevLex),
            Err(RingError::TooManyVars(17))
        );
        assert_eq!(
            Ring::new(
                f,
                vec!["x".into(), "x".into()],
                vec![Multidegree(1, 0); 2],
                1,
                MonomialOrder::GrevLex
            ),
            Err(RingError::DuplicateVar("x".into()))
        );
        assert_eq!(
            Ring::new(
                f,
                vec!["3x".into()],
                vec![Multidegree(1, 0)],
                1,
                MonomialOrder::GrevLex
            ),
            Err(RingError::BadVarName("3x".into()))
        );
        assert_eq!(
            Ring::new(
                f,
                vec!["x".into()],
                vec![Multidegree(0, 0)],
                1,
                MonomialOrder::GrevLex
            ),
            Err(RingError::BadVarDegree("x".into()))
        );
        // Rank-1 rings must keep the second degree component zero.
        assert_eq!(
            Ring::new(
                f,
                vec!["x".into()],
                vec![Multidegree(1, 1)],
                1,
                MonomialOrder::GrevLex
            ),
            Err(RingError::BadVarDegree("x".into()))
        );
        assert_eq!(
            Ring::new(
                f,
                vec!["x".into(), "y".into()],
                vec![Multidegree(1, 0); 2],
                1,
                MonomialOrder::Eliminate(2)
            ),
            Err(RingError::BadEliminationBlock(2, 2))
        );
    }

    #[test]
    fn monomial_ops() {
        let a = Monomial::from_exps(&[2, 1, 0]);
        let b = Monomial::from_exps(&[1, 0, 3]);
        assert_eq!(a.mul(&b), Monomial::from_exps(&[3, 1, 3]));
        assert_eq!(a.lcm(&b), Monomial::from_exps(&[2, 1, 3]));
        assert_eq!(a.gcd(&b), Monomial::from_exps(&[1, 0, 0]));
        assert!(!a.divides(&b));
        assert!(a.gcd(&b).divides(&a));
        assert_eq!(a.mul(&b).div(&b), a);
        assert!(!a.coprime(&b));
        assert!(Monomial::var(0).coprime(&Monomial::var(1)));
        assert_eq!(a.totdeg(), 3);
        let big = Monomial::from_exps(&[255]);
        assert_eq!(big.checked_mul(&Monomial::var(0)), None);
    }

    #[test]
    fn bigraded_cox_ring_piece_dims() {
        // Cox ring of P^1 x P^2: x_0, x_1 of degree (1,0); y_0..y_2 of (0,1).
        let f = f997();
        let mut degs = vec![Multidegree(1, 0); 2];
        degs.extend(vec![Multidegree(0, 1); 3]);
        let s = Ring::new(
            f,
            vec!["x_0".into(), "x_1".into(), "y_0".into(), "y_1".into(), "y_2".into()],
            degs,
            2,
            MonomialOrder::GrevLex,
        )
        .unwrap();
        // dim S_(1,1) = 2 * 3 = 6.
        assert_eq!(s.piece_dim(Multidegree(1, 1)), 6);
        // dim S_(a,b) = (a+1) * C(b+2,2).
        assert_eq!(s.piece_dim(Multidegree(3, 4)), 4 * 15);
        assert_eq!(s.piece_dim(Multidegree(0, 0)), 1);
        assert_eq!(s.piece_dim(Multidegree(-1, 2)), 0);
        // Monomials come out strictly descending in the ring order.
        let monos = s.monomials_of_multidegree(Multidegree(2, 2));
        assert_eq!(monos.len(), 3 * 6);
        for w in monos.windows(2) {
            assert_eq!(s.cmp_mono(&w[0], &w[1]), std::cmp::Ordering::Greater);
        }
        for m in &monos {
            assert_eq!(s.mono_degree(m), Multidegree(2, 2));
        }
    }

    #[test]
    fn standard_ring_piece_dims() {
        let f = f997();
        let p5 = Ring::standard(f, &["z_0", "z_1", "z_2", "z_3", "z_4", "z_5"]).unwrap();
        // dim of degree-d piece of a polynomial ring in 6 variables.
        assert_eq!(p5.piece_dim(Multidegree(1, 0)), 6);
        assert_eq!(p5.piece_dim(Multidegree(2, 0)), 21);
        assert_eq!(p5.piece_dim(Multidegree(3, 0)), 56);
        assert_eq!(p5.piece_dim(Multidegree(7, 0)), 792);
    }

    #[test]
    fn weighted_ring_pieces() {
        // y of weight 1, x of weight 2, z of weight 3.
        let f = f997();
        let r = Ring::new(
            f,
            vec!["y".into(), "x".into(), "z".into()],
            vec![Multidegree(1, 0), Multidegree(2, 0), Multidegree(3, 0)],
            1,
            MonomialOrder::Eliminate(1),
        )
        .unwrap();
        // Degree 6: y^6, y^4 x, y^2 x^2, x^3, y^3 z, y x z, z^2 -> 7 monomials.
        assert_eq!(r.piece_dim(Multidegree(6, 0)), 7);
    }
}
