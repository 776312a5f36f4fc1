//! Geobucket accumulators for cancellation-heavy polynomial arithmetic.
//!
//! A geobucket (Yap, "A new lower bound construction..."; popularized for
//! computer algebra by Monagan) holds a polynomial as a small stack of
//! sorted term lists with geometrically growing capacities.  Adding an
//! m-term polynomial costs O(m + log-ish carries) instead of a full merge
//! with the whole accumulated sum, which is what makes long division chains
//! in the Groebner engine near-linear instead of quadratic.
//!
//! Buckets store terms in *ascending* monomial order so that popping the
//! current lead is O(1) per bucket.

use crate::mpoly::{Monomial, Poly, Ring, Term};

/// Capacity of bucket `i`.
#[inline]
fn cap(i: usize) -> usize {
    8usize << (2 * i)
}

/// A polynomial accumulator with cheap additions and lead-term pops.
#[derive(Debug, Default)]
pub struct Geobucket {
    /// Each bucket is strictly ascending in the ring order.
    buckets: Vec<Vec<Term>>,
}

/// Merges two ascending term lists, combining equal monomials and dropping
/// zero coefficients.
fn merge_asc(ring: &Ring, a: &[Term], b: &[Term]) -> Vec<Term> {
    let f = ring.field();
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match ring.cmp_mono(&a[i].m, &b[j].m) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let c = f.add(a[i].c, b[j].c);
                if c != 0 {
                    out.push(Term { c, m: a[i].m });
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

impl Geobucket {
    pub fn new() -> Geobucket {
        Geobucket::default()
    }

    /// Builds an accumulator holding `p`.
    pub fn from_poly(p: &Poly) -> Geobucket {
        let mut g = Geobucket::new();
        if !p.is_zero() {
            let mut terms: Vec<Term> = p.terms.clone();
            terms.reverse();
            g.insert_raw(terms, None);
        }
        g
    }

    pub fn is_empty(&self) -> bool {
        self.buckets.iter().all(|b| b.is_empty())
    }

    /// Inserts an ascending term list into the bucket sized for it, carrying
    /// overflow upward.  `ring` is only needed for merging.
    fn insert_raw(&mut self, mut terms: Vec<Term>, ring: Option<&Ring>) {
        if terms.is_empty() {
            return;
        }
        let mut slot = 0;
        while cap(slot) < terms.len() {
            slot += 1;
        }
        loop {
            if slot >= self.buckets.len() {
                self.buckets.resize_with(slot + 1, Vec::new);
            }
            if self.buckets[slot].is_empty() {
                self.buckets[slot] = terms;
                return;
            }
            let ring = ring.expect("merge requires a ring");
            terms = merge_asc(ring, &self.buckets[slot], &terms);
            self.buckets[slot].clear();
            if terms.len() <= cap(slot) {
                self.buckets[slot] = terms;
                return;
            }
            slot += 1;
        }
    }

    /// Adds `c * m * p`, optionally skipping the leading term of `p` (used
    /// when that term is known to cancel against the popped lead).
    pub fn add_scaled(&mut self, ring: &Ring, c: u32, m: &Monomial, p: &Poly, skip_lead: bool) {
        let f = ring.field();
        if c == 0 {
            return;
        }
        let src = if skip_lead { &p.terms[1..] } else { &p.terms[..] };
        if src.is_empty() {
            return;
        }
        let mut terms: Vec<Term> = src
            .iter()
            .rev()
            .map(|t| Term {
                c: f.mul(c, t.c),
                m: t.m.mul(m),
            })
            .collect();
        terms.retain(|t| t.c != 0);
        self.insert_raw(terms, Some(ring));
    }

    /// Adds a polynomial.
    pub fn add_poly(&mut self, ring: &Ring, p: &Poly) {
        self.add_scaled(ring, 1, &Monomial::ONE, p, false);
    }

    /// Removes and returns the current leading term, summing duplicates
    /// across buckets; `None` when the accumulator is zero.
    pub fn pop_lt(&mut self, ring: &Ring) -> Option<Term> {
        let f = ring.field();
        loop {
            // Locate the maximal lead among buckets.
            let mut best: Option<(Monomial, crate::mpoly::OrderKey)> = None;
            for b in &self.buckets {
                if let Some(t) = b.last() {
                    let k = ring.key(&t.m);
                    match &best {
                        Some((_, bk)) if *bk >= k => {}
                        _ => best = Some((t.m, k)),
                    }
                }
            }
            let (mono, _) = best?;
            // Pop that monomial from every bucket holding it.
            let mut c = 0u32;
            for b in &mut self.buckets {
                if b.last().is_some_and(|t| t.m == mono) {
                    c = f.add(c, b.pop().unwrap().c);
                }
            }
            if c != 0 {
                return Some(Term { c, m: mono });
            }
        }
    }

    /// Peeks at the current leading term without removing it.
    pub fn peek_lt(&mut self, ring: &Ring) -> Option<Term> {
        let t = self.pop_lt(ring)?;
        // Push back as a singleton ascending list.
        self.insert_raw(vec![t], Some(ring));
        Some(t)
    }

    /// Drains the accumulator into a canonical polynomial.
    pub fn into_poly(mut self, ring: &Ring) -> Poly {
        let mut acc: Vec<Term> = Vec::new();
        for b in std::mem::take(&mut self.buckets) {
            if !b.is_empty() {
                acc = merge_asc(ring, &acc, &b);
            }
        }
        acc.reverse();
        Poly { terms: acc }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::PrimeField;
    use crate::pipeline::rng::SplitMix64;

    fn ring3() -> Ring {
        Ring::standard(PrimeField::new(997).unwrap(), &["x", "y", "z"]).unwrap()
    }

    fn random_poly(r: &Ring, rng: &mut SplitMix64, nterms: usize) -> Poly {
        let pairs: Vec<(i64, Monomial)> = (0..nterms)
            .map(|_| {
                let mut m = Monomial::ONE;
                for i in 0..r.nvars() {
                    m.set_exp(i, rng.next_below(5) as u8);
                }
                (rng.next_below(997) as i64, m)
            })
            .collect();
        r.poly_from_pairs(&pairs)
    }

    #[test]
    fn accumulation_matches_plain_sums() {
        let r = ring3();
        let mut rng = SplitMix64::new(5);
        for _ in 0..100 {
            let polys: Vec<Poly> = (0..rng.next_below(8) as usize + 1)
                .map(|_| {
                    let len = rng.next_below(20) as usize;
                    random_poly(&r, &mut rng, len)
                })
                .collect();
            let mut gb = Geobucket::new();
            let mut plain = r.poly_zero();
            for p in &polys {
                gb.add_poly(&r, p);
                plain = r.poly_add(&plain, p);
            }
            assert_eq!(gb.into_poly(&r), plain);
        }
    }

    #[test]
    fn pop_lt_streams_descending_terms() {
        let r = ring3();
        let mut rng = SplitMix64::new(6);
        for _ in 0..50 {
            let a = random_poly(&r, &mut rng, 15);
            let b = random_poly(&r, &mut rng, 15);
            let sum = r.poly_add(&a, &b);
            let mut gb = Geobucket::new();
            gb.add_poly(&r, &a);
            gb.add_poly(&r, &b);
            let mut popped = Vec::new();
            while let Some(t) = gb.pop_lt(&r) {
                popped.push(t);
            }
            assert_eq!(Poly { terms: popped }, sum);
            assert!(gb.is_empty());
        }
    }

    #[test]
    fn cancellation_and_scaled_adds() {
        let r = ring3();
        let mut rng = SplitMix64::new(7);
        for _ in 0..50 {
            let a = random_poly(&r, &mut rng, 25);
            let mut gb = Geobucket::from_poly(&a);
            // Subtract a again: 996 = -1 mod 997.
            gb.add_scaled(&r, 996, &Monomial::ONE, &a, false);
            assert!(gb.pop_lt(&r).is_none());
        }
        // skip_lead drops exactly the head.
        let a = r.parse_poly("x^2 + y + 1").unwrap();
        let mut gb = Geobucket::new();
        gb.add_scaled(&r, 2, &Monomial::var(2), &a, true);
        assert_eq!(gb.into_poly(&r), r.parse_poly("2*y*z + 2*z").unwrap());
    }

    #[test]
    fn peek_does_not_consume() {
        let r = ring3();
        let a = r.parse_poly("x + y").unwrap();
        let mut gb = Geobucket::from_poly(&a);
        let p1 = gb.peek_lt(&r).unwrap();
        let p2 = gb.pop_lt(&r).unwrap();
        assert_eq!(p1, p2);
        assert_eq!(gb.into_poly(&r), r.parse_poly("y").unwrap());
    }
}
