//! Monomial orders and their packed comparison keys.
//!
//! Each order maps a monomial to an [`OrderKey`] — a triple compared
//! lexicographically — such that key comparison equals monomial comparison.
//! With exponents capped at 255 and at most 16 variables, one `u128` holds a
//! whole exponent vector, so comparisons are a few integer compares with no
//! loops or branches on variable count.

use super::{Monomial, MAX_VARS};

/// A monomial order on the ring's monomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic: first by total degree, ties broken by
    /// the *smallest* trailing exponents (the classic grevlex).
    GrevLex,
    /// Pure lexicographic with `x_0 > x_1 > ...`.
    Lex,
    /// Elimination order for the first `k` variables: compares the total
    /// degree in the first block, then falls back to grevlex on everything.
    /// A Groebner basis in this order intersects cleanly with the subring on
    /// the remaining variables.
    Eliminate(usize),
}

impl MonomialOrder {
    /// Canonical name used in the ideal file header.
    pub fn name(&self) -> String {
        match self {
            MonomialOrder::GrevLex => "grevlex".to_string(),
            MonomialOrder::Lex => "lex".to_string(),
            MonomialOrder::Eliminate(k) => format!("eliminate{k}"),
        }
    }

    /// Parses a name as produced by [`MonomialOrder::name`].
    pub fn parse_name(s: &str) -> Option<MonomialOrder> {
        match s {
            "grevlex" => Some(MonomialOrder::GrevLex),
            "lex" => Some(MonomialOrder::Lex),
            _ => {
                let k = s.strip_prefix("eliminate")?;
                k.parse::<usize>().ok().map(MonomialOrder::Eliminate)
            }
        }
    }
}

/// Packed comparison key; compared lexicographically by the derived `Ord`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrderKey(pub u64, pub u64, pub u128);

/// Packs an exponent vector for grevlex tie-breaking.
///
/// Byte `i` of the result is `255 - exps[i]`; little-endian loading already
/// puts the *last* variable in the most significant byte, so integer
/// comparison inspects the trailing variables first and prefers the
/// *smaller* exponent there — exactly the reverse-lexicographic tie-break.
/// The exponent array *is* a little-endian `u128`, so the whole pack is one
/// load and one complement.
#[inline]
fn grevlex_pack(m: &Monomial) -> u128 {
    const { assert!(MAX_VARS == 16) };
    !u128::from_le_bytes(*m.exps())
}

/// Packs eight exponents big-endian into a `u64`.
#[inline]
fn lex_pack(e: &[u8]) -> u64 {
    u64::from_le_bytes(e.try_into().expect("eight exponents")).swap_bytes()
}

/// The comparison key of a monomial under an order.
#[inline]
pub(crate) fn key(order: MonomialOrder, m: &Monomial) -> OrderKey {
    match order {
        MonomialOrder::GrevLex => OrderKey(m.totdeg(), 0, grevlex_pack(m)),
        MonomialOrder::Lex => {
            let e = m.exps();
            OrderKey(lex_pack(&e[..8]), lex_pack(&e[8..]), 0)
        }
        MonomialOrder::Eliminate(k) => {
            let block: u64 = m.exps()[..k].iter().map(|&x| x as u64).sum();
            OrderKey(block, m.totdeg(), grevlex_pack(m))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pipeline::rng::SplitMix64;
    use std::cmp::Ordering;

    fn cmp(order: MonomialOrder, a: &Monomial, b: &Monomial) -> Ordering {
        key(order, a).cmp(&key(order, b))
    }

    fn m(exps: &[u8]) -> Monomial {
        Monomial::from_exps(exps)
    }

    #[test]
    fn grevlex_pins() {
        let o = MonomialOrder::GrevLex;
        // In three variables x, y, z: y^2 > x z.
        assert_eq!(cmp(o, &m(&[0, 2, 0]), &m(&[1, 0, 1])), Ordering::Greater);
        // x > y > z.
        assert_eq!(cmp(o, &m(&[1, 0, 0]), &m(&[0, 1, 0])), Ordering::Greater);
        assert_eq!(cmp(o, &m(&[0, 1, 0]), &m(&[0, 0, 1])), Ordering::Greater);
        // Degree dominates: z^3 > x^2.
        assert_eq!(cmp(o, &m(&[0, 0, 3]), &m(&[2, 0, 0])), Ordering::Greater);
        // x^2 y z > x y^2 z (first differing-from-the-right index decides).
        assert_eq!(cmp(o, &m(&[2, 1, 1]), &m(&[1, 2, 1])), Ordering::Greater);
    }

    #[test]
    fn lex_pins() {
        let o = MonomialOrder::Lex;
        // x > y^5 under lex.
        assert_eq!(cmp(o, &m(&[1, 0]), &m(&[0, 5])), Ordering::Greater);
        assert_eq!(cmp(o, &m(&[1, 1]), &m(&[1, 0, 9])), Ordering::Greater);
        // Variables past position 8 still participate.
        let mut a = Monomial::ONE;
        a.set_exp(12, 1);
        let mut b = Monomial::ONE;
        b.set_exp(13, 2);
        assert_eq!(cmp(o, &a, &b), Ordering::Greater);
    }

    #[test]
    fn elimination_block_dominates() {
        let o = MonomialOrder::Eliminate(2);
        // Any positive degree in {x0, x1} beats any monomial in the rest.
        assert_eq!(cmp(o, &m(&[1, 0, 0, 0]), &m(&[0, 0, 9, 9])), Ordering::Greater);
        // Within equal block degree, grevlex decides.
        assert_eq!(cmp(o, &m(&[1, 0, 0, 2]), &m(&[1, 0, 1, 0])), Ordering::Greater);
    }

    fn random_mono(rng: &mut SplitMix64, nvars: usize, maxe: u64) -> Monomial {
        let mut mm = Monomial::ONE;
        for i in 0..nvars {
            mm.set_exp(i, rng.next_below(maxe + 1) as u8);
        }
        mm
    }

    /// Order axioms: totality, compatibility with multiplication, and
    /// well-foundedness via "1 is minimal" + divisibility monotonicity.
    #[test]
    fn order_axioms_random() {
        let orders = [
            MonomialOrder::GrevLex,
            MonomialOrder::Lex,
            MonomialOrder::Eliminate(1),
            MonomialOrder::Eliminate(3),
        ];
        let mut rng = SplitMix64::new(0xBEEF);
        for &o in &orders {
            for _ in 0..4000 {
                let a = random_mono(&mut rng, 6, 9);
                let b = random_mono(&mut rng, 6, 9);
                let c = random_mono(&mut rng, 6, 9);
                // Keys are equal exactly when monomials are equal.
                assert_eq!(cmp(o, &a, &b) == Ordering::Equal, a == b);
                // Multiplicative: a < b implies ac < bc.
                assert_eq!(cmp(o, &a, &b), cmp(o, &a.mul(&c), &b.mul(&c)));
                // Divisibility implies order: a | b, a != b implies a < b.
                if a.divides(&b) && a != b {
                    assert_eq!(cmp(o, &a, &b), Ordering::Less);
                }
                // 1 is the minimum.
                if !a.is_one() {
                    assert_eq!(cmp(o, &Monomial::ONE, &a), Ordering::Less);
                }
            }
        }
    }

    #[test]
    fn order_names_round_trip() {
        for o in [
            MonomialOrder::GrevLex,
            MonomialOrder::Lex,
            MonomialOrder::Eliminate(2),
        ] {
            assert_eq!(MonomialOrder::parse_name(&o.name()), Some(o));
        }
        assert_eq!(MonomialOrder::parse_name("degrevlex"), None);
        assert_eq!(MonomialOrder::parse_name("eliminate"), None);
        assert_eq!(MonomialOrder::parse_name("eliminatex"), None);
    }
}
