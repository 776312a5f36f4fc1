//! Core Buchberger loop: homogeneous module Groebner bases with
//! Gebauer-Moeller pair elimination, optional input tracking for syzygy and
//! kernel extraction, and degree-synchronized minimal-generator selection.
//!
//! Tracking works on the augmented module `F ⊕ S^s`: every basis element
//! `g` carries an auxiliary vector `a` with the invariant
//! `g ≡ Σ_k a_k · v_k` modulo the untracked submodule, where `v_1..v_s` are
//! the tracked inputs.  Reductions and S-pair combinations update `f` and
//! `a` by the same row operations, so when an S-pair reduces to zero its
//! auxiliary vector is a syzygy; the classical lifting argument (Moeller,
//! Mora, Traverso 1992; Schreyer's thesis) shows the zero-reduction vectors
//! generate the entire syzygy module, provided no basis element is
//! discarded during the run.  Interreduction is therefore applied only to
//! the *presentation* returned to callers, after the loop has finished.
//!
//! Pair criteria: the Gebauer-Moeller M/F/B criteria discard only pairs
//! whose syzygies are expressible through the surviving ones, so they are
//! safe under tracking.  The coprimality (product) criterion discards
//! Koszul syzygies outright and is only valid for ring elements, so it is
//! enabled solely for untracked rank-1 runs.
//!
//! Degrees are exact on homogeneous input, so the "sugar" of an S-pair is
//! its true degree; selection is degree-first for both strategies.

use super::geobucket::Geobucket;
use super::{FreeModule, GbError, GbOptions, ModuleElement, Strategy};
use crate::mpoly::{Monomial, OrderKey, Poly, Term};
use std::collections::{BTreeMap, HashMap, VecDeque};

/// Engine mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Mode {
    /// Groebner basis of the generated submodule; no bookkeeping.
    Plain,
    /// Track the inputs and collect syzygies from zero reductions.
    Tracked,
    /// Offer inputs as candidate generators in degree order, keeping only
    /// those not generated by the earlier ones.
    MinGens,
}

/// Raw engine result.
pub(crate) struct EngineOutput {
    /// All basis elements in insertion order (untracked seeds first).
    pub basis: Vec<ModuleElement>,
    /// Auxiliary vectors of zero reductions: generators of the syzygy
    /// module of the tracked inputs (modulo the untracked submodule).
    pub syzygies: Vec<ModuleElement>,
    /// Indices (into the caller's input slice) of kept minimal generators.
    pub kept_inputs: Vec<usize>,
    /// False when a degree bound truncated the pair queue.
    pub complete: bool,
}

/// One basis element: component vector, optional auxiliary vector, and its
/// cached POT lead data.  Lead coefficients are always 1.
pub(crate) struct Elt {
    pub f: ModuleElement,
    pub aux: Option<ModuleElement>,
    pub pos: usize,
    pub lm: Monomial,
    pub mask: u32,
    pub untracked: bool,
}

/// One bit per variable with positive exponent; a cheap necessary
/// condition for divisibility (`divisor.mask & !m.mask == 0`).
#[inline]
pub(crate) fn divmask(m: &Monomial) -> u32 {
    let mut mask = 0u32;
    for i in 0..crate::mpoly::MAX_VARS {
        mask |= u32::from(m.exp(i) != 0) << i;
    }
    mask
}

/// Queue key: degree first, then the strategy's tie-break, then the pair
/// indices for uniqueness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct PairKey {
    w: i64,
    k0: u64,
    k1: u64,
    k2: u128,
    i: u32,
    j: u32,
}

struct Candidate {
    w: i64,
    orig: usize,
    elt: ModuleElement,
}

struct Engine<'a> {
    fm: &'a FreeModule,
    mode: Mode,
    opts: &'a GbOptions,
    aux_rank: usize,
    untracked_certified: bool,
    product_ok: bool,
    elems: Vec<Elt>,
    by_pos: Vec<Vec<u32>>,
    pairs: BTreeMap<PairKey, (u32, u32)>,
    pair_of: HashMap<(u32, u32), PairKey>,
    seq: u64,
    syzygies: Vec<ModuleElement>,
    kept_inputs: Vec<usize>,
    complete: bool,
}

/// Runs the engine.  `tracked` are the inputs proper (generators,
/// candidates, or columns to track); `untracked` elements join the basis
/// with zero auxiliary vectors, and `untracked_certified` additionally
/// promises they form a Groebner basis so untracked-untracked S-pairs can
/// be skipped.
pub(crate) fn run(
    fm: &FreeModule,
    tracked: &[ModuleElement],
    untracked: &[ModuleElement],
    untracked_certified: bool,
    mode: Mode,
    opts: &GbOptions,
) -> Result<EngineOutput, GbError> {
    validate(fm, tracked)?;
    validate(fm, untracked)?;
    if mode == Mode::MinGens {
        assert!(
            untracked.is_empty(),
            "minimal-generator mode does not take an untracked block"
        );
        assert!(
            opts.degree_bound.is_none(),
            "minimal-generator mode does not support a degree bound"
        );
    }

    let aux_rank = if mode == Mode::Tracked { tracked.len() } else { 0 };
    let mut eng = Engine {
        fm,
        mode,
        opts,
        aux_rank,
        untracked_certified,
        product_ok: fm.rank() == 1 && mode != Mode::Tracked,
        elems: Vec::new(),
        by_pos: vec![Vec::new(); fm.rank()],
        pairs: BTreeMap::new(),
        pair_of: HashMap::new(),
        seq: 0,
        syzygies: Vec::new(),
        kept_inputs: Vec::new(),
        complete: true,
    };

    for u in untracked {
        if !u.is_zero() {
            eng.insert(u.clone(), None, true);
        }
    }

    let mut queue: VecDeque<Candidate> = VecDeque::new();
    match mode {
        Mode::Plain => {
            for t in tracked {
                if !t.is_zero() {
                    eng.insert(t.clone(), None, false);
                }
            }
        }
        Mode::Tracked => {
            for (k, t) in tracked.iter().enumerate() {
                if t.is_zero() {
                    // A zero input is its own syzygy: e_k maps to 0.
                    let mut s = vec![Poly::zero(); aux_rank];
                    s[k] = fm.ring().poly_one();
                    eng.syzygies.push(ModuleElement { comps: s });
                } else {
                    let mut a = vec![Poly::zero(); aux_rank];
                    a[k] = fm.ring().poly_one();
                    eng.insert(t.clone(), Some(ModuleElement { comps: a }), false);
                }
            }
        }
        Mode::MinGens => {
            let mut cands: Vec<Candidate> = tracked
                .iter()
                .enumerate()
                .filter(|(_, t)| !t.is_zero())
                .map(|(orig, t)| Candidate {
                    w: fm.elt_multidegree(t).expect("validated").totweight(),
                    orig,
                    elt: t.clone(),
                })
                .collect();
            cands.sort_by_key(|c| c.w); // stable: input order breaks ties
            queue = cands.into();
        }
    }

    eng.main_loop(&mut queue);

    Ok(EngineOutput {
        basis: eng.elems.into_iter().map(|e| e.f).collect(),
        syzygies: eng.syzygies,
        kept_inputs: eng.kept_inputs,
        complete: eng.complete,
    })
}

fn validate(fm: &FreeModule, elts: &[ModuleElement]) -> Result<(), GbError> {
    for v in elts {
        if v.comps.len() != fm.rank() {
            return Err(GbError::RankMismatch {
                expected: fm.rank(),
                got: v.comps.len(),
            });
        }
        if !fm.elt_is_homogeneous(v) {
            return Err(GbError::Inhomogeneous);
        }
    }
    Ok(())
}

impl<'a> Engine<'a> {
    /// Normalizes the lead coefficient to 1 (scaling `aux` identically),
    /// records the element, and updates the pair queue.
    fn insert(&mut self, f: ModuleElement, aux: Option<ModuleElement>, untracked: bool) {
        let field = self.fm.ring().field();
        let (pos, lt) = self.fm.lead(&f).expect("inserting a zero element");
        let c = field.inv(lt.c);
        let f = self.fm.elt_scale(c, &f);
        let aux = aux.map(|a| ModuleElement {
            comps: a
                .comps
                .iter()
                .map(|p| self.fm.ring().poly_scale(c, p))
                .collect(),
        });
        let idx = self.elems.len() as u32;
        self.elems.push(Elt {
            f,
            aux,
            pos,
            lm: lt.m,
            mask: divmask(&lt.m),
            untracked,
        });
        self.by_pos[pos].push(idx);
        self.update_pairs(idx);
    }

    /// Gebauer-Moeller pair update for the newly inserted element `t`.
    fn update_pairs(&mut self, t: u32) {
        let ring = self.fm.ring();
        let pos_t = self.elems[t as usize].pos;
        let lm_t = self.elems[t as usize].lm;

        // B criterion: an old pair (i,j) is redundant once the new lead
        // strictly refines its lcm.
        let mut dead: Vec<(u32, u32)> = Vec::new();
        for &(i, j) in self.pair_of.keys() {
            let ei = &self.elems[i as usize];
            let ej = &self.elems[j as usize];
            if ei.pos != pos_t {
                continue;
            }
            let lij = ei.lm.lcm(&ej.lm);
            if lm_t.divides(&lij) && ei.lm.lcm(&lm_t) != lij && ej.lm.lcm(&lm_t) != lij {
                dead.push((i, j));
            }
        }
        for ij in dead {
            let key = self.pair_of.remove(&ij).expect("tracked pair");
            self.pairs.remove(&key);
        }

        // Candidate pairs (i, t) at the same position.
        struct Cand {
            i: u32,
            lcm: Monomial,
            key: OrderKey,
            coprime: bool,
        }
        let mut cands: Vec<Cand> = Vec::new();
        for i in 0..t {
            let ei = &self.elems[i as usize];
            if ei.pos != pos_t {
                continue;
            }
            if self.untracked_certified && ei.untracked && self.elems[t as usize].untracked {
                continue;
            }
            let l = ei.lm.lcm(&lm_t);
            cands.push(Cand {
                i,
                lcm: l,
                key: ring.key(&l),
                coprime: ei.lm.coprime(&lm_t),
            });
        }

        // M criterion: drop candidates whose lcm is properly divided by
        // another candidate's lcm.
        let keep: Vec<bool> = cands
            .iter()
            .map(|c| {
                !cands
                    .iter()
                    .any(|o| o.lcm != c.lcm && o.lcm.divides(&c.lcm))
            })
            .collect();

        // F criterion: one representative per lcm class.  When the product
        // criterion is active and the class has a coprime member, that
        // member represents the class (and is then dropped by the product
        // criterion, eliminating the whole class).
        let mut groups: BTreeMap<OrderKey, Vec<usize>> = BTreeMap::new();
        for (ci, c) in cands.iter().enumerate() {
            if keep[ci] {
                groups.entry(c.key).or_default().push(ci);
            }
        }
        for class in groups.values() {
            let rep = if self.product_ok {
                *class
                    .iter()
                    .find(|&&ci| cands[ci].coprime)
                    .unwrap_or(&class[0])
            } else {
                class[0]
            };
            if self.product_ok && cands[rep].coprime {
                continue;
            }
            self.push_pair(cands[rep].i, t, &cands[rep].lcm, pos_t);
        }
    }

    fn push_pair(&mut self, i: u32, j: u32, lcm: &Monomial, pos: usize) {
        let ring = self.fm.ring();
        let w = ring
            .mono_degree(lcm)
            .add(self.fm.gen_deg(pos))
            .totweight();
        let (k0, k1, k2) = match self.opts.strategy {
            Strategy::Sugar => {
                let k = ring.key(lcm);
                (k.0, k.1, k.2)
            }
            Strategy::DegreeFifo => (self.seq, 0, 0),
        };
        self.seq += 1;
        let key = PairKey { w, k0, k1, k2, i, j };
        self.pairs.insert(key, (i, j));
        self.pair_of.insert((i, j), key);
    }

    /// Augmented S-pair of two monic elements.
    fn s_pair(&self, i: usize, j: usize) -> (ModuleElement, Option<ModuleElement>) {
        let fm = self.fm;
        let ring = fm.ring();
        let ei = &self.elems[i];
        let ej = &self.elems[j];
        let l = ei.lm.lcm(&ej.lm);
        let mi = l.div(&ei.lm);
        let mj = l.div(&ej.lm);
        let s = fm.elt_sub(
            &fm.elt_mul_term(&ei.f, 1, &mi),
            &fm.elt_mul_term(&ej.f, 1, &mj),
        );
        let aux = if self.mode == Mode::Tracked {
            let zero = ModuleElement {
                comps: vec![Poly::zero(); self.aux_rank],
            };
            let shift = |a: &Option<ModuleElement>, m: &Monomial| match a {
                None => zero.clone(),
                Some(a) => ModuleElement {
                    comps: a.comps.iter().map(|p| ring.poly_mul_term(p, 1, m)).collect(),
                },
            };
            let ai = shift(&ei.aux, &mi);
            let aj = shift(&ej.aux, &mj);
            Some(ModuleElement {
                comps: ai
                    .comps
                    .iter()
                    .zip(&aj.comps)
                    .map(|(x, y)| ring.poly_sub(x, y))
                    .collect(),
            })
        } else {
            None
        };
        (s, aux)
    }

    fn main_loop(&mut self, queue: &mut VecDeque<Candidate>) {
        loop {
            let pair_w = self.pairs.keys().next().map(|k| k.w);
            let cand_w = queue.front().map(|c| c.w);
            // Pairs of a given degree run before candidates of that degree,
            // so candidates are tested against a basis that is Groebner
            // through their degree ("pairs first" synchronization).
            let take_candidate = match (pair_w, cand_w) {
                (None, None) => break,
                (None, Some(_)) => true,
                (Some(_), None) => false,
                (Some(p), Some(c)) => p > c,
            };
            if take_candidate {
                let cand = queue.pop_front().expect("candidate present");
                let (nf, _) = self.reduce_full(&cand.elt, None);
                if !nf.is_zero() {
                    self.kept_inputs.push(cand.orig);
                    self.insert(nf, None, false);
                }
                continue;
            }

            let (key, (i, j)) = self.pairs.pop_first().expect("pair present");
            self.pair_of.remove(&(i, j));
            if let Some(bound) = self.opts.degree_bound {
                if key.w > bound {
                    // Degree-ordered queue: everything left is beyond the
                    // bound too.
                    self.complete = false;
                    self.pairs.clear();
                    self.pair_of.clear();
                    continue;
                }
            }
            let (s, s_aux) = self.s_pair(i as usize, j as usize);
            let (nf, nf_aux) = self.reduce_full(&s, s_aux);
            if nf.is_zero() {
                if let Some(a) = nf_aux {
                    if !a.is_zero() {
                        self.syzygies.push(a);
                    }
                }
            } else {
                self.insert(nf, nf_aux, false);
            }
        }
    }

    fn reduce_full(
        &self,
        v: &ModuleElement,
        v_aux: Option<ModuleElement>,
    ) -> (ModuleElement, Option<ModuleElement>) {
        cascade_reduce(self.fm, &self.elems, &self.by_pos, v, v_aux, self.aux_rank)
    }
}

/// Full division in POT order.  Positions are processed in increasing
/// order; a reducer with lead at position `p` has zero components below
/// `p`, so its tail spills only into the current and later positions.
/// Irreducible lead terms move to the output, which therefore contains no
/// term divisible by any reducer lead.  The auxiliary vector is combined
/// but never itself reduced.
pub(crate) fn cascade_reduce(
    fm: &FreeModule,
    elems: &[Elt],
    by_pos: &[Vec<u32>],
    v: &ModuleElement,
    v_aux: Option<ModuleElement>,
    aux_rank: usize,
) -> (ModuleElement, Option<ModuleElement>) {
    let ring = fm.ring();
    let field = ring.field();
    let rank = fm.rank();

    let mut work: Vec<Geobucket> = v.comps.iter().map(Geobucket::from_poly).collect();
    let mut out: Vec<Vec<Term>> = vec![Vec::new(); rank];
    let mut aux_work: Option<Vec<Geobucket>> =
        v_aux.map(|a| a.comps.iter().map(Geobucket::from_poly).collect());

    for pos in 0..rank {
        while let Some(t) = work[pos].pop_lt(ring) {
            let tmask = divmask(&t.m);
            let mut hit = None;
            for &ri in &by_pos[pos] {
                let e = &elems[ri as usize];
                if e.mask & !tmask == 0 && e.lm.divides(&t.m) {
                    hit = Some(ri as usize);
                    break;
                }
            }
            let Some(ri) = hit else {
                out[pos].push(t);
                continue;
            };
            let e = &elems[ri];
            let m = t.m.div(&e.lm);
            let c = field.neg(t.c); // reducers are monic
            work[pos].add_scaled(ring, c, &m, &e.f.comps[pos], true);
            for p2 in (pos + 1)..rank {
                let comp = &e.f.comps[p2];
                if !comp.is_zero() {
                    work[p2].add_scaled(ring, c, &m, comp, false);
                }
            }
            if let (Some(aw), Some(ea)) = (aux_work.as_mut(), e.aux.as_ref()) {
                for (k, bucket) in aw.iter_mut().enumerate().take(aux_rank) {
                    let comp = &ea.comps[k];
                    if !comp.is_zero() {
                        bucket.add_scaled(ring, c, &m, comp, false);
                    }
                }
            }
        }
    }

    let f = ModuleElement {
        comps: out.into_iter().map(|terms| Poly { terms }).collect(),
    };
    debug_assert!(f.comps.iter().all(|p| ring.poly_is_canonical(p)));
    let aux = aux_work.map(|aw| ModuleElement {
        comps: aw.into_iter().map(|b| b.into_poly(ring)).collect(),
    });
    (f, aux)
}

/// Full normal form of `v` against a fixed list of (not necessarily monic)
/// reducers.
pub(crate) fn normal_form(
    fm: &FreeModule,
    elements: &[ModuleElement],
    v: &ModuleElement,
) -> ModuleElement {
    let ring = fm.ring();
    let field = ring.field();
    let mut elems: Vec<Elt> = Vec::new();
    let mut by_pos: Vec<Vec<u32>> = vec![Vec::new(); fm.rank()];
    for e in elements {
        if e.is_zero() {
            continue;
        }
        let (pos, lt) = fm.lead(e).expect("nonzero");
        let f = fm.elt_scale(field.inv(lt.c), e);
        by_pos[pos].push(elems.len() as u32);
        elems.push(Elt {
            f,
            aux: None,
            pos,
            lm: lt.m,
            mask: divmask(&lt.m),
            untracked: false,
        });
    }
    cascade_reduce(fm, &elems, &by_pos, v, None, 0).0
}

/// Reduced-basis presentation: minimal leads, monic, tails fully reduced,
/// sorted by (position, lead monomial) ascending.  Applied only after the
/// engine has finished; the submodule is unchanged.
pub(crate) fn interreduce(fm: &FreeModule, basis: Vec<ModuleElement>) -> Vec<ModuleElement> {
    let ring = fm.ring();
    let field = ring.field();
    let mut items: Vec<(usize, OrderKey, Monomial, ModuleElement)> = basis
        .into_iter()
        .filter(|e| !e.is_zero())
        .map(|e| {
            let (pos, lt) = fm.lead(&e).expect("nonzero");
            let e = fm.elt_scale(field.inv(lt.c), &e);
            (pos, ring.key(&lt.m), lt.m, e)
        })
        .collect();
    items.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));

    // Keep only minimal leads; ascending order guarantees any divisor of a
    // lead comes earlier.
    let mut kept: Vec<(usize, Monomial, ModuleElement)> = Vec::new();
    for (pos, _, lm, e) in items {
        if !kept.iter().any(|(kp, km, _)| *kp == pos && km.divides(&lm)) {
            kept.push((pos, lm, e));
        }
    }

    // Tail-reduce each element against the others.  Leads are pairwise
    // indivisible, so they survive; a single full pass yields the reduced
    // basis because reducedness only depends on the (fixed) lead terms.
    let n = kept.len();
    (0..n)
        .map(|k| {
            let others: Vec<ModuleElement> = (0..n)
                .filter(|&i| i != k)
                .map(|i| kept[i].2.clone())
                .collect();
            normal_form(fm, &others, &kept[k].2)
        })
        .collect()
}
