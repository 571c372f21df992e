//! Executable checks of the structural statements about freely generated
//! semigraph algebras, evaluated exactly in a block model.
//!
//! Every checker takes a [`RepModel`], so the same code runs on faithful
//! models and on deliberately corrupted ones. Standard projections are
//! diagonal 0/1 operators in the block basis; the searches below therefore
//! work with their supports, while identities are compared as exact
//! operators.

use std::collections::{BTreeMap, BTreeSet};

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::algebra::{adjoint_tokens, format_tokens, projection_closure, Algebra, ProjectionSet, StandardWord, Token};
use crate::rep::{show_projection, RepModel, RepOperator};
use crate::report::CheckReport;
use crate::semigraph::{ElementId, Leg, Semigraph};
use crate::Rational;

type Op = RepOperator<Rational>;

/// Enumeration bounds of the checkers.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Bounds {
    /// Maximal token-word length.
    pub word_len: usize,
    /// Maximal number of `(1 − P_b)` factors in enumerated standard projections.
    pub factors: usize,
    /// Maximal number of extra `(1 − P_c)` factors in a cancelling witness.
    pub witness_factors: usize,
    /// Maximal explicit join arity in the freeness check.
    pub max_join: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { word_len: 3, factors: 2, witness_factors: 2, max_join: 2 }
    }
}

impl Bounds {
    pub fn uniform(n: usize) -> Self {
        Bounds { word_len: n, factors: n, witness_factors: n, max_join: n }
    }
}

/// Half-standard words with their range projections in one model.
struct HalfStandard {
    words: Vec<StandardWord>,
    ops: Vec<Op>,
    supports: Vec<FixedBitSet>,
}

impl HalfStandard {
    fn new(model: &RepModel<'_>) -> Self {
        let words = Algebra::new(model.semigraph()).enumerate_half_standard();
        let ops: Vec<Op> = words.par_iter().map(|w| model.represent_word(&w.range_projection())).collect();
        let supports = ops.iter().map(|op| diagonal_support(op, model.dim())).collect();
        HalfStandard { words, ops, supports }
    }
}

fn diagonal_support(op: &Op, dim: usize) -> FixedBitSet {
    let mut bits = FixedBitSet::with_capacity(dim);
    for (&(r, c), _) in op.entries() {
        if r == c {
            bits.insert(c as usize);
        }
    }
    bits
}

fn show_word(sg: &Semigraph, w: &StandardWord) -> String {
    w.display(sg).to_string()
}

fn show_standard(sg: &Semigraph, half: &HalfStandard, a: usize, bs: &[usize]) -> String {
    let mut s = format!("P[{}]", show_word(sg, &half.words[a]));
    for &b in bs {
        s.push_str(&format!("(1-P[{}])", show_word(sg, &half.words[b])));
    }
    s
}

/// `x·(1 − y)`.
fn times_complement(x: &Op, y: &Op) -> Op {
    x - &(x * y)
}

fn equal(a: &Op, b: &Op) -> bool {
    a.equals(b).expect("operators of one model")
}

/// Relations (i)–(vi) as exact operator identities over T and T × T.
pub fn check_relations(model: &RepModel<'_>) -> CheckReport {
    let sg = model.semigraph();
    let letters: Vec<Op> = sg.ids().map(|t| model.letter(Token::new(t, false))).collect();
    let adj: Vec<Op> = letters.iter().map(Op::transpose).collect();
    let q: Vec<Op> = letters.iter().zip(&adj).map(|(l, a)| a * l).collect();
    let zero: Op = model.zero();
    let name = |x: ElementId| sg.name(x).to_string();
    let mut report = CheckReport::new("relations");

    for t in sg.ids() {
        let (l, a) = (&letters[t.index()], &adj[t.index()]);
        report.record(if equal(&(&(l * a) * l), l) { Ok(()) } else { Err(format!("(i) t t* t ≠ t for t = {}", name(t))) });
    }
    for &e in sg.vertices() {
        let l = &letters[e.index()];
        let ok = equal(l, &adj[e.index()]) && equal(&(l * l), l);
        report.record(if ok { Ok(()) } else { Err(format!("(ii) {} is not a projection", name(e))) });
    }
    for s in sg.ids() {
        for t in sg.ids() {
            let prod = &letters[s.index()] * &letters[t.index()];
            let expected = sg.product(s, t).map_or(&zero, |st| &letters[st.index()]);
            report.record(if equal(&prod, expected) {
                Ok(())
            } else {
                Err(match sg.product(s, t) {
                    Some(st) => format!("(iii) {}·{} ≠ {}", name(s), name(t), name(st)),
                    None => format!("(iv) {}·{} ≠ 0 although the product is undefined", name(s), name(t)),
                })
            });
        }
    }
    for s in sg.ids() {
        for t in sg.ids().filter(|&t| t > s) {
            let (a, b) = (&q[s.index()], &q[t.index()]);
            report.record(if equal(&(a * b), &(b * a)) {
                Ok(())
            } else {
                Err(format!("(v) Q_{} and Q_{} do not commute", name(s), name(t)))
            });
        }
    }
    for x in sg.ids() {
        for y in sg.ids() {
            let lhs = &adj[x.index()] * &letters[y.index()];
            let mut rhs = zero.clone();
            for &(e, f) in sg.min_common_extensions(x, y) {
                let yf = sg.product(y, f).expect("common extension");
                rhs = &rhs + &(&(&letters[e.index()] * &q[yf.index()]) * &adj[f.index()]);
            }
            report.record(if equal(&lhs, &rhs) {
                Ok(())
            } else {
                Err(format!("(vi) {}*·{} ≠ Σ e·Q_(yf)·f* at ({}, {})", name(x), name(y), name(x), name(y)))
            });
        }
    }
    report.finish(true)
}

/// For every token word up to `max_len`: the representation of its normal
/// form equals the product of its letters' operators.
pub fn check_normal_form(model: &RepModel<'_>, max_len: usize) -> CheckReport {
    let sg = model.semigraph();
    let alg = Algebra::new(sg);
    let words = alg.token_words(max_len);
    let outcomes: Vec<Result<(), String>> = words
        .par_iter()
        .map(|w| {
            let nf = alg.normal_form::<Rational>(w).expect("nonempty word");
            let rep = model.represent(&nf).expect("same semigraph");
            if equal(&rep, &model.letter_product(w)) {
                Ok(())
            } else {
                Err(format!("{} ↦ {}", format_tokens(sg, w), nf.display(sg)))
            }
        })
        .collect();
    let mut report = CheckReport::new("normal-form").bound("word_len", max_len);
    outcomes.into_iter().for_each(|o| report.record(o));
    report.finish(true)
}

/// Inverse-semigroup laws of the word set, up to word length `max_len`:
/// `w w* w = w`, normal forms agree with letter products, source and range
/// projections of words commute, and range projections of distinct elements
/// of equal degree are orthogonal.
pub fn check_inverse_semigroup(model: &RepModel<'_>, max_len: usize) -> CheckReport {
    let sg = model.semigraph();
    let alg = Algebra::new(sg);
    let words = alg.token_words(max_len);
    let mut report = CheckReport::new("inverse-semigroup").bound("word_len", max_len);

    type Outcome = (Result<(), String>, Result<(), String>, Vec<StandardWord>, Vec<StandardWord>);
    let outcomes: Vec<Outcome> = words
        .par_iter()
        .map(|w| {
            let star = adjoint_tokens(w);
            let nf = |tokens: &[Token]| alg.normal_form::<Rational>(tokens).expect("nonempty word");
            let base = nf(w);
            let rep = model.represent(&base).expect("same semigraph");
            let www: Vec<Token> = w.iter().chain(&star).chain(w.iter()).copied().collect();
            let law = if equal(&model.represent(&nf(&www)).expect("same semigraph"), &rep) {
                Ok(())
            } else {
                Err(format!("w w* w ≠ w for w = {}", format_tokens(sg, w)))
            };
            let letters = if equal(&rep, &model.letter_product(w)) {
                Ok(())
            } else {
                Err(format!("normal form of {} differs from the letter product", format_tokens(sg, w)))
            };
            let ws: Vec<Token> = star.iter().chain(w.iter()).copied().collect();
            let sw: Vec<Token> = w.iter().chain(star.iter()).copied().collect();
            let source = nf(&ws).terms().map(|(x, _)| x.clone()).collect();
            let range = nf(&sw).terms().map(|(x, _)| x.clone()).collect();
            (law, letters, source, range)
        })
        .collect();

    let mut idempotents: BTreeSet<Vec<StandardWord>> = BTreeSet::new();
    for (law, letters, source, range) in outcomes {
        report.record(law);
        report.record(letters);
        idempotents.insert(source);
        idempotents.insert(range);
    }
    idempotents.remove(&Vec::new());
    let idem: Vec<(String, Op)> = idempotents
        .iter()
        .map(|ws| {
            let mut op: Op = model.zero();
            for w in ws {
                op = &op + &model.represent_word(w);
            }
            (ws.iter().map(|w| show_word(sg, w)).collect::<Vec<_>>().join(" + "), op)
        })
        .collect();
    let commute: Vec<Result<(), String>> = (0..idem.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let idem = &idem;
            (i + 1..idem.len()).map(move |j| {
                let (a, b) = (&idem[i].1, &idem[j].1);
                if equal(&(a * b), &(b * a)) {
                    Ok(())
                } else {
                    Err(format!("{} and {} do not commute", idem[i].0, idem[j].0))
                }
            })
        })
        .collect();
    commute.into_iter().for_each(|o| report.record(o));

    for x in sg.edges() {
        for y in sg.edges().filter(|&y| y != x && sg.degree(y) == sg.degree(x)) {
            let tokens = [Token::new(x, false), Token::new(x, true), Token::new(y, false), Token::new(y, true)];
            let nf = alg.normal_form::<Rational>(&tokens).expect("nonempty word");
            let ok = nf.is_zero() && model.letter_product::<Rational>(&tokens).is_zero();
            report.record(if ok { Ok(()) } else { Err(format!("P_{} P_{} ≠ 0", sg.name(x), sg.name(y))) });
        }
    }
    report.finish(true)
}

/// Order laws over all ordered pairs: `Q_s = Q_t ⟺ s = t`,
/// `Q_t < Q_s ⟺ s < t`, and `Q_s Q_t < Q_t` whenever `s ≰ t`.
pub fn check_order_laws(model: &RepModel<'_>) -> CheckReport {
    let sg = model.semigraph();
    let q: Vec<Op> = sg.ids().map(|t| model.projection(&ProjectionSet::generator(t))).collect();
    let below = |a: &Op, b: &Op| equal(&(a * b), a);
    let mut report = CheckReport::new("order-laws");
    for s in sg.ids() {
        for t in sg.ids() {
            let (qs, qt) = (&q[s.index()], &q[t.index()]);
            let (ns, nt) = (sg.name(s), sg.name(t));
            let same = equal(qs, qt);
            report.record(if same == (s == t) {
                Ok(())
            } else {
                Err(format!("Q_{nt} = Q_{ns} is {same} but {nt} = {ns} is {}", s == t))
            });
            let strictly = below(qt, qs) && !same;
            let expected = s != t && sg.leq(s, t);
            report.record(if strictly == expected {
                Ok(())
            } else {
                Err(format!("Q_{nt} < Q_{ns} is {strictly} but {ns} < {nt} is {expected}"))
            });
            if !sg.leq(s, t) {
                let prod = qs * qt;
                let ok = below(&prod, qt) && !equal(&prod, qt);
                report.record(if ok { Ok(()) } else { Err(format!("Q_{ns} Q_{nt} is not strictly below Q_{nt}")) });
            }
        }
    }
    report.finish(true)
}

/// Both freeness conditions.
///
/// (i) `P_a ∉ 𝒫` for every half-standard `a` with a non-unit leg.
/// (ii) For every `p ∈ 𝒫` the join of all half-standard `P_a < p` stays
/// strictly below `p`; since a join over fewer projections is smaller, this
/// covers every finite subfamily. Subfamilies of size up to `max_join` are
/// evaluated as well. Joins are computed distributively as
/// `p − p∏(1 − P_a)`.
pub fn check_free(model: &RepModel<'_>, max_join: usize) -> CheckReport {
    let sg = model.semigraph();
    let half = HalfStandard::new(model);
    let ps = projection_closure(sg);
    let p_ops: Vec<Op> = ps.iter().map(|p| model.projection(p)).collect();
    let zero: Op = model.zero();

    let mut first = CheckReport::new("free (i)");
    for (i, w) in half.words.iter().enumerate() {
        if w.left().is_unit() {
            continue;
        }
        let pa = &half.ops[i];
        let clash = std::iter::once((String::from("0"), &zero))
            .chain(ps.iter().zip(&p_ops).map(|(p, op)| (show_projection(sg, p), op)))
            .find(|(_, op)| equal(pa, op));
        first.record(match clash {
            None => Ok(()),
            Some((q, _)) => Err(format!("P[{}] = {q}", show_word(sg, w))),
        });
    }

    let outcomes: Vec<Vec<Result<(), String>>> = ps
        .par_iter()
        .zip(&p_ops)
        .map(|(p, pop)| {
            let candidates: Vec<usize> = (0..half.words.len())
                .filter(|&i| {
                    let pa = &half.ops[i];
                    equal(&(pa * pop), pa) && !equal(pa, pop)
                })
                .collect();
            let mut families: Vec<Vec<usize>> = Vec::new();
            subsets_up_to(&candidates, max_join, &mut |s| families.push(s.to_vec()));
            if candidates.len() > max_join {
                families.push(candidates.clone());
            }
            families
                .into_iter()
                .map(|fam| {
                    let rest = fam.iter().fold(pop.clone(), |x, &i| times_complement(&x, &half.ops[i]));
                    if rest.is_zero() {
                        let names: Vec<String> = fam.iter().map(|&i| show_word(sg, &half.words[i])).collect();
                        Err(format!("join of P[{}] equals {}", names.join("], P["), show_projection(sg, p)))
                    } else {
                        Ok(())
                    }
                })
                .collect()
        })
        .collect();
    let mut second = CheckReport::new("free (ii)");
    outcomes.into_iter().flatten().for_each(|o| second.record(o));
    CheckReport::combine("free", vec![first.finish(true), second.finish(true)])
}

/// Calls `visit` on every nonempty subset of `items` with at most `max` elements.
fn subsets_up_to(items: &[usize], max: usize, visit: &mut impl FnMut(&[usize])) {
    fn go(items: &[usize], start: usize, max: usize, cur: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
        if cur.len() == max {
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            visit(cur);
            go(items, i + 1, max, cur, visit);
            cur.pop();
        }
    }
    go(items, 0, max, &mut Vec::new(), visit);
}

/// A nonzero standard projection `P_a ∏(1 − P_b)` with its support.
#[derive(Clone, Debug)]
struct Standard {
    a: usize,
    bs: Vec<usize>,
    support: FixedBitSet,
}

/// Distinct nonzero standard projections built from the half-standard words
/// in `pool`, with at most `factors` complement factors.
fn standard_projections(half: &HalfStandard, pool: &[usize], factors: usize) -> Vec<Standard> {
    let mut seen: BTreeMap<Vec<usize>, Standard> = BTreeMap::new();
    for &a in pool {
        let base = &half.supports[a];
        if base.is_clear() {
            continue;
        }
        let relevant: Vec<usize> =
            pool.iter().copied().filter(|&b| !half.supports[b].is_disjoint(base)).collect();
        let mut record = |bs: &[usize]| {
            let mut support = base.clone();
            for &b in bs {
                support.difference_with(&half.supports[b]);
            }
            if !support.is_clear() {
                seen.entry(support.ones().collect()).or_insert(Standard { a, bs: bs.to_vec(), support });
            }
        };
        record(&[]);
        subsets_up_to(&relevant, factors, &mut record);
    }
    seen.into_values().collect()
}

/// Weak freeness: for each coordinate `i`, no nonzero standard projection of
/// the sub-algebra without the `i`-th direction lies below
/// `Σ_{b ∈ T^(e_i)} P_b`. Same-degree range projections are orthogonal, so
/// the full sum dominates every partial one.
pub fn check_weakly_free(model: &RepModel<'_>, factors: usize) -> CheckReport {
    let sg = model.semigraph();
    let half = HalfStandard::new(model);
    let mut parts = Vec::new();
    for i in 0..sg.rank() {
        let mut report = CheckReport::new(format!("weakly-free[{}]", i + 1)).bound("factors", factors);
        let pool: Vec<usize> = (0..half.words.len())
            .filter(|&h| sg.leg_degree(half.words[h].left()).coords()[i] == 0)
            .collect();
        let unit = crate::degree::Degree::unit(sg.rank(), i);
        let fibre: Vec<ElementId> = sg.ids().filter(|&b| sg.degree(b) == &unit).collect();
        let mut cover = FixedBitSet::with_capacity(model.dim());
        for &b in &fibre {
            let w = StandardWord::new(sg, Leg::Elem(b), [], Leg::Unit).expect("generator");
            cover.union_with(&diagonal_support(&model.represent_word(&w.range_projection()), model.dim()));
        }
        for p in standard_projections(&half, &pool, factors) {
            report.record(if p.support.is_subset(&cover) {
                let names: Vec<&str> = fibre.iter().map(|&b| sg.name(b)).collect();
                Err(format!("{} ≤ Σ P_b over {{{}}}", show_standard(sg, &half, p.a, &p.bs), names.join(",")))
            } else {
                Ok(())
            });
        }
        parts.push(report.finish(true));
    }
    CheckReport::combine("weakly-free", parts)
}

/// Cancellation: for every standard word `w` of nonzero degree and every
/// nonzero standard projection `p` (bounded), search a nonzero standard
/// projection `q = p·P_{a'}·∏(1 − P_c) ≤ p` with `P_{a'} ≤ P_a` and
/// `q w q = 0`. A pair without a witness inside the bounds is a bounded
/// failure, not a disproof.
pub fn check_cancelling(model: &RepModel<'_>, factors: usize, witness_factors: usize) -> CheckReport {
    let sg = model.semigraph();
    let dim = model.dim();
    let half = HalfStandard::new(model);
    let all: Vec<usize> = (0..half.words.len()).collect();
    let sps = standard_projections(&half, &all, factors);
    let words: Vec<StandardWord> = Algebra::new(sg)
        .enumerate_standard_words()
        .into_iter()
        .filter(|w| w.degree(sg).iter().any(|&d| d != 0))
        .collect();
    let maps: Vec<Vec<u32>> = words
        .par_iter()
        .map(|w| {
            let mut m = vec![u32::MAX; dim];
            for (r, c) in model.word_map(w) {
                m[c as usize] = r;
            }
            m
        })
        .collect();
    let below: Vec<Vec<usize>> = (0..half.words.len())
        .map(|a| all.iter().copied().filter(|&x| half.supports[x].is_subset(&half.supports[a])).collect())
        .collect();

    let outcomes: Vec<(Result<(), String>, Option<String>)> = maps
        .par_iter()
        .enumerate()
        .flat_map_iter(|(wi, map)| {
            let (sps, half, below, words) = (&sps, &half, &below, &words);
            sps.iter().map(move |p| {
                let found = below[p.a].iter().find_map(|&a2| {
                    let mut q = p.support.clone();
                    q.intersect_with(&half.supports[a2]);
                    if q.is_clear() {
                        return None;
                    }
                    let mut extra = Vec::new();
                    search_witness(half, map, q, witness_factors, &mut extra).then_some((a2, extra))
                });
                let pair = format!("w = {}, p = {}", show_word(sg, &words[wi]), show_standard(sg, half, p.a, &p.bs));
                match found {
                    Some((a2, extra)) => {
                        let cut: String =
                            extra.iter().map(|&c| format!("(1-P[{}])", show_word(sg, &half.words[c]))).collect();
                        let q = format!("q = p·P[{}]{cut}", show_word(sg, &half.words[a2]));
                        (Ok(()), Some(format!("{pair}: {q}")))
                    }
                    None => (Err(pair), None),
                }
            })
        })
        .collect();
    let mut report =
        CheckReport::new("cancelling").bound("factors", factors).bound("witness_factors", witness_factors);
    for (o, cert) in outcomes {
        report.record(o);
        if let Some(c) = cert {
            report.certify(c);
        }
    }
    report.finish(false)
}

/// Removes supports of further half-standard projections from `q` until
/// `q w q = 0`, using at most `budget` of them. Every removal must hit the
/// first offending column or its image, which keeps the search complete.
fn search_witness(half: &HalfStandard, map: &[u32], q: FixedBitSet, budget: usize, chosen: &mut Vec<usize>) -> bool {
    if q.is_clear() {
        return false;
    }
    let offending = q.ones().find(|&c| map[c] != u32::MAX && q.contains(map[c] as usize));
    let Some(c) = offending else { return true };
    if budget == 0 {
        return false;
    }
    let image = map[c] as usize;
    for (h, s) in half.supports.iter().enumerate() {
        if !(s.contains(c) || s.contains(image)) {
            continue;
        }
        let mut next = q.clone();
        next.difference_with(s);
        chosen.push(h);
        if search_witness(half, map, next, budget - 1, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// For every coordinate `i`, `a ∈ T^(e_i)` and standard word `w` of the
/// sub-algebra without the `i`-th direction: `P_a w (1 − Σ_{b ∈ T^(e_i)} P_b) = 0`.
pub fn check_lemma_mini22(model: &RepModel<'_>) -> CheckReport {
    let sg = model.semigraph();
    let words = Algebra::new(sg).enumerate_standard_words();
    let mut parts = Vec::new();
    for i in 0..sg.rank() {
        let unit = crate::degree::Degree::unit(sg.rank(), i);
        let fibre: Vec<ElementId> = sg.ids().filter(|&b| sg.degree(b) == &unit).collect();
        let range = |b: ElementId| -> Op {
            let w = StandardWord::new(sg, Leg::Elem(b), [], Leg::Unit).expect("generator");
            model.represent_word(&w.range_projection())
        };
        let sum = fibre.iter().fold(model.zero(), |acc: Op, &b| &acc + &range(b));
        let inside: Vec<&StandardWord> = words
            .iter()
            .filter(|w| {
                sg.leg_degree(w.left()).coords()[i] == 0 && sg.leg_degree(w.right()).coords()[i] == 0
            })
            .collect();
        let mut report = CheckReport::new(format!("lemma-mini22[{}]", i + 1));
        for &a in &fibre {
            let pa = range(a);
            for w in &inside {
                let x = &pa * &model.represent_word(w);
                report.record(if times_complement(&x, &sum).is_zero() {
                    Ok(())
                } else {
                    Err(format!("P_{} · {} · (1 − Σ P_b) ≠ 0", sg.name(a), show_word(sg, w)))
                });
            }
        }
        parts.push(report.finish(true));
    }
    CheckReport::combine("lemma-mini22", parts)
}

/// Nonzero standard projections are represented by nonzero operators:
/// whenever `P_a(1 − P_b) ≠ 0` for each `b` of a family (at most `factors`
/// of them), the whole product `P_a ∏(1 − P_b)` is nonzero. Products with one
/// factor are also compared against the algebra's own expansion.
pub fn check_standard_projections(model: &RepModel<'_>, factors: usize) -> CheckReport {
    let sg = model.semigraph();
    let alg = Algebra::new(sg);
    let half = HalfStandard::new(model);
    let n = half.words.len();
    let outcomes: Vec<Vec<Result<(), String>>> = (0..n)
        .into_par_iter()
        .map(|a| {
            let pa = &half.ops[a];
            let mut out = Vec::new();
            let admissible: Vec<usize> = (0..n).filter(|&b| !times_complement(pa, &half.ops[b]).is_zero()).collect();
            for &b in &admissible {
                let expanded = alg.standard_projection::<Rational>(&half.words[a], &[half.words[b].clone()]);
                let rep = model.represent(&expanded).expect("same semigraph");
                out.push(if equal(&rep, &times_complement(pa, &half.ops[b])) {
                    Ok(())
                } else {
                    Err(format!("expansion of {} disagrees with the operator", show_standard(sg, &half, a, &[b])))
                });
            }
            subsets_up_to(&admissible, factors, &mut |bs| {
                let x = bs.iter().fold(pa.clone(), |x, &b| times_complement(&x, &half.ops[b]));
                out.push(if x.is_zero() { Err(format!("{} = 0", show_standard(sg, &half, a, bs))) } else { Ok(()) });
            });
            out
        })
        .collect();
    let mut report = CheckReport::new("standard-projections").bound("factors", factors);
    outcomes.into_iter().flatten().for_each(|o| report.record(o));
    report.finish(true)
}

/// Every checker with the given bounds.
pub fn run_suite(model: &RepModel<'_>, bounds: Bounds) -> Vec<CheckReport> {
    vec![
        check_relations(model),
        check_normal_form(model, bounds.word_len),
        check_inverse_semigroup(model, bounds.word_len),
        check_order_laws(model),
        model.separation_check(),
        check_free(model, bounds.max_join),
        check_weakly_free(model, bounds.factors),
        check_cancelling(model, bounds.factors, bounds.witness_factors),
        check_lemma_mini22(model),
        check_standard_projections(model, bounds.factors),
    ]
}

/// Names accepted by [`run_named`].
pub const CHECK_NAMES: &[&str] = &[
    "relations",
    "normal-form",
    "inverse-semigroup",
    "order-laws",
    "separation",
    "free",
    "weakly-free",
    "cancelling",
    "lemma-mini22",
    "standard-projections",
];

pub fn run_named(model: &RepModel<'_>, name: &str, bounds: Bounds) -> Option<CheckReport> {
    Some(match name {
        "relations" => check_relations(model),
        "normal-form" => check_normal_form(model, bounds.word_len),
        "inverse-semigroup" => check_inverse_semigroup(model, bounds.word_len),
        "order-laws" => check_order_laws(model),
        "separation" => model.separation_check(),
        "free" => check_free(model, bounds.max_join),
        "weakly-free" => check_weakly_free(model, bounds.factors),
        "cancelling" => check_cancelling(model, bounds.factors, bounds.witness_factors),
        "lemma-mini22" => check_lemma_mini22(model),
        "standard-projections" => check_standard_projections(model, bounds.factors),
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::fixtures::*;
    use crate::rep::BlockMode;

    #[test]
    fn suite_passes_on_small_fixtures() {
        for sg in [f2(), f3(), f5()] {
            let model = RepModel::new(&sg, BlockMode::AllSubsets).unwrap();
            for r in run_suite(&model, Bounds { word_len: 2, ..Bounds::default() }) {
                assert!(r.passed(), "{r}");
            }
        }
    }

    #[test]
    fn subsets() {
        let mut seen = Vec::new();
        subsets_up_to(&[1, 2, 3], 2, &mut |s| seen.push(s.to_vec()));
        assert_eq!(seen, vec![vec![1], vec![1, 2], vec![1, 3], vec![2], vec![2, 3], vec![3]]);
    }
}
