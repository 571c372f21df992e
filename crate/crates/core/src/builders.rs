//! Constructors for example semigraphs: cut-down path semigraphs, shifts of
//! finite type, products and segment closures.
//!
//! Every builder produces a [`RawSemigraph`] and runs it through
//! [`Semigraph::validate`]; a validation failure here is a bug in the
//! builder, hence the `expect`s.

use std::collections::{BTreeSet, HashMap};

use crate::degree::Degree;
use crate::semigraph::{ElementId, RawSemigraph, Semigraph};

/// Vertices and edges of a directed graph; an edge is `(id, range, source)`.
#[derive(Clone, Debug, Default)]
pub struct DigraphSkeleton {
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String, String)>,
}

impl DigraphSkeleton {
    pub fn new(vertices: &[&str]) -> Self {
        DigraphSkeleton { vertices: vertices.iter().map(|v| v.to_string()).collect(), edges: Vec::new() }
    }

    /// Adds an edge `id` from `source` to `range`.
    pub fn edge(mut self, id: &str, source: &str, range: &str) -> Self {
        self.edges.push((id.to_string(), range.to_string(), source.to_string()));
        self
    }

    pub fn check(&self) -> Result<(), String> {
        for (id, r, s) in &self.edges {
            for end in [r, s] {
                if !self.vertices.contains(end) {
                    return Err(format!("edge {id} references unknown vertex {end}"));
                }
            }
        }
        Ok(())
    }
}

/// A shift of finite type cut at a maximal word length.
#[derive(Clone, Debug)]
pub struct SftSpec {
    pub alphabet: Vec<String>,
    pub forbidden: Vec<Vec<String>>,
    pub cut: usize,
}

impl SftSpec {
    pub fn check(&self) -> Result<(), String> {
        if self.cut == 0 {
            return Err("cut length must be at least 1".into());
        }
        for w in &self.forbidden {
            if w.is_empty() {
                return Err("forbidden words must be nonempty".into());
            }
            if let Some(s) = w.iter().find(|s| !self.alphabet.contains(s)) {
                return Err(format!("forbidden word uses symbol {s} outside the alphabet"));
            }
        }
        Ok(())
    }
}

/// Identifier of the empty word in [`build_sft`].
pub const EMPTY_WORD: &str = "ε";

fn join_symbols(symbols: &[String], all_single_char: bool) -> String {
    if all_single_char {
        symbols.concat()
    } else {
        symbols.join(".")
    }
}

fn letter_names(n: usize) -> Vec<String> {
    match n {
        1 => vec!["t".to_string()],
        n if n <= 26 => (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect(),
        n => (0..n).map(|i| format!("x{i}")).collect(),
    }
}

/// ζₙ cut at word length `cut`: one vertex `v`, `n` loops, all words of length ≤ `cut`.
pub fn build_zeta(n: usize, cut: usize) -> Semigraph {
    assert!(n >= 1 && cut >= 1, "build_zeta needs n ≥ 1 and cut ≥ 1");
    let mut skeleton = DigraphSkeleton::new(&["v"]);
    for letter in letter_names(n) {
        skeleton = skeleton.edge(&letter, "v", "v");
    }
    build_path(&skeleton, cut)
}

/// The path semigraph of a digraph cut at length `cut`: vertices have degree
/// 0, composable edge paths of length ≤ `cut` have degree equal to their
/// length, and the product is path composition (`r(xy) = r(x)`).
pub fn build_path(skeleton: &DigraphSkeleton, cut: usize) -> Semigraph {
    skeleton.check().expect("invalid digraph skeleton");
    let single = skeleton.edges.iter().all(|(id, _, _)| id.chars().count() == 1);
    // A path is a sequence of edge indices e₁…e_m with s(eᵢ) = r(eᵢ₊₁).
    let mut layers: Vec<Vec<Vec<usize>>> = vec![(0..skeleton.edges.len()).map(|i| vec![i]).collect()];
    for _ in 1..cut {
        let prev = layers.last().unwrap();
        let next: Vec<Vec<usize>> = prev
            .iter()
            .flat_map(|p| {
                let last = *p.last().unwrap();
                skeleton.edges.iter().enumerate().filter(move |(_, e)| e.1 == skeleton.edges[last].2).map(move |(j, _)| {
                    let mut q = p.clone();
                    q.push(j);
                    q
                })
            })
            .collect();
        if next.is_empty() {
            break;
        }
        layers.push(next);
    }

    let path_name = |p: &[usize]| {
        let syms: Vec<String> = p.iter().map(|&i| skeleton.edges[i].0.clone()).collect();
        join_symbols(&syms, single)
    };
    let mut raw = RawSemigraph::new(1);
    for v in &skeleton.vertices {
        raw.element(v.clone(), vec![0]);
        raw.product(v.clone(), v.clone(), v.clone());
    }
    let mut paths: Vec<Vec<usize>> = Vec::new();
    for layer in &layers {
        for p in layer {
            raw.element(path_name(p), vec![p.len() as u32]);
            paths.push(p.clone());
        }
    }
    let known: BTreeSet<Vec<usize>> = paths.iter().cloned().collect();
    for p in &paths {
        let name = path_name(p);
        let range = &skeleton.edges[p[0]].1;
        let source = &skeleton.edges[*p.last().unwrap()].2;
        raw.product(range.clone(), name.clone(), name.clone());
        raw.product(name.clone(), source.clone(), name.clone());
        for q in &paths {
            if skeleton.edges[*p.last().unwrap()].2 != skeleton.edges[q[0]].1 {
                continue;
            }
            let pq: Vec<usize> = p.iter().chain(q).copied().collect();
            if known.contains(&pq) {
                raw.product(name.clone(), path_name(q), path_name(&pq));
            }
        }
    }
    Semigraph::validate(&raw).expect("path semigraph")
}

/// Allowed words of a shift of finite type with length ≤ cut, with the
/// empty word [`EMPTY_WORD`] as the unique vertex.
pub fn build_sft(spec: &SftSpec) -> Semigraph {
    spec.check().expect("invalid SFT spec");
    let single = spec.alphabet.iter().all(|s| s.chars().count() == 1);
    let allowed = |w: &[usize]| {
        spec.forbidden.iter().all(|f| {
            let f: Vec<usize> =
                f.iter().map(|s| spec.alphabet.iter().position(|a| a == s).expect("checked")).collect();
            !w.windows(f.len()).any(|win| win == f.as_slice())
        })
    };
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    let mut frontier: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..spec.cut {
        let next: Vec<Vec<usize>> = frontier
            .iter()
            .flat_map(|w| {
                (0..spec.alphabet.len()).map(move |a| {
                    let mut v = w.clone();
                    v.push(a);
                    v
                })
            })
            .filter(|w| allowed(w))
            .collect();
        words.extend(next.iter().cloned());
        frontier = next;
    }
    let name = |w: &[usize]| {
        if w.is_empty() {
            EMPTY_WORD.to_string()
        } else {
            let syms: Vec<String> = w.iter().map(|&i| spec.alphabet[i].clone()).collect();
            join_symbols(&syms, single)
        }
    };
    let index: BTreeSet<Vec<usize>> = words.iter().cloned().collect();
    let mut raw = RawSemigraph::new(1);
    for w in &words {
        raw.element(name(w), vec![w.len() as u32]);
    }
    for x in &words {
        for y in &words {
            let xy: Vec<usize> = x.iter().chain(y).copied().collect();
            if index.contains(&xy) {
                raw.product(name(x), name(y), name(&xy));
            }
        }
    }
    Semigraph::validate(&raw).expect("SFT semigraph")
}

/// The product semigraph: pairs, concatenated degrees, componentwise product.
pub fn build_product(left: &Semigraph, right: &Semigraph) -> Semigraph {
    let name = |x: ElementId, y: ElementId| format!("({},{})", left.name(x), right.name(y));
    let mut raw = RawSemigraph::new(left.rank() + right.rank());
    for x in left.ids() {
        for y in right.ids() {
            raw.element(name(x, y), left.degree(x).concat(right.degree(y)).coords().to_vec());
        }
    }
    for x1 in left.ids() {
        for x2 in left.ids() {
            let Some(x) = left.product(x1, x2) else { continue };
            for y1 in right.ids() {
                for y2 in right.ids() {
                    if let Some(y) = right.product(y1, y2) {
                        raw.product(name(x1, y1), name(x2, y2), name(x, y));
                    }
                }
            }
        }
    }
    Semigraph::validate(&raw).expect("product semigraph")
}

/// All segments of the given elements, with the product of `s` kept iff it
/// lands inside the closure.
pub fn close_subset(sg: &Semigraph, subset: &[ElementId]) -> Semigraph {
    let mut closure = BTreeSet::new();
    for &x in subset {
        let d = sg.degree(x);
        for m in d.below() {
            for n in d.below() {
                if m.le(&n) {
                    closure.insert(sg.segment(x, &m, &n).expect("m ≤ n ≤ d(x)"));
                }
            }
        }
    }
    let mut raw = RawSemigraph::new(sg.rank());
    for &x in &closure {
        raw.element(sg.name(x), sg.degree(x).coords().to_vec());
    }
    for &x in &closure {
        for &y in &closure {
            if let Some(z) = sg.product(x, y).filter(|z| closure.contains(z)) {
                raw.product(sg.name(x), sg.name(y), sg.name(z));
            }
        }
    }
    Semigraph::validate(&raw).expect("segment closure")
}

/// The one-vertex semigraph `{v}` of the given rank.
pub fn build_point(rank: usize) -> Semigraph {
    let mut raw = RawSemigraph::new(rank);
    raw.element("v", Degree::zero(rank).coords().to_vec()).product("v", "v", "v");
    Semigraph::validate(&raw).expect("point")
}

/// Single-vertex 2-semigraph {v, e, f, ef} with ef = fe.
pub fn build_commuting_square() -> Semigraph {
    let mut raw = RawSemigraph::new(2);
    raw.element("v", vec![0, 0]).element("e", vec![1, 0]).element("f", vec![0, 1]).element("ef", vec![1, 1]);
    for x in ["v", "e", "f", "ef"] {
        raw.product("v", x, x).product(x, "v", x);
    }
    raw.product("e", "f", "ef").product("f", "e", "ef");
    Semigraph::validate(&raw).expect("commuting square")
}

/// Named fixtures used throughout the tests, documentation and CLI.
pub mod fixtures {
    use super::*;

    /// ζ₂ cut at length 2: v, a, b, aa, ab, ba, bb.
    pub fn f1() -> Semigraph {
        build_zeta(2, 2)
    }

    /// ζ₁ cut at length 3: v, t, tt, ttt.
    pub fn f2() -> Semigraph {
        build_zeta(1, 3)
    }

    /// {v, e, f, ef} with degrees (0,0), (1,0), (0,1), (1,1).
    pub fn f3() -> Semigraph {
        build_commuting_square()
    }

    /// Binary shift forbidding `11`, cut at length 2.
    pub fn f4() -> Semigraph {
        build_sft(&golden_mean(2))
    }

    /// Two vertices v, w and one edge a from w to v.
    pub fn f5() -> Semigraph {
        build_path(&DigraphSkeleton::new(&["v", "w"]).edge("a", "w", "v"), 1)
    }

    pub fn golden_mean(cut: usize) -> SftSpec {
        SftSpec { alphabet: vec!["0".into(), "1".into()], forbidden: vec![vec!["1".into(), "1".into()]], cut }
    }

    pub fn all() -> Vec<(&'static str, Semigraph)> {
        vec![("F1", f1()), ("F2", f2()), ("F3", f3()), ("F4", f4()), ("F5", f5())]
    }
}

/// Counts elements by name, for quick structural comparisons in tests.
pub fn name_set(sg: &Semigraph) -> BTreeSet<String> {
    sg.ids().map(|x| sg.name(x).to_string()).collect()
}

/// Whether two semigraphs are isomorphic via the given name bijection.
pub fn isomorphic_via(a: &Semigraph, b: &Semigraph, map: &HashMap<String, String>) -> bool {
    if a.len() != b.len() || a.rank() != b.rank() {
        return false;
    }
    let image = |x: ElementId| map.get(a.name(x)).and_then(|n| b.lookup(n).ok());
    a.ids().all(|x| {
        let Some(bx) = image(x) else { return false };
        b.degree(bx) == a.degree(x)
            && a.ids().all(|y| {
                let Some(by) = image(y) else { return false };
                a.product(x, y).and_then(image) == b.product(bx, by)
            })
    })
}
