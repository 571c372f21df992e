#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;

use sga_core::builders::{self, fixtures, DigraphSkeleton, SftSpec};
use sga_core::rep::RepModel;
use sga_core::{Algebra, ElementId, QAlgebraElement, Rational, Semigraph, StandardWord};

/// A builder output with at most `max_len` elements, described by a label.
pub fn random_semigraph(rng: &mut StdRng, max_len: usize) -> (String, Semigraph) {
    loop {
        let (label, sg) = match rng.gen_range(0..5) {
            0 => {
                let (n, cut) = (rng.gen_range(1..=3), rng.gen_range(1..=4));
                (format!("zeta({n},{cut})"), builders::build_zeta(n, cut))
            }
            1 => random_path(rng),
            2 => random_sft(rng),
            3 => {
                let small = [fixtures::f5(), builders::build_zeta(1, 1), builders::build_zeta(1, 2), builders::build_point(1)];
                let a = small.choose(rng).unwrap();
                let b = small.choose(rng).unwrap();
                ("product".to_string(), builders::build_product(a, b))
            }
            _ => {
                let (_, base) = random_path(rng);
                let picks: Vec<ElementId> = base.ids().filter(|_| rng.gen_bool(0.3)).collect();
                if picks.is_empty() {
                    continue;
                }
                ("closure".to_string(), builders::close_subset(&base, &picks))
            }
        };
        if sg.len() <= max_len {
            return (label, sg);
        }
    }
}

pub fn random_path(rng: &mut StdRng) -> (String, Semigraph) {
    let vertices = ["u", "v", "w"];
    let nv = rng.gen_range(1..=3);
    let mut skeleton = DigraphSkeleton::new(&vertices[..nv]);
    let mut desc = Vec::new();
    for id in ["a", "b", "c", "d"].iter().take(rng.gen_range(1..=4)) {
        let (s, r) = (vertices[rng.gen_range(0..nv)], vertices[rng.gen_range(0..nv)]);
        skeleton = skeleton.edge(id, s, r);
        desc.push(format!("{id}:{s}->{r}"));
    }
    let cut = rng.gen_range(1..=3);
    (format!("path[{}] cut {cut}", desc.join(" ")), builders::build_path(&skeleton, cut))
}

pub fn random_sft(rng: &mut StdRng) -> (String, Semigraph) {
    let alphabet: Vec<String> = ["0", "1", "2"][..rng.gen_range(1..=3)].iter().map(|s| s.to_string()).collect();
    let forbidden: Vec<Vec<String>> = (0..rng.gen_range(0..=2))
        .map(|_| (0..rng.gen_range(1..=2)).map(|_| alphabet.choose(rng).unwrap().clone()).collect())
        .collect();
    let spec = SftSpec { alphabet, forbidden, cut: rng.gen_range(1..=3) };
    (format!("sft{spec:?}"), builders::build_sft(&spec))
}

pub fn id(sg: &Semigraph, name: &str) -> ElementId {
    sg.lookup(name).unwrap()
}

/// A combination of up to three standard words with small integer coefficients.
pub fn random_element(rng: &mut StdRng, alg: &Algebra<'_>, words: &[StandardWord]) -> QAlgebraElement {
    let mut x = alg.zero();
    for _ in 0..rng.gen_range(1..=3) {
        let c = [-2, -1, 1, 2][rng.gen_range(0..4)];
        x.add_term(words.choose(rng).unwrap().clone(), Rational::from_integer(c.into()));
    }
    x
}

/// A tuple of one to three elements, possibly with repeats.
pub fn random_tuple(rng: &mut StdRng, sg: &Semigraph) -> Vec<ElementId> {
    (0..rng.gen_range(1..=3)).map(|_| ElementId(rng.gen_range(0..sg.len()) as u32)).collect()
}

/// Decisions taken through the representation for a pair of elements.
pub fn verdicts(model: &RepModel<'_>, alg: &Algebra<'_>, a: &QAlgebraElement, b: &QAlgebraElement) -> Vec<bool> {
    let ra = model.represent(a).unwrap();
    let rb = model.represent(b).unwrap();
    let ab = model.represent(&alg.multiply(a, b).unwrap()).unwrap();
    let ba = model.represent(&alg.multiply(b, a).unwrap()).unwrap();
    let sum = model.represent(&(a + b)).unwrap();
    vec![
        ra.equals(&rb).unwrap(),
        ra.is_zero(),
        rb.is_zero(),
        ab.equals(&(&ra * &rb)).unwrap(),
        ab.is_zero(),
        (&ab - &ba).is_zero(),
        sum.equals(&(&ra + &rb)).unwrap(),
        sum.is_zero(),
    ]
}
