use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

use sga_core::algebra::adjoint_tokens;
use sga_core::builders::fixtures::{self, f1, f2, f3, f5};
use sga_core::rep::{BlockMode, RepModel};
use sga_core::{Algebra, Leg, QAlgebraElement, QRepOperator, Rational, Semigraph, Token};

fn small_fixtures() -> Vec<Semigraph> {
    vec![f1(), f2(), f3(), f5()]
}

#[test]
fn projection_products_form_a_semilattice() {
    for sg in small_fixtures() {
        let alg = Algebra::new(&sg);
        let model = RepModel::new(&sg, BlockMode::AllSubsets).unwrap();
        let ps = alg.projections();
        let ops: Vec<QRepOperator> = ps.iter().map(|p| model.projection(p)).collect();
        for (i, p) in ps.iter().enumerate() {
            assert_eq!(&p.product(p, &sg), p);
            for (j, q) in ps.iter().enumerate() {
                let pq = p.product(q, &sg);
                assert_eq!(pq, q.product(p, &sg));
                assert_eq!(alg.projection_leq(p, q), pq == *p);
                let expected = &ops[i] * &ops[j];
                let actual: QRepOperator = model.projection(&pq);
                assert!(actual.equals(&expected).unwrap());
                for r in ps.iter().step_by(3) {
                    assert_eq!(pq.product(r, &sg), p.product(&q.product(r, &sg), &sg));
                }
            }
        }
    }
}

#[test]
fn star_products_agree_with_normal_forms_and_operators() {
    for sg in small_fixtures() {
        let alg = Algebra::new(&sg);
        let model = RepModel::new(&sg, BlockMode::AllSubsets).unwrap();
        for x in sg.edges() {
            for y in sg.edges() {
                let star: QAlgebraElement = alg.star_product(Leg::Elem(x), Leg::Elem(y));
                let nf: QAlgebraElement = alg.normal_form(&[Token::new(x, true), Token::new(y, false)]).unwrap();
                assert_eq!(star, nf, "{}* {}", sg.name(x), sg.name(y));
                let direct = &model.letter::<Rational>(Token::new(x, true)) * &model.letter(Token::new(y, false));
                assert!(model.represent(&star).unwrap().equals(&direct).unwrap());
            }
        }
    }
}

#[test]
fn zero_words_are_zero_operators() {
    for sg in [f1(), f2(), f5()] {
        let alg = Algebra::new(&sg);
        let model = RepModel::new(&sg, BlockMode::AllSubsets).unwrap();
        for w in alg.token_words(3) {
            let nf: QAlgebraElement = alg.normal_form(&w).unwrap();
            assert_eq!(nf.is_zero(), model.letter_product::<Rational>(&w).is_zero());
        }
        for w in alg.enumerate_standard_words() {
            assert!(!model.represent_word::<Rational>(&w).is_zero());
        }
    }
}

#[test]
fn normal_forms_carry_the_gauge_degree() {
    for sg in small_fixtures() {
        let alg = Algebra::new(&sg);
        for w in alg.token_words(3) {
            let mut expected = vec![0i64; sg.rank()];
            for t in &w {
                let sign = if t.adjoint { -1 } else { 1 };
                for (e, &c) in expected.iter_mut().zip(sg.degree(t.element).coords()) {
                    *e += sign * c as i64;
                }
            }
            let nf: QAlgebraElement = alg.normal_form(&w).unwrap();
            if !nf.is_zero() {
                assert_eq!(nf.homogeneous_degree(&sg), Some(expected));
            }
        }
    }
}

#[test]
fn adjoints_are_coherent() {
    for sg in small_fixtures() {
        let alg = Algebra::new(&sg);
        for w in alg.token_words(3) {
            let nf: QAlgebraElement = alg.normal_form(&w).unwrap();
            let back: QAlgebraElement = alg.normal_form(&adjoint_tokens(&w)).unwrap();
            assert_eq!(back, alg.adjoint(&nf));
        }
    }
}

#[test]
fn multiplication_is_associative() {
    let mut rng = StdRng::seed_from_u64(11);
    for (_, sg) in fixtures::all() {
        let alg = Algebra::new(&sg);
        let words = alg.enumerate_standard_words();
        for _ in 0..300 {
            let [a, b, c]: [QAlgebraElement; 3] =
                std::array::from_fn(|_| alg.word(words.choose(&mut rng).unwrap().clone()));
            let left = alg.multiply(&alg.multiply(&a, &b).unwrap(), &c).unwrap();
            let right = alg.multiply(&a, &alg.multiply(&b, &c).unwrap()).unwrap();
            assert_eq!(left, right);
        }
    }
}

#[test]
fn foreign_operands_are_rejected() {
    let (a, b) = (f1(), f2());
    let x: QAlgebraElement = Algebra::new(&a).parse_normal_form("a").unwrap();
    let y: QAlgebraElement = Algebra::new(&b).parse_normal_form("t").unwrap();
    assert!(Algebra::new(&a).multiply(&x, &y).is_err());
    let model = RepModel::new(&a, BlockMode::AllSubsets).unwrap();
    assert!(model.represent(&y).is_err());
    assert!(Algebra::new(&a).parse_normal_form::<Rational>("a z").is_err());
}
