mod common;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use sga_core::builders::fixtures::{f1, f2, f3, f4, f5};
use sga_core::linalg::EchelonBasis;
use sga_core::rep::{BlockLabel, BlockMode, RepModel};
use sga_core::{Algebra, QAlgebraElement, QRepOperator, Rational, Semigraph, Token};

/// Dimension of the algebra generated by the letter operators, by closing
/// their span under left multiplication by letters.
fn generated_dimension(model: &RepModel<'_>) -> usize {
    let sg = model.semigraph();
    let letters: Vec<QRepOperator> =
        sg.ids().flat_map(|x| [Token::new(x, false), Token::new(x, true)]).map(|t| model.letter(t)).collect();
    let mut basis = EchelonBasis::new();
    let mut queue: Vec<QRepOperator> = Vec::new();
    for l in &letters {
        if basis.insert(&l.to_sparse_vec()) {
            queue.push(l.clone());
        }
    }
    while let Some(op) = queue.pop() {
        for l in &letters {
            let next = l * &op;
            if basis.insert(&next.to_sparse_vec()) {
                queue.push(next);
            }
        }
    }
    basis.rank()
}

#[test]
fn dimension_matches_span_closure() {
    for sg in [f1(), f2(), f3(), f4(), f5()] {
        let model = RepModel::new(&sg, BlockMode::AllSubsets).unwrap();
        assert_eq!(model.algebra_dimension(), generated_dimension(&model));
    }
    assert_eq!(RepModel::new(&f5(), BlockMode::AllSubsets).unwrap().algebra_dimension(), 6);
    assert_eq!(RepModel::new(&f2(), BlockMode::AllSubsets).unwrap().algebra_dimension(), 30);
}

#[test]
fn element_block_is_the_left_regular_action() {
    for sg in [f1(), f3(), f4(), f5()] {
        let model = RepModel::new(&sg, BlockMode::AllSubsets).unwrap();
        let block = &model.blocks()[0];
        assert_eq!(block.label, BlockLabel::Elements);
        assert_eq!(block.basis, sg.ids().collect::<Vec<_>>());
        for t in sg.ids() {
            let map = model.generator_map(t, 0);
            for y in sg.ids() {
                assert_eq!(map[y.index()].map(|r| block.basis[r]), sg.product(t, y));
            }
        }
    }
}

#[test]
fn antichain_mode_agrees_with_all_subsets() {
    let mut rng = StdRng::seed_from_u64(5);
    for sg in [f1(), f2(), f5()] {
        let alg = Algebra::new(&sg);
        let words = alg.enumerate_standard_words();
        let full = RepModel::new(&sg, BlockMode::AllSubsets).unwrap();
        let anti = RepModel::new(&sg, BlockMode::Antichains).unwrap();
        assert!(anti.blocks().len() <= full.blocks().len());
        assert_eq!(full.algebra_dimension(), anti.algebra_dimension());
        for _ in 0..100 {
            let a = common::random_element(&mut rng, &alg, &words);
            let b = if rng.gen_bool(0.3) { a.clone() } else { common::random_element(&mut rng, &alg, &words) };
            assert_eq!(common::verdicts(&full, &alg, &a, &b), common::verdicts(&anti, &alg, &a, &b));
        }
    }
}

#[test]
fn duplicate_tuple_blocks_change_nothing() {
    let mut rng = StdRng::seed_from_u64(9);
    for sg in [f1(), f2(), f3(), f5()] {
        let alg = Algebra::new(&sg);
        let words = alg.enumerate_standard_words();
        let base = RepModel::new(&sg, BlockMode::AllSubsets).unwrap();
        for _ in 0..20 {
            let mut extended = base.clone();
            for _ in 0..rng.gen_range(1..=3) {
                extended.add_tuple_block(common::random_tuple(&mut rng, &sg));
            }
            assert_ne!(extended.id(), base.id());
            let a = common::random_element(&mut rng, &alg, &words);
            let b = common::random_element(&mut rng, &alg, &words);
            assert_eq!(common::verdicts(&base, &alg, &a, &b), common::verdicts(&extended, &alg, &a, &b));
        }
    }
}

#[test]
fn representation_is_faithful_on_small_fixtures() {
    let mut rng = StdRng::seed_from_u64(13);
    for sg in [f2(), f5()] {
        let alg = Algebra::new(&sg);
        let words = alg.enumerate_standard_words();
        let model = RepModel::new(&sg, BlockMode::AllSubsets).unwrap();
        let mut basis = EchelonBasis::new();
        for w in &words {
            assert!(basis.insert(&model.represent_word::<Rational>(w).to_sparse_vec()));
        }
        for _ in 0..50 {
            let a: QAlgebraElement = common::random_element(&mut rng, &alg, &words);
            assert_eq!(a.is_zero(), model.represent(&a).unwrap().is_zero());
        }
    }
}

#[test]
fn operators_of_different_models_do_not_mix() {
    let sg: Semigraph = f2();
    let a = RepModel::new(&sg, BlockMode::AllSubsets).unwrap();
    let b = RepModel::new(&sg, BlockMode::Antichains).unwrap();
    let t = Token::new(sg.lookup("t").unwrap(), false);
    let (x, y): (QRepOperator, QRepOperator) = (a.letter(t), b.letter(t));
    assert!(x.try_add(&y).is_err());
    assert!(x.try_mul(&y).is_err());
}
