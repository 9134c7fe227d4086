use crsym::ambient::{ambient_laplacian, dv, dv_bracket, higher_symmetry_op, outer, r_poly, AmbientModel, TracelessMatrix};
use crsym::boundary::{verify_extension, verify_symmetry_property, BoundaryModel};
use crsym::classalg::{class_multiply, partitions, ClassElement};
use crsym::decompose::{commutant_basis_op, gl_action, random_symmetric};
use crsym::symbols::{a_coeff, check_symbol_recursions, extract_symbols, AmbientSymTensor};
use crsym::{exact_rank_solve, ExactMatrix, Gq, LaurentPoly, Mono, Ring, WeylOperator};
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

fn ring() -> Arc<Ring> {
    Ring::polynomial(&["x", "y"])
}

fn poly() -> impl Strategy<Value = Vec<((i32, i32), i64)>> {
    prop::collection::vec(((0..3i32, 0..3i32), -3..=3i64), 0..4)
}

fn build(r: &Arc<Ring>, terms: &[((i32, i32), i64)]) -> LaurentPoly {
    LaurentPoly::from_terms(r, terms.iter().map(|&((a, b), c)| (Mono(vec![a, b]), Gq::from_int(c))))
}

fn op(r: &Arc<Ring>, terms: &[((u32, u32), Vec<((i32, i32), i64)>)]) -> WeylOperator {
    let mut o = WeylOperator::zero(r);
    for ((a, b), p) in terms {
        o.add_term(vec![*a, *b], &build(r, p));
    }
    o
}

fn weyl_op() -> impl Strategy<Value = Vec<((u32, u32), Vec<((i32, i32), i64)>)>> {
    prop::collection::vec(((0..2u32, 0..2u32), poly()), 1..3)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        let r = ring();
        let (a, b, c) = (build(&r, &a), build(&r, &b), build(&r, &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn leibniz_and_substitution(a in poly(), b in poly(), s in poly(), t in poly()) {
        let r = ring();
        let (a, b) = (build(&r, &a), build(&r, &b));
        for i in 0..2 {
            prop_assert_eq!((&a * &b).diff(i), &(&a.diff(i) * &b) + &(&a * &b.diff(i)));
        }
        let imgs = [build(&r, &s), build(&r, &t)];
        let lhs = (&a * &b).substitute(&imgs).unwrap();
        let rhs = &a.substitute(&imgs).unwrap() * &b.substitute(&imgs).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn rank_of_transpose(rows in prop::collection::vec(prop::collection::vec(-2..=2i64, 4), 1..5)) {
        let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
        let m = ExactMatrix::from_int_rows(&refs);
        prop_assert_eq!(exact_rank_solve(&m, None).unwrap().rank, m.transpose().rank());
    }

    #[test]
    fn weyl_jacobi_and_associativity(a in weyl_op(), b in weyl_op(), c in weyl_op()) {
        let r = ring();
        let (a, b, c) = (op(&r, &a), op(&r, &b), op(&r, &c));
        let j = &(&a.commutator(&b.commutator(&c)) + &b.commutator(&c.commutator(&a))) + &c.commutator(&a.commutator(&b));
        prop_assert!(j.is_zero());
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
        if let (Some(p), Some(q)) = (a.order(), b.order()) {
            prop_assert!(a.compose(&b).order().is_none_or(|o| o <= p + q));
        }
    }

    #[test]
    fn ambient_symmetries(seed in any::<u64>(), n in 1..3usize) {
        let m = AmbientModel::standard(n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = TracelessMatrix::random(n + 2, &mut rng);
        let w = TracelessMatrix::random(n + 2, &mut rng);
        let d = dv(&m, &v).unwrap();
        prop_assert!(d.commutator(&ambient_laplacian(&m)).is_zero());
        prop_assert!(d.commutator(&WeylOperator::multiplication(&r_poly(&m))).is_zero());
        let lhs = d.commutator(&dv(&m, &w).unwrap());
        prop_assert_eq!(lhs, dv(&m, &dv_bracket(&v, &w).unwrap()).unwrap());
        let dw = dv(&m, &w).unwrap();
        let t = outer(&v, &w);
        prop_assert_eq!(higher_symmetry_op(&m, &t).unwrap(), d.compose(&dw));
        let sym = (&d.compose(&dw) + &dw.compose(&d)).scale(&Gq::from_ratio(1, 2));
        let ts = t.column_symmetrize();
        prop_assert_eq!(higher_symmetry_op(&m, &ts).unwrap(), sym.clone());
        prop_assert_eq!(higher_symmetry_op(&m, &ts.permute_columns(&[1, 0])).unwrap(), sym);
    }

    #[test]
    fn extension_and_symmetry(seed in any::<u64>(), dw in -2..=2i64) {
        let n = 1usize;
        let (w1, w2) = ((2 * dw + 1 - n as i64) / 2, (-(2 * dw + 1) - n as i64) / 2);
        let bm = BoundaryModel::standard(n);
        let m = AmbientModel::standard(n);
        let fs = bm.monomials(2);
        prop_assert!(verify_extension(&bm, &m, &fs, w1, w2).unwrap().passed());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = TracelessMatrix::random(n + 2, &mut rng);
        prop_assert!(verify_symmetry_property(&bm, &m, &v, &fs, w1, w2).unwrap().passed());
    }

    #[test]
    fn symbols_satisfy_recursions(seed in any::<u64>(), d in 1..3usize) {
        let n = 1;
        let bm = BoundaryModel::standard(n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = AmbientSymTensor::random_trace_free(n + 2, d, 2, &mut rng);
        let fam = extract_symbols(&bm, &t).unwrap();
        prop_assert!(check_symbol_recursions(&bm, &fam).unwrap().passed());
    }

    #[test]
    fn alternation_kills_symbols(seed in any::<u64>()) {
        let bm = BoundaryModel::standard(1);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ms: Vec<TracelessMatrix> = (0..3).map(|_| TracelessMatrix::random(3, &mut rng)).collect();
        let t = AmbientSymTensor::from_matrices(&ms.iter().map(|m| m.matrix()).collect::<Vec<_>>());
        prop_assert!(extract_symbols(&bm, &t.alternate(true)).unwrap().is_zero());
        prop_assert!(extract_symbols(&bm, &t.alternate(false)).unwrap().is_zero());
    }

    #[test]
    fn a_coefficients_support(s in 1..9u32, row in 1..9u32, i in 0..9u32) {
        prop_assume!(row <= s && i <= s);
        // zero exactly when i > 2(s − row + 1)
        let a = a_coeff(s, row, i);
        prop_assert!(!a.is_negative());
        prop_assert_eq!(a.is_positive(), i <= 2 * (s + 1 - row));
    }

    #[test]
    fn structure_constants_form_a_distribution(k in 1..6u32, a in 0..7usize, b in 0..7usize) {
        let ps = partitions(k);
        let (a, b) = (&ps[a % ps.len()], &ps[b % ps.len()]);
        let e = class_multiply(&ClassElement::basis(a), &ClassElement::basis(b)).unwrap();
        prop_assert!(e.coeffs.values().all(|c| !c.is_negative()));
        let total = e.coeffs.values().fold(num_rational::BigRational::zero(), |x, y| x + y);
        prop_assert!(total.is_one());
    }

    #[test]
    fn commutant_is_equivariant(seed in any::<u64>(), k in 1..3usize, dim in 2..4usize) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_symmetric(dim, k, 4, &mut rng);
        for tau in partitions(k as u32) {
            let c = commutant_basis_op(&tau);
            let ct = c.apply(&t);
            prop_assert!(ct.is_column_symmetric());
            for i in 0..dim as u8 {
                for j in 0..dim as u8 {
                    prop_assert_eq!(c.apply(&gl_action(&t, i, j)), gl_action(&ct, i, j));
                }
            }
        }
    }
}
