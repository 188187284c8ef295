//! Property tests for the free-algebra layer: canonical text round-trips,
//! ring axioms, and the evaluation homomorphism.

use proptest::prelude::*;

use pilab::field::{PrimeField, Rational};
use pilab::matrix::{evaluate, Matrix, MatrixTuple};
use pilab::parse::parse_poly_spec;
use pilab::poly::{lie_expand, specialize, standard_polynomial, BracketExpr, RatPoly};
use pilab::words::Word;

fn arb_word(n: u8, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(1..=n, 0..=max_len)
        .prop_map(move |letters| Word::new(n, letters).unwrap())
}

fn arb_coeff() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=10).prop_map(|(a, b)| Rational::new(a.into(), b.into()))
}

fn arb_int_coeff() -> impl Strategy<Value = Rational> {
    (-20i64..=20).prop_map(|v| Rational::from_integer(v.into()))
}

fn arb_poly(n: u8) -> impl Strategy<Value = RatPoly> {
    prop::collection::vec((arb_word(n, 4), arb_coeff()), 0..=6)
        .prop_map(move |terms| RatPoly::from_terms(n, (), terms).unwrap())
}

fn arb_poly_any_alphabet() -> impl Strategy<Value = RatPoly> {
    (1u8..=4).prop_flat_map(arb_poly)
}

/// Integer coefficients so specialization never hits a zero denominator.
fn arb_int_poly(n: u8) -> impl Strategy<Value = RatPoly> {
    prop::collection::vec((arb_word(n, 3), arb_int_coeff()), 0..=5)
        .prop_map(move |terms| RatPoly::from_terms(n, (), terms).unwrap())
}

fn arb_matrix(q: u32, s: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(0i64..q as i64, s * s).prop_map(move |entries| {
        let field = PrimeField::new(q).unwrap();
        let rows: Vec<Vec<i64>> = entries.chunks(s).map(|c| c.to_vec()).collect();
        Matrix::from_rows(field, &rows).unwrap()
    })
}

fn arb_bracket(n: u8) -> impl Strategy<Value = BracketExpr> {
    let leaf = (1..=n).prop_map(BracketExpr::Gen);
    leaf.prop_recursive(3, 12, 2, |inner| {
        (inner.clone(), inner)
            .prop_map(|(a, b)| BracketExpr::Bracket(Box::new(a), Box::new(b)))
    })
}

proptest! {
    #[test]
    fn canonical_text_round_trips(poly in arb_poly_any_alphabet()) {
        let text = poly.canonical_string();
        let reparsed = parse_poly_spec(&text, Some(poly.alphabet())).unwrap();
        prop_assert_eq!(poly, reparsed);
    }

    #[test]
    fn product_is_associative(
        a in arb_poly(3), b in arb_poly(3), c in arb_poly(3)
    ) {
        let left = a.mul(&b).unwrap().mul(&c).unwrap();
        let right = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn product_degree_adds(a in arb_poly(2), b in arb_poly(2)) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let product = a.mul(&b).unwrap();
        prop_assert_eq!(
            product.degree(),
            Some(a.degree().unwrap() + b.degree().unwrap())
        );
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(
        a in arb_int_poly(2),
        b in arb_int_poly(2),
        m1 in arb_matrix(5, 2),
        m2 in arb_matrix(5, 2),
    ) {
        let field = PrimeField::new(5).unwrap();
        let tuple = MatrixTuple::new(vec![m1, m2]).unwrap();
        let (a, b) = (a.widen(2).unwrap(), b.widen(2).unwrap());
        let qa = specialize(&a, field).unwrap();
        let qb = specialize(&b, field).unwrap();
        let sum = specialize(&a.add(&b).unwrap(), field).unwrap();
        let product = specialize(&a.mul(&b).unwrap(), field).unwrap();

        let ea = evaluate(&qa, &tuple).unwrap();
        let eb = evaluate(&qb, &tuple).unwrap();
        prop_assert_eq!(evaluate(&sum, &tuple).unwrap(), ea.add(&eb));
        prop_assert_eq!(evaluate(&product, &tuple).unwrap(), ea.mul(&eb));
    }

    #[test]
    fn standard_polynomial_is_alternating(
        mats in prop::collection::vec(arb_matrix(3, 2), 3),
        i in 0usize..3,
        j in 0usize..3,
    ) {
        prop_assume!(i != j);
        let field = PrimeField::new(3).unwrap();
        let s3 = specialize(&standard_polynomial(3).unwrap(), field).unwrap();
        let tuple = MatrixTuple::new(mats.clone()).unwrap();
        let mut swapped = mats;
        swapped.swap(i, j);
        let swapped = MatrixTuple::new(swapped).unwrap();
        let plus = evaluate(&s3, &tuple).unwrap();
        let minus = evaluate(&s3, &swapped).unwrap();
        prop_assert!(plus.add(&minus).is_zero());
    }

    #[test]
    fn standard_polynomial_is_multilinear(
        mats in prop::collection::vec(arb_matrix(3, 2), 4),
        slot in 0usize..3,
    ) {
        // Replacing one argument by a sum splits the evaluation.
        let field = PrimeField::new(3).unwrap();
        let s3 = specialize(&standard_polynomial(3).unwrap(), field).unwrap();
        let extra = mats[3].clone();
        let base: Vec<Matrix> = mats[..3].to_vec();

        let mut summed = base.clone();
        summed[slot] = summed[slot].add(&extra);
        let mut replaced = base.clone();
        replaced[slot] = extra;

        let lhs = evaluate(&s3, &MatrixTuple::new(summed).unwrap()).unwrap();
        let rhs = evaluate(&s3, &MatrixTuple::new(base).unwrap())
            .unwrap()
            .add(&evaluate(&s3, &MatrixTuple::new(replaced).unwrap()).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn lie_expansion_matches_direct_brackets(
        expr in arb_bracket(2),
        m1 in arb_matrix(5, 2),
        m2 in arb_matrix(5, 2),
    ) {
        fn bracket_value(expr: &BracketExpr, mats: &[Matrix]) -> Matrix {
            match expr {
                BracketExpr::Gen(i) => mats[*i as usize - 1].clone(),
                BracketExpr::Bracket(a, b) => {
                    let va = bracket_value(a, mats);
                    let vb = bracket_value(b, mats);
                    let field = va.field();
                    va.mul(&vb).add(&vb.mul(&va).scale(field.element(-1)))
                }
            }
        }
        let field = PrimeField::new(5).unwrap();
        let mats = vec![m1, m2];
        let tuple = MatrixTuple::new(mats.clone()).unwrap();
        let expanded = lie_expand(&expr, 2).unwrap();
        let direct = bracket_value(&expr, &mats);
        if expanded.is_zero() {
            prop_assert!(direct.is_zero());
        } else {
            let q_poly = specialize(&expanded, field).unwrap();
            prop_assert_eq!(evaluate(&q_poly, &tuple).unwrap(), direct);
        }
    }
}
