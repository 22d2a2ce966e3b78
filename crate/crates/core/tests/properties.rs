mod common;

use proptest::prelude::*;

use num_bigint::BigInt;
use projquiver::exactmath::{Field, Matrix, Scalar};
use projquiver::polysys::{parse_system, HomogeneousPolynomial, Monomial, PolynomialSystem};

fn field_strategy() -> impl Strategy<Value = Field> {
    prop_oneof![
        Just(Field::Rational),
        Just(Field::Prime(2)),
        Just(Field::Prime(3)),
        Just(Field::Prime(5)),
        Just(Field::Prime(7)),
    ]
}

fn matrix_strategy() -> impl Strategy<Value = Matrix> {
    (field_strategy(), 0usize..5, 0usize..6).prop_flat_map(|(field, rows, cols)| {
        prop::collection::vec(-3i64..4, rows * cols).prop_map(move |vals| {
            let grid = vals
                .chunks(cols.max(1))
                .take(rows)
                .map(|r| r.iter().map(|&v| Scalar::from_i64(v, field)).collect())
                .collect::<Vec<Vec<_>>>();
            if cols == 0 {
                Matrix::zeros(field, rows, 0)
            } else {
                Matrix::from_rows(field, cols, grid).unwrap()
            }
        })
    })
}

fn rational_matrix() -> impl Strategy<Value = Matrix> {
    (1usize..5, 1usize..5).prop_flat_map(|(rows, cols)| {
        prop::collection::vec((-6i64..7, 1i64..4), rows * cols).prop_map(move |vals| {
            let grid = vals
                .chunks(cols)
                .map(|r| {
                    r.iter()
                        .map(|&(n, d)| Scalar::from_ratio(BigInt::from(n), BigInt::from(d)).unwrap())
                        .collect()
                })
                .collect();
            Matrix::from_rows(Field::Rational, cols, grid).unwrap()
        })
    })
}

/// Random homogeneous polynomial in `nvars` variables of degree `d`, possibly zero.
fn poly_terms(nvars: usize, d: u32) -> impl Strategy<Value = Vec<(Monomial, Scalar)>> {
    let monomials = Monomial::all_of_degree(nvars, d);
    let len = monomials.len();
    prop::collection::vec((0..len, -5i64..6, 1i64..4), 1..4).prop_map(move |picks| {
        picks
            .into_iter()
            .map(|(i, n, den)| {
                (
                    monomials[i].clone(),
                    Scalar::from_ratio(BigInt::from(n), BigInt::from(den)).unwrap(),
                )
            })
            .collect()
    })
}

fn system_strategy() -> impl Strategy<Value = PolynomialSystem> {
    (1usize..4).prop_flat_map(|n| {
        prop::collection::vec((1u32..4).prop_flat_map(move |d| poly_terms(n + 1, d)), 0..4).prop_map(
            move |polys| {
                let eqs = polys
                    .into_iter()
                    .filter_map(|terms| HomogeneousPolynomial::new(n + 1, Field::Rational, terms).ok())
                    .collect();
                PolynomialSystem::new(n, Field::Rational, eqs).unwrap()
            },
        )
    })
}

proptest! {
    #[test]
    fn rank_nullity(m in matrix_strategy()) {
        let kernel = m.kernel_basis();
        prop_assert_eq!(m.rank() + kernel.len(), m.cols());
        for v in &kernel {
            prop_assert!(m.mat_vec(v).unwrap().iter().all(Scalar::is_zero));
        }
        prop_assert!(m.rank() <= m.rows().min(m.cols()));
    }

    #[test]
    fn kernel_basis_is_deterministic_and_canonical(m in matrix_strategy()) {
        let a = m.kernel_basis();
        prop_assert_eq!(&a, &m.kernel_basis());
        // Row operations do not change the canonical basis.
        let (reduced, _) = m.rref();
        prop_assert_eq!(a, reduced.kernel_basis());
    }

    #[test]
    fn reduction_does_not_increase_rank(m in rational_matrix(), p in prop::sample::select(vec![5u64, 7, 11, 13])) {
        let reduced = m.reduce_into(Field::prime(p).unwrap()).unwrap();
        prop_assert!(reduced.rank() <= m.rank());
    }

    #[test]
    fn canonical_text_round_trips(s in system_strategy()) {
        let text = s.to_text();
        let back = parse_system(&text).unwrap();
        prop_assert_eq!(&back, &s);
        prop_assert_eq!(back.to_text(), text);
    }

    #[test]
    fn evaluation_is_homogeneous(
        terms in poly_terms(3, 3),
        point in prop::collection::vec(-4i64..5, 3),
        lambda in 1i64..7,
    ) {
        let Ok(p) = HomogeneousPolynomial::new(3, Field::Rational, terms) else { return Ok(()) };
        let q = |v: i64| Scalar::from_i64(v, Field::Rational);
        let x: Vec<Scalar> = point.iter().map(|&v| q(v)).collect();
        let scaled: Vec<Scalar> = point.iter().map(|&v| q(v * lambda)).collect();
        let lhs = p.evaluate(&scaled).unwrap();
        let rhs = &q(lambda).pow(p.degree()) * &p.evaluate(&x).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn equalization_fixes_degree_and_zero_set(s in system_strategy(), q in prop::sample::select(vec![5u64, 7])) {
        let e = s.equalize_degrees();
        let d = s.max_degree().unwrap_or(1);
        prop_assert_eq!(e.common_degree(), Some(d));
        prop_assert!(e.equations().iter().all(|eq| eq.degree() == d));
        let field = Field::prime(q).unwrap();
        let (orig, _) = s.reduce_mod_p(q).unwrap();
        let (eqd, _) = e.reduce_mod_p(q).unwrap();
        for v in common::normalized_vectors(s.nvars(), q) {
            let x: Vec<Scalar> = v.iter().map(|&c| Scalar::from_i64(c as i64, field)).collect();
            prop_assert_eq!(orig.vanishes_at(&x).unwrap(), eqd.vanishes_at(&x).unwrap());
        }
    }
}

#[test]
fn equalized_mixed_system_has_a_single_point() {
    let s = parse_system("x0\nx1^2 - x0*x2").unwrap();
    let e = s.equalize_degrees();
    for q in [2u64, 3, 5] {
        for sys in [&s, &e] {
            let pts = projquiver::verify::variety_points(sys, q).unwrap();
            let coords: Vec<Vec<u64>> = pts.iter().map(|p| p.residues()).collect();
            assert_eq!(coords, vec![vec![0, 0, 1]]);
        }
    }
}
