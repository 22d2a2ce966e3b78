//! Independent oracles shared by the integration tests. Nothing here goes
//! through the kernel-restricted scan or the Scalar-based variety search.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use projquiver::construct::QuiverRepresentation;
use projquiver::exactmath::{Field, Matrix, Scalar};
use projquiver::polysys::{parse_system, PolynomialSystem};

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

pub fn fixture(name: &str) -> PolynomialSystem {
    let text = std::fs::read_to_string(fixture_path(name)).expect("fixture exists");
    parse_system(&text).expect("fixture parses")
}

/// Every nonzero vector of F_q^len whose first nonzero entry is 1, in no
/// particular order.
pub fn normalized_vectors(len: usize, q: u64) -> Vec<Vec<u64>> {
    let total = (q as usize).pow(len as u32);
    (1..total)
        .map(|mut code| {
            let mut v = vec![0u64; len];
            for x in v.iter_mut() {
                *x = (code % q as usize) as u64;
                code /= q as usize;
            }
            v
        })
        .filter(|v| v.iter().find(|&&x| x != 0) == Some(&1))
        .collect()
}

/// Number of points of P^n(F_q) on which `f` vanishes mod q.
pub fn brute_count(n: usize, q: u64, f: impl Fn(&[i64]) -> i64) -> usize {
    normalized_vectors(n + 1, q)
        .iter()
        .filter(|v| {
            let x: Vec<i64> = v.iter().map(|&c| c as i64).collect();
            f(&x).rem_euclid(q as i64) == 0
        })
        .count()
}

pub fn residues_of(v: &[Scalar]) -> Vec<u64> {
    v.iter().map(|x| x.residue().unwrap()).collect()
}

fn normalize(v: &[Scalar]) -> Vec<u64> {
    let lead = v.iter().find(|x| !x.is_zero()).unwrap().inv().unwrap();
    v.iter().map(|x| (x * &lead).residue().unwrap()).collect()
}

/// Gr_e(V)(F_q) by scanning every line of V_2, not just ker Φ.
pub fn naive_grassmannian(rep: &QuiverRepresentation, q: u64) -> BTreeSet<(Vec<u64>, Vec<u64>)> {
    let field = Field::prime(q).unwrap();
    let rep = rep.reduce_into(field).unwrap();
    let m = rep.dim(2);
    let mut out = BTreeSet::new();
    for v in normalized_vectors(m, q) {
        let x: Vec<Scalar> = v.iter().map(|&c| Scalar::from_i64(c as i64, field)).collect();
        let annihilated = rep
            .linear_forms()
            .iter()
            .all(|phi| phi.mat_vec(&x).unwrap()[0].is_zero());
        if !annihilated {
            continue;
        }
        let images: Vec<Vec<Scalar>> = rep
            .shift_maps()
            .iter()
            .map(|f| f.mat_vec(&x).unwrap())
            .collect();
        let stacked = Matrix::from_rows(field, rep.dim(3), images.clone()).unwrap();
        if stacked.rank() == 1 {
            let w = images.iter().find(|w| w.iter().any(|c| !c.is_zero())).unwrap();
            out.insert((v.clone(), normalize(w)));
        }
    }
    out
}
