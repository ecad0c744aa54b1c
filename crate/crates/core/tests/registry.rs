//! Every registry row at its defaults, plus invariance of verdicts under a change of basis.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use superalg::maxcheck::{
    instantiate_row, parse_params, registry, verify_maximal, verify_row, Expected, MaximalityReport, Mode, RunOptions,
    Status,
};
use superalg::{LieSuperAlgebra, Scalar, SuperDim, SuperMatrix};

/// Rows whose computed verdict disagrees with the tabulated one, each with an explicit witness.
const KNOWN_MISMATCHES: [&str; 2] = ["T2R6", "T3R6"];

/// Dominates the run time of the sweep; checked on its own.
const HEAVY: &str = "T2R4";

fn defaults(id: &str, opts: RunOptions) -> MaximalityReport {
    verify_row(id, &parse_params("").unwrap(), opts).unwrap_or_else(|e| panic!("{id}: {e}"))
}

fn assert_decided(r: &MaximalityReport) {
    assert!(r.verification.fell_back.is_none(), "{}: fell back ({:?})", r.row, r.verification.fell_back);
    assert!(
        matches!(r.status(), Status::CertifiedMaximal | Status::NotMaximal),
        "{}: {:?}",
        r.row,
        r.status()
    );
    // h = g is not maximal either, and there is nothing in between to exhibit
    if *r.status() == Status::NotMaximal && r.verification.h_superdim != r.verification.g_superdim {
        let w = r.verification.witness.as_ref().unwrap_or_else(|| panic!("{}: no witness", r.row));
        assert!(w.algebra.is_closed(), "{}", r.row);
    }
}

#[test]
fn every_row_is_decided_at_its_defaults() {
    let mut mismatched = vec![];
    for row in registry().iter().filter(|r| r.id != HEAVY) {
        let r = defaults(row.id, RunOptions::default());
        assert_decided(&r);
        if !r.matches_expected {
            mismatched.push(row.id);
        }
    }
    assert_eq!(mismatched, KNOWN_MISMATCHES);
}

#[test]
fn known_mismatches_carry_proper_witnesses() {
    for (id, dims) in [("T2R6", SuperDim::new(39, 38)), ("T3R6", SuperDim::new(12, 12))] {
        let r = defaults(id, RunOptions::default());
        assert_eq!(r.expected, Expected::Maximal);
        assert_eq!(*r.status(), Status::NotMaximal);
        let w = r.verification.witness.as_ref().unwrap();
        assert_eq!(w.algebra.superdim(), dims, "{id}");
    }
}

#[test]
fn pe3_product_is_certified() {
    let r = defaults(HEAVY, RunOptions::default());
    assert_decided(&r);
    assert!(r.matches_expected);
    assert_eq!(r.verification.minimal_submodules, vec![[145, 144], [145, 144]]);
}

/// `P = L·U` with `L`, `U` unit triangular and small integer entries, blockwise on each parity.
fn random_even_basis_change(dim: SuperDim, rng: &mut ChaCha8Rng) -> (SuperMatrix, SuperMatrix) {
    let n = dim.total();
    let same_block = |i: usize, j: usize| (i < dim.even) == (j < dim.even);
    let mut triangular = |lower: bool| {
        SuperMatrix::from_fn(dim, |i, j| {
            if i == j {
                Scalar::int(1)
            } else if same_block(i, j) && (i > j) == lower {
                Scalar::int(rng.gen_range(-2..=2))
            } else {
                Scalar::int(0)
            }
        })
    };
    let l = triangular(true);
    let u = triangular(false);
    // (1 + N)^{-1} = Σ (-N)^k with N nilpotent
    let unipotent_inverse = |m: &SuperMatrix| {
        let minus_n = SuperMatrix::identity(dim).sub(m).unwrap();
        let mut term = SuperMatrix::identity(dim);
        let mut sum = SuperMatrix::identity(dim);
        for _ in 1..n {
            term = term.matmul(&minus_n).unwrap();
            sum = sum.add(&term).unwrap();
        }
        sum
    };
    let p = l.matmul(&u).unwrap();
    let p_inv = unipotent_inverse(&u).matmul(&unipotent_inverse(&l)).unwrap();
    assert_eq!(p.matmul(&p_inv).unwrap(), SuperMatrix::identity(dim));
    (p, p_inv)
}

fn conjugate(a: &LieSuperAlgebra, p: &SuperMatrix, p_inv: &SuperMatrix) -> LieSuperAlgebra {
    a.conjugated(p, p_inv).unwrap()
}

#[test]
fn verdicts_survive_a_change_of_basis() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for id in ["T1R1", "THM3.1-n2", "T1R3"] {
        let inst = instantiate_row(id, &parse_params("").unwrap()).unwrap();
        let before = verify_maximal(&inst.h, &inst.g, Mode::Certify, (20, 0)).unwrap();
        let (p, p_inv) = random_even_basis_change(inst.h.carrier(), &mut rng);
        let (h, g) = (conjugate(&inst.h, &p, &p_inv), conjugate(&inst.g, &p, &p_inv));
        assert_eq!(h.superdim(), inst.h.superdim());
        let after = verify_maximal(&h, &g, Mode::Certify, (20, 0)).unwrap();
        assert_eq!(after.status, before.status, "{id}");
        let mut a = after.minimal_submodules.clone();
        let mut b = before.minimal_submodules.clone();
        a.sort();
        b.sort();
        assert_eq!(a, b, "{id}");
    }
}

#[test]
fn evidence_agrees_with_certification() {
    let evidence = RunOptions { mode: Mode::Evidence { trials: 8, seed: 4 }, fallback: (8, 4) };
    for id in ["T1R1", "T1R4", "T2R1", "T3R3", "THM2.1-gl", "DYN1"] {
        let r = defaults(id, evidence);
        assert!(matches!(r.status(), Status::EvidenceMaximal { trials: 8, seed: 4 }), "{id}: {:?}", r.status());
        assert!(r.matches_expected, "{id}");
    }
    for id in ["THM3.1-n3", "T3R6"] {
        let r = defaults(id, evidence);
        assert_eq!(*r.status(), Status::NotMaximal, "{id}");
        assert!(r.verification.witness.as_ref().unwrap().algebra.is_closed());
    }
}
