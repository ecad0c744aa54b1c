//! Algebraic laws on random inputs: scalars, super brackets, Grassmann and Poisson products,
//! canonical subspaces and serialization.

use proptest::prelude::*;

use superalg::grassmann::{GrassmannElement, Po};
use superalg::{kron, super_bracket, Rat, Scalar, SuperDim, SuperMatrix, Subspace};

fn rat() -> impl Strategy<Value = Rat> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Rat::new(n, d))
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (rat(), rat(), rat(), rat()).prop_map(|(a, b, c, d)| Scalar::from_parts(a, b, c, d))
}

fn small() -> impl Strategy<Value = Scalar> {
    (-2i64..=2).prop_map(Scalar::int)
}

const DIM: SuperDim = SuperDim { even: 2, odd: 1 };

/// A homogeneous element of gl(2|1) with its parity bit.
fn homogeneous() -> impl Strategy<Value = (u8, SuperMatrix)> {
    (proptest::collection::vec(small(), 9), any::<bool>()).prop_map(|(v, odd)| {
        let (ev, od) = SuperMatrix::new(DIM, v).split();
        if odd {
            (1, od)
        } else {
            (0, ev)
        }
    })
}

fn sign(p: u8) -> Scalar {
    Scalar::int(if p % 2 == 0 { 1 } else { -1 })
}

fn grassmann(n: usize) -> impl Strategy<Value = GrassmannElement> {
    proptest::collection::vec(small(), 1 << n).prop_map(move |v| GrassmannElement::from_coords(n, &v))
}

/// A homogeneous element of Λ(4) and its parity.
fn homogeneous_grassmann() -> impl Strategy<Value = (u8, GrassmannElement)> {
    (grassmann(4), any::<bool>()).prop_map(|(f, odd)| {
        let p = u8::from(odd);
        let kept = f
            .terms()
            .filter(|(s, _)| (s.count_ones() % 2) as u8 == p)
            .fold(GrassmannElement::zero(4), |acc, (s, c)| acc.add(&GrassmannElement::monomial(4, s, c.clone())));
        (p, kept)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalar_field_laws(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, Scalar::int(0));
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), Scalar::int(1));
        }
    }

    #[test]
    fn scalar_text_round_trip(a in scalar()) {
        let back: Scalar = a.to_string().parse().unwrap();
        prop_assert_eq!(&back, &a);
        let json = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<Scalar>(&json).unwrap(), a);
    }

    #[test]
    fn super_bracket_laws((px, x) in homogeneous(), (py, y) in homogeneous(), (_, z) in homogeneous()) {
        let xy = super_bracket(&x, &y).unwrap();
        let yx = super_bracket(&y, &x).unwrap();
        prop_assert_eq!(&xy, &yx.scale(&sign(px * py)).neg());
        // [x,[y,z]] = [[x,y],z] + (−1)^{p(x)p(y)} [y,[x,z]]
        let lhs = super_bracket(&x, &super_bracket(&y, &z).unwrap()).unwrap();
        let rhs = super_bracket(&xy, &z)
            .unwrap()
            .add(&super_bracket(&y, &super_bracket(&x, &z).unwrap()).unwrap().scale(&sign(px * py)))
            .unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn kron_product_sign((_, a) in homogeneous(), (pb, b) in homogeneous(), (pc, c) in homogeneous(), (_, d) in homogeneous()) {
        let lhs = kron(&a, &b).matmul(&kron(&c, &d)).unwrap();
        let rhs = kron(&a.matmul(&c).unwrap(), &b.matmul(&d).unwrap()).scale(&sign(pb * pc));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn matrix_json_round_trip(v in proptest::collection::vec(scalar(), 9)) {
        let m = SuperMatrix::new(DIM, v);
        let back: SuperMatrix = serde_json::from_str(&serde_json::to_string(&m).unwrap()).unwrap();
        prop_assert_eq!(back, m);
    }

    #[test]
    fn subspace_basis_is_canonical(
        vs in proptest::collection::vec(proptest::collection::vec(small(), 5), 1..4),
        mix in proptest::collection::vec(small(), 3),
    ) {
        let s = Subspace::span(5, &vs);
        // the same span from a different spanning set
        let combo: Vec<Scalar> = (0..5)
            .map(|k| vs.iter().zip(&mix).fold(Scalar::int(0), |acc, (v, c)| acc + &(c * &v[k])))
            .collect();
        let mut other: Vec<Vec<Scalar>> = vs.iter().rev().cloned().collect();
        other.push(combo);
        let t = Subspace::span(5, &other);
        prop_assert_eq!(s.basis(), t.basis());
        prop_assert_eq!(s.pivots(), t.pivots());
        prop_assert!(s.contains(&t).unwrap() && t.contains(&s).unwrap());
    }

    #[test]
    fn grassmann_product_is_associative(f in grassmann(4), g in grassmann(4), h in grassmann(4)) {
        prop_assert_eq!(f.mul(&g).mul(&h), f.mul(&g.mul(&h)));
    }

    #[test]
    fn poisson_bracket_laws((pf, f) in homogeneous_grassmann(), (pg, g) in homogeneous_grassmann(), (_, h) in homogeneous_grassmann()) {
        let po = Po::new(4);
        let fg = po.bracket(&f, &g);
        let gf = po.bracket(&g, &f);
        let twist = sign(pf * pg);
        prop_assert_eq!(&fg, &gf.scale(&twist).scale(&Scalar::int(-1)));
        let lhs = po.bracket(&f, &po.bracket(&g, &h));
        let rhs = po.bracket(&fg, &h).add(&po.bracket(&g, &po.bracket(&f, &h)).scale(&twist));
        prop_assert_eq!(lhs, rhs);
    }
}
