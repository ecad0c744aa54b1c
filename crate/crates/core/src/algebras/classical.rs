//! The matrix series gl, sl, q, sq and the form-preserving series osp, o, sp, pe, spe, pe_λ.

use super::forms::{aut_basis, even_form, odd_form, symplectic_form, GramForm};
use super::{LieSuperAlgebra, Meta};
use crate::scalar::Scalar;
use crate::superlinalg::{kernel_of_images, qtr, str, super_bracket, SuperDim, SuperMatrix};

pub fn gl(m: usize, n: usize) -> LieSuperAlgebra {
    let dim = SuperDim::new(m, n);
    let t = dim.total();
    let units: Vec<SuperMatrix> = (0..t).flat_map(|i| (0..t).map(move |j| SuperMatrix::unit(dim, i, j))).collect();
    LieSuperAlgebra::from_spanning(format!("gl({m}|{n})"), dim, &units)
}

pub fn sl(m: usize, n: usize) -> LieSuperAlgebra {
    gl(m, n).kernel_of(format!("sl({m}|{n})"), str)
}

/// `J_{2n} = (0 1_n; −1_n 0)` on `n|n`.
pub fn queer_j(n: usize) -> SuperMatrix {
    let dim = SuperDim::new(n, n);
    SuperMatrix::from_fn(dim, |i, j| {
        if i < n && j == i + n {
            Scalar::one()
        } else if i >= n && j + n == i {
            Scalar::int(-1)
        } else {
            Scalar::zero()
        }
    })
}

/// `q(n) = {(A B; B A)}`, the centralizer of [`queer_j`].
pub fn q(n: usize) -> LieSuperAlgebra {
    let dim = SuperDim::new(n, n);
    let mut gens = Vec::with_capacity(2 * n * n);
    for i in 0..n {
        for j in 0..n {
            let a = SuperMatrix::unit(dim, i, j).add(&SuperMatrix::unit(dim, n + i, n + j)).expect("same dim");
            let b = SuperMatrix::unit(dim, i, n + j).add(&SuperMatrix::unit(dim, n + i, j)).expect("same dim");
            gens.push(a);
            gens.push(b);
        }
    }
    LieSuperAlgebra::from_spanning(format!("q({n})"), dim, &gens)
        .with_meta(Meta { j: Some(queer_j(n)), ..Meta::default() })
}

pub fn sq(n: usize) -> LieSuperAlgebra {
    q(n).kernel_of(format!("sq({n})"), |x| qtr(x).expect("q(n) elements are in queer format"))
}

/// Supercentralizer `C(J)` of an odd `J` with `J² = −1`, i.e. a copy of q.
pub fn queer_centralizer(name: impl Into<String>, j: &SuperMatrix) -> LieSuperAlgebra {
    let dim = j.dim();
    let n = dim.total();
    let mut gens = Vec::new();
    for p in 0..2u8 {
        let vars: Vec<usize> = (0..n * n).filter(|&k| SuperMatrix::coord_parity(dim, k) == p).collect();
        let images: Vec<Vec<Scalar>> = vars
            .iter()
            .map(|&k| super_bracket(&SuperMatrix::unit(dim, k / n, k % n), j).expect("same dim").into_entries())
            .collect();
        for c in kernel_of_images(&images, n * n) {
            let terms: Vec<(Scalar, SuperMatrix)> =
                c.into_iter().zip(&vars).filter(|(x, _)| !x.is_zero()).map(|(x, &k)| (x, SuperMatrix::unit(dim, k / n, k % n))).collect();
            let refs: Vec<(Scalar, &SuperMatrix)> = terms.iter().map(|(x, m)| (x.clone(), m)).collect();
            gens.push(SuperMatrix::lin_comb(dim, &refs));
        }
    }
    LieSuperAlgebra::from_spanning(name, dim, &gens).with_meta(Meta { j: Some(j.clone()), ..Meta::default() })
}

/// Queer trace relative to `J`: `½ str(J X)`; for the standard `J` this is [`qtr`].
pub fn qtr_rel(j: &SuperMatrix, x: &SuperMatrix) -> Scalar {
    &str(&j.matmul(x).expect("same dim")) * &Scalar::frac(1, 2)
}

/// `sq` inside [`queer_centralizer`].
pub fn squeer_centralizer(name: impl Into<String>, j: &SuperMatrix) -> LieSuperAlgebra {
    queer_centralizer("", j).kernel_of(name, |x| qtr_rel(j, x))
}

pub fn aut_of_form(name: impl Into<String>, g: &GramForm) -> LieSuperAlgebra {
    LieSuperAlgebra::from_spanning(name, g.carrier(), &aut_basis(g))
        .with_meta(Meta { preserved_form: Some(g.clone()), ..Meta::default() })
}

/// `osp(m|2n)` preserving [`even_form`].
pub fn osp(m: usize, n: usize) -> LieSuperAlgebra {
    aut_of_form(format!("osp({m}|{})", 2 * n), &even_form(m, n))
}

/// `o(m)` on the purely even space `m|0`.
pub fn o(m: usize) -> LieSuperAlgebra {
    aut_of_form(format!("o({m})"), &even_form(m, 0))
}

/// `sp(2n)` on the purely even space `2n|0`.
pub fn sp(n: usize) -> LieSuperAlgebra {
    aut_of_form(format!("sp({})", 2 * n), &symplectic_form(n))
}

pub fn pe(n: usize) -> LieSuperAlgebra {
    aut_of_form(format!("pe({n})"), &odd_form(n))
}

pub fn spe(n: usize) -> LieSuperAlgebra {
    pe(n).kernel_of(format!("spe({n})"), str)
}

/// Image of `pe(n)` under `X ↦ X + λ·str(X)·1`.
pub fn pe_lambda(n: usize, lambda: Scalar) -> LieSuperAlgebra {
    let base = pe(n);
    let id = SuperMatrix::identity(base.carrier());
    let gens: Vec<SuperMatrix> = base
        .basis()
        .iter()
        .map(|x| x.add(&id.scale(&(&lambda * &str(x)))).expect("same carrier"))
        .collect();
    let meta = Meta { character_twist: Some(lambda.clone()), ..base.meta().clone() };
    LieSuperAlgebra::from_spanning(format!("pe_lambda({n};{lambda})"), base.carrier(), &gens).with_meta(meta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superlinalg::super_bracket;

    fn sd(a: &LieSuperAlgebra) -> (usize, usize) {
        let d = a.superdim();
        (d.even, d.odd)
    }

    #[test]
    fn dimension_formulas() {
        assert_eq!(sd(&gl(2, 1)), (5, 4));
        assert_eq!(sd(&sl(2, 1)), (4, 4));
        assert!(sl(2, 2).contains_identity());
        assert_eq!(sd(&q(2)), (4, 4));
        assert_eq!(sd(&sq(3)), (9, 8));
        assert_eq!(sd(&osp(1, 1)), (3, 2));
        assert_eq!(sd(&osp(2, 1)), (4, 4));
        assert_eq!(sd(&o(3)), (3, 0));
        assert_eq!(sd(&sp(1)), (3, 0));
        assert_eq!(sd(&pe(3)), (9, 9));
        assert_eq!(sd(&spe(3)), (8, 9));
    }

    #[test]
    fn q_is_the_centralizer_of_j() {
        let j = queer_j(2);
        for x in q(2).basis() {
            assert!(super_bracket(x, &j).unwrap().is_zero());
        }
    }

    #[test]
    fn relative_queer_matches_standard() {
        let j = queer_j(2);
        assert_eq!(queer_centralizer("q", &j).as_subspace(), q(2).as_subspace());
        assert_eq!(squeer_centralizer("sq", &j).as_subspace(), sq(2).as_subspace());
    }

    #[test]
    fn constructors_are_closed() {
        for a in [gl(1, 2), sl(2, 1), q(2), sq(2), osp(1, 1), pe(2), spe(2), pe_lambda(2, Scalar::frac(1, 2))] {
            assert!(a.is_closed(), "{} not closed", a.name());
        }
    }

    #[test]
    fn osp_is_supertraceless() {
        for x in osp(2, 1).basis() {
            assert!(str(x).is_zero());
        }
    }

    #[test]
    fn pe_lambda_zero_is_pe() {
        assert_eq!(pe_lambda(3, Scalar::zero()).as_subspace(), pe(3).as_subspace());
    }
}
