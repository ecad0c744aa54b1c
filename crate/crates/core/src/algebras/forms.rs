//! Nondegenerate bilinear forms given by Gram matrices, and the Lie superalgebras
//! `aut(ω)` and subspaces `sym(ω)` attached to them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::superlinalg::{nullspace, tensor_order, Parity, SuperDim, SuperMatrix, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Symmetry {
    /// `ω(y, x) = (−1)^{p(x)p(y)} ω(x, y)`
    Supersymmetric,
    /// `ω(y, x) = −(−1)^{p(x)p(y)} ω(x, y)`
    SuperAntisymmetric,
}

/// Bilinear form `ω(e_k, e_l) = G_kl` on a superspace in standard format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GramForm {
    carrier: SuperDim,
    matrix: SuperMatrix,
    parity: u8,
    symmetry: Symmetry,
}

impl GramForm {
    pub fn new(matrix: SuperMatrix) -> Result<GramForm> {
        let carrier = matrix.dim();
        let n = carrier.total();
        let rows: Vec<Vec<Scalar>> = matrix.entries().chunks(n.max(1)).map(<[Scalar]>::to_vec).collect();
        if Subspace::span(n, &rows).dim() != n {
            return Err(Error::DegenerateForm);
        }
        let parity = match matrix.parity() {
            Parity::Mixed => return Err(Error::Precondition("Gram matrix is not homogeneous".into())),
            p => p.bit().unwrap_or(0),
        };
        let test = |sign: i64| {
            (0..n).all(|i| {
                (0..n).all(|j| {
                    let s = if carrier.parity(i) & carrier.parity(j) == 1 { -sign } else { sign };
                    *matrix.get(j, i) == matrix.get(i, j) * &Scalar::int(s)
                })
            })
        };
        let symmetry = if test(1) {
            Symmetry::Supersymmetric
        } else if test(-1) {
            Symmetry::SuperAntisymmetric
        } else {
            return Err(Error::Precondition("form has no super-symmetry type".into()));
        };
        Ok(GramForm { carrier, matrix, parity, symmetry })
    }

    pub fn carrier(&self) -> SuperDim {
        self.carrier
    }

    pub fn matrix(&self) -> &SuperMatrix {
        &self.matrix
    }

    pub fn parity(&self) -> u8 {
        self.parity
    }

    pub fn symmetry(&self) -> Symmetry {
        self.symmetry
    }

    /// `ω(x, y)` on coordinate vectors.
    pub fn eval(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let gy = self.matrix.apply(y);
        let mut s = Scalar::zero();
        for (a, b) in x.iter().zip(&gy) {
            if !a.is_zero() && !b.is_zero() {
                s.add_mul(a, b);
            }
        }
        s
    }
}

fn ints(v: &[Vec<i64>]) -> Vec<Vec<Scalar>> {
    v.iter().map(|r| r.iter().map(|&x| Scalar::int(x)).collect()).collect()
}

fn antidiag(m: usize) -> Vec<Vec<i64>> {
    (0..m).map(|i| (0..m).map(|j| i64::from(i + j + 1 == m)).collect()).collect()
}

/// `(0 1_n; −1_n 0)`.
fn symplectic(n: usize) -> Vec<Vec<i64>> {
    (0..2 * n)
        .map(|i| {
            (0..2 * n)
                .map(|j| {
                    if i < n && j == i + n {
                        1
                    } else if i >= n && j + n == i {
                        -1
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect()
}

fn zeros(r: usize, c: usize) -> Vec<Vec<Scalar>> {
    vec![vec![Scalar::zero(); c]; r]
}

/// Even supersymmetric form on `m|2n`: antidiagonal ones on the even block and
/// `(0 1_n; −1_n 0)` on the odd block.
pub fn even_form(m: usize, n: usize) -> GramForm {
    let g = SuperMatrix::from_blocks(&ints(&antidiag(m)), &zeros(m, 2 * n), &zeros(2 * n, m), &ints(&symplectic(n)));
    GramForm::new(g).expect("standard even form is nondegenerate")
}

/// Skew form `(0 1_n; −1_n 0)` on the purely even space `2n|0`.
pub fn symplectic_form(n: usize) -> GramForm {
    let g = SuperMatrix::from_blocks(&ints(&symplectic(n)), &zeros(2 * n, 0), &zeros(0, 2 * n), &zeros(0, 0));
    GramForm::new(g).expect("symplectic form is nondegenerate")
}

/// Odd form `(0 1_n; 1_n 0)` on `n|n`.
pub fn odd_form(n: usize) -> GramForm {
    let id: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    let g = SuperMatrix::from_blocks(&zeros(n, n), &ints(&id), &ints(&id), &zeros(n, n));
    GramForm::new(g).expect("odd form is nondegenerate")
}

/// Solutions `A` of `ω(Ax, y) + s·(−1)^{p(A)p(x)} ω(x, Ay) = 0` for `s = ±1`, one
/// homogeneous basis per parity.
fn form_system(g: &GramForm, s: i64) -> Vec<SuperMatrix> {
    let dim = g.carrier;
    let n = dim.total();
    let gm = &g.matrix;
    let mut out = Vec::new();
    for a in 0..2u8 {
        let vars: Vec<usize> = (0..n * n).filter(|&k| SuperMatrix::coord_parity(dim, k) == a).collect();
        let mut col = vec![usize::MAX; n * n];
        for (c, &k) in vars.iter().enumerate() {
            col[k] = c;
        }
        let mut eqs = Vec::with_capacity(n * n);
        for k in 0..n {
            let sk = if a & dim.parity(k) == 1 { -s } else { s };
            for l in 0..n {
                // (AᵀG)_kl + sk (GA)_kl
                let mut row = vec![Scalar::zero(); vars.len()];
                for r in 0..n {
                    let x = gm.get(r, l);
                    if !x.is_zero() && col[r * n + k] != usize::MAX {
                        row[col[r * n + k]] += x;
                    }
                    let y = gm.get(k, r);
                    if !y.is_zero() && col[r * n + l] != usize::MAX {
                        row[col[r * n + l]].add_mul(&Scalar::int(sk), y);
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    eqs.push(row);
                }
            }
        }
        for sol in nullspace(&eqs, vars.len()) {
            let mut e = vec![Scalar::zero(); n * n];
            for (c, x) in sol.into_iter().enumerate() {
                e[vars[c]] = x;
            }
            out.push(SuperMatrix::new(dim, e));
        }
    }
    out
}

/// Basis of `aut(ω)`, homogeneous.
pub fn aut_basis(g: &GramForm) -> Vec<SuperMatrix> {
    form_system(g, 1)
}

/// `sym(ω) = {A : ω(Ax, y) = (−1)^{p(A)p(x)} ω(x, Ay)}` as a subspace of flattened `End(V)`.
pub fn sym_of_form(g: &GramForm) -> Subspace {
    let n = g.carrier.total();
    let rows: Vec<Vec<Scalar>> = form_system(g, -1).iter().map(SuperMatrix::flatten).collect();
    Subspace::span(n * n, &rows)
}

/// Gram matrix of `ω1 ⊗ ω2` on `V1 ⊗ V2` (pair basis in [`tensor_order`]):
/// `ω(v1⊗v2, w1⊗w2) = (−1)^{p(v2)p(w1)} ω1(v1, w1) ω2(v2, w2)`.
pub fn tensor_form(g1: &GramForm, g2: &GramForm) -> GramForm {
    let (d1, d2) = (g1.carrier, g2.carrier);
    let order = tensor_order(d1, d2);
    let dim = d1.tensor(&d2);
    let m = SuperMatrix::from_fn(dim, |r, c| {
        let (i, j) = order[r];
        let (k, l) = order[c];
        let x = g1.matrix.get(i, k);
        let y = g2.matrix.get(j, l);
        if x.is_zero() || y.is_zero() {
            return Scalar::zero();
        }
        let v = x * y;
        if d2.parity(j) & d1.parity(k) == 1 {
            -v
        } else {
            v
        }
    });
    GramForm::new(m).expect("tensor product of nondegenerate forms is nondegenerate")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_forms_have_expected_types() {
        let e = even_form(1, 1);
        assert_eq!((e.parity(), e.symmetry()), (0, Symmetry::Supersymmetric));
        let o = odd_form(2);
        assert_eq!((o.parity(), o.symmetry()), (1, Symmetry::Supersymmetric));
        let s = symplectic_form(1);
        assert_eq!(s.symmetry(), Symmetry::SuperAntisymmetric);
    }

    #[test]
    fn singular_gram_is_rejected() {
        let g = SuperMatrix::from_ints(SuperDim::new(2, 0), &[&[1, 1], &[1, 1]]);
        assert!(matches!(GramForm::new(g), Err(Error::DegenerateForm)));
    }

    #[test]
    fn tensor_form_symmetry_law() {
        let e = even_form(1, 1);
        let s = symplectic_form(1);
        assert_eq!(tensor_form(&e, &e).symmetry(), Symmetry::Supersymmetric);
        assert_eq!(tensor_form(&e, &s).symmetry(), Symmetry::SuperAntisymmetric);
        assert_eq!(tensor_form(&s, &s).symmetry(), Symmetry::Supersymmetric);
        assert_eq!(tensor_form(&e, &odd_form(1)).parity(), 1);
    }

    #[test]
    fn aut_and_sym_fill_end() {
        for g in [even_form(2, 1), odd_form(2), symplectic_form(1), tensor_form(&even_form(1, 1), &odd_form(1))] {
            let n = g.carrier().total();
            let aut = Subspace::span(n * n, &aut_basis(&g).iter().map(SuperMatrix::flatten).collect::<Vec<_>>());
            let sym = sym_of_form(&g);
            assert_eq!(aut.dim() + sym.dim(), n * n);
            assert!(aut.intersect(&sym).unwrap().is_zero());
        }
    }
}
