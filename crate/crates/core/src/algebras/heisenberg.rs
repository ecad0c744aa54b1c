//! Heisenberg superalgebras, their Clifford-type representations, the spinor
//! realization of o(m), and the central extension 𝔞𝔰 of spe(4).

use super::{AbstractAlgebra, LieSuperAlgebra};
use crate::error::{Error, Result};
use crate::grassmann::{lambda_dim, GrassmannElement, Po};
use crate::modtools::{minimal_submodules, ModuleAction};
use crate::scalar::Scalar;
use crate::superlinalg::{nullspace, super_bracket, Coordinatizer, SuperDim, SuperMatrix};

/// hei(0|m): odd `ξ_i, η_i` (and `θ` for odd `m`) with `[ξ_i, η_j] = δ_ij z`, `[θ, θ] = z`.
pub fn hei(m: usize) -> AbstractAlgebra {
    let r = m / 2;
    let mut names = vec!["z".to_string()];
    names.extend((1..=r).map(|i| format!("xi{i}")));
    names.extend((1..=r).map(|i| format!("eta{i}")));
    if m % 2 == 1 {
        names.push("theta".into());
    }
    let d = names.len();
    let mut parities = vec![1u8; d];
    parities[0] = 0;
    let mut consts = vec![vec![vec![Scalar::zero(); d]; d]; d];
    for i in 0..r {
        consts[1 + i][1 + r + i][0] = Scalar::one();
        consts[1 + r + i][1 + i][0] = Scalar::one();
    }
    if m % 2 == 1 {
        consts[d - 1][d - 1][0] = Scalar::one();
    }
    AbstractAlgebra::new(names, parities, consts).expect("consistent table")
}

/// `z ↦ 1, ξ_i ↦ ξ_i, η_i ↦ ∂_{ξ_i}, θ ↦ θ + ∂_θ` on Λ(⌈m/2⌉).
pub fn hei_rep(m: usize) -> LieSuperAlgebra {
    let po = Po::new(m);
    let mut gens = vec![po.quantize(&po.one())];
    gens.extend((0..m).map(|i| po.quantize(&po.var(i))));
    LieSuperAlgebra::from_spanning(format!("hei_rep({m})"), lambda_dim(po.carrier_rank()), &gens)
}

/// Quantized quadratic elements of po(0|m): the spinor representation of o(m). The
/// normal-ordered `ξ_i ∂_i` is shifted by `−1/2` (symmetric ordering); without the shift
/// the span only closes modulo the identity.
pub fn o_spinor(m: usize) -> LieSuperAlgebra {
    let po = Po::new(m);
    let dim = lambda_dim(po.carrier_rank());
    let half = SuperMatrix::scalar(dim, Scalar::frac(1, 2));
    let gens: Vec<SuperMatrix> = po
        .graded_basis(0)
        .expect("grade 0 exists for m ≥ 2")
        .iter()
        .map(|f| {
            let q = po.quantize(f);
            let paired = (0..po.pairs()).any(|j| !f.coeff((1 << po.xi(j)) | (1 << po.eta(j))).is_zero());
            if paired {
                q.sub(&half).expect("same dim")
            } else {
                q
            }
        })
        .collect();
    LieSuperAlgebra::from_spanning(format!("o_spinor({m})"), dim, &gens)
}

/// Minimal po_0-submodules of the cubic part po_1 of po(0|6).
pub fn po1_components() -> Result<Vec<Vec<GrassmannElement>>> {
    let po = Po::new(6);
    let cubics = po.graded_basis(1)?;
    let quads = po.graded_basis(0)?;
    let coords: Vec<Vec<Scalar>> = cubics.iter().map(GrassmannElement::to_coords).collect();
    let coord = Coordinatizer::new(64, &coords)?;
    let dim = SuperDim::new(0, cubics.len());
    let c = cubics.len();
    let ops = quads
        .iter()
        .map(|f| {
            let mut e = vec![Scalar::zero(); c * c];
            for (j, g) in cubics.iter().enumerate() {
                let b = po.bracket(f, g);
                let co = coord.coords(&b.to_coords()).ok_or_else(|| Error::Internal("po_0 does not preserve po_1".into()))?;
                for (i, v) in co.into_iter().enumerate() {
                    e[i * c + j] = v;
                }
            }
            Ok(SuperMatrix::new(dim, e))
        })
        .collect::<Result<Vec<_>>>()?;
    let report = minimal_submodules(&ModuleAction::new(dim, ops)?)?;
    if !report.is_complete() {
        return Err(Error::SplitFailure);
    }
    Ok(report
        .minimal
        .iter()
        .map(|s| {
            s.basis()
                .iter()
                .map(|row| {
                    row.iter().zip(&cubics).fold(GrassmannElement::zero(6), |acc, (x, g)| acc.add(&g.scale(x)))
                })
                .collect()
        })
        .collect())
}

/// The 10-dimensional components `W` of po_1(0|6) with `{W, W} = 0`.
pub fn abelian_components() -> Result<Vec<Vec<GrassmannElement>>> {
    let po = Po::new(6);
    Ok(po1_components()?
        .into_iter()
        .filter(|w| w.len() == 10 && w.iter().all(|a| w.iter().all(|b| po.bracket(a, b).is_zero())))
        .collect())
}

/// The first abelian 10-dimensional component of po_1(0|6) in canonical order. Both
/// components are abelian; the reflection `ξ₃ ↔ η₃` exchanges them.
pub fn sergeev_component() -> Result<Vec<GrassmannElement>> {
    abelian_components()?.into_iter().next().ok_or(Error::ComponentNotFound)
}

/// Quantized `span(1) ⊕ Λ¹ ⊕ Λ² ⊕ W` acting on Λ(3).
pub fn as_operators() -> Result<LieSuperAlgebra> {
    as_operators_with(&sergeev_component()?)
}

pub fn as_operators_with(w: &[GrassmannElement]) -> Result<LieSuperAlgebra> {
    let po = Po::new(6);
    let mut gens = vec![po.quantize(&po.one())];
    for i in -1..=0 {
        gens.extend(po.graded_basis(i)?.iter().map(|f| po.quantize(f)));
    }
    gens.extend(w.iter().map(|f| po.quantize(f)));
    Ok(LieSuperAlgebra::from_spanning("as_operators", lambda_dim(3), &gens))
}

/// Named basis of spe(4) in the form `(A B; C −Aᵀ)` with `tr A = 0`, `B` symmetric and
/// `C` antisymmetric.
pub fn spe4_matrices() -> (Vec<String>, Vec<SuperMatrix>) {
    let dim = SuperDim::new(4, 4);
    let unit = |i: usize, j: usize| SuperMatrix::unit(dim, i, j);
    let add = |a: SuperMatrix, b: SuperMatrix| a.add(&b).expect("same dim");
    let (mut names, mut mats) = (vec![], vec![]);
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                names.push(format!("A{}{}", i + 1, j + 1));
                mats.push(unit(i, j).sub(&unit(4 + j, 4 + i)).expect("same dim"));
            }
        }
    }
    for k in 0..3 {
        names.push(format!("H{}", k + 1));
        let a = unit(k, k).sub(&unit(k + 1, k + 1)).expect("same dim");
        mats.push(add(a, unit(4 + k + 1, 4 + k + 1)).sub(&unit(4 + k, 4 + k)).expect("same dim"));
    }
    for i in 0..4 {
        for j in i..4 {
            names.push(format!("B{}{}", i + 1, j + 1));
            mats.push(if i == j { unit(i, 4 + i) } else { add(unit(i, 4 + j), unit(j, 4 + i)) });
        }
    }
    for i in 0..4 {
        for j in i + 1..4 {
            names.push(format!("C{}{}", i + 1, j + 1));
            mats.push(unit(4 + i, j).sub(&unit(4 + j, i)).expect("same dim"));
        }
    }
    (names, mats)
}

fn lower_left(x: &SuperMatrix) -> Vec<Vec<Scalar>> {
    (0..4).map(|i| (0..4).map(|j| x.get(4 + i, j).clone()).collect()).collect()
}

fn perm_sign(p: [usize; 4]) -> i64 {
    let mut s = 1;
    for a in 0..4 {
        for b in a + 1..4 {
            if p[a] == p[b] {
                return 0;
            }
            if p[a] > p[b] {
                s = -s;
            }
        }
    }
    s
}

/// `C̃_ij = ½ Σ ε_ijkl C_kl`, i.e. `C̃_ij = C_kl` for `(i, j, k, l)` an even permutation.
fn hodge(c: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let half = Scalar::frac(1, 2);
    (0..4)
        .map(|i| {
            (0..4)
                .map(|j| {
                    let mut t = Scalar::zero();
                    for k in 0..4 {
                        for l in 0..4 {
                            let e = perm_sign([i, j, k, l]);
                            if e != 0 {
                                t.add_mul(&(&half * &Scalar::int(e)), &c[k][l]);
                            }
                        }
                    }
                    t
                })
                .collect()
        })
        .collect()
}

/// Central term of the 𝔞𝔰 bracket.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CentralTerm {
    /// `tr(C C′)` as printed; this is not a 2-cocycle and the result violates Jacobi.
    Literal,
    /// `tr(C C̃′)` with the Hodge dual `C̃′`.
    HodgeDual,
}

/// 𝔞𝔰 = spe(4) ⊕ C·z with `[x + d z, x′ + d′ z] = [x, x′] + tr(C C̃′) z`.
pub fn sergeev_as() -> AbstractAlgebra {
    sergeev_as_with(CentralTerm::HodgeDual)
}

pub fn sergeev_as_with(term: CentralTerm) -> AbstractAlgebra {
    let (mut names, mats) = spe4_matrices();
    let d = mats.len() + 1;
    let coord = Coordinatizer::new(64, &mats.iter().map(SuperMatrix::entries).collect::<Vec<_>>()).expect("independent");
    let mut consts = vec![vec![vec![Scalar::zero(); d]; d]; d];
    for (i, x) in mats.iter().enumerate() {
        let cx = lower_left(x);
        for (j, y) in mats.iter().enumerate() {
            let b = super_bracket(x, y).expect("same dim");
            let mut row = coord.coords(b.entries()).expect("spe(4) is closed");
            let cy = match term {
                CentralTerm::Literal => lower_left(y),
                CentralTerm::HodgeDual => hodge(&lower_left(y)),
            };
            let mut t = Scalar::zero();
            for a in 0..4 {
                for c in 0..4 {
                    t.add_mul(&cx[a][c], &cy[c][a]);
                }
            }
            row.push(t);
            consts[i][j] = row;
        }
    }
    let mut parities: Vec<u8> = mats.iter().map(SuperMatrix::pbit).collect();
    names.push("z".into());
    parities.push(0);
    AbstractAlgebra::new(names, parities, consts).expect("consistent table")
}

/// A basis of the quantized `span(1) ⊕ Λ¹ ⊕ Λ² ⊕ W` matched one to one with the basis
/// of [`sergeev_as`]: `A, H ↦ Λ²`, `B ↦ W`, `C ↦ Λ¹` and `z ↦ z_scale · 1`.
#[derive(Clone, Debug)]
pub struct AsRealization {
    pub images: Vec<SuperMatrix>,
    pub z_scale: Scalar,
    /// Which half of Λ(3) (0 even, 1 odd) is matched with the defining sl(4)-module.
    pub half: usize,
    /// Whether the match goes through `A ↦ −Aᵀ`.
    pub dual: bool,
}

impl AsRealization {
    /// Whether `[image_i, image_j] = Σ_k c_ijk image_k` for every pair of basis elements of `a`.
    pub fn reproduces(&self, a: &AbstractAlgebra) -> bool {
        if a.dim() != self.images.len() {
            return false;
        }
        let dim = self.images[0].dim();
        (0..a.dim()).all(|i| {
            (0..a.dim()).all(|j| {
                let terms: Vec<(Scalar, &SuperMatrix)> =
                    a.bracket_basis(i, j).iter().cloned().zip(&self.images).filter(|(c, _)| !c.is_zero()).collect();
                super_bracket(&self.images[i], &self.images[j]).expect("same dim") == SuperMatrix::lin_comb(dim, &terms)
            })
        })
    }
}

fn quarter(x: &SuperMatrix, half: usize) -> Vec<Scalar> {
    let o = 4 * half;
    (0..4).flat_map(|i| (0..4).map(move |j| (i, j))).map(|(i, j)| x.get(o + i, o + j).clone()).collect()
}

fn combine(coeffs: &[Scalar], basis: &[SuperMatrix]) -> SuperMatrix {
    let terms: Vec<(Scalar, &SuperMatrix)> = coeffs.iter().cloned().zip(basis).filter(|(c, _)| !c.is_zero()).collect();
    SuperMatrix::lin_comb(basis[0].dim(), &terms)
}

/// The unique-up-to-scale map `src → span(tgt)` with `φ([X, s]) = [α(X), φ(s)]`, or
/// `None` unless the solution space is a line.
fn intertwiner(evens: &[(SuperMatrix, SuperMatrix)], src: &[SuperMatrix], tgt: &[SuperMatrix]) -> Result<Option<Vec<SuperMatrix>>> {
    let (ns, nt) = (src.len(), tgt.len());
    let sc = Coordinatizer::new(64, &src.iter().map(SuperMatrix::entries).collect::<Vec<_>>())?;
    let tc = Coordinatizer::new(64, &tgt.iter().map(SuperMatrix::entries).collect::<Vec<_>>())?;
    let var = |r: usize, c: usize| r * ns + c;
    let mut eqs = Vec::new();
    for (x, ax) in evens {
        let a: Vec<Vec<Scalar>> = src.iter().map(|s| sc.coords(super_bracket(x, s).expect("same dim").entries())).collect::<Option<_>>().ok_or_else(|| Error::Precondition("source is not a module".into()))?;
        let b: Vec<Vec<Scalar>> = tgt.iter().map(|t| tc.coords(super_bracket(ax, t).expect("same dim").entries())).collect::<Option<_>>().ok_or_else(|| Error::Precondition("target is not a module".into()))?;
        for j in 0..ns {
            for l in 0..nt {
                let mut row = vec![Scalar::zero(); ns * nt];
                for k in 0..ns {
                    row[var(l, k)] += &a[j][k];
                }
                for i in 0..nt {
                    row[var(i, j)] -= &b[i][l];
                }
                eqs.push(row);
            }
        }
    }
    let sol = nullspace(&eqs, ns * nt);
    if sol.len() != 1 {
        return Ok(None);
    }
    let t = &sol[0];
    Ok(Some((0..ns).map(|j| combine(&(0..nt).map(|i| t[var(i, j)].clone()).collect::<Vec<_>>(), tgt)).collect()))
}

/// Matches the quantized operators built from the cubic component `w` with [`sergeev_as`]:
/// the even parts through the half-spin block, the odd parts by module intertwiners, with
/// the relative scale of `B` and `C` fixed by their brackets and the scale of `z` read off
/// `[C, C]`. `None` when no identification of the even parts admits both odd maps.
pub fn realize_as(w: &[GrassmannElement]) -> Result<Option<AsRealization>> {
    let po = Po::new(6);
    let abs = sergeev_as();
    let (_, mats) = spe4_matrices();
    let spin = o_spinor(6);
    // quantized W is stable only modulo Λ¹, so both odd maps land in the whole odd part
    let odd: Vec<SuperMatrix> =
        po.graded_basis(-1)?.iter().chain(w).map(|f| po.quantize(f)).collect();
    let (n_even, n_b) = (15, 10);
    let dim = SuperDim::new(4, 4);
    for (half, dual) in [(0, false), (0, true), (1, false), (1, true)] {
        let blocks: Vec<Vec<Scalar>> = spin.basis().iter().map(|x| quarter(x, half)).collect();
        let Ok(bc) = Coordinatizer::new(16, &blocks) else { continue };
        // `dual` composes with the outer automorphism A ↦ −Aᵀ of sl(4)
        let block_of = |x: &SuperMatrix| {
            let q = quarter(x, half);
            if dual {
                (0..16).map(|k| -&q[(k % 4) * 4 + k / 4]).collect()
            } else {
                q
            }
        };
        let alpha = |x: &SuperMatrix| bc.coords(&block_of(x)).map(|c| combine(&c, spin.basis()));
        let Some(evens) = mats[..n_even].iter().map(|x| alpha(x).map(|a| (x.clone(), a))).collect::<Option<Vec<_>>>() else { continue };
        let hom = evens.iter().all(|(x, ax)| {
            evens.iter().all(|(y, ay)| alpha(&super_bracket(x, y).expect("same dim")).as_ref() == Some(&super_bracket(ax, ay).expect("same dim")))
        });
        if !hom {
            continue;
        }
        let (bs, cs) = (&mats[n_even..n_even + n_b], &mats[n_even + n_b..]);
        let (Some(cimg), Some(bimg)) = (intertwiner(&evens, cs, &odd)?, intertwiner(&evens, bs, &odd)?) else { continue };

        // [s·B', C'] = α([B, C]) fixes s
        let mut s = None;
        'pairs: for (b, bi) in bs.iter().zip(&bimg) {
            for (c, ci) in cs.iter().zip(&cimg) {
                let want = alpha(&super_bracket(b, c)?).ok_or_else(|| Error::Internal("[B, C] left sl(4)".into()))?;
                let got = super_bracket(bi, ci)?;
                if let Some(k) = (0..64).find(|&k| !got.entries()[k].is_zero()) {
                    s = Some(want.entries()[k].div_ref(&got.entries()[k])?);
                    break 'pairs;
                }
            }
        }
        let Some(s) = s else { continue };
        let bimg: Vec<SuperMatrix> = bimg.iter().map(|x| x.scale(&s)).collect();

        // [C', C''] = t z ↦ t κ · 1
        let z_index = abs.dim() - 1;
        let mut kappa = None;
        'cc: for (i, ci) in cimg.iter().enumerate() {
            for (j, cj) in cimg.iter().enumerate() {
                let t = &abs.bracket_basis(n_even + n_b + i, n_even + n_b + j)[z_index];
                if !t.is_zero() {
                    kappa = Some(super_bracket(ci, cj)?.get(0, 0).div_ref(t)?);
                    break 'cc;
                }
            }
        }
        let Some(kappa) = kappa else { continue };
        let mut images: Vec<SuperMatrix> = evens.into_iter().map(|(_, a)| a).collect();
        images.extend(bimg);
        images.extend(cimg);
        images.push(SuperMatrix::scalar(dim, kappa.clone()));
        return Ok(Some(AsRealization { images, z_scale: kappa, half, dual }));
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heisenberg_shapes() {
        let h = hei(4);
        assert_eq!(h.superdim(), SuperDim::new(1, 4));
        assert!(h.check_antisymmetry() && h.check_jacobi());
        let r = hei_rep(4);
        assert_eq!(r.superdim(), SuperDim::new(1, 4));
        assert!(r.is_closed());
    }

    #[test]
    fn spinor_dimensions() {
        assert_eq!(o_spinor(4).dim(), 6);
        assert_eq!(o_spinor(5).dim(), 10);
        assert_eq!(o_spinor(6).dim(), 15);
        for m in 2..=6 {
            assert!(o_spinor(m).is_closed(), "m = {m}");
        }
    }

    #[test]
    fn sergeev_abstract_table() {
        let a = sergeev_as();
        assert_eq!(a.superdim(), SuperDim::new(16, 16));
        assert!(a.check_antisymmetry());
        assert!(a.check_jacobi());
        let names = a.names();
        let b12 = names.iter().position(|n| n == "B12").unwrap();
        let b33 = names.iter().position(|n| n == "B33").unwrap();
        assert!(a.bracket_basis(b12, b33).iter().all(Scalar::is_zero));
    }

    #[test]
    fn both_cubic_components_give_closed_operator_algebras() {
        let ws = abelian_components().unwrap();
        assert_eq!(ws.len(), 2);
        for w in &ws {
            let a = as_operators_with(w).unwrap();
            assert_eq!(a.superdim(), SuperDim::new(16, 16));
            assert!(a.is_closed());
        }
    }

    #[test]
    fn quantized_operators_realize_the_extension() {
        let r = realize_as(&sergeev_component().unwrap()).unwrap().expect("a matching half");
        assert!(r.reproduces(&sergeev_as()));
        assert!(!r.reproduces(&sergeev_as_with(CentralTerm::Literal)));
        let span = LieSuperAlgebra::from_spanning("images", SuperDim::new(4, 4), &r.images);
        assert_eq!(span.as_subspace(), as_operators().unwrap().as_subspace());
    }

    #[test]
    fn printed_central_term_is_not_a_cocycle() {
        let a = sergeev_as_with(CentralTerm::Literal);
        assert!(a.check_antisymmetry());
        assert!(!a.check_jacobi());
    }
}
