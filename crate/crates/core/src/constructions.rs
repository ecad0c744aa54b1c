//! The four construction families: ⊙ of two linear algebras, ⊙ of two queer algebras on
//! the Q-carrier, current algebras `g ⊗ Λ(n) ⋉ vect(0|n)` and their form-preserving
//! variants, and the normalizer `hei(0|m) ⋉ o(m)`.

use serde::{Deserialize, Serialize};

use crate::algebras::{aut_basis, hei_rep, linear_by_name, o_spinor, tensor_form, GramForm, LieSuperAlgebra, Meta};
use crate::error::{Error, Result};
use crate::grassmann::{lambda_dim, mult_operator, omega_half, t_lambda, vect_basis, GrassmannElement, VectorField};
use crate::scalar::Scalar;
use crate::superlinalg::{kron, str, tensor_order, SuperDim, SuperMatrix};

/// An algebra together with the ambient it is claimed to be maximal in.
#[derive(Clone, Debug)]
pub struct ConstructionResult {
    pub algebra: LieSuperAlgebra,
    pub ambient: LieSuperAlgebra,
    pub carrier_factorization: String,
}

fn tensor_images(g1: &LieSuperAlgebra, g2: &LieSuperAlgebra) -> Vec<SuperMatrix> {
    let (id1, id2) = (SuperMatrix::identity(g1.carrier()), SuperMatrix::identity(g2.carrier()));
    let mut gens: Vec<SuperMatrix> = g1.basis().iter().map(|x| kron(x, &id2)).collect();
    gens.extend(g2.basis().iter().map(|y| kron(&id1, y)));
    gens
}

/// Image of `g1 ⊕ g2` under `X1 + X2 ↦ X1 ⊗ 1 + 1 ⊗ X2`.
pub fn odot_g(g1: &LieSuperAlgebra, g2: &LieSuperAlgebra) -> Result<LieSuperAlgebra> {
    if g1.meta().j.is_some() && g2.meta().j.is_some() {
        return Err(Error::Precondition("both factors are queer; use odot_q".into()));
    }
    let carrier = g1.carrier().tensor(&g2.carrier());
    let meta = match (&g1.meta().j, &g2.meta().j) {
        (Some(j), None) => Meta { j: Some(kron(j, &SuperMatrix::identity(g2.carrier()))), ..Meta::default() },
        (None, Some(j)) => Meta { j: Some(kron(&SuperMatrix::identity(g1.carrier()), j)), ..Meta::default() },
        _ => Meta::default(),
    };
    Ok(LieSuperAlgebra::from_spanning(format!("{}⊙{}", g1.name(), g2.name()), carrier, &tensor_images(g1, g2))
        .with_meta(meta))
}

/// The flip `v ⊗ w ↦ (−1)^{p(v)p(w)} w ⊗ v` from `V1 ⊗ V2` to `V2 ⊗ V1`.
pub fn braiding(d1: SuperDim, d2: SuperDim) -> SuperMatrix {
    let src = tensor_order(d1, d2);
    let dst = tensor_order(d2, d1);
    let dim = d1.tensor(&d2);
    let mut m = SuperMatrix::zero(dim);
    for (c, &(i, j)) in src.iter().enumerate() {
        let r = dst.iter().position(|&(a, b)| (a, b) == (j, i)).expect("pair present");
        m.set(r, c, Scalar::sign(d1.parity(i) as u32 & d2.parity(j) as u32));
    }
    m
}

/// `U = 1|1` with `J_U = (0 1; −1 0)`, `I_U = (0 i; i 0)`, `D_U = diag(1, −1)`.
pub fn u_operators() -> [SuperMatrix; 3] {
    let u = SuperDim::new(1, 1);
    let (z, one, i) = (Scalar::zero(), Scalar::one(), Scalar::i());
    [
        SuperMatrix::from_rows(u, &[vec![z.clone(), one.clone()], vec![-&one, z.clone()]]),
        SuperMatrix::from_rows(u, &[vec![z.clone(), i.clone()], vec![i, z.clone()]]),
        SuperMatrix::from_rows(u, &[vec![one.clone(), z.clone()], vec![z, -&one]]),
    ]
}

/// The carrier `(V1)₀ ⊗ U ⊗ (V2)₀` with `J = 1 ⊗ J_U ⊗ 1` and `I = 1 ⊗ I_U ⊗ 1`.
#[derive(Clone, Debug)]
pub struct QCarrier {
    pub n1: usize,
    pub n2: usize,
    pub dim: SuperDim,
    pub j: SuperMatrix,
    pub i: SuperMatrix,
}

impl QCarrier {
    /// `1_{n1} ⊗ u ⊗ 1_{n2}`-type operators: `a ⊗ u ⊗ b`.
    pub fn lift(&self, a: &SuperMatrix, u: &SuperMatrix, b: &SuperMatrix) -> SuperMatrix {
        kron(&kron(a, u), b)
    }

    /// `q(n1) = End((V1)₀) ⊗ Span(1, I_U)` acting on the first two factors.
    pub fn first_factor(&self) -> Vec<SuperMatrix> {
        let [_, iu, _] = u_operators();
        let one_u = SuperMatrix::identity(SuperDim::new(1, 1));
        let e1 = SuperDim::new(self.n1, 0);
        let id2 = SuperMatrix::identity(SuperDim::new(self.n2, 0));
        let mut out = Vec::new();
        for a in 0..self.n1 {
            for b in 0..self.n1 {
                let x = SuperMatrix::unit(e1, a, b);
                out.push(self.lift(&x, &one_u, &id2));
                out.push(self.lift(&x, &iu, &id2));
            }
        }
        out
    }

    /// `q(n2) = Span(1, J_U) ⊗ End((V2)₀)` acting on the last two factors.
    pub fn second_factor(&self) -> Vec<SuperMatrix> {
        let [ju, _, _] = u_operators();
        let one_u = SuperMatrix::identity(SuperDim::new(1, 1));
        let e2 = SuperDim::new(self.n2, 0);
        let id1 = SuperMatrix::identity(SuperDim::new(self.n1, 0));
        let mut out = Vec::new();
        for a in 0..self.n2 {
            for b in 0..self.n2 {
                let y = SuperMatrix::unit(e2, a, b);
                out.push(self.lift(&id1, &one_u, &y));
                out.push(self.lift(&id1, &ju, &y));
            }
        }
        out
    }
}

pub fn q_carrier(n1: usize, n2: usize) -> Result<QCarrier> {
    if n1 == 0 || n2 == 0 {
        return Err(Error::Precondition("q_carrier needs n1, n2 ≥ 1".into()));
    }
    let [ju, iu, _] = u_operators();
    let (id1, id2) = (SuperMatrix::identity(SuperDim::new(n1, 0)), SuperMatrix::identity(SuperDim::new(n2, 0)));
    let j = kron(&kron(&id1, &ju), &id2);
    let i = kron(&kron(&id1, &iu), &id2);
    Ok(QCarrier { n1, n2, dim: j.dim(), j, i })
}

/// Image of `q(n1) ⊕ q(n2)` on the Q-carrier.
pub fn odot_q(n1: usize, n2: usize) -> Result<LieSuperAlgebra> {
    let c = q_carrier(n1, n2)?;
    let mut gens = c.first_factor();
    gens.extend(c.second_factor());
    Ok(LieSuperAlgebra::from_spanning(format!("q({n1})⊙q({n2})"), c.dim, &gens))
}

/// `ρ(A ⊗ φ) = (−1)^{p(φ)p(v)} Av ⊗ φψ` for `A` in `g1` and all monomials `φ`.
fn current_ideal(g1: &[SuperMatrix], n: usize) -> Vec<SuperMatrix> {
    let mut out = Vec::new();
    for s in crate::grassmann::lambda_basis(n) {
        let phi = mult_operator(&GrassmannElement::monomial(n, s, Scalar::one()));
        out.extend(g1.iter().map(|a| kron(a, &phi)));
    }
    out
}

/// Which vector fields enter a current algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VectPart {
    /// All of vect(0|n).
    Full,
    /// Only the constant fields `∂_i`.
    Constant,
}

fn vect_fields(n: usize, part: VectPart) -> Vec<VectorField> {
    match part {
        VectPart::Full => vect_basis(n),
        VectPart::Constant => (0..n).map(|i| VectorField::basis_field(n, 0, i)).collect(),
    }
}

/// `g1 ⊗ Λ(n) ⋉ vect(0|n)` on `V1 ⊗ Λ(n)`.
pub fn current_semidirect(g1: &LieSuperAlgebra, n: usize) -> Result<LieSuperAlgebra> {
    current_semidirect_with(g1, n, VectPart::Full)
}

pub fn current_semidirect_with(g1: &LieSuperAlgebra, n: usize, part: VectPart) -> Result<LieSuperAlgebra> {
    if n == 0 {
        return Err(Error::Precondition("current algebras need n ≥ 1".into()));
    }
    let carrier = g1.carrier().tensor(&lambda_dim(n));
    let mut gens = current_ideal(g1.basis(), n);
    let id1 = SuperMatrix::identity(g1.carrier());
    gens.extend(vect_fields(n, part).iter().map(|d| kron(&id1, &d.operator())));
    let tail = match part {
        VectPart::Full => format!("vect(0|{n})"),
        VectPart::Constant => "Span(∂)".into(),
    };
    let meta = match &g1.meta().j {
        Some(j) => Meta { j: Some(kron(j, &SuperMatrix::identity(lambda_dim(n)))), ..Meta::default() },
        None => Meta::default(),
    };
    Ok(LieSuperAlgebra::from_spanning(format!("{}⊗Λ({n})⋉{tail}", g1.name()), carrier, &gens).with_meta(meta))
}

/// The part of `g ⊗ Λ(n) ⋉ vect(0|n)` spanned by `ρ(g ⊗ Λ(n))`.
pub fn current_ideal_span(g1: &LieSuperAlgebra, n: usize) -> Vec<SuperMatrix> {
    current_ideal(g1.basis(), n)
}

/// `aut(G1) ⊗ Λ(n) ⋉ T^{1/2}(vect(0|n))`, which preserves `G1 ⊗ ω_{1/2}`.
pub fn form_semidirect(g1: &GramForm, n: usize) -> Result<ConstructionResult> {
    if n == 0 {
        return Err(Error::Precondition("current algebras need n ≥ 1".into()));
    }
    let aut1 = aut_basis(g1);
    let mut gens = current_ideal(&aut1, n);
    let id1 = SuperMatrix::identity(g1.carrier());
    gens.extend(t_lambda(n, Scalar::frac(1, 2)).basis_images().iter().map(|d| kron(&id1, d)));
    let carrier = g1.carrier().tensor(&lambda_dim(n));
    let algebra = LieSuperAlgebra::from_spanning(format!("aut(ω1)⊗Λ({n})⋉T^1/2(vect(0|{n}))"), carrier, &gens);
    let product = tensor_form(g1, &omega_half(n));
    let aut = crate::algebras::aut_of_form("aut(ω1⊗ω_1/2)", &product);
    let c = g1.carrier();
    let ambient = if n == 1 && g1.parity() == 0 && c.even != c.odd {
        aut
    } else {
        aut.kernel_of("saut(ω1⊗ω_1/2)", str)
    };
    Ok(ConstructionResult {
        algebra,
        ambient,
        carrier_factorization: format!("V1({c}) ⊗ Λ({n}), form of parity {} ⊗ ω_1/2", g1.parity()),
    })
}

/// `hei(0|m) ⋉ o(m)` on Λ(⌈m/2⌉): the quantized elements of degree ≤ 2.
pub fn hei_normalizer(m: usize) -> Result<LieSuperAlgebra> {
    if m < 2 {
        return Err(Error::Precondition("hei_normalizer needs m ≥ 2".into()));
    }
    let h = hei_rep(m);
    let o = o_spinor(m);
    let mut gens = h.basis().to_vec();
    gens.extend(o.basis().iter().cloned());
    Ok(LieSuperAlgebra::from_spanning(format!("hei(0|{m})⋉o({m})"), h.carrier(), &gens))
}

/// Form descriptor for JSON construction arguments.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum FormSpec {
    /// [`crate::algebras::even_form`] on `m|2n`.
    Even { m: usize, n: usize },
    /// [`crate::algebras::symplectic_form`] on `2n|0`.
    Symplectic { n: usize },
    /// [`crate::algebras::odd_form`] on `n|n`.
    Odd { n: usize },
}

impl FormSpec {
    pub fn build(&self) -> GramForm {
        match *self {
            FormSpec::Even { m, n } => crate::algebras::even_form(m, n),
            FormSpec::Symplectic { n } => crate::algebras::symplectic_form(n),
            FormSpec::Odd { n } => crate::algebras::odd_form(n),
        }
    }
}

/// JSON-serializable construction descriptor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "args")]
pub enum Construction {
    #[serde(rename = "odot_G")]
    OdotG { g1: String, g2: String },
    #[serde(rename = "odot_Q")]
    OdotQ { n1: usize, n2: usize },
    #[serde(rename = "current")]
    Current { g1: String, n: usize, #[serde(default = "full")] vect: VectPart },
    #[serde(rename = "form_current")]
    FormCurrent { form: FormSpec, n: usize },
    #[serde(rename = "hei_norm")]
    HeiNorm { m: usize },
}

fn full() -> VectPart {
    VectPart::Full
}

impl Construction {
    pub fn build(&self) -> Result<LieSuperAlgebra> {
        match self {
            Construction::OdotG { g1, g2 } => odot_g(&linear_by_name(g1)?, &linear_by_name(g2)?),
            Construction::OdotQ { n1, n2 } => odot_q(*n1, *n2),
            Construction::Current { g1, n, vect } => current_semidirect_with(&linear_by_name(g1)?, *n, *vect),
            Construction::FormCurrent { form, n } => Ok(form_semidirect(&form.build(), *n)?.algebra),
            Construction::HeiNorm { m } => hei_normalizer(*m),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("descriptors serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::{gl, osp, pe, q, sl, sq, symplectic_form};
    use crate::modtools::{is_ideal, normalizer};
    use crate::superlinalg::{super_bracket, Subspace};

    fn sd(a: &LieSuperAlgebra) -> (usize, usize) {
        let d = a.superdim();
        (d.even, d.odd)
    }

    #[test]
    fn odot_dimension_law() {
        let a = odot_g(&gl(2, 0), &gl(1, 1)).unwrap();
        assert_eq!(sd(&a), (5, 2));
        let b = odot_g(&sl(2, 0), &sl(1, 1)).unwrap();
        assert_eq!(sd(&b), (4, 2));
        assert!(a.is_closed() && b.is_closed());
        assert!(odot_g(&q(1), &q(1)).is_err());
    }

    #[test]
    fn braiding_conjugates_the_factors() {
        let (g1, g2) = (gl(2, 1), sl(1, 1));
        let a = odot_g(&g1, &g2).unwrap();
        let b = odot_g(&g2, &g1).unwrap();
        let p = braiding(g1.carrier(), g2.carrier());
        let pt = braiding(g2.carrier(), g1.carrier());
        assert_eq!(p.matmul(&pt).unwrap(), SuperMatrix::identity(p.dim()));
        let moved: Vec<SuperMatrix> = a.basis().iter().map(|x| p.matmul(x).unwrap().matmul(&pt).unwrap()).collect();
        assert_eq!(LieSuperAlgebra::from_spanning("", b.carrier(), &moved).as_subspace(), b.as_subspace());
    }

    #[test]
    fn q_carrier_operators() {
        let c = q_carrier(2, 3).unwrap();
        let minus = SuperMatrix::scalar(c.dim, Scalar::int(-1));
        assert_eq!(c.j.matmul(&c.j).unwrap(), minus);
        assert_eq!(c.i.matmul(&c.i).unwrap(), minus);
        assert!(super_bracket(&c.i, &c.j).unwrap().is_zero());
        for x in c.first_factor() {
            assert!(super_bracket(&x, &c.j).unwrap().is_zero());
        }
        for y in c.second_factor() {
            assert!(super_bracket(&y, &c.i).unwrap().is_zero());
        }
    }

    #[test]
    fn odot_q_small_cases() {
        assert_eq!(odot_q(1, 1).unwrap().as_subspace(), sl(1, 1).as_subspace());
        let a = odot_q(1, 2).unwrap();
        assert!(a.is_closed());
        assert!(sl(2, 2).contains(&a).unwrap());
    }

    #[test]
    fn queer_odot_lands_in_the_relative_q() {
        let a = odot_g(&q(1), &gl(2, 1)).unwrap();
        let j = a.meta().j.clone().unwrap();
        assert!(a.basis().iter().all(|x| super_bracket(x, &j).unwrap().is_zero()));
        let b = odot_g(&q(1), &gl(1, 1)).unwrap();
        let amb = crate::algebras::squeer_centralizer("sq", b.meta().j.as_ref().unwrap());
        assert!(amb.contains(&b).unwrap());
        assert_eq!(sq(2).dim(), amb.dim());
    }

    #[test]
    fn current_algebra_shapes() {
        let a = current_semidirect(&gl(1, 0), 1).unwrap();
        assert_eq!(a.as_subspace(), gl(1, 1).as_subspace());
        let b = current_semidirect(&gl(2, 0), 2).unwrap();
        assert_eq!(sd(&b), (12, 12));
        assert!(b.is_closed());
        let ideal = Subspace::span(
            64,
            &current_ideal_span(&gl(2, 0), 2).iter().map(SuperMatrix::flatten).collect::<Vec<_>>(),
        );
        assert!(is_ideal(&ideal, &b).unwrap());
        let s = current_semidirect_with(&gl(2, 0), 1, VectPart::Constant).unwrap();
        assert_eq!(s.dim(), 9);
    }

    #[test]
    fn form_current_is_pe2_for_symplectic_plane() {
        let r = form_semidirect(&symplectic_form(1), 1).unwrap();
        assert!(r.algebra.is_closed());
        assert_eq!(r.algebra.as_subspace(), r.ambient.as_subspace());
        assert_eq!(r.ambient.dim(), pe(2).dim());
    }

    #[test]
    fn form_current_preserves_product_form() {
        let r = form_semidirect(&crate::algebras::even_form(1, 1), 2).unwrap();
        assert!(r.algebra.is_closed());
        assert!(r.ambient.contains(&r.algebra).unwrap());
        assert_eq!(osp(1, 1).dim(), 5);
    }

    #[test]
    fn heisenberg_normalizer() {
        let a = hei_normalizer(4).unwrap();
        assert_eq!(sd(&a), (7, 4));
        assert!(a.is_closed());
        assert_eq!(normalizer(&hei_rep(4)).unwrap().as_subspace(), a.as_subspace());
        let b = hei_normalizer(5).unwrap();
        assert_eq!(sd(&b), (11, 5));
        assert!(b.is_closed());
    }

    #[test]
    fn descriptor_round_trip() {
        let d = Construction::OdotG { g1: "gl(2|1)".into(), g2: "gl(1|1)".into() };
        let j = d.to_json();
        assert_eq!(j["kind"], "odot_G");
        let back: Construction = serde_json::from_value(j).unwrap();
        assert_eq!(back, d);
        assert_eq!(back.build().unwrap().dim(), 9 + 4 - 1);
    }
}
