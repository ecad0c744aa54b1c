//! Named Lie superalgebras realized as spans of supermatrices in a concrete `End(V)`,
//! and abstract algebras given by structure constants.

mod abstract_alg;
mod classical;
mod forms;
mod heisenberg;

pub use abstract_alg::AbstractAlgebra;
pub use classical::{
    aut_of_form, gl, o, osp, pe, pe_lambda, q, qtr_rel, queer_centralizer, queer_j, sl, sp, spe, sq, squeer_centralizer,
};
pub use forms::{aut_basis, even_form, odd_form, sym_of_form, symplectic_form, tensor_form, GramForm, Symmetry};
pub use heisenberg::{
    abelian_components, as_operators, as_operators_with, hei, hei_rep, o_spinor, po1_components, realize_as, sergeev_as, sergeev_as_with, sergeev_component, spe4_matrices, AsRealization,
    CentralTerm,
};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::superlinalg::{super_bracket, Echelon, SuperDim, SuperMatrix, Subspace};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Meta {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub preserved_form: Option<GramForm>,
    #[serde(rename = "J", skip_serializing_if = "Option::is_none")]
    pub j: Option<SuperMatrix>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub character_twist: Option<Scalar>,
}

/// Lie superalgebra spanned by homogeneous supermatrices on `carrier`. The basis is the
/// canonical echelon basis of the span, so two algebras with the same span have the
/// same basis.
#[derive(Clone, Debug)]
pub struct LieSuperAlgebra {
    name: String,
    carrier: SuperDim,
    basis: Vec<SuperMatrix>,
    space: Subspace,
    meta: Meta,
}

/// Parity of each coordinate of flattened `End(V)`.
pub fn end_mask(carrier: SuperDim) -> Vec<u8> {
    let n = carrier.total();
    (0..n * n).map(|k| SuperMatrix::coord_parity(carrier, k)).collect()
}

impl LieSuperAlgebra {
    /// Span of the homogeneous components of `gens`; no closure is taken.
    pub fn from_spanning(name: impl Into<String>, carrier: SuperDim, gens: &[SuperMatrix]) -> LieSuperAlgebra {
        let n = carrier.total();
        let mut e = Echelon::new(n * n);
        for g in gens {
            assert_eq!(g.dim(), carrier, "generator lives on {} not {carrier}", g.dim());
            for (_, h) in g.homogeneous_parts() {
                e.insert(h.entries());
            }
        }
        Self::from_subspace(name, carrier, e.to_subspace())
    }

    /// The subspace must be graded.
    pub fn from_subspace(name: impl Into<String>, carrier: SuperDim, space: Subspace) -> LieSuperAlgebra {
        let mask = end_mask(carrier);
        assert!(space.is_graded(&mask), "subspace is not graded");
        let space = space.with_parity_mask(mask);
        let basis = space.basis().iter().map(|r| SuperMatrix::from_flat(carrier, r)).collect();
        LieSuperAlgebra { name: name.into(), carrier, basis, space, meta: Meta::default() }
    }

    pub fn with_meta(mut self, meta: Meta) -> Self {
        self.meta = meta;
        self
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn carrier(&self) -> SuperDim {
        self.carrier
    }

    pub fn basis(&self) -> &[SuperMatrix] {
        &self.basis
    }

    pub fn as_subspace(&self) -> &Subspace {
        &self.space
    }

    pub fn meta(&self) -> &Meta {
        &self.meta
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn superdim(&self) -> SuperDim {
        let odd = self.basis.iter().filter(|b| b.pbit() == 1).count();
        SuperDim::new(self.basis.len() - odd, odd)
    }

    pub fn contains_matrix(&self, x: &SuperMatrix) -> bool {
        x.dim() == self.carrier && self.space.coords(x.entries()).is_some()
    }

    /// Subspace containment `other ⊆ self`.
    pub fn contains(&self, other: &LieSuperAlgebra) -> Result<bool> {
        if other.carrier != self.carrier {
            return Err(Error::DimMismatch(format!("{} vs {}", other.carrier, self.carrier)));
        }
        self.space.contains(&other.space)
    }

    pub fn contains_identity(&self) -> bool {
        self.contains_matrix(&SuperMatrix::identity(self.carrier))
    }

    /// First basis pair whose bracket leaves the span.
    pub fn closure_defect(&self) -> Option<(usize, usize)> {
        let e = self.space.echelon();
        for i in 0..self.basis.len() {
            for j in i..self.basis.len() {
                let b = super_bracket(&self.basis[i], &self.basis[j]).expect("common carrier");
                if !e.contains(b.entries()) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_closed(&self) -> bool {
        self.closure_defect().is_none()
    }

    /// Kernel of a homogeneous linear functional restricted to the algebra.
    pub fn kernel_of(&self, name: impl Into<String>, f: impl Fn(&SuperMatrix) -> Scalar) -> LieSuperAlgebra {
        let vals: Vec<Scalar> = self.basis.iter().map(&f).collect();
        let mut gens = Vec::with_capacity(self.basis.len());
        for parity in 0..2u8 {
            let class: Vec<usize> = (0..self.basis.len()).filter(|&k| self.basis[k].pbit() == parity).collect();
            let pivot = class.iter().copied().find(|&k| !vals[k].is_zero());
            for &k in &class {
                match pivot {
                    Some(p) if k == p => {}
                    Some(p) if !vals[k].is_zero() => {
                        let c = vals[k].div_ref(&vals[p]).expect("nonzero pivot value");
                        gens.push(self.basis[k].sub(&self.basis[p].scale(&c)).expect("same carrier"));
                    }
                    _ => gens.push(self.basis[k].clone()),
                }
            }
        }
        let mut out = LieSuperAlgebra::from_spanning(name, self.carrier, &gens);
        out.meta = self.meta.clone();
        out
    }

    /// Image under `X ↦ P X P⁻¹` for an even invertible `p`. The J in the metadata is
    /// carried along; a preserved form is dropped.
    pub fn conjugated(&self, p: &SuperMatrix, p_inv: &SuperMatrix) -> Result<LieSuperAlgebra> {
        let conj = |x: &SuperMatrix| p.matmul(x)?.matmul(p_inv);
        let gens = self.basis.iter().map(conj).collect::<Result<Vec<_>>>()?;
        let meta = Meta { j: self.meta.j.as_ref().map(conj).transpose()?, ..self.meta.clone() };
        let meta = Meta { preserved_form: None, ..meta };
        Ok(LieSuperAlgebra::from_spanning(self.name.clone(), p.dim(), &gens).with_meta(meta))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let sd = self.superdim();
        serde_json::json!({
            "name": self.name,
            "carrier": [self.carrier.even, self.carrier.odd],
            "superdim": [sd.even, sd.odd],
            "basis": self.basis,
            "meta": self.meta,
        })
    }
}

/// Either kind of algebra returned by [`by_name`].
#[derive(Clone, Debug)]
pub enum NamedAlgebra {
    Linear(LieSuperAlgebra),
    Abstract(AbstractAlgebra),
}

impl NamedAlgebra {
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            NamedAlgebra::Linear(a) => a.to_json(),
            NamedAlgebra::Abstract(a) => a.to_json(),
        }
    }
}

fn parse_args(s: &str, name: &str) -> Option<String> {
    s.strip_prefix(name)?.strip_prefix('(')?.strip_suffix(')').map(str::to_string)
}

fn parse_usize(s: &str) -> Result<usize> {
    s.trim().parse().map_err(|_| Error::Parse(format!("expected a nonnegative integer, got {s:?}")))
}

fn parse_pair(s: &str) -> Result<(usize, usize)> {
    let (a, b) = s.split_once('|').ok_or_else(|| Error::Parse(format!("expected m|n, got {s:?}")))?;
    Ok((parse_usize(a)?, parse_usize(b)?))
}

/// Looks up an algebra by its printed name, e.g. `gl(2|1)`, `q(3)`, `osp(3|2)`,
/// `pe_lambda(3;1/2)`, `hei(5)` or `as`.
pub fn by_name(name: &str) -> Result<NamedAlgebra> {
    let s: String = name.chars().filter(|c| !c.is_whitespace()).collect();
    use NamedAlgebra::*;
    if s == "as" {
        return Ok(Abstract(sergeev_as()));
    }
    if s == "as_operators" {
        return as_operators().map(Linear);
    }
    // longer prefixes first so that "spe" is not read as "sp"
    if let Some(a) = parse_args(&s, "pe_lambda") {
        let (n, l) = a.split_once(';').ok_or_else(|| Error::Parse("expected pe_lambda(n;λ)".into()))?;
        let lambda: Scalar = l.parse()?;
        return Ok(Linear(pe_lambda(parse_usize(n)?, lambda)));
    }
    if let Some(a) = parse_args(&s, "hei_rep") {
        return Ok(Linear(hei_rep(parse_usize(&a)?)));
    }
    if let Some(a) = parse_args(&s, "hei") {
        return Ok(Abstract(hei(parse_usize(&a)?)));
    }
    if let Some(a) = parse_args(&s, "o_spinor") {
        return Ok(Linear(o_spinor(parse_usize(&a)?)));
    }
    if let Some(a) = parse_args(&s, "osp") {
        let (m, n) = parse_pair(&a)?;
        if n % 2 == 1 {
            return Err(Error::Parse("osp(m|2n) needs an even odd dimension".into()));
        }
        return Ok(Linear(osp(m, n / 2)));
    }
    if let Some(a) = parse_args(&s, "spe") {
        return Ok(Linear(spe(parse_usize(&a)?)));
    }
    if let Some(a) = parse_args(&s, "pe") {
        return Ok(Linear(pe(parse_usize(&a)?)));
    }
    if let Some(a) = parse_args(&s, "sp") {
        let n = parse_usize(&a)?;
        if n % 2 == 1 {
            return Err(Error::Parse("sp(2n) needs an even dimension".into()));
        }
        return Ok(Linear(sp(n / 2)));
    }
    if let Some(a) = parse_args(&s, "sq") {
        return Ok(Linear(sq(parse_usize(&a)?)));
    }
    if let Some(a) = parse_args(&s, "sl") {
        let (m, n) = parse_pair(&a)?;
        return Ok(Linear(sl(m, n)));
    }
    if let Some(a) = parse_args(&s, "gl") {
        let (m, n) = parse_pair(&a)?;
        return Ok(Linear(gl(m, n)));
    }
    if let Some(a) = parse_args(&s, "q") {
        return Ok(Linear(q(parse_usize(&a)?)));
    }
    if let Some(a) = parse_args(&s, "o") {
        return Ok(Linear(o(parse_usize(&a)?)));
    }
    Err(Error::Unknown(name.to_string()))
}

/// [`by_name`] restricted to algebras realized by matrices.
pub fn linear_by_name(name: &str) -> Result<LieSuperAlgebra> {
    match by_name(name)? {
        NamedAlgebra::Linear(a) => Ok(a),
        NamedAlgebra::Abstract(_) => Err(Error::Precondition(format!("{name} is only available abstractly"))),
    }
}
