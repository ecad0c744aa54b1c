//! Grassmann algebras Λ(n), Berezin integration, vector fields and densities on the
//! (0|n)-dimensional superspace, the Poisson superalgebra po(0|m) and its
//! normal-ordered quantization.
//!
//! Monomials are bitmasks: bit `i` stands for the generator `ξ_{i+1}`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebras::GramForm;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::superlinalg::{super_bracket, SuperDim, SuperMatrix};

pub type Monomial = u32;

#[inline]
fn degree(s: Monomial) -> u32 {
    s.count_ones()
}

/// `ξ_S · ξ_T` as a sign and a monomial, or `None` when the product vanishes.
pub fn mono_mul(s: Monomial, t: Monomial) -> Option<(bool, Monomial)> {
    if s & t != 0 {
        return None;
    }
    // count pairs (a ∈ S, b ∈ T) with a > b: each needs one transposition
    let mut swaps = 0u32;
    let mut rest = t;
    while rest != 0 {
        let b = rest.trailing_zeros();
        swaps += (s >> (b + 1)).count_ones();
        rest &= rest - 1;
    }
    Some((swaps % 2 == 1, s | t))
}

/// Elements of S listed increasingly (0-based generator indices).
pub fn mono_elems(s: Monomial) -> Vec<usize> {
    (0..32).filter(|&i| s >> i & 1 == 1).collect()
}

fn lex_key(s: Monomial) -> (u32, Vec<usize>) {
    (degree(s), mono_elems(s))
}

/// Basis of Λ(n) in standard format: even-degree monomials first, each class ordered by
/// degree and then lexicographically.
pub fn lambda_basis(n: usize) -> Vec<Monomial> {
    let mut all: Vec<Monomial> = (0..(1u32 << n)).collect();
    all.sort_by_key(|&s| (degree(s) % 2, lex_key(s)));
    all
}

/// Superdimension of Λ(n).
pub fn lambda_dim(n: usize) -> SuperDim {
    if n == 0 {
        SuperDim::new(1, 0)
    } else {
        SuperDim::new(1 << (n - 1), 1 << (n - 1))
    }
}

/// Position of each monomial in [`lambda_basis`].
pub fn lambda_index(n: usize) -> Vec<usize> {
    let mut idx = vec![0; 1 << n];
    for (k, &s) in lambda_basis(n).iter().enumerate() {
        idx[s as usize] = k;
    }
    idx
}

/// Element of the Grassmann algebra Λ(n).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrassmannElement {
    n: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl GrassmannElement {
    pub fn zero(n: usize) -> Self {
        assert!(n <= 30, "too many generators");
        GrassmannElement { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(n, 0, Scalar::one())
    }

    pub fn monomial(n: usize, s: Monomial, c: Scalar) -> Self {
        let mut e = Self::zero(n);
        assert!(s >> n == 0, "monomial uses a generator beyond ξ_{n}");
        if !c.is_zero() {
            e.terms.insert(s, c);
        }
        e
    }

    /// The generator `ξ_i`, 0-based.
    pub fn generator(n: usize, i: usize) -> Self {
        Self::monomial(n, 1 << i, Scalar::one())
    }

    /// Monomial from 1-based generator indices, in the given order (sign included).
    pub fn from_indices(n: usize, idx: &[usize]) -> Self {
        let mut e = Self::one(n);
        for &i in idx {
            e = e.mul(&Self::generator(n, i - 1));
        }
        e
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &Scalar)> {
        self.terms.iter().map(|(&s, c)| (s, c))
    }

    pub fn coeff(&self, s: Monomial) -> Scalar {
        self.terms.get(&s).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Parity bit when homogeneous (zero counts as even).
    pub fn parity(&self) -> Option<u8> {
        let mut p = None;
        for &s in self.terms.keys() {
            let q = (degree(s) % 2) as u8;
            match p {
                None => p = Some(q),
                Some(r) if r != q => return None,
                _ => {}
            }
        }
        Some(p.unwrap_or(0))
    }

    /// Largest monomial degree present (`None` for zero).
    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&s| degree(s)).max()
    }

    fn add_term(&mut self, s: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(s).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&s);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n);
        let mut r = self.clone();
        for (s, c) in o.terms() {
            r.add_term(s, c);
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&Scalar::int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut r = Self::zero(self.n);
        if !c.is_zero() {
            for (s, x) in self.terms() {
                r.terms.insert(s, x * c);
            }
        }
        r
    }

    /// Supercommutative product.
    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n, "generator counts differ");
        let mut r = Self::zero(self.n);
        for (s, a) in self.terms() {
            for (t, b) in o.terms() {
                if let Some((neg, u)) = mono_mul(s, t) {
                    let p = a * b;
                    r.add_term(u, &if neg { -p } else { p });
                }
            }
        }
        r
    }

    /// Left derivative `∂/∂ξ_i`, 0-based.
    pub fn deriv(&self, i: usize) -> Self {
        let mut r = Self::zero(self.n);
        for (s, c) in self.terms() {
            if s >> i & 1 == 1 {
                let before = (s & ((1 << i) - 1)).count_ones();
                let v = if before % 2 == 1 { -c } else { c.clone() };
                r.add_term(s & !(1 << i), &v);
            }
        }
        r
    }

    /// Image under the algebra map sending `ξ_i` to `images[i]`.
    pub fn substitute(&self, images: &[GrassmannElement]) -> GrassmannElement {
        assert_eq!(images.len(), self.n);
        let target = images.first().map(|e| e.n).unwrap_or(0);
        let mut r = Self::zero(target);
        for (s, c) in self.terms() {
            let mut p = Self::one(target);
            for i in mono_elems(s) {
                p = p.mul(&images[i]);
            }
            r = r.add(&p.scale(c));
        }
        r
    }

    /// Coordinates in [`lambda_basis`] order.
    pub fn to_coords(&self) -> Vec<Scalar> {
        let idx = lambda_index(self.n);
        let mut v = vec![Scalar::zero(); 1 << self.n];
        for (s, c) in self.terms() {
            v[idx[s as usize]] = c.clone();
        }
        v
    }

    pub fn from_coords(n: usize, v: &[Scalar]) -> Self {
        let mut r = Self::zero(n);
        for (&s, c) in lambda_basis(n).iter().zip(v) {
            r.add_term(s, c);
        }
        r
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    monomial: Vec<usize>,
    coeff: Scalar,
}

#[derive(Serialize, Deserialize)]
struct ElementJson {
    n: usize,
    terms: Vec<TermJson>,
}

impl Serialize for GrassmannElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut keys: Vec<Monomial> = self.terms.keys().copied().collect();
        keys.sort_by_key(|&m| lex_key(m));
        ElementJson {
            n: self.n,
            terms: keys
                .into_iter()
                .map(|m| TermJson { monomial: mono_elems(m).iter().map(|i| i + 1).collect(), coeff: self.terms[&m].clone() })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GrassmannElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = ElementJson::deserialize(d)?;
        let mut r = GrassmannElement::zero(j.n);
        for t in j.terms {
            let mut s: Monomial = 0;
            for &i in &t.monomial {
                if i == 0 || i > j.n || s >> (i - 1) & 1 == 1 {
                    return Err(serde::de::Error::custom(format!("bad monomial {:?}", t.monomial)));
                }
                s |= 1 << (i - 1);
            }
            let mut sorted = t.monomial.clone();
            sorted.sort_unstable();
            if sorted != t.monomial {
                return Err(serde::de::Error::custom("monomial indices must increase"));
            }
            r.add_term(s, &t.coeff);
        }
        Ok(r)
    }
}

pub fn lambda_mul(f: &GrassmannElement, g: &GrassmannElement) -> Result<GrassmannElement> {
    if f.n != g.n {
        return Err(Error::DimMismatch(format!("Λ({}) vs Λ({})", f.n, g.n)));
    }
    Ok(f.mul(g))
}

/// Coefficient of the top monomial `ξ_1 ⋯ ξ_n`.
pub fn berezin(f: &GrassmannElement) -> Scalar {
    f.coeff(((1u64 << f.n) - 1) as Monomial)
}

/// Matrix of left multiplication by `f` on Λ(n).
pub fn mult_operator(f: &GrassmannElement) -> SuperMatrix {
    let n = f.n;
    let basis = lambda_basis(n);
    let idx = lambda_index(n);
    let size = basis.len();
    let mut e = vec![Scalar::zero(); size * size];
    for (col, &t) in basis.iter().enumerate() {
        for (s, c) in f.terms() {
            if let Some((neg, u)) = mono_mul(s, t) {
                e[idx[u as usize] * size + col] = if neg { -c } else { c.clone() };
            }
        }
    }
    SuperMatrix::new(lambda_dim(n), e)
}

/// Matrix of the left derivative `∂_i` (0-based) on Λ(n).
pub fn deriv_operator(n: usize, i: usize) -> SuperMatrix {
    let basis = lambda_basis(n);
    let idx = lambda_index(n);
    let size = basis.len();
    let mut e = vec![Scalar::zero(); size * size];
    for (col, &t) in basis.iter().enumerate() {
        let d = GrassmannElement::monomial(n, t, Scalar::one()).deriv(i);
        for (s, c) in d.terms() {
            e[idx[s as usize] * size + col] = c.clone();
        }
    }
    SuperMatrix::new(lambda_dim(n), e)
}

/// Applies an operator on Λ(n) to an element.
pub fn apply_operator(op: &SuperMatrix, f: &GrassmannElement) -> GrassmannElement {
    GrassmannElement::from_coords(f.n, &op.apply(&f.to_coords()))
}

/// Normal-ordered differential operator `Σ c · ξ_S ∂_T` together with its matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiffOperator {
    pub matrix: SuperMatrix,
    /// Terms `(S, T, c)` standing for `c · ξ_S ∘ ∂_{t1} ∘ ⋯ ∘ ∂_{tk}` with `t1 < ⋯ < tk`.
    #[serde(skip)]
    pub symbol: Option<Vec<(Monomial, Monomial, Scalar)>>,
}

impl DiffOperator {
    pub fn from_matrix(matrix: SuperMatrix) -> Self {
        DiffOperator { matrix, symbol: None }
    }

    pub fn from_symbol(n: usize, terms: Vec<(Monomial, Monomial, Scalar)>) -> Self {
        let matrix = symbol_matrix(n, &terms);
        DiffOperator { matrix, symbol: Some(terms) }
    }

    /// Whether the stored symbol evaluates to the stored matrix.
    pub fn is_consistent(&self, n: usize) -> bool {
        match &self.symbol {
            None => true,
            Some(t) => symbol_matrix(n, t) == self.matrix,
        }
    }
}

fn symbol_matrix(n: usize, terms: &[(Monomial, Monomial, Scalar)]) -> SuperMatrix {
    let dim = lambda_dim(n);
    let mut acc = SuperMatrix::zero(dim);
    for (s, t, c) in terms {
        let mut op = mult_operator(&GrassmannElement::monomial(n, *s, c.clone()));
        for j in mono_elems(*t) {
            op = op.matmul(&deriv_operator(n, j)).expect("same dim");
        }
        acc = acc.add(&op).expect("same dim");
    }
    acc
}

/// Vector field `Σ f_i ∂_i` on the (0|n)-dimensional superspace.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VectorField {
    pub n: usize,
    pub coeffs: Vec<GrassmannElement>,
}

impl VectorField {
    /// `ξ_S ∂_i` (0-based `i`).
    pub fn basis_field(n: usize, s: Monomial, i: usize) -> Self {
        let mut coeffs = vec![GrassmannElement::zero(n); n];
        coeffs[i] = GrassmannElement::monomial(n, s, Scalar::one());
        VectorField { n, coeffs }
    }

    pub fn operator(&self) -> SuperMatrix {
        let mut acc = SuperMatrix::zero(lambda_dim(self.n));
        for (i, f) in self.coeffs.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            let t = mult_operator(f).matmul(&deriv_operator(self.n, i)).expect("same dim");
            acc = acc.add(&t).expect("same dim");
        }
        acc
    }

    /// Recovers the field from an operator, which must be a derivation of Λ(n).
    pub fn from_operator(n: usize, op: &SuperMatrix) -> Result<Self> {
        if op.dim() != lambda_dim(n) {
            return Err(Error::NotAVectorField);
        }
        let coeffs: Vec<GrassmannElement> =
            (0..n).map(|i| apply_operator(op, &GrassmannElement::generator(n, i))).collect();
        let d = VectorField { n, coeffs };
        if &d.operator() != op {
            return Err(Error::NotAVectorField);
        }
        Ok(d)
    }

    pub fn parity(&self) -> Option<u8> {
        let mut p = None;
        for f in &self.coeffs {
            if f.is_zero() {
                continue;
            }
            let q = f.parity()? ^ 1;
            match p {
                None => p = Some(q),
                Some(r) if r != q => return None,
                _ => {}
            }
        }
        Some(p.unwrap_or(0))
    }
}

/// Basis `ξ_S ∂_i` of vect(0|n): monomials in [`lambda_basis`] order, then `i`.
pub fn vect_basis(n: usize) -> Vec<VectorField> {
    let mut out = Vec::with_capacity(n << n);
    for s in lambda_basis(n) {
        for i in 0..n {
            out.push(VectorField::basis_field(n, s, i));
        }
    }
    out
}

/// `div(Σ f_i ∂_i) = Σ (−1)^{p(f_i)} ∂_i f_i`, term by term on homogeneous parts.
pub fn divergence(d: &VectorField) -> GrassmannElement {
    let mut r = GrassmannElement::zero(d.n);
    for (i, f) in d.coeffs.iter().enumerate() {
        for (s, c) in f.terms() {
            let term = GrassmannElement::monomial(d.n, s, c.clone()).deriv(i);
            r = if degree(s) % 2 == 1 { r.sub(&term) } else { r.add(&term) };
        }
    }
    r
}

/// Divergence of an operator that is a vector field.
pub fn divergence_of_operator(n: usize, op: &SuperMatrix) -> Result<GrassmannElement> {
    Ok(divergence(&VectorField::from_operator(n, op)?))
}

/// The density representation `T^λ(D) = D + λ·div D` of vect(0|n) on Λ(n).
#[derive(Clone, Debug)]
pub struct TLambda {
    pub n: usize,
    pub lambda: Scalar,
}

pub fn t_lambda(n: usize, lambda: Scalar) -> TLambda {
    TLambda { n, lambda }
}

impl TLambda {
    pub fn image(&self, d: &VectorField) -> SuperMatrix {
        let div = divergence(d).scale(&self.lambda);
        d.operator().add(&mult_operator(&div)).expect("same dim")
    }

    pub fn basis_images(&self) -> Vec<SuperMatrix> {
        vect_basis(self.n).iter().map(|d| self.image(d)).collect()
    }

    /// Checks `T([D1, D2]) = [T D1, T D2]` on all basis pairs.
    pub fn is_homomorphism(&self) -> bool {
        let basis = vect_basis(self.n);
        let imgs: Vec<SuperMatrix> = basis.iter().map(|d| self.image(d)).collect();
        let ops: Vec<SuperMatrix> = basis.iter().map(VectorField::operator).collect();
        for a in 0..basis.len() {
            for b in 0..basis.len() {
                let br = super_bracket(&ops[a], &ops[b]).expect("same dim");
                let field = VectorField::from_operator(self.n, &br).expect("vector fields are closed");
                if self.image(&field) != super_bracket(&imgs[a], &imgs[b]).expect("same dim") {
                    return false;
                }
            }
        }
        true
    }
}

/// The pairing `ω_{1/2}(f, g) = ∫ f g` on Λ(n), with Gram entries `berezin(ξ_S ξ_T)`.
pub fn omega_half(n: usize) -> GramForm {
    let basis = lambda_basis(n);
    let size = basis.len();
    let mut e = vec![Scalar::zero(); size * size];
    let top = ((1u64 << n) - 1) as Monomial;
    for (r, &s) in basis.iter().enumerate() {
        for (c, &t) in basis.iter().enumerate() {
            if let Some((neg, u)) = mono_mul(s, t) {
                if u == top {
                    e[r * size + c] = Scalar::sign(neg as u32);
                }
            }
        }
    }
    GramForm::new(SuperMatrix::new(lambda_dim(n), e)).expect("the Berezin pairing is nondegenerate")
}

/// Which operator represents `θ` in the quantization of po(0|m) for odd `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThetaScale {
    /// `θ ↦ θ + ∂_θ`, whose square is the identity.
    Unit,
    /// `θ ↦ (θ + ∂_θ)/√2`, the normalization for which `[Q θ, Q θ] = Q{θ, θ}`.
    Clifford,
}

/// Coordinates of po(0|m): `ξ_1..ξ_r, η_1..η_r` and, for odd `m`, `θ`, with `r = ⌊m/2⌋`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Po {
    pub m: usize,
}

impl Po {
    pub fn new(m: usize) -> Po {
        assert!(m >= 1 && m <= 30);
        Po { m }
    }

    pub fn pairs(&self) -> usize {
        self.m / 2
    }

    pub fn has_theta(&self) -> bool {
        self.m % 2 == 1
    }

    /// Number of generators of the Grassmann algebra the quantization acts on.
    pub fn carrier_rank(&self) -> usize {
        self.m.div_ceil(2)
    }

    /// Variable index of `ξ_j` (0-based `j`).
    pub fn xi(&self, j: usize) -> usize {
        j
    }

    pub fn eta(&self, j: usize) -> usize {
        self.pairs() + j
    }

    pub fn theta(&self) -> Option<usize> {
        self.has_theta().then_some(2 * self.pairs())
    }

    pub fn var(&self, i: usize) -> GrassmannElement {
        GrassmannElement::generator(self.m, i)
    }

    pub fn one(&self) -> GrassmannElement {
        GrassmannElement::one(self.m)
    }

    /// `{f, g} = −(−1)^{p(f)} (Σ_i (∂f/∂ξ_i ∂g/∂η_i + ∂f/∂η_i ∂g/∂ξ_i) + ∂f/∂θ ∂g/∂θ)`.
    pub fn bracket(&self, f: &GrassmannElement, g: &GrassmannElement) -> GrassmannElement {
        let mut out = GrassmannElement::zero(self.m);
        for (s, c) in f.terms() {
            let fm = GrassmannElement::monomial(self.m, s, c.clone());
            let mut acc = GrassmannElement::zero(self.m);
            for j in 0..self.pairs() {
                acc = acc.add(&fm.deriv(self.xi(j)).mul(&g.deriv(self.eta(j))));
                acc = acc.add(&fm.deriv(self.eta(j)).mul(&g.deriv(self.xi(j))));
            }
            if let Some(t) = self.theta() {
                acc = acc.add(&fm.deriv(t).mul(&g.deriv(t)));
            }
            // −(−1)^{p(f)}: +1 for odd f, −1 for even f
            out = if degree(s) % 2 == 1 { out.add(&acc) } else { out.sub(&acc) };
        }
        out
    }

    /// Basis monomials of the graded piece `po_i`, i.e. degree `i + 2`.
    pub fn graded_basis(&self, i: i64) -> Result<Vec<GrassmannElement>> {
        if i < -2 || i > self.m as i64 - 2 {
            return Err(Error::BadGrade(i));
        }
        let d = (i + 2) as u32;
        let mut monos: Vec<Monomial> = (0..(1u32 << self.m)).filter(|&s| degree(s) == d).collect();
        monos.sort_by_key(|&s| lex_key(s));
        Ok(monos.into_iter().map(|s| GrassmannElement::monomial(self.m, s, Scalar::one())).collect())
    }

    /// Grade `deg − 2` of a homogeneous-degree element.
    pub fn grade(&self, f: &GrassmannElement) -> Option<i64> {
        let mut g = None;
        for (s, _) in f.terms() {
            let d = degree(s) as i64 - 2;
            match g {
                None => g = Some(d),
                Some(h) if h != d => return None,
                _ => {}
            }
        }
        g
    }

    fn var_operator(&self, i: usize, scale: ThetaScale) -> SuperMatrix {
        let k = self.carrier_rank();
        let r = self.pairs();
        if i < r {
            mult_operator(&GrassmannElement::generator(k, i))
        } else if i < 2 * r {
            deriv_operator(k, i - r)
        } else {
            let th = mult_operator(&GrassmannElement::generator(k, r)).add(&deriv_operator(k, r)).expect("same dim");
            match scale {
                ThetaScale::Unit => th,
                ThetaScale::Clifford => th.scale(&Scalar::sqrt2().inv().expect("nonzero")),
            }
        }
    }

    /// Normal-ordered quantization: `ξ ↦ ξ·`, `η ↦ ∂_ξ`, `θ ↦ θ + ∂_θ`, derivatives to the right.
    pub fn quantize(&self, f: &GrassmannElement) -> SuperMatrix {
        self.quantize_with(f, ThetaScale::Unit)
    }

    pub fn quantize_with(&self, f: &GrassmannElement, scale: ThetaScale) -> SuperMatrix {
        assert_eq!(f.n, self.m);
        let dim = lambda_dim(self.carrier_rank());
        let mut acc = SuperMatrix::zero(dim);
        for (s, c) in f.terms() {
            let mut op = SuperMatrix::scalar(dim, c.clone());
            for i in mono_elems(s) {
                op = op.matmul(&self.var_operator(i, scale)).expect("same dim");
            }
            acc = acc.add(&op).expect("same dim");
        }
        acc
    }

    /// Quantization packaged with its normal-ordered symbol (even `m` only; for odd `m`
    /// the `θ` factor is not a single normal-ordered monomial and only the matrix is kept).
    pub fn quantize_operator(&self, f: &GrassmannElement) -> DiffOperator {
        let matrix = self.quantize(f);
        if self.has_theta() {
            return DiffOperator::from_matrix(matrix);
        }
        let r = self.pairs();
        let mask = (1u32 << r) - 1;
        let symbol = f
            .terms()
            .map(|(s, c)| (s & mask, s >> r, c.clone()))
            .collect();
        DiffOperator { matrix, symbol: Some(symbol) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, idx: &[usize]) -> GrassmannElement {
        GrassmannElement::from_indices(n, idx)
    }

    #[test]
    fn anticommuting_generators() {
        assert!(x(2, &[1]).mul(&x(2, &[1])).is_zero());
        assert_eq!(x(2, &[2, 1]), x(2, &[1, 2]).scale(&Scalar::int(-1)));
        let a = GrassmannElement::one(2).add(&x(2, &[1]));
        assert_eq!(a.mul(&a), GrassmannElement::one(2).add(&x(2, &[1]).scale(&Scalar::int(2))));
    }

    #[test]
    fn berezin_takes_top_coefficient() {
        assert_eq!(berezin(&x(2, &[1, 2])), Scalar::one());
        assert_eq!(berezin(&GrassmannElement::one(2)), Scalar::zero());
        assert_eq!(berezin(&x(3, &[1]).mul(&x(3, &[2, 3]))), Scalar::one());
    }

    #[test]
    fn basis_order_even_first() {
        assert_eq!(lambda_basis(2), vec![0b00, 0b11, 0b01, 0b10]);
        assert_eq!(lambda_basis(3), vec![0, 0b011, 0b101, 0b110, 0b001, 0b010, 0b100, 0b111]);
    }

    #[test]
    fn vect_counts() {
        assert_eq!(vect_basis(1).len(), 2);
        let b = vect_basis(2);
        let odd = b.iter().filter(|d| d.parity() == Some(1)).count();
        assert_eq!((b.len() - odd, odd), (4, 4));
    }

    #[test]
    fn divergence_examples() {
        assert!(divergence(&VectorField::basis_field(2, 0, 0)).is_zero());
        assert!(divergence(&VectorField::basis_field(2, 0b10, 0)).is_zero());
        assert_eq!(divergence(&VectorField::basis_field(1, 0b1, 0)), GrassmannElement::one(1).scale(&Scalar::int(-1)));
    }

    #[test]
    fn poisson_examples() {
        let po = Po::new(2);
        let (xi, eta) = (po.var(0), po.var(1));
        assert_eq!(po.bracket(&xi, &eta), po.one());
        let po4 = Po::new(4);
        assert!(po4.bracket(&po4.var(0), &po4.var(1)).is_zero());
        let po1 = Po::new(1);
        assert_eq!(po1.bracket(&po1.var(0), &po1.var(0)), po1.one());
    }

    #[test]
    fn quantize_examples() {
        let po = Po::new(2);
        assert_eq!(po.quantize(&po.one()), SuperMatrix::identity(lambda_dim(1)));
        let q = po.quantize(&po.var(0).mul(&po.var(1)));
        assert_eq!(q, mult_operator(&GrassmannElement::generator(1, 0)).matmul(&deriv_operator(1, 0)).unwrap());
        let br = super_bracket(&po.quantize(&po.var(0)), &po.quantize(&po.var(1))).unwrap();
        assert_eq!(br, po.quantize(&po.bracket(&po.var(0), &po.var(1))));
    }

    #[test]
    fn json_shape() {
        let f = x(3, &[1, 3]).scale(&Scalar::frac(1, 2));
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"n":3,"terms":[{"monomial":[1,3],"coeff":"1/2"}]}"#);
        let back: GrassmannElement = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
    }
}
