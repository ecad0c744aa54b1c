use serde_json::json;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::superlinalg::{super_bracket, Coordinatizer, SuperDim, SuperMatrix};

/// Lie superalgebra given by structure constants `[e_i, e_j] = Σ_k c[i][j][k] e_k` on a
/// homogeneous basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbstractAlgebra {
    names: Vec<String>,
    parities: Vec<u8>,
    consts: Vec<Vec<Vec<Scalar>>>,
}

impl AbstractAlgebra {
    pub fn new(names: Vec<String>, parities: Vec<u8>, consts: Vec<Vec<Vec<Scalar>>>) -> Result<AbstractAlgebra> {
        let n = names.len();
        if parities.len() != n || consts.len() != n || consts.iter().any(|r| r.len() != n || r.iter().any(|c| c.len() != n)) {
            return Err(Error::DimMismatch("structure constant table".into()));
        }
        Ok(AbstractAlgebra { names, parities, consts })
    }

    /// Structure constants of the span of linearly independent homogeneous matrices.
    pub fn from_matrices(names: Vec<String>, basis: &[SuperMatrix]) -> Result<AbstractAlgebra> {
        let Some(first) = basis.first() else {
            return AbstractAlgebra::new(names, vec![], vec![]);
        };
        let len = first.size() * first.size();
        let rows: Vec<&[Scalar]> = basis.iter().map(SuperMatrix::entries).collect();
        let coord = Coordinatizer::new(len, &rows)?;
        let mut consts = Vec::with_capacity(basis.len());
        for x in basis {
            let mut row = Vec::with_capacity(basis.len());
            for y in basis {
                let b = super_bracket(x, y)?;
                row.push(coord.coords(b.entries()).ok_or_else(|| Error::Precondition("span is not bracket-closed".into()))?);
            }
            consts.push(row);
        }
        let parities = basis.iter().map(SuperMatrix::pbit).collect();
        AbstractAlgebra::new(names, parities, consts)
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn superdim(&self) -> SuperDim {
        let odd = self.parities.iter().filter(|&&p| p == 1).count();
        SuperDim::new(self.dim() - odd, odd)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn parities(&self) -> &[u8] {
        &self.parities
    }

    /// Coordinates of `[e_i, e_j]`.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[Scalar] {
        &self.consts[i][j]
    }

    /// Bracket of coordinate vectors.
    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        let mut out = vec![Scalar::zero(); n];
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in y.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let ab = a * b;
                for (o, c) in out.iter_mut().zip(&self.consts[i][j]) {
                    if !c.is_zero() {
                        o.add_mul(&ab, c);
                    }
                }
            }
        }
        out
    }

    fn unit(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim()];
        v[i] = Scalar::one();
        v
    }

    /// `[e_i, e_j] = −(−1)^{p_i p_j} [e_j, e_i]` and the bracket respects parity.
    pub fn check_antisymmetry(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let s = if self.parities[i] & self.parities[j] == 1 { Scalar::one() } else { Scalar::int(-1) };
                let graded = self.consts[i][j]
                    .iter()
                    .enumerate()
                    .all(|(k, c)| c.is_zero() || self.parities[k] == self.parities[i] ^ self.parities[j]);
                graded && self.consts[i][j].iter().zip(&self.consts[j][i]).all(|(a, b)| *a == b * &s)
            })
        })
    }

    /// Super-Jacobi `[x,[y,z]] = [[x,y],z] + (−1)^{p(x)p(y)} [y,[x,z]]` on basis triples.
    pub fn check_jacobi(&self) -> bool {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let xy = self.consts[i][j].clone();
                for k in 0..n {
                    let ez = self.unit(k);
                    let lhs = self.bracket(&self.unit(i), &self.consts[j][k]);
                    let mut rhs = self.bracket(&xy, &ez);
                    let t = self.bracket(&self.unit(j), &self.consts[i][k]);
                    let sign = if self.parities[i] & self.parities[j] == 1 { Scalar::int(-1) } else { Scalar::one() };
                    for (r, v) in rhs.iter_mut().zip(&t) {
                        r.add_mul(&sign, v);
                    }
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn to_json(&self) -> serde_json::Value {
        let brackets: Vec<serde_json::Value> = (0..self.dim())
            .flat_map(|i| (i..self.dim()).map(move |j| (i, j)))
            .filter(|&(i, j)| self.consts[i][j].iter().any(|c| !c.is_zero()))
            .map(|(i, j)| {
                let terms: Vec<serde_json::Value> = self.consts[i][j]
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| json!([self.names[k], c]))
                    .collect();
                json!({"left": self.names[i], "right": self.names[j], "terms": terms})
            })
            .collect();
        let sd = self.superdim();
        json!({
            "superdim": [sd.even, sd.odd],
            "basis": self.names.iter().zip(&self.parities).map(|(n, p)| json!({"name": n, "parity": p})).collect::<Vec<_>>(),
            "brackets": brackets,
        })
    }
}
