use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Incremental semi-echelon basis: each stored row has a pivot entry 1 and is zero at
/// the pivots of all rows stored before it.
#[derive(Clone, Debug)]
pub struct Echelon {
    len: usize,
    rows: Vec<Vec<Scalar>>,
    support: Vec<Vec<usize>>,
    pivots: Vec<usize>,
}

fn support_of(v: &[Scalar]) -> Vec<usize> {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, _)| i).collect()
}

impl Echelon {
    pub fn new(len: usize) -> Echelon {
        Echelon { len, rows: Vec::new(), support: Vec::new(), pivots: Vec::new() }
    }

    pub fn from_subspace(s: &Subspace) -> Echelon {
        let mut e = Echelon::new(s.ambient_dim);
        for (r, &p) in s.rows.iter().zip(&s.pivots) {
            e.support.push(support_of(r));
            e.rows.push(r.clone());
            e.pivots.push(p);
        }
        e
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    /// Reduces `v` in place against the stored rows.
    pub fn reduce(&self, v: &mut [Scalar]) {
        assert_eq!(v.len(), self.len, "vector length does not match ambient dimension");
        for ((row, sup), &p) in self.rows.iter().zip(&self.support).zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let c = v[p].clone();
            for &k in sup {
                v[k].sub_mul(&c, &row[k]);
            }
        }
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(Scalar::is_zero)
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        let mut w = v.to_vec();
        self.insert_reduced(&mut w)
    }

    fn insert_reduced(&mut self, w: &mut Vec<Scalar>) -> bool {
        self.reduce(w);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[p].inv().expect("nonzero pivot");
        if !inv.is_one() {
            for x in w.iter_mut().skip(p) {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        self.support.push(support_of(w));
        self.rows.push(std::mem::take(w));
        self.pivots.push(p);
        true
    }

    /// Canonical reduced row echelon form of the span.
    pub fn to_subspace(&self) -> Subspace {
        let mut rows = self.rows.clone();
        let k = rows.len();
        for r in (0..k).rev() {
            let p = self.pivots[r];
            let (head, tail) = rows.split_at_mut(r);
            let src = &tail[0];
            let sup = support_of(src);
            for e in head.iter_mut() {
                if e[p].is_zero() {
                    continue;
                }
                let c = e[p].clone();
                for &j in &sup {
                    e[j].sub_mul(&c, &src[j]);
                }
            }
        }
        let mut idx: Vec<usize> = (0..k).collect();
        idx.sort_by_key(|&i| self.pivots[i]);
        let pivots = idx.iter().map(|&i| self.pivots[i]).collect();
        let mut taken: Vec<Option<Vec<Scalar>>> = rows.into_iter().map(Some).collect();
        let rows = idx.iter().map(|&i| taken[i].take().expect("each row once")).collect();
        Subspace { ambient_dim: self.len, rows, pivots, parity_mask: None }
    }
}

/// Subspace of a coordinate space, stored as its canonical reduced row echelon basis.
#[derive(Clone, Debug)]
pub struct Subspace {
    ambient_dim: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
    parity_mask: Option<Vec<u8>>,
}

impl PartialEq for Subspace {
    fn eq(&self, o: &Subspace) -> bool {
        self.ambient_dim == o.ambient_dim && self.rows == o.rows
    }
}
impl Eq for Subspace {}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Subspace {
        Subspace { ambient_dim, rows: Vec::new(), pivots: Vec::new(), parity_mask: None }
    }

    pub fn full(ambient_dim: usize) -> Subspace {
        let rows = (0..ambient_dim)
            .map(|i| {
                let mut v = vec![Scalar::zero(); ambient_dim];
                v[i] = Scalar::one();
                v
            })
            .collect();
        Subspace { ambient_dim, rows, pivots: (0..ambient_dim).collect(), parity_mask: None }
    }

    pub fn span<V: AsRef<[Scalar]>>(ambient_dim: usize, vectors: &[V]) -> Subspace {
        let mut e = Echelon::new(ambient_dim);
        for v in vectors {
            e.insert(v.as_ref());
        }
        e.to_subspace()
    }

    /// Attaches per-coordinate parity tags.
    pub fn with_parity_mask(mut self, mask: Vec<u8>) -> Subspace {
        assert_eq!(mask.len(), self.ambient_dim);
        self.parity_mask = Some(mask);
        self
    }

    pub fn parity_mask(&self) -> Option<&[u8]> {
        self.parity_mask.as_deref()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn echelon(&self) -> Echelon {
        Echelon::from_subspace(self)
    }

    fn check(&self, o: &Subspace) -> Result<()> {
        if self.ambient_dim != o.ambient_dim {
            return Err(Error::DimMismatch(format!("ambient {} vs {}", self.ambient_dim, o.ambient_dim)));
        }
        Ok(())
    }

    pub fn member(&self, v: &[Scalar]) -> Result<bool> {
        if v.len() != self.ambient_dim {
            return Err(Error::DimMismatch(format!("vector of length {} in ambient {}", v.len(), self.ambient_dim)));
        }
        Ok(self.coords(v).is_some())
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is not in the span.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let c: Vec<Scalar> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut w = v.to_vec();
        for (row, ci) in self.rows.iter().zip(&c) {
            if ci.is_zero() {
                continue;
            }
            for (x, r) in w.iter_mut().zip(row) {
                x.sub_mul(ci, r);
            }
        }
        w.iter().all(Scalar::is_zero).then_some(c)
    }

    pub fn contains(&self, o: &Subspace) -> Result<bool> {
        self.check(o)?;
        Ok(o.rows.iter().all(|r| self.coords(r).is_some()))
    }

    pub fn sum(&self, o: &Subspace) -> Result<Subspace> {
        self.check(o)?;
        let mut e = self.echelon();
        for r in &o.rows {
            e.insert(r);
        }
        let mut s = e.to_subspace();
        s.parity_mask = self.parity_mask.clone();
        Ok(s)
    }

    /// Intersection, from the kernel of `(a, b) ↦ Σ a_i s_i − Σ b_j t_j`.
    pub fn intersect(&self, o: &Subspace) -> Result<Subspace> {
        self.check(o)?;
        let mut images: Vec<Vec<Scalar>> = self.rows.clone();
        images.extend(o.rows.iter().map(|r| r.iter().map(|x| -x).collect()));
        let ker = kernel_of_images(&images, self.ambient_dim);
        let k = self.rows.len();
        let vecs: Vec<Vec<Scalar>> = ker
            .iter()
            .map(|c| {
                let mut v = vec![Scalar::zero(); self.ambient_dim];
                for (ci, row) in c[..k].iter().zip(&self.rows) {
                    for (x, r) in v.iter_mut().zip(row) {
                        x.add_mul(ci, r);
                    }
                }
                v
            })
            .collect();
        let mut s = Subspace::span(self.ambient_dim, &vecs);
        s.parity_mask = self.parity_mask.clone();
        Ok(s)
    }

    /// Vectors of `t`'s basis that extend a basis of `self ⊆ t` to a basis of `t`.
    pub fn complement_basis(&self, t: &Subspace) -> Result<Vec<Vec<Scalar>>> {
        self.check(t)?;
        if !t.contains(self)? {
            return Err(Error::Precondition("complement_basis needs S ⊆ T".into()));
        }
        let mut e = self.echelon();
        Ok(t.rows.iter().filter(|r| e.insert(r)).cloned().collect())
    }

    /// Whether every basis row is homogeneous for the given coordinate parities.
    pub fn is_graded(&self, mask: &[u8]) -> bool {
        self.rows.iter().all(|r| {
            let mut seen: Option<u8> = None;
            r.iter().zip(mask).filter(|(x, _)| !x.is_zero()).all(|(_, &p)| match seen {
                None => {
                    seen = Some(p);
                    true
                }
                Some(q) => q == p,
            })
        })
    }

    /// `(even, odd)` dimensions with respect to a coordinate parity mask; the subspace must be graded.
    pub fn superdim(&self, mask: &[u8]) -> (usize, usize) {
        let mut out = (0, 0);
        for r in &self.rows {
            let p = r.iter().zip(mask).find(|(x, _)| !x.is_zero()).map(|(_, &p)| p).unwrap_or(0);
            if p == 0 {
                out.0 += 1;
            } else {
                out.1 += 1;
            }
        }
        out
    }
}

impl Serialize for Subspace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows.serialize(s)
    }
}

#[derive(Deserialize)]
struct SubspaceJson(Vec<Vec<Scalar>>);

impl Subspace {
    /// Rebuilds a subspace from its JSON row list; the ambient dimension is needed when the list is empty.
    pub fn from_json(ambient_dim: usize, s: &str) -> Result<Subspace> {
        let rows: SubspaceJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        if rows.0.iter().any(|r| r.len() != ambient_dim) {
            return Err(Error::DimMismatch("row length".into()));
        }
        Ok(Subspace::span(ambient_dim, &rows.0))
    }
}

/// Coordinates with respect to a fixed linearly independent family.
#[derive(Clone, Debug)]
pub struct Coordinatizer {
    len: usize,
    k: usize,
    ech: Echelon,
}

impl Coordinatizer {
    pub fn new<V: AsRef<[Scalar]>>(len: usize, basis: &[V]) -> Result<Coordinatizer> {
        let k = basis.len();
        let mut ech = Echelon::new(len + k);
        for (i, b) in basis.iter().enumerate() {
            let b = b.as_ref();
            if b.len() != len {
                return Err(Error::DimMismatch(format!("vector of length {} in ambient {len}", b.len())));
            }
            let mut w = b.to_vec();
            w.extend((0..k).map(|j| if j == i { Scalar::one() } else { Scalar::zero() }));
            ech.reduce(&mut w);
            if w[..len].iter().all(Scalar::is_zero) {
                return Err(Error::Precondition("family is linearly dependent".into()));
            }
            ech.insert_reduced(&mut w);
        }
        Ok(Coordinatizer { len, k, ech })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn rank(&self) -> usize {
        self.k
    }

    pub fn is_empty(&self) -> bool {
        self.k == 0
    }

    /// `c` with `v = Σ c_i basis[i]`, or `None` outside the span.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(v.len(), self.len);
        let mut w = v.to_vec();
        w.resize(self.len + self.k, Scalar::zero());
        self.ech.reduce(&mut w);
        if w[..self.len].iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(w[self.len..].iter().map(|x| -x).collect())
    }
}

/// Basis of `{c : Σ c_i images[i] = 0}`.
pub fn kernel_of_images(images: &[Vec<Scalar>], len: usize) -> Vec<Vec<Scalar>> {
    let k = images.len();
    let mut ech = Echelon::new(len + k);
    let mut kernel = Echelon::new(k);
    for (i, img) in images.iter().enumerate() {
        assert_eq!(img.len(), len);
        let mut w = img.clone();
        w.extend((0..k).map(|j| if j == i { Scalar::one() } else { Scalar::zero() }));
        ech.reduce(&mut w);
        if w[..len].iter().all(Scalar::is_zero) {
            kernel.insert(&w[len..]);
        } else {
            ech.insert_reduced(&mut w);
        }
    }
    kernel.to_subspace().rows
}

/// Basis of the solution space of the homogeneous system whose equations are the rows given.
pub fn nullspace(equations: &[Vec<Scalar>], ncols: usize) -> Vec<Vec<Scalar>> {
    let rref = Subspace::span(ncols, equations);
    let mut is_pivot = vec![false; ncols];
    for &p in &rref.pivots {
        is_pivot[p] = true;
    }
    (0..ncols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut x = vec![Scalar::zero(); ncols];
            x[f] = Scalar::one();
            for (row, &p) in rref.rows.iter().zip(&rref.pivots) {
                if !row[f].is_zero() {
                    x[p] = -&row[f];
                }
            }
            x
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| Scalar::int(x)).collect()
    }

    #[test]
    fn full_span_and_trivial_intersection() {
        let s = Subspace::span(2, &[v(&[1, 0]), v(&[0, 1])]);
        assert_eq!(s, Subspace::full(2));
        let a = Subspace::span(2, &[v(&[1, 1])]);
        let b = Subspace::span(2, &[v(&[1, -1])]);
        assert!(a.intersect(&b).unwrap().is_zero());
    }

    #[test]
    fn rref_is_canonical() {
        let a = Subspace::span(3, &[v(&[0, 2, 4]), v(&[1, 1, 1])]);
        let b = Subspace::span(3, &[v(&[1, 2, 3]), v(&[1, 0, -1])]);
        assert_eq!(a, b);
        assert_eq!(a.basis(), &[v(&[1, 0, -1]), v(&[0, 1, 2])]);
    }

    #[test]
    fn coordinatizer_recovers_coefficients() {
        let c = Coordinatizer::new(3, &[v(&[1, 1, 0]), v(&[0, 1, 1])]).unwrap();
        assert_eq!(c.coords(&v(&[2, 5, 3])), Some(v(&[2, 3])));
        assert_eq!(c.coords(&v(&[1, 0, 0])), None);
        assert!(Coordinatizer::new(2, &[v(&[1, 2]), v(&[2, 4])]).is_err());
    }

    #[test]
    fn nullspace_of_single_equation() {
        let ns = nullspace(&[v(&[1, 1, 1])], 3);
        assert_eq!(ns, vec![v(&[-1, 1, 0]), v(&[-1, 0, 1])]);
    }

    #[test]
    fn complement_extends_basis() {
        let t = Subspace::full(3);
        let s = Subspace::span(3, &[v(&[1, 1, 0])]);
        let c = s.complement_basis(&t).unwrap();
        assert_eq!(c.len(), 2);
        let mut all = s.basis().to_vec();
        all.extend(c);
        assert_eq!(Subspace::span(3, &all), t);
    }
}
