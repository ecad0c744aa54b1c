use serde::{Deserialize, Serialize};

use super::{Parity, SuperDim};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Square supermatrix on a superspace in standard format (even basis first).
#[derive(Clone, Debug)]
pub struct SuperMatrix {
    dim: SuperDim,
    entries: Vec<Scalar>,
    parity: Parity,
}

impl PartialEq for SuperMatrix {
    fn eq(&self, o: &SuperMatrix) -> bool {
        self.dim == o.dim && self.entries == o.entries
    }
}
impl Eq for SuperMatrix {}

impl std::hash::Hash for SuperMatrix {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        self.dim.hash(h);
        self.entries.hash(h);
    }
}

fn support_parity(dim: SuperDim, entries: &[Scalar]) -> Parity {
    let n = dim.total();
    let (mut even, mut odd) = (false, false);
    for i in 0..n {
        for j in 0..n {
            if !entries[i * n + j].is_zero() {
                if dim.parity(i) == dim.parity(j) {
                    even = true;
                } else {
                    odd = true;
                }
            }
        }
    }
    match (even, odd) {
        (_, false) => Parity::Even,
        (false, true) => Parity::Odd,
        (true, true) => Parity::Mixed,
    }
}

impl SuperMatrix {
    /// Builds a matrix from row-major entries; the parity is read off the support
    /// (the zero matrix counts as even).
    pub fn new(dim: SuperDim, entries: Vec<Scalar>) -> SuperMatrix {
        assert_eq!(entries.len(), dim.total() * dim.total(), "entry count does not match {dim}");
        let parity = support_parity(dim, &entries);
        SuperMatrix { dim, entries, parity }
    }

    /// Builds a matrix and checks it against a declared parity.
    pub fn with_parity(dim: SuperDim, entries: Vec<Scalar>, declared: Parity) -> Result<SuperMatrix> {
        let mut m = SuperMatrix::new(dim, entries);
        match (declared, m.parity) {
            (Parity::Mixed, _) => {}
            (d, p) if d == p => {}
            (Parity::Odd, Parity::Even) if m.is_zero() => {}
            (d, p) => return Err(Error::Precondition(format!("declared {d:?} but support is {p:?}"))),
        }
        m.parity = declared;
        Ok(m)
    }

    pub fn from_fn(dim: SuperDim, mut f: impl FnMut(usize, usize) -> Scalar) -> SuperMatrix {
        let n = dim.total();
        let mut e = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                e.push(f(i, j));
            }
        }
        SuperMatrix::new(dim, e)
    }

    pub fn from_rows(dim: SuperDim, rows: &[Vec<Scalar>]) -> SuperMatrix {
        SuperMatrix::new(dim, rows.iter().flatten().cloned().collect())
    }

    pub fn from_ints(dim: SuperDim, rows: &[&[i64]]) -> SuperMatrix {
        SuperMatrix::new(dim, rows.iter().flat_map(|r| r.iter().map(|&x| Scalar::int(x))).collect())
    }

    pub fn zero(dim: SuperDim) -> SuperMatrix {
        let n = dim.total();
        SuperMatrix { dim, entries: vec![Scalar::zero(); n * n], parity: Parity::Even }
    }

    pub fn identity(dim: SuperDim) -> SuperMatrix {
        SuperMatrix::scalar(dim, Scalar::one())
    }

    pub fn scalar(dim: SuperDim, c: Scalar) -> SuperMatrix {
        let n = dim.total();
        let mut m = SuperMatrix::zero(dim);
        for i in 0..n {
            m.entries[i * n + i] = c.clone();
        }
        m
    }

    /// Elementary matrix `E_{ij}`.
    pub fn unit(dim: SuperDim, i: usize, j: usize) -> SuperMatrix {
        let n = dim.total();
        let mut m = SuperMatrix::zero(dim);
        m.entries[i * n + j] = Scalar::one();
        m.parity = Parity::from_bit(dim.parity(i) ^ dim.parity(j));
        m
    }

    /// Block matrix `(A B; C D)` with square blocks `A` (m×m) and `D` (n×n).
    pub fn from_blocks(a: &[Vec<Scalar>], b: &[Vec<Scalar>], c: &[Vec<Scalar>], d: &[Vec<Scalar>]) -> SuperMatrix {
        let (m, n) = (a.len(), d.len());
        let dim = SuperDim::new(m, n);
        SuperMatrix::from_fn(dim, |i, j| match (i < m, j < m) {
            (true, true) => a[i][j].clone(),
            (true, false) => b[i][j - m].clone(),
            (false, true) => c[i - m][j].clone(),
            (false, false) => d[i - m][j - m].clone(),
        })
    }

    pub fn dim(&self) -> SuperDim {
        self.dim
    }

    pub fn size(&self) -> usize {
        self.dim.total()
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    /// Parity bit of a homogeneous matrix; panics on mixed input.
    pub fn pbit(&self) -> u8 {
        self.parity.bit().expect("homogeneous supermatrix required")
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Scalar> {
        self.entries
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.dim.total() + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        let n = self.dim.total();
        self.entries[i * n + j] = v;
        self.parity = support_parity(self.dim, &self.entries);
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    /// Row-major coordinate vector in `End(V)`.
    pub fn flatten(&self) -> Vec<Scalar> {
        self.entries.clone()
    }

    pub fn from_flat(dim: SuperDim, v: &[Scalar]) -> SuperMatrix {
        SuperMatrix::new(dim, v.to_vec())
    }

    /// Parity of coordinate `k` of the flattened `End(V)`.
    pub fn coord_parity(dim: SuperDim, k: usize) -> u8 {
        let n = dim.total();
        dim.parity(k / n) ^ dim.parity(k % n)
    }

    /// Even and odd components.
    pub fn split(&self) -> (SuperMatrix, SuperMatrix) {
        let n = self.dim.total();
        let mut ev = SuperMatrix::zero(self.dim);
        let mut od = SuperMatrix::zero(self.dim);
        for i in 0..n {
            for j in 0..n {
                let v = &self.entries[i * n + j];
                if v.is_zero() {
                    continue;
                }
                if self.dim.parity(i) == self.dim.parity(j) {
                    ev.entries[i * n + j] = v.clone();
                } else {
                    od.entries[i * n + j] = v.clone();
                }
            }
        }
        od.parity = Parity::Odd;
        (ev, od)
    }

    /// Homogeneous components paired with their parity bits; zero parts are dropped.
    pub fn homogeneous_parts(&self) -> Vec<(u8, SuperMatrix)> {
        match self.parity {
            Parity::Even => vec![(0, self.clone())],
            Parity::Odd => vec![(1, self.clone())],
            Parity::Mixed => {
                let (e, o) = self.split();
                vec![(0, e), (1, o)]
            }
        }
    }

    fn check_dim(&self, o: &SuperMatrix) -> Result<()> {
        if self.dim != o.dim {
            return Err(Error::DimMismatch(format!("{} vs {}", self.dim, o.dim)));
        }
        Ok(())
    }

    pub fn matmul(&self, o: &SuperMatrix) -> Result<SuperMatrix> {
        self.check_dim(o)?;
        let n = self.dim.total();
        let mut out = vec![Scalar::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &o.entries[k * n + j];
                    if !b.is_zero() {
                        out[i * n + j].add_mul(a, b);
                    }
                }
            }
        }
        Ok(SuperMatrix::new(self.dim, out))
    }

    pub fn add(&self, o: &SuperMatrix) -> Result<SuperMatrix> {
        self.check_dim(o)?;
        Ok(SuperMatrix::new(self.dim, self.entries.iter().zip(&o.entries).map(|(a, b)| a + b).collect()))
    }

    pub fn sub(&self, o: &SuperMatrix) -> Result<SuperMatrix> {
        self.check_dim(o)?;
        Ok(SuperMatrix::new(self.dim, self.entries.iter().zip(&o.entries).map(|(a, b)| a - b).collect()))
    }

    pub fn scale(&self, c: &Scalar) -> SuperMatrix {
        let mut m = SuperMatrix::new(self.dim, self.entries.iter().map(|a| a * c).collect());
        if !c.is_zero() {
            m.parity = self.parity;
        }
        m
    }

    pub fn neg(&self) -> SuperMatrix {
        self.scale(&Scalar::int(-1))
    }

    /// `Σ c_k M_k` over matrices of a common dimension.
    pub fn lin_comb(dim: SuperDim, terms: &[(Scalar, &SuperMatrix)]) -> SuperMatrix {
        let n = dim.total();
        let mut out = vec![Scalar::zero(); n * n];
        for (c, m) in terms {
            assert_eq!(m.dim, dim);
            for (o, e) in out.iter_mut().zip(&m.entries) {
                o.add_mul(c, e);
            }
        }
        SuperMatrix::new(dim, out)
    }

    pub fn trace(&self) -> Scalar {
        let n = self.dim.total();
        let mut t = Scalar::zero();
        for i in 0..n {
            t += &self.entries[i * n + i];
        }
        t
    }

    /// Ordinary transpose.
    pub fn transpose(&self) -> SuperMatrix {
        let n = self.dim.total();
        SuperMatrix::from_fn(self.dim, |i, j| self.entries[j * n + i].clone())
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim.total();
        assert_eq!(v.len(), n);
        let mut out = vec![Scalar::zero(); n];
        for i in 0..n {
            for j in 0..n {
                out[i].add_mul(&self.entries[i * n + j], &v[j]);
            }
        }
        out
    }

    /// Matrix restricted to the rows and columns listed in `idx`, on a space of superdimension `dim`.
    pub fn submatrix(&self, idx: &[usize], dim: SuperDim) -> SuperMatrix {
        SuperMatrix::from_fn(dim, |i, j| self.get(idx[i], idx[j]).clone())
    }

    /// Conjugates by a basis permutation: entry `(a, b)` of the result is entry
    /// `(perm[a], perm[b])` of `self`.
    pub fn permuted(&self, perm: &[usize], dim: SuperDim) -> SuperMatrix {
        assert_eq!(perm.len(), self.dim.total());
        self.submatrix(perm, dim)
    }
}

/// Supercommutator `[X, Y] = XY − (−1)^{p(X)p(Y)} YX`, extended bilinearly to mixed inputs.
pub fn super_bracket(x: &SuperMatrix, y: &SuperMatrix) -> Result<SuperMatrix> {
    x.check_dim(y)?;
    let mut acc: Option<SuperMatrix> = None;
    for (px, xh) in x.homogeneous_parts() {
        for (py, yh) in y.homogeneous_parts() {
            let xy = xh.matmul(&yh)?;
            let yx = yh.matmul(&xh)?;
            let term = if px & py == 1 { xy.add(&yx)? } else { xy.sub(&yx)? };
            acc = Some(match acc {
                None => term,
                Some(a) => a.add(&term)?,
            });
        }
    }
    let mut out = acc.expect("at least one homogeneous part");
    if let (Some(a), Some(b)) = (x.parity.bit(), y.parity.bit()) {
        if !out.is_zero() {
            out.parity = Parity::from_bit(a ^ b);
        }
    }
    Ok(out)
}

/// Supertrace `tr A − tr D`.
pub fn str(x: &SuperMatrix) -> Scalar {
    let n = x.dim.total();
    let mut t = Scalar::zero();
    for i in 0..n {
        if x.dim.parity(i) == 0 {
            t += x.get(i, i);
        } else {
            t -= x.get(i, i);
        }
    }
    t
}

/// Queer trace `tr B` of a matrix of the form `(A B; B A)`.
pub fn qtr(x: &SuperMatrix) -> Result<Scalar> {
    let SuperDim { even: m, odd: n } = x.dim;
    if m != n {
        return Err(Error::NotQueerFormat);
    }
    for i in 0..n {
        for j in 0..n {
            if x.get(i, j) != x.get(n + i, n + j) || x.get(i, n + j) != x.get(n + i, j) {
                return Err(Error::NotQueerFormat);
            }
        }
    }
    let mut t = Scalar::zero();
    for i in 0..n {
        t += x.get(i, n + i);
    }
    Ok(t)
}

/// Matrix on `Π(V)`: the odd basis vectors become the (leading) even ones.
pub fn pi_shift(x: &SuperMatrix) -> SuperMatrix {
    let SuperDim { even: m, odd: n } = x.dim;
    let perm: Vec<usize> = (m..m + n).chain(0..m).collect();
    let mut out = x.permuted(&perm, x.dim.shifted());
    if x.parity == Parity::Odd {
        out.parity = Parity::Odd;
    }
    out
}

/// Standard-format order of the pair basis of `V1 ⊗ V2`: pairs of even total parity
/// first, each class in lexicographic `(i, j)` order.
pub fn tensor_order(d1: SuperDim, d2: SuperDim) -> Vec<(usize, usize)> {
    let mut pairs: Vec<(usize, usize)> = Vec::with_capacity(d1.total() * d2.total());
    for i in 0..d1.total() {
        for j in 0..d2.total() {
            pairs.push((i, j));
        }
    }
    pairs.sort_by_key(|&(i, j)| d1.parity(i) ^ d2.parity(j));
    pairs
}

fn kron_homogeneous(a: &SuperMatrix, b: &SuperMatrix, pb: u8) -> SuperMatrix {
    let (d1, d2) = (a.dim, b.dim);
    let order = tensor_order(d1, d2);
    let dim = d1.tensor(&d2);
    let n = dim.total();
    let mut e = vec![Scalar::zero(); n * n];
    let minus = Scalar::int(-1);
    for (r, &(i, j)) in order.iter().enumerate() {
        for (c, &(k, l)) in order.iter().enumerate() {
            let x = a.get(i, k);
            if x.is_zero() {
                continue;
            }
            let y = b.get(j, l);
            if y.is_zero() {
                continue;
            }
            let mut v = x * y;
            if pb & d1.parity(k) == 1 {
                v = &v * &minus;
            }
            e[r * n + c] = v;
        }
    }
    SuperMatrix::new(dim, e)
}

/// Signed Kronecker product: `(A⊗B)(v⊗w) = (−1)^{p(B)p(v)} Av ⊗ Bw`, written in standard format.
pub fn kron(a: &SuperMatrix, b: &SuperMatrix) -> SuperMatrix {
    let dim = a.dim.tensor(&b.dim);
    let mut acc = SuperMatrix::zero(dim);
    let mut par: Option<u8> = None;
    let mut homogeneous = true;
    for (pa, ah) in a.homogeneous_parts() {
        for (pb, bh) in b.homogeneous_parts() {
            let t = kron_homogeneous(&ah, &bh, pb);
            if t.is_zero() {
                continue;
            }
            match par {
                None => par = Some(pa ^ pb),
                Some(p) if p != pa ^ pb => homogeneous = false,
                _ => {}
            }
            acc = acc.add(&t).expect("same dim");
        }
    }
    if let (Some(p), true) = (par, homogeneous) {
        acc.parity = Parity::from_bit(p);
    }
    acc
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    dim: [usize; 2],
    entries: Vec<Vec<Scalar>>,
}

impl Serialize for SuperMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let n = self.dim.total();
        MatrixJson {
            dim: [self.dim.even, self.dim.odd],
            entries: self.entries.chunks(n.max(1)).map(<[Scalar]>::to_vec).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SuperMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<SuperMatrix, D::Error> {
        let j = MatrixJson::deserialize(d)?;
        let dim = SuperDim::new(j.dim[0], j.dim[1]);
        let n = dim.total();
        if j.entries.len() != n || j.entries.iter().any(|r| r.len() != n) {
            return Err(serde::de::Error::custom(format!("entries are not {n}x{n}")));
        }
        Ok(SuperMatrix::new(dim, j.entries.into_iter().flatten().collect()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(m: usize, n: usize) -> SuperDim {
        SuperDim::new(m, n)
    }

    #[test]
    fn bracket_of_raising_and_lowering() {
        let e = SuperMatrix::unit(d(2, 0), 0, 1);
        let f = SuperMatrix::unit(d(2, 0), 1, 0);
        assert_eq!(super_bracket(&e, &f).unwrap(), SuperMatrix::from_ints(d(2, 0), &[&[1, 0], &[0, -1]]));
    }

    #[test]
    fn odd_self_bracket_doubles_square() {
        let x = SuperMatrix::from_ints(d(1, 1), &[&[0, 1], &[1, 0]]);
        assert_eq!(x.parity(), Parity::Odd);
        let sq = x.matmul(&x).unwrap();
        assert_eq!(super_bracket(&x, &x).unwrap(), sq.scale(&Scalar::int(2)));
    }

    #[test]
    fn identity_brackets_to_zero() {
        let one = SuperMatrix::identity(d(2, 1));
        assert!(super_bracket(&one, &one).unwrap().is_zero());
        assert_eq!(str(&one), Scalar::int(1));
        assert_eq!(str(&SuperMatrix::identity(d(4, 4))), Scalar::zero());
    }

    #[test]
    fn queer_trace_format_check() {
        let j = SuperMatrix::from_ints(d(2, 2), &[&[0, 0, 1, 0], &[0, 0, 0, 1], &[-1, 0, 0, 0], &[0, -1, 0, 0]]);
        assert_eq!(qtr(&j), Err(Error::NotQueerFormat));
        let b = SuperMatrix::from_ints(d(2, 2), &[&[0, 0, 1, 0], &[0, 0, 0, 1], &[1, 0, 0, 0], &[0, 1, 0, 0]]);
        assert_eq!(qtr(&b).unwrap(), Scalar::int(2));
    }

    #[test]
    fn pi_shift_swaps_blocks() {
        let one = SuperMatrix::identity(d(2, 1));
        assert_eq!(pi_shift(&one), SuperMatrix::identity(d(1, 2)));
        let x = SuperMatrix::from_ints(d(1, 2), &[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        assert_eq!(str(&pi_shift(&x)), -str(&x));
        assert_eq!(pi_shift(&pi_shift(&x)), x);
    }

    #[test]
    fn kron_of_identities() {
        let k = kron(&SuperMatrix::identity(d(2, 1)), &SuperMatrix::identity(d(1, 1)));
        assert_eq!(k, SuperMatrix::identity(d(3, 3)));
    }

    #[test]
    fn tensor_order_is_parity_stable() {
        let o = tensor_order(d(1, 1), d(1, 1));
        assert_eq!(o, vec![(0, 0), (1, 1), (0, 1), (1, 0)]);
    }

    #[test]
    fn odd_factors_pick_up_sign() {
        // (A⊗1)(1⊗B) = (−1)^{p(A)p(B)}... with p(1)=0: (A⊗1)(1⊗B) = A⊗B, while (1⊗B)(A⊗1) = −A⊗B.
        let x = SuperMatrix::from_ints(d(1, 1), &[&[0, 1], &[0, 0]]);
        let y = SuperMatrix::from_ints(d(1, 1), &[&[0, 0], &[1, 0]]);
        let one = SuperMatrix::identity(d(1, 1));
        let lhs = kron(&x, &one).matmul(&kron(&one, &y)).unwrap();
        assert_eq!(lhs, kron(&x, &y));
        let rhs = kron(&one, &y).matmul(&kron(&x, &one)).unwrap();
        assert_eq!(rhs, kron(&x, &y).neg());
    }

    #[test]
    fn json_round_trip() {
        let x = SuperMatrix::new(d(1, 1), vec![Scalar::frac(1, 2), Scalar::i(), Scalar::sqrt2(), Scalar::zero()]);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"dim":[1,1],"entries":[["1/2","1*I"],["1*R2","0"]]}"#);
        let back: SuperMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
    }
}
