//! Lie and associative closures, module closures, trace-form radicals, socles and
//! minimal submodules, irreducibility types, derived series, centers and ideal tests.

mod roots;

pub use roots::{split_roots, sqrt as field_sqrt};

use std::cmp::Ordering;
use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebras::LieSuperAlgebra;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::superlinalg::{kernel_of_images, nullspace, super_bracket, Coordinatizer, Echelon, SuperDim, SuperMatrix, Subspace};

/// Envelope fallback is attempted only on modules up to this dimension.
pub const ENVELOPE_FALLBACK_MAX: usize = 48;

fn module_mask(dim: SuperDim) -> Vec<u8> {
    (0..dim.total()).map(|i| dim.parity(i)).collect()
}

fn vec_parity(v: &[Scalar], mask: &[u8]) -> u8 {
    v.iter().zip(mask).find(|(x, _)| !x.is_zero()).map(|(_, &p)| p).unwrap_or(0)
}

/// Smallest subspace containing the generators and stable under `ad` of each generator;
/// this is the Lie subalgebra they generate.
#[derive(Clone, Debug)]
pub struct LieClosure {
    carrier: SuperDim,
    gens: Vec<SuperMatrix>,
    done: Vec<usize>,
    basis: Vec<SuperMatrix>,
    ech: Echelon,
    brackets: usize,
}

impl LieClosure {
    pub fn new(carrier: SuperDim) -> LieClosure {
        let n = carrier.total();
        LieClosure { carrier, gens: vec![], done: vec![], basis: vec![], ech: Echelon::new(n * n), brackets: 0 }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, x: &SuperMatrix) -> bool {
        self.ech.contains(x.entries())
    }

    fn push(&mut self, x: &SuperMatrix) {
        for (_, h) in x.homogeneous_parts() {
            if self.ech.insert(h.entries()) {
                self.basis.push(h);
            }
        }
    }

    pub fn add_generator(&mut self, x: &SuperMatrix) -> Result<()> {
        if x.dim() != self.carrier {
            return Err(Error::DimMismatch(format!("{} vs {}", x.dim(), self.carrier)));
        }
        for (_, h) in x.homogeneous_parts() {
            if !h.is_zero() {
                self.gens.push(h.clone());
                self.done.push(0);
                self.push(&h);
            }
        }
        Ok(())
    }

    /// Adds `x` to the span without using it as an `ad`-generator; `x` must already lie
    /// in the algebra generated by the generators.
    pub fn add_generator_passive(&mut self, x: &SuperMatrix) {
        self.push(x);
    }

    /// Runs to the fixpoint, or until the dimension reaches `stop_at`.
    pub fn run(&mut self, stop_at: Option<usize>) -> Result<()> {
        let n = self.carrier.total();
        let cap = (self.gens.len() + 1) * (n * n + 1);
        loop {
            let mut progressed = false;
            for g in 0..self.gens.len() {
                while self.done[g] < self.basis.len() {
                    if stop_at.is_some_and(|s| self.basis.len() >= s) {
                        return Ok(());
                    }
                    let b = super_bracket(&self.gens[g], &self.basis[self.done[g]])?;
                    self.done[g] += 1;
                    self.brackets += 1;
                    if self.brackets > cap {
                        return Err(Error::IterationCap(cap));
                    }
                    self.push(&b);
                    progressed = true;
                }
            }
            if !progressed {
                return Ok(());
            }
        }
    }

    pub fn basis(&self) -> &[SuperMatrix] {
        &self.basis
    }

    pub fn subspace(&self) -> Subspace {
        self.ech.to_subspace()
    }

    pub fn into_algebra(self, name: impl Into<String>) -> LieSuperAlgebra {
        LieSuperAlgebra::from_subspace(name, self.carrier, self.ech.to_subspace())
    }
}

fn common_carrier(s: &[SuperMatrix]) -> Result<SuperDim> {
    let d = s.first().ok_or_else(|| Error::Precondition("empty generating set".into()))?.dim();
    if let Some(x) = s.iter().find(|x| x.dim() != d) {
        return Err(Error::DimMismatch(format!("{} vs {d}", x.dim())));
    }
    Ok(d)
}

/// The Lie subalgebra generated by `s`.
pub fn lie_closure(s: &[SuperMatrix]) -> Result<Subspace> {
    let d = common_carrier(s)?;
    let mut c = LieClosure::new(d);
    for x in s {
        c.add_generator(x)?;
    }
    c.run(None)?;
    Ok(c.subspace())
}

/// A generating set of `h` taken greedily from its basis.
pub fn generating_set(h: &LieSuperAlgebra) -> Result<Vec<SuperMatrix>> {
    let mut c = LieClosure::new(h.carrier());
    let mut gens = Vec::new();
    for b in h.basis() {
        if !c.contains(b) {
            c.add_generator(b)?;
            gens.push(b.clone());
            c.run(Some(h.dim()))?;
        }
        if c.dim() == h.dim() {
            break;
        }
    }
    Ok(gens)
}

/// Basis of the unital associative algebra generated by `s`.
pub fn envelope_basis(carrier: SuperDim, s: &[SuperMatrix]) -> Result<Vec<SuperMatrix>> {
    let n = carrier.total();
    let mut ech = Echelon::new(n * n);
    let id = SuperMatrix::identity(carrier);
    ech.insert(id.entries());
    let mut basis = vec![id];
    let gens: Vec<SuperMatrix> = s.iter().flat_map(|x| x.homogeneous_parts().into_iter().map(|(_, h)| h)).collect();
    let mut k = 0;
    while k < basis.len() {
        if basis.len() == n * n {
            break;
        }
        for g in &gens {
            let p = g.matmul(&basis[k])?;
            for (_, h) in p.homogeneous_parts() {
                if ech.insert(h.entries()) {
                    basis.push(h);
                }
            }
        }
        k += 1;
        if k > n * n + 1 {
            return Err(Error::IterationCap(n * n + 1));
        }
    }
    Ok(basis)
}

/// Smallest unital multiplication-closed subspace containing `s`.
pub fn associative_envelope(s: &[SuperMatrix]) -> Result<Subspace> {
    let d = common_carrier(s)?;
    let n = d.total();
    Ok(Subspace::span(n * n, &envelope_basis(d, s)?.iter().map(|m| m.entries().to_vec()).collect::<Vec<_>>()))
}

fn trace_of_product(a: &SuperMatrix, b: &SuperMatrix) -> Scalar {
    let n = a.size();
    let mut t = Scalar::zero();
    for k in 0..n {
        for l in 0..n {
            let x = a.get(k, l);
            if x.is_zero() {
                continue;
            }
            let y = b.get(l, k);
            if !y.is_zero() {
                t.add_mul(x, y);
            }
        }
    }
    t
}

/// `{a ∈ A : tr(ab) = 0 for all b ∈ A}` for a multiplication-closed span `A`.
pub fn radical_basis(a: &[SuperMatrix]) -> Vec<SuperMatrix> {
    if a.is_empty() {
        return vec![];
    }
    let d = a[0].dim();
    let gram: Vec<Vec<Scalar>> = a.iter().map(|x| a.iter().map(|y| trace_of_product(x, y)).collect()).collect();
    nullspace(&gram, a.len())
        .into_iter()
        .map(|c| {
            let terms: Vec<(Scalar, &SuperMatrix)> = c.into_iter().zip(a).filter(|(x, _)| !x.is_zero()).collect();
            SuperMatrix::lin_comb(d, &terms)
        })
        .collect()
}

/// Trace-form radical of the algebra spanned by the rows of `a`, as a subspace of `End(V)`.
pub fn envelope_radical(a: &Subspace, carrier: SuperDim) -> Subspace {
    let mats: Vec<SuperMatrix> = a.basis().iter().map(|r| SuperMatrix::from_flat(carrier, r)).collect();
    let n = carrier.total();
    Subspace::span(n * n, &radical_basis(&mats).iter().map(|m| m.entries().to_vec()).collect::<Vec<_>>())
}

/// `{v : a v = 0 for all a}`.
pub fn joint_kernel(dim: usize, ops: &[SuperMatrix]) -> Subspace {
    let mut eqs = Echelon::new(dim);
    for op in ops {
        for r in op.entries().chunks(dim.max(1)) {
            eqs.insert(r);
        }
    }
    let rows: Vec<Vec<Scalar>> = eqs.rows().to_vec();
    Subspace::span(dim, &nullspace(&rows, dim))
}

/// Basis of `{X of parity p : X·a = (−1)^{p·p(a)} a·X for all a}`.
pub fn supercentralizer(dim: SuperDim, ops: &[SuperMatrix], parity: u8) -> Result<Vec<SuperMatrix>> {
    let n = dim.total();
    let mut basis: Vec<SuperMatrix> = (0..n * n)
        .filter(|&k| SuperMatrix::coord_parity(dim, k) == parity)
        .map(|k| SuperMatrix::unit(dim, k / n, k % n))
        .collect();
    for op in ops {
        for (pa, a) in op.homogeneous_parts() {
            if basis.is_empty() {
                return Ok(basis);
            }
            let images: Vec<Vec<Scalar>> = basis
                .iter()
                .map(|x| {
                    let xa = x.matmul(&a)?;
                    let ax = a.matmul(x)?;
                    Ok(if parity & pa == 1 { xa.add(&ax)? } else { xa.sub(&ax)? }.into_entries())
                })
                .collect::<Result<_>>()?;
            let ker = kernel_of_images(&images, n * n);
            basis = ker
                .into_iter()
                .map(|c| {
                    let terms: Vec<(Scalar, &SuperMatrix)> = c.into_iter().zip(&basis).filter(|(x, _)| !x.is_zero()).collect();
                    SuperMatrix::lin_comb(dim, &terms)
                })
                .collect();
        }
    }
    Ok(basis)
}

/// Linear action of a Lie superalgebra on a module `M` in standard format.
#[derive(Clone, Debug)]
pub struct ModuleAction {
    dim: SuperDim,
    ops: Vec<SuperMatrix>,
    torus: Vec<SuperMatrix>,
}

/// Quotient module `g/h` together with the lifts of its basis vectors to `g`.
#[derive(Clone, Debug)]
pub struct QuotientModule {
    pub action: ModuleAction,
    pub lifts: Vec<SuperMatrix>,
}

fn is_diagonal(m: &SuperMatrix) -> bool {
    let n = m.size();
    (0..n).all(|i| (0..n).all(|j| i == j || m.get(i, j).is_zero()))
}

/// Elements of the span of `basis` that are diagonal matrices.
pub fn diagonal_elements(basis: &[SuperMatrix]) -> Vec<SuperMatrix> {
    let Some(first) = basis.first() else { return vec![] };
    let (d, n) = (first.dim(), first.size());
    let images: Vec<Vec<Scalar>> = basis
        .iter()
        .map(|b| {
            let mut e = b.entries().to_vec();
            for i in 0..n {
                e[i * n + i] = Scalar::zero();
            }
            e
        })
        .collect();
    kernel_of_images(&images, n * n)
        .into_iter()
        .map(|c| {
            let terms: Vec<(Scalar, &SuperMatrix)> = c.into_iter().zip(basis).filter(|(x, _)| !x.is_zero()).collect();
            SuperMatrix::lin_comb(d, &terms)
        })
        .filter(|m| !m.is_zero())
        .collect()
}

fn combine(dim: SuperDim, coeffs: &[Scalar], mats: &[SuperMatrix]) -> SuperMatrix {
    let terms: Vec<(Scalar, &SuperMatrix)> = coeffs.iter().cloned().zip(mats).filter(|(x, _)| !x.is_zero()).collect();
    SuperMatrix::lin_comb(dim, &terms)
}

impl ModuleAction {
    /// Action matrices must be homogeneous; diagonal ones serve as a torus.
    pub fn new(dim: SuperDim, ops: Vec<SuperMatrix>) -> Result<ModuleAction> {
        for op in &ops {
            if op.dim() != dim {
                return Err(Error::DimMismatch(format!("{} vs {dim}", op.dim())));
            }
            if op.parity() == crate::superlinalg::Parity::Mixed {
                return Err(Error::Precondition("action matrices must be homogeneous".into()));
            }
        }
        let torus = ops.iter().filter(|m| !m.is_zero() && is_diagonal(m)).cloned().collect();
        Ok(ModuleAction { dim, ops, torus })
    }

    /// Replaces the torus; every element must be diagonal.
    pub fn with_torus(mut self, torus: Vec<SuperMatrix>) -> Result<ModuleAction> {
        if torus.iter().any(|t| !is_diagonal(t)) {
            return Err(Error::Precondition("torus elements must act diagonally".into()));
        }
        self.torus = torus;
        Ok(self)
    }

    pub fn without_torus(mut self) -> ModuleAction {
        self.torus.clear();
        self
    }

    pub fn dim(&self) -> SuperDim {
        self.dim
    }

    pub fn ops(&self) -> &[SuperMatrix] {
        &self.ops
    }

    pub fn torus(&self) -> &[SuperMatrix] {
        &self.torus
    }

    /// Identity representation of a linear Lie superalgebra.
    pub fn identity_rep(g: &LieSuperAlgebra) -> ModuleAction {
        let torus = diagonal_elements(g.basis());
        ModuleAction { dim: g.carrier(), ops: g.basis().to_vec(), torus }
    }

    /// Whether `ops[i]` represents `acting[i]` homomorphically.
    pub fn check_homomorphism(&self, acting: &[SuperMatrix]) -> Result<bool> {
        if acting.len() != self.ops.len() {
            return Err(Error::DimMismatch("one action matrix per basis element".into()));
        }
        let Some(first) = acting.first() else { return Ok(true) };
        let coord = Coordinatizer::new(first.size() * first.size(), &acting.iter().map(SuperMatrix::entries).collect::<Vec<_>>())?;
        for i in 0..acting.len() {
            for j in i..acting.len() {
                let b = super_bracket(&acting[i], &acting[j])?;
                let Some(c) = coord.coords(b.entries()) else {
                    return Err(Error::Precondition("acting span is not bracket-closed".into()));
                };
                if combine(self.dim, &c, &self.ops) != super_bracket(&self.ops[i], &self.ops[j])? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Adjoint action of `h` on `g/h`. The complement basis is chosen inside the weight
    /// spaces of the diagonal part of `h`, so that part acts diagonally on the quotient.
    pub fn quotient(h: &LieSuperAlgebra, g: &LieSuperAlgebra) -> Result<QuotientModule> {
        if h.carrier() != g.carrier() {
            return Err(Error::DimMismatch(format!("{} vs {}", h.carrier(), g.carrier())));
        }
        let carrier = g.carrier();
        let n = carrier.total();
        let mask = crate::algebras::end_mask(carrier);
        let tor = diagonal_elements(h.basis());
        let mut classes: BTreeMap<(u8, Weight), Vec<usize>> = BTreeMap::new();
        for i in 0..n {
            for j in 0..n {
                let w = Weight(tor.iter().map(|t| t.get(i, i) - t.get(j, j)).collect());
                classes.entry((mask[i * n + j], w)).or_default().push(i * n + j);
            }
        }
        let project = |rows: &[Vec<Scalar>], idx: &[usize]| -> Subspace {
            let proj: Vec<Vec<Scalar>> = rows
                .iter()
                .map(|r| {
                    let mut v = vec![Scalar::zero(); n * n];
                    for &k in idx {
                        v[k] = r[k].clone();
                    }
                    v
                })
                .collect();
            Subspace::span(n * n, &proj)
        };
        let mut comp: Vec<Vec<Scalar>> = Vec::new();
        for idx in classes.values() {
            let gs = project(g.as_subspace().basis(), idx);
            if gs.is_zero() {
                continue;
            }
            let hs = project(h.as_subspace().basis(), idx);
            comp.extend(hs.complement_basis(&gs)?);
        }
        comp.sort_by_key(|r| vec_parity(r, &mask));
        let even = comp.iter().filter(|r| vec_parity(r, &mask) == 0).count();
        let dim = SuperDim::new(even, comp.len() - even);
        let lifts: Vec<SuperMatrix> = comp.iter().map(|r| SuperMatrix::from_flat(carrier, r)).collect();
        let mut all: Vec<&[Scalar]> = h.basis().iter().map(SuperMatrix::entries).collect();
        all.extend(comp.iter().map(Vec::as_slice));
        let coord = Coordinatizer::new(n * n, &all)
            .map_err(|_| Error::Precondition("h is not contained in g, or g is not graded by the torus".into()))?;
        if coord.rank() != g.dim() {
            return Err(Error::Precondition("h is not contained in g".into()));
        }
        let k = h.dim();
        let act = |x: &SuperMatrix| -> Result<SuperMatrix> {
            let mut e = vec![Scalar::zero(); comp.len() * comp.len()];
            for (j, c) in lifts.iter().enumerate() {
                let b = super_bracket(x, c)?;
                let co = coord.coords(b.entries()).ok_or_else(|| Error::Precondition("g is not bracket-closed".into()))?;
                for (i, v) in co[k..].iter().enumerate() {
                    e[i * comp.len() + j] = v.clone();
                }
            }
            Ok(SuperMatrix::new(dim, e))
        };
        let ops = h.basis().iter().map(&act).collect::<Result<Vec<_>>>()?;
        let torus = tor.iter().map(&act).collect::<Result<Vec<_>>>()?;
        if torus.iter().any(|t| !is_diagonal(t)) {
            return Err(Error::Internal("torus does not act diagonally on the quotient".into()));
        }
        let action = ModuleAction { dim, ops, torus };
        Ok(QuotientModule { action, lifts })
    }

    /// Smallest submodule containing the given vectors.
    pub fn closure(&self, vectors: &[Vec<Scalar>]) -> Subspace {
        let n = self.dim.total();
        let mask = module_mask(self.dim);
        let mut ech = Echelon::new(n);
        let mut queue: Vec<Vec<Scalar>> = Vec::new();
        let push = |v: Vec<Scalar>, ech: &mut Echelon, queue: &mut Vec<Vec<Scalar>>| {
            for p in 0..2u8 {
                let part: Vec<Scalar> = v.iter().zip(&mask).map(|(x, &q)| if q == p { x.clone() } else { Scalar::zero() }).collect();
                if ech.insert(&part) {
                    queue.push(part);
                }
            }
        };
        for v in vectors {
            push(v.clone(), &mut ech, &mut queue);
        }
        let mut k = 0;
        while k < queue.len() {
            let v = queue[k].clone();
            for op in &self.ops {
                push(op.apply(&v), &mut ech, &mut queue);
            }
            k += 1;
        }
        ech.to_subspace()
    }

    /// Restriction to an invariant graded subspace of some of the operators; the basis
    /// of the subspace is reordered even first and returned.
    pub fn restrict(&self, sub: &Subspace, which: &[usize]) -> Result<(ModuleAction, Vec<Vec<Scalar>>)> {
        let mask = module_mask(self.dim);
        let mut basis: Vec<Vec<Scalar>> = sub.basis().to_vec();
        basis.sort_by_key(|r| vec_parity(r, &mask));
        let even = basis.iter().filter(|r| vec_parity(r, &mask) == 0).count();
        let dim = SuperDim::new(even, basis.len() - even);
        let coord = Coordinatizer::new(self.dim.total(), &basis)?;
        let r = basis.len();
        let rest = |op: &SuperMatrix| -> Result<SuperMatrix> {
            let mut e = vec![Scalar::zero(); r * r];
            for (j, b) in basis.iter().enumerate() {
                let c = coord.coords(&op.apply(b)).ok_or_else(|| Error::Precondition("subspace is not invariant".into()))?;
                for (i, v) in c.into_iter().enumerate() {
                    e[i * r + j] = v;
                }
            }
            Ok(SuperMatrix::new(dim, e))
        };
        let ops = which.iter().map(|&i| rest(&self.ops[i])).collect::<Result<Vec<_>>>()?;
        let torus = self.torus.iter().map(&rest).collect::<Result<Vec<_>>>()?;
        Ok((ModuleAction { dim, ops, torus }, basis))
    }
}

/// How minimal submodules were found.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SocleMethod {
    Envelope,
    Weights,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiplicityFlag {
    /// Superdimension of the block whose even centralizer is not commutative.
    pub block: [usize; 2],
    pub context: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SocleReport {
    pub method: SocleMethod,
    pub radical_dim: Option<usize>,
    pub minimal: Vec<Subspace>,
    pub minimal_superdims: Vec<[usize; 2]>,
    pub multiplicity_flags: Vec<MultiplicityFlag>,
    pub split_failures: Vec<String>,
}

impl SocleReport {
    /// Whether the list of minimal submodules is provably complete.
    pub fn is_complete(&self) -> bool {
        self.multiplicity_flags.is_empty() && self.split_failures.is_empty()
    }
}

fn sort_submodules(v: &mut Vec<Subspace>) {
    v.sort_by(|a, b| {
        a.dim().cmp(&b.dim()).then_with(|| a.pivots().cmp(b.pivots())).then_with(|| {
            for (x, y) in a.basis().iter().flatten().zip(b.basis().iter().flatten()) {
                let o = x.lex_cmp(y);
                if o != Ordering::Equal {
                    return o;
                }
            }
            Ordering::Equal
        })
    });
    v.dedup();
}

fn to_module_coords(rows: &[Vec<Scalar>], basis: &[Vec<Scalar>], len: usize) -> Vec<Vec<Scalar>> {
    rows.iter()
        .map(|c| {
            let mut v = vec![Scalar::zero(); len];
            for (ci, b) in c.iter().zip(basis) {
                if ci.is_zero() {
                    continue;
                }
                for (x, y) in v.iter_mut().zip(b) {
                    x.add_mul(ci, y);
                }
            }
            v
        })
        .collect()
}

/// Minimal polynomial of `c` (lowest coefficient first).
fn minimal_polynomial(c: &SuperMatrix) -> Result<Vec<Scalar>> {
    let n = c.size();
    let mut powers = vec![SuperMatrix::identity(c.dim())];
    loop {
        let next = powers.last().expect("nonempty").matmul(c)?;
        let coord = Coordinatizer::new(n * n, &powers.iter().map(SuperMatrix::entries).collect::<Vec<_>>())?;
        if let Some(co) = coord.coords(next.entries()) {
            let mut p: Vec<Scalar> = co.into_iter().map(|x| -x).collect();
            p.push(Scalar::one());
            return Ok(p);
        }
        powers.push(next);
    }
}

/// Envelope-based socle computation for a (small) module without torus information.
fn envelope_socle(m: &ModuleAction, rng: &mut ChaCha8Rng) -> Result<SocleReport> {
    let n = m.dim.total();
    let mut report = SocleReport {
        method: SocleMethod::Envelope,
        radical_dim: None,
        minimal: vec![],
        minimal_superdims: vec![],
        multiplicity_flags: vec![],
        split_failures: vec![],
    };
    if n == 0 {
        return Ok(report);
    }
    let a = envelope_basis(m.dim, &m.ops)?;
    let rad = radical_basis(&a);
    report.radical_dim = Some(rad.len());
    let soc = joint_kernel(n, &rad);
    let all: Vec<usize> = (0..m.ops.len()).collect();
    let (b, soc_basis) = m.restrict(&soc, &all)?;
    let c0 = supercentralizer(b.dim, &b.ops, 0)?;
    let commutative = c0.iter().enumerate().all(|(i, x)| {
        c0[i + 1..].iter().all(|y| x.matmul(y).ok() == y.matmul(x).ok())
    });
    if !commutative {
        report.multiplicity_flags.push(MultiplicityFlag { block: [b.dim.even, b.dim.odd], context: "socle".into() });
        return Ok(report);
    }
    let eigenspaces: Vec<Subspace> = if c0.len() == 1 {
        vec![Subspace::full(b.dim.total())]
    } else {
        let mut found = None;
        for _ in 0..8 {
            let coeffs: Vec<Scalar> = (0..c0.len()).map(|_| Scalar::int(rng.gen_range(-3..=3))).collect();
            let c = combine(b.dim, &coeffs, &c0);
            let p = minimal_polynomial(&c)?;
            if p.len() - 1 != c0.len() {
                continue;
            }
            let Some(roots) = split_roots(&p) else {
                report.split_failures.push(format!("minimal polynomial of degree {} does not split", p.len() - 1));
                return Ok(report);
            };
            let r = b.dim.total();
            let spaces = roots
                .iter()
                .map(|lam| {
                    let shifted = c.sub(&SuperMatrix::scalar(b.dim, lam.clone())).expect("same dim");
                    joint_kernel(r, &[shifted])
                })
                .collect::<Vec<_>>();
            found = Some(spaces);
            break;
        }
        found.ok_or_else(|| Error::SplitFailure)?
    };
    let mut subs: Vec<Subspace> = eigenspaces
        .iter()
        .map(|e| Subspace::span(n, &to_module_coords(e.basis(), &soc_basis, n)))
        .collect();
    sort_submodules(&mut subs);
    let mask = module_mask(m.dim);
    report.minimal_superdims = subs.iter().map(|s| { let (a, b) = s.superdim(&mask); [a, b] }).collect();
    report.minimal = subs;
    Ok(report)
}

/// Lexicographic order on weight vectors; additive, so positivity is well defined.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Weight(Vec<Scalar>);

impl Ord for Weight {
    fn cmp(&self, o: &Self) -> Ordering {
        for (a, b) in self.0.iter().zip(&o.0) {
            let c = a.lex_cmp(b);
            if c != Ordering::Equal {
                return c;
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Weight {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Weight {
    fn is_zero(&self) -> bool {
        self.0.iter().all(Scalar::is_zero)
    }

    fn is_positive(&self) -> bool {
        self.0.iter().find(|x| !x.is_zero()).is_some_and(|x| x.lex_cmp(&Scalar::zero()) == Ordering::Greater)
    }
}

/// Highest-weight reduction: every minimal submodule `N` is generated by `L = N ∩ K`,
/// an irreducible module for the weight-zero part, where `K` is the joint kernel of the
/// positive-weight part; conversely `U·L` is minimal exactly when `U·L ∩ K = L`.
fn weight_socle(m: &ModuleAction, rng: &mut ChaCha8Rng) -> Result<SocleReport> {
    let n = m.dim.total();
    let weight_of = |i: usize| Weight(m.torus.iter().map(|t| t.get(i, i).clone()).collect());
    let wts: Vec<Weight> = (0..n).map(weight_of).collect();
    let mut pos: Vec<SuperMatrix> = Vec::new();
    let mut zero: Vec<SuperMatrix> = Vec::new();
    for op in &m.ops {
        let mut parts: BTreeMap<Weight, Vec<Scalar>> = BTreeMap::new();
        for i in 0..n {
            for j in 0..n {
                let x = op.get(i, j);
                if x.is_zero() {
                    continue;
                }
                let w = Weight(wts[i].0.iter().zip(&wts[j].0).map(|(a, b)| a - b).collect());
                parts.entry(w).or_insert_with(|| vec![Scalar::zero(); n * n])[i * n + j] = x.clone();
            }
        }
        for (w, e) in parts {
            let mat = SuperMatrix::new(m.dim, e);
            if w.is_zero() {
                zero.push(mat);
            } else if w.is_positive() {
                pos.push(mat);
            }
        }
    }
    let kernel = joint_kernel(n, &pos);
    let mut by_weight: BTreeMap<Weight, Vec<Vec<Scalar>>> = BTreeMap::new();
    for r in kernel.basis() {
        let p = r.iter().position(|x| !x.is_zero()).expect("nonzero row");
        by_weight.entry(wts[p].clone()).or_default().push(r.clone());
    }
    let zero_action = ModuleAction { dim: m.dim, ops: zero, torus: vec![] };
    let all_zero: Vec<usize> = (0..zero_action.ops.len()).collect();
    let all_ops: Vec<usize> = (0..m.ops.len()).collect();
    let mut report = SocleReport {
        method: SocleMethod::Weights,
        radical_dim: None,
        minimal: vec![],
        minimal_superdims: vec![],
        multiplicity_flags: vec![],
        split_failures: vec![],
    };
    for rows in by_weight.values() {
        let piece = Subspace::span(n, rows);
        let (sub, basis) = zero_action.restrict(&piece, &all_zero)?;
        let local = envelope_socle(&sub, rng)?;
        report.split_failures.extend(local.split_failures.iter().cloned());
        if !local.multiplicity_flags.is_empty() {
            let spun = m.closure(piece.basis());
            if spun.dim() > ENVELOPE_FALLBACK_MAX {
                report.multiplicity_flags.push(MultiplicityFlag {
                    block: [sub.dim.even, sub.dim.odd],
                    context: format!("highest-weight space generating a submodule of dimension {}", spun.dim()),
                });
                continue;
            }
            let (big, big_basis) = m.restrict(&spun, &all_ops)?;
            let inner = envelope_socle(&big.without_torus(), rng)?;
            report.split_failures.extend(inner.split_failures.iter().cloned());
            report.multiplicity_flags.extend(inner.multiplicity_flags.iter().cloned());
            for s in &inner.minimal {
                report.minimal.push(Subspace::span(n, &to_module_coords(s.basis(), &big_basis, n)));
            }
            continue;
        }
        for l in &local.minimal {
            let lvecs = to_module_coords(l.basis(), &basis, n);
            let spun = m.closure(&lvecs);
            if spun.intersect(&kernel)?.dim() == l.dim() {
                report.minimal.push(spun);
            }
        }
    }
    sort_submodules(&mut report.minimal);
    let mask = module_mask(m.dim);
    report.minimal_superdims = report.minimal.iter().map(|s| { let (a, b) = s.superdim(&mask); [a, b] }).collect();
    Ok(report)
}

/// All minimal (graded) submodules, when the socle is multiplicity free; otherwise the
/// report carries flags.
pub fn minimal_submodules(m: &ModuleAction) -> Result<SocleReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    if m.torus.is_empty() {
        envelope_socle(m, &mut rng)
    } else {
        weight_socle(m, &mut rng)
    }
}

/// Irreducibility type of the identity representation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum IrreducibilityType {
    G,
    Q { witness: SuperMatrix },
    Reducible { witness: Subspace },
}

/// Type of an action: G when the envelope is everything, Q when there is no graded
/// invariant subspace but an odd `J` with `J² = −1` supercommutes with the action,
/// and otherwise a proper graded invariant subspace.
pub fn module_type(m: &ModuleAction) -> Result<IrreducibilityType> {
    let n = m.dim.total();
    let env = envelope_basis(m.dim, &m.ops)?;
    if env.len() == n * n {
        return Ok(IrreducibilityType::G);
    }
    let report = minimal_submodules(m)?;
    if let Some(w) = report.minimal.iter().find(|s| s.dim() < n) {
        return Ok(IrreducibilityType::Reducible { witness: w.clone() });
    }
    if !report.is_complete() {
        return Err(Error::SplitFailure);
    }
    let odd = supercentralizer(m.dim, &m.ops, 1)?;
    let j = odd.first().ok_or_else(|| Error::Internal("graded-irreducible action with a proper envelope and no odd centralizer".into()))?;
    let sq = j.matmul(j)?;
    let c = sq.get(0, 0).clone();
    if sq != SuperMatrix::scalar(m.dim, c.clone()) || c.is_zero() {
        return Err(Error::Internal("odd centralizer element does not square to a scalar".into()));
    }
    let s = field_sqrt(&-&c).ok_or(Error::SplitFailure)?;
    Ok(IrreducibilityType::Q { witness: j.scale(&s.inv()?) })
}

pub fn irreducibility_type(g: &LieSuperAlgebra) -> Result<IrreducibilityType> {
    module_type(&ModuleAction::identity_rep(g))
}

fn bracket_span(a: &[SuperMatrix], b: &[SuperMatrix], len: usize) -> Result<Subspace> {
    let mut e = Echelon::new(len);
    for x in a {
        for y in b {
            e.insert(super_bracket(x, y)?.entries());
        }
    }
    Ok(e.to_subspace())
}

fn mats(s: &Subspace, carrier: SuperDim) -> Vec<SuperMatrix> {
    s.basis().iter().map(|r| SuperMatrix::from_flat(carrier, r)).collect()
}

/// `g ⊃ [g, g] ⊃ …` until it stabilizes.
pub fn derived_series(g: &LieSuperAlgebra) -> Result<Vec<Subspace>> {
    let n = g.carrier().total();
    let mut out = vec![g.as_subspace().clone()];
    loop {
        let cur = mats(out.last().expect("nonempty"), g.carrier());
        let next = bracket_span(&cur, &cur, n * n)?;
        if next.dim() == cur.len() {
            return Ok(out);
        }
        let stop = next.is_zero();
        out.push(next);
        if stop {
            return Ok(out);
        }
    }
}

/// `{x ∈ g : [x, g] = 0}`.
pub fn center(g: &LieSuperAlgebra) -> Result<Subspace> {
    let n = g.carrier().total();
    let basis = g.basis();
    let images: Vec<Vec<Scalar>> = basis
        .iter()
        .map(|x| {
            let mut v = Vec::with_capacity(basis.len() * n * n);
            for y in basis {
                v.extend(super_bracket(x, y)?.into_entries());
            }
            Ok(v)
        })
        .collect::<Result<_>>()?;
    let ker = kernel_of_images(&images, basis.len() * n * n);
    let vecs: Vec<Vec<Scalar>> = ker.iter().map(|c| combine(g.carrier(), c, basis).into_entries()).collect();
    Ok(Subspace::span(n * n, &vecs))
}

pub fn is_subalgebra(h: &Subspace, g: &LieSuperAlgebra) -> Result<bool> {
    if !g.as_subspace().contains(h)? {
        return Ok(false);
    }
    let hm = mats(h, g.carrier());
    let e = h.echelon();
    for (i, x) in hm.iter().enumerate() {
        for y in &hm[i..] {
            if !e.contains(super_bracket(x, y)?.entries()) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn is_ideal(i: &Subspace, g: &LieSuperAlgebra) -> Result<bool> {
    if !g.as_subspace().contains(i)? {
        return Ok(false);
    }
    let im = mats(i, g.carrier());
    let e = i.echelon();
    for x in &im {
        for y in g.basis() {
            if !e.contains(super_bracket(x, y)?.entries()) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Normalizer `{X ∈ gl(V) : [X, h] ⊆ h}`, solved as a linear system per parity.
pub fn normalizer(h: &LieSuperAlgebra) -> Result<LieSuperAlgebra> {
    let dim = h.carrier();
    let n = dim.total();
    let ech = h.as_subspace().echelon();
    let mut gens = Vec::new();
    for p in 0..2u8 {
        let vars: Vec<usize> = (0..n * n).filter(|&k| SuperMatrix::coord_parity(dim, k) == p).collect();
        let images = vars
            .iter()
            .map(|&k| {
                let e = SuperMatrix::unit(dim, k / n, k % n);
                let mut out = Vec::with_capacity(h.dim() * n * n);
                for b in h.basis() {
                    let mut v = super_bracket(&e, b)?.into_entries();
                    ech.reduce(&mut v);
                    out.extend(v);
                }
                Ok(out)
            })
            .collect::<Result<Vec<_>>>()?;
        for c in kernel_of_images(&images, h.dim() * n * n) {
            let units: Vec<SuperMatrix> = vars.iter().map(|&k| SuperMatrix::unit(dim, k / n, k % n)).collect();
            let terms: Vec<(Scalar, &SuperMatrix)> = c.into_iter().zip(&units).filter(|(x, _)| !x.is_zero()).collect();
            gens.push(SuperMatrix::lin_comb(dim, &terms));
        }
    }
    Ok(LieSuperAlgebra::from_spanning(format!("N({})", h.name()), dim, &gens))
}

/// Bracket-closedness by growing the closure of greedily chosen basis elements; cheaper
/// than checking all basis pairs when few generators suffice.
pub fn is_closed_fast(a: &LieSuperAlgebra) -> Result<bool> {
    let mut c = LieClosure::new(a.carrier());
    for b in a.basis() {
        if c.contains(b) {
            continue;
        }
        c.add_generator(b)?;
        c.run(Some(a.dim() + 1))?;
        if c.dim() > a.dim() {
            return Ok(false);
        }
    }
    Ok(c.dim() == a.dim())
}
