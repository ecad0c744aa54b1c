//! Maximality of `h` in `g` through the minimal `h`-submodules of `g/h`.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebras::LieSuperAlgebra;
use crate::error::{Error, Result};
use crate::modtools::{generating_set, is_closed_fast, minimal_submodules, LieClosure, ModuleAction, SocleMethod};
use crate::scalar::Scalar;
use crate::superlinalg::{SuperDim, SuperMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum Mode {
    Certify,
    Evidence { trials: usize, seed: u64 },
}

/// Outcome of a maximality check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status")]
pub enum Status {
    CertifiedMaximal,
    EvidenceMaximal { trials: usize, seed: u64 },
    NotMaximal,
    PreconditionFailed { reason: String },
    Inconclusive { reason: String },
}

impl Status {
    pub fn label(&self) -> &'static str {
        match self {
            Status::CertifiedMaximal => "CertifiedMaximal",
            Status::EvidenceMaximal { .. } => "EvidenceMaximal",
            Status::NotMaximal => "NotMaximal",
            Status::PreconditionFailed { .. } => "PreconditionFailed",
            Status::Inconclusive { .. } => "Inconclusive",
        }
    }

    pub fn is_maximal(&self) -> bool {
        matches!(self, Status::CertifiedMaximal | Status::EvidenceMaximal { .. })
    }
}

/// One closure run `lie_closure(h ∪ {x})`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureTrace {
    /// Index of the minimal submodule, or of the evidence vector.
    pub source: usize,
    pub generator_parity: u8,
    pub closure_dim: usize,
}

/// Intermediate subalgebra `h ⊊ k ⊊ g`.
#[derive(Clone, Debug)]
pub struct Witness {
    pub algebra: LieSuperAlgebra,
}

#[derive(Clone, Debug)]
pub struct Verification {
    pub status: Status,
    pub h_superdim: SuperDim,
    pub g_superdim: SuperDim,
    pub method: Option<SocleMethod>,
    pub minimal_submodules: Vec<[usize; 2]>,
    pub closures: Vec<ClosureTrace>,
    pub witness: Option<Witness>,
    /// Certify mode could not decide and evidence mode was used instead.
    pub fell_back: Option<String>,
    pub elapsed_ms: u128,
}

fn precondition(h: &LieSuperAlgebra, g: &LieSuperAlgebra) -> Result<Option<String>> {
    if h.carrier() != g.carrier() {
        return Ok(Some(format!("carriers differ: {} vs {}", h.carrier(), g.carrier())));
    }
    if !g.contains(h)? {
        return Ok(Some("h is not contained in g".into()));
    }
    if h.dim() == g.dim() {
        return Ok(Some("h = g".into()));
    }
    if !is_closed_fast(h)? {
        return Ok(Some("h is not bracket-closed".into()));
    }
    if !is_closed_fast(g)? {
        return Ok(Some("g is not bracket-closed".into()));
    }
    Ok(None)
}

fn closure_with(h: &LieSuperAlgebra, hgens: &[SuperMatrix], x: &SuperMatrix, stop: usize) -> Result<LieClosure> {
    let mut c = LieClosure::new(h.carrier());
    for b in h.basis() {
        c.add_generator_passive(b);
    }
    for b in hgens {
        c.add_generator(b)?;
    }
    c.add_generator(x)?;
    c.run(Some(stop))?;
    Ok(c)
}

fn finish_witness(h: &LieSuperAlgebra, g: &LieSuperAlgebra, mut c: LieClosure) -> Result<Witness> {
    c.run(None)?;
    let k = c.into_algebra(format!("⟨{} + x⟩", h.name()));
    let sound = k.dim() > h.dim() && k.dim() < g.dim() && g.contains(&k)? && k.contains(h)? && is_closed_fast(&k)?;
    if !sound {
        return Err(Error::Internal("witness failed re-verification".into()));
    }
    Ok(Witness { algebra: k })
}

fn empty(h: &LieSuperAlgebra, g: &LieSuperAlgebra, status: Status) -> Verification {
    Verification {
        status,
        h_superdim: h.superdim(),
        g_superdim: g.superdim(),
        method: None,
        minimal_submodules: vec![],
        closures: vec![],
        witness: None,
        fell_back: None,
        elapsed_ms: 0,
    }
}

fn combine(lifts: &[SuperMatrix], coeffs: &[Scalar]) -> SuperMatrix {
    let terms: Vec<(Scalar, &SuperMatrix)> =
        coeffs.iter().cloned().zip(lifts).filter(|(c, _)| !c.is_zero()).collect();
    SuperMatrix::lin_comb(lifts[0].dim(), &terms)
}

fn certify(h: &LieSuperAlgebra, g: &LieSuperAlgebra, out: &mut Verification) -> Result<()> {
    let q = ModuleAction::quotient(h, g)?;
    let report = minimal_submodules(&q.action)?;
    out.method = Some(report.method);
    out.minimal_submodules = report.minimal_superdims.clone();
    if !report.is_complete() {
        let mut why: Vec<String> = report.split_failures.clone();
        why.extend(report.multiplicity_flags.iter().map(|f| format!("multiplicity in block {}|{} ({})", f.block[0], f.block[1], f.context)));
        out.status = Status::Inconclusive { reason: why.join("; ") };
        return Ok(());
    }
    let hgens = generating_set(h)?;
    let mask: Vec<u8> = (0..q.action.dim().total()).map(|i| q.action.dim().parity(i)).collect();
    for (idx, m) in report.minimal.iter().enumerate() {
        let row = &m.basis()[0];
        let parity = row.iter().zip(&mask).find(|(x, _)| !x.is_zero()).map(|(_, &p)| p).unwrap_or(0);
        let x = combine(&q.lifts, row);
        let c = closure_with(h, &hgens, &x, g.dim())?;
        out.closures.push(ClosureTrace { source: idx, generator_parity: parity, closure_dim: c.dim() });
        if c.dim() < g.dim() {
            out.witness = Some(finish_witness(h, g, c)?);
            out.status = Status::NotMaximal;
            return Ok(());
        }
    }
    out.status = Status::CertifiedMaximal;
    Ok(())
}

fn evidence(h: &LieSuperAlgebra, g: &LieSuperAlgebra, trials: usize, seed: u64, out: &mut Verification) -> Result<()> {
    let comp = h.as_subspace().complement_basis(g.as_subspace())?;
    let lifts: Vec<SuperMatrix> = comp.iter().map(|r| SuperMatrix::from_flat(g.carrier(), r)).collect();
    let mut candidates: Vec<SuperMatrix> = Vec::new();
    for l in &lifts {
        candidates.extend(l.homogeneous_parts().into_iter().map(|(_, m)| m));
    }
    let classes: [Vec<&SuperMatrix>; 2] = [0u8, 1].map(|p| lifts.iter().filter(|l| l.pbit() == p).collect());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for t in 0..trials {
        let class = &classes[t % 2];
        let class = if class.is_empty() { &classes[(t + 1) % 2] } else { class };
        let terms: Vec<(Scalar, &SuperMatrix)> =
            class.iter().map(|&l| (Scalar::int(rng.gen_range(-3..=3)), l)).filter(|(c, _)| !c.is_zero()).collect();
        if terms.is_empty() {
            continue;
        }
        candidates.push(SuperMatrix::lin_comb(g.carrier(), &terms));
    }
    let hgens = generating_set(h)?;
    for (idx, x) in candidates.iter().enumerate() {
        if x.is_zero() || h.contains_matrix(x) {
            continue;
        }
        let c = closure_with(h, &hgens, x, g.dim())?;
        out.closures.push(ClosureTrace { source: idx, generator_parity: x.pbit(), closure_dim: c.dim() });
        if c.dim() < g.dim() {
            out.witness = Some(finish_witness(h, g, c)?);
            out.status = Status::NotMaximal;
            return Ok(());
        }
    }
    out.status = Status::EvidenceMaximal { trials, seed };
    Ok(())
}

/// Decides whether `h` is maximal in `g`. In certify mode an inconclusive socle
/// computation falls back to evidence mode with `fallback` trials and seed.
pub fn verify_maximal(h: &LieSuperAlgebra, g: &LieSuperAlgebra, mode: Mode, fallback: (usize, u64)) -> Result<Verification> {
    let start = Instant::now();
    if let Some(reason) = precondition(h, g)? {
        return Ok(empty(h, g, Status::PreconditionFailed { reason }));
    }
    let mut out = empty(h, g, Status::Inconclusive { reason: String::new() });
    match mode {
        Mode::Certify => {
            certify(h, g, &mut out)?;
            if let Status::Inconclusive { reason } = &out.status {
                out.fell_back = Some(reason.clone());
                out.closures.clear();
                evidence(h, g, fallback.0, fallback.1, &mut out)?;
            }
        }
        Mode::Evidence { trials, seed } => evidence(h, g, trials, seed, &mut out)?,
    }
    out.elapsed_ms = start.elapsed().as_millis();
    Ok(out)
}
