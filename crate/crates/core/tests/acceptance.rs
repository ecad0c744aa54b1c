//! The twelve acceptance criteria, one PASS/FAIL line each.
//!
//! A criterion whose literal expectation contradicts an exact computation prints FAIL
//! together with the recorded reason; the run still succeeds when the verified facts
//! behind the deviation hold. Any other FAIL makes the process exit nonzero.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use superalg::algebras::{
    abelian_components, as_operators, po1_components, realize_as, sergeev_as, sergeev_as_with, sergeev_component,
    CentralTerm,
};
use superalg::maxcheck::{
    instantiate_row, parse_params, registry, run_suite, verify_maximal, verify_row, Expected, MaximalityReport, Mode,
    Relation, RunOptions, Section, Status, Verification,
};
use superalg::{str, Error, SuperDim};

struct Outcome {
    /// The criterion as stated.
    literal: bool,
    /// For a recorded deviation: the exact facts that replace the literal expectation.
    documented: Option<bool>,
    detail: Vec<String>,
}

impl Outcome {
    fn new() -> Outcome {
        Outcome { literal: true, documented: None, detail: vec![] }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        let what = what.into();
        self.detail.push(if ok { what } else { format!("NOT {what}") });
        self.literal &= ok;
    }

    /// A verified fact that stands in for a literal expectation recorded as unattainable.
    fn fact(&mut self, ok: bool, what: impl Into<String>) {
        let what = what.into();
        self.detail.push(if ok { format!("verified: {what}") } else { format!("NOT verified: {what}") });
        self.documented = Some(self.documented.unwrap_or(true) && ok);
    }
}

fn opts() -> RunOptions {
    RunOptions::default()
}

fn run(id: &str, params: &str) -> MaximalityReport {
    verify_row(id, &parse_params(params).unwrap(), opts()).unwrap_or_else(|e| panic!("{id}: {e}"))
}

fn certified(r: &MaximalityReport) -> bool {
    *r.status() == Status::CertifiedMaximal && r.verification.fell_back.is_none()
}

fn describe(r: &MaximalityReport) -> String {
    let w = r.verification.witness.as_ref().map(|w| format!(", witness {}", w.algebra.superdim())).unwrap_or_default();
    format!("{} {} in {}: {}{w}", r.row, r.h_name, r.g_name, r.status().label())
}

fn expect_certified(o: &mut Outcome, id: &str) {
    let r = run(id, "");
    o.check(certified(&r) && r.matches_expected, describe(&r));
}

fn certify_instance(id: &str) -> Verification {
    let inst = instantiate_row(id, &parse_params("").unwrap()).unwrap();
    verify_maximal(&inst.h, &inst.g, Mode::Certify, opts().fallback).unwrap()
}

fn verdict(v: &Verification) -> String {
    let w = v.witness.as_ref().map(|w| format!(", witness {}", w.algebra.superdim())).unwrap_or_default();
    format!("{}{w}", v.status.label())
}

fn relation_holds(r: &MaximalityReport, rel: Relation) -> bool {
    r.inclusion.as_ref().is_some_and(|i| i.relation == rel && i.holds())
}

fn c1() -> Outcome {
    let mut o = Outcome::new();
    expect_certified(&mut o, "THM2.1-gl");
    // gl(1|1) ⊙ gl(1|1) in sl(2|2) is the N = 1 + ε exception, row EXC-1.13-eps at its defaults
    let v = certify_instance("EXC-1.13-eps");
    o.check(v.status == Status::CertifiedMaximal, format!("gl(1|1)⊙gl(1|1) in sl(2|2) certified maximal (got {})", verdict(&v)));
    let exc = run("EXC-1.13-eps", "");
    o.fact(v.status == Status::NotMaximal && v.witness.is_some(), format!("gl(1|1)⊙gl(1|1) in sl(2|2): {}", verdict(&v)));
    o.fact(exc.matches_expected, describe(&exc));
    o
}

fn c2() -> Outcome {
    let mut o = Outcome::new();
    expect_certified(&mut o, "THM2.2-q");
    let v = certify_instance("EXC-1.13-eps-q");
    o.check(v.status == Status::CertifiedMaximal, format!("q(1)⊙gl(1|1) in sq(2) certified maximal (got {})", verdict(&v)));
    let exc = run("EXC-1.13-eps-q", "");
    o.fact(v.status == Status::NotMaximal && v.witness.is_some(), format!("q(1)⊙gl(1|1) in sq(2): {}", verdict(&v)));
    o.fact(exc.matches_expected, describe(&exc));
    o
}

fn c3() -> Outcome {
    let mut o = Outcome::new();
    expect_certified(&mut o, "THM2.3.1");
    let r = run("EXC-1.13-qq", "");
    o.check(relation_holds(&r, Relation::Equal) && r.matches_expected, "q(1)⊙q(1) = sl(1|1) as subspaces");
    o
}

fn c4() -> Outcome {
    let mut o = Outcome::new();
    expect_certified(&mut o, "THM2.5-even");
    expect_certified(&mut o, "THM2.5-mixed");
    o
}

fn c5() -> Outcome {
    let mut o = Outcome::new();
    expect_certified(&mut o, "THM3.1-n2");
    let r = run("THM3.1-n3", "");
    let contains_as = r.inclusion.as_ref().is_some_and(|i| i.holds() && i.named_superdim == [16, 16]);
    o.check(*r.status() == Status::NotMaximal && contains_as && r.matches_expected, format!("{} containing as_operators", describe(&r)));
    expect_certified(&mut o, "THM3.1-as");
    expect_certified(&mut o, "THM3.1-odd");
    o
}

fn c6() -> Outcome {
    let mut o = Outcome::new();
    for id in ["LEM3.3.1", "THM3.3-1", "THM3.3-2", "THM3.3-2sg"] {
        expect_certified(&mut o, id);
    }
    o
}

fn c7() -> Outcome {
    let mut o = Outcome::new();
    let r = run("LEM3.6.1", "");
    o.check(certified(&r) && r.verification.g_superdim == SuperDim::new(15, 16), format!("{} (ambient {})", describe(&r), r.verification.g_superdim));
    let e = run("EXC-1.14-pe2", "");
    o.check(relation_holds(&e, Relation::Equal) && e.matches_expected, "sp(2)⊗Λ(1)⋉T^1/2(vect(0|1)) = pe(2) as subspaces");
    o
}

fn c8() -> Outcome {
    let mut o = Outcome::new();
    for row in registry().iter().filter(|r| r.section == Section::Exceptional) {
        let r = run(row.id, "");
        let ok = *r.status() == Status::NotMaximal
            && r.matches_expected
            && r.inclusion.as_ref().is_some_and(|i| i.holds())
            && matches!(r.expected, Expected::NotMaximal { .. });
        o.check(ok, describe(&r));
    }
    o
}

fn c9() -> Outcome {
    let mut o = Outcome::new();
    let checks = run_suite("all").unwrap();
    let failed: Vec<String> = checks.iter().filter(|c| !c.passed).map(|c| format!("{}/{}", c.suite, c.name)).collect();
    o.check(failed.is_empty(), format!("{} exact checks, failing: {failed:?}", checks.len()));
    o
}

fn c10() -> Outcome {
    let mut o = Outcome::new();
    let comps = po1_components().unwrap();
    o.check(comps.len() == 2 && comps.iter().all(|c| c.len() == 10), format!("po_1(0|6) has {} minimal o(6)-submodules of dims {:?}", comps.len(), comps.iter().map(Vec::len).collect::<Vec<_>>()));
    let abelian = abelian_components().unwrap();
    o.check(abelian.len() == 1, format!("exactly one W with {{W, W}} = 0 (found {})", abelian.len()));
    o.fact(abelian.len() == 2, "both components satisfy {W, W} = 0");

    let a = as_operators().unwrap();
    o.check(a.superdim() == SuperDim::new(16, 16), format!("as_operators superdim {}", a.superdim()));
    o.check(a.is_closed(), "bracket-closed");
    o.check(a.basis().iter().all(|x| str(x).is_zero()), "inside ker str");

    let lit = realize_as(&sergeev_component().unwrap()).unwrap();
    let literal_match = lit.as_ref().is_some_and(|r| r.reproduces(&sergeev_as_with(CentralTerm::Literal)));
    o.check(literal_match, "structure constants reproduce the printed central term tr(C C′) z");
    let hodge = lit.as_ref().is_some_and(|r| r.reproduces(&sergeev_as()));
    let scale = lit.as_ref().map(|r| r.z_scale.to_string()).unwrap_or_default();
    o.fact(hodge, format!("structure constants reproduce tr(C C̃′) z with z ↦ {scale}·1"));
    for (k, w) in abelian.iter().enumerate() {
        let r = realize_as(w).unwrap();
        let ok = r.as_ref().is_some_and(|r| r.reproduces(&sergeev_as()));
        o.fact(ok, format!("component {k} also realizes the Hodge-dual table"));
    }
    o
}

fn c11() -> Outcome {
    let mut o = Outcome::new();
    expect_certified(&mut o, "DYN1");
    let rejected = verify_row("DYN3", &parse_params("d1=2,d2=2").unwrap(), opts());
    o.check(matches!(rejected, Err(Error::Admissibility(_))), "DYN3 at dim V1 = dim V2 = 2 rejected as inadmissible");
    expect_certified(&mut o, "DYN2");
    o
}

fn c12() -> Outcome {
    let mut o = Outcome::new();
    let json = |id: &str, opts: RunOptions| {
        serde_json::to_string(&verify_row(id, &parse_params("").unwrap(), opts).unwrap().to_json(false)).unwrap()
    };
    o.check(json("THM2.1-gl", opts()) == json("THM2.1-gl", opts()), "THM2.1-gl certify reports byte-identical");
    let ev = RunOptions { mode: Mode::Evidence { trials: 10, seed: 5 }, fallback: (10, 5) };
    o.check(json("THM2.1-gl", ev) == json("THM2.1-gl", ev), "THM2.1-gl evidence reports byte-identical at seed 5");
    o
}

/// Criteria whose literal expectation is unattainable, with the reason recorded.
const DEVIATIONS: [(usize, &str); 3] = [
    (1, "gl(1|1)⊙gl(1|1) is the N_i = 1 + ε exception and lies in gl(1|1)⊗Λ(1)⋉vect(0|1)"),
    (2, "q(1)⊙gl(1|1) is the N_2 = 1 + ε exception and lies in q(1)⊗Λ(1)⋉vect(0|1)"),
    (10, "both cubic components are abelian, and the printed central term fails Jacobi; its Hodge dual is matched"),
];

fn main() -> ExitCode {
    let criteria: [(usize, fn() -> Outcome, u64); 12] = [
        (1, c1, 120),
        (2, c2, 60),
        (3, c3, 30),
        (4, c4, 600),
        (5, c5, 600),
        (6, c6, 600),
        (7, c7, 300),
        (8, c8, 300),
        (9, c9, 600),
        (10, c10, 300),
        (11, c11, 120),
        (12, c12, 120),
    ];
    let mut unexpected = 0;
    for (n, f, budget) in criteria {
        let start = Instant::now();
        let mut o = f();
        let elapsed = start.elapsed();
        let in_budget = elapsed <= Duration::from_secs(budget);
        if !in_budget {
            o.check(false, format!("within {budget} s"));
        }
        let deviation = DEVIATIONS.iter().find(|(k, _)| *k == n);
        let tag = if o.literal { "PASS" } else { "FAIL" };
        let mut line = format!("{tag} criterion {n} ({:.1} s): {}", elapsed.as_secs_f64(), o.detail.join("; "));
        let accepted = match (o.literal, deviation) {
            (true, None) => true,
            (false, Some((_, why))) => {
                line.push_str(&format!(" [recorded deviation: {why}]"));
                in_budget && o.documented == Some(true)
            }
            (true, Some(_)) => {
                line.push_str(" [recorded deviation no longer reproduces]");
                false
            }
            (false, None) => false,
        };
        println!("{line}");
        if !accepted {
            unexpected += 1;
        }
    }
    println!("acceptance: {unexpected} unexpected result(s)");
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
