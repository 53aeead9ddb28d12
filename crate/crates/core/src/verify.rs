//! Named randomized verification suites, shared by the CLI `verify`
//! command and the acceptance tests: contracting-homotopy and chain
//! identities across the standard h-matrix in characteristic 0 and p,
//! agreement of the two Gerstenhaber bracket routes, the Lie-module
//! axiom, and the Witt representation checks on V_μ.
//!
//! Every suite is seeded and deterministic; failures carry the offending
//! input and both sides of the identity.

use crate::cohomology::{is_inner, project_hh2, Derivation};
use crate::gerstenhaber::{
    bracket_adgan, bracket_dg, bracket_general_with, vmu_action, vmu_irreducible, VmuCertificate,
    VmuVector,
};
use crate::ore::OreAlgebra;
use crate::poly::Poly;
use crate::resolution::{
    lift2_element, verify_chain, verify_homotopy, IdentityFailure, IdentityReport, Sampler,
};
use crate::scalar::{Field, Scalar};
use serde::Serialize;
use std::fmt;
use std::str::FromStr;

/// The h-matrix used by the homotopy and chain suites: {1, x, x^2, x^3,
/// x^2+1, x^2(x−1)} over the given field.
pub fn homotopy_h_matrix(field: Field) -> Vec<Poly> {
    vec![
        Poly::from_ints(field, &[1]),
        Poly::from_ints(field, &[0, 1]),
        Poly::from_ints(field, &[0, 0, 1]),
        Poly::from_ints(field, &[0, 0, 0, 1]),
        Poly::from_ints(field, &[1, 0, 1]),
        Poly::from_ints(field, &[0, 0, -1, 1]), // x^2 (x − 1)
    ]
}

/// The h-matrix for bracket suites (nontrivial HH^2 required):
/// {x^2, x^3, x^2(x−1), x^3(x−1)^2} over Q.
pub fn bracket_h_matrix() -> Vec<Poly> {
    let q = Field::Rational;
    let x = Poly::x(q);
    let xm1 = Poly::from_ints(q, &[-1, 1]);
    vec![
        x.pow(2),
        x.pow(3),
        x.pow(2).mul(&xm1),
        x.pow(3).mul(&xm1.pow(2)),
    ]
}

/// The fields of the characteristic matrix: Q, F_2, F_3, F_5.
pub fn field_matrix() -> Vec<Field> {
    vec![
        Field::Rational,
        Field::Prime(2),
        Field::Prime(3),
        Field::Prime(5),
    ]
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseReport {
    pub case: String,
    pub identity: String,
    pub trials: usize,
    pub failures: Vec<IdentityFailure>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub cases: Vec<CaseReport>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.failures.is_empty())
    }

    pub fn total_failures(&self) -> usize {
        self.cases.iter().map(|c| c.failures.len()).sum()
    }
}

fn absorb(cases: &mut Vec<CaseReport>, case: String, reports: Vec<IdentityReport>) {
    for r in reports {
        cases.push(CaseReport {
            case: case.clone(),
            identity: r.identity,
            trials: r.trials,
            failures: r.failures,
        });
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuiteName {
    Homotopy,
    Chain,
    BracketAgreement,
    LieModule,
    WittRep,
}

impl FromStr for SuiteName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "homotopy" => Ok(SuiteName::Homotopy),
            "chain" => Ok(SuiteName::Chain),
            "bracket-agreement" => Ok(SuiteName::BracketAgreement),
            "lie-module" => Ok(SuiteName::LieModule),
            "witt-rep" => Ok(SuiteName::WittRep),
            other => Err(format!(
                "unknown suite '{other}' (expected homotopy | chain | bracket-agreement | lie-module | witt-rep)"
            )),
        }
    }
}

impl fmt::Display for SuiteName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SuiteName::Homotopy => "homotopy",
            SuiteName::Chain => "chain",
            SuiteName::BracketAgreement => "bracket-agreement",
            SuiteName::LieModule => "lie-module",
            SuiteName::WittRep => "witt-rep",
        };
        write!(f, "{s}")
    }
}

/// Suite parameters; `trials` is per identity and case.
#[derive(Clone, Copy, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    pub trials: usize,
    pub max_x_deg: usize,
    pub max_yhat_deg: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 0,
            trials: 200,
            max_x_deg: 6,
            max_yhat_deg: 4,
        }
    }
}

pub fn run_suite(name: SuiteName, cfg: &SuiteConfig) -> SuiteReport {
    match name {
        SuiteName::Homotopy => homotopy_suite(cfg),
        SuiteName::Chain => chain_suite(cfg),
        SuiteName::BracketAgreement => bracket_agreement_suite(cfg),
        SuiteName::LieModule => lie_module_suite(cfg),
        SuiteName::WittRep => witt_rep_suite(cfg),
    }
}

/// All four homotopy identities on the full (h, field) matrix.
pub fn homotopy_suite(cfg: &SuiteConfig) -> SuiteReport {
    let mut cases = Vec::new();
    let mut case_seed = cfg.seed;
    for field in field_matrix() {
        for h in homotopy_h_matrix(field) {
            let label = format!("h = {h} over {}", field_label(field));
            let reports =
                verify_homotopy(&h, cfg.max_x_deg, cfg.max_yhat_deg, cfg.trials, case_seed);
            absorb(&mut cases, label, reports);
            case_seed += 1;
        }
    }
    SuiteReport {
        suite: "homotopy".into(),
        seed: cfg.seed,
        cases,
    }
}

/// μ∘d0 = 0 and d0∘d1 = 0 on the same matrix.
pub fn chain_suite(cfg: &SuiteConfig) -> SuiteReport {
    let mut cases = Vec::new();
    let mut case_seed = cfg.seed;
    for field in field_matrix() {
        for h in homotopy_h_matrix(field) {
            let label = format!("h = {h} over {}", field_label(field));
            let reports = verify_chain(&h, cfg.max_x_deg, cfg.max_yhat_deg, cfg.trials, case_seed);
            absorb(&mut cases, label, reports);
            case_seed += 1;
        }
    }
    SuiteReport {
        suite: "chain".into(),
        seed: cfg.seed,
        cases,
    }
}

fn field_label(f: Field) -> String {
    match f {
        Field::Rational => "Q".into(),
        Field::Prime(p) => format!("F_{p}"),
    }
}

/// The resolution route of the bracket agrees with the closed formulas:
/// bracket_general(D_g, ŷ^ℓ) = g·d/dŷ and bracket_general(ad_{g a_n}, ŷ^ℓ)
/// equals the three-term operator, for random g of degree ≤ 4, n ≤ 3,
/// ℓ ≤ 5, over the bracket h-matrix.
pub fn bracket_agreement_suite(cfg: &SuiteConfig) -> SuiteReport {
    let q = Field::Rational;
    let mut cases = Vec::new();
    let gs_per_case = 3.min(cfg.trials.max(1));
    for (hi, h) in bracket_h_matrix().into_iter().enumerate() {
        let alg = OreAlgebra::new(h.clone()).unwrap();
        let mut sampler = Sampler::new(cfg.seed + hi as u64, 4, 0);
        let label = format!("h = {h} over Q");

        let mut dg_failures = Vec::new();
        let mut dg_trials = 0;
        for _ in 0..gs_per_case {
            let g = sampler.poly(&alg, 4);
            let d = Derivation::d_g(&alg, &g);
            let lift2 = lift2_element(&d);
            for l in 0..=5usize {
                dg_trials += 1;
                let a = alg.term(&Poly::one(q), l);
                let general = bracket_general_with(&d, &lift2, &a).unwrap();
                let closed = bracket_dg(&g, &project_hh2(&a).unwrap());
                if general != closed {
                    dg_failures.push(IdentityFailure {
                        input: format!("g = {g}, class yh^{l}"),
                        lhs: general.to_string(),
                        rhs: closed.to_string(),
                    });
                }
            }
        }
        cases.push(CaseReport {
            case: label.clone(),
            identity: "bracket_general(D_g) = g d/dyh".into(),
            trials: dg_trials,
            failures: dg_failures,
        });

        let mut ad_failures = Vec::new();
        let mut ad_trials = 0;
        for n in 0..=3usize {
            for _ in 0..gs_per_case {
                let g = sampler.poly(&alg, 4);
                let d = Derivation::ad_gan(&alg, &g, n).unwrap();
                let lift2 = lift2_element(&d);
                for l in 0..=5usize {
                    ad_trials += 1;
                    let a = alg.term(&Poly::one(q), l);
                    let general = bracket_general_with(&d, &lift2, &a).unwrap();
                    let closed = bracket_adgan(&g, n, &project_hh2(&a).unwrap()).unwrap();
                    if general != closed {
                        ad_failures.push(IdentityFailure {
                            input: format!("g = {g}, n = {n}, class yh^{l}"),
                            lhs: general.to_string(),
                            rhs: closed.to_string(),
                        });
                    }
                }
            }
        }
        cases.push(CaseReport {
            case: label,
            identity: "bracket_general(ad_gan) = closed operator".into(),
            trials: ad_trials,
            failures: ad_failures,
        });
    }
    SuiteReport {
        suite: "bracket-agreement".into(),
        seed: cfg.seed,
        cases,
    }
}

/// The Lie-module axiom [[D,E],a] = [D,[E,a]] − [E,[D,a]] on seeded random
/// triples with D, E drawn from the D_g and ad_{g a_n} families, plus the
/// inner-derivation triviality check.
pub fn lie_module_suite(cfg: &SuiteConfig) -> SuiteReport {
    let mut cases = Vec::new();
    let triples = cfg.trials.clamp(1, 100);
    for (hi, h) in bracket_h_matrix().into_iter().enumerate() {
        let alg = OreAlgebra::new(h.clone()).unwrap();
        let mut sampler = Sampler::new(cfg.seed + 1000 + hi as u64, 3, 2);
        let label = format!("h = {h} over Q");

        // a small pool of derivations with cached liftings
        let mut pool: Vec<Derivation> = Vec::new();
        for _ in 0..3 {
            pool.push(Derivation::d_g(&alg, &sampler.poly(&alg, 3)));
        }
        for n in 0..=2usize {
            pool.push(Derivation::ad_gan(&alg, &sampler.poly(&alg, 2), n).unwrap());
        }
        let lifts: Vec<_> = pool.iter().map(lift2_element).collect();

        let mut failures = Vec::new();
        for t in 0..triples {
            let di = t % pool.len();
            let ei = (t / pool.len() + t + 1) % pool.len();
            let (d, e) = (&pool[di], &pool[ei]);
            let a = sampler.ore(&alg);
            let de = d.commutator(e);
            let lift_de = lift2_element(&de);
            let lhs = bracket_general_with(&de, &lift_de, &a).unwrap();
            let ea = bracket_general_with(e, &lifts[ei], &a).unwrap();
            let da = bracket_general_with(d, &lifts[di], &a).unwrap();
            let rhs = bracket_general_with(d, &lifts[di], &ea.lift())
                .unwrap()
                .sub(&bracket_general_with(e, &lifts[ei], &da.lift()).unwrap());
            if lhs != rhs {
                failures.push(IdentityFailure {
                    input: format!("D = pool[{di}], E = pool[{ei}], a = {a}"),
                    lhs: lhs.to_string(),
                    rhs: rhs.to_string(),
                });
            }
        }
        cases.push(CaseReport {
            case: label.clone(),
            identity: "[[D,E],a] = [D,[E,a]] − [E,[D,a]]".into(),
            trials: triples,
            failures,
        });

        // inner derivations act as zero
        let mut failures = Vec::new();
        let inner_trials = (triples / 5).max(3);
        for _ in 0..inner_trials {
            let gamma = sampler.ore(&alg);
            let d = Derivation::ad(&gamma);
            debug_assert!(is_inner(&d, 4).is_some() || gamma.is_zero());
            let lift2 = lift2_element(&d);
            let a = sampler.ore(&alg);
            let out = bracket_general_with(&d, &lift2, &a).unwrap();
            if !out.is_zero() {
                failures.push(IdentityFailure {
                    input: format!("gamma = {gamma}, a = {a}"),
                    lhs: out.to_string(),
                    rhs: "0".into(),
                });
            }
        }
        cases.push(CaseReport {
            case: label,
            identity: "inner derivations act as 0 on HH^2".into(),
            trials: inner_trials,
            failures,
        });
    }
    SuiteReport {
        suite: "lie-module".into(),
        seed: cfg.seed,
        cases,
    }
}

/// Representation checks for V_μ: the operator of [w_m, w_n] equals the
/// commutator of the operators (m, n ≤ 6, ℓ ≤ 10), irreducibility
/// certificates for μ ≠ 0, and the invariant line for μ = 0.
pub fn witt_rep_suite(cfg: &SuiteConfig) -> SuiteReport {
    let q = Field::Rational;
    let mus: Vec<Scalar> = vec![
        q.from_i64(2),
        q.from_ratio(3, 2).unwrap(),
        q.from_i64(1),
        q.zero(),
    ];
    let mut cases = Vec::new();
    for mu in &mus {
        let mut failures = Vec::new();
        let mut trials = 0;
        for m in -1..=6i64 {
            for n in -1..=6i64 {
                for l in 0..=10i64 {
                    trials += 1;
                    let v = VmuVector::basis(mu.clone(), l);
                    let rhs =
                        vmu_action(m, &vmu_action(n, &v)).sub(&vmu_action(n, &vmu_action(m, &v)));
                    let lhs = if m + n >= -1 {
                        vmu_action(m + n, &v).mul_scalar(&q.from_i64(n - m))
                    } else {
                        VmuVector::zero(mu.clone())
                    };
                    if lhs != rhs {
                        failures.push(IdentityFailure {
                            input: format!("m={m}, n={n}, l={l}"),
                            lhs: format!("{lhs:?}"),
                            rhs: format!("{rhs:?}"),
                        });
                    }
                }
            }
        }
        cases.push(CaseReport {
            case: format!("V_mu with mu = {mu}"),
            identity: "operator of [w_m,w_n] = commutator of operators".into(),
            trials,
            failures,
        });

        let mut failures = Vec::new();
        let cert = vmu_irreducible(mu, 10);
        let ok = if mu.is_zero() {
            matches!(cert, VmuCertificate::ReducibleInvariantLine { index: 0 })
        } else {
            matches!(cert, VmuCertificate::Irreducible { .. })
        };
        if !ok {
            failures.push(IdentityFailure {
                input: format!("mu = {mu}"),
                lhs: format!("{cert:?}"),
                rhs: "expected certificate".into(),
            });
        }
        cases.push(CaseReport {
            case: format!("V_mu with mu = {mu}"),
            identity: "irreducible iff mu != 0".into(),
            trials: 1,
            failures,
        });
    }
    SuiteReport {
        suite: "witt-rep".into(),
        seed: cfg.seed,
        cases,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_cfg() -> SuiteConfig {
        SuiteConfig {
            seed: 7,
            trials: 6,
            max_x_deg: 4,
            max_yhat_deg: 3,
        }
    }

    #[test]
    fn homotopy_suite_small() {
        let rep = homotopy_suite(&small_cfg());
        assert!(
            rep.passed(),
            "{:?}",
            rep.cases.iter().find(|c| !c.failures.is_empty())
        );
        assert_eq!(rep.cases.len(), 4 * 6 * 4);
    }

    #[test]
    fn chain_suite_small() {
        let rep = chain_suite(&small_cfg());
        assert!(rep.passed());
    }

    #[test]
    fn bracket_agreement_small() {
        let mut cfg = small_cfg();
        cfg.trials = 1;
        let rep = bracket_agreement_suite(&cfg);
        assert!(
            rep.passed(),
            "{:?}",
            rep.cases.iter().find(|c| !c.failures.is_empty())
        );
    }

    #[test]
    fn lie_module_small() {
        let mut cfg = small_cfg();
        cfg.trials = 4;
        let rep = lie_module_suite(&cfg);
        assert!(
            rep.passed(),
            "{:?}",
            rep.cases.iter().find(|c| !c.failures.is_empty())
        );
    }

    #[test]
    fn witt_rep_full() {
        let rep = witt_rep_suite(&small_cfg());
        assert!(rep.passed());
    }

    #[test]
    fn suite_names_parse() {
        assert_eq!(
            "homotopy".parse::<SuiteName>().unwrap(),
            SuiteName::Homotopy
        );
        assert_eq!(
            "bracket-agreement".parse::<SuiteName>().unwrap(),
            SuiteName::BracketAgreement
        );
        assert!("nope".parse::<SuiteName>().is_err());
        assert_eq!(SuiteName::LieModule.to_string(), "lie-module");
    }
}
