//! Acceptance criteria 1–10. Each criterion prints one PASS/FAIL line.
//!
//! Criterion 5 asks for equality of standard-basis KL polynomials across
//! `Φ`. That identity is false (`Φ` does not preserve orbit dimension), so
//! the criterion is reported as FAIL together with the `C'`-basis transport,
//! which does hold. The test asserts exactly that outcome.

use std::time::{Duration, Instant};

use theta_lab::fourier::shared;
use theta_lab::matchings::{Model, OrbitTable};
use theta_lab::oracle::{convolution_check, finite_fourier_check};
use theta_lab::verify::{self, Check, Status};

struct Outcome {
    number: usize,
    title: &'static str,
    checks: Vec<Check>,
    elapsed: Duration,
    budget: Duration,
}

impl Outcome {
    fn passed(&self) -> bool {
        self.elapsed <= self.budget && self.checks.iter().all(|c| c.status == Status::Pass)
    }

    fn print(&self) {
        let tag = if self.passed() { "PASS" } else { "FAIL" };
        println!("{tag} criterion {}: {} ({:.2?} of {:?})", self.number, self.title, self.elapsed, self.budget);
        for c in &self.checks {
            println!("     {:?} {}: {}", c.status, c.name, c.detail);
        }
    }
}

fn criterion(number: usize, title: &'static str, budget_secs: u64, f: impl FnOnce() -> Vec<Check>) -> Outcome {
    let start = Instant::now();
    let checks = f();
    Outcome { number, title, checks, elapsed: start.elapsed(), budget: Duration::from_secs(budget_secs) }
}

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `Σ_k C(s,k) C(t,k) k! (2^k if signed)`, computed here independently.
fn closed_form(s: usize, t: usize, signed: bool) -> u128 {
    (0..=s.min(t) as u128)
        .map(|k| {
            let fact: u128 = (1..=k).product();
            binomial(s as u128, k) * binomial(t as u128, k) * fact * if signed { 1 << k } else { 1 }
        })
        .sum()
}

fn orbit_counts() -> Vec<Check> {
    let mut bad = Vec::new();
    let mut tables = 0;
    for m in 0..=5 {
        for n in 0..=5 {
            for model in [Model::TypeII { m, n }, Model::TypeIM1 { m, n }, Model::TypeIM2 { m, n }] {
                let expect = closed_form(model.source_rank(), model.target_rank(), model.is_signed());
                let labels = model.enumerate().len() as u128;
                if labels != expect {
                    bad.push(format!("{model}: {labels} vs {expect}"));
                }
                tables += 1;
            }
        }
    }
    let mut out = vec![Check::new("enumeration equals the closed-form sum for m,n ≤ 5", bad.is_empty(), if bad.is_empty() { format!("{tables} models") } else { bad.join("; ") })];
    out.extend(verify::orbit_counts(5));
    out
}

fn oracle() -> Vec<Check> {
    let conv = [
        (Model::TypeIM1 { m: 1, n: 1 }, 3),
        (Model::TypeIM1 { m: 2, n: 1 }, 3),
        (Model::TypeIM1 { m: 1, n: 1 }, 5),
        (Model::TypeII { m: 2, n: 2 }, 3),
    ];
    let mut out = verify::oracle(&conv, 3, &[3, 5], 4);
    // The same coordinates at a second field size pin down the polynomial in q.
    let both = [3, 5].iter().all(|&q| convolution_check(Model::TypeII { m: 2, n: 1 }, q).is_ok_and(|r| r.passed));
    out.push(Check::new("typeII(2,1) convolution agrees at q = 3 and q = 5", both, ""));
    let delta = finite_fourier_check(1, 1, 3, 2).is_ok_and(|r| r.delta_to_constant == Some(true) && r.passed);
    out.push(Check::new("indicator of 0 transforms to the constant 1 (ψ = ζ²)", delta, ""));
    out
}

fn relations() -> Vec<Check> {
    let mut out = verify::relations(3, shared());
    let fq = (|| -> theta_lab::Result<bool> {
        let t = OrbitTable::new(Model::TypeIM1 { m: 1, n: 1 })?;
        let s = theta_lab::oracle::FiniteFieldSpace::new(t.model, 3)?;
        let orbits = theta_lab::oracle::enumerate_orbits_fq(&s)?;
        let total: u64 = orbits.orbits.iter().map(|o| o.size).sum();
        Ok(total == orbits.points && orbits.orbits.len() == t.len())
    })();
    out.push(Check::new("orbit sizes over F_3 sum to the point count", fq.unwrap_or(false), ""));
    out
}

#[test]
fn acceptance() {
    let f = shared();
    let outcomes = vec![
        criterion(1, "orbit counts", 1, orbit_counts),
        criterion(2, "KL example reproduction", 1, verify::kl_examples),
        criterion(3, "W-graphs and cells", 1, || verify::reference_graphs(f)),
        criterion(4, "Fourier tables", 30, || verify::fourier_tables(4, 3, f)),
        criterion(5, "KL transport under Φ", 30, || verify::transport(3, f, true)),
        criterion(6, "multiplicity combinatorics", 5, || verify::multiplicities(6)),
        criterion(7, "type II theorem, character form", 60, || verify::theta_type_ii(4, 4)),
        criterion(8, "type I theorem, dimension and character form", 120, || verify::theta_type_i(3, 2, 4)),
        criterion(9, "finite-field oracle", 600, oracle),
        criterion(10, "algebraic property suites", 120, relations),
    ];
    for o in &outcomes {
        o.print();
    }
    for o in &outcomes {
        if o.number == 5 {
            let [cprime, standard] = &o.checks[..] else { panic!("criterion 5 has two checks") };
            assert_eq!(cprime.status, Status::Pass, "C' transport: {}", cprime.detail);
            assert_eq!(standard.status, Status::Fail, "the standard-basis identity was expected to fail");
        } else {
            assert!(o.passed(), "criterion {} failed", o.number);
        }
    }
}
