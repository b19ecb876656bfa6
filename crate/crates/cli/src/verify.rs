//! The self-verification suite behind `cmhecke verify` and the acceptance test.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::time::{Duration, Instant};

use cmhecke_core::arith::{ideal_counts, kronecker, reduced_forms};
use cmhecke_core::characters::{conductor_exponents, eval_epsilon, simplest_characters};
use cmhecke_core::dimension::{classify, classify_simplest};
use cmhecke_core::lfun::{
    bound_report, central_derivative, eisenstein, g_odd, partial_l_ideal, theta, vanishing_order, IdealClass,
};
use cmhecke_core::rootnum::{numeric_root_check, root_number};
use cmhecke_core::{
    build_field, AlgebraicInteger, CharacterSpec, DimensionTag, EpsilonProfile, Error, FieldData, Mu12, NumericsConfig,
    Sign,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const RUNTIME_LIMIT: Duration = Duration::from_secs(60);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    /// Floor for every numeric tolerance; pinned tolerances below it are raised to it.
    pub tol: Option<f64>,
    pub max_terms: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self { tol: None, max_terms: NumericsConfig::default().max_terms }
    }
}

impl VerifyConfig {
    fn tol(&self, pinned: f64) -> f64 {
        self.tol.map_or(pinned, |t| t.max(pinned))
    }

    fn numerics(&self, target: f64) -> NumericsConfig {
        NumericsConfig { target_abs_error: target, max_terms: self.max_terms }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

pub struct Criterion {
    pub number: u8,
    pub name: &'static str,
    pub title: &'static str,
    run: fn(&VerifyConfig) -> Result<Check, Error>,
}

impl fmt::Debug for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Criterion({} {})", self.number, self.name)
    }
}

impl Criterion {
    pub fn run(&self, cfg: &VerifyConfig) -> Outcome {
        let start = Instant::now();
        let result = (self.run)(cfg);
        let elapsed = start.elapsed();
        match result {
            Ok(check) => check.finish(elapsed),
            Err(e) => Outcome { passed: false, detail: format!("error: {e}"), elapsed },
        }
    }
}

/// Collects failures; the summary is shown when everything passes.
#[derive(Default)]
struct Check {
    failures: Vec<String>,
    summary: String,
}

impl Check {
    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn within_runtime(&mut self, start: Instant) {
        let t = start.elapsed();
        self.expect(t <= RUNTIME_LIMIT, || {
            format!("runtime {:.1} s exceeds {} s", t.as_secs_f64(), RUNTIME_LIMIT.as_secs())
        });
    }

    fn finish(self, elapsed: Duration) -> Outcome {
        if self.failures.is_empty() {
            return Outcome { passed: true, detail: self.summary, elapsed };
        }
        let shown: Vec<&str> = self.failures.iter().take(6).map(String::as_str).collect();
        let more = self.failures.len().saturating_sub(shown.len());
        let mut detail = shown.join("; ");
        if more > 0 {
            detail.push_str(&format!("; and {more} more"));
        }
        Outcome { passed: false, detail, elapsed }
    }
}

pub const CRITERIA: [Criterion; 9] = [
    Criterion { number: 1, name: "vanishing", title: "ord = (1 - W)/2 for 4 || D <= 200", run: vanishing },
    Criterion { number: 2, name: "d20", title: "D = 20: W = -1 and Lambda'(1) > 0", run: d20 },
    Criterion { number: 3, name: "bounds", title: "explicit bounds on R, C1, C2 and Lambda'(1)", run: bounds },
    Criterion {
        number: 4,
        name: "lattice",
        title: "ideal-lattice sums = Eisenstein forms at s = 3",
        run: lattice_identities,
    },
    Criterion { number: 5, name: "theta", title: "theta functional equation and shape", run: theta_suite },
    Criterion { number: 6, name: "rootnum", title: "numeric root number = closed form", run: root_numbers },
    Criterion { number: 7, name: "characters", title: "epsilon character suite", run: characters },
    Criterion { number: 8, name: "dimension", title: "dimension verdicts", run: dimension },
    Criterion { number: 9, name: "arith", title: "ideal counts and class numbers", run: arith },
];

/// Criteria matching `only` (a name or a number), or all of them.
pub fn select(only: Option<&str>) -> Option<Vec<&'static Criterion>> {
    match only {
        None => Some(CRITERIA.iter().collect()),
        Some(key) => {
            let hit: Vec<_> = CRITERIA.iter().filter(|c| c.name == key || c.number.to_string() == key).collect();
            (!hit.is_empty()).then_some(hit)
        }
    }
}

pub fn format_line(c: &Criterion, o: &Outcome) -> String {
    let status = if o.passed { "PASS" } else { "FAIL" };
    format!(
        "criterion {} {:<10} {status} ({:.1} s) {}: {}",
        c.number,
        c.name,
        o.elapsed.as_secs_f64(),
        c.title,
        o.detail
    )
}

fn four_exact_fields(max: u64) -> Vec<FieldData> {
    (5..=max).filter(|d| d % 8 == 4).filter_map(|d| build_field(d).ok()).filter(|f| !f.is_special()).collect()
}

fn all_fields(max: u64) -> Vec<FieldData> {
    (3..=max).filter_map(|d| build_field(d).ok()).filter(|f| !f.is_special()).collect()
}

fn vanishing(cfg: &VerifyConfig) -> Result<Check, Error> {
    let start = Instant::now();
    let num = cfg.numerics(1e-10);
    let mut check = Check::default();
    let (mut plus, mut minus) = (0, 0);
    for field in four_exact_fields(200) {
        for spec in simplest_characters(&field)? {
            let r = vanishing_order(&spec, &num)?;
            let id = format!("D = {} ({})", field.disc, r.spec_id);
            check.expect(r.ord as i32 == (1 - r.w) / 2, || format!("{id}: ord {} with W = {}", r.ord, r.w));
            if r.w == 1 {
                plus += 1;
                check.expect(r.l1 > 1e-6, || format!("{id}: L(1) = {:e}", r.l1));
            } else {
                minus += 1;
                let lp = r.lambda_prime1().unwrap_or(f64::NAN);
                check.expect(lp > 1e-6, || format!("{id}: Lambda'(1) = {lp:e}"));
            }
        }
    }
    check.within_runtime(start);
    check.summary = format!("{plus} characters with W = +1, {minus} with W = -1");
    Ok(check)
}

fn d20(cfg: &VerifyConfig) -> Result<Check, Error> {
    let field = build_field(20)?;
    let mut check = Check::default();
    check.expect(kronecker(2, 5) == -1, || "kronecker(2, 5) != -1".into());
    let mut values = Vec::new();
    for spec in simplest_characters(&field)? {
        let w = root_number(&spec)?;
        check.expect(w == kronecker(2, 5), || format!("{}: W = {w}", spec.id()));
        let t = central_derivative(&spec, &cfg.numerics(1e-11))?;
        check.expect(t.lambda_prime1 > 1e-6, || format!("{}: Lambda'(1) = {:e}", spec.id(), t.lambda_prime1));
        values.push(t.lambda_prime1);
    }
    check.summary = format!("W = -1, Lambda'(1) = {:.12}", values[0]);
    Ok(check)
}

fn bounds(cfg: &VerifyConfig) -> Result<Check, Error> {
    let num = cfg.numerics(1e-10);
    let mut check = Check::default();
    let mut cases = 0;
    let mut by_label: BTreeMap<&str, Vec<String>> = BTreeMap::new();
    for field in four_exact_fields(200) {
        let spec = CharacterSpec::simplest(&field, Sign::Plus)?;
        if root_number(&spec)? != -1 {
            continue;
        }
        cases += 1;
        let t = central_derivative(&spec, &num)?;
        let b = bound_report(&field, &t);
        let entry = |label: &'static str, m: &mut BTreeMap<&str, Vec<String>>, s: String| {
            m.entry(label).or_default().push(s);
        };
        if !b.r_ok {
            entry("R lower bound", &mut by_label, format!("D = {}: R = {:.4} < {:.4}", field.disc, t.r, b.r_lower));
        }
        if !b.c1_ok {
            entry(
                "|C1| upper bound",
                &mut by_label,
                format!("D = {}: {:.3e} > {:.3e}", field.disc, t.c1.abs(), b.c1_limit),
            );
        }
        if !b.c2_ok {
            entry(
                "|C2| upper bound",
                &mut by_label,
                format!("D = {}: {:.3e} > {:.3e}", field.disc, t.c2.abs(), b.c2_limit),
            );
        }
        if b.final_ok == Some(false) {
            entry(
                "Lambda'(1)/4 lower bound",
                &mut by_label,
                format!("D = {}: {:.4} < {:.4}", field.disc, t.lambda_prime1 / 4.0, b.final_lower),
            );
        }
    }
    for (label, items) in by_label {
        check.expect(false, || format!("{label} fails in {} of {cases} cases ({})", items.len(), items.join(", ")));
    }
    check.summary = format!("{cases} characters with W = -1 within all bounds");
    Ok(check)
}

fn lattice_identities(cfg: &VerifyConfig) -> Result<Check, Error> {
    let start = Instant::now();
    let num = cfg.numerics(1e-9);
    let tol = cfg.tol(1e-7);
    let mut check = Check::default();
    let mut worst: f64 = 0.0;
    for disc in [20u64, 52, 68] {
        let field = build_field(disc)?;
        let sd = field.sqrt_disc();
        let g1 = eisenstein(1.0 / sd, 3.0, &field, &num)?;
        let g2 = eisenstein(2.0 / sd, 3.0, &field, &num)?;
        let godd = g_odd(0.5 / sd, 3.0, &field, &num)?;
        for spec in simplest_characters(&field)? {
            let w = f64::from(root_number(&spec)?);
            let pairs = [
                (IdealClass::Principal, partial_l_ideal(3.0, IdealClass::Principal, &spec, &num)?, 4.0 * g2 - 2.0 * g1),
                (IdealClass::P2, partial_l_ideal(3.0, IdealClass::P2, &spec, &num)?, 8.0 * w * godd),
            ];
            for (cls, lattice, form) in pairs {
                let err = (lattice - form).abs();
                worst = worst.max(err);
                check.expect(err < tol, || format!("D = {disc} ({}) {}: {lattice} vs {form}", spec.id(), cls.as_str()));
            }
        }
    }
    check.within_runtime(start);
    check.summary = format!("max deviation {worst:.2e}");
    Ok(check)
}

fn theta_suite(cfg: &VerifyConfig) -> Result<Check, Error> {
    let num = cfg.numerics(1e-15);
    let tol = cfg.tol(1e-12);
    let mut check = Check::default();
    let mut worst: f64 = 0.0;
    for disc in [20u64, 23, 52, 68, 84] {
        let f = build_field(disc)?;
        for t in [1.0 / 3.0, 0.5, 1.0, 2.0, 3.0] {
            let err = (theta(1.0 / t, &f, &num)? - t * theta(t, &f, &num)?).abs();
            worst = worst.max(err);
            check.expect(err < tol, || format!("D = {disc}, t = {t}: FE residual {err:e}"));
        }
        let h = f.h as f64;
        let mut last = f64::INFINITY;
        for k in 1..=8 {
            let gap = (theta(2f64.powi(k), &f, &num)? - h).abs();
            check.expect(gap <= last, || format!("D = {disc}: |theta - h| grows at t = 2^{k}"));
            last = gap;
        }
        check.expect(last < cfg.tol(1e-10), || format!("D = {disc}: theta(256) - h = {last:e}"));
        let diff = theta(0.5, &f, &num)? - theta(1.0, &f, &num)?;
        check.expect(diff > 0.0, || format!("D = {disc}: theta(1/2) - theta(1) = {diff:e}"));
    }
    check.summary = format!("max FE residual {worst:.2e}");
    Ok(check)
}

fn root_numbers(cfg: &VerifyConfig) -> Result<Check, Error> {
    let num = cfg.numerics(1e-8);
    let mut check = Check::default();
    let mut count = 0;
    for field in four_exact_fields(200) {
        for spec in simplest_characters(&field)? {
            let closed = root_number(&spec)?;
            let numeric = numeric_root_check(&spec, 3.0, &num)?;
            count += 1;
            check.expect(numeric == closed, || format!("D = {} ({}): {numeric} vs {closed}", field.disc, spec.id()));
        }
    }
    check.summary = format!("{count} characters agree");
    Ok(check)
}

fn coprime(field: &FieldData, b: &AlgebraicInteger) -> bool {
    b.norm() != 0 && cmhecke_core::arith::gcd(b.norm(), field.disc) == 1
}

fn random_unit_class(field: &FieldData, rng: &mut ChaCha8Rng) -> AlgebraicInteger {
    loop {
        let b = AlgebraicInteger::in_field(field, rng.random_range(-400..400), rng.random_range(-400..400));
        if coprime(field, &b) {
            return b;
        }
    }
}

const CONDUCTOR_TABLE: [(u64, &[(u64, u32)]); 5] = [
    (7, &[(7, 1)]),
    (20, &[(2, 3), (5, 1)]),
    (24, &[(2, 5), (3, 1)]),
    (40, &[(2, 5), (5, 1)]),
    (84, &[(2, 3), (3, 1), (7, 1)]),
];

fn characters(_cfg: &VerifyConfig) -> Result<Check, Error> {
    let mut check = Check::default();
    let mut fields = 0;
    for field in all_fields(300) {
        fields += 1;
        let disc = field.disc;
        let specs = simplest_characters(&field)?;
        let n_d = if disc % 2 == 1 { 1 } else { 2 };
        check.expect(specs.len() == n_d, || format!("D = {disc}: |E_Sim| = {}", specs.len()));
        let mut rng = ChaCha8Rng::seed_from_u64(disc);
        for spec in &specs {
            let id = spec.id();
            let minus_one = AlgebraicInteger::in_field(&field, -1, 0);
            for _ in 0..500 {
                let (b1, b2) = (random_unit_class(&field, &mut rng), random_unit_class(&field, &mut rng));
                let (e1, e2) = (eval_epsilon(spec, &b1)?, eval_epsilon(spec, &b2)?);
                check.expect(eval_epsilon(spec, &(b1 * minus_one))? == e1 * Mu12::NEG_ONE, || {
                    format!("D = {disc} ({id}): oddness at {b1:?}")
                });
                check.expect(eval_epsilon(spec, &(b1 * b2))? == e1 * e2, || {
                    format!("D = {disc} ({id}): multiplicativity at {b1:?}, {b2:?}")
                });
            }
            for n in (1..=1000i64).filter(|&n| cmhecke_core::arith::gcd(n as u64, disc) == 1) {
                let v = eval_epsilon(spec, &AlgebraicInteger::in_field(&field, n, 0))?;
                check.expect(v == Mu12::from_sign(kronecker(-(disc as i64), n)), || {
                    format!("D = {disc} ({id}): epsilon({n}) = {v:?}")
                });
            }
        }
    }
    for (disc, expect) in CONDUCTOR_TABLE {
        for spec in simplest_characters(&build_field(disc)?)? {
            let got = conductor_exponents(&spec);
            check.expect(got == expect.iter().copied().collect(), || format!("D = {disc}: conductor {got:?}"));
        }
    }
    check.summary = format!("{fields} discriminants, 500 random pairs per character");
    Ok(check)
}

/// Expected verdict, transcribed directly from the case table.
fn case_table(order: u32, disc: u64, v2: Mu12, v3: Mu12) -> DimensionTag {
    let bound = match (disc % 2 == 0, disc % 3 == 0) {
        (false, false) => 2,
        (true, false) => 4,
        (false, true) => 6,
        (true, true) => 12,
    };
    if bound % order != 0 {
        return DimensionTag::ExceedsHUnknown;
    }
    let equals = match order {
        2 => true,
        4 => disc % 4 == 0 && disc != 8 && v2.order() == 4,
        6 => disc % 3 == 0 && matches!(v3.order(), 2 | 6),
        12 => disc % 12 == 0 && matches!(v2.order(), 4 | 12),
        _ => unreachable!(),
    };
    if equals {
        DimensionTag::EqualsH
    } else {
        DimensionTag::TwiceH
    }
}

fn dimension(_cfg: &VerifyConfig) -> Result<Check, Error> {
    let mut check = Check::default();
    let mut seen = BTreeSet::new();
    let mut profiles = 0;
    for disc in [7u64, 8, 15, 20, 24, 39, 40, 84, 120, 195] {
        for order in [2u32, 4, 6, 12] {
            for k2 in 0..12 {
                for k3 in 0..12 {
                    let (v2, v3) = (Mu12::new(k2), Mu12::new(k3));
                    let profile =
                        EpsilonProfile { order, disc, val_2: Some(v2), val_3: Some(v3), image_exponent: order };
                    let verdict = classify(&profile, 4)?;
                    let expect = case_table(order, disc, v2, v3);
                    profiles += 1;
                    check.expect(verdict.tag == expect, || format!("{profile:?}: {} vs {expect}", verdict.tag));
                    check.expect(verdict.scalar_restriction == (order == 2), || format!("{profile:?}: scalar flag"));
                    seen.insert((order, verdict.tag.as_str()));
                }
            }
        }
    }
    let tags = [DimensionTag::EqualsH, DimensionTag::TwiceH, DimensionTag::ExceedsHUnknown];
    for order in [4u32, 6, 12] {
        for tag in tags {
            check
                .expect(seen.contains(&(order, tag.as_str())), || format!("branch order {order} -> {tag} not reached"));
        }
    }
    check.expect(seen.contains(&(2, "EQUALS_H")), || "branch order 2 not reached".into());

    for field in all_fields(300) {
        for spec in simplest_characters(&field)? {
            let tag = classify_simplest(&spec)?.tag;
            check.expect(tag == DimensionTag::EqualsH, || format!("D = {} ({}): {tag}", field.disc, spec.id()));
        }
    }
    for (disc, expect) in [(20u64, DimensionTag::TwiceH), (68, DimensionTag::EqualsH)] {
        let field = build_field(disc)?;
        for sign in [Sign::Plus, Sign::Minus] {
            for twist in [-1i8, 1] {
                let tag = classify_simplest(&CharacterSpec::with_two_adic(&field, sign, twist)?)?.tag;
                check.expect(tag == expect, || format!("D = {disc} twisted by phi^{twist}: {tag}, expected {expect}"));
            }
        }
    }
    check.summary = format!("{profiles} synthetic profiles, all branches reached; twist contrast D = 20 vs 68 holds");
    Ok(check)
}

fn arith(_cfg: &VerifyConfig) -> Result<Check, Error> {
    const N: u64 = 10_000;
    let mut check = Check::default();
    for disc in [4u64, 20, 23, 84] {
        let field = build_field(disc)?;
        let forms = reduced_forms(disc)?;
        let sieve = ideal_counts(N as usize, disc)?;
        let w = u64::from(field.unit_count);
        for n in 1..=N {
            let reps: u64 = forms.iter().map(|f| f.representation_count(n)).sum();
            check.expect(reps == w * sieve[n as usize], || {
                format!("D = {disc}, n = {n}: {} ideals, {reps} representations", sieve[n as usize])
            });
        }
    }
    for (disc, h) in [(20u64, 2usize), (23, 3), (4, 1)] {
        let got = reduced_forms(disc)?.len();
        check.expect(got == h, || format!("h({disc}) = {got}, expected {h}"));
    }
    check.summary = format!("n <= {N} for D in {{4, 20, 23, 84}}; h(20) = 2, h(23) = 3, h(4) = 1");
    Ok(check)
}
