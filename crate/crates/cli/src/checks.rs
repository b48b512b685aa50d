//! The `check` suites.

use hzeta::coxeter::{
    compose, coset_decomposition, descent_mask, descent_set, enumerate_permutations, length, longest_element,
    parabolic_length, ParabolicIndexSet, Permutation,
};
use hzeta::local_ring::{
    blocks_reassemble, check_associativity, check_commutativity_and_identity, check_pfaffian_no_points,
    check_structure_constant_blocks, check_unit_lemma, make_ring_spec, ResidueVector,
};
use hzeta::polyrat::{gaussian_multinomial, LaurentPoly};
use hzeta::zeta_formulas::{
    check_functional_equation, coset_partition_holds, leading_factor_identity_holds, shift_identity_check,
    zeta_inert, zeta_main, zeta_snf, zeta_totally_ramified, ExtensionShape, ShiftVariant,
};
use hzeta::Result;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::Suite;

/// Largest `n = ef` for the exhaustive Coxeter suite.
const COXETER_DEGREE_CAP: usize = hzeta::zeta_formulas::DEFAULT_DEGREE_CAP;

/// Random vectors per run of the unit lemma.
const UNIT_LEMMA_TRIALS: usize = 200;

pub struct CheckLine {
    name: String,
    passed: bool,
    detail: String,
}

pub struct SuiteReport {
    suite: &'static str,
    shape: ExtensionShape,
    lines: Vec<CheckLine>,
    extra: Option<Value>,
}

impl SuiteReport {
    fn new(suite: &'static str, shape: ExtensionShape) -> Self {
        SuiteReport { suite, shape, lines: Vec::new(), extra: None }
    }

    fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.lines.push(CheckLine { name: name.into(), passed, detail: detail.into() });
    }

    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.passed)
    }

    pub fn table(&self) -> String {
        let width = self.lines.iter().map(|l| l.name.len()).max().unwrap_or(0);
        let mut out = format!("suite {} (e={}, f={})\n", self.suite, self.shape.e(), self.shape.f());
        for l in &self.lines {
            let status = if l.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("{status}  {:width$}  {}\n", l.name, l.detail));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "suite": self.suite,
            "e": self.shape.e(),
            "f": self.shape.f(),
            "passed": self.passed(),
            "results": self.lines.iter().map(|l| json!({
                "name": l.name,
                "passed": l.passed,
                "detail": l.detail,
            })).collect::<Vec<_>>(),
        });
        if let Some(extra) = &self.extra {
            v["funeq"] = extra.clone();
        }
        v
    }
}

pub fn run_suite(suite: Suite, shape: ExtensionShape, p: u64, seed: u64) -> Result<SuiteReport> {
    match suite {
        Suite::Funeq => funeq(shape),
        Suite::Consistency => consistency(shape),
        Suite::Coxeter => coxeter(shape),
        Suite::Lemmas => lemmas(shape, p, seed),
    }
}

fn funeq(shape: ExtensionShape) -> Result<SuiteReport> {
    let r = check_functional_equation(shape)?;
    let mut report = SuiteReport::new("funeq", shape);
    report.push(
        "functional equation",
        r.holds,
        format!("sign {:+}, X-exponent {}, Y-exponent {}", r.sign, r.x_exponent, r.y_exponent),
    );
    report.extra = Some(serde_json::to_value(&r).expect("report serializes"));
    Ok(report)
}

fn consistency(shape: ExtensionShape) -> Result<SuiteReport> {
    let main = zeta_main(shape)?;
    let mut report = SuiteReport::new("consistency", shape);
    report.push("main = snf", main.rf_equal(&zeta_snf(shape)?), "sum over w(1) <= f");
    if shape.e() == 1 {
        report.push("main = inert", main.rf_equal(&zeta_inert(shape.n())?), "Gaussian multinomial form");
    }
    if shape.f() == 1 {
        report.push("main = totram", main.rf_equal(&zeta_totally_ramified(shape.n())?), "sum over S_{n-1}");
    }
    Ok(report)
}

fn coxeter(shape: ExtensionShape) -> Result<SuiteReport> {
    let n = shape.n();
    let mut report = SuiteReport::new("coxeter", shape);
    if n > COXETER_DEGREE_CAP {
        return Err(hzeta::Error::Capacity {
            what: "degree for the Coxeter suite",
            requested: n as u128,
            limit: COXETER_DEGREE_CAP as u128,
        });
    }
    let perms: Vec<Permutation> = enumerate_permutations(n)?.collect();
    let w0 = longest_element(n);
    let sets: Vec<ParabolicIndexSet> = ParabolicIndexSet::all_subsets(n)?.collect();

    let mut multinomial = true;
    let mut len_par = true;
    let mut splitting = true;
    for set in &sets {
        let lhs: LaurentPoly = perms
            .iter()
            .filter(|w| descent_mask(w) & !set.mask() == 0)
            .map(|w| LaurentPoly::monomial(0, length(w) as i64, 1))
            .sum();
        multinomial &= lhs == gaussian_multinomial(n, set)?;
        let top = parabolic_length(&w0, set)?;
        for w in &perms {
            len_par &= parabolic_length(&compose(&w0, w)?, set)? + parabolic_length(w, set)? == top;
            let (min_rep, stab) = coset_decomposition(w, set)?;
            splitting &= length(w) == length(&min_rep) + length(&stab);
        }
    }
    let mut des_w0 = true;
    for w in &perms {
        des_w0 &= descent_set(&compose(&w0, w)?) == descent_set(w).complement();
    }
    let scope = format!("n = {n}, {} permutations, {} index sets", perms.len(), sets.len());
    report.push("descent generating function", multinomial, scope.clone());
    report.push("parabolic length under w0", len_par, scope.clone());
    report.push("descents under w0", des_w0, scope.clone());
    report.push("coset length splitting", splitting, scope);
    Ok(report)
}

fn lemmas(shape: ExtensionShape, p: u64, seed: u64) -> Result<SuiteReport> {
    let (n, e, f) = (shape.n(), shape.e(), shape.f());
    let mut report = SuiteReport::new("lemmas", shape);

    let mut shift = true;
    let mut floored = true;
    for w in enumerate_permutations(n)? {
        for m in 0..=(n - w.apply(1)).min(n - 1) {
            shift &= shift_identity_check(&w, m, ShiftVariant::Plain)?;
        }
        if w.apply(1) <= f {
            for m in 0..=(n - f) / f {
                floored &= shift_identity_check(&w, m, ShiftVariant::Floored { f })?;
            }
        }
    }
    report.push("cycle shift", shift, "all admissible (w, m)");
    report.push("floored cycle shift", floored, "all admissible (w, m)");
    report.push("coset partition", coset_partition_holds(shape)?, "w = c^{mf} u uniquely");
    report.push("leading factor", leading_factor_identity_holds(shape), "1 - x_0 factorization");

    let spec = make_ring_spec(p, e, f, 3)?;
    report.push(
        "structure constants",
        check_commutativity_and_identity(&spec) && check_structure_constant_blocks(&spec) && check_associativity(&spec),
        format!("p = {p}"),
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut unit = true;
    let mut blocks = true;
    for _ in 0..UNIT_LEMMA_TRIALS {
        let v = ResidueVector::random_primitive(&spec, &mut rng);
        unit &= check_unit_lemma(&spec, &v)?;
        blocks &= blocks_reassemble(&spec, &v)?;
    }
    report.push("unit lemma", unit, format!("{UNIT_LEMMA_TRIALS} vectors, seed {seed}"));
    report.push("block reassembly", blocks, format!("{UNIT_LEMMA_TRIALS} vectors, seed {seed}"));
    if e == 1 {
        report.push("no rational points", check_pfaffian_no_points(&spec)?, format!("p^f = {}", p.pow(f as u32)));
    }
    Ok(report)
}
