//! The named invariant suite behind the command-line verifier: every
//! structural identity the library relies on, re-derived from first
//! principles against a concrete instance. Checks that need an enumeration
//! beyond their budget report a skip rather than a guess; a failure of any
//! check on a valid instance indicates a bug, and its name says which
//! identity broke.

use std::collections::BTreeSet;

use num::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::duality::{self, BlockerVector, LpValue};
use crate::error::{Error, Result};
use crate::matroid::{bits, Caps, Mask, Matroid, RankTable};
use crate::modulus::{self, total_usage, Density, Mod2Result};
use crate::partition::{self, Deflation, ScanExtremum};
use crate::{pgrad, rat, rint, wolfe, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Debug, Clone)]
pub struct Check {
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
}

impl Check {
    /// One-line rendering used by the verifier output.
    pub fn line(&self) -> String {
        match self.status {
            Status::Pass if self.detail.is_empty() => format!("PASS {}", self.name),
            Status::Pass => format!("PASS {} ({})", self.name, self.detail),
            Status::Skip => format!("SKIP {} ({})", self.name, self.detail),
            Status::Fail => format!("FAIL {}: {}", self.name, self.detail),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks
            .iter()
            .filter(|c| c.status == Status::Fail)
            .collect()
    }
}

enum Verdict {
    Pass(String),
    Fail(String),
    Skip(String),
}

fn pass() -> Result<Verdict> {
    Ok(Verdict::Pass(String::new()))
}

fn pass_with(detail: String) -> Result<Verdict> {
    Ok(Verdict::Pass(detail))
}

fn fail(detail: String) -> Result<Verdict> {
    Ok(Verdict::Fail(detail))
}

fn skip(detail: &str) -> Result<Verdict> {
    Ok(Verdict::Skip(detail.into()))
}

/// Shared artifacts computed once per instance.
struct Ctx<'a> {
    m: &'a Matroid,
    caps: &'a Caps,
    table: RankTable,
    bases: Vec<Mask>,
    res: Mod2Result,
    defl: Deflation,
    strength: ScanExtremum,
    arbor: ScanExtremum,
    theta: Rat,
    packing: LpValue,
    covering: LpValue,
    blocker: Vec<BlockerVector>,
}

/// Run the whole suite. Errors from building the shared artifacts (parse- or
/// budget-level trouble) propagate; per-check budget misses become skips.
pub fn run(m: &Matroid, caps: &Caps) -> Result<SuiteReport> {
    let table = RankTable::build(m, caps)?;
    let bases = m.enumerate_bases(caps)?;
    let res = modulus::mod2(m, caps)?;
    let defl = partition::deflate(m, caps)?;
    let strength = partition::strength(&table)?;
    let arbor = partition::arboricity(&table)?;
    let theta = partition::theta(&table)?;
    let packing = duality::packing_value(m, caps)?;
    let covering = duality::covering_value(m, caps)?;
    let blocker = duality::fulkerson_blocker(m, caps)?;
    let ctx = Ctx {
        m,
        caps,
        table,
        bases,
        res,
        defl,
        strength,
        arbor,
        theta,
        packing,
        covering,
        blocker,
    };

    let checks = vec![
        guard("rank-axioms", || ctx.rank_axioms()),
        guard("base-exchange", || ctx.base_exchange()),
        guard("circuit-swap-characterization", || ctx.circuit_swap()),
        guard("dual-rank-formula", || ctx.dual_rank_formula()),
        guard("minor-base-concatenation", || ctx.minor_concatenation()),
        guard("connectivity-circuit-criterion", || ctx.connectivity_circuits()),
        guard("greedy-admissibility-oracle", || ctx.greedy_admissibility()),
        guard("optimality-system", || ctx.optimality_system()),
        guard("complementary-slackness", || ctx.complementary_slackness()),
        guard("quadratic-oracle-agreement", || ctx.quadratic_oracle()),
        guard("numeric-exact-agreement", || ctx.numeric_exact()),
        guard("fair-base-circuit-maximum", || ctx.fair_circuit_maximum()),
        guard("energy-lower-bound", || ctx.energy_lower_bound()),
        guard("homogeneity-criterion", || ctx.homogeneity_criterion()),
        guard("lexicographic-optimality", || ctx.lexicographic_optimality()),
        guard("usage-reciprocal-bindings", || ctx.usage_reciprocals()),
        guard("extreme-level-sets", || ctx.extreme_level_sets()),
        guard("homogeneity-equivalences", || ctx.homogeneity_equivalences()),
        guard("minor-density-monotonicity", || ctx.minor_monotonicity()),
        guard("density-chain", || ctx.density_chain()),
        guard("packing-equals-strength", || ctx.packing_strength()),
        guard("covering-equals-arboricity", || ctx.covering_arboricity()),
        guard("critical-level-chain", || ctx.critical_chain()),
        guard("deflation-partition", || ctx.deflation_partition()),
        guard("usage-dominant-membership", || ctx.dominant_membership()),
        guard("blocker-family-validity", || ctx.blocker_validity()),
        guard("blocker-vertex-completeness", || ctx.blocker_completeness()),
        guard("blocker-energy-reciprocal", || ctx.blocker_energy()),
        guard("packing-saturation-implies-homogeneous", || {
            ctx.packing_saturation()
        }),
        guard("dual-usage-identity", || ctx.dual_usage_identity()),
        guard("dual-strength-arboricity-reciprocals", || {
            ctx.dual_reciprocals()
        }),
        guard("serial-split-rule", || ctx.serial_split_rule()),
        guard("p-modulus-gradient-agreement", || ctx.p_modulus_gradient()),
        guard("weighted-unit-modulus-strength", || ctx.weighted_strength()),
    ];
    Ok(SuiteReport { checks })
}

fn guard(name: &'static str, f: impl FnOnce() -> Result<Verdict>) -> Check {
    let (status, detail) = match f() {
        Ok(Verdict::Pass(d)) => (Status::Pass, d),
        Ok(Verdict::Skip(d)) => (Status::Skip, d),
        Ok(Verdict::Fail(d)) => (Status::Fail, d),
        Err(Error::Resource(msg)) => (Status::Skip, format!("budget: {msg}")),
        Err(e) => (Status::Fail, e.to_string()),
    };
    Check { name, status, detail }
}

impl Ctx<'_> {
    fn n(&self) -> usize {
        self.table.n()
    }

    fn full(&self) -> Mask {
        self.table.full_mask()
    }

    fn rank_of(&self) -> u64 {
        self.table.full_rank()
    }

    fn is_base_mask(&self, x: Mask) -> bool {
        x.count_ones() as u64 == self.rank_of() && self.table.rank(x) == self.rank_of()
    }

    fn eta_constant(&self) -> bool {
        self.res.eta.min() == self.res.eta.max()
    }

    fn set_names(&self, x: Mask) -> String {
        format!("{{{}}}", self.m.ground().labels_of(x).join(","))
    }

    /// Rank bounds, monotonicity, and submodularity over all subset pairs.
    fn rank_axioms(&self) -> Result<Verdict> {
        let n = self.n();
        if n > 12 {
            return skip("ground set larger than 12");
        }
        let full = self.full();
        for x in 0..=full {
            if self.table.rank(x) > x.count_ones() as u64 {
                return fail(format!("r(X) > |X| at X={}", self.set_names(x)));
            }
            for e in bits(full & !x) {
                if self.table.rank(x | (1 << e)) < self.table.rank(x) {
                    return fail(format!(
                        "rank drops when adding {} to {}",
                        self.m.ground().label(e),
                        self.set_names(x)
                    ));
                }
            }
        }
        for x in 0..=full {
            let rx = self.table.rank(x);
            for y in 0..=full {
                if rx + self.table.rank(y)
                    < self.table.rank(x | y) + self.table.rank(x & y)
                {
                    return fail(format!(
                        "submodularity fails at X={}, Y={}",
                        self.set_names(x),
                        self.set_names(y)
                    ));
                }
            }
        }
        pass()
    }

    /// For every base pair and every x in B1 − B2, some y in B2 − B1 gives a
    /// base B1 − x + y.
    fn base_exchange(&self) -> Result<Verdict> {
        let nb = self.bases.len();
        if nb * nb > 40_000 {
            return skip("more than 40000 base pairs");
        }
        for &b1 in &self.bases {
            for &b2 in &self.bases {
                for x in bits(b1 & !b2) {
                    let found = bits(b2 & !b1)
                        .any(|y| self.is_base_mask((b1 & !(1 << x)) | (1 << y)));
                    if !found {
                        return fail(format!(
                            "no exchange for {} from {} into {}",
                            self.m.ground().label(x),
                            self.set_names(b1),
                            self.set_names(b2)
                        ));
                    }
                }
            }
        }
        pass_with(format!("{nb} bases"))
    }

    /// B − y + x is a base exactly when y lies in the fundamental circuit
    /// C(x, B).
    fn circuit_swap(&self) -> Result<Verdict> {
        if self.bases.len() > 2000 {
            return skip("more than 2000 bases");
        }
        let full = self.full();
        for &b in &self.bases {
            for x in bits(full & !b) {
                let c = self.m.fundamental_circuit(b, x)?;
                for y in bits(b) {
                    let swapped = (b & !(1 << y)) | (1 << x);
                    if self.is_base_mask(swapped) != (c & (1 << y) != 0) {
                        return fail(format!(
                            "swap of {} for {} in {} disagrees with the circuit",
                            self.m.ground().label(x),
                            self.m.ground().label(y),
                            self.set_names(b)
                        ));
                    }
                }
            }
        }
        pass()
    }

    /// Dual-backend rank equals |X| − r(E) + r(E−X) on every subset.
    fn dual_rank_formula(&self) -> Result<Verdict> {
        if self.n() > 12 {
            return skip("ground set larger than 12");
        }
        let full = self.full();
        let dual = self.m.dual();
        for x in 0..=full {
            let expect = x.count_ones() as u64 + self.table.rank(full & !x);
            if dual.rank(x) + self.rank_of() != expect {
                return fail(format!("corank formula fails at {}", self.set_names(x)));
            }
        }
        pass()
    }

    /// Bases with |B − X| = r(E−X) are exactly the concatenations of a base
    /// of the restriction to E−X with a base of the contraction onto X.
    fn minor_concatenation(&self) -> Result<Verdict> {
        let n = self.n();
        if n > 10 {
            return skip("ground set larger than 10");
        }
        let full = self.full();
        let lift = |b: Mask, coords: &[usize]| -> Mask {
            bits(b).fold(0u64, |acc, i| acc | (1 << coords[i]))
        };
        for x in 1..full {
            let co = full & !x;
            let left = self.m.delete(x)?;
            let right = self.m.contract(co)?;
            let left_coords: Vec<usize> = bits(co).collect();
            let right_coords: Vec<usize> = bits(x).collect();
            let mut expected = BTreeSet::new();
            for &b1 in &left.enumerate_bases(self.caps)? {
                for &b2 in &right.enumerate_bases(self.caps)? {
                    expected.insert(lift(b1, &left_coords) | lift(b2, &right_coords));
                }
            }
            let rco = self.table.rank(co);
            let actual: BTreeSet<Mask> = self
                .bases
                .iter()
                .copied()
                .filter(|b| (b & co).count_ones() as u64 == rco)
                .collect();
            if expected != actual {
                return fail(format!(
                    "concatenation mismatch at X={}",
                    self.set_names(x)
                ));
            }
        }
        pass()
    }

    /// The separator definition of connectivity agrees with the common-
    /// circuit characterization.
    fn connectivity_circuits(&self) -> Result<Verdict> {
        let n = self.n();
        if n > 12 {
            return skip("ground set larger than 12");
        }
        let by_separators = self.m.is_connected(self.caps)?;
        let circuits = self.m.circuits(self.caps)?;
        let mut by_circuits = true;
        'outer: for i in 0..n {
            for j in (i + 1)..n {
                let pair = (1u64 << i) | (1 << j);
                if !circuits.iter().any(|&c| c & pair == pair) {
                    by_circuits = false;
                    break 'outer;
                }
            }
        }
        if by_separators != by_circuits {
            return fail(format!(
                "separator criterion says connected={by_separators}, \
                 common-circuit criterion says {by_circuits}"
            ));
        }
        pass()
    }

    /// The greedy minimum-usage base agrees with exhaustive minimization
    /// over all bases, for a battery of random densities.
    fn greedy_admissibility(&self) -> Result<Verdict> {
        let n = self.n();
        let mut rng = ChaCha8Rng::seed_from_u64(2024 + n as u64);
        for _ in 0..200 {
            let rho = Density(
                (0..n)
                    .map(|_| rat(rng.gen_range(0..=6), rng.gen_range(1..=4)))
                    .collect(),
            );
            let chk = modulus::is_admissible(self.m, &rho)?;
            let brute = self
                .bases
                .iter()
                .map(|&b| total_usage(&rho, b))
                .min()
                .expect("at least one base");
            if chk.min_usage != brute {
                return fail(format!(
                    "greedy minimum usage {} vs exhaustive {}",
                    chk.min_usage, brute
                ));
            }
            if chk.ok != (brute >= Rat::one()) {
                return fail("admissibility verdict disagrees".into());
            }
        }
        pass_with("200 random densities".into())
    }

    /// The full optimality system of the computed modulus result.
    fn optimality_system(&self) -> Result<Verdict> {
        if !duality::verify_modulus_result(self.m, &self.res, self.caps)? {
            return fail("modulus result violates its optimality system".into());
        }
        self.res.pmf.validate()?;
        if self.res.pmf.bases.len() > self.n() + 1 {
            return fail(format!(
                "pmf support {} exceeds |E|+1",
                self.res.pmf.bases.len()
            ));
        }
        pass()
    }

    /// ρ* is admissible and every support base is exactly tight.
    fn complementary_slackness(&self) -> Result<Verdict> {
        let one = Rat::one();
        for &b in &self.bases {
            if total_usage(&self.res.rho, b) < one {
                return fail(format!("ρ* misses base {}", self.set_names(b)));
            }
        }
        for &b in &self.res.fair_support {
            if total_usage(&self.res.rho, b) != one {
                return fail(format!(
                    "support base {} is not tight under ρ*",
                    self.set_names(b)
                ));
            }
        }
        pass()
    }

    /// The exact support-search quadratic program reproduces η* and the
    /// minimum expected overlap.
    fn quadratic_oracle(&self) -> Result<Verdict> {
        if self.bases.len() > 20 {
            return skip("more than 20 bases");
        }
        let (_, eta, meo) = modulus::brute_force_eta(self.m, self.caps)?;
        if eta != self.res.eta || meo != self.res.meo {
            return fail("support-search QP disagrees with the deflation path".into());
        }
        pass()
    }

    /// The floating-point minimum-norm solver lands on the exact η*.
    fn numeric_exact(&self) -> Result<Verdict> {
        if self.res.wolfe_max_err > modulus::NUMERIC_TOL {
            return fail(format!(
                "minimum-norm iterate off by {:.3e}",
                self.res.wolfe_max_err
            ));
        }
        if self.res.wolfe_gap > wolfe::GAP_TOL {
            return fail(format!("duality gap {:.3e}", self.res.wolfe_gap));
        }
        pass_with(format!("max error {:.2e}", self.res.wolfe_max_err))
    }

    /// For a fair base B and x outside it, η*(x) is the maximum of η* over
    /// the fundamental circuit C(x, B).
    fn fair_circuit_maximum(&self) -> Result<Verdict> {
        let full = self.full();
        for &b in &self.res.fair_support {
            for x in bits(full & !b) {
                let c = self.m.fundamental_circuit(b, x)?;
                let max = bits(c)
                    .map(|e| &self.res.eta.0[e])
                    .max()
                    .expect("circuit is nonempty");
                if *max != self.res.eta.0[x] {
                    return fail(format!(
                        "η*({}) differs from the circuit maximum in {}",
                        self.m.ground().label(x),
                        self.set_names(b)
                    ));
                }
            }
        }
        pass()
    }

    /// E₂(η*) ≥ r(E)²/|E| with equality exactly in the homogeneous case.
    fn energy_lower_bound(&self) -> Result<Verdict> {
        let r = self.rank_of() as i64;
        let bound = rat(r * r, self.n() as i64);
        if self.res.meo < bound {
            return fail(format!("overlap {} below r²/n = {}", self.res.meo, bound));
        }
        if (self.res.meo == bound) != self.eta_constant() {
            return fail("equality case of the energy bound mischaracterized".into());
        }
        pass()
    }

    /// The constant density r/n is dominant-feasible exactly when η* is
    /// constant.
    fn homogeneity_criterion(&self) -> Result<Verdict> {
        let hom = Density::constant(self.n(), rat(self.rank_of() as i64, self.n() as i64));
        let (inside, _) = duality::dominant_membership(&self.table, &hom)?;
        if inside != self.eta_constant() {
            return fail(format!(
                "homogeneous density membership {} vs constant η* {}",
                inside,
                self.eta_constant()
            ));
        }
        pass()
    }

    /// The increasingly-sorted η* lexicographically dominates the sorted
    /// usage vector of every sampled pmf.
    fn lexicographic_optimality(&self) -> Result<Verdict> {
        let n = self.n();
        let mut t_star = self.res.eta.0.clone();
        t_star.sort();
        let mut rng = ChaCha8Rng::seed_from_u64(4096 + n as u64);
        for _ in 0..500 {
            let mut w: Vec<Rat> = (0..self.bases.len())
                .map(|_| rint(rng.gen_range(0..=6)))
                .collect();
            if w.iter().all(|v| v.is_zero()) {
                w[0] = Rat::one();
            }
            let tot: Rat = w.iter().sum();
            let mut eta = vec![Rat::zero(); n];
            for (&b, wb) in self.bases.iter().zip(&w) {
                for e in bits(b) {
                    eta[e] += wb;
                }
            }
            for v in &mut eta {
                *v /= &tot;
            }
            eta.sort();
            if t_star < eta {
                return fail("a sampled usage vector lexicographically beats η*".into());
            }
        }
        pass_with("500 random pmfs".into())
    }

    /// Strength is the reciprocal of the largest η* entry; fractional
    /// arboricity is the reciprocal of the smallest.
    fn usage_reciprocals(&self) -> Result<Verdict> {
        let one = Rat::one();
        if self.strength.value != &one / self.res.eta.max() {
            return fail(format!(
                "strength {} is not 1/max η* = 1/{}",
                self.strength.value,
                self.res.eta.max()
            ));
        }
        if self.arbor.value != &one / self.res.eta.min() {
            return fail(format!(
                "arboricity {} is not 1/min η* = 1/{}",
                self.arbor.value,
                self.res.eta.min()
            ));
        }
        pass()
    }

    /// The top level set of η* is a Beurling set with closed complement; the
    /// bottom level set is closed and has a Beurling complement.
    fn extreme_level_sets(&self) -> Result<Verdict> {
        let full = self.full();
        let max = self.res.eta.max().clone();
        let min = self.res.eta.min().clone();
        let emax: Mask = bits(full)
            .filter(|&i| self.res.eta.0[i] == max)
            .fold(0, |acc, i| acc | (1 << i));
        let emin: Mask = bits(full)
            .filter(|&i| self.res.eta.0[i] == min)
            .fold(0, |acc, i| acc | (1 << i));
        if !partition::is_beurling(&self.table, emax, &self.res.eta, &self.res.fair_support)?
            .is_beurling
        {
            return fail("top level set is not Beurling".into());
        }
        if !self.m.is_complement_closed(emax) {
            return fail("complement of the top level set is not closed".into());
        }
        if self.m.closure(emin) != emin {
            return fail("bottom level set is not closed".into());
        }
        if !partition::is_beurling(&self.table, full & !emin, &self.res.eta, &self.res.fair_support)?
            .is_beurling
        {
            return fail("complement of the bottom level set is not Beurling".into());
        }
        pass()
    }

    /// η* constant, S = θ, D = θ, and S = D are all equivalent.
    fn homogeneity_equivalences(&self) -> Result<Verdict> {
        let c = self.eta_constant();
        let claims = [
            ("S = θ", self.strength.value == self.theta),
            ("D = θ", self.arbor.value == self.theta),
            ("S = D", self.strength.value == self.arbor.value),
        ];
        for (label, truth) in claims {
            if truth != c {
                return fail(format!(
                    "{label} is {truth} but η* constant is {c}"
                ));
            }
        }
        pass()
    }

    /// Strength never drops under contraction (when something survives);
    /// arboricity never rises under restriction.
    fn minor_monotonicity(&self) -> Result<Verdict> {
        let n = self.n();
        if n > 10 {
            return skip("ground set larger than 10");
        }
        let full = self.full();
        for x in 1..=full {
            let co = full & !x;
            if co != 0 && self.m.closure(co) != full {
                let minor = self.m.contract(co)?;
                let tm = RankTable::build(&minor, self.caps)?;
                let s2 = partition::strength(&tm)?;
                if self.strength.value > s2.value {
                    return fail(format!(
                        "strength rises from {} to {} contracting onto {}",
                        s2.value,
                        self.strength.value,
                        self.set_names(x)
                    ));
                }
            }
            if x != full {
                let rest = self.m.restrict(x)?;
                let tr = RankTable::build(&rest, self.caps)?;
                let d2 = partition::arboricity(&tr)?;
                if self.arbor.value < d2.value {
                    return fail(format!(
                        "arboricity rises from {} to {} restricting to {}",
                        self.arbor.value,
                        d2.value,
                        self.set_names(x)
                    ));
                }
            }
        }
        pass()
    }

    /// S ≤ τ ≤ θ ≤ υ ≤ D.
    fn density_chain(&self) -> Result<Verdict> {
        let chain = [
            ("S", &self.strength.value),
            ("τ", &self.packing.value),
            ("θ", &self.theta),
            ("υ", &self.covering.value),
            ("D", &self.arbor.value),
        ];
        for w in chain.windows(2) {
            if w[0].1 > w[1].1 {
                return fail(format!(
                    "{} = {} exceeds {} = {}",
                    w[0].0, w[0].1, w[1].0, w[1].1
                ));
            }
        }
        pass()
    }

    /// The base packing LP value equals the strength.
    fn packing_strength(&self) -> Result<Verdict> {
        if self.packing.value != self.strength.value {
            return fail(format!(
                "packing {} vs strength {}",
                self.packing.value, self.strength.value
            ));
        }
        pass_with(format!("value {}", self.packing.value))
    }

    /// The base covering LP value equals the fractional arboricity.
    fn covering_arboricity(&self) -> Result<Verdict> {
        if self.covering.value != self.arbor.value {
            return fail(format!(
                "covering {} vs arboricity {}",
                self.covering.value, self.arbor.value
            ));
        }
        pass_with(format!("value {}", self.covering.value))
    }

    /// The critical-value chain exists, is verified exactly critical, and
    /// its values are the distinct entries of η*.
    fn critical_chain(&self) -> Result<Verdict> {
        let chain = partition::critical_values(self.m, &self.table, &self.defl, self.caps)?;
        let distinct: BTreeSet<Rat> = self.defl.eta.0.iter().cloned().collect();
        let expect: Vec<Rat> = distinct.into_iter().collect();
        if chain.critical != expect {
            return fail("critical values differ from the distinct η* entries".into());
        }
        pass_with(format!("{} critical values", chain.critical.len()))
    }

    /// Deflation blocks partition E, their ranks sum to r(E), and their
    /// densities increase strictly.
    fn deflation_partition(&self) -> Result<Verdict> {
        let mut seen: Mask = 0;
        let mut rank_sum = 0u64;
        let mut prev: Option<Rat> = None;
        for b in &self.defl.blocks {
            if b.mask & seen != 0 {
                return fail("deflation blocks overlap".into());
            }
            seen |= b.mask;
            rank_sum += b.rank;
            if b.eta != rat(b.rank as i64, b.size as i64) {
                return fail("block density is not rank/size".into());
            }
            if let Some(p) = &prev {
                if &b.eta <= p {
                    return fail("block densities are not strictly increasing".into());
                }
            }
            prev = Some(b.eta.clone());
        }
        if seen != self.full() || rank_sum != self.rank_of() {
            return fail("deflation blocks do not partition the ground set".into());
        }
        if self.defl.eta != self.res.eta {
            return fail("deflation η* differs from the modulus result".into());
        }
        pass_with(format!("{} blocks", self.defl.blocks.len()))
    }

    /// η* satisfies every dominant inequality η(X) ≥ r(E) − r(E−X).
    fn dominant_membership(&self) -> Result<Verdict> {
        let (inside, witness) = duality::dominant_membership(&self.table, &self.res.eta)?;
        if !inside {
            return fail(format!(
                "η* violates the dominant inequality at {}",
                self.set_names(witness.unwrap_or(0))
            ));
        }
        pass()
    }

    /// Every blocker-family member is nonempty, complement-closed, has a
    /// connected contraction, a positive denominator, and an admissible
    /// extreme vector.
    fn blocker_validity(&self) -> Result<Verdict> {
        let full = self.full();
        for b in &self.blocker {
            if b.set == 0 {
                return fail("empty blocker set".into());
            }
            if !self.m.is_complement_closed(b.set) {
                return fail(format!("{} is not complement-closed", self.set_names(b.set)));
            }
            if !self.table.contraction_is_connected(b.set) {
                return fail(format!(
                    "contraction onto {} is disconnected",
                    self.set_names(b.set)
                ));
            }
            let denom = self.rank_of() - self.table.rank(full & !b.set);
            if denom != b.denom || denom == 0 {
                return fail(format!("bad denominator for {}", self.set_names(b.set)));
            }
            if !modulus::is_admissible(self.m, &b.vector)?.ok {
                return fail(format!(
                    "blocker vector of {} is not admissible",
                    self.set_names(b.set)
                ));
            }
            if !duality::verify_extremity(self.m, &b.vector, self.caps)? {
                return fail(format!(
                    "blocker vector of {} is not extreme",
                    self.set_names(b.set)
                ));
            }
        }
        pass_with(format!("{} members", self.blocker.len()))
    }

    /// Exhaustive vertex enumeration of the admissible polyhedron returns
    /// exactly the blocker vectors.
    fn blocker_completeness(&self) -> Result<Verdict> {
        if self.n() > 8 {
            return skip("ground set larger than 8");
        }
        let vertices = duality::admissible_extreme_points(self.m, self.caps)?;
        let from_blocker: BTreeSet<Vec<Rat>> = self
            .blocker
            .iter()
            .map(|b| b.vector.0.clone())
            .collect();
        let enumerated: BTreeSet<Vec<Rat>> =
            vertices.into_iter().map(|d| d.0).collect();
        if from_blocker != enumerated {
            return fail(format!(
                "blocker family has {} vectors, vertex enumeration {}",
                from_blocker.len(),
                enumerated.len()
            ));
        }
        pass_with(format!("{} vertices", from_blocker.len()))
    }

    /// The reciprocal law: Mod₂ times the minimum energy over the blocker
    /// polyhedron is 1, attained at η*.
    fn blocker_energy(&self) -> Result<Verdict> {
        let rows: Vec<Density> = self.blocker.iter().map(|b| b.vector.clone()).collect();
        let (energy, minimizer) = duality::min_energy_over_rows(&rows, self.n())?;
        if &self.res.mod2 * &energy != Rat::one() {
            return fail(format!(
                "Mod₂ · blocker energy = {} ≠ 1",
                &self.res.mod2 * &energy
            ));
        }
        if minimizer != self.res.eta {
            return fail("blocker energy minimizer is not η*".into());
        }
        pass()
    }

    /// If the packing value or the covering value meets θ, the instance is
    /// homogeneous.
    fn packing_saturation(&self) -> Result<Verdict> {
        let hyp = self.packing.value == self.theta || self.covering.value == self.theta;
        if hyp && !self.eta_constant() {
            return fail("τ or υ meets θ on an inhomogeneous instance".into());
        }
        if hyp {
            pass()
        } else {
            pass_with("hypothesis vacuous here".into())
        }
    }

    /// η* of the matroid plus η* of its dual is the all-ones vector.
    fn dual_usage_identity(&self) -> Result<Verdict> {
        if self.rank_of() == self.n() as u64 {
            return skip("rank equals ground size; the dual has rank zero");
        }
        duality::dual_eta_identity(self.m, self.caps)?;
        pass()
    }

    /// With a loopless dual: 1/D(M) + 1/S(M*) = 1 and 1/S(M) + 1/D(M*) = 1.
    fn dual_reciprocals(&self) -> Result<Verdict> {
        if self.m.coloops() != 0 {
            return skip("dual has loops (the matroid has coloops)");
        }
        let dual = self.m.dual();
        let td = RankTable::build(&dual, self.caps)?;
        let s_dual = partition::strength(&td)?;
        let d_dual = partition::arboricity(&td)?;
        let one = Rat::one();
        if &one / &self.arbor.value + &one / &s_dual.value != one {
            return fail("1/D(M) + 1/S(M*) ≠ 1".into());
        }
        if &one / &self.strength.value + &one / &d_dual.value != one {
            return fail("1/S(M) + 1/D(M*) ≠ 1".into());
        }
        pass()
    }

    /// The overlap of the whole equals the sum of the overlaps of the parts
    /// across every certified proper Beurling set (capped per instance).
    fn serial_split_rule(&self) -> Result<Verdict> {
        let sets = partition::beurling_sets(&self.table, &self.res.eta, &self.res.fair_support)?;
        let mut ordered = sets.clone();
        ordered.sort_by_key(|x| (x.count_ones(), *x));
        let capped = ordered.len() > 16;
        if capped {
            ordered.truncate(16);
        }
        for &x in &ordered {
            let split = partition::serial_split(self.m, x, &self.res, self.caps)?;
            if &split.left_meo + &split.right_meo != self.res.meo {
                return fail(format!(
                    "serial rule fails at {}",
                    self.set_names(x)
                ));
            }
        }
        let detail = if capped {
            format!("first 16 of {} Beurling sets", sets.len())
        } else {
            format!("{} Beurling sets", sets.len())
        };
        pass_with(detail)
    }

    /// The closed-form p-modulus agrees with the independent gradient solve
    /// for several p, and coincides with the quadratic modulus at p = 2.
    fn p_modulus_gradient(&self) -> Result<Verdict> {
        if self.bases.len() > 400 {
            return skip("more than 400 bases");
        }
        for (num, den) in [(3i64, 2i64), (2, 1), (3, 1), (5, 1)] {
            let p = rat(num, den);
            let mp = modulus::mod_p(&self.defl, &p)?;
            let pg = pgrad::solve_modp(self.m, modulus::rat_to_f64(&p), self.caps)?;
            let rel = (pg.value - mp.value).abs() / mp.value.max(1e-300);
            if rel > 1e-6 {
                return fail(format!(
                    "closed form {} vs gradient solve {} at p={p}",
                    mp.value, pg.value
                ));
            }
            if num == 2 && den == 1 && mp.value_exact.as_ref() != Some(&self.res.mod2) {
                return fail("p = 2 closed form differs from the quadratic modulus".into());
            }
        }
        pass_with("p ∈ {3/2, 2, 3, 5}".into())
    }

    /// The weighted unit-exponent modulus LP equals the weighted strength,
    /// for the unit weight and a few random positive weights.
    fn weighted_strength(&self) -> Result<Verdict> {
        let n = self.n();
        let (value, _) =
            modulus::mod1_weighted(self.m, &Density::constant(n, Rat::one()), self.caps)?;
        if value != self.strength.value {
            return fail(format!(
                "unit-weight value {} vs strength {}",
                value, self.strength.value
            ));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(512 + n as u64);
        for _ in 0..3 {
            let sigma = Density(
                (0..n)
                    .map(|_| rat(rng.gen_range(1..=5), rng.gen_range(1..=3)))
                    .collect(),
            );
            // the LP value is cross-checked against the subset scan inside
            modulus::mod1_weighted(self.m, &sigma, self.caps)?;
        }
        pass_with("unit and 3 random weights".into())
    }
}
