//! Base-family modulus: densities, base pmfs, the 2-modulus with its full
//! certificate set, and the p-modulus closed form.
//!
//! The authoritative computation of η* is the exact deflation chain
//! (`partition::deflate`); this module wraps it with the modulus bookkeeping
//! and re-derives the same point along two independent paths — the
//! floating-point minimum-norm solver and, when the base count is small, a
//! brute-force rational QP over support sets — failing loudly on any
//! disagreement.

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matroid::{bits, Caps, Mask, Matroid, RankTable};
use crate::simplex::{self, Cmp, Constraint, Lp, Outcome};
use crate::{partition, rint, wolfe, Rat};

/// Nonnegative vector indexed by ground-set elements (η, ρ, σ, …).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Density(pub Vec<Rat>);

impl Density {
    pub fn constant(n: usize, v: Rat) -> Density {
        Density(vec![v; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_nonneg(&self) -> bool {
        self.0.iter().all(|v| !v.is_negative())
    }

    pub fn sum(&self) -> Rat {
        self.0.iter().sum()
    }

    /// Σ over the elements of a mask.
    pub fn sum_mask(&self, mask: Mask) -> Rat {
        bits(mask).map(|i| self.0[i].clone()).sum()
    }

    /// E₂ = Σ v².
    pub fn energy2(&self) -> Rat {
        self.0.iter().map(|v| v * v).sum()
    }

    pub fn scale(&self, c: &Rat) -> Density {
        Density(self.0.iter().map(|v| v * c).collect())
    }

    pub fn min(&self) -> &Rat {
        self.0.iter().min().expect("nonempty density")
    }

    pub fn max(&self) -> &Rat {
        self.0.iter().max().expect("nonempty density")
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(rat_to_f64).collect()
    }
}

pub fn rat_to_f64(v: &Rat) -> f64 {
    let n = v.numer();
    let d = v.denom();
    // exact for all magnitudes seen here; falls back to a quotient of
    // approximations for very large parts
    let nf = n.to_string().parse::<f64>().unwrap_or(f64::NAN);
    let df = d.to_string().parse::<f64>().unwrap_or(f64::NAN);
    nf / df
}

/// Probability mass function on bases. `bases` lists the support in the
/// deterministic enumeration order; weights are positive and sum to 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasePmf {
    pub bases: Vec<Mask>,
    pub weights: Vec<Rat>,
}

impl BasePmf {
    pub fn point_mass(base: Mask) -> BasePmf {
        BasePmf { bases: vec![base], weights: vec![Rat::one()] }
    }

    pub fn validate(&self) -> Result<()> {
        if self.bases.len() != self.weights.len() {
            return Err(Error::Internal("pmf arity mismatch".into()));
        }
        if self.weights.iter().any(|w| w.is_negative()) {
            return Err(Error::Internal("pmf has a negative weight".into()));
        }
        let total: Rat = self.weights.iter().sum();
        if !total.is_one() {
            return Err(Error::Internal("pmf weights do not sum to 1".into()));
        }
        for (i, b) in self.bases.iter().enumerate() {
            if self.bases[..i].contains(b) {
                return Err(Error::Internal("pmf repeats a base".into()));
            }
        }
        Ok(())
    }

    /// η = Nᵀμ: expected usage per element.
    pub fn eta(&self, n: usize) -> Density {
        let mut out = vec![Rat::zero(); n];
        for (b, w) in self.bases.iter().zip(&self.weights) {
            for i in bits(*b) {
                out[i] += w;
            }
        }
        Density(out)
    }

    /// Bases with strictly positive weight.
    pub fn support(&self) -> Vec<Mask> {
        self.bases
            .iter()
            .zip(&self.weights)
            .filter(|(_, w)| w.is_positive())
            .map(|(b, _)| *b)
            .collect()
    }
}

/// ℓ_ρ(B) = Σ_{e ∈ B} ρ(e), the total usage cost of a base.
pub fn total_usage(rho: &Density, base: Mask) -> Rat {
    rho.sum_mask(base)
}

#[derive(Debug, Clone)]
pub struct AdmissibilityCheck {
    pub ok: bool,
    /// A minimum-usage base; when `ok` is false this is a violating witness.
    pub min_base: Mask,
    pub min_usage: Rat,
}

/// Is ρ admissible for the base family, i.e. ℓ_ρ(B) ≥ 1 for every base?
/// Decided exactly by one greedy minimum-weight-base computation.
pub fn is_admissible(m: &Matroid, rho: &Density) -> Result<AdmissibilityCheck> {
    if rho.len() != m.size() {
        return Err(Error::Domain("density dimension mismatch".into()));
    }
    if !rho.is_nonneg() {
        return Err(Error::Domain("density has a negative entry".into()));
    }
    let base = m.min_weight_base_by(|a, b| rho.0[a].cmp(&rho.0[b]).then(a.cmp(&b)));
    let usage = total_usage(rho, base);
    Ok(AdmissibilityCheck { ok: usage >= Rat::one(), min_base: base, min_usage: usage })
}

/// Exact minimizer of μᵀNNᵀμ over pmfs on the enumerated bases, by searching
/// supports in (size, lexicographic) order and accepting the first support
/// whose equality-constrained stationary point satisfies the full KKT system.
/// Independent of the deflation path; used as a cross-check oracle.
pub fn brute_force_eta(m: &Matroid, caps: &Caps) -> Result<(BasePmf, Density, Rat)> {
    use itertools::Itertools;

    let bases = m.enumerate_bases(caps)?;
    let nb = bases.len();
    if nb == 0 {
        return Err(Error::Domain("matroid has no bases".into()));
    }
    // Gram matrix of base indicators: Q[i][j] = |B_i ∩ B_j|
    let gram: Vec<Vec<Rat>> = bases
        .iter()
        .map(|&a| {
            bases
                .iter()
                .map(|&b| rint((a & b).count_ones() as i64))
                .collect()
        })
        .collect();

    const MAX_SOLVES: usize = 200_000;
    let mut solves = 0usize;
    for size in 1..=nb {
        for support in (0..nb).combinations(size) {
            solves += 1;
            if solves > MAX_SOLVES {
                return Err(Error::Resource(
                    "brute-force support search exceeded its solve budget".into(),
                ));
            }
            // stationarity on the support: 2(Qμ)_i = ν, Σμ = 1
            let k = support.len();
            let mut a = vec![vec![Rat::zero(); k + 1]; k + 1];
            let mut rhs = vec![Rat::zero(); k + 1];
            for (row, &i) in support.iter().enumerate() {
                for (col, &j) in support.iter().enumerate() {
                    a[row][col] = &gram[i][j] * &rint(2);
                }
                a[row][k] = rint(-1);
            }
            for col in 0..k {
                a[k][col] = Rat::one();
            }
            rhs[k] = Rat::one();
            let Some(sol) = crate::linalg::rat_solve(&a, &rhs) else {
                continue;
            };
            let mu = &sol[..k];
            let nu = &sol[k];
            if mu.iter().any(|v| !v.is_positive()) {
                continue;
            }
            // off-support optimality: 2(Qμ)_j ≥ ν for every other base
            let q_mu = |j: usize| -> Rat {
                support
                    .iter()
                    .zip(mu)
                    .map(|(&i, w)| &gram[j][i] * w)
                    .sum()
            };
            let ok = (0..nb)
                .filter(|j| !support.contains(j))
                .all(|j| q_mu(j) * rint(2) >= *nu);
            if !ok {
                continue;
            }
            let pmf = BasePmf {
                bases: support.iter().map(|&i| bases[i]).collect(),
                weights: mu.to_vec(),
            };
            pmf.validate()?;
            let eta = pmf.eta(m.size());
            let meo = nu / rint(2);
            if eta.energy2() != meo {
                return Err(Error::Internal(
                    "brute-force oracle: ν/2 disagrees with E₂(η)".into(),
                ));
            }
            return Ok((pmf, eta, meo));
        }
    }
    Err(Error::Internal("brute-force support search found no KKT point".into()))
}

/// Express a base-polytope point as a convex combination of bases, by a
/// phase-1 simplex feasibility solve; the returned pmf has support at most
/// |E| + 1 (a basic feasible solution).
pub fn base_decomposition(m: &Matroid, eta: &Density, caps: &Caps) -> Result<BasePmf> {
    let bases = m.enumerate_bases(caps)?;
    let nb = bases.len();
    let n = m.size();
    let mut constraints: Vec<Constraint> = (0..n)
        .map(|e| Constraint {
            coeffs: bases
                .iter()
                .map(|&b| if b & (1 << e) != 0 { Rat::one() } else { Rat::zero() })
                .collect(),
            cmp: Cmp::Eq,
            rhs: eta.0[e].clone(),
        })
        .collect();
    constraints.push(Constraint {
        coeffs: vec![Rat::one(); nb],
        cmp: Cmp::Eq,
        rhs: Rat::one(),
    });
    let lp = Lp { minimize: true, objective: vec![Rat::zero(); nb], constraints };
    match simplex::solve(&lp)? {
        Outcome::Optimal { x, .. } => {
            let mut out_bases = Vec::new();
            let mut out_weights = Vec::new();
            for (b, w) in bases.iter().zip(x) {
                if w.is_positive() {
                    out_bases.push(*b);
                    out_weights.push(w);
                }
            }
            let pmf = BasePmf { bases: out_bases, weights: out_weights };
            pmf.validate()?;
            if pmf.bases.len() > n + 1 {
                return Err(Error::Internal(
                    "decomposition support exceeds |E|+1".into(),
                ));
            }
            if pmf.eta(n) != *eta {
                return Err(Error::Internal("decomposition does not reproduce η".into()));
            }
            Ok(pmf)
        }
        Outcome::Infeasible => Err(Error::Domain(
            "vector is not in the base polytope".into(),
        )),
        Outcome::Unbounded => Err(Error::Internal("feasibility LP unbounded".into())),
    }
}

/// Full 2-modulus certificate bundle.
#[derive(Debug, Clone)]
pub struct Mod2Result {
    /// Mod₂(B) = 1/MEO.
    pub mod2: Rat,
    /// Minimum expected overlap = E₂(η*).
    pub meo: Rat,
    /// Optimal density ρ* = Mod₂ · η*.
    pub rho: Density,
    /// Optimal expected usage η* = Nᵀμ*.
    pub eta: Density,
    /// One optimal pmf (Carathéodory witness; not unique in general).
    pub pmf: BasePmf,
    /// Support of the pmf; every member is a fair base.
    pub fair_support: Vec<Mask>,
    /// Wolfe cross-check diagnostics.
    pub wolfe_gap: f64,
    pub wolfe_max_err: f64,
}

/// Numeric agreement demanded between the Wolfe iterate and the exact η*.
pub const NUMERIC_TOL: f64 = 1e-9;

/// Compute Mod₂(B(M)) with its certificate ecosystem. Exact deflation is the
/// authoritative path; the Wolfe solver must agree within `NUMERIC_TOL` in
/// max-norm, and for ≤ 20 bases the brute-force QP must agree exactly.
pub fn mod2(m: &Matroid, caps: &Caps) -> Result<Mod2Result> {
    if !m.is_loopless() {
        return Err(Error::Domain(
            "base modulus needs a loopless matroid (a loop lies in no base)".into(),
        ));
    }
    let defl = partition::deflate(m, caps)?;
    let eta = defl.eta.clone();
    let internal = |msg: &str| Error::Internal(format!("mod2 invariant: {msg}"));

    // Structural invariants of the exact path
    if eta.sum() != rint(m.full_rank() as i64) {
        return Err(internal("η*(E) ≠ r(E)"));
    }
    if !eta.min().is_positive() {
        return Err(internal("η* has a non-positive entry"));
    }
    let meo = eta.energy2();
    let mod2 = meo.recip();
    let rho = eta.scale(&mod2);

    // admissibility of ρ* and complementary slackness on the pmf support
    let adm = is_admissible(m, &rho)?;
    if !adm.ok {
        return Err(internal("ρ* is inadmissible"));
    }
    let pmf = base_decomposition(m, &eta, caps)?;
    for b in &pmf.bases {
        if total_usage(&rho, *b) != Rat::one() {
            return Err(internal("a support base is not tight for ρ*"));
        }
    }

    // numeric cross-check: Wolfe minimum-norm point
    let w = wolfe::min_norm_point(m, wolfe::GAP_TOL)?;
    let eta_f = eta.to_f64();
    let max_err = w
        .eta
        .iter()
        .zip(&eta_f)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0f64, f64::max);
    if max_err > NUMERIC_TOL {
        return Err(internal(&format!(
            "Wolfe iterate differs from exact η* by {max_err:.3e} (> {NUMERIC_TOL:.1e})"
        )));
    }

    // exact cross-check: brute-force QP when the base count permits
    let bases = m.enumerate_bases(caps)?;
    if bases.len() <= 20 {
        let (_, eta_bf, meo_bf) = brute_force_eta(m, caps)?;
        if eta_bf != eta || meo_bf != meo {
            return Err(internal("brute-force QP disagrees with deflation"));
        }
    }

    let fair_support = pmf.support();
    Ok(Mod2Result { mod2, meo, rho, eta, pmf, fair_support, wolfe_gap: w.gap, wolfe_max_err: max_err })
}

/// Weighted 1-modulus: the LP min Σ σ(e)ρ(e) over admissible ρ, which equals
/// the weighted strength min σ(X)/(r(E)−r(E−X)). Both sides are computed —
/// the LP over enumerated bases and the subset brute force — and must agree.
/// Returns the common value and a minimizing set from the subset scan.
pub fn mod1_weighted(m: &Matroid, sigma: &Density, caps: &Caps) -> Result<(Rat, Mask)> {
    if sigma.len() != m.size() {
        return Err(Error::Domain("weight dimension mismatch".into()));
    }
    if sigma.0.iter().any(|v| !v.is_positive()) {
        return Err(Error::Domain("weights must be strictly positive".into()));
    }
    // subset brute force for the weighted strength
    let t = RankTable::build(m, caps)?;
    let full = t.full_mask();
    let r = t.full_rank();
    let mut best: Option<(Rat, Mask)> = None;
    for x in 1..=full {
        let denom = r - t.rank(full & !x);
        if denom == 0 {
            continue;
        }
        let value = sigma.sum_mask(x) / rint(denom as i64);
        match &best {
            Some((bv, _)) if *bv <= value => {}
            _ => best = Some((value, x)),
        }
    }
    let (strength, witness) =
        best.ok_or_else(|| Error::Domain("rank zero matroid".into()))?;

    // LP over enumerated bases
    let bases = m.enumerate_bases(caps)?;
    let lp = Lp {
        minimize: true,
        objective: sigma.0.clone(),
        constraints: bases
            .iter()
            .map(|&b| Constraint {
                coeffs: (0..m.size())
                    .map(|e| if b & (1 << e) != 0 { Rat::one() } else { Rat::zero() })
                    .collect(),
                cmp: Cmp::Ge,
                rhs: Rat::one(),
            })
            .collect(),
    };
    let Outcome::Optimal { value, .. } = simplex::solve(&lp)? else {
        return Err(Error::Internal("weighted modulus LP did not solve".into()));
    };
    if value != strength {
        return Err(Error::Internal(
            "weighted 1-modulus LP disagrees with the weighted strength scan".into(),
        ));
    }
    Ok((strength, witness))
}

/// p-modulus of the base family for 1 < p < ∞, from the deflation chain.
#[derive(Debug, Clone)]
pub struct ModP {
    pub p: Rat,
    /// Hölder conjugate q = p/(p−1).
    pub q: Rat,
    pub value: f64,
    /// Exact value when every power in the closed form is rational.
    pub value_exact: Option<Rat>,
    /// Optimal density ρ = (η*)^{q−1} / E_q(η*).
    pub rho: Vec<f64>,
    pub rho_exact: Option<Density>,
}

/// Exact rational power b^e, defined when the e.denom()-th root of b is
/// rational. b must be positive (or zero with positive exponent).
pub fn rat_pow(b: &Rat, e: &Rat) -> Option<Rat> {
    use num::ToPrimitive;

    if b.is_zero() {
        return if e.is_positive() { Some(Rat::zero()) } else { None };
    }
    if !b.is_positive() {
        return None;
    }
    let root_deg = e.denom().to_u32()?;
    let expo = e.numer().to_i32()?;
    if expo.unsigned_abs() > 1_000 {
        return None;
    }
    let rooted = if root_deg == 1 {
        b.clone()
    } else {
        let rn = b.numer().nth_root(root_deg);
        let rd = b.denom().nth_root(root_deg);
        if &rn.pow(root_deg) != b.numer() || &rd.pow(root_deg) != b.denom() {
            return None;
        }
        Rat::new(rn, rd)
    };
    Some(rooted.pow(expo))
}

/// Closed-form Mod_p from the deflation blocks:
/// Mod_p(B) = (Σ_j r_j^q / |E_j|^{q−1})^{1−p}.
pub fn mod_p(defl: &partition::Deflation, p: &Rat) -> Result<ModP> {
    if *p <= Rat::one() {
        return Err(Error::Domain(format!(
            "p-modulus needs p > 1, got {p}"
        )));
    }
    let one = Rat::one();
    let q = p / (p - &one);
    let qm1 = &q - &one;
    let pf = rat_to_f64(p);
    let qf = rat_to_f64(&q);

    // the sum S = Σ r_j^q / n_j^{q-1}, numerically and exactly when possible
    let mut s_f = 0.0f64;
    let mut s_exact = Some(Rat::zero());
    for blk in &defl.blocks {
        let r = rint(blk.rank as i64);
        let n = rint(blk.size as i64);
        s_f += rat_to_f64(&r).powf(qf) / rat_to_f64(&n).powf(qf - 1.0);
        s_exact = match (s_exact, rat_pow(&r, &q), rat_pow(&n, &qm1)) {
            (Some(acc), Some(rq), Some(nq)) => Some(acc + rq / nq),
            _ => None,
        };
    }
    let value = s_f.powf(1.0 - pf);
    let mut value_exact = s_exact
        .as_ref()
        .and_then(|s| rat_pow(s, &(&one - p)));
    if value_exact.is_none() && defl.blocks.len() == 1 {
        // homogeneous case: the exponents telescope to |E| / r^p
        let blk = &defl.blocks[0];
        value_exact = rat_pow(&rint(blk.rank as i64), &(-p.clone()))
            .map(|v| v * rint(blk.size as i64));
    }

    // optimal density ρ = (η*)^{q−1} / E_q(η*)
    let eta_f = defl.eta.to_f64();
    let eq_f: f64 = eta_f.iter().map(|v| v.powf(qf)).sum();
    let rho: Vec<f64> = eta_f.iter().map(|v| v.powf(qf - 1.0) / eq_f).collect();
    let mut rho_exact = (|| {
        let powered: Option<Vec<Rat>> = defl
            .eta
            .0
            .iter()
            .map(|v| rat_pow(v, &qm1))
            .collect();
        let powered = powered?;
        let eq: Option<Rat> = defl
            .eta
            .0
            .iter()
            .map(|v| rat_pow(v, &q))
            .try_fold(Rat::zero(), |acc, t| t.map(|t| acc + t));
        let eq = eq?;
        Some(Density(powered.into_iter().map(|v| v / &eq).collect()))
    })();
    if rho_exact.is_none() && defl.blocks.len() == 1 {
        // constant η = r/n makes the normalized power collapse to 1/r everywhere
        let blk = &defl.blocks[0];
        let inv_r = Rat::new(1.into(), (blk.rank as i64).into());
        rho_exact = Some(Density(vec![inv_r; defl.eta.0.len()]));
    }

    Ok(ModP { p: p.clone(), q, value, value_exact, rho, rho_exact })
}
