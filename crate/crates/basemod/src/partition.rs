//! Principal partition: strength, fractional arboricity, parametric
//! minimizers of r(X) + λ|E−X|, the critical-value chain of level minors,
//! the deflation chain of homogeneous minors that determines η* exactly,
//! Beurling-set certification, and the serial decomposition rule for the
//! minimum expected overlap.
//!
//! Everything here is exact; subset scans over the precomputed rank table
//! are the authoritative oracle (no submodular-minimization machinery).

use num::{Signed, Zero};

use crate::duality;
use crate::error::{Error, Result};
use crate::matroid::{bits, Caps, Mask, Matroid, RankTable};
use crate::modulus::{self, BasePmf, Density};
use crate::{rint, Rat};

/// Value plus the inclusion-maximal optimizer (union of all optimizers,
/// which optimizes again by the lattice property of the scan objectives).
#[derive(Debug, Clone)]
pub struct ScanExtremum {
    pub value: Rat,
    pub witness: Mask,
}

/// Strength S(M) = min |X|/(r(E) − r(E−X)) over X with r(E−X) < r(E).
/// Tolerates loops (they only ever shrink a numerator).
pub fn strength(t: &RankTable) -> Result<ScanExtremum> {
    let full = t.full_mask();
    let r = t.full_rank();
    if r == 0 {
        return Err(Error::Domain("strength needs rank ≥ 1".into()));
    }
    let mut best: Option<Rat> = None;
    for x in 1..=full {
        let denom = r - t.rank(full & !x);
        if denom == 0 {
            continue;
        }
        let v = Rat::new((x.count_ones() as i64).into(), (denom as i64).into());
        if best.as_ref().is_none_or(|b| v < *b) {
            best = Some(v);
        }
    }
    let value = best.expect("X = E always has a positive denominator");
    let mut witness = 0u64;
    for x in 1..=full {
        let denom = r - t.rank(full & !x);
        if denom != 0
            && Rat::new((x.count_ones() as i64).into(), (denom as i64).into()) == value
        {
            witness |= x;
        }
    }
    let wd = r - t.rank(full & !witness);
    if wd == 0
        || Rat::new((witness.count_ones() as i64).into(), (wd as i64).into()) != value
    {
        return Err(Error::Internal(
            "union of strength minimizers is not a minimizer".into(),
        ));
    }
    Ok(ScanExtremum { value, witness })
}

/// Fractional arboricity D(M) = max |X|/r(X) over nonempty X. Rejects loops
/// (a loop makes the ratio unbounded).
pub fn arboricity(t: &RankTable) -> Result<ScanExtremum> {
    let full = t.full_mask();
    if t.full_rank() == 0 {
        return Err(Error::Domain("arboricity needs rank ≥ 1".into()));
    }
    for i in bits(full) {
        if t.rank(1 << i) == 0 {
            return Err(Error::Domain(
                "fractional arboricity is unbounded on a matroid with loops".into(),
            ));
        }
    }
    let mut best: Option<Rat> = None;
    for x in 1..=full {
        let v = Rat::new((x.count_ones() as i64).into(), (t.rank(x) as i64).into());
        if best.as_ref().is_none_or(|b| v > *b) {
            best = Some(v);
        }
    }
    let value = best.expect("nonempty ground set");
    let mut witness = 0u64;
    for x in 1..=full {
        if Rat::new((x.count_ones() as i64).into(), (t.rank(x) as i64).into()) == value {
            witness |= x;
        }
    }
    if Rat::new(
        (witness.count_ones() as i64).into(),
        (t.rank(witness) as i64).into(),
    ) != value
    {
        return Err(Error::Internal(
            "union of arboricity maximizers is not a maximizer".into(),
        ));
    }
    Ok(ScanExtremum { value, witness })
}

/// Density θ(M) = |E|/r(E).
pub fn theta(t: &RankTable) -> Result<Rat> {
    if t.full_rank() == 0 {
        return Err(Error::Domain("density needs rank ≥ 1".into()));
    }
    Ok(Rat::new((t.n() as i64).into(), (t.full_rank() as i64).into()))
}

/// Minimizers of f_λ(X) = r(X) + λ|E−X| over all X ⊆ E.
#[derive(Debug, Clone)]
pub struct Parametric {
    pub value: Rat,
    /// Intersection of all minimizers (itself a minimizer).
    pub min_set: Mask,
    /// Union of all minimizers (itself a minimizer).
    pub max_set: Mask,
}

pub fn parametric_minimizers(t: &RankTable, lambda: &Rat) -> Result<Parametric> {
    if lambda.is_negative() {
        return Err(Error::Domain("parametric scan needs λ ≥ 0".into()));
    }
    let full = t.full_mask();
    let n = t.n() as i64;
    let f = |x: Mask| -> Rat {
        rint(t.rank(x) as i64) + lambda * rint(n - x.count_ones() as i64)
    };
    let mut value = f(0);
    for x in 1..=full {
        let v = f(x);
        if v < value {
            value = v;
        }
    }
    let mut min_set = full;
    let mut max_set = 0u64;
    for x in 0..=full {
        if f(x) == value {
            min_set &= x;
            max_set |= x;
        }
    }
    // the minimizer family is a lattice; both extremes must minimize
    if f(min_set) != value || f(max_set) != value {
        return Err(Error::Internal(
            "parametric minimizers do not form a lattice".into(),
        ));
    }
    Ok(Parametric { value, min_set, max_set })
}

/// One level of the principal-partition chain: the minor
/// (M|E⁺_λ)/E⁻_λ living on the elements with η* exactly λ.
#[derive(Debug, Clone)]
pub struct Level {
    pub lambda: Rat,
    pub eplus: Mask,
    pub eminus: Mask,
    pub minor: Matroid,
}

#[derive(Debug, Clone)]
pub struct PartitionChain {
    pub critical: Vec<Rat>,
    pub levels: Vec<Level>,
}

/// Deflation block: a homogeneous minor with its element set in original
/// coordinates and its uniform usage density η_j = r_j/|E_j|.
#[derive(Debug, Clone)]
pub struct Block {
    pub mask: Mask,
    pub rank: u64,
    pub size: u32,
    pub eta: Rat,
    pub matroid: Matroid,
}

#[derive(Debug, Clone)]
pub struct Deflation {
    pub blocks: Vec<Block>,
    /// Piecewise-constant η*, assembled block by block.
    pub eta: Density,
}

/// Deflation chain: repeatedly split off the inclusion-maximal densest set
/// (the restriction to it is homogeneous), contract it, and continue. This
/// determines the exact η*.
pub fn deflate(m: &Matroid, caps: &Caps) -> Result<Deflation> {
    if !m.is_loopless() {
        return Err(Error::Domain("deflation needs a loopless matroid".into()));
    }
    let n = m.size();
    let mut blocks: Vec<Block> = Vec::new();
    let mut eta = vec![Rat::zero(); n];
    let mut cur = m.clone();
    // original index of each current-minor element
    let mut coords: Vec<usize> = (0..n).collect();
    loop {
        let t = RankTable::build(&cur, caps)?;
        let dens = arboricity(&t)?;
        let u = dens.witness;
        if cur.closure(u) != u {
            return Err(Error::Internal(
                "deflation: densest set is not closed".into(),
            ));
        }
        let r_u = cur.rank(u);
        let eta_j = Rat::new((r_u as i64).into(), (u.count_ones() as i64).into());
        if let Some(prev) = blocks.last() {
            if eta_j <= prev.eta {
                return Err(Error::Internal(
                    "deflation: block densities are not strictly increasing".into(),
                ));
            }
        }
        let restriction = cur.restrict(u)?;
        // homogeneity certificate: the constant density r/|E| must lie in the
        // dominant of the block's base family
        let bt = RankTable::build(&restriction, caps)?;
        let hom = Density::constant(restriction.size(), eta_j.clone());
        let (is_member, _) = duality::dominant_membership(&bt, &hom)?;
        if !is_member {
            return Err(Error::Internal(
                "deflation: block fails the homogeneity certificate".into(),
            ));
        }
        let mut mask = 0u64;
        for i in bits(u) {
            mask |= 1 << coords[i];
            eta[coords[i]] = eta_j.clone();
        }
        blocks.push(Block {
            mask,
            rank: r_u,
            size: u.count_ones(),
            eta: eta_j,
            matroid: restriction,
        });
        if u == cur.full_mask() {
            break;
        }
        let next = cur.contract(u)?;
        if !next.is_loopless() {
            return Err(Error::Internal(
                "deflation: contraction by a closed set produced a loop".into(),
            ));
        }
        coords = bits(cur.full_mask() & !u).map(|i| coords[i]).collect();
        cur = next;
    }
    let total_rank: u64 = blocks.iter().map(|b| b.rank).sum();
    let total_size: u32 = blocks.iter().map(|b| b.size).sum();
    if total_rank != m.full_rank() || total_size as usize != n {
        return Err(Error::Internal(
            "deflation blocks do not partition E with full rank".into(),
        ));
    }
    Ok(Deflation { blocks, eta: Density(eta) })
}

/// Critical values and the E± chain, derived from the exact η* and verified
/// against the parametric scan: the critical λ (those with more than one
/// minimizer) are exactly the distinct values of η*.
pub fn critical_values(
    m: &Matroid,
    t: &RankTable,
    defl: &Deflation,
    caps: &Caps,
) -> Result<PartitionChain> {
    let full = t.full_mask();
    let mut critical: Vec<Rat> = Vec::new();
    for b in &defl.blocks {
        if !critical.contains(&b.eta) {
            critical.push(b.eta.clone());
        }
    }
    critical.sort();

    let mut levels = Vec::new();
    let mut prev_plus = 0u64;
    for lam in &critical {
        let par = parametric_minimizers(t, lam)?;
        let eminus: Mask = bits(full)
            .filter(|&i| defl.eta.0[i] < *lam)
            .fold(0, |a, i| a | (1 << i));
        let eplus: Mask = bits(full)
            .filter(|&i| defl.eta.0[i] <= *lam)
            .fold(0, |a, i| a | (1 << i));
        if par.min_set != eminus || par.max_set != eplus {
            return Err(Error::Internal(
                "critical chain: parametric minimizers disagree with η* level sets".into(),
            ));
        }
        if eminus != prev_plus {
            return Err(Error::Internal("critical chain is not nested".into()));
        }
        prev_plus = eplus;
        // level minor (M|E⁺)/E⁻
        let restricted = m.restrict(eplus)?;
        let eminus_local: Mask = bits(eplus)
            .enumerate()
            .filter(|&(_, orig)| eminus & (1 << orig) != 0)
            .fold(0, |a, (local, _)| a | (1 << local));
        let minor = if eminus_local == 0 {
            restricted
        } else {
            restricted.contract(eminus_local)?
        };
        // independent homogeneity check on the level minor: S = D
        let mt = RankTable::build(&minor, caps)?;
        if strength(&mt)?.value != arboricity(&mt)?.value {
            return Err(Error::Internal(
                "critical chain: level minor is not homogeneous".into(),
            ));
        }
        levels.push(Level { lambda: lam.clone(), eplus, eminus, minor });
    }
    if prev_plus != full {
        return Err(Error::Internal("critical chain does not end at E".into()));
    }

    // confirm no further critical values: every candidate breakpoint λ not in
    // the list has a unique minimizer (small n), or spot-check the midpoints
    if t.n() <= 8 {
        let mut pairs: Vec<(u64, u32)> = Vec::new();
        for x in 0..=full {
            let p = (t.rank(x), x.count_ones());
            if !pairs.contains(&p) {
                pairs.push(p);
            }
        }
        let mut candidates: Vec<Rat> = Vec::new();
        for (i, &(r1, s1)) in pairs.iter().enumerate() {
            for &(r2, s2) in &pairs[i + 1..] {
                if s1 != s2 {
                    let lam = Rat::new(
                        (r1 as i64 - r2 as i64).into(),
                        (s1 as i64 - s2 as i64).into(),
                    );
                    if lam.is_positive() && !candidates.contains(&lam) {
                        candidates.push(lam);
                    }
                }
            }
        }
        for lam in candidates {
            let par = parametric_minimizers(t, &lam)?;
            let is_critical = par.min_set != par.max_set;
            if is_critical != critical.contains(&lam) {
                return Err(Error::Internal(
                    "critical-value list disagrees with the parametric definition".into(),
                ));
            }
        }
    } else {
        let mut probes: Vec<Rat> = Vec::new();
        if let Some(first) = critical.first() {
            probes.push(first / rint(2));
        }
        for w in critical.windows(2) {
            probes.push((&w[0] + &w[1]) / rint(2));
        }
        if let Some(last) = critical.last() {
            probes.push(last + rint(1));
        }
        for lam in probes {
            let par = parametric_minimizers(t, &lam)?;
            if par.min_set != par.max_set {
                return Err(Error::Internal(
                    "unexpected critical value between η* levels".into(),
                ));
            }
        }
    }
    Ok(PartitionChain { critical, levels })
}

/// Certificate for the Beurling property η*(X) = r(E) − r(E−X).
#[derive(Debug, Clone)]
pub struct BeurlingCertificate {
    pub set: Mask,
    pub lhs: Rat,
    pub rhs: Rat,
    pub is_beurling: bool,
}

/// Check whether X is a Beurling set for the exact η*. When it is, every
/// base of `fair` — bases known to carry weight in some optimal pmf, i.e.
/// the computed fair support — must satisfy |B − X| = r(E − X). (ρ*-tight
/// bases outside every optimal support need not, so tightness must not be
/// used as a stand-in for fairness here.)
pub fn is_beurling(
    t: &RankTable,
    x: Mask,
    eta: &Density,
    fair: &[Mask],
) -> Result<BeurlingCertificate> {
    let full = t.full_mask();
    let lhs = eta.sum_mask(x);
    let rhs = rint(t.full_rank() as i64) - rint(t.rank(full & !x) as i64);
    if lhs < rhs {
        return Err(Error::Internal(
            "η*(X) < r(E) − r(E−X): admissibility bound violated".into(),
        ));
    }
    let is_b = lhs == rhs;
    if is_b && x != 0 {
        let r_co = t.rank(full & !x);
        for &b in fair {
            if (b & !x).count_ones() as u64 != r_co {
                return Err(Error::Internal(
                    "Beurling set: a fair base does not restrict to a base of E−X".into(),
                ));
            }
        }
        // Beurling sets are complement-closed
        let co = full & !x;
        let closed = bits(full & !co)
            .all(|e| t.rank(co | (1 << e)) > t.rank(co));
        if x != full && !closed {
            return Err(Error::Internal(
                "Beurling set whose complement is not closed".into(),
            ));
        }
    }
    Ok(BeurlingCertificate { set: x, lhs, rhs, is_beurling: is_b })
}

/// Outcome of the serial decomposition along a Beurling set X:
/// MEO(M) = MEO(M∖X) + MEO(M/(E−X)), with the product pmf recombined on M.
#[derive(Debug, Clone)]
pub struct SerialSplit {
    pub left_meo: Rat,
    pub right_meo: Rat,
    pub pmf: BasePmf,
}

pub fn serial_split(
    m: &Matroid,
    x: Mask,
    parent: &modulus::Mod2Result,
    caps: &Caps,
) -> Result<SerialSplit> {
    let full = m.full_mask();
    if x == 0 || x == full {
        return Err(Error::Domain(
            "serial split needs a proper nonempty Beurling set".into(),
        ));
    }
    let t = RankTable::build(m, caps)?;
    let cert = is_beurling(&t, x, &parent.eta, &parent.fair_support)?;
    if !cert.is_beurling {
        return Err(Error::Domain("set is not Beurling".into()));
    }
    let co = full & !x;
    let left = m.delete(x)?; // on E − X
    let right = m.contract(co)?; // on X
    let left_res = modulus::mod2(&left, caps)?;
    let right_res = modulus::mod2(&right, caps)?;
    if &left_res.meo + &right_res.meo != parent.meo {
        return Err(Error::Internal(
            "serial rule: split overlaps do not sum to MEO(M)".into(),
        ));
    }
    // η* restricts to the pieces
    let left_eta: Vec<Rat> = bits(co).map(|i| parent.eta.0[i].clone()).collect();
    let right_eta: Vec<Rat> = bits(x).map(|i| parent.eta.0[i].clone()).collect();
    if left_res.eta.0 != left_eta || right_res.eta.0 != right_eta {
        return Err(Error::Internal(
            "serial rule: piece densities are not restrictions of η*".into(),
        ));
    }
    // recombine the product pmf on unions B₁ ∪ B₂
    let left_coords: Vec<usize> = bits(co).collect();
    let right_coords: Vec<usize> = bits(x).collect();
    let lift = |b: Mask, coords: &[usize]| -> Mask {
        bits(b).fold(0u64, |acc, i| acc | (1 << coords[i]))
    };
    let mut out_bases = Vec::new();
    let mut out_weights = Vec::new();
    for (b1, w1) in left_res.pmf.bases.iter().zip(&left_res.pmf.weights) {
        for (b2, w2) in right_res.pmf.bases.iter().zip(&right_res.pmf.weights) {
            let union = lift(*b1, &left_coords) | lift(*b2, &right_coords);
            if !m.is_base(union) {
                return Err(Error::Internal(
                    "serial rule: recombined pair is not a base".into(),
                ));
            }
            out_bases.push(union);
            out_weights.push(w1 * w2);
        }
    }
    let pmf = BasePmf { bases: out_bases, weights: out_weights };
    pmf.validate()?;
    if pmf.eta(m.size()) != parent.eta {
        return Err(Error::Internal(
            "serial rule: product pmf does not reproduce η*".into(),
        ));
    }
    if !duality::verify_meomod(m, &pmf, &parent.eta, caps)? {
        return Err(Error::Internal(
            "serial rule: product pmf fails the optimality system".into(),
        ));
    }
    Ok(SerialSplit {
        left_meo: left_res.meo,
        right_meo: right_res.meo,
        pmf,
    })
}

/// All Beurling sets of the instance (exhaustive scan over proper nonempty
/// subsets; ∅ and E are trivially Beurling and omitted).
pub fn beurling_sets(
    t: &RankTable,
    eta: &Density,
    fair: &[Mask],
) -> Result<Vec<Mask>> {
    let full = t.full_mask();
    let mut out = Vec::new();
    for x in 1..full {
        if is_beurling(t, x, eta, fair)?.is_beurling {
            out.push(x);
        }
    }
    Ok(out)
}
