//! Fulkerson blocking duality for the base family: the blocker family Θ,
//! dominant membership, packing/covering LP values with certificates, the
//! density identity between a matroid and its dual, the optimality-system
//! verifier, and an exact quadratic solve over the blocker's admissible set
//! for the reciprocal modulus law.

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matroid::{bits, Caps, Mask, Matroid, RankTable};
use crate::modulus::{self, BasePmf, Density};
use crate::simplex::{self, Cmp, Constraint, Lp, Outcome};
use crate::{partition, rint, Rat};

/// One member of the Fulkerson blocker family: the vector
/// 1_X / (r(E) − r(E−X)) for a nonempty complement-closed X whose
/// contraction M/(E−X) is connected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockerVector {
    pub set: Mask,
    pub denom: u64,
    pub vector: Density,
}

/// Enumerate Θ: all nonempty X ⊆ E, filtered to complement-closed sets whose
/// contraction to X is connected. Ordered by (|X|, mask) ascending.
pub fn fulkerson_blocker(m: &Matroid, caps: &Caps) -> Result<Vec<BlockerVector>> {
    let t = RankTable::build(m, caps)?;
    let full = t.full_mask();
    let n = t.n();
    let mut members: Vec<Mask> = Vec::new();
    for x in 1..=full {
        let co = full & !x;
        // complement-closed: no element of X falls in the closure of E−X
        let r_co = t.rank(co);
        let closed = bits(x).all(|e| t.rank(co | (1 << e)) > r_co);
        if !closed {
            continue;
        }
        if !t.contraction_is_connected(x) {
            continue;
        }
        members.push(x);
    }
    members.sort_by_key(|&x| (x.count_ones(), x));
    let mut out = Vec::with_capacity(members.len());
    for x in members {
        let denom = t.full_rank() - t.rank(full & !x);
        if denom == 0 {
            return Err(Error::Internal(
                "blocker member with zero denominator".into(),
            ));
        }
        let w = Rat::new(1.into(), (denom as i64).into());
        let vector = Density(
            (0..n)
                .map(|e| if x & (1 << e) != 0 { w.clone() } else { Rat::zero() })
                .collect(),
        );
        // Fulkerson blocker vectors are admissible for the base family
        let adm = modulus::is_admissible(m, &vector)?;
        if !adm.ok {
            return Err(Error::Internal("blocker vector is inadmissible".into()));
        }
        out.push(BlockerVector { set: x, denom, vector });
    }
    Ok(out)
}

/// Is `v` an extreme point of the admissible set {ρ ≥ 0 : Nρ ≥ 1}? True iff
/// v is admissible and its tight constraints (usage-1 bases plus zero
/// coordinates) span all |E| dimensions.
pub fn verify_extremity(m: &Matroid, v: &Density, caps: &Caps) -> Result<bool> {
    if !v.is_nonneg() {
        return Ok(false);
    }
    let bases = m.enumerate_bases(caps)?;
    let n = m.size();
    let one = Rat::one();
    let mut tight_rows: Vec<Vec<Rat>> = Vec::new();
    for &b in &bases {
        let usage = v.sum_mask(b);
        if usage < one {
            return Ok(false); // not admissible, so not a point of the set
        }
        if usage == one {
            tight_rows.push(
                (0..n)
                    .map(|e| if b & (1 << e) != 0 { Rat::one() } else { Rat::zero() })
                    .collect(),
            );
        }
    }
    for e in 0..n {
        if v.0[e].is_zero() {
            let mut row = vec![Rat::zero(); n];
            row[e] = Rat::one();
            tight_rows.push(row);
        }
    }
    // rank of the tight system: treat rows as columns for the rank routine
    Ok(crate::linalg::rat_rank(&tight_rows) == n)
}

/// Membership of η in the dominant of the base family: η ≥ 0 and
/// η(X) ≥ r(E) − r(E−X) for every X. On failure the maximally violating X
/// is returned.
pub fn dominant_membership(t: &RankTable, eta: &Density) -> Result<(bool, Option<Mask>)> {
    if !eta.is_nonneg() {
        return Err(Error::Domain("dominant membership needs η ≥ 0".into()));
    }
    if eta.len() != t.n() {
        return Err(Error::Domain("density dimension mismatch".into()));
    }
    let full = t.full_mask();
    let r = t.full_rank() as i64;
    let mut worst: Option<(Rat, Mask)> = None;
    for x in 1..=full {
        let need = rint(r - t.rank(full & !x) as i64);
        let shortfall = need - eta.sum_mask(x);
        if shortfall.is_positive() {
            match &worst {
                Some((w, _)) if *w >= shortfall => {}
                _ => worst = Some((shortfall, x)),
            }
        }
    }
    match worst {
        Some((_, x)) => Ok((false, Some(x))),
        None => Ok((true, None)),
    }
}

/// LP value with exact certificates from the simplex solver.
#[derive(Debug, Clone)]
pub struct LpValue {
    pub value: Rat,
    /// Nonzero primal weights by base.
    pub primal: Vec<(Mask, Rat)>,
    /// Dual vector over elements.
    pub dual: Vec<Rat>,
}

fn base_rows(m: &Matroid, bases: &[Mask], cmp: Cmp) -> Vec<Constraint> {
    (0..m.size())
        .map(|e| Constraint {
            coeffs: bases
                .iter()
                .map(|&b| if b & (1 << e) != 0 { Rat::one() } else { Rat::zero() })
                .collect(),
            cmp,
            rhs: Rat::one(),
        })
        .collect()
}

/// Base packing LP: max Σ λ(B) with per-element load ≤ 1. Equals the
/// strength τ(M) = S(M).
pub fn packing_value(m: &Matroid, caps: &Caps) -> Result<LpValue> {
    let bases = m.enumerate_bases(caps)?;
    let lp = Lp {
        minimize: false,
        objective: vec![Rat::one(); bases.len()],
        constraints: base_rows(m, &bases, Cmp::Le),
    };
    let Outcome::Optimal { value, x, duals } = simplex::solve(&lp)? else {
        return Err(Error::Internal("packing LP did not reach an optimum".into()));
    };
    Ok(LpValue {
        value,
        primal: bases
            .into_iter()
            .zip(x)
            .filter(|(_, w)| w.is_positive())
            .collect(),
        dual: duals,
    })
}

/// Base covering LP: min Σ κ(B) with per-element cover ≥ 1. Equals the
/// fractional arboricity υ(M) = D(M).
pub fn covering_value(m: &Matroid, caps: &Caps) -> Result<LpValue> {
    if !m.is_loopless() {
        return Err(Error::Domain("covering LP is infeasible with loops".into()));
    }
    let bases = m.enumerate_bases(caps)?;
    let lp = Lp {
        minimize: true,
        objective: vec![Rat::one(); bases.len()],
        constraints: base_rows(m, &bases, Cmp::Ge),
    };
    let Outcome::Optimal { value, x, duals } = simplex::solve(&lp)? else {
        return Err(Error::Internal("covering LP did not reach an optimum".into()));
    };
    Ok(LpValue {
        value,
        primal: bases
            .into_iter()
            .zip(x)
            .filter(|(_, w)| w.is_positive())
            .collect(),
        dual: duals,
    })
}

/// η* of M and η°* of M*, with the exact identity η* + η°* = 1. The dual may
/// carry loops (coloops of M); they get η°* = 0 and the dual modulus runs on
/// the loop-deleted dual, whose base family is the same set family.
#[derive(Debug, Clone)]
pub struct DualIdentity {
    pub eta: Density,
    pub eta_dual: Density,
}

pub fn dual_eta_identity(m: &Matroid, caps: &Caps) -> Result<DualIdentity> {
    let n = m.size() as u64;
    let r = m.full_rank();
    if r == 0 || r == n {
        return Err(Error::Domain(
            "dual density identity needs 0 < r(E) < |E|".into(),
        ));
    }
    let defl = partition::deflate(m, caps)?;
    let eta = defl.eta.clone();

    let dual = m.dual();
    let dual_loops = dual.loops(); // = coloops of M
    let mut eta_dual = vec![Rat::zero(); m.size()];
    if dual_loops == dual.full_mask() {
        return Err(Error::Internal(
            "dual matroid is all loops despite r < |E|".into(),
        ));
    }
    let kept: Vec<usize> = bits(dual.full_mask() & !dual_loops).collect();
    let core = if dual_loops == 0 {
        dual
    } else {
        dual.delete(dual_loops)?
    };
    let core_defl = partition::deflate(&core, caps)?;
    for (local, &orig) in kept.iter().enumerate() {
        eta_dual[orig] = core_defl.eta.0[local].clone();
    }
    let eta_dual = Density(eta_dual);

    let one = Rat::one();
    for i in 0..m.size() {
        if &eta.0[i] + &eta_dual.0[i] != one {
            return Err(Error::Internal(
                "dual density identity: η* + η°* ≠ 1".into(),
            ));
        }
    }
    Ok(DualIdentity { eta, eta_dual })
}

/// The optimality system for a candidate pmf μ against the exact η*:
/// (i) Nᵀμ = η and ρ = η/E₂(η) is admissible, (ii) ρ ∥ η by construction,
/// (iii) complementary slackness: every support base is ρ-tight. Quietly
/// returns false on violation (callers decide severity).
pub fn verify_meomod(
    m: &Matroid,
    pmf: &BasePmf,
    eta: &Density,
    _caps: &Caps,
) -> Result<bool> {
    if pmf.validate().is_err() {
        return Ok(false);
    }
    if pmf.eta(m.size()) != *eta {
        return Ok(false);
    }
    let meo = eta.energy2();
    if !meo.is_positive() {
        return Ok(false);
    }
    let rho = eta.scale(&meo.recip());
    let adm = modulus::is_admissible(m, &rho)?;
    if !adm.ok {
        return Ok(false);
    }
    let one = Rat::one();
    for (b, w) in pmf.bases.iter().zip(&pmf.weights) {
        if w.is_positive() && modulus::total_usage(&rho, *b) != one {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Full invariant check of a Mod2Result (the optimality system plus the
/// bookkeeping identities tying mod2, MEO, ρ*, η* together).
pub fn verify_modulus_result(
    m: &Matroid,
    r: &modulus::Mod2Result,
    caps: &Caps,
) -> Result<bool> {
    if &r.mod2 * &r.meo != Rat::one() {
        return Ok(false);
    }
    if r.rho != r.eta.scale(&r.mod2) {
        return Ok(false);
    }
    if r.eta.sum() != rint(m.full_rank() as i64) {
        return Ok(false);
    }
    if !r.eta.min().is_positive() {
        return Ok(false);
    }
    if r.fair_support != r.pmf.support() {
        return Ok(false);
    }
    verify_meomod(m, &r.pmf, &r.eta, caps)
}

/// Exact minimizer of E₂ over the polyhedron {η ≥ 0 : R η ≥ 1} given by the
/// rows R (here: the Θ vectors). Active-set enumeration over (tight-row,
/// zero-coordinate) patterns; any KKT-consistent point of this convex
/// program is the optimum. Budgeted for desk-scale row counts.
pub fn min_energy_over_rows(rows: &[Density], n: usize) -> Result<(Rat, Density)> {
    let k = rows.len();
    if k == 0 {
        return Err(Error::Domain("no constraint rows".into()));
    }
    use itertools::Itertools;
    let one = Rat::one();
    let two = rint(2);
    let mut solves: u64 = 0;
    // The optimum is the first KKT-consistent pattern in any order, so scan
    // small tight sets first; the optimal active set is small in practice.
    for zset in 0..(1u64 << n) {
        for kt in 1..=k {
            for tight in (0..k).combinations(kt) {
                solves += 1;
                if solves > 200_000 {
                    return Err(Error::Resource(
                        "active-set enumeration budget exceeded".into(),
                    ));
                }
                let tset: u64 = tight.iter().fold(0, |acc, &i| acc | (1 << i));
                // solve G λ = 2·1 where G is the Gram of tight rows
                // restricted to the free (nonzero) coordinates
                let mut g = vec![vec![Rat::zero(); kt]; kt];
                for (a, &i) in tight.iter().enumerate() {
                    for (b, &j) in tight.iter().enumerate() {
                        let mut dot = Rat::zero();
                        for e in 0..n {
                            if zset & (1 << e) == 0 {
                                dot += &rows[i].0[e] * &rows[j].0[e];
                            }
                        }
                        g[a][b] = dot;
                    }
                }
                let rhs = vec![two.clone(); kt];
                let Some(lambda) = crate::linalg::rat_solve(&g, &rhs) else {
                    continue;
                };
                if lambda.iter().any(|l| l.is_negative()) {
                    continue;
                }
                // candidate point: η_e = (Rᵀλ)_e / 2 off the zero set
                let mut eta = vec![Rat::zero(); n];
                let mut ok = true;
                for e in 0..n {
                    let dot: Rat = tight
                        .iter()
                        .zip(&lambda)
                        .map(|(&i, l)| &rows[i].0[e] * l)
                        .sum();
                    if zset & (1 << e) != 0 {
                        // stationarity on a zero coordinate needs
                        // (Rᵀλ)_e ≤ 0; rows are nonnegative so it vanishes
                        if dot.is_positive() {
                            ok = false;
                            break;
                        }
                    } else {
                        eta[e] = dot / &two;
                    }
                }
                if !ok {
                    continue;
                }
                let eta = Density(eta);
                if !eta.is_nonneg() {
                    continue;
                }
                // primal feasibility, with the tight rows exactly tight
                for (i, row) in rows.iter().enumerate() {
                    let v: Rat = (0..n).map(|e| &row.0[e] * &eta.0[e]).sum();
                    if tset & (1 << i) != 0 {
                        if v != one {
                            ok = false;
                            break;
                        }
                    } else if v < one {
                        ok = false;
                        break;
                    }
                }
                if !ok {
                    continue;
                }
                return Ok((eta.energy2(), eta));
            }
        }
    }
    Err(Error::Internal(
        "active-set enumeration found no KKT point".into(),
    ))
}

/// Exhaustively enumerate the extreme points of {ρ ≥ 0 : Nρ ≥ 1} by solving
/// every n-subset of tight candidates (base rows and coordinate rows) and
/// filtering to feasible vertices. A floating-point pass screens the
/// subsets — every constraint system here is a small-integer matrix, so a
/// true vertex cannot be lost to roundoff at these scales — and each
/// distinct candidate is then confirmed once in exact rationals. Budgeted;
/// used to confirm blocker-family completeness.
pub fn admissible_extreme_points(m: &Matroid, caps: &Caps) -> Result<Vec<Density>> {
    let bases = m.enumerate_bases(caps)?;
    let n = m.size();
    let nrows = bases.len() + n;
    // C(nrows, n) grows fast; refuse absurd budgets
    let mut binom: u128 = 1;
    for i in 0..n {
        binom = binom.saturating_mul((nrows - i) as u128) / (i as u128 + 1);
    }
    if binom > 200_000 {
        return Err(Error::Resource(format!(
            "vertex enumeration budget: C({nrows},{n}) subsets"
        )));
    }
    use itertools::Itertools;
    use std::collections::BTreeSet;
    let one = Rat::one();

    let row_f = |row: usize| -> (Vec<f64>, f64) {
        if row < bases.len() {
            let coeffs = (0..n)
                .map(|e| if bases[row] & (1 << e) != 0 { 1.0 } else { 0.0 })
                .collect();
            (coeffs, 1.0)
        } else {
            let mut coeffs = vec![0.0; n];
            coeffs[row - bases.len()] = 1.0;
            (coeffs, 0.0)
        }
    };
    let confirm_exact = |combo: &[usize]| -> Option<Density> {
        let mut a = Vec::with_capacity(n);
        let mut b = Vec::with_capacity(n);
        for &row in combo {
            if row < bases.len() {
                a.push(
                    (0..n)
                        .map(|e| {
                            if bases[row] & (1 << e) != 0 {
                                Rat::one()
                            } else {
                                Rat::zero()
                            }
                        })
                        .collect::<Vec<_>>(),
                );
                b.push(Rat::one());
            } else {
                let e = row - bases.len();
                let mut r = vec![Rat::zero(); n];
                r[e] = Rat::one();
                a.push(r);
                b.push(Rat::zero());
            }
        }
        let x = crate::linalg::rat_solve(&a, &b)?;
        if x.iter().any(|v| v.is_negative()) {
            return None;
        }
        let d = Density(x);
        if bases.iter().any(|&bb| d.sum_mask(bb) < one) {
            return None;
        }
        Some(d)
    };

    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut vertices: Vec<Density> = Vec::new();
    for combo in (0..nrows).combinations(n) {
        let mut a = Vec::with_capacity(n);
        let mut b = Vec::with_capacity(n);
        for &row in &combo {
            let (coeffs, rhs) = row_f(row);
            a.push(coeffs);
            b.push(rhs);
        }
        let Some(x) = crate::linalg::f64_solve(&a, &b) else {
            continue;
        };
        if x.iter().any(|&v| v < -1e-6) {
            continue;
        }
        let feasible = bases
            .iter()
            .all(|&bb| bits(bb).map(|e| x[e]).sum::<f64>() >= 1.0 - 1e-6);
        if !feasible {
            continue;
        }
        let key: Vec<i64> = x.iter().map(|&v| (v * 1e9).round() as i64).collect();
        if seen.contains(&key) {
            continue;
        }
        if let Some(d) = confirm_exact(&combo) {
            if !vertices.contains(&d) {
                vertices.push(d);
            }
            seen.insert(key);
        }
    }
    Ok(vertices)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{fixtures, rat};

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn blocker_tp() {
        let tp = fixtures::tp();
        let g = tp.ground();
        let theta = fulkerson_blocker(&tp, &caps()).unwrap();
        let sets: Vec<Mask> = theta.iter().map(|b| b.set).collect();
        assert_eq!(
            sets,
            vec![
                g.mask_of(&["d"]).unwrap(),
                g.mask_of(&["a", "b"]).unwrap(),
                g.mask_of(&["a", "c"]).unwrap(),
                g.mask_of(&["b", "c"]).unwrap(),
                g.mask_of(&["a", "b", "c"]).unwrap(),
            ]
        );
        let denoms: Vec<u64> = theta.iter().map(|b| b.denom).collect();
        assert_eq!(denoms, vec![1, 1, 1, 1, 2]);
    }

    #[test]
    fn blocker_u12_and_path3() {
        let theta = fulkerson_blocker(&fixtures::u12(), &caps()).unwrap();
        assert_eq!(theta.len(), 1);
        assert_eq!(theta[0].set, 0b11);
        assert_eq!(theta[0].denom, 1);

        let theta = fulkerson_blocker(&fixtures::path3(), &caps()).unwrap();
        let sets: Vec<Mask> = theta.iter().map(|b| b.set).collect();
        assert_eq!(sets, vec![0b001, 0b010, 0b100]);
        assert!(theta.iter().all(|b| b.denom == 1));
    }

    #[test]
    fn blocker_k4() {
        // the complements of the flats of K4 with connected contraction:
        // 4 vertex stars (complements of triangles), 3 four-cycles
        // (complements of perfect matchings), 6 five-edge sets (complements
        // of single edges), and E itself. Edge order: 01 02 03 12 13 23.
        let theta = fulkerson_blocker(&fixtures::k4(), &caps()).unwrap();
        let got: Vec<(Mask, u64)> = theta.iter().map(|b| (b.set, b.denom)).collect();
        let expect: Vec<(Mask, u64)> = vec![
            (0b000111, 1), // star at vertex 0
            (0b011001, 1), // star at vertex 1
            (0b101010, 1), // star at vertex 2
            (0b110100, 1), // star at vertex 3
            (0b011110, 1), // complement of matching {01, 23}
            (0b101101, 1), // complement of matching {02, 13}
            (0b110011, 1), // complement of matching {03, 12}
            (0b011111, 2), // complement of edge 23
            (0b101111, 2), // complement of edge 13
            (0b110111, 2), // complement of edge 12
            (0b111011, 2), // complement of edge 03
            (0b111101, 2), // complement of edge 02
            (0b111110, 2), // complement of edge 01
            (0b111111, 3), // E
        ];
        assert_eq!(got, expect);
    }

    #[test]
    fn extremity_examples() {
        let tp = fixtures::tp();
        let g = tp.ground();
        let one_on = |labels: &[&str], w: Rat| {
            let mask = g.mask_of(labels).unwrap();
            Density(
                (0..4)
                    .map(|e| if mask & (1 << e) != 0 { w.clone() } else { Rat::zero() })
                    .collect(),
            )
        };
        assert!(verify_extremity(&tp, &one_on(&["a", "b"], rint(1)), &caps()).unwrap());
        assert!(verify_extremity(&tp, &one_on(&["a", "b", "c"], rat(1, 2)), &caps()).unwrap());
        // every base contains d, so 1_d is admissible, tight everywhere, and
        // extreme (three tight base rows plus three zero rows span R⁴)
        assert!(verify_extremity(&tp, &one_on(&["d"], rint(1)), &caps()).unwrap());
        // a strict convex mix: (1/3)·1_E is admissible and tight on every
        // base, but the tight system has rank 3 < 4
        let mix = Density::constant(4, rat(1, 3));
        assert!(!verify_extremity(&tp, &mix, &caps()).unwrap());
        // scaling an extreme point off the tight surface loses extremity
        assert!(!verify_extremity(&tp, &one_on(&["d"], rat(3, 2)), &caps()).unwrap());
    }

    #[test]
    fn dominant_membership_examples() {
        let tp = fixtures::tp();
        let t = RankTable::build(&tp, &caps()).unwrap();
        let eta = Density(vec![rat(2, 3), rat(2, 3), rat(2, 3), rint(1)]);
        assert_eq!(dominant_membership(&t, &eta).unwrap(), (true, None));

        let hom = Density::constant(4, rat(3, 4));
        let (ok, witness) = dominant_membership(&t, &hom).unwrap();
        assert!(!ok);
        assert_eq!(witness, Some(tp.ground().mask_of(&["d"]).unwrap()));

        let k4 = fixtures::k4();
        let t = RankTable::build(&k4, &caps()).unwrap();
        let hom = Density::constant(6, rat(1, 2));
        assert_eq!(dominant_membership(&t, &hom).unwrap(), (true, None));
    }

    #[test]
    fn packing_and_covering_fixtures() {
        let tp = fixtures::tp();
        let p = packing_value(&tp, &caps()).unwrap();
        assert_eq!(p.value, rint(1));
        let c = covering_value(&tp, &caps()).unwrap();
        assert_eq!(c.value, rat(3, 2));

        let u12 = fixtures::u12();
        assert_eq!(packing_value(&u12, &caps()).unwrap().value, rint(2));
        assert_eq!(covering_value(&u12, &caps()).unwrap().value, rint(2));

        let p3 = fixtures::path3();
        assert_eq!(packing_value(&p3, &caps()).unwrap().value, rint(1));
        assert_eq!(covering_value(&p3, &caps()).unwrap().value, rint(1));

        let k4 = fixtures::k4();
        assert_eq!(packing_value(&k4, &caps()).unwrap().value, rint(2));
        assert_eq!(covering_value(&k4, &caps()).unwrap().value, rint(2));
    }

    #[test]
    fn dual_identity_fixtures() {
        let tp = fixtures::tp();
        let id = dual_eta_identity(&tp, &caps()).unwrap();
        assert_eq!(id.eta_dual.0, vec![rat(1, 3), rat(1, 3), rat(1, 3), rint(0)]);

        let u12 = fixtures::u12();
        let id = dual_eta_identity(&u12, &caps()).unwrap();
        assert_eq!(id.eta_dual.0, vec![rat(1, 2), rat(1, 2)]);

        let k4 = fixtures::k4();
        let id = dual_eta_identity(&k4, &caps()).unwrap();
        assert_eq!(id.eta_dual.0, vec![rat(1, 2); 6]);

        // r = |E|: no dual identity
        assert!(dual_eta_identity(&fixtures::path3(), &caps()).is_err());
    }

    #[test]
    fn meomod_verifier() {
        let tp = fixtures::tp();
        let r = modulus::mod2(&tp, &caps()).unwrap();
        assert!(verify_modulus_result(&tp, &r, &caps()).unwrap());

        // perturb ρ via a perturbed η: parallelism breaks
        let mut bad = r.clone();
        bad.rho.0[3] += rat(1, 100);
        assert!(!verify_modulus_result(&tp, &bad, &caps()).unwrap());

        let u12 = fixtures::u12();
        let r = modulus::mod2(&u12, &caps()).unwrap();
        assert!(verify_modulus_result(&u12, &r, &caps()).unwrap());
    }

    #[test]
    fn reciprocal_energy_identity_tp() {
        // Mod₂(B) times the minimum energy over Adm(Θ) equals 1
        let tp = fixtures::tp();
        let r = modulus::mod2(&tp, &caps()).unwrap();
        let theta = fulkerson_blocker(&tp, &caps()).unwrap();
        let rows: Vec<Density> = theta.into_iter().map(|b| b.vector).collect();
        let (energy, eta) = min_energy_over_rows(&rows, 4).unwrap();
        assert_eq!(&r.mod2 * &energy, rint(1));
        assert_eq!(energy, r.meo);
        // the minimizer is η* itself for the base-family blocker
        assert_eq!(eta, r.eta);
    }

    #[test]
    fn vertex_enumeration_matches_blocker_tp() {
        let tp = fixtures::tp();
        let vertices = admissible_extreme_points(&tp, &caps()).unwrap();
        let theta = fulkerson_blocker(&tp, &caps()).unwrap();
        assert_eq!(vertices.len(), theta.len());
        for b in &theta {
            assert!(vertices.contains(&b.vector));
        }
    }

    #[test]
    fn vertex_enumeration_matches_blocker_k4() {
        let k4 = fixtures::k4();
        let vertices = admissible_extreme_points(&k4, &caps()).unwrap();
        let theta = fulkerson_blocker(&k4, &caps()).unwrap();
        assert_eq!(vertices.len(), theta.len());
        for b in &theta {
            assert!(vertices.contains(&b.vector));
        }
    }

    #[test]
    fn reciprocal_energy_identity_k4() {
        let k4 = fixtures::k4();
        let r = modulus::mod2(&k4, &caps()).unwrap();
        let theta = fulkerson_blocker(&k4, &caps()).unwrap();
        let rows: Vec<Density> = theta.iter().map(|b| b.vector.clone()).collect();
        let (energy, minimizer) = min_energy_over_rows(&rows, k4.size()).unwrap();
        assert_eq!(&r.mod2 * &energy, rint(1));
        assert_eq!(minimizer, r.eta);
    }
}
