//! Randomized invariant checks across all rank-oracle backends at desk scale.
//! Instances stay at seven or fewer elements so every subset scan is exhaustive.

use basemod::matroid::{bits, Caps, Mask, Matroid, RankTable};
use basemod::{duality, modulus, partition, random, rint};
use proptest::prelude::*;

fn caps() -> Caps {
    Caps::default()
}

/// A loopless matroid of any backend: uniform, graphic, or linear.
fn arb_matroid() -> impl Strategy<Value = Matroid> {
    prop_oneof![
        (1usize..=7)
            .prop_flat_map(|n| (1u64..=n as u64, Just(n)))
            .prop_map(|(k, n)| Matroid::uniform(k, n).unwrap()),
        (any::<u64>(), 2usize..=7)
            .prop_map(|(seed, edges)| random::random_graphic(seed, edges).unwrap()),
        (any::<u64>(), 1usize..=6)
            .prop_map(|(seed, cols)| random::random_linear(seed, cols).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    /// Rank bounds, unit increase, monotonicity, and submodularity over every
    /// subset pair.
    #[test]
    fn rank_axioms_hold(m in arb_matroid()) {
        let t = RankTable::build(&m, &caps()).unwrap();
        let full = m.full_mask();
        for x in 0..=full {
            let rx = t.rank(x);
            prop_assert!(rx <= x.count_ones() as u64);
            for e in bits(full & !x) {
                let up = t.rank(x | (1 << e));
                prop_assert!(rx <= up && up <= rx + 1);
            }
        }
        for x in 0..=full {
            for y in 0..=full {
                prop_assert!(t.rank(x) + t.rank(y) >= t.rank(x | y) + t.rank(x & y));
            }
        }
    }

    /// The dual oracle realizes the corank formula against its parent, and
    /// dualizing twice restores the original rank function.
    #[test]
    fn dual_rank_and_involution(m in arb_matroid()) {
        let d = m.dual();
        let dd = d.dual();
        let full = m.full_mask();
        let r = m.rank(full);
        for x in 0..=full {
            let corank = x.count_ones() as u64 + m.rank(full & !x) - r;
            prop_assert_eq!(d.rank(x), corank);
            prop_assert_eq!(dd.rank(x), m.rank(x));
        }
    }

    /// Single-step deletion and contraction minors agree with the parent
    /// oracle under the usual rank formulas.
    #[test]
    fn minor_ranks_match_parent(m in arb_matroid(), sel in any::<Mask>()) {
        let full = m.full_mask();
        let cut = sel & full;
        prop_assume!(cut != 0 && cut != full);
        let keep: Vec<usize> = bits(full & !cut).collect();
        let lift = |x: Mask| -> Mask {
            bits(x).fold(0, |acc, j| acc | (1 << keep[j]))
        };

        let del = m.delete(cut).unwrap();
        let con = m.contract(cut).unwrap();
        let r_cut = m.rank(cut);
        for x in 0..(1u64 << keep.len()) {
            prop_assert_eq!(del.rank(x), m.rank(lift(x)));
            prop_assert_eq!(con.rank(x), m.rank(lift(x) | cut) - r_cut);
        }
    }

    /// Feeding the enumerated bases back through the explicit-base backend
    /// reproduces the rank function exactly.
    #[test]
    fn explicit_bases_reproduce_ranks(m in arb_matroid()) {
        let bases = m.enumerate_bases(&caps()).unwrap();
        let eb = Matroid::from_bases(m.ground().clone(), bases).unwrap();
        for x in 0..=m.full_mask() {
            prop_assert_eq!(eb.rank(x), m.rank(x));
        }
    }

    /// η* carries total mass r(E), its energy dominates the homogeneous bound
    /// with equality only in the constant case, Mod₂ is the reciprocal of the
    /// overlap, and ρ* is admissible with a tight minimizing base.
    #[test]
    fn optimal_density_invariants(m in arb_matroid()) {
        let res = modulus::mod2(&m, &caps()).unwrap();
        let r = rint(m.rank(m.full_mask()) as i64);
        let n = rint(m.size() as i64);
        prop_assert_eq!(res.eta.sum(), r.clone());
        prop_assert_eq!(&res.mod2 * &res.meo, rint(1));

        let bound = &r * &r / &n;
        let energy = res.eta.energy2();
        prop_assert!(energy >= bound);
        let constant = res.eta.0.iter().all(|v| *v == res.eta.0[0]);
        prop_assert_eq!(energy == bound, constant);

        let adm = modulus::is_admissible(&m, &res.rho).unwrap();
        prop_assert!(adm.ok);
        prop_assert_eq!(adm.min_usage, rint(1));
    }

    /// The extreme values of η* are reciprocal to strength and fractional
    /// arboricity, and both match their packing/covering LP values.
    #[test]
    fn density_extremes_bind_lp_values(m in arb_matroid()) {
        let t = RankTable::build(&m, &caps()).unwrap();
        let s = partition::strength(&t).unwrap();
        let d = partition::arboricity(&t).unwrap();
        let res = modulus::mod2(&m, &caps()).unwrap();
        prop_assert_eq!(&s.value, &res.eta.max().clone().recip());
        prop_assert_eq!(&d.value, &res.eta.min().clone().recip());

        let pk = duality::packing_value(&m, &caps()).unwrap();
        let cv = duality::covering_value(&m, &caps()).unwrap();
        prop_assert_eq!(pk.value, s.value);
        prop_assert_eq!(cv.value, d.value);
    }

    /// The closed-form p-modulus collapses to the quadratic modulus at p = 2.
    #[test]
    fn modp_collapses_to_mod2(m in arb_matroid()) {
        let defl = partition::deflate(&m, &caps()).unwrap();
        let res = modulus::mod2(&m, &caps()).unwrap();
        let mp = modulus::mod_p(&defl, &rint(2)).unwrap();
        prop_assert_eq!(mp.value_exact.unwrap(), res.mod2);
        prop_assert_eq!(mp.rho_exact.unwrap(), res.rho);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 16, ..ProptestConfig::default() })]

    /// Optimal densities of a matroid and its loop-deleted dual sum to one
    /// whenever both families of bases are nondegenerate.
    #[test]
    fn dual_density_identity(seed in any::<u64>(), edges in 2usize..=7) {
        let m = random::random_graphic(seed, edges).unwrap();
        let r = m.rank(m.full_mask());
        prop_assume!(r > 0 && r < m.size() as u64);
        let id = duality::dual_eta_identity(&m, &caps()).unwrap();
        for i in 0..m.size() {
            prop_assert_eq!(&id.eta.0[i] + &id.eta_dual.0[i], rint(1));
        }
    }

    /// The overlap splits additively across certified Beurling sets.
    #[test]
    fn serial_rule_additivity(seed in any::<u64>(), edges in 3usize..=7) {
        let m = random::random_graphic(seed, edges).unwrap();
        let t = RankTable::build(&m, &caps()).unwrap();
        let res = modulus::mod2(&m, &caps()).unwrap();
        let sets = partition::beurling_sets(&t, &res.eta, &res.fair_support).unwrap();
        for x in sets.into_iter().take(4) {
            let sp = partition::serial_split(&m, x, &res, &caps()).unwrap();
            prop_assert_eq!(&sp.left_meo + &sp.right_meo, res.meo.clone());
        }
    }
}
