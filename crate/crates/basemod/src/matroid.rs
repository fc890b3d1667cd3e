//! Ground sets and matroids presented by exact rank oracles.
//!
//! A matroid lives on an ordered ground set of at most 63 labelled elements,
//! so subsets are `u64` bitmasks throughout. Concrete backends: uniform,
//! graphic, linear (rational matrix), and explicit base lists; minors and
//! duals wrap a parent matroid and answer rank queries through the standard
//! formulas r_{M/C}(Y) = r(Y ∪ C) − r(C) and r*(X) = |X| − r(E) + r(E − X).
//!
//! Top-level constructors reject loops; minors and duals may carry them and
//! the modulus routines re-check looplessness where they need it. All
//! arithmetic in this module is exact integer/rational.

use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::linalg;
use crate::Rat;

/// Subset of the ground set as a bitmask over element indices.
pub type Mask = u64;

/// Iterate the element indices of a mask in ascending order.
pub fn bits(mask: Mask) -> impl Iterator<Item = usize> {
    let mut rest = mask;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(i)
        }
    })
}

/// Enumeration and solver caps. Defaults match the CLI defaults.
#[derive(Debug, Clone)]
pub struct Caps {
    /// Largest ground set for which exhaustive enumeration is attempted.
    pub max_elements: usize,
    /// Largest number of subsets a scan may visit (2^|E| ≤ this).
    pub max_subsets: u64,
    /// Largest number of bases an enumeration may return.
    pub max_bases: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { max_elements: 20, max_subsets: 1 << 20, max_bases: 1_000_000 }
    }
}

impl Caps {
    /// Error unless 2^n subsets fit under the subset cap.
    pub fn check_subsets(&self, n: usize) -> Result<()> {
        if n > self.max_elements {
            return Err(Error::Resource(format!(
                "element cap: |E| = {n} exceeds max_elements = {}",
                self.max_elements
            )));
        }
        let count = 1u64.checked_shl(n as u32).unwrap_or(u64::MAX);
        if count > self.max_subsets {
            return Err(Error::Resource(format!(
                "subset cap: 2^{n} subsets exceed max_subsets = {}",
                self.max_subsets
            )));
        }
        Ok(())
    }
}

/// Ordered ground set of distinct element labels. Construction order is the
/// element order used for every enumeration and tie-break.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundSet {
    labels: Vec<String>,
}

impl GroundSet {
    pub fn new(labels: Vec<String>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::Domain("empty ground set".into()));
        }
        if labels.len() > 63 {
            return Err(Error::Domain(format!(
                "ground set has {} elements; at most 63 are supported",
                labels.len()
            )));
        }
        for (i, a) in labels.iter().enumerate() {
            if labels[..i].contains(a) {
                return Err(Error::Domain(format!("duplicate element label {a:?}")));
            }
        }
        Ok(GroundSet { labels })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction rejects empty ground sets
    }

    pub fn full_mask(&self) -> Mask {
        (1u64 << self.labels.len()) - 1
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Mask of the given labels; unknown labels are domain errors.
    pub fn mask_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<Mask> {
        let mut mask = 0u64;
        for l in labels {
            let i = self
                .index_of(l.as_ref())
                .ok_or_else(|| Error::Domain(format!("unknown element {:?}", l.as_ref())))?;
            mask |= 1 << i;
        }
        Ok(mask)
    }

    /// Labels of a mask in element order.
    pub fn labels_of(&self, mask: Mask) -> Vec<String> {
        bits(mask).map(|i| self.labels[i].clone()).collect()
    }
}

#[derive(Debug, Clone)]
enum Backend {
    /// U_{k,n}: rank min(k, |X|).
    Uniform { k: u64 },
    /// Cycle matroid of a multigraph; element i is the edge `edges[i]`.
    Graphic { nverts: usize, edges: Vec<(usize, usize)> },
    /// Column matroid of a rational matrix; element i is column `cols[i]`.
    Linear { cols: Vec<Vec<Rat>> },
    /// Matroid given by its list of bases (lexicographic index order).
    ExplicitBases { bases: Vec<Mask> },
    /// Minor of `parent`: contract `con` (parent coordinates), keep the
    /// parent elements `keep` in order. `r_con` caches r_parent(con).
    Minor { parent: Box<Matroid>, keep: Vec<usize>, con: Mask, r_con: u64 },
    /// Dual of `parent` on the same ground set.
    Dual { parent: Box<Matroid> },
}

/// A matroid: ground set plus exact rank oracle.
#[derive(Debug, Clone)]
pub struct Matroid {
    ground: GroundSet,
    backend: Backend,
    full_rank: u64,
}

impl fmt::Display for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match &self.backend {
            Backend::Uniform { k } => format!("uniform(k={k})"),
            Backend::Graphic { nverts, edges } => {
                format!("graphic({} vertices, {} edges)", nverts, edges.len())
            }
            Backend::Linear { cols } => format!("linear({} columns)", cols.len()),
            Backend::ExplicitBases { bases } => format!("bases({} listed)", bases.len()),
            Backend::Minor { .. } => "minor".into(),
            Backend::Dual { .. } => "dual".into(),
        };
        write!(f, "{} on {} elements, rank {}", kind, self.size(), self.full_rank)
    }
}

impl Matroid {
    // ----- constructors -----

    /// Uniform matroid U_{k,n} on labels e1..en.
    pub fn uniform(k: u64, n: usize) -> Result<Matroid> {
        let labels = (1..=n).map(|i| format!("e{i}")).collect();
        Matroid::uniform_on(k, GroundSet::new(labels)?)
    }

    /// Uniform matroid U_{k,|E|} on an explicit ground set.
    pub fn uniform_on(k: u64, ground: GroundSet) -> Result<Matroid> {
        if k == 0 {
            return Err(Error::Domain("uniform matroid with k = 0 is all loops".into()));
        }
        if k as usize > ground.len() {
            return Err(Error::Domain(format!(
                "uniform matroid k = {k} exceeds ground set size {}",
                ground.len()
            )));
        }
        let full = k.min(ground.len() as u64);
        Ok(Matroid { ground, backend: Backend::Uniform { k }, full_rank: full })
    }

    /// Cycle matroid of a multigraph. `edges[i] = (u, v, label)` with vertex
    /// names as opaque strings; parallel edges are fine, self-loops are loops
    /// and therefore rejected.
    pub fn graphic(edges: &[(String, String, String)]) -> Result<Matroid> {
        let labels: Vec<String> = edges.iter().map(|e| e.2.clone()).collect();
        let ground = GroundSet::new(labels)?;
        let mut verts: Vec<String> = Vec::new();
        let vid = |verts: &mut Vec<String>, name: &str| match verts
            .iter()
            .position(|w| w == name)
        {
            Some(i) => i,
            None => {
                verts.push(name.to_string());
                verts.len() - 1
            }
        };
        let mut pairs = Vec::with_capacity(edges.len());
        for (u, v, label) in edges {
            if u == v {
                return Err(Error::Domain(format!("edge {label:?} is a self-loop")));
            }
            let iu = vid(&mut verts, u);
            let iv = vid(&mut verts, v);
            pairs.push((iu, iv));
        }
        let backend = Backend::Graphic { nverts: verts.len(), edges: pairs };
        let mut m = Matroid { ground, backend, full_rank: 0 };
        m.full_rank = m.backend_rank(m.ground.full_mask());
        m.reject_loops()?;
        Ok(m)
    }

    /// Column matroid of a rational matrix; `cols[i]` is the column of
    /// element i and all columns must share a length.
    pub fn linear(ground: GroundSet, cols: Vec<Vec<Rat>>) -> Result<Matroid> {
        if cols.len() != ground.len() {
            return Err(Error::Domain("column count does not match ground set".into()));
        }
        let rows = cols.first().map(Vec::len).unwrap_or(0);
        if rows == 0 || cols.iter().any(|c| c.len() != rows) {
            return Err(Error::Domain("matrix columns must share a positive length".into()));
        }
        let mut m = Matroid { ground, backend: Backend::Linear { cols }, full_rank: 0 };
        m.full_rank = m.backend_rank(m.ground.full_mask());
        m.reject_loops()?;
        Ok(m)
    }

    /// Matroid from an explicit base list. Bases are stored in lexicographic
    /// index order; the base-exchange axiom is validated exhaustively while
    /// the number of ordered base pairs stays at most 10^4 (beyond that the
    /// caller's property tests take over).
    pub fn from_bases(ground: GroundSet, base_masks: Vec<Mask>) -> Result<Matroid> {
        if base_masks.is_empty() {
            return Err(Error::Domain("base list is empty".into()));
        }
        let mut bases = base_masks;
        bases.sort_by_key(|&b| bits(b).collect::<Vec<_>>());
        for w in bases.windows(2) {
            if w[0] == w[1] {
                return Err(Error::Domain(format!(
                    "duplicate base {{{}}}",
                    ground.labels_of(w[0]).join(",")
                )));
            }
        }
        let card = bases[0].count_ones();
        if card == 0 {
            return Err(Error::Domain("bases are empty sets (rank 0)".into()));
        }
        for &b in &bases {
            if b & !ground.full_mask() != 0 {
                return Err(Error::Internal("base outside ground set".into()));
            }
            if b.count_ones() != card {
                return Err(Error::Domain(format!(
                    "bases {{{}}} and {{{}}} differ in size",
                    ground.labels_of(bases[0]).join(","),
                    ground.labels_of(b).join(",")
                )));
            }
        }
        if bases.len() * bases.len() <= 10_000 {
            for &b1 in &bases {
                for &b2 in &bases {
                    for x in bits(b1 & !b2) {
                        let ok = bits(b2 & !b1)
                            .any(|y| bases.binary_search_by_key(
                                &bits((b1 & !(1 << x)) | (1 << y)).collect::<Vec<_>>(),
                                |&b| bits(b).collect::<Vec<_>>(),
                            )
                            .is_ok());
                        if !ok {
                            return Err(Error::Domain(format!(
                                "base exchange fails for bases {{{}}} and {{{}}} at element {:?}",
                                ground.labels_of(b1).join(","),
                                ground.labels_of(b2).join(","),
                                ground.label(x)
                            )));
                        }
                    }
                }
            }
        }
        let m = Matroid {
            full_rank: card as u64,
            ground,
            backend: Backend::ExplicitBases { bases },
        };
        m.reject_loops()?;
        Ok(m)
    }

    fn reject_loops(&self) -> Result<()> {
        for i in 0..self.size() {
            if self.rank(1 << i) == 0 {
                return Err(Error::Domain(format!(
                    "element {:?} is a loop",
                    self.ground.label(i)
                )));
            }
        }
        Ok(())
    }

    // ----- basic accessors -----

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn size(&self) -> usize {
        self.ground.len()
    }

    pub fn full_mask(&self) -> Mask {
        self.ground.full_mask()
    }

    /// r(E).
    pub fn full_rank(&self) -> u64 {
        self.full_rank
    }

    // ----- the rank oracle -----

    /// Exact rank of a subset.
    pub fn rank(&self, x: Mask) -> u64 {
        debug_assert_eq!(x & !self.full_mask(), 0, "subset outside ground set");
        self.backend_rank(x & self.full_mask())
    }

    fn backend_rank(&self, x: Mask) -> u64 {
        match &self.backend {
            Backend::Uniform { k } => (*k).min(x.count_ones() as u64),
            Backend::Graphic { nverts, edges } => {
                // touched vertices minus components = number of successful
                // union-find merges
                let mut parent: Vec<usize> = (0..*nverts).collect();
                fn find(parent: &mut [usize], mut a: usize) -> usize {
                    while parent[a] != a {
                        parent[a] = parent[parent[a]];
                        a = parent[a];
                    }
                    a
                }
                let mut merges = 0u64;
                for i in bits(x) {
                    let (u, v) = edges[i];
                    let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                    if ru != rv {
                        parent[ru] = rv;
                        merges += 1;
                    }
                }
                merges
            }
            Backend::Linear { cols } => {
                let selected: Vec<Vec<Rat>> = bits(x).map(|i| cols[i].clone()).collect();
                linalg::rat_rank(&selected) as u64
            }
            Backend::ExplicitBases { bases } => bases
                .iter()
                .map(|&b| (b & x).count_ones() as u64)
                .max()
                .unwrap_or(0),
            Backend::Minor { parent, keep, con, r_con } => {
                let mut up = *con;
                for i in bits(x) {
                    up |= 1 << keep[i];
                }
                parent.rank(up) - r_con
            }
            Backend::Dual { parent } => {
                // |X| + r(E − X) ≥ r(E) by submodularity, so this never underflows
                let co = parent.full_mask() & !x;
                x.count_ones() as u64 + parent.rank(co) - parent.full_rank()
            }
        }
    }

    pub fn is_independent(&self, x: Mask) -> bool {
        self.rank(x) == x.count_ones() as u64
    }

    pub fn is_base(&self, x: Mask) -> bool {
        x.count_ones() as u64 == self.full_rank && self.is_independent(x)
    }

    /// Loops of this matroid (rank-0 singletons). Empty for any matroid that
    /// passed top-level construction, possibly nonempty for minors and duals.
    pub fn loops(&self) -> Mask {
        bits(self.full_mask())
            .filter(|&i| self.rank(1 << i) == 0)
            .fold(0, |acc, i| acc | (1 << i))
    }

    pub fn is_loopless(&self) -> bool {
        self.loops() == 0
    }

    /// Coloops: elements contained in every base.
    pub fn coloops(&self) -> Mask {
        bits(self.full_mask())
            .filter(|&i| self.rank(self.full_mask() & !(1 << i)) < self.full_rank)
            .fold(0, |acc, i| acc | (1 << i))
    }

    // ----- closure and circuits -----

    /// cl(X) = { y : r(X ∪ {y}) = r(X) }.
    pub fn closure(&self, x: Mask) -> Mask {
        let rx = self.rank(x);
        let mut cl = x;
        for y in bits(self.full_mask() & !x) {
            if self.rank(x | (1 << y)) == rx {
                cl |= 1 << y;
            }
        }
        cl
    }

    /// cl(E − X) = E − X?
    pub fn is_complement_closed(&self, x: Mask) -> bool {
        let co = self.full_mask() & !x;
        self.closure(co) == co
    }

    /// The unique circuit inside B ∪ {x} through x, for a base B and x ∉ B.
    /// Found by greedily shrinking B ∪ {x} while it stays dependent.
    pub fn fundamental_circuit(&self, base: Mask, x: usize) -> Result<Mask> {
        if !self.is_base(base) {
            return Err(Error::Domain("fundamental_circuit: not a base".into()));
        }
        if base & (1 << x) != 0 {
            return Err(Error::Domain(format!(
                "fundamental_circuit: element {:?} already in the base",
                self.ground.label(x)
            )));
        }
        let mut c = base | (1 << x);
        for e in bits(base) {
            let without = c & !(1 << e);
            if !self.is_independent(without) {
                c = without;
            }
        }
        Ok(c)
    }

    /// All circuits (minimal dependent sets). Exhaustive subset scan, test
    /// support only.
    pub fn circuits(&self, caps: &Caps) -> Result<Vec<Mask>> {
        let n = self.size();
        caps.check_subsets(n)?;
        let mut circuits = Vec::new();
        for x in 1..=self.full_mask() {
            if !self.is_independent(x)
                && bits(x).all(|e| self.is_independent(x & !(1 << e)))
            {
                circuits.push(x);
            }
        }
        Ok(circuits)
    }

    // ----- base enumeration -----

    /// All bases in lexicographic order of their sorted element indices.
    pub fn enumerate_bases(&self, caps: &Caps) -> Result<Vec<Mask>> {
        let n = self.size();
        if n > caps.max_elements {
            return Err(Error::Resource(format!(
                "element cap: |E| = {n} exceeds max_elements = {}",
                caps.max_elements
            )));
        }
        let r = self.full_rank as usize;
        let mut out = Vec::new();
        for combo in (0..n).combinations(r) {
            let mask = combo.iter().fold(0u64, |acc, &i| acc | (1 << i));
            if self.rank(mask) as usize == r {
                out.push(mask);
                if out.len() > caps.max_bases {
                    return Err(Error::Resource(format!(
                        "base cap: more than max_bases = {} bases",
                        caps.max_bases
                    )));
                }
            }
        }
        Ok(out)
    }

    /// Minimum-weight base under an arbitrary strict weak order on elements,
    /// by the matroid greedy algorithm. The comparator receives element
    /// indices; ties must be broken by index for determinism (callers pass
    /// `(w[a], a).cmp(&(w[b], b))`-style orders).
    pub fn min_weight_base_by<F>(&self, mut cmp: F) -> Mask
    where
        F: FnMut(usize, usize) -> std::cmp::Ordering,
    {
        let mut order: Vec<usize> = (0..self.size()).collect();
        order.sort_by(|&a, &b| cmp(a, b));
        let mut base = 0u64;
        let mut rank = 0;
        for i in order {
            let cand = base | (1 << i);
            let r = self.rank(cand);
            if r > rank {
                base = cand;
                rank = r;
            }
            if rank == self.full_rank {
                break;
            }
        }
        base
    }

    // ----- minors and duality -----

    fn minor(&self, del: Mask, con: Mask) -> Result<Matroid> {
        debug_assert_eq!(del & con, 0);
        let keep_mask = self.full_mask() & !(del | con);
        if keep_mask == 0 {
            return Err(Error::Domain("minor has an empty ground set".into()));
        }
        let keep: Vec<usize> = bits(keep_mask).collect();
        let labels = keep.iter().map(|&i| self.ground.label(i).to_string()).collect();
        let r_con = self.rank(con);
        let full_rank = self.rank(keep_mask | con) - r_con;
        Ok(Matroid {
            ground: GroundSet::new(labels)?,
            backend: Backend::Minor { parent: Box::new(self.clone()), keep, con, r_con },
            full_rank,
        })
    }

    /// M ∖ X. Fails only if X = E.
    pub fn delete(&self, x: Mask) -> Result<Matroid> {
        self.minor(x & self.full_mask(), 0)
    }

    /// M | X = M ∖ (E − X).
    pub fn restrict(&self, x: Mask) -> Result<Matroid> {
        self.delete(self.full_mask() & !x)
    }

    /// M / X. Fails only if X = E.
    pub fn contract(&self, x: Mask) -> Result<Matroid> {
        self.minor(0, x & self.full_mask())
    }

    /// The dual matroid M* with r*(X) = |X| − r(E) + r(E − X).
    pub fn dual(&self) -> Matroid {
        Matroid {
            ground: self.ground.clone(),
            full_rank: self.size() as u64 - self.full_rank,
            backend: Backend::Dual { parent: Box::new(self.clone()) },
        }
    }

    // ----- connectivity -----

    /// Connectedness via the separator criterion: some ∅ ⊊ X ⊊ E with
    /// r(X) + r(E − X) = r(E) disconnects M. Exhaustive over subsets.
    pub fn is_connected(&self, caps: &Caps) -> Result<bool> {
        let n = self.size();
        caps.check_subsets(n)?;
        if n == 1 {
            return Ok(true);
        }
        // X and E − X give the same test, so fixing element 0 in X halves the scan
        let full = self.full_mask();
        for half in 0..(1u64 << (n - 1)) {
            let x = (half << 1) | 1;
            if x == full {
                continue;
            }
            if self.rank(x) + self.rank(full & !x) == self.full_rank {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Rank of every subset, precomputed for scan-heavy routines.
pub struct RankTable {
    n: usize,
    full_rank: u64,
    r: Vec<u32>,
}

impl RankTable {
    pub fn build(m: &Matroid, caps: &Caps) -> Result<RankTable> {
        let n = m.size();
        caps.check_subsets(n)?;
        let r = (0..=m.full_mask()).map(|x| m.rank(x) as u32).collect();
        Ok(RankTable { n, full_rank: m.full_rank(), r })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn full_mask(&self) -> Mask {
        (1u64 << self.n) - 1
    }

    pub fn full_rank(&self) -> u64 {
        self.full_rank
    }

    pub fn rank(&self, x: Mask) -> u64 {
        self.r[x as usize] as u64
    }

    /// Rank in the contraction by `con`, for subsets of E − con.
    pub fn contracted_rank(&self, con: Mask, x: Mask) -> u64 {
        self.rank(x | con) - self.rank(con)
    }

    /// Connectivity of the contraction M/(E − X) restricted to X, via the
    /// separator criterion, entirely from the table.
    pub fn contraction_is_connected(&self, x: Mask) -> bool {
        let con = self.full_mask() & !x;
        let k = x.count_ones();
        if k <= 1 {
            return true;
        }
        let total = self.contracted_rank(con, x);
        // enumerate proper nonempty subsets a ⊊ x containing the lowest bit
        let low = x & x.wrapping_neg();
        let rest = x & !low;
        let mut sub = rest;
        loop {
            // `sub` ranges over subsets of rest, descending; a = sub | low
            let a = sub | low;
            if a != x && self.contracted_rank(con, a) + self.contracted_rank(con, x & !a) == total
            {
                return false;
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn graphic_rank_examples() {
        let tp = fixtures::tp();
        let abc = tp.ground().mask_of(&["a", "b", "c"]).unwrap();
        assert_eq!(tp.rank(abc), 2); // 3-edge cycle has rank 2
        assert_eq!(tp.rank(0), 0);
        assert_eq!(tp.full_rank(), 3);
        assert_eq!(fixtures::k4().full_rank(), 3);
        assert_eq!(fixtures::path3().full_rank(), 3);
    }

    #[test]
    fn dual_rank_example() {
        let tp = fixtures::tp();
        let d = tp.ground().mask_of(&["d"]).unwrap();
        assert_eq!(tp.dual().rank(d), 0); // 1 − 3 + r({a,b,c}) = 0
        let dual_bases = tp.dual().enumerate_bases(&caps()).unwrap();
        let expect: Vec<Mask> = ["a", "b", "c"]
            .iter()
            .map(|l| tp.ground().mask_of(&[*l]).unwrap())
            .collect();
        assert_eq!(dual_bases, expect);
    }

    #[test]
    fn closure_examples() {
        let tp = fixtures::tp();
        let g = tp.ground();
        let ab = g.mask_of(&["a", "b"]).unwrap();
        let abc = g.mask_of(&["a", "b", "c"]).unwrap();
        let d = g.mask_of(&["d"]).unwrap();
        assert_eq!(tp.closure(ab), abc);
        assert_eq!(tp.closure(tp.full_mask()), tp.full_mask());
        assert_eq!(tp.closure(d), d);
    }

    #[test]
    fn complement_closed_examples() {
        let tp = fixtures::tp();
        let g = tp.ground();
        assert!(tp.is_complement_closed(g.mask_of(&["a", "b"]).unwrap()));
        assert!(!tp.is_complement_closed(g.mask_of(&["a"]).unwrap()));
        assert!(tp.is_complement_closed(tp.full_mask()));
    }

    #[test]
    fn fundamental_circuit_examples() {
        let tp = fixtures::tp();
        let g = tp.ground();
        let b = g.mask_of(&["d", "a", "b"]).unwrap();
        let c = g.index_of("c").unwrap();
        assert_eq!(
            tp.fundamental_circuit(b, c).unwrap(),
            g.mask_of(&["a", "b", "c"]).unwrap()
        );

        let u12 = fixtures::u12();
        let e1 = u12.ground().mask_of(&["e1"]).unwrap();
        assert_eq!(tp.fundamental_circuit(b, g.index_of("a").unwrap()).is_err(), true);
        assert_eq!(u12.fundamental_circuit(e1, 1).unwrap(), u12.full_mask());
    }

    #[test]
    fn k4_fundamental_circuit_is_a_triangle() {
        let k4 = fixtures::k4();
        // star at vertex 0: edges 01, 02, 03 are elements 0, 1, 2
        let star = 0b000111;
        assert!(k4.is_base(star));
        // element 3 is edge 12; its fundamental circuit is {01, 02, 12}
        let c = k4.fundamental_circuit(star, 3).unwrap();
        assert_eq!(c, 0b001011);
    }

    #[test]
    fn enumerate_bases_examples() {
        let u12 = fixtures::u12();
        assert_eq!(u12.enumerate_bases(&caps()).unwrap(), vec![0b01, 0b10]);

        let tp = fixtures::tp();
        let g = tp.ground();
        let expect = vec![
            g.mask_of(&["a", "b", "d"]).unwrap(),
            g.mask_of(&["a", "c", "d"]).unwrap(),
            g.mask_of(&["b", "c", "d"]).unwrap(),
        ];
        assert_eq!(tp.enumerate_bases(&caps()).unwrap(), expect);

        assert_eq!(fixtures::k4().enumerate_bases(&caps()).unwrap().len(), 16);
        assert_eq!(fixtures::path3().enumerate_bases(&caps()).unwrap().len(), 1);
    }

    #[test]
    fn minors_examples() {
        let tp = fixtures::tp();
        let g = tp.ground();
        let abc = g.mask_of(&["a", "b", "c"]).unwrap();

        let contracted = tp.contract(abc).unwrap();
        assert_eq!(contracted.size(), 1);
        assert_eq!(contracted.full_rank(), 1);
        assert!(contracted.is_base(1));

        let triangle = tp.restrict(abc).unwrap();
        assert_eq!(triangle.full_rank(), 2);
        assert_eq!(triangle.enumerate_bases(&caps()).unwrap(), vec![0b011, 0b101, 0b110]);

        let u12 = fixtures::u12();
        assert_eq!(
            u12.dual().dual().enumerate_bases(&caps()).unwrap(),
            u12.enumerate_bases(&caps()).unwrap()
        );
    }

    #[test]
    fn deleting_everything_fails() {
        let tp = fixtures::tp();
        assert!(tp.delete(tp.full_mask()).is_err());
        assert!(tp.contract(tp.full_mask()).is_err());
    }

    #[test]
    fn connectivity_examples() {
        let tp = fixtures::tp();
        assert!(!tp.is_connected(&caps()).unwrap()); // {d} is a separator
        let abc = tp.ground().mask_of(&["a", "b", "c"]).unwrap();
        assert!(tp.restrict(abc).unwrap().is_connected(&caps()).unwrap());
        assert!(fixtures::u12().is_connected(&caps()).unwrap());
    }

    #[test]
    fn contraction_connectivity_matches_direct_test() {
        let tp = fixtures::tp();
        let t = RankTable::build(&tp, &caps()).unwrap();
        for x in 1..=tp.full_mask() {
            let con = tp.full_mask() & !x;
            let direct = if x == tp.full_mask() {
                tp.is_connected(&caps()).unwrap()
            } else {
                tp.contract(con).unwrap().is_connected(&caps()).unwrap()
            };
            assert_eq!(t.contraction_is_connected(x), direct, "X = {x:#b}");
        }
    }

    #[test]
    fn explicit_bases_backend_agrees_with_source() {
        let tp = fixtures::tp();
        let bases = tp.enumerate_bases(&caps()).unwrap();
        let m = Matroid::from_bases(tp.ground().clone(), bases.clone()).unwrap();
        for x in 0..=tp.full_mask() {
            assert_eq!(m.rank(x), tp.rank(x));
        }
        assert_eq!(m.enumerate_bases(&caps()).unwrap(), bases);
    }

    #[test]
    fn exchange_axiom_validation_rejects_non_matroid() {
        let g = GroundSet::new(vec!["a".into(), "b".into(), "c".into(), "d".into()]).unwrap();
        // {a,b} and {c,d} alone violate exchange
        let err = Matroid::from_bases(g, vec![0b0011, 0b1100]).unwrap_err();
        match err {
            Error::Domain(msg) => assert!(msg.contains("exchange"), "{msg}"),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn loops_rejected_at_top_level() {
        assert!(Matroid::uniform(0, 2).is_err());
        let edges = vec![("u".to_string(), "u".to_string(), "x".to_string())];
        assert!(Matroid::graphic(&edges).is_err());
        let g = GroundSet::new(vec!["a".into(), "b".into()]).unwrap();
        let zero = Rat::from_integer(0.into());
        let one = Rat::from_integer(1.into());
        assert!(Matroid::linear(g, vec![vec![one], vec![zero]]).is_err());
    }

    #[test]
    fn caps_are_enforced() {
        let m = Matroid::uniform(2, 8).unwrap();
        let tight = Caps { max_elements: 4, ..Caps::default() };
        match m.enumerate_bases(&tight) {
            Err(Error::Resource(msg)) => assert!(msg.contains("element cap")),
            other => panic!("unexpected {other:?}"),
        }
        let tiny = Caps { max_subsets: 16, ..Caps::default() };
        assert!(RankTable::build(&m, &tiny).is_err());
    }
}
