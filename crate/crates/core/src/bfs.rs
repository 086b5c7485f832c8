//! Level-synchronous isometry BFS over the Cayley graph of GL(n,2).
//!
//! Only one canonical representative per orbit is stored. Each new
//! representative contributes its orbit size to the sphere of its level the
//! first time it is inserted. Because every generator is an involution, an
//! edge joins two vertices whose levels differ by at most one, so the
//! visited check only needs the previous, current and next levels.

use std::collections::HashSet;
use std::fmt;

use dashmap::mapref::entry::Entry;
use dashmap::DashMap;
use num_bigint::BigUint;
use rayon::prelude::*;

use crate::bounds::gl_order;
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, Circuit, Transvection, MAX_ORDER};
use crate::isometry::{canonicalize, IsometrySpec};

/// Keys processed per rayon task when expanding a frontier.
const CHUNK: usize = 64;

/// Optional stopping rules for an exploration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    /// Deepest level to record.
    pub max_depth: Option<usize>,
    /// Cap on the number of stored representatives.
    pub max_orbits: Option<usize>,
    /// Worker count; `None` uses the global rayon pool.
    pub threads: Option<usize>,
    /// When false only per-level counts are kept ("streaming" mode).
    pub retain_distances: bool,
}

impl Default for SearchLimits {
    fn default() -> Self {
        Self { max_depth: None, max_orbits: None, threads: None, retain_distances: true }
    }
}

impl SearchLimits {
    pub fn depth(d: usize) -> Self {
        Self { max_depth: Some(d), ..Self::default() }
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = Some(threads);
        self
    }

    fn validate(&self) -> Result<()> {
        if self.max_orbits == Some(0) || self.threads == Some(0) {
            return Err(Error::InvalidArgument("limits must be positive".into()));
        }
        Ok(())
    }
}

/// Sorted `(canonical key, distance)` pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DistanceTable {
    entries: Vec<(u64, u8)>,
}

impl DistanceTable {
    /// Rejects unsorted or duplicated keys.
    pub fn from_sorted(entries: Vec<(u64, u8)>) -> Result<Self> {
        if entries.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::Format("distance entries are not strictly sorted".into()));
        }
        Ok(Self { entries })
    }

    pub fn get(&self, key: u64) -> Option<u8> {
        self.entries
            .binary_search_by_key(&key, |e| e.0)
            .ok()
            .map(|i| self.entries[i].1)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(u64, u8)] {
        &self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, u8)> + '_ {
        self.entries.iter().copied()
    }
}

/// Output of [`isometry_bfs`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplorationResult {
    pub n: usize,
    pub spec: IsometrySpec,
    /// Empty in streaming mode.
    pub dist: DistanceTable,
    pub sphere_sizes: Vec<BigUint>,
    pub orbit_counts: Vec<u64>,
    /// The whole group was exhausted.
    pub complete: bool,
    /// The last recorded level was fully expanded.
    pub last_level_complete: bool,
}

impl ExplorationResult {
    /// Largest recorded distance.
    pub fn depth(&self) -> usize {
        self.sphere_sizes.len().saturating_sub(1)
    }

    /// Largest distance whose sphere size is exact.
    pub fn exact_depth(&self) -> Option<usize> {
        if self.last_level_complete {
            Some(self.depth())
        } else {
            self.depth().checked_sub(1)
        }
    }

    pub fn diameter(&self) -> Option<usize> {
        self.complete.then(|| self.depth())
    }

    pub fn total_elements(&self) -> BigUint {
        self.sphere_sizes.iter().sum()
    }

    pub fn total_orbits(&self) -> u64 {
        self.orbit_counts.iter().sum()
    }

    /// Sphere size at `d` if it is exact.
    pub fn sphere(&self, d: usize) -> Option<&BigUint> {
        if self.exact_depth().is_some_and(|e| d <= e) {
            self.sphere_sizes.get(d)
        } else if self.complete {
            Some(&ZERO)
        } else {
            None
        }
    }
}

static ZERO: BigUint = BigUint::ZERO;

/// Per-level progress line.
#[derive(Clone, Debug)]
pub struct LevelReport {
    pub depth: usize,
    pub orbits: u64,
    pub elements: BigUint,
    pub stored_keys: usize,
    pub memory_bytes: usize,
}

impl fmt::Display for LevelReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "d={} orbits={} elements={} stored={} mem~{:.1}MiB",
            self.depth,
            self.orbits,
            self.elements,
            self.stored_keys,
            self.memory_bytes as f64 / (1024.0 * 1024.0)
        )
    }
}

/// Sphere-size accumulator that starts in 64 bits and spills to a big
/// integer instead of wrapping.
#[derive(Default)]
struct Tally {
    small: u64,
    big: BigUint,
}

impl Tally {
    fn add(&mut self, x: u64) {
        match self.small.checked_add(x) {
            Some(s) => self.small = s,
            None => {
                self.big += self.small;
                self.small = x;
            }
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.big += other.big;
        self.add(other.small);
        self
    }

    fn total(self) -> BigUint {
        self.big + self.small
    }
}

fn check_order(n: usize) -> Result<()> {
    if (1..=MAX_ORDER).contains(&n) {
        Ok(())
    } else {
        Err(Error::OrderOutOfRange(n))
    }
}

fn run_in_pool<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(f()),
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|e| Error::InvalidArgument(e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}

pub fn isometry_bfs(n: usize, spec: IsometrySpec, limits: &SearchLimits) -> Result<ExplorationResult> {
    isometry_bfs_with_progress(n, spec, limits, &mut |_| {})
}

/// [`isometry_bfs`] calling `progress` once per completed level.
pub fn isometry_bfs_with_progress(
    n: usize,
    spec: IsometrySpec,
    limits: &SearchLimits,
    progress: &mut (dyn FnMut(&LevelReport) + Send),
) -> Result<ExplorationResult> {
    check_order(n)?;
    limits.validate()?;
    run_in_pool(limits.threads, || explore(n, spec, limits, progress))
}

fn explore(
    n: usize,
    spec: IsometrySpec,
    limits: &SearchLimits,
    progress: &mut (dyn FnMut(&LevelReport) + Send),
) -> ExplorationResult {
    let identity = BitMatrix::identity_unchecked(n).bits();
    let generators: Vec<Transvection> = Transvection::all(n).collect();
    let group_order = gl_order(n);

    let mut levels: Vec<Vec<u64>> = Vec::new();
    let mut sphere_sizes = vec![BigUint::from(1u32)];
    let mut orbit_counts = vec![1u64];
    let mut stored = 1usize;
    let mut prev: Vec<u64> = Vec::new();
    let mut cur: Vec<u64> = vec![identity];
    if limits.retain_distances {
        levels.push(cur.clone());
    }
    let report = |depth: usize, orbits: u64, elements: &BigUint, stored: usize, window: usize| LevelReport {
        depth,
        orbits,
        elements: elements.clone(),
        stored_keys: stored,
        memory_bytes: stored * 9 + window * 16,
    };
    progress(&report(0, 1, &sphere_sizes[0], stored, 1));

    let (complete, last_level_complete) = loop {
        let depth = sphere_sizes.len() - 1;
        if limits.max_depth.is_some_and(|m| depth >= m) {
            let total: BigUint = sphere_sizes.iter().sum();
            break (total == group_order, true);
        }

        let next: DashMap<u64, u32> = DashMap::new();
        let tally = cur
            .par_chunks(CHUNK)
            .map(|chunk| {
                let mut tally = Tally::default();
                for &k in chunk {
                    let m = BitMatrix::from_raw_unchecked(n, k);
                    for &t in &generators {
                        let o = canonicalize(&m.apply(t), spec);
                        let key = o.key.bits();
                        if prev.binary_search(&key).is_ok() || cur.binary_search(&key).is_ok() {
                            continue;
                        }
                        if let Entry::Vacant(v) = next.entry(key) {
                            v.insert(o.orbit_size as u32);
                            tally.add(o.orbit_size);
                        }
                    }
                }
                tally
            })
            .reduce(Tally::default, Tally::merge);

        if next.is_empty() {
            break (true, true);
        }
        let mut next: Vec<(u64, u32)> = next.into_iter().collect();
        next.sort_unstable();

        let mut size = tally.total();
        let mut truncated = false;
        if let Some(cap) = limits.max_orbits {
            if stored + next.len() > cap {
                next.truncate(cap.saturating_sub(stored));
                size = next.iter().map(|&(_, s)| BigUint::from(s)).sum();
                truncated = true;
            }
        }
        if truncated && next.is_empty() {
            break (false, true);
        }

        let keys: Vec<u64> = next.iter().map(|&(k, _)| k).collect();
        stored += keys.len();
        sphere_sizes.push(size);
        orbit_counts.push(keys.len() as u64);
        let d = sphere_sizes.len() - 1;
        progress(&report(d, keys.len() as u64, &sphere_sizes[d], stored, cur.len() + keys.len()));
        if limits.retain_distances {
            levels.push(keys.clone());
        }
        if truncated {
            break (false, false);
        }
        prev = std::mem::replace(&mut cur, keys);
    };

    let mut entries: Vec<(u64, u8)> = levels
        .iter()
        .enumerate()
        .flat_map(|(d, keys)| keys.iter().map(move |&k| (k, d as u8)))
        .collect();
    entries.par_sort_unstable();

    ExplorationResult {
        n,
        spec,
        dist: DistanceTable { entries },
        sphere_sizes,
        orbit_counts,
        complete,
        last_level_complete,
    }
}

/// `delta(M)` read from an exploration.
pub fn distance_of(res: &ExplorationResult, m: &BitMatrix) -> Result<usize> {
    if m.order() != res.n {
        return Err(Error::DimensionMismatch { left: m.order(), right: res.n });
    }
    let key = canonicalize(m, res.spec).key.bits();
    match res.dist.get(key) {
        Some(d) => Ok(d as usize),
        None if res.complete && !res.dist.is_empty() => {
            Err(Error::Inconsistent(format!("key {key:#x} missing from a complete exploration")))
        }
        None => Err(Error::BeyondHorizon { depth: res.depth() }),
    }
}

/// A minimal circuit for `m` by greedy descent through the distance table.
/// Generators are tried in `(i, j)` lexicographic order; the first one that
/// lowers the distance is taken.
pub fn synthesize(res: &ExplorationResult, m: &BitMatrix) -> Result<Circuit> {
    let mut d = distance_of(res, m)?;
    let mut x = *m;
    let mut found = Vec::with_capacity(d);
    while d > 0 {
        let step = Transvection::all(res.n)
            .find(|&t| matches!(distance_of(res, &x.apply(t)), Ok(e) if e + 1 == d))
            .ok_or_else(|| Error::Inconsistent(format!("no descent from {x} at distance {d}")))?;
        x = x.apply(step);
        found.push(step);
        d -= 1;
    }
    // T_k ... T_1 M = I, so M = T_1 ... T_k and the circuit applies T_k first.
    found.reverse();
    Circuit::new(res.n, found)
}

/// Every level of the unreduced ball of radius `depth` around `center`
/// (all levels when `depth` is `None`). Used as the backward half of the
/// bidirectional search and as a brute-force oracle.
pub fn plain_ball(center: &BitMatrix, depth: Option<usize>) -> Vec<Vec<BitMatrix>> {
    let n = center.order();
    let generators: Vec<Transvection> = Transvection::all(n).collect();
    let mut levels = vec![vec![*center]];
    let mut prev: HashSet<u64> = HashSet::new();
    let mut cur: HashSet<u64> = HashSet::from([center.bits()]);
    while depth.is_none_or(|d| levels.len() <= d) {
        let mut next = HashSet::new();
        let mut level = Vec::new();
        for m in levels.last().unwrap() {
            for &t in &generators {
                let h = m.apply(t);
                let b = h.bits();
                if !prev.contains(&b) && !cur.contains(&b) && next.insert(b) {
                    level.push(h);
                }
            }
        }
        if level.is_empty() {
            break;
        }
        level.sort_unstable();
        levels.push(level);
        prev = std::mem::replace(&mut cur, next);
    }
    levels
}

/// Result of [`bidirectional_distance`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BidirOutcome {
    Exact(usize),
    /// No meeting point within both horizons.
    AtLeast(usize),
}

impl fmt::Display for BidirOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BidirOutcome::Exact(d) => write!(f, "{d}"),
            BidirOutcome::AtLeast(d) => write!(f, ">={d}"),
        }
    }
}

/// Meet-in-the-middle distance: a reduced forward ball around `I_n` of
/// radius `fwd` and an unreduced backward ball around `target` of radius
/// `bwd`. Backward levels are scanned in order; the first level containing
/// an element of the forward ball yields the exact distance as the minimum
/// over that level. Orbit keys can be compared directly because distance
/// from the identity is constant on orbits.
pub fn bidirectional_distance(
    target: &BitMatrix,
    spec: IsometrySpec,
    fwd: usize,
    bwd: usize,
    limits: &SearchLimits,
) -> Result<BidirOutcome> {
    let n = target.order();
    check_order(n)?;
    target.validate()?;
    let forward_limits = SearchLimits { max_depth: Some(fwd), retain_distances: true, ..limits.clone() };
    let forward = isometry_bfs(n, spec, &forward_limits)?;
    if forward.complete {
        return distance_of(&forward, target).map(BidirOutcome::Exact);
    }
    let horizon = forward.exact_depth().unwrap_or(0);

    run_in_pool(limits.threads, || {
        let generators: Vec<Transvection> = Transvection::all(n).collect();
        let mut prev: HashSet<u64> = HashSet::new();
        let mut cur: Vec<BitMatrix> = vec![*target];
        let mut cur_set: HashSet<u64> = HashSet::from([target.bits()]);
        let mut b = 0usize;
        loop {
            let hit = cur
                .par_iter()
                .filter_map(|h| {
                    let key = canonicalize(h, spec).key.bits();
                    forward.dist.get(key).map(|d| d as usize).filter(|&d| d <= horizon)
                })
                .min();
            if let Some(f) = hit {
                return Ok(BidirOutcome::Exact(f + b));
            }
            if b == bwd {
                return Ok(BidirOutcome::AtLeast(horizon + b + 1));
            }
            let mut next_set = HashSet::new();
            let mut next = Vec::new();
            for m in &cur {
                for &t in &generators {
                    let h = m.apply(t);
                    if !prev.contains(&h.bits()) && !cur_set.contains(&h.bits()) && next_set.insert(h.bits()) {
                        next.push(h);
                    }
                }
            }
            if limits.max_orbits.is_some_and(|cap| next.len() > cap) || next.is_empty() {
                return Ok(BidirOutcome::AtLeast(horizon + b + 1));
            }
            prev = std::mem::replace(&mut cur_set, next_set);
            cur = next;
            b += 1;
        }
    })?
}

/// Number of elements in each sphere, without any reduction.
pub fn plain_sphere_sizes(n: usize) -> Result<Vec<u64>> {
    check_order(n)?;
    if n > 4 {
        return Err(Error::InvalidArgument("plain BFS is limited to n <= 4".into()));
    }
    Ok(plain_ball(&BitMatrix::identity_unchecked(n), None)
        .iter()
        .map(|l| l.len() as u64)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::Permutation;
    use num_traits::ToPrimitive;
    use crate::isometry::{act, Sign};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn sizes(res: &ExplorationResult) -> Vec<u64> {
        res.sphere_sizes.iter().map(|s| s.to_u64().unwrap()).collect()
    }

    fn full(n: usize, spec: IsometrySpec) -> ExplorationResult {
        isometry_bfs(n, spec, &SearchLimits::default()).unwrap()
    }

    #[test]
    fn n1_is_trivial() {
        let r = full(1, IsometrySpec::SymOnly);
        assert_eq!(sizes(&r), vec![1]);
        assert!(r.complete);
        assert_eq!(r.diameter(), Some(0));
    }

    #[test]
    fn n2_and_n3_tables() {
        let r = full(2, IsometrySpec::SymOnly);
        assert_eq!(sizes(&r), vec![1, 2, 2, 1]);
        assert_eq!(r.orbit_counts, vec![1, 1, 1, 1]);
        assert_eq!(r.diameter(), Some(3));

        let r = full(3, IsometrySpec::SymOnly);
        assert_eq!(sizes(&r), vec![1, 6, 24, 51, 60, 24, 2]);
        assert_eq!(r.orbit_counts, vec![1, 1, 5, 9, 12, 4, 1]);
        assert_eq!(r.dist.len(), 33);
    }

    #[test]
    fn sym_ti_gives_same_spheres_with_fewer_orbits() {
        for n in 2..=4 {
            let a = full(n, IsometrySpec::SymOnly);
            let b = full(n, IsometrySpec::SymAndTI);
            assert_eq!(a.sphere_sizes, b.sphere_sizes);
            assert!(b.dist.len() <= a.dist.len());
        }
    }

    #[test]
    fn reduced_distances_match_plain_bfs() {
        for n in 2..=4 {
            let plain = plain_ball(&BitMatrix::identity(n).unwrap(), None);
            for spec in [IsometrySpec::SymOnly, IsometrySpec::SymAndTI] {
                let res = full(n, spec);
                assert_eq!(sizes(&res), plain.iter().map(|l| l.len() as u64).collect::<Vec<_>>());
                for (d, level) in plain.iter().enumerate() {
                    for m in level {
                        assert_eq!(distance_of(&res, m).unwrap(), d);
                    }
                }
            }
        }
    }

    #[test]
    fn thread_count_does_not_change_results() {
        let one = isometry_bfs(4, IsometrySpec::SymOnly, &SearchLimits::default().with_threads(1)).unwrap();
        let many = isometry_bfs(4, IsometrySpec::SymOnly, &SearchLimits::default().with_threads(8)).unwrap();
        assert_eq!(one, many);
    }

    #[test]
    fn depth_limit_keeps_exact_prefix() {
        let full4 = full(4, IsometrySpec::SymOnly);
        let part = isometry_bfs(4, IsometrySpec::SymOnly, &SearchLimits::depth(3)).unwrap();
        assert!(!part.complete && part.last_level_complete);
        assert_eq!(part.sphere_sizes[..], full4.sphere_sizes[..4]);
        for (k, d) in part.dist.iter() {
            assert_eq!(full4.dist.get(k), Some(d));
        }
        let far: BitMatrix = "0001,0010,0100,1000".parse().unwrap();
        assert!(matches!(distance_of(&part, &far), Err(Error::BeyondHorizon { .. })));

        // depth limit at the diameter still detects completion
        let at_diam = isometry_bfs(3, IsometrySpec::SymOnly, &SearchLimits::depth(6)).unwrap();
        assert!(at_diam.complete);
    }

    #[test]
    fn orbit_cap_truncates_mid_level() {
        let limits = SearchLimits { max_orbits: Some(10), ..SearchLimits::default() };
        let r = isometry_bfs(3, IsometrySpec::SymOnly, &limits).unwrap();
        assert!(!r.complete && !r.last_level_complete);
        assert_eq!(r.dist.len(), 10);
        assert_eq!(r.exact_depth(), Some(2));
        let full3 = full(3, IsometrySpec::SymOnly);
        for (k, d) in r.dist.iter() {
            assert_eq!(full3.dist.get(k), Some(d));
        }
        assert_eq!(r.sphere_sizes[..3], full3.sphere_sizes[..3]);
    }

    #[test]
    fn streaming_mode_keeps_counts_only() {
        let limits = SearchLimits { retain_distances: false, ..SearchLimits::default() };
        let r = isometry_bfs(4, IsometrySpec::SymOnly, &limits).unwrap();
        assert!(r.dist.is_empty());
        assert_eq!(r.sphere_sizes, full(4, IsometrySpec::SymOnly).sphere_sizes);
    }

    #[test]
    fn distance_examples() {
        let r3 = full(3, IsometrySpec::SymOnly);
        assert_eq!(distance_of(&r3, &BitMatrix::identity(3).unwrap()).unwrap(), 0);
        assert_eq!(distance_of(&r3, &"111,010,011".parse().unwrap()).unwrap(), 2);
        let r2 = full(2, IsometrySpec::SymOnly);
        assert_eq!(distance_of(&r2, &"01,10".parse().unwrap()).unwrap(), 3);
        assert!(matches!(
            distance_of(&r2, &BitMatrix::identity(3).unwrap()),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn isometries_preserve_distance() {
        for n in 3..=4 {
            let res = full(n, IsometrySpec::SymOnly);
            let perms = Permutation::all(n);
            let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
            for _ in 0..200 {
                let m = BitMatrix::random(n, &mut rng).unwrap();
                let d = distance_of(&res, &m).unwrap();
                let sigma = perms[rng.gen_range(0..perms.len())];
                for xi in [Sign::Plus, Sign::Minus] {
                    assert_eq!(distance_of(&res, &act(&sigma, xi, &m).unwrap()).unwrap(), d);
                }
                assert_eq!(distance_of(&res, &m.invert().unwrap()).unwrap(), d);
            }
        }
    }

    #[test]
    fn synthesis_round_trip() {
        let res = full(4, IsometrySpec::SymOnly);
        assert!(synthesize(&res, &BitMatrix::identity(4).unwrap()).unwrap().is_empty());
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..300 {
            let m = BitMatrix::random(4, &mut rng).unwrap();
            let c = synthesize(&res, &m).unwrap();
            assert_eq!(c.eval(), m);
            assert_eq!(c.len(), distance_of(&res, &m).unwrap());
        }
        let r3 = full(3, IsometrySpec::SymOnly);
        let fig: BitMatrix = "111,010,011".parse().unwrap();
        let c = synthesize(&r3, &fig).unwrap();
        assert_eq!((c.len(), c.eval()), (2, fig));
    }

    #[test]
    fn bidirectional_small_cases() {
        let id = BitMatrix::identity(4).unwrap();
        let lim = SearchLimits::default();
        assert_eq!(bidirectional_distance(&id, IsometrySpec::SymOnly, 2, 2, &lim).unwrap(), BidirOutcome::Exact(0));
        let cyc = Permutation::parse_cycles(4, "(1 2 3 4)").unwrap().matrix();
        assert_eq!(
            bidirectional_distance(&cyc, IsometrySpec::SymOnly, 5, 4, &lim).unwrap(),
            BidirOutcome::Exact(9)
        );
        // horizons too short: certified lower bound only
        assert_eq!(
            bidirectional_distance(&cyc, IsometrySpec::SymOnly, 4, 3, &lim).unwrap(),
            BidirOutcome::AtLeast(8)
        );
        // agrees with full BFS on random targets
        let res = full(4, IsometrySpec::SymOnly);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..30 {
            let m = BitMatrix::random(4, &mut rng).unwrap();
            let d = distance_of(&res, &m).unwrap();
            let got = bidirectional_distance(&m, IsometrySpec::SymAndTI, 3, 3, &lim).unwrap();
            if d <= 6 {
                assert_eq!(got, BidirOutcome::Exact(d));
            } else {
                assert_eq!(got, BidirOutcome::AtLeast(7));
            }
        }
    }

    #[test]
    fn tally_spills_instead_of_wrapping() {
        let mut t = Tally::default();
        t.add(u64::MAX);
        t.add(5);
        let other = {
            let mut o = Tally::default();
            o.add(u64::MAX - 1);
            o
        };
        let total = t.merge(other).total();
        assert_eq!(total, BigUint::from(u64::MAX) * 2u32 + 4u32);
    }

    #[test]
    fn plain_bfs_oracle_sizes() {
        assert_eq!(plain_sphere_sizes(3).unwrap(), vec![1, 6, 24, 51, 60, 24, 2]);
        assert!(plain_sphere_sizes(5).is_err());
    }
}
