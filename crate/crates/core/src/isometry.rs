//! Isometry actions on GL(n,2): qubit relabelling (`S_n` by conjugation) and
//! optionally the transpose-inverse map (`C_2`).
//!
//! The canonical representative of an orbit is the image with the smallest
//! packed `u64` value. Orbit sizes come from the orbit-stabilizer relation
//! `|orbit| * |stab| = |J|`, with the stabilizer counted during the same scan
//! that finds the minimum.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{swap_indices, BitMatrix, Permutation, Transvection, MAX_ORDER};

/// Which isometry subgroup acts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum IsometrySpec {
    /// `S_n` acting by conjugation with permutation matrices.
    #[default]
    #[serde(rename = "sym")]
    SymOnly,
    /// `S_n x C_2`, adding the transpose-inverse map.
    #[serde(rename = "sym-ti")]
    SymAndTI,
}

impl IsometrySpec {
    /// `|J|` for order `n`.
    pub fn group_order(&self, n: usize) -> u64 {
        let fact: u64 = (1..=n as u64).product();
        match self {
            IsometrySpec::SymOnly => fact,
            IsometrySpec::SymAndTI => 2 * fact,
        }
    }

    pub fn tag(&self) -> u8 {
        match self {
            IsometrySpec::SymOnly => 0,
            IsometrySpec::SymAndTI => 1,
        }
    }

    pub fn from_tag(tag: u8) -> Result<Self> {
        match tag {
            0 => Ok(IsometrySpec::SymOnly),
            1 => Ok(IsometrySpec::SymAndTI),
            t => Err(Error::Format(format!("unknown isometry tag {t}"))),
        }
    }

    fn signs(&self) -> &'static [Sign] {
        match self {
            IsometrySpec::SymOnly => &[Sign::Plus],
            IsometrySpec::SymAndTI => &[Sign::Plus, Sign::Minus],
        }
    }
}

impl fmt::Display for IsometrySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IsometrySpec::SymOnly => "sym",
            IsometrySpec::SymAndTI => "sym-ti",
        })
    }
}

impl FromStr for IsometrySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sym" => Ok(IsometrySpec::SymOnly),
            "sym-ti" => Ok(IsometrySpec::SymAndTI),
            other => Err(Error::Parse(format!("unknown isometry group {other:?} (expected sym or sym-ti)"))),
        }
    }
}

/// Element of `C_2 = {+1, -1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    /// The transpose-inverse map.
    Minus,
}

/// Canonical key plus exact orbit size.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct OrbitInfo {
    pub key: BitMatrix,
    pub orbit_size: u64,
}

/// `(sigma, xi) . M`. The two actions commute, so composition order is irrelevant.
pub fn act(sigma: &Permutation, xi: Sign, m: &BitMatrix) -> Result<BitMatrix> {
    let base = match xi {
        Sign::Plus => *m,
        Sign::Minus => m.transpose_inverse(),
    };
    base.conjugate_by_perm(sigma)
}

/// Transposition sequence from Heap's algorithm: starting from any matrix and
/// conjugating successively by these transpositions visits each `S_n` image
/// exactly once.
fn heap_swaps(n: usize) -> &'static [(u8, u8)] {
    static TABLES: OnceLock<Vec<Vec<(u8, u8)>>> = OnceLock::new();
    let tables = TABLES.get_or_init(|| {
        (0..=MAX_ORDER)
            .map(|n| {
                let mut swaps = Vec::new();
                let mut c = vec![0usize; n];
                let mut i = 1;
                while i < n {
                    if c[i] < i {
                        let a = if i % 2 == 0 { 0 } else { c[i] };
                        swaps.push((a as u8, i as u8));
                        c[i] += 1;
                        i = 1;
                    } else {
                        c[i] = 0;
                        i += 1;
                    }
                }
                swaps
            })
            .collect()
    });
    &tables[n]
}

/// Walks the `S_n` orbit of `start`, returning the minimum image and how many
/// images equal `target`.
#[inline]
fn scan<const N: usize>(start: u64, target: u64, swaps: &[(u8, u8)]) -> (u64, u64) {
    let mut x = start;
    let mut min = x;
    let mut hits = (x == target) as u64;
    for &(a, b) in swaps {
        x = swap_indices(x, N, a as usize, b as usize);
        min = min.min(x);
        hits += (x == target) as u64;
    }
    (min, hits)
}

fn scan_dispatch(n: usize, start: u64, target: u64) -> (u64, u64) {
    let swaps = heap_swaps(n);
    match n {
        0 | 1 => (start, (start == target) as u64),
        2 => scan::<2>(start, target, swaps),
        3 => scan::<3>(start, target, swaps),
        4 => scan::<4>(start, target, swaps),
        5 => scan::<5>(start, target, swaps),
        6 => scan::<6>(start, target, swaps),
        7 => scan::<7>(start, target, swaps),
        8 => scan::<8>(start, target, swaps),
        _ => unreachable!("order checked by BitMatrix"),
    }
}

/// Canonical key and orbit size in one enumeration pass over `J`.
pub fn canonicalize(m: &BitMatrix, spec: IsometrySpec) -> OrbitInfo {
    let n = m.order();
    let target = m.bits();
    let (mut min, mut stab) = scan_dispatch(n, target, target);
    if spec == IsometrySpec::SymAndTI {
        let (min_ti, stab_ti) = scan_dispatch(n, m.transpose_inverse().bits(), target);
        min = min.min(min_ti);
        stab += stab_ti;
    }
    OrbitInfo {
        key: BitMatrix::from_raw_unchecked(n, min),
        orbit_size: spec.group_order(n) / stab,
    }
}

/// Reference canonicalizer: applies [`act`] for every `(sigma, xi)` in `J`
/// explicitly. Independent of the transposition walk used by [`canonicalize`].
pub fn canonicalize_brute_force(m: &BitMatrix, spec: IsometrySpec) -> OrbitInfo {
    let n = m.order();
    let mut min = u64::MAX;
    let mut stab = 0u64;
    for sigma in Permutation::all(n) {
        for &xi in spec.signs() {
            let img = act(&sigma, xi, m).expect("same order");
            min = min.min(img.bits());
            stab += (img == *m) as u64;
        }
    }
    OrbitInfo {
        key: BitMatrix::from_raw_unchecked(n, min),
        orbit_size: spec.group_order(n) / stab,
    }
}

/// Orbits of `{T * key : T in Sigma_n}`, deduplicated and sorted by key.
pub fn successor_orbits(key: &BitMatrix, spec: IsometrySpec) -> Vec<OrbitInfo> {
    let mut out: Vec<OrbitInfo> = Transvection::all(key.order())
        .map(|t| canonicalize(&key.apply(t), spec))
        .collect();
    out.sort_unstable_by_key(|o| o.key.bits());
    out.dedup_by_key(|o| o.key.bits());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::{BTreeMap, HashSet};

    fn t(i: usize, j: usize, n: usize) -> BitMatrix {
        Transvection::new(i, j).unwrap().matrix(n).unwrap()
    }

    /// All of GL(n,2) by filtering every bit pattern.
    fn all_elements(n: usize) -> Vec<BitMatrix> {
        (0..1u64 << (n * n))
            .map(|b| BitMatrix::from_raw_unchecked(n, b))
            .filter(BitMatrix::is_invertible)
            .collect()
    }

    #[test]
    fn heap_walk_visits_every_permutation_once() {
        for n in 1..=6 {
            // track where each label ends up to check the walk covers S_n
            let mut arrangement: Vec<u8> = (0..n as u8).collect();
            let mut seen = HashSet::new();
            seen.insert(arrangement.clone());
            for &(a, b) in heap_swaps(n) {
                arrangement.swap(a as usize, b as usize);
                assert!(seen.insert(arrangement.clone()));
            }
            assert_eq!(seen.len() as u64, IsometrySpec::SymOnly.group_order(n));
        }
    }

    #[test]
    fn act_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let m = BitMatrix::random(4, &mut rng).unwrap();
        assert_eq!(act(&Permutation::identity(4), Sign::Plus, &m).unwrap(), m);
        let s = Permutation::transposition(3, 1, 2).unwrap();
        assert_eq!(act(&s, Sign::Plus, &t(1, 2, 3)).unwrap(), t(2, 1, 3));
        assert_eq!(act(&Permutation::identity(3), Sign::Minus, &t(1, 3, 3)).unwrap(), t(3, 1, 3));
    }

    #[test]
    fn identity_is_its_own_orbit() {
        for n in 1..=8 {
            let i = BitMatrix::identity(n).unwrap();
            let o = canonicalize(&i, IsometrySpec::SymOnly);
            assert_eq!((o.key, o.orbit_size), (i, 1));
            assert_eq!(canonicalize(&i, IsometrySpec::SymAndTI).orbit_size, 1);
        }
    }

    #[test]
    fn transvections_form_one_orbit() {
        let keys: HashSet<_> = Transvection::all(3)
            .map(|tv| canonicalize(&tv.matrix(3).unwrap(), IsometrySpec::SymOnly))
            .collect();
        assert_eq!(keys.len(), 1);
        assert_eq!(keys.iter().next().unwrap().orbit_size, 6);
    }

    #[test]
    fn n3_orbit_partition() {
        let all = all_elements(3);
        assert_eq!(all.len(), 168);
        let mut orbits: BTreeMap<u64, u64> = BTreeMap::new();
        for m in &all {
            let o = canonicalize(m, IsometrySpec::SymOnly);
            orbits.insert(o.key.bits(), o.orbit_size);
        }
        assert_eq!(orbits.len(), 33);
        assert_eq!(orbits.values().sum::<u64>(), 168);
    }

    #[test]
    fn fast_path_matches_reference() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for n in 1..=6 {
            for _ in 0..300 {
                let m = BitMatrix::random(n, &mut rng).unwrap();
                for spec in [IsometrySpec::SymOnly, IsometrySpec::SymAndTI] {
                    assert_eq!(canonicalize(&m, spec), canonicalize_brute_force(&m, spec), "n={n} {m}");
                }
            }
        }
    }

    #[test]
    fn canonical_key_is_idempotent() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for n in 2..=8 {
            for _ in 0..10 {
                let m = BitMatrix::random(n, &mut rng).unwrap();
                for spec in [IsometrySpec::SymOnly, IsometrySpec::SymAndTI] {
                    let o = canonicalize(&m, spec);
                    let again = canonicalize(&o.key, spec);
                    assert_eq!(again, o);
                    assert!(o.key.is_invertible());
                }
            }
        }
    }

    #[test]
    fn orbit_stabilizer_by_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for n in 2..=6 {
            for _ in 0..5 {
                let m = BitMatrix::random(n, &mut rng).unwrap();
                for spec in [IsometrySpec::SymOnly, IsometrySpec::SymAndTI] {
                    let mut images = HashSet::new();
                    let mut fixing = 0u64;
                    for sigma in Permutation::all(n) {
                        for &xi in spec.signs() {
                            let img = act(&sigma, xi, &m).unwrap();
                            fixing += (img == m) as u64;
                            images.insert(img);
                        }
                    }
                    assert_eq!(images.len() as u64 * fixing, spec.group_order(n));
                    assert_eq!(canonicalize(&m, spec).orbit_size, images.len() as u64);
                }
            }
        }
    }

    #[test]
    fn isometries_preserve_the_generating_set() {
        for n in 2..=5 {
            let gens: HashSet<BitMatrix> = Transvection::all(n).map(|tv| tv.matrix(n).unwrap()).collect();
            for sigma in Permutation::all(n) {
                for xi in [Sign::Plus, Sign::Minus] {
                    let img: HashSet<BitMatrix> = gens.iter().map(|g| act(&sigma, xi, g).unwrap()).collect();
                    assert_eq!(img, gens);
                }
            }
        }
    }

    #[test]
    fn transpose_inverse_doubles_or_keeps_orbit() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for n in 3..=6 {
            for _ in 0..40 {
                let m = BitMatrix::random(n, &mut rng).unwrap();
                let sym = canonicalize(&m, IsometrySpec::SymOnly);
                let full = canonicalize(&m, IsometrySpec::SymAndTI);
                let ti_in_sym_orbit = canonicalize(&m.transpose_inverse(), IsometrySpec::SymOnly).key == sym.key;
                let kappa = if ti_in_sym_orbit { 1 } else { 2 };
                assert_eq!(full.orbit_size, sym.orbit_size * kappa);
            }
        }
    }

    #[test]
    fn successors_of_identity() {
        let s = successor_orbits(&BitMatrix::identity(3).unwrap(), IsometrySpec::SymOnly);
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].key, canonicalize(&t(1, 2, 3), IsometrySpec::SymOnly).key);
    }

    #[test]
    fn successor_orbits_are_orbit_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for n in 2..=6 {
            let perms = Permutation::all(n);
            for _ in 0..20 {
                let m = BitMatrix::random(n, &mut rng).unwrap();
                let sigma = perms[rng.gen_range(0..perms.len())];
                let other = act(&sigma, Sign::Plus, &m).unwrap();
                for spec in [IsometrySpec::SymOnly, IsometrySpec::SymAndTI] {
                    let a = successor_orbits(&m, spec);
                    assert_eq!(a, successor_orbits(&other, spec));
                    assert!(a.len() <= n * (n - 1));
                }
                let ti = m.transpose_inverse();
                assert_eq!(
                    successor_orbits(&m, IsometrySpec::SymAndTI),
                    successor_orbits(&ti, IsometrySpec::SymAndTI)
                );
            }
        }
    }

    #[test]
    fn spec_round_trips_through_text_and_tag() {
        for spec in [IsometrySpec::SymOnly, IsometrySpec::SymAndTI] {
            assert_eq!(spec.to_string().parse::<IsometrySpec>().unwrap(), spec);
            assert_eq!(IsometrySpec::from_tag(spec.tag()).unwrap(), spec);
        }
        assert!("full".parse::<IsometrySpec>().is_err());
    }
}
