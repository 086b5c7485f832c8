//! Exact counting and diameter lower bounds.
//!
//! Every comparison in this module is done on big integers; floating point
//! only appears in [`QuadraticBound::approx`], which is informational.

use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::bfs::ExplorationResult;
use crate::error::{Error, Result};
use crate::essential::PolyCoeffs;

/// `|GL(n,2)| = prod_{i<n} (2^n - 2^i)`.
pub fn gl_order(n: usize) -> BigUint {
    let two_n = BigUint::one() << n;
    (0..n).map(|i| &two_n - (BigUint::one() << i)).product()
}

/// Where a sphere size came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SphereSource {
    Explored,
    /// Evaluated from coefficients extracted by this crate.
    Polynomial,
    /// Evaluated from the bundled coefficient table.
    BundledPolynomial,
}

/// Sphere sizes `R(0..=k)` for one order `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphereProfile {
    pub n: usize,
    pub sizes: Vec<BigUint>,
    pub sources: Vec<SphereSource>,
}

impl SphereProfile {
    pub fn k(&self) -> usize {
        self.sizes.len() - 1
    }

    /// Profile built from raw sizes, all tagged as explored.
    pub fn from_sizes(n: usize, sizes: Vec<BigUint>) -> Result<Self> {
        if sizes.first() != Some(&BigUint::one()) {
            return Err(Error::InvalidArgument("a sphere profile starts with R(0) = 1".into()));
        }
        let sources = vec![SphereSource::Explored; sizes.len()];
        Ok(Self { n, sizes, sources })
    }
}

/// Builds `R(0..=k)` for order `n`. Each level is taken from `explored` when
/// it covers order `n` at that depth exactly, otherwise from the coefficient
/// list when `n >= 2d`.
pub fn sphere_profile(
    n: usize,
    k: usize,
    explored: Option<&ExplorationResult>,
    coeffs: &[PolyCoeffs],
) -> Result<SphereProfile> {
    let mut sizes = vec![BigUint::one()];
    let mut sources = vec![SphereSource::Explored];
    for d in 1..=k {
        if let Some(r) = explored.filter(|r| r.n == n).and_then(|r| r.sphere(d)) {
            sizes.push(r.clone());
            sources.push(SphereSource::Explored);
            continue;
        }
        let c = coeffs
            .iter()
            .find(|c| c.d == d)
            .ok_or_else(|| Error::InvalidArgument(format!("no exploration or coefficients for R({d})")))?;
        if n < 2 * d {
            return Err(Error::InvalidArgument(format!(
                "polynomial f_{d} is only valid for n >= {}, got n = {n}",
                2 * d
            )));
        }
        sizes.push(c.eval(n));
        sources.push(if c.bundled { SphereSource::BundledPolynomial } else { SphereSource::Polynomial });
    }
    Ok(SphereProfile { n, sizes, sources })
}

/// `l_n(k)`: the smallest `l >= 1` with
/// `sum_{d=0}^{l} R(k)^{q_k(d)} R(r_k(d)) >= |GL(n,2)|`, where `q_k`, `r_k`
/// are quotient and remainder of `d` by `k`.
pub fn ell(profile: &SphereProfile) -> Result<usize> {
    let k = profile.k();
    if k == 0 {
        return Err(Error::InvalidArgument("need at least R(1)".into()));
    }
    if profile.sizes[1..].iter().any(Zero::is_zero) {
        return Err(Error::InvalidArgument("sphere sizes must be positive for d >= 1".into()));
    }
    let target = gl_order(profile.n);
    let r = &profile.sizes;
    let mut power = BigUint::one(); // R(k)^q
    let mut sum = BigUint::zero();
    let mut l = 0usize;
    loop {
        let (q, rem) = (l / k, l % k);
        if rem == 0 && q > 0 {
            power *= &r[k];
        }
        sum += &power * &r[rem];
        if l >= 1 && sum >= target {
            return Ok(l);
        }
        l += 1;
    }
}

/// `(n^2 - n) / log2(n^2 - n + 1)` with its exact ceiling.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadraticBound {
    pub n: usize,
    pub approx: f64,
    /// Smallest integer `c` with `bound <= c`.
    pub ceiling: u64,
}

/// Exact test of `(n^2 - n) / log2(n^2 - n + 1) > t`, i.e.
/// `2^(n^2 - n) > (n^2 - n + 1)^t`.
pub fn quadratic_bound_exceeds(n: usize, t: u64) -> bool {
    let e = n * n - n;
    let lhs = BigUint::one() << e;
    let rhs = BigUint::from(e + 1).pow(t as u32);
    lhs > rhs
}

pub fn quadratic_bound(n: usize) -> Result<QuadraticBound> {
    if n < 2 {
        return Err(Error::InvalidArgument("quadratic bound needs n >= 2".into()));
    }
    let e = (n * n - n) as f64;
    let approx = e / (e + 1.0).log2();
    let mut c = (approx.floor() as u64).saturating_sub(2);
    while quadratic_bound_exceeds(n, c) {
        c += 1;
    }
    Ok(QuadraticBound { n, approx, ceiling: c })
}

/// Smallest `n` in `range` where the quadratic bound exceeds `3(n - 1)`.
pub fn quadratic_threshold(range: std::ops::RangeInclusive<usize>) -> Option<usize> {
    range.filter(|&n| n >= 2).find(|&n| quadratic_bound_exceeds(n, 3 * (n as u64 - 1)))
}

/// Smallest `n` in `range` with `l_n(k) > 3(n - 1)`, using polynomial sphere
/// sizes. Orders below `2k` are skipped because the polynomials do not apply.
pub fn n0_upper(k: usize, coeffs: &[PolyCoeffs], range: std::ops::RangeInclusive<usize>) -> Result<Option<usize>> {
    for n in range {
        if n < 2 * k || n < 2 {
            continue;
        }
        let profile = sphere_profile(n, k, None, coeffs)?;
        if ell(&profile)? > 3 * (n - 1) {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// `|R(d)| <= prod |R(d_i)|` for a partition of `d`.
pub fn product_inequality_check(res: &ExplorationResult, d: usize, partition: &[usize]) -> Result<bool> {
    if partition.iter().sum::<usize>() != d || partition.contains(&0) {
        return Err(Error::InvalidArgument(format!("{partition:?} is not a partition of {d}")));
    }
    let get = |x: usize| res.sphere(x).cloned().ok_or(Error::BeyondHorizon { depth: res.depth() });
    let lhs = get(d)?;
    let mut rhs = BigUint::one();
    for &p in partition {
        rhs *= get(p)?;
    }
    Ok(lhs <= rhs)
}

/// `n,k,ell` rows.
pub fn ell_table_csv(rows: &[(usize, usize, usize)]) -> String {
    let mut out = String::from("n,k,ell\n");
    for (n, k, l) in rows {
        let _ = writeln!(out, "{n},{k},{l}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bfs::{isometry_bfs, SearchLimits};
    use crate::essential::bundled_coeffs;
    use crate::isometry::IsometrySpec;

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn gl_orders() {
        assert_eq!(gl_order(1), big(1));
        assert_eq!(gl_order(3), big(168));
        assert_eq!(gl_order(5), big(9_999_360));
        assert_eq!(gl_order(7), big(163_849_992_929_280));
    }

    #[test]
    fn profile_from_exploration_and_coefficients() {
        let res = isometry_bfs(5, IsometrySpec::SymOnly, &SearchLimits::depth(3)).unwrap();
        let p = sphere_profile(5, 3, Some(&res), &[]).unwrap();
        assert_eq!(p.sizes, vec![big(1), big(20), big(260), big(2570)]);

        let p = sphere_profile(20, 2, None, &bundled_coeffs()).unwrap();
        assert_eq!(p.sizes, vec![big(1), big(380), big(79_040)]);
        assert_eq!(p.sources[2], SphereSource::BundledPolynomial);

        assert_eq!(sphere_profile(9, 0, None, &[]).unwrap().sizes, vec![big(1)]);
        // f_3 needs n >= 6
        assert!(sphere_profile(5, 3, None, &bundled_coeffs()).is_err());
    }

    #[test]
    fn ell_is_sound_on_true_spheres() {
        for n in 2..=4 {
            let res = isometry_bfs(n, IsometrySpec::SymOnly, &SearchLimits::default()).unwrap();
            let diam = res.diameter().unwrap();
            let ells: Vec<usize> =
                (1..=diam).map(|k| ell(&sphere_profile(n, k, Some(&res), &[]).unwrap()).unwrap()).collect();
            for (k, &l) in (1..).zip(&ells) {
                assert!(l <= diam, "n={n} k={k}");
                // R(k') <= R(k)^(k'/k) termwise when k divides k'
                for (k2, &l2) in (1..).zip(&ells).filter(|(k2, _)| k2 % k == 0) {
                    assert!(l2 >= l, "n={n} k={k} k'={k2}");
                }
            }
        }
    }

    #[test]
    fn ell_grows_with_k_at_small_orders() {
        let res = isometry_bfs(5, IsometrySpec::SymOnly, &SearchLimits::depth(4)).unwrap();
        let ells: Vec<usize> = (1..=4).map(|k| ell(&sphere_profile(5, k, Some(&res), &[]).unwrap()).unwrap()).collect();
        assert!(ells.windows(2).all(|w| w[0] <= w[1]), "{ells:?}");
        let res = isometry_bfs(4, IsometrySpec::SymOnly, &SearchLimits::default()).unwrap();
        let ells: Vec<usize> = (1..=4).map(|k| ell(&sphere_profile(4, k, Some(&res), &[]).unwrap()).unwrap()).collect();
        assert!(ells.windows(2).all(|w| w[0] <= w[1]), "{ells:?}");
    }

    #[test]
    fn ell_rejects_degenerate_profiles() {
        assert!(ell(&SphereProfile::from_sizes(3, vec![big(1)]).unwrap()).is_err());
        assert!(ell(&SphereProfile::from_sizes(1, vec![big(1), big(0)]).unwrap()).is_err());
        assert!(SphereProfile::from_sizes(3, vec![big(2)]).is_err());
    }

    #[test]
    fn quadratic_bound_threshold() {
        let b = quadratic_bound(2).unwrap();
        assert!(b.approx > 1.26 && b.approx < 1.27);
        assert_eq!(b.ceiling, 2);
        assert!(!quadratic_bound_exceeds(2, 3));
        assert!(quadratic_bound_exceeds(30, 87));
        assert!(!quadratic_bound_exceeds(29, 84));
        assert_eq!(quadratic_threshold(2..=100), Some(30));
        assert_eq!(quadratic_threshold(2..=29), None);
    }

    #[test]
    fn quadratic_ceiling_brackets_value() {
        for n in 2..60 {
            let b = quadratic_bound(n).unwrap();
            assert!(quadratic_bound_exceeds(n, b.ceiling - 1) || b.ceiling == 0);
            assert!(!quadratic_bound_exceeds(n, b.ceiling));
            assert!((b.ceiling as f64 - b.approx) < 1.0 + 1e-9);
        }
    }

    #[test]
    fn k1_bound_dominates_quadratic_bound() {
        let coeffs = bundled_coeffs();
        for n in 2..=40 {
            let p = sphere_profile(n, 1, None, &coeffs).unwrap();
            assert!(ell(&p).unwrap() as u64 >= quadratic_bound(n).unwrap().ceiling);
        }
        let n0 = n0_upper(1, &coeffs, 2..=40).unwrap().unwrap();
        assert!(n0 <= 30);
    }

    #[test]
    fn n0_with_bundled_coefficients() {
        let coeffs = bundled_coeffs();
        assert_eq!(n0_upper(10, &coeffs, 20..=40).unwrap(), Some(20));
        assert_eq!(n0_upper(10, &coeffs, 2..=19).unwrap(), None);
    }

    #[test]
    fn product_inequality_examples() {
        let res = isometry_bfs(4, IsometrySpec::SymOnly, &SearchLimits::default()).unwrap();
        assert!(product_inequality_check(&res, 4, &[2, 2]).unwrap());
        assert!(product_inequality_check(&res, 5, &[5]).unwrap());
        assert!(product_inequality_check(&res, 4, &[3, 2]).is_err());
    }

    #[test]
    fn csv_rows() {
        assert_eq!(ell_table_csv(&[(20, 10, 58)]), "n,k,ell\n20,10,58\n");
    }
}
