//! Sphere sizes as polynomials in `n`.
//!
//! Orbits at distance `d` in GL(2d,2) are grouped by their number `m` of
//! essential indices. With `S(d,m)` the total size of those orbits,
//! `a[m] = S(d,m) / C(2d,m)` and `|R_n(d)| = sum_m a[m] C(n,m)` for `n >= 2d`.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::bfs::ExplorationResult;
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, Transvection};
use crate::isometry::{canonicalize, IsometrySpec};

const BUNDLED: &str = include_str!("../data/sphere_coeffs.csv");

/// Exact binomial coefficient.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// `S(d, m)` cells of one exploration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EssentialClassTable {
    /// Order of the explored group.
    pub order: usize,
    pub spec: IsometrySpec,
    /// Deepest fully classified distance.
    pub d_max: usize,
    pub cells: BTreeMap<(usize, usize), BigUint>,
}

impl EssentialClassTable {
    pub fn cell(&self, d: usize, m: usize) -> BigUint {
        self.cells.get(&(d, m)).cloned().unwrap_or_default()
    }

    pub fn row_sum(&self, d: usize) -> BigUint {
        self.cells.range((d, 0)..=(d, usize::MAX)).map(|(_, v)| v).sum()
    }

    /// `d,m,count` rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("d,m,count\n");
        for ((d, m), v) in &self.cells {
            let _ = writeln!(out, "{d},{m},{v}");
        }
        out
    }
}

/// Adds each stored orbit's size to the cell `(distance, |essential indices|)`.
/// Levels past the last exact one are skipped.
pub fn classify(res: &ExplorationResult) -> Result<EssentialClassTable> {
    let d_max = res
        .exact_depth()
        .ok_or_else(|| Error::InvalidArgument("exploration has no complete level".into()))?;
    if res.dist.is_empty() {
        return Err(Error::InvalidArgument("exploration was run without retained distances".into()));
    }
    let mut small: BTreeMap<(usize, usize), u128> = BTreeMap::new();
    for (key, d) in res.dist.iter() {
        let d = d as usize;
        if d > d_max {
            continue;
        }
        let m = BitMatrix::from_raw_unchecked(res.n, key);
        let info = canonicalize(&m, res.spec);
        *small.entry((d, m.essential_indices().len())).or_default() += info.orbit_size as u128;
    }
    let cells = small.into_iter().map(|(k, v)| (k, BigUint::from(v))).collect();
    Ok(EssentialClassTable { order: res.n, spec: res.spec, d_max, cells })
}

/// Coefficients `a[0..=2d]` of `f_d` in the binomial basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyCoeffs {
    pub d: usize,
    pub a: Vec<BigUint>,
    /// Loaded from the bundled table rather than computed.
    pub bundled: bool,
}

impl PolyCoeffs {
    pub fn new(d: usize, a: Vec<BigUint>) -> Result<Self> {
        if a.len() != 2 * d + 1 {
            return Err(Error::InvalidArgument(format!("f_{d} needs {} coefficients, got {}", 2 * d + 1, a.len())));
        }
        Ok(Self { d, a, bundled: false })
    }

    /// `f_d(n) = sum_m a[m] C(n, m)`. Equals `|R_n(d)|` when [`Self::valid_for`] holds.
    pub fn eval(&self, n: usize) -> BigUint {
        self.a
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(m, a)| a * binomial(n, m))
            .sum()
    }

    pub fn valid_for(&self, n: usize) -> bool {
        n >= 2 * self.d
    }

    /// Monomial coefficients `c[0..=2d]` with `f_d(n) = sum c[i] n^i`.
    pub fn monomials(&self) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); self.a.len()];
        for (m, a) in self.a.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            // C(n, m) = n (n-1) ... (n-m+1) / m!
            let mut poly = vec![BigInt::one()];
            for r in 0..m {
                let mut next = vec![BigInt::zero(); poly.len() + 1];
                for (i, c) in poly.iter().enumerate() {
                    next[i + 1] += c;
                    next[i] -= c * BigInt::from(r);
                }
                poly = next;
            }
            let scale = BigRational::new(BigInt::from(a.clone()), BigInt::from(factorial(m)));
            for (i, c) in poly.into_iter().enumerate() {
                out[i] += &scale * BigRational::from_integer(c);
            }
        }
        out
    }

    /// `"d,a_0,...,a_2d"`.
    pub fn to_record(&self) -> String {
        let mut s = self.d.to_string();
        for a in &self.a {
            let _ = write!(s, ",{a}");
        }
        s
    }
}

fn factorial(m: usize) -> BigUint {
    (1..=m).map(BigUint::from).product()
}

impl fmt::Display for PolyCoeffs {
    /// `f_2(n) = 2*C(n,2) + 18*C(n,3) + 12*C(n,4)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f_{}(n) =", self.d)?;
        let mut first = true;
        for (m, a) in self.a.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            write!(f, "{} {a}*C(n,{m})", if first { "" } else { " +" })?;
            first = false;
        }
        if first {
            f.write_str(" 0")?;
        }
        Ok(())
    }
}

impl FromStr for PolyCoeffs {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut fields = s.trim().split(',').map(str::trim);
        let d: usize = fields
            .next()
            .unwrap_or_default()
            .parse()
            .map_err(|e| Error::Parse(format!("coefficient record {s:?}: {e}")))?;
        let a = fields
            .map(|t| t.parse::<BigUint>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        PolyCoeffs::new(d, a)
    }
}

/// Parses a coefficient file: one `d,a_0,...,a_2d` record per line, `#`
/// comments and blank lines ignored.
pub fn parse_coeff_file(text: &str) -> Result<Vec<PolyCoeffs>> {
    let mut out: Vec<PolyCoeffs> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::parse)
        .collect::<Result<_>>()?;
    out.sort_by_key(|c| c.d);
    if out.windows(2).any(|w| w[0].d == w[1].d) {
        return Err(Error::Parse("duplicate coefficient record".into()));
    }
    Ok(out)
}

pub fn format_coeff_file(coeffs: &[PolyCoeffs]) -> String {
    let mut out = String::from("# record: d,a_0,a_1,...,a_2d\n");
    for c in coeffs {
        out.push_str(&c.to_record());
        out.push('\n');
    }
    out
}

/// Aligned text table with one column per `d`, one row per `m`.
pub fn format_coeff_table(coeffs: &[PolyCoeffs]) -> String {
    let rows = coeffs.iter().map(|c| c.a.len()).max().unwrap_or(0);
    let cells: Vec<Vec<String>> = coeffs
        .iter()
        .map(|c| (0..rows).map(|m| c.a.get(m).map_or("-".to_string(), ToString::to_string)).collect())
        .collect();
    let widths: Vec<usize> = coeffs
        .iter()
        .zip(&cells)
        .map(|(c, col)| col.iter().map(String::len).chain([c.d.to_string().len()]).max().unwrap_or(1))
        .collect();
    let mut out = String::from(" m |");
    for (c, w) in coeffs.iter().zip(&widths) {
        let _ = write!(out, " {:>w$}", c.d, w = w);
    }
    out.push('\n');
    for m in 0..rows {
        let _ = write!(out, "{m:>2} |");
        for (col, w) in cells.iter().zip(&widths) {
            let _ = write!(out, " {:>w$}", col[m], w = w);
        }
        out.push('\n');
    }
    out
}

/// The bundled table for `d = 1..=10`.
pub fn bundled_coeffs() -> Vec<PolyCoeffs> {
    parse_coeff_file(BUNDLED)
        .expect("bundled coefficient file parses")
        .into_iter()
        .map(|c| PolyCoeffs { bundled: true, ..c })
        .collect()
}

/// `a[m] = S(d,m) / C(2d,m)`; every division must be exact.
pub fn extract_coeffs(table: &EssentialClassTable, d: usize) -> Result<PolyCoeffs> {
    if table.order != 2 * d {
        return Err(Error::InvalidArgument(format!(
            "f_{d} must be extracted from GL({},2), table has order {}",
            2 * d,
            table.order
        )));
    }
    if d > table.d_max {
        return Err(Error::InvalidArgument(format!("table only covers d <= {}", table.d_max)));
    }
    let a = (0..=2 * d)
        .map(|m| {
            let (q, r) = table.cell(d, m).div_rem(&binomial(2 * d, m));
            if r.is_zero() {
                Ok(q)
            } else {
                Err(Error::Inconsistent(format!("S({d},{m}) is not divisible by C({},{m})", 2 * d)))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    PolyCoeffs::new(d, a)
}

/// Checks `|S_n . embed(M)| * C(m,k) == |S_m . M| * C(n,k)` by direct
/// orbit enumeration at both orders, `k = |eps(M)|`.
pub fn orbit_growth_check(m: &BitMatrix, n: usize) -> Result<bool> {
    let big = m.embed(n)?;
    let k = m.essential_indices().len();
    let small_orbit = canonicalize(m, IsometrySpec::SymOnly).orbit_size;
    let big_orbit = canonicalize(&big, IsometrySpec::SymOnly).orbit_size;
    Ok(BigUint::from(big_orbit) * binomial(m.order(), k) == BigUint::from(small_orbit) * binomial(n, k))
}

/// `T_{1,2} T_{3,4} ... T_{2d-1,2d}` of order `2d`: `2d` essential indices at distance `d`.
pub fn witness_matrix(d: usize) -> Result<BitMatrix> {
    if !(1..=4).contains(&d) {
        return Err(Error::InvalidArgument(format!("witness needs 1 <= d <= 4, got {d}")));
    }
    let mut m = BitMatrix::identity(2 * d)?;
    for p in 0..d {
        m = m.apply(Transvection::new(2 * p + 1, 2 * p + 2)?);
    }
    Ok(m)
}
