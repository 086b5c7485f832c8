//! Bit-packed linear algebra over F2 for orders up to 8.
//!
//! A matrix of order `n` lives in a single `u64`: entry `M[i,j]` (1-indexed)
//! is bit `(i-1)*n + (j-1)`. Row `i` is therefore the `n`-bit field starting at
//! bit `(i-1)*n`, with column 1 as its least significant bit. This layout is
//! also the on-disk key format of the distance database.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};

/// Largest supported order.
pub const MAX_ORDER: usize = 8;

#[inline]
pub(crate) const fn row_mask(n: usize) -> u64 {
    (1u64 << n) - 1
}

/// Bits of column 1 in every row.
#[inline]
pub(crate) const fn col_mask(n: usize) -> u64 {
    let mut m = 0u64;
    let mut i = 0;
    while i < n {
        m |= 1u64 << (i * n);
        i += 1;
    }
    m
}

#[inline]
pub(crate) const fn full_mask(n: usize) -> u64 {
    if n * n == 64 {
        u64::MAX
    } else {
        (1u64 << (n * n)) - 1
    }
}

#[inline]
pub(crate) const fn identity_bits(n: usize) -> u64 {
    let mut m = 0u64;
    let mut i = 0;
    while i < n {
        m |= 1u64 << (i * n + i);
        i += 1;
    }
    m
}

/// Conjugation by the transposition of 0-based indices `a` and `b`: swaps rows
/// `a`,`b` and then columns `a`,`b`.
#[inline(always)]
pub(crate) fn swap_indices(bits: u64, n: usize, a: usize, b: usize) -> u64 {
    let rm = row_mask(n);
    let t = ((bits >> (a * n)) ^ (bits >> (b * n))) & rm;
    let x = bits ^ (t << (a * n)) ^ (t << (b * n));
    let t = ((x >> a) ^ (x >> b)) & col_mask(n);
    x ^ (t << a) ^ (t << b)
}

#[inline(always)]
pub(crate) fn apply_transvection_bits(bits: u64, n: usize, target: usize, source: usize) -> u64 {
    let r = (bits >> (source * n)) & row_mask(n);
    bits ^ (r << (target * n))
}

fn check_order(n: usize) -> Result<()> {
    if (1..=MAX_ORDER).contains(&n) {
        Ok(())
    } else {
        Err(Error::OrderOutOfRange(n))
    }
}

fn check_same(a: usize, b: usize) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { left: a, right: b })
    }
}

/// An `n x n` matrix over F2, `0 <= n <= 8`.
///
/// Order 0 is the empty matrix, produced only by [`BitMatrix::compact_to_essential`]
/// on an identity input.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitMatrix {
    n: u8,
    bits: u64,
}

impl BitMatrix {
    pub fn identity(n: usize) -> Result<Self> {
        check_order(n)?;
        Ok(Self::identity_unchecked(n))
    }

    pub(crate) fn identity_unchecked(n: usize) -> Self {
        Self { n: n as u8, bits: identity_bits(n) }
    }

    /// The order-0 matrix.
    pub const fn empty() -> Self {
        Self { n: 0, bits: 0 }
    }

    /// Wraps raw bits without any check. Parsers must call
    /// [`BitMatrix::validate`] before handing the value to anything else.
    pub const fn from_raw_unchecked(n: usize, bits: u64) -> Self {
        Self { n: n as u8, bits }
    }

    /// Checked constructor: order in range, no stray high bits, invertible.
    pub fn from_bits(n: usize, bits: u64) -> Result<Self> {
        Self::from_raw_unchecked(n, bits).validate()
    }

    pub fn validate(self) -> Result<Self> {
        let n = self.order();
        if n > MAX_ORDER {
            return Err(Error::OrderOutOfRange(n));
        }
        if self.bits & !full_mask(n) != 0 {
            return Err(Error::Parse(format!("bits set beyond position {}", n * n)));
        }
        if !self.is_invertible() {
            return Err(Error::Singular);
        }
        Ok(self)
    }

    /// Builds a matrix from row values, where bit `j-1` of `rows[i-1]` is `M[i,j]`.
    pub fn from_rows(rows: &[u8]) -> Result<Self> {
        let n = rows.len();
        check_order(n)?;
        let mut bits = 0u64;
        for (i, &r) in rows.iter().enumerate() {
            if (r as u64) & !row_mask(n) != 0 {
                return Err(Error::Parse(format!("row {} wider than {n}", i + 1)));
            }
            bits |= (r as u64) << (i * n);
        }
        Self::from_bits(n, bits)
    }

    /// Uniformly random element of GL(n,2) by rejection sampling.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Self> {
        check_order(n)?;
        loop {
            let m = Self::from_raw_unchecked(n, rng.gen::<u64>() & full_mask(n));
            if m.is_invertible() {
                return Ok(m);
            }
        }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n as usize
    }

    /// Packed representation; also the canonical-key encoding.
    #[inline]
    pub fn bits(&self) -> u64 {
        self.bits
    }

    /// Entry `M[i,j]`, 1-indexed.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        let n = self.order();
        debug_assert!(i >= 1 && i <= n && j >= 1 && j <= n);
        (self.bits >> ((i - 1) * n + (j - 1))) & 1 == 1
    }

    /// Row `i` (1-indexed) as an `n`-bit value, column 1 in bit 0.
    #[inline]
    pub fn row(&self, i: usize) -> u8 {
        let n = self.order();
        ((self.bits >> ((i - 1) * n)) & row_mask(n)) as u8
    }

    pub fn is_identity(&self) -> bool {
        self.bits == identity_bits(self.order())
    }

    pub fn rank(&self) -> usize {
        let n = self.order();
        let mut rows: Vec<u8> = (1..=n).map(|i| self.row(i)).collect();
        let mut rank = 0;
        for col in 0..n {
            let Some(p) = (rank..n).find(|&r| rows[r] >> col & 1 == 1) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot = rows[rank];
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && *row >> col & 1 == 1 {
                    *row ^= pivot;
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == self.order()
    }

    /// `self * other` over F2.
    pub fn multiply(&self, other: &BitMatrix) -> Result<Self> {
        check_same(self.order(), other.order())?;
        let n = self.order();
        let mut out = 0u64;
        for i in 0..n {
            let arow = (self.bits >> (i * n)) & row_mask(n);
            let mut acc = 0u64;
            for k in 0..n {
                if arow >> k & 1 == 1 {
                    acc ^= (other.bits >> (k * n)) & row_mask(n);
                }
            }
            out |= acc << (i * n);
        }
        Ok(Self { n: self.n, bits: out })
    }

    /// `T * self`: row `t.source()` is XORed into row `t.target()`.
    #[inline]
    pub fn apply(&self, t: Transvection) -> Self {
        debug_assert!(t.fits(self.order()));
        Self {
            n: self.n,
            bits: apply_transvection_bits(self.bits, self.order(), t.i as usize - 1, t.j as usize - 1),
        }
    }

    pub fn transpose(&self) -> Self {
        let n = self.order();
        let mut out = 0u64;
        for i in 0..n {
            for j in 0..n {
                if self.bits >> (i * n + j) & 1 == 1 {
                    out |= 1 << (j * n + i);
                }
            }
        }
        Self { n: self.n, bits: out }
    }

    /// Gauss-Jordan inverse using row additions and swaps; pivots on the
    /// leftmost column and the topmost available row.
    pub fn invert(&self) -> Result<Self> {
        let n = self.order();
        // low byte: the matrix row, high byte: the identity row
        let mut rows: Vec<u16> = (0..n)
            .map(|i| ((self.bits >> (i * n)) & row_mask(n)) as u16 | (1u16 << (8 + i)))
            .collect();
        for col in 0..n {
            let p = (col..n).find(|&r| rows[r] >> col & 1 == 1).ok_or(Error::Singular)?;
            rows.swap(col, p);
            let pivot = rows[col];
            for (r, row) in rows.iter_mut().enumerate() {
                if r != col && *row >> col & 1 == 1 {
                    *row ^= pivot;
                }
            }
        }
        let mut out = 0u64;
        for (i, r) in rows.iter().enumerate() {
            out |= ((r >> 8) as u64) << (i * n);
        }
        Ok(Self { n: self.n, bits: out })
    }

    /// `(M^T)^-1`. Panics only on singular input, which the type invariant excludes.
    pub fn transpose_inverse(&self) -> Self {
        self.transpose().invert().expect("transpose_inverse of a singular matrix")
    }

    /// `P_sigma M P_sigma^-1`, computed entrywise: `out[s(i), s(j)] = M[i, j]`.
    pub fn conjugate_by_perm(&self, sigma: &Permutation) -> Result<Self> {
        check_same(self.order(), sigma.degree())?;
        let n = self.order();
        let mut out = 0u64;
        for i in 0..n {
            let si = sigma.map[i] as usize;
            for j in 0..n {
                if self.bits >> (i * n + j) & 1 == 1 {
                    out |= 1 << (si * n + sigma.map[j] as usize);
                }
            }
        }
        Ok(Self { n: self.n, bits: out })
    }

    /// Indices `i` with a nonzero off-diagonal entry in row `i` or column `i`.
    pub fn essential_indices(&self) -> IndexSet {
        let n = self.order();
        let off = self.bits & !identity_bits(n);
        let mut set = 0u8;
        let mut cols = 0u64;
        for i in 0..n {
            let r = (off >> (i * n)) & row_mask(n);
            if r != 0 {
                set |= 1 << i;
            }
            cols |= r;
        }
        IndexSet(set | cols as u8)
    }

    /// Block embedding `diag(M, I_{n-m})`.
    pub fn embed(&self, n: usize) -> Result<Self> {
        check_order(n)?;
        let m = self.order();
        if m > n {
            return Err(Error::DimensionMismatch { left: m, right: n });
        }
        let mut out = identity_bits(n) & !identity_bits_prefix(n, m);
        for i in 0..m {
            out |= ((self.bits >> (i * m)) & row_mask(m)) << (i * n);
        }
        Ok(Self { n: n as u8, bits: out })
    }

    /// Returns `(M, sigma)` with `M` of order `|eps(self)|` and
    /// `embed(M, n) == self.conjugate_by_perm(sigma)`. `sigma` sends the
    /// essential indices, in ascending order, to `1..=m` and the rest, in
    /// ascending order, to `m+1..=n`.
    pub fn compact_to_essential(&self) -> (BitMatrix, Permutation) {
        let n = self.order();
        let ess = self.essential_indices();
        let m = ess.len();
        let mut map = [0u8; MAX_ORDER];
        let mut preimage = [0usize; MAX_ORDER];
        let (mut next_ess, mut next_rest) = (0usize, m);
        for (i, image) in map.iter_mut().enumerate().take(n) {
            let slot = if ess.contains(i + 1) {
                next_ess += 1;
                next_ess - 1
            } else {
                next_rest += 1;
                next_rest - 1
            };
            *image = slot as u8;
            preimage[slot] = i;
        }
        let mut bits = 0u64;
        for a in 0..m {
            for b in 0..m {
                if self.bits >> (preimage[a] * n + preimage[b]) & 1 == 1 {
                    bits |= 1 << (a * m + b);
                }
            }
        }
        (Self { n: m as u8, bits }, Permutation { n: n as u8, map })
    }
}

/// Identity bits of the top-left `m x m` block inside an order-`n` matrix.
fn identity_bits_prefix(n: usize, m: usize) -> u64 {
    (0..m).fold(0, |acc, i| acc | 1 << (i * n + i))
}

impl fmt::Display for BitMatrix {
    /// Rows as `0`/`1` strings joined by commas, row 1 first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.order();
        for i in 1..=n {
            if i > 1 {
                f.write_str(",")?;
            }
            for j in 1..=n {
                f.write_str(if self.get(i, j) { "1" } else { "0" })?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitMatrix({})", self)
    }
}

impl FromStr for BitMatrix {
    type Err = Error;

    /// Parses `"111,010,011"` and validates invertibility.
    fn from_str(s: &str) -> Result<Self> {
        let rows: Vec<&str> = s.trim().split(',').map(str::trim).collect();
        let n = rows.len();
        check_order(n)?;
        let mut bits = 0u64;
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Parse(format!("row {} has {} entries, expected {n}", i + 1, row.len())));
            }
            for (j, c) in row.chars().enumerate() {
                match c {
                    '0' => {}
                    '1' => bits |= 1 << (i * n + j),
                    other => return Err(Error::Parse(format!("unexpected character {other:?}"))),
                }
            }
        }
        BitMatrix::from_bits(n, bits)
    }
}

/// A set of 1-based indices `<= 8`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct IndexSet(pub u8);

impl IndexSet {
    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn contains(&self, i: usize) -> bool {
        (1..=8).contains(&i) && self.0 >> (i - 1) & 1 == 1
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (1..=8).filter(move |&i| self.contains(i))
    }

    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Self {
        IndexSet(indices.into_iter().fold(0u8, |acc, i| acc | 1 << (i - 1)))
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// `T_{i,j} = I + Delta_{i,j}`: adds row `j` to row `i`, i.e. CNOT with control
/// `j` and target `i`. Indices are 1-based.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Transvection {
    i: u8,
    j: u8,
}

impl Transvection {
    pub fn new(i: usize, j: usize) -> Result<Self> {
        if i == j {
            return Err(Error::DegenerateTransvection(i));
        }
        for idx in [i, j] {
            if !(1..=MAX_ORDER).contains(&idx) {
                return Err(Error::IndexOutOfRange { index: idx, n: MAX_ORDER });
            }
        }
        Ok(Self { i: i as u8, j: j as u8 })
    }

    /// Row receiving the addition (CNOT target).
    pub fn target(&self) -> usize {
        self.i as usize
    }

    /// Row being added (CNOT control).
    pub fn source(&self) -> usize {
        self.j as usize
    }

    pub fn fits(&self, n: usize) -> bool {
        (self.i as usize) <= n && (self.j as usize) <= n
    }

    pub fn matrix(&self, n: usize) -> Result<BitMatrix> {
        if !self.fits(n) {
            return Err(Error::IndexOutOfRange { index: self.i.max(self.j) as usize, n });
        }
        Ok(BitMatrix::identity(n)?.apply(*self))
    }

    /// The generating set of order `n` in `(i, j)` lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = Transvection> {
        (1..=n).flat_map(move |i| {
            (1..=n).filter(move |&j| j != i).map(move |j| Transvection { i: i as u8, j: j as u8 })
        })
    }

    /// `T_{j,i}`; the image under the transpose-inverse map.
    pub fn swapped(&self) -> Self {
        Self { i: self.j, j: self.i }
    }
}

impl fmt::Display for Transvection {
    /// `CNOT c d` with 0-based qubit labels.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CNOT {} {}", self.j - 1, self.i - 1)
    }
}

/// A permutation of `{1..n}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Permutation {
    n: u8,
    /// 0-based images.
    map: [u8; MAX_ORDER],
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        let mut map = [0u8; MAX_ORDER];
        for (i, m) in map.iter_mut().enumerate().take(n) {
            *m = i as u8;
        }
        Self { n: n as u8, map }
    }

    /// From 1-based images `[s(1), ..., s(n)]`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        if n > MAX_ORDER {
            return Err(Error::OrderOutOfRange(n));
        }
        let mut map = [0u8; MAX_ORDER];
        let mut seen = 0u16;
        for (i, &img) in images.iter().enumerate() {
            if img == 0 || img > n || seen >> img & 1 == 1 {
                return Err(Error::InvalidPermutation(format!("{images:?}")));
            }
            seen |= 1 << img;
            map[i] = (img - 1) as u8;
        }
        Ok(Self { n: n as u8, map })
    }

    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Self> {
        if i == j || i == 0 || j == 0 || i > n || j > n {
            return Err(Error::InvalidPermutation(format!("({i} {j}) on {n} points")));
        }
        let mut p = Self::identity(n);
        p.map.swap(i - 1, j - 1);
        Ok(p)
    }

    /// From disjoint cycles written with 1-based points; unmentioned points are fixed.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        if n > MAX_ORDER {
            return Err(Error::OrderOutOfRange(n));
        }
        let mut images: Vec<usize> = (1..=n).collect();
        let mut touched = vec![false; n + 1];
        for cyc in cycles {
            for (k, &a) in cyc.iter().enumerate() {
                if a == 0 || a > n || touched[a] {
                    return Err(Error::InvalidPermutation(format!("{cycles:?} on {n} points")));
                }
                touched[a] = true;
                images[a - 1] = cyc[(k + 1) % cyc.len()];
            }
        }
        Self::from_images(&images)
    }

    /// Parses cycle notation such as `"(1 2 3)(4 5)"`; `"()"` or `""` is the identity.
    pub fn parse_cycles(n: usize, s: &str) -> Result<Self> {
        let mut cycles = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let open = rest.strip_prefix('(').ok_or_else(|| Error::Parse(format!("expected '(' in {s:?}")))?;
            let close = open.find(')').ok_or_else(|| Error::Parse(format!("unclosed cycle in {s:?}")))?;
            let body = &open[..close];
            let cyc = body
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
                .collect::<Result<Vec<_>>>()?;
            if !cyc.is_empty() {
                cycles.push(cyc);
            }
            rest = open[close + 1..].trim_start();
        }
        Self::from_cycles(n, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.n as usize
    }

    /// `s(i)`, 1-based.
    pub fn image(&self, i: usize) -> usize {
        self.map[i - 1] as usize + 1
    }

    pub fn images(&self) -> Vec<usize> {
        (1..=self.degree()).map(|i| self.image(i)).collect()
    }

    pub fn inverse(&self) -> Self {
        let mut map = [0u8; MAX_ORDER];
        for i in 0..self.degree() {
            map[self.map[i] as usize] = i as u8;
        }
        Self { n: self.n, map }
    }

    /// `self o other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Result<Self> {
        check_same(self.degree(), other.degree())?;
        let mut map = [0u8; MAX_ORDER];
        for (image, &o) in map.iter_mut().zip(&other.map[..self.degree()]) {
            *image = self.map[o as usize];
        }
        Ok(Self { n: self.n, map })
    }

    /// Disjoint cycles including fixed points, each starting at its minimum,
    /// ordered by minimum.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cyc.push(x + 1);
                x = self.map[x] as usize;
            }
            out.push(cyc);
        }
        out
    }

    /// Number of disjoint cycles, counting fixed points.
    pub fn cycle_count(&self) -> usize {
        self.cycles().len()
    }

    /// `P_sigma = [e_{s(1)}, ..., e_{s(n)}]`.
    pub fn matrix(&self) -> BitMatrix {
        let n = self.degree();
        let mut bits = 0u64;
        for j in 0..n {
            bits |= 1 << (self.map[j] as usize * n + j);
        }
        BitMatrix::from_raw_unchecked(n, bits)
    }

    /// All of `S_n` in lexicographic order of image lists.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut cur: Vec<usize> = (1..=n).collect();
        let mut out = Vec::new();
        loop {
            out.push(Self::from_images(&cur).expect("valid by construction"));
            // next lexicographic permutation
            let Some(k) = (1..n).rev().find(|&k| cur[k - 1] < cur[k]) else {
                break;
            };
            let l = (k..n).rev().find(|&l| cur[l] > cur[k - 1]).unwrap();
            cur.swap(k - 1, l);
            cur[k..].reverse();
        }
        out
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation without fixed points; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for cyc in self.cycles().into_iter().filter(|c| c.len() > 1) {
            any = true;
            let body: Vec<String> = cyc.iter().map(ToString::to_string).collect();
            write!(f, "({})", body.join(" "))?;
        }
        if !any {
            f.write_str("()")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]{}", self.n, self)
    }
}

/// A word over transvections, applied left-multiplicatively in order:
/// `eval = gates[k-1] * ... * gates[0] * I`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Circuit {
    n: usize,
    gates: Vec<Transvection>,
}

impl Circuit {
    pub fn new(n: usize, gates: Vec<Transvection>) -> Result<Self> {
        check_order(n)?;
        if let Some(g) = gates.iter().find(|g| !g.fits(n)) {
            return Err(Error::IndexOutOfRange { index: g.i.max(g.j) as usize, n });
        }
        Ok(Self { n, gates })
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::new(n, Vec::new())
    }

    pub fn width(&self) -> usize {
        self.n
    }

    pub fn gates(&self) -> &[Transvection] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn eval(&self) -> BitMatrix {
        self.gates
            .iter()
            .fold(BitMatrix::identity_unchecked(self.n), |m, &g| m.apply(g))
    }

    /// Gates in reverse order; evaluates to the inverse matrix.
    pub fn reversed(&self) -> Self {
        Self { n: self.n, gates: self.gates.iter().rev().copied().collect() }
    }

    /// `self` followed by `next`.
    pub fn then(mut self, next: &Circuit) -> Result<Self> {
        check_same(self.n, next.n)?;
        self.gates.extend_from_slice(&next.gates);
        Ok(self)
    }

    /// Parses `"CNOT 1 2; CNOT 2 0"` (0-based control then target).
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        let mut gates = Vec::new();
        for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let toks: Vec<&str> = part.split_whitespace().collect();
            let [kw, c, d] = toks[..] else {
                return Err(Error::Parse(format!("bad gate {part:?}")));
            };
            if !kw.eq_ignore_ascii_case("CNOT") {
                return Err(Error::Parse(format!("unknown gate {kw:?}")));
            }
            let parse = |t: &str| t.trim_start_matches('q').parse::<usize>().map_err(|e| Error::Parse(format!("{t:?}: {e}")));
            let (c, d) = (parse(c)?, parse(d)?);
            gates.push(Transvection::new(d + 1, c + 1)?);
        }
        Self::new(n, gates)
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.gates.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join("; "))
    }
}
