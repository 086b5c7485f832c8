//! Permutation matrices: SWAP-based circuits of length `3(n - c(sigma))`,
//! cycle gluing into a long cycle, and checking `delta(P_sigma) = 3(n - c(sigma))`
//! against an exploration.

use std::fmt;

use crate::bfs::{distance_of, ExplorationResult};
use crate::error::{Error, Result};
use crate::gf2::{Circuit, Permutation, Transvection};

/// Cycle lengths in descending order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType {
    pub parts: Vec<usize>,
}

impl CycleType {
    pub fn of(sigma: &Permutation) -> Self {
        let mut parts: Vec<usize> = sigma.cycles().iter().map(Vec::len).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self { parts }
    }

    pub fn cycle_count(&self) -> usize {
        self.parts.len()
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join("+"))
    }
}

/// `[T_{i,j}, T_{j,i}, T_{i,j}]`, which evaluates to `P_{(i j)}`.
pub fn transposition_circuit(i: usize, j: usize, n: usize) -> Result<Circuit> {
    let a = Transvection::new(i, j)?;
    Circuit::new(n, vec![a, a.swapped(), a])
}

/// A circuit for `P_sigma` with exactly `3(n - c(sigma))` gates: each cycle
/// `(c_1 ... c_k)` is written as `(c_1 c_2)(c_2 c_3)...(c_{k-1} c_k)`.
pub fn perm_circuit(sigma: &Permutation) -> Result<Circuit> {
    let n = sigma.degree();
    let mut gates = Vec::with_capacity(3 * n);
    for cyc in sigma.cycles() {
        // rightmost factor is applied first
        for w in cyc.windows(2).rev() {
            gates.extend_from_slice(transposition_circuit(w[0], w[1], n)?.gates());
        }
    }
    Circuit::new(n.max(1), gates)
}

/// Joins all cycles of `sigma` into one long cycle `tau` with
/// `eval(glue) * P_sigma = P_tau`, using `3(c(sigma) - 1)` gates. The cycle
/// holding `1` absorbs the others in order of their minimum element `b`,
/// each through the transposition `(1 b)`.
pub fn glue_cycles(sigma: &Permutation) -> Result<(Permutation, Circuit)> {
    let n = sigma.degree();
    let mut tau = *sigma;
    let mut gates = Vec::new();
    for cyc in sigma.cycles().iter().skip(1) {
        let b = cyc[0];
        tau = Permutation::transposition(n, 1, b)?.compose(&tau)?;
        gates.extend_from_slice(transposition_circuit(1, b, n)?.gates());
    }
    Ok((tau, Circuit::new(n.max(1), gates)?))
}

/// One permutation per cycle type of `S_n`, in block form: the first part
/// occupies `1..=n_1`, the next `n_1+1..`, and so on. Types are listed in
/// reverse lexicographic order of their parts.
pub fn cycle_type_reps(n: usize) -> Vec<Permutation> {
    partitions(n)
        .into_iter()
        .map(|parts| {
            let mut start = 1;
            let cycles: Vec<Vec<usize>> = parts
                .iter()
                .map(|&len| {
                    let c: Vec<usize> = (start..start + len).collect();
                    start += len;
                    c
                })
                .collect();
            Permutation::from_cycles(n, &cycles).expect("block cycles are disjoint")
        })
        .collect()
}

/// Partitions of `n` into non-increasing parts.
fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleTypeCheck {
    pub cycle_type: CycleType,
    pub representative: Permutation,
    pub expected: usize,
    pub measured: usize,
}

impl CycleTypeCheck {
    pub fn pass(&self) -> bool {
        self.expected == self.measured
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjectureReport {
    pub n: usize,
    pub rows: Vec<CycleTypeCheck>,
}

impl ConjectureReport {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(CycleTypeCheck::pass)
    }
}

impl fmt::Display for ConjectureReport {
    /// `type,expected,measured,status` lines.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "type,expected,measured,status")?;
        for r in &self.rows {
            writeln!(
                f,
                "{},{},{},{}",
                r.cycle_type,
                r.expected,
                r.measured,
                if r.pass() { "PASS" } else { "FAIL" }
            )?;
        }
        Ok(())
    }
}

/// Checks `delta(P_sigma) = 3(n - c(sigma))` for one representative per cycle
/// type. Distances are constant on cycle types because relabelling qubits is
/// an isometry and conjugation preserves cycle type.
pub fn verify_conjecture(res: &ExplorationResult) -> Result<ConjectureReport> {
    if !res.complete {
        return Err(Error::Incomplete);
    }
    let rows = cycle_type_reps(res.n)
        .into_iter()
        .map(|sigma| {
            let cycle_type = CycleType::of(&sigma);
            Ok(CycleTypeCheck {
                expected: 3 * (res.n - cycle_type.cycle_count()),
                measured: distance_of(res, &sigma.matrix())?,
                cycle_type,
                representative: sigma,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ConjectureReport { n: res.n, rows })
}
