//! Exact spectral invariants: integer power sums, characteristic
//! polynomials, cospectrality decisions, and the trace identities for
//! quotient graphs.
//!
//! Nothing on a decision path uses floating point. Power sums are
//! arbitrary-precision integers obtained by exact matrix-vector walks.
//! Characteristic polynomials are computed modulo a pool of word-sized
//! primes (Hessenberg reduction in each prime field) and reconstructed by
//! Chinese remaindering against a proven coefficient bound, so the result
//! is exact, not probabilistic. The one floating-point routine,
//! [`approx_eigenvalues`], exists for human-readable listings only and is
//! never consulted by a decision.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::graph::Graph;
use crate::powers::{
    m_matrix, restricted_power, sym_power, PowersError, QuotientGraph, TransferMatrix,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SpectraError {
    #[error("prime pool exhausted before the coefficient bound was covered")]
    PrimePoolExhausted,
    #[error("quotient is not simply laced; trace identities do not apply")]
    NotSimplyLaced,
    #[error(transparent)]
    Powers(#[from] PowersError),
}

fn ser_bigint<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn ser_bigint_vec<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

/// Dense square matrix of arbitrary-precision integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    dim: usize,
    data: Vec<BigInt>,
}

impl ExactMatrix {
    pub fn zero(dim: usize) -> Self {
        ExactMatrix {
            dim,
            data: vec![BigInt::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = ExactMatrix::zero(dim);
        for i in 0..dim {
            m.data[i * dim + i] = BigInt::one();
        }
        m
    }

    pub fn adjacency(g: &Graph) -> Self {
        let mut m = ExactMatrix::zero(g.vertex_count());
        for &(u, v) in g.edges() {
            m.data[u * m.dim + v] = BigInt::one();
            m.data[v * m.dim + u] = BigInt::one();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.dim + j] = v;
    }

    pub fn mul(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.dim, other.dim);
        let dim = self.dim;
        let data: Vec<BigInt> = (0..dim)
            .into_par_iter()
            .flat_map_iter(|i| {
                let row = &self.data[i * dim..(i + 1) * dim];
                (0..dim).map(move |j| {
                    let mut acc = BigInt::zero();
                    for (k, a) in row.iter().enumerate() {
                        if !a.is_zero() {
                            acc += a * &other.data[k * dim + j];
                        }
                    }
                    acc
                })
            })
            .collect();
        ExactMatrix { dim, data }
    }

    pub fn trace(&self) -> BigInt {
        (0..self.dim).map(|i| self.entry(i, i)).sum()
    }
}

/// One step of the walk `v <- A v` for the 0/1 adjacency of `g`.
fn adjacency_apply(g: &Graph, v: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); v.len()];
    for &(a, b) in g.edges() {
        if !v[b].is_zero() {
            out[a] += &v[b];
        }
        if !v[a].is_zero() {
            out[b] += &v[a];
        }
    }
    out
}

/// The sequence `p_r = Tr(A^r)` for `r = 1..=R`: closed walk counts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PowerSumSequence {
    #[serde(serialize_with = "ser_bigint_vec")]
    values: Vec<BigInt>,
}

impl PowerSumSequence {
    /// `values()[r-1]` is `Tr(A^r)`.
    pub fn values(&self) -> &[BigInt] {
        &self.values
    }
}

/// Exact `Tr(A^r)` for `r = 1..=r_max`, one column walk per vertex.
pub fn power_sums(g: &Graph, r_max: usize) -> PowerSumSequence {
    assert!(r_max >= 1);
    let n = g.vertex_count();
    let per_column: Vec<Vec<BigInt>> = (0..n)
        .into_par_iter()
        .map(|j| {
            let mut v = vec![BigInt::zero(); n];
            v[j] = BigInt::one();
            let mut diag = Vec::with_capacity(r_max);
            for _ in 0..r_max {
                v = adjacency_apply(g, &v);
                diag.push(v[j].clone());
            }
            diag
        })
        .collect();
    let mut values = vec![BigInt::zero(); r_max];
    for diag in per_column {
        for (r, d) in diag.into_iter().enumerate() {
            values[r] += d;
        }
    }
    PowerSumSequence { values }
}

/// Truncated trace of the walk generating function:
/// `[Tr A^0, Tr A^1, ..., Tr A^R] = [n, p_1, ..., p_R]`.
pub fn walk_gen_trace(g: &Graph, r_max: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(r_max + 1);
    out.push(BigInt::from(g.vertex_count()));
    if r_max >= 1 {
        out.extend(power_sums(g, r_max).values.iter().cloned());
    }
    out
}

/// Exact characteristic polynomial `det(xI - A)`, coefficients in
/// ascending degree order; always monic with zero trace term.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharPoly {
    #[serde(serialize_with = "ser_bigint_vec")]
    coeffs: Vec<BigInt>,
}

impl CharPoly {
    /// Coefficient of `x^i` at index `i`; length is `degree + 1`.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if wrote {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            if mag != BigInt::one() || i == 0 {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Largest primes below 2^31, largest first.
fn prime_pool() -> &'static [u64] {
    static POOL: OnceLock<Vec<u64>> = OnceLock::new();
    POOL.get_or_init(|| {
        const LIMIT: usize = 1 << 31;
        const SEGMENT: usize = 2_000_000;
        let root = 46_341; // ceil(sqrt(2^31))
        let mut small = vec![true; root + 1];
        small[0] = false;
        small[1] = false;
        for i in 2..=root {
            if small[i] {
                for m in (i * i..=root).step_by(i) {
                    small[m] = false;
                }
            }
        }
        let lo = LIMIT - SEGMENT;
        let mut seg = vec![true; SEGMENT];
        for i in 2..=root {
            if small[i] {
                let start = lo.div_ceil(i) * i;
                for m in (start..LIMIT).step_by(i) {
                    seg[m - lo] = false;
                }
            }
        }
        let mut primes: Vec<u64> = seg
            .iter()
            .enumerate()
            .filter(|&(_, &is_p)| is_p)
            .map(|(i, _)| (lo + i) as u64)
            .collect();
        primes.reverse();
        primes.truncate(512);
        primes
    })
}

/// Bound on the characteristic polynomial coefficients of an n-vertex 0/1
/// symmetric matrix: `|c_{n-i}| <= C(n,i) * n^{ceil(i/2)}` (the number of
/// principal i-minors times a Hadamard bound per minor).
fn coefficient_bound(n: usize) -> BigInt {
    let mut best = BigInt::one();
    let mut binom = BigInt::one();
    for i in 0..=n {
        if i > 0 {
            binom = &binom * BigInt::from(n - i + 1) / BigInt::from(i);
        }
        let hadamard = BigInt::from(n).pow(i.div_ceil(2) as u32);
        let bound = &binom * hadamard;
        if bound > best {
            best = bound;
        }
    }
    best
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

fn mod_inv(a: u64, p: u64) -> u64 {
    mod_pow(a, p - 2, p)
}

/// Characteristic polynomial of the adjacency matrix over F_p, ascending
/// coefficients: Hessenberg reduction by similarity transforms, then the
/// standard last-column recurrence.
fn char_poly_mod(g: &Graph, p: u64) -> Vec<u64> {
    let n = g.vertex_count();
    let mut h = vec![vec![0u64; n]; n];
    for &(u, v) in g.edges() {
        h[u][v] = 1;
        h[v][u] = 1;
    }

    for j in 0..n.saturating_sub(2) {
        let Some(pivot) = (j + 1..n).find(|&i| h[i][j] != 0) else {
            continue;
        };
        if pivot != j + 1 {
            h.swap(pivot, j + 1);
            for row in h.iter_mut() {
                row.swap(pivot, j + 1);
            }
        }
        let inv = mod_inv(h[j + 1][j], p);
        for i in j + 2..n {
            if h[i][j] == 0 {
                continue;
            }
            let f = h[i][j] * inv % p;
            // similarity: subtract f*row_{j+1} from row_i, add f*col_i to col_{j+1}
            for c in 0..n {
                h[i][c] = (h[i][c] + p - f * h[j + 1][c] % p) % p;
            }
            for r in 0..n {
                h[r][j + 1] = (h[r][j + 1] + f * h[r][i]) % p;
            }
        }
    }

    // polys[m] is the characteristic polynomial of the leading m-by-m block
    let mut polys: Vec<Vec<u64>> = Vec::with_capacity(n + 1);
    polys.push(vec![1]);
    for m in 1..=n {
        // (x - h[m-1][m-1]) * polys[m-1]
        let prev = &polys[m - 1];
        let mut pm = vec![0u64; m + 1];
        let a = h[m - 1][m - 1] % p;
        for (d, &c) in prev.iter().enumerate() {
            pm[d + 1] = (pm[d + 1] + c) % p;
            pm[d] = (pm[d] + p - a * c % p) % p;
        }
        // minus h_{i,m} * (prod of subdiagonal h_{j,j-1}, j = i+1..=m) * polys[i-1],
        // indices 1-based
        let mut prod = 1u64;
        for i in (1..m).rev() {
            prod = prod * h[i][i - 1] % p;
            if prod == 0 {
                break;
            }
            let coeff = h[i - 1][m - 1] * prod % p;
            if coeff == 0 {
                continue;
            }
            for (d, &c) in polys[i - 1].iter().enumerate() {
                pm[d] = (pm[d] + p - coeff * c % p) % p;
            }
        }
        polys.push(pm);
    }
    polys.pop().unwrap()
}

/// Exact characteristic polynomial by multi-prime computation and Chinese
/// remaindering. Deterministic: the prime set is fixed by the coefficient
/// bound, never by luck.
pub fn char_poly(g: &Graph) -> Result<CharPoly, SpectraError> {
    let n = g.vertex_count();
    if n == 0 {
        return Ok(CharPoly {
            coeffs: vec![BigInt::one()],
        });
    }
    let needed = coefficient_bound(n) * 2 + 1;
    let mut primes = Vec::new();
    let mut product = BigInt::one();
    for &p in prime_pool() {
        if product > needed {
            break;
        }
        primes.push(p);
        product *= BigInt::from(p);
    }
    if product <= needed {
        return Err(SpectraError::PrimePoolExhausted);
    }

    let residues: Vec<Vec<u64>> = primes.par_iter().map(|&p| char_poly_mod(g, p)).collect();

    let mut coeffs = Vec::with_capacity(n + 1);
    for d in 0..=n {
        let mut x = BigInt::from(residues[0][d]);
        let mut modulus = BigInt::from(primes[0]);
        for (idx, &p) in primes.iter().enumerate().skip(1) {
            let pb = BigInt::from(p);
            let m_mod_p = (&modulus % &pb + &pb) % &pb;
            let inv = BigInt::from(mod_inv(
                u64::try_from(&m_mod_p % &pb).expect("residue fits"),
                p,
            ));
            let target = BigInt::from(residues[idx][d]);
            let mut t = (&target - &x) % &pb;
            if t.is_negative() {
                t += &pb;
            }
            t = t * inv % &pb;
            x += t * &modulus;
            modulus *= pb;
        }
        // balanced representative
        if &x * 2 > modulus {
            x -= &modulus;
        }
        coeffs.push(x);
    }
    debug_assert!(coeffs[n].is_one());
    Ok(CharPoly { coeffs })
}

/// Reference characteristic polynomial by cofactor expansion of `xI - A`
/// over integer polynomials. Factorial time; capped at 10 vertices. This
/// is the slow cross-check for [`char_poly`] and shares no code with it.
pub fn char_poly_by_expansion(g: &Graph) -> CharPoly {
    let n = g.vertex_count();
    assert!(n <= 10, "cofactor expansion is factorial; capped at 10");
    // entries of xI - A as degree <= 1 polynomials
    let entry = |i: usize, j: usize| -> Vec<BigInt> {
        if i == j {
            vec![BigInt::zero(), BigInt::one()]
        } else if g.has_edge(i, j) {
            vec![BigInt::from(-1)]
        } else {
            vec![BigInt::zero()]
        }
    };
    fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        if a.iter().all(Zero::is_zero) || b.iter().all(Zero::is_zero) {
            return vec![BigInt::zero()];
        }
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }
    fn poly_add_assign(target: &mut Vec<BigInt>, other: &[BigInt], negate: bool) {
        if target.len() < other.len() {
            target.resize(other.len(), BigInt::zero());
        }
        for (t, o) in target.iter_mut().zip(other) {
            if negate {
                *t -= o;
            } else {
                *t += o;
            }
        }
    }
    fn minor_det(
        entry: &impl Fn(usize, usize) -> Vec<BigInt>,
        rows: &[usize],
        cols: &[usize],
    ) -> Vec<BigInt> {
        if rows.is_empty() {
            return vec![BigInt::one()];
        }
        let mut det = vec![BigInt::zero()];
        for (pos, &c) in cols.iter().enumerate() {
            let e = entry(rows[0], c);
            if e.iter().all(Zero::is_zero) {
                continue;
            }
            let rest_cols: Vec<usize> = cols
                .iter()
                .copied()
                .filter(|&other| other != c)
                .collect();
            let sub = minor_det(entry, &rows[1..], &rest_cols);
            poly_add_assign(&mut det, &poly_mul(&e, &sub), pos % 2 == 1);
        }
        det
    }
    let all: Vec<usize> = (0..n).collect();
    let mut coeffs = minor_det(&entry, &all, &all);
    coeffs.resize(n + 1, BigInt::zero());
    CharPoly { coeffs }
}

/// Power sums `p_1..p_R` recovered from a characteristic polynomial via
/// Newton's identities; the cross-check linking [`char_poly`] to
/// [`power_sums`].
pub fn power_sums_from_char_poly(cp: &CharPoly, r_max: usize) -> Vec<BigInt> {
    let n = cp.degree();
    // char poly = sum_i (-1)^i e_i x^{n-i} with e_0 = 1
    let e: Vec<BigInt> = (0..=n)
        .map(|i| {
            let c = &cp.coeffs()[n - i];
            if i % 2 == 1 {
                -c
            } else {
                c.clone()
            }
        })
        .collect();
    let mut p: Vec<BigInt> = Vec::with_capacity(r_max + 1);
    p.push(BigInt::from(n)); // p_0 counts the roots
    for m in 1..=r_max {
        // Newton: p_m = sum_{i=1}^{min(m-1,n)} (-1)^{i-1} e_i p_{m-i},
        // plus the extra term (-1)^{m-1} m e_m while m <= n
        let mut acc = BigInt::zero();
        for i in 1..=(m - 1).min(n) {
            let term = &e[i] * &p[m - i];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        if m <= n {
            let term = BigInt::from(m) * &e[m];
            if m % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        p.push(acc);
    }
    p.remove(0);
    p
}

/// Exact cospectrality: equal characteristic polynomials. Different vertex
/// counts are never cospectral.
pub fn cospectral(g: &Graph, h: &Graph) -> Result<bool, SpectraError> {
    if g.vertex_count() != h.vertex_count() {
        return Ok(false);
    }
    Ok(char_poly(g)? == char_poly(h)?)
}

/// The second route to the same decision: equal `Tr(A^r)` for `r = 1..=n`.
/// Kept for cross-checks; prefer [`cospectral`], whose cost does not grow
/// with the magnitude of entries of `A^n`.
pub fn cospectral_via_power_sums(g: &Graph, h: &Graph) -> bool {
    if g.vertex_count() != h.vertex_count() {
        return false;
    }
    let n = g.vertex_count();
    if n == 0 {
        return true;
    }
    power_sums(g, n) == power_sums(h, n)
}

/// `Tr(A^r M)` for `r = 1..=r_max`, where `A` is the adjacency of `g` and
/// `M` a transfer matrix on the same vertex set; column walks, no full
/// matrix powers.
pub fn trace_power_times_transfer(g: &Graph, m: &TransferMatrix, r_max: usize) -> Vec<BigInt> {
    assert_eq!(g.vertex_count(), m.dim());
    let n = g.vertex_count();
    let per_column: Vec<Vec<BigInt>> = (0..n)
        .into_par_iter()
        .map(|j| {
            let mut v = vec![BigInt::zero(); n];
            v[j] = BigInt::one();
            let mut contributions = Vec::with_capacity(r_max);
            for _ in 0..r_max {
                v = adjacency_apply(g, &v);
                // Tr(A^r M) = sum_{i,j} A^r[i,j] M[j,i]
                let mut c = BigInt::zero();
                for (i, vi) in v.iter().enumerate() {
                    let w = m.entry(j, i);
                    if w != 0 && !vi.is_zero() {
                        c += vi * BigInt::from(w);
                    }
                }
                contributions.push(c);
            }
            contributions
        })
        .collect();
    let mut out = vec![BigInt::zero(); r_max];
    for contributions in per_column {
        for (r, c) in contributions.into_iter().enumerate() {
            out[r] += c;
        }
    }
    out
}

/// The quotient traces recovered from the base graph through the transfer
/// structure: per exponent, the sum over orbits `U` of
/// `(1/|U|) * sum_{u,w in U} A^r(u,w)`.
///
/// Each orbit block sum is divisible by the orbit size whenever the
/// partition really comes from an action by automorphisms (path lifting);
/// the flag records whether every division was exact. An inexact division
/// means the identity cannot hold and the floor value is reported.
pub fn quotient_traces_via_transfer(
    g: &Graph,
    m: &TransferMatrix,
    r_max: usize,
) -> Vec<(BigInt, bool)> {
    assert_eq!(g.vertex_count(), m.dim());
    let n = g.vertex_count();
    let orbits = m.orbit_count();
    let per_column: Vec<Vec<BigInt>> = (0..n)
        .into_par_iter()
        .map(|j| {
            let mut v = vec![BigInt::zero(); n];
            v[j] = BigInt::one();
            let own = m.orbit_of(j);
            let mut block_sums = Vec::with_capacity(r_max);
            for _ in 0..r_max {
                v = adjacency_apply(g, &v);
                let mut c = BigInt::zero();
                for (i, vi) in v.iter().enumerate() {
                    if m.orbit_of(i) == own && !vi.is_zero() {
                        c += vi;
                    }
                }
                block_sums.push(c);
            }
            block_sums
        })
        .collect();
    let mut sums = vec![vec![BigInt::zero(); orbits]; r_max];
    for (j, block_sums) in per_column.into_iter().enumerate() {
        let own = m.orbit_of(j);
        for (r, c) in block_sums.into_iter().enumerate() {
            sums[r][own] += c;
        }
    }
    sums.into_iter()
        .map(|by_orbit| {
            let mut total = BigInt::zero();
            let mut exact = true;
            for (orbit, sum) in by_orbit.into_iter().enumerate() {
                let size = BigInt::from(m.orbit_size(orbit));
                let (q, rem) = num_integer::Integer::div_rem(&sum, &size);
                exact &= rem.is_zero();
                total += q;
            }
            (total, exact)
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceRow {
    pub r: usize,
    #[serde(serialize_with = "ser_bigint")]
    pub lhs: BigInt,
    #[serde(serialize_with = "ser_bigint")]
    pub rhs: BigInt,
    pub equal: bool,
}

/// Per-exponent comparison of two exact trace computations.
#[derive(Clone, Debug, Serialize)]
pub struct TraceIdentityReport {
    pub rows: Vec<TraceRow>,
    pub all_equal: bool,
}

fn trace_report(lhs: Vec<BigInt>, rhs: Vec<(BigInt, bool)>) -> TraceIdentityReport {
    let rows: Vec<TraceRow> = lhs
        .into_iter()
        .zip(rhs)
        .enumerate()
        .map(|(i, (lhs, (rhs, exact)))| TraceRow {
            r: i + 1,
            equal: exact && lhs == rhs,
            lhs,
            rhs,
        })
        .collect();
    let all_equal = rows.iter().all(|row| row.equal);
    TraceIdentityReport { rows, all_equal }
}

/// Trace formula for simply laced quotients: `Tr(A_{X/G}^r)` computed on
/// the quotient graph must match the orbit-normalized block trace of
/// `A_X^r`, for `r = 1..=r_max`. Both sides are computed independently,
/// the left by walks on the quotient, the right by walks on the base.
pub fn verify_quotient_trace(
    q: &QuotientGraph,
    r_max: usize,
) -> Result<TraceIdentityReport, SpectraError> {
    let quotient = q.quotient().ok_or(SpectraError::NotSimplyLaced)?;
    let lhs = power_sums(quotient, r_max).values;
    let m = TransferMatrix::from_action(q.action());
    let rhs = quotient_traces_via_transfer(q.base(), &m, r_max);
    Ok(trace_report(lhs, rhs))
}

/// Trace formula for symmetric powers: `Tr(A_{sym}^r)` must match the
/// transfer-normalized block trace of the restricted power, for
/// `r = 1..=r_max`. Builds the symmetric power, the restricted power, and
/// the transfer matrix from scratch.
pub fn verify_sym_trace(
    g: &Graph,
    k: usize,
    r_max: usize,
) -> Result<TraceIdentityReport, SpectraError> {
    let sym = sym_power(g, k)?;
    let restricted = restricted_power(g, k)?;
    let m = m_matrix(g, k)?;
    let lhs = power_sums(&sym, r_max).values;
    let rhs = quotient_traces_via_transfer(&restricted, &m, r_max);
    Ok(trace_report(lhs, rhs))
}

#[derive(Clone, Debug, Serialize)]
pub struct PathLiftingMismatch {
    pub row_orbit: usize,
    pub col_orbit: usize,
    #[serde(serialize_with = "ser_bigint")]
    pub scaled_quotient_entry: BigInt,
    #[serde(serialize_with = "ser_bigint")]
    pub orbit_pair_sum: BigInt,
}

#[derive(Clone, Debug, Serialize)]
pub struct PathLiftingRow {
    pub r: usize,
    pub equal: bool,
    pub mismatch: Option<PathLiftingMismatch>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PathLiftingReport {
    pub rows: Vec<PathLiftingRow>,
    pub all_equal: bool,
}

/// Entrywise path-lifting identity on a simply laced quotient:
/// `|U| * A_{X/G}^r(U,W)` must equal the sum of `A_X^r(u,w)` over the
/// orbit pair, for every pair of orbits and every `r = 1..=r_max`.
pub fn verify_path_lifting(
    q: &QuotientGraph,
    r_max: usize,
) -> Result<PathLiftingReport, SpectraError> {
    let quotient = q.quotient().ok_or(SpectraError::NotSimplyLaced)?;
    let action = q.action();
    let orbits = action.orbit_count();
    let n = q.base().vertex_count();

    // orbit-pair sums of A_X^r, one column walk per base vertex
    let mut pair_sums = vec![vec![vec![BigInt::zero(); orbits]; orbits]; r_max];
    let per_column: Vec<Vec<Vec<BigInt>>> = (0..n)
        .into_par_iter()
        .map(|j| {
            let mut v = vec![BigInt::zero(); n];
            v[j] = BigInt::one();
            let mut rows = Vec::with_capacity(r_max);
            for _ in 0..r_max {
                v = adjacency_apply(q.base(), &v);
                let mut by_orbit = vec![BigInt::zero(); orbits];
                for (i, vi) in v.iter().enumerate() {
                    if !vi.is_zero() {
                        by_orbit[action.orbit_of(i)] += vi;
                    }
                }
                rows.push(by_orbit);
            }
            rows
        })
        .collect();
    for (j, rows) in per_column.iter().enumerate() {
        let col_orbit = action.orbit_of(j);
        for (r, by_orbit) in rows.iter().enumerate() {
            for (row_orbit, sum) in by_orbit.iter().enumerate() {
                pair_sums[r][row_orbit][col_orbit] += sum;
            }
        }
    }

    // exact powers of the quotient adjacency
    let adj = ExactMatrix::adjacency(quotient);
    let mut power = adj.clone();
    let mut rows = Vec::with_capacity(r_max);
    for r in 1..=r_max {
        if r > 1 {
            power = power.mul(&adj);
        }
        let mut mismatch = None;
        'search: for u in 0..orbits {
            let size = BigInt::from(action.orbit_size(u));
            for w in 0..orbits {
                let scaled = power.entry(u, w) * &size;
                if scaled != pair_sums[r - 1][u][w] {
                    mismatch = Some(PathLiftingMismatch {
                        row_orbit: u,
                        col_orbit: w,
                        scaled_quotient_entry: scaled,
                        orbit_pair_sum: pair_sums[r - 1][u][w].clone(),
                    });
                    break 'search;
                }
            }
        }
        rows.push(PathLiftingRow {
            r,
            equal: mismatch.is_none(),
            mismatch,
        });
    }
    let all_equal = rows.iter().all(|row| row.equal);
    Ok(PathLiftingReport { rows, all_equal })
}

/// Floating-point eigenvalue listing by cyclic Jacobi rotations, sorted
/// descending. For human-readable output only; every decision in this
/// module uses exact integer arithmetic instead.
pub fn approx_eigenvalues(g: &Graph) -> Vec<f64> {
    let n = g.vertex_count();
    let mut a = vec![vec![0f64; n]; n];
    for &(u, v) in g.edges() {
        a[u][v] = 1.0;
        a[v][u] = 1.0;
    }
    for _sweep in 0..100 {
        let mut off = 0f64;
        for p in 0..n {
            for q in p + 1..n {
                off += a[p][q] * a[p][q];
            }
        }
        if off < 1e-24 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-15 {
                    continue;
                }
                let theta = 0.5 * (a[q][q] - a[p][p]) / a[p][q];
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for i in 0..n {
                    let (aip, aiq) = (a[i][p], a[i][q]);
                    a[i][p] = c * aip - s * aiq;
                    a[i][q] = s * aip + c * aiq;
                }
                for i in 0..n {
                    let (api, aqi) = (a[p][i], a[q][i]);
                    a[p][i] = c * api - s * aqi;
                    a[q][i] = s * api + c * aqi;
                }
            }
        }
    }
    let mut eigen: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    eigen.sort_by(|x, y| y.partial_cmp(x).unwrap());
    eigen
}
