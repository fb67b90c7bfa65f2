//! Linearization coefficients `g(m,n;k)` in `P_m P_n = Σ_k g(m,n;k) P_k`.
//!
//! The main route inducts on the smaller index with
//! `P_{j+1} P_n = (x·P_j P_n - c_j P_{j-1} P_n) / a_j`, where multiplication by
//! `x` acts on the basis as `x·P_k = a_k P_{k+1} + c_k P_{k-1}` (`x·P_0 = P_1`).
//! [`linearize_oracle`] reaches the same numbers through the monomial basis and
//! shares nothing with the main route beyond the coefficients themselves.

use std::collections::BTreeMap;
use std::io::Write;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{checked_div, format_rational, int, Rational};
use crate::sequence::CoefficientSequence;

/// Default bound on `m + n` for [`linearize_oracle`].
pub const ORACLE_DEGREE_BOUND: usize = 30;

/// Coefficients of `P_m P_n` for one pair, stored on `|m-n| ..= m+n`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearizationRow {
    low: usize,
    coeffs: Vec<Rational>,
}

impl LinearizationRow {
    fn from_dense(m: usize, n: usize, dense: &[Rational]) -> Self {
        let low = m.abs_diff(n);
        Self { low, coeffs: dense[low..=m + n].to_vec() }
    }

    pub fn get(&self, k: usize) -> Rational {
        k.checked_sub(self.low)
            .and_then(|i| self.coeffs.get(i))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Nonzero entries `(k, g)` in increasing `k`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, &Rational)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, g)| !g.is_zero())
            .map(move |(i, g)| (self.low + i, g))
    }

    /// Every stored entry, including interior zeros.
    pub fn stored(&self) -> impl Iterator<Item = (usize, &Rational)> + '_ {
        self.coeffs.iter().enumerate().map(move |(i, g)| (self.low + i, g))
    }
}

/// `x · Σ v_k P_k` in the P-basis.
fn times_x(seq: &CoefficientSequence, v: &[Rational]) -> Result<Vec<Rational>> {
    let mut out = vec![Rational::zero(); v.len() + 1];
    for (k, coeff) in v.iter().enumerate() {
        if coeff.is_zero() {
            continue;
        }
        if k == 0 {
            out[1] += coeff;
        } else {
            out[k + 1] += seq.a(k)? * coeff;
            out[k - 1] += seq.c(k)? * coeff;
        }
    }
    Ok(out)
}

/// Dense rows `P_j P_n` for `j = 0..=upto`, each of length `j + n + 1`.
fn rows_for(seq: &CoefficientSequence, n: usize, upto: usize) -> Result<Vec<Vec<Rational>>> {
    let mut unit = vec![Rational::zero(); n + 1];
    unit[n] = int(1);
    let mut rows = vec![unit];
    if upto == 0 {
        return Ok(rows);
    }
    rows.push(times_x(seq, &rows[0])?);
    for j in 1..upto {
        let (c, a) = (seq.c(j)?, seq.a(j)?);
        let mut next = times_x(seq, &rows[j])?;
        for (k, prev) in rows[j - 1].iter().enumerate() {
            next[k] -= &c * prev;
        }
        for entry in &mut next {
            *entry = checked_div(entry, &a)?;
        }
        rows.push(next);
    }
    Ok(rows)
}

/// Nonzero coefficients `(k, g(m,n;k))` of `P_m P_n`.
pub fn linearize(seq: &CoefficientSequence, m: usize, n: usize) -> Result<Vec<(usize, Rational)>> {
    Ok(linearize_row(seq, m, n)?.entries().map(|(k, g)| (k, g.clone())).collect())
}

pub fn linearize_row(seq: &CoefficientSequence, m: usize, n: usize) -> Result<LinearizationRow> {
    let (lo, hi) = if m <= n { (m, n) } else { (n, m) };
    let rows = rows_for(seq, hi, lo)?;
    Ok(LinearizationRow::from_dense(lo, hi, &rows[lo]))
}

/// Same coefficients via the monomial basis: multiply the monomial
/// expansions of `P_m` and `P_n`, then peel off `P_{m+n}, ..., P_0` by
/// back-substitution against their leading coefficients.
pub fn linearize_oracle(seq: &CoefficientSequence, m: usize, n: usize) -> Result<Vec<(usize, Rational)>> {
    linearize_oracle_with_bound(seq, m, n, ORACLE_DEGREE_BOUND)
}

pub fn linearize_oracle_with_bound(
    seq: &CoefficientSequence,
    m: usize,
    n: usize,
    bound: usize,
) -> Result<Vec<(usize, Rational)>> {
    let degree = m + n;
    if degree > bound {
        return Err(Error::OracleBound { degree, bound });
    }
    let basis = seq.monomial_basis(degree)?;
    oracle_from_basis(&basis, m, n)
}

/// Oracle step on a precomputed monomial basis (`basis.len() > m + n`).
pub fn oracle_from_basis(basis: &[Vec<Rational>], m: usize, n: usize) -> Result<Vec<(usize, Rational)>> {
    let degree = m + n;
    let mut product = vec![Rational::zero(); degree + 1];
    for (i, p) in basis[m].iter().enumerate() {
        for (j, q) in basis[n].iter().enumerate() {
            product[i + j] += p * q;
        }
    }
    let mut out = Vec::new();
    for k in (0..=degree).rev() {
        let coeff = checked_div(&product[k], &basis[k][k])?;
        if coeff.is_zero() {
            continue;
        }
        for (i, b) in basis[k].iter().enumerate() {
            product[i] -= &coeff * b;
        }
        out.push((k, coeff));
    }
    out.reverse();
    Ok(out)
}

/// All `g(m,n;k)` with `m, n ≤ max_degree`.
#[derive(Clone, Debug)]
pub struct LinearizationTable {
    max_degree: usize,
    /// `rows[n][m]` holds `P_m P_n` for `m ≤ n`.
    rows: Vec<Vec<LinearizationRow>>,
}

impl LinearizationTable {
    pub fn build(seq: &CoefficientSequence, max_degree: usize) -> Result<Self> {
        let rows = (0..=max_degree)
            .map(|n| {
                let dense = rows_for(seq, n, n)?;
                Ok(dense.iter().enumerate().map(|(m, row)| LinearizationRow::from_dense(m, n, row)).collect())
            })
            .collect::<Result<_>>()?;
        Ok(Self { max_degree, rows })
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn row(&self, m: usize, n: usize) -> Option<&LinearizationRow> {
        let (lo, hi) = if m <= n { (m, n) } else { (n, m) };
        self.rows.get(hi).and_then(|r| r.get(lo))
    }

    /// `g(m,n;k)`, zero outside the stored support. Panics beyond `max_degree`.
    pub fn get(&self, m: usize, n: usize, k: usize) -> Rational {
        self.row(m, n).expect("index within table").get(k)
    }

    /// First negative coefficient in `(n, m, k)` lexicographic order, `m ≤ n`.
    pub fn scan(&self) -> ScanVerdict {
        for (n, rows) in self.rows.iter().enumerate() {
            for (m, row) in rows.iter().enumerate() {
                if let Some((k, g)) = row.stored().find(|(_, g)| g.is_negative()) {
                    return ScanVerdict::Negative(Witness { m, n, k, value: g.clone() });
                }
            }
        }
        ScanVerdict::AllNonnegative { max_degree: self.max_degree }
    }

    /// CSV with header `m,n,k,g` and one line per nonzero entry, `m ≤ n`.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(writer);
        out.write_record(["m", "n", "k", "g"])?;
        for (n, rows) in self.rows.iter().enumerate() {
            for (m, row) in rows.iter().enumerate() {
                for (k, g) in row.entries() {
                    out.write_record([m.to_string(), n.to_string(), k.to_string(), format_rational(g)])?;
                }
            }
        }
        out.flush()?;
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub m: usize,
    pub n: usize,
    pub k: usize,
    #[serde(with = "crate::rational::serde_str")]
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum ScanVerdict {
    AllNonnegative { max_degree: usize },
    Negative(Witness),
}

impl ScanVerdict {
    pub fn is_nonnegative(&self) -> bool {
        matches!(self, ScanVerdict::AllNonnegative { .. })
    }
}

pub fn scan_nonnegativity(seq: &CoefficientSequence, max_degree: usize) -> Result<ScanVerdict> {
    Ok(LinearizationTable::build(seq, max_degree)?.scan())
}

/// `h(n) = 1/g(n,n;0)`.
pub fn haar_from_g(seq: &CoefficientSequence, n: usize) -> Result<Rational> {
    checked_div(&int(1), &linearize_row(seq, n, n)?.get(0))
}

/// Sparse entries as a `k → "p/q"` map for reports.
pub fn entries_map(entries: &[(usize, Rational)]) -> BTreeMap<usize, String> {
    entries.iter().map(|(k, g)| (*k, format_rational(g))).collect()
}
