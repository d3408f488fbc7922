//! Generalized Riordan arrays and the Riordan group.
//!
//! For an invertible `g`, a delta series `f` and a reference sequence `c`,
//! the array has entries `a[n][k] = c_n [t^n] g(t) f(t)^k / c_k`. The pair
//! `(g, f, c)` is kept alongside the entries and is the normative description;
//! the triangle is a cache built from it.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::powerseries::{FormalPowerSeries, ReferenceSequence};
use crate::rational::Rational;

/// Square lower-triangular matrix of rationals, stored by rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Triangle {
    rows: Vec<Vec<Rational>>,
}

impl Triangle {
    /// Builds rows `0..=size`; `entry(n, k)` is queried for `k <= n` only.
    pub fn from_fn(size: usize, mut entry: impl FnMut(usize, usize) -> Rational) -> Self {
        Self {
            rows: (0..=size)
                .map(|n| (0..=n).map(|k| entry(n, k)).collect())
                .collect(),
        }
    }

    pub fn identity(size: usize) -> Self {
        Self::from_fn(size, |n, k| {
            if n == k {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    /// Largest row index `N`.
    pub fn size(&self) -> usize {
        self.rows.len() - 1
    }

    /// Entry `(n, k)`, zero above the diagonal.
    pub fn get(&self, n: usize, k: usize) -> Rational {
        if k > n {
            Rational::zero()
        } else {
            self.rows[n][k].clone()
        }
    }

    pub fn row(&self, n: usize) -> &[Rational] {
        &self.rows[n]
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn truncate(&self, size: usize) -> Self {
        Self {
            rows: self.rows[..=size].to_vec(),
        }
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.size() != rhs.size() {
            return Err(Error::SizeMismatch(self.size(), rhs.size()));
        }
        Ok(Self::from_fn(self.size(), |n, k| {
            (k..=n).fold(Rational::zero(), |acc, j| {
                acc + &self.rows[n][j] * &rhs.rows[j][k]
            })
        }))
    }

    /// Inverse by forward substitution; needs a nonzero diagonal.
    pub fn inverse(&self) -> Result<Self> {
        let size = self.size();
        if let Some(i) = (0..=size).find(|&i| self.rows[i][i].is_zero()) {
            return Err(Error::ZeroDiagonal(i));
        }
        let mut inv: Vec<Vec<Rational>> = Vec::with_capacity(size + 1);
        for n in 0..=size {
            let mut row = vec![Rational::zero(); n + 1];
            let diag = &self.rows[n][n];
            row[n] = diag.recip();
            for k in (0..n).rev() {
                // sum_{j=k}^{n} a[n][j] inv[j][k] = 0
                let mut acc = Rational::zero();
                for j in k..n {
                    acc += &self.rows[n][j] * &inv[j][k];
                }
                row[k] = -acc / diag;
            }
            inv.push(row);
        }
        Ok(Self { rows: inv })
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.size())
    }
}

impl fmt::Debug for Triangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// `c_n [t^n] g f^k / c_k`.
pub fn entry(
    g: &FormalPowerSeries,
    f: &FormalPowerSeries,
    c: &ReferenceSequence,
    n: usize,
    k: usize,
) -> Result<Rational> {
    check_pair(g, f)?;
    if k > n {
        return Err(Error::IndexOutOfRange(format!("column {k} above row {n}")));
    }
    let available = g.order().min(f.order());
    if n > available {
        return Err(Error::TruncationTooShort {
            requested: n,
            available,
        });
    }
    let g = g.truncate(n);
    let f = f.truncate(n);
    let column = &g * &f.pow_usize(k);
    Ok(c.value(n)? * column.coeff(n) / c.value(k)?)
}

fn check_pair(g: &FormalPowerSeries, f: &FormalPowerSeries) -> Result<()> {
    if !g.is_invertible() {
        return Err(Error::NotInvertible);
    }
    if !f.is_delta() {
        return Err(Error::NotDelta);
    }
    Ok(())
}

#[derive(Clone, PartialEq, Eq)]
pub struct RiordanArray {
    entries: Triangle,
    g: FormalPowerSeries,
    f: FormalPowerSeries,
    c: ReferenceSequence,
}

impl RiordanArray {
    /// Rows `0..=size` of the array attached to `(g, f)` and `c`.
    pub fn build(
        g: &FormalPowerSeries,
        f: &FormalPowerSeries,
        c: &ReferenceSequence,
        size: usize,
    ) -> Result<Self> {
        check_pair(g, f)?;
        let available = g.order().min(f.order());
        if size > available {
            return Err(Error::TruncationTooShort {
                requested: size,
                available,
            });
        }
        let g = g.truncate(size);
        let f = f.truncate(size);
        let cs = c.values(size)?;
        let mut columns = Vec::with_capacity(size + 1);
        let mut column = g.clone();
        for _ in 0..=size {
            let next = &column * &f;
            columns.push(column);
            column = next;
        }
        let entries = Triangle::from_fn(size, |n, k| &cs[n] * columns[k].coeff(n) / &cs[k]);
        Ok(Self {
            entries,
            g,
            f,
            c: c.clone(),
        })
    }

    pub fn identity(c: &ReferenceSequence, size: usize) -> Result<Self> {
        Self::build(
            &FormalPowerSeries::one(size),
            &FormalPowerSeries::t(size),
            c,
            size,
        )
    }

    pub fn size(&self) -> usize {
        self.entries.size()
    }

    pub fn get(&self, n: usize, k: usize) -> Rational {
        self.entries.get(n, k)
    }

    pub fn entries(&self) -> &Triangle {
        &self.entries
    }

    pub fn g(&self) -> &FormalPowerSeries {
        &self.g
    }

    pub fn f(&self) -> &FormalPowerSeries {
        &self.f
    }

    pub fn reference(&self) -> &ReferenceSequence {
        &self.c
    }

    /// Matrix product `self * rhs`. The provenance of the result is
    /// `(g_A (g_B o f_A), f_B o f_A)`.
    pub fn multiply(&self, rhs: &Self) -> Result<Self> {
        if self.c != rhs.c {
            return Err(Error::MixedReferenceSequence);
        }
        let entries = self.entries.matmul(&rhs.entries)?;
        let g = &self.g * &rhs.g.compose(&self.f)?;
        let f = rhs.f.compose(&self.f)?;
        Ok(Self {
            entries,
            g,
            f,
            c: self.c.clone(),
        })
    }

    /// The array of `(1 / g(fbar), fbar)`.
    pub fn inverse(&self) -> Result<Self> {
        let (g, f) = inverse_pair(&self.g, &self.f)?;
        Self::build(&g, &f, &self.c, self.size())
    }

    /// True when the cached entries agree with a fresh build from the pair.
    pub fn is_consistent(&self) -> Result<bool> {
        Ok(Self::build(&self.g, &self.f, &self.c, self.size())?.entries == self.entries)
    }
}

/// `(1 / g(fbar), fbar)` for a Sheffer pair `(g, f)`.
pub fn inverse_pair(
    g: &FormalPowerSeries,
    f: &FormalPowerSeries,
) -> Result<(FormalPowerSeries, FormalPowerSeries)> {
    check_pair(g, f)?;
    let fbar = f.comp_inverse()?;
    let g_inv = g.compose(&fbar)?.mul_inverse()?;
    Ok((g_inv, fbar))
}

impl fmt::Debug for RiordanArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "RiordanArray(g = {}, f = {}, c = {})",
            self.g,
            self.f,
            self.c.name()
        )?;
        fmt::Debug::fmt(&self.entries, f)
    }
}
