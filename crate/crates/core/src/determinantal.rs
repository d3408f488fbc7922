//! Determinantal forms of Sheffer, associated and 2-iterated sequences.
//!
//! Row `n` of the array expands the top-row polynomials in the unknown
//! sequence: `top_n = sum_k a[n][k] s_k`. Cramer's rule on this triangular
//! system gives `s_n` as a bordered determinant whose first row holds the
//! polynomials and whose remaining rows hold array entries.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{domain, Error, Result};
use crate::polynomial::Polynomial;
use crate::rational::Rational;
use crate::riordan::{RiordanArray, Triangle};
use crate::sheffer::{PolynomialSequence, Route};

/// Square matrix with a polynomial first row and a rational block below.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BorderedMatrix {
    top_row: Vec<Polynomial>,
    block: Vec<Vec<Rational>>,
}

impl BorderedMatrix {
    /// `block` must have one row fewer than `top_row` has entries, each of
    /// full width.
    pub fn new(top_row: Vec<Polynomial>, block: Vec<Vec<Rational>>) -> Result<Self> {
        let m = top_row.len();
        if m == 0 {
            return Err(Error::DimensionMismatch("empty top row".into()));
        }
        if block.len() + 1 != m {
            return Err(Error::DimensionMismatch(format!(
                "top row has {m} entries but block has {} rows",
                block.len()
            )));
        }
        if let Some((i, row)) = block.iter().enumerate().find(|(_, r)| r.len() != m) {
            return Err(Error::DimensionMismatch(format!(
                "block row {i} has {} entries, expected {m}",
                row.len()
            )));
        }
        Ok(Self { top_row, block })
    }

    pub fn dimension(&self) -> usize {
        self.top_row.len()
    }

    pub fn top_row(&self) -> &[Polynomial] {
        &self.top_row
    }

    pub fn block(&self) -> &[Vec<Rational>] {
        &self.block
    }

    /// Block row `i` (1-based, as it sits in the full matrix) vanishes in
    /// columns `< i - 1`.
    pub fn is_shifted_triangular(&self) -> bool {
        self.block
            .iter()
            .enumerate()
            .all(|(r, row)| row.iter().take(r).all(Zero::is_zero))
    }
}

/// Laplace expansion along the top row; numeric minors by Bareiss
/// elimination.
pub fn det_exact(m: &BorderedMatrix) -> Polynomial {
    let size = m.dimension();
    let mut acc = Polynomial::zero();
    for (j, p) in m.top_row.iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        let minor: Vec<Vec<Rational>> = m
            .block
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let d = rational_det(&minor, size - 1);
        if d.is_zero() {
            continue;
        }
        let d = if j % 2 == 0 { d } else { -d };
        acc = &acc + &p.scale(&d);
    }
    acc
}

/// Clears denominators row by row, then runs fraction-free Bareiss
/// elimination over the integers.
fn rational_det(rows: &[Vec<Rational>], n: usize) -> Rational {
    if n == 0 {
        return Rational::one();
    }
    let mut scale = BigInt::one();
    let mut mat: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            scale *= &l;
            row.iter().map(|v| v.numer() * (&l / v.denom())).collect()
        })
        .collect();
    let det = bareiss(&mut mat);
    Rational::new(det, scale)
}

fn bareiss(mat: &mut [Vec<BigInt>]) -> BigInt {
    let n = mat.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if mat[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&r| !mat[r][k].is_zero()) else {
                return BigInt::zero();
            };
            mat.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &mat[i][j] * &mat[k][k] - &mat[i][k] * &mat[k][j];
                mat[i][j] = v / &prev;
            }
        }
        prev = mat[k][k].clone();
    }
    sign * &mat[n - 1][n - 1]
}

fn diagonal_product(array: &Triangle, from: usize, n: usize) -> Result<Rational> {
    let mut acc = Rational::one();
    for k in from..=n {
        let d = array.get(k, k);
        if d.is_zero() {
            return Err(Error::ZeroDiagonal(k));
        }
        acc *= d;
    }
    Ok(acc)
}

fn check_size(array: &Triangle, top: &[Polynomial], n: usize) -> Result<()> {
    if n > array.size() {
        return Err(Error::IndexOutOfRange(format!(
            "member {n} requested from an array of size {}",
            array.size()
        )));
    }
    if top.len() <= n {
        return Err(Error::DimensionMismatch(format!(
            "top row needs {} polynomials, got {}",
            n + 1,
            top.len()
        )));
    }
    Ok(())
}

/// The `(n+1) x (n+1)` matrix with top row `top_0 ..= top_n` and block
/// entries `a[j][i-1]`.
pub fn sheffer_matrix(array: &Triangle, top: &[Polynomial], n: usize) -> Result<BorderedMatrix> {
    check_size(array, top, n)?;
    let block = (1..=n)
        .map(|i| (0..=n).map(|j| array.get(j, i - 1)).collect())
        .collect();
    BorderedMatrix::new(top[..=n].to_vec(), block)
}

/// The `n x n` matrix with top row `top_1 ..= top_n` and block entries
/// `a[j][i]`, `j >= 1`.
pub fn associated_matrix(array: &Triangle, top: &[Polynomial], n: usize) -> Result<BorderedMatrix> {
    check_size(array, top, n)?;
    if n == 0 {
        return Err(Error::DimensionMismatch(
            "associated form starts at n = 1".into(),
        ));
    }
    let block = (1..n)
        .map(|i| (1..=n).map(|j| array.get(j, i)).collect())
        .collect();
    BorderedMatrix::new(top[1..=n].to_vec(), block)
}

/// Solves `top_n = sum_k a[n][k] s_k` for `s_n` by Cramer's rule.
pub fn bordered_solve(array: &Triangle, top: &[Polynomial], n: usize) -> Result<Polynomial> {
    let m = sheffer_matrix(array, top, n)?;
    let diag = diagonal_product(array, 0, n)?;
    let sign = if n % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    };
    Ok(det_exact(&m).scale(&(sign / diag)))
}

/// Sign and scale applied to the associated determinant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AssociatedPrefactor {
    /// `(-1)^(n+1) / (a_11 ... a_nn)`, the value forced by expanding the full
    /// determinant along its first column.
    Expanded,
    /// `(-1)^n / (a_00 ... a_nn)`, which carries the sign of the full
    /// `(n+1) x (n+1)` form over unchanged and therefore yields `-s_n`.
    Unexpanded,
}

/// Associated form of [`bordered_solve`]; needs `a[n][0] = [n == 0]` and
/// `top_0 = 1`.
pub fn associated_solve(
    array: &Triangle,
    top: &[Polynomial],
    n: usize,
    prefactor: AssociatedPrefactor,
) -> Result<Polynomial> {
    check_size(array, top, n)?;
    if (0..=n).any(|m| {
        array.get(m, 0)
            != if m == 0 {
                Rational::one()
            } else {
                Rational::zero()
            }
    }) {
        return Err(domain(
            "determinantal",
            "array is not associated (first column must be 1, 0, 0, ...)",
        ));
    }
    if top[0] != Polynomial::one() {
        return Err(domain(
            "determinantal",
            "associated top row needs a constant first member 1",
        ));
    }
    if n == 0 {
        return Ok(Polynomial::one());
    }
    let m = associated_matrix(array, top, n)?;
    let det = det_exact(&m);
    let factor = match prefactor {
        AssociatedPrefactor::Expanded => {
            let sign = if n % 2 == 1 {
                Rational::one()
            } else {
                -Rational::one()
            };
            sign / diagonal_product(array, 1, n)?
        }
        AssociatedPrefactor::Unexpanded => {
            let sign = if n % 2 == 0 {
                Rational::one()
            } else {
                -Rational::one()
            };
            sign / diagonal_product(array, 0, n)?
        }
    };
    Ok(det.scale(&factor))
}

fn monomials(n: usize) -> Vec<Polynomial> {
    (0..=n)
        .map(|k| Polynomial::monomial(Rational::one(), k))
        .collect()
}

/// `s_n` of the Sheffer sequence whose monomial expansion is `array`.
pub fn sheffer_det(array: &RiordanArray, n: usize) -> Result<Polynomial> {
    bordered_solve(array.entries(), &monomials(n), n)
}

/// `s_n^[2]` from the array of the outer pair and the inner sequence.
pub fn iterated_det(
    array: &RiordanArray,
    inner: &PolynomialSequence,
    n: usize,
) -> Result<Polynomial> {
    bordered_solve(array.entries(), inner.polys(), n)
}

pub fn associated_det(array: &RiordanArray, n: usize) -> Result<Polynomial> {
    associated_solve(
        array.entries(),
        &monomials(n),
        n,
        AssociatedPrefactor::Expanded,
    )
}

pub fn iterated_associated_det(
    array: &RiordanArray,
    inner: &PolynomialSequence,
    n: usize,
) -> Result<Polynomial> {
    associated_solve(
        array.entries(),
        inner.polys(),
        n,
        AssociatedPrefactor::Expanded,
    )
}

/// All members `0 ..= size` by determinants; the associated form is used
/// when the array's first column is `1, 0, 0, ...`.
pub fn sequence_by_det(
    array: &RiordanArray,
    top: &[Polynomial],
    size: usize,
) -> Result<PolynomialSequence> {
    let entries = array.entries();
    let associated = is_associated(entries, size);
    let polys = (0..=size)
        .map(|n| {
            if associated && top[0] == Polynomial::one() {
                associated_solve(entries, top, n, AssociatedPrefactor::Expanded)
            } else {
                bordered_solve(entries, top, n)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    PolynomialSequence::new(polys, Route::Determinantal, None)
}

pub fn is_associated(array: &Triangle, size: usize) -> bool {
    (0..=size.min(array.size())).all(|m| {
        array.get(m, 0)
            == if m == 0 {
                Rational::one()
            } else {
                Rational::zero()
            }
    })
}

/// The same triangular system solved row by row.
pub fn forward_substitution(
    array: &Triangle,
    top: &[Polynomial],
    size: usize,
) -> Result<Vec<Polynomial>> {
    check_size(array, top, size)?;
    let mut out: Vec<Polynomial> = Vec::with_capacity(size + 1);
    for n in 0..=size {
        let d = array.get(n, n);
        if d.is_zero() {
            return Err(Error::ZeroDiagonal(n));
        }
        let mut acc = top[n].clone();
        for (k, s) in out.iter().enumerate() {
            let a = array.get(n, k);
            if !a.is_zero() {
                acc = &acc - &s.scale(&a);
            }
        }
        out.push(acc.scale(&d.recip()));
    }
    Ok(out)
}

/// Leading coefficient that the triangular system forces on `s_n` when each
/// `top_k` has leading coefficient `lead_k`.
pub fn expected_leading(array: &Triangle, top: &[Polynomial], n: usize) -> Option<Rational> {
    let lead = top.get(n)?.leading()?.clone();
    let d = array.get(n, n);
    (!d.is_zero()).then(|| lead / d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::powerseries::{FormalPowerSeries, ReferenceSequence};
    use crate::rational::{frac, int};
    use crate::sheffer::{sequence_from_gf, ShefferPair};
    use proptest::prelude::*;

    const EXP: ReferenceSequence = ReferenceSequence::Exponential;

    /// Cofactor expansion over the whole matrix, polynomial entries included.
    fn naive_det(rows: &[Vec<Polynomial>]) -> Polynomial {
        let n = rows.len();
        if n == 1 {
            return rows[0][0].clone();
        }
        let mut acc = Polynomial::zero();
        for j in 0..n {
            let minor: Vec<Vec<Polynomial>> = rows[1..]
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != j)
                        .map(|(_, p)| p.clone())
                        .collect()
                })
                .collect();
            let term = &rows[0][j] * &naive_det(&minor);
            acc = if j % 2 == 0 {
                &acc + &term
            } else {
                &acc - &term
            };
        }
        acc
    }

    fn full_rows(m: &BorderedMatrix) -> Vec<Vec<Polynomial>> {
        let mut rows = vec![m.top_row().to_vec()];
        rows.extend(
            m.block()
                .iter()
                .map(|r| r.iter().map(|v| Polynomial::constant(v.clone())).collect()),
        );
        rows
    }

    #[test]
    fn small_cases() {
        let p = Polynomial::from_ints(&[1, 2, 3]);
        assert_eq!(
            det_exact(&BorderedMatrix::new(vec![p.clone()], vec![]).unwrap()),
            p
        );
        let (a00, a10) = (frac(2, 3), int(5));
        let m = BorderedMatrix::new(
            vec![Polynomial::one(), Polynomial::x()],
            vec![vec![a00.clone(), a10.clone()]],
        )
        .unwrap();
        assert_eq!(det_exact(&m), Polynomial::new(vec![a10, -a00]));
        assert!(matches!(
            BorderedMatrix::new(vec![Polynomial::one(), Polynomial::x()], vec![]),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(matches!(
            BorderedMatrix::new(vec![Polynomial::one(), Polynomial::x()], vec![vec![int(1)]]),
            Err(Error::DimensionMismatch(_))
        ));
    }

    fn exponential_array(size: usize) -> RiordanArray {
        let f = FormalPowerSeries::new(vec![int(1), int(1)], size)
            .log()
            .unwrap();
        RiordanArray::build(&FormalPowerSeries::one(size), &f, &EXP, size).unwrap()
    }

    fn falling_array(size: usize) -> RiordanArray {
        let f = &FormalPowerSeries::t(size).exp().unwrap() - &FormalPowerSeries::one(size);
        RiordanArray::build(&FormalPowerSeries::one(size), &f, &EXP, size).unwrap()
    }

    #[test]
    fn sheffer_determinants() {
        let a = exponential_array(4);
        assert_eq!(
            sheffer_det(&a, 0).unwrap(),
            Polynomial::constant(a.get(0, 0).recip())
        );
        assert_eq!(
            sheffer_det(&a, 2).unwrap(),
            Polynomial::from_ints(&[0, 1, 1])
        );
        assert_eq!(
            associated_det(&falling_array(4), 2).unwrap(),
            Polynomial::from_ints(&[0, -1, 1])
        );
    }

    #[test]
    fn laguerre_det_matches_gf() {
        let g = FormalPowerSeries::new(vec![int(1), int(-1)], 6)
            .powi(-4)
            .unwrap();
        let f = FormalPowerSeries::from_fn(6, |k| int(if k == 0 { 0 } else { -1 }));
        let pair = ShefferPair::new(g.clone(), f.clone(), EXP).unwrap();
        let seq = sequence_from_gf(&pair, 6).unwrap();
        let array = RiordanArray::build(&g, &f, &EXP, 6).unwrap();
        for n in 0..=6 {
            assert_eq!(&sheffer_det(&array, n).unwrap(), seq.get(n));
        }
    }

    #[test]
    fn iterated_associated_examples() {
        // 2IFF and 2IEP: outer array with the inner sequence as top row.
        let ff = falling_array(4);
        let inner: Vec<Polynomial> = forward_substitution(ff.entries(), &monomials(4), 4).unwrap();
        let inner = PolynomialSequence::new(inner, Route::ForwardSubstitution, None).unwrap();
        assert_eq!(
            iterated_associated_det(&ff, &inner, 2).unwrap(),
            Polynomial::from_ints(&[0, -2, 1])
        );
        assert_eq!(
            iterated_det(&ff, &inner, 3).unwrap(),
            Polynomial::from_ints(&[0, 7, -6, 1])
        );

        let ep = exponential_array(4);
        let inner = forward_substitution(ep.entries(), &monomials(4), 4).unwrap();
        let inner = PolynomialSequence::new(inner, Route::ForwardSubstitution, None).unwrap();
        assert_eq!(
            iterated_associated_det(&ep, &inner, 4).unwrap(),
            Polynomial::from_ints(&[0, 15, 32, 12, 1])
        );
        assert_eq!(
            iterated_det(&ep, &inner, 2).unwrap(),
            Polynomial::from_ints(&[0, 2, 1])
        );
    }

    #[test]
    fn unexpanded_prefactor_flips_sign() {
        let a = falling_array(5);
        for n in 1..=5 {
            let good =
                associated_solve(a.entries(), &monomials(n), n, AssociatedPrefactor::Expanded)
                    .unwrap();
            let other = associated_solve(
                a.entries(),
                &monomials(n),
                n,
                AssociatedPrefactor::Unexpanded,
            )
            .unwrap();
            assert_eq!(other, -&good);
            assert_eq!(good, sheffer_det(&a, n).unwrap());
        }
    }

    #[test]
    fn zero_diagonal_rejected() {
        let t = Triangle::from_fn(2, |n, k| if n == 1 && k == 1 { int(0) } else { int(1) });
        assert_eq!(
            bordered_solve(&t, &monomials(2), 2),
            Err(Error::ZeroDiagonal(1))
        );
        assert_eq!(
            forward_substitution(&t, &monomials(2), 2),
            Err(Error::ZeroDiagonal(1))
        );
    }

    fn small() -> impl Strategy<Value = Rational> {
        (-4i64..=4, 1i64..=3).prop_map(|(p, q)| frac(p, q))
    }

    fn poly() -> impl Strategy<Value = Polynomial> {
        proptest::collection::vec(small(), 0..4).prop_map(Polynomial::new)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn laplace_bareiss_matches_cofactor(
            top in proptest::collection::vec(poly(), 5),
            block in proptest::collection::vec(proptest::collection::vec(small(), 5), 4),
        ) {
            let m = BorderedMatrix::new(top, block).unwrap();
            prop_assert_eq!(det_exact(&m), naive_det(&full_rows(&m)));
        }

        #[test]
        fn cramer_equals_forward_substitution(
            diag in proptest::collection::vec(small().prop_filter("nonzero", |r| !r.is_zero()), 7),
            lower in proptest::collection::vec(small(), 28),
        ) {
            let t = Triangle::from_fn(6, |n, k| {
                if n == k { diag[n].clone() } else { lower[n * (n - 1) / 2 + k].clone() }
            });
            let top = monomials(6);
            let fs = forward_substitution(&t, &top, 6).unwrap();
            for n in 0..=6 {
                let s = bordered_solve(&t, &top, n).unwrap();
                prop_assert_eq!(s.degree(), Some(n));
                prop_assert_eq!(s.leading().cloned(), expected_leading(&t, &top, n));
                prop_assert_eq!(&s, &fs[n]);
            }
        }
    }
}
