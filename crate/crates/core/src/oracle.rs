//! Ground truth from moments alone: recurrence coefficients by the Chebyshev algorithm,
//! the monic orthogonal basis, and the Christoffel-Darboux kernel identity.
//!
//! Nothing here uses the closed forms in [`crate::closed_form`]; the two are compared
//! by the verifier and the test suites.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalar::{format_exact, ExactScalar};
use crate::weight::MomentLadder;

/// Recurrence data for `(x - alpha_n) P_n = P_{n+1} + beta_n P_{n-1}` on `0 <= n <= N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceTable {
    /// `alpha_0 ..= alpha_N`.
    pub alpha: Vec<ExactScalar>,
    /// `beta_0 ..= beta_N` with `beta_0 = 0`.
    pub beta: Vec<ExactScalar>,
    /// `zeta_n / zeta_0 = beta_1 ... beta_n`.
    pub zeta_ratio: Vec<ExactScalar>,
    /// `p_1(0) ..= p_1(N)`, read off the generated monic polynomials.
    pub p1: Vec<ExactScalar>,
}

impl RecurrenceTable {
    /// Largest index covered.
    pub fn len_n(&self) -> usize {
        self.alpha.len() - 1
    }

    /// Builds the table from externally supplied coefficients (`beta_0` is forced to 0).
    pub fn from_coefficients(alpha: Vec<ExactScalar>, mut beta: Vec<ExactScalar>) -> Self {
        assert_eq!(alpha.len(), beta.len(), "alpha and beta must cover the same range");
        beta[0] = ExactScalar::zero();
        let mut zeta_ratio = Vec::with_capacity(beta.len());
        let mut acc = ExactScalar::one();
        zeta_ratio.push(acc.clone());
        for b in &beta[1..] {
            acc *= b;
            zeta_ratio.push(acc.clone());
        }
        let mut table = Self {
            alpha,
            beta,
            zeta_ratio,
            p1: Vec::new(),
        };
        let n = table.len_n();
        let basis = generate_monic(&table, n);
        table.p1 = (0..=n).map(|k| p1_of(&basis, k)).collect();
        table
    }
}

/// Monic orthogonal polynomials `P_0 ..= P_N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthoBasis {
    pub polys: Vec<Polynomial>,
}

impl OrthoBasis {
    pub fn get(&self, n: usize) -> &Polynomial {
        &self.polys[n]
    }

    /// `P_n` with `P_{-1} = 0`.
    pub fn get_signed(&self, n: i64) -> Polynomial {
        if n < 0 {
            Polynomial::zero()
        } else {
            self.polys[n as usize].clone()
        }
    }

    pub fn len_n(&self) -> usize {
        self.polys.len() - 1
    }
}

/// Chebyshev's algorithm on ordinary moments, carried out exactly.
///
/// Needs `m_k / m_0` for `k <= 2N + 1`. The mixed moments are
/// `sigma_{k,l} = L[P_k x^l]`, so `beta_k = sigma_{k,k} / sigma_{k-1,k-1}` is a ratio of
/// squared norms and must be positive.
pub fn chebyshev_recurrence(moments: &MomentLadder, n_max: usize) -> Result<RecurrenceTable> {
    let width = 2 * n_max + 2;
    let mu: Vec<ExactScalar> = (0..width)
        .map(|k| moments.ratio(k as i64).cloned())
        .collect::<Result<_>>()?;

    let mut alpha = Vec::with_capacity(n_max + 1);
    let mut beta = Vec::with_capacity(n_max + 1);
    let mut prev: Vec<ExactScalar> = vec![ExactScalar::zero(); width];
    let mut cur = mu.clone();
    alpha.push(&mu[1] / &mu[0]);
    beta.push(ExactScalar::zero());

    for k in 1..=n_max {
        let mut next = vec![ExactScalar::zero(); width];
        for l in k..width - k {
            let mut v = &cur[l + 1] - &alpha[k - 1] * &cur[l];
            if k >= 2 {
                v -= &beta[k - 1] * &prev[l];
            }
            next[l] = v;
        }
        let b = &next[k] / &cur[k - 1];
        if !b.is_positive() {
            return Err(Error::NotPositiveDefinite {
                n: k,
                value: format_exact(&b),
            });
        }
        alpha.push(&next[k + 1] / &next[k] - &cur[k] / &cur[k - 1]);
        beta.push(b);
        prev = cur;
        cur = next;
    }
    Ok(RecurrenceTable::from_coefficients(alpha, beta))
}

/// `P_0 = 1`, `P_1 = x - alpha_0`, `P_{n+1} = (x - alpha_n) P_n - beta_n P_{n-1}`.
pub fn generate_monic(table: &RecurrenceTable, n_max: usize) -> OrthoBasis {
    let mut polys = Vec::with_capacity(n_max + 1);
    polys.push(Polynomial::one());
    let mut prev = Polynomial::zero();
    for n in 0..n_max {
        let cur = polys[n].clone();
        let next = &(&Polynomial::linear_root(&table.alpha[n]) * &cur) - &prev.scale(&table.beta[n]);
        prev = cur;
        polys.push(next);
    }
    OrthoBasis { polys }
}

/// Coefficient of `x^{n-1}` in `P_n`; `p_1(0) = 0`.
pub fn p1_of(basis: &OrthoBasis, n: usize) -> ExactScalar {
    if n == 0 {
        return ExactScalar::zero();
    }
    basis.get(n).coeff(n - 1)
}

/// `zeta_n / zeta_0 = beta_1 ... beta_n`.
pub fn zeta_ratio(table: &RecurrenceTable, n: usize) -> ExactScalar {
    table.beta[1..=n].iter().fold(ExactScalar::one(), |acc, b| acc * b)
}

/// Dense bivariate polynomial, `coeffs[i][j]` multiplying `x^i y^j`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Bivariate {
    coeffs: Vec<Vec<ExactScalar>>,
}

impl Bivariate {
    /// `a(x) b(y)`.
    pub fn outer(a: &Polynomial, b: &Polynomial) -> Self {
        let coeffs = a
            .coeffs()
            .iter()
            .map(|ai| b.coeffs().iter().map(|bj| ai * bj).collect())
            .collect();
        Self { coeffs }.trimmed()
    }

    fn trimmed(mut self) -> Self {
        for row in &mut self.coeffs {
            while row.last().is_some_and(|c| c.is_zero()) {
                row.pop();
            }
        }
        while self.coeffs.last().is_some_and(|r| r.is_empty()) {
            self.coeffs.pop();
        }
        self
    }

    fn get(&self, i: usize, j: usize) -> ExactScalar {
        self.coeffs
            .get(i)
            .and_then(|r| r.get(j))
            .cloned()
            .unwrap_or_else(ExactScalar::zero)
    }

    fn shape(&self) -> (usize, usize) {
        let cols = self.coeffs.iter().map(Vec::len).max().unwrap_or(0);
        (self.coeffs.len(), cols)
    }

    pub fn add(&self, other: &Self, sign: &ExactScalar) -> Self {
        let (r1, c1) = self.shape();
        let (r2, c2) = other.shape();
        let coeffs = (0..r1.max(r2))
            .map(|i| {
                (0..c1.max(c2))
                    .map(|j| self.get(i, j) + sign * other.get(i, j))
                    .collect()
            })
            .collect();
        Self { coeffs }.trimmed()
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|r| r.iter().map(|v| v * c).collect()).collect(),
        }
        .trimmed()
    }

    /// Multiplies by `(x - y)`.
    pub fn times_x_minus_y(&self) -> Self {
        let (r, c) = self.shape();
        let mut coeffs = vec![vec![ExactScalar::zero(); c + 1]; r + 1];
        for i in 0..r {
            for j in 0..c {
                let v = self.get(i, j);
                if v.is_zero() {
                    continue;
                }
                coeffs[i + 1][j] += &v;
                coeffs[i][j + 1] -= &v;
            }
        }
        Self { coeffs }.trimmed()
    }
}

/// Checks, as an exact bivariate identity,
/// `zeta_{n-1} (x - y) sum_{k<n} P_k(x) P_k(y) / zeta_k = P_n(x) P_{n-1}(y) - P_n(y) P_{n-1}(x)`.
pub fn cd_identity_check(basis: &OrthoBasis, table: &RecurrenceTable, n: usize) -> bool {
    if n == 0 {
        return true;
    }
    let mut kernel = Bivariate::default();
    let one = ExactScalar::one();
    for k in 0..n {
        let term = Bivariate::outer(basis.get(k), basis.get(k)).scale(&table.zeta_ratio[k].recip());
        kernel = kernel.add(&term, &one);
    }
    let lhs = kernel.times_x_minus_y().scale(&table.zeta_ratio[n - 1]);
    let rhs =
        Bivariate::outer(basis.get(n), basis.get(n - 1)).add(&Bivariate::outer(basis.get(n - 1), basis.get(n)), &-one);
    lhs == rhs
}

/// [`cd_identity_check`] for every `n <= N`, accumulating the kernel once.
pub fn cd_identity_checks(basis: &OrthoBasis, table: &RecurrenceTable, n_max: usize) -> Vec<bool> {
    let one = ExactScalar::one();
    let mut kernel = Bivariate::default();
    let mut out = vec![true];
    for n in 1..=n_max {
        let k = n - 1;
        let term = Bivariate::outer(basis.get(k), basis.get(k)).scale(&table.zeta_ratio[k].recip());
        kernel = kernel.add(&term, &one);
        let lhs = kernel.times_x_minus_y().scale(&table.zeta_ratio[n - 1]);
        let rhs = Bivariate::outer(basis.get(n), basis.get(n - 1))
            .add(&Bivariate::outer(basis.get(n - 1), basis.get(n)), &-one.clone());
        out.push(lhs == rhs);
    }
    out
}

/// Determinant of the Hankel matrix `[m_{i+j}]_{i,j<size}` by exact elimination.
pub fn hankel_determinant(moments: &MomentLadder, size: usize) -> Result<ExactScalar> {
    let mut m: Vec<Vec<ExactScalar>> = (0..size)
        .map(|i| {
            (0..size)
                .map(|j| moments.ratio((i + j) as i64).cloned())
                .collect::<Result<_>>()
        })
        .collect::<Result<_>>()?;
    let mut det = ExactScalar::one();
    for col in 0..size {
        let Some(pivot) = (col..size).find(|&r| !m[r][col].is_zero()) else {
            return Ok(ExactScalar::zero());
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for r in col + 1..size {
            let f = &m[r][col] / &p;
            if f.is_zero() {
                continue;
            }
            let (top, bottom) = m.split_at_mut(r);
            for (dst, src) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                *dst -= &f * src;
            }
        }
    }
    Ok(det)
}

/// Secondary spot check: `beta_n = H_{n-1} H_{n+1} / H_n^2` with `H_k` the `k x k` Hankel
/// determinant (`H_0 = 1`).
pub fn hankel_beta(moments: &MomentLadder, n: usize) -> Result<ExactScalar> {
    assert!(n >= 1);
    let h = |k: usize| hankel_determinant(moments, k);
    let hn = h(n)?;
    Ok(h(n - 1)? * h(n + 1)? / (&hn * &hn))
}
