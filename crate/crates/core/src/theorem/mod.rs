//! The rank-two kernel `G = Ker(F(x, y) → Z_d)`, `x ↦ 1`, `y ↦ 0`, and the
//! machinery showing that `ω_n = [x, y, x, …, x]` never falls into `[G, G]`.
//!
//! With the free basis `a = x^d`, `b_k = x^{k−1} y x^{−(k−1)}`, the
//! `b`-exponent sums `v_n = (P_1(ω_n), …, P_d(ω_n))` obey `v_{n+1} = A v_n`
//! for the cyclic difference matrix `A`, starting from `v_0 = (−1, 1, 0, …)`.
//! Everything here is checked two ways: by rewriting actual words and by
//! exact linear algebra.

pub mod certificate;
pub mod cyclotomic;
pub mod matrix;

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::stallings::{KernelMap, SchreierBasis, SchreierSystem, SubgroupGraph};
use crate::word::{omega, Alphabet, Word};

pub use certificate::{witness, WeightReport, WitnessCertificate};
pub use cyclotomic::CyclotomicElement;
pub use matrix::{IntMatrix, IntPoly};

/// Vector of `b`-exponent sums, entry `k − 1` holding `P_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PVector(pub Vec<BigInt>);

impl PVector {
    pub fn from_i64(v: &[i64]) -> Self {
        PVector(v.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn sum(&self) -> BigInt {
        self.0.iter().sum()
    }

    pub fn max_abs(&self) -> BigInt {
        self.0.iter().map(|x| x.abs()).max().unwrap_or_default()
    }
}

impl fmt::Display for PVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

fn check_modulus(d: u64) -> Result<()> {
    if d < 2 {
        Err(Error::InvalidArgument(format!("modulus must be at least 2, got {d}")))
    } else {
        Ok(())
    }
}

/// Exponent sums of a kernel element in the canonical basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PReport {
    pub p: PVector,
    pub a_sum: BigInt,
    pub rewritten: Word,
}

/// Kernel of `x ↦ 1, y ↦ 0` with its Schreier system built from the
/// transversal `ε, x, …, x^{d−1}`.
#[derive(Debug, Clone)]
pub struct CanonicalKernel {
    d: u64,
    system: SchreierSystem,
}

impl CanonicalKernel {
    pub fn new(d: u64) -> Result<Self> {
        check_modulus(d)?;
        let map = KernelMap::canonical(d)?;
        let graph = SubgroupGraph::kernel(&map)?;
        let system = SchreierSystem::new(graph, Some(0))?;
        debug_assert_eq!(system.basis.names().name(0), "a");
        Ok(CanonicalKernel { d, system })
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn system(&self) -> &SchreierSystem {
        &self.system
    }

    /// `(a, b_1, …, b_d)` as words in `F`.
    pub fn basis(&self) -> &SchreierBasis {
        &self.system.basis
    }

    fn basis_letter(&self, name: &str) -> Word {
        Word::generator_named(self.basis().names(), name).expect("canonical basis name")
    }

    /// Each basis element `s` mapped to the rewrite of `x s x⁻¹`.
    pub fn conjugation_table(&self) -> Result<Vec<(String, Word)>> {
        let x = Word::generator(&Alphabet::xy(), 0)?;
        let names = self.basis().names();
        self.basis()
            .words()
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let conj = x.multiply(s)?.multiply(&x.inverse())?;
                Ok((names.name(i).to_string(), self.system.rewrite(&conj)?))
            })
            .collect()
    }

    /// `a ↦ a`, `b_k ↦ b_{k+1}`, `b_d ↦ a b_1 a⁻¹`.
    pub fn expected_conjugation_table(&self) -> Vec<(String, Word)> {
        let d = self.d as usize;
        let a = self.basis_letter("a");
        let mut table = vec![("a".to_string(), a.clone())];
        for k in 1..d {
            table.push((format!("b{k}"), self.basis_letter(&format!("b{}", k + 1))));
        }
        let wrap = a
            .multiply(&self.basis_letter("b1"))
            .and_then(|w| w.multiply(&a.inverse()))
            .expect("same alphabet");
        table.push((format!("b{d}"), wrap));
        table
    }

    /// Rewrites every conjugate and compares with the expected relations.
    pub fn check_conjugation_table(&self) -> Result<()> {
        let got = self.conjugation_table()?;
        for ((name, w), (_, want)) in got.iter().zip(self.expected_conjugation_table()) {
            if *w != want {
                return Err(Error::Verification(format!(
                    "d = {}: x {name} x^-1 rewrites to {w}, expected {want}",
                    self.d
                )));
            }
        }
        Ok(())
    }

    /// `P`-vector of a kernel element by Reidemeister–Schreier rewriting.
    pub fn p_vector(&self, w: &Word) -> Result<PReport> {
        let rewritten = self.system.rewrite(w)?;
        let mut sums = rewritten.exponent_sums().0;
        let a_sum = sums.remove(0);
        Ok(PReport {
            p: PVector(sums),
            a_sum,
            rewritten,
        })
    }
}

/// The cyclic difference matrix: `1` on the diagonal, `−1` just below it and
/// in the top right corner.
pub fn transition_matrix(d: u64) -> Result<IntMatrix> {
    check_modulus(d)?;
    let d = d as usize;
    let mut m = IntMatrix::zero(d);
    for i in 0..d {
        m.set(i, i, BigInt::from(1));
        m.set(i, (i + d - 1) % d, BigInt::from(-1));
    }
    Ok(m)
}

/// `v_0 = (−1, 1, 0, …, 0)`.
pub fn initial_vector(d: u64) -> Result<PVector> {
    check_modulus(d)?;
    let mut v = vec![BigInt::zero(); d as usize];
    v[0] = BigInt::from(-1);
    v[1] = BigInt::from(1);
    Ok(PVector(v))
}

/// `Aⁿ v_0` with exact arithmetic and binary exponentiation.
pub fn iterate(d: u64, n: u64) -> Result<PVector> {
    let a = transition_matrix(d)?;
    Ok(PVector(a.pow(n).mul_vec(&initial_vector(d)?.0)))
}

#[derive(Debug, Clone, Serialize)]
pub struct RecurrenceReport {
    pub d: u64,
    pub n_max: usize,
    #[serde(skip)]
    pub vectors: Vec<PVector>,
}

/// Checks `p_vector(ω_n) = Aⁿ v_0` and that `a` never contributes, for every
/// `0 ≤ n ≤ n_max`, rewriting the actual words.
pub fn verify_recurrence(kernel: &CanonicalKernel, n_max: usize) -> Result<RecurrenceReport> {
    let d = kernel.d();
    let a = transition_matrix(d)?;
    let x = Word::generator(&Alphabet::xy(), 0)?;
    let mut w = omega(0);
    let mut matrix_side = initial_vector(d)?;
    let mut vectors = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        if n > 0 {
            w = w.commutator(&x)?;
            matrix_side = PVector(a.mul_vec(&matrix_side.0));
        }
        let report = kernel.p_vector(&w)?;
        if report.p != matrix_side {
            return Err(Error::Verification(format!(
                "d = {d}, n = {n}: rewriting gives {}, matrix power gives {matrix_side}",
                report.p
            )));
        }
        if !report.a_sum.is_zero() {
            return Err(Error::Verification(format!(
                "d = {d}, n = {n}: a-exponent sum is {}",
                report.a_sum
            )));
        }
        vectors.push(report.p);
    }
    // the stepwise matrix side must agree with the closed power at the end
    if iterate(d, n_max as u64)? != vectors[n_max] {
        return Err(Error::Verification(format!(
            "d = {d}: A^{n_max} v_0 disagrees with stepwise iteration"
        )));
    }
    Ok(RecurrenceReport { d, n_max, vectors })
}

/// `det(A − λI)`.
pub fn char_poly(d: u64) -> Result<IntPoly> {
    Ok(transition_matrix(d)?.characteristic_polynomial())
}

/// `(1 − λ)^d − 1` expanded by the binomial theorem.
pub fn expected_char_poly(d: u64) -> IntPoly {
    let d = d as usize;
    let mut coeffs = vec![BigInt::zero(); d + 1];
    let mut binom = BigInt::from(1);
    for (k, c) in coeffs.iter_mut().enumerate() {
        *c = if k % 2 == 0 { binom.clone() } else { -binom.clone() };
        binom = binom * BigInt::from(d - k) / BigInt::from(k + 1);
    }
    coeffs[0] -= 1;
    IntPoly::from_big(coeffs)
}

pub fn char_poly_check(d: u64) -> Result<bool> {
    Ok(char_poly(d)? == expected_char_poly(d))
}

#[derive(Debug, Clone)]
pub struct EigenVerdict {
    pub j: usize,
    pub eigenvalue: CyclotomicElement,
    pub eigenvector: Vec<CyclotomicElement>,
    pub holds: bool,
}

/// `x_j = (1, t^{(d−1)j}, …, t^{2j}, t^j)`: component `k` is `t^{−kj}`.
pub fn eigenvector(d: usize, j: usize) -> Vec<CyclotomicElement> {
    (0..d).map(|k| CyclotomicElement::t_pow(d, -((k * j) as i64))).collect()
}

/// Verifies `A x_j = (1 − t^j) x_j` componentwise in `Q[t]/(t^d − 1)` for
/// `j = 1, …, d`.
pub fn eigen_check(d: u64) -> Result<Vec<EigenVerdict>> {
    let a = transition_matrix(d)?;
    let d = d as usize;
    let one = CyclotomicElement::one(d);
    Ok((1..=d)
        .map(|j| {
            let eigenvalue = &one - &CyclotomicElement::t_pow(d, j as i64);
            let x = eigenvector(d, j);
            let holds = (0..d).all(|i| {
                let lhs = a
                    .row(i)
                    .iter()
                    .zip(&x)
                    .filter(|(c, _)| !c.is_zero())
                    .fold(CyclotomicElement::zero(d), |acc, (c, xk)| &acc + &xk.scale(c));
                lhs == &eigenvalue * &x[i]
            });
            EigenVerdict {
                j,
                eigenvalue,
                eigenvector: x,
                holds,
            }
        })
        .collect())
}

/// Absolute tolerance for the floating-point spectral reconstruction.
pub const SPECTRAL_TOLERANCE: f64 = 1e-6;
/// Threshold above which a spectral coefficient counts as nonzero.
pub const ALPHA_THRESHOLD: f64 = 1e-9;

#[derive(Debug, Clone, Serialize)]
pub struct SpectralReport {
    pub d: u64,
    pub n_max: usize,
    #[serde(skip)]
    pub alphas: Vec<Complex64>,
    /// `max_{j≠d} |α_j|`.
    pub max_nontrivial_alpha: f64,
    /// Largest absolute deviation of `Σ α_j λ_jⁿ x_j` from the exact `v_n`.
    pub max_error: f64,
}

/// Decomposes `v_0 = Σ α_j x_j` with `ζ = e^{2πi/d}` (the `x_j` are the
/// columns of a discrete Fourier transform, so `α_j = (1/d) Σ_k v_0[k] ζ^{kj}`),
/// then reconstructs `v_n = Σ α_j λ_jⁿ x_j` and compares against exact
/// iteration for `n ≤ n_max`. Sums run over `j = 1, …, d` in order.
pub fn spectral_certificate(d: u64, n_max: usize) -> Result<SpectralReport> {
    let a = transition_matrix(d)?;
    let v0 = initial_vector(d)?;
    let dd = d as usize;
    let zeta = |e: i64| {
        let e = e.rem_euclid(d as i64) as f64;
        Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * e / d as f64)
    };
    let alphas: Vec<Complex64> = (1..=dd)
        .map(|j| {
            let s: Complex64 = (0..dd)
                .map(|k| zeta((k * j) as i64) * v0.0[k].to_f64().expect("small entry"))
                .sum();
            s / d as f64
        })
        .collect();
    let max_nontrivial_alpha = alphas[..dd - 1].iter().map(|c| c.norm()).fold(0.0, f64::max);
    if max_nontrivial_alpha <= ALPHA_THRESHOLD {
        return Err(Error::Verification(format!("d = {d}: every α_j with j ≠ d vanishes")));
    }

    let lambdas: Vec<Complex64> = (1..=dd).map(|j| Complex64::new(1.0, 0.0) - zeta(j as i64)).collect();
    let mut powers = vec![Complex64::new(1.0, 0.0); dd];
    let mut exact = v0.0.clone();
    let mut max_error = 0.0f64;
    for n in 0..=n_max {
        if n > 0 {
            for (p, l) in powers.iter_mut().zip(&lambdas) {
                *p *= l;
            }
            exact = a.mul_vec(&exact);
        }
        for (k, want) in exact.iter().enumerate() {
            let mut sum = Complex64::new(0.0, 0.0);
            for j in 0..dd {
                sum += alphas[j] * powers[j] * zeta(-(((j + 1) * k) as i64));
            }
            let want = want.to_f64().unwrap_or(f64::INFINITY);
            let err = (sum.re - want).abs().max(sum.im.abs());
            max_error = max_error.max(err);
            if err.is_nan() || err > SPECTRAL_TOLERANCE {
                return Err(Error::Verification(format!(
                    "d = {d}, n = {n}: spectral reconstruction of component {} is off by {err:e}",
                    k + 1
                )));
            }
        }
    }
    Ok(SpectralReport {
        d,
        n_max,
        alphas,
        max_nontrivial_alpha,
        max_error,
    })
}

/// `Aⁿ v_0 ≠ 0` for every `1 ≤ n ≤ n_max`, in exact arithmetic.
pub fn nonvanishing_check(d: u64, n_max: u64) -> Result<bool> {
    let a = transition_matrix(d)?;
    let mut v = initial_vector(d)?.0;
    for _ in 1..=n_max {
        v = a.mul_vec(&v);
        if v.iter().all(Zero::is_zero) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Limits applied by [`verify_modulus`].
#[derive(Debug, Clone, Copy)]
pub struct VerifyLimits {
    /// Exact nonvanishing runs to this `n`.
    pub n_max: u64,
    /// Rewriting of actual words `ω_n` stops here; `|ω_n| = 2^{n+2} + 2` for `n ≥ 1`.
    pub rewrite_n_max: usize,
    /// Floating-point reconstruction stops here.
    pub spectral_n_max: usize,
}

impl VerifyLimits {
    pub const DEFAULT_REWRITE_N_MAX: usize = 16;
    pub const DEFAULT_SPECTRAL_N_MAX: usize = 20;

    pub fn new(n_max: u64) -> Self {
        VerifyLimits {
            n_max,
            rewrite_n_max: (n_max as usize).min(Self::DEFAULT_REWRITE_N_MAX),
            spectral_n_max: (n_max as usize).min(Self::DEFAULT_SPECTRAL_N_MAX),
        }
    }
}

/// Outcome of every check for one modulus; `Err` strings carry the failure.
#[derive(Debug, Clone, Serialize)]
pub struct ModulusReport {
    pub d: u64,
    pub recurrence: std::result::Result<usize, String>,
    pub conjugation: std::result::Result<(), String>,
    pub char_poly: bool,
    pub eigen: bool,
    pub spectral: std::result::Result<SpectralReport, String>,
    pub nonvanishing: bool,
}

impl ModulusReport {
    pub fn passed(&self) -> bool {
        self.recurrence.is_ok()
            && self.conjugation.is_ok()
            && self.char_poly
            && self.eigen
            && self.spectral.is_ok()
            && self.nonvanishing
    }
}

pub fn verify_modulus(d: u64, limits: VerifyLimits) -> Result<ModulusReport> {
    let kernel = CanonicalKernel::new(d)?;
    Ok(ModulusReport {
        d,
        recurrence: verify_recurrence(&kernel, limits.rewrite_n_max)
            .map(|r| r.n_max)
            .map_err(|e| e.to_string()),
        conjugation: kernel.check_conjugation_table().map_err(|e| e.to_string()),
        char_poly: char_poly_check(d)?,
        eigen: eigen_check(d)?.iter().all(|v| v.holds),
        spectral: spectral_certificate(d, limits.spectral_n_max).map_err(|e| e.to_string()),
        nonvanishing: nonvanishing_check(d, limits.n_max)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strings(ws: &[Word]) -> Vec<String> {
        ws.iter().map(ToString::to_string).collect()
    }

    #[test]
    fn canonical_bases() {
        let k3 = CanonicalKernel::new(3).unwrap();
        assert_eq!(strings(k3.basis().words()), ["x^3", "y", "x y x^-1", "x^2 y x^-2"]);
        let k2 = CanonicalKernel::new(2).unwrap();
        assert_eq!(strings(k2.basis().words()), ["x^2", "y", "x y x^-1"]);
        let k5 = CanonicalKernel::new(5).unwrap();
        assert_eq!(k5.basis().len(), 6);
        assert_eq!(k5.basis().words()[0].to_string(), "x^5");
        assert!(CanonicalKernel::new(1).is_err());
    }

    #[test]
    fn conjugation_relations() {
        let k3 = CanonicalKernel::new(3).unwrap();
        let table = k3.conjugation_table().unwrap();
        let shown: Vec<(String, String)> = table.iter().map(|(n, w)| (n.clone(), w.to_string())).collect();
        assert_eq!(
            shown,
            [
                ("a".into(), "a".into()),
                ("b1".into(), "b2".into()),
                ("b2".into(), "b3".into()),
                ("b3".into(), "a b1 a^-1".into())
            ]
        );
        let k2 = CanonicalKernel::new(2).unwrap();
        assert_eq!(k2.conjugation_table().unwrap()[1].1.to_string(), "b2");
        for d in 2..=7 {
            CanonicalKernel::new(d).unwrap().check_conjugation_table().unwrap();
        }
    }

    #[test]
    fn p_vectors() {
        let k3 = CanonicalKernel::new(3).unwrap();
        let r = k3.p_vector(&omega(0)).unwrap();
        assert_eq!(r.p, PVector::from_i64(&[-1, 1, 0]));
        assert!(r.a_sum.is_zero());
        assert_eq!(r.rewritten.to_string(), "b2 b1^-1");
        assert_eq!(k3.p_vector(&omega(1)).unwrap().p, PVector::from_i64(&[-1, 2, -1]));
        let k2 = CanonicalKernel::new(2).unwrap();
        assert_eq!(k2.p_vector(&omega(1)).unwrap().p, PVector::from_i64(&[-2, 2]));
        let x = Word::parse("x", &Alphabet::xy()).unwrap();
        assert!(matches!(k3.p_vector(&x), Err(Error::NotInSubgroup(_))));
    }

    #[test]
    fn matrices() {
        assert_eq!(
            transition_matrix(2).unwrap(),
            IntMatrix::from_rows(&[vec![1, -1], vec![-1, 1]])
        );
        assert_eq!(
            transition_matrix(3).unwrap(),
            IntMatrix::from_rows(&[vec![1, 0, -1], vec![-1, 1, 0], vec![0, -1, 1]])
        );
        for d in 2..=20 {
            let a = transition_matrix(d).unwrap();
            assert!(a.column_sums().iter().all(Zero::is_zero));
            assert!(a.row_sums().iter().all(Zero::is_zero));
        }
        assert!(transition_matrix(1).is_err());
    }

    #[test]
    fn iterates() {
        assert_eq!(iterate(3, 0).unwrap(), PVector::from_i64(&[-1, 1, 0]));
        assert_eq!(iterate(2, 5).unwrap(), PVector::from_i64(&[-32, 32]));
        assert_eq!(iterate(3, 2).unwrap(), PVector::from_i64(&[0, 3, -3]));
        // exact at large n: v_n for d = 2 is 2ⁿ·(−1, 1)
        let big = iterate(2, 10_000).unwrap();
        assert_eq!(big.0[1], BigInt::from(1) << 10_000usize);
        assert!(big.sum().is_zero());
    }

    #[test]
    fn recurrence_small() {
        for (d, n) in [(3, 6), (2, 8), (5, 5)] {
            let k = CanonicalKernel::new(d).unwrap();
            let r = verify_recurrence(&k, n).unwrap();
            assert_eq!(r.vectors.len(), n + 1);
        }
    }

    #[test]
    fn char_polys() {
        assert_eq!(char_poly(2).unwrap(), IntPoly::from_coeffs(&[0, -2, 1]));
        assert_eq!(expected_char_poly(3), IntPoly::from_coeffs(&[0, -3, 3, -1]));
        assert!(char_poly_check(3).unwrap());
        assert!(char_poly_check(7).unwrap());
    }

    #[test]
    fn eigen_pairs() {
        let v3 = eigen_check(3).unwrap();
        assert!(v3.iter().all(|v| v.holds));
        assert!(v3[2].eigenvalue.is_zero());
        assert!(v3[2].eigenvector.iter().all(|c| *c == CyclotomicElement::one(3)));
        assert!(eigen_check(5).unwrap().iter().all(|v| v.holds));
    }

    #[test]
    fn spectral_d2() {
        let r = spectral_certificate(2, 20).unwrap();
        assert!((r.alphas[0] - Complex64::new(-1.0, 0.0)).norm() < 1e-12);
        assert!(r.alphas[1].norm() < 1e-12);
        assert!(r.max_error <= SPECTRAL_TOLERANCE);
    }

    #[test]
    fn nonvanishing() {
        assert!(nonvanishing_check(3, 100).unwrap());
        assert!(nonvanishing_check(2, 60).unwrap());
        assert!(nonvanishing_check(6, 100).unwrap());
    }

    #[test]
    fn modulus_report() {
        let r = verify_modulus(4, VerifyLimits::new(30)).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.recurrence, Ok(16));
    }
}
