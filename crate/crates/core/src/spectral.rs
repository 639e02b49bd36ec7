//! Spectral decomposition, order-unit norm and positivity.
//!
//! Associative levels go through a complex Hermitian eigensolver; quaternionic
//! matrices are first mapped to their `2n×2n` complex adjoint. `H_3(𝕆)` uses
//! the characteristic cubic `λ³ − T(x)λ² + S(x)λ − N(x)` and recovers the
//! spectral idempotents as Lagrange interpolation polynomials in `x`.

use nalgebra::{Complex, DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::jordan::{AlgebraElement, Descriptor, Event};
use crate::scalar::{Level, Scalar};

/// Eigenvalues (ascending, one per cluster) with their spectral idempotents.
#[derive(Clone, Debug)]
pub struct SpectralForm {
    pub eigenvalues: Vec<f64>,
    pub idempotents: Vec<AlgebraElement>,
}

impl SpectralForm {
    /// `Σ λ_i e_i`.
    pub fn reconstruct(&self, desc: Descriptor) -> AlgebraElement {
        self.eigenvalues
            .iter()
            .zip(&self.idempotents)
            .fold(AlgebraElement::zero(desc), |acc, (l, e)| acc.add_scaled(*l, e))
    }

    /// Ranks of the idempotents (their traces, rounded).
    pub fn ranks(&self) -> Vec<usize> {
        self.idempotents
            .iter()
            .map(|e| e.trace().round() as usize)
            .collect()
    }

    pub fn events(&self) -> Vec<Event> {
        self.idempotents
            .iter()
            .map(|e| Event::with_tolerance(e.clone(), f64::INFINITY).expect("infinite tolerance"))
            .collect()
    }
}

/// Relative threshold below which neighbouring eigenvalues are merged.
pub const CLUSTER_TOL: f64 = 1e-8;

fn cluster(sorted: &[f64], scale: f64) -> Vec<Vec<f64>> {
    let thresh = CLUSTER_TOL * (1.0 + scale);
    let mut out: Vec<Vec<f64>> = Vec::new();
    for &v in sorted {
        match out.last_mut() {
            Some(c) if (v - c[c.len() - 1]).abs() <= thresh => c.push(v),
            _ => out.push(vec![v]),
        }
    }
    out
}

fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

/// Complex matrix representing an associative-level element. Quaternionic
/// entries `a + b·j` (`a, b` complex) become the block matrix `[[A, −B], [B̄, Ā]]`.
fn complex_matrix(x: &AlgebraElement) -> DMatrix<Complex<f64>> {
    let n = x.n();
    match x.descriptor().level {
        Level::R | Level::C => DMatrix::from_fn(n, n, |i, j| {
            let s = x.get(i, j);
            let c = s.coords();
            Complex::new(c[0], c.get(1).copied().unwrap_or(0.0))
        }),
        Level::H => DMatrix::from_fn(2 * n, 2 * n, |r, s| {
            let (bi, i) = (r / n, r % n);
            let (bj, j) = (s / n, s % n);
            let s = x.get(i, j);
            let c = s.coords();
            let a = Complex::new(c[0], c[1]);
            let b = Complex::new(c[2], c[3]);
            match (bi, bj) {
                (0, 0) => a,
                (0, 1) => -b,
                (1, 0) => b.conj(),
                _ => a.conj(),
            }
        }),
        Level::O => unreachable!("octonionic matrices use the cubic route"),
    }
}

/// Inverse of [`complex_matrix`] on its image, averaging the redundant blocks.
fn from_complex_matrix(desc: Descriptor, m: &DMatrix<Complex<f64>>) -> AlgebraElement {
    let n = desc.n;
    let mut x = AlgebraElement::zero(desc);
    for i in 0..n {
        for j in i..n {
            let s = match desc.level {
                Level::R => Scalar::real(Level::R, m[(i, j)].re),
                Level::C => Scalar::new(Level::C, &[m[(i, j)].re, m[(i, j)].im]).unwrap(),
                Level::H => {
                    let a = (m[(i, j)] + m[(n + i, n + j)].conj()) * 0.5;
                    let b = (-m[(i, n + j)] + m[(n + i, j)].conj()) * 0.5;
                    Scalar::new(Level::H, &[a.re, a.im, b.re, b.im]).unwrap()
                }
                Level::O => unreachable!(),
            };
            x.set_hermitian(i, j, s);
        }
    }
    x
}

fn associative_decompose(x: &AlgebraElement) -> Result<SpectralForm> {
    let desc = x.descriptor();
    let m = complex_matrix(x);
    let dim = m.nrows();
    let eig = SymmetricEigen::try_new(m, 1e-15, 10_000)
        .ok_or_else(|| Error::Spectral("eigensolver did not converge".into()))?;
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let sorted: Vec<f64> = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let scale = sorted.iter().fold(0.0f64, |m, v| m.max(v.abs()));

    let mut eigenvalues = Vec::new();
    let mut idempotents = Vec::new();
    let mut start = 0;
    for group in cluster(&sorted, scale) {
        let idx = &order[start..start + group.len()];
        start += group.len();
        let mut p = DMatrix::<Complex<f64>>::zeros(dim, dim);
        for &k in idx {
            let v = eig.eigenvectors.column(k);
            p += &v * v.adjoint();
        }
        eigenvalues.push(mean(&group));
        idempotents.push(from_complex_matrix(desc, &p));
    }
    Ok(SpectralForm {
        eigenvalues,
        idempotents,
    })
}

/// Coefficients `(T, S, N)` of the characteristic cubic of an `H_3` element:
/// trace, `½(T² − T(x∘x))`, and the determinant.
///
/// Writing the element as
/// `[[α, c, b̄], [c̄, β, a], [b, ā, γ]]` the determinant is
/// `αβγ − α n(a) − β n(b) − γ n(c) + 2 Re(a b c)`. The real part of a triple
/// product is independent of bracketing in all four algebras.
pub fn cubic_invariants(x: &AlgebraElement) -> (f64, f64, f64) {
    assert_eq!(x.n(), 3, "cubic invariants are defined for 3×3 elements");
    let t = x.trace();
    let s = 0.5 * (t * t - x.square().trace());
    let alpha = x.get(0, 0).real_part();
    let beta = x.get(1, 1).real_part();
    let gamma = x.get(2, 2).real_part();
    let a = x.get(1, 2);
    let b = x.get(2, 0);
    let c = x.get(0, 1);
    let det = alpha * beta * gamma - alpha * a.norm() - beta * b.norm() - gamma * c.norm()
        + 2.0 * ((a * b) * c).real_part();
    (t, s, det)
}

/// Real roots of `λ³ − tλ² + sλ − d` (assumed all real), ascending.
fn cubic_roots(t: f64, s: f64, d: f64) -> [f64; 3] {
    // λ = u + t/3 gives u³ + pu + q with
    let shift = t / 3.0;
    let p = s - t * t / 3.0;
    let q = -2.0 * t * t * t / 27.0 + t * s / 3.0 - d;
    let mut roots = if p >= 0.0 {
        // Formally real spectrum forces p ≤ 0; p ≥ 0 only at a triple root.
        [shift; 3]
    } else {
        let m = 2.0 * (-p / 3.0).sqrt();
        let arg = (3.0 * q / (p * m)).clamp(-1.0, 1.0);
        let theta = arg.acos() / 3.0;
        let third = 2.0 * std::f64::consts::PI / 3.0;
        [
            shift + m * theta.cos(),
            shift + m * (theta - third).cos(),
            shift + m * (theta - 2.0 * third).cos(),
        ]
    };
    let f = |l: f64| ((l - t) * l + s) * l - d;
    let df = |l: f64| (3.0 * l - 2.0 * t) * l + s;
    for r in roots.iter_mut() {
        for _ in 0..3 {
            let slope = df(*r);
            if slope.abs() < 1e-6 * (1.0 + s.abs() + t * t) {
                break;
            }
            let step = f(*r) / slope;
            if !step.is_finite() {
                break;
            }
            *r -= step;
        }
    }
    roots.sort_by(f64::total_cmp);
    roots
}

/// Spectral form of an element of `H_3(𝕆)`.
///
/// The trace part is removed first. Only the most isolated root of the
/// characteristic cubic is taken from the cubic itself; the other two come
/// from the Peirce-zero part of its idempotent, whose spread is read off a
/// Frobenius norm. This keeps nearly repeated eigenvalues accurate, where the
/// roots of the cubic alone lose half the digits.
fn albert_decompose(x: &AlgebraElement) -> SpectralForm {
    let desc = x.descriptor();
    let one = AlgebraElement::identity(desc);
    let shift = x.trace() / 3.0;
    let y = x.add_scaled(-shift, &one);
    let (_, s, d) = cubic_invariants(&y);
    let roots = cubic_roots(0.0, s, d);
    let scale = shift.abs() + roots.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let thresh = CLUSTER_TOL * (1.0 + scale);
    if roots[2] - roots[0] <= thresh {
        return SpectralForm {
            eigenvalues: vec![shift],
            idempotents: vec![one],
        };
    }

    let lambda = if roots[1] - roots[0] >= roots[2] - roots[1] {
        roots[0]
    } else {
        roots[2]
    };
    // the other two roots have sum c and product p
    let c = -lambda;
    let p = s + lambda * lambda;
    let e1 = y
        .square()
        .add_scaled(-c, &y)
        .add_scaled(p, &one)
        .scale(1.0 / (3.0 * lambda * lambda + s));
    let rest = &one - &e1;
    let w = y.add_scaled(-lambda, &e1).add_scaled(-0.5 * c, &rest);
    let spread = w.frobenius_norm() / std::f64::consts::SQRT_2;

    let mut pairs = vec![(shift + lambda, e1)];
    if 2.0 * spread <= thresh {
        pairs.push((shift + 0.5 * c, rest));
    } else {
        let dir = w.scale(1.0 / spread);
        pairs.push((shift + 0.5 * c - spread, (&rest - &dir).scale(0.5)));
        pairs.push((shift + 0.5 * c + spread, (&rest + &dir).scale(0.5)));
    }
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let (eigenvalues, idempotents) = pairs.into_iter().unzip();
    SpectralForm {
        eigenvalues,
        idempotents,
    }
}

/// Spectral decomposition of a Hermitian element.
pub fn spectral_decompose(x: &AlgebraElement) -> Result<SpectralForm> {
    if x.descriptor().level == Level::O {
        Ok(albert_decompose(x))
    } else {
        associative_decompose(x)
    }
}

/// All eigenvalues with multiplicity, ascending.
pub fn eigenvalues(x: &AlgebraElement) -> Result<Vec<f64>> {
    match x.descriptor().level {
        Level::O => {
            let form = albert_decompose(x);
            Ok(form
                .eigenvalues
                .iter()
                .zip(form.ranks())
                .flat_map(|(&l, r)| std::iter::repeat_n(l, r))
                .collect())
        }
        Level::H => {
            let eig = SymmetricEigen::try_new(complex_matrix(x), 1e-15, 10_000)
                .ok_or_else(|| Error::Spectral("eigensolver did not converge".into()))?;
            let mut v: Vec<f64> = eig.eigenvalues.iter().copied().collect();
            v.sort_by(f64::total_cmp);
            // The complex adjoint doubles every eigenvalue.
            Ok(v.chunks(2).map(mean).collect())
        }
        _ => {
            let eig = SymmetricEigen::try_new(complex_matrix(x), 1e-15, 10_000)
                .ok_or_else(|| Error::Spectral("eigensolver did not converge".into()))?;
            let mut v: Vec<f64> = eig.eigenvalues.iter().copied().collect();
            v.sort_by(f64::total_cmp);
            Ok(v)
        }
    }
}

/// Order-unit norm `inf{t > 0 : −t𝟙 ≤ x ≤ t𝟙}`, the spectral radius.
pub fn order_unit_norm(x: &AlgebraElement) -> f64 {
    eigenvalues(x)
        .map(|v| v.iter().fold(0.0f64, |m, l| m.max(l.abs())))
        .unwrap_or(f64::NAN)
}

pub fn min_eigenvalue(x: &AlgebraElement) -> f64 {
    eigenvalues(x).map(|v| v[0]).unwrap_or(f64::NAN)
}

/// `x ≥ 0` up to `tol`.
pub fn is_positive(x: &AlgebraElement, tol: f64) -> bool {
    min_eigenvalue(x) >= -tol
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_element, trial_rng};

    fn check_form(x: &AlgebraElement, form: &SpectralForm, tol: f64) {
        let desc = x.descriptor();
        let recon = form.reconstruct(desc);
        assert!((&recon - x).frobenius_norm() <= tol * (1.0 + x.frobenius_norm()));
        let mut sum = AlgebraElement::zero(desc);
        for (i, e) in form.idempotents.iter().enumerate() {
            assert!(e.idempotency_residual() <= tol, "idempotency {i}");
            for f in &form.idempotents[i + 1..] {
                assert!(e.jordan(f).frobenius_norm() <= tol, "orthogonality");
            }
            sum = &sum + e;
        }
        assert!((&sum - &AlgebraElement::identity(desc)).frobenius_norm() <= tol);
    }

    #[test]
    fn diagonal_with_repeated_eigenvalue() {
        let d = Descriptor::new(Level::R, 3).unwrap();
        let x = AlgebraElement::from_real_diagonal(d, &[3.0, 1.0, 1.0]);
        let form = spectral_decompose(&x).unwrap();
        assert_eq!(form.eigenvalues.len(), 2);
        assert!((form.eigenvalues[0] - 1.0).abs() < 1e-14);
        assert!((form.eigenvalues[1] - 3.0).abs() < 1e-14);
        let e_small = AlgebraElement::from_real_diagonal(d, &[0.0, 1.0, 1.0]);
        let e_big = AlgebraElement::from_real_diagonal(d, &[1.0, 0.0, 0.0]);
        assert!(form.idempotents[0].max_abs_diff(&e_small) < 1e-14);
        assert!(form.idempotents[1].max_abs_diff(&e_big) < 1e-14);
    }

    #[test]
    fn identity_has_single_eigenvalue() {
        for (level, n) in [(Level::C, 3), (Level::H, 2), (Level::O, 3)] {
            let d = Descriptor::new(level, n).unwrap();
            let one = AlgebraElement::identity(d);
            let form = spectral_decompose(&one).unwrap();
            assert_eq!(form.eigenvalues.len(), 1);
            assert!((form.eigenvalues[0] - 1.0).abs() < 1e-12);
            assert!(form.idempotents[0].max_abs_diff(&one) < 1e-12);
        }
    }

    #[test]
    fn albert_diagonal_clusters() {
        let d = Descriptor::new(Level::O, 3).unwrap();
        let x = AlgebraElement::from_real_diagonal(d, &[3.0, 1.0, 1.0]);
        let form = spectral_decompose(&x).unwrap();
        assert_eq!(form.eigenvalues.len(), 2);
        assert_eq!(form.ranks(), vec![2, 1]);
        check_form(&x, &form, 1e-10);
    }

    #[test]
    fn random_decompositions_are_consistent() {
        for (level, n) in [
            (Level::R, 3),
            (Level::C, 4),
            (Level::H, 3),
            (Level::O, 3),
        ] {
            let d = Descriptor::new(level, n).unwrap();
            for trial in 0..50 {
                let x = random_element(d, &mut trial_rng(11, trial));
                let form = spectral_decompose(&x).unwrap();
                check_form(&x, &form, 1e-8);
                assert_eq!(form.ranks().iter().sum::<usize>(), n);
            }
        }
    }

    #[test]
    fn cayley_hamilton_for_albert_elements() {
        let d = Descriptor::new(Level::O, 3).unwrap();
        for trial in 0..100 {
            let x = random_element(d, &mut trial_rng(12, trial));
            let (t, s, n) = cubic_invariants(&x);
            let x2 = x.square();
            let x3 = x.jordan(&x2);
            let ch = x3
                .add_scaled(-t, &x2)
                .add_scaled(s, &x)
                .add_scaled(-n, &AlgebraElement::identity(d));
            assert!(ch.frobenius_norm() < 1e-10 * (1.0 + x3.frobenius_norm()));
        }
    }

    #[test]
    fn cubic_invariants_agree_with_complex_determinant() {
        // A complex Hermitian matrix embedded in the octonions.
        let dc = Descriptor::new(Level::C, 3).unwrap();
        let x = random_element(dc, &mut trial_rng(13, 0));
        let eig = eigenvalues(&x).unwrap();
        let det: f64 = eig.iter().product();
        let (_, _, n) = cubic_invariants(&x);
        assert!((det - n).abs() < 1e-10 * (1.0 + det.abs()));
    }

    #[test]
    fn norms_and_positivity() {
        let d = Descriptor::new(Level::C, 2).unwrap();
        assert!((order_unit_norm(&AlgebraElement::identity(d)) - 1.0).abs() < 1e-14);
        assert!(is_positive(&AlgebraElement::identity(d), 1e-12));
        let x = AlgebraElement::from_real_diagonal(d, &[1.0, -1.0]);
        assert!(!is_positive(&x, 1e-12));
        assert!((order_unit_norm(&x) - 1.0).abs() < 1e-14);
    }
}
