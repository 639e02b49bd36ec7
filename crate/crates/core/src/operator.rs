//! Linear maps on the real vector space of Hermitian elements.
//!
//! A [`LinearMap`] is a closure; [`DenseOperator`] is its matrix in the
//! orthonormal basis of [`hermitian_basis`] under `⟨x, y⟩ = Re tr(x∘y)`.

use std::ops::{Add, Mul, Sub};
use std::sync::Arc;

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::jordan::{AlgebraElement, Descriptor, Event};
use crate::scalar::Scalar;

const SQRT_HALF: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Orthonormal basis: the diagonal matrix units `E_ii`, then for each `i < j`
/// and each algebra unit `u` the element `(u E_ij + ū E_ji)/√2`.
pub fn hermitian_basis(desc: Descriptor) -> Vec<AlgebraElement> {
    let mut basis = Vec::with_capacity(desc.real_dim());
    for i in 0..desc.n {
        let mut x = AlgebraElement::zero(desc);
        x.set_hermitian(i, i, Scalar::one(desc.level));
        basis.push(x);
    }
    for i in 0..desc.n {
        for j in i + 1..desc.n {
            for u in 0..desc.level.dim() {
                let mut x = AlgebraElement::zero(desc);
                x.set_hermitian(i, j, Scalar::unit(desc.level, u).scale(SQRT_HALF));
                basis.push(x);
            }
        }
    }
    basis
}

/// Coordinates of `x` in [`hermitian_basis`].
pub fn coordinates(x: &AlgebraElement) -> DVector<f64> {
    let desc = x.descriptor();
    let mut out = Vec::with_capacity(desc.real_dim());
    for i in 0..desc.n {
        out.push(x.get(i, i).real_part());
    }
    for i in 0..desc.n {
        for j in i + 1..desc.n {
            out.extend(x.get(i, j).coords().iter().map(|c| c / SQRT_HALF));
        }
    }
    DVector::from_vec(out)
}

pub fn from_coordinates(desc: Descriptor, c: &DVector<f64>) -> AlgebraElement {
    assert_eq!(c.len(), desc.real_dim());
    let d = desc.level.dim();
    let mut x = AlgebraElement::zero(desc);
    for i in 0..desc.n {
        x.set_hermitian(i, i, Scalar::real(desc.level, c[i]));
    }
    let mut k = desc.n;
    for i in 0..desc.n {
        for j in i + 1..desc.n {
            let coords: Vec<f64> = (0..d).map(|u| c[k + u] * SQRT_HALF).collect();
            x.set_hermitian(i, j, Scalar::new(desc.level, &coords).unwrap());
            k += d;
        }
    }
    x
}

type MapFn = dyn Fn(&AlgebraElement) -> AlgebraElement + Send + Sync;

/// A linear map on `H_n(F)` given as a closure.
#[derive(Clone)]
pub struct LinearMap {
    desc: Descriptor,
    f: Arc<MapFn>,
}

impl LinearMap {
    pub fn new(
        desc: Descriptor,
        f: impl Fn(&AlgebraElement) -> AlgebraElement + Send + Sync + 'static,
    ) -> Self {
        LinearMap {
            desc,
            f: Arc::new(f),
        }
    }

    pub fn identity(desc: Descriptor) -> Self {
        Self::new(desc, |x| x.clone())
    }

    /// `U_e`.
    pub fn u(e: &Event) -> Self {
        let e = e.clone();
        Self::new(e.descriptor(), move |x| e.u(x))
    }

    pub fn descriptor(&self) -> Descriptor {
        self.desc
    }

    pub fn apply(&self, x: &AlgebraElement) -> AlgebraElement {
        (self.f)(x)
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &LinearMap) -> LinearMap {
        let (a, b) = (self.clone(), other.clone());
        Self::new(self.desc, move |x| a.apply(&b.apply(x)))
    }

    /// `Σ c_k L_k`, each term applied independently.
    pub fn combination(desc: Descriptor, terms: Vec<(f64, LinearMap)>) -> LinearMap {
        Self::new(desc, move |x| {
            terms
                .iter()
                .fold(AlgebraElement::zero(desc), |acc, (c, l)| {
                    acc.add_scaled(*c, &l.apply(x))
                })
        })
    }

    pub fn matrix(&self) -> DenseOperator {
        DenseOperator::from_map(self)
    }
}

/// Matrix of a linear map in the orthonormal Hermitian basis.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseOperator {
    desc: Descriptor,
    m: DMatrix<f64>,
}

impl DenseOperator {
    pub fn from_map(map: &LinearMap) -> Self {
        let desc = map.descriptor();
        let basis = hermitian_basis(desc);
        let dim = basis.len();
        let mut m = DMatrix::zeros(dim, dim);
        for (k, b) in basis.iter().enumerate() {
            m.set_column(k, &coordinates(&map.apply(b)));
        }
        DenseOperator { desc, m }
    }

    pub fn identity(desc: Descriptor) -> Self {
        let dim = desc.real_dim();
        DenseOperator {
            desc,
            m: DMatrix::identity(dim, dim),
        }
    }

    pub fn zero(desc: Descriptor) -> Self {
        let dim = desc.real_dim();
        DenseOperator {
            desc,
            m: DMatrix::zeros(dim, dim),
        }
    }

    pub fn descriptor(&self) -> Descriptor {
        self.desc
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.m
    }

    pub fn apply(&self, x: &AlgebraElement) -> AlgebraElement {
        from_coordinates(self.desc, &(&self.m * coordinates(x)))
    }

    pub fn scale(&self, t: f64) -> Self {
        DenseOperator {
            desc: self.desc,
            m: &self.m * t,
        }
    }

    /// Largest absolute matrix entry.
    pub fn max_norm(&self) -> f64 {
        self.m.amax()
    }

    /// `max |A − Aᵀ|`: self-adjointness with respect to the trace form.
    pub fn symmetry_residual(&self) -> f64 {
        (&self.m - self.m.transpose()).amax()
    }

    /// Eigenvalues of the symmetric part, ascending.
    pub fn symmetric_eigenvalues(&self) -> Vec<f64> {
        let sym = (&self.m + self.m.transpose()) * 0.5;
        let mut v: Vec<f64> = SymmetricEigen::new(sym).eigenvalues.iter().copied().collect();
        v.sort_by(f64::total_cmp);
        v
    }
}

impl Add for &DenseOperator {
    type Output = DenseOperator;
    fn add(self, rhs: &DenseOperator) -> DenseOperator {
        DenseOperator {
            desc: self.desc,
            m: &self.m + &rhs.m,
        }
    }
}

impl Sub for &DenseOperator {
    type Output = DenseOperator;
    fn sub(self, rhs: &DenseOperator) -> DenseOperator {
        DenseOperator {
            desc: self.desc,
            m: &self.m - &rhs.m,
        }
    }
}

/// Composition: `(A * B) x = A(B x)`.
impl Mul for &DenseOperator {
    type Output = DenseOperator;
    fn mul(self, rhs: &DenseOperator) -> DenseOperator {
        DenseOperator {
            desc: self.desc,
            m: &self.m * &rhs.m,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_element, random_event, trial_rng};
    use crate::scalar::Level;

    #[test]
    fn basis_is_orthonormal() {
        for (l, n) in [(Level::C, 3), (Level::H, 2), (Level::O, 3)] {
            let d = Descriptor::new(l, n).unwrap();
            let b = hermitian_basis(d);
            assert_eq!(b.len(), d.real_dim());
            for (i, x) in b.iter().enumerate() {
                for (j, y) in b.iter().enumerate() {
                    let expected = if i == j { 1.0 } else { 0.0 };
                    assert!((x.inner(y) - expected).abs() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn coordinates_match_inner_products() {
        let d = Descriptor::new(Level::O, 3).unwrap();
        let x = random_element(d, &mut trial_rng(1, 0));
        let c = coordinates(&x);
        for (k, b) in hermitian_basis(d).iter().enumerate() {
            assert!((c[k] - b.inner(&x)).abs() < 1e-12);
        }
        assert!(from_coordinates(d, &c).max_abs_diff(&x) < 1e-14);
    }

    #[test]
    fn dense_and_closure_forms_agree() {
        let d = Descriptor::new(Level::H, 3).unwrap();
        let mut rng = trial_rng(2, 0);
        let e = random_event(d, &mut rng).unwrap();
        let u = LinearMap::u(&e);
        let dense = u.matrix();
        for _ in 0..5 {
            let x = random_element(d, &mut rng);
            assert!(dense.apply(&x).max_abs_diff(&u.apply(&x)) < 1e-12);
        }
    }

    #[test]
    fn maps_are_linear() {
        let d = Descriptor::new(Level::O, 3).unwrap();
        let mut rng = trial_rng(3, 0);
        let e = random_event(d, &mut rng).unwrap();
        let u = LinearMap::u(&e);
        let x = random_element(d, &mut rng);
        let y = random_element(d, &mut rng);
        let lhs = u.apply(&x.scale(2.0).add_scaled(-3.0, &y));
        let rhs = u.apply(&x).scale(2.0).add_scaled(-3.0, &u.apply(&y));
        assert!(lhs.max_abs_diff(&rhs) < 1e-12);
    }
}
