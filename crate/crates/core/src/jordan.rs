//! Hermitian matrix Jordan algebras `H_n(F)` for `F ∈ {ℝ, ℂ, ℍ}` and the
//! exceptional Albert algebra `H_3(𝕆)`.
//!
//! Elements are stored as full row-major `n×n` matrices of [`Scalar`]s. The
//! Jordan product is `x∘y = (xy + yx)/2`; for Hermitian operands `yx` is the
//! conjugate transpose of `xy` (this uses only `conj(ab) = b̄ā`, which holds in
//! all four algebras), so products are Hermitian by construction.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Level, Scalar};

/// Which Jordan algebra an element belongs to: `H_n(level)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Descriptor {
    pub level: Level,
    pub n: usize,
}

impl Descriptor {
    /// Largest matrix size accepted for the associative levels.
    pub const MAX_N: usize = 8;

    pub fn new(level: Level, n: usize) -> Result<Self> {
        if n == 0 || n > Self::MAX_N {
            return Err(Error::InvalidDescriptor(format!(
                "matrix size must be in 1..={}, got {n}",
                Self::MAX_N
            )));
        }
        if level == Level::O && n != 3 {
            return Err(Error::InvalidDescriptor(format!(
                "octonionic matrices are only supported for n = 3, got {n}"
            )));
        }
        Ok(Descriptor { level, n })
    }

    /// Dimension of the algebra as a real vector space.
    pub fn real_dim(&self) -> usize {
        self.n + self.n * (self.n - 1) / 2 * self.level.dim()
    }
}

impl fmt::Display for Descriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H_{}({})", self.n, self.level)
    }
}

/// A Hermitian matrix over one of the composition algebras.
#[derive(Clone, PartialEq)]
pub struct AlgebraElement {
    desc: Descriptor,
    entries: Vec<Scalar>,
}

impl AlgebraElement {
    pub fn zero(desc: Descriptor) -> Self {
        AlgebraElement {
            desc,
            entries: vec![Scalar::zero(desc.level); desc.n * desc.n],
        }
    }

    pub fn identity(desc: Descriptor) -> Self {
        Self::from_real_diagonal(desc, &vec![1.0; desc.n])
    }

    /// Diagonal element with the given real entries. Panics on length mismatch.
    pub fn from_real_diagonal(desc: Descriptor, diag: &[f64]) -> Self {
        assert_eq!(diag.len(), desc.n);
        let mut x = Self::zero(desc);
        for (i, &d) in diag.iter().enumerate() {
            x.entries[i * desc.n + i] = Scalar::real(desc.level, d);
        }
        x
    }

    /// Builds an element from a row-major entry list, checking the Hermitian
    /// property within `tol` and then symmetrizing exactly.
    pub fn from_entries(desc: Descriptor, entries: Vec<Scalar>, tol: f64) -> Result<Self> {
        if entries.len() != desc.n * desc.n {
            return Err(Error::InvalidDescriptor(format!(
                "{desc} needs {} entries, got {}",
                desc.n * desc.n,
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|s| s.level() != desc.level) {
            return Err(Error::LevelMismatch {
                left: desc.level,
                right: bad.level(),
            });
        }
        let n = desc.n;
        let mut residual = 0.0f64;
        for i in 0..n {
            for j in i..n {
                let a = entries[i * n + j];
                let b = entries[j * n + i].conj();
                residual = residual.max(a.max_abs_diff(&b));
            }
        }
        if residual > tol {
            return Err(Error::NotHermitian { residual });
        }
        Ok(Self::hermitian_part(desc, &entries))
    }

    /// Builds `(m + m*)/2` from an arbitrary row-major matrix.
    fn hermitian_part(desc: Descriptor, m: &[Scalar]) -> Self {
        let n = desc.n;
        let mut entries = vec![Scalar::zero(desc.level); n * n];
        for i in 0..n {
            for j in i..n {
                let v = (m[i * n + j] + m[j * n + i].conj()).scale(0.5);
                entries[i * n + j] = v;
                entries[j * n + i] = v.conj();
            }
        }
        AlgebraElement { desc, entries }
    }

    /// Sets entry `(i, j)` and its mirror `(j, i)` to the conjugate. Diagonal
    /// entries keep only their real part.
    pub fn set_hermitian(&mut self, i: usize, j: usize, value: Scalar) {
        let n = self.desc.n;
        if i == j {
            self.entries[i * n + i] = Scalar::real(self.desc.level, value.real_part());
        } else {
            self.entries[i * n + j] = value;
            self.entries[j * n + i] = value.conj();
        }
    }

    pub fn descriptor(&self) -> Descriptor {
        self.desc
    }

    pub fn n(&self) -> usize {
        self.desc.n
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.entries[i * self.desc.n + j]
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    fn same_algebra(&self, other: &Self) -> Result<()> {
        if self.desc != other.desc {
            return Err(Error::DescriptorMismatch {
                left: self.desc,
                right: other.desc,
            });
        }
        Ok(())
    }

    pub fn trace(&self) -> f64 {
        (0..self.desc.n).map(|i| self.get(i, i).real_part()).sum()
    }

    /// The trace form `⟨x, y⟩ = Re tr(x∘y)`.
    pub fn inner(&self, other: &Self) -> f64 {
        debug_assert_eq!(self.desc, other.desc);
        let n = self.desc.n;
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                acc += (self.entries[i * n + j] * other.entries[j * n + i]).real_part();
            }
        }
        acc
    }

    /// Euclidean norm of the entries, `sqrt⟨x, x⟩`; an upper bound for the
    /// order-unit norm.
    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(Scalar::norm).sum::<f64>().sqrt()
    }

    /// Largest coordinate of `self − other`, or infinity on mismatch.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.desc != other.desc {
            return f64::INFINITY;
        }
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.max_abs_diff(b))
            .fold(0.0, f64::max)
    }

    pub fn scale(&self, t: f64) -> Self {
        AlgebraElement {
            desc: self.desc,
            entries: self.entries.iter().map(|s| s.scale(t)).collect(),
        }
    }

    /// `self + t·other`.
    pub fn add_scaled(&self, t: f64, other: &Self) -> Self {
        debug_assert_eq!(self.desc, other.desc);
        AlgebraElement {
            desc: self.desc,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| *a + b.scale(t))
                .collect(),
        }
    }

    /// Plain matrix product `self · other`, row-major. Not Hermitian in general.
    pub fn matmul(&self, other: &Self) -> Vec<Scalar> {
        debug_assert_eq!(self.desc, other.desc);
        let n = self.desc.n;
        let mut out = vec![Scalar::zero(self.desc.level); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a.norm() == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] += a * other.entries[k * n + j];
                }
            }
        }
        out
    }

    pub fn try_jordan(&self, other: &Self) -> Result<Self> {
        self.same_algebra(other)?;
        Ok(self.jordan(other))
    }

    /// Jordan product `(xy + yx)/2`. Panics on descriptor mismatch; see
    /// [`AlgebraElement::try_jordan`].
    pub fn jordan(&self, other: &Self) -> Self {
        assert_eq!(self.desc, other.desc, "descriptor mismatch in Jordan product");
        let xy = self.matmul(other);
        Self::hermitian_part(self.desc, &xy)
    }

    pub fn square(&self) -> Self {
        self.jordan(self)
    }

    /// Jordan power with `x^0 = 𝟙` and `x^{k+1} = x∘x^k`.
    pub fn power(&self, k: u32) -> Self {
        let mut acc = Self::identity(self.desc);
        for _ in 0..k {
            acc = self.jordan(&acc);
        }
        acc
    }

    /// `U_e x = 2e∘(e∘x) − e∘x` without any idempotency check.
    pub fn u_unchecked(&self, x: &Self) -> Self {
        let ex = self.jordan(x);
        self.jordan(&ex).scale(2.0).add_scaled(-1.0, &ex)
    }

    /// Idempotency residual `‖e∘e − e‖` (Frobenius).
    pub fn idempotency_residual(&self) -> f64 {
        (&self.square() - self).frobenius_norm()
    }

    /// Entry-wise real parts, for elements known to be real diagonal etc.
    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.desc.n).map(|i| self.get(i, i).real_part()).collect()
    }

    pub fn to_json(&self) -> ElementJson {
        ElementJson {
            algebra: self.desc.level,
            dim: self.desc.n,
            coords: self
                .entries
                .iter()
                .flat_map(|s| s.coords().iter().copied())
                .collect(),
        }
    }

    pub fn from_json(json: &ElementJson, tol: f64) -> Result<Self> {
        let desc = Descriptor::new(json.algebra, json.dim)?;
        let d = desc.level.dim();
        if json.coords.len() != desc.n * desc.n * d {
            return Err(Error::InvalidDescriptor(format!(
                "{desc} needs {} coordinates, got {}",
                desc.n * desc.n * d,
                json.coords.len()
            )));
        }
        let entries = json
            .coords
            .chunks(d)
            .map(|c| Scalar::new(desc.level, c))
            .collect::<Result<Vec<_>>>()?;
        Self::from_entries(desc, entries, tol)
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} [", self.desc)?;
        for i in 0..self.desc.n {
            let row: Vec<_> = (0..self.desc.n).map(|j| self.get(i, j)).collect();
            writeln!(f, "  {row:?}")?;
        }
        write!(f, "]")
    }
}

/// Serialized element: descriptor plus the row-major coordinate array
/// (`n·n·dim(level)` reals).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ElementJson {
    pub algebra: Level,
    pub dim: usize,
    pub coords: Vec<f64>,
}

impl Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.add_scaled(1.0, rhs)
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.add_scaled(-1.0, rhs)
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        self.scale(-1.0)
    }
}

impl Mul<f64> for &AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, rhs: f64) -> AlgebraElement {
        self.scale(rhs)
    }
}

/// An idempotent element (projection).
#[derive(Clone, Debug, PartialEq)]
pub struct Event(AlgebraElement);

impl Event {
    /// Default idempotency tolerance, relative to `1 + ‖e‖`.
    pub const TOL: f64 = 1e-8;

    pub fn new(e: AlgebraElement) -> Result<Self> {
        Self::with_tolerance(e, Self::TOL)
    }

    pub fn with_tolerance(e: AlgebraElement, tol: f64) -> Result<Self> {
        let residual = e.idempotency_residual();
        if residual > tol * (1.0 + e.frobenius_norm()) {
            return Err(Error::NotIdempotent { residual });
        }
        Ok(Event(e))
    }

    pub fn zero(desc: Descriptor) -> Self {
        Event(AlgebraElement::zero(desc))
    }

    pub fn one(desc: Descriptor) -> Self {
        Event(AlgebraElement::identity(desc))
    }

    /// Diagonal projection with ones at the given indices.
    pub fn diagonal(desc: Descriptor, indices: &[usize]) -> Self {
        let mut d = vec![0.0; desc.n];
        for &i in indices {
            d[i] = 1.0;
        }
        Event(AlgebraElement::from_real_diagonal(desc, &d))
    }

    pub fn element(&self) -> &AlgebraElement {
        &self.0
    }

    pub fn into_element(self) -> AlgebraElement {
        self.0
    }

    pub fn descriptor(&self) -> Descriptor {
        self.0.descriptor()
    }

    /// `e′ = 𝟙 − e`.
    pub fn complement(&self) -> Event {
        Event(&AlgebraElement::identity(self.descriptor()) - &self.0)
    }

    /// `e + f`, without an orthogonality check.
    pub fn sum_unchecked(&self, other: &Event) -> Event {
        Event(&self.0 + &other.0)
    }

    /// Rank, read off as the trace.
    pub fn rank(&self) -> f64 {
        self.0.trace()
    }

    pub fn u(&self, x: &AlgebraElement) -> AlgebraElement {
        self.0.u_unchecked(x)
    }
}

impl AsRef<AlgebraElement> for Event {
    fn as_ref(&self) -> &AlgebraElement {
        &self.0
    }
}

/// The quadratic map `U_e x = 2e∘(e∘x) − e∘x`.
pub fn quadratic_map(e: &Event, x: &AlgebraElement) -> AlgebraElement {
    e.u(x)
}

/// [`quadratic_map`] for a raw element, checking idempotency first.
pub fn quadratic_map_checked(
    e: &AlgebraElement,
    x: &AlgebraElement,
    tol: f64,
) -> Result<AlgebraElement> {
    e.same_algebra(x)?;
    let e = Event::with_tolerance(e.clone(), tol)?;
    Ok(e.u(x))
}
