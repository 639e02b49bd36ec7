//! Matrix-model events, states and conditional probabilities.
//!
//! A state is a density `ρ` (positive, trace one) acting through the trace
//! form, `μ(x) = ⟨ρ, x⟩`. Conditioning on `e` is the Lüders map: the product
//! `μ(f|e)μ(e)` equals `μ(U_e f)`, which stays meaningful when `μ(e) = 0`.

use rand::Rng;

use crate::error::{Error, Result};
use crate::jordan::{AlgebraElement, Descriptor, Event};
use crate::random::random_density;
use crate::scalar::Scalar;
use crate::spectral::min_eigenvalue;

/// A state given by its density element.
#[derive(Clone, Debug, PartialEq)]
pub struct State {
    density: AlgebraElement,
}

impl State {
    pub fn new(density: AlgebraElement, tol: f64) -> Result<Self> {
        let tr = density.trace();
        if (tr - 1.0).abs() > tol {
            return Err(Error::InvalidState(format!("trace {tr} ≠ 1")));
        }
        let min = min_eigenvalue(&density);
        if min < -tol {
            return Err(Error::InvalidState(format!("minimum eigenvalue {min:e}")));
        }
        Ok(State { density })
    }

    /// Pure state on the span of `v` (normalized here).
    pub fn pure(desc: Descriptor, v: &[Scalar]) -> Result<Self> {
        if v.len() != desc.n {
            return Err(Error::InvalidState(format!(
                "vector of length {} for {desc}",
                v.len()
            )));
        }
        let norm: f64 = v.iter().map(Scalar::norm).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::InvalidState("zero vector".into()));
        }
        let mut rho = AlgebraElement::zero(desc);
        for i in 0..desc.n {
            for j in i..desc.n {
                rho.set_hermitian(i, j, (v[i] * v[j].conj()).scale(1.0 / (norm * norm)));
            }
        }
        Ok(State { density: rho })
    }

    /// Pure state on a real vector.
    pub fn pure_real(desc: Descriptor, v: &[f64]) -> Result<Self> {
        let v: Vec<Scalar> = v.iter().map(|&x| Scalar::real(desc.level, x)).collect();
        Self::pure(desc, &v)
    }

    pub fn random(desc: Descriptor, rng: &mut impl Rng) -> Result<Self> {
        Ok(State {
            density: random_density(desc, rng)?,
        })
    }

    pub fn from_density_unchecked(density: AlgebraElement) -> Self {
        State { density }
    }

    pub fn density(&self) -> &AlgebraElement {
        &self.density
    }

    pub fn descriptor(&self) -> Descriptor {
        self.density.descriptor()
    }

    /// `sμ + (1−s)ν`.
    pub fn mixture(&self, s: f64, other: &State) -> State {
        State {
            density: self.density.scale(s).add_scaled(1.0 - s, &other.density),
        }
    }

    /// The conditional state `μ_e`, with density `U_e ρ / μ(e)`.
    pub fn conditional(&self, e: &Event, tol: f64) -> Result<State> {
        let p = evaluate(self, e.element());
        if p <= tol {
            return Err(Error::NullConditioning { probability: p });
        }
        Ok(State {
            density: e.u(&self.density).scale(1.0 / p),
        })
    }
}

/// `μ(x) = ⟨ρ, x⟩ = Re tr(ρ∘x)`.
pub fn evaluate(mu: &State, x: &AlgebraElement) -> f64 {
    mu.density.inner(x)
}

/// `μ(f|e)μ(e) = μ(U_e f)`.
pub fn joint(mu: &State, e: &Event, f: &AlgebraElement) -> f64 {
    evaluate(mu, &e.u(f))
}

/// `μ(f|e) = μ(U_e f) / μ(e)`.
pub fn conditional_probability(mu: &State, e: &Event, f: &Event, tol: f64) -> Result<f64> {
    let p = evaluate(mu, e.element());
    if p <= tol {
        return Err(Error::NullConditioning { probability: p });
    }
    Ok(joint(mu, e, f.element()) / p)
}

/// Orthogonality residual `‖e∘f‖`.
pub fn orthogonality_residual(e: &Event, f: &Event) -> f64 {
    e.element().jordan(f.element()).frobenius_norm()
}

/// `e ⊥ f`, i.e. `e + f` is again idempotent.
pub fn orthogonal(e: &Event, f: &Event, tol: f64) -> bool {
    orthogonality_residual(e, f) <= tol
}

/// `e ≤ f`: `f − e` is an idempotent orthogonal to `e`.
pub fn below(e: &Event, f: &Event, tol: f64) -> bool {
    let d = f.element() - e.element();
    d.idempotency_residual() <= tol && e.element().jordan(&d).frobenius_norm() <= tol
}

/// `e + f` for orthogonal events.
pub fn sum(e: &Event, f: &Event, tol: f64) -> Result<Event> {
    let residual = orthogonality_residual(e, f);
    if residual > tol {
        return Err(Error::NotOrthogonal { residual });
    }
    Ok(e.sum_unchecked(f))
}

/// Residual of the convex-combination rule for conditionals:
/// `(sμ + (1−s)ν)_e = (sμ(e)μ_e + (1−s)ν(e)ν_e) / (sμ(e) + (1−s)ν(e))`,
/// measured as the largest entry difference of the two densities.
pub fn mixture_rule_residual(mu: &State, nu: &State, s: f64, e: &Event, tol: f64) -> Result<f64> {
    let mix = mu.mixture(s, nu);
    let lhs = mix.conditional(e, tol)?;
    let (pm, pn) = (evaluate(mu, e.element()), evaluate(nu, e.element()));
    let denom = s * pm + (1.0 - s) * pn;
    let mut rhs = AlgebraElement::zero(mu.descriptor());
    if pm > tol {
        rhs = rhs.add_scaled(s * pm / denom, mu.conditional(e, tol)?.density());
    }
    if pn > tol {
        rhs = rhs.add_scaled((1.0 - s) * pn / denom, nu.conditional(e, tol)?.density());
    }
    Ok(lhs.density().max_abs_diff(&rhs))
}
