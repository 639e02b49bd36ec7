//! Seeded random elements, projections, frames and states.
//!
//! Every trial draws from its own ChaCha stream, `trial_rng(seed, trial)`, so
//! results do not depend on how trials are scheduled across threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::jordan::{AlgebraElement, Descriptor, Event};
use crate::scalar::{Level, Scalar};
use crate::spectral::spectral_decompose;

const MAX_RETRIES: usize = 64;

/// Independent generator for one trial of a seeded run.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

fn gaussian_scalar(level: Level, rng: &mut impl Rng) -> Scalar {
    let mut c = [0.0; 8];
    for v in c.iter_mut().take(level.dim()) {
        *v = rng.sample(StandardNormal);
    }
    Scalar::new(level, &c[..level.dim()]).expect("dimension matches level")
}

/// Hermitian element with standard Gaussian diagonal and off-diagonal coordinates.
pub fn random_element(desc: Descriptor, rng: &mut impl Rng) -> AlgebraElement {
    let mut x = AlgebraElement::zero(desc);
    for i in 0..desc.n {
        for j in i..desc.n {
            let s = if i == j {
                Scalar::real(desc.level, rng.sample(StandardNormal))
            } else {
                gaussian_scalar(desc.level, rng)
            };
            x.set_hermitian(i, j, s);
        }
    }
    x
}

fn vec_inner(u: &[Scalar], v: &[Scalar]) -> Scalar {
    u.iter()
        .zip(v)
        .fold(Scalar::zero(u[0].level()), |acc, (a, b)| acc + a.conj() * *b)
}

fn vec_norm(u: &[Scalar]) -> f64 {
    u.iter().map(Scalar::norm).sum::<f64>().sqrt()
}

/// Rank-one projector `u u*` for a unit vector over an associative level.
fn rank_one(desc: Descriptor, u: &[Scalar]) -> AlgebraElement {
    let mut p = AlgebraElement::zero(desc);
    for i in 0..desc.n {
        for j in i..desc.n {
            p.set_hermitian(i, j, u[i] * u[j].conj());
        }
    }
    p
}

/// Orthonormal frame over an associative level via Gram–Schmidt on random
/// Gaussian vectors (right-module projections, so ℍ works as well).
fn associative_frame(desc: Descriptor, rng: &mut impl Rng) -> Result<Vec<Event>> {
    'retry: for _ in 0..MAX_RETRIES {
        let mut basis: Vec<Vec<Scalar>> = Vec::with_capacity(desc.n);
        for _ in 0..desc.n {
            let mut v: Vec<Scalar> = (0..desc.n)
                .map(|_| gaussian_scalar(desc.level, rng))
                .collect();
            // two passes keep the frame orthogonal to rounding level
            for _ in 0..2 {
                for u in &basis {
                    let c = vec_inner(u, &v);
                    for (vi, ui) in v.iter_mut().zip(u) {
                        *vi -= *ui * c;
                    }
                }
            }
            let norm = vec_norm(&v);
            if norm < 1e-6 {
                continue 'retry;
            }
            basis.push(v.iter().map(|s| s.scale(1.0 / norm)).collect());
        }
        return Ok(basis
            .iter()
            .map(|u| Event::with_tolerance(rank_one(desc, u), f64::INFINITY).unwrap())
            .collect());
    }
    Err(Error::DegenerateDraw(MAX_RETRIES))
}

/// Primitive frame in `H_3(𝕆)`: spectral idempotents of a random element with
/// three well-separated eigenvalues.
fn albert_frame(desc: Descriptor, rng: &mut impl Rng) -> Result<Vec<Event>> {
    for _ in 0..MAX_RETRIES {
        let x = random_element(desc, rng);
        let form = spectral_decompose(&x)?;
        let gaps_ok = form.eigenvalues.len() == desc.n
            && form.eigenvalues.windows(2).all(|w| w[1] - w[0] > 1e-3);
        if gaps_ok {
            return Ok(form.events());
        }
    }
    Err(Error::DegenerateDraw(MAX_RETRIES))
}

/// `n` pairwise orthogonal primitive idempotents summing to `𝟙`.
pub fn random_frame(desc: Descriptor, rng: &mut impl Rng) -> Result<Vec<Event>> {
    if desc.level.is_associative() {
        associative_frame(desc, rng)
    } else {
        albert_frame(desc, rng)
    }
}

fn sum_events(desc: Descriptor, events: &[&Event]) -> Event {
    events
        .iter()
        .fold(Event::zero(desc), |acc, e| acc.sum_unchecked(e))
}

/// Random projection of the given rank (trace).
pub fn random_projection(desc: Descriptor, rank: usize, rng: &mut impl Rng) -> Result<Event> {
    if rank > desc.n {
        return Err(Error::InvalidRank { rank, desc });
    }
    if rank == 0 {
        return Ok(Event::zero(desc));
    }
    let frame = random_frame(desc, rng)?;
    Ok(sum_events(desc, &frame.iter().take(rank).collect::<Vec<_>>()))
}

/// Random projection with a uniformly drawn rank in `0..=n`.
pub fn random_event(desc: Descriptor, rng: &mut impl Rng) -> Result<Event> {
    let rank = rng.random_range(0..=desc.n);
    random_projection(desc, rank, rng)
}

/// Random density `x∘x / tr(x∘x)`.
pub fn random_density(desc: Descriptor, rng: &mut impl Rng) -> Result<AlgebraElement> {
    for _ in 0..MAX_RETRIES {
        let x = random_element(desc, rng);
        let sq = x.square();
        let tr = sq.trace();
        if tr > 1e-8 {
            return Ok(sq.scale(1.0 / tr));
        }
    }
    Err(Error::DegenerateDraw(MAX_RETRIES))
}

/// Events assembled from one random frame: each frame member is assigned to
/// one of `k` slots or left out, so the `k` events are mutually orthogonal.
pub fn random_orthogonal_events(
    desc: Descriptor,
    k: usize,
    rng: &mut impl Rng,
) -> Result<Vec<Event>> {
    let frame = random_frame(desc, rng)?;
    let mut slots: Vec<Vec<&Event>> = vec![Vec::new(); k];
    for p in &frame {
        let slot = rng.random_range(0..=k);
        if slot < k {
            slots[slot].push(p);
        }
    }
    Ok(slots.iter().map(|s| sum_events(desc, s)).collect())
}

/// A pair `e ≤ f`: `f` is a random sub-sum of a frame and `e` a sub-sum of `f`.
pub fn random_comparable_pair(desc: Descriptor, rng: &mut impl Rng) -> Result<(Event, Event)> {
    let frame = random_frame(desc, rng)?;
    let mut in_f = Vec::new();
    let mut in_e = Vec::new();
    for p in &frame {
        if rng.random_bool(0.6) {
            in_f.push(p);
            if rng.random_bool(0.5) {
                in_e.push(p);
            }
        }
    }
    Ok((sum_events(desc, &in_e), sum_events(desc, &in_f)))
}

/// Random real diagonal configuration: the commuting (classical) case.
pub fn random_diagonal_event(desc: Descriptor, rng: &mut impl Rng) -> Event {
    let idx: Vec<usize> = (0..desc.n).filter(|_| rng.random_bool(0.5)).collect();
    Event::diagonal(desc, &idx)
}

pub fn random_diagonal_density(desc: Descriptor, rng: &mut impl Rng) -> AlgebraElement {
    let w: Vec<f64> = (0..desc.n).map(|_| rng.random_range(0.0..1.0)).collect();
    let total: f64 = w.iter().sum::<f64>().max(1e-12);
    AlgebraElement::from_real_diagonal(desc, &w.iter().map(|v| v / total).collect::<Vec<_>>())
}
