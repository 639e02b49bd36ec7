//! Randomized verification batteries.
//!
//! Each battery draws `trials` independent configurations (trial `t` of
//! battery `b` uses stream `trial_rng(seed, b << 32 | t)`), evaluates a fixed
//! list of residuals per trial and reduces them with a NaN-propagating max.
//! The reduction is order independent, so results do not depend on the
//! number of worker threads.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::interference::{
    a1_check, corridor_sample, eq10_check, i3_operator_unchecked, i3_scalar, s_map,
};
use crate::jordan::{AlgebraElement, Descriptor, Event};
use crate::operator::{DenseOperator, LinearMap};
use crate::random::{
    random_comparable_pair, random_diagonal_density, random_diagonal_event, random_element,
    random_event, random_orthogonal_events, random_projection, trial_rng,
};
use crate::spectral::{min_eigenvalue, order_unit_norm, spectral_decompose};
use crate::ucp::{evaluate, mixture_rule_residual, State};

/// Outcome of one named check, reduced over all trials.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    /// The identity or bound being checked, written out.
    pub anchor: String,
    pub model: String,
    pub trials: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Model, trial count, seed and residual tolerance for a battery run.
#[derive(Clone, Copy, Debug)]
pub struct SuiteConfig {
    pub desc: Descriptor,
    pub trials: usize,
    pub seed: u64,
    pub tol: f64,
}

impl SuiteConfig {
    pub fn new(desc: Descriptor, trials: usize, seed: u64, tol: f64) -> Self {
        SuiteConfig {
            desc,
            trials,
            seed,
            tol,
        }
    }
}

/// Default residual tolerance: `1e-9`, loosened to `1e-8` for `H_3(𝕆)` where
/// the spectral idempotents come out of a cubic solve.
pub fn default_tolerance(desc: Descriptor) -> f64 {
    if desc.level.is_associative() {
        1e-9
    } else {
        1e-8
    }
}

struct Spec {
    name: &'static str,
    anchor: &'static str,
    /// Fixed tolerance overriding the run tolerance.
    tol: Option<f64>,
}

const fn spec(name: &'static str, anchor: &'static str) -> Spec {
    Spec {
        name,
        anchor,
        tol: None,
    }
}

fn nan_max(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() {
        f64::NAN
    } else {
        a.max(b)
    }
}

fn run_battery<F>(battery: u64, cfg: &SuiteConfig, specs: &[Spec], trial: F) -> Result<Vec<CheckResult>>
where
    F: Fn(&mut ChaCha8Rng) -> Result<Vec<f64>> + Sync,
{
    let maxima = (0..cfg.trials as u64)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(cfg.seed, (battery << 32) | t);
            let r = trial(&mut rng)?;
            debug_assert_eq!(r.len(), specs.len());
            Ok::<_, Error>(r)
        })
        .try_reduce(
            || vec![0.0; specs.len()],
            |a, b| Ok(a.iter().zip(&b).map(|(x, y)| nan_max(*x, *y)).collect()),
        )?;
    Ok(specs
        .iter()
        .zip(maxima)
        .map(|(s, max)| {
            let tolerance = s.tol.unwrap_or(cfg.tol);
            CheckResult {
                name: s.name.to_string(),
                anchor: s.anchor.to_string(),
                model: cfg.desc.to_string(),
                trials: cfg.trials,
                max_residual: max,
                tolerance,
                pass: max <= tolerance,
            }
        })
        .collect())
}

fn unit_frobenius(x: AlgebraElement) -> AlgebraElement {
    let n = x.frobenius_norm();
    if n > 0.0 {
        x.scale(1.0 / n)
    } else {
        x
    }
}

fn unit_order_norm(x: AlgebraElement) -> AlgebraElement {
    let n = order_unit_norm(&x);
    if n > 0.0 {
        x.scale(1.0 / n)
    } else {
        x
    }
}

fn dense_u(e: &Event) -> DenseOperator {
    LinearMap::u(e).matrix()
}

/// `T_e = ½(I + U_e − U_{e′})` from the dense `U` matrices.
fn dense_t(u_e: &DenseOperator, u_ec: &DenseOperator) -> DenseOperator {
    (&(&DenseOperator::identity(u_e.descriptor()) + u_e) - u_ec).scale(0.5)
}

fn diff(a: &DenseOperator, b: &DenseOperator) -> f64 {
    (a - b).max_norm()
}

fn el_diff(a: &AlgebraElement, b: &AlgebraElement) -> f64 {
    (a - b).frobenius_norm()
}

/// Jordan-algebra structure: power associativity, the Jordan identity,
/// positivity of squares, norm identities and spectral consistency.
pub fn jordan_suite(cfg: &SuiteConfig) -> Result<Vec<CheckResult>> {
    let specs = [
        spec("power associativity", "x^n ∘ x^m = x^(n+m), n + m ≤ 8"),
        spec("Jordan identity", "x ∘ (x² ∘ y) = x² ∘ (x ∘ y)"),
        spec("squares are positive", "x² ≥ 0"),
        spec("square norm", "‖x²‖ = ‖x‖²"),
        spec("submultiplicativity", "‖x ∘ y‖ ≤ ‖x‖ ‖y‖"),
        spec("sum of squares dominates", "‖x² + y²‖ ≥ ‖x²‖"),
        spec("spectral decomposition", "x = Σ λ_i e_i, e_i ∘ e_j = δ_ij e_i, Σ e_i = 𝟙"),
        spec("idempotent powers", "e² = e ⇒ e^n = e, n ≤ 6"),
    ];
    let desc = cfg.desc;
    run_battery(1, cfg, &specs, |rng| {
        let x = unit_frobenius(random_element(desc, rng));
        let y = unit_frobenius(random_element(desc, rng));

        let powers: Vec<AlgebraElement> = (0..=8).map(|k| x.power(k)).collect();
        let mut power_assoc = 0.0f64;
        for n in 1..8 {
            for m in 1..=(8 - n) {
                let r = el_diff(&powers[n].jordan(&powers[m]), &powers[n + m]);
                power_assoc = nan_max(power_assoc, r);
            }
        }

        let x2 = &powers[2];
        let jordan_id = el_diff(&x.jordan(&x2.jordan(&y)), &x2.jordan(&x.jordan(&y)));
        let square_pos = (-min_eigenvalue(x2)).max(0.0);
        let nx = order_unit_norm(&x);
        let ny = order_unit_norm(&y);
        let square_norm = (order_unit_norm(x2) - nx * nx).abs();
        let submult = (order_unit_norm(&x.jordan(&y)) - nx * ny).max(0.0);
        let y2 = y.square();
        let dominate = (order_unit_norm(x2) - order_unit_norm(&(x2 + &y2))).max(0.0);

        let form = spectral_decompose(&x)?;
        let mut spectral = el_diff(&form.reconstruct(desc), &x);
        let mut partition = AlgebraElement::zero(desc);
        for (i, e) in form.idempotents.iter().enumerate() {
            spectral = nan_max(spectral, e.idempotency_residual());
            for f in &form.idempotents[i + 1..] {
                spectral = nan_max(spectral, e.jordan(f).frobenius_norm());
            }
            partition = &partition + e;
        }
        spectral = nan_max(spectral, el_diff(&partition, &AlgebraElement::identity(desc)));

        let rank = rng.random_range(0..=desc.n);
        let p = random_projection(desc, rank, rng)?;
        let idem = (1..=6)
            .map(|k| el_diff(&p.element().power(k), p.element()))
            .fold(0.0, nan_max);

        Ok(vec![
            power_assoc,
            jordan_id,
            square_pos,
            square_norm,
            submult,
            dominate,
            spectral,
            idem,
        ])
    })
}

/// Vanishing of the third-order interference operator on random orthogonal
/// triples, plus agreement of its scalar and operator forms.
pub fn i3_suite(cfg: &SuiteConfig) -> Result<Vec<CheckResult>> {
    let specs = [
        spec(
            "I3 operator vanishes",
            "U_{e1+e2+e3} − U_{e1+e2} − U_{e2+e3} − U_{e1+e3} + U_{e1} + U_{e2} + U_{e3} = 0",
        ),
        Spec {
            name: "I3 scalar/operator agreement",
            anchor: "I_3^{μ,f}(e1,e2,e3) = μ(I_3(e1,e2,e3) f)",
            tol: Some(1e-10),
        },
    ];
    let desc = cfg.desc;
    run_battery(2, cfg, &specs, |rng| {
        let es = random_orthogonal_events(desc, 3, rng)?;
        let op = i3_operator_unchecked(&es[0], &es[1], &es[2]);
        let vanish = op.matrix().max_norm();
        let mu = State::random(desc, rng)?;
        let f = random_event(desc, rng)?;
        let scalar = i3_scalar(&mu, &f, &es[0], &es[1], &es[2])?;
        let via_op = evaluate(&mu, &op.apply(f.element()));
        Ok(vec![vanish, (scalar - via_op).abs()])
    })
}

/// Largest dense max-norm of the `I_3` operator over `trials` random
/// orthogonal triples.
pub fn i3_max_norm(cfg: &SuiteConfig) -> Result<f64> {
    let r = i3_suite(cfg)?;
    Ok(r[0].max_residual)
}

/// Statistics over sampled corridor points.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CorridorStats {
    pub samples: usize,
    /// `max(0, 2p − 1 − q)`
    pub lower_violation: f64,
    /// `max(0, q − 2p)`
    pub upper_violation: f64,
    /// `max |q − p|`
    pub max_gap: f64,
}

/// The configuration for corridor trial `trial`.
///
/// In classical mode everything is diagonal. Otherwise trial 0 of a model
/// with `n ≥ 2` is the saturating configuration `e = E_11`, `f = μ` = the
/// projection onto `(1, 1, 0, …)/√2`, which sits on the upper edge
/// `(p, q) = (½, 1)`; every other trial is random.
pub fn corridor_configuration(
    desc: Descriptor,
    seed: u64,
    trial: u64,
    classical: bool,
) -> Result<(State, Event, Event)> {
    let mut rng = trial_rng(seed, (3 << 32) | trial);
    if classical {
        let mu = State::from_density_unchecked(random_diagonal_density(desc, &mut rng));
        let e = random_diagonal_event(desc, &mut rng);
        let f = random_diagonal_event(desc, &mut rng);
        return Ok((mu, e, f));
    }
    if trial == 0 && desc.n >= 2 {
        let mut v = vec![0.0; desc.n];
        v[0] = 1.0;
        v[1] = 1.0;
        let mu = State::pure_real(desc, &v)?;
        let f = Event::with_tolerance(mu.density().clone(), f64::INFINITY)?;
        return Ok((mu, Event::diagonal(desc, &[0]), f));
    }
    let mu = State::random(desc, &mut rng)?;
    let e = random_event(desc, &mut rng)?;
    let f = random_event(desc, &mut rng)?;
    Ok((mu, e, f))
}

/// Samples corridor points over `cfg.trials` configurations and records how
/// close they get to the edges `q = 2p − 1` and `q = 2p`.
pub fn corridor_stats(cfg: &SuiteConfig, classical: bool) -> Result<CorridorStats> {
    let maxima = (0..cfg.trials as u64)
        .into_par_iter()
        .map(|t| {
            let (mu, e, f) = corridor_configuration(cfg.desc, cfg.seed, t, classical)?;
            let pt = corridor_sample(&mu, &e, &f);
            Ok::<_, Error>([
                (2.0 * pt.p - 1.0 - pt.q).max(0.0),
                (pt.q - 2.0 * pt.p).max(0.0),
                (pt.q - pt.p).abs(),
            ])
        })
        .try_reduce(
            || [0.0; 3],
            |a, b| Ok([nan_max(a[0], b[0]), nan_max(a[1], b[1]), nan_max(a[2], b[2])]),
        )?;
    Ok(CorridorStats {
        samples: cfg.trials,
        lower_violation: maxima[0],
        upper_violation: maxima[1],
        max_gap: maxima[2],
    })
}

/// Corridor bounds as check results.
pub fn corridor_suite(cfg: &SuiteConfig) -> Result<Vec<CheckResult>> {
    let stats = corridor_stats(cfg, false)?;
    let mk = |name: &str, anchor: &str, v: f64| CheckResult {
        name: name.to_string(),
        anchor: anchor.to_string(),
        model: cfg.desc.to_string(),
        trials: cfg.trials,
        max_residual: v,
        tolerance: cfg.tol,
        pass: v <= cfg.tol,
    };
    let mut out = vec![
        mk(
            "corridor lower bound",
            "μ(f) ≥ 2μ(f|e)μ(e) + 2μ(f|e′)μ(e′) − 1",
            stats.lower_violation,
        ),
        mk(
            "corridor upper bound",
            "μ(f) ≤ 2μ(f|e)μ(e) + 2μ(f|e′)μ(e′)",
            stats.upper_violation,
        ),
    ];
    if cfg.desc.n >= 2 {
        // interference is present: some sample leaves the diagonal q = p
        let shortfall = (0.2 - stats.max_gap).max(0.0);
        out.push(CheckResult {
            pass: stats.max_gap > 0.2,
            ..mk("corridor not vacuous", "max |μ(f) − μ(f|e)μ(e) − μ(f|e′)μ(e′)| > 0.2", shortfall)
        });
    }
    Ok(out)
}

/// The symmetry condition and its `I_2` rewriting.
pub fn symmetry_suite(cfg: &SuiteConfig) -> Result<Vec<CheckResult>> {
    let specs = [
        spec("symmetry condition", "U_e f′ + U_{e′} f = U_f e′ + U_{f′} e"),
        spec("symmetric T form", "T_e f = T_f e"),
        spec("I2 rewriting", "I_2(e,e′) f − I_2(f,f′) e = 2U_f e − 2U_e f"),
        Spec {
            name: "closed form",
            anchor: "U_e f′ + U_{e′} f = e + f − ef − fe",
            tol: Some(1e-12),
        },
    ];
    let desc = cfg.desc;
    run_battery(4, cfg, &specs, |rng| {
        let e = random_event(desc, rng)?;
        let f = random_event(desc, rng)?;
        let r = a1_check(&e, &f);
        Ok(vec![
            r.a1,
            r.t_form,
            eq10_check(&e, &f),
            r.lhs_closed_form.max(r.rhs_closed_form),
        ])
    })
}

/// Unit-ball samples for the `‖T_e‖ ≤ 1` check: a random element scaled to
/// order-unit norm one, and a random symmetry `2p − 𝟙`.
fn unit_ball_samples(desc: Descriptor, rng: &mut ChaCha8Rng) -> Result<Vec<AlgebraElement>> {
    let x = unit_order_norm(random_element(desc, rng));
    let p = random_event(desc, rng)?;
    let s = p
        .element()
        .scale(2.0)
        .add_scaled(-1.0, &AlgebraElement::identity(desc));
    Ok(vec![x, s])
}

fn t_norm_residuals(
    desc: Descriptor,
    e: &Event,
    t_e: &DenseOperator,
    rng: &mut ChaCha8Rng,
) -> Result<(f64, f64)> {
    let mut excess = 0.0f64;
    for x in unit_ball_samples(desc, rng)? {
        excess = nan_max(excess, (order_unit_norm(&t_e.apply(&x)) - 1.0).max(0.0));
    }
    let witness = if e.rank() > 0.5 {
        let te = t_e.apply(e.element());
        let norm_e = order_unit_norm(e.element());
        (order_unit_norm(&te) - 1.0)
            .abs()
            .max((norm_e - 1.0).abs())
            .max(el_diff(&te, e.element()))
    } else {
        t_e.max_norm()
    };
    Ok((excess, witness))
}

/// Structure of `T_e`: spectrum, `U_e = 2T_e² − T_e`, complementarity and norm.
pub fn t_structure_suite(cfg: &SuiteConfig) -> Result<Vec<CheckResult>> {
    let specs = [
        spec("T_e self-adjoint", "⟨T_e x, y⟩ = ⟨x, T_e y⟩"),
        Spec {
            name: "T_e spectrum",
            anchor: "spec(T_e) ⊆ {0, ½, 1}",
            tol: Some(1e-8),
        },
        spec("U from T", "U_e = 2T_e² − T_e"),
        Spec {
            name: "T complement",
            anchor: "T_e + T_{e′} = id",
            tol: Some(1e-10),
        },
        spec("T_e norm bound", "‖T_e x‖ ≤ 1 for ‖x‖ ≤ 1"),
        spec("T_e norm witness", "T_e e = e, ‖e‖ = 1 for e ≠ 0"),
    ];
    let desc = cfg.desc;
    run_battery(5, cfg, &specs, |rng| {
        let e = random_event(desc, rng)?;
        let ec = e.complement();
        let u_e = dense_u(&e);
        let u_ec = dense_u(&ec);
        let t_e = dense_t(&u_e, &u_ec);
        let t_ec = dense_t(&u_ec, &u_e);
        let spectrum = t_e
            .symmetric_eigenvalues()
            .iter()
            .map(|l| [0.0, 0.5, 1.0].iter().map(|c| (l - c).abs()).fold(f64::INFINITY, f64::min))
            .fold(0.0, nan_max);
        let u_from_t = diff(&(&(&t_e * &t_e).scale(2.0) - &t_e), &u_e);
        let complement = diff(&(&t_e + &t_ec), &DenseOperator::identity(desc));
        let (excess, witness) = t_norm_residuals(desc, &e, &t_e, rng)?;
        Ok(vec![
            t_e.symmetry_residual(),
            spectrum,
            u_from_t,
            complement,
            excess,
            witness,
        ])
    })
}

/// `S_e`: unit preservation, inverse `S_{e′}`, positivity.
pub fn s_suite(cfg: &SuiteConfig) -> Result<Vec<CheckResult>> {
    let specs = [
        spec("S_e fixes unit", "S_e 𝟙 = 𝟙"),
        spec("S_e inverse", "S_{e′} S_e = id"),
        spec("S_e positive", "x ≥ 0 ⇒ S_e x ≥ 0"),
    ];
    let desc = cfg.desc;
    run_battery(6, cfg, &specs, |rng| {
        let e = random_event(desc, rng)?;
        let s = s_map(&e).matrix();
        let sc = s_map(&e.complement()).matrix();
        let one = AlgebraElement::identity(desc);
        let x = random_element(desc, rng).square();
        let scale = 1.0 + order_unit_norm(&x);
        Ok(vec![
            el_diff(&s.apply(&one), &one),
            diff(&(&sc * &s), &DenseOperator::identity(desc)),
            (-min_eigenvalue(&s.apply(&x)) / scale).max(0.0),
        ])
    })
}

/// Operator identities relating `U`, `T` and `I_3` for comparable, orthogonal
/// and complementary events.
pub fn lemma_suite(cfg: &SuiteConfig) -> Result<Vec<CheckResult>> {
    let specs = [
        spec("comparable: U_e U_f", "e ≤ f ⇒ U_e U_f = U_f U_e = U_e"),
        spec("comparable: U_e f", "e ≤ f ⇒ U_e f = e = U_f e"),
        spec("orthogonal: U_e f", "e ⊥ f ⇒ U_e f = 0 = U_f e"),
        spec("orthogonal: U_e U_f", "e ⊥ f ⇒ U_e U_f = 0 = U_f U_e"),
        spec("orthogonal complements", "e ⊥ f ⇒ U_{e′} U_{f′} = U_{(e+f)′} = U_{f′} U_{e′}"),
        spec("T commute", "e ⊥ f ⇒ T_e T_f = T_f T_e"),
        spec("I3 compression", "I_3(e1,e2,e3) = U_{e1+e2+e3} I_3((e2+e3)′, e2, e3)"),
        spec("T defect", "T_e + T_f − T_{e+f} = ½ I_3(e, f, (e+f)′)"),
        spec("T additivity", "e ⊥ f ⇒ T_{e+f} = T_e + T_f"),
        spec("T complement", "T_e + T_{e′} = id"),
        spec("T on U", "T_e U_e = U_e, T_e U_{e′} = 0"),
        spec("T_e norm bound", "‖T_e x‖ ≤ 1 for ‖x‖ ≤ 1"),
        spec("T_e norm witness", "T_e e = e, ‖e‖ = 1 for e ≠ 0"),
    ];
    let desc = cfg.desc;
    run_battery(7, cfg, &specs, |rng| {
        // (a) e ≤ f
        let (e, f) = random_comparable_pair(desc, rng)?;
        let (ue, uf) = (dense_u(&e), dense_u(&f));
        let comp_uu = diff(&(&ue * &uf), &ue).max(diff(&(&uf * &ue), &ue));
        let comp_uf = el_diff(&e.u(f.element()), e.element()).max(el_diff(&f.u(e.element()), e.element()));

        // (b), (c), (e), (f), (g) on an orthogonal pair
        let pair = random_orthogonal_events(desc, 2, rng)?;
        let (e, f) = (&pair[0], &pair[1]);
        let (ec, fc) = (e.complement(), f.complement());
        let efc = e.sum_unchecked(f).complement();
        let (ue, uf, uec, ufc, uefc) = (
            dense_u(e),
            dense_u(f),
            dense_u(&ec),
            dense_u(&fc),
            dense_u(&efc),
        );
        let zero = DenseOperator::zero(desc);
        let orth_uf = e.u(f.element()).frobenius_norm().max(f.u(e.element()).frobenius_norm());
        let orth_uu = diff(&(&ue * &uf), &zero).max(diff(&(&uf * &ue), &zero));
        let orth_comp = diff(&(&uec * &ufc), &uefc).max(diff(&(&ufc * &uec), &uefc));

        let te = dense_t(&ue, &uec);
        let tf = dense_t(&uf, &ufc);
        let ef = e.sum_unchecked(f);
        let tef = dense_t(&dense_u(&ef), &uefc);
        let t_commute = diff(&(&te * &tf), &(&tf * &te));

        // (d) both compression identities
        let triple = random_orthogonal_events(desc, 3, rng)?;
        let (e1, e2, e3) = (&triple[0], &triple[1], &triple[2]);
        let lhs = i3_operator_unchecked(e1, e2, e3).matrix();
        let e23c = e2.sum_unchecked(e3).complement();
        let inner = i3_operator_unchecked(&e23c, e2, e3).matrix();
        let outer = dense_u(&e1.sum_unchecked(e2).sum_unchecked(e3));
        let compression = diff(&lhs, &(&outer * &inner));
        let defect_rhs = i3_operator_unchecked(e, f, &efc).matrix().scale(0.5);
        let defect = diff(&(&(&te + &tf) - &tef), &defect_rhs);

        let additivity = diff(&tef, &(&te + &tf));
        let t_complement = diff(&(&te + &dense_t(&uec, &ue)), &DenseOperator::identity(desc));
        let t_on_u = diff(&(&te * &ue), &ue).max(diff(&(&te * &uec), &zero));
        let (excess, witness) = t_norm_residuals(desc, e, &te, rng)?;

        Ok(vec![
            comp_uu,
            comp_uf,
            orth_uf,
            orth_uu,
            orth_comp,
            t_commute,
            compression,
            defect,
            additivity,
            t_complement,
            t_on_u,
            excess,
            witness,
        ])
    })
}

/// Convex-combination rule for conditional states.
pub fn mixture_suite(cfg: &SuiteConfig) -> Result<Vec<CheckResult>> {
    let specs = [spec(
        "mixture rule",
        "(sμ + (1−s)ν)_e = (sμ(e)μ_e + (1−s)ν(e)ν_e) / (sμ(e) + (1−s)ν(e))",
    )];
    let desc = cfg.desc;
    run_battery(8, cfg, &specs, |rng| {
        let mu = State::random(desc, rng)?;
        let nu = State::random(desc, rng)?;
        // rank ≥ 1 so the mixture gives e positive weight
        let rank = rng.random_range(1..=desc.n);
        let e = random_projection(desc, rank, rng)?;
        let s = rng.random_range(0.01..0.99);
        Ok(vec![mixture_rule_residual(&mu, &nu, s, &e, 1e-12)?])
    })
}

/// Every battery for one model.
pub fn verify_all(cfg: &SuiteConfig) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    out.extend(jordan_suite(cfg)?);
    out.extend(i3_suite(cfg)?);
    out.extend(corridor_suite(cfg)?);
    out.extend(symmetry_suite(cfg)?);
    out.extend(t_structure_suite(cfg)?);
    out.extend(s_suite(cfg)?);
    out.extend(lemma_suite(cfg)?);
    out.extend(mixture_suite(cfg)?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Level;

    #[test]
    fn batteries_pass_on_small_models() {
        for (l, n) in [(Level::R, 2), (Level::C, 3), (Level::H, 2), (Level::O, 3)] {
            let d = Descriptor::new(l, n).unwrap();
            let cfg = SuiteConfig::new(d, 20, 3, default_tolerance(d));
            for c in verify_all(&cfg).unwrap() {
                assert!(c.pass, "{}: {} residual {:e}", c.model, c.name, c.max_residual);
            }
        }
    }

    #[test]
    fn results_are_reproducible() {
        let d = Descriptor::new(Level::C, 2).unwrap();
        let cfg = SuiteConfig::new(d, 30, 9, 1e-9);
        assert_eq!(symmetry_suite(&cfg).unwrap(), symmetry_suite(&cfg).unwrap());
    }

    #[test]
    fn nan_residual_fails_a_check() {
        assert!(nan_max(0.0, f64::NAN).is_nan());
        let d = Descriptor::new(Level::R, 2).unwrap();
        let cfg = SuiteConfig::new(d, 3, 0, 1e-9);
        let r = run_battery(99, &cfg, &[spec("nan", "")], |_| Ok(vec![f64::NAN])).unwrap();
        assert!(!r[0].pass);
    }
}
