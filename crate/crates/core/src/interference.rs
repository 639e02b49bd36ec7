//! Interference terms and the maps `S_e`, `T_e` built from `U_e`.
//!
//! Scalar terms weight each conditional by its condition, i.e. they use
//! `μ(f|e)μ(e) = μ(U_e f)`, so they are defined for null events as well.
//! Operator forms are [`LinearMap`]s whose terms are each built from their own
//! summed event, with no algebraic simplification between them.

use crate::error::{Error, Result};
use crate::jordan::Event;
use crate::operator::LinearMap;
use crate::ucp::{evaluate, joint, orthogonality_residual, State};

/// Orthogonality tolerance used to validate event tuples.
pub const ORTHO_TOL: f64 = 1e-8;

fn require_orthogonal(events: &[&Event]) -> Result<()> {
    for (i, e) in events.iter().enumerate() {
        for f in &events[i + 1..] {
            let residual = orthogonality_residual(e, f);
            if residual > ORTHO_TOL {
                return Err(Error::NotOrthogonal { residual });
            }
        }
    }
    Ok(())
}

/// `I_2^{μ,f}(e1, e2) = μ(f|e1+e2)μ(e1+e2) − μ(f|e1)μ(e1) − μ(f|e2)μ(e2)`.
pub fn i2_scalar(mu: &State, f: &Event, e1: &Event, e2: &Event) -> Result<f64> {
    require_orthogonal(&[e1, e2])?;
    let f = f.element();
    Ok(joint(mu, &e1.sum_unchecked(e2), f) - joint(mu, e1, f) - joint(mu, e2, f))
}

/// The seven-term alternating sum `I_3^{μ,f}(e1, e2, e3)`.
pub fn i3_scalar(mu: &State, f: &Event, e1: &Event, e2: &Event, e3: &Event) -> Result<f64> {
    require_orthogonal(&[e1, e2, e3])?;
    let f = f.element();
    let e12 = e1.sum_unchecked(e2);
    let e13 = e1.sum_unchecked(e3);
    let e23 = e2.sum_unchecked(e3);
    let e123 = e12.sum_unchecked(e3);
    Ok(joint(mu, &e123, f) - joint(mu, &e12, f) - joint(mu, &e23, f) - joint(mu, &e13, f)
        + joint(mu, e1, f)
        + joint(mu, e2, f)
        + joint(mu, e3, f))
}

/// `I_2(e1, e2) = U_{e1+e2} − U_{e1} − U_{e2}`.
pub fn i2_operator(e1: &Event, e2: &Event) -> Result<LinearMap> {
    require_orthogonal(&[e1, e2])?;
    Ok(i2_operator_unchecked(e1, e2))
}

fn i2_operator_unchecked(e1: &Event, e2: &Event) -> LinearMap {
    LinearMap::combination(
        e1.descriptor(),
        vec![
            (1.0, LinearMap::u(&e1.sum_unchecked(e2))),
            (-1.0, LinearMap::u(e1)),
            (-1.0, LinearMap::u(e2)),
        ],
    )
}

/// `I_3(e1, e2, e3) = U_{e1+e2+e3} − U_{e1+e2} − U_{e2+e3} − U_{e1+e3} + U_{e1} + U_{e2} + U_{e3}`.
pub fn i3_operator(e1: &Event, e2: &Event, e3: &Event) -> Result<LinearMap> {
    require_orthogonal(&[e1, e2, e3])?;
    Ok(i3_operator_unchecked(e1, e2, e3))
}

pub(crate) fn i3_operator_unchecked(e1: &Event, e2: &Event, e3: &Event) -> LinearMap {
    let u = LinearMap::u;
    LinearMap::combination(
        e1.descriptor(),
        vec![
            (1.0, u(&e1.sum_unchecked(e2).sum_unchecked(e3))),
            (-1.0, u(&e1.sum_unchecked(e2))),
            (-1.0, u(&e2.sum_unchecked(e3))),
            (-1.0, u(&e1.sum_unchecked(e3))),
            (1.0, u(e1)),
            (1.0, u(e2)),
            (1.0, u(e3)),
        ],
    )
}

/// `S_e x = 2U_e x + 2U_{e′} x − x`.
pub fn s_map(e: &Event) -> LinearMap {
    let desc = e.descriptor();
    LinearMap::combination(
        desc,
        vec![
            (2.0, LinearMap::u(e)),
            (2.0, LinearMap::u(&e.complement())),
            (-1.0, LinearMap::identity(desc)),
        ],
    )
}

/// `T_e x = ½(x + U_e x − U_{e′} x)`.
pub fn t_map(e: &Event) -> LinearMap {
    let desc = e.descriptor();
    LinearMap::combination(
        desc,
        vec![
            (0.5, LinearMap::identity(desc)),
            (0.5, LinearMap::u(e)),
            (-0.5, LinearMap::u(&e.complement())),
        ],
    )
}

/// One point of the interference corridor.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CorridorPoint {
    /// `μ(f|e)μ(e) + μ(f|e′)μ(e′)`
    pub p: f64,
    /// `μ(f)`
    pub q: f64,
}

impl CorridorPoint {
    /// `2p − 1 ≤ q` up to `slack`.
    pub fn lower_ok(&self, slack: f64) -> bool {
        2.0 * self.p - 1.0 - slack <= self.q
    }

    /// `q ≤ 2p` up to `slack`.
    pub fn upper_ok(&self, slack: f64) -> bool {
        self.q <= 2.0 * self.p + slack
    }
}

pub fn corridor_sample(mu: &State, e: &Event, f: &Event) -> CorridorPoint {
    let fe = f.element();
    let p = joint(mu, e, fe) + joint(mu, &e.complement(), fe);
    CorridorPoint {
        p,
        q: evaluate(mu, fe),
    }
}

/// Residuals of the symmetry condition for one pair of events.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SymmetryResiduals {
    /// `‖U_e f′ + U_{e′} f − U_f e′ − U_{f′} e‖`
    pub a1: f64,
    /// `‖T_e f − T_f e‖`
    pub t_form: f64,
    /// `‖U_e f′ + U_{e′} f − (e + f − ef − fe)‖`, with plain matrix products
    pub lhs_closed_form: f64,
    /// `‖U_f e′ + U_{f′} e − (e + f − ef − fe)‖`
    pub rhs_closed_form: f64,
}

pub fn a1_check(e: &Event, f: &Event) -> SymmetryResiduals {
    let (ec, fc) = (e.complement(), f.complement());
    let lhs = &e.u(fc.element()) + &ec.u(f.element());
    let rhs = &f.u(ec.element()) + &fc.u(e.element());

    let desc = e.descriptor();
    let ef = e.element().matmul(f.element());
    let fe = f.element().matmul(e.element());
    let mut closed = e.element() + f.element();
    for i in 0..desc.n {
        for j in i..desc.n {
            let v = closed.get(i, j) - ef[i * desc.n + j] - fe[i * desc.n + j];
            closed.set_hermitian(i, j, v);
        }
    }

    SymmetryResiduals {
        a1: (&lhs - &rhs).frobenius_norm(),
        t_form: (&t_map(e).apply(f.element()) - &t_map(f).apply(e.element())).frobenius_norm(),
        lhs_closed_form: (&lhs - &closed).frobenius_norm(),
        rhs_closed_form: (&rhs - &closed).frobenius_norm(),
    }
}

/// `‖I_2(e, e′)f − I_2(f, f′)e − (2U_f e − 2U_e f)‖`.
pub fn eq10_check(e: &Event, f: &Event) -> f64 {
    let lhs = &i2_operator_unchecked(e, &e.complement()).apply(f.element())
        - &i2_operator_unchecked(f, &f.complement()).apply(e.element());
    let rhs = &f.u(e.element()).scale(2.0) - &e.u(f.element()).scale(2.0);
    (&lhs - &rhs).frobenius_norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jordan::{AlgebraElement, Descriptor};
    use crate::random::{random_element, random_event, random_orthogonal_events, trial_rng};
    use crate::scalar::Level;
    use crate::spectral::is_positive;

    fn c2() -> Descriptor {
        Descriptor::new(Level::C, 2).unwrap()
    }

    fn plus(d: Descriptor) -> Event {
        Event::new(State::pure_real(d, &[1.0, 1.0]).unwrap().density().clone()).unwrap()
    }

    #[test]
    fn i2_two_slit_value() {
        let d = c2();
        let (e1, e2) = (Event::diagonal(d, &[0]), Event::diagonal(d, &[1]));
        let f = plus(d);
        let mu = State::pure_real(d, &[1.0, 1.0]).unwrap();
        // 1 − 1/4 − 1/4
        assert!((i2_scalar(&mu, &f, &e1, &e2).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn i2_vanishes_classically_and_for_unit_detector() {
        let d = Descriptor::new(Level::C, 3).unwrap();
        let mut rng = trial_rng(1, 0);
        let mu = State::random(d, &mut rng).unwrap();
        let es = random_orthogonal_events(d, 2, &mut rng).unwrap();
        let one = Event::one(d);
        assert!(i2_scalar(&mu, &one, &es[0], &es[1]).unwrap().abs() < 1e-12);

        let e1 = Event::diagonal(d, &[0]);
        let e2 = Event::diagonal(d, &[2]);
        let f = Event::diagonal(d, &[0, 1]);
        let rho = AlgebraElement::from_real_diagonal(d, &[0.2, 0.3, 0.5]);
        let mu = State::new(rho, 1e-12).unwrap();
        assert_eq!(i2_scalar(&mu, &f, &e1, &e2).unwrap(), 0.0);
    }

    #[test]
    fn non_orthogonal_pair_rejected() {
        let d = c2();
        let e = Event::diagonal(d, &[0]);
        let mu = State::pure_real(d, &[1.0, 0.0]).unwrap();
        assert!(matches!(
            i2_scalar(&mu, &e, &e, &plus(d)),
            Err(Error::NotOrthogonal { .. })
        ));
        assert!(i3_operator(&e, &Event::zero(d), &e).is_err());
    }

    #[test]
    fn i3_with_zero_third_event_vanishes() {
        let d = Descriptor::new(Level::H, 3).unwrap();
        let mut rng = trial_rng(2, 0);
        let mu = State::random(d, &mut rng).unwrap();
        let f = random_event(d, &mut rng).unwrap();
        let es = random_orthogonal_events(d, 2, &mut rng).unwrap();
        let v = i3_scalar(&mu, &f, &es[0], &es[1], &Event::zero(d)).unwrap();
        assert!(v.abs() < 1e-12);
    }

    #[test]
    fn i3_operator_kills_unit() {
        let d = Descriptor::new(Level::C, 3).unwrap();
        let es: Vec<_> = (0..3).map(|i| Event::diagonal(d, &[i])).collect();
        let op = i3_operator(&es[0], &es[1], &es[2]).unwrap();
        assert!(op.apply(&AlgebraElement::identity(d)).frobenius_norm() < 1e-15);
        assert!(op.matrix().max_norm() <= 1e-10);
    }

    #[test]
    fn i2_operator_sees_cross_terms() {
        let d = c2();
        let (e1, e2) = (Event::diagonal(d, &[0]), Event::diagonal(d, &[1]));
        let op = i2_operator(&e1, &e2).unwrap();
        assert!(op.matrix().max_norm() > 0.5);
        let zero = i2_operator(&e1, &Event::zero(d)).unwrap();
        assert!(zero.matrix().max_norm() < 1e-15);
    }

    #[test]
    fn s_and_t_basics() {
        for (l, n) in [(Level::C, 3), (Level::O, 3)] {
            let d = Descriptor::new(l, n).unwrap();
            let mut rng = trial_rng(3, 0);
            let e = random_event(d, &mut rng).unwrap();
            let s = s_map(&e);
            let one = AlgebraElement::identity(d);
            assert!(s.apply(&one).max_abs_diff(&one) < 1e-12);
            assert!(s.apply(e.element()).max_abs_diff(e.element()) < 1e-12);
            let x = random_element(d, &mut rng);
            let back = s_map(&e.complement()).apply(&s.apply(&x));
            assert!(back.max_abs_diff(&x) < 1e-9);
            let t = t_map(&e);
            assert!(t.apply(e.element()).max_abs_diff(e.element()) < 1e-12);
            let t_one = t_map(&Event::one(d));
            assert!(t_one.apply(&x).max_abs_diff(&x) < 1e-12);
            // S_e maps positive elements to positive elements
            let pos = x.square();
            assert!(is_positive(&s.apply(&pos), 1e-9));
        }
    }

    #[test]
    fn s_is_conjugation_by_symmetry_in_associative_case() {
        let d = Descriptor::new(Level::H, 3).unwrap();
        let mut rng = trial_rng(4, 0);
        let e = random_event(d, &mut rng).unwrap();
        let x = random_element(d, &mut rng);
        let sym = e.element() - e.complement().element();
        let sx = sym.matmul(&x);
        let n = d.n;
        let mut sxs = vec![crate::scalar::Scalar::zero(d.level); n * n];
        for i in 0..n {
            for k in 0..n {
                for j in 0..n {
                    sxs[i * n + j] += sx[i * n + k] * sym.get(k, j);
                }
            }
        }
        let sxs = AlgebraElement::from_entries(d, sxs, 1e-9).unwrap();
        assert!(s_map(&e).apply(&x).max_abs_diff(&sxs) < 1e-10);
    }

    #[test]
    fn corridor_examples() {
        let d = c2();
        let e = Event::diagonal(d, &[0]);
        let f = plus(d);
        let mu = State::pure_real(d, &[1.0, 1.0]).unwrap();
        let pt = corridor_sample(&mu, &e, &f);
        assert!((pt.p - 0.5).abs() < 1e-15);
        assert!((pt.q - 1.0).abs() < 1e-15);
        assert!(pt.upper_ok(1e-12) && pt.lower_ok(1e-12));

        let zero = corridor_sample(&mu, &e, &Event::zero(d));
        assert_eq!((zero.p, zero.q), (0.0, 0.0));

        let rho = AlgebraElement::from_real_diagonal(d, &[0.3, 0.7]);
        let mu = State::new(rho, 1e-12).unwrap();
        let pt = corridor_sample(&mu, &e, &Event::diagonal(d, &[1]));
        assert_eq!(pt.p, pt.q);
    }

    #[test]
    fn symmetry_condition_examples() {
        for (l, n) in [(Level::R, 3), (Level::C, 2), (Level::H, 3), (Level::O, 3)] {
            let d = Descriptor::new(l, n).unwrap();
            for t in 0..20 {
                let mut rng = trial_rng(5, t);
                let e = random_event(d, &mut rng).unwrap();
                let f = random_event(d, &mut rng).unwrap();
                let r = a1_check(&e, &f);
                assert!(r.a1 < 1e-9 && r.t_form < 1e-9, "{d}: {r:?}");
                assert!(r.lhs_closed_form < 1e-12 && r.rhs_closed_form < 1e-12);
                assert!(eq10_check(&e, &f) < 1e-9);
                assert_eq!(a1_check(&e, &e).a1, 0.0);
                assert!(eq10_check(&e, &Event::one(d)) < 1e-14);
            }
        }
    }
}
