//! The four real composition algebras ℝ, ℂ, ℍ and 𝕆.
//!
//! All levels share one [`Scalar`] type holding up to eight real coordinates
//! plus a level tag. Coordinates follow the Cayley–Dickson doubling order: an
//! element of level `2d` is the pair `(p, q)` of level-`d` elements stored as
//! `[p.., q..]`, so `e_{k+d} = e_k · e_d` for `k < d`.
//!
//! Products are computed from an 8×8 table of signed basis-unit products which
//! is itself generated once from the recursive doubling formula
//! `(p, q)(r, s) = (pr − s̄q, sp + q r̄)`. The recursive formula stays available
//! as [`cayley_dickson_product`] so the table can be audited against it.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which composition algebra a scalar lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Level {
    R,
    C,
    H,
    O,
}

impl Level {
    pub const ALL: [Level; 4] = [Level::R, Level::C, Level::H, Level::O];

    /// Real dimension of the algebra.
    pub const fn dim(self) -> usize {
        match self {
            Level::R => 1,
            Level::C => 2,
            Level::H => 4,
            Level::O => 8,
        }
    }

    pub const fn is_associative(self) -> bool {
        !matches!(self, Level::O)
    }

    pub const fn symbol(self) -> &'static str {
        match self {
            Level::R => "R",
            Level::C => "C",
            Level::H => "H",
            Level::O => "O",
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for Level {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "R" | "r" => Ok(Level::R),
            "C" | "c" => Ok(Level::C),
            "H" | "h" => Ok(Level::H),
            "O" | "o" => Ok(Level::O),
            other => Err(format!("unknown algebra `{other}` (expected R, C, H or O)")),
        }
    }
}

/// Product of two basis units: `e_i · e_j = sign · e_index`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UnitProduct {
    pub sign: i8,
    pub index: u8,
}

/// Cayley–Dickson product of two coordinate vectors of equal power-of-two length.
///
/// This is the slow reference route; [`Scalar`] multiplication goes through
/// the generated table instead.
pub fn cayley_dickson_product(a: &[f64], b: &[f64]) -> Vec<f64> {
    assert_eq!(a.len(), b.len(), "operands must have the same length");
    let n = a.len();
    assert!(n.is_power_of_two(), "length must be a power of two");
    if n == 1 {
        return vec![a[0] * b[0]];
    }
    let h = n / 2;
    let (p, q) = a.split_at(h);
    let (r, s) = b.split_at(h);
    let pr = cayley_dickson_product(p, r);
    let sbar_q = cayley_dickson_product(&conj_coords(s), q);
    let sp = cayley_dickson_product(s, p);
    let q_rbar = cayley_dickson_product(q, &conj_coords(r));
    let mut out = Vec::with_capacity(n);
    out.extend(pr.iter().zip(&sbar_q).map(|(x, y)| x - y));
    out.extend(sp.iter().zip(&q_rbar).map(|(x, y)| x + y));
    out
}

fn conj_coords(a: &[f64]) -> Vec<f64> {
    a.iter()
        .enumerate()
        .map(|(k, &v)| if k == 0 { v } else { -v })
        .collect()
}

fn unit_table() -> &'static [[UnitProduct; 8]; 8] {
    static TABLE: OnceLock<[[UnitProduct; 8]; 8]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut table = [[UnitProduct { sign: 1, index: 0 }; 8]; 8];
        for (i, row) in table.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let mut a = [0.0; 8];
                let mut b = [0.0; 8];
                a[i] = 1.0;
                b[j] = 1.0;
                let prod = cayley_dickson_product(&a, &b);
                let (index, &value) = prod
                    .iter()
                    .enumerate()
                    .find(|(_, v)| **v != 0.0)
                    .expect("product of basis units is a signed basis unit");
                *cell = UnitProduct {
                    sign: if value > 0.0 { 1 } else { -1 },
                    index: index as u8,
                };
            }
        }
        table
    })
}

/// Signed product `e_i · e_j` of octonion basis units.
pub fn unit_product(i: usize, j: usize) -> UnitProduct {
    unit_table()[i][j]
}

/// The 8×8 octonion unit multiplication table as CSV of signed unit indices.
///
/// Row `i`, column `j` holds `±k` meaning `e_i · e_j = ±e_k`.
pub fn octonion_table_csv() -> String {
    let mut out = String::from("x");
    for j in 0..8 {
        out.push_str(&format!(",e{j}"));
    }
    out.push('\n');
    for i in 0..8 {
        out.push_str(&format!("e{i}"));
        for j in 0..8 {
            let p = unit_product(i, j);
            let sign = if p.sign > 0 { '+' } else { '-' };
            out.push_str(&format!(",{sign}{}", p.index));
        }
        out.push('\n');
    }
    out
}

/// An element of ℝ, ℂ, ℍ or 𝕆 in Cayley–Dickson coordinates.
///
/// Only the first `level.dim()` coordinates are meaningful; the rest stay zero.
#[derive(Clone, Copy, PartialEq)]
pub struct Scalar {
    level: Level,
    coords: [f64; 8],
}

impl Scalar {
    pub fn zero(level: Level) -> Self {
        Scalar {
            level,
            coords: [0.0; 8],
        }
    }

    pub fn one(level: Level) -> Self {
        Self::real(level, 1.0)
    }

    pub fn real(level: Level, value: f64) -> Self {
        let mut coords = [0.0; 8];
        coords[0] = value;
        Scalar { level, coords }
    }

    /// Basis unit `e_k` at `level`. Panics if `k >= level.dim()`.
    pub fn unit(level: Level, k: usize) -> Self {
        assert!(k < level.dim(), "unit e{k} does not exist at level {level}");
        let mut coords = [0.0; 8];
        coords[k] = 1.0;
        Scalar { level, coords }
    }

    pub fn new(level: Level, coords: &[f64]) -> Result<Self> {
        if coords.len() != level.dim() {
            return Err(Error::CoordinateCount {
                level,
                expected: level.dim(),
                got: coords.len(),
            });
        }
        let mut c = [0.0; 8];
        c[..coords.len()].copy_from_slice(coords);
        Ok(Scalar { level, coords: c })
    }

    pub fn level(&self) -> Level {
        self.level
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords[..self.level.dim()]
    }

    pub fn real_part(&self) -> f64 {
        self.coords[0]
    }

    pub fn conj(&self) -> Self {
        let mut c = self.coords;
        for v in c.iter_mut().skip(1) {
            *v = -*v;
        }
        Scalar {
            level: self.level,
            coords: c,
        }
    }

    /// Squared Euclidean length of the coordinate vector, `a · ā`.
    pub fn norm(&self) -> f64 {
        self.coords().iter().map(|v| v * v).sum()
    }

    pub fn abs(&self) -> f64 {
        self.norm().sqrt()
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.coords().iter().skip(1).all(|v| v.abs() <= tol)
    }

    pub fn scale(&self, t: f64) -> Self {
        let mut c = self.coords;
        for v in c.iter_mut() {
            *v *= t;
        }
        Scalar {
            level: self.level,
            coords: c,
        }
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar> {
        if self.level != other.level {
            return Err(Error::LevelMismatch {
                left: self.level,
                right: other.level,
            });
        }
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Scalar) -> Scalar {
        let d = self.level.dim();
        let table = unit_table();
        let mut out = [0.0; 8];
        for i in 0..d {
            let a = self.coords[i];
            if a == 0.0 {
                continue;
            }
            for j in 0..d {
                let p = table[i][j];
                let term = a * other.coords[j];
                if p.sign > 0 {
                    out[p.index as usize] += term;
                } else {
                    out[p.index as usize] -= term;
                }
            }
        }
        Scalar {
            level: self.level,
            coords: out,
        }
    }

    /// Largest coordinate difference; `f64::INFINITY` when levels differ.
    pub fn max_abs_diff(&self, other: &Scalar) -> f64 {
        if self.level != other.level {
            return f64::INFINITY;
        }
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:?}", self.level, self.coords())
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(mut self, rhs: Scalar) -> Scalar {
        debug_assert_eq!(self.level, rhs.level);
        for (a, b) in self.coords.iter_mut().zip(rhs.coords) {
            *a += b;
        }
        self
    }
}

impl AddAssign for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        *self = *self + rhs;
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(mut self, rhs: Scalar) -> Scalar {
        debug_assert_eq!(self.level, rhs.level);
        for (a, b) in self.coords.iter_mut().zip(rhs.coords) {
            *a -= b;
        }
        self
    }
}

impl SubAssign for Scalar {
    fn sub_assign(&mut self, rhs: Scalar) {
        *self = *self - rhs;
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.scale(-1.0)
    }
}

/// Panics on mismatched levels; use [`Scalar::try_mul`] when that is possible.
impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        assert_eq!(
            self.level, rhs.level,
            "cannot multiply scalars of different levels"
        );
        self.mul_unchecked(&rhs)
    }
}

impl Mul<f64> for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: f64) -> Scalar {
        self.scale(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random(level: Level, rng: &mut impl Rng) -> Scalar {
        let c: Vec<f64> = (0..level.dim()).map(|_| rng.random_range(-1.0..1.0)).collect();
        Scalar::new(level, &c).unwrap()
    }

    #[test]
    fn complex_i_squared_is_minus_one() {
        let i = Scalar::unit(Level::C, 1);
        assert_eq!(i * i, Scalar::real(Level::C, -1.0));
    }

    #[test]
    fn quaternion_table() {
        let i = Scalar::unit(Level::H, 1);
        let j = Scalar::unit(Level::H, 2);
        let k = Scalar::unit(Level::H, 3);
        assert_eq!(i * j, k);
        assert_eq!(j * i, -k);
        assert_eq!(j * k, i);
        assert_eq!(k * i, j);
        assert_eq!(i * j * k, Scalar::real(Level::H, -1.0));
    }

    #[test]
    fn octonion_associator_witness() {
        // Evaluated with the recursive formula only, independent of the table.
        let e = |k: usize| {
            let mut v = vec![0.0; 8];
            v[k] = 1.0;
            v
        };
        let left = cayley_dickson_product(&cayley_dickson_product(&e(1), &e(2)), &e(4));
        let right = cayley_dickson_product(&e(1), &cayley_dickson_product(&e(2), &e(4)));
        let mut expected = e(7);
        assert_eq!(left, expected);
        expected[7] = -1.0;
        assert_eq!(right, expected);

        let u = |k| Scalar::unit(Level::O, k);
        let l = (u(1) * u(2)) * u(4);
        let r = u(1) * (u(2) * u(4));
        assert_eq!(l, -r);
        assert_eq!(l.norm(), 1.0);
        assert_eq!(r.norm(), 1.0);
    }

    #[test]
    fn table_matches_recursion_on_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for level in Level::ALL {
            for _ in 0..200 {
                let a = random(level, &mut rng);
                let b = random(level, &mut rng);
                let reference = cayley_dickson_product(a.coords(), b.coords());
                let fast = a * b;
                for (x, y) in fast.coords().iter().zip(&reference) {
                    assert!((x - y).abs() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn lower_levels_embed_in_octonions() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for level in [Level::R, Level::C, Level::H] {
            let a = random(level, &mut rng);
            let b = random(level, &mut rng);
            let lift = |s: Scalar| {
                let mut c = [0.0; 8];
                c[..level.dim()].copy_from_slice(s.coords());
                Scalar::new(Level::O, &c).unwrap()
            };
            let prod = a * b;
            let lifted = lift(a) * lift(b);
            assert!(lift(prod).max_abs_diff(&lifted) < 1e-15);
        }
    }

    #[test]
    fn conj_examples() {
        assert_eq!(Scalar::real(Level::R, 3.0).conj(), Scalar::real(Level::R, 3.0));
        assert_eq!(Scalar::unit(Level::C, 1).conj(), -Scalar::unit(Level::C, 1));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let a = random(Level::O, &mut rng);
            let p = a * a.conj();
            assert!((p.real_part() - a.norm()).abs() < 1e-12);
            assert!(p.is_real(1e-12));
            assert_eq!(a.conj().conj(), a);
            assert!((a + a.conj()).is_real(0.0));
        }
    }

    #[test]
    fn real_part_is_trace_symmetric() {
        assert_eq!(Scalar::unit(Level::C, 1).real_part(), 0.0);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for level in [Level::H, Level::O] {
            for _ in 0..500 {
                let a = random(level, &mut rng);
                let b = random(level, &mut rng);
                assert!(((a * b).real_part() - (b * a).real_part()).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn composition_property() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for level in Level::ALL {
            for _ in 0..10_000 {
                let a = random(level, &mut rng);
                let b = random(level, &mut rng);
                let lhs = (a * b).norm();
                let rhs = a.norm() * b.norm();
                assert!((lhs - rhs).abs() <= 1e-12 * rhs.max(f64::MIN_POSITIVE));
            }
        }
    }

    #[test]
    fn octonions_are_alternative_not_associative() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let mut worst_assoc = 0.0f64;
        for _ in 0..1000 {
            let a = random(Level::O, &mut rng);
            let b = random(Level::O, &mut rng);
            let c = random(Level::O, &mut rng);
            assert!((a * (a * b)).max_abs_diff(&((a * a) * b)) < 1e-12);
            assert!(((b * a) * a).max_abs_diff(&(b * (a * a))) < 1e-12);
            worst_assoc = worst_assoc.max(((a * b) * c).max_abs_diff(&(a * (b * c))));
        }
        assert!(worst_assoc > 1e-3);
    }

    #[test]
    fn associative_levels_associate() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for level in [Level::R, Level::C, Level::H] {
            for _ in 0..1000 {
                let a = random(level, &mut rng);
                let b = random(level, &mut rng);
                let c = random(level, &mut rng);
                assert!(((a * b) * c).max_abs_diff(&(a * (b * c))) < 1e-14);
            }
        }
    }

    #[test]
    fn mismatched_levels_error() {
        let a = Scalar::one(Level::C);
        let b = Scalar::one(Level::H);
        assert!(matches!(a.try_mul(&b), Err(Error::LevelMismatch { .. })));
        assert!(Scalar::new(Level::H, &[1.0, 2.0]).is_err());
    }

    #[test]
    fn table_csv_shape() {
        let csv = octonion_table_csv();
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines.len(), 9);
        assert_eq!(lines[1], "e0,+0,+1,+2,+3,+4,+5,+6,+7");
        // e_k e_k = -1 for k >= 1
        for (k, line) in lines.iter().enumerate().skip(2) {
            let cells: Vec<_> = line.split(',').collect();
            assert_eq!(cells[k], "-0");
        }
    }
}
