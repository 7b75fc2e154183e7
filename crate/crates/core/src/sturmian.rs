//! Rotation words over `{a, b}` and the statistics built on them.
//!
//! Letter `n` (1-indexed) of the word with slope `theta` and intercept `phi`
//! is `a` when `frac(phi + (n-1) theta) < theta` and `b` otherwise. Letters
//! are decided with interval arithmetic: a 128-bit fixed-point pass handles
//! almost every index, and the few that fall within its error margin of a
//! boundary are recomputed at escalating precision.

use std::collections::HashSet;
use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{factorize, ln2, pi, sqrt_uint, CertifiedReal};
use crate::error::{Error, Result};
use crate::exec::Exec;

/// Precision at which escalation gives up.
pub const PRECISION_CEILING: u32 = 1 << 16;

/// Default working precision in bits.
pub const DEFAULT_PRECISION: u32 = 128;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Letter {
    A,
    B,
}

impl Letter {
    pub fn as_char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::B => 'b',
        }
    }

    pub fn is_b(self) -> bool {
        self == Letter::B
    }
}

/// Parses a string of `a`/`b` characters.
pub fn letters_from_str(s: &str) -> Result<Vec<Letter>> {
    s.chars()
        .map(|c| match c {
            'a' => Ok(Letter::A),
            'b' => Ok(Letter::B),
            _ => Err(Error::InvalidInput(format!("not a letter: {c:?}"))),
        })
        .collect()
}

pub fn letters_to_string(letters: &[Letter]) -> String {
    letters.iter().map(|l| l.as_char()).collect()
}

/// The irrational part of a [`Param`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Irrational {
    None,
    /// `sqrt(d)` with `d` squarefree and `d > 1`.
    Sqrt(u64),
    Pi,
}

/// A real number of the form `rational + coeff * xi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Param {
    rational: BigRational,
    coeff: BigRational,
    xi: Irrational,
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Param {
    pub fn rational(value: BigRational) -> Self {
        Self { rational: value, coeff: BigRational::zero(), xi: Irrational::None }
    }

    /// `offset + coeff * sqrt(radicand)`.
    pub fn sqrt(radicand: u64, coeff: BigRational, offset: BigRational) -> Self {
        let mut square = 1u64;
        let mut free = 1u64;
        for (p, e) in factorize(radicand) {
            square *= p.pow(e / 2);
            if e % 2 == 1 {
                free *= p;
            }
        }
        if radicand == 0 || coeff.is_zero() {
            return Self::rational(offset);
        }
        let coeff = coeff * BigRational::from_integer(square.into());
        if free == 1 {
            return Self::rational(offset + coeff);
        }
        Self { rational: offset, coeff, xi: Irrational::Sqrt(free) }
    }

    /// `coeff * pi`.
    pub fn pi_multiple(coeff: BigRational) -> Self {
        if coeff.is_zero() {
            return Self::rational(coeff);
        }
        Self { rational: BigRational::zero(), coeff, xi: Irrational::Pi }
    }

    /// `(sqrt(5) - 1) / 2`.
    pub fn golden_slope() -> Self {
        Self::sqrt(5, ratio(1, 2), ratio(-1, 2))
    }

    /// `sqrt(5) - 2`, the intercept paired with [`Param::golden_slope`].
    pub fn golden_intercept() -> Self {
        Self::sqrt(5, ratio(1, 1), ratio(-2, 1))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        (self.xi == Irrational::None).then_some(&self.rational)
    }

    /// Interval enclosure at `scale` fractional bits.
    pub fn enclose(&self, scale: u32) -> CertifiedReal {
        let work = scale + 16;
        let rat = |r: &BigRational| CertifiedReal::from_ratio(r.numer(), r.denom(), work);
        let base = rat(&self.rational);
        let value = match self.xi {
            Irrational::None => base,
            Irrational::Sqrt(d) => base.add(&sqrt_uint(&BigUint::from(d), work).mul(&rat(&self.coeff))),
            Irrational::Pi => base.add(&pi(work).mul(&rat(&self.coeff))),
        };
        value.rescale(scale)
    }

    pub fn to_f64(&self) -> f64 {
        self.enclose(64).to_f64()
    }

    /// Whether `self + m * other` is an integer, decided exactly.
    fn combination_is_integer(&self, other: &Self, m: &BigInt) -> bool {
        let m = BigRational::from_integer(m.clone());
        let irrational_zero = match (self.xi, other.xi) {
            (Irrational::None, Irrational::None) => true,
            (Irrational::None, _) => m.is_zero(),
            (_, Irrational::None) => false,
            (x, y) if x == y => (&self.coeff + &other.coeff * &m).is_zero(),
            // distinct squarefree radicands and pi are linearly independent over Q
            _ => false,
        };
        irrational_zero && (&self.rational + &other.rational * &m).is_integer()
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        return (!d.is_zero()).then(|| BigRational::new(n, d));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("0{int}{frac}").parse().ok()?;
    let den = num_traits::pow(BigInt::from(10), frac.len());
    let r = BigRational::new(digits, den);
    Some(if neg { -r } else { r })
}

impl FromStr for Param {
    type Err = Error;

    /// Accepts `fib`, `fibphi`, `sqrtD`, `sqrtD/Q`, `pi`, `pi/Q`, `P/Q` and
    /// decimal literals.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        let bad = || Error::InvalidInput(format!("cannot parse parameter {s:?}"));
        let denom = |rest: &str| -> Result<BigRational> {
            if rest.is_empty() {
                return Ok(BigRational::one());
            }
            let q: i64 = rest.strip_prefix('/').and_then(|q| q.parse().ok()).ok_or_else(bad)?;
            if q == 0 {
                return Err(bad());
            }
            Ok(ratio(1, q))
        };
        match t.as_str() {
            "fib" | "golden" => return Ok(Self::golden_slope()),
            "fibphi" => return Ok(Self::golden_intercept()),
            _ => {}
        }
        if let Some(rest) = t.strip_prefix("sqrt") {
            let end = rest.find('/').unwrap_or(rest.len());
            let d: u64 = rest[..end].parse().map_err(|_| bad())?;
            return Ok(Self::sqrt(d, denom(&rest[end..])?, BigRational::zero()));
        }
        if let Some(rest) = t.strip_prefix("pi") {
            return Ok(Self::pi_multiple(denom(rest)?));
        }
        parse_rational(&t).map(Self::rational).ok_or_else(bad)
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let xi = match self.xi {
            Irrational::None => return write!(f, "{}", self.rational),
            Irrational::Sqrt(d) => format!("sqrt{d}"),
            Irrational::Pi => "pi".to_string(),
        };
        if !self.rational.is_zero() {
            write!(f, "{} + ", self.rational)?;
        }
        if self.coeff.is_one() {
            write!(f, "{xi}")
        } else {
            write!(f, "{}*{xi}", self.coeff)
        }
    }
}

/// 128-bit fixed-point enclosures `[lo, lo + width] / 2^128`.
#[derive(Debug, Clone, Copy)]
struct Fixed {
    theta: u128,
    theta_width: u128,
    phi: u128,
    phi_width: u128,
}

impl Fixed {
    fn new(theta: &Param, phi: &Param) -> Option<Self> {
        let t = theta.enclose(128);
        let p = phi.enclose(128);
        let get = |x: &BigInt| x.to_u128();
        let (tl, tu) = (get(t.lower_scaled())?, get(t.upper_scaled())?);
        let (pl, pu) = (get(p.lower_scaled())?, get(p.upper_scaled())?);
        Some(Self { theta: tl, theta_width: tu - tl, phi: pl, phi_width: pu - pl })
    }

    /// Letter for the orbit point `k = n - 1`, if the margin allows.
    fn decide(&self, x: u128, err: Option<u128>) -> Option<Letter> {
        let hi = x.checked_add(err?)?;
        if hi < self.theta {
            Some(Letter::A)
        } else if x >= self.theta + self.theta_width {
            Some(Letter::B)
        } else {
            None
        }
    }

    fn letter(&self, n: u64) -> Option<Letter> {
        let k = (n - 1) as u128;
        let x = self.phi.wrapping_add(self.theta.wrapping_mul(k));
        let err = self.theta_width.checked_mul(k).and_then(|e| e.checked_add(self.phi_width));
        self.decide(x, err)
    }
}

/// A rotation word with letters indexed from 1.
#[derive(Debug, Clone)]
pub struct SturmianWord {
    theta: Param,
    phi: Param,
    precision_bits: u32,
    fixed: Option<Fixed>,
    exact: Option<(BigInt, BigInt, BigInt)>,
}

impl SturmianWord {
    /// Requires `0 < theta < 1` and `0 <= phi < 1`.
    pub fn new(theta: Param, phi: Param) -> Result<Self> {
        Self::with_precision(theta, phi, DEFAULT_PRECISION)
    }

    pub fn with_precision(theta: Param, phi: Param, precision_bits: u32) -> Result<Self> {
        if precision_bits < 32 {
            return Err(Error::InvalidInput(format!("precision must be at least 32 bits, got {precision_bits}")));
        }
        let zero = BigRational::zero();
        let one = BigRational::one();
        let t = theta.enclose(precision_bits.max(64));
        let p = phi.enclose(precision_bits.max(64));
        let theta_ok = match theta.as_rational() {
            Some(r) => *r > zero && *r < one,
            None => t.lower() > zero && t.upper() < one,
        };
        let phi_ok = match phi.as_rational() {
            Some(r) => *r >= zero && *r < one,
            None => p.lower() >= zero && p.upper() < one,
        };
        if !theta_ok {
            return Err(Error::InvalidInput(format!("theta must lie in (0, 1), got {theta}")));
        }
        if !phi_ok {
            return Err(Error::InvalidInput(format!("phi must lie in [0, 1), got {phi}")));
        }
        let exact = match (theta.as_rational(), phi.as_rational()) {
            (Some(t), Some(p)) => {
                let q = t.denom().lcm(p.denom());
                let tq = t.numer() * (&q / t.denom());
                let pq = p.numer() * (&q / p.denom());
                Some((tq, pq, q))
            }
            _ => None,
        };
        let fixed = if exact.is_none() { Fixed::new(&theta, &phi) } else { None };
        Ok(Self { theta, phi, precision_bits, fixed, exact })
    }

    /// `theta = sqrt(7)/7`, `phi = 1/5`.
    pub fn sqrt7_over_7() -> Self {
        Self::new(Param::sqrt(7, ratio(1, 7), BigRational::zero()), Param::rational(ratio(1, 5))).unwrap()
    }

    /// `theta = pi/8`, `phi = 1/5`.
    pub fn pi_over_8() -> Self {
        Self::new(Param::pi_multiple(ratio(1, 8)), Param::rational(ratio(1, 5))).unwrap()
    }

    /// The Fibonacci word `abaababaabaab...`, fixed by `a -> ab`, `b -> a`.
    pub fn fibonacci() -> Self {
        Self::new(Param::golden_slope(), Param::golden_intercept()).unwrap()
    }

    pub fn theta(&self) -> &Param {
        &self.theta
    }

    pub fn phi(&self) -> &Param {
        &self.phi
    }

    pub fn precision_bits(&self) -> u32 {
        self.precision_bits
    }

    /// Letter `n >= 1`.
    pub fn letter(&self, n: u64) -> Result<Letter> {
        if n == 0 {
            return Err(Error::InvalidInput("letters are indexed from 1".into()));
        }
        if let Some((t, p, q)) = &self.exact {
            let x = (p + t * BigInt::from(n - 1)).mod_floor(q);
            return Ok(if &x < t { Letter::A } else { Letter::B });
        }
        if let Some(l) = self.fixed.as_ref().and_then(|f| f.letter(n)) {
            return Ok(l);
        }
        self.letter_slow(n)
    }

    fn letter_slow(&self, n: u64) -> Result<Letter> {
        let k = BigInt::from(n - 1);
        if self.phi.combination_is_integer(&self.theta, &k) {
            return Ok(Letter::A);
        }
        if n >= 2 && self.phi.combination_is_integer(&self.theta, &(&k - 1)) {
            return Ok(Letter::B);
        }
        let mut scale = self.precision_bits.max(256);
        while scale <= PRECISION_CEILING {
            let extra = 64 - n.leading_zeros();
            let t = self.theta.enclose(scale + extra);
            let v = self.phi.enclose(scale + extra).add(&t.mul_int(&k));
            if let Some(f) = v.frac() {
                if f.upper_scaled() < t.lower_scaled() {
                    return Ok(Letter::A);
                }
                if f.lower_scaled() >= t.upper_scaled() {
                    return Ok(Letter::B);
                }
            }
            scale *= 2;
        }
        Err(Error::OrbitHitsBoundary(n))
    }

    /// Letters `1..=length`.
    pub fn prefix(&self, length: usize) -> Result<Vec<Letter>> {
        let mut out = Vec::with_capacity(length);
        if let Some((t, p, q)) = &self.exact {
            let mut x = p.clone();
            for _ in 0..length {
                out.push(if &x < t { Letter::A } else { Letter::B });
                x += t;
                if &x >= q {
                    x -= q;
                }
            }
            return Ok(out);
        }
        let Some(fx) = self.fixed else {
            return (1..=length as u64).map(|n| self.letter_slow(n)).collect();
        };
        let mut x = fx.phi;
        let mut err = Some(fx.phi_width);
        for n in 1..=length as u64 {
            let l = match fx.decide(x, err) {
                Some(l) => l,
                None => self.letter_slow(n)?,
            };
            out.push(l);
            x = x.wrapping_add(fx.theta);
            err = err.and_then(|e| e.checked_add(fx.theta_width));
        }
        Ok(out)
    }

    pub fn prefix_string(&self, length: usize) -> Result<String> {
        Ok(letters_to_string(&self.prefix(length)?))
    }

    pub fn complexity(&self, max_n: usize, sample_length: usize) -> Result<Vec<(usize, usize)>> {
        Ok(complexity(&self.prefix(sample_length)?, max_n))
    }

    pub fn odd_even_curve(&self, steps: usize) -> Result<PlanarPath> {
        Ok(odd_even_curve(&self.prefix(steps)?))
    }

    pub fn parity_profile(&self, n: u64) -> Result<ParityProfile> {
        parity_profile(&self.prefix(n as usize)?, n)
    }

    pub fn parity_walk(&self, steps: usize, mirror: bool, exec: Exec) -> Result<PlanarPath> {
        let letters = self.prefix(steps)?;
        Ok(parity_walk(&parity_differences(&letters, steps, exec), mirror))
    }

    pub fn density(&self, sample: usize) -> Result<Ratio<u64>> {
        density(&self.prefix(sample)?)
    }

    pub fn mollified_average(&self, x: u64, weight: Weight, exec: Exec) -> Result<MollifiedAverage> {
        mollified_average(&self.prefix(x as usize)?, x, weight, exec)
    }
}

/// Number of distinct factors of each length `1..=max_n`.
pub fn complexity(letters: &[Letter], max_n: usize) -> Vec<(usize, usize)> {
    (1..=max_n)
        .map(|n| {
            let seen: HashSet<&[Letter]> = letters.windows(n).collect();
            (n, seen.len())
        })
        .collect()
}

/// Lattice path starting at the origin, with flagged point indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlanarPath {
    pub points: Vec<(i64, i64)>,
    pub marks: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Turn {
    None,
    Left,
    Right,
}

struct Turtle {
    pos: (i64, i64),
    heading: (i64, i64),
}

impl Turtle {
    fn new() -> Self {
        Self { pos: (0, 0), heading: (0, 1) }
    }

    fn step(&mut self, turn: Turn) -> (i64, i64) {
        self.pos = (self.pos.0 + self.heading.0, self.pos.1 + self.heading.1);
        let (dx, dy) = self.heading;
        self.heading = match turn {
            Turn::None => (dx, dy),
            Turn::Left => (-dy, dx),
            Turn::Right => (dy, -dx),
        };
        self.pos
    }
}

impl PlanarPath {
    /// Starts at the origin and every step moves one unit along an axis.
    pub fn is_valid(&self) -> bool {
        self.points.first() == Some(&(0, 0))
            && self
                .points
                .windows(2)
                .all(|w| (w[0].0 - w[1].0).abs() + (w[0].1 - w[1].1).abs() == 1)
            && self.marks.iter().all(|&m| m < self.points.len())
    }

    /// Canonical text form, one point per line followed by the marks.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (x, y) in &self.points {
            let _ = writeln!(s, "{x},{y}");
        }
        for m in &self.marks {
            let _ = writeln!(s, "mark {m}");
        }
        s
    }

    pub fn to_svg(&self, style: &SvgStyle) -> String {
        let u = style.unit.max(1) as i64;
        let xs = self.points.iter().map(|p| p.0);
        let ys = self.points.iter().map(|p| -p.1);
        let (min_x, max_x) = (xs.clone().min().unwrap_or(0), xs.max().unwrap_or(0));
        let (min_y, max_y) = (ys.clone().min().unwrap_or(0), ys.max().unwrap_or(0));
        let vx = (min_x - 1) * u;
        let vy = (min_y - 1) * u;
        let w = (max_x - min_x + 2) * u;
        let h = (max_y - min_y + 2) * u;
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{vx} {vy} {w} {h}" width="{w}" height="{h}">"#
        );
        let pts: Vec<String> = self.points.iter().map(|(x, y)| format!("{},{}", x * u, -y * u)).collect();
        let _ = writeln!(
            s,
            r#"<polyline fill="none" stroke="{}" stroke-width="{}" points="{}"/>"#,
            style.stroke,
            style.stroke_width,
            pts.join(" ")
        );
        let r = (u as f64 / 4.0).max(0.5);
        for &m in &self.marks {
            let (x, y) = self.points[m];
            let _ = writeln!(s, r#"<circle cx="{}" cy="{}" r="{r}" fill="{}"/>"#, x * u, -y * u, style.mark_color);
        }
        s.push_str("</svg>\n");
        s
    }
}

#[derive(Debug, Clone)]
pub struct SvgStyle {
    pub unit: u32,
    pub stroke: String,
    pub stroke_width: f64,
    pub mark_color: String,
}

impl Default for SvgStyle {
    fn default() -> Self {
        Self { unit: 4, stroke: "black".into(), stroke_width: 1.0, mark_color: "red".into() }
    }
}

/// Turtle drawing: `a` goes straight; `b` at even index turns left after the
/// step, at odd index right.
pub fn odd_even_curve(letters: &[Letter]) -> PlanarPath {
    let mut t = Turtle::new();
    let mut points = Vec::with_capacity(letters.len() + 1);
    points.push(t.pos);
    for (i, &l) in letters.iter().enumerate() {
        let n = i + 1;
        let turn = match l {
            Letter::A => Turn::None,
            Letter::B if n % 2 == 0 => Turn::Left,
            Letter::B => Turn::Right,
        };
        points.push(t.step(turn));
    }
    PlanarPath { points, marks: Vec::new() }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ParityProfile {
    pub n: u64,
    pub o: u64,
    pub e: u64,
    pub d: i64,
}

/// Counts divisors `j` of `n` with letter `b`, split by the parity of `n / j`.
pub fn parity_profile(letters: &[Letter], n: u64) -> Result<ParityProfile> {
    if n == 0 || n as usize > letters.len() {
        return Err(Error::InvalidInput(format!("need 1 <= n <= {}, got {n}", letters.len())));
    }
    let (mut o, mut e) = (0, 0);
    let mut j = 1;
    while j * j <= n {
        if n.is_multiple_of(j) {
            for d in [j, n / j] {
                if letters[d as usize - 1].is_b() {
                    if (n / d) % 2 == 1 {
                        o += 1;
                    } else {
                        e += 1;
                    }
                }
                if j * j == n {
                    break;
                }
            }
        }
        j += 1;
    }
    Ok(ParityProfile { n, o, e, d: o as i64 - e as i64 })
}

/// `D(n)` for `n = 1..=x` (index `n - 1`), by sweeping multiples of each
/// `b`-position.
pub fn parity_differences(letters: &[Letter], x: usize, exec: Exec) -> Vec<i32> {
    let x = x.min(letters.len());
    if x == 0 {
        return Vec::new();
    }
    // bounded per-worker scratch: about 256 MiB in total
    let cap = ((1usize << 26) / (x + 1)).max(1);
    let workers = exec.default_chunks().min(cap).max(1);
    let partials = exec.map_range(0..workers as u64, |w| {
        let mut acc = vec![0i32; x + 1];
        let mut j = w as usize + 1;
        while j <= x {
            if letters[j - 1].is_b() {
                let mut n = j;
                let mut sign = 1;
                while n <= x {
                    acc[n] += sign;
                    sign = -sign;
                    n += j;
                }
            }
            j += workers;
        }
        acc
    });
    let mut total = vec![0i32; x + 1];
    for p in partials {
        for (t, v) in total.iter_mut().zip(p) {
            *t += v;
        }
    }
    total.remove(0);
    total
}

/// Steps forward once per value, then turns left on positive, right on
/// negative, and marks the point on zero. `mirror` swaps the turns.
pub fn parity_walk(differences: &[i32], mirror: bool) -> PlanarPath {
    let mut t = Turtle::new();
    let mut points = Vec::with_capacity(differences.len() + 1);
    let mut marks = Vec::new();
    points.push(t.pos);
    for (i, &d) in differences.iter().enumerate() {
        let turn = match (d.signum(), mirror) {
            (0, _) => Turn::None,
            (1, false) | (-1, true) => Turn::Left,
            _ => Turn::Right,
        };
        points.push(t.step(turn));
        if d == 0 {
            marks.push(i + 1);
        }
    }
    PlanarPath { points, marks }
}

/// Proportion of `b` letters.
pub fn density(letters: &[Letter]) -> Result<Ratio<u64>> {
    if letters.is_empty() {
        return Err(Error::InvalidInput("density of an empty prefix".into()));
    }
    let bs = letters.iter().filter(|l| l.is_b()).count() as u64;
    Ok(Ratio::new(bs, letters.len() as u64))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Weight {
    /// `1 - n/x`
    Riesz,
    /// `1 - x/n`
    Literal,
}

impl FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "riesz" => Ok(Weight::Riesz),
            "literal" => Ok(Weight::Literal),
            _ => Err(Error::InvalidInput(format!("unknown weight {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MollifiedAverage {
    pub x: u64,
    pub weight: Weight,
    pub value: f64,
    /// Exact value as `num/den`, available for the Riesz weight.
    pub exact: Option<String>,
    pub slope: f64,
    pub beta: f64,
    /// `beta * ln(2) / 2`.
    pub predicted_slope: f64,
}

/// Weighted sum of `D(n)` over `n = 1..=x`.
pub fn mollified_average(letters: &[Letter], x: u64, weight: Weight, exec: Exec) -> Result<MollifiedAverage> {
    if x == 0 || x as usize > letters.len() {
        return Err(Error::InvalidInput(format!("need 1 <= x <= {}, got {x}", letters.len())));
    }
    let d = parity_differences(letters, x as usize, exec);
    let beta_r = density(&letters[..x as usize])?;
    let beta = *beta_r.numer() as f64 / *beta_r.denom() as f64;
    let (value, exact) = match weight {
        Weight::Riesz => {
            let s0: i128 = d.iter().map(|&v| v as i128).sum();
            let s1: i128 = d.iter().enumerate().map(|(i, &v)| (i as i128 + 1) * v as i128).sum();
            let r = Ratio::new(s0 * x as i128 - s1, x as i128);
            let v = *r.numer() as f64 / *r.denom() as f64;
            (v, Some(format!("{}/{}", r.numer(), r.denom())))
        }
        Weight::Literal => {
            let s0: i64 = d.iter().map(|&v| v as i64).sum();
            let mut sum = 0.0f64;
            let mut comp = 0.0f64;
            for (i, &v) in d.iter().enumerate() {
                // Kahan summation of D(n)/n
                let y = v as f64 / (i + 1) as f64 - comp;
                let t = sum + y;
                comp = (t - sum) - y;
                sum = t;
            }
            (s0 as f64 - x as f64 * sum, None)
        }
    };
    Ok(MollifiedAverage {
        x,
        weight,
        value,
        exact,
        slope: value / x as f64,
        beta,
        predicted_slope: predicted_slope(beta),
    })
}

/// `beta * ln(2) / 2`.
pub fn predicted_slope(beta: f64) -> f64 {
    beta * ln2(64).to_f64() / 2.0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(theta: &str, phi: &str) -> SturmianWord {
        SturmianWord::new(theta.parse().unwrap(), phi.parse().unwrap()).unwrap()
    }

    #[test]
    fn printed_prefixes() {
        assert_eq!(
            SturmianWord::sqrt7_over_7().prefix_string(34).unwrap(),
            "abbababbabbababbababbabbababbabbab"
        );
        assert_eq!(
            SturmianWord::pi_over_8().prefix_string(34).unwrap(),
            "abbababbababbababbababbababbabbaba"
        );
        assert_eq!(word("sqrt7/7", "0.2").prefix_string(34).unwrap(), SturmianWord::sqrt7_over_7().prefix_string(34).unwrap());
    }

    #[test]
    fn rational_rotation() {
        assert_eq!(word("0.9", "0").prefix_string(3).unwrap(), "aba");
        assert_eq!(word("1/2", "0").prefix_string(6).unwrap(), "ababab");
    }

    #[test]
    fn fibonacci_preset() {
        assert_eq!(SturmianWord::fibonacci().prefix_string(13).unwrap(), "abaababaabaab");
    }

    #[test]
    fn slow_path_agrees() {
        let w = SturmianWord::pi_over_8();
        let prefix = w.prefix(300).unwrap();
        for n in 1..=300u64 {
            assert_eq!(w.letter_slow(n).unwrap(), prefix[n as usize - 1]);
            assert_eq!(w.letter(n).unwrap(), prefix[n as usize - 1]);
        }
    }

    #[test]
    fn exact_boundary_hits() {
        // phi + theta = 1, so the second orbit point is exactly 0
        let theta = Param::sqrt(2, ratio(1, 1), ratio(-1, 1));
        let phi = Param::sqrt(2, ratio(-1, 1), ratio(2, 1));
        let w = SturmianWord::new(theta, phi).unwrap();
        assert_eq!(w.letter(2).unwrap(), Letter::A);
        // phi = 0: the first point is 0 and the second equals theta
        let w = word("sqrt2/2", "0");
        assert_eq!(w.prefix_string(2).unwrap(), "ab");
    }

    #[test]
    fn parsing() {
        assert_eq!("0.25".parse::<Param>().unwrap(), Param::rational(ratio(1, 4)));
        assert_eq!("sqrt8/4".parse::<Param>().unwrap(), Param::sqrt(2, ratio(1, 2), BigRational::zero()));
        assert_eq!("sqrt9/6".parse::<Param>().unwrap(), Param::rational(ratio(1, 2)));
        assert!("pi/8".parse::<Param>().is_ok());
        assert!("sqrtx".parse::<Param>().is_err());
        assert!("".parse::<Param>().is_err());
        assert!(SturmianWord::new("pi/2".parse().unwrap(), Param::rational(ratio(0, 1))).is_err());
        assert!(SturmianWord::new("0.5".parse().unwrap(), Param::rational(ratio(1, 1))).is_err());
    }

    #[test]
    fn complexity_of_printed_words() {
        for w in [SturmianWord::sqrt7_over_7(), SturmianWord::pi_over_8()] {
            let letters = w.prefix(34).unwrap();
            let c = complexity(&letters, 2);
            assert_eq!(c, vec![(1, 2), (2, 3)]);
            assert!(!letters.windows(2).any(|p| p == [Letter::A, Letter::A]));
        }
        let c = SturmianWord::sqrt7_over_7().complexity(12, 100_000).unwrap();
        assert!(c.iter().all(|&(n, p)| p == n + 1));
    }

    #[test]
    fn curve_rules() {
        let ab = letters_from_str("ab").unwrap();
        let p = odd_even_curve(&ab);
        assert_eq!(p.points, vec![(0, 0), (0, 1), (0, 2)]);
        let all_a = letters_from_str("aaaaa").unwrap();
        let p = odd_even_curve(&all_a);
        assert_eq!(p.points.len(), 6);
        assert!(p.points.iter().all(|q| q.0 == 0));
        assert!(SturmianWord::sqrt7_over_7().odd_even_curve(1000).unwrap().is_valid());
    }

    #[test]
    fn profiles() {
        let w = letters_from_str("abbaabbbaaba").unwrap();
        assert_eq!(parity_profile(&w, 8).unwrap(), ParityProfile { n: 8, o: 1, e: 1, d: 0 });
        assert_eq!(parity_profile(&w, 9).unwrap(), ParityProfile { n: 9, o: 1, e: 0, d: 1 });
        assert_eq!(parity_profile(&w, 1).unwrap(), ParityProfile { n: 1, o: 0, e: 0, d: 0 });
        let d = parity_differences(&w, 12, Exec::Sequential);
        for n in 1..=12u64 {
            assert_eq!(d[n as usize - 1] as i64, parity_profile(&w, n).unwrap().d);
        }
    }

    #[test]
    fn walk_rules() {
        let all_a = letters_from_str("aaaa").unwrap();
        let p = parity_walk(&parity_differences(&all_a, 4, Exec::Sequential), false);
        assert_eq!(p.marks, vec![1, 2, 3, 4]);
        assert!(p.points.iter().all(|q| q.0 == 0));
        let w = SturmianWord::sqrt7_over_7();
        let p = w.parity_walk(2000, false, Exec::Parallel).unwrap();
        let m = w.parity_walk(2000, true, Exec::Sequential).unwrap();
        assert!(p.is_valid() && m.is_valid());
        assert_eq!(p.marks, m.marks);
        // mirroring reflects the walk across the vertical axis
        assert!(p.points.iter().zip(&m.points).all(|(a, b)| a.0 == -b.0 && a.1 == b.1));
    }

    #[test]
    fn densities() {
        assert_eq!(density(&letters_from_str("aaa").unwrap()).unwrap(), Ratio::new(0, 1));
        let d = SturmianWord::sqrt7_over_7().density(100_000).unwrap();
        let d = *d.numer() as f64 / *d.denom() as f64;
        assert!((d - (1.0 - 7f64.sqrt() / 7.0)).abs() < 1e-3);
    }

    #[test]
    fn mollified() {
        let w = SturmianWord::sqrt7_over_7();
        let m = w.mollified_average(1, Weight::Riesz, Exec::Sequential).unwrap();
        assert_eq!(m.value, 0.0);
        let m = w.mollified_average(20_000, Weight::Riesz, Exec::Parallel).unwrap();
        assert!(m.slope > 0.0);
        let l = w.mollified_average(20_000, Weight::Literal, Exec::Parallel).unwrap();
        assert!(l.exact.is_none());
    }

    #[test]
    fn svg_shape() {
        let p = parity_walk(&[0, 1, -1], false);
        let svg = p.to_svg(&SvgStyle::default());
        assert_eq!(svg.matches("<polyline").count(), 1);
        assert_eq!(svg.matches("<circle").count(), 1);
        assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
    }
}
