//! Exact coefficient arithmetic: Gaussian rationals and multivariate
//! polynomials over them.
//!
//! Every scalar in the engine lives in `Q(i)[h, c0..c3, l, mu, nu, t, a, b, m,
//! p4, p5, p6]`. The indeterminate registry is fixed for the whole process so
//! that monomials are dense exponent vectors with one canonical ordering;
//! equality of polynomials is then literal equality of term lists and needs no
//! tolerance.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Number of registered indeterminates.
pub const NVARS: usize = 15;

const VAR_NAMES: [&str; NVARS] = [
    "h", "c0", "c1", "c2", "c3", "l", "mu", "nu", "t", "a", "b", "m", "p4", "p5", "p6",
];

/// The fixed indeterminate registry.
///
/// `H` is the contraction parameter, `C0..C3` the infinitesimal deformation
/// parameters, `Lambda`/`Mu`/`Nu` the universal-deformation parameters, `T` a
/// spare formal parameter for equivalence experiments, `A`/`B`/`M` the formal
/// Fourier modes, and `P4..P6` the solve-for unknowns of the obstruction
/// computation.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Var {
    H = 0,
    C0,
    C1,
    C2,
    C3,
    Lambda,
    Mu,
    Nu,
    T,
    A,
    B,
    M,
    P4,
    P5,
    P6,
}

impl Var {
    pub const ALL: [Var; NVARS] = [
        Var::H,
        Var::C0,
        Var::C1,
        Var::C2,
        Var::C3,
        Var::Lambda,
        Var::Mu,
        Var::Nu,
        Var::T,
        Var::A,
        Var::B,
        Var::M,
        Var::P4,
        Var::P5,
        Var::P6,
    ];

    pub fn name(self) -> &'static str {
        VAR_NAMES[self as usize]
    }

    pub fn from_name(name: &str) -> Option<Var> {
        let canonical = match name {
            "lambda" => "l",
            other => other,
        };
        Var::ALL.iter().copied().find(|v| v.name() == canonical)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn big(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// An element of Q(i), stored as reduced real and imaginary rational parts.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn zero() -> Self {
        GaussianRational {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }

    pub fn one() -> Self {
        GaussianRational {
            re: BigRational::one(),
            im: BigRational::zero(),
        }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussianRational {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        GaussianRational {
            re: big(n),
            im: BigRational::zero(),
        }
    }

    /// `n/d` as a real rational. Panics if `d == 0`.
    pub fn ratio(n: i64, d: i64) -> Self {
        GaussianRational {
            re: BigRational::new(BigInt::from(n), BigInt::from(d)),
            im: BigRational::zero(),
        }
    }

    /// `(rn/rd) + (in_/id)*i`.
    pub fn complex(rn: i64, rd: i64, in_: i64, id: i64) -> Self {
        GaussianRational {
            re: BigRational::new(BigInt::from(rn), BigInt::from(rd)),
            im: BigRational::new(BigInt::from(in_), BigInt::from(id)),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Self {
        let norm = &self.re * &self.re + &self.im * &self.im;
        assert!(!norm.is_zero(), "division by zero GaussianRational");
        GaussianRational {
            re: &self.re / &norm,
            im: -(&self.im / &norm),
        }
    }

    fn mul_ref(&self, other: &Self) -> Self {
        GaussianRational {
            re: &self.re * &other.re - &self.im * &other.im,
            im: &self.re * &other.im + &self.im * &other.re,
        }
    }

    fn add_ref(&self, other: &Self) -> Self {
        GaussianRational {
            re: &self.re + &other.re,
            im: &self.im + &other.im,
        }
    }
}

impl Add for GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: Self) -> Self {
        self.add_ref(&rhs)
    }
}

impl Sub for GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: Self) -> Self {
        GaussianRational {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }
}

impl Mul for GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: Self) -> Self {
        self.mul_ref(&rhs)
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> Self {
        GaussianRational {
            re: -self.re,
            im: -self.im,
        }
    }
}

fn render_ratio(r: &BigRational) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        if self.im.is_zero() {
            return f.write_str(&render_ratio(&self.re));
        }
        let imag = if self.im.abs().is_one() {
            "i".to_string()
        } else {
            format!("{}*i", render_ratio(&self.im.abs()))
        };
        if self.re.is_zero() {
            if self.im.is_negative() {
                return write!(f, "-{imag}");
            }
            return f.write_str(&imag);
        }
        let sign = if self.im.is_negative() { "-" } else { "+" };
        write!(f, "{}{}{}", render_ratio(&self.re), sign, imag)
    }
}

/// A dense exponent vector over the registry, ordered graded-lexicographically.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub [u16; NVARS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; NVARS])
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0; NVARS];
        e[v as usize] = 1;
        Monomial(e)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn exponent(&self, v: Var) -> u16 {
        self.0[v as usize]
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut e = [0; NVARS];
        for (slot, (a, b)) in e.iter_mut().zip(self.0.iter().zip(&other.0)) {
            *slot = a.checked_add(*b).expect("monomial exponent overflow");
        }
        Monomial(e)
    }

    pub fn divides(&self, other: &Self) -> bool {
        (0..NVARS).all(|k| self.0[k] <= other.0[k])
    }

    /// `other / self`; caller must ensure divisibility.
    pub fn quotient_into(&self, other: &Self) -> Self {
        let mut e = [0; NVARS];
        for (slot, (a, b)) in e.iter_mut().zip(other.0.iter().zip(&self.0)) {
            *slot = a - b;
        }
        Monomial(e)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            // lex tie-break: more of an earlier registry variable is larger
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// An exact multivariate polynomial over Q(i) in the registered indeterminates.
///
/// The representation is canonical: no stored coefficient is zero and the term
/// map is keyed by the graded-lexicographic monomial order, so equal
/// polynomials are structurally equal.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct PolyScalar {
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl PolyScalar {
    pub fn zero() -> Self {
        PolyScalar {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        PolyScalar::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        PolyScalar { terms }
    }

    pub fn from_int(n: i64) -> Self {
        PolyScalar::constant(GaussianRational::from_int(n))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        PolyScalar::constant(GaussianRational::ratio(n, d))
    }

    /// The imaginary unit as a constant polynomial.
    pub fn i() -> Self {
        PolyScalar::constant(GaussianRational::i())
    }

    pub fn var(v: Var) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(v), GaussianRational::one());
        PolyScalar { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Monomial::one())
                .is_some_and(GaussianRational::is_one)
    }

    /// Some(c) when the polynomial is the constant c (including zero).
    pub fn as_constant(&self) -> Option<GaussianRational> {
        match self.terms.len() {
            0 => Some(GaussianRational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn degree_in(&self, v: Var) -> u16 {
        self.terms
            .keys()
            .map(|mono| mono.exponent(v))
            .max()
            .unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(Monomial::total_degree)
            .max()
            .unwrap_or(0)
    }

    /// Leading (largest) monomial and coefficient in graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &GaussianRational)> {
        self.terms.iter().next_back()
    }

    fn insert_term(&mut self, mono: Monomial, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add_ref(&c);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return PolyScalar::zero();
        }
        let terms = self
            .terms
            .iter()
            .map(|(mono, k)| (*mono, k.mul_ref(c)))
            .collect();
        PolyScalar { terms }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = PolyScalar::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Simultaneous exact substitution of indeterminates by polynomials.
    pub fn substitute(&self, assignment: &BTreeMap<Var, PolyScalar>) -> Self {
        let mut out = PolyScalar::zero();
        for (mono, c) in &self.terms {
            let mut term = PolyScalar::constant(c.clone());
            let mut residual = Monomial::one();
            for v in Var::ALL {
                let e = mono.exponent(v);
                if e == 0 {
                    continue;
                }
                match assignment.get(&v) {
                    Some(p) => term = &term * &p.pow(e as u32),
                    None => residual.0[v as usize] = e,
                }
            }
            let shifted = PolyScalar {
                terms: term
                    .terms
                    .into_iter()
                    .map(|(m, c)| (m.mul(&residual), c))
                    .collect(),
            };
            out += &shifted;
        }
        out
    }

    /// Convenience: substitute a single indeterminate.
    pub fn subst(&self, v: Var, value: &PolyScalar) -> Self {
        let mut map = BTreeMap::new();
        map.insert(v, value.clone());
        self.substitute(&map)
    }

    /// Group terms by their exponents in `vars`, stripping those exponents.
    ///
    /// The returned key lists exponents in the order of `vars`.
    pub fn decompose_by(&self, vars: &[Var]) -> BTreeMap<Vec<u16>, PolyScalar> {
        let mut out: BTreeMap<Vec<u16>, PolyScalar> = BTreeMap::new();
        for (mono, c) in &self.terms {
            let key: Vec<u16> = vars.iter().map(|&v| mono.exponent(v)).collect();
            let mut stripped = *mono;
            for &v in vars {
                stripped.0[v as usize] = 0;
            }
            out.entry(key)
                .or_insert_with(PolyScalar::zero)
                .insert_term(stripped, c.clone());
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    /// The coefficient of `v^k`, as a polynomial in the remaining variables.
    pub fn coeff_of_power(&self, v: Var, k: u16) -> PolyScalar {
        let mut out = PolyScalar::zero();
        for (mono, c) in &self.terms {
            if mono.exponent(v) == k {
                let mut stripped = *mono;
                stripped.0[v as usize] = 0;
                out.insert_term(stripped, c.clone());
            }
        }
        out
    }

    /// Long division by a single polynomial along the graded-lex order.
    /// Returns `(quotient, remainder)` with `self = q*divisor + r` and no
    /// remainder term divisible by the divisor's leading monomial.
    pub fn div_rem(&self, divisor: &PolyScalar) -> (PolyScalar, PolyScalar) {
        let (lead_mono, lead_coeff) = divisor
            .leading()
            .map(|(m, c)| (*m, c.clone()))
            .expect("division by zero polynomial");
        let lead_inv = lead_coeff.inv();
        let mut rem = self.clone();
        let mut quot = PolyScalar::zero();
        loop {
            let target = rem
                .terms
                .iter()
                .rev()
                .find(|(mono, _)| lead_mono.divides(mono))
                .map(|(mono, c)| (*mono, c.clone()));
            let Some((mono, c)) = target else { break };
            let factor_mono = lead_mono.quotient_into(&mono);
            let factor = PolyScalar {
                terms: BTreeMap::from([(factor_mono, c.mul_ref(&lead_inv))]),
            };
            quot += &factor;
            rem -= &(&factor * divisor);
        }
        (quot, rem)
    }

    /// Exact division: `Some(self / divisor)` when the remainder vanishes.
    pub fn divide_exact(&self, divisor: &PolyScalar) -> Option<PolyScalar> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    /// Factor out the common monomial of all terms (e.g. an overall power of
    /// `h`), returning it together with the content-free polynomial.
    pub fn strip_monomial_content(&self) -> (Monomial, PolyScalar) {
        let Some(first) = self.terms.keys().next() else {
            return (Monomial::one(), PolyScalar::zero());
        };
        let mut content = *first;
        for mono in self.terms.keys() {
            for k in 0..NVARS {
                content.0[k] = content.0[k].min(mono.0[k]);
            }
        }
        let stripped = PolyScalar {
            terms: self
                .terms
                .iter()
                .map(|(mono, c)| (content.quotient_into(mono), c.clone()))
                .collect(),
        };
        (content, stripped)
    }

    /// Weighted degree check helper: true when every monomial has the given
    /// weight under the weight function `w`.
    pub fn is_weight_homogeneous(&self, weight: impl Fn(Var) -> u32, target: u32) -> bool {
        self.terms.keys().all(|mono| {
            Var::ALL
                .iter()
                .map(|&v| weight(v) * mono.exponent(v) as u32)
                .sum::<u32>()
                == target
        })
    }
}

impl Add for &PolyScalar {
    type Output = PolyScalar;
    fn add(self, rhs: &PolyScalar) -> PolyScalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &PolyScalar {
    type Output = PolyScalar;
    fn sub(self, rhs: &PolyScalar) -> PolyScalar {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &PolyScalar {
    type Output = PolyScalar;
    fn mul(self, rhs: &PolyScalar) -> PolyScalar {
        let mut out = PolyScalar::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.insert_term(m1.mul(m2), c1.mul_ref(c2));
            }
        }
        out
    }
}

impl Neg for &PolyScalar {
    type Output = PolyScalar;
    fn neg(self) -> PolyScalar {
        PolyScalar {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, c.clone().neg()))
                .collect(),
        }
    }
}

impl Add for PolyScalar {
    type Output = PolyScalar;
    fn add(self, rhs: PolyScalar) -> PolyScalar {
        &self + &rhs
    }
}

impl Sub for PolyScalar {
    type Output = PolyScalar;
    fn sub(self, rhs: PolyScalar) -> PolyScalar {
        &self - &rhs
    }
}

impl Mul for PolyScalar {
    type Output = PolyScalar;
    fn mul(self, rhs: PolyScalar) -> PolyScalar {
        &self * &rhs
    }
}

impl Neg for PolyScalar {
    type Output = PolyScalar;
    fn neg(self) -> PolyScalar {
        -&self
    }
}

impl AddAssign<&PolyScalar> for PolyScalar {
    fn add_assign(&mut self, rhs: &PolyScalar) {
        for (mono, c) in &rhs.terms {
            self.insert_term(*mono, c.clone());
        }
    }
}

impl SubAssign<&PolyScalar> for PolyScalar {
    fn sub_assign(&mut self, rhs: &PolyScalar) {
        for (mono, c) in &rhs.terms {
            self.insert_term(*mono, c.clone().neg());
        }
    }
}

impl MulAssign<&PolyScalar> for PolyScalar {
    fn mul_assign(&mut self, rhs: &PolyScalar) {
        *self = &*self * rhs;
    }
}

/// The h-falling binomial `x(x-h)(x-2h)...(x-(k-1)h) / k!`.
///
/// At `h = 1` this is the generalized binomial coefficient `C(x, k)`; the
/// h-twist keeps the coefficients of the dilation automorphism polynomial in
/// `h`.
pub fn hbinom(x: &PolyScalar, k: u32, h: &PolyScalar) -> PolyScalar {
    let mut num = PolyScalar::one();
    for j in 0..k {
        let shift = h.scale(&GaussianRational::from_int(j as i64));
        num = &num * &(x - &shift);
    }
    let mut kfact = GaussianRational::one();
    for j in 1..=k {
        kfact = kfact * GaussianRational::from_int(j as i64);
    }
    num.scale(&kfact.inv())
}

/// `p(p-1)...(p-k+1) / k!` for integer `p` (possibly negative): the
/// generalized binomial coefficient entering the composition formula.
pub fn binom_int(p: i64, k: u32) -> BigRational {
    let mut num = BigInt::one();
    for j in 0..k as i64 {
        num *= BigInt::from(p - j);
    }
    let mut den = BigInt::one();
    for j in 1..=k as i64 {
        den *= BigInt::from(j);
    }
    BigRational::new(num, den)
}

impl fmt::Display for PolyScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (mono, c) in self.terms.iter().rev() {
            let mono_str = {
                let mut parts = Vec::new();
                for v in Var::ALL {
                    let e = mono.exponent(v);
                    if e == 1 {
                        parts.push(v.name().to_string());
                    } else if e > 1 {
                        parts.push(format!("{}^{}", v.name(), e));
                    }
                }
                parts.join("*")
            };
            // (sign, magnitude) for sign-folded joining
            let (neg, body) = if c.is_real() {
                let mag = render_ratio(&c.re.abs());
                let body = if mono_str.is_empty() {
                    mag
                } else if c.re.abs().is_one() {
                    mono_str.clone()
                } else {
                    format!("{mag}*{mono_str}")
                };
                (c.re.is_negative(), body)
            } else if c.re.is_zero() {
                let mag = if c.im.abs().is_one() {
                    "i".to_string()
                } else {
                    format!("{}*i", render_ratio(&c.im.abs()))
                };
                let body = if mono_str.is_empty() {
                    mag
                } else {
                    format!("{mag}*{mono_str}")
                };
                (c.im.is_negative(), body)
            } else {
                let body = if mono_str.is_empty() {
                    format!("({c})")
                } else {
                    format!("({c})*{mono_str}")
                };
                (false, body)
            };
            if first {
                if neg {
                    f.write_str("-")?;
                }
                first = false;
            } else {
                f.write_str(if neg { "-" } else { "+" })?;
            }
            f.write_str(&body)?;
        }
        Ok(())
    }
}
