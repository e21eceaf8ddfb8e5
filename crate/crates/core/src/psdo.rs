//! The Lie algebra of truncated pseudodifferential symbols on the circle.
//!
//! A symbol is a formal Laurent series `F(x,ξ) = Σ f_k(x) ξ^k`, finite in
//! positive degrees. The associative product is the ordered composition
//!
//! ```text
//! F ∘_h G = Σ_{k≥0} (h^k / k!) : ∂_ξ^k F · ∂_x^k G :
//! ```
//!
//! whose `h = 1` case is the usual symbol composition and whose rescaled
//! commutator contracts to the Poisson bracket as `h -> 0` (Inönü–Wigner).
//! Because the sum over `k` is infinite whenever negative powers of ξ meet
//! x-dependent coefficients, a symbol carries an accuracy floor: the lowest
//! ξ-degree at which its coefficients are reliable. Two symbols are compared
//! only on their common accurate range.

use std::collections::BTreeMap;
use std::fmt;

use crate::circle::{CircleFunction, TensorDensity, VectorField};
use crate::error::{Error, Result};
use crate::scalars::{binom_int, GaussianRational, PolyScalar};

/// Working floor imposed when an operation on exact symbols would produce an
/// infinite tail. Deep enough for every computation in the engine with margin;
/// callers needing a different depth truncate their operands explicitly.
pub const DEFAULT_FLOOR: i32 = -10;

/// Accuracy floor of a symbol: `Exact` means every degree is reliable.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Floor {
    Exact,
    At(i32),
}

impl Floor {
    pub fn max(self, other: Floor) -> Floor {
        match (self, other) {
            (Floor::Exact, f) | (f, Floor::Exact) => f,
            (Floor::At(x), Floor::At(y)) => Floor::At(x.max(y)),
        }
    }

    pub fn shift(self, delta: i32) -> Floor {
        match self {
            Floor::Exact => Floor::Exact,
            Floor::At(w) => Floor::At(w + delta),
        }
    }

    /// True when the given degree is within the accurate range.
    pub fn admits(self, degree: i32) -> bool {
        match self {
            Floor::Exact => true,
            Floor::At(w) => degree >= w,
        }
    }
}

impl fmt::Display for Floor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Floor::Exact => f.write_str("exact"),
            Floor::At(w) => write!(f, "O(xi^<{w})"),
        }
    }
}

/// A truncated pseudodifferential symbol.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Symbol {
    floor: Floor,
    terms: BTreeMap<i32, CircleFunction>,
}

impl Symbol {
    pub fn zero() -> Self {
        Symbol {
            floor: Floor::Exact,
            terms: BTreeMap::new(),
        }
    }

    pub fn zero_truncated(floor: i32) -> Self {
        Symbol {
            floor: Floor::At(floor),
            terms: BTreeMap::new(),
        }
    }

    /// Build from terms, dropping zero coefficients and anything below floor.
    pub fn from_terms(
        floor: Floor,
        terms: impl IntoIterator<Item = (i32, CircleFunction)>,
    ) -> Self {
        let mut sym = Symbol {
            floor,
            terms: BTreeMap::new(),
        };
        for (d, f) in terms {
            sym.insert(d, f);
        }
        sym
    }

    /// A single term `f(x) ξ^d`, exact.
    pub fn monomial(degree: i32, coefficient: CircleFunction) -> Self {
        Symbol::from_terms(Floor::Exact, [(degree, coefficient)])
    }

    /// The canonical embedding of vector fields: `f∂ -> fξ`, exact.
    pub fn embed_vect(field: &VectorField) -> Self {
        Symbol::monomial(1, field.component().clone())
    }

    fn insert(&mut self, degree: i32, f: CircleFunction) {
        if f.is_zero() || !self.floor.admits(degree) {
            return;
        }
        match self.terms.entry(degree) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(f);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&f);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn floor(&self) -> Floor {
        self.floor
    }

    /// Highest stored degree; `None` for the symbol with no reliable terms.
    pub fn ord(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    /// Effective order for floor propagation: for a symbol with no stored
    /// terms the unknown tail still sits below the floor.
    fn eff_ord(&self) -> Option<i32> {
        self.ord().or(match self.floor {
            Floor::Exact => None,
            Floor::At(w) => Some(w - 1),
        })
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i32, &CircleFunction)> {
        self.terms.iter()
    }

    /// Coefficient at a degree; only meaningful on the accurate range.
    pub fn coefficient(&self, degree: i32) -> CircleFunction {
        self.terms
            .get(&degree)
            .cloned()
            .unwrap_or_else(CircleFunction::zero)
    }

    /// Zero on the accurate range.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Restrict the accuracy floor (drops terms below the new floor).
    pub fn truncated(&self, floor: i32) -> Symbol {
        let new_floor = self.floor.max(Floor::At(floor));
        Symbol::from_terms(new_floor, self.terms.clone())
    }

    /// Equality on the common accurate range.
    pub fn agrees_with(&self, other: &Symbol) -> bool {
        self.sub(other).is_zero()
    }

    pub fn add(&self, other: &Symbol) -> Symbol {
        let floor = self.floor.max(other.floor);
        let mut out = Symbol {
            floor,
            terms: BTreeMap::new(),
        };
        for (d, f) in &self.terms {
            out.insert(*d, f.clone());
        }
        for (d, f) in &other.terms {
            out.insert(*d, f.clone());
        }
        out
    }

    pub fn sub(&self, other: &Symbol) -> Symbol {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Symbol {
        Symbol {
            floor: self.floor,
            terms: self.terms.iter().map(|(d, f)| (*d, f.neg())).collect(),
        }
    }

    pub fn scale(&self, p: &PolyScalar) -> Symbol {
        Symbol::from_terms(self.floor, self.terms.iter().map(|(d, f)| (*d, f.scale(p))))
    }

    pub fn scale_rat(&self, c: &GaussianRational) -> Symbol {
        self.scale(&PolyScalar::constant(c.clone()))
    }

    /// ∂/∂x, termwise.
    pub fn derive_x(&self, order: u32) -> Symbol {
        Symbol::from_terms(
            self.floor,
            self.terms.iter().map(|(d, f)| (*d, f.derive(order))),
        )
    }

    /// Floor of `self ∘ other` by the pollution rule: the unknown tail of one
    /// operand composed with the known part of the other contaminates exactly
    /// the degrees below `floor + ord`.
    fn compose_floor(&self, other: &Symbol) -> Floor {
        let mut floor = Floor::Exact;
        if let Floor::At(w) = self.floor {
            // a missing eff_ord means the other operand is exactly zero
            if let Some(q) = other.eff_ord() {
                floor = floor.max(Floor::At(w + q));
            }
        }
        if let Floor::At(w) = other.floor {
            if let Some(p) = self.eff_ord() {
                floor = floor.max(Floor::At(w + p));
            }
        }
        if floor == Floor::Exact {
            // Both operands exact: the k-series terminates only if ∂_ξ kills
            // self (no negative degrees) or ∂_x kills other (x-free).
            let self_dies = self.min_degree().is_none_or(|d| d >= 0);
            let other_dies = other.terms.values().all(CircleFunction::is_x_free);
            if !(self_dies || other_dies) {
                floor = Floor::At(DEFAULT_FLOOR);
            }
        }
        floor
    }

    /// The contracted ordered composition `F ∘_h G`; `h = 1` is the plain
    /// symbol composition. `h` may be symbolic.
    pub fn compose_h(&self, other: &Symbol, h: &PolyScalar) -> Symbol {
        let floor = self.compose_floor(other);
        let mut out = Symbol {
            floor,
            terms: BTreeMap::new(),
        };
        let mut h_pow = PolyScalar::one();
        let mut k: u32 = 0;
        loop {
            let mut progressed = false;
            for (&p, fp) in &self.terms {
                let coeff = binom_int(p as i64, k);
                if coeff.numer() == &num_bigint::BigInt::from(0) {
                    continue;
                }
                for (&q, gq) in &other.terms {
                    let degree = p + q - k as i32;
                    if !out.floor.admits(degree) {
                        continue;
                    }
                    let gk = gq.derive(k);
                    if gk.is_zero() {
                        continue;
                    }
                    progressed = true;
                    let scalar = PolyScalar::constant(GaussianRational {
                        re: coeff.clone(),
                        im: Default::default(),
                    });
                    out.insert(degree, fp.mul(&gk).scale(&(&scalar * &h_pow)));
                }
            }
            // Termination: once k exceeds every (p + q - floor) bound, or the
            // ∂_ξ / ∂_x factors have died for every pair, nothing contributes.
            if k > 0 && !progressed {
                let exhausted = match out.floor {
                    Floor::At(w) => {
                        let p_max = self.ord().unwrap_or(w);
                        let q_max = other.ord().unwrap_or(w);
                        k as i64 > (p_max as i64 + q_max as i64 - w as i64).max(0)
                    }
                    Floor::Exact => true,
                };
                if exhausted {
                    break;
                }
            }
            if self.terms.is_empty() || other.terms.is_empty() {
                break;
            }
            k += 1;
            h_pow = &h_pow * h;
            if k > 4096 {
                unreachable!("composition series failed to terminate");
            }
        }
        out
    }

    /// Plain composition (`h = 1`).
    pub fn compose(&self, other: &Symbol) -> Symbol {
        self.compose_h(other, &PolyScalar::one())
    }

    /// `[F, G]_h = F ∘_h G - G ∘_h F`.
    pub fn bracket_h(&self, other: &Symbol, h: &PolyScalar) -> Symbol {
        self.compose_h(other, h).sub(&other.compose_h(self, h))
    }

    pub fn bracket(&self, other: &Symbol) -> Symbol {
        self.bracket_h(other, &PolyScalar::one())
    }

    /// The Poisson bracket `{F,G} = ∂_ξF ∂_xG - ∂_xF ∂_ξG` of principal
    /// symbol calculus.
    pub fn poisson(&self, other: &Symbol) -> Symbol {
        let floor = self.compose_floor(other).shift(-1);
        let mut out = Symbol {
            floor,
            terms: BTreeMap::new(),
        };
        for (&p, fp) in &self.terms {
            for (&q, gq) in &other.terms {
                let degree = p + q - 1;
                if !out.floor.admits(degree) {
                    continue;
                }
                let first = fp.mul(&gq.derive(1)).scale(&PolyScalar::from_int(p as i64));
                let second = fp.derive(1).mul(gq).scale(&PolyScalar::from_int(q as i64));
                out.insert(degree, first.sub(&second));
            }
        }
        out
    }

    /// The residue (coefficient of ξ^{-1}) and its Adler trace `∫ Res F dx`.
    pub fn residue_trace(&self) -> Result<(CircleFunction, PolyScalar)> {
        if !self.floor.admits(-1) {
            let Floor::At(w) = self.floor else {
                unreachable!()
            };
            return Err(Error::Accuracy {
                needed: -1,
                floor: w,
            });
        }
        let res = self.coefficient(-1);
        let trace = res.integral();
        Ok((res, trace))
    }

    /// Order and principal symbol, the latter as a tensor density of degree
    /// `-ord` under the graded module identification.
    pub fn order_principal(&self) -> Result<(i32, TensorDensity)> {
        let ord = self.ord().ok_or(Error::UndefinedOrder)?;
        let density = TensorDensity::new(-(ord as i64), self.coefficient(ord));
        Ok((ord, density))
    }

    /// The dilation `Φ_h(fξ^k) = h^k fξ^k` (or its inverse): the linear
    /// isomorphism realizing the contraction. The inverse, and any negative
    /// degree, require an invertible constant `h`.
    pub fn phi_h(&self, h: &PolyScalar, inverse: bool) -> Result<Symbol> {
        let const_h = h.as_constant();
        let needs_inverse = inverse || self.min_degree().is_some_and(|d| d < 0);
        let hc = match (needs_inverse, const_h) {
            (false, _) => None,
            (true, Some(c)) if !c.is_zero() => Some(c),
            (true, _) => {
                return Err(Error::Usage(
                    "dilation with negative powers needs a nonzero constant h".into(),
                ))
            }
        };
        let mut out = Symbol {
            floor: self.floor,
            terms: BTreeMap::new(),
        };
        for (&d, f) in &self.terms {
            let e = if inverse { -d } else { d };
            let factor = if e >= 0 {
                h.pow(e as u32)
            } else {
                PolyScalar::constant(hc.clone().unwrap().inv()).pow((-e) as u32)
            };
            out.insert(d, f.scale(&factor));
        }
        Ok(out)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(d, c)| match d {
                0 => format!("({c})"),
                1 => format!("({c})*xi"),
                _ => format!("({c})*xi^{d}"),
            })
            .collect();
        if let Floor::At(w) = self.floor {
            parts.push(format!("O(xi^<{w})"));
        }
        if parts.is_empty() {
            return f.write_str("0");
        }
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circle::ModeVector;
    use crate::scalars::Var;

    fn e(k: i32) -> CircleFunction {
        CircleFunction::exp(ModeVector::constant(k))
    }

    fn ea() -> CircleFunction {
        CircleFunction::exp(ModeVector::formal_a())
    }

    fn eb() -> CircleFunction {
        CircleFunction::exp(ModeVector::formal_b())
    }

    fn eab() -> CircleFunction {
        CircleFunction::exp(ModeVector {
            a: 1,
            b: 1,
            m: 0,
            k: 0,
        })
    }

    fn i_times(p: PolyScalar) -> PolyScalar {
        &PolyScalar::i() * &p
    }

    #[test]
    fn embedding_examples() {
        let lm = VectorField::ell(ModeVector::formal_m());
        let sym = Symbol::embed_vect(&lm);
        assert_eq!(sym.ord(), Some(1));
        assert_eq!(sym.floor(), Floor::Exact);
        assert!(Symbol::embed_vect(&VectorField::zero()).is_zero());
        let l0 = VectorField::ell(ModeVector::zero());
        assert_eq!(
            Symbol::embed_vect(&l0),
            Symbol::monomial(1, CircleFunction::one())
        );
    }

    #[test]
    fn compose_hand_expansion() {
        // (E_1 ξ)∘(E_1 ξ) = E_2 ξ^2 + i E_2 ξ, worked out from the k = 0, 1
        // terms of the composition formula
        let f = Symbol::monomial(1, e(1));
        let got = f.compose(&f);
        let expect =
            Symbol::from_terms(Floor::Exact, [(2, e(2)), (1, e(2).scale(&PolyScalar::i()))]);
        assert_eq!(got, expect);
        // ξ∘ξ = ξ^2
        let xi = Symbol::monomial(1, CircleFunction::one());
        assert_eq!(xi.compose(&xi), Symbol::monomial(2, CircleFunction::one()));
    }

    #[test]
    fn compose_h_keeps_h_in_the_contraction_slot() {
        // (E_1ξ)∘_h(E_1ξ) = E_2ξ^2 + i h E_2 ξ
        let f = Symbol::monomial(1, e(1));
        let h = PolyScalar::var(Var::H);
        let got = f.compose_h(&f, &h);
        let expect = Symbol::from_terms(
            Floor::Exact,
            [(2, e(2)), (1, e(2).scale(&i_times(h.clone())))],
        );
        assert_eq!(got, expect);
    }

    #[test]
    fn bracket_matches_field_bracket_under_embedding() {
        let la = VectorField::ell(ModeVector::formal_a());
        let lb = VectorField::ell(ModeVector::formal_b());
        let lhs = Symbol::embed_vect(&la).bracket(&Symbol::embed_vect(&lb));
        let rhs = Symbol::embed_vect(&la.bracket(&lb));
        assert_eq!(lhs, rhs);
        let factor = i_times(&PolyScalar::var(Var::B) - &PolyScalar::var(Var::A));
        assert_eq!(rhs, Symbol::monomial(1, eab().scale(&factor)));
        // [F, F]_h = 0
        let f = Symbol::from_terms(Floor::At(-4), [(1, ea()), (-2, eb())]);
        assert!(f.bracket_h(&f, &PolyScalar::var(Var::H)).is_zero());
    }

    #[test]
    fn bracket_with_negative_powers() {
        // [E_1ξ, E_{-1}ξ^{-1}] has leading term ξ^{-2}
        let f = Symbol::monomial(1, e(1));
        let g = Symbol::monomial(-1, e(-1));
        let br = f.truncated(-3).bracket(&g.truncated(-3));
        assert_eq!(br.coefficient(-2), CircleFunction::one());
        assert!(br.coefficient(-1).is_zero());
        assert!(br.coefficient(0).is_zero());
    }

    #[test]
    fn default_floor_kicks_in_for_infinite_tails() {
        let f = Symbol::monomial(-1, CircleFunction::one());
        let g = Symbol::monomial(1, e(1));
        let out = f.compose(&g);
        assert_eq!(out.floor(), Floor::At(DEFAULT_FLOOR));
    }

    #[test]
    fn poisson_examples() {
        let f = Symbol::embed_vect(&VectorField::ell(ModeVector::formal_a()));
        let g = Symbol::embed_vect(&VectorField::ell(ModeVector::formal_b()));
        let factor = i_times(&PolyScalar::var(Var::B) - &PolyScalar::var(Var::A));
        assert_eq!(f.poisson(&g), Symbol::monomial(1, eab().scale(&factor)));
        let xi = Symbol::monomial(1, CircleFunction::one());
        assert!(xi.poisson(&xi).is_zero());
        // {E_a ξ, E_b} = i b E_{a+b}
        let gb = Symbol::monomial(0, eb());
        let expect = Symbol::monomial(0, eab().scale(&i_times(PolyScalar::var(Var::B))));
        assert_eq!(f.poisson(&gb), expect);
    }

    #[test]
    fn contraction_to_poisson() {
        // [F,G]_h has no h^0 part and its h^1 part is {F,G}
        let h = PolyScalar::var(Var::H);
        let f = Symbol::from_terms(Floor::At(-5), [(2, ea()), (0, e(1))]);
        let g = Symbol::from_terms(Floor::At(-5), [(1, eb()), (-1, e(-1))]);
        let br = f.bracket_h(&g, &h);
        let pb = f.poisson(&g);
        for (&d, c) in br.terms() {
            for (v, poly) in c.terms() {
                let by_h = poly.decompose_by(&[Var::H]);
                assert!(!by_h.contains_key(&vec![0u16]), "h^0 part at xi^{d}");
                let h1 = by_h
                    .get(&vec![1u16])
                    .cloned()
                    .unwrap_or_else(PolyScalar::zero);
                assert_eq!(h1, pb.coefficient(d).coefficient(v), "h^1 part at xi^{d}");
            }
        }
        // and conversely every Poisson term shows up
        for (&d, c) in pb.terms() {
            for (v, poly) in c.terms() {
                let h1 = br.coefficient(d).coefficient(v).decompose_by(&[Var::H]);
                assert_eq!(
                    h1.get(&vec![1u16])
                        .cloned()
                        .unwrap_or_else(PolyScalar::zero),
                    poly.clone(),
                );
            }
        }
    }

    #[test]
    fn residue_and_trace() {
        let f = Symbol::from_terms(Floor::At(-3), [(-1, e(3)), (-2, CircleFunction::one())]);
        let (res, tr) = f.residue_trace().unwrap();
        assert_eq!(res, e(3));
        assert!(tr.is_zero());
        let g = Symbol::monomial(-1, CircleFunction::one());
        assert_eq!(g.residue_trace().unwrap().1, PolyScalar::one());
        // floor too shallow
        let shallow = Symbol::zero_truncated(0);
        assert!(matches!(
            shallow.residue_trace(),
            Err(Error::Accuracy {
                needed: -1,
                floor: 0
            })
        ));
    }

    #[test]
    fn trace_kills_commutators() {
        let f = Symbol::monomial(1, e(1));
        let g = Symbol::monomial(-1, e(-1));
        let br = f.truncated(-4).bracket(&g.truncated(-4));
        assert!(br.residue_trace().unwrap().1.is_zero());
    }

    #[test]
    fn order_and_principal_symbol() {
        let f = Symbol::monomial(2, e(1));
        let (ord, density) = f.order_principal().unwrap();
        assert_eq!(ord, 2);
        assert_eq!(density.degree, -2);
        assert_eq!(density.component, e(1));
        let g = Symbol::monomial(-3, ea());
        assert_eq!(g.order_principal().unwrap().0, -3);
        assert_eq!(g.order_principal().unwrap().1.degree, 3);
        let two_terms = Symbol::from_terms(Floor::Exact, [(1, e(1)), (1, e(2))]);
        assert_eq!(
            two_terms.order_principal().unwrap().1.component,
            e(1).add(&e(2))
        );
        assert!(matches!(
            Symbol::zero().order_principal(),
            Err(Error::UndefinedOrder)
        ));
    }

    #[test]
    fn dilation_examples() {
        let h = PolyScalar::var(Var::H);
        let f = Symbol::monomial(2, e(1));
        assert_eq!(f.phi_h(&h, false).unwrap(), f.scale(&h.pow(2)));
        let g = Symbol::monomial(0, ea());
        assert_eq!(g.phi_h(&h, false).unwrap(), g);
        let any = Symbol::from_terms(Floor::At(-2), [(1, ea()), (-1, eb())]);
        assert_eq!(any.phi_h(&PolyScalar::one(), false).unwrap(), any);
        // inverse with symbolic h is refused
        assert!(any.phi_h(&h, true).is_err());
        assert!(any.phi_h(&h, false).is_err()); // negative degree, symbolic h
    }

    #[test]
    fn compose_h_agrees_with_dilation_conjugation() {
        // independent route: F ∘_h G = Φ_h^{-1}(Φ_h F ∘ Φ_h G) at h = 2/3
        let h = PolyScalar::ratio(2, 3);
        let f = Symbol::from_terms(Floor::At(-5), [(1, ea()), (-1, e(1))]);
        let g = Symbol::from_terms(Floor::At(-5), [(2, eb()), (0, e(-1))]);
        let direct = f.compose_h(&g, &h);
        let conjugated = f
            .phi_h(&h, false)
            .unwrap()
            .compose(&g.phi_h(&h, false).unwrap())
            .phi_h(&h, true)
            .unwrap();
        assert!(direct.agrees_with(&conjugated));
    }

    #[test]
    fn filtration_bounds() {
        let f = Symbol::from_terms(Floor::At(-4), [(2, ea()), (1, e(1))]);
        let g = Symbol::from_terms(Floor::At(-4), [(1, eb())]);
        assert!(f.compose(&g).ord().unwrap() <= 3);
        assert!(f.poisson(&g).ord().unwrap() <= 2);
    }

    #[test]
    fn graded_action_is_lie_derivative() {
        // principal symbol of [fξ, F] is the Lie derivative of the principal
        // symbol of F, when the leading term survives
        use crate::circle::lie_derive;
        let x = VectorField::ell(ModeVector::formal_a());
        let f = Symbol::monomial(-2, eb());
        let br = Symbol::embed_vect(&x).bracket(&f.truncated(-6));
        let (ord, principal) = br.order_principal().unwrap();
        assert_eq!(ord, -2);
        let expected = lie_derive(&x, &f.order_principal().unwrap().1);
        assert_eq!(principal.component, expected.component);
        assert_eq!(principal.degree, expected.degree);
    }

    #[test]
    fn display_format() {
        let f = Symbol::from_terms(Floor::At(-2), [(1, ea()), (-1, e(2))]);
        assert_eq!(f.to_string(), "(E[a])*xi + (E[2])*xi^-1 + O(xi^<-2)");
        assert_eq!(Symbol::zero().to_string(), "0");
    }
}
