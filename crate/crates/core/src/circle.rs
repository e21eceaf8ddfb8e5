//! Functions on the circle as finite Fourier expansions with formal modes,
//! vector fields, tensor densities and the semidirect product elements.
//!
//! A statement "for all smooth f" becomes a polynomial identity by evaluating
//! on the formal exponential `E[a] = e^{iax}` whose mode `a` is an
//! indeterminate: the statement holds iff the mode polynomial vanishes.
//! Differentiation multiplies a mode by `i*(mode expression)`, and the circle
//! integral keeps only the zero mode (the 2*pi factor is absorbed into the
//! normalization `∫ e^{inx} dx := δ_{n,0}`).

use std::collections::BTreeMap;
use std::fmt;

use crate::scalars::{GaussianRational, PolyScalar, Var};

/// An integer combination of the formal mode symbols `a`, `b`, `m` and a
/// constant offset. `E[v]` denotes `e^{i<v>x}`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct ModeVector {
    pub a: i32,
    pub b: i32,
    pub m: i32,
    pub k: i32,
}

impl ModeVector {
    pub fn zero() -> Self {
        ModeVector::default()
    }

    pub fn constant(k: i32) -> Self {
        ModeVector {
            a: 0,
            b: 0,
            m: 0,
            k,
        }
    }

    pub fn formal_a() -> Self {
        ModeVector {
            a: 1,
            b: 0,
            m: 0,
            k: 0,
        }
    }

    pub fn formal_b() -> Self {
        ModeVector {
            a: 0,
            b: 1,
            m: 0,
            k: 0,
        }
    }

    pub fn formal_m() -> Self {
        ModeVector {
            a: 0,
            b: 0,
            m: 1,
            k: 0,
        }
    }

    pub fn is_zero(&self) -> bool {
        *self == ModeVector::zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        ModeVector {
            a: self.a + other.a,
            b: self.b + other.b,
            m: self.m + other.m,
            k: self.k + other.k,
        }
    }

    pub fn neg(&self) -> Self {
        ModeVector {
            a: -self.a,
            b: -self.b,
            m: -self.m,
            k: -self.k,
        }
    }

    /// The mode as a polynomial, e.g. `a + 2b - 1`.
    pub fn expr(&self) -> PolyScalar {
        let mut p = PolyScalar::from_int(self.k as i64);
        for (coeff, v) in [(self.a, Var::A), (self.b, Var::B), (self.m, Var::M)] {
            if coeff != 0 {
                p += &PolyScalar::var(v).scale(&GaussianRational::from_int(coeff as i64));
            }
        }
        p
    }
}

impl fmt::Display for ModeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (coeff, name) in [(self.a, "a"), (self.b, "b"), (self.m, "m")] {
            if coeff == 0 {
                continue;
            }
            if !out.is_empty() && coeff > 0 {
                out.push('+');
            }
            match coeff {
                1 => {}
                -1 => out.push('-'),
                c => out.push_str(&c.to_string()),
            }
            out.push_str(name);
        }
        if self.k != 0 {
            if !out.is_empty() && self.k > 0 {
                out.push('+');
            }
            out.push_str(&self.k.to_string());
        }
        f.write_str(&out)
    }
}

/// A finite Fourier expansion `Σ c_v E[v]` with polynomial coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct CircleFunction {
    terms: BTreeMap<ModeVector, PolyScalar>,
}

impl CircleFunction {
    pub fn zero() -> Self {
        CircleFunction {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        CircleFunction::exp(ModeVector::zero())
    }

    /// The pure exponential `E[v]`.
    pub fn exp(v: ModeVector) -> Self {
        CircleFunction::term(v, PolyScalar::one())
    }

    pub fn term(v: ModeVector, coeff: PolyScalar) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(v, coeff);
        }
        CircleFunction { terms }
    }

    pub fn constant(c: PolyScalar) -> Self {
        CircleFunction::term(ModeVector::zero(), c)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ModeVector, &PolyScalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, v: &ModeVector) -> PolyScalar {
        self.terms.get(v).cloned().unwrap_or_else(PolyScalar::zero)
    }

    /// True when no mode has x-dependence (only the zero mode is present).
    pub fn is_x_free(&self) -> bool {
        self.terms.keys().all(ModeVector::is_zero)
    }

    fn insert(&mut self, v: ModeVector, coeff: PolyScalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(v) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (v, c) in &other.terms {
            out.insert(*v, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (v, c) in &other.terms {
            out.insert(*v, -c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        CircleFunction {
            terms: self.terms.iter().map(|(v, c)| (*v, -c)).collect(),
        }
    }

    pub fn scale(&self, p: &PolyScalar) -> Self {
        let mut out = CircleFunction::zero();
        for (v, c) in &self.terms {
            out.insert(*v, c * p);
        }
        out
    }

    /// Pointwise product: mode convolution.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = CircleFunction::zero();
        for (v1, c1) in &self.terms {
            for (v2, c2) in &other.terms {
                out.insert(v1.add(v2), c1 * c2);
            }
        }
        out
    }

    /// The n-th derivative: mode `v` picks up the factor `(i*<v>)^n`.
    pub fn derive(&self, order: u32) -> Self {
        if order == 0 {
            return self.clone();
        }
        let mut out = CircleFunction::zero();
        for (v, c) in &self.terms {
            if v.is_zero() {
                continue;
            }
            let factor = (&PolyScalar::i() * &v.expr()).pow(order);
            out.insert(*v, c * &factor);
        }
        out
    }

    /// `∫ f dx` with `∫ e^{inx} dx := δ_{n,0}`: the zero-mode coefficient.
    /// A formally nonzero mode integrates to zero.
    pub fn integral(&self) -> PolyScalar {
        self.coefficient(&ModeVector::zero())
    }
}

impl fmt::Display for CircleFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(v, c)| {
                if c.is_one() {
                    format!("E[{v}]")
                } else {
                    format!("({c})*E[{v}]")
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// A vector field `f(x)∂` on the circle.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VectorField(pub CircleFunction);

impl VectorField {
    /// `L_v = E[v]∂`, the exponential field at the given mode.
    pub fn ell(v: ModeVector) -> Self {
        VectorField(CircleFunction::exp(v))
    }

    pub fn zero() -> Self {
        VectorField(CircleFunction::zero())
    }

    pub fn component(&self) -> &CircleFunction {
        &self.0
    }

    /// `[f∂, g∂] = (fg' - f'g)∂`, the sign fixed so the symbol embedding
    /// `f∂ -> fξ` is a Lie algebra homomorphism.
    pub fn bracket(&self, other: &VectorField) -> VectorField {
        let f = &self.0;
        let g = &other.0;
        VectorField(f.mul(&g.derive(1)).sub(&f.derive(1).mul(g)))
    }

    pub fn scale(&self, p: &PolyScalar) -> Self {
        VectorField(self.0.scale(p))
    }
}

/// A tensor density `a(x) dx^n` of degree `n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TensorDensity {
    pub degree: i64,
    pub component: CircleFunction,
}

impl TensorDensity {
    pub fn new(degree: i64, component: CircleFunction) -> Self {
        TensorDensity { degree, component }
    }

    pub fn is_zero(&self) -> bool {
        self.component.is_zero()
    }

    pub fn sub(&self, other: &TensorDensity) -> TensorDensity {
        assert_eq!(self.degree, other.degree, "density degree mismatch");
        TensorDensity::new(self.degree, self.component.sub(&other.component))
    }
}

impl fmt::Display for TensorDensity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})dx^{}", self.component, self.degree)
    }
}

/// The Lie derivative of a density along a field: `f·a' + n·f'·a` on degree n.
pub fn lie_derive(field: &VectorField, density: &TensorDensity) -> TensorDensity {
    let f = &field.0;
    let a = &density.component;
    let n = PolyScalar::from_int(density.degree);
    let component = f.mul(&a.derive(1)).add(&f.derive(1).mul(a).scale(&n));
    TensorDensity::new(density.degree, component)
}

/// An element `(f∂, a)` of the semidirect product of vector fields with
/// functions (differential operators of order at most one).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SemidirectElement {
    pub field: VectorField,
    pub function: CircleFunction,
}

impl SemidirectElement {
    pub fn new(field: VectorField, function: CircleFunction) -> Self {
        SemidirectElement { field, function }
    }

    pub fn from_field(field: VectorField) -> Self {
        SemidirectElement::new(field, CircleFunction::zero())
    }

    pub fn from_function(function: CircleFunction) -> Self {
        SemidirectElement::new(VectorField::zero(), function)
    }

    /// `[(f∂, a), (g∂, b)] = ((fg' - f'g)∂, fb' - ga')`.
    pub fn bracket(&self, other: &SemidirectElement) -> SemidirectElement {
        let field = self.field.bracket(&other.field);
        let function = self
            .field
            .0
            .mul(&other.function.derive(1))
            .sub(&other.field.0.mul(&self.function.derive(1)));
        SemidirectElement::new(field, function)
    }
}
