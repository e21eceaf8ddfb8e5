//! Outer derivations ad(x) and ad(log ξ) of the symbol algebra, the
//! one-parameter automorphism families they integrate to, and truncated inner
//! automorphisms exp(ad F).
//!
//! Neither `x`, `log ξ`, `e^{xν}` nor `ξ^μ` is represented as a symbol; only
//! their adjoint or conjugation action is implemented, computed termwise from
//! the composition formula.

use crate::error::{Error, Result};
use crate::psdo::{Floor, Symbol, DEFAULT_FLOOR};
use crate::scalars::{binom_int, hbinom, GaussianRational, PolyScalar};

/// `[ad(x), fξ^p] = -p fξ^{p-1}`. Termwise; the floor drops by one.
pub fn ad_x(f: &Symbol) -> Symbol {
    Symbol::from_terms(
        f.floor().shift(-1),
        f.terms()
            .map(|(&p, c)| (p - 1, c.scale(&PolyScalar::from_int(-(p as i64))))),
    )
}

/// Floor for the termwise series maps below: a truncated input keeps one more
/// accurate degree (the series strictly lowers degree), an exact x-dependent
/// input acquires the default working floor.
fn series_floor(f: &Symbol) -> Floor {
    match f.floor() {
        Floor::At(w) => Floor::At(w - 1),
        Floor::Exact => {
            if f.terms().all(|(_, c)| c.is_x_free()) {
                Floor::Exact
            } else {
                Floor::At(DEFAULT_FLOOR)
            }
        }
    }
}

/// The h-twisted logarithmic derivation
/// `[ad(log ξ), fξ^p] = Σ_{n≥1} h^n (-1)^{n+1}/n · f^{(n)} ξ^{p-n}`;
/// `h = 1` is the classical outer derivation.
pub fn ad_logxi(f: &Symbol, h: &PolyScalar) -> Symbol {
    let floor = series_floor(f);
    let mut out = Symbol::from_terms(floor, []);
    for (&p, c) in f.terms() {
        let mut h_pow = PolyScalar::one();
        for n in 1i32.. {
            if !floor.admits(p - n) {
                break;
            }
            h_pow = &h_pow * h;
            let dc = c.derive(n as u32);
            if dc.is_zero() {
                break;
            }
            let sign = if n % 2 == 1 { 1 } else { -1 };
            let coeff = h_pow.scale(&GaussianRational::ratio(sign, n as i64));
            out = out.add(&Symbol::from_terms(floor, [(p - n, dc.scale(&coeff))]));
        }
    }
    out
}

/// The conjugation family integrating ad(x), normalized so that
/// `Φ_ν(fξ) = fξ + νf`: termwise `fξ^p -> Σ_k C(p,k) ν^k f ξ^{p-k}`.
/// Equals `exp(-ν ad(x))`, and is multiplicative for every `∘_h`.
pub fn aut_phi_nu(f: &Symbol, nu: &PolyScalar) -> Symbol {
    let floor = match f.floor() {
        Floor::At(w) => Floor::At(w),
        Floor::Exact => {
            if f.min_degree().is_none_or(|d| d >= 0) {
                Floor::Exact
            } else {
                Floor::At(DEFAULT_FLOOR)
            }
        }
    };
    let mut out = Symbol::from_terms(floor, []);
    for (&p, c) in f.terms() {
        let mut nu_pow = PolyScalar::one();
        for k in 0i32.. {
            if !floor.admits(p - k) {
                break;
            }
            let coeff = binom_int(p as i64, k as u32);
            if coeff.numer() != &num_bigint::BigInt::from(0) {
                let scalar = PolyScalar::constant(GaussianRational {
                    re: coeff,
                    im: Default::default(),
                });
                out = out.add(&Symbol::from_terms(
                    floor,
                    [(p - k, c.scale(&(&scalar * &nu_pow)))],
                ));
            } else if p >= 0 && k > p {
                break;
            }
            nu_pow = &nu_pow * nu;
        }
    }
    out
}

/// The dilation-twisted conjugation family integrating ad(log ξ):
/// `fξ^p -> Σ_k hbinom(μ, k, h) f^{(k)} ξ^{p-k}`. At `h = 1` the coefficients
/// are the generalized binomials `C(μ, k)` of conjugation by `ξ^μ`.
pub fn aut_psi_mu(f: &Symbol, mu: &PolyScalar, h: &PolyScalar) -> Symbol {
    let floor = series_floor(f).max(f.floor());
    let mut out = Symbol::from_terms(floor, []);
    for (&p, c) in f.terms() {
        for k in 0i32.. {
            if !floor.admits(p - k) {
                break;
            }
            let dc = c.derive(k as u32);
            if dc.is_zero() && k > 0 {
                break;
            }
            let coeff = hbinom(mu, k as u32, h);
            out = out.add(&Symbol::from_terms(floor, [(p - k, dc.scale(&coeff))]));
        }
    }
    out
}

/// Truncated inner automorphism `exp(ad F) G = Σ_{k≤depth} (1/k!)(ad F)^k G`.
///
/// Requires `ord F ≤ 0` so that ad F strictly lowers the order of every term
/// and the series stabilizes below the floor.
pub fn exp_ad(f: &Symbol, g: &Symbol, depth: u32) -> Result<Symbol> {
    if f.ord().is_some_and(|p| p > 0) {
        return Err(Error::Usage(
            "exp(ad F) needs ord F <= 0 so the series lowers degree".into(),
        ));
    }
    let mut acc = g.clone();
    let mut term = g.clone();
    for k in 1..=depth {
        term = f
            .bracket(&term)
            .scale_rat(&GaussianRational::ratio(1, k as i64));
        if term.is_zero() {
            break;
        }
        acc = acc.add(&term);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circle::{CircleFunction, ModeVector, VectorField};
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

    #[test]
    fn ad_x_action() {
        let f = Symbol::monomial(3, e(2));
        assert_eq!(
            ad_x(&f),
            Symbol::monomial(2, e(2).scale(&PolyScalar::from_int(-3)))
        );
        assert!(ad_x(&Symbol::monomial(0, ea())).is_zero());
    }

    #[test]
    fn ad_x_is_a_derivation() {
        let f = Symbol::monomial(1, e(1));
        let lhs = ad_x(&f.compose(&f));
        let rhs = ad_x(&f).compose(&f).add(&f.compose(&ad_x(&f)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn ad_logxi_series_on_a_field() {
        // [ad(log ξ), E_1 ξ] = iE_1 + (1/2)E_1 ξ^{-1} - (i/3)E_1 ξ^{-2} + ...
        let f = Symbol::embed_vect(&VectorField(e(1))).truncated(-2);
        let out = ad_logxi(&f, &PolyScalar::one());
        assert_eq!(out.coefficient(0), e(1).scale(&PolyScalar::i()));
        assert_eq!(out.coefficient(-1), e(1).scale(&PolyScalar::ratio(1, 2)));
        let minus_i_third = PolyScalar::constant(GaussianRational::complex(0, 1, -1, 3));
        assert_eq!(out.coefficient(-2), e(1).scale(&minus_i_third));
        // constants are killed
        assert!(ad_logxi(
            &Symbol::monomial(0, CircleFunction::one()),
            &PolyScalar::one()
        )
        .is_zero());
    }

    #[test]
    fn derivations_of_the_contracted_product() {
        // ad(x) and ad(log ξ) are derivations of ∘_h with symbolic h
        let h = PolyScalar::var(Var::H);
        let f = Symbol::from_terms(crate::psdo::Floor::At(-4), [(1, ea()), (0, e(1))]);
        let g = Symbol::from_terms(crate::psdo::Floor::At(-4), [(1, eb()), (-1, e(-1))]);
        let prod = f.compose_h(&g, &h);
        let lhs = ad_x(&prod);
        let rhs = ad_x(&f).compose_h(&g, &h).add(&f.compose_h(&ad_x(&g), &h));
        assert!(lhs.agrees_with(&rhs));
        let lhs = ad_logxi(&prod, &h);
        let rhs = ad_logxi(&f, &h)
            .compose_h(&g, &h)
            .add(&f.compose_h(&ad_logxi(&g, &h), &h));
        assert!(lhs.agrees_with(&rhs));
    }

    #[test]
    fn phi_nu_examples() {
        let nu = PolyScalar::var(Var::Nu);
        let f = Symbol::monomial(1, e(1));
        let expect = f.add(&Symbol::monomial(0, e(1).scale(&nu)));
        assert_eq!(aut_phi_nu(&f, &nu), expect);
        let g = Symbol::monomial(0, ea());
        assert_eq!(aut_phi_nu(&g, &nu), g);
        // fξ^2 -> fξ^2 + 2νfξ + ν^2 f
        let f2 = Symbol::monomial(2, ea());
        let expect = f2
            .add(&Symbol::monomial(
                1,
                ea().scale(&nu.scale(&GaussianRational::from_int(2))),
            ))
            .add(&Symbol::monomial(0, ea().scale(&nu.pow(2))));
        assert_eq!(aut_phi_nu(&f2, &nu), expect);
    }

    #[test]
    fn phi_nu_is_exp_of_minus_nu_ad_x() {
        let nu = PolyScalar::var(Var::Nu);
        let f = Symbol::from_terms(crate::psdo::Floor::At(-4), [(2, ea()), (-1, e(1))]);
        // exp(-ν ad x) applied term by term
        let mut acc = f.clone();
        let mut term = f.clone();
        for k in 1..14u32 {
            term = ad_x(&term).scale(&nu.scale(&GaussianRational::ratio(-1, k as i64)));
            acc = acc.add(&term);
        }
        assert!(aut_phi_nu(&f, &nu).agrees_with(&acc));
    }

    #[test]
    fn psi_mu_examples() {
        let mu = PolyScalar::var(Var::Mu);
        let one = PolyScalar::one();
        // constant coefficient: E_0 ξ is fixed
        let xi = Symbol::monomial(1, CircleFunction::one());
        assert_eq!(aut_psi_mu(&xi, &mu, &one), xi);
        // E_1 ξ -> E_1ξ + iμE_1 - (μ(μ-1)/2) E_1 ξ^{-1} + ...
        let f = Symbol::monomial(1, e(1)).truncated(-1);
        let out = aut_psi_mu(&f, &mu, &one);
        assert_eq!(out.coefficient(0), e(1).scale(&(&PolyScalar::i() * &mu)));
        let mm1 = (&mu * &(&mu - &one)).scale(&GaussianRational::ratio(-1, 2));
        assert_eq!(out.coefficient(-1), e(1).scale(&mm1));
        // μ = 0 is the identity
        let g = Symbol::from_terms(crate::psdo::Floor::At(-3), [(1, ea()), (-2, e(1))]);
        assert_eq!(aut_psi_mu(&g, &PolyScalar::zero(), &one), g);
    }

    #[test]
    fn automorphisms_are_multiplicative_for_compose_h() {
        let h = PolyScalar::var(Var::H);
        let mu = PolyScalar::var(Var::Mu);
        let nu = PolyScalar::var(Var::Nu);
        let f = Symbol::from_terms(crate::psdo::Floor::At(-3), [(1, ea())]);
        let g = Symbol::from_terms(crate::psdo::Floor::At(-3), [(1, eb()), (0, e(1))]);
        let prod = f.compose_h(&g, &h);
        let lhs = aut_phi_nu(&prod, &nu);
        let rhs = aut_phi_nu(&f, &nu).compose_h(&aut_phi_nu(&g, &nu), &h);
        assert!(lhs.agrees_with(&rhs));
        let lhs = aut_psi_mu(&prod, &mu, &h);
        let rhs = aut_psi_mu(&f, &mu, &h).compose_h(&aut_psi_mu(&g, &mu, &h), &h);
        assert!(lhs.agrees_with(&rhs));
    }

    #[test]
    fn group_laws() {
        let h = PolyScalar::var(Var::H);
        let mu = PolyScalar::var(Var::Mu);
        let nu = PolyScalar::var(Var::Nu);
        let lam = PolyScalar::var(Var::Lambda);
        let f = Symbol::from_terms(crate::psdo::Floor::At(-4), [(1, ea()), (-1, eb())]);
        let two_step = aut_phi_nu(&aut_phi_nu(&f, &nu), &lam);
        assert!(two_step.agrees_with(&aut_phi_nu(&f, &(&nu + &lam))));
        let two_step = aut_psi_mu(&aut_psi_mu(&f, &mu, &h), &lam, &h);
        assert!(two_step.agrees_with(&aut_psi_mu(&f, &(&mu + &lam), &h)));
    }

    #[test]
    fn exp_ad_basics() {
        let g = Symbol::from_terms(crate::psdo::Floor::At(-4), [(1, ea())]);
        assert_eq!(exp_ad(&Symbol::zero(), &g, 8).unwrap(), g);
        // order -1 conjugator stabilizes below the floor
        let f = Symbol::monomial(-1, e(1)).truncated(-6);
        let c1 = exp_ad(&f, &g, 12).unwrap();
        let c2 = exp_ad(&f, &g, 40).unwrap();
        assert!(c1.agrees_with(&c2));
        // order 1 conjugator is refused
        let bad = Symbol::monomial(1, e(1));
        assert!(exp_ad(&bad, &g, 4).is_err());
    }

    #[test]
    fn exp_ad_preserves_composition() {
        let f = Symbol::monomial(-1, e(1)).truncated(-5);
        let g1 = Symbol::from_terms(crate::psdo::Floor::At(-5), [(1, ea())]);
        let g2 = Symbol::from_terms(crate::psdo::Floor::At(-5), [(1, eb()), (0, e(-1))]);
        let lhs = exp_ad(&f, &g1.compose(&g2), 24).unwrap();
        let rhs = exp_ad(&f, &g1, 24)
            .unwrap()
            .compose(&exp_ad(&f, &g2, 24).unwrap());
        assert!(lhs.agrees_with(&rhs));
    }

    #[test]
    fn restriction_of_ad_logxi_to_fields() {
        // [ad(log ξ), fξ] = f' - f''/2 ξ^{-1} + f'''/3 ξ^{-2} - f''''/4 ξ^{-3} ...
        let f = Symbol::embed_vect(&VectorField(ea())).truncated(-3);
        let out = ad_logxi(&f, &PolyScalar::one());
        for (n, d) in [(1u32, 0i32), (2, -1), (3, -2), (4, -3)] {
            let sign = if n % 2 == 1 { 1 } else { -1 };
            let expect = ea().derive(n).scale(&PolyScalar::ratio(sign, n as i64));
            assert_eq!(out.coefficient(d), expect, "term at xi^{d}");
        }
    }
}
