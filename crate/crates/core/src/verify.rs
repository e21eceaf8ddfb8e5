//! Batch invariant suites over randomized truncated symbols, for the
//! verification driver.
//!
//! Randomization uses a splitmix64 generator with fixed seeds so every run
//! checks the same instances and reports are byte-stable.

use crate::circle::{CircleFunction, ModeVector, SemidirectElement, VectorField};
use crate::cohomology::{
    central_cocycle, check_1cocycle, check_2cocycle_scalar, check_density_cocycle, cup,
    density_cocycle, gf_cocycle, semidirect_cocycles, theta, theta_cochain, DensityCocycle,
    Derivation, SemidirectCocycle,
};
use crate::maps::{ad_logxi, ad_x, aut_phi_nu, aut_psi_mu};
use crate::psdo::{Floor, Symbol};
use crate::scalars::{GaussianRational, PolyScalar, Var};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

impl CheckResult {
    fn pass(name: &str, detail: String) -> Self {
        CheckResult {
            name: name.into(),
            status: Status::Pass,
            detail,
        }
    }

    fn fail(name: &str, detail: String) -> Self {
        CheckResult {
            name: name.into(),
            status: Status::Fail,
            detail,
        }
    }

    fn from_bool(name: &str, ok: bool, detail: String) -> Self {
        if ok {
            CheckResult::pass(name, detail)
        } else {
            CheckResult::fail(name, detail)
        }
    }
}

/// Settings for a verification run.
#[derive(Clone, Debug)]
pub struct VerifyConfig {
    /// Accuracy floor for the deep checks.
    pub floor: i32,
    /// Number of randomized samples per randomized check.
    pub samples: usize,
    /// Suites to run; empty means all, order fixed by [`SUITE_NAMES`].
    pub suites: Vec<String>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            floor: -10,
            samples: 50,
            suites: Vec::new(),
        }
    }
}

pub const SUITE_NAMES: [&str; 5] = ["algebra", "trace", "maps", "cocycles", "central"];

struct SplitMix(u64);

impl SplitMix {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    fn range(&mut self, lo: i64, hi: i64) -> i64 {
        lo + (self.next() % (hi - lo + 1) as u64) as i64
    }
}

fn random_mode(rng: &mut SplitMix) -> ModeVector {
    match rng.range(0, 5) {
        0 => ModeVector::zero(),
        1 => ModeVector::formal_a(),
        2 => ModeVector::formal_b(),
        3 => ModeVector::formal_a().neg(),
        4 => ModeVector {
            a: 1,
            b: 1,
            m: 0,
            k: 0,
        },
        _ => ModeVector::constant(rng.range(-2, 2) as i32),
    }
}

/// A random truncated symbol with formal modes and small rational
/// coefficients; h-free so contraction checks can read off h-degrees.
fn random_symbol(rng: &mut SplitMix, floor: i32) -> Symbol {
    let mut terms = Vec::new();
    for _ in 0..rng.range(1, 3) {
        let degree = rng.range(-3, 2) as i32;
        let coeff =
            GaussianRational::complex(rng.range(-3, 3), rng.range(1, 3), rng.range(-2, 2), 1);
        if coeff.is_zero() {
            continue;
        }
        let f = CircleFunction::term(random_mode(rng), PolyScalar::constant(coeff));
        terms.push((degree, f));
    }
    Symbol::from_terms(Floor::At(floor), terms)
}

fn suite_algebra(cfg: &VerifyConfig) -> Vec<CheckResult> {
    let mut rng = SplitMix(0x5eed_a19e);
    let gen_floor = cfg.floor / 2 - 1;
    let h = PolyScalar::var(Var::H);
    let mut assoc_ok = true;
    let mut jacobi_ok = true;
    let mut filtration_ok = true;
    let mut contraction_ok = true;
    for _ in 0..cfg.samples {
        let f = random_symbol(&mut rng, gen_floor);
        let g = random_symbol(&mut rng, gen_floor);
        let k = random_symbol(&mut rng, gen_floor);
        assoc_ok &= f
            .compose(&g)
            .compose(&k)
            .agrees_with(&f.compose(&g.compose(&k)));
        let jac = f
            .bracket_h(&g, &h)
            .bracket_h(&k, &h)
            .add(&g.bracket_h(&k, &h).bracket_h(&f, &h))
            .add(&k.bracket_h(&f, &h).bracket_h(&g, &h));
        jacobi_ok &= jac.is_zero();
        if let (Some(of), Some(og)) = (f.ord(), g.ord()) {
            filtration_ok &= f.compose(&g).ord().is_none_or(|o| o <= of + og);
            filtration_ok &= f.poisson(&g).ord().is_none_or(|o| o < of + og);
        }
        // [F,G]_h has no h^0 part and its h^1 part is {F,G}
        let br = f.bracket_h(&g, &h);
        let pb = f.poisson(&g);
        let common = br.floor().max(pb.floor());
        let mut sample_ok = true;
        for (&d, c) in br.terms() {
            if !common.admits(d) {
                continue;
            }
            for (v, poly) in c.terms() {
                sample_ok &= poly.coeff_of_power(Var::H, 0).is_zero();
                let h1 = poly.coeff_of_power(Var::H, 1);
                sample_ok &= h1 == pb.coefficient(d).coefficient(v);
            }
        }
        for (&d, c) in pb.terms() {
            if !common.admits(d) {
                continue;
            }
            for (v, poly) in c.terms() {
                sample_ok &= br.coefficient(d).coefficient(v).coeff_of_power(Var::H, 1) == *poly;
            }
        }
        contraction_ok &= sample_ok;
    }
    let n = cfg.samples;
    vec![
        CheckResult::from_bool(
            "algebra/associativity",
            assoc_ok,
            format!("{n} random triples"),
        ),
        CheckResult::from_bool(
            "algebra/jacobi-symbolic-h",
            jacobi_ok,
            format!("{n} random triples"),
        ),
        CheckResult::from_bool(
            "algebra/filtration",
            filtration_ok,
            format!("{n} random pairs"),
        ),
        CheckResult::from_bool(
            "algebra/contraction-to-poisson",
            contraction_ok,
            format!("{n} random pairs"),
        ),
    ]
}

fn suite_trace(cfg: &VerifyConfig) -> Vec<CheckResult> {
    let mut rng = SplitMix(0x7ace_0001);
    let mut ok = true;
    let mut errors = 0usize;
    for _ in 0..cfg.samples {
        let f = random_symbol(&mut rng, cfg.floor / 2 - 1);
        let g = random_symbol(&mut rng, cfg.floor / 2 - 1);
        match f.bracket(&g).residue_trace() {
            Ok((_, tr)) => ok &= tr.is_zero(),
            Err(_) => errors += 1,
        }
    }
    let name = "trace/commutators-are-traceless";
    if errors > 0 {
        return vec![CheckResult {
            name: name.into(),
            status: Status::Error,
            detail: format!("{errors} samples below the accuracy floor"),
        }];
    }
    vec![CheckResult::from_bool(
        name,
        ok,
        format!("{} random pairs", cfg.samples),
    )]
}

fn suite_maps(cfg: &VerifyConfig) -> Vec<CheckResult> {
    let mut rng = SplitMix(0x3a95_77aa);
    let h = PolyScalar::var(Var::H);
    let mu = PolyScalar::var(Var::Mu);
    let nu = PolyScalar::var(Var::Nu);
    let gen_floor = cfg.floor / 2 - 1;
    let mut derivation_ok = true;
    let mut mult_ok = true;
    let mut group_ok = true;
    let mut exp_ok = true;
    let samples = cfg.samples.clamp(4, 12);
    for _ in 0..samples {
        let f = random_symbol(&mut rng, gen_floor);
        let g = random_symbol(&mut rng, gen_floor);
        let prod = f.compose_h(&g, &h);
        derivation_ok &=
            ad_x(&prod).agrees_with(&ad_x(&f).compose_h(&g, &h).add(&f.compose_h(&ad_x(&g), &h)));
        derivation_ok &= ad_logxi(&prod, &h).agrees_with(
            &ad_logxi(&f, &h)
                .compose_h(&g, &h)
                .add(&f.compose_h(&ad_logxi(&g, &h), &h)),
        );
        mult_ok &= aut_phi_nu(&prod, &nu)
            .agrees_with(&aut_phi_nu(&f, &nu).compose_h(&aut_phi_nu(&g, &nu), &h));
        mult_ok &= aut_psi_mu(&prod, &mu, &h)
            .agrees_with(&aut_psi_mu(&f, &mu, &h).compose_h(&aut_psi_mu(&g, &mu, &h), &h));
        let lam = PolyScalar::var(Var::Lambda);
        group_ok &=
            aut_phi_nu(&aut_phi_nu(&f, &nu), &lam).agrees_with(&aut_phi_nu(&f, &(&nu + &lam)));
        group_ok &= aut_psi_mu(&aut_psi_mu(&f, &mu, &h), &lam, &h).agrees_with(&aut_psi_mu(
            &f,
            &(&mu + &lam),
            &h,
        ));
        // Φ_ν = exp(-ν ad x) term by term
        let mut acc = f.clone();
        let mut term = f.clone();
        for k in 1..24u32 {
            term = ad_x(&term).scale(&nu.scale(&GaussianRational::ratio(-1, k as i64)));
            if term.is_zero() {
                break;
            }
            acc = acc.add(&term);
        }
        exp_ok &= aut_phi_nu(&f, &nu).agrees_with(&acc);
    }
    // restriction of the logarithmic derivation to fields
    let la = VectorField::ell(ModeVector::formal_a());
    let restricted = ad_logxi(
        &Symbol::embed_vect(&la).truncated(cfg.floor - 1),
        &PolyScalar::one(),
    );
    let combo = theta(1, &la, cfg.floor - 1)
        .add(&theta(2, &la, cfg.floor - 1).scale(&PolyScalar::ratio(-1, 2)))
        .add(&theta(3, &la, cfg.floor - 1).scale(&PolyScalar::ratio(1, 3)));
    let restriction_ok = restricted.sub(&combo).truncated(cfg.floor).is_zero();
    vec![
        CheckResult::from_bool(
            "maps/outer-derivations",
            derivation_ok,
            format!("{samples} random pairs"),
        ),
        CheckResult::from_bool(
            "maps/automorphisms-multiplicative",
            mult_ok,
            format!("{samples} random pairs"),
        ),
        CheckResult::from_bool(
            "maps/one-parameter-group-laws",
            group_ok,
            format!("{samples} random symbols"),
        ),
        CheckResult::from_bool(
            "maps/phi-equals-exp-ad-x",
            exp_ok,
            format!("{samples} random symbols"),
        ),
        CheckResult::from_bool(
            "maps/log-restriction-identity",
            restriction_ok,
            format!("theta1 - theta2/2 + theta3/3 to floor {}", cfg.floor),
        ),
    ]
}

fn suite_cocycles(cfg: &VerifyConfig) -> Vec<CheckResult> {
    let floor = cfg.floor.min(-8);
    let mut out = Vec::new();
    for i in 0..4u8 {
        let defect = check_1cocycle(&theta_cochain(i, floor - 1), floor);
        out.push(CheckResult::from_bool(
            &format!("cocycles/theta{i}-1-cocycle"),
            defect.is_zero(),
            format!("identically over formal modes to floor {floor}"),
        ));
    }
    for (name, which) in [
        ("cbar0", DensityCocycle::CBar0),
        ("c0", DensityCocycle::C0),
        ("c1", DensityCocycle::C1),
        ("c2", DensityCocycle::C2),
    ] {
        let defect = check_density_cocycle(|x| density_cocycle(which, x));
        out.push(CheckResult::from_bool(
            &format!("cocycles/density-{name}"),
            defect.is_zero(),
            "exact density-valued identity".into(),
        ));
    }
    let x = VectorField::ell(ModeVector::formal_a());
    let y = VectorField::ell(ModeVector::formal_b());
    let t0 = theta_cochain(0, -6);
    let t1 = theta_cochain(1, -6);
    let low_cups_vanish = cup(&t0, &t0, &x, &y, -5).is_zero()
        && cup(&t0, &t1, &x, &y, -5).is_zero()
        && cup(&t1, &t1, &x, &y, -5).is_zero();
    out.push(CheckResult::from_bool(
        "cocycles/order-zero-cups-vanish",
        low_cups_vanish,
        "cup products among theta0, theta1".into(),
    ));
    // cup with a coboundary is a coboundary: checked against the explicit
    // primitive beta(X) = [gamma X, F]
    let mut rng = SplitMix(0xc0c7_c1e5);
    let gamma = theta_cochain(2, floor - 1);
    let mut cup_cob_ok = true;
    for _ in 0..cfg.samples.clamp(2, 8) {
        let f = random_symbol(&mut rng, floor - 1);
        let eval = |v: &VectorField| gamma.eval(v, Floor::At(floor - 1));
        let cob = |v: &VectorField| f.bracket(&Symbol::embed_vect(v));
        let cup_val = eval(&x).bracket(&cob(&y)).add(&cob(&x).bracket(&eval(&y)));
        let beta = |v: &VectorField| eval(v).bracket(&f);
        let d_beta = Symbol::embed_vect(&x)
            .bracket(&beta(&y))
            .sub(&Symbol::embed_vect(&y).bracket(&beta(&x)))
            .sub(&beta(&x.bracket(&y)));
        cup_cob_ok &= cup_val.sub(&d_beta).truncated(floor + 2).is_zero();
    }
    out.push(CheckResult::from_bool(
        "cocycles/cup-with-coboundary-is-coboundary",
        cup_cob_ok,
        "random conjugators".into(),
    ));
    out
}

fn suite_central(cfg: &VerifyConfig) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let x = VectorField::ell(ModeVector::formal_a());
    let y = VectorField::ell(ModeVector::formal_b());
    let z = VectorField::ell(ModeVector {
        a: -1,
        b: -1,
        m: 0,
        k: 0,
    });
    out.push(CheckResult::from_bool(
        "central/gelfand-fuchs-2-cocycle",
        check_2cocycle_scalar(gf_cocycle, &x, &y, &z).is_zero(),
        "closing formal triple".into(),
    ));
    let one = PolyScalar::one();
    for (name, which) in [("log-xi", Derivation::LogXi), ("ad-x", Derivation::X)] {
        let floor = cfg.floor.min(-4);
        let omega = |u: &VectorField, v: &VectorField| {
            central_cocycle(
                which,
                &Symbol::embed_vect(u).truncated(floor),
                &Symbol::embed_vect(v).truncated(floor),
                &one,
            )
        };
        let name = format!("central/{name}-2-cocycle");
        match (
            omega(&x.bracket(&y), &z),
            omega(&y.bracket(&z), &x),
            omega(&z.bracket(&x), &y),
        ) {
            (Ok(a), Ok(b), Ok(c)) => {
                let sum = &(&a + &b) + &c;
                out.push(CheckResult::from_bool(
                    &name,
                    sum.is_zero(),
                    "closing formal triple".into(),
                ));
            }
            _ => out.push(CheckResult {
                name,
                status: Status::Error,
                detail: format!("accuracy floor {} too shallow for the residue", cfg.floor),
            }),
        }
    }
    let sx = SemidirectElement::new(
        VectorField::ell(ModeVector::formal_a()),
        CircleFunction::exp(ModeVector::formal_a()),
    );
    let sy = SemidirectElement::new(
        VectorField::ell(ModeVector::formal_b()),
        CircleFunction::exp(ModeVector::formal_b()),
    );
    let closing = ModeVector {
        a: -1,
        b: -1,
        m: 0,
        k: 0,
    };
    let sz = SemidirectElement::new(VectorField::ell(closing), CircleFunction::exp(closing));
    for (name, which) in [
        ("semidirect-gf", SemidirectCocycle::C),
        ("semidirect-tilde", SemidirectCocycle::Tilde),
        ("semidirect-tildetilde", SemidirectCocycle::TildeTilde),
    ] {
        let omega = |u: &SemidirectElement, v: &SemidirectElement| semidirect_cocycles(which, u, v);
        out.push(CheckResult::from_bool(
            &format!("central/{name}-2-cocycle"),
            check_2cocycle_scalar(omega, &sx, &sy, &sz).is_zero(),
            "closing formal triple".into(),
        ));
    }
    out
}

/// Run the selected suites, concurrently (all checks are pure), and merge
/// the results in declaration order so reports stay deterministic. Unknown
/// suite names produce an error row rather than being silently skipped.
pub fn run_suites(cfg: &VerifyConfig) -> Vec<CheckResult> {
    let selected: Vec<&str> = if cfg.suites.is_empty() {
        SUITE_NAMES.to_vec()
    } else {
        cfg.suites.iter().map(String::as_str).collect()
    };
    std::thread::scope(|scope| {
        let handles: Vec<_> = selected
            .iter()
            .map(|&name| {
                scope.spawn(move || match name {
                    "algebra" => suite_algebra(cfg),
                    "trace" => suite_trace(cfg),
                    "maps" => suite_maps(cfg),
                    "cocycles" => suite_cocycles(cfg),
                    "central" => suite_central(cfg),
                    other => vec![CheckResult {
                        name: format!("suite/{other}"),
                        status: Status::Error,
                        detail: "unknown suite name".into(),
                    }],
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("suite thread panicked"))
            .collect()
    })
}
