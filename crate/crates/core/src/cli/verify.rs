//! The `verify` suite: one row per property, for a single `a(h)` or for the
//! built-in test set.

use crate::endo::{
    check_endomorphism, check_map, compose, enumerate_positive, find_zero_type, invert,
    simplicity_test, solve_negative, Endomorphism, Kind, PoissonMap,
};
use crate::ore::{GwaParams, OreElement, OreMonomial};
use crate::poisson::{
    bracket, eigen_map, gwa_bracket, gwa_mul, gwa_reduce, jacobi_check, pske_check, BracketSpec,
    Derivation, PoissonElement,
};
use crate::poly::{DensePoly, Var};
use rand::Rng;

use crate::sample;
use crate::scalar::{lcm, Scalar};
use crate::semiclassical::{induced_maps, lift, sc_bracket, verify_ad_condition, ExtensionData};

use super::parse::parse_poly_in;
use super::{CliError, Input, Report, Row};

/// The built-in test set.
pub const TEST_POLYNOMIALS: [&str; 8] = [
    "h + 1",
    "h^2 + 1",
    "h^2 + h",
    "(h - 1)^2",
    "h^3 + h",
    "h^3 + h + 1",
    "h^-1 + h",
    "(h^2 + 1)^2",
];

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn generators() -> [(&'static str, PoissonElement); 3] {
    [
        ("h", PoissonElement::h()),
        ("x", PoissonElement::x()),
        ("y", PoissonElement::y()),
    ]
}

/// Engine bracket against the biderivation bracket.
pub fn closed_form(params: &GwaParams, seed: u64, samples: usize) -> Outcome {
    let alg = params.algebra();
    let spec = BracketSpec::gwa(params);
    let mut pairs: Vec<(PoissonElement, PoissonElement)> = Vec::new();
    for (_, u) in generators() {
        for (_, v) in generators() {
            pairs.push((u.clone(), v));
        }
    }
    let mut rng = sample::rng(seed);
    for _ in 0..samples {
        pairs.push((sample::poisson_monomial(&mut rng), sample::poisson_monomial(&mut rng)));
    }
    for (f, g) in &pairs {
        let engine = sc_bracket(&lift(f), &lift(g), &alg).map_err(err)?;
        let formula = bracket(f, g, &spec);
        ensure(engine == formula, || {
            format!("{{{f}, {g}}}: engine {engine}, biderivation {formula}")
        })?;
    }
    Ok(format!("9 generator pairs and {samples} random pairs agree"))
}

pub fn centrality(params: &GwaParams) -> Outcome {
    let alg = params.algebra();
    let c = alg.casimir();
    ensure(alg.is_central(&c).central, || format!("{c} is not central"))?;
    let hx = OreElement::monomial(Scalar::one(), OreMonomial::new(0, 1, 1, 0));
    for f in [OreElement::x(), OreElement::y(), hx] {
        let r = alg.is_central(&f);
        let nonzero = r.witness.as_ref().is_some_and(|(_, w)| !w.is_zero());
        ensure(!r.central && nonzero, || format!("{f} reported central"))?;
    }
    Ok(format!("{c} is central; x, y, hx are not"))
}

pub fn induced(params: &GwaParams) -> Outcome {
    let alg = params.algebra();
    let data = ExtensionData::from_algebra(&alg).map_err(err)?;
    let ad = verify_ad_condition(&data);
    ensure(ad.passed(), || format!("divisibility fails for {:?}", ad.failures))?;
    let ind = induced_maps(&data).map_err(err)?;
    let a_prime_h = PoissonElement::from_h_poly(&params.a_prime());
    let delta1_x = -&(&a_prime_h * &PoissonElement::h());
    let expected = [
        ("alpha1(h)", &ind.alpha1_h, PoissonElement::h()),
        ("beta1(h)", &ind.beta1_h, -&PoissonElement::h()),
        ("beta1(x)", &ind.beta1_x, PoissonElement::zero()),
        ("delta1(h)", &ind.delta1_h, PoissonElement::zero()),
        ("delta1(x)", &ind.delta1_x, delta1_x),
    ];
    for (name, got, want) in &expected {
        ensure(*got == want, || format!("{name} = {got}, expected {want}"))?;
    }
    let spec = BracketSpec::gwa(params);
    let base = BracketSpec {
        yh: PoissonElement::zero(),
        yx: PoissonElement::zero(),
        ..spec
    };
    let pske = pske_check(&base, &ind.beta1(), &ind.delta1());
    ensure(pske.passed(), || format!("compatibility fails: {:?}", pske.failures))?;
    let corrupted = Derivation::on_base(PoissonElement::zero(), PoissonElement::x());
    ensure(!pske_check(&base, &ind.beta1(), &corrupted).passed(), || {
        "compatibility holds for delta1(x) = x".to_string()
    })?;
    Ok(format!("delta1(x) = {}; compatibility holds and rejects delta1(x) = x", ind.delta1_x))
}

pub fn jacobi(params: &GwaParams) -> Outcome {
    let spec = BracketSpec::gwa(params);
    let r = jacobi_check(&spec);
    ensure(r.passed(), || format!("J(h, x, y) = {}", r.residual))?;
    let bad = BracketSpec {
        yx: PoissonElement::x(),
        ..spec
    };
    let r = jacobi_check(&bad);
    let hx = PoissonElement::monomial(Scalar::one(), 1, 1, 0);
    ensure(r.residual == hx, || format!("{{y,x}} = x gives J = {}", r.residual))?;
    Ok("J(h, x, y) = 0; with {y,x} = x, J = h*x".to_string())
}

pub fn simplicity(params: &GwaParams) -> Outcome {
    let s = simplicity_test(params).map_err(err)?;
    let (w, _) = DensePoly::from_laurent(&s.witness).map_err(err)?;
    for p in [params.a().clone(), params.a_prime()] {
        let (d, _) = DensePoly::from_laurent(&p).map_err(err)?;
        ensure(d.divrem(&w).1.is_zero(), || format!("{} does not divide {p}", s.witness))?;
    }
    Ok(if s.simple {
        "simple".to_string()
    } else {
        format!("not simple, witness {}", s.witness)
    })
}

pub fn grading(params: &GwaParams, seed: u64, samples: usize) -> Outcome {
    let mut rng = sample::rng(seed);
    for _ in 0..samples {
        let k: i32 = rng.gen_range(-3..=3);
        let l: i32 = rng.gen_range(-3..=3);
        let u = gwa_reduce(&sample::homogeneous(&mut rng, k, 3), params);
        let v = gwa_reduce(&sample::homogeneous(&mut rng, l, 3), params);
        let e = eigen_map(&u, params);
        ensure(e == u.scale(&Scalar::from(k as i64)), || {
            format!("eigen_map({u}) = {e}, expected degree {k}")
        })?;
        let p = gwa_mul(&u, &v, params);
        ensure(p.is_homogeneous(k + l), || format!("({u})*({v}) is not in W_{}", k + l))?;
        let b = gwa_bracket(&u, &v, params);
        ensure(b.is_homogeneous(k + l), || format!("{{{u}, {v}}} is not in W_{}", k + l))?;
    }
    Ok(format!("{samples} homogeneous samples"))
}

fn sound(psi: &Endomorphism, params: &GwaParams) -> Result<(), String> {
    let r = check_endomorphism(psi, params).map_err(err)?;
    ensure(r.passed(), || format!("{psi} fails {:?}", r.failures))
}

pub fn endomorphisms(params: &GwaParams, seed: u64, samples: usize) -> Outcome {
    let sd = crate::poly::support_data(params.a()).map_err(err)?;
    let fam = enumerate_positive(params, &[(Scalar::one(), 0), (Scalar::from(2), 1)])
        .map_err(err)?;
    for psi in &fam.instances {
        sound(psi, params)?;
    }
    let perturbed = Endomorphism::Positive {
        gamma: Scalar::from(2),
        b: Scalar::one(),
        n: 0,
    };
    let r = check_endomorphism(&perturbed, params).map_err(err)?;
    ensure(!r.passed(), || "gamma = 2 accepted".to_string())?;
    let shape = PoissonMap {
        h: PoissonElement::monomial(Scalar::one(), 2, 0, 0),
        x: PoissonElement::x(),
        y: PoissonElement::y(),
    };
    ensure(!check_map(&shape, params).passed(), || "h -> h^2 accepted".to_string())?;

    let zero = find_zero_type(params).map_err(err)?;
    for psi in &zero.endomorphisms {
        sound(psi, params)?;
    }
    ensure(!zero.certificate.is_unit() || zero.exact_roots.is_empty(), || {
        "zero-type roots for squarefree a".to_string()
    })?;

    let neg = solve_negative(params).map_err(err)?;
    let negs = neg.endomorphisms();
    for psi in &negs {
        sound(psi, params)?;
    }
    let id = Endomorphism::identity();
    let mut rng = sample::rng(seed);
    let mut invertible: Vec<Endomorphism> =
        (0..samples).map(|_| sample::positive_endo(&mut rng, params)).collect();
    invertible.extend(negs.iter().cloned());
    for psi in &invertible {
        let inv = invert(psi).map_err(err)?;
        let c = compose(psi, &inv, params).map_err(err)?;
        ensure(c == id, || format!("{psi} composed with its inverse is {c}"))?;
    }
    for p in &negs {
        for q in &negs {
            let c = compose(p, q, params).map_err(err)?;
            ensure(c.kind() == Kind::Positive, || format!("{p} o {q} = {c}"))?;
        }
    }
    let k = sd.k.unwrap_or(0);
    Ok(format!(
        "k = {k}: {} positive, {} zero-type, {} negative instances sound; inverses verified",
        fam.instances.len(),
        zero.endomorphisms.len(),
        negs.len()
    ))
}

pub fn specialization(params: &GwaParams) -> Outcome {
    for lambda in [Scalar::from(2), Scalar::from(3)] {
        let alg = params.specialized(&lambda).map_err(err)?;
        let mono = |c: Scalar, h, x, y| OreElement::monomial(c, OreMonomial::new(0, h, x, y));
        let (h, x, y) = (OreElement::h(), OreElement::x(), OreElement::y());
        ensure(alg.mul(&x, &h) == mono(lambda.clone(), 1, 1, 0), || {
            format!("xh at lambda = {lambda}")
        })?;
        let inv = lambda.inv().map_err(err)?;
        ensure(alg.mul(&y, &h) == mono(inv, 1, 0, 1), || format!("yh at lambda = {lambda}"))?;
        let a = OreElement::from_laurent(params.a()).map_err(err)?;
        let shifted = params.a().substitute_h(&lambda, 1).map_err(err)?;
        let a_l = OreElement::from_laurent(&shifted).map_err(err)?;
        let want = &(&mono(Scalar::one(), 0, 1, 1) + &a) - &a_l;
        ensure(alg.mul(&y, &x) == want, || format!("yx at lambda = {lambda}"))?;
    }
    Ok("relations hold at lambda = 2, 3".to_string())
}

/// Every property for one `a`.
pub fn suite(params: &GwaParams, seed: u64) -> Result<Vec<Row>, CliError> {
    let rows: [(&str, Outcome); 8] = [
        ("semiclassical closed form", closed_form(params, seed, 50)),
        ("centrality", centrality(params)),
        ("induced derivations", induced(params)),
        ("jacobi", jacobi(params)),
        ("simplicity", simplicity(params)),
        ("grading", grading(params, seed, 100)),
        ("endomorphisms", endomorphisms(params, seed, 20)),
        ("specialization", specialization(params)),
    ];
    Ok(rows
        .into_iter()
        .map(|(name, r)| match r {
            Ok(d) => Row::check(name, true, d),
            Err(d) => Row::check(name, false, d),
        })
        .collect())
}

/// The suite over the built-in test set, at conductor `lcm(N, 4)` so that
/// fourth roots of unity are available.
pub fn run_default(seed: u64, conductor: u32) -> Result<Report, CliError> {
    let n = lcm(conductor, 4);
    let mut results = Vec::new();
    let mut names = Vec::new();
    for text in TEST_POLYNOMIALS {
        let a = parse_poly_in(text, &[Var::H], n).map_err(|source| CliError::Parse {
            what: "test polynomial",
            source,
        })?;
        let params = GwaParams::with_conductor(a, n)?;
        let label = params.a().to_string();
        for mut row in suite(&params, seed)? {
            row.name = format!("{} [{label}]", row.name);
            results.push(row);
        }
        names.push(label);
    }
    Ok(Report {
        schema: 1,
        command: "verify".to_string(),
        input: Input {
            a: names.join("; "),
            conductor: n,
        },
        results,
    })
}
