use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::autgroup::AutGroup;
use crate::curve::{Curve, Place};
use crate::polyfam;
use crate::weier;

use super::{fe_str, parse_fe, AutArgs, CliError, Output, PlacesArgs, PolyfamArgs, SemigroupArgs};

const CLASS_NAMES: [&str; 6] = [
    "infinity",
    "beta-zero",
    "beta-one",
    "rational-general",
    "non-rational-generic",
    "non-rational-special",
];

fn check_class_name(name: &str) -> Result<(), CliError> {
    if CLASS_NAMES.contains(&name) {
        Ok(())
    } else {
        Err(CliError::Usage(format!("unknown class '{name}'; expected one of {}", CLASS_NAMES.join(", "))))
    }
}

fn sample(curve: &Curve, order: u64, count: usize, max_degree: u32, seed: u64) -> Result<Vec<Place>, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    curve
        .sample_by_gamma_order(order, count, max_degree, &mut rng)
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn place_row(p: &Place) -> Vec<String> {
    let (a, b) = p
        .coords()
        .map_or((String::new(), String::new()), |(a, b)| (fe_str(&a), fe_str(&b)));
    let opt = |x: Option<u64>| x.map_or(String::new(), |v| v.to_string());
    vec![
        a,
        b,
        p.beta.as_ref().map_or(String::new(), fe_str),
        opt(p.level().map(u64::from)),
        p.degree.to_string(),
        p.class.name().to_string(),
        opt(p.class.p_order()),
        opt(p.class.r_order()),
    ]
}

fn place_header() -> Vec<String> {
    ["a", "b", "beta", "level", "degree", "class", "i", "K"].map(String::from).to_vec()
}

pub fn places(curve: &Curve, args: &PlacesArgs, seed: u64) -> Result<Output, CliError> {
    if let Some(c) = &args.class {
        check_class_name(c)?;
    }
    let all = match args.gamma_order {
        Some(order) => sample(curve, order, args.count, args.max_degree, seed)?,
        None => curve.enumerate_rational()?,
    };
    let kept: Vec<Place> = all
        .into_iter()
        .filter(|p| args.class.as_deref().is_none_or(|c| p.class.name() == c))
        .collect();
    Ok(Output {
        results: kept.iter().map(|p| serde_json::to_value(p)).collect::<Result<_, _>>()?,
        header: place_header(),
        rows: kept.iter().map(place_row).collect(),
        notes: vec![format!("{} places", kept.len())],
        passed: true,
    })
}

fn resolve_place(curve: &Curve, args: &SemigroupArgs, seed: u64) -> Result<Place, CliError> {
    let given = [args.place.is_some(), args.class.is_some(), args.gamma_order.is_some()];
    if given.iter().filter(|&&g| g).count() != 1 {
        return Err(CliError::Usage(
            "give exactly one of --place, --class, --gamma-order".to_string(),
        ));
    }
    if let Some(sel) = &args.place {
        if sel == "infinity" {
            return Ok(curve.infinity());
        }
        let (a, b) = sel
            .split_once(':')
            .ok_or_else(|| CliError::Usage(format!("place '{sel}' is neither 'infinity' nor 'A:B'")))?;
        let (a, b) = (parse_fe(a)?, parse_fe(b)?);
        let n = curve.constant_level();
        if a.degree() != n || b.degree() != n {
            return Err(CliError::Usage(format!("coordinates must have {n} coefficients")));
        }
        return Ok(curve.place_from_coords(a, b)?);
    }
    if let Some(class) = &args.class {
        check_class_name(class)?;
        return curve
            .enumerate_rational()?
            .into_iter()
            .filter(|p| p.class.name() == class)
            .nth(args.index)
            .ok_or_else(|| CliError::Usage(format!("no rational place number {} of class {class}", args.index)));
    }
    let order = args.gamma_order.expect("checked above");
    Ok(sample(curve, order, 1, args.max_degree, seed)?.remove(0))
}

pub fn semigroup(curve: &Curve, args: &SemigroupArgs, seed: u64, prec: usize) -> Result<Output, CliError> {
    let place = resolve_place(curve, args, seed)?;
    if args.lift > 2 {
        return Err(CliError::Usage("--lift must be 0, 1 or 2".to_string()));
    }
    let a = weier::certified_assignment(curve, &place, args.lift, prec)?;
    let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
    let mut notes = vec![
        format!("place: {}", place_row(&place)[..6].join(" ")),
        format!("theorem: {}", a.theorem_tag),
    ];
    if let Some(g) = a.result.generators() {
        notes.push(format!("generators: {}", join(g)));
    }
    notes.push(format!("gaps: {}", join(a.result.gaps())));
    let opt = |x: Option<i64>| x.map_or(String::new(), |v| v.to_string());
    let rows = a
        .certificate
        .iter()
        .map(|c| {
            vec![
                c.value.to_string(),
                serde_json::to_value(c.role).unwrap().as_str().unwrap().to_string(),
                serde_json::to_value(c.source).unwrap().as_str().unwrap().to_string(),
                c.witness.clone(),
                opt(c.v_at_p),
                opt(c.pole_bound_at_infinity),
                c.verified.to_string(),
            ]
        })
        .collect();
    Ok(Output {
        passed: a.all_verified(),
        results: vec![serde_json::to_value(&a)?],
        header: ["value", "role", "source", "witness", "v_at_p", "pole_bound", "verified"]
            .map(String::from)
            .to_vec(),
        rows,
        notes,
    })
}

pub fn polyfam(curve: &Curve, args: &PolyfamArgs, seed: u64) -> Result<Output, CliError> {
    let beta = match (&args.beta, args.gamma_order) {
        (Some(s), None) => parse_fe(s)?,
        (None, Some(order)) => sample(curve, order, 1, args.max_degree, seed)?[0]
            .beta
            .expect("sampled places are affine"),
        _ => return Err(CliError::Usage("give exactly one of --beta, --gamma-order".to_string())),
    };
    if beta.is_zero() || beta.is_one() {
        return Err(CliError::Usage("beta must not be 0 or 1".to_string()));
    }
    let seq = polyfam::sequence(args.n, beta)?;
    let mut agree = true;
    for t in &seq {
        agree &= polyfam::eval_closed(t.index, beta)? == *t;
    }
    let gamma = polyfam::gamma(beta)?;
    let gamma_order = crate::ff::mult_order(gamma)?;
    let (i, k) = (polyfam::p_order(beta)?, polyfam::r_order(beta)?);
    let rows = seq
        .iter()
        .map(|t| vec![t.index.to_string(), fe_str(&t.p_val), fe_str(&t.q_val), fe_str(&t.r_val)])
        .collect();
    let result = json!({
        "beta": beta.coeffs(),
        "level": beta.degree(),
        "gamma_order": gamma_order as u64,
        "p_order": i,
        "r_order": k,
        "closed_form_agrees": agree,
        "sequence": serde_json::to_value(&seq)?,
    });
    Ok(Output {
        results: vec![result],
        header: ["i", "P_i", "Q_i", "R_i"].map(String::from).to_vec(),
        rows,
        notes: vec![
            format!("beta = {} in F_3^{}", fe_str(&beta), beta.degree()),
            format!("gamma order {gamma_order}, P-order {i}, R-order {k}"),
        ],
        passed: agree,
    })
}

pub fn aut(curve: &Curve, args: &AutArgs) -> Result<Output, CliError> {
    let group = AutGroup::new(*curve);
    let places = curve.enumerate_rational()?;
    let orbits = group.orbit_indices(&places)?;
    let expected = AutGroup::expected_order(curve);
    let total: usize = orbits.iter().map(Vec::len).sum();
    let passed = group.order() as u64 == expected && total == places.len();
    let mut rows: Vec<Vec<String>> = Vec::new();
    let mut orbit_values: Vec<Value> = Vec::new();
    for (n, o) in orbits.iter().enumerate() {
        let rep = &places[o[0]];
        let mut row = vec![n.to_string(), o.len().to_string()];
        row.extend(place_row(rep).into_iter().take(6));
        rows.push(row);
        orbit_values.push(json!({"size": o.len(), "representative": serde_json::to_value(rep)?}));
    }
    let mut result = json!({
        "order": group.order(),
        "expected_order": expected,
        "orbit_sizes": orbits.iter().map(Vec::len).collect::<Vec<_>>(),
        "orbits": orbit_values,
    });
    if args.elements {
        result["elements"] = serde_json::to_value(group.elements())?;
    }
    Ok(Output {
        results: vec![result],
        header: ["orbit", "size", "a", "b", "beta", "level", "degree", "class"]
            .map(String::from)
            .to_vec(),
        rows,
        notes: vec![format!("|G| = {} (expected 2q^2/3 = {expected})", group.order())],
        passed,
    })
}

