use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use clap::{Args, Subcommand};
use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use dwork_core::arith::primes::{gcd, is_prime, next_prime};
use dwork_core::arith::residue::multiplicative_order;
use dwork_core::arith::{CyclotomicInt, FiniteField, Matrix};
use dwork_core::gauss::{self, GaussSumContext};
use dwork_core::hodge::{self, OrdinarityInstance};
use dwork_core::monodromy::{self, Certificate, ImageClassification, MonodromyTriple, Verdict};
use dwork_core::params::{self, AlphaStability, CharacterExponents, EigenvalueSet, EllipticCurveQ};
use dwork_core::Error;

use crate::report::{Report, Status};

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or violated preconditions; exit code 2.
    Usage(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

fn usage<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Usage(msg.into()))
}

type Out<T = ()> = Result<T, CliError>;

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Character exponents, eigenvalue set and alpha-stability for (n, N)
    Params(ParamsArgs),
    /// Construct N with prescribed divisibility of the order of l
    FindN(FindNArgs),
    /// Search for an auxiliary prime l' on an elliptic curve
    FindLprime(FindLprimeArgs),
    /// Build and classify the monodromy triple over F_{l^r}
    Monodromy(MonodromyArgs),
    /// Exact Gauss-sum identities and the determinant membership test
    Gauss(GaussArgs),
    /// Hodge graded positions per twist, optional ordinarity check
    Hodge(HodgeArgs),
    /// All of the above for one parameter set and two primes
    Pipeline(PipelineArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Params(_) => "params",
            Command::FindN(_) => "find-n",
            Command::FindLprime(_) => "find-lprime",
            Command::Monodromy(_) => "monodromy",
            Command::Gauss(_) => "gauss",
            Command::Hodge(_) => "hodge",
            Command::Pipeline(_) => "pipeline",
        }
    }
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct ParamsArgs {
    #[arg(long)]
    pub n: u64,
    #[arg(long = "N")]
    #[serde(rename = "N")]
    pub big_n: u64,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct FindNArgs {
    #[arg(long)]
    pub l: u64,
    #[arg(long)]
    pub s: u64,
    /// Comma-separated primes
    #[arg(long, value_delimiter = ',')]
    pub avoid: Vec<u64>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct FindLprimeArgs {
    #[arg(long = "N")]
    #[serde(rename = "N")]
    pub big_n: u64,
    #[arg(long)]
    pub l: u64,
    #[arg(long)]
    pub n: u64,
    /// a1,a2,a3,a4,a6
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    pub curve: Vec<i64>,
    #[arg(long, default_value_t = 10_000)]
    pub budget: u64,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct MonodromyArgs {
    #[arg(long)]
    pub n: u64,
    #[arg(long = "N")]
    #[serde(rename = "N")]
    pub big_n: u64,
    #[arg(long)]
    pub l: u64,
    /// Eigenvalue set; derived from (n, N) when omitted
    #[arg(long, value_delimiter = ',')]
    pub b: Option<Vec<i64>>,
    #[arg(long)]
    pub classify: bool,
    #[arg(long, default_value_t = monodromy::DEFAULT_BFS_CAP)]
    pub bfs_cap: u64,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct GaussArgs {
    #[arg(long)]
    pub q: u64,
    #[arg(long = "N")]
    #[serde(rename = "N")]
    pub big_n: u64,
    #[arg(long)]
    pub n: u64,
    /// Prime for the membership test
    #[arg(long)]
    pub l: Option<u64>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct HodgeArgs {
    #[arg(long)]
    pub n: u64,
    #[arg(long = "N")]
    #[serde(rename = "N")]
    pub big_n: u64,
    /// A single unit twist; all units when omitted
    #[arg(long)]
    pub twist: Option<u64>,
    /// Weight rows for the ordinarity check, e.g. "0,0;1,0"
    #[arg(long, allow_hyphen_values = true)]
    pub weights: Option<String>,
    /// Valuations for the ordinarity check, e.g. "1,0" or "3/2,1/2"
    #[arg(long, allow_hyphen_values = true)]
    pub valuations: Option<String>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct PipelineArgs {
    #[arg(long)]
    pub n: u64,
    #[arg(long = "N")]
    #[serde(rename = "N")]
    pub big_n: u64,
    #[arg(long)]
    pub l: u64,
    #[arg(long)]
    pub lprime: u64,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    pub curve: Vec<i64>,
    /// Field for the Gauss-sum stage; smallest prime = 1 mod N avoiding l, l' when omitted
    #[arg(long)]
    pub q: Option<u64>,
    #[arg(long, default_value_t = 10_000)]
    pub budget: u64,
    #[arg(long, default_value_t = monodromy::DEFAULT_BFS_CAP)]
    pub bfs_cap: u64,
}

pub fn run(cmd: &Command, seed: u64) -> Out<Report> {
    let mut args = serde_json::to_value(cmd).expect("arguments serialize");
    let inner = args.get_mut(cmd.name()).map(Value::take).unwrap_or(Value::Null);
    let mut rep = Report::new(json!({ "name": cmd.name(), "args": inner, "seed": seed }));
    match cmd {
        Command::Params(a) => {
            params_checks(&mut rep, "", a.n, a.big_n)?;
        }
        Command::FindN(a) => find_n(&mut rep, a)?,
        Command::FindLprime(a) => find_lprime(&mut rep, a)?,
        Command::Monodromy(a) => {
            let b = eigenvalues(a.n, a.big_n, a.b.as_deref())?;
            monodromy_checks(&mut rep, "", a.n, a.big_n, a.l, &b, a.classify, a.bfs_cap, seed)?;
        }
        Command::Gauss(a) => {
            let (exp, b) = exponents_and_b(a.n, a.big_n)?;
            let ctx = GaussSumContext::for_order(a.q, a.big_n, 1)?;
            gauss_checks(&mut rep, "", &ctx, &exp, &b, a.l.as_slice())?;
        }
        Command::Hodge(a) => hodge(&mut rep, a)?,
        Command::Pipeline(a) => pipeline(&mut rep, a, seed)?,
    }
    Ok(rep)
}

fn validate_n(n: u64, big_n: u64) -> Out {
    if big_n.is_multiple_of(2) {
        return usage("N must be odd");
    }
    if n < 2 {
        return usage("n must be at least 2");
    }
    Ok(())
}

fn exponents_and_b(n: u64, big_n: u64) -> Out<(CharacterExponents, EigenvalueSet)> {
    validate_n(n, big_n)?;
    let exp = params::build_exponents(n, big_n)?;
    let b = params::derive_b_set(&exp)?;
    Ok((exp, b))
}

fn eigenvalues(n: u64, big_n: u64, given: Option<&[i64]>) -> Out<EigenvalueSet> {
    match given {
        Some(v) => {
            let b = EigenvalueSet::new(big_n, v)?;
            if b.len() as u64 != n {
                return usage(format!("--b has {} members but n = {n}", b.len()));
            }
            Ok(b)
        }
        None => Ok(exponents_and_b(n, big_n)?.1),
    }
}

fn alpha_json(s: AlphaStability) -> Value {
    match s {
        AlphaStability::StableOnlyByOne => json!({ "only_alpha_1": true }),
        AlphaStability::Witness(w) => json!({ "only_alpha_1": false, "witness": w }),
    }
}

fn params_checks(rep: &mut Report, prefix: &str, n: u64, big_n: u64) -> Out<(CharacterExponents, EigenvalueSet)> {
    let t = Instant::now();
    validate_n(n, big_n)?;
    let exp = params::build_exponents(n, big_n)?;
    if exp.small_n_warning {
        eprintln!("warning: N = {big_n} <= 100n + 100; results for this size are outside the large-N regime");
    }
    rep.push(
        format!("{prefix}exponents"),
        Status::Pass,
        json!({
            "entries": exp.entries,
            "case": exp.case.to_string(),
            "sum": exp.entries.iter().sum::<u64>(),
            "small_n_warning": exp.small_n_warning,
        }),
        t,
    );
    let t = Instant::now();
    let b = params::derive_b_set(&exp)?;
    let mut closed = params::closed_form_b_set(n, big_n);
    closed.sort_unstable();
    rep.push(
        format!("{prefix}b-set"),
        Status::from_bool(closed == b.members()),
        json!({ "members": b.members(), "closed_form": closed, "minus_stable": b.is_minus_stable() }),
        t,
    );
    let t = Instant::now();
    let stab = params::check_alpha_stability(&b);
    rep.push(
        format!("{prefix}alpha-stability"),
        Status::from_bool(stab == AlphaStability::StableOnlyByOne),
        alpha_json(stab),
        t,
    );
    Ok((exp, b))
}

fn find_n(rep: &mut Report, a: &FindNArgs) -> Out {
    let t = Instant::now();
    match params::find_n(a.l, a.s, &a.avoid) {
        Ok(r) => {
            let steps: Vec<Value> = r
                .steps
                .iter()
                .map(|s| {
                    json!({
                        "p": s.p, "a": s.a, "t": s.t, "M": s.m.to_string(),
                        "primes": s.primes.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                    })
                })
                .collect();
            rep.push(
                "find-n",
                Status::Pass,
                json!({ "N": r.n.to_string(), "order": r.r, "steps": steps, "transcript": r.transcript }),
                t,
            );
        }
        Err(e @ (Error::BudgetExceeded(_) | Error::CheckFailed(_))) => {
            rep.push("find-n", Status::Fail, json!({ "error": e.to_string() }), t);
        }
        Err(e) => return Err(e.into()),
    }
    Ok(())
}

/// a_p from a double loop over all (x, y), independent of the library count.
fn naive_ap(c: &EllipticCurveQ, p: u64) -> i64 {
    let p = p as i64;
    let [a1, a2, a3, a4, a6] = c.a.map(|v| v.rem_euclid(p));
    let mut count = 1;
    for x in 0..p {
        let rhs = ((x * x % p * x) % p + a2 * (x * x % p) + a4 * x + a6) % p;
        let lin = (a1 * x + a3) % p;
        for y in 0..p {
            if (y * y + lin * y - rhs).rem_euclid(p) == 0 {
                count += 1;
            }
        }
    }
    p + 1 - count
}

const RECOUNT_LIMIT: u64 = 20_000;

fn recount_check(rep: &mut Report, name: String, curve: &EllipticCurveQ, p: u64, ap: i64) {
    let t = Instant::now();
    if p > RECOUNT_LIMIT {
        rep.push(name, Status::Skipped, json!({ "reason": format!("{p} above recount limit {RECOUNT_LIMIT}") }), t);
        return;
    }
    let again = naive_ap(curve, p);
    rep.push(
        name,
        Status::from_bool(again == ap && again.rem_euclid(p as i64) != 0),
        json!({ "prime": p, "ap": ap, "recount": again }),
        t,
    );
}

fn unverified(rep: &mut Report, prefix: &str) {
    for c in params::UNVERIFIED_CONDITIONS {
        rep.push(
            format!("{prefix}{c}"),
            Status::Unverified,
            json!({ "reason": "not decidable by this tool" }),
            Instant::now(),
        );
    }
}

fn find_lprime(rep: &mut Report, a: &FindLprimeArgs) -> Out {
    let curve = EllipticCurveQ::from_slice(&a.curve)?;
    let t = Instant::now();
    match params::find_l_prime(a.big_n, a.l, a.n, &curve, a.budget) {
        Ok(r) => {
            let rejected: Vec<Value> = r
                .rejected
                .iter()
                .map(|x| {
                    json!({
                        "candidate": x.candidate,
                        "failed": x.failed.iter().map(|c| c.name()).collect::<Vec<_>>(),
                        "ap": x.ap,
                    })
                })
                .collect();
            rep.push(
                "find-lprime",
                Status::Pass,
                json!({ "l_prime": r.l_prime, "ap": r.ap, "bound": r.bound, "rejected": rejected }),
                t,
            );
            recount_check(rep, "ap-recount".into(), &curve, r.l_prime, r.ap);
            unverified(rep, "");
        }
        Err(e @ (Error::BudgetExceeded(_) | Error::CheckFailed(_))) => {
            rep.push("find-lprime", Status::Fail, json!({ "error": e.to_string() }), t);
        }
        Err(e) => return Err(e.into()),
    }
    Ok(())
}

fn matrix_json(m: &Matrix) -> Value {
    json!(m.to_rows())
}

fn classification_json(c: &ImageClassification) -> Value {
    let cert = match &c.certificate {
        Certificate::Form(m) => json!({ "form": matrix_json(m) }),
        Certificate::TraceField(tf) => json!({
            "trace_field_degree": tf.degree, "field_degree": tf.field_degree,
            "words": tf.words, "max_len": tf.max_len,
        }),
        Certificate::Order(o) => json!({ "order": o }),
        Certificate::None => Value::Null,
    };
    json!({
        "verdict": c.verdict.as_str(),
        "method": c.method.as_str(),
        "certificate": cert,
        "notes": c.notes,
    })
}

pub struct MonodromyOutcome {
    pub triple: MonodromyTriple,
    pub classification: Option<ImageClassification>,
}

/// The field F_{l^r}, r = ord_N(l), holding the N-th roots of unity.
pub fn monodromy_field(l: u64, big_n: u64) -> Out<FiniteField> {
    if !is_prime(l) {
        return usage(format!("l = {l} is not prime"));
    }
    if gcd(l, big_n) != 1 {
        return usage(format!("l = {l} divides N = {big_n}: no N-th roots of unity in characteristic l"));
    }
    let r = multiplicative_order(l, big_n)? as u32;
    Ok(FiniteField::build(l, r)?)
}

fn conjugation_check(rep: &mut Report, prefix: &str, t: &MonodromyTriple, seed: u64) {
    let start = Instant::now();
    let f = &t.field;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ f.order().rotate_left(17));
    let q = f.order();
    for attempt in 1..=64 {
        let rows: Vec<Vec<_>> = (0..t.n).map(|_| (0..t.n).map(|_| f.from_u64(rng.gen_range(0..q))).collect()).collect();
        let h = Matrix::from_rows(f, rows);
        let Some(hi) = h.inverse() else { continue };
        let conj = |g: &Matrix| hi.mul(g).mul(&h);
        let mut u = t.clone();
        u.g0 = conj(&t.g0);
        u.g1 = conj(&t.g1);
        u.ginf = conj(&t.ginf);
        let r = monodromy::verify_local_data(&u, &t.b);
        rep.push(
            format!("{prefix}conjugation-invariance"),
            Status::from_bool(r.all_pass() && u.g0.mul(&u.g1).mul(&u.ginf).is_identity()),
            json!({ "seed": seed, "attempts": attempt, "conjugator": matrix_json(&h), "failed": r.failed() }),
            start,
        );
        return;
    }
    rep.push(
        format!("{prefix}conjugation-invariance"),
        Status::Skipped,
        json!({ "reason": "no invertible sample" }),
        start,
    );
}

#[allow(clippy::too_many_arguments)]
fn monodromy_checks(
    rep: &mut Report,
    prefix: &str,
    n: u64,
    big_n: u64,
    l: u64,
    b: &EigenvalueSet,
    classify: bool,
    cap: u64,
    seed: u64,
) -> Out<MonodromyOutcome> {
    let field = monodromy_field(l, big_n)?;
    let t = Instant::now();
    let triple = monodromy::build_integral_pair(n as usize, big_n, &field, b)?;
    rep.push(
        format!("{prefix}triple"),
        Status::Pass,
        json!({
            "field": { "p": field.characteristic(), "degree": field.degree(), "modulus": field.modulus() },
            "zeta": field.digits(triple.zeta),
            "b": b.members(),
            "g0": matrix_json(&triple.g0),
            "g1": matrix_json(&triple.g1),
            "ginf": matrix_json(&triple.ginf),
        }),
        t,
    );
    let t = Instant::now();
    let local = monodromy::verify_local_data(&triple, b);
    for c in &local.checks {
        rep.push(format!("{prefix}{}", c.name), Status::from_bool(c.pass), json!({ "detail": c.detail }), t);
    }
    conjugation_check(rep, prefix, &triple, seed);
    let mut classification = None;
    if classify {
        let t = Instant::now();
        let c = monodromy::classify_image(&triple, cap);
        rep.push(
            format!("{prefix}classification"),
            Status::from_bool(c.verdict != Verdict::Undetermined),
            classification_json(&c),
            t,
        );
        let sl = monodromy::sl_order(n as u32, field.order());
        match c.bfs {
            Some(bfs) => {
                let ok = bfs.complete && (c.verdict != Verdict::FullSl || sl == Some(bfs.order as u128));
                rep.push(
                    format!("{prefix}bfs-order"),
                    Status::from_bool(ok),
                    json!({ "order": bfs.order, "complete": bfs.complete, "cap": bfs.cap, "sl_order": sl.map(|o| o.to_string()) }),
                    t,
                );
            }
            None => rep.push(
                format!("{prefix}bfs-order"),
                Status::Skipped,
                json!({ "reason": "not enumerated", "cap": cap, "sl_order": sl.map(|o| o.to_string()) }),
                t,
            ),
        }
        classification = Some(c);
    }
    Ok(MonodromyOutcome { triple, classification })
}

fn cyclo_json(x: &CyclotomicInt) -> Value {
    json!({ "conductor": x.conductor(), "coeffs": x.to_strings() })
}

fn gauss_checks(
    rep: &mut Report,
    prefix: &str,
    ctx: &GaussSumContext,
    exp: &CharacterExponents,
    b: &EigenvalueSet,
    primes: &[u64],
) -> Out {
    let big_n = ctx.modulus() as i64;
    let t = Instant::now();
    let mut signs = BTreeMap::new();
    let mut ok = true;
    for a in 1..big_n {
        match gauss::pairing_sign(ctx, a) {
            Ok(s) => {
                ok &= s == gauss::predicted_pairing_sign(ctx, a);
                signs.insert(a.to_string(), s);
            }
            Err(_) => ok = false,
        }
    }
    rep.push(format!("{prefix}pairing"), Status::from_bool(ok), json!({ "q": ctx.q(), "signs": signs }), t);

    let t = Instant::now();
    let fp = gauss::full_product_identity(ctx);
    rep.push(
        format!("{prefix}full-product"),
        Status::from_bool(fp.square_holds && fp.sign.is_some()),
        json!({
            "sign": fp.sign,
            "square_holds": fp.square_holds,
            "sign_deviation": fp.sign == Some(-1),
        }),
        t,
    );

    let t = Instant::now();
    let r = gauss::integral_product_check(ctx, exp, b)?;
    let cert = if r.holds {
        json!({ "lhs_height_bits": r.lhs.height_bits(), "conductor": r.lhs.conductor() })
    } else {
        json!({ "lhs": cyclo_json(&r.lhs), "rhs": cyclo_json(&r.rhs) })
    };
    rep.push(format!("{prefix}integral-product"), Status::from_bool(r.holds), cert, t);

    let t = Instant::now();
    let g = gauss::galois_invariance(ctx, b)?;
    rep.push(
        format!("{prefix}galois-invariance"),
        Status::from_bool(g.passes()),
        json!({
            "automorphisms": g.checked.len(),
            "failures": g.failures,
            "conjugation": g.conjugation.map(|(stable, fixed)| json!({ "minus_stable": stable, "fixed": fixed })),
        }),
        t,
    );

    let t = Instant::now();
    let perm = gauss::galois_permutes_gauss_sums(ctx)?;
    rep.push(format!("{prefix}galois-permutation"), Status::from_bool(perm), Value::Null, t);

    let t = Instant::now();
    let psi = gauss::psi_independence(ctx, exp, b)?;
    rep.push(
        format!("{prefix}psi-independence"),
        Status::from_bool(psi.scalars_agree),
        json!({ "exponents": [psi.exponents.0, psi.exponents.1], "single_sum_differs": psi.single_sum_differs }),
        t,
    );

    for &l in primes {
        let t = Instant::now();
        let name = format!("{prefix}membership[l={l}]");
        match gauss::frobenius_det_membership(ctx, exp, b, l) {
            Ok(m) => {
                let target = FiniteField::build(l, m.target_degree)?;
                rep.push(
                    name,
                    Status::from_bool(m.member && m.orders_agree),
                    json!({
                        "l": l,
                        "target_degree": m.target_degree,
                        "image": target.digits(m.image),
                        "member": m.member,
                        "orders_agree": m.orders_agree,
                        "determinant": cyclo_json(&m.determinant),
                        "integrality": true,
                        "interpretation": m.interpretation,
                    }),
                    t,
                );
            }
            Err(e @ Error::IntegralityViolated(_)) => {
                rep.push(name, Status::Fail, json!({ "integrality": false, "error": e.to_string() }), t);
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(())
}

fn parse_ordinarity(weights: &str, valuations: &str) -> Out<OrdinarityInstance> {
    let bad = |what: &str| CliError::Usage(format!("cannot parse {what}"));
    let weights = weights
        .split(';')
        .map(|row| row.split(',').map(|x| x.trim().parse::<i64>().map_err(|_| bad("--weights"))).collect())
        .collect::<Out<Vec<Vec<i64>>>>()?;
    let valuations = valuations
        .split(',')
        .map(|x| x.trim().parse::<Rational64>().map_err(|_| bad("--valuations")))
        .collect::<Out<Vec<_>>>()?;
    Ok(OrdinarityInstance { weights, valuations })
}

fn hodge_checks(rep: &mut Report, prefix: &str, exp: &CharacterExponents, b: &EigenvalueSet, twists: &[u64]) -> Out {
    let big_n = exp.modulus;
    for &a in twists {
        let t = Instant::now();
        match hodge::hodge_positions(exp, b, a) {
            Ok(p) => {
                let positions: BTreeMap<String, i64> = p.positions.iter().map(|(k, v)| (k.to_string(), *v)).collect();
                let consecutive = p.offset_sum() as u64 == b.len() as u64 * (b.len() as u64 - 1) / 2;
                rep.push(
                    format!("{prefix}profile[a={a}]"),
                    Status::from_bool(consecutive),
                    json!({ "M": p.base, "positions": positions, "j": p.j }),
                    t,
                );
            }
            Err(e @ Error::CheckFailed(_)) => {
                rep.push(format!("{prefix}profile[a={a}]"), Status::Fail, json!({ "error": e.to_string() }), t);
            }
            Err(e) => return Err(e.into()),
        }
        let t = Instant::now();
        let same = hodge::duality_positions_match(exp, b, a)?;
        if b.len() == 2 {
            rep.push(
                format!("{prefix}duality[a={a}]"),
                Status::from_bool(same),
                json!({ "twist": a, "negated": big_n - a }),
                t,
            );
        } else {
            rep.push(
                format!("{prefix}duality[a={a}]"),
                Status::Skipped,
                json!({ "match": same, "reason": "recorded only for n > 2" }),
                t,
            );
        }
    }
    Ok(())
}

fn hodge(rep: &mut Report, a: &HodgeArgs) -> Out {
    let (exp, b) = exponents_and_b(a.n, a.big_n)?;
    let twists: Vec<u64> = match a.twist {
        Some(x) if gcd(x % a.big_n, a.big_n) != 1 => return usage(format!("twist {x} is not a unit mod {}", a.big_n)),
        Some(x) => vec![x % a.big_n],
        None => (1..a.big_n).filter(|&x| gcd(x, a.big_n) == 1).collect(),
    };
    hodge_checks(rep, "", &exp, &b, &twists)?;
    match (&a.weights, &a.valuations) {
        (Some(w), Some(v)) => {
            let t = Instant::now();
            let inst = parse_ordinarity(w, v)?;
            let ord = hodge::ordinary_predicate(&inst)?;
            rep.push(
                "ordinarity",
                Status::from_bool(ord),
                json!({ "weights": inst.weights, "valuations": inst.valuations.iter().map(|x| x.to_string()).collect::<Vec<_>>() }),
                t,
            );
        }
        (None, None) => {}
        _ => return usage("--weights and --valuations go together"),
    }
    Ok(())
}

/// Smallest odd prime q = 1 (mod N) outside `exclude`.
pub fn default_gauss_prime(big_n: u64, exclude: &[u64]) -> u64 {
    let mut q = next_prime(big_n + 1);
    while q % big_n != 1 || exclude.contains(&q) || q == 2 {
        q = next_prime(q + 1);
    }
    q
}

fn pipeline(rep: &mut Report, a: &PipelineArgs, seed: u64) -> Out {
    let (exp, b) = params_checks(rep, "params/", a.n, a.big_n)?;
    let curve = EllipticCurveQ::from_slice(&a.curve)?;
    if !is_prime(a.lprime) || a.lprime == 2 {
        return usage(format!("l' = {} is not an odd prime", a.lprime));
    }
    if a.lprime == a.l {
        return usage("l and l' must differ");
    }

    // The given l' against each condition, then the search for comparison.
    let lp = a.lprime;
    let t = Instant::now();
    rep.push(
        "lprime/l' = 1 mod N",
        Status::from_bool(lp % a.big_n == 1),
        json!({ "l_prime": lp, "residue": lp % a.big_n }),
        t,
    );
    let bound = 2 * a.l * a.n + 5;
    rep.push("lprime/l' > 2ln+5", Status::from_bool(lp > bound), json!({ "l_prime": lp, "bound": bound }), t);
    let good = curve.has_good_reduction(lp);
    rep.push("lprime/good reduction", Status::from_bool(good), json!({ "l_prime": lp }), t);
    if good {
        let ap = params::count_points_ap(&curve, lp)?;
        rep.push(
            "lprime/ordinary",
            Status::from_bool(params::is_ordinary(ap, lp)),
            json!({ "l_prime": lp, "ap": ap }),
            t,
        );
        recount_check(rep, "lprime/ap-recount".into(), &curve, lp, ap);
    }
    unverified(rep, "lprime/");
    let t = Instant::now();
    match params::find_l_prime(a.big_n, a.l, a.n, &curve, a.budget) {
        Ok(r) => rep.push(
            "lprime/search",
            Status::Pass,
            json!({ "smallest_valid": r.l_prime, "ap": r.ap, "bound": r.bound, "given": lp }),
            t,
        ),
        Err(e @ Error::BudgetExceeded(_)) => {
            rep.push("lprime/search", Status::Fail, json!({ "error": e.to_string() }), t)
        }
        Err(e) => return Err(e.into()),
    }

    let m1 = monodromy_checks(rep, &format!("monodromy[l={}]/", a.l), a.n, a.big_n, a.l, &b, true, a.bfs_cap, seed)?;
    let m2 = monodromy_checks(rep, &format!("monodromy[l'={lp}]/"), a.n, a.big_n, lp, &b, true, a.bfs_cap, seed)?;

    let t = Instant::now();
    let (c1, c2) = (m1.classification.unwrap(), m2.classification.unwrap());
    match monodromy::product_goursat_check(a.n as u32, &c1, &m1.triple.field, &c2, &m2.triple.field) {
        Ok(v) => {
            let product = v.psl_orders.0.checked_mul(v.psl_orders.1);
            rep.push(
                "goursat",
                Status::from_bool(v.surjective),
                json!({
                    "surjective": v.surjective,
                    "psl_orders": [v.psl_orders.0.to_string(), v.psl_orders.1.to_string()],
                    "note": v.note,
                    "psl_product": product.map(|x| x.to_string()),
                }),
                t,
            );
        }
        Err(e @ Error::Hypothesis(_)) => rep.push("goursat", Status::Fail, json!({ "error": e.to_string() }), t),
        Err(e) => return Err(e.into()),
    }

    let q = match a.q {
        Some(q) => q,
        None => default_gauss_prime(a.big_n, &[a.l, lp]),
    };
    let ctx = GaussSumContext::for_order(q, a.big_n, 1)?;
    if a.l == ctx.p() || lp == ctx.p() {
        return usage(format!("q = {q} must be prime to l and l'"));
    }
    gauss_checks(rep, &format!("gauss[q={q}]/"), &ctx, &exp, &b, &[a.l, lp])?;

    let twists: Vec<u64> = (1..a.big_n).filter(|&x| gcd(x, a.big_n) == 1).collect();
    hodge_checks(rep, "hodge/", &exp, &b, &twists)?;
    let t = Instant::now();
    rep.push(
        "hodge/ordinarity",
        Status::Skipped,
        json!({ "reason": "needs Frobenius valuations; supply them to `hodge --weights --valuations`" }),
        t,
    );
    Ok(())
}
