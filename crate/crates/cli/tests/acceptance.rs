//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::process::Command;
use std::time::{Duration, Instant};

use dwork_core::arith::primes::{gcd, prime_powers_below};
use dwork_core::arith::FiniteField;
use dwork_core::gauss::{self, GaussSumContext};
use dwork_core::hodge;
use dwork_core::monodromy::{self, SesquilinearForm, Verdict, DEFAULT_BFS_CAP};
use dwork_core::params::{self, AlphaStability, EigenvalueSet, EllipticCurveQ};

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, Duration, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn grid_fields(modulus: u64, limit: u64) -> Vec<FiniteField> {
    prime_powers_below(limit)
        .into_iter()
        .filter(|&(p, k)| (p.pow(k) - 1) % modulus == 0)
        .map(|(p, k)| FiniteField::build(p, k).unwrap())
        .collect()
}

fn local_data_grid() -> Outcome {
    let (mut cases, mut fallback, mut empty) = (0, 0, 0);
    for n in 2..=6u64 {
        for modulus in [5u64, 7, 11, 13] {
            let Some((b, derived)) = params::grid_b_set(n, modulus) else {
                empty += 1;
                continue;
            };
            if !derived {
                fallback += 1;
            }
            for f in grid_fields(modulus, 10_000) {
                let t = monodromy::build_integral_pair(n as usize, modulus, &f, &b)
                    .map_err(|e| format!("n={n} N={modulus} q={}: {e}", f.order()))?;
                let r = monodromy::verify_local_data(&t, &b);
                ensure(r.all_pass(), format!("n={n} N={modulus} q={}: {:?}", f.order(), r.failed()))?;
                cases += 1;
            }
        }
    }
    Ok(format!(
        "{cases} (n, N, q) cases; {fallback} (n, N) pairs on the balanced fallback set, {empty} with no n-subset"
    ))
}

fn full_sl_orders() -> Outcome {
    let mut notes = Vec::new();
    for (modulus, q, want) in [(5u64, 11u64, 1320u64), (7, 29, 24360)] {
        let f = FiniteField::build(q, 1).unwrap();
        let (b, _) = params::grid_b_set(2, modulus).unwrap();
        let t = monodromy::build_integral_pair(2, modulus, &f, &b).map_err(|e| e.to_string())?;
        let gens = t.generators();
        let c = monodromy::classify_image(&t, DEFAULT_BFS_CAP);
        let bfs = c.bfs.ok_or("no BFS certificate")?;
        ensure(bfs.complete && bfs.order == want, format!("q={q}: BFS order {} != {want}", bfs.order))?;
        ensure(c.verdict == Verdict::FullSl, format!("q={q}: verdict {}", c.verdict.as_str()))?;
        // exclusion route, step by step
        ensure(monodromy::absolutely_irreducible(&gens), "not absolutely irreducible")?;
        ensure(
            matches!(monodromy::invariant_sesquilinear_form(&gens), SesquilinearForm::NoQuadraticSubfield),
            "unexpected sesquilinear form",
        )?;
        ensure(!monodromy::trace_field(&gens, 3).is_proper(), "proper trace field")?;
        let bil = monodromy::invariant_bilinear_form(&gens);
        ensure(bil.dimension == 1 && bil.alternating.is_some(), "SL_2 form missing")?;
        notes.push(format!("q={q}: {want}"));
    }
    Ok(format!("{}; the only bilinear form is SL_2's own alternating form (Sp_2 = SL_2)", notes.join(", ")))
}

fn symplectic_control() -> Outcome {
    let f = FiniteField::build(2, 3).unwrap();
    let b = EigenvalueSet::new(7, &[1, 6, 2, 5]).map_err(|e| e.to_string())?;
    let t = monodromy::build_integral_pair(4, 7, &f, &b).map_err(|e| e.to_string())?;
    let form = monodromy::invariant_bilinear_form(&t.generators());
    let m = form.alternating.ok_or("no alternating form for {1,6,2,5}")?;
    for g in t.generators() {
        ensure(g.transpose().mul(&m).mul(&g) == m, "form not invariant")?;
    }
    let mut negatives = 0;
    for (n, modulus) in [(3u64, 7u64), (3, 11), (4, 11), (5, 11), (5, 13)] {
        let Ok(exp) = params::build_exponents(n, modulus) else { continue };
        let b = params::derive_b_set(&exp).map_err(|e| e.to_string())?;
        ensure(!b.is_minus_stable(), format!("({n},{modulus}) minus-stable"))?;
        let f = grid_fields(modulus, 10_000).into_iter().find(|f| f.degree() == 1).unwrap();
        let t = monodromy::build_integral_pair(n as usize, modulus, &f, &b).map_err(|e| e.to_string())?;
        let form = monodromy::invariant_bilinear_form(&t.generators());
        ensure(form.alternating.is_none(), format!("({n},{modulus}) has an alternating form"))?;
        negatives += 1;
    }
    Ok(format!("alternating form found for {{1,6,2,5}}; none for {negatives} non-minus-stable sets"))
}

fn peak_rss_mb() -> Option<f64> {
    let status = std::fs::read_to_string("/proc/self/status").ok()?;
    let line = status.lines().find(|l| l.starts_with("VmHWM:"))?;
    let kb: f64 = line.split_whitespace().nth(1)?.parse().ok()?;
    Some(kb / 1024.0)
}

fn goursat_product() -> Outcome {
    let b = EigenvalueSet::new(3, &[1, 2]).unwrap();
    let f7 = FiniteField::build(7, 1).unwrap();
    let f13 = FiniteField::build(13, 1).unwrap();
    let t7 = monodromy::build_integral_pair(2, 3, &f7, &b).map_err(|e| e.to_string())?;
    let t13 = monodromy::build_integral_pair(2, 3, &f13, &b).map_err(|e| e.to_string())?;
    let c7 = monodromy::classify_image(&t7, DEFAULT_BFS_CAP);
    let c13 = monodromy::classify_image(&t13, DEFAULT_BFS_CAP);
    let v = monodromy::product_goursat_check(2, &c7, &f7, &c13, &f13).map_err(|e| e.to_string())?;
    let bfs = monodromy::bfs_product_order(&t7, &t13, 2_000_000);
    ensure(bfs.complete && bfs.order == 733_824, format!("product order {}", bfs.order))?;
    ensure(v.surjective, "deduction says not surjective")?;
    let rss = peak_rss_mb().unwrap_or(f64::NAN);
    ensure(rss.is_nan() || rss <= 2048.0, format!("peak RSS {rss:.0} MB"))?;
    Ok(format!("order 733824 = 336 * 2184, deduction agrees ({}); peak RSS {rss:.0} MB", v.note))
}

fn gauss_identities() -> Outcome {
    for (modulus, q) in [(5u64, 11u64), (7, 29)] {
        let ctx = GaussSumContext::for_order(q, modulus, 1).map_err(|e| e.to_string())?;
        let exp = params::build_exponents(2, modulus).unwrap();
        let b = params::derive_b_set(&exp).unwrap();
        ensure(
            gauss::integral_product_check(&ctx, &exp, &b).map_err(|e| e.to_string())?.holds,
            format!("integral product at q={q}"),
        )?;
        let g = gauss::galois_invariance(&ctx, &b).map_err(|e| e.to_string())?;
        ensure(g.passes() && g.checked.len() as u64 == q - 1, format!("galois at q={q}"))?;
        ensure(gauss::galois_permutes_gauss_sums(&ctx).map_err(|e| e.to_string())?, "permutation")?;
        let psi = gauss::psi_independence(&ctx, &exp, &b).map_err(|e| e.to_string())?;
        ensure(psi.scalars_agree, format!("psi at q={q}"))?;
    }
    let (mut contexts, mut pairs, mut negative) = (0, 0, 0);
    for modulus in [5u64, 7, 11, 13] {
        for (p, k) in prime_powers_below(201) {
            if p == 2 || (p.pow(k) - 1) % modulus != 0 {
                continue;
            }
            let ctx = GaussSumContext::new(p, k, modulus, 1).unwrap();
            for a in 1..modulus as i64 {
                let s = gauss::pairing_sign(&ctx, a).map_err(|e| e.to_string())?;
                ensure(s == gauss::predicted_pairing_sign(&ctx, a), format!("sign q={} a={a}", ctx.q()))?;
                if s < 0 {
                    negative += 1;
                }
                pairs += 1;
            }
            contexts += 1;
        }
    }
    Ok(format!(
        "integral product, Galois and psi checks at q=11, 29; pairing over {contexts} contexts, {pairs} pairs, {negative} with sign -1"
    ))
}

fn membership() -> Outcome {
    let mut runs = 0;
    for (n, modulus, q) in [(2u64, 5u64, 11u64), (2, 7, 29), (2, 11, 23), (2, 13, 53), (3, 11, 23), (4, 11, 67)] {
        let exp = params::build_exponents(n, modulus).map_err(|e| e.to_string())?;
        let b = params::derive_b_set(&exp).unwrap();
        let ctx = GaussSumContext::for_order(q, modulus, 1).unwrap();
        for l in [19u64, 29] {
            if l == ctx.p() {
                continue;
            }
            let r = gauss::frobenius_det_membership(&ctx, &exp, &b, l)
                .map_err(|e| format!("(n={n}, N={modulus}, q={q}, l={l}): {e}"))?;
            ensure(r.member && r.orders_agree, format!("(n={n}, N={modulus}, q={q}, l={l}) not a member"))?;
            runs += 1;
        }
    }
    Ok(format!("{runs} runs, all members, exact q-power division in every run"))
}

fn hodge_profiles() -> Outcome {
    let mut profiles = 0;
    for n in 2..=6u64 {
        for modulus in [5u64, 7, 11, 13] {
            let Ok(exp) = params::build_exponents(n, modulus) else { continue };
            let b = params::derive_b_set(&exp).unwrap();
            for a in (1..modulus).filter(|&a| gcd(a, modulus) == 1) {
                let p = hodge::hodge_positions(&exp, &b, a).map_err(|e| e.to_string())?;
                ensure(p.offset_sum() as u64 == n * (n - 1) / 2, "offsets")?;
                ensure(hodge::j_recursion(&exp, a, p.base) == p.j, "recursion")?;
                let mut v: Vec<i64> = p.positions.values().copied().collect();
                v.sort_unstable();
                ensure(v == (p.base..p.base + n as i64).collect::<Vec<_>>(), "positions not consecutive")?;
                profiles += 1;
            }
        }
    }
    let exp = params::build_exponents(2, 5).unwrap();
    let b = params::derive_b_set(&exp).unwrap();
    let p = hodge::hodge_positions(&exp, &b, 1).unwrap();
    ensure(p.base == 1 && p.positions.values().copied().collect::<Vec<_>>() == [1, 2], "worked case")?;
    Ok(format!("{profiles} twist profiles; worked case M=1, positions (1,2)"))
}

fn naive_order(a: u64, m: u64) -> u64 {
    let (mut x, mut k) = (a % m, 1);
    while x != 1 {
        x = x * a % m;
        k += 1;
    }
    k
}

fn naive_ap(c: &EllipticCurveQ, p: u64) -> i64 {
    let p = p as i64;
    let [a1, a2, a3, a4, a6] = c.a.map(|v| v.rem_euclid(p));
    let mut count = 1;
    for x in 0..p {
        for y in 0..p {
            let lhs = y * y + a1 * x * y + a3 * y;
            let rhs = x * x * x + a2 * x * x + a4 * x + a6;
            if (lhs - rhs).rem_euclid(p) == 0 {
                count += 1;
            }
        }
    }
    p + 1 - count
}

fn searches() -> Outcome {
    let r = params::find_n(3, 2, &[]).map_err(|e| e.to_string())?;
    ensure(r.n.to_string() == "205", format!("N = {}", r.n))?;
    let ord = naive_order(3, 205);
    ensure(ord == 8 && ord.is_multiple_of(2), format!("order {ord}"))?;
    ensure(!(3u64.pow(ord as u32 / 2) + 1).is_multiple_of(205), "205 divides 3^4 + 1")?;
    let e = EllipticCurveQ::new(0, 0, 1, -1, 0).unwrap();
    let lp = params::find_l_prime(5, 3, 2, &e, 10_000).map_err(|e| e.to_string())?;
    let ap = naive_ap(&e, lp.l_prime);
    ensure(lp.l_prime % 5 == 1 && lp.l_prime > 17, format!("l' = {}", lp.l_prime))?;
    ensure(ap == lp.ap && ap.rem_euclid(lp.l_prime as i64) != 0, format!("recount {ap} vs {}", lp.ap))?;
    Ok(format!("N = 205 (ord 8); l' = {} with a = {ap} on recount", lp.l_prime))
}

fn alpha_stability() -> Outcome {
    let b3 = params::derive_b_set(&params::build_exponents(3, 403).unwrap()).unwrap();
    ensure(params::check_alpha_stability(&b3) == AlphaStability::StableOnlyByOne, "n=3 not stable")?;
    let b2 = params::derive_b_set(&params::build_exponents(2, 403).unwrap()).unwrap();
    let w = params::check_alpha_stability(&b2);
    ensure(w == AlphaStability::Witness(402), format!("n=2 gave {w:?}"))?;
    Ok("n=3, N=403 stable under 360 units; n=2 witness 402".into())
}

fn determinism() -> Outcome {
    let args =
        ["pipeline", "--n", "2", "--N", "7", "--l", "29", "--lprime", "43", "--curve", "0,0,1,-1,0", "--no-timing"];
    let run = || Command::new(env!("CARGO_BIN_EXE_dwork")).args(args).output().map_err(|e| e.to_string());
    let a = run()?;
    let b = run()?;
    ensure(!a.stdout.is_empty(), "empty output")?;
    ensure(a.stdout == b.stdout, "outputs differ")?;
    ensure(a.status.code() == b.status.code(), "exit codes differ")?;
    serde_json::from_slice::<serde_json::Value>(&a.stdout).map_err(|e| e.to_string())?;
    Ok(format!("{} bytes identical, exit code {:?}", a.stdout.len(), a.status.code()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        (1, "local monodromy data on the grid", Duration::from_secs(30), local_data_grid),
        (2, "full-SL image by BFS and exclusion", Duration::from_secs(60), full_sl_orders),
        (3, "symplectic positive control", Duration::from_secs(60), symplectic_control),
        (4, "Goursat product over F_7 x F_13", Duration::from_secs(600), goursat_product),
        (5, "Gauss-sum identities", Duration::from_secs(300), gauss_identities),
        (6, "n-th power membership", Duration::from_secs(300), membership),
        (7, "Hodge profiles", Duration::from_secs(60), hodge_profiles),
        (8, "constructive searches", Duration::from_secs(60), searches),
        (9, "alpha-stability at N = 403", Duration::from_secs(60), alpha_stability),
        (10, "pipeline determinism", Duration::from_secs(120), determinism),
    ];
    let mut failed = 0;
    for (k, name, limit, f) in criteria {
        let t = Instant::now();
        let res = f();
        let el = t.elapsed();
        let res = match res {
            Ok(msg) if el > limit => Err(format!("{msg}; took {:.1} s, limit {} s", el.as_secs_f64(), limit.as_secs())),
            r => r,
        };
        match res {
            Ok(msg) => println!("PASS [{k}] {name}: {msg} ({:.2} s)", el.as_secs_f64()),
            Err(msg) => {
                failed += 1;
                println!("FAIL [{k}] {name}: {msg} ({:.2} s)", el.as_secs_f64());
            }
        }
    }
    println!("acceptance: {}/10 passed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
