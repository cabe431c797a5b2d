use serde_json::{json, Value};
use weylkit::cosets::{block_embed, coset_matrix, is_in_W_IJ, min_double_coset_reps, modulus_exponents, partition_of};
use weylkit::ext::{self, ExtStatus, Flavor};
use weylkit::segments::{
    fmt_rational, jacquet_decomposition, jh_factors, orientation_of, pi_base_twists, pi_i_segments, Orientation,
};
use weylkit::steinberg::{
    self, analytic_tits_euler_check_in, candidate_elements, enumerate_constituents_in, is_admissible,
    smooth_tits_euler_check, steinberg_multiplicity_in, FormalComplex,
};
use weylkit::{selftest, BlockSet, KLPolynomial, KlTable, MultiWeylElement, Permutation, SimpleRootSet};

use crate::{Cli, Cmd, ExtKind, Failure, Level, TitsKind};

type Out = Result<Value, Failure>;

fn rank_of(n: Option<usize>, w: &str) -> Result<usize, Failure> {
    match n {
        Some(n) => Ok(n),
        None => Ok(Permutation::parse(w.split(';').next().unwrap_or(w), None)?.n()),
    }
}

fn set_list(s: &SimpleRootSet) -> Value {
    json!(s.to_string())
}

pub fn run(cli: &Cli) -> Out {
    let verbose = cli.verbose;
    let parallel = cli.parallel.is_some();
    let table = KlTable::global();
    match &cli.cmd {
        Cmd::Weyl { n, w, x } => {
            let w = MultiWeylElement::parse(w, *n)?;
            let comps: Vec<Value> = w
                .components()
                .iter()
                .map(|c| {
                    json!({
                        "w": c.to_string(),
                        "length": c.length(),
                        "reduced_word": c.reduced_word(),
                        "descents_left": set_list(&c.descents_left()),
                        "descents_right": set_list(&c.descents_right()),
                        "ascents_left": set_list(&c.ascents_left()),
                        "support": set_list(&c.support()),
                        "inverse": c.inverse().to_string(),
                    })
                })
                .collect();
            let mut out = json!({
                "w": w.to_string(),
                "length": w.length(),
                "ascents_union": set_list(&w.ascent_union()),
                "ascents_intersection": set_list(&w.ascent_intersection()),
                "components": comps,
            });
            if let Some(x) = x {
                let x = MultiWeylElement::parse(x, Some(w.n()))?;
                let leq = x.bruhat_leq(&w)?;
                if verbose {
                    eprintln!("{x} {} {w} in Bruhat order", if leq { "<=" } else { "is not <=" });
                }
                out["x"] = json!(x.to_string());
                out["bruhat_leq"] = json!(leq);
            }
            if verbose {
                for c in w.components() {
                    let word: Vec<String> = c.reduced_word().iter().map(|a| format!("s{a}")).collect();
                    eprintln!("{c} = {} (length {})", if word.is_empty() { "e".into() } else { word.join("*") }, c.length());
                }
            }
            Ok(out)
        }
        Cmd::Cosets { n, r, k, i, j } => match (n, r, k) {
            (Some(n), None, None) => {
                let (iset, jset) = (SimpleRootSet::parse(i, *n)?, SimpleRootSet::parse(j, *n)?);
                let reps = min_double_coset_reps(*n, &iset, &jset)?;
                let list = reps
                    .iter()
                    .map(|w| Ok(json!({ "w": w.to_string(), "matrix": coset_matrix(w, &iset, &jset)? })))
                    .collect::<Result<Vec<Value>, Failure>>()?;
                if verbose {
                    eprintln!("{} double cosets W_{iset} \\ S_{n} / W_{jset}", reps.len());
                }
                Ok(json!({ "n": n, "I": iset.to_string(), "J": jset.to_string(), "count": reps.len(), "reps": list }))
            }
            (None, Some(r), Some(k)) => {
                let (iset, jset) = (BlockSet::parse(i, *r, *k)?, BlockSet::parse(j, *r, *k)?);
                let mut members = Vec::new();
                for w in weylkit::weyl::enumerate_group(r * k)? {
                    if is_in_W_IJ(&w, &iset, &jset)? {
                        members.push(w);
                    }
                }
                let embedded: Vec<String> = weylkit::weyl::enumerate_group(*k)?
                    .iter()
                    .map(|u| block_embed(u, *r).to_string())
                    .collect();
                Ok(json!({
                    "r": r, "k": k, "I": iset.to_string(), "J": jset.to_string(),
                    "partition_I": partition_of(&iset).parts,
                    "partition_J": partition_of(&jset).parts,
                    "modulus_I": modulus_exponents(&iset),
                    "modulus_J": modulus_exponents(&jset),
                    "count": members.len(),
                    "W_IJ": members.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
                    "block_embedding": embedded,
                }))
            }
            _ => Err(Failure::Input("give either --n, or both --r and --k".into())),
        },
        Cmd::Kl { n, x, w } => {
            let n = rank_of(*n, w)?;
            let (x, w) = (Permutation::parse(x, Some(n))?, Permutation::parse(w, Some(n))?);
            let p: KLPolynomial = table.poly(&x, &w)?;
            if verbose {
                eprintln!("P_{{{x},{w}}} = {p}");
            }
            Ok(serde_json::to_value(&p).expect("polynomial serializes"))
        }
        Cmd::Mult { r, k, d_l, w, wprime, kset } => {
            let n = r * k;
            let w = MultiWeylElement::parse(w, Some(n))?;
            check_d(&w, *d_l)?;
            match wprime {
                Some(wp) => {
                    let wp = MultiWeylElement::parse(wp, Some(n))?;
                    check_d(&wp, *d_l)?;
                    let m = table.verma_mult(&wp, &w)?;
                    Ok(json!({ "wprime": wp.to_string(), "w": w.to_string(), "m": m }))
                }
                None => {
                    let kset = BlockSet::parse(kset, *r, *k)?;
                    let m = table.parabolic_verma_mult(&kset, &w)?;
                    Ok(json!({ "K": kset.to_string(), "w": w.to_string(), "m": m }))
                }
            }
        }
        Cmd::SteinbergMult { r, k, d_l, s, j, w, max_len } => {
            let n = r * k;
            let sset = BlockSet::parse(s, *r, *k)?;
            let label = |w: &MultiWeylElement, j: &BlockSet, m: i64| {
                json!({ "w": w.to_string(), "J": j.to_string(), "S": sset.to_string(), "m": m })
            };
            match (w, j) {
                (Some(w), j) => {
                    let w = MultiWeylElement::parse(w, Some(n))?;
                    let jset = BlockSet::parse(j.as_deref().unwrap_or("-"), *r, *k)?;
                    let m = steinberg_multiplicity_in(table, &w, &jset, &sset, *r, *k, *d_l)?;
                    Ok(label(&w, &jset, m))
                }
                (None, Some(j)) => {
                    let jset = BlockSet::parse(j, *r, *k)?;
                    let max_len = steinberg::resolve_max_len(n, *d_l, *max_len)?;
                    let need = sset.levi_roots();
                    let mut results = Vec::new();
                    for w in candidate_elements(n, *d_l, max_len, |p| need.is_subset(&p.ascents_left()))? {
                        if is_admissible(&w, &jset, &sset) {
                            let m = steinberg_multiplicity_in(table, &w, &jset, &sset, *r, *k, *d_l)?;
                            if verbose {
                                eprintln!("m({w}, {jset}, {sset}) = {m}");
                            }
                            results.push(label(&w, &jset, m));
                        }
                    }
                    Ok(json!({ "r": r, "k": k, "dL": d_l, "S": sset.to_string(), "J": jset.to_string(), "results": results }))
                }
                (None, None) => {
                    let found = enumerate_constituents_in(table, &sset, *d_l, *max_len, parallel)?;
                    if verbose {
                        for (l, m) in &found {
                            eprintln!("{l}: {m}");
                        }
                    }
                    let list: Vec<Value> = found.iter().map(|(l, m)| label(&l.w, &l.j, *m)).collect();
                    Ok(json!({ "r": r, "k": k, "dL": d_l, "S": sset.to_string(), "count": list.len(), "constituents": list }))
                }
            }
        }
        Cmd::Jh { r, k } => {
            let f = jh_factors(*r, *k)?;
            let list: Vec<Value> = f
                .iter()
                .map(|i| {
                    let o = Orientation { arrows: (1..*k).map(|a| i.contains(a)).collect() };
                    json!({ "I": i.to_string(), "orientation": o.to_string() })
                })
                .collect();
            Ok(json!({ "r": r, "k": k, "count": f.len(), "factors": list }))
        }
        Cmd::Segments { r, k, i } => {
            let iset = BlockSet::parse(i, *r, *k)?;
            let segs: Vec<Value> = pi_i_segments(&iset)
                .iter()
                .map(|s| json!({ "len": s.block_length, "twist": fmt_rational(&s.twist) }))
                .collect();
            let base: Vec<String> = pi_base_twists(*r, *k).exponents.iter().map(fmt_rational).collect();
            Ok(json!({
                "r": r, "k": k, "I": iset.to_string(),
                "partition": partition_of(&iset).parts,
                "modulus": modulus_exponents(&iset),
                "base_twists": base,
                "segments": segs,
            }))
        }
        Cmd::Jacquet { r, k } => {
            let list: Vec<Value> = jacquet_decomposition(*r, *k)?
                .iter()
                .map(|(w, t)| {
                    json!({
                        "w": w.to_string(),
                        "orientation": orientation_of(w).to_string(),
                        "exponents": t.exponents.iter().map(fmt_rational).collect::<Vec<_>>(),
                    })
                })
                .collect();
            Ok(json!({ "r": r, "k": k, "count": list.len(), "tuples": list }))
        }
        Cmd::TitsCheck { kind, r, k, d_l, base, max_len } => {
            let bases = match base {
                Some(b) => vec![BlockSet::parse(b, *r, *k)?],
                None => BlockSet::all_subsets(*r, *k),
            };
            let mut results = Vec::new();
            let mut all = true;
            for b in &bases {
                let v = match kind {
                    TitsKind::Smooth => {
                        let ok = smooth_tits_euler_check(b) && FormalComplex::tits(b).squares_to_zero();
                        all &= ok;
                        json!({ "I": b.to_string(), "ok": ok })
                    }
                    TitsKind::Analytic => {
                        let ok = analytic_tits_euler_check_in(table, b, *d_l, *max_len)?;
                        all &= ok;
                        json!({ "S": b.to_string(), "ok": ok })
                    }
                };
                results.push(v);
            }
            let kind = match kind {
                TitsKind::Smooth => "smooth",
                TitsKind::Analytic => "analytic",
            };
            Ok(json!({ "kind": kind, "r": r, "k": k, "dL": d_l, "ok": all, "results": results }))
        }
        Cmd::ExtDim { kind, fixed_center, degree, left, right, r, k, d_l } => {
            let q = ext::ExtQuery {
                flavor: match kind {
                    ExtKind::Smooth => Flavor::Smooth,
                    ExtKind::Analytic => Flavor::Analytic,
                },
                fixed_center: *fixed_center,
                degree: *degree,
                left: ext::RepDescriptor::parse(left, *r, *k)?,
                right: ext::RepDescriptor::parse(right, *r, *k)?,
                params: ext::Params::new(*r, *k, *d_l)?,
            };
            let a = ext::ext_dim(&q)?;
            if verbose {
                eprintln!("Ext^{degree}({}, {}) : {:?} [{}]", q.left, q.right, a.status, a.citation);
            }
            Ok(match a.status {
                ExtStatus::Dimension(d) => json!({ "dim": d, "cite": a.citation }),
                ExtStatus::ZeroByRule => json!({ "dim": 0, "zero_by_rule": true, "cite": a.citation }),
                ExtStatus::NotDetermined => json!({ "status": "not-determined" }),
            })
        }
        Cmd::Selftest { level, seed_kl_fault } => {
            let local;
            let t = match seed_kl_fault {
                Some(spec) => {
                    local = KlTable::new();
                    let parts: Vec<&str> = spec.split_whitespace().collect();
                    let [x, w, c] = parts[..] else {
                        return Err(Failure::Input("--seed-kl-fault expects \"X W c0,c1,...\"".into()));
                    };
                    let x = Permutation::parse(x, None)?;
                    let w = Permutation::parse(w, Some(x.n()))?;
                    let coeffs = c
                        .split(',')
                        .map(|v| v.trim().parse::<i64>())
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|_| Failure::Input(format!("bad coefficients {c:?}")))?;
                    local.inject_fault(&x, &w, KLPolynomial::from_coeffs(coeffs));
                    &local
                }
                None => table,
            };
            let level = match level {
                Level::Quick => selftest::Level::Quick,
                Level::Full => selftest::Level::Full,
            };
            let report = selftest::run(level, t);
            if verbose {
                for s in &report.suites {
                    eprintln!("{:<10} {} ({} checks, {} ms)", s.name, if s.pass { "pass" } else { "FAIL" }, s.checks, s.millis);
                    for f in &s.failures {
                        eprintln!("    {f}");
                    }
                }
            }
            let v = serde_json::to_value(&report).expect("report serializes");
            if report.pass {
                Ok(v)
            } else {
                Err(Failure::SelftestFailed(v))
            }
        }
    }
}

fn check_d(w: &MultiWeylElement, d: usize) -> Result<(), Failure> {
    if w.d() != d {
        return Err(Failure::Input(format!("{w} has {} components, expected d_L={d}", w.d())));
    }
    Ok(())
}
