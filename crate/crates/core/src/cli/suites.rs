//! The ten verification suites.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;
use sha2::{Digest, Sha256};

use super::config::SuiteConfig;
use super::report::{ensure, CaseReport, Expected};
use crate::branchfam::{
    self, kappa_family, kappa_lambda, kappa_lambda_j, sample_n_beta, v_lambda_j, v_lambda_j_product, w_chi, FamilyWeight,
    FiniteDistribution, LocFunction, Precision, PureWeight,
};
use crate::padic::scalar::congruent;
use crate::padic::{u_matrix, PadicMatrix};
use crate::perm::Perm;
use crate::princhecke::{hecke_apply, PSVector};
use crate::refine::{all_refinements, SatakeParameter};
use crate::rootspin::{
    gl_act, is_dominant, is_pure, jmap_weight, jmap_weyl, jvee_cochar, jvee_weyl, pairing, wg0_members, WeylGSpin,
};
use crate::shalikazeta::euler::{expected_comparison, unramified_ratio};
use crate::shalikazeta::support::{
    borel_part_character, expected_borel_torus, opposite_cells_disjoint, sample_gl_zp, sample_off_cell, sample_positive,
    sample_x, shalika_support_predicate, support_by_cell, unramified_character,
};
use crate::shalikazeta::zeta::{w_value_for_refinement, w_value_closed};
use crate::shalikazeta::{
    ag_intertwine_value, comparison_constant, ep_factor, qprime_factor, shalika_test_vector, zeta_iwahori_closed,
    zeta_iwahori_oracle, zeta_parahoric_closed, zeta_parahoric_oracle, TwistCharacter,
};
use crate::symring::{Q, SymElem};

type Check = std::result::Result<(), String>;

fn e2s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// One RNG stream per suite and configuration label.
pub fn suite_rng(seed: u64, label: &str) -> ChaCha8Rng {
    let mut h = Sha256::new();
    h.update(seed.to_le_bytes());
    h.update(label.as_bytes());
    let d = h.finalize();
    ChaCha8Rng::from_seed(d.into())
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

pub fn spin_enum(cfg: &SuiteConfig) -> Vec<CaseReport> {
    let p = cfg.primes[0];
    let mut out = Vec::new();
    for n in 1..=cfg.n.min(3) {
        let s = SatakeParameter::generic_ag(n, p);
        let refs = all_refinements(&s);
        let flags: Vec<std::result::Result<(bool, bool), String>> = refs
            .par_iter()
            .map(|r| {
                let spin = r.is_spin().map_err(e2s)?;
                let fac = r.gspin_factorization().map_err(e2s)?.is_some();
                Ok((spin, fac))
            })
            .collect();
        out.push(CaseReport::check(format!("census n={n}"), json!({"n": n, "p": p}), Expected::Exact, || {
            let flags = flags.iter().cloned().collect::<std::result::Result<Vec<_>, _>>()?;
            let spin = flags.iter().filter(|f| f.0).count();
            ensure(refs.len() == factorial(2 * n), || format!("{} refinements", refs.len()))?;
            ensure(spin == (1 << n) * factorial(n), || format!("{} spin refinements", spin))?;
            let bad = flags.iter().position(|(a, b)| a != b);
            ensure(bad.is_none(), || format!("factorisation disagrees with spin at σ = {:?}", refs[bad.unwrap()].sigma))
        }));
        for beta in 1..=cfg.beta {
            let spin: Vec<_> = refs.iter().filter(|r| r.is_spin().unwrap_or(false)).collect();
            let results: Vec<Check> = spin
                .par_iter()
                .map(|r| {
                    let w = w_value_for_refinement(r, beta).map_err(e2s)?;
                    ensure(w.is_unit_monomial(), || format!("σ = {:?}: W = {}", r.sigma, w))
                })
                .collect();
            out.push(CaseReport::check(
                format!("shalika witness n={n} β={beta}"),
                json!({"n": n, "p": p, "beta": beta}),
                Expected::Exact,
                || results.into_iter().collect::<Check>(),
            ));
        }
    }
    for &p in &cfg.primes {
        for beta in 1..=cfg.beta {
            out.push(CaseReport::check(
                format!("intertwined value n=1 p={p} β={beta}"),
                json!({"n": 1, "p": p, "beta": beta}),
                Expected::ClosedForm,
                || {
                    let s = SatakeParameter::generic_ag(1, p);
                    let f = shalika_test_vector(&s);
                    let g = PadicMatrix::identity(2);
                    let ag = ag_intertwine_value(&f, &g, 2 + cfg.shells).map_err(e2s)?;
                    let closed = w_value_closed(&s, beta).map_err(e2s)?;
                    ensure(ag == closed && ag.is_one(), || format!("AG {} vs closed {}", ag, closed))
                },
            ));
        }
    }
    out
}

pub fn weyl_transfer(cfg: &SuiteConfig) -> Vec<CaseReport> {
    let mut out = Vec::new();
    for n in 1..=cfg.n.min(3) {
        let all = WeylGSpin::all(n);
        let images: Vec<Perm> = all.iter().map(jmap_weyl).collect();
        out.push(CaseReport::check(format!("isomorphism n={n}"), json!({"n": n}), Expected::Exact, || {
            let img: BTreeSet<&Perm> = images.iter().collect();
            let wg0: Vec<Perm> = wg0_members(n);
            let wg0s: BTreeSet<&Perm> = wg0.iter().collect();
            ensure(img.len() == all.len(), || "ȷ is not injective".into())?;
            ensure(img == wg0s, || "image of ȷ differs from W_G^0".into())?;
            for (a, ia) in all.iter().zip(&images) {
                for (b, ib) in all.iter().zip(&images) {
                    ensure(jmap_weyl(&a.compose(b)) == ia.compose(ib), || format!("ȷ(ab) ≠ ȷ(a)ȷ(b) at {:?}, {:?}", a, b))?;
                }
                let back = jvee_weyl(ia).map_err(e2s)?;
                ensure(&back == a, || format!("ȷ∨(ȷ(ω)) ≠ ω at {:?}", a))?;
            }
            Ok(())
        }));
        out.push(CaseReport::check(format!("character equivariance n={n}"), json!({"n": n}), Expected::Exact, || {
            for w in &all {
                for i in 0..=n {
                    let mut mu = vec![0; n + 1];
                    mu[i] = 1;
                    let lhs = jmap_weight(&w.act_char(&mu));
                    let rhs = gl_act(&jmap_weyl(w), &jmap_weight(&mu));
                    ensure(lhs == rhs, || format!("ω = {:?}, f_{}: {:?} vs {:?}", w, i, lhs, rhs))?;
                }
            }
            Ok(())
        }));
        out.push(CaseReport::check(format!("cocharacter equivariance n={n}"), json!({"n": n}), Expected::Exact, || {
            for sigma in wg0_members(n) {
                let ws = jvee_weyl(&sigma).map_err(e2s)?;
                for k in 0..2 * n {
                    let mut nu = vec![0; 2 * n];
                    nu[k] = 1;
                    let lhs = jvee_cochar(&gl_act(&sigma, &nu));
                    let rhs = ws.act_cochar(&jvee_cochar(&nu));
                    ensure(lhs == rhs, || format!("σ = {:?}, e_{}: {:?} vs {:?}", sigma, k + 1, lhs, rhs))?;
                    for i in 0..=n {
                        let mut mu = vec![0; n + 1];
                        mu[i] = 1;
                        ensure(pairing(&mu, &jvee_cochar(&nu)) == pairing(&jmap_weight(&mu), &nu), || {
                            format!("pairing mismatch at f_{}, e_{}", i, k + 1)
                        })?;
                    }
                }
            }
            Ok(())
        }));
    }
    out
}

pub fn hecke_eigen(cfg: &SuiteConfig) -> Vec<CaseReport> {
    let mut jobs: Vec<(usize, u64, Perm)> = Vec::new();
    for &p in &cfg.primes {
        for s in Perm::all(2) {
            jobs.push((1, p, s));
        }
    }
    if cfg.n >= 2 {
        for &p in &cfg.primes {
            let mut all = Perm::all(4);
            if p != 2 {
                // spot check away from p = 2
                let mut rng = suite_rng(cfg.seed, &format!("hecke-eigen n=2 p={p}"));
                all.shuffle(&mut rng);
                all.truncate(if p == 3 { 3 } else { 1 });
            }
            jobs.extend(all.into_iter().map(|s| (2, p, s)));
        }
    }
    jobs.par_iter()
        .map(|(n, p, sigma)| {
            CaseReport::check(
                format!("n={n} p={p} σ={:?}", sigma.0),
                json!({"n": n, "p": p, "sigma": sigma.0}),
                Expected::Exact,
                || {
                    let s = SatakeParameter::generic_ag(*n, *p);
                    let f = PSVector::big_cell(s.clone(), sigma.clone());
                    let r = crate::refine::Refinement::new(s, sigma.clone());
                    for k in 1..2 * n {
                        let uf = hecke_apply(&f, k).map_err(e2s)?;
                        ensure(uf.same_as(&f.scale(&r.hecke_eigenvalue(k))), || format!("U_{{p,{k}}} eigenvalue mismatch"))?;
                    }
                    Ok(())
                },
            )
        })
        .collect()
}

pub fn cell_support(cfg: &SuiteConfig) -> Vec<CaseReport> {
    let mut jobs = Vec::new();
    for n in 1..=cfg.n.min(2) {
        for &p in &cfg.primes {
            for beta in 1..=cfg.beta {
                jobs.push((n, p, beta));
            }
        }
    }
    jobs.par_iter()
        .map(|&(n, p, beta)| {
            let label = format!("n={n} p={p} β={beta}");
            let positives = (cfg.samples / 5).max(100);
            CaseReport::check(
                label.clone(),
                json!({"n": n, "p": p, "beta": beta, "samples": cfg.samples.max(positives), "positives": positives, "seed": cfg.seed}),
                Expected::Sampled,
                || {
                    let mut rng = suite_rng(cfg.seed, &format!("cell-support {label}"));
                    let s = SatakeParameter::generic_ag(n, p);
                    let theta = unramified_character(&s.theta, &Perm::identity(2 * n), p);
                    let expect = theta(&expected_borel_torus(n, beta)).map_err(e2s)?;
                    let wn = Perm::longest(n);
                    for i in 0..cfg.samples.max(positives) {
                        let (k, x, positive) = if i < positives {
                            let (k, x) = sample_positive(&mut rng, n, beta, p);
                            (k, x, true)
                        } else if n >= 2 && i % 2 == 0 {
                            let (k, x) = sample_off_cell(&mut rng, n, beta, p);
                            (k, x, false)
                        } else {
                            (sample_gl_zp(&mut rng, n, p), sample_x(&mut rng, n, beta, p), false)
                        };
                        for d in Perm::all(n) {
                            let a = shalika_support_predicate(&d, &k, &x, beta, p).map_err(e2s)?;
                            let b = support_by_cell(&d, &k, &x, beta, p).map_err(e2s)?;
                            ensure(a == b, || format!("sample {i}, δ = {d}: predicate {a}, cell {b}"))?;
                            if positive && d == wn {
                                ensure(a, || format!("constructed positive {i} rejected"))?;
                                let v = borel_part_character(&theta, &k, &x, beta, p).map_err(e2s)?;
                                ensure(v == expect, || format!("sample {i}: Θ(𝔅) = {}", v))?;
                            }
                        }
                    }
                    for d in Perm::all(n).into_iter().filter(|d| *d != wn) {
                        ensure(opposite_cells_disjoint(&d, p).map_err(e2s)?, || format!("cells of δ = {:?} meet", d))?;
                    }
                    Ok(())
                },
            )
        })
        .collect()
}

pub fn zeta_iwahori(cfg: &SuiteConfig) -> Vec<CaseReport> {
    let mut jobs = Vec::new();
    for &p in &cfg.primes {
        for beta in 1..=cfg.beta {
            let chis = TwistCharacter::all_primitive(p, beta);
            if chis.is_empty() {
                jobs.push((p, beta, None));
            }
            jobs.extend(chis.into_iter().enumerate().map(|(i, c)| (p, beta, Some((i, c)))));
        }
    }
    jobs.par_iter()
        .map(|(p, beta, chi)| match chi {
            None => CaseReport::check(
                format!("p={p} β={beta}: no primitive characters"),
                json!({"p": p, "beta": beta}),
                Expected::ClosedForm,
                || Ok(()),
            ),
            Some((i, chi)) => CaseReport::check(
                format!("p={p} β={beta} χ#{i}"),
                json!({"p": p, "beta": beta, "chi": i, "shells": beta + cfg.shells}),
                Expected::ClosedForm,
                || {
                    let s = SatakeParameter::generic_ag(1, *p);
                    let f = shalika_test_vector(&s);
                    let o = zeta_iwahori_oracle(&f, chi, beta + cfg.shells).map_err(e2s)?;
                    let wb = w_value_closed(&s, *beta).map_err(e2s)?;
                    let c = zeta_iwahori_closed(&wb, chi, 1).map_err(e2s)?;
                    ensure(o.value == c.value, || format!("oracle {} vs closed {}", o.value, c.value))
                },
            ),
        })
        .collect()
}

pub fn zeta_parahoric(cfg: &SuiteConfig) -> Vec<CaseReport> {
    let mut jobs = Vec::new();
    for &p in &cfg.primes {
        jobs.push((p, 0, 0, TwistCharacter::trivial(p)));
        for beta in 1..=cfg.beta {
            jobs.extend(TwistCharacter::all_primitive(p, beta).into_iter().enumerate().map(|(i, c)| (p, beta, i, c)));
        }
    }
    jobs.par_iter()
        .map(|(p, beta, i, chi)| {
            CaseReport::check(
                format!("p={p} conductor p^{beta} χ#{i}"),
                json!({"p": p, "beta": beta, "chi": i, "shells": 2 + cfg.shells}),
                Expected::ClosedForm,
                || {
                    let s = SatakeParameter::generic_ag(1, *p);
                    let o = zeta_parahoric_oracle(&s, chi, 2 + cfg.shells).map_err(e2s)?;
                    let c = zeta_parahoric_closed(&s, chi, 0).map_err(e2s)?;
                    ensure(o.value == c.value, || format!("oracle {} vs closed {}", o.value, c.value))
                },
            )
        })
        .collect()
}

/// Pure dominant weights of GL(2n) with entries in [−5, 5].
pub fn small_pure_weights(n: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = vec![0i64; 2 * n];
    fn rec(i: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if i == cur.len() {
            if is_pure(cur) && is_dominant(cur) {
                out.push(cur.clone());
            }
            return;
        }
        let top = if i == 0 { 5 } else { cur[i - 1] };
        for v in -5..=top {
            cur[i] = v;
            rec(i + 1, cur, out);
        }
    }
    rec(0, &mut cur, &mut out);
    out
}

fn branching_check(w: &PureWeight, g: &PadicMatrix, beta: u32, p: u64) -> Check {
    let wl = w_chi(w, g, p).map_err(e2s)?;
    let ratio = branchfam::cell_ratio(g).ok_or("N^β element off the open cell")?;
    for j in w.crit() {
        let v = v_lambda_j(w, j, g).map_err(e2s)?;
        ensure(congruent(&v, &Q::from_integer(1.into()), p, beta), || format!("λ = {:?}, j = {j}: v = {v}", w.lambda))?;
        let prod = v_lambda_j_product(w, j, g).map_err(e2s)?;
        ensure(prod == v, || format!("λ = {:?}, j = {j}: product formula {prod} vs {v}", w.lambda))?;
        let interp = &wl * crate::padic::decompose::qpow_q(&ratio, j);
        ensure(interp == v, || format!("λ = {:?}, j = {j}: w_λ·ratio^j = {interp} vs {v}", w.lambda))?;
    }
    Ok(())
}

pub fn branching_support(cfg: &SuiteConfig) -> Vec<CaseReport> {
    let mut jobs = Vec::new();
    for n in 1..=cfg.n.min(2) {
        for &p in &cfg.primes {
            for beta in 1..=cfg.beta {
                jobs.push((n, p, beta));
            }
        }
    }
    jobs.par_iter()
        .map(|&(n, p, beta)| {
            let label = format!("n={n} p={p} β={beta}");
            let weights = small_pure_weights(n);
            if n == 1 {
                let classes = p.pow(2);
                return CaseReport::check(
                    label,
                    json!({"n": 1, "p": p, "beta": beta, "residue_classes": classes, "weights": weights.len()}),
                    Expected::Exact,
                    || {
                        for y in 0..classes {
                            let mut g = u_matrix(1);
                            g[(0, 1)] += Q::from_integer(y.into()) * crate::symring::q_pow(p, beta as i64);
                            ensure(branchfam::in_n_beta(&g, beta, p), || "sample outside N^β".into())?;
                            for l in &weights {
                                branching_check(&PureWeight::new(l.clone()).map_err(e2s)?, &g, beta, p)?;
                            }
                        }
                        Ok(())
                    },
                );
            }
            CaseReport::check(
                label.clone(),
                json!({"n": n, "p": p, "beta": beta, "samples": cfg.samples, "seed": cfg.seed}),
                Expected::Sampled,
                || {
                    let mut rng = suite_rng(cfg.seed, &format!("branching-support {label}"));
                    for _ in 0..cfg.samples {
                        let g = sample_n_beta(&mut rng, n, beta, p);
                        let l = weights[rng.gen_range(0..weights.len())].clone();
                        branching_check(&PureWeight::new(l).map_err(e2s)?, &g, beta, p)?;
                    }
                    Ok(())
                },
            )
        })
        .collect()
}

fn family_centre(n: usize) -> Vec<i64> {
    if n == 1 {
        vec![1, 0]
    } else {
        vec![1, 0, 0, -1]
    }
}

pub fn interp_diagram(cfg: &SuiteConfig) -> Vec<CaseReport> {
    let mut jobs = Vec::new();
    for n in 1..=cfg.n.min(2) {
        for &p in &cfg.primes {
            jobs.push((n, p));
        }
    }
    let count = (cfg.samples / 10).max(1);
    jobs.par_iter()
        .map(|&(n, p)| {
            let label = format!("n={n} p={p}");
            let fp = cfg.family_precision;
            CaseReport::check(
                label.clone(),
                json!({"n": n, "p": p, "distributions": count, "m": fp.m, "d": fp.d, "seed": cfg.seed}),
                Expected::Sampled,
                || {
                    let mut rng = suite_rng(cfg.seed, &format!("interp-diagram {label}"));
                    let prec = Precision { p, m: fp.m, d: fp.d };
                    let centre = family_centre(n);
                    let fam = FamilyWeight::new(centre.clone(), 2, prec).map_err(e2s)?;
                    let mut shifted = centre.clone();
                    shifted[0] += fam.step();
                    shifted[2 * n - 1] -= fam.step();
                    let points = [PureWeight::new(centre).map_err(e2s)?, PureWeight::new(shifted).map_err(e2s)?];
                    let level = 2;
                    let units: Vec<u64> = (1..p.pow(level)).filter(|r| r % p != 0).collect();
                    for k in 0..count {
                        let mu = FiniteDistribution::sample(&mut rng, n, p, 1, 3);
                        let r = units[rng.gen_range(0..units.len())];
                        let terms = vec![
                            (0, Q::from_integer(rng.gen_range(-5i64..=5).into())),
                            (1, Q::from_integer(rng.gen_range(-5i64..=5).into())),
                        ];
                        let f = LocFunction::on_class(p, level, r, terms).map_err(e2s)?;
                        let fam_val = kappa_family(&mu, &fam, &f).map_err(e2s)?;
                        for w in &points {
                            let lhs = fam.specialize(&fam_val, &w.lambda).map_err(e2s)?;
                            let rhs = prec.reduce(&kappa_lambda(&mu, w, &f).map_err(e2s)?).map_err(e2s)?;
                            ensure(lhs == rhs, || format!("distribution {k}, λ = {:?}: sp∘κ_Ω = {lhs}, κ_λ = {rhs}", w.lambda))?;
                            for j in w.crit() {
                                let a = kappa_lambda(&mu, w, &LocFunction::monomial(p, j)).map_err(e2s)?;
                                let b = kappa_lambda_j(&mu, w, j).map_err(e2s)?;
                                ensure(a == b, || format!("distribution {k}, λ = {:?}, j = {j}: {a} vs {b}", w.lambda))?;
                            }
                        }
                    }
                    Ok(())
                },
            )
        })
        .collect()
}

fn test_weight(n: usize) -> Vec<i64> {
    if n == 1 {
        vec![1, 0]
    } else {
        vec![2, 1, -1, -2]
    }
}

pub fn euler_factors(cfg: &SuiteConfig) -> Vec<CaseReport> {
    let mut out = Vec::new();
    for n in 1..=cfg.n.min(2) {
        let lambda = test_weight(n);
        for &p in &cfg.primes {
            let s = SatakeParameter::generic_ag(n, p);
            out.push(CaseReport::check(
                format!("unramified n={n} p={p}"),
                json!({"n": n, "p": p, "lambda": lambda}),
                Expected::Exact,
                || {
                    for j in branchfam::crit_range(&lambda).map_err(e2s)? {
                        let r = unramified_ratio(&s, j, &lambda).map_err(e2s)?;
                        ensure(r.is_unit_monomial(), || format!("j = {j}: {r}"))?;
                    }
                    Ok(())
                },
            ));
            for beta in 1..=cfg.beta {
                for (i, chi) in TwistCharacter::all_primitive(p, beta).into_iter().enumerate().take(2) {
                    out.push(CaseReport::check(
                        format!("ramified n={n} p={p} β={beta} χ#{i}"),
                        json!({"n": n, "p": p, "beta": beta, "chi": i, "lambda": lambda}),
                        Expected::Exact,
                        || {
                            let want = crate::shalikazeta::euler::alpha_pn(&s).pow(-(beta as i64)).map_err(e2s)?;
                            for j in branchfam::crit_range(&lambda).map_err(e2s)? {
                                let e = ep_factor(&s, &chi, j, &lambda).map_err(e2s)?;
                                let q = qprime_factor(&chi, j, n).map_err(e2s)?;
                                let r = e.div(&q).map_err(e2s)?;
                                ensure(r == want, || format!("j = {j}: e_p/Q′ = {r}"))?;
                            }
                            Ok(())
                        },
                    ));
                }
            }
        }
    }
    out
}

pub fn comparison(cfg: &SuiteConfig) -> Vec<CaseReport> {
    let mut out = Vec::new();
    for n in 1..=cfg.n.min(2) {
        let lambda = test_weight(n);
        for &p in &cfg.primes {
            let crit: Vec<i64> = branchfam::crit_range(&lambda).map(|r| r.collect()).unwrap_or_default();
            let mut pairs: Vec<(TwistCharacter, i64)> = crit.iter().map(|j| (TwistCharacter::trivial(p), *j)).collect();
            for beta in 1..=cfg.beta {
                let chis = TwistCharacter::all_primitive(p, beta);
                let take = if n == 1 { chis.len() } else { 1 };
                for chi in chis.into_iter().take(take) {
                    pairs.extend(crit.iter().map(|j| (chi.clone(), *j)));
                }
            }
            out.push(CaseReport::check(
                format!("n={n} p={p} ({} pairs)", pairs.len()),
                json!({"n": n, "p": p, "lambda": lambda, "beta": cfg.beta, "pairs": pairs.len()}),
                Expected::Exact,
                || {
                    let s = SatakeParameter::generic_ag(n, p);
                    let c = comparison_constant(&s, &lambda, &pairs).map_err(e2s)?;
                    let want = SymElem::rational(expected_comparison(n, p)).with_prime(p);
                    ensure(c == want, || format!("ratio {c}, expected {want}"))
                },
            ));
        }
    }
    out
}
