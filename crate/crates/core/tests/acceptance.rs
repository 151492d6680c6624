//! End-to-end acceptance checks. Each test prints one line,
//! `criterion N: PASS` or `criterion N: FAIL`, followed by the names of any
//! failed checks, and fails when a check fails or the time budget is exceeded.
//!
//! Run with `cargo test -p todacalc --test acceptance -- --nocapture` to see
//! the lines.

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};
use todacalc::chaincx::sub::factor_through;
use todacalc::chaincx::toda::{coset_elements, enumerate_bracket_values};
use todacalc::chaincx::{long_toda, toda_coset, FreeChainComplex, GradedMap, HomComplex};
use todacalc::cli::{run_text, Command, Status};
use todacalc::examples::{build_rational_pair, filtration_example, moore_space_bracket, RationalExamplePair};
use todacalc::lie::{FreeDGL, Generator, LieElement, LieExpr};
use todacalc::linalg::solve;
use todacalc::polytope::{chain_complex, folding_polytope, homology_report, modified_folding_polytope};
use todacalc::simplicial::object::{cone_restricted, e_functor, SimplicialMap};
use todacalc::simplicial::{build_sequential_realization, realize_attaching, CellularObject};
use todacalc::{Matrix, Ring, Scalar};

type Checks = Vec<(String, bool)>;

fn check(checks: &mut Checks, name: impl Into<String>, ok: bool) {
    checks.push((name.into(), ok));
}

/// Run one criterion, print its line and fail the test on any failed check,
/// on a panic inside the body, or when the budget is exceeded.
fn criterion(n: u32, budget_secs: u64, body: impl FnOnce(&mut Checks)) {
    let start = Instant::now();
    let mut checks = Checks::new();
    let panicked = catch_unwind(AssertUnwindSafe(|| body(&mut checks))).err().map(|e| {
        e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default()
    });
    let elapsed = start.elapsed();
    let mut failed: Vec<String> = checks.iter().filter(|(_, ok)| !ok).map(|(n, _)| n.clone()).collect();
    if let Some(msg) = &panicked {
        failed.push(format!("panic: {msg}"));
    }
    if elapsed > Duration::from_secs(budget_secs) {
        failed.push(format!("over budget: {:.1}s > {budget_secs}s", elapsed.as_secs_f64()));
    }
    let verdict = if failed.is_empty() { "PASS" } else { "FAIL" };
    println!("criterion {n}: {verdict} ({} checks, {:.2}s)", checks.len(), elapsed.as_secs_f64());
    for f in &failed {
        println!("  failed: {f}");
    }
    assert!(failed.is_empty(), "criterion {n} failed: {failed:?}");
}

// ---------------------------------------------------------------------------
// random linear data

fn scalar(rng: &mut ChaCha8Rng, ring: Ring) -> i64 {
    match ring {
        Ring::PrimeField(p) => rng.gen_range(0..p as i64),
        _ => rng.gen_range(-2..=2),
    }
}

fn random_matrix(rng: &mut ChaCha8Rng, ring: Ring, rows: usize, cols: usize) -> Matrix {
    let e: Vec<i64> = (0..rows * cols).map(|_| scalar(rng, ring)).collect();
    Matrix::from_i64(ring, rows, cols, &e)
}

/// A random invertible matrix together with its inverse.
fn random_invertible(rng: &mut ChaCha8Rng, ring: Ring, n: usize) -> (Matrix, Matrix) {
    loop {
        let p = random_matrix(rng, ring, n, n);
        if let Some(inv) = solve(&p, &Matrix::identity(ring, n)) {
            return (p, inv);
        }
    }
}

/// A complex over a field in degrees lo..=hi, built as a sum of `disks[k]`
/// disks on (k, k-1) and `spheres[k]` spheres in degree k, then put in a
/// random basis. Acyclic exactly when there are no spheres.
fn random_complex(
    rng: &mut ChaCha8Rng,
    ring: Ring,
    lo: i64,
    disks: &BTreeMap<i64, usize>,
    spheres: &BTreeMap<i64, usize>,
) -> FreeChainComplex {
    let hi = disks.keys().chain(spheres.keys()).copied().max().unwrap_or(lo);
    let r = |k: i64| disks.get(&k).copied().unwrap_or(0);
    let s = |k: i64| spheres.get(&k).copied().unwrap_or(0);
    let rank = |k: i64| r(k + 1) + r(k) + s(k);
    let ranks: Vec<(i64, usize)> = (lo..=hi).map(|k| (k, rank(k))).filter(|&(_, n)| n > 0).collect();
    let mut c = FreeChainComplex::with_ranks(ring, &ranks);
    let bases: BTreeMap<i64, (Matrix, Matrix)> = (lo..=hi).map(|k| (k, random_invertible(rng, ring, rank(k)))).collect();
    for k in lo + 1..=hi {
        if rank(k) == 0 || rank(k - 1) == 0 {
            continue;
        }
        // basis at k: [hit from k+1 | sent to k-1 | spheres]
        let mut d = Matrix::zeros(ring, rank(k - 1), rank(k));
        for i in 0..r(k) {
            d.set(i, r(k + 1) + i, ring.from_i64(1));
        }
        let d = bases[&(k - 1)].0.mul(&d).mul(&bases[&k].1);
        c.set_boundary(k, d).unwrap();
    }
    c
}

fn graded_module(ring: Ring, ranks: &BTreeMap<i64, usize>) -> FreeChainComplex {
    let r: Vec<(i64, usize)> = ranks.iter().map(|(&t, &n)| (t, n)).filter(|&(_, n)| n > 0).collect();
    FreeChainComplex::with_ranks(ring, &r)
}

/// A random acyclic cellular resolution of graded modules: for each internal
/// degree t an exact sequence of free modules in simplicial dimensions
/// -1..=top, attached block by block. Total rank at most 12.
fn random_resolution(rng: &mut ChaCha8Rng, ring: Ring) -> (CellularObject, i64, usize) {
    let top = rng.gen_range(1..=2i64);
    let internal: Vec<i64> = if rng.gen_bool(0.5) { vec![0] } else { vec![0, rng.gen_range(1..=2)] };
    let mut per_t = BTreeMap::new();
    let mut total = 0;
    for &t in &internal {
        loop {
            let disks: BTreeMap<i64, usize> = (0..=top).map(|k| (k, rng.gen_range(0..=2usize))).collect();
            if disks[&0] == 0 {
                continue;
            }
            let cx = random_complex(rng, ring, -1, &disks, &BTreeMap::new());
            if total + cx.total_rank() > 12 {
                continue;
            }
            total += cx.total_rank();
            per_t.insert(t, cx);
            break;
        }
    }
    let module = |k: i64| graded_module(ring, &per_t.iter().map(|(&t, c)| (t, c.rank(k))).collect());
    let mut v = CellularObject::empty(ring, -1);
    v.attach_block("lambda", -1, module(-1), vec![]).unwrap();
    for k in 0..=top {
        let src = Arc::new(module(k));
        let below = module(k - 1);
        let mut comps = BTreeMap::new();
        for (&t, c) in &per_t {
            if c.rank(k) > 0 && c.rank(k - 1) > 0 {
                comps.insert(t, c.boundary(k));
            }
        }
        let d = GradedMap::new(src.clone(), Arc::new(below), 0, comps).unwrap();
        // land in the basis summand of the level below
        let prev = v.block_index(&format!("v{}", k - 1)).unwrap_or(0);
        let att = if k == 0 { d } else { v.cell_inj(prev).compose(&d) };
        v.attach_cw(&format!("v{k}"), (*src).clone(), att).unwrap();
    }
    (v, top, total)
}

/// A random chain map A -> B, as a combination of a basis of Z_0 Hom(A, B).
fn random_chain_map(rng: &mut ChaCha8Rng, a: &Arc<FreeChainComplex>, b: &Arc<FreeChainComplex>) -> GradedMap {
    let ring = a.ring();
    let mut f = GradedMap::zero(a.clone(), b.clone(), 0);
    for z in HomComplex::new(a.clone(), b.clone()).cycles(0) {
        let c = scalar(rng, ring);
        if c != 0 {
            f = f.add(&z.scale(&Scalar::from_integer(c.into())));
        }
    }
    f
}

// ---------------------------------------------------------------------------

#[test]
fn criterion_1_rational_separation() {
    criterion(1, 30, |c| {
        let text = todacalc::cli::example_presentation(todacalc::cli::ExampleName::Rational, 2).unwrap();
        let f = "[a,x]+[b,y]+[c,z]";
        let a = run_text(&Command::IsBoundary { object: "A".into(), class: f.into() }, Some(&text));
        check(c, "is-boundary f in A succeeds", a.status == Status::Ok);
        check(c, "A has a witness", a.payload["witness"].is_string());
        let b = run_text(&Command::IsBoundary { object: "B".into(), class: f.into() }, Some(&text));
        check(c, "is-boundary f in B succeeds", b.status == Status::Ok);
        check(c, "B has no witness", b.payload["witness"].is_null());

        let aug_a = run_text(&Command::Augment { target: "A".into(), m: 2 }, None);
        check(c, "augmentation to A exists", aug_a.status == Status::Ok && aug_a.payload["success"] == true);
        let aug_b = run_text(&Command::Augment { target: "B".into(), m: 2 }, None);
        check(c, "augmentation to B is obstructed", aug_b.status == Status::Obstruction);
        let ob = &aug_b.payload["obstruction"];
        check(c, "obstruction at the top generator", ob["generator"] == "hwh");
        check(c, "obstruction degree 3m+2 = 8", ob["degree"] == "8");
        check(c, "obstruction class is nonzero", ob["class_nonzero"] == "true" || ob["class_nonzero"] == true);
    });
}

#[test]
fn criterion_2_homology_agreement() {
    criterion(2, 60, |c| {
        let pair = build_rational_pair(2).unwrap();
        let ha = pair.a.homology_dims(1, 8);
        let hb = pair.b.homology_dims(1, 8);
        check(c, format!("H(A) = H(B) through degree 8: {ha:?}"), ha == hb);
        check(c, "the truncation reaches degree 8", pair.a.truncation() >= 8 && pair.b.truncation() >= 8);
        for (name, d) in [("A", &pair.a), ("B", &pair.b)] {
            let survey = RationalExamplePair::bracket_survey(d);
            check(c, format!("{name}: some brackets surveyed"), !survey.is_empty());
            for (k1, i, k2, j, ok) in survey {
                check(c, format!("{name}: [h{k1}_{i}, h{k2}_{j}] bounds"), ok);
            }
        }
    });
}

#[test]
fn criterion_3_moore_bracket() {
    criterion(3, 5, |c| {
        let r = moore_space_bracket(3).unwrap();
        check(c, "group Z", r.coset.group == "Z");
        check(c, "representative 1", r.coset.representative == "1");
        check(c, "indeterminacy 2Z", r.coset.indeterminacy == vec!["2".to_string()]);
        check(c, "zero not in the coset", !r.coset.contains_zero);
        check(c, "nonvanishing", r.nonvanishing);
        let text = todacalc::cli::example_presentation(todacalc::cli::ExampleName::Moore, 2).unwrap();
        let cli = run_text(&Command::Toda { maps: vec!["pinch".into(), "inc".into(), "two".into()] }, Some(&text));
        check(c, "presentation route agrees", cli.status == Status::Ok && cli.payload["coset"]["representative"] == "1");
        let f = filtration_example(3).unwrap();
        check(c, "filtration index 1", f.index == Some(1));
    });
}

fn reduced_is(h: &[String], expect: impl Fn(usize) -> &'static str) -> bool {
    h.iter().enumerate().all(|(d, g)| g == expect(d))
}

#[test]
fn criterion_4_folding_polytopes() {
    criterion(4, 60, |c| {
        for n in 1..=5usize {
            let (p, sel) = folding_polytope(n).unwrap();
            let r = homology_report(&p, &sel, false);
            check(c, format!("P({n}) acyclic"), reduced_is(&r.polytope, |_| "0") && r.is_ball);
            check(c, format!("∂P({n}) is a homology (n-1)-sphere"), reduced_is(&r.boundary, |d| if d == n - 1 { "Z" } else { "0" }));
            check(c, format!("EP({n}) acyclic"), reduced_is(&r.edge, |_| "0") && r.edge_is_acyclic);
            check(c, format!("χ(P({n})) = 1"), r.euler_characteristic == 1);
            check(c, format!("P({n}) is a faithful quotient"), r.faithful_quotient);
            // independent of the report: reduced homology of the face poset
            let aug = chain_complex(&p.all_faces(), true);
            check(c, format!("P({n}) augmented complex exact"), (-1..=n as i64).all(|d| aug.homology(d).describe() == "0"));
            let bd = chain_complex(&p.boundary(), true);
            check(
                c,
                format!("∂P({n}) augmented homology"),
                (-1..=n as i64).all(|d| bd.homology(d).describe() == if d == n as i64 - 1 { "Z" } else { "0" }),
            );

            let (q, qsel) = modified_folding_polytope(n).unwrap();
            let rq = homology_report(&q, &qsel, true);
            check(c, format!("∂P̂({n}) is a homology (n-1)-sphere"), reduced_is(&rq.boundary, |d| if d == n - 1 { "Z" } else { "0" }));
            check(c, format!("P̂({n}) acyclic"), reduced_is(&rq.polytope, |_| "0"));
        }
        check(c, "f(P(1)) = (3, 2)", folding_polytope(1).unwrap().0.f_vector() == vec![3, 2]);
        check(c, "f(P(2)) = (5, 7, 3)", folding_polytope(2).unwrap().0.f_vector() == vec![5, 7, 3]);
    });
}

/// B̄ = R^r in internal degree t; X_0 a disk on (t+1, t) with the top cell
/// mapped onto X_{-1} = R^r in degree t+1; X_1 a cell whose d_0 picks the
/// bottom of the disk. X is not acyclic, and the last stage is obstructed.
fn broken_fixture(ring: Ring, r: usize, t: i64) -> (CellularObject, FreeChainComplex) {
    let mut c = CellularObject::empty(ring, -1);
    c.attach_block("t", -1, FreeChainComplex::sphere(ring, r, t + 1), vec![]).unwrap();
    let disk = FreeChainComplex::disk(ring, r, t + 1);
    let mut m = BTreeMap::new();
    m.insert(t + 1, Matrix::identity(ring, r));
    let eps = GradedMap::new(Arc::new(disk.clone()), c.level(-1).clone(), 0, m).unwrap();
    c.attach_block("pr", 0, disk, vec![eps]).unwrap();
    let g = FreeChainComplex::sphere(ring, r, t);
    let mut m = BTreeMap::new();
    m.insert(t, Matrix::identity(ring, r));
    let d0 = GradedMap::new(Arc::new(g.clone()), c.level(0).clone(), 0, m).unwrap();
    let d1 = GradedMap::zero(Arc::new(g.clone()), c.level(0).clone(), 0);
    c.attach_block("g", 1, g.clone(), vec![d0, d1]).unwrap();
    (c, g)
}

#[test]
fn criterion_5_descent_soundness() {
    criterion(5, 120, |c| {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
        for i in 0..50 {
            let ring = if i % 2 == 0 { Ring::PrimeField(2) } else { Ring::Rationals };
            let (v, top, total) = random_resolution(&mut rng, ring);
            let tag = format!("resolution {i} ({ring:?}, top {top}, rank {total})");
            check(c, format!("{tag}: rank ≤ 12"), total <= 12);
            let acyc = v.object().acyclicity_check(top);
            check(c, format!("{tag}: input acyclic"), acyc.passed && acyc.formulations_agree);
            let r = build_sequential_realization(&v, top).unwrap();
            check(c, format!("{tag}: no obstruction"), r.obstruction.is_none());
            let descents = r.stages.iter().filter(|s| s.dim >= 1).count();
            check(c, format!("{tag}: every block of dimension ≥ 1 ran the descent"), descents as i64 == top);
            check(c, format!("{tag}: stage relations at every stage"), r.stages.iter().all(|s| s.relations_hold));
            check(c, format!("{tag}: every stage coset contains 0"), r.stages.iter().flat_map(|s| &s.descent).all(|d| d.contains_zero));
            let k = r.checks(top).unwrap();
            check(c, format!("{tag}: realization matches the resolution"), k.identities && k.levelwise_homology_matches && k.moore_homology_matches);
        }
        for i in 0..10 {
            let ring = if i % 2 == 0 { Ring::PrimeField(2) } else { Ring::Rationals };
            let r = rng.gen_range(1..=3usize);
            let t = rng.gen_range(0..=2i64);
            let (x, g) = broken_fixture(ring, r, t);
            let tag = format!("broken fixture {i} (rank {r}, degree {t})");
            // chains are exact; the levelwise homology is not
            check(c, format!("{tag}: chains exact"), x.object().acyclicity_check(1).passed);
            let homotopy_acyclic = x.object().internal_degrees().iter().all(|&t| x.object().homology_level(t).unwrap().acyclicity_check(1).passed);
            check(c, format!("{tag}: homotopy not acyclic"), !homotopy_acyclic);
            let moore = x.object().moore();
            let alpha = factor_through(moore.incl(1), &x.cell_inj(2)).unwrap();
            let d = realize_attaching(x.object(), &moore, &g, &alpha, 2).unwrap();
            check(c, format!("{tag}: obstruction reported"), d.obstruction.is_some() && !d.succeeded());
            check(c, format!("{tag}: obstruction coset misses 0"), d.stages.iter().any(|s| !s.contains_zero));
        }
    });
}

#[test]
fn criterion_6_bracket_cosets() {
    criterion(6, 120, |c| {
        let ring = Ring::PrimeField(2);
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
        let mut accepted = 0;
        let mut nontrivial = 0;
        let mut multi = 0;
        let mut attempts = 0;
        while accepted < 20 && attempts < 20_000 {
            attempts += 1;
            // four complexes in degrees 0..=2 with total rank at most 6
            let mut cxs = Vec::new();
            let mut budget = 6usize;
            for left in (0..4).rev() {
                let mut disks = BTreeMap::new();
                let mut spheres = BTreeMap::new();
                let cap = budget - left;
                let mut used = 0;
                while used == 0 || (used < cap && rng.gen_bool(0.4)) {
                    if rng.gen_bool(0.3) && used + 2 <= cap {
                        *disks.entry(rng.gen_range(1..=2i64)).or_insert(0) += 1;
                        used += 2;
                    } else {
                        *spheres.entry(rng.gen_range(0..=2i64)).or_insert(0) += 1;
                        used += 1;
                    }
                }
                budget -= used;
                cxs.push(Arc::new(random_complex(&mut rng, ring, 0, &disks, &spheres)));
            }
            let h = random_chain_map(&mut rng, &cxs[0], &cxs[1]);
            let g = random_chain_map(&mut rng, &cxs[1], &cxs[2]);
            let f = random_chain_map(&mut rng, &cxs[2], &cxs[3]);
            let Ok(t) = toda_coset(&f, &g, &h) else { continue };
            accepted += 1;
            let tag = format!("instance {accepted}");
            if t.group.describe() != "0" {
                nontrivial += 1;
            }
            let coset: BTreeSet<Vec<Scalar>> = coset_elements(ring, &t.coset).into_iter().collect();
            let brute = enumerate_bracket_values(&f, &g, &h, 1 << 16).unwrap();
            if brute.len() > 1 {
                multi += 1;
            }
            check(c, format!("{tag}: coset = brute force ({} values)", brute.len()), coset == brute);
            check(c, format!("{tag}: contains_zero consistent"), t.coset.contains_zero == brute.iter().any(|v| v.iter().all(|x| x.is_zero())));
            let long = long_toda(&[f.clone(), g.clone(), h.clone()]).unwrap();
            let lv = long.final_value.as_ref().map(|v| coset_elements(ring, v).into_iter().collect::<BTreeSet<_>>());
            check(c, format!("{tag}: long bracket at arity 3 agrees"), lv.as_ref() == Some(&coset));
        }
        check(c, format!("20 instances found ({attempts} attempts)"), accepted == 20);
        check(c, format!("some instances have nonzero groups ({nontrivial})"), nontrivial > 0);
        println!("  note: {accepted} instances in {attempts} attempts, {nontrivial} with a nonzero group, {multi} with several values");
        // the mod-2 Moore data as a fixed nontrivial instance over F_2
        let s = Arc::new(FreeChainComplex::sphere(ring, 1, 0));
        let mut two = FreeChainComplex::with_ranks(ring, &[(0, 1), (1, 1)]);
        two.set_boundary(1, Matrix::identity(ring, 1)).unwrap();
        let d = Arc::new(two);
        let one = |a: &Arc<FreeChainComplex>, b: &Arc<FreeChainComplex>, k: i64| {
            GradedMap::new(a.clone(), b.clone(), 0, [(k, Matrix::identity(ring, 1))].into_iter().collect()).unwrap()
        };
        let t1 = Arc::new(FreeChainComplex::sphere(ring, 1, 1));
        let (f, g, h) = (one(&d, &t1, 1), one(&s, &d, 0), GradedMap::zero(s.clone(), s.clone(), 0));
        let t = toda_coset(&f, &g, &h).unwrap();
        let brute = enumerate_bracket_values(&f, &g, &h, 1 << 16).unwrap();
        check(c, "fixed instance: coset = brute force", coset_elements(ring, &t.coset).into_iter().collect::<BTreeSet<_>>() == brute);
    });
}

#[test]
fn criterion_7_structural_identities() {
    criterion(7, 60, |c| {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
        let random_cx = |rng: &mut ChaCha8Rng, ring: Ring| {
            let disks: BTreeMap<i64, usize> = (0..=3).map(|k| (k, rng.gen_range(0..=1usize))).collect();
            let spheres: BTreeMap<i64, usize> = (-1..=3).map(|k| (k, rng.gen_range(0..=1usize))).collect();
            random_complex(rng, ring, -1, &disks, &spheres)
        };
        for i in 0..100 {
            let ring = if i % 2 == 0 { Ring::PrimeField(2) } else { Ring::Rationals };
            let a = random_cx(&mut rng, ring);
            let e = e_functor(&a).unwrap();
            check(c, format!("input {i}: E(A) satisfies the identities"), e.check_identities().passed);
            check(c, format!("input {i}: Moore(E(A)) = A"), e.moore_slice(0) == a);

            let b = random_cx(&mut rng, ring);
            let f = random_chain_map(&mut rng, &Arc::new(a.clone()), &Arc::new(b.clone()));
            let ea = Arc::new(e);
            let eb = Arc::new(e_functor(&b).unwrap());
            let maps: Vec<GradedMap> = (-1..=ea.top())
                .map(|n| {
                    let m = if n <= eb.top() { f.component(n) } else { Matrix::zeros(ring, 0, a.rank(n)) };
                    let tgt = if n <= eb.top() { eb.level(n).clone() } else { Arc::new(FreeChainComplex::zero(ring)) };
                    let comps = if m.rows() > 0 && m.cols() > 0 { [(0, m)].into_iter().collect() } else { BTreeMap::new() };
                    GradedMap::new(ea.level(n).clone(), tgt, 0, comps).unwrap()
                })
                .collect();
            let (ea, eb) = if ea.top() <= eb.top() { (ea, eb) } else { (Arc::new(ea.truncate(eb.top())), eb) };
            let maps: Vec<GradedMap> = maps.into_iter().take((ea.top() + 2) as usize).collect();
            let sm = SimplicialMap { source: ea, target: eb, maps };
            check(c, format!("input {i}: E(f) is simplicial"), sm.check());
            let (cone, ell) = cone_restricted(&sm).unwrap();
            check(c, format!("input {i}: cone face identities"), cone.check_identities().passed);
            check(c, format!("input {i}: ℓ is simplicial"), ell.check());
        }
        let mut flagged = false;
        for i in 0..6 {
            let ring = if i % 2 == 0 { Ring::PrimeField(2) } else { Ring::Rationals };
            let (mut v, _, _) = random_resolution(&mut rng, ring);
            v.extend_top(4).unwrap();
            for n in 1..=4 {
                let l = v.latching(n);
                check(c, format!("resolution {i}, n = {n}: latching rank = direct rank"), l.rank == l.direct_rank);
                check(c, format!("resolution {i}, n = {n}: factorizations"), l.factorizations_hold);
                if n == 2 {
                    flagged |= !l.printed_count_matches;
                }
            }
        }
        check(c, "printed latching count flagged at n = 2", flagged);
        println!("  note: printed latching count differs from the surjection count at n = 2 (flagged)");
    });
}

/// Dimension of the degree-d part of the free Lie algebra on generators in
/// the given (even) degrees: d·dim L_d = Σ_{e|d} μ(d/e)·e·c_e, where c_N is
/// the t^N coefficient of -log(1 - Σ t^{deg}).
fn witt_dims(degrees: &[i64], top: i64) -> BTreeMap<i64, usize> {
    let top = top as usize;
    let mut p = vec![BigRational::zero(); top + 1];
    for &d in degrees {
        p[d as usize] += BigRational::one();
    }
    let mut c = vec![BigRational::zero(); top + 1];
    let mut power = p.clone();
    for j in 1..=top {
        for n in 1..=top {
            c[n] += &power[n] / BigRational::from_integer(j.into());
        }
        let mut next = vec![BigRational::zero(); top + 1];
        for (a, x) in power.iter().enumerate() {
            for (b, y) in p.iter().enumerate() {
                if a + b <= top && !x.is_zero() && !y.is_zero() {
                    next[a + b] += x * y;
                }
            }
        }
        power = next;
    }
    let mobius = |mut n: usize| -> i64 {
        let mut m = 1;
        let mut q = 2;
        while q * q <= n {
            if n.is_multiple_of(q) {
                n /= q;
                if n.is_multiple_of(q) {
                    return 0;
                }
                m = -m;
            }
            q += 1;
        }
        if n > 1 {
            m = -m;
        }
        m
    };
    let mut out = BTreeMap::new();
    for d in 1..=top {
        let mut s = BigRational::zero();
        for e in (1..=d).filter(|e| d % e == 0) {
            s += BigRational::from_integer((mobius(d / e) * e as i64).into()) * &c[e];
        }
        let dim = s / BigRational::from_integer(d.into());
        assert!(dim.is_integer(), "Witt count is integral");
        out.insert(d as i64, dim.to_integer().try_into().unwrap());
    }
    out
}

fn random_element(rng: &mut ChaCha8Rng, d: &FreeDGL, degree: i64) -> LieElement {
    let dim = d.piece(degree).dim();
    let coeffs: Vec<Scalar> = (0..dim).map(|_| Scalar::from_integer(rng.gen_range(-3i64..=3).into())).collect();
    d.from_coords(degree, &coeffs)
}

#[test]
fn criterion_8_algebra_kernel() {
    criterion(8, 60, |c| {
        let g = LieExpr::gen;
        let mut d = FreeDGL::new(
            "K",
            vec![
                Generator::new("a", 2),
                Generator::new("b", 2),
                Generator::new("c", 2),
                Generator::new("x", 5),
                Generator::new("y", 5),
                Generator::new("z", 5),
                Generator::new("u", 3),
            ],
            12,
        )
        .unwrap();
        d.set_differential("x", LieExpr::bracket(g("b"), g("c"))).unwrap();
        d.set_differential("y", LieExpr::bracket(g("c"), g("a"))).unwrap();
        d.set_differential("z", LieExpr::bracket(g("a"), g("b"))).unwrap();
        check(c, "declared differential is valid", d.check().passed);
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
        for _ in 0..8 {
            for k in 2..=12 {
                let u = random_element(&mut rng, &d, k);
                check(c, format!("d² = 0 in degree {k}"), d.differential(&d.differential(&u)).is_zero());
            }
        }
        for k in 2..=10 {
            for l in 2..=12 - k {
                let u = random_element(&mut rng, &d, k);
                let v = random_element(&mut rng, &d, l);
                check(c, format!("antisymmetry in degrees ({k}, {l})"), d.antisymmetry_residue(&u, &v).is_zero());
                check(c, format!("Leibniz in degrees ({k}, {l})"), d.leibniz_residue(&u, &v).is_zero());
                for m in 2..=12 - k - l {
                    let w = random_element(&mut rng, &d, m);
                    check(c, format!("Jacobi in degrees ({k}, {l}, {m})"), d.jacobi_residue(&u, &v, &w).is_zero());
                }
            }
        }
        for degrees in [vec![2, 2, 2], vec![2, 4], vec![2, 2, 4, 6], vec![4, 4], vec![2]] {
            let gens = degrees.iter().enumerate().map(|(i, &k)| Generator::new(&format!("g{i}"), k)).collect();
            let free = FreeDGL::new("F", gens, 12).unwrap();
            let oracle = witt_dims(&degrees, 12);
            for (k, dim) in oracle {
                check(c, format!("free Lie dimension on {degrees:?} in degree {k}"), free.piece(k).dim() == dim);
            }
        }
    });
}
