//! One pass/fail line per acceptance criterion, with the measured runtime
//! against its pinned limit. Run with `cargo test --test acceptance`.

use std::collections::BTreeSet;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use qcycle::analysis::{
    check_dis_equality, cycle_set_finite_level, fixed_point_tests, has_finite_primitive_level, is_indecomposable,
    is_retractable, is_simple_blocks, is_simple_oracle, multipermutation_level, permutation_group,
    primitive_level_two_check, primitive_level_with_cache, retraction_series, solution_groups, structure_checks,
    LevelCache,
};
use qcycle::enumerate::{
    abelian_group_types, canonical_form, enumerate, translation_structures, EnumerationQuery, Kind,
};
use qcycle::extension::{extension_indecomposability_criterion, family_extension, ExtensionFamily};
use qcycle::group::BlockSystem;
use qcycle::model::fixtures;
use qcycle::{from_solution, to_solution, Permutation, QCycleSet};

type Outcome = Result<String, String>;
type Criterion = (u8, &'static str, Option<Duration>, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e<T>(r: qcycle::Result<T>) -> Result<T, String> {
    r.map_err(|err| err.to_string())
}

fn enumerated(n: usize, kind: Kind) -> &'static [QCycleSet] {
    static QCS: [OnceLock<Vec<QCycleSet>>; 7] = [const { OnceLock::new() }; 7];
    static CS: [OnceLock<Vec<QCycleSet>>; 8] = [const { OnceLock::new() }; 8];
    let cell = match kind {
        Kind::QCycleSet => &QCS[n],
        Kind::CycleSet => &CS[n],
    };
    cell.get_or_init(|| {
        enumerate(&EnumerationQuery::new(n, kind).allow_large()).expect("enumeration within the search limit")
    })
}

fn perm(cycles: &str, n: usize) -> Permutation {
    Permutation::parse_cycles(cycles, n).expect("valid cycle notation")
}

fn blocks(system: &[&[usize]]) -> BlockSystem {
    BlockSystem::new(system.iter().map(|b| b.iter().map(|p| p - 1).collect()).collect()).expect("valid blocks")
}

fn one_based_set(v: &[usize]) -> BTreeSet<usize> {
    v.iter().map(|p| p + 1).collect()
}

fn all_fixtures() -> Vec<(&'static str, QCycleSet)> {
    let mut out = vec![
        ("simple4", fixtures::simple4().unwrap()),
        ("simple9", fixtures::simple9().unwrap()),
        ("nonsimple6", fixtures::nonsimple6().unwrap()),
        ("primitive4", fixtures::primitive4().unwrap()),
        ("base3", fixtures::base3().unwrap()),
        ("J4", from_solution(&fixtures::j4().unwrap()).unwrap()),
    ];
    for (name, family) in [
        ("D1", ExtensionFamily::D1),
        ("D2(1)", ExtensionFamily::D2(1)),
        ("D2(2)", ExtensionFamily::D2(2)),
        ("D2(3)", ExtensionFamily::D2(3)),
        ("D3(3)", ExtensionFamily::D3(3)),
        ("D3(5)", ExtensionFamily::D3(5)),
        ("SF(1)", ExtensionFamily::SquareFree(1)),
    ] {
        let (base, pair) = family_extension(family).unwrap();
        out.push((name, pair.build(&base).unwrap()));
    }
    out
}

/// Simplicity by both methods plus the unique block system. Returns the
/// images of `Δ1` under `σ_a σ_b⁻¹` and `σ_a⁻¹ σ_b`, as block indices.
fn simple_example(x: &QCycleSet, system: &[&[usize]], a: usize, b: usize) -> Result<(usize, usize), String> {
    ensure(
        x.satisfies_axioms() && x.is_regular(),
        "fixture is not a regular q-cycle set",
    )?;
    ensure(e(is_simple_blocks(x))?, "not simple by blocks")?;
    ensure(e(is_simple_oracle(x))?, "not simple by congruences")?;
    let found = e(e(permutation_group(x))?.all_block_systems())?;
    let expected = blocks(system);
    ensure(found == vec![expected.clone()], format!("block systems {found:?}"))?;
    let block_of = |g: Permutation| -> Result<usize, String> {
        let image = one_based_set(&g.image_of_set(&expected.blocks()[0]));
        system
            .iter()
            .position(|b| b.iter().copied().collect::<BTreeSet<_>>() == image)
            .map(|i| i + 1)
            .ok_or(format!("image {image:?} is not a block"))
    };
    let positive = block_of(x.sigma(a - 1).compose(&x.sigma(b - 1).inverse()).unwrap())?;
    let negative = block_of(x.sigma(a - 1).inverse().compose(&x.sigma(b - 1)).unwrap())?;
    Ok((positive, negative))
}

fn c1() -> Outcome {
    let (positive, _) = simple_example(&fixtures::simple4().unwrap(), &[&[1, 4], &[2, 3]], 1, 4)?;
    ensure(positive == 2, format!("σ1σ4⁻¹(Δ1) = Δ{positive}"))?;
    Ok("blocks {{1,4},{2,3}}, σ1σ4⁻¹(Δ1) = Δ2".into())
}

fn c2() -> Outcome {
    let (positive, negative) = simple_example(
        &fixtures::simple9().unwrap(),
        &[&[1, 4, 9], &[2, 6, 8], &[3, 5, 7]],
        1,
        9,
    )?;
    ensure(positive == 3, format!("σ1σ9⁻¹(Δ1) = Δ{positive}"))?;
    ensure(negative == 2, format!("σ1⁻¹σ9(Δ1) = Δ{negative}"))?;
    Ok("unique blocks {{1,4,9},{2,6,8},{3,5,7}}, σ1σ9⁻¹(Δ1) = Δ3 and σ1⁻¹σ9(Δ1) = Δ2, so Dis(X,Δ1) moves Δ1".into())
}

fn c3() -> Outcome {
    let x = fixtures::nonsimple6().unwrap();
    ensure(!e(is_simple_blocks(&x))?, "simple by blocks")?;
    ensure(!e(is_simple_oracle(&x))?, "simple by congruences")?;
    let system = blocks(&[&[1, 6], &[2, 5], &[3, 4]]);
    for block in system.blocks() {
        ensure(
            e(qcycle::analysis::block_dis_in_fixer(&x, block, &system))?,
            format!("Dis(X,{:?}) leaves the fixer", one_based_set(block)),
        )?;
    }
    Ok(format!("not simple; Dis(X,Δ) ≤ Fix for all blocks of {system}"))
}

fn c4() -> Outcome {
    let x = fixtures::primitive4().unwrap();
    ensure(e(e(permutation_group(&x))?.is_primitive())?, "not primitive")?;
    let level = e(primitive_level_with_cache(&x, &LevelCache::new()))?;
    ensure(level == Some(1), format!("primitive level {level:?}"))?;
    Ok("primitive, level 1".into())
}

fn c5() -> Outcome {
    let s = fixtures::j4().unwrap();
    ensure(s.is_involutive(), "not involutive")?;
    ensure(s.check_yang_baxter(), "braid relation fails")?;
    let (g, f) = e(solution_groups(&s))?;
    let lambda: Vec<Permutation> = (0..4).map(|x| s.lambda(x).unwrap()).collect();
    let by_lambda = qcycle::group::GroupHandle::new(4, lambda).unwrap();
    ensure(g.same_group(&by_lambda), "G(X,r) differs from <λ>")?;
    let rho1 = s.rho(0).unwrap();
    ensure(rho1 == perm("(2 4)", 4), format!("ρ1 = {}", rho1.to_cycle_string()))?;
    ensure(!g.contains(&rho1), "ρ1 lies in G(X,r)")?;
    ensure(g.orbits() == f.orbits(), "orbits of G and F differ")?;
    Ok(format!(
        "|G| = {}, |F| = {}, ρ1 = (2 4) ∉ G, orbits {:?}",
        g.order(),
        f.order(),
        g.orbits().len()
    ))
}

fn c6() -> Outcome {
    let mut seen = Vec::new();
    for (name, family) in [
        ("D1", ExtensionFamily::D1),
        ("D2(1)", ExtensionFamily::D2(1)),
        ("D2(2)", ExtensionFamily::D2(2)),
        ("D2(3)", ExtensionFamily::D2(3)),
        ("D3(3)", ExtensionFamily::D3(3)),
        ("D3(5)", ExtensionFamily::D3(5)),
    ] {
        let (base, pair) = e(family_extension(family))?;
        ensure(
            e(pair.check(&base))?.is_valid(),
            format!("{name}: cocycle identities fail"),
        )?;
        let ext = e(pair.build(&base))?;
        ensure(ext.satisfies_axioms(), format!("{name}: extension violates the axioms"))?;
        ensure(
            e(extension_indecomposability_criterion(&base, &pair))?,
            format!("{name}: stabilizer criterion fails"),
        )?;
        ensure(
            e(is_indecomposable(&ext))?,
            format!("{name}: extension is decomposable"),
        )?;
        seen.push(format!("{name}:{}", ext.n()));
    }
    Ok(seen.join(" "))
}

fn c7() -> Outcome {
    let (base, pair) = e(family_extension(ExtensionFamily::SquareFree(1)))?;
    ensure(e(pair.check(&base))?.is_valid(), "cocycle identities fail")?;
    let x = e(pair.build(&base))?;
    ensure(x.n() == 6, format!("order {}", x.n()))?;
    ensure(x.is_square_free(), "not square-free")?;
    ensure(e(is_indecomposable(&x))?, "decomposable")?;
    ensure(
        !x.is_left_self_distributive() && !x.is_right_self_distributive(),
        "self-distributive",
    )?;
    ensure(e(multipermutation_level(&x))?.is_none(), "multipermutational")?;
    let series = e(retraction_series(&x))?;
    ensure(
        series.iter().all(|r| !r.is_cycle_set()),
        "some retraction is a cycle set",
    )?;
    Ok(format!(
        "order 6, retraction sizes {:?}",
        series.iter().map(QCycleSet::n).collect::<Vec<_>>()
    ))
}

fn c8() -> Outcome {
    let mut candidates = 0;
    let mut not_left = 0;
    for n in 2..=4 {
        for x in enumerated(n, Kind::QCycleSet) {
            if x.is_square_free() && e(is_indecomposable(x))? {
                candidates += 1;
                if !x.is_left_self_distributive() {
                    not_left += 1;
                }
                ensure(
                    x.is_self_distributive(),
                    format!("order {n}: indecomposable square-free structure that is neither left nor right self-distributive"),
                )?;
            }
        }
    }
    Ok(format!(
        "{candidates} indecomposable square-free structure(s) of orders 2-4, all self-distributive ({not_left} not left self-distributive)"
    ))
}

fn c9() -> Outcome {
    let all = enumerated(6, Kind::CycleSet);
    let mut indecomposable = 0;
    for x in all {
        if !e(is_indecomposable(x))? {
            continue;
        }
        indecomposable += 1;
        ensure(
            e(is_retractable(x))?,
            "irretractable indecomposable cycle set of order 6",
        )?;
        ensure(
            !e(is_simple_blocks(x))? && !e(is_simple_oracle(x))?,
            "simple cycle set of order 6",
        )?;
    }
    Ok(format!(
        "{} cycle sets, {indecomposable} indecomposable, all retractable, none simple",
        all.len()
    ))
}

fn c10() -> Outcome {
    let mut pool: Vec<QCycleSet> = (1..=4)
        .flat_map(|n| enumerated(n, Kind::QCycleSet).iter().cloned())
        .collect();
    pool.extend(all_fixtures().into_iter().map(|(_, x)| x));
    for x in &pool {
        ensure(e(check_dis_equality(x))?, "Dis⁺ ≠ Dis⁻")?;
        ensure(x.delta_pair_map_is_bijective(), "pair map not bijective")?;
        let s = e(to_solution(x))?;
        ensure(s.check_yang_baxter(), "braid relation fails")?;
        ensure(&e(from_solution(&s))? == x, "round trip differs")?;
        ensure(x.is_nondegenerate(), "degenerate")?;
    }
    Ok(format!("{} structures, zero violations", pool.len()))
}

fn c11() -> Outcome {
    let cache = LevelCache::new();
    let mut pool: Vec<QCycleSet> = Vec::new();
    for n in 2..=6 {
        pool.extend(enumerated(n, Kind::QCycleSet).iter().cloned());
        pool.extend(enumerated(n, Kind::CycleSet).iter().cloned());
    }
    pool.extend(all_fixtures().into_iter().map(|(_, x)| x));
    let (mut checked, mut cycle_sets, mut level_two) = (0, 0, 0);
    for x in &pool {
        if x.n() < 2 || !e(is_indecomposable(x))? {
            continue;
        }
        checked += 1;
        let level = e(primitive_level_with_cache(x, &cache))?;
        let finite = e(has_finite_primitive_level(x))?;
        ensure(
            finite == level.is_some(),
            format!("finite-level criterion disagrees on {x:?}"),
        )?;
        if x.is_cycle_set() {
            cycle_sets += 1;
            ensure(
                e(cycle_set_finite_level(x))? == level.is_some(),
                format!("cycle-set criterion disagrees on {x:?}"),
            )?;
            if !is_prime(x.n()) {
                let two = e(primitive_level_two_check(x))?;
                ensure(
                    two == (level == Some(2)),
                    format!("level-two check disagrees on {x:?} (level {level:?})"),
                )?;
                level_two += usize::from(two);
            }
        }
    }
    Ok(format!(
        "{checked} indecomposable structures ({cycle_sets} cycle sets, {level_two} of level 2), zero disagreements"
    ))
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn big_omega(mut n: usize) -> usize {
    let mut count = 0;
    let mut d = 2;
    while n > 1 {
        while n.is_multiple_of(d) {
            n /= d;
            count += 1;
        }
        d += 1;
    }
    count
}

fn c12() -> Outcome {
    let cache = LevelCache::new();
    let mut total = 0;
    for n in 2..=8 {
        let classes: BTreeSet<QCycleSet> = abelian_group_types(n)
            .iter()
            .flat_map(|t| translation_structures(t, false))
            .map(|x| canonical_form(&x))
            .collect();
        if n <= 6 {
            let from_search: BTreeSet<QCycleSet> = enumerated(n, Kind::QCycleSet)
                .iter()
                .filter(|x| {
                    let g = permutation_group(x).unwrap();
                    g.is_transitive() && g.is_abelian()
                })
                .cloned()
                .collect();
            ensure(
                from_search == classes,
                format!(
                    "order {n}: translation classes {} vs search {}",
                    classes.len(),
                    from_search.len()
                ),
            )?;
        }
        for x in &classes {
            let g = e(permutation_group(x))?;
            ensure(
                g.is_transitive() && g.is_abelian(),
                "translation structure outside the class",
            )?;
            let level = e(primitive_level_with_cache(x, &cache))?;
            ensure(
                level == Some(big_omega(n)),
                format!("order {n}: primitive level {level:?} ≠ Ω = {}", big_omega(n)),
            )?;
        }
        total += classes.len();
    }
    Ok(format!(
        "{total} classes of orders 2-8, primitive level = Ω(|X|) for all"
    ))
}

fn c13() -> Outcome {
    let mut with_level = 0;
    for n in 2..=6 {
        for x in enumerated(n, Kind::CycleSet) {
            if !e(is_indecomposable(x))? {
                continue;
            }
            let report = e(fixed_point_tests(x))?;
            ensure(report.is_consistent(), format!("{:?} on {x:?}", report.violations))?;
            if report.finite_primitive_level == Some(true) {
                with_level += 1;
                ensure(!report.has_fixed_point, "finite level with a fixed point")?;
            }
        }
    }
    Ok(format!(
        "{with_level} indecomposable cycle sets with finite level, all fixed-point-free"
    ))
}

fn c14() -> Outcome {
    let mut pool: Vec<&QCycleSet> = Vec::new();
    for n in 1..=Kind::QCycleSet.default_bound() {
        pool.extend(enumerated(n, Kind::QCycleSet));
    }
    for n in 1..=Kind::CycleSet.default_bound() {
        pool.extend(enumerated(n, Kind::CycleSet));
    }
    let mut exercised = [0usize; 6];
    for x in &pool {
        let report = e(structure_checks(x))?;
        for (i, item) in report.items.iter().enumerate() {
            ensure(item.holds(), format!("item ({}) fails on {x:?}", item.item))?;
            exercised[i] += usize::from(item.hypothesis);
        }
    }
    Ok(format!(
        "{} structures, hypotheses met per item {exercised:?}, zero counterexamples",
        pool.len()
    ))
}

fn main() {
    let criteria: [Criterion; 14] = [
        (1, "simple4 blocks and simplicity", Some(Duration::from_secs(1)), c1),
        (2, "simple9 blocks and simplicity", Some(Duration::from_secs(1)), c2),
        (3, "nonsimple6 displacement in fixer", Some(Duration::from_secs(1)), c3),
        (4, "primitive4 level one", Some(Duration::from_secs(1)), c4),
        (5, "J4 groups and orbits", Some(Duration::from_secs(1)), c5),
        (
            6,
            "extensions D1, D2(k<=3), D3(3), D3(5)",
            Some(Duration::from_secs(5)),
            c6,
        ),
        (7, "SF(1) square-free extension", Some(Duration::from_secs(1)), c7),
        (
            8,
            "no indecomposable square-free non-self-distributive, orders 2-4",
            Some(Duration::from_secs(300)),
            c8,
        ),
        (
            9,
            "order-6 indecomposable cycle sets retractable, none simple",
            Some(Duration::from_secs(600)),
            c9,
        ),
        (
            10,
            "property suite, order <= 4 and fixtures",
            Some(Duration::from_secs(120)),
            c10,
        ),
        (11, "finite-level oracles agree, order <= 6", None, c11),
        (12, "abelian formula, order <= 8", None, c12),
        (13, "fixed-point corollaries, cycle sets of order <= 6", None, c13),
        (14, "structure implications within bounds", None, c14),
    ];
    let mut failures = Vec::new();
    for (id, name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let late = limit.is_some_and(|l| elapsed > l);
        let limit_text = limit.map_or("no limit".to_string(), |l| format!("limit {l:?}"));
        let (status, detail) = match (&outcome, late) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("too slow; {d}")),
            (Err(m), _) => ("FAIL", m.clone()),
        };
        println!("criterion {id:>2} {status} {name} [{elapsed:.2?}, {limit_text}] {detail}");
        if status == "FAIL" {
            failures.push(id);
        }
    }
    if !failures.is_empty() {
        eprintln!("failing criteria: {failures:?}");
        std::process::exit(1);
    }
}
