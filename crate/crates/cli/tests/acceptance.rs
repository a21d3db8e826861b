//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p gpdkit-cli --test acceptance`. Exits non-zero if
//! any criterion fails.

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use gpdkit::dblgpd::{
    commutative_cube_check, cube_compose_check, eckmann_hilton_check, row_uniqueness, Axis, CommSquare, Cube,
    DoubleGroupoidXM, EhInstance, LabeledSquare, PremiseFailure,
};
use gpdkit::group::FiniteGroup;
use gpdkit::groupoid::{Arrow, FiniteGroupoid, Obj};
use gpdkit::guard::SizeGuard;
use gpdkit::presentation::{default_battery, vertex_group_presentation, verify_pushout_universal, PushoutSquare};
use gpdkit::rewriting::{CompletionLimits, RewriteSystem};
use gpdkit::vankampen::samples::{circle_cover, wedge_cover};
use gpdkit::vankampen::vkt_square;
use gpdkit::xmod::{
    check_axioms, find_isomorphism, free_xmod_presentation, kernel_central_check, morphisms_from_free, samples,
    Axiom, CrossedModule,
};
use gpdkit_cli::format::{parse, Document, FsResolver};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn corpus() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

fn gpdkit(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_gpdkit"))
        .args(args)
        .current_dir(corpus())
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

/// Every crossed module shipped with the library or the corpus.
fn bundled_xmods() -> Vec<(String, CrossedModule)> {
    let mut out = samples::valid();
    out.push(("s3-trivial-over-c2".into(), samples::s3_trivial_over_c2()));
    let mut files: Vec<PathBuf> = std::fs::read_dir(corpus())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "xm"))
        .collect();
    files.sort();
    for p in files {
        let text = std::fs::read_to_string(&p).unwrap();
        match parse(&text, &FsResolver { base: corpus() }) {
            Ok(Document::XMod(x)) => out.push((p.file_name().unwrap().to_string_lossy().into_owned(), x)),
            other => panic!("{}: {other:?}", p.display()),
        }
    }
    out
}

/// Reduced words of length ≤ k in one generator and its inverse, by brute
/// force over all letter strings.
fn reduced_words_one_generator(k: usize) -> usize {
    let mut total = 0;
    for len in 0..=k {
        for bits in 0..(1usize << len) {
            let reduced = (1..len).all(|i| ((bits >> i) & 1) == ((bits >> (i - 1)) & 1));
            if reduced {
                total += 1;
            }
        }
    }
    total
}

fn c1_circle_via_vkt() -> Outcome {
    let sq = vkt_square(&circle_cover(), &[0, 1], &default_battery(), &SizeGuard::default()).map_err(|e| e.to_string())?;
    let at0 = sq.pushout.from_left.vertex_map[sq.u.base_index(0).ok_or("0 not in U")?];
    let vg = vertex_group_presentation(&sq.pushout.presentation, at0).map_err(|e| e.to_string())?;
    let p = &vg.presentation;
    ensure(p.quiver().edge_count() == 1 && p.relations().is_empty(), || {
        format!("vertex group at 0 is {}", p.notation())
    })?;
    let sys = RewriteSystem::complete(p.quiver(), p.relations(), &CompletionLimits::default());
    let mut counts = Vec::new();
    for k in 0..=6 {
        let c = sys.count_normal_forms(p.quiver(), 0, k).ok_or("rewriting incomplete")?;
        let oracle = reduced_words_one_generator(k);
        ensure(c == oracle as u128 && oracle == 2 * k + 1, || format!("k={k}: {c} vs oracle {oracle}"))?;
        counts.push(c.to_string());
    }
    let (code, out) = gpdkit(&["--json", "vkt", "circle-cover.gpd", "--base", "0,1"]);
    ensure(code == 0, || format!("cli exit {code}: {out}"))?;
    Ok(format!("{} at 0; loops {}", p.notation(), counts.join(" ")))
}

fn c2_negative_hypothesis() -> Outcome {
    let (code, out) = gpdkit(&["vkt", "circle-cover.gpd", "--base", "0"]);
    ensure(code == 1, || format!("exit {code}"))?;
    ensure(out.contains("component {1} of W has no base point"), || out.clone())?;
    Ok("exit 1, W-component {1} named".into())
}

fn c3_pushout_universal() -> Outcome {
    let guard = SizeGuard::default();
    let battery = default_battery();
    let mut parts = Vec::new();
    for (name, cover) in [("circle", circle_cover()), ("wedge", wedge_cover())] {
        let base: Vec<usize> = if name == "circle" { vec![0, 1] } else { vec![0] };
        let sq = vkt_square(&cover, &base, &battery, &guard).map_err(|e| e.to_string())?;
        let square = PushoutSquare {
            shared: &sq.w.presentation,
            left: &sq.u.presentation,
            right: &sq.v.presentation,
            f: &sq.f,
            g: &sq.g,
            pushout: &sq.pushout,
        };
        let rep = verify_pushout_universal(&square, &battery, &guard).map_err(|e| e.to_string())?;
        ensure(rep.square_commutes, || format!("{name}: square does not commute"))?;
        for t in &rep.targets {
            // π₁(X, S) is free on two edges in both cases, so a one-object
            // target T receives |T|² morphisms.
            let order = battery.iter().find(|(n, _)| *n == t.target).unwrap().1.arrow_count();
            ensure(t.compatible_pairs == order * order, || format!("{name} {}: {} pairs", t.target, t.compatible_pairs))?;
            ensure(t.mediator_failures.is_empty() && t.stray_morphisms == 0, || {
                format!("{name} {}: {:?}", t.target, t)
            })?;
        }
        let pairs: usize = rep.targets.iter().map(|t| t.compatible_pairs).sum();
        parts.push(format!("{name}: {pairs} pairs, 0 failures"));
    }
    Ok(parts.join("; "))
}

fn c4_axioms() -> Outcome {
    for (name, xm) in [("A3⊴S3", samples::a3_in_s3()), ("S3→Aut(S3)", samples::aut_s3())] {
        let rep = check_axioms(&xm);
        ensure(rep.passed(), || format!("{name}: {:?}", rep.violations))?;
    }
    let aut = samples::aut_s3();
    ensure(aut.base().arrow_count() == 6, || format!("|Aut(S3)| = {}", aut.base().arrow_count()))?;
    // μ-trivial, trivial action, nonabelian M: CM2 reads n⁻¹mn = m.
    let s3 = FiniteGroup::symmetric(3);
    for p in [FiniteGroup::cyclic(2), FiniteGroup::trivial(), FiniteGroup::cyclic(3)] {
        let xm = CrossedModule::over_group(&p, s3.clone(), vec![p.unit(); 6], |m, _| m).unwrap();
        let rep = check_axioms(&xm);
        let v = rep.violation(Axiom::Cm2).ok_or("no CM2 violation")?;
        let get = |k: &str| v.witness.iter().find(|(n, _)| *n == k).map(|(_, s)| s.clone()).unwrap();
        let (m, n) = (s3.index_of(&get("m")).unwrap(), s3.index_of(&get("n")).unwrap());
        ensure(s3.mul(m, n) != s3.mul(n, m), || format!("witness {m},{n} commutes"))?;
        ensure(rep.violations.len() == 1, || format!("{:?}", rep.violations))?;
    }
    Ok("A3⊴S3 and S3→Aut(S3) pass, |Aut(S3)| = 6; μ-trivial S3 fails CM2 only".into())
}

fn c5_kernel_central() -> Outcome {
    let mut checked = 0;
    for (name, xm) in bundled_xmods() {
        if !check_axioms(&xm).passed() {
            continue;
        }
        let p = xm.base();
        for x in p.objects() {
            let g = xm.group(x);
            for k in g.elements().filter(|&k| p.is_identity(xm.mu(x, k))) {
                ensure(g.elements().all(|m| g.mul(k, m) == g.mul(m, k)), || {
                    format!("{name}: {} not central", g.name(k))
                })?;
            }
        }
        ensure(kernel_central_check(&xm).passed(), || format!("{name}: library disagrees"))?;
        checked += 1;
    }
    Ok(format!("{checked} crossed modules"))
}

/// μ(n) = k⁻¹h⁻¹ga evaluated straight from the crossed module.
fn boundary_law(xm: &CrossedModule, s: &LabeledSquare) -> bool {
    let p = xm.base();
    let corner = p.tgt(s.right);
    let Some(path) = p.compose_all(&[p.inverse(s.bottom), p.inverse(s.left), s.top, s.right]) else {
        return false;
    };
    p.src(s.top) == p.src(s.left) && s.label < xm.group(corner).order() && xm.mu(corner, s.label) == path
}

fn c6_closure_and_interchange() -> Outcome {
    let mut arrays = 0usize;
    let mut pairs = 0usize;
    for xm in [samples::c2_trivial_boundary(), samples::c2_identity()] {
        let dg = DoubleGroupoidXM::from_xmod(&xm).unwrap();
        let c = dg.carrier();
        ensure(c.len() == 16, || format!("C2 carrier has {} squares", c.len()))?;
        for s in c {
            ensure(boundary_law(&xm, s), || format!("carrier square {}", dg.show(s)))?;
            for t in c {
                for r in [dg.hcompose(s, t), dg.vcompose(s, t)].into_iter().flatten() {
                    pairs += 1;
                    ensure(boundary_law(&xm, &r), || format!("{} from {} and {}", dg.show(&r), dg.show(s), dg.show(t)))?;
                }
            }
        }
        for a in c {
            for b in c.iter().filter(|b| b.left == a.right) {
                for d in c.iter().filter(|d| d.top == a.bottom) {
                    for e in c.iter().filter(|e| e.top == b.bottom && e.left == d.right) {
                        let i = dg.interchange_check(a, b, d, e).map_err(|e| e.to_string())?;
                        ensure(i.holds() && boundary_law(&xm, &i.rows_first), || {
                            format!("array {} {} / {} {}", dg.show(a), dg.show(b), dg.show(d), dg.show(e))
                        })?;
                        arrays += 1;
                    }
                }
            }
        }
    }
    let xm = samples::a3_in_s3();
    let dg = DoubleGroupoidXM::from_xmod(&xm).unwrap();
    let (np, nm) = (xm.base().arrow_count(), xm.group(Obj(0)).order());
    ensure(dg.len() == np * np * np * nm, || format!("A3⊴S3 carrier has {} squares", dg.len()))?;
    let ix = index(&dg);
    let mut rng = StdRng::seed_from_u64(6);
    let samples = 10_000;
    for _ in 0..samples {
        let arr = random_array(&dg, &ix, 2, 2, &mut rng);
        let (a, b, d, e) = (arr[0][0], arr[0][1], arr[1][0], arr[1][1]);
        let i = dg.interchange_check(&a, &b, &d, &e).map_err(|e| e.to_string())?;
        ensure(i.holds() && boundary_law(&xm, &i.rows_first), || {
            format!("array {} {} / {} {}", dg.show(&a), dg.show(&b), dg.show(&d), dg.show(&e))
        })?;
    }
    Ok(format!(
        "C2: {pairs} composites, {arrays} arrays exhaustive; A3⊴S3 ({} squares): {samples} random arrays",
        dg.len()
    ))
}

struct Index<'a> {
    by_top_left: HashMap<(Arrow, Arrow), Vec<&'a LabeledSquare>>,
    by_left: HashMap<Arrow, Vec<&'a LabeledSquare>>,
    by_top: HashMap<Arrow, Vec<&'a LabeledSquare>>,
}

fn index(dg: &DoubleGroupoidXM) -> Index<'_> {
    let mut ix = Index {
        by_top_left: HashMap::new(),
        by_left: HashMap::new(),
        by_top: HashMap::new(),
    };
    for s in dg.carrier() {
        ix.by_top_left.entry((s.top, s.left)).or_default().push(s);
        ix.by_left.entry(s.left).or_default().push(s);
        ix.by_top.entry(s.top).or_default().push(s);
    }
    ix
}

/// Random composable array, filled row by row.
fn random_array(dg: &DoubleGroupoidXM, ix: &Index<'_>, rows: usize, cols: usize, rng: &mut StdRng) -> Vec<Vec<LabeledSquare>> {
    let mut out: Vec<Vec<LabeledSquare>> = Vec::new();
    for i in 0..rows {
        let mut row: Vec<LabeledSquare> = Vec::new();
        for j in 0..cols {
            let s = match (i, j) {
                (0, 0) => dg.carrier().choose(rng),
                (0, _) => ix.by_left[&row[j - 1].right].choose(rng).copied(),
                (_, 0) => ix.by_top[&out[i - 1][0].bottom].choose(rng).copied(),
                _ => ix.by_top_left[&(out[i - 1][j].bottom, row[j - 1].right)].choose(rng).copied(),
            };
            row.push(*s.expect("every matching boundary has squares"));
        }
        out.push(row);
    }
    out
}

fn c7_thin_closure() -> Outcome {
    let mut checked = 0;
    for xm in [samples::c2_trivial_boundary(), samples::c2_identity()] {
        let dg = DoubleGroupoidXM::from_xmod(&xm).unwrap();
        let p = dg.base();
        let thin = |s: &LabeledSquare| s.label == xm.group(p.tgt(s.right)).unit();
        let c: Vec<_> = dg.carrier().iter().filter(|s| thin(s)).copied().collect();
        for s in &c {
            for t in &c {
                for r in [dg.hcompose(s, t), dg.vcompose(s, t)].into_iter().flatten() {
                    ensure(thin(&r) && dg.is_thin(&r), || format!("{} ∘ {}", dg.show(s), dg.show(t)))?;
                    checked += 1;
                }
            }
        }
        for a in p.arrows() {
            for s in [dg.hidentity(a), dg.videntity(a), dg.connection_neg(a), dg.connection_pos(a)] {
                ensure(thin(&s) && boundary_law(&xm, &s), || format!("{} not thin", dg.show(&s)))?;
            }
        }
    }
    Ok(format!("{checked} thin composites; identities and connections thin"))
}

fn c8_array_order() -> Outcome {
    let mut rng = StdRng::seed_from_u64(8);
    let mut total = 0;
    for xm in [samples::a3_in_s3(), samples::c2_identity(), samples::interval_c2()] {
        let dg = DoubleGroupoidXM::from_xmod(&xm).unwrap();
        let ix = index(&dg);
        for _ in 0..1000 {
            let arr = random_array(&dg, &ix, 3, 3, &mut rng);
            let a = dg.compose_array(&arr).map_err(|e| e.to_string())?;
            let b = dg.compose_array_by_columns(&arr).map_err(|e| e.to_string())?;
            ensure(a == b && boundary_law(&xm, &a), || format!("{} vs {}", dg.show(&a), dg.show(&b)))?;
            total += 1;
        }
    }
    Ok(format!("{total} random 3×3 arrays, 0 mismatches"))
}

fn c9_row_uniqueness() -> Outcome {
    let mut rows = 0;
    for g in [FiniteGroup::cyclic(6), FiniteGroup::symmetric(3)] {
        let gd = FiniteGroupoid::from_group(&g);
        let n = g.order();
        for len in 1..=3 {
            // Inner vertical edges and tops, each over all of G.
            let free = (len - 1) + len;
            for code in 0..n.pow(free as u32) {
                let digits: Vec<usize> = (0..free).map(|i| (code / n.pow(i as u32)) % n).collect();
                let mut verts = vec![g.unit()];
                verts.extend(&digits[..len - 1]);
                verts.push(g.unit());
                let tops = &digits[len - 1..];
                let mut row = Vec::new();
                for i in 0..len {
                    let (l, t, r) = (verts[i], tops[i], verts[i + 1]);
                    let bottom = g.mul(g.inv(l), g.mul(t, r));
                    row.push(CommSquare::new(&gd, Arrow(l), Arrow(t), Arrow(bottom), Arrow(r)).map_err(|e| e.to_string())?);
                }
                let top_product = row.iter().fold(g.unit(), |acc, q| g.mul(acc, q.top.0));
                let bottom_product = row.iter().fold(g.unit(), |acc, q| g.mul(acc, q.bottom.0));
                let v = row_uniqueness(&gd, &row).map_err(|e| e.to_string())?;
                ensure(top_product == bottom_product && v.holds() && v.top.0 == top_product, || {
                    format!("row {:?}", row)
                })?;
                rows += 1;
            }
        }
    }
    Ok(format!("{rows} rows in □(C6) and □(S3), lengths 1 to 3, exhaustive"))
}

fn c10_round_trip() -> Outcome {
    let guard = SizeGuard::default();
    let mut done = Vec::new();
    for (name, xm) in bundled_xmods() {
        if !check_axioms(&xm).passed() {
            continue;
        }
        let back = DoubleGroupoidXM::from_xmod(&xm).map_err(|e| e.to_string())?.to_xmod();
        let iso = find_isomorphism(&xm, &back, &guard)
            .map_err(|e| e.to_string())?
            .ok_or_else(|| format!("{name}: no isomorphism"))?;
        ensure(iso.fault(&xm, &back).is_none(), || format!("{name}: exhibited map is not a morphism"))?;
        for (x, m) in iso.maps.iter().enumerate() {
            let mut seen = m.clone();
            seen.sort_unstable();
            seen.dedup();
            ensure(seen.len() == back.group(Obj(x)).order() && m.len() == seen.len(), || format!("{name}: not bijective"))?;
        }
        done.push(name);
    }
    Ok(format!("{} crossed modules", done.len()))
}

/// Each face as a pair of two-edge paths between opposite corners.
fn faces_commute(g: &FiniteGroupoid, c: &Cube) -> bool {
    let m = |a: Arrow, b: Arrow| g.try_compose(a, b);
    let mut ok = true;
    for s in 0..2 {
        // z = s: x then y versus y then x.
        ok &= m(c.x[0][s], c.y[1][s]) == m(c.y[0][s], c.x[1][s]);
        // y = s: x then z versus z then x.
        ok &= m(c.x[s][0], c.z[1][s]) == m(c.z[0][s], c.x[s][1]);
        // x = s: y then z versus z then y.
        ok &= m(c.y[s][0], c.z[s][1]) == m(c.z[s][0], c.y[s][1]);
    }
    ok
}

fn random_potential(n: usize, rng: &mut StdRng) -> [[[Arrow; 2]; 2]; 2] {
    let mut phi = [[[Arrow(0); 2]; 2]; 2];
    for a in phi.iter_mut().flatten().flatten() {
        *a = Arrow(rng.gen_range(0..n));
    }
    phi
}

fn c11_cubes() -> Outcome {
    let mut rng = StdRng::seed_from_u64(11);
    let per = 1000;
    let mut counts = [0usize; 3];
    for n in [5usize, 7] {
        let g = FiniteGroupoid::from_group(&FiniteGroup::cyclic(n));
        for _ in 0..per {
            let c = Cube::from_potential(&g, random_potential(n, &mut rng));
            ensure(faces_commute(&g, &c), || "potential cube has a non-commuting face".into())?;
            let v = commutative_cube_check(&g, &c).map_err(|e| e.to_string())?;
            ensure(v.commutative(), || format!("C{n}: {c:?} fails the folding check"))?;
            counts[0] += 1;

            let mut bad = c;
            let slot = rng.gen_range(0..12);
            let edge = match slot / 4 {
                0 => &mut bad.x[(slot / 2) % 2][slot % 2],
                1 => &mut bad.y[(slot / 2) % 2][slot % 2],
                _ => &mut bad.z[(slot / 2) % 2][slot % 2],
            };
            edge.0 = (edge.0 + rng.gen_range(1..n)) % n;
            ensure(!faces_commute(&g, &bad), || "perturbation kept every face commutative".into())?;
            let v = commutative_cube_check(&g, &bad).map_err(|e| e.to_string())?;
            ensure(!v.commutative(), || format!("C{n}: perturbed {bad:?} passes"))?;
            counts[1] += 1;
        }
        for axis in [Axis::X, Axis::Y, Axis::Z] {
            for _ in 0..per {
                let p1 = random_potential(n, &mut rng);
                let mut p2 = random_potential(n, &mut rng);
                for i in 0..2 {
                    for j in 0..2 {
                        match axis {
                            Axis::X => p2[0][i][j] = p1[1][i][j],
                            Axis::Y => p2[i][0][j] = p1[i][1][j],
                            Axis::Z => p2[i][j][0] = p1[i][j][1],
                        }
                    }
                }
                let (c1, c2) = (Cube::from_potential(&g, p1), Cube::from_potential(&g, p2));
                let v = cube_compose_check(&g, &c1, &c2, axis).map_err(|e| e.to_string())?;
                ensure(v.first && v.second && v.glued.commutative(), || format!("C{n} {axis}: {v:?}"))?;
                let glued = gpdkit::dblgpd::cube_compose(&g, &c1, &c2, axis).map_err(|e| e.to_string())?;
                ensure(faces_commute(&g, &glued), || "glued cube has a non-commuting face".into())?;
                counts[2] += 1;
            }
        }
    }
    Ok(format!(
        "{} commutative, {} perturbed, {} glued (per group and axis {per})",
        counts[0], counts[1], counts[2]
    ))
}

fn c12_eckmann_hilton() -> Outcome {
    let dg = DoubleGroupoidXM::from_xmod(&samples::c2_trivial_boundary()).unwrap();
    let inst = EhInstance::from_double_groupoid(&dg, Obj(0));
    let rep = eckmann_hilton_check(&inst);
    ensure(rep.passed(), || format!("{rep:?}"))?;
    let s3 = FiniteGroup::symmetric(3);
    let rep = eckmann_hilton_check(&EhInstance::from_group(&s3));
    let w = rep
        .premise_failures
        .iter()
        .find_map(|f| match *f {
            PremiseFailure::Interchange { a, b, c, d, .. } => Some((a, b, c, d)),
            _ => None,
        })
        .ok_or("S3 passes interchange")?;
    let (a, b, c, d) = w;
    let lhs = s3.mul(s3.mul(a, b), s3.mul(c, d));
    let rhs = s3.mul(s3.mul(a, c), s3.mul(b, d));
    ensure(lhs != rhs, || "printed witness satisfies interchange".into())?;
    let (code, out) = gpdkit(&["eh", "check", "s3.eh"]);
    ensure(code == 1 && out.contains("interchange fails"), || out.clone())?;
    Ok(format!(
        "C2 squares ({} elements) pass; S3 witness a={}, b={}, c={}, d={}",
        inst.len(),
        s3.name(a),
        s3.name(b),
        s3.name(c),
        s3.name(d)
    ))
}

fn c13_free_counts() -> Outcome {
    let c2 = FiniteGroup::cyclic(2);
    let guard = SizeGuard::default();
    let mut targets = samples::c2_targets();
    for (name, xm) in bundled_xmods() {
        if xm.is_one_object() && xm.base().arrow_count() == 2 && check_axioms(&xm).passed() {
            targets.push((name, xm));
        }
    }
    let mut lines = Vec::new();
    for w in c2.elements() {
        let f = free_xmod_presentation(&c2, &["r"], &[w]).map_err(|e| e.to_string())?;
        for (name, c) in &targets {
            let m = c.group(Obj(0));
            let fiber = m.elements().filter(|&e| c.mu(Obj(0), e) == Arrow(w)).count();
            let rep = morphisms_from_free(&f, c, &guard).map_err(|e| e.to_string())?;
            ensure(rep.assignments.len() == fiber, || {
                format!("w(r)={w}, {name}: {} morphisms vs fiber {fiber}", rep.assignments.len())
            })?;
            lines.push(fiber.to_string());
        }
    }
    Ok(format!("{} (w, target) pairs, counts {}", lines.len(), lines.join(",")))
}

fn c14_determinism() -> Outcome {
    let runs: &[&[&str]] = &[
        &["pi1", "circle.gpd", "--base", "0,1", "--vertex", "0"],
        &["pi1", "disc.gpd", "--base", "0"],
        &["pi1", "wedge.gpd", "--base", "*"],
        &["vkt", "circle-cover.gpd", "--base", "0,1"],
        &["vkt", "circle-cover.gpd", "--base", "0"],
        &["vkt", "wedge-cover.gpd", "--base", "*"],
        &["vkt", "interval-cover.gpd", "--base", "0,1,2"],
        &["vkt", "disc-cover.gpd", "--base", "0,1"],
        &["pushout", "circle-u.pres", "circle-v.pres", "circle-w.pres", "--f", "circle-f.mor", "--g", "circle-g.mor"],
        &["pushout", "wedge-u.pres", "wedge-v.pres", "wedge-w.pres", "--f", "wedge-f.mor", "--g", "wedge-g.mor"],
        &["xmod", "check", "a3-in-s3.xm"],
        &["xmod", "check", "bad.xm"],
        &["xmod", "aut", "s3.grp"],
        &["xmod", "normal", "s3.grp", "--gen", "(1 2)"],
        &["xmod", "free", "c2.grp", "--gen", "r=1", "--verify-against", "c2-identity.xm", "c4-onto-c2.xm"],
        &["xmod", "induced", "c2-identity.xm", "--target-group", "c2.grp", "--map", "1=1", "--verify-against", "c4-onto-c2.xm"],
        &["dgpd", "compose", "--dir", "h", "c2-horizontal.sq"],
        &["dgpd", "array", "a3-array.sq"],
        &["dgpd", "roundtrip", "aut-s3.xm"],
        &["cube", "check", "c7.cube"],
        &["cube", "compose", "--dir", "x", "c7.cube", "A", "C"],
        &["eh", "check", "c2-squares.eh"],
    ];
    for args in runs {
        let mut full = vec!["--json"];
        full.extend_from_slice(args);
        let (c1, o1) = gpdkit(&full);
        let (c2, o2) = gpdkit(&full);
        ensure(c1 == c2 && o1 == o2, || format!("{args:?} differs between runs"))?;
        ensure(serde_json::from_str::<serde_json::Value>(&o1).is_ok(), || format!("{args:?}: not JSON"))?;
        ensure(!o1.contains("elapsed"), || format!("{args:?}: timing in JSON"))?;
    }
    Ok(format!("{} commands, byte-identical JSON across two runs", runs.len()))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 14] = [
        ("circle via VKT", c1_circle_via_vkt),
        ("negative hypothesis", c2_negative_hypothesis),
        ("pushout universal property", c3_pushout_universal),
        ("crossed-module axioms", c4_axioms),
        ("kernel centrality", c5_kernel_central),
        ("closure and interchange", c6_closure_and_interchange),
        ("thin closure", c7_thin_closure),
        ("array order independence", c8_array_order),
        ("row uniqueness", c9_row_uniqueness),
        ("round trip", c10_round_trip),
        ("commutative cubes", c11_cubes),
        ("Eckmann-Hilton", c12_eckmann_hilton),
        ("free crossed module counts", c13_free_counts),
        ("CLI determinism", c14_determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (tag, detail) = match f() {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!(
            "criterion {:>2} {tag} {name}: {detail} ({:.2} s)",
            i + 1,
            start.elapsed().as_secs_f64()
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
