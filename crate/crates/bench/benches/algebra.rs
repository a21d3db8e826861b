use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use gpdkit::presentation::PushoutSquare;
use gpdkit::vankampen::samples::{circle_cover, wedge_cover};
use gpdkit::xmod::samples;
use gpdkit::{
    default_battery, enumerate_morphisms, verify_pushout_universal, vkt_square, CompletionLimits, DoubleGroupoidXM,
    FiniteGroup, FiniteGroupoid, GroupoidPresentation, Letter, RewriteSystem, SizeGuard,
};

fn morphisms(c: &mut Criterion) {
    let s3 = FiniteGroupoid::from_group(&FiniteGroup::symmetric(3));
    let s4 = FiniteGroupoid::from_group(&FiniteGroup::symmetric(4));
    let guard = SizeGuard::new(1 << 40);
    c.bench_function("enumerate_morphisms S3 -> S4", |b| {
        b.iter(|| enumerate_morphisms(black_box(&s3), black_box(&s4), &guard).unwrap().len())
    });
}

fn squares(c: &mut Criterion) {
    let xm = samples::a3_in_s3();
    c.bench_function("carrier A3 in S3", |b| b.iter(|| DoubleGroupoidXM::from_xmod(black_box(&xm)).unwrap().len()));
    let dg = DoubleGroupoidXM::from_xmod(&xm).unwrap();
    let s = dg.carrier();
    let a = s[17];
    let arrays: Vec<_> = s
        .iter()
        .filter(|b| b.left == a.right)
        .take(4)
        .flat_map(|b| {
            let d = *s.iter().find(|d| d.top == a.bottom).unwrap();
            s.iter().filter(move |e| e.top == b.bottom && e.left == d.right).take(4).map(move |e| (*b, d, *e))
        })
        .collect();
    c.bench_function("interchange A3 in S3", |bch| {
        bch.iter(|| {
            arrays
                .iter()
                .filter(|(b, d, e)| dg.interchange_check(&a, b, d, e).unwrap().holds())
                .count()
        })
    });
}

fn completion(c: &mut Criterion) {
    // ⟨a, b | a³, b², (ab)²⟩, a presentation of S3.
    let (a, b) = (Letter::pos(0), Letter::pos(1));
    let p = GroupoidPresentation::group("*", &["a", "b"], &[vec![a, a, a], vec![b, b], vec![a, b, a, b]]).unwrap();
    c.bench_function("knuth-bendix S3", |bch| {
        bch.iter(|| RewriteSystem::complete(p.quiver(), p.relations(), &CompletionLimits::default()).is_complete())
    });
}

fn pushouts(c: &mut Criterion) {
    let guard = SizeGuard::default();
    let battery = default_battery();
    for (name, cover, base) in [("circle", circle_cover(), vec![0, 1]), ("wedge", wedge_cover(), vec![0])] {
        let sq = vkt_square(&cover, &base, &battery, &guard).unwrap();
        let square = PushoutSquare {
            shared: &sq.w.presentation,
            left: &sq.u.presentation,
            right: &sq.v.presentation,
            f: &sq.f,
            g: &sq.g,
            pushout: &sq.pushout,
        };
        c.bench_function(&format!("pushout universality {name}"), |b| {
            b.iter(|| verify_pushout_universal(&square, &battery, &guard).unwrap().passed())
        });
        c.bench_function(&format!("vkt square {name}"), |b| {
            b.iter(|| vkt_square(&cover, &base, &battery, &guard).unwrap().evidence.counts_agree())
        });
    }
}

criterion_group!(benches, morphisms, squares, completion, pushouts);
criterion_main!(benches);
