use criterion::{black_box, criterion_group, criterion_main, Criterion};

use fock_core::characters::{goettsche_series, BettiVector};
use fock_core::correspondence::{bosonize, structure_iso_check};
use fock_core::ealgebra::{build_p, normalize, random_word, AlgElement};
use fock_core::fermion::check_relations_on_states;
use fock_core::modules::FermionSpace;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn normal_forms(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let words: Vec<AlgElement> = (0..200).map(|_| AlgElement::basis(random_word(&mut rng, 10))).collect();
    c.bench_function("normalize 200 random words", |b| {
        b.iter(|| {
            for w in &words {
                black_box(normalize(w));
            }
        })
    });
    c.bench_function("build P_6", |b| b.iter(|| black_box(build_p(6).unwrap())));
}

fn fock_spaces(c: &mut Criterion) {
    c.bench_function("relations on F, indices <= 8", |b| b.iter(|| black_box(check_relations_on_states(8))));
    c.bench_function("stable limit structure, degree <= 5", |b| {
        b.iter(|| black_box(structure_iso_check(&bosonize(FermionSpace), 5).unwrap()))
    });
}

fn series(c: &mut Criterion) {
    c.bench_function("goettsche series, q^12", |b| {
        b.iter(|| black_box(goettsche_series(BettiVector::projective_plane(), 12)))
    });
}

criterion_group!(benches, normal_forms, fock_spaces, series);
criterion_main!(benches);
