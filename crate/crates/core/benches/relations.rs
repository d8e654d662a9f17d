use criterion::{criterion_group, criterion_main, BatchSize, BenchmarkId, Criterion};
use gameforms::lab::{self, RingConfig};
use gameforms::par::Execution;
use gameforms::{GameId, Relation, RelationMemo, Session};

fn day_two() -> (Session, Vec<GameId>) {
    let mut s = Session::new();
    let forms = s.enumerate_forms(2).unwrap();
    (s, forms)
}

fn cold(base: &Session, execution: Execution) -> Session {
    let mut s = Session::from_parts(base.arena().clone(), RelationMemo::new());
    s.set_execution(execution);
    s
}

const MODES: [Execution; 2] = [Execution::Sequential, Execution::Parallel];

fn relation_batch(c: &mut Criterion) {
    let (base, forms) = day_two();
    let pairs: Vec<(GameId, GameId)> = forms.iter().flat_map(|&g| forms.iter().map(move |&h| (g, h))).collect();
    let mut group = c.benchmark_group("relation_batch_day2");
    group.sample_size(10);
    for relation in [Relation::ConwayEq, Relation::IterEq] {
        for mode in MODES {
            group.bench_with_input(
                BenchmarkId::new(format!("{relation}"), format!("{mode:?}")),
                &mode,
                |b, &mode| {
                    b.iter_batched(
                        || cold(&base, mode),
                        |mut s| s.relation_batch(relation, &pairs).unwrap(),
                        BatchSize::LargeInput,
                    )
                },
            );
        }
    }
    group.finish();
}

fn classify(c: &mut Criterion) {
    let (base, forms) = day_two();
    let mut group = c.benchmark_group("classify_iter_day2");
    group.sample_size(10);
    for mode in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(format!("{mode:?}")), &mode, |b, &mode| {
            b.iter_batched(
                || cold(&base, mode),
                |mut s| lab::classify(&mut s, &forms, Relation::IterEq, "").unwrap().class_count,
                BatchSize::LargeInput,
            )
        });
    }
    group.finish();
}

fn ring_triples(c: &mut Criterion) {
    let mut base = Session::new();
    base.enumerate_forms(1).unwrap();
    let config = RingConfig {
        max_birthday: 1,
        ..RingConfig::default()
    };
    let mut group = c.benchmark_group("ring_axioms_day1");
    group.sample_size(10);
    for mode in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(format!("{mode:?}")), &mode, |b, &mode| {
            b.iter_batched(
                || cold(&base, mode),
                |mut s| lab::check_ring_axioms(&mut s, &config).unwrap().checks_run,
                BatchSize::LargeInput,
            )
        });
    }
    group.finish();
}

criterion_group!(benches, relation_batch, classify, ring_triples);
criterion_main!(benches);
