use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use kstar_bench::{periodic_bits, random_bits};
use kstar_core::{ncd, BitLz, BitString, CompressorContract};

fn bitlz(c: &mut Criterion) {
    let mut group = c.benchmark_group("bitlz_compress");
    for len in [256, 1024, 4096] {
        group.throughput(Throughput::Elements(len as u64));
        let inputs = [
            ("zeros", BitString::zeros(len)),
            ("periodic", periodic_bits(len, 37, 1)),
            ("random", random_bits(len, 2)),
        ];
        for (name, a) in &inputs {
            group.bench_with_input(BenchmarkId::new(*name, len), a, |b, a| {
                b.iter(|| BitLz.compressed_len(black_box(a)).unwrap())
            });
        }
    }
    group.finish();
}

fn ncd_pairs(c: &mut Criterion) {
    let a = random_bits(512, 3);
    let b = random_bits(512, 4);
    c.bench_function("ncd_512", |bench| {
        bench.iter(|| ncd(black_box(&a), black_box(&b), &BitLz).unwrap())
    });
}

criterion_group!(benches, bitlz, ncd_pairs);
criterion_main!(benches);
