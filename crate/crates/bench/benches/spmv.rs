use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use slimsell_core::generator::{gen_kronecker, GRAPH500_INITIATOR};
use slimsell_core::repr::spmv_step;
use slimsell_core::semiring::{Boolean, Tropical};
use slimsell_core::{
    bfs_spmv, bfs_traditional, BfsOptions, Graph, Schedule, SellCSigma, SlimSellRepr, Variant,
};

const SCALE: u32 = 14;
const EDGEFACTOR: usize = 16;
const C: usize = 8;

fn graph() -> Graph {
    gen_kronecker(SCALE, EDGEFACTOR, 1, GRAPH500_INITIATOR).unwrap()
}

/// A non-isolated vertex of high degree.
fn root(g: &Graph) -> usize {
    (0..g.n()).max_by_key(|&v| g.degree(v)).unwrap()
}

fn spmv(c: &mut Criterion) {
    let g = graph();
    let mut group = c.benchmark_group("spmv_tropical");
    for sigma in [1, 64, g.n()] {
        let slim = SlimSellRepr::build(&g, C, sigma).unwrap();
        let sell = SellCSigma::build(&g, C, sigma, &Tropical).unwrap();
        let np = slim.layout().n_padded;
        let chunks = 0..slim.layout().n_chunks();
        let x: Vec<u32> = (0..np as u32)
            .map(|i| if i % 3 == 0 { i % 7 } else { u32::MAX })
            .collect();
        group.bench_with_input(BenchmarkId::new("slimsell", sigma), &x, |b, x| {
            b.iter(|| spmv_step(&slim, &Tropical, black_box(x), chunks.clone()).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("sell", sigma), &x, |b, x| {
            b.iter(|| spmv_step(&sell, &Tropical, black_box(x), chunks.clone()).unwrap())
        });
    }
    group.finish();

    let mut group = c.benchmark_group("spmv_boolean");
    let slim = SlimSellRepr::build(&g, C, g.n()).unwrap();
    let sell = SellCSigma::build(&g, C, g.n(), &Boolean).unwrap();
    let chunks = 0..slim.layout().n_chunks();
    let f: Vec<u8> = (0..slim.layout().n_padded)
        .map(|i| (i % 5 == 0) as u8)
        .collect();
    group.bench_function("slimsell", |b| {
        b.iter(|| spmv_step(&slim, &Boolean, black_box(&f), chunks.clone()).unwrap())
    });
    group.bench_function("sell", |b| {
        b.iter(|| spmv_step(&sell, &Boolean, black_box(&f), chunks.clone()).unwrap())
    });
    group.finish();
}

fn bfs(c: &mut Criterion) {
    let g = graph();
    let root = root(&g);
    let r = SlimSellRepr::build(&g, C, g.n()).unwrap();
    let mut group = c.benchmark_group("bfs");
    group.sample_size(20);
    group.bench_function("traditional", |b| {
        b.iter(|| bfs_traditional(&g, black_box(root)).unwrap())
    });
    for variant in Variant::ALL {
        for slimwork in [false, true] {
            let opts = BfsOptions {
                slimwork,
                ..BfsOptions::new(variant)
            };
            let id = format!("{variant}/slimwork={}", if slimwork { "on" } else { "off" });
            group.bench_function(id, |b| {
                b.iter(|| bfs_spmv(&r, black_box(root), &opts).unwrap())
            });
        }
    }
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get());
    for (schedule, slimchunk) in [
        (Schedule::Static, None),
        (Schedule::Dynamic, None),
        (Schedule::Dynamic, Some(16)),
    ] {
        let opts = BfsOptions {
            slimwork: true,
            slimchunk,
            schedule,
            workers,
            ..BfsOptions::new(Variant::Tropical)
        };
        let id = format!("tropical/{schedule}/slimchunk={slimchunk:?}/workers={workers}");
        group.bench_function(id, |b| {
            b.iter(|| bfs_spmv(&r, black_box(root), &opts).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, spmv, bfs);
criterion_main!(benches);
