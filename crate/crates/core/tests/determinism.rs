//! Results must not depend on the number of worker threads.

use fpp_core::verify::{betti_numbers, multiplication_matrix, run_all, RunConfig};
use fpp_core::{embedded_corpus, ModularEmbedding, Parallelism};

fn in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap().install(f)
}

#[test]
fn kernels_and_ranks_identical_across_pools() {
    let c = embedded_corpus();
    let e = ModularEmbedding::new(263).unwrap();
    let m4 = multiplication_matrix(&c, 4, &e).unwrap();
    let m5 = multiplication_matrix(&c, 5, &e).unwrap();
    let reference = (m4.left_kernel_basis_with(Parallelism::Sequential), m5.rank_with(Parallelism::Sequential));
    for threads in [1, 2, 3, 8] {
        let got = in_pool(threads, || (m4.left_kernel_basis(), m5.rank()));
        assert_eq!(got, reference, "{threads} threads");
    }
}

#[test]
fn betti_identical_across_modes() {
    let c = embedded_corpus();
    let e = ModularEmbedding::new(263).unwrap();
    let seq = betti_numbers(&c, &e, 3, Parallelism::Sequential).unwrap();
    let par = in_pool(4, || betti_numbers(&c, &e, 3, Parallelism::Parallel).unwrap());
    assert_eq!(seq, par);
}

#[test]
fn reports_byte_identical() {
    let c = embedded_corpus();
    let e = ModularEmbedding::new(263).unwrap();
    let config = RunConfig::default();
    let a = in_pool(1, || run_all(&c, &e, &config).unwrap().to_structured());
    let b = in_pool(5, || run_all(&c, &e, &config).unwrap().to_structured());
    let seq = run_all(&c, &e, &RunConfig { parallelism: Parallelism::Sequential, ..config }).unwrap();
    assert_eq!(a, b);
    assert_eq!(a, seq.to_structured());
    assert_eq!(run_all(&c, &e, &config).unwrap().to_text(), seq.to_text());
}
