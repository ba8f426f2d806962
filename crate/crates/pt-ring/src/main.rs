fn main() {
    // Keep the BLAS backend single-threaded: the sweeps parallelize over
    // grid points, and per-call threading would only add scheduling noise.
    std::env::set_var("OPENBLAS_NUM_THREADS", "1");
    std::process::exit(pt_ring::cli::run());
}
