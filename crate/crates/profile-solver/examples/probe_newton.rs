use std::time::Instant;

use profile_solver::{solve_profile, SolverOptions};

fn main() {
    let opts = SolverOptions {
        max_iters: 40,
        tol: 1e-12,
        initial: None,
    };
    for &a in &[1.05_f64, 0.96] {
        for &n in &[32_usize, 48, 64, 128, 256] {
            let t0 = Instant::now();
            match solve_profile(a, n, &opts) {
                Ok(sol) => {
                    println!(
                        "a={a} N={n}: iters={} res_sup={:.3e} c={:.12} u_x0={:.12} gamma={:.9} K={:?} ({:.2?})",
                        sol.newton_iters,
                        sol.residual_sup,
                        sol.c,
                        sol.u_x0,
                        sol.cusp_exponent,
                        sol.cusp_weights
                            .iter()
                            .map(|w| format!("{w:.3e}"))
                            .collect::<Vec<_>>(),
                        t0.elapsed()
                    );
                }
                Err(e) => println!("a={a} N={n}: FAILED after {:.2?}: {e}", t0.elapsed()),
            }
        }
    }
}
