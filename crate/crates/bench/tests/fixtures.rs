use zzlie_bench::{c_two_thirds, d_one_three, linear_case, symbolic_block};
use zzlie_core::classify::{solve_c_window, SolveOptions};
use zzlie_core::verify::{check_antisymmetry, check_jacobi};

#[test]
fn fixtures_are_lie_algebras() {
    assert!(check_jacobi(&c_two_thirds(), 1).passed());
    assert!(check_jacobi(&d_one_three(), 1).passed());
    assert!(check_antisymmetry(&symbolic_block(), 1).passed());
}

#[test]
fn linear_case_solves_uniquely() {
    assert!(solve_c_window(&linear_case(), 3, SolveOptions::default()).unwrap().is_unique());
}
