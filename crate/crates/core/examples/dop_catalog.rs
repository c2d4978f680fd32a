//! Every catalog D-operator, series against closed form on p_0..p_15.
use krall::dops::{catalog, verify_dop};
use krall::families::sample_specs;

fn main() {
    for spec in sample_specs() {
        for dop in catalog(&spec).unwrap() {
            let rep = verify_dop(&dop, 15);
            println!("{:<40} {:<8} {}", dop.label, if rep.passed() { "ok" } else { "FAILED" }, rep.closed_form);
        }
    }
}
