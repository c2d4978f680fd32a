//! A sealed JSON report, as printed by `krall --json krall ...`.
use krall::krall::{NamedParams, Theorem};
use krall::rational::rat;
use krall::report::krall_report;

fn main() {
    let p = NamedParams { k: 2, a: rat(1, 2), c: rat(7, 2), ..Default::default() };
    let rep = krall_report(Theorem::Meixner1, &p, 6, true, true).unwrap();
    let env = rep.seal(0.0);
    println!("{}", serde_json::to_string_pretty(&env).unwrap());
    println!("digest verifies: {}", env.verify_digest());
}
