//! A construction serialized with its operator and sequence tables.
use krall::krall::{named, NamedParams, Theorem};
use krall::rational::int;

fn main() {
    let kc = named(Theorem::Charlier, &NamedParams { k: 2, a: int(1), ..Default::default() }, 4)
        .unwrap()
        .construction;
    println!("{}", serde_json::to_string_pretty(&kc.to_json(4).unwrap()).unwrap());
}
