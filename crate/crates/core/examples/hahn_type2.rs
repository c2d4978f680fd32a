//! Type-2 construction for Hahn polynomials from a w-vector.
use krall::dops::catalog;
use krall::families::FamilySpec;
use krall::krall::{construct_type2, verify_eigen};
use krall::rational::{int, rat};

fn main() {
    let spec = FamilySpec::hahn(int(12), rat(3, 2), int(7)).unwrap();
    let w = [rat(1, 3), int(-1), int(1)];
    for dop in catalog(&spec).unwrap() {
        let kc = construct_type2(&spec, &dop, &w, 10).unwrap();
        let rep = verify_eigen(&kc, 10);
        println!("{}", kc.label);
        println!("  P1 = {}", kc.p1.as_ref().unwrap());
        println!("  P2 = {}", kc.p2.as_ref().unwrap());
        println!("  lambda_0..3 = {:?}", (0..4).map(|n| kc.lambda(n).unwrap().to_string()).collect::<Vec<_>>());
        println!("  eigen ok: {} order {:?} genre {:?}", rep.passed(), rep.order, rep.genre);
    }
}
