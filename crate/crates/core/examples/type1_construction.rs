//! Type-1 construction for Meixner with a hand-picked P2.
use krall::dops::{catalog, DKind};
use krall::families::FamilySpec;
use krall::krall::{construct_type1, verify_eigen};
use krall::poly::Polynomial;
use krall::rational::rat;

fn main() {
    let spec = FamilySpec::meixner(rat(1, 2), rat(7, 2)).unwrap();
    let p2 = Polynomial::from_ints(&[3, -1, 2]);
    for dop in catalog(&spec).unwrap().into_iter().filter(|d| d.kind == DKind::Type1) {
        let kc = construct_type1(&spec, &dop, &p2, 8).unwrap();
        let rep = verify_eigen(&kc, 8);
        println!("{}: P1 = {}", kc.label, kc.p1.as_ref().unwrap());
        for n in 0..=4 {
            println!("  q_{n} = {}   lambda_{n} = {}", kc.q(n).unwrap(), kc.lambda(n as i64).unwrap());
        }
        println!("  eigen ok: {}  order {:?}  genre {:?}", rep.passed(), rep.order, rep.genre);
    }
}
