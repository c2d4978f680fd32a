//! D_{q,G}: a second operator with the same eigenfunctions.
use krall::dops::catalog;
use krall::families::FamilySpec;
use krall::krall::{construct_type1, generalized_operator};
use krall::poly::Polynomial;
use krall::rational::rat;

fn main() {
    let spec = FamilySpec::charlier(rat(3, 2)).unwrap();
    let dop = catalog(&spec).unwrap().remove(0);
    let kc = construct_type1(&spec, &dop, &Polynomial::from_ints(&[1, 2]), 6).unwrap();
    let g = Polynomial::from_ints(&[0, 1]);
    let (op, p1g) = generalized_operator(&kc, &g).unwrap();
    println!("P1,G = {p1g}");
    for n in 0..=5usize {
        let q = kc.q(n).unwrap();
        let ev = p1g.eval(&spec.theta(n as i64).unwrap());
        println!("n={n} eigenvalue {ev} holds: {}", op.apply(&q) == q.scale(&ev));
    }
}
