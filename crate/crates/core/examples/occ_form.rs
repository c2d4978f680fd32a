//! The bilinear form that makes a Laguerre type-1 family orthogonal.
use krall::dops::catalog;
use krall::families::FamilySpec;
use krall::krall::construct_type1;
use krall::moments::{occ_form, occ_q};
use krall::poly::Polynomial;
use krall::rational::rat;

fn main() {
    let alpha = rat(5, 2);
    let p2 = Polynomial::from_ints(&[2, 1, 1]);
    let spec = FamilySpec::laguerre(alpha.clone()).unwrap();
    let dop = catalog(&spec).unwrap().remove(0);
    let kc = construct_type1(&spec, &dop, &p2, 6).unwrap();
    let qs = kc.qs(6).unwrap();
    let (q, vanishes) = occ_q(&alpha, &p2).unwrap();
    println!("Q = {q} (P2(1) = 0: {vanishes})");
    for i in 0..=6 {
        let row: Vec<String> = (0..=6).map(|j| occ_form(&alpha, &p2, &qs[i], &qs[j]).unwrap().to_string()).collect();
        println!("{}", row.join("  "));
    }
}
