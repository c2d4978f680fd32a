//! Casorati determinants of Charlier polynomials against the closed form.
use krall::families::FamilySpec;
use krall::moments::casorati;
use krall::rational::int;

fn main() {
    let spec = FamilySpec::charlier(int(1)).unwrap();
    for k in 1..=3 {
        for n in 0..=5 {
            let (det, closed) = casorati(&spec, k, n).unwrap();
            println!("k={k} n={n}  det = {det}  closed form = {closed}");
        }
    }
}
