//! Higher-order recurrences: nonzero offsets of multiplier * q_n in the q-basis.
use krall::krall::{band_profile, named, NamedParams, Theorem};
use krall::rational::{int, rat};
use krall::report::band_multiplier;

fn main() {
    let d = NamedParams::default;
    for (t, p) in [
        (Theorem::Charlier, NamedParams { k: 2, a: int(1), ..d() }),
        (Theorem::Laguerre, NamedParams { alpha: int(2), mass: rat(1, 3), ..d() }),
        (Theorem::Jacobi, NamedParams { alpha: rat(1, 2), beta: int(1), mass: int(1), ..d() }),
    ] {
        let (mult, k) = band_multiplier(t, &p).unwrap();
        let kc = named(t, &p, 14).unwrap().construction;
        let rep = band_profile(&kc, &mult, 10).unwrap();
        println!("{t}: multiplier {mult}, expected within [{}, {}], span {:?}", -k - 1, k + 1, rep.span());
        for row in &rep.rows {
            println!("  n={:<2} {:?}", row.n, row.offsets);
        }
    }
}
