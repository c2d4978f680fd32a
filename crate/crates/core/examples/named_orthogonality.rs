//! Named constructions and the Gram matrix of q_0..q_8 under their measures.
use krall::krall::{named, NamedParams, Theorem};
use krall::moments::gram_check;
use krall::rational::{int, rat};

fn main() {
    let d = NamedParams::default;
    let cases = [
        (Theorem::Charlier, NamedParams { k: 2, a: int(1), ..d() }),
        (Theorem::Meixner2, NamedParams { k: 2, a: rat(1, 2), c: rat(7, 2), ..d() }),
        (Theorem::Krawtchouk, NamedParams { k: 2, a: rat(1, 2), big_n: rat(15, 2), ..d() }),
        (Theorem::Hahn1, NamedParams { k: 2, alpha: rat(7, 2), c: rat(11, 2), big_n: rat(1, 3), ..d() }),
        (Theorem::Laguerre, NamedParams { alpha: int(2), mass: int(1), ..d() }),
        (Theorem::Jacobi, NamedParams { alpha: rat(1, 2), beta: int(2), mass: int(1), ..d() }),
    ];
    for (t, p) in cases {
        let nm = named(t, &p, 8).unwrap();
        let qs = nm.construction.qs(8).unwrap();
        let rep = gram_check(&nm.measure, &qs, 8);
        println!("{t:<11} orthogonal: {}  diagonal signs {:?}", rep.passed(), rep.diagonal_signs);
        for (range, holds) in &nm.ranges {
            println!("    {range}: {holds}");
        }
    }
}
