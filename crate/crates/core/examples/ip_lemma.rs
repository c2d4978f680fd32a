//! Inner-product lemmas as ratio identities.
use krall::moments::{ip_lemma_check, IpKind, IpParams};
use krall::rational::{int, rat};

fn main() {
    let p = IpParams { k: 2, a: rat(1, 2), c: rat(7, 2), alpha: int(0), big_n: int(0) };
    for kind in [IpKind::Lme1x, IpKind::MeixnerII] {
        let rep = ip_lemma_check(kind, &p, 5);
        println!("{} passed: {}", kind.name(), rep.passed());
        for row in &rep.rows {
            println!("  {:?}", row);
        }
    }
}
