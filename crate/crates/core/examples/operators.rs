//! Polynomials and shift operators: Delta, nabla and their composition.
use krall::opalg::DifferenceOperator;
use krall::poly::Polynomial;
use krall::rational::int;

fn main() {
    let p = Polynomial::from_ints(&[1, -2, 0, 1]);
    let delta = DifferenceOperator::delta();
    let nabla = DifferenceOperator::nabla();
    println!("p         = {p}");
    println!("Delta p   = {}", delta.apply(&p));
    println!("nabla p   = {}", nabla.apply(&p));
    // Delta nabla = Sh_1 - 2 + Sh_{-1}
    let dn = delta.compose(&nabla);
    println!("Delta nabla genre/order = {:?}", dn.genre_order().unwrap());
    println!("p(3) = {}, p shifted by 2 at 1 = {}", p.eval(&int(3)), p.shift(&int(2)).eval(&int(1)));
}
