//! The exact substrate: cyclotomic scalars in the power basis, dense
//! elimination, canonical subspaces, and associative closures.
//!
//! Run with: cargo run -p twistcur --example exact_arithmetic

use twistcur::matrix::ExactMatrix;
use twistcur::scalar::{parse_scalar, CycField};
use twistcur::subspace::{algebra_closure, kernel, Subspace};

fn main() -> twistcur::Result<()> {
    // Q(zeta_12) has degree 4; everything reduces modulo the cyclotomic
    // polynomial z^4 - z^2 + 1
    let f = CycField::new(12)?;
    println!("conductor 12, degree {}", f.degree());
    let z = f.zeta();
    let mut p = f.one();
    for _ in 0..12 {
        p = p.mul(&z);
    }
    println!("z^12 = {}", p);
    let v = parse_scalar(&f, "1/2*z^2 - 3")?;
    println!("parsed: {}", v);
    println!("inverse: {}", v.inverse()?);

    // exact kernels: no tolerance anywhere
    let q = CycField::new(1)?;
    let m = ExactMatrix::parse(&q, &[&["1", "1"], &["1", "1"]])?;
    let k = kernel(&m);
    println!("kernel of the all-ones 2x2 has dim {}", k.dim());

    // subspaces are canonical echelon forms, so equality is bit-exact
    let a = Subspace::from_vectors(&q, 3, &[vec![q.one(), q.integer(-1), q.zero()]]);
    let b = Subspace::from_vectors(&q, 3, &[vec![q.integer(2), q.integer(-2), q.zero()]]);
    println!("span{{e - f}} == span{{2e - 2f}}: {}", a.equals(&b)?);
    let c = Subspace::from_vectors(&q, 3, &[vec![q.one(), q.one(), q.zero()]]);
    println!(
        "span{{e - f}} meets span{{e + f}} trivially: {}",
        a.intersect(&c)?.is_zero()
    );

    // the closure of the natural sl2 matrices is the full 2x2 algebra
    let e = ExactMatrix::parse(&q, &[&["0", "1"], &["0", "0"]])?;
    let fm = ExactMatrix::parse(&q, &[&["0", "0"], &["1", "0"]])?;
    let h = ExactMatrix::parse(&q, &[&["1", "0"], &["0", "-1"]])?;
    let closure = algebra_closure(&[e, fm, h], true)?;
    println!("closure of the natural sl2 representation: dim {}", closure.dim());
    Ok(())
}
