//! Exact integer linear algebra: Smith normal form, rational rank, kernel
//! bases, and the Matrix Market interchange format. Everything is computed
//! over ℤ with arbitrary precision — no floating point anywhere.

use gcx::SparseIntMatrix;

fn main() {
    // a classic: invariant factors 2 | 4 rather than the diagonal you
    // might guess from elimination over ℚ
    let m = SparseIntMatrix::from_rows(&[&[2, 4], &[6, 8]]);
    let snf = m.smith_normal_form();
    println!("[[2,4],[6,8]]");
    println!("  invariant factors: {:?}", snf.invariant_factors);
    println!("  rank: {}, torsion: {:?}", snf.rank, snf.torsion());
    assert_eq!(snf.rank, m.rational_rank());

    // a rank-deficient example with mixed torsion
    let m = SparseIntMatrix::from_rows(&[
        &[2, 0, 0, 0],
        &[0, 6, 0, 0],
        &[0, 0, 0, 0],
    ]);
    let snf = m.smith_normal_form();
    println!("\ndiag(2,6,0) in a 3×4 matrix");
    println!("  invariant factors: {:?}", snf.invariant_factors);
    println!("  torsion (factors > 1): {:?}", snf.torsion());

    // kernels are returned as primitive integer vectors, first nonzero
    // entry positive, one per free column
    let m = SparseIntMatrix::from_rows(&[&[1, 2, 3], &[2, 4, 6]]);
    println!("\n[[1,2,3],[2,4,6]] (rank 1)");
    println!("  rational rank: {}", m.rational_rank());
    for v in m.rational_kernel_basis() {
        let as_str: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        println!("  kernel vector: ({})", as_str.join(", "));
        // verify: m · v = 0
        assert!(m.mul_vec(&v).unwrap().iter().all(|x| x == &0.into()));
    }

    // Matrix Market round trip: the on-disk format for boundary matrices
    let mut m = SparseIntMatrix::new(3, 5);
    m.set(0, 4, 7.into()).unwrap();
    m.set(2, 0, (-3).into()).unwrap();
    let text = m.to_matrix_market();
    println!("\nMatrix Market form:\n{text}");
    let back = SparseIntMatrix::from_matrix_market(&text).unwrap();
    assert_eq!(back, m);
    println!("parsed back identically");

    // big integers survive: 2^100 as a 1×1 matrix
    let big = num_bigint::BigInt::from(2u32).pow(100);
    let mut m = SparseIntMatrix::new(1, 1);
    m.set(0, 0, big.clone()).unwrap();
    let round = SparseIntMatrix::from_matrix_market(&m.to_matrix_market()).unwrap();
    assert_eq!(round.get(0, 0), big);
    println!("2^100 round-trips: {}", round.get(0, 0));
}
