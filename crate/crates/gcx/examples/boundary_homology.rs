//! Boundary matrices and homology: δ contracts one non-loop edge at a time,
//! δ² = 0, and Smith normal form turns the matrices into ranks and torsion.

use gcx::complex::{boundary_matrix, build_complex, homology, Parity, Ring};

fn main() {
    for parity in [Parity::Odd, Parity::Even] {
        let g = 3;
        let bases = build_complex(g, parity, true);
        println!("loop order {g}, {parity} orientation");
        for b in &bases {
            println!("  basis at ({}, {}): {} classes", b.vertices, b.edges, b.len());
        }

        // matrices δ: (v, e) → (v−1, e−1) and the δ² = 0 products
        let mut mats = Vec::new();
        for i in 1..bases.len() {
            let m = boundary_matrix(&bases[i], &bases[i - 1]).unwrap();
            println!(
                "  δ from ({}, {}): {}×{} with {} nonzero entries",
                bases[i].vertices,
                bases[i].edges,
                m.rows(),
                m.cols(),
                m.nnz()
            );
            mats.push(m);
        }
        for i in 1..mats.len() {
            let prod = mats[i - 1].multiply(&mats[i]).unwrap();
            assert!(prod.is_zero());
        }
        println!("  all consecutive products vanish (δ² = 0)");

        // the homology table; over the integers the incoming Smith form
        // also reports torsion
        let table = homology(&bases, Ring::Integers).unwrap();
        println!("  v  e  dim  rank_out  rank_in  homology  torsion");
        for r in &table.rows {
            let tors: Vec<String> = r.torsion.iter().map(|t| t.to_string()).collect();
            println!(
                "  {}  {}  {:3}  {:8}  {:7}  {:8}  [{}]",
                r.vertices,
                r.edges,
                r.dim_chain,
                r.rank_out,
                r.rank_in,
                r.dim_homology,
                tors.join(", ")
            );
        }
        println!();
    }

    // the loop-order-2 chain in the odd convention is just Θ, which is a
    // cycle on its own: one class, no boundaries, homology of rank one
    let bases = build_complex(2, Parity::Odd, true);
    let table = homology(&bases, Ring::Rationals).unwrap();
    let top = table.rows.last().unwrap();
    println!(
        "loop order 2, odd: dim H at ({}, {}) = {}",
        top.vertices, top.edges, top.dim_homology
    );
    assert_eq!(top.dim_homology, 1);
}
