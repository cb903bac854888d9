//! Bases of the graph complex: connected multigraphs of minimum valence 3,
//! one canonical representative per isomorphism class, with the classes
//! admitting a relation-sign −1 self-isomorphism flagged zero and dropped.

use gcx::complex::{canonicalize, enumerate_basis, enumerate_classes, Parity};
use gcx::Graph;

fn main() {
    // Θ is the unique odd class at (2,3); in the even convention the same
    // graph is its own negative (swap two parallel edges) and the basis
    // is empty.
    let theta = Graph::new(2, vec![(0, 1), (0, 1), (0, 1)]).unwrap();
    for parity in [Parity::Odd, Parity::Even] {
        let (sign, class) = canonicalize(&theta, parity);
        println!(
            "theta, {parity}: sign {sign}, zero-flagged {}, representative {}",
            class.zero, class.representative
        );
    }
    println!();

    // basis sizes across the bidegrees of small loop orders; at loop order
    // g the complex lives at (v, v+g−1) for v = 1 .. 2g−2
    for parity in [Parity::Odd, Parity::Even] {
        println!("basis dimensions, {parity} orientation:");
        for g in 2..=4 {
            print!("  loop order {g}:");
            for v in 1..=2 * g - 2 {
                let b = enumerate_basis(v, v + g - 1, parity, true);
                print!(" {}", b.len());
            }
            println!();
        }
    }
    println!();

    // what gets dropped: classes vs surviving classes at (4,6)
    for parity in [Parity::Odd, Parity::Even] {
        let classes = enumerate_classes(4, 6, parity, true);
        let kept: Vec<_> = classes.iter().filter(|c| !c.zero).collect();
        println!(
            "(4,6) {parity}: {} isomorphism classes, {} survive",
            classes.len(),
            kept.len()
        );
        for c in &classes {
            println!(
                "  {} {}",
                if c.zero { "zero" } else { "kept" },
                c.representative
            );
        }
    }
    println!();

    // excluding self-loops shrinks the count
    let with_loops = enumerate_basis(3, 5, Parity::Odd, true);
    let without = enumerate_basis(3, 5, Parity::Odd, false);
    println!(
        "(3,5) odd: {} classes with loops allowed, {} without",
        with_loops.len(),
        without.len()
    );

    // canonicalize is constant on isomorphism classes: any relabeling of Θ
    // lands on the same representative with the relation sign as prefactor
    let relabeled = Graph::new(2, vec![(1, 0), (0, 1), (1, 0)]).unwrap();
    let (s1, c1) = canonicalize(&theta, Parity::Odd);
    let (s2, c2) = canonicalize(&relabeled, Parity::Odd);
    assert_eq!(c1, c2);
    println!("theta relabeled: signs {s1} vs {s2}, same representative {}", c2.representative);
}
