//! The seven acceptance gates. Each test prints one ACCEPTANCE line with the
//! outcome; the library-side detail a criterion relies on is re-derived here
//! from scratch where independence matters (isomorphism enumeration, signs,
//! contraction, gcd-of-minors) rather than trusted from the crate.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use gcx::complex::{
    boundary_matrix, check_closed, enumerate_basis, gamma_pairing, Basis, Parity,
};
use gcx::strata::{cancellation_audit, dimension_report};
use gcx::{Graph, SignedGraphSum, SignedPerm};

macro_rules! ensure {
    ($cond:expr, $($arg:tt)*) => {
        if !$cond {
            return Err(format!($($arg)*));
        }
    };
}

fn report(n: usize, name: &str, result: Result<String, String>) {
    match &result {
        Ok(detail) => println!("ACCEPTANCE {n} ({name}): PASS — {detail}"),
        Err(detail) => println!("ACCEPTANCE {n} ({name}): FAIL — {detail}"),
    }
    if let Err(detail) = result {
        panic!("criterion {n} ({name}) failed: {detail}");
    }
}

fn theta() -> Graph {
    Graph::new(2, vec![(0, 1), (0, 1), (0, 1)]).unwrap()
}

fn k4() -> Graph {
    Graph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
}

/// The audited bidegree family: full chains for loop orders 2–4 (covering
/// every trivalent bidegree with ≤ 6 vertices) and the ≤ 5-vertex prefixes
/// for loop orders 5 and 6 (covering every min-valence-3 bidegree with ≤ 5
/// vertices and at most 6 more edges than vertices).
fn family(parity: Parity) -> Vec<Vec<Basis>> {
    (2..=6)
        .map(|g| {
            let vmax = if g <= 4 { 2 * g - 2 } else { 5 };
            (1..=vmax).map(|v| enumerate_basis(v, v + g - 1, parity, true)).collect()
        })
        .collect()
}

/// Everything in here is deliberately re-implemented from first principles:
/// no calls into the crate's isomorphism search, canonical form, sign
/// calculus, or Smith normal form.
mod oracle {
    use gcx::complex::Parity;
    use gcx::{Graph, GraphIso};
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::{One, Signed, Zero};
    use std::collections::BTreeSet;

    pub fn perm_sign(p: &[usize]) -> i64 {
        let mut inversions = 0usize;
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                if p[i] > p[j] {
                    inversions += 1;
                }
            }
        }
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn relation_sign(parity: Parity, a: &GraphIso) -> i64 {
        let arrow = if a.reversed.len() % 2 == 0 { 1 } else { -1 };
        match parity {
            Parity::Odd => perm_sign(&a.vertex_perm) * arrow,
            Parity::Even => perm_sign(&a.edge_perm),
        }
    }

    pub fn edge_coefficient(parity: Parity, g: &Graph, k: usize) -> i64 {
        match parity {
            Parity::Odd => {
                let (t, h) = g.edge(k);
                if (t + h) % 2 == 0 {
                    1
                } else {
                    -1
                }
            }
            Parity::Even => {
                if (k + 1) % 2 == 0 {
                    1
                } else {
                    -1
                }
            }
        }
    }

    /// Γ/e with the merged vertex first and everything else keeping its
    /// relative order — the same labeling convention the crate documents.
    pub fn contract(g: &Graph, e: usize) -> Graph {
        let (t, h) = g.edge(e);
        assert_ne!(t, h, "oracle contraction of a self-loop");
        let relabel = |v: usize| -> usize {
            if v == t || v == h {
                0
            } else {
                1 + (0..v).filter(|&u| u != t && u != h).count()
            }
        };
        let edges = g
            .edges()
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != e)
            .map(|(_, &(x, y))| (relabel(x), relabel(y)))
            .collect();
        Graph::new(g.vertex_count() - 1, edges).unwrap()
    }

    fn vertex_bijections(n: usize) -> Vec<Vec<usize>> {
        fn rec(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
            if cur.len() == n {
                out.push(cur.clone());
                return;
            }
            for v in 0..n {
                if !used[v] {
                    used[v] = true;
                    cur.push(v);
                    rec(n, cur, used, out);
                    cur.pop();
                    used[v] = false;
                }
            }
        }
        let mut out = Vec::new();
        rec(n, &mut Vec::new(), &mut vec![false; n], &mut out);
        out
    }

    /// All isomorphisms a → b of underlying undirected unordered graphs, by
    /// raw exhaustion: every vertex bijection, every compatible edge
    /// bijection, both reversal bits for every self-loop.
    pub fn all_isos(a: &Graph, b: &Graph) -> Vec<GraphIso> {
        let n = a.vertex_count();
        let m = a.edge_count();
        let mut out = Vec::new();
        if b.vertex_count() != n || b.edge_count() != m {
            return out;
        }
        for vp in vertex_bijections(n) {
            // assign image edges one source edge at a time
            fn assign(
                a: &Graph,
                b: &Graph,
                vp: &[usize],
                k: usize,
                eperm: &mut Vec<usize>,
                used: &mut [bool],
                reversed: &mut Vec<usize>,
                out: &mut Vec<GraphIso>,
            ) {
                let m = a.edge_count();
                if k == m {
                    // every self-loop can carry either reversal bit
                    let loops: Vec<usize> =
                        (0..m).filter(|&i| a.is_loop(i)).collect();
                    for mask in 0u32..(1 << loops.len()) {
                        let mut rev: BTreeSet<usize> = reversed.iter().copied().collect();
                        for (bit, &l) in loops.iter().enumerate() {
                            if mask & (1 << bit) != 0 {
                                rev.insert(l);
                            }
                        }
                        out.push(GraphIso {
                            vertex_perm: vp.to_vec(),
                            edge_perm: eperm.clone(),
                            reversed: rev,
                        });
                    }
                    return;
                }
                let (t, h) = a.edge(k);
                let (it, ih) = (vp[t], vp[h]);
                for j in 0..m {
                    if used[j] {
                        continue;
                    }
                    let (x, y) = b.edge(j);
                    let (fwd, bwd) = ((x, y) == (it, ih), (x, y) == (ih, it));
                    if !fwd && !bwd {
                        continue;
                    }
                    used[j] = true;
                    eperm.push(j);
                    if t != h && !fwd {
                        reversed.push(k);
                        assign(a, b, vp, k + 1, eperm, used, reversed, out);
                        reversed.pop();
                    } else {
                        assign(a, b, vp, k + 1, eperm, used, reversed, out);
                    }
                    eperm.pop();
                    used[j] = false;
                }
            }
            assign(
                a,
                b,
                &vp,
                0,
                &mut Vec::new(),
                &mut vec![false; m],
                &mut Vec::new(),
                &mut out,
            );
        }
        out
    }

    pub fn is_zero_class(g: &Graph, parity: Parity) -> bool {
        all_isos(g, g).iter().any(|a| relation_sign(parity, a) == -1)
    }

    /// Determinant by Laplace expansion along the first row.
    pub fn det(m: &[Vec<BigInt>]) -> BigInt {
        let n = m.len();
        if n == 0 {
            return BigInt::one();
        }
        if n == 1 {
            return m[0][0].clone();
        }
        let mut acc = BigInt::zero();
        for (j, entry) in m[0].iter().enumerate() {
            if entry.is_zero() {
                continue;
            }
            let minor: Vec<Vec<BigInt>> = m[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != j)
                        .map(|(_, v)| v.clone())
                        .collect()
                })
                .collect();
            let term = entry * det(&minor);
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
        fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for i in start..n {
                cur.push(i);
                rec(i + 1, n, k, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(0, n, k, &mut Vec::new(), &mut out);
        out
    }

    /// Invariant factors from the gcd-of-k×k-minors characterization:
    /// f_k = d_k / d_{k−1} with d_k the gcd of all k×k minors.
    pub fn minor_gcd_invariant_factors(m: &[Vec<BigInt>]) -> Vec<BigInt> {
        let rows = m.len();
        let cols = m.first().map_or(0, |r| r.len());
        let mut factors = Vec::new();
        let mut prev = BigInt::one();
        for k in 1..=rows.min(cols) {
            let mut g = BigInt::zero();
            for ri in combinations(rows, k) {
                for ci in combinations(cols, k) {
                    let sub: Vec<Vec<BigInt>> = ri
                        .iter()
                        .map(|&r| ci.iter().map(|&c| m[r][c].clone()).collect())
                        .collect();
                    g = g.gcd(&det(&sub));
                }
            }
            if g.is_zero() {
                break;
            }
            factors.push(&g / &prev);
            prev = g;
        }
        factors.iter().map(|f| f.abs()).collect()
    }
}

fn criterion_1() -> Result<String, String> {
    let start = std::time::Instant::now();
    let mut products = 0usize;
    for parity in [Parity::Odd, Parity::Even] {
        for bases in family(parity) {
            let mut matrices = Vec::new();
            for i in 1..bases.len() {
                matrices.push(
                    boundary_matrix(&bases[i], &bases[i - 1]).map_err(|e| e.to_string())?,
                );
            }
            for i in 1..matrices.len() {
                let product =
                    matrices[i - 1].multiply(&matrices[i]).map_err(|e| e.to_string())?;
                ensure!(
                    product.is_zero(),
                    "δ² ≠ 0 from source ({}, {}) in {parity}",
                    bases[i + 1].vertices,
                    bases[i + 1].edges
                );
                products += 1;
            }
        }
    }
    Ok(format!(
        "{products} consecutive boundary products vanish across both parities in {:.1?}",
        start.elapsed()
    ))
}

fn criterion_2() -> Result<String, String> {
    let odd = enumerate_basis(2, 3, Parity::Odd, true);
    ensure!(odd.len() == 1, "odd (2,3) basis has {} classes, expected 1", odd.len());
    ensure!(
        odd.classes[0].representative == theta(),
        "odd (2,3) representative is {}, expected Θ",
        odd.classes[0].representative
    );
    let even = enumerate_basis(2, 3, Parity::Even, true);
    ensure!(even.is_empty(), "even (2,3) basis has {} classes, expected 0", even.len());
    let closed = check_closed(&SignedGraphSum::single(theta()), Parity::Odd)
        .map_err(|e| e.to_string())?;
    ensure!(closed.closed, "Θ is not closed in the odd convention");
    for (d, expected) in [(3usize, 0i64), (4, 1)] {
        let rep = dimension_report(&theta(), d).map_err(|e| e.to_string())?;
        ensure!(
            rep.class_degree == expected,
            "Θ degree at d={d} is {}, expected {expected}",
            rep.class_degree
        );
    }
    Ok("basis(2,3,odd) = {Θ}, basis(2,3,even) = ∅, δΘ = 0, degrees 0 and 1 at d = 3, 4".into())
}

fn criterion_3() -> Result<String, String> {
    let start = std::time::Instant::now();
    let mut vectors = 0usize;
    let mut pairs = 0usize;
    for parity in [Parity::Odd, Parity::Even] {
        for bases in family(parity) {
            for i in 1..bases.len() {
                let source = &bases[i];
                let matrix =
                    boundary_matrix(source, &bases[i - 1]).map_err(|e| e.to_string())?;
                for v in matrix.rational_kernel_basis() {
                    let sum = SignedGraphSum::from_vector(source, &v);
                    let entries =
                        gamma_pairing(&sum, parity, 3).map_err(|e| e.to_string())?;
                    vectors += 1;
                    pairs += entries.len();

                    // the oracle's own node inventory: one node per unit
                    // copy of each coefficient per non-loop edge whose
                    // contraction is not a zero class
                    let mut expected_nodes = std::collections::BTreeSet::new();
                    for (term, (c, g)) in sum.terms.iter().enumerate() {
                        let copies = c.abs().to_string().parse::<usize>().unwrap();
                        for k in 0..g.edge_count() {
                            if g.is_loop(k) {
                                continue;
                            }
                            if oracle::is_zero_class(&oracle::contract(g, k), parity) {
                                continue;
                            }
                            for copy in 0..copies {
                                expected_nodes.insert((term, copy, k));
                            }
                        }
                    }
                    let mut seen = std::collections::BTreeSet::new();
                    for e in &entries {
                        for side in [&e.left, &e.right] {
                            ensure!(
                                seen.insert((side.term, side.copy, side.edge)),
                                "node used twice in {parity} kernel pairing"
                            );
                        }
                        let (ca, ga) = &sum.terms[e.left.term];
                        let (cb, gb) = &sum.terms[e.right.term];
                        // witness must be one of the exhaustively enumerated
                        // isomorphisms between the two contractions
                        let qa = oracle::contract(ga, e.left.edge);
                        let qb = oracle::contract(gb, e.right.edge);
                        let isos = oracle::all_isos(&qa, &qb);
                        ensure!(
                            isos.contains(&e.witness),
                            "witness is not an isomorphism {qa} → {qb}"
                        );
                        let sa = if ca.is_negative() { -1 } else { 1 };
                        let sb = if cb.is_negative() { -1 } else { 1 };
                        let product = sa
                            * oracle::edge_coefficient(parity, ga, e.left.edge)
                            * sb
                            * oracle::edge_coefficient(parity, gb, e.right.edge)
                            * oracle::relation_sign(parity, &e.witness);
                        ensure!(
                            product == -1,
                            "sign product is {product}, expected −1, for pair {:?} ↔ {:?}",
                            e.left,
                            e.right
                        );
                    }
                    ensure!(
                        seen == expected_nodes,
                        "pairing covers {} nodes, oracle expects {} ({parity}, source ({}, {}))",
                        seen.len(),
                        expected_nodes.len(),
                        source.vertices,
                        source.edges
                    );
                }
            }
        }
    }
    Ok(format!(
        "{pairs} pairs across {vectors} kernel vectors all satisfy the −1 condition under the exhaustive oracle in {:.1?}",
        start.elapsed()
    ))
}

fn criterion_4() -> Result<String, String> {
    let start = std::time::Instant::now();
    let mut audited = Vec::new();
    for parity in [Parity::Odd, Parity::Even] {
        for (v, e) in [(2usize, 3usize), (4, 6), (6, 9)] {
            let basis = enumerate_basis(v, e, parity, true);
            for class in &basis.classes {
                let g = &class.representative;
                let closed = check_closed(&SignedGraphSum::single(g.clone()), parity)
                    .map_err(|err| err.to_string())?
                    .closed;
                if !closed {
                    continue;
                }
                for d in [3, 4, 5] {
                    let report = cancellation_audit(g, parity, d).map_err(|err| {
                        format!("audit of {g} ({parity}, d={d}) failed: {err}")
                    })?;
                    let s = &report.summary;
                    ensure!(
                        s.type1 + s.type2 + s.type3 + s.type4 == s.subsets,
                        "type counts do not add up for {g}"
                    );
                    ensure!(
                        s.paired + s.self_paired == s.type4,
                        "unpaired type-4 stratum for {g}"
                    );
                    ensure!(
                        s.subsets == (1usize << (v + 1)) - 2 - (v + 1),
                        "expected all subsets of size ≥ 2, got {}",
                        s.subsets
                    );
                }
                audited.push((g.clone(), parity));
            }
        }
    }
    ensure!(
        audited.iter().any(|(g, p)| *p == Parity::Odd && *g == theta()),
        "family does not contain Θ (odd)"
    );
    ensure!(
        audited.iter().any(|(g, p)| *p == Parity::Even && *g == k4()),
        "family does not contain K4 (even)"
    );
    Ok(format!(
        "{} closed trivalent basis classes × d ∈ {{3,4,5}} audit clean (classification, ∞ ⟹ type 3, σ_A involutions, σ-inverse symmetry, 4-valent witnesses, type-3 inequality) in {:.1?}",
        audited.len(),
        start.elapsed()
    ))
}

fn criterion_5() -> Result<String, String> {
    for n in 0..=4usize {
        let generated = SignedPerm::all(n).len();
        let formula = (1usize << n) * (1..=n.max(1)).product::<usize>();
        ensure!(generated == formula, "|S̃_{n}| = {generated}, formula gives {formula}");
        ensure!(
            SignedPerm::group_order(n).to_string() == formula.to_string(),
            "group_order({n}) disagrees"
        );
    }
    let mut generators = 0usize;
    for parity in [Parity::Odd, Parity::Even] {
        for bases in family(parity) {
            for basis in bases {
                for class in &basis.classes {
                    let g = &class.representative;
                    let auts = g.aut_group();
                    let images: std::collections::BTreeSet<SignedPerm> = auts
                        .iter()
                        .map(|a| g.psi_gamma(a).map_err(|e| e.to_string()))
                        .collect::<Result<_, _>>()?;
                    ensure!(
                        images.len() == auts.len(),
                        "ψ_Γ is not injective on {g} ({} automorphisms, {} images)",
                        auts.len(),
                        images.len()
                    );
                    generators += 1;
                }
            }
        }
    }
    // the Θ counts, re-derived with the oracle's isomorphism enumeration
    // and sign formulas rather than the library's
    let theta = theta();
    for (d, expected) in [(3usize, 12i64), (4, 0)] {
        let by_library = theta.signed_aut_count(d);
        let by_oracle: i64 = oracle::all_isos(&theta, &theta)
            .iter()
            .map(|a| {
                let eps_v = (oracle::perm_sign(&a.vertex_perm) < 0) as usize;
                let eps_e = (oracle::perm_sign(&a.edge_perm) < 0) as usize;
                let eps_a = (a.reversed.len() % 2 == 1) as usize;
                if ((d - 1) * eps_e + d * (eps_v + eps_a)) % 2 == 0 {
                    1
                } else {
                    -1
                }
            })
            .sum();
        ensure!(
            by_library == expected && by_oracle == expected,
            "signed count of Θ at d={d}: library {by_library}, oracle {by_oracle}, expected {expected}"
        );
    }
    Ok(format!(
        "S̃ orders match through n = 4, ψ injective on {generators} generator classes, Θ signed counts 12 and 0 confirmed by the oracle"
    ))
}

fn criterion_6() -> Result<String, String> {
    // multiplicative congruential generator; fixed seed, no external RNG
    let mut state: u64 = 0x9e3779b97f4a7c15;
    let mut next = move || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (state >> 33) as usize
    };
    for trial in 0..200 {
        let rows = 1 + next() % 6;
        let cols = 1 + next() % 6;
        let dense: Vec<Vec<BigInt>> = (0..rows)
            .map(|_| (0..cols).map(|_| BigInt::from(next() % 9) - 4).collect())
            .collect();
        let mut m = gcx::SparseIntMatrix::new(rows, cols);
        for (r, row) in dense.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    m.set(r, c, v.clone()).map_err(|e| e.to_string())?;
                }
            }
        }
        let snf = m.smith_normal_form().invariant_factors;
        let expected = oracle::minor_gcd_invariant_factors(&dense);
        ensure!(
            snf == expected,
            "trial {trial}: SNF gives {snf:?}, gcd-of-minors oracle gives {expected:?}"
        );
    }
    Ok("200 random matrices up to 6×6: invariant factors match the gcd-of-minors oracle exactly".into())
}

fn criterion_7() -> Result<String, String> {
    let mut automorphisms = 0usize;
    for parity in [Parity::Odd, Parity::Even] {
        for bases in family(parity) {
            for basis in bases {
                for class in &basis.classes {
                    let g = &class.representative;
                    for a in g.aut_group() {
                        ensure!(
                            g.edge_tuple_action_check(&a).map_err(|e| e.to_string())?,
                            "commuting identity fails for {a} on {g}"
                        );
                        automorphisms += 1;
                    }
                }
            }
        }
    }
    Ok(format!(
        "f_Γ∘γ = φ(ψ_Γ(γ))∘f_Γ holds for all {automorphisms} automorphisms of all generator classes"
    ))
}

#[test]
fn criterion_1_delta_squared() {
    report(1, "δ² = 0", criterion_1());
}

#[test]
fn criterion_2_theta_certificate() {
    report(2, "Θ certificate", criterion_2());
}

#[test]
fn criterion_3_pairing_soundness() {
    report(3, "Γ-pairing soundness", criterion_3());
}

#[test]
fn criterion_4_stratum_calculus() {
    report(4, "stratum calculus", criterion_4());
}

#[test]
fn criterion_5_group_theory() {
    report(5, "group-theory suite", criterion_5());
}

#[test]
fn criterion_6_linear_algebra_oracle() {
    report(6, "Smith form vs gcd-of-minors", criterion_6());
}

#[test]
fn criterion_7_commuting_identity() {
    report(7, "edge-tuple commuting identity", criterion_7());
}
