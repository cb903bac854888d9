//! Boundary-stratum calculus for a closed trivalent graph: subsets
//! A ⊆ {∞} ⊔ V(Γ), the graphs Γ_A and Γ/Γ_A, the type 1–4 classification,
//! the permutations σ_A and σ_{e₁e₂}, chamber classification against
//! ψ_Γ(Aut), and dimension/degree bookkeeping.
//!
//! The two-case definition: for ∞ ∉ A, Γ_A is the subgraph spanned by A and
//! Γ/Γ_A collapses A to the front vertex; for ∞ ∈ A, Γ_A = Γ/(A−∞) and
//! Γ/Γ_A is the subgraph spanned by A−∞. The merged vertex always comes
//! first; all other vertices and all surviving edges keep their order.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::complex::{
    check_closed, gamma_pairing, ComplexError, Parity, SignedGraphSum,
};
use crate::graph::{Graph, GraphError, GraphIso};
use crate::signed_perm::{PermError, SgnPrimeMode, SignedPerm};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum StrataError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("subset has {0} elements, need at least 2")]
    SubsetTooSmall(usize),
    #[error("subset label {} out of range (graph has {vertices} vertices)", label + 1)]
    LabelOutOfRange { label: usize, vertices: usize },
    #[error("subset fits no stratum type: {0}")]
    Unclassifiable(String),
    #[error("subset is not of type 2")]
    NotTypeTwo,
    #[error("not a pair: {0}")]
    NotAPair(String),
    #[error("graph has repeated edges; chamber classification requires none in strict mode")]
    RepeatedEdgesStrictMode,
    #[error("graph is not trivalent")]
    NotTrivalent,
    #[error("graph is not closed under the boundary operator")]
    NotClosed,
    #[error("audit failure: {0}")]
    AuditFailure(String),
}

/// A subset of {∞} ⊔ V(Γ). Vertices are 0-based internally; in JSON the
/// subset is a sorted array with ∞ encoded as 0 and vertices 1-based.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Subset {
    pub infinity: bool,
    pub vertices: BTreeSet<usize>,
}

impl Subset {
    pub fn of_vertices(vs: impl IntoIterator<Item = usize>) -> Self {
        Subset { infinity: false, vertices: vs.into_iter().collect() }
    }

    pub fn with_infinity(vs: impl IntoIterator<Item = usize>) -> Self {
        Subset { infinity: true, vertices: vs.into_iter().collect() }
    }

    pub fn len(&self) -> usize {
        self.vertices.len() + usize::from(self.infinity)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn validate(&self, g: &Graph) -> Result<(), StrataError> {
        if let Some(&label) = self.vertices.iter().find(|&&v| v >= g.vertex_count()) {
            return Err(StrataError::LabelOutOfRange { label, vertices: g.vertex_count() });
        }
        if self.len() < 2 {
            return Err(StrataError::SubsetTooSmall(self.len()));
        }
        Ok(())
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        let mut sep = "";
        if self.infinity {
            write!(f, "∞")?;
            sep = ",";
        }
        for v in &self.vertices {
            write!(f, "{sep}{}", v + 1)?;
            sep = ",";
        }
        write!(f, "}}")
    }
}

impl Serialize for Subset {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut labels: Vec<usize> = Vec::new();
        if self.infinity {
            labels.push(0);
        }
        labels.extend(self.vertices.iter().map(|v| v + 1));
        labels.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Subset {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let labels = Vec::<usize>::deserialize(d)?;
        let mut out = Subset { infinity: false, vertices: BTreeSet::new() };
        for l in labels {
            if l == 0 {
                out.infinity = true;
            } else if !out.vertices.insert(l - 1) {
                return Err(serde::de::Error::custom(format!("duplicate label {l}")));
            }
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum StratumType {
    One,
    Two,
    Three,
    Four,
}

impl StratumType {
    pub fn number(self) -> u8 {
        match self {
            StratumType::One => 1,
            StratumType::Two => 2,
            StratumType::Three => 3,
            StratumType::Four => 4,
        }
    }
}

impl fmt::Display for StratumType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "type {}", self.number())
    }
}

impl Serialize for StratumType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.number().serialize(s)
    }
}

impl<'de> Deserialize<'de> for StratumType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match u8::deserialize(d)? {
            1 => Ok(StratumType::One),
            2 => Ok(StratumType::Two),
            3 => Ok(StratumType::Three),
            4 => Ok(StratumType::Four),
            n => Err(serde::de::Error::custom(format!("stratum type must be 1..4, got {n}"))),
        }
    }
}

/// Γ_A and Γ/Γ_A with edge-index maps back into Γ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratumGraphs {
    pub gamma_a: Graph,
    pub gamma_mod_a: Graph,
    /// Γ edge index of each Γ_A edge, in Γ_A edge order.
    pub a_edges: Vec<usize>,
    /// Γ edge index of each Γ/Γ_A edge, in Γ/Γ_A edge order.
    pub q_edges: Vec<usize>,
    /// Γ vertex label of each Γ_A vertex (the merged vertex, when Γ_A is a
    /// quotient, reports the lowest merged label).
    pub a_vertices: Vec<usize>,
}

/// Subgraph spanned by `s`: vertices sorted ascending, edges with both
/// endpoints inside, orders and directions inherited.
fn spanned(g: &Graph, s: &BTreeSet<usize>) -> (Graph, Vec<usize>, Vec<usize>) {
    let verts: Vec<usize> = s.iter().copied().collect();
    let mut pos = vec![usize::MAX; g.vertex_count()];
    for (i, &v) in verts.iter().enumerate() {
        pos[v] = i;
    }
    let mut edges = Vec::new();
    let mut idx = Vec::new();
    for (k, &(t, h)) in g.edges().iter().enumerate() {
        if s.contains(&t) && s.contains(&h) {
            edges.push((pos[t], pos[h]));
            idx.push(k);
        }
    }
    (Graph::new(verts.len(), edges).unwrap(), idx, verts)
}

/// Quotient Γ/s: the merged vertex first, remaining vertices in order,
/// internal edges (loops included) removed, the rest in order.
fn contract_set(g: &Graph, s: &BTreeSet<usize>) -> (Graph, Vec<usize>, Vec<usize>) {
    let mut pos = vec![usize::MAX; g.vertex_count()];
    let mut verts = vec![*s.iter().next().expect("subset is non-empty")];
    for v in s {
        pos[*v] = 0;
    }
    let mut next = 1;
    for v in 0..g.vertex_count() {
        if !s.contains(&v) {
            pos[v] = next;
            verts.push(v);
            next += 1;
        }
    }
    let mut edges = Vec::new();
    let mut idx = Vec::new();
    for (k, &(t, h)) in g.edges().iter().enumerate() {
        if s.contains(&t) && s.contains(&h) {
            continue;
        }
        edges.push((pos[t], pos[h]));
        idx.push(k);
    }
    (Graph::new(next, edges).unwrap(), idx, verts)
}

/// The two-case Γ_A / Γ/Γ_A construction.
pub fn subgraph_and_quotient(g: &Graph, a: &Subset) -> Result<StratumGraphs, StrataError> {
    a.validate(g)?;
    let (ga, gq) = if a.infinity {
        (contract_set(g, &a.vertices), spanned(g, &a.vertices))
    } else {
        (spanned(g, &a.vertices), contract_set(g, &a.vertices))
    };
    Ok(StratumGraphs {
        gamma_a: ga.0,
        gamma_mod_a: gq.0,
        a_edges: ga.1,
        q_edges: gq.1,
        a_vertices: ga.2,
    })
}

/// Type of the stratum, decided by the valence structure of Γ_A.
pub fn classify(g: &Graph, a: &Subset) -> Result<StratumType, StrataError> {
    let sg = subgraph_and_quotient(g, a)?;
    let ga = &sg.gamma_a;
    if ga.vertex_count() == 2 && ga.edge_count() == 1 && !ga.is_loop(0) {
        return Ok(StratumType::Four);
    }
    let vals = ga.valences();
    if vals.iter().any(|&v| v < 2) {
        // uni- or zero-valent vertex: type 1 needs |A| ≥ 3 or no edges
        return if a.len() >= 3 || ga.edge_count() == 0 {
            Ok(StratumType::One)
        } else {
            Err(StrataError::Unclassifiable(format!(
                "A = {a} has a low-valence vertex but |A| = 2 and Γ_A has edges"
            )))
        };
    }
    if vals.iter().any(|&v| v == 2) {
        return Ok(StratumType::Two);
    }
    Ok(StratumType::Three)
}

/// All subsets A ⊆ {∞} ⊔ V(Γ) with |A| ≥ 2, the full set excluded,
/// ascending in (vertex bits, ∞ bit) order.
pub fn enumerate_subsets(g: &Graph) -> Vec<Subset> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    for mask in 0u64..(1 << (n + 1)) {
        if mask.count_ones() < 2 || mask == (1 << (n + 1)) - 1 {
            continue;
        }
        out.push(Subset {
            infinity: mask & (1 << n) != 0,
            vertices: (0..n).filter(|i| mask & (1 << i) != 0).collect(),
        });
    }
    out
}

/// σ_A together with the data that defines it: the bivalent vertex v_A (as
/// a Γ label) and its incident edges e_A¹ ≤ e_A² (Γ indices; equal for a
/// bivalent self-loop vertex).
pub fn sigma_a_with_edges(
    g: &Graph,
    a: &Subset,
) -> Result<(SignedPerm, usize, usize, usize), StrataError> {
    if classify(g, a)? != StratumType::Two {
        return Err(StrataError::NotTypeTwo);
    }
    let sg = subgraph_and_quotient(g, a)?;
    let ga = &sg.gamma_a;
    let va = ga
        .valences()
        .iter()
        .position(|&v| v == 2)
        .expect("type 2 has a bivalent vertex");
    let incident: Vec<usize> = (0..ga.edge_count())
        .filter(|&k| {
            let (t, h) = ga.edge(k);
            t == va || h == va
        })
        .map(|k| sg.a_edges[k])
        .collect();
    let m = g.edge_count();
    let mut perm: Vec<usize> = (0..m).collect();
    let (sigma, e1, e2) = match incident.as_slice() {
        // bivalent self-loop vertex: the case analysis degenerates to a
        // pure flip on the loop
        &[e] => (SignedPerm::new(perm, [e])?, e, e),
        &[a1, a2] => {
            let (e1, e2) = (a1.min(a2), a1.max(a2));
            perm.swap(e1, e2);
            let (t1, h1) = g.edge(e1);
            let (t2, h2) = g.edge(e2);
            let v = sg.a_vertices[va];
            let both_start = t1 == v && t2 == v;
            let both_end = h1 == v && h2 == v;
            let flips: Vec<usize> =
                if both_start || both_end { vec![e1, e2] } else { Vec::new() };
            (SignedPerm::new(perm, flips)?, e1, e2)
        }
        other => {
            return Err(StrataError::Unclassifiable(format!(
                "bivalent vertex with {} incident edges",
                other.len()
            )))
        }
    };
    Ok((sigma, sg.a_vertices[va], e1, e2))
}

/// σ_A for a type-2 subset: swaps the two edges at the lowest bivalent
/// vertex of Γ_A (with flips when both start or both end there), fixing
/// every other edge.
pub fn sigma_a(g: &Graph, a: &Subset) -> Result<SignedPerm, StrataError> {
    sigma_a_with_edges(g, a).map(|(s, _, _, _)| s)
}

/// σ_{e₁e₂} for a Γ-pair: e₁ ↦ e₂ unflipped; every other edge follows the
/// witness α: Γ/e₁ → Γ/e₂ under the index identification E(Γ)∖{eᵢ} ≅
/// E(Γ/eᵢ), with flip bit = the witness's direction-reversal bit.
pub fn sigma_pair(
    g: &Graph,
    e1: usize,
    e2: usize,
    witness: &GraphIso,
) -> Result<SignedPerm, StrataError> {
    let m = g.edge_count();
    for e in [e1, e2] {
        if e >= m {
            return Err(StrataError::NotAPair(format!("edge {} out of range", e + 1)));
        }
        if g.is_loop(e) {
            return Err(StrataError::NotAPair(format!("edge {} is a loop", e + 1)));
        }
    }
    let c1 = g.contract_edge(e1)?;
    let c2 = g.contract_edge(e2)?;
    if !witness.is_valid(&c1, &c2) {
        return Err(StrataError::NotAPair(format!(
            "witness is not an isomorphism Γ/{} → Γ/{}",
            e1 + 1,
            e2 + 1
        )));
    }
    let mut perm = vec![usize::MAX; m];
    let mut flips = Vec::new();
    perm[e1] = e2;
    for k in 0..m {
        if k == e1 {
            continue;
        }
        let k1 = k - usize::from(k > e1);
        let m1 = witness.edge_perm[k1];
        perm[k] = m1 + usize::from(m1 >= e2);
        if witness.reversed.contains(&k1) {
            flips.push(k);
        }
    }
    Ok(SignedPerm::new(perm, flips)?)
}

/// Is a signed permutation of the edges realized by an automorphism?
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChamberClass {
    InImage { witness: GraphIso },
    NotInImage,
}

impl ChamberClass {
    /// The orientation change carried by the witness: sgn(α,vertex)^d
    /// (+1 for NotInImage by convention — no chamber is preserved).
    pub fn orientation_sign(&self, d: usize) -> i64 {
        match self {
            ChamberClass::InImage { witness } if d % 2 == 1 => witness.sgn_vertex(),
            _ => 1,
        }
    }
}

/// Decides s ∈ image(ψ_Γ) by exhaustive comparison against ψ_Γ(Aut(g)).
/// In strict mode, graphs with repeated edges are rejected (ψ is injective
/// only without them, so the witness is canonical).
pub fn chamber_classify(
    g: &Graph,
    s: &SignedPerm,
    strict: bool,
) -> Result<ChamberClass, StrataError> {
    if strict {
        let mut pairs: Vec<(usize, usize)> =
            g.edges().iter().map(|&(t, h)| (t.min(h), t.max(h))).collect();
        pairs.sort_unstable();
        if pairs.windows(2).any(|w| w[0] == w[1]) {
            return Err(StrataError::RepeatedEdgesStrictMode);
        }
    }
    for alpha in g.aut_group() {
        if &g.psi_gamma(&alpha)? == s {
            return Ok(ChamberClass::InImage { witness: alpha });
        }
    }
    Ok(ChamberClass::NotInImage)
}

/// (−1)^{(d−1)ε + dε′} with ε, ε′ the parity bits of sgn(s), sgn′(s).
pub fn orientation_twist(s: &SignedPerm, d: usize, mode: SgnPrimeMode) -> i64 {
    assert!(d >= 3, "dimension must be at least 3");
    let eps = usize::from(s.sgn() == -1);
    let eps_prime = usize::from(s.sgn_prime(mode) == -1);
    if ((d - 1) * eps + d * eps_prime) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Degree and dimension bookkeeping for one stratum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumDim {
    pub subset: Subset,
    pub stratum_type: StratumType,
    /// dim C̄_{V(Γ_A)}(ℝ^d) = d|V(Γ_A)| − d − 1.
    pub fiber_dim: i64,
    /// For type 3: d|V(Γ_A)|−d−1 ≤ (2d/3)|E(Γ_A)|−(d+1), i.e. 3|V_A| ≤ 2|E_A|.
    pub type3_inequality: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionReport {
    pub d: usize,
    /// |E|(d−1) − d|V|.
    pub class_degree: i64,
    /// d|V|, the dimension of the total configuration space.
    pub total_space_dim: usize,
    pub strata: Vec<StratumDim>,
}

pub fn dimension_report(g: &Graph, d: usize) -> Result<DimensionReport, StrataError> {
    assert!(d >= 3, "dimension must be at least 3");
    if 2 * g.edge_count() != 3 * g.vertex_count() {
        return Err(StrataError::NotTrivalent);
    }
    let mut strata = Vec::new();
    for subset in enumerate_subsets(g) {
        let sg = subgraph_and_quotient(g, &subset)?;
        let stratum_type = classify(g, &subset)?;
        let (va, ea) = (sg.gamma_a.vertex_count(), sg.gamma_a.edge_count());
        strata.push(StratumDim {
            subset,
            stratum_type,
            fiber_dim: (d * va) as i64 - d as i64 - 1,
            type3_inequality: (stratum_type == StratumType::Three).then(|| 3 * va <= 2 * ea),
        });
    }
    Ok(DimensionReport {
        d,
        class_degree: (g.edge_count() * (d - 1)) as i64 - (d * g.vertex_count()) as i64,
        total_space_dim: d * g.vertex_count(),
        strata,
    })
}

/// One audited stratum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumRecord {
    pub subset: Subset,
    pub stratum_type: StratumType,
    pub gamma_a: Graph,
    pub gamma_mod_a: Graph,
    pub fiber_dim: i64,
    pub type3_inequality: Option<bool>,
    /// Type 2: the bivalent vertex (1-based Γ label) and its incident edges
    /// (1-based Γ indices), plus σ_A.
    pub v_a: Option<usize>,
    pub e_a: Option<(usize, usize)>,
    pub sigma_a: Option<SignedPerm>,
    /// Type 4: the paired subset, σ_{e₁e₂}, and orientation_twist(σ).
    pub partner: Option<Subset>,
    pub self_paired: bool,
    pub sigma_pair: Option<SignedPerm>,
    pub bookkeeping_sign: Option<i64>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditSummary {
    pub subsets: usize,
    pub type1: usize,
    pub type2: usize,
    pub type3: usize,
    pub type4: usize,
    pub paired: usize,
    pub self_paired: usize,
}

/// Full cancellation audit of one closed trivalent graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub parity: Parity,
    pub d: usize,
    pub sgn_prime_mode: SgnPrimeMode,
    pub graph: Graph,
    pub input_is_zero_class: bool,
    pub class_degree: i64,
    pub records: Vec<StratumRecord>,
    pub summary: AuditSummary,
}

/// Enumerates every subset with |A| ≥ 2, classifies it, and verifies the
/// full boundary-stratum bookkeeping: conservation of vertex/edge counts,
/// the ∞ ⟹ type 3 implication, σ_A involutivity for type 2, Γ-pairing
/// coverage with σ_{e₁e₂} inverse symmetry and the 4-valent-vertex witness
/// condition for type 4, and the type-3 dimension inequality. Any failed
/// check aborts with `AuditFailure` naming every violation.
///
/// Bookkeeping signs are reported in the literal sgn′ convention; use
/// [`cancellation_audit_with_mode`] to pick the other reading.
pub fn cancellation_audit(
    g: &Graph,
    parity: Parity,
    d: usize,
) -> Result<AuditReport, StrataError> {
    cancellation_audit_with_mode(g, parity, d, SgnPrimeMode::Literal)
}

/// Same audit as [`cancellation_audit`], with the sgn′ convention used for
/// the recorded bookkeeping signs made explicit. The checks themselves are
/// mode-independent; only `bookkeeping_sign` and the report header change.
pub fn cancellation_audit_with_mode(
    g: &Graph,
    parity: Parity,
    d: usize,
    mode: SgnPrimeMode,
) -> Result<AuditReport, StrataError> {
    assert!(d >= 3, "dimension must be at least 3");
    g.validate_generator()?;
    if 2 * g.edge_count() != 3 * g.vertex_count() {
        return Err(StrataError::NotTrivalent);
    }
    let sum = SignedGraphSum::single(g.clone());
    let closed = check_closed(&sum, parity)?;
    if !closed.closed {
        return Err(StrataError::NotClosed);
    }
    let pairing = gamma_pairing(&sum, parity, d)?;
    // single graph with coefficient 1: sides are plain edge indices
    let mut partner_of: std::collections::BTreeMap<usize, (usize, GraphIso)> =
        std::collections::BTreeMap::new();
    for entry in &pairing {
        partner_of.insert(entry.left.edge, (entry.right.edge, entry.witness.clone()));
        partner_of.insert(entry.right.edge, (entry.left.edge, entry.witness.inverse()));
    }

    let mut failures: Vec<String> = Vec::new();
    let mut records: Vec<StratumRecord> = Vec::new();
    let mut counts = [0usize; 4];
    let mut paired = 0;
    let mut self_paired = 0;

    for subset in enumerate_subsets(g) {
        let sg = subgraph_and_quotient(g, &subset)?;
        if sg.gamma_a.vertex_count() + sg.gamma_mod_a.vertex_count() != g.vertex_count() + 1
            || sg.gamma_a.edge_count() + sg.gamma_mod_a.edge_count() != g.edge_count()
        {
            failures.push(format!("A = {subset}: conservation violated"));
        }
        let stratum_type = classify(g, &subset)?;
        counts[stratum_type.number() as usize - 1] += 1;
        if subset.infinity && stratum_type != StratumType::Three {
            failures.push(format!("A = {subset} contains ∞ but is {stratum_type}"));
        }
        let (va_count, ea_count) = (sg.gamma_a.vertex_count(), sg.gamma_a.edge_count());
        let type3_inequality =
            (stratum_type == StratumType::Three).then(|| 3 * va_count <= 2 * ea_count);
        if type3_inequality == Some(false) {
            failures.push(format!("A = {subset}: type-3 dimension inequality violated"));
        }

        let mut rec = StratumRecord {
            subset: subset.clone(),
            stratum_type,
            gamma_a: sg.gamma_a.clone(),
            gamma_mod_a: sg.gamma_mod_a.clone(),
            fiber_dim: (d * va_count) as i64 - d as i64 - 1,
            type3_inequality,
            v_a: None,
            e_a: None,
            sigma_a: None,
            partner: None,
            self_paired: false,
            sigma_pair: None,
            bookkeeping_sign: None,
            notes: Vec::new(),
        };

        match stratum_type {
            StratumType::Two => {
                let (sigma, v_a, e1, e2) = sigma_a_with_edges(g, &subset)?;
                if !sigma.compose(&sigma)?.is_identity() {
                    failures.push(format!("A = {subset}: σ_A is not an involution"));
                }
                for k in 0..g.edge_count() {
                    if k != e1 && k != e2 && (sigma.perm()[k] != k || sigma.flips().contains(&k))
                    {
                        failures.push(format!("A = {subset}: σ_A moves edge {}", k + 1));
                    }
                }
                if e1 != e2 && sigma.sgn() != -1 {
                    failures.push(format!("A = {subset}: sgn(σ_A) ≠ −1"));
                }
                if e1 == e2 {
                    rec.notes.push("bivalent self-loop vertex: σ_A is a pure flip".into());
                }
                rec.v_a = Some(v_a + 1);
                rec.e_a = Some((e1 + 1, e2 + 1));
                rec.sigma_a = Some(sigma);
            }
            StratumType::Four => {
                let e = sg.a_edges[0];
                let (partner_edge, witness) = match partner_of.get(&e) {
                    Some((p, w)) => (*p, w.clone()),
                    None => {
                        // contraction class is zero: the stratum cancels
                        // against itself via a (−1)-relation self-witness
                        let c = g.contract_edge(e)?;
                        let Some(w) = c
                            .find_isomorphisms(&c)
                            .into_iter()
                            .find(|a| parity.relation_sign(a) == -1)
                        else {
                            failures.push(format!(
                                "A = {subset}: unpaired type-4 stratum with nonzero class"
                            ));
                            records.push(rec);
                            continue;
                        };
                        rec.notes.push("zero contraction class: self-paired".into());
                        (e, w)
                    }
                };
                let partner_subset = {
                    let (t, h) = g.edge(partner_edge);
                    Subset::of_vertices([t, h])
                };
                if classify(g, &partner_subset)? != StratumType::Four {
                    failures.push(format!(
                        "A = {subset}: partner {partner_subset} is not type 4"
                    ));
                }
                if witness.vertex_perm[0] != 0 {
                    failures.push(format!(
                        "A = {subset}: witness does not map the contracted vertex to the \
                         contracted vertex"
                    ));
                }
                let sigma = sigma_pair(g, e, partner_edge, &witness)?;
                let sigma_rev = sigma_pair(g, partner_edge, e, &witness.inverse())?;
                if sigma_rev != sigma.inverse() {
                    failures.push(format!(
                        "A = {subset}: σ_{{e₂e₁}} is not the inverse of σ_{{e₁e₂}}"
                    ));
                }
                if e == partner_edge {
                    self_paired += 1;
                    rec.self_paired = true;
                } else {
                    paired += 1;
                }
                rec.bookkeeping_sign = Some(orientation_twist(&sigma, d, mode));
                rec.partner = Some(partner_subset);
                rec.sigma_pair = Some(sigma);
            }
            _ => {}
        }
        records.push(rec);
    }

    if !failures.is_empty() {
        return Err(StrataError::AuditFailure(failures.join("; ")));
    }
    let summary = AuditSummary {
        subsets: records.len(),
        type1: counts[0],
        type2: counts[1],
        type3: counts[2],
        type4: counts[3],
        paired,
        self_paired,
    };
    Ok(AuditReport {
        parity,
        d,
        sgn_prime_mode: mode,
        graph: g.clone(),
        input_is_zero_class: closed.input_is_zero,
        class_degree: (g.edge_count() * (d - 1)) as i64 - (d * g.vertex_count()) as i64,
        records,
        summary,
    })
}
