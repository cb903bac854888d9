//! The group S̃_I of signed permutations.
//!
//! For an index set I = {0, …, n−1} take the disjoint union of the pairs
//! {i⁺, i⁻}. A signed permutation is a bijection of that union which maps
//! pairs to pairs; it is recorded here as the underlying permutation of I
//! together with the set of indices whose pair orientation gets swapped
//! (`flips` = {i : σ(i⁺) = perm(i)⁻}). The group has order 2^n·n!.
//!
//! Two sign characters live on this group: `sgn` is the ordinary sign of the
//! underlying permutation, and `sgn′` counts orientation swaps. The defining
//! formula for sgn′ counts the indices with σ(i⁺) = i⁻, i.e. *flipped fixed
//! points*; a variant that counts every flip is also in use when twisting
//! orientations, so both readings are available behind [`SgnPrimeMode`].

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum PermError {
    #[error("images do not form a permutation of 0..{0}")]
    NotAPermutation(usize),
    #[error("flip index {0} outside domain 0..{1}")]
    FlipOutOfRange(usize, usize),
    #[error("domain sizes differ: {0} vs {1}")]
    DomainMismatch(usize, usize),
    #[error("tuple length {0} does not match domain size {1}")]
    LengthMismatch(usize, usize),
}

/// Which set of indices sgn′ counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SgnPrimeMode {
    /// (−1)^{#{i : perm(i) = i and i flipped}} — the defining formula.
    #[default]
    Literal,
    /// (−1)^{#flips} — the reading suggested by orientation twisting; this
    /// one is a multiplicative character, the literal one is not.
    AllFlips,
}

/// An element of S̃_I. Indices are 0-based; JSON uses 1-based images/indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPerm {
    perm: Vec<usize>,
    flips: BTreeSet<usize>,
}

impl SignedPerm {
    pub fn new(
        perm: Vec<usize>,
        flips: impl IntoIterator<Item = usize>,
    ) -> Result<Self, PermError> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(PermError::NotAPermutation(n));
            }
            seen[p] = true;
        }
        let flips: BTreeSet<usize> = flips.into_iter().collect();
        if let Some(&bad) = flips.iter().find(|&&i| i >= n) {
            return Err(PermError::FlipOutOfRange(bad, n));
        }
        Ok(SignedPerm { perm, flips })
    }

    pub fn identity(n: usize) -> Self {
        SignedPerm { perm: (0..n).collect(), flips: BTreeSet::new() }
    }

    pub fn domain_size(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn flips(&self) -> &BTreeSet<usize> {
        &self.flips
    }

    pub fn is_identity(&self) -> bool {
        self.flips.is_empty() && self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// self∘other: apply `other` first, then `self`. Flip bits accumulate
    /// mod 2 along the way: i is flipped in the composite iff exactly one of
    /// {i flipped by other, other(i) flipped by self} holds.
    pub fn compose(&self, other: &SignedPerm) -> Result<SignedPerm, PermError> {
        let n = self.domain_size();
        if n != other.domain_size() {
            return Err(PermError::DomainMismatch(n, other.domain_size()));
        }
        let perm: Vec<usize> = (0..n).map(|i| self.perm[other.perm[i]]).collect();
        let flips = (0..n)
            .filter(|&i| other.flips.contains(&i) != self.flips.contains(&other.perm[i]))
            .collect();
        Ok(SignedPerm { perm, flips })
    }

    pub fn inverse(&self) -> SignedPerm {
        let n = self.domain_size();
        let mut perm = vec![0; n];
        for (i, &p) in self.perm.iter().enumerate() {
            perm[p] = i;
        }
        let flips = self.flips.iter().map(|&i| self.perm[i]).collect();
        SignedPerm { perm, flips }
    }

    /// Sign of the underlying permutation.
    pub fn sgn(&self) -> i64 {
        perm_sign(&self.perm)
    }

    /// The second character; see [`SgnPrimeMode`] for the two readings.
    pub fn sgn_prime(&self, mode: SgnPrimeMode) -> i64 {
        let count = match mode {
            SgnPrimeMode::Literal => {
                self.flips.iter().filter(|&&i| self.perm[i] == i).count()
            }
            SgnPrimeMode::AllFlips => self.flips.len(),
        };
        if count % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Act on a tuple of oriented pairs: output position j carries the entry
    /// from position perm⁻¹(j), with its two slots swapped when that source
    /// index is flipped. This makes `act` a left action:
    /// act(a∘b, t) = act(a, act(b, t)).
    pub fn act_on_tuple<T: Clone>(&self, t: &[(T, T)]) -> Result<Vec<(T, T)>, PermError> {
        let n = self.domain_size();
        if t.len() != n {
            return Err(PermError::LengthMismatch(t.len(), n));
        }
        let mut out: Vec<(T, T)> = t.to_vec();
        for i in 0..n {
            let (a, b) = t[i].clone();
            out[self.perm[i]] = if self.flips.contains(&i) { (b, a) } else { (a, b) };
        }
        Ok(out)
    }

    /// |S̃_I| = 2^n · n!.
    pub fn group_order(n: usize) -> BigUint {
        let mut ord = BigUint::from(1u32) << n;
        for k in 2..=n {
            ord *= BigUint::from(k);
        }
        ord
    }

    /// Every element of S̃_n, in lexicographic (perm, flips) order. Meant for
    /// small n — the list has 2^n·n! entries.
    pub fn all(n: usize) -> Vec<SignedPerm> {
        let mut perms = Vec::new();
        let mut cur: Vec<usize> = Vec::new();
        let mut used = vec![false; n];
        fn rec(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
            if cur.len() == n {
                out.push(cur.clone());
                return;
            }
            for i in 0..n {
                if !used[i] {
                    used[i] = true;
                    cur.push(i);
                    rec(n, cur, used, out);
                    cur.pop();
                    used[i] = false;
                }
            }
        }
        rec(n, &mut cur, &mut used, &mut perms);
        let mut out = Vec::with_capacity(perms.len() << n);
        for p in perms {
            for mask in 0u64..(1u64 << n) {
                let flips = (0..n).filter(|i| mask >> i & 1 == 1);
                out.push(SignedPerm::new(p.clone(), flips).unwrap());
            }
        }
        out.sort();
        out
    }
}

pub(crate) fn perm_sign(perm: &[usize]) -> i64 {
    let n = perm.len();
    let mut seen = vec![false; n];
    let mut sign = 1i64;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

impl fmt::Display for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, &p) in self.perm.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}{}", p + 1, if self.flips.contains(&i) { "-" } else { "" })?;
        }
        write!(f, "]")
    }
}

// JSON: {"perm": [1-based images], "flips": [1-based indices]}.
#[derive(Serialize, Deserialize)]
struct SignedPermJson {
    perm: Vec<usize>,
    flips: Vec<usize>,
}

impl Serialize for SignedPerm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SignedPermJson {
            perm: self.perm.iter().map(|&p| p + 1).collect(),
            flips: self.flips.iter().map(|&i| i + 1).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SignedPerm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = SignedPermJson::deserialize(d)?;
        for list in [&raw.perm, &raw.flips] {
            if list.iter().any(|&x| x == 0) {
                return Err(serde::de::Error::custom("indices are 1-based"));
            }
        }
        SignedPerm::new(
            raw.perm.iter().map(|&p| p - 1).collect(),
            raw.flips.iter().map(|&i| i - 1),
        )
        .map_err(serde::de::Error::custom)
    }
}
