//! Root systems of types B_r, C_r, F4 and G2.
//!
//! Simple roots follow the Bourbaki numbering:
//!
//! * `B_r`: `α_1 … α_{r-1}` long, `α_r` short.
//! * `C_r`: `α_1 … α_{r-1}` short, `α_r` long.
//! * `F4`: `α_1, α_2` long, `α_3, α_4` short.
//! * `G2`: `α_1` short, `α_2` long, so `R_s^+ = {α_1, α_1+α_2, 2α_1+α_2}`.
//!
//! No inner product is stored. Every pairing is computed from the Cartan
//! matrix, whose entry `(i, j)` is `⟨α_j, α_i∨⟩`, and coroots are generated
//! alongside roots by running the reflection closure on both sides at once.
//! Weights are always expressed over the fundamental weights.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default bound on the number of Weyl group elements that will be enumerated.
pub const DEFAULT_WEYL_BOUND: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    B,
    C,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::B => 'B',
            Family::C => 'C',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim() {
            "B" | "b" => Ok(Family::B),
            "C" | "c" => Ok(Family::C),
            "F" | "f" => Ok(Family::F),
            "G" | "g" => Ok(Family::G),
            other => Err(format!(
                "unknown family '{other}' (expected one of B, C, F, G)"
            )),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// A validated (family, rank) pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RootSystemType {
    family: Family,
    rank: usize,
}

impl RootSystemType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let reason = match family {
            Family::B | Family::C if rank < 2 => Some("rank must be at least 2"),
            Family::F if rank != 4 => Some("F exists only in rank 4"),
            Family::G if rank != 2 => Some("G exists only in rank 2"),
            _ => None,
        };
        match reason {
            Some(reason) => Err(Error::UnsupportedType {
                family: family.letter(),
                rank,
                reason,
            }),
            None => Ok(Self { family, rank }),
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
}

impl fmt::Display for RootSystemType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LengthClass {
    Short,
    Long,
}

/// A root, written over the simple roots.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Root {
    pub coeffs: Vec<i32>,
    pub length: LengthClass,
}

impl Root {
    pub fn is_positive(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }

    pub fn height(&self) -> i32 {
        self.coeffs.iter().sum()
    }

    pub fn is_short(&self) -> bool {
        self.length == LengthClass::Short
    }

    pub fn negated(&self) -> Root {
        Root {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            length: self.length,
        }
    }
}

/// An integral weight in fundamental-weight coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i32>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn add_scaled(&self, other: &Weight, k: i32) -> Weight {
        Weight(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + k * b)
                .collect(),
        )
    }

    pub fn neg(&self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }

    /// Pairing with a coroot given over the simple coroots.
    pub fn pair(&self, coroot: &[i32]) -> i64 {
        self.0
            .iter()
            .zip(coroot)
            .map(|(&a, &b)| a as i64 * b as i64)
            .sum()
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// The pair `(k_s, k_l)` of labels on short and long roots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KLabel {
    pub short: u32,
    pub long: u32,
}

impl KLabel {
    /// `(1, 1)`, the equal-parameter label.
    pub const EQUAL: KLabel = KLabel { short: 1, long: 1 };
    /// `(2, 1)`, the label tied to the little adjoint module.
    pub const LITTLE_ADJOINT: KLabel = KLabel { short: 2, long: 1 };

    pub fn new(short: u32, long: u32) -> Self {
        KLabel { short, long }
    }

    pub fn of(&self, length: LengthClass) -> u32 {
        match length {
            LengthClass::Short => self.short,
            LengthClass::Long => self.long,
        }
    }

    /// Whether this is one of the two labels the graded multiplicity theory uses.
    pub fn is_standard(&self) -> bool {
        *self == Self::EQUAL || *self == Self::LITTLE_ADJOINT
    }

    pub fn is_positive(&self) -> bool {
        self.short > 0 && self.long > 0
    }
}

impl fmt::Display for KLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.short, self.long)
    }
}

/// An integer partition with weakly decreasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Builds a partition from parts in any order; zero parts are dropped.
    pub fn from_parts(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Number of boxes.
    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Parts in weakly increasing order.
    pub fn ascending(&self) -> Vec<u32> {
        self.parts.iter().rev().copied().collect()
    }

    /// The conjugate partition: its `j`-th part counts the parts `> j`.
    pub fn dual(&self) -> Partition {
        let first = self.parts.first().copied().unwrap_or(0);
        let parts = (0..first)
            .map(|j| self.parts.iter().filter(|&&p| p > j).count() as u32)
            .collect();
        Partition { parts }
    }
}

#[derive(Debug)]
pub struct RootSystem {
    ty: RootSystemType,
    cartan: Vec<Vec<i32>>,
    simple_short: Vec<bool>,
    /// Positive roots in graded-lex order, followed by their negatives in the same order.
    roots: Vec<Root>,
    coroots: Vec<Vec<i32>>,
    index: HashMap<Vec<i32>, usize>,
    n_pos: usize,
    theta: usize,
    theta_s: usize,
    two_rho_vee: Vec<i32>,
    weyl: OnceLock<Result<WeylGroup>>,
}

fn cartan_matrix(family: Family, r: usize) -> (Vec<Vec<i32>>, Vec<bool>) {
    let mut a = vec![vec![0; r]; r];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let chain = |a: &mut Vec<Vec<i32>>, n: usize| {
        for i in 0..n - 1 {
            a[i][i + 1] = -1;
            a[i + 1][i] = -1;
        }
    };
    match family {
        Family::B => {
            chain(&mut a, r);
            // ⟨α_{r-1}, α_r∨⟩ = -2: long against the short coroot
            a[r - 1][r - 2] = -2;
            (a, (0..r).map(|i| i == r - 1).collect())
        }
        Family::C => {
            chain(&mut a, r);
            a[r - 2][r - 1] = -2;
            (a, (0..r).map(|i| i < r - 1).collect())
        }
        Family::F => {
            chain(&mut a, 4);
            a[2][1] = -2;
            (a, vec![false, false, true, true])
        }
        Family::G => {
            a[0][1] = -3;
            a[1][0] = -1;
            (a, vec![true, false])
        }
    }
}

impl RootSystem {
    pub fn build(ty: RootSystemType) -> Result<Self> {
        // Re-validate; the fields are private but deserialization bypasses `new`.
        let ty = RootSystemType::new(ty.family, ty.rank)?;
        let r = ty.rank;
        let (cartan, simple_short) = cartan_matrix(ty.family, r);

        // Reflection closure on (root, coroot) pairs starting from the simple roots.
        let mut found: HashMap<Vec<i32>, (Vec<i32>, LengthClass)> = HashMap::new();
        let mut queue = VecDeque::new();
        for i in 0..r {
            let e = unit(r, i);
            let len = if simple_short[i] {
                LengthClass::Short
            } else {
                LengthClass::Long
            };
            found.insert(e.clone(), (e.clone(), len));
            queue.push_back(e);
        }
        while let Some(b) = queue.pop_front() {
            let (c, len) = found[&b].clone();
            for i in 0..r {
                let pb: i32 = (0..r).map(|j| b[j] * cartan[i][j]).sum();
                let pc: i32 = (0..r).map(|j| c[j] * cartan[j][i]).sum();
                let mut nb = b.clone();
                nb[i] -= pb;
                let mut nc = c.clone();
                nc[i] -= pc;
                if !found.contains_key(&nb) {
                    found.insert(nb.clone(), (nc, len));
                    queue.push_back(nb);
                }
            }
        }

        let mut positive: Vec<(Vec<i32>, Vec<i32>, LengthClass)> = found
            .into_iter()
            .filter(|(b, _)| b.iter().all(|&x| x >= 0))
            .map(|(b, (c, l))| (b, c, l))
            .collect();
        positive.sort_by(|x, y| {
            let hx: i32 = x.0.iter().sum();
            let hy: i32 = y.0.iter().sum();
            hx.cmp(&hy).then_with(|| x.0.cmp(&y.0))
        });
        let n_pos = positive.len();
        let mut roots = Vec::with_capacity(2 * n_pos);
        let mut coroots = Vec::with_capacity(2 * n_pos);
        for (b, c, l) in &positive {
            roots.push(Root {
                coeffs: b.clone(),
                length: *l,
            });
            coroots.push(c.clone());
        }
        for (b, c, l) in &positive {
            roots.push(Root {
                coeffs: b.iter().map(|x| -x).collect(),
                length: *l,
            });
            coroots.push(c.iter().map(|x| -x).collect());
        }
        let index = roots
            .iter()
            .enumerate()
            .map(|(i, root)| (root.coeffs.clone(), i))
            .collect();
        let mut two_rho_vee = vec![0; r];
        for c in &coroots[..n_pos] {
            for (acc, x) in two_rho_vee.iter_mut().zip(c) {
                *acc += x;
            }
        }

        let mut rs = RootSystem {
            ty,
            cartan,
            simple_short,
            roots,
            coroots,
            index,
            n_pos,
            theta: usize::MAX,
            theta_s: usize::MAX,
            two_rho_vee,
            weyl: OnceLock::new(),
        };
        let dominant = |rs: &RootSystem, len: LengthClass| {
            (0..rs.n_pos)
                .filter(|&i| {
                    rs.roots[i].length == len && rs.root_weight(&rs.roots[i]).is_dominant()
                })
                .collect::<Vec<_>>()
        };
        let long = dominant(&rs, LengthClass::Long);
        let short = dominant(&rs, LengthClass::Short);
        assert_eq!(long.len(), 1, "expected a unique dominant long root");
        assert_eq!(short.len(), 1, "expected a unique dominant short root");
        rs.theta = long[0];
        rs.theta_s = short[0];
        Ok(rs)
    }

    pub fn from_family(family: Family, rank: usize) -> Result<Self> {
        Self::build(RootSystemType::new(family, rank)?)
    }

    pub fn root_type(&self) -> RootSystemType {
        self.ty
    }

    pub fn family(&self) -> Family {
        self.ty.family
    }

    pub fn rank(&self) -> usize {
        self.ty.rank
    }

    /// Entry `(i, j)` is `⟨α_j, α_i∨⟩`.
    pub fn cartan(&self) -> &[Vec<i32>] {
        &self.cartan
    }

    pub fn simple_is_short(&self, i: usize) -> bool {
        self.simple_short[i]
    }

    pub fn simple_length(&self, i: usize) -> LengthClass {
        if self.simple_short[i] {
            LengthClass::Short
        } else {
            LengthClass::Long
        }
    }

    /// Number of short simple roots, `r_s`.
    pub fn short_rank(&self) -> usize {
        self.simple_short.iter().filter(|&&s| s).count()
    }

    pub fn num_positive(&self) -> usize {
        self.n_pos
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.roots[..self.n_pos]
    }

    /// All roots: positives first, then negatives in the same order.
    pub fn all_roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn short_positive_roots(&self) -> impl Iterator<Item = &Root> {
        self.positive_roots().iter().filter(|r| r.is_short())
    }

    pub fn short_roots(&self) -> impl Iterator<Item = &Root> {
        self.roots.iter().filter(|r| r.is_short())
    }

    pub fn theta(&self) -> &Root {
        &self.roots[self.theta]
    }

    pub fn theta_s(&self) -> &Root {
        &self.roots[self.theta_s]
    }

    pub fn simple_root(&self, i: usize) -> Result<&Root> {
        self.check_index(i)?;
        Ok(&self.roots[self.index[&unit(self.rank(), i)]])
    }

    /// Position of `coeffs` in [`all_roots`](Self::all_roots).
    pub fn root_index(&self, coeffs: &[i32]) -> Option<usize> {
        self.index.get(coeffs).copied()
    }

    pub fn root(&self, coeffs: &[i32]) -> Result<&Root> {
        self.root_index(coeffs)
            .map(|i| &self.roots[i])
            .ok_or_else(|| Error::NotARoot(coeffs.to_vec()))
    }

    /// Coroot of `a` over the simple coroots.
    pub fn coroot(&self, a: &Root) -> Result<&[i32]> {
        self.root_index(&a.coeffs)
            .map(|i| self.coroots[i].as_slice())
            .ok_or_else(|| Error::NotARoot(a.coeffs.clone()))
    }

    #[cfg(test)]
    pub(crate) fn coroot_at(&self, idx: usize) -> &[i32] {
        &self.coroots[idx]
    }

    /// `ρ_k = Σ k(α_i) ω_i`.
    pub fn rho_k(&self, label: KLabel) -> Weight {
        Weight(
            (0..self.rank())
                .map(|i| label.of(self.simple_length(i)) as i32)
                .collect(),
        )
    }

    pub fn rho(&self) -> Weight {
        self.rho_k(KLabel::EQUAL)
    }

    /// `(ρ_k, α∨)`.
    pub fn special_height(&self, label: KLabel, a: &Root) -> Result<i64> {
        Ok(self.rho_k(label).pair(self.coroot(a)?))
    }

    /// `(σ_k, α) = k_l·ht_l(α) + k_s·ht_s(α)`.
    pub fn sigma_height(&self, label: KLabel, a: &Root) -> i64 {
        label.long as i64 * self.long_height(a) + label.short as i64 * self.short_height(a)
    }

    /// Sum of the coefficients of `a` on long simple roots.
    pub fn long_height(&self, a: &Root) -> i64 {
        self.height_on(a, false)
    }

    /// Sum of the coefficients of `a` on short simple roots.
    pub fn short_height(&self, a: &Root) -> i64 {
        self.height_on(a, true)
    }

    fn height_on(&self, a: &Root, short: bool) -> i64 {
        a.coeffs
            .iter()
            .zip(&self.simple_short)
            .filter(|(_, &s)| s == short)
            .map(|(&c, _)| c as i64)
            .sum()
    }

    /// Converts root-lattice coordinates into fundamental-weight coordinates.
    pub fn to_weight(&self, coeffs: &[i32]) -> Weight {
        let r = self.rank();
        Weight(
            (0..r)
                .map(|i| (0..r).map(|j| self.cartan[i][j] * coeffs[j]).sum())
                .collect(),
        )
    }

    pub fn root_weight(&self, a: &Root) -> Weight {
        self.to_weight(&a.coeffs)
    }

    /// Root-lattice coordinates of `w`, or `None` when `w` is not in the root lattice.
    pub fn root_coords(&self, w: &Weight) -> Option<Vec<i32>> {
        let r = self.rank();
        let mut m: Vec<Vec<Ratio<i64>>> = (0..r)
            .map(|i| {
                let mut row: Vec<Ratio<i64>> = self.cartan[i]
                    .iter()
                    .map(|&x| Ratio::from(x as i64))
                    .collect();
                row.push(Ratio::from(w.0[i] as i64));
                row
            })
            .collect();
        for col in 0..r {
            let piv = (col..r).find(|&i| m[i][col] != Ratio::from(0))?;
            m.swap(col, piv);
            let p = m[col][col];
            for x in m[col].iter_mut() {
                *x /= p;
            }
            for i in 0..r {
                if i != col {
                    let f = m[i][col];
                    if f != Ratio::from(0) {
                        for j in 0..=r {
                            let v = m[col][j] * f;
                            m[i][j] -= v;
                        }
                    }
                }
            }
        }
        m.iter()
            .map(|row| {
                let v = row[r];
                v.is_integer().then(|| *v.numer() as i32)
            })
            .collect()
    }

    pub fn in_root_lattice(&self, w: &Weight) -> bool {
        self.root_coords(w).is_some()
    }

    /// `Σ_{α>0} ⟨λ, α∨⟩`, used to order weights from the top down.
    pub fn weight_height(&self, w: &Weight) -> i64 {
        w.pair(&self.two_rho_vee)
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i < self.rank() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: i,
                rank: self.rank(),
            })
        }
    }

    pub(crate) fn check_weight(&self, w: &Weight) -> Result<()> {
        if w.rank() == self.rank() {
            Ok(())
        } else {
            Err(Error::RankMismatch {
                expected: self.rank(),
                got: w.0.clone(),
            })
        }
    }

    /// `s_i(λ) = λ − ⟨λ, α_i∨⟩ α_i` with a zero-based index `i`.
    pub fn simple_reflection(&self, i: usize, w: &Weight) -> Result<Weight> {
        self.check_index(i)?;
        self.check_weight(w)?;
        Ok(self.reflect_weight_unchecked(i, w))
    }

    pub(crate) fn reflect_weight_unchecked(&self, i: usize, w: &Weight) -> Weight {
        let m = w.0[i];
        Weight(
            (0..self.rank())
                .map(|k| w.0[k] - m * self.cartan[k][i])
                .collect(),
        )
    }

    /// `s_i` applied to a vector of root coordinates.
    pub fn reflect_root_coeffs(&self, i: usize, coeffs: &[i32]) -> Vec<i32> {
        let p: i32 = (0..self.rank())
            .map(|j| coeffs[j] * self.cartan[i][j])
            .sum();
        let mut out = coeffs.to_vec();
        out[i] -= p;
        out
    }

    /// The Weyl group, enumerated once with [`DEFAULT_WEYL_BOUND`] and cached.
    pub fn weyl_group(&self) -> Result<&WeylGroup> {
        self.weyl
            .get_or_init(|| WeylGroup::enumerate(self, DEFAULT_WEYL_BOUND))
            .as_ref()
            .map_err(Clone::clone)
    }

    /// Special exponents: the partition dual to the multiplicities of the
    /// special heights `(ρ_k, α∨)`, `α ∈ R_s^+`, at label `(2, 1)`.
    pub fn special_exponents(&self) -> Partition {
        let mut counts: std::collections::BTreeMap<i64, u32> = Default::default();
        for a in self.short_positive_roots() {
            let n = self
                .special_height(KLabel::LITTLE_ADJOINT, a)
                .expect("positive roots are roots");
            *counts.entry(n).or_default() += 1;
        }
        Partition::from_parts(counts.into_values().collect()).dual()
    }

    /// Dimension of the little adjoint module, `r_s + |R_s|`.
    pub fn little_adjoint_dim(&self) -> usize {
        self.short_rank() + self.short_roots().count()
    }

    pub fn summary(&self) -> RootSystemSummary {
        RootSystemSummary {
            family: self.family(),
            rank: self.rank(),
            positive_roots: self
                .positive_roots()
                .iter()
                .map(|r| r.coeffs.clone())
                .collect(),
            length_classes: self.positive_roots().iter().map(|r| r.length).collect(),
            theta: self.theta().coeffs.clone(),
            theta_s: self.theta_s().coeffs.clone(),
            special_exponents: self.special_exponents().ascending(),
        }
    }
}

fn unit(r: usize, i: usize) -> Vec<i32> {
    let mut e = vec![0; r];
    e[i] = 1;
    e
}

/// JSON summary of a root system. Field names are stable.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootSystemSummary {
    #[serde(rename = "type")]
    pub family: Family,
    pub rank: usize,
    pub positive_roots: Vec<Vec<i32>>,
    pub length_classes: Vec<LengthClass>,
    pub theta: Vec<i32>,
    pub theta_s: Vec<i32>,
    pub special_exponents: Vec<u32>,
}

#[derive(Debug, Clone)]
pub struct WeylElement {
    /// Row-major action on fundamental-weight coordinates.
    matrix: Vec<i32>,
    /// Image of each root, as an index into `RootSystem::all_roots`.
    root_perm: Vec<u32>,
    length: u32,
    /// A reduced word `s_{w[0]} s_{w[1]} ⋯` (zero-based indices).
    word: Vec<u8>,
}

impl WeylElement {
    pub fn length(&self) -> u32 {
        self.length
    }

    pub fn sign(&self) -> i32 {
        if self.length % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn word(&self) -> &[u8] {
        &self.word
    }

    pub fn act(&self, w: &Weight) -> Weight {
        let r = w.rank();
        Weight(
            (0..r)
                .map(|k| (0..r).map(|j| self.matrix[k * r + j] * w.0[j]).sum())
                .collect(),
        )
    }

    /// Index (into `all_roots`) of the image of root number `idx`.
    pub fn act_on_root_index(&self, idx: usize) -> usize {
        self.root_perm[idx] as usize
    }

    /// `R(w) = {α > 0 : w(α) < 0}`, as indices of positive roots.
    pub fn inversions(&self) -> Vec<usize> {
        let n_pos = self.root_perm.len() / 2;
        (0..n_pos)
            .filter(|&j| self.root_perm[j] as usize >= n_pos)
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct WeylGroup {
    elements: Vec<WeylElement>,
}

impl WeylGroup {
    /// Breadth-first closure over the simple reflections.
    pub fn enumerate(rs: &RootSystem, bound: usize) -> Result<Self> {
        let r = rs.rank();
        let n = rs.all_roots().len();
        let gens: Vec<(Vec<i32>, Vec<u32>)> = (0..r)
            .map(|i| {
                let mut m = vec![0; r * r];
                for k in 0..r {
                    for j in 0..r {
                        let delta = i32::from(k == j);
                        let hit = if j == i { rs.cartan[k][i] } else { 0 };
                        m[k * r + j] = delta - hit;
                    }
                }
                let perm = rs
                    .all_roots()
                    .iter()
                    .map(|root| {
                        let img = rs.reflect_root_coeffs(i, &root.coeffs);
                        rs.root_index(&img).expect("reflection permutes roots") as u32
                    })
                    .collect();
                (m, perm)
            })
            .collect();

        let identity = WeylElement {
            matrix: (0..r * r).map(|x| i32::from(x / r == x % r)).collect(),
            root_perm: (0..n as u32).collect(),
            length: 0,
            word: Vec::new(),
        };
        let rho = rs.rho();
        let mut seen: HashMap<Vec<i32>, ()> = HashMap::new();
        seen.insert(rho.0.clone(), ());
        let mut elements = vec![identity];
        let mut head = 0;
        while head < elements.len() {
            for (i, (gm, gp)) in gens.iter().enumerate() {
                let cur = &elements[head];
                let mut matrix = vec![0; r * r];
                for k in 0..r {
                    for j in 0..r {
                        matrix[k * r + j] =
                            (0..r).map(|l| gm[k * r + l] * cur.matrix[l * r + j]).sum();
                    }
                }
                let key: Vec<i32> = (0..r)
                    .map(|k| (0..r).map(|j| matrix[k * r + j] * rho.0[j]).sum())
                    .collect();
                if seen.contains_key(&key) {
                    continue;
                }
                if elements.len() >= bound {
                    return Err(Error::GroupTooLarge(bound));
                }
                seen.insert(key, ());
                let root_perm = cur.root_perm.iter().map(|&x| gp[x as usize]).collect();
                let mut word = Vec::with_capacity(cur.word.len() + 1);
                word.push(i as u8);
                word.extend_from_slice(&cur.word);
                let length = cur.length + 1;
                elements.push(WeylElement {
                    matrix,
                    root_perm,
                    length,
                    word,
                });
            }
            head += 1;
        }
        Ok(WeylGroup { elements })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn iter(&self) -> impl Iterator<Item = &WeylElement> {
        self.elements.iter()
    }

    pub fn longest(&self) -> &WeylElement {
        self.elements
            .iter()
            .max_by_key(|e| e.length)
            .expect("group is never empty")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(f: Family, r: usize) -> RootSystem {
        RootSystem::from_family(f, r).unwrap()
    }

    #[test]
    fn type_validation() {
        assert!(RootSystemType::new(Family::B, 1).is_err());
        assert!(RootSystemType::new(Family::C, 1).is_err());
        assert!(RootSystemType::new(Family::F, 3).is_err());
        assert!(RootSystemType::new(Family::G, 3).is_err());
        assert!(RootSystemType::new(Family::C, 7).is_ok());
    }

    #[test]
    fn root_counts() {
        for (f, r, pos, short) in [
            (Family::B, 2, 4, 2),
            (Family::B, 3, 9, 3),
            (Family::B, 5, 25, 5),
            (Family::C, 3, 9, 6),
            (Family::C, 5, 25, 20),
            (Family::F, 4, 24, 12),
            (Family::G, 2, 6, 3),
        ] {
            let rs = rs(f, r);
            assert_eq!(rs.num_positive(), pos, "{f}{r}");
            assert_eq!(rs.short_positive_roots().count(), short, "{f}{r}");
        }
    }

    #[test]
    fn b3_theta_s() {
        let rs = rs(Family::B, 3);
        assert_eq!(rs.theta_s().coeffs, vec![1, 1, 1]);
        assert_eq!(rs.theta().coeffs, vec![1, 2, 2]);
    }

    #[test]
    fn g2_short_roots_follow_bourbaki() {
        let rs = rs(Family::G, 2);
        let short: Vec<_> = rs
            .short_positive_roots()
            .map(|r| r.coeffs.clone())
            .collect();
        assert_eq!(short, vec![vec![1, 0], vec![1, 1], vec![2, 1]]);
        assert_eq!(rs.theta().coeffs, vec![3, 2]);
    }

    #[test]
    fn coroots() {
        let b = rs(Family::B, 4);
        for i in 0..4 {
            let mut a = vec![0; 4];
            a[i..].iter_mut().for_each(|x| *x = 1);
            let mut expect = vec![0; 4];
            expect[i..3].iter_mut().for_each(|x| *x = 2);
            expect[3] = 1;
            assert_eq!(b.coroot(b.root(&a).unwrap()).unwrap(), expect.as_slice());
        }
        let f = rs(Family::F, 4);
        assert_eq!(
            f.coroot(f.root(&[0, 1, 1, 0]).unwrap()).unwrap(),
            &[0, 2, 1, 0]
        );
        for i in 0..4 {
            let s = f.simple_root(i).unwrap();
            assert_eq!(f.coroot(s).unwrap(), unit(4, i).as_slice());
        }
        let bogus = Root {
            coeffs: vec![1, -1, 0, 0],
            length: LengthClass::Long,
        };
        assert!(matches!(f.coroot(&bogus), Err(Error::NotARoot(_))));
    }

    #[test]
    fn special_and_sigma_heights() {
        let b = rs(Family::B, 5);
        for i in 0..5 {
            let mut a = vec![0; 5];
            a[i..].iter_mut().for_each(|x| *x = 1);
            let h = b
                .special_height(KLabel::LITTLE_ADJOINT, b.root(&a).unwrap())
                .unwrap();
            assert_eq!(h, 2 * (5 - i as i64));
        }
        let g = rs(Family::G, 2);
        let top = g.root(&[2, 1]).unwrap();
        assert_eq!(g.special_height(KLabel::LITTLE_ADJOINT, top).unwrap(), 7);
        assert_eq!(
            g.sigma_height(KLabel::LITTLE_ADJOINT, g.root(&[1, 1]).unwrap()),
            3
        );
        let f = rs(Family::F, 4);
        assert_eq!(
            f.sigma_height(KLabel::LITTLE_ADJOINT, f.root(&[1, 2, 3, 2]).unwrap()),
            13
        );
        for i in 0..4 {
            let s = f.simple_root(i).unwrap();
            let expect = if s.is_short() { 2 } else { 1 };
            assert_eq!(f.special_height(KLabel::LITTLE_ADJOINT, s).unwrap(), expect);
            assert_eq!(f.sigma_height(KLabel::LITTLE_ADJOINT, s), expect);
        }
    }

    #[test]
    fn reflections() {
        let c = rs(Family::C, 3);
        for i in 0..3 {
            for j in 0..3 {
                let w = Weight(unit(3, j));
                if i != j {
                    assert_eq!(c.simple_reflection(i, &w).unwrap(), w);
                }
            }
        }
        assert!(matches!(
            c.simple_reflection(3, &Weight::zero(3)),
            Err(Error::IndexOutOfRange { .. })
        ));
        // root side and weight side agree on every root
        for f in [(Family::B, 2), (Family::G, 2), (Family::F, 4)] {
            let rs = rs(f.0, f.1);
            for root in rs.all_roots() {
                for i in 0..rs.rank() {
                    let via_roots = rs.to_weight(&rs.reflect_root_coeffs(i, &root.coeffs));
                    let via_weights = rs.simple_reflection(i, &rs.root_weight(root)).unwrap();
                    assert_eq!(via_roots, via_weights);
                }
            }
        }
    }

    #[test]
    fn weyl_orders() {
        for (f, r, n) in [
            (Family::B, 2, 8),
            (Family::G, 2, 12),
            (Family::B, 3, 48),
            (Family::C, 4, 384),
            (Family::F, 4, 1152),
        ] {
            let rs = rs(f, r);
            let w = rs.weyl_group().unwrap();
            assert_eq!(w.len(), n);
            assert_eq!(w.elements()[0].length(), 0);
            assert!(w.elements()[0].inversions().is_empty());
            assert_eq!(w.longest().inversions().len(), rs.num_positive());
            // lengths equal the number of inversions
            for e in w.iter() {
                assert_eq!(e.inversions().len() as u32, e.length());
            }
        }
        let b2 = rs(Family::B, 2);
        assert!(matches!(
            WeylGroup::enumerate(&b2, 5),
            Err(Error::GroupTooLarge(5))
        ));
    }

    #[test]
    fn weyl_action_preserves_length_class() {
        let f = rs(Family::F, 4);
        let w = f.weyl_group().unwrap();
        for e in w.iter() {
            for (j, root) in f.all_roots().iter().enumerate() {
                let img = &f.all_roots()[e.act_on_root_index(j)];
                assert_eq!(img.length, root.length);
                assert_eq!(f.root_weight(img), e.act(&f.root_weight(root)));
            }
        }
    }

    #[test]
    fn theta_s_pairings_bounded() {
        for (fam, r) in [
            (Family::B, 2),
            (Family::B, 4),
            (Family::C, 3),
            (Family::C, 5),
            (Family::F, 4),
            (Family::G, 2),
        ] {
            let rs = rs(fam, r);
            let ts = rs.root_weight(rs.theta_s());
            for (idx, _) in rs.all_roots().iter().enumerate() {
                let p = ts.pair(rs.coroot_at(idx));
                if idx == rs.root_index(&rs.theta_s().coeffs).unwrap() {
                    assert_eq!(p, 2);
                } else if idx == rs.root_index(&rs.theta_s().negated().coeffs).unwrap() {
                    assert_eq!(p, -2);
                } else {
                    assert!((-1..=1).contains(&p), "{fam}{r}: pairing {p}");
                }
            }
        }
    }

    #[test]
    fn special_exponent_lists() {
        for r in 2..=6 {
            assert_eq!(
                rs(Family::B, r).special_exponents().ascending(),
                vec![r as u32]
            );
            let c: Vec<u32> = (1..r as u32).map(|i| 2 * i).collect();
            assert_eq!(rs(Family::C, r).special_exponents().ascending(), c);
        }
        assert_eq!(rs(Family::F, 4).special_exponents().ascending(), vec![4, 8]);
        assert_eq!(rs(Family::G, 2).special_exponents().ascending(), vec![3]);
    }

    #[test]
    fn rho_is_half_sum() {
        for (fam, r) in [
            (Family::B, 3),
            (Family::C, 4),
            (Family::F, 4),
            (Family::G, 2),
        ] {
            let rs = rs(fam, r);
            let mut twice = Weight::zero(r);
            for a in rs.positive_roots() {
                twice = twice.add(&rs.root_weight(a));
            }
            assert!(twice.0.iter().all(|&c| c == 2));
            assert_eq!(rs.rho(), Weight(vec![1; r]));
        }
    }

    #[test]
    fn root_lattice_membership() {
        let b = rs(Family::B, 3);
        // ω_3 is the spin weight, not in the root lattice
        assert!(!b.in_root_lattice(&Weight(vec![0, 0, 1])));
        assert_eq!(b.root_coords(&Weight(vec![1, 0, 0])), Some(vec![1, 1, 1]));
        let g = rs(Family::G, 2);
        assert!(g.in_root_lattice(&Weight(vec![1, 0])));
    }

    #[test]
    fn partition_dual() {
        let p = Partition::from_parts(vec![2, 2, 1, 1]);
        assert_eq!(p.dual().parts(), &[4, 2]);
        assert_eq!(p.dual().dual(), p);
        assert_eq!(Partition::from_parts(vec![]).dual().len(), 0);
    }
}
