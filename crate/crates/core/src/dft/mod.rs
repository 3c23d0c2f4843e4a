//! The transform-domain view: binary abelian codes in `F_2[G^m]`.
//!
//! For odd-order abelian `G` the group algebra `F_2[G^m]` is semisimple and
//! every ideal is the set of words whose DFT vanishes on a zero-set closed
//! under doubling. With `Z = {j : wt(j) >= r+1}` the ideal is `C_{|G|}(r,m)`
//! and its complementary zero-set gives `D_{|G|}(r,m)`.

pub mod classical;
pub mod field;
pub mod group;

use std::collections::BTreeSet;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::code::{generator_matrix, CodeSpec};
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};

pub use field::Gf2k;
pub use group::GroupSpec;

/// Field values indexed by `G^m`, each an element of `GF(2^k)`.
pub type Spectrum = Vec<u64>;

/// The field carrying the DFT of a group, with the roots of unity chosen.
#[derive(Debug, Clone)]
pub struct FieldSpec {
    group: GroupSpec,
    field: Gf2k,
    /// `α_ℓ = β^{alpha_exps[ℓ]}`.
    alpha_exps: Vec<u64>,
    /// Exponent of `β` in the character value of a pair of `G` elements.
    pair_exp: Vec<u64>,
    /// Per-coordinate `G` elements of every index of `G^m`.
    digits: Vec<usize>,
}

/// `GF(2^k)` with `k = lcm_ℓ ord_{m_ℓ}(2)`, and `α_ℓ = β^{(2^k-1)/m_ℓ}`.
pub fn build_field(g: &GroupSpec) -> Result<FieldSpec> {
    let k = g
        .orders()
        .iter()
        .map(|&o| field::order_of_two(o))
        .fold(1usize, |a, b| a.lcm(&b));
    let field = Gf2k::new(u32::try_from(k).map_err(|_| Error::TooLarge(format!("degree {k}")))?)?;
    let q = field.group_order();
    let alpha_exps: Vec<u64> = g.orders().iter().map(|&o| q / o as u64).collect();

    let order = g.group_order();
    let mut pair_exp = vec![0u64; order * order];
    for a in 0..order {
        let ca = g.components(a);
        for b in 0..order {
            let cb = g.components(b);
            pair_exp[a * order + b] = ca
                .iter()
                .zip(&cb)
                .zip(&alpha_exps)
                .map(|((&x, &y), &e)| (x * y) as u64 % q * e % q)
                .sum::<u64>()
                % q;
        }
    }
    let digits = (0..g.size()).flat_map(|j| g.element(j).0).collect();
    Ok(FieldSpec {
        group: g.clone(),
        field,
        alpha_exps,
        pair_exp,
        digits,
    })
}

impl FieldSpec {
    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn field(&self) -> &Gf2k {
        &self.field
    }

    pub fn degree(&self) -> u32 {
        self.field.degree()
    }

    /// The chosen root of unity of order `m_ℓ` for each cyclic factor.
    pub fn alphas(&self) -> Vec<u64> {
        self.alpha_exps.iter().map(|&e| self.field.beta_pow(e as i64)).collect()
    }

    /// `E(i, j)` with `Π_k Π_ℓ α_ℓ^{i_k[ℓ] j_k[ℓ]} = β^{E(i,j)}`.
    pub fn exponent(&self, i: usize, j: usize) -> u64 {
        let m = self.group.m();
        let order = self.group.group_order();
        let q = self.field.group_order();
        let (di, dj) = (&self.digits[i * m..(i + 1) * m], &self.digits[j * m..(j + 1) * m]);
        di.iter()
            .zip(dj)
            .map(|(&a, &b)| self.pair_exp[a * order + b])
            .sum::<u64>()
            % q
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.group.size() {
            return Err(Error::LengthMismatch {
                expected: self.group.size(),
                actual: len,
            });
        }
        Ok(())
    }
}

/// `A_j = Σ_i β^{E(i,j)} a_i` for a binary word.
pub fn dft(a: &BitVector, f: &FieldSpec) -> Result<Spectrum> {
    f.check_len(a.len())?;
    let ones: Vec<usize> = a.iter_ones().collect();
    Ok((0..a.len())
        .map(|j| {
            ones.iter()
                .fold(0, |acc, &i| acc ^ f.field.beta_pow(f.exponent(i, j) as i64))
        })
        .collect())
}

/// The same transform applied to field-valued sequences.
pub fn dft_field(a: &[u64], f: &FieldSpec) -> Result<Spectrum> {
    transform(a, f, 1)
}

/// `a_i = Σ_j β^{-E(i,j)} A_j`. No scaling is needed since `|G^m|` is odd.
pub fn idft(spectrum: &[u64], f: &FieldSpec) -> Result<Spectrum> {
    transform(spectrum, f, -1)
}

fn transform(a: &[u64], f: &FieldSpec, sign: i64) -> Result<Spectrum> {
    f.check_len(a.len())?;
    let size = 1u64 << f.degree();
    if let Some(&bad) = a.iter().find(|&&x| x >= size) {
        return Err(Error::InvalidParameters(format!(
            "{bad} is not an element of GF(2^{})",
            f.degree()
        )));
    }
    Ok((0..a.len())
        .map(|j| {
            a.iter().enumerate().fold(0, |acc, (i, &x)| {
                acc ^ f.field.mul(x, f.field.beta_pow(sign * f.exponent(i, j) as i64))
            })
        })
        .collect())
}

/// Inverse transform of a spectrum whose time-domain values are all binary.
pub fn idft_binary(spectrum: &[u64], f: &FieldSpec) -> Result<BitVector> {
    let a = idft(spectrum, f)?;
    if a.iter().any(|&x| x > 1) {
        return Err(Error::Precondition("inverse transform is not binary".into()));
    }
    Ok(BitVector::from_bits(&a.iter().map(|&x| x == 1).collect::<Vec<_>>()))
}

/// `A_{2j} = A_j²` for all `j`.
pub fn is_conjugate_symmetric(spectrum: &[u64], f: &FieldSpec) -> bool {
    spectrum.len() == f.group.size()
        && (0..spectrum.len()).all(|j| spectrum[f.group.double(j)] == f.field.mul(spectrum[j], spectrum[j]))
}

/// Orbits of `j -> 2j` on `G^m`, each sorted, ordered by smallest member.
pub fn conjugacy_partition(g: &GroupSpec) -> Vec<Vec<usize>> {
    let mut seen = vec![false; g.size()];
    let mut classes = Vec::new();
    for j in 0..g.size() {
        if seen[j] {
            continue;
        }
        let mut class = vec![j];
        seen[j] = true;
        let mut x = g.double(j);
        while x != j {
            seen[x] = true;
            class.push(x);
            x = g.double(x);
        }
        class.sort_unstable();
        classes.push(class);
    }
    classes
}

/// `weight_classes(g)[w]` lists the elements of `G^m` of weight `w`.
pub fn weight_classes(g: &GroupSpec) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); g.m() + 1];
    for j in 0..g.size() {
        out[g.weight(j)].push(j);
    }
    out
}

/// A subset of `G^m` on which a code's spectrum vanishes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroSet {
    group: GroupSpec,
    members: BTreeSet<usize>,
}

#[derive(Serialize, Deserialize)]
struct ZeroSetDoc {
    group: Vec<usize>,
    m: usize,
    zero_set: Vec<Vec<usize>>,
}

impl ZeroSet {
    pub fn new(group: &GroupSpec, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let members: BTreeSet<usize> = members.into_iter().collect();
        if let Some(&bad) = members.iter().find(|&&j| j >= group.size()) {
            return Err(Error::OutOfRange {
                index: bad,
                len: group.size(),
            });
        }
        Ok(Self {
            group: group.clone(),
            members,
        })
    }

    /// Members given as `m`-tuples of `G` elements.
    pub fn from_tuples(group: &GroupSpec, tuples: &[Vec<usize>]) -> Result<Self> {
        let idx = tuples
            .iter()
            .map(|t| group.index(&t.clone().into()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(group, idx)
    }

    /// All `j` whose weight satisfies `pred`.
    pub fn by_weight(group: &GroupSpec, pred: impl Fn(usize) -> bool) -> Self {
        let members = (0..group.size()).filter(|&j| pred(group.weight(j))).collect();
        Self {
            group: group.clone(),
            members,
        }
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, j: usize) -> bool {
        self.members.contains(&j)
    }

    pub fn complement(&self) -> Self {
        let members = (0..self.group.size()).filter(|j| !self.members.contains(j)).collect();
        Self {
            group: self.group.clone(),
            members,
        }
    }

    fn closed_under(&self, f: impl Fn(usize) -> usize) -> bool {
        self.members.iter().all(|&j| self.members.contains(&f(j)))
    }

    pub fn is_closed_under_doubling(&self) -> bool {
        self.closed_under(|j| self.group.double(j))
    }

    pub fn to_json(&self) -> String {
        let doc = ZeroSetDoc {
            group: self.group.orders().to_vec(),
            m: self.group.m(),
            zero_set: self.members.iter().map(|&j| self.group.element(j).0).collect(),
        };
        serde_json::to_string(&doc).expect("plain data serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let doc: ZeroSetDoc =
            serde_json::from_str(s).map_err(|e| Error::InvalidParameters(format!("zero-set JSON: {e}")))?;
        let group = GroupSpec::new(doc.group, doc.m)?;
        Self::from_tuples(&group, &doc.zero_set)
    }
}

/// Generator basis of `{a binary : A_j = 0 for all j ∈ Z}`.
///
/// One representative per conjugacy class inside `Z` contributes `k` binary
/// constraints (its coordinates in the basis `1, x, ..., x^{k-1}`); the other
/// class members are implied by conjugate symmetry.
pub fn code_from_zero_set(z: &ZeroSet, f: &FieldSpec) -> Result<BitMatrix> {
    if z.group != f.group {
        return Err(Error::InvalidGroup(
            "zero-set and field were built for different groups".into(),
        ));
    }
    if !z.is_closed_under_doubling() {
        let j = z
            .members()
            .find(|&j| !z.contains(z.group.double(j)))
            .expect("some member escapes");
        return Err(Error::NotClosed(format!(
            "{:?} is in Z but its double is not",
            z.group.element(j).0
        )));
    }
    let size = z.group.size();
    let k = f.degree() as usize;
    let mut constraints = BitMatrix::empty(size);
    for class in conjugacy_partition(&z.group) {
        let rep = class[0];
        if !z.contains(rep) {
            continue;
        }
        let values: Vec<u64> = (0..size).map(|i| f.field.beta_pow(f.exponent(i, rep) as i64)).collect();
        for b in 0..k {
            let row = BitVector::from_bits(&values.iter().map(|&x| x >> b & 1 == 1).collect::<Vec<_>>());
            constraints.push_row(row)?;
        }
    }
    Ok(constraints.null_space())
}

/// `(Z(r,m), complement)` with `Z(r,m) = {j : wt(j) >= r+1}`.
pub fn berman_zero_sets(g: &GroupSpec, r: usize) -> Result<(ZeroSet, ZeroSet)> {
    if r > g.m() {
        return Err(Error::InvalidParameters(format!(
            "r must satisfy 0 <= r <= m, got r={r}, m={}",
            g.m()
        )));
    }
    let z = ZeroSet::by_weight(g, |w| w > r);
    let zc = z.complement();
    Ok((z, zc))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    pub r: usize,
    pub dual_dimension: usize,
    pub berman_dimension: usize,
    /// `C(Z(r,m))` equals `C_n(r,m)`.
    pub dual_matches: bool,
    /// `C(complement)` equals `D_n(r,m)`.
    pub berman_matches: bool,
    /// The two zero-set codes intersect only in `0`.
    pub complementary: bool,
    pub equivalent: bool,
}

pub fn equivalence_check(g: &GroupSpec, r: usize) -> Result<EquivalenceReport> {
    let f = build_field(g)?;
    let (z, zc) = berman_zero_sets(g, r)?;
    let c_dft = code_from_zero_set(&z, &f)?;
    let d_dft = code_from_zero_set(&zc, &f)?;
    let n = g.group_order();
    let c = generator_matrix(&CodeSpec::dual_berman(n, r, g.m())?);
    let d = generator_matrix(&CodeSpec::berman(n, r, g.m())?);
    let dual_matches = c_dft.row_space_equal(&c)?;
    let berman_matches = d_dft.row_space_equal(&d)?;
    let complementary = c_dft.stack(&d_dft)?.rank() == c_dft.rank() + d_dft.rank();
    Ok(EquivalenceReport {
        r,
        dual_dimension: c_dft.num_rows(),
        berman_dimension: d_dft.num_rows(),
        dual_matches,
        berman_matches,
        complementary,
        equivalent: dual_matches && berman_matches && complementary,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosureReport {
    /// `j ∈ Z ⇒ 2j ∈ Z`.
    pub doubling: bool,
    /// Closed under each `π_k`, which doubles coordinate `k` only.
    pub coordinate_doubling: bool,
    /// Closed under every permutation of the `m` coordinates.
    pub position_permutations: bool,
    pub all_hold: bool,
}

pub fn validate_capacity_family_zero_set(z: &ZeroSet) -> ClosureReport {
    let g = &z.group;
    let doubling = z.is_closed_under_doubling();
    let coordinate_doubling = (0..g.m()).all(|k| z.closed_under(|j| g.pi(j, k)));
    // Adjacent transpositions generate the symmetric group.
    let position_permutations = (0..g.m() - 1).all(|k| z.closed_under(|j| g.swap_adjacent(j, k)));
    ClosureReport {
        doubling,
        coordinate_doubling,
        position_permutations,
        all_hold: doubling && coordinate_doubling && position_permutations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_degrees() {
        for (p, k) in [(3, 2), (7, 3), (15, 4), (5, 4), (9, 6)] {
            assert_eq!(build_field(&GroupSpec::cyclic(p, 1).unwrap()).unwrap().degree(), k);
        }
        assert_eq!(
            build_field(&GroupSpec::new(vec![3, 5], 1).unwrap()).unwrap().degree(),
            4
        );
    }

    #[test]
    fn alphas_have_the_right_orders() {
        let g = GroupSpec::new(vec![3, 5, 7], 1).unwrap();
        let f = build_field(&g).unwrap();
        for (a, &o) in f.alphas().iter().zip(g.orders()) {
            assert_eq!(f.field().order(*a), Some(o as u64));
        }
    }

    #[test]
    fn all_ones_has_delta_spectrum() {
        let g = GroupSpec::cyclic(3, 1).unwrap();
        let f = build_field(&g).unwrap();
        assert_eq!(dft(&BitVector::ones(3), &f).unwrap(), vec![1, 0, 0]);
    }

    #[test]
    fn classes_of_z3_squared() {
        let g = GroupSpec::new(vec![3, 3], 1).unwrap();
        let classes: Vec<Vec<Vec<usize>>> = conjugacy_partition(&g)
            .iter()
            .map(|c| c.iter().map(|&j| g.components(j)).collect())
            .collect();
        assert_eq!(classes.len(), 5);
        for expected in [
            vec![vec![0, 0]],
            vec![vec![0, 1], vec![0, 2]],
            vec![vec![1, 0], vec![2, 0]],
            vec![vec![1, 1], vec![2, 2]],
            vec![vec![2, 1], vec![1, 2]],
        ] {
            assert!(classes
                .iter()
                .any(|c| { c.len() == expected.len() && expected.iter().all(|e| c.contains(e)) }));
        }
        let z15 = GroupSpec::cyclic(15, 1).unwrap();
        assert!(conjugacy_partition(&z15).contains(&vec![5, 10]));
    }

    #[test]
    fn smallest_zero_set_code() {
        let g = GroupSpec::cyclic(3, 2).unwrap();
        let f = build_field(&g).unwrap();
        let (z, _) = berman_zero_sets(&g, 1).unwrap();
        let c = code_from_zero_set(&z, &f).unwrap();
        assert_eq!(c.num_rows(), 5);
        let h = generator_matrix(&CodeSpec::dual_berman(3, 1, 2).unwrap());
        assert!(c.row_space_equal(&h).unwrap());
        let empty = ZeroSet::new(&g, []).unwrap();
        assert_eq!(code_from_zero_set(&empty, &f).unwrap().num_rows(), 9);
    }

    #[test]
    fn non_closed_zero_set_is_rejected() {
        let g = GroupSpec::cyclic(3, 2).unwrap();
        let f = build_field(&g).unwrap();
        let z = ZeroSet::from_tuples(&g, &[vec![1, 0]]).unwrap();
        assert!(matches!(code_from_zero_set(&z, &f), Err(Error::NotClosed(_))));
        assert!(!validate_capacity_family_zero_set(&z).doubling);
    }

    #[test]
    fn json_round_trip() {
        let g = GroupSpec::cyclic(15, 2).unwrap();
        let z = ZeroSet::from_tuples(&g, &[vec![0, 5], vec![0, 10], vec![5, 0], vec![10, 0]]).unwrap();
        let s = z.to_json();
        assert_eq!(s, r#"{"group":[15],"m":2,"zero_set":[[5,0],[10,0],[0,5],[0,10]]}"#);
        assert_eq!(ZeroSet::from_json(&s).unwrap(), z);
        assert!(ZeroSet::from_json(r#"{"group":[4],"m":1,"zero_set":[]}"#).is_err());
    }
}
