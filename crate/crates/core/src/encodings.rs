//! String encodings of MIS's in 2×n families and in the 3×n thin cylinder,
//! plus compositions up to dihedral symmetry.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formulas::{even_string_count, fib, odd_string_count, wrap_conflict_count};
use crate::graph::{GridFamily, GridGraph, Vertex};
use crate::mis::MisSet;
use crate::symmetry::horizontal_flip;

fn parse_bits(s: &str) -> Result<Vec<u8>> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            _ => Err(Error::InvalidString {
                string: s.into(),
                reason: "only 0 and 1 are allowed",
            }),
        })
        .collect()
}

fn write_bits(bits: &[u8], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    for b in bits {
        write!(f, "{b}")?;
    }
    Ok(())
}

fn weight(bits: &[u8]) -> usize {
    bits.iter().filter(|&&b| b == 1).count()
}

/// A linear 0/1 string.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BitString(pub Vec<u8>);

impl BitString {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> usize {
        weight(&self.0)
    }

    pub fn no_adjacent_zeros(&self) -> bool {
        self.0.windows(2).all(|w| w[0] == 1 || w[1] == 1)
    }

    /// Member of `X_n`: starts and ends with 1, no two adjacent 0's.
    pub fn is_valid_x(&self) -> bool {
        self.0.first() == Some(&1) && self.0.last() == Some(&1) && self.no_adjacent_zeros()
    }

    pub fn reversed(&self) -> BitString {
        BitString(self.0.iter().rev().copied().collect())
    }

    pub fn is_palindrome(&self) -> bool {
        self.reversed() == *self
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_bits(&self.0, f)
    }
}

impl FromStr for BitString {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_bits(s).map(BitString)
    }
}

/// A 0/1 string whose first and last bits are also adjacent.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CyclicBitString(pub Vec<u8>);

impl CyclicBitString {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> usize {
        weight(&self.0)
    }

    pub fn no_adjacent_zeros(&self) -> bool {
        let n = self.0.len();
        (0..n).all(|i| {
            let j = (i + 1) % n;
            i == j || self.0[i] == 1 || self.0[j] == 1
        })
    }

    /// Member of `Y_n`: no cyclically adjacent 0's, even weight.
    pub fn is_valid_y(&self) -> bool {
        self.no_adjacent_zeros() && self.weight() % 2 == 0
    }

    /// Member of `Z_n`: no cyclically adjacent 0's, odd weight.
    pub fn is_valid_z(&self) -> bool {
        self.no_adjacent_zeros() && self.weight() % 2 == 1
    }
}

impl fmt::Display for CyclicBitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_bits(&self.0, f)
    }
}

impl FromStr for CyclicBitString {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_bits(s).map(CyclicBitString)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn negate(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignString(pub Vec<Sign>);

impl SignString {
    pub fn negated(&self) -> SignString {
        SignString(self.0.iter().map(|s| s.negate()).collect())
    }

    pub fn reversed(&self) -> SignString {
        SignString(self.0.iter().rev().copied().collect())
    }
}

impl fmt::Display for SignString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            f.write_str(match s {
                Sign::Plus => "+",
                Sign::Minus => "-",
            })?;
        }
        Ok(())
    }
}

impl FromStr for SignString {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '+' => Ok(Sign::Plus),
                '-' | '−' => Ok(Sign::Minus),
                _ => Err(Error::InvalidString {
                    string: s.into(),
                    reason: "only + and - are allowed",
                }),
            })
            .collect::<Result<_>>()
            .map(SignString)
    }
}

fn require_shape(
    g: &GridGraph,
    operation: &'static str,
    expected: &'static str,
    families: &[GridFamily],
    m: usize,
) -> Result<()> {
    if !families.contains(&g.family()) || g.m() != m {
        return Err(Error::WrongShape {
            operation,
            expected,
            family: g.family(),
            m: g.m(),
        });
    }
    Ok(())
}

fn occupancy(g: &GridGraph, set: &MisSet) -> Vec<u8> {
    (1..=g.n())
        .map(|i| set.slice_rows(g, i).count_ones() as u8)
        .collect()
}

/// Per-slice occupancy of an MIS of `G_{2×n}`.
pub fn psi(g: &GridGraph, set: &MisSet) -> Result<BitString> {
    require_shape(g, "psi", "grid with m=2", &[GridFamily::Grid], 2)?;
    Ok(BitString(occupancy(g, set)))
}

/// The two MIS's of `G_{2×n}` with image `b`, rows alternating over the
/// 1-positions; the first starts in row 1.
pub fn psi_preimage(g: &GridGraph, b: &BitString) -> Result<(MisSet, MisSet)> {
    require_shape(g, "psi_preimage", "grid with m=2", &[GridFamily::Grid], 2)?;
    if b.len() != g.n() {
        return Err(Error::InvalidString {
            string: b.to_string(),
            reason: "length differs from the number of slices",
        });
    }
    if !b.is_valid_x() {
        return Err(Error::InvalidString {
            string: b.to_string(),
            reason: "must start and end with 1 and have no adjacent 0's",
        });
    }
    let build = |first_row: usize| -> Result<MisSet> {
        let vertices: Vec<Vertex> = b
            .0
            .iter()
            .enumerate()
            .filter(|&(_, &bit)| bit == 1)
            .enumerate()
            .map(|(k, (i, _))| Vertex::new(i + 1, if k % 2 == 0 { first_row } else { 3 - first_row }))
            .collect();
        MisSet::from_vertices(g, &vertices)
    };
    let a = build(1)?;
    let b2 = build(2)?;
    if horizontal_flip(g)?.apply_set(&a) != b2 {
        return Err(Error::IdentityViolated {
            context: "psi_preimage",
            detail: "preimages are not exchanged by h".into(),
        });
    }
    Ok((a, b2))
}

/// Per-slice occupancy of an MIS of `B_{2×n}` or `M_{2×n}`.
pub fn psi_c(g: &GridGraph, set: &MisSet) -> Result<CyclicBitString> {
    require_shape(
        g,
        "psi_c",
        "fat cylinder or Mobius strip with m=2",
        &[GridFamily::FatCylinder, GridFamily::Mobius],
        2,
    )?;
    Ok(CyclicBitString(occupancy(g, set)))
}

/// `I(M,i)`: the row of the single member of slice `i`, for `T_{3×n}`.
pub fn tube_rows(g: &GridGraph, set: &MisSet) -> Result<Vec<usize>> {
    require_shape(g, "tube_psi", "thin cylinder with m=3", &[GridFamily::ThinCylinder], 3)?;
    (1..=g.n())
        .map(|i| {
            let rows = set.slice_rows(g, i);
            if rows.count_ones() != 1 {
                return Err(Error::IdentityViolated {
                    context: "tube_psi",
                    detail: format!("slice {i} holds {} members", rows.count_ones()),
                });
            }
            Ok(rows.trailing_zeros() as usize + 1)
        })
        .collect()
}

/// `+` at position `i` when `I(M,i+1) ≡ I(M,i) + 1 (mod 3)`, else `−`.
pub fn tube_psi(g: &GridGraph, set: &MisSet) -> Result<SignString> {
    let rows = tube_rows(g, set)?;
    Ok(SignString(
        rows.windows(2)
            .map(|w| {
                if w[1] % 3 == (w[0] + 1) % 3 {
                    Sign::Plus
                } else {
                    Sign::Minus
                }
            })
            .collect(),
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StringKind {
    X,
    Y,
    Z,
    E,
    O,
    B,
}

impl StringKind {
    pub const ALL: [StringKind; 6] = [
        StringKind::X,
        StringKind::Y,
        StringKind::Z,
        StringKind::E,
        StringKind::O,
        StringKind::B,
    ];

    /// Membership test for a length-`n` string.
    pub fn accepts(self, bits: &[u8]) -> bool {
        let linear = BitString(bits.to_vec());
        let cyclic = CyclicBitString(bits.to_vec());
        match self {
            StringKind::X => linear.is_valid_x(),
            StringKind::Y => cyclic.is_valid_y(),
            StringKind::Z => cyclic.is_valid_z(),
            StringKind::E => linear.no_adjacent_zeros() && linear.weight() % 2 == 0,
            StringKind::O => linear.no_adjacent_zeros() && linear.weight() % 2 == 1,
            StringKind::B => linear.no_adjacent_zeros(),
        }
    }
}

impl fmt::Display for StringKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for StringKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim_end_matches("_n").to_ascii_uppercase().as_str() {
            "X" => Ok(StringKind::X),
            "Y" => Ok(StringKind::Y),
            "Z" => Ok(StringKind::Z),
            "E" => Ok(StringKind::E),
            "O" => Ok(StringKind::O),
            "B" => Ok(StringKind::B),
            _ => Err(Error::Parse(format!("unknown string kind {s:?}"))),
        }
    }
}

/// Largest length for which strings are generated directly.
pub const MAX_GENERATED_LENGTH: usize = 24;

/// All length-`n` strings of `kind`, in lexicographic order.
pub fn generate_strings(kind: StringKind, n: usize) -> Result<Vec<String>> {
    if n > MAX_GENERATED_LENGTH {
        return Err(Error::ArgumentOutOfRange {
            operation: "generate_strings",
            value: n as i64,
            bound: "n <= 24",
        });
    }
    let mut out = Vec::new();
    let mut bits = vec![0u8; n];
    for code in 0u32..1 << n {
        for (k, b) in bits.iter_mut().enumerate() {
            *b = (code >> (n - 1 - k) & 1) as u8;
        }
        if kind.accepts(&bits) {
            out.push(bits.iter().map(|b| char::from(b'0' + b)).collect());
        }
    }
    Ok(out)
}

/// Closed-form size of the length-`n` set of `kind`.
pub fn count_strings(kind: StringKind, n: usize) -> BigUint {
    let k = n as i64;
    match kind {
        StringKind::X => fib(n),
        StringKind::B => fib(n + 2),
        StringKind::E => even_string_count(k),
        StringKind::O => odd_string_count(k),
        StringKind::Y => even_string_count(k) - wrap_conflict_count(false, n),
        StringKind::Z => odd_string_count(k) - wrap_conflict_count(true, n),
    }
}

/// Newline-terminated lines of [`generate_strings`].
pub fn dump_strings(kind: StringKind, n: usize) -> Result<String> {
    Ok(generate_strings(kind, n)?
        .into_iter()
        .map(|s| s + "\n")
        .collect())
}

/// Palindromes in `X_n`: `F(n/2)` for even `n`, `F((n+3)/2)` for odd `n`.
pub fn vertically_symmetric_count(n: usize) -> BigUint {
    if n % 2 == 0 {
        fib(n / 2)
    } else {
        fib((n + 3) / 2)
    }
}

/// An ordered sequence of positive parts.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Composition(pub Vec<usize>);

impl Composition {
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// Lexicographic minimum over all rotations and reflections.
    pub fn canonical(&self) -> Composition {
        let k = self.0.len();
        let mut best = self.0.clone();
        let reversed: Vec<usize> = self.0.iter().rev().copied().collect();
        for base in [&self.0, &reversed] {
            for shift in 0..k {
                let cand: Vec<usize> = (0..k).map(|t| base[(t + shift) % k]).collect();
                if cand < best {
                    best = cand;
                }
            }
        }
        Composition(best)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

/// All `k`-compositions of `n`, in lexicographic order.
pub fn compositions(k: usize, n: usize) -> Vec<Composition> {
    fn go(k: usize, n: usize, prefix: &mut Vec<usize>, out: &mut Vec<Composition>) {
        if k == 0 {
            if n == 0 {
                out.push(Composition(prefix.clone()));
            }
            return;
        }
        // leave at least one for each remaining part
        for first in 1..=n.saturating_sub(k - 1) {
            prefix.push(first);
            go(k - 1, n - first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if k >= 1 && n >= k {
        go(k, n, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// Canonical representatives of `C_k(n)/D_k`, sorted.
pub fn composition_classes(k: usize, n: usize) -> Result<Vec<Composition>> {
    if k == 0 {
        return Err(Error::ArgumentOutOfRange {
            operation: "composition_orbits",
            value: 0,
            bound: "k >= 1",
        });
    }
    let classes: BTreeSet<Composition> = compositions(k, n).iter().map(Composition::canonical).collect();
    Ok(classes.into_iter().collect())
}

/// `|C_k(n)/D_k|`; zero when `n < k`.
pub fn composition_orbits(k: usize, n: usize) -> Result<BigUint> {
    Ok(composition_classes(k, n)?.len().into())
}

/// `|NIMIS(B_{2×n})|` as one plus a sum of composition class counts.
pub fn band_nimis_via_compositions(n: usize) -> Result<BigUint> {
    if n < 3 {
        return Err(Error::ArgumentOutOfRange {
            operation: "band_nimis_via_compositions",
            value: n as i64,
            bound: "n >= 3",
        });
    }
    let mut total = BigUint::from(1u32);
    if n % 2 == 0 {
        for k in 1..=n / 4 {
            total += composition_orbits(2 * k, n - 2 * k)?;
        }
    } else {
        for k in 1..=(n - 2) / 4 {
            total += composition_orbits(2 * k + 1, n - 2 * k - 1)?;
        }
    }
    Ok(total)
}

/// Checks that `psi` is exactly 2-to-1 onto `X_n` with h-paired preimages.
pub fn check_psi_bijection(g: &GridGraph, sets: &[MisSet]) -> Result<()> {
    let n = g.n();
    let mut images: Vec<(BitString, MisSet)> = sets
        .iter()
        .map(|s| psi(g, s).map(|b| (b, *s)))
        .collect::<Result<_>>()?;
    images.sort();
    let expected: Vec<String> = generate_strings(StringKind::X, n)?;
    let fail = |detail: String| Error::IdentityViolated {
        context: "check_psi_bijection",
        detail,
    };
    if images.len() != 2 * expected.len() {
        return Err(fail(format!("{} sets for {} strings", images.len(), expected.len())));
    }
    let h = horizontal_flip(g)?;
    for (pair, want) in images.chunks(2).zip(&expected) {
        let (b, s) = &pair[0];
        if pair[1].0 != *b || b.to_string() != *want {
            return Err(fail(format!("image {b} is not hit exactly twice")));
        }
        if h.apply_set(s) != pair[1].1 {
            return Err(fail(format!("preimages of {b} are not exchanged by h")));
        }
        let (p, q) = psi_preimage(g, b)?;
        let mut got = [p, q];
        got.sort();
        let mut have = [pair[0].1, pair[1].1];
        have.sort();
        if got != have {
            return Err(fail(format!("psi_preimage({b}) disagrees with enumeration")));
        }
    }
    Ok(())
}

/// Checks that `psi_c` is exactly 2-to-1 onto `Y_n` (band) or `Z_n`
/// (Mobius strip) with h-paired preimages.
pub fn check_psi_c_bijection(g: &GridGraph, sets: &[MisSet]) -> Result<()> {
    let kind = if g.family() == GridFamily::Mobius {
        StringKind::Z
    } else {
        StringKind::Y
    };
    let mut images: Vec<(CyclicBitString, MisSet)> = sets
        .iter()
        .map(|s| psi_c(g, s).map(|b| (b, *s)))
        .collect::<Result<_>>()?;
    images.sort();
    let expected = generate_strings(kind, g.n())?;
    let fail = |detail: String| Error::IdentityViolated {
        context: "check_psi_c_bijection",
        detail,
    };
    if images.len() != 2 * expected.len() {
        return Err(fail(format!("{} sets for {} strings", images.len(), expected.len())));
    }
    let h = horizontal_flip(g)?;
    for (pair, want) in images.chunks(2).zip(&expected) {
        let (b, s) = &pair[0];
        if pair[1].0 != *b || b.to_string() != *want {
            return Err(fail(format!("image {b} is not hit exactly twice")));
        }
        if h.apply_set(s) != pair[1].1 {
            return Err(fail(format!("preimages of {b} are not exchanged by h")));
        }
    }
    Ok(())
}

/// Checks that `tube_psi` hits every sign string of length `n−1` exactly
/// three times and transforms under `r`, `h`, `v` as expected.
pub fn check_tube_psi(g: &GridGraph, sets: &[MisSet]) -> Result<()> {
    use crate::symmetry::{row_rotation, vertical_flip};
    let (r, h, v) = (row_rotation(g)?, horizontal_flip(g)?, vertical_flip(g)?);
    let fail = |detail: String| Error::IdentityViolated {
        context: "check_tube_psi",
        detail,
    };
    let mut hits: std::collections::HashMap<SignString, usize> = Default::default();
    for s in sets {
        let p = tube_psi(g, s)?;
        if tube_psi(g, &r.apply_set(s))? != p {
            return Err(fail(format!("rotation changes the image {p}")));
        }
        if tube_psi(g, &h.apply_set(s))? != p.negated() {
            return Err(fail(format!("h does not negate {p}")));
        }
        if tube_psi(g, &v.apply_set(s))? != p.reversed().negated() {
            return Err(fail(format!("v does not reverse and negate {p}")));
        }
        *hits.entry(p).or_default() += 1;
    }
    let expected = 1usize << (g.n() - 1);
    if hits.len() != expected || hits.values().any(|&c| c != 3) {
        return Err(fail(format!(
            "{} distinct images, expected {expected} each hit 3 times",
            hits.len()
        )));
    }
    Ok(())
}
