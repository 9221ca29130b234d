//! Values over `{0, 1, u}` and partial knowledge over `{0, 1, u, *}`.
//!
//! Strings are written leftmost-first: the first character is variable 1.
//! Dense indexing uses base 3 with digit map `0 -> 0`, `1 -> 1`, `u -> 2`
//! and variable 1 as the most significant digit, so numeric order on
//! indices coincides with lexicographic order under `0 < 1 < u`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// A Kleene (K3) truth value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(u8)]
pub enum Trit {
    Zero = 0,
    One = 1,
    U = 2,
}

impl Trit {
    pub const ALL: [Trit; 3] = [Trit::Zero, Trit::One, Trit::U];

    #[inline]
    pub fn from_digit(d: u8) -> Trit {
        match d {
            0 => Trit::Zero,
            1 => Trit::One,
            2 => Trit::U,
            _ => panic!("trit digit out of range: {d}"),
        }
    }

    #[inline]
    pub fn digit(self) -> u8 {
        self as u8
    }

    #[inline]
    pub fn is_u(self) -> bool {
        self == Trit::U
    }

    /// `Some(bit)` for 0/1, `None` for u.
    #[inline]
    pub fn to_bool(self) -> Option<bool> {
        match self {
            Trit::Zero => Some(false),
            Trit::One => Some(true),
            Trit::U => None,
        }
    }

    /// The value of a subcube whose two halves evaluate to `self` and `other`.
    #[inline]
    pub fn merge(self, other: Trit) -> Trit {
        if self == other {
            self
        } else {
            Trit::U
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Trit::Zero => '0',
            Trit::One => '1',
            Trit::U => 'u',
        }
    }

    pub fn from_char(c: char) -> Option<Trit> {
        match c {
            '0' => Some(Trit::Zero),
            '1' => Some(Trit::One),
            'u' | 'U' => Some(Trit::U),
            _ => None,
        }
    }
}

impl From<bool> for Trit {
    fn from(b: bool) -> Self {
        if b {
            Trit::One
        } else {
            Trit::Zero
        }
    }
}

impl fmt::Display for Trit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

impl Serialize for Trit {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(match self {
            Trit::Zero => "0",
            Trit::One => "1",
            Trit::U => "u",
        })
    }
}

impl<'de> Deserialize<'de> for Trit {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        let mut chars = s.chars();
        match (chars.next().and_then(Trit::from_char), chars.next()) {
            (Some(t), None) => Ok(t),
            _ => Err(serde::de::Error::custom(format!(
                "expected \"0\", \"1\" or \"u\", found {s:?}"
            ))),
        }
    }
}

/// `3^n`, the number of ternary strings of length `n`.
#[inline]
pub fn pow3(n: usize) -> usize {
    3usize.pow(n as u32)
}

/// Weight of variable `i` (0-based) in the base-3 index of a length-`n` string.
#[inline]
pub fn weight3(n: usize, i: usize) -> usize {
    pow3(n - 1 - i)
}

/// An input in `{0, 1, u}^n`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TernaryString(Vec<Trit>);

impl TernaryString {
    pub fn new(trits: Vec<Trit>) -> Self {
        TernaryString(trits)
    }

    pub fn all_u(n: usize) -> Self {
        TernaryString(vec![Trit::U; n])
    }

    /// Binary string from the `n` low bits of `index`, variable 1 most significant.
    pub fn from_binary_index(n: usize, index: usize) -> Self {
        TernaryString(
            (0..n)
                .map(|i| Trit::from((index >> (n - 1 - i)) & 1 == 1))
                .collect(),
        )
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        TernaryString(bits.iter().map(|&b| Trit::from(b)).collect())
    }

    /// Inverse of [`TernaryString::index`].
    pub fn from_index(n: usize, mut index: usize) -> Self {
        let mut trits = vec![Trit::Zero; n];
        for slot in trits.iter_mut().rev() {
            *slot = Trit::from_digit((index % 3) as u8);
            index /= 3;
        }
        TernaryString(trits)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn trits(&self) -> &[Trit] {
        &self.0
    }

    pub fn get(&self, i: usize) -> Trit {
        self.0[i]
    }

    pub fn set(&mut self, i: usize, t: Trit) {
        self.0[i] = t;
    }

    pub fn with(&self, i: usize, t: Trit) -> Self {
        let mut out = self.clone();
        out.0[i] = t;
        out
    }

    /// Base-3 index (digit map 0,1,u -> 0,1,2; variable 1 most significant).
    pub fn index(&self) -> usize {
        self.0
            .iter()
            .fold(0usize, |acc, &t| acc * 3 + t.digit() as usize)
    }

    /// Digit of variable `i` in the base-3 index `x` of a length-`n` string.
    #[inline]
    pub fn digit_at(x: usize, n: usize, i: usize) -> u8 {
        ((x / weight3(n, i)) % 3) as u8
    }

    pub fn is_binary(&self) -> bool {
        self.0.iter().all(|t| !t.is_u())
    }

    /// Binary index of a u-free string, `None` if it contains u.
    pub fn binary_index(&self) -> Option<usize> {
        self.0.iter().try_fold(0usize, |acc, &t| {
            t.to_bool().map(|b| (acc << 1) | b as usize)
        })
    }

    pub fn u_positions(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.0[i].is_u()).collect()
    }

    /// All binary strings agreeing with `self` on its non-u positions, in
    /// increasing binary order.
    pub fn resolutions(&self) -> Vec<TernaryString> {
        let free = self.u_positions();
        (0..1usize << free.len())
            .map(|mask| {
                let mut r = self.clone();
                for (k, &pos) in free.iter().enumerate() {
                    let bit = (mask >> (free.len() - 1 - k)) & 1 == 1;
                    r.0[pos] = Trit::from(bit);
                }
                r
            })
            .collect()
    }

    pub fn to_partial(&self) -> PartialAssignment {
        PartialAssignment(self.0.iter().map(|&t| Some(t)).collect())
    }

    /// Iterate over all `3^n` strings in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = TernaryString> {
        (0..pow3(n)).map(move |i| TernaryString::from_index(n, i))
    }
}

impl fmt::Display for TernaryString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.0 {
            write!(f, "{}", t.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for TernaryString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        s.chars()
            .enumerate()
            .map(|(pos, c)| {
                Trit::from_char(c).ok_or_else(|| Error::BadLiteral {
                    literal: s.to_string(),
                    position: pos,
                })
            })
            .collect::<Result<Vec<_>, _>>()
            .map(TernaryString)
    }
}

impl Serialize for TernaryString {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Partial knowledge of a ternary string: `None` is an unset (`*`) cell.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartialAssignment(Vec<Option<Trit>>);

impl PartialAssignment {
    pub fn unset(n: usize) -> Self {
        PartialAssignment(vec![None; n])
    }

    pub fn new(cells: Vec<Option<Trit>>) -> Self {
        PartialAssignment(cells)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn cells(&self) -> &[Option<Trit>] {
        &self.0
    }

    pub fn get(&self, i: usize) -> Option<Trit> {
        self.0[i]
    }

    pub fn set(&mut self, i: usize, t: Option<Trit>) {
        self.0[i] = t;
    }

    /// Number of set cells, `|p|`.
    pub fn size(&self) -> usize {
        self.0.iter().filter(|c| c.is_some()).count()
    }

    /// Set positions in increasing order.
    pub fn domain(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.0[i].is_some()).collect()
    }

    pub fn stars(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.0[i].is_none()).collect()
    }

    pub fn is_consistent(&self, y: &TernaryString) -> bool {
        self.len() == y.len()
            && self
                .0
                .iter()
                .zip(y.trits())
                .all(|(c, &t)| c.map_or(true, |v| v == t))
    }

    /// A partial assignment without `*` cells, viewed as a ternary string.
    pub fn as_ternary(&self) -> Option<TernaryString> {
        self.0
            .iter()
            .copied()
            .collect::<Option<Vec<_>>>()
            .map(TernaryString)
    }

    /// Ternary strings consistent with `self`, in lexicographic order.
    pub fn completions(&self) -> impl Iterator<Item = TernaryString> + '_ {
        let stars = self.stars();
        let base: Vec<Trit> = self.0.iter().map(|c| c.unwrap_or(Trit::Zero)).collect();
        (0..pow3(stars.len())).map(move |mut k| {
            let mut trits = base.clone();
            for &pos in stars.iter().rev() {
                trits[pos] = Trit::from_digit((k % 3) as u8);
                k /= 3;
            }
            TernaryString(trits)
        })
    }

    /// Base-3 index of `self` with every `*` read as 0, plus the weights of
    /// the `*` positions (most significant first).
    pub fn split_index(&self) -> (usize, Vec<usize>) {
        let n = self.len();
        let mut base = 0usize;
        let mut stars = Vec::new();
        for (i, c) in self.0.iter().enumerate() {
            base = base * 3
                + match c {
                    Some(t) => t.digit() as usize,
                    None => {
                        stars.push(weight3(n, i));
                        0
                    }
                };
        }
        (base, stars)
    }
}

impl fmt::Display for PartialAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.0 {
            match c {
                Some(t) => write!(f, "{}", t.as_char())?,
                None => write!(f, "*")?,
            }
        }
        Ok(())
    }
}

impl FromStr for PartialAssignment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        s.chars()
            .enumerate()
            .map(|(pos, c)| match c {
                '*' => Ok(None),
                _ => Trit::from_char(c)
                    .map(Some)
                    .ok_or_else(|| Error::BadLiteral {
                        literal: s.to_string(),
                        position: pos,
                    }),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(PartialAssignment)
    }
}

impl Serialize for PartialAssignment {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl From<&TernaryString> for PartialAssignment {
    fn from(t: &TernaryString) -> Self {
        t.to_partial()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ts(s: &str) -> TernaryString {
        s.parse().unwrap()
    }

    #[test]
    fn resolutions_of_small_strings() {
        let show = |s: &str| -> Vec<String> {
            ts(s).resolutions().iter().map(|r| r.to_string()).collect()
        };
        assert_eq!(show("0u"), ["00", "01"]);
        assert_eq!(show("01"), ["01"]);
        assert_eq!(show("uu"), ["00", "01", "10", "11"]);
    }

    #[test]
    fn index_is_lexicographic() {
        let all: Vec<String> = TernaryString::all(2).map(|t| t.to_string()).collect();
        assert_eq!(all, ["00", "01", "0u", "10", "11", "1u", "u0", "u1", "uu"]);
        for (i, t) in TernaryString::all(3).enumerate() {
            assert_eq!(t.index(), i);
        }
    }

    #[test]
    fn literals_reject_garbage() {
        assert!(matches!(
            "01x".parse::<TernaryString>(),
            Err(Error::BadLiteral { position: 2, .. })
        ));
        assert!("0*".parse::<TernaryString>().is_err());
        let p: PartialAssignment = "0*u".parse().unwrap();
        assert_eq!(p.size(), 2);
        assert_eq!(p.domain(), [0, 2]);
        assert_eq!(p.to_string(), "0*u");
    }

    #[test]
    fn completions_in_lex_order() {
        let p: PartialAssignment = "*1*".parse().unwrap();
        let c: Vec<String> = p.completions().map(|t| t.to_string()).collect();
        assert_eq!(c.len(), 9);
        assert_eq!(c[0], "010");
        assert_eq!(c[1], "011");
        assert_eq!(c[8], "u1u");
        assert!(c.windows(2).all(|w| ts(&w[0]).index() < ts(&w[1]).index()));
    }

    #[test]
    fn binary_index_msb_first() {
        assert_eq!(ts("10").binary_index(), Some(2));
        assert_eq!(ts("1u").binary_index(), None);
        assert_eq!(TernaryString::from_binary_index(3, 5).to_string(), "101");
    }
}
