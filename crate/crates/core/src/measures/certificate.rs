//! Minimum certificates of `f_u` and u-certificate complexity.

use itertools::Itertools;
use serde::Serialize;

use crate::hazard::HazardFreeTable;
use crate::ternary::{weight3, PartialAssignment, TernaryString, Trit};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateWitness {
    pub input: TernaryString,
    pub assignment: PartialAssignment,
    pub value: Trit,
}

impl CertificateWitness {
    pub fn size(&self) -> usize {
        self.assignment.size()
    }

    /// Re-checks the witness with the definitional quantifier: every ternary
    /// string consistent with the assignment evaluates to `value`, and the
    /// input is one of them.
    pub fn is_valid(&self, t: &HazardFreeTable) -> bool {
        self.assignment.is_consistent(&self.input)
            && t.at(self.input.index()) == self.value
            && self
                .assignment
                .completions()
                .all(|y| t.at(y.index()) == self.value)
    }
}

fn restrict(x: &TernaryString, keep: &[usize]) -> PartialAssignment {
    let mut p = PartialAssignment::unset(x.len());
    for &i in keep {
        p.set(i, Some(x.get(i)));
    }
    p
}

/// A minimum-size certificate of `f_u` at `x`, lexicographically least among
/// minimum ones by position vector.
///
/// For `f_u(x) = b` in `{0, 1}` only the non-u positions of `x` are
/// candidates, and a set `S` is accepted iff setting every position outside
/// `S` to u still evaluates to `b`: that string has the largest resolution
/// set among those consistent with `x` on `S`. For `f_u(x) = u` every
/// position is a candidate and `S` is accepted iff all completions give u.
pub fn certificate_u_at(t: &HazardFreeTable, x: &TernaryString) -> CertificateWitness {
    let n = t.arity();
    let idx = x.index();
    let value = t.at(idx);
    let witness = |keep: &[usize]| CertificateWitness {
        input: x.clone(),
        assignment: restrict(x, keep),
        value,
    };
    if value != Trit::U {
        let candidates: Vec<usize> = (0..n).filter(|&i| !x.get(i).is_u()).collect();
        // index with all candidates raised to u
        let all_u: usize = idx
            + candidates
                .iter()
                .map(|&i| (2 - x.get(i).digit() as usize) * weight3(n, i))
                .sum::<usize>();
        for size in 0..=candidates.len() {
            for keep in candidates.iter().copied().combinations(size) {
                let probe = all_u
                    - keep
                        .iter()
                        .map(|&i| (2 - x.get(i).digit() as usize) * weight3(n, i))
                        .sum::<usize>();
                if t.at(probe) == value {
                    return witness(&keep);
                }
            }
        }
    } else {
        for size in 0..=n {
            for keep in (0..n).combinations(size) {
                let p = restrict(x, &keep);
                if t.constant_on(&p) == Some(Trit::U) {
                    return witness(&keep);
                }
            }
        }
    }
    unreachable!("the full assignment certifies its own value")
}

/// `C_{u,0}`, `C_{u,1}`, `C_{u,u}` and `C_u = max(C_{u,0}, C_{u,1})`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateComplexity {
    /// Indexed by `Trit as usize`; 0 for an empty preimage.
    pub by_value: [usize; 3],
    pub witnesses: [Option<CertificateWitness>; 3],
}

impl CertificateComplexity {
    pub fn of(&self, value: Trit) -> usize {
        self.by_value[value as usize]
    }

    pub fn c_u(&self) -> usize {
        self.by_value[0].max(self.by_value[1])
    }
}

pub fn certificate_complexity_u(t: &HazardFreeTable) -> CertificateComplexity {
    let n = t.arity();
    let per_input = super::map_inputs(t, |x| certificate_u_at(t, &TernaryString::from_index(n, x)));
    let mut by_value = [0usize; 3];
    let mut witnesses: [Option<CertificateWitness>; 3] = [None, None, None];
    for w in per_input {
        let slot = w.value as usize;
        if witnesses[slot].is_none() || w.size() > by_value[slot] {
            by_value[slot] = w.size();
            witnesses[slot] = Some(w);
        }
    }
    CertificateComplexity {
        by_value,
        witnesses,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::BooleanFunction;

    fn table(n: usize, bits: &str) -> HazardFreeTable {
        let f = BooleanFunction::new(n, bits.chars().map(|c| c == '1').collect()).unwrap();
        HazardFreeTable::new(&f).unwrap()
    }

    fn cert(t: &HazardFreeTable, x: &str) -> CertificateWitness {
        certificate_u_at(t, &x.parse().unwrap())
    }

    #[test]
    fn certificate_examples() {
        let and2 = table(2, "0001");
        let c = cert(&and2, "11");
        assert_eq!((c.assignment.to_string(), c.size()), ("11".into(), 2));
        let c = cert(&table(2, "0111"), "1u");
        assert_eq!((c.assignment.to_string(), c.size()), ("1*".into(), 1));
        let c = cert(&table(2, "0110"), "uu");
        assert_eq!((c.assignment.to_string(), c.value), ("u*".into(), Trit::U));
        for x in TernaryString::all(2) {
            assert!(certificate_u_at(&and2, &x).is_valid(&and2));
        }
    }

    #[test]
    fn complexity_examples() {
        let and2 = certificate_complexity_u(&table(2, "0001"));
        assert_eq!(and2.of(Trit::One), 2);
        assert_eq!(and2.of(Trit::Zero), 1);
        assert_eq!(and2.c_u(), 2);
        assert_eq!(certificate_complexity_u(&table(2, "0110")).c_u(), 2);
        let zero = certificate_complexity_u(&table(2, "0000"));
        assert_eq!(zero.of(Trit::Zero), 0);
        assert_eq!(
            zero.witnesses[0].as_ref().unwrap().assignment.to_string(),
            "**"
        );
    }
}
