//! Measures, packings and tree depths against brute-force definitions.

use std::collections::HashMap;

use uquery::algorithms::{unate_simulate, Oracle};
use uquery::measures::{
    block_sensitivity_u_at, certificate_u_at, max_disjoint_packing, minimal_sensitive_blocks,
    BlockSet, MeasureReport,
};
use uquery::trees::{query_complexity, query_complexity_u};
use uquery::{
    all_functions, BooleanFunction, Caps, HazardFreeTable, PartialAssignment, TernaryString, Trit,
};

fn strings(n: usize) -> Vec<Vec<u8>> {
    (0..3usize.pow(n as u32))
        .map(|mut i| {
            let mut v = vec![0u8; n];
            for k in (0..n).rev() {
                v[k] = (i % 3) as u8;
                i /= 3;
            }
            v
        })
        .collect()
}

/// `f_u` over digit vectors (2 = u) by resolution enumeration.
fn value(f: &BooleanFunction, x: &[u8]) -> u8 {
    let us: Vec<usize> = (0..x.len()).filter(|&i| x[i] == 2).collect();
    let mut seen = [false; 2];
    for mask in 0..1usize << us.len() {
        let mut idx = 0;
        let mut k = 0;
        for &d in x {
            let bit = if d == 2 {
                k += 1;
                mask >> (k - 1) & 1
            } else {
                d as usize
            };
            idx = idx * 2 + bit;
        }
        seen[f.eval_index(idx) as usize] = true;
    }
    match seen {
        [true, false] => 0,
        [false, true] => 1,
        _ => 2,
    }
}

fn to_ts(x: &[u8]) -> TernaryString {
    TernaryString::new(x.iter().map(|&d| Trit::from_digit(d)).collect())
}

fn sensitive(f: &BooleanFunction, x: &[u8], block: u32) -> bool {
    let v = value(f, x);
    strings(x.len())
        .iter()
        .any(|y| (0..x.len()).all(|i| block >> i & 1 == 1 || y[i] == x[i]) && value(f, y) != v)
}

/// Largest family of pairwise disjoint sensitive blocks, by trying every
/// family of nonempty subsets.
fn brute_bs(f: &BooleanFunction, x: &[u8]) -> usize {
    let n = x.len();
    let blocks: Vec<u32> = (1..1u32 << n).filter(|&b| sensitive(f, x, b)).collect();
    fn best(blocks: &[u32], used: u32) -> usize {
        match blocks.split_first() {
            None => 0,
            Some((&b, rest)) => {
                let skip = best(rest, used);
                if b & used == 0 {
                    skip.max(1 + best(rest, used | b))
                } else {
                    skip
                }
            }
        }
    }
    best(&blocks, 0)
}

/// Smallest partial assignment consistent with `x` that fixes `f_u`.
fn brute_cert(f: &BooleanFunction, x: &[u8]) -> usize {
    let n = x.len();
    let v = value(f, x);
    let all = strings(n);
    (0..1u32 << n)
        .filter(|&dom| {
            all.iter()
                .filter(|y| (0..n).all(|i| dom >> i & 1 == 0 || y[i] == x[i]))
                .all(|y| value(f, y) == v)
        })
        .map(|dom| dom.count_ones() as usize)
        .min()
        .unwrap()
}

/// Plain minimax over partial assignments (3 = unset).
fn brute_depth(
    f: &BooleanFunction,
    answers: &[u8],
    memo: &mut HashMap<Vec<u8>, usize>,
    p: Vec<u8>,
) -> usize {
    if let Some(&d) = memo.get(&p) {
        return d;
    }
    let n = p.len();
    let values: Vec<u8> = strings(n)
        .iter()
        .filter(|y| (0..n).all(|i| p[i] == 3 || p[i] == y[i]))
        .filter(|y| answers.len() == 3 || y.iter().all(|&d| d != 2))
        .map(|y| value(f, y))
        .collect();
    let d = if values.iter().all(|&v| v == values[0]) {
        0
    } else {
        (0..n)
            .filter(|&i| p[i] == 3)
            .map(|i| {
                1 + answers
                    .iter()
                    .map(|&a| {
                        let mut q = p.clone();
                        q[i] = a;
                        brute_depth(f, answers, memo, q)
                    })
                    .max()
                    .unwrap()
            })
            .min()
            .unwrap()
    };
    memo.insert(p, d);
    d
}

fn small_functions() -> impl Iterator<Item = BooleanFunction> {
    (1..=3).flat_map(all_functions)
}

#[test]
fn measures_match_definitions() {
    let caps = Caps::default();
    for f in small_functions() {
        let n = f.arity();
        let t = HazardFreeTable::new(&f).unwrap();
        let r = MeasureReport::compute(&t, &caps).unwrap();
        let mut bs = [0usize; 3];
        let mut cert = [0usize; 3];
        let mut s_u = 0;
        for x in strings(n) {
            let v = value(&f, &x) as usize;
            bs[v] = bs[v].max(brute_bs(&f, &x));
            cert[v] = cert[v].max(brute_cert(&f, &x));
            s_u = s_u.max((0..n).filter(|&i| sensitive(&f, &x, 1 << i)).count());
        }
        assert_eq!(r.s_u, s_u, "{f}");
        assert_eq!(
            (r.bs_u_0, r.bs_u_1, r.bs_u_uval),
            (bs[0], bs[1], bs[2]),
            "{f}"
        );
        assert_eq!(r.bs_u, bs.iter().copied().max().unwrap(), "{f}");
        assert_eq!(
            (r.C_u_0, r.C_u_1, r.C_u_uval),
            (cert[0], cert[1], cert[2]),
            "{f}"
        );
        assert_eq!(r.C_u, cert[0].max(cert[1]), "{f}");
    }
}

#[test]
fn classical_measures_match_definitions() {
    for f in small_functions() {
        let n = f.arity();
        let r =
            MeasureReport::compute(&HazardFreeTable::new(&f).unwrap(), &Caps::default()).unwrap();
        let (mut s, mut bs, mut c) = (0, 0, 0);
        for x in 0..1usize << n {
            let flips = |b: u32| f.eval_index(x ^ b as usize) != f.eval_index(x);
            s = s.max((0..n).filter(|&i| flips(1 << i)).count());
            let blocks: Vec<u32> = (1..1u32 << n).filter(|&b| flips(b)).collect();
            let best = (0..1u64 << blocks.len())
                .filter(|fam| {
                    let mut used = 0;
                    (0..blocks.len()).filter(|&j| fam >> j & 1 == 1).all(|j| {
                        let ok = blocks[j] & used == 0;
                        used |= blocks[j];
                        ok
                    })
                })
                .map(|fam| fam.count_ones() as usize)
                .max()
                .unwrap();
            bs = bs.max(best);
            let cert = (0..1usize << n)
                .filter(|&dom| {
                    (0..1usize << n)
                        .all(|y| (y ^ x) & dom != 0 || f.eval_index(y) == f.eval_index(x))
                })
                .map(|dom| dom.count_ones() as usize)
                .min()
                .unwrap();
            c = c.max(cert);
        }
        assert_eq!((r.s, r.bs, r.C), (s, bs, c), "{f}");
    }
}

#[test]
fn search_depths_match_plain_minimax() {
    let caps = Caps::default();
    for f in small_functions() {
        let n = f.arity();
        let t = HazardFreeTable::new(&f).unwrap();
        let d_u = brute_depth(&f, &[0, 1, 2], &mut HashMap::new(), vec![3; n]);
        let d = brute_depth(&f, &[0, 1], &mut HashMap::new(), vec![3; n]);
        assert_eq!(query_complexity_u(&t, &caps).unwrap().0, d_u, "{f}");
        assert_eq!(query_complexity(&f, &caps).unwrap().0, d, "{f}");
    }
}

#[test]
fn packing_matches_family_enumeration() {
    // every sublist of the 7 nonempty blocks over 3 variables
    let pool: Vec<BlockSet> = (1..8u32).map(BlockSet).collect();
    for mask in 0..1u32 << pool.len() {
        let blocks: Vec<BlockSet> = (0..pool.len())
            .filter(|&j| mask >> j & 1 == 1)
            .map(|j| pool[j])
            .collect();
        let chosen = max_disjoint_packing(&blocks);
        let brute = (0..1u32 << blocks.len())
            .filter(|fam| {
                let members: Vec<BlockSet> = (0..blocks.len())
                    .filter(|&j| fam >> j & 1 == 1)
                    .map(|j| blocks[j])
                    .collect();
                members
                    .iter()
                    .enumerate()
                    .all(|(i, a)| members[i + 1..].iter().all(|b| a.is_disjoint(*b)))
            })
            .map(|fam| fam.count_ones() as usize)
            .max()
            .unwrap();
        assert_eq!(chosen.len(), brute, "{blocks:?}");
        for (i, &a) in chosen.iter().enumerate() {
            for &b in &chosen[i + 1..] {
                assert!(blocks[a].is_disjoint(blocks[b]));
            }
        }
    }
}

#[test]
fn union_of_maximal_block_family_certifies() {
    for f in small_functions() {
        let t = HazardFreeTable::new(&f).unwrap();
        let s_u = uquery::measures::sensitivity_u(&t).0;
        for x in TernaryString::all(f.arity()) {
            for b in minimal_sensitive_blocks(&t, &x) {
                assert!(b.block.len() <= s_u, "{f} at {x}: {}", b.block);
            }
            let family = block_sensitivity_u_at(&t, &x);
            let union = family.blocks.iter().fold(0u32, |m, b| m | b.block.0);
            let mut p = PartialAssignment::unset(f.arity());
            for i in BlockSet(union).indices() {
                p.set(i, Some(x.get(i)));
            }
            assert_eq!(t.constant_on(&p), Some(t.at(x.index())), "{f} at {x}");
        }
    }
}

#[test]
fn binary_certificates_avoid_u_and_conflict() {
    for f in small_functions() {
        let n = f.arity();
        let t = HazardFreeTable::new(&f).unwrap();
        let mut certs = [Vec::new(), Vec::new()];
        for x in TernaryString::all(n) {
            let v = t.at(x.index());
            if v == Trit::U {
                continue;
            }
            let c = certificate_u_at(&t, &x);
            assert!(
                c.assignment.cells().iter().flatten().all(|&a| a != Trit::U),
                "{f} at {x}"
            );
            certs[v as usize].push(c.assignment);
        }
        for c0 in &certs[0] {
            for c1 in &certs[1] {
                let clash = (0..n).any(|i| {
                    matches!(
                        (c0.get(i), c1.get(i)),
                        (Some(Trit::Zero), Some(Trit::One)) | (Some(Trit::One), Some(Trit::Zero))
                    )
                });
                assert!(clash, "{f}: {c0} and {c1}");
            }
        }
    }
}

#[test]
fn unate_simulation_matches_fu() {
    let caps = Caps::default();
    let mut unate = 0;
    for f in small_functions() {
        let Some(s) = f.unate_orientation() else {
            continue;
        };
        unate += 1;
        let n = f.arity();
        let (d, tree) = query_complexity(&f, &caps).unwrap();
        for x in strings(n) {
            let mut oracle = Oracle::new(to_ts(&x));
            let r = unate_simulate(&f, &s, &tree, &mut oracle).unwrap();
            assert_eq!(r.output, Trit::from_digit(value(&f, &x)), "{f} at {x:?}");
            assert!(oracle.queries() <= 2 * d);
        }
    }
    assert!(unate > 0);
}
