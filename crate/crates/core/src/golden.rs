//! The five reference collections with their expected verdicts and
//! classification summaries.

use crate::bimodal::{is_bimodal_by_definition, is_bimodal_by_structure, SetCollection};
use crate::classify::{classify, Case};
use crate::group::{Elem, GroupSpec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expected {
    pub bimodal: bool,
    pub case: Case,
    pub r: usize,
    /// Kernel elements, when the case has one.
    pub kernel: Option<Vec<Vec<i64>>>,
    pub sum_group_order: usize,
}

#[derive(Debug, Clone)]
pub struct GoldenExample {
    pub name: &'static str,
    pub description: &'static str,
    pub collection: SetCollection,
    pub expected: Expected,
}

fn build(orders: &[u64], sets: &[&[&[i64]]]) -> SetCollection {
    let g = GroupSpec::new(orders).expect("golden group");
    let sets: Vec<Vec<Elem>> =
        sets.iter().map(|s| s.iter().map(|r| g.elem(r).expect("golden element")).collect()).collect();
    SetCollection::new(g, sets).expect("golden collection")
}

fn cyclic(n: u64, sets: &[&[i64]]) -> SetCollection {
    let g = GroupSpec::cyclic(n).expect("golden group");
    let sets: Vec<Vec<Elem>> =
        sets.iter().map(|s| s.iter().map(|&x| g.elem(&[x]).expect("golden element")).collect()).collect();
    SetCollection::new(g, sets).expect("golden collection")
}

pub fn z10_cosets() -> GoldenExample {
    GoldenExample {
        name: "z10_cosets",
        description: "three cosets of {0,5} in Z_10",
        collection: cyclic(10, &[&[1, 6], &[3, 8], &[4, 9]]),
        expected: Expected { bimodal: true, case: Case::R0, r: 0, kernel: None, sum_group_order: 2 },
    }
}

pub fn z3xz3_partition() -> GoldenExample {
    GoldenExample {
        name: "z3xz3_partition",
        description: "the four order-3 subgroups of Z_3 x Z_3 minus zero",
        collection: build(
            &[3, 3],
            &[&[&[1, 1], &[2, 2]], &[&[0, 1], &[0, 2]], &[&[1, 2], &[2, 1]], &[&[1, 0], &[2, 0]]],
        ),
        expected: Expected {
            bimodal: true,
            case: Case::RGe2,
            r: 4,
            kernel: Some(vec![vec![0, 0]]),
            sum_group_order: 9,
        },
    }
}

pub fn z12_mixed() -> GoldenExample {
    GoldenExample {
        name: "z12_mixed",
        description: "{4,8}, {3,6,9} and the remaining non-zero singletons of Z_12",
        collection: cyclic(12, &[&[4, 8], &[3, 6, 9], &[1], &[2], &[5], &[7], &[10], &[11]]),
        expected: Expected { bimodal: true, case: Case::RGe2, r: 2, kernel: Some(vec![vec![0]]), sum_group_order: 12 },
    }
}

pub fn z2cubed_subdivision() -> GoldenExample {
    GoldenExample {
        name: "z2cubed_subdivision",
        description: "Z_2^3 subdivided into four cosets of order-2 subgroups",
        collection: build(
            &[2, 2, 2],
            &[
                &[&[0, 0, 0], &[0, 0, 1]],
                &[&[0, 1, 0], &[1, 1, 0]],
                &[&[1, 0, 0], &[1, 1, 1]],
                &[&[0, 1, 1], &[1, 0, 1]],
            ],
        ),
        expected: Expected { bimodal: true, case: Case::R0, r: 0, kernel: None, sum_group_order: 8 },
    }
}

pub fn z36_r1() -> GoldenExample {
    GoldenExample {
        name: "z36_r1",
        description: "nine sets in Z_36 with exactly one non-full set",
        collection: cyclic(
            36,
            &[&[12, 15, 30, 33], &[1, 19], &[4, 22], &[7, 25], &[10, 28], &[13], &[16], &[31], &[34]],
        ),
        expected: Expected {
            bimodal: true,
            case: Case::R1,
            r: 1,
            kernel: Some(vec![vec![0], vec![18]]),
            sum_group_order: 12,
        },
    }
}

pub fn all() -> Vec<GoldenExample> {
    vec![z10_cosets(), z3xz3_partition(), z12_mixed(), z2cubed_subdivision(), z36_r1()]
}

pub fn by_name(name: &str) -> Option<GoldenExample> {
    all().into_iter().find(|g| g.name == name)
}

impl GoldenExample {
    /// Re-derives every expected field; returns the mismatches.
    pub fn replay(&self) -> Result<(), Vec<String>> {
        let c = &self.collection;
        let mut problems = Vec::new();
        let by_def = is_bimodal_by_definition(c).is_bimodal();
        let by_struct = is_bimodal_by_structure(c).is_bimodal();
        if by_def != self.expected.bimodal || by_struct != self.expected.bimodal {
            problems.push(format!("verdicts: definition {by_def}, structure {by_struct}"));
        }
        match classify(c) {
            Err(e) => problems.push(format!("classification failed: {e}")),
            Ok(rep) => {
                if rep.case != self.expected.case || rep.r != self.expected.r {
                    problems.push(format!(
                        "case {} r = {}, expected {} r = {}",
                        rep.case, rep.r, self.expected.case, self.expected.r
                    ));
                }
                let kernel = rep.kernel.as_ref().map(|k| {
                    k.elements
                        .iter()
                        .map(|&e| c.group().decode(e).residues().iter().map(|&x| i64::from(x)).collect())
                        .collect::<Vec<Vec<i64>>>()
                });
                if kernel != self.expected.kernel {
                    problems.push(format!("kernel {:?}, expected {:?}", kernel, self.expected.kernel));
                }
                if rep.sum_group.len() != self.expected.sum_group_order {
                    problems.push(format!(
                        "sum group order {}, expected {}",
                        rep.sum_group.len(),
                        self.expected.sum_group_order
                    ));
                }
            }
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(problems)
        }
    }
}
