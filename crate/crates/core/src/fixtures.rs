//! Built-in example problems.

use crate::problem::{AlphaRecord, ProblemFile};

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub problem: ProblemFile,
}

fn record(facet: usize, vertex: usize, value: u32) -> AlphaRecord {
    AlphaRecord { facet, vertex, value }
}

fn problem(
    description: &str,
    n: usize,
    facets: &[&[usize]],
    alpha: Option<Vec<AlphaRecord>>,
) -> ProblemFile {
    ProblemFile {
        description: Some(description.to_string()),
        n,
        facets: facets.iter().map(|f| f.to_vec()).collect(),
        alpha,
        characteristic: None,
    }
}

const TREE_COMPLEX: &[&[usize]] =
    &[&[1, 2, 4], &[2, 4, 5], &[2, 3, 5], &[4, 5, 7], &[4, 6, 7], &[5, 7, 8]];
const STAR: &[&[usize]] = &[&[1, 6], &[2, 6], &[3, 6], &[4, 6], &[5, 6]];
const SQUARE: &[&[usize]] = &[&[1, 2], &[1, 3], &[2, 4], &[3, 4]];
const TRIANGLE: &[&[usize]] = &[&[1, 2], &[2, 3], &[1, 3]];
const RP2: &[&[usize]] = &[
    &[1, 2, 3],
    &[1, 3, 4],
    &[1, 4, 5],
    &[1, 5, 6],
    &[1, 2, 6],
    &[2, 3, 5],
    &[3, 4, 6],
    &[2, 4, 5],
    &[3, 5, 6],
    &[2, 4, 6],
];

/// Every fixture, in catalog order.
pub fn all() -> Vec<Fixture> {
    vec![
        Fixture {
            name: "tree-complex",
            problem: problem(
                "Cohen-Macaulay 2-complex on 8 vertices whose facet graph is a tree",
                8,
                TREE_COMPLEX,
                None,
            ),
        },
        Fixture {
            name: "star",
            problem: problem("five edges sharing vertex 6", 6, STAR, None),
        },
        Fixture {
            name: "star-alpha",
            problem: problem(
                "star with one squared generator per component; Cohen-Macaulay, yet no relation tree fits",
                6,
                STAR,
                Some(vec![
                    record(1, 2, 2),
                    record(2, 3, 2),
                    record(3, 4, 2),
                    record(4, 5, 2),
                    record(5, 1, 2),
                ]),
            ),
        },
        Fixture {
            name: "square",
            problem: problem("4-cycle", 4, SQUARE, None),
        },
        Fixture {
            name: "square-alpha",
            problem: problem(
                "4-cycle with (x1,x2^2)∩(x1,x3^3)∩(x2^3,x4)∩(x3^2,x4); every vertex has an ordered shelling, yet not Cohen-Macaulay",
                4,
                SQUARE,
                Some(vec![record(1, 3, 2), record(2, 2, 3), record(3, 3, 3), record(4, 2, 2)]),
            ),
        },
        Fixture {
            name: "rp2",
            problem: problem(
                "6-vertex triangulation of the real projective plane; H1 is 1-dimensional over F_2 and zero over Q",
                6,
                RP2,
                None,
            ),
        },
        Fixture {
            name: "triangle",
            problem: problem("boundary of a triangle", 3, TRIANGLE, None),
        },
    ]
}

pub fn names() -> Vec<&'static str> {
    all().into_iter().map(|f| f.name).collect()
}

pub fn get(name: &str) -> Option<Fixture> {
    all().into_iter().find(|f| f.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::homology;

    #[test]
    fn every_fixture_validates() {
        for f in all() {
            f.problem.validate().unwrap_or_else(|e| panic!("{}: {e}", f.name));
        }
        assert!(names().len() >= 5);
        assert!(get("nope").is_none());
    }

    #[test]
    fn projective_plane_gate() {
        let p = get("rp2").unwrap().problem.validate().unwrap();
        let delta = &p.complex;
        assert_eq!(delta.f_vector(), vec![6, 15, 10]);
        assert_eq!(homology::reduced_euler_characteristic(delta), 0);
        let f2 = homology::reduced_homology_ranks(delta, FieldSpec::new(2).unwrap()).unwrap();
        let q = homology::reduced_homology_ranks(delta, FieldSpec::RATIONALS).unwrap();
        assert_eq!((f2[2], q[2], q[3]), (1, 0, 0));
    }

    #[test]
    fn square_alpha_matches_components() {
        let p = get("square-alpha").unwrap().problem.validate().unwrap();
        let comps = crate::ideals::components(&p.complex, p.alpha.as_ref().unwrap()).unwrap();
        let shown: Vec<String> = comps.iter().map(|c| c.to_string()).collect();
        assert_eq!(shown, ["(x3^2,x4)", "(x2^3,x4)", "(x1,x3^3)", "(x1,x2^2)"]);
    }
}
