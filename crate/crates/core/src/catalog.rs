//! Small algebras used throughout the tests and the CLI corpus.

use crate::quiver::{validate_gentle, GentleAlgebra, Quiver};

/// One vertex, one loop `a` with `a^2 = 0`.
pub fn loop_square_zero() -> GentleAlgebra {
    validate_gentle(Quiver::new(1, vec![("a", 1, 1)]), &[("a", "a")]).unwrap()
}

/// 1 <-a- 2 <-b- 3 with ab = 0.
pub fn a3_zero_relation() -> GentleAlgebra {
    validate_gentle(Quiver::new(3, vec![("a", 2, 1), ("b", 3, 2)]), &[("a", "b")]).unwrap()
}

/// 1 -b-> 2 -a-> 1 with ab = 0.
pub fn two_cycle() -> GentleAlgebra {
    validate_gentle(Quiver::new(2, vec![("a", 2, 1), ("b", 1, 2)]), &[("a", "b")]).unwrap()
}

/// Loops at 1 and 4, a 2-cycle between 2 and 3, and arrows 2 -> 1, 3 -> 4.
pub fn loops_and_two_cycle() -> GentleAlgebra {
    validate_gentle(
        Quiver::new(4, vec![("a", 1, 1), ("b", 2, 1), ("c1", 3, 2), ("c2", 2, 3), ("d", 3, 4), ("e", 4, 4)]),
        &[("a", "a"), ("e", "e"), ("c1", "c2"), ("c2", "c1")],
    )
    .unwrap()
}

/// The algebra of a triangulated torus with one boundary component.
pub fn torus() -> GentleAlgebra {
    validate_gentle(
        Quiver::new(
            4,
            vec![
                ("a1", 1, 2),
                ("b1", 1, 2),
                ("a2", 2, 3),
                ("b2", 2, 4),
                ("a3", 3, 1),
                ("b3", 4, 1),
                ("c", 3, 4),
            ],
        ),
        &[("a1", "a3"), ("a2", "a1"), ("a3", "a2"), ("b1", "b3"), ("b2", "b1"), ("b3", "b2")],
    )
    .unwrap()
}

/// Five vertices, seven arrows, one long relation chain.
pub fn wheel() -> GentleAlgebra {
    let arrows = vec![
        ("a1", 1, 2),
        ("a2", 2, 3),
        ("a3", 3, 4),
        ("a4", 4, 5),
        ("a5", 5, 3),
        ("a6", 3, 1),
        ("a7", 1, 5),
    ];
    let rels = [("a2", "a1"), ("a3", "a2"), ("a4", "a3"), ("a5", "a4"), ("a6", "a5"), ("a7", "a6")];
    validate_gentle(Quiver::new(5, arrows), &rels).unwrap()
}

/// Linear path algebra 1 -> 2 -> ... -> n without relations.
pub fn linear(n: usize) -> GentleAlgebra {
    let names: Vec<String> = (1..n).map(|i| format!("a{i}")).collect();
    let arrows = names.iter().enumerate().map(|(i, s)| (s.as_str(), i + 1, i + 2)).collect();
    validate_gentle(Quiver::new(n, arrows), &[]).unwrap()
}


/// Quiver of a triangulated sphere with three boundary components, one
/// marked point on each.
pub fn three_holed_sphere() -> GentleAlgebra {
    crate::surface::build_qt(&crate::surface::catalog::three_holed_sphere()).unwrap().alg
}
