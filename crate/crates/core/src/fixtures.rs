//! Standard FI-sets and relations used by the tests, benches and examples.

use itertools::Itertools;

use crate::error::Result;
use crate::fiset::{FISetSpec, Identification, InducedOrbitSpec};
use crate::group::PermutationGroup;
use crate::relation::{RelationGenerator, RelationSpec};

/// `r`-subsets of `[n]`.
pub fn subsets(r: usize) -> FISetSpec {
    FISetSpec::induced(vec![InducedOrbitSpec::subsets(r, "S")]).expect("valid spec")
}

/// Injective `r`-tuples in `[n]`.
pub fn tuples(r: usize) -> FISetSpec {
    FISetSpec::induced(vec![InducedOrbitSpec::tuples(r, "T")]).expect("valid spec")
}

/// Triples with the first two entries unordered: `H = ⟨(1 2)⟩ ≤ S_3`.
pub fn half_ordered_triples() -> FISetSpec {
    let h = PermutationGroup::from_cycles(3, &["(1 2)"]).expect("valid group");
    FISetSpec::induced(vec![InducedOrbitSpec::new(3, h, "H").expect("valid orbit")]).expect("valid spec")
}

/// Points of `[n]` glued together: a single element at every degree.
pub fn crush() -> FISetSpec {
    let base = subsets(1);
    let a = base.parse_element("S:K=[1]").expect("valid literal");
    let b = base.parse_element("S:K=[2]").expect("valid literal");
    FISetSpec::new(base.orbits().to_vec(), vec![Identification { degree: 2, a, b }]).expect("valid spec")
}

/// Points and pairs of `[n]` as one FI-set.
pub fn points_and_pairs() -> FISetSpec {
    FISetSpec::induced(vec![
        InducedOrbitSpec::subsets(1, "P"),
        InducedOrbitSpec::subsets(2, "E"),
    ])
    .expect("valid spec")
}

fn literal(support: impl Iterator<Item = usize>) -> String {
    format!("[{}]", support.map(|i| i.to_string()).join(","))
}

/// Kneser relation on `r`-subsets: disjointness, generated at degree `2r`.
pub fn kneser(r: usize) -> RelationSpec {
    let space = subsets(r);
    let x = space
        .parse_element(&format!("S:K={}", literal(1..=r)))
        .expect("valid literal");
    let y = space
        .parse_element(&format!("S:K={}", literal(r + 1..=2 * r)))
        .expect("valid literal");
    RelationSpec::on(space, vec![RelationGenerator { degree: 2 * r, x, y }], true).expect("valid relation")
}

/// `i ~ j` for distinct points.
pub fn distinct_points() -> RelationSpec {
    let space = subsets(1);
    let x = space.parse_element("S:K=[1]").expect("valid literal");
    let y = space.parse_element("S:K=[2]").expect("valid literal");
    RelationSpec::on(space, vec![RelationGenerator { degree: 2, x, y }], true).expect("valid relation")
}

/// Disjoint ordered pairs.
pub fn disjoint_ordered_pairs() -> RelationSpec {
    let space = tuples(2);
    let x = space.parse_element("T:K=[1,2]").expect("valid literal");
    let y = space.parse_element("T:K=[3,4]").expect("valid literal");
    let y_swapped = space.parse_element("T:K=[3,4]:coset=\"(1 2)\"").expect("valid literal");
    RelationSpec::on(
        space,
        vec![
            RelationGenerator {
                degree: 4,
                x: x.clone(),
                y,
            },
            RelationGenerator {
                degree: 4,
                x,
                y: y_swapped,
            },
        ],
        true,
    )
    .expect("valid relation")
}

/// `r`-subsets meeting in exactly `k` points, generated at degree `2r - k`.
pub fn intersection(r: usize, k: usize) -> RelationSpec {
    intersection_family(r, &[(k, 2 * r - k)])
}

/// `r`-subsets related when they share `k` points, for each `(k, a)` in
/// `sizes`, the pattern switching on at degree `a ≥ 2r - k`.
pub fn intersection_family(r: usize, sizes: &[(usize, usize)]) -> RelationSpec {
    let space = subsets(r);
    let gens = sizes
        .iter()
        .map(|&(k, a)| {
            let x = space
                .parse_element(&format!("S:K={}", literal(1..=r)))
                .expect("valid literal");
            let y = space
                .parse_element(&format!("S:K={}", literal((r - k + 1)..=(2 * r - k))))
                .expect("valid literal");
            RelationGenerator { degree: a, x, y }
        })
        .collect();
    RelationSpec::on(space, gens, true).expect("valid relation")
}

/// Points to the pairs containing them.
pub fn containment() -> RelationSpec {
    let (pts, prs) = (subsets(1), subsets(2));
    let x = pts.parse_element("S:K=[1]").expect("valid literal");
    let y = prs.parse_element("S:K=[1,2]").expect("valid literal");
    RelationSpec::between(pts, prs, vec![RelationGenerator { degree: 2, x, y }]).expect("valid relation")
}

/// Point-pair incidence inside [`points_and_pairs`], in both directions.
pub fn incidence() -> RelationSpec {
    let space = points_and_pairs();
    let p = space.parse_element("P:K=[1]").expect("valid literal");
    let e = space.parse_element("E:K=[1,2]").expect("valid literal");
    RelationSpec::on(
        space,
        vec![
            RelationGenerator {
                degree: 2,
                x: p.clone(),
                y: e.clone(),
            },
            RelationGenerator { degree: 2, x: e, y: p },
        ],
        true,
    )
    .expect("valid relation")
}

/// The empty relation on `space`.
pub fn empty_on(space: FISetSpec) -> Result<RelationSpec> {
    RelationSpec::on(space, Vec::new(), true)
}
