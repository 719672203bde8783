//! Finitely generated subgroups of `S_m` at small degree.
//!
//! Groups are stored by generators and enumerated by breadth-first closure
//! on demand. Enumeration is capped; callers that only need membership in a
//! stabilizer can supply a predicate instead (see [`split_symmetric_factor`]).

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::hash::Hash;
use std::sync::OnceLock;

use num_bigint::BigUint;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::partition::{factorial, Partition};
use crate::perm::Permutation;

#[derive(Clone)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: OnceLock<Vec<Permutation>>,
}

impl PermutationGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch {
                left: degree,
                right: g.degree(),
            });
        }
        Ok(PermutationGroup {
            degree,
            generators,
            elements: OnceLock::new(),
        })
    }

    /// Parses generators written in cycle notation.
    pub fn from_cycles<S: AsRef<str>>(degree: usize, generators: &[S]) -> Result<Self> {
        let gens = generators
            .iter()
            .map(|s| Permutation::parse(s.as_ref(), degree))
            .collect::<Result<Vec<_>>>()?;
        Self::new(degree, gens)
    }

    pub fn trivial(degree: usize) -> Self {
        Self::new(degree, Vec::new()).unwrap()
    }

    pub fn symmetric(degree: usize) -> Self {
        Self::new(degree, Permutation::adjacent_transpositions(degree)).unwrap()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// All elements, sorted lexicographically by image sequence.
    pub fn enumerate(&self, caps: &Caps) -> Result<&[Permutation]> {
        if let Some(els) = self.elements.get() {
            return Ok(els);
        }
        let id = Permutation::identity(self.degree);
        let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(g) = queue.pop_front() {
            for s in &self.generators {
                let h = g.compose_unchecked(s);
                if seen.insert(h.clone()) {
                    if seen.len() > caps.group_order {
                        return Err(Error::GroupTooLarge { cap: caps.group_order });
                    }
                    queue.push_back(h);
                }
            }
        }
        let mut els: Vec<Permutation> = seen.into_iter().collect();
        els.sort();
        // another thread may have won the race; both results are identical
        let _ = self.elements.set(els);
        Ok(self.elements.get().unwrap())
    }

    pub fn order(&self, caps: &Caps) -> Result<usize> {
        Ok(self.enumerate(caps)?.len())
    }

    pub fn contains(&self, g: &Permutation, caps: &Caps) -> Result<bool> {
        Ok(g.degree() == self.degree && self.enumerate(caps)?.binary_search(g).is_ok())
    }

    /// Same underlying element set.
    pub fn same_elements(&self, other: &PermutationGroup, caps: &Caps) -> Result<bool> {
        Ok(self.degree == other.degree && self.enumerate(caps)? == other.enumerate(caps)?)
    }

    /// Orbit of `point` under an action, in breadth-first order.
    ///
    /// The action axioms are spot-checked on generator pairs at the first few
    /// orbit points.
    pub fn orbit_of<T, F>(&self, point: T, action: F, caps: &Caps) -> Result<Vec<T>>
    where
        T: Clone + Eq + Hash + fmt::Debug,
        F: Fn(&Permutation, &T) -> T,
    {
        let id = Permutation::identity(self.degree);
        let mut seen: HashSet<T> = HashSet::from([point.clone()]);
        let mut order = vec![point];
        let mut head = 0;
        while head < order.len() {
            let x = order[head].clone();
            if head < 4 {
                check_action(&id, &self.generators, &x, &action)?;
            }
            head += 1;
            for s in &self.generators {
                let y = action(s, &x);
                if seen.insert(y.clone()) {
                    if seen.len() > caps.orbit_size {
                        return Err(Error::OrbitTooLarge { cap: caps.orbit_size });
                    }
                    order.push(y);
                }
            }
        }
        Ok(order)
    }

    /// The subgroup fixing `point`, with a small generating set.
    pub fn stabilizer_of<T, F>(&self, point: &T, action: F, caps: &Caps) -> Result<PermutationGroup>
    where
        T: Clone + Eq + Hash + fmt::Debug,
        F: Fn(&Permutation, &T) -> T,
    {
        check_action(&Permutation::identity(self.degree), &self.generators, point, &action)?;
        let fixed: Vec<Permutation> = self
            .enumerate(caps)?
            .iter()
            .filter(|g| action(g, point) == *point)
            .cloned()
            .collect();
        let group = PermutationGroup::new(self.degree, generating_set(self.degree, &fixed))?;
        let _ = group.elements.set(fixed);
        Ok(group)
    }

    /// Orbits of the group on `[degree]`, each sorted, listed by smallest point.
    pub fn point_orbits(&self) -> Vec<Vec<usize>> {
        point_orbits(self.degree, &self.generators)
    }

    /// Lexicographically least element list among all conjugates `τHτ⁻¹`.
    /// Two groups are conjugate in `S_m` iff their keys agree.
    pub fn conjugacy_key(&self, caps: &Caps) -> Result<Vec<Permutation>> {
        let els = self.enumerate(caps)?.to_vec();
        let m = self.degree;
        if els.len() == 1 {
            return Ok(els);
        }
        let full = factorial(m);
        if BigUint::from(els.len()) == full {
            return Ok(els);
        }
        let sym = PermutationGroup::symmetric(m);
        let mut best: Option<Vec<Permutation>> = None;
        for tau in sym.enumerate(caps)? {
            let inv = tau.inverse();
            let mut conj: Vec<Permutation> = els
                .iter()
                .map(|h| tau.compose_unchecked(h).compose_unchecked(&inv))
                .collect();
            conj.sort();
            if best.as_ref().is_none_or(|b| conj < *b) {
                best = Some(conj);
            }
        }
        Ok(best.unwrap())
    }

    /// Generators in cycle notation.
    pub fn generator_strings(&self) -> Vec<String> {
        self.generators.iter().map(ToString::to_string).collect()
    }
}

impl fmt::Debug for PermutationGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "> ≤ S_{}", self.degree)
    }
}

fn check_action<T, F>(id: &Permutation, gens: &[Permutation], x: &T, action: &F) -> Result<()>
where
    T: Eq + fmt::Debug,
    F: Fn(&Permutation, &T) -> T,
{
    if action(id, x) != *x {
        return Err(Error::NotAnAction(format!("identity moves {x:?}")));
    }
    for g in gens {
        for h in gens {
            let lhs = action(g, &action(h, x));
            let rhs = action(&g.compose_unchecked(h), x);
            if lhs != rhs {
                return Err(Error::NotAnAction(format!(
                    "{g} · ({h} · {x:?}) differs from ({g} {h}) · {x:?}"
                )));
            }
        }
    }
    Ok(())
}

/// Greedy generating set drawn from a sorted element list.
fn generating_set(degree: usize, elements: &[Permutation]) -> Vec<Permutation> {
    let mut gens: Vec<Permutation> = Vec::new();
    let mut span: HashSet<Permutation> = HashSet::from([Permutation::identity(degree)]);
    for g in elements {
        if span.contains(g) {
            continue;
        }
        gens.push(g.clone());
        let mut queue: VecDeque<Permutation> = span.iter().cloned().collect();
        while let Some(x) = queue.pop_front() {
            for s in &gens {
                let y = x.compose_unchecked(s);
                if span.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
    }
    gens
}

/// Orbits of `⟨generators⟩` on `[degree]`.
pub fn point_orbits(degree: usize, generators: &[Permutation]) -> Vec<Vec<usize>> {
    let mut uf = petgraph::unionfind::UnionFind::<usize>::new(degree);
    for g in generators {
        for p in 0..degree {
            uf.union(p, g.apply(p));
        }
    }
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; degree];
    for p in 0..degree {
        let r = uf.find(p);
        if slot[r] == usize::MAX {
            slot[r] = orbits.len();
            orbits.push(Vec::new());
        }
        orbits[slot[r]].push(p);
    }
    orbits
}

/// One conjugacy class of `S_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClassDatum {
    pub cycle_type: Partition,
    pub representative: Permutation,
    pub class_size: BigUint,
}

/// Classes of `S_n`, one per partition of `n`, in reverse lexicographic
/// order of cycle type.
pub fn conjugacy_classes(n: usize, caps: &Caps) -> Result<Vec<ConjugacyClassDatum>> {
    if n > caps.class_degree {
        return Err(Error::ClassCapExceeded {
            n,
            cap: caps.class_degree,
        });
    }
    let order = factorial(n);
    Ok(Partition::all(n)
        .into_iter()
        .map(|mu| {
            let mut images = Vec::with_capacity(n);
            let mut start = 0;
            for &len in mu.parts() {
                for i in 0..len {
                    images.push(start + (i + 1) % len);
                }
                start += len;
            }
            let class_size = &order / mu.centralizer_order();
            ConjugacyClassDatum {
                representative: Permutation::from_images(images).unwrap(),
                cycle_type: mu,
                class_size,
            }
        })
        .collect())
}

/// Result of searching for a decomposition `G = Sym(A) × H`.
#[derive(Debug, Clone)]
pub enum ProductOutcome<T> {
    Found(T),
    Absent,
    Undecided(String),
}

impl<T> ProductOutcome<T> {
    pub fn found(self) -> Option<T> {
        match self {
            ProductOutcome::Found(t) => Some(t),
            _ => None,
        }
    }
}

/// A split `G = Sym([n] ∖ B) × H` with `H` relabelled onto `[|B|]`.
#[derive(Debug, Clone)]
pub struct SymmetricSplit {
    /// The complementary block `B`, sorted, 0-based.
    pub block: Vec<usize>,
    pub h: PermutationGroup,
}

/// Looks for `G = Sym(A) × H` where `A` is the orbit of the largest point
/// (the orbit that grows with the degree) and `H` acts on the rest.
///
/// `contains` is a membership oracle for `G`; only transpositions are queried.
pub fn split_symmetric_factor<F>(
    degree: usize,
    generators: &[Permutation],
    contains: F,
) -> ProductOutcome<SymmetricSplit>
where
    F: Fn(&Permutation) -> bool,
{
    if degree == 0 {
        return ProductOutcome::Found(SymmetricSplit {
            block: Vec::new(),
            h: PermutationGroup::trivial(0),
        });
    }
    let orbits = point_orbits(degree, generators);
    let big = orbits
        .iter()
        .find(|o| o.last() == Some(&(degree - 1)))
        .expect("every point lies in an orbit");
    let a0 = big[0];
    if !big[1..]
        .iter()
        .all(|&a| contains(&Permutation::transposition(degree, a0, a)))
    {
        return ProductOutcome::Absent;
    }
    let in_big: HashSet<usize> = big.iter().copied().collect();
    let block: Vec<usize> = (0..degree).filter(|p| !in_big.contains(p)).collect();
    let mut h_gens: BTreeSet<Permutation> = BTreeSet::new();
    for g in generators {
        let r = g.restrict(&block).expect("orbit unions are invariant");
        if !r.is_identity() {
            h_gens.insert(r);
        }
    }
    ProductOutcome::Found(SymmetricSplit {
        h: PermutationGroup::new(block.len(), h_gens.into_iter().collect()).unwrap(),
        block,
    })
}

/// Decides whether `G` is conjugate to `Sym([n] ∖ B) × H` for some `H ≤ Sym(B)`,
/// returning `H` relabelled onto `B` in increasing order.
pub fn is_conjugate_to_product(g: &PermutationGroup, block: &[usize], caps: &Caps) -> ProductOutcome<PermutationGroup> {
    if block.len() > caps.subgroup_degree {
        return ProductOutcome::Undecided(format!(
            "block of size {} exceeds the subgroup cap {}",
            block.len(),
            caps.subgroup_degree
        ));
    }
    let elements = match g.enumerate(caps) {
        Ok(els) => els,
        Err(e) => return ProductOutcome::Undecided(e.to_string()),
    };
    let split = split_symmetric_factor(g.degree(), g.generators(), |p| elements.binary_search(p).is_ok());
    match split {
        ProductOutcome::Found(s) if s.block.len() == block.len() => ProductOutcome::Found(s.h),
        ProductOutcome::Found(_) | ProductOutcome::Absent => ProductOutcome::Absent,
        ProductOutcome::Undecided(why) => ProductOutcome::Undecided(why),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn caps() -> Caps {
        Caps::default()
    }

    #[allow(clippy::ptr_arg)]
    fn two_subset_action(g: &Permutation, s: &Vec<usize>) -> Vec<usize> {
        let mut v: Vec<usize> = s.iter().map(|&p| g.apply(p)).collect();
        v.sort();
        v
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(PermutationGroup::trivial(3).enumerate(&caps()).unwrap().len(), 1);
        let s3 = PermutationGroup::from_cycles(3, &["(1 2)", "(1 2 3)"]).unwrap();
        let els = s3.enumerate(&caps()).unwrap();
        assert_eq!(els.len(), 6);
        assert!(els.windows(2).all(|w| w[0] < w[1]));
        let c2 = PermutationGroup::from_cycles(4, &["(1 2)"]).unwrap();
        assert_eq!(c2.order(&caps()).unwrap(), 2);
    }

    #[test]
    fn enumeration_cap_is_enforced() {
        let s9 = PermutationGroup::symmetric(9);
        assert_eq!(s9.enumerate(&caps()), Err(Error::GroupTooLarge { cap: 40_320 }));
        assert_eq!(PermutationGroup::symmetric(8).order(&caps()).unwrap(), 40_320);
    }

    #[test]
    fn enumerated_groups_are_closed() {
        let g = PermutationGroup::from_cycles(5, &["(1 2 3)", "(3 4)(1 5)"]).unwrap();
        let els = g.enumerate(&caps()).unwrap();
        let set: HashSet<&Permutation> = els.iter().collect();
        for a in els {
            assert!(set.contains(&a.inverse()));
            for b in els {
                assert!(set.contains(&a.compose(b).unwrap()));
            }
        }
        assert_eq!(120 % els.len(), 0);
    }

    #[test]
    fn orbit_examples() {
        let triv = PermutationGroup::trivial(3);
        assert_eq!(triv.orbit_of(1usize, |g, &p| g.apply(p), &caps()).unwrap(), vec![1]);
        let s3 = PermutationGroup::symmetric(3);
        let mut o = s3.orbit_of(0usize, |g, &p| g.apply(p), &caps()).unwrap();
        o.sort();
        assert_eq!(o, vec![0, 1, 2]);
        let s4 = PermutationGroup::symmetric(4);
        let orbit = s4.orbit_of(vec![0, 1], two_subset_action, &caps()).unwrap();
        assert_eq!(orbit.len(), 6);
    }

    #[test]
    fn non_action_is_rejected() {
        let s3 = PermutationGroup::symmetric(3);
        let err = s3.orbit_of(0usize, |g, &p| g.apply(p) % 2, &caps());
        assert!(matches!(err, Err(Error::NotAnAction(_))));
    }

    #[test]
    fn stabilizer_examples() {
        let s4 = PermutationGroup::symmetric(4);
        let st = s4.stabilizer_of(&vec![0, 1], two_subset_action, &caps()).unwrap();
        assert_eq!(st.order(&caps()).unwrap(), 4);
        let expected = PermutationGroup::from_cycles(4, &["(1 2)", "(3 4)"]).unwrap();
        assert!(st.same_elements(&expected, &caps()).unwrap());

        let triv = PermutationGroup::trivial(4);
        let st = triv.stabilizer_of(&vec![0, 1], two_subset_action, &caps()).unwrap();
        assert_eq!(st.order(&caps()).unwrap(), 1);

        let s3 = PermutationGroup::symmetric(3);
        let st = s3.stabilizer_of(&2usize, |g, &p| g.apply(p), &caps()).unwrap();
        let expected = PermutationGroup::from_cycles(3, &["(1 2)"]).unwrap();
        assert!(st.same_elements(&expected, &caps()).unwrap());
    }

    #[test]
    fn orbit_stabilizer_theorem() {
        let groups = [
            PermutationGroup::symmetric(5),
            PermutationGroup::from_cycles(5, &["(1 2 3 4 5)"]).unwrap(),
            PermutationGroup::from_cycles(5, &["(1 2)", "(3 4 5)"]).unwrap(),
        ];
        for g in &groups {
            for pt in [vec![0, 1], vec![0, 3], vec![2, 4]] {
                let orbit = g.orbit_of(pt.clone(), two_subset_action, &caps()).unwrap();
                let stab = g.stabilizer_of(&pt, two_subset_action, &caps()).unwrap();
                assert_eq!(orbit.len() * stab.order(&caps()).unwrap(), g.order(&caps()).unwrap());
            }
        }
    }

    #[test]
    fn conjugacy_class_examples() {
        let c1 = conjugacy_classes(1, &caps()).unwrap();
        assert_eq!(c1.len(), 1);
        assert_eq!(c1[0].class_size, BigUint::from(1u32));

        let c3 = conjugacy_classes(3, &caps()).unwrap();
        let sizes: Vec<(String, u32)> = c3
            .iter()
            .map(|c| (c.cycle_type.to_string(), c.class_size.clone().try_into().unwrap()))
            .collect();
        assert_eq!(
            sizes,
            vec![("[3]".into(), 2), ("[2,1]".into(), 3), ("[1,1,1]".into(), 1)]
        );
        let five = conjugacy_classes(5, &caps()).unwrap();
        assert_eq!(five[0].class_size, BigUint::from(24u32));
        for c in &five {
            assert_eq!(c.representative.cycle_type(), c.cycle_type);
        }
        assert!(conjugacy_classes(21, &caps()).is_err());
    }

    #[test]
    fn class_sizes_sum_to_factorial() {
        for n in 1..=10 {
            let total: BigUint = conjugacy_classes(n, &caps())
                .unwrap()
                .into_iter()
                .map(|c| c.class_size)
                .sum();
            assert_eq!(total, factorial(n));
        }
    }

    #[test]
    fn product_detection_examples() {
        let s5 = PermutationGroup::symmetric(5);
        let h = is_conjugate_to_product(&s5, &[], &caps()).found().unwrap();
        assert_eq!(h.degree(), 0);

        let g = PermutationGroup::from_cycles(6, &["(1 2)", "(3 4)", "(3 4 5 6)"]).unwrap();
        let h = is_conjugate_to_product(&g, &[0, 1], &caps()).found().unwrap();
        let expected = PermutationGroup::from_cycles(2, &["(1 2)"]).unwrap();
        assert!(h.same_elements(&expected, &caps()).unwrap());
    }

    #[test]
    fn wreath_group_is_not_a_product() {
        let g8 =
            PermutationGroup::from_cycles(8, &["(1 2)", "(3 4)", "(3 4 5)", "(6 7)", "(6 7 8)", "(3 6)(4 7)(5 8)"])
                .unwrap();
        assert_eq!(g8.order(&caps()).unwrap(), 144);
        assert!(matches!(
            is_conjugate_to_product(&g8, &[0, 1], &caps()),
            ProductOutcome::Absent
        ));
    }

    #[test]
    fn oversized_group_is_undecided() {
        let s9 = PermutationGroup::symmetric(9);
        assert!(matches!(
            is_conjugate_to_product(&s9, &[], &caps()),
            ProductOutcome::Undecided(_)
        ));
    }

    #[test]
    fn conjugacy_key_identifies_conjugates() {
        let a = PermutationGroup::from_cycles(3, &["(1 2)"]).unwrap();
        let b = PermutationGroup::from_cycles(3, &["(2 3)"]).unwrap();
        let c = PermutationGroup::from_cycles(3, &["(1 2 3)"]).unwrap();
        assert_eq!(a.conjugacy_key(&caps()).unwrap(), b.conjugacy_key(&caps()).unwrap());
        assert_ne!(a.conjugacy_key(&caps()).unwrap(), c.conjugacy_key(&caps()).unwrap());
    }
}
