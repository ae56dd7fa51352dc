use super::{Endomorphism, FiniteGroup};
use crate::error::{Error, Result};
use crate::util::UnionFind;

/// Ordinary conjugacy classes, numbered by smallest member (class 0 is `{e}`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyPartition {
    pub class_of: Vec<usize>,
    pub reps: Vec<usize>,
    pub sizes: Vec<usize>,
}

impl ConjugacyPartition {
    pub fn count(&self) -> usize {
        self.reps.len()
    }

    pub fn members(&self, class: usize) -> impl Iterator<Item = usize> + '_ {
        self.class_of
            .iter()
            .enumerate()
            .filter(move |(_, &c)| c == class)
            .map(|(g, _)| g)
    }
}

/// The self-map `σ` that an endomorphism induces on conjugacy classes.
///
/// Its 0/1 matrix `B[c][c'] = [σ(c) = c']` is the pullback operator on class
/// functions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassMap {
    pub partition: ConjugacyPartition,
    pub sigma: Vec<usize>,
}

impl ClassMap {
    /// Number of classes fixed by `σ^n`, i.e. `Tr B^n`.
    pub fn fixed_points_of_power(&self, n: u32) -> usize {
        (0..self.sigma.len())
            .filter(|&c| {
                let mut x = c;
                for _ in 0..n {
                    x = self.sigma[x];
                }
                x == c
            })
            .count()
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.sigma.len()];
        self.sigma.iter().all(|&c| !std::mem::replace(&mut seen[c], true))
    }
}

/// Orbits of conjugation, found by union-find over conjugation by generators.
pub fn conjugacy_classes(group: &FiniteGroup) -> ConjugacyPartition {
    let n = group.order();
    let mut uf = UnionFind::new(n);
    for (s, &x) in group.generators().iter().enumerate() {
        let x_inv = group.inv(x);
        for g in 0..n {
            uf.union(g, group.mult(group.left_gen(s, g), x_inv));
        }
    }
    let (class_of, reps) = uf.labels();
    let mut sizes = vec![0; reps.len()];
    for &c in &class_of {
        sizes[c] += 1;
    }
    ConjugacyPartition { class_of, reps, sizes }
}

pub fn class_map(phi: &Endomorphism) -> Result<ClassMap> {
    let partition = conjugacy_classes(phi.group());
    class_map_with(phi, partition)
}

pub(crate) fn class_map_with(phi: &Endomorphism, partition: ConjugacyPartition) -> Result<ClassMap> {
    let sigma: Vec<usize> = partition
        .reps
        .iter()
        .map(|&r| partition.class_of[phi.apply(r)])
        .collect();
    for (g, &c) in partition.class_of.iter().enumerate() {
        if partition.class_of[phi.apply(g)] != sigma[c] {
            return Err(Error::InconsistentClassMap { class: c, element: g });
        }
    }
    Ok(ClassMap { partition, sigma })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::group::{endo_power, load_group, parse_endomorphism};

    fn brute_force_classes(g: &FiniteGroup) -> Vec<Vec<usize>> {
        let n = g.order();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for a in 0..n {
            if seen[a] {
                continue;
            }
            let mut orbit: Vec<usize> = (0..n).map(|x| g.mult(g.mult(x, a), g.inv(x))).collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &b in &orbit {
                seen[b] = true;
            }
            out.push(orbit);
        }
        out
    }

    fn s4() -> Arc<FiniteGroup> {
        load_group("kind: permutation\ndegree: 4\ngen a: 2 1 3 4\ngen b: 2 3 4 1\n").unwrap()
    }

    #[test]
    fn class_counts() {
        let s3 = load_group("kind: permutation\ndegree: 3\ngen a: 2 1 3\ngen b: 2 3 1\n").unwrap();
        assert_eq!(conjugacy_classes(&s3).count(), 3);
        assert_eq!(conjugacy_classes(&s4()).count(), 5);
        let z6 = crate::group::FiniteGroup::abelian(&[6], 100).unwrap();
        assert_eq!(conjugacy_classes(&z6).count(), 6);
    }

    #[test]
    fn matches_brute_force_on_s4() {
        let g = s4();
        let p = conjugacy_classes(&g);
        let brute = brute_force_classes(&g);
        assert_eq!(brute.len(), p.count());
        for orbit in brute {
            let c = p.class_of[orbit[0]];
            assert!(orbit.iter().all(|&x| p.class_of[x] == c));
            assert_eq!(p.reps[c], orbit[0]);
            assert_eq!(p.sizes[c], orbit.len());
        }
    }

    #[test]
    fn negation_class_map_on_z6() {
        let z6 = crate::group::FiniteGroup::abelian(&[6], 100).unwrap();
        let neg = Endomorphism::from_generator_images(&z6, &[5]).unwrap();
        let cm = class_map(&neg).unwrap();
        assert_eq!(cm.sigma, vec![0, 5, 4, 3, 2, 1]);
        assert_eq!(cm.fixed_points_of_power(1), 2);
        assert_eq!(cm.fixed_points_of_power(2), 6);
    }

    #[test]
    fn trivial_and_identity_class_maps() {
        let g = s4();
        let cm = class_map(&Endomorphism::trivial(&g)).unwrap();
        assert!(cm.sigma.iter().all(|&c| c == 0));
        let cm = class_map(&Endomorphism::identity(&g)).unwrap();
        assert_eq!(cm.sigma, (0..5).collect::<Vec<_>>());
    }

    #[test]
    fn power_commutes_with_class_map() {
        let g = s4();
        let phi = parse_endomorphism(&g, "map a: b a b'\nmap b: b").unwrap();
        let sigma = class_map(&phi).unwrap().sigma;
        for n in 1..=6 {
            let direct = class_map(&endo_power(&phi, n)).unwrap().sigma;
            let iterated: Vec<usize> = (0..sigma.len()).map(|c| (0..n).fold(c, |x, _| sigma[x])).collect();
            assert_eq!(direct, iterated);
        }
    }
}
