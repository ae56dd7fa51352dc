//! Reidemeister (twisted conjugacy) classes of endomorphisms of finite groups.

use crate::error::Result;
use crate::group::{endo_power, quotient, Endomorphism, FiniteGroup};
use crate::util::UnionFind;

/// Orbits of the twisted action `g ↦ x g φ(x)^{-1}`, numbered by smallest member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReidemeisterPartition {
    pub class_of: Vec<usize>,
    pub reps: Vec<usize>,
}

impl ReidemeisterPartition {
    /// `R(φ)`
    pub fn count(&self) -> usize {
        self.reps.len()
    }
}

/// The twisted action of a product is the composite of the generator moves,
/// so joining `g` with `s g φ(s)^{-1}` for generators `s` yields every orbit.
pub fn reidemeister_classes(phi: &Endomorphism) -> ReidemeisterPartition {
    let group: &FiniteGroup = phi.group();
    let n = group.order();
    let mut uf = UnionFind::new(n);
    for (s, &x) in group.generators().iter().enumerate() {
        let twist = group.inv(phi.apply(x));
        for g in 0..n {
            uf.union(g, group.mult(group.left_gen(s, g), twist));
        }
    }
    let (class_of, reps) = uf.labels();
    ReidemeisterPartition { class_of, reps }
}

/// `R(φ^n)`
pub fn reidemeister_number(phi: &Endomorphism, n: u32) -> usize {
    reidemeister_classes(&endo_power(phi, n)).count()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PushforwardReport {
    pub classes_upstairs: usize,
    pub classes_downstairs: usize,
    /// Every twisted class of `G` lands inside one twisted class of `G/N`.
    pub maps_into: bool,
    /// The image of each twisted class is an entire twisted class.
    pub maps_onto_class: bool,
    /// Every twisted class of `G/N` is hit.
    pub surjective: bool,
    /// An upstairs class whose image misbehaves, if any.
    pub witness: Option<usize>,
}

impl PushforwardReport {
    pub fn holds(&self) -> bool {
        self.maps_into && self.maps_onto_class && self.surjective
    }
}

/// Checks that the projection `G → G/N` carries twisted classes of `φ` onto
/// twisted classes of the induced endomorphism.
pub fn quotient_pushforward_check(phi: &Endomorphism, normal: &[usize]) -> Result<PushforwardReport> {
    let q = quotient(phi, normal)?;
    let up = reidemeister_classes(phi);
    let down = reidemeister_classes(&q.endomorphism);

    let mut target: Vec<Option<usize>> = vec![None; up.count()];
    let mut maps_into = true;
    let mut witness = None;
    for (g, &c) in up.class_of.iter().enumerate() {
        let d = down.class_of[q.projection[g]];
        match target[c] {
            None => target[c] = Some(d),
            Some(t) if t != d => {
                maps_into = false;
                witness.get_or_insert(c);
            }
            _ => {}
        }
    }

    let mut maps_onto_class = true;
    let mut hit = vec![false; down.count()];
    for (c, t) in target.iter().enumerate() {
        let Some(d) = *t else { continue };
        hit[d] = true;
        let mut image = vec![false; q.group.order()];
        for (g, &cg) in up.class_of.iter().enumerate() {
            if cg == c {
                image[q.projection[g]] = true;
            }
        }
        let whole = down.class_of.iter().enumerate().all(|(h, &dh)| (dh == d) == image[h]);
        if !whole {
            maps_onto_class = false;
            witness.get_or_insert(c);
        }
    }
    Ok(PushforwardReport {
        classes_upstairs: up.count(),
        classes_downstairs: down.count(),
        maps_into,
        maps_onto_class,
        surjective: hit.iter().all(|&h| h),
        witness,
    })
}
