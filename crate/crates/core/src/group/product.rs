use std::sync::Arc;

use super::{Endomorphism, FiniteGroup, Repr, SourceKind};
use crate::error::{Error, Result};

/// `G x H` with the componentwise endomorphism `φ x ψ`. Element `(g, h)` has
/// index `g * |H| + h`; generators are `(s, e)` for `s` in `G`, then `(e, t)`.
pub fn direct_product(phi: &Endomorphism, psi: &Endomorphism) -> Result<(Arc<FiniteGroup>, Endomorphism)> {
    let (g, h) = (phi.group(), psi.group());
    let order = g
        .order()
        .checked_mul(h.order())
        .ok_or(Error::ClosureOverflow { cap: usize::MAX })?;
    let w = h.order();
    let mut generators = Vec::new();
    let mut names = Vec::new();
    for (&s, name) in g.generators().iter().zip(g.generator_names()) {
        generators.push(s * w);
        names.push(format!("l_{name}"));
    }
    for (&t, name) in h.generators().iter().zip(h.generator_names()) {
        generators.push(t);
        names.push(format!("r_{name}"));
    }
    let repr = Repr::Product {
        left: Arc::clone(g),
        right: Arc::clone(h),
    };
    let product = Arc::new(FiniteGroup::finish(
        order,
        repr,
        generators,
        names,
        SourceKind::Product,
    )?);
    let image: Vec<usize> = (0..order).map(|x| phi.apply(x / w) * w + psi.apply(x % w)).collect();
    let endo = Endomorphism::from_table(&product, image)?;
    Ok((product, endo))
}

/// `G/N` together with the projection and the induced endomorphism.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub group: Arc<FiniteGroup>,
    /// Coset index of every element of `G`.
    pub projection: Vec<usize>,
    pub endomorphism: Endomorphism,
}

/// Builds `G/N` for a normal `φ`-invariant subgroup `N` given as an element set.
pub fn quotient(phi: &Endomorphism, normal: &[usize]) -> Result<Quotient> {
    let g = phi.group();
    let n = g.order();
    let mut in_n = vec![false; n];
    for &x in normal {
        if x >= n {
            return Err(Error::NotASubgroup(format!("element {x} out of range")));
        }
        in_n[x] = true;
    }
    let members: Vec<usize> = (0..n).filter(|&x| in_n[x]).collect();
    if !in_n[0] {
        return Err(Error::NotASubgroup("missing the identity".into()));
    }
    for &a in &members {
        for &b in &members {
            if !in_n[g.mult(a, g.inv(b))] {
                return Err(Error::NotASubgroup(format!("not closed: {a} * {b}^-1")));
            }
        }
    }
    for (s, &x) in g.generators().iter().enumerate() {
        let x_inv = g.inv(x);
        for &a in &members {
            if !in_n[g.mult(g.left_gen(s, a), x_inv)] {
                return Err(Error::NotNormal {
                    element: a,
                    generator: x,
                });
            }
        }
    }
    if let Some(&a) = members.iter().find(|&&a| !in_n[phi.apply(a)]) {
        return Err(Error::NotInvariant { element: a });
    }

    let unset = usize::MAX;
    let mut projection = vec![unset; n];
    let mut reps = Vec::new();
    for x in 0..n {
        if projection[x] != unset {
            continue;
        }
        let id = reps.len();
        reps.push(x);
        for &a in &members {
            projection[g.mult(x, a)] = id;
        }
    }
    let m = reps.len();
    let mut table = Vec::with_capacity(m * m);
    for &a in &reps {
        for &b in &reps {
            table.push(projection[g.mult(a, b)] as u32);
        }
    }
    let gens: Vec<usize> = g.generators().iter().map(|&x| projection[x]).collect();
    let quotient = FiniteGroup::from_trusted_table(table, m, gens, g.generator_names().to_vec())?;
    let image: Vec<usize> = reps.iter().map(|&r| projection[phi.apply(r)]).collect();
    let endomorphism = Endomorphism::from_table(&quotient, image)?;
    Ok(Quotient {
        group: quotient,
        projection,
        endomorphism,
    })
}

/// `|G / [G, G]|`, with `[G, G]` the normal closure of generator commutators.
pub fn abelianization_order(group: &FiniteGroup) -> usize {
    let gens = group.generators();
    let mut commutators = Vec::new();
    for &x in gens {
        for &y in gens {
            let c = group.mult(group.mult(x, y), group.mult(group.inv(x), group.inv(y)));
            if c != 0 {
                commutators.push(c);
            }
        }
    }
    let mut subgroup = group.subgroup_closure(&commutators);
    loop {
        let mut inside = vec![false; group.order()];
        for &x in &subgroup {
            inside[x] = true;
        }
        let mut extra = Vec::new();
        for (s, &x) in gens.iter().enumerate() {
            let x_inv = group.inv(x);
            for &a in &subgroup {
                let c = group.mult(group.left_gen(s, a), x_inv);
                if !inside[c] {
                    inside[c] = true;
                    extra.push(c);
                }
            }
        }
        if extra.is_empty() {
            break;
        }
        extra.extend_from_slice(&subgroup);
        subgroup = group.subgroup_closure(&extra);
    }
    group.order() / subgroup.len()
}
