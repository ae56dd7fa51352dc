//! Fully enumerated finite groups.
//!
//! Elements are dense indices `0..order` with `0` the identity. Every group
//! carries a breadth-first spanning tree over its generators, so each element
//! has a canonical shortlex word `g = s_{i1} s_{i2} ... s_{ik}`. Endomorphisms
//! are extended along these words.

mod classes;
mod endo;
mod parse;
mod product;

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::util::lcm_u64;

pub(crate) use classes::class_map_with;
pub use classes::{class_map, conjugacy_classes, ClassMap, ConjugacyPartition};
pub use endo::{build_endomorphism, endo_power, parse_endomorphism, Endomorphism, Letter, Word};
pub(crate) use parse::strip_comment;
pub use parse::{load_group, load_group_with};
pub use product::{abelianization_order, direct_product, quotient, Quotient};

/// Default bound on the number of enumerated elements.
pub const DEFAULT_CAP: usize = 1_000_000;

/// Groups up to this order get a cached multiplication table.
const TABLE_CACHE_LIMIT: usize = 1024;

/// Full associativity scan up to this order; sampled above.
const FULL_ASSOC_LIMIT: usize = 256;
const ASSOC_SAMPLES: usize = 10_000;
const ASSOC_SEED: u64 = 0x7a65_7461;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SourceKind {
    Permutation,
    Table,
    Abelian,
    Product,
}

#[derive(Debug, Clone)]
pub struct LoadOptions {
    pub cap: usize,
}

impl Default for LoadOptions {
    fn default() -> Self {
        LoadOptions { cap: DEFAULT_CAP }
    }
}

#[derive(Debug)]
enum Repr {
    Table(Vec<u32>),
    Perm {
        degree: usize,
        perms: Vec<Vec<u32>>,
        index: HashMap<Vec<u32>, u32>,
        table: Option<Vec<u32>>,
    },
    Abelian {
        moduli: Vec<u64>,
    },
    Product {
        left: Arc<FiniteGroup>,
        right: Arc<FiniteGroup>,
    },
}

#[derive(Debug)]
pub struct FiniteGroup {
    order: usize,
    repr: Repr,
    inv: Vec<u32>,
    generators: Vec<usize>,
    gen_names: Vec<String>,
    /// BFS tree: `g = parent[g] * generators[via[g]]`; the identity is its own parent.
    parent: Vec<u32>,
    via: Vec<u32>,
    /// `rgen[g * ngens + s] = g * generators[s]`.
    rgen: Vec<u32>,
    /// `lgen[g * ngens + s] = generators[s] * g`.
    lgen: Vec<u32>,
    exponent: u64,
    kind: SourceKind,
}

impl FiniteGroup {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn generator_names(&self) -> &[String] {
        &self.gen_names
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.gen_names.iter().position(|n| n == name)
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn source_kind(&self) -> SourceKind {
        self.kind
    }

    pub fn inv(&self, g: usize) -> usize {
        self.inv[g] as usize
    }

    pub fn mult(&self, x: usize, y: usize) -> usize {
        match &self.repr {
            Repr::Table(t) => t[x * self.order + y] as usize,
            Repr::Perm {
                perms, index, table, ..
            } => {
                if let Some(t) = table {
                    return t[x * self.order + y] as usize;
                }
                let (px, py) = (&perms[x], &perms[y]);
                let composed: Vec<u32> = py.iter().map(|&i| px[i as usize]).collect();
                index[&composed] as usize
            }
            Repr::Abelian { moduli } => {
                let (mut a, mut b) = (x as u64, y as u64);
                let mut out = 0u64;
                let mut place = 1u64;
                for &m in moduli.iter().rev() {
                    let digit = (a % m + b % m) % m;
                    out += digit * place;
                    place *= m;
                    a /= m;
                    b /= m;
                }
                out as usize
            }
            Repr::Product { left, right } => {
                let w = right.order;
                let l = left.mult(x / w, y / w);
                let r = right.mult(x % w, y % w);
                l * w + r
            }
        }
    }

    /// `generators[s] * g`
    pub fn left_gen(&self, s: usize, g: usize) -> usize {
        self.lgen[g * self.generators.len() + s] as usize
    }

    /// `g * generators[s]`
    pub fn right_gen(&self, g: usize, s: usize) -> usize {
        self.rgen[g * self.generators.len() + s] as usize
    }

    pub fn pow(&self, g: usize, mut n: u64) -> usize {
        let mut base = g;
        let mut acc = 0;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mult(acc, base);
            }
            base = self.mult(base, base);
            n >>= 1;
        }
        acc
    }

    pub fn element_order(&self, g: usize) -> u64 {
        let mut k = 1;
        let mut x = g;
        while x != 0 {
            x = self.mult(x, g);
            k += 1;
        }
        k
    }

    /// Shortlex word of generator indices spelling `g`.
    pub fn word(&self, g: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut x = g;
        while x != 0 {
            out.push(self.via[x] as usize);
            x = self.parent[x] as usize;
        }
        out.reverse();
        out
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|g| (0..self.generators.len()).all(|s| self.left_gen(s, g) == self.right_gen(g, s)))
    }

    /// Human-readable label: cycle notation for permutation groups, the
    /// index otherwise.
    pub fn label(&self, g: usize) -> String {
        match &self.repr {
            Repr::Perm { perms, degree, .. } => cycle_notation(&perms[g], *degree),
            Repr::Abelian { moduli } => {
                let mut digits = Vec::with_capacity(moduli.len());
                let mut x = g as u64;
                for &m in moduli.iter().rev() {
                    digits.push(x % m);
                    x /= m;
                }
                digits.reverse();
                let parts: Vec<String> = digits.iter().map(|d| d.to_string()).collect();
                format!("({})", parts.join(","))
            }
            Repr::Product { left, right } => {
                let w = right.order;
                format!("[{}, {}]", left.label(g / w), right.label(g % w))
            }
            Repr::Table(_) => g.to_string(),
        }
    }

    /// The group `Z/m_1 x ... x Z/m_k` with standard basis generators `e1..ek`.
    /// Element indices are mixed-radix with the first factor most significant.
    pub fn abelian(moduli: &[u64], cap: usize) -> Result<Arc<FiniteGroup>> {
        if moduli.contains(&0) {
            return Err(Error::InvalidArgument("moduli must be positive".into()));
        }
        let mut order: usize = 1;
        for &m in moduli {
            order = order
                .checked_mul(m as usize)
                .filter(|&o| o <= cap)
                .ok_or(Error::ClosureOverflow { cap })?;
        }
        let mut generators = Vec::with_capacity(moduli.len());
        let mut place = 1usize;
        for &m in moduli.iter().rev() {
            generators.push(if m == 1 { 0 } else { place });
            place *= m as usize;
        }
        generators.reverse();
        let names = (1..=moduli.len()).map(|i| format!("e{i}")).collect();
        let repr = Repr::Abelian {
            moduli: moduli.to_vec(),
        };
        FiniteGroup::finish(order, repr, generators, names, SourceKind::Abelian).map(Arc::new)
    }

    /// Builds a group from a full Cayley table (`table[g][h] = g*h`, index 0 the
    /// identity), validating the group axioms. When `generators` is empty a
    /// generating set is chosen greedily by index and named `g1, g2, ...`.
    pub fn from_cayley_table(table: Vec<Vec<usize>>, generators: Vec<(String, usize)>) -> Result<Arc<FiniteGroup>> {
        let n = table.len();
        if n == 0 {
            return Err(Error::NotAGroup("empty table".into()));
        }
        let mut flat = Vec::with_capacity(n * n);
        for (g, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotAGroup(format!(
                    "row {g} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for &h in row {
                if h >= n {
                    return Err(Error::NotAGroup(format!("entry {h} in row {g} out of range")));
                }
                flat.push(h as u32);
            }
        }
        check_table_axioms(&flat, n)?;
        let (gens, names) = if generators.is_empty() {
            greedy_generators(&flat, n)
        } else {
            let mut gens = Vec::new();
            let mut names = Vec::new();
            for (name, g) in generators {
                if g >= n {
                    return Err(Error::NotAGroup(format!("generator {name} = {g} out of range")));
                }
                names.push(name);
                gens.push(g);
            }
            (gens, names)
        };
        FiniteGroup::finish(n, Repr::Table(flat), gens, names, SourceKind::Table).map(Arc::new)
    }

    /// Table-backed group whose axioms are already known to hold.
    pub(crate) fn from_trusted_table(
        flat: Vec<u32>,
        n: usize,
        generators: Vec<usize>,
        names: Vec<String>,
    ) -> Result<Arc<FiniteGroup>> {
        FiniteGroup::finish(n, Repr::Table(flat), generators, names, SourceKind::Table).map(Arc::new)
    }

    /// Enumerates the permutation group generated by `generators` (images of
    /// points `0..degree`), numbering elements in BFS shortlex order.
    pub fn from_permutations(
        degree: usize,
        generators: Vec<(String, Vec<u32>)>,
        cap: usize,
    ) -> Result<Arc<FiniteGroup>> {
        let identity: Vec<u32> = (0..degree as u32).collect();
        let mut perms = vec![identity.clone()];
        let mut index = HashMap::new();
        index.insert(identity, 0u32);
        let gen_perms: Vec<Vec<u32>> = generators.iter().map(|(_, p)| p.clone()).collect();
        let mut queue = VecDeque::from([0usize]);
        while let Some(g) = queue.pop_front() {
            for s in &gen_perms {
                let composed: Vec<u32> = s.iter().map(|&i| perms[g][i as usize]).collect();
                if !index.contains_key(&composed) {
                    if perms.len() >= cap {
                        return Err(Error::ClosureOverflow { cap });
                    }
                    index.insert(composed.clone(), perms.len() as u32);
                    queue.push_back(perms.len());
                    perms.push(composed);
                }
            }
        }
        let order = perms.len();
        let gens: Vec<usize> = gen_perms.iter().map(|p| index[p] as usize).collect();
        let names = generators.into_iter().map(|(n, _)| n).collect();
        let mut repr = Repr::Perm {
            degree,
            perms,
            index,
            table: None,
        };
        if order <= TABLE_CACHE_LIMIT {
            if let Repr::Perm {
                perms, index, table, ..
            } = &mut repr
            {
                let mut t = Vec::with_capacity(order * order);
                for x in 0..order {
                    for y in 0..order {
                        let composed: Vec<u32> = perms[y].iter().map(|&i| perms[x][i as usize]).collect();
                        t.push(index[&composed]);
                    }
                }
                *table = Some(t);
            }
        }
        FiniteGroup::finish(order, repr, gens, names, SourceKind::Permutation).map(Arc::new)
    }

    /// Computes BFS words, generator multiplication tables, inverses and the
    /// exponent. Fails if the generators do not reach every element.
    fn finish(
        order: usize,
        repr: Repr,
        generators: Vec<usize>,
        gen_names: Vec<String>,
        kind: SourceKind,
    ) -> Result<FiniteGroup> {
        let mut group = FiniteGroup {
            order,
            repr,
            inv: Vec::new(),
            generators,
            gen_names,
            parent: Vec::new(),
            via: Vec::new(),
            rgen: Vec::new(),
            lgen: Vec::new(),
            exponent: 1,
            kind,
        };
        let ng = group.generators.len();
        let mut rgen = vec![0u32; order * ng];
        let mut lgen = vec![0u32; order * ng];
        for g in 0..order {
            for (s, &x) in group.generators.iter().enumerate() {
                rgen[g * ng + s] = group.mult(g, x) as u32;
                lgen[g * ng + s] = group.mult(x, g) as u32;
            }
        }
        group.rgen = rgen;
        group.lgen = lgen;

        let unseen = u32::MAX;
        let mut parent = vec![unseen; order];
        let mut via = vec![0u32; order];
        parent[0] = 0;
        let mut bfs_order = Vec::with_capacity(order);
        bfs_order.push(0usize);
        let mut i = 0;
        while i < bfs_order.len() {
            let g = bfs_order[i];
            for s in 0..ng {
                let h = group.rgen[g * ng + s] as usize;
                if parent[h] == unseen {
                    parent[h] = g as u32;
                    via[h] = s as u32;
                    bfs_order.push(h);
                }
            }
            i += 1;
        }
        if bfs_order.len() != order {
            return Err(Error::NotAGroup(format!(
                "generators reach only {} of {order} elements",
                bfs_order.len()
            )));
        }
        group.parent = parent;
        group.via = via;

        let gen_inv: Vec<usize> = group
            .generators
            .iter()
            .map(|&x| group.pow(x, group.element_order(x) - 1))
            .collect();
        let mut inv = vec![0u32; order];
        for &g in bfs_order.iter().skip(1) {
            let p = group.parent[g] as usize;
            let s = group.via[g] as usize;
            // (p s)^-1 = s^-1 p^-1
            inv[g] = group.mult(gen_inv[s], inv[p] as usize) as u32;
        }
        group.inv = inv;

        let mut exponent = 1u64;
        for g in 0..order {
            exponent = lcm_u64(exponent, group.element_order(g));
        }
        group.exponent = exponent;
        Ok(group)
    }

    /// Smallest subgroup containing `elements`.
    pub fn subgroup_closure(&self, elements: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut members = vec![0usize];
        let mut i = 0;
        while i < members.len() {
            let g = members[i];
            for &x in elements {
                let h = self.mult(g, x);
                if !seen[h] {
                    seen[h] = true;
                    members.push(h);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        members
    }
}

fn check_table_axioms(t: &[u32], n: usize) -> Result<()> {
    let at = |x: usize, y: usize| t[x * n + y] as usize;
    for g in 0..n {
        if at(0, g) != g || at(g, 0) != g {
            return Err(Error::NotAGroup(format!("index 0 is not an identity for {g}")));
        }
    }
    for g in 0..n {
        let Some(h) = (0..n).find(|&h| at(g, h) == 0) else {
            return Err(Error::NotAGroup(format!("{g} has no inverse")));
        };
        if at(h, g) != 0 {
            return Err(Error::NotAGroup(format!("{g} has no two-sided inverse")));
        }
    }
    let check = |x: usize, y: usize, z: usize| -> Result<()> {
        if at(at(x, y), z) != at(x, at(y, z)) {
            return Err(Error::NotAGroup(format!("associativity fails on ({x}, {y}, {z})")));
        }
        Ok(())
    };
    if n <= FULL_ASSOC_LIMIT {
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    check(x, y, z)?;
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(ASSOC_SEED);
        for _ in 0..ASSOC_SAMPLES {
            check(rng.random_range(0..n), rng.random_range(0..n), rng.random_range(0..n))?;
        }
    }
    Ok(())
}

fn greedy_generators(t: &[u32], n: usize) -> (Vec<usize>, Vec<String>) {
    let mut gens: Vec<usize> = Vec::new();
    let mut inside = vec![false; n];
    inside[0] = true;
    for g in 1..n {
        if inside[g] {
            continue;
        }
        gens.push(g);
        inside.iter_mut().for_each(|b| *b = false);
        inside[0] = true;
        let mut members = vec![0usize];
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            for &s in &gens {
                let y = t[x * n + s] as usize;
                if !inside[y] {
                    inside[y] = true;
                    members.push(y);
                }
            }
            i += 1;
        }
    }
    let names = (1..=gens.len()).map(|i| format!("g{i}")).collect();
    (gens, names)
}

fn cycle_notation(p: &[u32], degree: usize) -> String {
    let mut seen = vec![false; degree];
    let mut out = String::new();
    for start in 0..degree {
        if seen[start] || p[start] as usize == start {
            continue;
        }
        out.push('(');
        let mut x = start;
        let mut first = true;
        while !seen[x] {
            seen[x] = true;
            if !first {
                out.push(' ');
            }
            let _ = write!(out, "{}", x + 1);
            first = false;
            x = p[x] as usize;
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}
