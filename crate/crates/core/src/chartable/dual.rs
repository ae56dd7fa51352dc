//! The dual action `χ ↦ χ∘φ` on irreducible characters.

use std::sync::Arc;

use super::table::{CharacterTable, Multiplicities};
use crate::error::Result;
use crate::group::{class_map_with, ClassMap, Endomorphism};
use crate::twisted::reidemeister_number;
use crate::zeta::{
    euler_product, functional_equation_check, orbit_decomposition, FunctionalEquationReport, OrbitDecomposition,
    RationalFunction,
};

#[derive(Debug, Clone)]
pub struct DualMap {
    pub table: Arc<CharacterTable>,
    pub phi: Endomorphism,
    pub class_map: ClassMap,
    /// `χ∘φ` for each `χ`, in the table's encoding.
    pub pullback: Vec<Vec<Multiplicities>>,
    /// Index of `χ∘φ` in the table when it is irreducible.
    pub pullback_index: Vec<Option<usize>>,
    pub irreducible_pullback: Vec<bool>,
    /// Characters with `χ∘φ = χ`.
    pub fixed_set: Vec<usize>,
}

impl DualMap {
    pub fn new(table: &Arc<CharacterTable>, phi: &Endomorphism) -> Result<Self> {
        let class_map = class_map_with(phi, table.classes().clone())?;
        let pullback: Vec<Vec<Multiplicities>> = (0..table.count())
            .map(|chi| pull(table.values(chi), &class_map.sigma, 1))
            .collect();
        let irreducible_pullback: Vec<bool> = pullback.iter().map(|f| table.is_irreducible(f)).collect();
        let pullback_index: Vec<Option<usize>> = pullback
            .iter()
            .zip(&irreducible_pullback)
            .map(|(f, &irr)| if irr { table.index_of(f) } else { None })
            .collect();
        let fixed_set = (0..table.count())
            .filter(|&chi| pullback_index[chi] == Some(chi))
            .collect();
        Ok(DualMap {
            table: Arc::clone(table),
            phi: phi.clone(),
            class_map,
            pullback,
            pullback_index,
            irreducible_pullback,
            fixed_set,
        })
    }

    /// `RT(φ^n) = #{χ : χ∘φ^n = χ}`
    pub fn rt_count(&self, n: u32) -> usize {
        (0..self.table.count())
            .filter(|&chi| {
                let values = self.table.values(chi);
                pull(values, &self.class_map.sigma, n) == values
            })
            .count()
    }

    /// The largest set of characters on which `χ ↦ χ∘φ` stays irreducible
    /// under every iterate, with the induced self-map.
    pub fn phi_irreducible_subsystem(&self) -> Subsystem {
        let k = self.table.count();
        let mut alive: Vec<bool> = self.pullback_index.iter().map(Option::is_some).collect();
        loop {
            let mut changed = false;
            for chi in 0..k {
                if alive[chi] {
                    let target = self.pullback_index[chi].expect("alive characters have a pullback");
                    if !alive[target] {
                        alive[chi] = false;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let members: Vec<usize> = (0..k).filter(|&chi| alive[chi]).collect();
        let map = members
            .iter()
            .map(|&chi| {
                let target = self.pullback_index[chi].expect("alive characters have a pullback");
                members.binary_search(&target).expect("subsystem is closed")
            })
            .collect();
        Subsystem { members, map }
    }

    pub fn tbft_check(&self, n_max: u32) -> TbftReport {
        let rows: Vec<TbftRow> = (1..=n_max)
            .map(|n| TbftRow {
                n,
                reidemeister: reidemeister_number(&self.phi, n),
                fixed_classes: self.class_map.fixed_points_of_power(n),
                rt: self.rt_count(n),
            })
            .collect();
        TbftReport { rows }
    }

    pub fn rt_zeta(&self) -> Result<RtZeta> {
        let subsystem = self.phi_irreducible_subsystem();
        let orbits = orbit_decomposition(&subsystem.map);
        let rational = euler_product(&orbits);
        let functional_equation = functional_equation_check(&rational, &orbits)?;
        Ok(RtZeta {
            subsystem,
            orbits,
            rational,
            functional_equation,
        })
    }
}

/// Values of `f∘φ^n`, given the class map `σ` of `φ`.
fn pull(values: &[Multiplicities], sigma: &[usize], n: u32) -> Vec<Multiplicities> {
    (0..sigma.len())
        .map(|c| {
            let mut x = c;
            for _ in 0..n {
                x = sigma[x];
            }
            values[x].clone()
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subsystem {
    /// Character indices in the subsystem, ascending.
    pub members: Vec<usize>,
    /// The dual map on positions in `members`.
    pub map: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TbftRow {
    pub n: u32,
    pub reidemeister: usize,
    pub fixed_classes: usize,
    pub rt: usize,
}

impl TbftRow {
    pub fn all_equal(&self) -> bool {
        self.reidemeister == self.fixed_classes && self.fixed_classes == self.rt
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TbftReport {
    pub rows: Vec<TbftRow>,
}

impl TbftReport {
    pub fn all_equal(&self) -> bool {
        self.rows.iter().all(TbftRow::all_equal)
    }
}

#[derive(Debug, Clone)]
pub struct RtZeta {
    pub subsystem: Subsystem,
    pub orbits: OrbitDecomposition,
    pub rational: RationalFunction,
    pub functional_equation: FunctionalEquationReport,
}
