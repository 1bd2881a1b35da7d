//! Dirichlet characters of odd modulus with exact root-of-unity values.
//!
//! For odd `d = Π p_i^{k_i}` the unit group is a product of cyclic groups.
//! Each component gets the smallest primitive root mod `p_i` (lifted to
//! `p_i^{k_i}`), and a character is fixed by the exponents `a_i` sending
//! generator `g_i` to `ζ_e^{a_i · e / φ(p_i^{k_i})}`, where `e` is the exponent
//! of the unit group. Characters are numbered in mixed radix over the `a_i`,
//! last component fastest.

use std::sync::Arc;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{CycloElement, CycloField};

fn mod_pow(base: u64, mut exp: u64, modulus: u64) -> u64 {
    let m = modulus as u128;
    let mut acc = 1u128 % m;
    let mut b = base as u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut k = 0;
            while n.is_multiple_of(p) {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn smallest_primitive_root(p: u64) -> u64 {
    let order = p - 1;
    let prime_factors: Vec<u64> = factorize(order).into_iter().map(|(q, _)| q).collect();
    (2..p)
        .find(|&g| prime_factors.iter().all(|&q| mod_pow(g, order / q, p) != 1))
        .unwrap_or(1)
}

/// Cyclic decomposition of `(Z/dZ)^*` for odd `d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnitGroupStructure {
    modulus: u64,
    factors: Vec<(u64, u32)>,
    generators: Vec<u64>,
    component_orders: Vec<u64>,
}

impl UnitGroupStructure {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn component_orders(&self) -> &[u64] {
        &self.component_orders
    }

    fn component_moduli(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, k)| p.pow(k))
    }

    /// Exponent of the group: the lcm of the component orders.
    pub fn exponent(&self) -> u64 {
        self.component_orders.iter().fold(1, |a, &b| a.lcm(&b))
    }

    /// `φ(d)`.
    pub fn order(&self) -> u64 {
        self.component_orders.iter().product()
    }
}

fn check_modulus(d: u64) -> Result<()> {
    if d == 0 || d.is_multiple_of(2) {
        Err(Error::InvalidModulus(d))
    } else {
        Ok(())
    }
}

pub fn unit_group_structure(d: u64) -> Result<UnitGroupStructure> {
    check_modulus(d)?;
    let factors = factorize(d);
    let mut generators = Vec::new();
    let mut component_orders = Vec::new();
    for &(p, k) in &factors {
        let mut g = smallest_primitive_root(p);
        if k >= 2 && mod_pow(g, p - 1, p * p) == 1 {
            g += p;
        }
        generators.push(g);
        component_orders.push(p.pow(k - 1) * (p - 1));
    }
    Ok(UnitGroupStructure {
        modulus: d,
        factors,
        generators,
        component_orders,
    })
}

/// A Dirichlet character mod odd `d`, with its value table on `0..d` precomputed.
#[derive(Clone, Debug)]
pub struct DirichletCharacter {
    structure: Arc<UnitGroupStructure>,
    exponents: Vec<u64>,
    field: Arc<CycloField>,
    flat_index: usize,
    values: Vec<CycloElement>,
}

impl PartialEq for DirichletCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.structure.modulus == other.structure.modulus && self.exponents == other.exponents
    }
}

impl Eq for DirichletCharacter {}

/// Discrete-log tables per component: `logs[i][r] = Some(t)` with `g_i^t ≡ r`.
fn discrete_logs(structure: &UnitGroupStructure) -> Vec<Vec<Option<u64>>> {
    structure
        .component_moduli()
        .zip(&structure.generators)
        .zip(&structure.component_orders)
        .map(|((q, &g), &order)| {
            let mut table = vec![None; q as usize];
            let mut x = 1u64;
            for t in 0..order {
                table[x as usize] = Some(t);
                x = x * g % q;
            }
            table
        })
        .collect()
}

impl DirichletCharacter {
    fn build(
        structure: Arc<UnitGroupStructure>,
        logs: &[Vec<Option<u64>>],
        exponents: Vec<u64>,
        flat_index: usize,
    ) -> Result<Self> {
        let e = structure.exponent();
        let field = CycloField::get(e)?;
        let moduli: Vec<u64> = structure.component_moduli().collect();
        let values = (0..structure.modulus)
            .map(|l| {
                let mut total = 0u64;
                for (i, q) in moduli.iter().enumerate() {
                    match logs[i][(l % q) as usize] {
                        None => return CycloElement::zero(&field),
                        Some(t) => {
                            let scale = e / structure.component_orders[i];
                            total = (total + exponents[i] * t % e * scale) % e;
                        }
                    }
                }
                CycloElement::zeta_power(&field, total as i64)
            })
            .collect();
        Ok(DirichletCharacter {
            structure,
            exponents,
            field,
            flat_index,
            values,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.structure.modulus
    }

    pub fn structure(&self) -> &UnitGroupStructure {
        &self.structure
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn index(&self) -> usize {
        self.flat_index
    }

    /// `Q(ζ_e)` with `e` the unit-group exponent; shared by every character mod `d`.
    pub fn value_field(&self) -> &Arc<CycloField> {
        &self.field
    }

    /// `χ(l)`, extended periodically; zero when `gcd(l, d) > 1`.
    pub fn eval(&self, l: u64) -> &CycloElement {
        &self.values[(l % self.structure.modulus) as usize]
    }

    /// Values on `0..d`.
    pub fn value_table(&self) -> &[CycloElement] {
        &self.values
    }

    pub fn order(&self) -> u64 {
        self.exponents
            .iter()
            .zip(&self.structure.component_orders)
            .fold(1, |acc, (&a, &n)| acc.lcm(&(n / a.gcd(&n))))
    }

    pub fn is_principal(&self) -> bool {
        self.exponents.iter().all(|&a| a == 0)
    }
}

/// All `φ(d)` characters mod `d`, ordered by flat index; index 0 is principal.
pub fn enumerate_characters(d: u64) -> Result<Vec<DirichletCharacter>> {
    let structure = Arc::new(unit_group_structure(d)?);
    let logs = discrete_logs(&structure);
    let count = structure.order() as usize;
    (0..count)
        .map(|idx| {
            let exps = exponents_for_index(&structure, idx);
            DirichletCharacter::build(structure.clone(), &logs, exps, idx)
        })
        .collect()
}

/// The character with the given flat index.
pub fn character(d: u64, index: usize) -> Result<DirichletCharacter> {
    let structure = Arc::new(unit_group_structure(d)?);
    let count = structure.order() as usize;
    if index >= count {
        return Err(Error::CharacterIndexOutOfRange {
            modulus: d,
            index,
            count,
        });
    }
    let logs = discrete_logs(&structure);
    let exps = exponents_for_index(&structure, index);
    DirichletCharacter::build(structure, &logs, exps, index)
}

fn exponents_for_index(structure: &UnitGroupStructure, mut idx: usize) -> Vec<u64> {
    let mut exps = vec![0; structure.component_orders.len()];
    for (slot, &radix) in exps.iter_mut().zip(&structure.component_orders).rev() {
        *slot = (idx as u64) % radix;
        idx /= radix as usize;
    }
    exps
}
