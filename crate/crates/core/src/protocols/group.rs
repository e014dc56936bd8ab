//! Frame alignment for a finite group using a maximally entangled resource.

use crate::error::{Error, Result};
use crate::quantum::{Ket, Measurement};
use crate::rng::RandomSource;
use crate::scalar::Real;

/// Multiplication table `table[a * order + b] = a·b`, identity at index 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    order: usize,
    table: Vec<usize>,
    inverses: Vec<usize>,
}

impl GroupTable {
    /// `Z_d` under addition mod `d`.
    pub fn cyclic(order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidGroup("order must be positive".into()));
        }
        let table = (0..order * order)
            .map(|i| (i / order + i % order) % order)
            .collect();
        Self::from_table(order, table)
    }

    /// Validates closure, identity at 0, inverses and associativity.
    pub fn from_table(order: usize, table: Vec<usize>) -> Result<Self> {
        if order == 0 || table.len() != order * order {
            return Err(Error::InvalidGroup(format!(
                "table has {} entries for order {order}",
                table.len()
            )));
        }
        if let Some(bad) = table.iter().find(|&&x| x >= order) {
            return Err(Error::InvalidGroup(format!(
                "element {bad} outside the group"
            )));
        }
        let mul = |a: usize, b: usize| table[a * order + b];
        for a in 0..order {
            if mul(0, a) != a || mul(a, 0) != a {
                return Err(Error::InvalidGroup("element 0 is not the identity".into()));
            }
        }
        let mut inverses = Vec::with_capacity(order);
        for a in 0..order {
            let inv = (0..order)
                .find(|&b| mul(a, b) == 0 && mul(b, a) == 0)
                .ok_or_else(|| Error::InvalidGroup(format!("element {a} has no inverse")))?;
            inverses.push(inv);
        }
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                        return Err(Error::InvalidGroup(format!(
                            "({a}·{b})·{c} ≠ {a}·({b}·{c})"
                        )));
                    }
                }
            }
        }
        Ok(Self {
            order,
            table,
            inverses,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn multiply(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }
}

/// Shared state `|G|^{-1/2} Σ_h |h⟩|h⟩`.
pub fn group_resource<T: Real>(group: &GroupTable) -> Ket<T> {
    let d = group.order();
    let s = T::one() / T::from_usize_lossy(d).sqrt();
    let mut amps = vec![T::zero(); d * d];
    for h in 0..d {
        amps[h * d + h] = s;
    }
    Ket::from_real(&amps)
}

/// Alice and Bob each measure their half in their own regular basis; Bob's
/// frame is offset by `g`, so his label `h'` sits on Alice's `|g^{-1}h'⟩`.
#[derive(Clone, Debug)]
pub struct GroupAligner {
    group: GroupTable,
    resource: Ket<f64>,
    alice: Measurement<f64>,
}

impl GroupAligner {
    pub fn new(group: GroupTable) -> Result<Self> {
        let d = group.order();
        let alice = Measurement::orthonormal((0..d).map(|h| Ket::basis(d, h)).collect())?;
        Ok(Self {
            resource: group_resource(&group),
            group,
            alice,
        })
    }

    pub fn group(&self) -> &GroupTable {
        &self.group
    }

    /// Bob's measurement when his frame is offset by `g`.
    pub fn bob_measurement(&self, g: usize) -> Result<Measurement<f64>> {
        let d = self.group.order();
        if g >= d {
            return Err(Error::InvalidParameter(format!(
                "element {g} outside group of order {d}"
            )));
        }
        let g_inv = self.group.inverse(g);
        Measurement::orthonormal(
            (0..d)
                .map(|hp| Ket::basis(d, self.group.multiply(g_inv, hp)))
                .collect(),
        )
    }

    /// One run with Bob's measurement for a fixed offset; returns `h'·h^{-1}`.
    pub fn trial(&self, bob: &Measurement<f64>, rng: &mut RandomSource) -> Result<usize> {
        let alice = self.alice.sample(&self.resource, rng)?;
        let h = alice.outcome;
        let hp = bob.sample(&alice.posterior, rng)?.outcome;
        Ok(self.group.multiply(hp, self.group.inverse(h)))
    }
}

/// Single alignment run for offset `g`; returns Bob's estimate `h'·h^{-1}`.
pub fn finite_group_align(group: &GroupTable, g: usize, rng: &mut RandomSource) -> Result<usize> {
    let aligner = GroupAligner::new(group.clone())?;
    let bob = aligner.bob_measurement(g)?;
    aligner.trial(&bob, rng)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_axioms() {
        let z5 = GroupTable::cyclic(5).unwrap();
        assert_eq!(z5.multiply(3, 4), 2);
        assert_eq!(z5.inverse(2), 3);
        assert!(GroupTable::cyclic(0).is_err());
    }

    #[test]
    fn invalid_tables_rejected() {
        assert!(GroupTable::from_table(2, vec![0, 1, 1, 1]).is_err());
        assert!(GroupTable::from_table(2, vec![0, 1, 1]).is_err());
        assert!(GroupTable::from_table(2, vec![0, 1, 1, 2]).is_err());
    }

    #[test]
    fn non_abelian_group_accepted() {
        // S_3 as permutations of (0,1,2), composed left after right
        let perms: [[usize; 3]; 6] = [
            [0, 1, 2],
            [1, 0, 2],
            [0, 2, 1],
            [2, 1, 0],
            [1, 2, 0],
            [2, 0, 1],
        ];
        let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let mut table = Vec::new();
        for a in perms {
            for b in perms {
                table.push(idx([a[b[0]], a[b[1]], a[b[2]]]));
            }
        }
        let s3 = GroupTable::from_table(6, table).unwrap();
        let mut rng = RandomSource::new(3);
        for g in 0..6 {
            assert_eq!(finite_group_align(&s3, g, &mut rng).unwrap(), g);
        }
    }

    #[test]
    fn cyclic_alignment_exact() {
        let z5 = GroupTable::cyclic(5).unwrap();
        let mut rng = RandomSource::new(1);
        for g in 0..5 {
            for _ in 0..10 {
                assert_eq!(finite_group_align(&z5, g, &mut rng).unwrap(), g);
            }
        }
        assert!(finite_group_align(&z5, 5, &mut rng).is_err());
    }
}
