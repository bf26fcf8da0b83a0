//! Orbit–stabilizer description of kⁿ *_α G.
//!
//! For a single orbit `O` with stabilizer `H` of a point, the summand
//! `k^O * G` is isomorphic to the matrix ring `M_|O|(k[H])`, so the whole
//! ring is `⊕_O M_|O|(k[H_O])`. It is simple iff there is one block and
//! `k[H]` is a field, i.e. `H = 1`. This does not depend on the
//! characteristic, and the ring is Von Neumann regular iff every group
//! algebra `k[H_O]` is, i.e. iff `char k` divides no `|H_O|`.

use crate::group::{orbits, Action};
use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitBlock {
    pub points: Vec<usize>,
    /// Stabilizer of the least point of the orbit, ascending element indices.
    pub stabilizer: Vec<usize>,
    pub stabilizer_cyclic: bool,
    pub block: String,
}

impl OrbitBlock {
    pub fn size(&self) -> usize {
        self.points.len()
    }

    pub fn stabilizer_order(&self) -> usize {
        self.stabilizer.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureReport {
    pub blocks: Vec<OrbitBlock>,
    pub simple: bool,
    pub reasoning: Vec<String>,
}

impl StructureReport {
    /// `M_a(k) ⊕ M_b(k[Z_2]) ⊕ …`
    pub fn decomposition(&self) -> String {
        self.blocks.iter().map(|b| b.block.as_str()).collect::<Vec<_>>().join(" ⊕ ")
    }

    /// Regular over `field` iff the characteristic divides no stabilizer order.
    pub fn regular_over(&self, field: Field) -> bool {
        let p = field.characteristic() as usize;
        p == 0 || self.blocks.iter().all(|b| b.stabilizer_order() % p != 0)
    }
}

fn block_descriptor(m: usize, h: usize, cyclic: bool) -> String {
    let coeff = match (h, cyclic) {
        (1, _) => "k".to_string(),
        (_, true) => format!("k[Z_{h}]"),
        (_, false) => format!("k[H_{h}]"),
    };
    if m == 1 {
        coeff
    } else {
        format!("M_{m}({coeff})")
    }
}

pub fn structure_oracle(act: &Action) -> StructureReport {
    let grp = act.group();
    let mut blocks = Vec::new();
    let mut reasoning = Vec::new();
    let orbs = orbits(act);
    for o in &orbs {
        let stab = act.stabilizer(o[0]);
        let cyclic = stab.iter().any(|&h| grp.element_order(h) == stab.len());
        assert_eq!(o.len() * stab.len(), grp.order(), "orbit–stabilizer count");
        blocks.push(OrbitBlock {
            block: block_descriptor(o.len(), stab.len(), cyclic),
            points: o.clone(),
            stabilizer: stab,
            stabilizer_cyclic: cyclic,
        });
    }
    assert_eq!(blocks.iter().map(OrbitBlock::size).sum::<usize>(), act.n(), "orbits partition the coordinates");
    let simple = blocks.len() == 1 && blocks[0].stabilizer_order() == 1;
    reasoning.push(format!(
        "[orbit-decomposition] {} orbit(s); ring ≅ {}",
        blocks.len(),
        blocks.iter().map(|b| b.block.as_str()).collect::<Vec<_>>().join(" ⊕ ")
    ));
    if blocks.len() > 1 {
        reasoning.push("[orbit-decomposition] more than one block: each block is a proper two-sided ideal".into());
    } else if !simple {
        reasoning.push(format!(
            "[stabilizer] stabilizer of order {} makes k[H] a non-field with an augmentation ideal",
            blocks[0].stabilizer_order()
        ));
    } else {
        reasoning.push("[orbit-decomposition] one orbit with trivial stabilizer: a full matrix ring over k, simple".into());
    }
    StructureReport {
        blocks,
        simple,
        reasoning,
    }
}
