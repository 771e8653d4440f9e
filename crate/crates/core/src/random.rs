//! Seeded generators of small random CDG-modules and closed morphisms.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cdg::{cocycles, CdgModule, HomElement};
use crate::constructions::cone;
use crate::error::Error;
use crate::graded::GradedSpace;
use crate::linalg::{Field, Matrix, Scalar};
use crate::registry::RingEntry;

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// Small integers for ℚ, uniform residues for `𝔽_p`.
    pub fn scalar(&mut self, f: Field) -> Scalar {
        match f {
            Field::Rational => f.from_i64(self.rng.gen_range(-2..=2)),
            Field::Prime(p) => f.from_i64(self.rng.gen_range(0..p as i64)),
        }
    }

    /// A random invertible matrix preserving the grading of `space`.
    pub fn automorphism(&mut self, f: Field, space: &GradedSpace) -> Matrix {
        let mut g = Matrix::identity(f, space.dim());
        for d in space.dims_by_degree().into_keys() {
            let idx = space.indices_in_degree(d);
            for _ in 0..16 {
                let mut block = Matrix::zeros(f, idx.len(), idx.len());
                for r in 0..idx.len() {
                    for c in 0..idx.len() {
                        block[(r, c)] = self.scalar(f);
                    }
                }
                if block.rank() == idx.len() {
                    for (r, &i) in idx.iter().enumerate() {
                        for (c, &j) in idx.iter().enumerate() {
                            g[(i, j)] = block[(r, c)].clone();
                        }
                    }
                    break;
                }
            }
        }
        g
    }

    /// A random element of `Z⁰Hom(X, Y)`.
    pub fn closed_morphism(&mut self, x: &CdgModule, y: &CdgModule) -> Result<HomElement, Error> {
        let z = cocycles(x, y, 0)?;
        let f = x.field();
        let coords: Vec<Scalar> = (0..z.dim()).map(|_| self.scalar(f)).collect();
        let map = if coords.is_empty() { Matrix::zeros(f, y.dim(), x.dim()) } else { z.element(&coords) };
        HomElement::new(x, y, 0, map)
    }

    /// A direct sum of one to three building blocks of total dimension at most `max_dim`.
    pub fn block_sum(&mut self, entry: &RingEntry, max_dim: usize) -> Result<CdgModule, Error> {
        let blocks: Vec<CdgModule> = entry.building_blocks().into_iter().filter(|b| b.dim() <= max_dim).collect();
        let count = self.rng.gen_range(1..=3);
        let mut chosen: Vec<CdgModule> = Vec::new();
        let mut used = 0;
        for _ in 0..count {
            let fitting: Vec<&CdgModule> = blocks.iter().filter(|b| used + b.dim() <= max_dim).collect();
            let Some(b) = fitting.choose(&mut self.rng) else { break };
            used += b.dim();
            chosen.push((*b).clone());
        }
        if chosen.is_empty() {
            return Ok(CdgModule::zero(entry.ring.clone()));
        }
        let refs: Vec<&CdgModule> = chosen.iter().collect();
        CdgModule::direct_sum(&refs)
    }

    /// A block sum, or the cone of a random closed morphism between two block
    /// sums, optionally transported along a random graded change of basis.
    pub fn module(&mut self, entry: &RingEntry, max_dim: usize) -> Result<CdgModule, Error> {
        let mut m = if max_dim >= 2 && self.rng.gen_bool(0.4) {
            let left = self.rng.gen_range(1..max_dim);
            let x = self.block_sum(entry, left)?;
            let y = self.block_sum(entry, max_dim - x.dim())?;
            let f = self.closed_morphism(&x, &y)?;
            cone(&f)?.cone
        } else {
            self.block_sum(entry, max_dim)?
        };
        if m.dim() > 0 && self.rng.gen_bool(0.5) {
            let g = self.automorphism(m.field(), m.space());
            m = m.conjugate(&g)?;
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cdg::validate_module;
    use crate::registry::Registry;

    #[test]
    fn generated_modules_are_valid_and_reproducible() {
        for f in [Field::Rational, Field::Prime(2)] {
            let reg = Registry::new(f).unwrap();
            for e in &reg.entries {
                let mut a = Sampler::new(7);
                let mut b = Sampler::new(7);
                for _ in 0..20 {
                    let m = a.module(e, 6).unwrap();
                    assert!(m.dim() <= 6);
                    assert!(validate_module(&e.ring, m.module(), m.d()).is_valid());
                    assert_eq!(m, b.module(e, 6).unwrap());
                }
            }
        }
    }
}
