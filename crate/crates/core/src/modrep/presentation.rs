use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exactla::mul_mod;

use super::{cokernel, Module, ProjMap, Projective};

/// `coker(P_source -> P_target)` where generator `s` of the source maps to
/// `sum_t matrix[s][t] * g_t`. Entries are algebra elements and are cut
/// down to the corner `e_{j_s} A e_{j_t}` before use.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub proj_target: Vec<usize>,
    pub proj_source: Vec<usize>,
    pub matrix: Vec<Vec<Vec<u64>>>,
}

impl Presentation {
    pub fn projective_map(&self, a: &Arc<Algebra>) -> Result<ProjMap> {
        let n = a.num_idempotents();
        for (what, m) in [("proj_target", &self.proj_target), ("proj_source", &self.proj_source)] {
            if m.len() != n {
                return Err(Error::Validation {
                    invariant: "multiplicity arity".into(),
                    detail: format!("{what} has {} entries, algebra has {n} idempotents", m.len()),
                });
            }
        }
        let target = Projective::from_multiplicities(a, &self.proj_target);
        let source = Projective::from_multiplicities(a, &self.proj_source);
        if self.matrix.len() != source.rank() {
            return Err(Error::Validation {
                invariant: "presentation shape".into(),
                detail: format!("matrix has {} rows, source has rank {}", self.matrix.len(), source.rank()),
            });
        }
        let p = a.characteristic();
        let mut coeffs = Vec::with_capacity(source.rank());
        for (s, row) in self.matrix.iter().enumerate() {
            if row.len() != target.rank() {
                return Err(Error::Validation {
                    invariant: "presentation shape".into(),
                    detail: format!("row {s} has {} entries, target has rank {}", row.len(), target.rank()),
                });
            }
            let mut out = Vec::with_capacity(row.len());
            for (t, c) in row.iter().enumerate() {
                if c.len() != a.dim() || c.iter().any(|&x| x >= p as u64) {
                    return Err(Error::Validation {
                        invariant: "presentation entry".into(),
                        detail: format!("entry ({s},{t}) is not an algebra element over F_{p}"),
                    });
                }
                let c: Vec<u32> = c.iter().map(|&x| x as u32).collect();
                let l = a.mul(a.idempotent(source.summands()[s]), &c);
                out.push(a.mul(&l, a.idempotent(target.summands()[t])));
            }
            coeffs.push(out);
        }
        Ok(ProjMap { source, target, coeffs })
    }

    pub fn module(&self, a: &Arc<Algebra>) -> Result<Module> {
        Ok(cokernel(&self.projective_map(a)?.to_morphism()).0)
    }
}

/// A random presentation with the given multiplicities; each entry is a
/// uniform element of the relevant corner `e_i A e_j`.
pub fn random_presentation(a: &Arc<Algebra>, t_mults: &[usize], s_mults: &[usize], rng: &mut impl Rng) -> Presentation {
    random_presentation_in(a, t_mults, s_mults, false, rng)
}

/// As [`random_presentation`]; with `radical` set the entries lie in
/// `e_i J e_j`, so the presentation is minimal and never splits off a
/// projective summand of the target.
pub fn random_presentation_in(
    a: &Arc<Algebra>,
    t_mults: &[usize],
    s_mults: &[usize],
    radical: bool,
    rng: &mut impl Rng,
) -> Presentation {
    let p = a.characteristic();
    let expand = |m: &[usize]| -> Vec<usize> { m.iter().enumerate().flat_map(|(j, &k)| std::iter::repeat_n(j, k)).collect() };
    let src = expand(s_mults);
    let tgt = expand(t_mults);
    let matrix = src
        .iter()
        .map(|&i| {
            tgt.iter()
                .map(|&j| {
                    let basis = if radical { a.radical_corner_basis(i, j) } else { a.corner_basis(i, j) };
                    let mut v = vec![0u32; a.dim()];
                    for c in 0..basis.cols() {
                        let x: u32 = rng.gen_range(0..p);
                        for (r, out) in v.iter_mut().enumerate() {
                            *out = (*out + mul_mod(x, basis.get(r, c), p)) % p;
                        }
                    }
                    v.into_iter().map(u64::from).collect()
                })
                .collect()
        })
        .collect();
    Presentation { proj_target: t_mults.to_vec(), proj_source: s_mults.to_vec(), matrix }
}

/// Cokernel of a random map `+P(i)^{s_i} -> +P(i)^{t_i}`, deterministic in `seed`.
pub fn random_module(a: &Arc<Algebra>, t_mults: &[usize], s_mults: &[usize], seed: u64) -> Module {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_presentation(a, t_mults, s_mults, &mut rng).module(a).expect("well-formed presentation")
}
