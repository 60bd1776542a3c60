//! Named audit suites, as run by `fock check`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::characters::{self, BettiVector};
use crate::correspondence::{self as corr, bosonize, fermionize, reconstruct_shift_ops};
use crate::ealgebra;
use crate::error::{Error, Result};
use crate::modules::{audit_c_module, audit_e_module, audit_h_module, BosonSpace, BosonTensor, FermionSpace};
use crate::report::Report;
use crate::states::WedgeMonomial;
use crate::{boson, fermion};

pub const SUITES: [&str; 7] = ["ealgebra", "clifford", "fermion", "boson", "correspondence", "characters", "all"];

/// Size knobs for the suites. `max_index` bounds operator and wedge indices
/// where a suite has them; `bound` is the general size parameter.
#[derive(Clone, Copy, Debug)]
pub struct SuiteOptions {
    pub max_index: u32,
    pub bound: u32,
    pub seed: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { max_index: 6, bound: 6, seed: 0 }
    }
}

pub fn run_suite(name: &str, opts: &SuiteOptions) -> Result<Vec<Report>> {
    let b = opts.bound;
    let mi = opts.max_index;
    Ok(match name {
        "ealgebra" => {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            vec![
                ealgebra::check_critical_pairs(),
                ealgebra::check_lowered_generators(b),
                ealgebra::check_confluence(&mut rng, 200, 10),
            ]
        }
        "clifford" => vec![
            ealgebra::check_clifford_relations(mi),
            fermion::check_clifford_on_states(mi, mi + 2),
            fermion::check_recursion_agreement(mi, mi + 2),
        ],
        "fermion" => vec![
            fermion::check_relations_on_states(mi + 2),
            fermion::check_admissibility(mi + 2),
            audit_e_module(&FermionSpace, b as usize),
            audit_c_module(&FermionSpace, b as usize),
        ],
        "boson" => vec![
            boson::check_heisenberg_relations(b as i64, b as u64),
            boson::check_power_commutation(3, 3, b as u64),
            boson::check_inverse_operators(b as i64, b as u64),
            boson::check_admissibility(b as u64),
            audit_h_module(&BosonSpace, b as usize),
            audit_h_module(&BosonTensor { rank: 2 }, b.min(4) as usize),
        ],
        "correspondence" => {
            let lim = bosonize(FermionSpace);
            let rec = reconstruct_shift_ops(FermionSpace);
            let fb = fermionize(BosonSpace);
            let small = (b / 2).max(1);
            vec![
                corr::check_lambda(b as usize, mi + 2),
                corr::check_reconstruction(&rec, &FermionSpace, &WedgeMonomial::all_up_to(mi + 2)),
                corr::check_rho(b as usize, b as u64),
                corr::check_rho_intertwining(small as i64, b as u64)?,
                corr::check_levelwise_bracket(&lim, small as usize, small as u64),
                corr::check_connecting_compatibility(&lim, small as usize, small as u64),
                corr::check_limit_bracket(&lim, small as i64, &WedgeMonomial::all_up_to(small + 2))?,
                corr::structure_iso_check(&lim, b as u64)?.report,
                corr::structure_iso_check(&BosonSpace, b as u64)?.report,
                corr::check_graded_dimensions(&fb, &FermionSpace, small as usize, b as u64),
                audit_e_module(&fb, small as usize),
                audit_h_module(&lim, small as usize),
            ]
        }
        "characters" => {
            let mut out = vec![characters::check_characters(b as usize, b as u64)];
            for betti in [BettiVector::projective_plane(), BettiVector([1, 2, 2, 2, 1]), BettiVector([1, 0, 2, 0, 1])] {
                out.push(characters::blowup_ratio_check(betti, b));
            }
            out
        }
        "all" => {
            let mut out = Vec::new();
            for s in &SUITES[..SUITES.len() - 1] {
                out.extend(run_suite(s, opts)?);
            }
            out
        }
        other => return Err(Error::Domain(format!("unknown suite '{other}' (expected one of {})", SUITES.join(", ")))),
    })
}
