//! Randomized verification of the defining identities of the action:
//! locality at the computed bound, the two D-identities, and conformal
//! associativity. Sampling is seeded and fully reproducible; exact
//! arithmetic makes every check a binary pass or fail.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::action::Context;
use crate::coeff::{binomial, Coefficient};
use crate::display::{render_algebra_monomial, render_module_monomial};
use crate::element::Element;
use crate::gsb::Presentation;
use crate::monomial::{AlgebraMonomial, ModuleMonomial};
use crate::report::{AxiomReport, IdentityStats};

/// Size bounds of the sampled words and levels.
#[derive(Clone, Copy, Debug)]
pub struct SampleLimits {
    pub max_acting_len: u32,
    pub max_level: u32,
    pub max_word_len: u32,
    pub max_d_degree: u32,
}

impl Default for SampleLimits {
    fn default() -> Self {
        SampleLimits {
            max_acting_len: 3,
            max_level: 6,
            max_word_len: 4,
            max_d_degree: 4,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Corruption {
    DShiftSign,
}

fn random_module_monomial(ctx: &Context, rng: &mut ChaCha8Rng, limits: &SampleLimits) -> ModuleMonomial {
    let table = ctx.symbols();
    let y = crate::symbols::ModGen(rng.gen_range(0..table.module_len() as u32));
    let d = rng.gen_range(0..=limits.max_d_degree);
    let mut word = ModuleMonomial::d_atom(d, y);
    let letters = rng.gen_range(0..limits.max_word_len);
    for _ in 0..letters {
        let b = crate::symbols::AlgGen(rng.gen_range(0..table.algebra_len() as u32));
        let bound = ctx.head_locality(b, &word);
        if bound == 0 {
            break;
        }
        word = word.prepend(b, rng.gen_range(0..bound));
    }
    word
}

fn random_algebra_monomial(ctx: &Context, rng: &mut ChaCha8Rng, limits: &SampleLimits) -> AlgebraMonomial {
    let table = ctx.symbols();
    let tail = crate::symbols::AlgGen(rng.gen_range(0..table.algebra_len() as u32));
    let d = rng.gen_range(0..=limits.max_d_degree);
    let mut word = AlgebraMonomial::d_atom(d, tail);
    let letters = rng.gen_range(0..limits.max_acting_len);
    for _ in 0..letters {
        let b = crate::symbols::AlgGen(rng.gen_range(0..table.algebra_len() as u32));
        let bound = ctx.head_locality(b, &word);
        if bound == 0 {
            break;
        }
        word = word.prepend(b, rng.gen_range(0..bound));
    }
    word
}

pub(crate) fn run_axiom_suite(
    p: &Presentation,
    samples: u32,
    seed: u64,
    limits: &SampleLimits,
    corruption: Option<Corruption>,
) -> AxiomReport {
    let ctx = p.context();
    let table = ctx.symbols();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let names = ["locality", "d-leibniz", "d-shift", "conformal-associativity"];
    let mut passed = [0u32; 4];
    let mut counterexample: Option<String> = None;

    for _ in 0..samples {
        let a = random_algebra_monomial(ctx, &mut rng, limits);
        let c = random_algebra_monomial(ctx, &mut rng, limits);
        let u = random_module_monomial(ctx, &mut rng, limits);
        let n = rng.gen_range(0..=limits.max_level);
        let m = rng.gen_range(0..=limits.max_level);
        let a_elem = Element::monomial(a.clone());
        let u_elem = Element::monomial(u.clone());
        let describe = |identity: &str| {
            format!(
                "{identity} fails on a = {}, c = {}, u = {}, n = {n}, m = {m}",
                render_algebra_monomial(&a, table),
                render_algebra_monomial(&c, table),
                render_module_monomial(&u, table),
            )
        };

        // vanishing at and beyond the computed bound
        let bound = ctx.locality(&a, &u);
        let ok = (bound..bound + 5).all(|k| ctx.act_monomial(&a, k, &u_elem).is_zero());
        if ok {
            passed[0] += 1;
        } else if counterexample.is_none() {
            counterexample = Some(describe(names[0]));
        }

        // D(a_(m) u) = (Da)_(m) u + a_(m) Du
        let lhs = ctx.apply_d(&ctx.act_monomial(&a, m, &u_elem), 1);
        let mut rhs = ctx.act_element(&ctx.apply_d(&a_elem, 1), m, &u_elem);
        rhs.add_assign(&ctx.act_monomial(&a, m, &ctx.apply_d(&u_elem, 1)));
        if lhs == rhs {
            passed[1] += 1;
        } else if counterexample.is_none() {
            counterexample = Some(describe(names[1]));
        }

        // (Da)_(m) u = -m a_(m-1) u, zero at m = 0
        let lhs = ctx.act_element(&ctx.apply_d(&a_elem, 1), m, &u_elem);
        let mut rhs = if m == 0 {
            Element::zero()
        } else {
            ctx.act_monomial(&a, m - 1, &u_elem)
                .scaled(&Coefficient::from_int(-(m as i64)))
        };
        if corruption == Some(Corruption::DShiftSign) {
            rhs = rhs.scaled(&Coefficient::from_int(-1));
        }
        if lhs == rhs {
            passed[2] += 1;
        } else if counterexample.is_none() {
            counterexample = Some(describe(names[2]));
        }

        // (a_(n) c)_(m) u = sum_k (-1)^k C(n,k) a_(n-k)(c_(m+k) u)
        let product = ctx.act_monomial(&a, n, &Element::monomial(c.clone()));
        let lhs = ctx.act_element(&product, m, &u_elem);
        let mut rhs = Element::zero();
        for k in 0..=n {
            let inner = ctx.act_monomial(&c, m + k, &u_elem);
            if inner.is_zero() {
                continue;
            }
            let mut coef = Coefficient::from_bigint(binomial(n, k));
            if k % 2 == 1 {
                coef = coef.neg_ref();
            }
            rhs.add_scaled(&ctx.act_monomial(&a, n - k, &inner), &coef);
        }
        if lhs == rhs {
            passed[3] += 1;
        } else if counterexample.is_none() {
            counterexample = Some(describe(names[3]));
        }
    }

    let identities = names
        .iter()
        .zip(passed)
        .map(|(name, passed)| IdentityStats {
            name: name.to_string(),
            passed,
            total: samples,
        })
        .collect::<Vec<_>>();
    let pass = identities.iter().all(|s| s.passed == s.total);
    AxiomReport {
        preset: p.name().to_string(),
        samples,
        seed,
        identities,
        counterexample,
        pass,
    }
}

/// Run the identity suite on seeded-random inputs over the presentation's
/// generators.
pub fn verify_axioms(p: &Presentation, samples: u32, seed: u64, limits: &SampleLimits) -> AxiomReport {
    run_axiom_suite(p, samples, seed, limits, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::{virasoro_module, Alpha};

    #[test]
    fn identity_suite_passes_on_the_virasoro_module() {
        let p = virasoro_module(0, &Alpha::Symbolic).unwrap();
        let report = verify_axioms(&p, 60, 42, &SampleLimits::default());
        assert!(report.pass, "{:?}", report.counterexample);
        assert!(report.identities.iter().all(|s| s.passed == 60));
    }

    #[test]
    fn determinism_under_a_fixed_seed() {
        let p = virasoro_module(1, &Alpha::rational_int(2)).unwrap();
        let a = verify_axioms(&p, 25, 7, &SampleLimits::default());
        let b = verify_axioms(&p, 25, 7, &SampleLimits::default());
        assert_eq!(a.to_text(), b.to_text());
    }

    #[test]
    fn corrupted_control_dumps_a_counterexample() {
        let p = virasoro_module(0, &Alpha::rational_int(0)).unwrap();
        let report = run_axiom_suite(
            &p,
            40,
            3,
            &SampleLimits::default(),
            Some(Corruption::DShiftSign),
        );
        assert!(!report.pass);
        assert!(report.counterexample.unwrap().contains("d-shift"));
    }
}
