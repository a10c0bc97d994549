//! S-words, the three composition types, reduction modulo monic relation
//! sets, basis verification, and normal-form enumeration for module
//! presentations with a uniform locality bound.

use std::collections::BTreeSet;

use crate::action::Context;
use crate::coeff::Coefficient;
use crate::display::{
    render_algebra_monomial, render_module_element, render_module_monomial,
};
use crate::element::Element;
use crate::error::Error;
use crate::monomial::{AlgebraMonomial, ModuleMonomial, Word};
use crate::report::{
    ClosureCertificate, CompositionKind, CompositionOutcome, FreeModReport, GsbReport, Verdict,
};
use crate::symbols::AlgGen;

/// An algebra-side defining relation. The flag records the user-supplied
/// assertion that the relation set is a D-free basis of the acting algebra;
/// the engine re-checks D-freeness strictly wherever it relies on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraRelation {
    pub element: Element<AlgebraMonomial>,
    pub d_free_gsb_asserted: bool,
}

/// A presented module: generators, locality data, coefficient parameters,
/// the algebra relation set S and the module relation set Q. Every relation
/// is monic with leading coefficient exactly the rational 1.
#[derive(Clone, Debug)]
pub struct Presentation {
    name: String,
    context: Context,
    parameters: Vec<String>,
    algebra_relations: Vec<AlgebraRelation>,
    module_relations: Vec<Element<ModuleMonomial>>,
}

impl Presentation {
    pub fn new(
        name: impl Into<String>,
        context: Context,
        parameters: Vec<String>,
        algebra_relations: Vec<AlgebraRelation>,
        module_relations: Vec<Element<ModuleMonomial>>,
    ) -> Result<Self, Error> {
        let mut seen = BTreeSet::new();
        for p in &parameters {
            if context.symbols().resolve(p).is_some() {
                return Err(Error::InvalidPresentation(format!(
                    "parameter `{p}` collides with a generator name"
                )));
            }
            if !seen.insert(p.clone()) {
                return Err(Error::InvalidPresentation(format!(
                    "parameter `{p}` declared twice"
                )));
            }
        }
        for rel in &algebra_relations {
            let table = context.symbols();
            if !rel.element.is_monic() {
                return Err(Error::NonMonicRelation(crate::display::render_algebra_element(
                    &rel.element,
                    table,
                )));
            }
            if rel.d_free_gsb_asserted {
                let (lead, _) = rel.element.leading().expect("monic relation is nonzero");
                if !lead.is_d_free() {
                    return Err(Error::NotDFree(render_algebra_monomial(lead, table)));
                }
            }
            for (a, c) in rel.element.iter() {
                context.validate_word(a)?;
                check_parameters(c, &parameters)?;
            }
        }
        for rel in &module_relations {
            if !rel.is_monic() {
                return Err(Error::NonMonicRelation(render_module_element(
                    rel,
                    context.symbols(),
                )));
            }
            for (u, c) in rel.iter() {
                context.validate_word(u)?;
                check_parameters(c, &parameters)?;
            }
        }
        Ok(Presentation {
            name: name.into(),
            context,
            parameters,
            algebra_relations,
            module_relations,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn context(&self) -> &Context {
        &self.context
    }

    pub fn parameters(&self) -> &[String] {
        &self.parameters
    }

    pub fn algebra_relations(&self) -> &[AlgebraRelation] {
        &self.algebra_relations
    }

    pub fn module_relations(&self) -> &[Element<ModuleMonomial>] {
        &self.module_relations
    }
}

fn check_parameters(c: &Coefficient, declared: &[String]) -> Result<(), Error> {
    for p in c.parameters() {
        if !declared.iter().any(|d| d == p) {
            return Err(Error::UnknownSymbol(p.to_string()));
        }
    }
    Ok(())
}

/// A normal S-word b1_(n1)(...(bk_(nk) D^i s)...): prefix letters with
/// exponents below the uniform bound, a D-shift, and the relation index.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct NormalSWordPattern {
    pub prefix: Vec<(AlgGen, u32)>,
    pub d_shift: u32,
    pub relation: usize,
}

/// Leading word of the normal S-word: the prefix concatenated with the
/// relation's leading word raised by the D-shift.
pub fn pattern_leading(
    relations: &[Element<ModuleMonomial>],
    pat: &NormalSWordPattern,
) -> ModuleMonomial {
    let (lead, _) = relations[pat.relation]
        .leading()
        .expect("relations are nonzero");
    lead.raised(pat.d_shift).with_prefix(&pat.prefix)
}

/// The value of the normal S-word, computed through the action: D-shift
/// first, then the prefix letters folded right to left.
pub fn normal_s_word_value(
    ctx: &Context,
    relations: &[Element<ModuleMonomial>],
    pat: &NormalSWordPattern,
) -> Element<ModuleMonomial> {
    let mut value = ctx.apply_d(&relations[pat.relation], pat.d_shift);
    for &(b, n) in pat.prefix.iter().rev() {
        value = ctx.act_generator(b, n, &value);
    }
    debug_assert_eq!(
        value.leading().map(|(m, _)| m.clone()),
        Some(pattern_leading(relations, pat)),
        "normal S-word leading term must match the substitution formula"
    );
    value
}

/// All normal-S-word patterns whose leading word equals `target`, ordered
/// by relation index. For a fixed relation the split point is forced by the
/// word lengths, so each relation contributes at most one match.
pub fn leading_matches(
    uniform_bound: u32,
    relations: &[Element<ModuleMonomial>],
    target: &ModuleMonomial,
) -> Vec<NormalSWordPattern> {
    let mut out = Vec::new();
    for (ri, rel) in relations.iter().enumerate() {
        let Some((lead, _)) = rel.leading() else { continue };
        let k_lead = lead.chain().len();
        let k_target = target.chain().len();
        if k_lead > k_target {
            continue;
        }
        let split = k_target - k_lead;
        if target.chain()[split..] != *lead.chain()
            || target.tail() != lead.tail()
            || target.d_degree() < lead.d_degree()
        {
            continue;
        }
        if target.chain()[..split].iter().any(|&(_, n)| n >= uniform_bound) {
            continue;
        }
        out.push(NormalSWordPattern {
            prefix: target.chain()[..split].to_vec(),
            d_shift: target.d_degree() - lead.d_degree(),
            relation: ri,
        });
    }
    out
}

/// One checked composition, before reduction.
#[derive(Clone, Debug)]
pub struct CompositionInstance {
    pub kind: CompositionKind,
    pub f: usize,
    pub g: Option<usize>,
    /// The generator and level of a left multiplication.
    pub left: Option<(AlgGen, u32)>,
    /// The overlap word w of an inclusion or intersection.
    pub overlap: Option<ModuleMonomial>,
    pub value: Element<ModuleMonomial>,
}

/// Inclusion compositions of the ordered pair (f, g): the leading word of f
/// equals the leading word of a normal g-word. The identity self-match
/// (empty prefix, zero shift) is excluded since its value is identically 0.
pub fn find_inclusion_compositions(
    ctx: &Context,
    relations: &[Element<ModuleMonomial>],
    f: usize,
    g: usize,
) -> Vec<CompositionInstance> {
    let fbar = relations[f].leading().expect("nonzero").0.clone();
    let mut out = Vec::new();
    for pat in leading_matches(ctx.uniform_bound(), relations, &fbar) {
        if pat.relation != g {
            continue;
        }
        if f == g && pat.prefix.is_empty() && pat.d_shift == 0 {
            continue;
        }
        let value = relations[f].clone() - normal_s_word_value(ctx, relations, &pat);
        out.push(CompositionInstance {
            kind: CompositionKind::Inclusion,
            f,
            g: Some(g),
            left: None,
            overlap: Some(fbar.clone()),
            value,
        });
    }
    out
}

/// Intersection compositions of the ordered pair (f, g): the leading word
/// of f, with its tail D-degree raised by some i > 0, equals a_(n) applied
/// to the leading word of g for a D-free word a. Matching is pure
/// word-suffix comparison plus one D-degree equation.
pub fn find_intersection_compositions(
    ctx: &Context,
    relations: &[Element<ModuleMonomial>],
    f: usize,
    g: usize,
) -> Vec<CompositionInstance> {
    let fbar = relations[f].leading().expect("nonzero").0.clone();
    let gbar = relations[g].leading().expect("nonzero").0.clone();
    let mut out = Vec::new();
    if gbar.d_degree() <= fbar.d_degree() {
        return out;
    }
    let shift = gbar.d_degree() - fbar.d_degree();
    let (k_f, k_g) = (fbar.chain().len(), gbar.chain().len());
    if k_g >= k_f {
        return out;
    }
    let split = k_f - k_g;
    if fbar.chain()[split..] != *gbar.chain() || fbar.tail() != gbar.tail() {
        return out;
    }
    let pat = NormalSWordPattern {
        prefix: fbar.chain()[..split].to_vec(),
        d_shift: 0,
        relation: g,
    };
    let value = ctx.apply_d(&relations[f], shift) - normal_s_word_value(ctx, relations, &pat);
    out.push(CompositionInstance {
        kind: CompositionKind::Intersection,
        f,
        g: Some(g),
        left: None,
        overlap: Some(fbar.raised(shift)),
        value,
    });
    out
}

/// Left-multiplication compositions b_(n) f for every algebra generator b
/// and n in the window [N, N+K].
pub fn left_mult_compositions(
    ctx: &Context,
    relations: &[Element<ModuleMonomial>],
    f: usize,
    window: u32,
) -> Vec<CompositionInstance> {
    let n0 = ctx.uniform_bound();
    let mut out = Vec::new();
    for b in ctx.symbols().algebra_gens() {
        for n in n0..=n0 + window {
            out.push(CompositionInstance {
                kind: CompositionKind::LeftMultiplication,
                f,
                g: None,
                left: Some((b, n)),
                overlap: None,
                value: ctx.act_generator(b, n, &relations[f]),
            });
        }
    }
    out
}

/// One rewrite step of a reduction: the monomial that was rewritten, the
/// matched pattern, and the coefficient the S-word value was scaled by.
#[derive(Clone, Debug)]
pub struct ReduceStep {
    pub monomial: ModuleMonomial,
    pub pattern: NormalSWordPattern,
    pub multiplier: Coefficient,
}

/// Reduce modulo the relation set with the deterministic strategy (first
/// matching relation).
pub fn reduce(
    ctx: &Context,
    relations: &[Element<ModuleMonomial>],
    h: &Element<ModuleMonomial>,
) -> Result<(Element<ModuleMonomial>, Vec<ReduceStep>), Error> {
    reduce_with(ctx, relations, h, &mut |_| 0)
}

/// Reduce with a configurable choice among the matching patterns of each
/// leading word. Terminates because every step strictly lowers the working
/// leading word in the (well-ordered) weight order: a match subtracts a
/// monic value with equal leading word, a miss moves the leading word to
/// the remainder.
pub fn reduce_with(
    ctx: &Context,
    relations: &[Element<ModuleMonomial>],
    h: &Element<ModuleMonomial>,
    choose: &mut dyn FnMut(&[NormalSWordPattern]) -> usize,
) -> Result<(Element<ModuleMonomial>, Vec<ReduceStep>), Error> {
    for rel in relations {
        if !rel.is_monic() {
            return Err(Error::NonMonicRelation(render_module_element(
                rel,
                ctx.symbols(),
            )));
        }
    }
    let mut work = h.clone();
    let mut remainder = Element::zero();
    let mut trace = Vec::new();
    while let Some((m, c)) = work.leading().map(|(m, c)| (m.clone(), c.clone())) {
        let matches = leading_matches(ctx.uniform_bound(), relations, &m);
        if matches.is_empty() {
            remainder.add_term(m.clone(), c.clone());
            work.add_term(m, c.neg_ref());
        } else {
            let pick = choose(&matches).min(matches.len() - 1);
            let pat = matches[pick].clone();
            let value = normal_s_word_value(ctx, relations, &pat);
            work.add_scaled(&value, &c.neg_ref());
            trace.push(ReduceStep {
                monomial: m,
                pattern: pat,
                multiplier: c,
            });
        }
    }
    Ok((remainder, trace))
}

/// Default window size: the largest tail D-degree over the relations plus
/// the largest leading length plus two.
pub fn default_window(relations: &[Element<ModuleMonomial>]) -> u32 {
    let max_d = relations
        .iter()
        .flat_map(|r| r.iter().map(|(m, _)| m.d_degree()))
        .max()
        .unwrap_or(0);
    let max_len = relations
        .iter()
        .filter_map(|r| r.leading().map(|(m, _)| m.length() as u32))
        .max()
        .unwrap_or(0);
    max_d + max_len + 2
}

fn outcome_for(
    ctx: &Context,
    relations: &[Element<ModuleMonomial>],
    inst: &CompositionInstance,
    label: String,
) -> Result<CompositionOutcome, Error> {
    let (nf, trace) = reduce(ctx, relations, &inst.value)?;
    Ok(CompositionOutcome {
        kind: inst.kind,
        label,
        reduced_to_zero: nf.is_zero(),
        residual: (!nf.is_zero()).then(|| render_module_element(&nf, ctx.symbols())),
        steps: trace.len(),
    })
}

/// Check whether the module relation set is closed under all three
/// composition types. Inclusion and intersection compositions are complete;
/// left multiplications are checked on the window [N, N+K] and the closure
/// certificate records whether everything beyond the window is identically
/// zero by locality.
pub fn check_gsb(p: &Presentation, window: Option<u32>) -> Result<GsbReport, Error> {
    let ctx = p.context();
    let relations = p.module_relations();
    let window = window.unwrap_or_else(|| default_window(relations));
    let mut outcomes = Vec::new();

    for f in 0..relations.len() {
        for g in 0..relations.len() {
            for inst in find_inclusion_compositions(ctx, relations, f, g) {
                let w = inst.overlap.as_ref().unwrap();
                let label = format!(
                    "inclusion (q{}, q{}) at w = {} of weight {}",
                    f + 1,
                    g + 1,
                    render_module_monomial(w, ctx.symbols()),
                    crate::display::render_weight(w, ctx.symbols())
                );
                outcomes.push(outcome_for(ctx, relations, &inst, label)?);
            }
        }
    }
    for f in 0..relations.len() {
        for g in 0..relations.len() {
            for inst in find_intersection_compositions(ctx, relations, f, g) {
                let w = inst.overlap.as_ref().unwrap();
                let label = format!(
                    "intersection (q{}, q{}) at w = {} of weight {}",
                    f + 1,
                    g + 1,
                    render_module_monomial(w, ctx.symbols()),
                    crate::display::render_weight(w, ctx.symbols())
                );
                outcomes.push(outcome_for(ctx, relations, &inst, label)?);
            }
        }
    }
    for f in 0..relations.len() {
        for inst in left_mult_compositions(ctx, relations, f, window) {
            let (b, n) = inst.left.unwrap();
            let label = format!(
                "left-mult {}_({}) q{}",
                ctx.symbols().algebra_name(b),
                n,
                f + 1
            );
            outcomes.push(outcome_for(ctx, relations, &inst, label)?);
        }
    }

    let max_locality = relations
        .iter()
        .flat_map(|r| {
            let ctx = &ctx;
            r.iter().flat_map(move |(u, _)| {
                ctx.symbols()
                    .algebra_gens()
                    .map(move |b| ctx.locality_generator(b, u))
            })
        })
        .max()
        .unwrap_or(0);
    let window_end = ctx.uniform_bound() + window;
    let closure = ClosureCertificate {
        holds: window_end + 1 >= max_locality,
        max_locality,
        window_end,
    };

    let all_zero = outcomes.iter().all(|o| o.reduced_to_zero);
    let verdict = if !all_zero {
        Verdict::Fail
    } else if closure.holds {
        Verdict::Pass
    } else {
        Verdict::PassWithinWindow
    };

    Ok(GsbReport {
        preset: p.name().to_string(),
        uniform_bound: ctx.uniform_bound(),
        window,
        relation_count: relations.len(),
        outcomes,
        closure,
        verdict,
    })
}

/// All basis words of the module universe with |u| <= max_len and
/// D-degree <= max_d, ascending in the weight order.
pub fn enumerate_module_monomials(ctx: &Context, max_len: u32, max_d: u32) -> Vec<ModuleMonomial> {
    let mut all = Vec::new();
    if max_len == 0 {
        return all;
    }
    let mut layer: Vec<ModuleMonomial> = Vec::new();
    for y in ctx.symbols().module_gens() {
        for i in 0..=max_d {
            layer.push(Word::d_atom(i, y));
        }
    }
    all.extend(layer.iter().cloned());
    for _ in 1..max_len {
        let mut next = Vec::new();
        for u in &layer {
            for b in ctx.symbols().algebra_gens() {
                for n in 0..ctx.head_locality(b, u) {
                    next.push(u.prepend(b, n));
                }
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
        if layer.is_empty() {
            break;
        }
    }
    all.sort();
    all
}

/// All D-free basis words of the algebra universe with |a| <= max_len.
pub fn enumerate_algebra_monomials_dfree(ctx: &Context, max_len: u32) -> Vec<AlgebraMonomial> {
    let mut all = Vec::new();
    if max_len == 0 {
        return all;
    }
    let mut layer: Vec<AlgebraMonomial> = ctx
        .symbols()
        .algebra_gens()
        .map(AlgebraMonomial::atom)
        .collect();
    all.extend(layer.iter().cloned());
    for _ in 1..max_len {
        let mut next = Vec::new();
        for a in &layer {
            for b in ctx.symbols().algebra_gens() {
                for n in 0..ctx.head_locality(b, a) {
                    next.push(a.prepend(b, n));
                }
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
        if layer.is_empty() {
            break;
        }
    }
    all.sort();
    all
}

/// Basis words within the bounds that are not matched by any normal-S-word
/// leading pattern over the given relation set.
pub fn irr_with(
    ctx: &Context,
    relations: &[Element<ModuleMonomial>],
    max_len: u32,
    max_d: u32,
) -> Vec<ModuleMonomial> {
    enumerate_module_monomials(ctx, max_len, max_d)
        .into_iter()
        .filter(|u| leading_matches(ctx.uniform_bound(), relations, u).is_empty())
        .collect()
}

/// Normal forms of the presentation's module relation set within bounds.
pub fn irr(p: &Presentation, max_len: u32, max_d: u32) -> Vec<ModuleMonomial> {
    irr_with(p.context(), p.module_relations(), max_len, max_d)
}

/// The bounded slice of the relation-action family `{s_(m)[u], 0 <= m < N}`:
/// every element normalized and made monic, zero values dropped, duplicates
/// collapsed. Requires every monomial of every algebra relation to be
/// D-free (the strict predicate).
pub fn build_r1(
    p: &Presentation,
    max_len: u32,
    max_d: u32,
) -> Result<Vec<Element<ModuleMonomial>>, Error> {
    let ctx = p.context();
    for (i, rel) in p.algebra_relations().iter().enumerate() {
        for (a, _) in rel.element.iter() {
            if !a.is_d_free() {
                return Err(Error::NotDFree(format!(
                    "algebra relation {} contains the word {}",
                    i + 1,
                    render_algebra_monomial(a, ctx.symbols())
                )));
            }
        }
    }
    let words = enumerate_module_monomials(ctx, max_len, max_d);
    let mut slice = BTreeSet::new();
    for rel in p.algebra_relations() {
        for m in 0..ctx.uniform_bound() {
            for u in &words {
                let value = ctx.act_element(&rel.element, m, &Element::monomial(u.clone()));
                if value.is_zero() {
                    continue;
                }
                slice.insert(value.into_monic()?);
            }
        }
    }
    Ok(slice.into_iter().collect())
}

fn flatten(a: &AlgebraMonomial) -> (Vec<AlgGen>, Vec<u32>) {
    let mut letters: Vec<AlgGen> = a.chain().iter().map(|&(b, _)| b).collect();
    letters.push(a.tail());
    let connectors: Vec<u32> = a.chain().iter().map(|&(_, n)| n).collect();
    (letters, connectors)
}

fn contains_pattern(word: &(Vec<AlgGen>, Vec<u32>), pat: &(Vec<AlgGen>, Vec<u32>)) -> bool {
    let (wl, wc) = word;
    let (pl, pc) = pat;
    if pl.len() > wl.len() {
        return false;
    }
    (0..=wl.len() - pl.len()).any(|q| wl[q..q + pl.len()] == pl[..] && wc[q..q + pc.len()] == pc[..])
}

/// D-free algebra basis words within bounds containing no leading word of
/// the algebra relation set as a contiguous subword. For a user-asserted
/// D-free algebra basis this is its normal-form set; relations whose
/// leading word carries a D-power cannot occur inside a D-free word and are
/// skipped.
pub fn algebra_irr_dfree(p: &Presentation, max_len: u32) -> Vec<AlgebraMonomial> {
    let patterns: Vec<(Vec<AlgGen>, Vec<u32>)> = p
        .algebra_relations()
        .iter()
        .filter_map(|r| {
            let (lead, _) = r.element.leading()?;
            lead.is_d_free().then(|| flatten(lead))
        })
        .collect();
    enumerate_algebra_monomials_dfree(p.context(), max_len)
        .into_iter()
        .filter(|a| {
            let flat = flatten(a);
            !patterns.iter().any(|pat| contains_pattern(&flat, pat))
        })
        .collect()
}

/// Closed-form normal-form set of the relation-action family: the words
/// a_(n) D^i y for a in the supplied algebra normal-form set and n below
/// the uniform bound, together with the D-power words D^i y.
pub fn irr_r1_closed_form(
    p: &Presentation,
    irr_s: &[AlgebraMonomial],
    max_len: u32,
    max_d: u32,
) -> Vec<ModuleMonomial> {
    let ctx = p.context();
    let mut out = BTreeSet::new();
    for y in ctx.symbols().module_gens() {
        for i in 0..=max_d {
            out.insert(ModuleMonomial::d_atom(i, y));
        }
    }
    for a in irr_s {
        debug_assert!(a.is_d_free());
        if a.length() as u32 + 1 > max_len {
            continue;
        }
        for n in 0..ctx.uniform_bound() {
            for y in ctx.symbols().module_gens() {
                for i in 0..=max_d {
                    let mut chain = a.chain().to_vec();
                    chain.push((a.tail(), n));
                    out.insert(ModuleMonomial::new(chain, i, y));
                }
            }
        }
    }
    out.into_iter().collect()
}

/// Canonical image in the quotient module: reduction modulo the module
/// relations together with a bounded relation-action slice.
pub fn quotient_normal_form(
    p: &Presentation,
    r1: &[Element<ModuleMonomial>],
    h: &Element<ModuleMonomial>,
) -> Result<(Element<ModuleMonomial>, Vec<ReduceStep>), Error> {
    let mut relations = p.module_relations().to_vec();
    relations.extend(r1.iter().cloned());
    reduce(p.context(), &relations, h)
}

/// The free-module construction report. On a strictly D-free algebra
/// relation set: builds the bounded relation-action slice, checks its
/// pairwise inclusion and intersection compositions, and compares the
/// brute-force normal-form enumeration against the closed form. Otherwise:
/// reports the D-freeness violation and probes the bounded relation-action
/// family for single-monomial values landing in the naive normal-form
/// prediction, which witness its inconsistency.
pub fn free_module_report(
    p: &Presentation,
    max_len: u32,
    max_d: u32,
    quotient: Option<&Element<ModuleMonomial>>,
) -> Result<FreeModReport, Error> {
    let ctx = p.context();
    let table = ctx.symbols();
    let strict_violation = p.algebra_relations().iter().enumerate().find_map(|(i, rel)| {
        rel.element.iter().find_map(|(a, _)| {
            (!a.is_d_free()).then(|| {
                format!(
                    "algebra relation {} contains the word {}",
                    i + 1,
                    render_algebra_monomial(a, table)
                )
            })
        })
    });

    let closed_irr_words = irr_r1_closed_form(
        p,
        &algebra_irr_dfree(p, max_len.saturating_sub(1)),
        max_len,
        max_d,
    );
    let closed_irr: Vec<String> = closed_irr_words
        .iter()
        .map(|u| render_module_monomial(u, table))
        .collect();

    let mut report = FreeModReport {
        preset: p.name().to_string(),
        max_len,
        max_d,
        d_free: strict_violation.is_none(),
        not_d_free_witness: strict_violation,
        r1_count: 0,
        r1_outcomes: Vec::new(),
        brute_irr: Vec::new(),
        closed_irr,
        irr_agree: None,
        naive_irr_consistent: None,
        inconsistency_witnesses: Vec::new(),
        quotient: None,
        verdict: Verdict::Pass,
    };

    if report.d_free {
        let r1 = build_r1(p, max_len, max_d)?;
        report.r1_count = r1.len();
        for f in 0..r1.len() {
            for g in 0..r1.len() {
                let insts = find_inclusion_compositions(ctx, &r1, f, g)
                    .into_iter()
                    .chain(find_intersection_compositions(ctx, &r1, f, g));
                for inst in insts {
                    let w = inst.overlap.as_ref().unwrap();
                    let label = format!(
                        "{} (r{}, r{}) at w = {} of weight {}",
                        inst.kind,
                        f + 1,
                        g + 1,
                        render_module_monomial(w, table),
                        crate::display::render_weight(w, table)
                    );
                    report.r1_outcomes.push(outcome_for(ctx, &r1, &inst, label)?);
                }
            }
        }
        let brute = irr_with(ctx, &r1, max_len, max_d);
        report.brute_irr = brute
            .iter()
            .map(|u| render_module_monomial(u, table))
            .collect();
        let agree = brute == closed_words_restricted(p, max_len, max_d);
        report.irr_agree = Some(agree);
        let all_zero = report.r1_outcomes.iter().all(|o| o.reduced_to_zero);
        report.verdict = if agree && all_zero {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        if let Some(h) = quotient {
            let (nf, _) = quotient_normal_form(p, &r1, h)?;
            report.quotient = Some((
                render_module_element(h, table),
                render_module_element(&nf, table),
            ));
        }
    } else {
        let naive: BTreeSet<ModuleMonomial> =
            closed_words_restricted(p, max_len, max_d).into_iter().collect();
        let words = enumerate_module_monomials(ctx, max_len, max_d);
        let probe_end = ctx.uniform_bound() + max_d + 2;
        for (ri, rel) in p.algebra_relations().iter().enumerate() {
            for m in 0..=probe_end {
                for u in &words {
                    let value = ctx.act_element(&rel.element, m, &Element::monomial(u.clone()));
                    if value.len() != 1 {
                        continue;
                    }
                    let (mono, _) = value.leading().unwrap();
                    if naive.contains(mono) {
                        report.inconsistency_witnesses.push(format!(
                            "s{}_({}) {} = {}",
                            ri + 1,
                            m,
                            render_module_monomial(u, table),
                            render_module_element(&value, table)
                        ));
                    }
                }
            }
        }
        let consistent = report.inconsistency_witnesses.is_empty();
        report.naive_irr_consistent = Some(consistent);
        report.verdict = if consistent {
            Verdict::PassWithinWindow
        } else {
            Verdict::Fail
        };
    }
    Ok(report)
}

fn closed_words_restricted(p: &Presentation, max_len: u32, max_d: u32) -> Vec<ModuleMonomial> {
    irr_r1_closed_form(
        p,
        &algebra_irr_dfree(p, max_len.saturating_sub(1)),
        max_len,
        max_d,
    )
}
