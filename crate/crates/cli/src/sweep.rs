use std::collections::BTreeMap;
use std::sync::Arc;

use grouprep::library;
use linkstate::gen::{random_element, random_state, GenParams};
use linkstate::{validate, AmbientContext, DualSphere, SingularLinkState};
use moves::apply;
use moves::sample::candidates;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

/// Steps of the random walk taken from each generated state.
pub const WALK_LEN: usize = 4;

#[derive(Clone, Debug, Serialize)]
pub struct SweepViolation {
    pub state: usize,
    pub context: String,
    pub mv: String,
    pub property: String,
    pub detail: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SweepReport {
    pub seed: u64,
    pub count: usize,
    pub moves_checked: usize,
    pub delta_checks: usize,
    pub parity_checks: usize,
    pub by_move: BTreeMap<String, usize>,
    pub violations: Vec<SweepViolation>,
}

/// The sweep's contexts: five groups, each with and without the
/// s-characteristic condition and with each kind of dual sphere.
pub fn contexts() -> Vec<(String, AmbientContext)> {
    let groups = [
        ("Z", library::integers()),
        ("Z/2", library::cyclic(2)),
        ("Z/4", library::cyclic(4)),
        ("Z/2xZ/2", library::abelian(0, &[2, 2])),
        ("Q8", library::quaternion()),
    ];
    let mut out = Vec::new();
    for (name, g) in groups {
        let g = Arc::new(g);
        out.push((format!("{name} s-char unframed"), AmbientContext::new(g.clone(), true, DualSphere::Unframed)));
        out.push((format!("{name} framed"), AmbientContext::new(g.clone(), false, DualSphere::Framed)));
        out.push((format!("{name} unframed"), AmbientContext::new(g.clone(), false, DualSphere::Unframed)));
        out.push((format!("{name} no dual"), AmbientContext::new(g, false, DualSphere::None)));
    }
    out
}

fn state_seed(seed: u64, i: usize) -> u64 {
    seed ^ (i as u64 + 1).wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

/// `lk(A, L - A) = lk(A', L - A')` for every dual pair.
fn parity_holds(st: &SingularLinkState) -> bool {
    st.actives().into_iter().all(|a| {
        let ad = st.dual(a).expect("active circles have partners");
        st.lk_total(a).ok() == st.lk_total(ad).ok()
    })
}

/// Adds a split cycle of two to four Hopf-linked pairs with random labels.
fn append_cycle(st: &mut SingularLinkState, ctx: &AmbientContext, rng: &mut ChaCha8Rng) {
    let m = rng.gen_range(2..=4);
    let pairs: Vec<_> = (0..m)
        .map(|_| st.push_pair(random_element(&ctx.group, 3, rng)))
        .collect();
    for i in 0..m {
        let (a, _) = pairs[i];
        let (_, next) = pairs[(i + 1) % m];
        st.set_lk(a, next, true);
        st.add_clasp(a, next);
    }
}

struct Local {
    moves: usize,
    delta_checks: usize,
    parity_checks: usize,
    by_move: BTreeMap<String, usize>,
    violations: Vec<SweepViolation>,
}

fn run_one(seed: u64, i: usize, name: &str, ctx: &AmbientContext) -> Local {
    let mut rng = ChaCha8Rng::seed_from_u64(state_seed(seed, i));
    let params = GenParams {
        pairs: 0..=3,
        type_ii: 0..=4,
        paired_type_ii: rng.gen_bool(0.5),
        ..GenParams::default()
    };
    let mut st = random_state(ctx, &params, &mut rng);
    if rng.gen_bool(0.2) {
        append_cycle(&mut st, ctx, &mut rng);
    }
    let mut out = Local {
        moves: 0,
        delta_checks: 0,
        parity_checks: 0,
        by_move: BTreeMap::new(),
        violations: Vec::new(),
    };
    let flag = |out: &mut Local, mv: &str, property: &str, detail: String| {
        out.violations.push(SweepViolation {
            state: i,
            context: name.to_string(),
            mv: mv.to_string(),
            property: property.to_string(),
            detail,
        });
    };
    if !validate(&st, ctx).is_valid() {
        flag(&mut out, "-", "generator", "generated state is invalid".into());
        return out;
    }
    for _ in 0..WALK_LEN {
        let mu = invariants::mu(&st, ctx).expect("valid states have a mu");
        let track_delta = ctx.s_characteristic && mu.is_zero();
        let delta = invariants::delta(&st, ctx).ok();
        let mut next = Vec::new();
        for mv in candidates(&st, ctx, &mut rng) {
            let Ok(post) = apply(&st, ctx, &mv) else {
                continue;
            };
            let name = mv.name();
            out.moves += 1;
            *out.by_move.entry(name.to_string()).or_default() += 1;
            let report = validate(&post, ctx);
            if !report.is_valid() {
                flag(&mut out, name, "validate", format!("{:?}", report.violations));
            }
            if invariants::mu(&post, ctx).ok().as_ref() != Some(&mu) {
                flag(&mut out, name, "mu", "mu changed".into());
            }
            if post.homology_tag() != st.homology_tag() {
                flag(&mut out, name, "homology tag", "tag changed".into());
            }
            if track_delta {
                out.delta_checks += 1;
                if invariants::delta(&post, ctx).ok() != delta {
                    flag(&mut out, name, "delta", "delta changed".into());
                }
            }
            if ctx.s_characteristic {
                out.parity_checks += 1;
                if !parity_holds(&post) {
                    flag(&mut out, name, "dual-pair parity", "lk(A, L - A) differs from lk(A', L - A')".into());
                }
            }
            next.push(post);
        }
        match next.choose(&mut rng) {
            Some(s) => st = s.clone(),
            None => break,
        }
    }
    out
}

/// Generates `count` states across [`contexts`], walks [`WALK_LEN`] random
/// moves from each and checks every applicable candidate move on the way.
/// The result depends only on `seed` and `count`.
pub fn sweep(seed: u64, count: usize) -> SweepReport {
    let ctxs = contexts();
    let locals: Vec<Local> = (0..count)
        .into_par_iter()
        .map(|i| {
            let (name, ctx) = &ctxs[i % ctxs.len()];
            run_one(seed, i, name, ctx)
        })
        .collect();
    let mut report = SweepReport {
        seed,
        count,
        ..SweepReport::default()
    };
    for l in locals {
        report.moves_checked += l.moves;
        report.delta_checks += l.delta_checks;
        report.parity_checks += l.parity_checks;
        for (k, v) in l.by_move {
            *report.by_move.entry(k).or_default() += v;
        }
        report.violations.extend(l.violations);
    }
    report
}
