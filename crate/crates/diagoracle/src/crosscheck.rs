//! Compares the abstract move rules against linking numbers read from scenes.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use grouprep::library;
use linkstate::{AmbientContext, CircleId, DualSphere, SingularLinkState};
use moves::{apply, MergeSpec, Move, SplitSpec, TypeIiSpec, WhitneySpec};
use serde::{Deserialize, Serialize};

use crate::{lk_diagram, scene, Diagram, DiagramError, Params};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    /// Surgery on a pair whose partner is encircled by meridians changes
    /// their mutual linking by the parity of the twist count.
    TwistRule,
    /// Belt circles of Whitney moves link each band side once.
    BeltLinking,
    /// Linking with a band sum adds mod 2.
    BandSum,
    /// A clasp finger move flips the clasped linking and adds meridians of
    /// the partners.
    ClaspFingerLinking,
}

impl Rule {
    pub const ALL: [Rule; 4] = [
        Rule::TwistRule,
        Rule::BeltLinking,
        Rule::BandSum,
        Rule::ClaspFingerLinking,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Rule::TwistRule => "twist-rule",
            Rule::BeltLinking => "belt-linking",
            Rule::BandSum => "band-sum",
            Rule::ClaspFingerLinking => "clasp-finger-linking",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Rule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Rule::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| format!("unknown rule {s}"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub params: Params,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrosscheckReport {
    pub rule: Rule,
    pub cases: usize,
    pub mismatches: Vec<Mismatch>,
}

fn params(pairs: &[(&str, i64)]) -> Params {
    pairs.iter().map(|&(k, v)| (k.to_string(), v)).collect()
}

/// The shipped parameter matrix of each rule.
pub fn default_grid(rule: Rule) -> Vec<Params> {
    match rule {
        Rule::TwistRule => (0..=4)
            .flat_map(|k| [2, 3].map(|m| params(&[("k", k), ("m", m)])))
            .collect(),
        Rule::BeltLinking => vec![params(&[("merged", 0)]), params(&[("merged", 1)])],
        Rule::BandSum => (0..4).map(|i| params(&[("p", i & 1), ("q", i >> 1)])).collect(),
        Rule::ClaspFingerLinking => vec![params(&[("linked", 0)]), params(&[("linked", 1)])],
    }
}

/// Runs `rule` over `grid`. Scene errors are reported as mismatches.
pub fn crosscheck(rule: Rule, grid: &[Params]) -> CrosscheckReport {
    let mismatches = grid
        .iter()
        .flat_map(|p| {
            let found = match rule {
                Rule::TwistRule => twist_rule(p),
                Rule::BeltLinking => belt_linking(p),
                Rule::BandSum => band_sum(p),
                Rule::ClaspFingerLinking => clasp_finger(p),
            };
            let details = found.unwrap_or_else(|e| vec![format!("oracle error: {e}")]);
            details.into_iter().map(|detail| Mismatch {
                params: p.clone(),
                detail,
            })
        })
        .collect();
    CrosscheckReport {
        rule,
        cases: grid.len(),
        mismatches,
    }
}

fn get(p: &Params, key: &str) -> i64 {
    p.get(key).copied().unwrap_or(0)
}

fn bit(d: &Diagram, a: &str, b: &str) -> Result<bool, DiagramError> {
    Ok(lk_diagram(d, a, b)?.bit == 1)
}

fn ctx(dual: DualSphere) -> AmbientContext {
    AmbientContext::new(Arc::new(library::integers()), false, dual)
}

fn expect(out: &mut Vec<String>, what: &str, predicted: bool, oracle: bool) {
    if predicted != oracle {
        out.push(format!("{what}: rule predicts {}, oracle gives {}", u8::from(predicted), u8::from(oracle)));
    }
}

fn twist_rule(p: &Params) -> Result<Vec<String>, DiagramError> {
    let (k, m) = (get(p, "k"), get(p, "m"));
    let d = scene("meridians-with-twist", p)?;
    let dual = if k % 2 != 0 {
        DualSphere::Unframed
    } else {
        DualSphere::Framed
    };
    let ctx = ctx(dual);
    let one = ctx.group.identity();
    let mut st = SingularLinkState::new("");
    let (o, od) = st.push_pair(one.clone());
    let cs: Vec<CircleId> = (0..m)
        .map(|_| {
            let (c, _) = st.push_pair(one.clone());
            st.set_lk(c, od, true);
            st.add_clasp(c, od);
            c
        })
        .collect();
    let after = apply(&st, &ctx, &Move::AmbientSurgery { split: o }).map_err(|e| DiagramError::Rule(e.to_string()))?;

    let mut out = Vec::new();
    for (i, &ci) in cs.iter().enumerate() {
        let name_i = format!("C{}", i + 1);
        expect(&mut out, &format!("lk({name_i}, O)"), st.lk(ci, od), bit(&d, &name_i, "O")?);
        for (j, &cj) in cs.iter().enumerate().skip(i + 1) {
            let name_j = format!("C{}", j + 1);
            let oracle = bit(&d, &name_i, &name_j)?;
            expect(&mut out, &format!("lk({name_i}, {name_j})"), after.lk(ci, cj), oracle);
            expect(&mut out, &format!("flip of lk({name_i}, {name_j}) against odd k"), k % 2 != 0, oracle);
        }
    }
    Ok(out)
}

fn belt_linking(p: &Params) -> Result<Vec<String>, DiagramError> {
    let d = scene("band-belt", p)?;
    let ctx = ctx(DualSphere::Framed);
    let one = ctx.group.identity();
    let err = |e: moves::MoveError| DiagramError::Rule(e.to_string());
    let mut out = Vec::new();
    if get(p, "merged") == 1 {
        let mut st = SingularLinkState::new("");
        let (a, _) = st.push_pair(one.clone());
        let (b, _) = st.push_pair(one.clone());
        let belt = st.next_id();
        let after = apply(
            &st,
            &ctx,
            &Move::WhitneyMove(WhitneySpec::Merge(MergeSpec {
                first: a,
                second: b,
                intersections: 1,
            })),
        )
        .map_err(err)?;
        expect(&mut out, "merge: lk(belt, M)", after.lk(belt, a), bit(&d, "belt", "M")?);
    } else {
        let oracle = (bit(&d, "belt", "A")?, bit(&d, "belt", "N")?);
        let mut st = SingularLinkState::new("");
        let (a, _) = st.push_pair(one.clone());
        let n = st.next_id();
        let belt = n + 2;
        let after = apply(
            &st,
            &ctx,
            &Move::WhitneyMove(WhitneySpec::Split(SplitSpec {
                circle: a,
                sigma_first: vec![],
                sigma_second: vec![],
                nu_first: 0,
                nu_second: None,
                cross: [[0, 0], [0, 0]],
                intersections: 1,
            })),
        )
        .map_err(err)?;
        expect(&mut out, "split: lk(belt, A)", after.lk(belt, a), oracle.0);
        expect(&mut out, "split: lk(belt, N)", after.lk(belt, n), oracle.1);

        let mut st = SingularLinkState::new("");
        let c = st.push_type_ii(one.clone());
        let e = st.push_type_ii(one.clone());
        st.set_tw(c, e, false);
        let belt = st.next_id();
        let after = apply(
            &st,
            &ctx,
            &Move::WhitneyMove(WhitneySpec::TypeIi(TypeIiSpec {
                first: c,
                second: e,
                sigma: vec![],
                nu: None,
                intersections: 1,
            })),
        )
        .map_err(err)?;
        expect(&mut out, "type II: lk(belt, first)", after.lk(belt, c), oracle.0);
        expect(&mut out, "type II: lk(belt, second)", after.lk(belt, e), oracle.1);
    }
    Ok(out)
}

fn band_sum(p: &Params) -> Result<Vec<String>, DiagramError> {
    let (pa, pb) = (get(p, "p") == 1, get(p, "q") == 1);
    let mut unmerged = p.clone();
    unmerged.insert("merged".into(), 0);
    let mut merged = p.clone();
    merged.insert("merged".into(), 1);
    let d0 = scene("band-sum", &unmerged)?;
    let d1 = scene("band-sum", &merged)?;
    let (la, lb) = (bit(&d0, "A", "X")?, bit(&d0, "B", "X")?);
    let mut out = Vec::new();
    expect(&mut out, "scene lk(A, X)", pa, la);
    expect(&mut out, "scene lk(B, X)", pb, lb);

    let ctx = ctx(DualSphere::Framed);
    let one = ctx.group.identity();
    let mut st = SingularLinkState::new("");
    let (a, _) = st.push_pair(one.clone());
    let (b, _) = st.push_pair(one.clone());
    let (x, _) = st.push_pair(one);
    st.set_lk(a, x, la);
    st.set_lk(b, x, lb);
    let after = apply(
        &st,
        &ctx,
        &Move::WhitneyMove(WhitneySpec::Merge(MergeSpec {
            first: a,
            second: b,
            intersections: 0,
        })),
    )
    .map_err(|e| DiagramError::Rule(e.to_string()))?;
    expect(&mut out, "lk(A#B, X)", after.lk(a, x), bit(&d1, "M", "X")?);
    Ok(out)
}

fn clasp_finger(p: &Params) -> Result<Vec<String>, DiagramError> {
    let mut before = p.clone();
    before.insert("resolved".into(), 0);
    let mut after_p = p.clone();
    after_p.insert("resolved".into(), 1);
    let d0 = scene("clasp", &before)?;
    let d1 = scene("clasp", &after_p)?;

    let ctx = ctx(DualSphere::Framed);
    let g = ctx.group.clone();
    let t = g.generators()[0].clone();
    let mut st = SingularLinkState::new("");
    let (a, ad) = st.push_pair(t.clone());
    let (b, bd) = st.push_pair(g.op(&t, &t));
    st.set_lk(a, b, bit(&d0, "A", "B")?);
    st.add_clasp(a, b);
    let e = st.next_id();
    let after = apply(&st, &ctx, &Move::ClaspFinger { a, b }).map_err(|e| DiagramError::Rule(e.to_string()))?;

    let names = [(a, "A"), (ad, "A'"), (b, "B"), (bd, "B'"), (e, "E"), (e + 1, "E'")];
    let mut out = Vec::new();
    for (i, &(x, nx)) in names.iter().enumerate() {
        for &(y, ny) in &names[i + 1..] {
            expect(&mut out, &format!("lk({nx}, {ny})"), after.lk(x, y), bit(&d1, nx, ny)?);
        }
    }
    Ok(out)
}
