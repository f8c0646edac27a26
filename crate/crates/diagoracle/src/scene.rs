//! Named 3D configurations, projected to diagrams.
//!
//! | scene | parameters | components |
//! |---|---|---|
//! | `hopf` | | `A`, `B` |
//! | `split` | | `A`, `B` |
//! | `torus-2-4` | | `T1`, `T2` |
//! | `meridians-with-twist` | `k`, `m` | `O`, `C1`..`Cm` |
//! | `band-belt` | `merged` | `A`, `N`, `belt` or `M`, `belt` |
//! | `band-sum` | `p`, `q`, `merged` | `A`, `B`, `X` or `M`, `X` |
//! | `clasp` | `linked`, `resolved` | `A`, `B`, `A'`, `B'`, and `E`, `E'` once resolved |

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use crate::geometry::{project, Curve, P3};
use crate::{Diagram, DiagramError};

pub type Params = BTreeMap<String, i64>;

struct ParamSpec {
    name: &'static str,
    default: i64,
    min: i64,
    max: i64,
}

const fn p(name: &'static str, default: i64, min: i64, max: i64) -> ParamSpec {
    ParamSpec {
        name,
        default,
        min,
        max,
    }
}

const BIT: (i64, i64) = (0, 1);

/// Every scene with its parameters.
pub const SCENES: &[&str] = &[
    "hopf",
    "split",
    "torus-2-4",
    "meridians-with-twist",
    "band-belt",
    "band-sum",
    "clasp",
];

fn param_specs(name: &str) -> Option<Vec<ParamSpec>> {
    Some(match name {
        "hopf" | "split" | "torus-2-4" => vec![],
        "meridians-with-twist" => vec![p("k", 0, -16, 16), p("m", 2, 1, 8)],
        "band-belt" => vec![p("merged", 0, BIT.0, BIT.1)],
        "band-sum" => vec![
            p("p", 0, BIT.0, BIT.1),
            p("q", 0, BIT.0, BIT.1),
            p("merged", 0, BIT.0, BIT.1),
        ],
        "clasp" => vec![p("linked", 0, BIT.0, BIT.1), p("resolved", 0, BIT.0, BIT.1)],
        _ => return None,
    })
}

fn resolve(name: &str, params: &Params) -> Result<BTreeMap<&'static str, i64>, DiagramError> {
    let specs = param_specs(name).ok_or_else(|| DiagramError::UnknownScene(name.to_string()))?;
    for key in params.keys() {
        if !specs.iter().any(|s| s.name == key) {
            return Err(DiagramError::UnknownParam {
                scene: name.to_string(),
                param: key.clone(),
            });
        }
    }
    let mut out = BTreeMap::new();
    for s in specs {
        let v = params.get(s.name).copied().unwrap_or(s.default);
        if !(s.min..=s.max).contains(&v) {
            return Err(DiagramError::ParamRange {
                param: s.name.to_string(),
                value: v,
            });
        }
        out.insert(s.name, v);
    }
    Ok(out)
}

fn curve(name: &str, points: Vec<P3>) -> Curve {
    Curve {
        name: name.to_string(),
        points,
    }
}

/// `n` points of the circle `center + r (cos t u + sin t v)`.
fn circle(center: P3, u: P3, v: P3, r: f64, n: usize) -> Vec<P3> {
    (0..n)
        .map(|i| {
            let t = TAU * i as f64 / n as f64;
            let (c, s) = (t.cos(), t.sin());
            [
                center[0] + r * (c * u[0] + s * v[0]),
                center[1] + r * (c * u[1] + s * v[1]),
                center[2] + r * (c * u[2] + s * v[2]),
            ]
        })
        .collect()
}

const X: P3 = [1.0, 0.0, 0.0];
const Y: P3 = [0.0, 1.0, 0.0];
const Z: P3 = [0.0, 0.0, 1.0];

fn flat(pts: &[(f64, f64)]) -> Vec<P3> {
    pts.iter().map(|&(x, y)| [x, y, 0.0]).collect()
}

fn top_rect() -> Vec<P3> {
    flat(&[(-3.0, 0.3), (3.0, 0.3), (3.0, 2.0), (-3.0, 2.0)])
}

fn bottom_rect() -> Vec<P3> {
    flat(&[(-3.0, -2.0), (3.0, -2.0), (3.0, -0.3), (-3.0, -0.3)])
}

/// The two rectangles joined by a band across `x = 0`.
fn band_sum_curve() -> Vec<P3> {
    flat(&[
        (-3.0, 2.0),
        (3.0, 2.0),
        (3.0, 0.3),
        (0.2, 0.3),
        (0.2, -0.3),
        (3.0, -0.3),
        (3.0, -2.0),
        (-3.0, -2.0),
        (-3.0, -0.3),
        (-0.2, -0.3),
        (-0.2, 0.3),
        (-3.0, 0.3),
    ])
}

pub fn scene(name: &str, params: &Params) -> Result<Diagram, DiagramError> {
    let v = resolve(name, params)?;
    let curves = match name {
        "hopf" => vec![
            curve("A", circle([0.0; 3], X, Y, 1.0, 32)),
            curve("B", circle([1.0, 0.0, 0.0], X, Z, 1.0, 32)),
        ],
        "split" => vec![
            curve("A", circle([0.0; 3], X, Y, 1.0, 32)),
            curve("B", circle([5.0, 0.0, 0.0], X, Y, 1.0, 32)),
        ],
        "torus-2-4" => (0..2)
            .map(|k| {
                let pts = (0..128)
                    .map(|i| {
                        let t = TAU * i as f64 / 128.0;
                        let phi = 2.0 * t + std::f64::consts::PI * k as f64;
                        let rad = 2.0 + 0.7 * phi.cos();
                        [rad * t.cos(), rad * t.sin(), 0.7 * phi.sin()]
                    })
                    .collect();
                curve(&format!("T{}", k + 1), pts)
            })
            .collect(),
        "meridians-with-twist" => twisted_meridians(v["k"], v["m"] as usize),
        "band-belt" => {
            if v["merged"] == 1 {
                vec![
                    curve("M", band_sum_curve()),
                    curve("belt", circle([0.0; 3], X, Z, 1.0, 24)),
                ]
            } else {
                vec![
                    curve("A", top_rect()),
                    curve("N", bottom_rect()),
                    curve("belt", circle([0.0; 3], Y, Z, 1.0, 24)),
                ]
            }
        }
        "band-sum" => {
            let x = band_sum_probe(v["p"] == 1, v["q"] == 1);
            if v["merged"] == 1 {
                vec![curve("M", band_sum_curve()), curve("X", x)]
            } else {
                vec![curve("A", top_rect()), curve("B", bottom_rect()), curve("X", x)]
            }
        }
        "clasp" => clasp(v["linked"] == 1, v["resolved"] == 1),
        _ => unreachable!("scene names are checked by resolve"),
    };
    project(&curves)
}

/// `m` strands along the x axis carrying `k` full twists, each closed up
/// in its own half-plane, and an axis circle `O` around the twist region.
fn twisted_meridians(k: i64, m: usize) -> Vec<Curve> {
    let (len, rho) = (4.0, 0.5);
    let steps = 24 * (k.unsigned_abs() as usize).max(1);
    let mut out = vec![curve("O", circle([len / 2.0, 0.0, 0.0], Y, Z, 1.0, 40))];
    for i in 0..m {
        let base = TAU * i as f64 / m as f64;
        let angle = |x: f64| base + TAU * k as f64 * x / len;
        let mut pts: Vec<P3> = (0..=steps)
            .map(|s| {
                let x = len * s as f64 / steps as f64;
                [x, rho * angle(x).cos(), rho * angle(x).sin()]
            })
            .collect();
        let r = 1.5 + 0.37 * i as f64;
        let overhang = 0.2 + 0.11 * i as f64;
        pts.push([len + overhang, r * base.cos(), r * base.sin()]);
        pts.push([-overhang, r * base.cos(), r * base.sin()]);
        out.push(curve(&format!("C{}", i + 1), pts));
    }
    out
}

/// A loop in the plane `x = -2` encircling the outer edge of the top
/// rectangle when `p` and of the bottom one when `q`.
fn band_sum_probe(p: bool, q: bool) -> Vec<P3> {
    let yz: &[(f64, f64)] = match (p, q) {
        (false, false) => &[(3.0, -0.5), (4.0, -0.5), (4.0, 0.5), (3.0, 0.5)],
        (true, false) => &[(1.5, -0.5), (2.5, -0.5), (2.5, 0.5), (1.5, 0.5)],
        (false, true) => &[(-2.5, -0.5), (-1.5, -0.5), (-1.5, 0.5), (-2.5, 0.5)],
        (true, true) => &[
            (2.5, -0.5),
            (2.5, 1.0),
            (-2.5, 1.0),
            (-2.5, -0.5),
            (-1.5, -0.5),
            (-1.5, 0.5),
            (1.5, 0.5),
            (1.5, -0.5),
        ],
    };
    yz.iter().map(|&(y, z)| [-2.0, y, z]).collect()
}

/// Two circles `A`, `B` whose projections cross twice, with `B` above `A`
/// at both crossings unless exactly one of `linked`, `resolved` holds. The
/// partners `A'`, `B'` sit apart; once resolved, `E` and `E'` are small
/// meridians of `A'` and `B'`.
fn clasp(linked: bool, resolved: bool) -> Vec<Curve> {
    let hopf = linked ^ resolved;
    let b: Vec<P3> = (0..32)
        .map(|i| {
            let t = TAU * i as f64 / 32.0;
            let h = if hopf { 0.3 * t.sin() } else { 0.3 };
            [1.5 + t.cos(), t.sin(), h]
        })
        .collect();
    let mut out = vec![
        curve("A", circle([0.0; 3], X, Y, 1.0, 32)),
        curve("B", b),
        curve("A'", circle([0.0, -4.0, 0.0], X, Y, 1.0, 32)),
        curve("B'", circle([4.0, -4.0, 0.0], X, Y, 1.0, 32)),
    ];
    if resolved {
        out.push(curve("E", circle([1.0, -4.0, 0.0], X, Z, 0.3, 16)));
        out.push(curve("E'", circle([5.0, -4.0, 0.0], X, Z, 0.3, 16)));
    }
    out
}
