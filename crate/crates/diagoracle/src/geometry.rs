use crate::{Component, Diagram, DiagramError, Visit};

pub(crate) type P3 = [f64; 3];

const EPS: f64 = 1e-9;

/// A closed polyline; the last point connects back to the first.
#[derive(Clone, Debug)]
pub(crate) struct Curve {
    pub name: String,
    pub points: Vec<P3>,
}

fn sub(a: P3, b: P3) -> P3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn cross(a: P3, b: P3) -> P3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn dot(a: P3, b: P3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn unit(a: P3) -> P3 {
    let n = dot(a, a).sqrt();
    [a[0] / n, a[1] / n, a[2] / n]
}

/// Right-handed frame `(e1, e2, e3)` with `e3` pointing at the viewer.
fn frame() -> [P3; 3] {
    let e3 = unit([0.13, 0.21, 1.0]);
    let e1 = unit(cross([0.07, 1.0, 0.05], e3));
    let e2 = cross(e3, e1);
    [e1, e2, e3]
}

struct Hit {
    seg: usize,
    t: f64,
    crossing: usize,
    over: bool,
}

/// Projects the curves and records every transverse crossing.
pub(crate) fn project(curves: &[Curve]) -> Result<Diagram, DiagramError> {
    let [e1, e2, e3] = frame();
    let proj: Vec<Vec<P3>> = curves
        .iter()
        .map(|c| c.points.iter().map(|&p| [dot(p, e1), dot(p, e2), dot(p, e3)]).collect())
        .collect();
    let segs: Vec<(usize, usize)> = proj
        .iter()
        .enumerate()
        .flat_map(|(c, pts)| (0..pts.len()).map(move |i| (c, i)))
        .collect();
    let seg = |(c, i): (usize, usize)| {
        let pts = &proj[c];
        (pts[i], pts[(i + 1) % pts.len()])
    };

    let mut hits: Vec<Vec<Hit>> = curves.iter().map(|_| Vec::new()).collect();
    let mut signs = Vec::new();
    for (x, &sa) in segs.iter().enumerate() {
        for &sb in &segs[x + 1..] {
            if sa.0 == sb.0 {
                let n = proj[sa.0].len();
                let (i, j) = (sa.1, sb.1);
                if (i + 1) % n == j || (j + 1) % n == i {
                    continue;
                }
            }
            let ((p, p2), (q, q2)) = (seg(sa), seg(sb));
            let r = sub(p2, p);
            let s = sub(q2, q);
            let denom = r[0] * s[1] - r[1] * s[0];
            let qp = sub(q, p);
            let where_ = || format!("{} and {}", curves[sa.0].name, curves[sb.0].name);
            if denom.abs() < EPS {
                if (qp[0] * r[1] - qp[1] * r[0]).abs() < EPS {
                    let len = dot(r, r);
                    let t0 = (qp[0] * r[0] + qp[1] * r[1]) / len;
                    let t1 = t0 + (s[0] * r[0] + s[1] * r[1]) / len;
                    if t0.max(t1) > EPS && t0.min(t1) < 1.0 - EPS {
                        return Err(DiagramError::Degenerate(where_()));
                    }
                }
                continue;
            }
            let t = (qp[0] * s[1] - qp[1] * s[0]) / denom;
            let u = (qp[0] * r[1] - qp[1] * r[0]) / denom;
            if !(-EPS..1.0 + EPS).contains(&t) || !(-EPS..1.0 + EPS).contains(&u) {
                continue;
            }
            if t.abs() < EPS || u.abs() < EPS || (t - 1.0).abs() < EPS || (u - 1.0).abs() < EPS {
                return Err(DiagramError::Degenerate(where_()));
            }
            let za = p[2] + t * r[2];
            let zb = q[2] + u * s[2];
            if (za - zb).abs() < EPS {
                return Err(DiagramError::Degenerate(where_()));
            }
            let a_over = za > zb;
            let (ov, un) = if a_over { (r, s) } else { (s, r) };
            let sign: i8 = if ov[0] * un[1] - ov[1] * un[0] > 0.0 { 1 } else { -1 };
            let id = signs.len();
            signs.push(sign);
            hits[sa.0].push(Hit {
                seg: sa.1,
                t,
                crossing: id,
                over: a_over,
            });
            hits[sb.0].push(Hit {
                seg: sb.1,
                t: u,
                crossing: id,
                over: !a_over,
            });
        }
    }

    for h in &mut hits {
        h.sort_by(|a, b| (a.seg, a.t).partial_cmp(&(b.seg, b.t)).expect("finite parameters"));
    }
    let mut renumber = vec![usize::MAX; signs.len()];
    let mut next = 0;
    for h in &hits {
        for hit in h {
            if renumber[hit.crossing] == usize::MAX {
                renumber[hit.crossing] = next;
                next += 1;
            }
        }
    }
    let mut new_signs = vec![0i8; signs.len()];
    for (old, &new) in renumber.iter().enumerate() {
        new_signs[new] = signs[old];
    }
    let components = curves
        .iter()
        .zip(hits)
        .map(|(c, h)| Component {
            name: c.name.clone(),
            visits: h
                .into_iter()
                .map(|hit| Visit {
                    crossing: renumber[hit.crossing],
                    over: hit.over,
                })
                .collect(),
        })
        .collect();
    let d = Diagram {
        components,
        signs: new_signs,
    };
    d.check()?;
    Ok(d)
}
