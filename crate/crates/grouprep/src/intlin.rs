//! Integer solutions of `A z = b` by column Hermite reduction.

/// Solves `a z = b` over the integers, `a` given as rows.
///
/// Returns one solution, or `None` when `b` is outside the column lattice.
pub fn solve(a: &[Vec<i128>], b: &[i128]) -> Option<Vec<i128>> {
    let rows = a.len();
    assert_eq!(rows, b.len(), "right-hand side length");
    let cols = a.first().map_or(0, Vec::len);
    let mut l: Vec<Vec<i128>> = a.to_vec();
    let mut u: Vec<Vec<i128>> = (0..cols)
        .map(|i| (0..cols).map(|j| i128::from(i == j)).collect())
        .collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut pc = 0;
    for r in 0..rows {
        if pc == cols {
            break;
        }
        for c in pc + 1..cols {
            if l[r][c] == 0 {
                continue;
            }
            let (g, x, y) = ext_gcd(l[r][pc], l[r][c]);
            let p = l[r][pc] / g;
            let q = l[r][c] / g;
            // [pc, c] <- [x*pc + y*c, -q*pc + p*c], determinant x*p + y*q = 1.
            combine(&mut l, pc, c, x, y, -q, p);
            combine(&mut u, pc, c, x, y, -q, p);
        }
        if l[r][pc] != 0 {
            if l[r][pc] < 0 {
                negate(&mut l, pc);
                negate(&mut u, pc);
            }
            pivots.push((r, pc));
            pc += 1;
        }
    }
    let mut y = vec![0i128; cols];
    let mut next = 0;
    for r in 0..rows {
        let residual: i128 = b[r] - (0..cols).map(|c| l[r][c] * y[c]).sum::<i128>();
        if next < pivots.len() && pivots[next].0 == r {
            let c = pivots[next].1;
            if residual % l[r][c] != 0 {
                return None;
            }
            y[c] = residual / l[r][c];
            next += 1;
        } else if residual != 0 {
            return None;
        }
    }
    Some(
        (0..cols)
            .map(|i| (0..cols).map(|j| u[i][j] * y[j]).sum())
            .collect(),
    )
}

fn combine(m: &mut [Vec<i128>], i: usize, j: usize, a: i128, b: i128, c: i128, d: i128) {
    for row in m.iter_mut() {
        let (vi, vj) = (row[i], row[j]);
        row[i] = a * vi + b * vj;
        row[j] = c * vi + d * vj;
    }
}

fn negate(m: &mut [Vec<i128>], i: usize) {
    for row in m.iter_mut() {
        row[i] = -row[i];
    }
}

/// `(g, x, y)` with `g = gcd(a, b) > 0` and `a x + b y = g`; requires `(a, b) != (0, 0)`.
fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}
