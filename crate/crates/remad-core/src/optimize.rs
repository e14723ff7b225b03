//! Deterministic maximizers used by the capacity computations: a
//! golden-section search for unimodal 1-D objectives and a coarse simplex
//! grid followed by Nelder-Mead refinement for 2-D objectives on the
//! probability simplex `p1, p2 ≥ 0, p1 + p2 ≤ 1`.
//!
//! All routines are deterministic: ties on the coarse grid break
//! lexicographically on `(p1, p2)` so results do not depend on evaluation
//! order.

/// Result of a scalar maximization.
#[derive(Debug, Clone, Copy)]
pub(crate) struct MaxResult1D {
    pub x: f64,
    pub value: f64,
    pub evals: u64,
}

/// Golden-section maximization of a unimodal `f` on `[a, b]` to width
/// `tol_x` in the argument.
pub(crate) fn golden_section_max(
    f: impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    tol_x: f64,
) -> MaxResult1D {
    const INVPHI: f64 = 0.618_033_988_749_894_9;
    let mut evals = 0u64;
    let mut eval = |x: f64| {
        evals += 1;
        f(x)
    };
    let (mut lo, mut hi) = (a, b);
    let mut x1 = hi - INVPHI * (hi - lo);
    let mut x2 = lo + INVPHI * (hi - lo);
    let mut f1 = eval(x1);
    let mut f2 = eval(x2);
    while hi - lo > tol_x {
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INVPHI * (hi - lo);
            f1 = eval(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INVPHI * (hi - lo);
            f2 = eval(x2);
        }
    }
    // include the endpoints: several optima sit on the boundary
    let xm = 0.5 * (lo + hi);
    let mut best = (xm, eval(xm));
    for x in [a, b] {
        let v = eval(x);
        if v > best.1 {
            best = (x, v);
        }
    }
    MaxResult1D {
        x: best.0,
        value: best.1,
        evals,
    }
}

/// Result of a simplex maximization over `(p1, p2)`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct MaxResult2D {
    pub p: [f64; 2],
    pub value: f64,
    pub evals: u64,
}

fn clamp_to_simplex(p: [f64; 2]) -> [f64; 2] {
    let mut q = [p[0].max(0.0), p[1].max(0.0)];
    let s = q[0] + q[1];
    if s > 1.0 {
        q[0] /= s;
        q[1] /= s;
    }
    q
}

/// Coarse grid over the simplex (`resolution + 1` points per axis, simplex
/// edges included) followed by Nelder-Mead refinement with reflections
/// clamped to the simplex; terminates when the simplex diameter drops below
/// `1e-9`.
pub(crate) fn simplex_grid_nelder_mead_max(
    f: impl Fn(f64, f64) -> f64,
    resolution: usize,
) -> MaxResult2D {
    let resolution = resolution.max(2);
    let mut evals = 0u64;
    let mut eval = |p: [f64; 2]| {
        evals += 1;
        f(p[0], p[1])
    };

    // coarse pass, lexicographic tie-break on (p1, p2)
    let mut best_p = [0.0, 0.0];
    let mut best_v = eval(best_p);
    for i in 0..=resolution {
        let p1 = i as f64 / resolution as f64;
        for j in 0..=(resolution - i) {
            let p2 = j as f64 / resolution as f64;
            if i == 0 && j == 0 {
                continue;
            }
            let v = eval([p1, p2]);
            if v > best_v + 1e-15 {
                best_v = v;
                best_p = [p1, p2];
            }
        }
    }

    // Nelder-Mead refinement seeded at the grid optimum
    let h = 1.0 / resolution as f64;
    let mut simplex: Vec<([f64; 2], f64)> = vec![
        (clamp_to_simplex(best_p), best_v),
        (clamp_to_simplex([best_p[0] + 0.5 * h, best_p[1]]), 0.0),
        (clamp_to_simplex([best_p[0], best_p[1] + 0.5 * h]), 0.0),
    ];
    simplex[1].1 = eval(simplex[1].0);
    simplex[2].1 = eval(simplex[2].0);

    let diameter = |s: &[([f64; 2], f64)]| -> f64 {
        let mut d: f64 = 0.0;
        for i in 0..s.len() {
            for j in i + 1..s.len() {
                let dx = s[i].0[0] - s[j].0[0];
                let dy = s[i].0[1] - s[j].0[1];
                d = d.max(dx.hypot(dy));
            }
        }
        d
    };

    for _ in 0..10_000 {
        // maximization: best first
        simplex.sort_by(|a, b| b.1.total_cmp(&a.1));
        if diameter(&simplex) < 1e-9 {
            break;
        }
        let centroid = [
            0.5 * (simplex[0].0[0] + simplex[1].0[0]),
            0.5 * (simplex[0].0[1] + simplex[1].0[1]),
        ];
        let worst = simplex[2];
        let reflect = clamp_to_simplex([
            centroid[0] + (centroid[0] - worst.0[0]),
            centroid[1] + (centroid[1] - worst.0[1]),
        ]);
        let fr = eval(reflect);
        if fr > simplex[0].1 {
            let expand = clamp_to_simplex([
                centroid[0] + 2.0 * (centroid[0] - worst.0[0]),
                centroid[1] + 2.0 * (centroid[1] - worst.0[1]),
            ]);
            let fe = eval(expand);
            simplex[2] = if fe > fr { (expand, fe) } else { (reflect, fr) };
        } else if fr > simplex[1].1 {
            simplex[2] = (reflect, fr);
        } else {
            let contract = clamp_to_simplex([
                centroid[0] + 0.5 * (worst.0[0] - centroid[0]),
                centroid[1] + 0.5 * (worst.0[1] - centroid[1]),
            ]);
            let fc = eval(contract);
            if fc > worst.1 {
                simplex[2] = (contract, fc);
            } else {
                // shrink toward the best vertex
                for k in 1..3 {
                    let p = clamp_to_simplex([
                        simplex[0].0[0] + 0.5 * (simplex[k].0[0] - simplex[0].0[0]),
                        simplex[0].0[1] + 0.5 * (simplex[k].0[1] - simplex[0].0[1]),
                    ]);
                    let v = eval(p);
                    simplex[k] = (p, v);
                }
            }
        }
    }
    simplex.sort_by(|a, b| b.1.total_cmp(&a.1));
    let (p, value) = if simplex[0].1 > best_v {
        simplex[0]
    } else {
        (best_p, best_v)
    };
    MaxResult2D { p, value, evals }
}
