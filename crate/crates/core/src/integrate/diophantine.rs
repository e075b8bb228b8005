//! Enumeration of `(d, k)` with
//! `d^2 = Σ k(p)^2 ρ_p δ_p` and `d (r + 2) = Σ k(p) (ρ_p + δ_p)`.

/// Eigenpair of a conjugacy class of non-reduced points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EigenClass {
    pub delta: i64,
    pub rho: i64,
    pub size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct DiophantineSolution {
    pub d: i64,
    /// One value per class, in the order of the input.
    pub k: Vec<i64>,
}

/// All solutions with `1 <= d < t` and `k >= 1`, sorted by `d` then
/// lexicographically by `k`.
pub fn solve_diophantine(classes: &[EigenClass], r: usize, t: i64) -> Vec<DiophantineSolution> {
    let mut out = Vec::new();
    if classes.is_empty() {
        return out;
    }
    // minimal contributions of the classes from index i on, with k = 1
    let n = classes.len();
    let mut min_lin = vec![0i64; n + 1];
    let mut min_quad = vec![0i64; n + 1];
    for i in (0..n).rev() {
        let c = classes[i];
        min_lin[i] = min_lin[i + 1] + c.size as i64 * (c.rho + c.delta);
        min_quad[i] = min_quad[i + 1] + c.size as i64 * c.rho * c.delta;
    }
    for d in 1..t {
        let lin = d * (r as i64 + 2);
        let quad = d * d;
        let mut k = Vec::with_capacity(n);
        let ctx = Search { classes, min_lin: &min_lin, min_quad: &min_quad, d };
        ctx.dfs(0, lin, quad, &mut k, &mut out);
    }
    out
}

struct Search<'a> {
    classes: &'a [EigenClass],
    min_lin: &'a [i64],
    min_quad: &'a [i64],
    d: i64,
}

impl Search<'_> {
    fn dfs(&self, i: usize, lin: i64, quad: i64, k: &mut Vec<i64>, out: &mut Vec<DiophantineSolution>) {
        if i == self.classes.len() {
            if lin == 0 && quad == 0 {
                out.push(DiophantineSolution { d: self.d, k: k.clone() });
            }
            return;
        }
        let c = self.classes[i];
        let size = c.size as i64;
        let (l1, q1) = (size * (c.rho + c.delta), size * c.rho * c.delta);
        let mut kk = 1;
        loop {
            // k(p)^2 ρ δ <= d^2 for each point
            if kk * kk * c.rho * c.delta > self.d * self.d {
                break;
            }
            let rl = lin - kk * l1;
            let rq = quad - kk * kk * q1;
            if rl < self.min_lin[i + 1] || rq < self.min_quad[i + 1] {
                break;
            }
            k.push(kk);
            self.dfs(i + 1, rl, rq, k, out);
            k.pop();
            kk += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(spec: &[(i64, i64, usize)]) -> Vec<EigenClass> {
        spec.iter()
            .flat_map(|&(delta, rho, count)| std::iter::repeat_n(EigenClass { delta, rho, size: 1 }, count))
            .collect()
    }

    #[test]
    fn degree_three_example() {
        let sols = solve_diophantine(&pts(&[(1, 2, 3), (1, 1, 3)]), 3, 4);
        assert_eq!(sols, vec![DiophantineSolution { d: 3, k: vec![1; 6] }]);
    }

    #[test]
    fn single_radial_point_has_no_solution() {
        assert!(solve_diophantine(&pts(&[(1, 1, 1)]), 2, 50).is_empty());
    }

    #[test]
    fn class_sizes_weight_the_sums() {
        // one class of three points (1,1), r = 1: d^2 = 3k^2, 3d = 6k
        assert!(solve_diophantine(&[EigenClass { delta: 1, rho: 1, size: 3 }], 1, 30).is_empty());
        // degree 0: the radial point, d = k for every d
        let sols = solve_diophantine(&[EigenClass { delta: 1, rho: 1, size: 1 }], 0, 4);
        assert_eq!(sols.iter().map(|s| s.d).collect::<Vec<_>>(), vec![1, 2, 3]);
    }
}
