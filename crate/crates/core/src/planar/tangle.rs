//! The generating tangles, as string matchings between box boundary points,
//! and their evaluation by label propagation.
//!
//! Points of a level-`m` box are numbered `1..=2m` clockwise from the top
//! left: top position `q` is point `q`, bottom position `q` (counted from the
//! left) is point `2m + 1 − q`. Points `2k − 1` and `2k` carry tuple entry `k`.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::space::{tuple_digits, LevelSpace};
use crate::exact::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Generator {
    /// Two level-`m` inputs, the first stacked on top.
    Mult(usize),
    /// Level `m` to `m + 1`, adding a string on the right.
    Incl(usize),
    /// Level `m + 1` to `m`, capping the rightmost string.
    Expect(usize),
    /// No input, output at level `m + 2`.
    Jones(usize),
    /// `(i_1, …, i_m) ↦ (i_2, …, i_m, i_1)`.
    Rotate(usize),
    /// Tuple reversal with complex conjugation.
    Star(usize),
}

impl Generator {
    pub fn input_levels(&self) -> Vec<usize> {
        match *self {
            Generator::Mult(m) => vec![m, m],
            Generator::Incl(m) | Generator::Rotate(m) | Generator::Star(m) => vec![m],
            Generator::Expect(m) => vec![m + 1],
            Generator::Jones(_) => vec![],
        }
    }

    pub fn output_level(&self) -> usize {
        match *self {
            Generator::Mult(m) | Generator::Rotate(m) | Generator::Star(m) | Generator::Expect(m) => m,
            Generator::Incl(m) => m + 1,
            Generator::Jones(m) => m + 2,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Mult(m) => write!(f, "mult{m}"),
            Generator::Incl(m) => write!(f, "incl{m}"),
            Generator::Expect(m) => write!(f, "expect{m}"),
            Generator::Jones(m) => write!(f, "jones{m}"),
            Generator::Rotate(m) => write!(f, "rotate{m}"),
            Generator::Star(m) => write!(f, "star{m}"),
        }
    }
}

/// A boundary point: `None` for the output box, `Some(r)` for input `r`.
type Endpoint = (Option<usize>, usize);

fn top(_m: usize, q: usize) -> usize {
    q
}

fn bottom(m: usize, q: usize) -> usize {
    2 * m + 1 - q
}

const OUT: Option<usize> = None;

fn strings(g: Generator) -> Vec<(Endpoint, Endpoint)> {
    let mut s = Vec::new();
    match g {
        Generator::Mult(m) => {
            let (u, l) = (Some(0), Some(1));
            for q in 1..=m {
                s.push(((OUT, top(m, q)), (u, top(m, q))));
                s.push(((u, bottom(m, q)), (l, top(m, q))));
                s.push(((l, bottom(m, q)), (OUT, bottom(m, q))));
            }
        }
        Generator::Incl(m) => {
            let p = Some(0);
            for q in 1..=m {
                s.push(((OUT, top(m + 1, q)), (p, top(m, q))));
                s.push(((OUT, bottom(m + 1, q)), (p, bottom(m, q))));
            }
            s.push(((OUT, top(m + 1, m + 1)), (OUT, bottom(m + 1, m + 1))));
        }
        Generator::Expect(m) => {
            let p = Some(0);
            for q in 1..=m {
                s.push(((OUT, top(m, q)), (p, top(m + 1, q))));
                s.push(((OUT, bottom(m, q)), (p, bottom(m + 1, q))));
            }
            s.push(((p, top(m + 1, m + 1)), (p, bottom(m + 1, m + 1))));
        }
        Generator::Jones(m) => {
            let k = m + 2;
            for q in 1..=m {
                s.push(((OUT, top(k, q)), (OUT, bottom(k, q))));
            }
            s.push(((OUT, top(k, m + 1)), (OUT, top(k, m + 2))));
            s.push(((OUT, bottom(k, m + 1)), (OUT, bottom(k, m + 2))));
        }
        Generator::Rotate(_) | Generator::Star(_) => unreachable!("not a string matching"),
    }
    s
}

/// Compiled label propagation for one string-matching generator.
#[derive(Clone, Debug)]
pub struct Plan {
    n: usize,
    out_level: usize,
    in_levels: Vec<usize>,
    /// Output entries that must carry equal labels.
    equal: Vec<(usize, usize)>,
    /// Per input: (output entry, weight) pairs fixing part of the input tuple index.
    determined: Vec<Vec<(usize, usize)>>,
    /// Per input: index offset for every assignment of the free classes.
    free_offsets: Vec<Vec<usize>>,
}

impl Plan {
    pub fn compile(g: Generator, n: usize) -> Self {
        let out_level = g.output_level();
        let in_levels = g.input_levels();
        // variables: output entries first, then each input's entries
        let mut offset = vec![out_level];
        for &l in &in_levels {
            offset.push(offset.last().unwrap() + l);
        }
        let total = *offset.last().unwrap();
        let var = |(b, p): Endpoint| -> usize {
            let k = (p - 1) / 2;
            match b {
                None => k,
                Some(r) => offset[r] + k,
            }
        };
        let mut parent: Vec<usize> = (0..total).collect();
        fn root(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                x = parent[x];
            }
            x
        }
        for (a, b) in strings(g) {
            let (ra, rb) = (root(&mut parent, var(a)), root(&mut parent, var(b)));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        let roots: Vec<usize> = (0..total).map(|v| root(&mut parent, v)).collect();
        let mut first_output = vec![None; total];
        let mut equal = Vec::new();
        for k in 0..out_level {
            match first_output[roots[k]] {
                None => first_output[roots[k]] = Some(k),
                Some(j) => equal.push((j, k)),
            }
        }
        let mut free_classes: Vec<usize> = Vec::new();
        let mut determined = Vec::new();
        let mut free_vars: Vec<Vec<(usize, usize)>> = Vec::new();
        for (r, &l) in in_levels.iter().enumerate() {
            let mut det = Vec::new();
            let mut fv = Vec::new();
            for k in 0..l {
                let weight = n.pow((l - 1 - k) as u32);
                let c = roots[offset[r] + k];
                match first_output[c] {
                    Some(j) => det.push((j, weight)),
                    None => {
                        let f = match free_classes.iter().position(|&x| x == c) {
                            Some(f) => f,
                            None => {
                                free_classes.push(c);
                                free_classes.len() - 1
                            }
                        };
                        fv.push((f, weight));
                    }
                }
            }
            determined.push(det);
            free_vars.push(fv);
        }
        let combos = n.pow(free_classes.len() as u32);
        let mut labels = vec![0; free_classes.len()];
        let free_offsets = free_vars
            .iter()
            .map(|fv| {
                (0..combos)
                    .map(|c| {
                        tuple_digits(c, n, labels.len(), &mut labels);
                        fv.iter().map(|&(f, w)| labels[f] * w).sum()
                    })
                    .collect()
            })
            .collect();
        Self { n, out_level, in_levels, equal, determined, free_offsets }
    }

    pub fn free_assignments(&self) -> usize {
        self.free_offsets.first().map_or(1, Vec::len)
    }

    /// Evaluate at every orbit representative of `out`. Inputs are given in
    /// the orbit coordinates of their own spaces.
    pub fn eval<F: Scalar>(&self, out: &LevelSpace, inputs: &[(&LevelSpace, &[F])]) -> Vec<F> {
        assert_eq!(out.m, self.out_level, "output level mismatch");
        assert_eq!(inputs.len(), self.in_levels.len(), "arity mismatch");
        for ((s, v), &l) in inputs.iter().zip(&self.in_levels) {
            assert!(s.m == l && s.n == self.n && v.len() == s.dim(), "input level mismatch");
        }
        let work = |&rep: &usize| -> F {
            let mut y = vec![0; self.out_level];
            tuple_digits(rep, self.n, self.out_level, &mut y);
            if self.equal.iter().any(|&(a, b)| y[a] != y[b]) {
                return F::zero();
            }
            let bases: Vec<usize> = self.determined.iter().map(|d| d.iter().map(|&(j, w)| y[j] * w).sum()).collect();
            let mut acc = F::zero();
            match inputs {
                [] => acc = F::from_gaussian(self.free_assignments() as i64, 0),
                [(s, v)] => {
                    for &off in &self.free_offsets[0] {
                        acc = acc.plus(&v[s.orbit_of(bases[0] + off)]);
                    }
                }
                [(s0, v0), (s1, v1)] => {
                    for (&o0, &o1) in self.free_offsets[0].iter().zip(&self.free_offsets[1]) {
                        let a = &v0[s0.orbit_of(bases[0] + o0)];
                        if a.is_zero() {
                            continue;
                        }
                        let b = &v1[s1.orbit_of(bases[1] + o1)];
                        if !b.is_zero() {
                            acc.add_product(a, b);
                        }
                    }
                }
                _ => unreachable!("generators take at most two inputs"),
            }
            acc
        };
        if out.dim() >= 512 {
            out.reps().par_iter().map(work).collect()
        } else {
            out.reps().iter().map(work).collect()
        }
    }
}

/// Rotation in orbit coordinates: `out(y) = in(y_m, y_1, …, y_{m−1})`.
pub fn rotate<F: Scalar>(space: &LevelSpace, v: &[F]) -> Vec<F> {
    permute_tuples(space, v, false, |y| y.rotate_right(1))
}

/// Involution in orbit coordinates: `out(y) = conj(in(reverse y))`.
pub fn star<F: Scalar>(space: &LevelSpace, v: &[F]) -> Vec<F> {
    permute_tuples(space, v, true, |y| y.reverse())
}

fn permute_tuples<F: Scalar>(space: &LevelSpace, v: &[F], conj: bool, f: impl Fn(&mut [usize])) -> Vec<F> {
    let (n, m) = (space.n, space.m);
    let mut y = vec![0; m];
    space
        .reps()
        .iter()
        .map(|&rep| {
            tuple_digits(rep, n, m, &mut y);
            f(&mut y);
            let x = &v[space.orbit_of(y.iter().fold(0, |acc, &d| acc * n + d))];
            if conj {
                x.conjugate()
            } else {
                x.clone()
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::GaussianRational as G;

    fn dense(n: usize, m: usize, f: impl Fn(&[usize]) -> i64) -> (LevelSpace, Vec<G>) {
        let s = LevelSpace::trivial(n, m);
        let v = (0..s.dim()).map(|t| G::from_int(f(&super::super::space::tuple_of(t, n, m)))).collect();
        (s, v)
    }

    #[test]
    fn small_jones_elements() {
        let n = 3;
        let e0 = Plan::compile(Generator::Jones(0), n).eval::<G>(&LevelSpace::trivial(n, 2), &[]);
        assert!(e0.iter().all(|x| *x == G::from_int(1)));
        let (_, e1) = dense(n, 3, |t| i64::from(t[0] == t[1] && t[1] == t[2]));
        assert_eq!(Plan::compile(Generator::Jones(1), n).eval::<G>(&LevelSpace::trivial(n, 3), &[]), e1);
        let (_, e2) = dense(n, 4, |t| i64::from(t[0] == t[3]));
        assert_eq!(Plan::compile(Generator::Jones(2), n).eval::<G>(&LevelSpace::trivial(n, 4), &[]), e2);
    }

    #[test]
    fn inclusion_and_expectation_at_low_levels() {
        let n = 3;
        let (s0, one) = dense(n, 0, |_| 1);
        let incl0 = Plan::compile(Generator::Incl(0), n).eval(&LevelSpace::trivial(n, 1), &[(&s0, &one)]);
        assert!(incl0.iter().all(|x| *x == G::from_int(1)));
        let (s1, v) = dense(n, 1, |t| t[0] as i64 + 1);
        let incl1 = Plan::compile(Generator::Incl(1), n).eval(&LevelSpace::trivial(n, 2), &[(&s1, &v)]);
        let (_, diag) = dense(n, 2, |t| if t[0] == t[1] { t[0] as i64 + 1 } else { 0 });
        assert_eq!(incl1, diag);
        let (s2, a) = dense(n, 2, |t| (t[0] * 3 + t[1]) as i64);
        let e1 = Plan::compile(Generator::Expect(1), n).eval(&s1, &[(&s2, &a)]);
        assert_eq!(e1, vec![G::from_int(0), G::from_int(4), G::from_int(8)]);
        let e0 = Plan::compile(Generator::Expect(0), n).eval(&s0, &[(&s1, &v)]);
        assert_eq!(e0, vec![G::from_int(6)]);
    }
}
