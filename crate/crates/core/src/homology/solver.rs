//! Backtracking search with single-unknown propagation.
//!
//! `u` is branched first over the units of Z/NZ. Within a branch, any relation
//! with exactly one unassigned variable is solved by trying every residue:
//! no fit prunes the branch and a unique fit assigns the variable. Otherwise
//! the search branches on the variable that sits in the most relations with
//! two unknowns.

use super::{units_mod, Assignment, Compiled, CountResult, HomologyError, Presentation};

/// Solutions beyond this many are counted but not stored.
pub const SOLUTION_LIMIT: usize = 100_000;

struct Search<'a> {
    n: u64,
    mu: u64,
    rels: &'a [Compiled],
    /// Relation indices mentioning each variable.
    occurs: Vec<Vec<usize>>,
    count: u64,
    limit: usize,
    solutions: Vec<Assignment>,
}

impl Search<'_> {
    fn unknowns(&self, r: &Compiled, a: &[Option<u64>]) -> (usize, Option<usize>) {
        let mut k = 0;
        let mut last = None;
        for &v in &r.vars {
            if a[v].is_none() {
                k += 1;
                last = Some(v);
            }
        }
        (k, last)
    }

    /// Returns false on contradiction.
    fn propagate(&self, a: &mut [Option<u64>]) -> bool {
        loop {
            let mut changed = false;
            for r in self.rels {
                match self.unknowns(r, a) {
                    (0, _) => {
                        if r.eval(self.n, |v| a[v].expect("assigned")) != 0 {
                            return false;
                        }
                    }
                    (1, Some(x)) => {
                        let mut fit = None;
                        let mut fits = 0;
                        for val in 0..self.n {
                            a[x] = Some(val);
                            if r.eval(self.n, |v| a[v].expect("assigned")) == 0 {
                                fits += 1;
                                fit = Some(val);
                                if fits > 1 {
                                    break;
                                }
                            }
                        }
                        a[x] = None;
                        match fits {
                            0 => return false,
                            1 => {
                                a[x] = fit;
                                changed = true;
                            }
                            _ => {}
                        }
                    }
                    _ => {}
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn pick(&self, a: &[Option<u64>]) -> Option<usize> {
        let mut best: Option<((usize, usize), usize)> = None;
        for (v, slot) in a.iter().enumerate() {
            if slot.is_some() {
                continue;
            }
            let tight = self.occurs[v].iter().filter(|&&r| self.unknowns(&self.rels[r], a).0 == 2).count();
            let key = (tight, self.occurs[v].len());
            if best.is_none_or(|(k, _)| key > k) {
                best = Some((key, v));
            }
        }
        best.map(|(_, v)| v)
    }

    fn run(&mut self, mut a: Vec<Option<u64>>) {
        if !self.propagate(&mut a) {
            return;
        }
        let Some(v) = self.pick(&a) else {
            self.count += 1;
            if self.solutions.len() < self.limit {
                let values = a.into_iter().map(|x| x.expect("complete")).collect();
                self.solutions.push(Assignment { mu: self.mu, values });
            }
            return;
        };
        for val in 0..self.n {
            let mut next = a.clone();
            next[v] = Some(val);
            self.run(next);
        }
    }
}

/// Counts ring maps from the presented algebra to Z/NZ with `u` sent to a unit.
pub fn count_augmentations(p: &Presentation, n: u64) -> Result<CountResult, HomologyError> {
    count_augmentations_limited(p, n, SOLUTION_LIMIT)
}

pub fn count_augmentations_limited(p: &Presentation, n: u64, limit: usize) -> Result<CountResult, HomologyError> {
    if n < 2 {
        return Err(HomologyError::Modulus(n));
    }
    let nv = p.variables.len();
    let mut count = 0;
    let mut solutions = Vec::new();
    for mu in units_mod(n) {
        let rels = p.compile(n, mu);
        let mut occurs = vec![Vec::new(); nv];
        for (ri, r) in rels.iter().enumerate() {
            for &v in &r.vars {
                occurs[v].push(ri);
            }
        }
        let mut s = Search {
            n,
            mu,
            rels: &rels,
            occurs,
            count: 0,
            limit: limit.saturating_sub(solutions.len()),
            solutions: Vec::new(),
        };
        s.run(vec![None; nv]);
        count += s.count;
        solutions.extend(s.solutions);
    }
    solutions.sort();
    let truncated = (solutions.len() as u64) < count;
    Ok(CountResult { modulus: n, count, solutions, truncated })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triples(r: &CountResult) -> Vec<(u64, u64, u64)> {
        r.solutions.iter().map(|a| (a.mu, a.values[0], a.values[1])).collect()
    }

    #[test]
    fn spun_relations_mod_3() {
        let p = Presentation::parse("u*(1+u) + x - y*x\n(1+u) + u*y - y*x\n").unwrap();
        let r = count_augmentations(&p, 3).unwrap();
        assert_eq!(r.count, 3);
        assert_eq!(triples(&r), vec![(1, 2, 2), (2, 0, 0), (2, 2, 1)]);
    }

    #[test]
    fn free_variable_mod_2() {
        let p = Presentation::parse("vars x").unwrap();
        assert_eq!(count_augmentations(&p, 2).unwrap().count, 2);
    }

    #[test]
    fn modulus_must_be_at_least_two() {
        assert!(matches!(count_augmentations(&Presentation::default(), 1), Err(HomologyError::Modulus(1))));
    }

    #[test]
    fn constant_relation() {
        let p = Presentation::parse("3").unwrap();
        assert_eq!(count_augmentations(&p, 3).unwrap().count, 2);
        assert_eq!(count_augmentations(&p, 2).unwrap().count, 0);
        // 1 + u vanishes only at u = -1
        let p = Presentation::parse("1 + u").unwrap();
        assert_eq!(count_augmentations(&p, 5).unwrap().solutions, vec![Assignment { mu: 4, values: vec![] }]);
    }

    #[test]
    fn truncation_keeps_count() {
        let p = Presentation::parse("vars x y z").unwrap();
        let r = count_augmentations_limited(&p, 3, 5).unwrap();
        assert_eq!(r.count, 2 * 27);
        assert_eq!(r.solutions.len(), 5);
        assert!(r.truncated);
    }
}
