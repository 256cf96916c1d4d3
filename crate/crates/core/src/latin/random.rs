//! Approximately uniform Latin squares from the Jacobson–Matthews chain.
//!
//! The square is viewed as a 0/1 incidence cube over (row, column, symbol)
//! with exactly one 1 on every axis-parallel line. A move adds +1/-1 around a
//! 2x2x2 sub-cube; it may leave a single -1 entry ("improper" state), from
//! which the next move starts. Only proper states are returned.

use rand::Rng as _;

use super::{cyclic_difference_table, FamilyTag, LatinSquare, ORDER_CAP};
use crate::error::{Error, Result};
use crate::rng::{rng_from_seed, Rng};

/// Moves spent per `n^3` before the first proper state is accepted.
pub const BURN_IN_FACTOR: u64 = 10;

#[derive(Clone, Copy, Default)]
struct Line {
    len: u8,
    items: [u16; 3],
}

impl Line {
    fn contains(&self, v: u16) -> bool {
        self.items[..self.len as usize].contains(&v)
    }

    fn push(&mut self, v: u16) {
        self.items[self.len as usize] = v;
        self.len += 1;
    }

    fn remove(&mut self, v: u16) {
        let len = self.len as usize;
        let pos = self.items[..len].iter().position(|&x| x == v).unwrap();
        self.items[pos] = self.items[len - 1];
        self.len -= 1;
    }

    fn only(&self) -> usize {
        debug_assert_eq!(self.len, 1);
        self.items[0] as usize
    }

    fn pick(&self, rng: &mut Rng) -> usize {
        self.items[rng.random_range(0..self.len as usize)] as usize
    }
}

struct Cube {
    n: usize,
    /// (row, col) -> symbols with +1
    rc: Vec<Line>,
    /// (row, symbol) -> columns with +1
    rs: Vec<Line>,
    /// (col, symbol) -> rows with +1
    cs: Vec<Line>,
    negative: Option<(usize, usize, usize)>,
}

impl Cube {
    fn from_square(l: &LatinSquare) -> Self {
        let n = l.order();
        let mut cube = Cube {
            n,
            rc: vec![Line::default(); n * n],
            rs: vec![Line::default(); n * n],
            cs: vec![Line::default(); n * n],
            negative: None,
        };
        for r in 0..n {
            for c in 0..n {
                cube.set_one(r, c, l.get(r, c));
            }
        }
        cube
    }

    fn set_one(&mut self, r: usize, c: usize, s: usize) {
        let n = self.n;
        self.rc[r * n + c].push(s as u16);
        self.rs[r * n + s].push(c as u16);
        self.cs[c * n + s].push(r as u16);
    }

    fn clear_one(&mut self, r: usize, c: usize, s: usize) {
        let n = self.n;
        self.rc[r * n + c].remove(s as u16);
        self.rs[r * n + s].remove(c as u16);
        self.cs[c * n + s].remove(r as u16);
    }

    fn increment(&mut self, r: usize, c: usize, s: usize) {
        if self.negative == Some((r, c, s)) {
            self.negative = None;
        } else {
            debug_assert!(!self.rc[r * self.n + c].contains(s as u16));
            self.set_one(r, c, s);
        }
    }

    fn decrement(&mut self, r: usize, c: usize, s: usize) {
        if self.rc[r * self.n + c].contains(s as u16) {
            self.clear_one(r, c, s);
        } else {
            debug_assert!(self.negative.is_none());
            self.negative = Some((r, c, s));
        }
    }

    fn step(&mut self, rng: &mut Rng) {
        let n = self.n;
        let (r, c, s, r1, c1, s1);
        match self.negative {
            None => {
                r = rng.random_range(0..n);
                c = rng.random_range(0..n);
                let current = self.rc[r * n + c].only();
                // uniform over the n - 1 symbols not in the cell
                let mut t = rng.random_range(0..n - 1);
                if t >= current {
                    t += 1;
                }
                s = t;
                s1 = current;
                c1 = self.rs[r * n + s].only();
                r1 = self.cs[c * n + s].only();
            }
            Some((nr, nc, ns)) => {
                r = nr;
                c = nc;
                s = ns;
                s1 = self.rc[r * n + c].pick(rng);
                c1 = self.rs[r * n + s].pick(rng);
                r1 = self.cs[c * n + s].pick(rng);
            }
        }
        self.increment(r, c, s);
        self.decrement(r, c, s1);
        self.decrement(r, c1, s);
        self.decrement(r1, c, s);
        self.decrement(r1, c1, s1);
        self.increment(r, c1, s1);
        self.increment(r1, c, s1);
        self.increment(r1, c1, s);
    }

    fn is_proper(&self) -> bool {
        self.negative.is_none()
    }

    fn cells(&self) -> Vec<usize> {
        self.rc.iter().map(Line::only).collect()
    }
}

/// A Latin square of order `n` after `10 n^3` chain moves from the cyclic table,
/// stopping at the first proper state thereafter. Deterministic in `seed`.
pub fn random_latin_square(n: usize, seed: u64) -> Result<LatinSquare> {
    if n == 0 {
        return Err(Error::OrderTooSmall { min: 1, got: 0 });
    }
    if n > ORDER_CAP {
        return Err(Error::OrderCapExceeded {
            order: n,
            cap: ORDER_CAP,
        });
    }
    let start = cyclic_difference_table(n)?;
    if n == 1 {
        return Ok(start.with_tag(FamilyTag::Random { seed }));
    }
    let mut rng = rng_from_seed(seed);
    let mut cube = Cube::from_square(&start);
    let burn_in = BURN_IN_FACTOR * (n as u64).pow(3);
    for _ in 0..burn_in {
        cube.step(&mut rng);
    }
    while !cube.is_proper() {
        cube.step(&mut rng);
    }
    LatinSquare::from_flat(n, &cube.cells(), FamilyTag::Random { seed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::latin::validate_latin;
    use std::collections::HashSet;

    #[test]
    fn order_one() {
        assert_eq!(random_latin_square(1, 3).unwrap().to_rows(), vec![vec![0]]);
        assert!(random_latin_square(0, 3).is_err());
    }

    #[test]
    fn deterministic_per_seed() {
        let a = random_latin_square(8, 7).unwrap();
        let b = random_latin_square(8, 7).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, random_latin_square(8, 8).unwrap());
    }

    #[test]
    fn always_latin() {
        for seed in 0..100 {
            let l = random_latin_square(5, seed).unwrap();
            assert!(validate_latin(&l.to_rows()).is_ok(), "seed {seed}");
        }
    }

    #[test]
    fn improper_states_stay_consistent() {
        // every line sum of the cube is 1 after each move
        let start = cyclic_difference_table(6).unwrap();
        let mut cube = Cube::from_square(&start);
        let mut rng = rng_from_seed(1);
        let n = 6;
        let mut improper_seen = false;
        for _ in 0..2000 {
            cube.step(&mut rng);
            improper_seen |= !cube.is_proper();
            let neg = cube.negative;
            let sum_line = |lines: &Vec<Line>, idx: usize, hit: bool| {
                lines[idx].len as i32 - i32::from(hit)
            };
            for a in 0..n {
                for b in 0..n {
                    let rc_hit = neg.is_some_and(|(r, c, _)| (r, c) == (a, b));
                    let rs_hit = neg.is_some_and(|(r, _, s)| (r, s) == (a, b));
                    let cs_hit = neg.is_some_and(|(_, c, s)| (c, s) == (a, b));
                    assert_eq!(sum_line(&cube.rc, a * n + b, rc_hit), 1);
                    assert_eq!(sum_line(&cube.rs, a * n + b, rs_hit), 1);
                    assert_eq!(sum_line(&cube.cs, a * n + b, cs_hit), 1);
                }
            }
        }
        assert!(improper_seen);
    }

    #[test]
    fn reaches_many_order_three_squares() {
        // all 12 Latin squares of order 3 should show up
        let seen: HashSet<Vec<Vec<usize>>> = (0..300)
            .map(|seed| random_latin_square(3, seed).unwrap().to_rows())
            .collect();
        assert_eq!(seen.len(), 12);
    }
}
