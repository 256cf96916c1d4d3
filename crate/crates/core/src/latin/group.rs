use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{FamilyTag, LatinSquare, ORDER_CAP};
use crate::error::{Error, Result};

/// A finite group given by a small presentation.
///
/// Elements are indexed `0..order` with the identity at 0:
/// cyclic groups by residue, `Z_b^m` by base-`b` digits (first coordinate most
/// significant), dihedral groups as rotations `0..m` followed by reflections,
/// and direct products lexicographically over coordinate tuples.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupKind {
    Cyclic { n: usize },
    ElementaryAbelian { base: usize, exponent: u32 },
    Dihedral { m: usize },
    DirectProduct { factors: Vec<GroupKind> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum TableMode {
    /// `L[x][y] = x y^-1`; graphs are Cayley graphs.
    #[default]
    Division,
    /// `L[x][y] = x y`; graphs are Cayley sum graphs.
    Multiplication,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub group: GroupKind,
    #[serde(default)]
    pub table: TableMode,
}

impl GroupKind {
    /// Group order, or an error when the presentation is malformed or too large.
    pub fn order(&self) -> Result<usize> {
        let too_big = |order: usize| Error::OrderCapExceeded {
            order,
            cap: ORDER_CAP,
        };
        let order = match self {
            GroupKind::Cyclic { n } => {
                if *n == 0 {
                    return Err(Error::UnsupportedGroup("cyclic group of order 0".into()));
                }
                *n
            }
            GroupKind::ElementaryAbelian { base, exponent } => {
                if *base < 2 || *exponent == 0 {
                    return Err(Error::UnsupportedGroup(format!(
                        "elementary abelian group with base {base} and exponent {exponent}"
                    )));
                }
                base.checked_pow(*exponent).ok_or(too_big(usize::MAX))?
            }
            GroupKind::Dihedral { m } => {
                if *m == 0 {
                    return Err(Error::UnsupportedGroup("dihedral group D_0".into()));
                }
                m.checked_mul(2).ok_or(too_big(usize::MAX))?
            }
            GroupKind::DirectProduct { factors } => {
                if factors.is_empty() {
                    return Err(Error::UnsupportedGroup("empty direct product".into()));
                }
                let mut order = 1usize;
                for f in factors {
                    order = order.checked_mul(f.order()?).ok_or(too_big(usize::MAX))?;
                }
                order
            }
        };
        if order > ORDER_CAP {
            return Err(too_big(order));
        }
        Ok(order)
    }

    // `order()` must have succeeded before these are called.
    fn mul(&self, a: usize, b: usize) -> usize {
        match self {
            GroupKind::Cyclic { n } => (a + b) % n,
            GroupKind::ElementaryAbelian { base, exponent } => {
                let (mut a, mut b) = (a, b);
                let mut out = 0;
                let mut place = 1;
                for _ in 0..*exponent {
                    out += ((a % base + b % base) % base) * place;
                    a /= base;
                    b /= base;
                    place *= base;
                }
                out
            }
            GroupKind::Dihedral { m } => {
                // element index f*m + i stands for r^i s^f
                let (fa, ia) = (a / m, a % m);
                let (fb, ib) = (b / m, b % m);
                let rot = if fa == 0 { (ia + ib) % m } else { (ia + m - ib) % m };
                ((fa + fb) % 2) * m + rot
            }
            GroupKind::DirectProduct { factors } => {
                let orders: Vec<usize> = factors.iter().map(|f| f.order().unwrap()).collect();
                let (xs, ys) = (decode(a, &orders), decode(b, &orders));
                let zs: Vec<usize> = factors
                    .iter()
                    .zip(xs.iter().zip(&ys))
                    .map(|(f, (&x, &y))| f.mul(x, y))
                    .collect();
                encode(&zs, &orders)
            }
        }
    }

    fn inv(&self, a: usize) -> usize {
        match self {
            GroupKind::Cyclic { n } => (n - a) % n,
            GroupKind::ElementaryAbelian { base, exponent } => {
                let mut a = a;
                let mut out = 0;
                let mut place = 1;
                for _ in 0..*exponent {
                    out += ((base - a % base) % base) * place;
                    a /= base;
                    place *= base;
                }
                out
            }
            GroupKind::Dihedral { m } => {
                if a < *m {
                    (m - a) % m
                } else {
                    a
                }
            }
            GroupKind::DirectProduct { factors } => {
                let orders: Vec<usize> = factors.iter().map(|f| f.order().unwrap()).collect();
                let xs = decode(a, &orders);
                let zs: Vec<usize> = factors.iter().zip(&xs).map(|(f, &x)| f.inv(x)).collect();
                encode(&zs, &orders)
            }
        }
    }
}

fn decode(mut index: usize, orders: &[usize]) -> Vec<usize> {
    let mut out = vec![0; orders.len()];
    for (slot, &o) in out.iter_mut().zip(orders).rev() {
        *slot = index % o;
        index /= o;
    }
    out
}

fn encode(coords: &[usize], orders: &[usize]) -> usize {
    coords.iter().zip(orders).fold(0, |acc, (&c, &o)| acc * o + c)
}

/// Division or multiplication table of the group.
pub fn group_table(spec: &GroupSpec) -> Result<LatinSquare> {
    let n = spec.group.order()?;
    let g = &spec.group;
    let inverses: Vec<usize> = (0..n).map(|y| g.inv(y)).collect();
    let mut cells = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            cells.push(match spec.table {
                TableMode::Division => g.mul(x, inverses[y]),
                TableMode::Multiplication => g.mul(x, y),
            });
        }
    }
    let tag = match spec.table {
        TableMode::Division => FamilyTag::GroupDivision,
        TableMode::Multiplication => FamilyTag::GroupMultiplication,
    };
    LatinSquare::from_flat(n, &cells, tag)
}

/// Parses `z8`, `z2^3`, `d5`, and `x`-separated products such as `z2xd4`.
impl FromStr for GroupKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnsupportedGroup(format!("cannot parse group `{s}`"));
        let parse_factor = |f: &str| -> Result<GroupKind> {
            let num = |t: &str| t.parse::<usize>().map_err(|_| bad());
            if let Some(rest) = f.strip_prefix('z') {
                match rest.split_once('^') {
                    Some((b, m)) => Ok(GroupKind::ElementaryAbelian {
                        base: num(b)?,
                        exponent: m.parse().map_err(|_| bad())?,
                    }),
                    None => Ok(GroupKind::Cyclic { n: num(rest)? }),
                }
            } else if let Some(rest) = f.strip_prefix('d') {
                Ok(GroupKind::Dihedral { m: num(rest)? })
            } else {
                Err(bad())
            }
        };
        let s_lower = s.trim().to_ascii_lowercase();
        let factors: Vec<GroupKind> = s_lower
            .split('x')
            .map(parse_factor)
            .collect::<Result<_>>()?;
        let kind = if factors.len() == 1 {
            factors.into_iter().next().unwrap()
        } else {
            GroupKind::DirectProduct { factors }
        };
        kind.order()?;
        Ok(kind)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::latin::validate_latin;

    fn table(group: GroupKind, table: TableMode) -> LatinSquare {
        group_table(&GroupSpec { group, table }).unwrap()
    }

    #[test]
    fn klein_division_is_xor() {
        let l = table(
            GroupKind::ElementaryAbelian {
                base: 2,
                exponent: 2,
            },
            TableMode::Division,
        );
        assert_eq!(
            l.to_rows(),
            vec![
                vec![0, 1, 2, 3],
                vec![1, 0, 3, 2],
                vec![2, 3, 0, 1],
                vec![3, 2, 1, 0]
            ]
        );
    }

    #[test]
    fn division_tables_have_identity_diagonal_only() {
        let groups = [
            GroupKind::Cyclic { n: 7 },
            GroupKind::Dihedral { m: 5 },
            GroupKind::ElementaryAbelian {
                base: 3,
                exponent: 2,
            },
            GroupKind::DirectProduct {
                factors: vec![GroupKind::Cyclic { n: 2 }, GroupKind::Dihedral { m: 3 }],
            },
        ];
        for g in groups {
            let l = table(g, TableMode::Division);
            let n = l.order();
            for x in 0..n {
                for y in 0..n {
                    assert_eq!(l.get(x, y) == 0, x == y);
                }
            }
        }
    }

    #[test]
    fn dihedral_three_is_latin_and_nonabelian() {
        for mode in [TableMode::Division, TableMode::Multiplication] {
            let l = table(GroupKind::Dihedral { m: 3 }, mode);
            assert_eq!(l.order(), 6);
            assert!(validate_latin(&l.to_rows()).is_ok());
        }
        let l = table(GroupKind::Dihedral { m: 3 }, TableMode::Multiplication);
        let abelian = (0..6).all(|x| (0..6).all(|y| l.get(x, y) == l.get(y, x)));
        assert!(!abelian);
    }

    #[test]
    fn dihedral_group_is_associative() {
        let g = GroupKind::Dihedral { m: 4 };
        for a in 0..8 {
            assert_eq!(g.mul(a, g.inv(a)), 0);
            for b in 0..8 {
                for c in 0..8 {
                    assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
                }
            }
        }
    }

    #[test]
    fn product_order_is_product_of_factor_orders() {
        let g = GroupKind::DirectProduct {
            factors: vec![
                GroupKind::Cyclic { n: 3 },
                GroupKind::Dihedral { m: 2 },
                GroupKind::ElementaryAbelian {
                    base: 2,
                    exponent: 2,
                },
            ],
        };
        assert_eq!(g.order().unwrap(), 3 * 4 * 4);
    }

    #[test]
    fn rejects_bad_groups() {
        assert!(GroupKind::Cyclic { n: 0 }.order().is_err());
        assert!(GroupKind::DirectProduct { factors: vec![] }.order().is_err());
        assert!(matches!(
            GroupKind::Cyclic { n: 5000 }.order(),
            Err(Error::OrderCapExceeded { .. })
        ));
        assert!(matches!(
            GroupKind::ElementaryAbelian {
                base: 2,
                exponent: 13
            }
            .order(),
            Err(Error::OrderCapExceeded { .. })
        ));
    }

    #[test]
    fn parses_group_strings() {
        assert_eq!("z8".parse::<GroupKind>().unwrap(), GroupKind::Cyclic { n: 8 });
        assert_eq!(
            "Z3^4".parse::<GroupKind>().unwrap(),
            GroupKind::ElementaryAbelian {
                base: 3,
                exponent: 4
            }
        );
        assert_eq!(
            "z2xd3".parse::<GroupKind>().unwrap(),
            GroupKind::DirectProduct {
                factors: vec![GroupKind::Cyclic { n: 2 }, GroupKind::Dihedral { m: 3 }]
            }
        );
        assert!("q8".parse::<GroupKind>().is_err());
        assert!("z".parse::<GroupKind>().is_err());
    }
}
