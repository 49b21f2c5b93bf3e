//! Families of sets built from relations on a small ground set: partial
//! orders, comparability graphs, ac-orders, and finite windows of the
//! integer lattice.

use std::collections::{BTreeSet, HashMap, HashSet};

use thiserror::Error;

use crate::gsystem::{build_gsystem, CubeGraph, GSystem, GSystemError, SetFamily};

/// Largest ground set the relation enumerators accept.
pub const MAX_RELATION_ELEMENTS: usize = 6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("{what} on {n} elements exceeds the enumeration budget of {max}")]
    TooLarge {
        what: &'static str,
        n: usize,
        max: usize,
    },
    #[error(transparent)]
    GSystem(#[from] GSystemError),
}

fn check_budget(what: &'static str, n: usize, max: usize) -> Result<(), FamilyError> {
    if n > max {
        return Err(FamilyError::TooLarge { what, n, max });
    }
    Ok(())
}

/// Name of element `i`: `a`, `b`, ...
pub fn element_name(i: usize) -> String {
    ((b'a' + i as u8) as char).to_string()
}

/// A binary relation on `{0, .., n-1}`, `n <= 8`, stored as a bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Relation {
    n: usize,
    bits: u64,
}

impl Relation {
    pub fn empty(n: usize) -> Self {
        assert!(n <= 8);
        Relation { n, bits: 0 }
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, usize)>>(n: usize, pairs: I) -> Self {
        let mut r = Relation::empty(n);
        for (x, y) in pairs {
            r.insert(x, y);
        }
        r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.bits >> (x * self.n + y) & 1 == 1
    }

    pub fn insert(&mut self, x: usize, y: usize) {
        assert!(x < self.n && y < self.n);
        self.bits |= 1 << (x * self.n + y);
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n;
        (0..n * n)
            .filter(move |&k| self.bits >> k & 1 == 1)
            .map(move |k| (k / n, k % n))
    }

    pub fn is_irreflexive(&self) -> bool {
        (0..self.n).all(|x| !self.contains(x, x))
    }

    pub fn is_asymmetric(&self) -> bool {
        self.pairs().all(|(x, y)| !self.contains(y, x))
    }

    pub fn is_transitive(&self) -> bool {
        self.pairs().all(|(x, y)| (0..self.n).all(|z| !self.contains(y, z) || self.contains(x, z)))
    }

    /// Irreflexive and transitive.
    pub fn is_strict_partial_order(&self) -> bool {
        self.is_irreflexive() && self.is_transitive()
    }

    /// `xy` for the pair `(x, y)`.
    pub fn render(&self) -> String {
        let names: Vec<String> = self
            .pairs()
            .map(|(x, y)| format!("{}{}", element_name(x), element_name(y)))
            .collect();
        format!("{{{}}}", names.join(","))
    }
}

/// All strict partial orders on `n` elements, sorted.
///
/// Orders on `k + 1` elements extend orders on `k` elements by placing the
/// new element above a down-closed set `D` and below an up-closed set `U`
/// with every element of `D` below every element of `U`.
pub fn enumerate_partial_orders(n: usize) -> Result<Vec<Relation>, FamilyError> {
    check_budget("partial orders", n, MAX_RELATION_ELEMENTS)?;
    let mut orders = vec![Vec::<(usize, usize)>::new()];
    for k in 0..n {
        let mut next = Vec::new();
        for order in &orders {
            let below = |x: usize| order.iter().filter(move |p| p.1 == x).map(|p| p.0);
            let above = |x: usize| order.iter().filter(move |p| p.0 == x).map(|p| p.1);
            let less = |x: usize, y: usize| order.contains(&(x, y));
            for down in 0u32..1 << k {
                let in_down = |x: usize| down >> x & 1 == 1;
                if !(0..k).filter(|&d| in_down(d)).all(|d| below(d).all(in_down)) {
                    continue;
                }
                for up in 0u32..1 << k {
                    if up & down != 0 {
                        continue;
                    }
                    let in_up = |x: usize| up >> x & 1 == 1;
                    if !(0..k).filter(|&u| in_up(u)).all(|u| above(u).all(in_up)) {
                        continue;
                    }
                    let compatible = (0..k)
                        .filter(|&d| in_down(d))
                        .all(|d| (0..k).filter(|&u| in_up(u)).all(|u| less(d, u)));
                    if !compatible {
                        continue;
                    }
                    let mut extended = order.clone();
                    extended.extend((0..k).filter(|&d| in_down(d)).map(|d| (d, k)));
                    extended.extend((0..k).filter(|&u| in_up(u)).map(|u| (k, u)));
                    next.push(extended);
                }
            }
        }
        orders = next;
    }
    let mut result: Vec<Relation> = orders
        .into_iter()
        .map(|pairs| Relation::from_pairs(n, pairs))
        .collect();
    result.sort();
    Ok(result)
}

/// Ground `ab, ac, .., bc, ..`: unordered pairs of `n` elements.
fn edge_universe(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
        .collect()
}

fn sorted_family(ground: Vec<String>, members: HashSet<BTreeSet<usize>>) -> Result<SetFamily, FamilyError> {
    let mut members: Vec<BTreeSet<usize>> = members.into_iter().collect();
    members.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(SetFamily::new(ground, members)?)
}

/// Edge sets of the comparability graphs on `n` vertices.
pub fn comparability_family(n: usize) -> Result<SetFamily, FamilyError> {
    let universe = edge_universe(n);
    let ground = universe
        .iter()
        .map(|&(x, y)| format!("{}{}", element_name(x), element_name(y)))
        .collect();
    let members: HashSet<BTreeSet<usize>> = enumerate_partial_orders(n)?
        .iter()
        .map(|r| {
            universe
                .iter()
                .enumerate()
                .filter(|(_, &(x, y))| r.contains(x, y) || r.contains(y, x))
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    sorted_family(ground, members)
}

/// The ac-order condition: asymmetric, and whenever `(x, y)` and `(y, z)`
/// are in the relation, every `w` has `(x, w)` or `(w, z)` in it.
pub fn is_ac_order(r: &Relation) -> bool {
    if !r.is_asymmetric() {
        return false;
    }
    let n = r.n();
    r.pairs().all(|(x, y)| {
        (0..n)
            .filter(|&z| r.contains(y, z))
            .all(|z| (0..n).all(|w| r.contains(x, w) || r.contains(w, z)))
    })
}

/// All ac-orders on `n` elements, sorted.
///
/// Taking `w = x` in the condition gives transitivity, so every ac-order is
/// a strict partial order and the partial orders are filtered.
pub fn enumerate_ac_orders(n: usize) -> Result<Vec<Relation>, FamilyError> {
    Ok(enumerate_partial_orders(n)?
        .into_iter()
        .filter(is_ac_order)
        .collect())
}

fn ordered_pair_ground(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|x| (0..n).filter(move |&y| y != x).map(move |y| (x, y)))
        .collect()
}

/// Relations as sets over the ground of ordered pairs `ab, ac, ..`.
pub fn relation_family(n: usize, relations: &[Relation]) -> Result<SetFamily, FamilyError> {
    let universe = ordered_pair_ground(n);
    let ground = universe
        .iter()
        .map(|&(x, y)| format!("{}{}", element_name(x), element_name(y)))
        .collect();
    let members = relations
        .iter()
        .map(|r| {
            universe
                .iter()
                .enumerate()
                .filter(|(_, &(x, y))| r.contains(x, y))
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    sorted_family(ground, members)
}

pub fn ac_order_family(n: usize) -> Result<SetFamily, FamilyError> {
    relation_family(n, &enumerate_ac_orders(n)?)
}

pub fn partial_order_family(n: usize) -> Result<SetFamily, FamilyError> {
    relation_family(n, &enumerate_partial_orders(n)?)
}

fn member_index(family: &SetFamily) -> HashSet<&BTreeSet<usize>> {
    family.members().iter().collect()
}

fn is_minimal(family: &SetFamily, i: usize) -> bool {
    let m = family.member(i);
    !family.members().iter().any(|o| o.len() < m.len() && o.is_subset(m))
}

fn is_maximal(family: &SetFamily, i: usize) -> bool {
    let m = family.member(i);
    !family.members().iter().any(|o| o.len() > m.len() && o.is_superset(m))
}

/// Member `i` loses some element and stays in the family.
pub fn is_downgradable_set(family: &SetFamily, i: usize) -> bool {
    let index = member_index(family);
    let m = family.member(i);
    m.iter().any(|x| {
        let mut smaller = m.clone();
        smaller.remove(x);
        index.contains(&smaller)
    })
}

/// Member `i` gains some ground element and stays in the family.
pub fn is_upgradable_set(family: &SetFamily, i: usize) -> bool {
    let index = member_index(family);
    let m = family.member(i);
    (0..family.ground().len()).filter(|x| !m.contains(x)).any(|x| {
        let mut larger = m.clone();
        larger.insert(x);
        index.contains(&larger)
    })
}

/// Every member that is not minimal under inclusion is downgradable.
pub fn is_downgradable_family(family: &SetFamily) -> bool {
    (0..family.len()).all(|i| is_minimal(family, i) || is_downgradable_set(family, i))
}

/// Every member that is not maximal under inclusion is upgradable.
pub fn is_upgradable_family(family: &SetFamily) -> bool {
    (0..family.len()).all(|i| is_maximal(family, i) || is_upgradable_set(family, i))
}

/// Two members at distance 2 with no member at distance 1 from both.
pub fn wellgradedness_gap_witness(family: &SetFamily) -> Option<(usize, usize)> {
    let index: HashMap<&BTreeSet<usize>, usize> =
        family.members().iter().enumerate().map(|(i, m)| (m, i)).collect();
    let flip = |set: &BTreeSet<usize>, x: usize| {
        let mut out = set.clone();
        if !out.remove(&x) {
            out.insert(x);
        }
        out
    };
    let n = family.ground().len();
    for (i, a) in family.members().iter().enumerate() {
        for x in 0..n {
            let ax = flip(a, x);
            for y in x + 1..n {
                let Some(&j) = index.get(&flip(&ax, y)) else { continue };
                if j > i && !index.contains_key(&ax) && !index.contains_key(&flip(a, y)) {
                    return Some((i, j));
                }
            }
        }
    }
    None
}

/// Every two members at distance `d` are joined through a member at
/// distance 1 from the first and `d - 1` from the second.
pub fn is_well_graded(family: &SetFamily) -> bool {
    let index = member_index(family);
    family.members().iter().all(|a| {
        family.members().iter().all(|b| {
            a == b
                || a.symmetric_difference(b).any(|x| {
                    let mut step = a.clone();
                    if !step.remove(x) {
                        step.insert(*x);
                    }
                    index.contains(&step)
                })
        })
    })
}

/// Unary encoding `{(i, l) : 1 <= l <= v_i}` of a lattice point; element
/// `(i, l)` is named `<axis letter><l>`.
pub fn unary_encoding(point: &[usize], extent: usize) -> BTreeSet<usize> {
    point
        .iter()
        .enumerate()
        .flat_map(|(i, &v)| (0..v).map(move |l| i * extent + l))
        .collect()
}

/// The points of `{0..extent}^dims` in lexicographic order.
pub fn lattice_points(dims: usize, extent: usize) -> Vec<Vec<usize>> {
    let mut points = vec![vec![]];
    for _ in 0..dims {
        points = points
            .into_iter()
            .flat_map(|p| {
                (0..=extent).map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    points
}

/// The grid graph on `{0..extent}^dims`, as a cube subgraph through the
/// unary encoding.
pub fn lattice_window(dims: usize, extent: usize) -> Result<GSystem, FamilyError> {
    let ground = (0..dims)
        .flat_map(|i| (1..=extent).map(move |l| format!("{}{l}", element_name(i))))
        .collect();
    let points = lattice_points(dims, extent);
    let members = points.iter().map(|p| unary_encoding(p, extent)).collect();
    let family = SetFamily::new(ground, members)?;
    let mut edges = Vec::new();
    for (i, p) in points.iter().enumerate() {
        for (j, q) in points.iter().enumerate().skip(i + 1) {
            let gap: usize = p.iter().zip(q).map(|(a, b)| a.abs_diff(*b)).sum();
            if gap == 1 {
                edges.push((i, j));
            }
        }
    }
    Ok(build_gsystem(CubeGraph::new(family, edges)?)?)
}

/// The induced G-system of a family.
pub fn induced_gsystem(family: SetFamily) -> Result<GSystem, FamilyError> {
    Ok(build_gsystem(CubeGraph::induced(family)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::{classify, SystemKind};

    fn chain() -> SetFamily {
        SetFamily::from_names(["x", "y"], [vec![], vec!["x"], vec!["x", "y"]]).unwrap()
    }

    #[test]
    fn grading_predicates() {
        assert!(is_downgradable_family(&chain()));
        assert!(is_upgradable_family(&chain()));
        let gap = SetFamily::from_names(["x", "y"], [vec![], vec!["x", "y"]]).unwrap();
        assert!(!is_downgradable_family(&gap));
        assert!(!is_downgradable_set(&gap, 1));
        assert!(!is_upgradable_family(&gap));
    }

    #[test]
    fn order_counts() {
        let counts: Vec<usize> = (0..=5)
            .map(|n| enumerate_partial_orders(n).unwrap().len())
            .collect();
        assert_eq!(counts, [1, 1, 3, 19, 219, 4231]);
        assert!(enumerate_partial_orders(7).is_err());
    }

    #[test]
    fn small_comparability_families() {
        let f2 = comparability_family(2).unwrap();
        assert_eq!(f2.len(), 2);
        assert_eq!(f2.render(f2.member(0)), "{}");
        assert_eq!(f2.render(f2.member(1)), "{ab}");
        assert_eq!(comparability_family(3).unwrap().len(), 8);
        let f4 = comparability_family(4).unwrap();
        assert_eq!(f4.len(), 64);
        assert!(is_downgradable_family(&f4));
    }

    #[test]
    fn gap_witnesses() {
        assert_eq!(wellgradedness_gap_witness(&chain()), None);
        assert_eq!(wellgradedness_gap_witness(&SetFamily::power_set(["x", "y", "z"]).unwrap()), None);
        let gap = SetFamily::from_names(["x", "y"], [vec!["x"], vec!["y"]]).unwrap();
        assert_eq!(wellgradedness_gap_witness(&gap), Some((0, 1)));
    }

    #[test]
    fn ac_orders() {
        assert!(is_ac_order(&Relation::empty(3)));
        let linear = Relation::from_pairs(3, [(0, 1), (1, 2), (0, 2)]);
        assert!(is_ac_order(&linear));
        let path = Relation::from_pairs(4, [(0, 1), (1, 2)]);
        assert!(!is_ac_order(&path));
        assert!(!is_ac_order(&Relation::from_pairs(2, [(0, 1), (1, 0)])));
    }

    #[test]
    fn lattice_windows() {
        let line = lattice_window(1, 2).unwrap();
        assert_eq!(line.system().state_count(), 3);
        assert_eq!(classify(line.system()).kind, SystemKind::Medium);
        let square = lattice_window(2, 1).unwrap();
        assert_eq!(square.system().state_count(), 4);
        assert_eq!(classify(square.system()).kind, SystemKind::Medium);
        let grid = lattice_window(2, 2).unwrap();
        assert_eq!(grid.system().state_count(), 9);
        assert_ne!(classify(grid.system()).kind, SystemKind::NotCubical);
        assert_eq!(grid.graph().edges(), &grid.family().induced_edges()[..]);
    }
}
