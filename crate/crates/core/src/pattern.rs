//! Link patterns: crossing (Brauer) and non-crossing (Temperley-Lieb)
//! matchings of boundary points, the generator actions e_i / f_i, arch
//! insertion, reflection, the permutation sector, and the Dyck-path encoding
//! of non-crossing patterns with its box decomposition.

use std::fmt;

#[derive(
    Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize, serde::Deserialize,
)]
#[serde(rename_all = "lowercase")]
pub enum PatternKind {
    Crossing,
    NonCrossing,
}

/// Perfect matching of N boundary points. `partner[i-1]` is the 1-based point
/// matched to i, or 0 for the point connected to infinity (odd N only).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinkPattern {
    partner: Vec<usize>,
    kind: PatternKind,
}

impl fmt::Debug for LinkPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.partner)
    }
}

impl fmt::Display for LinkPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &p) in self.partner.iter().enumerate() {
            let i = i + 1;
            if p == 0 {
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "({i},inf)")?;
                first = false;
            } else if p > i {
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "({i},{p})")?;
                first = false;
            }
        }
        Ok(())
    }
}

impl LinkPattern {
    pub fn new(partner: Vec<usize>, kind: PatternKind) -> Self {
        let p = LinkPattern { partner, kind };
        p.validate();
        p
    }

    fn validate(&self) {
        let n = self.partner.len();
        let mut infinity = 0usize;
        for (i, &p) in self.partner.iter().enumerate() {
            if p == 0 {
                infinity += 1;
            } else {
                assert!(p >= 1 && p <= n && p != i + 1, "bad partner entry");
                assert_eq!(self.partner[p - 1], i + 1, "partner map not an involution");
            }
        }
        if n % 2 == 0 {
            assert_eq!(infinity, 0, "even pattern with infinity point");
        } else {
            assert_eq!(infinity, 1, "odd pattern needs exactly one infinity point");
        }
        if self.kind == PatternKind::NonCrossing {
            assert_eq!(self.count_crossings(), 0, "crossing arches in non-crossing pattern");
        }
    }

    pub fn size(&self) -> usize {
        self.partner.len()
    }

    pub fn kind(&self) -> PatternKind {
        self.kind
    }

    pub fn partner(&self, i: usize) -> usize {
        self.partner[i - 1]
    }

    pub fn partner_array(&self) -> &[usize] {
        &self.partner
    }

    pub fn has_arch(&self, i: usize, j: usize) -> bool {
        self.partner[i - 1] == j
    }

    /// Little arch joining i and i+1.
    pub fn has_little_arch(&self, i: usize) -> bool {
        self.has_arch(i, i + 1)
    }

    /// Arches as sorted pairs; the infinity ray is reported as (i, 0).
    pub fn arches(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, &p) in self.partner.iter().enumerate() {
            let i = i + 1;
            if p == 0 {
                out.push((i, 0));
            } else if p > i {
                out.push((i, p));
            }
        }
        out
    }

    /// Maximally crossing pattern i <-> i+n (Brauer base point), even N.
    pub fn crossing_base(n_points: usize) -> Self {
        assert!(n_points % 2 == 0);
        let n = n_points / 2;
        let mut partner = vec![0; n_points];
        for i in 1..=n {
            partner[i - 1] = i + n;
            partner[i + n - 1] = i;
        }
        LinkPattern::new(partner, PatternKind::Crossing)
    }

    /// Maximally nested pattern i <-> N+1-i (TL base point), even N.
    pub fn nested_base(n_points: usize) -> Self {
        assert!(n_points % 2 == 0);
        let mut partner = vec![0; n_points];
        for i in 1..=n_points {
            partner[i - 1] = n_points + 1 - i;
        }
        LinkPattern::new(partner, PatternKind::NonCrossing)
    }

    /// All little arches (2i-1, 2i), even N.
    pub fn fundamental(n_points: usize) -> Self {
        assert!(n_points % 2 == 0);
        let mut partner = vec![0; n_points];
        for i in (1..n_points).step_by(2) {
            partner[i - 1] = i + 1;
            partner[i] = i;
        }
        LinkPattern::new(partner, PatternKind::NonCrossing)
    }

    fn count_crossings(&self) -> usize {
        let n = self.partner.len();
        // treat the infinity ray from p as an arch (p, n+1)
        let arch = |i: usize| -> (usize, usize) {
            let p = self.partner[i - 1];
            if p == 0 {
                (i, n + 1)
            } else {
                (i.min(p), i.max(p))
            }
        };
        let mut arcs: Vec<(usize, usize)> = (1..=n)
            .filter(|&i| self.partner[i - 1] == 0 || self.partner[i - 1] > i)
            .map(arch)
            .collect();
        arcs.sort();
        let mut count = 0;
        for a in 0..arcs.len() {
            for b in a + 1..arcs.len() {
                let (i, j) = arcs[a];
                let (k, l) = arcs[b];
                if i < k && k < j && j < l {
                    count += 1;
                }
            }
        }
        count
    }

    /// Number of arch crossings (crossing kind).
    pub fn crossing_number(&self) -> usize {
        assert_eq!(self.kind, PatternKind::Crossing);
        self.count_crossings()
    }

    /// e_i: glue the link ends at i and i+1 and add the little arch (i, i+1).
    /// Closed loops are erased with weight 1, so a pattern that already has
    /// the little arch is fixed.
    pub fn apply_e(&self, i: usize) -> Self {
        assert!(i >= 1 && i < self.size());
        let a = self.partner[i - 1];
        let b = self.partner[i];
        if a == i + 1 {
            return self.clone();
        }
        let mut partner = self.partner.clone();
        partner[i - 1] = i + 1;
        partner[i] = i;
        if a == 0 {
            partner[b - 1] = 0;
        } else if b == 0 {
            partner[a - 1] = 0;
        } else {
            partner[a - 1] = b;
            partner[b - 1] = a;
        }
        LinkPattern::new(partner, self.kind)
    }

    /// f_i: cross the links terminating at i and i+1 (crossing kind only);
    /// fixes patterns with the little arch (i, i+1).
    pub fn apply_f(&self, i: usize) -> Self {
        assert_eq!(self.kind, PatternKind::Crossing);
        assert!(i >= 1 && i < self.size());
        let a = self.partner[i - 1];
        let b = self.partner[i];
        if a == i + 1 {
            return self.clone();
        }
        let mut partner = self.partner.clone();
        partner[i - 1] = b;
        partner[i] = a;
        if a != 0 {
            partner[a - 1] = i + 1;
        }
        if b != 0 {
            partner[b - 1] = i;
        }
        LinkPattern::new(partner, self.kind)
    }

    /// phi_i: insert a little arch occupying the new positions (i, i+1).
    pub fn insert_arch(&self, i: usize) -> Self {
        let n = self.size();
        assert!(i >= 1 && i <= n + 1);
        let shift = |j: usize| if j == 0 || j < i { j } else { j + 2 };
        let mut partner = vec![0; n + 2];
        for (k, &p) in self.partner.iter().enumerate() {
            let k_new = shift(k + 1);
            partner[k_new - 1] = shift(p);
        }
        partner[i - 1] = i + 1;
        partner[i] = i;
        LinkPattern::new(partner, self.kind)
    }

    /// Inverse of `insert_arch`: requires the little arch (i, i+1).
    pub fn remove_arch(&self, i: usize) -> Self {
        let n = self.size();
        assert!(self.has_little_arch(i), "no little arch at ({i},{})", i + 1);
        let unshift = |j: usize| if j == 0 || j < i { j } else { j - 2 };
        let mut partner = vec![0; n - 2];
        for (k, &p) in self.partner.iter().enumerate() {
            let k1 = k + 1;
            if k1 == i || k1 == i + 1 {
                continue;
            }
            partner[unshift(k1) - 1] = unshift(p);
        }
        LinkPattern::new(partner, self.kind)
    }

    /// rho: reflect the point labels i -> N+1-i.
    pub fn reflect(&self) -> Self {
        let n = self.size();
        let mut partner = vec![0; n];
        for (k, &p) in self.partner.iter().enumerate() {
            let k1 = n - k; // N+1-(k+1)
            partner[k1 - 1] = if p == 0 { 0 } else { n + 1 - p };
        }
        LinkPattern::new(partner, self.kind)
    }

    /// Drop the last point; its partner becomes the infinity point.
    pub fn drop_last_point(&self) -> Self {
        let n = self.size();
        let p = self.partner[n - 1];
        assert!(p != 0, "last point already at infinity");
        let mut partner = self.partner[..n - 1].to_vec();
        partner[p - 1] = 0;
        LinkPattern::new(partner, self.kind)
    }

    /// Drop an infinity point sitting at the last position.
    pub fn drop_infinity_last(&self) -> Option<Self> {
        let n = self.size();
        if self.partner[n - 1] != 0 {
            return None;
        }
        Some(LinkPattern::new(
            self.partner[..n - 1].to_vec(),
            self.kind,
        ))
    }

    /// For even N: Some(sigma) with i <-> n + sigma(i) when every arch joins
    /// {1..n} to {n+1..2n}; sigma is 1-based of length n.
    pub fn permutation_sector(&self) -> Option<Vec<usize>> {
        let nn = self.size();
        if nn % 2 != 0 {
            return None;
        }
        let n = nn / 2;
        let mut sigma = vec![0; n];
        for i in 1..=n {
            let p = self.partner[i - 1];
            if p <= n {
                return None;
            }
            sigma[i - 1] = p - n;
        }
        Some(sigma)
    }
}

/// All open crossing link patterns on N points, lexicographic on partner
/// arrays; cardinality (2n-1)!! for N = 2n or 2n-1.
pub fn enumerate_crossing(n_points: usize) -> Vec<LinkPattern> {
    enumerate_matchings(n_points)
        .into_iter()
        .map(|p| LinkPattern::new(p, PatternKind::Crossing))
        .collect()
}

/// All non-crossing link patterns on N points, lexicographic order;
/// Catalan-many. For odd N the infinity ray must not be enclosed by an arch.
pub fn enumerate_noncrossing(n_points: usize) -> Vec<LinkPattern> {
    enumerate_matchings(n_points)
        .into_iter()
        .filter(|p| {
            let lp = LinkPattern {
                partner: p.clone(),
                kind: PatternKind::Crossing,
            };
            lp.count_crossings() == 0
        })
        .map(|p| LinkPattern::new(p, PatternKind::NonCrossing))
        .collect()
}

fn enumerate_matchings(n_points: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut partner = vec![usize::MAX; n_points];
    let infinity_budget = n_points % 2;
    fill(&mut partner, infinity_budget, &mut out);
    out.sort();
    return out;

    fn fill(partner: &mut [usize], infinity_budget: usize, out: &mut Vec<Vec<usize>>) {
        let i = match partner.iter().position(|&p| p == usize::MAX) {
            Some(i) => i,
            None => {
                out.push(partner.to_vec());
                return;
            }
        };
        if infinity_budget > 0 {
            partner[i] = 0;
            fill(partner, infinity_budget - 1, out);
            partner[i] = usize::MAX;
        }
        for j in i + 1..partner.len() {
            if partner[j] == usize::MAX {
                partner[i] = j + 1;
                partner[j] = i + 1;
                fill(partner, infinity_budget, out);
                partner[i] = usize::MAX;
                partner[j] = usize::MAX;
            }
        }
    }
}

/// Dyck-path encoding of a non-crossing pattern of even size: +1 when a point
/// opens an arch, -1 when it closes one. `boxes_in_column(i)` counts the unit
/// boxes of the decomposition stacked over column i (1 <= i <= N-1); the e_i
/// actions building the pattern from the fundamental one are read off the
/// boxes bottom-to-top.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DyckPath {
    steps: Vec<i8>,
}

impl DyckPath {
    pub fn from_pattern(pi: &LinkPattern) -> Self {
        assert_eq!(pi.kind(), PatternKind::NonCrossing);
        assert!(pi.size() % 2 == 0, "Dyck encoding needs even size");
        let steps = (1..=pi.size())
            .map(|i| if pi.partner(i) > i { 1i8 } else { -1i8 })
            .collect();
        DyckPath { steps }
    }

    pub fn to_pattern(&self) -> LinkPattern {
        let mut partner = vec![0; self.steps.len()];
        let mut stack = Vec::new();
        for (k, &s) in self.steps.iter().enumerate() {
            if s > 0 {
                stack.push(k + 1);
            } else {
                let open = stack.pop().expect("unbalanced path");
                partner[open - 1] = k + 1;
                partner[k] = open;
            }
        }
        assert!(stack.is_empty());
        LinkPattern::new(partner, PatternKind::NonCrossing)
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Height after the first i steps.
    pub fn height(&self, i: usize) -> usize {
        self.steps[..i].iter().map(|&s| s as isize).sum::<isize>() as usize
    }

    /// Boxes stacked over column i: (h_i - parity(i)) / 2.
    pub fn boxes_in_column(&self, i: usize) -> usize {
        let h = self.height(i);
        let parity = i % 2;
        (h - parity) / 2
    }

    pub fn box_count(&self) -> usize {
        (1..self.len()).map(|i| self.boxes_in_column(i)).sum()
    }

    /// Box coordinates (column, level) with level starting at 1.
    pub fn boxes(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 1..self.len() {
            for level in 1..=self.boxes_in_column(i) {
                out.push((i, level));
            }
        }
        out
    }

    /// Columns where a box can be added (local minimum of the path).
    pub fn addable_columns(&self) -> Vec<usize> {
        (1..self.len())
            .filter(|&i| self.steps[i - 1] < 0 && self.steps[i] > 0)
            .collect()
    }

    /// Columns with a removable maximum (local maximum at height >= 2).
    pub fn removable_columns(&self) -> Vec<usize> {
        (1..self.len())
            .filter(|&i| self.steps[i - 1] > 0 && self.steps[i] < 0 && self.height(i) >= 2)
            .collect()
    }

    pub fn add_box(&self, column: usize) -> Self {
        assert!(self.steps[column - 1] < 0 && self.steps[column] > 0);
        let mut steps = self.steps.clone();
        steps[column - 1] = 1;
        steps[column] = -1;
        DyckPath { steps }
    }

    pub fn remove_box(&self, column: usize) -> Self {
        assert!(
            self.steps[column - 1] > 0 && self.steps[column] < 0 && self.height(column) >= 2
        );
        let mut steps = self.steps.clone();
        steps[column - 1] = -1;
        steps[column] = 1;
        DyckPath { steps }
    }
}

/// All antecedents pi' != pi with e_i pi' = pi, by brute force over the
/// non-crossing patterns, ordered by box count ascending (the first entry,
/// when any exist, is the removed-box antecedent).
pub fn antecedents(pi: &LinkPattern, i: usize) -> Vec<LinkPattern> {
    assert_eq!(pi.kind(), PatternKind::NonCrossing);
    if !pi.has_little_arch(i) {
        return Vec::new();
    }
    let mut out: Vec<LinkPattern> = enumerate_noncrossing(pi.size())
        .into_iter()
        .filter(|cand| cand != pi && &cand.apply_e(i) == pi)
        .collect();
    out.sort_by_key(|p| (DyckPath::from_pattern(p).box_count(), p.clone()));
    out
}

pub fn double_factorial(n: usize) -> usize {
    let mut acc = 1;
    let mut k = n;
    while k > 1 {
        acc *= k;
        k -= 2;
    }
    acc
}

pub fn catalan(n: usize) -> usize {
    let mut c = 1usize;
    for i in 0..n {
        c = c * 2 * (2 * i + 1) / (i + 2);
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cp(partner: &[usize]) -> LinkPattern {
        LinkPattern::new(partner.to_vec(), PatternKind::Crossing)
    }

    fn np(partner: &[usize]) -> LinkPattern {
        LinkPattern::new(partner.to_vec(), PatternKind::NonCrossing)
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_crossing(2).len(), 1);
        assert_eq!(enumerate_crossing(4).len(), 3);
        assert_eq!(enumerate_crossing(6).len(), 15);
        assert_eq!(enumerate_crossing(3).len(), 3);
        assert_eq!(enumerate_crossing(5).len(), 15);
        assert_eq!(enumerate_crossing(8).len(), double_factorial(7));
        assert_eq!(enumerate_noncrossing(2).len(), 1);
        assert_eq!(enumerate_noncrossing(4).len(), 2);
        assert_eq!(enumerate_noncrossing(6).len(), 5);
        assert_eq!(enumerate_noncrossing(3).len(), 2);
        for n in 1..=7 {
            assert_eq!(enumerate_noncrossing(2 * n).len(), catalan(n));
        }
    }

    #[test]
    fn base_points_identified() {
        let p0 = LinkPattern::crossing_base(4);
        assert_eq!(p0.partner_array(), &[3, 4, 1, 2]);
        assert!(enumerate_crossing(4).contains(&p0));
        let nested = LinkPattern::nested_base(6);
        assert_eq!(nested.partner_array(), &[6, 5, 4, 3, 2, 1]);
        assert_eq!(LinkPattern::fundamental(4).partner_array(), &[2, 1, 4, 3]);
    }

    #[test]
    fn f_moves_on_the_crossing_base() {
        let p0 = LinkPattern::crossing_base(4);
        assert_eq!(p0.apply_f(1), cp(&[4, 3, 2, 1]));
        assert_eq!(p0.apply_f(2), cp(&[2, 1, 4, 3]));
        // involution
        for i in 1..4 {
            assert_eq!(p0.apply_f(i).apply_f(i), p0);
        }
        // fixed point iff little arch
        let little = cp(&[2, 1, 4, 3]);
        assert_eq!(little.apply_f(1), little);
    }

    #[test]
    fn e_moves_satisfy_algebra() {
        for n in [2usize, 4, 6, 8] {
            for pi in enumerate_crossing(n) {
                for i in 1..n {
                    let e = pi.apply_e(i);
                    assert!(e.has_little_arch(i));
                    assert_eq!(e.apply_e(i), e, "e_i^2 = e_i");
                    if i + 1 < n {
                        assert_eq!(
                            pi.apply_e(i).apply_e(i + 1).apply_e(i),
                            pi.apply_e(i),
                            "e_i e_(i+1) e_i = e_i"
                        );
                        assert_eq!(
                            pi.apply_e(i + 1).apply_e(i).apply_e(i + 1),
                            pi.apply_e(i + 1)
                        );
                    }
                    assert_eq!(pi.apply_f(i).apply_e(i), pi.apply_e(i), "e_i f_i = e_i");
                    assert_eq!(pi.apply_e(i).apply_f(i), pi.apply_e(i), "f_i e_i = e_i");
                }
            }
        }
    }

    #[test]
    fn crossing_numbers() {
        for n in 1..=4 {
            assert_eq!(
                LinkPattern::crossing_base(2 * n).crossing_number(),
                n * (n - 1) / 2
            );
        }
        assert_eq!(cp(&[2, 1, 4, 3]).crossing_number(), 0);
        assert_eq!(LinkPattern::crossing_base(4).apply_f(1).crossing_number(), 0);
    }

    #[test]
    fn insert_and_remove_arch() {
        let empty = cp(&[]);
        assert_eq!(empty.insert_arch(1), cp(&[2, 1]));
        // insert at slot 2 into (1,2) gives (1,4)(2,3)
        assert_eq!(cp(&[2, 1]).insert_arch(2), cp(&[4, 3, 2, 1]));
        for n in [2usize, 4, 6, 8] {
            for pi in enumerate_crossing(n - 2) {
                for i in 1..n {
                    let big = pi.insert_arch(i);
                    assert!(big.has_little_arch(i));
                    assert_eq!(big.remove_arch(i), pi);
                }
            }
        }
    }

    #[test]
    fn reflection() {
        for n in [2usize, 4, 6, 8, 3, 5, 7] {
            for pi in enumerate_crossing(n) {
                assert_eq!(pi.reflect().reflect(), pi);
            }
        }
        assert_eq!(LinkPattern::crossing_base(4).reflect(), LinkPattern::crossing_base(4));
        assert_eq!(LinkPattern::nested_base(6).reflect(), LinkPattern::nested_base(6));
        assert_eq!(cp(&[2, 1, 4, 3]).reflect(), cp(&[2, 1, 4, 3]));
    }

    #[test]
    fn permutation_sector_filter() {
        assert_eq!(
            LinkPattern::crossing_base(4).permutation_sector(),
            Some(vec![1, 2])
        );
        assert_eq!(cp(&[2, 1, 4, 3]).permutation_sector(), None);
        let sector: Vec<_> = enumerate_crossing(4)
            .into_iter()
            .filter(|p| p.permutation_sector().is_some())
            .collect();
        assert_eq!(sector.len(), 2);
    }

    #[test]
    fn dyck_bijection_and_boxes() {
        assert_eq!(DyckPath::from_pattern(&LinkPattern::fundamental(8)).box_count(), 0);
        assert_eq!(DyckPath::from_pattern(&LinkPattern::nested_base(6)).box_count(), 3);
        for n in 1..=6 {
            for pi in enumerate_noncrossing(2 * n) {
                let path = DyckPath::from_pattern(&pi);
                assert_eq!(path.to_pattern(), pi);
                assert!(path.box_count() <= n * (n - 1) / 2);
                if pi == LinkPattern::nested_base(2 * n) {
                    assert_eq!(path.box_count(), n * (n - 1) / 2);
                }
                // removing a removable box and re-acting with e_i recovers pi
                for col in path.removable_columns() {
                    let smaller = path.remove_box(col).to_pattern();
                    assert_eq!(smaller.apply_e(col), pi);
                }
            }
        }
    }

    #[test]
    fn paper_figure_box_decomposition() {
        // acting with e3 e2 e4 e6 on the fundamental 10-point pattern
        let pi = LinkPattern::fundamental(10)
            .apply_e(6)
            .apply_e(4)
            .apply_e(2)
            .apply_e(3);
        let path = DyckPath::from_pattern(&pi);
        assert_eq!(path.box_count(), 4);
        let mut boxes = path.boxes();
        boxes.sort();
        assert_eq!(boxes, vec![(2, 1), (3, 1), (4, 1), (6, 1)]);
    }

    #[test]
    fn antecedent_examples() {
        // N=6 patterns in the construction ordering used by the solver:
        let p1 = np(&[6, 5, 4, 3, 2, 1]); // nested
        let p2 = np(&[6, 3, 2, 5, 4, 1]);
        let p3 = np(&[4, 3, 2, 1, 6, 5]);
        let p4 = np(&[2, 1, 6, 5, 4, 3]);
        let p5 = np(&[2, 1, 4, 3, 6, 5]); // fundamental
        assert_eq!(antecedents(&p1, 3), vec![p2.clone()]);
        assert_eq!(antecedents(&p5, 1), vec![p3.clone(), p1.clone()]);
        assert_eq!(antecedents(&p5, 3), vec![p4.clone(), p3.clone()]);
        assert_eq!(antecedents(&p5, 5), vec![p4.clone(), p1.clone()]);
        assert_eq!(antecedents(&p2, 4), vec![p3.clone(), p1.clone()]);
        assert_eq!(antecedents(&p2, 2), vec![p4.clone(), p1.clone()]);
        assert_eq!(antecedents(&p3, 5), vec![p2.clone()]);
        assert_eq!(antecedents(&p4, 1), vec![p2.clone()]);
        // no little arch -> empty
        assert!(antecedents(&p1, 1).is_empty());
    }

    #[test]
    fn odd_patterns() {
        let odd = enumerate_noncrossing(3);
        assert_eq!(odd.len(), 2);
        // ray from point 2 under the (1,3) arch is excluded
        assert!(!odd.iter().any(|p| p.partner_array() == [3, 0, 1]));
        let red = cp(&[3, 4, 1, 2]).drop_last_point();
        assert_eq!(red.partner_array(), &[3, 0, 1]);
    }
}
