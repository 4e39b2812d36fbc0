//! The simplex of multi-indices `{ i : sum_k (i_k - 1) <= b }` and the sparse
//! grid it selects.
//!
//! Members are stored in graded colexicographic order: first by level sum
//! ascending, then with the last coordinate most significant. Ranks use the
//! combinatorial number system, so `rank`/`unrank` cost `O(D)` table lookups
//! (`unrank` adds an `O(b)` scan per coordinate).

use std::io::Write;

use crate::basis1d::PointSequence;
use crate::error::{Error, Result};

/// A 1-based multi-index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiIndex(pub Vec<usize>);

impl MultiIndex {
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        if entries.contains(&0) {
            return Err(Error::InvalidArgument(format!(
                "multi-index entries start at 1: {entries:?}"
            )));
        }
        Ok(Self(entries))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// `sum_k (i_k - 1)`.
    pub fn level_sum(&self) -> usize {
        self.0.iter().map(|&e| e - 1).sum()
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }
}

fn binomial_table(rows: usize, cols: usize) -> Result<Vec<Vec<usize>>> {
    let mut t = vec![vec![0usize; cols + 1]; rows + 1];
    for n in 0..=rows {
        t[n][0] = 1;
        for k in 1..=cols.min(n) {
            t[n][k] = t[n - 1][k - 1]
                .checked_add(if k < n { t[n - 1][k] } else { 0 })
                .ok_or_else(|| Error::Overflow(format!("C({n},{k})")))?;
        }
    }
    Ok(t)
}

/// `C(D+b, D)`, overflow checked.
pub fn size(dim: usize, budget: usize) -> Result<usize> {
    if dim == 0 {
        return Err(Error::InvalidArgument(
            "dimension must be at least 1".into(),
        ));
    }
    let n = dim
        .checked_add(budget)
        .ok_or_else(|| Error::Overflow("D + b".into()))?;
    let k = dim.min(budget);
    let mut acc: usize = 1;
    for j in 1..=k {
        // acc * (n - k + j) / j stays integral at every step.
        let num = acc
            .checked_mul(n - k + j)
            .ok_or_else(|| Error::Overflow(format!("C({n},{dim})")))?;
        acc = num / j;
    }
    Ok(acc)
}

/// Multi-indices along one coordinate with all other coordinates fixed, by
/// rank offset in ascending order of the free coordinate.
#[derive(Clone, Debug)]
pub struct Pencils {
    starts: Vec<usize>,
    offsets: Vec<usize>,
}

impl Pencils {
    pub fn len(&self) -> usize {
        self.starts.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, p: usize) -> &[usize] {
        &self.offsets[self.starts[p]..self.starts[p + 1]]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[usize]> + '_ {
        (0..self.len()).map(move |p| self.get(p))
    }
}

#[derive(Clone, Debug)]
pub struct SimplexIndexSet {
    dim: usize,
    budget: usize,
    size: usize,
    // binom[n][k] for n <= D + b + 1, k <= D
    binom: Vec<Vec<usize>>,
    // flattened 1-based members, `dim` entries per member, in rank order
    members: Vec<usize>,
    pencils: Vec<Pencils>,
}

impl SimplexIndexSet {
    pub fn new(dim: usize, budget: usize) -> Result<Self> {
        let size = size(dim, budget)?;
        let binom = binomial_table(dim + budget + 1, dim)?;
        let total = size
            .checked_mul(dim)
            .ok_or_else(|| Error::Overflow("index storage".into()))?;
        let mut members = Vec::with_capacity(total);
        let mut e = vec![0usize; dim];
        for level in 0..=budget {
            push_level(&mut members, &mut e, dim, level);
        }
        debug_assert_eq!(members.len(), total);
        let mut set = Self {
            dim,
            budget,
            size,
            binom,
            members,
            pencils: Vec::new(),
        };
        set.pencils = (0..dim).map(|k| set.build_pencils(k)).collect();
        Ok(set)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    /// Member at `offset`, as 1-based entries.
    pub fn index(&self, offset: usize) -> &[usize] {
        &self.members[offset * self.dim..(offset + 1) * self.dim]
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &[usize]> + '_ {
        self.members.chunks_exact(self.dim)
    }

    /// All members in rank order.
    pub fn enumerate(&self) -> Vec<MultiIndex> {
        self.iter().map(|i| MultiIndex(i.to_vec())).collect()
    }

    pub fn contains(&self, i: &[usize]) -> bool {
        i.len() == self.dim
            && i.iter().all(|&e| e >= 1)
            && i.iter().map(|&e| e - 1).sum::<usize>() <= self.budget
    }

    fn binom(&self, n: usize, k: usize) -> usize {
        if k > n {
            0
        } else {
            self.binom[n][k]
        }
    }

    /// Number of `k`-tuples of non-negative integers with sum `r` whose last
    /// entry is below `v`.
    fn count_below(&self, k: usize, r: usize, v: usize) -> usize {
        self.binom(r + k - 1, k - 1) - self.binom(r - v + k - 1, k - 1)
    }

    pub fn rank(&self, i: &[usize]) -> Result<usize> {
        if !self.contains(i) {
            return Err(Error::NotAMember(i.to_vec()));
        }
        let d = self.dim;
        let s: usize = i.iter().map(|&e| e - 1).sum();
        let mut rank = if s == 0 { 0 } else { self.binom(d + s - 1, d) };
        let mut r = s;
        for k in (2..=d).rev() {
            let v = i[k - 1] - 1;
            rank += self.count_below(k, r, v);
            r -= v;
        }
        Ok(rank)
    }

    pub fn unrank(&self, offset: usize) -> Result<MultiIndex> {
        let mut out = vec![0; self.dim];
        self.unrank_into(offset, &mut out)?;
        Ok(MultiIndex(out))
    }

    pub fn unrank_into(&self, offset: usize, out: &mut [usize]) -> Result<()> {
        if offset >= self.size {
            return Err(Error::OffsetOutOfRange {
                offset,
                size: self.size,
            });
        }
        let d = self.dim;
        // Level s holds ranks [C(d+s-1, d), C(d+s, d)).
        let mut s = 0;
        while self.binom(d + s, d) <= offset {
            s += 1;
        }
        let mut rem = offset - if s == 0 { 0 } else { self.binom(d + s - 1, d) };
        let mut r = s;
        for k in (2..=d).rev() {
            let mut v = 0;
            while v < r && self.count_below(k, r, v + 1) <= rem {
                v += 1;
            }
            rem -= self.count_below(k, r, v);
            out[k - 1] = v + 1;
            r -= v;
        }
        out[0] = r + 1;
        Ok(())
    }

    /// Pencils along coordinate `k` (zero-based).
    pub fn pencils(&self, k: usize) -> &Pencils {
        &self.pencils[k]
    }

    fn build_pencils(&self, k: usize) -> Pencils {
        let mut starts = vec![0];
        let mut offsets = Vec::with_capacity(self.size);
        let mut probe = vec![0usize; self.dim];
        for root in self.iter().filter(|i| i[k] == 1) {
            probe.copy_from_slice(root);
            let free = self.budget - root.iter().map(|&e| e - 1).sum::<usize>();
            for t in 0..=free {
                probe[k] = t + 1;
                offsets.push(self.rank(&probe).expect("pencil member inside simplex"));
            }
            starts.push(offsets.len());
        }
        Pencils { starts, offsets }
    }
}

/// Appends all level-`level` tuples in colex order (last coordinate most
/// significant, ascending).
fn push_level(members: &mut Vec<usize>, e: &mut [usize], dim: usize, level: usize) {
    fn rec(members: &mut Vec<usize>, e: &mut [usize], k: usize, rem: usize) {
        if k == 0 {
            e[0] = rem;
            members.extend(e.iter().map(|&x| x + 1));
            return;
        }
        for v in 0..=rem {
            e[k] = v;
            rec(members, e, k - 1, rem - v);
        }
    }
    rec(members, e, dim - 1, level);
}

/// Points `r_a` for every member `a` of a simplex index set.
#[derive(Clone, Debug)]
pub struct SparseGrid {
    set: SimplexIndexSet,
    axes: Vec<PointSequence>,
}

impl SparseGrid {
    pub fn new(set: SimplexIndexSet, axes: Vec<PointSequence>) -> Result<Self> {
        if axes.len() != set.dim() {
            return Err(Error::DimensionMismatch {
                expected: set.dim(),
                got: axes.len(),
            });
        }
        for (k, ax) in axes.iter().enumerate() {
            if ax.len() < set.budget() + 1 {
                return Err(Error::AxisTooShort {
                    axis: k,
                    len: ax.len(),
                    needed: set.budget() + 1,
                });
            }
        }
        Ok(Self { set, axes })
    }

    pub fn set(&self) -> &SimplexIndexSet {
        &self.set
    }

    pub fn axes(&self) -> &[PointSequence] {
        &self.axes
    }

    pub fn point(&self, offset: usize) -> Vec<f64> {
        self.set
            .index(offset)
            .iter()
            .zip(&self.axes)
            .map(|(&a, ax)| ax.points()[a - 1])
            .collect()
    }

    /// All grid points in rank order.
    pub fn grid_points(&self) -> Vec<Vec<f64>> {
        (0..self.set.len()).map(|o| self.point(o)).collect()
    }

    /// `offset,i_1..i_D,x_1..x_D`, one line per point, no header.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        for offset in 0..self.set.len() {
            let mut fields = vec![offset.to_string()];
            fields.extend(self.set.index(offset).iter().map(|a| a.to_string()));
            fields.extend(self.point(offset).iter().map(|x| x.to_string()));
            writeln!(w, "{}", fields.join(","))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis1d::BasisFamily;

    fn list(d: usize, b: usize) -> Vec<Vec<usize>> {
        SimplexIndexSet::new(d, b)
            .unwrap()
            .enumerate()
            .into_iter()
            .map(|m| m.0)
            .collect()
    }

    #[test]
    fn sizes() {
        assert_eq!(size(3, 4).unwrap(), 35);
        assert_eq!(size(2, 4).unwrap(), 15);
        assert_eq!(size(5, 0).unwrap(), 1);
        assert!(size(0, 3).is_err());
        assert!(matches!(size(60, 1000), Err(Error::Overflow(_))));
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(list(2, 1), vec![vec![1, 1], vec![2, 1], vec![1, 2]]);
        assert_eq!(list(1, 3), vec![vec![1], vec![2], vec![3], vec![4]]);
        assert_eq!(
            list(3, 1),
            vec![vec![1, 1, 1], vec![2, 1, 1], vec![1, 2, 1], vec![1, 1, 2]]
        );
    }

    #[test]
    fn rank_examples() {
        let s = SimplexIndexSet::new(2, 1).unwrap();
        assert_eq!(s.rank(&[1, 2]).unwrap(), 2);
        assert_eq!(s.unrank(0).unwrap().0, vec![1, 1]);
        assert!(matches!(s.rank(&[2, 2]), Err(Error::NotAMember(_))));
        assert!(s.rank(&[0, 1]).is_err());
        assert!(s.rank(&[1, 1, 1]).is_err());
        assert!(matches!(s.unrank(3), Err(Error::OffsetOutOfRange { .. })));
    }

    #[test]
    fn rank_unrank_round_trip_d3_b4() {
        let s = SimplexIndexSet::new(3, 4).unwrap();
        assert_eq!(s.len(), 35);
        for o in 0..35 {
            let m = s.unrank(o).unwrap();
            assert_eq!(s.rank(&m.0).unwrap(), o);
            assert_eq!(s.index(o), &m.0[..]);
        }
    }

    #[test]
    fn exhaustive_small_sets() {
        for d in 1..=6 {
            for b in 0..=9 {
                let s = SimplexIndexSet::new(d, b).unwrap();
                let n = s.len();
                // C(d+b, d) by Pascal recursion, independent of `size`
                let mut pascal = vec![vec![1usize; d + 1]; b + 1];
                for bb in 1..=b {
                    for dd in 1..=d {
                        pascal[bb][dd] = pascal[bb - 1][dd] + pascal[bb][dd - 1];
                    }
                }
                assert_eq!(n, pascal[b][d]);
                let mut seen = std::collections::HashSet::new();
                let mut prev_level = 0;
                for (o, i) in s.iter().enumerate() {
                    assert!(s.contains(i));
                    assert!(seen.insert(i.to_vec()));
                    let lvl: usize = i.iter().map(|&e| e - 1).sum();
                    assert!(lvl >= prev_level);
                    prev_level = lvl;
                    assert_eq!(s.rank(i).unwrap(), o);
                    assert_eq!(s.unrank(o).unwrap().0, i);
                }
            }
        }
    }

    #[test]
    fn pencils_cover_every_member_once() {
        let s = SimplexIndexSet::new(3, 4).unwrap();
        for k in 0..3 {
            let mut hits = vec![0; s.len()];
            for p in s.pencils(k).iter() {
                for (t, &o) in p.iter().enumerate() {
                    hits[o] += 1;
                    assert_eq!(s.index(o)[k], t + 1);
                }
            }
            assert!(hits.iter().all(|&h| h == 1));
        }
    }

    #[test]
    fn grid_point_examples() {
        let fam = BasisFamily::chebyshev();
        let ax = PointSequence::user_supplied(vec![0.0, -1.0], &fam).unwrap();
        let g = SparseGrid::new(SimplexIndexSet::new(2, 1).unwrap(), vec![ax.clone(), ax]).unwrap();
        assert_eq!(
            g.grid_points(),
            vec![vec![0.0, 0.0], vec![-1.0, 0.0], vec![0.0, -1.0]]
        );

        let ax = PointSequence::user_supplied(vec![0.0, -1.0, 1.0], &fam).unwrap();
        let g = SparseGrid::new(SimplexIndexSet::new(1, 2).unwrap(), vec![ax]).unwrap();
        assert_eq!(g.grid_points(), vec![vec![0.0], vec![-1.0], vec![1.0]]);

        let ax = crate::basis1d::make_leja_points(&fam, 4, 0.0).unwrap();
        let g = SparseGrid::new(SimplexIndexSet::new(4, 3).unwrap(), vec![ax; 4]).unwrap();
        assert_eq!(g.grid_points().len(), 35);
    }

    #[test]
    fn short_axis_rejected() {
        let fam = BasisFamily::chebyshev();
        let ax = PointSequence::user_supplied(vec![0.0, -1.0], &fam).unwrap();
        let r = SparseGrid::new(SimplexIndexSet::new(2, 2).unwrap(), vec![ax.clone(), ax]);
        assert!(matches!(r, Err(Error::AxisTooShort { .. })));
    }

    #[test]
    fn grid_csv_layout() {
        let fam = BasisFamily::chebyshev();
        let ax = PointSequence::user_supplied(vec![0.0, -1.0], &fam).unwrap();
        let g = SparseGrid::new(SimplexIndexSet::new(2, 1).unwrap(), vec![ax.clone(), ax]).unwrap();
        let mut buf = Vec::new();
        g.write_csv(&mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "0,1,1,0,0\n1,2,1,-1,0\n2,1,2,0,-1\n"
        );
    }
}
