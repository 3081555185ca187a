//! Finite lower sets of ℕ² and ℕ³, the values taken by the mixed dimension.
//!
//! A lower set is stored by its maximal antichain. Every constructor and
//! operation re-canonicalizes, so two lower sets are equal exactly when their
//! `maxima` vectors are equal.

use std::fmt::{self, Write as _};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::dim::Dim;

/// A point of ℕᴺ under the componentwise order. For `N = 2` the coordinates
/// are (K-sort, Γ-sort); for `N = 3` a residue-field coordinate follows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DimPoint<const N: usize>(pub [u32; N]);

impl<const N: usize> Serialize for DimPoint<N> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.as_slice().serialize(s)
    }
}

impl<'de, const N: usize> Deserialize<'de> for DimPoint<N> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<u32>::deserialize(d)?;
        let arr: [u32; N] = v
            .try_into()
            .map_err(|v: Vec<u32>| serde::de::Error::custom(format!("expected {N} coordinates, found {}", v.len())))?;
        Ok(DimPoint(arr))
    }
}

pub type DimPoint2 = DimPoint<2>;
pub type DimPoint3 = DimPoint<3>;

impl<const N: usize> DimPoint<N> {
    /// Componentwise `≤`.
    pub fn le(&self, other: &Self) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn sum(&self) -> u32 {
        self.0.iter().sum()
    }

    fn add(&self, other: &Self) -> Self {
        let mut out = [0; N];
        for i in 0..N {
            out[i] = self.0[i] + other.0[i];
        }
        DimPoint(out)
    }

    /// `self + delta`, or `None` if the result leaves ℕᴺ.
    fn shifted(&self, delta: &[i64; N]) -> Option<Self> {
        let mut out = [0; N];
        for i in 0..N {
            let v = self.0[i] as i64 + delta[i];
            if v < 0 {
                return None;
            }
            out[i] = v as u32;
        }
        Some(DimPoint(out))
    }
}

impl DimPoint<2> {
    pub fn new(d1: u32, d2: u32) -> Self {
        DimPoint([d1, d2])
    }
}

impl DimPoint<3> {
    pub fn new3(d1: u32, d2: u32, d3: u32) -> Self {
        DimPoint([d1, d2, d3])
    }
}

/// Finite lower subset of ℕᴺ, stored as its sorted maximal antichain.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LowerSet<const N: usize> {
    maxima: Vec<DimPoint<N>>,
}

pub type LowerSet2 = LowerSet<2>;
pub type LowerSet3 = LowerSet<3>;

impl<const N: usize> LowerSet<N> {
    pub fn empty() -> Self {
        LowerSet { maxima: Vec::new() }
    }

    /// `⟨p⟩ = {q : q ≤ p}`.
    pub fn principal(p: DimPoint<N>) -> Self {
        LowerSet { maxima: vec![p] }
    }

    /// Smallest lower set containing every point.
    pub fn lower_closure<I: IntoIterator<Item = DimPoint<N>>>(points: I) -> Self {
        let mut pts: Vec<DimPoint<N>> = points.into_iter().collect();
        pts.sort_unstable();
        pts.dedup();
        let maxima = pts
            .iter()
            .filter(|&p| !pts.iter().any(|q| q != p && p.le(q)))
            .copied()
            .collect();
        LowerSet { maxima }
    }

    pub fn maxima(&self) -> &[DimPoint<N>] {
        &self.maxima
    }

    pub fn is_empty(&self) -> bool {
        self.maxima.is_empty()
    }

    pub fn contains(&self, p: &DimPoint<N>) -> bool {
        self.maxima.iter().any(|m| p.le(m))
    }

    /// Inclusion `self ⊆ other`, the order on lower-set dimensions.
    pub fn is_subset(&self, other: &Self) -> bool {
        self.maxima.iter().all(|m| other.contains(m))
    }

    /// `max(A, B) = A ∪ B`.
    pub fn join(&self, other: &Self) -> Self {
        Self::lower_closure(self.maxima.iter().chain(other.maxima.iter()).copied())
    }

    /// Minkowski sum `A + B`. The sum of two lower sets is generated by the
    /// pairwise sums of their maxima.
    pub fn add(&self, other: &Self) -> Self {
        Self::lower_closure(
            self.maxima
                .iter()
                .flat_map(|a| other.maxima.iter().map(move |b| a.add(b))),
        )
    }

    /// Maximal coordinate sum; `−∞` for the empty set.
    pub fn dim_nat(&self) -> Dim {
        self.maxima
            .iter()
            .map(|p| Dim::Finite(p.sum()))
            .max()
            .unwrap_or(Dim::NegInf)
    }

    /// Every element, in lexicographic order.
    pub fn elements(&self) -> Vec<DimPoint<N>> {
        let mut out: Vec<DimPoint<N>> = Vec::new();
        for m in &self.maxima {
            // odometer over the box [0, m]
            let mut cur = [0u32; N];
            'boxed: loop {
                out.push(DimPoint(cur));
                for i in (0..N).rev() {
                    if cur[i] < m.0[i] {
                        cur[i] += 1;
                        continue 'boxed;
                    }
                    cur[i] = 0;
                }
                break;
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Closure of the generators under a family of unit moves, followed by
    /// lower closure. Moves leaving ℕᴺ are dropped.
    fn move_closure(&self, moves: &[[i64; N]]) -> Self {
        let mut seen: Vec<DimPoint<N>> = self.maxima.clone();
        let mut frontier = seen.clone();
        while let Some(p) = frontier.pop() {
            for m in moves {
                if let Some(q) = p.shifted(m) {
                    if !seen.contains(&q) {
                        seen.push(q);
                        frontier.push(q);
                    }
                }
            }
        }
        Self::lower_closure(seen)
    }
}

impl LowerSet<2> {
    /// `max_{k ≥ 0} (A + (−k, k)) ∩ ℕ²`: the bound on the dimension of any
    /// definable image. A K-dimension may turn into a Γ-dimension, never the
    /// reverse.
    pub fn shift_closure(&self) -> Self {
        self.move_closure(&[[-1, 1]])
    }

    /// ASCII diagram: one row per `y` from the top down to 0, `•` for members.
    pub fn render_diagram(&self) -> String {
        if self.is_empty() {
            return "(empty)\n".to_string();
        }
        let max_x = self.maxima.iter().map(|p| p.0[0]).max().unwrap_or(0);
        let max_y = self.maxima.iter().map(|p| p.0[1]).max().unwrap_or(0);
        let label_w = max_y.to_string().len();
        let mut out = String::new();
        for y in (0..=max_y).rev() {
            let _ = write!(out, "{:>label_w$} |", y);
            for x in 0..=max_x {
                let c = if self.contains(&DimPoint([x, y])) { '•' } else { '.' };
                let _ = write!(out, " {c}");
            }
            out.push('\n');
        }
        let _ = write!(out, "{:>label_w$} +", "");
        for _ in 0..=max_x {
            out.push_str("--");
        }
        out.push('\n');
        let _ = write!(out, "{:>label_w$}  ", "");
        for x in 0..=max_x {
            let _ = write!(out, " {}", x % 10);
        }
        out.push('\n');
        out
    }
}

impl LowerSet<3> {
    /// Closure under the single-coordinate projection shifts
    /// (−1,0,0), (−1,1,0), (−1,0,1), (0,−1,0), (0,0,−1).
    pub fn shift_closure3(&self) -> Self {
        self.move_closure(&[[-1, 0, 0], [-1, 1, 0], [-1, 0, 1], [0, -1, 0], [0, 0, -1]])
    }
}

impl<const N: usize> fmt::Display for DimPoint<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `{(1,4),(2,2),(4,1)}`, the maxima in order; `{}` when empty.
impl<const N: usize> fmt::Display for LowerSet<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.maxima.iter().map(DimPoint::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl<const N: usize> Serialize for LowerSet<N> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a, const M: usize> {
            maxima: &'a [DimPoint<M>],
        }
        Repr { maxima: &self.maxima }.serialize(s)
    }
}

impl<'de, const N: usize> Deserialize<'de> for LowerSet<N> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            maxima: Vec<Vec<u32>>,
        }
        let r = Repr::deserialize(d)?;
        let pts = r
            .maxima
            .into_iter()
            .map(|v| {
                <[u32; N]>::try_from(v.as_slice())
                    .map(DimPoint)
                    .map_err(|_| serde::de::Error::custom(format!("expected {N} coordinates")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::lower_closure(pts))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(a: u32, b: u32) -> DimPoint2 {
        DimPoint::new(a, b)
    }

    fn ls(pts: &[(u32, u32)]) -> LowerSet2 {
        LowerSet::lower_closure(pts.iter().map(|&(a, b)| p(a, b)))
    }

    #[test]
    fn principal_enumerates_the_box() {
        let e = LowerSet::principal(p(1, 2)).elements();
        assert_eq!(e, vec![p(0, 0), p(0, 1), p(0, 2), p(1, 0), p(1, 1), p(1, 2)]);
        assert_eq!(LowerSet::principal(p(0, 0)).elements(), vec![p(0, 0)]);
        assert_eq!(LowerSet::principal(p(3, 5)).elements().len(), 24);
    }

    #[test]
    fn closure_of_d1_is_d2() {
        let d1 = [(0, 0), (0, 3), (0, 4), (1, 4), (2, 0), (2, 1), (2, 2), (4, 0), (4, 1)];
        assert_eq!(ls(&d1).maxima(), &[p(1, 4), p(2, 2), p(4, 1)]);
        assert!(ls(&[]).is_empty());
        assert_eq!(ls(&[(2, 0), (1, 1)]).maxima(), &[p(1, 1), p(2, 0)]);
    }

    #[test]
    fn join_examples() {
        let a = LowerSet::principal(p(1, 0));
        let b = LowerSet::principal(p(0, 2));
        assert_eq!(a.join(&b).maxima(), &[p(0, 2), p(1, 0)]);
        assert_eq!(a.join(&LowerSet::empty()), a);
        let c = LowerSet::principal(p(1, 1)).join(&LowerSet::principal(p(2, 2)));
        assert_eq!(c, LowerSet::principal(p(2, 2)));
    }

    #[test]
    fn add_examples() {
        let a = LowerSet::principal(p(1, 0));
        let b = LowerSet::principal(p(0, 2));
        assert_eq!(a.add(&b), LowerSet::principal(p(1, 2)));
        assert_eq!(a.add(&LowerSet::principal(p(0, 0))), a);
        let u = ls(&[(1, 0), (0, 1)]);
        assert_eq!(u.add(&u), ls(&[(2, 0), (1, 1), (0, 2)]));
        assert!(u.add(&LowerSet::empty()).is_empty());
    }

    #[test]
    fn shift_closure_examples() {
        assert_eq!(LowerSet::principal(p(0, 3)).shift_closure(), LowerSet::principal(p(0, 3)));
        assert_eq!(
            LowerSet::principal(p(2, 0)).shift_closure(),
            ls(&[(2, 0), (1, 1), (0, 2)])
        );
        let d4 = ls(&[(1, 4), (5, 1)]);
        assert_eq!(
            d4.shift_closure(),
            ls(&[(0, 6), (1, 5), (2, 4), (3, 3), (4, 2), (5, 1)])
        );
    }

    #[test]
    fn shift_closure3_examples() {
        let q = |a, b, c| DimPoint::new3(a, b, c);
        assert_eq!(
            LowerSet::principal(q(1, 0, 0)).shift_closure3().maxima(),
            &[q(0, 0, 1), q(0, 1, 0), q(1, 0, 0)]
        );
        let fixed = LowerSet::principal(q(0, 1, 1));
        assert_eq!(fixed.shift_closure3(), fixed);
        let expect = LowerSet::lower_closure([
            q(2, 0, 0),
            q(1, 1, 0),
            q(1, 0, 1),
            q(0, 2, 0),
            q(0, 1, 1),
            q(0, 0, 2),
        ]);
        assert_eq!(LowerSet::principal(q(2, 0, 0)).shift_closure3(), expect);
    }

    #[test]
    fn dim_nat_values() {
        assert_eq!(ls(&[(1, 4), (2, 2), (4, 1)]).dim_nat(), Dim::Finite(5));
        assert_eq!(ls(&[(1, 4), (5, 1)]).dim_nat(), Dim::Finite(6));
        assert_eq!(LowerSet2::empty().dim_nat(), Dim::NegInf);
        assert_eq!(
            LowerSet::principal(DimPoint::new3(1, 2, 3)).dim_nat(),
            Dim::Finite(6)
        );
    }

    #[test]
    fn render() {
        assert_eq!(LowerSet2::empty().render_diagram(), "(empty)\n");
        let r = LowerSet::principal(p(1, 1)).render_diagram();
        let rows: Vec<&str> = r.lines().collect();
        assert_eq!(rows[0], "1 | • •");
        assert_eq!(rows[1], "0 | • •");
        let d2 = ls(&[(1, 4), (2, 2), (4, 1)]).render_diagram();
        let rows: Vec<&str> = d2.lines().collect();
        assert_eq!(rows[0], "4 | • • . . .");
        assert_eq!(rows[2], "2 | • • • . .");
        assert_eq!(rows[4], "0 | • • • • •");
    }

    #[test]
    fn json_shape() {
        let d = ls(&[(4, 1), (1, 4), (2, 2)]);
        let s = serde_json::to_string(&d).unwrap();
        assert_eq!(s, r#"{"maxima":[[1,4],[2,2],[4,1]]}"#);
        let back: LowerSet2 = serde_json::from_str(&s).unwrap();
        assert_eq!(back, d);
        assert!(serde_json::from_str::<LowerSet2>(r#"{"maxima":[[1,2,3]]}"#).is_err());
    }
}
