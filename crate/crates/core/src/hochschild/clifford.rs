//! Sign calculus for `θ` and `∂θ` words.
//!
//! A word is a bitmask of indices taken in increasing order. `θ_j` acts on
//! `C[∂θ]` through `∂θ_i θ_j = -θ_j ∂θ_i + δ_ij` with `θ_j·1 = 0`.

use serde::Serialize;

/// An increasing word `θ_I` or `∂θ_I`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ThetaWord(pub u32);

impl ThetaWord {
    pub const EMPTY: ThetaWord = ThetaWord(0);

    pub fn from_indices(indices: &[usize]) -> Self {
        ThetaWord(indices.iter().fold(0, |m, &i| m | (1 << i)))
    }

    pub fn indices(self) -> Vec<usize> {
        (0..32).filter(|&i| self.0 & (1 << i) != 0).collect()
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }
}

/// Signed word, `None` standing for zero.
pub type Signed = Option<(i32, ThetaWord)>;

/// `a·b` in the exterior algebra.
pub fn wedge(a: ThetaWord, b: ThetaWord) -> Signed {
    if a.0 & b.0 != 0 {
        return None;
    }
    // each index of b passes the larger indices of a
    let swaps: u32 = b
        .indices()
        .iter()
        .map(|&j| (a.0 >> (j + 1)).count_ones())
        .sum();
    Some((if swaps % 2 == 0 { 1 } else { -1 }, ThetaWord(a.0 | b.0)))
}

/// `θ_j·∂θ_I`.
pub fn contract(j: usize, q: ThetaWord) -> Signed {
    if q.0 & (1 << j) == 0 {
        return None;
    }
    let before = (q.0 & ((1u32 << j) - 1)).count_ones();
    Some((
        if before % 2 == 0 { 1 } else { -1 },
        ThetaWord(q.0 ^ (1 << j)),
    ))
}

/// `θ_P·∂θ_Q`: the last factor of `θ_P` acts first.
pub fn act(p: ThetaWord, q: ThetaWord) -> Signed {
    let mut sign = 1;
    let mut word = q;
    for j in p.indices().into_iter().rev() {
        let (s, w) = contract(j, word)?;
        sign *= s;
        word = w;
    }
    Some((sign, word))
}

/// `(-1)^{|q1||p2|} p1(q1)·p2(q2)`.
pub fn upsilon(p1: ThetaWord, p2: ThetaWord, q1: ThetaWord, q2: ThetaWord) -> Signed {
    let (s1, r1) = act(p1, q1)?;
    let (s2, r2) = act(p2, q2)?;
    let (s3, r) = wedge(r1, r2)?;
    let pre = if (q1.len() * p2.len()) % 2 == 0 {
        1
    } else {
        -1
    };
    Some((pre * s1 * s2 * s3, r))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(ix: &[usize]) -> ThetaWord {
        ThetaWord::from_indices(ix)
    }

    #[test]
    fn wedge_signs() {
        assert_eq!(wedge(w(&[1]), w(&[0])), Some((-1, w(&[0, 1]))));
        assert_eq!(wedge(w(&[0]), w(&[1])), Some((1, w(&[0, 1]))));
        assert_eq!(wedge(w(&[0, 2]), w(&[1])), Some((-1, w(&[0, 1, 2]))));
        assert_eq!(wedge(w(&[0]), w(&[0, 1])), None);
    }

    #[test]
    fn upsilon_examples() {
        assert_eq!(
            upsilon(w(&[0]), w(&[0]), w(&[0]), w(&[0])),
            Some((-1, ThetaWord::EMPTY))
        );
        assert_eq!(
            upsilon(w(&[]), w(&[]), w(&[1]), w(&[0])),
            Some((-1, w(&[0, 1])))
        );
        assert_eq!(upsilon(w(&[]), w(&[]), w(&[1]), w(&[1])), None);
    }

    #[test]
    fn contraction_signs() {
        assert_eq!(contract(1, w(&[0, 1, 2])), Some((-1, w(&[0, 2]))));
        assert_eq!(contract(0, w(&[0, 1])), Some((1, w(&[1]))));
        assert_eq!(contract(3, w(&[0, 1])), None);
        // θ_0 θ_1 on ∂_0 ∂_1: θ_1 first gives -∂_0, then θ_0 gives -1
        assert_eq!(act(w(&[0, 1]), w(&[0, 1])), Some((-1, ThetaWord::EMPTY)));
    }
}
