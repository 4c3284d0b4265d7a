//! Linear algebra over GF(2) on rows packed into machine words.

/// Rank of the matrix whose rows are the given bit vectors.
pub fn rank(rows: &[u64]) -> usize {
    let mut rows: Vec<u64> = rows.iter().copied().filter(|&r| r != 0).collect();
    let mut rank = 0;
    while let Some(pivot) = rows.pop() {
        if pivot == 0 {
            continue;
        }
        rank += 1;
        let bit = 63 - pivot.leading_zeros();
        for r in rows.iter_mut() {
            if (*r >> bit) & 1 == 1 {
                *r ^= pivot;
            }
        }
    }
    rank
}

/// Reduced basis of the span of `vectors`, one vector per leading bit.
pub fn span_basis(vectors: impl IntoIterator<Item = u64>) -> Vec<u64> {
    let mut basis: Vec<u64> = Vec::new();
    for mut v in vectors {
        for b in &basis {
            let lead = 63 - b.leading_zeros();
            if (v >> lead) & 1 == 1 {
                v ^= b;
            }
        }
        if v != 0 {
            let lead = 63 - v.leading_zeros();
            for b in basis.iter_mut() {
                if (*b >> lead) & 1 == 1 {
                    *b ^= v;
                }
            }
            basis.push(v);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis
}

/// All elements of the span of a basis, in a fixed order starting with 0.
pub fn span_elements(basis: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64];
    for &b in basis {
        let extra: Vec<u64> = out.iter().map(|v| v ^ b).collect();
        out.extend(extra);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_small_matrices() {
        assert_eq!(rank(&[]), 0);
        assert_eq!(rank(&[0, 0]), 0);
        assert_eq!(rank(&[0b01, 0b10, 0b11]), 2);
        assert_eq!(rank(&[0b100, 0b010, 0b001]), 3);
        assert_eq!(rank(&[0b110, 0b110]), 1);
    }

    #[test]
    fn span_has_power_of_two_size() {
        let basis = span_basis([0b0110, 0b0011, 0b0101]);
        assert_eq!(basis.len(), 2);
        let mut elems = span_elements(&basis);
        elems.sort_unstable();
        assert_eq!(elems, vec![0b0000, 0b0011, 0b0101, 0b0110]);
    }
}
