use crate::gf::FieldSpec;

/// Rank of a set of row vectors over GF(q), by Gaussian elimination.
pub fn rank(field: &FieldSpec, rows: &[Vec<u32>]) -> usize {
    let mut m: Vec<Vec<u32>> = rows.to_vec();
    let width = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = field.inv(m[rank][col]).expect("pivot is nonzero");
        for x in m[rank].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == rank || row[col] == 0 {
                continue;
            }
            let factor = row[col];
            for (x, &p) in row.iter_mut().zip(&pivot_row) {
                *x = field.sub(*x, field.mul(factor, p));
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    #[test]
    fn rank_examples() {
        let f3 = make_field(3).unwrap();
        assert_eq!(rank(&f3, &[vec![1, 2, 2], vec![2, 1, 1]]), 1);
        assert_eq!(rank(&f3, &[vec![1, 2, 2, 0], vec![1, 1, 1, 2]]), 2);
        assert_eq!(rank(&f3, &[vec![0, 0, 0]]), 0);
        assert_eq!(rank(&f3, &[]), 0);
        let f4 = make_field(4).unwrap();
        // (1, a) and (a, a^2) are proportional
        let a = f4.alpha();
        assert_eq!(rank(&f4, &[vec![1, a], vec![a, f4.mul(a, a)]]), 1);
    }
}
