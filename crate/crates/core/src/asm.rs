//! Brute-force counter for vertically symmetric alternating sign matrices,
//! used as an independent cross-check of the non-crossing homogeneous values.

/// Counts m x m alternating sign matrices (entries in {-1,0,1}, rows and
/// columns summing to 1 with partial sums in {0,1}) that satisfy the mirror
/// symmetry M[i][j] = M[i][m+1-j]. Odd m only.
pub fn count_vertically_symmetric_asm(m: usize) -> u64 {
    assert!(m % 2 == 1, "vertical symmetry needs odd size");
    let mut col_sums = vec![0i8; m];
    count_rows(m, 0, &mut col_sums)
}

fn count_rows(m: usize, row: usize, col_sums: &mut Vec<i8>) -> u64 {
    if row == m {
        return if col_sums.iter().all(|&c| c == 1) { 1 } else { 0 };
    }
    let mut total = 0;
    let half = m / 2;
    // enumerate palindromic rows: free entries 0..=half (middle included)
    let mut row_entries = vec![0i8; m];
    let mut candidates: Vec<Vec<i8>> = Vec::new();
    enumerate_half(m, half, 0, 0, &mut row_entries, &mut candidates);
    for entries in candidates {
        if !row_ok(&entries, col_sums) {
            continue;
        }
        for (j, &e) in entries.iter().enumerate() {
            col_sums[j] += e;
        }
        total += count_rows(m, row + 1, col_sums);
        for (j, &e) in entries.iter().enumerate() {
            col_sums[j] -= e;
        }
    }
    total
}

fn row_ok(entries: &[i8], col_sums: &[i8]) -> bool {
    // full-row prefix sums must stay in {0,1} and end at 1
    let mut p = 0i8;
    for &e in entries {
        p += e;
        if !(0..=1).contains(&p) {
            return false;
        }
    }
    if p != 1 {
        return false;
    }
    // column partial sums must stay in {0,1}
    entries
        .iter()
        .enumerate()
        .all(|(j, &e)| (0..=1).contains(&(col_sums[j] + e)))
}

fn enumerate_half(
    m: usize,
    half: usize,
    pos: usize,
    prefix: i8,
    entries: &mut Vec<i8>,
    out: &mut Vec<Vec<i8>>,
) {
    if pos > half {
        out.push(entries.clone());
        return;
    }
    for e in [-1i8, 0, 1] {
        let p = prefix + e;
        // left prefix must already stay in {0,1}
        if !(0..=1).contains(&p) {
            continue;
        }
        entries[pos] = e;
        entries[m - 1 - pos] = e;
        enumerate_half(m, half, pos + 1, p, entries, out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_counts() {
        assert_eq!(count_vertically_symmetric_asm(1), 1);
        assert_eq!(count_vertically_symmetric_asm(3), 1);
        assert_eq!(count_vertically_symmetric_asm(5), 3);
        assert_eq!(count_vertically_symmetric_asm(7), 26);
    }
}
