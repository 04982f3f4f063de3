//! Littlewood-Richardson coefficients by direct skew-tableau enumeration.

use super::Partition;
use crate::Error;

/// Multiplicity of the irreducible character of shape `nu` in the character
/// induced from `chi_lambda (x) chi_mu`; requires `|lambda| + |mu| = |nu|`.
///
/// Counts semistandard skew tableaux of shape `nu / lambda` and content `mu`
/// whose reverse reading word is a lattice word.
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<u64, Error> {
    if lambda.size() + mu.size() != nu.size() {
        return Err(Error::DimensionMismatch(format!(
            "|{lambda}| + |{mu}| != |{nu}|"
        )));
    }
    // lambda must fit inside nu for the skew shape to exist
    if lambda.rows() > nu.rows() {
        return Ok(0);
    }
    for i in 0..lambda.rows() {
        if lambda.part(i) > nu.part(i) {
            return Ok(0);
        }
    }
    if mu.size() == 0 {
        return Ok(1); // empty skew shape, empty filling
    }
    if mu.rows() > nu.rows() {
        // content mu needs at least rows(mu) distinct letters stacked in a column
        // inside nu/lambda; cheap necessary pruning is skipped, the search below
        // handles it anyway.
    }

    let rows = nu.rows();
    let letters = mu.rows();
    // Fill cells row by row, left to right. State per column: the entry placed
    // in the previous row (for strict column increase); per row: the previous
    // entry (for weak row increase); lattice counters over the reverse reading
    // word, which for row-by-row right-to-left reading is maintained by
    // processing each row right to left. To keep the lattice check incremental
    // while filling left to right, rows are filled and then committed to the
    // lattice counters right to left.
    let nu_parts: Vec<usize> = (0..rows).map(|i| nu.part(i) as usize).collect();
    let lam_parts: Vec<usize> = (0..rows).map(|i| lambda.part(i) as usize).collect();
    let width = nu_parts.iter().copied().max().unwrap_or(0);
    let mut above: Vec<Option<usize>> = vec![None; width]; // entry in previous row per column (committed rows)
    let mut remaining: Vec<u64> = (0..letters).map(|i| mu.part(i) as u64).collect();
    let mut lattice: Vec<u64> = vec![0; letters + 1]; // counts of letters seen in the reverse word
    let mut count = 0u64;

    fn fill_row(
        row: usize,
        col: usize,
        rows: usize,
        nu_parts: &[usize],
        lam_parts: &[usize],
        above: &mut Vec<Option<usize>>,
        row_entries: &mut Vec<usize>,
        remaining: &mut Vec<u64>,
        lattice: &mut Vec<u64>,
        count: &mut u64,
    ) {
        let lo = lam_parts[row];
        let hi = nu_parts[row];
        if col == hi {
            // Commit this row right to left to the lattice counters, checking
            // the lattice property, then recurse into the next row.
            let mut committed = 0usize;
            let mut ok = true;
            for idx in (0..row_entries.len()).rev() {
                let e = row_entries[idx];
                // lattice: after adding letter e, count(e) <= count(e-1)
                if e > 0 && lattice[e] + 1 > lattice[e - 1] {
                    ok = false;
                    break;
                }
                lattice[e] += 1;
                committed += 1;
            }
            if ok {
                if row + 1 == rows {
                    *count += 1;
                } else {
                    let mut saved_above: Vec<Option<usize>> = Vec::new();
                    for c in 0..nu_parts[row] {
                        saved_above.push(above[c]);
                        above[c] = if c >= lo {
                            Some(row_entries[c - lo])
                        } else {
                            None
                        };
                    }
                    let mut next_entries = Vec::new();
                    fill_row(
                        row + 1,
                        lam_parts[row + 1],
                        rows,
                        nu_parts,
                        lam_parts,
                        above,
                        &mut next_entries,
                        remaining,
                        lattice,
                        count,
                    );
                    for (c, v) in saved_above.into_iter().enumerate() {
                        above[c] = v;
                    }
                }
            }
            for idx in (row_entries.len() - committed)..row_entries.len() {
                lattice[row_entries[idx]] -= 1;
            }
            return;
        }
        let min_by_row = if col > lo {
            row_entries[col - lo - 1]
        } else {
            0
        };
        let min_by_col = match above[col] {
            Some(a) => a + 1,
            None => 0,
        };
        let low = min_by_row.max(min_by_col);
        for e in low..remaining.len() {
            if remaining[e] == 0 {
                continue;
            }
            remaining[e] -= 1;
            row_entries.push(e);
            fill_row(
                row,
                col + 1,
                rows,
                nu_parts,
                lam_parts,
                above,
                row_entries,
                remaining,
                lattice,
                count,
            );
            row_entries.pop();
            remaining[e] += 1;
        }
    }

    let mut row_entries = Vec::new();
    fill_row(
        0,
        lam_parts.first().copied().unwrap_or(0),
        rows,
        &nu_parts,
        &lam_parts,
        &mut above,
        &mut row_entries,
        &mut remaining,
        &mut lattice,
        &mut count,
    );
    Ok(count)
}
