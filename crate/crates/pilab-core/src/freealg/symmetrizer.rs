//! Young symmetrizers applied through the permutation action.

use num_rational::BigRational;

use super::{act_permutation, Polynomial, VarSpec};
use crate::partitions::Partition;
use crate::perm::Permutation;
use crate::Error;

/// A tableau whose entries are variable slots (0-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tableau {
    rows: Vec<Vec<u8>>,
}

impl Tableau {
    /// Entries must be distinct and row lengths weakly decreasing.
    pub fn new(rows: Vec<Vec<u8>>) -> Result<Tableau, Error> {
        let mut all: Vec<u8> = rows.iter().flatten().copied().collect();
        all.sort_unstable();
        all.dedup();
        if all.len() != rows.iter().map(Vec::len).sum::<usize>() {
            return Err(Error::TableauMismatch(
                "repeated entry in tableau".to_string(),
            ));
        }
        for w in rows.windows(2) {
            if w[0].len() < w[1].len() {
                return Err(Error::TableauMismatch(
                    "row lengths must be weakly decreasing".to_string(),
                ));
            }
        }
        if rows.iter().any(Vec::is_empty) {
            return Err(Error::TableauMismatch("empty tableau row".to_string()));
        }
        Ok(Tableau { rows })
    }

    pub fn shape(&self) -> Partition {
        Partition::new(self.rows.iter().map(|r| r.len() as u32).collect())
            .expect("row lengths are weakly decreasing")
    }

    pub fn entries(&self) -> Vec<u8> {
        let mut all: Vec<u8> = self.rows.iter().flatten().copied().collect();
        all.sort_unstable();
        all
    }

    fn columns(&self) -> Vec<Vec<u8>> {
        let width = self.rows.first().map_or(0, Vec::len);
        (0..width)
            .map(|c| {
                self.rows
                    .iter()
                    .filter_map(|r| r.get(c).copied())
                    .collect()
            })
            .collect()
    }
}

/// All permutations of `{0..n}` that permute `set` arbitrarily and fix
/// everything else.
fn permutations_of_set(n: usize, set: &[u8]) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut arrangement: Vec<u8> = set.to_vec();
    fn rec(
        n: usize,
        set: &[u8],
        arrangement: &mut Vec<u8>,
        pos: usize,
        out: &mut Vec<Permutation>,
    ) {
        if pos == set.len() {
            let mut images: Vec<u8> = (0..n as u8).collect();
            for (i, &target) in arrangement.iter().enumerate() {
                images[set[i] as usize] = target;
            }
            out.push(Permutation::from_images(images).expect("bijection"));
            return;
        }
        for i in pos..arrangement.len() {
            arrangement.swap(pos, i);
            rec(n, set, arrangement, pos + 1, out);
            arrangement.swap(pos, i);
        }
    }
    rec(n, set, &mut arrangement, 0, &mut out);
    out
}

/// Group-of-blocks product: permutations preserving each block setwise,
/// acting arbitrarily inside every block.
fn block_group(n: usize, blocks: &[Vec<u8>]) -> Vec<Permutation> {
    let mut acc = vec![Permutation::identity(n)];
    for block in blocks {
        let perms = permutations_of_set(n, block);
        let mut next = Vec::with_capacity(acc.len() * perms.len());
        for a in &acc {
            for p in &perms {
                next.push(a.compose(p));
            }
        }
        acc = next;
    }
    acc
}

fn apply_one(t: &Tableau, f: &Polynomial) -> Result<Polynomial, Error> {
    let n = f.vars().arity();
    let row_group = block_group(n, &t.rows);
    let col_group = block_group(n, &t.columns());
    let mut out = Polynomial::zero(f.vars());
    for p in &row_group {
        for q in &col_group {
            let sign = q.sign();
            let moved = act_permutation(&p.compose(q), f)?;
            let signed = if sign < 0 {
                moved.scale(&-BigRational::from_integer(1.into()))
            } else {
                moved
            };
            out = out.add(&signed)?;
        }
    }
    Ok(out)
}

/// Applies the raw group-algebra element `sum_{p in Row(T), q in Col(T)}
/// sgn(q) pq` for the tableau on the even slots, then (when present) for the
/// tableau on the odd slots. No normalization by `n!/d_lambda` is applied, so
/// all coefficients stay integral on integral input.
pub fn apply_young_symmetrizer(
    even_tableau: &Tableau,
    odd_tableau: Option<&Tableau>,
    f: &Polynomial,
) -> Result<Polynomial, Error> {
    let (even_slots, odd_slots): (Vec<u8>, Vec<u8>) = match f.vars() {
        VarSpec::Ordinary { n } => ((0..n as u8).collect(), Vec::new()),
        VarSpec::Graded { even, odd } => (
            (0..even as u8).collect(),
            (even as u8..(even + odd) as u8).collect(),
        ),
    };
    if even_tableau.entries() != even_slots {
        return Err(Error::TableauMismatch(format!(
            "first tableau must cover slots {even_slots:?}, got {:?}",
            even_tableau.entries()
        )));
    }
    match (odd_tableau, odd_slots.is_empty()) {
        (None, true) => {}
        (None, false) => {
            return Err(Error::TableauMismatch(
                "odd variables present but no tableau given for them".to_string(),
            ))
        }
        (Some(t), _) => {
            if t.entries() != odd_slots {
                return Err(Error::TableauMismatch(format!(
                    "second tableau must cover slots {odd_slots:?}, got {:?}",
                    t.entries()
                )));
            }
        }
    }
    let mut out = apply_one(even_tableau, f)?;
    if let Some(t) = odd_tableau {
        out = apply_one(t, &out)?;
    }
    Ok(out)
}
