#![allow(dead_code)] // each integration test binary uses its own subset

//! Independent oracles for the integration suites. Everything here is
//! deliberately written against different algorithms than the library:
//! character tables come from permutation characters and Gram-Schmidt, not
//! the border-strip recursion; tableau counts from corner removal, not hook
//! lengths; ranks from plain rational Gaussian elimination.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use pilab_core::partitions::{enumerate_partitions, Partition};

/// p(n) by the pentagonal-number recurrence.
pub fn partition_count(n: usize) -> u64 {
    let mut table = vec![0i64; n + 1];
    table[0] = 1;
    for i in 1..=n {
        let mut sum = 0i64;
        let mut k = 1i64;
        loop {
            let g1 = (k * (3 * k - 1) / 2) as usize;
            if g1 > i {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            sum += sign * table[i - g1];
            let g2 = (k * (3 * k + 1) / 2) as usize;
            if g2 <= i {
                sum += sign * table[i - g2];
            }
            k += 1;
        }
        table[i] = sum;
    }
    table[n] as u64
}

/// Number of standard Young tableaux by recursive corner removal.
pub fn count_standard_tableaux(shape: &Partition) -> BigUint {
    fn rec(parts: &mut Vec<u32>, memo: &mut HashMap<Vec<u32>, BigUint>) -> BigUint {
        if parts.is_empty() {
            return BigUint::one();
        }
        if let Some(hit) = memo.get(parts) {
            return hit.clone();
        }
        let key = parts.clone();
        let mut total = BigUint::zero();
        for i in 0..parts.len() {
            // a removable corner: last box of row i
            if i + 1 == parts.len() || parts[i] > parts[i + 1] {
                parts[i] -= 1;
                if parts[i] == 0 {
                    let removed = parts.remove(i);
                    debug_assert_eq!(removed, 0);
                    total += rec(parts, memo);
                    parts.insert(i, 0);
                }
                else {
                    total += rec(parts, memo);
                }
                parts[i] += 1;
            }
        }
        memo.insert(key, total.clone());
        total
    }
    let mut parts = shape.parts().to_vec();
    rec(&mut parts, &mut HashMap::new())
}

/// Catalan number by the closed binomial form `C(2k, k) / (k + 1)`.
pub fn catalan(k: usize) -> u64 {
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= BigUint::from(2 * k - i);
        den *= BigUint::from(i + 1);
    }
    let c = num / den / BigUint::from(k + 1);
    c.to_u64_digits().first().copied().unwrap_or(1)
}

/// Straightforward rational Gaussian elimination, no pivot tricks, no
/// dedup; used as the reference for rank values.
pub fn reference_rank(rows: &[Vec<BigRational>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows.to_vec();
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0usize;
    for c in 0..ncols {
        let Some(p) = (rank..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for i in 0..nrows {
            if i != rank && !m[i][c].is_zero() {
                let f = &m[i][c] / &m[rank][c];
                for j in c..ncols {
                    let sub = &f * &m[rank][j];
                    m[i][j] = &m[i][j] - sub;
                }
            }
        }
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}

/// All permutations of `0..n` as image vectors.
fn all_perms(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    fn rec(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if k == items.len() {
            out.push(items.clone());
            return;
        }
        for i in k..items.len() {
            items.swap(k, i);
            rec(items, k + 1, out);
            items.swap(k, i);
        }
    }
    rec(&mut items, 0, &mut out);
    out
}

fn cycle_type_of(perm: &[usize]) -> Vec<u32> {
    let mut seen = vec![false; perm.len()];
    let mut lens = Vec::new();
    for s in 0..perm.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0u32;
        let mut cur = s;
        while !seen[cur] {
            seen[cur] = true;
            cur = perm[cur];
            len += 1;
        }
        lens.push(len);
    }
    lens.sort_unstable_by(|a, b| b.cmp(a));
    lens
}

/// Character table of `S_n` built independently of the border-strip
/// recursion: permutation-module characters (fixed ordered set partitions)
/// reduced by Gram-Schmidt in reverse-lexicographic order. Rows and columns
/// are indexed by `enumerate_partitions(n)`.
pub struct BruteTable {
    pub partitions: Vec<Partition>,
    pub class_sizes: Vec<u64>,
    pub values: Vec<Vec<i64>>,
}

pub fn brute_character_table(n: u32) -> BruteTable {
    let partitions = enumerate_partitions(n);
    let perms = all_perms(n as usize);
    let classes: Vec<Vec<u32>> = partitions.iter().map(|p| p.parts().to_vec()).collect();

    let mut class_sizes = vec![0u64; classes.len()];
    let mut representative: Vec<Option<Vec<usize>>> = vec![None; classes.len()];
    for perm in &perms {
        let t = cycle_type_of(perm);
        let idx = classes.iter().position(|c| *c == t).expect("a class");
        class_sizes[idx] += 1;
        representative[idx].get_or_insert_with(|| perm.clone());
    }

    // permutation character of the tabloid action for shape lambda:
    // fixed points = ways to partition the cycles into blocks of sizes lambda_i
    let perm_char = |lambda: &Partition, rep: &[usize]| -> i64 {
        let cycles = cycle_type_of(rep);
        let blocks: Vec<u32> = lambda.parts().to_vec();
        // assigning each cycle to a block with enough remaining capacity;
        // blocks are ordered, so equal capacities still count separately
        fn assign_all(cycles: &[u32], remaining: &mut Vec<u32>, count: &mut i64) {
            match cycles.split_first() {
                None => *count += 1,
                Some((&c, rest)) => {
                    for i in 0..remaining.len() {
                        if remaining[i] >= c {
                            remaining[i] -= c;
                            assign_all(rest, remaining, count);
                            remaining[i] += c;
                        }
                    }
                }
            }
        }
        let mut count = 0i64;
        assign_all(&cycles, &mut blocks.clone(), &mut count);
        count
    };

    let order: i64 = perms.len() as i64;
    let inner = |a: &[i64], b: &[i64]| -> i64 {
        let dot: i64 = (0..a.len())
            .map(|c| class_sizes[c] as i64 * a[c] * b[c])
            .sum();
        assert_eq!(dot % order, 0, "inner product is integral");
        dot / order
    };

    // reverse-lex order refines dominance, so subtracting previously
    // extracted characters leaves exactly chi_lambda
    let mut values: Vec<Vec<i64>> = Vec::new();
    for lambda in &partitions {
        let mut phi: Vec<i64> = representative
            .iter()
            .map(|r| perm_char(lambda, r.as_ref().expect("seen")))
            .collect();
        let snapshot: Vec<Vec<i64>> = values.clone();
        for prev in &snapshot {
            let k = inner(&phi, prev);
            if k != 0 {
                for (x, y) in phi.iter_mut().zip(prev.iter()) {
                    *x -= k * y;
                }
            }
        }
        assert_eq!(inner(&phi, &phi), 1, "extracted character is irreducible");
        values.push(phi);
    }

    BruteTable {
        partitions,
        class_sizes,
        values,
    }
}

/// Littlewood-Richardson coefficient through the induction inner product:
/// `(1/(a! b!)) sum |C_alpha| |C_beta| chi_lambda(alpha) chi_mu(beta)
/// chi_nu(alpha join beta)`.
pub fn lr_by_characters(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    use pilab_core::partitions::{character_value, class_size, CycleType};
    let a = lambda.size();
    let b = mu.size();
    assert_eq!(a + b, nu.size());
    let mut total = BigInt::zero();
    for alpha in enumerate_partitions(a) {
        for beta in enumerate_partitions(b) {
            let mut joined: Vec<u32> = alpha
                .parts()
                .iter()
                .chain(beta.parts())
                .copied()
                .collect();
            joined.sort_unstable_by(|x, y| y.cmp(x));
            let joined = Partition::new(joined).expect("sorted parts");
            let ca = BigInt::from(
                u64::try_from(class_size(&CycleType::new(alpha.clone()))).expect("small"),
            );
            let cb = BigInt::from(
                u64::try_from(class_size(&CycleType::new(beta.clone()))).expect("small"),
            );
            let chi_l = character_value(lambda, &CycleType::new(alpha.clone())).unwrap();
            let chi_m = character_value(mu, &CycleType::new(beta.clone())).unwrap();
            let chi_n = character_value(nu, &CycleType::new(joined)).unwrap();
            total += ca * cb * BigInt::from(chi_l) * BigInt::from(chi_m) * BigInt::from(chi_n);
        }
    }
    let mut order = BigInt::one();
    for v in 2..=a {
        order *= BigInt::from(v);
    }
    for v in 2..=b {
        order *= BigInt::from(v);
    }
    let (q, r) = (total.clone() / &order, total % &order);
    assert!(r.is_zero(), "induction inner product is integral");
    u64::try_from(q).expect("non-negative and small")
}

/// Evaluates a bracketing tree given by nested pairs on basis indices; test
/// local, no sharing with the library's evaluators.
#[derive(Clone, Debug)]
pub enum RefTree {
    Leaf(usize),
    Node(Box<RefTree>, Box<RefTree>),
}

pub fn reference_trees(n: usize) -> Vec<RefTree> {
    fn shapes(slots: &[usize]) -> Vec<RefTree> {
        if slots.len() == 1 {
            return vec![RefTree::Leaf(slots[0])];
        }
        let mut out = Vec::new();
        for split in 1..slots.len() {
            for l in shapes(&slots[..split]) {
                for r in shapes(&slots[split..]) {
                    out.push(RefTree::Node(Box::new(l.clone()), Box::new(r)));
                }
            }
        }
        out
    }
    // all leaf sequences = all permutations, all splits
    let mut out = Vec::new();
    for perm in all_perms(n) {
        for t in shapes(&perm) {
            out.push(t);
        }
    }
    out
}

pub fn eval_ref_tree(
    tree: &RefTree,
    table: &dyn Fn(usize, usize) -> Vec<BigRational>,
    dim: usize,
    tuple: &[usize],
) -> Vec<BigRational> {
    match tree {
        RefTree::Leaf(slot) => {
            let mut v = vec![BigRational::zero(); dim];
            v[tuple[*slot]] = BigRational::one();
            v
        }
        RefTree::Node(l, r) => {
            let lv = eval_ref_tree(l, table, dim, tuple);
            let rv = eval_ref_tree(r, table, dim, tuple);
            let mut out = vec![BigRational::zero(); dim];
            for (i, a) in lv.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in rv.iter().enumerate() {
                    if b.is_zero() {
                        continue;
                    }
                    let f = a * b;
                    for (k, c) in table(i, j).iter().enumerate() {
                        if !c.is_zero() {
                            out[k] += &f * c;
                        }
                    }
                }
            }
            out
        }
    }
}
