//! Partition comparison: adjusted Rand index and normalized mutual
//! information, both computed from a sparse contingency table of exact
//! integer counts.

use std::collections::HashMap;

use thiserror::Error;

use crate::partition::Partition;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("partitions cover different vertex sets ({left} vs {right} vertices); vertices {} only in the larger one", fmt_range(.left, .right))]
pub struct CarrierError {
    pub left: usize,
    pub right: usize,
}

fn fmt_range(left: &usize, right: &usize) -> String {
    let (lo, hi) = (left.min(right), left.max(right));
    format!("{lo}..{hi}")
}

/// Pairwise intersection counts between the clusters of two partitions.
///
/// Rows follow the clusters of the first partition and columns those of the
/// second, each in order of first appearance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContingencyTable {
    cells: HashMap<(usize, usize), u64>,
    row_sums: Vec<u64>,
    col_sums: Vec<u64>,
    total: u64,
}

impl ContingencyTable {
    pub fn rows(&self) -> usize {
        self.row_sums.len()
    }

    pub fn cols(&self) -> usize {
        self.col_sums.len()
    }

    pub fn get(&self, row: usize, col: usize) -> u64 {
        self.cells.get(&(row, col)).copied().unwrap_or(0)
    }

    pub fn row_sums(&self) -> &[u64] {
        &self.row_sums
    }

    pub fn col_sums(&self) -> &[u64] {
        &self.col_sums
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    /// Non-zero cells.
    pub fn nonzero(&self) -> impl Iterator<Item = u64> + '_ {
        self.cells.values().copied()
    }

    pub fn to_dense(&self) -> Vec<Vec<u64>> {
        let mut dense = vec![vec![0; self.cols()]; self.rows()];
        for (&(i, j), &c) in &self.cells {
            dense[i][j] = c;
        }
        dense
    }
}

pub fn contingency(p: &Partition, q: &Partition) -> Result<ContingencyTable, CarrierError> {
    if p.len() != q.len() {
        return Err(CarrierError {
            left: p.len(),
            right: q.len(),
        });
    }
    let (p, q) = (p.canonical(), q.canonical());
    let rows = p.labels().iter().max().map_or(0, |m| m + 1);
    let cols = q.labels().iter().max().map_or(0, |m| m + 1);
    let mut row_sums = vec![0; rows];
    let mut col_sums = vec![0; cols];
    let mut cells = HashMap::new();
    for (&i, &j) in p.labels().iter().zip(q.labels()) {
        *cells.entry((i, j)).or_insert(0) += 1;
        row_sums[i] += 1;
        col_sums[j] += 1;
    }
    Ok(ContingencyTable {
        cells,
        row_sums,
        col_sums,
        total: p.len() as u64,
    })
}

fn pairs(x: u64) -> i128 {
    let x = x as i128;
    x * (x - 1) / 2
}

/// Hubert–Arabie adjusted Rand index.
///
/// When both partitions are trivial in the same way (all singletons, or a
/// single cluster) the index is undefined; it is reported as 1.
pub fn ari(p: &Partition, q: &Partition) -> Result<f64, CarrierError> {
    Ok(ari_from_table(&contingency(p, q)?))
}

pub fn ari_from_table(table: &ContingencyTable) -> f64 {
    let index: i128 = table.nonzero().map(pairs).sum();
    let a: i128 = table.row_sums().iter().map(|&x| pairs(x)).sum();
    let b: i128 = table.col_sums().iter().map(|&x| pairs(x)).sum();
    let total = pairs(table.total());
    // (index - ab/T) / ((a+b)/2 - ab/T), scaled by 2T to stay integral.
    let numerator = 2 * (index * total - a * b);
    let denominator = (a + b) * total - 2 * a * b;
    if denominator == 0 {
        return 1.0;
    }
    numerator as f64 / denominator as f64
}

fn entropy(sums: &[u64], total: f64) -> f64 {
    sums.iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / total;
            -p * p.ln()
        })
        .sum()
}

/// Mutual information normalized by the arithmetic mean of both entropies.
///
/// Identical groupings score exactly 1, including two single-cluster
/// partitions; if exactly one side has zero entropy the score is 0.
pub fn nmi(p: &Partition, q: &Partition) -> Result<f64, CarrierError> {
    Ok(nmi_from_table(&contingency(p, q)?))
}

pub fn nmi_from_table(table: &ContingencyTable) -> f64 {
    let n = table.total() as f64;
    if table.total() == 0 {
        return 1.0;
    }
    let hp = entropy(table.row_sums(), n);
    let hq = entropy(table.col_sums(), n);
    if hp == 0.0 && hq == 0.0 {
        return 1.0;
    }
    if hp == 0.0 || hq == 0.0 {
        return 0.0;
    }
    if table.cells.len() == table.rows() && table.rows() == table.cols() {
        // One non-zero cell per row and column: the groupings coincide.
        return 1.0;
    }
    let mi: f64 = table
        .cells
        .iter()
        .map(|(&(i, j), &c)| {
            let c = c as f64;
            let ai = table.row_sums[i] as f64;
            let bj = table.col_sums[j] as f64;
            c / n * (n * c / (ai * bj)).ln()
        })
        .sum();
    (2.0 * mi / (hp + hq)).clamp(0.0, 1.0)
}

/// Both scores from one contingency table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scores {
    pub ari: f64,
    pub nmi: f64,
}

pub fn scores(p: &Partition, q: &Partition) -> Result<Scores, CarrierError> {
    let table = contingency(p, q)?;
    Ok(Scores {
        ari: ari_from_table(&table),
        nmi: nmi_from_table(&table),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(labels: &[usize]) -> Partition {
        Partition::from_labels(labels.to_vec())
    }

    #[test]
    fn diagonal_table_for_equal_partitions() {
        let p = part(&[0, 0, 1, 1]);
        let t = contingency(&p, &p).unwrap();
        assert_eq!(t.to_dense(), vec![vec![2, 0], vec![0, 2]]);
        assert_eq!(t.total(), 4);
    }

    #[test]
    fn crossed_partitions_give_all_ones() {
        let t = contingency(&part(&[0, 0, 1, 1]), &part(&[0, 1, 0, 1])).unwrap();
        assert_eq!(t.to_dense(), vec![vec![1, 1], vec![1, 1]]);
    }

    #[test]
    fn one_cluster_against_singletons_is_a_row() {
        let t = contingency(&part(&[0, 0, 0, 0]), &Partition::singletons(4)).unwrap();
        assert_eq!(t.to_dense(), vec![vec![1, 1, 1, 1]]);
    }

    #[test]
    fn hand_computed_values() {
        let p = part(&[0, 0, 1, 1]);
        let q = part(&[0, 1, 0, 1]);
        assert_eq!(ari(&p, &q).unwrap(), -0.5);
        assert_eq!(nmi(&p, &q).unwrap(), 0.0);
        assert_eq!(ari(&part(&[0; 4]), &Partition::singletons(4)).unwrap(), 0.0);
        assert_eq!(ari(&p, &part(&[3, 3, 1, 1])).unwrap(), 1.0);
        assert_eq!(nmi(&p, &part(&[3, 3, 1, 1])).unwrap(), 1.0);
    }

    #[test]
    fn degenerate_entropies() {
        let whole = part(&[0; 5]);
        assert_eq!(nmi(&whole, &whole).unwrap(), 1.0);
        assert_eq!(ari(&whole, &whole).unwrap(), 1.0);
        assert_eq!(nmi(&whole, &part(&[0, 0, 1, 1, 1])).unwrap(), 0.0);
        let single = Partition::singletons(5);
        assert_eq!(ari(&single, &single).unwrap(), 1.0);
    }

    #[test]
    fn carrier_mismatch() {
        let err = ari(&part(&[0, 0, 1]), &part(&[0, 1])).unwrap_err();
        assert_eq!(err, CarrierError { left: 3, right: 2 });
    }
}
