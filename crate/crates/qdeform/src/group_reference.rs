//! Brute-force ground truth for the two group families: multiplication
//! tables built from the presentations, conjugacy-class counts, and group
//! algebra structure constants for the `t = 0` comparison.
//!
//! Elements are encoded as pairs `(i, j)` standing for `sigma^i y^j` with
//! `0 <= i < 2^(n-1)` and `j` in `{0, 1}`; the flat index is `i + j*2^(n-1)`.
//! The table is derived symbolically from the relations and then validated
//! exhaustively, which keeps it independent of the deformation code path.

use crate::error::{Error, Result};
use crate::finite_field::{GfContext, GfElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupKind {
    Quaternion,
    Dihedral,
}

impl GroupKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            GroupKind::Quaternion => "quaternion",
            GroupKind::Dihedral => "dihedral",
        }
    }
}

impl std::str::FromStr for GroupKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<GroupKind> {
        match s {
            "quaternion" => Ok(GroupKind::Quaternion),
            "dihedral" => Ok(GroupKind::Dihedral),
            other => Err(Error::Config(format!(
                "unknown group kind {other:?} (expected \"quaternion\" or \"dihedral\")"
            ))),
        }
    }
}

impl std::fmt::Display for GroupKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Exhaustively validated multiplication table of Q_{2^n} or D_{2^n}.
#[derive(Clone, Debug)]
pub struct GroupTable {
    n: u32,
    kind: GroupKind,
    order: usize,
    half: usize,
    mul: Vec<Vec<usize>>,
}

impl GroupTable {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Order of the cyclic subgroup, 2^(n-1).
    pub fn half(&self) -> usize {
        self.half
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < self.half && j < 2);
        i + j * self.half
    }

    pub fn label(&self, idx: usize) -> (usize, usize) {
        (idx % self.half, idx / self.half)
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order)
            .find(|&b| self.mul[a][b] == 0)
            .expect("validated table has inverses")
    }
}

/// Builds the order-2^n table from the presentation
/// `sigma^(2^(n-1)) = 1`, `y sigma y^(-1) = sigma^(-1)`, and
/// `y^2 = sigma^(2^(n-2))` (quaternion) or `y^2 = 1` (dihedral),
/// then checks identity, inverses, associativity and the relations
/// exhaustively.
pub fn build_group_table(n: u32, kind: GroupKind) -> Result<GroupTable> {
    if n < 3 {
        return Err(Error::Precondition(format!("need n >= 3, got {n}")));
    }
    if n > 16 {
        return Err(Error::Config(format!("table of order 2^{n} is unreasonable")));
    }
    let half = 1usize << (n - 1);
    let order = 2 * half;
    let quarter = 1usize << (n - 2);

    let product = |i1: usize, j1: usize, i2: usize, j2: usize| -> (usize, usize) {
        // sigma^i1 y^j1 sigma^i2 y^j2: conjugation flips the sign of i2 when
        // j1 = 1, and y^2 contributes the central element when j1 = j2 = 1.
        let i2c = if j1 == 1 { (half - i2) % half } else { i2 };
        let mut i = (i1 + i2c) % half;
        let j = (j1 + j2) % 2;
        if j1 == 1 && j2 == 1 && kind == GroupKind::Quaternion {
            i = (i + quarter) % half;
        }
        (i, j)
    };

    let mut mul = vec![vec![0usize; order]; order];
    for i1 in 0..half {
        for j1 in 0..2 {
            for i2 in 0..half {
                for j2 in 0..2 {
                    let (i, j) = product(i1, j1, i2, j2);
                    mul[i1 + j1 * half][i2 + j2 * half] = i + j * half;
                }
            }
        }
    }
    let table = GroupTable { n, kind, order, half, mul };

    // identity and inverses
    for a in 0..order {
        if table.mul(0, a) != a || table.mul(a, 0) != a {
            return Err(Error::Inconsistent("identity fails".into()));
        }
        if !(0..order).any(|b| table.mul(a, b) == 0) {
            return Err(Error::Inconsistent(format!("element {a} has no inverse")));
        }
    }
    // associativity, exhaustively
    for a in 0..order {
        for b in 0..order {
            let ab = table.mul(a, b);
            for c in 0..order {
                if table.mul(ab, c) != table.mul(a, table.mul(b, c)) {
                    return Err(Error::Inconsistent(format!(
                        "associativity fails at ({a},{b},{c})"
                    )));
                }
            }
        }
    }
    // relations
    let sigma = table.index(1, 0);
    let y = table.index(0, 1);
    let mut sp = 0usize;
    for _ in 0..half {
        sp = table.mul(sp, sigma);
    }
    if sp != 0 {
        return Err(Error::Inconsistent("sigma^(2^(n-1)) != 1".into()));
    }
    let y2 = table.mul(y, y);
    let expect_y2 = match kind {
        GroupKind::Quaternion => table.index(quarter, 0),
        GroupKind::Dihedral => 0,
    };
    if y2 != expect_y2 {
        return Err(Error::Inconsistent("y^2 relation fails".into()));
    }
    let y_inv = table.inverse(y);
    let conj = table.mul(table.mul(y, sigma), y_inv);
    if conj != table.index(half - 1, 0) {
        return Err(Error::Inconsistent("y sigma y^(-1) != sigma^(-1)".into()));
    }
    Ok(table)
}

/// Number of conjugacy classes, brute force over all conjugators.
pub fn conjugacy_class_count(table: &GroupTable) -> usize {
    let order = table.order();
    let mut seen = vec![false; order];
    let mut classes = 0usize;
    for a in 0..order {
        if seen[a] {
            continue;
        }
        classes += 1;
        for h in 0..order {
            let conj = table.mul(table.mul(h, a), table.inverse(h));
            seen[conj] = true;
        }
    }
    classes
}

/// Structure constants of an algebra on the monomial basis: `entries[i][j]`
/// lists the nonzero `(basis_index, coefficient)` pairs of the product of
/// basis elements `i` and `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureTable {
    pub order: usize,
    pub entries: Vec<Vec<Vec<(usize, GfElement)>>>,
}

/// Structure constants of the group algebra kG: each basis product is a
/// single basis element with coefficient 1.
pub fn group_algebra_structure_constants(table: &GroupTable, _ctx: GfContext) -> StructureTable {
    let order = table.order();
    let entries = (0..order)
        .map(|a| {
            (0..order)
                .map(|b| vec![(table.mul(a, b), GfElement::ONE)])
                .collect()
        })
        .collect();
    StructureTable { order, entries }
}
