//! Named landmark-set constructions for `Q^n`.
//!
//! Member order inside every construction is fixed so output is byte-stable.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::hypercube::{enumerate_level, Dimension, Landmarks, Vertex};
use crate::resolve::is_resolving_fast;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConstructionId {
    PaperMinimal,
    Corollary,
    ErdosRenyiN,
    ErQ5,
    SmallMin,
    ProductLiftChain,
    LevelSet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CatalogEntry {
    pub id: ConstructionId,
    /// Name accepted on the command line.
    pub name: &'static str,
    pub parameters: &'static str,
    pub size: &'static str,
    pub provenance: &'static str,
}

pub const CATALOG: [CatalogEntry; 7] = [
    CatalogEntry {
        id: ConstructionId::PaperMinimal,
        name: "paper-minimal",
        parameters: "5 <= n <= 28",
        size: "n-1",
        provenance: "{e2,...,en}; minimal resolving set of Q^n for n >= 5",
    },
    CatalogEntry {
        id: ConstructionId::Corollary,
        name: "corollary",
        parameters: "5 <= n <= 28",
        size: "n-1",
        provenance: "{011...1, 1011...1, ..., 111...101} = {e1,...,e(n-1)} + 11...1; minimal resolving for n >= 5",
    },
    CatalogEntry {
        id: ConstructionId::ErdosRenyiN,
        name: "erdos-renyi",
        parameters: "2 <= n <= 28",
        size: "n",
        provenance: "{11...1, 011...1, 1011...1, ..., 111...101}; resolving set of Q^n (Erdos-Renyi)",
    },
    CatalogEntry {
        id: ConstructionId::ErQ5,
        name: "er-q5",
        parameters: "n = 5 (fixed)",
        size: "4",
        provenance: "{{1,2,3,4,5},{1,2,3},{2,4},{2,3,5}}; resolving set of Q^5 (Erdos-Renyi)",
    },
    CatalogEntry {
        id: ConstructionId::SmallMin,
        name: "small-min",
        parameters: "1 <= n <= 4",
        size: "n for n >= 2, 1 for n = 1",
        provenance: "{phi}, {phi,e2}, {phi,{1},{2}}, {phi,{2},{3},{4}}; minimum resolving sets of Q^1..Q^4",
    },
    CatalogEntry {
        id: ConstructionId::ProductLiftChain,
        name: "lift-chain",
        parameters: "2 <= n <= 28",
        size: "n-1 for n >= 5, n for n <= 4",
        provenance: "H x K2 lift {w1,...,wk,u1} iterated from the Q^5 size-4 set, or from {phi,e2} below n = 5",
    },
    CatalogEntry {
        id: ConstructionId::LevelSet,
        name: "level",
        parameters: "1 <= k <= n-1, 2 <= n <= 28",
        size: "C(n,k)",
        provenance: "level set X^(k): every k-subset of {1,...,n}; resolving for 2 <= k <= n-2 except k = n/2, where 00...0 and 11...1 tie (checked computationally)",
    },
];

impl ConstructionId {
    pub fn entry(self) -> &'static CatalogEntry {
        CATALOG
            .iter()
            .find(|e| e.id == self)
            .expect("every id has a catalog entry")
    }

    pub fn name(self) -> &'static str {
        self.entry().name
    }
}

impl fmt::Display for ConstructionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ConstructionId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CATALOG
            .iter()
            .find(|e| e.name == s)
            .map(|e| e.id)
            .ok_or_else(|| Error::UnknownConstruction(s.to_string()))
    }
}

fn range_error(name: &'static str, param: &'static str, value: u32, valid: &'static str) -> Error {
    Error::ConstructionRange {
        name,
        param,
        value,
        valid,
    }
}

fn units(n: Dimension, coords: impl Iterator<Item = u32>) -> Vec<Vertex> {
    coords
        .map(|i| Vertex::unit(i, n).expect("coordinate within dimension"))
        .collect()
}

/// `e_2, ..., e_n`.
pub fn paper_minimal_set(n: Dimension) -> Result<Landmarks> {
    if n.get() < 5 {
        return Err(range_error("paper-minimal", "n", n.get(), "5..=28"));
    }
    Ok(Landmarks::from_trusted(n, units(n, 2..=n.get())))
}

/// All-ones with a single zero in coordinate `i`, for `i = 1, ..., n-1`.
pub fn corollary_set(n: Dimension) -> Result<Landmarks> {
    if n.get() < 5 {
        return Err(range_error("corollary", "n", n.get(), "5..=28"));
    }
    Ok(one_zero_vertices(n))
}

fn one_zero_vertices(n: Dimension) -> Landmarks {
    let ones = n.mask();
    Landmarks::from_trusted(
        n,
        (1..n.get())
            .map(|i| Vertex::from_bits(ones ^ (1 << (i - 1))))
            .collect(),
    )
}

/// The all-ones vertex followed by the `n - 1` one-zero vertices.
pub fn erdos_renyi_set(n: Dimension) -> Result<Landmarks> {
    if n.get() < 2 {
        return Err(range_error("erdos-renyi", "n", n.get(), "2..=28"));
    }
    let mut members = vec![n.all_ones()];
    members.extend_from_slice(one_zero_vertices(n).members());
    Ok(Landmarks::from_trusted(n, members))
}

/// `{1,2,3,4,5}, {1,2,3}, {2,4}, {2,3,5}` in `Q^5`.
pub fn er_q5_set() -> Landmarks {
    let n = Dimension::new(5).expect("5 is a valid dimension");
    let members = [&[1, 2, 3, 4, 5][..], &[1, 2, 3], &[2, 4], &[2, 3, 5]]
        .iter()
        .map(|els| Vertex::from_elements(els, n).expect("fixed elements are valid"))
        .collect();
    Landmarks::from_trusted(n, members)
}

/// Minimum resolving sets for `n <= 4`.
pub fn small_min_set(n: Dimension) -> Result<Landmarks> {
    let coords: &[u32] = match n.get() {
        1 => &[],
        2 => &[2],
        3 => &[1, 2],
        4 => &[2, 3, 4],
        _ => return Err(range_error("small-min", "n", n.get(), "1..=4")),
    };
    let mut members = vec![Vertex::EMPTY];
    members.extend(units(n, coords.iter().copied()));
    Ok(Landmarks::from_trusted(n, members))
}

/// Lifts a resolving set of `Q^n` to `Q^{n+1} = Q^n x K_2`: every member
/// with the new coordinate `n+1` set to 0, then the first member with it set
/// to 1.
pub fn product_lift(w: &Landmarks) -> Result<Landmarks> {
    let up = w.dimension().succ()?;
    if !is_resolving_fast(w).resolving {
        return Err(Error::NotResolving);
    }
    Ok(lift_once(w, up))
}

fn lift_once(w: &Landmarks, up: Dimension) -> Landmarks {
    let mut members = w.members().to_vec();
    members.push(Vertex::from_bits(
        w.members()[0].bits() | (1 << w.dimension().get()),
    ));
    Landmarks::from_trusted(up, members)
}

/// Applies the lift repeatedly until the set lives in dimension `target`.
/// Only `base` is verified; each lift of a resolving set resolves.
pub fn lift_to(base: &Landmarks, target: Dimension) -> Result<Landmarks> {
    if target < base.dimension() {
        return Err(Error::InvalidArgument(format!(
            "cannot lift from dimension {} down to {target}",
            base.dimension()
        )));
    }
    if !is_resolving_fast(base).resolving {
        return Err(Error::NotResolving);
    }
    let mut cur = base.clone();
    while cur.dimension() < target {
        let up = cur.dimension().succ()?;
        cur = lift_once(&cur, up);
    }
    Ok(cur)
}

/// Size `n - 1` from the `Q^5` set for `n >= 5`; size `n` from `{phi, e2}`
/// for `2 <= n <= 4`.
pub fn product_lift_chain(n: Dimension) -> Result<Landmarks> {
    match n.get() {
        0 | 1 => Err(range_error("lift-chain", "n", n.get(), "2..=28")),
        2..=4 => lift_to(&small_min_set(Dimension::new(2)?)?, n),
        _ => lift_to(&er_q5_set(), n),
    }
}

/// Smallest named construction for each dimension; the search upper bound.
pub fn best_construction(n: Dimension) -> Landmarks {
    if n.get() <= 4 {
        small_min_set(n).expect("n <= 4")
    } else {
        corollary_set(n).expect("n >= 5")
    }
}

/// Every vertex of level `k`, in increasing numeric order.
pub fn level_set_landmarks(n: Dimension, k: u32) -> Result<Landmarks> {
    if k < 1 || k + 1 > n.get() {
        return Err(Error::LevelOutOfRange {
            k,
            n: n.get(),
            min: 1,
            max: n.get().saturating_sub(1),
        });
    }
    Ok(Landmarks::from_trusted(n, enumerate_level(n, k)?.collect()))
}

/// Catalog dispatcher used by the CLI.
pub fn build(id: ConstructionId, n: Option<u32>, k: Option<u32>) -> Result<Landmarks> {
    let need_n = || -> Result<Dimension> {
        let n = n.ok_or_else(|| {
            Error::InvalidArgument(format!("construction {id} requires --n ({})", id.entry().parameters))
        })?;
        Dimension::new(n)
    };
    match id {
        ConstructionId::PaperMinimal => paper_minimal_set(need_n()?),
        ConstructionId::Corollary => corollary_set(need_n()?),
        ConstructionId::ErdosRenyiN => erdos_renyi_set(need_n()?),
        ConstructionId::ErQ5 => match n {
            None | Some(5) => Ok(er_q5_set()),
            Some(other) => Err(range_error("er-q5", "n", other, "5")),
        },
        ConstructionId::SmallMin => small_min_set(need_n()?),
        ConstructionId::ProductLiftChain => product_lift_chain(need_n()?),
        ConstructionId::LevelSet => {
            let n = need_n()?;
            let k = k.ok_or_else(|| {
                Error::InvalidArgument("construction level requires --k (1 <= k <= n-1)".into())
            })?;
            level_set_landmarks(n, k)
        }
    }
}
