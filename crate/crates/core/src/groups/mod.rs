//! Finite groups: cyclic, symmetric, and direct products, with conjugacy
//! classes, character tables, and element indexing.
//!
//! Every group is fully enumerated on construction (the symmetric-group size
//! cap keeps that honest), so conjugacy classes and characters are plain data
//! and all downstream checks can iterate over actual elements. Descriptors are
//! immutable after construction and cheap to share.
//!
//! Class and irrep orderings are deterministic:
//! - cyclic: classes by element value, irreps by momentum index;
//! - symmetric: classes by cycle type in ascending lexicographic order (the
//!   identity class first), irreps by dimension then descending lexicographic
//!   partition label, which reproduces the conventional small-group tables;
//! - products: lexicographic pairs of the factor orderings.

pub mod frobenius;
pub mod partition;
pub mod permutation;
mod table;

pub use frobenius::{frobenius_character, irrep_dimension, murnaghan_nakayama};
pub use partition::Partition;
pub use permutation::{canonical_index, permutation_from_index, Permutation};
pub use table::{verify_orthogonality, CharacterTable, CharacterTableWire, ClassWire, IrrepWire};

use std::collections::HashMap;
use std::f64::consts::TAU;
use std::fmt;
use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default cap on N for symmetric groups (720 elements); a config knob, not a
/// hard limit.
pub const DEFAULT_SYMMETRIC_CAP: usize = 6;

/// An element of a cyclic, symmetric, or product group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElement {
    /// Residue modulo the group order.
    Cyclic(usize),
    Perm(Permutation),
    Pair(Box<GroupElement>, Box<GroupElement>),
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Cyclic(v) => write!(f, "{v}"),
            GroupElement::Perm(p) => write!(f, "{p}"),
            GroupElement::Pair(a, b) => write!(f, "({a},{b})"),
        }
    }
}

/// Label of an irreducible representation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum IrrepLabel {
    /// Momentum index k of a cyclic group.
    Momentum(usize),
    /// Young-diagram partition of a symmetric group.
    Young(Partition),
    Pair(Box<IrrepLabel>, Box<IrrepLabel>),
}

impl fmt::Display for IrrepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IrrepLabel::Momentum(k) => write!(f, "k{k}"),
            IrrepLabel::Young(p) => write!(f, "{p}"),
            IrrepLabel::Pair(a, b) => write!(f, "{a}*{b}"),
        }
    }
}

/// Label of a conjugacy class.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ClassLabel {
    /// Element value of a cyclic group (classes are singletons).
    Value(usize),
    /// Cycle type of a symmetric group.
    CycleType(Partition),
    Pair(Box<ClassLabel>, Box<ClassLabel>),
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassLabel::Value(v) => write!(f, "{v}"),
            ClassLabel::CycleType(p) => write!(f, "{p}"),
            ClassLabel::Pair(a, b) => write!(f, "{a}*{b}"),
        }
    }
}

/// A conjugacy class with its full member list.
#[derive(Debug, Clone)]
pub struct ConjugacyClass {
    pub label: ClassLabel,
    pub representative: GroupElement,
    pub members: Vec<GroupElement>,
}

impl ConjugacyClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

#[derive(Debug, Clone)]
pub enum GroupKind {
    Cyclic { order: usize },
    Symmetric { n: usize },
    Product(Arc<FiniteGroup>, Arc<FiniteGroup>),
}

/// A finite group with enumerable elements, multiplication, conjugacy
/// classes, and a character table.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    kind: GroupKind,
    name: String,
    elements: Vec<GroupElement>,
    element_index: HashMap<GroupElement, usize>,
    classes: Vec<ConjugacyClass>,
    class_of: Vec<usize>,
    table: CharacterTable,
}

impl FiniteGroup {
    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn element_index(&self, g: &GroupElement) -> Option<usize> {
        self.element_index.get(g).copied()
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn n_classes(&self) -> usize {
        self.classes.len()
    }

    /// Class index of an element of this group.
    pub fn class_index_of(&self, g: &GroupElement) -> Option<usize> {
        self.element_index(g).map(|i| self.class_of[i])
    }

    pub fn character_table(&self) -> &CharacterTable {
        &self.table
    }

    pub fn identity(&self) -> GroupElement {
        match &self.kind {
            GroupKind::Cyclic { .. } => GroupElement::Cyclic(0),
            GroupKind::Symmetric { n } => GroupElement::Perm(Permutation::identity(*n)),
            GroupKind::Product(a, b) => {
                GroupElement::Pair(Box::new(a.identity()), Box::new(b.identity()))
            }
        }
    }

    pub fn multiply(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        match (&self.kind, a, b) {
            (GroupKind::Cyclic { order }, GroupElement::Cyclic(x), GroupElement::Cyclic(y)) => {
                GroupElement::Cyclic((x + y) % order)
            }
            (GroupKind::Symmetric { .. }, GroupElement::Perm(p), GroupElement::Perm(q)) => {
                GroupElement::Perm(p.compose(q))
            }
            (
                GroupKind::Product(g1, g2),
                GroupElement::Pair(a1, a2),
                GroupElement::Pair(b1, b2),
            ) => GroupElement::Pair(
                Box::new(g1.multiply(a1, b1)),
                Box::new(g2.multiply(a2, b2)),
            ),
            _ => panic!("element tag does not match group kind {}", self.name),
        }
    }

    pub fn inverse(&self, a: &GroupElement) -> GroupElement {
        match (&self.kind, a) {
            (GroupKind::Cyclic { order }, GroupElement::Cyclic(x)) => {
                GroupElement::Cyclic((order - x) % order)
            }
            (GroupKind::Symmetric { .. }, GroupElement::Perm(p)) => GroupElement::Perm(p.inverse()),
            (GroupKind::Product(g1, g2), GroupElement::Pair(a1, a2)) => {
                GroupElement::Pair(Box::new(g1.inverse(a1)), Box::new(g2.inverse(a2)))
            }
            _ => panic!("element tag does not match group kind {}", self.name),
        }
    }

    /// True when every conjugacy class is a singleton.
    pub fn is_abelian(&self) -> bool {
        self.classes.iter().all(|c| c.size() == 1)
    }

    /// Index of the trivial irrep (character 1 on every class).
    pub fn trivial_irrep_index(&self) -> usize {
        let one = Complex64::new(1.0, 0.0);
        for irrep in 0..self.table.n_classes() {
            if (0..self.table.n_classes()).all(|c| (self.table.chi(irrep, c) - one).norm() < 1e-9)
            {
                return irrep;
            }
        }
        panic!("character table of {} has no trivial row", self.name)
    }
}

/// The cyclic group Z_M with characters chi_k(v) = exp(2 pi i k v / M).
pub fn cyclic_group(m: usize) -> Result<FiniteGroup> {
    if m == 0 {
        return Err(Error::InvalidArgument("cyclic group order must be >= 1".into()));
    }
    let elements: Vec<GroupElement> = (0..m).map(GroupElement::Cyclic).collect();
    let classes: Vec<ConjugacyClass> = (0..m)
        .map(|v| ConjugacyClass {
            label: ClassLabel::Value(v),
            representative: GroupElement::Cyclic(v),
            members: vec![GroupElement::Cyclic(v)],
        })
        .collect();
    let chi = DMatrix::from_fn(m, m, |k, v| {
        // exact angle via the residue k*v mod M
        let angle = TAU * ((k * v) % m) as f64 / m as f64;
        Complex64::new(angle.cos(), angle.sin())
    });
    let name = format!("Z{m}");
    let table = CharacterTable {
        group_name: name.clone(),
        irreps: (0..m).map(|k| (IrrepLabel::Momentum(k), 1)).collect(),
        classes: (0..m).map(|v| (ClassLabel::Value(v), 1)).collect(),
        chi,
        chi_int: None,
    };
    Ok(assemble(GroupKind::Cyclic { order: m }, name, elements, classes, table))
}

/// The symmetric group S_N under the default size cap.
pub fn symmetric_group(n: usize) -> Result<FiniteGroup> {
    symmetric_group_with_cap(n, DEFAULT_SYMMETRIC_CAP)
}

/// The symmetric group S_N; `cap` bounds N because the group is enumerated
/// densely on construction.
pub fn symmetric_group_with_cap(n: usize, cap: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::InvalidArgument("symmetric group needs N >= 1".into()));
    }
    if n > cap {
        return Err(Error::SizeCap {
            what: "symmetric group degree",
            requested: n,
            cap,
        });
    }
    let order: usize = (1..=n).product();
    let perms: Vec<Permutation> = (0..order)
        .map(|i| permutation_from_index(n, i).expect("index in range"))
        .collect();

    // Classes by cycle type, identity class first (ascending lex order).
    let mut cycle_types = Partition::all_of(n);
    cycle_types.reverse();
    let classes: Vec<ConjugacyClass> = cycle_types
        .iter()
        .map(|mu| {
            let members: Vec<GroupElement> = perms
                .iter()
                .filter(|p| &p.cycle_type() == mu)
                .cloned()
                .map(GroupElement::Perm)
                .collect();
            ConjugacyClass {
                label: ClassLabel::CycleType(mu.clone()),
                representative: members[0].clone(),
                members,
            }
        })
        .collect();

    // Irreps by dimension, then descending lex partition label; this yields
    // the conventional ordering (trivial, sign, then higher-dimensional).
    let mut irreps: Vec<(Partition, i64)> = Partition::all_of(n)
        .into_iter()
        .map(|lambda| {
            let dim = irrep_dimension(&lambda).expect("valid partition");
            (lambda, dim)
        })
        .collect();
    irreps.sort_by(|a, b| a.1.cmp(&b.1));

    let chi_int: Vec<Vec<i64>> = irreps
        .iter()
        .map(|(lambda, _)| {
            cycle_types
                .iter()
                .map(|mu| frobenius_character(lambda, mu).expect("same N"))
                .collect()
        })
        .collect();
    let chi = DMatrix::from_fn(irreps.len(), cycle_types.len(), |i, j| {
        Complex64::new(chi_int[i][j] as f64, 0.0)
    });

    let name = format!("S{n}");
    let table = CharacterTable {
        group_name: name.clone(),
        irreps: irreps
            .iter()
            .map(|(lambda, dim)| (IrrepLabel::Young(lambda.clone()), *dim as usize))
            .collect(),
        classes: cycle_types
            .iter()
            .zip(&classes)
            .map(|(mu, class)| (ClassLabel::CycleType(mu.clone()), class.size()))
            .collect(),
        chi,
        chi_int: Some(chi_int),
    };
    let elements = perms.into_iter().map(GroupElement::Perm).collect();
    Ok(assemble(GroupKind::Symmetric { n }, name, elements, classes, table))
}

/// The direct product G x G' with component-wise multiplication. Classes are
/// pairs of factor classes and characters multiply.
pub fn product_group(g1: FiniteGroup, g2: FiniteGroup) -> Result<FiniteGroup> {
    let g1 = Arc::new(g1);
    let g2 = Arc::new(g2);
    let name = format!("{}x{}", g1.name(), g2.name());

    let mut elements = Vec::with_capacity(g1.order() * g2.order());
    for a in g1.elements() {
        for b in g2.elements() {
            elements.push(GroupElement::Pair(Box::new(a.clone()), Box::new(b.clone())));
        }
    }

    let mut classes = Vec::with_capacity(g1.n_classes() * g2.n_classes());
    for c1 in g1.classes() {
        for c2 in g2.classes() {
            let mut members = Vec::with_capacity(c1.size() * c2.size());
            for a in &c1.members {
                for b in &c2.members {
                    members.push(GroupElement::Pair(Box::new(a.clone()), Box::new(b.clone())));
                }
            }
            classes.push(ConjugacyClass {
                label: ClassLabel::Pair(Box::new(c1.label.clone()), Box::new(c2.label.clone())),
                representative: members[0].clone(),
                members,
            });
        }
    }

    let t1 = g1.character_table();
    let t2 = g2.character_table();
    let chi = t1.matrix().kronecker(t2.matrix());
    let chi_int = match (t1.integer_characters(), t2.integer_characters()) {
        (Some(a), Some(b)) => {
            let mut rows = Vec::new();
            for ra in a {
                for rb in b {
                    let mut row = Vec::new();
                    for &x in ra {
                        for &y in rb {
                            row.push(x * y);
                        }
                    }
                    rows.push(row);
                }
            }
            Some(rows)
        }
        _ => None,
    };

    let mut irreps = Vec::new();
    for (la, da) in t1.irreps() {
        for (lb, db) in t2.irreps() {
            irreps.push((
                IrrepLabel::Pair(Box::new(la.clone()), Box::new(lb.clone())),
                da * db,
            ));
        }
    }
    let mut class_infos = Vec::new();
    for (la, sa) in t1.classes() {
        for (lb, sb) in t2.classes() {
            class_infos.push((
                ClassLabel::Pair(Box::new(la.clone()), Box::new(lb.clone())),
                sa * sb,
            ));
        }
    }

    let table = CharacterTable {
        group_name: name.clone(),
        irreps,
        classes: class_infos,
        chi,
        chi_int,
    };
    Ok(assemble(GroupKind::Product(g1, g2), name, elements, classes, table))
}

fn assemble(
    kind: GroupKind,
    name: String,
    elements: Vec<GroupElement>,
    classes: Vec<ConjugacyClass>,
    table: CharacterTable,
) -> FiniteGroup {
    let element_index: HashMap<GroupElement, usize> = elements
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, g)| (g, i))
        .collect();
    let mut class_of = vec![usize::MAX; elements.len()];
    for (ci, class) in classes.iter().enumerate() {
        for member in &class.members {
            class_of[element_index[member]] = ci;
        }
    }
    debug_assert!(class_of.iter().all(|&c| c != usize::MAX));
    FiniteGroup {
        kind,
        name,
        elements,
        element_index,
        classes,
        class_of,
        table,
    }
}
