//! Finite lattice-ordered effect algebras.
//!
//! An algebra is given by its partial-sum table over a dense carrier
//! `0..n`. Construction validates every axiom exhaustively and then freezes
//! the derived structure (difference, order, lattice operations, complements
//! and symmetric difference) into lookup tables.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::elements::{ElementId, ElementSet, MAX_ELEMENTS};
use crate::error::{Error, Result};

/// Sentinel for an undefined entry of a packed operation table.
const UNDEFINED: u8 = u8::MAX;

/// The effect-algebra law a table failed.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    /// `a ⊕ 0` is defined and equals `a`.
    ZeroNeutral,
    Commutativity,
    Associativity,
    /// Every element has exactly one orthosupplement.
    UniqueComplement,
    /// `a ⊕ 1` defined forces `a = 0`.
    ZeroOneLaw,
    /// `a ⊕ b = a ⊕ c` forces `b = c`.
    Cancellation,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::ZeroNeutral => "zero-neutral",
            Axiom::Commutativity => "commutativity",
            Axiom::Associativity => "associativity",
            Axiom::UniqueComplement => "unique-complement",
            Axiom::ZeroOneLaw => "zero-one-law",
            Axiom::Cancellation => "cancellation",
        };
        f.write_str(s)
    }
}

/// Which of the two sharp/unsharp characterizations an algebra satisfies.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub is_mv: bool,
    pub is_oml: bool,
}

/// A validated, immutable lattice-ordered effect algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EffectAlgebra {
    n: usize,
    zero: ElementId,
    one: ElementId,
    labels: Vec<String>,
    sum: Vec<u8>,
    /// `minus[c * n + a] = c ⊖ a`.
    minus: Vec<u8>,
    up: Vec<ElementSet>,
    down: Vec<ElementSet>,
    join: Vec<u8>,
    meet: Vec<u8>,
    delta: Vec<u8>,
    complement: Vec<u8>,
}

/// On-disk form: `{"n", "zero", "one", "labels", "sum"}` with `null` for
/// undefined sums.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub n: usize,
    pub zero: usize,
    pub one: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub sum: Vec<Vec<Option<usize>>>,
}

impl EffectAlgebra {
    /// Validates `sum_table` and derives the full structure.
    ///
    /// Laws are checked in a fixed order (zero-neutral, commutativity,
    /// zero-one law, unique complement, associativity, cancellation), then
    /// the derived order and the existence of all joins and meets.
    pub fn build(
        sum_table: &[Vec<Option<usize>>],
        zero: usize,
        one: usize,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let n = sum_table.len();
        if n == 0 {
            return Err(Error::Format("empty carrier".into()));
        }
        if n > MAX_ELEMENTS {
            return Err(Error::SizeCap { what: "carrier", n, cap: MAX_ELEMENTS });
        }
        if zero >= n || one >= n {
            return Err(Error::Format(format!("zero/one index out of range for n = {n}")));
        }
        let mut sum = vec![UNDEFINED; n * n];
        for (a, row) in sum_table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Format(format!("row {a} has length {}, expected {n}", row.len())));
            }
            for (b, entry) in row.iter().enumerate() {
                if let Some(c) = *entry {
                    if c >= n {
                        return Err(Error::Format(format!("sum[{a}][{b}] = {c} out of range")));
                    }
                    sum[a * n + b] = c as u8;
                }
            }
        }
        let labels = match labels {
            Some(l) if l.len() != n => {
                return Err(Error::Format(format!("{} labels for {n} elements", l.len())));
            }
            Some(l) => l,
            None => (0..n).map(|i| i.to_string()).collect(),
        };
        let s = |a: usize, b: usize| -> Option<usize> {
            let v = sum[a * n + b];
            (v != UNDEFINED).then_some(v as usize)
        };
        let violation = |axiom, witness: Vec<usize>| Error::AxiomViolation { axiom, witness };

        for a in 0..n {
            if s(a, zero) != Some(a) {
                return Err(violation(Axiom::ZeroNeutral, vec![a]));
            }
        }
        for a in 0..n {
            for b in 0..n {
                if s(a, b) != s(b, a) {
                    return Err(violation(Axiom::Commutativity, vec![a, b]));
                }
            }
        }
        for a in 0..n {
            if a != zero && s(a, one).is_some() {
                return Err(violation(Axiom::ZeroOneLaw, vec![a]));
            }
        }
        let mut complement = vec![UNDEFINED; n];
        for a in 0..n {
            let mut found = None;
            for b in 0..n {
                if s(a, b) == Some(one) {
                    if found.is_some() {
                        return Err(violation(Axiom::UniqueComplement, vec![a]));
                    }
                    found = Some(b);
                }
            }
            match found {
                Some(b) => complement[a] = b as u8,
                None => return Err(violation(Axiom::UniqueComplement, vec![a])),
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let Some(bc) = s(b, c) else { continue };
                    let Some(a_bc) = s(a, bc) else { continue };
                    match s(a, b).and_then(|ab| s(ab, c)) {
                        Some(ab_c) if ab_c == a_bc => {}
                        _ => return Err(violation(Axiom::Associativity, vec![a, b, c])),
                    }
                }
            }
        }
        let mut minus = vec![UNDEFINED; n * n];
        for a in 0..n {
            for b in 0..n {
                if let Some(c) = s(a, b) {
                    let slot = &mut minus[c * n + a];
                    if *slot != UNDEFINED {
                        return Err(violation(Axiom::Cancellation, vec![a, *slot as usize, b]));
                    }
                    *slot = b as u8;
                }
            }
        }

        let mut up = vec![ElementSet::EMPTY; n];
        let mut down = vec![ElementSet::EMPTY; n];
        for a in 0..n {
            for c in 0..n {
                if minus[c * n + a] != UNDEFINED {
                    up[a].insert(ElementId::new(c));
                    down[c].insert(ElementId::new(a));
                }
            }
        }
        let order_violation = |detail, witness| Error::NotAPartialOrder { detail, witness };
        for a in 0..n {
            let ea = ElementId::new(a);
            if !up[a].contains(ea) {
                return Err(order_violation("not reflexive", vec![a]));
            }
            if !up[zero].contains(ea) || !down[one].contains(ea) {
                return Err(order_violation("zero/one are not bounds", vec![a]));
            }
            for b in up[a].iter() {
                let b = b.index();
                if b != a && up[b].contains(ea) {
                    return Err(order_violation("not antisymmetric", vec![a, b]));
                }
                if !up[b].is_subset(up[a]) {
                    let c = (up[b] & !up[a]).first().unwrap().index();
                    return Err(order_violation("not transitive", vec![a, b, c]));
                }
            }
        }

        let mut join = vec![UNDEFINED; n * n];
        let mut meet = vec![UNDEFINED; n * n];
        for a in 0..n {
            for b in 0..n {
                let ub = up[a] & up[b];
                let lub = ub.iter().find(|&u| ub.is_subset(up[u.index()]));
                let Some(lub) = lub else {
                    return Err(Error::NotALattice { kind: "join", a, b });
                };
                let lb = down[a] & down[b];
                let glb = lb.iter().find(|&l| lb.is_subset(down[l.index()]));
                let Some(glb) = glb else {
                    return Err(Error::NotALattice { kind: "meet", a, b });
                };
                join[a * n + b] = lub.index() as u8;
                meet[a * n + b] = glb.index() as u8;
            }
        }
        let mut delta = vec![UNDEFINED; n * n];
        for i in 0..n * n {
            let (j, m) = (join[i] as usize, meet[i] as usize);
            delta[i] = minus[j * n + m];
            debug_assert_ne!(delta[i], UNDEFINED);
        }

        Ok(EffectAlgebra {
            n,
            zero: ElementId::new(zero),
            one: ElementId::new(one),
            labels,
            sum,
            minus,
            up,
            down,
            join,
            meet,
            delta,
            complement,
        })
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn zero(&self) -> ElementId {
        self.zero
    }

    #[inline]
    pub fn one(&self) -> ElementId {
        self.one
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> + Clone {
        (0..self.n).map(ElementId::new)
    }

    pub fn carrier(&self) -> ElementSet {
        ElementSet::full(self.n)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: ElementId) -> &str {
        &self.labels[a.index()]
    }

    /// Replaces the display names. Structure is unaffected.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::Format(format!("{} labels for {} elements", labels.len(), self.n)));
        }
        self.labels = labels;
        Ok(self)
    }

    /// Looks an element up by its display name.
    pub fn element(&self, label: &str) -> Option<ElementId> {
        self.labels.iter().position(|l| l == label).map(ElementId::new)
    }

    pub fn element_at(&self, index: usize) -> Option<ElementId> {
        (index < self.n).then(|| ElementId::new(index))
    }

    #[inline]
    fn lookup(table: &[u8], n: usize, a: ElementId, b: ElementId) -> Option<ElementId> {
        let v = table[a.index() * n + b.index()];
        (v != UNDEFINED).then(|| ElementId::new(v as usize))
    }

    /// `a ⊕ b`, or `None` when `a` and `b` are not orthogonal.
    #[inline]
    pub fn osum(&self, a: ElementId, b: ElementId) -> Option<ElementId> {
        Self::lookup(&self.sum, self.n, a, b)
    }

    /// `c ⊖ a`, defined exactly when `a ≤ c`.
    #[inline]
    pub fn ominus(&self, c: ElementId, a: ElementId) -> Option<ElementId> {
        Self::lookup(&self.minus, self.n, c, a)
    }

    #[inline]
    pub fn is_orthogonal(&self, a: ElementId, b: ElementId) -> bool {
        self.sum[a.index() * self.n + b.index()] != UNDEFINED
    }

    #[inline]
    pub fn leq(&self, a: ElementId, b: ElementId) -> bool {
        self.up[a.index()].contains(b)
    }

    /// `{c : a ≤ c}`.
    #[inline]
    pub fn up_set(&self, a: ElementId) -> ElementSet {
        self.up[a.index()]
    }

    /// `{c : c ≤ a}`.
    #[inline]
    pub fn down_set(&self, a: ElementId) -> ElementSet {
        self.down[a.index()]
    }

    #[inline]
    pub fn join(&self, a: ElementId, b: ElementId) -> ElementId {
        ElementId::new(self.join[a.index() * self.n + b.index()] as usize)
    }

    #[inline]
    pub fn meet(&self, a: ElementId, b: ElementId) -> ElementId {
        ElementId::new(self.meet[a.index() * self.n + b.index()] as usize)
    }

    #[inline]
    pub fn complement(&self, a: ElementId) -> ElementId {
        ElementId::new(self.complement[a.index()] as usize)
    }

    /// `(a ∨ b) ⊖ (a ∧ b)`.
    #[inline]
    pub fn symm_diff(&self, a: ElementId, b: ElementId) -> ElementId {
        ElementId::new(self.delta[a.index() * self.n + b.index()] as usize)
    }

    /// `(a ∨ c) ⊖ c`, total on a lattice-ordered algebra.
    #[inline]
    pub fn residual(&self, a: ElementId, c: ElementId) -> ElementId {
        let j = self.join(a, c);
        ElementId::new(self.minus[j.index() * self.n + c.index()] as usize)
    }

    /// Smallest pair `(a, b)` with `(a ∨ b) ⊖ b ≠ a ⊖ (a ∧ b)`.
    pub fn mv_counterexample(&self) -> Option<(ElementId, ElementId)> {
        for a in self.elements() {
            for b in self.elements() {
                if Some(self.residual(a, b)) != self.ominus(a, self.meet(a, b)) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// Smallest `a` with `a′ ∧ a ≠ 0`.
    pub fn oml_counterexample(&self) -> Option<ElementId> {
        self.elements().find(|&a| self.meet(self.complement(a), a) != self.zero)
    }

    pub fn classify(&self) -> Classification {
        Classification {
            is_mv: self.mv_counterexample().is_none(),
            is_oml: self.oml_counterexample().is_none(),
        }
    }

    pub fn to_json(&self) -> AlgebraJson {
        let sum = (0..self.n)
            .map(|a| {
                (0..self.n)
                    .map(|b| {
                        let v = self.sum[a * self.n + b];
                        (v != UNDEFINED).then_some(v as usize)
                    })
                    .collect()
            })
            .collect();
        AlgebraJson {
            n: self.n,
            zero: self.zero.index(),
            one: self.one.index(),
            labels: Some(self.labels.clone()),
            sum,
        }
    }

    pub fn from_json(json: &AlgebraJson) -> Result<Self> {
        if json.sum.len() != json.n {
            return Err(Error::Format(format!(
                "declared n = {} but sum table has {} rows",
                json.n,
                json.sum.len()
            )));
        }
        Self::build(&json.sum, json.zero, json.one, json.labels.clone())
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("algebra serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let json: AlgebraJson = serde_json::from_str(s)?;
        Self::from_json(&json)
    }

    /// An isomorphism `self → other` as an element map, if one exists.
    ///
    /// Plain backtracking over partial-sum tables; intended for fixtures.
    pub fn find_isomorphism(&self, other: &EffectAlgebra) -> Option<Vec<ElementId>> {
        if self.n != other.n {
            return None;
        }
        let n = self.n;
        let profile = |alg: &EffectAlgebra, a: usize| {
            let e = ElementId::new(a);
            let orth = alg.elements().filter(|&b| alg.is_orthogonal(e, b)).count();
            (orth, alg.up[a].len(), alg.down[a].len())
        };
        let mut map: Vec<Option<usize>> = vec![None; n];
        let mut used = vec![false; n];
        map[self.zero.index()] = Some(other.zero.index());
        used[other.zero.index()] = true;
        if self.one != self.zero {
            if used[other.one.index()] {
                return None;
            }
            map[self.one.index()] = Some(other.one.index());
            used[other.one.index()] = true;
        } else if other.one != other.zero {
            return None;
        }
        let order: Vec<usize> = (0..n).filter(|&a| map[a].is_none()).collect();

        fn consistent(s: &EffectAlgebra, o: &EffectAlgebra, map: &[Option<usize>], a: usize) -> bool {
            let n = s.n;
            let ma = map[a].unwrap();
            for b in 0..n {
                let Some(mb) = map[b] else { continue };
                let lhs = s.sum[a * n + b];
                let rhs = o.sum[ma * n + mb];
                match (lhs == UNDEFINED, rhs == UNDEFINED) {
                    (true, true) => {}
                    (false, false) => {
                        if let Some(mc) = map[lhs as usize] {
                            if mc != rhs as usize {
                                return false;
                            }
                        }
                    }
                    _ => return false,
                }
            }
            true
        }

        fn search(
            s: &EffectAlgebra,
            o: &EffectAlgebra,
            order: &[usize],
            depth: usize,
            map: &mut Vec<Option<usize>>,
            used: &mut Vec<bool>,
            profile: &dyn Fn(&EffectAlgebra, usize) -> (usize, usize, usize),
        ) -> bool {
            if depth == order.len() {
                // Every sum entry is checked once both endpoints and the result are mapped.
                return (0..s.n).all(|a| consistent(s, o, map, a));
            }
            let a = order[depth];
            let pa = profile(s, a);
            for t in 0..o.n {
                if used[t] || profile(o, t) != pa {
                    continue;
                }
                map[a] = Some(t);
                used[t] = true;
                if consistent(s, o, map, a) && search(s, o, order, depth + 1, map, used, profile) {
                    return true;
                }
                map[a] = None;
                used[t] = false;
            }
            false
        }

        if search(self, other, &order, 0, &mut map, &mut used, &profile) {
            Some(map.into_iter().map(|m| ElementId::new(m.unwrap())).collect())
        } else {
            None
        }
    }

    pub fn is_isomorphic(&self, other: &EffectAlgebra) -> bool {
        self.find_isomorphism(other).is_some()
    }
}

/// Same algebra by identity or by structure.
pub(crate) fn same_algebra(a: &EffectAlgebra, b: &EffectAlgebra) -> bool {
    std::ptr::eq(a, b) || a == b
}
