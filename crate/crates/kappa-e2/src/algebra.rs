//! The deformed E(2) algebra: PBW normal forms for monomials `a^n v+^p v-^q`,
//! exact multiplication, and the full Hopf *-structure (coproduct, counit,
//! antipode, star).
//!
//! `a*` is stored as `a^-1` (forced by `a a* = a* a = I`), so a monomial is a
//! triple `(n, p, q)` with `n` any integer and `p`, `q` nonnegative. The
//! rewrite rules move all `a`-powers to the left and order `v+` before `v-`;
//! every correction term strictly lowers the `v`-degree, which is what makes
//! the rewriting terminate.

use crate::report::{Check, ReportFragment};
use crate::scalar::Scalar;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{LazyLock, Mutex};

/// PBW basis monomial `a^n v+^p v-^q`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial {
    pub n: i32,
    pub p: u32,
    pub q: u32,
}

impl Monomial {
    pub fn new(n: i32, p: u32, q: u32) -> Self {
        Monomial { n, p, q }
    }

    pub fn unit() -> Self {
        Monomial::new(0, 0, 0)
    }

    pub fn is_unit(&self) -> bool {
        self.n == 0 && self.p == 0 && self.q == 0
    }

    /// Filtration degree `|n| + p + q`.
    pub fn degree(&self) -> i64 {
        self.n.unsigned_abs() as i64 + self.p as i64 + self.q as i64
    }

    /// `v`-degree `p + q`.
    pub fn vdeg(&self) -> i64 {
        self.p as i64 + self.q as i64
    }
}

/// Finite Scalar-linear combination of PBW monomials, always canonical.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct AlgebraElement {
    terms: BTreeMap<Monomial, Scalar>,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Gen {
    A,
    AInv,
    VPlus,
    VMinus,
}

static TIMES_GEN: LazyLock<Mutex<HashMap<(Monomial, u8), AlgebraElement>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));
static COPRODUCT: LazyLock<Mutex<HashMap<Monomial, TensorElement>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));
static ANTIPODE: LazyLock<Mutex<HashMap<Monomial, AlgebraElement>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

impl AlgebraElement {
    pub fn zero() -> Self {
        AlgebraElement { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        AlgebraElement::from_monomial(Monomial::unit())
    }

    pub fn gen_a() -> Self {
        AlgebraElement::from_monomial(Monomial::new(1, 0, 0))
    }

    pub fn gen_a_inv() -> Self {
        AlgebraElement::from_monomial(Monomial::new(-1, 0, 0))
    }

    pub fn gen_v_plus() -> Self {
        AlgebraElement::from_monomial(Monomial::new(0, 1, 0))
    }

    pub fn gen_v_minus() -> Self {
        AlgebraElement::from_monomial(Monomial::new(0, 0, 1))
    }

    pub fn a_pow(n: i32) -> Self {
        AlgebraElement::from_monomial(Monomial::new(n, 0, 0))
    }

    pub fn from_monomial(m: Monomial) -> Self {
        AlgebraElement::term(m, Scalar::one())
    }

    pub fn from_scalar(s: Scalar) -> Self {
        AlgebraElement::term(Monomial::unit(), s)
    }

    pub fn term(m: Monomial, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        AlgebraElement { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Largest filtration degree among the monomials, 0 for the zero element.
    pub fn max_degree(&self) -> i64 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn max_vdeg(&self) -> i64 {
        self.terms.keys().map(|m| m.vdeg()).max().unwrap_or(0)
    }

    fn insert_add(terms: &mut BTreeMap<Monomial, Scalar>, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    o.insert(s);
                }
            }
        }
    }

    pub fn add(&self, rhs: &AlgebraElement) -> AlgebraElement {
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            AlgebraElement::insert_add(&mut terms, *m, c.clone());
        }
        AlgebraElement { terms }
    }

    pub fn sub(&self, rhs: &AlgebraElement) -> AlgebraElement {
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            AlgebraElement::insert_add(&mut terms, *m, -c);
        }
        AlgebraElement { terms }
    }

    pub fn neg(&self) -> AlgebraElement {
        AlgebraElement {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> AlgebraElement {
        if s.is_zero() {
            return AlgebraElement::zero();
        }
        AlgebraElement {
            terms: self.terms.iter().map(|(m, c)| (*m, c * s)).collect(),
        }
    }

    /// Product in PBW normal form.
    pub fn mul(&self, rhs: &AlgebraElement) -> AlgebraElement {
        let mut acc = AlgebraElement::zero();
        for (m, c) in &rhs.terms {
            let prod = self.mul_monomial(m);
            acc = acc.add(&prod.scale(c));
        }
        acc
    }

    fn mul_monomial(&self, m: &Monomial) -> AlgebraElement {
        let mut cur = self.clone();
        let g = if m.n >= 0 { Gen::A } else { Gen::AInv };
        for _ in 0..m.n.unsigned_abs() {
            cur = cur.times_gen(g);
        }
        for _ in 0..m.p {
            cur = cur.times_gen(Gen::VPlus);
        }
        for _ in 0..m.q {
            cur = cur.times_gen(Gen::VMinus);
        }
        cur
    }

    fn times_gen(&self, g: Gen) -> AlgebraElement {
        let mut acc = AlgebraElement::zero();
        for (m, c) in &self.terms {
            acc = acc.add(&mono_times_gen(*m, g).scale(c));
        }
        acc
    }

    pub fn pow(&self, e: u32) -> AlgebraElement {
        let mut acc = AlgebraElement::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn commutator(&self, rhs: &AlgebraElement) -> AlgebraElement {
        self.mul(rhs).sub(&rhs.mul(self))
    }
}

/// Normal form of `m * g` for a single generator.
fn mono_times_gen(m: Monomial, g: Gen) -> AlgebraElement {
    let key = (
        m,
        match g {
            Gen::A => 0u8,
            Gen::AInv => 1,
            Gen::VPlus => 2,
            Gen::VMinus => 3,
        },
    );
    if let Some(hit) = TIMES_GEN.lock().unwrap().get(&key) {
        return hit.clone();
    }
    let iok = Scalar::i_over_k();
    let result = match g {
        // appending v- on the right is already normal
        Gen::VMinus => AlgebraElement::from_monomial(Monomial::new(m.n, m.p, m.q + 1)),
        Gen::VPlus => {
            if m.q == 0 {
                AlgebraElement::from_monomial(Monomial::new(m.n, m.p + 1, 0))
            } else {
                // m' v- v+ = (m' v+) v- + (i/k) m' v+ - (i/k) m' v-
                let m1 = Monomial::new(m.n, m.p, m.q - 1);
                let t = mono_times_gen(m1, Gen::VPlus);
                t.times_gen(Gen::VMinus)
                    .add(&t.scale(&iok))
                    .sub(&AlgebraElement::term(m, iok.clone()))
            }
        }
        Gen::A => {
            if m.q > 0 {
                // v- a = a v- + (i/k)(a - I)
                let m1 = Monomial::new(m.n, m.p, m.q - 1);
                let t = mono_times_gen(m1, Gen::A);
                t.times_gen(Gen::VMinus)
                    .add(&t.scale(&iok))
                    .sub(&AlgebraElement::term(m1, iok.clone()))
            } else if m.p > 0 {
                // v+ a = a v+ + (i/k)(a^2 - a)
                let m1 = Monomial::new(m.n, m.p - 1, 0);
                let t = mono_times_gen(m1, Gen::A);
                t.times_gen(Gen::VPlus)
                    .add(&t.times_gen(Gen::A).scale(&iok))
                    .sub(&t.scale(&iok))
            } else {
                AlgebraElement::from_monomial(Monomial::new(m.n + 1, 0, 0))
            }
        }
        Gen::AInv => {
            if m.q > 0 {
                // v- a^-1 = a^-1 v- + (i/k)(a^-2 - a^-1)
                let m1 = Monomial::new(m.n, m.p, m.q - 1);
                let t = mono_times_gen(m1, Gen::AInv);
                t.times_gen(Gen::VMinus)
                    .add(&t.times_gen(Gen::AInv).scale(&iok))
                    .sub(&t.scale(&iok))
            } else if m.p > 0 {
                // v+ a^-1 = a^-1 v+ + (i/k)(a^-1 - I)
                let m1 = Monomial::new(m.n, m.p - 1, 0);
                let t = mono_times_gen(m1, Gen::AInv);
                t.times_gen(Gen::VPlus)
                    .add(&t.scale(&iok))
                    .sub(&AlgebraElement::term(m1, iok.clone()))
            } else {
                AlgebraElement::from_monomial(Monomial::new(m.n - 1, 0, 0))
            }
        }
    };
    TIMES_GEN.lock().unwrap().insert(key, result.clone());
    result
}

// ---- Hopf structure ----

impl AlgebraElement {
    /// Antilinear anti-homomorphism with `a -> a^-1`, `v+ <-> v-`.
    pub fn star(&self) -> AlgebraElement {
        let mut acc = AlgebraElement::zero();
        for (m, c) in &self.terms {
            // (a^n v+^p v-^q)* = v+^q v-^p a^-n
            let head = AlgebraElement::from_monomial(Monomial::new(0, m.q, m.p));
            let full = head.mul(&AlgebraElement::a_pow(-m.n));
            acc = acc.add(&full.scale(&c.conjugate()));
        }
        acc
    }

    /// `eps(a^n v+^p v-^q) = 1` if `p = q = 0`, else `0`; extended linearly.
    pub fn counit(&self) -> Scalar {
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            if m.vdeg() == 0 {
                acc = &acc + c;
            }
        }
        acc
    }

    /// Algebra-homomorphism extension of the coproduct on generators.
    pub fn coproduct(&self) -> TensorElement {
        let mut acc = TensorElement::zero();
        for (m, c) in &self.terms {
            acc = acc.add(&coproduct_monomial(*m).scale(c));
        }
        acc
    }

    /// Anti-homomorphism extension of the antipode on generators.
    pub fn antipode(&self) -> AlgebraElement {
        let mut acc = AlgebraElement::zero();
        for (m, c) in &self.terms {
            acc = acc.add(&antipode_monomial(*m).scale(c));
        }
        acc
    }

    /// `S^-1(x) = (S(x*))*`.
    pub fn antipode_inverse(&self) -> AlgebraElement {
        self.star().antipode().star()
    }

    /// Right adjoint coaction `ad(x) = sum x_(2) (x) S(x_(1)) x_(3)`.
    pub fn adjoint_coaction(&self) -> TensorElement {
        let mut acc = TensorElement::zero();
        for ((y, z), c) in self.coproduct().iter() {
            // split the first leg once more
            for ((y1, y2), c2) in coproduct_monomial(*y).iter() {
                let right = antipode_monomial(*y1).mul(&AlgebraElement::from_monomial(*z));
                let piece = TensorElement::from_pair(
                    &AlgebraElement::from_monomial(*y2),
                    &right,
                )
                .scale(&(c * c2));
                acc = acc.add(&piece);
            }
        }
        acc
    }
}

fn coproduct_monomial(m: Monomial) -> TensorElement {
    if let Some(hit) = COPRODUCT.lock().unwrap().get(&m) {
        return hit.clone();
    }
    let unit = Monomial::unit();
    // delta(a^n) = a^n (x) a^n
    let mut acc = TensorElement::from_monomials(Monomial::new(m.n, 0, 0), Monomial::new(m.n, 0, 0));
    let dvp = TensorElement::from_monomials(Monomial::new(1, 0, 0), Monomial::new(0, 1, 0))
        .add(&TensorElement::from_monomials(Monomial::new(0, 1, 0), unit));
    let dvm = TensorElement::from_monomials(Monomial::new(-1, 0, 0), Monomial::new(0, 0, 1))
        .add(&TensorElement::from_monomials(Monomial::new(0, 0, 1), unit));
    for _ in 0..m.p {
        acc = acc.mul(&dvp);
    }
    for _ in 0..m.q {
        acc = acc.mul(&dvm);
    }
    COPRODUCT.lock().unwrap().insert(m, acc.clone());
    acc
}

fn antipode_monomial(m: Monomial) -> AlgebraElement {
    if let Some(hit) = ANTIPODE.lock().unwrap().get(&m) {
        return hit.clone();
    }
    // S(a^n v+^p v-^q) = S(v-)^q S(v+)^p S(a)^n
    let s_vm = AlgebraElement::gen_a().mul(&AlgebraElement::gen_v_minus()).neg();
    let s_vp = AlgebraElement::gen_a_inv().mul(&AlgebraElement::gen_v_plus()).neg();
    let acc = s_vm
        .pow(m.q)
        .mul(&s_vp.pow(m.p))
        .mul(&AlgebraElement::a_pow(-m.n));
    ANTIPODE.lock().unwrap().insert(m, acc.clone());
    acc
}

/// Convolution action `phi * x := (id (x) phi) delta(x)`, an algebra element.
pub fn conv_action(phi: impl Fn(&Monomial) -> Scalar, x: &AlgebraElement) -> AlgebraElement {
    let mut acc = AlgebraElement::zero();
    for ((m1, m2), c) in x.coproduct().iter() {
        let v = phi(m2);
        if !v.is_zero() {
            acc = acc.add(&AlgebraElement::term(*m1, &v * c));
        }
    }
    acc
}

// ---- tensor squares and cubes ----

/// Element of the tensor square, componentwise PBW-normalized.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct TensorElement {
    terms: BTreeMap<(Monomial, Monomial), Scalar>,
}

impl TensorElement {
    pub fn zero() -> Self {
        TensorElement { terms: BTreeMap::new() }
    }

    pub fn from_monomials(m1: Monomial, m2: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert((m1, m2), Scalar::one());
        TensorElement { terms }
    }

    pub fn from_pair(x: &AlgebraElement, y: &AlgebraElement) -> Self {
        let mut terms = BTreeMap::new();
        for (m1, c1) in x.iter() {
            for (m2, c2) in y.iter() {
                let c = c1 * c2;
                if !c.is_zero() {
                    Self::insert_add(&mut terms, (*m1, *m2), c);
                }
            }
        }
        TensorElement { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(Monomial, Monomial), &Scalar)> {
        self.terms.iter()
    }

    fn insert_add(terms: &mut BTreeMap<(Monomial, Monomial), Scalar>, k: (Monomial, Monomial), c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match terms.entry(k) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    o.insert(s);
                }
            }
        }
    }

    pub fn add(&self, rhs: &TensorElement) -> TensorElement {
        let mut terms = self.terms.clone();
        for (k, c) in &rhs.terms {
            Self::insert_add(&mut terms, *k, c.clone());
        }
        TensorElement { terms }
    }

    pub fn sub(&self, rhs: &TensorElement) -> TensorElement {
        let mut terms = self.terms.clone();
        for (k, c) in &rhs.terms {
            Self::insert_add(&mut terms, *k, -c);
        }
        TensorElement { terms }
    }

    pub fn scale(&self, s: &Scalar) -> TensorElement {
        if s.is_zero() {
            return TensorElement::zero();
        }
        TensorElement {
            terms: self.terms.iter().map(|(k, c)| (*k, c * s)).collect(),
        }
    }

    pub fn mul(&self, rhs: &TensorElement) -> TensorElement {
        let mut terms = BTreeMap::new();
        for ((a1, a2), c1) in &self.terms {
            for ((b1, b2), c2) in &rhs.terms {
                let left = AlgebraElement::from_monomial(*a1).mul(&AlgebraElement::from_monomial(*b1));
                let right = AlgebraElement::from_monomial(*a2).mul(&AlgebraElement::from_monomial(*b2));
                let c = c1 * c2;
                for (ml, cl) in left.iter() {
                    for (mr, cr) in right.iter() {
                        Self::insert_add(&mut terms, (*ml, *mr), &(&c * cl) * cr);
                    }
                }
            }
        }
        TensorElement { terms }
    }

    /// Apply functions to both legs and multiply: used for the antipode laws.
    pub fn contract(
        &self,
        f: impl Fn(&Monomial) -> AlgebraElement,
        g: impl Fn(&Monomial) -> AlgebraElement,
    ) -> AlgebraElement {
        let mut acc = AlgebraElement::zero();
        for ((m1, m2), c) in &self.terms {
            acc = acc.add(&f(m1).mul(&g(m2)).scale(c));
        }
        acc
    }

    /// First leg collapsed with the counit.
    pub fn counit_left(&self) -> AlgebraElement {
        let mut acc = AlgebraElement::zero();
        for ((m1, m2), c) in &self.terms {
            if m1.vdeg() == 0 {
                acc = acc.add(&AlgebraElement::term(*m2, c.clone()));
            }
        }
        acc
    }

    /// Second leg collapsed with the counit.
    pub fn counit_right(&self) -> AlgebraElement {
        let mut acc = AlgebraElement::zero();
        for ((m1, m2), c) in &self.terms {
            if m2.vdeg() == 0 {
                acc = acc.add(&AlgebraElement::term(*m1, c.clone()));
            }
        }
        acc
    }

    /// Group terms by the second tensor leg.
    pub fn group_by_second(&self) -> BTreeMap<Monomial, AlgebraElement> {
        let mut out: BTreeMap<Monomial, AlgebraElement> = BTreeMap::new();
        for ((m1, m2), c) in &self.terms {
            let e = out.entry(*m2).or_insert_with(AlgebraElement::zero);
            *e = e.add(&AlgebraElement::term(*m1, c.clone()));
        }
        out
    }

    pub fn coproduct_left(&self) -> Tensor3Element {
        let mut acc = Tensor3Element::zero();
        for ((m1, m2), c) in &self.terms {
            for ((u, v), c2) in coproduct_monomial(*m1).iter() {
                acc.insert_add((*u, *v, *m2), c * c2);
            }
        }
        acc
    }

    pub fn coproduct_right(&self) -> Tensor3Element {
        let mut acc = Tensor3Element::zero();
        for ((m1, m2), c) in &self.terms {
            for ((u, v), c2) in coproduct_monomial(*m2).iter() {
                acc.insert_add((*m1, *u, *v), c * c2);
            }
        }
        acc
    }
}

/// Triple tensors, used only to state coassociativity.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Tensor3Element {
    terms: BTreeMap<(Monomial, Monomial, Monomial), Scalar>,
}

impl Tensor3Element {
    pub fn zero() -> Self {
        Tensor3Element { terms: BTreeMap::new() }
    }

    fn insert_add(&mut self, k: (Monomial, Monomial, Monomial), c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(k) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    o.insert(s);
                }
            }
        }
    }
}

// ---- printing ----

fn mono_string(m: &Monomial) -> String {
    if m.is_unit() {
        return "I".to_string();
    }
    let mut parts = Vec::new();
    if m.n != 0 {
        if m.n == 1 {
            parts.push("a".to_string());
        } else {
            parts.push(format!("a^{}", m.n));
        }
    }
    if m.p > 0 {
        if m.p == 1 {
            parts.push("v+".to_string());
        } else {
            parts.push(format!("v+^{}", m.p));
        }
    }
    if m.q > 0 {
        if m.q == 1 {
            parts.push("v-".to_string());
        } else {
            parts.push(format!("v-^{}", m.q));
        }
    }
    parts.join("*")
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", mono_string(self))
    }
}

/// Monomials printed highest filtration degree first, ties broken by the
/// `(n, p, q)` order.
pub(crate) fn print_order(terms: &BTreeMap<Monomial, Scalar>) -> Vec<(&Monomial, &Scalar)> {
    let mut v: Vec<_> = terms.iter().collect();
    v.sort_by(|(a, _), (b, _)| b.degree().cmp(&a.degree()).then(a.cmp(b)));
    v
}

/// Terms of an element in canonical print order.
pub fn print_order_of(x: &AlgebraElement) -> Vec<(&Monomial, &Scalar)> {
    print_order(&x.terms)
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (idx, (m, c)) in print_order(&self.terms).into_iter().enumerate() {
            let (neg, prefix) = c.coeff_prefix();
            let body = if m.is_unit() && prefix.is_empty() {
                "I".to_string()
            } else if m.is_unit() {
                // pure scalar multiple of the unit prints as the scalar
                let mut p = prefix.clone();
                p.pop(); // drop the trailing '*'
                p
            } else {
                format!("{prefix}{}", mono_string(m))
            };
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            out.push_str(&body);
        }
        write!(f, "{out}")
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((m1, m2), c)| {
                let (neg, prefix) = c.coeff_prefix();
                let sign = if neg { "-" } else { "" };
                format!("{sign}{prefix}{} (x) {}", mono_string(m1), mono_string(m2))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

// ---- Hopf axiom verification ----

/// All monomials with `|n| <= nmax` and `p + q <= vmax`.
pub fn monomials(nmax: i32, vmax: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for n in -nmax..=nmax {
        for p in 0..=vmax {
            for q in 0..=(vmax - p) {
                out.push(Monomial::new(n, p, q));
            }
        }
    }
    out
}

/// All monomials with filtration degree `|n| + p + q <= d`.
pub fn monomials_filtration(d: i64) -> Vec<Monomial> {
    let mut out = Vec::new();
    let dd = d as i32;
    for n in -dd..=dd {
        let rest = (d - n.unsigned_abs() as i64) as u32;
        for p in 0..=rest {
            for q in 0..=(rest - p) {
                out.push(Monomial::new(n, p, q));
            }
        }
    }
    out
}

/// Checks the Hopf *-algebra axioms on every monomial (and monomial pair)
/// within the bound, reporting one check per axiom.
pub fn verify_hopf_axioms(degree_bound: i64) -> ReportFragment {
    assert!(degree_bound >= 1);
    let d = degree_bound;
    let monos = monomials(d as i32, d as u32);
    let mut frag = ReportFragment::new();

    let mut run = |id: &str, paper_ref: &str, fail: Option<String>| {
        frag.push(match fail {
            None => Check::pass(id, paper_ref, ""),
            Some(msg) => Check::fail(id, paper_ref, &msg),
        });
    };

    // coassociativity
    let mut bad = None;
    for m in &monos {
        let dm = coproduct_monomial(*m);
        if dm.coproduct_left() != dm.coproduct_right() {
            bad = Some(format!("fails on {m}"));
            break;
        }
    }
    run("coassoc", "(2)", bad);

    // counit laws
    let mut bad = None;
    for m in &monos {
        let x = AlgebraElement::from_monomial(*m);
        let dm = x.coproduct();
        if dm.counit_left() != x || dm.counit_right() != x {
            bad = Some(format!("fails on {m}"));
            break;
        }
    }
    run("counit-laws", "(2)", bad);

    // antipode laws m(S (x) id) delta = eta eps = m(id (x) S) delta
    let mut bad = None;
    for m in &monos {
        let x = AlgebraElement::from_monomial(*m);
        let dm = x.coproduct();
        let target = AlgebraElement::from_scalar(x.counit());
        let lhs = dm.contract(|u| antipode_monomial(*u), |v| AlgebraElement::from_monomial(*v));
        let rhs = dm.contract(|u| AlgebraElement::from_monomial(*u), |v| antipode_monomial(*v));
        if lhs != target || rhs != target {
            bad = Some(format!(
                "fails on {m}: m(S(x)id)delta = {lhs}, m(id(x)S)delta = {rhs}, eps = {target}"
            ));
            break;
        }
    }
    run("antipode-law", "(2)", bad);

    // delta and eps are algebra homomorphisms
    let mut bad_d = None;
    let mut bad_e = None;
    for m1 in &monos {
        for m2 in &monos {
            let x = AlgebraElement::from_monomial(*m1);
            let y = AlgebraElement::from_monomial(*m2);
            let xy = x.mul(&y);
            if bad_d.is_none() && xy.coproduct() != x.coproduct().mul(&y.coproduct()) {
                bad_d = Some(format!("fails on ({m1}, {m2})"));
            }
            if bad_e.is_none() && xy.counit() != &x.counit() * &y.counit() {
                bad_e = Some(format!("fails on ({m1}, {m2})"));
            }
        }
    }
    run("delta-homomorphism", "(2)", bad_d);
    run("epsilon-homomorphism", "(2)", bad_e);

    // S is an anti-homomorphism
    let mut bad = None;
    'outer: for m1 in &monos {
        for m2 in &monos {
            let x = AlgebraElement::from_monomial(*m1);
            let y = AlgebraElement::from_monomial(*m2);
            if x.mul(&y).antipode() != y.antipode().mul(&x.antipode()) {
                bad = Some(format!("fails on ({m1}, {m2})"));
                break 'outer;
            }
        }
    }
    run("antipode-antihomomorphism", "(2)", bad);

    // star is an involutive antilinear anti-homomorphism
    let mut bad = None;
    'outer: for m1 in &monos {
        let x = AlgebraElement::from_monomial(*m1);
        if x.star().star() != x {
            bad = Some(format!("star not involutive on {m1}"));
            break;
        }
        if x.star().counit() != x.counit().conjugate() {
            bad = Some(format!("eps(x*) != conj(eps(x)) on {m1}"));
            break;
        }
        for m2 in &monos {
            let y = AlgebraElement::from_monomial(*m2);
            if x.mul(&y).star() != y.star().mul(&x.star()) {
                bad = Some(format!("(xy)* != y*x* on ({m1}, {m2})"));
                break 'outer;
            }
        }
    }
    run("star-structure", "(1)", bad);

    // (S o *)^2 = id
    let mut bad = None;
    for m in &monos {
        let x = AlgebraElement::from_monomial(*m);
        if x.star().antipode().star().antipode() != x {
            bad = Some(format!("fails on {m}"));
            break;
        }
    }
    run("antipode-star-squared", "(2)", bad);

    // S^-1 inverts S both ways
    let mut bad = None;
    for m in &monos {
        let x = AlgebraElement::from_monomial(*m);
        if x.antipode().antipode_inverse() != x || x.antipode_inverse().antipode() != x {
            bad = Some(format!("fails on {m}"));
            break;
        }
    }
    run("antipode-inverse", "(2)", bad);

    // eps o S = eps
    let mut bad = None;
    for m in &monos {
        let x = AlgebraElement::from_monomial(*m);
        if x.antipode().counit() != x.counit() {
            bad = Some(format!("fails on {m}"));
            break;
        }
    }
    run("counit-antipode", "(2)", bad);

    frag
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> AlgebraElement {
        AlgebraElement::gen_a()
    }
    fn ai() -> AlgebraElement {
        AlgebraElement::gen_a_inv()
    }
    fn vp() -> AlgebraElement {
        AlgebraElement::gen_v_plus()
    }
    fn vm() -> AlgebraElement {
        AlgebraElement::gen_v_minus()
    }
    fn iok() -> Scalar {
        Scalar::i_over_k()
    }

    #[test]
    fn vminus_times_vplus() {
        // v- v+ = v+ v- - (i/k) v- + (i/k) v+
        let got = vm().mul(&vp());
        let want = vp()
            .mul(&vm())
            .sub(&vm().scale(&iok()))
            .add(&vp().scale(&iok()));
        assert_eq!(got, want);
        assert_eq!(got.to_string(), "v+*v- - (i/k)*v- + (i/k)*v+");
    }

    #[test]
    fn a_times_a_inverse_is_unit() {
        assert_eq!(a().mul(&ai()), AlgebraElement::one());
        assert_eq!(ai().mul(&a()), AlgebraElement::one());
        assert_eq!(a().mul(&ai()).to_string(), "I");
    }

    #[test]
    fn vplus_times_a() {
        // v+ a = a v+ - (i/k) a + (i/k) a^2
        let got = vp().mul(&a());
        let want = a()
            .mul(&vp())
            .sub(&a().scale(&iok()))
            .add(&a().mul(&a()).scale(&iok()));
        assert_eq!(got, want);
    }

    #[test]
    fn defining_commutators() {
        // the six relations, stated as commutators
        let c = |x: &AlgebraElement, y: &AlgebraElement| x.commutator(y);
        let one = AlgebraElement::one();
        assert_eq!(c(&a(), &vm()), one.sub(&a()).scale(&iok()));
        assert_eq!(c(&ai(), &vm()), ai().sub(&ai().mul(&ai())).scale(&iok()));
        assert_eq!(c(&a(), &vp()), a().sub(&a().mul(&a())).scale(&iok()));
        assert_eq!(c(&ai(), &vp()), one.sub(&ai()).scale(&iok()));
        assert_eq!(c(&vp(), &vm()), vm().sub(&vp()).scale(&iok()));
    }

    #[test]
    fn star_examples() {
        assert_eq!(vp().star(), vm());
        let ii = AlgebraElement::from_scalar(Scalar::i());
        assert_eq!(ii.star(), ii.neg());
        // (v+ v-)* = v+ v-
        let x = vp().mul(&vm());
        assert_eq!(x.star(), x);
        // oracle: star as anti-homomorphism computed the long way
        assert_eq!(vp().mul(&a()).star(), a().star().mul(&vp().star()));
    }

    #[test]
    fn coproduct_examples() {
        let da = a().coproduct();
        assert_eq!(da, TensorElement::from_monomials(Monomial::new(1, 0, 0), Monomial::new(1, 0, 0)));
        let di = AlgebraElement::one().coproduct();
        assert_eq!(di, TensorElement::from_monomials(Monomial::unit(), Monomial::unit()));
        // oracle: square delta(v+) in the tensor algebra
        let dvp = vp().coproduct();
        assert_eq!(vp().mul(&vp()).coproduct(), dvp.mul(&dvp));
        // frozen expansion: a^2 (x) v+^2 + (2 a v+ - (i/k) a + (i/k) a^2) (x) v+ + v+^2 (x) I
        let first = AlgebraElement::a_pow(2);
        let mid = a()
            .mul(&vp())
            .scale(&Scalar::int(2))
            .sub(&a().scale(&iok()))
            .add(&AlgebraElement::a_pow(2).scale(&iok()));
        let want = TensorElement::from_pair(&first, &vp().mul(&vp()))
            .add(&TensorElement::from_pair(&mid, &vp()))
            .add(&TensorElement::from_pair(&vp().mul(&vp()), &AlgebraElement::one()));
        assert_eq!(vp().mul(&vp()).coproduct(), want);
    }

    #[test]
    fn counit_examples() {
        assert_eq!(AlgebraElement::a_pow(-3).counit(), Scalar::one());
        assert_eq!(vp().mul(&vm()).counit(), Scalar::zero());
        let x = AlgebraElement::one().add(&vp().scale(&Scalar::int(2)));
        assert_eq!(x.counit(), Scalar::one());
    }

    #[test]
    fn antipode_examples() {
        assert_eq!(vp().antipode(), ai().mul(&vp()).neg());
        assert_eq!(AlgebraElement::one().antipode(), AlgebraElement::one());
        // S^2(v+) = v+ - (i/k)(I - a), derived by applying S twice by hand
        let got = vp().antipode().antipode();
        let want = vp().sub(&AlgebraElement::one().sub(&a()).scale(&iok()));
        assert_eq!(got, want);
    }

    #[test]
    fn antipode_inverse_examples() {
        assert_eq!(vp().antipode().antipode_inverse(), vp());
        assert_eq!(a().antipode_inverse(), ai());
        // S^-1(v+) = -v+ a^-1 normalized
        let want = vp().mul(&ai()).neg();
        assert_eq!(vp().antipode_inverse(), want);
    }

    #[test]
    fn adjoint_coaction_examples() {
        let one = AlgebraElement::one();
        assert_eq!(
            one.adjoint_coaction(),
            TensorElement::from_monomials(Monomial::unit(), Monomial::unit())
        );
        // ad(a) = a (x) S(a) a = a (x) I
        assert_eq!(a().adjoint_coaction(), TensorElement::from_pair(&a(), &one));
        // ad(v+) = a (x) a^-1 v+ + v+ (x) a^-1 - I (x) a^-1 v+ (direct expansion)
        let want = TensorElement::from_pair(&a(), &ai().mul(&vp()))
            .add(&TensorElement::from_pair(&vp(), &ai()))
            .sub(&TensorElement::from_pair(&one, &ai().mul(&vp())));
        assert_eq!(vp().adjoint_coaction(), want);
    }

    #[test]
    fn filtration_bound_under_multiplication() {
        let x = a().mul(&vp()).add(&vm().scale(&iok()));
        let y = ai().mul(&vm()).sub(&vp());
        let xy = x.mul(&y);
        assert!(xy.max_degree() <= x.max_degree() + y.max_degree());
    }

    #[test]
    fn hopf_axioms_pass_quickly() {
        let frag = verify_hopf_axioms(1);
        assert!(frag.all_pass(), "{:?}", frag.failures());
    }
}
