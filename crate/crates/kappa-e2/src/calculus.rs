//! The bimodule of 1-forms over the deformed E(2) group, built canonically
//! from the right ideal: the differential, the bimodule right action, the
//! `f_ij` functionals, both coactions, the right-invariant basis and the
//! star structure.
//!
//! A [`OneForm`] is stored with left coefficients over the left-invariant
//! basis `(w0, wt0, w+, w-)`. The dictionary from quotient classes to basis
//! forms is `[a - I] -> w0`, `[v+] -> w+`, `[v-] -> w-`,
//! `[v+ v- + (i/k) v+] -> wt0`, hence `[a - a^-1] -> 2 w0`; this is the
//! unique assignment making `d v+ = a w+` and `d v- = a^-1 w-`.

use crate::algebra::{monomials, AlgebraElement, Monomial, TensorElement};
use crate::ideal::{pi_element, pi_monomial};
use crate::random::{random_element, seeded_rng};
use crate::report::{Check, ReportFragment};
use crate::scalar::Scalar;
use crate::Result;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, LazyLock, Mutex};

/// Printed names of the left-invariant basis forms, in basis order.
pub const FORM_NAMES: [&str; 4] = ["w0", "wt0", "w+", "w-"];

/// Left-module presentation over the left-invariant basis `(w0, wt0, w+, w-)`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct OneForm {
    pub coeffs: [AlgebraElement; 4],
}

impl OneForm {
    pub fn zero() -> Self {
        OneForm::default()
    }

    pub fn basis(i: usize) -> Self {
        let mut f = OneForm::zero();
        f.coeffs[i] = AlgebraElement::one();
        f
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, rhs: &OneForm) -> OneForm {
        let mut out = OneForm::zero();
        for i in 0..4 {
            out.coeffs[i] = self.coeffs[i].add(&rhs.coeffs[i]);
        }
        out
    }

    pub fn sub(&self, rhs: &OneForm) -> OneForm {
        let mut out = OneForm::zero();
        for i in 0..4 {
            out.coeffs[i] = self.coeffs[i].sub(&rhs.coeffs[i]);
        }
        out
    }

    pub fn neg(&self) -> OneForm {
        let mut out = OneForm::zero();
        for i in 0..4 {
            out.coeffs[i] = self.coeffs[i].neg();
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> OneForm {
        let mut out = OneForm::zero();
        for i in 0..4 {
            out.coeffs[i] = self.coeffs[i].scale(s);
        }
        out
    }

    /// Left module action `x . omega`.
    pub fn left_mul(&self, x: &AlgebraElement) -> OneForm {
        let mut out = OneForm::zero();
        for i in 0..4 {
            out.coeffs[i] = x.mul(&self.coeffs[i]);
        }
        out
    }

    /// Bimodule right action, converted back to left-coefficient form.
    pub fn right_mul(&self, x: &AlgebraElement) -> Result<OneForm> {
        form_right_multiply(self, x)
    }

    pub fn max_degree(&self) -> i64 {
        self.coeffs.iter().map(|c| c.max_degree()).max().unwrap_or(0)
    }
}

impl fmt::Display for OneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (m, s) in crate::algebra::print_order_of(c) {
                let (neg, prefix) = s.coeff_prefix();
                let mono = if m.is_unit() {
                    String::new()
                } else {
                    format!("{m}*")
                };
                if first {
                    if neg {
                        out.push('-');
                    }
                    first = false;
                } else if neg {
                    out.push_str(" - ");
                } else {
                    out.push_str(" + ");
                }
                out.push_str(&format!("{prefix}{mono}{}", FORM_NAMES[i]));
            }
        }
        write!(f, "{out}")
    }
}

impl fmt::Debug for OneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Kernel-class representative attached to each basis form.
fn class_representative(i: usize) -> AlgebraElement {
    let a = AlgebraElement::gen_a();
    let vp = AlgebraElement::gen_v_plus();
    let vm = AlgebraElement::gen_v_minus();
    let one = AlgebraElement::one();
    match i {
        0 => a.sub(&one),
        1 => vp.mul(&vm).add(&vp.scale(&Scalar::i_over_k())),
        2 => vp,
        3 => vm,
        _ => unreachable!(),
    }
}

/// Presentations of the basis forms as sums `x . d(y)`.
fn presentations(i: usize) -> Vec<(AlgebraElement, AlgebraElement)> {
    let a = AlgebraElement::gen_a();
    let ai = AlgebraElement::gen_a_inv();
    let vp = AlgebraElement::gen_v_plus();
    let vm = AlgebraElement::gen_v_minus();
    let one = AlgebraElement::one();
    let tilde = vp.mul(&vm).add(&vp.scale(&Scalar::i_over_k()));
    match i {
        0 => vec![(ai, a)],
        1 => vec![(one, tilde), (vp.neg(), vm.clone()), (vm.neg(), vp)],
        2 => vec![(ai, vp)],
        3 => vec![(a, vm)],
        _ => unreachable!(),
    }
}

/// Quotient coordinates (over `[a - a^-1]`, `[v+]`, `[v-]`, `[vtilde]`)
/// mapped to basis forms with the dictionary above.
fn lambda(coords: &[Scalar; 4]) -> OneForm {
    let mut out = OneForm::zero();
    out.coeffs[0] = AlgebraElement::from_scalar(&coords[0] * &Scalar::int(2));
    out.coeffs[2] = AlgebraElement::from_scalar(coords[1].clone());
    out.coeffs[3] = AlgebraElement::from_scalar(coords[2].clone());
    out.coeffs[1] = AlgebraElement::from_scalar(coords[3].clone());
    out
}

static DIFFERENTIAL: LazyLock<Mutex<HashMap<Monomial, Arc<OneForm>>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));
static RIGHT_MUL: LazyLock<Mutex<HashMap<(usize, Monomial), Arc<OneForm>>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));
static BASIS_STAR: LazyLock<Mutex<HashMap<usize, Arc<OneForm>>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

fn differential_monomial(m: &Monomial) -> Result<Arc<OneForm>> {
    if let Some(hit) = DIFFERENTIAL.lock().unwrap().get(m) {
        return Ok(Arc::clone(hit));
    }
    let mut out = OneForm::zero();
    for ((m1, m2), c) in AlgebraElement::from_monomial(*m).coproduct().iter() {
        let pm = pi_monomial(m2)?;
        let lam = lambda(&pm);
        out = out.add(&lam.left_mul(&AlgebraElement::term(*m1, c.clone())));
    }
    let arc = Arc::new(out);
    DIFFERENTIAL
        .lock()
        .unwrap()
        .entry(*m)
        .or_insert_with(|| Arc::clone(&arc));
    Ok(arc)
}

/// Canonical differential `d x = sum x_(1) lambda(pi(x_(2) - eps(x_(2)) I))`.
pub fn differential(x: &AlgebraElement) -> Result<OneForm> {
    let mut out = OneForm::zero();
    for (m, c) in x.iter() {
        out = out.add(&differential_monomial(m)?.scale(c));
    }
    Ok(out)
}

fn right_mul_basis_monomial(i: usize, m: &Monomial) -> Result<Arc<OneForm>> {
    if let Some(hit) = RIGHT_MUL.lock().unwrap().get(&(i, *m)) {
        return Ok(Arc::clone(hit));
    }
    let b = class_representative(i);
    let mut out = OneForm::zero();
    for ((m1, m2), c) in AlgebraElement::from_monomial(*m).coproduct().iter() {
        let z = b.mul(&AlgebraElement::from_monomial(*m2));
        let coords = pi_element(&z)?;
        let lam = lambda(&coords);
        out = out.add(&lam.left_mul(&AlgebraElement::term(*m1, c.clone())));
    }
    let arc = Arc::new(out);
    RIGHT_MUL
        .lock()
        .unwrap()
        .entry((i, *m))
        .or_insert_with(|| Arc::clone(&arc));
    Ok(arc)
}

/// Canonical bimodule action `(y . w_i) x = sum y x_(1) . [b_i x_(2)]`.
pub fn form_right_multiply(w: &OneForm, x: &AlgebraElement) -> Result<OneForm> {
    let mut out = OneForm::zero();
    for i in 0..4 {
        if w.coeffs[i].is_zero() {
            continue;
        }
        for (m, c) in x.iter() {
            let wm = right_mul_basis_monomial(i, m)?;
            out = out.add(&wm.left_mul(&w.coeffs[i].scale(c)));
        }
    }
    Ok(out)
}

/// `f_ij(y) = eps(c_j)` where `w_i . y = sum_j c_j w_j`.
pub fn f_functional(i: usize, j: usize, y: &AlgebraElement) -> Result<Scalar> {
    let mut acc = Scalar::zero();
    for (m, c) in y.iter() {
        let wm = right_mul_basis_monomial(i, m)?;
        acc = &acc + &(&wm.coeffs[j].counit() * c);
    }
    Ok(acc)
}

/// Counterparts of left-invariant vector fields: `chi_i(x) = eps(c_i)` where
/// `d x = sum_i c_i w_i`.
pub fn chi_eval(i: usize, x: &AlgebraElement) -> Result<Scalar> {
    let mut acc = Scalar::zero();
    for (m, c) in x.iter() {
        let dm = differential_monomial(m)?;
        acc = &acc + &(&dm.coeffs[i].counit() * c);
    }
    Ok(acc)
}

// ---- coactions ----

/// Element of `Gamma (x) A`: term `(i, mc, mr)` stands for `(mc . w_i) (x) mr`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct GammaTensor {
    terms: BTreeMap<(usize, Monomial, Monomial), Scalar>,
}

impl GammaTensor {
    pub fn zero() -> Self {
        GammaTensor::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert_add(&mut self, k: (usize, Monomial, Monomial), c: Scalar) {
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

    pub fn add(&self, rhs: &GammaTensor) -> GammaTensor {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.insert_add(*k, c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &GammaTensor) -> GammaTensor {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.insert_add(*k, -c);
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> GammaTensor {
        let mut out = GammaTensor::zero();
        for (k, c) in &self.terms {
            out.insert_add(*k, c * s);
        }
        out
    }

    pub fn from_pairs(pairs: &[(&OneForm, &AlgebraElement)]) -> GammaTensor {
        let mut out = GammaTensor::zero();
        for (w, x) in pairs {
            for i in 0..4 {
                for (mc, c1) in w.coeffs[i].iter() {
                    for (mr, c2) in x.iter() {
                        out.insert_add((i, *mc, *mr), c1 * c2);
                    }
                }
            }
        }
        out
    }

    /// `A (x) A` acting on `Gamma (x) A` componentwise.
    pub fn act_left(&self, t: &TensorElement) -> GammaTensor {
        let mut out = GammaTensor::zero();
        for ((x1, x2), cx) in t.iter() {
            for ((i, mc, mr), c) in &self.terms {
                let left = AlgebraElement::from_monomial(*x1)
                    .mul(&AlgebraElement::from_monomial(*mc));
                let right = AlgebraElement::from_monomial(*x2)
                    .mul(&AlgebraElement::from_monomial(*mr));
                for (ml, cl) in left.iter() {
                    for (mr2, cr) in right.iter() {
                        out.insert_add((*i, *ml, *mr2), &(&(cx * c) * cl) * cr);
                    }
                }
            }
        }
        out
    }

    /// Iterated coaction applied to the `Gamma` leg, flattening into
    /// `(i, mc, m_new, m_old)` keys.
    fn coact_gamma_leg(&self) -> Result<BTreeMap<(usize, Monomial, Monomial, Monomial), Scalar>> {
        let mut out: BTreeMap<(usize, Monomial, Monomial, Monomial), Scalar> = BTreeMap::new();
        for ((i, mc, mr), c) in &self.terms {
            let form = OneForm::basis(*i).left_mul(&AlgebraElement::from_monomial(*mc));
            let inner = gamma_right_coaction(&form)?;
            for ((j, mc2, mr2), c2) in &inner.terms {
                let key = (*j, *mc2, *mr2, *mr);
                let v = &(c * c2);
                use std::collections::btree_map::Entry;
                match out.entry(key) {
                    Entry::Vacant(e) => {
                        if !v.is_zero() {
                            e.insert(v.clone());
                        }
                    }
                    Entry::Occupied(mut e) => {
                        let s = e.get() + v;
                        if s.is_zero() {
                            e.remove();
                        } else {
                            e.insert(s);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Coproduct applied to the right `A` leg, same flattened key shape.
    fn coproduct_a_leg(&self) -> BTreeMap<(usize, Monomial, Monomial, Monomial), Scalar> {
        let mut out: BTreeMap<(usize, Monomial, Monomial, Monomial), Scalar> = BTreeMap::new();
        for ((i, mc, mr), c) in &self.terms {
            for ((u, v), c2) in AlgebraElement::from_monomial(*mr).coproduct().iter() {
                let key = (*i, *mc, *u, *v);
                let val = &(c * c2);
                use std::collections::btree_map::Entry;
                match out.entry(key) {
                    Entry::Vacant(e) => {
                        if !val.is_zero() {
                            e.insert(val.clone());
                        }
                    }
                    Entry::Occupied(mut e) => {
                        let s = e.get() + val;
                        if s.is_zero() {
                            e.remove();
                        } else {
                            e.insert(s);
                        }
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for GammaTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((i, mc, mr), c)| {
                let (neg, prefix) = c.coeff_prefix();
                let sign = if neg { "-" } else { "" };
                let mono = if mc.is_unit() { String::new() } else { format!("{mc}*") };
                format!("{sign}{prefix}{mono}{} (x) {mr}", FORM_NAMES[*i])
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for GammaTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Element of `A (x) Gamma`: term `(ml, i, mc)` stands for `ml (x) (mc . w_i)`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct TensorGamma {
    terms: BTreeMap<(Monomial, usize, Monomial), Scalar>,
}

impl TensorGamma {
    pub fn zero() -> Self {
        TensorGamma::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert_add(&mut self, k: (Monomial, usize, Monomial), c: Scalar) {
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

    pub fn add(&self, rhs: &TensorGamma) -> TensorGamma {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.insert_add(*k, c.clone());
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> TensorGamma {
        let mut out = TensorGamma::zero();
        for (k, c) in &self.terms {
            out.insert_add(*k, c * s);
        }
        out
    }

    pub fn from_pairs(pairs: &[(&AlgebraElement, &OneForm)]) -> TensorGamma {
        let mut out = TensorGamma::zero();
        for (x, w) in pairs {
            for i in 0..4 {
                for (mc, c1) in w.coeffs[i].iter() {
                    for (ml, c2) in x.iter() {
                        out.insert_add((*ml, i, *mc), c1 * c2);
                    }
                }
            }
        }
        out
    }

    pub fn act_left(&self, t: &TensorElement) -> TensorGamma {
        let mut out = TensorGamma::zero();
        for ((x1, x2), cx) in t.iter() {
            for ((ml, i, mc), c) in &self.terms {
                let left = AlgebraElement::from_monomial(*x1)
                    .mul(&AlgebraElement::from_monomial(*ml));
                let right = AlgebraElement::from_monomial(*x2)
                    .mul(&AlgebraElement::from_monomial(*mc));
                for (u, cu) in left.iter() {
                    for (v, cv) in right.iter() {
                        out.insert_add((*u, *i, *v), &(&(cx * c) * cu) * cv);
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for TensorGamma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((ml, i, mc), c)| {
                let (neg, prefix) = c.coeff_prefix();
                let sign = if neg { "-" } else { "" };
                let mono = if mc.is_unit() { String::new() } else { format!("{mc}*") };
                format!("{sign}{prefix}{ml} (x) {mono}{}", FORM_NAMES[*i])
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for TensorGamma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

static GAMMA_RIGHT_BASIS: LazyLock<Mutex<HashMap<usize, Arc<GammaTensor>>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));
static GAMMA_LEFT_BASIS: LazyLock<Mutex<HashMap<usize, Arc<TensorGamma>>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

fn gamma_right_basis(i: usize) -> Result<Arc<GammaTensor>> {
    if let Some(hit) = GAMMA_RIGHT_BASIS.lock().unwrap().get(&i) {
        return Ok(Arc::clone(hit));
    }
    let mut acc = GammaTensor::zero();
    for (x, y) in presentations(i) {
        // delta(x) (d (x) id) delta(y)
        let mut t = GammaTensor::zero();
        for ((y1, y2), c) in y.coproduct().iter() {
            let dy1 = differential_monomial(y1)?;
            t = t.add(&GammaTensor::from_pairs(&[(
                &dy1,
                &AlgebraElement::from_monomial(*y2),
            )])
            .scale(c));
        }
        acc = acc.add(&t.act_left(&x.coproduct()));
    }
    let arc = Arc::new(acc);
    GAMMA_RIGHT_BASIS
        .lock()
        .unwrap()
        .entry(i)
        .or_insert_with(|| Arc::clone(&arc));
    Ok(arc)
}

fn gamma_left_basis(i: usize) -> Result<Arc<TensorGamma>> {
    if let Some(hit) = GAMMA_LEFT_BASIS.lock().unwrap().get(&i) {
        return Ok(Arc::clone(hit));
    }
    let mut acc = TensorGamma::zero();
    for (x, y) in presentations(i) {
        // delta(x) (id (x) d) delta(y)
        let mut t = TensorGamma::zero();
        for ((y1, y2), c) in y.coproduct().iter() {
            let dy2 = differential_monomial(y2)?;
            t = t.add(
                &TensorGamma::from_pairs(&[(&AlgebraElement::from_monomial(*y1), &dy2)]).scale(c),
            );
        }
        acc = acc.add(&t.act_left(&x.coproduct()));
    }
    let arc = Arc::new(acc);
    GAMMA_LEFT_BASIS
        .lock()
        .unwrap()
        .entry(i)
        .or_insert_with(|| Arc::clone(&arc));
    Ok(arc)
}

/// Right coaction `Gamma -> Gamma (x) A`.
pub fn gamma_right_coaction(w: &OneForm) -> Result<GammaTensor> {
    let mut acc = GammaTensor::zero();
    for i in 0..4 {
        if w.coeffs[i].is_zero() {
            continue;
        }
        acc = acc.add(&gamma_right_basis(i)?.act_left(&w.coeffs[i].coproduct()));
    }
    Ok(acc)
}

/// Left coaction `Gamma -> A (x) Gamma`.
pub fn gamma_left_coaction(w: &OneForm) -> Result<TensorGamma> {
    let mut acc = TensorGamma::zero();
    for i in 0..4 {
        if w.coeffs[i].is_zero() {
            continue;
        }
        acc = acc.add(&gamma_left_basis(i)?.act_left(&w.coeffs[i].coproduct()));
    }
    Ok(acc)
}

/// The right-invariant forms `(eta0, etat0, eta+, eta-)`.
pub fn right_invariant_forms() -> [OneForm; 4] {
    let a = AlgebraElement::gen_a();
    let ai = AlgebraElement::gen_a_inv();
    let vp = AlgebraElement::gen_v_plus();
    let vm = AlgebraElement::gen_v_minus();
    let iok = AlgebraElement::from_scalar(Scalar::i_over_k());

    let eta0 = OneForm::basis(0);
    let etat0 = OneForm::basis(1);
    // eta+ = a w+ + ((i/k) I - v+) w0
    let mut etap = OneForm::zero();
    etap.coeffs[2] = a;
    etap.coeffs[0] = iok.sub(&vp);
    // eta- = a^-1 w- + (-(i/k) I + v-) w0
    let mut etam = OneForm::zero();
    etam.coeffs[3] = ai;
    etam.coeffs[0] = vm.sub(&iok);
    [eta0, etat0, etap, etam]
}

fn basis_star(i: usize) -> Result<Arc<OneForm>> {
    if let Some(hit) = BASIS_STAR.lock().unwrap().get(&i) {
        return Ok(Arc::clone(hit));
    }
    // (x . dy)* = d(y*) . x*
    let mut acc = OneForm::zero();
    for (x, y) in presentations(i) {
        let dys = differential(&y.star())?;
        acc = acc.add(&form_right_multiply(&dys, &x.star())?);
    }
    let arc = Arc::new(acc);
    BASIS_STAR
        .lock()
        .unwrap()
        .entry(i)
        .or_insert_with(|| Arc::clone(&arc));
    Ok(arc)
}

/// Antilinear star on 1-forms: `(x . w)* = w* . x*`.
pub fn form_star(w: &OneForm) -> Result<OneForm> {
    let mut acc = OneForm::zero();
    for i in 0..4 {
        if w.coeffs[i].is_zero() {
            continue;
        }
        let ws = basis_star(i)?;
        acc = acc.add(&form_right_multiply(&ws, &w.coeffs[i].star())?);
    }
    Ok(acc)
}

// ---- machine derivation of the printed first-order relations ----

struct Relation {
    id: &'static str,
    lhs: OneForm,
    base: OneForm,
    corrections: Vec<OneForm>,
}

fn scaled(s: &Scalar, x: &AlgebraElement) -> AlgebraElement {
    x.scale(s)
}

fn eq4_relations() -> Result<Vec<Relation>> {
    let a = AlgebraElement::gen_a();
    let ai = AlgebraElement::gen_a_inv();
    let vp = AlgebraElement::gen_v_plus();
    let vm = AlgebraElement::gen_v_minus();
    let one = AlgebraElement::one();
    let iok = Scalar::i_over_k();
    let tilde = vp.mul(&vm).add(&vp.scale(&iok));

    let da = differential(&a)?;
    let dai = differential(&ai)?;
    let dvp = differential(&vp)?;
    let dvm = differential(&vm)?;
    let dtilde = differential(&tilde)?;

    let mut rels = Vec::new();
    let mut push = |id: &'static str,
                    lhs: OneForm,
                    base: OneForm,
                    corrections: Vec<OneForm>| {
        rels.push(Relation { id, lhs, base, corrections });
    };

    // first block: a and a* commute with da and da*
    push("(4):a-da", da.left_mul(&a), form_right_multiply(&da, &a)?, vec![]);
    push("(4):astar-da", da.left_mul(&ai), form_right_multiply(&da, &ai)?, vec![]);
    push("(4):a-dastar", dai.left_mul(&a), form_right_multiply(&dai, &a)?, vec![]);
    push("(4):astar-dastar", dai.left_mul(&ai), form_right_multiply(&dai, &ai)?, vec![]);

    // v+ da = da v+ + (i/k)(a - I) da
    push(
        "(4):vplus-da",
        da.left_mul(&vp),
        form_right_multiply(&da, &vp)?,
        vec![da.left_mul(&scaled(&iok, &a.sub(&one)))],
    );
    // v+ da* = da* v+ + (i/k)(I - a) da*
    push(
        "(4):vplus-dastar",
        dai.left_mul(&vp),
        form_right_multiply(&dai, &vp)?,
        vec![dai.left_mul(&scaled(&iok, &one.sub(&a)))],
    );
    // v- da = da v- + (i/k)(a* - I) da   [printed form]
    push(
        "(4):vminus-da",
        da.left_mul(&vm),
        form_right_multiply(&da, &vm)?,
        vec![da.left_mul(&scaled(&iok, &ai.sub(&one)))],
    );
    // v- da* = da* v- + (i/k)(a* - I) da*
    push(
        "(4):vminus-dastar",
        dai.left_mul(&vm),
        form_right_multiply(&dai, &vm)?,
        vec![dai.left_mul(&scaled(&iok, &ai.sub(&one)))],
    );
    // a dv+ = dv+ a - (i/k) a da
    push(
        "(4):a-dvplus",
        dvp.left_mul(&a),
        form_right_multiply(&dvp, &a)?,
        vec![da.left_mul(&scaled(&iok, &a)).neg()],
    );
    // a dv- = dv- a - (i/k) a* da
    push(
        "(4):a-dvminus",
        dvm.left_mul(&a),
        form_right_multiply(&dvm, &a)?,
        vec![da.left_mul(&scaled(&iok, &ai)).neg()],
    );
    // a* dv+ = dv+ a* - (i/k) a da*
    push(
        "(4):astar-dvplus",
        dvp.left_mul(&ai),
        form_right_multiply(&dvp, &ai)?,
        vec![dai.left_mul(&scaled(&iok, &a)).neg()],
    );
    // a* dv- = dv- a* - (i/k) a* da*
    push(
        "(4):astar-dvminus",
        dvm.left_mul(&ai),
        form_right_multiply(&dvm, &ai)?,
        vec![dai.left_mul(&scaled(&iok, &ai)).neg()],
    );
    // v+ dv+ = dv+ v+ - (i/k) dv+
    push(
        "(4):vplus-dvplus",
        dvp.left_mul(&vp),
        form_right_multiply(&dvp, &vp)?,
        vec![dvp.scale(&iok).neg()],
    );
    // v- dv- = dv- v- - (i/k) dv-
    push(
        "(4):vminus-dvminus",
        dvm.left_mul(&vm),
        form_right_multiply(&dvm, &vm)?,
        vec![dvm.scale(&iok).neg()],
    );
    // v+ dv- = -dv+ v- - (i/k) dv+ + d(v+ v- + (i/k) v+)
    push(
        "(4):vplus-dvminus",
        dvm.left_mul(&vp),
        form_right_multiply(&dvp, &vm)?.neg(),
        vec![dvp.scale(&iok).neg(), dtilde.clone()],
    );
    // v- dv+ = -dv- v+ - (i/k) dv- + d(v+ v- + (i/k) v+)
    push(
        "(4):vminus-dvplus",
        dvp.left_mul(&vm),
        form_right_multiply(&dvm, &vp)?.neg(),
        vec![dvm.scale(&iok).neg(), dtilde],
    );
    Ok(rels)
}

/// Machine-derives the printed commutation rules, the invariant-form
/// presentations, both coactions and the star structure, logging sign-level
/// discrepancies between derivation and print as errata.
pub fn verify_first_order(degree: i64, seed: u64) -> ReportFragment {
    assert!(degree >= 2);
    let mut frag = ReportFragment::new();
    match verify_first_order_inner(degree, seed, &mut frag) {
        Ok(()) => {}
        Err(e) => frag.push(Check::fail("calculus-engine", "(4)", &e.to_string())),
    }
    frag
}

fn verify_first_order_inner(degree: i64, seed: u64, frag: &mut ReportFragment) -> Result<()> {
    let a = AlgebraElement::gen_a();
    let ai = AlgebraElement::gen_a_inv();
    let vp = AlgebraElement::gen_v_plus();
    let vm = AlgebraElement::gen_v_minus();
    let one = AlgebraElement::one();
    let iok = Scalar::i_over_k();
    let tilde = vp.mul(&vm).add(&vp.scale(&iok));

    let mut errata: Vec<String> = Vec::new();

    // Eq. (4): compare canonical derivation against the printed forms; a
    // relation that matches after flipping the sign of one correction term
    // is recorded as a sign-level erratum, anything else fails.
    for rel in eq4_relations()? {
        let mut rhs = rel.base.clone();
        for c in &rel.corrections {
            rhs = rhs.add(c);
        }
        if rel.lhs == rhs {
            frag.push(Check::pass(rel.id, "(4)", ""));
            continue;
        }
        let delta = rel.lhs.sub(&rhs);
        let mut fixed = false;
        for c in &rel.corrections {
            if delta == c.scale(&Scalar::int(-2)) {
                errata.push(format!(
                    "{}: printed correction term carries the opposite sign; canonical lhs = {}",
                    rel.id, rel.lhs
                ));
                frag.push(Check::pass(
                    rel.id,
                    "(4)",
                    &format!(
                        "erratum: holds with the correction term negated; canonical lhs = {}, printed rhs = {}",
                        rel.lhs, rhs
                    ),
                ));
                fixed = true;
                break;
            }
        }
        if !fixed {
            frag.push(Check::fail(
                rel.id,
                "(4)",
                &format!("lhs = {}, printed rhs = {}", rel.lhs, rhs),
            ));
        }
    }

    // Eq. (5): the presentations realize the basis forms
    let da = differential(&a)?;
    let dai = differential(&ai)?;
    let dvp = differential(&vp)?;
    let dvm = differential(&vm)?;
    let dtilde = differential(&tilde)?;
    {
        let w0 = da.left_mul(&ai);
        let wp = dvp.left_mul(&ai);
        let wm = dvm.left_mul(&a);
        let wt = dtilde.sub(&dvm.left_mul(&vp)).sub(&dvp.left_mul(&vm));
        let ok = w0 == OneForm::basis(0)
            && wp == OneForm::basis(2)
            && wm == OneForm::basis(3)
            && wt == OneForm::basis(1);
        frag.push(Check::from_option(
            "(5):basis-presentations",
            "(5)",
            if ok {
                None
            } else {
                Some(format!("a*da = {w0}, a*dv+ = {wp}, a dv- = {wm}, wt0 candidate = {wt}"))
            },
        ));
    }
    {
        let half = da.left_mul(&ai).sub(&dai.left_mul(&a)).scale(&Scalar::rational(1, 2));
        check_eq!(frag, "(5):omega0-halfdiff", "(5)", half, OneForm::basis(0));
    }
    {
        // printed chain continues omega0 = a* da = a da*; the canonical
        // derivation gives a da* = -omega0, which the suite must report
        let lhs = da.left_mul(&ai);
        let rhs = dai.left_mul(&a);
        if lhs == rhs {
            frag.push(Check::fail(
                "(5):omega0-chain",
                "(5)",
                "printed chain holds, but d(a a*) = 0 forces a da* = -a* da; derivation inconsistent",
            ));
        } else if rhs == lhs.neg() {
            errata.push(format!(
                "(5):omega0-chain: printed final equality omega0 = a da* has the wrong sign; canonically a da* = {rhs}"
            ));
            frag.push(Check::pass(
                "(5):omega0-chain",
                "(5)",
                &format!("erratum: a* da = {lhs} but a da* = {rhs}; the printed chain carries a sign slip"),
            ));
        } else {
            frag.push(Check::fail(
                "(5):omega0-chain",
                "(5)",
                &format!("a* da = {lhs}, a da* = {rhs}: not related by an overall sign"),
            ));
        }
    }

    // Eq. (6): right coaction on the basis forms
    {
        let w0 = OneForm::basis(0);
        let wt = OneForm::basis(1);
        let wpf = OneForm::basis(2);
        let wmf = OneForm::basis(3);
        let got0 = gamma_right_coaction(&w0)?;
        check_eq!(frag, "(6):omega0", "(6)", got0, GammaTensor::from_pairs(&[(&w0, &one)]));
        let gott = gamma_right_coaction(&wt)?;
        check_eq!(frag, "(6):omegat0", "(6)", gott, GammaTensor::from_pairs(&[(&wt, &one)]));
        let gotp = gamma_right_coaction(&wpf)?;
        let wantp = GammaTensor::from_pairs(&[(&wpf, &ai), (&w0, &ai.mul(&vp))]);
        check_eq!(frag, "(6):omega-plus", "(6)", gotp, wantp);
        let gotm = gamma_right_coaction(&wmf)?;
        let wantm = GammaTensor::from_pairs(&[(&wmf, &a), (&w0, &a.mul(&vm).neg())]);
        check_eq!(frag, "(6):omega-minus", "(6)", gotm, wantm);
    }

    // Eq. (7): the printed right-invariant forms are right invariant
    {
        let etas = right_invariant_forms();
        let mut bad = None;
        for (k, eta) in etas.iter().enumerate() {
            let got = gamma_right_coaction(eta)?;
            let want = GammaTensor::from_pairs(&[(eta, &one)]);
            if got != want {
                bad = Some(format!("eta_{k}: coaction = {got}"));
                break;
            }
        }
        frag.push(Check::from_option("(7):right-invariance", "(7)", bad));
    }

    // left invariance of the omega basis
    {
        let mut bad = None;
        for i in 0..4 {
            let got = gamma_left_coaction(&OneForm::basis(i))?;
            let want = TensorGamma::from_pairs(&[(&one, &OneForm::basis(i))]);
            if got != want {
                bad = Some(format!("{}: left coaction = {got}", FORM_NAMES[i]));
                break;
            }
        }
        frag.push(Check::from_option("left-invariance", "(6)", bad));
    }

    // iterated right coaction agrees after reassociation
    {
        let mut bad = None;
        for i in 0..4 {
            let t = gamma_right_basis(i)?;
            if t.coact_gamma_leg()? != t.coproduct_a_leg() {
                bad = Some(format!("fails on {}", FORM_NAMES[i]));
                break;
            }
        }
        frag.push(Check::from_option("coaction-compat", "(6)", bad));
    }

    // Eq. (18) as printed: w_i y = sum_j (f_ij * y) w_j, on monomials
    {
        let mut bad = None;
        'outer: for i in 0..4 {
            for m in monomials(2, 3) {
                if m.degree() > 3 {
                    continue;
                }
                let y = AlgebraElement::from_monomial(m);
                let lhs = form_right_multiply(&OneForm::basis(i), &y)?;
                let mut rhs = OneForm::zero();
                for j in 0..4 {
                    let cj = crate::algebra::conv_action(
                        |u| f_functional(i, j, &AlgebraElement::from_monomial(*u)).unwrap(),
                        &y,
                    );
                    rhs.coeffs[j] = cj;
                }
                if lhs != rhs {
                    bad = Some(format!("fails for w_{i} and {m}: lhs = {lhs}, rhs = {rhs}"));
                    break 'outer;
                }
            }
        }
        frag.push(Check::from_option("(18):convolution-identity", "(18)", bad));
    }

    // Eq. (12): the omega coefficients of dx are the convolution actions
    {
        let mut bad = None;
        'outer: for m in monomials(2, 3) {
            if m.degree() > 3 {
                continue;
            }
            let x = AlgebraElement::from_monomial(m);
            let dx = differential(&x)?;
            for i in 0..4 {
                let conv = crate::algebra::conv_action(
                    |u| chi_eval(i, &AlgebraElement::from_monomial(*u)).unwrap(),
                    &x,
                );
                if conv != dx.coeffs[i] {
                    bad = Some(format!("fails for {m} at {}", FORM_NAMES[i]));
                    break 'outer;
                }
            }
        }
        frag.push(Check::from_option("(12):chi-coefficients", "(12)", bad));
    }

    // Leibniz rule on seeded random pairs
    {
        let mut rng = seeded_rng(seed);
        let mut bad = None;
        for _ in 0..12 {
            let x = random_element(&mut rng, 2, 2, 3);
            let y = random_element(&mut rng, 2, 2, 3);
            let lhs = differential(&x.mul(&y))?;
            let rhs = form_right_multiply(&differential(&x)?, &y)?.add(&differential(&y)?.left_mul(&x));
            if lhs != rhs {
                bad = Some(format!("fails for x = {x}, y = {y}"));
                break;
            }
        }
        frag.push(Check::from_option("leibniz", "(12)", bad));
    }

    // bimodule associativity (w . x) . y = w . (x y)
    {
        let mut rng = seeded_rng(seed ^ 0x9e3779b9);
        let mut bad = None;
        'outer: for i in 0..4 {
            for _ in 0..4 {
                let x = random_element(&mut rng, 1, 2, 2);
                let y = random_element(&mut rng, 1, 2, 2);
                let w = OneForm::basis(i);
                let lhs = form_right_multiply(&form_right_multiply(&w, &x)?, &y)?;
                let rhs = form_right_multiply(&w, &x.mul(&y))?;
                if lhs != rhs {
                    bad = Some(format!("fails for {} with x = {x}, y = {y}", FORM_NAMES[i]));
                    break 'outer;
                }
            }
        }
        frag.push(Check::from_option("bimodule-associativity", "(18)", bad));
    }

    // Eq. (10): star on the basis, derived from the presentations
    {
        let w0 = OneForm::basis(0);
        let wt = OneForm::basis(1);
        let wpf = OneForm::basis(2);
        let wmf = OneForm::basis(3);
        let s0 = form_star(&w0)?;
        let st = form_star(&wt)?;
        let sp = form_star(&wpf)?;
        let sm = form_star(&wmf)?;
        let want_sp = wmf.add(&w0.scale(&iok));
        let want_sm = wpf.sub(&w0.scale(&iok));
        let ok = s0 == w0.neg() && st == wt.neg() && sp == want_sp && sm == want_sm;
        frag.push(Check::from_option(
            "(10):basis-star",
            "(10)",
            if ok {
                None
            } else {
                Some(format!("w0* = {s0}, wt0* = {st}, w+* = {sp}, w-* = {sm}"))
            },
        ));
    }

    // (dx)* = d(x*) and star involutivity on forms
    {
        let mut bad = None;
        for m in monomials(2, 3) {
            if m.degree() > 3 {
                continue;
            }
            let x = AlgebraElement::from_monomial(m);
            if form_star(&differential(&x)?)? != differential(&x.star())? {
                bad = Some(format!("(dx)* != d(x*) for {m}"));
                break;
            }
        }
        frag.push(Check::from_option("(10):dx-star", "(10)", bad));

        let mut bad = None;
        for i in 0..4 {
            let w = OneForm::basis(i);
            if form_star(&form_star(&w)?)? != w {
                bad = Some(format!("star not involutive on {}", FORM_NAMES[i]));
                break;
            }
        }
        frag.push(Check::from_option("star-involution-forms", "(10)", bad));
    }

    // the errata must be exactly the two expected sign slips
    {
        let expected_markers = ["(4):vminus-da", "(5):omega0-chain"];
        let mut ok = errata.len() == expected_markers.len();
        for m in expected_markers {
            if !errata.iter().any(|e| e.starts_with(m)) {
                ok = false;
            }
        }
        let detail = if errata.is_empty() {
            "no errata recorded".to_string()
        } else {
            errata.join("; ")
        };
        frag.push(if ok {
            Check::pass("(5):errata-log", "(4)(5)", &detail)
        } else {
            Check::fail("(5):errata-log", "(4)(5)", &detail)
        });
    }

    let _ = degree;
    Ok(())
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

    #[test]
    fn differential_of_generators() {
        // d a = a w0; d I = 0; d v+ = a w+; d v- = a^-1 w-
        assert_eq!(differential(&a()).unwrap(), OneForm::basis(0).left_mul(&a()));
        assert!(differential(&AlgebraElement::one()).unwrap().is_zero());
        assert_eq!(differential(&vp()).unwrap(), OneForm::basis(2).left_mul(&a()));
        assert_eq!(differential(&vm()).unwrap(), OneForm::basis(3).left_mul(&ai()));
    }

    #[test]
    fn right_multiplication_examples() {
        // w0 a = a w0 (w0 is central)
        let got = form_right_multiply(&OneForm::basis(0), &a()).unwrap();
        assert_eq!(got, OneForm::basis(0).left_mul(&a()));
        // w+ I = w+
        let got = form_right_multiply(&OneForm::basis(2), &AlgebraElement::one()).unwrap();
        assert_eq!(got, OneForm::basis(2));
        // w0 v+ = v+ w0
        let got = form_right_multiply(&OneForm::basis(0), &vp()).unwrap();
        assert_eq!(got, OneForm::basis(0).left_mul(&vp()));
    }

    #[test]
    fn f_functional_examples() {
        assert_eq!(f_functional(0, 0, &a()).unwrap(), Scalar::one());
        // f_ij(I) = delta_ij
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j { Scalar::one() } else { Scalar::zero() };
                assert_eq!(f_functional(i, j, &AlgebraElement::one()).unwrap(), want);
            }
        }
        // w+ row on a: oracle is the bimodule computation itself
        let wa = form_right_multiply(&OneForm::basis(2), &a()).unwrap();
        assert_eq!(f_functional(2, 2, &a()).unwrap(), wa.coeffs[2].counit());
        assert_eq!(f_functional(2, 0, &a()).unwrap(), Scalar::i_over_k());
    }

    #[test]
    fn chi_values() {
        // chi_0(a^n) = n
        for n in -3i32..=3 {
            assert_eq!(
                chi_eval(0, &AlgebraElement::a_pow(n)).unwrap(),
                Scalar::int(n as i64)
            );
        }
        assert_eq!(chi_eval(2, &vp()).unwrap(), Scalar::one());
        for i in 0..4 {
            assert_eq!(chi_eval(i, &AlgebraElement::one()).unwrap(), Scalar::zero());
        }
    }

    #[test]
    fn coaction_values() {
        let one = AlgebraElement::one();
        // left coaction of a . w+ equals (a (x) a)(I (x) w+)
        let w = OneForm::basis(2).left_mul(&a());
        let got = gamma_left_coaction(&w).unwrap();
        let want = TensorGamma::from_pairs(&[(&a(), &OneForm::basis(2).left_mul(&a()))]);
        assert_eq!(got, want);
        let _ = one;
    }

    #[test]
    fn star_on_da() {
        // (da)* = d(a^-1)
        let lhs = form_star(&differential(&a()).unwrap()).unwrap();
        let rhs = differential(&ai()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn suite_passes_with_expected_errata() {
        let frag = verify_first_order(2, 0);
        assert!(frag.all_pass(), "{:?}", frag.failures());
        let log = frag.find("(5):errata-log").unwrap();
        assert!(log.detail.contains("(4):vminus-da"));
        assert!(log.detail.contains("(5):omega0-chain"));
    }
}
