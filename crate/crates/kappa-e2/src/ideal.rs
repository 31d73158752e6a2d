//! The right ideal generated by the nine elements fixing the calculus, exact
//! reduction of counit-kernel elements to the fourdimensional quotient, and
//! the bicovariance checks for the ideal.
//!
//! The quotient is computed by filtered linear algebra: the span of the
//! right-ideal products inside a filtration bound is row-reduced over the
//! fraction field of [`Scalar`], and reductions are certified stable against
//! enlarging the filtration slack.

use crate::algebra::{monomials_filtration, AlgebraElement, Monomial};
use crate::linalg::{row_from_entries, solve_columns, Echelon, Frac, SparseRow};
use crate::report::{Check, ReportFragment};
use crate::scalar::Scalar;
use crate::{Error, Result};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, LazyLock, Mutex};

pub const DEFAULT_SLACK: i64 = 2;

/// The nine generators, exactly as listed, PBW-normalized.
pub fn ideal_generators() -> Vec<AlgebraElement> {
    let a = AlgebraElement::gen_a();
    let ai = AlgebraElement::gen_a_inv();
    let vp = AlgebraElement::gen_v_plus();
    let vm = AlgebraElement::gen_v_minus();
    let one = AlgebraElement::one();
    let iok = Scalar::i_over_k();
    let am1 = a.sub(&one);
    let aim1 = ai.sub(&one);
    vec![
        am1.mul(&am1),
        aim1.mul(&aim1),
        am1.mul(&vp),
        aim1.mul(&vp),
        am1.mul(&vm),
        aim1.mul(&vm),
        am1.mul(&aim1),
        vp.mul(&vp).sub(&vp.scale(&iok)),
        vm.mul(&vm).sub(&vm.scale(&iok)),
    ]
}

/// Representatives of the four quotient basis classes, in the order
/// `[a - a^-1]`, `[v+]`, `[v-]`, `[v+ v- + (i/k) v+]`.
pub fn quotient_basis_representatives() -> [AlgebraElement; 4] {
    let a = AlgebraElement::gen_a();
    let ai = AlgebraElement::gen_a_inv();
    let vp = AlgebraElement::gen_v_plus();
    let vm = AlgebraElement::gen_v_minus();
    [
        a.sub(&ai),
        vp.clone(),
        vm.clone(),
        vp.mul(&vm).add(&vp.scale(&Scalar::i_over_k())),
    ]
}

/// Coordinates of a kernel element over the four quotient basis classes.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuotientClass {
    pub coords: [Scalar; 4],
}

impl QuotientClass {
    pub fn zero() -> Self {
        QuotientClass {
            coords: [Scalar::zero(), Scalar::zero(), Scalar::zero(), Scalar::zero()],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, rhs: &QuotientClass) -> QuotientClass {
        let mut coords = self.coords.clone();
        for (i, c) in rhs.coords.iter().enumerate() {
            coords[i] = &coords[i] + c;
        }
        QuotientClass { coords }
    }

    pub fn scale(&self, s: &Scalar) -> QuotientClass {
        QuotientClass {
            coords: [
                &self.coords[0] * s,
                &self.coords[1] * s,
                &self.coords[2] * s,
                &self.coords[3] * s,
            ],
        }
    }
}

impl fmt::Display for QuotientClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let labels = ["[a - a^-1]", "[v+]", "[v-]", "[v+*v- + (i/k)*v+]"];
        let mut parts = Vec::new();
        for (c, label) in self.coords.iter().zip(labels) {
            if c.is_zero() {
                continue;
            }
            let (neg, prefix) = c.coeff_prefix();
            let sign = if neg { "-" } else { "" };
            parts.push(format!("{sign}{prefix}{label}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

struct SpanData {
    index: HashMap<Monomial, usize>,
    echelon: Echelon,
    reduced_reps: [SparseRow; 4],
}

static SPANS: LazyLock<Mutex<HashMap<i64, Arc<SpanData>>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));
static PI_CACHE: LazyLock<Mutex<HashMap<Monomial, Arc<[Scalar; 4]>>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

fn element_row(x: &AlgebraElement, index: &HashMap<Monomial, usize>) -> Option<SparseRow> {
    let mut entries = Vec::new();
    for (m, c) in x.iter() {
        let idx = index.get(m)?;
        entries.push((*idx, Frac::from_scalar(c.clone())));
    }
    Some(row_from_entries(entries))
}

/// Row-reduced span of the right-ideal products inside filtration `bound`,
/// memoized per bound (idempotent fill).
fn span_data(bound: i64) -> Arc<SpanData> {
    if let Some(hit) = SPANS.lock().unwrap().get(&bound) {
        return Arc::clone(hit);
    }
    let cols = monomials_filtration(bound);
    let index: HashMap<Monomial, usize> =
        cols.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let mut echelon = Echelon::new();
    let gens = ideal_generators();
    for g in &gens {
        for m in &cols {
            let prod = g.mul(&AlgebraElement::from_monomial(*m));
            if prod.is_zero() || prod.max_degree() > bound {
                continue;
            }
            let row = element_row(&prod, &index).expect("product inside filtration");
            echelon.insert(row);
        }
    }
    let reps = quotient_basis_representatives();
    let reduced_reps = [
        echelon.reduce(element_row(&reps[0], &index).unwrap()),
        echelon.reduce(element_row(&reps[1], &index).unwrap()),
        echelon.reduce(element_row(&reps[2], &index).unwrap()),
        echelon.reduce(element_row(&reps[3], &index).unwrap()),
    ];
    let data = Arc::new(SpanData { index, echelon, reduced_reps });
    SPANS
        .lock()
        .unwrap()
        .entry(bound)
        .or_insert_with(|| Arc::clone(&data));
    data
}

fn reduce_at(x: &AlgebraElement, bound: i64) -> Result<[Frac; 4]> {
    let data = span_data(bound);
    let row = element_row(x, &data.index)
        .expect("element exceeds the filtration bound of its own reduction");
    let rem = data.echelon.reduce(row);
    let sol = solve_columns(&data.reduced_reps, &rem).ok_or(Error::UnstableQuotient)?;
    Ok([sol[0].clone(), sol[1].clone(), sol[2].clone(), sol[3].clone()])
}

fn coords_to_scalars(fr: [Frac; 4]) -> Result<[Scalar; 4]> {
    let mut out = [Scalar::zero(), Scalar::zero(), Scalar::zero(), Scalar::zero()];
    for (i, f) in fr.into_iter().enumerate() {
        out[i] = f
            .clone()
            .to_scalar()
            .ok_or_else(|| Error::NonLaurentCoordinate(format!("{f:?}")))?;
    }
    Ok(out)
}

/// Reduce a counit-kernel element to its quotient coordinates, checking that
/// the result is stable under enlarging the slack by one.
pub fn reduce_mod_r(x: &AlgebraElement, degree: i64) -> Result<QuotientClass> {
    reduce_mod_r_slack(x, degree, DEFAULT_SLACK)
}

pub fn reduce_mod_r_slack(x: &AlgebraElement, degree: i64, slack: i64) -> Result<QuotientClass> {
    let eps = x.counit();
    if !eps.is_zero() {
        return Err(Error::NotInKernel(eps.to_string()));
    }
    if x.is_zero() {
        return Ok(QuotientClass::zero());
    }
    let d = degree.max(x.max_degree()).max(2);
    let c1 = reduce_at(x, d + slack)?;
    let c2 = reduce_at(x, d + slack + 1)?;
    if c1 != c2 {
        return Err(Error::UnstableQuotient);
    }
    Ok(QuotientClass { coords: coords_to_scalars(c1)? })
}

/// Class of `m - eps(m) I`, memoized per monomial. This is the projection
/// used by the canonical calculus; linear extension over a kernel element
/// agrees with [`reduce_mod_r`].
pub fn pi_monomial(m: &Monomial) -> Result<Arc<[Scalar; 4]>> {
    if let Some(hit) = PI_CACHE.lock().unwrap().get(m) {
        return Ok(Arc::clone(hit));
    }
    let x = AlgebraElement::from_monomial(*m)
        .sub(&AlgebraElement::from_scalar(AlgebraElement::from_monomial(*m).counit()));
    let coords = if x.is_zero() {
        [Scalar::zero(), Scalar::zero(), Scalar::zero(), Scalar::zero()]
    } else {
        let bound = x.max_degree().max(2) + DEFAULT_SLACK;
        coords_to_scalars(reduce_at(&x, bound)?)?
    };
    let arc: Arc<[Scalar; 4]> = Arc::new(coords);
    PI_CACHE
        .lock()
        .unwrap()
        .entry(*m)
        .or_insert_with(|| Arc::clone(&arc));
    Ok(arc)
}

/// Linear extension of [`pi_monomial`]; exact on counit-kernel elements.
pub fn pi_element(x: &AlgebraElement) -> Result<[Scalar; 4]> {
    let mut out = [Scalar::zero(), Scalar::zero(), Scalar::zero(), Scalar::zero()];
    for (m, c) in x.iter() {
        let pm = pi_monomial(m)?;
        for i in 0..4 {
            out[i] = &out[i] + &(&pm[i] * c);
        }
    }
    Ok(out)
}

/// True iff the element lies in the right ideal.
pub fn ideal_membership(x: &AlgebraElement, degree: i64) -> Result<bool> {
    if !x.counit().is_zero() {
        return Ok(false);
    }
    Ok(reduce_mod_r(x, degree)?.is_zero())
}

fn kernel_basis_rows(degree: i64, index: &HashMap<Monomial, usize>) -> Vec<SparseRow> {
    monomials_filtration(degree)
        .into_iter()
        .filter(|m| !m.is_unit())
        .map(|m| {
            let x = AlgebraElement::from_monomial(m).sub(&AlgebraElement::from_scalar(
                AlgebraElement::from_monomial(m).counit(),
            ));
            element_row(&x, index).unwrap()
        })
        .collect()
}

fn quotient_dimension_at(degree: i64, slack: i64) -> i64 {
    let data = span_data(degree + slack);
    let mut ech = data.echelon.clone();
    let mut dim = 0i64;
    for row in kernel_basis_rows(degree, &data.index) {
        if ech.insert(row) {
            dim += 1;
        }
    }
    dim
}

/// Dimension of `(ker eps ∩ filtration <= degree) / R`; expected 4.
pub fn quotient_dimension(degree: i64) -> Result<i64> {
    assert!(degree >= 2);
    let d1 = quotient_dimension_at(degree, DEFAULT_SLACK);
    let d2 = quotient_dimension_at(degree, DEFAULT_SLACK + 1);
    if d1 != d2 {
        return Err(Error::UnstableQuotient);
    }
    Ok(d1)
}

/// Bicovariance checks for the ideal: kernel containment, stability under
/// `x -> S(x)*`, and ad-invariance of every generator.
pub fn verify_ideal_properties(degree: i64) -> ReportFragment {
    assert!(degree >= 4);
    let mut frag = ReportFragment::new();
    let gens = ideal_generators();

    let mut bad = None;
    for (k, g) in gens.iter().enumerate() {
        if !g.counit().is_zero() {
            bad = Some(format!("generator {} has counit {}", k + 1, g.counit()));
            break;
        }
    }
    frag.push(Check::from_option("generators-in-kernel", "(3)", bad));

    let mut bad = None;
    for (k, g) in gens.iter().enumerate() {
        let y = g.antipode().star();
        match ideal_membership(&y, degree) {
            Ok(true) => {}
            Ok(false) => {
                bad = Some(format!("S(r)* not in R for generator {}: {}", k + 1, y));
                break;
            }
            Err(e) => {
                bad = Some(format!("generator {}: {e}", k + 1));
                break;
            }
        }
    }
    frag.push(Check::from_option("star-antipode-stability", "(3)", bad));

    let mut bad = None;
    'outer: for (k, g) in gens.iter().enumerate() {
        let ad = g.adjoint_coaction();
        for (leg, first) in ad.group_by_second() {
            match ideal_membership(&first, degree) {
                Ok(true) => {}
                Ok(false) => {
                    bad = Some(format!(
                        "generator {}: first leg {} at second leg {} escapes R",
                        k + 1,
                        first,
                        leg
                    ));
                    break 'outer;
                }
                Err(e) => {
                    bad = Some(format!("generator {}: {e}", k + 1));
                    break 'outer;
                }
            }
        }
    }
    frag.push(Check::from_option("ad-invariance", "(3)", bad));

    // right-ideal absorption: products of generators with monomials reduce to 0
    let mut bad = None;
    'outer2: for (k, g) in gens.iter().enumerate() {
        for m in monomials_filtration(degree - 2) {
            let prod = g.mul(&AlgebraElement::from_monomial(m));
            match ideal_membership(&prod, degree) {
                Ok(true) => {}
                Ok(false) => {
                    bad = Some(format!("generator {} times {} does not reduce to 0", k + 1, m));
                    break 'outer2;
                }
                Err(e) => {
                    bad = Some(format!("generator {} times {}: {e}", k + 1, m));
                    break 'outer2;
                }
            }
        }
    }
    frag.push(Check::from_option("right-ideal-absorption", "(3)", bad));

    frag
}

/// The full ideal suite: quotient dimensions at filtrations 2 through 5 with
/// the spanning representatives, plus the generator properties.
pub fn verify_ideal_suite(degree: i64) -> ReportFragment {
    let mut frag = ReportFragment::new();
    for d in 2..=5 {
        let id = format!("quotient-dim-{d}");
        match quotient_dimension(d) {
            Ok(4) => frag.push(Check::pass(&id, "(3)", "dimension 4")),
            Ok(n) => frag.push(Check::fail(&id, "(3)", &format!("dimension {n}, expected 4"))),
            Err(e) => frag.push(Check::fail(&id, "(3)", &e.to_string())),
        }
    }

    // the four printed representatives span the quotient independently
    let reps = quotient_basis_representatives();
    let mut bad = None;
    let data = span_data(2 + DEFAULT_SLACK);
    let mut ech = data.echelon.clone();
    for (i, r) in reps.iter().enumerate() {
        let row = element_row(r, &data.index).unwrap();
        if !ech.insert(row) {
            bad = Some(format!("representative {} is dependent modulo R: {}", i + 1, r));
            break;
        }
    }
    frag.push(Check::from_option("quotient-representatives", "(3)", bad));

    // expected coordinates of a few reference reductions
    let a = AlgebraElement::gen_a();
    let vp = AlgebraElement::gen_v_plus();
    let one = AlgebraElement::one();
    let mut bad = None;
    let cases: Vec<(AlgebraElement, QuotientClass, &str)> = vec![
        (
            a.mul(&a).sub(&one),
            QuotientClass {
                coords: [Scalar::one(), Scalar::zero(), Scalar::zero(), Scalar::zero()],
            },
            "a^2 - I",
        ),
        (
            vp.mul(&vp),
            QuotientClass {
                coords: [Scalar::zero(), Scalar::i_over_k(), Scalar::zero(), Scalar::zero()],
            },
            "v+^2",
        ),
        (
            a.sub(&AlgebraElement::gen_a_inv()),
            QuotientClass {
                coords: [Scalar::one(), Scalar::zero(), Scalar::zero(), Scalar::zero()],
            },
            "a - a^-1",
        ),
    ];
    for (x, want, label) in &cases {
        match reduce_mod_r(x, 2) {
            Ok(got) if &got == want => {}
            Ok(got) => {
                bad = Some(format!("{label}: got ({got}), want ({want})"));
                break;
            }
            Err(e) => {
                bad = Some(format!("{label}: {e}"));
                break;
            }
        }
    }
    frag.push(Check::from_option("reference-reductions", "(3)", bad));

    // slack stability over the reference set
    let mut bad = None;
    let gens = ideal_generators();
    let mut test_set: Vec<AlgebraElement> = reps.to_vec();
    test_set.extend(gens.iter().cloned());
    for x in &test_set {
        let r2 = reduce_mod_r_slack(x, degree.max(2), 2);
        let r3 = reduce_mod_r_slack(x, degree.max(2), 3);
        match (r2, r3) {
            (Ok(u), Ok(v)) if u == v => {}
            (Ok(u), Ok(v)) => {
                bad = Some(format!("slack 2 gives ({u}), slack 3 gives ({v}) on {x}"));
                break;
            }
            (Err(e), _) | (_, Err(e)) => {
                bad = Some(format!("{x}: {e}"));
                break;
            }
        }
    }
    frag.push(Check::from_option("slack-stability", "(3)", bad));

    frag.extend(verify_ideal_properties(degree.max(4)));
    frag
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_as_printed() {
        let gens = ideal_generators();
        assert_eq!(gens.len(), 9);
        // generator 9: v-^2 - (i/k) v-
        let vm = AlgebraElement::gen_v_minus();
        assert_eq!(gens[8], vm.mul(&vm).sub(&vm.scale(&Scalar::i_over_k())));
        // generator 7 equals 2I - a - a^-1 after normalization
        let want = AlgebraElement::one()
            .scale(&Scalar::int(2))
            .sub(&AlgebraElement::gen_a())
            .sub(&AlgebraElement::gen_a_inv());
        assert_eq!(gens[6], want);
        for g in &gens {
            assert!(g.counit().is_zero());
        }
    }

    #[test]
    fn reduce_reference_values() {
        let a = AlgebraElement::gen_a();
        let one = AlgebraElement::one();
        // a^2 - I reduces to [a - a^-1]
        let got = reduce_mod_r(&a.mul(&a).sub(&one), 2).unwrap();
        assert_eq!(
            got.coords,
            [Scalar::one(), Scalar::zero(), Scalar::zero(), Scalar::zero()]
        );
        // v+^2 reduces to (i/k) [v+]
        let vp = AlgebraElement::gen_v_plus();
        let got = reduce_mod_r(&vp.mul(&vp), 2).unwrap();
        assert_eq!(
            got.coords,
            [Scalar::zero(), Scalar::i_over_k(), Scalar::zero(), Scalar::zero()]
        );
    }

    #[test]
    fn membership_and_kernel_errors() {
        let a = AlgebraElement::gen_a();
        let one = AlgebraElement::one();
        let vp = AlgebraElement::gen_v_plus();
        assert!(ideal_membership(&a.sub(&one).mul(&vp), 3).unwrap());
        assert!(!ideal_membership(&vp, 2).unwrap());
        assert!(ideal_membership(&AlgebraElement::zero(), 2).unwrap());
        assert!(matches!(
            reduce_mod_r(&a, 2),
            Err(Error::NotInKernel(_))
        ));
    }

    #[test]
    fn quotient_dimension_is_four() {
        assert_eq!(quotient_dimension(2).unwrap(), 4);
        assert_eq!(quotient_dimension(3).unwrap(), 4);
    }

    #[test]
    fn pi_extension_is_linear() {
        let vp = AlgebraElement::gen_v_plus();
        let vm = AlgebraElement::gen_v_minus();
        let x = vp.mul(&vm).add(&vp.scale(&Scalar::int(3)));
        let y = vm.mul(&vm).sub(&vp.mul(&vp).scale(&Scalar::i()));
        let both = pi_element(&x.add(&y)).unwrap();
        let px = pi_element(&x).unwrap();
        let py = pi_element(&y).unwrap();
        for i in 0..4 {
            assert_eq!(both[i], &px[i] + &py[i]);
        }
    }
}
