//! Exact checks of every matrix identity, each comparing two independently
//! computed sides and reporting the first disagreeing entry.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigInt;

use crate::config::Caps;
use crate::duality::{
    a_matrix_closed, a_matrix_from_gamma, a_q_matrix_closed, b_matrix, eta_conjugate,
    eta_q_conjugate, inverse_closed, inverse_q_closed, mobius_matrix, multiset_count_matrix,
    zeta_matrix, InverseKind, Sweep,
};
use crate::error::{Error, Result};
use crate::matrix::SubsetMatrix;
use crate::perm::{
    build_multiset_word_universe, connectivity_set, descent_set, enumerate_permutations,
    multiset_connectivity_set, multiset_of, reduce_to_multiset, Word,
};
use crate::ring::{q_factorial, IntPolynomial, Ring};
use crate::series_check::connected_counts_series;
use crate::subset::{count_connectivity_superset, count_descent_subset, z, SubsetMask};

/// One identity of the suite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Identity {
    /// `#{w : S ⊆ C(w)} = eta(S)` and `#{w : D(w) ⊆ S} = n!/eta(S)`.
    SubsetCounts,
    /// Gamma sums to `n!` and vanishes unless `T ⊆ S`.
    GammaSupport,
    /// Closed-form `A` equals `M Gamma M`.
    ClosedFormA,
    /// `M Gamma M` equals `A` counted directly.
    ZetaSandwich,
    /// `A = D M D^{-1}`.
    EtaConjugation,
    /// `B = M Gamma = A M^{-1}`, both against `B` counted directly.
    BFactorizations,
    /// `M M^{-1} = I` with the signed containment matrix.
    MobiusInverse,
    /// Signed closed-form inverses of `A`, `B`, `Gamma`.
    SignedInverses,
    /// Multiset connectivity counts equal `Gamma M` under complements.
    MultisetCounts,
    /// The inverse-and-merge map is a bijection, class by class.
    MultisetBijection,
    /// `Gamma(1) = Gamma`, `A(1) = A`, `B(1) = B`.
    QSpecialization,
    /// Closed-form `A(q)` equals `M Gamma(q) M`.
    QClosedFormA,
    /// `A(q) = D(q) M D(q)^{-1} Q(q)`.
    QEtaConjugation,
    /// Laurent inverses of `A(q)`, `B(q)`, `Gamma(q)`.
    QInverses,
    /// `z(T)` is the least `inv(w)` with `T ⊆ D(w)`.
    MinimalInversions,
    /// Connected counts from enumeration match the factorial-series route.
    ConnectedSeries,
}

impl Identity {
    pub const ALL: [Identity; 16] = [
        Identity::SubsetCounts,
        Identity::GammaSupport,
        Identity::ClosedFormA,
        Identity::ZetaSandwich,
        Identity::EtaConjugation,
        Identity::BFactorizations,
        Identity::MobiusInverse,
        Identity::SignedInverses,
        Identity::MultisetCounts,
        Identity::MultisetBijection,
        Identity::QSpecialization,
        Identity::QClosedFormA,
        Identity::QEtaConjugation,
        Identity::QInverses,
        Identity::MinimalInversions,
        Identity::ConnectedSeries,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Identity::SubsetCounts => "#{S ⊆ C(w)} = η(S), #{D(w) ⊆ S} = n!/η(S)",
            Identity::GammaSupport => "ΣΓ = n!, Γ_ST = 0 unless T ⊆ S",
            Identity::ClosedFormA => "A (closed form) = MΓM",
            Identity::ZetaSandwich => "MΓM = A (direct count)",
            Identity::EtaConjugation => "A = DMD⁻¹",
            Identity::BFactorizations => "B = MΓ = AM⁻¹",
            Identity::MobiusInverse => "M·M⁻¹ = I",
            Identity::SignedInverses => "signed inverses of A, B, Γ",
            Identity::MultisetCounts => "multiset C-counts = (ΓM) complemented",
            Identity::MultisetBijection => "multiset reduction is a bijection",
            Identity::QSpecialization => "Γ(1) = Γ, A(1) = A, B(1) = B",
            Identity::QClosedFormA => "A(q) (closed form) = MΓ(q)M",
            Identity::QEtaConjugation => "A(q) = D(q)MD(q)⁻¹Q(q)",
            Identity::QInverses => "Laurent inverses of A(q), B(q), Γ(q)",
            Identity::MinimalInversions => "z(T) = min inv(w) over T ⊆ D(w)",
            Identity::ConnectedSeries => "f(n) by enumeration = series coefficient",
        }
    }

    pub fn is_q(self) -> bool {
        matches!(
            self,
            Identity::QSpecialization
                | Identity::QClosedFormA
                | Identity::QEtaConjugation
                | Identity::QInverses
        )
    }
}

/// Where a check first failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub n: usize,
    pub s: Option<SubsetMask>,
    pub t: Option<SubsetMask>,
    pub note: String,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n = {}", self.n)?;
        if let Some(s) = self.s {
            write!(f, ", S = {s}")?;
        }
        if let Some(t) = self.t {
            write!(f, ", T = {t}")?;
        }
        if !self.note.is_empty() {
            write!(f, " ({})", self.note)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub identity: Identity,
    pub n: usize,
    pub counterexample: Option<Counterexample>,
    pub elapsed: Duration,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// All checks for one `n`.
#[derive(Debug, Clone)]
pub struct SuiteRun {
    pub n: usize,
    pub sweep_time: Duration,
    pub outcomes: Vec<CheckOutcome>,
}

impl SuiteRun {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(CheckOutcome::passed)
    }
}

type CheckResult = Result<Option<Counterexample>>;

fn at(n: usize, s: SubsetMask, t: SubsetMask, note: &str) -> Counterexample {
    Counterexample { n, s: Some(s), t: Some(t), note: note.to_string() }
}

fn compare<R: Ring>(
    left: &SubsetMatrix<R>,
    right: &SubsetMatrix<R>,
    note: &str,
) -> Option<Counterexample> {
    left.first_difference(right)
        .map(|(s, t)| at(left.n(), s, t, note))
}

/// An identity failure surfaced by a verifying builder becomes a counterexample.
fn violation(n: usize, result: Result<()>) -> CheckResult {
    match result {
        Ok(()) => Ok(None),
        Err(Error::IdentityViolated(msg)) => {
            Ok(Some(Counterexample { n, s: None, t: None, note: msg }))
        }
        Err(e) => Err(e),
    }
}

/// Runs every identity for one `n`; q-identities only when `with_q`.
pub fn run_suite(n: usize, with_q: bool, caps: &Caps, threads: Option<usize>) -> Result<SuiteRun> {
    let started = Instant::now();
    let sweep = Sweep::run(n, caps, threads)?;
    let sweep_time = started.elapsed();
    let mut outcomes = Vec::new();
    for identity in Identity::ALL {
        if identity.is_q() && !with_q {
            continue;
        }
        let started = Instant::now();
        let counterexample = run_check(identity, &sweep, caps)?;
        outcomes.push(CheckOutcome { identity, n, counterexample, elapsed: started.elapsed() });
    }
    Ok(SuiteRun { n, sweep_time, outcomes })
}

/// Runs a single identity against an existing sweep.
pub fn run_check(identity: Identity, sweep: &Sweep, caps: &Caps) -> CheckResult {
    match identity {
        Identity::SubsetCounts => check_subset_counts(sweep.n(), caps),
        Identity::GammaSupport => check_gamma_support(sweep),
        Identity::ClosedFormA => check_closed_form_a(sweep, caps),
        Identity::ZetaSandwich => check_zeta_sandwich(sweep),
        Identity::EtaConjugation => check_eta_conjugation(sweep.n(), caps),
        Identity::BFactorizations => check_b_factorizations(sweep, caps),
        Identity::MobiusInverse => check_mobius(sweep.n()),
        Identity::SignedInverses => check_signed_inverses(sweep, caps),
        Identity::MultisetCounts => check_multiset_counts(sweep, caps),
        Identity::MultisetBijection => check_multiset_bijection(sweep.n(), caps),
        Identity::QSpecialization => check_q_specialization(sweep, caps),
        Identity::QClosedFormA => check_q_closed_form_a(sweep, caps),
        Identity::QEtaConjugation => check_q_eta_conjugation(sweep.n(), caps),
        Identity::QInverses => check_q_inverses(sweep, caps),
        Identity::MinimalInversions => check_minimal_inversions(sweep),
        Identity::ConnectedSeries => check_connected_series(sweep),
    }
}

/// Counts `{w : S ⊆ C(w)}` and `{w : D(w) ⊆ S}` by walking `S_n` for every
/// `S` and compares with the `eta` formulas.
pub fn check_subset_counts(n: usize, caps: &Caps) -> CheckResult {
    let stats: Vec<(SubsetMask, SubsetMask)> = enumerate_permutations(n, caps)?
        .map(|w| (connectivity_set(&w), descent_set(&w)))
        .collect();
    for s in SubsetMask::all(n) {
        let superset = stats.iter().filter(|(c, _)| s.is_subset_of(c)).count();
        if BigInt::from(superset) != count_connectivity_superset(&s) {
            return Ok(Some(Counterexample { n, s: Some(s), t: None, note: "S ⊆ C(w)".into() }));
        }
        let subset = stats.iter().filter(|(_, d)| d.is_subset_of(&s)).count();
        if BigInt::from(subset) != count_descent_subset(&s) {
            return Ok(Some(Counterexample { n, s: Some(s), t: None, note: "D(w) ⊆ S".into() }));
        }
    }
    Ok(None)
}

pub fn check_gamma_support(sweep: &Sweep) -> CheckResult {
    let n = sweep.n();
    let gamma = sweep.gamma();
    for s in SubsetMask::all(n) {
        for t in SubsetMask::all(n) {
            if !t.is_subset_of(&s) && !Ring::is_zero(gamma.get(s, t)) {
                return Ok(Some(at(n, s, t, "nonzero outside T ⊆ S")));
            }
        }
    }
    if gamma.total() != crate::subset::factorial(n) {
        return Ok(Some(Counterexample { n, s: None, t: None, note: "entries do not sum to n!".into() }));
    }
    Ok(None)
}

pub fn check_closed_form_a(sweep: &Sweep, caps: &Caps) -> CheckResult {
    let n = sweep.n();
    let mgm = a_matrix_from_gamma(&sweep.gamma(), &zeta_matrix(n))?;
    Ok(compare(&a_matrix_closed(n, caps)?, &mgm, "closed A vs MΓM"))
}

pub fn check_zeta_sandwich(sweep: &Sweep) -> CheckResult {
    let n = sweep.n();
    let mgm = a_matrix_from_gamma(&sweep.gamma(), &zeta_matrix(n))?;
    Ok(compare(&mgm, &sweep.a_direct(), "MΓM vs direct A"))
}

pub fn check_eta_conjugation(n: usize, caps: &Caps) -> CheckResult {
    Ok(compare(&eta_conjugate(n), &a_matrix_closed(n, caps)?, "DMD⁻¹ vs closed A"))
}

pub fn check_b_factorizations(sweep: &Sweep, caps: &Caps) -> CheckResult {
    let n = sweep.n();
    let direct = sweep.b_direct();
    let m_gamma = b_matrix(&sweep.gamma(), &zeta_matrix(n))?;
    if let Some(c) = compare(&m_gamma, &direct, "MΓ vs direct B") {
        return Ok(Some(c));
    }
    let a_minv = a_matrix_closed(n, caps)?.mul(&mobius_matrix(n))?;
    Ok(compare(&a_minv, &direct, "AM⁻¹ vs direct B"))
}

pub fn check_mobius(n: usize) -> CheckResult {
    let m = zeta_matrix(n);
    let minv = mobius_matrix(n);
    for product in [m.mul(&minv)?, minv.mul(&m)?] {
        if let Some((s, t)) = product.first_non_identity() {
            return Ok(Some(at(n, s, t, "M·M⁻¹ ≠ I")));
        }
    }
    Ok(None)
}

pub fn check_signed_inverses(sweep: &Sweep, caps: &Caps) -> CheckResult {
    for kind in InverseKind::ALL {
        if let Some(c) = violation(sweep.n(), inverse_closed(kind, sweep, caps).map(|_| ()))? {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

pub fn check_multiset_counts(sweep: &Sweep, caps: &Caps) -> CheckResult {
    let n = sweep.n();
    let counts = multiset_count_matrix(n, caps)?;
    let gm = sweep.gamma().mul(&zeta_matrix(n))?.complement_reindexed();
    Ok(compare(&counts, &gm, "multiset counts vs (ΓM) at complements"))
}

/// For each `T` and `S`: the reduction maps `{w : C(w) = S, D(w) ⊇ T-bar}`
/// injectively into rearrangements `u` of `N_T` with `C(u) = S`, and the two
/// sets have the same size.
pub fn check_multiset_bijection(n: usize, caps: &Caps) -> CheckResult {
    let perms: Vec<_> = enumerate_permutations(n, caps)?
        .map(|w| {
            let c = connectivity_set(&w);
            let d = descent_set(&w);
            (w, c, d)
        })
        .collect();
    for t in SubsetMask::all(n) {
        let t_bar = t.complement();
        let target = multiset_of(&t);
        let mut images: BTreeMap<u32, BTreeSet<Vec<u8>>> = BTreeMap::new();
        for (w, c, d) in &perms {
            if !t_bar.is_subset_of(d) {
                continue;
            }
            let u = reduce_to_multiset(w, &t)?;
            let mut sorted = u.letters().to_vec();
            sorted.sort_unstable();
            if sorted != target {
                return Ok(Some(at(n, *c, t, &format!("{w} maps outside N_T"))));
            }
            if multiset_connectivity_set(&u) != *c {
                return Ok(Some(at(n, *c, t, &format!("{w} ↦ {u} changes C"))));
            }
            if !images.entry(c.bits()).or_default().insert(u.letters().to_vec()) {
                return Ok(Some(at(n, *c, t, &format!("{w} ↦ {u} collides"))));
            }
        }
        let mut codomain: BTreeMap<u32, usize> = BTreeMap::new();
        for u in build_multiset_word_universe(&t, caps)? {
            *codomain.entry(multiset_connectivity_set(&u).bits()).or_default() += 1;
        }
        for s in SubsetMask::all(n) {
            let hit = images.get(&s.bits()).map_or(0, BTreeSet::len);
            let size = codomain.get(&s.bits()).copied().unwrap_or(0);
            if hit != size {
                return Ok(Some(at(n, s, t, &format!("{hit} images for {size} words"))));
            }
        }
    }
    Ok(None)
}

pub fn check_q_specialization(sweep: &Sweep, caps: &Caps) -> CheckResult {
    let n = sweep.n();
    if let Some(c) = compare(&sweep.gamma_q().at_q_one(), &sweep.gamma(), "Γ(1) vs Γ") {
        return Ok(Some(c));
    }
    let a = a_matrix_closed(n, caps)?;
    if let Some(c) = compare(&a_q_matrix_closed(n, caps)?.at_q_one(), &a, "A(1) vs A") {
        return Ok(Some(c));
    }
    if let Some(c) = compare(&sweep.a_q_direct().at_q_one(), &a, "direct A(1) vs A") {
        return Ok(Some(c));
    }
    Ok(compare(&sweep.b_q_direct().at_q_one(), &sweep.b_direct(), "B(1) vs B"))
}

pub fn check_q_closed_form_a(sweep: &Sweep, caps: &Caps) -> CheckResult {
    let n = sweep.n();
    let closed = a_q_matrix_closed(n, caps)?;
    let zeta = zeta_matrix(n).to_polynomial();
    let mgm = a_matrix_from_gamma(&sweep.gamma_q(), &zeta)?;
    if let Some(c) = compare(&closed, &mgm, "closed A(q) vs MΓ(q)M") {
        return Ok(Some(c));
    }
    if let Some(c) = compare(&closed, &sweep.a_q_direct(), "closed A(q) vs direct A(q)") {
        return Ok(Some(c));
    }
    let b = b_matrix(&sweep.gamma_q(), &zeta)?;
    if let Some(c) = compare(&b, &sweep.b_q_direct(), "MΓ(q) vs direct B(q)") {
        return Ok(Some(c));
    }
    let a_minv = closed.mul(&mobius_matrix(n).to_polynomial())?;
    Ok(compare(&a_minv, &sweep.b_q_direct(), "A(q)M⁻¹ vs direct B(q)"))
}

pub fn check_q_eta_conjugation(n: usize, caps: &Caps) -> CheckResult {
    Ok(compare(&eta_q_conjugate(n), &a_q_matrix_closed(n, caps)?, "D(q)MD(q)⁻¹Q(q) vs closed A(q)"))
}

pub fn check_q_inverses(sweep: &Sweep, caps: &Caps) -> CheckResult {
    for kind in InverseKind::ALL {
        if let Some(c) = violation(sweep.n(), inverse_q_closed(kind, sweep, caps).map(|_| ()))? {
            return Ok(Some(c));
        }
    }
    // the total weight of S_n is (n)! in q
    let total = sweep
        .gamma_q()
        .entries()
        .iter()
        .fold(IntPolynomial::zero(), |acc, p| &acc + p);
    if total != q_factorial(sweep.n()) {
        return Ok(Some(Counterexample {
            n: sweep.n(),
            s: None,
            t: None,
            note: "ΣΓ(q) ≠ (n)!".into(),
        }));
    }
    Ok(None)
}

pub fn check_minimal_inversions(sweep: &Sweep) -> CheckResult {
    let n = sweep.n();
    for t in SubsetMask::all(n) {
        let least = sweep
            .classes()
            .filter(|(_, d, _)| t.is_subset_of(d))
            .filter_map(|(_, _, hist)| hist.iter().position(|&c| c > 0))
            .min();
        if least != Some(z(&t)) {
            return Ok(Some(Counterexample {
                n,
                s: None,
                t: Some(t),
                note: format!("least inv {least:?}, z(T) = {}", z(&t)),
            }));
        }
    }
    Ok(None)
}

pub fn check_connected_series(sweep: &Sweep) -> CheckResult {
    let n = sweep.n();
    let enumerated = BigInt::from(sweep.count_with_connectivity(SubsetMask::empty(n)));
    let series = connected_counts_series(n)?;
    let expected = series.get(n).expect("series has n terms");
    if &enumerated != expected {
        return Ok(Some(Counterexample {
            n,
            s: None,
            t: None,
            note: format!("enumerated {enumerated}, series {expected}"),
        }));
    }
    Ok(None)
}

/// Checks `A = D M D^{-1}` and `A(q) = D(q) M D(q)^{-1} Q(q)` against the
/// closed forms and, when a sweep is supplied, against `M Gamma M`.
pub fn conjugation_identity_check(n: usize, caps: &Caps, sweep: Option<&Sweep>) -> Result<bool> {
    if check_eta_conjugation(n, caps)?.is_some() || check_q_eta_conjugation(n, caps)?.is_some() {
        return Ok(false);
    }
    if let Some(sweep) = sweep {
        let zeta = zeta_matrix(n);
        if eta_conjugate(n) != a_matrix_from_gamma(&sweep.gamma(), &zeta)? {
            return Ok(false);
        }
        let zeta_q = zeta.to_polynomial();
        if eta_q_conjugate(n) != a_matrix_from_gamma(&sweep.gamma_q(), &zeta_q)? {
            return Ok(false);
        }
    }
    Ok(true)
}
