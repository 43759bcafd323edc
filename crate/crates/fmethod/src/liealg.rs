//! The matrix Lie algebra sp(2n+2) with its parabolic basis, the
//! enveloping algebra of the opposite nilradical tensored with spinor
//! endomorphisms in PBW normal form, and the symmetrization map.
//!
//! Matrix coordinates follow the block sizes (1, n, 1, n): index 0, then
//! rows 1..=n, then n+1, then n+2..=2n+1.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num::{One, Zero};

use crate::scalar::{GaussScalar, Rational};

/// Dense square matrix over Q(i) of size 2n+2.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatG {
    pub n: usize,
    entries: Vec<GaussScalar>,
}

impl MatG {
    pub fn zero(n: usize) -> Self {
        let dim = 2 * n + 2;
        MatG {
            n,
            entries: vec![GaussScalar::zero(); dim * dim],
        }
    }

    pub fn dim(&self) -> usize {
        2 * self.n + 2
    }

    pub fn get(&self, r: usize, c: usize) -> &GaussScalar {
        &self.entries[r * self.dim() + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: GaussScalar) {
        let d = self.dim();
        self.entries[r * d + c] = v;
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &GaussScalar) {
        let d = self.dim();
        self.entries[r * d + c] += v;
    }

    pub fn mul(&self, other: &MatG) -> MatG {
        assert_eq!(self.n, other.n);
        let d = self.dim();
        let mut out = MatG::zero(self.n);
        for r in 0..d {
            for k in 0..d {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..d {
                    let b = other.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    out.add_to(r, c, &(a * b));
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &MatG) -> MatG {
        let mut out = self.clone();
        for (e, o) in out.entries.iter_mut().zip(&other.entries) {
            *e -= o;
        }
        out
    }

    pub fn add(&self, other: &MatG) -> MatG {
        let mut out = self.clone();
        for (e, o) in out.entries.iter_mut().zip(&other.entries) {
            *e += o;
        }
        out
    }

    pub fn scale(&self, c: &GaussScalar) -> MatG {
        let mut out = self.clone();
        for e in out.entries.iter_mut() {
            *e = &*e * c;
        }
        out
    }

    pub fn bracket(&self, other: &MatG) -> MatG {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> MatG {
        let d = self.dim();
        let mut out = MatG::zero(self.n);
        for r in 0..d {
            for c in 0..d {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    /// The standard symplectic form with blocks (n+1, n+1).
    pub fn symplectic_form(n: usize) -> MatG {
        let mut j = MatG::zero(n);
        for i in 0..=n {
            j.set(i, n + 1 + i, GaussScalar::one());
            j.set(n + 1 + i, i, -GaussScalar::one());
        }
        j
    }

    /// X^T J + J X = 0.
    pub fn is_symplectic(&self) -> bool {
        let j = MatG::symplectic_form(self.n);
        self.transpose().mul(&j).add(&j.mul(self)).is_zero()
    }
}

/// Tags for the fixed basis of sp(2n+2). Levi-block indices are 0-based;
/// `Hb`/`Hc` are the symmetric instances with i <= j.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum BasisTag {
    F(usize),
    G(usize),
    C,
    D(usize),
    E(usize),
    A,
    H,
    /// h_{E_ij,0,0}
    Ha(usize, usize),
    /// h_{0,E_ij+E_ji,0}
    Hb(usize, usize),
    /// h_{0,0,E_ij+E_ji}
    Hc(usize, usize),
}

impl fmt::Display for BasisTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisTag::F(i) => write!(f, "f{}", i + 1),
            BasisTag::G(i) => write!(f, "g{}", i + 1),
            BasisTag::C => write!(f, "c"),
            BasisTag::D(i) => write!(f, "d{}", i + 1),
            BasisTag::E(i) => write!(f, "e{}", i + 1),
            BasisTag::A => write!(f, "a"),
            BasisTag::H => write!(f, "h"),
            BasisTag::Ha(i, j) => write!(f, "hA({},{})", i + 1, j + 1),
            BasisTag::Hb(i, j) => write!(f, "hB({},{})", i + 1, j + 1),
            BasisTag::Hc(i, j) => write!(f, "hC({},{})", i + 1, j + 1),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BasisElem {
    pub tag: BasisTag,
    pub n: usize,
    pub matrix: MatG,
}

fn one() -> GaussScalar {
    GaussScalar::one()
}

/// Explicit block matrices for the basis.
pub fn basis_matrix(n: usize, tag: BasisTag) -> MatG {
    let mut m = MatG::zero(n);
    match tag {
        BasisTag::F(i) => {
            m.set(1 + i, 0, one());
            m.set(n + 1, n + 2 + i, -one());
        }
        BasisTag::G(i) => {
            m.set(n + 1, 1 + i, one());
            m.set(n + 2 + i, 0, one());
        }
        BasisTag::C => {
            m.set(n + 1, 0, GaussScalar::from_int(2));
        }
        BasisTag::D(i) => {
            m.set(0, 1 + i, one());
            m.set(n + 2 + i, n + 1, -one());
        }
        BasisTag::E(i) => {
            m.set(0, n + 2 + i, one());
            m.set(1 + i, n + 1, one());
        }
        BasisTag::A => {
            m.set(0, n + 1, GaussScalar::from_int(2));
        }
        BasisTag::H => {
            m.set(0, 0, one());
            m.set(n + 1, n + 1, -one());
        }
        BasisTag::Ha(i, j) => {
            // A = E_ij, block rows/cols 1..=n; -A^T in the last block
            m.set(1 + i, 1 + j, one());
            m.set(n + 2 + j, n + 2 + i, -one());
        }
        BasisTag::Hb(i, j) => {
            // B = E_ij + E_ji in block (2,4)
            m.set(1 + i, n + 2 + j, one());
            m.add_to(1 + j, n + 2 + i, &one());
        }
        BasisTag::Hc(i, j) => {
            m.set(n + 2 + i, 1 + j, one());
            m.add_to(n + 2 + j, 1 + i, &one());
        }
    }
    m
}

pub fn basis_elem(n: usize, tag: BasisTag) -> BasisElem {
    BasisElem {
        tag,
        n,
        matrix: basis_matrix(n, tag),
    }
}

/// The full fixed basis in a deterministic order.
pub fn full_basis(n: usize) -> Vec<BasisElem> {
    let mut tags = Vec::new();
    for i in 0..n {
        tags.push(BasisTag::F(i));
    }
    for i in 0..n {
        tags.push(BasisTag::G(i));
    }
    tags.push(BasisTag::C);
    for i in 0..n {
        tags.push(BasisTag::D(i));
    }
    for i in 0..n {
        tags.push(BasisTag::E(i));
    }
    tags.push(BasisTag::A);
    tags.push(BasisTag::H);
    for i in 0..n {
        for j in 0..n {
            tags.push(BasisTag::Ha(i, j));
        }
    }
    for i in 0..n {
        for j in i..n {
            tags.push(BasisTag::Hb(i, j));
        }
    }
    for i in 0..n {
        for j in i..n {
            tags.push(BasisTag::Hc(i, j));
        }
    }
    tags.into_iter().map(|t| basis_elem(n, t)).collect()
}

/// Grade in the |2|-grading: c at -2, f/g at -1, Levi at 0, d/e at 1, a at 2.
pub fn grade(tag: BasisTag) -> i32 {
    match tag {
        BasisTag::C => -2,
        BasisTag::F(_) | BasisTag::G(_) => -1,
        BasisTag::H | BasisTag::Ha(..) | BasisTag::Hb(..) | BasisTag::Hc(..) => 0,
        BasisTag::D(_) | BasisTag::E(_) => 1,
        BasisTag::A => 2,
    }
}

#[derive(Debug, thiserror::Error)]
#[error("matrix is not in the span of the sp(2n+2) basis")]
pub struct ExpansionError;

/// Expands a matrix in the fixed basis; each basis element is read off a
/// characteristic entry, then the expansion is verified by reconstruction.
pub fn expand_in_basis(n: usize, m: &MatG) -> Result<Vec<(BasisTag, GaussScalar)>, ExpansionError> {
    let two = GaussScalar::from_int(2);
    let mut coords: Vec<(BasisTag, GaussScalar)> = Vec::new();
    let mut push = |tag: BasisTag, c: GaussScalar| {
        if !c.is_zero() {
            coords.push((tag, c));
        }
    };
    for i in 0..n {
        push(BasisTag::F(i), m.get(1 + i, 0).clone());
        push(BasisTag::G(i), m.get(n + 1, 1 + i).clone());
        push(BasisTag::D(i), m.get(0, 1 + i).clone());
        push(BasisTag::E(i), m.get(0, n + 2 + i).clone());
    }
    push(BasisTag::C, m.get(n + 1, 0).clone() / two.clone());
    push(BasisTag::A, m.get(0, n + 1).clone() / two.clone());
    push(BasisTag::H, m.get(0, 0).clone());
    for i in 0..n {
        for j in 0..n {
            push(BasisTag::Ha(i, j), m.get(1 + i, 1 + j).clone());
        }
    }
    for i in 0..n {
        for j in i..n {
            let b = m.get(1 + i, n + 2 + j).clone();
            let c = m.get(n + 2 + i, 1 + j).clone();
            if i == j {
                push(BasisTag::Hb(i, j), b / two.clone());
                push(BasisTag::Hc(i, j), c / two.clone());
            } else {
                push(BasisTag::Hb(i, j), b);
                push(BasisTag::Hc(i, j), c);
            }
        }
    }
    // reconstruction check
    let mut rec = MatG::zero(n);
    for (tag, c) in &coords {
        rec = rec.add(&basis_matrix(n, *tag).scale(c));
    }
    if rec == *m {
        Ok(coords)
    } else {
        Err(ExpansionError)
    }
}

/// Matrix bracket expanded in the fixed basis.
pub fn bracket_matrix(
    x: &BasisElem,
    y: &BasisElem,
) -> Result<Vec<(BasisTag, GaussScalar)>, ExpansionError> {
    assert_eq!(x.n, y.n);
    expand_in_basis(x.n, &x.matrix.bracket(&y.matrix))
}

/// Structure constants for the whole basis, indexed by basis position.
pub struct StructureConstants {
    pub basis: Vec<BasisElem>,
    pub table: Vec<Vec<Vec<(usize, GaussScalar)>>>,
}

pub fn structure_constants(n: usize) -> StructureConstants {
    let basis = full_basis(n);
    let index: HashMap<BasisTag, usize> = basis
        .iter()
        .enumerate()
        .map(|(i, b)| (b.tag, i))
        .collect();
    let dim = basis.len();
    let mut table = vec![vec![Vec::new(); dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            let coords = bracket_matrix(&basis[i], &basis[j])
                .expect("basis bracket must close in the basis span");
            table[i][j] = coords.into_iter().map(|(t, c)| (index[&t], c)).collect();
        }
    }
    StructureConstants { basis, table }
}

// ---------------------------------------------------------------------------
// PBW algebra U(ubar) tensor End S

/// PBW monomial `f^alpha g^beta c^k (x) q^gamma dq^delta`; the PBW order
/// f < g < c is fixed, c is central, and the spinor factor is
/// normal-ordered as in the Weyl algebra.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct UbarMonomial {
    pub f: Vec<u32>,
    pub g: Vec<u32>,
    pub c: u32,
    pub q: Vec<u32>,
    pub dq: Vec<u32>,
}

impl UbarMonomial {
    pub fn identity(n: usize) -> Self {
        UbarMonomial {
            f: vec![0; n],
            g: vec![0; n],
            c: 0,
            q: vec![0; n],
            dq: vec![0; n],
        }
    }

    pub fn total_ubar_degree(&self) -> u32 {
        self.f.iter().sum::<u32>() + self.g.iter().sum::<u32>() + self.c
    }

    /// PBW filtration degree counts c twice (it is the image of a degree-2
    /// element of the grading on the opposite nilradical).
    pub fn filtration_degree(&self) -> u32 {
        self.f.iter().sum::<u32>() + self.g.iter().sum::<u32>() + 2 * self.c
    }

    fn key(&self) -> (u32, &Vec<u32>, &Vec<u32>, u32, &Vec<u32>, &Vec<u32>) {
        (
            self.total_ubar_degree() + self.q.iter().sum::<u32>() + self.dq.iter().sum::<u32>(),
            &self.f,
            &self.g,
            self.c,
            &self.q,
            &self.dq,
        )
    }
}

impl PartialOrd for UbarMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for UbarMonomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

/// Sparse element of U(ubar) (x) End S in PBW normal form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UbarElem {
    pub n: usize,
    pub terms: BTreeMap<UbarMonomial, GaussScalar>,
}

/// A single generator for word input.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum UbarGen {
    F(usize),
    G(usize),
    C,
    Q(usize),
    Dq(usize),
}

fn insert_ubar(map: &mut BTreeMap<UbarMonomial, GaussScalar>, key: UbarMonomial, coef: GaussScalar) {
    if coef.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match map.entry(key) {
        Entry::Vacant(e) => {
            e.insert(coef);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += &coef;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

fn contraction(d: u32, a: u32, k: u32) -> i64 {
    let mut v: i64 = 1;
    for j in 0..k {
        v *= (d - j) as i64;
        v *= (a - j) as i64;
        v /= (j + 1) as i64;
    }
    v
}

impl UbarElem {
    pub fn zero(n: usize) -> Self {
        UbarElem {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::constant(n, GaussScalar::one())
    }

    pub fn constant(n: usize, c: GaussScalar) -> Self {
        let mut e = Self::zero(n);
        insert_ubar(&mut e.terms, UbarMonomial::identity(n), c);
        e
    }

    pub fn generator(n: usize, g: UbarGen) -> Self {
        let mut m = UbarMonomial::identity(n);
        match g {
            UbarGen::F(i) => m.f[i] += 1,
            UbarGen::G(i) => m.g[i] += 1,
            UbarGen::C => m.c += 1,
            UbarGen::Q(i) => m.q[i] += 1,
            UbarGen::Dq(i) => m.dq[i] += 1,
        }
        let mut e = Self::zero(n);
        insert_ubar(&mut e.terms, m, GaussScalar::one());
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &UbarElem) -> UbarElem {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            insert_ubar(&mut out.terms, m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &UbarElem) -> UbarElem {
        self.add(&other.scale(&-GaussScalar::one()))
    }

    pub fn scale(&self, c: &GaussScalar) -> UbarElem {
        let mut out = UbarElem::zero(self.n);
        for (m, v) in &self.terms {
            insert_ubar(&mut out.terms, m.clone(), c * v);
        }
        out
    }

    fn mul_impl(&self, other: &UbarElem, symmetric_ubar: bool) -> UbarElem {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = UbarElem::zero(n);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let base = c1 * c2;
                // active contractions: g (left) against f (right) in ubar,
                // dq (left) against q (right) in End S
                let mut active: Vec<(bool, usize, u32, u32)> = Vec::new();
                if !symmetric_ubar {
                    for i in 0..n {
                        if m1.g[i] > 0 && m2.f[i] > 0 {
                            active.push((true, i, m1.g[i], m2.f[i]));
                        }
                    }
                }
                for i in 0..n {
                    if m1.dq[i] > 0 && m2.q[i] > 0 {
                        active.push((false, i, m1.dq[i], m2.q[i]));
                    }
                }
                let mut ks = vec![0u32; active.len()];
                loop {
                    let mut coef: i64 = 1;
                    for (idx, &(_, _, d, a)) in active.iter().enumerate() {
                        coef *= contraction(d, a, ks[idx]);
                    }
                    let mut mono = UbarMonomial::identity(n);
                    for i in 0..n {
                        mono.f[i] = m1.f[i] + m2.f[i];
                        mono.g[i] = m1.g[i] + m2.g[i];
                        mono.q[i] = m1.q[i] + m2.q[i];
                        mono.dq[i] = m1.dq[i] + m2.dq[i];
                    }
                    mono.c = m1.c + m2.c;
                    for (idx, &(is_ubar, i, _, _)) in active.iter().enumerate() {
                        let k = ks[idx];
                        if is_ubar {
                            // g^b f^a = sum_k k! C(a,k) C(b,k) f^(a-k) g^(b-k) c^k
                            mono.f[i] -= k;
                            mono.g[i] -= k;
                            mono.c += k;
                        } else {
                            mono.q[i] -= k;
                            mono.dq[i] -= k;
                        }
                    }
                    insert_ubar(
                        &mut out.terms,
                        mono,
                        base.scale(&Rational::from_integer(coef.into())),
                    );
                    let mut pos = 0;
                    loop {
                        if pos == active.len() {
                            break;
                        }
                        if ks[pos] < active[pos].2.min(active[pos].3) {
                            ks[pos] += 1;
                            break;
                        }
                        ks[pos] = 0;
                        pos += 1;
                    }
                    if pos == active.len() {
                        break;
                    }
                }
            }
        }
        out
    }

    /// PBW product in U(ubar) (x) End S.
    pub fn mul(&self, other: &UbarElem) -> UbarElem {
        self.mul_impl(other, false)
    }

    /// Product with the ubar part treated as the symmetric algebra (no
    /// central corrections); the End S part stays noncommutative. Used to
    /// form powers inside S(ubar) (x) End S before symmetrization.
    pub fn sym_mul(&self, other: &UbarElem) -> UbarElem {
        self.mul_impl(other, true)
    }

    pub fn pow(&self, k: usize) -> UbarElem {
        let mut out = UbarElem::identity(self.n);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn sym_pow(&self, k: usize) -> UbarElem {
        let mut out = UbarElem::identity(self.n);
        for _ in 0..k {
            out = out.sym_mul(self);
        }
        out
    }

    /// Largest PBW filtration degree among the ubar parts of the terms.
    pub fn max_filtration_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.filtration_degree())
            .max()
            .unwrap_or(0)
    }
}

/// Normal form of a product word over the generators.
pub fn heisenberg_normal_form(n: usize, word: &[UbarGen]) -> UbarElem {
    let mut out = UbarElem::identity(n);
    for g in word {
        out = out.mul(&UbarElem::generator(n, *g));
    }
    out
}

thread_local! {
    // beta(f^alpha g^beta) expansions keyed by the exponent shape
    static BETA_CACHE: RefCell<HashMap<(Vec<u32>, Vec<u32>), Vec<(UbarMonomial, Rational)>>> =
        RefCell::new(HashMap::new());
}

/// beta(f^alpha g^beta) in PBW normal form: the average over all orderings
/// of the multiset of generators.
fn beta_fg(n: usize, alpha: &[u32], beta: &[u32]) -> Vec<(UbarMonomial, Rational)> {
    let key = (alpha.to_vec(), beta.to_vec());
    if let Some(hit) = BETA_CACHE.with(|c| c.borrow().get(&key).cloned()) {
        return hit;
    }
    // letters: 0..n => f_i, n..2n => g_i
    let mut counts: Vec<u32> = alpha.iter().chain(beta.iter()).copied().collect();
    let total: u32 = counts.iter().sum();
    let mut acc: BTreeMap<UbarMonomial, Rational> = BTreeMap::new();
    let mut word: Vec<usize> = Vec::with_capacity(total as usize);
    // weight of each distinct word: prod(mult_i!) / total!
    let mut weight = Rational::one();
    for m in counts.iter() {
        for j in 1..=*m {
            weight *= Rational::from_integer((j as i64).into());
        }
    }
    for j in 1..=total {
        weight /= Rational::from_integer((j as i64).into());
    }
    fn rec(
        n: usize,
        counts: &mut Vec<u32>,
        word: &mut Vec<usize>,
        remaining: u32,
        acc: &mut BTreeMap<UbarMonomial, Rational>,
        weight: &Rational,
    ) {
        if remaining == 0 {
            let gens: Vec<UbarGen> = word
                .iter()
                .map(|&l| {
                    if l < n {
                        UbarGen::F(l)
                    } else {
                        UbarGen::G(l - n)
                    }
                })
                .collect();
            let nf = heisenberg_normal_form(n, &gens);
            for (mono, coef) in nf.terms {
                debug_assert!(coef.is_real());
                let entry = acc.entry(mono).or_insert_with(Rational::zero);
                *entry += coef.re * weight;
            }
            return;
        }
        for l in 0..counts.len() {
            if counts[l] > 0 {
                counts[l] -= 1;
                word.push(l);
                rec(n, counts, word, remaining - 1, acc, weight);
                word.pop();
                counts[l] += 1;
            }
        }
    }
    rec(n, &mut counts, &mut word, total, &mut acc, &weight);
    let result: Vec<(UbarMonomial, Rational)> = acc
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .collect();
    BETA_CACHE.with(|c| c.borrow_mut().insert(key, result.clone()));
    result
}

/// The symmetrization map applied termwise to an element of
/// S(ubar) (x) End S: each commutative ubar monomial is replaced by its
/// symmetrized PBW normal form, the central c power and the End S factor
/// pass through.
pub fn symmetrize_beta(elem: &UbarElem) -> UbarElem {
    let n = elem.n;
    let mut out = UbarElem::zero(n);
    for (mono, coef) in &elem.terms {
        for (fg_mono, w) in beta_fg(n, &mono.f, &mono.g) {
            let mut full = fg_mono;
            full.c += mono.c;
            full.q = mono.q.clone();
            full.dq = mono.dq.clone();
            insert_ubar(&mut out.terms, full, coef.scale(&w));
        }
    }
    out
}

impl fmt::Display for UbarElem {
    /// Prints terms as `c * f1 g1 c^2 q1 dq1`, ascending monomial order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mut parts: Vec<String> = Vec::new();
            let fam = |name: &str, i: usize, e: u32, parts: &mut Vec<String>| {
                if e == 1 {
                    parts.push(format!("{name}{}", i + 1));
                } else if e > 1 {
                    parts.push(format!("{name}{}^{}", i + 1, e));
                }
            };
            for i in 0..self.n {
                fam("f", i, m.f[i], &mut parts);
            }
            for i in 0..self.n {
                fam("g", i, m.g[i], &mut parts);
            }
            if m.c == 1 {
                parts.push("c".into());
            } else if m.c > 1 {
                parts.push(format!("c^{}", m.c));
            }
            for i in 0..self.n {
                fam("q", i, m.q[i], &mut parts);
            }
            for i in 0..self.n {
                fam("dq", i, m.dq[i], &mut parts);
            }
            let mono = if parts.is_empty() {
                "1".to_string()
            } else {
                parts.join(" ")
            };
            if c == &GaussScalar::one() && !parts.is_empty() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "({c}) {mono}")?;
            }
        }
        Ok(())
    }
}
