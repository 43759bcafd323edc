//! Normal-ordered sparse Weyl-algebra arithmetic.
//!
//! Operators act on polynomials in the variable families
//! `x_1..x_n, y_1..y_n, z, q_1..q_n` (Fourier picture) or their hat
//! counterparts (geometric picture). The normal-order convention is fixed
//! once and for all: multiplication operators stand left of derivatives,
//! and within each side variables are ordered x < y < z < q with ascending
//! index. Equality of operators is therefore term-map equality.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::scalar::{GaussScalar, Rational};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Picture {
    Fourier,
    Geometric,
}

/// The ambient variable space: symplectic rank `n` plus the picture flag.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct VarSpace {
    pub n: usize,
    pub picture: Picture,
}

impl VarSpace {
    pub fn fourier(n: usize) -> Self {
        assert!(n >= 1, "symplectic rank must be positive");
        VarSpace {
            n,
            picture: Picture::Fourier,
        }
    }

    pub fn geometric(n: usize) -> Self {
        assert!(n >= 1, "symplectic rank must be positive");
        VarSpace {
            n,
            picture: Picture::Geometric,
        }
    }

    /// Number of commuting variable/derivative pairs: x, y each n, one z,
    /// and n spinor variables q.
    pub fn num_vars(&self) -> usize {
        3 * self.n + 1
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum WeylError {
    #[error("variable spaces do not match: {0:?} vs {1:?}")]
    SpaceMismatch(VarSpace, VarSpace),
    #[error("cannot parse operator term: {0}")]
    Parse(String),
}

/// One of the generators, used to address exponent slots.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Var {
    X(usize),
    Y(usize),
    Z,
    Q(usize),
}

/// Exponent vector of a commutative monomial in x, y, z, q.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Exponents {
    pub x: Vec<u32>,
    pub y: Vec<u32>,
    pub z: u32,
    pub q: Vec<u32>,
}

impl Exponents {
    pub fn zero(n: usize) -> Self {
        Exponents {
            x: vec![0; n],
            y: vec![0; n],
            z: 0,
            q: vec![0; n],
        }
    }

    pub fn get(&self, v: Var) -> u32 {
        match v {
            Var::X(i) => self.x[i],
            Var::Y(i) => self.y[i],
            Var::Z => self.z,
            Var::Q(i) => self.q[i],
        }
    }

    pub fn get_mut(&mut self, v: Var) -> &mut u32 {
        match v {
            Var::X(i) => &mut self.x[i],
            Var::Y(i) => &mut self.y[i],
            Var::Z => &mut self.z,
            Var::Q(i) => &mut self.q[i],
        }
    }

    pub fn total(&self) -> u32 {
        self.x.iter().sum::<u32>() + self.y.iter().sum::<u32>() + self.z + self.q.iter().sum::<u32>()
    }

    pub fn xy_degree(&self) -> u32 {
        self.x.iter().sum::<u32>() + self.y.iter().sum::<u32>()
    }

    pub fn q_degree(&self) -> u32 {
        self.q.iter().sum()
    }

    /// Homogeneity weight: x,y count 1, z counts 2, q does not count.
    pub fn weight(&self) -> u32 {
        self.xy_degree() + 2 * self.z
    }

    pub(crate) fn vars(n: usize) -> impl Iterator<Item = Var> {
        (0..n)
            .map(Var::X)
            .chain((0..n).map(Var::Y))
            .chain(std::iter::once(Var::Z))
            .chain((0..n).map(Var::Q))
    }

    fn cmp_lex(&self, other: &Self) -> std::cmp::Ordering {
        self.x
            .cmp(&other.x)
            .then_with(|| self.y.cmp(&other.y))
            .then_with(|| self.z.cmp(&other.z))
            .then_with(|| self.q.cmp(&other.q))
    }
}

/// Normal-ordered Weyl monomial: multiplication exponents `mult`, then
/// derivative exponents `deriv`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct WeylMonomial {
    pub mult: Exponents,
    pub deriv: Exponents,
}

impl WeylMonomial {
    pub fn identity(n: usize) -> Self {
        WeylMonomial {
            mult: Exponents::zero(n),
            deriv: Exponents::zero(n),
        }
    }
}

impl PartialOrd for WeylMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for WeylMonomial {
    /// Graded lexicographic: total degree first (mult plus deriv), then
    /// lex on (mult.x, mult.y, mult.z, mult.q, deriv.x, ...).
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let d1 = self.mult.total() + self.deriv.total();
        let d2 = other.mult.total() + other.deriv.total();
        d1.cmp(&d2)
            .then_with(|| self.mult.cmp_lex(&other.mult))
            .then_with(|| self.deriv.cmp_lex(&other.deriv))
    }
}

/// Sparse normal-ordered element of the Weyl algebra.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeylOp {
    pub space: VarSpace,
    pub terms: BTreeMap<WeylMonomial, GaussScalar>,
}

fn insert_term<K: Ord>(map: &mut BTreeMap<K, GaussScalar>, key: K, coef: GaussScalar) {
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

/// k! * C(d,k) * C(a,k) as an exact rational; exponents are small so this
/// fits in i64 before conversion.
fn contraction_coef(d: u32, a: u32, k: u32) -> i64 {
    let mut v: i64 = 1;
    // falling factorials d(d-1)..(d-k+1) * a(a-1)..(a-k+1) / k!
    for j in 0..k {
        v *= (d - j) as i64;
        v *= (a - j) as i64;
        v /= (j + 1) as i64;
    }
    v
}

impl WeylOp {
    pub fn zero(space: VarSpace) -> Self {
        WeylOp {
            space,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(space: VarSpace) -> Self {
        Self::constant(space, GaussScalar::one())
    }

    pub fn constant(space: VarSpace, c: GaussScalar) -> Self {
        let mut op = Self::zero(space);
        insert_term(&mut op.terms, WeylMonomial::identity(space.n), c);
        op
    }

    pub fn monomial(space: VarSpace, mono: WeylMonomial, c: GaussScalar) -> Self {
        let mut op = Self::zero(space);
        insert_term(&mut op.terms, mono, c);
        op
    }

    /// Multiplication operator by a single variable.
    pub fn mult_var(space: VarSpace, v: Var) -> Self {
        let mut m = WeylMonomial::identity(space.n);
        *m.mult.get_mut(v) += 1;
        Self::monomial(space, m, GaussScalar::one())
    }

    /// Single partial derivative.
    pub fn deriv_var(space: VarSpace, v: Var) -> Self {
        let mut m = WeylMonomial::identity(space.n);
        *m.deriv.get_mut(v) += 1;
        Self::monomial(space, m, GaussScalar::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add(&self, other: &WeylOp) -> WeylOp {
        assert_eq!(self.space, other.space);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            insert_term(&mut out.terms, m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &WeylOp) -> WeylOp {
        self.add(&other.scale(&-GaussScalar::one()))
    }

    pub fn neg(&self) -> WeylOp {
        self.scale(&-GaussScalar::one())
    }

    pub fn scale(&self, c: &GaussScalar) -> WeylOp {
        let mut out = WeylOp::zero(self.space);
        for (m, v) in &self.terms {
            insert_term(&mut out.terms, m.clone(), c * v);
        }
        out
    }

    /// Normal-form product. Within each variable the contraction rule is
    /// `d^d v^a = sum_k k! C(d,k) C(a,k) v^(a-k) d^(d-k)`; distinct
    /// variables commute.
    pub fn checked_mul(&self, other: &WeylOp) -> Result<WeylOp, WeylError> {
        if self.space != other.space {
            return Err(WeylError::SpaceMismatch(self.space, other.space));
        }
        let n = self.space.n;
        let mut out = WeylOp::zero(self.space);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let base = c1 * c2;
                // Variables where m1's derivative meets m2's multiplication.
                let active: Vec<(Var, u32, u32)> = Exponents::vars(n)
                    .filter_map(|v| {
                        let d = m1.deriv.get(v);
                        let a = m2.mult.get(v);
                        if d > 0 && a > 0 {
                            Some((v, d, a))
                        } else {
                            None
                        }
                    })
                    .collect();
                // Iterate over all contraction vectors k.
                let mut ks = vec![0u32; active.len()];
                loop {
                    let mut coef: i64 = 1;
                    for (idx, &(_, d, a)) in active.iter().enumerate() {
                        coef *= contraction_coef(d, a, ks[idx]);
                    }
                    let mut mono = WeylMonomial {
                        mult: m1.mult.clone(),
                        deriv: m2.deriv.clone(),
                    };
                    for v in Exponents::vars(n) {
                        *mono.mult.get_mut(v) += m2.mult.get(v);
                        *mono.deriv.get_mut(v) += m1.deriv.get(v);
                    }
                    for (idx, &(v, _, _)) in active.iter().enumerate() {
                        *mono.mult.get_mut(v) -= ks[idx];
                        *mono.deriv.get_mut(v) -= ks[idx];
                    }
                    insert_term(
                        &mut out.terms,
                        mono,
                        base.scale(&Rational::from_integer(coef.into())),
                    );
                    // next k-vector
                    let mut pos = 0;
                    loop {
                        if pos == active.len() {
                            break;
                        }
                        if ks[pos] < active[pos].1.min(active[pos].2) {
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
        Ok(out)
    }

    pub fn mul(&self, other: &WeylOp) -> WeylOp {
        self.checked_mul(other).expect("variable space mismatch")
    }

    pub fn commutator(&self, other: &WeylOp) -> WeylOp {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn pow(&self, k: usize) -> WeylOp {
        let mut out = WeylOp::identity(self.space);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Module action on a polynomial vector.
    pub fn checked_apply(&self, v: &PolyVec) -> Result<PolyVec, WeylError> {
        if self.space != v.space {
            return Err(WeylError::SpaceMismatch(self.space, v.space));
        }
        let n = self.space.n;
        let mut out = PolyVec::zero(self.space);
        for (m, c) in &self.terms {
            'poly: for (p, pc) in &v.terms {
                let mut coef = Rational::from_integer(1.into());
                let mut mono = p.clone();
                for var in Exponents::vars(n) {
                    let d = m.deriv.get(var);
                    if d == 0 {
                        continue;
                    }
                    let e = mono.get(var);
                    if e < d {
                        continue 'poly;
                    }
                    for j in 0..d {
                        coef *= Rational::from_integer(((e - j) as i64).into());
                    }
                    *mono.get_mut(var) = e - d;
                }
                for var in Exponents::vars(n) {
                    *mono.get_mut(var) += m.mult.get(var);
                }
                insert_term(&mut out.terms, mono, (c * pc).scale(&coef));
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &PolyVec) -> PolyVec {
        self.checked_apply(v).expect("variable space mismatch")
    }
}

/// Sparse polynomial vector: a Weyl element with no derivative part.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyVec {
    pub space: VarSpace,
    pub terms: BTreeMap<Exponents, GaussScalar>,
}

impl PolyVec {
    pub fn zero(space: VarSpace) -> Self {
        PolyVec {
            space,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(space: VarSpace) -> Self {
        Self::monomial(space, Exponents::zero(space.n), GaussScalar::one())
    }

    pub fn monomial(space: VarSpace, e: Exponents, c: GaussScalar) -> Self {
        let mut p = Self::zero(space);
        insert_term(&mut p.terms, e, c);
        p
    }

    pub fn var(space: VarSpace, v: Var) -> Self {
        let mut e = Exponents::zero(space.n);
        *e.get_mut(v) += 1;
        Self::monomial(space, e, GaussScalar::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &PolyVec) -> PolyVec {
        assert_eq!(self.space, other.space);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            insert_term(&mut out.terms, m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &PolyVec) -> PolyVec {
        self.add(&other.scale(&-GaussScalar::one()))
    }

    pub fn scale(&self, c: &GaussScalar) -> PolyVec {
        let mut out = PolyVec::zero(self.space);
        for (m, v) in &self.terms {
            insert_term(&mut out.terms, m.clone(), c * v);
        }
        out
    }

    pub fn max_q_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.q_degree()).max().unwrap_or(0)
    }

    pub fn max_z_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.z).max().unwrap_or(0)
    }

    /// Returns `Some(m)` if every term has homogeneity weight m.
    pub fn homogeneity(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|e| e.weight());
        let first = it.next()?;
        if it.all(|w| w == first) {
            Some(first)
        } else {
            None
        }
    }

    /// Component of the given homogeneity weight.
    pub fn weight_component(&self, m: u32) -> PolyVec {
        let mut out = PolyVec::zero(self.space);
        for (e, c) in &self.terms {
            if e.weight() == m {
                insert_term(&mut out.terms, e.clone(), c.clone());
            }
        }
        out
    }

    /// Promotes the polynomial to the (derivative-free) operator of
    /// multiplication by it.
    pub fn as_operator(&self) -> WeylOp {
        let mut op = WeylOp::zero(self.space);
        for (e, c) in &self.terms {
            insert_term(
                &mut op.terms,
                WeylMonomial {
                    mult: e.clone(),
                    deriv: Exponents::zero(self.space.n),
                },
                c.clone(),
            );
        }
        op
    }
}

impl Exponents {
    fn cmp_graded(&self, other: &Self) -> std::cmp::Ordering {
        self.total()
            .cmp(&other.total())
            .then_with(|| self.cmp_lex(other))
    }
}

impl PartialOrd for Exponents {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp_graded(other))
    }
}

impl Ord for Exponents {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.cmp_graded(other)
    }
}

/// All monomials with homogeneity weight `m` and q-degree at most `q_max`,
/// in ascending graded-lex order.
pub fn slice_basis(space: VarSpace, m: u32, q_max: u32) -> Vec<Exponents> {
    let n = space.n;
    let mut out = Vec::new();
    // choose z-degree first, then distribute the rest over x, y
    for z in 0..=(m / 2) {
        let xy = m - 2 * z;
        let mut xy_part = Vec::new();
        compositions(xy, 2 * n, &mut vec![0; 2 * n], 0, &mut xy_part);
        for q_deg in 0..=q_max {
            let mut q_part = Vec::new();
            compositions(q_deg, n, &mut vec![0; n], 0, &mut q_part);
            for xc in &xy_part {
                for qc in &q_part {
                    let mut e = Exponents::zero(n);
                    e.x.copy_from_slice(&xc[..n]);
                    e.y.copy_from_slice(&xc[n..]);
                    e.z = z;
                    e.q.copy_from_slice(qc);
                    out.push(e);
                }
            }
        }
    }
    out.sort();
    out
}

fn compositions(total: u32, slots: usize, cur: &mut Vec<u32>, pos: usize, out: &mut Vec<Vec<u32>>) {
    if pos == slots - 1 {
        cur[pos] = total;
        out.push(cur.clone());
        return;
    }
    for v in 0..=total {
        cur[pos] = v;
        compositions(total - v, slots, cur, pos + 1, out);
    }
    cur[pos] = 0;
}

// ---------------------------------------------------------------------------
// printing and parsing

fn var_name(space: VarSpace, v: Var, deriv: bool) -> String {
    let hat = space.picture == Picture::Geometric;
    let body = match v {
        Var::X(i) => format!("x{}{}", if hat { "h" } else { "" }, i + 1),
        Var::Y(i) => format!("y{}{}", if hat { "h" } else { "" }, i + 1),
        Var::Z => format!("z{}", if hat { "h" } else { "" }),
        Var::Q(i) => format!("q{}", i + 1),
    };
    if deriv {
        format!("d{body}")
    } else {
        body
    }
}

fn mono_string(space: VarSpace, m: &WeylMonomial) -> String {
    let mut parts = Vec::new();
    for v in Exponents::vars(space.n) {
        let e = m.mult.get(v);
        if e == 1 {
            parts.push(var_name(space, v, false));
        } else if e > 1 {
            parts.push(format!("{}^{}", var_name(space, v, false), e));
        }
    }
    for v in Exponents::vars(space.n) {
        let e = m.deriv.get(v);
        if e == 1 {
            parts.push(var_name(space, v, true));
        } else if e > 1 {
            parts.push(format!("{}^{}", var_name(space, v, true), e));
        }
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

impl fmt::Display for WeylOp {
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
            let ms = mono_string(self.space, m);
            if c == &GaussScalar::one() {
                write!(f, "{ms}")?;
            } else {
                let cs = c.to_string();
                let needs_parens = cs[1..].contains('+') || cs[1..].contains('-');
                if needs_parens {
                    write!(f, "({cs})*{ms}")?;
                } else {
                    write!(f, "{cs}*{ms}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for PolyVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_operator())
    }
}

fn parse_var(space: VarSpace, tok: &str) -> Result<(Var, bool), WeylError> {
    let err = || WeylError::Parse(tok.to_string());
    let (deriv, rest) = if let Some(r) = tok.strip_prefix('d') {
        (true, r)
    } else {
        (false, tok)
    };
    let hat = space.picture == Picture::Geometric;
    let parse_idx = |s: &str| -> Result<usize, WeylError> {
        let i: usize = s.parse().map_err(|_| err())?;
        if i >= 1 && i <= space.n {
            Ok(i - 1)
        } else {
            Err(err())
        }
    };
    let var = if let Some(r) = rest.strip_prefix('q') {
        Var::Q(parse_idx(r)?)
    } else {
        let (fam, idx_str) = rest.split_at(1);
        let idx_str = if hat {
            idx_str.strip_prefix('h').ok_or_else(err)?
        } else {
            idx_str
        };
        match fam {
            "x" => Var::X(parse_idx(idx_str)?),
            "y" => Var::Y(parse_idx(idx_str)?),
            "z" => {
                if idx_str.is_empty() {
                    Var::Z
                } else {
                    return Err(err());
                }
            }
            _ => return Err(err()),
        }
    };
    Ok((var, deriv))
}

impl WeylOp {
    /// Parses the `Display` syntax back into an operator.
    pub fn parse(space: VarSpace, input: &str) -> Result<WeylOp, WeylError> {
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if s == "0" {
            return Ok(WeylOp::zero(space));
        }
        // split into terms at top-level '+' (parenthesized coefficients may
        // contain '+' themselves)
        let mut pieces = Vec::new();
        let mut depth = 0usize;
        let mut start = 0usize;
        for (idx, ch) in s.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => depth = depth.saturating_sub(1),
                '+' if depth == 0 => {
                    pieces.push(&s[start..idx]);
                    start = idx + 1;
                }
                _ => {}
            }
        }
        pieces.push(&s[start..]);
        let mut out = WeylOp::zero(space);
        for term in pieces.into_iter().filter(|t| !t.is_empty()) {
            let mut coef = GaussScalar::one();
            let mut mono = WeylMonomial::identity(space.n);
            let mut rest = term;
            if let Some(r) = rest.strip_prefix('(') {
                let close = r.find(')').ok_or_else(|| WeylError::Parse(term.to_string()))?;
                coef = r[..close]
                    .parse()
                    .map_err(|_| WeylError::Parse(term.to_string()))?;
                rest = r[close + 1..].trim_start_matches('*');
            }
            for factor in rest.split('*').filter(|t| !t.is_empty()) {
                let (base, exp) = match factor.split_once('^') {
                    Some((b, e)) => (
                        b,
                        e.parse::<u32>()
                            .map_err(|_| WeylError::Parse(term.to_string()))?,
                    ),
                    None => (factor, 1),
                };
                if base == "1" {
                    continue;
                }
                match parse_var(space, base) {
                    Ok((v, deriv)) => {
                        if deriv {
                            *mono.deriv.get_mut(v) += exp;
                        } else {
                            *mono.mult.get_mut(v) += exp;
                        }
                    }
                    Err(_) => {
                        // must be a scalar factor
                        let c: GaussScalar = if exp == 1 {
                            base.parse()
                                .map_err(|_| WeylError::Parse(term.to_string()))?
                        } else {
                            return Err(WeylError::Parse(term.to_string()));
                        };
                        coef *= &c;
                    }
                }
            }
            insert_term(&mut out.terms, mono, coef);
        }
        Ok(out)
    }
}

/// Serde mirror for `WeylOp`: a stable term list keyed by printed monomial.
#[derive(Serialize, Deserialize)]
struct WeylOpRepr {
    n: usize,
    picture: Picture,
    terms: Vec<(String, GaussScalar)>,
}

impl Serialize for WeylOp {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let repr = WeylOpRepr {
            n: self.space.n,
            picture: self.space.picture,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (mono_string(self.space, m), c.clone()))
                .collect(),
        };
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for WeylOp {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = WeylOpRepr::deserialize(deserializer)?;
        let space = VarSpace {
            n: repr.n,
            picture: repr.picture,
        };
        let mut out = WeylOp::zero(space);
        for (ms, c) in repr.terms {
            let parsed =
                WeylOp::parse(space, &ms).map_err(|e| serde::de::Error::custom(e.to_string()))?;
            let (mono, unit) = parsed
                .terms
                .into_iter()
                .next()
                .ok_or_else(|| serde::de::Error::custom("empty monomial"))?;
            out.terms.insert(mono, &c * &unit);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use proptest::prelude::*;

    fn sp(n: usize) -> VarSpace {
        VarSpace::fourier(n)
    }

    #[test]
    fn canonical_commutation_relation() {
        // d_x1 * x1 = x1 d_x1 + 1
        let s = sp(1);
        let dx = WeylOp::deriv_var(s, Var::X(0));
        let x = WeylOp::mult_var(s, Var::X(0));
        let prod = dx.mul(&x);
        let expected = x.mul(&dx).add(&WeylOp::identity(s));
        assert_eq!(prod, expected);
    }

    #[test]
    fn leibniz_cross_term() {
        // (z d_x1) * (x1 d_z) = z d_z + z x1 d_x1 d_z
        let s = sp(1);
        let z = WeylOp::mult_var(s, Var::Z);
        let x = WeylOp::mult_var(s, Var::X(0));
        let dz = WeylOp::deriv_var(s, Var::Z);
        let dx = WeylOp::deriv_var(s, Var::X(0));
        let lhs = z.mul(&dx).mul(&x.mul(&dz));
        let rhs = z.mul(&dz).add(&z.mul(&x).mul(&dx).mul(&dz));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn commuting_multiplications() {
        let s = sp(2);
        let x = WeylOp::mult_var(s, Var::X(0));
        let y = WeylOp::mult_var(s, Var::Y(0));
        assert!(x.commutator(&y).is_zero());
    }

    #[test]
    fn apply_derivative() {
        let s = sp(1);
        let dx = WeylOp::deriv_var(s, Var::X(0));
        let mut e = Exponents::zero(1);
        e.x[0] = 2;
        let x2 = PolyVec::monomial(s, e, GaussScalar::one());
        let result = dx.apply(&x2);
        let expect = PolyVec::var(s, Var::X(0)).scale(&GaussScalar::from_int(2));
        assert_eq!(result, expect);
    }

    #[test]
    fn space_mismatch_is_an_error() {
        let a = WeylOp::identity(sp(1));
        let b = WeylOp::identity(sp(2));
        assert!(matches!(
            a.checked_mul(&b),
            Err(WeylError::SpaceMismatch(_, _))
        ));
        let v = PolyVec::one(sp(2));
        assert!(a.checked_apply(&v).is_err());
    }

    #[test]
    fn slice_basis_examples() {
        let s = sp(1);
        // m=0, q<=2: {1, q1, q1^2}
        assert_eq!(slice_basis(s, 0, 2).len(), 3);
        // m=1, q<=1: {x1, y1, x1 q1, y1 q1}
        assert_eq!(slice_basis(s, 1, 1).len(), 4);
        // m=2, q<=0: {x1^2, x1 y1, y1^2, z}
        let b = slice_basis(s, 2, 0);
        assert_eq!(b.len(), 4);
        assert!(b.iter().all(|e| e.weight() == 2));
        assert!(b.iter().any(|e| e.z == 1));
    }

    #[test]
    fn printer_round_trip_hand_cases() {
        let s = sp(2);
        let mut m = WeylMonomial::identity(2);
        m.mult.x[0] = 1;
        m.deriv.q[0] = 2;
        let op = WeylOp::monomial(s, m, GaussScalar::from_ratio(-3, 2));
        assert_eq!(op.to_string(), "-3/2*x1*dq1^2");
        let back = WeylOp::parse(s, &op.to_string()).unwrap();
        assert_eq!(op, back);

        let gs = VarSpace::geometric(1);
        let mut m = WeylMonomial::identity(1);
        m.mult.y[0] = 1;
        m.deriv.z = 1;
        let op = WeylOp::monomial(gs, m, GaussScalar::i())
            .add(&WeylOp::constant(gs, GaussScalar::new(rat(1, 2), rat(1, 3))));
        let back = WeylOp::parse(gs, &op.to_string()).unwrap();
        assert_eq!(op, back);
    }

    fn arb_small_op(n: usize) -> impl Strategy<Value = WeylOp> {
        let s = sp(n);
        proptest::collection::vec(
            (
                proptest::collection::vec(0u32..3, 2 * n + 1 + n),
                proptest::collection::vec(0u32..3, 2 * n + 1 + n),
                -4i64..5,
                -2i64..3,
            ),
            1..5,
        )
        .prop_map(move |terms| {
            let mut op = WeylOp::zero(s);
            for (me, de, re, im) in terms {
                let mut mono = WeylMonomial::identity(n);
                let mut k = 0;
                for v in Exponents::vars(n) {
                    *mono.mult.get_mut(v) = me[k];
                    *mono.deriv.get_mut(v) = de[k];
                    k += 1;
                }
                insert_term(
                    &mut op.terms,
                    mono,
                    GaussScalar::new(rat(re, 1), rat(im, 1)),
                );
            }
            op
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn mul_is_associative(a in arb_small_op(2), b in arb_small_op(2), c in arb_small_op(2)) {
            let lhs = a.mul(&b).mul(&c);
            let rhs = a.mul(&b.mul(&c));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn normal_form_is_canonical(a in arb_small_op(2)) {
            prop_assert!(a.sub(&a).is_zero());
        }

        #[test]
        fn apply_is_module_action(a in arb_small_op(1), b in arb_small_op(1)) {
            let v = {
                let s = sp(1);
                let mut e = Exponents::zero(1);
                e.x[0] = 2;
                e.q[0] = 1;
                PolyVec::monomial(s, e, GaussScalar::one())
                    .add(&PolyVec::var(s, Var::Y(0)))
                    .add(&PolyVec::one(s))
            };
            let lhs = a.mul(&b).apply(&v);
            let rhs = a.apply(&b.apply(&v));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn json_round_trip(a in arb_small_op(2)) {
            let s = serde_json::to_string(&a).unwrap();
            let back: WeylOp = serde_json::from_str(&s).unwrap();
            prop_assert_eq!(a, back);
        }

        #[test]
        fn printer_round_trip(a in arb_small_op(2)) {
            let text = a.to_string();
            let back = WeylOp::parse(sp(2), &text).unwrap();
            prop_assert_eq!(a, back);
        }
    }
}
