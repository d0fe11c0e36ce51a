//! Polynomials over GF(2) and arithmetic in binary extension fields GF(2^m).
//!
//! This is just enough machinery to turn a complete defining set into the
//! generator polynomial of a binary cyclic code.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// Largest extension degree supported by [`GF2mField::with_degree`].
pub const MAX_EXTENSION_DEGREE: u32 = 32;

/// A polynomial over GF(2), stored densely.
///
/// Bit `i % 64` of limb `i / 64` is the coefficient of `x^i`. The limb vector
/// never ends in a zero limb, so the zero polynomial has no limbs at all.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GF2Poly {
    limbs: Vec<u64>,
}

impl GF2Poly {
    pub fn zero() -> Self {
        Self { limbs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0)
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::monomial(1)
    }

    /// `x^exponent`.
    pub fn monomial(exponent: usize) -> Self {
        let mut limbs = vec![0u64; exponent / 64 + 1];
        limbs[exponent / 64] = 1u64 << (exponent % 64);
        Self { limbs }
    }

    /// Builds a polynomial from its low 64 coefficients packed in `bits`.
    pub fn from_bits(bits: u64) -> Self {
        let mut p = Self { limbs: vec![bits] };
        p.trim();
        p
    }

    /// Builds a polynomial from coefficients listed lowest degree first.
    pub fn from_coefficients<I: IntoIterator<Item = bool>>(coefficients: I) -> Self {
        let mut p = Self::zero();
        for (i, c) in coefficients.into_iter().enumerate() {
            if c {
                p.flip(i);
            }
        }
        p
    }

    /// Sum of `x^e` over the given exponents. Repeated exponents cancel.
    pub fn from_exponents<I: IntoIterator<Item = usize>>(exponents: I) -> Self {
        let mut p = Self::zero();
        for e in exponents {
            p.flip(e);
        }
        p
    }

    /// Packs the polynomial into a `u64`, if its degree is below 64.
    pub fn to_bits(&self) -> Option<u64> {
        match self.limbs.len() {
            0 => Some(0),
            1 => Some(self.limbs[0]),
            _ => None,
        }
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        let top = *self.limbs.last()?;
        Some((self.limbs.len() - 1) * 64 + 63 - top.leading_zeros() as usize)
    }

    pub fn is_zero(&self) -> bool {
        self.limbs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.limbs == [1]
    }

    /// Coefficient of `x^i`.
    pub fn coefficient(&self, i: usize) -> bool {
        self.limbs
            .get(i / 64)
            .is_some_and(|limb| (limb >> (i % 64)) & 1 == 1)
    }

    /// Coefficients lowest degree first, up to and including the leading one.
    pub fn coefficients(&self) -> Vec<bool> {
        match self.degree() {
            None => Vec::new(),
            Some(deg) => (0..=deg).map(|i| self.coefficient(i)).collect(),
        }
    }

    /// Exponents with a nonzero coefficient, ascending.
    pub fn exponents(&self) -> Vec<usize> {
        (0..self.degree().map_or(0, |d| d + 1))
            .filter(|&i| self.coefficient(i))
            .collect()
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> u32 {
        self.limbs.iter().map(|l| l.count_ones()).sum()
    }

    fn flip(&mut self, i: usize) {
        if self.limbs.len() <= i / 64 {
            self.limbs.resize(i / 64 + 1, 0);
        }
        self.limbs[i / 64] ^= 1u64 << (i % 64);
        self.trim();
    }

    fn trim(&mut self) {
        while self.limbs.last() == Some(&0) {
            self.limbs.pop();
        }
    }

    fn shifted(&self, by: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let (limb_shift, bit_shift) = (by / 64, by % 64);
        let mut limbs = vec![0u64; self.limbs.len() + limb_shift + 1];
        for (i, &l) in self.limbs.iter().enumerate() {
            limbs[i + limb_shift] ^= l << bit_shift;
            if bit_shift != 0 {
                limbs[i + limb_shift + 1] ^= l >> (64 - bit_shift);
            }
        }
        let mut p = Self { limbs };
        p.trim();
        p
    }

    pub fn add(&self, other: &Self) -> Self {
        let (long, short) = if self.limbs.len() >= other.limbs.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut limbs = long.limbs.clone();
        for (l, s) in limbs.iter_mut().zip(&short.limbs) {
            *l ^= s;
        }
        let mut p = Self { limbs };
        p.trim();
        p
    }

    /// Carry-less product.
    pub fn mul(&self, other: &Self) -> Self {
        let mut acc = Self::zero();
        for e in other.exponents() {
            acc = acc.add(&self.shifted(e));
        }
        acc
    }

    /// Quotient and remainder of division by a nonzero `divisor`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor
            .degree()
            .ok_or_else(|| Error::InvalidParameter("division by the zero polynomial".into()))?;
        let mut quotient = Self::zero();
        let mut rem = self.clone();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            quotient.flip(rd - dd);
            rem = rem.add(&divisor.shifted(rd - dd));
        }
        Ok((quotient, rem))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        Ok(self.div_rem(divisor)?.1)
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("b is nonzero");
            a = b;
            b = r;
        }
        a
    }

    pub fn lcm(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let g = self.gcd(other);
        self.div_rem(&g).expect("gcd is nonzero").0.mul(other)
    }

    /// `x^n - 1`, which over GF(2) is `x^n + 1`.
    pub fn x_n_minus_one(n: usize) -> Self {
        Self::from_exponents([0, n])
    }

    /// Trial division by every polynomial of degree `1..=deg/2`.
    ///
    /// Panics for degrees of 126 and above.
    pub fn is_irreducible(&self) -> bool {
        let Some(deg) = self.degree() else {
            return false;
        };
        if deg == 0 {
            return false;
        }
        assert!(deg / 2 < 63, "irreducibility test for degree {deg}");
        for d in 1..=deg / 2 {
            for low in 0..(1u64 << d) {
                let candidate = Self::from_bits((1u64 << d) | low);
                if self.rem(&candidate).expect("nonzero").is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

impl fmt::Display for GF2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .exponents()
            .into_iter()
            .rev()
            .map(|e| match e {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{e}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl fmt::Debug for GF2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF2Poly({self})")
    }
}

/// The field GF(2^m) = GF(2)[x] / (modulus).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GF2mField {
    m: u32,
    modulus: GF2Poly,
}

impl GF2mField {
    /// Builds the field from an explicit modulus, which must be irreducible.
    pub fn new(modulus: GF2Poly) -> Result<Self> {
        let m = modulus
            .degree()
            .filter(|&d| d >= 1 && d as u32 <= MAX_EXTENSION_DEGREE)
            .ok_or_else(|| {
                Error::InvalidParameter(format!(
                    "modulus {modulus} must have degree 1..={MAX_EXTENSION_DEGREE}"
                ))
            })? as u32;
        if !modulus.is_irreducible() {
            return Err(Error::Reducible(modulus.to_string()));
        }
        Ok(Self { m, modulus })
    }

    /// GF(2^m) with the first irreducible modulus (ordered by its packed
    /// coefficient bits) for which `x` generates the multiplicative group.
    /// For `m = 4` this is `x^4 + x + 1`.
    pub fn with_degree(m: u32) -> Result<Self> {
        if m == 0 || m > MAX_EXTENSION_DEGREE {
            return Err(Error::InvalidParameter(format!(
                "extension degree {m} outside 1..={MAX_EXTENSION_DEGREE}"
            )));
        }
        let top = 1u64 << m;
        for low in 1..top {
            let modulus = GF2Poly::from_bits(top | low);
            if !modulus.is_irreducible() {
                continue;
            }
            let field = Self {
                m,
                modulus: modulus.clone(),
            };
            if field.generator().multiplicative_order() == field.group_order() {
                return Ok(field);
            }
        }
        unreachable!("a primitive polynomial exists for every degree")
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn modulus(&self) -> &GF2Poly {
        &self.modulus
    }

    /// Order of the multiplicative group, `2^m - 1`.
    pub fn group_order(&self) -> u64 {
        (1u64 << self.m) - 1
    }

    /// Reduces `repr` modulo the field polynomial.
    pub fn element(&self, repr: GF2Poly) -> GF2mElement<'_> {
        let repr = repr.rem(&self.modulus).expect("modulus is nonzero");
        GF2mElement { field: self, repr }
    }

    pub fn zero(&self) -> GF2mElement<'_> {
        self.element(GF2Poly::zero())
    }

    pub fn one(&self) -> GF2mElement<'_> {
        self.element(GF2Poly::one())
    }

    /// The class of `x`.
    pub fn generator(&self) -> GF2mElement<'_> {
        self.element(GF2Poly::x())
    }

    /// An element of multiplicative order exactly `n`. Requires `n | 2^m - 1`
    /// and a modulus for which `x` is primitive.
    pub fn primitive_root_of_unity(&self, n: u64) -> Result<GF2mElement<'_>> {
        if n == 0 || !self.group_order().is_multiple_of(n) {
            return Err(Error::InvalidParameter(format!(
                "{n} does not divide 2^{} - 1",
                self.m
            )));
        }
        let root = self.generator().pow(self.group_order() / n);
        debug_assert_eq!(root.multiplicative_order(), n);
        Ok(root)
    }
}

/// An element of a [`GF2mField`].
#[derive(Clone, PartialEq, Eq)]
pub struct GF2mElement<'f> {
    field: &'f GF2mField,
    repr: GF2Poly,
}

impl<'f> GF2mElement<'f> {
    pub fn field(&self) -> &'f GF2mField {
        self.field
    }

    /// Representative polynomial, of degree below `m`.
    pub fn repr(&self) -> &GF2Poly {
        &self.repr
    }

    pub fn is_zero(&self) -> bool {
        self.repr.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.repr.is_one()
    }

    pub fn add(&self, other: &Self) -> Self {
        self.field.element(self.repr.add(&other.repr))
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.field.element(self.repr.mul(&other.repr))
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    /// `self^exponent`, with `e^0 = 1` for every `e` including zero.
    pub fn pow(&self, mut exponent: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while exponent > 0 {
            if exponent & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.square();
            exponent >>= 1;
        }
        acc
    }

    /// Smallest `t >= 1` with `self^t = 1`; zero for the zero element.
    pub fn multiplicative_order(&self) -> u64 {
        if self.is_zero() {
            return 0;
        }
        let group = self.field.group_order();
        let mut order = group;
        for p in prime_factors(group) {
            while order.is_multiple_of(p) && self.pow(order / p).is_one() {
                order /= p;
            }
        }
        order
    }

    /// Distinct conjugates `e, e^2, e^4, ...`.
    pub fn conjugates(&self) -> Vec<Self> {
        let mut out = vec![self.clone()];
        let mut next = self.square();
        while next != *self {
            out.push(next.clone());
            next = next.square();
        }
        out
    }

    /// Monic minimal polynomial over GF(2): the product of `(X - c)` over the
    /// conjugates `c` of `self`.
    pub fn minimal_polynomial(&self) -> Result<GF2Poly> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        // Coefficients in GF(2^m), lowest degree first.
        let mut coeffs = vec![self.field.one()];
        for c in self.conjugates() {
            let mut next = vec![self.field.zero(); coeffs.len() + 1];
            for (i, a) in coeffs.iter().enumerate() {
                next[i + 1] = next[i + 1].add(a);
                next[i] = next[i].add(&a.mul(&c));
            }
            coeffs = next;
        }
        let mut bits = Vec::with_capacity(coeffs.len());
        for (i, c) in coeffs.iter().enumerate() {
            if c.is_one() {
                bits.push(true);
            } else if c.is_zero() {
                bits.push(false);
            } else {
                return Err(Error::InvalidParameter(format!(
                    "coefficient of x^{i} in the minimal polynomial is not in GF(2)"
                )));
            }
        }
        Ok(GF2Poly::from_coefficients(bits))
    }

    /// Evaluates a GF(2) polynomial at this element.
    pub fn evaluate(&self, poly: &GF2Poly) -> Self {
        let mut acc = self.field.zero();
        for c in poly.coefficients().into_iter().rev() {
            acc = acc.mul(self);
            if c {
                acc = acc.add(&self.field.one());
            }
        }
        acc
    }
}

impl fmt::Debug for GF2mElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF2^{}({})", self.field.m, self.repr)
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Multiplicative order of 2 modulo an odd `n`: the smallest `m` with
/// `n | 2^m - 1`.
pub fn order_of_two(n: u32) -> Result<u32> {
    if n == 0 || n.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!(
            "length {n} must be odd for a binary cyclic code"
        )));
    }
    if n == 1 {
        return Ok(1);
    }
    let mut m = 1;
    let mut pow = 2 % n as u64;
    while pow != 1 {
        pow = pow * 2 % n as u64;
        m += 1;
    }
    Ok(m)
}

/// Cyclotomic coset of `i` modulo `n`: `{i, 2i, 4i, ...} mod n`.
pub fn cyclotomic_coset(i: u32, n: u32) -> BTreeSet<u32> {
    let mut coset = BTreeSet::new();
    let mut j = i % n;
    while coset.insert(j) {
        j = (2 * j as u64 % n as u64) as u32;
    }
    coset
}

/// Checks that `defset` is a complete defining set modulo `n`: every member
/// is below `n` and the set is closed under doubling.
pub fn check_defining_set(n: u32, defset: &BTreeSet<u32>) -> Result<()> {
    if n == 0 || n.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!(
            "length {n} must be odd for a binary cyclic code"
        )));
    }
    for &i in defset {
        if i >= n {
            return Err(Error::InvalidParameter(format!(
                "defining set member {i} is not a residue mod {n}"
            )));
        }
        let double = (2 * i as u64 % n as u64) as u32;
        if !defset.contains(&double) {
            return Err(Error::IncompleteDefiningSet {
                n,
                member: i,
                missing: double,
            });
        }
    }
    Ok(())
}

/// Generator polynomial of the binary cyclic code of length `n` whose roots
/// are `alpha^i` for `i` in `defset`, with `alpha` a primitive `n`-th root of
/// unity in the smallest field GF(2^m) containing one.
pub fn generator_from_defining_set(n: u32, defset: &BTreeSet<u32>) -> Result<GF2Poly> {
    check_defining_set(n, defset)?;
    let m = order_of_two(n)?;
    let field = GF2mField::with_degree(m)?;
    let alpha = field.primitive_root_of_unity(n as u64)?;

    let mut generator = GF2Poly::one();
    let mut covered = BTreeSet::new();
    for &i in defset {
        if covered.contains(&i) {
            continue;
        }
        covered.extend(cyclotomic_coset(i, n));
        let min_poly = alpha.pow(i as u64).minimal_polynomial()?;
        generator = generator.lcm(&min_poly);
    }
    debug_assert_eq!(generator.degree(), Some(defset.len()));
    Ok(generator)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(exps: &[usize]) -> GF2Poly {
        GF2Poly::from_exponents(exps.iter().copied())
    }

    #[test]
    fn products() {
        assert_eq!(p(&[0, 1]).mul(&p(&[0, 1])), p(&[0, 2]));
        let a = p(&[0, 3, 7, 64, 100]);
        assert_eq!(a.mul(&GF2Poly::one()), a);
        assert_eq!(p(&[0, 1]).mul(&p(&[0, 1, 2])), p(&[0, 3]));
        assert!(a.mul(&GF2Poly::zero()).is_zero());
    }

    #[test]
    fn degree_and_display() {
        assert_eq!(GF2Poly::zero().degree(), None);
        assert_eq!(GF2Poly::one().degree(), Some(0));
        assert_eq!(p(&[0, 1, 4]).degree(), Some(4));
        assert_eq!(p(&[130]).degree(), Some(130));
        assert_eq!(p(&[0, 1, 4]).to_string(), "x^4 + x + 1");
        assert_eq!(GF2Poly::zero().to_string(), "0");
        // repeated exponents cancel and the leading limb gets trimmed
        assert!(p(&[70, 70]).is_zero());
    }

    #[test]
    fn division() {
        let x15 = GF2Poly::x_n_minus_one(15);
        let (q, r) = x15.div_rem(&p(&[0, 1, 4])).unwrap();
        assert!(r.is_zero());
        assert_eq!(q.mul(&p(&[0, 1, 4])), x15);
        assert!(x15.div_rem(&GF2Poly::zero()).is_err());
    }

    #[test]
    fn irreducibility() {
        assert!(p(&[0, 1, 4]).is_irreducible());
        assert!(p(&[0, 1, 2]).is_irreducible());
        assert!(!p(&[0, 2]).is_irreducible()); // (1+x)^2
        assert!(!p(&[0, 2, 4]).is_irreducible()); // (1+x+x^2)^2
        assert!(GF2mField::new(p(&[0, 4])).is_err());
    }

    #[test]
    fn default_moduli() {
        assert_eq!(GF2mField::with_degree(4).unwrap().modulus(), &p(&[0, 1, 4]));
        assert_eq!(GF2mField::with_degree(3).unwrap().modulus(), &p(&[0, 1, 3]));
        assert_eq!(GF2mField::with_degree(6).unwrap().modulus(), &p(&[0, 1, 6]));
    }

    #[test]
    fn powers() {
        let f = GF2mField::with_degree(4).unwrap();
        let a = f.generator();
        assert!(a.pow(0).is_one());
        assert_eq!(a.pow(1), a);
        assert!(a.pow(15).is_one());
        assert!(!a.pow(5).is_one());
        assert_eq!(a.multiplicative_order(), 15);
        assert_eq!(a.pow(5).multiplicative_order(), 3);
        assert!(f.zero().pow(0).is_one());
    }

    #[test]
    fn minimal_polynomials() {
        let f = GF2mField::with_degree(4).unwrap();
        let a = f.generator();
        assert_eq!(f.one().minimal_polynomial().unwrap(), p(&[0, 1]));
        assert_eq!(a.minimal_polynomial().unwrap(), p(&[0, 1, 4]));
        assert_eq!(a.pow(5).minimal_polynomial().unwrap(), p(&[0, 1, 2]));
        assert_eq!(a.pow(3).minimal_polynomial().unwrap(), p(&[0, 1, 2, 3, 4]));
        assert_eq!(f.zero().minimal_polynomial(), Err(Error::ZeroElement));
    }

    #[test]
    fn minimal_polynomial_annihilates_every_element() {
        for m in 1..=6 {
            let f = GF2mField::with_degree(m).unwrap();
            for bits in 1..(1u64 << m) {
                let e = f.element(GF2Poly::from_bits(bits));
                let mp = e.minimal_polynomial().unwrap();
                assert!(e.evaluate(&mp).is_zero(), "m={m} e={e:?}");
                assert_eq!(m as usize % mp.degree().unwrap(), 0);
            }
        }
    }

    #[test]
    fn order_of_two_values() {
        assert_eq!(order_of_two(15).unwrap(), 4);
        assert_eq!(order_of_two(7).unwrap(), 3);
        assert_eq!(order_of_two(23).unwrap(), 11);
        assert_eq!(order_of_two(1).unwrap(), 1);
        assert!(order_of_two(8).is_err());
    }

    #[test]
    fn generator_polynomials() {
        let set = |v: &[u32]| v.iter().copied().collect::<BTreeSet<u32>>();
        let g =
            generator_from_defining_set(15, &set(&[0, 1, 2, 3, 4, 5, 6, 8, 9, 10, 12])).unwrap();
        assert_eq!(g.degree(), Some(11));
        assert!(GF2Poly::x_n_minus_one(15).rem(&g).unwrap().is_zero());

        assert_eq!(
            generator_from_defining_set(7, &set(&[])).unwrap(),
            GF2Poly::one()
        );
        let h = generator_from_defining_set(7, &set(&[1, 2, 4])).unwrap();
        assert_eq!(h.degree(), Some(3));
        assert!(h == p(&[0, 1, 3]) || h == p(&[0, 2, 3]));
    }

    #[test]
    fn defining_set_errors() {
        let set = |v: &[u32]| v.iter().copied().collect::<BTreeSet<u32>>();
        assert_eq!(
            generator_from_defining_set(15, &set(&[1, 2, 4])),
            Err(Error::IncompleteDefiningSet {
                n: 15,
                member: 4,
                missing: 8
            })
        );
        assert!(generator_from_defining_set(14, &set(&[])).is_err());
        assert!(generator_from_defining_set(7, &set(&[7])).is_err());
    }

    #[test]
    fn every_complete_defining_set_divides_x_n_minus_one() {
        for n in [3u32, 5, 7, 9, 15, 17, 21] {
            let reps: Vec<BTreeSet<u32>> = {
                let mut seen = BTreeSet::new();
                let mut cosets = Vec::new();
                for i in 0..n {
                    if seen.insert(i) {
                        let c = cyclotomic_coset(i, n);
                        seen.extend(c.iter().copied());
                        cosets.push(c);
                    }
                }
                cosets
            };
            for mask in 0u32..(1 << reps.len()) {
                let defset: BTreeSet<u32> = reps
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .flat_map(|(_, c)| c.iter().copied())
                    .collect();
                let g = generator_from_defining_set(n, &defset).unwrap();
                assert_eq!(g.degree(), Some(defset.len()));
                assert!(GF2Poly::x_n_minus_one(n as usize)
                    .rem(&g)
                    .unwrap()
                    .is_zero());
            }
        }
    }
}
