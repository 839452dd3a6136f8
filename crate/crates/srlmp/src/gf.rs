//! Finite-field arithmetic for F_q with primitive-element symbol ordering.
//!
//! Symbols are indexed `{0, α^0, α^1, …, α^{q−2}}`: index 0 is the zero
//! element and index `i ≥ 1` is `α^{i−1}` for a primitive element α. With
//! this ordering, multiplication and inversion reduce to index arithmetic
//! modulo q−1; only addition needs the underlying representation (polynomial
//! bitmasks for extension fields, residues for prime fields), which is
//! precomputed into a q×q table at construction.
//!
//! Supported orders: q = 2^m for m in 1..=8 and prime q ≤ 257.

use crate::error::{Error, Result};

/// An element of F_q, stored as its index in the alphabet
/// `{0, α^0, …, α^{q−2}}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(pub u16);

impl Symbol {
    /// The additive identity.
    pub const ZERO: Symbol = Symbol(0);
    /// The multiplicative identity, α^0.
    pub const ONE: Symbol = Symbol(1);

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Fixed primitive polynomials for F_{2^m}, m = 1..=8, as coefficient
/// bitmasks including the leading term (x^2+x+1 → 0b111, x^3+x+1 → 0b1011,
/// x^4+x+1, x^5+x^2+1, x^6+x+1, x^7+x^3+1, x^8+x^4+x^3+x^2+1).
const PRIM_POLYS: [u32; 8] = [0b10, 0b111, 0b1011, 0b1_0011, 0b10_0101, 0b100_0011, 0b1000_1001, 0b1_0001_1101];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum FieldKind {
    /// F_{2^m} with elements represented as polynomial bitmasks.
    Extension { prim_poly: u32 },
    /// F_p for prime p, elements represented as residues mod p.
    Prime,
}

/// Arithmetic tables for one field order q.
///
/// Immutable after construction; share freely across threads.
#[derive(Debug, Clone)]
pub struct FieldSpec {
    q: usize,
    kind: FieldKind,
    /// exp_table[i] = natural representation of α^i, length q−1.
    exp_table: Vec<u16>,
    /// log_table[v] = i with exp_table[i] = v for natural v ≠ 0; entry 0 unused.
    log_table: Vec<u16>,
    /// add_table[a.0 * q + b.0] = (a + b).0, indices in symbol order.
    add_table: Vec<u16>,
    /// neg_table[a.0] = (−a).0.
    neg_table: Vec<u16>,
}

fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    /// Builds the tables for F_q.
    ///
    /// Returns an error unless q = 2^m with m in 1..=8 or q is a prime ≤ 257.
    pub fn new(q: usize) -> Result<Self> {
        if is_prime(q) {
            if q > 257 {
                return Err(Error::invalid(format!(
                    "prime field order {q} exceeds the supported maximum 257"
                )));
            }
            Self::new_prime(q)
        } else if q.is_power_of_two() && (2..=256).contains(&q) {
            let m = q.trailing_zeros() as usize;
            Self::new_extension(q, PRIM_POLYS[m - 1])
        } else {
            Err(Error::invalid(format!(
                "unsupported field order {q}: need 2^m (m ≤ 8) or a prime ≤ 257"
            )))
        }
    }

    fn new_extension(q: usize, prim_poly: u32) -> Result<Self> {
        let m = q.trailing_zeros();
        let mut exp_table = vec![0u16; q - 1];
        let mut log_table = vec![0u16; q];
        let mut x: u32 = 1;
        for (i, e) in exp_table.iter_mut().enumerate() {
            *e = x as u16;
            log_table[x as usize] = i as u16;
            // multiply by α = x, reduce modulo the primitive polynomial
            x <<= 1;
            if x & (1 << m) != 0 {
                x ^= prim_poly;
            }
        }
        if x != 1 {
            return Err(Error::invalid(format!(
                "polynomial {prim_poly:#x} is not primitive for q = {q}"
            )));
        }
        let natural_add = |a: u16, b: u16| a ^ b;
        Ok(Self::finish(q, FieldKind::Extension { prim_poly }, exp_table, log_table, natural_add))
    }

    fn new_prime(q: usize) -> Result<Self> {
        // smallest primitive root mod q
        let mut root = 0;
        'outer: for g in 1..q {
            let mut seen = vec![false; q];
            let mut x = 1usize;
            for _ in 0..q - 1 {
                if seen[x] {
                    continue 'outer;
                }
                seen[x] = true;
                x = x * g % q;
            }
            root = g;
            break;
        }
        let mut exp_table = vec![0u16; q - 1];
        let mut log_table = vec![0u16; q];
        let mut x = 1usize;
        for (i, e) in exp_table.iter_mut().enumerate() {
            *e = x as u16;
            log_table[x] = i as u16;
            x = x * root % q;
        }
        let natural_add = move |a: u16, b: u16| ((a as usize + b as usize) % q) as u16;
        Ok(Self::finish(q, FieldKind::Prime, exp_table, log_table, natural_add))
    }

    fn finish(
        q: usize,
        kind: FieldKind,
        exp_table: Vec<u16>,
        log_table: Vec<u16>,
        natural_add: impl Fn(u16, u16) -> u16,
    ) -> Self {
        // natural representation of every symbol index (0 maps to 0)
        let nat = |s: usize| -> u16 {
            if s == 0 {
                0
            } else {
                exp_table[s - 1]
            }
        };
        let from_nat = |v: u16| -> u16 {
            if v == 0 {
                0
            } else {
                log_table[v as usize] + 1
            }
        };
        let mut add_table = vec![0u16; q * q];
        for a in 0..q {
            for b in 0..q {
                add_table[a * q + b] = from_nat(natural_add(nat(a), nat(b)));
            }
        }
        let mut neg_table = vec![0u16; q];
        for a in 0..q {
            let n = (0..q).find(|&b| add_table[a * q + b] == 0).expect("additive inverse exists");
            neg_table[a] = n as u16;
        }
        Self { q, kind, exp_table, log_table, add_table, neg_table }
    }

    pub fn q(&self) -> usize {
        self.q
    }

    /// The primitive polynomial bitmask, for extension fields.
    pub fn prim_poly(&self) -> Option<u32> {
        match self.kind {
            FieldKind::Extension { prim_poly } => Some(prim_poly),
            FieldKind::Prime => None,
        }
    }

    /// Validated symbol from an index in 0..q.
    pub fn symbol(&self, index: usize) -> Result<Symbol> {
        if index < self.q {
            Ok(Symbol(index as u16))
        } else {
            Err(Error::invalid(format!("symbol index {index} out of range for q = {}", self.q)))
        }
    }

    /// α^i as a symbol (indices wrap modulo q−1).
    pub fn alpha_pow(&self, i: usize) -> Symbol {
        Symbol((i % (self.q - 1)) as u16 + 1)
    }

    /// All q symbols in index order.
    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        (0..self.q as u16).map(Symbol)
    }

    #[inline]
    pub fn add(&self, a: Symbol, b: Symbol) -> Symbol {
        debug_assert!(a.index() < self.q && b.index() < self.q);
        Symbol(self.add_table[a.index() * self.q + b.index()])
    }

    #[inline]
    pub fn sub(&self, a: Symbol, b: Symbol) -> Symbol {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Symbol, b: Symbol) -> Symbol {
        if a.is_zero() || b.is_zero() {
            return Symbol::ZERO;
        }
        let n = self.q - 1;
        Symbol(((a.index() - 1 + b.index() - 1) % n) as u16 + 1)
    }

    /// Multiplicative inverse; zero input is a domain error.
    pub fn inv(&self, a: Symbol) -> Result<Symbol> {
        if a.is_zero() {
            return Err(Error::invalid("inverse of the zero element"));
        }
        let n = self.q - 1;
        Ok(Symbol(((n - (a.index() - 1)) % n) as u16 + 1))
    }

    #[inline]
    pub fn neg(&self, a: Symbol) -> Symbol {
        Symbol(self.neg_table[a.index()])
    }

    /// Natural representation (polynomial bitmask or residue) of a symbol.
    pub fn natural(&self, a: Symbol) -> u16 {
        if a.is_zero() {
            0
        } else {
            self.exp_table[a.index() - 1]
        }
    }

    /// Symbol whose natural representation is `v`.
    pub fn from_natural(&self, v: u16) -> Result<Symbol> {
        if v == 0 {
            return Ok(Symbol::ZERO);
        }
        if (v as usize) < self.q && self.exp_table[self.log_table[v as usize] as usize] == v {
            Ok(Symbol(self.log_table[v as usize] + 1))
        } else {
            Err(Error::invalid(format!("value {v} is not an element of F_{}", self.q)))
        }
    }

    pub fn exp_table(&self) -> &[u16] {
        &self.exp_table
    }

    pub fn log_table(&self) -> &[u16] {
        &self.log_table
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(q: usize) -> FieldSpec {
        FieldSpec::new(q).unwrap()
    }

    /// Brute-force F_4 arithmetic over polynomial bitmasks mod x²+x+1,
    /// independent of the table construction above.
    fn f4_poly_mul(a: u16, b: u16) -> u16 {
        let mut r = 0u16;
        for bit in 0..2 {
            if b & (1 << bit) != 0 {
                r ^= a << bit;
            }
        }
        for bit in (2..4).rev() {
            if r & (1 << bit) != 0 {
                r ^= 0b111 << (bit - 2);
            }
        }
        r
    }

    #[test]
    fn f4_matches_polynomial_oracle() {
        let gf = f(4);
        for a in gf.symbols() {
            for b in gf.symbols() {
                let sum = gf.natural(gf.add(a, b));
                assert_eq!(sum, gf.natural(a) ^ gf.natural(b));
                let prod = gf.natural(gf.mul(a, b));
                assert_eq!(prod, f4_poly_mul(gf.natural(a), gf.natural(b)));
            }
        }
    }

    #[test]
    fn f4_alpha_plus_one_is_alpha_squared() {
        let gf = f(4);
        let alpha = gf.alpha_pow(1);
        let one = Symbol::ONE;
        assert_eq!(gf.add(alpha, one), gf.alpha_pow(2));
        // characteristic 2: 1 + 1 = 0
        assert_eq!(gf.add(one, one), Symbol::ZERO);
        // α · α = α²
        assert_eq!(gf.mul(alpha, alpha), gf.alpha_pow(2));
        // inv(α) = α²  (exhaustive-search oracle)
        let inv = gf
            .symbols()
            .find(|&b| gf.mul(alpha, b) == Symbol::ONE)
            .unwrap();
        assert_eq!(inv, gf.alpha_pow(2));
        assert_eq!(gf.inv(alpha).unwrap(), inv);
    }

    #[test]
    fn identities_hold_for_all_supported_orders() {
        for q in [2usize, 3, 4, 5, 7, 8, 11, 16, 32, 64, 127, 128, 251, 256, 257] {
            let gf = f(q);
            for a in gf.symbols() {
                assert_eq!(gf.add(a, Symbol::ZERO), a);
                assert_eq!(gf.mul(a, Symbol::ONE), a);
                assert_eq!(gf.mul(a, Symbol::ZERO), Symbol::ZERO);
                assert_eq!(gf.add(a, gf.neg(a)), Symbol::ZERO);
                if !a.is_zero() {
                    assert_eq!(gf.mul(a, gf.inv(a).unwrap()), Symbol::ONE);
                }
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive_small_orders() {
        for q in [2usize, 4, 5, 8, 16] {
            let gf = f(q);
            for a in gf.symbols() {
                for b in gf.symbols() {
                    assert_eq!(gf.add(a, b), gf.add(b, a));
                    assert_eq!(gf.mul(a, b), gf.mul(b, a));
                    for c in gf.symbols() {
                        assert_eq!(gf.add(gf.add(a, b), c), gf.add(a, gf.add(b, c)));
                        assert_eq!(gf.mul(gf.mul(a, b), c), gf.mul(a, gf.mul(b, c)));
                        assert_eq!(
                            gf.mul(a, gf.add(b, c)),
                            gf.add(gf.mul(a, b), gf.mul(a, c))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn field_axioms_sampled_large_orders() {
        use rand::{Rng, SeedableRng};
        for q in [64usize, 128, 251, 256, 257] {
            let gf = f(q);
            let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(0xF1E1D);
            for _ in 0..100_000 {
                let a = Symbol(rng.random_range(0..q as u16));
                let b = Symbol(rng.random_range(0..q as u16));
                let c = Symbol(rng.random_range(0..q as u16));
                assert_eq!(gf.add(gf.add(a, b), c), gf.add(a, gf.add(b, c)));
                assert_eq!(gf.mul(gf.mul(a, b), c), gf.mul(a, gf.mul(b, c)));
                assert_eq!(gf.mul(a, gf.add(b, c)), gf.add(gf.mul(a, b), gf.mul(a, c)));
            }
        }
    }

    #[test]
    fn exp_log_round_trip() {
        for q in [2usize, 4, 8, 16, 64, 256, 5, 7, 257] {
            let gf = f(q);
            assert_eq!(gf.exp_table().len(), q - 1);
            let mut seen = vec![false; q];
            for i in 0..q - 1 {
                let v = gf.exp_table()[i] as usize;
                assert!(v > 0 && v < q && !seen[v], "exp table not a bijection at q={q}");
                seen[v] = true;
                assert_eq!(gf.log_table()[v] as usize, i);
            }
        }
    }

    #[test]
    fn prime_field_negation() {
        let gf = f(5);
        // 2 + 3 ≡ 0 mod 5
        let two = gf.from_natural(2).unwrap();
        let three = gf.from_natural(3).unwrap();
        assert_eq!(gf.neg(two), three);
        assert_eq!(gf.neg(Symbol::ZERO), Symbol::ZERO);
    }

    #[test]
    fn f8_inverse_property_exhaustive() {
        let gf = f(8);
        for a in gf.symbols().skip(1) {
            assert_eq!(gf.mul(a, gf.inv(a).unwrap()), Symbol::ONE);
        }
        assert!(gf.inv(Symbol::ZERO).is_err());
    }

    #[test]
    fn rejects_unsupported_orders() {
        assert!(FieldSpec::new(0).is_err());
        assert!(FieldSpec::new(1).is_err());
        assert!(FieldSpec::new(6).is_err());
        assert!(FieldSpec::new(9).is_err());
        assert!(FieldSpec::new(512).is_err());
        assert!(FieldSpec::new(263).is_err());
    }
}
