use std::fmt;

/// Number of basis vectors of R(4,1).
pub const DIM: usize = 5;
/// Number of basis blades of the full algebra.
pub const BLADES: usize = 1 << DIM;

/// Squares of the generators `e1, e2, e3, e+, e-`.
pub const METRIC: [i8; DIM] = [1, 1, 1, 1, -1];

/// Characters used for the generators in blade names.
const GENERATOR_CHARS: [char; DIM] = ['1', '2', '3', 'p', 'm'];

/// A basis blade, stored as a bitmask over the generators
/// (bit 0 = `e1`, bit 1 = `e2`, bit 2 = `e3`, bit 3 = `e+`, bit 4 = `e-`).
///
/// The index set is implicitly ordered canonically `(1, 2, 3, +, -)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Blade(u8);

/// A basis blade together with a sign, the result of multiplying two blades.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SignedBlade {
    pub sign: i8,
    pub blade: Blade,
}

impl Blade {
    pub const SCALAR: Blade = Blade(0);
    pub const E1: Blade = Blade(0b00001);
    pub const E2: Blade = Blade(0b00010);
    pub const E3: Blade = Blade(0b00100);
    pub const EP: Blade = Blade(0b01000);
    pub const EM: Blade = Blade(0b10000);
    pub const PSEUDOSCALAR: Blade = Blade(0b11111);

    /// Panics if `bits` does not fit in five generators.
    pub const fn from_bits(bits: u8) -> Blade {
        assert!((bits as usize) < BLADES);
        Blade(bits)
    }

    pub const fn bits(self) -> u8 {
        self.0
    }

    pub const fn index(self) -> usize {
        self.0 as usize
    }

    pub const fn grade(self) -> u32 {
        self.0.count_ones()
    }

    /// Sign picked up under reversion, `(-1)^(k(k-1)/2)` for grade `k`.
    pub const fn reversion_sign(self) -> i8 {
        let k = self.grade();
        if (k * (k.wrapping_sub(1)) / 2) & 1 == 0 {
            1
        } else {
            -1
        }
    }

    /// Geometric product of two basis blades.
    pub const fn product(self, other: Blade) -> SignedBlade {
        let (sign, bits) = blade_product(self.0, other.0);
        SignedBlade {
            sign,
            blade: Blade(bits),
        }
    }

    /// Canonical name: `"s"` for the scalar, otherwise `"e"` followed by the
    /// generator characters `1,2,3,p,m` in canonical order.
    pub fn name(self) -> String {
        if self.0 == 0 {
            return "s".to_string();
        }
        let mut s = String::with_capacity(1 + DIM);
        s.push('e');
        for (bit, ch) in GENERATOR_CHARS.iter().enumerate() {
            if self.0 & (1 << bit) != 0 {
                s.push(*ch);
            }
        }
        s
    }

    /// Parses a canonical blade name. Indices must be strictly increasing in
    /// the order `1,2,3,p,m`; `+`/`-` are accepted as aliases of `p`/`m`.
    pub fn parse(name: &str) -> Option<Blade> {
        if name == "s" || name == "1" {
            return Some(Blade::SCALAR);
        }
        let rest = name.strip_prefix('e')?;
        if rest.is_empty() {
            return None;
        }
        let mut bits = 0u8;
        let mut last: Option<usize> = None;
        for ch in rest.chars() {
            let pos = match ch {
                '1' => 0,
                '2' => 1,
                '3' => 2,
                'p' | '+' => 3,
                'm' | '-' => 4,
                _ => return None,
            };
            if let Some(prev) = last {
                if pos <= prev {
                    return None;
                }
            }
            last = Some(pos);
            bits |= 1 << pos;
        }
        Some(Blade(bits))
    }

    /// All 32 blades sorted by grade, then lexicographically by index list.
    pub fn canonical_order() -> &'static [Blade; BLADES] {
        &CANONICAL_ORDER
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

const fn blade_product(a: u8, b: u8) -> (i8, u8) {
    // Count transpositions: pairs (i in a, j in b) with i > j.
    let mut swaps = 0u32;
    let mut x = a >> 1;
    while x != 0 {
        swaps += (x & b).count_ones();
        x >>= 1;
    }
    let mut sign: i8 = if swaps & 1 == 0 { 1 } else { -1 };
    let common = a & b;
    let mut bit = 0;
    while bit < DIM {
        if common & (1 << bit) != 0 {
            sign *= METRIC[bit];
        }
        bit += 1;
    }
    (sign, a ^ b)
}

const fn build_product_table() -> [[(i8, u8); BLADES]; BLADES] {
    let mut table = [[(0i8, 0u8); BLADES]; BLADES];
    let mut a = 0;
    while a < BLADES {
        let mut b = 0;
        while b < BLADES {
            table[a][b] = blade_product(a as u8, b as u8);
            b += 1;
        }
        a += 1;
    }
    table
}

/// `PRODUCT[a][b] = (sign, a ^ b)` for blades given by bitmask.
pub(crate) static PRODUCT: [[(i8, u8); BLADES]; BLADES] = build_product_table();

/// Lexicographic rank of a bitmask's index list, used to sort within a grade.
const fn lex_key(bits: u8) -> u32 {
    // Encode the ascending list of set bit positions in base 6 (position+1),
    // padded on the right so that prefixes sort first.
    let mut key = 0u32;
    let mut count = 0;
    let mut bit = 0;
    while bit < DIM {
        if bits & (1 << bit) != 0 {
            key = key * 6 + (bit as u32 + 1);
            count += 1;
        }
        bit += 1;
    }
    while count < DIM {
        key *= 6;
        count += 1;
    }
    key
}

const fn build_canonical_order() -> [Blade; BLADES] {
    let mut order = [Blade(0); BLADES];
    let mut i = 0;
    while i < BLADES {
        order[i] = Blade(i as u8);
        i += 1;
    }
    // insertion sort by (grade, lex_key)
    let mut i = 1;
    while i < BLADES {
        let mut j = i;
        while j > 0 {
            let a = order[j - 1].0;
            let b = order[j].0;
            let ka = (a.count_ones(), lex_key(a));
            let kb = (b.count_ones(), lex_key(b));
            if ka.0 > kb.0 || (ka.0 == kb.0 && ka.1 > kb.1) {
                order[j - 1] = Blade(b);
                order[j] = Blade(a);
                j -= 1;
            } else {
                break;
            }
        }
        i += 1;
    }
    order
}

static CANONICAL_ORDER: [Blade; BLADES] = build_canonical_order();
