//! Concrete extension systems: finite linear orders, finite sets and
//! finite cyclic p-groups, each with embeddings as extensions.

use super::{ExtensionSystem, Morphism, Object};
use crate::error::{Error, Result};

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > usize::MAX as u128 {
            return usize::MAX;
        }
    }
    acc as usize
}

/// `n! / (n-k)!`, saturating.
fn falling(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k)
        .try_fold(1usize, |acc, i| acc.checked_mul(n - i))
        .unwrap_or(usize::MAX)
}

/// The `j`-th strictly increasing map `[a] → [b]` in lexicographic order.
fn unrank_increasing(a: usize, b: usize, mut j: usize) -> Option<Vec<usize>> {
    if j >= binomial(b, a) {
        return None;
    }
    let mut out = Vec::with_capacity(a);
    let mut v = 0;
    for i in 0..a {
        loop {
            let count = binomial(b - v - 1, a - i - 1);
            if j < count {
                break;
            }
            j -= count;
            v += 1;
        }
        out.push(v);
        v += 1;
    }
    Some(out)
}

/// The `j`-th injection `a → b` in lexicographic order of value lists.
fn unrank_injection(a: usize, b: usize, mut j: usize) -> Option<Vec<usize>> {
    if j >= falling(b, a) {
        return None;
    }
    let mut free: Vec<usize> = (0..b).collect();
    let mut out = Vec::with_capacity(a);
    for i in 0..a {
        let block = falling(b - i - 1, a - i - 1);
        let pick = j / block;
        j %= block;
        out.push(free.remove(pick));
    }
    Some(out)
}

/// Finite linear orders `[n] = {0 < … < n−1}` and order embeddings.
#[derive(Debug, Clone, Copy, Default)]
pub struct LinOrders;

impl ExtensionSystem for LinOrders {
    fn name(&self) -> String {
        "lin_orders".into()
    }

    fn object(&self, index: usize) -> Option<Object> {
        Some(index)
    }

    fn describe(&self, a: Object) -> String {
        format!("[{a}]")
    }

    fn hom_count(&self, a: Object, b: Object) -> usize {
        binomial(b, a)
    }

    fn nth_hom(&self, a: Object, b: Object, j: usize) -> Option<Morphism> {
        unrank_increasing(a, b, j).map(|map| Morphism {
            source: a,
            target: b,
            map,
        })
    }

    fn is_extension(&self, f: &Morphism) -> bool {
        f.map.len() == f.source && f.map.windows(2).all(|w| w[0] < w[1]) && f.map.iter().all(|&x| x < f.target)
    }

    fn identity(&self, a: Object) -> Morphism {
        Morphism::index_identity(a, a)
    }

    /// Inserts the points of `B` missing from `e` into `C`, each directly
    /// after the image of its nearest predecessor in `A`.
    fn costabilize(&self, e: &Morphism, f: &Morphism) -> Result<(Morphism, Morphism)> {
        let (b, c) = (e.target, f.target);
        // slot s holds the new points placed after C-point s−1 (slot 0 is the front)
        let mut slots: Vec<Vec<usize>> = vec![Vec::new(); c + 1];
        let mut anchor = 0;
        let mut x = 0;
        for y in 0..b {
            if x < e.source && e.map[x] == y {
                anchor = f.map[x] + 1;
                x += 1;
            } else {
                slots[anchor].push(y);
            }
        }
        let mut c_pos = vec![0; c];
        let mut new_pos = vec![usize::MAX; b];
        let mut next = 0;
        for s in 0..=c {
            for &y in &slots[s] {
                new_pos[y] = next;
                next += 1;
            }
            if s < c {
                c_pos[s] = next;
                next += 1;
            }
        }
        let p = next;
        let e_prime = Morphism {
            source: c,
            target: p,
            map: c_pos.clone(),
        };
        let mut g = new_pos;
        for (x, &y) in e.map.iter().enumerate() {
            g[y] = c_pos[f.map[x]];
        }
        Ok((
            e_prime,
            Morphism {
                source: b,
                target: p,
                map: g,
            },
        ))
    }

    /// `[a+b]` with `A` in the middle and `B` split around it, the smaller
    /// half in front.
    fn joint_embed(&self, a: Object, b: Object) -> Result<(Morphism, Morphism)> {
        let front = b / 2;
        let left = Morphism {
            source: a,
            target: a + b,
            map: (front..front + a).collect(),
        };
        let right = Morphism {
            source: b,
            target: a + b,
            map: (0..b).map(|j| if j < front { j } else { j + a }).collect(),
        };
        Ok((left, right))
    }

    /// Greedy: each new point takes the least value above its predecessor
    /// that still leaves room below the next fixed image.
    fn lift(&self, e: &Morphism, h: &Morphism) -> Option<Morphism> {
        let mut g = vec![0; e.target];
        let (mut low, mut x) = (0, 0);
        for (y, slot) in g.iter_mut().enumerate() {
            let value = if x < e.source && e.map[x] == y {
                x += 1;
                h.map[x - 1]
            } else {
                let high = if x < e.source { h.map[x] } else { h.target };
                if low >= high {
                    return None;
                }
                low
            };
            if value < low {
                return None;
            }
            *slot = value;
            low = value + 1;
        }
        Some(Morphism {
            source: e.target,
            target: h.target,
            map: g,
        })
    }
}

/// Finite sets `{0, …, n−1}` and injections.
#[derive(Debug, Clone, Copy, Default)]
pub struct FinsetInj;

impl ExtensionSystem for FinsetInj {
    fn name(&self) -> String {
        "finset_inj".into()
    }

    fn object(&self, index: usize) -> Option<Object> {
        Some(index)
    }

    fn describe(&self, a: Object) -> String {
        format!("{a}")
    }

    fn hom_count(&self, a: Object, b: Object) -> usize {
        falling(b, a)
    }

    fn nth_hom(&self, a: Object, b: Object, j: usize) -> Option<Morphism> {
        unrank_injection(a, b, j).map(|map| Morphism {
            source: a,
            target: b,
            map,
        })
    }

    fn is_extension(&self, f: &Morphism) -> bool {
        let mut seen = vec![false; f.target];
        f.map.len() == f.source
            && f.map
                .iter()
                .all(|&y| y < f.target && !std::mem::replace(&mut seen[y], true))
    }

    fn identity(&self, a: Object) -> Morphism {
        Morphism::index_identity(a, a)
    }

    /// The pushout `C ⊔ (B ∖ e(A))`.
    fn costabilize(&self, e: &Morphism, f: &Morphism) -> Result<(Morphism, Morphism)> {
        let (b, c) = (e.target, f.target);
        let p = c + b - e.source;
        let e_prime = Morphism::index_identity(c, p);
        let mut g = vec![usize::MAX; b];
        for (x, &y) in e.map.iter().enumerate() {
            g[y] = f.map[x];
        }
        for (slot, next) in g.iter_mut().filter(|s| **s == usize::MAX).zip(c..) {
            *slot = next;
        }
        Ok((
            e_prime,
            Morphism {
                source: b,
                target: p,
                map: g,
            },
        ))
    }

    fn joint_embed(&self, a: Object, b: Object) -> Result<(Morphism, Morphism)> {
        Ok((
            Morphism::index_identity(a, a + b),
            Morphism {
                source: b,
                target: a + b,
                map: (a..a + b).collect(),
            },
        ))
    }

    fn lift(&self, e: &Morphism, h: &Morphism) -> Option<Morphism> {
        let mut used = vec![false; h.target];
        let mut g = vec![usize::MAX; e.target];
        for (x, &y) in e.map.iter().enumerate() {
            g[y] = h.map[x];
            used[h.map[x]] = true;
        }
        let mut free = (0..h.target).filter(|&z| !used[z]);
        for slot in g.iter_mut().filter(|s| **s == usize::MAX) {
            *slot = free.next()?;
        }
        Some(Morphism {
            source: e.target,
            target: h.target,
            map: g,
        })
    }
}

/// Largest cyclic group carrier the system will materialize.
pub const CYCLIC_CARRIER_CAP: usize = 1 << 14;

/// Cyclic groups `C_{p^l}` (object `l`) and injective homomorphisms, each
/// determined by the image of `1`.
#[derive(Debug, Clone, Copy)]
pub struct CyclicPGroups {
    p: usize,
}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl CyclicPGroups {
    pub fn new(p: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::UnknownSystem(format!("cyclic_p_groups({p}): {p} is not prime")));
        }
        Ok(Self { p })
    }

    fn order(&self, l: Object) -> Option<usize> {
        self.p.checked_pow(l as u32).filter(|&n| n <= CYCLIC_CARRIER_CAP)
    }

    /// Units mod `p^a` in increasing order; `{1}` when `a = 0`.
    fn units(&self, a: Object) -> impl Iterator<Item = usize> + '_ {
        let n = self.order(a).unwrap_or(1);
        (1..n.max(2)).filter(move |u| n == 1 || u % self.p != 0)
    }

    fn hom_from_generator(&self, a: Object, b: Object, image: usize) -> Morphism {
        let (na, nb) = (self.order(a).unwrap_or(1), self.order(b).unwrap_or(1));
        Morphism {
            source: a,
            target: b,
            map: (0..na).map(|x| x * image % nb).collect(),
        }
    }
}

impl ExtensionSystem for CyclicPGroups {
    fn name(&self) -> String {
        format!("cyclic_p_groups({})", self.p)
    }

    fn object(&self, index: usize) -> Option<Object> {
        self.order(index).map(|_| index)
    }

    fn object_count(&self) -> Option<usize> {
        (0..).position(|l| self.order(l).is_none())
    }

    fn describe(&self, a: Object) -> String {
        format!("C_{}", self.p.pow(a as u32))
    }

    fn hom_count(&self, a: Object, b: Object) -> usize {
        if a > b || self.order(b).is_none() {
            0
        } else {
            self.units(a).count()
        }
    }

    fn nth_hom(&self, a: Object, b: Object, j: usize) -> Option<Morphism> {
        if a > b || self.order(b).is_none() {
            return None;
        }
        let u = self.units(a).nth(j)?;
        let scale = self.p.pow((b - a) as u32);
        Some(self.hom_from_generator(a, b, u * scale % self.order(b)?.max(1)))
    }

    fn is_extension(&self, f: &Morphism) -> bool {
        let (Some(na), Some(nb)) = (self.order(f.source), self.order(f.target)) else {
            return false;
        };
        if f.map.len() != na || f.map.iter().any(|&y| y >= nb) {
            return false;
        }
        let image = if na > 1 { f.map[1] } else { 0 };
        let hom = (0..na).all(|x| f.map[x] == x * image % nb);
        let mut seen = vec![false; nb];
        hom && f.map.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    fn identity(&self, a: Object) -> Morphism {
        self.hom_from_generator(a, a, 1)
    }

    /// `C_{p^max(b,c)}`: `e'` is the standard inclusion and `g` is scaled by
    /// a unit so the square commutes.
    fn costabilize(&self, e: &Morphism, f: &Morphism) -> Result<(Morphism, Morphism)> {
        let (a, b, c) = (e.source, e.target, f.target);
        let d = b.max(c);
        let p = self.p;
        let na = self.order(a).unwrap_or(1);
        let nd = self.order(d).ok_or(Error::SizeTooLarge {
            what: "cyclic group carrier",
            size: p.saturating_pow(d as u32),
            cap: CYCLIC_CARRIER_CAP,
        })?;
        let e_prime = self.hom_from_generator(c, d, p.pow((d - c) as u32) % nd);
        // e(1) = v·p^(b−a), f(1) = u·p^(c−a); need w with v·w ≡ u mod p^a
        let unit_of = |m: &Morphism, shift: usize| if na > 1 { m.map[1] / p.pow(shift as u32) % na } else { 1 };
        let v = unit_of(e, b - a);
        let u = unit_of(f, c - a);
        let w = if na > 1 {
            (1..na)
                .find(|w| v * w % na == u)
                .ok_or_else(|| Error::OracleViolation("embedding generator is not a unit multiple".into()))?
        } else {
            1
        };
        let g = self.hom_from_generator(b, d, w * p.pow((d - b) as u32) % nd);
        Ok((e_prime, g))
    }

    fn joint_embed(&self, a: Object, b: Object) -> Result<(Morphism, Morphism)> {
        let w = a.max(b);
        let nw = self.order(w).ok_or(Error::SizeTooLarge {
            what: "cyclic group carrier",
            size: self.p.saturating_pow(w as u32),
            cap: CYCLIC_CARRIER_CAP,
        })?;
        Ok((
            self.hom_from_generator(a, w, self.p.pow((w - a) as u32) % nw),
            self.hom_from_generator(b, w, self.p.pow((w - b) as u32) % nw),
        ))
    }
}

/// Looks up a builtin system: `lin_orders`, `finset_inj` or
/// `cyclic_p_groups(p)`.
pub fn builtin_system(name: &str) -> Result<Box<dyn ExtensionSystem>> {
    match name.trim() {
        "lin_orders" => Ok(Box::new(LinOrders)),
        "finset_inj" => Ok(Box::new(FinsetInj)),
        other => {
            let p = other
                .strip_prefix("cyclic_p_groups(")
                .and_then(|s| s.strip_suffix(')'))
                .and_then(|s| s.trim().parse::<usize>().ok())
                .ok_or_else(|| Error::UnknownSystem(other.to_string()))?;
            Ok(Box::new(CyclicPGroups::new(p)?))
        }
    }
}
