use std::collections::{HashMap, HashSet};

use super::{Discriminant, QuadError, QuadForm};
use crate::arith::{is_prime, kronecker};

/// Reduced primitive forms of one discriminant; the form class group `Pic(O)`.
#[derive(Debug, Clone)]
pub struct FormClassGroup {
    disc: Discriminant,
    forms: Vec<QuadForm>,
}

/// Enumerates the reduced primitive forms of discriminant `d` in canonical order:
/// by `a`, then `|b|`, with `b > 0` before `-b`.
pub fn reduced_forms(disc: &Discriminant) -> Vec<QuadForm> {
    let d = disc.value();
    let n = disc.abs() as i64;
    let mut forms = Vec::new();
    let mut a = 1i64;
    while 3 * a * a <= n {
        let mut b_abs = (d & 1).abs();
        while b_abs <= a {
            let num = b_abs * b_abs - d;
            if num % (4 * a) == 0 {
                let c = num / (4 * a);
                if c >= a {
                    let pos = QuadForm::new(a, b_abs, c);
                    if pos.is_primitive() {
                        forms.push(pos);
                        // (a,-b,c) is a distinct reduced form unless b = 0, |b| = a or a = c
                        if b_abs != 0 && b_abs != a && a != c {
                            forms.push(QuadForm::new(a, -b_abs, c));
                        }
                    }
                }
            }
            b_abs += 2;
        }
        a += 1;
    }
    forms
}

/// Number of reduced primitive forms of discriminant `d`, i.e. `|Pic(O)|`.
pub fn class_number(disc: &Discriminant) -> u64 {
    reduced_forms(disc).len() as u64
}

impl FormClassGroup {
    pub fn new(disc: Discriminant) -> Self {
        let forms = reduced_forms(&disc);
        FormClassGroup { disc, forms }
    }

    pub fn discriminant(&self) -> Discriminant {
        self.disc
    }

    pub fn forms(&self) -> &[QuadForm] {
        &self.forms
    }

    pub fn class_number(&self) -> u64 {
        self.forms.len() as u64
    }

    pub fn principal(&self) -> QuadForm {
        self.forms[0]
    }

    pub fn index_of(&self, f: &QuadForm) -> Option<usize> {
        self.forms.iter().position(|g| g == f)
    }

    /// `table[i][j]` is the index of `forms[i] * forms[j]`.
    pub fn composition_table(&self) -> Vec<Vec<usize>> {
        let index: HashMap<QuadForm, usize> = self
            .forms
            .iter()
            .enumerate()
            .map(|(i, f)| (*f, i))
            .collect();
        self.forms
            .iter()
            .map(|f| {
                self.forms
                    .iter()
                    .map(|g| index[&f.compose(g).expect("same discriminant")])
                    .collect()
            })
            .collect()
    }

    /// Size of the subgroup generated by all reduced forms, built by composition alone.
    /// Errors if some product falls outside the reduced-form list.
    pub fn closure_size(&self) -> Result<usize, QuadError> {
        let members: HashSet<QuadForm> = self.forms.iter().copied().collect();
        let principal = QuadForm::principal(self.disc.value());
        let mut seen = HashSet::from([principal]);
        let mut frontier = vec![principal];
        while let Some(x) = frontier.pop() {
            for g in &self.forms {
                let y = x.compose(g)?;
                if !members.contains(&y) {
                    return Err(QuadError::InvariantViolated(format!(
                        "{x} * {g} = {y} is not a reduced primitive form of {}",
                        self.disc
                    )));
                }
                if seen.insert(y) {
                    frontier.push(y);
                }
            }
        }
        Ok(seen.len())
    }
}

fn check_prime(p: u64) -> Result<(), QuadError> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(QuadError::NotPrime(p))
    }
}

/// A reduced primitive form of discriminant `d` representing the prime `p`,
/// i.e. the class of a prime ideal above `p`.
pub fn prime_form(disc: &Discriminant, p: u64) -> Result<QuadForm, QuadError> {
    check_prime(p)?;
    if !disc.is_maximal_at(p) {
        return Err(QuadError::ConductorDivisible { d: disc.value(), p });
    }
    let d = disc.value();
    if kronecker(d, p as i64).expect("p != 0") == -1 {
        return Err(QuadError::InertPrime { d, p });
    }
    let p = p as i64;
    let b = (0..2 * p)
        .filter(|b| (b - d).rem_euclid(2) == 0)
        .find(|b| (b * b - d).rem_euclid(4 * p) == 0)
        .expect("non-inert prime has a square root of D mod 4p");
    let form = QuadForm::new(p, b, (b * b - d) / (4 * p));
    debug_assert!(form.is_primitive());
    Ok(form.reduce())
}

/// Order of the class of a prime above `p` in `Pic(O)`.
pub fn class_order_of_prime(disc: &Discriminant, p: u64) -> Result<u64, QuadError> {
    Ok(prime_form(disc, p)?.order())
}

/// Class number of `O[1/p]`: `h` for inert `p`, else `h / ord([p])`.
pub fn h_inverted(disc: &Discriminant, p: u64) -> Result<u64, QuadError> {
    check_prime(p)?;
    if !disc.is_maximal_at(p) {
        return Err(QuadError::ConductorDivisible { d: disc.value(), p });
    }
    let h = class_number(disc);
    if kronecker(disc.value(), p as i64).expect("p != 0") == -1 {
        return Ok(h);
    }
    let ord = class_order_of_prime(disc, p)?;
    debug_assert_eq!(h % ord, 0);
    Ok(h / ord)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::discriminants_up_to;

    fn disc(d: i64) -> Discriminant {
        Discriminant::new(d).unwrap()
    }

    // Every reduced form found by scanning all (a, b, c) in a box, then dropping imprimitive ones.
    fn brute_reduced(d: i64) -> Vec<QuadForm> {
        let n = -d;
        let mut out = Vec::new();
        for a in 1..=n {
            for b in -a..=a {
                let num = b * b - d;
                if num % (4 * a) != 0 {
                    continue;
                }
                let f = QuadForm::new(a, b, num / (4 * a));
                if f.is_reduced() && f.is_primitive() {
                    out.push(f);
                }
            }
        }
        out
    }

    #[test]
    fn class_number_examples() {
        assert_eq!(reduced_forms(&disc(-3)), vec![QuadForm::new(1, 1, 1)]);
        assert_eq!(
            reduced_forms(&disc(-23)),
            vec![
                QuadForm::new(1, 1, 6),
                QuadForm::new(2, 1, 3),
                QuadForm::new(2, -1, 3)
            ]
        );
        assert_eq!(class_number(&disc(-47)), 5);
        assert_eq!(class_number(&disc(-4)), 1);
        // (2,2,2) is imprimitive
        assert_eq!(class_number(&disc(-12)), 1);
    }

    #[test]
    fn scan_matches_exhaustive_box() {
        for d in discriminants_up_to(400) {
            let mut fast = reduced_forms(&disc(d));
            let mut slow = brute_reduced(d);
            fast.sort_by_key(|f| (f.a, f.b));
            slow.sort_by_key(|f| (f.a, f.b));
            assert_eq!(fast, slow, "D={d}");
        }
    }

    #[test]
    fn group_laws_exhaustive() {
        for d in discriminants_up_to(2000) {
            let g = FormClassGroup::new(disc(d));
            let e = g.principal();
            assert!(e.is_principal());
            let table = g.composition_table();
            let h = g.forms().len();
            for i in 0..h {
                let x = g.forms()[i];
                assert_eq!(x.compose(&e).unwrap(), x);
                assert!(x
                    .compose(&QuadForm::new(x.a, -x.b, x.c))
                    .unwrap()
                    .is_principal());
                for j in 0..h {
                    assert_eq!(table[i][j], table[j][i], "D={d} commutativity");
                    for k in 0..h {
                        assert_eq!(table[table[i][j]][k], table[i][table[j][k]], "D={d} assoc");
                    }
                }
            }
        }
    }

    #[test]
    fn closure_has_size_h() {
        for d in discriminants_up_to(3000) {
            let g = FormClassGroup::new(disc(d));
            assert_eq!(g.closure_size().unwrap() as u64, g.class_number(), "D={d}");
        }
    }

    #[test]
    fn prime_class_orders() {
        assert_eq!(class_order_of_prime(&disc(-23), 2), Ok(3));
        assert_eq!(class_order_of_prime(&disc(-4), 2), Ok(1));
        assert_eq!(class_order_of_prime(&disc(-20), 3), Ok(2));
        assert_eq!(
            class_order_of_prime(&disc(-23), 5),
            Err(QuadError::InertPrime { d: -23, p: 5 })
        );
        assert_eq!(
            class_order_of_prime(&disc(-12), 2),
            Err(QuadError::ConductorDivisible { d: -12, p: 2 })
        );
        assert_eq!(
            class_order_of_prime(&disc(-23), 4),
            Err(QuadError::NotPrime(4))
        );
    }

    #[test]
    fn inverted_class_numbers() {
        assert_eq!(h_inverted(&disc(-23), 2), Ok(1));
        assert_eq!(h_inverted(&disc(-23), 5), Ok(3));
        assert_eq!(h_inverted(&disc(-20), 3), Ok(1));
        for d in discriminants_up_to(1500) {
            let dd = disc(d);
            let h = class_number(&dd);
            for p in [2u64, 3, 5, 7] {
                if !dd.is_maximal_at(p) {
                    continue;
                }
                let hi = h_inverted(&dd, p).unwrap();
                match class_order_of_prime(&dd, p) {
                    Ok(ord) => assert_eq!(hi * ord, h),
                    Err(QuadError::InertPrime { .. }) => assert_eq!(hi, h),
                    Err(e) => panic!("{e}"),
                }
            }
        }
    }
}
