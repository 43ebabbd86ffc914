use crate::poly::{rat, Assignment, Poly, Rat};

use super::{LcaError, LcaPresentation};

/// Families with a built-in presentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Vir,
    Sv,
    Dsv,
    TsvAb,
    TsvC,
}

impl Family {
    pub fn parse(name: &str) -> Result<Family, LcaError> {
        match name.to_ascii_lowercase().replace([' ', '_'], "").as_str() {
            "vir" | "virasoro" => Ok(Family::Vir),
            "sv" => Ok(Family::Sv),
            "dsv" => Ok(Family::Dsv),
            "tsv" | "tsvab" | "tsv(a,b)" => Ok(Family::TsvAb),
            "tsvc" | "tsv(c)" => Ok(Family::TsvC),
            _ => Err(LcaError::UnknownFamily(name.into())),
        }
    }
}

fn d() -> Poly {
    Poly::d()
}

fn l() -> Poly {
    Poly::lambda()
}

fn q(r: Rat) -> Poly {
    Poly::constant(r)
}

/// `[L λ L] = (∂+2λ)L`
pub fn vir() -> LcaPresentation {
    let mut a = LcaPresentation::new("Vir", &["L"], &[]);
    a.set_skew(0, 0, 0, &d() + &l().scale(&rat(2, 1)));
    a
}

/// TSV(a,b) with the given values (constants or symbols) for `a` and `b`.
pub fn tsv_ab_at(a: &Poly, b: &Poly) -> LcaPresentation {
    let mut params: Vec<String> = a.params().into_iter().collect();
    for p in b.params() {
        if !params.contains(&p) {
            params.push(p);
        }
    }
    params.sort();
    let names: Vec<&str> = params.iter().map(String::as_str).collect();
    let mut t = LcaPresentation::new("TSV", &["L", "Y", "M"], &names);
    let two = rat(2, 1);
    t.set_skew(0, 0, 0, &d() + &l().scale(&two));
    t.set_skew(0, 1, 1, &(&d() + &(a * &l())) + b);
    let am1 = a - &Poly::one();
    t.set_skew(0, 2, 2, &(&d() + &(&am1 * &l()).scale(&two)) + &b.scale(&two));
    t.set_skew(1, 1, 2, &d() + &l().scale(&two));
    t
}

/// TSV(a,b) with symbolic `a`, `b`.
pub fn tsv_ab() -> LcaPresentation {
    tsv_ab_at(&Poly::param("a"), &Poly::param("b"))
}

/// TSV(c) with the given value for `c`.
pub fn tsv_c_at(c: &Poly) -> LcaPresentation {
    let params: Vec<String> = c.params().into_iter().collect();
    let names: Vec<&str> = params.iter().map(String::as_str).collect();
    let mut t = LcaPresentation::new("TSVc", &["L", "Y", "M"], &names);
    let two = rat(2, 1);
    let c2 = c.scale(&two);
    t.set_skew(0, 0, 0, &d() + &l().scale(&two));
    t.set_skew(0, 1, 1, &(&d() + &l().scale(&rat(3, 2))) + c);
    t.set_skew(0, 2, 2, &d() + &c2);
    t.set_skew(1, 1, 2, &(&d() + &l().scale(&two)) * &(&(-&d()) - &c2));
    t
}

pub fn tsv_c() -> LcaPresentation {
    tsv_c_at(&Poly::param("c"))
}

/// Schrödinger–Virasoro: TSV(3/2, 0).
pub fn sv() -> LcaPresentation {
    let mut t = tsv_ab_at(&q(rat(3, 2)), &Poly::zero());
    t.name = "SV".into();
    t
}

/// Schrödinger–Virasoro type: TSV(0, 0).
pub fn dsv() -> LcaPresentation {
    let mut t = tsv_ab_at(&Poly::zero(), &Poly::zero());
    t.name = "DSV".into();
    t
}

/// Current algebra of a Lie algebra: `[a λ b] = [a, b]`.
///
/// `structure` lists `(i, j, k, c)` meaning `[e_i, e_j]` has `c` in `e_k`;
/// only `i < j` need be given.
pub fn cur(gens: &[&str], structure: &[(usize, usize, usize, Rat)]) -> LcaPresentation {
    let mut t = LcaPresentation::new("Cur", gens, &[]);
    for (i, j, k, c) in structure {
        let cur = t.entry(*i, *j, *k) + &q(c.clone());
        t.set_skew(*i, *j, *k, cur);
    }
    t
}

/// A family with some parameters fixed; unassigned ones stay symbolic.
pub fn builtin(family: Family, at: &Assignment) -> Result<LcaPresentation, LcaError> {
    let value = |name: &str| at.get(name).map(|v| q(v.clone())).unwrap_or_else(|| Poly::param(name));
    let allowed: &[&str] = match family {
        Family::TsvAb => &["a", "b"],
        Family::TsvC => &["c"],
        _ => &[],
    };
    if let Some(p) = at.keys().find(|p| !allowed.contains(&p.as_str())) {
        return Err(LcaError::UnknownParam(p.clone()));
    }
    Ok(match family {
        Family::Vir => vir(),
        Family::Sv => sv(),
        Family::Dsv => dsv(),
        Family::TsvAb => tsv_ab_at(&value("a"), &value("b")),
        Family::TsvC => tsv_c_at(&value("c")),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lca::{check_axioms, Element};

    fn at(pairs: &[(&str, Rat)]) -> Assignment {
        pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
    }

    #[test]
    fn special_members_of_the_family() {
        let sv_pt = builtin(Family::TsvAb, &at(&[("a", rat(3, 2)), ("b", rat(0, 1))])).unwrap();
        assert!(sv_pt.same_table(&sv()));
        let dsv_pt = builtin(Family::TsvAb, &at(&[("a", rat(0, 1)), ("b", rat(0, 1))])).unwrap();
        assert!(dsv_pt.same_table(&dsv()));
        assert!(tsv_ab().specialize(&at(&[("a", rat(0, 1)), ("b", rat(0, 1))])).unwrap().same_table(&dsv()));
    }

    #[test]
    fn virasoro_brackets() {
        let v = vir();
        assert_eq!(v.entry(0, 0, 0).to_string(), "d + 2*l");
        let l = Element::gen(1, 0);
        let b = v.bracket(&l.d(), &l).unwrap();
        assert_eq!(b.coords[0].to_string(), "-d*l - 2*l^2");
    }

    #[test]
    fn tsv_l_m_bracket() {
        let t = tsv_ab();
        let b = t.bracket(&Element::gen(3, 0), &Element::gen(3, 2)).unwrap();
        assert_eq!(b.coords[2].to_string(), "d + 2*a*l - 2*l + 2*b");
    }

    #[test]
    fn builtins_satisfy_the_axioms() {
        for a in [vir(), sv(), dsv(), tsv_ab(), tsv_c()] {
            let r = check_axioms(&a);
            assert!(r.passed, "{r}");
        }
    }

    #[test]
    fn current_algebra_of_sl2() {
        // [e,f]=h, [h,e]=2e, [h,f]=-2f with gens e,f,h
        let c = cur(&["e", "f", "h"], &[(0, 1, 2, rat(1, 1)), (2, 0, 0, rat(2, 1)), (2, 1, 1, rat(-2, 1))]);
        assert!(check_axioms(&c).passed);
    }

    #[test]
    fn unknown_family() {
        assert!(matches!(Family::parse("W(2,2)"), Err(LcaError::UnknownFamily(_))));
    }
}
