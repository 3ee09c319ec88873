//! The Hochschild side: structure classes `σ_{g,h}` of the cup product on
//! `⊕_g Jac(f^g)·ξ_g`, computed directly from difference derivatives.

pub mod clifford;
mod closed_form;
pub mod forms;

pub use closed_form::closed_form_sigma;

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{ProductTable, Side};
use crate::error::Result;
use crate::milnor::{AlgebraClass, SectorAlgebra, Sectors};
use crate::scalar::{CycNum, Rational};
use crate::symmetry::{Group, GroupElement};
use clifford::{upsilon, wedge, ThetaWord};
use forms::{
    boundary_form, restrict_three_point, shift_boundary_form, three_point_form, TensorTerm,
};

/// `σ_{g,h}` with the half-integer `d_{g,h}` it was gated on.
#[derive(Debug, Clone)]
pub struct SigmaResult {
    pub g: GroupElement,
    pub h: GroupElement,
    pub d_gh: Rational,
    /// `None` when `d_{g,h}` is not a non-negative integer.
    pub value: Option<AlgebraClass>,
}

/// Element of `Jac(f^{gh}) ⊗ C[θ] ⊗ C[θ]`, keyed by the two words.
type Tensor = BTreeMap<(ThetaWord, ThetaWord), AlgebraClass>;

pub struct Hochschild {
    sectors: Arc<Sectors>,
    three_point: Vec<TensorTerm>,
}

impl Hochschild {
    pub fn new(sectors: &Arc<Sectors>) -> Result<Self> {
        Ok(Hochschild {
            sectors: sectors.clone(),
            three_point: three_point_form(sectors.poly())?,
        })
    }

    pub fn three_point(&self) -> &[TensorTerm] {
        &self.three_point
    }

    pub fn sigma(&self, g: &GroupElement, h: &GroupElement) -> Result<SigmaResult> {
        let twice = g.codim() as i64 + h.codim() as i64 - g.mul(h).codim() as i64;
        let d_gh = Rational::new(twice.into(), 2.into());
        let mut result = SigmaResult {
            g: g.clone(),
            h: h.clone(),
            d_gh,
            value: None,
        };
        if twice < 0 || twice % 2 != 0 {
            return Ok(result);
        }
        let d = (twice / 2) as usize;
        let gh = g.mul(h);
        let target = self.sectors.of(&gh)?;

        let mut power: Tensor = BTreeMap::new();
        power.insert((ThetaWord::EMPTY, ThetaWord::EMPTY), target.one());
        if d > 0 {
            let s = self.summands(g, h, &target)?;
            for _ in 0..d {
                power = tensor_mul(&target, &power, &s);
            }
        }

        let q1 = ThetaWord::from_indices(&g.moved());
        let q2 = ThetaWord::from_indices(&h.moved());
        let want = ThetaWord::from_indices(&gh.moved());
        let mut total = target.zero();
        for ((p1, p2), a) in &power {
            if let Some((sign, word)) = upsilon(*p1, *p2, q1, q2) {
                if word == want {
                    total = total.add(&a.scale(&CycNum::from_int(target.field(), sign as i64)))?;
                }
            }
        }
        let factorial: i64 = (1..=d as i64).product();
        let inv = CycNum::from_rational(target.field(), &Rational::new(1.into(), factorial.into()));
        result.value = Some(total.scale(&inv));
        Ok(result)
    }

    /// `⌊H_f(x,g(x),x)⌋ + ⌊H_{f,g}(x)⌋⊗1 + 1⊗⌊H_{f,h}(g(x))⌋` in `Jac(f^{gh})`.
    fn summands(
        &self,
        g: &GroupElement,
        h: &GroupElement,
        target: &SectorAlgebra,
    ) -> Result<Tensor> {
        let mut s: Tensor = BTreeMap::new();
        let mut push = |key: (ThetaWord, ThetaWord), class: AlgebraClass| {
            let merged = match s.remove(&key) {
                Some(old) => old.add(&class).expect("same sector"),
                None => class,
            };
            if !merged.is_zero() {
                s.insert(key, merged);
            }
        };
        for (i, j, p) in restrict_three_point(&self.three_point, g)? {
            let key = (ThetaWord::from_indices(&[i]), ThetaWord::from_indices(&[j]));
            push(key, target.normal_form(&p));
        }
        let f = self.sectors.poly();
        for (j, i, p) in boundary_form(f, g)? {
            push(
                (ThetaWord::from_indices(&[j, i]), ThetaWord::EMPTY),
                target.normal_form(&p),
            );
        }
        let shifted = shift_boundary_form(&boundary_form(f, h)?, g)?;
        for (j, i, p) in shifted {
            push(
                (ThetaWord::EMPTY, ThetaWord::from_indices(&[j, i])),
                target.normal_form(&p),
            );
        }
        Ok(s)
    }

    pub fn build_table(&self, group: &Group, parallel: bool) -> Result<ProductTable> {
        ProductTable::build(Side::Hochschild, group, &self.sectors, parallel, |g, h| {
            Ok(self.sigma(g, h)?.value)
        })
    }
}

/// `(a⊗p1⊗p2)(b⊗q1⊗q2) = (-1)^{|p2||q1|} ab ⊗ p1q1 ⊗ p2q2`.
fn tensor_mul(sector: &SectorAlgebra, x: &Tensor, y: &Tensor) -> Tensor {
    let mut out: Tensor = BTreeMap::new();
    let field = sector.field();
    for ((p1, p2), a) in x {
        for ((q1, q2), b) in y {
            let Some((s1, w1)) = wedge(*p1, *q1) else {
                continue;
            };
            let Some((s2, w2)) = wedge(*p2, *q2) else {
                continue;
            };
            let koszul = if (p2.len() * q1.len()) % 2 == 0 {
                1
            } else {
                -1
            };
            let sign = s1 * s2 * koszul;
            let mut c = sector.mul(a, b);
            if sign < 0 {
                c = c.scale(&CycNum::from_int(field, -1));
            }
            let merged = match out.remove(&(w1, w2)) {
                Some(old) => old.add(&c).expect("same sector"),
                None => c,
            };
            if !merged.is_zero() {
                out.insert((w1, w2), merged);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invpoly::InvertiblePolynomial;
    use crate::scalar::{rat, root_of_unity, CycField};
    use crate::symmetry::maximal_group;

    fn el(alphas: &[(i64, i64)]) -> GroupElement {
        GroupElement::new(alphas.iter().map(|&(p, q)| rat(p, q)).collect())
    }

    fn setup(text: &str) -> (Arc<Sectors>, Group) {
        let f = InvertiblePolynomial::parse(text).unwrap();
        let g = maximal_group(&f).unwrap();
        let field = CycField::get(4 * g.exponent());
        (Arc::new(Sectors::new(&f, &field)), g)
    }

    #[test]
    fn fermat_cube_sigma() {
        let (s, _) = setup("x1^3");
        let hh = Hochschild::new(&s).unwrap();
        let g = el(&[(1, 3)]);
        let r = hh.sigma(&g, &g.inverse()).unwrap();
        assert_eq!(r.d_gh, rat(1, 1));
        let e = root_of_unity(&rat(1, 3), s.field()).unwrap();
        let c = (&e - &CycNum::one(s.field())).inv().unwrap().scale_int(3);
        assert_eq!(
            r.value.unwrap(),
            s.identity().unwrap().basis_class(1).scale(&c)
        );
        let r = hh.sigma(&g, &g).unwrap();
        assert_eq!(r.d_gh, rat(1, 2));
        assert!(r.value.is_none());
    }

    #[test]
    fn chain_two_two_sigma() {
        let (s, _) = setup("x1^2*x2 + x2^2");
        let hh = Hochschild::new(&s).unwrap();
        let g = el(&[(1, 2), (0, 1)]);
        let v = hh.sigma(&g, &g).unwrap().value.unwrap();
        // -[x2] = (1/2)[x1^2]
        let half = CycNum::from_rational(s.field(), &rat(1, 2));
        assert_eq!(v, s.identity().unwrap().basis_class(2).scale(&half));
    }

    #[test]
    fn unit_entries() {
        let (s, group) = setup("x1^2*x2 + x2^2*x1");
        let hh = Hochschild::new(&s).unwrap();
        let id = GroupElement::identity(2);
        for g in group.elements() {
            assert_eq!(
                hh.sigma(&id, g).unwrap().value.unwrap(),
                s.of(g).unwrap().one()
            );
            assert_eq!(
                hh.sigma(g, &id).unwrap().value.unwrap(),
                s.of(g).unwrap().one()
            );
        }
    }

    #[test]
    fn closed_forms_agree_on_atoms() {
        for text in [
            "x1^3",
            "x1^4",
            "x1^2*x2 + x2^2",
            "x1^3*x2 + x2^2",
            "x1^2*x2 + x2^2*x1",
            "x1^3*x2 + x2^2*x1",
        ] {
            let (s, group) = setup(text);
            let hh = Hochschild::new(&s).unwrap();
            for g in group.elements().iter().filter(|g| !g.is_identity()) {
                let direct = hh.sigma(g, &g.inverse()).unwrap().value.unwrap();
                assert_eq!(
                    direct,
                    closed_form_sigma(&s, g).unwrap(),
                    "{} at {}",
                    text,
                    g
                );
            }
        }
    }

    #[test]
    fn axioms_hold_on_small_examples() {
        for text in ["x1^3", "x1^2*x2 + x2^2", "x1^2*x2 + x2^2*x1", "x1^3 + x2^3"] {
            let (s, group) = setup(text);
            let table = Hochschild::new(&s)
                .unwrap()
                .build_table(&group, false)
                .unwrap();
            table.check_unit().unwrap();
            table.check_twisted_commutativity().unwrap();
            table.check_invariance().unwrap();
            table.check_associativity().unwrap();
        }
    }
}
