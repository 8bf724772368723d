use std::collections::BTreeMap;

use super::ast::{Expr, TypeEnv};
use crate::algebra::{Coeff, Multivector, Real};
use crate::error::{Error, Result};
use crate::qtype::classify;

/// Evaluates `expr` with every symbol replaced by its binding.
///
/// Bindings must share one space whose field matches `env`, and each must
/// classify inside its declared type.
pub fn eval_expr(expr: &Expr, env: &TypeEnv, bindings: &BTreeMap<String, Multivector>) -> Result<Multivector> {
    for (name, mv) in bindings {
        if mv.field() != env.field {
            return Err(Error::FieldMismatch(env.field, mv.field()));
        }
        let declared = env.lookup(name);
        let actual = classify(mv);
        if !actual.is_subset(declared) {
            return Err(Error::BindingType {
                name: name.clone(),
                declared: declared.to_string(),
                actual: actual.to_string(),
            });
        }
    }
    let mut spaces = bindings.values().map(Multivector::space);
    if let Some(first) = spaces.next() {
        if let Some(other) = spaces.find(|s| *s != first) {
            if other.signature != first.signature {
                return Err(Error::SignatureMismatch(first.signature, other.signature));
            }
            return Err(Error::BackendMismatch(first.backend, other.backend));
        }
    }
    eval(expr, bindings)
}

fn eval(e: &Expr, bindings: &BTreeMap<String, Multivector>) -> Result<Multivector> {
    Ok(match e {
        Expr::Sym(name) => bindings.get(name).cloned().ok_or_else(|| Error::Unbound(name.clone()))?,
        Expr::Add(a, b) => eval(a, bindings)?.add(&eval(b, bindings)?)?,
        Expr::Neg(a) => eval(a, bindings)?.neg(),
        Expr::ScalarMul(r, a) => {
            let u = eval(a, bindings)?;
            let c = Coeff::real(Real::from_rational(r, u.backend()));
            u.scalar_mul(&c)?
        }
        Expr::IMul(a) => {
            let u = eval(a, bindings)?;
            u.scalar_mul(&Coeff::i(u.backend()))?
        }
        Expr::Prod(a, b) => eval(a, bindings)?.geometric_product(&eval(b, bindings)?)?,
        Expr::Comm(a, b) => eval(a, bindings)?.commutator(&eval(b, bindings)?)?,
        Expr::AntiComm(a, b) => eval(a, bindings)?.anticommutator(&eval(b, bindings)?)?,
        Expr::Conj(c, a) => eval(a, bindings)?.conjugate(*c)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_mv, Field, Signature, Space};
    use crate::dsl::parse_expr;

    fn bind(pairs: &[(&str, &str)], space: Space) -> BTreeMap<String, Multivector> {
        pairs.iter().map(|(k, v)| (k.to_string(), parse_mv(v, space).unwrap())).collect()
    }

    #[test]
    fn commutator_of_bivectors() {
        let space = Space::real_exact(Signature::new(3, 0).unwrap());
        let (env, e) = parse_expr("[x,y]", Field::Real).unwrap();
        let got = eval_expr(&e, &env, &bind(&[("x", "e12"), ("y", "e13")], space)).unwrap();
        assert_eq!(got, parse_mv("-2*e23", space).unwrap());
    }

    #[test]
    fn reversion_of_bivector() {
        let space = Space::real_exact(Signature::new(3, 0).unwrap());
        let (env, e) = parse_expr("rev(x)", Field::Real).unwrap();
        let got = eval_expr(&e, &env, &bind(&[("x", "e12")], space)).unwrap();
        assert_eq!(got, parse_mv("-e12", space).unwrap());
    }

    #[test]
    fn binding_outside_declared_type() {
        let space = Space::real_exact(Signature::new(3, 0).unwrap());
        let (env, e) = parse_expr("let x:1; rev(x)", Field::Real).unwrap();
        let err = eval_expr(&e, &env, &bind(&[("x", "e12")], space)).unwrap_err();
        assert!(matches!(err, Error::BindingType { .. }));
    }

    #[test]
    fn unbound_and_field_errors() {
        let space = Space::real_exact(Signature::new(3, 0).unwrap());
        let (env, e) = parse_expr("x*y", Field::Real).unwrap();
        let err = eval_expr(&e, &env, &bind(&[("x", "e1")], space)).unwrap_err();
        assert_eq!(err, Error::Unbound("y".into()));

        let (env, e) = parse_expr("x", Field::Complex).unwrap();
        let err = eval_expr(&e, &env, &bind(&[("x", "e1")], space)).unwrap_err();
        assert!(matches!(err, Error::FieldMismatch(..)));
    }

    #[test]
    fn imaginary_unit_and_scalars() {
        let space = Space::complex_exact(Signature::new(2, 0).unwrap());
        let (env, e) = parse_expr("i*x - 1/2*conj(x)", Field::Complex).unwrap();
        let got = eval_expr(&e, &env, &bind(&[("x", "i*e1")], space)).unwrap();
        assert_eq!(got, parse_mv("-e1 + 1/2i*e1", space).unwrap());
    }
}
