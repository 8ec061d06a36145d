use num_traits::Float;

use super::Series;
use crate::error::SeriesError;
use crate::scalar::Scalar;

/// A floating-point evaluation of a truncated series.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NumericValue<F> {
    pub value: F,
    /// Estimate of the discarded tail.
    pub tail_bound: F,
}

impl<S: Scalar> Series<S> {
    /// Evaluates at a numeric point. Every variable must be bound and |q| < 1.
    ///
    /// The tail estimate is `|q|^{Nq+1}/(1−|q|)` times the largest coefficient
    /// magnitude among the top three q-degrees.
    pub fn eval_numeric<F: Float>(&self, binding: &[(&str, F)]) -> Result<NumericValue<F>, SeriesError> {
        let spec = self.spec();
        let mut vals = Vec::with_capacity(spec.nvars());
        for name in spec.names() {
            let v = binding
                .iter()
                .find(|(n, _)| n == name)
                .map(|&(_, v)| v)
                .ok_or_else(|| SeriesError::Unbound(name.clone()))?;
            vals.push(v);
        }
        let q = vals[0];
        if q.abs() >= F::one() {
            return Err(SeriesError::QOutOfRange(q.to_f64().unwrap_or(f64::NAN)));
        }
        let nq = spec.nq() as usize;
        // Collapse the auxiliary variables first, then Horner in q.
        let mut by_q = vec![F::zero(); nq + 1];
        for (e, c) in self.terms() {
            let c = F::from(c.to_f64().ok_or(SeriesError::NotReal)?).ok_or(SeriesError::NotReal)?;
            let mut t = c;
            for (i, &x) in e.iter().enumerate().skip(1) {
                t = t * vals[i].powi(x as i32);
            }
            by_q[e[0] as usize] = by_q[e[0] as usize] + t;
        }
        let value = by_q.iter().rev().fold(F::zero(), |acc, &c| acc * q + c);
        let top = by_q
            .iter()
            .rev()
            .take(3)
            .fold(F::zero(), |m, c| m.max(c.abs()));
        let aq = q.abs();
        let tail_bound = aq.powi(nq as i32 + 1) / (F::one() - aq) * top;
        Ok(NumericValue { value, tail_bound })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, Rational};
    use crate::series::VarSpec;

    #[test]
    fn evaluates_constant_and_geometric() {
        let sp = VarSpec::q_only(2);
        let s = Series::<Rational>::from_q_coeffs(&sp, &[int(1), int(1), int(1)]);
        assert_eq!(s.eval_numeric(&[("q", 0.0f64)]).unwrap().value, 1.0);
        let sp = VarSpec::q_only(30);
        let g = Series::<Rational>::from_q_coeffs(&sp, &vec![int(1); 31]);
        let v = g.eval_numeric(&[("q", 0.5f64)]).unwrap();
        assert!((v.value - 2.0).abs() < 1e-8);
        assert!(v.tail_bound > 0.0 && v.tail_bound < 1e-8);
        let f = g.eval_numeric(&[("q", 0.5f32)]).unwrap();
        assert!((f.value - 2.0).abs() < 1e-5);
    }

    #[test]
    fn unbound_and_out_of_range() {
        let sp = VarSpec::new(&["q", "a"], 2, 2).unwrap();
        let s = Series::<Rational>::one(&sp);
        assert_eq!(s.eval_numeric(&[("q", 0.5)]), Err(SeriesError::Unbound("a".into())));
        assert!(matches!(
            s.eval_numeric(&[("q", 1.5), ("a", 0.0)]),
            Err(SeriesError::QOutOfRange(_))
        ));
    }
}
