//! Budgeted fitness access.
//!
//! Every algorithm component receives an [`Objective`] rather than a bare
//! function so that each evaluation is counted against the budget.

/// A maximization objective with an evaluation counter.
pub trait Objective {
    /// Evaluates `x` and increments the evaluation counter by one.
    fn eval(&mut self, x: &[f64]) -> f64;

    /// Evaluations performed so far.
    fn evaluations(&self) -> u64;
}

impl<T: Objective + ?Sized> Objective for &mut T {
    fn eval(&mut self, x: &[f64]) -> f64 {
        (**self).eval(x)
    }

    fn evaluations(&self) -> u64 {
        (**self).evaluations()
    }
}

/// Wraps a plain function and counts its calls.
#[derive(Debug, Clone)]
pub struct Counted<F> {
    f: F,
    count: u64,
}

impl<F: FnMut(&[f64]) -> f64> Counted<F> {
    pub fn new(f: F) -> Self {
        Counted { f, count: 0 }
    }
}

impl<F: FnMut(&[f64]) -> f64> Objective for Counted<F> {
    fn eval(&mut self, x: &[f64]) -> f64 {
        self.count += 1;
        (self.f)(x)
    }

    fn evaluations(&self) -> u64 {
        self.count
    }
}
