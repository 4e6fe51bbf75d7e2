//! Exact arithmetic kernel: integer polynomials, cyclotomic fields, formal
//! generators, power sums and their companion recurrence.

pub mod cyclotomic;
pub mod poly;
pub mod power_sums;
pub mod recurrence;
pub mod symbolic;

pub use cyclotomic::{reduce_mod_cyclotomic, CyclotomicContext, CyclotomicNumber};
pub use poly::{cyclotomic, totient, IntPoly};
pub use power_sums::{
    exp_sum_value, power_sum_sequence, recurrence_coefficients, Evaluator, ExactSums,
    ExpSumValue, FloatSums, PowerSums, Recurrence, SymbolicSums,
};
pub use recurrence::{companion_power_apply, RecurrenceSpec, Scalar};
pub use symbolic::{Monomial, SymbolicValue};
