use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};

use super::{PrecisionContext, Real};

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("astro-float constants cache"));
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|cc| f(&mut cc.borrow_mut()))
}

/// A software binary floating-point value with a fixed mantissa width.
///
/// Binary operations round to the wider of the two operand precisions.
#[derive(Clone)]
pub struct Extended {
    value: BigFloat,
    precision: usize,
}

impl Extended {
    pub fn with_precision(x: f64, precision: usize) -> Self {
        Self {
            value: BigFloat::from_f64(x, precision),
            precision,
        }
    }

    /// Parses a decimal literal such as `"3.14159…"` or `"1.5e-3"`.
    pub fn parse(literal: &str, precision: usize) -> Option<Self> {
        let value = with_consts(|cc| BigFloat::parse(literal, Radix::Dec, precision, RM, cc));
        if value.is_nan() {
            None
        } else {
            Some(Self { value, precision })
        }
    }

    /// π rounded to `precision` bits.
    pub fn pi_with_precision(precision: usize) -> Self {
        Self {
            value: with_consts(|cc| cc.pi(precision, RM)),
            precision,
        }
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    /// Re-rounds to a different mantissa width.
    pub fn rounded_to(&self, precision: usize) -> Self {
        let mut value = self.value.clone();
        // set_precision only fails on allocation or an invalid width
        if value.set_precision(precision, RM).is_err() {
            return self.clone();
        }
        Self { value, precision }
    }

    fn wider(&self, other: &Self) -> usize {
        self.precision.max(other.precision)
    }

    fn unary(&self, value: BigFloat) -> Self {
        Self {
            value,
            precision: self.precision,
        }
    }
}

impl fmt::Debug for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Extended({}, {} bits)", self.value, self.precision)
    }
}

impl fmt::Display for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.value, f)
    }
}

impl PartialEq for Extended {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}

impl PartialOrd for Extended {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.value.partial_cmp(&other.value)
    }
}

macro_rules! binary_op {
    ($trait:ident, $method:ident) => {
        impl $trait for Extended {
            type Output = Extended;
            fn $method(self, rhs: Extended) -> Extended {
                let precision = self.wider(&rhs);
                Extended {
                    value: self.value.$method(&rhs.value, precision, RM),
                    precision,
                }
            }
        }
    };
}

binary_op!(Add, add);
binary_op!(Sub, sub);
binary_op!(Mul, mul);
binary_op!(Div, div);

impl Neg for Extended {
    type Output = Extended;
    fn neg(self) -> Extended {
        Extended {
            value: -self.value,
            precision: self.precision,
        }
    }
}

impl Real for Extended {
    fn from_f64(x: f64, ctx: &PrecisionContext) -> Self {
        Self::with_precision(x, ctx.binary_precision())
    }

    fn pi(ctx: &PrecisionContext) -> Self {
        Self::pi_with_precision(ctx.binary_precision())
    }

    fn to_f64(&self) -> f64 {
        if self.value.is_nan() {
            return f64::NAN;
        }
        if self.value.is_inf_pos() {
            return f64::INFINITY;
        }
        if self.value.is_inf_neg() {
            return f64::NEG_INFINITY;
        }
        let Some((words, _, sign, exponent, _)) = self.value.as_raw_parts() else {
            return f64::NAN;
        };
        let Some((&top, rest)) = words.split_last() else {
            return 0.0;
        };
        if top == 0 {
            return 0.0;
        }
        // Fold the lower words into a sticky bit so the u64 -> f64 conversion
        // rounds correctly.
        let sticky = rest.iter().any(|&w| w != 0) as u64;
        let half = exponent / 2;
        let magnitude =
            (top | sticky) as f64 * 2f64.powi(-64) * 2f64.powi(half) * 2f64.powi(exponent - half);
        match sign {
            Sign::Pos => magnitude,
            Sign::Neg => -magnitude,
        }
    }

    fn to_extended(&self, precision: usize) -> Extended {
        self.rounded_to(precision)
    }

    fn sqrt(&self) -> Self {
        self.unary(self.value.sqrt(self.precision, RM))
    }

    fn sin(&self) -> Self {
        self.unary(with_consts(|cc| self.value.sin(self.precision, RM, cc)))
    }

    fn cos(&self) -> Self {
        self.unary(with_consts(|cc| self.value.cos(self.precision, RM, cc)))
    }

    fn tan(&self) -> Self {
        self.unary(with_consts(|cc| self.value.tan(self.precision, RM, cc)))
    }

    fn atan(&self) -> Self {
        self.unary(with_consts(|cc| self.value.atan(self.precision, RM, cc)))
    }

    fn abs(&self) -> Self {
        self.unary(self.value.abs())
    }

    fn round(&self) -> Self {
        self.unary(self.value.round(0, RM))
    }

    fn scale_pow2(&self, k: i32) -> Self {
        let mut value = self.value.clone();
        if let Some(e) = value.exponent() {
            if value.is_zero() {
                return self.clone();
            }
            value.set_exponent(e + k);
        }
        self.unary(value)
    }

    fn is_finite(&self) -> bool {
        !(self.value.is_nan() || self.value.is_inf())
    }

    fn is_positive(&self) -> bool {
        self.is_finite() && !self.value.is_zero() && self.value.is_positive()
    }
}
