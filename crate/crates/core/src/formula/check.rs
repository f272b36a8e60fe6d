//! The Gaussian product test.
//!
//! For `x_j = n_j/d_j` with `d_j > 0`, `arg(d_j + i·n_j) = arctan(x_j)`
//! exactly, so `Σ A_j·arctan(x_j) = c·π/4` forces
//! `Π (d_j + i·n_j)^(L·A_j)` to be a positive real multiple of `(1+i)^(cL)`,
//! where `L` clears the coefficient denominators. Negative powers are taken
//! as powers of the conjugate, which changes the product only by a positive
//! real factor and keeps everything in Gaussian integers.
//!
//! The exact test only pins the angle modulo `2π/L`; a coarse 50-place
//! numeric residual removes the wrap-around.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{ArctanTerm, MachinFormula};
use crate::engines::{self, EngineKind, EvalParams};
use crate::exactnum::{FixedDecimal, GaussianInteger, GaussianRational, Rational};

/// Places used for the numeric residual.
pub const RESIDUAL_DIGITS: u32 = 50;
/// The residual must be below `10^RESIDUAL_EXP`.
const RESIDUAL_EXP: i64 = -40;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    /// The normalized product is real and positive.
    pub exact_pass: bool,
    /// `Π (d_j ± i·n_j)^|L·A_j| / (1+i)^(cL)`, conjugates taken for negative powers.
    pub witness: GaussianRational,
    /// `|Σ A_j·arctan(x_j) − c·π/4|` at 50 places.
    pub numeric_residual: FixedDecimal,
    pub pass: bool,
}

pub fn product_check(f: &MachinFormula) -> ValidationReport {
    check_relation(f.terms(), 1)
}

/// Exact and numeric check of `Σ A_j·arctan(x_j) = target·π/4`.
pub fn check_relation(terms: &[ArctanTerm], target: i64) -> ValidationReport {
    let lcm = terms
        .iter()
        .fold(BigInt::one(), |l, t| l.lcm(t.coeff().denom()));
    let lcm_u = lcm.to_u64().expect("coefficient denominators fit in u64");

    let mut product = GaussianInteger::one();
    for t in terms {
        let e = (t.coeff() * &Rational::from_integer(lcm.clone()))
            .into_parts()
            .0;
        let exp = e.magnitude().to_u64().expect("exponent fits in u64");
        let base = GaussianInteger::new(t.arg().denom().clone(), t.arg().numer().clone());
        let base = if e.is_negative() { base.conj() } else { base };
        product = &product * &base.pow_u64(exp);
    }

    let turns = target as i128 * lcm_u as i128;
    let shift = turns.unsigned_abs() as u64;
    // Multiplying by (1−i)^k divides by (1+i)^k up to the real factor 2^k.
    let rotor = if turns >= 0 {
        GaussianInteger::new(1, -1)
    } else {
        GaussianInteger::new(1, 1)
    };
    let q = &product * &rotor.pow_u64(shift);
    let exact_pass = q.im.is_zero() && q.re.is_positive();
    let witness = if turns > 0 {
        let two_k = BigInt::one() << shift;
        GaussianRational::new(
            Rational::reduce(q.re, two_k.clone()),
            Rational::reduce(q.im, two_k),
        )
    } else {
        GaussianRational::from(q)
    };

    let numeric_residual = residual(terms, target);
    let pass = exact_pass && numeric_residual.abs_lt_pow10(RESIDUAL_EXP);
    ValidationReport {
        exact_pass,
        witness,
        numeric_residual,
        pass,
    }
}

fn residual(terms: &[ArctanTerm], target: i64) -> FixedDecimal {
    let params = EvalParams::new(RESIDUAL_DIGITS);
    let engine = EngineKind::Euler;
    let w = engines::work_scale(terms, &params, engine).expect("Euler accepts every argument");
    let sum = engines::angle_sum_work(terms, w, engine).expect("Euler accepts every argument");
    let pi = engines::pi_reference(w)
        .expect("working scale stays below the reference precision")
        .mantissa()
        .clone();
    let diff = sum * 4 - pi * target;
    let diff = FixedDecimal::new(diff, w).round_to(RESIDUAL_DIGITS);
    // diff holds 4× the angle error.
    FixedDecimal::new(diff.mantissa().abs() / 4, RESIDUAL_DIGITS)
}

#[cfg(test)]
mod tests {
    use super::super::test_util::*;
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn machin_passes_with_real_witness() {
        let r = product_check(&formula(&[("4", "1/5"), ("-1", "1/239")]));
        assert!(r.exact_pass && r.pass);
        assert!(r.witness.is_real() && r.witness.re.is_positive());
        // (5+i)^4·(239−i) = 114244·(1+i); dividing out (1+i) leaves 114244.
        assert_eq!(r.witness, GaussianRational::from_integers(2 * 57122, 0));
        assert!(r.numeric_residual.abs_lt_pow10(-49));
    }

    #[test]
    fn wrong_coefficient_fails_both_ways() {
        let r = product_check(&formula(&[("3", "1/5"), ("-1", "1/239")]));
        assert!(!r.exact_pass && !r.pass);
        // 3·atan(1/5) − atan(1/239) − π/4 ≈ −0.1974; residual is the magnitude.
        let s = r.numeric_residual.to_string();
        assert!(s.starts_with("0.1973955598498807"), "{s}");
    }

    #[test]
    fn exact_test_alone_has_a_blind_spot() {
        // 9·(atan(1/2) + atan(1/3)) = π/4 + 2π: the product cannot tell the
        // difference, the residual can.
        let f = terms(&[("9", "1/2"), ("9", "1/3")]);
        let r = check_relation(&f, 1);
        assert!(r.exact_pass);
        assert!(!r.pass);
        let r = check_relation(&f, 9);
        assert!(r.pass);
    }

    #[test]
    fn rational_coefficients() {
        // Halves summing to whole coefficients, and a genuine π/8 relation.
        let f = terms(&[
            ("1/2", "1/2"),
            ("1/2", "1/3"),
            ("1/2", "1/2"),
            ("1/2", "1/3"),
        ]);
        assert!(check_relation(&f, 1).pass);
        let f = terms(&[("1/2", "1/2"), ("1/2", "1/3")]);
        let r = check_relation(&f, 1);
        assert!(!r.pass);
    }

    #[test]
    fn negative_target() {
        let f = terms(&[("-4", "1/5"), ("1", "1/239")]);
        assert!(check_relation(&f, -1).pass);
        assert!(!check_relation(&f, 1).pass);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn invariant_under_reordering_and_combining(seed in any::<u64>(), split in 1i64..4) {
            let base = terms(&[("12", "1/18"), ("8", "1/57"), ("-5", "1/239")]);
            let mut shuffled = base.clone();
            let n = shuffled.len();
            shuffled.rotate_left((seed % n as u64) as usize);
            if seed % 2 == 0 { shuffled.reverse(); }
            prop_assert!(check_relation(&shuffled, 1).pass);
            // Split the first term's coefficient into pieces; combining restores it.
            let first = &base[0];
            let piece = first.coeff() / &Rational::from_integer(split + 1);
            let mut pieces = vec![];
            for _ in 0..=split { pieces.push(ArctanTerm::new(piece.clone(), first.arg().clone()).unwrap()); }
            pieces.extend_from_slice(&base[1..]);
            let raw = check_relation(&pieces, 1);
            let combined = product_check(&MachinFormula::new(pieces).unwrap());
            prop_assert_eq!(raw.exact_pass, combined.exact_pass);
            prop_assert_eq!(raw.pass, combined.pass);
        }

        #[test]
        fn scaling_coefficients_scales_target(c in 1i64..6) {
            for f in [
                terms(&[("4", "1/5"), ("-1", "1/239")]),
                terms(&[("12", "1/18"), ("8", "1/57"), ("-5", "1/239")]),
                terms(&[("1", "1/2"), ("1", "1/3")]),
            ] {
                let k = Rational::from_integer(c);
                let scaled: Vec<_> = f.iter().map(|t| t.scaled(&k).unwrap()).collect();
                prop_assert!(check_relation(&scaled, c).pass);
                prop_assert!(!check_relation(&scaled, c + 1).pass);
            }
        }
    }
}
