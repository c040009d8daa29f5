//! Slice-level multiplication and division kernels, generic over the
//! coefficient ring. Slices are low-to-high coefficient sequences.

use super::coeff::Coeff;

/// `out += a * b`, schoolbook. `out.len() >= a.len() + b.len() - 1`.
pub(crate) fn schoolbook_into<T: Coeff>(a: &[T], b: &[T], out: &mut [T], ovf: &mut bool) {
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (o, bj) in out[i..i + b.len()].iter_mut().zip(b) {
            o.mul_add(ai, bj, ovf);
        }
    }
}

/// Full product of two slices, switching to Karatsuba once both operands
/// reach `threshold` coefficients.
pub(crate) fn mul_slices<T: Coeff>(a: &[T], b: &[T], threshold: usize, ovf: &mut bool) -> Vec<T> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![T::zero(); a.len() + b.len() - 1];
    mul_into(a, b, threshold.max(2), &mut out, ovf);
    out
}

fn add_into<T: Coeff>(src: &[T], dst: &mut [T], ovf: &mut bool) {
    for (d, s) in dst.iter_mut().zip(src) {
        d.add_assign(s, ovf);
    }
}

fn sum_halves<T: Coeff>(lo: &[T], hi: &[T], ovf: &mut bool) -> Vec<T> {
    let mut s = lo.to_vec();
    add_into(hi, &mut s, ovf);
    s
}

/// `out += a * b`.
fn mul_into<T: Coeff>(a: &[T], b: &[T], threshold: usize, out: &mut [T], ovf: &mut bool) {
    let (a, b) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    if b.is_empty() {
        return;
    }
    if b.len() < threshold {
        schoolbook_into(a, b, out, ovf);
        return;
    }
    if a.len() >= 2 * b.len() {
        // Unbalanced: cut the long operand into pieces the size of the short one.
        let step = b.len();
        for (k, piece) in a.chunks(step).enumerate() {
            mul_into(piece, b, threshold, &mut out[k * step..], ovf);
        }
        return;
    }

    let m = a.len().div_ceil(2);
    let (a0, a1) = a.split_at(m);
    let (b0, b1) = b.split_at(m.min(b.len()));
    if b1.is_empty() {
        mul_into(a0, b, threshold, out, ovf);
        mul_into(a1, b, threshold, &mut out[m..], ovf);
        return;
    }

    let z0 = mul_slices(a0, b0, threshold, ovf);
    let z2 = mul_slices(a1, b1, threshold, ovf);
    let sa = sum_halves(a0, a1, ovf);
    let sb = sum_halves(b0, b1, ovf);
    let mut z1 = mul_slices(&sa, &sb, threshold, ovf);
    for (i, c) in z0.iter().enumerate() {
        z1[i].sub_assign(c, ovf);
    }
    for (i, c) in z2.iter().enumerate() {
        z1[i].sub_assign(c, ovf);
    }

    add_into(&z0, out, ovf);
    add_into(&z2, &mut out[2 * m..], ovf);
    let tail = &mut out[m..];
    let fit = z1.len().min(tail.len());
    add_into(&z1[..fit], tail, ovf);
    debug_assert!(*ovf || z1[fit..].iter().all(Coeff::is_zero));
}

pub(crate) enum DivOutcome<T> {
    Quotient(Vec<T>),
    NotDivisible,
    Overflow,
}

/// Exact long division `a / b`, top-down, visiting only the nonzero
/// coefficients of `b`. Both slices must be normalized (nonzero top
/// coefficient) and `b` nonempty.
pub(crate) fn long_div<T: Coeff>(a: &[T], b: &[T]) -> DivOutcome<T> {
    debug_assert!(!b.is_empty());
    let mut ovf = false;
    if a.is_empty() {
        return DivOutcome::Quotient(Vec::new());
    }
    if a.len() < b.len() {
        return DivOutcome::NotDivisible;
    }
    let db = b.len() - 1;
    let lead = &b[db];
    let lead_is_one = *lead == T::one();
    let support: Vec<(usize, &T)> = b[..db].iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();

    let mut rem = a.to_vec();
    let qlen = a.len() - db;
    let mut q = vec![T::zero(); qlen];
    for i in (0..qlen).rev() {
        let top = &rem[i + db];
        if top.is_zero() {
            continue;
        }
        let qi = if lead_is_one {
            top.clone()
        } else {
            match top.div_exact(lead, &mut ovf) {
                Some(v) => v,
                None if ovf => return DivOutcome::Overflow,
                None => return DivOutcome::NotDivisible,
            }
        };
        for &(j, bj) in &support {
            rem[i + j].mul_sub(&qi, bj, &mut ovf);
        }
        q[i] = qi;
    }
    if ovf {
        return DivOutcome::Overflow;
    }
    if rem[..db].iter().any(|c| !c.is_zero()) {
        return DivOutcome::NotDivisible;
    }
    DivOutcome::Quotient(q)
}
