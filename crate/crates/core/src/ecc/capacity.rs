use crate::error::{invalid, Result};

/// One value of a capacity surface, with `k = n^{ε₁}` and `d = n^{ε₂}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CapacityPoint {
    pub eps1: f64,
    pub eps2: f64,
    pub value: f64,
}

fn check_unit(name: &str, x: f64, high: f64) -> Result<()> {
    if !(0.0..=high).contains(&x) {
        return Err(invalid(format!("{name} = {x} is outside [0, {high}]")));
    }
    Ok(())
}

/// Two-neighbor constraint with minimum inversion distance `n^{ε₂}`.
pub fn capacity_surface_sym(eps1: f64, eps2: f64) -> Result<CapacityPoint> {
    check_unit("eps1", eps1, 1.0)?;
    check_unit("eps2", eps2, 2.0)?;
    let value = if eps2 <= 1.0 {
        0.5 + eps1 / 2.0
    } else if eps2 <= 1.0 + eps1 {
        1.5 + eps1 / 2.0 - eps2
    } else {
        1.0 - eps2 / 2.0
    };
    Ok(CapacityPoint { eps1, eps2, value })
}

/// Asymmetric two-neighbor constraint; does not depend on `ε₁`.
pub fn capacity_surface_asym(eps1: f64, eps2: f64) -> Result<CapacityPoint> {
    check_unit("eps1", eps1, 1.0)?;
    check_unit("eps2", eps2, 2.0)?;
    let value = if eps2 <= 1.0 { 1.0 } else { 2.0 - eps2 };
    Ok(CapacityPoint { eps1, eps2, value })
}

/// `C(ε) = (1+ε)/2` for the two-neighbor `n^ε`-constraint without distance.
pub fn capacity_single_sym(eps: f64) -> Result<f64> {
    check_unit("eps", eps, 1.0)?;
    Ok((1.0 + eps) / 2.0)
}

/// `C̃(ε) = 1` for the asymmetric constraint.
pub fn capacity_single_asym(eps: f64) -> Result<f64> {
    check_unit("eps", eps, 1.0)?;
    Ok(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    #[test]
    fn surface_examples() {
        assert!(close(capacity_surface_sym(0.5, 0.5).unwrap().value, 0.75));
        assert!(close(capacity_surface_sym(0.5, 1.2).unwrap().value, 0.55));
        assert!(close(capacity_surface_sym(0.5, 1.8).unwrap().value, 0.1));
        assert!(close(capacity_surface_asym(0.3, 0.9).unwrap().value, 1.0));
        assert!(close(capacity_surface_asym(0.9, 1.5).unwrap().value, 0.5));
        assert!(close(capacity_surface_asym(0.1, 2.0).unwrap().value, 0.0));
        assert!(close(capacity_single_sym(0.5).unwrap(), 0.75));
        assert_eq!(capacity_single_asym(0.5).unwrap(), 1.0);
    }

    #[test]
    fn out_of_range() {
        assert!(capacity_surface_sym(1.1, 0.5).is_err());
        assert!(capacity_surface_sym(0.5, 2.1).is_err());
        assert!(capacity_surface_sym(f64::NAN, 0.5).is_err());
        assert!(capacity_surface_asym(-0.1, 0.5).is_err());
        assert!(capacity_single_sym(1.5).is_err());
        assert!(capacity_single_asym(-1.0).is_err());
    }

    #[test]
    fn seams_are_continuous() {
        for i in 0..100 {
            let e1 = i as f64 / 99.0;
            let below = 0.5 + e1 / 2.0;
            let middle_at_one = 1.5 + e1 / 2.0 - 1.0;
            assert!(close(below, middle_at_one));
            let top = 1.0 + e1;
            let middle_at_top = 1.5 + e1 / 2.0 - top;
            let above_at_top = 1.0 - top / 2.0;
            assert!(close(middle_at_top, above_at_top));
            assert!(close(capacity_surface_sym(e1, 1.0).unwrap().value, below));
            assert!(close(capacity_surface_sym(e1, top.min(2.0)).unwrap().value, 1.0 - top.min(2.0) / 2.0));
        }
    }

    #[test]
    fn values_lie_in_unit_interval() {
        for i in 0..=20 {
            for j in 0..=40 {
                let (e1, e2) = (i as f64 / 20.0, j as f64 / 20.0);
                for p in [capacity_surface_sym(e1, e2).unwrap(), capacity_surface_asym(e1, e2).unwrap()] {
                    assert!((0.0..=1.0).contains(&p.value), "{p:?}");
                }
                assert!(capacity_surface_asym(e1, e2).unwrap().value >= capacity_surface_sym(e1, e2).unwrap().value - 1e-12);
            }
        }
    }
}
