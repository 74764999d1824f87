//! Fixtures shared by the kernel benchmarks.

use nplab::dwork::FieldPoly;
use nplab::Parallelotope;

pub fn segment(a: i64) -> Parallelotope {
    Parallelotope::new(vec![vec![a]]).expect("nonsingular")
}

pub fn rect() -> Parallelotope {
    Parallelotope::new(vec![vec![2, 0], vec![0, 3]]).expect("nonsingular")
}

pub fn skew() -> Parallelotope {
    Parallelotope::new(vec![vec![1, 0], vec![1, 2]]).expect("nonsingular")
}

/// `x² + x` over `F_11`.
pub fn quadratic_f11() -> FieldPoly {
    FieldPoly::over_prime(11, &[(vec![2], 1), (vec![1], 1)]).expect("valid")
}

/// `x + x y² + 2y` over `F_13`.
pub fn skew_f13() -> FieldPoly {
    FieldPoly::over_prime(13, &[(vec![1, 0], 1), (vec![1, 2], 1), (vec![0, 1], 2)]).expect("valid")
}
