use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RootSign {
    Positive,
    Zero,
    Negative,
}

impl RootSign {
    pub fn of(x: f64) -> Self {
        if x > 0.0 {
            RootSign::Positive
        } else if x < 0.0 {
            RootSign::Negative
        } else {
            RootSign::Zero
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct QuadraticRoot {
    pub value: f64,
    pub sign: RootSign,
    pub multiplicity: u8,
}

/// Real roots of `X^2 + bX = c` by completing the square:
/// `(X + b/2)^2 = c + b^2/4`.
///
/// A negative right-hand side yields an empty list. Roots are ordered
/// descending, so a positive root (the only kind admitted historically) comes
/// first when one exists.
pub fn solve_quadratic_canonical(b: f64, c: f64) -> Vec<QuadraticRoot> {
    let half = b / 2.0;
    let square = c + half * half;
    if square < 0.0 || !square.is_finite() {
        return Vec::new();
    }
    let root = |value: f64, multiplicity| QuadraticRoot { value, sign: RootSign::of(value), multiplicity };
    if square == 0.0 {
        return vec![root(-half + 0.0, 2)];
    }
    let side = square.sqrt();
    vec![root(side - half, 1), root(-side - half, 1)]
}
