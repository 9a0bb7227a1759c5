use crate::{PointedSpace, SpaceError};

/// A failed metric axiom on a concrete triple.
#[derive(Debug, Clone, PartialEq)]
pub struct AxiomViolation {
    pub axiom: &'static str,
    pub detail: String,
}

/// Check identity, symmetry and the triangle inequality on each triple,
/// with absolute slack `tol`. Returns the first violation found.
pub fn check_metric_axioms<S: PointedSpace + ?Sized>(
    space: &S,
    triples: &[(S::Point, S::Point, S::Point)],
    tol: f64,
) -> Result<Option<AxiomViolation>, SpaceError> {
    for (x, y, z) in triples {
        let dxx = space.distance(x, x)?;
        if dxx.abs() > tol {
            return Ok(Some(AxiomViolation { axiom: "identity", detail: format!("d({x:?},{x:?}) = {dxx}") }));
        }
        let dxy = space.distance(x, y)?;
        let dyx = space.distance(y, x)?;
        if dxy < 0.0 || (dxy - dyx).abs() > tol {
            return Ok(Some(AxiomViolation {
                axiom: "symmetry",
                detail: format!("d({x:?},{y:?}) = {dxy}, d({y:?},{x:?}) = {dyx}"),
            }));
        }
        if x != y && dxy <= 0.0 {
            return Ok(Some(AxiomViolation { axiom: "separation", detail: format!("d({x:?},{y:?}) = 0") }));
        }
        let dyz = space.distance(y, z)?;
        let dxz = space.distance(x, z)?;
        if dxz > dxy + dyz + tol {
            return Ok(Some(AxiomViolation {
                axiom: "triangle",
                detail: format!("d(x,z) = {dxz} > {dxy} + {dyz} for {x:?}, {y:?}, {z:?}"),
            }));
        }
    }
    Ok(None)
}
