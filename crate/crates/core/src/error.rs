use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("mass ratio {0} is outside (0, 1)")]
    InvalidMassRatio(f64),
    #[error("position ({0}, {1}) coincides with a primary")]
    CollisionPoint(f64, f64),
    #[error("energy {c} is not below the critical Jacobi energy {c_jacobi}")]
    EnergyAboveCritical { c: f64, c_jacobi: f64 },
    #[error("point lies within {tol:e} of the level set U = {c} (U = {u})")]
    BoundaryAmbiguous { u: f64, c: f64, tol: f64 },
    #[error("segment from the point to its primary leaves the Hill region")]
    ClassificationInconsistent,
    #[error("elliptic Jacobian is singular at a focus")]
    FocalDegeneracy,
    #[error("gradient of the regularized Hamiltonian vanishes (norm {0:e})")]
    SingularPoint(f64),
    #[error("Levi-Civita radicand vanishes: the point maps onto the Moon")]
    MoonCollision,
    #[error("point lies outside the projected region (V = {0})")]
    OutsideRegion(f64),
    #[error("curve trace failed: {0}")]
    TraceFailure(String),
    #[error("root isolation failed: {0}")]
    RootIsolationFailure(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
