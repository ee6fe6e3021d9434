pub mod error;
pub mod gf;
pub mod group;
pub mod invariants;
pub mod projgeom;
pub mod quasi;
pub mod srg;
pub mod varieties;

pub use error::{Error, Result};
pub use gf::{Fe, Field, FieldInfo};
pub use group::{Action, GroupElem, GroupKind, Mat2, OrbitDecomposition};
pub use projgeom::{LineId, PlaneId, PointId, PointSet, Space, Vec4, Vec6};
pub use quasi::{QuasiKind, QuasiReport};
pub use varieties::{Classifier, PointRole, SurfaceId};
