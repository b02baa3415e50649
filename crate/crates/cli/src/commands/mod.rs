pub mod evaluate;
pub mod model;
pub mod reproduce;
pub mod scan_si;
pub mod sweep;
pub mod window;

use specker_core::qubit_algebra::Vec3;

pub(crate) fn vec_to_array(v: Vec3) -> [f64; 3] {
    [v.x, v.y, v.z]
}
