pub mod braid;
pub mod cfrac;
pub mod linalg;
pub mod surgery;
pub mod legendrian;
pub mod limits;
