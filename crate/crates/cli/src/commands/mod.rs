pub mod analyze;
pub mod count;
pub mod scan;
pub mod verify;
