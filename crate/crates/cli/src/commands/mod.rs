pub mod dist;
pub mod lie;
pub mod scan;
pub mod verify;
pub mod walk;
