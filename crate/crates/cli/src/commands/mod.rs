pub mod scan;
pub mod spectrum;
pub mod tabulate;
pub mod verify;
