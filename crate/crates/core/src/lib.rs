pub mod assembly;
pub mod census;
pub mod cli;
pub mod epimorphisms;
pub mod factors;
pub mod handlebody;
pub mod moebius;
pub mod signature;
pub mod tolerance;
