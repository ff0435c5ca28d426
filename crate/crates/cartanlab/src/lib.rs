pub mod builtin;
pub mod hunt;
pub mod io;
pub mod monoid;
pub mod cartan;
pub mod chartab;
pub mod cyclo;
pub mod dixon;
pub mod group;
pub mod matrix;
pub mod perm;
