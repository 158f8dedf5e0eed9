pub mod bporacle;
pub mod cameral;
pub mod cjson;
pub mod cli;
pub mod cubic;
pub mod exactpoly;
pub mod numkernel;
pub mod rootsys;
pub mod surface;

#[cfg(test)]
mod testutil;
