pub mod chebfam;
pub mod exactring;
pub mod groebner;
pub mod linkcheck;
pub mod lseries;
pub mod mpoly;
pub mod replab;
