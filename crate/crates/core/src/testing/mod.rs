//! Test support: the employee/department/project fixture and seeded
//! generators of random valid data.

pub mod fixture;
pub mod gen;
